//! The branching cone, sampled from the support of the multiplicities.
//!
//! Points are `mu ++ lambda` in `Z^(rank g + rank g')`. The same coordinates
//! are read as divisor classes on the universal quotient; the identification
//! is the identity on coordinates up to a positive rescaling of each basis
//! vector, which does not move rays or facets.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{Brancher, Embedding};
use crate::cone::CanonicalCone;
use crate::error::{Error, Result};
use crate::lie::Weight;
use crate::RationalCone;

/// Default cap on the number of source weights in one enumeration grid.
pub const DEFAULT_MAX_GRID: usize = 10_000;

pub const SIGMA_NOTE: &str = "coordinates (mu; lambda) are simultaneously highest weights of (G, G') \
and classes of the descended divisors on the quotient; the identification is the identity on \
coordinates up to positive rescaling of basis divisors, so rays and facets agree";

/// Support points `(mu; lambda)` with `m(mu, lambda) >= 1` and every
/// coordinate of `lambda` at most `level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSample {
    pub level: i64,
    pub points: BTreeSet<Vec<i64>>,
}

impl SupportSample {
    /// Restriction to a lower level.
    pub fn at_level(&self, level: i64, target_rank: usize) -> SupportSample {
        SupportSample {
            level,
            points: self
                .points
                .iter()
                .filter(|p| p[target_rank..].iter().all(|&c| c <= level))
                .cloned()
                .collect(),
        }
    }

    pub fn cone(&self, ambient_dim: usize) -> Result<RationalCone> {
        let gens: Vec<Vec<BigInt>> = self
            .points
            .iter()
            .map(|p| p.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        RationalCone::from_integer_generators(ambient_dim, &gens)
    }
}

fn grid(rank: usize, level: i64) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (0..=level).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Weight).collect()
}

pub fn enumerate_support(b: &Brancher, level: i64) -> Result<SupportSample> {
    enumerate_support_with(b, level, DEFAULT_MAX_GRID)
}

pub fn enumerate_support_with(b: &Brancher, level: i64, max_grid: usize) -> Result<SupportSample> {
    if level < 1 {
        return Err(Error::InvalidArgument(format!("level must be >= 1, got {level}")));
    }
    let rank = b.embedding().source().rank();
    let count = (level as u128 + 1).checked_pow(rank as u32).unwrap_or(u128::MAX);
    if count > max_grid as u128 {
        return Err(Error::ResourceLimit(format!(
            "level {level} grid has {count} weights, cap is {max_grid}"
        )));
    }
    let lambdas = grid(rank, level);
    let per_lambda: Vec<Vec<Vec<i64>>> = lambdas
        .par_iter()
        .map(|lambda| {
            let d = b.decompose(lambda)?;
            Ok(d.table.keys().map(|mu| mu.concat(lambda).0).collect())
        })
        .collect::<Result<_>>()?;
    Ok(SupportSample {
        level,
        points: per_lambda.into_iter().flatten().collect(),
    })
}

/// Sampled model of the pseudo-effective cone of the quotient.
#[derive(Clone, Debug)]
pub struct EffConeModel {
    pub cone: RationalCone,
    pub target_rank: usize,
    pub source_rank: usize,
    pub max_level: i64,
    /// First level whose cone agrees with the next two levels, or
    /// `max_level` when none does.
    pub stabilized_at: i64,
    pub stabilized: bool,
    pub pointed: bool,
    pub full_dimensional: bool,
    /// Full dimension is expected iff no simple ideal of `g` is an ideal of `g'`.
    pub full_dimensional_expected: bool,
    pub support_size: usize,
    pub sigma_note: String,
    pub warnings: Vec<String>,
}

impl EffConeModel {
    /// Wraps an arbitrary cone, e.g. a fixture, as a model.
    pub fn from_cone(cone: RationalCone, target_rank: usize) -> Self {
        let source_rank = cone.ambient_dim() - target_rank;
        EffConeModel {
            pointed: cone.is_pointed(),
            full_dimensional: cone.is_full_dimensional(),
            full_dimensional_expected: true,
            cone,
            target_rank,
            source_rank,
            max_level: 0,
            stabilized_at: 0,
            stabilized: false,
            support_size: 0,
            sigma_note: SIGMA_NOTE.to_string(),
            warnings: Vec::new(),
        }
    }

    pub fn coordinate_names(&self) -> Vec<String> {
        (1..=self.target_rank)
            .map(|i| format!("mu{i}"))
            .chain((1..=self.source_rank).map(|i| format!("lam{i}")))
            .collect()
    }
}

/// Builds the cone at levels `1..=max_level` and looks for three equal
/// consecutive cones.
pub fn branching_cone(b: &Brancher, max_level: i64) -> Result<EffConeModel> {
    if max_level < 2 {
        return Err(Error::InvalidArgument(format!("max level must be >= 2, got {max_level}")));
    }
    let e = b.embedding();
    let target_rank = e.target().rank();
    let ambient = target_rank + e.source().rank();
    let full = enumerate_support(b, max_level)?;
    let cones: Vec<RationalCone> = (1..=max_level)
        .map(|l| full.at_level(l, target_rank).cone(ambient))
        .collect::<Result<_>>()?;
    let stable = (0..cones.len().saturating_sub(2))
        .find(|&i| cones[i] == cones[i + 1] && cones[i + 1] == cones[i + 2]);
    let (stabilized_at, stabilized) = match stable {
        Some(i) => (i as i64 + 1, true),
        None => (max_level, false),
    };
    let mut warnings = Vec::new();
    if !stabilized {
        let msg = format!("cone not stabilized by level {max_level}");
        log::warn!("{msg}");
        warnings.push(msg);
    }
    let cone = cones.last().cloned().expect("max_level >= 2");
    Ok(EffConeModel {
        pointed: cone.is_pointed(),
        full_dimensional: cone.is_full_dimensional(),
        full_dimensional_expected: !has_common_ideal(e),
        cone,
        target_rank,
        source_rank: e.source().rank(),
        max_level,
        stabilized_at,
        stabilized,
        support_size: full.points.len(),
        sigma_note: SIGMA_NOTE.to_string(),
        warnings,
    })
}

/// Whether some simple factor of the target is also an ideal of the source:
/// its row block meets exactly one source factor of the same type, through a
/// permutation block, and nothing else.
fn has_common_ideal(e: &Embedding) -> bool {
    let (src, tgt, m) = (e.source(), e.target(), e.restriction());
    (0..tgt.factors().len()).any(|k| {
        let rows = tgt.factor_range(k);
        let touched: Vec<usize> = (0..src.factors().len())
            .filter(|&j| {
                src.factor_range(j)
                    .any(|c| rows.clone().any(|r| m[r][c] != 0))
            })
            .collect();
        let [j] = touched[..] else { return false };
        if src.factors()[j] != tgt.factors()[k] {
            return false;
        }
        let cols = src.factor_range(j);
        let block_is_permutation = rows.clone().all(|r| {
            cols.clone().filter(|&c| m[r][c] == 1).count() == 1
                && cols.clone().all(|c| m[r][c] == 0 || m[r][c] == 1)
        });
        let column_block_clean = cols
            .clone()
            .all(|c| (0..tgt.rank()).filter(|r| !rows.contains(r)).all(|r| m[r][c] == 0));
        block_is_permutation && column_block_clean
    })
}

/// Structural verdicts on a sampled cone model.
#[derive(Clone, Debug, Serialize)]
pub struct EffConeReport {
    pub cone: CanonicalCone,
    pub pointed: bool,
    pub rational_polyhedral: bool,
    pub ray_count: usize,
    pub facet_count: usize,
    pub dimension: usize,
    pub full_dimensional: bool,
    pub full_dimensional_expected: bool,
    pub level: i64,
    pub stabilized: bool,
    pub stabilized_at: i64,
    pub coordinates: Vec<String>,
    pub sigma_note: String,
    pub inequalities: Vec<String>,
    pub warnings: Vec<String>,
}

pub fn eff_cone_report(model: &EffConeModel) -> Result<EffConeReport> {
    let names = model.coordinate_names();
    let inequalities = model
        .cone
        .halfspaces()
        .iter()
        .map(|h| format_inequality(h, &names))
        .collect();
    let mut warnings = model.warnings.clone();
    if !model.pointed {
        warnings.push("cone contains a line; a pseudo-effective cone cannot".into());
    }
    if model.full_dimensional != model.full_dimensional_expected {
        warnings.push(format!(
            "full-dimensionality {} differs from the expected {}",
            model.full_dimensional, model.full_dimensional_expected
        ));
    }
    Ok(EffConeReport {
        cone: model.cone.canonical()?,
        pointed: model.pointed,
        // finitely many rays and facets at the sampled level
        rational_polyhedral: true,
        ray_count: model.cone.generators().len(),
        facet_count: model.cone.facet_count(),
        dimension: model.cone.dim(),
        full_dimensional: model.full_dimensional,
        full_dimensional_expected: model.full_dimensional_expected,
        level: model.max_level,
        stabilized: model.stabilized,
        stabilized_at: model.stabilized_at,
        coordinates: names,
        sigma_note: model.sigma_note.clone(),
        inequalities,
        warnings,
    })
}

fn format_inequality(h: &[BigInt], names: &[String]) -> String {
    let mut s = String::new();
    for (c, name) in h.iter().zip(names) {
        if c.sign() == num_bigint::Sign::NoSign {
            continue;
        }
        let neg = c.sign() == num_bigint::Sign::Minus;
        let mag = c.magnitude().to_string();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            s.push_str(&mag);
            s.push('*');
        }
        s.push_str(name);
    }
    if s.is_empty() {
        s.push('0');
    }
    s.push_str(" >= 0");
    s
}

impl fmt::Display for EffConeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { "yes" } else { "NO" };
        writeln!(f, "coordinates: ({})", self.coordinates.join(", "))?;
        writeln!(f, "stabilized sample cone at level {} (stabilized: {})", self.level, mark(self.stabilized))?;
        if self.stabilized {
            writeln!(f, "first stable level: {}", self.stabilized_at)?;
        }
        writeln!(f, "dimension {} of {}", self.dimension, self.coordinates.len())?;
        writeln!(f, "pointed: {}", mark(self.pointed))?;
        writeln!(f, "rational polyhedral: {} ({} rays, {} facets)", mark(self.rational_polyhedral), self.ray_count, self.facet_count)?;
        writeln!(
            f,
            "full dimensional: {} (expected: {})",
            mark(self.full_dimensional),
            mark(self.full_dimensional_expected)
        )?;
        writeln!(f, "inequalities:")?;
        for ineq in &self.inequalities {
            writeln!(f, "  {ineq}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}
