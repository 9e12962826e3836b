//! Stretched multiplicities `k -> m(k mu, k lambda)`.
//!
//! Limits are taken along `k` in `qN`, where `q` is the detected
//! quasi-period of the positivity pattern. At parity-obstructed points the
//! unrestricted limit does not exist, while along `qN` the leading
//! coefficient is the fibre volume `Vol_n`. The volume of a nonempty
//! zero-dimensional fibre is 1.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::branching_cone::EffConeModel;
use crate::characters::MultiplicityOracle;
use crate::error::{Error, Result};
use crate::lie::{RootSystem, Weight};
use crate::scalar::Field;
use crate::Rational;

pub const DEFAULT_K: usize = 12;
pub const MIN_K: usize = 8;
pub const MAX_QUASI_PERIOD: usize = 6;
pub const MAX_DEGREE: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Exact(usize),
    Inconclusive,
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Degree::Exact(d) => s.serialize_u64(*d as u64),
            Degree::Inconclusive => s.serialize_str("inconclusive"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StretchSequence {
    pub mu: Weight,
    pub lambda: Weight,
    pub k_max: usize,
    /// `values[k] = m(k mu, k lambda)` for `k = 0..=k_max`.
    pub values: Vec<u64>,
    pub quasi_period: usize,
    pub degree: Degree,
    /// Fitted `lim m(k) / k^degree` along `k` in `qN`.
    pub leading: Option<Rational>,
}

impl StretchSequence {
    /// Sample points `k = j q`, `j >= 0`.
    pub fn subsequence(&self) -> Vec<(usize, u64)> {
        (0..=self.k_max)
            .step_by(self.quasi_period)
            .map(|k| (k, self.values[k]))
            .collect()
    }
}

/// Renders a weight with `;` between simple factors, e.g. `"1,1;1,1"`.
pub fn format_weight(rs: &RootSystem, w: &Weight) -> String {
    (0..rs.factors().len())
        .map(|k| {
            w.0[rs.factor_range(k)]
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join(";")
}

pub fn format_point(oracle: &dyn MultiplicityOracle, mu: &Weight, lambda: &Weight) -> String {
    let e = oracle.embedding();
    format!("{};{}", format_weight(e.target(), mu), format_weight(e.source(), lambda))
}

/// Smallest `q <= 6` such that on the tail `k >= K/2` the positivity of
/// `values[k]` depends only on `k mod q`; 1 if there is none.
pub fn positivity_period(values: &[u64]) -> usize {
    let tail = (values.len() - 1) / 2;
    (1..=MAX_QUASI_PERIOD)
        .find(|&q| {
            (0..q).all(|r| {
                let mut pattern = (tail..values.len()).filter(|k| k % q == r).map(|k| values[k] > 0);
                match pattern.next() {
                    Some(first) => pattern.all(|p| p == first),
                    None => true,
                }
            })
        })
        .unwrap_or(1)
}

fn every(values: &[u64], q: usize) -> Vec<u64> {
    values.iter().step_by(q).copied().collect()
}

/// Quasi-period of a stretched sequence: the positivity period `p`, or the
/// smallest multiple of `p` (up to 6) along which the finite differences
/// settle, when they do not settle along `pN` itself.
pub fn quasi_period(values: &[u64]) -> usize {
    let p = positivity_period(values);
    (p..=MAX_QUASI_PERIOD)
        .step_by(p)
        .find(|&q| degree_of(&every(values, q)) != Degree::Inconclusive)
        .unwrap_or(p)
}

/// Number of differencing steps until the last three samples (two when
/// only two remain) agree.
fn degree_of(samples: &[u64]) -> Degree {
    let mut seq: Vec<i128> = samples.iter().map(|&v| v as i128).collect();
    for d in 0..=MAX_DEGREE {
        if seq.len() < 2 {
            break;
        }
        let window = seq.len().min(3);
        let tail = &seq[seq.len() - window..];
        if tail.iter().all(|&x| x == tail[0]) {
            return Degree::Exact(d);
        }
        seq = seq.windows(2).map(|w| w[1] - w[0]).collect();
    }
    Degree::Inconclusive
}

/// Growth degree by exact finite differences along `k` in `qN`.
pub fn growth_degree(s: &StretchSequence) -> Degree {
    let samples: Vec<u64> = s.subsequence().into_iter().map(|(_, v)| v).collect();
    degree_of(&samples)
}

/// Exact fit of `m(k) = v k^n + c k^(n-1)` through two samples; returns `v`.
pub fn leading_coefficient<F: Field>(k1: F, m1: F, k2: F, m2: F, n: usize) -> F {
    if n == 0 {
        return m2;
    }
    let p1 = num_traits::pow(k1.clone(), n - 1);
    let p2 = num_traits::pow(k2.clone(), n - 1);
    (m1 * p2.clone() - m2 * p1.clone()) / (p1 * p2 * (k1 - k2))
}

/// Successive leading-coefficient estimates along `k` in `qN`, `k >= 1`.
fn estimates(s: &StretchSequence, n: usize) -> Vec<Rational> {
    let pts: Vec<(usize, u64)> = s.subsequence().into_iter().filter(|(k, _)| *k >= 1).collect();
    let q = |x: u64| Rational::from_integer(BigInt::from(x));
    if n == 0 {
        return pts.iter().map(|&(_, m)| q(m)).collect();
    }
    pts.windows(2)
        .map(|w| leading_coefficient(q(w[0].0 as u64), q(w[0].1), q(w[1].0 as u64), q(w[1].1), n))
        .collect()
}

pub fn stretch_sequence(
    oracle: &dyn MultiplicityOracle,
    mu: &Weight,
    lambda: &Weight,
    k_max: usize,
) -> Result<StretchSequence> {
    if k_max < MIN_K {
        return Err(Error::InvalidArgument(format!("K must be at least {MIN_K}, got {k_max}")));
    }
    let values: Vec<u64> = (0..=k_max)
        .into_par_iter()
        .map(|k| oracle.multiplicity(&mu.scale(k as i64), &lambda.scale(k as i64)))
        .collect::<Result<_>>()?;
    let mut s = StretchSequence {
        mu: mu.clone(),
        lambda: lambda.clone(),
        k_max,
        quasi_period: quasi_period(&values),
        values,
        degree: Degree::Inconclusive,
        leading: None,
    };
    s.degree = growth_degree(&s);
    if let Degree::Exact(d) = s.degree {
        s.leading = estimates(&s, d).pop();
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq)]
pub struct VolumeEstimate {
    pub point: String,
    pub mu: Weight,
    pub lambda: Weight,
    pub n: usize,
    pub subsequence_q: usize,
    pub degree: Degree,
    pub values: Vec<u64>,
    pub volume_exact: Rational,
    pub volume: f64,
    /// Relative gap of the last two estimates; `None` with fewer than two.
    pub confidence: Option<f64>,
    pub warnings: Vec<String>,
}

/// Wire form of a volume estimate.
#[derive(Clone, Debug, Serialize)]
pub struct VolumeReport {
    pub point: String,
    pub n: usize,
    pub q: usize,
    pub degree: Degree,
    pub values: Vec<u64>,
    pub volume: f64,
    pub confidence: Option<f64>,
}

impl VolumeEstimate {
    pub fn report(&self) -> VolumeReport {
        VolumeReport {
            point: self.point.clone(),
            n: self.n,
            q: self.subsequence_q,
            degree: self.degree,
            values: self.values.clone(),
            volume: self.volume,
            confidence: self.confidence,
        }
    }
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Leading coefficient of the stretched multiplicity at an interior point,
/// i.e. the volume of the fibre over `(mu, lambda)`.
pub fn asymptotic_volume(
    oracle: &dyn MultiplicityOracle,
    model: &EffConeModel,
    mu: &Weight,
    lambda: &Weight,
    k_max: usize,
) -> Result<VolumeEstimate> {
    let point = format_point(oracle, mu, lambda);
    let x: Vec<Rational> = mu
        .0
        .iter()
        .chain(&lambda.0)
        .map(|&c| Rational::from_integer(BigInt::from(c)))
        .collect();
    if !model.cone.predicates(&x)?.interior {
        return Err(Error::NotInterior(point));
    }
    let n = oracle.embedding().space_dims().n;
    let s = stretch_sequence(oracle, mu, lambda, k_max)?;
    let est = estimates(&s, n);
    let volume_exact = est.last().cloned().unwrap_or_else(Rational::zero);
    let confidence = match est.as_slice() {
        [.., prev, last] => {
            let gap = (last - prev).abs();
            Some(if last.is_zero() {
                if gap.is_zero() { 0.0 } else { f64::INFINITY }
            } else {
                to_f64(&(gap / last.abs()))
            })
        }
        _ => None,
    };
    let mut warnings = Vec::new();
    if s.degree != Degree::Exact(n) {
        let msg = format!("growth degree {:?} differs from n = {n} at {point}", s.degree);
        log::warn!("{msg}");
        warnings.push(msg);
    }
    Ok(VolumeEstimate {
        point,
        mu: mu.clone(),
        lambda: lambda.clone(),
        n,
        subsequence_q: s.quasi_period,
        degree: s.degree,
        values: s.values,
        volume: to_f64(&volume_exact),
        volume_exact,
        confidence,
        warnings,
    })
}

/// One log-concavity check `Vol(mid)^2 >= (1 - tol) Vol(a) Vol(b)`.
#[derive(Clone, Debug, Serialize)]
pub struct LogConcavityTriple {
    pub first: usize,
    pub second: usize,
    pub midpoint: String,
    pub volume_first: f64,
    pub volume_second: f64,
    pub volume_midpoint: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LogConcavityReport {
    pub n: usize,
    pub tol: f64,
    pub k: usize,
    pub triples: Vec<LogConcavityTriple>,
    pub all_pass: bool,
}

fn format_rational_point(x: &[Rational], split: usize) -> String {
    let f = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    format!("{};{}", f(&x[..split]), f(&x[split..]))
}

/// Scales a rational point to the lattice: returns `(d, d x)` with `d` the
/// common denominator.
fn to_lattice(x: &[Rational]) -> Result<(BigInt, Vec<i64>)> {
    let d = x.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let p = x
        .iter()
        .map(|r| {
            (r * Ratio::from_integer(d.clone()))
                .to_integer()
                .to_i64()
                .ok_or_else(|| Error::InvalidArgument("point coordinate out of range".into()))
        })
        .collect::<Result<_>>()?;
    Ok((d, p))
}

/// Checks midpoint log-concavity of the fibre volume over all pairs of
/// points. Homogeneity `Vol(c x) = c^n Vol(x)` rescales rational points and
/// midpoints to the lattice.
pub fn logconcavity_report(
    oracle: &dyn MultiplicityOracle,
    model: &EffConeModel,
    points: &[Vec<Rational>],
    k_max: usize,
    tol: f64,
) -> Result<LogConcavityReport> {
    if points.len() < 2 {
        return Err(Error::InvalidArgument("need at least two points".into()));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidArgument(format!("tol must lie in (0, 1), got {tol}")));
    }
    let split = oracle.embedding().target().rank();
    let ambient = split + oracle.embedding().source().rank();
    for p in points {
        crate::error::check_len(ambient, p.len())?;
    }
    let n = oracle.embedding().space_dims().n;
    let mut cache: HashMap<Vec<i64>, Rational> = HashMap::new();
    let mut volume_at = |x: &[Rational]| -> Result<Rational> {
        let (d, p) = to_lattice(x)?;
        let v = match cache.get(&p) {
            Some(v) => v.clone(),
            None => {
                let est = asymptotic_volume(
                    oracle,
                    model,
                    &Weight(p[..split].to_vec()),
                    &Weight(p[split..].to_vec()),
                    k_max,
                )?;
                cache.insert(p, est.volume_exact.clone());
                est.volume_exact
            }
        };
        Ok(v / Ratio::from_integer(num_traits::pow(d, n)))
    };
    let vols: Vec<Rational> = points.iter().map(|p| volume_at(p)).collect::<Result<_>>()?;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut triples = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let mid: Vec<Rational> = points[i]
                .iter()
                .zip(&points[j])
                .map(|(a, b)| (a + b) * half.clone())
                .collect();
            let vm = volume_at(&mid)?;
            let lhs = to_f64(&(vm.clone() * vm.clone()));
            let rhs = (1.0 - tol) * to_f64(&(vols[i].clone() * vols[j].clone()));
            triples.push(LogConcavityTriple {
                first: i,
                second: j,
                midpoint: format_rational_point(&mid, split),
                volume_first: to_f64(&vols[i]),
                volume_second: to_f64(&vols[j]),
                volume_midpoint: to_f64(&vm),
                pass: lhs >= rhs,
            });
        }
    }
    let all_pass = triples.iter().all(|t| t.pass);
    Ok(LogConcavityReport { n, tol, k: k_max, triples, all_pass })
}

/// What is known about the fibre over a point.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FiberReport {
    Point { nonempty: bool },
    /// `[0, length]`, unique up to translation.
    Interval { length: f64 },
    VolumeOnly { n: usize, volume: f64, body_constructed: bool },
}

pub fn fiber_report(est: &VolumeEstimate) -> FiberReport {
    match est.n {
        0 => FiberReport::Point { nonempty: est.volume_exact.is_positive() },
        1 => FiberReport::Interval { length: est.volume },
        n => FiberReport::VolumeOnly { n, volume: est.volume, body_constructed: false },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quasi_period_detection() {
        assert_eq!(quasi_period(&[1; 9]), 1);
        assert_eq!(quasi_period(&[1, 0, 1, 0, 1, 0, 1, 0, 1]), 2);
        assert_eq!(quasi_period(&[1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1]), 3);
        // transient zeros before the tail do not matter
        assert_eq!(quasi_period(&[1, 0, 0, 1, 1, 1, 1, 1, 1]), 1);
        // positive everywhere, but floor(k/2) + 1 only settles along 2N
        let stairs: Vec<u64> = (0..13).map(|k| k / 2 + 1).collect();
        assert_eq!(positivity_period(&stairs), 1);
        assert_eq!(quasi_period(&stairs), 2);
    }

    #[test]
    fn degree_detection() {
        assert_eq!(degree_of(&[1; 9]), Degree::Exact(0));
        assert_eq!(degree_of(&(1..=9).collect::<Vec<_>>()), Degree::Exact(1));
        let squares: Vec<u64> = (0..9).map(|k| k * k + 1).collect();
        assert_eq!(degree_of(&squares), Degree::Exact(2));
        let fifth: Vec<u64> = (0..9).map(|k: u64| k.pow(5)).collect();
        assert_eq!(degree_of(&fifth), Degree::Inconclusive);
        // two equal samples at the end are not enough once three are available
        assert_eq!(degree_of(&[1, 1, 2, 2, 3, 3]), Degree::Inconclusive);
    }

    #[test]
    fn leading_coefficient_in_rationals_and_floats() {
        // m(k) = 3k^2 + 5k
        let m = |k: i64| 3 * k * k + 5 * k;
        let q = |x: i64| Rational::from_integer(BigInt::from(x));
        let exact = leading_coefficient(q(7), q(m(7)), q(8), q(m(8)), 2);
        assert_eq!(exact, q(3));
        let float = leading_coefficient(7.0, m(7) as f64, 8.0, m(8) as f64, 2);
        assert!((float - 3.0).abs() < 1e-12);
        assert_eq!(leading_coefficient(1.0, 4.0, 2.0, 4.0, 0), 4.0);
    }

    #[test]
    fn degree_serializes_as_number_or_tag() {
        assert_eq!(serde_json::to_string(&Degree::Exact(1)).unwrap(), "1");
        assert_eq!(serde_json::to_string(&Degree::Inconclusive).unwrap(), "\"inconclusive\"");
    }
}
