//! Weight multiplicities, Weyl dimensions and branching along an embedding.
//!
//! Two independent decompositions of a restricted character are provided:
//! [`branch`] peels off irreducible characters from the top (Brauer
//! subtraction) and [`klimyk_branch`] evaluates the alternating sum over
//! shifted Weyl reflections. [`Brancher`] memoizes whole decompositions and,
//! when the restriction matrix splits into factor blocks that each restrict
//! W-stably, tensors the factors one at a time instead of materializing the
//! full restricted character.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use parking_lot::RwLock;
use serde::Serialize;

use crate::error::{check_len, Error, Result};
use crate::lie::{RootSystem, SimpleType, Weight};

/// Default cap on the number of weights materialized by a single character.
pub const DEFAULT_MAX_WEIGHTS: usize = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_weights: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_weights: DEFAULT_MAX_WEIGHTS }
    }
}

/// Per-root-system memo of dominant characters.
#[derive(Clone, Default)]
pub struct CharacterMemo(Arc<RwLock<HashMap<Weight, Arc<DominantCharacter>>>>);

/// Multiplicities of the dominant weights of an irreducible representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominantCharacter {
    pub highest: Weight,
    pub mults: HashMap<Weight, u64>,
}

/// A genuine character: every weight with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub table: HashMap<Weight, u64>,
}

impl Character {
    pub fn total_dimension(&self) -> u128 {
        self.table.values().map(|&m| m as u128).sum()
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.table.get(w).copied().unwrap_or(0)
    }

    pub fn sorted(&self) -> Vec<(Weight, u64)> {
        let mut v: Vec<_> = self.table.iter().map(|(w, m)| (w.clone(), *m)).collect();
        v.sort();
        v
    }
}

/// Decomposition of a representation into irreducibles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominantDecomposition {
    pub table: BTreeMap<Weight, u64>,
    pub total_dimension: u128,
}

impl DominantDecomposition {
    pub fn multiplicity(&self, mu: &Weight) -> u64 {
        self.table.get(mu).copied().unwrap_or(0)
    }
}

fn require_dominant(rs: &RootSystem, w: &Weight) -> Result<()> {
    rs.check_weight(w)?;
    if !w.is_dominant() {
        return Err(Error::NonDominant(w.to_string()));
    }
    Ok(())
}

/// Weyl dimension formula in exact integer arithmetic.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> Result<u128> {
    require_dominant(rs, lambda)?;
    let rho = rs.rho();
    let shifted = lambda.add(&rho);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for r in 0..rs.positive_roots().len() {
        num *= rs.coroot_pairing(r, &shifted);
        den *= rs.coroot_pairing(r, &rho);
    }
    let (q, rem) = num.div_rem(&den);
    debug_assert!(rem == BigInt::from(0));
    q.to_u128()
        .ok_or_else(|| Error::ResourceLimit(format!("dimension of V_({lambda}) overflows u128")))
}

/// Dominant-weight multiplicities of `V_lambda`, memoized per root system.
pub fn dominant_character(rs: &RootSystem, lambda: &Weight) -> Result<Arc<DominantCharacter>> {
    require_dominant(rs, lambda)?;
    if let Some(c) = rs.memo.0.read().get(lambda) {
        return Ok(c.clone());
    }
    let computed = if rs.is_simple() {
        freudenthal_dominant(rs, lambda)
    } else {
        product_dominant(rs, lambda)?
    };
    let c = Arc::new(computed);
    rs.memo.0.write().entry(lambda.clone()).or_insert_with(|| c.clone());
    Ok(c)
}

fn product_dominant(rs: &RootSystem, lambda: &Weight) -> Result<DominantCharacter> {
    let mut acc: Vec<(Weight, u64)> = vec![(Weight(Vec::new()), 1)];
    for k in 0..rs.factors().len() {
        let comp = rs.component(k);
        let block = Weight(lambda.0[rs.factor_range(k)].to_vec());
        let dc = dominant_character(&comp, &block)?;
        let mut next = Vec::with_capacity(acc.len() * dc.mults.len());
        for (w, m) in &acc {
            for (v, n) in &dc.mults {
                next.push((w.concat(v), m * n));
            }
        }
        acc = next;
    }
    Ok(DominantCharacter {
        highest: lambda.clone(),
        mults: acc.into_iter().collect(),
    })
}

/// Freudenthal recursion over the dominant weights below `lambda`, processed
/// by increasing depth `lambda - mu`.
fn freudenthal_dominant(rs: &RootSystem, lambda: &Weight) -> DominantCharacter {
    let roots = rs.positive_roots_fw();

    // Every dominant weight of V_lambda is reached from a higher dominant
    // weight by subtracting one positive root.
    let mut dominant: Vec<Weight> = vec![lambda.clone()];
    let mut seen: std::collections::HashSet<Weight> = [lambda.clone()].into_iter().collect();
    let mut i = 0;
    while i < dominant.len() {
        let mu = dominant[i].clone();
        for a in roots {
            let nu = mu.sub(a);
            if nu.is_dominant() && !seen.contains(&nu) {
                seen.insert(nu.clone());
                dominant.push(nu);
            }
        }
        i += 1;
    }
    dominant.sort_by_key(|w| std::cmp::Reverse((rs.height_key(w), w.clone())));

    let rho = rs.rho();
    let top = lambda.add(&rho);
    let top_norm = rs.inner(&top, &top);
    let root_norms: Vec<i64> = roots.iter().map(|a| rs.inner(a, a)).collect();
    let root_dots: Vec<Vec<i64>> = roots
        .iter()
        .map(|a| (0..rs.rank()).map(|j| rs.inner(&unit(rs.rank(), j), a)).collect())
        .collect();

    let mut mults: HashMap<Weight, u64> = HashMap::with_capacity(dominant.len());
    mults.insert(lambda.clone(), 1);
    for mu in dominant.iter().skip(1) {
        let mut num: i128 = 0;
        for (r, a) in roots.iter().enumerate() {
            // (mu + k a, a) = (mu, a) + k (a, a)
            let mu_dot: i64 = mu.0.iter().zip(&root_dots[r]).map(|(x, y)| x * y).sum();
            let mut k = 1i64;
            let mut w = mu.add(a);
            loop {
                let (d, _) = rs.to_dominant_unchecked(&w);
                let Some(&m) = mults.get(&d) else { break };
                num += m as i128 * (mu_dot + k * root_norms[r]) as i128;
                k += 1;
                w = w.add(a);
            }
        }
        let shifted = mu.add(&rho);
        let den = (top_norm - rs.inner(&shifted, &shifted)) as i128;
        debug_assert!(den > 0);
        debug_assert_eq!((2 * num) % den, 0);
        let m = (2 * num) / den;
        mults.insert(mu.clone(), m as u64);
    }
    DominantCharacter { highest: lambda.clone(), mults }
}

fn unit(n: usize, j: usize) -> Weight {
    let mut v = vec![0; n];
    v[j] = 1;
    Weight(v)
}

/// Every weight of `V_lambda` with its multiplicity.
pub fn freudenthal_character(rs: &RootSystem, lambda: &Weight) -> Result<Character> {
    freudenthal_character_with(rs, lambda, Limits::default())
}

pub fn freudenthal_character_with(rs: &RootSystem, lambda: &Weight, limits: Limits) -> Result<Character> {
    let dc = dominant_character(rs, lambda)?;
    let mut table = HashMap::new();
    let mut dominant: Vec<_> = dc.mults.iter().collect();
    dominant.sort();
    for (mu, &m) in dominant {
        if m == 0 {
            continue;
        }
        for w in rs.orbit(mu) {
            table.insert(w, m);
        }
        if table.len() > limits.max_weights {
            return Err(Error::ResourceLimit(format!(
                "character of V_({lambda}) has more than {} weights",
                limits.max_weights
            )));
        }
    }
    Ok(Character { table })
}

/// An embedding `g <= g'` presented by its restriction matrix on weights.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Arc<RootSystem>,
    target: Arc<RootSystem>,
    restriction: Vec<Vec<i64>>,
    name: Option<String>,
    factorizable: bool,
}

/// Dimensions of `X = G/B x G'/B'`, of `G`, and of the quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceDims {
    #[serde(rename = "dim_X")]
    pub dim_x: usize,
    #[serde(rename = "dim_G")]
    pub dim_g: usize,
    pub n: usize,
}

impl SpaceDims {
    /// Set when `dim_G > dim_X` and `n` was floored at zero.
    pub fn degenerate(&self) -> bool {
        self.dim_g > self.dim_x
    }
}

/// Highest coordinate sum used when validating an embedding.
pub const VALIDATION_LEVEL: i64 = 3;

impl Embedding {
    /// Builds and validates an embedding. `restriction` has `target.rank()`
    /// rows and `source.rank()` columns.
    pub fn new(
        source: Arc<RootSystem>,
        target: Arc<RootSystem>,
        restriction: Vec<Vec<i64>>,
        name: Option<String>,
    ) -> Result<Self> {
        if restriction.len() != target.rank() {
            return Err(Error::InvalidEmbedding(format!(
                "restriction has {} rows, target rank is {}",
                restriction.len(),
                target.rank()
            )));
        }
        if let Some(row) = restriction.iter().find(|r| r.len() != source.rank()) {
            return Err(Error::InvalidEmbedding(format!(
                "restriction row has {} columns, source rank is {}",
                row.len(),
                source.rank()
            )));
        }
        let mut e = Embedding { source, target, restriction, name, factorizable: false };
        e.validate()?;
        e.factorizable = e.check_factorizable()?;
        Ok(e)
    }

    /// `g` embedded diagonally in `g x g`.
    pub fn diagonal(rs: &RootSystem) -> Result<Self> {
        let mut factors = rs.factors().to_vec();
        factors.extend_from_slice(rs.factors());
        let source = RootSystem::from_factors(&factors);
        let r = rs.rank();
        let m = (0..r)
            .map(|i| (0..2 * r).map(|j| i64::from(j % r == i)).collect())
            .collect();
        Self::new(Arc::new(source), Arc::new(rs.clone()), m, Some("diag".into()))
    }

    /// Principal `sl2` inside a simple algebra: `lambda -> <lambda, 2 rho^vee>`.
    pub fn principal_a1(rs: &RootSystem) -> Result<Self> {
        if !rs.is_simple() {
            return Err(Error::InvalidEmbedding(format!(
                "principal A1 needs a simple type, got {}",
                rs.type_string()
            )));
        }
        // 2 rho^vee = sum of positive coroots
        let mut row = vec![0i64; rs.rank()];
        for c in rs.coroots() {
            for (x, y) in row.iter_mut().zip(c) {
                *x += y;
            }
        }
        let target = RootSystem::from_factors(&[SimpleType::A(1)]);
        Self::new(Arc::new(rs.clone()), Arc::new(target), vec![row], Some("principal-a1".into()))
    }

    pub fn identity(rs: &RootSystem) -> Result<Self> {
        let r = rs.rank();
        let m = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        let rs = Arc::new(rs.clone());
        Self::new(rs.clone(), rs, m, Some("id".into()))
    }

    pub fn source(&self) -> &Arc<RootSystem> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RootSystem> {
        &self.target
    }

    pub fn restriction(&self) -> &[Vec<i64>] {
        &self.restriction
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn restrict(&self, w: &Weight) -> Weight {
        Weight(
            self.restriction
                .iter()
                .map(|row| row.iter().zip(&w.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    fn restrict_block(&self, k: usize, w: &Weight) -> Weight {
        let range = self.source.factor_range(k);
        Weight(
            self.restriction
                .iter()
                .map(|row| row[range.clone()].iter().zip(&w.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    pub fn space_dims(&self) -> SpaceDims {
        let dim_x = self.target.positive_roots().len() + self.source.positive_roots().len();
        let dim_g = self.target.dim_group();
        SpaceDims { dim_x, dim_g, n: dim_x.saturating_sub(dim_g) }
    }

    /// Dimension conservation over all source-dominant weights with
    /// coordinate sum at most [`VALIDATION_LEVEL`].
    fn validate(&self) -> Result<()> {
        for lambda in dominant_weights_up_to_sum(self.source.rank(), VALIDATION_LEVEL) {
            let d = branch(self, &lambda).map_err(|e| match e {
                Error::InconsistentEmbedding(m) => Error::InvalidEmbedding(m),
                other => other,
            })?;
            let expected = weyl_dimension(&self.source, &lambda)?;
            if d.total_dimension != expected {
                return Err(Error::InvalidEmbedding(format!(
                    "dimension conservation fails at lambda = ({lambda}): {} != {expected}",
                    d.total_dimension
                )));
            }
        }
        Ok(())
    }

    /// Whether every source factor restricts W-stably on its own, checked on
    /// the validation weights of each factor.
    fn check_factorizable(&self) -> Result<bool> {
        for k in 0..self.source.factors().len() {
            let comp = self.source.component(k);
            for lambda in dominant_weights_up_to_sum(comp.rank(), VALIDATION_LEVEL) {
                let ch = freudenthal_character(&comp, &lambda)?;
                let pushed = push_forward(&ch, |w| self.restrict_block(k, w));
                if !is_w_stable(&self.target, &pushed) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// All dominant weights of the given rank with coordinate sum `<= max_sum`,
/// in lexicographic order.
pub fn dominant_weights_up_to_sum(rank: usize, max_sum: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; rank];
    fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if i == cur.len() {
            out.push(Weight(cur.clone()));
            return;
        }
        for c in 0..=left {
            cur[i] = c;
            rec(i + 1, left - c, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, max_sum, &mut cur, &mut out);
    out
}

fn push_forward(ch: &Character, f: impl Fn(&Weight) -> Weight) -> HashMap<Weight, i64> {
    let mut out: HashMap<Weight, i64> = HashMap::new();
    for (w, &m) in &ch.table {
        *out.entry(f(w)).or_insert(0) += m as i64;
    }
    out
}

fn is_w_stable(rs: &RootSystem, ch: &HashMap<Weight, i64>) -> bool {
    ch.iter().all(|(w, m)| {
        let (d, _) = rs.to_dominant_unchecked(w);
        ch.get(&d) == Some(m)
    })
}

/// The restriction of `V_lambda` to the target, as a weight table.
pub fn restricted_character(e: &Embedding, lambda: &Weight, limits: Limits) -> Result<HashMap<Weight, i64>> {
    require_dominant(&e.source, lambda)?;
    let src = &e.source;
    let mut acc: HashMap<Weight, i64> = [(Weight::zero(e.target.rank()), 1)].into_iter().collect();
    for k in 0..src.factors().len() {
        let comp = src.component(k);
        let block = Weight(lambda.0[src.factor_range(k)].to_vec());
        let ch = freudenthal_character_with(&comp, &block, limits)?;
        let pushed = push_forward(&ch, |w| e.restrict_block(k, w));
        if acc.len().saturating_mul(pushed.len()) > limits.max_weights {
            return Err(Error::ResourceLimit(format!(
                "restricted character of V_({lambda}) needs more than {} weight pairs",
                limits.max_weights
            )));
        }
        let mut next: HashMap<Weight, i64> = HashMap::with_capacity(acc.len() * 2);
        for (w, m) in &acc {
            for (v, n) in &pushed {
                *next.entry(w.add(v)).or_insert(0) += m * n;
            }
        }
        acc = next;
    }
    Ok(acc)
}

fn finish(target: &RootSystem, table: BTreeMap<Weight, u64>) -> Result<DominantDecomposition> {
    let mut total = 0u128;
    for (mu, m) in &table {
        total += *m as u128 * weyl_dimension(target, mu)?;
    }
    Ok(DominantDecomposition { table, total_dimension: total })
}

/// Brauer subtraction: repeatedly remove the irreducible character of the
/// highest remaining dominant weight.
pub fn branch(e: &Embedding, lambda: &Weight) -> Result<DominantDecomposition> {
    branch_with(e, lambda, Limits::default())
}

pub fn branch_with(e: &Embedding, lambda: &Weight, limits: Limits) -> Result<DominantDecomposition> {
    let restricted = restricted_character(e, lambda, limits)?;
    let target = &e.target;
    if !is_w_stable(target, &restricted) {
        return Err(Error::InconsistentEmbedding(format!(
            "restriction of V_({lambda}) is not Weyl-invariant"
        )));
    }
    // ordered by (height, lex) descending
    let mut remaining: BTreeMap<(std::cmp::Reverse<i64>, std::cmp::Reverse<Weight>), i64> = restricted
        .into_iter()
        .filter(|(w, m)| w.is_dominant() && *m != 0)
        .map(|(w, m)| ((std::cmp::Reverse(target.height_key(&w)), std::cmp::Reverse(w)), m))
        .collect();
    let mut table = BTreeMap::new();
    while let Some(((_, std::cmp::Reverse(mu)), c)) = remaining.pop_first() {
        if c == 0 {
            continue;
        }
        if c < 0 {
            return Err(Error::InconsistentEmbedding(format!(
                "Brauer subtraction left coefficient {c} at ({mu})"
            )));
        }
        let dc = dominant_character(target, &mu)?;
        for (nu, &m) in &dc.mults {
            if *nu == mu {
                continue;
            }
            let key = (std::cmp::Reverse(target.height_key(nu)), std::cmp::Reverse(nu.clone()));
            *remaining.entry(key).or_insert(0) -= c * m as i64;
        }
        table.insert(mu, c as u64);
    }
    finish(target, table)
}

/// Alternating-sum decomposition: every restricted weight `nu` contributes
/// `sign * mult(nu)` to `dom(nu + rho) - rho`.
pub fn klimyk_branch(e: &Embedding, lambda: &Weight) -> Result<DominantDecomposition> {
    klimyk_branch_with(e, lambda, Limits::default())
}

pub fn klimyk_branch_with(e: &Embedding, lambda: &Weight, limits: Limits) -> Result<DominantDecomposition> {
    let restricted = restricted_character(e, lambda, limits)?;
    let target = &e.target;
    if !is_w_stable(target, &restricted) {
        return Err(Error::InconsistentEmbedding(format!(
            "restriction of V_({lambda}) is not Weyl-invariant"
        )));
    }
    let mut signed: BTreeMap<Weight, i64> = BTreeMap::new();
    for (nu, m) in restricted {
        let (mu, s) = target.shifted_unchecked(&nu);
        if s != 0 {
            *signed.entry(mu).or_insert(0) += i64::from(s) * m;
        }
    }
    collect_signed(target, signed, lambda)
}

fn collect_signed(target: &RootSystem, signed: BTreeMap<Weight, i64>, lambda: &Weight) -> Result<DominantDecomposition> {
    let mut table = BTreeMap::new();
    for (mu, c) in signed {
        if c < 0 {
            return Err(Error::InconsistentEmbedding(format!(
                "negative coefficient {c} at ({mu}) decomposing V_({lambda})"
            )));
        }
        if c > 0 {
            table.insert(mu, c as u64);
        }
    }
    finish(target, table)
}

/// Factor-by-factor decomposition: tensors the pushed-forward factor
/// characters into the running decomposition with shifted reflections.
/// Only valid for factorizable embeddings.
fn factorized_branch(e: &Embedding, lambda: &Weight, limits: Limits) -> Result<DominantDecomposition> {
    let src = &e.source;
    let target = &e.target;
    let mut acc: BTreeMap<Weight, i64> = [(Weight::zero(target.rank()), 1)].into_iter().collect();
    for k in 0..src.factors().len() {
        let comp = src.component(k);
        let block = Weight(lambda.0[src.factor_range(k)].to_vec());
        let ch = freudenthal_character_with(&comp, &block, limits)?;
        let pushed = push_forward(&ch, |w| e.restrict_block(k, w));
        let mut next: BTreeMap<Weight, i64> = BTreeMap::new();
        for (mu, c) in &acc {
            for (nu, m) in &pushed {
                let (eta, s) = target.shifted_unchecked(&mu.add(nu));
                if s != 0 {
                    *next.entry(eta).or_insert(0) += i64::from(s) * c * m;
                }
            }
        }
        next.retain(|_, c| *c != 0);
        acc = next;
    }
    collect_signed(target, acc, lambda)
}

/// Memoizing front end: one decomposition per source weight.
pub struct Brancher {
    embedding: Embedding,
    limits: Limits,
    memo: RwLock<HashMap<Weight, Arc<DominantDecomposition>>>,
}

impl Brancher {
    pub fn new(embedding: Embedding) -> Self {
        Self::with_limits(embedding, Limits::default())
    }

    pub fn with_limits(embedding: Embedding, limits: Limits) -> Self {
        Brancher { embedding, limits, memo: RwLock::new(HashMap::new()) }
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn decompose(&self, lambda: &Weight) -> Result<Arc<DominantDecomposition>> {
        require_dominant(&self.embedding.source, lambda)?;
        if let Some(d) = self.memo.read().get(lambda) {
            return Ok(d.clone());
        }
        let d = if self.embedding.factorizable {
            let fast = factorized_branch(&self.embedding, lambda, self.limits)?;
            if fast.total_dimension == weyl_dimension(&self.embedding.source, lambda)? {
                fast
            } else {
                log::warn!("factorized branching failed dimension check at ({lambda}); falling back");
                branch_with(&self.embedding, lambda, self.limits)?
            }
        } else {
            branch_with(&self.embedding, lambda, self.limits)?
        };
        let d = Arc::new(d);
        self.memo.write().entry(lambda.clone()).or_insert_with(|| d.clone());
        Ok(d)
    }
}

/// Source of branching multiplicities `m(mu, lambda)`.
pub trait MultiplicityOracle: Sync {
    fn embedding(&self) -> &Embedding;
    fn multiplicity(&self, mu: &Weight, lambda: &Weight) -> Result<u64>;
}

impl MultiplicityOracle for Brancher {
    fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    fn multiplicity(&self, mu: &Weight, lambda: &Weight) -> Result<u64> {
        branching_multiplicity(self, mu, lambda)
    }
}

/// `dim Hom_G(W_mu, V_lambda)`.
pub fn branching_multiplicity(b: &Brancher, mu: &Weight, lambda: &Weight) -> Result<u64> {
    require_dominant(&b.embedding.target, mu)?;
    check_len(b.embedding.source.rank(), lambda.len())?;
    Ok(b.decompose(lambda)?.multiplicity(mu))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(s).unwrap()
    }

    #[test]
    fn weyl_dimension_examples() {
        let a1 = rs("A1");
        for m in 0..10 {
            assert_eq!(weyl_dimension(&a1, &w(&[m])).unwrap(), m as u128 + 1);
        }
        let a2 = rs("A2");
        assert_eq!(weyl_dimension(&a2, &w(&[1, 1])).unwrap(), 8);
        assert_eq!(weyl_dimension(&a2, &w(&[0, 0])).unwrap(), 1);
        assert_eq!(weyl_dimension(&a2, &w(&[2, 2])).unwrap(), 27);
        assert!(matches!(weyl_dimension(&a2, &w(&[-1, 0])), Err(Error::NonDominant(_))));
    }

    #[test]
    fn known_small_dimensions() {
        // vector and spin representations
        assert_eq!(weyl_dimension(&rs("B3"), &w(&[1, 0, 0])).unwrap(), 7);
        assert_eq!(weyl_dimension(&rs("B3"), &w(&[0, 0, 1])).unwrap(), 8);
        assert_eq!(weyl_dimension(&rs("C3"), &w(&[1, 0, 0])).unwrap(), 6);
        assert_eq!(weyl_dimension(&rs("D4"), &w(&[0, 1, 0, 0])).unwrap(), 28);
        assert_eq!(weyl_dimension(&rs("G2"), &w(&[1, 0])).unwrap(), 7);
        assert_eq!(weyl_dimension(&rs("G2"), &w(&[0, 1])).unwrap(), 14);
    }

    #[test]
    fn freudenthal_examples() {
        let ch = freudenthal_character(&rs("A1"), &w(&[2])).unwrap();
        assert_eq!(ch.sorted(), vec![(w(&[-2]), 1), (w(&[0]), 1), (w(&[2]), 1)]);

        let adj = freudenthal_character(&rs("A2"), &w(&[1, 1])).unwrap();
        assert_eq!(adj.multiplicity(&w(&[0, 0])), 2);
        assert_eq!(adj.table.len(), 7);
        assert_eq!(adj.total_dimension(), 8);

        let dd = freudenthal_character(&rs("A1xA1"), &w(&[1, 1])).unwrap();
        assert_eq!(dd.table.len(), 4);
        assert!(dd.table.values().all(|&m| m == 1));
    }

    #[test]
    fn g2_adjoint_zero_weight() {
        let ch = freudenthal_character(&rs("G2"), &w(&[0, 1])).unwrap();
        assert_eq!(ch.multiplicity(&w(&[0, 0])), 2);
        assert_eq!(ch.total_dimension(), 14);
    }

    #[test]
    fn resource_limit() {
        let limits = Limits { max_weights: 10 };
        let r = freudenthal_character_with(&rs("A2"), &w(&[3, 3]), limits);
        assert!(matches!(r, Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn branch_examples() {
        let e = Embedding::diagonal(&rs("A1")).unwrap();
        let d = branch(&e, &w(&[1, 0])).unwrap();
        assert_eq!(d.table, [(w(&[1]), 1)].into_iter().collect());
        let d = branch(&e, &w(&[2, 2])).unwrap();
        assert_eq!(d.table, [(w(&[0]), 1), (w(&[2]), 1), (w(&[4]), 1)].into_iter().collect());

        let p = Embedding::principal_a1(&rs("A2")).unwrap();
        assert_eq!(p.restriction(), &[vec![2, 2]]);
        let d = branch(&p, &w(&[1, 1])).unwrap();
        assert_eq!(d.table, [(w(&[2]), 1), (w(&[4]), 1)].into_iter().collect());
    }

    #[test]
    fn klimyk_examples() {
        let e = Embedding::diagonal(&rs("A2")).unwrap();
        let d = klimyk_branch(&e, &w(&[1, 1, 1, 1])).unwrap();
        assert_eq!(d.multiplicity(&w(&[1, 1])), 2);
        let p = Embedding::principal_a1(&rs("A2")).unwrap();
        let d = klimyk_branch(&p, &w(&[2, 2])).unwrap();
        assert_eq!(d.total_dimension, 27);
        assert_eq!(d, branch(&p, &w(&[2, 2])).unwrap());
    }

    #[test]
    fn multiplicity_examples() {
        let b = Brancher::new(Embedding::diagonal(&rs("A1")).unwrap());
        assert_eq!(branching_multiplicity(&b, &w(&[0]), &w(&[1, 1])).unwrap(), 1);
        assert_eq!(branching_multiplicity(&b, &w(&[5]), &w(&[1, 1])).unwrap(), 0);
        let b2 = Brancher::new(Embedding::diagonal(&rs("A2")).unwrap());
        assert_eq!(branching_multiplicity(&b2, &w(&[1, 1]), &w(&[1, 1, 1, 1])).unwrap(), 2);
    }

    #[test]
    fn bogus_matrix_is_rejected() {
        let a1 = Arc::new(rs("A1"));
        let a2 = Arc::new(rs("A2"));
        let r = Embedding::new(a2.clone(), a1.clone(), vec![vec![3, 0]], None);
        assert!(matches!(r, Err(Error::InvalidEmbedding(_))), "{r:?}");
        // the sl2 on a simple root is a genuine subalgebra
        let r = Embedding::new(a2, a1, vec![vec![1, 0]], None);
        assert!(r.is_ok());
        let r = Embedding::new(Arc::new(rs("A2")), Arc::new(rs("A1")), vec![vec![1, 2]], None);
        assert!(matches!(r, Err(Error::InvalidEmbedding(_))), "{r:?}");
    }

    #[test]
    fn wrong_shape_is_rejected() {
        let a1 = Arc::new(rs("A1"));
        let a2 = Arc::new(rs("A2"));
        assert!(matches!(
            Embedding::new(a2, a1, vec![vec![1, 0, 0]], None),
            Err(Error::InvalidEmbedding(_))
        ));
    }

    #[test]
    fn identity_round_trip() {
        for spec in ["A2", "B2", "G2"] {
            let e = Embedding::identity(&rs(spec)).unwrap();
            for lambda in dominant_weights_up_to_sum(2, 3) {
                let d = branch(&e, &lambda).unwrap();
                assert_eq!(d.table, [(lambda.clone(), 1)].into_iter().collect());
            }
        }
    }

    #[test]
    fn space_dims_examples() {
        let d = Embedding::diagonal(&rs("A1")).unwrap().space_dims();
        assert_eq!((d.dim_x, d.dim_g, d.n), (3, 3, 0));
        let d = Embedding::diagonal(&rs("A2")).unwrap().space_dims();
        assert_eq!((d.dim_x, d.dim_g, d.n), (9, 8, 1));
        let d = Embedding::principal_a1(&rs("A2")).unwrap().space_dims();
        assert_eq!((d.dim_x, d.dim_g, d.n), (4, 3, 1));
        let d = Embedding::identity(&rs("A2")).unwrap().space_dims();
        assert_eq!((d.dim_x, d.dim_g, d.n), (6, 8, 0));
        assert!(d.degenerate());
    }
}
