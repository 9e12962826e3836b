//! Root systems and weights.
//!
//! All weights live in fundamental-weight coordinates. Simple roots are the
//! columns of the Cartan matrix `cartan[i][j] = <alpha_i^vee, alpha_j>`, so a
//! weight is dominant iff every coordinate is nonnegative and the simple
//! reflection `s_i` acts by `w - w_i * alpha_i`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::CharacterMemo;
use crate::error::{check_len, Error, Result};
use crate::linalg;

/// Integer weight vector in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn concat(&self, other: &Weight) -> Weight {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Weight(v)
    }

    pub fn coord_sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses a comma-separated integer list, e.g. `"2,-3"`.
pub fn parse_coords(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty weight".into()));
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad weight coordinate `{t}`")))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    G2,
}

impl SimpleType {
    pub fn rank(self) -> usize {
        match self {
            SimpleType::A(n) | SimpleType::B(n) | SimpleType::C(n) | SimpleType::D(n) => n,
            SimpleType::G2 => 2,
        }
    }

    /// Closed-form count of positive roots.
    pub fn positive_root_count(self) -> usize {
        match self {
            SimpleType::A(n) => n * (n + 1) / 2,
            SimpleType::B(n) | SimpleType::C(n) => n * n,
            SimpleType::D(n) => n * (n - 1),
            SimpleType::G2 => 6,
        }
    }

    fn cartan(self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        match self {
            SimpleType::G2 => {
                c[0][1] = -3;
                c[1][0] = -1;
            }
            SimpleType::D(n) => {
                for i in 0..n - 2 {
                    c[i][i + 1] = -1;
                    c[i + 1][i] = -1;
                }
                c[n - 3][n - 1] = -1;
                c[n - 1][n - 3] = -1;
            }
            _ => {
                for i in 0..n.saturating_sub(1) {
                    c[i][i + 1] = -1;
                    c[i + 1][i] = -1;
                }
                match self {
                    // alpha_n short
                    SimpleType::B(n) => c[n - 1][n - 2] = -2,
                    // alpha_n long
                    SimpleType::C(n) => c[n - 2][n - 1] = -2,
                    _ => {}
                }
            }
        }
        c
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::A(n) => write!(f, "A{n}"),
            SimpleType::B(n) => write!(f, "B{n}"),
            SimpleType::C(n) => write!(f, "C{n}"),
            SimpleType::D(n) => write!(f, "D{n}"),
            SimpleType::G2 => write!(f, "G2"),
        }
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::Parse("empty simple type".into()))?;
        let digits = chars.as_str();
        if !letter.is_ascii_uppercase() || digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("malformed simple type `{s}`")));
        }
        let n: usize = digits
            .parse()
            .map_err(|_| Error::Parse(format!("malformed simple type `{s}`")))?;
        let t = match (letter, n) {
            ('A', n) if n >= 1 => SimpleType::A(n),
            ('B', n) if n >= 2 => SimpleType::B(n),
            ('C', n) if n >= 3 => SimpleType::C(n),
            ('D', n) if n >= 4 => SimpleType::D(n),
            ('G', 2) => SimpleType::G2,
            _ => return Err(Error::UnsupportedType(s.to_string())),
        };
        Ok(t)
    }
}

/// Parses `TYPE := SIMPLE ("x" SIMPLE)*`.
pub fn parse_type_spec(spec: &str) -> Result<Vec<SimpleType>> {
    if spec.is_empty() {
        return Err(Error::Parse("empty type spec".into()));
    }
    spec.split('x').map(str::parse).collect()
}

/// Cartan data and positive roots of a (product of) simple type(s).
#[derive(Clone)]
pub struct RootSystem {
    factors: Vec<SimpleType>,
    offsets: Vec<usize>,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    simple_roots: Vec<Weight>,
    positive_roots: Vec<Vec<i64>>,
    positive_roots_fw: Vec<Weight>,
    coroots: Vec<Vec<i64>>,
    gram: Vec<Vec<i64>>,
    rho_pairing: Vec<i64>,
    inverse_cartan: Vec<Vec<i64>>,
    inverse_den: i64,
    components: Vec<Arc<RootSystem>>,
    pub(crate) memo: CharacterMemo,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootSystem")
            .field("type", &self.type_string())
            .field("rank", &self.rank)
            .finish()
    }
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for RootSystem {}

impl RootSystem {
    /// Builds the root system for a type spec such as `"A2"` or `"A1xA1"`.
    pub fn build(spec: &str) -> Result<Self> {
        Ok(Self::from_factors(&parse_type_spec(spec)?))
    }

    pub fn from_factors(factors: &[SimpleType]) -> Self {
        let rank: usize = factors.iter().map(|t| t.rank()).sum();
        let mut offsets = Vec::with_capacity(factors.len());
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut off = 0;
        for t in factors {
            offsets.push(off);
            let block = t.cartan();
            for (i, row) in block.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    cartan[off + i][off + j] = x;
                }
            }
            off += t.rank();
        }

        let simple_roots: Vec<Weight> = (0..rank)
            .map(|j| Weight((0..rank).map(|i| cartan[i][j]).collect()))
            .collect();

        let symmetrizer = symmetrizer(&cartan);
        let positive_roots = reflection_closure(&cartan);
        let positive_roots_fw: Vec<Weight> = positive_roots
            .iter()
            .map(|c| {
                let mut w = vec![0i64; rank];
                for (j, &cj) in c.iter().enumerate() {
                    for (i, wi) in w.iter_mut().enumerate() {
                        *wi += cj * cartan[i][j];
                    }
                }
                Weight(w)
            })
            .collect();

        // <lambda, alpha^vee> = sum_j c_j d_j lambda_j / d_alpha
        let coroots: Vec<Vec<i64>> = positive_roots
            .iter()
            .map(|c| {
                let mut twice_norm = 0i64;
                for i in 0..rank {
                    for j in 0..rank {
                        twice_norm += c[i] * c[j] * symmetrizer[i] * cartan[i][j];
                    }
                }
                let d_alpha = twice_norm / 2;
                (0..rank)
                    .map(|j| {
                        let num = c[j] * symmetrizer[j];
                        debug_assert_eq!(num % d_alpha, 0);
                        num / d_alpha
                    })
                    .collect()
            })
            .collect();

        let cartan_q: Vec<Vec<Rational64>> = cartan
            .iter()
            .map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect())
            .collect();
        let inv = linalg::inverse(&cartan_q).expect("Cartan matrices are nonsingular");
        let inverse_den = inv
            .iter()
            .flatten()
            .fold(1i64, |acc, x| acc.lcm(x.denom()));
        let inverse_cartan: Vec<Vec<i64>> = inv
            .iter()
            .map(|r| r.iter().map(|x| (x * inverse_den).to_integer()).collect())
            .collect();

        // (omega_i, omega_j) = (C^-1)[j][i] d_j, scaled to integers
        let gram_q: Vec<Vec<Rational64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| inv[j][i] * Rational64::from_integer(symmetrizer[j]))
                    .collect()
            })
            .collect();
        let gram_den = gram_q.iter().flatten().fold(1i64, |acc, x| acc.lcm(x.denom()));
        let gram: Vec<Vec<i64>> = gram_q
            .iter()
            .map(|r| r.iter().map(|x| (x * gram_den).to_integer()).collect())
            .collect();
        let rho_pairing: Vec<i64> = gram.iter().map(|r| r.iter().sum()).collect();

        let components = if factors.len() > 1 {
            factors
                .iter()
                .map(|t| Arc::new(RootSystem::from_factors(&[*t])))
                .collect()
        } else {
            Vec::new()
        };

        RootSystem {
            factors: factors.to_vec(),
            offsets,
            rank,
            cartan,
            simple_roots,
            positive_roots,
            positive_roots_fw,
            coroots,
            gram,
            rho_pairing,
            inverse_cartan,
            inverse_den,
            components,
            memo: CharacterMemo::default(),
        }
    }

    pub fn factors(&self) -> &[SimpleType] {
        &self.factors
    }

    /// Coordinate range of factor `k` inside a weight.
    pub fn factor_range(&self, k: usize) -> std::ops::Range<usize> {
        self.offsets[k]..self.offsets[k] + self.factors[k].rank()
    }

    /// Root system of factor `k` on its own.
    pub fn component(&self, k: usize) -> Arc<RootSystem> {
        if self.components.is_empty() {
            Arc::new(self.clone())
        } else {
            self.components[k].clone()
        }
    }

    pub fn is_simple(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    /// Positive roots in simple-root coordinates, sorted lexicographically.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Positive roots in fundamental-weight coordinates, same order.
    pub fn positive_roots_fw(&self) -> &[Weight] {
        &self.positive_roots_fw
    }

    /// `coroots()[r]` pairs with a weight to give `<lambda, alpha_r^vee>`.
    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    pub fn dim_group(&self) -> usize {
        self.rank + 2 * self.positive_roots.len()
    }

    pub fn type_string(&self) -> String {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        parts.join("x")
    }

    /// Scaled invariant form `N (x, y)` for a fixed positive `N`.
    pub fn inner(&self, x: &Weight, y: &Weight) -> i64 {
        let mut s = 0;
        for (i, xi) in x.0.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.0.iter().enumerate() {
                s += xi * self.gram[i][j] * yj;
            }
        }
        s
    }

    /// `N (x, rho)`; strictly increases when a positive root is added.
    pub fn height_key(&self, x: &Weight) -> i64 {
        x.0.iter().zip(&self.rho_pairing).map(|(a, b)| a * b).sum()
    }

    pub fn coroot_pairing(&self, root_index: usize, w: &Weight) -> i64 {
        self.coroots[root_index]
            .iter()
            .zip(&w.0)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Whether `hi - lo` is a nonnegative integer combination of simple roots.
    pub fn dominates(&self, hi: &Weight, lo: &Weight) -> bool {
        let diff = hi.sub(lo);
        self.inverse_cartan.iter().all(|row| {
            let s: i64 = row.iter().zip(&diff.0).map(|(a, b)| a * b).sum();
            s >= 0 && s % self.inverse_den == 0
        })
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        check_len(self.rank, w.len())
    }

    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        let c = w.0[i];
        Weight(
            w.0.iter()
                .zip(&self.simple_roots[i].0)
                .map(|(x, a)| x - c * a)
                .collect(),
        )
    }

    /// Dominant representative of the Weyl orbit of `w` and `(-1)^ell` for
    /// the number of simple reflections applied.
    pub fn to_dominant(&self, w: &Weight) -> Result<(Weight, i8)> {
        self.check_weight(w)?;
        Ok(self.to_dominant_unchecked(w))
    }

    pub(crate) fn to_dominant_unchecked(&self, w: &Weight) -> (Weight, i8) {
        let mut v = w.0.clone();
        let mut sign = 1i8;
        while let Some(i) = v.iter().position(|&c| c < 0) {
            let c = v[i];
            for (x, a) in v.iter_mut().zip(&self.simple_roots[i].0) {
                *x -= c * a;
            }
            sign = -sign;
        }
        (Weight(v), sign)
    }

    /// Shifted variant: returns `(dom(w + rho) - rho, sign)` with sign 0
    /// when `w + rho` lies on a wall.
    pub fn to_dominant_shifted(&self, w: &Weight) -> Result<(Weight, i8)> {
        self.check_weight(w)?;
        Ok(self.shifted_unchecked(w))
    }

    pub(crate) fn shifted_unchecked(&self, w: &Weight) -> (Weight, i8) {
        let shifted = Weight(w.0.iter().map(|x| x + 1).collect());
        let (d, sign) = self.to_dominant_unchecked(&shifted);
        if d.0.contains(&0) {
            return (Weight(d.0.iter().map(|x| x - 1).collect()), 0);
        }
        (Weight(d.0.iter().map(|x| x - 1).collect()), sign)
    }

    /// Full Weyl orbit of `w`.
    pub fn orbit(&self, w: &Weight) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.clone());
        queue.push_back(w.clone());
        let mut out = Vec::new();
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank {
                if v.0[i] != 0 {
                    let r = self.reflect(i, &v);
                    if seen.insert(r.clone()) {
                        queue.push_back(r);
                    }
                }
            }
            out.push(v);
        }
        out
    }
}

/// `d_i = (alpha_i, alpha_i) / 2` up to a common positive scale, with
/// `d_i C_ij = d_j C_ji`.
fn symmetrizer(cartan: &[Vec<i64>]) -> Vec<i64> {
    let n = cartan.len();
    let mut d: Vec<Option<Rational64>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational64::from_integer(1));
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].unwrap();
            for j in 0..n {
                if i != j && cartan[i][j] != 0 && d[j].is_none() {
                    d[j] = Some(di * Rational64::new(cartan[i][j], cartan[j][i]));
                    queue.push_back(j);
                }
            }
        }
    }
    let den = d.iter().fold(1i64, |acc, x| acc.lcm(x.unwrap().denom()));
    d.iter()
        .map(|x| {
            let v = x.unwrap() * den;
            debug_assert!(v.is_positive() && !v.is_zero());
            v.to_integer()
        })
        .collect()
}

/// Positive roots by breadth-first reflection closure of the simple roots.
fn reflection_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
            if pairing == 0 {
                continue;
            }
            let mut r = beta.clone();
            r[i] -= pairing;
            if r.iter().all(|&c| c >= 0) && seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    seen.into_iter().collect()
}
