//! Exact rational polyhedral cones.
//!
//! A cone is stored canonically: primitive integer generators sorted
//! lexicographically (the extreme rays when the cone is pointed, otherwise
//! a `+-` basis of the lineality space followed by the remaining rays
//! projected orthogonally to it) together with its irredundant supporting
//! halfspaces `<h, x> >= 0`, canonicalized the same way. Two cones are equal
//! iff their canonical generator lists are equal.
//!
//! Both representations come from the double description method:
//! the halfspaces are the generators of the dual cone, and the canonical
//! generators are recomputed from the halfspaces.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::linalg;
use crate::scalar::{clear_denominators, dot, primitive, ExactInteger};

#[derive(Clone, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64).max(1)])
    }

    fn grow(&mut self, n: usize) {
        let words = n.div_ceil(64).max(1);
        if self.0.len() < words {
            self.0.resize(words, 0);
        }
    }

    fn insert(&mut self, i: usize) {
        self.grow(i + 1);
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &BitSet) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, a)| a & !other.0.get(i).copied().unwrap_or(0) == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray<T> {
    v: Vec<T>,
    zeros: BitSet,
}

/// Generators of `{x : <a, x> >= 0 for all constraints a}`: a basis of the
/// lineality space and one ray per extreme ray of the pointed quotient.
#[derive(Clone, Debug)]
pub struct Generators<T> {
    pub lineality: Vec<Vec<T>>,
    pub rays: Vec<Vec<T>>,
}

/// Double description method. Constraints are processed in lexicographic
/// order; adjacency of two rays is decided combinatorially on their sets of
/// tight constraints.
pub fn double_description<T: ExactInteger>(dim: usize, constraints: &[Vec<T>]) -> Generators<T> {
    let mut order: Vec<Vec<T>> = constraints
        .iter()
        .map(|a| primitive(a))
        .filter(|a| a.iter().any(|x| !x.is_zero()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    order.sort();

    let mut lineality: Vec<Vec<T>> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    let mut rays: Vec<Ray<T>> = Vec::new();
    let n = order.len();

    for (idx, a) in order.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lineality.swap_remove(pos);
            let mut al = dot(a, &l);
            if al.is_negative() {
                l = l.iter().map(|x| -x.clone()).collect();
                al = -al;
            }
            for other in lineality.iter_mut() {
                let ao = dot(a, other);
                if !ao.is_zero() {
                    let v: Vec<T> = other
                        .iter()
                        .zip(&l)
                        .map(|(x, y)| al.clone() * x.clone() - ao.clone() * y.clone())
                        .collect();
                    *other = primitive(&v);
                }
            }
            for r in rays.iter_mut() {
                let ar = dot(a, &r.v);
                if !ar.is_zero() {
                    let v: Vec<T> = r
                        .v
                        .iter()
                        .zip(&l)
                        .map(|(x, y)| al.clone() * x.clone() - ar.clone() * y.clone())
                        .collect();
                    r.v = primitive(&v);
                }
                r.zeros.insert(idx);
            }
            let mut zeros = BitSet::new(n);
            for j in 0..idx {
                zeros.insert(j);
            }
            rays.push(Ray { v: primitive(&l), zeros });
            continue;
        }

        let values: Vec<T> = rays.iter().map(|r| dot(a, &r.v)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zeros.insert(idx);
                }
            }
            continue;
        }
        let effective = dim - lineality.len();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        let mut created = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.intersection(&rays[q].zeros);
                if common.count() + 2 < effective {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == q || !common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let ap = values[p].clone();
                let aq = -values[q].clone();
                let v: Vec<T> = rays[p]
                    .v
                    .iter()
                    .zip(&rays[q].v)
                    .map(|(x, y)| aq.clone() * x.clone() + ap.clone() * y.clone())
                    .collect();
                let mut zeros = common;
                zeros.insert(idx);
                created.push(Ray { v: primitive(&v), zeros });
            }
        }
        let mut next: Vec<Ray<T>> = Vec::with_capacity(rays.len() + created.len());
        for (r, v) in rays.into_iter().zip(values) {
            if v.is_negative() {
                continue;
            }
            let mut r = r;
            if v.is_zero() {
                r.zeros.insert(idx);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
    }
    Generators {
        lineality,
        rays: rays.into_iter().map(|r| r.v).collect(),
    }
}

fn to_ratio<T: ExactInteger>(v: &[T]) -> Vec<Ratio<T>> {
    v.iter().map(|x| Ratio::from_integer(x.clone())).collect()
}

/// Canonical basis of a subspace: primitive rows of its reduced row echelon
/// form, sorted.
fn canonical_basis<T: ExactInteger>(vectors: &[Vec<T>]) -> Vec<Vec<T>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let rows: Vec<Vec<Ratio<T>>> = vectors.iter().map(|v| to_ratio(v)).collect();
    let (reduced, _) = linalg::rref(rows);
    let mut out: Vec<Vec<T>> = reduced.iter().map(|r| clear_denominators(r)).collect();
    out.sort();
    out
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`, as a
/// primitive integer vector.
fn project_out<T: ExactInteger>(v: &[T], basis: &[Vec<T>]) -> Vec<T> {
    if basis.is_empty() {
        return primitive(v);
    }
    let b: Vec<Vec<Ratio<T>>> = basis.iter().map(|x| to_ratio(x)).collect();
    let vq = to_ratio(v);
    let rdot = |x: &[Ratio<T>], y: &[Ratio<T>]| {
        x.iter()
            .zip(y)
            .fold(Ratio::zero(), |acc: Ratio<T>, (p, q)| acc + p.clone() * q.clone())
    };
    let gram: Vec<Vec<Ratio<T>>> = b.iter().map(|x| b.iter().map(|y| rdot(x, y)).collect()).collect();
    let rhs: Vec<Ratio<T>> = b.iter().map(|x| rdot(x, &vq)).collect();
    let coeffs = linalg::solve(&gram, &rhs).expect("lineality basis is independent");
    let mut out = vq;
    for (c, x) in coeffs.iter().zip(&b) {
        for (o, xi) in out.iter_mut().zip(x) {
            *o = o.clone() - c.clone() * xi.clone();
        }
    }
    clear_denominators(&out)
}

/// Canonical generating set of `lin(lineality) + cone(rays)`.
fn canonical_generators<T: ExactInteger>(g: &Generators<T>) -> (Vec<Vec<T>>, Vec<Vec<T>>) {
    let basis = canonical_basis(&g.lineality);
    let mut set: BTreeSet<Vec<T>> = g
        .rays
        .iter()
        .map(|r| project_out(r, &basis))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    for l in &basis {
        set.insert(l.clone());
        set.insert(l.iter().map(|x| -x.clone()).collect());
    }
    (set.into_iter().collect(), basis)
}

/// Exact rational polyhedral cone; see the module docs for the canonical form.
#[derive(Clone)]
pub struct Cone<T> {
    ambient_dim: usize,
    generators: Vec<Vec<T>>,
    lineality: Vec<Vec<T>>,
    halfspaces: Vec<Vec<T>>,
    dim: usize,
}

impl<T: ExactInteger> PartialEq for Cone<T> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.generators == other.generators
    }
}

impl<T: ExactInteger> Eq for Cone<T> {}

impl<T: ExactInteger + fmt::Display> fmt::Debug for Cone<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |vs: &[Vec<T>]| {
            vs.iter()
                .map(|v| format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
                .collect::<Vec<_>>()
                .join(" ")
        };
        f.debug_struct("Cone")
            .field("ambient_dim", &self.ambient_dim)
            .field("dim", &self.dim)
            .field("generators", &show(&self.generators))
            .field("halfspaces", &show(&self.halfspaces))
            .finish()
    }
}

/// Membership flags for a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConePredicates {
    pub contains: bool,
    pub interior: bool,
}

/// Canonical JSON form `{"dim", "rays", "normals"}`; `dim` is the ambient
/// dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalCone {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub normals: Vec<Vec<i64>>,
}

impl<T: ExactInteger> Cone<T> {
    /// Cone generated by integer vectors.
    pub fn from_integer_generators(ambient_dim: usize, vectors: &[Vec<T>]) -> Result<Self> {
        for v in vectors {
            check_len(ambient_dim, v.len())?;
        }
        let dual = double_description(ambient_dim, vectors);
        let (halfspaces, _) = canonical_generators(&dual);
        let primal = double_description(ambient_dim, &halfspaces);
        let (generators, lineality) = canonical_generators(&primal);
        let dim = ambient_dim - dual.lineality.len();
        Ok(Cone { ambient_dim, generators, lineality, halfspaces, dim })
    }

    /// Cone generated by rational vectors.
    pub fn from_generators(ambient_dim: usize, vectors: &[Vec<Ratio<T>>]) -> Result<Self> {
        for v in vectors {
            check_len(ambient_dim, v.len())?;
        }
        let ints: Vec<Vec<T>> = vectors.iter().map(|v| clear_denominators(v)).collect();
        Self::from_integer_generators(ambient_dim, &ints)
    }

    /// Cone `{x : <h, x> >= 0}`.
    pub fn from_halfspaces(ambient_dim: usize, normals: &[Vec<T>]) -> Result<Self> {
        for v in normals {
            check_len(ambient_dim, v.len())?;
        }
        let primal = double_description(ambient_dim, normals);
        let (generators, _) = canonical_generators(&primal);
        Self::from_integer_generators(ambient_dim, &generators)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    /// Canonical generators: the extreme rays when pointed.
    pub fn generators(&self) -> &[Vec<T>] {
        &self.generators
    }

    /// Canonical basis of the largest linear subspace in the cone.
    pub fn lineality_basis(&self) -> &[Vec<T>] {
        &self.lineality
    }

    /// Irredundant primitive normals `h` with cone = `{x : <h, x> >= 0}`.
    pub fn halfspaces(&self) -> &[Vec<T>] {
        &self.halfspaces
    }

    /// Number of facets, counting a `+-h` equation pair as neither.
    pub fn facet_count(&self) -> usize {
        let set: BTreeSet<&Vec<T>> = self.halfspaces.iter().collect();
        self.halfspaces
            .iter()
            .filter(|h| {
                let neg: Vec<T> = h.iter().map(|x| -x.clone()).collect();
                !set.contains(&neg)
            })
            .count()
    }

    pub fn contains_integer(&self, x: &[T]) -> Result<bool> {
        check_len(self.ambient_dim, x.len())?;
        Ok(self.halfspaces.iter().all(|h| !dot(h, x).is_negative()))
    }

    pub fn predicates(&self, x: &[Ratio<T>]) -> Result<ConePredicates> {
        check_len(self.ambient_dim, x.len())?;
        let p = clear_denominators(x);
        let values: Vec<T> = self.halfspaces.iter().map(|h| dot(h, &p)).collect();
        let contains = values.iter().all(|v| !v.is_negative());
        let interior = self.is_full_dimensional() && values.iter().all(|v| v.is_positive());
        Ok(ConePredicates { contains, interior })
    }

    pub fn contains_cone(&self, other: &Cone<T>) -> bool {
        other
            .generators
            .iter()
            .all(|g| self.halfspaces.iter().all(|h| !dot(h, g).is_negative()))
    }
}

impl<T: ExactInteger + ToPrimitive> Cone<T> {
    pub fn canonical(&self) -> Result<CanonicalCone> {
        let conv = |vs: &[Vec<T>]| -> Result<Vec<Vec<i64>>> {
            vs.iter()
                .map(|v| {
                    v.iter()
                        .map(|x| {
                            x.to_i64()
                                .ok_or_else(|| Error::ResourceLimit("cone entry exceeds i64".into()))
                        })
                        .collect()
                })
                .collect()
        };
        Ok(CanonicalCone {
            dim: self.ambient_dim,
            rays: conv(&self.generators)?,
            normals: conv(&self.halfspaces)?,
        })
    }
}

pub fn cone_from_generators<T: ExactInteger>(ambient_dim: usize, vectors: &[Vec<Ratio<T>>]) -> Result<Cone<T>> {
    Cone::from_generators(ambient_dim, vectors)
}

pub fn dual_halfspaces<T: ExactInteger>(c: &Cone<T>) -> Vec<Vec<T>> {
    c.halfspaces().to_vec()
}

pub fn cone_predicates<T: ExactInteger>(c: &Cone<T>, x: &[Ratio<T>]) -> Result<ConePredicates> {
    c.predicates(x)
}
