use std::collections::BTreeSet;

use branchlab::cone::Cone;
use branchlab::{Integer, RationalCone, SmallCone};
use num_integer::Integer as _;
use num_rational::Rational64;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn det(m: &[Vec<i64>]) -> i64 {
    if m.is_empty() {
        return 1;
    }
    let n = m.len();
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

fn primitive(v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0i64, |a, &b| a.gcd(&b));
    if g == 0 {
        v
    } else {
        v.into_iter().map(|x| x / g).collect()
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact rank by fraction-free elimination over rationals.
fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rational64>> = rows.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0.into()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0.into() {
                let f = m[i][c] / m[r][c];
                for k in 0..cols {
                    let t = m[r][k] * f;
                    m[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Generalized cross product of d-1 vectors in dimension d.
fn normal(rows: &[Vec<i64>], d: usize) -> Vec<i64> {
    (0..d)
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                rows.iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect()).collect();
            if j % 2 == 0 { det(&minor) } else { -det(&minor) }
        })
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Facets of a full-dimensional cone: normals of hyperplanes spanned by
/// generators with every generator on the nonnegative side.
fn brute_facets(gens: &[Vec<i64>], d: usize) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    for s in subsets(gens.len(), d - 1) {
        let rows: Vec<Vec<i64>> = s.iter().map(|&i| gens[i].clone()).collect();
        let h = normal(&rows, d);
        if h.iter().all(|&x| x == 0) {
            continue;
        }
        let h = primitive(h);
        for sign in [1, -1] {
            let hs: Vec<i64> = h.iter().map(|x| x * sign).collect();
            if gens.iter().all(|g| dot(&hs, g) >= 0) {
                out.insert(hs);
            }
        }
    }
    out
}

/// Carathéodory membership: x is a nonnegative combination of some linearly
/// independent subset of the generators.
fn brute_member(gens: &[Vec<i64>], x: &[i64]) -> bool {
    if x.iter().all(|&c| c == 0) {
        return true;
    }
    let d = x.len();
    for k in 1..=d.min(gens.len()) {
        for s in subsets(gens.len(), k) {
            let cols: Vec<&Vec<i64>> = s.iter().map(|&i| &gens[i]).collect();
            // augmented d x (k+1) system
            let mut m: Vec<Vec<Rational64>> = (0..d)
                .map(|r| cols.iter().map(|c| Rational64::from(c[r])).chain([Rational64::from(x[r])]).collect())
                .collect();
            let mut pivots = vec![];
            let mut r = 0;
            for c in 0..k {
                let Some(p) = (r..d).find(|&i| m[i][c] != 0.into()) else { continue };
                m.swap(r, p);
                let lead = m[r][c];
                for v in m[r].iter_mut() {
                    *v /= lead;
                }
                for i in 0..d {
                    if i != r && m[i][c] != 0.into() {
                        let f = m[i][c];
                        for j in 0..=k {
                            let t = m[r][j] * f;
                            m[i][j] -= t;
                        }
                    }
                }
                pivots.push(c);
                r += 1;
            }
            if pivots.len() < k || (r..d).any(|i| m[i][k] != 0.into()) {
                continue;
            }
            if (0..k).all(|i| m[i][k] >= 0.into()) {
                return true;
            }
        }
    }
    false
}

fn small(d: usize, gens: &[Vec<i64>]) -> SmallCone {
    Cone::from_integer_generators(d, gens).unwrap()
}

fn big(d: usize, gens: &[Vec<i64>]) -> RationalCone {
    let g: Vec<Vec<Integer>> = gens.iter().map(|v| v.iter().map(|&x| x.into()).collect()).collect();
    Cone::from_integer_generators(d, &g).unwrap()
}

fn gens_strategy() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (2usize..=5).prop_flat_map(|d| {
        (Just(d), proptest::collection::vec(proptest::collection::vec(-3i64..=3, d), 1..=8))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn facets_match_brute_force((d, gens) in gens_strategy()) {
        prop_assume!(rank(&gens) == d);
        let c = small(d, &gens);
        prop_assert!(c.is_full_dimensional());
        let mine: BTreeSet<Vec<i64>> = c.halfspaces().iter().cloned().collect();
        prop_assert_eq!(mine, brute_facets(&gens, d));
    }

    #[test]
    fn extreme_rays_match_brute_force((d, gens) in gens_strategy()) {
        prop_assume!(rank(&gens) == d);
        let c = small(d, &gens);
        prop_assume!(c.is_pointed());
        let facets = brute_facets(&gens, d);
        let rays: BTreeSet<Vec<i64>> = gens
            .iter()
            .filter(|g| {
                let tight: Vec<Vec<i64>> = facets.iter().filter(|h| dot(h, g) == 0).cloned().collect();
                rank(&tight) == d - 1
            })
            .map(|g| primitive(g.clone()))
            .collect();
        let mine: BTreeSet<Vec<i64>> = c.generators().iter().cloned().collect();
        prop_assert_eq!(mine, rays);
    }

    #[test]
    fn dimension_is_rank((d, gens) in gens_strategy()) {
        prop_assert_eq!(small(d, &gens).dim(), rank(&gens));
    }

    #[test]
    fn v_h_v_roundtrip((d, gens) in gens_strategy()) {
        let c = small(d, &gens);
        let back = SmallCone::from_halfspaces(d, c.halfspaces()).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(back.canonical().unwrap(), c.canonical().unwrap());
        let again = small(d, c.generators());
        prop_assert_eq!(again.halfspaces(), c.halfspaces());
    }

    #[test]
    fn membership_matches_caratheodory((d, gens) in gens_strategy(), x in proptest::collection::vec(-3i64..=3, 5)) {
        let c = small(d, &gens);
        let x = &x[..d];
        prop_assert_eq!(c.contains_integer(x).unwrap(), brute_member(&gens, x));
        let sum: Vec<i64> = (0..d).map(|i| gens.iter().map(|g| g[i]).sum()).collect();
        prop_assert!(c.contains_integer(&sum).unwrap());
    }

    #[test]
    fn pointedness_matches_brute_force((d, gens) in gens_strategy()) {
        let c = small(d, &gens);
        let line = gens.iter().any(|g| {
            let neg: Vec<i64> = g.iter().map(|x| -x).collect();
            g.iter().any(|&x| x != 0) && brute_member(&gens, &neg)
        });
        prop_assert_eq!(c.is_pointed(), !line);
    }

    #[test]
    fn scalar_types_agree((d, gens) in gens_strategy()) {
        let a = small(d, &gens).canonical().unwrap();
        let b = big(d, &gens).canonical().unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn permutation_and_scaling_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let d = rng.gen_range(2..=4);
        let n = rng.gen_range(1..=7);
        let gens: Vec<Vec<i64>> = (0..n).map(|_| (0..d).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let mut other: Vec<Vec<i64>> = gens
            .iter()
            .map(|g| {
                let s = rng.gen_range(1..=4);
                g.iter().map(|x| x * s).collect()
            })
            .collect();
        other.shuffle(&mut rng);
        // duplicating a generator and adding a redundant sum changes nothing
        other.push(gens[0].clone());
        other.push((0..d).map(|i| gens.iter().map(|g| g[i]).sum()).collect());
        assert_eq!(small(d, &gens), small(d, &other));
    }
}

#[test]
fn contains_cone_is_inclusion() {
    let outer = small(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    let inner = small(3, &[vec![1, 1, 0], vec![0, 1, 1]]);
    assert!(outer.contains_cone(&inner));
    assert!(!inner.contains_cone(&outer));
    assert!(outer.contains_cone(&outer));
}
