//! Dense Gaussian elimination over any [`Field`].

use crate::scalar::Field;

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref<T: Field>(mut rows: Vec<Vec<T>>) -> (Vec<Vec<T>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        // largest magnitude pivot; for exact types any nonzero entry would do
        let mut best: Option<usize> = None;
        for i in r..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            match best {
                Some(b) if rows[b][c].abs() >= rows[i][c].abs() => {}
                _ => best = Some(i),
            }
        }
        let Some(p) = best else { continue };
        rows.swap(r, p);
        let inv = T::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in 0..ncols {
                let delta = f.clone() * rows[r][j].clone();
                rows[i][j] = rows[i][j].clone() - delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank<T: Field>(rows: &[Vec<T>]) -> usize {
    rref(rows.to_vec()).1.len()
}

/// Basis of `{x : A x = 0}` where `rows` are the rows of `A`.
pub fn nullspace<T: Field>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let (reduced, pivots) = rref(rows.to_vec());
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); ncols];
            v[f] = T::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<T: Field>(m: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = m.len();
    let augmented: Vec<Vec<T>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    let (reduced, pivots) = rref(augmented);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(reduced.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `A x = b` for square nonsingular `A`.
pub fn solve<T: Field>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let inv = inverse(a)?;
    Some(
        inv.iter()
            .map(|row| {
                row.iter()
                    .zip(b)
                    .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Rational64};

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational64>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect())
            .collect()
    }

    #[test]
    fn inverse_of_a2_cartan() {
        let inv = inverse(&q(&[&[2, -1], &[-1, 2]])).unwrap();
        let third = Rational64::new(1, 3);
        assert_eq!(inv[0][0], third * 2);
        assert_eq!(inv[0][1], third);
    }

    #[test]
    fn singular_has_no_inverse() {
        assert!(inverse(&q(&[&[1, 2], &[2, 4]])).is_none());
        assert_eq!(rank(&q(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn nullspace_annihilates() {
        let a = q(&[&[1, 1, -1]]);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let s: Rational64 = v.iter().zip(&a[0]).map(|(x, y)| *x * *y).sum();
            assert_eq!(s, Rational64::from_integer(0));
        }
    }

    #[test]
    fn same_elimination_in_floats_and_bigrationals() {
        let f = vec![vec![4.0f64, 1.0], vec![2.0, 3.0]];
        let xf = solve(&f, &[1.0, 2.0]).unwrap();
        let b: Vec<Vec<BigRational>> = f
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_float(x).unwrap()).collect())
            .collect();
        let rhs = [BigRational::from_float(1.0).unwrap(), BigRational::from_float(2.0).unwrap()];
        let xb = solve(&b, &rhs).unwrap();
        for (a, e) in xf.iter().zip(&xb) {
            let e: f64 = num_traits::ToPrimitive::to_f64(e).unwrap();
            assert!((a - e).abs() < 1e-12);
        }
    }
}
