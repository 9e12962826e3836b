//! Scalar bounds shared by the exact linear algebra and the cone code.
//!
//! Everything numeric in this crate is written against these two traits.
//! [`Field`] is satisfied by `BigRational`, `Rational64` and `f64`;
//! [`ExactInteger`] by `BigInt`, `i64` and `i128`.

use std::fmt::Debug;
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// A (totally ordered) field.
pub trait Field: Num + Signed + Clone + PartialOrd + Debug {}

impl<T> Field for T where T: Num + Signed + Clone + PartialOrd + Debug {}

/// An exact signed integer ring with gcd, used for primitive lattice vectors.
pub trait ExactInteger: Integer + Signed + Clone + Hash + Debug + Send + Sync {}

impl<T> ExactInteger for T where T: Integer + Signed + Clone + Hash + Debug + Send + Sync {}

/// Greatest common divisor of all entries; zero for the zero vector.
pub fn content<T: ExactInteger>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |g, x| g.gcd(x))
}

/// Divides out the content. The zero vector is returned unchanged.
pub fn primitive<T: ExactInteger>(v: &[T]) -> Vec<T> {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x.clone() / g.clone()).collect()
}

/// Clears denominators of a rational vector, returning the primitive integer
/// vector on the same ray.
pub fn clear_denominators<T: ExactInteger>(v: &[Ratio<T>]) -> Vec<T> {
    let lcm = v.iter().fold(T::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<T> = v
        .iter()
        .map(|x| x.numer().clone() * (lcm.clone() / x.denom().clone()))
        .collect();
    primitive(&scaled)
}

pub fn dot<T: ExactInteger>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn primitive_divides_content() {
        assert_eq!(primitive(&[4i64, -6, 8]), vec![2, -3, 4]);
        assert_eq!(primitive(&[0i64, 0]), vec![0, 0]);
    }

    #[test]
    fn clears_denominators() {
        let v = vec![Ratio::new(1i64, 2), Ratio::new(1, 3), Ratio::from_integer(0)];
        assert_eq!(clear_denominators(&v), vec![3, 2, 0]);
        let w = vec![Ratio::new(BigInt::from(-2), BigInt::from(4))];
        assert_eq!(clear_denominators(&w), vec![BigInt::from(-1)]);
    }
}
