//! Exact branching laws for complex semisimple Lie algebras.
//!
//! The crate computes branching multiplicities `m(mu, lambda)` for an
//! embedding `g <= g'`, samples the support of the multiplicity semigroup to
//! build the branching cone as an exact rational polyhedral cone, and
//! analyses stretched multiplicities `k -> m(k mu, k lambda)`: their
//! quasi-period, growth degree and leading coefficient (the volume of the
//! Okounkov fibre over `(mu, lambda)`).
//!
//! Numeric code is generic over [`scalar::Field`] and
//! [`scalar::ExactInteger`]; the aliases below fix the exact types used by
//! the public pipeline.

pub mod asymptotics;
pub mod branching_cone;
pub mod characters;
pub mod cone;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod scalar;

pub use error::{Error, Result};

/// Arbitrary-precision integer used for lattice vectors.
pub type Integer = num_bigint::BigInt;
/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
/// Exact rational polyhedral cone with big-integer primitive generators.
pub type RationalCone = cone::Cone<Integer>;
/// Cone over machine integers, for small fixtures.
pub type SmallCone = cone::Cone<i64>;

pub use characters::{Brancher, Character, DominantDecomposition, Embedding, MultiplicityOracle};
pub use lie::{RootSystem, SimpleType, Weight};
pub use asymptotics::{StretchSequence, VolumeEstimate};
pub use branching_cone::{EffConeModel, SupportSample};
