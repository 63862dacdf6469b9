//! Exact-arithmetic library for the geometry of the Dwork pencil of
//! Calabi-Yau hypersurfaces: Hodge numbers, the projective automorphism
//! group generated by coordinate permutations and diagonal root-of-unity
//! twists, fixed loci, orbifold (Chen-Ruan) cohomology of quotients,
//! weighted-projective singularity combinatorics, and Neron-Severi
//! lattice computations for the quartic (K3) member of the family.
//!
//! All arithmetic is exact: arbitrary-precision rationals, cyclotomic
//! field elements represented on the power basis modulo a cyclotomic
//! polynomial, and integer matrices with exact Smith normal form.

pub mod cyclotomic;
pub mod dwork;
pub mod fixedlocus;
pub mod group;
pub mod intmat;
pub mod k3;
pub mod lambda;
pub mod orbifold;
pub mod poly;
pub mod wps;

pub use cyclotomic::Cyclo;
pub use intmat::{IntMatrix, IntegralLattice, SmithNormalForm};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use thiserror::Error;

/// Errors produced by exact geometric computations.
#[derive(Debug, Error)]
pub enum GeomError {
    /// A precondition on the input data was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A genericity assumption failed for every sampled parameter value.
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    /// A structural invariant that the algorithms rely on was violated.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    /// Parsing of a group-element or generator literal failed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
