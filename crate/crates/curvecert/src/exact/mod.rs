//! Exact arithmetic in cyclotomic fields and order certification.
//!
//! All scalars are elements of `Q(zeta_n)` represented canonically in the
//! power basis reduced modulo the `n`-th cyclotomic polynomial, with
//! arbitrary-precision rational coefficients. Nothing in this module touches
//! floating point: equality of values is equality of coefficient vectors,
//! and order certificates are exact integer-polynomial statements.

mod cyclotomic;
mod matrix;
mod order;
mod poly;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic};
pub use matrix::ExactMatrix;
pub use order::{is_cyclotomic_product, projective_order, IntPolynomial, OrderVerdict};
pub use poly::{QPoly, Ring};

use thiserror::Error;

/// Largest cyclotomic field order the crate will construct.
///
/// Arithmetic between fields of coprime orders embeds both into the field of
/// the lcm order; this cap turns an accidental order explosion into an error
/// instead of an unbounded computation.
pub const MAX_FIELD_ORDER: u32 = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u32),
    #[error("cyclotomic field order {0} exceeds the configured maximum {MAX_FIELD_ORDER}")]
    OrderOverflow(u64),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("zero polynomial has no root-of-unity factorization")]
    ZeroPolynomial,
    #[error("matrix dimensions do not match: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}
