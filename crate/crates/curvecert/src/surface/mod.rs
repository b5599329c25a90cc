//! Words in the fundamental group of a closed orientable surface.
//!
//! The presentation is the standard one-relator presentation on the
//! symplectic generators `a_1, b_1, ..., a_g, b_g` with relator
//! `[a_1,b_1]...[a_g,b_g]`. The relator satisfies a small-cancellation
//! condition strong enough for Dehn's algorithm, which this module verifies
//! at construction by enumerating pieces, so the word problem and geodesic
//! lengths are decided combinatorially.

mod enumerate;
mod power;
mod presentation;
mod word;

pub use enumerate::ConjClass;
pub use power::PowerVerdict;
pub use presentation::Presentation;
pub use word::{Letter, Word};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("cannot parse word token `{0}`")]
    Parse(String),
    #[error("generator index {0} out of range for genus {1}")]
    GeneratorRange(usize, usize),
    #[error("operation rejects the identity word")]
    IdentityInput,
}
