//! Certified hyperbolic geometry: the Fuchsian model, geodesic axes, and
//! self-intersection counts.

mod axis;
mod intersect;
mod interval;
mod model;

pub use axis::Axis;
pub use intersect::{enumerate_verified, SelfIntersectionReport};
pub use interval::{arccosh, ln, pi, sin_cos, Dyadic, Interval};
pub use model::{klein_from_uhp, line_side, CInt, FuchsianModel, IMat2, KPoint};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HypError {
    #[error("precision exhausted at {bits} bits; escalate and retry")]
    PrecisionExhausted { bits: u32 },
    #[error("operation rejects the identity element")]
    IdentityInput,
    #[error("operation requires a primitive (non proper power) class")]
    ProperPowerInput,
    #[error("operation requires a non-simple class")]
    SimpleInput,
    #[error("tile walk exceeded its step budget")]
    WalkBudget,
    #[error("polygon model failed its consistency checks")]
    ModelInconsistent,
}
