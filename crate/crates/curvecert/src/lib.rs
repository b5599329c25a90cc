//! Certified classification of closed curves on hyperbolic surfaces.
//!
//! Given a word in the fundamental group of a closed orientable surface of
//! genus `g >= 2`, this crate decides whether its free homotopy class is
//! represented by a simple closed curve, a proper power, or a curve with
//! essential self-intersections, and produces machine-checkable certificates
//! for the verdict.
//!
//! The toolkit is organized in layers:
//!
//! - [`exact`]: exact arithmetic in cyclotomic fields, integer polynomials,
//!   matrices over cyclotomic fields, and root-of-unity / projective-order
//!   certification.
//! - [`surface`]: words in the one-relator surface group presentation,
//!   Dehn's algorithm for the word problem, conjugacy-class enumeration and
//!   proper-power detection.
//! - [`hyperbolic`]: an interval-certified Fuchsian realization (regular
//!   `4g`-gon), geodesic axes, translation lengths, and certified
//!   self-intersection counts.
//! - [`cover`]: finite covers as coset tables, low-index enumeration,
//!   lifted self-intersection counts, figure-eight cover search, and the
//!   effective separability bound calculator.
//! - [`tqft`]: the quantum `SO(3)` skein theory at odd levels, marked spine
//!   bases, twist and recoupling matrices, and point-pushing representations
//!   of the surface group.
//! - [`pipeline`]: induced representations along finite covers, direct sums,
//!   the detection tower, and the end-to-end classifier.
//!
//! Every geometric decision is either exact (cyclotomic arithmetic, word
//! combinatorics, permutation actions) or certified by outward-rounded
//! interval arithmetic at escalating precision; no uncertified float
//! comparison influences a verdict.

pub mod config;
pub mod cover;
pub mod exact;
pub mod hyperbolic;
pub mod pipeline;
pub mod surface;
pub mod tqft;

pub use config::Config;
pub use exact::{Cyclotomic, ExactMatrix, IntPolynomial, OrderVerdict};
pub use pipeline::{classify, ClassificationResult, Verdict};
pub use surface::{ConjClass, Presentation, Word};
