//! Geodesic axes (next step).
pub struct Axis;
