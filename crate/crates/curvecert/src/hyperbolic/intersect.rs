//! Self-intersection machinery (next step).
pub struct SelfIntersectionReport;
pub fn enumerate_verified() {}
