//! Placeholder; implemented in a later step.
pub fn classify() {}
pub struct ClassificationResult;
pub struct Verdict;
