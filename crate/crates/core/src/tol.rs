//! Numeric thresholds shared by every check.

/// Relative change at which power iteration stops.
pub const ITERATION: f64 = 1e-12;
/// Iteration budget for power iteration.
pub const MAX_ITER: usize = 100_000;
/// Gate on the FP homomorphism residual and on product identities.
pub const RESIDUAL: f64 = 1e-8;
/// Default tolerance for eigenvalue and proportionality assertions.
pub const ASSERT: f64 = 1e-9;
/// Above this rank the subring enumeration behind the subgroup
/// correspondence is skipped.
pub const SUBRING_ENUMERATION_MAX_RANK: usize = 20;
