//! Numerical thresholds shared across the crate.

/// Eigenvalues with `|λ| <= SINGULAR_REL * (1 + ‖a‖)` are treated as zero by
/// inverse, square root and logarithm.
pub const SINGULAR_REL: f64 = 1e-12;

/// `|λ_min| <= BOUNDARY_REL * (1 + ‖x‖)` classifies an element as a boundary point.
pub const BOUNDARY_REL: f64 = 1e-10;

/// Allowed relative residual of `h(p) = e` when evaluating the `b` tangent norm.
pub const AUTOMORPHISM_BASE: f64 = 1e-9;

/// Target bound for the truncated exponential series remainder.
pub const SERIES_REMAINDER: f64 = 1e-14;
