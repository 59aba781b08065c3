//! Centralized numerical tolerances.
//!
//! The algebra implemented by this crate is exact; every tolerance below is
//! implementation policy and is always applied relative to problem scale.

/// Feasibility tolerance for least-squares residuals and LMI slacks.
pub const FEAS_TOL: f64 = 1e-8;

/// Threshold (relative to the largest singular value) below which singular
/// values are treated as zero.
pub const NULL_TOL: f64 = 1e-10;

/// Symmetry tolerance: `||M - M^T|| <= SYM_TOL * scale`.
pub const SYM_TOL: f64 = 1e-10;

/// Relative scale guard: `1 + norm` keeps relative tests meaningful at zero.
pub fn scale(norm: f64) -> f64 {
    1.0 + norm
}
