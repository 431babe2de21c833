//! Centralized numerical tolerances.
//!
//! Every threshold used for validation or iteration control lives here so
//! that no module carries ad-hoc magic numbers.

/// Max |M − M†| entry allowed for a matrix considered Hermitian.
pub const HERMITICITY: f64 = 1e-10;

/// Hermiticity preserved by construction (tensor products of Hermitian
/// inputs, (ρ+ρ†)/2 symmetrization) must hold to this tighter bound.
pub const HERMITICITY_CONSTRUCT: f64 = 1e-12;

/// |tr ρ − 1| allowed for a density matrix.
pub const TRACE: f64 = 1e-10;

/// Eigenvalue floor for positivity up to numerical noise.
pub const EIGENVALUE_FLOOR: f64 = -1e-9;

/// Off-diagonal Frobenius norm at which the cyclic Jacobi sweep stops.
pub const JACOBI_OFFDIAG: f64 = 1e-13;

/// Relative pivot threshold below which Gaussian elimination reports a
/// singular system.
pub const SOLVE_PIVOT: f64 = 1e-10;

/// Allowed ∞-norm of L·vec(ρ_ss): the steady-state residual bound.
pub const STEADY_RESIDUAL: f64 = 1e-9;

/// Slack on the Bloch-ball radius, |r|² ≤ 1 + this.
pub const BLOCH_BALL: f64 = 1e-9;

/// Default tolerance for the stabilizer-polytope exterior test.
pub const MAGIC: f64 = 1e-9;

/// Per-step Hermitization/renormalization correction allowed during RK4
/// integration before the trajectory is considered off-manifold.
pub const EVOLVE_DRIFT: f64 = 1e-8;

/// Stability guard: dt·(‖H‖ + p1 + p2) must not exceed this.
pub const STABILITY_GUARD: f64 = 0.1;

/// Width of the bisection bracket at which a phase-boundary search stops.
pub const BISECTION_T1: f64 = 1e-6;

/// Coupling strengths below this fraction of min(p1, p2) are considered
/// safely inside the reset-model validity regime; larger g draws a warning.
pub const WEAK_COUPLING_RATIO: f64 = 0.2;

/// Reset rates below this are rejected by the perturbative-coefficient
/// evaluations (f2 and F2 diverge as p → 0).
pub const MIN_RESET_RATE: f64 = 1e-6;
