//! The reset master equation as a linear superoperator, its exact steady
//! state, and transient integration.
//!
//! The equation of motion is
//!
//! dρ/dt = −i\[H,ρ\] + p1(τ1 ⊗ tr₁ρ − ρ) + p2((tr₂ρ) ⊗ τ2 − ρ),
//!
//! where tr_i traces out qubit i and each bath state is reinserted into its
//! own slot. Density matrices are vectorized row-major, so vec(ρ) is just
//! the entry buffer of [`ComplexMatrix`]; the Liouvillian is the 16×16
//! matrix acting on that vector.

use num_complex::Complex64;
use serde_json::json;

use crate::linalg::{self, ComplexMatrix, Slot};
use crate::model::{self, ModelParams};
use crate::state::{BlochVector, DensityMatrix};
use crate::tol;
use crate::{Error, Result};

/// Matrix form of the master-equation generator on row-major-vectorized ρ.
#[derive(Debug, Clone)]
pub struct Liouvillian {
    matrix: ComplexMatrix,
}

/// Exact stationary solution of the master equation with its reduced states.
#[derive(Debug, Clone)]
pub struct SteadyState {
    pub rho12: DensityMatrix,
    pub rho1: DensityMatrix,
    pub rho2: DensityMatrix,
    pub bloch1: BlochVector,
    pub bloch2: BlochVector,
    /// ‖L·vec(ρ12)‖∞ of the returned solution.
    pub residual: f64,
}

/// Time-ordered states from an RK4 integration of the master equation.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    /// Largest per-step Hermitization + trace-renormalization correction that
    /// was applied while integrating.
    pub max_correction: f64,
}

/// Right-hand side of the master equation for an arbitrary pair of reset
/// targets. The public entry points specialize it to the machine's τ1/τ2;
/// keeping it generic lets tests exercise the slot-swapped machine.
fn reset_generator(
    h: &ComplexMatrix,
    tau_slot1: &ComplexMatrix,
    rate1: f64,
    tau_slot2: &ComplexMatrix,
    rate2: f64,
    rho: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    let minus_i = Complex64::new(0.0, -1.0);
    let mut out = linalg::commutator(h, rho)?.scale(minus_i);

    let kept2 = linalg::partial_trace(rho, Slot::Two)?;
    let reset1 = linalg::tensor(tau_slot1, &kept2)
        .sub(rho)?
        .scale(Complex64::new(rate1, 0.0));
    out = out.add(&reset1)?;

    let kept1 = linalg::partial_trace(rho, Slot::One)?;
    let reset2 = linalg::tensor(&kept1, tau_slot2)
        .sub(rho)?
        .scale(Complex64::new(rate2, 0.0));
    out.add(&reset2)
}

/// Evaluate the master-equation right-hand side on a two-qubit state.
/// The result is traceless and Hermitian.
pub fn liouvillian_apply(params: &ModelParams, rho: &DensityMatrix) -> Result<ComplexMatrix> {
    params.validate()?;
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: rho.dim(),
        });
    }
    let h = model::hamiltonian(params);
    let pair = model::EquilibriumPair::new(params)?;
    reset_generator(
        &h,
        pair.tau1.matrix(),
        params.p1,
        pair.tau2.matrix(),
        params.p2,
        rho.matrix(),
    )
}

/// Assemble the 16×16 matrix of the generator by applying it to the matrix
/// units |i⟩⟨j|.
pub fn build_liouvillian(params: &ModelParams) -> Result<Liouvillian> {
    params.validate()?;
    let h = model::hamiltonian(params);
    let pair = model::EquilibriumPair::new(params)?;
    let mut l = ComplexMatrix::zeros(16);
    for col in 0..16 {
        let unit = ComplexMatrix::ketbra(4, col / 4, col % 4);
        let image = reset_generator(
            &h,
            pair.tau1.matrix(),
            params.p1,
            pair.tau2.matrix(),
            params.p2,
            &unit,
        )?;
        for row in 0..16 {
            l[(row, col)] = image.entries()[row];
        }
    }
    Ok(Liouvillian { matrix: l })
}

impl Liouvillian {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// L·v on a row-major-vectorized operator.
    pub fn apply_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        self.matrix.mul_vec(v)
    }

    /// ‖L·vec(ρ)‖∞.
    pub fn residual(&self, rho: &ComplexMatrix) -> Result<f64> {
        let image = self.apply_vec(rho.entries())?;
        Ok(image.iter().map(|e| e.norm()).fold(0.0, f64::max))
    }

    /// Versioned JSON dump: complex numbers as [re, im], row-major.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema": "spinbath.liouvillian/1",
            "dim": 16,
            "matrix": complex_pairs(&self.matrix),
        })
    }
}

impl SteadyState {
    /// Versioned JSON dump: complex numbers as [re, im], row-major.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema": "spinbath.steady_state/1",
            "rho12": complex_pairs(self.rho12.matrix()),
            "bloch1": [self.bloch1.x, self.bloch1.y, self.bloch1.z],
            "bloch2": [self.bloch2.x, self.bloch2.y, self.bloch2.z],
            "residual": self.residual,
        })
    }
}

fn complex_pairs(m: &ComplexMatrix) -> Vec<[f64; 2]> {
    m.entries().iter().map(|e| [e.re, e.im]).collect()
}

/// Solve L·vec(ρ) = 0 with the trace constraint substituted for the first
/// row. A singular constrained system (degenerate parameters) is reported,
/// never silently returned, and the solution is re-validated against every
/// density-matrix invariant and the residual bound.
pub fn steady_state(params: &ModelParams) -> Result<SteadyState> {
    let liouvillian = build_liouvillian(params)?;

    let mut constrained = liouvillian.matrix.clone();
    for col in 0..16 {
        constrained[(0, col)] = Complex64::ZERO;
    }
    for k in 0..4 {
        constrained[(0, 5 * k)] = Complex64::ONE;
    }
    let mut rhs = vec![Complex64::ZERO; 16];
    rhs[0] = Complex64::ONE;

    let solution = linalg::solve_linear(&constrained, &rhs)?;
    let raw = ComplexMatrix::new(4, solution)?;
    // symmetrize away the solver's ~1e-16 asymmetry before validating
    let rho12 = DensityMatrix::new(raw.hermitize())?;

    let residual = liouvillian.residual(rho12.matrix())?;
    if residual > tol::STEADY_RESIDUAL {
        return Err(Error::ResidualTooLarge {
            residual,
            bound: tol::STEADY_RESIDUAL,
        });
    }

    let rho1 = rho12.partial_trace(Slot::One)?;
    let rho2 = rho12.partial_trace(Slot::Two)?;
    let bloch1 = rho1.bloch()?;
    let bloch2 = rho2.bloch()?;
    Ok(SteadyState {
        rho12,
        rho1,
        rho2,
        bloch1,
        bloch2,
        residual,
    })
}

/// Default integration step: keeps the stability guard satisfied across the
/// parameter ranges this crate is used on.
pub fn default_dt(params: &ModelParams) -> f64 {
    0.01 / 1.0f64
        .max(params.p1 + params.p2)
        .max(params.g)
        .max(params.omega)
}

fn check_guard(params: &ModelParams, dt: f64) -> Result<()> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "dt must be positive, got {dt}"
        )));
    }
    let hnorm = linalg::spectral_norm(&model::hamiltonian(params))?;
    let value = dt * (hnorm + params.p1 + params.p2);
    if value > tol::STABILITY_GUARD {
        return Err(Error::UnstableStep {
            value,
            limit: tol::STABILITY_GUARD,
        });
    }
    Ok(())
}

/// One classical RK4 step of v' = L v.
fn rk4_step(l: &Liouvillian, v: &[Complex64], dt: f64) -> Result<Vec<Complex64>> {
    let half = Complex64::new(0.5 * dt, 0.0);
    let full = Complex64::new(dt, 0.0);
    let sixth = Complex64::new(dt / 6.0, 0.0);

    let k1 = l.apply_vec(v)?;
    let v2: Vec<Complex64> = v.iter().zip(&k1).map(|(a, k)| a + half * k).collect();
    let k2 = l.apply_vec(&v2)?;
    let v3: Vec<Complex64> = v.iter().zip(&k2).map(|(a, k)| a + half * k).collect();
    let k3 = l.apply_vec(&v3)?;
    let v4: Vec<Complex64> = v.iter().zip(&k3).map(|(a, k)| a + full * k).collect();
    let k4 = l.apply_vec(&v4)?;

    Ok(v.iter()
        .enumerate()
        .map(|(i, a)| a + sixth * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect())
}

/// Re-Hermitize and renormalize a raw integrated matrix; returns the
/// corrected matrix and the magnitude of the applied correction.
fn project_to_manifold(raw: &ComplexMatrix) -> (ComplexMatrix, f64) {
    let herm = raw.hermitize();
    let herm_correction = raw.max_abs_diff(&herm);
    let tr = herm.trace().re;
    let trace_correction = (tr - 1.0).abs();
    let fixed = herm.scale(Complex64::new(1.0 / tr, 0.0));
    (fixed, herm_correction.max(trace_correction))
}

/// Integrate the master equation by classical RK4 on vec(ρ), storing every
/// step. Each stored state is re-Hermitized and trace-renormalized; the
/// largest applied correction is recorded and must stay below
/// [`tol::EVOLVE_DRIFT`] per step.
pub fn evolve(
    params: &ModelParams,
    rho0: &DensityMatrix,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory> {
    check_guard(params, dt)?;
    if rho0.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: rho0.dim(),
        });
    }
    let l = build_liouvillian(params)?;
    let steps = (t_end / dt).ceil() as usize;

    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(0.0);
    states.push(rho0.clone());

    let mut v = rho0.matrix().entries().to_vec();
    let mut max_correction: f64 = 0.0;
    for step in 1..=steps {
        v = rk4_step(&l, &v, dt)?;
        let (fixed, correction) = project_to_manifold(&ComplexMatrix::new(4, v)?);
        if correction > tol::EVOLVE_DRIFT {
            return Err(Error::DriftExceeded { correction });
        }
        max_correction = max_correction.max(correction);
        v = fixed.entries().to_vec();
        times.push(step as f64 * dt);
        states.push(DensityMatrix::new(fixed)?);
    }
    Ok(Trajectory {
        times,
        states,
        max_correction,
    })
}

/// Same stepper as [`evolve`] but keeps only the final state — the
/// memory-lean variant for long convergence runs.
pub fn evolve_final(
    params: &ModelParams,
    rho0: &DensityMatrix,
    t_end: f64,
    dt: f64,
) -> Result<(DensityMatrix, f64)> {
    check_guard(params, dt)?;
    if rho0.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: rho0.dim(),
        });
    }
    let l = build_liouvillian(params)?;
    let steps = (t_end / dt).ceil() as usize;

    let mut v = rho0.matrix().entries().to_vec();
    let mut max_correction: f64 = 0.0;
    for _ in 0..steps {
        v = rk4_step(&l, &v, dt)?;
        let (fixed, correction) = project_to_manifold(&ComplexMatrix::new(4, v)?);
        if correction > tol::EVOLVE_DRIFT {
            return Err(Error::DriftExceeded { correction });
        }
        max_correction = max_correction.max(correction);
        v = fixed.into_entries();
    }
    Ok((
        DensityMatrix::new(ComplexMatrix::new(4, v)?)?,
        max_correction,
    ))
}

/// τ1 ⊗ τ2, the natural uncorrelated initial state of the machine.
pub fn product_initial_state(params: &ModelParams) -> Result<DensityMatrix> {
    let pair = model::EquilibriumPair::new(params)?;
    DensityMatrix::new(linalg::tensor(pair.tau1.matrix(), pair.tau2.matrix()))
}
