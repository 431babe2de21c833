//! Physical ingredients of the two-qubit machine: local Hamiltonians, the
//! energy-swapping interaction, and the two bath equilibrium states.
//!
//! Qubit 1 (tensor slot 1) couples to a heat bath at temperature `t1` and
//! relaxes toward a Gibbs state diagonal in the energy basis. Qubit 2 (slot
//! 2) couples to a spin bath at temperature `t2` exchanging σ_x angular
//! momentum; its equilibrium state is Gibbs-like in the |±⟩ basis with Bloch
//! vector (tanh(β₂ω/2), 0, 0). Units: k_B = 1, energies and temperatures on
//! the same scale.

use num_complex::Complex64;
use serde::Serialize;

use crate::linalg::{self, ComplexMatrix};
use crate::state::DensityMatrix;
use crate::tol;
use crate::{Error, Result};

/// All physical knobs of the machine.
///
/// `omega` is the shared level splitting (the machine is resonant by
/// construction, ω1 = ω2 = ω). The closed-form perturbative results in
/// [`crate::quantumness`] are derived at ω = 1; the exact solver works for
/// any ω > 0. `p1`, `p2` are reset rates per unit time — the
/// discrete-time reading as probabilities applies to the δt discretization
/// of the master equation, so no upper bound is enforced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    pub omega: f64,
    pub g: f64,
    pub t1: f64,
    pub t2: f64,
    pub p1: f64,
    pub p2: f64,
}

impl ModelParams {
    pub fn new(omega: f64, g: f64, t1: f64, t2: f64, p1: f64, p2: f64) -> Result<Self> {
        let p = Self {
            omega,
            g,
            t1,
            t2,
            p1,
            p2,
        };
        p.validate()?;
        Ok(p)
    }

    /// Resonant machine at ω = 1 with symmetric reset rates p1 = p2 = p.
    pub fn symmetric(g: f64, t1: f64, t2: f64, p: f64) -> Result<Self> {
        Self::new(1.0, g, t1, t2, p, p)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("omega", self.omega),
            ("g", self.g),
            ("t1", self.t1),
            ("t2", self.t2),
            ("p1", self.p1),
            ("p2", self.p2),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} = {v} is not finite")));
            }
        }
        if self.omega <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "omega must be positive, got {}",
                self.omega
            )));
        }
        if self.g < 0.0 {
            return Err(Error::InvalidParams(format!(
                "g must be non-negative, got {}",
                self.g
            )));
        }
        for (name, v) in [("t1", self.t1), ("t2", self.t2)] {
            if v <= 0.0 {
                return Err(Error::InvalidParams(format!(
                    "temperature {name} must be positive, got {v}"
                )));
            }
        }
        for (name, v) in [("p1", self.p1), ("p2", self.p2)] {
            if v <= 0.0 {
                return Err(Error::InvalidParams(format!(
                    "reset rate {name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    pub fn with_t1(&self, t1: f64) -> Self {
        Self { t1, ..*self }
    }

    pub fn with_g(&self, g: f64) -> Self {
        Self { g, ..*self }
    }

    pub fn beta1(&self) -> f64 {
        1.0 / self.t1
    }

    pub fn beta2(&self) -> f64 {
        1.0 / self.t2
    }

    /// Reset-model validity warnings. The master equation assumes weak
    /// coupling relative to the reset rates; computation proceeds anyway.
    pub fn validity_warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        let pmin = self.p1.min(self.p2);
        if self.g > tol::WEAK_COUPLING_RATIO * pmin {
            w.push(format!(
                "reset-model validity: g = {} exceeds {}*min(p1,p2) = {}; \
                 the reset master equation assumes weak inter-qubit coupling",
                self.g,
                tol::WEAK_COUPLING_RATIO,
                tol::WEAK_COUPLING_RATIO * pmin
            ));
        }
        w
    }
}

/// The two bath equilibrium states the resets aim at.
#[derive(Debug, Clone)]
pub struct EquilibriumPair {
    pub tau1: DensityMatrix,
    pub tau2: DensityMatrix,
}

impl EquilibriumPair {
    pub fn new(params: &ModelParams) -> Result<Self> {
        Ok(Self {
            tau1: thermal_state(params.omega, params.t1)?,
            tau2: spin_equilibrium_state(params.omega, params.t2)?,
        })
    }
}

/// H = H1⊗I + I⊗H2 + g(|01⟩⟨10| + |10⟩⟨01|), with H_k = (ω/2)|1⟩⟨1|.
/// Hermitian by construction; the swap interaction conserves the total
/// excitation number.
pub fn hamiltonian(params: &ModelParams) -> ComplexMatrix {
    let half = 0.5 * params.omega;
    let mut h = ComplexMatrix::diagonal(&[0.0, half, half, 2.0 * half]);
    h[(1, 2)] = Complex64::new(params.g, 0.0);
    h[(2, 1)] = Complex64::new(params.g, 0.0);
    h
}

/// Gibbs state of H1 at temperature `t1`: populations 1/(1+e^{−βω}) on |0⟩
/// and e^{−βω}/(1+e^{−βω}) on |1⟩.
pub fn thermal_state(omega: f64, t1: f64) -> Result<DensityMatrix> {
    if !t1.is_finite() || t1 <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "temperature t1 must be positive, got {t1}"
        )));
    }
    let w = (-omega / t1).exp();
    let z = 1.0 + w;
    DensityMatrix::new(ComplexMatrix::diagonal(&[1.0 / z, w / z]))
}

/// Spin-bath equilibrium state at temperature `t2`: populations
/// 1/(1+e^{−βω}) on |+⟩ and e^{−βω}/(1+e^{−βω}) on |−⟩, i.e. Bloch vector
/// (tanh(βω/2), 0, 0).
pub fn spin_equilibrium_state(omega: f64, t2: f64) -> Result<DensityMatrix> {
    if !t2.is_finite() || t2 <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "temperature t2 must be positive, got {t2}"
        )));
    }
    let rx = (0.5 * omega / t2).tanh();
    let mut m = ComplexMatrix::zeros(2);
    m[(0, 0)] = Complex64::new(0.5, 0.0);
    m[(1, 1)] = Complex64::new(0.5, 0.0);
    m[(0, 1)] = Complex64::new(0.5 * rx, 0.0);
    m[(1, 0)] = Complex64::new(0.5 * rx, 0.0);
    DensityMatrix::new(m)
}

/// Total excitation number |1⟩⟨1|⊗I + I⊗|1⟩⟨1|.
pub fn excitation_number() -> ComplexMatrix {
    let p1 = ComplexMatrix::ketbra(2, 1, 1);
    let i2 = ComplexMatrix::identity(2);
    linalg::tensor(&p1, &i2)
        .add(&linalg::tensor(&i2, &p1))
        .unwrap()
}
