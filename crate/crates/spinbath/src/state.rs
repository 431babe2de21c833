//! Density matrices, Bloch vectors, and the l1-norm of coherence.

use num_complex::Complex64;
use serde::Serialize;

use crate::linalg::{self, ComplexMatrix, Slot};
use crate::tol;
use crate::{Error, Result};

/// Hermitian, unit-trace, positive (to tolerance) complex matrix of
/// dimension 2 or 4. Construction validates all three invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validate and wrap. Positivity is checked through the Hermitian
    /// eigenvalues, so this is the expensive constructor; use it at module
    /// boundaries, not in inner loops.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let dev = matrix.hermiticity_deviation();
        if dev > tol::HERMITICITY {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let tr = matrix.trace();
        if (tr - Complex64::ONE).norm() > tol::TRACE {
            return Err(Error::InvalidDensity {
                reason: format!("trace = {tr}"),
            });
        }
        let eig = linalg::hermitian_eigenvalues(&matrix)?;
        if eig[0] < tol::EIGENVALUE_FLOOR {
            return Err(Error::InvalidDensity {
                reason: format!("negative eigenvalue {:.3e}", eig[0]),
            });
        }
        Ok(Self { matrix })
    }

    /// Maximally mixed state I/dim.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0)),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Reduced state of the kept qubit of a two-qubit state.
    pub fn partial_trace(&self, keep: Slot) -> Result<DensityMatrix> {
        let reduced = linalg::partial_trace(&self.matrix, keep)?;
        DensityMatrix::new(reduced)
    }

    /// Ascending Hermitian eigenvalues.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        linalg::hermitian_eigenvalues(&self.matrix)
    }

    pub fn purity(&self) -> f64 {
        self.matrix.matmul(&self.matrix).unwrap().trace().re
    }

    /// Trace distance ½‖ρ − σ‖₁ via the eigenvalues of the difference.
    pub fn trace_distance(&self, other: &DensityMatrix) -> Result<f64> {
        let diff = self.matrix.sub(&other.matrix)?;
        let eig = linalg::hermitian_eigenvalues(&diff)?;
        Ok(0.5 * eig.iter().map(|e| e.abs()).sum::<f64>())
    }

    /// Bloch vector of a qubit state, r_k = tr(ρ σ_k).
    pub fn bloch(&self) -> Result<BlochVector> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: self.dim(),
            });
        }
        let m = &self.matrix;
        Ok(BlochVector {
            x: 2.0 * m[(0, 1)].re,
            y: -2.0 * m[(0, 1)].im,
            z: m[(0, 0)].re - m[(1, 1)].re,
        })
    }

    /// Sum of |off-diagonal| entries in the computational basis; for a qubit
    /// this equals 2|ρ01| = √(r_x² + r_y²).
    pub fn l1_coherence(&self) -> f64 {
        let n = self.dim();
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += self.matrix[(i, j)].norm();
                }
            }
        }
        s
    }
}

/// Bloch vector (r_x, r_y, r_z) of a qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// ρ = (I + r·σ)/2. Fails when the vector leaves the unit ball by more
    /// than the tolerance slack.
    pub fn to_density(&self) -> Result<DensityMatrix> {
        let norm2 = self.x * self.x + self.y * self.y + self.z * self.z;
        if norm2 > 1.0 + tol::BLOCH_BALL {
            return Err(Error::BlochOutOfBall { norm: norm2.sqrt() });
        }
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 0)] = Complex64::new(0.5 * (1.0 + self.z), 0.0);
        m[(1, 1)] = Complex64::new(0.5 * (1.0 - self.z), 0.0);
        m[(0, 1)] = Complex64::new(0.5 * self.x, -0.5 * self.y);
        m[(1, 0)] = Complex64::new(0.5 * self.x, 0.5 * self.y);
        // a slightly super-unit |r| within the slack may produce a tiny
        // negative eigenvalue; that is exactly what the floor tolerates
        DensityMatrix::new(m)
    }
}
