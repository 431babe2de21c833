//! Dense complex linear algebra for the 2×2 and 4×4 Hermitian problems in
//! this crate: tensor products, partial traces, commutators, Hermitian
//! eigenvalues, and a general small linear solver.
//!
//! Matrices are stored row-major. Everything here is a pure function on
//! immutable values; no global state.

use num_complex::Complex64;

use crate::tol;
use crate::{Error, Result};

/// Which tensor slot of a two-qubit operator to keep in a partial trace.
/// Slot one is the slow (left) Kronecker index — the heat-bath qubit
/// everywhere in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    One,
    Two,
}

/// Square complex matrix, row-major entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build from row-major entries; `entries.len()` must be `dim²`.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// |i⟩⟨j| in the computational basis of the given dimension.
    pub fn ketbra(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(dim);
        m[(i, j)] = Complex64::ONE;
        m
    }

    pub fn sigma_x() -> Self {
        Self::new(2, vec![0.0.into(), 1.0.into(), 1.0.into(), 0.0.into()]).unwrap()
    }

    pub fn sigma_y() -> Self {
        Self::new(
            2,
            vec![
                Complex64::ZERO,
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, 1.0),
                Complex64::ZERO,
            ],
        )
        .unwrap()
    }

    pub fn sigma_z() -> Self {
        Self::diagonal(&[1.0, -1.0])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Row-major entries, consumed. This is also vec(M) in the vectorization
    /// convention used by the Liouvillian.
    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(j, i)];
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let n = self.dim;
        Ok(self
            .entries
            .chunks_exact(n)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Largest |entry|.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from another matrix.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest |M_ij − conj(M_ji)|.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// (M + M†)/2.
    pub fn hermitize(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = 0.5 * (self[(i, j)] + self[(j, i)].conj());
            }
        }
        out
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

/// Kronecker product with `a` as the slow (left) index: slot 1 is the
/// heat-bath qubit, slot 2 the spin-bath qubit, everywhere in this crate.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim, b.dim);
    let n = na * nb;
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..na {
        for j in 0..na {
            let aij = a[(i, j)];
            if aij == Complex64::ZERO {
                continue;
            }
            for k in 0..nb {
                for l in 0..nb {
                    out[(i * nb + k, j * nb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Trace out one slot of a two-qubit (4×4) operator, keeping the other.
pub fn partial_trace(m: &ComplexMatrix, keep: Slot) -> Result<ComplexMatrix> {
    if m.dim != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: m.dim,
        });
    }
    let mut out = ComplexMatrix::zeros(2);
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = match keep {
                // row/col index of the kept qubit is the slow bit
                Slot::One => m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)],
                Slot::Two => m[(i, j)] + m[(i + 2, j + 2)],
            };
        }
    }
    Ok(out)
}

/// ab − ba.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.matmul(b)?.sub(&b.matmul(a)?)
}

/// Eigenvalues of a Hermitian matrix, ascending. Closed form for dim 2,
/// cyclic Jacobi rotations for larger dims (off-diagonal norm driven below
/// [`tol::JACOBI_OFFDIAG`] relative to the matrix scale).
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let dev = m.hermiticity_deviation();
    if dev > tol::HERMITICITY {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let n = m.dim;
    if n == 1 {
        return Ok(vec![m[(0, 0)].re]);
    }
    if n == 2 {
        let (a, d) = (m[(0, 0)].re, m[(1, 1)].re);
        let b = 0.5 * (m[(0, 1)] + m[(1, 0)].conj());
        let mid = 0.5 * (a + d);
        let rad = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        return Ok(vec![mid - rad, mid + rad]);
    }

    let mut w = m.hermitize();
    let scale = w.max_abs().max(1.0);
    let target = tol::JACOBI_OFFDIAG * scale;
    for _sweep in 0..100 {
        if off_diagonal_norm(&w) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut w, p, q);
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| w[(i, i)].re).collect();
    eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(eig)
}

/// Largest |eigenvalue| of a Hermitian matrix (its spectral norm).
pub fn spectral_norm(m: &ComplexMatrix) -> Result<f64> {
    let eig = hermitian_eigenvalues(m)?;
    Ok(eig.iter().map(|e| e.abs()).fold(0.0, f64::max))
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.dim;
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating the (p, q) entry in place.
fn jacobi_rotate(w: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = w[(p, q)];
    let abs = apq.norm();
    if abs < f64::MIN_POSITIVE {
        return;
    }
    let phase = apq / abs;
    let app = w[(p, p)].re;
    let aqq = w[(q, q)].re;
    let tau = (aqq - app) / (2.0 * abs);
    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = w.dim;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = w[(k, p)];
        let akq = w[(k, q)];
        let new_kp = c * akp - s * phase.conj() * akq;
        let new_kq = s * phase * akp + c * akq;
        w[(k, p)] = new_kp;
        w[(p, k)] = new_kp.conj();
        w[(k, q)] = new_kq;
        w[(q, k)] = new_kq.conj();
    }
    let new_pp = c * c * app - 2.0 * c * s * abs + s * s * aqq;
    let new_qq = s * s * app + 2.0 * c * s * abs + c * c * aqq;
    w[(p, p)] = new_pp.into();
    w[(q, q)] = new_qq.into();
    w[(p, q)] = Complex64::ZERO;
    w[(q, p)] = Complex64::ZERO;
}

/// Solve A·x = b by Gaussian elimination with partial pivoting.
/// A pivot smaller than [`tol::SOLVE_PIVOT`] relative to the matrix scale is
/// reported as a singular system, never silently swallowed.
pub fn solve_linear(a: &ComplexMatrix, b: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = a.dim;
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.len(),
        });
    }
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    let mut m = a.entries.clone();
    let mut x = b.to_vec();

    for col in 0..n {
        let (pivot_row, pivot_abs) = (col..n)
            .map(|r| (r, m[r * n + col].norm()))
            .max_by(|l, r| l.1.partial_cmp(&r.1).unwrap())
            .unwrap();
        if pivot_abs <= tol::SOLVE_PIVOT * scale {
            return Err(Error::SingularSystem {
                pivot: pivot_abs,
                step: col,
            });
        }
        if pivot_row != col {
            for j in 0..n {
                m.swap(col * n + j, pivot_row * n + j);
            }
            x.swap(col, pivot_row);
        }
        let pivot = m[col * n + col];
        for row in (col + 1)..n {
            let factor = m[row * n + col] / pivot;
            if factor == Complex64::ZERO {
                continue;
            }
            m[row * n + col] = Complex64::ZERO;
            for j in (col + 1)..n {
                let v = m[col * n + j];
                m[row * n + j] -= factor * v;
            }
            let bv = x[col];
            x[row] -= factor * bv;
        }
    }

    for row in (0..n).rev() {
        let mut acc = x[row];
        for j in (row + 1)..n {
            acc -= m[row * n + j] * x[j];
        }
        x[row] = acc / m[row * n + row];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{c, random_hermitian, random_matrix};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn tensor_identity_cases() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(tensor(&i2, &i2), ComplexMatrix::identity(4));

        let sz_i = tensor(&ComplexMatrix::sigma_z(), &i2);
        assert_eq!(sz_i, ComplexMatrix::diagonal(&[1.0, 1.0, -1.0, -1.0]));

        // |0><0| (x) |1><1| sits at |01><01|, index (1,1) of {|00>,|01>,|10>,|11>}
        let p0 = ComplexMatrix::ketbra(2, 0, 0);
        let p1 = ComplexMatrix::ketbra(2, 1, 1);
        let t = tensor(&p0, &p1);
        assert_eq!(t, ComplexMatrix::ketbra(4, 1, 1));
    }

    #[test]
    fn tensor_is_associative_and_trace_multiplicative() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let a = random_hermitian(&mut rng, 2);
            let b = random_hermitian(&mut rng, 2);
            let tr_prod = tensor(&a, &b).trace();
            assert!((tr_prod - a.trace() * b.trace()).norm() < 1e-12);
        }
        // associativity on 2x2 blocks (dim 8 result)
        let a = random_hermitian(&mut rng, 2);
        let b = random_hermitian(&mut rng, 2);
        let d = random_hermitian(&mut rng, 2);
        let left = tensor(&tensor(&a, &b), &d);
        let right = tensor(&a, &tensor(&b, &d));
        assert!(left.max_abs_diff(&right) < 1e-14);
    }

    #[test]
    fn tensor_of_hermitian_stays_hermitian() {
        let mut rng = StdRng::seed_from_u64(8);
        for _ in 0..20 {
            let a = random_hermitian(&mut rng, 2);
            let b = random_hermitian(&mut rng, 2);
            assert!(tensor(&a, &b).hermiticity_deviation() < 1e-12);
        }
    }

    #[test]
    fn partial_trace_factorizes_products() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..50 {
            let a = random_matrix(&mut rng, 2);
            let b = random_matrix(&mut rng, 2);
            let prod = tensor(&a, &b);
            let kept1 = partial_trace(&prod, Slot::One).unwrap();
            assert!(kept1.max_abs_diff(&a.scale(b.trace())) < 1e-12);
            let kept2 = partial_trace(&prod, Slot::Two).unwrap();
            assert!(kept2.max_abs_diff(&b.scale(a.trace())) < 1e-12);
        }
    }

    #[test]
    fn partial_trace_of_maximally_mixed() {
        let mixed = ComplexMatrix::identity(4).scale(c(0.25, 0.0));
        let r = partial_trace(&mixed, Slot::Two).unwrap();
        assert!(r.max_abs_diff(&ComplexMatrix::identity(2).scale(c(0.5, 0.0))) < 1e-15);
    }

    #[test]
    fn partial_trace_of_bell_state() {
        // |Psi+> = (|01> + |10>)/sqrt(2); contracting either slot by hand
        // gives I/2.
        let mut bell = ComplexMatrix::zeros(4);
        for i in [1, 2] {
            for j in [1, 2] {
                bell[(i, j)] = c(0.5, 0.0);
            }
        }
        let r = partial_trace(&bell, Slot::One).unwrap();
        assert!(r.max_abs_diff(&ComplexMatrix::identity(2).scale(c(0.5, 0.0))) < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_wrong_dimension() {
        let m = ComplexMatrix::identity(2);
        assert!(matches!(
            partial_trace(&m, Slot::One),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn pauli_commutators() {
        let sx = ComplexMatrix::sigma_x();
        let sy = ComplexMatrix::sigma_y();
        let sz = ComplexMatrix::sigma_z();
        assert!(commutator(&sx, &sx).unwrap().max_abs() < 1e-15);
        let expect = sz.scale(c(0.0, 2.0));
        assert!(commutator(&sx, &sy).unwrap().max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn commutator_matches_elementwise_multiply_oracle() {
        // independent oracle: (ab)_ij = sum_k a_ik b_kj accumulated by hand
        let mut rng = StdRng::seed_from_u64(10);
        for _ in 0..20 {
            let a = random_matrix(&mut rng, 4);
            let b = random_matrix(&mut rng, 4);
            let comm = commutator(&a, &b).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    let mut expect = Complex64::ZERO;
                    for k in 0..4 {
                        expect += a[(i, k)] * b[(k, j)] - b[(i, k)] * a[(k, j)];
                    }
                    assert!((comm[(i, j)] - expect).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn commutator_rejects_dim_mismatch() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(4);
        assert!(commutator(&a, &b).is_err());
    }

    #[test]
    fn eigenvalues_of_pauli_z_and_mixed_state() {
        assert_eq!(
            hermitian_eigenvalues(&ComplexMatrix::sigma_z()).unwrap(),
            vec![-1.0, 1.0]
        );
        let mixed = ComplexMatrix::identity(4).scale(c(0.25, 0.0));
        let eig = hermitian_eigenvalues(&mixed).unwrap();
        for e in eig {
            assert!((e - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn eigenvalues_of_thermal_qubit() {
        // populations of e^{-H/T} at T = 1: direct evaluation
        let z = 1.0 + (-1.0f64).exp();
        let tau = ComplexMatrix::diagonal(&[1.0 / z, (-1.0f64).exp() / z]);
        let eig = hermitian_eigenvalues(&tau).unwrap();
        assert!((eig[0] - 0.268_941_421_369_995_1).abs() < 1e-14);
        assert!((eig[1] - 0.731_058_578_630_004_9).abs() < 1e-14);
    }

    #[test]
    fn jacobi_recovers_constructed_spectrum() {
        // construct-then-check: H = U D U† from a known diagonal and a
        // unitary assembled out of Givens rotations
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..20 {
            let mut d: Vec<f64> = (0..4).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let mut u = ComplexMatrix::identity(4);
            for p in 0..4 {
                for q in (p + 1)..4 {
                    let th = rng.gen_range(0.0..std::f64::consts::TAU);
                    let ph = rng.gen_range(0.0..std::f64::consts::TAU);
                    let mut g = ComplexMatrix::identity(4);
                    g[(p, p)] = c(th.cos(), 0.0);
                    g[(q, q)] = c(th.cos(), 0.0);
                    g[(p, q)] = c(0.0, ph).exp() * th.sin();
                    g[(q, p)] = -c(0.0, -ph).exp() * th.sin();
                    u = u.matmul(&g).unwrap();
                }
            }
            let h = u
                .matmul(&ComplexMatrix::diagonal(&d))
                .unwrap()
                .matmul(&u.adjoint())
                .unwrap();
            let eig = hermitian_eigenvalues(&h).unwrap();
            d.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (got, want) in eig.iter().zip(&d) {
                assert!((got - want).abs() < 1e-12, "{got} vs {want}");
            }
        }
    }

    #[test]
    fn eigenvalues_reject_non_hermitian() {
        let m = ComplexMatrix::ketbra(2, 0, 1);
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn solve_identity_and_diagonal() {
        let b = vec![c(1.0, 2.0), c(-3.0, 0.5)];
        let x = solve_linear(&ComplexMatrix::identity(2), &b).unwrap();
        assert!((x[0] - b[0]).norm() < 1e-15 && (x[1] - b[1]).norm() < 1e-15);

        let a = ComplexMatrix::diagonal(&[2.0, 4.0]);
        let x = solve_linear(&a, &[c(2.0, 0.0), c(4.0, 0.0)]).unwrap();
        assert!((x[0] - Complex64::ONE).norm() < 1e-15);
        assert!((x[1] - Complex64::ONE).norm() < 1e-15);
    }

    #[test]
    fn solve_round_trips_random_16x16() {
        let mut rng = StdRng::seed_from_u64(12);
        for _ in 0..10 {
            // diagonally dominated => well-conditioned
            let mut a = random_matrix(&mut rng, 16);
            for i in 0..16 {
                a[(i, i)] += c(8.0, 0.0);
            }
            let x_true: Vec<Complex64> = (0..16)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let b = a.mul_vec(&x_true).unwrap();
            let x = solve_linear(&a, &b).unwrap();
            let err = x
                .iter()
                .zip(&x_true)
                .map(|(p, q)| (p - q).norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-9, "solve error {err}");

            // backward residual within 1e-10 of the right-hand-side scale
            let ax = a.mul_vec(&x).unwrap();
            let residual = ax
                .iter()
                .zip(&b)
                .map(|(p, q)| (p - q).norm())
                .fold(0.0, f64::max);
            let b_scale = b.iter().map(|v| v.norm()).fold(0.0, f64::max);
            assert!(residual <= 1e-10 * b_scale, "residual {residual}");
        }
    }

    #[test]
    fn solve_reports_singular_system() {
        let mut a = ComplexMatrix::zeros(3);
        a[(0, 0)] = Complex64::ONE;
        a[(1, 1)] = Complex64::ONE;
        // third row/col identically zero
        let r = solve_linear(&a, &[Complex64::ONE; 3]);
        assert!(matches!(r, Err(Error::SingularSystem { .. })));
    }
}
