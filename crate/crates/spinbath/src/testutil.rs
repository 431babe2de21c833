//! Shared helpers for unit tests.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::Rng;

use crate::linalg::ComplexMatrix;
use crate::state::{BlochVector, DensityMatrix};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_matrix(rng: &mut StdRng, dim: usize) -> ComplexMatrix {
    let entries = (0..dim * dim)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    ComplexMatrix::new(dim, entries).unwrap()
}

pub fn random_hermitian(rng: &mut StdRng, dim: usize) -> ComplexMatrix {
    random_matrix(rng, dim).hermitize()
}

/// Random density matrix: normalized M·M† for a random M.
pub fn random_density(rng: &mut StdRng, dim: usize) -> DensityMatrix {
    let m = random_matrix(rng, dim);
    let pos = m.matmul(&m.adjoint()).unwrap();
    let tr = pos.trace();
    DensityMatrix::new(pos.scale(c(1.0 / tr.re, 0.0))).unwrap()
}

/// Uniform random Bloch vector inside the unit ball.
pub fn random_bloch(rng: &mut StdRng) -> BlochVector {
    loop {
        let v = BlochVector {
            x: rng.gen_range(-1.0..1.0),
            y: rng.gen_range(-1.0..1.0),
            z: rng.gen_range(-1.0..1.0),
        };
        if v.norm() <= 1.0 {
            return v;
        }
    }
}
