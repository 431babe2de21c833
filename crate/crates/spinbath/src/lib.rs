//! Exact steady states, coherence, and magic for a two-qubit autonomous
//! machine driven by a heat bath and a spin (angular-momentum) bath.
//!
//! One qubit is repeatedly reset toward the Gibbs state of a heat bath at
//! temperature `T1`; the other toward the equilibrium state of a spin bath at
//! temperature `T2`, which is Gibbs-like in the σ_x eigenbasis. An
//! energy-swapping interaction of strength `g` couples the two. The crate
//! builds the reset master equation as a 16×16 linear superoperator, solves
//! for its exact steady state, integrates transients, and evaluates the
//! closed-form weak-coupling expansions for the reduced qubit's l1-coherence
//! and stabilizer-polytope (magic) conditions: critical heat-bath
//! temperatures and allowed coupling windows.
//!
//! Conventions, fixed everywhere in this crate:
//!
//! * two-qubit basis order {|00⟩, |01⟩, |10⟩, |11⟩}, slot 1 (the slow/left
//!   Kronecker index) is the heat-bath qubit, slot 2 the spin-bath qubit;
//! * master equation dρ/dt = −i\[H,ρ\] + Σ_i p_i (reset_i ρ − ρ) with the
//!   reset for qubit 2 written (tr_2 ρ) ⊗ τ2, i.e. each bath state is
//!   reinserted into its own slot;
//! * Bloch components r_k = tr(ρ σ_k) with the textbook Pauli matrices;
//!   the spin-bath equilibrium state has r_x = tanh(β2 ω / 2) > 0.
//!
//! Under these conventions the machine's steady state polarizes into the
//! (−x, ∓y) transverse quadrant, so the three octahedron faces it can cross
//! are −r_x−r_y+r_z, −r_x+r_y+r_z and r_x−r_y+r_z; see
//! [`quantumness::bloch_sums_exact`].

pub mod dynamics;
pub mod linalg;
pub mod model;
pub mod quantumness;
pub mod state;
pub mod sweep;
pub mod tol;

mod error;
#[cfg(test)]
pub(crate) mod testutil;

pub use error::Error;
pub use linalg::ComplexMatrix;
pub use model::ModelParams;
pub use state::{BlochVector, DensityMatrix};

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
