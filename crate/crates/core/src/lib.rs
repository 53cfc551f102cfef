//! Spin-1 (two-qubit symmetric subspace) gates built from a Hermitian
//! irreducible tensor basis, with tools to measure their entangling power.
//!
//! Modules, bottom up:
//! - [`linalg`]: small dense complex matrices, Jacobi eigensolver, `exp(iHt)`.
//! - [`spin`]: Clebsch-Gordan coefficients, spherical tensor operators,
//!   Wigner rotation matrices, tensor decomposition of Hermitian operators.
//! - [`su3`]: the spin-1 basis `M0..M8`, its algebra tables, Gell-Mann map,
//!   and the embedding into the two-qubit space.
//! - [`gates`]: the one-parameter gates `B1..B8` and the LMG gate.
//! - [`entanglement`]: Makhlin invariant, entangling power, concurrence.

pub mod entanglement;
pub mod error;
pub mod gates;
pub mod linalg;
pub mod spin;
pub mod su3;

#[cfg(test)]
mod proptests;
#[cfg(test)]
mod testutil;

pub use entanglement::{
    analyze, concurrence, entangling_power, makhlin_g1, Classification, EntanglementReport,
};
pub use error::{Error, Result};
pub use gates::{gate, lmg_gate, GateLabel, LmgParams, SymmetricGate};
pub use linalg::ComplexMatrix;
pub use spin::SpinLabel;
