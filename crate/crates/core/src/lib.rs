//! Multi-photon evolution in linear optical networks.
//!
//! A passive, photon-number-preserving network on `m` modes is described for a
//! single photon by an `m x m` unitary `S = exp(i H_S)`. This crate lifts that
//! description to `n` photons:
//!
//! * [`lift::lift_unitary_expansion`] and [`lift::lift_unitary_permanent`] build the
//!   `M x M` unitary `U = phi(S)` with `M = C(m + n - 1, n)`;
//! * [`lift::lift_hamiltonian`] builds the effective Hamiltonian `H_U = dphi(H_S)`
//!   directly from the single-photon Hamiltonian, so that `U = exp(i H_U)`;
//! * [`verification`] checks that the two routes agree.
//!
//! Basis states are ordered as described in [`fock_basis`].

pub mod error;
pub mod fock_basis;
pub mod io;
pub mod lift;
pub mod linalg;
pub mod verification;

pub use error::{Error, Result};
pub use fock_basis::{dimension, enumerate_basis, FockBasis, MoveRelation, OccupationState};
pub use linalg::{Complex64, ComplexMatrix};
