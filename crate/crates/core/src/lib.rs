// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Adiabatic gate teleportation with chained gate Hamiltonians.
//!
//! Builds gate Hamiltonians from Pauli sums, analyzes the interpolated
//! spectra through the alternating-bond Heisenberg chain and its `J_z`
//! sectors, integrates the adiabatic dynamics under linear, gap-adapted or
//! per-term schedules, and runs every teleportation scheme end to end
//! against its analytic target.
//!
//! Qubit indices are zero-based and qubit 0 is the most significant bit of
//! a computational basis index. Scheme code speaks in one-based labels and
//! converts through [`schemes::Register`].

// `!(x > 0.0)` rejects NaN along with non-positive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod evolution;
pub mod gate;
pub mod operator;
pub mod pauli;
pub mod schemes;
pub mod sparse;
pub mod spectral;
pub mod state;
pub mod unitary;

pub use error::{Error, Result};
pub use gate::{gate_hamiltonian, matrix_state, mes_state, BipartiteMatrixState};
pub use operator::{conjugate_operator, OperatorSum};
pub use pauli::{Pauli, PauliString};
pub use state::{Fragment, StateVector};
pub use unitary::SingleQubitUnitary;

pub use num_complex::Complex64;

/// Default tolerance for validation checks (unitarity, normalization).
pub const DEFAULT_TOL: f64 = 1e-9;
