// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Time evolution under interpolated and per-term scheduled Hamiltonians.
//!
//! Each step applies `exp(-i dt H(t + dt/2))`. The whole run is repeated
//! with twice the step count until the final state stops moving.

pub mod branch;
pub mod expm;
pub mod propagate;
pub mod schedule;

pub use branch::{branch_phase, reduced_purity, wrap_phase, BranchPhase, PHASE_FLOOR};
pub use expm::{expm_dense, expm_krylov};
pub use propagate::{
    evolve, evolve_multiterm, ground_leakage, propagate_fixed, trace_csv, EvolutionReport,
    EvolveOptions, PropagatorKind, StepControl, TraceRow,
};
pub use schedule::{Schedule, TermSchedule, Weight};
