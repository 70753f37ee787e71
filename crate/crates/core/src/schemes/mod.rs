// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! One verifiable entry point per teleportation scheme.
//!
//! A run builds the scheme's Hamiltonians from its edge layout, prepares the
//! initial ground state, evolves, relocates the control branches onto a
//! common layout with controlled swaps, and compares against the target
//! predicted by the edge flow.

pub mod run;
pub mod spec;
pub mod wiring;

pub use run::{
    analytic_target, block_gap_scan, run_at, run_ctrl_ortho, run_ctrl_u_naive, run_ctrl_u_revised,
    run_ctrl_ut_udag, run_pagt, run_pagt_reordered, run_quantum_switch, run_scheme, run_variant,
    wiring_for, BlockGap, SchemeReport, Verdict,
};
pub use spec::{
    check_matching, ScheduleKind, SchemeId, SchemeSpec, StateInput, StepInput, Thresholds, TotalTime,
    DEFAULT_AUTO_TIME_FACTOR,
};
pub use wiring::{controlled_superposition, relocation_swaps, Edge, Flow, Register, Wiring};
