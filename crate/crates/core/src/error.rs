// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("qubit indices must be pairwise distinct, got {0:?}")]
    OverlappingQubits(Vec<usize>),

    #[error("matrix is not unitary (max |U†U - I| entry {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("matrix is not real orthogonal (deviation {deviation:.3e})")]
    NotOrthogonal { deviation: f64 },

    #[error("state normalization {found:.12} differs from expected {expected}")]
    NotNormalized { found: f64, expected: f64 },

    #[error("qubit count mismatch: {left} vs {right}")]
    QubitCountMismatch { left: usize, right: usize },

    #[error("dimension {dim} exceeds the dense limit {limit}")]
    TooLarge { dim: usize, limit: usize },

    #[error("operator couples J_z sectors (leaked weight {leak:.3e})")]
    SectorLeak { leak: f64 },

    #[error("sector matrix has a complex entry ({imag:.3e})")]
    ComplexSectorEntry { imag: f64 },

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:.3e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("gap vanishes at s = {s}; adapted-time integral is undefined")]
    ZeroGap { s: f64 },

    #[error(
        "step control failed: dt {dt:.3e} below dt_min with final-state change {change:.3e} > tol {tol:.1e}"
    )]
    StepControl { dt: f64, change: f64, tol: f64 },

    #[error("unknown gate `{0}`")]
    UnknownGate(String),

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("invalid pairing: {0}")]
    InvalidPairing(String),

    #[error("operator is not of the expected form: {0}")]
    UnexpectedForm(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
