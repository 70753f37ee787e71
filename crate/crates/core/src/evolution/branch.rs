// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Control-branch decomposition and reduced-state purity.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::StateVector;

/// Below this branch amplitude the relative phase is left undefined.
pub const PHASE_FLOOR: f64 = 1e-6;

/// `ψ = |0>_c a t0 + |1>_c b t1 + residual`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchPhase {
    /// `arg(b / a)`, absent when either branch is below [`PHASE_FLOOR`].
    pub theta: Option<f64>,
    pub weight0: f64,
    pub weight1: f64,
    /// `‖residual‖²`.
    pub residual: f64,
    #[serde(skip)]
    pub a: Complex64,
    #[serde(skip)]
    pub b: Complex64,
}

impl BranchPhase {
    pub fn phase_defined(&self) -> bool {
        self.theta.is_some()
    }
}

pub fn branch_phase(
    psi: &StateVector,
    control: usize,
    target0: &StateVector,
    target1: &StateVector,
) -> Result<BranchPhase> {
    let rest = psi.n_qubits() - 1;
    for t in [target0, target1] {
        if t.n_qubits() != rest {
            return Err(Error::QubitCountMismatch { left: t.n_qubits(), right: rest });
        }
    }
    let slice0 = psi.slice(control, 0)?;
    let slice1 = psi.slice(control, 1)?;
    let project = |t: &StateVector, s: &[Complex64]| -> Complex64 {
        t.amplitudes().iter().zip(s).map(|(x, y)| x.conj() * y).sum()
    };
    let a = project(target0, &slice0);
    let b = project(target1, &slice1);
    let total = psi.norm().powi(2);
    let theta = (a.norm() >= PHASE_FLOOR && b.norm() >= PHASE_FLOOR).then(|| (b / a).arg());
    Ok(BranchPhase {
        theta,
        weight0: a.norm_sqr(),
        weight1: b.norm_sqr(),
        residual: (total - a.norm_sqr() - b.norm_sqr()).max(0.0),
        a,
        b,
    })
}

/// `tr ρ²` of the reduced state on `keep`.
pub fn reduced_purity(psi: &StateVector, keep: &[usize]) -> Result<f64> {
    psi.reduced_purity(keep)
}

/// Wraps an angle into `(-π, π]`.
pub fn wrap_phase(theta: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let mut x = theta.rem_euclid(tau);
    if x > std::f64::consts::PI {
        x -= tau;
    }
    x
}
