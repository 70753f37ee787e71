// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Adiabatic teleportation of `|+i>` from qubit 0 to qubit 2, assembled
//! directly from gate Hamiltonians.
//!
//! ```text
//! cargo run --example teleport
//! ```

use pagt::evolution::{evolve, EvolveOptions, Schedule};
use pagt::spectral::{default_grid, gap_profile, pagt_norm, pat_hamiltonians, sufficient_time, EigenPolicy, TimingParams};
use pagt::{mes_state, Fragment, StateVector};

fn main() -> pagt::Result<()> {
    let omega = 0.5;
    let (h_ini, h_fin) = pat_hamiltonians(1, omega)?;
    let phi = StateVector::from_name("+i")?;
    let psi0 = StateVector::from_fragments(3, &[Fragment { qubits: vec![0], state: phi.clone() }, mes_state(1, 2)?])?;
    let target = StateVector::from_fragments(3, &[mes_state(0, 1)?, Fragment { qubits: vec![2], state: phi }])?;

    let profile = gap_profile(1, omega, &default_grid(0.01)?, &EigenPolicy::default())?;
    let timing = sufficient_time(&profile, &TimingParams::default())?;
    for factor in [1.0, 5.0, 20.0] {
        let t = factor * timing.t_l;
        let schedule = Schedule::gap_adapted(&profile, pagt_norm(1, omega)?, t)?;
        let r = evolve(&h_ini, &h_fin, &schedule, &psi0, &EvolveOptions::with_target(target.clone()))?;
        println!(
            "T = {t:7.3}: fidelity {:.6}, leakage {:.2e}, {} steps",
            r.fidelity.unwrap_or(f64::NAN),
            r.leakage.unwrap_or(f64::NAN),
            r.steps
        );
    }
    Ok(())
}
