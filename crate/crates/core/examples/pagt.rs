// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Three gates teleported in parallel; the output carries `U3 U2 U1 φ`.
//!
//! ```text
//! cargo run --example pagt
//! ```

use pagt::schemes::{run_scheme, SchemeId, SchemeSpec};

fn main() -> pagt::Result<()> {
    let spec = SchemeSpec::new(SchemeId::Pagt).with_unitaries(&["H", "T", "H"]).with_phi("0");
    let r = run_scheme(&spec)?;
    println!("{} qubits, T = {:.3}, {} steps", r.n_qubits, r.total_time, r.evolution.steps);
    println!("output qubit {}: fidelity {:.6}, verdict {}", r.output_qubit, r.fidelity, r.verdict.name());
    Ok(())
}
