// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Controlled `UᵀU†`: identity on the `|0>` branch, `UᵀU†` on `|1>`.
//! Symmetric gates give a controlled identity, `Ry(θ)` gives `Ry(-2θ)`.
//!
//! ```text
//! cargo run --example ctrl_ut_udag
//! ```

use pagt::schemes::{run_scheme, SchemeId, SchemeSpec};

fn main() -> pagt::Result<()> {
    for u in ["S", "H", "Ry(0.4)"] {
        let r = run_scheme(&SchemeSpec::new(SchemeId::CtrlUtUdag).with_unitaries(&[u]).with_phi("+"))?;
        println!("U = {u:<8} output qubit {} swaps {:?} fidelity {:.6}", r.output_qubit, r.cswaps, r.fidelity);
    }
    Ok(())
}
