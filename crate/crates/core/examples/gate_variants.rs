// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Single-gate teleportation and its transpose, conjugate and adjoint
//! variants.
//!
//! ```text
//! cargo run --example gate_variants
//! ```

use pagt::schemes::{run_scheme, SchemeId, SchemeSpec};

fn main() -> pagt::Result<()> {
    let cases = [
        (SchemeId::At, vec![]),
        (SchemeId::Agt, vec!["H"]),
        (SchemeId::Trans, vec!["S"]),
        (SchemeId::Conj, vec!["T"]),
        (SchemeId::Dagger, vec!["S"]),
    ];
    for (id, gates) in cases {
        let spec = SchemeSpec::new(id).with_unitaries(&gates).with_phi("+");
        let r = run_scheme(&spec)?;
        println!(
            "{:<7} {:<4} output qubit {} fidelity {:.6} ({})",
            id.name(),
            gates.first().unwrap_or(&"-"),
            r.output_qubit,
            r.fidelity,
            r.verdict.name()
        );
    }
    Ok(())
}
