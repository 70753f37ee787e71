// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Reordered final pairings change which product the output receives.
//!
//! ```text
//! cargo run --example reordered
//! ```

use pagt::schemes::{analytic_target, run_scheme, SchemeId, SchemeSpec};

fn main() -> pagt::Result<()> {
    let standard = SchemeSpec::new(SchemeId::Pagt).with_unitaries(&["X", "Z"]).with_phi("+");
    let reordered = SchemeSpec::new(SchemeId::PagtReordered).with_unitaries(&["X", "Z"]).with_phi("+");
    for spec in [&standard, &reordered] {
        let r = run_scheme(spec)?;
        println!("{:<15} output qubit {} fidelity {:.6}", spec.scheme.name(), r.output_qubit, r.fidelity);
    }
    let overlap = analytic_target(&standard)?.fidelity(&analytic_target(&reordered)?)?;
    println!("overlap of the two analytic targets: {overlap:.6}");
    Ok(())
}
