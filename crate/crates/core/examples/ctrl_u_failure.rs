// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Why a naive controlled gate fails: the branches end in orthogonal
//! ancilla states (purity 1/2), and the revised wiring closes its gap.
//!
//! ```text
//! cargo run --example ctrl_u_failure
//! ```

use pagt::schemes::{block_gap_scan, run_scheme, SchemeId, SchemeSpec};
use pagt::spectral::default_grid;
use pagt::SingleQubitUnitary;

fn main() -> pagt::Result<()> {
    let naive = run_scheme(&SchemeSpec::new(SchemeId::CtrlUNaive).with_unitaries(&["X"]))?;
    println!(
        "naive:   purity {:.4} on (C, out), verdict {}",
        naive.purity.unwrap_or(f64::NAN),
        naive.verdict.name()
    );
    let gap = block_gap_scan(&SingleQubitUnitary::pauli_x(), 0.5, &default_grid(0.01)?)?;
    println!("revised: block gap {:.2e} at s = {}", gap.min_gap, gap.s);
    Ok(())
}
