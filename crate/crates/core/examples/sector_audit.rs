// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Checks that the `k = 1/2` magnetization sector carries the relevant gap.
//!
//! ```text
//! cargo run --example sector_audit
//! ```

use pagt::spectral::{cross_sector_audit, off_sector_norm, pat_hamiltonians, to_spin_chain};

fn main() -> pagt::Result<()> {
    for l in 1..=3 {
        let (ini, fin) = pat_hamiltonians(l, 0.5)?;
        let chain = to_spin_chain(&ini, &fin)?;
        println!("L={l}: J_z off-block norm {:.1e}", off_sector_norm(&chain.at(0.5)?));
        for s in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let a = cross_sector_audit(l, 0.5, s)?;
            println!(
                "  s={s:<4} sector gap {:.6} global gap {:.6} ground split {:.1e}",
                a.sector_gap, a.global_gap, a.ground_split
            );
        }
    }
    Ok(())
}
