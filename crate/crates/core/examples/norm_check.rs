// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! `‖H_fin - H_ini‖` against its linear lower and upper bounds.
//!
//! ```text
//! cargo run --example norm_check
//! ```

use pagt::spectral::pagt_norm_check;

fn main() -> pagt::Result<()> {
    for l in 1..=5 {
        let c = pagt_norm_check(l, 0.5)?;
        println!(
            "L={l}: {:.4} <= {:.6} <= {:.4} (in bounds: {}), witness {:.6}",
            c.lower,
            c.norm,
            c.upper,
            c.within_bounds(),
            c.witness_value
        );
    }
    Ok(())
}
