// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Spectral gap of the interpolated teleportation chain for L = 1..4.
//!
//! ```text
//! cargo run --example gap_profile
//! ```

use pagt::spectral::{default_grid, gap_profile, min_gap, EigenPolicy};

fn main() -> pagt::Result<()> {
    let omega = 0.5;
    let grid = default_grid(0.05)?;
    let policy = EigenPolicy::default();
    for l in 1..=4 {
        let profile = gap_profile(l, omega, &grid, &policy)?;
        let (s_star, g) = min_gap(&profile)?;
        println!("L={l}: min gap {g:.6} at s={s_star}");
        let row: Vec<String> = profile.gaps.iter().step_by(4).map(|g| format!("{g:.4}")).collect();
        println!("  gap every 0.2 in s: {}", row.join(" "));
    }
    Ok(())
}
