// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Sufficient adiabatic times under the linear bound and the gap-adapted
//! schedule.
//!
//! ```text
//! cargo run --example timing
//! ```

use pagt::spectral::{default_grid, gap_profile, sufficient_time, EigenPolicy, TimingParams};

fn main() -> pagt::Result<()> {
    let grid = default_grid(0.01)?;
    let params = TimingParams::default();
    println!("{:>2} {:>10} {:>10} {:>10} {:>14}", "L", "G_L", "T_e", "T_L", "linear bound");
    for l in 1..=5 {
        let profile = gap_profile(l, 0.5, &grid, &EigenPolicy::default())?;
        let r = sufficient_time(&profile, &params)?;
        println!("{l:>2} {:>10.6} {:>10.6} {:>10.4} {:>14.2}", r.g_l, r.t_e, r.t_l, r.linear_bound_t);
    }
    Ok(())
}
