// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Controlled real orthogonal gate from two square-root teleportations.
//!
//! ```text
//! cargo run --example ctrl_ortho
//! ```

use pagt::schemes::{run_scheme, SchemeId, SchemeSpec};

fn main() -> pagt::Result<()> {
    for o in ["Ry(3.141592653589793)", "Ry(1.4)", "Z"] {
        let spec = SchemeSpec::new(SchemeId::CtrlOrtho).with_unitaries(&[o]).with_phi("0");
        match run_scheme(&spec) {
            Ok(r) => println!(
                "O = {o}: real root {:?}, fidelity {:.6}, flow fidelity {:.6}, verdict {}",
                r.real_root,
                r.fidelity,
                r.flow_fidelity.unwrap_or(r.fidelity),
                r.verdict.name()
            ),
            Err(e) => println!("O = {o}: rejected: {e}"),
        }
    }
    Ok(())
}
