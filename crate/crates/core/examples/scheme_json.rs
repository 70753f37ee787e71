// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Runs a scheme from a JSON specification and prints the JSON report.
//!
//! ```text
//! cargo run --example scheme_json
//! ```

use pagt::schemes::{run_scheme, SchemeSpec};

const SPEC: &str = r#"{
    "scheme": "AGT",
    "unitaries": ["T"],
    "phi": "random",
    "seed": 7,
    "schedule": "linear",
    "total_time": 40
}"#;

fn main() -> pagt::Result<()> {
    let spec = SchemeSpec::from_json(SPEC)?;
    let report = run_scheme(&spec)?;
    let json = report.to_json()?;
    println!("{}", serde_json::to_string_pretty(&json).expect("report serializes"));
    std::process::exit(report.verdict.exit_code());
}
