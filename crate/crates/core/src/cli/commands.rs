// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Command bodies. Each returns the full output text plus status; nothing
//! is written until the command has finished.

use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Map, Value};

use super::format::sig12;
use super::{Cli, Command, Figure, ScheduleArg, EXIT_INVALID, EXIT_OK, EXIT_SOLVER};
use crate::error::Error;
use crate::schemes::{run_scheme, ScheduleKind, SchemeId, SchemeSpec, StateInput, TotalTime};
use crate::spectral::{
    default_grid, gap_profile, pagt_norm_check, sufficient_time, EigenPolicy, SpectralProfile, TimingParams,
    TimingReport,
};
use crate::unitary::UnitaryInput;

/// Everything a command produced.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    /// CSV or JSON text; partial when a later item failed.
    pub body: Option<String>,
    pub status: i32,
    /// One JSON object per line, for stderr.
    pub errors: Vec<String>,
}

impl Outcome {
    fn invalid(message: String) -> Self {
        Self { body: None, status: EXIT_INVALID, errors: vec![error_record("invalid-input", &message, None)] }
    }
}

/// `{"error": kind, "message": ..., "context": ...}` on one line.
pub fn error_record(kind: &str, message: &str, context: Option<Value>) -> String {
    let mut m = Map::new();
    m.insert("error".into(), json!(kind));
    m.insert("message".into(), json!(message));
    if let Some(c) = context {
        m.insert("context".into(), c);
    }
    Value::Object(m).to_string()
}

/// Error kind and exit status.
pub fn classify(e: &Error) -> (&'static str, i32) {
    match e {
        Error::NotConverged { .. }
        | Error::StepControl { .. }
        | Error::TooLarge { .. }
        | Error::ZeroGap { .. }
        | Error::SectorLeak { .. }
        | Error::ComplexSectorEntry { .. } => ("solver", EXIT_SOLVER),
        Error::Io(_) => ("io", EXIT_INVALID),
        _ => ("invalid-input", EXIT_INVALID),
    }
}

fn header(cli: &Cli) -> String {
    if cli.common.no_header_meta {
        return String::new();
    }
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    format!("# pagt {} {} generated_unix={secs}\n", env!("CARGO_PKG_VERSION"), cli.command.name())
}

/// Rows accumulated per L; stops at the first failing L.
fn per_l<F>(cli: &Cli, columns: &str, mut rows_for: F) -> Outcome
where
    F: FnMut(usize) -> crate::Result<Vec<String>>,
{
    let mut body = header(cli);
    body.push_str(columns);
    body.push('\n');
    for l in cli.common.l.iter() {
        match rows_for(l) {
            Ok(rows) => rows.iter().for_each(|r| {
                body.push_str(r);
                body.push('\n');
            }),
            Err(e) => {
                let (kind, status) = classify(&e);
                return Outcome {
                    body: Some(body),
                    status,
                    errors: vec![error_record(kind, &e.to_string(), Some(json!({ "L": l })))],
                };
            }
        }
    }
    Outcome { body: Some(body), status: EXIT_OK, errors: Vec::new() }
}

fn profile(cli: &Cli, l: usize) -> crate::Result<SpectralProfile> {
    gap_profile(l, cli.common.omega, &default_grid(cli.common.s_step)?, &EigenPolicy::default())
}

fn timing(cli: &Cli, l: usize, params: &TimingParams) -> crate::Result<TimingReport> {
    sufficient_time(&profile(cli, l)?, params)
}

fn profile_rows(cli: &Cli, l: usize) -> crate::Result<Vec<String>> {
    let p = profile(cli, l)?;
    Ok((0..p.len())
        .map(|k| {
            format!(
                "{l},{},{},{},{}",
                sig12(p.omega),
                sig12(p.s_grid[k]),
                sig12(p.gaps[k]),
                sig12(p.ground_energies[k])
            )
        })
        .collect())
}

fn validate_common(cli: &Cli) -> Result<(), String> {
    let c = &cli.common;
    if !(c.omega > 0.0 && c.omega.is_finite()) {
        return Err(format!("--omega must be positive, got {}", c.omega));
    }
    default_grid(c.s_step).map_err(|e| format!("--s-step: {e}"))?;
    if let Some(out) = &c.out {
        let parent = out.parent().filter(|p| !p.as_os_str().is_empty());
        if let Some(p) = parent {
            if !p.is_dir() {
                return Err(format!("--out: directory {} does not exist", p.display()));
            }
        }
    }
    Ok(())
}

/// Runs the parsed command.
pub fn execute(cli: &Cli) -> Outcome {
    if let Err(m) = validate_common(cli) {
        return Outcome::invalid(m);
    }
    match &cli.command {
        Command::GapScan => per_l(cli, "L,omega,s,gap,ground_energy", |l| profile_rows(cli, l)),
        Command::Timing { epsilon, delta, c } => {
            let params = TimingParams { epsilon: *epsilon, delta: *delta, c: *c };
            if !(params.epsilon > 0.0 && params.delta >= 0.0 && params.c > 0.0) {
                return Outcome::invalid(format!("timing parameters out of range: {params:?}"));
            }
            per_l(cli, "L,G_L,s_star,norm_diff,T_e,T_L,linear_bound_T", |l| {
                let r = timing(cli, l, &params)?;
                Ok(vec![format!(
                    "{l},{},{},{},{},{},{}",
                    sig12(r.g_l),
                    sig12(r.s_star),
                    sig12(r.norm_diff),
                    sig12(r.t_e),
                    sig12(r.t_l),
                    sig12(r.linear_bound_t)
                )])
            })
        }
        Command::NormCheck => per_l(cli, "L,norm,lower,upper,witness_value", |l| {
            let r = pagt_norm_check(l, cli.common.omega)?;
            Ok(vec![format!(
                "{l},{},{},{},{}",
                sig12(r.norm),
                sig12(r.lower),
                sig12(r.upper),
                sig12(r.witness_value)
            )])
        }),
        Command::Figure { name } => match name {
            Figure::GapProfiles => per_l(cli, "L,omega,s,gap,ground_energy", |l| profile_rows(cli, l)),
            Figure::MinGap => per_l(cli, "L,G_L,s_star", |l| {
                let r = timing(cli, l, &TimingParams::default())?;
                Ok(vec![format!("{l},{},{}", sig12(r.g_l), sig12(r.s_star))])
            }),
            Figure::TotalTime => per_l(cli, "L,T_e,T_L", |l| {
                let r = timing(cli, l, &TimingParams::default())?;
                Ok(vec![format!("{l},{},{}", sig12(r.t_e), sig12(r.t_l))])
            }),
        },
        Command::Scheme => scheme(cli),
        Command::Evolve { unitaries, phi, total_time, schedule, trace_stride } => {
            evolve(cli, unitaries, phi, total_time, *schedule, *trace_stride)
        }
    }
}

fn scheme(cli: &Cli) -> Outcome {
    let Some(path) = &cli.common.spec else {
        return Outcome::invalid("scheme needs --spec <path.json>".into());
    };
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::invalid(format!("--spec {}: {e}", path.display())),
    };
    let mut spec = match SchemeSpec::from_json(&text) {
        Ok(s) => s,
        Err(e) => return Outcome::invalid(e.to_string()),
    };
    if let Some(seed) = cli.common.seed {
        spec.seed = seed;
    }
    let report = match run_scheme(&spec) {
        Ok(r) => r,
        Err(e) => {
            let (kind, status) = classify(&e);
            return Outcome {
                body: None,
                status,
                errors: vec![error_record(kind, &e.to_string(), Some(json!({ "scheme": spec.scheme.name() })))],
            };
        }
    };
    let value = match report.to_json() {
        Ok(v) => v,
        Err(e) => return Outcome { body: None, status: EXIT_SOLVER, errors: vec![error_record("io", &e.to_string(), None)] },
    };
    let value = if cli.common.no_header_meta {
        value
    } else {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        let mut m = Map::new();
        m.insert("meta".into(), json!({ "version": env!("CARGO_PKG_VERSION"), "generated_unix": secs }));
        if let Value::Object(fields) = value {
            m.extend(fields);
        }
        Value::Object(m)
    };
    let mut body = serde_json::to_string_pretty(&value).expect("JSON values serialize");
    body.push('\n');
    Outcome { body: Some(body), status: report.verdict.exit_code(), errors: Vec::new() }
}

fn evolve(
    cli: &Cli,
    unitaries: &[String],
    phi: &str,
    total_time: &str,
    schedule: ScheduleArg,
    trace_stride: Option<usize>,
) -> Outcome {
    let total_time = match total_time {
        "auto" => TotalTime::Auto,
        t => match t.parse::<f64>() {
            Ok(x) if x > 0.0 && x.is_finite() => TotalTime::Fixed(x),
            _ => return Outcome::invalid(format!("--total-time must be `auto` or positive, got `{t}`")),
        },
    };
    if trace_stride == Some(0) {
        return Outcome::invalid("--trace-stride must be positive".into());
    }
    let gates: Vec<String> = if unitaries.is_empty() { vec!["I".into()] } else { unitaries.to_vec() };
    let columns = if trace_stride.is_some() {
        "L,t,s,fidelity,leakage,norm"
    } else {
        "L,T,schedule,fidelity,leakage,norm_drift,steps,dt"
    };
    per_l(cli, columns, |l| {
        let mut spec = SchemeSpec::new(SchemeId::Pagt);
        spec.omega = cli.common.omega;
        spec.s_step = cli.common.s_step.min(crate::spectral::timing::MAX_SPACING);
        spec.unitaries = (0..l).map(|k| UnitaryInput::Named(gates[k % gates.len()].clone())).collect();
        spec.phi = StateInput::named(phi);
        spec.total_time = total_time;
        spec.schedule = match schedule {
            ScheduleArg::GapAdapted => ScheduleKind::GapAdapted,
            ScheduleArg::Linear => ScheduleKind::Linear,
        };
        spec.trace_stride = trace_stride;
        spec.seed = cli.common.seed.unwrap_or(0);
        let r = run_scheme(&spec)?;
        let e = &r.evolution;
        if trace_stride.is_some() {
            return Ok(e
                .trace
                .iter()
                .map(|row| {
                    format!(
                        "{l},{},{},{},{},{}",
                        sig12(row.t),
                        sig12(row.s),
                        sig12(row.fidelity_to_target),
                        sig12(row.leakage),
                        sig12(row.norm)
                    )
                })
                .collect());
        }
        let mut row = String::new();
        write!(
            row,
            "{l},{},{},{},{},{},{},{}",
            sig12(r.total_time),
            r.schedule,
            sig12(r.fidelity),
            sig12(e.leakage.unwrap_or(f64::NAN)),
            sig12(e.norm_drift),
            e.steps,
            sig12(e.dt)
        )
        .expect("writing to a String");
        Ok(vec![row])
    })
}
