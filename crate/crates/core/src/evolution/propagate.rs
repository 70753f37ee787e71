// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Piecewise-constant midpoint propagation with global step doubling.

use std::time::Instant;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use super::expm::{expm_dense, expm_krylov};
use super::schedule::{Schedule, TermSchedule, Weight};
use crate::error::{Error, Result};
use crate::operator::OperatorSum;
use crate::sparse::Csr;
use crate::state::StateVector;

/// Registers up to this dimension use dense Padé exponentials under
/// [`PropagatorKind::Auto`]; Lanczos is faster from three qubits on.
pub const AUTO_DENSE_LIMIT: usize = 16;

/// Largest dimension for which ground-space leakage is evaluated.
pub const LEAKAGE_LIMIT: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StepControl {
    /// Initial (coarsest) step.
    pub dt_max: f64,
    /// Accept when doubling the step count changes the final state by less
    /// than this in l2.
    pub tol: f64,
    /// Abort once the step would drop below this.
    pub dt_min: f64,
}

impl Default for StepControl {
    fn default() -> Self {
        Self { dt_max: 0.05, tol: 1e-6, dt_min: 1e-5 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropagatorKind {
    /// Dense up to [`AUTO_DENSE_LIMIT`], Krylov above.
    Auto,
    Dense,
    Krylov,
}

#[derive(Clone, Debug)]
pub struct EvolveOptions {
    pub control: StepControl,
    pub propagator: PropagatorKind,
    /// State the fidelity is measured against.
    pub target: Option<StateVector>,
    /// Record a trace row every `stride` steps of the accepted run.
    pub trace_stride: Option<usize>,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self { control: StepControl::default(), propagator: PropagatorKind::Auto, target: None, trace_stride: None }
    }
}

impl EvolveOptions {
    pub fn with_target(target: StateVector) -> Self {
        Self { target: Some(target), ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceRow {
    pub t: f64,
    pub s: f64,
    pub fidelity_to_target: f64,
    pub leakage: f64,
    pub norm: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvolutionReport {
    #[serde(skip)]
    pub final_state: StateVector,
    /// `|<target|ψ(T)>|²`, when a target was given.
    pub fidelity: Option<f64>,
    /// `1 - ‖P_ground ψ(T)‖²` for the ground space of `H(T)`.
    pub leakage: Option<f64>,
    /// `|‖ψ(T)‖ - 1|` before renormalization.
    pub norm_drift: f64,
    pub total_time: f64,
    pub steps: usize,
    pub dt: f64,
    pub refinements: usize,
    /// l2 change between the last two step counts.
    pub final_change: f64,
    pub wall_time_s: f64,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub trace: Vec<TraceRow>,
}

enum Parts {
    Dense(Vec<DMatrix<Complex64>>),
    Sparse(Vec<Csr<Complex64>>),
}

/// `H(t) = Σ_k w_k(t) H_k` ready for propagation.
struct Drive<'a> {
    parts: Parts,
    weights: &'a [Weight],
    schedule: &'a TermSchedule,
    /// Component reported as `s` in traces; `t/T` when absent.
    s_component: Option<&'a str>,
    dim: usize,
}

impl<'a> Drive<'a> {
    fn new(
        terms: &[(OperatorSum, Weight)],
        weights: &'a [Weight],
        schedule: &'a TermSchedule,
        s_component: Option<&'a str>,
        kind: PropagatorKind,
    ) -> Result<Self> {
        let dim = terms[0].0.dim();
        let dense = match kind {
            PropagatorKind::Dense => true,
            PropagatorKind::Krylov => false,
            PropagatorKind::Auto => dim <= AUTO_DENSE_LIMIT,
        };
        let parts = if dense {
            Parts::Dense(terms.iter().map(|(h, _)| h.to_dense()).collect::<Result<_>>()?)
        } else {
            Parts::Sparse(terms.iter().map(|(h, _)| h.to_sparse()).collect())
        };
        Ok(Self { parts, weights, schedule, s_component, dim })
    }

    fn coefficients(&self, t: f64) -> Vec<f64> {
        self.weights
            .iter()
            .map(|w| self.schedule.weight(w, t).expect("weights validated against the schedule"))
            .collect()
    }

    fn s(&self, t: f64) -> f64 {
        match self.s_component {
            Some(name) => self.schedule.component(name).expect("validated").s(t),
            None => t / self.schedule.total_time(),
        }
    }

    fn dense_at(&self, t: f64) -> Result<DMatrix<Complex64>> {
        let coeffs = self.coefficients(t);
        match &self.parts {
            Parts::Dense(ms) => Ok(ms.iter().zip(&coeffs).fold(
                DMatrix::zeros(self.dim, self.dim),
                |acc, (m, &w)| acc + m * Complex64::new(w, 0.0),
            )),
            Parts::Sparse(ms) => {
                let mut out = DMatrix::zeros(self.dim, self.dim);
                for (m, &w) in ms.iter().zip(&coeffs) {
                    for r in 0..self.dim {
                        for (c, v) in m.row(r) {
                            out[(r, c)] += v * w;
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    fn step(&self, psi: &[Complex64], t_mid: f64, dt: f64) -> Vec<Complex64> {
        let coeffs = self.coefficients(t_mid);
        match &self.parts {
            Parts::Dense(ms) => {
                let h = ms.iter().zip(&coeffs).fold(DMatrix::zeros(self.dim, self.dim), |acc, (m, &w)| {
                    acc + m * Complex64::new(w, 0.0)
                });
                let u = expm_dense(&h, dt);
                (u * DVector::from_column_slice(psi)).iter().copied().collect()
            }
            Parts::Sparse(ms) => {
                let apply = |x: &[Complex64], y: &mut [Complex64]| {
                    y.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
                    for (m, &w) in ms.iter().zip(&coeffs) {
                        if w != 0.0 {
                            m.apply_scaled_add(Complex64::new(w, 0.0), x, y);
                        }
                    }
                };
                expm_krylov(&apply, psi, dt)
            }
        }
    }

    fn run(
        &self,
        psi0: &[Complex64],
        n_steps: usize,
        trace: Option<(usize, Option<&StateVector>)>,
    ) -> Result<(Vec<Complex64>, Vec<TraceRow>)> {
        let total = self.schedule.total_time();
        let dt = total / n_steps as f64;
        let mut psi = psi0.to_vec();
        let mut rows = Vec::new();
        let mut record = |k: usize, psi: &[Complex64]| -> Result<()> {
            if let Some((stride, target)) = trace {
                if k.is_multiple_of(stride) || k == n_steps {
                    let t = k as f64 * dt;
                    rows.push(self.trace_row(t, psi, target)?);
                }
            }
            Ok(())
        };
        record(0, &psi)?;
        for k in 0..n_steps {
            psi = self.step(&psi, (k as f64 + 0.5) * dt, dt);
            record(k + 1, &psi)?;
        }
        Ok((psi, rows))
    }

    fn trace_row(&self, t: f64, psi: &[Complex64], target: Option<&StateVector>) -> Result<TraceRow> {
        let norm = psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let fidelity_to_target = target.map_or(f64::NAN, |tgt| {
            tgt.amplitudes().iter().zip(psi).map(|(a, b)| a.conj() * b).sum::<Complex64>().norm_sqr()
        });
        let leakage = if self.dim <= LEAKAGE_LIMIT {
            ground_leakage(&self.dense_at(t)?, psi)
        } else {
            f64::NAN
        };
        Ok(TraceRow { t, s: self.s(t), fidelity_to_target, leakage, norm })
    }
}

/// `1 - ‖P ψ‖²` with `P` the projector on the (possibly degenerate) ground
/// space of the dense Hermitian `h`.
pub fn ground_leakage(h: &DMatrix<Complex64>, psi: &[Complex64]) -> f64 {
    let eig = SymmetricEigen::new(h.clone());
    let e0 = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let scale = 1.0 + eig.eigenvalues.iter().fold(0.0f64, |m, e| m.max(e.abs()));
    let v = DVector::from_column_slice(psi);
    let norm_sq = v.norm_squared();
    let captured: f64 = (0..eig.eigenvalues.len())
        .filter(|&k| eig.eigenvalues[k] - e0 < 1e-8 * scale)
        .map(|k| eig.eigenvectors.column(k).dotc(&v).norm_sqr())
        .sum();
    (1.0 - captured / norm_sq).clamp(0.0, 1.0)
}

fn check_terms(terms: &[(OperatorSum, Weight)], schedule: &TermSchedule, psi0: &StateVector) -> Result<()> {
    let Some((first, _)) = terms.first() else {
        return Err(Error::InvalidInput("no Hamiltonian terms".into()));
    };
    for (h, w) in terms {
        if h.n_qubits() != psi0.n_qubits() {
            return Err(Error::QubitCountMismatch { left: h.n_qubits(), right: psi0.n_qubits() });
        }
        if h.n_qubits() != first.n_qubits() {
            return Err(Error::QubitCountMismatch { left: h.n_qubits(), right: first.n_qubits() });
        }
        schedule.weight(w, 0.0)?;
    }
    Ok(())
}

/// `H(t) = (1 - s(t)) H_ini + s(t) H_fin`.
pub fn evolve(
    h_ini: &OperatorSum,
    h_fin: &OperatorSum,
    schedule: &Schedule,
    psi0: &StateVector,
    options: &EvolveOptions,
) -> Result<EvolutionReport> {
    let ts = TermSchedule::uniform(["s"], schedule)?;
    let terms = [
        (h_ini.clone(), Weight::Falling("s".into())),
        (h_fin.clone(), Weight::Rising("s".into())),
    ];
    run(&terms, &ts, psi0, options, Some("s"))
}

/// `H(t) = Σ_k w_k(t) H_k` with per-term weights drawn from `schedule`.
pub fn evolve_multiterm(
    terms: &[(OperatorSum, Weight)],
    schedule: &TermSchedule,
    psi0: &StateVector,
    options: &EvolveOptions,
) -> Result<EvolutionReport> {
    run(terms, schedule, psi0, options, None)
}

/// One propagation with a fixed number of equal midpoint steps, for
/// convergence studies.
pub fn propagate_fixed(
    h_ini: &OperatorSum,
    h_fin: &OperatorSum,
    schedule: &Schedule,
    psi0: &StateVector,
    n_steps: usize,
    kind: PropagatorKind,
) -> Result<Vec<Complex64>> {
    let ts = TermSchedule::uniform(["s"], schedule)?;
    let terms = [
        (h_ini.clone(), Weight::Falling("s".into())),
        (h_fin.clone(), Weight::Rising("s".into())),
    ];
    check_terms(&terms, &ts, psi0)?;
    let weights: Vec<Weight> = terms.iter().map(|(_, w)| w.clone()).collect();
    let drive = Drive::new(&terms, &weights, &ts, Some("s"), kind)?;
    Ok(drive.run(psi0.amplitudes(), n_steps.max(1), None)?.0)
}

fn l2(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

fn run(
    terms: &[(OperatorSum, Weight)],
    schedule: &TermSchedule,
    psi0: &StateVector,
    options: &EvolveOptions,
    s_component: Option<&str>,
) -> Result<EvolutionReport> {
    let started = Instant::now();
    check_terms(terms, schedule, psi0)?;
    if let Some(target) = &options.target {
        if target.n_qubits() != psi0.n_qubits() {
            return Err(Error::QubitCountMismatch { left: target.n_qubits(), right: psi0.n_qubits() });
        }
    }
    let control = options.control;
    if !(control.dt_max > 0.0 && control.tol > 0.0 && control.dt_min > 0.0) {
        return Err(Error::InvalidInput(format!("invalid step control {control:?}")));
    }
    let weights: Vec<Weight> = terms.iter().map(|(_, w)| w.clone()).collect();
    let drive = Drive::new(terms, &weights, schedule, s_component, options.propagator)?;
    let total = schedule.total_time();
    let trace = options.trace_stride.map(|k| (k.max(1), options.target.as_ref()));

    let mut n = ((total / control.dt_max).ceil() as usize).max(1);
    let (mut prev, _) = drive.run(psi0.amplitudes(), n, None)?;
    let mut refinements = 0;
    let (psi, rows, change) = loop {
        let n2 = 2 * n;
        let dt = total / n2 as f64;
        let (cur, rows) = drive.run(psi0.amplitudes(), n2, trace)?;
        let change = l2(&cur, &prev);
        refinements += 1;
        n = n2;
        if change < control.tol {
            break (cur, rows, change);
        }
        if dt / 2.0 < control.dt_min {
            return Err(Error::StepControl { dt, change, tol: control.tol });
        }
        prev = cur;
    };

    let norm = psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let final_state = StateVector::normalized(psi0.n_qubits(), psi)?;
    let fidelity = options.target.as_ref().map(|t| t.fidelity(&final_state)).transpose()?;
    let leakage = if drive.dim <= LEAKAGE_LIMIT {
        Some(ground_leakage(&drive.dense_at(total)?, final_state.amplitudes()))
    } else {
        None
    };
    let mut warnings = Vec::new();
    if (norm - 1.0).abs() > 1e-8 {
        warnings.push(format!("norm drift {:.3e} exceeds 1e-8", (norm - 1.0).abs()));
    }
    Ok(EvolutionReport {
        final_state,
        fidelity,
        leakage,
        norm_drift: (norm - 1.0).abs(),
        total_time: total,
        steps: n,
        dt: total / n as f64,
        refinements,
        final_change: change,
        wall_time_s: started.elapsed().as_secs_f64(),
        warnings,
        trace: rows,
    })
}

/// Writes trace rows as `t,s,fidelity_to_target,leakage,norm`.
pub fn trace_csv(rows: &[TraceRow]) -> String {
    let mut out = String::from("t,s,fidelity_to_target,leakage,norm\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            crate::cli::format::sig12(r.t),
            crate::cli::format::sig12(r.s),
            crate::cli::format::sig12(r.fidelity_to_target),
            crate::cli::format::sig12(r.leakage),
            crate::cli::format::sig12(r.norm)
        ));
    }
    out
}
