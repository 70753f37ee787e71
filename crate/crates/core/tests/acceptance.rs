// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Every check compares library output against an oracle computed here
//! from first principles. The process exits non-zero if any criterion
//! fails.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::time::Instant;

use nalgebra::{DMatrix, Matrix2, Matrix4};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pagt::evolution::{evolve_multiterm, EvolveOptions, PropagatorKind, Schedule, StepControl, TermSchedule};
use pagt::schemes::{
    analytic_target, run_scheme, wiring_for, SchemeId, SchemeReport, SchemeSpec, StateInput, Verdict,
};
use pagt::spectral::{
    default_grid, gap_profile, min_gap, off_sector_norm, pagt_norm_check, pat_hamiltonians, sufficient_time,
    to_spin_chain, EigenPolicy, TimingParams,
};
use pagt::{gate::vectorize, gate_hamiltonian, SingleQubitUnitary, StateVector};

const OMEGA: f64 = 0.5;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

struct Check {
    ok: bool,
    detail: String,
}

impl Check {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Self { ok, detail: detail.into() }
    }
}

/// Collects sub-checks; a criterion passes only if all of them do.
#[derive(Default)]
struct Criterion {
    checks: Vec<Check>,
}

impl Criterion {
    fn check(&mut self, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(ok, detail));
    }

    fn ok(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.ok)
    }
}

/// Least-squares slope of `ln y` against `ln x`.
fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

// Oracle gates, written out entry by entry.
fn m_x() -> Matrix2<Complex64> {
    Matrix2::new(c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.))
}
fn m_z() -> Matrix2<Complex64> {
    Matrix2::new(c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.))
}
fn m_h() -> Matrix2<Complex64> {
    let h = FRAC_1_SQRT_2;
    Matrix2::new(c(h, 0.), c(h, 0.), c(h, 0.), c(-h, 0.))
}
fn m_s() -> Matrix2<Complex64> {
    Matrix2::new(c(1., 0.), c(0., 0.), c(0., 0.), c(0., 1.))
}
fn m_t() -> Matrix2<Complex64> {
    Matrix2::new(c(1., 0.), c(0., 0.), c(0., 0.), Complex64::from_polar(1.0, PI / 4.0))
}
fn ket0() -> nalgebra::Vector2<Complex64> {
    nalgebra::Vector2::new(c(1., 0.), c(0., 0.))
}
fn ket_plus() -> nalgebra::Vector2<Complex64> {
    nalgebra::Vector2::new(c(FRAC_1_SQRT_2, 0.), c(FRAC_1_SQRT_2, 0.))
}

/// `<v|ρ|v>` for the reduced state of `psi` on `keep`.
fn reduced_overlap(psi: &StateVector, keep: &[usize], v: &[Complex64]) -> f64 {
    let rho = psi.reduced_density(keep).expect("reduced density");
    let v = nalgebra::DVector::from_column_slice(v);
    (v.adjoint() * rho * v)[(0, 0)].re
}

fn criterion_1() -> Criterion {
    let mut cr = Criterion::default();
    let grid = default_grid(0.01).unwrap();
    let p = gap_profile(1, OMEGA, &grid, &EigenPolicy::default()).unwrap();
    let worst = grid
        .iter()
        .zip(&p.gaps)
        .map(|(s, g)| (g - 4.0 * OMEGA * (1.0 - 3.0 * s + 3.0 * s * s).sqrt()).abs())
        .fold(0.0, f64::max);
    cr.check(grid.len() == 101 && worst <= 1e-8, format!("max |ΔE - 4ω√(1-3s+3s²)| = {worst:.2e} over {} points", grid.len()));
    let (s_star, g) = min_gap(&p).unwrap();
    cr.check((g - 2.0 * OMEGA).abs() <= 1e-8 && (s_star - 0.5).abs() < 1e-12, format!("min {g:.10} at s = {s_star}"));
    cr
}

struct Scaling {
    ls: Vec<f64>,
    g: Vec<f64>,
    s_star: Vec<f64>,
    t_e: Vec<f64>,
    t_l: Vec<f64>,
}

fn scaling_run() -> Scaling {
    let grid = default_grid(0.01).unwrap();
    let mut out = Scaling { ls: vec![], g: vec![], s_star: vec![], t_e: vec![], t_l: vec![] };
    for l in 1..=8 {
        let t0 = Instant::now();
        let p = gap_profile(l, OMEGA, &grid, &EigenPolicy::default()).unwrap();
        let r = sufficient_time(&p, &TimingParams::default()).unwrap();
        eprintln!("  L={l}: G={:.6} s*={} T_e={:.6} T_L={:.4} ({:.1}s)", r.g_l, r.s_star, r.t_e, r.t_l, t0.elapsed().as_secs_f64());
        out.ls.push(l as f64);
        out.g.push(r.g_l);
        out.s_star.push(r.s_star);
        out.t_e.push(r.t_e);
        out.t_l.push(r.t_l);
    }
    out
}

fn criterion_2(sc: &Scaling) -> Criterion {
    let mut cr = Criterion::default();
    let decreasing = sc.g.windows(2).all(|w| w[1] < w[0]);
    cr.check(decreasing, format!("G_L strictly decreasing: {:?}", sc.g.iter().map(|g| format!("{g:.4}")).collect::<Vec<_>>()));
    let at_half = sc.s_star.iter().all(|s| (s - 0.5).abs() < 1e-12);
    cr.check(at_half, format!("minimum at s = 0.50 for every L: {:?}", sc.s_star));
    let slope = log_log_slope(&sc.ls, &sc.g);
    cr.check((-1.3..=-0.8).contains(&slope), format!("log-log slope of G_L = {slope:.4}, window [-1.3, -0.8]"));
    cr
}

fn criterion_3(sc: &Scaling) -> Criterion {
    let mut cr = Criterion::default();
    // ∫₀¹ ds / (16ω²(1 - 3s + 3s²)) = 4π / (3√3 · 16ω²)
    let closed = 4.0 * PI / (3.0 * 3f64.sqrt() * 16.0 * OMEGA * OMEGA);
    let rel = (sc.t_e[0] - closed).abs() / closed;
    cr.check(rel < 1e-4, format!("L=1 T_e = {:.8} vs closed form {closed:.8} (rel {rel:.1e})", sc.t_e[0]));
    let se = log_log_slope(&sc.ls, &sc.t_e);
    cr.check((0.8..=1.3).contains(&se), format!("T_e slope = {se:.4}, window [0.8, 1.3]"));
    let sl = log_log_slope(&sc.ls, &sc.t_l);
    cr.check((1.6..=2.4).contains(&sl), format!("T_L slope = {sl:.4}, window [1.6, 2.4]"));
    cr
}

/// `<b|H_I(i,j)|b> = -ω (1 + z_i z_j)`: only `II` and `ZZ` are diagonal.
fn witness_oracle(l: usize, omega: f64) -> f64 {
    let n = 2 * l + 1;
    let bit = |q: usize| -> f64 { if q % 4 >= 2 { -1.0 } else { 1.0 } };
    let bond = |i: usize, j: usize| -omega * (1.0 + bit(i) * bit(j));
    let fin: f64 = (1..=l).map(|j| bond(2 * j - 2, 2 * j - 1)).sum();
    let ini: f64 = (1..=l).map(|j| bond(2 * j - 1, 2 * j)).sum();
    assert!(n >= 3);
    fin - ini
}

fn criterion_4() -> Criterion {
    let mut cr = Criterion::default();
    for l in 1..=8 {
        let nc = pagt_norm_check(l, OMEGA).unwrap();
        let lo = OMEGA * l as f64;
        let hi = 6.0 * OMEGA * l as f64;
        cr.check(lo <= nc.norm && nc.norm <= hi, format!("L={l}: {lo} <= ‖ΔH‖ = {:.9} <= {hi}", nc.norm));
        let oracle = witness_oracle(l, OMEGA);
        cr.check(
            (nc.witness_value - oracle).abs() < 1e-9,
            format!("L={l}: witness {:.9} agrees with diagonal oracle {oracle:.9}", nc.witness_value),
        );
        cr.check(
            (nc.witness_value - lo).abs() < 1e-9,
            format!("L={l}: witness {:.9} equals ωL = {lo}", nc.witness_value),
        );
    }
    cr
}

fn spec(scheme: SchemeId, unitaries: &[&str], phi: &str) -> SchemeSpec {
    SchemeSpec::new(scheme).with_unitaries(unitaries).with_phi(phi)
}

fn describe(r: &SchemeReport) -> String {
    format!(
        "fidelity {:.6} at T = {:.3} ({} steps, {:.1}s)",
        r.fidelity, r.total_time, r.evolution.steps, r.evolution.wall_time_s
    )
}

fn criterion_5() -> Criterion {
    let mut cr = Criterion::default();
    // (spec, expected output label, oracle output state)
    let cases: Vec<(&str, SchemeSpec, usize, nalgebra::Vector2<Complex64>)> = vec![
        ("AT", spec(SchemeId::At, &[], "+"), 3, ket_plus()),
        ("AGT(H)", spec(SchemeId::Agt, &["H"], "0"), 3, m_h() * ket0()),
        ("TRANS(S)", spec(SchemeId::Trans, &["S"], "+"), 2, m_s().transpose() * ket_plus()),
        ("CONJ(T)", spec(SchemeId::Conj, &["T"], "+"), 3, m_t().map(|z| z.conj()) * ket_plus()),
        ("DAGGER(S)", spec(SchemeId::Dagger, &["S"], "+"), 3, m_s().adjoint() * ket_plus()),
        ("PAGT(H,S)", spec(SchemeId::Pagt, &["H", "S"], "0"), 5, m_s() * m_h() * ket0()),
        ("PAGT_REORDERED(X,Z)", spec(SchemeId::PagtReordered, &["X", "Z"], "+"), 3, m_x() * m_z() * ket_plus()),
    ];
    for (name, sp, out, oracle) in cases {
        let r = run_scheme(&sp).unwrap();
        cr.check(r.fidelity >= 0.99, format!("{name}: {}", describe(&r)));
        let target_ok = r.output_qubit == out
            && (reduced_overlap(&r.target, &[out - 1], oracle.as_slice()) - 1.0).abs() < 1e-12;
        cr.check(target_ok, format!("{name}: target output on qubit {} matches the 2x2 oracle", r.output_qubit));
    }
    let std = analytic_target(&spec(SchemeId::Pagt, &["X", "Z"], "+")).unwrap();
    let re = analytic_target(&spec(SchemeId::PagtReordered, &["X", "Z"], "+")).unwrap();
    let cross = std.fidelity(&re).unwrap();
    cr.check(cross < 0.99, format!("standard vs reordered target cross-fidelity {cross:.6} < 0.99"));
    cr
}

fn qswitch(lag: Option<f64>) -> SchemeSpec {
    let mut s = spec(SchemeId::Qswitch, &["X", "Z"], "0");
    s.control = StateInput::named("+");
    if let Some(lag) = lag {
        s.term_lags.insert("F".into(), lag);
    }
    s
}

fn criterion_6() -> Criterion {
    let mut cr = Criterion::default();
    let r = run_scheme(&qswitch(None)).unwrap();
    // oracle on (C, out): (|0> GF|0> + |1> FG|0>)/√2 with F = X, G = Z
    let gf = m_z() * m_x() * ket0();
    let fg = m_x() * m_z() * ket0();
    let h = FRAC_1_SQRT_2;
    let oracle = [gf[0] * h, gf[1] * h, fg[0] * h, fg[1] * h];
    let out = r.output_qubit;
    let ov = reduced_overlap(&r.target, &[0, out], &oracle);
    cr.check((ov - 1.0).abs() < 1e-12, format!("target on (C, {out}) matches the oracle (overlap {ov:.12})"));
    cr.check(r.fidelity >= 0.99, format!("synchronized: {}", describe(&r)));
    let theta = r.branch_phase.unwrap_or(f64::NAN);
    cr.check(theta.abs() < 0.01, format!("synchronized branch phase {theta:.3e} rad, need |θ| < 0.01"));
    let d = run_scheme(&qswitch(Some(0.2))).unwrap();
    let theta = d.branch_phase.unwrap_or(f64::NAN);
    cr.check(theta.abs() > 0.1, format!("0.2·T lag on s_F: branch phase {theta:.4} rad, need |θ| > 0.1 ({})", describe(&d)));
    cr
}

fn criterion_7() -> Criterion {
    let mut cr = Criterion::default();
    let mut naive = spec(SchemeId::CtrlUNaive, &["X"], "0");
    naive.control = StateInput::named("+");
    let r = run_scheme(&naive).unwrap();
    let purity = r.purity.unwrap_or(f64::NAN);
    cr.check(purity < 0.95, format!("naive U=X: purity on (C, out) = {purity:.6} < 0.95 ({})", describe(&r)));
    // oracle: branches carry orthogonal ancillas |I>> vs |X>>, so the
    // (C, out) state is an equal mixture of |0>|0> and |1>X|0>
    cr.check((purity - 0.5).abs() < 0.05, format!("naive U=X purity near the mixed-state value 1/2: {purity:.6}"));
    cr.check(r.verdict == Verdict::DocumentedFailureConfirmed, format!("naive verdict {}", r.verdict.name()));
    let mut revised = spec(SchemeId::CtrlURevised, &["X"], "0");
    revised.control = StateInput::named("+");
    let r = run_scheme(&revised).unwrap();
    let g = r.block_gap.expect("block scan");
    cr.check(g.min_gap < 1e-6 && (g.s - 0.5).abs() <= 0.01, format!("revised U=X: block gap {:.2e} at s = {}", g.min_gap, g.s));
    // oracle: spectrum {-4ω(1-s), -4ωs, 0, 0} has gap 4ω|1 - 2s|
    let grid = default_grid(0.01).unwrap();
    let worst = grid
        .iter()
        .map(|&s| {
            let one = pagt::schemes::block_gap_scan(&SingleQubitUnitary::pauli_x(), OMEGA, &[s]).unwrap().min_gap;
            (one - 4.0 * OMEGA * (1.0 - 2.0 * s).abs()).abs()
        })
        .fold(0.0, f64::max);
    cr.check(worst < 1e-9, format!("block gap matches 4ω|1-2s| (max dev {worst:.1e})"));
    cr.check(r.verdict == Verdict::CrossingDetected, format!("revised verdict {}", r.verdict.name()));
    cr
}

fn criterion_8() -> Criterion {
    let mut cr = Criterion::default();
    let mut s = SchemeSpec::new(SchemeId::CtrlOrtho);
    s.unitaries = vec![pagt::unitary::UnitaryInput::Matrix([[[0., 0.], [-1., 0.]], [[1., 0.], [0., 0.]]])];
    s.control = StateInput::named("+");
    let r = run_scheme(&s).unwrap();
    // rotation by π/2: R|0> = |1>, so the target on (C, 5) is (|00> + |11>)/√2
    let h = FRAC_1_SQRT_2;
    let oracle = [c(h, 0.), c(0., 0.), c(0., 0.), c(h, 0.)];
    let ov = reduced_overlap(&r.target, &[0, r.output_qubit], &oracle);
    cr.check((ov - 1.0).abs() < 1e-12, format!("target on (C, {}) is (|00>+|11>)/√2 (overlap {ov:.12})", r.output_qubit));
    cr.check(r.fidelity >= 0.99, format!("rotation π/2: {}", describe(&r)));
    cr
}

fn haar_2x2(rng: &mut ChaCha8Rng) -> Matrix2<Complex64> {
    let g = Matrix2::from_fn(|_, _| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    g.qr().q()
}

fn random_2x2(rng: &mut ChaCha8Rng) -> Matrix2<Complex64> {
    Matrix2::from_fn(|_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

fn kron(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> Matrix4<Complex64> {
    Matrix4::from_fn(|r, col| a[(r / 2, col / 2)] * b[(r % 2, col % 2)])
}

fn dense_kron_all(factors: &[Matrix2<Complex64>]) -> DMatrix<Complex64> {
    let mut m = DMatrix::from_element(1, 1, c(1., 0.));
    for f in factors {
        let d = DMatrix::from_fn(2, 2, |r, col| f[(r, col)]);
        m = m.kronecker(&d);
    }
    m
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn criterion_9() -> Criterion {
    let mut cr = Criterion::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);

    // projector identity
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let u = SingleQubitUnitary::new(haar_2x2(&mut rng)).unwrap();
        let omega = rng.random_range(0.1..2.0);
        let (i, j) = if rng.random::<bool>() { (0, 1) } else { (1, 0) };
        let h = gate_hamiltonian(&u, i, j, omega, 2).unwrap().to_dense().unwrap();
        let p = h / c(-4.0 * omega, 0.0);
        worst = worst
            .max(max_abs(&(&p * &p - &p)))
            .max(max_abs(&(p.adjoint() - &p)))
            .max((p.trace() - c(1., 0.)).norm());
    }
    cr.check(worst < 1e-12, format!("50 gate Hamiltonians are -4ω P with P a rank-1 projector (max dev {worst:.1e})"));

    // matrix-representation identity
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let a = random_2x2(&mut rng);
        let b = random_2x2(&mut rng);
        let mut cm = random_2x2(&mut rng);
        let w: f64 = cm.iter().map(|z| z.norm_sqr()).sum();
        cm *= c((2.0 / w).sqrt(), 0.0);
        let lhs = kron(&a, &b.transpose()) * vectorize(&cm);
        let rhs = vectorize(&(a * cm * b));
        worst = worst.max((lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    cr.check(worst < 1e-12, format!("100 triples satisfy (A⊗Bᵀ)|C>> = |ACB>> (max dev {worst:.1e})"));

    // logical operators
    let mut worst = 0.0f64;
    for l in 1..=3 {
        let n = 2 * l + 1;
        let lx = dense_kron_all(&vec![m_x(); n]);
        let lz = dense_kron_all(&vec![m_z(); n]);
        let (ini, fin) = pat_hamiltonians(l, OMEGA).unwrap();
        for s in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let h = ini.interpolate(&fin, s).unwrap().to_dense().unwrap();
            for lop in [&lx, &lz] {
                worst = worst.max(max_abs(&(lop * &h - &h * lop)));
            }
        }
    }
    cr.check(worst < 1e-12, format!("[L_x, H(s)] = [L_z, H(s)] = 0 for L <= 3 (max entry {worst:.1e})"));

    // sector block structure
    let mut worst = 0.0f64;
    for l in 1..=5 {
        let (ini, fin) = pat_hamiltonians(l, OMEGA).unwrap();
        let chain = to_spin_chain(&ini, &fin).unwrap();
        for s in [0.0, 0.3, 0.5, 0.8, 1.0] {
            worst = worst.max(off_sector_norm(&chain.at(s).unwrap()));
        }
    }
    cr.check(worst < 1e-12, format!("J_z off-block norm of the chain Hamiltonian for n <= 11: {worst:.1e}"));

    // block decomposition of one controlled run
    let dev = block_decomposition_deviation();
    cr.check(dev < 1e-10, format!("switch run equals the sum of its two block evolutions (l2 dev {dev:.1e})"));
    cr
}

/// Evolves the switch register whole and block by block on identical steps.
fn block_decomposition_deviation() -> f64 {
    let mut s = spec(SchemeId::Qswitch, &["H", "T"], "+");
    s.control = StateInput::Amplitudes([[0.6, 0.0], [0.0, 0.8]]);
    let wiring = wiring_for(&s).unwrap();
    let terms = wiring.terms(OMEGA).unwrap();
    let names: Vec<String> = ["F", "G", "12", "34", "14", "25"].iter().map(|x| x.to_string()).collect();
    let sched = TermSchedule::uniform(names, &Schedule::linear(6.0).unwrap()).unwrap();
    // one doubling with a loose tolerance fixes the step sequence
    let options = EvolveOptions {
        control: StepControl { dt_max: 0.02, tol: 1.0, dt_min: 1e-3 },
        propagator: PropagatorKind::Dense,
        ..EvolveOptions::default()
    };
    let phi = StateVector::from_name("+").unwrap();
    let data = wiring.initial_data_state(&phi).unwrap();
    let (c0, c1) = (c(0.6, 0.0), c(0.0, 0.8));
    let full0 = pagt::schemes::controlled_superposition(c0, &data, c1, &data).unwrap();
    let whole = evolve_multiterm(&terms, &sched, &full0, &options).unwrap().final_state;
    let mut combined = vec![c(0., 0.); whole.dim()];
    for (b, cb) in [(0u8, c0), (1u8, c1)] {
        let block_terms: Vec<_> =
            terms.iter().map(|(h, w)| (h.control_block(0, b).unwrap(), w.clone())).collect();
        let start = if b == 0 {
            pagt::schemes::controlled_superposition(c(1., 0.), &data, c(0., 0.), &data).unwrap()
        } else {
            pagt::schemes::controlled_superposition(c(0., 0.), &data, c(1., 0.), &data).unwrap()
        };
        let end = evolve_multiterm(&block_terms, &sched, &start, &options).unwrap().final_state;
        for (acc, a) in combined.iter_mut().zip(end.amplitudes()) {
            *acc += cb * a;
        }
    }
    whole.amplitudes().iter().zip(&combined).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
}

fn main() {
    let started = Instant::now();
    let mut results: Vec<(usize, &str, Criterion)> = Vec::new();
    let mut run = |k: usize, title: &'static str, f: &dyn Fn() -> Criterion| {
        let t = Instant::now();
        let cr = f();
        eprintln!("  criterion {k} took {:.1}s", t.elapsed().as_secs_f64());
        results.push((k, title, cr));
    };
    run(1, "closed-form L=1 gap", &criterion_1);
    let sc = scaling_run();
    run(2, "gap scaling L=1..8", &|| criterion_2(&sc));
    run(3, "timing scaling L=1..8", &|| criterion_3(&sc));
    run(4, "norm sandwich and witness", &criterion_4);
    run(5, "scheme fidelities", &criterion_5);
    run(6, "quantum switch", &criterion_6);
    run(7, "failure modes", &criterion_7);
    run(8, "controlled orthogonal", &criterion_8);
    run(9, "property suites", &criterion_9);

    let mut failed = Vec::new();
    for (k, title, cr) in &results {
        let tag = if cr.ok() { "PASS" } else { "FAIL" };
        println!("{tag} criterion {k}: {title}");
        for ch in &cr.checks {
            println!("    [{}] {}", if ch.ok { "ok" } else { "FAILED" }, ch.detail);
        }
        if !cr.ok() {
            failed.push(*k);
        }
    }
    println!(
        "acceptance: {}/{} criteria pass in {:.0}s{}",
        results.len() - failed.len(),
        results.len(),
        started.elapsed().as_secs_f64(),
        if failed.is_empty() { String::new() } else { format!("; failing: {failed:?}") }
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
