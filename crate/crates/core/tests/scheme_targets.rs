// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Analytic scheme targets against hand-assembled state vectors.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{DVector, Matrix2, Vector2};
use num_complex::Complex64;

use pagt::schemes::{analytic_target, run_scheme, SchemeId, SchemeSpec, StateInput, Verdict};
use pagt::unitary::UnitaryInput;
use pagt::StateVector;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `Rz(a) Ry(b) Rz(d)` written out entry by entry.
fn euler(a: f64, b: f64, d: f64) -> Matrix2<Complex64> {
    let (s, co) = (b / 2.0).sin_cos();
    let p = |x: f64| Complex64::from_polar(1.0, x);
    Matrix2::new(
        p(-(a + d) / 2.0) * co,
        -p(-(a - d) / 2.0) * s,
        p((a - d) / 2.0) * s,
        p((a + d) / 2.0) * co,
    )
}

fn matrix_input(m: &Matrix2<Complex64>) -> UnitaryInput {
    let e = |r: usize, col: usize| [m[(r, col)].re, m[(r, col)].im];
    UnitaryInput::Matrix([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
}

fn phi() -> Vector2<Complex64> {
    Vector2::new(c(0.6, 0.0), c(0.0, 0.8))
}

fn spec(scheme: SchemeId, gates: &[Matrix2<Complex64>]) -> SchemeSpec {
    let mut s = SchemeSpec::new(scheme);
    s.unitaries = gates.iter().map(matrix_input).collect();
    s.phi = StateInput::Amplitudes([[0.6, 0.0], [0.0, 0.8]]);
    s
}

/// Amplitude of basis index `b` with qubit groups drawn from `parts`.
fn assemble(n: usize, parts: &[(Vec<usize>, Vec<Complex64>)]) -> Vec<Complex64> {
    (0..1usize << n)
        .map(|b| {
            parts.iter().fold(c(1.0, 0.0), |acc, (qs, v)| {
                let local = qs.iter().fold(0, |i, &q| (i << 1) | ((b >> (n - 1 - q)) & 1));
                acc * v[local]
            })
        })
        .collect()
}

fn bell() -> Vec<Complex64> {
    vec![c(FRAC_1_SQRT_2, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(FRAC_1_SQRT_2, 0.0)]
}

/// `(A ⊗ I)|Φ+>` for a 2x2 `A` acting on the first qubit of the pair.
fn twisted_bell_first(a: &Matrix2<Complex64>) -> Vec<Complex64> {
    let h = FRAC_1_SQRT_2;
    vec![a[(0, 0)] * h, a[(0, 1)] * h, a[(1, 0)] * h, a[(1, 1)] * h]
}

/// `(I ⊗ A)|Φ+>`.
fn twisted_bell_second(a: &Matrix2<Complex64>) -> Vec<Complex64> {
    let h = FRAC_1_SQRT_2;
    vec![a[(0, 0)] * h, a[(1, 0)] * h, a[(0, 1)] * h, a[(1, 1)] * h]
}

fn v(x: Vector2<Complex64>) -> Vec<Complex64> {
    vec![x[0], x[1]]
}

fn overlap(target: &StateVector, oracle: &[Complex64]) -> f64 {
    target.amplitudes().iter().zip(oracle).map(|(a, b)| b.conj() * a).sum::<Complex64>().norm_sqr()
}

/// `<w|ρ|w>` for the reduced state on `keep`.
fn reduced_overlap(psi: &StateVector, keep: &[usize], w: &[Complex64]) -> f64 {
    let rho = psi.reduced_density(keep).unwrap();
    let w = DVector::from_column_slice(w);
    (w.adjoint() * rho * w)[(0, 0)].re
}

/// `c0|0>a + c1|1>b` on (control, output).
fn controlled(c0: Complex64, a: Vector2<Complex64>, c1: Complex64, b: Vector2<Complex64>) -> Vec<Complex64> {
    vec![c0 * a[0], c0 * a[1], c1 * b[0], c1 * b[1]]
}

const EXACT: f64 = 1.0 - 1e-10;

#[test]
fn agt_output_carries_u_phi() {
    let u = euler(0.3, 1.1, -0.7);
    let t = analytic_target(&spec(SchemeId::Agt, &[u])).unwrap();
    let oracle = assemble(3, &[(vec![0, 1], bell()), (vec![2], v(u * phi()))]);
    assert!(overlap(&t, &oracle) > EXACT);
}

#[test]
fn trans_output_carries_u_transpose_phi_on_qubit_2() {
    let u = euler(0.3, 1.1, -0.7);
    let t = analytic_target(&spec(SchemeId::Trans, &[u])).unwrap();
    let oracle = assemble(3, &[(vec![0, 2], bell()), (vec![1], v(u.transpose() * phi()))]);
    assert!(overlap(&t, &oracle) > EXACT);
}

#[test]
fn conj_output_carries_u_conjugate_phi() {
    let u = euler(-1.2, 0.4, 2.0);
    let t = analytic_target(&spec(SchemeId::Conj, &[u])).unwrap();
    let oracle = assemble(3, &[(vec![0, 1], twisted_bell_second(&u)), (vec![2], v(u.conjugate() * phi()))]);
    assert!(overlap(&t, &oracle) > EXACT);
}

#[test]
fn dagger_output_carries_u_adjoint_phi() {
    let u = euler(-1.2, 0.4, 2.0);
    let t = analytic_target(&spec(SchemeId::Dagger, &[u])).unwrap();
    let oracle = assemble(3, &[(vec![0, 1], twisted_bell_first(&u)), (vec![2], v(u.adjoint() * phi()))]);
    assert!(overlap(&t, &oracle) > EXACT);
}

#[test]
fn pagt_output_carries_the_ordered_product() {
    let u1 = euler(0.3, 1.1, -0.7);
    let u2 = euler(2.1, -0.5, 0.9);
    let u3 = euler(-0.4, 2.6, 0.1);
    let t = analytic_target(&spec(SchemeId::Pagt, &[u1, u2, u3])).unwrap();
    let oracle = assemble(
        7,
        &[(vec![0, 1], bell()), (vec![2, 3], bell()), (vec![4, 5], bell()), (vec![6], v(u3 * u2 * u1 * phi()))],
    );
    assert!(overlap(&t, &oracle) > EXACT);
}

#[test]
fn switch_orders_follow_the_control() {
    let f = euler(0.3, 1.1, -0.7);
    let g = euler(2.1, -0.5, 0.9);
    let t = analytic_target(&spec(SchemeId::Qswitch, &[f, g])).unwrap();
    let h = c(FRAC_1_SQRT_2, 0.0);
    let w = controlled(h, g * f * phi(), h, f * g * phi());
    assert!(reduced_overlap(&t, &[0, 5], &w) > EXACT);
}

#[test]
fn ut_udag_applies_the_product_on_the_one_branch() {
    let u = euler(0.3, 1.1, -0.7);
    let t = analytic_target(&spec(SchemeId::CtrlUtUdag, &[u])).unwrap();
    let h = c(FRAC_1_SQRT_2, 0.0);
    let w = controlled(h, phi(), h, u.transpose() * u.adjoint() * phi());
    assert!(reduced_overlap(&t, &[0, 5], &w) > EXACT);
}

#[test]
fn ut_udag_of_ry_is_ry_of_minus_twice_the_angle() {
    let theta = 0.9_f64;
    let mut s = SchemeSpec::new(SchemeId::CtrlUtUdag).with_unitaries(&["Ry(0.9)"]).with_total_time(0.5);
    s.phi = StateInput::Amplitudes([[0.6, 0.0], [0.0, 0.8]]);
    let r = run_scheme(&s).unwrap();
    let (sn, cs) = (-theta).sin_cos();
    let expected = [[[cs, 0.0], [-sn, 0.0]], [[sn, 0.0], [cs, 0.0]]];
    match &r.branch_gates[1] {
        UnitaryInput::Matrix(m) => {
            for (row, erow) in m.iter().zip(&expected) {
                for (x, e) in row.iter().zip(erow) {
                    assert!((x[0] - e[0]).abs() < 1e-9 && (x[1] - e[1]).abs() < 1e-9, "{m:?}");
                }
            }
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn ut_udag_of_a_diagonal_gate_is_a_controlled_identity() {
    let t = analytic_target(&SchemeSpec::new(SchemeId::CtrlUtUdag).with_unitaries(&["S"]).with_phi("+i")).unwrap();
    let plus_i = Vector2::new(c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2));
    let h = c(FRAC_1_SQRT_2, 0.0);
    assert!(reduced_overlap(&t, &[0, 5], &controlled(h, plus_i, h, plus_i)) > EXACT);
}

#[test]
fn orthogonal_rotation_is_controlled_on_the_output() {
    let (s, co) = 0.7f64.sin_cos();
    let o = Matrix2::new(c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0));
    let t = analytic_target(&spec(SchemeId::CtrlOrtho, &[o])).unwrap();
    let h = c(FRAC_1_SQRT_2, 0.0);
    assert!(reduced_overlap(&t, &[0, 5], &controlled(h, phi(), h, o * phi())) > EXACT);
}

#[test]
fn naive_control_purity_follows_the_ancilla_overlap() {
    // branch ancillas |I>> and |U>> overlap by tr(U)/2
    for (name, tr_half) in [("X", 0.0), ("Z", 0.0), ("S", FRAC_1_SQRT_2), ("Ry(1.0)", 0.5f64.cos())] {
        let s = SchemeSpec::new(SchemeId::CtrlUNaive).with_unitaries(&[name]);
        let t = analytic_target(&s).unwrap();
        let purity = t.reduced_purity(&[0, 3]).unwrap();
        let expected = (1.0 + tr_half * tr_half) / 2.0;
        assert!((purity - expected).abs() < 1e-10, "{name}: {purity} vs {expected}");
    }
}

#[test]
fn reordered_pairing_moves_the_output() {
    let u = [euler(0.3, 1.1, -0.7), euler(2.1, -0.5, 0.9)];
    let mut s = spec(SchemeId::PagtReordered, &u);
    s.pairing = Some(vec![[1, 4], [2, 5]]);
    let t = analytic_target(&s).unwrap();
    let out = (0..5)
        .find(|&q| {
            let rho = t.reduced_density(&[q]).unwrap();
            (&rho * &rho).trace().re > 1.0 - 1e-10
        })
        .expect("a pure output qubit");
    assert_eq!(out, 2);
}

#[test]
fn short_runs_fail_and_long_runs_pass() {
    let fast = run_scheme(&SchemeSpec::new(SchemeId::Agt).with_unitaries(&["H"]).with_total_time(0.5)).unwrap();
    assert_eq!(fast.verdict, Verdict::Fail);
    assert_eq!(fast.decide(), fast.verdict);
    let slow = run_scheme(&SchemeSpec::new(SchemeId::Agt).with_unitaries(&["H"])).unwrap();
    assert_eq!(slow.verdict, Verdict::Pass);
    assert!(slow.fidelity >= 0.99);
}
