// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Hermitian Pauli sums with dense and sparse materialization.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{basis_action, Pauli, PauliString, MAX_QUBITS};
use crate::sparse::Csr;
use crate::unitary::SingleQubitUnitary;

/// Largest dimension [`OperatorSum::to_dense`] will materialize.
pub const DENSE_LIMIT: usize = 1 << 12;

/// Register size up to which [`OperatorSum::from_dense`] expands a matrix.
pub const EXPANSION_LIMIT: usize = 8;

/// Coefficients below this magnitude are dropped during canonicalization.
pub const CHOP: f64 = 1e-14;

/// A sum of real-weighted Pauli strings on a fixed register.
///
/// Terms are keyed by their `(flip, sign)` bit masks, so duplicates merge on
/// insertion and iteration order is deterministic.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSum {
    n_qubits: usize,
    terms: BTreeMap<(usize, usize), f64>,
}

impl OperatorSum {
    pub fn zero(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::InvalidInput(format!(
                "register size {n_qubits} outside 1..={MAX_QUBITS}"
            )));
        }
        Ok(Self { n_qubits, terms: BTreeMap::new() })
    }

    pub fn identity(n_qubits: usize, coefficient: f64) -> Result<Self> {
        let mut op = Self::zero(n_qubits)?;
        op.insert(0, 0, coefficient);
        Ok(op)
    }

    pub fn from_terms(n_qubits: usize, terms: impl IntoIterator<Item = PauliString>) -> Result<Self> {
        let mut op = Self::zero(n_qubits)?;
        for t in terms {
            op.add_term(&t)?;
        }
        Ok(op)
    }

    /// Shorthand for a single term; panics only on invalid qubit indices.
    pub fn single(
        n_qubits: usize,
        coefficient: f64,
        factors: impl IntoIterator<Item = (usize, Pauli)>,
    ) -> Result<Self> {
        Self::from_terms(n_qubits, [PauliString::new(coefficient, n_qubits, factors)?])
    }

    pub fn add_term(&mut self, term: &PauliString) -> Result<()> {
        if term.n_qubits() != self.n_qubits {
            return Err(Error::QubitCountMismatch { left: self.n_qubits, right: term.n_qubits() });
        }
        let (flip, sign, _) = term.masks();
        self.insert(flip, sign, term.coefficient());
        Ok(())
    }

    fn insert(&mut self, flip: usize, sign: usize, coefficient: f64) {
        let entry = self.terms.entry((flip, sign)).or_insert(0.0);
        *entry += coefficient;
        if entry.abs() < CHOP {
            self.terms.remove(&(flip, sign));
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1usize << self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn key_to_string(&self, flip: usize, sign: usize, coefficient: f64) -> PauliString {
        let n = self.n_qubits;
        let factors = (0..n).filter_map(|q| {
            let bit = 1usize << (n - 1 - q);
            match (flip & bit != 0, sign & bit != 0) {
                (true, true) => Some((q, Pauli::Y)),
                (true, false) => Some((q, Pauli::X)),
                (false, true) => Some((q, Pauli::Z)),
                (false, false) => None,
            }
        });
        PauliString::new(coefficient, n, factors).expect("masks stay inside the register")
    }

    /// Canonical terms in deterministic order.
    pub fn terms(&self) -> Vec<PauliString> {
        self.terms.iter().map(|(&(f, s), &c)| self.key_to_string(f, s, c)).collect()
    }

    /// Coefficient of the Pauli string with the factors of `term` (its own
    /// coefficient is ignored).
    pub fn coefficient_of(&self, term: &PauliString) -> f64 {
        let (flip, sign, _) = term.masks();
        self.terms.get(&(flip, sign)).copied().unwrap_or(0.0)
    }

    pub fn identity_coefficient(&self) -> f64 {
        self.terms.get(&(0, 0)).copied().unwrap_or(0.0)
    }

    pub fn without_identity(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&(0, 0));
        out
    }

    /// Qubits touched by at least one term.
    pub fn support(&self) -> Vec<usize> {
        let mask = self.terms.keys().fold(0usize, |m, &(f, s)| m | f | s);
        (0..self.n_qubits).filter(|q| mask & (1 << (self.n_qubits - 1 - q)) != 0).collect()
    }

    fn check_same_register(&self, other: &Self) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::QubitCountMismatch { left: self.n_qubits, right: other.n_qubits });
        }
        Ok(())
    }

    /// `self + weight * other`.
    pub fn add_scaled(&self, other: &Self, weight: f64) -> Result<Self> {
        self.check_same_register(other)?;
        let mut out = self.clone();
        for (&(f, s), &c) in &other.terms {
            out.insert(f, s, weight * c);
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = Self { n_qubits: self.n_qubits, terms: BTreeMap::new() };
        for (&(f, s), &c) in &self.terms {
            out.insert(f, s, factor * c);
        }
        out
    }

    /// `(1 - s) self + s other`.
    pub fn interpolate(&self, other: &Self, s: f64) -> Result<Self> {
        self.scaled(1.0 - s).add_scaled(other, s)
    }

    /// `|value><value|_ctrl ⊗ self`, written as `(self ± Z_ctrl self) / 2`.
    pub fn controlled(&self, ctrl: usize, value: u8) -> Result<Self> {
        self.check_qubit(ctrl)?;
        if value > 1 {
            return Err(Error::InvalidInput(format!("control value {value} is not 0 or 1")));
        }
        let bit = 1usize << (self.n_qubits - 1 - ctrl);
        if self.terms.keys().any(|&(f, s)| (f | s) & bit != 0) {
            return Err(Error::OverlappingQubits(vec![ctrl]));
        }
        let sign = if value == 0 { 0.5 } else { -0.5 };
        let mut out = Self { n_qubits: self.n_qubits, terms: BTreeMap::new() };
        for (&(f, s), &c) in &self.terms {
            out.insert(f, s, 0.5 * c);
            out.insert(f, s | bit, sign * c);
        }
        Ok(out)
    }

    /// The block acting on the `ctrl = value` subspace, obtained by
    /// substituting `Z_ctrl -> ±1`. Fails if any term flips the control.
    pub fn control_block(&self, ctrl: usize, value: u8) -> Result<Self> {
        self.check_qubit(ctrl)?;
        let bit = 1usize << (self.n_qubits - 1 - ctrl);
        let mut out = Self { n_qubits: self.n_qubits, terms: BTreeMap::new() };
        for (&(f, s), &c) in &self.terms {
            if f & bit != 0 {
                return Err(Error::UnexpectedForm(format!(
                    "term flips control qubit {ctrl}; operator is not block diagonal"
                )));
            }
            let c = if s & bit != 0 && value == 1 { -c } else { c };
            out.insert(f, s & !bit, c);
        }
        Ok(out)
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits {
            return Err(Error::QubitOutOfRange { index: q, n_qubits: self.n_qubits });
        }
        Ok(())
    }

    fn term_masks(&self) -> Vec<(usize, usize, u32, f64)> {
        self.terms
            .iter()
            .map(|(&(f, s), &c)| (f, s, (f & s).count_ones(), c))
            .collect()
    }

    /// `y = H x` without materializing.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim(), "vector length must match the register");
        let mut y = vec![Complex64::new(0.0, 0.0); x.len()];
        for (f, s, ny, c) in self.term_masks() {
            for (b, &xb) in x.iter().enumerate() {
                let (out, phase) = basis_action(b, f, s, ny);
                y[out] += phase * c * xb;
            }
        }
        y
    }

    /// `<x|H|x>`, real for Hermitian `H`.
    pub fn expectation(&self, x: &[Complex64]) -> f64 {
        let hx = self.apply(x);
        x.iter().zip(&hx).map(|(a, b)| (a.conj() * b).re).sum()
    }

    pub fn to_sparse(&self) -> Csr<Complex64> {
        let masks = self.term_masks();
        let dim = self.dim();
        let mut triplets = Vec::with_capacity(masks.len() * dim);
        for b in 0..dim {
            for &(f, s, ny, c) in &masks {
                let (out, phase) = basis_action(b, f, s, ny);
                triplets.push((out, b, phase * c));
            }
        }
        Csr::from_triplets(dim, triplets, CHOP)
    }

    pub fn to_dense(&self) -> Result<DMatrix<Complex64>> {
        let dim = self.dim();
        if dim > DENSE_LIMIT {
            return Err(Error::TooLarge { dim, limit: DENSE_LIMIT });
        }
        let mut m = DMatrix::zeros(dim, dim);
        for (f, s, ny, c) in self.term_masks() {
            for b in 0..dim {
                let (out, phase) = basis_action(b, f, s, ny);
                m[(out, b)] += phase * c;
            }
        }
        Ok(m)
    }

    /// Pauli expansion `Σ_P tr(P M)/2^n P` of a Hermitian matrix.
    pub fn from_dense(m: &DMatrix<Complex64>, tol: f64) -> Result<Self> {
        let dim = m.nrows();
        if m.ncols() != dim || !dim.is_power_of_two() || dim < 2 {
            return Err(Error::InvalidInput(format!("matrix shape {}x{}", dim, m.ncols())));
        }
        let n = dim.trailing_zeros() as usize;
        if n > EXPANSION_LIMIT {
            return Err(Error::TooLarge { dim, limit: 1 << EXPANSION_LIMIT });
        }
        let mut out = Self::zero(n)?;
        for f in 0..dim {
            for s in 0..dim {
                let ny = (f & s).count_ones();
                let mut tr = Complex64::new(0.0, 0.0);
                for b in 0..dim {
                    // P_{b', b} = phase, so tr(P M) = Σ_b phase M_{b, b'}
                    let (image, phase) = basis_action(b, f, s, ny);
                    tr += phase * m[(b, image)];
                }
                let coefficient = tr / dim as f64;
                if coefficient.im.abs() > tol {
                    return Err(Error::UnexpectedForm(format!(
                        "matrix is not Hermitian (imaginary Pauli weight {:.3e})",
                        coefficient.im
                    )));
                }
                out.insert(f, s, coefficient.re);
            }
        }
        Ok(out)
    }
}

/// `U_q H U_q†`, re-expanded through trace inner products per factor.
pub fn conjugate_operator(h: &OperatorSum, u: &SingleQubitUnitary, q: usize) -> Result<OperatorSum> {
    h.check_qubit(q)?;
    let m = u.matrix();
    let images: Vec<[f64; 4]> = Pauli::ALL
        .iter()
        .map(|p| {
            let conj: Matrix2<Complex64> = m * p.matrix() * m.adjoint();
            let mut weights = [0.0; 4];
            for (k, basis) in Pauli::ALL.iter().enumerate() {
                weights[k] = (basis.matrix() * conj).trace().re / 2.0;
            }
            weights
        })
        .collect();
    let n = h.n_qubits;
    let bit = 1usize << (n - 1 - q);
    let mut out = OperatorSum { n_qubits: n, terms: BTreeMap::new() };
    for (&(f, s), &c) in &h.terms {
        let local = match (f & bit != 0, s & bit != 0) {
            (false, false) => 0,
            (true, false) => 1,
            (true, true) => 2,
            (false, true) => 3,
        };
        let (f0, s0) = (f & !bit, s & !bit);
        for (k, &w) in images[local].iter().enumerate() {
            let (fk, sk) = match k {
                0 => (0, 0),
                1 => (bit, 0),
                2 => (bit, bit),
                _ => (0, bit),
            };
            out.insert(f0 | fk, s0 | sk, c * w);
        }
    }
    // products only ever add ±c; clear roundoff-sized survivors
    out.terms.retain(|_, c| c.abs() >= CHOP);
    Ok(out)
}

impl Add for &OperatorSum {
    type Output = OperatorSum;

    fn add(self, rhs: &OperatorSum) -> OperatorSum {
        self.add_scaled(rhs, 1.0).expect("operands share a register")
    }
}

impl Sub for &OperatorSum {
    type Output = OperatorSum;

    fn sub(self, rhs: &OperatorSum) -> OperatorSum {
        self.add_scaled(rhs, -1.0).expect("operands share a register")
    }
}

impl Add for OperatorSum {
    type Output = OperatorSum;

    fn add(self, rhs: OperatorSum) -> OperatorSum {
        &self + &rhs
    }
}

impl Sub for OperatorSum {
    type Output = OperatorSum;

    fn sub(self, rhs: OperatorSum) -> OperatorSum {
        &self - &rhs
    }
}

impl Mul<f64> for &OperatorSum {
    type Output = OperatorSum;

    fn mul(self, rhs: f64) -> OperatorSum {
        self.scaled(rhs)
    }
}

impl Mul<f64> for OperatorSum {
    type Output = OperatorSum;

    fn mul(self, rhs: f64) -> OperatorSum {
        self.scaled(rhs)
    }
}

impl Neg for OperatorSum {
    type Output = OperatorSum;

    fn neg(self) -> OperatorSum {
        self.scaled(-1.0)
    }
}

impl fmt::Display for OperatorSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms().iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}
