// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Single-qubit Paulis and weighted Pauli strings.

use std::fmt;

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest register a [`PauliString`] can address (bit masks are `u64`).
pub const MAX_QUBITS: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> Matrix2<Complex64> {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => Matrix2::new(l, o, o, l),
            Pauli::X => Matrix2::new(o, l, l, o),
            Pauli::Y => Matrix2::new(o, -i, i, o),
            Pauli::Z => Matrix2::new(l, o, o, -l),
        }
    }

    fn flips(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    fn signs(self) -> bool {
        matches!(self, Pauli::Y | Pauli::Z)
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        };
        write!(f, "{c}")
    }
}

/// A real-weighted tensor product of Paulis on an `n_qubits` register.
///
/// Canonical form keeps only the non-identity factors, sorted by qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliString {
    coefficient: f64,
    factors: Vec<(usize, Pauli)>,
    n_qubits: usize,
}

impl PauliString {
    pub fn new(
        coefficient: f64,
        n_qubits: usize,
        factors: impl IntoIterator<Item = (usize, Pauli)>,
    ) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::InvalidInput(format!(
                "register size {n_qubits} outside 1..={MAX_QUBITS}"
            )));
        }
        let mut factors: Vec<(usize, Pauli)> = factors.into_iter().collect();
        for &(q, _) in &factors {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { index: q, n_qubits });
            }
        }
        factors.sort_by_key(|&(q, _)| q);
        if factors.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::OverlappingQubits(factors.iter().map(|f| f.0).collect()));
        }
        factors.retain(|&(_, p)| p != Pauli::I);
        Ok(Self { coefficient, factors, n_qubits })
    }

    pub fn identity(n_qubits: usize, coefficient: f64) -> Result<Self> {
        Self::new(coefficient, n_qubits, [])
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn factors(&self) -> &[(usize, Pauli)] {
        &self.factors
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    /// The Pauli acting on `qubit` (identity when absent).
    pub fn pauli_on(&self, qubit: usize) -> Pauli {
        self.factors
            .iter()
            .find(|&&(q, _)| q == qubit)
            .map_or(Pauli::I, |&(_, p)| p)
    }

    pub fn with_coefficient(&self, coefficient: f64) -> Self {
        Self { coefficient, ..self.clone() }
    }

    /// Bit masks `(flip, sign)` over basis-index bits plus the number of `Y` factors.
    pub(crate) fn masks(&self) -> (usize, usize, u32) {
        let mut flip = 0usize;
        let mut sign = 0usize;
        let mut n_y = 0;
        for &(q, p) in &self.factors {
            let bit = 1usize << (self.n_qubits - 1 - q);
            if p.flips() {
                flip |= bit;
            }
            if p.signs() {
                sign |= bit;
            }
            if p == Pauli::Y {
                n_y += 1;
            }
        }
        (flip, sign, n_y)
    }

    /// Image of a basis state: `P|b> = phase |b'>`, coefficient excluded.
    pub fn act_on_basis(&self, basis: usize) -> (usize, Complex64) {
        let (flip, sign, n_y) = self.masks();
        basis_action(basis, flip, sign, n_y)
    }
}

/// `X^flip Z^sign` style action with `i^n_y` from the `Y` factors.
#[inline]
pub(crate) fn basis_action(basis: usize, flip: usize, sign: usize, n_y: u32) -> (usize, Complex64) {
    // Y|0> = i|1>, Y|1> = -i|0>: each Y contributes i and shares the Z sign.
    let mut phase = match n_y % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    if (basis & sign).count_ones() % 2 == 1 {
        phase = -phase;
    }
    (basis ^ flip, phase)
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.coefficient)?;
        if self.factors.is_empty() {
            return write!(f, " I");
        }
        for (q, p) in &self.factors {
            write!(f, " {p}{q}")?;
        }
        Ok(())
    }
}
