// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Gate Hamiltonians and the matrix representation of two-qubit states.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{Matrix2, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::{conjugate_operator, OperatorSum};
use crate::pauli::{Pauli, PauliString};
use crate::state::{Fragment, StateVector};
use crate::unitary::SingleQubitUnitary;
use crate::DEFAULT_TOL;

fn check_pair(i: usize, j: usize, n_qubits: usize) -> Result<()> {
    for q in [i, j] {
        if q >= n_qubits {
            return Err(Error::QubitOutOfRange { index: q, n_qubits });
        }
    }
    if i == j {
        return Err(Error::OverlappingQubits(vec![i, j]));
    }
    Ok(())
}

/// `-ω U_j (I I + X X - Y Y + Z Z) U_j†` on qubits `(i, j)` of an
/// `n_qubits` register; as a matrix this is `-4ω U_j |I>><<I| U_j†`.
pub fn gate_hamiltonian(
    u: &SingleQubitUnitary,
    i: usize,
    j: usize,
    omega: f64,
    n_qubits: usize,
) -> Result<OperatorSum> {
    check_pair(i, j, n_qubits)?;
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidInput(format!("coupling must be positive, got {omega}")));
    }
    // revalidate: callers may hold a unitary built with a looser tolerance
    let u = SingleQubitUnitary::new(*u.matrix())?;
    let n = n_qubits;
    let base = OperatorSum::from_terms(
        n,
        [
            PauliString::identity(n, -omega)?,
            PauliString::new(-omega, n, [(i, Pauli::X), (j, Pauli::X)])?,
            PauliString::new(omega, n, [(i, Pauli::Y), (j, Pauli::Y)])?,
            PauliString::new(-omega, n, [(i, Pauli::Z), (j, Pauli::Z)])?,
        ],
    )?;
    conjugate_operator(&base, &u, j)
}

/// `(|00> + |11>)/√2` on qubits `(i, j)`.
pub fn mes_state(i: usize, j: usize) -> Result<Fragment> {
    if i == j {
        return Err(Error::OverlappingQubits(vec![i, j]));
    }
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let o = Complex64::new(0.0, 0.0);
    Ok(Fragment { qubits: vec![i, j], state: StateVector::new(2, vec![h, o, o, h])? })
}

/// `|C>> = (1/√2) Σ C_ab |a>|b>` as a raw amplitude vector (index `2a + b`).
pub fn vectorize(c: &Matrix2<Complex64>) -> Vector4<Complex64> {
    let s = FRAC_1_SQRT_2;
    Vector4::new(c[(0, 0)] * s, c[(0, 1)] * s, c[(1, 0)] * s, c[(1, 1)] * s)
}

/// A two-qubit pure state held through its amplitude matrix, normalized as
/// `Σ |C_ab|² = d` with `d = 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteMatrixState {
    c: Matrix2<Complex64>,
    i: usize,
    j: usize,
}

impl BipartiteMatrixState {
    pub fn new(c: Matrix2<Complex64>, i: usize, j: usize) -> Result<Self> {
        Self::with_tolerance(c, i, j, DEFAULT_TOL)
    }

    pub fn with_tolerance(c: Matrix2<Complex64>, i: usize, j: usize, tol: f64) -> Result<Self> {
        if i == j {
            return Err(Error::OverlappingQubits(vec![i, j]));
        }
        let weight: f64 = c.iter().map(|z| z.norm_sqr()).sum();
        if (weight - 2.0).abs() > tol {
            return Err(Error::NotNormalized { found: weight, expected: 2.0 });
        }
        Ok(Self { c, i, j })
    }

    /// `|U>>`, i.e. `(I ⊗ Uᵀ)|I>>`.
    pub fn from_unitary(u: &SingleQubitUnitary, i: usize, j: usize) -> Result<Self> {
        Self::new(*u.matrix(), i, j)
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.c
    }

    pub fn qubits(&self) -> (usize, usize) {
        (self.i, self.j)
    }
}

/// The register fragment holding `|C>>` on its qubit pair.
pub fn matrix_state(c: &BipartiteMatrixState) -> Result<Fragment> {
    let v = vectorize(&c.c);
    Ok(Fragment { qubits: vec![c.i, c.j], state: StateVector::new(2, v.iter().copied().collect())? })
}
