// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! The PAGT Hamiltonian pair and its alternating-bond Heisenberg form.

use crate::error::{Error, Result};
use crate::gate::gate_hamiltonian;
use crate::operator::{conjugate_operator, OperatorSum};
use crate::pauli::{Pauli, PauliString};
use crate::unitary::SingleQubitUnitary;

/// Largest gate count accepted by the chain builders.
pub const MAX_GATES: usize = 10;

/// `(H_ini, H_fin)` for gates `U^(1..L)` on `2L + 1` qubits.
///
/// `H_ini` couples zero-based pairs `(2j-1, 2j)` with `U^(j)` on `2j`;
/// `H_fin` couples the identity pairs `(2j-2, 2j-1)`.
pub fn pagt_hamiltonians(
    unitaries: &[SingleQubitUnitary],
    omega: f64,
) -> Result<(OperatorSum, OperatorSum)> {
    let l = unitaries.len();
    if l == 0 || l > MAX_GATES {
        return Err(Error::InvalidInput(format!("gate count {l} outside 1..={MAX_GATES}")));
    }
    let n = 2 * l + 1;
    let mut ini = OperatorSum::zero(n)?;
    let mut fin = OperatorSum::zero(n)?;
    let id = SingleQubitUnitary::identity();
    for (k, u) in unitaries.iter().enumerate() {
        let j = k + 1;
        ini = &ini + &gate_hamiltonian(u, 2 * j - 1, 2 * j, omega, n)?;
        fin = &fin + &gate_hamiltonian(&id, 2 * j - 2, 2 * j - 1, omega, n)?;
    }
    Ok((ini, fin))
}

/// Identity-gate pair, i.e. parallelized plain teleportation.
pub fn pat_hamiltonians(l: usize, omega: f64) -> Result<(OperatorSum, OperatorSum)> {
    pagt_hamiltonians(&vec![SingleQubitUnitary::identity(); l], omega)
}

/// Spin-chain form of the identity-gate pair.
///
/// `ini`/`fin` carry no identity terms; adding `offset_ini`/`offset_fin`
/// times the identity recovers the conjugated originals.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinChain {
    pub l: usize,
    pub omega: f64,
    pub ini: OperatorSum,
    pub fin: OperatorSum,
    pub offset_ini: f64,
    pub offset_fin: f64,
}

impl SpinChain {
    pub fn n_qubits(&self) -> usize {
        self.ini.n_qubits()
    }

    /// `(1 - s) ini + s fin`, without offsets.
    pub fn at(&self, s: f64) -> Result<OperatorSum> {
        self.ini.interpolate(&self.fin, s)
    }

    /// Constant `(1 - s) offset_ini + s offset_fin` dropped from `at(s)`.
    pub fn offset(&self, s: f64) -> f64 {
        (1.0 - s) * self.offset_ini + s * self.offset_fin
    }
}

/// Heisenberg coupling `ω S_a·S_b` with Pauli spin operators.
pub fn heisenberg_bond(n: usize, a: usize, b: usize, omega: f64) -> Result<OperatorSum> {
    OperatorSum::from_terms(
        n,
        [Pauli::X, Pauli::Y, Pauli::Z]
            .into_iter()
            .map(|p| PauliString::new(omega, n, [(a, p), (b, p)]))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// `Y`-conjugates the odd zero-based sites, turning each `H_I` bond into
/// `ω S·S - ω`, and splits off the identity parts.
///
/// Rejects anything that is not exactly the identity-gate pair for some
/// gate count and coupling.
pub fn to_spin_chain(ini: &OperatorSum, fin: &OperatorSum) -> Result<SpinChain> {
    let n = ini.n_qubits();
    if fin.n_qubits() != n {
        return Err(Error::QubitCountMismatch { left: n, right: fin.n_qubits() });
    }
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::UnexpectedForm(format!("{n} qubits is not 2L + 1")));
    }
    let l = (n - 1) / 2;
    let omega = -ini.identity_coefficient() / l as f64;
    if !(omega > 0.0) {
        return Err(Error::UnexpectedForm("identity weight does not fix a positive coupling".into()));
    }
    let (ref_ini, ref_fin) = pat_hamiltonians(l, omega)?;
    let close = |a: &OperatorSum, b: &OperatorSum| {
        a.add_scaled(b, -1.0).map(|d| d.terms().iter().all(|t| t.coefficient().abs() < 1e-12))
    };
    if !close(ini, &ref_ini)? || !close(fin, &ref_fin)? {
        return Err(Error::UnexpectedForm(
            "operators are not the identity-gate PAGT pair".to_string(),
        ));
    }
    let ini = y_conjugate_odd_sites(ini)?;
    let fin = y_conjugate_odd_sites(fin)?;
    Ok(SpinChain {
        l,
        omega,
        offset_ini: ini.identity_coefficient(),
        offset_fin: fin.identity_coefficient(),
        ini: ini.without_identity(),
        fin: fin.without_identity(),
    })
}

/// Conjugation by `Y` on every odd zero-based site. An involution.
pub fn y_conjugate_odd_sites(op: &OperatorSum) -> Result<OperatorSum> {
    let y = SingleQubitUnitary::pauli_y();
    (1..op.n_qubits()).step_by(2).try_fold(op.clone(), |acc, q| conjugate_operator(&acc, &y, q))
}
