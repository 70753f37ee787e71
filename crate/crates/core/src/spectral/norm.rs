// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Spectral norms and the `ωL ≤ ‖H_fin - H_ini‖ ≤ 6ωL` check.

use serde::Serialize;

use super::chain::{pat_hamiltonians, y_conjugate_odd_sites};
use super::eigen::{eigenvalues_dense, lanczos_extremes, EigenPolicy};
use super::sector::{restrict, sector_decompose};
use crate::error::Result;
use crate::operator::{OperatorSum, DENSE_LIMIT};
use crate::Complex64;

/// `max |λ|` of a Hermitian Pauli sum: dense up to [`DENSE_LIMIT`], Lanczos
/// extremes on the sparse matrix above.
pub fn spectral_norm(h: &OperatorSum) -> Result<f64> {
    if h.dim() <= DENSE_LIMIT {
        let values = eigenvalues_dense(h.to_dense()?);
        return Ok(values.iter().fold(0.0, |m, v| m.max(v.abs())));
    }
    let sparse = h.to_sparse();
    let (lo, hi) = lanczos_extremes::<Complex64, _>(
        h.dim(),
        |x, y| sparse.apply_into(x, y),
        &EigenPolicy { tol: 1e-11, ..EigenPolicy::default() },
    )?;
    Ok(lo.abs().max(hi.abs()))
}

/// `max |λ|` of a `J_z`-conserving operator with real sector blocks, solved
/// sector by sector.
pub fn sectored_norm(h: &OperatorSum, policy: &EigenPolicy) -> Result<f64> {
    let shift = h.identity_coefficient();
    let traceless = h.without_identity();
    let mut best: f64 = shift.abs();
    for sector in sector_decompose(h.n_qubits())? {
        let m = restrict(&traceless, &sector)?;
        let (lo, hi) = if m.dim() <= policy.dense_limit {
            let rows = m.to_dense_rows();
            let dense = nalgebra::DMatrix::from_fn(m.dim(), m.dim(), |r, c| rows[r][c]);
            let v = eigenvalues_dense(dense);
            (v[0], v[v.len() - 1])
        } else {
            lanczos_extremes::<f64, _>(m.dim(), |x, y| m.apply_into(x, y), &EigenPolicy { tol: 1e-11, ..*policy })?
        };
        best = best.max((lo + shift).abs()).max((hi + shift).abs());
    }
    Ok(best)
}

/// `‖H_fin - H_ini‖` of the `L`-gate pair. Gates drop out of the norm (they
/// are a local unitary frame change), so the identity-gate chain is used.
pub fn pagt_norm(l: usize, omega: f64) -> Result<f64> {
    let (ini, fin) = pat_hamiltonians(l, omega)?;
    let diff = y_conjugate_odd_sites(&(&fin - &ini))?;
    sectored_norm(&diff, &EigenPolicy::default())
}

/// Basis index of `|0011 0011 ...>` truncated to `2L + 1` qubits.
pub fn witness_index(l: usize) -> usize {
    let n = 2 * l + 1;
    (0..n).fold(0usize, |idx, q| (idx << 1) | usize::from(q % 4 >= 2))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormCheck {
    pub l: usize,
    pub omega: f64,
    pub norm: f64,
    pub lower: f64,
    pub upper: f64,
    /// `<φ0|H_fin - H_ini|φ0>` for the witness basis state.
    pub witness_value: f64,
}

impl NormCheck {
    pub fn within_bounds(&self) -> bool {
        self.lower <= self.norm && self.norm <= self.upper
    }
}

pub fn pagt_norm_check(l: usize, omega: f64) -> Result<NormCheck> {
    let (ini, fin) = pat_hamiltonians(l, omega)?;
    let diff = &fin - &ini;
    let norm = pagt_norm(l, omega)?;
    // diagonal element of a Pauli sum: only Z-type strings contribute
    let b = witness_index(l);
    let n = diff.n_qubits();
    let witness_value = diff
        .terms()
        .iter()
        .filter(|t| t.factors().iter().all(|(_, p)| *p == crate::Pauli::Z))
        .map(|t| {
            let parity = t.factors().iter().filter(|(q, _)| (b >> (n - 1 - q)) & 1 == 1).count();
            if parity % 2 == 0 { t.coefficient() } else { -t.coefficient() }
        })
        .sum();
    Ok(NormCheck {
        l,
        omega,
        norm,
        lower: omega * l as f64,
        upper: 6.0 * omega * l as f64,
        witness_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Pauli;
    use crate::state::StateVector;

    #[test]
    fn single_string_norm_is_its_weight() {
        let h = OperatorSum::single(3, -1.7, [(0, Pauli::X), (2, Pauli::Y)]).unwrap();
        assert!((spectral_norm(&h).unwrap() - 1.7).abs() < 1e-12);
    }

    #[test]
    fn sectored_norm_matches_dense() {
        for l in 1..=3 {
            let (ini, fin) = pat_hamiltonians(l, 0.5).unwrap();
            let dense = spectral_norm(&(&fin - &ini)).unwrap();
            assert!((pagt_norm(l, 0.5).unwrap() - dense).abs() < 1e-9);
        }
        assert!((pagt_norm(1, 0.5).unwrap() - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn witness_layout_and_value() {
        assert_eq!(witness_index(1), 0b001);
        assert_eq!(witness_index(2), 0b00110);
        let check = pagt_norm_check(2, 0.5).unwrap();
        let (ini, fin) = pat_hamiltonians(2, 0.5).unwrap();
        let phi = StateVector::basis(5, witness_index(2)).unwrap();
        let direct = phi.expectation(&(&fin - &ini)).unwrap();
        assert!((check.witness_value - direct).abs() < 1e-12);
        assert!(check.within_bounds());
    }
}
