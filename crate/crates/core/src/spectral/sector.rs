// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! `J_z` sectors of an `n`-qubit register.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::OperatorSum;
use crate::pauli::basis_action;
use crate::sparse::Csr;

/// Basis states with `Σ_i (-1)^{bit_i} = 2k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorBasis {
    n_qubits: usize,
    twice_k: i32,
    indices: Vec<usize>,
}

impl SectorBasis {
    /// The sector with total spin `twice_k / 2`.
    pub fn new(n_qubits: usize, twice_k: i32) -> Result<Self> {
        let n = n_qubits as i32;
        if n_qubits == 0 || n_qubits > 30 || twice_k.abs() > n || (n - twice_k) % 2 != 0 {
            return Err(Error::InvalidInput(format!(
                "no sector 2k = {twice_k} on {n_qubits} qubits"
            )));
        }
        // 2k = (#zeros) - (#ones) = n - 2 popcount
        let ones = ((n - twice_k) / 2) as u32;
        let indices = (0..1usize << n_qubits).filter(|b| b.count_ones() == ones).collect();
        Ok(Self { n_qubits, twice_k, indices })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn twice_k(&self) -> i32 {
        self.twice_k
    }

    pub fn k(&self) -> f64 {
        f64::from(self.twice_k) / 2.0
    }

    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    fn ones(&self) -> u32 {
        ((self.n_qubits as i32 - self.twice_k) / 2) as u32
    }

    /// Position of basis state `b` within the sector, if it belongs.
    pub fn position(&self, b: usize) -> Option<usize> {
        self.indices.binary_search(&b).ok()
    }
}

/// All `n + 1` sectors, ordered by increasing `k`.
pub fn sector_decompose(n_qubits: usize) -> Result<Vec<SectorBasis>> {
    let n = n_qubits as i32;
    (0..=n).map(|ones| SectorBasis::new(n_qubits, n - 2 * ones)).collect()
}

/// Restriction of a `J_z`-conserving operator with real sector entries.
///
/// Fails with [`Error::SectorLeak`] if the summed operator maps the sector outside itself
/// and with [`Error::ComplexSectorEntry`] if any entry has an imaginary part.
pub fn restrict(op: &OperatorSum, sector: &SectorBasis) -> Result<Csr<f64>> {
    if op.n_qubits() != sector.n_qubits {
        return Err(Error::QubitCountMismatch { left: op.n_qubits(), right: sector.n_qubits });
    }
    let terms = term_masks(op);
    let ones = sector.ones();
    let mut triplets = Vec::with_capacity(sector.dim() * terms.len());
    let mut complex = Vec::with_capacity(sector.dim() * terms.len());
    let mut outside: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
    for (col, &b) in sector.indices.iter().enumerate() {
        for &(f, s, ny, c) in &terms {
            let (image, phase) = basis_action(b, f, s, ny);
            if image.count_ones() != ones {
                // single strings may leave the sector while their sum does not
                *outside.entry((image, col)).or_default() += phase * c;
                continue;
            }
            let row = sector.position(image).expect("same popcount lies in the sector");
            complex.push((row, col, phase * c));
        }
    }
    let leak = outside.values().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if leak > 1e-12 {
        return Err(Error::SectorLeak { leak });
    }
    // imaginary parts may cancel between terms, so check after summing
    let summed = Csr::from_triplets(sector.dim(), complex, 0.0);
    for r in 0..summed.dim() {
        for (col, z) in summed.row(r) {
            if z.im.abs() > 1e-12 {
                return Err(Error::ComplexSectorEntry { imag: z.im });
            }
            triplets.push((r, col, z.re));
        }
    }
    Ok(Csr::from_triplets(sector.dim(), triplets, crate::operator::CHOP))
}

fn term_masks(op: &OperatorSum) -> Vec<(usize, usize, u32, f64)> {
    op.terms()
        .iter()
        .map(|t| {
            let (f, s, ny) = t.masks();
            (f, s, ny, t.coefficient())
        })
        .collect()
}

/// Frobenius norm of every matrix element connecting different sectors.
/// Bounds the spectral norm of the off-diagonal blocks from above.
pub fn off_sector_norm(op: &OperatorSum) -> f64 {
    let sparse = op.to_sparse();
    let mut total = 0.0;
    for r in 0..sparse.dim() {
        for (c, z) in sparse.row(r) {
            if r.count_ones() != c.count_ones() {
                total += z.norm_sqr();
            }
        }
    }
    total.sqrt()
}
