// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Gap profiles `ΔE_L(s)` of the interpolated spin chain.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use super::chain::{pat_hamiltonians, to_spin_chain, SpinChain};
use super::eigen::{eigenvalues_dense, lanczos_lowest, lowest_dense, EigenPolicy};
use super::sector::{restrict, sector_decompose, SectorBasis};
use crate::error::{Error, Result};
use crate::sparse::Csr;

/// Gap and ground energy per grid point, resolved in one `J_z` sector.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralProfile {
    pub l: usize,
    pub omega: f64,
    /// `2k` of the sector used.
    pub twice_k: i32,
    pub s_grid: Vec<f64>,
    pub gaps: Vec<f64>,
    /// Ground energy of the original (unconjugated) `H(s)`.
    pub ground_energies: Vec<f64>,
}

impl SpectralProfile {
    /// Synthetic profile, for schedules built from tabulated gaps.
    pub fn from_parts(l: usize, omega: f64, s_grid: Vec<f64>, gaps: Vec<f64>) -> Result<Self> {
        validate_grid(&s_grid)?;
        if gaps.len() != s_grid.len() {
            return Err(Error::InvalidInput(format!(
                "{} gaps for {} grid points",
                gaps.len(),
                s_grid.len()
            )));
        }
        if let Some(g) = gaps.iter().find(|g| !(**g >= 0.0) || !g.is_finite()) {
            return Err(Error::InvalidInput(format!("invalid gap value {g}")));
        }
        let ground_energies = vec![f64::NAN; gaps.len()];
        Ok(Self { l, omega, twice_k: 1, s_grid, gaps, ground_energies })
    }

    pub fn len(&self) -> usize {
        self.s_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s_grid.is_empty()
    }

    /// Linear interpolation of the gap at `s`.
    pub fn gap_at(&self, s: f64) -> f64 {
        interpolate(&self.s_grid, &self.gaps, s)
    }
}

pub(crate) fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    match xs.iter().position(|&v| v >= x) {
        None => *ys.last().expect("non-empty table"),
        Some(0) => ys[0],
        Some(i) => {
            let t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
            ys[i - 1] + t * (ys[i] - ys[i - 1])
        }
    }
}

/// `{0, 1/n, ..., 1}` with `n = round(1 / step)`; `step` must divide 1.
pub fn default_grid(step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(Error::InvalidInput(format!("grid step {step} outside (0, 1]")));
    }
    let n = (1.0 / step).round();
    if (n * step - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidInput(format!("grid step {step} does not divide [0, 1]")));
    }
    let n = n as usize;
    Ok((0..=n).map(|i| i as f64 / n as f64).collect())
}

pub(crate) fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidInput("empty s grid".into()));
    }
    if grid.iter().any(|s| !(0.0..=1.0).contains(s)) {
        return Err(Error::InvalidInput("s grid leaves [0, 1]".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput("s grid must be strictly increasing".into()));
    }
    Ok(())
}

/// Both chain terms restricted to one sector.
pub(crate) struct SectorPair {
    pub ini: Csr<f64>,
    pub fin: Csr<f64>,
}

impl SectorPair {
    pub fn new(chain: &SpinChain, sector: &SectorBasis) -> Result<Self> {
        Ok(Self { ini: restrict(&chain.ini, sector)?, fin: restrict(&chain.fin, sector)? })
    }

    fn dense(&self, s: f64) -> DMatrix<f64> {
        let dim = self.ini.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for (weight, part) in [(1.0 - s, &self.ini), (s, &self.fin)] {
            for r in 0..dim {
                for (c, v) in part.row(r) {
                    m[(r, c)] += weight * v;
                }
            }
        }
        m
    }

    /// Lowest eigenvalues of `(1 - s) ini + s fin` under `policy`.
    pub fn lowest(&self, s: f64, k: usize, policy: &EigenPolicy) -> Result<Vec<f64>> {
        let dim = self.ini.dim();
        if dim <= policy.dense_limit {
            return Ok(lowest_dense(self.dense(s), k));
        }
        let apply = |x: &[f64], y: &mut [f64]| {
            y.iter_mut().for_each(|v| *v = 0.0);
            self.ini.apply_scaled_add(1.0 - s, x, y);
            self.fin.apply_scaled_add(s, x, y);
        };
        let result = lanczos_lowest(dim, apply, &EigenPolicy { n_lowest: policy.n_lowest.max(k), ..*policy })?;
        Ok(result.values.into_iter().take(k).collect())
    }
}

/// `ΔE_L(s)` in the `k = 1/2` sector of the identity-gate chain.
pub fn gap_profile(l: usize, omega: f64, s_grid: &[f64], policy: &EigenPolicy) -> Result<SpectralProfile> {
    gap_profile_in_sector(l, omega, s_grid, policy, 1)
}

/// As [`gap_profile`], in the sector with the given `2k`.
pub fn gap_profile_in_sector(
    l: usize,
    omega: f64,
    s_grid: &[f64],
    policy: &EigenPolicy,
    twice_k: i32,
) -> Result<SpectralProfile> {
    validate_grid(s_grid)?;
    let (ini, fin) = pat_hamiltonians(l, omega)?;
    let chain = to_spin_chain(&ini, &fin)?;
    let sector = SectorBasis::new(chain.n_qubits(), twice_k)?;
    if sector.dim() < 2 {
        return Err(Error::InvalidInput(format!("sector 2k = {twice_k} has no excited state")));
    }
    let pair = SectorPair::new(&chain, &sector)?;
    let rows: Vec<Result<(f64, f64)>> = s_grid
        .par_iter()
        .map(|&s| {
            let low = pair.lowest(s, 2, policy)?;
            if low.len() < 2 {
                return Err(Error::NotConverged { iterations: 0, residual: f64::NAN });
            }
            Ok((low[1] - low[0], low[0] + chain.offset(s)))
        })
        .collect();
    let mut gaps = Vec::with_capacity(rows.len());
    let mut ground_energies = Vec::with_capacity(rows.len());
    for row in rows {
        let (g, e) = row?;
        gaps.push(g.max(0.0));
        ground_energies.push(e);
    }
    Ok(SpectralProfile { l, omega, twice_k, s_grid: s_grid.to_vec(), gaps, ground_energies })
}

/// Grid point of the smallest gap, ties resolved toward smaller `s`.
pub fn min_gap(profile: &SpectralProfile) -> Result<(f64, f64)> {
    if profile.is_empty() {
        return Err(Error::InvalidInput("empty profile".into()));
    }
    let mut best = 0;
    for (i, &g) in profile.gaps.iter().enumerate() {
        if g < profile.gaps[best] {
            best = i;
        }
    }
    Ok((profile.s_grid[best], profile.gaps[best]))
}

/// Dense all-sector check of the sector-restricted gap at one `s`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SectorAudit {
    pub s: f64,
    /// Gap inside the `k = 1/2` sector.
    pub sector_gap: f64,
    /// First level above the (degenerate) global ground energy.
    pub global_gap: f64,
    /// `|E_0(k=1/2) - E_0(k=-1/2)|`.
    pub ground_split: f64,
}

/// Diagonalizes every sector densely (`2L + 1 <= 11`).
pub fn cross_sector_audit(l: usize, omega: f64, s: f64) -> Result<SectorAudit> {
    let (ini, fin) = pat_hamiltonians(l, omega)?;
    let chain = to_spin_chain(&ini, &fin)?;
    let n = chain.n_qubits();
    if n > 11 {
        return Err(Error::TooLarge { dim: 1 << n, limit: 1 << 11 });
    }
    let mut levels: Vec<(i32, Vec<f64>)> = Vec::new();
    for sector in sector_decompose(n)? {
        let pair = SectorPair::new(&chain, &sector)?;
        levels.push((sector.twice_k(), eigenvalues_dense(pair.dense(s))));
    }
    let of = |k: i32| &levels.iter().find(|(t, _)| *t == k).expect("sector exists").1;
    let plus = of(1);
    let minus = of(-1);
    let ground = plus[0].min(minus[0]);
    let threshold = ground + 1e-9 * (1.0 + ground.abs());
    let global_first = levels
        .iter()
        .flat_map(|(_, v)| v.iter().copied())
        .filter(|&e| e > threshold)
        .fold(f64::INFINITY, f64::min);
    Ok(SectorAudit {
        s,
        sector_gap: plus[1] - plus[0],
        global_gap: global_first - ground,
        ground_split: (plus[0] - minus[0]).abs(),
    })
}
