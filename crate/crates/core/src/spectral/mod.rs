// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Sector-resolved spectra, gap profiles, norms and sufficient times.
//!
//! Conjugating every odd site by `Y` turns the identity-gate PAGT pair into
//! an alternating-bond antiferromagnetic Heisenberg chain, which conserves
//! `J_z`. Gaps are computed inside the `k = 1/2` sector.

pub mod chain;
pub mod eigen;
pub mod norm;
pub mod profile;
pub mod sector;
pub mod timing;

pub use chain::{pagt_hamiltonians, pat_hamiltonians, to_spin_chain, SpinChain};
pub use eigen::{lanczos_lowest, EigenPolicy, LanczosResult};
pub use norm::{pagt_norm, pagt_norm_check, sectored_norm, spectral_norm, NormCheck};
pub use profile::{
    cross_sector_audit, default_grid, gap_profile, gap_profile_in_sector, min_gap, SectorAudit,
    SpectralProfile,
};
pub use sector::{off_sector_norm, restrict, sector_decompose, SectorBasis};
pub use timing::{sufficient_time, sufficient_time_with_norm, TimingMode, TimingParams, TimingReport};
