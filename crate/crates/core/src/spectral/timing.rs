// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Sufficient evolution times from a gap profile.

use serde::Serialize;

use super::norm::pagt_norm;
use super::profile::{min_gap, SpectralProfile};
use crate::error::{Error, Result};

/// Coarsest grid spacing the quadrature accepts.
pub const MAX_SPACING: f64 = 0.01;

/// Parameters of the linear-schedule bound `c ‖ΔH‖^{1+δ} / (ε^δ G^{2+δ})`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TimingParams {
    pub epsilon: f64,
    pub delta: f64,
    pub c: f64,
}

impl Default for TimingParams {
    fn default() -> Self {
        Self { epsilon: 0.01, delta: 1.0, c: 1.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TimingMode {
    LinearBound,
    Adapted,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TimingReport {
    pub l: usize,
    pub omega: f64,
    pub g_l: f64,
    pub s_star: f64,
    pub norm_diff: f64,
    /// `∫ ds / ΔE(s)²` by the trapezoid rule on the profile grid.
    pub t_e: f64,
    /// Same integral on every other grid point, when the grid allows it.
    pub t_e_coarse: Option<f64>,
    /// `(4 T_e - T_e_coarse) / 3`.
    pub t_e_richardson: Option<f64>,
    pub t_l: f64,
    pub linear_bound_t: f64,
    pub params: TimingParams,
}

impl TimingReport {
    pub fn time(&self, mode: TimingMode) -> f64 {
        match mode {
            TimingMode::LinearBound => self.linear_bound_t,
            TimingMode::Adapted => self.t_l,
        }
    }
}

pub fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    xs.windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}

/// Cumulative trapezoid of `1/ΔE²`, starting at 0.
pub fn cumulative_inverse_square(profile: &SpectralProfile) -> Result<Vec<f64>> {
    let inv = inverse_squares(profile)?;
    let mut acc = vec![0.0];
    for i in 1..profile.s_grid.len() {
        let step = 0.5 * (profile.s_grid[i] - profile.s_grid[i - 1]) * (inv[i] + inv[i - 1]);
        acc.push(acc[i - 1] + step);
    }
    Ok(acc)
}

fn inverse_squares(profile: &SpectralProfile) -> Result<Vec<f64>> {
    profile
        .s_grid
        .iter()
        .zip(&profile.gaps)
        .map(|(&s, &g)| if g > 1e-12 { Ok(1.0 / (g * g)) } else { Err(Error::ZeroGap { s }) })
        .collect()
}

fn check_coverage(profile: &SpectralProfile) -> Result<()> {
    let grid = &profile.s_grid;
    let first = grid.first().copied().unwrap_or(f64::NAN);
    let last = grid.last().copied().unwrap_or(f64::NAN);
    if first != 0.0 || last != 1.0 {
        return Err(Error::InvalidInput("profile must cover s = 0 and s = 1".into()));
    }
    if grid.windows(2).any(|w| w[1] - w[0] > MAX_SPACING + 1e-12) {
        return Err(Error::InvalidInput(format!("profile spacing exceeds {MAX_SPACING}")));
    }
    Ok(())
}

/// Times for the identity-gate pair underlying `profile`.
pub fn sufficient_time(profile: &SpectralProfile, params: &TimingParams) -> Result<TimingReport> {
    let norm = pagt_norm(profile.l, profile.omega)?;
    sufficient_time_with_norm(profile, norm, params)
}

/// As [`sufficient_time`] with `‖H_fin - H_ini‖` supplied.
pub fn sufficient_time_with_norm(
    profile: &SpectralProfile,
    norm_diff: f64,
    params: &TimingParams,
) -> Result<TimingReport> {
    check_coverage(profile)?;
    if !(params.epsilon > 0.0 && params.delta >= 0.0 && params.c > 0.0) {
        return Err(Error::InvalidInput(format!("invalid timing parameters {params:?}")));
    }
    let inv = inverse_squares(profile)?;
    let t_e = trapezoid(&profile.s_grid, &inv);
    let (t_e_coarse, t_e_richardson) = if profile.s_grid.len() >= 5 && profile.s_grid.len() % 2 == 1 {
        let xs: Vec<f64> = profile.s_grid.iter().step_by(2).copied().collect();
        let ys: Vec<f64> = inv.iter().step_by(2).copied().collect();
        let coarse = trapezoid(&xs, &ys);
        (Some(coarse), Some((4.0 * t_e - coarse) / 3.0))
    } else {
        (None, None)
    };
    let (s_star, g_l) = min_gap(profile)?;
    let d = params.delta;
    let linear_bound_t =
        params.c * norm_diff.powf(1.0 + d) / (params.epsilon.powf(d) * g_l.powf(2.0 + d));
    Ok(TimingReport {
        l: profile.l,
        omega: profile.omega,
        g_l,
        s_star,
        norm_diff,
        t_e,
        t_e_coarse,
        t_e_richardson,
        t_l: norm_diff * t_e,
        linear_bound_t,
        params: *params,
    })
}
