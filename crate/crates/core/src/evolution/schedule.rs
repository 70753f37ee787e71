// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Interpolation schedules `s(t)` on `[0, T]`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::spectral::profile::{interpolate, SpectralProfile};
use crate::spectral::timing::cumulative_inverse_square;

/// A monotone map `[0, T] -> [0, 1]` with `s(0) = 0` and `s(T) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub enum Schedule {
    Linear {
        total_time: f64,
    },
    /// `ds/dt = α ΔE(s)² / ‖H_fin - H_ini‖`, tabulated on the profile grid.
    GapAdapted {
        total_time: f64,
        alpha: f64,
        /// `t(s_i)`, increasing from 0 to `total_time`.
        times: Vec<f64>,
        s_values: Vec<f64>,
    },
    Custom {
        times: Vec<f64>,
        s_values: Vec<f64>,
    },
    /// Holds `s = 0` for `lag` and then runs `inner` compressed into the
    /// remaining `T - lag`.
    Delayed {
        inner: Box<Schedule>,
        lag: f64,
    },
}

fn check_time(total_time: f64) -> Result<()> {
    if !(total_time > 0.0) || !total_time.is_finite() {
        return Err(Error::InvalidSchedule(format!("total time must be positive, got {total_time}")));
    }
    Ok(())
}

impl Schedule {
    pub fn linear(total_time: f64) -> Result<Self> {
        check_time(total_time)?;
        Ok(Schedule::Linear { total_time })
    }

    /// Spends time in proportion to `1/ΔE²`: `t(s) = T F(s) / F(1)` with `F`
    /// the cumulative trapezoid of `1/ΔE²`, inverted by linear interpolation.
    pub fn gap_adapted(profile: &SpectralProfile, norm_diff: f64, total_time: f64) -> Result<Self> {
        check_time(total_time)?;
        let grid = &profile.s_grid;
        if grid.first() != Some(&0.0) || grid.last() != Some(&1.0) {
            return Err(Error::InvalidSchedule("gap profile must span s = 0..1".into()));
        }
        let cumulative = cumulative_inverse_square(profile)?;
        let f1 = *cumulative.last().expect("non-empty grid");
        let times = cumulative.iter().map(|f| total_time * f / f1).collect();
        Ok(Schedule::GapAdapted {
            total_time,
            alpha: norm_diff * f1 / total_time,
            times,
            s_values: grid.clone(),
        })
    }

    pub fn custom(times: Vec<f64>, s_values: Vec<f64>) -> Result<Self> {
        if times.len() != s_values.len() || times.len() < 2 {
            return Err(Error::InvalidSchedule("table needs at least two (t, s) rows".into()));
        }
        if times[0] != 0.0 || s_values[0] != 0.0 || *s_values.last().expect("len >= 2") != 1.0 {
            return Err(Error::InvalidSchedule("table must start at (0, 0) and end at s = 1".into()));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidSchedule("times must be strictly increasing".into()));
        }
        if s_values.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidSchedule("s must be non-decreasing".into()));
        }
        Ok(Schedule::Custom { times, s_values })
    }

    /// `inner` delayed by `lag_fraction * T`.
    pub fn delayed(inner: Schedule, lag_fraction: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&lag_fraction) {
            return Err(Error::InvalidSchedule(format!("lag fraction {lag_fraction} outside [0, 1)")));
        }
        let lag = lag_fraction * inner.total_time();
        Ok(Schedule::Delayed { inner: Box::new(inner), lag })
    }

    pub fn total_time(&self) -> f64 {
        match self {
            Schedule::Linear { total_time } | Schedule::GapAdapted { total_time, .. } => *total_time,
            Schedule::Custom { times, .. } => *times.last().expect("validated table"),
            Schedule::Delayed { inner, .. } => inner.total_time(),
        }
    }

    /// The same shape stretched to a new total time.
    pub fn with_total_time(&self, total_time: f64) -> Result<Self> {
        check_time(total_time)?;
        let scale = total_time / self.total_time();
        Ok(match self {
            Schedule::Linear { .. } => Schedule::Linear { total_time },
            Schedule::GapAdapted { alpha, times, s_values, .. } => Schedule::GapAdapted {
                total_time,
                alpha: alpha / scale,
                times: times.iter().map(|t| t * scale).collect(),
                s_values: s_values.clone(),
            },
            Schedule::Custom { times, s_values } => Schedule::Custom {
                times: times.iter().map(|t| t * scale).collect(),
                s_values: s_values.clone(),
            },
            Schedule::Delayed { inner, lag } => Schedule::Delayed {
                inner: Box::new(inner.with_total_time(total_time)?),
                lag: lag * scale,
            },
        })
    }

    /// `s(t)`, clamped to `[0, 1]` outside `[0, T]`.
    pub fn s(&self, t: f64) -> f64 {
        let total = self.total_time();
        let t = t.clamp(0.0, total);
        let s = match self {
            Schedule::Linear { total_time } => t / total_time,
            Schedule::GapAdapted { times, s_values, .. } => interpolate(times, s_values, t),
            Schedule::Custom { times, s_values } => interpolate(times, s_values, t),
            Schedule::Delayed { inner, lag } => {
                if t < *lag {
                    0.0
                } else {
                    inner.s((t - lag) / (total - lag) * total)
                }
            }
        };
        s.clamp(0.0, 1.0)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Schedule::Linear { .. } => "linear",
            Schedule::GapAdapted { .. } => "gap-adapted",
            Schedule::Custom { .. } => "custom",
            Schedule::Delayed { .. } => "delayed",
        }
    }
}

/// How one Hamiltonian term is weighted over time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Weight {
    Constant,
    /// `s_c(t)` of the named component.
    Rising(String),
    /// `1 - s_c(t)` of the named component.
    Falling(String),
}

/// Independently scheduled named components sharing one total time.
#[derive(Clone, Debug, PartialEq)]
pub struct TermSchedule {
    components: BTreeMap<String, Schedule>,
}

impl TermSchedule {
    pub fn new(components: BTreeMap<String, Schedule>) -> Result<Self> {
        let mut times = components.values().map(Schedule::total_time);
        if let Some(first) = times.next() {
            if times.any(|t| (t - first).abs() > 1e-12 * first) {
                return Err(Error::InvalidSchedule("components disagree on total time".into()));
            }
        } else {
            return Err(Error::InvalidSchedule("no components".into()));
        }
        Ok(Self { components })
    }

    /// Every named component follows `schedule`.
    pub fn uniform<S: Into<String>>(names: impl IntoIterator<Item = S>, schedule: &Schedule) -> Result<Self> {
        Self::new(names.into_iter().map(|n| (n.into(), schedule.clone())).collect())
    }

    /// Replaces one component.
    pub fn with_component(mut self, name: &str, schedule: Schedule) -> Result<Self> {
        self.components.insert(name.to_string(), schedule);
        Self::new(self.components)
    }

    pub fn total_time(&self) -> f64 {
        self.components.values().next().expect("validated").total_time()
    }

    pub fn component(&self, name: &str) -> Result<&Schedule> {
        self.components
            .get(name)
            .ok_or_else(|| Error::InvalidSchedule(format!("no component named `{name}`")))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.components.keys().map(String::as_str)
    }

    pub fn weight(&self, weight: &Weight, t: f64) -> Result<f64> {
        Ok(match weight {
            Weight::Constant => 1.0,
            Weight::Rising(name) => self.component(name)?.s(t),
            Weight::Falling(name) => 1.0 - self.component(name)?.s(t),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::profile::default_grid;

    #[test]
    fn linear_endpoints() {
        let s = Schedule::linear(4.0).unwrap();
        assert_eq!((s.s(0.0), s.s(1.0), s.s(4.0), s.s(9.0)), (0.0, 0.25, 1.0, 1.0));
        assert!(Schedule::linear(0.0).is_err());
    }

    #[test]
    fn constant_gap_adapted_is_linear() {
        let grid = default_grid(0.01).unwrap();
        let p = SpectralProfile::from_parts(1, 0.5, grid.clone(), vec![2.0; grid.len()]).unwrap();
        let s = Schedule::gap_adapted(&p, 1.0, 10.0).unwrap();
        for t in [0.0, 1.3, 5.0, 9.99, 10.0] {
            assert!((s.s(t) - t / 10.0).abs() < 1e-12);
        }
        // α = ‖‖ F(1) / T with F(1) = 1/4
        if let Schedule::GapAdapted { alpha, .. } = s {
            assert!((alpha - 0.025).abs() < 1e-15);
        }
    }

    #[test]
    fn gap_adapted_slows_where_gap_is_small() {
        let grid = default_grid(0.01).unwrap();
        let gaps = grid.iter().map(|s| 1.0 + 4.0 * (s - 0.5f64).powi(2)).collect();
        let p = SpectralProfile::from_parts(1, 0.5, grid, gaps).unwrap();
        let s = Schedule::gap_adapted(&p, 1.0, 1.0).unwrap();
        let rate = |t: f64| (s.s(t + 1e-3) - s.s(t)) / 1e-3;
        assert!(rate(0.5) < rate(0.02));
        assert!((s.s(0.5) - 0.5).abs() < 1e-9);
    }

    #[test]
    fn delayed_holds_then_catches_up() {
        let d = Schedule::delayed(Schedule::linear(10.0).unwrap(), 0.2).unwrap();
        assert_eq!(d.s(1.9), 0.0);
        assert!((d.s(6.0) - 0.5).abs() < 1e-12);
        assert_eq!(d.s(10.0), 1.0);
        assert!(Schedule::delayed(Schedule::linear(1.0).unwrap(), 1.0).is_err());
    }

    #[test]
    fn custom_table_validation() {
        assert!(Schedule::custom(vec![0.0, 1.0], vec![0.0, 1.0]).is_ok());
        assert!(Schedule::custom(vec![0.0, 1.0], vec![0.0, 0.9]).is_err());
        assert!(Schedule::custom(vec![0.0, 1.0, 2.0], vec![0.0, 0.7, 0.6]).is_err());
    }

    #[test]
    fn term_schedule_components() {
        let lin = Schedule::linear(2.0).unwrap();
        let ts = TermSchedule::uniform(["a", "b"], &lin).unwrap();
        assert_eq!(ts.weight(&Weight::Falling("a".into()), 0.5).unwrap(), 0.75);
        assert!(ts.weight(&Weight::Rising("c".into()), 0.5).is_err());
        assert!(ts.with_component("a", Schedule::linear(3.0).unwrap()).is_err());
    }
}
