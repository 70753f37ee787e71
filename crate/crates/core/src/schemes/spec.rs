// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON scheme specifications.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::StepControl;
use crate::state::StateVector;
use crate::unitary::{SingleQubitUnitary, UnitaryInput};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SchemeId {
    At,
    Agt,
    Trans,
    Conj,
    Dagger,
    Pagt,
    PagtReordered,
    Qswitch,
    CtrlUNaive,
    CtrlURevised,
    CtrlOrtho,
    CtrlUtUdag,
}

impl SchemeId {
    pub const ALL: [SchemeId; 12] = [
        SchemeId::At,
        SchemeId::Agt,
        SchemeId::Trans,
        SchemeId::Conj,
        SchemeId::Dagger,
        SchemeId::Pagt,
        SchemeId::PagtReordered,
        SchemeId::Qswitch,
        SchemeId::CtrlUNaive,
        SchemeId::CtrlURevised,
        SchemeId::CtrlOrtho,
        SchemeId::CtrlUtUdag,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeId::At => "AT",
            SchemeId::Agt => "AGT",
            SchemeId::Trans => "TRANS",
            SchemeId::Conj => "CONJ",
            SchemeId::Dagger => "DAGGER",
            SchemeId::Pagt => "PAGT",
            SchemeId::PagtReordered => "PAGT_REORDERED",
            SchemeId::Qswitch => "QSWITCH",
            SchemeId::CtrlUNaive => "CTRL_U_NAIVE",
            SchemeId::CtrlURevised => "CTRL_U_REVISED",
            SchemeId::CtrlOrtho => "CTRL_ORTHO",
            SchemeId::CtrlUtUdag => "CTRL_UT_UDAG",
        }
    }

    pub fn is_controlled(self) -> bool {
        matches!(
            self,
            SchemeId::Qswitch
                | SchemeId::CtrlUNaive
                | SchemeId::CtrlURevised
                | SchemeId::CtrlOrtho
                | SchemeId::CtrlUtUdag
        )
    }

    /// Number of unitaries the scheme consumes; `None` for any `L >= 1`.
    pub fn unitary_count(self) -> Option<usize> {
        match self {
            SchemeId::At => Some(0),
            SchemeId::Pagt | SchemeId::PagtReordered => None,
            SchemeId::Qswitch => Some(2),
            _ => Some(1),
        }
    }

    /// Chain length whose identity-gate profile sets the automatic time.
    pub fn timing_length(self, n_unitaries: usize) -> usize {
        match self {
            SchemeId::Pagt | SchemeId::PagtReordered => n_unitaries,
            SchemeId::Qswitch | SchemeId::CtrlOrtho | SchemeId::CtrlUtUdag => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A single-qubit state: a name (`0, 1, +, -, +i, -i, random`) or two
/// `[re, im]` amplitudes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateInput {
    Named(String),
    Amplitudes([[f64; 2]; 2]),
}

impl StateInput {
    pub fn named(name: &str) -> Self {
        StateInput::Named(name.to_string())
    }

    /// `random` draws a Haar state from `rng`.
    pub fn resolve(&self, rng: &mut ChaCha8Rng) -> Result<StateVector> {
        match self {
            StateInput::Named(n) if n.trim() == "random" => StateVector::haar_random(1, rng),
            StateInput::Named(n) => StateVector::from_name(n),
            StateInput::Amplitudes(a) => StateVector::new(
                1,
                vec![Complex64::new(a[0][0], a[0][1]), Complex64::new(a[1][0], a[1][1])],
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScheduleKind {
    #[default]
    GapAdapted,
    Linear,
}

/// `"auto"` or a positive number.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub enum TotalTime {
    #[default]
    Auto,
    Fixed(f64),
}

impl Serialize for TotalTime {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TotalTime::Auto => s.serialize_str("auto"),
            TotalTime::Fixed(t) => s.serialize_f64(*t),
        }
    }
}

impl<'de> Deserialize<'de> for TotalTime {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Word(String),
            Number(f64),
        }
        match Raw::deserialize(d)? {
            Raw::Word(w) if w == "auto" => Ok(TotalTime::Auto),
            Raw::Word(w) => Err(serde::de::Error::custom(format!("expected \"auto\" or a number, got \"{w}\""))),
            Raw::Number(t) if t > 0.0 && t.is_finite() => Ok(TotalTime::Fixed(t)),
            Raw::Number(t) => Err(serde::de::Error::custom(format!("total_time must be positive, got {t}"))),
        }
    }
}

/// Declared tolerances; every verdict is a function of these and the
/// reported numbers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    pub fidelity: f64,
    /// Largest `|θ|` (rad) counted as phase-preserving.
    pub phase: f64,
    /// Purity must fall below `1 - purity_margin` to confirm decoherence.
    pub purity_margin: f64,
    /// Block gaps below this count as a level crossing.
    pub crossing: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self { fidelity: 0.99, phase: 0.01, purity_margin: 0.05, crossing: 1e-6 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StepInput {
    pub dt_max: f64,
    pub tol: f64,
    pub dt_min: f64,
}

impl Default for StepInput {
    fn default() -> Self {
        let c = StepControl::default();
        Self { dt_max: c.dt_max, tol: c.tol, dt_min: c.dt_min }
    }
}

impl From<StepInput> for StepControl {
    fn from(s: StepInput) -> Self {
        StepControl { dt_max: s.dt_max, tol: s.tol, dt_min: s.dt_min }
    }
}

pub const DEFAULT_AUTO_TIME_FACTOR: f64 = 20.0;

fn default_omega() -> f64 {
    0.5
}

fn default_factor() -> f64 {
    DEFAULT_AUTO_TIME_FACTOR
}

fn default_phi() -> StateInput {
    StateInput::named("0")
}

fn default_control() -> StateInput {
    StateInput::named("+")
}

fn default_s_step() -> f64 {
    0.01
}

/// One scheme run. Data-qubit labels are one-based; the control is `C`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeSpec {
    pub scheme: SchemeId,
    #[serde(default = "default_omega")]
    pub omega: f64,
    /// Gate arguments: `U` for single-gate schemes, `[F, G]` for the
    /// switch, `U^(1..L)` for PAGT, `O` for the orthogonal scheme.
    #[serde(default)]
    pub unitaries: Vec<UnitaryInput>,
    #[serde(default = "default_phi")]
    pub phi: StateInput,
    /// Branch inputs; default to `phi`.
    #[serde(default)]
    pub phi0: Option<StateInput>,
    #[serde(default)]
    pub phi1: Option<StateInput>,
    #[serde(default = "default_control")]
    pub control: StateInput,
    #[serde(default)]
    pub schedule: ScheduleKind,
    #[serde(default)]
    pub total_time: TotalTime,
    /// Multiple of the adapted-schedule time used when `total_time` is auto.
    #[serde(default = "default_factor")]
    pub auto_time_factor: f64,
    /// Grid spacing of the gap profile behind the adapted schedule.
    #[serde(default = "default_s_step")]
    pub s_step: f64,
    /// Final-edge pairs for `PAGT_REORDERED`.
    #[serde(default)]
    pub pairing: Option<Vec<[usize; 2]>>,
    /// Per-component lag as a fraction of `T` (switch components `F`, `G`,
    /// `12`, `34`, `14`, `25`).
    #[serde(default)]
    pub term_lags: BTreeMap<String, f64>,
    #[serde(default)]
    pub thresholds: Thresholds,
    #[serde(default)]
    pub step: StepInput,
    #[serde(default)]
    pub seed: u64,
    /// Record a trace row every this many steps of the accepted run.
    #[serde(default)]
    pub trace_stride: Option<usize>,
}

impl SchemeSpec {
    pub fn new(scheme: SchemeId) -> Self {
        Self {
            scheme,
            omega: default_omega(),
            unitaries: Vec::new(),
            phi: default_phi(),
            phi0: None,
            phi1: None,
            control: default_control(),
            schedule: ScheduleKind::default(),
            total_time: TotalTime::Auto,
            auto_time_factor: DEFAULT_AUTO_TIME_FACTOR,
            s_step: default_s_step(),
            pairing: None,
            term_lags: BTreeMap::new(),
            thresholds: Thresholds::default(),
            step: StepInput::default(),
            seed: 0,
            trace_stride: None,
        }
    }

    pub fn with_unitaries(mut self, names: &[&str]) -> Self {
        self.unitaries = names.iter().map(|n| UnitaryInput::Named(n.to_string())).collect();
        self
    }

    pub fn with_phi(mut self, phi: &str) -> Self {
        self.phi = StateInput::named(phi);
        self
    }

    pub fn with_total_time(mut self, t: f64) -> Self {
        self.total_time = TotalTime::Fixed(t);
        self
    }

    /// Parses JSON, reporting the failing field as a JSON pointer.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let spec: SchemeSpec = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let pointer = if path == "." { String::new() } else { format!("/{}", path.replace('.', "/")) };
            Error::InvalidInput(format!("{pointer}: {}", e.inner()))
        })?;
        spec.validate()?;
        Ok(spec)
    }

    /// Field-level checks; errors name the JSON pointer.
    pub fn validate(&self) -> Result<()> {
        let bad = |ptr: &str, msg: String| Err(Error::InvalidInput(format!("{ptr}: {msg}")));
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return bad("/omega", format!("must be positive, got {}", self.omega));
        }
        if !(self.auto_time_factor > 0.0 && self.auto_time_factor.is_finite()) {
            return bad("/auto_time_factor", format!("must be positive, got {}", self.auto_time_factor));
        }
        let n = self.unitaries.len();
        match self.scheme.unitary_count() {
            Some(k) if k != n && !(k == 0 && n == 0) => {
                return bad("/unitaries", format!("{} takes {k} unitaries, got {n}", self.scheme));
            }
            None if n == 0 || n > crate::spectral::chain::MAX_GATES => {
                return bad(
                    "/unitaries",
                    format!("{} takes 1..={} unitaries, got {n}", self.scheme, crate::spectral::chain::MAX_GATES),
                );
            }
            _ => {}
        }
        for (k, u) in self.unitaries.iter().enumerate() {
            if let Err(e) = u.resolve() {
                return bad(&format!("/unitaries/{k}"), e.to_string());
            }
        }
        if self.scheme == SchemeId::CtrlOrtho {
            let o = self.unitaries[0].resolve()?;
            if !o.is_real_orthogonal(1e-9) {
                return bad("/unitaries/0", "must be real orthogonal".into());
            }
        }
        if self.pairing.is_some() && self.scheme != SchemeId::PagtReordered {
            return bad("/pairing", format!("only PAGT_REORDERED takes a pairing, not {}", self.scheme));
        }
        if let Some(p) = &self.pairing {
            if let Err(e) = check_matching(p, 2 * n + 1) {
                return bad("/pairing", e.to_string());
            }
        }
        for (name, lag) in &self.term_lags {
            if !(0.0..1.0).contains(lag) {
                return bad(&format!("/term_lags/{name}"), format!("lag fraction must lie in [0, 1), got {lag}"));
            }
        }
        if !self.term_lags.is_empty() && self.scheme != SchemeId::Qswitch {
            return bad("/term_lags", "only QSWITCH has independently scheduled terms".into());
        }
        let t = &self.thresholds;
        if !(t.fidelity > 0.0 && t.fidelity <= 1.0 && t.phase >= 0.0 && t.purity_margin >= 0.0 && t.crossing >= 0.0) {
            return bad("/thresholds", format!("out of range: {t:?}"));
        }
        if self.trace_stride == Some(0) {
            return bad("/trace_stride", "must be positive".into());
        }
        let s = &self.step;
        if !(s.dt_max > 0.0 && s.dt_min > 0.0 && s.dt_min <= s.dt_max && s.tol > 0.0) {
            return bad("/step", format!("need 0 < dt_min <= dt_max and tol > 0, got {s:?}"));
        }
        if !(self.s_step > 0.0 && self.s_step <= crate::spectral::timing::MAX_SPACING) {
            return bad(
                "/s_step",
                format!("must lie in (0, {}], got {}", crate::spectral::timing::MAX_SPACING, self.s_step),
            );
        }
        Ok(())
    }

    pub fn resolved_unitaries(&self) -> Result<Vec<SingleQubitUnitary>> {
        self.unitaries.iter().map(UnitaryInput::resolve).collect()
    }

    /// `(φ0, φ1, c0, c1)`; random states draw from one seeded stream in
    /// that order.
    pub fn resolved_inputs(&self) -> Result<(StateVector, StateVector, Complex64, Complex64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let phi = self.phi.resolve(&mut rng)?;
        let phi0 = match &self.phi0 {
            Some(p) => p.resolve(&mut rng)?,
            None => phi.clone(),
        };
        let phi1 = match &self.phi1 {
            Some(p) => p.resolve(&mut rng)?,
            None => phi.clone(),
        };
        let c = self.control.resolve(&mut rng)?;
        Ok((phi0, phi1, c.amplitudes()[0], c.amplitudes()[1]))
    }
}

/// Pairs on labels `1..=n` covering all but one qubit exactly once.
pub fn check_matching(pairs: &[[usize; 2]], n: usize) -> Result<usize> {
    let mut seen = vec![false; n + 1];
    for &[a, b] in pairs {
        for q in [a, b] {
            if q == 0 || q > n {
                return Err(Error::InvalidPairing(format!("label {q} outside 1..={n}")));
            }
            if seen[q] {
                return Err(Error::InvalidPairing(format!("label {q} appears twice")));
            }
            seen[q] = true;
        }
        if a == b {
            return Err(Error::InvalidPairing(format!("pair ({a}, {b}) is degenerate")));
        }
    }
    let free: Vec<usize> = (1..=n).filter(|&q| !seen[q]).collect();
    match free.as_slice() {
        [q] => Ok(*q),
        _ => Err(Error::InvalidPairing(format!("expected exactly one unpaired qubit, got {free:?}"))),
    }
}
