// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Validated 2x2 unitaries, their named built-ins and JSON form.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::ops::Mul;

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::DEFAULT_TOL;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingleQubitUnitary(Matrix2<Complex64>);

impl SingleQubitUnitary {
    pub fn new(m: Matrix2<Complex64>) -> Result<Self> {
        Self::with_tolerance(m, DEFAULT_TOL)
    }

    pub fn with_tolerance(m: Matrix2<Complex64>, tol: f64) -> Result<Self> {
        let deviation = (m.adjoint() * m - Matrix2::identity())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if !(deviation <= tol) {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(Matrix2::identity())
    }

    pub fn pauli_x() -> Self {
        Self(Matrix2::new(c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)))
    }

    pub fn pauli_y() -> Self {
        Self(Matrix2::new(c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)))
    }

    pub fn pauli_z() -> Self {
        Self(Matrix2::new(c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)))
    }

    pub fn hadamard() -> Self {
        let h = c(FRAC_1_SQRT_2, 0.);
        Self(Matrix2::new(h, h, h, -h))
    }

    pub fn phase_s() -> Self {
        Self(Matrix2::new(c(1., 0.), c(0., 0.), c(0., 0.), c(0., 1.)))
    }

    pub fn phase_t() -> Self {
        Self(Matrix2::new(c(1., 0.), c(0., 0.), c(0., 0.), Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)))
    }

    /// `exp(-i theta Z / 2)`.
    pub fn rz(theta: f64) -> Self {
        Self(Matrix2::new(
            Complex64::from_polar(1.0, -theta / 2.0),
            c(0., 0.),
            c(0., 0.),
            Complex64::from_polar(1.0, theta / 2.0),
        ))
    }

    /// `exp(-i theta Y / 2)`, a real rotation by `theta`.
    pub fn ry(theta: f64) -> Self {
        let (s, co) = (theta / 2.0).sin_cos();
        Self(Matrix2::new(c(co, 0.), c(-s, 0.), c(s, 0.), c(co, 0.)))
    }

    /// Real rotation matrix `[[cos, -sin], [sin, cos]]`.
    pub fn rotation(theta: f64) -> Self {
        let (s, co) = theta.sin_cos();
        Self(Matrix2::new(c(co, 0.), c(-s, 0.), c(s, 0.), c(co, 0.)))
    }

    /// Parses `I, X, Y, Z, H, S, T, Rz(θ), Ry(θ)` with θ in radians.
    pub fn from_name(name: &str) -> Result<Self> {
        let trimmed = name.trim();
        match trimmed {
            "I" => return Ok(Self::identity()),
            "X" => return Ok(Self::pauli_x()),
            "Y" => return Ok(Self::pauli_y()),
            "Z" => return Ok(Self::pauli_z()),
            "H" => return Ok(Self::hadamard()),
            "S" => return Ok(Self::phase_s()),
            "T" => return Ok(Self::phase_t()),
            _ => {}
        }
        let parse_arg = |prefix: &str| -> Option<f64> {
            trimmed
                .strip_prefix(prefix)?
                .strip_suffix(')')?
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|t| t.is_finite())
        };
        if let Some(theta) = parse_arg("Rz(") {
            return Ok(Self::rz(theta));
        }
        if let Some(theta) = parse_arg("Ry(") {
            return Ok(Self::ry(theta));
        }
        Err(Error::UnknownGate(name.to_string()))
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.0
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn conjugate(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn apply(&self, v: &Vector2<Complex64>) -> Vector2<Complex64> {
        self.0 * v
    }

    pub fn determinant(&self) -> Complex64 {
        self.0[(0, 0)] * self.0[(1, 1)] - self.0[(0, 1)] * self.0[(1, 0)]
    }

    /// Real entries and `OᵀO = I` within `tol`.
    pub fn is_real_orthogonal(&self, tol: f64) -> bool {
        self.0.iter().all(|z| z.im.abs() <= tol)
            && (self.0.transpose() * self.0 - Matrix2::identity())
                .iter()
                .all(|z| z.norm() <= tol)
    }

    /// Largest entrywise distance after removing the global phase.
    pub fn distance_up_to_phase(&self, other: &Self) -> f64 {
        let overlap = (self.0.adjoint() * other.0).trace();
        let phase = if overlap.norm() > 1e-300 { overlap / overlap.norm() } else { c(1., 0.) };
        (self.0 * phase - other.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (self.0 - other.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Principal square root: eigenvalue phases halved on `(-π, π]`, so the
    /// branch cut sits on the negative real axis and `-1 ↦ i`.
    pub fn principal_sqrt(&self) -> Self {
        let m = &self.0;
        let tr = m.trace();
        let det = self.determinant();
        let disc = (tr * tr / 4.0 - det).sqrt();
        let l1 = tr / 2.0 + disc;
        let l2 = tr / 2.0 - disc;
        let root = |z: Complex64| Complex64::from_polar(z.norm().sqrt(), principal_arg(z) / 2.0);
        if (l1 - l2).norm() < 1e-12 {
            // normal matrix with a repeated eigenvalue is a multiple of I
            return Self(Matrix2::identity() * root(l1));
        }
        let v1 = eigenvector(m, l1);
        let v2 = eigenvector(m, l2);
        let p1 = v1 * v1.adjoint();
        let p2 = v2 * v2.adjoint();
        Self(p1 * root(l1) + p2 * root(l2))
    }
}

fn principal_arg(z: Complex64) -> f64 {
    let a = z.arg();
    if a <= -std::f64::consts::PI + 1e-15 {
        std::f64::consts::PI
    } else {
        a
    }
}

fn eigenvector(m: &Matrix2<Complex64>, lambda: Complex64) -> Vector2<Complex64> {
    // rows of (m - λI) annihilate v; pick the better-conditioned row
    let a = m[(0, 0)] - lambda;
    let b = m[(0, 1)];
    let cc = m[(1, 0)];
    let d = m[(1, 1)] - lambda;
    let v = if a.norm() + b.norm() >= cc.norm() + d.norm() {
        Vector2::new(b, -a)
    } else {
        Vector2::new(d, -cc)
    };
    v / Complex64::new(v.norm(), 0.0)
}

impl Mul for SingleQubitUnitary {
    type Output = SingleQubitUnitary;

    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

impl fmt::Display for SingleQubitUnitary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = |z: Complex64| format!("{:.6}{:+.6}i", z.re, z.im);
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            e(self.0[(0, 0)]),
            e(self.0[(0, 1)]),
            e(self.0[(1, 0)]),
            e(self.0[(1, 1)])
        )
    }
}

/// JSON form shared by scheme specs and the CLI: a built-in name or a
/// row-major 2x2 array of `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UnitaryInput {
    Named(String),
    Matrix([[[f64; 2]; 2]; 2]),
}

impl UnitaryInput {
    pub fn resolve(&self) -> Result<SingleQubitUnitary> {
        match self {
            UnitaryInput::Named(name) => SingleQubitUnitary::from_name(name),
            UnitaryInput::Matrix(rows) => {
                let z = |p: [f64; 2]| c(p[0], p[1]);
                SingleQubitUnitary::new(Matrix2::new(
                    z(rows[0][0]),
                    z(rows[0][1]),
                    z(rows[1][0]),
                    z(rows[1][1]),
                ))
            }
        }
    }

    pub fn from_unitary(u: &SingleQubitUnitary) -> Self {
        let p = |z: Complex64| [z.re, z.im];
        UnitaryInput::Matrix([
            [p(u.entry(0, 0)), p(u.entry(0, 1))],
            [p(u.entry(1, 0)), p(u.entry(1, 1))],
        ])
    }
}
