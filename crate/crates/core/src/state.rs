// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Pure states on qubit registers.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::operator::OperatorSum;
use crate::unitary::SingleQubitUnitary;
use crate::DEFAULT_TOL;

/// Normalized amplitude vector over `2^n` basis states (qubit 0 is the MSB).
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
    n_qubits: usize,
}

/// A state on a subset of register qubits, listed in tensor order.
#[derive(Clone, Debug, PartialEq)]
pub struct Fragment {
    pub qubits: Vec<usize>,
    pub state: StateVector,
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn check_distinct(qubits: &[usize]) -> Result<()> {
    let mut sorted = qubits.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::OverlappingQubits(qubits.to_vec()));
    }
    Ok(())
}

impl StateVector {
    /// Validates length and unit norm (within [`DEFAULT_TOL`]).
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let state = Self::unchecked(n_qubits, amplitudes)?;
        let norm = state.norm();
        if (norm - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::NotNormalized { found: norm, expected: 1.0 });
        }
        Ok(state)
    }

    fn unchecked(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if n_qubits == 0 || n_qubits >= usize::BITS as usize {
            return Err(Error::InvalidInput(format!("register size {n_qubits}")));
        }
        if amplitudes.len() != 1usize << n_qubits {
            return Err(Error::InvalidInput(format!(
                "{} amplitudes for {n_qubits} qubits",
                amplitudes.len()
            )));
        }
        Ok(Self { amplitudes, n_qubits })
    }

    /// Rescales to unit norm; rejects the zero vector.
    pub fn normalized(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let mut state = Self::unchecked(n_qubits, amplitudes)?;
        let norm = state.norm();
        if !(norm > 1e-300) || !norm.is_finite() {
            return Err(Error::NotNormalized { found: norm, expected: 1.0 });
        }
        for a in &mut state.amplitudes {
            *a /= norm;
        }
        Ok(state)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let mut amps = vec![zero(); 1usize << n_qubits.min(usize::BITS as usize - 1)];
        if index >= amps.len() {
            return Err(Error::InvalidInput(format!("basis index {index} for {n_qubits} qubits")));
        }
        amps[index] = Complex64::new(1.0, 0.0);
        Self::new(n_qubits, amps)
    }

    /// Single-qubit states `0, 1, +, -, +i, -i`.
    pub fn from_name(name: &str) -> Result<Self> {
        let h = FRAC_1_SQRT_2;
        let (a, b) = match name.trim() {
            "0" => (Complex64::new(1.0, 0.0), zero()),
            "1" => (zero(), Complex64::new(1.0, 0.0)),
            "+" => (Complex64::new(h, 0.0), Complex64::new(h, 0.0)),
            "-" => (Complex64::new(h, 0.0), Complex64::new(-h, 0.0)),
            "+i" => (Complex64::new(h, 0.0), Complex64::new(0.0, h)),
            "-i" => (Complex64::new(h, 0.0), Complex64::new(0.0, -h)),
            _ => return Err(Error::UnknownState(name.to_string())),
        };
        Self::new(1, vec![a, b])
    }

    /// Haar-random pure state from complex Gaussian amplitudes.
    pub fn haar_random<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<Self> {
        let dim = 1usize << n_qubits;
        let amps = (0..dim)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        Self::normalized(n_qubits, amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `self ⊗ other`, with `self` on the leading qubits.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let amps = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Self::unchecked(self.n_qubits + other.n_qubits, amps)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::QubitCountMismatch { left: self.n_qubits, right: other.n_qubits });
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    /// `|<self|other>|²`.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Largest amplitude difference.
    pub fn distance(&self, other: &Self) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Assembles a register from disjoint fragments that together cover
    /// every qubit.
    pub fn from_fragments(n_qubits: usize, fragments: &[Fragment]) -> Result<Self> {
        let mut seen = vec![false; n_qubits];
        for frag in fragments {
            if frag.qubits.len() != frag.state.n_qubits {
                return Err(Error::QubitCountMismatch {
                    left: frag.qubits.len(),
                    right: frag.state.n_qubits,
                });
            }
            for &q in &frag.qubits {
                if q >= n_qubits {
                    return Err(Error::QubitOutOfRange { index: q, n_qubits });
                }
                if seen[q] {
                    return Err(Error::OverlappingQubits(frag.qubits.clone()));
                }
                seen[q] = true;
            }
        }
        if let Some(q) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidInput(format!("qubit {q} is not covered by any fragment")));
        }
        let dim = 1usize << n_qubits;
        let amps = (0..dim)
            .map(|b| {
                fragments.iter().fold(Complex64::new(1.0, 0.0), |acc, frag| {
                    let local = frag.qubits.iter().fold(0usize, |idx, &q| {
                        (idx << 1) | ((b >> (n_qubits - 1 - q)) & 1)
                    });
                    acc * frag.state.amplitudes[local]
                })
            })
            .collect();
        Self::new(n_qubits, amps)
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits {
            return Err(Error::QubitOutOfRange { index: q, n_qubits: self.n_qubits });
        }
        Ok(())
    }

    pub fn apply_local_unitary(&self, u: &SingleQubitUnitary, q: usize) -> Result<Self> {
        self.check_qubit(q)?;
        let bit = 1usize << (self.n_qubits - 1 - q);
        let m = u.matrix();
        let mut out = self.amplitudes.clone();
        for b in 0..self.dim() {
            if b & bit == 0 {
                let (a0, a1) = (self.amplitudes[b], self.amplitudes[b | bit]);
                out[b] = m[(0, 0)] * a0 + m[(0, 1)] * a1;
                out[b | bit] = m[(1, 0)] * a0 + m[(1, 1)] * a1;
            }
        }
        Ok(Self { amplitudes: out, n_qubits: self.n_qubits })
    }

    /// Swaps qubits `a` and `b` on the `control = 1` subspace.
    pub fn apply_cswap(&self, control: usize, a: usize, b: usize) -> Result<Self> {
        for q in [control, a, b] {
            self.check_qubit(q)?;
        }
        check_distinct(&[control, a, b])?;
        let n = self.n_qubits;
        let (cb, ab, bb) = (1usize << (n - 1 - control), 1usize << (n - 1 - a), 1usize << (n - 1 - b));
        let mut out = self.amplitudes.clone();
        for idx in 0..self.dim() {
            let (va, vb) = (idx & ab != 0, idx & bb != 0);
            if idx & cb != 0 && va != vb {
                out[idx ^ ab ^ bb] = self.amplitudes[idx];
            }
        }
        Ok(Self { amplitudes: out, n_qubits: n })
    }

    /// `H|ψ>` as a raw (unnormalized) amplitude vector.
    pub fn apply_operator(&self, h: &OperatorSum) -> Result<Vec<Complex64>> {
        if h.n_qubits() != self.n_qubits {
            return Err(Error::QubitCountMismatch { left: h.n_qubits(), right: self.n_qubits });
        }
        Ok(h.apply(&self.amplitudes))
    }

    pub fn expectation(&self, h: &OperatorSum) -> Result<f64> {
        if h.n_qubits() != self.n_qubits {
            return Err(Error::QubitCountMismatch { left: h.n_qubits(), right: self.n_qubits });
        }
        Ok(h.expectation(&self.amplitudes))
    }

    /// Reduced density matrix on `keep`, in the listed qubit order.
    pub fn reduced_density(&self, keep: &[usize]) -> Result<DMatrix<Complex64>> {
        if keep.is_empty() || keep.len() >= self.n_qubits {
            return Err(Error::InvalidInput(
                "kept qubits must form a non-empty proper subset".to_string(),
            ));
        }
        for &q in keep {
            self.check_qubit(q)?;
        }
        check_distinct(keep)?;
        let n = self.n_qubits;
        let rest: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
        let split = |b: usize, qubits: &[usize]| {
            qubits.iter().fold(0usize, |idx, &q| (idx << 1) | ((b >> (n - 1 - q)) & 1))
        };
        let dk = 1usize << keep.len();
        let dr = 1usize << rest.len();
        // amplitude matrix psi[k, r]
        let mut psi = DMatrix::zeros(dk, dr);
        for (b, &amp) in self.amplitudes.iter().enumerate() {
            psi[(split(b, keep), split(b, &rest))] = amp;
        }
        Ok(&psi * psi.adjoint())
    }

    /// `tr ρ²` of the reduced state on `keep`.
    pub fn reduced_purity(&self, keep: &[usize]) -> Result<f64> {
        let rho = self.reduced_density(keep)?;
        Ok(rho.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Amplitudes of the `qubit = value` slice, as a vector over the
    /// remaining qubits (not renormalized).
    pub fn slice(&self, qubit: usize, value: u8) -> Result<Vec<Complex64>> {
        self.check_qubit(qubit)?;
        let n = self.n_qubits;
        let bit = 1usize << (n - 1 - qubit);
        let want = if value == 0 { 0 } else { bit };
        Ok((0..self.dim())
            .filter(|b| b & bit == want)
            .map(|b| self.amplitudes[b])
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn named_states_are_normalized() {
        for name in ["0", "1", "+", "-", "+i", "-i"] {
            let s = StateVector::from_name(name).unwrap();
            assert!((s.norm() - 1.0).abs() < 1e-15);
        }
        assert!(StateVector::from_name("2").is_err());
    }

    #[test]
    fn x_on_zero_gives_one() {
        let s = StateVector::from_name("0").unwrap();
        let out = s.apply_local_unitary(&SingleQubitUnitary::pauli_x(), 0).unwrap();
        assert_eq!(out, StateVector::from_name("1").unwrap());
    }

    #[test]
    fn cswap_acts_only_when_control_set() {
        // |0>|01> is untouched, |1>|01> -> |1>|10>
        let s = StateVector::basis(3, 0b001).unwrap();
        assert_eq!(s.apply_cswap(0, 1, 2).unwrap(), s);
        let s = StateVector::basis(3, 0b101).unwrap();
        assert_eq!(s.apply_cswap(0, 1, 2).unwrap(), StateVector::basis(3, 0b110).unwrap());
        assert!(s.apply_cswap(0, 0, 2).is_err());
    }

    #[test]
    fn fragments_place_qubits_by_index() {
        let one = StateVector::from_name("1").unwrap();
        let zero = StateVector::from_name("0").unwrap();
        let s = StateVector::from_fragments(
            3,
            &[
                Fragment { qubits: vec![2], state: one.clone() },
                Fragment { qubits: vec![0, 1], state: zero.tensor(&one).unwrap() },
            ],
        )
        .unwrap();
        assert_eq!(s, StateVector::basis(3, 0b011).unwrap());
    }

    #[test]
    fn purity_of_product_and_bell_halves() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = StateVector::haar_random(1, &mut rng).unwrap();
        let b = StateVector::haar_random(2, &mut rng).unwrap();
        let p = a.tensor(&b).unwrap();
        assert!((p.reduced_purity(&[0]).unwrap() - 1.0).abs() < 1e-12);
        let h = FRAC_1_SQRT_2;
        let bell = StateVector::new(2, vec![c(h), c(0.0), c(0.0), c(h)]).unwrap();
        assert!((bell.reduced_purity(&[1]).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn slices_split_on_a_qubit() {
        let s = StateVector::basis(2, 0b10).unwrap();
        assert_eq!(s.slice(0, 1).unwrap(), vec![c(1.0), c(0.0)]);
        assert_eq!(s.slice(0, 0).unwrap(), vec![c(0.0), c(0.0)]);
    }
}
