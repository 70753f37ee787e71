// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Actions of `exp(-i dt H)` for Hermitian `H`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

/// Largest Krylov dimension before the step is split in two.
const KRYLOV_MAX: usize = 40;

/// Local error target of one Krylov action.
const KRYLOV_TOL: f64 = 1e-13;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `exp(-i dt H)` by scaling-and-squaring Padé.
pub fn expm_dense(h: &DMatrix<Complex64>, dt: f64) -> DMatrix<Complex64> {
    (h * c(0.0, -dt)).exp()
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// `exp(-i dt H) v` from a Lanczos basis of `H` at `v`.
///
/// Steps whose Krylov error estimate stays above tolerance at the maximum
/// basis size are split into halves.
pub fn expm_krylov<F>(apply: &F, v: &[Complex64], dt: f64) -> Vec<Complex64>
where
    F: Fn(&[Complex64], &mut [Complex64]),
{
    match krylov_once(apply, v, dt) {
        Some(out) => out,
        None => {
            let half = expm_krylov(apply, v, dt / 2.0);
            expm_krylov(apply, &half, dt / 2.0)
        }
    }
}

fn krylov_once<F>(apply: &F, v: &[Complex64], dt: f64) -> Option<Vec<Complex64>>
where
    F: Fn(&[Complex64], &mut [Complex64]),
{
    let dim = v.len();
    let beta0 = norm(v);
    if beta0 == 0.0 {
        return Some(v.to_vec());
    }
    let mut basis: Vec<Vec<Complex64>> = vec![v.iter().map(|x| x / beta0).collect()];
    let mut alphas = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut w = vec![c(0.0, 0.0); dim];
    let scale = |alphas: &[f64]| 1.0 + alphas.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    for j in 0..KRYLOV_MAX.min(dim) {
        apply(&basis[j], &mut w);
        let alpha = dot(&basis[j], &w).re;
        alphas.push(alpha);
        for _ in 0..2 {
            for q in &basis {
                let overlap = dot(q, &w);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= overlap * qi;
                }
            }
        }
        let beta = norm(&w);
        let m = j + 1;
        let coeffs = small_exp(&alphas, &betas, dt);
        let exhausted = beta < 1e-12 * scale(&alphas) || m == dim;
        let error = beta0 * beta * dt.abs() * coeffs[m - 1].norm();
        if exhausted || error < KRYLOV_TOL {
            let mut out = vec![c(0.0, 0.0); dim];
            for (q, coef) in basis.iter().zip(&coeffs) {
                let weight = coef * beta0;
                for (o, qi) in out.iter_mut().zip(q) {
                    *o += weight * qi;
                }
            }
            return Some(out);
        }
        betas.push(beta);
        basis.push(w.iter().map(|x| x / beta).collect());
    }
    None
}

/// `exp(-i dt T) e_1` for the real symmetric tridiagonal `T`.
fn small_exp(alphas: &[f64], betas: &[f64], dt: f64) -> Vec<Complex64> {
    let m = alphas.len();
    let t = DMatrix::from_fn(m, m, |r, col| {
        if r == col {
            alphas[r]
        } else if r + 1 == col {
            betas[r]
        } else if col + 1 == r {
            betas[col]
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(t);
    let mut out = DVector::from_element(m, c(0.0, 0.0));
    for k in 0..m {
        let phase = Complex64::from_polar(1.0, -dt * eig.eigenvalues[k]) * eig.eigenvectors[(0, k)];
        for r in 0..m {
            out[r] += phase * eig.eigenvectors[(r, k)];
        }
    }
    out.iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, seed: u64) -> DMatrix<Complex64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = DMatrix::from_fn(n, n, |_, _| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
        &a + a.adjoint()
    }

    fn eigen_exp(h: &DMatrix<Complex64>, dt: f64) -> DMatrix<Complex64> {
        let eig = SymmetricEigen::new(h.clone());
        let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|e| Complex64::from_polar(1.0, -dt * e)));
        &eig.eigenvectors * d * eig.eigenvectors.adjoint()
    }

    #[test]
    fn dense_pade_matches_eigendecomposition() {
        let h = random_hermitian(12, 1);
        for dt in [0.01, 0.7, 5.0] {
            assert!((expm_dense(&h, dt) - eigen_exp(&h, dt)).norm() < 1e-10);
        }
    }

    #[test]
    fn krylov_matches_eigendecomposition_and_splits_long_steps() {
        let h = random_hermitian(200, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let v: Vec<Complex64> = (0..200).map(|_| c(rng.random(), rng.random())).collect();
        let apply = |x: &[Complex64], y: &mut [Complex64]| {
            let r = &h * DVector::from_column_slice(x);
            y.copy_from_slice(r.as_slice());
        };
        for dt in [0.05, 3.0] {
            let out = expm_krylov(&apply, &v, dt);
            let expected = eigen_exp(&h, dt) * DVector::from_column_slice(&v);
            let err: f64 = out.iter().zip(expected.iter()).map(|(a, b)| (a - b).norm_sqr()).sum();
            assert!(err.sqrt() < 1e-9 * norm(&v), "dt = {dt}: {}", err.sqrt());
            assert!((norm(&out) - norm(&v)).abs() < 1e-10 * norm(&v));
        }
    }
}
