// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense and Lanczos eigensolvers for the lowest part of a Hermitian spectrum.

use nalgebra::{ComplexField, DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Scalars the Lanczos iteration runs over (`f64` and `Complex64`).
pub trait Field: ComplexField<RealField = f64> + Copy {}

impl<T: ComplexField<RealField = f64> + Copy> Field for T {}

/// Solver choice and convergence settings for a gap computation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenPolicy {
    /// Largest matrix dimension solved densely.
    pub dense_limit: usize,
    /// Eigenvalues the iterative solver resolves.
    pub n_lowest: usize,
    /// Relative residual bound for Ritz pairs.
    pub tol: f64,
    pub max_iter: usize,
    /// Seed of the Lanczos start vector.
    pub seed: u64,
}

impl Default for EigenPolicy {
    fn default() -> Self {
        Self { dense_limit: 1024, n_lowest: 4, tol: 1e-10, max_iter: 600, seed: 0x5eed }
    }
}

impl EigenPolicy {
    pub fn iterative_only() -> Self {
        Self { dense_limit: 0, ..Self::default() }
    }
}

/// Lowest `k` eigenvalues of a dense Hermitian matrix, ascending.
pub fn lowest_dense<T: Field>(m: DMatrix<T>, k: usize) -> Vec<f64> {
    let mut values: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values.truncate(k);
    values
}

/// All eigenvalues of a dense Hermitian matrix, ascending.
pub fn eigenvalues_dense<T: Field>(m: DMatrix<T>) -> Vec<f64> {
    let n = m.nrows();
    lowest_dense(m, n)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LanczosResult {
    /// Converged Ritz values, ascending.
    pub values: Vec<f64>,
    /// Residual norms `‖A y - θ y‖` of the matching Ritz vectors.
    pub residuals: Vec<f64>,
    pub iterations: usize,
}

fn dot<T: Field>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x.conjugate() * y)
}

fn norm<T: Field>(a: &[T]) -> f64 {
    a.iter().map(|x| x.modulus_squared()).sum::<f64>().sqrt()
}

fn axpy<T: Field>(alpha: T, x: &[T], y: &mut [T]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi -= alpha * xi;
    }
}

/// Lowest eigenvalues of the Hermitian operator `apply` (`y = A x`) by
/// Lanczos with full reorthogonalization.
///
/// A single start vector sees one copy of each degenerate eigenvalue, so
/// `values` lists distinct levels of the Krylov-reachable spectrum.
pub fn lanczos_lowest<T, F>(dim: usize, apply: F, policy: &EigenPolicy) -> Result<LanczosResult>
where
    T: Field,
    F: Fn(&[T], &mut [T]),
{
    if dim == 0 {
        return Err(Error::InvalidInput("empty operator".into()));
    }
    let want = policy.n_lowest.clamp(1, dim);
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    let mut q: Vec<T> = (0..dim).map(|_| T::from_real(rng.random::<f64>() - 0.5)).collect();
    let q_norm = norm(&q);
    q.iter_mut().for_each(|x| *x = x.unscale(q_norm));

    let mut basis: Vec<Vec<T>> = Vec::new();
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut w = vec![T::zero(); dim];
    let max_iter = policy.max_iter.min(dim);
    let mut last = None;

    for j in 0..max_iter {
        apply(&q, &mut w);
        let alpha = dot(&q, &w).real();
        axpy(T::from_real(alpha), &q, &mut w);
        if let (Some(prev), Some(&beta)) = (basis.last(), betas.last()) {
            axpy(T::from_real(beta), prev, &mut w);
        }
        basis.push(q.clone());
        alphas.push(alpha);
        // two passes of classical Gram-Schmidt against the whole basis
        for _ in 0..2 {
            for v in &basis {
                let c = dot(v, &w);
                axpy(c, v, &mut w);
            }
        }
        let beta = norm(&w);
        let m = j + 1;
        let exhausted = beta < 1e-12 * (1.0 + alphas.iter().fold(0.0f64, |a, x| a.max(x.abs())));
        if m % 8 == 0 || m == max_iter || exhausted {
            let (values, residuals) = ritz(&alphas, &betas, beta);
            let enough = values.len() >= want
                && values[..want]
                    .iter()
                    .zip(&residuals[..want])
                    .all(|(v, r)| *r <= policy.tol * v.abs().max(1.0));
            if enough || exhausted {
                let k = want.min(values.len());
                return Ok(LanczosResult {
                    values: values[..k].to_vec(),
                    residuals: residuals[..k].to_vec(),
                    iterations: m,
                });
            }
            last = Some(residuals.get(want - 1).copied().unwrap_or(f64::INFINITY));
        }
        betas.push(beta);
        q = w.iter().map(|x| x.unscale(beta)).collect();
    }
    Err(Error::NotConverged { iterations: max_iter, residual: last.unwrap_or(f64::INFINITY) })
}

/// Ritz values of the tridiagonal `T_m` and their residual estimates
/// `β_m |s_{m,i}|`, ascending.
fn ritz(alphas: &[f64], betas: &[f64], beta_next: f64) -> (Vec<f64>, Vec<f64>) {
    let m = alphas.len();
    let t = DMatrix::from_fn(m, m, |r, c| {
        if r == c {
            alphas[r]
        } else if r + 1 == c {
            betas[r]
        } else if c + 1 == r {
            betas[c]
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(t);
    let mut pairs: Vec<(f64, f64)> = (0..m)
        .map(|i| (eig.eigenvalues[i], beta_next * eig.eigenvectors[(m - 1, i)].abs()))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Lowest and highest eigenvalue of `apply`, via Lanczos on `A` and `-A`.
pub fn lanczos_extremes<T, F>(dim: usize, apply: F, policy: &EigenPolicy) -> Result<(f64, f64)>
where
    T: Field,
    F: Fn(&[T], &mut [T]),
{
    let single = EigenPolicy { n_lowest: 1, ..*policy };
    let low = lanczos_lowest(dim, &apply, &single)?.values[0];
    let neg = |x: &[T], y: &mut [T]| {
        apply(x, y);
        y.iter_mut().for_each(|v| *v = -*v);
    };
    let high = -lanczos_lowest(dim, neg, &single)?.values[0];
    Ok((low, high))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn random_symmetric(n: usize, seed: u64) -> DMatrix<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = DMatrix::from_fn(n, n, |_, _| rng.random::<f64>() - 0.5);
        &a + a.transpose()
    }

    #[test]
    fn lanczos_matches_dense_on_random_matrix() {
        let m = random_symmetric(120, 3);
        let dense = lowest_dense(m.clone(), 4);
        let apply = |x: &[f64], y: &mut [f64]| {
            let v = &m * nalgebra::DVector::from_column_slice(x);
            y.copy_from_slice(v.as_slice());
        };
        let lz = lanczos_lowest(120, apply, &EigenPolicy::default()).unwrap();
        for (a, b) in dense.iter().zip(&lz.values) {
            assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        }
    }

    #[test]
    fn complex_hermitian_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = DMatrix::from_fn(40, 40, |_, _| Complex64::new(rng.random(), rng.random()));
        let h = &a + a.adjoint();
        let all = eigenvalues_dense(h.clone());
        let apply = |x: &[Complex64], y: &mut [Complex64]| {
            let v = &h * nalgebra::DVector::from_column_slice(x);
            y.copy_from_slice(v.as_slice());
        };
        let (lo, hi) = lanczos_extremes(40, apply, &EigenPolicy::default()).unwrap();
        assert!((lo - all[0]).abs() < 1e-8);
        assert!((hi - all[39]).abs() < 1e-8);
    }

    #[test]
    fn exhausted_krylov_space_returns_exact_levels() {
        // diagonal with a repeated level: Krylov space has dimension 3
        let d = [1.0, 2.0, 2.0, 5.0];
        let apply = |x: &[f64], y: &mut [f64]| {
            for i in 0..4 {
                y[i] = d[i] * x[i];
            }
        };
        let lz = lanczos_lowest(4, apply, &EigenPolicy::default()).unwrap();
        assert!((lz.values[0] - 1.0).abs() < 1e-12);
        assert!((lz.values[1] - 2.0).abs() < 1e-12);
    }
}
