// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Compressed sparse row matrices for operator materialization.

use std::ops::{AddAssign, Mul};

use num_complex::Complex64;

/// Scalars a [`Csr`] can hold.
pub trait Scalar: Copy + Default + AddAssign + Mul<Output = Self> + Send + Sync + 'static {
    fn magnitude(self) -> f64;
}

impl Scalar for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Csr<T> {
    dim: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    data: Vec<T>,
}

impl<T: Scalar> Csr<T> {
    /// Builds from coordinate triplets; duplicates are summed and entries
    /// with magnitude below `drop_below` are discarded.
    pub fn from_triplets(dim: usize, mut triplets: Vec<(usize, usize, T)>, drop_below: f64) -> Self {
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut indptr = vec![0usize; dim + 1];
        let mut indices = Vec::with_capacity(triplets.len());
        let mut data: Vec<T> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        let mut row_counts = vec![0usize; dim];
        for (r, c, v) in triplets {
            debug_assert!(r < dim && c < dim);
            if last == Some((r, c)) {
                *data.last_mut().expect("entry present") += v;
            } else {
                indices.push(c);
                data.push(v);
                row_counts[r] += 1;
                last = Some((r, c));
            }
        }
        // second pass drops cancelled entries
        let mut out_indices = Vec::with_capacity(indices.len());
        let mut out_data = Vec::with_capacity(data.len());
        let mut pos = 0;
        for (r, &count) in row_counts.iter().enumerate() {
            for _ in 0..count {
                if data[pos].magnitude() > drop_below {
                    out_indices.push(indices[pos]);
                    out_data.push(data[pos]);
                }
                pos += 1;
            }
            indptr[r + 1] = out_indices.len();
        }
        Self { dim, indptr, indices: out_indices, data: out_data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.data.len()
    }

    /// `y = A x`.
    pub fn apply_into(&self, x: &[T], y: &mut [T]) {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        for (r, yr) in y.iter_mut().enumerate() {
            let mut acc = T::default();
            for k in self.indptr[r]..self.indptr[r + 1] {
                acc += self.data[k] * x[self.indices[k]];
            }
            *yr = acc;
        }
    }

    /// `y += w A x`.
    pub fn apply_scaled_add(&self, weight: T, x: &[T], y: &mut [T]) {
        for (r, yr) in y.iter_mut().enumerate() {
            let mut acc = T::default();
            for k in self.indptr[r]..self.indptr[r + 1] {
                acc += self.data[k] * x[self.indices[k]];
            }
            *yr += weight * acc;
        }
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        let mut y = vec![T::default(); self.dim];
        self.apply_into(x, &mut y);
        y
    }

    /// Row-wise iteration over stored `(col, value)` pairs.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        (self.indptr[r]..self.indptr[r + 1]).map(move |k| (self.indices[k], self.data[k]))
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<T>> {
        let mut rows = vec![vec![T::default(); self.dim]; self.dim];
        for (r, row) in rows.iter_mut().enumerate() {
            for (c, v) in self.row(r) {
                row[c] += v;
            }
        }
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_merge_and_cancellations_drop() {
        let m = Csr::from_triplets(
            3,
            vec![(0, 1, 2.0), (0, 1, 1.0), (2, 2, 1.0), (2, 2, -1.0), (1, 0, 4.0)],
            1e-14,
        );
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.apply(&[1.0, 1.0, 1.0]), vec![3.0, 4.0, 0.0]);
        let mut y = vec![1.0; 3];
        m.apply_scaled_add(2.0, &[1.0, 0.0, 0.0], &mut y);
        assert_eq!(y, vec![1.0, 9.0, 1.0]);
    }
}
