//! Sparse integer matrices used to build operators from their factors
//! without any floating-point rounding.

use std::collections::BTreeMap;

use crate::permutation::Permutation;

/// A square matrix with integer entries; rows hold only non-zero entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: Vec<BTreeMap<usize, i64>>,
}

impl ExactMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { rows: vec![BTreeMap::new(); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.rows[i].insert(i, 1);
        }
        m
    }

    /// Matrix with `[p(i), i] = 1`.
    pub fn from_permutation(p: &Permutation) -> Self {
        let mut m = Self::zeros(p.dim());
        for (col, &row) in p.images().iter().enumerate() {
            m.rows[row].insert(col, 1);
        }
        m
    }

    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut m = Self::zeros(dim);
        for (r, c, v) in entries {
            m.set(r, c, v);
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.rows[row].get(&col).copied().unwrap_or(0)
    }

    pub fn set(&mut self, row: usize, col: usize, value: i64) {
        if value == 0 {
            self.rows[row].remove(&col);
        } else {
            self.rows[row].insert(col, value);
        }
    }

    /// Non-zero entries as `(row, col, value)`, row-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(&c, &v)| (r, c, v)))
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        self.combine(other, -1)
    }

    fn combine(&self, other: &ExactMatrix, sign: i64) -> ExactMatrix {
        assert_eq!(self.dim(), other.dim(), "matrix dimensions differ");
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            let cur = out.get(r, c);
            out.set(r, c, cur + sign * v);
        }
        out
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.dim(), other.dim(), "matrix dimensions differ");
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for (&mid, &a) in row {
                    for (&c, &b) in &other.rows[mid] {
                        *acc.entry(c).or_insert(0) += a * b;
                    }
                }
                acc.retain(|_, v| *v != 0);
                acc
            })
            .collect();
        ExactMatrix { rows }
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = Self::zeros(self.dim());
        for (r, c, v) in self.entries() {
            out.rows[c].insert(r, v);
        }
        out
    }

    /// Kronecker product `self ⊗ other`; `other` indexes the fast (low) digits.
    pub fn kron(&self, other: &ExactMatrix) -> ExactMatrix {
        let n = other.dim();
        let mut out = Self::zeros(self.dim() * n);
        for (r1, c1, v1) in self.entries() {
            for (r2, c2, v2) in other.entries() {
                out.rows[r1 * n + r2].insert(c1 * n + c2, v1 * v2);
            }
        }
        out
    }

    pub fn pow(&self, exp: u64) -> ExactMatrix {
        let mut out = Self::identity(self.dim());
        for _ in 0..exp {
            out = self.mul(&out);
        }
        out
    }

    /// `Some` when every row and column holds a single entry equal to 1.
    pub fn as_permutation(&self) -> Option<Permutation> {
        let mut images = vec![usize::MAX; self.dim()];
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() != 1 {
                return None;
            }
            let (&c, &v) = row.iter().next()?;
            if v != 1 || images[c] != usize::MAX {
                return None;
            }
            images[c] = r;
        }
        Permutation::from_images(images).ok()
    }

    /// Largest absolute entry of `selfᵀ·self − I`.
    pub fn orthogonality_residual(&self) -> i64 {
        let gram = self.transpose().mul(self).sub(&Self::identity(self.dim()));
        gram.entries().map(|(_, _, v)| v.abs()).max().unwrap_or(0)
    }
}
