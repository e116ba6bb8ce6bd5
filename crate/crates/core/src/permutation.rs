//! Exact permutations of basis indices.

use serde::Serialize;

use crate::error::{Error, Result};

/// A permutation of `0..dim`, stored as the image of each index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(dim: usize) -> Self {
        Self { images: (0..dim).collect() }
    }

    /// Checks that `images` hits every index of `0..images.len()` once.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for (i, &image) in images.iter().enumerate() {
            if image >= images.len() || std::mem::replace(&mut seen[image], true) {
                return Err(Error::NotABijection(format!("index {i} maps to {image}, which is out of range or already hit")));
            }
        }
        Ok(Self { images })
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize) -> Result<usize>) -> Result<Self> {
        Self::from_images((0..dim).map(f).collect::<Result<_>>()?)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self` applied after `first`.
    pub fn after(&self, first: &Permutation) -> Permutation {
        assert_eq!(self.dim(), first.dim(), "permutation dimensions differ");
        Self { images: first.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn pow(&self, exp: u64) -> Permutation {
        let mut result = Permutation::identity(self.dim());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = base.after(&result);
            }
            base = base.after(&base);
            e >>= 1;
        }
        result
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.dim()];
        for (i, &image) in self.images.iter().enumerate() {
            images[image] = i;
        }
        Self { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &image)| i == image)
    }
}
