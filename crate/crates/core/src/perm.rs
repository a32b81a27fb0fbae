//! Permutations of {0..n-1} with cached parity, plus lexicographic
//! enumeration of S_n and of its even/odd halves.

use crate::error::{GdetError, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::{FieldTag, Scalar};
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> i32 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// A permutation w of {0..n-1}, stored as the image array i -> w(i).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermutationSpec {
    images: Vec<usize>,
    parity: Parity,
}

fn parity_of(images: &[usize]) -> Parity {
    let mut inversions = 0usize;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] > images[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

impl PermutationSpec {
    pub fn identity(n: usize) -> PermutationSpec {
        PermutationSpec {
            images: (0..n).collect(),
            parity: Parity::Even,
        }
    }

    /// Builds from a 0-based image array, validating bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<PermutationSpec> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if im >= n {
                return Err(GdetError::BadPermutation(format!(
                    "image {im} out of range for n = {n}"
                )));
            }
            if seen[im] {
                return Err(GdetError::BadPermutation(format!("image {im} repeated")));
            }
            seen[im] = true;
        }
        let parity = parity_of(&images);
        Ok(PermutationSpec { images, parity })
    }

    /// Builds from 1-based images as they appear in JSON.
    pub fn from_one_based(images: &[usize]) -> Result<PermutationSpec> {
        let shifted: Vec<usize> = images
            .iter()
            .map(|&im| {
                im.checked_sub(1).ok_or_else(|| {
                    GdetError::BadPermutation("1-based image must be positive".into())
                })
            })
            .collect::<Result<_>>()?;
        PermutationSpec::from_images(shifted)
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<PermutationSpec> {
        if a >= n || b >= n || a == b {
            return Err(GdetError::BadPermutation(format!(
                "transposition ({a} {b}) invalid for n = {n}"
            )));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Ok(PermutationSpec {
            images,
            parity: Parity::Odd,
        })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based_images(&self) -> Vec<usize> {
        self.images.iter().map(|&im| im + 1).collect()
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn sign_scalar(&self, field: FieldTag) -> Scalar {
        Scalar::from_i64(self.parity.sign() as i64, field)
    }

    /// (self . other)(i) = self(other(i)).
    pub fn compose(&self, other: &PermutationSpec) -> PermutationSpec {
        assert_eq!(self.n(), other.n(), "composing permutations of unequal n");
        let images: Vec<usize> = (0..self.n()).map(|i| self.apply(other.apply(i))).collect();
        let parity = match (self.parity, other.parity) {
            (Parity::Even, p) | (p, Parity::Even) => p,
            (Parity::Odd, Parity::Odd) => Parity::Even,
        };
        PermutationSpec { images, parity }
    }

    pub fn inverse(&self) -> PermutationSpec {
        let mut images = vec![0usize; self.n()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im] = i;
        }
        PermutationSpec {
            images,
            parity: self.parity,
        }
    }

    /// Swaps two images, flipping parity. Used to condition samples.
    pub fn swap_images(&mut self, i: usize, j: usize) {
        assert_ne!(i, j);
        self.images.swap(i, j);
        self.parity = self.parity.flip();
    }

    /// The permutation matrix P = (delta_{i sigma(j)}): column j carries a
    /// one in row sigma(j), so P e_j = e_{sigma(j)}.
    pub fn to_matrix(&self, field: FieldTag) -> DenseMatrix {
        let n = self.n();
        DenseMatrix::from_fn(n, n, field, |i, j| {
            if i == self.apply(j) {
                Scalar::one(field)
            } else {
                Scalar::zero(field)
            }
        })
    }

    /// Uniform random permutation (Fisher-Yates), deterministic per rng.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> PermutationSpec {
        let mut images: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.random_range(0..=i);
            images.swap(i, j);
        }
        let parity = parity_of(&images);
        PermutationSpec { images, parity }
    }
}

/// Iterates all of S_n in lexicographic order of image arrays.
pub fn all_permutations(n: usize) -> PermIter {
    PermIter {
        next: Some((0..n).collect()),
    }
}

/// Permutations of the requested parity, lexicographic order.
pub fn permutations_with_parity(n: usize, parity: Parity) -> impl Iterator<Item = PermutationSpec> {
    all_permutations(n).filter(move |w| w.parity() == parity)
}

pub struct PermIter {
    next: Option<Vec<usize>>,
}

impl Iterator for PermIter {
    type Item = PermutationSpec;

    fn next(&mut self) -> Option<PermutationSpec> {
        let current = self.next.take()?;
        let parity = parity_of(&current);
        let mut succ = current.clone();
        // Standard next-permutation step.
        let n = succ.len();
        self.next = (|| {
            if n < 2 {
                return None;
            }
            let mut i = n - 1;
            while i > 0 && succ[i - 1] >= succ[i] {
                i -= 1;
            }
            if i == 0 {
                return None;
            }
            let mut j = n - 1;
            while succ[j] <= succ[i - 1] {
                j -= 1;
            }
            succ.swap(i - 1, j);
            succ[i..].reverse();
            Some(succ)
        })();
        Some(PermutationSpec {
            images: current,
            parity,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_small_cases() {
        assert_eq!(PermutationSpec::identity(4).parity(), Parity::Even);
        let t = PermutationSpec::transposition(4, 0, 1).unwrap();
        assert_eq!(t.parity(), Parity::Odd);
        let c3 = PermutationSpec::from_images(vec![1, 2, 0]).unwrap();
        assert_eq!(c3.parity(), Parity::Even);
    }

    #[test]
    fn from_images_validates() {
        assert!(PermutationSpec::from_images(vec![0, 0]).is_err());
        assert!(PermutationSpec::from_images(vec![0, 2]).is_err());
        assert!(PermutationSpec::from_one_based(&[1, 2, 3]).is_ok());
        assert!(PermutationSpec::from_one_based(&[0, 1, 2]).is_err());
    }

    #[test]
    fn lex_enumeration_counts_and_order() {
        let all: Vec<_> = all_permutations(4).collect();
        assert_eq!(all.len(), 24);
        assert_eq!(all[0].images(), &[0, 1, 2, 3]);
        assert_eq!(all[23].images(), &[3, 2, 1, 0]);
        for w in all.windows(2) {
            assert!(w[0].images() < w[1].images());
        }
        let even: Vec<_> = permutations_with_parity(4, Parity::Even).collect();
        let odd: Vec<_> = permutations_with_parity(4, Parity::Odd).collect();
        assert_eq!((even.len(), odd.len()), (12, 12));
    }

    #[test]
    fn compose_and_inverse() {
        let a = PermutationSpec::from_images(vec![2, 0, 1, 3]).unwrap();
        let b = PermutationSpec::transposition(4, 2, 3).unwrap();
        let ab = a.compose(&b);
        for i in 0..4 {
            assert_eq!(ab.apply(i), a.apply(b.apply(i)));
        }
        let inv = a.inverse();
        assert_eq!(a.compose(&inv), PermutationSpec::identity(4));
        assert_eq!(parity_of(ab.images()), ab.parity());
    }
}
