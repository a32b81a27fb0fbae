//! Determinants, permanents and their common generalization
//! alpha*(even part) + beta*(odd part), all in exact arithmetic.
//!
//! The even part of a square matrix sums the diagonal products over even
//! permutations only, the odd part over odd permutations; det and perm are
//! the (1,-1) and (1,1) specializations.

use itertools::Itertools;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Zero};

use crate::error::{GdetError, Result};
use crate::matrix::{submatrix, DenseMatrix};
use crate::perm::{all_permutations, Parity};
use crate::scalar::{FieldTag, Scalar};

/// Ryser's inclusion-exclusion permanent is quoted up to this size.
pub const RYSER_CAP: usize = 20;
/// Permutation-sum routines (naive permanent, naive parity split) stop here.
pub const NAIVE_CAP: usize = 9;

/// The (alpha, beta) pair weighting the even and odd permutation sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenDetParams {
    alpha: Scalar,
    beta: Scalar,
}

/// How an (alpha, beta) pair relates to the alpha != +/-beta hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneracy {
    /// alpha != beta and alpha != -beta.
    Neither,
    /// alpha = beta != 0 (the permanent regime).
    Equal,
    /// alpha = -beta != 0 (the determinant regime).
    OppositeEqual,
    /// alpha = beta = 0.
    BothZero,
}

impl GenDetParams {
    pub fn new(alpha: Scalar, beta: Scalar) -> Result<GenDetParams> {
        if alpha.field() != beta.field() {
            return Err(GdetError::FieldMismatch(alpha.field(), beta.field()));
        }
        Ok(GenDetParams { alpha, beta })
    }

    pub fn from_i64(alpha: i64, beta: i64, field: FieldTag) -> GenDetParams {
        GenDetParams {
            alpha: Scalar::from_i64(alpha, field),
            beta: Scalar::from_i64(beta, field),
        }
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    pub fn beta(&self) -> &Scalar {
        &self.beta
    }

    pub fn field(&self) -> FieldTag {
        self.alpha.field()
    }

    /// Swaps the roles of alpha and beta.
    pub fn swapped(&self) -> GenDetParams {
        GenDetParams {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    pub fn degenerate(&self) -> Degeneracy {
        let zero = self.alpha.is_zero() && self.beta.is_zero();
        if zero {
            Degeneracy::BothZero
        } else if self.alpha == self.beta {
            Degeneracy::Equal
        } else if self.alpha == self.beta.neg() {
            Degeneracy::OppositeEqual
        } else {
            Degeneracy::Neither
        }
    }

    pub fn is_zero_pair(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero()
    }
}

/// Exact determinant: fraction-free (Bareiss) elimination over Q after
/// clearing row denominators, plain elimination over GF(p).
pub fn det_exact(a: &DenseMatrix) -> Result<Scalar> {
    let n = a.require_square()?;
    if n == 0 {
        return Ok(Scalar::one(a.field()));
    }
    match a.field() {
        FieldTag::Rationals => det_bareiss_q(a, n),
        FieldTag::Prime(p) => det_elim_gf(a, n, p),
    }
}

fn det_bareiss_q(a: &DenseMatrix, n: usize) -> Result<Scalar> {
    // Scale each row to integers; det picks up the product of the scales.
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    let mut scale = BigInt::one();
    for i in 0..n {
        let mut lcm = BigInt::one();
        for j in 0..n {
            if let Scalar::Rat(r) = a.get(i, j) {
                lcm = lcm.lcm(r.denom());
            }
        }
        let row = (0..n)
            .map(|j| match a.get(i, j) {
                Scalar::Rat(r) => r.numer() * (&lcm / r.denom()),
                Scalar::Mod { .. } => unreachable!(),
            })
            .collect();
        m.push(row);
        scale *= lcm;
    }

    let mut sign = 1i64;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(Scalar::zero(FieldTag::Rationals)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev; // exact by Bareiss' identity
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det_int = &m[n - 1][n - 1] * BigInt::from(sign);
    Ok(Scalar::Rat(BigRational::new(det_int, scale)))
}

fn det_elim_gf(a: &DenseMatrix, n: usize, p: u64) -> Result<Scalar> {
    let field = FieldTag::Prime(p);
    let mut m = a.clone();
    let mut det = Scalar::one(field);
    for k in 0..n {
        let pivot_row = match (k..n).find(|&r| !m.get(r, k).is_zero()) {
            Some(r) => r,
            None => return Ok(Scalar::zero(field)),
        };
        if pivot_row != k {
            for j in 0..n {
                let tmp = m.get(k, j).clone();
                m.set(k, j, m.get(pivot_row, j).clone());
                m.set(pivot_row, j, tmp);
            }
            det = det.neg();
        }
        let pivot = m.get(k, k).clone();
        det = det.mul(&pivot);
        let pinv = pivot.inv()?;
        for i in k + 1..n {
            if !m.get(i, k).is_zero() {
                let factor = m.get(i, k).mul(&pinv);
                for j in k..n {
                    m.set(i, j, m.get(i, j).sub(&factor.mul(m.get(k, j))));
                }
            }
        }
    }
    Ok(det)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermanentMethod {
    Ryser,
    Naive,
}

pub fn permanent(a: &DenseMatrix, method: PermanentMethod) -> Result<Scalar> {
    let cap = match method {
        PermanentMethod::Ryser => RYSER_CAP,
        PermanentMethod::Naive => NAIVE_CAP,
    };
    permanent_with_cap(a, method, cap)
}

pub fn permanent_with_cap(a: &DenseMatrix, method: PermanentMethod, cap: usize) -> Result<Scalar> {
    let n = a.require_square()?;
    if n > cap {
        return Err(GdetError::SizeCapExceeded {
            what: "permanent",
            n,
            cap,
        });
    }
    match method {
        PermanentMethod::Ryser => Ok(ryser(a, n)),
        PermanentMethod::Naive => Ok(permutation_sum(a, n, None)),
    }
}

/// Ryser's formula with Gray-code subset stepping:
/// perm(A) = (-1)^n sum_{S != 0} (-1)^{|S|} prod_i sum_{j in S} a_{ij}.
fn ryser(a: &DenseMatrix, n: usize) -> Scalar {
    let field = a.field();
    if n == 0 {
        return Scalar::one(field);
    }
    let mut sums: Vec<Scalar> = vec![Scalar::zero(field); n];
    let mut acc = Scalar::zero(field);
    let mut popcount = 0u32;
    let mut prev_gray = 0u64;
    for g in 1u64..(1u64 << n) {
        let gray = g ^ (g >> 1);
        let changed = gray ^ prev_gray;
        let j = changed.trailing_zeros() as usize;
        let added = gray & changed != 0;
        for (i, s) in sums.iter_mut().enumerate() {
            *s = if added {
                s.add(a.get(i, j))
            } else {
                s.sub(a.get(i, j))
            };
        }
        popcount = if added { popcount + 1 } else { popcount - 1 };
        prev_gray = gray;

        let mut prod = Scalar::one(field);
        for s in &sums {
            prod = prod.mul(s);
        }
        if popcount % 2 == 0 {
            acc = acc.sub(&prod);
        } else {
            acc = acc.add(&prod);
        }
    }
    // The accumulated signs above are (-1)^{|S|+1}; fold in (-1)^{n+1}.
    if n % 2 == 0 {
        acc.neg()
    } else {
        acc
    }
}

/// Sum of diagonal products over S_n, optionally restricted to one parity.
fn permutation_sum(a: &DenseMatrix, n: usize, parity: Option<Parity>) -> Scalar {
    let field = a.field();
    let mut acc = Scalar::zero(field);
    for w in all_permutations(n) {
        if let Some(p) = parity {
            if w.parity() != p {
                continue;
            }
        }
        let mut prod = Scalar::one(field);
        for i in 0..n {
            prod = prod.mul(a.get(i, w.apply(i)));
        }
        acc = acc.add(&prod);
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvenOddMethod {
    /// (perm + det)/2 and (perm - det)/2; needs characteristic != 2.
    Split,
    /// Direct permutation sums partitioned by parity.
    Naive,
}

/// Returns (even part, odd part).
pub fn even_odd_det(a: &DenseMatrix, method: EvenOddMethod) -> Result<(Scalar, Scalar)> {
    let n = a.require_square()?;
    match method {
        EvenOddMethod::Split => {
            if a.field().characteristic() == 2 {
                return Err(GdetError::CharacteristicTwo);
            }
            let d = det_exact(a)?;
            let q = permanent(a, PermanentMethod::Ryser)?;
            let half = Scalar::from_i64(2, a.field()).inv()?;
            Ok((q.add(&d).mul(&half), q.sub(&d).mul(&half)))
        }
        EvenOddMethod::Naive => {
            if n > NAIVE_CAP {
                return Err(GdetError::SizeCapExceeded {
                    what: "parity-partitioned permutation sum",
                    n,
                    cap: NAIVE_CAP,
                });
            }
            Ok((
                permutation_sum(a, n, Some(Parity::Even)),
                permutation_sum(a, n, Some(Parity::Odd)),
            ))
        }
    }
}

/// alpha*(even part) + beta*(odd part).
pub fn gen_det(params: &GenDetParams, a: &DenseMatrix) -> Result<Scalar> {
    if params.field() != a.field() {
        return Err(GdetError::FieldMismatch(params.field(), a.field()));
    }
    let (even, odd) = even_odd_det(a, EvenOddMethod::Split)?;
    Ok(params.alpha().mul(&even).add(&params.beta().mul(&odd)))
}

/// The C(n,r) x C(n,r) matrix of generalized r-minors, rows and columns
/// indexed by the r-subsets of row/column indices in lexicographic order.
pub fn gen_minor_matrix(params: &GenDetParams, a: &DenseMatrix, r: usize) -> Result<DenseMatrix> {
    let n = a.require_square()?;
    if r < 1 || r > n {
        return Err(GdetError::IndexOutOfRange { index: r, dim: n });
    }
    let subsets: Vec<Vec<usize>> = (0..n).combinations(r).collect();
    let m = subsets.len();
    let mut entries = Vec::with_capacity(m * m);
    for rows in &subsets {
        for cols in &subsets {
            let sub = submatrix(a, rows, cols)?;
            entries.push(gen_det(params, &sub)?);
        }
    }
    DenseMatrix::new(m, m, a.field(), entries)
}
