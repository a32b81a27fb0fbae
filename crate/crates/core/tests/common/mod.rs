//! Shared test support: an independent permutation-expansion oracle and
//! small deterministic matrix generators. The oracle enumerates column
//! choices recursively and tracks parity by counting inversions as it
//! assigns, so it shares no code with the library's permutation iterator
//! or elimination routines.

#![allow(dead_code)]

use gdet_core::{DenseMatrix, FieldTag, Scalar};
use rand::Rng;

fn expand(
    a: &DenseMatrix,
    row: usize,
    used: &mut [bool],
    odd_so_far: bool,
    prod: &Scalar,
    even_acc: &mut Scalar,
    odd_acc: &mut Scalar,
) {
    let n = a.rows();
    if row == n {
        if odd_so_far {
            *odd_acc = odd_acc.add(prod);
        } else {
            *even_acc = even_acc.add(prod);
        }
        return;
    }
    for c in 0..n {
        if used[c] {
            continue;
        }
        let inversions_added = (c + 1..n).filter(|&k| used[k]).count();
        used[c] = true;
        let next = prod.mul(a.get(row, c));
        expand(
            a,
            row + 1,
            used,
            odd_so_far ^ (inversions_added % 2 == 1),
            &next,
            even_acc,
            odd_acc,
        );
        used[c] = false;
    }
}

/// (even permutation sum, odd permutation sum) by direct expansion.
pub fn oracle_even_odd(a: &DenseMatrix) -> (Scalar, Scalar) {
    let n = a.rows();
    assert_eq!(n, a.cols());
    let field = a.field();
    let mut even = Scalar::zero(field);
    let mut odd = Scalar::zero(field);
    let mut used = vec![false; n];
    expand(
        a,
        0,
        &mut used,
        false,
        &Scalar::one(field),
        &mut even,
        &mut odd,
    );
    (even, odd)
}

pub fn oracle_gen_det(alpha: &Scalar, beta: &Scalar, a: &DenseMatrix) -> Scalar {
    let (even, odd) = oracle_even_odd(a);
    alpha.mul(&even).add(&beta.mul(&odd))
}

pub fn oracle_det(a: &DenseMatrix) -> Scalar {
    let (even, odd) = oracle_even_odd(a);
    even.sub(&odd)
}

pub fn oracle_perm(a: &DenseMatrix) -> Scalar {
    let (even, odd) = oracle_even_odd(a);
    even.add(&odd)
}

/// Random matrix with small entries: integers in [-4, 4] over Q, uniform
/// residues over GF(p).
pub fn random_small_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, field: FieldTag) -> DenseMatrix {
    DenseMatrix::from_fn(n, n, field, |_, _| match field {
        FieldTag::Rationals => Scalar::from_i64(rng.random_range(-4i64..=4), field),
        FieldTag::Prime(p) => Scalar::from_i64(rng.random_range(0..p as i64), field),
    })
}
