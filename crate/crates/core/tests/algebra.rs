//! Oracle-backed checks of the exact linear algebra layer: determinants,
//! permanents, parity splits and generalized minors against an independent
//! permutation-expansion oracle, plus the algebraic invariants that tie
//! them together.

mod common;

use common::{oracle_det, oracle_even_odd, oracle_gen_det, oracle_perm, random_small_matrix};
use gdet_core::{
    det_exact, even_odd_det, gen_det, gen_minor_matrix, permanent, rank1_factor, submatrix,
    DenseMatrix, EvenOddMethod, FieldTag, GenDetParams, PermanentMethod, PermutationSpec, Scalar,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gf() -> FieldTag {
    FieldTag::prime(10007).unwrap()
}

#[test]
fn det_matches_oracle_gf_n6() {
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    for _ in 0..10 {
        let a = random_small_matrix(&mut rng, 6, gf());
        assert_eq!(det_exact(&a).unwrap(), oracle_det(&a));
    }
}

#[test]
fn det_matches_oracle_q_with_rationals() {
    let q = FieldTag::Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(602);
    for _ in 0..10 {
        let a = DenseMatrix::from_fn(5, 5, q, |_, _| {
            let num = rng.random_range(-6i64..=6);
            let den = rng.random_range(1i64..=4);
            Scalar::parse(&format!("{num}/{den}"), q).unwrap()
        });
        assert_eq!(det_exact(&a).unwrap(), oracle_det(&a));
    }
}

#[test]
fn ryser_matches_naive_and_oracle_n7() {
    let mut rng = ChaCha8Rng::seed_from_u64(603);
    for field in [FieldTag::Rationals, gf()] {
        let a = random_small_matrix(&mut rng, 7, field);
        let ryser = permanent(&a, PermanentMethod::Ryser).unwrap();
        let naive = permanent(&a, PermanentMethod::Naive).unwrap();
        assert_eq!(ryser, naive);
        assert_eq!(ryser, oracle_perm(&a));
    }
}

#[test]
fn parity_split_matches_oracle_n6() {
    let mut rng = ChaCha8Rng::seed_from_u64(604);
    for field in [FieldTag::Rationals, gf()] {
        for _ in 0..5 {
            let a = random_small_matrix(&mut rng, 6, field);
            let split = even_odd_det(&a, EvenOddMethod::Split).unwrap();
            let naive = even_odd_det(&a, EvenOddMethod::Naive).unwrap();
            assert_eq!(split, naive);
            assert_eq!(split, oracle_even_odd(&a));
        }
    }
}

#[test]
fn gen_det_specializations() {
    let mut rng = ChaCha8Rng::seed_from_u64(605);
    for field in [FieldTag::Rationals, gf()] {
        let det_params = GenDetParams::from_i64(1, -1, field);
        let perm_params = GenDetParams::from_i64(1, 1, field);
        let even_params = GenDetParams::from_i64(1, 0, field);
        for _ in 0..5 {
            let a = random_small_matrix(&mut rng, 6, field);
            assert_eq!(gen_det(&det_params, &a).unwrap(), det_exact(&a).unwrap());
            assert_eq!(
                gen_det(&perm_params, &a).unwrap(),
                permanent(&a, PermanentMethod::Ryser).unwrap()
            );
            assert_eq!(
                gen_det(&even_params, &a).unwrap(),
                even_odd_det(&a, EvenOddMethod::Split).unwrap().0
            );
        }
    }
}

#[test]
fn gen_minor_matrix_against_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let field = FieldTag::prime(97).unwrap();
    let params = GenDetParams::from_i64(3, 11, field);
    let a = random_small_matrix(&mut rng, 4, field);
    for r in 1..=4usize {
        let minors = gen_minor_matrix(&params, &a, r).unwrap();
        // regenerate the lexicographic subset list independently
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        let mut stack: Vec<(Vec<usize>, usize)> = vec![(vec![], 0)];
        while let Some((prefix, start)) = stack.pop() {
            if prefix.len() == r {
                subsets.push(prefix);
                continue;
            }
            for c in (start..4).rev() {
                let mut next = prefix.clone();
                next.push(c);
                stack.push((next, c + 1));
            }
        }
        assert_eq!(minors.rows(), subsets.len());
        for (bi, rows) in subsets.iter().enumerate() {
            for (bj, cols) in subsets.iter().enumerate() {
                let sub = submatrix(&a, rows, cols).unwrap();
                let expect = oracle_gen_det(params.alpha(), params.beta(), &sub);
                assert_eq!(minors.get(bi, bj), &expect, "minor block ({bi},{bj})");
            }
        }
    }
}

#[test]
fn det_of_permuted_matrix_picks_up_signs() {
    let mut rng = ChaCha8Rng::seed_from_u64(607);
    let field = gf();
    for _ in 0..20 {
        let a = random_small_matrix(&mut rng, 5, field);
        let sigma = PermutationSpec::random(&mut rng, 5);
        let tau = PermutationSpec::random(&mut rng, 5);
        let paq = sigma
            .to_matrix(field)
            .mul(&a.mul(&tau.to_matrix(field)).unwrap())
            .unwrap();
        let sign = sigma.sign_scalar(field).mul(&tau.sign_scalar(field));
        assert_eq!(det_exact(&paq).unwrap(), sign.mul(&det_exact(&a).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn prop_ryser_equals_naive(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_small_matrix(&mut rng, n, FieldTag::Rationals);
        prop_assert_eq!(
            permanent(&a, PermanentMethod::Ryser).unwrap(),
            permanent(&a, PermanentMethod::Naive).unwrap()
        );
    }

    #[test]
    fn prop_even_odd_sum_and_difference(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for field in [FieldTag::Rationals, gf()] {
            let a = random_small_matrix(&mut rng, n, field);
            let (even, odd) = even_odd_det(&a, EvenOddMethod::Split).unwrap();
            prop_assert_eq!(even.add(&odd), permanent(&a, PermanentMethod::Ryser).unwrap());
            prop_assert_eq!(even.sub(&odd), det_exact(&a).unwrap());
        }
    }

    #[test]
    fn prop_rank1_factor_round_trip(seed in any::<u64>(), n in 1usize..=5, m in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = FieldTag::Rationals;
        let l: Vec<Scalar> = (0..n).map(|_| Scalar::random_nonzero(&mut rng, field)).collect();
        let r: Vec<Scalar> = (0..m).map(|_| Scalar::random_nonzero(&mut rng, field)).collect();
        let c = DenseMatrix::from_fn(n, m, field, |i, j| l[i].mul(&r[j]));
        let (lf, rf) = rank1_factor(&c).unwrap();
        prop_assert!(lf[0].is_one());
        for (i, li) in lf.iter().enumerate() {
            for (j, rj) in rf.iter().enumerate() {
                prop_assert_eq!(li.mul(rj), c.get(i, j).clone());
            }
        }
    }

    #[test]
    fn prop_gen_minor_r1_is_alpha_times_a(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = gf();
        let a = random_small_matrix(&mut rng, n, field);
        let params = GenDetParams::from_i64(5, 9, field);
        let r1 = gen_minor_matrix(&params, &a, 1).unwrap();
        prop_assert_eq!(r1, a.scale(&Scalar::from_i64(5, field)));
    }
}
