//! Stabilizer membership testing, canonical-form extraction and member
//! sampling for the generalized determinant, together with the
//! multiplicative coefficient equation systems that drive the analysis.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::det::{gen_det, Degeneracy, GenDetParams};
use crate::error::{GdetError, Result};
use crate::matrix::{rank1_factor, DenseMatrix};
use crate::operator::{from_monomial, unit_images, LinearOperator, MonomialAnalysis, MonomialSpec};
use crate::perm::{all_permutations, Parity, PermutationSpec};
use crate::poly::build_gen_det_poly;
use crate::scalar::{FieldTag, Scalar};

/// Symbolic membership is quoted up to this matrix size.
pub const SYMBOLIC_CAP: usize = 6;
/// Product-equation enumeration stops at this size (n! permutations).
pub const PRODUCT_EQ_CAP: usize = 8;

/// A member of the stabilizer in normal form: l_1 = 1, matched parities,
/// unit coefficient product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalStabElement {
    spec: MonomialSpec,
}

impl CanonicalStabElement {
    pub fn new(spec: MonomialSpec) -> Result<CanonicalStabElement> {
        if !spec.l[0].is_one() {
            return Err(GdetError::ConstraintViolated(format!(
                "canonical form requires l_1 = 1, got {}",
                spec.l[0]
            )));
        }
        if spec.sigma.parity() != spec.tau.parity() {
            return Err(GdetError::ParityViolation);
        }
        let mut prod = Scalar::one(spec.field());
        for v in spec.l.iter().chain(spec.r.iter()) {
            prod = prod.mul(v);
        }
        if !prod.is_one() {
            return Err(GdetError::ProductNotOne {
                product: prod.to_string(),
            });
        }
        Ok(CanonicalStabElement { spec })
    }

    pub fn spec(&self) -> &MonomialSpec {
        &self.spec
    }

    pub fn into_spec(self) -> MonomialSpec {
        self.spec
    }

    pub fn to_operator(&self) -> LinearOperator {
        from_monomial(&self.spec).expect("canonical spec is always realizable")
    }
}

/// Which permutation set a product equation ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquationMode {
    Even,
    Odd,
    Full,
}

impl EquationMode {
    fn admits(self, parity: Parity) -> bool {
        match self {
            EquationMode::Even => parity == Parity::Even,
            EquationMode::Odd => parity == Parity::Odd,
            EquationMode::Full => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipEvidence {
    Symbolic,
    Randomized {
        trials: u32,
        /// Schwartz-Zippel bound "(n/p)^trials" over GF(p); None over Q,
        /// where integer sampling carries no rigorous bound.
        error_bound: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub member: bool,
    pub evidence: MembershipEvidence,
    /// An evaluation point exhibiting the mismatch, when one was found.
    pub witness: Option<DenseMatrix>,
}

fn check_stab_inputs(t: &LinearOperator, params: &GenDetParams) -> Result<()> {
    if params.is_zero_pair() {
        return Err(GdetError::ZeroParams);
    }
    if t.field() != params.field() {
        return Err(GdetError::FieldMismatch(t.field(), params.field()));
    }
    Ok(())
}

/// Structural test: substitutes T into the symbolic generalized determinant
/// and compares polynomials.
pub fn membership_symbolic(t: &LinearOperator, params: &GenDetParams) -> Result<MembershipVerdict> {
    membership_symbolic_with_cap(t, params, crate::poly::DEFAULT_EXPANSION_CAP)
}

/// As [`membership_symbolic`] with an explicit substitution term cap.
pub fn membership_symbolic_with_cap(
    t: &LinearOperator,
    params: &GenDetParams,
    term_cap: usize,
) -> Result<MembershipVerdict> {
    check_stab_inputs(t, params)?;
    let n = t.n();
    if n > SYMBOLIC_CAP {
        return Err(GdetError::SizeCapExceeded {
            what: "symbolic membership",
            n,
            cap: SYMBOLIC_CAP,
        });
    }
    let f = build_gen_det_poly(n, params)?;
    let g = crate::poly::substitute_linear_with_cap(&f, t, term_cap)?;
    Ok(MembershipVerdict {
        member: g == f,
        evidence: MembershipEvidence::Symbolic,
        witness: None,
    })
}

/// Probabilistic test: compares values at pseudorandom points. Over GF(p)
/// (p > n required) a false "member" survives each trial with probability
/// at most n/p.
pub fn membership_randomized(
    t: &LinearOperator,
    params: &GenDetParams,
    trials: u32,
    seed: u64,
) -> Result<MembershipVerdict> {
    check_stab_inputs(t, params)?;
    let n = t.n();
    let field = t.field();
    let error_bound = match field {
        FieldTag::Prime(p) => {
            if p <= n as u64 {
                return Err(GdetError::BadField(format!(
                    "randomized test needs p > n, got p = {p}, n = {n}"
                )));
            }
            Some(format!("({n}/{p})^{trials}"))
        }
        FieldTag::Rationals => None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let a = DenseMatrix::random(&mut rng, n, n, field);
        let lhs = gen_det(params, &t.apply(&a)?)?;
        let rhs = gen_det(params, &a)?;
        if lhs != rhs {
            return Ok(MembershipVerdict {
                member: false,
                evidence: MembershipEvidence::Randomized {
                    trials,
                    error_bound,
                },
                witness: Some(a),
            });
        }
    }
    Ok(MembershipVerdict {
        member: true,
        evidence: MembershipEvidence::Randomized {
            trials,
            error_bound,
        },
        witness: None,
    })
}

/// Walks the proof pipeline: monomial unit images, direct-vs-transpose
/// shape, parity, rank-1 coefficients, unit product, and a final exact
/// round-trip. Violations are reported in the order the pipeline finds
/// them rather than as a bare non-member verdict.
pub fn extract_canonical(
    t: &LinearOperator,
    params: &GenDetParams,
) -> Result<CanonicalStabElement> {
    if params.degenerate() != Degeneracy::Neither {
        return Err(GdetError::DegenerateParams);
    }
    if t.field() != params.field() {
        return Err(GdetError::FieldMismatch(t.field(), params.field()));
    }
    let n = t.n();
    assert!(n >= 3, "canonical extraction is defined for n >= 3");

    let grid = unit_images(t);
    let (mu, lambda, c) = match grid.analysis {
        MonomialAnalysis::NonMonomial {
            i,
            j,
            nonzero_count,
        } => {
            return Err(GdetError::NotMonomial {
                i,
                j,
                count: nonzero_count,
            })
        }
        MonomialAnalysis::Monomial { mu, lambda, c } => (mu, lambda, c),
    };

    // Shape decision: a direct operator sends row i to a fixed row mu(i)
    // and column j to a fixed column lambda(j); a transpose operator swaps
    // the dependencies.
    let direct = (0..n)
        .all(|i| (0..n).all(|j| mu[i * n + j] == mu[i * n] && lambda[i * n + j] == lambda[j]));
    let transposed = || {
        (0..n).all(|i| (0..n).all(|j| mu[i * n + j] == mu[j] && lambda[i * n + j] == lambda[i * n]))
    };
    let (transpose, sigma, tau) = if direct {
        let sigma = PermutationSpec::from_images((0..n).map(|i| mu[i * n]).collect())?;
        let tau_inv = PermutationSpec::from_images((0..n).map(|j| lambda[j]).collect())?;
        (false, sigma, tau_inv.inverse())
    } else if transposed() {
        let sigma = PermutationSpec::from_images((0..n).map(|j| mu[j]).collect())?;
        let tau_inv = PermutationSpec::from_images((0..n).map(|i| lambda[i * n]).collect())?;
        (true, sigma, tau_inv.inverse())
    } else {
        // Each image is a unit matrix but the landing pattern is not of
        // monomial-operator shape, so T cannot stabilize.
        let (i, j) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| mu[i * n + j] != mu[i * n] || lambda[i * n + j] != lambda[j])
            .expect("some position must break the direct pattern");
        return Err(GdetError::NotMonomial { i, j, count: 1 });
    };

    if sigma.parity() != tau.parity() {
        return Err(GdetError::ParityViolation);
    }

    // Coefficients indexed by landing position, so the Hadamard factor C
    // sits against P X Q (or P tX Q).
    let mut coeff = DenseMatrix::zeros(n, n, t.field());
    for i in 0..n {
        for j in 0..n {
            coeff.set(mu[i * n + j], lambda[i * n + j], c[i * n + j].clone());
        }
    }
    let (l, r) = rank1_factor(&coeff)?;

    let mut prod = Scalar::one(t.field());
    for v in l.iter().chain(r.iter()) {
        prod = prod.mul(v);
    }
    if !prod.is_one() {
        return Err(GdetError::ProductNotOne {
            product: prod.to_string(),
        });
    }

    let spec = MonomialSpec {
        transpose,
        sigma,
        tau,
        l,
        r,
    };
    let element = CanonicalStabElement::new(spec)?;
    let rebuilt = from_monomial(element.spec())?;
    assert_eq!(
        &rebuilt, t,
        "extracted canonical form must reproduce the operator entrywise"
    );
    Ok(element)
}

/// Draws a uniform-ish stabilizer member: random permutations conditioned
/// on matching parity, a random transpose flag, and random nonzero scales
/// with r_1 chosen to force the unit product. Deterministic per seed.
pub fn sample_member(
    n: usize,
    field: FieldTag,
    seed: u64,
) -> (LinearOperator, CanonicalStabElement) {
    assert!(n >= 2, "sampling needs n >= 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = PermutationSpec::random(&mut rng, n);
    let mut tau = PermutationSpec::random(&mut rng, n);
    if sigma.parity() != tau.parity() {
        tau.swap_images(0, 1);
    }
    let transpose = rng.random_range(0..2) == 1;
    let mut l = vec![Scalar::one(field)];
    for _ in 1..n {
        l.push(Scalar::random_nonzero(&mut rng, field));
    }
    let mut r_rest: Vec<Scalar> = (1..n)
        .map(|_| Scalar::random_nonzero(&mut rng, field))
        .collect();
    let mut prod = Scalar::one(field);
    for v in l.iter().chain(r_rest.iter()) {
        prod = prod.mul(v);
    }
    let mut r = vec![prod.inv().expect("product of nonzero scalars")];
    r.append(&mut r_rest);

    let spec = MonomialSpec {
        transpose,
        sigma,
        tau,
        l,
        r,
    };
    let element = CanonicalStabElement::new(spec).expect("sampled spec satisfies the invariants");
    let op = from_monomial(element.spec()).expect("monomial spec is realizable");
    (op, element)
}

/// Checks c_{1,w(1)} ... c_{n,w(n)} = 1 over the mode's permutation set,
/// returning the lexicographically least failing permutation if any.
pub fn product_equations_check(
    c: &DenseMatrix,
    mode: EquationMode,
) -> Result<(bool, Option<PermutationSpec>)> {
    let n = c.require_square()?;
    if n > PRODUCT_EQ_CAP {
        return Err(GdetError::SizeCapExceeded {
            what: "product equations",
            n,
            cap: PRODUCT_EQ_CAP,
        });
    }
    let one = Scalar::one(c.field());
    for w in all_permutations(n) {
        if !mode.admits(w.parity()) {
            continue;
        }
        let mut prod = Scalar::one(c.field());
        for i in 0..n {
            prod = prod.mul(c.get(i, w.apply(i)));
        }
        if prod != one {
            return Ok((false, Some(w)));
        }
    }
    Ok((true, None))
}

/// The solution families of the product equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// c_{ij} = a_{i1} a_{1j} / a_{11}: `col` holds the a_{i1}, `row` the a_{1j}.
    RankOneFamily { col: Vec<Scalar>, row: Vec<Scalar> },
    /// n = 4 only: a sign pattern on top of a rank-one grid.
    N4SignFamily {
        eps_u: crate::sign_tables::Epsilon,
        eps_v: crate::sign_tables::Epsilon,
        col: Vec<Scalar>,
        row: Vec<Scalar>,
    },
    /// The product equations fail; the witness permutation is attached.
    NotASolution { witness: PermutationSpec },
}

/// Decides which family a verified solution belongs to. A solution matching
/// no family is surfaced as an error, never absorbed.
pub fn classify_solution(c: &DenseMatrix, mode: EquationMode) -> Result<Classification> {
    use crate::sign_tables::{pattern_matrix, Epsilon, EVEN_SIGN_PATTERN, ODD_SIGN_PATTERN};

    let n = c.require_square()?;
    let (holds, witness) = product_equations_check(c, mode)?;
    if !holds {
        return Ok(Classification::NotASolution {
            witness: witness.expect("failing check carries a witness"),
        });
    }
    let first_row_col = |m: &DenseMatrix| {
        let col: Vec<Scalar> = (0..m.rows()).map(|i| m.get(i, 0).clone()).collect();
        let row: Vec<Scalar> = (0..m.cols()).map(|j| m.get(0, j).clone()).collect();
        (col, row)
    };
    if rank1_factor(c).is_ok() {
        let (col, row) = first_row_col(c);
        return Ok(Classification::RankOneFamily { col, row });
    }
    if n == 4 && mode != EquationMode::Full {
        let grid = match mode {
            EquationMode::Even => &EVEN_SIGN_PATTERN,
            EquationMode::Odd => &ODD_SIGN_PATTERN,
            EquationMode::Full => unreachable!(),
        };
        for eps_u in Epsilon::ALL {
            for eps_v in Epsilon::ALL {
                let pattern = pattern_matrix(grid, eps_u, eps_v, c.field());
                // entries are +/-1, so dividing by the pattern is the same
                // Hadamard product
                let d = crate::matrix::hadamard(c, &pattern)?;
                if rank1_factor(&d).is_ok() {
                    let (col, row) = first_row_col(&d);
                    return Ok(Classification::N4SignFamily {
                        eps_u,
                        eps_v,
                        col,
                        row,
                    });
                }
            }
        }
    }
    Err(GdetError::UnclassifiedSolution(format!(
        "verified {mode:?}-mode solution of size {n} matches no family"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::substitute_linear;
    use crate::sign_tables::{pattern_matrix, Epsilon, EVEN_SIGN_PATTERN};

    fn q() -> FieldTag {
        FieldTag::Rationals
    }

    #[test]
    fn identity_is_member_for_any_params() {
        let id = LinearOperator::identity(3, q());
        for (a, b) in [(1, 2), (1, -1), (1, 1), (5, 0)] {
            let params = GenDetParams::from_i64(a, b, q());
            assert!(membership_symbolic(&id, &params).unwrap().member);
        }
        assert!(matches!(
            membership_symbolic(&id, &GenDetParams::from_i64(0, 0, q())),
            Err(GdetError::ZeroParams)
        ));
    }

    #[test]
    fn row_swap_exchanges_alpha_and_beta() {
        // X -> PX with sgn(sigma) = -1
        let n = 3;
        let mut spec = MonomialSpec::identity(n, q());
        spec.sigma = PermutationSpec::transposition(n, 0, 1).unwrap();
        let t = from_monomial(&spec).unwrap();
        let params = GenDetParams::from_i64(2, 5, q());
        assert!(!membership_symbolic(&t, &params).unwrap().member);

        let f = build_gen_det_poly(n, &params).unwrap();
        let g = substitute_linear(&f, &t).unwrap();
        let swapped = build_gen_det_poly(n, &params.swapped()).unwrap();
        assert_eq!(g, swapped);
    }

    #[test]
    fn sampled_members_pass_symbolic_membership() {
        for seed in 0..5 {
            let (t, _) = sample_member(4, q(), seed);
            for (a, b) in [(1, 2), (3, -1)] {
                let params = GenDetParams::from_i64(a, b, q());
                assert!(membership_symbolic(&t, &params).unwrap().member);
            }
        }
    }

    #[test]
    fn randomized_agrees_and_reports_bounds() {
        let f = FieldTag::prime(10007).unwrap();
        let params = GenDetParams::from_i64(1, 2, f);
        let (t, _) = sample_member(5, f, 11);
        let v = membership_randomized(&t, &params, 20, 42).unwrap();
        assert!(v.member);
        assert_eq!(
            v.evidence,
            MembershipEvidence::Randomized {
                trials: 20,
                error_bound: Some("(5/10007)^20".into()),
            }
        );

        // non-member: row swap
        let mut spec = MonomialSpec::identity(5, f);
        spec.sigma = PermutationSpec::transposition(5, 0, 1).unwrap();
        let bad = from_monomial(&spec).unwrap();
        let v = membership_randomized(&bad, &params, 20, 42).unwrap();
        assert!(!v.member);
        assert!(v.witness.is_some());

        // p <= n rejected
        let small = FieldTag::prime(3).unwrap();
        let id = LinearOperator::identity(4, small);
        assert!(matches!(
            membership_randomized(&id, &GenDetParams::from_i64(1, 2, small), 5, 0),
            Err(GdetError::BadField(_))
        ));
    }

    #[test]
    fn extraction_round_trips_sampled_members() {
        let f = FieldTag::prime(10007).unwrap();
        let params = GenDetParams::from_i64(1, 2, f);
        for seed in 0..10 {
            let (t, element) = sample_member(5, f, seed);
            let extracted = extract_canonical(&t, &params).unwrap();
            assert_eq!(extracted.spec(), element.spec());
            assert_eq!(from_monomial(extracted.spec()).unwrap(), t);
        }
    }

    #[test]
    fn scaling_fails_with_product_not_one() {
        // X -> 2X on 3x3 matrices
        let m = DenseMatrix::identity(9, q()).scale(&Scalar::from_i64(2, q()));
        let t = LinearOperator::new(3, m).unwrap();
        let params = GenDetParams::from_i64(1, 2, q());
        match extract_canonical(&t, &params) {
            Err(GdetError::ProductNotOne { product }) => assert_eq!(product, "8"),
            other => panic!("expected ProductNotOne, got {other:?}"),
        }
    }

    #[test]
    fn parity_violation_detected() {
        let mut spec = MonomialSpec::identity(4, q());
        spec.sigma = PermutationSpec::transposition(4, 1, 2).unwrap();
        let t = from_monomial(&spec).unwrap();
        let params = GenDetParams::from_i64(1, 2, q());
        assert!(matches!(
            extract_canonical(&t, &params),
            Err(GdetError::ParityViolation)
        ));
    }

    #[test]
    fn non_monomial_and_degenerate_rejected() {
        let n = 3;
        let mut m = DenseMatrix::identity(n * n, q());
        for d in 0..n {
            for s in 0..n {
                m.set(
                    d * n + d,
                    s * n + s,
                    m.get(d * n + d, s * n + s).add(&Scalar::one(q())),
                );
            }
        }
        let t = LinearOperator::new(n, m).unwrap();
        assert!(matches!(
            extract_canonical(&t, &GenDetParams::from_i64(1, 2, q())),
            Err(GdetError::NotMonomial {
                i: 0,
                j: 0,
                count: 3
            })
        ));
        let id = LinearOperator::identity(3, q());
        assert!(matches!(
            extract_canonical(&id, &GenDetParams::from_i64(1, 1, q())),
            Err(GdetError::DegenerateParams)
        ));
        assert!(matches!(
            extract_canonical(&id, &GenDetParams::from_i64(1, -1, q())),
            Err(GdetError::DegenerateParams)
        ));
    }

    #[test]
    fn basis_shuffle_that_is_not_an_operator_shape() {
        // Swap E_11 <-> E_22, keep everything else: each unit image is a
        // unit matrix, but the landing pattern is no monomial operator.
        let n = 3;
        let mut m = DenseMatrix::identity(n * n, q());
        m.set(0, 0, Scalar::zero(q()));
        m.set(4, 4, Scalar::zero(q()));
        m.set(0, 4, Scalar::one(q()));
        m.set(4, 0, Scalar::one(q()));
        let t = LinearOperator::new(n, m).unwrap();
        assert!(matches!(
            extract_canonical(&t, &GenDetParams::from_i64(1, 2, q())),
            Err(GdetError::NotMonomial { count: 1, .. })
        ));
    }

    #[test]
    fn product_equations_examples() {
        let ones = DenseMatrix::from_i64(4, 4, q(), &[1; 16]).unwrap();
        for mode in [EquationMode::Even, EquationMode::Odd, EquationMode::Full] {
            assert_eq!(product_equations_check(&ones, mode).unwrap(), (true, None));
        }

        // sign pattern with eps_u = -1: even passes, odd fails
        let pat = pattern_matrix(&EVEN_SIGN_PATTERN, Epsilon::Minus, Epsilon::Plus, q());
        assert!(product_equations_check(&pat, EquationMode::Even).unwrap().0);
        let (ok, witness) = product_equations_check(&pat, EquationMode::Odd).unwrap();
        assert!(!ok);
        assert!(witness.unwrap().parity() == Parity::Odd);

        let big = DenseMatrix::identity(9, q());
        assert!(matches!(
            product_equations_check(&big, EquationMode::Full),
            Err(GdetError::SizeCapExceeded { .. })
        ));
    }

    #[test]
    fn full_mode_solution_iff_unit_product_for_rank_one() {
        // rank-1 C with full support: solution of the full system iff
        // prod(l) * prod(r) = 1
        let l = [1i64, 2, 3];
        let r_good = [
            Scalar::parse("1/6", q()).unwrap(),
            Scalar::from_i64(2, q()),
            Scalar::parse("1/2", q()).unwrap(),
        ];
        let c = DenseMatrix::from_fn(3, 3, q(), |i, j| {
            Scalar::from_i64(l[i], q()).mul(&r_good[j])
        });
        assert!(product_equations_check(&c, EquationMode::Full).unwrap().0);

        let c_bad = c.scale(&Scalar::from_i64(2, q()));
        assert!(
            !product_equations_check(&c_bad, EquationMode::Full)
                .unwrap()
                .0
        );
    }

    #[test]
    fn classify_families() {
        // rank-1 family: c_{ij} = l_i r_j with prod(l)*prod(r) = 1
        // prod(l) = -4 and prod(r) = -1/4
        let l = [1i64, 2, -2, 1];
        let r = [
            Scalar::parse("1/4", q()).unwrap(),
            Scalar::from_i64(-1, q()),
            Scalar::from_i64(1, q()),
            Scalar::from_i64(1, q()),
        ];
        let c = DenseMatrix::from_fn(4, 4, q(), |i, j| Scalar::from_i64(l[i], q()).mul(&r[j]));
        assert!(product_equations_check(&c, EquationMode::Full).unwrap().0);
        match classify_solution(&c, EquationMode::Full).unwrap() {
            Classification::RankOneFamily { col, row } => {
                assert_eq!(col[1], *c.get(1, 0));
                assert_eq!(row[2], *c.get(0, 2));
            }
            other => panic!("expected rank-one family, got {other:?}"),
        }

        // n=4 sign family
        let pat = pattern_matrix(&EVEN_SIGN_PATTERN, Epsilon::Minus, Epsilon::Plus, q());
        match classify_solution(&pat, EquationMode::Even).unwrap() {
            Classification::N4SignFamily { eps_u, eps_v, .. } => {
                assert_eq!((eps_u, eps_v), (Epsilon::Minus, Epsilon::Plus));
            }
            other => panic!("expected sign family, got {other:?}"),
        }

        // perturbation is not a solution
        let mut bad = pat.clone();
        bad.set(2, 2, Scalar::from_i64(5, q()));
        match classify_solution(&bad, EquationMode::Even).unwrap() {
            Classification::NotASolution { witness } => {
                assert_eq!(witness.parity(), Parity::Even);
            }
            other => panic!("expected non-solution, got {other:?}"),
        }
    }

    #[test]
    fn classify_odd_mode_sign_family() {
        use crate::sign_tables::ODD_SIGN_PATTERN;
        let pat = pattern_matrix(&ODD_SIGN_PATTERN, Epsilon::Plus, Epsilon::Minus, q());
        assert!(product_equations_check(&pat, EquationMode::Odd).unwrap().0);
        match classify_solution(&pat, EquationMode::Odd).unwrap() {
            Classification::N4SignFamily { eps_u, eps_v, .. } => {
                assert_eq!((eps_u, eps_v), (Epsilon::Plus, Epsilon::Minus));
            }
            other => panic!("expected sign family, got {other:?}"),
        }
    }

    #[test]
    fn full_check_is_even_and_odd() {
        let pat = pattern_matrix(&EVEN_SIGN_PATTERN, Epsilon::Minus, Epsilon::Minus, q());
        let even = product_equations_check(&pat, EquationMode::Even).unwrap().0;
        let odd = product_equations_check(&pat, EquationMode::Odd).unwrap().0;
        let full = product_equations_check(&pat, EquationMode::Full).unwrap().0;
        assert_eq!(full, even && odd);
    }

    #[test]
    fn sampling_is_deterministic() {
        let f = FieldTag::prime(101).unwrap();
        let (t1, e1) = sample_member(4, f, 77);
        let (t2, e2) = sample_member(4, f, 77);
        assert_eq!(t1, t2);
        assert_eq!(e1.spec(), e2.spec());
        let (t3, _) = sample_member(4, f, 78);
        assert_ne!(t1, t3);
    }
}
