//! Desk-scale machine verification: brute-force searches over small prime
//! fields, the exhaustive n = 4 sign-solution enumeration, the derivative
//! identity sweep, and the n = 4 exotic stabilizer demonstration.

use std::time::Instant;

use crate::det::{gen_minor_matrix, GenDetParams};
use crate::error::{GdetError, Result};
use crate::matrix::{is_row_or_column, DenseMatrix, SupportClass};
use crate::operator::LinearOperator;
use crate::perm::{Parity, PermutationSpec};
use crate::poly::{closed_form_2x2_minor, minor_by_derivatives};
use crate::scalar::{FieldTag, Scalar};
use crate::sign_tables::{pattern_matrix, Epsilon, EVEN_SIGN_PATTERN, ODD_SIGN_PATTERN};
use crate::stab::{
    classify_solution, membership_symbolic, product_equations_check, Classification, EquationMode,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exhaustive field searches stop above this many matrices.
pub const EXHAUSTIVE_CAP: u64 = 2_000_000;

/// Outcome of one lab run. A report passes iff `violations` is empty, and
/// never silently: `checked` and `hypothesis_hits` say how much evidence
/// the pass rests on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabReport {
    pub lemma: String,
    pub space: String,
    pub checked: u64,
    pub hypothesis_hits: u64,
    pub violations: Vec<String>,
    pub ms: u128,
}

impl LabReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

/// Parameters of the exceptional n = 4 solution family: a sign pattern in
/// (eps_u, eps_v) over a rank-one grid a_{i1} a_{1j} / a_{11}, constrained
/// by a_{11}..a_{14} * a_{11} a_{21} a_{31} a_{41} = a_{11}^4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct N4SignFamily {
    pub eps_u: Epsilon,
    pub eps_v: Epsilon,
    pub mode: EquationMode,
    /// a_{11}, a_{12}, a_{13}, a_{14}.
    pub a_row: Vec<Scalar>,
    /// a_{21}, a_{31}, a_{41}.
    pub a_col: Vec<Scalar>,
}

impl N4SignFamily {
    pub fn new(
        eps_u: Epsilon,
        eps_v: Epsilon,
        mode: EquationMode,
        a_row: Vec<Scalar>,
        a_col: Vec<Scalar>,
    ) -> Result<N4SignFamily> {
        if mode == EquationMode::Full {
            return Err(GdetError::ConstraintViolated(
                "sign families exist for the even and odd systems only".into(),
            ));
        }
        if a_row.len() != 4 || a_col.len() != 3 {
            return Err(GdetError::ConstraintViolated(format!(
                "need a_row of length 4 and a_col of length 3, got {} and {}",
                a_row.len(),
                a_col.len()
            )));
        }
        if a_row.iter().chain(a_col.iter()).any(Scalar::is_zero) {
            return Err(GdetError::ConstraintViolated(
                "all a-parameters must be nonzero".into(),
            ));
        }
        let mut prod = a_row[0].clone();
        for v in a_row.iter().skip(1).chain(a_col.iter()) {
            prod = prod.mul(v);
        }
        prod = prod.mul(&a_row[0]);
        let a11_4 = a_row[0].pow(4);
        if prod != a11_4 {
            return Err(GdetError::ConstraintViolated(format!(
                "a-parameter product {prod} differs from a11^4 = {a11_4}"
            )));
        }
        Ok(N4SignFamily {
            eps_u,
            eps_v,
            mode,
            a_row,
            a_col,
        })
    }

    /// The family with every a-parameter equal to one.
    pub fn with_unit_scales(
        eps_u: Epsilon,
        eps_v: Epsilon,
        mode: EquationMode,
        field: FieldTag,
    ) -> Result<N4SignFamily> {
        N4SignFamily::new(
            eps_u,
            eps_v,
            mode,
            vec![Scalar::one(field); 4],
            vec![Scalar::one(field); 3],
        )
    }

    pub fn field(&self) -> FieldTag {
        self.a_row[0].field()
    }

    fn a_col_full(&self) -> Vec<Scalar> {
        let mut v = vec![self.a_row[0].clone()];
        v.extend(self.a_col.iter().cloned());
        v
    }

    /// C = SignPattern(eps_u, eps_v, mode) * (a_{i1} a_{1j} / a_{11}).
    pub fn to_matrix(&self) -> DenseMatrix {
        let field = self.field();
        let grid = match self.mode {
            EquationMode::Even => &EVEN_SIGN_PATTERN,
            EquationMode::Odd => &ODD_SIGN_PATTERN,
            EquationMode::Full => unreachable!("constructor rejects Full"),
        };
        let pattern = pattern_matrix(grid, self.eps_u, self.eps_v, field);
        let a11_inv = self.a_row[0].inv().expect("a11 is nonzero");
        let col = self.a_col_full();
        DenseMatrix::from_fn(4, 4, field, |i, j| {
            pattern
                .get(i, j)
                .mul(&col[i])
                .mul(&self.a_row[j])
                .mul(&a11_inv)
        })
    }
}

/// Builds the family matrix. The contract that it solves the mode's product
/// equations is exercised by `enumerate_n4_sign_solutions` and the tests.
pub fn n4_sign_family(fam: &N4SignFamily) -> DenseMatrix {
    fam.to_matrix()
}

fn sign_mask_of(m: &DenseMatrix) -> Option<u16> {
    let mut mask = 0u16;
    for i in 0..4 {
        for j in 0..4 {
            let e = m.get(i, j);
            if e.is_one() {
                continue;
            }
            if e == &Scalar::from_i64(-1, m.field()) {
                mask |= 1 << (i * 4 + j);
            } else {
                return None;
            }
        }
    }
    Some(mask)
}

fn matrix_of_sign_mask(mask: u16, field: FieldTag) -> DenseMatrix {
    DenseMatrix::from_fn(4, 4, field, |i, j| {
        if mask & (1 << (i * 4 + j)) != 0 {
            Scalar::from_i64(-1, field)
        } else {
            Scalar::one(field)
        }
    })
}

/// Result of the exhaustive {+1,-1}^(4x4) search.
#[derive(Debug, Clone)]
pub struct N4SignEnumeration {
    pub mode: EquationMode,
    /// Solutions in ascending row-major sign-mask order.
    pub solutions: Vec<DenseMatrix>,
    pub enumerated_count: usize,
    pub generated_count: usize,
    /// Sign masks found by enumeration but not generated by the family.
    pub only_enumerated: Vec<u16>,
    /// Sign masks generated by the family but not found by enumeration.
    pub only_generated: Vec<u16>,
    /// Full mode only: enumerated solutions that fail to classify rank-one.
    pub misclassified: Vec<u16>,
    pub ms: u128,
}

impl N4SignEnumeration {
    pub fn sets_match(&self) -> bool {
        self.only_enumerated.is_empty() && self.only_generated.is_empty()
    }

    pub fn to_report(&self) -> LabReport {
        let mut violations = Vec::new();
        for mask in &self.only_enumerated {
            violations.push(format!(
                "solution {mask:#06x} is not produced by the sign family"
            ));
        }
        for mask in &self.only_generated {
            violations.push(format!(
                "family matrix {mask:#06x} is not a solution by enumeration"
            ));
        }
        for mask in &self.misclassified {
            violations.push(format!(
                "full-mode solution {mask:#06x} does not classify as rank one"
            ));
        }
        LabReport {
            lemma: format!("n4-signs-{:?}", self.mode).to_lowercase(),
            space: format!(
                "{{+1,-1}}^(4x4), 65536 candidates; family side generated {} matrices",
                self.generated_count
            ),
            checked: 65536,
            hypothesis_hits: self.enumerated_count as u64,
            violations,
            ms: self.ms,
        }
    }
}

/// Exhaustively enumerates the +/-1 solutions of the mode's product
/// equations and cross-checks them against the generated sign families
/// (for Full mode: against the trivial-pattern families, plus a rank-one
/// classification of every solution).
pub fn enumerate_n4_sign_solutions(mode: EquationMode) -> Result<N4SignEnumeration> {
    let start = Instant::now();
    let field = FieldTag::Rationals;

    let mut enumerated: Vec<u16> = Vec::new();
    for mask in 0u32..(1 << 16) {
        let m = matrix_of_sign_mask(mask as u16, field);
        if product_equations_check(&m, mode)?.0 {
            enumerated.push(mask as u16);
        }
    }

    let mut generated: Vec<u16> = Vec::new();
    let eps_pairs: Vec<(Epsilon, Epsilon)> = match mode {
        EquationMode::Full => vec![(Epsilon::Plus, Epsilon::Plus)],
        _ => Epsilon::ALL
            .iter()
            .flat_map(|&u| Epsilon::ALL.iter().map(move |&v| (u, v)))
            .collect(),
    };
    let fam_mode = if mode == EquationMode::Full {
        EquationMode::Even
    } else {
        mode
    };
    let signs = [1i64, -1];
    for (eps_u, eps_v) in eps_pairs {
        for bits in 0u32..(1 << 7) {
            let vals: Vec<i64> = (0..7).map(|k| signs[((bits >> k) & 1) as usize]).collect();
            let a_row: Vec<Scalar> = vals[..4]
                .iter()
                .map(|&v| Scalar::from_i64(v, field))
                .collect();
            let a_col: Vec<Scalar> = vals[4..]
                .iter()
                .map(|&v| Scalar::from_i64(v, field))
                .collect();
            let Ok(fam) = N4SignFamily::new(eps_u, eps_v, fam_mode, a_row, a_col) else {
                continue;
            };
            let mask = sign_mask_of(&fam.to_matrix()).expect("family over +/-1 stays +/-1");
            if !generated.contains(&mask) {
                generated.push(mask);
            }
        }
    }
    generated.sort_unstable();

    let only_enumerated: Vec<u16> = enumerated
        .iter()
        .copied()
        .filter(|m| !generated.contains(m))
        .collect();
    let only_generated: Vec<u16> = generated
        .iter()
        .copied()
        .filter(|m| !enumerated.contains(m))
        .collect();

    let mut misclassified = Vec::new();
    if mode == EquationMode::Full {
        for &mask in &enumerated {
            let m = matrix_of_sign_mask(mask, field);
            match classify_solution(&m, mode) {
                Ok(Classification::RankOneFamily { .. }) => {}
                _ => misclassified.push(mask),
            }
        }
    }

    Ok(N4SignEnumeration {
        mode,
        solutions: enumerated
            .iter()
            .map(|&m| matrix_of_sign_mask(m, field))
            .collect(),
        enumerated_count: enumerated.len(),
        generated_count: generated.len(),
        only_enumerated,
        only_generated,
        misclassified,
        ms: start.elapsed().as_millis(),
    })
}

/// How to traverse the matrix space in `verify_rank1_lemma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankOneSearch {
    /// Every matrix over GF(p), row-major integer encoding.
    Exhaustive,
    /// Seeded draws, alternating uniform matrices with sparse ones so the
    /// hypothesis is hit a meaningful number of times.
    Sampled { draws: u64, seed: u64 },
}

/// For matrices A over GF(p): whenever both generalized 2-minor matrices
/// vanish, A must be zero, a row matrix or a column matrix.
pub fn verify_rank1_lemma(p: u64, n: usize, search: RankOneSearch) -> Result<LabReport> {
    let field = FieldTag::prime(p)?;
    let start = Instant::now();
    let params_even = GenDetParams::from_i64(1, 0, field);
    let params_odd = GenDetParams::from_i64(0, 1, field);

    let mut checked = 0u64;
    let mut hits = 0u64;
    let mut violations = Vec::new();

    let mut consider = |a: &DenseMatrix, tag: String| -> Result<()> {
        checked += 1;
        if !gen_minor_matrix(&params_even, a, 2)?.is_zero() {
            return Ok(());
        }
        if !gen_minor_matrix(&params_odd, a, 2)?.is_zero() {
            return Ok(());
        }
        hits += 1;
        if is_row_or_column(a) == SupportClass::Neither {
            violations.push(format!("{tag}: hypothesis holds but support is Neither"));
        }
        Ok(())
    };

    let space;
    match search {
        RankOneSearch::Exhaustive => {
            let nn = (n * n) as u32;
            let total = (p as u128).checked_pow(nn).unwrap_or(u128::MAX);
            if total > EXHAUSTIVE_CAP as u128 {
                return Err(GdetError::SizeCapExceeded {
                    what: "exhaustive rank-1 search",
                    n: total.min(usize::MAX as u128) as usize,
                    cap: EXHAUSTIVE_CAP as usize,
                });
            }
            space = format!("GF({p})^({n}x{n}), exhaustive, {total} matrices");
            for code in 0..total as u64 {
                let a = DenseMatrix::from_fn(n, n, field, |i, j| {
                    let idx = (i * n + j) as u32;
                    let shift = (p as u128).pow(nn - 1 - idx);
                    Scalar::from_i64(((code as u128 / shift) % p as u128) as i64, field)
                });
                consider(&a, format!("code {code}"))?;
            }
        }
        RankOneSearch::Sampled { draws, seed } => {
            space = format!(
                "GF({p})^({n}x{n}), {draws} seeded draws (uniform/sparse mix, seed {seed})"
            );
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for k in 0..draws {
                let a = if k % 2 == 0 {
                    DenseMatrix::random(&mut rng, n, n, field)
                } else {
                    // sparse draw: zero with probability 2/3
                    DenseMatrix::from_fn(n, n, field, |_, _| {
                        if rng.random_range(0..3) > 0 {
                            Scalar::zero(field)
                        } else {
                            Scalar::from_i64(rng.random_range(1..p as i64), field)
                        }
                    })
                };
                consider(&a, format!("draw {k}"))?;
            }
        }
    }

    Ok(LabReport {
        lemma: "rank1".into(),
        space,
        checked,
        hypothesis_hits: hits,
        violations,
        ms: start.elapsed().as_millis(),
    })
}

/// Constructs an even permutation sending k1 -> l1 and k2 -> l2 (n >= 4).
fn even_perm_with(n: usize, k1: usize, l1: usize, k2: usize, l2: usize) -> PermutationSpec {
    let mut images = vec![usize::MAX; n];
    images[k1] = l1;
    images[k2] = l2;
    let mut rest: Vec<usize> = (0..n).filter(|&t| t != l1 && t != l2).collect();
    rest.reverse();
    for slot in images.iter_mut() {
        if *slot == usize::MAX {
            *slot = rest.pop().expect("enough targets remain");
        }
    }
    let mut sigma = PermutationSpec::from_images(images).expect("constructed a bijection");
    if sigma.parity() == Parity::Odd {
        let free: Vec<usize> = (0..n).filter(|&i| i != k1 && i != k2).collect();
        sigma.swap_images(free[0], free[1]);
    }
    sigma
}

/// Sweeps every admissible (k1, k2, l1, l2) at the given n, checking that
/// the (n-2)-fold derivative along an even permutation collapses to the
/// closed-form generalized 2x2 minor, in both target assignments.
pub fn verify_derivative_identity(n: usize, params: &GenDetParams) -> Result<LabReport> {
    if !(4..=5).contains(&n) {
        return Err(GdetError::SizeCapExceeded {
            what: "derivative identity sweep (n must be 4 or 5)",
            n,
            cap: 5,
        });
    }
    let start = Instant::now();
    let mut checked = 0u64;
    let mut violations = Vec::new();

    for k1 in 0..n {
        for k2 in 0..n {
            if k1 == k2 {
                continue;
            }
            for l1 in 0..n {
                for l2 in 0..n {
                    if l1 == l2 {
                        continue;
                    }
                    let sigma = even_perm_with(n, k1, l1, k2, l2);
                    let direct = minor_by_derivatives(n, params, k1, k2, l1, l2, &sigma)?;
                    if direct != closed_form_2x2_minor(n, params, k1, k2, l1, l2) {
                        violations.push(format!(
                            "direct assignment k=({k1},{k2}) l=({l1},{l2}): derivative differs"
                        ));
                    }
                    let sigma_sw = even_perm_with(n, k1, l2, k2, l1);
                    let swapped = minor_by_derivatives(n, params, k1, k2, l1, l2, &sigma_sw)?;
                    if swapped != closed_form_2x2_minor(n, &params.swapped(), k1, k2, l1, l2) {
                        violations.push(format!(
                            "swapped assignment k=({k1},{k2}) l=({l1},{l2}): derivative differs"
                        ));
                    }
                    checked += 2;
                }
            }
        }
    }

    Ok(LabReport {
        lemma: "derivative".into(),
        space: format!(
            "n = {n}, alpha = {}, beta = {}, all ordered row/column pairs, both assignments",
            params.alpha(),
            params.beta()
        ),
        checked,
        hypothesis_hits: checked,
        violations,
        ms: start.elapsed().as_millis(),
    })
}

/// Builds the Hadamard operator X -> C * X from a sign family and tests it
/// symbolically: it must stabilize the family's own one-sided determinant,
/// and for a nontrivial sign pattern it must fail for mixed parameters.
/// The opposite one-sided verdict is computed and reported, never assumed.
pub fn n4_exotic_stabilizer_demo(fam: &N4SignFamily) -> Result<LabReport> {
    let start = Instant::now();
    let field = fam.field();
    if field.characteristic() == 2 {
        return Err(GdetError::CharacteristicTwo);
    }
    let c = fam.to_matrix();
    let n = 4;
    let diag = DenseMatrix::from_fn(n * n, n * n, field, |u, v| {
        if u == v {
            c.get(u / n, u % n).clone()
        } else {
            Scalar::zero(field)
        }
    });
    let t = LinearOperator::new(n, diag)?;

    let (own, other) = match fam.mode {
        EquationMode::Even => (
            GenDetParams::from_i64(1, 0, field),
            GenDetParams::from_i64(0, 1, field),
        ),
        EquationMode::Odd => (
            GenDetParams::from_i64(0, 1, field),
            GenDetParams::from_i64(1, 0, field),
        ),
        EquationMode::Full => unreachable!("constructor rejects Full"),
    };
    let trivial_pattern = fam.eps_u == Epsilon::Plus && fam.eps_v == Epsilon::Plus;

    let mut checked = 0u64;
    let mut violations = Vec::new();
    let mut notes = Vec::new();

    let own_verdict = membership_symbolic(&t, &own)?.member;
    checked += 1;
    notes.push(format!(
        "member({}, {}) = {own_verdict}",
        own.alpha(),
        own.beta()
    ));
    if !own_verdict {
        violations.push("operator fails its own one-sided system".into());
    }

    let other_verdict = membership_symbolic(&t, &other)?.member;
    checked += 1;
    notes.push(format!(
        "member({}, {}) = {other_verdict}",
        other.alpha(),
        other.beta()
    ));

    for (a, b) in [(1i64, 2i64), (3, -1)] {
        let mixed = GenDetParams::from_i64(a, b, field);
        let verdict = membership_symbolic(&t, &mixed)?.member;
        checked += 1;
        notes.push(format!("member({a}, {b}) = {verdict}"));
        if verdict != trivial_pattern {
            violations.push(format!(
                "mixed parameters ({a}, {b}): expected member = {trivial_pattern}, got {verdict}"
            ));
        }
    }

    Ok(LabReport {
        lemma: "n4-exotic".into(),
        space: format!(
            "Hadamard operator from eps = ({}, {}), mode {:?}; {}",
            fam.eps_u,
            fam.eps_v,
            fam.mode,
            notes.join(", ")
        ),
        checked,
        hypothesis_hits: checked,
        violations,
        ms: start.elapsed().as_millis(),
    })
}
