//! Sparse multivariate polynomials in the n^2 matrix-entry variables
//! x[i,j], kept canonical so structural equality is mathematical equality.
//! Houses the symbolic generalized determinant, substitution under linear
//! operators on the matrix space, and formal partial derivatives.

use std::collections::BTreeMap;
use std::fmt;

use crate::det::GenDetParams;
use crate::error::{GdetError, Result};
use crate::matrix::DenseMatrix;
use crate::operator::LinearOperator;
use crate::perm::{all_permutations, Parity, PermutationSpec};
use crate::scalar::{FieldTag, Scalar};

/// Symbolic polynomials are built up to this matrix size (n! monomials).
pub const POLY_CAP_N: usize = 7;
/// Default bound on intermediate term counts during substitution.
pub const DEFAULT_EXPANSION_CAP: usize = 10_000_000;

/// One of the n^2 variables, packed as row*n + col (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(u32);

impl VarId {
    pub fn new(n: usize, row: usize, col: usize) -> VarId {
        debug_assert!(row < n && col < n);
        VarId((row * n + col) as u32)
    }

    pub fn from_packed(packed: usize) -> VarId {
        VarId(packed as u32)
    }

    pub fn packed(self) -> usize {
        self.0 as usize
    }

    pub fn row(self, n: usize) -> usize {
        self.packed() / n
    }

    pub fn col(self, n: usize) -> usize {
        self.packed() % n
    }
}

/// Product of variables with positive exponents, sorted by variable id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    /// The empty product.
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    /// Normalizes arbitrary (variable, exponent) pairs.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Monomial {
        let mut m = Monomial::one();
        for (v, e) in pairs {
            m = m.mul_var(v, e);
        }
        m
    }

    pub fn pairs(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul_var(&self, v: VarId, e: u32) -> Monomial {
        if e == 0 {
            return self.clone();
        }
        let mut pairs = self.0.clone();
        match pairs.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(idx) => pairs[idx].1 += e,
            Err(idx) => pairs.insert(idx, (v, e)),
        }
        Monomial(pairs)
    }

    /// Exponent of v, and the monomial with v's exponent lowered by one.
    fn lower(&self, v: VarId) -> Option<(u32, Monomial)> {
        let idx = self.0.binary_search_by_key(&v, |&(w, _)| w).ok()?;
        let e = self.0[idx].1;
        let mut pairs = self.0.clone();
        if e == 1 {
            pairs.remove(idx);
        } else {
            pairs[idx].1 -= 1;
        }
        Some((e, Monomial(pairs)))
    }
}

/// A sparse multivariate polynomial over one field, in canonical form:
/// no zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMVPoly {
    n: usize,
    field: FieldTag,
    terms: BTreeMap<Monomial, Scalar>,
}

impl SparseMVPoly {
    pub fn zero(n: usize, field: FieldTag) -> SparseMVPoly {
        SparseMVPoly {
            n,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: Scalar) {
        assert_eq!(coeff.field(), self.field, "mixed-field term");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &SparseMVPoly) -> SparseMVPoly {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> SparseMVPoly {
        let mut out = SparseMVPoly::zero(self.n, self.field);
        for (m, coeff) in &self.terms {
            out.add_term(m.clone(), coeff.mul(c));
        }
        out
    }

    pub fn sub(&self, other: &SparseMVPoly) -> SparseMVPoly {
        self.add(&other.scale(&Scalar::from_i64(-1, self.field)))
    }

    /// Formal partial derivative with respect to one variable.
    pub fn partial_derivative(&self, v: VarId) -> SparseMVPoly {
        let mut out = SparseMVPoly::zero(self.n, self.field);
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.lower(v) {
                out.add_term(lowered, c.mul(&Scalar::from_i64(e as i64, self.field)));
            }
        }
        out
    }

    /// Substitutes the matrix entries for the variables.
    pub fn evaluate(&self, a: &DenseMatrix) -> Result<Scalar> {
        let n = a.require_square()?;
        if n != self.n {
            return Err(GdetError::SizeMismatch {
                what: "evaluation point",
                expected: self.n,
                got: n,
            });
        }
        if a.field() != self.field {
            return Err(GdetError::FieldMismatch(self.field, a.field()));
        }
        let mut acc = Scalar::zero(self.field);
        for (m, c) in &self.terms {
            let mut prod = c.clone();
            for &(v, e) in m.pairs() {
                prod = prod.mul(&a.get(v.row(self.n), v.col(self.n)).pow(e));
            }
            acc = acc.add(&prod);
        }
        Ok(acc)
    }
}

impl fmt::Display for SparseMVPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.pairs().is_empty() {
                write!(f, "{mag}")?;
                continue;
            }
            let mut lead = true;
            if mag != "1" {
                write!(f, "{mag}")?;
                lead = false;
            }
            for &(v, e) in m.pairs() {
                if !lead {
                    write!(f, "*")?;
                }
                lead = false;
                write!(f, "x[{},{}]", v.row(self.n) + 1, v.col(self.n) + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// The symbolic generalized determinant of the n x n variable matrix:
/// alpha-weighted even permutations plus beta-weighted odd ones.
pub fn build_gen_det_poly(n: usize, params: &GenDetParams) -> Result<SparseMVPoly> {
    build_gen_det_poly_with_cap(n, params, POLY_CAP_N)
}

pub fn build_gen_det_poly_with_cap(
    n: usize,
    params: &GenDetParams,
    cap: usize,
) -> Result<SparseMVPoly> {
    if n > cap {
        return Err(GdetError::SizeCapExceeded {
            what: "symbolic generalized determinant",
            n,
            cap,
        });
    }
    let field = params.field();
    let mut poly = SparseMVPoly::zero(n, field);
    for w in all_permutations(n) {
        let coeff = match w.parity() {
            Parity::Even => params.alpha().clone(),
            Parity::Odd => params.beta().clone(),
        };
        if coeff.is_zero() {
            continue;
        }
        let mono = Monomial::from_pairs((0..n).map(|i| (VarId::new(n, i, w.apply(i)), 1)));
        poly.add_term(mono, coeff);
    }
    Ok(poly)
}

/// The polynomial X -> f(T(X)): each variable is replaced by the linear
/// form in row (i,j) of T's matrix, then everything is expanded and
/// re-canonicalized.
pub fn substitute_linear(f: &SparseMVPoly, t: &LinearOperator) -> Result<SparseMVPoly> {
    substitute_linear_with_cap(f, t, DEFAULT_EXPANSION_CAP)
}

pub fn substitute_linear_with_cap(
    f: &SparseMVPoly,
    t: &LinearOperator,
    cap: usize,
) -> Result<SparseMVPoly> {
    if f.n() != t.n() {
        return Err(GdetError::SizeMismatch {
            what: "operator substitution",
            expected: f.n(),
            got: t.n(),
        });
    }
    if f.field() != t.field() {
        return Err(GdetError::FieldMismatch(f.field(), t.field()));
    }
    let nn = f.n() * f.n();
    let forms: Vec<Vec<(VarId, Scalar)>> = (0..nn)
        .map(|v| {
            (0..nn)
                .filter_map(|w| {
                    let c = t.matrix().get(v, w);
                    if c.is_zero() {
                        None
                    } else {
                        Some((VarId::from_packed(w), c.clone()))
                    }
                })
                .collect()
        })
        .collect();

    let mut result = SparseMVPoly::zero(f.n(), f.field());
    for (mono, coeff) in f.terms() {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        acc.insert(Monomial::one(), coeff.clone());
        for &(v, e) in mono.pairs() {
            let form = &forms[v.packed()];
            for _ in 0..e {
                let bound = acc.len().saturating_mul(form.len());
                if bound > cap {
                    return Err(GdetError::ExpansionCapExceeded { terms: bound, cap });
                }
                let mut next: BTreeMap<Monomial, Scalar> = BTreeMap::new();
                for (m0, c0) in &acc {
                    for (w, cw) in form {
                        let m1 = m0.mul_var(*w, 1);
                        let c1 = c0.mul(cw);
                        if c1.is_zero() {
                            continue;
                        }
                        match next.entry(m1) {
                            std::collections::btree_map::Entry::Vacant(en) => {
                                en.insert(c1);
                            }
                            std::collections::btree_map::Entry::Occupied(mut en) => {
                                let sum = en.get().add(&c1);
                                if sum.is_zero() {
                                    en.remove();
                                } else {
                                    *en.get_mut() = sum;
                                }
                            }
                        }
                    }
                }
                acc = next;
            }
        }
        for (m, c) in acc {
            result.add_term(m, c);
        }
        if result.term_count() > cap {
            return Err(GdetError::ExpansionCapExceeded {
                terms: result.term_count(),
                cap,
            });
        }
    }
    Ok(result)
}

/// The generalized 2x2 minor alpha*x[k1,l1]x[k2,l2] + beta*x[k1,l2]x[k2,l1]
/// as a polynomial in the ambient n x n variables. Indices are 0-based.
pub fn closed_form_2x2_minor(
    n: usize,
    params: &GenDetParams,
    k1: usize,
    k2: usize,
    l1: usize,
    l2: usize,
) -> SparseMVPoly {
    let mut poly = SparseMVPoly::zero(n, params.field());
    poly.add_term(
        Monomial::from_pairs([(VarId::new(n, k1, l1), 1), (VarId::new(n, k2, l2), 1)]),
        params.alpha().clone(),
    );
    poly.add_term(
        Monomial::from_pairs([(VarId::new(n, k1, l2), 1), (VarId::new(n, k2, l1), 1)]),
        params.beta().clone(),
    );
    poly
}

/// Differentiates the symbolic generalized determinant once with respect to
/// each x[i, sigma(i)] for i outside {k1, k2}. For an even sigma matching
/// {sigma(k1), sigma(k2)} = {l1, l2} the result collapses to a generalized
/// 2x2 minor. Indices are 0-based.
pub fn minor_by_derivatives(
    n: usize,
    params: &GenDetParams,
    k1: usize,
    k2: usize,
    l1: usize,
    l2: usize,
    sigma: &PermutationSpec,
) -> Result<SparseMVPoly> {
    if n < 4 {
        return Err(GdetError::SizeCapExceeded {
            what: "derivative minor (needs n >= 4)",
            n,
            cap: n,
        });
    }
    if k1 == k2 || l1 == l2 {
        return Err(GdetError::BadPermutation(
            "row pair and column pair must each be distinct".into(),
        ));
    }
    if sigma.n() != n {
        return Err(GdetError::BadPermutation(format!(
            "sigma acts on {} points, expected {n}",
            sigma.n()
        )));
    }
    if sigma.parity() != Parity::Even {
        return Err(GdetError::BadPermutation("sigma must be even".into()));
    }
    let direct = sigma.apply(k1) == l1 && sigma.apply(k2) == l2;
    let swapped = sigma.apply(k1) == l2 && sigma.apply(k2) == l1;
    if !direct && !swapped {
        return Err(GdetError::BadPermutation(format!(
            "sigma must send {{{k1},{k2}}} onto {{{l1},{l2}}}"
        )));
    }
    let mut poly = build_gen_det_poly(n, params)?;
    for i in 0..n {
        if i != k1 && i != k2 {
            poly = poly.partial_derivative(VarId::new(n, i, sigma.apply(i)));
        }
    }
    Ok(poly)
}
