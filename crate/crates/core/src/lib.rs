//! Exact-arithmetic toolkit for generalized determinants
//! alpha*(even permutation sum) + beta*(odd permutation sum), the
//! stabilizer group of that form inside GL of the matrix space, and
//! brute-force verification of the structural lemmas behind it at desk
//! scale. All computation is over arbitrary-precision rationals or GF(p)
//! for an odd prime p; nothing here floats.

// parity tests read better as remainders in this codebase
#![allow(clippy::manual_is_multiple_of)]

pub mod det;
pub mod error;
pub mod json;
pub mod lab;
pub mod matrix;
pub mod operator;
pub mod perm;
pub mod poly;
pub mod scalar;
pub mod sign_tables;
pub mod stab;

pub use det::{
    det_exact, even_odd_det, gen_det, gen_minor_matrix, permanent, Degeneracy, EvenOddMethod,
    GenDetParams, PermanentMethod,
};
pub use error::{GdetError, Result};
pub use lab::{
    enumerate_n4_sign_solutions, n4_exotic_stabilizer_demo, n4_sign_family,
    verify_derivative_identity, verify_rank1_lemma, LabReport, N4SignEnumeration, N4SignFamily,
    RankOneSearch,
};
pub use matrix::{hadamard, is_row_or_column, rank1_factor, submatrix, DenseMatrix, SupportClass};
pub use operator::{
    from_monomial, unit_images, LinearOperator, MonomialAnalysis, MonomialSpec, UnitImageGrid,
};
pub use perm::{all_permutations, permutations_with_parity, Parity, PermutationSpec};
pub use poly::{
    build_gen_det_poly, closed_form_2x2_minor, minor_by_derivatives, substitute_linear, Monomial,
    SparseMVPoly, VarId,
};
pub use scalar::{FieldTag, Scalar};
pub use sign_tables::Epsilon;
pub use stab::{
    classify_solution, extract_canonical, membership_randomized, membership_symbolic,
    membership_symbolic_with_cap, product_equations_check, sample_member, CanonicalStabElement,
    Classification, EquationMode, MembershipEvidence, MembershipVerdict,
};
