//! Error type shared by every module of the crate.

use crate::scalar::FieldTag;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GdetError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("{what}: size {n} exceeds the cap {cap}")]
    SizeCapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("operation requires field characteristic != 2")]
    CharacteristicTwo,

    #[error("shape mismatch: {0}x{1} vs {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("index list is not strictly increasing")]
    NonIncreasingIndices,

    #[error("entry at ({i},{j}) is zero")]
    ZeroEntry { i: usize, j: usize },

    #[error("2x2 minor on rows ({i1},{i2}) and columns ({j1},{j2}) is nonzero")]
    NotRankOne {
        i1: usize,
        i2: usize,
        j1: usize,
        j2: usize,
    },

    #[error("mixed fields: {0} vs {1}")]
    FieldMismatch(FieldTag, FieldTag),

    #[error("{what}: expected size {expected}, got {got}")]
    SizeMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("expansion produced {terms} terms, above the cap {cap}")]
    ExpansionCapExceeded { terms: usize, cap: usize },

    #[error("bad permutation: {0}")]
    BadPermutation(String),

    #[error("diagonal entry {i} is zero")]
    ZeroDiagonal { i: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("{0} is not an odd prime")]
    BadPrime(u64),

    #[error("bad field for randomized testing: {0}")]
    BadField(String),

    #[error("alpha and beta are both zero")]
    ZeroParams,

    #[error("alpha = +/-beta: canonical extraction is not defined")]
    DegenerateParams,

    #[error("unit image of E[{i},{j}] has {count} nonzero entries; operator is not monomial")]
    NotMonomial { i: usize, j: usize, count: usize },

    #[error("sgn(sigma)*sgn(tau) = -1: operator swaps parity classes")]
    ParityViolation,

    #[error("coefficient products are 1 but l*r factorization fails: product = {product}")]
    ProductNotOne { product: String },

    #[error("verified solution matches no known family: {0}")]
    UnclassifiedSolution(String),

    #[error("sign-family constraint violated: {0}")]
    ConstraintViolated(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("division by zero")]
    DivisionByZero,
}

pub type Result<T> = std::result::Result<T, GdetError>;
