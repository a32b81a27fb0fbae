//! Frozen 4x4 sign-pattern grids for the exceptional n = 4 solution
//! families of the coefficient product equations. Entries are exponent
//! pairs (a, b) meaning eps_u^a * eps_v^b; every consumer reads these two
//! tables and nothing else, so a transcription slip cannot hide.

use crate::error::{GdetError, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::{FieldTag, Scalar};
use std::fmt;

/// A sign choice for one of the two epsilon parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Epsilon {
    Plus,
    Minus,
}

impl Epsilon {
    pub fn value(self) -> i64 {
        match self {
            Epsilon::Plus => 1,
            Epsilon::Minus => -1,
        }
    }

    pub fn from_i64(v: i64) -> Result<Epsilon> {
        match v {
            1 => Ok(Epsilon::Plus),
            -1 => Ok(Epsilon::Minus),
            _ => Err(GdetError::Parse(format!(
                "epsilon must be +1 or -1, got {v}"
            ))),
        }
    }

    pub const ALL: [Epsilon; 2] = [Epsilon::Plus, Epsilon::Minus];
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Epsilon::Plus => write!(f, "+1"),
            Epsilon::Minus => write!(f, "-1"),
        }
    }
}

/// Exponent grid for the even-permutation system.
pub const EVEN_SIGN_PATTERN: [[(u8, u8); 4]; 4] = [
    [(0, 0), (0, 0), (0, 0), (0, 0)],
    [(0, 0), (1, 0), (0, 1), (1, 1)],
    [(0, 0), (0, 1), (1, 1), (1, 0)],
    [(0, 0), (1, 1), (1, 0), (0, 1)],
];

/// Exponent grid for the odd-permutation system: the even grid with its
/// third and fourth rows interchanged.
pub const ODD_SIGN_PATTERN: [[(u8, u8); 4]; 4] = [
    [(0, 0), (0, 0), (0, 0), (0, 0)],
    [(0, 0), (1, 0), (0, 1), (1, 1)],
    [(0, 0), (1, 1), (1, 0), (0, 1)],
    [(0, 0), (0, 1), (1, 1), (1, 0)],
];

/// Instantiates a pattern grid at concrete epsilon values as a +/-1 matrix.
pub fn pattern_matrix(
    grid: &[[(u8, u8); 4]; 4],
    eps_u: Epsilon,
    eps_v: Epsilon,
    field: FieldTag,
) -> DenseMatrix {
    DenseMatrix::from_fn(4, 4, field, |i, j| {
        let (a, b) = grid[i][j];
        let v = eps_u.value().pow(a as u32) * eps_v.value().pow(b as u32);
        Scalar::from_i64(v, field)
    })
}
