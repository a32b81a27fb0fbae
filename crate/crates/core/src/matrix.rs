//! Dense matrices over an exact field, with the shape utilities the
//! stabilizer pipeline needs: submatrices, Hadamard products, the
//! row/column support classification and rank-1 factorization.

use std::fmt;

use crate::error::{GdetError, Result};
use crate::scalar::{FieldTag, Scalar};
use rand::Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    field: FieldTag,
    entries: Vec<Scalar>,
}

impl DenseMatrix {
    /// Row-major entries; every entry must belong to `field`.
    pub fn new(rows: usize, cols: usize, field: FieldTag, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(GdetError::SizeMismatch {
                what: "matrix entries",
                expected: rows * cols,
                got: entries.len(),
            });
        }
        for e in &entries {
            if e.field() != field {
                return Err(GdetError::FieldMismatch(field, e.field()));
            }
        }
        Ok(DenseMatrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        field: FieldTag,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.field(), field, "from_fn produced a mixed-field entry");
                entries.push(e);
            }
        }
        DenseMatrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    /// Convenience constructor from signed integers.
    pub fn from_i64(rows: usize, cols: usize, field: FieldTag, vals: &[i64]) -> Result<Self> {
        let entries = vals.iter().map(|&v| Scalar::from_i64(v, field)).collect();
        DenseMatrix::new(rows, cols, field, entries)
    }

    pub fn zeros(rows: usize, cols: usize, field: FieldTag) -> Self {
        DenseMatrix::from_fn(rows, cols, field, |_, _| Scalar::zero(field))
    }

    pub fn identity(n: usize, field: FieldTag) -> Self {
        DenseMatrix::from_fn(n, n, field, |i, j| {
            if i == j {
                Scalar::one(field)
            } else {
                Scalar::zero(field)
            }
        })
    }

    /// E_ij: a single one at (i, j).
    pub fn unit(n: usize, i: usize, j: usize, field: FieldTag) -> Self {
        DenseMatrix::from_fn(n, n, field, |r, c| {
            if (r, c) == (i, j) {
                Scalar::one(field)
            } else {
                Scalar::zero(field)
            }
        })
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, field: FieldTag) -> Self {
        let entries = (0..rows * cols)
            .map(|_| Scalar::random(rng, field))
            .collect();
        DenseMatrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(GdetError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "set with a mixed-field entry");
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.cols, self.rows, self.field, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn scale(&self, c: &Scalar) -> DenseMatrix {
        assert_eq!(c.field(), self.field);
        DenseMatrix::from_fn(self.rows, self.cols, self.field, |i, j| {
            self.get(i, j).mul(c)
        })
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.check_same_shape(other)?;
        Ok(DenseMatrix::from_fn(
            self.rows,
            self.cols,
            self.field,
            |i, j| self.get(i, j).add(other.get(i, j)),
        ))
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(GdetError::ShapeMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        if self.field != other.field {
            return Err(GdetError::FieldMismatch(self.field, other.field));
        }
        Ok(DenseMatrix::from_fn(
            self.rows,
            other.cols,
            self.field,
            |i, j| {
                let mut acc = Scalar::zero(self.field);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
                }
                acc
            },
        ))
    }

    fn check_same_shape(&self, other: &DenseMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(GdetError::ShapeMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        if self.field != other.field {
            return Err(GdetError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    /// Gauss-Jordan inverse.
    pub fn invert(&self) -> Result<DenseMatrix> {
        let n = self.require_square()?;
        let mut a = self.clone();
        let mut inv = DenseMatrix::identity(n, self.field);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(GdetError::Singular)?;
            if pivot_row != col {
                for j in 0..n {
                    let tmp = a.get(col, j).clone();
                    a.set(col, j, a.get(pivot_row, j).clone());
                    a.set(pivot_row, j, tmp);
                    let tmp = inv.get(col, j).clone();
                    inv.set(col, j, inv.get(pivot_row, j).clone());
                    inv.set(pivot_row, j, tmp);
                }
            }
            let pinv = a.get(col, col).inv()?;
            for j in 0..n {
                a.set(col, j, a.get(col, j).mul(&pinv));
                inv.set(col, j, inv.get(col, j).mul(&pinv));
            }
            for r in 0..n {
                if r != col && !a.get(r, col).is_zero() {
                    let factor = a.get(r, col).clone();
                    for j in 0..n {
                        a.set(r, j, a.get(r, j).sub(&factor.mul(a.get(col, j))));
                        inv.set(r, j, inv.get(r, j).sub(&factor.mul(inv.get(col, j))));
                    }
                }
            }
        }
        Ok(inv)
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// The submatrix `(a_{rows[i], cols[j]})`; both index lists must be
/// strictly increasing, in bounds and of equal length.
pub fn submatrix(a: &DenseMatrix, rows: &[usize], cols: &[usize]) -> Result<DenseMatrix> {
    if rows.len() != cols.len() {
        return Err(GdetError::SizeMismatch {
            what: "submatrix index lists",
            expected: rows.len(),
            got: cols.len(),
        });
    }
    for (list, dim) in [(rows, a.rows()), (cols, a.cols())] {
        if list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(GdetError::NonIncreasingIndices);
        }
        if let Some(&bad) = list.iter().find(|&&i| i >= dim) {
            return Err(GdetError::IndexOutOfRange { index: bad, dim });
        }
    }
    Ok(DenseMatrix::from_fn(
        rows.len(),
        cols.len(),
        a.field(),
        |i, j| a.get(rows[i], cols[j]).clone(),
    ))
}

/// Entrywise product.
pub fn hadamard(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(GdetError::ShapeMismatch(
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols(),
        ));
    }
    if a.field() != b.field() {
        return Err(GdetError::FieldMismatch(a.field(), b.field()));
    }
    Ok(DenseMatrix::from_fn(
        a.rows(),
        a.cols(),
        a.field(),
        |i, j| a.get(i, j).mul(b.get(i, j)),
    ))
}

/// Support classification used by the rank-1 lemma machinery.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportClass {
    Zero,
    /// All nonzero entries lie in row i (0-based); at least one exists.
    RowMatrix(usize),
    /// All nonzero entries lie in column j (0-based).
    ColumnMatrix(usize),
    Neither,
}

/// A single nonzero entry is both a row and a column matrix; the tie breaks
/// to RowMatrix so the output is deterministic.
pub fn is_row_or_column(a: &DenseMatrix) -> SupportClass {
    let mut rows_hit: Vec<usize> = Vec::new();
    let mut cols_hit: Vec<usize> = Vec::new();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if !a.get(i, j).is_zero() {
                if !rows_hit.contains(&i) {
                    rows_hit.push(i);
                }
                if !cols_hit.contains(&j) {
                    cols_hit.push(j);
                }
            }
        }
    }
    match (rows_hit.len(), cols_hit.len()) {
        (0, _) => SupportClass::Zero,
        (1, _) => SupportClass::RowMatrix(rows_hit[0]),
        (_, 1) => SupportClass::ColumnMatrix(cols_hit[0]),
        _ => SupportClass::Neither,
    }
}

/// Factors a fully supported rank-1 matrix as c_{ij} = l_i r_j with l_0 = 1,
/// so r_j = c_{0j} and l_i = c_{i0}/c_{00}.
pub fn rank1_factor(c: &DenseMatrix) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    for i in 0..c.rows() {
        for j in 0..c.cols() {
            if c.get(i, j).is_zero() {
                return Err(GdetError::ZeroEntry { i, j });
            }
        }
    }
    for i1 in 0..c.rows() {
        for i2 in i1 + 1..c.rows() {
            for j1 in 0..c.cols() {
                for j2 in j1 + 1..c.cols() {
                    let minor = c
                        .get(i1, j1)
                        .mul(c.get(i2, j2))
                        .sub(&c.get(i1, j2).mul(c.get(i2, j1)));
                    if !minor.is_zero() {
                        return Err(GdetError::NotRankOne { i1, i2, j1, j2 });
                    }
                }
            }
        }
    }
    let c00_inv = c.get(0, 0).inv()?;
    let l: Vec<Scalar> = (0..c.rows()).map(|i| c.get(i, 0).mul(&c00_inv)).collect();
    let r: Vec<Scalar> = (0..c.cols()).map(|j| c.get(0, j).clone()).collect();
    Ok((l, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldTag {
        FieldTag::Rationals
    }

    #[test]
    fn construction_rejects_bad_input() {
        let e = vec![Scalar::one(q())];
        assert!(matches!(
            DenseMatrix::new(1, 2, q(), e),
            Err(GdetError::SizeMismatch { .. })
        ));
        let mixed = vec![Scalar::one(q()), Scalar::one(FieldTag::Prime(7))];
        assert!(matches!(
            DenseMatrix::new(1, 2, q(), mixed),
            Err(GdetError::FieldMismatch(..))
        ));
    }

    #[test]
    fn submatrix_examples() {
        let a = DenseMatrix::from_i64(4, 4, q(), &(1..=16).collect::<Vec<i64>>()).unwrap();
        let top = submatrix(&a, &[0, 1], &[0, 1]).unwrap();
        assert_eq!(
            top,
            DenseMatrix::from_i64(2, 2, q(), &[1, 2, 5, 6]).unwrap()
        );

        let b = DenseMatrix::from_i64(3, 3, q(), &(1..=9).collect::<Vec<i64>>()).unwrap();
        let s = submatrix(&b, &[0, 2], &[1, 2]).unwrap();
        assert_eq!(s, DenseMatrix::from_i64(2, 2, q(), &[2, 3, 8, 9]).unwrap());

        assert_eq!(
            submatrix(&b, &[1, 0], &[0, 1]),
            Err(GdetError::NonIncreasingIndices)
        );
        assert!(matches!(
            submatrix(&b, &[0, 3], &[0, 1]),
            Err(GdetError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn hadamard_examples() {
        let a = DenseMatrix::from_i64(2, 2, q(), &[1, 2, 3, 4]).unwrap();
        let ones = DenseMatrix::from_i64(2, 2, q(), &[1, 1, 1, 1]).unwrap();
        assert_eq!(hadamard(&a, &ones).unwrap(), a);
        let b = DenseMatrix::from_i64(2, 2, q(), &[5, 6, 7, 8]).unwrap();
        assert_eq!(
            hadamard(&a, &b).unwrap(),
            DenseMatrix::from_i64(2, 2, q(), &[5, 12, 21, 32]).unwrap()
        );
        let z = DenseMatrix::zeros(2, 2, q());
        assert_eq!(hadamard(&a, &z).unwrap(), z);
        let tall = DenseMatrix::zeros(3, 2, q());
        assert!(matches!(
            hadamard(&a, &tall),
            Err(GdetError::ShapeMismatch(..))
        ));
    }

    #[test]
    fn support_classification() {
        let row = DenseMatrix::from_i64(3, 3, q(), &[1, 2, 3, 0, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(is_row_or_column(&row), SupportClass::RowMatrix(0));
        let col = DenseMatrix::from_i64(3, 3, q(), &[0, 2, 0, 0, 1, 0, 0, 5, 0]).unwrap();
        assert_eq!(is_row_or_column(&col), SupportClass::ColumnMatrix(1));
        let ones = DenseMatrix::from_i64(2, 2, q(), &[1, 1, 1, 1]).unwrap();
        assert_eq!(is_row_or_column(&ones), SupportClass::Neither);
        assert_eq!(
            is_row_or_column(&DenseMatrix::zeros(3, 3, q())),
            SupportClass::Zero
        );
        // one nonzero entry: tie-break to RowMatrix
        let single = DenseMatrix::unit(3, 2, 1, q());
        assert_eq!(is_row_or_column(&single), SupportClass::RowMatrix(2));
    }

    #[test]
    fn rank1_factor_examples() {
        let ones = DenseMatrix::from_i64(3, 3, q(), &[1; 9]).unwrap();
        let (l, r) = rank1_factor(&ones).unwrap();
        assert!(l.iter().all(Scalar::is_one));
        assert!(r.iter().all(Scalar::is_one));

        // c_{ij} = 2^{(i+1)+(j+1)} (1-based exponents)
        let pow2 =
            DenseMatrix::from_fn(3, 3, q(), |i, j| Scalar::from_i64(1i64 << (i + j + 2), q()));
        let (l, r) = rank1_factor(&pow2).unwrap();
        for (i, li) in l.iter().enumerate() {
            assert_eq!(li, &Scalar::from_i64(1i64 << i, q()));
        }
        for (j, rj) in r.iter().enumerate() {
            assert_eq!(rj, &Scalar::from_i64(1i64 << (j + 2), q()));
        }
        // round-trip
        for (i, li) in l.iter().enumerate() {
            for (j, rj) in r.iter().enumerate() {
                assert_eq!(&li.mul(rj), pow2.get(i, j));
            }
        }

        assert!(matches!(
            rank1_factor(&DenseMatrix::identity(2, q())),
            Err(GdetError::ZeroEntry { .. })
        ));
        let not_r1 = DenseMatrix::from_i64(2, 2, q(), &[1, 1, 1, 2]).unwrap();
        assert!(matches!(
            rank1_factor(&not_r1),
            Err(GdetError::NotRankOne { .. })
        ));
    }

    #[test]
    fn invert_round_trip() {
        let f = FieldTag::prime(10007).unwrap();
        let a = DenseMatrix::from_i64(3, 3, f, &[2, 1, 0, 1, 3, 1, 0, 1, 1]).unwrap();
        let inv = a.invert().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), DenseMatrix::identity(3, f));
        assert_eq!(
            DenseMatrix::zeros(2, 2, f).invert(),
            Err(GdetError::Singular)
        );
    }
}
