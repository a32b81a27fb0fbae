//! Invertible linear operators on the space of n x n matrices, stored as
//! explicit n^2 x n^2 matrices over the row-major vectorization
//! vec(X)[i*n + j] = x_{ij}, so that vec(T(X)) = M vec(X).

use crate::det::det_exact;
use crate::error::{GdetError, Result};
use crate::matrix::DenseMatrix;
use crate::perm::PermutationSpec;
use crate::scalar::{FieldTag, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearOperator {
    n: usize,
    matrix: DenseMatrix,
}

impl LinearOperator {
    /// Wraps an n^2 x n^2 matrix, checking shape and invertibility.
    pub fn new(n: usize, matrix: DenseMatrix) -> Result<LinearOperator> {
        if matrix.rows() != n * n || matrix.cols() != n * n {
            return Err(GdetError::ShapeMismatch(
                matrix.rows(),
                matrix.cols(),
                n * n,
                n * n,
            ));
        }
        if det_exact(&matrix)?.is_zero() {
            return Err(GdetError::Singular);
        }
        Ok(LinearOperator { n, matrix })
    }

    pub fn identity(n: usize, field: FieldTag) -> LinearOperator {
        LinearOperator {
            n,
            matrix: DenseMatrix::identity(n * n, field),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldTag {
        self.matrix.field()
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    /// T(A) = unvec(M vec(A)).
    pub fn apply(&self, a: &DenseMatrix) -> Result<DenseMatrix> {
        if a.rows() != self.n || a.cols() != self.n {
            return Err(GdetError::ShapeMismatch(a.rows(), a.cols(), self.n, self.n));
        }
        if a.field() != self.field() {
            return Err(GdetError::FieldMismatch(self.field(), a.field()));
        }
        let field = self.field();
        let nn = self.n * self.n;
        let mut out = vec![Scalar::zero(field); nn];
        for (r, slot) in out.iter_mut().enumerate() {
            let mut acc = Scalar::zero(field);
            for c in 0..nn {
                let m = self.matrix.get(r, c);
                if !m.is_zero() {
                    acc = acc.add(&m.mul(a.get(c / self.n, c % self.n)));
                }
            }
            *slot = acc;
        }
        DenseMatrix::new(self.n, self.n, field, out)
    }

    /// The operator X -> T1(T2(X)), i.e. the matrix product M1 M2.
    pub fn compose(&self, other: &LinearOperator) -> Result<LinearOperator> {
        if self.n != other.n {
            return Err(GdetError::SizeMismatch {
                what: "operator composition",
                expected: self.n,
                got: other.n,
            });
        }
        Ok(LinearOperator {
            n: self.n,
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    /// Inverse operator; its matrix rows are the coefficients expressing
    /// each source entry in terms of the image entries.
    pub fn inverse(&self) -> LinearOperator {
        let matrix = self
            .matrix
            .invert()
            .expect("operator invariant guarantees invertibility");
        LinearOperator { n: self.n, matrix }
    }
}

/// The data of a monomial operator X -> L P X Q R, optionally with a
/// transpose of X in the middle. P and Q are the permutation matrices of
/// sigma and tau; L and R are the diagonal matrices of l and r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialSpec {
    pub transpose: bool,
    pub sigma: PermutationSpec,
    pub tau: PermutationSpec,
    pub l: Vec<Scalar>,
    pub r: Vec<Scalar>,
}

impl MonomialSpec {
    pub fn identity(n: usize, field: FieldTag) -> MonomialSpec {
        MonomialSpec {
            transpose: false,
            sigma: PermutationSpec::identity(n),
            tau: PermutationSpec::identity(n),
            l: vec![Scalar::one(field); n],
            r: vec![Scalar::one(field); n],
        }
    }

    pub fn n(&self) -> usize {
        self.sigma.n()
    }

    pub fn field(&self) -> FieldTag {
        self.l[0].field()
    }

    fn validate(&self) -> Result<()> {
        let n = self.sigma.n();
        if n == 0 {
            return Err(GdetError::SizeMismatch {
                what: "monomial spec size",
                expected: 1,
                got: 0,
            });
        }
        for len in [self.tau.n(), self.l.len(), self.r.len()] {
            if len != n {
                return Err(GdetError::SizeMismatch {
                    what: "monomial spec component",
                    expected: n,
                    got: len,
                });
            }
        }
        for (i, v) in self.l.iter().chain(self.r.iter()).enumerate() {
            if v.is_zero() {
                return Err(GdetError::ZeroDiagonal { i: i % n });
            }
        }
        let field = self.l[0].field();
        for v in self.l.iter().chain(self.r.iter()) {
            if v.field() != field {
                return Err(GdetError::FieldMismatch(field, v.field()));
            }
        }
        Ok(())
    }
}

/// Realizes the monomial spec as an explicit operator by pushing each unit
/// matrix through L P (.) Q R.
pub fn from_monomial(spec: &MonomialSpec) -> Result<LinearOperator> {
    spec.validate()?;
    let n = spec.n();
    let field = spec.field();
    let p = spec.sigma.to_matrix(field);
    let q = spec.tau.to_matrix(field);
    let l = DenseMatrix::from_fn(n, n, field, |i, j| {
        if i == j {
            spec.l[i].clone()
        } else {
            Scalar::zero(field)
        }
    });
    let r = DenseMatrix::from_fn(n, n, field, |i, j| {
        if i == j {
            spec.r[i].clone()
        } else {
            Scalar::zero(field)
        }
    });
    let mut m = DenseMatrix::zeros(n * n, n * n, field);
    for i in 0..n {
        for j in 0..n {
            let e = DenseMatrix::unit(n, i, j, field);
            let x = if spec.transpose { e.transpose() } else { e };
            let image = l.mul(&p.mul(&x.mul(&q.mul(&r)?)?)?)?;
            for u in 0..n {
                for v in 0..n {
                    m.set(u * n + v, i * n + j, image.get(u, v).clone());
                }
            }
        }
    }
    LinearOperator::new(n, m)
}

/// The unit-matrix images F_ij = T(E_ij), with the monomial analysis of
/// where each image lands.
#[derive(Debug, Clone)]
pub struct UnitImageGrid {
    pub n: usize,
    pub images: Vec<DenseMatrix>,
    pub analysis: MonomialAnalysis,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialAnalysis {
    /// Every F_ij = c_ij E_{mu(i,j), lambda(i,j)} with (mu, lambda) injective.
    Monomial {
        mu: Vec<usize>,
        lambda: Vec<usize>,
        c: Vec<Scalar>,
    },
    /// Witness position (i, j) whose image has != 1 nonzero entries.
    NonMonomial {
        i: usize,
        j: usize,
        nonzero_count: usize,
    },
}

impl UnitImageGrid {
    pub fn image(&self, i: usize, j: usize) -> &DenseMatrix {
        &self.images[i * self.n + j]
    }
}

/// Computes all F_ij and, when each has a single nonzero entry, the target
/// maps and coefficients. Non-monomiality is reported as data, not an error.
pub fn unit_images(t: &LinearOperator) -> UnitImageGrid {
    let n = t.n();
    let mut images = Vec::with_capacity(n * n);
    let mut mu = vec![0usize; n * n];
    let mut lambda = vec![0usize; n * n];
    let mut c = Vec::with_capacity(n * n);
    let mut failure: Option<(usize, usize, usize)> = None;

    for i in 0..n {
        for j in 0..n {
            let f = DenseMatrix::from_fn(n, n, t.field(), |u, v| {
                t.matrix().get(u * n + v, i * n + j).clone()
            });
            if failure.is_none() {
                let nonzeros: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| (0..n).map(move |v| (u, v)))
                    .filter(|&(u, v)| !f.get(u, v).is_zero())
                    .collect();
                if nonzeros.len() == 1 {
                    let (u, v) = nonzeros[0];
                    mu[i * n + j] = u;
                    lambda[i * n + j] = v;
                    c.push(f.get(u, v).clone());
                } else {
                    failure = Some((i, j, nonzeros.len()));
                }
            }
            images.push(f);
        }
    }

    let analysis = match failure {
        Some((i, j, nonzero_count)) => MonomialAnalysis::NonMonomial {
            i,
            j,
            nonzero_count,
        },
        None => {
            // Injectivity of (i,j) -> (mu, lambda) follows from the
            // invertibility invariant; parallel columns would be dependent.
            let mut seen = vec![false; n * n];
            for k in 0..n * n {
                let slot = mu[k] * n + lambda[k];
                assert!(!seen[slot], "unit images collide despite invertibility");
                seen[slot] = true;
            }
            MonomialAnalysis::Monomial { mu, lambda, c }
        }
    };
    UnitImageGrid {
        n,
        images,
        analysis,
    }
}
