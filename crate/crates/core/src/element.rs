//! Algebra elements and linear operators on the underlying coordinate space.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};

/// An element of a Jordan algebra, stored in the instance's canonical coordinates.
///
/// For `Sym(n)` the coordinates are the upper triangle in row-major order with
/// off-diagonal entries scaled by `sqrt(2)`, so the coordinate inner product
/// is the trace form `tr(AB)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ElementRepr", into = "ElementRepr")]
pub struct Element {
    alg: Algebra,
    coords: DVector<f64>,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    alg: Algebra,
    coords: Vec<f64>,
}

impl TryFrom<ElementRepr> for Element {
    type Error = Error;

    fn try_from(r: ElementRepr) -> Result<Self> {
        Element::new(r.alg, r.coords)
    }
}

impl From<Element> for ElementRepr {
    fn from(e: Element) -> Self {
        ElementRepr {
            alg: e.alg,
            coords: e.coords.as_slice().to_vec(),
        }
    }
}

pub(crate) fn check_same(a: &Algebra, b: &Algebra) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}

impl Element {
    pub fn new(alg: Algebra, coords: Vec<f64>) -> Result<Self> {
        Self::from_vector(alg, DVector::from_vec(coords))
    }

    pub fn from_vector(alg: Algebra, coords: DVector<f64>) -> Result<Self> {
        if coords.len() != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                got: coords.len(),
            });
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Element { alg, coords })
    }

    pub(crate) fn from_raw(alg: Algebra, coords: DVector<f64>) -> Self {
        debug_assert_eq!(coords.len(), alg.dim());
        Element { alg, coords }
    }

    pub fn zero(alg: &Algebra) -> Self {
        Element::from_raw(alg.clone(), DVector::zeros(alg.dim()))
    }

    /// Builds a `Sym(n)` element from a symmetric matrix.
    pub fn from_symmetric(mat: &DMatrix<f64>) -> Result<Self> {
        let n = mat.nrows();
        if n == 0 || mat.ncols() != n {
            return Err(Error::InvalidArgument(
                "matrix must be square and nonempty".into(),
            ));
        }
        let asym = (mat - mat.transpose()).abs().max();
        if asym > 1e-12 * (1.0 + mat.abs().max()) {
            return Err(Error::InvalidArgument("matrix is not symmetric".into()));
        }
        Element::from_vector(Algebra::Sym(n), pack_symmetric(mat))
    }

    /// Returns the matrix form of a `Sym(n)` element.
    pub fn to_symmetric(&self) -> Option<DMatrix<f64>> {
        match self.alg {
            Algebra::Sym(n) => Some(unpack_symmetric(self.coords.as_slice(), n)),
            _ => None,
        }
    }

    pub fn alg(&self) -> &Algebra {
        &self.alg
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.coords
    }

    pub fn as_slice(&self) -> &[f64] {
        self.coords.as_slice()
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &Element) -> Result<Element> {
        check_same(&self.alg, &other.alg)?;
        Ok(Element::from_raw(
            self.alg.clone(),
            &self.coords + &other.coords,
        ))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &Element) -> Result<Element> {
        check_same(&self.alg, &other.alg)?;
        Ok(Element::from_raw(
            self.alg.clone(),
            &self.coords - &other.coords,
        ))
    }

    pub fn scale(&self, s: f64) -> Element {
        Element::from_raw(self.alg.clone(), &self.coords * s)
    }

    /// Coordinate inner product (the trace form / Hilbert-sum product of the instance).
    pub fn inner(&self, other: &Element) -> Result<f64> {
        check_same(&self.alg, &other.alg)?;
        Ok(self.coords.dot(&other.coords))
    }

    /// Euclidean norm of the coordinate vector.
    pub fn euclidean_norm(&self) -> f64 {
        self.coords.norm()
    }

    /// Coordinates of the summand with index `i` (the whole vector for a simple algebra).
    pub fn part(&self, i: usize) -> Option<Element> {
        let parts = self.alg.parts();
        let (alg, range) = parts.get(i)?;
        Some(Element::from_raw(
            (*alg).clone(),
            DVector::from_column_slice(&self.coords.as_slice()[range.clone()]),
        ))
    }
}

/// Dense matrix of a linear map on the coordinate space of an algebra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OperatorRepr", into = "OperatorRepr")]
pub struct LinearOperator {
    alg: Algebra,
    matrix: DMatrix<f64>,
}

#[derive(Serialize, Deserialize)]
struct OperatorRepr {
    alg: Algebra,
    matrix: Vec<Vec<f64>>,
}

impl TryFrom<OperatorRepr> for LinearOperator {
    type Error = Error;

    fn try_from(r: OperatorRepr) -> Result<Self> {
        let d = r.alg.dim();
        if r.matrix.len() != d || r.matrix.iter().any(|row| row.len() != d) {
            return Err(Error::InvalidArgument(format!(
                "operator matrix must be {d}x{d}"
            )));
        }
        let m = DMatrix::from_fn(d, d, |i, j| r.matrix[i][j]);
        LinearOperator::new(r.alg, m)
    }
}

impl From<LinearOperator> for OperatorRepr {
    fn from(op: LinearOperator) -> Self {
        let matrix = op
            .matrix
            .row_iter()
            .map(|row| row.iter().copied().collect())
            .collect();
        OperatorRepr {
            alg: op.alg,
            matrix,
        }
    }
}

impl LinearOperator {
    pub fn new(alg: Algebra, matrix: DMatrix<f64>) -> Result<Self> {
        let d = alg.dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: matrix.nrows().max(matrix.ncols()),
            });
        }
        if matrix.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(LinearOperator { alg, matrix })
    }

    pub(crate) fn from_raw(alg: Algebra, matrix: DMatrix<f64>) -> Self {
        LinearOperator { alg, matrix }
    }

    pub fn identity(alg: &Algebra) -> Self {
        let d = alg.dim();
        LinearOperator::from_raw(alg.clone(), DMatrix::identity(d, d))
    }

    pub fn alg(&self) -> &Algebra {
        &self.alg
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        check_same(&self.alg, x.alg())?;
        Ok(Element::from_raw(
            self.alg.clone(),
            &self.matrix * x.coords(),
        ))
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &LinearOperator) -> Result<LinearOperator> {
        check_same(&self.alg, &other.alg)?;
        Ok(LinearOperator::from_raw(
            self.alg.clone(),
            &self.matrix * &other.matrix,
        ))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &LinearOperator) -> Result<LinearOperator> {
        check_same(&self.alg, &other.alg)?;
        Ok(LinearOperator::from_raw(
            self.alg.clone(),
            &self.matrix + &other.matrix,
        ))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &LinearOperator) -> Result<LinearOperator> {
        check_same(&self.alg, &other.alg)?;
        Ok(LinearOperator::from_raw(
            self.alg.clone(),
            &self.matrix - &other.matrix,
        ))
    }

    pub fn scale(&self, s: f64) -> LinearOperator {
        LinearOperator::from_raw(self.alg.clone(), &self.matrix * s)
    }

    /// Frobenius norm of the matrix.
    pub fn norm(&self) -> f64 {
        self.matrix.norm()
    }

    pub fn try_inverse(&self) -> Option<LinearOperator> {
        self.matrix
            .clone()
            .try_inverse()
            .map(|m| LinearOperator::from_raw(self.alg.clone(), m))
    }

    /// 2-norm condition number, infinite when singular.
    pub fn condition_number(&self) -> f64 {
        let sv = self.matrix.singular_values();
        let (lo, hi) = sv.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &s| {
            (lo.min(s), hi.max(s))
        });
        if lo == 0.0 {
            f64::INFINITY
        } else {
            hi / lo
        }
    }
}

/// Commutator `[S, T] = ST - TS`.
pub fn commutator(s: &LinearOperator, t: &LinearOperator) -> Result<LinearOperator> {
    s.compose(t)?.sub(&t.compose(s)?)
}

pub(crate) fn pack_symmetric(mat: &DMatrix<f64>) -> DVector<f64> {
    let n = mat.nrows();
    let mut out = DVector::zeros(n * (n + 1) / 2);
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            out[k] = if i == j {
                mat[(i, i)]
            } else {
                std::f64::consts::SQRT_2 * 0.5 * (mat[(i, j)] + mat[(j, i)])
            };
            k += 1;
        }
    }
    out
}

pub(crate) fn unpack_symmetric(coords: &[f64], n: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            if i == j {
                m[(i, i)] = coords[k];
            } else {
                let v = coords[k] * std::f64::consts::FRAC_1_SQRT_2;
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
            k += 1;
        }
    }
    m
}
