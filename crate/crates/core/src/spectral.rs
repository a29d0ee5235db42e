//! Spectral decompositions and the functional calculus built on them.
//!
//! Every element `a` decomposes as `a = Σ λ_i c_i` over a Jordan frame
//! `{c_i}` (orthogonal idempotents summing to `e`). Inverse, square root,
//! exponential and logarithm act on the eigenvalues.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::element::{pack_symmetric, unpack_symmetric, Element};
use crate::error::{Error, Result};
use crate::tol;

/// Eigenvalues in ascending order with the matching Jordan frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub idempotents: Vec<Element>,
}

impl SpectralDecomposition {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("rank >= 1")
    }

    /// Spectral radius `max |λ_i|`, which is also the order-unit norm at `e`.
    pub fn max_abs(&self) -> f64 {
        self.min().abs().max(self.max().abs())
    }

    /// `Σ f(λ_i) c_i`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Element {
        let first = &self.idempotents[0];
        let mut acc = DVector::zeros(first.dim());
        for (lambda, c) in self.eigenvalues.iter().zip(&self.idempotents) {
            acc.axpy(f(*lambda), c.coords(), 1.0);
        }
        Element::from_vector(first.alg().clone(), acc).expect("finite spectral map")
    }

    pub fn reconstruct(&self) -> Element {
        self.map(|l| l)
    }
}

fn spin_frame(n: usize, a: &[f64]) -> (f64, Vec<f64>) {
    let norm = a[..n].iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut u = vec![0.0; n];
    if norm > 0.0 {
        for (ui, ai) in u.iter_mut().zip(&a[..n]) {
            *ui = ai / norm;
        }
    } else {
        // frame is arbitrary when a = 0
        u[0] = 1.0;
    }
    (norm, u)
}

/// Eigen-pairs of a simple summand as (eigenvalue, idempotent coordinates).
fn simple_pairs(alg: &Algebra, a: &[f64]) -> Result<Vec<(f64, DVector<f64>)>> {
    match alg {
        Algebra::Orthant(n) => Ok((0..*n)
            .map(|i| {
                let mut c = DVector::zeros(*n);
                c[i] = 1.0;
                (a[i], c)
            })
            .collect()),
        Algebra::Sym(n) => {
            let m = unpack_symmetric(a, *n);
            let eig = m
                .try_symmetric_eigen(f64::EPSILON, 10_000)
                .ok_or_else(|| Error::Eigensolver(format!("no convergence for {alg}")))?;
            if eig.eigenvalues.iter().any(|l| !l.is_finite()) {
                return Err(Error::Eigensolver(format!("non-finite spectrum for {alg}")));
            }
            Ok((0..*n)
                .map(|k| {
                    let v = eig.eigenvectors.column(k);
                    let proj: DMatrix<f64> = v * v.transpose();
                    (eig.eigenvalues[k], pack_symmetric(&proj))
                })
                .collect())
        }
        Algebra::Spin(n) => {
            let alpha = a[*n];
            let (norm, u) = spin_frame(*n, a);
            let half = |sign: f64| {
                let mut c = DVector::zeros(n + 1);
                for i in 0..*n {
                    c[i] = 0.5 * sign * u[i];
                }
                c[*n] = 0.5;
                c
            };
            Ok(vec![(alpha - norm, half(-1.0)), (alpha + norm, half(1.0))])
        }
        Algebra::Sum { .. } => unreachable!("nested sums are rejected by validation"),
    }
}

impl Element {
    /// Spectral decomposition with eigenvalues sorted ascending.
    pub fn spectral(&self) -> Result<SpectralDecomposition> {
        let alg = self.alg();
        let d = alg.dim();
        let mut pairs: Vec<(f64, DVector<f64>)> = Vec::with_capacity(alg.rank());
        for (part, range) in alg.parts() {
            for (lambda, c) in simple_pairs(part, &self.as_slice()[range.clone()])? {
                let mut full = DVector::zeros(d);
                full.rows_mut(range.start, range.len()).copy_from(&c);
                pairs.push((lambda, full));
            }
        }
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
        let (eigenvalues, idempotents) = pairs
            .into_iter()
            .map(|(l, c)| (l, Element::from_raw(alg.clone(), c)))
            .unzip();
        Ok(SpectralDecomposition {
            eigenvalues,
            idempotents,
        })
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.spectral()?.eigenvalues)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.spectral()?.min())
    }

    /// Order-unit norm at the identity, `max |λ_i|`.
    pub fn spectral_norm(&self) -> Result<f64> {
        Ok(self.spectral()?.max_abs())
    }

    /// Applies `f` to the spectrum.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Result<Element> {
        Ok(self.spectral()?.map(f))
    }

    /// Jordan inverse; fails when an eigenvalue is numerically zero.
    pub fn inverse(&self) -> Result<Element> {
        let sd = self.spectral()?;
        let min_abs = sd
            .eigenvalues
            .iter()
            .fold(f64::INFINITY, |m, l| m.min(l.abs()));
        if min_abs <= tol::SINGULAR_REL * (1.0 + sd.max_abs()) {
            return Err(Error::SingularElement { min_abs });
        }
        Ok(sd.map(|l| 1.0 / l))
    }

    fn positive_spectrum(&self) -> Result<SpectralDecomposition> {
        let sd = self.spectral()?;
        if sd.min() <= tol::SINGULAR_REL * (1.0 + sd.max_abs()) {
            return Err(Error::NotInCone {
                min_eigenvalue: sd.min(),
            });
        }
        Ok(sd)
    }

    /// Square root inside the open cone.
    pub fn sqrt(&self) -> Result<Element> {
        Ok(self.positive_spectrum()?.map(f64::sqrt))
    }

    /// `a^{-1/2}` inside the open cone.
    pub fn inv_sqrt(&self) -> Result<Element> {
        Ok(self.positive_spectrum()?.map(|l| 1.0 / l.sqrt()))
    }

    /// Logarithm inside the open cone.
    pub fn log(&self) -> Result<Element> {
        Ok(self.positive_spectrum()?.map(f64::ln))
    }

    /// `Exp z = e + z + z^2/2! + ...`, evaluated on the spectrum.
    pub fn exp(&self) -> Result<Element> {
        let out = self.map_spectrum(f64::exp)?;
        Ok(out)
    }
}
