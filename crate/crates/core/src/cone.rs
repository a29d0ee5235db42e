//! The symmetric cone of squares: membership, order, order-unit norms and states.

use nalgebra::DVector;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::element::{check_same, pack_symmetric, Element};
use crate::error::{Error, Result};
use crate::sampling::{random_square, trial_rng, unit_vector};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeStatus {
    Interior,
    Boundary,
    Exterior,
}

/// Position of an element relative to the closed cone `{x^2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeClassification {
    pub status: ConeStatus,
    pub min_eigenvalue: f64,
}

impl ConeClassification {
    pub fn is_interior(&self) -> bool {
        self.status == ConeStatus::Interior
    }

    /// Interior or boundary.
    pub fn in_closed_cone(&self) -> bool {
        self.status != ConeStatus::Exterior
    }
}

/// Threshold below which `|λ_min|` counts as zero for an element of spectral norm `norm`.
pub fn boundary_tolerance(norm: f64) -> f64 {
    tol::BOUNDARY_REL * (1.0 + norm)
}

pub fn classify(x: &Element) -> Result<ConeClassification> {
    let sd = x.spectral()?;
    let min = sd.min();
    let t = boundary_tolerance(sd.max_abs());
    let status = if min > t {
        ConeStatus::Interior
    } else if min.abs() <= t {
        ConeStatus::Boundary
    } else {
        ConeStatus::Exterior
    };
    Ok(ConeClassification {
        status,
        min_eigenvalue: min,
    })
}

pub(crate) fn require_interior(x: &Element) -> Result<()> {
    let c = classify(x)?;
    if c.is_interior() {
        Ok(())
    } else {
        Err(Error::NotInCone {
            min_eigenvalue: c.min_eigenvalue,
        })
    }
}

/// `x <= y` in the cone order, i.e. `y - x` lies in the closed cone.
pub fn order_leq(x: &Element, y: &Element) -> Result<bool> {
    Ok(classify(&y.sub(x)?)?.in_closed_cone())
}

/// Order-unit norm `‖x‖_p = inf{λ > 0 : -λp <= x <= λp}` for a base point `p` in the open cone.
///
/// Evaluated as the spectral radius of `P(p^{-1/2}) x`.
pub fn order_unit_norm(x: &Element, p: &Element) -> Result<f64> {
    check_same(x.alg(), p.alg())?;
    let c = classify(p)?;
    if !c.is_interior() {
        return Err(Error::BasePointNotInCone {
            min_eigenvalue: c.min_eigenvalue,
        });
    }
    let h = p.inv_sqrt()?.quadratic_rep();
    h.apply(x)?.spectral_norm()
}

impl Element {
    /// Norm declared by the algebra: the order-unit norm at `e` for simple
    /// algebras and sup-sums, the l2 combination of summand order-unit norms
    /// for Hilbert sums.
    pub fn declared_norm(&self) -> Result<f64> {
        if self.alg().is_order_unit_mode() {
            return self.spectral_norm();
        }
        let mut acc = 0.0;
        for i in 0..self.alg().parts().len() {
            let n = self.part(i).expect("part index in range").spectral_norm()?;
            acc += n * n;
        }
        Ok(acc.sqrt())
    }
}

/// Residuals of the three JB-algebra norm axioms at `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JbResiduals {
    /// `max(0, ‖xy‖ - ‖x‖‖y‖)`
    pub submultiplicative: f64,
    /// `|‖x²‖ - ‖x‖²|`
    pub square: f64,
    /// `max(0, ‖x²‖ - ‖x² + y²‖)`
    pub monotone: f64,
}

impl JbResiduals {
    pub fn max(&self) -> f64 {
        self.submultiplicative.max(self.square).max(self.monotone)
    }
}

/// Evaluates the JB norm axioms with the order-unit norm at the identity.
pub fn squares_norm_axioms(x: &Element, y: &Element) -> Result<JbResiduals> {
    check_same(x.alg(), y.alg())?;
    let nx = x.spectral_norm()?;
    let ny = y.spectral_norm()?;
    let nxy = x.product(y)?.spectral_norm()?;
    let x2 = x.square();
    let nx2 = x2.spectral_norm()?;
    let sum = x2.add(&y.square())?.spectral_norm()?;
    Ok(JbResiduals {
        submultiplicative: (nxy - nx * ny).max(0.0),
        square: (nx2 - nx * nx).abs(),
        monotone: (nx2 - sum).max(0.0),
    })
}

/// A linear functional `x -> <w, x>` in the coordinate inner product.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FunctionalRepr", into = "FunctionalRepr")]
pub struct Functional {
    alg: Algebra,
    weights: DVector<f64>,
}

#[derive(Serialize, Deserialize)]
struct FunctionalRepr {
    alg: Algebra,
    weights: Vec<f64>,
}

impl TryFrom<FunctionalRepr> for Functional {
    type Error = Error;

    fn try_from(r: FunctionalRepr) -> Result<Self> {
        Functional::new(r.alg, r.weights)
    }
}

impl From<Functional> for FunctionalRepr {
    fn from(f: Functional) -> Self {
        FunctionalRepr {
            alg: f.alg,
            weights: f.weights.as_slice().to_vec(),
        }
    }
}

impl Functional {
    pub fn new(alg: Algebra, weights: Vec<f64>) -> Result<Self> {
        // reuse element validation for length and finiteness
        let w = Element::new(alg, weights)?;
        Ok(Functional::from_element(&w))
    }

    fn from_element(w: &Element) -> Self {
        Functional {
            alg: w.alg().clone(),
            weights: w.coords().clone(),
        }
    }

    /// Normalizes a nonzero point `w` of the closed cone to the state `x -> <w,x>/<w,e>`.
    pub fn state_from_cone_point(w: &Element) -> Result<Self> {
        let at_e = w.inner(&w.alg().identity())?;
        if at_e <= 0.0 {
            return Err(Error::InvalidArgument(
                "state weights must be a nonzero point of the closed cone".into(),
            ));
        }
        Ok(Functional::from_element(&w.scale(1.0 / at_e)))
    }

    pub fn alg(&self) -> &Algebra {
        &self.alg
    }

    pub fn weights(&self) -> &DVector<f64> {
        &self.weights
    }

    pub fn value(&self, x: &Element) -> Result<f64> {
        check_same(&self.alg, x.alg())?;
        Ok(self.weights.dot(x.coords()))
    }

    /// Checks `f(e) = 1` and `f(x^2) >= -1e-12 (1 + ‖x^2‖)` on sampled squares.
    pub fn is_state(&self, samples: usize, seed: u64) -> Result<bool> {
        let at_e = self.value(&self.alg.identity())?;
        if (at_e - 1.0).abs() > 1e-12 {
            return Ok(false);
        }
        let mut rng = trial_rng(seed, 0);
        for _ in 0..samples {
            let sq = random_square(&self.alg, &mut rng);
            if self.value(&sq)? < -1e-12 * (1.0 + sq.euclidean_norm()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A random state: weights drawn from the dual cone (the cone itself under
/// the trace-form packing), normalized so that `f(e) = 1`.
pub fn random_state(alg: &Algebra, seed: u64) -> Functional {
    random_state_with(alg, &mut trial_rng(seed, 0))
}

pub fn random_state_with<R: Rng + ?Sized>(alg: &Algebra, rng: &mut R) -> Functional {
    loop {
        let w = random_square(alg, rng);
        if let Ok(f) = Functional::state_from_cone_point(&w) {
            return f;
        }
    }
}

pub fn state_value(f: &Functional, x: &Element) -> Result<f64> {
    f.value(x)
}

fn lift(alg: &Algebra, range: std::ops::Range<usize>, local: &DVector<f64>) -> Element {
    let mut w = DVector::zeros(alg.dim());
    w.rows_mut(range.start, range.len()).copy_from(local);
    Element::from_raw(alg.clone(), w)
}

fn rank_one(v: &DVector<f64>) -> DVector<f64> {
    pack_symmetric(&(v * v.transpose()))
}

/// Fixed family of extreme states: coordinate functionals on orthants,
/// `vv^T` for `v ∈ {e_i, (e_i ± e_j)/√2}` on `Sym(n)`, `(±e_i) ⊕ 1` on spin factors.
pub fn extreme_states(alg: &Algebra) -> Vec<Functional> {
    let mut out = Vec::new();
    for (part, range) in alg.parts() {
        let local: Vec<DVector<f64>> = match part {
            Algebra::Orthant(n) => (0..*n)
                .map(|i| {
                    let mut w = DVector::zeros(*n);
                    w[i] = 1.0;
                    w
                })
                .collect(),
            Algebra::Sym(n) => {
                let mut ws = Vec::new();
                let unit = |i: usize| {
                    let mut v = DVector::zeros(*n);
                    v[i] = 1.0;
                    v
                };
                for i in 0..*n {
                    ws.push(rank_one(&unit(i)));
                    for j in i + 1..*n {
                        for s in [1.0, -1.0] {
                            let v = (unit(i) + unit(j) * s) * std::f64::consts::FRAC_1_SQRT_2;
                            ws.push(rank_one(&v));
                        }
                    }
                }
                ws
            }
            Algebra::Spin(n) => {
                let mut ws = Vec::new();
                for i in 0..*n {
                    for s in [1.0, -1.0] {
                        let mut w = DVector::zeros(n + 1);
                        w[i] = s;
                        w[*n] = 1.0;
                        ws.push(w);
                    }
                }
                ws
            }
            Algebra::Sum { .. } => unreachable!("nested sums are rejected by validation"),
        };
        for w in local {
            out.push(Functional::from_element(&lift(alg, range.clone(), &w)));
        }
    }
    out
}

/// `count` extreme states with random directions: `vv^T` for unit `v` on
/// `Sym(n)` and `u ⊕ 1` for unit `u` on spin factors, cycling over summands.
pub fn sampled_extreme_states<R: Rng + ?Sized>(
    alg: &Algebra,
    count: usize,
    rng: &mut R,
) -> Vec<Functional> {
    let parts = alg.parts();
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let (part, range) = &parts[k % parts.len()];
        let local = match part {
            Algebra::Orthant(n) => {
                let mut w = DVector::zeros(*n);
                w[rng.random_range(0..*n)] = 1.0;
                w
            }
            Algebra::Sym(n) => rank_one(&unit_vector(*n, rng)),
            Algebra::Spin(n) => {
                let u = unit_vector(*n, rng);
                let mut w = DVector::zeros(n + 1);
                w.rows_mut(0, *n).copy_from(&u);
                w[*n] = 1.0;
                w
            }
            Algebra::Sum { .. } => unreachable!("nested sums are rejected by validation"),
        };
        out.push(Functional::from_element(&lift(alg, range.clone(), &local)));
    }
    out
}

/// States `c_i / <c_i, e>` built from the Jordan frame of `x`; the smallest
/// value among them is `λ_min(x)`.
pub fn spectral_states(x: &Element) -> Result<Vec<Functional>> {
    let e = x.alg().identity();
    let sd = x.spectral()?;
    sd.idempotents
        .iter()
        .map(|c| {
            let at_e = c.inner(&e)?;
            Ok(Functional::from_element(&c.scale(1.0 / at_e)))
        })
        .collect()
}

/// Membership in the open cone tested as `f(x) > 0` over sampled states.
///
/// The family always contains the fixed extreme states and the spectral
/// states of `x`, plus `samples` random states. Positivity uses the same
/// relative threshold as [`classify`].
pub fn interior_by_states(x: &Element, samples: usize, seed: u64) -> Result<bool> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let threshold = boundary_tolerance(x.spectral_norm()?);
    let mut rng = trial_rng(seed, 0);
    let states = extreme_states(x.alg())
        .into_iter()
        .chain(spectral_states(x)?)
        .chain((0..samples).map(|_| random_state_with(x.alg(), &mut rng)));
    for f in states {
        if f.value(x)? <= threshold {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Self-duality of the cone under the coordinate inner product: interior
/// points pair positively with sampled nonzero points of the closed cone, and
/// exterior points are separated by a closed-cone witness.
pub fn self_dual_check(
    alg: &Algebra,
    trials: usize,
    seed: u64,
) -> Result<crate::verify::SuiteReport> {
    crate::verify::run_suite(&crate::verify::SuiteSpec::new(
        crate::verify::SuiteId::SelfDuality,
        alg.clone(),
        trials,
        JH_TOLERANCE,
        seed,
    ))
}

/// Associativity of the inner product, `<ab, c> = <b, ac>`, on random triples.
pub fn jh_identity_check(
    alg: &Algebra,
    trials: usize,
    seed: u64,
) -> Result<crate::verify::SuiteReport> {
    crate::verify::run_suite(&crate::verify::SuiteSpec::new(
        crate::verify::SuiteId::JhIdentity,
        alg.clone(),
        trials,
        JH_TOLERANCE,
        seed,
    ))
}

/// Relative residual threshold for the inner-product checks.
pub const JH_TOLERANCE: f64 = 1e-10;

/// Ambient norm used by [`normality_probe`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AmbientNorm {
    /// Order-unit norm at the identity.
    OrderUnit,
    /// Norm of the coordinate (trace-form) inner product.
    InnerProduct,
}

fn ambient(x: &Element, norm: AmbientNorm) -> Result<f64> {
    match norm {
        AmbientNorm::OrderUnit => x.spectral_norm(),
        AmbientNorm::InnerProduct => Ok(x.euclidean_norm()),
    }
}

/// Largest observed `‖x‖ / ‖y‖` over sampled pairs `0 <= x <= y`.
pub fn normality_probe(alg: &Algebra, trials: usize, seed: u64, norm: AmbientNorm) -> Result<f64> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let mut gamma: f64 = 0.0;
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        let x = random_square(alg, &mut rng);
        let y = x.add(&random_square(alg, &mut rng))?;
        let ny = ambient(&y, norm)?;
        if ny > 0.0 {
            gamma = gamma.max(ambient(&x, norm)? / ny);
        }
    }
    Ok(gamma)
}
