//! Finsler geometry of the open cone.
//!
//! Tangent norms `τ(p, v) = ‖v‖_p` and `b(p, v) = ‖h(v)‖_e`, the gauge
//! `M(a/b)`, the Thompson metric, the point symmetries `s_x(y) = {x, y⁻¹, x}`,
//! geodesics, the restricted Carathéodory distance and two Riemannian
//! comparison metrics.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::cone::{
    extreme_states, order_unit_norm, require_interior, sampled_extreme_states, Functional,
};
use crate::element::{check_same, Element, LinearOperator};
use crate::error::{Error, Result};
use crate::sampling::trial_rng;
use crate::tol;

/// A tangent vector `v ∈ T_pΩ ≅ V` at a base point of the open cone.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    base: Element,
    dir: Element,
}

impl TangentVector {
    pub fn new(base: Element, dir: Element) -> Result<Self> {
        check_same(base.alg(), dir.alg())?;
        require_interior(&base)?;
        Ok(TangentVector { base, dir })
    }

    pub fn base(&self) -> &Element {
        &self.base
    }

    pub fn dir(&self) -> &Element {
        &self.dir
    }
}

/// How an automorphism was built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum AutomorphismKind {
    QuadraticRep { point: Element },
    Composition { factors: Vec<AutomorphismKind> },
}

/// A linear automorphism of the cone, `g(Ω) = Ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct Automorphism {
    op: LinearOperator,
    kind: AutomorphismKind,
}

impl Automorphism {
    /// `P(a)` for `a` in the open cone.
    pub fn quadratic(a: &Element) -> Result<Self> {
        require_interior(a)?;
        Ok(Automorphism {
            op: a.quadratic_rep(),
            kind: AutomorphismKind::QuadraticRep { point: a.clone() },
        })
    }

    /// `λ · id`, realized as `P(√λ e)`.
    pub fn scaling(alg: &crate::Algebra, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidArgument(
                "scaling factor must be positive".into(),
            ));
        }
        Automorphism::quadratic(&alg.identity().scale(lambda.sqrt()))
    }

    /// Composition `first ∘ second ∘ ...` (rightmost applied first).
    pub fn compose(factors: Vec<Automorphism>) -> Result<Self> {
        let mut iter = factors.iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::InvalidArgument("empty composition".into()))?;
        let mut op = first.op.clone();
        for g in iter {
            op = op.compose(&g.op)?;
        }
        Ok(Automorphism {
            op,
            kind: AutomorphismKind::Composition {
                factors: factors.into_iter().map(|g| g.kind).collect(),
            },
        })
    }

    pub fn op(&self) -> &LinearOperator {
        &self.op
    }

    pub fn kind(&self) -> &AutomorphismKind {
        &self.kind
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.op.apply(x)
    }

    /// Inverse automorphism, using `P(a)⁻¹ = P(a⁻¹)` factorwise.
    pub fn inverse(&self) -> Result<Automorphism> {
        fn invert(kind: &AutomorphismKind) -> Result<Automorphism> {
            match kind {
                AutomorphismKind::QuadraticRep { point } => {
                    Automorphism::quadratic(&point.inverse()?)
                }
                AutomorphismKind::Composition { factors } => {
                    Automorphism::compose(factors.iter().rev().map(invert).collect::<Result<_>>()?)
                }
            }
        }
        invert(&self.kind)
    }
}

/// `P(√a)`, the automorphism carrying `e` to `a`.
pub fn automorphism_from_point(a: &Element) -> Result<Automorphism> {
    require_interior(a)?;
    Automorphism::quadratic(&a.sqrt()?)
}

/// `M(a/b) = inf{β > 0 : βa >= b}`, the largest eigenvalue of `P(a^{-1/2}) b`.
pub fn gauge_m(a: &Element, b: &Element) -> Result<f64> {
    check_same(a.alg(), b.alg())?;
    require_interior(a)?;
    require_interior(b)?;
    let h = a.inv_sqrt()?.quadratic_rep();
    Ok(h.apply(b)?.spectral()?.max())
}

/// Thompson's metric `max{log M(x/y), log M(y/x)}`.
pub fn thompson_distance(x: &Element, y: &Element) -> Result<f64> {
    let forward = gauge_m(x, y)?.ln();
    let backward = gauge_m(y, x)?.ln();
    Ok(forward.max(backward).max(0.0))
}

/// `τ(p, v) = ‖v‖_p`.
pub fn tangent_norm_tau(t: &TangentVector) -> Result<f64> {
    order_unit_norm(&t.dir, &t.base)
}

/// `b(p, v) = ‖h(v)‖_e` for an automorphism with `h(p) = e`.
pub fn tangent_norm_b(t: &TangentVector, h: &Automorphism) -> Result<f64> {
    let e = t.base.alg().identity();
    let hp = h.apply(&t.base)?;
    let residual = hp.sub(&e)?.spectral_norm()?;
    if residual > tol::AUTOMORPHISM_BASE {
        return Err(Error::AutomorphismMismatch { residual });
    }
    order_unit_norm(&h.apply(&t.dir)?, &e)
}

/// Point symmetry at `x`: `s_x(y) = {x, y⁻¹, x} = P(x) y⁻¹`.
pub fn symmetry(x: &Element, y: &Element) -> Result<Element> {
    check_same(x.alg(), y.alg())?;
    require_interior(x)?;
    require_interior(y)?;
    x.quadratic_rep().apply(&y.inverse()?)
}

/// Residuals of the Loos symmetric-space axioms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoosResiduals {
    /// `‖x·x - x‖`
    pub idempotent: f64,
    /// `‖x·(x·y) - y‖`
    pub involutive: f64,
    /// `‖x·(y·z) - (x·y)·(x·z)‖`
    pub distributive: f64,
    /// Smallest displacement `‖s_x(w) - w‖_x` over the sampled sphere `‖w - x‖_x = r`.
    pub min_displacement: f64,
    /// Radius `r` of the tested sphere, measured in `‖·‖_x`.
    pub radius: f64,
}

impl LoosResiduals {
    /// Lower bound `r(2 + r)/(1 + r)` on the displacement around an isolated
    /// fixed point; attained along a rank-one direction.
    pub fn displacement_bound(&self) -> f64 {
        let r = self.radius;
        r * (2.0 + r) / (1.0 + r)
    }
}

/// Evaluates Loos axioms (i)-(iii) at `(x, y, z)` and probes (iv) on a
/// sphere of `sphere_points` samples with radius 0.1 in the norm `‖·‖_x`.
pub fn loos_axioms(
    x: &Element,
    y: &Element,
    z: &Element,
    sphere_points: usize,
    seed: u64,
) -> Result<LoosResiduals> {
    let dist = |a: &Element, b: &Element| -> Result<f64> { Ok(a.sub(b)?.euclidean_norm()) };
    let idempotent = dist(&symmetry(x, x)?, x)?;
    let involutive = dist(&symmetry(x, &symmetry(x, y)?)?, y)?;
    let distributive = dist(
        &symmetry(x, &symmetry(y, z)?)?,
        &symmetry(&symmetry(x, y)?, &symmetry(x, z)?)?,
    )?;

    let radius = 0.1;
    let g = automorphism_from_point(x)?;
    let e = x.alg().identity();
    let mut rng = trial_rng(seed, 0);
    let mut min_displacement = f64::INFINITY;
    let directions = crate::cone::extreme_states(x.alg())
        .into_iter()
        .chain(sampled_extreme_states(x.alg(), sphere_points, &mut rng))
        .flat_map(|f| {
            let w = Element::from_raw(x.alg().clone(), f.weights().clone());
            [w.clone(), w.scale(-1.0)]
        });
    for w in directions
        .chain((0..sphere_points).map(|_| crate::sampling::random_element(x.alg(), &mut rng)))
    {
        let n = w.spectral_norm()?;
        if n == 0.0 {
            continue;
        }
        // w-sphere around e, carried to x by P(√x)
        let point = g.apply(&e.add(&w.scale(radius / n))?)?;
        let moved = symmetry(x, &point)?.sub(&point)?;
        min_displacement = min_displacement.min(order_unit_norm(&moved, x)?);
    }
    Ok(LoosResiduals {
        idempotent,
        involutive,
        distributive,
        min_displacement,
        radius,
    })
}

/// Geodesic `γ(t) = g exp(t log(g⁻¹ q))` with `g = P(√p)`, so `γ(0) = p`, `γ(1) = q`.
pub fn geodesic_through(p: &Element, q: &Element, t: f64) -> Result<Element> {
    check_same(p.alg(), q.alg())?;
    require_interior(p)?;
    require_interior(q)?;
    let g = automorphism_from_point(p)?;
    let at_e = p.inv_sqrt()?.quadratic_rep().apply(q)?;
    g.apply(&at_e.log()?.scale(t).exp()?)
}

/// Velocity `γ'(0) = P(√p) log(P(p^{-1/2}) q)`.
pub fn geodesic_velocity(p: &Element, q: &Element) -> Result<Element> {
    require_interior(p)?;
    require_interior(q)?;
    let at_e = p.inv_sqrt()?.quadratic_rep().apply(q)?;
    automorphism_from_point(p)?.apply(&at_e.log()?)
}

/// Restricted Carathéodory distance `sup |log f(x)/f(y)|` over positive functionals.
///
/// The supremum runs over the fixed extreme states, `n_extreme` sampled
/// extreme states, and the two functionals `<P(y^{-1/2})c, ·>` built from the
/// extreme idempotents `c` of `P(y^{-1/2})x`, which attain it. The result is a
/// certified lower bound on the true supremum.
pub fn caratheodory_restricted(
    x: &Element,
    y: &Element,
    n_extreme: usize,
    seed: u64,
) -> Result<f64> {
    check_same(x.alg(), y.alg())?;
    require_interior(x)?;
    require_interior(y)?;
    if n_extreme == 0 {
        return Err(Error::InvalidArgument(
            "n_extreme must be at least 1".into(),
        ));
    }
    let mut rng = trial_rng(seed, 0);
    let mut functionals: Vec<Functional> = extreme_states(x.alg());
    functionals.extend(sampled_extreme_states(x.alg(), n_extreme, &mut rng));

    let h = y.inv_sqrt()?.quadratic_rep();
    let sd = h.apply(x)?.spectral()?;
    for c in [
        &sd.idempotents[0],
        sd.idempotents.last().expect("rank >= 1"),
    ] {
        let w = h.apply(c)?;
        functionals.push(Functional::new(x.alg().clone(), w.as_slice().to_vec())?);
    }

    let mut best: f64 = 0.0;
    for f in &functionals {
        let fx = f.value(x)?;
        let fy = f.value(y)?;
        if fx > 0.0 && fy > 0.0 {
            best = best.max((fx / fy).ln().abs());
        }
    }
    Ok(best)
}

fn require_inner_product(p: &Element) -> Result<()> {
    if p.alg().is_inner_product_mode() {
        Ok(())
    } else {
        Err(Error::NotInnerProductMode(p.alg().to_string()))
    }
}

/// `g_p(u, v) = <{p⁻¹, u, p⁻¹}, v>` in the Hilbert structure.
pub fn riemannian_metric_jh(p: &Element, u: &Element, v: &Element) -> Result<f64> {
    check_same(p.alg(), u.alg())?;
    check_same(p.alg(), v.alg())?;
    require_inner_product(p)?;
    require_interior(p)?;
    p.inverse()?.quadratic_rep().apply(u)?.inner(v)
}

/// Gram matrix of `g_p` in the coordinate basis.
pub fn riemannian_gram_jh(p: &Element) -> Result<DMatrix<f64>> {
    require_inner_product(p)?;
    require_interior(p)?;
    Ok(p.inverse()?.quadratic_rep().matrix().clone())
}

/// Relative residual threshold of [`tau_isometry_check`].
pub const ISOMETRY_TOLERANCE: f64 = 1e-9;

/// Checks that `g` preserves `τ` and the Thompson metric on random samples.
pub fn tau_isometry_check(
    g: &Automorphism,
    trials: usize,
    seed: u64,
) -> Result<crate::verify::SuiteReport> {
    crate::verify::isometry_check(g, trials, ISOMETRY_TOLERANCE, seed)
}

/// Cones whose characteristic function has a closed form here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "cone", content = "n", rename_all = "lowercase")]
pub enum CharacteristicCone {
    /// The nonnegative orthant of `R^n`.
    Orthant(usize),
    /// The Lorentz cone `{(a, α) : α >= ‖a‖}` in `R^n` (last coordinate is `α`), `n >= 2`.
    Lorentz(usize),
}

impl CharacteristicCone {
    pub fn dim(&self) -> usize {
        match self {
            CharacteristicCone::Orthant(n) | CharacteristicCone::Lorentz(n) => *n,
        }
    }

    /// The cone underlying an orthant or spin-factor algebra.
    pub fn of_algebra(alg: &crate::Algebra) -> Option<Self> {
        match alg {
            crate::Algebra::Orthant(n) => Some(CharacteristicCone::Orthant(*n)),
            crate::Algebra::Spin(n) => Some(CharacteristicCone::Lorentz(n + 1)),
            _ => None,
        }
    }

    fn check(&self, p: &[f64]) -> Result<()> {
        let n = self.dim();
        if n == 0 || matches!(self, CharacteristicCone::Lorentz(1)) {
            return Err(Error::InvalidArgument(format!("degenerate cone {self:?}")));
        }
        if p.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.len(),
            });
        }
        let margin = match self {
            CharacteristicCone::Orthant(_) => p.iter().cloned().fold(f64::INFINITY, f64::min),
            CharacteristicCone::Lorentz(_) => {
                let a = p[..n - 1].iter().map(|x| x * x).sum::<f64>().sqrt();
                p[n - 1] - a
            }
        };
        let scale = p.iter().map(|x| x.abs()).fold(0.0, f64::max);
        if margin <= tol::BOUNDARY_REL * (1.0 + scale) {
            return Err(Error::NotInCone {
                min_eigenvalue: margin,
            });
        }
        Ok(())
    }

    /// `log φ(p)` up to an additive constant.
    pub fn log_characteristic(&self, p: &[f64]) -> Result<f64> {
        self.check(p)?;
        Ok(match self {
            CharacteristicCone::Orthant(_) => -p.iter().map(|x| x.ln()).sum::<f64>(),
            CharacteristicCone::Lorentz(n) => -(*n as f64) / 2.0 * lorentz_form(p).ln(),
        })
    }

    /// Hessian of `log φ` at `p`.
    pub fn hessian(&self, p: &[f64]) -> Result<DMatrix<f64>> {
        self.check(p)?;
        Ok(match self {
            CharacteristicCone::Orthant(n) => {
                DMatrix::from_diagonal(&DVector::from_iterator(*n, p.iter().map(|x| 1.0 / (x * x))))
            }
            CharacteristicCone::Lorentz(n) => {
                // log φ = -(n/2) log q with q = α² - ‖a‖²
                let q = lorentz_form(p);
                let mut grad = DVector::from_iterator(*n, p.iter().map(|x| -2.0 * x));
                grad[n - 1] = 2.0 * p[n - 1];
                let mut hq = DMatrix::from_diagonal_element(*n, *n, -2.0);
                hq[(n - 1, n - 1)] = 2.0;
                let h = (&grad * grad.transpose()) / (q * q) - hq / q;
                h * (*n as f64 / 2.0)
            }
        })
    }
}

fn lorentz_form(p: &[f64]) -> f64 {
    let n = p.len();
    p[n - 1] * p[n - 1] - p[..n - 1].iter().map(|x| x * x).sum::<f64>()
}

/// `u^T ∇² log φ(p) v`, the canonical metric of the cone from its characteristic function.
pub fn characteristic_metric(
    cone: CharacteristicCone,
    p: &[f64],
    u: &[f64],
    v: &[f64],
) -> Result<f64> {
    let h = cone.hessian(p)?;
    for w in [u, v] {
        if w.len() != cone.dim() {
            return Err(Error::DimensionMismatch {
                expected: cone.dim(),
                got: w.len(),
            });
        }
    }
    let u = DVector::from_column_slice(u);
    let v = DVector::from_column_slice(v);
    Ok(u.dot(&(h * v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{central_hessian, gauge_bisection};
    use crate::sampling::random_interior;
    use crate::Algebra;

    fn el(alg: Algebra, c: &[f64]) -> Element {
        Element::new(alg, c.to_vec()).unwrap()
    }

    fn diff(a: &Element, b: &Element) -> f64 {
        a.sub(b).unwrap().euclidean_norm()
    }

    #[test]
    fn gauge_examples() {
        let x = el(Algebra::Sym(2), &[2.0, 0.3, 1.0]);
        assert!((gauge_m(&x, &x).unwrap() - 1.0).abs() < 1e-13);
        let a = el(Algebra::Orthant(2), &[1.0, 4.0]);
        let b = el(Algebra::Orthant(2), &[2.0, 1.0]);
        assert!((gauge_m(&a, &b).unwrap() - 2.0).abs() < 1e-14);
        assert!((gauge_bisection(&a, &b).unwrap() - 2.0).abs() < 1e-8);
        let i = Algebra::Sym(3).identity();
        let b = el(Algebra::Sym(3), &[3.0, 0.5, 0.1, 2.0, -0.2, 1.0]);
        let lmax = b.spectral().unwrap().max();
        assert!((gauge_m(&i, &b).unwrap() - lmax).abs() < 1e-13);
        let bad = el(Algebra::Orthant(2), &[1.0, -1.0]);
        assert!(matches!(gauge_m(&bad, &a), Err(Error::NotInCone { .. })));
    }

    #[test]
    fn gauge_agrees_with_bisection() {
        let mut rng = trial_rng(21, 0);
        for alg in [Algebra::Sym(3), Algebra::Spin(3)] {
            for _ in 0..10 {
                let a = random_interior(&alg, &mut rng);
                let b = random_interior(&alg, &mut rng);
                let m = gauge_m(&a, &b).unwrap();
                let o = gauge_bisection(&a, &b).unwrap();
                assert!((m - o).abs() <= 1e-7 * (1.0 + m), "{m} {o}");
            }
        }
    }

    #[test]
    fn thompson_examples() {
        let x = el(Algebra::Orthant(2), &[1.0, 4.0]);
        let y = el(Algebra::Orthant(2), &[2.0, 1.0]);
        assert!((thompson_distance(&x, &y).unwrap() - 4f64.ln()).abs() < 1e-14);
        assert_eq!(thompson_distance(&x, &x).unwrap(), 0.0);
        let s = el(Algebra::Spin(2), &[0.5, 0.2, 3.0]);
        let d = thompson_distance(&s.scale(3.5), &s).unwrap();
        assert!((d - 3.5f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn tangent_norms() {
        let e = Algebra::Spin(2).identity();
        let v = el(Algebra::Spin(2), &[3.0, 4.0, 2.0]);
        let t = TangentVector::new(e.clone(), v.clone()).unwrap();
        assert!((tangent_norm_tau(&t).unwrap() - 7.0).abs() < 1e-12);
        let id = Automorphism::quadratic(&e).unwrap();
        assert!((tangent_norm_b(&t, &id).unwrap() - 7.0).abs() < 1e-12);

        let p = el(Algebra::Spin(2), &[0.3, -0.1, 1.2]);
        let t1 = TangentVector::new(p.clone(), v.clone()).unwrap();
        let t2 = TangentVector::new(p.scale(2.0), v.clone()).unwrap();
        let tau1 = tangent_norm_tau(&t1).unwrap();
        assert!((tangent_norm_tau(&t2).unwrap() - tau1 / 2.0).abs() < 1e-12);

        let p = el(Algebra::Orthant(2), &[4.0, 1.0]);
        let v = el(Algebra::Orthant(2), &[1.0, 1.0]);
        let h = Automorphism::quadratic(&p.inv_sqrt().unwrap()).unwrap();
        let t = TangentVector::new(p, v).unwrap();
        assert!((tangent_norm_b(&t, &h).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(
            tangent_norm_b(&t, &id_orthant()),
            Err(Error::AutomorphismMismatch { .. })
        ));
        assert!(TangentVector::new(
            el(Algebra::Orthant(2), &[1.0, 0.0]),
            el(Algebra::Orthant(2), &[1.0, 0.0])
        )
        .is_err());
    }

    fn id_orthant() -> Automorphism {
        Automorphism::quadratic(&Algebra::Orthant(2).identity()).unwrap()
    }

    #[test]
    fn automorphisms() {
        let a = el(Algebra::Orthant(2), &[4.0, 9.0]);
        let g = automorphism_from_point(&a).unwrap();
        assert_eq!(
            g.op().matrix(),
            &DMatrix::from_diagonal(&DVector::from_vec(vec![4.0, 9.0]))
        );
        let e = Algebra::Sym(3).identity();
        let g = automorphism_from_point(&e).unwrap();
        assert!((g.op().matrix() - DMatrix::identity(6, 6)).abs().max() < 1e-14);
        let mut rng = trial_rng(2, 0);
        let p = random_interior(&Algebra::Sym(3), &mut rng);
        let q = random_interior(&Algebra::Sym(3), &mut rng);
        let g = Automorphism::compose(vec![
            Automorphism::quadratic(&p).unwrap(),
            Automorphism::quadratic(&q).unwrap(),
        ])
        .unwrap();
        let ginv = g.inverse().unwrap();
        let x = random_interior(&Algebra::Sym(3), &mut rng);
        let back = ginv.apply(&g.apply(&x).unwrap()).unwrap();
        assert!(diff(&back, &x) < 1e-9 * (1.0 + x.euclidean_norm()));
        assert!(g.op().condition_number().is_finite());
    }

    #[test]
    fn symmetry_examples() {
        let e = Algebra::Sym(2).identity();
        let y = el(Algebra::Sym(2), &[2.0, 0.4, 1.5]);
        assert!(diff(&symmetry(&e, &y).unwrap(), &y.inverse().unwrap()) < 1e-14);
        assert!(diff(&symmetry(&y, &y).unwrap(), &y) < 1e-13);
        let x = el(Algebra::Orthant(2), &[2.0, 3.0]);
        let one = Algebra::Orthant(2).identity();
        assert_eq!(symmetry(&x, &one).unwrap().as_slice(), &[4.0, 9.0]);
    }

    #[test]
    fn loos_isolated_fixed_point_at_identity() {
        let e = Algebra::Orthant(3).identity();
        let r = loos_axioms(&e, &e, &e, 64, 0).unwrap();
        assert_eq!(r.idempotent, 0.0);
        assert!(r.min_displacement >= 0.19, "{}", r.min_displacement);
        assert!((r.min_displacement - r.displacement_bound()).abs() < 1e-12);
    }

    #[test]
    fn geodesic_examples() {
        let e = Algebra::Orthant(2).identity();
        let q = el(Algebra::Orthant(2), &[4.0, 1.0]);
        let g = geodesic_through(&e, &q, 0.5).unwrap();
        assert!((g.as_slice()[0] - 2.0).abs() < 1e-14 && (g.as_slice()[1] - 1.0).abs() < 1e-14);
        let mut rng = trial_rng(4, 0);
        let p = random_interior(&Algebra::Spin(3), &mut rng);
        let q = random_interior(&Algebra::Spin(3), &mut rng);
        assert!(
            diff(&geodesic_through(&p, &q, 0.0).unwrap(), &p) < 1e-12 * (1.0 + p.euclidean_norm())
        );
        assert!(
            diff(&geodesic_through(&p, &q, 1.0).unwrap(), &q) < 1e-11 * (1.0 + q.euclidean_norm())
        );
        for t in [-1.0, -0.5, 0.25, 1.0] {
            let rev = symmetry(&p, &geodesic_through(&p, &q, t).unwrap()).unwrap();
            let back = geodesic_through(&p, &q, -t).unwrap();
            assert!(diff(&rev, &back) < 1e-9 * (1.0 + back.euclidean_norm()));
        }
    }

    #[test]
    fn caratheodory_examples() {
        let x = el(Algebra::Orthant(2), &[1.0, 4.0]);
        let y = el(Algebra::Orthant(2), &[2.0, 1.0]);
        assert_eq!(caratheodory_restricted(&x, &x, 4, 0).unwrap(), 0.0);
        let c = caratheodory_restricted(&x, &y, 4, 0).unwrap();
        assert!((c - 4f64.ln()).abs() < 1e-14);
        let mut rng = trial_rng(6, 0);
        let alg = Algebra::Spin(3);
        for _ in 0..20 {
            let x = random_interior(&alg, &mut rng);
            let y = random_interior(&alg, &mut rng);
            let d = thompson_distance(&x, &y).unwrap();
            let c = caratheodory_restricted(&x, &y, 64, 1).unwrap();
            assert!(c <= d + 1e-9 && (d - c).abs() < 1e-6, "{c} {d}");
        }
        // more sampled functionals never decrease the bound
        let x = random_interior(&Algebra::Sym(3), &mut rng);
        let y = random_interior(&Algebra::Sym(3), &mut rng);
        let mut prev = 0.0;
        for n in [1, 4, 16, 64] {
            let c = caratheodory_restricted(&x, &y, n, 3).unwrap();
            assert!(c >= prev);
            prev = c;
        }
    }

    #[test]
    fn riemannian_examples() {
        let alg = Algebra::Spin(2);
        let e = alg.identity();
        let u = el(alg.clone(), &[3.0, 4.0, 2.0]);
        let g = riemannian_metric_jh(&e, &u, &u).unwrap().sqrt();
        assert!((g - 29f64.sqrt()).abs() < 1e-12);
        let v = el(alg.clone(), &[1.0, -1.0, 0.5]);
        assert!((riemannian_metric_jh(&e, &u, &v).unwrap() - u.inner(&v).unwrap()).abs() < 1e-14);
        let sum = Algebra::sum_inf(vec![Algebra::Orthant(1), Algebra::Spin(1)]).unwrap();
        let se = sum.identity();
        assert!(matches!(
            riemannian_metric_jh(&se, &se, &se),
            Err(Error::NotInnerProductMode(_))
        ));
    }

    #[test]
    fn characteristic_metric_examples() {
        let c = CharacteristicCone::Orthant(2);
        let v = characteristic_metric(c, &[1.0, 2.0], &[1.0, 1.0], &[1.0, 1.0]).unwrap();
        assert!((v - 1.25).abs() < 1e-15);
        let fd = central_hessian(
            |x| c.log_characteristic(x.as_slice()).unwrap(),
            &DVector::from_vec(vec![1.0, 2.0]),
            1e-4,
        );
        let h = c.hessian(&[1.0, 2.0]).unwrap();
        assert!((fd - h).abs().max() < 1e-5);
        let lam = [3.0, 0.5];
        let scaled = characteristic_metric(c, &[3.0, 1.0], &[3.0, 0.5], &[3.0, 0.5]).unwrap();
        assert!((scaled - 1.25).abs() < 1e-14, "{lam:?}");
        let l = CharacteristicCone::Lorentz(2);
        let h = l.hessian(&[0.0, 1.0]).unwrap();
        assert!((h[(0, 1)]).abs() < 1e-15 && (h[(0, 0)] - h[(1, 1)]).abs() < 1e-14);
        assert!(matches!(
            characteristic_metric(l, &[2.0, 1.0], &[1.0, 0.0], &[1.0, 0.0]),
            Err(Error::NotInCone { .. })
        ));
    }
}
