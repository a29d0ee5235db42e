//! Input sampling and residual evaluation for each suite.
//!
//! Residuals are relative: each difference is divided by one plus the
//! product of the order-unit norms of the inputs it depends on. Boolean
//! checks contribute 0 when they hold and 1 when they fail.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::SuiteId;
use crate::algebra::Algebra;
use crate::cone::{
    classify, extreme_states, interior_by_states, order_leq, order_unit_norm, squares_norm_axioms,
};
use crate::element::{commutator, Element, LinearOperator};
use crate::error::{Error, Result};
use crate::geometry::{
    automorphism_from_point, caratheodory_restricted, geodesic_through, geodesic_velocity,
    loos_axioms, riemannian_gram_jh, riemannian_metric_jh, symmetry, tangent_norm_b,
    tangent_norm_tau, thompson_distance, Automorphism, CharacteristicCone, TangentVector,
};
use crate::oracle::{exp_series, order_unit_norm_bisection};
use crate::sampling::{random_element, random_interior, random_interior_narrow, random_square};

/// Inputs of one trial: algebra elements plus scalar parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialInputs {
    pub elements: Vec<Element>,
    #[serde(default)]
    pub params: Vec<f64>,
}

impl TrialInputs {
    fn get(&self, i: usize) -> Result<&Element> {
        self.elements
            .get(i)
            .ok_or_else(|| Error::InvalidArgument(format!("witness is missing input {i}")))
    }

    fn param(&self, i: usize) -> Result<f64> {
        self.params
            .get(i)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("witness is missing parameter {i}")))
    }
}

/// Points of the geodesic parameter used by the reversal check.
pub const REVERSAL_TIMES: [f64; 6] = [-1.0, -0.5, -0.25, 0.25, 0.5, 1.0];
const ADDITIVITY_TIMES: [f64; 5] = [-0.5, 0.0, 0.3, 1.0, 1.5];
const LOOS_SPHERE_POINTS: usize = 16;
const CARATHEODORY_MESH: usize = 64;
const STATE_SAMPLES: usize = 8;

pub(super) fn sample<R: Rng + ?Sized>(suite: SuiteId, alg: &Algebra, rng: &mut R) -> TrialInputs {
    let normal = |rng: &mut R| random_element(alg, rng);
    let interior = |rng: &mut R| random_interior(alg, rng);
    let narrow = |rng: &mut R| random_interior_narrow(alg, rng);
    let (elements, params) = match suite {
        SuiteId::JordanIdentity => (vec![normal(rng), normal(rng), normal(rng)], vec![]),
        SuiteId::PowerAssoc | SuiteId::CommutatorIdentities => (vec![normal(rng)], vec![]),
        SuiteId::Derivation | SuiteId::JhIdentity => {
            (vec![normal(rng), normal(rng), normal(rng)], vec![])
        }
        SuiteId::JbNormAxioms => (vec![normal(rng), normal(rng)], vec![]),
        SuiteId::ConeSquares => {
            let x = normal(rng);
            let a = interior(rng);
            let shift: f64 = 3.0 * rng.sample::<f64, _>(StandardNormal);
            let w = normal(rng)
                .add(&alg.identity().scale(shift))
                .expect("same algebra");
            (vec![x, a, w], vec![])
        }
        SuiteId::Homogeneity => (vec![interior(rng), interior(rng)], vec![]),
        SuiteId::TauInvariance => {
            let els = vec![
                interior(rng),
                interior(rng),
                normal(rng),
                interior(rng),
                interior(rng),
            ];
            let lambda = rng.sample::<f64, _>(StandardNormal).exp();
            (els, vec![lambda])
        }
        SuiteId::SymmetryLoos => (vec![narrow(rng), narrow(rng), narrow(rng)], vec![]),
        SuiteId::GeodesicReversal => (vec![narrow(rng), narrow(rng)], vec![]),
        SuiteId::ThompsonCaratheodory => {
            let els = vec![interior(rng), interior(rng), interior(rng)];
            let lambda = rng.sample::<f64, _>(StandardNormal).exp();
            (els, vec![lambda])
        }
        SuiteId::SelfDuality => {
            let shift: f64 = 3.0 * rng.sample::<f64, _>(StandardNormal);
            let x = normal(rng)
                .add(&alg.identity().scale(shift))
                .expect("same algebra");
            (vec![x, random_square(alg, rng)], vec![])
        }
        SuiteId::Normality => (
            vec![random_square(alg, rng), random_square(alg, rng)],
            vec![],
        ),
        SuiteId::MetricComparison => (
            vec![interior(rng), normal(rng), normal(rng), narrow(rng)],
            vec![],
        ),
    };
    TrialInputs { elements, params }
}

pub(super) fn evaluate(suite: SuiteId, inputs: &TrialInputs) -> Result<f64> {
    match suite {
        SuiteId::JordanIdentity => jordan_identity(inputs),
        SuiteId::PowerAssoc => power_assoc(inputs),
        SuiteId::CommutatorIdentities => commutator_identities(inputs),
        SuiteId::Derivation => derivation(inputs),
        SuiteId::JbNormAxioms => jb_norm_axioms(inputs),
        SuiteId::ConeSquares => cone_squares(inputs),
        SuiteId::Homogeneity => homogeneity(inputs),
        SuiteId::TauInvariance => tau_invariance(inputs),
        SuiteId::SymmetryLoos => symmetry_loos(inputs),
        SuiteId::GeodesicReversal => geodesic_reversal(inputs),
        SuiteId::ThompsonCaratheodory => thompson_caratheodory(inputs),
        SuiteId::SelfDuality => self_duality(inputs),
        SuiteId::JhIdentity => jh_identity(inputs),
        SuiteId::Normality => normality(inputs),
        SuiteId::MetricComparison => metric_comparison(inputs),
    }
}

fn norm(x: &Element) -> Result<f64> {
    x.spectral_norm()
}

/// `‖a - b‖_e`
fn gap(a: &Element, b: &Element) -> Result<f64> {
    a.sub(b)?.spectral_norm()
}

fn op_gap(s: &LinearOperator, t: &LinearOperator) -> Result<f64> {
    Ok(s.sub(t)?.norm())
}

fn flag(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |m, v| {
        if m.is_nan() || v.is_nan() {
            f64::NAN
        } else {
            m.max(v)
        }
    })
}

fn jordan_identity(inp: &TrialInputs) -> Result<f64> {
    let (a, b, x) = (inp.get(0)?, inp.get(1)?, inp.get(2)?);
    let (na, nb, nx) = (norm(a)?, norm(b)?, norm(x)?);
    let a2 = a.square();
    let jordan = gap(&a.product(&b.product(&a2)?)?, &a.product(b)?.product(&a2)?)?;
    let commutes = gap(&a.product(b)?, &b.product(a)?)?;
    let quadratic = gap(&a.triple(x, a)?, &a.quadratic_rep().apply(x)?)?;
    let left = gap(&a.left_mult().apply(x)?, &a.product(x)?)?;
    Ok(worst([
        jordan / (1.0 + na.powi(3) * nb),
        commutes / (1.0 + na * nb),
        quadratic / (1.0 + na * na * nx),
        left / (1.0 + na * nx),
    ]))
}

fn power_assoc(inp: &TrialInputs) -> Result<f64> {
    let a = inp.get(0)?;
    let na = norm(a)?;
    let powers: Vec<Element> = (1..=8).map(|k| a.power(k)).collect::<Result<_>>()?;
    let mut r: f64 = 0.0;
    for m in 1..8usize {
        for n in 1..=(8 - m) {
            let lhs = powers[m - 1].product(&powers[n - 1])?;
            let d = gap(&lhs, &powers[m + n - 1])?;
            r = r.max(d / (1.0 + na.powi((m + n) as i32)));
        }
    }
    Ok(r)
}

fn commutator_identities(inp: &TrialInputs) -> Result<f64> {
    let a = inp.get(0)?;
    let na = norm(a)?;
    let la = a.left_mult();
    let la2 = a.square().left_mult();
    let la3 = a.power(3)?.left_mult();
    let c12 = commutator(&la, &la2)?;
    let cubic = op_gap(&commutator(&la, &la3)?, &la.compose(&c12)?.scale(3.0))?;
    let inner = commutator(&c12, &la2)?;
    let nested = commutator(&c12, &inner)?.norm();
    Ok(worst([
        c12.norm() / (1.0 + na.powi(3)),
        cubic / (1.0 + na.powi(4)),
        nested / (1.0 + na.powi(8)),
    ]))
}

fn derivation(inp: &TrialInputs) -> Result<f64> {
    let (x, y, z) = (inp.get(0)?, inp.get(1)?, inp.get(2)?);
    let d = commutator(&x.left_mult(), &y.left_mult())?;
    let lhs = commutator(&d, &z.left_mult())?;
    let rhs = d.apply(z)?.left_mult();
    Ok(op_gap(&lhs, &rhs)? / (1.0 + norm(x)? * norm(y)? * norm(z)?))
}

fn jb_norm_axioms(inp: &TrialInputs) -> Result<f64> {
    let (x, y) = (inp.get(0)?, inp.get(1)?);
    let (nx, ny) = (norm(x)?, norm(y)?);
    let r = squares_norm_axioms(x, y)?;
    let e = x.alg().identity();
    let closed = order_unit_norm(x, &e)?;
    let bisected = order_unit_norm_bisection(x, &e)?;
    Ok(worst([
        r.submultiplicative / (1.0 + nx * ny),
        r.square / (1.0 + nx * nx),
        r.monotone / (1.0 + nx * nx + ny * ny),
        (closed - nx).abs() / (1.0 + nx),
        (closed - bisected).abs() / (1.0 + nx),
    ]))
}

fn cone_squares(inp: &TrialInputs) -> Result<f64> {
    let (x, a, w) = (inp.get(0)?, inp.get(1)?, inp.get(2)?);
    let (nx, na) = (norm(x)?, norm(a)?);
    let e = x.alg().identity();

    let mut r = vec![flag(classify(&x.square())?.in_closed_cone())];

    let sd = x.spectral()?;
    r.push(gap(&sd.reconstruct(), x)? / (1.0 + nx));
    let mut total = Element::zero(x.alg());
    for (i, c) in sd.idempotents.iter().enumerate() {
        r.push(gap(&c.square(), c)?);
        for d in &sd.idempotents[i + 1..] {
            r.push(norm(&c.product(d)?)?);
        }
        total = total.add(c)?;
    }
    r.push(gap(&total, &e)?);

    r.push(gap(&a.sqrt()?.square(), a)? / (1.0 + na));
    r.push(gap(&a.log()?.exp()?, a)? / (1.0 + na));
    let ex = x.exp()?;
    r.push(gap(&exp_series(x), &ex)? / (1.0 + norm(&ex)?));

    let by_states = interior_by_states(w, STATE_SAMPLES, 0)?;
    r.push(flag(by_states == classify(w)?.is_interior()));
    Ok(worst(r))
}

fn homogeneity(inp: &TrialInputs) -> Result<f64> {
    let (a, y) = (inp.get(0)?, inp.get(1)?);
    let na = norm(a)?;
    let e = a.alg().identity();
    let g = automorphism_from_point(a)?;
    let ge = g.apply(&e)?;
    let back = g.inverse()?.apply(a)?;
    Ok(worst([
        gap(&ge, a)? / (1.0 + na),
        gap(&back, &e)?,
        flag(classify(&g.apply(y)?)?.is_interior()),
        flag(g.op().condition_number().is_finite()),
    ]))
}

fn tau_invariance(inp: &TrialInputs) -> Result<f64> {
    let a = inp.get(0)?;
    let g = automorphism_from_point(a)?;
    let scaling = Automorphism::scaling(a.alg(), inp.param(0)?)?;
    let rest = TrialInputs {
        elements: inp.elements[1..].to_vec(),
        params: vec![],
    };
    Ok(isometry_residual(&g, &rest)?.max(isometry_residual(&scaling, &rest)?))
}

/// Residual of `τ`, `b` and Thompson-distance invariance under `g` for inputs `[p, v, x, y]`.
pub(super) fn isometry_residual(g: &Automorphism, inp: &TrialInputs) -> Result<f64> {
    let (p, v, x, y) = (inp.get(0)?, inp.get(1)?, inp.get(2)?, inp.get(3)?);
    let t = TangentVector::new(p.clone(), v.clone())?;
    let tau = tangent_norm_tau(&t)?;
    let moved = TangentVector::new(g.apply(p)?, g.apply(v)?)?;
    let tau_moved = tangent_norm_tau(&moved)?;
    let h = Automorphism::quadratic(&p.inv_sqrt()?)?;
    let b = tangent_norm_b(&t, &h)?;
    let d = thompson_distance(x, y)?;
    let d_moved = thompson_distance(&g.apply(x)?, &g.apply(y)?)?;
    Ok(worst([
        (tau_moved - tau).abs() / (1.0 + tau),
        (b - tau).abs() / (1.0 + tau),
        (d_moved - d).abs() / (1.0 + d),
    ]))
}

fn symmetry_loos(inp: &TrialInputs) -> Result<f64> {
    let (x, y, z) = (inp.get(0)?, inp.get(1)?, inp.get(2)?);
    let loos = loos_axioms(x, y, z, LOOS_SPHERE_POINTS, 0)?;
    // s_x(y) = P(x)y⁻¹ and s_x(s_y(z)) = P(x)P(y⁻¹)z
    let (nx, ny, nz) = (norm(x)?, norm(y)?, norm(z)?);
    let (nxi, nyi) = (norm(&x.inverse()?)?, norm(&y.inverse()?)?);
    let sy = symmetry(x, y)?;
    let sz = symmetry(x, z)?;
    let d = thompson_distance(y, z)?;
    let bound = loos.displacement_bound();
    Ok(worst([
        loos.idempotent / (1.0 + nx * nx * nxi),
        loos.involutive / (1.0 + nx * nx * nxi * nxi * ny),
        loos.distributive / (1.0 + nx * nx * nyi * nyi * nz),
        (bound - loos.min_displacement).max(0.0) / bound,
        (thompson_distance(&sy, &sz)? - d).abs() / (1.0 + d),
        flag(classify(&sy)?.is_interior()),
    ]))
}

fn geodesic_reversal(inp: &TrialInputs) -> Result<f64> {
    let (p, q) = (inp.get(0)?, inp.get(1)?);
    let gamma = |t: f64| geodesic_through(p, q, t);
    let mut r = vec![
        gap(&gamma(0.0)?, p)? / (1.0 + norm(p)?),
        gap(&gamma(1.0)?, q)? / (1.0 + norm(q)?),
    ];
    let np = norm(p)?;
    for t in REVERSAL_TIMES {
        let (fwd, back) = (gamma(t)?, gamma(-t)?);
        let scale = 1.0 + np * np * norm(&fwd.inverse()?)?;
        r.push(gap(&symmetry(p, &fwd)?, &back)? / scale);
    }

    // d/dt s_p(γ(t)) at 0 equals -γ'(0); Richardson-extrapolated central differences
    let h = 1e-3;
    let central = |h: f64| -> Result<Element> {
        let fwd = symmetry(p, &gamma(h)?)?;
        let bwd = symmetry(p, &gamma(-h)?)?;
        Ok(fwd.sub(&bwd)?.scale(0.5 / h))
    };
    let coarse = central(h)?;
    let fine = central(0.5 * h)?;
    let derivative = fine.scale(4.0 / 3.0).sub(&coarse.scale(1.0 / 3.0))?;
    let velocity = geodesic_velocity(p, q)?;
    r.push(norm(&derivative.add(&velocity)?)? / (1.0 + norm(&velocity)?));

    let d = thompson_distance(p, q)?;
    for (i, s) in ADDITIVITY_TIMES.iter().enumerate() {
        for t in &ADDITIVITY_TIMES[i + 1..] {
            let expected = (s - t).abs() * d;
            let (a, b) = (gamma(*s)?, gamma(*t)?);
            let got = thompson_distance(&a, &b)?;
            // M(a/b) = λmax(P(a^{-1/2})b)
            let scale = (norm(&a.inverse()?)? * norm(&b)?).max(norm(&b.inverse()?)? * norm(&a)?);
            r.push((got - expected).abs() / (1.0 + scale));
        }
    }
    Ok(worst(r))
}

fn thompson_caratheodory(inp: &TrialInputs) -> Result<f64> {
    let (x, y, z) = (inp.get(0)?, inp.get(1)?, inp.get(2)?);
    let lambda = inp.param(0)?;
    let dxy = thompson_distance(x, y)?;
    let dyx = thompson_distance(y, x)?;
    let dyz = thompson_distance(y, z)?;
    let dxz = thompson_distance(x, z)?;
    let log_l = lambda.ln().abs();
    let mut r = vec![
        thompson_distance(x, x)?,
        (dxy - dyx).abs() / (1.0 + dxy),
        (dxz - dxy - dyz).max(0.0) / (1.0 + dxz),
        (thompson_distance(&x.scale(lambda), x)? - log_l).abs() / (1.0 + log_l),
    ];
    if let Algebra::Orthant(_) = x.alg() {
        let closed = x
            .as_slice()
            .iter()
            .zip(y.as_slice())
            .map(|(a, b)| (a / b).ln().abs())
            .fold(0.0, f64::max);
        r.push((dxy - closed).abs() / (1.0 + closed));
    }
    let c = caratheodory_restricted(x, y, CARATHEODORY_MESH, 0)?;
    r.push((c - dxy).max(0.0) / (1.0 + dxy));
    r.push((dxy - c).abs() / (1.0 + dxy));
    Ok(worst(r))
}

fn self_duality(inp: &TrialInputs) -> Result<f64> {
    let (x, y) = (inp.get(0)?, inp.get(1)?);
    let class = classify(x)?;
    if class.is_interior() {
        // <x, y> > 0 for every sampled nonzero y in the closed cone
        let mut cone_points: Vec<Element> = extreme_states(x.alg())
            .into_iter()
            .map(|f| Element::new(x.alg().clone(), f.weights().as_slice().to_vec()))
            .collect::<Result<_>>()?;
        cone_points.push(y.clone());
        cone_points.extend(y.spectral()?.idempotents);
        for c in &cone_points {
            if c.euclidean_norm() > 0.0 && x.inner(c)? <= 0.0 {
                return Ok(1.0);
            }
        }
        Ok(0.0)
    } else if class.status == crate::cone::ConeStatus::Exterior {
        // a point of the closed cone separates x from the dual cone
        let sd = x.spectral()?;
        let c = &sd.idempotents[0];
        Ok(flag(classify(c)?.in_closed_cone() && x.inner(c)? <= 0.0))
    } else {
        Ok(0.0)
    }
}

fn jh_identity(inp: &TrialInputs) -> Result<f64> {
    let (a, b, c) = (inp.get(0)?, inp.get(1)?, inp.get(2)?);
    let lhs = a.product(b)?.inner(c)?;
    let rhs = b.inner(&a.product(c)?)?;
    let scale = a.euclidean_norm() * b.euclidean_norm() * c.euclidean_norm();
    Ok((lhs - rhs).abs() / (1.0 + scale))
}

fn normality(inp: &TrialInputs) -> Result<f64> {
    let (x, z) = (inp.get(0)?, inp.get(1)?);
    let y = x.add(z)?;
    let zero = Element::zero(x.alg());
    let (nx, ny) = (norm(x)?, norm(&y)?);
    Ok(worst([
        flag(order_leq(&zero, x)? && order_leq(x, &y)?),
        (nx - ny - 1e-12).max(0.0) / (1.0 + ny),
    ]))
}

fn metric_comparison(inp: &TrialInputs) -> Result<f64> {
    let (p, u, v, w) = (inp.get(0)?, inp.get(1)?, inp.get(2)?, inp.get(3)?);
    let alg = p.alg();
    let e = alg.identity();
    let gram = riemannian_gram_jh(p)?;
    let sym_gram = (&gram + gram.transpose()) * 0.5;
    let guv = riemannian_metric_jh(p, u, v)?;

    // g_p(u, v) = <P(p⁻¹)u, v>
    let metric_scale = |p: &Element, u: &Element, v: &Element| -> Result<f64> {
        let ni = norm(&p.inverse()?)?;
        Ok(ni * ni * norm(u)? * norm(v)?)
    };
    let pw = w.quadratic_rep();
    let (wp, wu, wv) = (pw.apply(p)?, pw.apply(u)?, pw.apply(v)?);
    let moved = riemannian_metric_jh(&wp, &wu, &wv)?;
    let invariance_scale = 1.0 + metric_scale(p, u, v)?.max(metric_scale(&wp, &wu, &wv)?);
    let at_e = riemannian_metric_jh(&e, u, v)?;
    let mut r = vec![
        (&gram - gram.transpose()).norm() / (1.0 + gram.norm()),
        flag(sym_gram.clone().cholesky().is_some()),
        (at_e - u.inner(v)?).abs() / (1.0 + u.euclidean_norm() * v.euclidean_norm()),
        (moved - guv).abs() / invariance_scale,
    ];

    if let Some(cone) = CharacteristicCone::of_algebra(alg) {
        let hess = cone.hessian(p.as_slice())?;
        // the canonical metric is dim(V) · g on a spin factor and g on an orthant
        let factor = match cone {
            CharacteristicCone::Orthant(_) => 1.0,
            CharacteristicCone::Lorentz(n) => n as f64,
        };
        let target: DMatrix<f64> = &sym_gram * factor;
        r.push((&hess - &target).norm() / (1.0 + hess.norm()));
        r.push(flag(hess.clone().cholesky().is_some()));
    }
    if let Algebra::Spin(n) = alg {
        let a = &u.as_slice()[..*n];
        let alpha = u.as_slice()[*n];
        let na = a.iter().map(|c| c * c).sum::<f64>().sqrt();
        let tau = tangent_norm_tau(&TangentVector::new(e.clone(), u.clone())?)?;
        let g = riemannian_metric_jh(&e, u, u)?.sqrt();
        r.push((tau - (na + alpha.abs())).abs() / (1.0 + tau));
        r.push((g - (na * na + alpha * alpha).sqrt()).abs() / (1.0 + g));
    }
    Ok(worst(r))
}
