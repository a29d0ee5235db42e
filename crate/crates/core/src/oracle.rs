//! Independent numerical oracles.
//!
//! These routines recompute quantities that the library obtains in closed
//! form, using only the cone order, Jordan products or plain quadrature, so
//! the two routes can be compared.

use nalgebra::{DMatrix, DVector};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::tol;

fn bisect_infimum(mut holds: impl FnMut(f64) -> Result<bool>) -> Result<f64> {
    let mut hi = 1.0;
    let mut grow = 0;
    while !holds(hi)? {
        hi *= 2.0;
        grow += 1;
        if grow > 2000 {
            return Err(Error::InvalidArgument("bisection bracket not found".into()));
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if holds(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Exact order test `x <= y`: `y - x` has no negative eigenvalue. Unlike
/// [`crate::cone::order_leq`] there is no boundary band, so bisection on it
/// resolves the infimum to rounding level.
fn leq_exact(x: &Element, y: &Element) -> Result<bool> {
    Ok(y.sub(x)?.min_eigenvalue()? >= 0.0)
}

/// `inf{λ > 0 : -λp <= x <= λp}` by bisection on the cone order.
pub fn order_unit_norm_bisection(x: &Element, p: &Element) -> Result<f64> {
    bisect_infimum(|lambda| {
        let lp = p.scale(lambda);
        Ok(leq_exact(&lp.scale(-1.0), x)? && leq_exact(x, &lp)?)
    })
}

/// `M(a/b) = inf{β > 0 : βa >= b}` by bisection on the cone order.
pub fn gauge_bisection(a: &Element, b: &Element) -> Result<f64> {
    bisect_infimum(|beta| leq_exact(b, &a.scale(beta)))
}

/// Truncated series `Σ_k z^k / k!` with the degree chosen so the tail bound is
/// below [`tol::SERIES_REMAINDER`] relative to `e^r`, where `r = sqrt(2)‖z‖_2`
/// bounds the spectral radius of every supported instance.
pub fn exp_series(z: &Element) -> Element {
    let r = std::f64::consts::SQRT_2 * z.euclidean_norm();
    let e = z.alg().identity();
    let mut sum = e.clone();
    let mut term = e;
    let mut bound = 1.0;
    let mut k = 0u32;
    loop {
        k += 1;
        term = z
            .product(&term)
            .expect("same algebra")
            .scale(1.0 / k as f64);
        sum = sum.add(&term).expect("same algebra");
        bound *= r / k as f64;
        let next = k as f64 + 2.0;
        if next > 2.0 * r
            && bound * r / (next - 1.0) * 2.0 <= tol::SERIES_REMAINDER * r.exp().max(1.0)
        {
            return sum;
        }
    }
}

/// Central-difference Hessian of `f` at `x` with step `h`.
pub fn central_hessian(f: impl Fn(&DVector<f64>) -> f64, x: &DVector<f64>, h: f64) -> DMatrix<f64> {
    let n = x.len();
    let mut hess = DMatrix::zeros(n, n);
    let shifted = |i: usize, si: f64, j: usize, sj: f64| {
        let mut y = x.clone();
        y[i] += si * h;
        y[j] += sj * h;
        f(&y)
    };
    for i in 0..n {
        for j in i..n {
            let v = if i == j {
                let mut yp = x.clone();
                yp[i] += h;
                let mut ym = x.clone();
                ym[i] -= h;
                (f(&yp) - 2.0 * f(x) + f(&ym)) / (h * h)
            } else {
                (shifted(i, 1.0, j, 1.0) - shifted(i, 1.0, j, -1.0) - shifted(i, -1.0, j, 1.0)
                    + shifted(i, -1.0, j, -1.0))
                    / (4.0 * h * h)
            };
            hess[(i, j)] = v;
            hess[(j, i)] = v;
        }
    }
    hess
}

const DE_STEP: f64 = 1.0 / 32.0;
const DE_RANGE: f64 = 4.5;

/// `∫_0^∞ f(s) ds` by the exp-sinh double-exponential rule.
pub fn integrate_half_line(f: impl Fn(f64) -> f64) -> f64 {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let n = (DE_RANGE / DE_STEP) as i64;
    let mut acc = 0.0;
    for k in -n..=n {
        let t = k as f64 * DE_STEP;
        let s = (half_pi * t.sinh()).exp();
        let w = s * half_pi * t.cosh();
        if w.is_finite() && s.is_finite() {
            let v = f(s);
            if v != 0.0 {
                acc += w * v;
            }
        }
    }
    acc * DE_STEP
}

/// `∫_{-1}^{1} f(u) du` by the tanh-sinh double-exponential rule.
pub fn integrate_symmetric_unit(f: impl Fn(f64) -> f64) -> f64 {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let n = (DE_RANGE / DE_STEP) as i64;
    let mut acc = 0.0;
    for k in -n..=n {
        let t = k as f64 * DE_STEP;
        let arg = half_pi * t.sinh();
        let u = arg.tanh();
        let w = half_pi * t.cosh() / arg.cosh().powi(2);
        if u.abs() < 1.0 && w > 0.0 {
            acc += w * f(u);
        }
    }
    acc * DE_STEP
}

/// Cones in the plane for which the characteristic function is integrated numerically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanarCone {
    /// `{y : y_1, y_2 >= 0}`.
    Orthant,
    /// `{(a, α) : α >= |a|}`.
    Lorentz,
}

/// `φ(x) = ∫_{Ω*} exp(-<x, y>) dy` by nested quadrature over the (self-dual) planar cone.
pub fn characteristic_function_2d(cone: PlanarCone, x: &[f64]) -> f64 {
    match cone {
        PlanarCone::Orthant => {
            integrate_half_line(|y1| integrate_half_line(|y2| (-(x[0] * y1 + x[1] * y2)).exp()))
        }
        PlanarCone::Lorentz => integrate_half_line(|alpha| {
            // a = α u, da = α du
            alpha * integrate_symmetric_unit(|u| (-(x[0] * alpha * u + x[1] * alpha)).exp())
        }),
    }
}
