use nalgebra::DVector;

use jbcone_core::cone::order_unit_norm;
use jbcone_core::geometry::{
    characteristic_metric, gauge_m, riemannian_gram_jh, CharacteristicCone,
};
use jbcone_core::oracle::{
    central_hessian, characteristic_function_2d, exp_series, gauge_bisection,
    order_unit_norm_bisection, PlanarCone,
};
use jbcone_core::sampling::{random_element, random_interior, trial_rng};
use jbcone_core::verify::default_instances;
use jbcone_core::{Algebra, Element};

#[test]
fn exponential_matches_power_series() {
    for alg in default_instances() {
        for i in 0..50 {
            let z = random_element(&alg, &mut trial_rng(11, i));
            let spectral = z.exp().unwrap();
            let series = exp_series(&z);
            let gap = series.sub(&spectral).unwrap().spectral_norm().unwrap();
            assert!(
                gap <= 1e-12 * (1.0 + spectral.spectral_norm().unwrap()),
                "{alg}: {gap:e}"
            );
        }
    }
}

#[test]
fn closed_forms_match_bisection() {
    for alg in default_instances() {
        for i in 0..30 {
            let mut rng = trial_rng(12, i);
            let x = random_element(&alg, &mut rng);
            let p = random_interior(&alg, &mut rng);
            let b = random_interior(&alg, &mut rng);
            let n = order_unit_norm(&x, &p).unwrap();
            assert!((n - order_unit_norm_bisection(&x, &p).unwrap()).abs() <= 1e-9 * (1.0 + n));
            let m = gauge_m(&p, &b).unwrap();
            assert!((m - gauge_bisection(&p, &b).unwrap()).abs() <= 1e-9 * (1.0 + m));
        }
    }
}

fn quadrature_hessian(cone: PlanarCone, p: &[f64]) -> nalgebra::DMatrix<f64> {
    central_hessian(
        |x| characteristic_function_2d(cone, x.as_slice()).ln(),
        &DVector::from_row_slice(p),
        1e-3,
    )
}

#[test]
fn orthant_characteristic_metric_matches_quadrature() {
    for p in [[1.0, 2.0], [0.3, 1.7], [2.5, 0.8]] {
        let hess = quadrature_hessian(PlanarCone::Orthant, &p);
        for (u, v) in [([1.0, 1.0], [1.0, 1.0]), ([1.0, -2.0], [0.5, 3.0])] {
            let fd = DVector::from_row_slice(&u).dot(&(&hess * DVector::from_row_slice(&v)));
            let c = characteristic_metric(CharacteristicCone::Orthant(2), &p, &u, &v).unwrap();
            assert!(
                (fd - c).abs() <= 1e-4 * (1.0 + c.abs()),
                "{p:?}: {fd} vs {c}"
            );
        }
    }
}

#[test]
fn planar_lorentz_metric_is_twice_the_trace_metric() {
    // Spin(1) is the planar Lorentz cone {(a, α) : α >= |a|} of rank 2
    for p in [[0.5, 2.0], [-0.3, 1.0], [0.0, 1.0]] {
        let hess = quadrature_hessian(PlanarCone::Lorentz, &p);
        let x = Element::new(Algebra::Spin(1), p.to_vec()).unwrap();
        let gram = riemannian_gram_jh(&x).unwrap();
        let gap = (&hess - &gram * 2.0).abs().max();
        assert!(gap <= 1e-4 * (1.0 + hess.abs().max()), "{p:?}: {gap:e}");
        let cone = CharacteristicCone::of_algebra(x.alg()).unwrap();
        assert_eq!(cone, CharacteristicCone::Lorentz(2));
        let analytic = cone.hessian(&p).unwrap();
        assert!((&analytic - &hess).abs().max() <= 1e-4 * (1.0 + hess.abs().max()));
    }
}

#[test]
fn spin_characteristic_hessian_scales_with_dimension() {
    for n in 1..6 {
        let alg = Algebra::Spin(n);
        let cone = CharacteristicCone::of_algebra(&alg).unwrap();
        let x = random_interior(&alg, &mut trial_rng(13, n as u64));
        let analytic = cone.hessian(x.as_slice()).unwrap();
        let fd = central_hessian(
            |y| cone.log_characteristic(y.as_slice()).unwrap(),
            x.coords(),
            1e-4,
        );
        let gram = riemannian_gram_jh(&x).unwrap();
        let scale = 1.0 + analytic.abs().max();
        assert!((&analytic - &fd).abs().max() <= 1e-5 * scale);
        assert!((&analytic - &gram * (n + 1) as f64).abs().max() <= 1e-10 * scale);
    }
}
