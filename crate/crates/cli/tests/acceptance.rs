//! Acceptance criteria, one pass/fail line each.
//!
//! Run with `cargo test --release -p jbcone-cli --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nalgebra::DVector;
use rand::Rng;

use jbcone_core::cone::{jh_identity_check, self_dual_check};
use jbcone_core::geometry::{
    caratheodory_restricted, characteristic_metric, geodesic_through, riemannian_metric_jh,
    tangent_norm_tau, thompson_distance, CharacteristicCone, TangentVector,
};
use jbcone_core::oracle::{central_hessian, characteristic_function_2d, PlanarCone};
use jbcone_core::sampling::{random_interior, trial_rng};
use jbcone_core::verify::{default_instances, run_suites};
use jbcone_core::{Algebra, Element, SuiteId, SuiteReport};

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn suites(ids: &[SuiteId], algs: &[Algebra], trials: usize, tol: f64, seed: u64) -> Verdict {
    let reports = run_suites(ids, algs, trials, tol, seed).expect("valid suite specs");
    summarize(&reports)
}

fn summarize(reports: &[SuiteReport]) -> Verdict {
    let ran: Vec<&SuiteReport> = reports.iter().filter(|r| !r.skipped).collect();
    let worst = ran.iter().map(|r| r.max_residual).fold(0.0, f64::max);
    let failed: Vec<String> = ran
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{}@{}", r.suite.as_str(), r.algebra))
        .collect();
    Verdict {
        pass: failed.is_empty() && !ran.is_empty(),
        detail: if failed.is_empty() {
            format!("{} suite runs, max residual {worst:.2e}", ran.len())
        } else {
            format!("failed: {}", failed.join(", "))
        },
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let mut v = f();
    let elapsed = start.elapsed();
    v.pass &= elapsed <= limit;
    v.detail = format!(
        "{}; {:.2}s (limit {}s)",
        v.detail,
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    v
}

fn algebraic_identities() -> Verdict {
    timed(Duration::from_secs(30), || {
        suites(
            &[
                SuiteId::JordanIdentity,
                SuiteId::PowerAssoc,
                SuiteId::CommutatorIdentities,
                SuiteId::Derivation,
            ],
            &default_instances(),
            500,
            1e-9,
            1,
        )
    })
}

fn jb_norm_axioms() -> Verdict {
    suites(
        &[SuiteId::JbNormAxioms],
        &default_instances(),
        500,
        1e-10,
        2,
    )
}

fn cone_squares() -> Verdict {
    suites(
        &[SuiteId::ConeSquares],
        &default_instances(),
        10_000,
        1e-10,
        3,
    )
}

fn homogeneity() -> Verdict {
    suites(
        &[SuiteId::Homogeneity],
        &default_instances(),
        1_000,
        1e-10,
        4,
    )
}

fn finsler_symmetry() -> Verdict {
    let algs = default_instances();
    let mut reports = run_suites(
        &[SuiteId::TauInvariance, SuiteId::SymmetryLoos],
        &algs,
        500,
        1e-9,
        5,
    )
    .expect("valid suite specs");
    reports.extend(run_suites(&[SuiteId::GeodesicReversal], &algs, 500, 1e-8, 5).expect("valid"));
    summarize(&reports)
}

fn thompson_metric() -> Verdict {
    let mut worst_closed: f64 = 0.0;
    let mut worst_scaling: f64 = 0.0;
    let mut worst_additivity: f64 = 0.0;
    let mut worst_caratheodory: f64 = 0.0;

    let orthant = Algebra::Orthant(4);
    for i in 0..500 {
        let mut rng = trial_rng(6, i);
        let x = random_interior(&orthant, &mut rng);
        let y = random_interior(&orthant, &mut rng);
        let closed = x
            .as_slice()
            .iter()
            .zip(y.as_slice())
            .map(|(a, b)| (a / b).ln().abs())
            .fold(0.0, f64::max);
        let d = thompson_distance(&x, &y).unwrap();
        worst_closed = worst_closed.max((d - closed).abs() / (1.0 + closed));
    }

    for alg in default_instances() {
        for i in 0..500 {
            let mut rng = trial_rng(6, 1_000 + i);
            let x = random_interior(&alg, &mut rng);
            let q = random_interior(&alg, &mut rng);
            let lambda = rng.random_range(-3.0f64..3.0).exp();
            let d = thompson_distance(&x.scale(lambda), &x).unwrap();
            worst_scaling =
                worst_scaling.max((d - lambda.ln().abs()).abs() / (1.0 + lambda.ln().abs()));

            let dpq = thompson_distance(&x, &q).unwrap();
            let (s, t) = (rng.random_range(-0.5..1.5), rng.random_range(-0.5..1.5));
            let a = geodesic_through(&x, &q, s).unwrap();
            let b = geodesic_through(&x, &q, t).unwrap();
            let expected = (s - t).abs() * dpq;
            let got = thompson_distance(&a, &b).unwrap();
            worst_additivity = worst_additivity.max((got - expected).abs() / (1.0 + expected));
        }
    }

    for alg in [Algebra::Orthant(4), Algebra::Spin(4)] {
        for i in 0..200 {
            let mut rng = trial_rng(6, 10_000 + i);
            let x = random_interior(&alg, &mut rng);
            let y = random_interior(&alg, &mut rng);
            let d = thompson_distance(&x, &y).unwrap();
            let c = caratheodory_restricted(&x, &y, 64, i).unwrap();
            worst_caratheodory = worst_caratheodory.max((c - d).abs());
        }
    }

    Verdict {
        pass: worst_closed <= 1e-10
            && worst_scaling <= 1e-10
            && worst_additivity <= 1e-8
            && worst_caratheodory <= 1e-6,
        detail: format!(
            "closed form {worst_closed:.2e}, scaling {worst_scaling:.2e}, additivity {worst_additivity:.2e}, caratheodory gap {worst_caratheodory:.2e}"
        ),
    }
}

fn log_characteristic_fd(cone: PlanarCone, p: &[f64], u: &[f64], h: f64) -> f64 {
    let hess = central_hessian(
        |x| characteristic_function_2d(cone, x.as_slice()).ln(),
        &DVector::from_row_slice(p),
        h,
    );
    let u = DVector::from_row_slice(u);
    u.dot(&(hess * &u))
}

fn spot_values() -> Verdict {
    let spin = Algebra::Spin(2);
    let e = spin.identity();
    let u = Element::new(spin, vec![3.0, 4.0, 2.0]).unwrap();
    let tau = tangent_norm_tau(&TangentVector::new(e.clone(), u.clone()).unwrap()).unwrap();
    let g = riemannian_metric_jh(&e, &u, &u).unwrap().sqrt();

    let p = [1.0, 2.0];
    let w = [1.0, 1.0];
    let c = characteristic_metric(CharacteristicCone::Orthant(2), &p, &w, &w).unwrap();
    let fd = log_characteristic_fd(PlanarCone::Orthant, &p, &w, 1e-3);

    // planar Lorentz cone = spin factor of rank 2 with one vector coordinate
    let q = [0.5, 2.0];
    let v = [0.3, -1.0];
    let c_lorentz = characteristic_metric(CharacteristicCone::Lorentz(2), &q, &v, &v).unwrap();
    let fd_lorentz = log_characteristic_fd(PlanarCone::Lorentz, &q, &v, 1e-3);

    let errs = [
        (tau - 7.0).abs(),
        (g - 29f64.sqrt()).abs(),
        (c - 1.25).abs(),
        (fd - c).abs(),
        (fd_lorentz - c_lorentz).abs(),
    ];
    Verdict {
        pass: errs[..3].iter().all(|e| *e <= 1e-12) && errs[3..].iter().all(|e| *e <= 1e-4),
        detail: format!(
            "tau {tau}, sqrt g {g:.15}, orthant metric {c}, finite differences {:.1e} / {:.1e}",
            errs[3], errs[4]
        ),
    }
}

fn self_duality() -> Verdict {
    let mut reports = Vec::new();
    for alg in [Algebra::Orthant(4), Algebra::Sym(2), Algebra::Spin(4)] {
        reports.push(self_dual_check(&alg, 10_000, 8).unwrap());
        reports.push(jh_identity_check(&alg, 10_000, 8).unwrap());
    }
    let tol_ok = reports.iter().all(|r| r.tolerance <= 1e-10);
    let mut v = summarize(&reports);
    v.pass &= tol_ok;
    v
}

fn default_cli_run() -> Verdict {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_jbcone"))
        .args(["verify", "--suite", "all", "--quiet"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    let reports: Vec<SuiteReport> = serde_json::from_slice(&out.stdout).unwrap_or_default();
    Verdict {
        pass: out.status.code() == Some(0)
            && elapsed <= Duration::from_secs(60)
            && !reports.is_empty(),
        detail: format!(
            "exit {:?}, {} reports, {:.2}s (limit 60s)",
            out.status.code(),
            reports.len(),
            elapsed.as_secs_f64()
        ),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "jordan, power-associativity, commutator and derivation identities",
            algebraic_identities,
        ),
        ("JB norm axioms at the identity", jb_norm_axioms),
        (
            "cone equals squares; classify agrees with states",
            cone_squares,
        ),
        ("linear homogeneity", homogeneity),
        (
            "tangent norms, Loos symmetries, geodesic reversal",
            finsler_symmetry,
        ),
        ("Thompson metric and Caratheodory bound", thompson_metric),
        ("formula spot values", spot_values),
        ("self-duality and JH identity", self_duality),
        ("default verify run", default_cli_run),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        if !v.pass {
            failures += 1;
        }
        println!(
            "criterion {} {} {name}: {}",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
