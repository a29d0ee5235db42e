use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, Context};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use jbcone_core::cone::{classify, interior_by_states, order_unit_norm};
use jbcone_core::geometry::{
    caratheodory_restricted, characteristic_metric, gauge_m, geodesic_through,
    riemannian_metric_jh, symmetry, tangent_norm_tau, thompson_distance, CharacteristicCone,
    TangentVector,
};
use jbcone_core::verify::{all_ok, default_instances, run_suites};
use jbcone_core::{Algebra, Element, Error, SuiteId};

use crate::args::{
    AlgArgs, ClassifyArgs, Cli, Command, DistArgs, EvalArgs, GeodesicArgs, MetricArgs, Op, OutArgs,
    SymmetryArgs, VerifyArgs,
};

/// Failure class, mapped to exit status 2 (usage) or 1 (domain).
#[derive(Debug)]
pub enum Failure {
    Usage(anyhow::Error),
    Domain(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidDescriptor(_)
            | Error::AlgebraMismatch { .. }
            | Error::DimensionMismatch { .. }
            | Error::NonFinite
            | Error::ZeroPower
            | Error::UnknownSuite(_)
            | Error::InvalidArgument(_) => Failure::Usage(e.into()),
            _ => Failure::Domain(e.into()),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn usage(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Usage(e.into())
}

pub fn dispatch(cli: &Cli) -> Outcome<u8> {
    match &cli.command {
        Command::Eval(a) => eval(a),
        Command::Classify(a) => classify_cmd(a),
        Command::Dist(a) => dist(a),
        Command::Metric(a) => metric(a),
        Command::Symmetry(a) => symmetry_cmd(a),
        Command::Geodesic(a) => geodesic(a),
        Command::Verify(a) => verify(a),
    }
}

fn read_algebra_file(path: &Path) -> Outcome<Algebra> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(usage)?;
    serde_json::from_str(&text)
        .with_context(|| format!("parsing algebra descriptor {}", path.display()))
        .map_err(usage)
}

fn algebra(args: &AlgArgs) -> Outcome<Option<Algebra>> {
    match (&args.alg, &args.alg_file) {
        (Some(s), _) => Ok(Some(Algebra::parse_shorthand(s)?)),
        (None, Some(path)) => Ok(Some(read_algebra_file(path)?)),
        (None, None) => Ok(None),
    }
}

fn required_algebra(args: &AlgArgs) -> Outcome<Algebra> {
    algebra(args)?.ok_or_else(|| usage(anyhow!("one of --alg or --alg-file is required")))
}

/// Parses comma-separated coordinates in canonical packing order.
pub fn parse_coords(s: &str) -> anyhow::Result<Vec<f64>> {
    s.split(',')
        .map(|c| {
            let c = c.trim();
            c.parse::<f64>()
                .with_context(|| format!("invalid coordinate {c:?}"))
        })
        .collect()
}

fn element(alg: &Algebra, name: &str, s: &str) -> Outcome<Element> {
    let coords = parse_coords(s)
        .with_context(|| format!("--{name}"))
        .map_err(usage)?;
    Element::new(alg.clone(), coords)
        .with_context(|| format!("--{name}"))
        .map_err(usage)
}

fn required<'a>(value: &'a Option<String>, name: &str, op: &str) -> Outcome<&'a str> {
    value
        .as_deref()
        .ok_or_else(|| usage(anyhow!("--{name} is required for {op}")))
}

fn emit(value: &Value, out: &OutArgs) -> Outcome<()> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    match &out.out {
        Some(path) => fs::write(path, text + "\n")
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::Domain),
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Domain(
                anyhow::Error::new(e).context("writing output"),
            )),
            _ => Ok(()),
        },
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("core types serialize")
}

fn eval(a: &EvalArgs) -> Outcome<u8> {
    let alg = required_algebra(&a.alg)?;
    let op_name = format!("{:?}", a.op).to_lowercase();
    let x = || element(&alg, "x", required(&a.x, "x", &op_name)?);
    let y = || element(&alg, "y", required(&a.y, "y", &op_name)?);
    let z = || element(&alg, "z", required(&a.z, "z", &op_name)?);
    let value = match a.op {
        Op::Identity => json!({ "result": to_value(&alg.identity()) }),
        Op::Product => json!({ "result": to_value(&x()?.product(&y()?)?) }),
        Op::Square => json!({ "result": to_value(&x()?.square()) }),
        Op::Power => {
            let n =
                a.n.ok_or_else(|| usage(anyhow!("--n is required for power")))?;
            json!({ "result": to_value(&x()?.power(n)?) })
        }
        Op::Triple => json!({ "result": to_value(&x()?.triple(&y()?, &z()?)?) }),
        Op::LeftMult => json!({ "operator": to_value(&x()?.left_mult()) }),
        Op::Quadratic => json!({ "operator": to_value(&x()?.quadratic_rep()) }),
        Op::Spectral => to_value(&x()?.spectral()?),
        Op::Inverse => json!({ "result": to_value(&x()?.inverse()?) }),
        Op::Sqrt => json!({ "result": to_value(&x()?.sqrt()?) }),
        Op::Log => json!({ "result": to_value(&x()?.log()?) }),
        Op::Exp => json!({ "result": to_value(&x()?.exp()?) }),
        Op::Norm => {
            let p = match &a.p {
                Some(p) => element(&alg, "p", p)?,
                None => alg.identity(),
            };
            json!({ "norm": order_unit_norm(&x()?, &p)? })
        }
    };
    emit(&value, &a.out)?;
    Ok(0)
}

fn classify_cmd(a: &ClassifyArgs) -> Outcome<u8> {
    let alg = required_algebra(&a.alg)?;
    let x = element(&alg, "x", &a.x)?;
    let class = classify(&x)?;
    let mut value = to_value(&class);
    if let Some(samples) = a.functionals {
        value["interior_by_states"] = json!(interior_by_states(&x, samples, a.seed)?);
    }
    emit(&value, &a.out)?;
    Ok(0)
}

#[derive(Debug, Deserialize)]
struct DistQuery {
    alg: Algebra,
    x: Vec<f64>,
    y: Vec<f64>,
}

fn dist(a: &DistArgs) -> Outcome<u8> {
    let (x, y) = match &a.input {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))
                .map_err(usage)?;
            let q: DistQuery = serde_json::from_str(&text)
                .with_context(|| format!("parsing query {}", path.display()))
                .map_err(usage)?;
            let x = Element::new(q.alg.clone(), q.x)
                .context("x")
                .map_err(usage)?;
            let y = Element::new(q.alg, q.y).context("y").map_err(usage)?;
            (x, y)
        }
        None => {
            let alg = required_algebra(&a.alg)?;
            let x = element(&alg, "x", required(&a.x, "x", "dist")?)?;
            let y = element(&alg, "y", required(&a.y, "y", "dist")?)?;
            (x, y)
        }
    };
    let mut value = json!({
        "thompson": thompson_distance(&x, &y)?,
        "gauge_xy": gauge_m(&x, &y)?,
        "gauge_yx": gauge_m(&y, &x)?,
    });
    if let Some(n) = a.functionals {
        value["caratheodory_lb"] = json!(caratheodory_restricted(&x, &y, n, a.seed)?);
    }
    emit(&value, &a.out)?;
    Ok(0)
}

fn metric(a: &MetricArgs) -> Outcome<u8> {
    let alg = required_algebra(&a.alg)?;
    let p = element(&alg, "p", &a.p)?;
    let u = element(&alg, "u", &a.u)?;
    let v = match &a.v {
        Some(v) => element(&alg, "v", v)?,
        None => u.clone(),
    };
    let mut value = Map::new();
    value.insert(
        "tau".into(),
        json!(tangent_norm_tau(&TangentVector::new(
            p.clone(),
            u.clone()
        )?)?),
    );
    if alg.is_inner_product_mode() {
        value.insert("g_jh".into(), json!(riemannian_metric_jh(&p, &u, &v)?));
    }
    if let Some(cone) = CharacteristicCone::of_algebra(&alg) {
        let c = characteristic_metric(cone, p.as_slice(), u.as_slice(), v.as_slice())?;
        value.insert("characteristic".into(), json!(c));
    }
    emit(&Value::Object(value), &a.out)?;
    Ok(0)
}

fn symmetry_cmd(a: &SymmetryArgs) -> Outcome<u8> {
    let alg = required_algebra(&a.alg)?;
    let x = element(&alg, "x", &a.x)?;
    let y = element(&alg, "y", &a.y)?;
    emit(&json!({ "result": to_value(&symmetry(&x, &y)?) }), &a.out)?;
    Ok(0)
}

fn geodesic(a: &GeodesicArgs) -> Outcome<u8> {
    let alg = required_algebra(&a.alg)?;
    let p = element(&alg, "p", &a.p)?;
    let q = element(&alg, "q", &a.q)?;
    if !a.t.is_finite() {
        return Err(usage(anyhow!("--t must be finite")));
    }
    let point = geodesic_through(&p, &q, a.t)?;
    emit(&json!({ "t": a.t, "result": to_value(&point) }), &a.out)?;
    Ok(0)
}

/// Resolves `--suite`: `all` or a comma-separated list of ids.
pub fn parse_suites(s: &str) -> std::result::Result<Vec<SuiteId>, Error> {
    if s == "all" {
        return Ok(SuiteId::ALL.to_vec());
    }
    s.split(',').map(|id| id.trim().parse()).collect()
}

fn verify(a: &VerifyArgs) -> Outcome<u8> {
    if a.suite == "list" {
        let ids: Vec<&str> = SuiteId::ALL.iter().map(SuiteId::as_str).collect();
        emit(&json!(ids), &a.out)?;
        return Ok(0);
    }
    let suites = parse_suites(&a.suite)?;
    let algs = match algebra(&a.alg)? {
        Some(alg) => vec![alg],
        None => default_instances(),
    };
    let reports = run_suites(&suites, &algs, a.trials, a.tol, a.seed)?;
    if !a.out.quiet {
        for r in &reports {
            let status = if r.skipped {
                "skip"
            } else if r.pass {
                "pass"
            } else {
                "FAIL"
            };
            eprintln!(
                "{status:4} {:22} {:26} max_residual={:.3e} ({:.2}s)",
                r.suite.as_str(),
                r.algebra.to_string(),
                r.max_residual,
                r.wall_time
            );
        }
    }
    emit(&to_value(&reports), &a.out)?;
    Ok(if all_ok(&reports) { 0 } else { 1 })
}
