//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero on any failure.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use isominimal::catalog::{cartan_model, clifford_model};
use isominimal::identities::{g2_solve, recover_curvatures, run_sweep, IdentityKind, SweepConfig};
use isominimal::numeric::{sym_eigen, Rational, RngStream, Surd};
use isominimal::shape::{second_form, CurvatureReport, DEFAULT_CLUSTER_TOL};
use isominimal::sphere::{project_to_level, surface_normal, tangent_basis, LevelSpec, TangentFrame};
use serde_json::Value;

const MINIMAL_TOL: f64 = 1e-8;
const INVARIANT_TOL: f64 = 1e-6;
const NON_MINIMAL_F1: f64 = 1e-3;
const G2_TOL: f64 = 1e-12;
const RECOVER_TOL: f64 = 1e-9;
const FRAME_TOL: f64 = 1e-10;

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn cli(args: &[&str]) -> (Option<i32>, Value, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_isominimal")).args(args).output().expect("spawn isominimal");
    let elapsed = start.elapsed();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code(), v, elapsed)
}

fn num(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or(f64::NAN)
}

fn cartan_minimal() -> Outcome {
    let (code, v, took) = cli(&["analyze", "--surface", "cartan", "--t", "pi/8", "--samples", "1000"]);
    let r = &v["results"];
    let n = r["n_points"].as_u64().unwrap_or(0);
    let g4 = r["g_histogram"]["4"].as_u64().unwrap_or(0);
    let checks = [
        code == Some(0),
        n == 1000 && r["n_failed"] == 0,
        num(r, "max_abs_f1") <= MINIMAL_TOL,
        (num(r, "S_min") - 12.0).abs() <= INVARIANT_TOL && (num(r, "S_max") - 12.0).abs() <= INVARIANT_TOL,
        g4 == n,
        (num(r, "theta0_min") - PI / 8.0).abs() <= INVARIANT_TOL && (num(r, "theta0_max") - PI / 8.0).abs() <= INVARIANT_TOL,
        num(r, "max_abs_f3") <= INVARIANT_TOL,
        (num(r, "K_min") - 1.0).abs() <= INVARIANT_TOL && (num(r, "K_max") - 1.0).abs() <= INVARIANT_TOL,
        r["classification_verdict"] == "cartan",
        took <= Duration::from_secs(30),
    ];
    outcome(
        checks.iter().all(|&c| c),
        format!(
            "max|f1|={:.2e} S∈[{:.15},{:.15}] g=4 at {g4}/{n} θ0∈[{:.12},{:.12}] max|f3|={:.2e} K∈[{:.15},{:.15}] verdict={} {:.2}s",
            num(r, "max_abs_f1"),
            num(r, "S_min"),
            num(r, "S_max"),
            num(r, "theta0_min"),
            num(r, "theta0_max"),
            num(r, "max_abs_f3"),
            num(r, "K_min"),
            num(r, "K_max"),
            r["classification_verdict"],
            took.as_secs_f64()
        ),
    )
}

fn non_minimal_control() -> Outcome {
    let (code, v, _) = cli(&["analyze", "--surface", "cartan", "--t", "0.3", "--samples", "200"]);
    let r = &v["results"];
    let f1 = num(r, "max_abs_f1");
    outcome(
        code == Some(0) && f1 > NON_MINIMAL_F1 && r["classification_verdict"] == "non_isoparametric",
        format!("max|f1|={f1:.4} verdict={}", r["classification_verdict"]),
    )
}

fn catalog_values() -> Outcome {
    let (code, v, _) = cli(&["catalog"]);
    let models = v["results"].as_array().cloned().unwrap_or_default();
    let s: Vec<i64> = models.iter().map(|m| m["S"].as_i64().unwrap_or(-1)).collect();
    let r: Vec<i64> = models.iter().map(|m| m["R"].as_i64().unwrap_or(-1)).collect();
    let flags = models.iter().all(|m| {
        m["checks_passed"] == true && m["checks"].as_array().is_some_and(|c| c.iter().all(|x| x["passed"] == true))
    });
    outcome(
        code == Some(0) && s == [0, 4, 4, 12] && r == [12, 8, 8, 0] && flags,
        format!("S={s:?} R={r:?} all checks={flags}"),
    )
}

fn case_two() -> Outcome {
    let four = Rational::from_integer(4.into());
    let (Ok(a), Ok(b)) = (g2_solve(1, &four), g2_solve(2, &four)) else {
        return outcome(false, "g2_solve failed");
    };
    let (la, ma) = a.as_f64()[0];
    let (lb, mb) = b.as_f64()[0];
    let near = (la - 3f64.sqrt()).abs() <= G2_TOL
        && (ma + 1.0 / 3f64.sqrt()).abs() <= G2_TOL
        && (lb - 1.0).abs() <= G2_TOL
        && (mb + 1.0).abs() <= G2_TOL;
    let exact = [&a, &b].iter().all(|x| x.branches.iter().all(|(l, m)| x.satisfies(l, m)));
    let catalog = |r, s, sol: &isominimal::identities::G2Branches| {
        let m = clifford_model(r, s).expect("clifford");
        let (l, mu): (&Surd, &Surd) = (&sol.branches[0].0, &sol.branches[0].1);
        m.curvatures == vec![l.clone(), mu.clone()]
    };
    let matches = catalog(1, 3, &a) && catalog(2, 2, &b);
    outcome(
        near && exact && matches,
        format!("(1,4)→({la:.15},{ma:.15}) (2,4)→({lb},{mb}) exact={exact} catalog={matches}"),
    )
}

fn sweep(kind: IdentityKind, trials: u64, limit: Option<u64>) -> Outcome {
    let cfg = SweepConfig { trials, seed: 1, height: 1000, workers: 1 };
    let start = Instant::now();
    let v = run_sweep(kind, &cfg);
    let took = start.elapsed();
    let in_time = limit.is_none_or(|s| took <= Duration::from_secs(s));
    match v {
        Ok(v) => outcome(
            v.failures == 0 && v.trials == trials && v.exact && in_time,
            format!("{} trials, {} failures, exact={}, {:.2}s", v.trials, v.failures, v.exact, took.as_secs_f64()),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn recovery() -> Outcome {
    let s2 = 2f64.sqrt();
    let s3 = 3f64.sqrt();
    let close = |got: [f64; 4], want: [f64; 4]| got.iter().zip(want).all(|(a, b)| (a - b).abs() <= RECOVER_TOL);
    let a = recover_curvatures(0.0, 12.0, 0.0, 1.0);
    let b = recover_curvatures(0.0, 4.0, 8.0 * s3 / 3.0, -1.0 / 3.0);
    match (a, b) {
        (Ok(a), Ok(b)) => {
            let ok = close(a.roots, [-1.0 - s2, 1.0 - s2, s2 - 1.0, 1.0 + s2])
                && close(b.roots, [-1.0 / s3, -1.0 / s3, -1.0 / s3, s3]);
            outcome(ok, format!("{:?} {:?}", a.roots, b.roots))
        }
        (a, b) => outcome(false, format!("{a:?} {b:?}")),
    }
}

fn reversed(f: &TangentFrame) -> TangentFrame {
    TangentFrame { e: [f.e[2], f.e[0], f.e[3], f.e[1]], ..*f }
}

fn rotated(f: &TangentFrame, angle: f64) -> TangentFrame {
    let (c, s) = (angle.cos(), angle.sin());
    let mix = |a: [f64; 6], b: [f64; 6], x: f64, y: f64| std::array::from_fn(|i| x * a[i] + y * b[i]);
    TangentFrame {
        e: [mix(f.e[0], f.e[1], c, s), mix(f.e[0], f.e[1], -s, c), mix(f.e[2], f.e[3], c, -s), mix(f.e[2], f.e[3], s, c)],
        ..*f
    }
}

fn orientation_and_frames() -> Outcome {
    let m = cartan_model();
    let spec = LevelSpec::new(m.field.clone().expect("field"), m.level.expect("level"));
    let root = RngStream::new(2024);
    let mut worst = 0.0f64;
    let mut discrete_ok = true;
    for i in 0..500u64 {
        let (x0, next) = root.split(i).unit_sphere6();
        let (angle, _) = next.uniform(0.0, 2.0 * PI).expect("range");
        let Ok(p) = project_to_level(&x0, &spec, 1e-12, 100) else {
            return outcome(false, format!("projection failed at point {i}"));
        };
        let frame = tangent_basis(&p, &surface_normal(&p, &spec).expect("normal")).expect("frame");
        let h = second_form(&spec, &frame).expect("form");
        let up = CurvatureReport::from_lambdas(sym_eigen(&h).values, DEFAULT_CLUSTER_TOL);
        let down = CurvatureReport::from_lambdas(sym_eigen(&h.negated()).values, DEFAULT_CLUSTER_TOL);
        for d in [up.f1 + down.f1, up.f3 + down.f3, up.f2 - down.f2, up.f4 - down.f4, up.k - down.k] {
            worst = worst.max(d.abs());
        }
        let mut rev = down.multiplicities.clone();
        rev.reverse();
        discrete_ok &= up.g == down.g && up.multiplicities == rev;
        for other in [reversed(&frame), rotated(&frame, angle)] {
            let vals = sym_eigen(&second_form(&spec, &other).expect("form")).values;
            for (a, b) in vals.iter().zip(up.lambdas) {
                worst = worst.max((a - b).abs());
            }
        }
    }
    outcome(worst <= FRAME_TOL && discrete_ok, format!("500 points, worst deviation {worst:.2e}, g/multiplicities {discrete_ok}"))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("Cartan minimal member at t = pi/8", Box::new(cartan_minimal)),
        ("Non-minimal control at t = 0.3", Box::new(non_minimal_control)),
        ("Catalog S and R values with all checks", Box::new(catalog_values)),
        ("Two-curvature case", Box::new(case_two)),
        ("Three-curvature kernel, 10^3 trials", Box::new(|| sweep(IdentityKind::G3, 1_000, Some(5)))),
        ("Vandermonde structure, 10^4 trials", Box::new(|| sweep(IdentityKind::Vandermonde, 10_000, Some(60)))),
        ("Closed forms, 10^4 trials", Box::new(|| sweep(IdentityKind::IClosed, 10_000, None))),
        ("Sign lemma, 10^5 trials", Box::new(|| sweep(IdentityKind::ISign, 100_000, Some(120)))),
        ("dpsi coefficient identity, 10^4 trials", Box::new(|| sweep(IdentityKind::Dpsi, 10_000, None))),
        ("Invariant recovery", Box::new(recovery)),
        ("Orientation and frame invariance, 500 points", Box::new(orientation_and_frames)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {:>2}. {name}: {}", i + 1, o.detail);
        failed += usize::from(!o.passed);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
