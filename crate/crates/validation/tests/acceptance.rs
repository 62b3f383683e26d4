//! Acceptance criteria. One PASS/FAIL line per criterion; exits nonzero if
//! any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use zernike_core::fixture::{self, Family};
use zernike_core::numeric::DEFAULT_SEED;
use zernike_core::verify::{self, Report};
use zernike_core::Exec;

const EXEC: Exec = Exec::Parallel;

struct Outcome {
    passed: bool,
    summary: String,
    details: Vec<String>,
}

fn from_reports(parts: Vec<(&str, Report)>) -> Outcome {
    let mut details = Vec::new();
    let mut summary = Vec::new();
    for (name, r) in &parts {
        summary.push(format!("{name} {}/{}", r.pass_count(), r.len()));
        details.extend(r.failures().take(5).map(|c| c.to_string()));
    }
    // an empty report would pass vacuously
    let passed = parts.iter().all(|(_, r)| r.passed() && !r.is_empty());
    Outcome { passed, summary: summary.join(", "), details }
}

fn fixtures(families: &[Family]) -> Vec<(&'static str, Report)> {
    let dir = fixture::fixtures_dir();
    families
        .iter()
        .map(|f| (f.name(), verify::fixtures(&dir, *f, EXEC).unwrap_or_else(|e| panic!("loading {f}: {e}"))))
        .collect()
}

fn timed(budget: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    out.summary = format!("{} in {:.2} s (budget {} s)", out.summary, took.as_secs_f64(), budget.as_secs());
    if took > budget {
        out.passed = false;
        out.details.push(format!("runtime {:.2} s exceeds {} s", took.as_secs_f64(), budget.as_secs()));
    }
    out
}

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("Fixture reproduction, 2D radial", Box::new(|| timed(Duration::from_secs(1), || from_reports(fixtures(&[Family::Radial2d]))))),
        ("Fixture reproduction, h expansions", Box::new(|| from_reports(fixtures(&[Family::H])))),
        ("Fixture reproduction, Noll table", Box::new(|| from_reports(fixtures(&[Family::Noll])))),
        ("Fixture reproduction, Cartesian<->Zernike 2D", Box::new(|| from_reports(fixtures(&[Family::Cart2z2d, Family::Z2cart2d])))),
        (
            "Fixture reproduction, g table and linear-system route",
            Box::new(|| {
                let mut parts = fixtures(&[Family::G]);
                parts.push(("g_coeff == linear system n1,n2<=8", verify::g_routes(8, EXEC)));
                from_reports(parts)
            }),
        ),
        (
            "Fixture reproduction, 3D",
            Box::new(|| {
                from_reports(fixtures(&[
                    Family::Radial3d,
                    Family::F,
                    Family::Fhat,
                    Family::Ylmcart,
                    Family::Z3dcart,
                    Family::U,
                    Family::Yprod,
                    Family::K,
                ]))
            }),
        ),
        (
            "Exact sum rules",
            Box::new(|| {
                from_reports(vec![
                    ("h j<=20", verify::sum_rule_h(20)),
                    ("f j<=13", verify::sum_rule_f(13)),
                    ("g n<=8", verify::sum_rule_g(8, EXEC)),
                    ("k n<=4", verify::sum_rule_k(4, EXEC)),
                ])
            }),
        ),
        (
            "Exact symbolic orthogonality",
            Box::new(|| from_reports(vec![("2D n<=16", verify::ortho_exact_2d(16, EXEC)), ("3D n<=12", verify::ortho_exact_3d(12, EXEC))])),
        ),
        (
            "Quadrature oracles",
            Box::new(|| {
                timed(Duration::from_secs(60), || {
                    let dir = fixture::fixtures_dir();
                    let parts = [Family::H, Family::F, Family::G, Family::K, Family::U]
                        .iter()
                        .map(|f| (f.name(), verify::oracle_fixtures(&dir, *f, 1e-11, EXEC).expect("fixture load")))
                        .collect::<Vec<_>>();
                    let worst = parts.iter().map(|(_, r)| r.max_residual()).fold(0.0, f64::max);
                    let mut out = from_reports(parts);
                    out.summary = format!("{}, max residual {worst:.2e}", out.summary);
                    out
                })
            }),
        ),
        (
            "Round-trips",
            Box::new(|| from_reports(vec![("2D p+q<=10", verify::roundtrip_2d(10, EXEC)), ("3D p+q+t<=5", verify::roundtrip_3d(5, EXEC))])),
        ),
        (
            "Cross-evaluation",
            Box::new(|| {
                let r2 = verify::cross_eval_2d(9, 100, DEFAULT_SEED, 1e-11, EXEC);
                let r3 = verify::cross_eval_3d(7, 100, DEFAULT_SEED, 1e-11, EXEC);
                let worst = r2.max_residual().max(r3.max_residual());
                let mut out = from_reports(vec![("2D n<=9", r2), ("3D n<=7", r3)]);
                out.summary = format!("{}, max residual {worst:.2e}", out.summary);
                out
            }),
        ),
        (
            "Recurrence consistency",
            Box::new(|| from_reports(vec![("h j<=20", verify::recurrences_h(20)), ("f j<=16", verify::recurrences_f(16))])),
        ),
        ("Wigner 3j symmetry", Box::new(|| from_reports(vec![("j<=4", verify::wigner_symmetry(4))]))),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let out = run();
        let tag = if out.passed { "PASS" } else { "FAIL" };
        println!("{tag} [{:>2}] {name}: {}", i + 1, out.summary);
        if !out.passed {
            failed += 1;
            for d in &out.details {
                println!("          {d}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
