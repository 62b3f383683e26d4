//! `zernike`: exact Zernike coefficient tables, conversions and checks.
//!
//! Exit status: 0 when everything passes, 1 when a check fails, 2 on usage
//! errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use zernike_core::expr::Expr;
use zernike_core::fixture::{self, Family, FixtureError};
use zernike_core::numeric::DEFAULT_SEED;
use zernike_core::verify::{self, Report};
use zernike_core::{table, Exec};

#[cfg(feature = "parallel")]
const THREADS_VAR: &str = "ZERNIKE_THREADS";
const ORACLE_TOL: f64 = 1e-11;
const ORTHO_TOL: f64 = 1e-13;

#[derive(Parser)]
#[command(name = "zernike", version, about = "Exact coefficient tables for 2D and 3D Zernike functions")]
struct Cli {
    /// Run row generation on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a coefficient table.
    Table(TableArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Convert between Cartesian monomials and Zernike expansions.
    Convert(ConvertArgs),
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args)]
struct TableArgs {
    /// Table family (radial2d, h, noll, cart2z2d, z2cart2d, g, radial3d, f,
    /// fhat, ylmcart, z3dcart, u, yprod, k).
    family: String,
    /// Largest order; its meaning depends on the family.
    #[arg(long)]
    nmax: Option<u32>,
    /// Explicit row key in fixture syntax, e.g. `3,1,5,3,2`; repeatable.
    #[arg(long)]
    key: Vec<String>,
    #[arg(long)]
    n1: Option<u32>,
    #[arg(long)]
    m1: Option<u32>,
    #[arg(long)]
    l1: Option<u32>,
    #[arg(long)]
    n2: Option<u32>,
    #[arg(long)]
    m2: Option<u32>,
    #[arg(long)]
    l2: Option<u32>,
    #[arg(long)]
    m3: Option<u32>,
    #[arg(long)]
    l3: Option<u32>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Ortho,
    Sumrules,
    Recurrences,
    Roundtrip,
    Oracle,
    Fixtures,
    /// Triple-sum g against the linear-system route.
    Routes,
    /// Polar against Cartesian evaluation at seeded points.
    Crosseval,
    /// 3j symmetries, odd-m swap and negative-m rules.
    Symmetry,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Restrict to 2D or 3D; both when omitted.
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
    dim: Option<u8>,
    #[arg(long)]
    jmax: Option<u32>,
    #[arg(long)]
    nmax: Option<u32>,
    /// Family for the `oracle` and `fixtures` suites; all when omitted.
    #[arg(long)]
    family: Option<String>,
    /// Fixture directory.
    #[arg(long)]
    fixtures: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Print failures and the summary only.
    #[arg(long, short)]
    quiet: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Cart2zern,
    Zern2cart,
}

#[derive(Args)]
struct ConvertArgs {
    #[arg(value_enum)]
    direction: Direction,
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
    dim: u8,
    /// Exponents `p,q` (2D) or `p,q,t` (3D).
    #[arg(long)]
    monomial: Option<String>,
    /// Noll index of a 2D Zernike function.
    #[arg(long)]
    noll: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    l: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    m: Option<i32>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            // bad keys and indices come from the command line
            CliError::Fixture(FixtureError::Key { .. } | FixtureError::Zernike(_) | FixtureError::UnknownFamily(_)) => 2,
            CliError::Fixture(_) => 1,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code());
    }
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    let result = match cli.command {
        Command::Table(a) => cmd_table(a, exec),
        Command::Verify(a) => cmd_verify(a, exec),
        Command::Convert(a) => cmd_convert(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(feature = "parallel")]
fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_VAR) else { return Ok(()) };
    let n: usize = raw.parse().map_err(|_| usage(format!("{THREADS_VAR}={raw} is not a thread count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| usage(format!("{THREADS_VAR}: {e}")))
}

#[cfg(not(feature = "parallel"))]
fn configure_threads() -> Result<(), CliError> {
    Ok(())
}

fn parse_family(name: &str) -> Result<Family, CliError> {
    name.parse().map_err(|_| {
        let all: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
        usage(format!("unknown family `{name}`; expected one of {}", all.join(", ")))
    })
}

fn explicit_keys(a: &TableArgs, family: Family) -> Result<Vec<String>, CliError> {
    let need = |v: Option<u32>, flag: &str| v.ok_or_else(|| usage(format!("--{flag} is required with --n1/--n2")));
    match family {
        Family::G => {
            let (n1, m1, n2, m2) = (need(a.n1, "n1")?, need(a.m1, "m1")?, need(a.n2, "n2")?, need(a.m2, "m2")?);
            let mut m3s = match a.m3 {
                Some(m3) => vec![m3],
                None => vec![m1.abs_diff(m2), m1 + m2],
            };
            m3s.dedup();
            Ok(m3s.into_iter().map(|m3| format!("{n1},{m1},{n2},{m2},{m3}")).collect())
        }
        Family::K => {
            let (n1, l1, n2, l2) = (need(a.n1, "n1")?, need(a.l1, "l1")?, need(a.n2, "n2")?, need(a.l2, "l2")?);
            let l3s: Vec<u32> = match a.l3 {
                Some(l3) => vec![l3],
                None => ((l1 + l2) % 2..=l1 + l2).step_by(2).collect(),
            };
            Ok(l3s.into_iter().map(|l3| format!("{n1},{l1},{n2},{l2},{l3}")).collect())
        }
        other => Err(usage(format!("--n1/--n2 apply to the g and k tables, not {other}"))),
    }
}

fn cmd_table(a: TableArgs, exec: Exec) -> Result<(), CliError> {
    let family = parse_family(&a.family)?;
    let keys = if !a.key.is_empty() {
        a.key.clone()
    } else if a.n1.is_some() || a.n2.is_some() {
        explicit_keys(&a, family)?
    } else {
        table::keys(family, a.nmax.unwrap_or_else(|| table::default_nmax(family)))
    };
    let rows = table::generate(family, &keys, exec);
    let mut json_rows = Vec::new();
    for row in rows {
        let value = row.value?;
        match a.format {
            Format::Text => println!("{family} | {} | {}", row.key, fixture::render_value(family, &value)),
            Format::Json => json_rows.extend(json_terms(family, &row.key, &value)),
        }
    }
    if let Format::Json = a.format {
        print_json(&json_rows);
    }
    Ok(())
}

fn key_json(key: &str) -> Vec<Value> {
    key.split(',')
        .map(|p| p.trim().parse::<i64>().map_or_else(|_| json!(p), |v| json!(v)))
        .collect()
}

/// One object per basis function of an expansion.
fn json_terms(family: Family, key: &str, value: &Expr) -> Vec<Value> {
    value
        .iter()
        .map(|(mono, c)| {
            let basis = Expr::term(mono.clone(), zernike_core::ComplexSurd::one()).to_string();
            json!({
                "family": family.name(),
                "key": key_json(key),
                "basis": basis,
                "terms": serde_json::to_value(c).expect("coefficients serialize"),
            })
        })
        .collect()
}

fn print_json(rows: &[Value]) {
    println!("{}", serde_json::to_string_pretty(rows).expect("json values serialize"));
}

fn dims(d: Option<u8>) -> (bool, bool) {
    match d {
        Some(2) => (true, false),
        Some(3) => (false, true),
        _ => (true, true),
    }
}

fn oracle_families(name: Option<&str>) -> Result<Vec<Family>, CliError> {
    const WITH_ORACLE: [Family; 5] = [Family::H, Family::F, Family::G, Family::K, Family::U];
    match name {
        None => Ok(WITH_ORACLE.to_vec()),
        Some(n) => {
            let f = parse_family(n)?;
            if WITH_ORACLE.contains(&f) {
                Ok(vec![f])
            } else {
                Err(usage(format!("no quadrature oracle for {f}; use one of h, f, g, k, u")))
            }
        }
    }
}

fn cmd_verify(a: VerifyArgs, exec: Exec) -> Result<(), CliError> {
    let (d2, d3) = dims(a.dim);
    let dir = a.fixtures.clone().unwrap_or_else(fixture::fixtures_dir);
    let mut parts: Vec<(String, Report)> = Vec::new();
    match a.suite {
        Suite::Ortho => {
            if d2 {
                let n = a.nmax.unwrap_or(16);
                parts.push((format!("2D exact n<={n}"), verify::ortho_exact_2d(n, exec)));
                parts.push((format!("2D quadrature n<={n}"), verify::ortho_numeric_2d(n, ORTHO_TOL)));
            }
            if d3 {
                let n = a.nmax.unwrap_or(12);
                parts.push((format!("3D exact n<={n}"), verify::ortho_exact_3d(n, exec)));
                parts.push((format!("3D quadrature n<={n}"), verify::ortho_numeric_3d(n, ORTHO_TOL)));
            }
        }
        Suite::Sumrules => {
            if d2 {
                let (j, n) = (a.jmax.unwrap_or(20), a.nmax.unwrap_or(8));
                parts.push((format!("h j<={j}"), verify::sum_rule_h(j)));
                parts.push((format!("g n1,n2<={n}"), verify::sum_rule_g(n, exec)));
            }
            if d3 {
                let (j, n) = (a.jmax.unwrap_or(13), a.nmax.unwrap_or(4));
                parts.push((format!("f j<={j}"), verify::sum_rule_f(j)));
                parts.push((format!("fhat n<={j}"), verify::sum_rule_fhat(j)));
                parts.push((format!("k n1,n2<={n}"), verify::sum_rule_k(n, exec)));
            }
        }
        Suite::Recurrences => {
            if d2 {
                let j = a.jmax.unwrap_or(20);
                parts.push((format!("h j<={j}"), verify::recurrences_h(j)));
            }
            if d3 {
                let j = a.jmax.unwrap_or(16);
                parts.push((format!("f j<={j}"), verify::recurrences_f(j)));
            }
        }
        Suite::Roundtrip => {
            if d2 {
                let n = a.nmax.unwrap_or(10);
                parts.push((format!("2D degree<={n}"), verify::roundtrip_2d(n, exec)));
            }
            if d3 {
                let n = a.nmax.unwrap_or(5);
                parts.push((format!("3D degree<={n}"), verify::roundtrip_3d(n, exec)));
            }
        }
        Suite::Oracle => {
            for f in oracle_families(a.family.as_deref())? {
                match a.nmax {
                    Some(n) => parts.push((format!("{f} grid nmax={n}"), verify::oracle_grid(f, n, ORACLE_TOL, exec))),
                    None => parts.push((format!("{f} fixture rows"), verify::oracle_fixtures(&dir, f, ORACLE_TOL, exec)?)),
                }
            }
        }
        Suite::Fixtures => {
            let families = match &a.family {
                Some(n) => vec![parse_family(n)?],
                None => Family::ALL.to_vec(),
            };
            for f in families {
                parts.push((f.to_string(), verify::fixtures(&dir, f, exec)?));
            }
        }
        Suite::Routes => {
            let n = a.nmax.unwrap_or(8);
            parts.push((format!("g n1,n2<={n}"), verify::g_routes(n, exec)));
        }
        Suite::Crosseval => {
            println!("seed {:#x}, {} points", a.seed, a.samples);
            if d2 {
                let n = a.nmax.unwrap_or(9);
                parts.push((format!("2D n<={n}"), verify::cross_eval_2d(n, a.samples, a.seed, ORACLE_TOL, exec)));
            }
            if d3 {
                let n = a.nmax.unwrap_or(7);
                parts.push((format!("3D n<={n}"), verify::cross_eval_3d(n, a.samples, a.seed, ORACLE_TOL, exec)));
            }
        }
        Suite::Symmetry => {
            if d2 {
                let j = a.jmax.unwrap_or(13);
                parts.push((format!("odd m swap j<={j}"), verify::odd_m_symmetry(j)));
            }
            if d3 {
                let j = a.jmax.unwrap_or(4);
                parts.push((format!("3j j<={j}"), verify::wigner_symmetry(j)));
                parts.push(("negative m l<=6".into(), verify::negative_m_rule(a.nmax.unwrap_or(6))));
            }
        }
    }
    report(&parts, a.quiet)
}

fn report(parts: &[(String, Report)], quiet: bool) -> Result<(), CliError> {
    let mut first = None;
    for (name, r) in parts {
        for c in &r.checks {
            if !quiet || !c.passed() {
                println!("{c}");
            }
        }
        let worst = r.max_residual();
        let residual = if worst > 0.0 { format!(", max residual {worst:.2e}") } else { String::new() };
        println!("{name}: {}/{} passed{residual}", r.pass_count(), r.len());
        if first.is_none() {
            first = r.first_failure().map(|c| c.label.clone());
        }
    }
    match first {
        None => Ok(()),
        Some(label) => Err(CliError::Failed(format!("first failure: {label}"))),
    }
}

fn parse_exponents<const N: usize>(text: &str) -> Result<[u32; N], CliError> {
    let bad = || usage(format!("--monomial expects {N} comma-separated exponents, got `{text}`"));
    let v: Vec<u32> = text.split(',').map(|p| p.trim().parse()).collect::<Result<_, _>>().map_err(|_| bad())?;
    v.try_into().map_err(|_| bad())
}

fn monomial_label(exps: &[u32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .zip(["x", "y", "z"])
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

fn cmd_convert(a: ConvertArgs) -> Result<(), CliError> {
    let (family, key, lhs) = match (a.direction, a.dim) {
        (Direction::Cart2zern, 2) => {
            let [p, q] = parse_exponents(a.monomial.as_deref().ok_or_else(|| usage("--monomial p,q is required"))?)?;
            (Family::Cart2z2d, format!("{p},{q}"), monomial_label(&[p, q]))
        }
        (Direction::Cart2zern, _) => {
            let [p, q, t] = parse_exponents(a.monomial.as_deref().ok_or_else(|| usage("--monomial p,q,t is required"))?)?;
            (Family::U, format!("{p},{q},{t}"), format!("{} / Pi^(1/2)", monomial_label(&[p, q, t])))
        }
        (Direction::Zern2cart, 2) => {
            let j = a.noll.ok_or_else(|| usage("--noll is required for 2D"))?;
            (Family::Z2cart2d, j.to_string(), format!("Z_{j}"))
        }
        (Direction::Zern2cart, _) => {
            let (Some(n), Some(l)) = (a.n, a.l) else {
                return Err(usage("--n and --l are required for 3D"));
            };
            let m = a.m.unwrap_or(0);
            (Family::Z3dcart, format!("{n},{l},{m}"), format!("Z_{n},{l}^({m})"))
        }
    };
    let value = fixture::generate(family, &key)?;
    match a.format {
        Format::Text => println!("{lhs} = {}", fixture::render_value(family, &value)),
        Format::Json => print_json(&json_terms(family, &key, &value)),
    }
    Ok(())
}
