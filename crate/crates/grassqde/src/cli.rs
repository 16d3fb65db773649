//! Command-line front end. Every command prints one JSON report on stdout.
//!
//! Report layout (schema `grassqde-report/1`):
//! `schema`, `version`, `command` (argv echo), `config`, `result`, `pass`, and
//! `runtime` (wall time, cache status). Everything outside `runtime` is a pure
//! function of the command line.
//!
//! Exit codes: 0 when every asserted check passes, 1 when a check fails or a
//! computation breaks down, 2 for usage errors and invalid input.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bethe::{build_bethe, eigen_compare, solve_bethe};
use crate::boxcomb::{enumerate_partitions, frames, Partition};
use crate::cache::{Cache, CacheStatus};
use crate::exact_algebra::{MultiPoly, Rational};
use crate::lattice::{attracting_matrices, bethe_algebra_probe, check_ybe, commuting_family_check};
use crate::pieri_ops::{pieri_matrix, PieriMatrix};
use crate::qde_cohomology::{qde_residual_kn, CMode, CQdeConfig};
use crate::qde_ktheory::{qde_residual_k, KMode, KQdeConfig};
use crate::report::QdeReport;
use crate::schubert_polys::schubert_table;
use crate::selftest::{run_all, run_criterion, SelftestReport, Status};
use crate::{Error, Exec, Theory};

pub const SCHEMA: &str = "grassqde-report/1";
const MAX_N: usize = 8;
const MAX_ORDER: usize = 6;

#[derive(Parser, Debug)]
#[command(name = "grassqde", version, about = "Exact checks of the quantum difference equation for Grassmannians")]
struct Cli {
    /// Human-readable output instead of JSON
    #[arg(long, global = true)]
    pretty: bool,
    /// Directory for cached polynomial and operator tables
    #[arg(long, global = true, env = crate::cache::ENV_VAR)]
    cache_dir: Option<PathBuf>,
    /// Disable the rayon thread pool
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TheoryArg {
    K,
    Coh,
}

impl From<TheoryArg> for Theory {
    fn from(t: TheoryArg) -> Theory {
        match t {
            TheoryArg::K => Theory::KTheory,
            TheoryArg::Coh => Theory::Cohomology,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum ModeArg {
    Exact,
    #[value(name = "exact_q")]
    ExactQ,
    Symbolic,
    Numeric,
}

#[derive(Args, Debug, Clone, Serialize)]
struct Shape {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Partitions of the k x (n-k) box with their fixed points
    Partitions(Shape),
    /// Schubert representatives keyed by partition
    Polys {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_enum, default_value = "k")]
        theory: TheoryArg,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Pieri operator M(z) = M0 + z M1 in the Schubert basis
    Op {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_enum, default_value = "k")]
        theory: TheoryArg,
        /// Evaluate at these weights (comma separated rationals)
        #[arg(long)]
        u: Option<String>,
        /// Also form M0 + z M1 at this rational z (needs --u)
        #[arg(long)]
        z: Option<String>,
    },
    Qde {
        #[command(subcommand)]
        command: QdeCommand,
    },
    Bethe {
        #[command(subcommand)]
        command: BetheCommand,
    },
    Lattice {
        #[command(subcommand)]
        command: LatticeCommand,
    },
    /// Run the acceptance suite
    Selftest {
        /// Run a single criterion (1-11)
        #[arg(long)]
        criterion: Option<u32>,
    },
}

#[derive(Subcommand, Debug)]
enum QdeCommand {
    /// Check the difference (or differential) equation order by order
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    shape: Shape,
    #[arg(long, value_enum, default_value = "k")]
    theory: TheoryArg,
    #[arg(long, default_value_t = 3)]
    order: usize,
    /// k: exact_q | symbolic | numeric; coh: exact | numeric
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    u: Option<String>,
    #[arg(long)]
    eps: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args, Debug)]
struct BetheArgs {
    #[command(flatten)]
    shape: Shape,
    #[arg(long, value_enum, default_value = "k")]
    theory: TheoryArg,
    #[arg(long)]
    u: Option<String>,
    #[arg(long, default_value = "0.001")]
    z: String,
    /// Restrict `solve` to the fixed point of this partition
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Subcommand, Debug)]
enum BetheCommand {
    /// Track Bethe roots from z = 0
    Solve(BetheArgs),
    /// Compare Bethe eigenvalues with the spectrum of M(z)
    Eigen(BetheArgs),
}

#[derive(Subcommand, Debug)]
enum LatticeCommand {
    /// Yang-Baxter equation and attracting matrices
    Ybe {
        #[arg(long, value_enum, default_value = "k")]
        theory: TheoryArg,
    },
    /// Commutation of transfer matrices at random points
    Transfer {
        #[arg(long, value_enum, default_value = "k")]
        theory: TheoryArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Transfer matrix against the K-theory Pieri operator (exploratory)
    Probe {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        u: Option<String>,
        #[arg(long, default_value = "0.001")]
        z: String,
        #[arg(long, default_value = "1.7")]
        x: String,
    },
}

/// Exit code and the text destined for stdout and stderr.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::InvalidShape(_)
            | Error::OutOfBox(..)
            | Error::NotFullWidth(_)
            | Error::DegenerateWeights(_)
            | Error::ZeroEpsilon
            | Error::SizeLimit(_)
            | Error::Parse(_) => Failure::Usage(e.to_string()),
            other => Failure::Compute(other),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

struct Output {
    config: Value,
    result: Value,
    pass: bool,
    cache: Option<CacheStatus>,
    table: Option<String>,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn check_shape(k: usize, n: usize) -> Res<()> {
    if k == 0 || k > n || n > MAX_N {
        return Err(usage(format!("need 1 <= k <= n <= {MAX_N}, got k={k}, n={n}")));
    }
    Ok(())
}

fn parse_rationals(s: &str) -> Res<Vec<Rational>> {
    s.split(',')
        .map(|t| t.trim().parse::<Rational>().map_err(|_| usage(format!("not a rational: {t:?}"))))
        .collect()
}

fn parse_rational(s: &str) -> Res<Rational> {
    s.trim().parse::<Rational>().map_err(|_| usage(format!("not a rational: {s:?}")))
}

fn parse_float(s: &str) -> Res<f64> {
    let t = s.trim();
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let r = parse_rational(t)?;
    Ok(num::ToPrimitive::to_f64(&r).unwrap_or(f64::NAN))
}

fn parse_floats(s: &str) -> Res<Vec<f64>> {
    s.split(',').map(parse_float).collect()
}

fn distinct<T: PartialEq>(u: &[T], n: usize) -> Res<()> {
    if u.len() != n {
        return Err(usage(format!("expected {n} weights, got {}", u.len())));
    }
    for i in 0..u.len() {
        if u[i + 1..].contains(&u[i]) {
            return Err(usage("weights must be pairwise distinct"));
        }
    }
    Ok(())
}

fn default_weights(n: usize) -> Vec<f64> {
    (0..n).map(|i| 1.3 + 0.8 * i as f64).collect()
}

fn parse_lambda(s: &str, k: usize, n: usize) -> Res<Partition> {
    let p: Partition = s.parse()?;
    if p.k() != k || !p.in_box(n) {
        return Err(usage(format!("{p} is not a partition in the {k} x {} box", n - k)));
    }
    Ok(p)
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

fn partitions_cmd(shape: &Shape) -> Res<Output> {
    check_shape(shape.k, shape.n)?;
    let rows: Vec<Value> = frames(shape.k, shape.n)?
        .into_iter()
        .enumerate()
        .map(|(i, (p, r))| json!({"index": i + 1, "lambda": p, "frame": r, "state_index": r.state_index()}))
        .collect();
    let mut table = format!("{:>5}  {:<14} {:<14} {:>6}\n", "index", "lambda", "frame", "state");
    for r in &rows {
        let frame: Vec<String> = r["frame"].as_array().into_iter().flatten().map(|v| v.to_string()).collect();
        let lambda: Vec<String> = r["lambda"].as_array().into_iter().flatten().map(|v| v.to_string()).collect();
        table += &format!(
            "{:>5}  {:<14} {:<14} {:>6}\n",
            r["index"].as_u64().unwrap_or(0),
            format!("({})", lambda.join(",")),
            format!("{{{}}}", frame.join(",")),
            r["state_index"].as_u64().unwrap_or(0)
        );
    }
    Ok(Output {
        config: json!({"k": shape.k, "n": shape.n}),
        result: json!({"count": rows.len(), "partitions": rows}),
        pass: true,
        cache: None,
        table: Some(table),
    })
}

fn polys_cmd(shape: &Shape, theory: Theory, lambda: Option<&str>, cache: &Cache, exec: Exec) -> Res<Output> {
    check_shape(shape.k, shape.n)?;
    let parts = enumerate_partitions(shape.k, shape.n)?;
    let key = json!({"table": "schubert", "theory": theory, "k": shape.k, "n": shape.n});
    let (table, status) = cache.get_or_compute(&key, || schubert_table(theory, &parts, exec))?;
    let chosen = match lambda {
        Some(s) => vec![parse_lambda(s, shape.k, shape.n)?],
        None => parts.clone(),
    };
    let mut map = serde_json::Map::new();
    let mut text = String::new();
    for p in &chosen {
        let i = parts.iter().position(|q| q == p).unwrap_or(0);
        map.insert(p.to_string(), serde_json::to_value(&table[i]).map_err(Error::from)?);
        text += &format!("{p:<12} {}\n", table[i]);
    }
    Ok(Output {
        config: json!({"k": shape.k, "n": shape.n, "theory": theory, "lambda": lambda}),
        result: json!({"order": chosen, "polynomials": map}),
        pass: true,
        cache: Some(status),
        table: Some(text),
    })
}

fn rows_of(m: &PieriMatrix, order: usize) -> Vec<Vec<MultiPoly>> {
    (0..m.size()).map(|i| (0..m.size()).map(|j| m.entry(order, i, j).clone()).collect()).collect()
}

fn op_cmd(shape: &Shape, theory: Theory, u: Option<&str>, z: Option<&str>, cache: &Cache, exec: Exec) -> Res<Output> {
    check_shape(shape.k, shape.n)?;
    let key = json!({"table": "pieri", "theory": theory, "k": shape.k, "n": shape.n});
    let (m, status) = cache.get_or_compute(&key, || pieri_matrix(theory, shape.k, shape.n, exec))?;
    let mut result = json!({
        "partitions": m.partitions,
        "storage": "row i, column j: coefficient of class i in the image of class j",
        "m0": rows_of(&m, 0),
        "m1": rows_of(&m, 1),
    });
    let mut config = json!({"k": shape.k, "n": shape.n, "theory": theory});
    if let Some(us) = u {
        let uv = parse_rationals(us)?;
        distinct(&uv, shape.n)?;
        let (m0, m1) = m.eval(&uv)?;
        let show = |a: &crate::exact_algebra::Matrix<Rational>| -> Vec<Vec<String>> {
            (0..a.rows()).map(|i| (0..a.cols()).map(|j| a.get(i, j).to_string()).collect()).collect()
        };
        result["m0_at_u"] = json!(show(&m0));
        result["m1_at_u"] = json!(show(&m1));
        config["u"] = json!(strings(&uv));
        if let Some(zs) = z {
            let zv = parse_rational(zs)?;
            result["m_at_z"] = json!(show(&m.at(&uv, &zv)?));
            config["z"] = json!(zv.to_string());
        }
    } else if z.is_some() {
        return Err(usage("--z needs --u"));
    }
    Ok(Output { config, result, pass: true, cache: Some(status), table: None })
}

fn qde_table(rep: &QdeReport) -> String {
    let mut s = format!(
        "{} Gr({},{}) order {} mode {} -> {}\n",
        rep.theory,
        rep.k,
        rep.n,
        rep.order,
        rep.mode,
        if rep.pass { "PASS" } else { "FAIL" }
    );
    for e in &rep.entries {
        let status = match (e.exact_zero, e.max_residual) {
            (Some(true), _) => "exact zero".to_string(),
            (Some(false), _) => "NONZERO".to_string(),
            (None, Some(r)) => format!("{r:.3e}"),
            _ => "-".to_string(),
        };
        s += &format!("  {:<12} m={}  {}\n", e.lambda.to_string(), e.order, status);
    }
    s
}

fn verify_cmd(a: &VerifyArgs, exec: Exec) -> Res<Output> {
    check_shape(a.shape.k, a.shape.n)?;
    if a.order > MAX_ORDER {
        return Err(usage(format!("order must be at most {MAX_ORDER}")));
    }
    let theory: Theory = a.theory.into();
    let u = a.u.as_deref().map(parse_rationals).transpose()?;
    if let Some(uv) = &u {
        distinct(uv, a.shape.n)?;
    }
    let mode = a.mode.unwrap_or(match theory {
        Theory::KTheory => ModeArg::ExactQ,
        Theory::Cohomology => ModeArg::Exact,
    });
    if mode == ModeArg::Numeric && a.seed.is_none() {
        return Err(usage("--seed is required in numeric mode"));
    }
    let seed = a.seed.unwrap_or(0);
    let rep = match theory {
        Theory::KTheory => {
            let kmode = match mode {
                ModeArg::ExactQ | ModeArg::Exact => KMode::ExactQ,
                ModeArg::Symbolic => KMode::Symbolic,
                ModeArg::Numeric => KMode::Numeric,
            };
            if a.eps.is_some() {
                return Err(usage("--eps applies to --theory coh only"));
            }
            let mut cfg = KQdeConfig::new(a.shape.k, a.shape.n, a.order, kmode, seed);
            cfg.u = u.clone();
            cfg.exec = exec;
            if let Some(t) = a.tol {
                cfg.tol = t;
            }
            qde_residual_k(&cfg)?
        }
        Theory::Cohomology => {
            let cmode = match mode {
                ModeArg::Exact => CMode::Exact,
                ModeArg::Numeric => CMode::Numeric,
                other => return Err(usage(format!("mode {other:?} is not available in cohomology"))),
            };
            let mut cfg = CQdeConfig::new(a.shape.k, a.shape.n, a.order, cmode, seed);
            cfg.u = u.clone();
            cfg.eps = a.eps.as_deref().map(parse_rational).transpose()?;
            cfg.exec = exec;
            if let Some(t) = a.tol {
                cfg.tol = t;
            }
            qde_residual_kn(&cfg)?
        }
    };
    let table = qde_table(&rep);
    Ok(Output {
        config: json!({"k": a.shape.k, "n": a.shape.n, "theory": theory, "order": a.order, "mode": mode,
                       "seed": seed, "u": u.as_deref().map(strings), "eps": a.eps, "tol": a.tol}),
        pass: rep.pass,
        result: serde_json::to_value(&rep).map_err(Error::from)?,
        cache: None,
        table: Some(table),
    })
}

fn bethe_cmd(cmd: &BetheCommand, exec: Exec) -> Res<Output> {
    let (a, eigen) = match cmd {
        BetheCommand::Solve(a) => (a, false),
        BetheCommand::Eigen(a) => (a, true),
    };
    check_shape(a.shape.k, a.shape.n)?;
    let theory: Theory = a.theory.into();
    let u = match &a.u {
        Some(s) => parse_floats(s)?,
        None => default_weights(a.shape.n),
    };
    if u.len() != a.shape.n {
        return Err(usage(format!("expected {} weights, got {}", a.shape.n, u.len())));
    }
    let z = parse_float(&a.z)?;
    let config = json!({"k": a.shape.k, "n": a.shape.n, "theory": theory, "u": u, "z": z,
                        "lambda": a.lambda, "tol": a.tol, "command": if eigen { "eigen" } else { "solve" }});
    if eigen {
        let rep = eigen_compare(theory, a.shape.k, a.shape.n, &u, z, a.tol, exec)?;
        let pass = rep.max_distance <= a.tol;
        return Ok(Output { config, result: serde_json::to_value(&rep).map_err(Error::from)?, pass, cache: None, table: None });
    }
    let sys = build_bethe(theory, a.shape.k, a.shape.n, &u, z)?;
    let mut fr = frames(a.shape.k, a.shape.n)?;
    if let Some(s) = &a.lambda {
        let p = parse_lambda(s, a.shape.k, a.shape.n)?;
        fr.retain(|f| f.0 == p);
    }
    let roots = exec
        .map(&fr, |(_, r)| solve_bethe(&sys, r, 1e-13))
        .into_iter()
        .collect::<crate::Result<Vec<_>>>()?;
    let max_res = roots.iter().flat_map(|b| b.residuals.iter().copied()).fold(0.0, f64::max);
    let equations: Vec<String> = sys.equations.iter().map(|e| e.to_string()).collect();
    Ok(Output {
        config,
        result: json!({"equations": equations, "roots": roots, "max_residual": max_res}),
        pass: max_res <= a.tol,
        cache: None,
        table: None,
    })
}

fn lattice_cmd(cmd: &LatticeCommand, exec: Exec) -> Res<Output> {
    match cmd {
        LatticeCommand::Ybe { theory } => {
            let theory: Theory = (*theory).into();
            let ybe = check_ybe(theory)?;
            let am = attracting_matrices(theory)?;
            let pass = ybe && am.matches_r_block;
            Ok(Output {
                config: json!({"theory": theory}),
                result: json!({"ybe": ybe, "attracting": am}),
                pass,
                cache: None,
                table: None,
            })
        }
        LatticeCommand::Transfer { theory, n, seed, samples } => {
            if *n == 0 || *n > MAX_N {
                return Err(usage(format!("need 1 <= n <= {MAX_N}")));
            }
            let theory: Theory = (*theory).into();
            let rep = commuting_family_check(theory, *n, *samples, *seed, 1e-12, exec)?;
            Ok(Output {
                config: json!({"theory": theory, "n": n, "seed": seed, "samples": samples}),
                pass: rep.pass,
                result: serde_json::to_value(&rep).map_err(Error::from)?,
                cache: None,
                table: None,
            })
        }
        LatticeCommand::Probe { shape, u, z, x } => {
            check_shape(shape.k, shape.n)?;
            let u = match u {
                Some(s) => parse_floats(s)?,
                None => default_weights(shape.n),
            };
            distinct(&u, shape.n)?;
            let (z, x) = (parse_float(z)?, parse_float(x)?);
            let rep = bethe_algebra_probe(shape.n, shape.k, x, z, &u, 1e-8)?;
            Ok(Output {
                config: json!({"k": shape.k, "n": shape.n, "u": u, "z": z, "x": x}),
                result: json!({"asserted": false, "probe": rep}),
                pass: true,
                cache: None,
                table: None,
            })
        }
    }
}

fn selftest_table(rep: &SelftestReport) -> String {
    let mut s = String::new();
    for c in &rep.criteria {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Reported => "REPORTED",
        };
        s += &format!("{:>2} {:<8} {}\n", c.id, tag, c.name);
    }
    s
}

fn selftest_cmd(criterion: Option<u32>, exec: Exec) -> Res<Output> {
    let (rep, timings) = match criterion {
        Some(id) => {
            let start = Instant::now();
            let c = run_criterion(id, exec).ok_or_else(|| usage(format!("no criterion {id}")))?;
            let pass = c.status != Status::Fail;
            let rep = SelftestReport { version: env!("CARGO_PKG_VERSION").into(), criteria: vec![c], pass, timings: vec![] };
            (rep, vec![(id, start.elapsed().as_secs_f64())])
        }
        None => {
            let mut rep = run_all(exec);
            let t = std::mem::take(&mut rep.timings);
            (rep, t)
        }
    };
    let table = selftest_table(&rep);
    Ok(Output {
        config: json!({"criterion": criterion}),
        pass: rep.pass,
        result: json!({"criteria": rep.criteria, "criterion_seconds": timings}),
        cache: None,
        table: Some(table),
    })
}

fn envelope(argv: &[String], out: &Output, secs: f64, cache_dir: Option<&std::path::Path>) -> Value {
    json!({
        "schema": SCHEMA,
        "version": env!("CARGO_PKG_VERSION"),
        "command": argv.get(1..).unwrap_or(&[]),
        "config": out.config,
        "result": out.result,
        "pass": out.pass,
        "runtime": {"wall_seconds": secs, "cache": out.cache, "cache_dir": cache_dir},
    })
}

fn render(v: &Value, pretty: bool) -> String {
    let s = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) };
    s.unwrap_or_else(|_| "{}".into()) + "\n"
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                let report = json!({"schema": SCHEMA, "version": env!("CARGO_PKG_VERSION"), "command": argv.get(1..),
                                    "error": {"kind": "usage", "message": e.kind().to_string()}, "pass": false});
                Outcome { code, stdout: render(&report, false), stderr: text }
            };
        }
    };
    let exec = if cli.sequential { Exec::sequential() } else { Exec::default() };
    let cache = Cache::new(cli.cache_dir.clone());
    let start = Instant::now();
    let res = match &cli.command {
        Command::Partitions(s) => partitions_cmd(s),
        Command::Polys { shape, theory, lambda } => polys_cmd(shape, (*theory).into(), lambda.as_deref(), &cache, exec),
        Command::Op { shape, theory, u, z } => op_cmd(shape, (*theory).into(), u.as_deref(), z.as_deref(), &cache, exec),
        Command::Qde { command: QdeCommand::Verify(a) } => verify_cmd(a, exec),
        Command::Bethe { command } => bethe_cmd(command, exec),
        Command::Lattice { command } => lattice_cmd(command, exec),
        Command::Selftest { criterion } => selftest_cmd(*criterion, exec),
    };
    let secs = start.elapsed().as_secs_f64();
    match res {
        Ok(out) => {
            let code = if out.pass { 0 } else { 1 };
            let stdout = match (&out.table, cli.pretty) {
                (Some(t), true) => t.clone(),
                _ => render(&envelope(&argv, &out, secs, cache.dir()), cli.pretty),
            };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(f) => {
            let (code, kind, msg) = match f {
                Failure::Usage(m) => (2, "usage", m),
                Failure::Compute(e) => (1, "computation", e.to_string()),
            };
            let report = json!({"schema": SCHEMA, "version": env!("CARGO_PKG_VERSION"), "command": argv.get(1..),
                                "error": {"kind": kind, "message": msg}, "pass": false});
            Outcome { code, stdout: render(&report, cli.pretty), stderr: format!("error: {msg}\n") }
        }
    }
}
