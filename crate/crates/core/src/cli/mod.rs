//! The `vnf` command line: `verify`, `eval` and `selftest`.
//!
//! Exit codes: 0 success, 1 identity or suite failure, 2 bad configuration
//! or arguments, 3 numeric budget exceeded.

pub mod config;
pub mod eval;
pub mod output;
pub mod selftest;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

pub use config::{OutputFormat, RunConfig};
pub use eval::{eval, EvalInput, Subject};
use crate::error::{Error, Result};
use crate::hooks::{self, Mutation};
use crate::specfun::Place;
use crate::summation::{verify, Timings};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Seed used by `selftest` when VNF_SEED is unset.
pub const DEFAULT_SEED: u64 = 20_240_611;

#[derive(Debug, Parser)]
#[command(name = "vnf", version, about = "Numerical checks of Voronoi-type summation formulas over Q and quadratic fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute both sides of the summation formula and compare them.
    Verify(CommonArgs),
    /// Evaluate one building block.
    Eval(EvalArgs),
    /// Run the invariant suites.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    ideal: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    zeta: Option<String>,
    #[arg(long = "s-re", visible_alias = "s", allow_hyphen_values = true)]
    s_re: Option<f64>,
    #[arg(long = "s-im", allow_hyphen_values = true)]
    s_im: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long = "max-radius")]
    max_radius: Option<f64>,
    /// Zero the wall-clock timings so reports are bit-stable.
    #[arg(long)]
    reproducible: bool,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum PlaceArg {
    Real,
    Complex,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(value_enum)]
    subject: Subject,
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, value_enum, default_value = "real")]
    place: PlaceArg,
    /// Kernel arguments (real parts at a complex place).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    x: Vec<f64>,
    #[arg(long = "x-im", value_delimiter = ',', allow_hyphen_values = true)]
    x_im: Vec<f64>,
    /// Hankel transform points; pairs over real quadratic fields.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    y: Vec<f64>,
    #[arg(long = "y-im", value_delimiter = ',', allow_hyphen_values = true)]
    y_im: Vec<f64>,
    /// Hankel transform by direct quadrature instead of the Barnes plan.
    #[arg(long)]
    direct: bool,
    /// Field element for `psi`.
    #[arg(long, allow_hyphen_values = true)]
    element: Option<String>,
    /// Restrict `psi` to the primes above p.
    #[arg(long)]
    prime: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Injection {
    PsiSignFlip,
    KernelAsymmetry,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    /// Test hook: break one invariant on purpose.
    #[arg(long, value_enum)]
    inject: Vec<Injection>,
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_budget() {
        return EXIT_BUDGET;
    }
    match e {
        Error::Pole(_) | Error::HenselFailure(_) | Error::FactorizationOverflow(_) | Error::NonIntegralIdeal => EXIT_FAIL,
        _ => EXIT_CONFIG,
    }
}

fn report_error(e: &Error) -> i32 {
    eprintln!("error [{}]: {e}", e.kind());
    exit_code(e)
}

fn merged_config(a: &CommonArgs) -> Result<RunConfig> {
    let mut cfg = match &a.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(v) = &a.field {
        cfg.field = v.clone();
    }
    if let Some(v) = &a.ideal {
        cfg.ideal = v.clone();
    }
    if let Some(v) = &a.zeta {
        cfg.zeta = v.clone();
    }
    if let Some(v) = a.s_re {
        cfg.s_re = v;
    }
    if let Some(v) = a.s_im {
        cfg.s_im = v;
    }
    if let Some(v) = a.tol {
        cfg.tol = v;
    }
    if let Some(v) = a.max_radius {
        cfg.max_radius = v;
    }
    if a.reproducible {
        cfg.reproducible = true;
    }
    if let Some(v) = a.format {
        cfg.format = v;
    }
    if let Some(v) = &a.out {
        cfg.out = Some(v.display().to_string());
    }
    Ok(cfg)
}

fn emit(text: &str, out: Option<&str>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Config(format!("{path}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_verify(a: &CommonArgs) -> i32 {
    let cfg = match merged_config(a) {
        Ok(c) => c,
        Err(e) => return report_error(&e),
    };
    let p = match cfg.to_problem() {
        Ok(p) => p,
        Err(e) => return report_error(&e),
    };
    let mut report = match verify(&p) {
        Ok(r) => r,
        Err(e) => return report_error(&e),
    };
    if cfg.reproducible {
        report.timings = Timings::default();
    }
    if let Err(e) = emit(&output::render_report(&report, cfg.format), cfg.out.as_deref()) {
        return report_error(&e);
    }
    if report.budget_exceeded {
        eprintln!("error [TruncationBudgetExceeded]: {}", report.error.as_deref().unwrap_or(""));
        EXIT_BUDGET
    } else if report.passed {
        EXIT_OK
    } else {
        eprintln!("identity check failed: rel_err {:e} > tol {:e}", report.rel_err, report.tol);
        EXIT_FAIL
    }
}

fn cmd_eval(a: &EvalArgs) -> i32 {
    let cfg = match merged_config(&a.common) {
        Ok(c) => c,
        Err(e) => return report_error(&e),
    };
    let input = EvalInput {
        field: cfg.field.clone(),
        ideal: cfg.ideal.clone(),
        zeta: cfg.zeta.clone(),
        s: Complex64::new(cfg.s_re, cfg.s_im),
        weight: cfg.weight.clone(),
        place: match a.place {
            PlaceArg::Real => Place::Real,
            PlaceArg::Complex => Place::Complex,
        },
        x: a.x.clone(),
        x_im: a.x_im.clone(),
        y: a.y.clone(),
        y_im: a.y_im.clone(),
        direct: a.direct,
        element: a.element.clone(),
        prime: a.prime,
    };
    // eval defaults to text unless a format was asked for
    let format = a.common.format.unwrap_or(OutputFormat::Text);
    match eval(a.subject, &input).and_then(|t| emit(&t.render(format), cfg.out.as_deref())) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error [{}]: {e}", e.kind());
            if e.is_budget() {
                EXIT_BUDGET
            } else {
                EXIT_CONFIG
            }
        }
    }
}

fn cmd_selftest(a: &SelftestArgs) -> i32 {
    for inj in &a.inject {
        hooks::set(
            match inj {
                Injection::PsiSignFlip => Mutation::PsiSignFlip,
                Injection::KernelAsymmetry => Mutation::KernelAsymmetry,
            },
            true,
        );
    }
    let seed = std::env::var("VNF_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    let results = selftest::run_suites(seed);
    print!("{}", selftest::summary(&results));
    let failed: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.name).collect();
    if failed.is_empty() {
        EXIT_OK
    } else {
        eprintln!("failed: {}", failed.join(", "));
        EXIT_FAIL
    }
}

/// Sizes the rayon pool from VNF_THREADS, if set.
fn init_threads() {
    if let Some(n) = std::env::var("VNF_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // fails only if a pool already exists, which is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses the arguments and runs one command, returning the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    init_threads();
    match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Selftest(a) => cmd_selftest(a),
    }
}
