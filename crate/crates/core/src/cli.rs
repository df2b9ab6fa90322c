//! Command-line front end. [`run`] parses arguments, dispatches a subcommand,
//! prints a table (or JSON with `--json`) and returns the process exit code.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bound::{global_search, y_closed, y_oracle, SearchConfig, YArgs};
use crate::lune::{
    convex_boundary_extremal, extremal_g, extremal_h, koebe, membership_check, q_series, ClassId,
    MAX_SAMPLING_RADIUS,
};
use crate::series::DEFAULT_ORDER;
use crate::verify::{run_suite, VerifyConfig};
use crate::{Error, TruncatedSeries};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "LUNE_HANKEL_THREADS";

#[derive(Debug, Parser)]
#[command(name = "lune-hankel", version, about = "Hankel determinant bounds for lune classes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full certification suite.
    Verify(VerifyArgs),
    /// Grid search for sup |H21| over the parameter domain.
    Search(SearchArgs),
    /// Taylor coefficients of a named function.
    Series(SeriesArgs),
    /// Closed-form disk maximum Y(A, B, C).
    Ymax(YmaxArgs),
    /// Sampled lune membership test.
    Membership(MembershipArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the JSON document to this path.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Print JSON instead of the table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args, Default)]
pub struct GridArgs {
    #[arg(long)]
    pub tau1_steps: Option<usize>,
    #[arg(long)]
    pub tau2_radial: Option<usize>,
    #[arg(long)]
    pub tau2_angular: Option<usize>,
    #[arg(long)]
    pub refine_depth: Option<usize>,
}

impl GridArgs {
    fn apply(&self, cfg: &mut SearchConfig) {
        if let Some(v) = self.tau1_steps {
            cfg.tau1_steps = v;
        }
        if let Some(v) = self.tau2_radial {
            cfg.tau2_radial = v;
        }
        if let Some(v) = self.tau2_angular {
            cfg.tau2_angular = v;
        }
        if let Some(v) = self.refine_depth {
            cfg.refine_depth = v;
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// JSON file with suite settings; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Truncation order of the series.
    #[arg(long)]
    pub order: Option<usize>,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Samples per circle for membership checks.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Random draws for the closed-form maximum check.
    #[arg(long)]
    pub oracle_samples: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, value_parser = parse_class)]
    pub class: ClassId,
    /// JSON file; its `search` section supplies grid settings.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, default_value_t = 0.0)]
    pub tau1_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub tau1_max: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NamedFunction {
    G,
    H0,
    H,
    Q,
    Koebe,
    /// Convex member built from the boundary parameter point.
    Boundary,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long, value_enum)]
    pub function: NamedFunction,
    /// Highest coefficient index printed.
    #[arg(long, default_value_t = 5)]
    pub order: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct YmaxArgs {
    #[arg(short = 'A', allow_negative_numbers = true)]
    pub a: f64,
    #[arg(short = 'B', allow_negative_numbers = true)]
    pub b: f64,
    #[arg(short = 'C', allow_negative_numbers = true)]
    pub c: f64,
    /// Also evaluate the brute-force disk oracle.
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MembershipArgs {
    #[arg(long, value_enum)]
    pub function: NamedFunction,
    #[arg(long, value_parser = parse_class)]
    pub class: ClassId,
    /// Sampling radius; repeat for several circles.
    #[arg(long, default_values_t = [0.9])]
    pub radius: Vec<f64>,
    #[arg(long, default_value_t = crate::lune::DEFAULT_SAMPLES_PER_CIRCLE)]
    pub samples: usize,
    #[arg(long, default_value_t = crate::lune::DEFAULT_MEMBERSHIP_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn parse_class(s: &str) -> Result<ClassId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Sizes the global rayon pool from [`THREADS_ENV`], if set.
pub fn init_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        // fails only if the pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(m) => Failure::Usage(m),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_FAIL
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<bool, Failure> {
    match cmd {
        Command::Verify(a) => cmd_verify(a, out),
        Command::Search(a) => cmd_search(a, out),
        Command::Series(a) => cmd_series(a, out),
        Command::Ymax(a) => cmd_ymax(a, out),
        Command::Membership(a) => cmd_membership(a, out),
    }
}

fn load_config(path: Option<&Path>) -> Result<VerifyConfig, Failure> {
    let Some(path) = path else {
        return Ok(VerifyConfig::default());
    };
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("invalid config {}: {e}", path.display())))
}

fn emit<T: Serialize>(
    doc: &T,
    opts: &OutputArgs,
    out: &mut dyn Write,
    table: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(doc).map_err(|e| Failure::Runtime(e.to_string()))?;
    if let Some(path) = &opts.output {
        fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))?;
    }
    let res = if opts.json { writeln!(out, "{text}") } else { table(out) };
    res.map_err(|e| Failure::Runtime(e.to_string()))
}

fn mark(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<bool, Failure> {
    let mut cfg = load_config(a.config.as_deref())?;
    if let Some(n) = a.order {
        cfg.order = n;
    }
    if let Some(n) = a.samples {
        cfg.membership_samples = n;
    }
    if let Some(n) = a.oracle_samples {
        cfg.y_samples = n;
    }
    a.grid.apply(&mut cfg.search);
    let report = run_suite(&cfg)?;
    emit(&report, &a.out, out, |w| {
        writeln!(w, "{:<44} {:>16} {:>16} {:>9}  result", "check", "expected", "observed", "tol")?;
        for crit in &report.criteria {
            writeln!(w, "[{}] {}: {}", crit.id, crit.title, mark(crit.passed()))?;
            for c in &crit.checks {
                writeln!(
                    w,
                    "  {:<42} {:>16.10} {:>16.10} {:>9.1e}  {}",
                    c.id,
                    c.expected,
                    c.observed,
                    c.tolerance,
                    mark(c.passed)
                )?;
            }
            for o in &crit.observations {
                writeln!(w, "  note: {o}")?;
            }
        }
        writeln!(w, "overall: {} ({:.1}s)", mark(report.passed), report.runtime_seconds)
    })?;
    Ok(report.passed)
}

fn cmd_search(a: SearchArgs, out: &mut dyn Write) -> Result<bool, Failure> {
    let mut cfg = load_config(a.config.as_deref())?.search;
    a.grid.apply(&mut cfg);
    cfg.tau1_range = (a.tau1_min, a.tau1_max);
    let rep = global_search(a.class, &cfg)?;
    emit(&rep, &a.out, out, |w| {
        writeln!(w, "class              {}", rep.class)?;
        writeln!(w, "sup_found          {:.12}", rep.sup_found)?;
        writeln!(w, "theoretical_bound  {:.12}", rep.theoretical_bound)?;
        writeln!(w, "gap                {:.3e}", rep.gap)?;
        writeln!(w, "argmax tau1        {:.9}", rep.argmax.tau1())?;
        let t2 = rep.argmax.tau2();
        writeln!(w, "argmax tau2        {:.9}{:+.9}i", t2.re, t2.im)?;
        writeln!(w, "branch             {}", rep.branch_trace)?;
        writeln!(w, "evaluations        {}", rep.grid_stats.evaluations)?;
        writeln!(w, "within_bound       {}", mark(rep.within_bound))
    })?;
    Ok(rep.within_bound)
}

fn named_series(f: NamedFunction, order: usize) -> crate::Result<TruncatedSeries> {
    Ok(match f {
        NamedFunction::G => extremal_g(order)?,
        NamedFunction::H0 => extremal_h(order)?.0,
        NamedFunction::H => extremal_h(order)?.1,
        NamedFunction::Q => q_series(order),
        NamedFunction::Koebe => koebe(order),
        NamedFunction::Boundary => convex_boundary_extremal(order)?,
    })
}

/// Known leading coefficients, indexed from 0.
fn stated_values(f: NamedFunction) -> Vec<f64> {
    let a3h = 69.0_f64.sqrt() / (12.0 * 17.0_f64.sqrt());
    match f {
        NamedFunction::G => vec![0.0, 1.0, 0.0, 0.5, 0.0, 0.25],
        NamedFunction::H0 => vec![0.0, 1.0, 0.0, 3.0 * a3h],
        NamedFunction::H => vec![0.0, 1.0, 0.0, a3h, 0.0],
        NamedFunction::Q => vec![1.0, 1.0, 0.5, 0.0, -0.125],
        NamedFunction::Koebe => (0..=8).map(f64::from).collect(),
        NamedFunction::Boundary => vec![0.0, 1.0],
    }
}

#[derive(Serialize)]
struct CoeffRow {
    index: usize,
    re: f64,
    im: f64,
    stated: Option<f64>,
}

fn cmd_series(a: SeriesArgs, out: &mut dyn Write) -> Result<bool, Failure> {
    if a.order < 2 {
        return Err(Failure::Usage("series order must be at least 2".into()));
    }
    let f = named_series(a.function, a.order.max(DEFAULT_ORDER))?;
    let stated = stated_values(a.function);
    let first = if a.function == NamedFunction::Q { 0 } else { 2 };
    let rows: Vec<CoeffRow> = (first..=a.order)
        .map(|k| {
            let c = f.get(k).unwrap_or_default();
            CoeffRow { index: k, re: c.re, im: c.im, stated: stated.get(k).copied() }
        })
        .collect();
    let doc = json!({ "function": format!("{:?}", a.function).to_lowercase(), "coefficients": rows });
    emit(&doc, &a.out, out, |w| {
        writeln!(w, "{:>4} {:>20} {:>20}", "n", "observed", "stated")?;
        for r in &rows {
            let stated = r.stated.map_or_else(|| "-".to_string(), |s| format!("{s:.12}"));
            writeln!(w, "{:>4} {:>20.12} {:>20}", r.index, r.re, stated)?;
        }
        Ok(())
    })?;
    Ok(true)
}

fn cmd_ymax(a: YmaxArgs, out: &mut dyn Write) -> Result<bool, Failure> {
    if !(a.a.is_finite() && a.b.is_finite() && a.c.is_finite()) {
        return Err(Failure::Usage("A, B and C must be finite".into()));
    }
    let args = YArgs::new(a.a, a.b, a.c);
    let closed = y_closed(&args);
    let oracle = if a.oracle {
        Some(y_oracle(&args, crate::bound::DEFAULT_ORACLE_RADIAL, crate::bound::DEFAULT_ORACLE_ANGULAR)?)
    } else {
        None
    };
    let discrepancy = oracle.map(|o| (o - closed.value).abs());
    let doc = json!({
        "args": args,
        "value": closed.value,
        "branch": closed.branch,
        "oracle": oracle,
        "discrepancy": discrepancy,
    });
    emit(&doc, &a.out, out, |w| {
        writeln!(w, "Y({}, {}, {}) = {:.10}", a.a, a.b, a.c, closed.value)?;
        writeln!(w, "branch       {}", closed.branch)?;
        if let (Some(o), Some(d)) = (oracle, discrepancy) {
            writeln!(w, "oracle       {o:.10}")?;
            writeln!(w, "discrepancy  {d:.3e}")?;
        }
        Ok(())
    })?;
    Ok(true)
}

fn cmd_membership(a: MembershipArgs, out: &mut dyn Write) -> Result<bool, Failure> {
    if let Some(r) = a.radius.iter().find(|&&r| !(0.0..=MAX_SAMPLING_RADIUS).contains(&r)) {
        return Err(Failure::Usage(format!(
            "radius {r} exceeds {MAX_SAMPLING_RADIUS}: beyond it the truncated series tail is not controlled"
        )));
    }
    let f = named_series(a.function, a.order.max(6))?;
    let rep = membership_check(&f, a.class, &a.radius, a.samples, a.tol)?;
    emit(&rep, &a.out, out, |w| {
        writeln!(w, "class              {}", rep.class)?;
        writeln!(w, "radii              {:?}", rep.radii)?;
        writeln!(w, "worst margin       {:.9}", rep.worst_margin)?;
        let z = rep.worst_location;
        writeln!(w, "worst location     {:.6}{:+.6}i", z.re, z.im)?;
        writeln!(
            w,
            "confidence radius  {:.4}{}",
            rep.confidence_radius,
            if rep.reduced_confidence { " (reduced)" } else { "" }
        )?;
        writeln!(w, "result             {}", mark(rep.passed))
    })?;
    Ok(rep.passed)
}
