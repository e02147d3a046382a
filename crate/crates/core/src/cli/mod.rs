//! The `hforge` command line: `list`, `verify`, `dsl`, `eval`, `bench`.
//!
//! Exit codes: 0 when every row is in good standing, 1 when an identity
//! fails, 2 for usage, parse and I/O errors.

mod render;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::catalog::{
    catalog, check_cells, cells_for, lookup, Cell, IdentityEntry, IdentityId, Params, Report, Variant, VerifyOptions,
};
use crate::dsl::{self, Diagnostic, Span};
use crate::exact::Rational;
use crate::oracle::{self, OracleMode};
use crate::special::{HarmonicCache, Harmonics};

pub use render::{render_report, ListRow};

#[derive(Debug, Parser)]
#[command(name = "hforge", version, about = "Exact checks of finite harmonic-number and binomial identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the catalog.
    List(ListArgs),
    /// Verify catalog identities over a range of n.
    Verify(VerifyArgs),
    /// Check every identity in a corpus file.
    Dsl(DslArgs),
    /// Evaluate one expression.
    Eval(EvalArgs),
    /// Time the symbolic check per entry and n.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleArg {
    Off,
    Sampling,
    IntegerS,
    Both,
}

impl From<OracleArg> for OracleMode {
    fn from(o: OracleArg) -> Self {
        match o {
            OracleArg::Off => OracleMode::Off,
            OracleArg::Sampling => OracleMode::Sampling,
            OracleArg::IntegerS => OracleMode::IntegerS,
            OracleArg::Both => OracleMode::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Printed,
    Corrected,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Printed => Variant::Printed,
            VariantArg::Corrected => Variant::Corrected,
        }
    }
}

#[derive(Debug, Args)]
pub struct ListArgs {
    /// Only these ids (repeat or comma-separate).
    #[arg(long, value_delimiter = ',')]
    pub id: Vec<IdentityId>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct Range {
    #[arg(long, default_value_t = 1)]
    pub n_min: u64,
    #[arg(long, default_value_t = 10)]
    pub n_max: u64,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, env = "HFORGE_WORKERS")]
    pub workers: Option<usize>,
    /// Leave timings out so reports are reproducible byte for byte.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Ids to verify (repeat or comma-separate).
    #[arg(long, value_delimiter = ',', conflicts_with = "all")]
    pub id: Vec<IdentityId>,
    /// Verify the whole catalog.
    #[arg(long)]
    pub all: bool,
    #[command(flatten)]
    pub range: Range,
    /// Values of m for ID-13 (ID-14 takes those among 2 and 3).
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<u64>,
    /// Reading of the right-hand side for entries with a known misprint.
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    #[arg(long, value_enum, default_value_t = OracleArg::Off)]
    pub oracle: OracleArg,
    /// Recompute harmonic numbers instead of using the shared cache.
    #[arg(long)]
    pub no_memo: bool,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct DslArgs {
    /// Corpus file: one `NAME : LHS == RHS` per line.
    pub path: PathBuf,
    #[command(flatten)]
    pub range: Range,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub expr: String,
    #[arg(long, default_value_t = 1)]
    pub n: u64,
    /// Substitute a rational value for s.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<Rational>,
    /// Substitute a rational value for x.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Memo {
    On,
    Off,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Ids to time; the whole catalog when omitted.
    #[arg(long, value_delimiter = ',')]
    pub id: Vec<IdentityId>,
    #[command(flatten)]
    pub range: Range,
    /// Worker counts to sweep.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub workers: Vec<usize>,
    /// Harmonic memoization settings to sweep.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "on")]
    pub memo: Vec<Memo>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// The effective configuration, echoed into JSON reports.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub n_min: u64,
    pub n_max: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ids: Option<Vec<IdentityId>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub m: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    pub format: Format,
    pub workers: usize,
    pub oracle: OracleMode,
}

impl RunConfig {
    fn validate(&self) -> anyhow::Result<()> {
        if self.n_min < 1 {
            bail!("--n-min must be at least 1");
        }
        if self.n_min > self.n_max {
            bail!("--n-min {} exceeds --n-max {}", self.n_min, self.n_max);
        }
        if self.workers < 1 {
            bail!("--workers must be at least 1");
        }
        Ok(())
    }
}

/// A failure that maps to a specific exit code.
#[derive(Debug)]
enum Failure {
    Usage(anyhow::Error),
    Diagnostics(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn default_workers(w: Option<usize>) -> usize {
    w.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn emit(text: &str, path: Option<&PathBuf>) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Diagnostics(text)) => {
            eprint!("{text}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(true)` when every row is in good standing.
fn run(cmd: Command) -> Result<bool, Failure> {
    match cmd {
        Command::List(a) => cmd_list(a).map(|_| true),
        Command::Verify(a) => cmd_verify(a),
        Command::Dsl(a) => cmd_dsl(a),
        Command::Eval(a) => cmd_eval(a).map(|_| true),
        Command::Bench(a) => cmd_bench(a).map(|_| true),
    }
}

fn selected(ids: &[IdentityId]) -> Vec<&'static IdentityEntry> {
    if ids.is_empty() {
        catalog().iter().collect()
    } else {
        ids.iter().map(|&id| lookup(id)).collect()
    }
}

fn cmd_list(a: ListArgs) -> Result<(), Failure> {
    let rows: Vec<ListRow> = selected(&a.id).into_iter().map(ListRow::from).collect();
    let text = match a.format {
        Format::Json => serde_json::to_string_pretty(&rows).map_err(anyhow::Error::from)? + "\n",
        Format::Csv => render::list_csv(&rows)?,
        Format::Text => rows.iter().map(|r| r.to_string() + "\n").collect(),
    };
    emit(&text, None)?;
    Ok(())
}

/// Parameter grid for one entry under the `--m` and `--variant` overrides.
pub fn grid_for(entry: &IdentityEntry, m: &[u64], variant: Option<Variant>) -> Vec<Params> {
    let takes = |name| entry.extra_params.iter().any(|p| p.name == name);
    let mut grid = entry.default_grid();
    if takes("m") && !m.is_empty() {
        let ms: Vec<Params> = m
            .iter()
            .map(|&m| Params::m(m))
            .filter(|p| entry.id == IdentityId::Id13 || entry.validate(entry.n_min, p).is_ok())
            .collect();
        if !ms.is_empty() {
            grid = ms;
        }
    }
    if let Some(v) = variant {
        grid = grid
            .into_iter()
            .map(|p| {
                let q = p.clone().with_variant(v);
                if entry.validate(entry.n_min, &q).is_ok() {
                    q
                } else {
                    p
                }
            })
            .collect();
        grid.dedup();
    }
    grid
}

fn cmd_verify(a: VerifyArgs) -> Result<bool, Failure> {
    if !a.all && a.id.is_empty() {
        return Err(anyhow::anyhow!("pass --all or at least one --id").into());
    }
    let variant = a.variant.map(Variant::from);
    let config = RunConfig {
        command: "verify",
        n_min: a.range.n_min,
        n_max: a.range.n_max,
        ids: (!a.all).then(|| a.id.clone()),
        m: a.m.clone(),
        variant,
        format: a.out.format,
        workers: default_workers(a.out.workers),
        oracle: a.oracle.into(),
    };
    config.validate()?;
    let opts = VerifyOptions { workers: config.workers, memo: !a.no_memo };
    let mut cells: Vec<Cell> = Vec::new();
    for entry in selected(if a.all { &[] } else { &a.id }) {
        let grid = grid_for(entry, &a.m, variant);
        let ns = config.n_min.max(entry.n_min)..=config.n_max;
        cells.extend(cells_for(entry, ns, &grid).map_err(anyhow::Error::from)?);
    }
    let report = check_cells(&cells, &opts);
    let report = oracle::annotate(report, config.oracle, config.workers).map_err(anyhow::Error::from)?;
    let text = render_report(&report, &config, !a.out.no_timing)?;
    emit(&text, a.out.output.as_ref())?;
    Ok(verdict(&report, variant == Some(Variant::Printed)))
}

/// Exit status of a report. Expected failures are tolerated unless the
/// printed reading was asked for explicitly.
fn verdict(report: &Report, strict: bool) -> bool {
    report.all_ok() && !(strict && report.rows.iter().any(|r| !r.passed))
}

fn render_diagnostics(diags: &[Diagnostic], origin: &str, source: &str) -> String {
    diags.iter().map(|d| d.render(origin, source)).collect()
}

fn cmd_dsl(a: DslArgs) -> Result<bool, Failure> {
    let text = fs::read_to_string(&a.path).with_context(|| format!("reading {}", a.path.display()))?;
    let origin = a.path.display().to_string();
    let config = RunConfig {
        command: "dsl",
        n_min: a.range.n_min,
        n_max: a.range.n_max,
        ids: None,
        m: Vec::new(),
        variant: None,
        format: a.out.format,
        workers: default_workers(a.out.workers),
        oracle: OracleMode::Off,
    };
    config.validate()?;
    let entries = dsl::parse_corpus(&text).map_err(|d| Failure::Diagnostics(render_diagnostics(&d, &origin, &text)))?;
    let opts = VerifyOptions { workers: config.workers, memo: true };
    let report = dsl::run_corpus(&entries, config.n_min..=config.n_max, &opts)
        .map_err(|d| Failure::Diagnostics(d.render(&origin, &text)))?;
    let out = render_report(&report, &config, !a.out.no_timing)?;
    emit(&out, a.out.output.as_ref())?;
    Ok(report.all_ok())
}

fn cmd_eval(a: EvalArgs) -> Result<(), Failure> {
    let src = a.expr.as_str();
    let fail = |d: Vec<Diagnostic>| Failure::Diagnostics(render_diagnostics(&d, "<expr>", src));
    let expr = dsl::compile_expr(src).map_err(fail)?;
    let mut value = dsl::eval(&expr, a.n).map_err(|e| fail(vec![e.into()]))?;
    let whole = Span::new(0, src.len());
    if let Some(x) = &a.x {
        value = value.subst_x(x).map_err(|e| fail(vec![Diagnostic::error(e.to_string(), whole)]))?;
    }
    if let Some(s) = &a.s {
        value = value.subst_s(s).map_err(|e| fail(vec![Diagnostic::error(e.to_string(), whole)]))?;
    }
    let shown = match value.as_rational() {
        Some(q) => q.to_string(),
        None => value.to_string(),
    };
    emit(&(shown + "\n"), None)?;
    Ok(())
}

/// One timed bench cell.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub id: IdentityId,
    pub n: u64,
    pub workers: usize,
    pub memo: bool,
    pub nanos: u128,
}

fn time_cells(cells: &[Cell], workers: usize, memo: bool) -> Vec<Duration> {
    let cache = HarmonicCache::new();
    let h = if memo { Harmonics::Cached(&cache) } else { Harmonics::Direct };
    crate::catalog::fan_out(cells, workers, |c| {
        let start = Instant::now();
        c.entry.check(c.n, &c.params, h).expect("cells are validated before scheduling");
        start.elapsed()
    })
}

fn cmd_bench(a: BenchArgs) -> Result<(), Failure> {
    if a.range.n_min < 1 || a.range.n_min > a.range.n_max {
        return Err(anyhow::anyhow!("need 1 <= --n-min <= --n-max").into());
    }
    if a.workers.iter().any(|&w| w == 0) {
        return Err(anyhow::anyhow!("--workers values must be at least 1").into());
    }
    let mut cells = Vec::new();
    for entry in selected(&a.id) {
        let grid = entry.default_grid();
        for n in a.range.n_min.max(entry.n_min)..=a.range.n_max {
            cells.push((entry, n, cells_for(entry, n..=n, &grid).map_err(anyhow::Error::from)?));
        }
    }
    let flat: Vec<Cell> = cells.iter().flat_map(|(_, _, c)| c.iter().cloned()).collect();
    let mut rows = Vec::new();
    for &workers in &a.workers {
        for &memo in &a.memo {
            let memo = memo == Memo::On;
            let times = time_cells(&flat, workers, memo);
            let mut it = times.into_iter();
            for (entry, n, group) in &cells {
                let nanos = it.by_ref().take(group.len()).map(|d| d.as_nanos()).sum();
                rows.push(BenchRow { id: entry.id, n: *n, workers, memo, nanos });
            }
        }
    }
    rows.sort_by_key(|r| (r.id, r.n, r.workers, !r.memo));
    let text = render::bench(&rows, a.format)?;
    emit(&text, a.output.as_ref())?;
    Ok(())
}
