//! Command-line driver.
//!
//! Every command is deterministic. Machine formats (`tsv`, `csv`) print a
//! header line and one row per record with at least 17 significant digits;
//! the `human` format rounds for reading and appends summary notes. Notes
//! always go to standard error as well, so machine output stays a clean
//! table. Exit status is 0 when every checked inequality holds, 1 when one
//! fails, and 2 on invalid input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{constants_for, Positivity};
use crate::character::{kappa, make_character};
use crate::divisor_sum::{evaluate, exhaustive_check, BoundKind, WorkLimits};
use crate::error::{Error, Result};
use crate::quadratic::{make_poly, QuadraticPoly};
use crate::rho::RhoContext;
use crate::table::{example_table, UNIT_GENERAL_PRINTED};

#[derive(Debug, Parser)]
#[command(name = "quadtau", version, about = "Divisor sums of n^2 + 2bn + c: explicit bounds and exact values")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,

    /// Memory ceiling for sieve runs, in MiB.
    #[arg(long, default_value_t = 2048, global = true)]
    pub work_limit_mb: u64,

    /// Also write standard output to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Csv,
    Human,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundArg {
    Theorem1,
    Sqrtf,
    Theorem2,
    Refined,
}

impl From<BoundArg> for BoundKind {
    fn from(b: BoundArg) -> Self {
        match b {
            BoundArg::Theorem1 => BoundKind::Theorem1,
            BoundArg::Sqrtf => BoundKind::SqrtF,
            BoundArg::Theorem2 => BoundKind::Theorem2,
            BoundArg::Refined => BoundKind::Refined,
        }
    }
}

/// A polynomial given either as `--b/--c` or as `--poly "n^2+10n+27"`.
#[derive(Debug, Clone, Args)]
pub struct PolyArgs {
    /// Half the linear coefficient.
    #[arg(long, allow_negative_numbers = true, requires = "c", conflicts_with = "poly")]
    pub b: Option<i64>,

    /// Constant term.
    #[arg(long, allow_negative_numbers = true, requires = "b", conflicts_with = "poly")]
    pub c: Option<i64>,

    /// The polynomial written out, e.g. "n^2+10n-26".
    #[arg(long)]
    pub poly: Option<QuadraticPoly>,
}

impl PolyArgs {
    pub fn resolve(&self) -> Result<QuadraticPoly> {
        match (self.b, self.c, self.poly) {
            (_, _, Some(p)) => Ok(p),
            (Some(b), Some(c), None) => Ok(make_poly(b, c)),
            _ => Err(Error::Parse("give either --b and --c, or --poly".into())),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print κ, ξ, A and (C1, C2, C3) for one polynomial.
    Constants {
        #[command(flatten)]
        poly: PolyArgs,
        /// Compute constants even if f is not positive and non-decreasing.
        #[arg(long)]
        allow_nonpositive: bool,
    },
    /// Recompute the five example rows.
    Table {
        /// N for the empirical S(N) / (N log N) column; 0 disables it.
        #[arg(long, default_value_t = 100_000)]
        empirical_n: u64,
    },
    /// Check a bound at every N <= n-max; print decade checkpoints.
    Verify {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        n_max: u64,
        #[arg(long, value_enum, default_value_t = BoundArg::Theorem1)]
        bound: BoundArg,
    },
    /// Character sums X(N) and Σ χ(m)/m against κ and log κ + 2.
    Charsum {
        #[arg(long, allow_negative_numbers = true)]
        delta: i64,
        #[arg(long)]
        n_max: u64,
    },
    /// Compare the three evaluations of ρ(d) for d <= d-max.
    RhoCheck {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        d_max: u64,
    },
    /// Verify a bound at a list of N, e.g. --ns 10,1e3,10^5.
    Sweep {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, value_parser = parse_n_list_arg)]
        ns: NList,
        #[arg(long, value_enum, default_value_t = BoundArg::Theorem1)]
        bound: BoundArg,
    },
}

/// Parsed `--ns` list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NList(pub Vec<u64>);

fn parse_n_list_arg(s: &str) -> std::result::Result<NList, String> {
    parse_n_list(s).map(NList).map_err(|e| e.to_string())
}

/// Parses a comma-separated list of positive integers. Each entry may be
/// plain digits (`_` separators allowed), `MeK` for `M × 10^K`, or `10^K`.
pub fn parse_n_list(s: &str) -> Result<Vec<u64>> {
    let out = s
        .split(',')
        .map(|tok| parse_count(tok.trim()))
        .collect::<Result<Vec<_>>>()?;
    if out.is_empty() {
        return Err(Error::Parse("empty list".into()));
    }
    Ok(out)
}

fn parse_count(tok: &str) -> Result<u64> {
    let bad = || Error::Parse(format!("invalid count {tok:?}"));
    let digits = |t: &str| -> Result<u64> {
        let cleaned: String = t.chars().filter(|&c| c != '_').collect();
        if cleaned.is_empty() || !cleaned.chars().all(|c| c.is_ascii_digit()) || t.starts_with('_') {
            return Err(bad());
        }
        cleaned.parse().map_err(|_| bad())
    };
    let value = if let Some((m, k)) = tok.split_once(['e', 'E']) {
        let k = u32::try_from(digits(k)?).map_err(|_| bad())?;
        10u64.checked_pow(k).and_then(|p| p.checked_mul(digits(m).ok()?)).ok_or_else(bad)?
    } else if let Some((base, k)) = tok.split_once('^') {
        if base != "10" {
            return Err(bad());
        }
        let k = u32::try_from(digits(k)?).map_err(|_| bad())?;
        10u64.checked_pow(k).ok_or_else(bad)?
    } else {
        digits(tok)?
    };
    if value == 0 {
        return Err(Error::Parse(format!("count must be positive, got {tok:?}")));
    }
    Ok(value)
}

/// A table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i128),
    /// Rounded in human output, full precision otherwise.
    Float(f64),
    /// Already formatted; printed as is everywhere.
    Text(String),
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

macro_rules! cell_from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Cell {
            fn from(v: $t) -> Self {
                Cell::Int(v as i128)
            }
        }
    )*};
}
cell_from_int!(i64, u64, i128);

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or_else(|| Cell::Text("-".into()), Cell::Float)
    }
}

/// Fixed-point rendering with `sig` significant digits.
pub fn format_significant(v: f64, sig: u32) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - magnitude).clamp(0, 40) as usize;
    let s = format!("{v:.decimals$}");
    if s.starts_with("-0") && s.trim_start_matches(['-', '0', '.']).is_empty() {
        s[1..].to_string()
    } else {
        s
    }
}

/// Table-style rounding: two decimals below 100, integers from 100 up.
pub fn format_human(v: f64) -> String {
    if v.abs() < 100.0 {
        format!("{v:.2}")
    } else {
        format!("{v:.0}")
    }
}

/// Tabular output plus free-form notes.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
}

impl Report {
    fn new(headers: &[&'static str]) -> Self {
        Report { headers: headers.to_vec(), ..Default::default() }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    fn cell_text(cell: &Cell, format: Format) -> String {
        match (cell, format) {
            (Cell::Int(v), _) => v.to_string(),
            (Cell::Float(v), Format::Human) => format_human(*v),
            (Cell::Float(v), _) => format_significant(*v, 17),
            (Cell::Text(s), _) => s.clone(),
        }
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>> {
        let texts: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| Self::cell_text(c, format)).collect())
            .collect();
        match format {
            Format::Tsv | Format::Csv => {
                let delimiter = if format == Format::Tsv { b'\t' } else { b',' };
                let mut w = csv::WriterBuilder::new()
                    .delimiter(delimiter)
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(Vec::new());
                let io = |e: csv::Error| Error::Parse(format!("output: {e}"));
                w.write_record(&self.headers).map_err(io)?;
                for row in &texts {
                    w.write_record(row).map_err(io)?;
                }
                w.into_inner().map_err(|e| Error::Parse(format!("output: {e}")))
            }
            Format::Human => {
                let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
                for row in &texts {
                    for (w, t) in widths.iter_mut().zip(row) {
                        *w = (*w).max(t.chars().count());
                    }
                }
                let line = |cells: Vec<&str>| {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, &w)| format!("{c:>w$}"))
                        .collect();
                    padded.join("  ").trim_end().to_string() + "\n"
                };
                let mut out = line(self.headers.to_vec());
                for row in &texts {
                    out += &line(row.iter().map(String::as_str).collect());
                }
                for note in &self.notes {
                    out += note;
                    out.push('\n');
                }
                Ok(out.into_bytes())
            }
        }
    }
}

/// Result of one command: the report and whether all checks held.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub passed: bool,
}

fn decade_checkpoints(from: u64, to: u64, extra: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = std::iter::successors(Some(1u64), |&p| p.checked_mul(10))
        .take_while(|&p| p <= to)
        .filter(|&p| p >= from)
        .collect();
    out.push(to);
    out.extend(extra.iter().copied().filter(|&n| n >= from && n <= to));
    out.sort_unstable();
    out.dedup();
    out
}

fn cmd_constants(poly: QuadraticPoly, allow_nonpositive: bool) -> Result<Outcome> {
    let policy = if allow_nonpositive { Positivity::Waive } else { Positivity::Require };
    let bc = constants_for(&poly, policy)?;
    let mut report = Report::new(&[
        "f", "delta", "kappa", "xi", "A", "c1", "c2", "c3", "kappa_full", "xi_full", "c1_full",
        "c2_full", "c3_full",
    ]);
    let sig4 = |v: f64| Cell::Text(format_significant(v, 4));
    report.push(vec![
        poly.to_string().into(),
        poly.delta().into(),
        sig4(bc.kappa),
        sig4(bc.xi),
        bc.a_shift.into(),
        sig4(bc.c1),
        sig4(bc.c2),
        sig4(bc.c3),
        Cell::Text(format_significant(bc.kappa, 17)),
        Cell::Text(format_significant(bc.xi, 17)),
        Cell::Text(format_significant(bc.c1, 17)),
        Cell::Text(format_significant(bc.c2, 17)),
        Cell::Text(format_significant(bc.c3, 17)),
    ]);
    if !poly.check_hypotheses().positive_nondecreasing {
        report.notes.push(format!(
            "note: {poly} is not positive and non-decreasing on n >= 1; the bound is not claimed for it"
        ));
    }
    Ok(Outcome { report, passed: true })
}

fn cmd_table(empirical_n: u64, limits: &WorkLimits) -> Result<Outcome> {
    let empirical = (empirical_n >= 2).then_some(empirical_n);
    let rows = example_table(empirical, limits)?;
    let ratio_header: &'static str = "empirical_ratio";
    let mut report = Report::new(&[
        "f", "delta", "lambda_printed", ratio_header, "c1", "c2", "c3", "c1_printed",
        "c2_printed", "c3_printed", "max_rel_dev", "note",
    ]);
    let mut passed = true;
    for row in &rows {
        let [p1, p2, p3] = row.published.constants;
        let shown = |p: crate::table::Printed| Cell::Text(format!("{:.*}", p.decimals as usize, p.value));
        report.push(vec![
            row.poly.to_string().into(),
            row.poly.delta().into(),
            row.published
                .lambda
                .map_or_else(|| Cell::Text("-".into()), |l| Cell::Text(l.to_string())),
            row.empirical_ratio.into(),
            row.computed[0].into(),
            row.computed[1].into(),
            row.computed[2].into(),
            shown(p1),
            shown(p2),
            shown(p3),
            row.max_relative_deviation().into(),
            row.note.clone().unwrap_or_else(|| "-".into()).into(),
        ]);
        passed &= row.reproduces(0.02);
    }
    if let Some(n) = empirical {
        report.notes.push(format!(
            "empirical_ratio is S(N) / (N log N) at N = {n}; it is not an asymptotic constant"
        ));
    }
    let unit = constants_for(&make_poly(0, 1), Positivity::Require)?;
    report.notes.push(format!(
        "general constants for n^2+1: ({}, {}, {}) vs printed ({}, {}, {})",
        format_significant(unit.c1, 4),
        format_significant(unit.c2, 4),
        format_significant(unit.c3, 4),
        UNIT_GENERAL_PRINTED[0].value,
        UNIT_GENERAL_PRINTED[1].value,
        UNIT_GENERAL_PRINTED[2].value,
    ));
    Ok(Outcome { report, passed })
}

const RECORD_HEADERS: [&str; 6] = ["n", "exact", "bound", "margin", "ratio", "holds"];

fn record_row(r: &crate::divisor_sum::VerificationRecord) -> Vec<Cell> {
    vec![
        r.n.into(),
        r.exact.into(),
        r.bound.into(),
        r.margin.into(),
        r.ratio.into(),
        (if r.holds() { "yes" } else { "no" }).into(),
    ]
}

fn cmd_verify(poly: QuadraticPoly, n_max: u64, kind: BoundKind, limits: &WorkLimits) -> Result<Outcome> {
    let summary = exhaustive_check(&poly, n_max, kind, limits)?;
    let checkpoints = decade_checkpoints(summary.from, n_max, &[summary.tightest_relative.n]);
    let records = evaluate(&poly, &checkpoints, kind, limits)?;
    let mut report = Report::new(&RECORD_HEADERS);
    for r in &records {
        report.push(record_row(r));
    }
    report.notes.push(format!(
        "checked {kind} for {poly} at every N in {}..={}: {} violations; smallest relative margin {} at N = {}",
        summary.from,
        summary.to,
        summary.violations,
        format_significant(summary.tightest_relative.margin / summary.tightest_relative.bound, 4),
        summary.tightest_relative.n,
    ));
    if let Some(v) = summary.first_violation {
        report.notes.push(format!("first violation at N = {}: exact {} >= bound {}", v.n, v.exact, v.bound));
    }
    Ok(Outcome { report, passed: summary.holds() })
}

fn cmd_sweep(poly: QuadraticPoly, ns: &[u64], kind: BoundKind, limits: &WorkLimits) -> Result<Outcome> {
    let records = evaluate(&poly, ns, kind, limits)?;
    let mut report = Report::new(&RECORD_HEADERS);
    for r in &records {
        report.push(record_row(r));
    }
    let failures = records.iter().filter(|r| !r.holds()).count();
    report.notes.push(format!("{failures} of {} margins non-positive", records.len()));
    Ok(Outcome { report, passed: failures == 0 })
}

fn cmd_charsum(delta: i64, n_max: u64, limits: &WorkLimits) -> Result<Outcome> {
    if n_max == 0 {
        return Err(Error::ZeroN);
    }
    limits.check_n(n_max)?;
    limits.check_bytes(n_max.saturating_mul(8))?;
    let ch = make_character(delta)?;
    let k = kappa(i128::from(delta));
    let cap = k.ln() + 2.0;
    let (max_abs, argmax) = ch.max_abs_partial_sum(n_max);
    let harmonic = ch.char_harmonic_prefix(n_max);
    let (h_arg, h_max) = harmonic
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, &v)| if v > best.1 { (i + 1, v) } else { best });

    let mut report = Report::new(&[
        "n", "x_n", "kappa", "slack", "harmonic_sum", "harmonic_cap", "harmonic_slack",
    ]);
    for n in decade_checkpoints(1, n_max, &[argmax, h_arg as u64]) {
        let x = ch.partial_sum(n);
        let h = harmonic[n as usize - 1];
        report.push(vec![
            n.into(),
            x.into(),
            k.into(),
            (k - x.unsigned_abs() as f64).into(),
            h.into(),
            cap.into(),
            (cap - h).into(),
        ]);
    }
    let x_ok = (max_abs as f64) < k;
    let h_ok = h_max < cap;
    report.notes.push(format!(
        "max|X| = {max_abs} at N = {argmax} {} kappa = {} (conductor {})",
        if x_ok { "<" } else { ">=" },
        format_significant(k, 4),
        ch.conductor(),
    ));
    report.notes.push(format!(
        "max sum chi(m)/m = {} at x = {h_arg} {} log kappa + 2 = {}",
        format_significant(h_max, 6),
        if h_ok { "<" } else { ">=" },
        format_significant(cap, 6),
    ));
    Ok(Outcome { report, passed: x_ok && h_ok })
}

/// Largest `d_max` accepted by `rho-check`; brute force costs O(d_max²).
pub const RHO_CHECK_MAX_D: u64 = 200_000;

fn cmd_rho_check(poly: QuadraticPoly, d_max: u64) -> Result<Outcome> {
    if d_max == 0 {
        return Err(Error::ZeroN);
    }
    if d_max > RHO_CHECK_MAX_D {
        return Err(Error::WorkLimit(format!("d-max {d_max} exceeds {RHO_CHECK_MAX_D}")));
    }
    let ctx = RhoContext::new(poly, d_max)?;
    let mismatches = ctx.mismatches()?;
    let mut report = Report::new(&["f", "delta", "d_max", "mismatches", "first_mismatch"]);
    report.push(vec![
        poly.to_string().into(),
        poly.delta().into(),
        d_max.into(),
        (mismatches.len() as u64).into(),
        mismatches.first().map_or_else(
            || Cell::Text("-".into()),
            |t| Cell::Text(format!("d={} brute={} closed={} convolved={}", t.d, t.brute, t.closed, t.convolved)),
        ),
    ]);
    report.notes.push(format!("{} mismatches / {d_max}", mismatches.len()));
    Ok(Outcome { report, passed: mismatches.is_empty() })
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let limits = WorkLimits::default().with_memory_mb(cli.work_limit_mb);
    match &cli.command {
        Command::Constants { poly, allow_nonpositive } => cmd_constants(poly.resolve()?, *allow_nonpositive),
        Command::Table { empirical_n } => cmd_table(*empirical_n, &limits),
        Command::Verify { poly, n_max, bound } => cmd_verify(poly.resolve()?, *n_max, (*bound).into(), &limits),
        Command::Charsum { delta, n_max } => cmd_charsum(*delta, *n_max, &limits),
        Command::RhoCheck { poly, d_max } => cmd_rho_check(poly.resolve()?, *d_max),
        Command::Sweep { poly, ns, bound } => cmd_sweep(poly.resolve()?, &ns.0, (*bound).into(), &limits),
    }
}

/// Parses `args` (program name first), runs, writes output, and returns the
/// exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let bytes = match outcome.report.render(cli.format) {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    if stdout.write_all(&bytes).is_err() {
        return 2;
    }
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &bytes) {
            let _ = writeln!(stderr, "error: writing {}: {e}", path.display());
            return 2;
        }
    }
    if cli.format != Format::Human {
        for note in &outcome.report.notes {
            let _ = writeln!(stderr, "{note}");
        }
    }
    if outcome.passed {
        0
    } else {
        1
    }
}
