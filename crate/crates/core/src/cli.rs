//! Command-line configuration, dispatch and the report types that only the
//! command line assembles.
//!
//! Reports are JSON documents with a `schema_version` field; see
//! `docs/schemas.md`. The `text` format is a lossy rendering of the same JSON.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::cyclotomic::{gcd_u64, CycNumber};
use crate::discovery;
use crate::error::{Error, Result};
use crate::qseries::{exp, QSeriesJson};
use crate::special::{
    compare_appell_eulerian, rank_coefficient_from_counts, rank_r, series_n, watson_defect, LevelParams,
    SeriesFunction,
};
use crate::theorem;
use crate::weil;

/// Version stamped into every JSON document the crate emits.
pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "MOCKTHETA_OUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "txt",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "mocktheta", version, about = "Exact verification and expansion of the mock theta functions H_c")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// write the report here instead of stdout (default directory: $MOCKTHETA_OUT_DIR)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct LevelArg {
    /// level c, coprime to 6
    #[arg(long)]
    pub c: u64,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check every transformation identity of the coefficients at level c.
    VerifyTheorem {
        #[command(flatten)]
        level: LevelArg,
        /// sweep every h in the S identities even for c > 7
        #[arg(long)]
        exhaustive: bool,
        /// off-support h sampled per (a, b) when not exhaustive
        #[arg(long, default_value_t = 48)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Evaluate the (12/·) character sum for every l mod 12c.
    Gauss {
        #[command(flatten)]
        level: LevelArg,
    },
    /// Check that sin(bkπ/c)/sin(π/c) is a unit, for prime powers c.
    Units {
        #[command(flatten)]
        level: LevelArg,
    },
    /// Check S² , S⁴ and (ST)³ on every basis vector.
    WeilRelations {
        #[command(flatten)]
        level: LevelArg,
    },
    /// Check the exponent grading of the assembled components of H_c.
    Grading {
        #[command(flatten)]
        level: LevelArg,
        /// integer window above each leading exponent
        #[arg(long, default_value_t = 5)]
        window: i64,
    },
    /// Export the coefficient table α_h(a,b), β_h(a,b).
    Table {
        #[command(flatten)]
        level: LevelArg,
    },
    /// Expand a named series below q^order.
    Expand {
        /// eulerian_m, rank_r, phi0, chi0, f0, appell_m (m), kernel_k (k), n, epsilon, holo_m, holo_n
        #[arg(long)]
        function: String,
        #[arg(long, default_value_t = 0)]
        a: u64,
        #[arg(long, default_value_t = 0)]
        b: u64,
        #[arg(long, default_value_t = 5)]
        c: u64,
        /// index of the kernel K_n
        #[arg(long, default_value_t = 0)]
        n: i64,
        /// truncation exponent; an integer or a fraction p/q
        #[arg(long, default_value = "20")]
        order: String,
    },
    /// Watson's identity, the rank/N identity, rank counts and the Appell/Eulerian comparison.
    Identities {
        #[arg(long, default_value_t = 100)]
        watson_order: i64,
        #[arg(long, default_value_t = 50)]
        rank_order: i64,
        #[arg(long, default_value_t = 20)]
        count_order: u32,
        #[arg(long, default_value_t = 10)]
        appell_order: i64,
    },
    /// Rebuild the coefficients numerically at a prime p and compare.
    Discover {
        #[arg(long)]
        p: u64,
        /// bound on the theorem vector's row residual
        #[arg(long, default_value_t = discovery::ROW_TOL)]
        tol: f64,
    },
}

/// A parsed and validated invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

/// Raised before any computation: the process exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn parse_order(s: &str) -> std::result::Result<crate::qseries::Exp, UsageError> {
    let bad = || UsageError(format!("order must be an integer or a fraction p/q, got `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?),
        None => (s.trim().parse().map_err(|_| bad())?, 1),
    };
    if d <= 0 {
        return Err(bad());
    }
    let e = exp(n, d);
    if e <= exp(0, 1) {
        return Err(UsageError(format!("order must be positive, got {s}")));
    }
    Ok(e)
}

fn check_c(c: u64) -> std::result::Result<(), UsageError> {
    if c == 0 || gcd_u64(c, 6) != 1 {
        return Err(UsageError(format!(
            "invalid level c = {c}: c must be a positive integer with gcd(c, 6) = 1"
        )));
    }
    Ok(())
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> std::result::Result<Self, UsageError> {
        let cfg = RunConfig { command: cli.command, format: cli.format, out: cli.out, threads: cli.threads };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> std::result::Result<(), UsageError> {
        match &self.command {
            Command::VerifyTheorem { level, .. }
            | Command::Gauss { level }
            | Command::Units { level }
            | Command::WeilRelations { level }
            | Command::Grading { level, .. }
            | Command::Table { level } => check_c(level.c)?,
            Command::Expand { function, c, order, .. } => {
                check_c(*c)?;
                SeriesFunction::parse(function).map_err(|e| UsageError(e.to_string()))?;
                parse_order(order)?;
            }
            Command::Identities { watson_order, rank_order, count_order, appell_order } => {
                if *watson_order <= 0 || *rank_order <= 0 || *count_order == 0 || *appell_order <= 0 {
                    return Err(UsageError("truncation orders must be positive".into()));
                }
            }
            Command::Discover { p, tol } => {
                if !(*tol > 0.0) {
                    return Err(UsageError(format!("tol must be positive, got {tol}")));
                }
                check_c(*p)?;
            }
        }
        if let Command::Grading { window, .. } = &self.command {
            if *window <= 0 {
                return Err(UsageError("window must be positive".into()));
            }
        }
        if self.format == Format::Csv && !matches!(self.command, Command::Expand { .. }) {
            return Err(UsageError("csv output is only available for `expand`".into()));
        }
        if self.threads == Some(0) {
            return Err(UsageError("threads must be at least 1".into()));
        }
        Ok(())
    }

    /// Default file name under $MOCKTHETA_OUT_DIR.
    pub fn stem(&self) -> String {
        match &self.command {
            Command::VerifyTheorem { level, exhaustive, .. } => {
                format!("verify-theorem-c{}{}", level.c, if *exhaustive { "-exhaustive" } else { "" })
            }
            Command::Gauss { level } => format!("gauss-c{}", level.c),
            Command::Units { level } => format!("units-c{}", level.c),
            Command::WeilRelations { level } => format!("weil-relations-c{}", level.c),
            Command::Grading { level, window } => format!("grading-c{}-w{window}", level.c),
            Command::Table { level } => format!("table-c{}", level.c),
            Command::Expand { function, a, b, c, n, order } => {
                let f = SeriesFunction::parse(function).map(|f| f.name()).unwrap_or("series");
                format!("expand-{f}-a{a}-b{b}-c{c}-n{n}-o{}", order.replace('/', "_"))
            }
            Command::Identities { .. } => "identities".into(),
            Command::Discover { p, .. } => format!("discover-p{p}"),
        }
    }
}

/// A finished command: the serialized artifact and whether every check passed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub passed: bool,
    pub body: String,
    pub summary: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeilReport {
    pub schema_version: u32,
    pub c: u64,
    pub relations: Vec<weil::RelationReport>,
    pub failures: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpandReport {
    pub schema_version: u32,
    pub function: String,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub n: i64,
    pub order: String,
    pub series: QSeriesJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub params: String,
    pub instances_checked: u64,
    pub passed: bool,
    /// first differing exponent or coefficient index, when a check fails
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentitiesReport {
    pub schema_version: u32,
    pub suites: Vec<SuiteResult>,
    pub failures: usize,
}

impl IdentitiesReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Truncation orders for [`identities_report`].
#[derive(Clone, Copy, Debug)]
pub struct IdentityOrders {
    pub watson: i64,
    pub rank: i64,
    pub counts: u32,
    pub appell: i64,
}

impl Default for IdentityOrders {
    fn default() -> Self {
        Self { watson: 100, rank: 50, counts: 20, appell: 10 }
    }
}

/// φ₀(−q) + χ₀(q) − 2F₀(q) through q^watson, 4 sin(πa/c)·N(a,0,c) = R(ζ_c^a)
/// through q^rank, R against rank counts through q^counts, and the
/// Appell–Lerch/Eulerian comparison through q^appell, for c ∈ {5, 7}.
pub fn identities_report(orders: IdentityOrders) -> Result<IdentitiesReport> {
    let mut suites = Vec::new();

    let defect = watson_defect(orders.watson + 1);
    suites.push(SuiteResult {
        suite: "watson".into(),
        params: format!("through q^{}", orders.watson),
        instances_checked: orders.watson as u64 + 1,
        passed: defect.is_zero(),
        detail: defect.min_exponent().map(|e| format!("nonzero at q^{e}")),
    });

    let jobs: Vec<(u64, u64)> = [5u64, 7].iter().flat_map(|&c| (1..c).map(move |a| (a, c))).collect();
    for &(a, c) in &jobs {
        let t = exp(orders.rank + 1, 1);
        let n = series_n(&LevelParams::new(c, a, 0)?, t)?;
        let lhs = n.scale(&CycNumber::sin_pi(a as i64, c).scale_int(4));
        let cmp = lhs.compare(&rank_r(a, c, t)?);
        let reaches = cmp.common_trunc.is_none_or(|ct| ct > exp(orders.rank, 1));
        suites.push(SuiteResult {
            suite: "rank_n".into(),
            params: format!("a = {a}, c = {c}, through q^{}", orders.rank),
            instances_checked: orders.rank as u64 + 1,
            passed: cmp.agrees() && reaches,
            detail: cmp.first_difference.map(|e| format!("differs at q^{e}")),
        });
    }

    for &(a, c) in &jobs {
        let r = rank_r(a, c, exp(orders.counts as i64 + 1, 1))?;
        let bad = (0..=orders.counts).find(|&n| r.coeff(exp(n as i64, 1)) != rank_coefficient_from_counts(a, c, n));
        suites.push(SuiteResult {
            suite: "rank_counts".into(),
            params: format!("a = {a}, c = {c}, n <= {}", orders.counts),
            instances_checked: orders.counts as u64 + 1,
            passed: bad.is_none(),
            detail: bad.map(|n| format!("differs at n = {n}")),
        });
    }

    for &(a, c) in &jobs {
        let cmp = compare_appell_eulerian(a, c, orders.appell + 1)?;
        suites.push(SuiteResult {
            suite: "appell_eulerian".into(),
            params: format!("a = {a}, c = {c}, through q^{}", orders.appell),
            instances_checked: orders.appell as u64 + 1,
            passed: cmp.agrees,
            detail: cmp.first_difference.map(|e| format!("differs at q^{e}")),
        });
    }

    let failures = suites.iter().filter(|s| !s.passed).count();
    Ok(IdentitiesReport { schema_version: SCHEMA_VERSION, suites, failures })
}

fn pass_word(ok: bool) -> &'static str {
    if ok { "pass" } else { "FAIL" }
}

fn json_outcome<T: Serialize>(report: &T, passed: bool, summary: String, format: Format) -> Result<Outcome> {
    let body = match format {
        Format::Text => render_text(&serde_json::to_value(report)?),
        _ => serde_json::to_string_pretty(report)? + "\n",
    };
    Ok(Outcome { passed, body, summary })
}

/// Runs one command to completion.
pub fn dispatch(cfg: &RunConfig) -> Result<Outcome> {
    let f = cfg.format;
    match &cfg.command {
        Command::VerifyTheorem { level, exhaustive, samples, seed } => {
            let opts = theorem::VerifyOptions { exhaustive: *exhaustive, samples: *samples, seed: *seed };
            let r = theorem::verify_theorem(level.c, opts)?;
            let checked: u64 = r.identities.iter().map(|i| i.instances_checked).sum();
            let s = format!("verify-theorem c = {}: {} ({checked} instances, {} failures)", level.c, pass_word(r.passed()), r.failures);
            json_outcome(&r, r.passed(), s, f)
        }
        Command::Gauss { level } => {
            let r = theorem::verify_gauss_lemma(level.c)?;
            let s = format!("gauss c = {}: {} ({} sums)", level.c, pass_word(r.passed()), r.instances_checked);
            json_outcome(&r, r.passed(), s, f)
        }
        Command::Units { level } => {
            let r = theorem::verify_units(level.c)?;
            let s = format!("units c = {}: {} ({} pairs)", level.c, pass_word(r.passed()), r.instances_checked);
            json_outcome(&r, r.passed(), s, f)
        }
        Command::WeilRelations { level } => {
            let relations = weil::check_all_relations(level.c)?;
            let failures = relations.iter().filter(|r| !r.passed()).count();
            let r = WeilReport { schema_version: SCHEMA_VERSION, c: level.c, relations, failures };
            let s = format!("weil-relations c = {}: {}", level.c, pass_word(failures == 0));
            json_outcome(&r, failures == 0, s, f)
        }
        Command::Grading { level, window } => {
            let table = theorem::build_table(level.c)?;
            let r = theorem::grading_check(&table, *window)?;
            let s = format!("grading c = {}: {} ({} exponents)", level.c, pass_word(r.passed()), r.terms_checked);
            json_outcome(&r, r.passed(), s, f)
        }
        Command::Table { level } => {
            let t = theorem::build_table(level.c)?;
            let s = format!("table c = {}: {} alpha, {} beta entries", level.c, t.len(theorem::Kind::Alpha), t.len(theorem::Kind::Beta));
            json_outcome(&t.to_json(), true, s, f)
        }
        Command::Expand { function, a, b, c, n, order } => {
            let func = SeriesFunction::parse(function)?;
            let o = parse_order(order).map_err(|e| Error::OutOfRange(e.0))?;
            let series = func.expand(*a, *b, *c, *n, o)?;
            let s = format!("expand {} (a = {a}, b = {b}, c = {c}): {} terms below q^{o}", func.name(), series.len());
            if f == Format::Csv {
                return Ok(Outcome { passed: true, body: series.to_csv(), summary: s });
            }
            let r = ExpandReport {
                schema_version: SCHEMA_VERSION,
                function: func.name().into(),
                a: *a,
                b: *b,
                c: *c,
                n: *n,
                order: o.to_string(),
                series: series.to_json(),
            };
            json_outcome(&r, true, s, f)
        }
        Command::Identities { watson_order, rank_order, count_order, appell_order } => {
            let r = identities_report(IdentityOrders {
                watson: *watson_order,
                rank: *rank_order,
                counts: *count_order,
                appell: *appell_order,
            })?;
            let s = format!("identities: {} ({} suites, {} failures)", pass_word(r.passed()), r.suites.len(), r.failures);
            json_outcome(&r, r.passed(), s, f)
        }
        Command::Discover { p, tol } => {
            let r = discovery::discover(*p, *tol)?;
            let s = format!(
                "discover p = {p}: {} (nullspace dim {}, theorem residual {:.1e}, membership {:.1e})",
                pass_word(r.passed()),
                r.nullspace_dim,
                r.theorem_residual,
                r.membership_residual
            );
            json_outcome(&r, r.passed(), s, f)
        }
    }
}

/// Indented `key: value` lines; arrays longer than a few items are elided.
pub fn render_text(v: &Value) -> String {
    fn go(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    match x {
                        Value::Object(_) => {
                            let _ = writeln!(out, "{pad}{k}:");
                            go(x, indent + 1, out);
                        }
                        Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                            let _ = writeln!(out, "{pad}{k}: [{} items]", items.len());
                            for (n, i) in items.iter().enumerate().take(8) {
                                let _ = writeln!(out, "{pad}  - [{n}]");
                                go(i, indent + 2, out);
                            }
                        }
                        _ => {
                            let _ = writeln!(out, "{pad}{k}: {}", scalar(x));
                        }
                    }
                }
            }
            other => {
                let _ = writeln!(out, "{pad}{}", scalar(other));
            }
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::Array(items) if items.len() > 6 => format!("[{} items]", items.len()),
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    let mut out = String::new();
    go(v, 0, &mut out);
    out
}

/// Resolves where the artifact goes: `--out`, else $MOCKTHETA_OUT_DIR, else stdout.
pub fn output_path(cfg: &RunConfig, env_dir: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = &cfg.out {
        return Some(p.clone());
    }
    env_dir.map(|d| d.join(format!("{}.{}", cfg.stem(), cfg.format.extension())))
}

/// Parses `args`, runs the command and returns the process exit status:
/// 0 when every check passed, 1 when any failed, 2 for usage errors and
/// 3 for runtime errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let cfg = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    if let Some(n) = cfg.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let outcome = match dispatch(&cfg) {
        Ok(o) => o,
        Err(e @ (Error::NotCoprimeToSix(_) | Error::NotAdmissiblePrime(_) | Error::UnknownFunction(_) | Error::OutOfRange(_) | Error::NotPrimePower(_))) => {
            eprintln!("error: {e}");
            return 2;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return 3;
        }
    };
    let env_dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    match output_path(&cfg, env_dir.as_deref()) {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                if let Err(e) = std::fs::create_dir_all(dir) {
                    eprintln!("error: {}: {e}", dir.display());
                    return 3;
                }
            }
            if let Err(e) = std::fs::write(&path, &outcome.body) {
                eprintln!("error: {}: {e}", path.display());
                return 3;
            }
            eprintln!("{} -> {}", outcome.summary, path.display());
        }
        None => {
            print!("{}", outcome.body);
            eprintln!("{}", outcome.summary);
        }
    }
    if outcome.passed { 0 } else { 1 }
}
