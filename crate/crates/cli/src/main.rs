//! Batch command-line surface over the twisted-identity toolkit:
//! enumeration, polynomial queries, matching enumeration, verification
//! suites, and Hasse diagram export. Outputs are deterministic given the
//! command line; exit codes are 0 on success, 1 on a verification
//! mismatch, 2 on usage or input errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use klv_core::interval::{Ground, IntervalPoset};
use klv_core::klv::{KlvContext, PolyKind};
use klv_core::perm::Perm;
use klv_core::spm;
use klv_core::twisted;
use klv_core::verify::{self, CheckSelector};

#[derive(Parser)]
#[command(
    name = "klv",
    version,
    about = "Bruhat order on twisted identities, special partial matchings, \
             and Kazhdan-Lusztig-Vogan polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the payload to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Cap on n; raise explicitly for larger (slow) windows.
    #[arg(long, global = true, default_value_t = 5)]
    max_n: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum SetChoice {
    #[default]
    Iota,
    Fpf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum ListFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindChoice {
    Q,
    R,
    P,
}

impl From<KindChoice> for PolyKind {
    fn from(k: KindChoice) -> PolyKind {
        match k {
            KindChoice::Q => PolyKind::Q,
            KindChoice::R => PolyKind::R,
            KindChoice::P => PolyKind::P,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum TableFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum GroundChoice {
    #[default]
    Iota,
    Twisted,
}

#[derive(Subcommand)]
enum Command {
    /// List the twisted identities or the fixed-point-free involutions.
    Enum {
        /// Half-window: permutations act on 2n points.
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        set: SetChoice,
        #[arg(long, value_enum, default_value_t)]
        format: ListFormat,
    },
    /// Print one Q-, R-, or P-polynomial, or a whole column below w.
    Poly {
        #[arg(long, value_enum)]
        kind: KindChoice,
        #[arg(long)]
        n: usize,
        /// Lower index, one-line notation, e.g. "1 2 3 4".
        #[arg(long)]
        u: Option<String>,
        /// Upper index, one-line notation.
        #[arg(long)]
        w: String,
        /// Emit every entry (v, w) for v <= w instead of a single value.
        #[arg(long, conflicts_with = "u")]
        table: bool,
        #[arg(long, value_enum, default_value_t)]
        format: TableFormat,
    },
    /// Enumerate the special partial matchings of the interval [e, w].
    Spms {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: String,
    },
    /// Run verification suites; exit 1 on any mismatch.
    Verify {
        #[arg(long)]
        n: usize,
        /// Comma-separated subset of: spm-theorem, invariance, vogan,
        /// subthin, lifting, covers, structure.
        #[arg(long, value_delimiter = ',', required = true)]
        check: Vec<String>,
        /// Fan the per-top-element suites out over this many threads.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Export the Hasse diagram of an interval as DOT or JSON.
    Export {
        #[arg(long)]
        n: usize,
        /// Lower endpoint; defaults to the identity.
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        w: String,
        #[arg(long, value_enum)]
        format: ExportFormat,
        #[arg(long, value_enum, default_value_t)]
        ground: GroundChoice,
    },
}

/// Errors that terminate with exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(err: E) -> UsageError {
        UsageError(err.to_string())
    }
}

fn parse_perm(s: &str, window: usize) -> Result<Perm, UsageError> {
    let p: Perm = s.parse()?;
    if p.window() != window {
        return Err(UsageError(format!(
            "{s:?} has window {}, expected {window}",
            p.window()
        )));
    }
    Ok(p)
}

fn check_n(n: usize, max_n: usize) -> Result<usize, UsageError> {
    if n == 0 {
        return Err(UsageError("n must be positive".into()));
    }
    if n > max_n {
        return Err(UsageError(format!(
            "n = {n} exceeds the cap {max_n}; pass --max-n {n} to override"
        )));
    }
    Ok(2 * n)
}

fn cmd_enum(window: usize, set: SetChoice, format: ListFormat) -> Result<String, UsageError> {
    let members = twisted::enumerate_iota(window)?;
    let rows: Vec<(Perm, usize)> = match set {
        SetChoice::Iota => members
            .iter()
            .map(|t| (t.perm().clone(), t.rank()))
            .collect(),
        SetChoice::Fpf => {
            // dual grading: rho of y in the fixed-point-free order is
            // (length(y) - n) / 2
            let mut rows: Vec<(Perm, usize)> = members
                .iter()
                .map(|t| {
                    let y = twisted::to_fpf(t.perm()).unwrap();
                    let rho = (y.length() - window / 2) / 2;
                    (y, rho)
                })
                .collect();
            rows.sort();
            rows
        }
    };
    let mut out = String::new();
    match format {
        ListFormat::Text => {
            for (p, rho) in &rows {
                writeln!(out, "{p} | rho {rho}").unwrap();
            }
        }
        ListFormat::Json => {
            let doc = serde_json::json!({
                "window": window,
                "set": match set { SetChoice::Iota => "iota", SetChoice::Fpf => "fpf" },
                "elements": rows
                    .iter()
                    .map(|(p, rho)| serde_json::json!({"perm": p.to_string(), "rho": rho}))
                    .collect::<Vec<_>>(),
            });
            out = serde_json::to_string_pretty(&doc).unwrap();
            out.push('\n');
        }
    }
    Ok(out)
}

fn cmd_poly(
    window: usize,
    kind: PolyKind,
    u: Option<String>,
    w: String,
    table: bool,
    format: TableFormat,
) -> Result<String, UsageError> {
    let ctx = KlvContext::new(window)?;
    let w = parse_perm(&w, window)?;
    if table {
        let table = ctx.table_for(kind, &w)?;
        return Ok(match format {
            TableFormat::Csv => table.to_csv(),
            TableFormat::Json => {
                let mut s = table.to_json();
                s.push('\n');
                s
            }
        });
    }
    let u = u.ok_or_else(|| UsageError("either --u or --table is required".into()))?;
    let u = parse_perm(&u, window)?;
    let poly = ctx.poly(kind, &u, &w)?;
    Ok(format!("{poly}\n"))
}

fn cmd_spms(window: usize, w: String) -> Result<String, UsageError> {
    let w = parse_perm(&w, window)?;
    let e = Perm::identity(window);
    let poset = IntervalPoset::build_interval(&e, &w, Ground::Iota)?;
    let matchings = spm::enumerate_spms(&poset)?;
    let mut out = String::new();
    let mut conj = 0usize;
    let mut non_conj = 0usize;
    for m in &matchings {
        match spm::classify_spm(&poset, m)? {
            spm::SpmClass::Conjugation { .. } => conj += 1,
            spm::SpmClass::NonConjugation { .. } => non_conj += 1,
        }
        writeln!(out, "{}", spm::spm_to_json(&poset, m)?).unwrap();
    }
    if matchings.is_empty() && poset.len() == 1 {
        writeln!(
            out,
            "0 matchings (singleton interval: the top cannot be matched downward)"
        )
        .unwrap();
    } else {
        writeln!(
            out,
            "{} matchings: {conj} conjugation, {non_conj} non_conjugation",
            matchings.len()
        )
        .unwrap();
    }
    Ok(out)
}

/// Per-top-element suites fan out across a thread pool when requested;
/// results are reduced in stable element order either way.
fn parallel_over_tops<R: Send>(
    elements: &[Perm],
    jobs: Option<usize>,
    f: impl Fn(&Perm) -> Result<R, klv_core::Error> + Sync,
) -> Result<Vec<R>, UsageError> {
    match jobs {
        Some(width) if width > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(width)
                .build()
                .map_err(|e| UsageError(e.to_string()))?;
            use rayon::prelude::*;
            let results: Result<Vec<R>, _> = pool.install(|| elements.par_iter().map(&f).collect());
            Ok(results?)
        }
        _ => {
            let results: Result<Vec<R>, _> = elements.iter().map(f).collect();
            Ok(results?)
        }
    }
}

fn run_verify(
    window: usize,
    selectors: &[CheckSelector],
    jobs: Option<usize>,
) -> Result<(String, bool), UsageError> {
    let n = window / 2;
    let mut out = String::new();
    let mut all_passed = true;
    for &selector in selectors {
        let report = match selector {
            CheckSelector::SpmTheorem => {
                let ctx = KlvContext::new(window)?;
                let reports =
                    parallel_over_tops(ctx.elements(), jobs, |w| ctx.verify_spm_theorem(w))?;
                let mut merged = verify::CheckReport {
                    name: "spm-theorem".into(),
                    window,
                    details: Vec::new(),
                    failures: Vec::new(),
                };
                let spms: usize = reports.iter().map(|r| r.spm_count).sum();
                let pairs: usize = reports.iter().map(|r| r.pairs_checked).sum();
                merged.details.push(format!(
                    "{spms} matchings, {pairs} polynomial pairs compared"
                ));
                for r in reports {
                    merged.failures.extend(r.mismatches);
                }
                merged
            }
            CheckSelector::Vogan => {
                let ctx = KlvContext::new(window)?;
                let reports =
                    parallel_over_tops(ctx.elements(), jobs, |w| ctx.verify_vogan_identity(w))?;
                let mut merged = verify::CheckReport {
                    name: "vogan".into(),
                    window,
                    details: Vec::new(),
                    failures: Vec::new(),
                };
                let tops = reports.len();
                let pairs: usize = reports.iter().map(|r| r.pairs_checked).sum();
                merged
                    .details
                    .push(format!("{tops} top elements, {pairs} pairs expanded"));
                for r in reports {
                    merged.failures.extend(r.failures);
                }
                merged
            }
            _ => verify::run_check(selector, window)?,
        };
        let status = if report.passed() { "pass" } else { "FAIL" };
        writeln!(
            out,
            "[n={n}] {}: {status} ({})",
            report.name,
            report.details.first().cloned().unwrap_or_default()
        )
        .unwrap();
        for line in report.details.iter().skip(1) {
            writeln!(out, "{line}").unwrap();
        }
        for failure in &report.failures {
            writeln!(out, "  mismatch: {failure}").unwrap();
        }
        all_passed &= report.passed();
    }
    Ok((out, all_passed))
}

fn cmd_export(
    window: usize,
    u: Option<String>,
    w: String,
    format: ExportFormat,
    ground: GroundChoice,
) -> Result<String, UsageError> {
    let w = parse_perm(&w, window)?;
    let u = match u {
        Some(s) => parse_perm(&s, window)?,
        None => Perm::identity(window),
    };
    let ground = match ground {
        GroundChoice::Iota => Ground::Iota,
        GroundChoice::Twisted => Ground::Twisted,
    };
    let poset = IntervalPoset::build_interval(&u, &w, ground)?;
    Ok(match format {
        ExportFormat::Dot => poset.to_dot(),
        ExportFormat::Json => {
            let mut s = poset.to_json();
            s.push('\n');
            s
        }
    })
}

fn emit(payload: &str, output: Option<&PathBuf>) -> Result<(), UsageError> {
    match output {
        Some(path) => std::fs::write(path, payload)?,
        None => print!("{payload}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, UsageError> {
    match cli.command {
        Command::Enum { n, set, format } => {
            let window = check_n(n, cli.max_n)?;
            let payload = cmd_enum(window, set, format)?;
            emit(&payload, cli.output.as_ref())?;
            Ok(0)
        }
        Command::Poly {
            kind,
            n,
            u,
            w,
            table,
            format,
        } => {
            let window = check_n(n, cli.max_n)?;
            let payload = cmd_poly(window, kind.into(), u, w, table, format)?;
            emit(&payload, cli.output.as_ref())?;
            Ok(0)
        }
        Command::Spms { n, w } => {
            let window = check_n(n, cli.max_n)?;
            let payload = cmd_spms(window, w)?;
            emit(&payload, cli.output.as_ref())?;
            Ok(0)
        }
        Command::Verify { n, check, jobs } => {
            let window = check_n(n, cli.max_n)?;
            let selectors: Vec<CheckSelector> =
                check.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
            let (payload, all_passed) = run_verify(window, &selectors, jobs)?;
            emit(&payload, cli.output.as_ref())?;
            Ok(if all_passed { 0 } else { 1 })
        }
        Command::Export {
            n,
            u,
            w,
            format,
            ground,
        } => {
            let window = check_n(n, cli.max_n)?;
            let payload = cmd_export(window, u, w, format, ground)?;
            emit(&payload, cli.output.as_ref())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
