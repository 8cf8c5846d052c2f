//! `squiral`: generate supertiles, count patterns, verify the lemmas and
//! export the complexity sequences.
//!
//! Exit codes: 0 success, 1 a property or agreement check failed, 2 usage
//! error, 3 a resource limit was hit.

mod config;
mod output;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use squiral::sequences::{SimplifiedRecursion, TripleRecursion};
use squiral::verify::{self, Check, Report, SuiteParams};
use squiral::{closed_form_a, sequence_table, supertile_within, ComplexityTriple, Error, Oracle};

use crate::config::{OutputFormat, RunConfig};
use crate::output::count_value;

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "squiral",
    version,
    about = "Exact pattern complexity of the squiral tiling"
)]
struct Cli {
    /// Highest supertile level that may be generated (hard cap 12).
    #[arg(long, global = true, env = "SQUIRAL_MAX_LEVEL", default_value_t = squiral::config::DEFAULT_MAX_LEVEL)]
    max_level: u32,

    /// Memory budget in bytes for a single pattern set.
    #[arg(long = "mem-budget", global = true, env = "SQUIRAL_MEM_BUDGET", default_value_t = squiral::config::DEFAULT_MEMORY_BUDGET)]
    mem_budget: u64,

    /// Worker threads for enumeration (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Print progress and timings to stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Render the supertile T_n as text or PBM.
    Supertile(SupertileArgs),
    /// Count n x n (and n x (n+1), (n+1) x n) patterns.
    Count(CountArgs),
    /// Run the property suites.
    Verify(VerifyArgs),
    /// Export (n, A_n, B_n, C_n) for n = 1..max_n.
    Sequence(SequenceArgs),
}

#[derive(Args, Debug)]
struct SupertileArgs {
    #[arg(long)]
    n: u32,
    /// text or pbm
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write binary PBM (P4) instead of plain (P1).
    #[arg(long)]
    raw: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Recursion,
    Simplified,
    Closed,
    All,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, value_enum, default_value_t = Method::All)]
    method: Method,
    /// With --method all, skip brute force above this n.
    #[arg(long, default_value_t = 40)]
    brute_max: u64,
    /// text or json
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Lemmas,
    Table1,
    Crosscheck,
    All,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Largest pattern side for the lemma checks.
    #[arg(long, default_value_t = 6)]
    max_size: usize,
    /// Largest n compared by brute force in the cross-check.
    #[arg(long, default_value_t = 25)]
    brute_max: u64,
    /// Largest n for the sequence agreement checks.
    #[arg(long, default_value_t = 100_000)]
    seq_max: u64,
    /// text or json
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Also write the JSON summary to this file.
    #[arg(long)]
    json_out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
struct SequenceArgs {
    #[arg(long)]
    max_n: u64,
    /// csv, json or text
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

/// What ended a command early.
enum Failure {
    Usage(String),
    Library(Error),
    Io(io::Error),
    /// A check ran and came out false; its report has already been written.
    Property,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let start = Instant::now();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out).and_then(|()| out.flush().map_err(Failure::Io));
    if cli.verbose > 0 {
        eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            let _ = out.flush();
            ExitCode::from(report_failure(failure))
        }
    }
}

fn report_failure(failure: Failure) -> u8 {
    match failure {
        Failure::Usage(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Failure::Property => EXIT_FAILED,
        Failure::Io(e) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Failure::Io(e) => {
            eprintln!("error: {e}");
            EXIT_FAILED
        }
        Failure::Library(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ResourceLimit(_) | Error::Overflow(_) => EXIT_RESOURCE,
                Error::Unverified { .. } => EXIT_FAILED,
                Error::Argument(_) | Error::Bounds { .. } | Error::Domain(_) => EXIT_USAGE,
            }
        }
    }
}

fn run_config(
    cli: &Cli,
    format: OutputFormat,
    allowed: &[OutputFormat],
) -> Result<RunConfig, Failure> {
    if !allowed.contains(&format) {
        let names: Vec<String> = allowed.iter().map(ToString::to_string).collect();
        return Err(Failure::Usage(format!(
            "--format {format} is not supported here (use one of: {})",
            names.join(", ")
        )));
    }
    RunConfig::new(cli.max_level, cli.mem_budget, format, cli.verbose).map_err(Failure::Usage)
}

fn run<W: Write>(cli: &Cli, out: &mut W) -> Outcome {
    match &cli.command {
        Command::Supertile(args) => cmd_supertile(cli, args, out),
        Command::Count(args) => cmd_count(cli, args, out),
        Command::Verify(args) => cmd_verify(cli, args, out),
        Command::Sequence(args) => cmd_sequence(cli, args, out),
    }
}

fn cmd_supertile<W: Write>(cli: &Cli, args: &SupertileArgs, out: &mut W) -> Outcome {
    let cfg = run_config(cli, args.format, &[OutputFormat::Text, OutputFormat::Pbm])?;
    let tile = supertile_within(args.n, &cfg.limits())?;
    match (cfg.output_format, args.raw) {
        (OutputFormat::Pbm, true) => output::write_pbm_raw(out, &tile)?,
        (OutputFormat::Pbm, false) => output::write_pbm_plain(out, &tile)?,
        _ => output::write_ascii(out, &tile)?,
    }
    Ok(())
}

fn triple_json(t: &ComplexityTriple) -> Value {
    json!({ "A": count_value(t.a), "B": count_value(t.b), "C": count_value(t.c) })
}

fn cmd_count<W: Write>(cli: &Cli, args: &CountArgs, out: &mut W) -> Outcome {
    let cfg = run_config(cli, args.format, &[OutputFormat::Text, OutputFormat::Json])?;
    let n = args.n;
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let wants = |m: Method| args.method == m || args.method == Method::All;

    let mut lines = Vec::new();
    let mut paths = Map::new();
    let mut a_values = Vec::new();
    let mut triples = Vec::new();

    if wants(Method::Brute) {
        if args.method == Method::Brute || n <= args.brute_max {
            let oracle = Oracle::new(cfg.limits());
            let t = oracle.brute_force_triple(n)?;
            lines.push(format!("brute       A = {}  B = {}  C = {}", t.a, t.b, t.c));
            paths.insert("brute".into(), triple_json(&t));
            a_values.push(("brute", t.a));
            triples.push(("brute", t));
        } else {
            lines.push(format!(
                "brute       skipped (n > --brute-max {})",
                args.brute_max
            ));
        }
    }
    if wants(Method::Recursion) {
        let t = TripleRecursion::new().triple(n)?;
        lines.push(format!("recursion   A = {}  B = {}  C = {}", t.a, t.b, t.c));
        paths.insert("recursion".into(), triple_json(&t));
        a_values.push(("recursion", t.a));
        triples.push(("recursion", t));
    }
    if wants(Method::Simplified) {
        let a = SimplifiedRecursion::new().a(n)?;
        lines.push(format!("simplified  A = {a}"));
        paths.insert("simplified".into(), json!({ "A": count_value(a) }));
        a_values.push(("simplified", a));
    }
    if wants(Method::Closed) {
        let a = closed_form_a(n)?;
        lines.push(format!("closed      A = {a}"));
        paths.insert("closed".into(), json!({ "A": count_value(a) }));
        a_values.push(("closed", a));
    }

    let mut disagreements = Vec::new();
    if let Some(&(first, a0)) = a_values.first() {
        for &(name, a) in &a_values[1..] {
            if a != a0 {
                disagreements.push(format!("A from {name} = {a}, from {first} = {a0}"));
            }
        }
    }
    if let [(n1, t1), (n2, t2)] = triples[..] {
        if (t1.b, t1.c) != (t2.b, t2.c) {
            disagreements.push(format!(
                "B, C from {n1} = {}, {}; from {n2} = {}, {}",
                t1.b, t1.c, t2.b, t2.c
            ));
        }
    }

    match cfg.output_format {
        OutputFormat::Json => {
            let doc = json!({
                "n": n,
                "paths": Value::Object(paths),
                "agree": disagreements.is_empty(),
                "disagreements": disagreements,
            });
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)?;
        }
        _ => {
            writeln!(out, "n = {n}")?;
            for line in &lines {
                writeln!(out, "{line}")?;
            }
            if a_values.len() > 1 {
                if disagreements.is_empty() {
                    writeln!(out, "all paths agree")?;
                } else {
                    for d in &disagreements {
                        writeln!(out, "DISAGREEMENT: {d}")?;
                    }
                }
            }
        }
    }
    if disagreements.is_empty() {
        Ok(())
    } else {
        Err(Failure::Property)
    }
}

fn cmd_verify<W: Write>(cli: &Cli, args: &VerifyArgs, out: &mut W) -> Outcome {
    let cfg = run_config(cli, args.format, &[OutputFormat::Text, OutputFormat::Json])?;
    let oracle = Oracle::new(cfg.limits());
    let params = SuiteParams {
        max_size: args.max_size,
        brute_max: args.brute_max,
        seq_max: args.seq_max,
    };
    let run_table = matches!(args.suite, Suite::Table1 | Suite::All);
    let run_lemmas = matches!(args.suite, Suite::Lemmas | Suite::All);
    let run_cross = matches!(args.suite, Suite::Crosscheck | Suite::All);

    let mut report = Report::default();
    let timed = |name: &str, f: &dyn Fn() -> squiral::Result<Vec<Check>>| {
        let start = Instant::now();
        let checks = f();
        if cfg.verbosity > 0 {
            eprintln!("suite {name}: {:.3}s", start.elapsed().as_secs_f64());
        }
        checks
    };
    if run_table {
        report.extend(timed("table1", &|| verify::table1(&oracle))?);
    }
    if run_lemmas {
        report.extend(timed("lemmas", &|| verify::lemmas(&oracle, &params))?);
    }
    if run_cross {
        report.extend(timed("crosscheck", &|| {
            verify::crosscheck(&oracle, &params)
        })?);
    }

    let failed = report.failures().count();
    let summary = json!({
        "passed": report.passed(),
        "total": report.checks.len(),
        "failed": failed,
        "checks": report.checks,
    });
    if let Some(path) = &args.json_out {
        std::fs::write(path, serde_json::to_string_pretty(&summary)?)?;
    }
    match cfg.output_format {
        OutputFormat::Json => {
            serde_json::to_writer(&mut *out, &summary)?;
            writeln!(out)?;
        }
        _ => {
            for c in &report.checks {
                let tag = match (c.informational, c.passed) {
                    (true, _) => "INFO",
                    (false, true) => "PASS",
                    (false, false) => "FAIL",
                };
                write!(out, "{tag}  [{}] {} ({})", c.suite, c.property, c.instance)?;
                if c.detail.is_empty() {
                    writeln!(out)?;
                } else {
                    writeln!(out, ": {}", c.detail)?;
                }
            }
            writeln!(out, "{} checks, {failed} failed", report.checks.len())?;
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Property)
    }
}

fn cmd_sequence<W: Write>(cli: &Cli, args: &SequenceArgs, out: &mut W) -> Outcome {
    let cfg = run_config(
        cli,
        args.format,
        &[OutputFormat::Csv, OutputFormat::Json, OutputFormat::Text],
    )?;
    if args.max_n == 0 {
        return Err(Failure::Usage("--max-n must be at least 1".into()));
    }
    let rows = sequence_table(args.max_n)?;
    match cfg.output_format {
        OutputFormat::Json => output::write_json(out, &rows)?,
        OutputFormat::Text => output::write_table(out, &rows)?,
        _ => output::write_csv(out, &rows)?,
    }
    Ok(())
}
