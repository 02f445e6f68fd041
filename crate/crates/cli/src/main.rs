//! `hyperpath`: enumerate, count, embed, and probe monotone paths on
//! hypersimplices from the shell.
//!
//! All outputs are byte-deterministic for a fixed invocation: enumeration
//! order is canonical, record fields are fixed, and parallel oracle scans
//! collect results back into enumeration order. Exit codes: 0 success,
//! 2 usage error, 3 budget exceeded, 4 non-generic input.

use std::fmt::Write as _;
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use hyperpath::coherence::{
    captured_path, is_coherent_lp, satisfies_criterion, search_criterion_gap,
};
use hyperpath::counting::{count_total, count_vector, length_polys};
use hyperpath::geometry::embedding_table;
use hyperpath::hypersimplex::{for_each_monotone_path, Direction, MonotonePath, Support};
use hyperpath::rational::{format_rational, parse_rational, Rational};
use hyperpath::Error;

#[derive(Parser)]
#[command(
    name = "hyperpath",
    version,
    about = "Monotone paths on hypersimplices"
)]
struct Cli {
    /// Worker threads for oracle scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all monotone paths of the hypersimplex, optionally with
    /// coherence verdicts.
    Enumerate(EnumerateArgs),
    /// Count coherent paths by total or by length.
    Count(CountArgs),
    /// Embed every monotone path and flag the polytope vertices.
    Embed(EmbedArgs),
    /// Follow a generic secondary direction and print the path it captures.
    Capture(CaptureArgs),
    /// Search for paths that pass the step criterion but are not coherent.
    GapSearch(GapSearchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Lp,
    Criterion,
    Both,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format: JSON lines or CSV with a header row.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DirectionArg {
    /// Primary direction as comma-separated rationals, e.g. "1,3/2,2"
    /// (default 1..n). Values are sorted increasingly on input.
    #[arg(long)]
    c: Option<String>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    c: DirectionArg,
    /// Keep only coherent paths (per the selected oracle).
    #[arg(long)]
    coherent_only: bool,
    /// Which coherence oracle to run on each path.
    #[arg(long, value_enum)]
    oracle: Option<Oracle>,
    /// Abort with exit 3 if the enumeration exceeds this many paths.
    #[arg(long, default_value_t = 1_000_000)]
    max_paths: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    n: usize,
    /// Count for every size from n up to this bound.
    #[arg(long)]
    n_max: Option<usize>,
    /// Break counts down by path length instead of totals.
    #[arg(long)]
    by_length: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct EmbedArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    c: DirectionArg,
    /// Abort with exit 3 if the enumeration exceeds this many paths.
    #[arg(long, default_value_t = 1_000_000)]
    max_paths: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CaptureArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    c: DirectionArg,
    /// Secondary direction as comma-separated rationals, e.g. "0,1,3,100".
    #[arg(long)]
    omega: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct GapSearchArgs {
    #[arg(long)]
    k: usize,
    /// Largest size to search.
    #[arg(long)]
    n_max: usize,
    /// Abort with exit 3 after this many paths per size.
    #[arg(long, default_value_t = 10_000_000)]
    max_paths: usize,
    #[command(flatten)]
    output: OutputArgs,
}

/// One emitted line of `enumerate`, `capture`, or `gap-search`.
#[derive(Serialize)]
struct PathRecord {
    n: usize,
    k: usize,
    supports: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    criterion: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coherent: Option<bool>,
}

impl PathRecord {
    fn new(path: &MonotonePath, criterion: Option<bool>, coherent: Option<bool>) -> Self {
        PathRecord {
            n: path.n(),
            k: path.k(),
            supports: path.supports().iter().map(|s| s.elems().to_vec()).collect(),
            criterion,
            coherent,
        }
    }

    fn supports_cell(&self) -> String {
        let sets: Vec<String> = self
            .supports
            .iter()
            .map(|s| s.iter().map(usize::to_string).collect::<Vec<_>>().join("-"))
            .collect();
        sets.join("|")
    }
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::ResourceLimit(_) => 3,
        Error::NonGenericOmega { .. } => 4,
        Error::InvalidParameter(_)
        | Error::InvalidSupport(_)
        | Error::InvalidStepSequence(_)
        | Error::InvalidLatticePath(_)
        | Error::Unsupported(_)
        | Error::ClassificationError(_) => 2,
        Error::OracleDisagreement(_) => 1,
    }
}

fn parse_rational_list(text: &str, n: usize, what: &str) -> Result<Vec<Rational>, Error> {
    let values: Vec<Rational> = text
        .split(',')
        .map(|part| parse_rational(part.trim()))
        .collect::<Result<_, _>>()?;
    if values.len() != n {
        return Err(Error::InvalidParameter(format!(
            "{what} has {} entries, expected n = {n}",
            values.len()
        )));
    }
    Ok(values)
}

fn direction_for(arg: &DirectionArg, n: usize) -> Result<Direction, Error> {
    match &arg.c {
        None => Direction::standard(n),
        Some(text) => Ok(Direction::from_values(parse_rational_list(text, n, "--c")?)?.0),
    }
}

fn collect_paths(
    n: usize,
    k: usize,
    c: &Direction,
    max_paths: u64,
) -> Result<Vec<MonotonePath>, Error> {
    let mut paths = Vec::new();
    let mut overflow = false;
    for_each_monotone_path(n, k, c, &mut |supports: &[Support]| {
        if paths.len() as u64 == max_paths {
            overflow = true;
            return ControlFlow::Break(());
        }
        paths.push(MonotonePath::new(n, k, supports.to_vec()).expect("enumerated paths are valid"));
        ControlFlow::Continue(())
    })?;
    if overflow {
        return Err(Error::ResourceLimit(format!(
            "more than {max_paths} monotone paths on ({n}, {k})"
        )));
    }
    Ok(paths)
}

fn json_line<T: Serialize>(out: &mut String, record: &T) {
    out.push_str(&serde_json::to_string(record).expect("records serialize"));
    out.push('\n');
}

fn csv_row(out: &mut String, cells: &[String]) {
    out.push_str(&cells.join(","));
    out.push('\n');
}

fn write_path_records(out: &mut String, format: Format, records: &[PathRecord]) {
    match format {
        Format::Json => {
            for r in records {
                json_line(out, r);
            }
        }
        Format::Csv => {
            let mut header = vec!["n", "k", "len", "supports"];
            let with_criterion = records.iter().any(|r| r.criterion.is_some());
            let with_coherent = records.iter().any(|r| r.coherent.is_some());
            if with_criterion {
                header.push("criterion");
            }
            if with_coherent {
                header.push("coherent");
            }
            csv_row(
                out,
                &header.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            );
            for r in records {
                let mut cells = vec![
                    r.n.to_string(),
                    r.k.to_string(),
                    r.supports.len().to_string(),
                    r.supports_cell(),
                ];
                if with_criterion {
                    cells.push(r.criterion.expect("uniform oracle fields").to_string());
                }
                if with_coherent {
                    cells.push(r.coherent.expect("uniform oracle fields").to_string());
                }
                csv_row(out, &cells);
            }
        }
    }
}

/// Payload plus the exit code the command decided on (0 unless an oracle
/// disagreement demands attention).
struct Outcome {
    payload: String,
    exit: u8,
}

impl Outcome {
    fn ok(payload: String) -> Self {
        Outcome { payload, exit: 0 }
    }
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<Outcome, Error> {
    let c = direction_for(&args.c, args.n)?;
    let paths = collect_paths(args.n, args.k, &c, args.max_paths)?;
    let oracle = args.oracle.or(args.coherent_only.then_some(Oracle::Lp));
    let verdicts: Vec<(Option<bool>, Option<bool>)> = match oracle {
        None => vec![(None, None); paths.len()],
        Some(which) => paths
            .par_iter()
            .map(|p| {
                let criterion = matches!(which, Oracle::Criterion | Oracle::Both)
                    .then(|| satisfies_criterion(p));
                let coherent = matches!(which, Oracle::Lp | Oracle::Both)
                    .then(|| is_coherent_lp(p, &c).expect("oracle"));
                (criterion, coherent)
            })
            .collect(),
    };
    let mut disagreements = 0usize;
    let mut records = Vec::new();
    for (path, &(criterion, coherent)) in paths.iter().zip(&verdicts) {
        if let (Some(a), Some(b)) = (criterion, coherent) {
            if a != b {
                disagreements += 1;
                eprintln!("oracle disagreement: criterion = {a}, coherent = {b} on {path}");
            }
        }
        let keep = !args.coherent_only
            || coherent
                .or(criterion)
                .expect("oracle selected when filtering");
        if keep {
            records.push(PathRecord::new(path, criterion, coherent));
        }
    }
    let mut payload = String::new();
    write_path_records(&mut payload, args.output.format, &records);
    let exit = if disagreements > 0 {
        if args.k == 2 {
            eprintln!("{disagreements} disagreements at k = 2: the oracles must agree");
            1
        } else {
            eprintln!("{disagreements} disagreements (expected possibility for k >= 3)");
            0
        }
    } else {
        0
    };
    Ok(Outcome { payload, exit })
}

#[derive(Serialize)]
struct TotalRecord {
    n: usize,
    total: String,
}

#[derive(Serialize)]
struct LengthCountRecord {
    n: usize,
    length: usize,
    count: String,
}

fn cmd_count(args: &CountArgs) -> Result<Outcome, Error> {
    if args.n < 4 {
        return Err(Error::InvalidParameter(format!(
            "count needs n >= 4, got {}",
            args.n
        )));
    }
    let hi = args.n_max.unwrap_or(args.n);
    if hi < args.n {
        return Err(Error::InvalidParameter(format!(
            "--n-max {hi} is below --n {}",
            args.n
        )));
    }
    let mut payload = String::new();
    if args.output.format == Format::Csv {
        let header: &[&str] = if args.by_length {
            &["n", "length", "count"]
        } else {
            &["n", "total"]
        };
        csv_row(
            &mut payload,
            &header.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        );
    }
    for n in args.n..=hi {
        let closed = count_total(n)?;
        let recursive = count_vector(n)?.total();
        if recursive != closed {
            return Err(Error::OracleDisagreement(format!(
                "recursion total {recursive} differs from closed form {closed} at n = {n}"
            )));
        }
        if args.by_length {
            let total = length_polys(n)?.total();
            let coeffs = total.coeffs();
            let sum: num_bigint::BigInt = coeffs.iter().sum();
            if sum != closed {
                return Err(Error::OracleDisagreement(format!(
                    "length counts sum to {sum}, not {closed}, at n = {n}"
                )));
            }
            for (length, count) in coeffs.iter().enumerate().skip(3) {
                match args.output.format {
                    Format::Json => json_line(
                        &mut payload,
                        &LengthCountRecord {
                            n,
                            length,
                            count: count.to_string(),
                        },
                    ),
                    Format::Csv => csv_row(
                        &mut payload,
                        &[n.to_string(), length.to_string(), count.to_string()],
                    ),
                }
            }
        } else {
            match args.output.format {
                Format::Json => json_line(
                    &mut payload,
                    &TotalRecord {
                        n,
                        total: closed.to_string(),
                    },
                ),
                Format::Csv => csv_row(&mut payload, &[n.to_string(), closed.to_string()]),
            }
        }
    }
    Ok(Outcome::ok(payload))
}

#[derive(Serialize)]
struct EmbedRecord {
    n: usize,
    k: usize,
    supports: Vec<Vec<usize>>,
    coords: Vec<String>,
    is_vertex: bool,
}

fn cmd_embed(args: &EmbedArgs) -> Result<Outcome, Error> {
    let c = direction_for(&args.c, args.n)?;
    let table = embedding_table(args.n, args.k, &c, args.max_paths)?;
    let mut payload = String::new();
    if args.output.format == Format::Csv {
        let mut header = vec!["path".to_string()];
        header.extend((1..=args.n).map(|i| format!("coord_{i}")));
        header.push("is_vertex".to_string());
        csv_row(&mut payload, &header);
    }
    for (path, point, is_vertex) in &table {
        let record = EmbedRecord {
            n: path.n(),
            k: path.k(),
            supports: path.supports().iter().map(|s| s.elems().to_vec()).collect(),
            coords: point.coords.iter().map(format_rational).collect(),
            is_vertex: *is_vertex,
        };
        match args.output.format {
            Format::Json => json_line(&mut payload, &record),
            Format::Csv => {
                let mut cells = vec![PathRecord::new(path, None, None).supports_cell()];
                cells.extend(record.coords.iter().cloned());
                cells.push(record.is_vertex.to_string());
                csv_row(&mut payload, &cells);
            }
        }
    }
    Ok(Outcome::ok(payload))
}

fn cmd_capture(args: &CaptureArgs) -> Result<Outcome, Error> {
    let c = direction_for(&args.c, args.n)?;
    let omega = parse_rational_list(&args.omega, args.n, "--omega")?;
    let path = captured_path(&c, args.k, &omega)?;
    if !is_coherent_lp(&path, &c)? {
        return Err(Error::OracleDisagreement(format!(
            "captured path {path} fails the coherence oracle"
        )));
    }
    let mut payload = String::new();
    write_path_records(
        &mut payload,
        args.output.format,
        &[PathRecord::new(&path, None, Some(true))],
    );
    Ok(Outcome::ok(payload))
}

fn cmd_gap_search(args: &GapSearchArgs) -> Result<Outcome, Error> {
    let found = search_criterion_gap(args.k, args.n_max, args.max_paths)?;
    let mut payload = String::new();
    match found {
        Some(path) => write_path_records(
            &mut payload,
            args.output.format,
            &[PathRecord::new(&path, Some(true), Some(false))],
        ),
        None => {
            let _ = writeln!(payload, "none");
        }
    }
    Ok(Outcome::ok(payload))
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Count(args) => cmd_count(args),
        Command::Embed(args) => cmd_embed(args),
        Command::Capture(args) => cmd_capture(args),
        Command::GapSearch(args) => cmd_gap_search(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(&cli) {
        Ok(outcome) => {
            let sink = match &cli.command {
                Command::Enumerate(a) => &a.output.out,
                Command::Count(a) => &a.output.out,
                Command::Embed(a) => &a.output.out,
                Command::Capture(a) => &a.output.out,
                Command::GapSearch(a) => &a.output.out,
            };
            let written = match sink {
                Some(path) => std::fs::write(path, &outcome.payload).map_err(|e| {
                    eprintln!("error: cannot write {}: {e}", path.display());
                }),
                None => {
                    print!("{}", outcome.payload);
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(outcome.exit),
                Err(()) => ExitCode::from(1),
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_for(&err))
        }
    }
}
