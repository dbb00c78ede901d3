//! `mcs-enum`: enumerate, check, export, and benchmark maximal common subsequences.
//!
//! Exit status: 0 success, 1 `check` found a non-maximal string, 2 bad usage
//! or unreadable input, 3 a resource cap was hit, 4 `check` found a string
//! that is not common, 5 internal error.

mod bench;
mod input;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use mcs_enum::meter::CountingAlloc;
use mcs_enum::{Algorithm, AllMcsGraph, DriverConfig, GraphConfig, McsError, NextPrevTable, Options, Rank};
use serde_json::json;

use crate::bench::BenchArgs;
use crate::input::{InputArgs, UsageError};

#[global_allocator]
static ALLOC: CountingAlloc = CountingAlloc;

#[derive(Debug, Parser)]
#[command(name = "mcs-enum", version, about = "Maximal common subsequences of two strings")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print every MCS, one per line
    Enumerate(EnumerateArgs),
    /// Test whether a string is an MCS
    Check(CheckArgs),
    /// Export the all-MCS graph or query it
    Graph(GraphArgs),
    /// Profile preprocessing, memory, and delay as CSV
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Order {
    /// Lexicographic (buffers and sorts for enum331)
    Lex,
    /// Path order of the all-MCS graph (enum331 only)
    Graph,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "enum221")]
    algo: Algorithm,
    /// Stop after this many MCSs
    #[arg(long)]
    limit: Option<u64>,
    /// Print only the number of MCSs
    #[arg(long)]
    count_only: bool,
    /// Emit JSON lines {"mcs": ..., "index": k}
    #[arg(long, conflicts_with = "count_only")]
    json: bool,
    #[arg(long, value_enum, default_value = "lex")]
    order: Order,
    #[arg(long, default_value_t = 50_000_000)]
    max_graph_vertices: usize,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Candidate string
    #[arg(long, allow_hyphen_values = true)]
    z: String,
}

#[derive(Debug, Args)]
struct GraphArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Write DOT here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the longest MCSs that are not LCSs
    #[arg(long, group = "query")]
    quasi_lcs: bool,
    /// Print the MCSs with the most fixed cut positions
    #[arg(long, group = "query")]
    most_stable: bool,
    /// Print the number of MCSs
    #[arg(long, group = "query")]
    count: bool,
    #[arg(long, default_value_t = 50_000_000)]
    max_graph_vertices: usize,
}

fn options(max_graph_vertices: usize) -> Options {
    Options {
        driver: DriverConfig::from_env(),
        graph: GraphConfig {
            max_vertices: max_graph_vertices,
            ..GraphConfig::default()
        },
        ..Options::default()
    }
}

fn enumerate(args: &EnumerateArgs, out: &mut impl Write) -> Result<ExitCode> {
    if args.order == Order::Graph && args.algo != Algorithm::Enum331 {
        return Err(UsageError("--order graph requires --algo enum331".into()).into());
    }
    let p = args.input.read_pair()?;
    let unit = args.input.unit();
    let opts = options(args.max_graph_vertices);
    let limit = args.limit.unwrap_or(u64::MAX);
    let mut emitted = 0u64;
    let mut failure: Option<io::Error> = None;
    let mut emit = |z: &[Rank]| -> bool {
        if emitted >= limit {
            return false;
        }
        emitted += 1;
        if args.count_only {
            return emitted < limit;
        }
        let res = if args.json {
            writeln!(out, "{}", json!({ "mcs": unit.text(&p, z), "index": emitted - 1 }))
        } else {
            unit.write_line(out, &p, z)
        };
        if let Err(e) = res {
            failure = Some(e);
            return false;
        }
        emitted < limit
    };

    if limit > 0 {
        if args.algo == Algorithm::Enum331 && args.order == Order::Lex {
            let mut all = Vec::new();
            mcs_enum::enumerate(&p, args.algo, &opts, |z| {
                all.push(z.to_vec());
                true
            })?;
            all.sort_unstable();
            for z in &all {
                if !emit(z) {
                    break;
                }
            }
        } else {
            mcs_enum::enumerate(&p, args.algo, &opts, &mut emit)?;
        }
    }
    match failure {
        Some(e) if e.kind() == io::ErrorKind::BrokenPipe => return Ok(ExitCode::SUCCESS),
        Some(e) => return Err(e.into()),
        None => {}
    }
    if args.count_only {
        writeln!(out, "{emitted}")?;
    }
    Ok(ExitCode::SUCCESS)
}

fn check(args: &CheckArgs, out: &mut impl Write) -> Result<ExitCode> {
    let p = args.input.read_pair()?;
    let unit = args.input.unit();
    let z = unit.symbols(args.z.as_bytes())?;
    let t = NextPrevTable::build(&p);
    let verdict = match p.encode(&z).map(|r| p.is_maximal(&r, &t)) {
        Some(Ok(true)) => ("maximal", 0),
        Some(Ok(false)) => ("not-maximal", 1),
        None | Some(Err(McsError::NotCommon)) => ("not-common", 4),
        Some(Err(e)) => return Err(e.into()),
    };
    writeln!(out, "{}", verdict.0)?;
    Ok(ExitCode::from(verdict.1))
}

fn graph(args: &GraphArgs, out: &mut impl Write) -> Result<ExitCode> {
    let p = args.input.read_pair()?;
    let unit = args.input.unit();
    let t = NextPrevTable::build(&p);
    let g = AllMcsGraph::build_with(&p, &t, options(args.max_graph_vertices).graph)?;
    drop(t);
    let strip = |z: &Vec<Rank>| z[1..z.len() - 1].to_vec();
    if args.count {
        writeln!(out, "{}", g.count_paths())?;
    } else if args.quasi_lcs {
        for z in g.quasi_lcs().1.iter().map(strip) {
            unit.write_line(out, &p, &z)?;
        }
    } else if args.most_stable {
        for z in g.most_stable().1.iter().map(strip) {
            unit.write_line(out, &p, &z)?;
        }
    } else if let Some(path) = &args.out {
        let file = File::create(path).map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
        let mut w = BufWriter::new(file);
        g.export_dot(&mut w)?;
        w.flush()?;
    } else {
        g.export_dot(&mut *out)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn bench(args: &BenchArgs, out: &mut impl Write) -> Result<ExitCode> {
    let rows = bench::run(args, &options(args.max_graph_vertices))?;
    writeln!(out, "{}", bench::HEADER)?;
    for r in &rows {
        writeln!(out, "{}", r.csv())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<McsError>() {
        Some(McsError::ResourceLimit { .. }) => 3,
        Some(McsError::Inconsistent(_)) => 5,
        Some(_) => 2,
        None if err.downcast_ref::<io::Error>().is_some() => 2,
        None => 5,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let res = match &cli.cmd {
        Command::Enumerate(a) => enumerate(a, &mut out),
        Command::Check(a) => check(a, &mut out),
        Command::Graph(a) => graph(a, &mut out),
        Command::Bench(a) => bench(a, &mut out),
    };
    let flushed = out.flush();
    match res {
        Ok(code) => {
            if let Err(e) = flushed {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    eprintln!("mcs-enum: {e}");
                    return ExitCode::from(2);
                }
            }
            code
        }
        Err(e) => {
            eprintln!("mcs-enum: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
