//! Thin command-line front end: `balspan solve|sweep|verify <file> [flags]`.
//!
//! Exit codes: 0 success, 1 parse error, 2 validation failure, 3 solver or
//! check failure, 4 oracle guard violation.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use balspan::error::Error;
use balspan::model::{ItemType, ProblemInstance};
use balspan::oracle::{self, ORACLE_LIMIT};
use balspan::quality::quality_vector;
use balspan::schemes::CondensingKind;
use balspan::strategies::{
    local_improve, pareto_sweep, strategy_balance_then_span, strategy_direct, strategy_layered,
    strategy_spanning_then_balance,
};
use balspan::{io, ClusteringSolution};

const IMPROVE_ROUNDS: usize = 64;

#[derive(Parser)]
#[command(
    name = "balspan",
    version,
    about = "Balanced clustering with a spanning structure over the clusters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem file with one strategy and write solution files.
    Solve(SolveArgs),
    /// Run every strategy, report quality vectors and the Pareto front.
    Sweep(SweepArgs),
    /// Check results against the brute-force oracles (small instances),
    /// optionally replaying the bundled reference trace.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    /// Balanced clustering first, spanning tree over clusters second.
    BalanceSpan,
    /// Spanning tree first, balanced tree partitioning second.
    SpanBalance,
    /// Direct agglomeration under the balance constraint.
    Direct,
    /// Per-layer balancing plus layer connection.
    Layered,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    /// Condense at the globally lightest tree edge.
    Edge,
    /// Condense at the leaf with the lightest edge (bottom-up).
    Leaf,
    /// Condense at the component root (top-down).
    Root,
    /// Condense around centers of a fixed type.
    Center,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutArg {
    Json,
    Dot,
    Both,
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    strategy: StrategyArg,
    /// Condensing scheme; required for (and only used by) span-balance.
    #[arg(long, value_enum)]
    scheme: Option<SchemeArg>,
    /// Center type for the center scheme.
    #[arg(long, default_value_t = 1)]
    center_type: usize,
    /// Apply single-node local improvement to the solution.
    #[arg(long)]
    improve: bool,
    #[arg(long, value_enum, default_value_t = OutArg::Both)]
    out: OutArg,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    file: PathBuf,
    #[arg(long)]
    improve: bool,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    /// Replay the bundled reference trace (ignores the oracle size guard).
    #[arg(long)]
    paper_trace: bool,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse(_) | Error::Io(_) => 1,
        Error::InvalidInstance(_) | Error::LayerData(_) => 2,
        Error::OracleGuard { .. } => 4,
        _ => 3,
    }
}

fn fail(err: Error) -> ExitCode {
    match &err {
        Error::InvalidInstance(violations) => {
            eprintln!("error: invalid instance:");
            for v in violations {
                eprintln!("  - {v}");
            }
        }
        _ => eprintln!("error: {err}"),
    }
    ExitCode::from(exit_code_for(&err))
}

fn read_instance(path: &Path) -> Result<ProblemInstance, Error> {
    let json = std::fs::read_to_string(path)?;
    io::load_instance(&json)
}

fn run_solve(args: &SolveArgs) -> Result<(), Error> {
    let instance = read_instance(&args.file)?;
    let solution = match args.strategy {
        StrategyArg::BalanceSpan => strategy_balance_then_span(&instance)?,
        StrategyArg::SpanBalance => {
            let scheme = args.scheme.ok_or_else(|| {
                Error::Parse("--scheme is required with --strategy span-balance".to_string())
            })?;
            let kind = match scheme {
                SchemeArg::Edge => CondensingKind::MinEdge,
                SchemeArg::Leaf => CondensingKind::LeafEdge,
                SchemeArg::Root => CondensingKind::RootEdge,
                SchemeArg::Center => CondensingKind::CenterBased(ItemType(args.center_type)),
            };
            strategy_spanning_then_balance(&instance, kind)?
        }
        StrategyArg::Direct => strategy_direct(&instance)?,
        StrategyArg::Layered => strategy_layered(&instance)?,
    };
    let solution = if args.improve {
        local_improve(&solution, &instance, IMPROVE_ROUNDS)?
    } else {
        solution
    };
    write_solution(&solution, &instance, &args.out_dir, "solution", args.out)?;
    let q = quality_vector(&solution, &instance)?;
    println!("{} clusters, quality {}", solution.clusters.len(), q);
    Ok(())
}

fn write_solution(
    solution: &ClusteringSolution,
    instance: &ProblemInstance,
    out_dir: &Path,
    stem: &str,
    out: OutArg,
) -> Result<(), Error> {
    std::fs::create_dir_all(out_dir)?;
    if matches!(out, OutArg::Json | OutArg::Both) {
        let path = out_dir.join(format!("{stem}.json"));
        std::fs::write(&path, io::solution_json(solution, instance)?)?;
        println!("wrote {}", path.display());
    }
    if matches!(out, OutArg::Dot | OutArg::Both) {
        let path = out_dir.join(format!("{stem}.dot"));
        std::fs::write(&path, io::solution_dot(solution, instance))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run_sweep(args: &SweepArgs) -> Result<(), Error> {
    let instance = read_instance(&args.file)?;
    let sweep = pareto_sweep(&instance, args.improve);
    std::fs::create_dir_all(&args.out_dir)?;

    let mut files = BTreeMap::new();
    for entry in &sweep.entries {
        if let Ok((solution, _)) = &entry.outcome {
            let stem = format!("solution-{}", entry.label.replace('/', "-"));
            let path = args.out_dir.join(format!("{stem}.json"));
            std::fs::write(&path, io::solution_json(solution, &instance)?)?;
            files.insert(entry.label.clone(), format!("{stem}.json"));
        }
    }
    let doc = io::sweep_doc(&sweep, &files);
    let path = args.out_dir.join("sweep.json");
    std::fs::write(
        &path,
        serde_json::to_string_pretty(&doc).expect("sweep serializes"),
    )?;
    println!("wrote {}", path.display());

    for entry in &sweep.entries {
        match &entry.outcome {
            Ok((_, q)) => println!("  {:22} {}", entry.label, q),
            Err(e) => println!("  {:22} failed: {e}", entry.label),
        }
    }
    println!("front: {}", sweep.front.join(", "));

    if sweep.entries.iter().any(|e| e.outcome.is_ok()) {
        Ok(())
    } else {
        Err(Error::EmptySolution)
    }
}

fn run_verify(args: &VerifyArgs) -> Result<bool, Error> {
    let instance = read_instance(&args.file)?;
    let mut all_ok = true;

    if instance.item_count() <= ORACLE_LIMIT {
        // minimum spanning tree against full enumeration
        match balspan::spanning::mst(&instance) {
            Ok(edges) => {
                let mut weights: Vec<f64> = edges.iter().map(|e| e.2).collect();
                weights.sort_by(f64::total_cmp);
                let total: f64 = weights.into_iter().sum();
                let all = oracle::enumerate_spanning_trees(&instance, 1_000_000)?;
                let oracle_min = all.min_weight().unwrap_or(f64::INFINITY);
                let ok = total == oracle_min && !all.truncated;
                all_ok &= ok;
                println!(
                    "mst check: {} (weight {total}, enumeration minimum {oracle_min} over {} trees)",
                    if ok { "OK" } else { "MISMATCH" },
                    all.trees.len()
                );
            }
            Err(Error::Disconnected { components }) => {
                println!("mst check: skipped (disconnected instance, {components} components)");
            }
            Err(e) => return Err(e),
        }

        // heuristics against the exhaustive balance optimum
        let (best, _) = oracle::best_qcb(&instance, instance.item_count())?;
        println!("balance optimum (exhaustive): {best}");
        println!(
            "{:22} {:>5} {:>7} {:>5}",
            "candidate", "q_cb", "oracle", "gap"
        );
        for entry in pareto_sweep(&instance, false).entries {
            match entry.outcome {
                Ok((_, q)) => {
                    let ok = q.q_cb >= best;
                    all_ok &= ok;
                    println!(
                        "{:22} {:>5} {:>7} {:>5}{}",
                        entry.label,
                        q.q_cb,
                        best,
                        q.q_cb - best.min(q.q_cb),
                        if ok { "" } else { "  BELOW ORACLE" }
                    );
                }
                Err(e) => println!("{:22} failed: {e}", entry.label),
            }
        }
    } else if !args.paper_trace {
        return Err(Error::OracleGuard {
            size: instance.item_count(),
            limit: ORACLE_LIMIT,
        });
    } else {
        println!(
            "oracle checks: skipped ({} items exceed the {ORACLE_LIMIT}-item guard)",
            instance.item_count()
        );
    }

    if args.paper_trace {
        let replay = oracle::replay_paper_trace();
        if replay.matched {
            println!("trace: MATCH (q_cb {})", replay.q_cb);
        } else {
            println!("trace: MISMATCH");
            for diff in &replay.diffs {
                println!("  - {diff}");
            }
        }
        all_ok &= replay.matched;
    }
    Ok(all_ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Solve(args) => match run_solve(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(e),
        },
        Command::Sweep(args) => match run_sweep(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(e),
        },
        Command::Verify(args) => match run_verify(args) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(3),
            Err(e) => fail(e),
        },
    }
}
