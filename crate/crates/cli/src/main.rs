use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use dagwidth::antichain::{chain_cover_from_mpc, check_chain_cover, max_antichain_from_flow};
use dagwidth::bench::{sweep, to_csv, BenchConfig};
use dagwidth::generate::{gen_random_dag, remark_family};
use dagwidth::io::{parse_edge_list, write_cover, write_edge_list, write_ids, write_mapping, ParsedGraph};
use dagwidth::mpc::{solve_with, SolveOptions};
use dagwidth::oracle::{is_antichain, oracle_width_with_limit, validate_cover, DEFAULT_WIDTH_LIMIT};
use dagwidth::sparsify::sparsify_all;
use dagwidth::thin::thin;
use dagwidth::{Dag, Error, FlowNetwork, MpcResult, Variant};

#[derive(Parser)]
#[command(name = "dagwidth", version, about = "Minimum path covers, antichains and sparsifiers of DAGs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Input {
    /// Edge-list file
    input: PathBuf,
    /// Write the dense-to-input id mapping to this file
    #[arg(long)]
    map: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum path cover
    Mpc {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "k2")]
        variant: Variant,
        /// Check the cover, and its size against an exact oracle when small enough
        #[arg(long)]
        verify: bool,
        /// Print width, cover length, timings and work counters to stderr
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximum antichain, as sorted ids
    Antichain {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        verify: bool,
    },
    /// Minimum chain cover
    Mcc {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        verify: bool,
    },
    /// Spanning subgraph with the same reachability and in-degrees at most the width
    Sparsify {
        #[command(flatten)]
        input: Input,
    },
    /// Spanning subgraph with fewer than 2n edges and the same width
    Thin {
        #[command(flatten)]
        input: Input,
        /// Also write the rewired cover here
        #[arg(long)]
        cover_out: Option<PathBuf>,
    },
    /// Generate a graph
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Target width of a random graph
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 2.0)]
        extra: f64,
        /// Required for random graphs
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Solver timings over a size sweep, as CSV
    Bench {
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value = "k2")]
        variant: Variant,
        #[arg(long, default_value_t = 5)]
        runs: usize,
        #[arg(long, default_value_t = 2.0)]
        extra: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Random,
    Remark,
}

enum Failure {
    Input(anyhow::Error),
    Verify(String),
    Invariant(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(Error::Invariant(msg)) => Failure::Invariant(msg.clone()),
            _ => Failure::Input(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::from(anyhow::Error::from(e))
    }
}

type Outcome = std::result::Result<(), Failure>;

fn read_graph(input: &Input) -> anyhow::Result<ParsedGraph> {
    let text = fs::read_to_string(&input.input).with_context(|| format!("reading {}", input.input.display()))?;
    let g = parse_edge_list(&text)?;
    if let Some(path) = &input.map {
        write_to(Some(path), &write_mapping(&g.ids))?;
    }
    Ok(g)
}

fn write_to(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Solves with audits and tracing when the debug variable is set.
fn run_solver(dag: &Dag, variant: Variant) -> Result<MpcResult, Failure> {
    let r = solve_with(dag, variant, SolveOptions::from_env())?;
    for line in &r.trace {
        eprintln!("{line}");
    }
    Ok(r)
}

fn verify(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verify(msg()))
    }
}

/// Compares `size` with the exact width when the oracle accepts the graph.
fn verify_width(dag: &Dag, size: usize, what: &str) -> Outcome {
    match oracle_width_with_limit(dag, DEFAULT_WIDTH_LIMIT) {
        Ok(w) => verify(w == size, || format!("{what} has size {size} but the width is {w}")),
        Err(Error::TooLarge { .. }) => Ok(()),
        Err(e) => Err(e.into()),
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Mpc { input, variant, verify: check, stats, out } => {
            let g = read_graph(&input)?;
            let start = Instant::now();
            let r = run_solver(&g.dag, variant)?;
            let elapsed = start.elapsed();
            if check {
                let problems = validate_cover(&g.dag, &r.cover);
                verify(problems.is_empty(), || problems.join("; "))?;
                verify_width(&g.dag, r.cover.size(), "cover")?;
            }
            if stats {
                eprintln!("k={}", r.cover.size());
                eprintln!("length={}", r.cover.length());
                eprintln!("ms={:.3}", elapsed.as_secs_f64() * 1e3);
                eprintln!("{:?}", r.charges);
                eprintln!("charges={}", r.charges.total());
            }
            write_to(out.as_deref(), &write_cover(&r.cover.paths))?;
        }
        Command::Antichain { input, verify: check } => {
            let g = read_graph(&input)?;
            let r = run_solver(&g.dag, Variant::K2)?;
            let a = max_antichain_from_flow(&FlowNetwork::reduce(&r.sparse), &r.flow)?;
            if check {
                verify(is_antichain(&g.dag, &a), || "two antichain vertices are comparable".into())?;
                verify(a.len() == r.cover.size(), || {
                    format!("antichain of {} next to a cover of {}", a.len(), r.cover.size())
                })?;
            }
            print!("{}", write_ids(&a));
        }
        Command::Mcc { input, verify: check } => {
            let g = read_graph(&input)?;
            let r = run_solver(&g.dag, Variant::K3)?;
            let chains = chain_cover_from_mpc(&g.dag, &r.cover)?;
            if check {
                if let Err(e) = check_chain_cover(&g.dag, &chains) {
                    return Err(Failure::Verify(e.to_string()));
                }
                verify_width(&g.dag, chains.len(), "chain cover")?;
            }
            print!("{}", write_cover(&chains));
        }
        Command::Sparsify { input } => {
            let g = read_graph(&input)?;
            let r = run_solver(&g.dag, Variant::K3)?;
            print!("{}", write_edge_list(&sparsify_all(&g.dag, &r.cover)?));
        }
        Command::Thin { input, cover_out } => {
            let g = read_graph(&input)?;
            let r = run_solver(&g.dag, Variant::K3)?;
            let t = thin(&g.dag, &r.cover)?;
            let sparse = g.dag.with_edges(&t.cover.distinct_edges())?;
            print!("{}", write_edge_list(&sparse));
            if let Some(p) = cover_out {
                write_to(Some(&p), &write_cover(&t.cover.paths))?;
            }
        }
        Command::Gen { family, n, k, extra, seed } => {
            let dag = match family {
                Family::Random => {
                    let seed = seed.ok_or_else(|| anyhow::anyhow!("--seed is required for random graphs"))?;
                    gen_random_dag(n, k, extra, seed)?
                }
                Family::Remark => remark_family(n)?,
            };
            print!("{}", write_edge_list(&dag));
        }
        Command::Bench { k, sizes, variant, runs, extra, seed } => {
            let cfg = BenchConfig { k, sizes, variant, runs, extra_edge_factor: extra, seed };
            print!("{}", to_csv(&sweep(&cfg)?));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant violated: {msg}");
            ExitCode::from(3)
        }
    }
}
