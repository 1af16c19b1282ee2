use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use branchvc::bounds::BoundLadder;
use branchvc::harness::{load_corpus, parse_grid, run_ablation, with_big_stack};
use branchvc::io::gadget::{
    gadget_labels, gen_sat_gadget, parse_cnf, random_3cnf_seeded, write_cnf,
};
use branchvc::io::generate::{gen_random, RandomModel};
use branchvc::io::oct::solve_oct;
use branchvc::io::{read_instance, write_cover, write_edge_list, Format, LabeledGraph};
use branchvc::reductions::RuleSet;
use branchvc::solver::Branching;
use branchvc::{solve, Error, SolverConfig};

const EXIT_USAGE: u8 = 1;
const EXIT_INCOMPLETE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "branchvc",
    version,
    about = "Exact minimum vertex cover by branch and reduce"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum vertex cover of one instance.
    Solve {
        input: PathBuf,
        #[command(flatten)]
        input_opts: InputOpts,
        #[command(flatten)]
        solver: SolverOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Minimum odd cycle transversal through the doubled graph.
    Oct {
        input: PathBuf,
        #[command(flatten)]
        input_opts: InputOpts,
        #[command(flatten)]
        solver: SolverOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Write a generated instance.
    Generate {
        #[arg(value_enum)]
        kind: Kind,
        /// Vertices (graph models) or variables (cnf).
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// Edge probability for gnp.
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        /// Components for forest.
        #[arg(long, default_value_t = 3)]
        trees: usize,
        /// Mean degree for power-law.
        #[arg(long, default_value_t = 3.0)]
        avg_degree: f64,
        #[arg(long, default_value_t = 2.5)]
        exponent: f64,
        /// Clauses for cnf.
        #[arg(long, default_value_t = 10)]
        clauses: usize,
        /// CNF file for sat-gadget.
        #[arg(long)]
        cnf: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a configuration grid over every file in a directory and write CSV.
    Ablate {
        corpus: PathBuf,
        /// `all`, `branching`, `reductions`, `bounds`, or cells like `b2-r0-l4,r4`.
        #[arg(long, default_value = "reductions")]
        grid: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        input_opts: InputOpts,
        #[command(flatten)]
        solver: SolverOpts,
        /// CSV destination (standard output if absent).
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write 0 for elapsed times so runs are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    SatGadget,
    Cnf,
    Gnp,
    Tree,
    Forest,
    PowerLaw,
}

#[derive(Args)]
struct InputOpts {
    /// edgelist, dimacs or cnf; guessed from the extension when absent.
    #[arg(long)]
    format: Option<String>,
    /// Use the complement of a DIMACS graph.
    #[arg(long)]
    complement: bool,
}

impl InputOpts {
    fn format(&self) -> Result<Option<Format>, Error> {
        match &self.format {
            None => Ok(None),
            Some(s) => Format::parse(s)
                .map(Some)
                .ok_or_else(|| Error::Usage(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Args)]
struct SolverOpts {
    /// b0, b1 or b2.
    #[arg(long, default_value = "b2")]
    branching: String,
    /// r0..r4 or a comma list of rule names.
    #[arg(long, default_value = "r4")]
    reductions: String,
    /// l0..l4.
    #[arg(long, default_value = "l4")]
    bounds: String,
    #[arg(long)]
    no_mirror: bool,
    #[arg(long)]
    no_packing: bool,
    /// Seconds per solve.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Start from a greedy cover.
    #[arg(long)]
    warm_start: bool,
}

impl SolverOpts {
    fn config(&self) -> Result<SolverConfig, Error> {
        let usage = |what: &str, v: &str| Error::Usage(format!("bad {what} {v:?}"));
        let time_limit = match self.time_limit {
            Some(t) if !(t.is_finite() && t >= 0.0) => {
                return Err(usage("time limit", &t.to_string()))
            }
            Some(t) => Some(Duration::from_secs_f64(t)),
            None => None,
        };
        Ok(SolverConfig {
            branching: Branching::parse(&self.branching)
                .ok_or_else(|| usage("branching", &self.branching))?,
            rules: RuleSet::parse(&self.reductions)
                .ok_or_else(|| usage("reductions", &self.reductions))?,
            bounds: BoundLadder::parse(&self.bounds)
                .ok_or_else(|| usage("bounds", &self.bounds))?,
            mirrors: !self.no_mirror,
            packing: !self.no_packing,
            time_limit,
            seed: self.seed,
            warm_start: self.warm_start,
        })
    }
}

#[derive(Args)]
struct OutputOpts {
    /// Cover destination (standard output if absent).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Statistics destination (standard error if absent).
    #[arg(long)]
    stats: Option<PathBuf>,
    /// Write elapsed_s=0 so runs are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_stats(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(_) => emit(path, text),
        None => {
            eprint!("{text}");
            Ok(())
        }
    }
}

fn load(input: &Path, opts: &InputOpts) -> Result<LabeledGraph, Failure> {
    read_instance(input, opts.format()?, opts.complement)
        .map_err(|e| Failure::Usage(format!("{}: {e}", input.display())))
}

/// Runs a possibly panicking solve on a big stack; panics become internal errors.
fn guarded<T: Send, F: FnOnce() -> T + Send>(f: F) -> Result<T, Failure> {
    std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| with_big_stack(f))).map_err(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "solver panicked".into());
        Failure::Internal(msg)
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Solve {
            input,
            input_opts,
            solver,
            out,
        } => {
            let cfg = solver.config()?;
            let lg = load(&input, &input_opts)?;
            let result = guarded(|| solve(&lg.graph, &cfg))?;
            emit(
                out.output.as_deref(),
                &write_cover(&lg.labels, &result.cover),
            )?;
            emit_stats(
                out.stats.as_deref(),
                &result.stats.to_kv(result.size, !out.no_timing),
            )?;
            Ok(if result.stats.completed {
                0
            } else {
                EXIT_INCOMPLETE
            })
        }
        Command::Oct {
            input,
            input_opts,
            solver,
            out,
        } => {
            let cfg = solver.config()?;
            let lg = load(&input, &input_opts)?;
            let result = guarded(|| solve_oct(&lg.graph, &cfg))?;
            emit(
                out.output.as_deref(),
                &write_cover(&lg.labels, &result.transversal),
            )?;
            let stats = result.solve.stats.to_kv(result.solve.size, !out.no_timing);
            emit_stats(out.stats.as_deref(), &stats)?;
            Ok(if result.solve.stats.completed {
                0
            } else {
                EXIT_INCOMPLETE
            })
        }
        Command::Generate {
            kind,
            n,
            p,
            trees,
            avg_degree,
            exponent,
            clauses,
            cnf,
            seed,
            output,
        } => {
            let text = match kind {
                Kind::SatGadget => {
                    let path =
                        cnf.ok_or_else(|| Failure::Usage("sat-gadget needs --cnf".into()))?;
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    let formula = parse_cnf(&text)?;
                    write_edge_list(&LabeledGraph {
                        graph: gen_sat_gadget(&formula).graph,
                        labels: gadget_labels(&formula),
                    })
                }
                Kind::Cnf => {
                    if n == 0 {
                        return Err(Failure::Usage("cnf needs --n ≥ 1".into()));
                    }
                    write_cnf(&random_3cnf_seeded(n, clauses, seed))
                }
                Kind::Gnp | Kind::Tree | Kind::Forest | Kind::PowerLaw => {
                    if kind == Kind::Gnp && !(0.0..=1.0).contains(&p) {
                        return Err(Failure::Usage(format!("p must lie in [0, 1], got {p}")));
                    }
                    if matches!(kind, Kind::PowerLaw) && exponent <= 1.0 {
                        return Err(Failure::Usage("exponent must exceed 1".into()));
                    }
                    let model = match kind {
                        Kind::Gnp => RandomModel::Gnp { n, p },
                        Kind::Tree => RandomModel::Tree { n },
                        Kind::Forest => RandomModel::Forest { n, trees },
                        _ => RandomModel::PowerLaw {
                            n,
                            avg_degree,
                            exponent,
                        },
                    };
                    write_edge_list(&LabeledGraph::numbered(gen_random(model, seed)))
                }
            };
            emit(output.as_deref(), &text)?;
            Ok(0)
        }
        Command::Ablate {
            corpus,
            grid,
            jobs,
            input_opts,
            solver,
            output,
            no_timing,
        } => {
            let base = solver.config()?;
            let cells = parse_grid(&grid)?;
            let instances = load_corpus(&corpus, input_opts.format()?, input_opts.complement)
                .map_err(|e| Failure::Usage(format!("{}: {e}", corpus.display())))?;
            for inst in &instances {
                if let Err(e) = &inst.graph {
                    eprintln!("{}: {e}", inst.name);
                }
            }
            let report = guarded(|| run_ablation(&instances, &cells, &base, jobs))?;
            emit(output.as_deref(), &report.to_csv(!no_timing))?;
            report.check_consistency().map_err(Failure::Internal)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
