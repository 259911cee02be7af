mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pdta::bench::Benchmark;
use pdta::oracle::{parse_trace, replay_detailed};
use pdta::{parse_model, pdta_reach_witness, EngineConfig, EngineError, Mode, Order, PdtaModel};

use report::RunReport;

const EXIT_NONEMPTY: u8 = 0;
const EXIT_EMPTY: u8 = 1;
const EXIT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(
    name = "pdta",
    version,
    about = "Well-nested reachability for pushdown timed automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Explore a model and report whether an accepting state is reachable
    /// with an empty stack. Exit code 0 = nonempty, 1 = empty, 2 = error.
    Run(RunArgs),
    /// Print a benchmark model in the text format.
    #[command(alias = "gen")]
    Generate {
        name: String,
        params: Vec<i64>,
        /// Write to a file instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check whether a sequence of transition indices is a feasible run.
    /// Exit code 0 = feasible, 1 = infeasible, 2 = error.
    ///
    /// Takes `MODEL TRACE`, or `TRACE --gen NAME PARAMS...` for a built-in
    /// benchmark (the trace comes first since `--gen` takes the rest).
    Replay {
        #[arg(num_args = 1..=2, value_name = "MODEL TRACE", required = true)]
        paths: Vec<PathBuf>,
        /// Use a built-in benchmark instead of a model file.
        #[arg(long = "gen", num_args = 1.., value_name = "NAME PARAMS")]
        generate: Option<Vec<String>>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Model file.
    model: Option<PathBuf>,
    /// Use a built-in benchmark instead of a file, e.g. `--gen B5 100 10`.
    #[arg(long = "gen", num_args = 1.., value_name = "NAME PARAMS")]
    generate: Option<Vec<String>>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value = "sim", value_parser = parse_mode)]
    mode: Mode,
    #[arg(long, default_value = "lifo", value_parser = parse_order)]
    order: Order,
    /// Stop as soon as an accepting state is found.
    #[arg(long)]
    stop_early: bool,
    #[arg(long, value_enum, default_value_t = StatsFormat::None)]
    stats_format: StatsFormat,
    /// Check worklist and provenance invariants during the run, then
    /// verify the final store is a fixed point.
    #[arg(long)]
    check_invariants: bool,
    /// Abort after this many seconds, reporting the pairs explored so far.
    #[arg(long, value_name = "SECONDS")]
    timeout: Option<f64>,
    /// Write a run reaching an accepting state, one transition per line.
    #[arg(long, value_name = "FILE")]
    witness: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum StatsFormat {
    Json,
    Csv,
    None,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

fn parse_order(s: &str) -> Result<Order, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Run(args) => run(args),
        Command::Generate {
            name,
            params,
            output,
        } => generate(&name, &params, output.as_deref()),
        Command::Replay { paths, generate } => replay(paths, generate),
    };
    match out {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn load(src: &Source) -> anyhow::Result<PdtaModel> {
    if let Some(words) = &src.generate {
        let b: Benchmark = words.join(" ").parse()?;
        return Ok(b.model());
    }
    let path = src.model.as_ref().expect("clap enforces one source");
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_model(&text).with_context(|| format!("in {}", path.display()))
}

fn run(args: RunArgs) -> anyhow::Result<u8> {
    let m = load(&args.source)?;
    let mut cfg = EngineConfig::new(args.mode).order(args.order);
    cfg.stop_early = args.stop_early;
    if args.check_invariants {
        cfg = cfg.checked();
    }
    if let Some(secs) = args.timeout {
        if !(secs.is_finite() && secs > 0.0) {
            bail!("--timeout must be a positive number of seconds");
        }
        cfg.timeout = Some(Duration::from_secs_f64(secs));
    }

    if args.mode == Mode::Naive {
        println!("UNSOUND MODE: naive pruning compares roots by simulation; verdicts may be wrong");
    }
    let (r, path) = match pdta_reach_witness(&m, &cfg) {
        Ok(v) => v,
        Err(EngineError::Timeout {
            elapsed,
            pairs_added,
        }) => {
            bail!(
                "timed out after {:.1} s having explored >= {pairs_added} pairs",
                elapsed.as_secs_f64()
            )
        }
        Err(e) => return Err(e.into()),
    };

    let report = RunReport::new(
        &m,
        &r,
        args.mode.name(),
        args.order.name(),
        args.check_invariants,
    );
    println!("model: {}", report.model);
    println!("mode: {}, order: {}", report.mode, report.order);
    println!("verdict: {}", if r.nonempty { "nonempty" } else { "empty" });
    println!("reachable: {}", report.reachable.join(" "));
    println!(
        "pairs: {}, roots: {}, time: {:.3} ms",
        report.pairs_added, report.roots, report.time_ms
    );
    if r.stopped_early {
        println!("stopped early: the reachable set is partial");
    }
    if args.check_invariants {
        match r.fixed_point {
            Some(true) => println!("fixed point: verified"),
            Some(false) => println!("fixed point: NOT verified"),
            None => println!("fixed point: skipped (run stopped early)"),
        }
        if r.violations.is_empty() {
            println!("invariants: ok");
        } else {
            println!("invariants: {} violation(s)", r.violations.len());
            for v in &r.violations {
                println!("  {v}");
            }
        }
    }
    match args.stats_format {
        StatsFormat::Json => println!("{}", report.to_json()?),
        StatsFormat::Csv => print!("{}", report.to_csv()?),
        StatsFormat::None => {}
    }

    if let Some(file) = &args.witness {
        let Some(path) = path else {
            bail!("no accepting state reached, so there is no witness to write");
        };
        let body: String = path.iter().map(|t| format!("{}\n", t.index())).collect();
        fs::write(file, body).with_context(|| format!("writing {}", file.display()))?;
    }
    Ok(if r.nonempty {
        EXIT_NONEMPTY
    } else {
        EXIT_EMPTY
    })
}

fn generate(name: &str, params: &[i64], output: Option<&Path>) -> anyhow::Result<u8> {
    let text = Benchmark::new(name, params)?.text();
    match output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(0)
}

fn replay(mut paths: Vec<PathBuf>, generate: Option<Vec<String>>) -> anyhow::Result<u8> {
    let trace = paths.pop().expect("clap requires a path");
    let src = match (paths.pop(), generate) {
        (None, None) => bail!("replay needs a model file or --gen after the trace"),
        (Some(_), Some(_)) => bail!("give either a model file or --gen, not both"),
        (model, generate) => Source { model, generate },
    };
    let m = load(&src)?;
    let trace = trace.as_path();
    let text = fs::read_to_string(trace).with_context(|| format!("reading {}", trace.display()))?;
    let steps = parse_trace(&text)?;
    let out = replay_detailed(&m, &steps)?;
    if out.feasible {
        println!(
            "feasible ({} steps, stack depth {})",
            out.steps,
            out.stack.len()
        );
        Ok(0)
    } else {
        println!("infeasible at step {}", out.steps);
        Ok(1)
    }
}

#[cfg(test)]
mod tests {
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        super::Cli::command().debug_assert();
    }
}
