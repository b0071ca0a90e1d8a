//! `indet`: prefix tables, prefix graphs and string inference from the
//! command line.
//!
//! Exit codes: 0 success, 1 domain error (infeasible array, failed check,
//! length mismatch), 2 usage or parse error.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use indet_core::bench::{self, BenchConfig};
use indet_core::graph::{self, EdgeSign, GraphFormat};
use indet_core::oracle::{self, EnumerationBudget};
use indet_core::prefix_table::{self, parse_integers};
use indet_core::{reveng, Error, FeasibleArray, IndeterminateString};

#[derive(Parser)]
#[command(
    name = "indet",
    version,
    about = "Prefix tables and indeterminate-string inference"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the prefix table of a string.
    Pt {
        /// String such as "a b {a,b} c", or - for stdin.
        string: String,
    },
    /// Infer the least string whose prefix table is the given array.
    Infer {
        /// Space-separated array, or - for stdin.
        array: String,
        /// Print every step of the inference.
        #[arg(long)]
        trace: bool,
    },
    /// Check that an array is feasible.
    Check { array: String },
    /// Check that an array is the prefix table of a string.
    Verify {
        string: String,
        array: String,
        /// Also compare against the brute-force least string (small n only).
        #[arg(long)]
        oracle: bool,
    },
    /// Export the prefix graph of an array.
    Graph {
        array: String,
        /// dot or json
        #[arg(long, default_value = "dot")]
        format: String,
        /// positive, negative or both
        #[arg(long, default_value = "both")]
        sign: String,
    },
    /// Report whether an array is the prefix table of a regular string.
    Regular { array: String },
    /// Print random feasible arrays, one per line.
    Gen {
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time inference on random arrays and emit a CSV report.
    Bench {
        /// a:b:step (inclusive) or a,b,c
        #[arg(long, default_value = "10:100:10")]
        lengths: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run different lengths concurrently.
        #[arg(long)]
        parallel: bool,
    },
}

enum Failure {
    Domain(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::UnknownFlag { .. } | Error::BenchConfig(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read_arg(arg: &str) -> Result<String, Failure> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
    Ok(buf)
}

fn parse_string(arg: &str) -> Result<IndeterminateString, Failure> {
    Ok(read_arg(arg)?.parse()?)
}

/// Parse failures are usage errors, infeasibility is a domain error.
fn parse_array(arg: &str) -> Result<FeasibleArray, Failure> {
    let raw = parse_integers(&read_arg(arg)?)?;
    Ok(prefix_table::validate_feasible(&raw)?)
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Pt { string } => {
            let s = parse_string(&string)?;
            Ok(prefix_table::compute_prefix_table(&s).to_string())
        }
        Command::Infer { array, trace } => {
            let y = parse_array(&array)?;
            if trace {
                let (s, events) = reveng::infer_traced(&y);
                Ok(reveng::render_trace(&events, &s).trim_end().to_string())
            } else {
                Ok(reveng::infer(&y).to_string())
            }
        }
        Command::Check { array } => {
            let y = parse_array(&array)?;
            Ok(format!("valid (n = {})", y.len()))
        }
        Command::Verify {
            string,
            array,
            oracle,
        } => verify(&parse_string(&string)?, &parse_array(&array)?, oracle),
        Command::Graph {
            array,
            format,
            sign,
        } => {
            let format: GraphFormat = format.parse()?;
            let sign: EdgeSign = sign.parse()?;
            let g = graph::build_prefix_graph(&parse_array(&array)?);
            Ok(graph::export_graph(&g, format, sign).trim_end().to_string())
        }
        Command::Regular { array } => {
            let r = graph::is_regular(&parse_array(&array)?);
            if r.regular {
                Ok("regular".to_string())
            } else {
                Ok(format!(
                    "indeterminate-only (components: {})",
                    r.components.count()
                ))
            }
        }
        Command::Gen {
            length,
            count,
            seed,
        } => {
            if length == 0 {
                return Err(Failure::Usage("--length must be at least 1".into()));
            }
            let mut rng = bench::stream_rng(seed, length);
            let lines: Vec<String> = (0..count)
                .map(|_| bench::gen_random_feasible(length, &mut rng).to_string())
                .collect();
            Ok(lines.join("\n"))
        }
        Command::Bench {
            lengths,
            trials,
            seed,
            out,
            parallel,
        } => {
            let mut cfg = BenchConfig::new(bench::parse_lengths(&lengths)?, trials, seed);
            cfg.output = out.clone();
            cfg.parallel = parallel;
            let report = bench::run_bench(&cfg)?;
            if let Ok(slope) = bench::growth_trend(&report.rows) {
                eprintln!("log-log slope: {slope:.3}");
            }
            match out {
                Some(path) => Ok(format!("wrote {}", path.display())),
                None => Ok(report.to_csv()?.trim_end().to_string()),
            }
        }
    }
}

fn verify(s: &IndeterminateString, y: &FeasibleArray, with_oracle: bool) -> Outcome {
    let result = prefix_table::verify_prefix_table(s, y)?;
    if !result.passed() {
        return Err(Failure::Domain(result.to_string()));
    }
    let mut out = result.to_string();
    if with_oracle {
        match oracle::check_minimality(s, y, &EnumerationBudget::default()) {
            Ok(check) if check.agrees() => out.push_str("\noracle: lex-least confirmed"),
            Ok(check) => out.push_str(&format!(
                "\noracle: not lex-least on a minimum alphabet; least is {} (alphabet {})",
                check.oracle.string, check.oracle.alphabet_size
            )),
            Err(e) => out.push_str(&format!("\noracle: declined ({e})")),
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            if !text.is_empty() {
                println!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
