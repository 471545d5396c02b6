//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 search exhausted,
//! 3 invalid protocol, 4 precondition violated. `lemmas` exits 1 when a
//! property fails.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use iecc_core::budget::{deltas, DeltaReport};
use iecc_core::harness::{
    builtin_file, builtin_protocol, load_protocol, run, verify_lemmas, BuiltinParams,
    LemmaParams, LoadedProtocol, RunConfig,
};
use iecc_core::rational::{format_rational, parse_rational, Rational};
use iecc_core::{Error, SectionSplit};
use serde_json::json;

const EXIT_USAGE: u8 = 1;
const EXIT_INVALID_PROTOCOL: u8 = 3;

#[derive(Parser)]
#[command(name = "iecc", version, about = "Attack simulator for non-adaptive interactive protocols")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mount the cheapest attack on a protocol and print a JSON report.
    Run(RunArgs),
    /// Print the attack-cost fractions for a section split.
    Budget {
        /// Round counts A1,B1,A2,B2.
        #[arg(long, value_delimiter = ',', required = true)]
        split: Vec<usize>,
    },
    /// Check the combinatorial lemmas and print a JSON report.
    Lemmas(LemmaArgs),
    /// Write a built-in protocol to a file.
    Gen {
        #[command(flatten)]
        builtin: BuiltinArgs,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct BuiltinArgs {
    /// codebook-silent, codebook-echo, prg or repeat.
    #[arg(long)]
    builtin: String,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Seed of the prg family.
    #[arg(long, default_value_t = 0)]
    prg_seed: u64,
    /// Explicit schedule, e.g. AABAB.
    #[arg(long)]
    schedule: Option<String>,
    /// Keep only the first SIZE inputs.
    #[arg(long)]
    size: Option<usize>,
}

impl BuiltinArgs {
    fn params(&self) -> BuiltinParams {
        BuiltinParams {
            n: self.n,
            k: self.k,
            seed: self.prg_seed,
            schedule: self.schedule.clone(),
            size: self.size,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    protocol: Option<PathBuf>,
    #[arg(long)]
    builtin: Option<String>,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    prg_seed: u64,
    #[arg(long)]
    schedule: Option<String>,
    #[arg(long)]
    size: Option<usize>,
    #[arg(long, default_value = "1/8", value_parser = rational)]
    eps: Rational,
    /// Seed for sampled feedback words.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Feedback samples per candidate when exhaustive search is too large.
    #[arg(long, default_value_t = iecc_core::attacks::DEFAULT_BUDGET)]
    budget: u64,
    /// Do not fall back to the one-third attack.
    #[arg(long)]
    no_fallback: bool,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LemmaArgs {
    /// Family size for the counting checks.
    #[arg(long, default_value_t = 32)]
    k: usize,
    /// String length for the counting checks.
    #[arg(long, default_value_t = 64)]
    len: usize,
    /// Pair-count eps; repeat for several.
    #[arg(long, value_parser = rational)]
    eps: Vec<Rational>,
    #[arg(long, default_value = "1/16", value_parser = rational)]
    triple_eps: Rational,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Exhaustive merge check up to this word length.
    #[arg(long, default_value_t = 8)]
    merge_len: usize,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let invalid = e
                .downcast_ref::<Error>()
                .is_some_and(|e| matches!(e, Error::Load { .. }));
            ExitCode::from(if invalid { EXIT_INVALID_PROTOCOL } else { EXIT_USAGE })
        }
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Run(args) => run_command(args),
        Command::Budget { split } => {
            let [a1, b1, a2, b2] = split[..] else {
                bail!("--split takes four counts");
            };
            let split = SectionSplit::from_counts(a1, b1, a2, b2);
            let n = split.n();
            let triple = deltas(&split, n)?;
            let (attack, bound) = triple.minimum();
            let out = json!({
                "split": split,
                "n": n,
                "deltas": DeltaReport::from(&triple),
                "selected_attack": attack,
                "bound": format_rational(&bound),
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(0)
        }
        Command::Lemmas(args) => {
            let mut params = LemmaParams {
                family_k: args.k,
                family_len: args.len,
                triple_eps: args.triple_eps,
                trials: args.trials,
                seed: args.seed,
                merge_max_len: args.merge_len,
                ..LemmaParams::default()
            };
            if !args.eps.is_empty() {
                params.pair_eps = args.eps;
            }
            let report = verify_lemmas(&params);
            print!("{}", report.to_json());
            Ok(if report.all_passed { 0 } else { EXIT_USAGE })
        }
        Command::Gen { builtin, out } => {
            let file = builtin_file(&builtin.builtin, &builtin.params())?;
            let mut text = serde_json::to_string_pretty(&file)?;
            text.push('\n');
            fs::write(&out, text).with_context(|| format!("writing {}", out.display()))?;
            Ok(0)
        }
    }
}

fn run_command(args: RunArgs) -> anyhow::Result<u8> {
    let loaded: LoadedProtocol = match (&args.protocol, &args.builtin) {
        (Some(path), _) => load_protocol(path)?,
        (None, Some(name)) => {
            let params = BuiltinParams {
                n: args.n,
                k: args.k,
                seed: args.prg_seed,
                schedule: args.schedule.clone(),
                size: args.size,
            };
            builtin_protocol(name, &params)?
        }
        (None, None) => bail!("one of --protocol or --builtin is required"),
    };
    let config = RunConfig {
        eps: args.eps,
        seed: args.seed,
        budget: args.budget,
        fallback: !args.no_fallback,
    };
    let report = run(&loaded, &config)?;
    let text = report.to_json();
    match &args.out {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(report.status.exit_code() as u8)
}
