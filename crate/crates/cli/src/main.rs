//! `flagstab`: command-line front end.
//!
//! Exit codes: 0 when the computation finished and every mandatory identity
//! held, 1 when an identity that must hold by construction failed, 2 on bad
//! input.

mod batch;
mod output;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use flagstab_core::geometry::{Model, SplitCurve};
use flagstab_core::{FlagType, Partition};

use crate::output::{Format, Outcome};
use crate::sweep::{Failure, IntRange, Method, Selection};

#[derive(Parser, Debug)]
#[command(
    name = "flagstab",
    version,
    about = "Exact Chern characters of Schur powers and Donaldson-Futaki invariants on flag bundles"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for sweeps.
    #[arg(long, global = true, env = "FLAGSTAB_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare extracted G1, G2 with the H-polynomial prediction on a grid.
    Conjecture {
        /// Ranks, e.g. `3..5` or `4`.
        #[arg(long)]
        rank: IntRange,
        /// Partition lengths, e.g. `1..3`.
        #[arg(long)]
        length: IntRange,
        /// Largest part.
        #[arg(long, default_value_t = 3)]
        parts: u32,
    },
    /// Donaldson-Futaki invariant of one test configuration.
    Futaki {
        /// Model as inline JSON or a path to a JSON file.
        #[arg(long)]
        model: String,
        /// Flag type, e.g. `3,1`.
        #[arg(long, conflicts_with = "lambda")]
        flag: Option<FlagType>,
        /// Line bundle index on the flag bundle; defaults to all ones.
        #[arg(long, requires = "flag")]
        nu: Option<Partition>,
        /// Schur index directly.
        #[arg(long, required_unless_present = "flag")]
        lambda: Option<Partition>,
        #[arg(long, default_value_t = 1)]
        alpha: u32,
        /// Use the twisted polarisation expansion even over a curve.
        #[arg(long)]
        twisted: bool,
    },
    /// Run a sweep described by a JSON config file.
    Batch { config: PathBuf },
    /// Chern character of a Schur power.
    SchurCh {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        rank: u32,
        #[arg(long, default_value_t = 2)]
        truncation: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Littlewood-Richardson coefficient, or the decomposition of `λ` over a split.
    Lr {
        #[arg(long)]
        lambda: Partition,
        #[arg(long, requires = "mu")]
        nu: Option<Partition>,
        #[arg(long, requires = "nu")]
        mu: Option<Partition>,
        /// Ranks of the two summands, e.g. `1,2`.
        #[arg(long, conflicts_with_all = ["nu", "mu"], value_parser = parse_pair)]
        ranks: Option<(u32, u32)>,
    },
    /// Binomial-sum identities over a grid of (k, n).
    Appendix {
        #[arg(long)]
        k: IntRange,
        #[arg(long)]
        n: IntRange,
        /// Evaluate the multi-index sum with these exponents instead.
        #[arg(long, value_delimiter = ',')]
        exponents: Option<Vec<u32>>,
    },
    /// Total weight of the induced action, directly and by decomposition.
    WeightCheck {
        #[arg(long)]
        genus: u32,
        /// Degrees of the line bundles making up F, e.g. `2` or `3,1`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        f_degrees: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        g_degrees: Vec<i64>,
        #[arg(long)]
        lambda: Partition,
        #[arg(long, default_value_t = 1)]
        alpha: u32,
        #[arg(long, default_value_t = 0)]
        beta: u32,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Giambelli,
    Roots,
    Both,
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two ranks `f,g`, got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

fn read_model(arg: &str) -> Result<Model, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::input(format!("cannot read model {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("invalid model: {e}")))
}

fn run(cli: Cli) -> Result<(Outcome, Option<PathBuf>, Format), Failure> {
    let mut format = cli.format.map(Format::from);
    let mut out = cli.out;
    let outcome = match cli.command {
        Command::Conjecture { rank, length, parts } => sweep::conjecture(rank, length, parts)?.into(),
        Command::Futaki {
            model,
            flag,
            nu,
            lambda,
            alpha,
            twisted,
        } => {
            let selection = match (flag, lambda) {
                (Some(flag), _) => Selection::Flag { flag, nu },
                (None, Some(lambda)) => Selection::Lambda(lambda),
                (None, None) => return Err(Failure::input("either --flag or --lambda is required")),
            };
            sweep::futaki_single(&read_model(&model)?, &selection, alpha, twisted)?
        }
        Command::Batch { config } => {
            let cfg = batch::load(&config)?;
            format = format.or(cfg.format);
            out = out.or_else(|| cfg.out.clone());
            batch::execute(cfg.task)?.into()
        }
        Command::SchurCh {
            lambda,
            rank,
            truncation,
            method,
        } => {
            let method = match method {
                MethodArg::Giambelli => Method::Giambelli,
                MethodArg::Roots => Method::Roots,
                MethodArg::Both => Method::Both,
            };
            sweep::schur_single(&lambda, rank, truncation, method)?
        }
        Command::Lr { lambda, nu, mu, ranks } => sweep::lr_single(&lambda, nu.zip(mu), ranks)?,
        Command::Appendix { k, n, exponents } => sweep::appendix(k, n, exponents.as_deref())?.into(),
        Command::WeightCheck {
            genus,
            f_degrees,
            g_degrees,
            lambda,
            alpha,
            beta,
        } => {
            let split = SplitCurve {
                genus,
                f_degrees,
                g_degrees,
            };
            sweep::weight_single(&split, &lambda, alpha, beta)?
        }
    };
    Ok((outcome, out, format.unwrap_or(Format::Json)))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let jobs = cli.jobs;
    let result = std::panic::catch_unwind(move || {
        let mut pool = rayon::ThreadPoolBuilder::new();
        if let Some(n) = jobs {
            pool = pool.num_threads(n.max(1));
        }
        let pool = pool
            .build()
            .map_err(|e| Failure::internal(format!("cannot start worker pool: {e}")))?;
        pool.install(|| run(cli)).and_then(|(outcome, out, format)| {
            output::emit(&outcome, out.as_deref(), format)?;
            Ok(outcome.failed)
        })
    });
    match result {
        Ok(Ok(false)) => ExitCode::SUCCESS,
        Ok(Ok(true)) => ExitCode::from(1),
        Ok(Err(Failure::BadInput(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(Err(Failure::Internal(msg))) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
        Err(_) => ExitCode::from(1),
    }
}
