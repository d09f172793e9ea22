//! `cantorcert` command-line driver.
//!
//! Exit status: 0 success, 1 malformed input, 2 failed certification,
//! 3 witness expansion stalled.

mod commands;

use std::process::ExitCode;

use cantorcert::exactmath::parse_rational;
use cantorcert::Rational;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "cantorcert",
    version,
    about = "Exact checks for products of middle Cantor sets"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Largest rank accepted by `gaps` and `enumerate`.
    #[arg(long, env = "CANTORCERT_RANK_LIMIT", default_value_t = 10, global = true)]
    pub rank_limit: usize,

    /// Root isolation width, as "p/q" or a decimal.
    #[arg(long, value_parser = parse_positive, default_value = "1/1000000000", global = true)]
    pub width: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Isolate every catalog threshold and compare with the printed constants.
    Thresholds,
    /// Bracket the root λ_k of (k−1)λ^k + (2k+2)λ − (k+1) and the root r_k.
    LambdaK {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        k: u64,
    },
    /// Build and check an end-to-end certificate.
    Certify {
        #[arg(value_enum)]
        kind: CertifyKind,
        #[arg(long, value_parser = parse_lambda)]
        lambda: Rational,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        k: Option<u64>,
    },
    /// Rank-m union of f_k images and its gaps.
    Gaps {
        #[arg(long, value_parser = parse_lambda)]
        lambda: Rational,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(long)]
        rank: usize,
    },
    /// Binary witness tree of interval pairs whose products contain t.
    Witness {
        #[arg(long, value_parser = parse_lambda)]
        lambda: Rational,
        #[arg(long, value_parser = parse_exact)]
        t: Rational,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=20))]
        depth: u64,
        /// Emit only the leaf pairs, as CSV.
        #[arg(long)]
        leaves_only: bool,
        /// Ranks scanned below a node before the expansion counts as stalled.
        #[arg(long, default_value_t = cantorcert::witness::DEFAULT_RANK_LIMIT)]
        scan_limit: usize,
    },
    /// List the basic intervals of one rank.
    Enumerate {
        #[arg(long)]
        rank: usize,
        #[arg(long, value_parser = parse_lambda)]
        lambda: Rational,
    },
    /// Decompose one pair and evaluate a lemma's hypotheses.
    CheckLemma {
        #[arg(value_enum)]
        lemma: Lemma,
        #[arg(long, value_parser = parse_lambda)]
        lambda: Rational,
        #[arg(long)]
        i: cantorcert::Address,
        #[arg(long)]
        j: cantorcert::Address,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        k: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CertifyKind {
    St,
    Fk,
    Circle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Lemma {
    /// Four-piece refinement of f(I, J) covers the image.
    #[value(name = "2.2")]
    Refinement,
    /// Double-cover window (L_n, R_n).
    #[value(name = "2.3")]
    DoubleCover,
    /// Four-piece refinement of f_k(I, J).
    #[value(name = "3.1")]
    PowerRefinement,
}

fn parse_exact(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_lambda(s: &str) -> Result<Rational, String> {
    let v = parse_exact(s)?;
    if cantorcert::exactmath::rational::is_lambda_in_range(&v) {
        Ok(v)
    } else {
        Err(format!("lambda = {s} is outside (0, 1/2)"))
    }
}

fn parse_positive(s: &str) -> Result<Rational, String> {
    let v = parse_exact(s)?;
    if v > Rational::from_integer(0.into()) {
        Ok(v)
    } else {
        Err(format!("width must be positive, got {s}"))
    }
}

/// Outcome of a subcommand; mapped onto the exit status.
pub enum Outcome {
    Ok,
    NotCertified,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let g = &cli.global;
    let result = match cli.command {
        Command::Thresholds => commands::thresholds(g),
        Command::LambdaK { k } => commands::lambda_k(g, k as usize),
        Command::Certify { kind, lambda, k } => commands::certify(g, kind, &lambda, k.map(|k| k as usize)),
        Command::Gaps { lambda, k, rank } => commands::gaps(g, &lambda, k as usize, rank),
        Command::Witness {
            lambda,
            t,
            depth,
            leaves_only,
            scan_limit,
        } => commands::witness(g, &lambda, &t, depth as usize, leaves_only, scan_limit),
        Command::Enumerate { rank, lambda } => commands::enumerate(g, rank, &lambda),
        Command::CheckLemma { lemma, lambda, i, j, k } => {
            commands::check_lemma(g, lemma, &lambda, &i, &j, k.map(|k| k as usize))
        }
    };
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::NotCertified) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                cantorcert::Error::ExpansionStalled { .. } => 3,
                cantorcert::Error::NotCertified(_) => 2,
                _ => 1,
            })
        }
    }
}
