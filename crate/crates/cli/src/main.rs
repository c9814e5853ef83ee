//! `moralframe`: score fundraising appeals along moral microframe axes and
//! reproduce the associated descriptive, regression, and figure tables.
//!
//! Subcommands: `score`, `describe`, `fit`, `figdata`. Every command writes
//! plain TSV tables plus a JSON run manifest into `--out`, deterministically.
//! Exit codes: 0 success, 1 usage error, 2 missing or unreadable input,
//! 3 empty or degenerate data, 4 numerical failure.

mod commands;
mod config;
mod error;
mod manifest;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::{parse_models, PartialConfig};
use error::CliError;
use moralframe_core::{CanonicalCategory, Frame};

#[derive(Parser)]
#[command(
    name = "moralframe",
    version,
    about = "Moral-framing analytics for fundraising appeals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score all appeals and comments on the care, fairness, and loyalty axes
    Score(CommonArgs),
    /// Per-category descriptive statistics on untransformed scales
    Describe(CommonArgs),
    /// Fit the interaction-term regression models
    Fit(CommonArgs),
    /// Emit the group and donation-position tables behind the figures
    Figdata(CommonArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Score(_) => "score",
            Command::Describe(_) => "describe",
            Command::Fit(_) => "fit",
            Command::Figdata(_) => "figdata",
        }
    }

    fn args(&self) -> &CommonArgs {
        match self {
            Command::Score(a) | Command::Describe(a) | Command::Fit(a) | Command::Figdata(a) => a,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Flat key = value config file; command-line flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    /// GloVe-style embedding text file, optionally gzipped
    #[arg(long)]
    embeddings: Option<PathBuf>,
    /// Seed lexicon file (default: bundled moral-foundations pools)
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Valence lexicon TSV (default: bundled)
    #[arg(long)]
    sentiment_lexicon: Option<PathBuf>,
    /// Source field holding a precomputed sentiment compound in [-1, 1]
    #[arg(long)]
    sentiment_column: Option<String>,
    /// JSONL dataset in the canonical schema (or adapted via --mapping)
    #[arg(long)]
    data: Option<PathBuf>,
    /// Field-mapping file: `canonical_field = source.dot.path` lines
    #[arg(long)]
    mapping: Option<PathBuf>,
    /// Output directory for tables and the run manifest
    #[arg(long)]
    out: Option<PathBuf>,
    /// Expected embedding dimension; 0 infers from the file (default 200)
    #[arg(long)]
    dim: Option<usize>,
    /// Comma-separated model ids to fit, e.g. 1,2,3
    #[arg(long)]
    models: Option<String>,
    /// Restrict the figure tables to one frame: care, fairness, or loyalty
    #[arg(long)]
    frame: Option<String>,
    /// Category filter for the comment analyses (default Emergency)
    #[arg(long)]
    category: Option<String>,
    /// Donation-count filter for the position curve (default 100)
    #[arg(long)]
    min_donations: Option<usize>,
    /// Last donation position to aggregate (default: --min-donations)
    #[arg(long)]
    max_position: Option<usize>,
    /// Compound score at or above which an appeal is positive (default 0.05)
    #[arg(long)]
    positive_threshold: Option<f64>,
    /// Compound score at or below which an appeal is negative (default -0.05)
    #[arg(long)]
    negative_threshold: Option<f64>,
    /// Drop the nine category-by-frame interaction columns
    #[arg(long)]
    no_interactions: bool,
    /// RNG seed, recorded in the manifest for synthetic-data tooling
    #[arg(long)]
    seed: Option<u64>,
}

impl CommonArgs {
    fn to_partial(&self) -> Result<PartialConfig, CliError> {
        let frame: Option<Frame> = match &self.frame {
            Some(text) => Some(
                text.parse()
                    .map_err(|_| CliError::Usage(format!("--frame: unknown frame {text:?}")))?,
            ),
            None => None,
        };
        let category: Option<CanonicalCategory> =
            match &self.category {
                Some(text) => Some(text.parse().map_err(|_| {
                    CliError::Usage(format!("--category: unknown category {text:?}"))
                })?),
                None => None,
            };
        let models = match &self.models {
            Some(text) => Some(parse_models(text)?),
            None => None,
        };
        Ok(PartialConfig {
            embeddings: self.embeddings.clone(),
            lexicon: self.lexicon.clone(),
            sentiment_lexicon: self.sentiment_lexicon.clone(),
            sentiment_column: self.sentiment_column.clone(),
            data: self.data.clone(),
            mapping: self.mapping.clone(),
            out: self.out.clone(),
            dim: self.dim,
            models,
            frame,
            category,
            min_donations: self.min_donations,
            max_position: self.max_position,
            positive_threshold: self.positive_threshold,
            negative_threshold: self.negative_threshold,
            include_interactions: if self.no_interactions {
                Some(false)
            } else {
                None
            },
            seed: self.seed,
        })
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let args = cli.command.args();
    let mut partial = args.to_partial()?;
    if let Some(path) = &args.config {
        partial = partial.or(PartialConfig::from_file(path)?);
    }
    let config = partial.resolve()?;
    match cli.command.name() {
        "score" => commands::cmd_score(&config),
        "describe" => commands::cmd_describe(&config),
        "fit" => commands::cmd_fit(&config),
        "figdata" => commands::cmd_figdata(&config),
        _ => unreachable!(),
    }
}
