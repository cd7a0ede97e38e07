mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use config::{FileConfig, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("file not found: {}", .0.display())]
    MissingFile(PathBuf),
    #[error("{}: {}", .0.display(), .1)]
    Io(PathBuf, std::io::Error),
    #[error("config: {0}")]
    Config(String),
    #[error("{0}")]
    Input(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Monotonicity-based natural language inference.
#[derive(Debug, Parser)]
#[command(name = "natlog", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// TOML file with default settings; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Lexicon TSV replacing the bundled one.
    #[arg(long, global = true)]
    lexicon: Option<PathBuf>,
    /// Lexical resource TSV replacing the bundled one.
    #[arg(long, global = true)]
    resource: Option<PathBuf>,
    /// Rewrite table TSV replacing the bundled one.
    #[arg(long, global = true)]
    rewrites: Option<PathBuf>,
    /// Extra ≤/⊥ relations, one `LEQ|PERP<TAB>lhs<TAB>rhs` per line.
    #[arg(long, global = true)]
    relations: Option<PathBuf>,
    /// Search depth.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Comma-separated preprocessing steps: pass2act, existential, rewrites, all, none.
    #[arg(long, global = true)]
    transforms: Option<String>,
    /// Only emit contradictions valid in every model.
    #[arg(long, global = true)]
    strict: bool,
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the polarity of every token.
    Polarize {
        /// Sentence to polarize; omit to use --file.
        sentence: Option<String>,
        /// One sentence per line.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Classify one pair, or every problem of a corpus.
    Classify {
        premise: Option<String>,
        hypothesis: Option<String>,
        /// Corpus TSV; prints one `id<TAB>label` line per problem.
        #[arg(long, conflicts_with_all = ["premise", "hypothesis"])]
        corpus: Option<PathBuf>,
    },
    /// Print the sentence base of one premise.
    Generate {
        sentence: String,
        /// Hypothesis whose vocabulary joins the knowledge base.
        #[arg(long)]
        hypothesis: Option<String>,
    },
    /// Generate training pairs from a corpus.
    Augment {
        /// Corpus TSV; the bundled mini corpus when omitted.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Share of pairs to keep: 0.25, 0.5 or 1.0.
        #[arg(long)]
        fraction: Option<f64>,
        /// Accept any fraction in [0, 1].
        #[arg(long)]
        any_fraction: bool,
        /// Keep pairs with repeated adjacent words.
        #[arg(long)]
        no_filter: bool,
        /// Output TSV; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score the engine or the hybrid pipeline against gold labels.
    Eval {
        /// Corpus TSV; the bundled mini corpus when omitted.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Corrected-label overlay TSV.
        #[arg(long)]
        overlay: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Engine)]
        mode: Mode,
        /// Backoff for hybrid mode: neutral, overlap or gold.
        #[arg(long)]
        backoff: Option<String>,
        /// Minimum backoff confidence for an E or C verdict.
        #[arg(long)]
        threshold: Option<f64>,
        /// Write per-problem traces here.
        #[arg(long)]
        traces: Option<PathBuf>,
    },
    /// Print the knowledge base built for a pair.
    KbDump {
        premise: String,
        hypothesis: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Engine,
    Hybrid,
}

fn flag_config(cli: &Cli) -> FileConfig {
    let g = &cli.global;
    let mut f = FileConfig {
        lexicon: g.lexicon.clone(),
        resource: g.resource.clone(),
        rewrites: g.rewrites.clone(),
        relations: g.relations.clone(),
        depth: g.depth,
        strict: g.strict.then_some(true),
        transforms: g.transforms.clone(),
        seed: g.seed,
        ..FileConfig::default()
    };
    match &cli.command {
        Command::Augment { corpus, fraction, .. } => {
            f.corpus = corpus.clone();
            f.fraction = *fraction;
        }
        Command::Eval {
            corpus,
            overlay,
            backoff,
            threshold,
            ..
        } => {
            f.corpus = corpus.clone();
            f.overlay = overlay.clone();
            f.backoff = backoff.clone();
            f.threshold = *threshold;
        }
        Command::Classify { corpus, .. } => f.corpus = corpus.clone(),
        _ => {}
    }
    f
}

fn run(cli: Cli) -> Result<String, CliError> {
    let file = match &cli.global.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let config = RunConfig::resolve(file.overlay(flag_config(&cli)))?;
    match cli.command {
        Command::Polarize { sentence, file } => commands::polarize(&config, sentence, file),
        Command::Classify {
            premise, hypothesis, ..
        } => commands::classify(&config, premise, hypothesis),
        Command::Generate { sentence, hypothesis } => commands::generate(&config, &sentence, hypothesis.as_deref()),
        Command::Augment {
            any_fraction,
            no_filter,
            out,
            ..
        } => commands::augment(&config, any_fraction, !no_filter, out),
        Command::Eval { mode, traces, .. } => commands::eval(&config, mode, traces),
        Command::KbDump { premise, hypothesis } => commands::kb_dump(&config, &premise, hypothesis.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
