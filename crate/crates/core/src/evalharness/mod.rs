//! Corpus ingestion, label corrections, metrics, and the hybrid
//! engine-plus-backoff pipeline.

pub mod corpus;
pub mod hybrid;
pub mod metrics;

use thiserror::Error;

pub use corpus::{apply_corrections, apply_overlay, load_corpus, parse_corpus, parse_overlay, CorrectionSummary};
pub use hybrid::{
    hybrid_classify, run_pipeline, write_traces, AlwaysNeutral, BackoffClassifier, BackoffError, BackoffOutput,
    GoldOracle, LexicalOverlap, PipelineMode, PipelineResult, Trace,
};
pub use metrics::{evaluate, render_table, EvalReport, LabelScores};

/// The bundled 40-problem test corpus.
pub const MINI_CORPUS: &str = include_str!("../../data/mini_corpus.tsv");

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("line {line}: {message}")]
    Schema { line: usize, message: String },
    #[error("overlay refers to unknown problem {0}")]
    UnknownId(String),
    #[error("no prediction for problem {0}")]
    MissingPrediction(String),
    #[error("problem {0} has no gold label")]
    MissingGold(String),
    #[error(transparent)]
    Backoff(#[from] BackoffError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("tsv error: {0}")]
    Csv(#[from] csv::Error),
}

pub fn mini_corpus() -> Vec<crate::types::ProblemRecord> {
    parse_corpus(MINI_CORPUS).expect("bundled corpus is well-formed")
}
