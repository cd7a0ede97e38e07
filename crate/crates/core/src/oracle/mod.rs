//! Finite-model semantics used to check the engine from the outside:
//! sentences are evaluated in small models that respect the KB.

pub mod eval;
pub mod model;
pub mod sample;

use thiserror::Error;

pub use eval::{eval_sentence, eval_with_restrictors, presuppositions_hold, quantify};
pub use model::{FiniteModel, Mask, SymbolKind, Vocabulary, MAX_DOMAIN};
pub use sample::{
    contradicts_under, entails_under, enumerate_models, find_model, model_count, models_satisfying, OracleOptions,
    Verdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("no interpretation for `{0}`")]
    UninterpretedLemma(String),
    #[error("no model satisfies the knowledge base")]
    UnsatisfiableKb,
    #[error("cannot evaluate: {0}")]
    Unsupported(String),
}
