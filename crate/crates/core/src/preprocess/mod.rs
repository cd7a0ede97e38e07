//! Normalization before parsing: tagging, lemmatization and the three
//! sentence transformations.

pub mod lemmatize;
pub mod tagger;
pub mod transforms;

use serde::{Deserialize, Serialize};

pub use lemmatize::{lemmatize, Lemmatizer};
pub use tagger::{tag_sentence, tokenize, Tag, Tagged};
pub use transforms::{existential_to_base, lexical_rewrites, passive_to_active, RewriteError, RewriteTable};

use crate::syntax::Lexicon;
use crate::types::Token;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformConfig {
    pub enable_pass2act: bool,
    pub enable_existential: bool,
    pub enable_lexical_rewrites: bool,
}

impl Default for TransformConfig {
    fn default() -> TransformConfig {
        TransformConfig::all()
    }
}

impl TransformConfig {
    pub fn all() -> TransformConfig {
        TransformConfig {
            enable_pass2act: true,
            enable_existential: true,
            enable_lexical_rewrites: true,
        }
    }

    pub fn none() -> TransformConfig {
        TransformConfig {
            enable_pass2act: false,
            enable_existential: false,
            enable_lexical_rewrites: false,
        }
    }

    /// Parses a comma-separated list drawn from `pass2act`, `existential`,
    /// `rewrites`, `all` and `none`.
    pub fn parse_list(spec: &str) -> Result<TransformConfig, String> {
        let mut cfg = TransformConfig::none();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item {
                "all" => cfg = TransformConfig::all(),
                "none" => cfg = TransformConfig::none(),
                "pass2act" => cfg.enable_pass2act = true,
                "existential" => cfg.enable_existential = true,
                "rewrites" => cfg.enable_lexical_rewrites = true,
                other => return Err(format!("unknown transformation {other:?}")),
            }
        }
        Ok(cfg)
    }
}

/// Raw sentence to fused lemma tokens, applying the enabled transformations
/// (rewrites, then existentials, then passives).
pub fn preprocess(raw: &str, lexicon: &Lexicon, config: &TransformConfig, rewrites: &RewriteTable) -> Vec<Token> {
    let mut tagged = tag_sentence(raw, lexicon);
    if config.enable_lexical_rewrites {
        tagged = lexical_rewrites(&tagged, rewrites);
    }
    if config.enable_existential {
        tagged = existential_to_base(&tagged);
    }
    if config.enable_pass2act {
        tagged = passive_to_active(&tagged);
    }
    let lemmas: Vec<String> = tagged.iter().map(|t| t.token.lemma.clone()).collect();
    let fused = lexicon.fuse(&lemmas);
    // Surfaces survive only where fusion left the token count unchanged.
    if fused.len() == tagged.len() {
        tagged
            .into_iter()
            .enumerate()
            .map(|(i, t)| Token::new(t.token.lemma, t.token.surface, i))
            .collect()
    } else {
        Token::from_lemmas(&fused)
    }
}

/// Lemma strings of [`preprocess`].
pub fn preprocess_lemmas(
    raw: &str,
    lexicon: &Lexicon,
    config: &TransformConfig,
    rewrites: &RewriteTable,
) -> Vec<String> {
    preprocess(raw, lexicon, config, rewrites)
        .into_iter()
        .map(|t| t.lemma)
        .collect()
}
