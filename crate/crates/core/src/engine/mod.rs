//! Generation and search: replacement-based entailments, contradiction
//! rules, DFS, and end-to-end classification.

pub mod contradict;
pub mod generate;
pub mod search;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use contradict::generate_contradictions;
pub use generate::{generate_entailments, Candidate};
pub use search::{explore, search, sentence_equivalent, SearchConfig, SearchOutcome, SentenceBase};

use crate::kb::{build_kb_with, KnowledgeBase, LexicalResource};
use crate::polarizer::{polarize, PolarizedSentence};
use crate::preprocess::{preprocess, RewriteTable, TransformConfig};
use crate::syntax::{parse_tokens, Lexicon, ParseError};
use crate::types::{NliLabel, ProblemRecord, Proof, Relation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Diagnostic {
    PremiseParse(String),
    HypothesisParse(String),
    Kb(String),
    CapExceeded(usize),
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::PremiseParse(m) => write!(f, "premise not parsed: {m}"),
            Diagnostic::HypothesisParse(m) => write!(f, "hypothesis not parsed: {m}"),
            Diagnostic::Kb(m) => write!(f, "knowledge base: {m}"),
            Diagnostic::CapExceeded(n) => write!(f, "sentence base exceeded {n} sentences"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub label: NliLabel,
    pub proof: Option<Proof>,
    pub premise: Vec<String>,
    pub hypothesis: Vec<String>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Everything needed to classify problems: lexicon, resource, rewrite
/// table, user relations and configuration.
#[derive(Debug, Clone)]
pub struct Engine {
    pub lexicon: Lexicon,
    pub resource: LexicalResource,
    pub rewrites: RewriteTable,
    pub extra: Vec<Relation>,
    pub config: SearchConfig,
    pub transforms: TransformConfig,
}

impl Default for Engine {
    fn default() -> Engine {
        Engine {
            lexicon: Lexicon::bundled(),
            resource: LexicalResource::bundled(),
            rewrites: RewriteTable::bundled(),
            extra: Vec::new(),
            config: SearchConfig::default(),
            transforms: TransformConfig::default(),
        }
    }
}

/// A premise prepared for search.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub premise: PolarizedSentence,
    pub kb: KnowledgeBase,
}

impl Engine {
    pub fn lemmas(&self, raw: &str) -> Vec<String> {
        preprocess(raw, &self.lexicon, &self.transforms, &self.rewrites)
            .into_iter()
            .map(|t| t.lemma)
            .collect()
    }

    /// Preprocesses, parses and polarizes one sentence.
    pub fn polarize(&self, raw: &str) -> Result<PolarizedSentence, ParseError> {
        let tokens = preprocess(raw, &self.lexicon, &self.transforms, &self.rewrites);
        parse_tokens(&tokens, &self.lexicon).map(|d| polarize(&d))
    }

    /// Parses the premise and builds the pair's knowledge base.
    pub fn prepare(
        &self,
        premise: &str,
        hypothesis: &str,
    ) -> Result<(Prepared, Vec<String>, Vec<Diagnostic>), Vec<Diagnostic>> {
        let mut diagnostics = Vec::new();
        let p = self
            .polarize(premise)
            .map_err(|e| vec![Diagnostic::PremiseParse(e.to_string())])?;
        let h_lemmas = self.lemmas(hypothesis);
        let h_parse = match self.polarize(hypothesis) {
            Ok(h) => Some(h),
            Err(e) => {
                diagnostics.push(Diagnostic::HypothesisParse(e.to_string()));
                None
            }
        };
        let kb = build_kb_with(&p, &h_lemmas, h_parse.as_ref(), &self.resource, &self.extra)
            .map_err(|e| vec![Diagnostic::Kb(e.to_string())])?;
        Ok((Prepared { premise: p, kb }, h_lemmas, diagnostics))
    }

    /// Full pipeline for one problem. Parse failures give Neutral with a
    /// diagnostic.
    pub fn classify(&self, problem: &ProblemRecord) -> Classification {
        let neutral = |diagnostics| Classification {
            label: NliLabel::Neutral,
            proof: None,
            premise: self.lemmas(&problem.premise),
            hypothesis: self.lemmas(&problem.hypothesis),
            diagnostics,
        };
        let (prepared, hypothesis, mut diagnostics) = match self.prepare(&problem.premise, &problem.hypothesis) {
            Ok(x) => x,
            Err(d) => return neutral(d),
        };
        if diagnostics.iter().any(|d| matches!(d, Diagnostic::HypothesisParse(_))) {
            return neutral(diagnostics);
        }
        let outcome = search(
            &prepared.premise,
            &hypothesis,
            &prepared.kb,
            &self.lexicon,
            &self.config,
        );
        if outcome.cap_exceeded {
            diagnostics.push(Diagnostic::CapExceeded(self.config.max_generated));
        }
        Classification {
            label: outcome.label,
            proof: outcome.proof,
            premise: prepared.premise.lemmas(),
            hypothesis,
            diagnostics,
        }
    }
}

/// One-shot classification with the bundled lexicon and rewrite table.
pub fn classify(
    problem: &ProblemRecord,
    resource: &LexicalResource,
    config: &SearchConfig,
    transforms: &TransformConfig,
) -> Classification {
    let engine = Engine {
        resource: resource.clone(),
        config: config.clone(),
        transforms: *transforms,
        ..Engine::default()
    };
    engine.classify(problem)
}
