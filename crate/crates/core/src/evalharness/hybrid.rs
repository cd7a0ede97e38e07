//! Backoff classifiers, the hybrid decision rule and the batch pipeline.

use std::collections::{HashMap, HashSet};
use std::io::Write;

use rayon::prelude::*;
use thiserror::Error;

use super::metrics::{evaluate, EvalReport};
use super::HarnessError;
use crate::engine::Engine;
use crate::types::{NliLabel, ProblemRecord};

#[derive(Debug, Clone, PartialEq)]
pub struct BackoffOutput {
    pub label: NliLabel,
    /// Confidence per label, indexed by `NliLabel::index`; sums to 1.
    pub confidence: [f64; 3],
}

impl BackoffOutput {
    /// `label` with confidence `c`, the rest split evenly.
    pub fn peaked(label: NliLabel, c: f64) -> BackoffOutput {
        let mut confidence = [(1.0 - c) / 2.0; 3];
        confidence[label.index()] = c;
        BackoffOutput { label, confidence }
    }

    pub fn top_confidence(&self) -> f64 {
        self.confidence[self.label.index()]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("backoff classifier failed: {0}")]
pub struct BackoffError(pub String);

/// A statistical classifier consulted when the engine says Neutral.
pub trait BackoffClassifier: Sync {
    fn name(&self) -> &str;
    fn classify(&self, premise: &str, hypothesis: &str) -> Result<BackoffOutput, BackoffError>;
}

pub struct AlwaysNeutral;

impl BackoffClassifier for AlwaysNeutral {
    fn name(&self) -> &str {
        "neutral"
    }

    fn classify(&self, _: &str, _: &str) -> Result<BackoffOutput, BackoffError> {
        Ok(BackoffOutput::peaked(NliLabel::Neutral, 1.0))
    }
}

/// Word-overlap scorer: a negation mismatch suggests Contradict, high
/// overlap suggests Entail.
pub struct LexicalOverlap;

const NEGATORS: &[&str] = &["not", "no", "nobody", "nothing", "never", "n't", "none"];

fn words(s: &str) -> Vec<String> {
    s.split(|c: char| !c.is_alphanumeric() && c != '\'')
        .filter(|w| !w.is_empty())
        .map(str::to_lowercase)
        .collect()
}

impl BackoffClassifier for LexicalOverlap {
    fn name(&self) -> &str {
        "overlap"
    }

    fn classify(&self, premise: &str, hypothesis: &str) -> Result<BackoffOutput, BackoffError> {
        let p = words(premise);
        let h = words(hypothesis);
        let pset: HashSet<&str> = p.iter().map(String::as_str).collect();
        let overlap = if h.is_empty() {
            0.0
        } else {
            h.iter().filter(|w| pset.contains(w.as_str())).count() as f64 / h.len() as f64
        };
        let negations = |ws: &[String]| ws.iter().filter(|w| NEGATORS.contains(&w.as_str())).count();
        let out = if negations(&p) != negations(&h) && overlap >= 0.5 {
            BackoffOutput::peaked(NliLabel::Contradict, 0.5 + overlap / 2.0)
        } else if overlap >= 0.8 {
            BackoffOutput::peaked(NliLabel::Entail, overlap)
        } else {
            BackoffOutput::peaked(NliLabel::Neutral, 1.0 - overlap / 2.0)
        };
        Ok(out)
    }
}

/// Answers with the gold label, for testing the hybrid path.
pub struct GoldOracle {
    gold: HashMap<(String, String), NliLabel>,
}

impl GoldOracle {
    pub fn new(problems: &[ProblemRecord]) -> GoldOracle {
        GoldOracle {
            gold: problems
                .iter()
                .filter_map(|p| p.gold.map(|g| ((p.premise.clone(), p.hypothesis.clone()), g)))
                .collect(),
        }
    }
}

impl BackoffClassifier for GoldOracle {
    fn name(&self) -> &str {
        "gold"
    }

    fn classify(&self, premise: &str, hypothesis: &str) -> Result<BackoffOutput, BackoffError> {
        self.gold
            .get(&(premise.to_owned(), hypothesis.to_owned()))
            .map(|g| BackoffOutput::peaked(*g, 1.0))
            .ok_or_else(|| BackoffError(format!("no gold label for {premise:?} / {hypothesis:?}")))
    }
}

/// Keeps an engine Entail or Contradict. Otherwise asks the backoff and
/// turns an Entail or Contradict with confidence below `threshold` into
/// Neutral.
pub fn hybrid_classify(
    problem: &ProblemRecord,
    engine_label: NliLabel,
    backoff: &dyn BackoffClassifier,
    threshold: f64,
) -> Result<NliLabel, BackoffError> {
    if engine_label != NliLabel::Neutral {
        return Ok(engine_label);
    }
    let out = backoff.classify(&problem.premise, &problem.hypothesis)?;
    if out.label != NliLabel::Neutral && out.top_confidence() < threshold {
        Ok(NliLabel::Neutral)
    } else {
        Ok(out.label)
    }
}

pub enum PipelineMode<'a> {
    Engine,
    Hybrid {
        backoff: &'a dyn BackoffClassifier,
        threshold: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub id: String,
    pub gold: Option<NliLabel>,
    pub engine: NliLabel,
    pub predicted: NliLabel,
    pub proof: Option<String>,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineResult {
    pub report: EvalReport,
    pub traces: Vec<Trace>,
}

impl PipelineResult {
    pub fn predictions(&self) -> HashMap<String, NliLabel> {
        self.traces.iter().map(|t| (t.id.clone(), t.predicted)).collect()
    }
}

/// Classifies every problem in parallel and scores the result.
pub fn run_pipeline(
    corpus: &[ProblemRecord],
    engine: &Engine,
    mode: &PipelineMode,
) -> Result<PipelineResult, HarnessError> {
    let traces: Result<Vec<Trace>, HarnessError> = corpus
        .par_iter()
        .map(|problem| {
            let c = engine.classify(problem);
            let predicted = match mode {
                PipelineMode::Engine => c.label,
                PipelineMode::Hybrid { backoff, threshold } => hybrid_classify(problem, c.label, *backoff, *threshold)?,
            };
            Ok(Trace {
                id: problem.id.clone(),
                gold: problem.gold,
                engine: c.label,
                predicted,
                proof: c.proof.map(|p| p.trace()),
                diagnostics: c.diagnostics.iter().map(ToString::to_string).collect(),
            })
        })
        .collect();
    let traces = traces?;
    let predictions = traces.iter().map(|t| (t.id.clone(), t.predicted)).collect();
    let report = evaluate(&predictions, corpus)?;
    Ok(PipelineResult { report, traces })
}

/// TSV with one row per problem; multi-line proofs are joined with ` | `.
pub fn write_traces<W: Write>(traces: &[Trace], writer: W) -> Result<(), HarnessError> {
    let mut w = csv::WriterBuilder::new()
        .delimiter(b'\t')
        .quote_style(csv::QuoteStyle::Never)
        .from_writer(writer);
    w.write_record(["pair_ID", "gold", "engine", "predicted", "proof", "diagnostics"])?;
    for t in traces {
        w.write_record([
            t.id.clone(),
            t.gold.map(|g| g.corpus_name().to_owned()).unwrap_or_default(),
            t.engine.corpus_name().to_owned(),
            t.predicted.corpus_name().to_owned(),
            t.proof.as_deref().map(|p| p.replace('\n', " | ")).unwrap_or_default(),
            t.diagnostics.join("; ").replace(['\t', '\n'], " "),
        ])?;
    }
    w.flush()?;
    Ok(())
}
