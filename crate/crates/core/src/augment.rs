//! Training pairs from the sentence base: generation, filtering, seeded
//! sampling and TSV export.

use std::collections::HashSet;
use std::io::Write;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{explore, Diagnostic, Engine, SearchConfig};
use crate::types::{NliLabel, ProblemRecord};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratedPair {
    pub premise: Vec<String>,
    pub hypothesis: Vec<String>,
    /// Entail or Contradict; neutral pairs are never generated.
    pub label: NliLabel,
    pub source_id: String,
    /// Proof length from the premise.
    pub depth: usize,
}

#[derive(Debug, Error)]
pub enum AugmentError {
    #[error("fraction {0} is outside [0, 1]")]
    BadFraction(f64),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("tsv error: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AugmentConfig {
    pub depth: usize,
}

impl Default for AugmentConfig {
    fn default() -> AugmentConfig {
        AugmentConfig {
            depth: SearchConfig::default().depth,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Augmentation {
    pub pairs: Vec<GeneratedPair>,
    /// Problems whose premise produced nothing, with the reason.
    pub diagnostics: Vec<(String, Diagnostic)>,
}

fn pairs_for(
    problem: &ProblemRecord,
    engine: &Engine,
    config: &SearchConfig,
) -> Result<Vec<GeneratedPair>, Vec<Diagnostic>> {
    let (prepared, _, _) = engine.prepare(&problem.premise, &problem.hypothesis)?;
    let outcome = explore(&prepared.premise, &prepared.kb, &engine.lexicon, config);
    let premise = prepared.premise.lemmas();
    let entail = outcome.base.entailments.iter().map(|(s, p)| (s, p, NliLabel::Entail));
    let contradict = outcome
        .base
        .contradictions
        .iter()
        .map(|(s, p)| (s, p, NliLabel::Contradict));
    Ok(entail
        .chain(contradict)
        .filter(|(s, _, _)| **s != premise)
        .map(|(s, proof, label)| GeneratedPair {
            premise: premise.clone(),
            hypothesis: s.clone(),
            label,
            source_id: problem.id.clone(),
            depth: proof.len(),
        })
        .collect())
}

/// Pairs every sentence generated from each premise with that premise.
/// Duplicates across problems keep their first occurrence.
pub fn generate_pairs(problems: &[ProblemRecord], engine: &Engine, config: &AugmentConfig) -> Augmentation {
    let search = SearchConfig {
        depth: config.depth,
        ..engine.config.clone()
    };
    let results: Vec<_> = problems.par_iter().map(|p| pairs_for(p, engine, &search)).collect();
    let mut out = Augmentation::default();
    let mut seen = HashSet::new();
    for (problem, result) in problems.iter().zip(results) {
        match result {
            Ok(pairs) => {
                for pair in pairs {
                    if seen.insert((pair.premise.clone(), pair.hypothesis.clone())) {
                        out.pairs.push(pair);
                    }
                }
            }
            Err(diagnostics) => out
                .diagnostics
                .extend(diagnostics.into_iter().map(|d| (problem.id.clone(), d))),
        }
    }
    out
}

pub fn has_repeated_bigram(sentence: &[String]) -> bool {
    sentence.windows(2).any(|w| w[0] == w[1])
}

/// Keeps pairs whose premise and hypothesis both pass `keep`.
pub fn filter_pairs(pairs: Vec<GeneratedPair>, keep: impl Fn(&[String]) -> bool) -> Vec<GeneratedPair> {
    pairs
        .into_iter()
        .filter(|p| keep(&p.premise) && keep(&p.hypothesis))
        .collect()
}

/// Drops pairs with two identical adjacent lemmas on either side.
pub fn filter_repeated_bigrams(pairs: Vec<GeneratedPair>) -> Vec<GeneratedPair> {
    filter_pairs(pairs, |s| !has_repeated_bigram(s))
}

/// Seeded uniform sample of `⌊fraction · n⌋` pairs, in their original order.
pub fn sample_fraction(pairs: &[GeneratedPair], fraction: f64, seed: u64) -> Result<Vec<GeneratedPair>, AugmentError> {
    if !(0.0..=1.0).contains(&fraction) {
        return Err(AugmentError::BadFraction(fraction));
    }
    if fraction == 1.0 {
        return Ok(pairs.to_vec());
    }
    let k = (fraction * pairs.len() as f64).floor() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = rand::seq::index::sample(&mut rng, pairs.len(), k).into_vec();
    picked.sort_unstable();
    Ok(picked.into_iter().map(|i| pairs[i].clone()).collect())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PairStats {
    pub entail: usize,
    pub contradict: usize,
}

impl PairStats {
    pub fn of(pairs: &[GeneratedPair]) -> PairStats {
        let entail = pairs.iter().filter(|p| p.label == NliLabel::Entail).count();
        PairStats {
            entail,
            contradict: pairs.len() - entail,
        }
    }
}

pub const EXPORT_HEADER: [&str; 6] = [
    "pair_ID",
    "sentence_A",
    "sentence_B",
    "entailment_label",
    "source_id",
    "depth",
];

/// Writes the pairs as TSV with a header row; ids count from 1.
pub fn write_pairs<W: Write>(pairs: &[GeneratedPair], writer: W) -> Result<(), AugmentError> {
    let mut w = csv::WriterBuilder::new()
        .delimiter(b'\t')
        .quote_style(csv::QuoteStyle::Never)
        .from_writer(writer);
    w.write_record(EXPORT_HEADER)?;
    for (i, p) in pairs.iter().enumerate() {
        w.write_record([
            (i + 1).to_string(),
            p.premise.join(" "),
            p.hypothesis.join(" "),
            p.label.corpus_name().to_owned(),
            p.source_id.clone(),
            p.depth.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn export_pairs(pairs: &[GeneratedPair], destination: &Path) -> Result<(), AugmentError> {
    let file = std::fs::File::create(destination)?;
    write_pairs(pairs, std::io::BufWriter::new(file))
}
