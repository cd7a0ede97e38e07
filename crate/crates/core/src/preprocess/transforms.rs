//! Pre-parse normalizations over tagged token sequences.

use thiserror::Error;

use super::tagger::{Tag, Tagged};
use crate::types::Token;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("rewrite table line {line}: {message}")]
pub struct RewriteError {
    pub line: usize,
    pub message: String,
}

/// `match phrase → replacement phrase` rows, applied left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RewriteTable {
    rules: Vec<(Vec<String>, Vec<String>)>,
}

const BUNDLED_REWRITES: &str = include_str!("../../data/rewrites.tsv");

impl RewriteTable {
    pub fn bundled() -> RewriteTable {
        RewriteTable::from_tsv(BUNDLED_REWRITES).expect("bundled rewrite table is well-formed")
    }

    pub fn from_tsv(text: &str) -> Result<RewriteTable, RewriteError> {
        let mut rules = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            let [from, to] = cols[..] else {
                return Err(RewriteError {
                    line: i + 1,
                    message: format!("expected 2 columns, found {}", cols.len()),
                });
            };
            let from: Vec<String> = from.split_whitespace().map(str::to_lowercase).collect();
            let to: Vec<String> = to.split_whitespace().map(str::to_lowercase).collect();
            if from.is_empty() || to.is_empty() {
                return Err(RewriteError {
                    line: i + 1,
                    message: "empty phrase".into(),
                });
            }
            rules.push((from, to));
        }
        // Longest match first.
        rules.sort_by_key(|r| std::cmp::Reverse(r.0.len()));
        Ok(RewriteTable { rules })
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

fn tagged_like(lemma: &str, tag: Tag, surface_of: &Tagged) -> Tagged {
    Tagged {
        token: Token::new(lemma, surface_of.token.surface.clone(), surface_of.token.index),
        tag,
    }
}

/// Table-driven substitutions. Replacement tokens are tagged from their
/// position (first token a determiner, rest nouns).
pub fn lexical_rewrites(sentence: &[Tagged], table: &RewriteTable) -> Vec<Tagged> {
    let mut out = Vec::with_capacity(sentence.len());
    let mut i = 0;
    'outer: while i < sentence.len() {
        for (from, to) in &table.rules {
            let n = from.len();
            if i + n <= sentence.len()
                && sentence[i..i + n]
                    .iter()
                    .zip(from)
                    .all(|(t, f)| t.lemma() == f || t.token.surface == *f)
            {
                for (k, word) in to.iter().enumerate() {
                    let tag = if k == 0 && to.len() > 1 { Tag::Det } else { Tag::Noun };
                    out.push(tagged_like(word, tag, &sentence[i]));
                }
                i += n;
                continue 'outer;
            }
        }
        out.push(sentence[i].clone());
        i += 1;
    }
    out
}

/// `there be NP X` → `NP be X`. The noun phrase ends before the first
/// present participle, or after the first noun when there is none.
pub fn existential_to_base(sentence: &[Tagged]) -> Vec<Tagged> {
    if sentence.len() < 3 || sentence[0].tag != Tag::There || sentence[1].tag != Tag::Be {
        return sentence.to_vec();
    }
    let rest = &sentence[2..];
    let split = match rest.iter().position(|t| t.tag == Tag::Vbg) {
        Some(j) if j > 0 => j,
        Some(_) => return sentence.to_vec(),
        None => match rest.iter().position(|t| t.tag == Tag::Noun) {
            Some(k) => k + 1,
            None => return sentence.to_vec(),
        },
    };
    let mut out = rest[..split].to_vec();
    out.push(sentence[1].clone());
    out.extend_from_slice(&rest[split..]);
    out
}

/// `NP₁ be (being) V-en (by NP₂)` → `NP₂ V NP₁`, with `a person` as the
/// agent when the by-phrase is missing.
pub fn passive_to_active(sentence: &[Tagged]) -> Vec<Tagged> {
    let Some(v) = sentence.iter().position(|t| t.tag == Tag::Vbn) else {
        return sentence.to_vec();
    };
    let mut b = v;
    while b > 0 && sentence[b - 1].tag == Tag::Be {
        b -= 1;
    }
    if b == v || b == 0 {
        return sentence.to_vec();
    }
    let patient = &sentence[..b];
    let verb = Tagged {
        tag: Tag::Verb,
        ..sentence[v].clone()
    };
    let after = &sentence[v + 1..];
    let mut out = Vec::new();
    match after.first() {
        Some(t) if t.tag == Tag::By && after.len() > 1 => {
            out.extend_from_slice(&after[1..]);
            out.push(verb);
            out.extend_from_slice(patient);
        }
        _ => {
            out.push(tagged_like("a", Tag::Det, &sentence[v]));
            out.push(tagged_like("person", Tag::Noun, &sentence[v]));
            out.push(verb);
            out.extend_from_slice(patient);
            out.extend_from_slice(after);
        }
    }
    out
}
