//! Arrow tagging: projects polarity from the root of a derivation down to
//! every constituent and token.

use std::ops::Range;

use serde_json::{json, Value};
use thiserror::Error;

use crate::syntax::{Category, Derivation};
use crate::types::{compose, Polarity, Token};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constituent {
    pub span: Range<usize>,
    pub category: Category,
    pub polarity: Polarity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizedSentence {
    pub tokens: Vec<Token>,
    pub token_polarity: Vec<Polarity>,
    /// Pre-order, aligned with `source.constituents()`.
    pub constituents: Vec<Constituent>,
    pub source: Derivation,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolarizeError {
    #[error("span {start}..{end} is not a constituent")]
    NotAConstituent { start: usize, end: usize },
    #[error("malformed polarized text near {0:?}")]
    BadRendering(String),
}

/// Polarities of every node in pre-order.
fn node_polarities(derivation: &Derivation) -> Vec<Polarity> {
    fn walk(node: &Derivation, pol: Polarity, out: &mut Vec<Polarity>) {
        out.push(pol);
        match node {
            Derivation::Leaf { .. } => {}
            Derivation::Unary { child, mono, .. } => walk(child, compose(pol, *mono), out),
            Derivation::Apply { func, arg, .. } => {
                let arg_pol = compose(pol, func.cat().mono().expect("function category"));
                // Pre-order follows surface order, so visit children the same way.
                for child in node.children_in_order() {
                    if std::ptr::eq(child, func.as_ref()) {
                        walk(func, pol, out);
                    } else {
                        walk(arg, arg_pol, out);
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    walk(derivation, Polarity::Up, &mut out);
    out
}

pub fn polarize(derivation: &Derivation) -> PolarizedSentence {
    let pols = node_polarities(derivation);
    let nodes = derivation.constituents();
    let mut token_polarity = Vec::with_capacity(derivation.len());
    let constituents: Vec<Constituent> = nodes
        .iter()
        .zip(&pols)
        .map(|((span, node), &polarity)| {
            if matches!(node, Derivation::Leaf { .. }) {
                token_polarity.push(polarity);
            }
            Constituent {
                span: span.clone(),
                category: node.cat().clone(),
                polarity,
            }
        })
        .collect();
    PolarizedSentence {
        tokens: derivation.leaves().into_iter().cloned().collect(),
        token_polarity,
        constituents,
        source: derivation.clone(),
    }
}

impl PolarizedSentence {
    pub fn lemmas(&self) -> Vec<String> {
        self.tokens.iter().map(|t| t.lemma.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Outermost constituent covering exactly `span`.
    pub fn constituent(&self, span: Range<usize>) -> Option<&Constituent> {
        self.constituents.iter().find(|c| c.span == span)
    }

    /// Constituents paired with their derivation nodes.
    pub fn nodes(&self) -> impl Iterator<Item = (&Constituent, &Derivation)> {
        self.constituents
            .iter()
            .zip(self.source.constituents().into_iter().map(|(_, n)| n))
    }

    /// Serializes the derivation with a `pol` arrow on every node.
    pub fn to_json(&self) -> Value {
        let mut pols = self.constituents.iter().map(|c| c.polarity);
        self.source
            .to_json_with(&mut |_| pols.next().map(|p| ("pol".to_owned(), json!(p.arrow().to_string()))))
    }
}

pub fn polarity_of_span(sentence: &PolarizedSentence, span: Range<usize>) -> Result<Polarity, PolarizeError> {
    sentence
        .constituent(span.clone())
        .map(|c| c.polarity)
        .ok_or(PolarizeError::NotAConstituent {
            start: span.start,
            end: span.end,
        })
}

/// `lemma↑ lemma↓ …`, space separated.
pub fn render_polarized(sentence: &PolarizedSentence) -> String {
    sentence
        .tokens
        .iter()
        .zip(&sentence.token_polarity)
        .map(|(t, p)| format!("{}{}", t.lemma, p.arrow()))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Inverse of [`render_polarized`].
pub fn parse_polarized(text: &str) -> Result<Vec<(String, Polarity)>, PolarizeError> {
    text.split_whitespace()
        .map(|unit| {
            let mut chars = unit.chars();
            let arrow = chars.next_back().and_then(Polarity::from_arrow);
            match arrow {
                Some(p) if !chars.as_str().is_empty() => Ok((chars.as_str().to_owned(), p)),
                _ => Err(PolarizeError::BadRendering(unit.to_owned())),
            }
        })
        .collect()
}
