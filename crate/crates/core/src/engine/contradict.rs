//! Contradiction rules: flip the leading quantifier, swap the object
//! quantifier, negate the main verb, and (optionally) swap a disjoint term.

use std::collections::BTreeSet;
use std::ops::Range;

use super::generate::{reparse, Candidate};
use crate::kb::KnowledgeBase;
use crate::polarizer::PolarizedSentence;
use crate::syntax::{Category, Derivation, Lexicon, Slash};
use crate::types::{Edit, EditDirection, Phrase};

pub(crate) const RULE_SUBJECT: &str = "rule1-subject";
pub(crate) const RULE_OBJECT: &str = "rule2-object";
pub(crate) const RULE_NEGATE: &str = "rule3-negate";
pub(crate) const RULE_PERP: &str = "perp";

/// Subject determiners under which the object and verb rules yield a
/// contradiction in every model (given nonempty restrictors).
const UNIVERSAL_LIKE: &[&str] = &["every", "all", "each", "the", "most", "everything", "everyone"];
const NEGATIVE: &[&str] = &["no", "nothing", "nobody"];

fn subject_flip(lemma: &str) -> &'static [&'static str] {
    match lemma {
        "some" | "a" => &["no"],
        "no" => &["some", "a"],
        "something" => &["nothing"],
        "nothing" => &["something"],
        "someone" => &["nobody"],
        "nobody" => &["someone"],
        _ => &[],
    }
}

fn object_flip(lemma: &str) -> Option<&'static str> {
    match lemma {
        "a" | "some" | "the" | "every" | "all" | "each" => Some("no"),
        "no" => Some("some"),
        "something" | "everything" => Some("nothing"),
        "nothing" => Some("something"),
        "someone" | "everyone" => Some("nobody"),
        "nobody" => Some("someone"),
        _ => None,
    }
}

/// Span of the root verb phrase.
fn root_vp(sentence: &PolarizedSentence) -> Option<Range<usize>> {
    let Derivation::Apply { func, arg, .. } = &sentence.source else {
        return None;
    };
    arg.cat()
        .unifies(&Category::vp())
        .then(|| func.len()..func.len() + arg.len())
}

/// Span of the direct-object determiner (or quantified pronoun): the object
/// of the verb heading the root VP, looking through auxiliaries, negation,
/// adverbs and the copula.
fn object_determiner(sentence: &PolarizedSentence) -> Option<usize> {
    let vp = Category::vp();
    let Derivation::Apply { arg, func: subject, .. } = &sentence.source else {
        return None;
    };
    let mut node: &Derivation = arg;
    let mut start = subject.len();
    loop {
        match node {
            Derivation::Apply { func, arg, .. } => {
                let fcat = func.cat();
                let raised_object = fcat.raised_target().as_ref() == Some(&vp) && fcat.slash() == Some(Slash::Backward);
                if raised_object {
                    // [verb][object]: object noun phrase follows the verb.
                    let det_at = start + arg.len();
                    return match func.as_ref() {
                        Derivation::Apply { .. } | Derivation::Leaf { .. } => Some(det_at),
                        Derivation::Unary { .. } => None,
                    };
                }
                match fcat.slash() {
                    // Pre-verbal modifier, auxiliary, negation or copula.
                    Some(Slash::Forward) if arg.cat().unifies(&vp) => {
                        start += func.len();
                        node = arg;
                    }
                    // Post-verbal modifier: descend into the verb phrase it modifies.
                    Some(Slash::Backward) if arg.cat().unifies(&vp) => node = arg,
                    _ => return None,
                }
            }
            _ => return None,
        }
    }
}

struct Proposal {
    span: Range<usize>,
    after: Phrase,
    rule: &'static str,
}

/// Contradictions of `sentence`, ordered by (span, replacement). With
/// `strict`, rules 2 and 3 fire only where they are contradictions in
/// every model, and the disjoint-term swap is off.
pub fn generate_contradictions(
    sentence: &PolarizedSentence,
    kb: &KnowledgeBase,
    lexicon: &Lexicon,
    strict: bool,
) -> Vec<Candidate> {
    let lemmas = sentence.lemmas();
    if lemmas.is_empty() {
        return Vec::new();
    }
    let mut proposals = Vec::new();
    let first = lemmas[0].as_str();
    for &to in subject_flip(first) {
        proposals.push(Proposal {
            span: 0..1,
            after: vec![to.to_owned()],
            rule: RULE_SUBJECT,
        });
    }

    let universal = UNIVERSAL_LIKE.contains(&first);
    let negative = NEGATIVE.contains(&first);

    if let Some(i) = object_determiner(sentence) {
        if let Some(to) = object_flip(&lemmas[i]) {
            let existential_object = matches!(
                lemmas[i].as_str(),
                "a" | "some" | "no" | "something" | "nothing" | "someone" | "nobody"
            );
            if !strict || universal || (negative && existential_object) {
                proposals.push(Proposal {
                    span: i..i + 1,
                    after: vec![to.to_owned()],
                    rule: RULE_OBJECT,
                });
            }
        }
    }

    if let Some(vp) = root_vp(sentence) {
        if !strict || universal || negative {
            let at = |k: usize| lemmas.get(vp.start + k).map(String::as_str);
            let s = vp.start;
            let vp_mod = Category::modifier(&Category::vp(), Slash::Forward, crate::types::Mono::UpSlot);
            let aux_do = sentence
                .constituents
                .iter()
                .any(|c| c.span == (s..s + 1) && c.category.unifies(&vp_mod));
            let (span, after) = match (at(0), at(1)) {
                (Some("be"), Some("not")) => (s..s + 2, vec!["be".to_owned()]),
                (Some("be"), _) => (s..s + 1, vec!["be".to_owned(), "not".to_owned()]),
                (Some("do"), Some("not")) if aux_do => (s..s + 2, Vec::new()),
                (Some("do"), _) if aux_do => (s..s + 1, vec!["do".to_owned(), "not".to_owned()]),
                (Some("not"), _) => (s..s + 1, Vec::new()),
                (Some(w), _) => (s..s + 1, vec!["do".to_owned(), "not".to_owned(), w.to_owned()]),
                (None, _) => (s..s, Vec::new()),
            };
            if !span.is_empty() {
                proposals.push(Proposal {
                    span,
                    after,
                    rule: RULE_NEGATE,
                });
            }
        }
    }

    if !strict {
        for c in &sentence.constituents {
            for other in kb.disjoint(&lemmas[c.span.clone()]) {
                proposals.push(Proposal {
                    span: c.span.clone(),
                    after: other.clone(),
                    rule: RULE_PERP,
                });
            }
        }
    }

    proposals.sort_by(|a, b| (a.span.start, a.span.end, &a.after).cmp(&(b.span.start, b.span.end, &b.after)));
    let mut seen: BTreeSet<Vec<String>> = BTreeSet::new();
    let mut out = Vec::new();
    for p in proposals {
        let edit = Edit {
            span: (p.span.start, p.span.end),
            before: lemmas[p.span.clone()].to_vec(),
            after: p.after,
            rule: p.rule.to_owned(),
            direction: EditDirection::Contradicting,
        };
        let Some(next) = edit.apply(&lemmas) else { continue };
        if next == lemmas || !seen.insert(next.clone()) {
            continue;
        }
        if let Some(parsed) = reparse(&next, lexicon) {
            out.push(Candidate { sentence: parsed, edit });
        }
    }
    out
}
