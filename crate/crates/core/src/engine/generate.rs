//! Entailment generation by polarity-licensed span replacement.

use std::collections::BTreeSet;
use std::ops::Range;

use crate::kb::{KnowledgeBase, ModifierKind};
use crate::polarizer::{polarize, Constituent, PolarizedSentence};
use crate::syntax::{parse_tokens, Category, Lexicon};
use crate::types::{Edit, EditDirection, Phrase, Polarity, Token};

/// A generated sentence with the edit that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub sentence: PolarizedSentence,
    pub edit: Edit,
}

impl Candidate {
    pub fn lemmas(&self) -> Vec<String> {
        self.sentence.lemmas()
    }
}

pub(crate) const RULE_REPLACE: &str = "replace";
pub(crate) const RULE_ADJ: &str = "insert-adj";
pub(crate) const RULE_POST: &str = "insert-post";
pub(crate) const RULE_ADV: &str = "insert-adv";

/// Re-parses `lemmas` and polarizes the result.
pub(crate) fn reparse(lemmas: &[String], lexicon: &Lexicon) -> Option<PolarizedSentence> {
    let tokens = Token::from_lemmas(lemmas);
    parse_tokens(&tokens, lexicon).ok().map(|d| polarize(&d))
}

/// Index of each constituent's parent, from pre-order spans: the nearest
/// earlier constituent whose span covers it.
fn parents(cs: &[Constituent]) -> Vec<Option<usize>> {
    (0..cs.len())
        .map(|i| {
            (0..i)
                .rev()
                .find(|&j| cs[j].span.start <= cs[i].span.start && cs[i].span.end <= cs[j].span.end)
        })
        .collect()
}

/// True when `new` keeps every constituent of `old` outside the edited
/// span, shifted as needed, with the same category and the same parent
/// span, and has a constituent of category `cat` where the replacement
/// landed. For insertions, `kept` locates the original phrase inside the
/// replacement; it must stay a constituent directly under the new span.
pub(crate) fn congruent(
    old: &PolarizedSentence,
    new: &PolarizedSentence,
    span: &Range<usize>,
    new_len: usize,
    cat: &Category,
    kept: Option<Range<usize>>,
) -> bool {
    let shift = new_len as isize - span.len() as isize;
    let moved = |x: usize| (x as isize + shift) as usize;
    let map = |r: &Range<usize>| -> Option<Range<usize>> {
        if r.end <= span.start {
            Some(r.clone())
        } else if r.start >= span.end {
            Some(moved(r.start)..moved(r.end))
        } else if r.start <= span.start && r.end >= span.end {
            Some(r.start..moved(r.end))
        } else {
            None
        }
    };
    let new_parents = parents(&new.constituents);
    let found = |r: &Range<usize>, c: &Category, parent: Option<&Range<usize>>| {
        new.constituents.iter().enumerate().any(|(k, n)| {
            n.span == *r
                && n.category.unifies(c)
                && parent.is_none_or(|p| new_parents[k].is_some_and(|q| new.constituents[q].span == *p))
        })
    };
    let landed = span.start..span.start + new_len;
    if !found(&landed, cat, None) {
        return false;
    }
    if let Some(k) = kept {
        let inner = landed.start + k.start..landed.start + k.end;
        if !found(&inner, cat, Some(&landed)) {
            return false;
        }
    }
    let old_parents = parents(&old.constituents);
    old.constituents.iter().enumerate().all(|(i, c)| {
        let Some(target) = map(&c.span) else { return true };
        let parent = old_parents[i].and_then(|p| map(&old.constituents[p].span));
        found(&target, &c.category, parent.as_ref())
    })
}

struct Proposal {
    span: Range<usize>,
    after: Phrase,
    rule: &'static str,
    cat: Category,
    kept: Option<Range<usize>>,
}

/// One-step entailments of `sentence`, ordered by (span, replacement).
pub fn generate_entailments(sentence: &PolarizedSentence, kb: &KnowledgeBase, lexicon: &Lexicon) -> Vec<Candidate> {
    let lemmas = sentence.lemmas();
    let vp = Category::vp();
    let mut proposals = Vec::new();
    for c in &sentence.constituents {
        let current = &lemmas[c.span.clone()];
        let mut propose = |after: Phrase, rule, kept| {
            proposals.push(Proposal {
                span: c.span.clone(),
                after,
                rule,
                cat: c.category.clone(),
                kept,
            })
        };
        let whole = 0..current.len();
        match c.polarity {
            Polarity::Flat => {}
            Polarity::Up => {
                for bigger in kb.above(current) {
                    propose(bigger.clone(), RULE_REPLACE, None);
                }
            }
            Polarity::Down => {
                for smaller in kb.below(current) {
                    propose(smaller.clone(), RULE_REPLACE, None);
                }
                for m in kb.modifiers() {
                    match m.kind {
                        ModifierKind::Adjective if c.category == Category::N && !current.starts_with(&m.phrase) => {
                            let n = m.phrase.len();
                            propose(
                                [m.phrase.clone(), current.to_vec()].concat(),
                                RULE_ADJ,
                                Some(n..n + current.len()),
                            );
                        }
                        ModifierKind::NounPost if c.category == Category::N && !current.ends_with(&m.phrase) => {
                            propose(
                                [current.to_vec(), m.phrase.clone()].concat(),
                                RULE_POST,
                                Some(whole.clone()),
                            );
                        }
                        ModifierKind::VerbPost if c.category.unifies(&vp) && !current.ends_with(&m.phrase) => {
                            propose(
                                [current.to_vec(), m.phrase.clone()].concat(),
                                RULE_ADV,
                                Some(whole.clone()),
                            );
                        }
                        _ => {}
                    }
                }
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
            after: p.after.clone(),
            rule: p.rule.to_owned(),
            direction: EditDirection::Entailing,
        };
        let Some(next) = edit.apply(&lemmas) else { continue };
        if next == lemmas || seen.contains(&next) {
            continue;
        }
        let Some(parsed) = reparse(&next, lexicon) else {
            continue;
        };
        if !congruent(sentence, &parsed, &p.span, p.after.len(), &p.cat, p.kept.clone()) {
            continue;
        }
        seen.insert(next);
        out.push(Candidate { sentence: parsed, edit });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::{build_kb, LexicalResource};
    use crate::types::{phrase, Relation};

    fn pol(s: &str) -> PolarizedSentence {
        reparse(&phrase(s), &Lexicon::bundled()).unwrap()
    }

    fn texts(c: &[Candidate]) -> BTreeSet<String> {
        c.iter().map(|c| c.lemmas().join(" ")).collect()
    }

    #[test]
    fn three_one_step_entailments() {
        let kb = KnowledgeBase::with(&[
            Relation::leq("semanticist", "linguist"),
            Relation::leq("swim", "move"),
            Relation::leq("every", "most"),
        ])
        .unwrap();
        let out = generate_entailments(&pol("every linguist swim"), &kb, &Lexicon::bundled());
        let expected: BTreeSet<String> = ["most linguist swim", "every semanticist swim", "every linguist move"]
            .into_iter()
            .map(String::from)
            .collect();
        assert_eq!(texts(&out), expected);
    }

    #[test]
    fn schoolgirl_nodes() {
        let premise = pol("a schoolgirl with a black bag be on a crowded train");
        let kb = build_kb(
            &premise,
            &phrase("a girl with a black bag be on a crowded train"),
            &LexicalResource::bundled(),
            &[],
        )
        .unwrap();
        let out = texts(&generate_entailments(&premise, &kb, &Lexicon::bundled()));
        for s in [
            "a schoolgirl be on a crowded train",
            "a schoolgirl with a bag be on a crowded train",
            "a girl with a black bag be on a crowded train",
        ] {
            assert!(out.contains(s), "missing {s}: {out:?}");
        }
    }

    #[test]
    fn empty_kb_no_down_spans() {
        let kb = KnowledgeBase::default();
        assert!(generate_entailments(&pol("a dog bark"), &kb, &Lexicon::bundled()).is_empty());
    }

    #[test]
    fn modifiers_go_into_down_spans_only() {
        let premise = pol("every dog bark");
        let hyp = pol("a black dog bark loudly");
        let mut kb = KnowledgeBase::default();
        kb.add_modifiers(crate::kb::collect_modifiers(&hyp));
        let out = texts(&generate_entailments(&premise, &kb, &Lexicon::bundled()));
        assert!(out.contains("every black dog bark"), "{out:?}");
        assert!(!out.contains("every dog bark loudly"));
    }

    #[test]
    fn ordered_by_span_then_replacement() {
        let kb = KnowledgeBase::with(&[
            Relation::leq("semanticist", "linguist"),
            Relation::leq("swim", "move"),
            Relation::leq("swim", "go"),
            Relation::leq("every", "most"),
        ])
        .unwrap();
        let out = generate_entailments(&pol("every linguist swim"), &kb, &Lexicon::bundled());
        let keys: Vec<_> = out.iter().map(|c| (c.edit.span, c.edit.after.clone())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
