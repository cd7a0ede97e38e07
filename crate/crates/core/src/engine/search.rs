//! Depth-bounded DFS over generated entailments, with contradictions
//! produced at every visited node.

use std::collections::{BTreeSet, HashMap};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::contradict::generate_contradictions;
use super::generate::{generate_entailments, Candidate};
use crate::kb::KnowledgeBase;
use crate::polarizer::PolarizedSentence;
use crate::syntax::Lexicon;
use crate::types::{NliLabel, Proof, ProofStep};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub depth: usize,
    pub max_generated: usize,
    pub equivalence_set: BTreeSet<String>,
    /// Only emit contradictions that hold in every model. Off by default,
    /// where the object and verb rules also fire under indefinite subjects.
    pub strict_contradictions: bool,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            depth: 2,
            max_generated: 10_000,
            equivalence_set: ["a", "be", "ing"].into_iter().map(String::from).collect(),
            strict_contradictions: false,
        }
    }
}

/// Generated entailments and contradictions, each with a proof from the
/// premise. Insertion order is the discovery order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SentenceBase {
    pub entailments: IndexMap<Vec<String>, Proof>,
    pub contradictions: IndexMap<Vec<String>, Proof>,
}

impl SentenceBase {
    pub fn len(&self) -> usize {
        self.entailments.len() + self.contradictions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entailments.is_empty() && self.contradictions.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub label: NliLabel,
    pub proof: Option<Proof>,
    pub base: SentenceBase,
    pub cap_exceeded: bool,
}

fn normalize<'a>(sentence: &'a [String], set: &BTreeSet<String>) -> Vec<&'a str> {
    let strip_ing = set.contains("ing");
    sentence
        .iter()
        .filter(|t| !set.contains(t.as_str()))
        .map(|t| match t.strip_suffix("ing") {
            Some(stem) if strip_ing && stem.len() >= 3 => stem,
            _ => t.as_str(),
        })
        .collect()
}

/// Sentences equal once tokens of `set` (and an `-ing` suffix, when "ing"
/// is in the set) are removed.
pub fn sentence_equivalent(s1: &[String], s2: &[String], set: &BTreeSet<String>) -> bool {
    normalize(s1, set) == normalize(s2, set)
}

struct Dfs<'a> {
    kb: &'a KnowledgeBase,
    lexicon: &'a Lexicon,
    config: &'a SearchConfig,
    hypothesis: Option<&'a [String]>,
    visited: HashMap<Vec<String>, usize>,
    base: SentenceBase,
    cap_exceeded: bool,
}

enum Flow {
    Continue,
    Stop(NliLabel, Proof),
    Capped,
}

impl Dfs<'_> {
    fn hits(&self, sentence: &[String]) -> bool {
        self.hypothesis
            .is_some_and(|h| sentence_equivalent(sentence, h, &self.config.equivalence_set))
    }

    fn extend(steps: &[ProofStep], from: &PolarizedSentence, c: &Candidate, verdict: NliLabel) -> Proof {
        let mut steps = steps.to_vec();
        steps.push(ProofStep {
            before: from.lemmas(),
            edit: c.edit.clone(),
            after: c.lemmas(),
        });
        Proof { steps, verdict }
    }

    fn over_cap(&mut self) -> bool {
        if self.base.len() > self.config.max_generated {
            self.cap_exceeded = true;
        }
        self.cap_exceeded
    }

    fn visit(&mut self, node: &PolarizedSentence, steps: &[ProofStep], depth: usize) -> Flow {
        let strict = self.config.strict_contradictions;
        for c in generate_contradictions(node, self.kb, self.lexicon, strict) {
            let key = c.lemmas();
            let better = self
                .base
                .contradictions
                .get(&key)
                .is_none_or(|p| p.len() > steps.len() + 1);
            if !better {
                continue;
            }
            let proof = Self::extend(steps, node, &c, NliLabel::Contradict);
            self.base.contradictions.insert(key.clone(), proof.clone());
            if self.hits(&key) && !self.entailment_hit() {
                return Flow::Stop(NliLabel::Contradict, proof);
            }
            if self.over_cap() {
                return Flow::Capped;
            }
        }
        if depth >= self.config.depth {
            return Flow::Continue;
        }
        let mut expand = Vec::new();
        for c in generate_entailments(node, self.kb, self.lexicon) {
            let key = c.lemmas();
            if self.visited.get(&key).is_some_and(|&d| d <= depth + 1) {
                continue;
            }
            self.visited.insert(key.clone(), depth + 1);
            let proof = Self::extend(steps, node, &c, NliLabel::Entail);
            self.base.entailments.insert(key.clone(), proof.clone());
            if self.hits(&key) {
                return Flow::Stop(NliLabel::Entail, proof);
            }
            if self.over_cap() {
                return Flow::Capped;
            }
            expand.push((c, proof.steps));
        }
        for (child, child_steps) in expand {
            match self.visit(&child.sentence, &child_steps, depth + 1) {
                Flow::Continue => {}
                other => return other,
            }
        }
        Flow::Continue
    }

    /// A contradiction hit never overrides an entailment of the same
    /// hypothesis already in the base.
    fn entailment_hit(&self) -> bool {
        self.base.entailments.keys().any(|k| self.hits(k))
    }
}

/// Full exploration up to `config.depth` without a target.
pub fn explore(
    premise: &PolarizedSentence,
    kb: &KnowledgeBase,
    lexicon: &Lexicon,
    config: &SearchConfig,
) -> SearchOutcome {
    run(premise, None, kb, lexicon, config)
}

/// Searches for `hypothesis` among the premise's entailments and
/// contradictions. Returns Neutral when it is absent or the cap is hit.
pub fn search(
    premise: &PolarizedSentence,
    hypothesis: &[String],
    kb: &KnowledgeBase,
    lexicon: &Lexicon,
    config: &SearchConfig,
) -> SearchOutcome {
    run(premise, Some(hypothesis), kb, lexicon, config)
}

fn run(
    premise: &PolarizedSentence,
    hypothesis: Option<&[String]>,
    kb: &KnowledgeBase,
    lexicon: &Lexicon,
    config: &SearchConfig,
) -> SearchOutcome {
    let start = premise.lemmas();
    let mut dfs = Dfs {
        kb,
        lexicon,
        config,
        hypothesis,
        visited: HashMap::from([(start.clone(), 0)]),
        base: SentenceBase::default(),
        cap_exceeded: false,
    };
    dfs.base
        .entailments
        .insert(start.clone(), Proof::empty(NliLabel::Entail));
    if dfs.hits(&start) {
        return SearchOutcome {
            label: NliLabel::Entail,
            proof: Some(Proof::empty(NliLabel::Entail)),
            base: dfs.base,
            cap_exceeded: false,
        };
    }
    let flow = dfs.visit(premise, &[], 0);
    let (label, proof) = match flow {
        Flow::Stop(label, proof) => (label, Some(proof)),
        Flow::Continue | Flow::Capped => (NliLabel::Neutral, None),
    };
    SearchOutcome {
        label,
        proof,
        base: dfs.base,
        cap_exceeded: dfs.cap_exceeded,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::generate::reparse;
    use crate::kb::{build_kb, LexicalResource};
    use crate::types::{phrase, Relation};

    fn set() -> BTreeSet<String> {
        SearchConfig::default().equivalence_set
    }

    fn pol(s: &str) -> PolarizedSentence {
        reparse(&phrase(s), &Lexicon::bundled()).unwrap()
    }

    #[test]
    fn equivalence_heuristic() {
        assert!(sentence_equivalent(
            &phrase("a man be talk"),
            &phrase("a man talk"),
            &set()
        ));
        assert!(sentence_equivalent(
            &phrase("a man talk"),
            &phrase("a man be talk"),
            &set()
        ));
        assert!(sentence_equivalent(
            &phrase("a man be talking"),
            &phrase("a man talk"),
            &set()
        ));
        assert!(sentence_equivalent(
            &phrase("a man walk"),
            &phrase("a man walk"),
            &set()
        ));
        assert!(!sentence_equivalent(
            &phrase("a man walk"),
            &phrase("a man run"),
            &set()
        ));
        // short words ending in "ing" are left alone
        assert!(!sentence_equivalent(&phrase("a king"), &phrase("a k"), &set()));
    }

    #[test]
    fn schoolgirl_search_entails_in_one_step() {
        let premise = pol("a schoolgirl with a black bag be on a crowded train");
        let h = phrase("a girl with a black bag be on a crowded train");
        let kb = build_kb(&premise, &h, &LexicalResource::bundled(), &[]).unwrap();
        let out = search(&premise, &h, &kb, &Lexicon::bundled(), &SearchConfig::default());
        assert_eq!(out.label, NliLabel::Entail);
        let proof = out.proof.unwrap();
        assert_eq!(proof.len(), 1);
        assert_eq!(proof.steps[0].edit.before, phrase("schoolgirl"));
        assert_eq!(proof.steps[0].edit.after, phrase("girl"));
    }

    #[test]
    fn contradiction_via_supplied_relation() {
        let premise = pol("a girl play a flute");
        let h = phrase("no woman play a flute");
        let kb = build_kb(
            &premise,
            &h,
            &LexicalResource::default(),
            &[Relation::leq("girl", "woman")],
        )
        .unwrap();
        let out = search(&premise, &h, &kb, &Lexicon::bundled(), &SearchConfig::default());
        assert_eq!(out.label, NliLabel::Contradict);
        assert!(out.proof.unwrap().is_chained());
    }

    #[test]
    fn unrelated_is_neutral() {
        let premise = pol("a dog bark");
        let h = phrase("every linguist swim");
        let kb = build_kb(&premise, &h, &LexicalResource::default(), &[]).unwrap();
        let out = search(&premise, &h, &kb, &Lexicon::bundled(), &SearchConfig::default());
        assert_eq!(out.label, NliLabel::Neutral);
        assert!(out.proof.is_none());
    }

    #[test]
    fn identity_is_zero_step_entailment() {
        let premise = pol("a dog bark");
        let kb = KnowledgeBase::default();
        let out = search(
            &premise,
            &phrase("a dog bark"),
            &kb,
            &Lexicon::bundled(),
            &SearchConfig::default(),
        );
        assert_eq!(out.label, NliLabel::Entail);
        assert!(out.proof.unwrap().is_empty());
    }

    #[test]
    fn cap_falls_back_to_neutral() {
        let premise = pol("a schoolgirl with a black bag be on a crowded train");
        let h = phrase("every linguist swim");
        let kb = build_kb(&premise, &h, &LexicalResource::bundled(), &[]).unwrap();
        let config = SearchConfig {
            max_generated: 3,
            ..SearchConfig::default()
        };
        let out = search(&premise, &h, &kb, &Lexicon::bundled(), &config);
        assert!(out.cap_exceeded);
        assert_eq!(out.label, NliLabel::Neutral);
    }

    #[test]
    fn deeper_search_only_adds() {
        let premise = pol("every semanticist with a black bag swim");
        let kb = build_kb(
            &premise,
            &phrase("every linguist move"),
            &LexicalResource::bundled(),
            &[],
        )
        .unwrap();
        let lex = Lexicon::bundled();
        let one = explore(
            &premise,
            &kb,
            &lex,
            &SearchConfig {
                depth: 1,
                ..SearchConfig::default()
            },
        );
        let two = explore(&premise, &kb, &lex, &SearchConfig::default());
        assert!(one
            .base
            .entailments
            .keys()
            .all(|k| two.base.entailments.contains_key(k)));
        assert!(one
            .base
            .contradictions
            .keys()
            .all(|k| two.base.contradictions.contains_key(k)));
        assert!(two.base.entailments.len() > one.base.entailments.len());
        for (s, proof) in &two.base.entailments {
            assert_eq!(proof.replay(&premise.lemmas()).as_ref(), Some(s));
            assert!(proof.len() <= 2);
        }
    }
}
