//! Pair-scoped knowledge base of `≤` and `⊥` relations over phrases.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polarizer::PolarizedSentence;
use crate::syntax::{Category, Derivation, Lexicon, Slash};
use crate::types::{phrase, Phrase, Relation, RelationKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Provenance {
    HardCoded,
    LexicalResource,
    PhraseRule,
    PremiseExtraction,
    UserSupplied,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::HardCoded => "hard-coded",
            Provenance::LexicalResource => "resource",
            Provenance::PhraseRule => "phrase-rule",
            Provenance::PremiseExtraction => "premise",
            Provenance::UserSupplied => "user",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KbError {
    #[error("inconsistent knowledge base: {lhs} and {rhs} are equivalent yet disjoint")]
    Inconsistent { lhs: String, rhs: String },
    #[error("{file} line {line}: {message}")]
    Format {
        file: &'static str,
        line: usize,
        message: String,
    },
}

/// Where an insertable modifier attaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModifierKind {
    /// Prenominal adjective.
    Adjective,
    /// Prepositional phrase or relative clause after a noun.
    NounPost,
    /// Adverb or prepositional phrase after a verb phrase.
    VerbPost,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Modifier {
    pub kind: ModifierKind,
    pub phrase: Phrase,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LexicalEntry {
    pub hypernyms: BTreeSet<String>,
    pub antonyms: BTreeSet<String>,
    pub synonyms: BTreeSet<String>,
}

/// Lemma-level hypernym/antonym/synonym data.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LexicalResource {
    entries: BTreeMap<String, LexicalEntry>,
}

const BUNDLED_RESOURCE: &str = include_str!("../data/resource.tsv");

impl LexicalResource {
    pub fn bundled() -> LexicalResource {
        LexicalResource::from_tsv(BUNDLED_RESOURCE).expect("bundled resource is well-formed")
    }

    /// Rows `lemma<TAB>hyp|ant|syn<TAB>target`; `#` comments allowed.
    pub fn from_tsv(text: &str) -> Result<LexicalResource, KbError> {
        let mut resource = LexicalResource::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| KbError::Format {
                file: "resource",
                line: i + 1,
                message,
            };
            let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
            let [lemma, rel, target] = cols[..] else {
                return Err(err(format!("expected 3 columns, found {}", cols.len())));
            };
            match rel {
                "hyp" => resource.add_hypernym(lemma, target),
                "syn" => resource.add_synonym(lemma, target),
                "ant" => resource.add_antonym(lemma, target),
                other => return Err(err(format!("unknown relation {other:?}"))),
            }
            .map_err(err)?;
        }
        Ok(resource)
    }

    fn entry(&mut self, lemma: &str) -> &mut LexicalEntry {
        self.entries.entry(lemma.to_owned()).or_default()
    }

    pub fn add_hypernym(&mut self, lemma: &str, target: &str) -> Result<(), String> {
        if lemma == target {
            return Err(format!("{lemma:?} cannot be its own hypernym"));
        }
        self.entry(lemma).hypernyms.insert(target.to_owned());
        Ok(())
    }

    pub fn add_synonym(&mut self, lemma: &str, target: &str) -> Result<(), String> {
        if lemma == target {
            return Err(format!("{lemma:?} cannot be its own synonym"));
        }
        self.entry(lemma).synonyms.insert(target.to_owned());
        self.entry(target).synonyms.insert(lemma.to_owned());
        Ok(())
    }

    pub fn add_antonym(&mut self, lemma: &str, target: &str) -> Result<(), String> {
        if lemma == target {
            return Err(format!("{lemma:?} cannot be its own antonym"));
        }
        self.entry(lemma).antonyms.insert(target.to_owned());
        self.entry(target).antonyms.insert(lemma.to_owned());
        Ok(())
    }

    pub fn get(&self, lemma: &str) -> Option<&LexicalEntry> {
        self.entries.get(lemma)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Lemmas reachable from `lemma` through hypernym and synonym links.
    fn ancestors(&self, lemma: &str) -> BTreeSet<String> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([lemma.to_owned()]);
        while let Some(cur) = queue.pop_front() {
            if let Some(e) = self.entries.get(&cur) {
                for next in e.hypernyms.iter().chain(&e.synonyms) {
                    if next != lemma && seen.insert(next.clone()) {
                        queue.push_back(next.clone());
                    }
                }
            }
        }
        seen
    }

    /// Relations among the lemmas of `vocabulary` only. Hypernym chains may
    /// pass through lemmas outside the vocabulary.
    pub fn relations_within(&self, vocabulary: &BTreeSet<String>) -> Vec<Relation> {
        let mut out = Vec::new();
        for lemma in vocabulary {
            for above in self.ancestors(lemma) {
                if vocabulary.contains(&above) {
                    out.push(Relation::leq(lemma, &above));
                }
            }
            if let Some(e) = self.entries.get(lemma) {
                for ant in &e.antonyms {
                    if vocabulary.contains(ant) && lemma < ant {
                        out.push(Relation::perp(lemma, ant));
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    base: BTreeMap<Relation, Provenance>,
    /// Strict upward closure: `x ↦ {y ≠ x | x ≤ y}`.
    above: BTreeMap<Phrase, BTreeSet<Phrase>>,
    below: BTreeMap<Phrase, BTreeSet<Phrase>>,
    perp: BTreeSet<(Phrase, Phrase)>,
    modifiers: BTreeSet<Modifier>,
}

const QUANTIFIER_CHAIN: &[&[&str]] = &[
    &["every", "all", "each"],
    &["most"],
    &["many"],
    &["a_few", "several"],
    &["some", "a"],
];

fn hard_coded() -> Vec<Relation> {
    let mut out = Vec::new();
    for group in QUANTIFIER_CHAIN {
        for w in group.windows(2) {
            out.push(Relation::leq(w[0], w[1]));
            out.push(Relation::leq(w[1], w[0]));
        }
    }
    for pair in QUANTIFIER_CHAIN.windows(2) {
        out.push(Relation::leq(pair[0][0], pair[1][0]));
    }
    out.push(Relation::leq("the", "some"));
    out.push(Relation::perp("on", "off"));
    out.push(Relation::perp("up", "down"));
    out
}

impl KnowledgeBase {
    /// Builds and closes a KB from explicit relations. The first provenance
    /// recorded for a relation wins.
    pub fn from_relations<I>(relations: I) -> Result<KnowledgeBase, KbError>
    where
        I: IntoIterator<Item = (Relation, Provenance)>,
    {
        let mut kb = KnowledgeBase::default();
        for (rel, prov) in relations {
            if rel.lhs.is_empty() || rel.rhs.is_empty() {
                continue;
            }
            kb.base.entry(rel).or_insert(prov);
        }
        kb.close()?;
        Ok(kb)
    }

    /// A KB holding only the given `≤`/`⊥` facts, all marked user-supplied.
    pub fn with(relations: &[Relation]) -> Result<KnowledgeBase, KbError> {
        KnowledgeBase::from_relations(relations.iter().cloned().map(|r| (r, Provenance::UserSupplied)))
    }

    fn close(&mut self) -> Result<(), KbError> {
        let mut edges: BTreeMap<&Phrase, Vec<&Phrase>> = BTreeMap::new();
        let mut perp = BTreeSet::new();
        for rel in self.base.keys() {
            match rel.kind {
                RelationKind::Leq => {
                    edges.entry(&rel.lhs).or_default().push(&rel.rhs);
                    edges.entry(&rel.rhs).or_default();
                }
                RelationKind::Perp => {
                    perp.insert((rel.lhs.clone(), rel.rhs.clone()));
                    perp.insert((rel.rhs.clone(), rel.lhs.clone()));
                }
            }
        }
        let mut above: BTreeMap<Phrase, BTreeSet<Phrase>> = BTreeMap::new();
        let mut below: BTreeMap<Phrase, BTreeSet<Phrase>> = BTreeMap::new();
        for &start in edges.keys() {
            let mut seen: BTreeSet<&Phrase> = BTreeSet::new();
            let mut queue: VecDeque<&Phrase> = VecDeque::from([start]);
            while let Some(cur) = queue.pop_front() {
                for &next in edges.get(cur).into_iter().flatten() {
                    if next != start && seen.insert(next) {
                        queue.push_back(next);
                    }
                }
            }
            for &hi in &seen {
                above.entry(start.clone()).or_default().insert(hi.clone());
                below.entry(hi.clone()).or_default().insert(start.clone());
            }
        }
        self.above = above;
        self.below = below;
        self.perp = perp;
        for (x, y) in &self.perp {
            if x == y || (self.leq(x, y) && self.leq(y, x)) {
                return Err(KbError::Inconsistent {
                    lhs: x.join(" "),
                    rhs: y.join(" "),
                });
            }
        }
        Ok(())
    }

    pub fn leq(&self, a: &[String], b: &[String]) -> bool {
        a == b || self.above.get(a).is_some_and(|s| s.contains(b))
    }

    pub fn perp(&self, a: &[String], b: &[String]) -> bool {
        self.perp.contains(&(a.to_vec(), b.to_vec()))
    }

    /// Phrases strictly above `p` (`p ≤ q`, `q ≠ p`), sorted.
    pub fn above(&self, p: &[String]) -> Vec<&Phrase> {
        self.above.get(p).map(|s| s.iter().collect()).unwrap_or_default()
    }

    pub fn below(&self, p: &[String]) -> Vec<&Phrase> {
        self.below.get(p).map(|s| s.iter().collect()).unwrap_or_default()
    }

    /// Phrases disjoint from `p`, sorted.
    pub fn disjoint(&self, p: &[String]) -> Vec<&Phrase> {
        self.perp.iter().filter(|(x, _)| x[..] == *p).map(|(_, y)| y).collect()
    }

    /// Every phrase mentioned by some relation.
    pub fn phrases(&self) -> BTreeSet<&Phrase> {
        self.base.keys().flat_map(|r| [&r.lhs, &r.rhs]).collect()
    }

    /// Base (unclosed) relations with their provenance.
    pub fn relations(&self) -> impl Iterator<Item = (&Relation, Provenance)> {
        self.base.iter().map(|(r, p)| (r, *p))
    }

    pub fn modifiers(&self) -> impl Iterator<Item = &Modifier> {
        self.modifiers.iter()
    }

    pub fn add_modifiers(&mut self, modifiers: impl IntoIterator<Item = Modifier>) {
        self.modifiers.extend(modifiers);
    }

    /// Text listing, one relation per line, for inspection.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (rel, prov) in self.relations() {
            out.push_str(&format!("{rel}\t[{prov}]\n"));
        }
        for m in &self.modifiers {
            out.push_str(&format!("modifier {:?}: {}\n", m.kind, m.phrase.join(" ")));
        }
        out
    }
}

fn node_phrase(sentence: &PolarizedSentence, span: &std::ops::Range<usize>) -> Phrase {
    sentence.tokens[span.clone()].iter().map(|t| t.lemma.clone()).collect()
}

fn is_function_word(node: &Derivation) -> bool {
    matches!(node, Derivation::Leaf { token, .. } if matches!(token.lemma.as_str(), "be" | "do" | "not"))
}

/// `adj n ≤ n`, `n PP ≤ n`, `n RelCl ≤ n`, `VP Adv ≤ VP`, `VP PP ≤ VP` and
/// `Adv VP ≤ VP` over every matching constituent.
pub fn derive_phrase_relations(sentence: &PolarizedSentence) -> Vec<Relation> {
    let vp = Category::vp();
    let nodes: Vec<_> = sentence.source.constituents();
    let mut out = Vec::new();
    for (span, node) in &nodes {
        let Derivation::Apply { func, arg, cat } = node else {
            continue;
        };
        let fcat = func.cat();
        let noun_modifier =
            *cat == Category::N && fcat.arg() == Some(&Category::N) && fcat.result() == Some(&Category::N);
        let verb_modifier = cat.unifies(&vp)
            && fcat.result().is_some_and(|r| r.unifies(&vp))
            && fcat.arg().is_some_and(|a| a.unifies(&vp))
            && (fcat.slash() == Some(Slash::Backward) || !is_function_word(func));
        if !(noun_modifier || verb_modifier) {
            continue;
        }
        let arg_span = nodes
            .iter()
            .find(|(_, n)| std::ptr::eq(*n, arg.as_ref()))
            .map(|(s, _)| s.clone())
            .expect("argument is a constituent");
        let lhs = node_phrase(sentence, span);
        let rhs = node_phrase(sentence, &arg_span);
        out.push(Relation {
            kind: RelationKind::Leq,
            lhs,
            rhs,
        });
    }
    out
}

/// Insertable modifiers found in a parsed sentence.
pub fn collect_modifiers(sentence: &PolarizedSentence) -> Vec<Modifier> {
    let vp = Category::vp();
    let nodes = sentence.source.constituents();
    let mut out = Vec::new();
    for (_, node) in &nodes {
        let Derivation::Apply { func, cat, .. } = node else {
            continue;
        };
        let fspan = nodes
            .iter()
            .find(|(_, n)| std::ptr::eq(*n, func.as_ref()))
            .map(|(s, _)| s.clone())
            .expect("function is a constituent");
        let fcat = func.cat();
        let kind = if *cat == Category::N && fcat.arg() == Some(&Category::N) {
            match fcat.slash() {
                Some(Slash::Forward) => ModifierKind::Adjective,
                _ => ModifierKind::NounPost,
            }
        } else if cat.unifies(&vp)
            && fcat.arg().is_some_and(|a| a.unifies(&vp))
            && fcat.slash() == Some(Slash::Backward)
        {
            ModifierKind::VerbPost
        } else {
            continue;
        };
        out.push(Modifier {
            kind,
            phrase: node_phrase(sentence, &fspan),
        });
    }
    out
}

/// `every n₁ be a n₂` yields `n₁ ≤ n₂`.
pub fn extract_from_premise(premise: &PolarizedSentence) -> Vec<Relation> {
    let lemmas = premise.lemmas();
    if !matches!(lemmas.first().map(String::as_str), Some("every" | "all" | "each")) {
        return Vec::new();
    }
    let Some(be) = lemmas.iter().position(|l| l == "be") else {
        return Vec::new();
    };
    if lemmas.get(be + 1).map(String::as_str) != Some("a") || be + 2 >= lemmas.len() {
        return Vec::new();
    }
    let is_noun = |span: std::ops::Range<usize>| {
        premise
            .constituents
            .iter()
            .any(|c| c.span == span && c.category == Category::N)
    };
    if !is_noun(1..be) || !is_noun(be + 2..lemmas.len()) {
        return Vec::new();
    }
    vec![Relation {
        kind: RelationKind::Leq,
        lhs: lemmas[1..be].to_vec(),
        rhs: lemmas[be + 2..].to_vec(),
    }]
}

/// Builds the KB for one premise–hypothesis pair.
pub fn build_kb(
    premise: &PolarizedSentence,
    hypothesis: &[String],
    resource: &LexicalResource,
    extra: &[Relation],
) -> Result<KnowledgeBase, KbError> {
    build_kb_with(premise, hypothesis, None, resource, extra)
}

/// Like [`build_kb`], also mining phrase relations and modifiers from a
/// parsed hypothesis.
pub fn build_kb_with(
    premise: &PolarizedSentence,
    hypothesis: &[String],
    hypothesis_parse: Option<&PolarizedSentence>,
    resource: &LexicalResource,
    extra: &[Relation],
) -> Result<KnowledgeBase, KbError> {
    let vocabulary: BTreeSet<String> = premise.lemmas().into_iter().chain(hypothesis.iter().cloned()).collect();
    let mut relations: Vec<(Relation, Provenance)> = Vec::new();
    relations.extend(hard_coded().into_iter().map(|r| (r, Provenance::HardCoded)));
    relations.extend(
        resource
            .relations_within(&vocabulary)
            .into_iter()
            .map(|r| (r, Provenance::LexicalResource)),
    );
    let parses: Vec<&PolarizedSentence> = std::iter::once(premise).chain(hypothesis_parse).collect();
    for p in &parses {
        relations.extend(
            derive_phrase_relations(p)
                .into_iter()
                .map(|r| (r, Provenance::PhraseRule)),
        );
    }
    relations.extend(
        extract_from_premise(premise)
            .into_iter()
            .map(|r| (r, Provenance::PremiseExtraction)),
    );
    relations.extend(extra.iter().cloned().map(|r| (r, Provenance::UserSupplied)));
    let mut kb = KnowledgeBase::from_relations(relations)?;
    kb.add_modifiers(parses.iter().flat_map(|p| collect_modifiers(p)));
    Ok(kb)
}

/// Relations file rows `LEQ|PERP<TAB>lhs<TAB>rhs`, `_` standing for a space
/// inside phrases. Multiword lemmas are re-fused with `lexicon`.
pub fn load_relations(text: &str, lexicon: &Lexicon) -> Result<Vec<Relation>, KbError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| KbError::Format {
            file: "relations",
            line: i + 1,
            message,
        };
        let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
        let [kind, lhs, rhs] = cols[..] else {
            return Err(err(format!("expected 3 columns, found {}", cols.len())));
        };
        let kind = match kind.to_ascii_uppercase().as_str() {
            "LEQ" => RelationKind::Leq,
            "PERP" => RelationKind::Perp,
            other => return Err(err(format!("unknown relation kind {other:?}"))),
        };
        let side = |s: &str| lexicon.fuse(&phrase(&s.replace('_', " ")));
        let (lhs, rhs) = (side(lhs), side(rhs));
        if lhs.is_empty() || rhs.is_empty() {
            return Err(err("empty phrase".into()));
        }
        out.push(Relation { kind, lhs, rhs });
    }
    Ok(out)
}
