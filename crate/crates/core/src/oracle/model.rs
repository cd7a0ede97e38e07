//! Finite models over a domain of at most six entities.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::syntax::{Category, Derivation, Slash};

/// Entity set as a bit mask; entity `i` is bit `i`.
pub type Mask = u8;

pub const MAX_DOMAIN: usize = 6;

pub fn full(domain: usize) -> Mask {
    ((1u16 << domain) - 1) as Mask
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolKind {
    Noun,
    Adjective,
    Adverb,
    IntransVerb,
    TransVerb,
    Prep,
}

impl SymbolKind {
    pub fn is_binary(self) -> bool {
        matches!(self, SymbolKind::TransVerb | SymbolKind::Prep)
    }
}

/// Content words a model must interpret, by kind.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    pub symbols: BTreeSet<(SymbolKind, String)>,
}

impl Vocabulary {
    pub fn insert(&mut self, kind: SymbolKind, lemma: &str) {
        self.symbols.insert((kind, lemma.to_owned()));
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn merge(&mut self, other: &Vocabulary) {
        self.symbols.extend(other.symbols.iter().cloned());
    }

    /// Symbols the sentence's leaves need.
    pub fn of(derivation: &Derivation) -> Vocabulary {
        let mut v = Vocabulary::default();
        for (_, node) in derivation.constituents() {
            if let Derivation::Leaf { token, cat } = node {
                match classify_leaf(&token.lemma, cat) {
                    LeafClass::Content(kind) => v.insert(kind, &token.lemma),
                    LeafClass::Pronoun(Some(noun)) => v.insert(SymbolKind::Noun, noun),
                    LeafClass::Without => v.insert(SymbolKind::Prep, "with"),
                    _ => {}
                }
            }
        }
        v
    }

    /// Total number of membership bits over a domain of `domain` entities.
    pub fn bits(&self, domain: usize) -> usize {
        self.symbols
            .iter()
            .map(|(k, _)| if k.is_binary() { domain * domain } else { domain })
            .sum()
    }
}

/// How the evaluator reads a leaf, judged from its lemma (for logical
/// words) and category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum LeafClass {
    Determiner,
    /// Quantified pronoun, with the noun restricting it if any.
    Pronoun(Option<&'static str>),
    Copula,
    Identity,
    Negation,
    RelPronoun,
    Without,
    Content(SymbolKind),
    Unknown,
}

pub(crate) fn pronoun_restrictor(lemma: &str) -> Option<Option<&'static str>> {
    match lemma {
        "something" | "everything" | "nothing" => Some(None),
        "someone" | "everyone" | "nobody" => Some(Some("person")),
        _ => None,
    }
}

pub(crate) fn classify_leaf(lemma: &str, cat: &Category) -> LeafClass {
    let vp = Category::vp();
    if let Some(r) = pronoun_restrictor(lemma) {
        if cat.raised_target().is_some() {
            return LeafClass::Pronoun(r);
        }
    }
    match lemma {
        "be" => return LeafClass::Copula,
        "do" => return LeafClass::Identity,
        "not" => return LeafClass::Negation,
        "that" | "who" => return LeafClass::RelPronoun,
        "without" => return LeafClass::Without,
        _ => {}
    }
    if cat.arg() == Some(&Category::N) && cat.result().and_then(Category::raised_target).is_some() {
        return LeafClass::Determiner;
    }
    if *cat == Category::N {
        return LeafClass::Content(SymbolKind::Noun);
    }
    if cat.unifies(&vp) {
        return LeafClass::Content(SymbolKind::IntransVerb);
    }
    if cat.unifies(&Category::fwd(Category::N, Category::N, crate::types::Mono::UpSlot)) {
        return LeafClass::Content(SymbolKind::Adjective);
    }
    if cat.arg() == Some(&Category::NP) && cat.slash() == Some(Slash::Forward) {
        return if cat.result().is_some_and(|r| r.unifies(&vp)) {
            LeafClass::Content(SymbolKind::TransVerb)
        } else {
            LeafClass::Content(SymbolKind::Prep)
        };
    }
    if cat.result().is_some_and(|r| r.unifies(&vp)) && cat.arg().is_some_and(|a| a.unifies(&vp)) {
        return LeafClass::Content(SymbolKind::Adverb);
    }
    LeafClass::Unknown
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteModel {
    pub domain: usize,
    pub nouns: BTreeMap<String, Mask>,
    pub adjectives: BTreeMap<String, Mask>,
    pub adverbs: BTreeMap<String, Mask>,
    pub iverbs: BTreeMap<String, Mask>,
    /// `tverbs[v][x]` is the set of `y` with `v(x, y)`.
    pub tverbs: BTreeMap<String, Vec<Mask>>,
    pub preps: BTreeMap<String, Vec<Mask>>,
}

impl FiniteModel {
    pub fn new(domain: usize) -> FiniteModel {
        assert!(
            (1..=MAX_DOMAIN).contains(&domain),
            "domain size must be 1..={MAX_DOMAIN}"
        );
        FiniteModel {
            domain,
            nouns: BTreeMap::new(),
            adjectives: BTreeMap::new(),
            adverbs: BTreeMap::new(),
            iverbs: BTreeMap::new(),
            tverbs: BTreeMap::new(),
            preps: BTreeMap::new(),
        }
    }

    pub fn full(&self) -> Mask {
        full(self.domain)
    }

    pub(crate) fn unary_map(&self, kind: SymbolKind) -> Option<&BTreeMap<String, Mask>> {
        match kind {
            SymbolKind::Noun => Some(&self.nouns),
            SymbolKind::Adjective => Some(&self.adjectives),
            SymbolKind::Adverb => Some(&self.adverbs),
            SymbolKind::IntransVerb => Some(&self.iverbs),
            _ => None,
        }
    }

    pub(crate) fn unary_map_mut(&mut self, kind: SymbolKind) -> Option<&mut BTreeMap<String, Mask>> {
        match kind {
            SymbolKind::Noun => Some(&mut self.nouns),
            SymbolKind::Adjective => Some(&mut self.adjectives),
            SymbolKind::Adverb => Some(&mut self.adverbs),
            SymbolKind::IntransVerb => Some(&mut self.iverbs),
            _ => None,
        }
    }

    pub(crate) fn binary_map(&self, kind: SymbolKind) -> Option<&BTreeMap<String, Vec<Mask>>> {
        match kind {
            SymbolKind::TransVerb => Some(&self.tverbs),
            SymbolKind::Prep => Some(&self.preps),
            _ => None,
        }
    }

    pub(crate) fn binary_map_mut(&mut self, kind: SymbolKind) -> Option<&mut BTreeMap<String, Vec<Mask>>> {
        match kind {
            SymbolKind::TransVerb => Some(&mut self.tverbs),
            SymbolKind::Prep => Some(&mut self.preps),
            _ => None,
        }
    }

    /// Extension of a symbol flattened to `domain` masks (one for unary).
    pub fn extension(&self, kind: SymbolKind, lemma: &str) -> Option<Vec<Mask>> {
        if kind.is_binary() {
            self.binary_map(kind)?.get(lemma).cloned()
        } else {
            self.unary_map(kind)?.get(lemma).map(|m| vec![*m])
        }
    }

    pub fn set_extension(&mut self, kind: SymbolKind, lemma: &str, rows: Vec<Mask>) {
        if kind.is_binary() {
            self.binary_map_mut(kind)
                .expect("binary")
                .insert(lemma.to_owned(), rows);
        } else {
            self.unary_map_mut(kind)
                .expect("unary")
                .insert(lemma.to_owned(), rows[0]);
        }
    }

    /// Every symbol interpreted by the model.
    pub fn symbols(&self) -> Vec<(SymbolKind, String)> {
        let mut out = Vec::new();
        for kind in [
            SymbolKind::Noun,
            SymbolKind::Adjective,
            SymbolKind::Adverb,
            SymbolKind::IntransVerb,
        ] {
            out.extend(self.unary_map(kind).unwrap().keys().map(|k| (kind, k.clone())));
        }
        for kind in [SymbolKind::TransVerb, SymbolKind::Prep] {
            out.extend(self.binary_map(kind).unwrap().keys().map(|k| (kind, k.clone())));
        }
        out
    }
}

/// Entity × predicate membership table; binary predicates list the
/// related entities per row.
impl fmt::Display for FiniteModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entity = |i: usize| (b'a' + i as u8) as char;
        let set = |m: Mask| {
            let items: Vec<String> = (0..self.domain)
                .filter(|i| m & (1 << i) != 0)
                .map(|i| entity(i).to_string())
                .collect();
            format!("{{{}}}", items.join(","))
        };
        write!(f, "{:<16}", "")?;
        for i in 0..self.domain {
            write!(f, " {:<8}", entity(i))?;
        }
        writeln!(f)?;
        for (kind, name) in self.symbols() {
            write!(f, "{:<16}", name)?;
            let rows = self.extension(kind, &name).unwrap_or_default();
            for i in 0..self.domain {
                let cell = if kind.is_binary() {
                    set(rows[i])
                } else if rows[0] & (1 << i) != 0 {
                    "x".to_owned()
                } else {
                    ".".to_owned()
                };
                write!(f, " {:<8}", cell)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
