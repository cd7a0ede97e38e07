//! Shared domain vocabulary: polarity algebra, tokens, labels, relations,
//! edits and proofs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParseValueError;

/// Monotonicity arrow carried by a token or constituent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Polarity {
    Up,
    Down,
    Flat,
}

impl Polarity {
    pub fn arrow(self) -> char {
        match self {
            Polarity::Up => '↑',
            Polarity::Down => '↓',
            Polarity::Flat => '=',
        }
    }

    pub fn from_arrow(c: char) -> Option<Polarity> {
        match c {
            '↑' => Some(Polarity::Up),
            '↓' => Some(Polarity::Down),
            '=' => Some(Polarity::Flat),
            _ => None,
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.arrow())
    }
}

/// Monotonicity of a function's argument slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mono {
    UpSlot,
    DownSlot,
    FlatSlot,
}

impl Mono {
    /// Sign used in category notation: `+`, `-` or `=`.
    pub fn sign(self) -> char {
        match self {
            Mono::UpSlot => '+',
            Mono::DownSlot => '-',
            Mono::FlatSlot => '=',
        }
    }

    pub fn from_sign(c: char) -> Option<Mono> {
        match c {
            '+' => Some(Mono::UpSlot),
            '-' => Some(Mono::DownSlot),
            '=' => Some(Mono::FlatSlot),
            _ => None,
        }
    }
}

/// Polarity of an argument that fills a `slot` of a function whose own
/// polarity is `parent`.
pub fn compose(parent: Polarity, slot: Mono) -> Polarity {
    match (parent, slot) {
        (Polarity::Flat, _) | (_, Mono::FlatSlot) => Polarity::Flat,
        (p, Mono::UpSlot) => p,
        (Polarity::Up, Mono::DownSlot) => Polarity::Down,
        (Polarity::Down, Mono::DownSlot) => Polarity::Up,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Token {
    pub lemma: String,
    pub surface: String,
    pub index: usize,
}

impl Token {
    pub fn new(lemma: impl Into<String>, surface: impl Into<String>, index: usize) -> Token {
        Token {
            lemma: lemma.into(),
            surface: surface.into(),
            index,
        }
    }

    /// Builds a token sequence whose surfaces equal their lemmas.
    pub fn from_lemmas<S: AsRef<str>>(lemmas: &[S]) -> Vec<Token> {
        lemmas
            .iter()
            .enumerate()
            .map(|(i, l)| Token::new(l.as_ref(), l.as_ref(), i))
            .collect()
    }
}

/// Three-way inference verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NliLabel {
    Entail,
    Contradict,
    Neutral,
}

impl NliLabel {
    pub const ALL: [NliLabel; 3] = [NliLabel::Entail, NliLabel::Contradict, NliLabel::Neutral];

    /// Corpus spelling (`ENTAILMENT`, `CONTRADICTION`, `NEUTRAL`).
    pub fn corpus_name(self) -> &'static str {
        match self {
            NliLabel::Entail => "ENTAILMENT",
            NliLabel::Contradict => "CONTRADICTION",
            NliLabel::Neutral => "NEUTRAL",
        }
    }

    pub fn short(self) -> char {
        match self {
            NliLabel::Entail => 'E',
            NliLabel::Contradict => 'C',
            NliLabel::Neutral => 'N',
        }
    }

    pub fn index(self) -> usize {
        match self {
            NliLabel::Entail => 0,
            NliLabel::Contradict => 1,
            NliLabel::Neutral => 2,
        }
    }
}

impl fmt::Display for NliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.corpus_name())
    }
}

impl FromStr for NliLabel {
    type Err = ParseValueError;

    fn from_str(s: &str) -> Result<NliLabel, ParseValueError> {
        match s.trim().to_ascii_uppercase().as_str() {
            "ENTAILMENT" | "E" => Ok(NliLabel::Entail),
            "CONTRADICTION" | "C" => Ok(NliLabel::Contradict),
            "NEUTRAL" | "N" => Ok(NliLabel::Neutral),
            _ => Err(ParseValueError::new("label", s)),
        }
    }
}

/// A phrase is a nonempty sequence of lemmas.
pub type Phrase = Vec<String>;

pub fn phrase(text: &str) -> Phrase {
    text.split_whitespace().map(str::to_owned).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelationKind {
    /// Denotation of the left side is a subset of the right side.
    Leq,
    /// Disjoint denotations.
    Perp,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Relation {
    pub kind: RelationKind,
    pub lhs: Phrase,
    pub rhs: Phrase,
}

impl Relation {
    pub fn leq(lhs: &str, rhs: &str) -> Relation {
        Relation {
            kind: RelationKind::Leq,
            lhs: phrase(lhs),
            rhs: phrase(rhs),
        }
    }

    pub fn perp(lhs: &str, rhs: &str) -> Relation {
        Relation {
            kind: RelationKind::Perp,
            lhs: phrase(lhs),
            rhs: phrase(rhs),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.kind {
            RelationKind::Leq => "≤",
            RelationKind::Perp => "⊥",
        };
        write!(f, "{} {} {}", self.lhs.join(" "), op, self.rhs.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EditDirection {
    Entailing,
    Contradicting,
}

/// One span replacement. `span` is a half-open token range of the sentence
/// the edit applies to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edit {
    pub span: (usize, usize),
    pub before: Phrase,
    pub after: Phrase,
    pub rule: String,
    pub direction: EditDirection,
}

impl Edit {
    /// Applies the edit to `sentence`, or `None` when the span does not hold
    /// `before`.
    pub fn apply(&self, sentence: &[String]) -> Option<Vec<String>> {
        let (start, end) = self.span;
        if start > end || end > sentence.len() || sentence[start..end] != self.before[..] {
            return None;
        }
        let mut out = Vec::with_capacity(sentence.len() + self.after.len());
        out.extend_from_slice(&sentence[..start]);
        out.extend(self.after.iter().cloned());
        out.extend_from_slice(&sentence[end..]);
        Some(out)
    }
}

impl fmt::Display for Edit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}..{} '{}'→'{}'",
            self.rule,
            self.span.0,
            self.span.1,
            self.before.join(" "),
            self.after.join(" ")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofStep {
    pub before: Vec<String>,
    pub edit: Edit,
    pub after: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Proof {
    pub steps: Vec<ProofStep>,
    pub verdict: NliLabel,
}

impl Proof {
    pub fn empty(verdict: NliLabel) -> Proof {
        Proof {
            steps: Vec::new(),
            verdict,
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Steps are chained and each edit reproduces its recorded result.
    pub fn is_chained(&self) -> bool {
        self.steps.windows(2).all(|w| w[0].after == w[1].before)
            && self
                .steps
                .iter()
                .all(|s| s.edit.apply(&s.before).as_deref() == Some(&s.after[..]))
    }

    /// Replays the edits from `start`, returning the final sentence.
    pub fn replay(&self, start: &[String]) -> Option<Vec<String>> {
        let mut current = start.to_vec();
        for step in &self.steps {
            current = step.edit.apply(&current)?;
        }
        Some(current)
    }

    /// One line per step plus a final verdict line.
    pub fn trace(&self) -> String {
        let mut out = String::new();
        for step in &self.steps {
            out.push_str(&format!(
                "{} --[{}]--> {}\n",
                step.before.join(" "),
                step.edit,
                step.after.join(" ")
            ));
        }
        out.push_str(self.verdict.corpus_name());
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemRecord {
    pub id: String,
    pub premise: String,
    pub hypothesis: String,
    pub gold: Option<NliLabel>,
}

impl ProblemRecord {
    pub fn new(
        id: impl Into<String>,
        premise: impl Into<String>,
        hypothesis: impl Into<String>,
        gold: Option<NliLabel>,
    ) -> ProblemRecord {
        ProblemRecord {
            id: id.into(),
            premise: premise.into(),
            hypothesis: hypothesis.into(),
            gold,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const POLARITIES: [Polarity; 3] = [Polarity::Up, Polarity::Down, Polarity::Flat];
    const MONOS: [Mono; 3] = [Mono::UpSlot, Mono::DownSlot, Mono::FlatSlot];

    #[test]
    fn compose_table() {
        assert_eq!(compose(Polarity::Up, Mono::DownSlot), Polarity::Down);
        assert_eq!(compose(Polarity::Up, Mono::UpSlot), Polarity::Up);
        assert_eq!(compose(Polarity::Down, Mono::DownSlot), Polarity::Up);
        assert_eq!(compose(Polarity::Down, Mono::UpSlot), Polarity::Down);
    }

    #[test]
    fn compose_is_flat_absorbing() {
        for p in POLARITIES {
            assert_eq!(compose(p, Mono::FlatSlot), Polarity::Flat);
        }
        for m in MONOS {
            assert_eq!(compose(Polarity::Flat, m), Polarity::Flat);
        }
    }

    #[test]
    fn down_slot_is_an_involution() {
        for p in [Polarity::Up, Polarity::Down] {
            assert_eq!(compose(compose(p, Mono::DownSlot), Mono::DownSlot), p);
        }
    }

    #[test]
    fn arrows_round_trip() {
        for p in POLARITIES {
            assert_eq!(Polarity::from_arrow(p.arrow()), Some(p));
        }
        for m in MONOS {
            assert_eq!(Mono::from_sign(m.sign()), Some(m));
        }
    }

    #[test]
    fn labels_parse() {
        assert_eq!("ENTAILMENT".parse::<NliLabel>().unwrap(), NliLabel::Entail);
        assert_eq!("neutral".parse::<NliLabel>().unwrap(), NliLabel::Neutral);
        assert!("MAYBE".parse::<NliLabel>().is_err());
    }

    #[test]
    fn edit_apply_and_replay() {
        let s = phrase("every linguist swim");
        let edit = Edit {
            span: (1, 2),
            before: phrase("linguist"),
            after: phrase("semanticist"),
            rule: "leq".into(),
            direction: EditDirection::Entailing,
        };
        let after = edit.apply(&s).unwrap();
        assert_eq!(after, phrase("every semanticist swim"));
        let proof = Proof {
            steps: vec![ProofStep {
                before: s.clone(),
                edit: edit.clone(),
                after: after.clone(),
            }],
            verdict: NliLabel::Entail,
        };
        assert!(proof.is_chained());
        assert_eq!(proof.replay(&s).unwrap(), after);
        assert!(edit.apply(&phrase("every dog swim")).is_none());
        assert_eq!(
            proof.trace(),
            "every linguist swim --[leq: 1..2 'linguist'→'semanticist']--> every semanticist swim\nENTAILMENT"
        );
    }
}
