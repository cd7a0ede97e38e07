use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::category::Category;
use crate::error::ParseValueError;
use crate::types::Mono;

/// Part of speech as used by the fragment grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pos {
    Det,
    Noun,
    Adj,
    Adv,
    IntransVerb,
    TransVerb,
    Prep,
    /// `without`: a preposition that negates the relation it introduces.
    NegPrep,
    Copula,
    Aux,
    Neg,
    Rel,
    /// Quantified pronoun such as `something`.
    Pronoun,
}

impl Pos {
    pub fn tag(self) -> &'static str {
        match self {
            Pos::Det => "DET",
            Pos::Noun => "N",
            Pos::Adj => "ADJ",
            Pos::Adv => "ADV",
            Pos::IntransVerb => "IV",
            Pos::TransVerb => "TV",
            Pos::Prep => "P",
            Pos::NegPrep => "PNEG",
            Pos::Copula => "COP",
            Pos::Aux => "AUX",
            Pos::Neg => "NEG",
            Pos::Rel => "REL",
            Pos::Pronoun => "PRO",
        }
    }

    pub fn is_verb(self) -> bool {
        matches!(self, Pos::IntransVerb | Pos::TransVerb)
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Pos {
    type Err = ParseValueError;

    fn from_str(s: &str) -> Result<Pos, ParseValueError> {
        Ok(match s {
            "DET" => Pos::Det,
            "N" => Pos::Noun,
            "ADJ" => Pos::Adj,
            "ADV" => Pos::Adv,
            "IV" => Pos::IntransVerb,
            "TV" => Pos::TransVerb,
            "P" => Pos::Prep,
            "PNEG" => Pos::NegPrep,
            "COP" => Pos::Copula,
            "AUX" => Pos::Aux,
            "NEG" => Pos::Neg,
            "REL" => Pos::Rel,
            "PRO" => Pos::Pronoun,
            _ => return Err(ParseValueError::new("part of speech", s)),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexEntry {
    pub category: Category,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("lexicon line {line}: {message}")]
    Format { line: usize, message: String },
}

/// Lemma → (marked category, part of speech) entries. Determiners, pronouns,
/// prepositions and modifiers are stored in one base category; the parser
/// re-targets them to the position they occupy, keeping their slot marks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    entries: BTreeMap<String, Vec<LexEntry>>,
}

const BUNDLED: &str = include_str!("../../data/lexicon.tsv");

impl Lexicon {
    pub fn bundled() -> Lexicon {
        Lexicon::from_tsv(BUNDLED).expect("bundled lexicon is well-formed")
    }

    /// Parses TSV rows `lemma<TAB>category<TAB>POS`. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn from_tsv(text: &str) -> Result<Lexicon, LexiconError> {
        let mut lexicon = Lexicon::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = trimmed.split('\t').map(str::trim).collect();
            if cols.len() != 3 {
                return Err(LexiconError::Format {
                    line,
                    message: format!("expected 3 tab-separated columns, found {}", cols.len()),
                });
            }
            let category: Category = cols[1].parse().map_err(|e: ParseValueError| LexiconError::Format {
                line,
                message: e.to_string(),
            })?;
            let pos: Pos = cols[2].parse().map_err(|e: ParseValueError| LexiconError::Format {
                line,
                message: e.to_string(),
            })?;
            lexicon
                .insert(cols[0], LexEntry { category, pos })
                .map_err(|message| LexiconError::Format { line, message })?;
        }
        Ok(lexicon)
    }

    /// Adds an entry after checking that its category fits its part of speech.
    pub fn insert(&mut self, lemma: &str, entry: LexEntry) -> Result<(), String> {
        if lemma.is_empty() || lemma.chars().any(char::is_whitespace) {
            return Err(format!("invalid lemma {lemma:?}"));
        }
        if !shape_fits(&entry) {
            return Err(format!(
                "category {} does not fit {} for {lemma:?}",
                entry.category, entry.pos
            ));
        }
        let list = self.entries.entry(lemma.to_owned()).or_default();
        if !list.contains(&entry) {
            list.push(entry);
        }
        Ok(())
    }

    pub fn contains(&self, lemma: &str) -> bool {
        self.entries.contains_key(lemma)
    }

    pub fn entries(&self, lemma: &str) -> &[LexEntry] {
        self.entries.get(lemma).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn has(&self, lemma: &str, pos: Pos) -> bool {
        self.entries(lemma).iter().any(|e| e.pos == pos)
    }

    pub fn entry(&self, lemma: &str, pos: Pos) -> Option<&LexEntry> {
        self.entries(lemma).iter().find(|e| e.pos == pos)
    }

    /// Restrictor and scope marks of a determiner.
    pub fn det_marks(&self, lemma: &str) -> Option<(Mono, Mono)> {
        let cat = &self.entry(lemma, Pos::Det)?.category;
        Some((cat.mono()?, cat.result()?.mono()?))
    }

    /// Slot mark of the single argument of a modifier-like entry.
    pub fn slot(&self, lemma: &str, pos: Pos) -> Option<Mono> {
        self.entry(lemma, pos)?.category.mono()
    }

    pub fn lemmas(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Multiword lemmas written with `_` (e.g. `a_few`), split into parts.
    pub fn compounds(&self) -> Vec<Vec<&str>> {
        self.entries
            .keys()
            .filter(|k| k.contains('_') && k.len() > 1)
            .map(|k| k.split('_').collect())
            .collect()
    }

    /// Fuses adjacent tokens that spell a multiword lemma.
    pub fn fuse(&self, tokens: &[String]) -> Vec<String> {
        let compounds = self.compounds();
        let mut out = Vec::with_capacity(tokens.len());
        let mut i = 0;
        'outer: while i < tokens.len() {
            for parts in &compounds {
                let n = parts.len();
                if i + n <= tokens.len() && tokens[i..i + n].iter().zip(parts).all(|(t, p)| t == p) {
                    out.push(parts.join("_"));
                    i += n;
                    continue 'outer;
                }
            }
            out.push(tokens[i].clone());
            i += 1;
        }
        out
    }
}

fn shape_fits(entry: &LexEntry) -> bool {
    let cat = &entry.category;
    let vp = Category::vp();
    match entry.pos {
        Pos::Det => {
            matches!(cat.arg(), Some(a) if *a == Category::N)
                && cat.result().and_then(Category::raised_target) == Some(Category::S)
        }
        Pos::Noun => *cat == Category::N,
        Pos::Adj => cat.unifies(&Category::fwd(Category::N, Category::N, Mono::UpSlot)),
        Pos::Adv => cat.unifies(&Category::bwd(vp.clone(), vp, Mono::UpSlot)),
        Pos::IntransVerb => cat.unifies(&vp),
        Pos::TransVerb => cat.unifies(&Category::fwd(vp, Category::NP, Mono::UpSlot)),
        Pos::Prep => cat.unifies(&Category::fwd(Category::PP, Category::NP, Mono::UpSlot)),
        Pos::NegPrep => cat.unifies(&Category::fwd(
            Category::PP,
            Category::raised_np(&Category::PP, Mono::UpSlot),
            Mono::UpSlot,
        )),
        Pos::Copula | Pos::Aux | Pos::Neg => cat.unifies(&Category::fwd(vp.clone(), vp, Mono::UpSlot)),
        Pos::Rel => cat.unifies(&Category::fwd(
            Category::bwd(Category::N, Category::N, Mono::UpSlot),
            vp,
            Mono::UpSlot,
        )),
        Pos::Pronoun => cat.raised_target() == Some(Category::S),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_lexicon_loads() {
        let lex = Lexicon::bundled();
        assert!(lex.len() > 150);
        assert!(lex.has("linguist", Pos::Noun));
        assert!(lex.has("play", Pos::TransVerb));
        assert!(lex.has("play", Pos::IntransVerb));
    }

    #[test]
    fn quantifier_marks() {
        let lex = Lexicon::bundled();
        let (down, up, flat) = (Mono::DownSlot, Mono::UpSlot, Mono::FlatSlot);
        for q in ["every", "all", "each"] {
            assert_eq!(lex.det_marks(q), Some((down, up)), "{q}");
        }
        for q in ["some", "a", "several", "a_few"] {
            assert_eq!(lex.det_marks(q), Some((up, up)), "{q}");
        }
        for q in ["no", "few"] {
            assert_eq!(lex.det_marks(q), Some((down, down)), "{q}");
        }
        for q in ["most", "many", "the"] {
            assert_eq!(lex.det_marks(q), Some((flat, up)), "{q}");
        }
        assert_eq!(lex.slot("not", Pos::Neg), Some(down));
        assert_eq!(lex.slot("without", Pos::NegPrep), Some(down));
    }

    #[test]
    fn rejects_mismatched_rows() {
        assert!(Lexicon::from_tsv("dog\tS\\NP\tN\n").is_err());
        assert!(Lexicon::from_tsv("dog\tN\n").is_err());
        assert!(Lexicon::from_tsv("dog\tN\tXYZ\n").is_err());
        let err = Lexicon::from_tsv("# header\n\ncat\tN\tN\nevery\tS/N\tDET\n").unwrap_err();
        assert_eq!(
            err,
            LexiconError::Format {
                line: 4,
                message: err_message(&err)
            }
        );
    }

    fn err_message(err: &LexiconError) -> String {
        let LexiconError::Format { message, .. } = err;
        message.clone()
    }

    #[test]
    fn fuses_multiword_lemmas() {
        let lex = Lexicon::bundled();
        let toks: Vec<String> = ["a", "few", "man", "next", "to", "a", "car"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(lex.fuse(&toks), vec!["a_few", "man", "next_to", "a", "car"]);
    }
}
