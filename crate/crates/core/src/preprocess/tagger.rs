//! Closed-class tagging with suffix heuristics for participles.

use serde::{Deserialize, Serialize};

use super::lemmatize::{irregular_participle, Lemmatizer};
use crate::syntax::{Lexicon, Pos};
use crate::types::Token;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tag {
    Det,
    Noun,
    Adj,
    Adv,
    Verb,
    /// Past participle.
    Vbn,
    /// Present participle.
    Vbg,
    Prep,
    Be,
    Do,
    Not,
    Pronoun,
    Rel,
    There,
    By,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tagged {
    pub token: Token,
    pub tag: Tag,
}

impl Tagged {
    pub fn new(lemma: &str, tag: Tag) -> Tagged {
        Tagged {
            token: Token::new(lemma, lemma, 0),
            tag,
        }
    }

    pub fn lemma(&self) -> &str {
        &self.token.lemma
    }
}

/// Splits raw text into lowercase word strings, expanding `n't`.
pub fn tokenize(raw: &str) -> Vec<String> {
    let mut out = Vec::new();
    for word in
        raw.split(|c: char| c.is_whitespace() || matches!(c, ',' | '.' | '!' | '?' | ';' | ':' | '"' | '(' | ')'))
    {
        if word.is_empty() {
            continue;
        }
        let lower = word.to_lowercase();
        if let Some(stem) = lower.strip_suffix("n't") {
            let stem = match stem {
                "ca" => "can",
                "wo" => "will",
                s => s,
            };
            if !stem.is_empty() {
                out.push(stem.to_owned());
            }
            out.push("not".to_owned());
        } else if let Some(stem) = lower.strip_suffix("'s") {
            out.push(stem.to_owned());
            out.push("is".to_owned());
        } else {
            let trimmed = lower.trim_matches('\'');
            if !trimmed.is_empty() {
                out.push(trimmed.to_owned());
            }
        }
    }
    out
}

fn lexical_tag(lemma: &str, lexicon: &Lexicon) -> Tag {
    match lemma {
        "be" => return Tag::Be,
        "do" => return Tag::Do,
        "not" => return Tag::Not,
        "there" => return Tag::There,
        "by" => return Tag::By,
        _ => {}
    }
    let order = [
        (Pos::Det, Tag::Det),
        (Pos::Pronoun, Tag::Pronoun),
        (Pos::Rel, Tag::Rel),
        (Pos::Prep, Tag::Prep),
        (Pos::NegPrep, Tag::Prep),
        (Pos::Noun, Tag::Noun),
        (Pos::TransVerb, Tag::Verb),
        (Pos::IntransVerb, Tag::Verb),
        (Pos::Adj, Tag::Adj),
        (Pos::Adv, Tag::Adv),
    ];
    order
        .iter()
        .find(|(pos, _)| lexicon.has(lemma, *pos))
        .map(|(_, tag)| *tag)
        .unwrap_or(Tag::Other)
}

/// Lemmatizes and tags raw text. Words directly after a form of *be* are
/// tagged as participles when their surface form shows it.
pub fn tag_sentence(raw: &str, lexicon: &Lexicon) -> Vec<Tagged> {
    let lemmatizer = Lemmatizer::new(lexicon);
    let words = tokenize(raw);
    let mut out: Vec<Tagged> = Vec::with_capacity(words.len());
    for (i, word) in words.iter().enumerate() {
        let lemma = lemmatizer.lemma(word);
        let mut tag = lexical_tag(&lemma, lexicon);
        let after_be = out.last().is_some_and(|t| t.tag == Tag::Be);
        let verbal = lexicon.has(&lemma, Pos::TransVerb) || lexicon.has(&lemma, Pos::IntransVerb);
        if verbal && word.ends_with("ing") && word != &lemma {
            tag = Tag::Vbg;
        } else if after_be
            && verbal
            && (word.ends_with("ed") || irregular_participle(word) || words.get(i + 1).is_some_and(|w| w == "by"))
        {
            tag = Tag::Vbn;
        }
        out.push(Tagged {
            token: Token::new(lemma, word.clone(), i),
            tag,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenizer_splits_and_expands() {
        assert_eq!(
            tokenize("A man isn't walking."),
            vec!["a", "man", "is", "not", "walking"]
        );
        assert_eq!(tokenize("  "), Vec::<String>::new());
        assert_eq!(tokenize("Don't, stop!"), vec!["do", "not", "stop"]);
    }

    #[test]
    fn participles() {
        let lex = Lexicon::bundled();
        let tags: Vec<Tag> = tag_sentence("A guitar is being played by a man", &lex)
            .iter()
            .map(|t| t.tag)
            .collect();
        assert_eq!(
            tags,
            vec![
                Tag::Det,
                Tag::Noun,
                Tag::Be,
                Tag::Be,
                Tag::Vbn,
                Tag::By,
                Tag::Det,
                Tag::Noun
            ]
        );
        let tags: Vec<Tag> = tag_sentence("There is no girl dancing", &lex)
            .iter()
            .map(|t| t.tag)
            .collect();
        assert_eq!(tags, vec![Tag::There, Tag::Be, Tag::Det, Tag::Noun, Tag::Vbg]);
    }
}
