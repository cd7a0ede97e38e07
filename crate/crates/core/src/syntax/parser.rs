//! Deterministic recursive-descent parser for the controlled fragment.
//!
//! ```text
//! S      := NP VP
//! NP     := Det N' | Pronoun | N'            (bare N' gets an implicit existential)
//! N'     := Adj* N Post*                      (adjectives bind tighter than Post)
//! Post   := Prep NP | without NP | (that|who) VP
//! VP     := Adv VP | not VP | do VP | be Comp | V (NP)? Mod*
//! Comp   := not Comp | Prep NP | without NP | Adj | NP | VP
//! Mod    := Adv | Prep NP | without NP
//! ```
//!
//! Every choice point is resolved by one token of lookahead, and trailing
//! prepositional phrases attach to the innermost noun that can take them.

use thiserror::Error;

use super::category::{Category, Slash};
use super::derivation::Derivation;
use super::lexicon::{Lexicon, Pos};
use crate::types::{Mono, Token};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("word not in lexicon: {0:?}")]
    Oov(String),
    #[error("no parse at token {position}: {message}")]
    NoParse { position: usize, message: String },
}

/// Parses a lemma sequence. Multiword lemmas are fused first.
pub fn parse_fragment<S: AsRef<str>>(tokens: &[S], lexicon: &Lexicon) -> Result<Derivation, ParseError> {
    let lemmas: Vec<String> = tokens.iter().map(|t| t.as_ref().to_owned()).collect();
    let tokens = Token::from_lemmas(&lexicon.fuse(&lemmas));
    parse_tokens(&tokens, lexicon)
}

/// Parses tokens whose lemmas are already fused; surfaces are kept on leaves.
pub fn parse_tokens(tokens: &[Token], lexicon: &Lexicon) -> Result<Derivation, ParseError> {
    if let Some(t) = tokens.iter().find(|t| !lexicon.contains(&t.lemma)) {
        return Err(ParseError::Oov(t.lemma.clone()));
    }
    let mut parser = Parser {
        lex: lexicon,
        toks: tokens,
        pos: 0,
    };
    let tree = parser.sentence()?;
    if parser.pos != tokens.len() {
        return Err(parser.fail("unexpected trailing tokens"));
    }
    Ok(tree)
}

struct Parser<'a> {
    lex: &'a Lexicon,
    toks: &'a [Token],
    pos: usize,
}

type PResult = Result<Derivation, ParseError>;

impl Parser<'_> {
    fn fail(&self, message: &str) -> ParseError {
        ParseError::NoParse {
            position: self.pos,
            message: match self.toks.get(self.pos) {
                Some(t) => format!("{message} (at {:?})", t.lemma),
                None => format!("{message} (at end of input)"),
            },
        }
    }

    fn peek_is(&self, offset: usize, pos: Pos) -> bool {
        self.toks
            .get(self.pos + offset)
            .is_some_and(|t| self.lex.has(&t.lemma, pos))
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn leaf(&mut self, cat: Category) -> Derivation {
        let token = self.toks[self.pos].clone();
        self.pos += 1;
        Derivation::Leaf { token, cat }
    }

    fn apply(&self, func: Derivation, arg: Derivation) -> PResult {
        Derivation::apply(func, arg).map_err(|e| self.fail(&e.to_string()))
    }

    fn mark(&self, pos: Pos) -> Mono {
        self.lex.slot(&self.toks[self.pos].lemma, pos).unwrap_or(Mono::UpSlot)
    }

    fn sentence(&mut self) -> PResult {
        if self.at_end() {
            return Err(self.fail("empty sentence"));
        }
        let subject = self.noun_phrase(&Category::S)?;
        let vp = self.verb_phrase()?;
        self.apply(subject, vp)
    }

    fn starts_noun_phrase(&self, offset: usize) -> bool {
        self.peek_is(offset, Pos::Det)
            || self.peek_is(offset, Pos::Pronoun)
            || self.peek_is(offset, Pos::Adj)
            || self.peek_is(offset, Pos::Noun)
    }

    /// A quantified noun phrase raised over `target`.
    fn noun_phrase(&mut self, target: &Category) -> PResult {
        if self.peek_is(0, Pos::Det) {
            let (restrictor, scope) = self
                .lex
                .det_marks(&self.toks[self.pos].lemma)
                .expect("determiner entries carry marks");
            let det = self.leaf(Category::determiner(target, restrictor, scope));
            let nbar = self.n_bar()?;
            return self.apply(det, nbar);
        }
        if self.peek_is(0, Pos::Pronoun) {
            let scope = self
                .lex
                .entry(&self.toks[self.pos].lemma, Pos::Pronoun)
                .and_then(|e| e.category.mono())
                .unwrap_or(Mono::UpSlot);
            return Ok(self.leaf(Category::raised_np(target, scope)));
        }
        if self.peek_is(0, Pos::Adj) || self.peek_is(0, Pos::Noun) {
            let nbar = self.n_bar()?;
            return Ok(Derivation::bare(nbar, target));
        }
        Err(self.fail("expected a noun phrase"))
    }

    fn n_bar(&mut self) -> PResult {
        let mut adjectives = Vec::new();
        // An adjective/noun ambiguous word is an adjective only when more
        // nominal material follows it.
        while self.peek_is(0, Pos::Adj)
            && (!self.peek_is(0, Pos::Noun) || self.peek_is(1, Pos::Adj) || self.peek_is(1, Pos::Noun))
        {
            let mark = self.mark(Pos::Adj);
            adjectives.push(self.leaf(Category::fwd(Category::N, Category::N, mark)));
        }
        if !self.peek_is(0, Pos::Noun) {
            return Err(self.fail("expected a noun"));
        }
        let mut core = self.leaf(Category::N);
        while let Some(adj) = adjectives.pop() {
            core = self.apply(adj, core)?;
        }
        let noun_mod = Category::bwd(Category::N, Category::N, Mono::UpSlot);
        loop {
            let post = if self.peek_is(0, Pos::Prep) {
                self.prepositional(&noun_mod)?
            } else if self.peek_is(0, Pos::NegPrep) {
                self.negated_prepositional(&noun_mod)?
            } else if self.peek_is(0, Pos::Rel) {
                self.relative_clause()?
            } else {
                break;
            };
            core = self.apply(post, core)?;
        }
        Ok(core)
    }

    /// `Prep NP` producing `target`; the object is raised over the preposition.
    fn prepositional(&mut self, target: &Category) -> PResult {
        let mark = self.mark(Pos::Prep);
        let prep = self.leaf(Category::fwd(target.clone(), Category::NP, mark));
        let object = self.noun_phrase(target)?;
        self.apply(object, prep)
    }

    fn negated_prepositional(&mut self, target: &Category) -> PResult {
        let mark = self.mark(Pos::NegPrep);
        let raised = Category::raised_np(target, Mono::UpSlot);
        let without = self.leaf(Category::fwd(target.clone(), raised, mark));
        let object = self.noun_phrase(target)?;
        self.apply(without, object)
    }

    fn relative_clause(&mut self) -> PResult {
        let mark = self.mark(Pos::Rel);
        let noun_mod = Category::bwd(Category::N, Category::N, Mono::UpSlot);
        let rel = self.leaf(Category::fwd(noun_mod, Category::vp(), mark));
        let vp = self.verb_phrase()?;
        self.apply(rel, vp)
    }

    fn verb_phrase(&mut self) -> PResult {
        let vp = Category::vp();
        if self.at_end() {
            return Err(self.fail("expected a verb phrase"));
        }
        if self.peek_is(0, Pos::Adv) {
            let mark = self.mark(Pos::Adv);
            let adv = self.leaf(Category::modifier(&vp, Slash::Forward, mark));
            let rest = self.verb_phrase()?;
            return self.apply(adv, rest);
        }
        if self.peek_is(0, Pos::Neg) {
            let mark = self.mark(Pos::Neg);
            let not = self.leaf(Category::modifier(&vp, Slash::Forward, mark));
            let rest = self.verb_phrase()?;
            return self.apply(not, rest);
        }
        if self.peek_is(0, Pos::Aux)
            && (self.peek_is(1, Pos::Neg)
                || self.peek_is(1, Pos::Adv)
                || self.peek_is(1, Pos::IntransVerb)
                || self.peek_is(1, Pos::TransVerb))
            && !(self.peek_is(0, Pos::TransVerb) && self.starts_noun_phrase(1))
        {
            let mark = self.mark(Pos::Aux);
            let aux = self.leaf(Category::modifier(&vp, Slash::Forward, mark));
            let rest = self.verb_phrase()?;
            return self.apply(aux, rest);
        }
        if self.peek_is(0, Pos::Copula) {
            return self.copular();
        }
        let core = self.verb_core()?;
        self.verb_modifiers(core)
    }

    fn verb_core(&mut self) -> PResult {
        let vp = Category::vp();
        if self.peek_is(0, Pos::TransVerb) && self.starts_noun_phrase(1) {
            let mark = self.mark(Pos::TransVerb);
            let verb = self.leaf(Category::fwd(vp.clone(), Category::NP, mark));
            let object = self.noun_phrase(&vp)?;
            return self.apply(object, verb);
        }
        if self.peek_is(0, Pos::IntransVerb) {
            return Ok(self.leaf(vp));
        }
        Err(self.fail("expected a verb"))
    }

    fn verb_modifiers(&mut self, mut core: Derivation) -> PResult {
        let vp = Category::vp();
        let vp_mod = Category::modifier(&vp, Slash::Backward, Mono::UpSlot);
        loop {
            let modifier = if self.peek_is(0, Pos::Adv) {
                let mark = self.mark(Pos::Adv);
                self.leaf(Category::modifier(&vp, Slash::Backward, mark))
            } else if self.peek_is(0, Pos::Prep) {
                self.prepositional(&vp_mod)?
            } else if self.peek_is(0, Pos::NegPrep) {
                self.negated_prepositional(&vp_mod)?
            } else {
                break;
            };
            core = self.apply(modifier, core)?;
        }
        Ok(core)
    }

    fn copular(&mut self) -> PResult {
        let mark = self.mark(Pos::Copula);
        let be_token = self.toks[self.pos].clone();
        self.pos += 1;
        let complement = self.complement()?;
        let vp = Category::vp();
        // A predicate noun phrase is raised over the copula, read as the
        // identity relation `(S\NP)/NP`.
        if complement.cat().raised_target().as_ref() == Some(&vp) {
            let be = Derivation::Leaf {
                token: be_token,
                cat: Category::fwd(vp, Category::NP, mark),
            };
            return self.apply(complement, be);
        }
        let be = Derivation::Leaf {
            token: be_token,
            cat: Category::fwd(vp, complement.cat().clone(), mark),
        };
        self.apply(be, complement)
    }

    fn complement(&mut self) -> PResult {
        if self.at_end() {
            return Err(self.fail("expected a complement"));
        }
        if self.peek_is(0, Pos::Neg) {
            let not_index = self.pos;
            let mark = self.mark(Pos::Neg);
            self.pos += 1;
            let inner = self.complement()?;
            let not = Derivation::Leaf {
                token: self.toks[not_index].clone(),
                cat: Category::modifier(inner.cat(), Slash::Forward, mark),
            };
            return self.apply(not, inner);
        }
        if self.peek_is(0, Pos::Prep) {
            return self.prepositional(&Category::PP);
        }
        if self.peek_is(0, Pos::NegPrep) {
            return self.negated_prepositional(&Category::PP);
        }
        if self.peek_is(0, Pos::Adj) && !self.peek_is(1, Pos::Adj) && !self.peek_is(1, Pos::Noun) {
            let mark = self.mark(Pos::Adj);
            return Ok(self.leaf(Category::fwd(Category::N, Category::N, mark)));
        }
        if self.starts_noun_phrase(0) && !self.starts_verb_phrase(0) {
            return self.noun_phrase(&Category::vp());
        }
        self.verb_phrase()
    }

    fn starts_verb_phrase(&self, offset: usize) -> bool {
        self.peek_is(offset, Pos::IntransVerb)
            || self.peek_is(offset, Pos::TransVerb)
            || self.peek_is(offset, Pos::Adv)
            || self.peek_is(offset, Pos::Neg)
    }
}
