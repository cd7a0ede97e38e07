//! Model-theoretic evaluation of derivations, computed directly from
//! leaf meanings and function application. Monotonicity marks on
//! categories are never consulted.

use super::model::{classify_leaf, FiniteModel, LeafClass, Mask, SymbolKind};
use super::OracleError;
use crate::syntax::{Category, Derivation};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Value {
    Truth(bool),
    /// Extension of a noun, verb phrase or prepositional phrase.
    Set(Mask),
    /// Intersective modifier: applying it intersects with the mask.
    Modifier(Mask),
    /// Function of one entity, indexed by that entity.
    Curried(Vec<Value>),
    Det(String),
    Gq {
        det: String,
        restrictor: Mask,
        negated: bool,
    },
    Op(Op),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Identity,
    /// Copula before an adjective: modifier to set.
    Predicate,
    Complement,
    RelPronoun,
    Without(Shape),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Truth,
    Set,
    Modifier,
}

fn shape_of(cat: &Category) -> Shape {
    if *cat == Category::S {
        Shape::Truth
    } else if cat.result().zip(cat.arg()).is_some_and(|(r, a)| r.unifies(a)) {
        Shape::Modifier
    } else {
        Shape::Set
    }
}

fn wrap(shape: Shape, m: Mask) -> Value {
    match shape {
        Shape::Modifier => Value::Modifier(m),
        _ => Value::Set(m),
    }
}

fn count(m: Mask) -> u32 {
    m.count_ones()
}

/// Truth of `det(A, B)`.
pub fn quantify(det: &str, a: Mask, b: Mask) -> Option<bool> {
    let both = count(a & b);
    let rest = count(a & !b);
    Some(match det {
        "every" | "all" | "each" => rest == 0,
        "some" | "a" | "one" | "several" | "a_few" => both >= 1,
        "two" => both >= 2,
        "three" => both >= 3,
        "no" => both == 0,
        "most" => both > rest,
        "many" => both >= rest && both >= 1,
        "few" => both <= 1,
        "the" => count(a) == 1 && rest == 0,
        _ => return None,
    })
}

fn pronoun_det(lemma: &str) -> &'static str {
    match lemma {
        "something" | "someone" => "some",
        "everything" | "everyone" => "every",
        _ => "no",
    }
}

struct Evaluator<'m> {
    model: &'m FiniteModel,
    restrictors: Vec<Mask>,
}

impl Evaluator<'_> {
    fn unary(&self, kind: SymbolKind, lemma: &str) -> Result<Mask, OracleError> {
        self.model
            .unary_map(kind)
            .and_then(|m| m.get(lemma))
            .copied()
            .ok_or_else(|| OracleError::UninterpretedLemma(lemma.to_owned()))
    }

    fn binary(&self, kind: SymbolKind, lemma: &str) -> Result<&[Mask], OracleError> {
        self.model
            .binary_map(kind)
            .and_then(|m| m.get(lemma))
            .map(Vec::as_slice)
            .ok_or_else(|| OracleError::UninterpretedLemma(lemma.to_owned()))
    }

    /// `y ↦ {x : R(x, y)}` lifted to `shape`.
    fn relation(&self, rows: &[Mask], shape: Shape) -> Value {
        let d = self.model.domain;
        Value::Curried(
            (0..d)
                .map(|y| {
                    let xs = (0..d).filter(|&x| rows[x] & (1 << y) != 0).fold(0, |m, x| m | (1 << x));
                    wrap(shape, xs)
                })
                .collect(),
        )
    }

    fn leaf(&mut self, lemma: &str, cat: &Category) -> Result<Value, OracleError> {
        let full = self.model.full();
        Ok(match classify_leaf(lemma, cat) {
            LeafClass::Determiner => Value::Det(lemma.to_owned()),
            LeafClass::Pronoun(noun) => {
                let restrictor = match noun {
                    Some(n) => {
                        let m = self.unary(SymbolKind::Noun, n)?;
                        self.restrictors.push(m);
                        m
                    }
                    None => full,
                };
                Value::Gq {
                    det: pronoun_det(lemma).to_owned(),
                    restrictor,
                    negated: false,
                }
            }
            LeafClass::Copula => {
                let arg = cat
                    .arg()
                    .ok_or_else(|| OracleError::Unsupported(format!("copula category {cat}")))?;
                if *arg == Category::NP {
                    let d = self.model.domain;
                    Value::Curried((0..d).map(|y| Value::Set(1 << y)).collect())
                } else if arg.result() == Some(&Category::N) && arg.arg() == Some(&Category::N) {
                    Value::Op(Op::Predicate)
                } else {
                    Value::Op(Op::Identity)
                }
            }
            LeafClass::Identity => Value::Op(Op::Identity),
            LeafClass::Negation => Value::Op(Op::Complement),
            LeafClass::RelPronoun => Value::Op(Op::RelPronoun),
            LeafClass::Without => {
                let shape = shape_of(cat.result().unwrap_or(cat));
                Value::Op(Op::Without(shape))
            }
            LeafClass::Content(kind) => match kind {
                SymbolKind::Noun | SymbolKind::IntransVerb => Value::Set(self.unary(kind, lemma)?),
                SymbolKind::Adjective | SymbolKind::Adverb => Value::Modifier(self.unary(kind, lemma)?),
                SymbolKind::TransVerb => {
                    let rows = self.binary(kind, lemma)?.to_vec();
                    self.relation(&rows, Shape::Set)
                }
                SymbolKind::Prep => {
                    let rows = self.binary(kind, lemma)?.to_vec();
                    self.relation(&rows, shape_of(cat.result().unwrap_or(cat)))
                }
            },
            LeafClass::Unknown => return Err(OracleError::UninterpretedLemma(lemma.to_owned())),
        })
    }

    fn gq(&self, det: &str, restrictor: Mask, negated: bool, scope: &Value) -> Result<Value, OracleError> {
        let q = |b: Mask| {
            quantify(det, restrictor, b)
                .map(|t| t != negated)
                .ok_or_else(|| OracleError::UninterpretedLemma(det.to_owned()))
        };
        match scope {
            Value::Set(b) => Ok(Value::Truth(q(*b)?)),
            Value::Curried(vals) => {
                let d = self.model.domain;
                match vals.first() {
                    Some(Value::Truth(_)) => {
                        let b = (0..d)
                            .filter(|&y| vals[y] == Value::Truth(true))
                            .fold(0, |m, y| m | (1 << y));
                        Ok(Value::Truth(q(b)?))
                    }
                    Some(first @ (Value::Set(_) | Value::Modifier(_))) => {
                        let shape = if matches!(first, Value::Modifier(_)) {
                            Shape::Modifier
                        } else {
                            Shape::Set
                        };
                        let mut out = 0;
                        for x in 0..d {
                            let b = (0..d)
                                .filter(|&y| matches!(vals[y], Value::Set(m) | Value::Modifier(m) if m & (1 << x) != 0))
                                .fold(0, |m, y| m | (1 << y));
                            if q(b)? {
                                out |= 1 << x;
                            }
                        }
                        Ok(wrap(shape, out))
                    }
                    _ => Err(OracleError::Unsupported(
                        "quantifier over a non-relational scope".into(),
                    )),
                }
            }
            _ => Err(OracleError::Unsupported(
                "quantifier over a non-relational scope".into(),
            )),
        }
    }

    fn apply(&mut self, func: Value, arg: Value) -> Result<Value, OracleError> {
        let full = self.model.full();
        let bad = |what: &str| Err(OracleError::Unsupported(what.to_owned()));
        match (func, arg) {
            (Value::Modifier(m), Value::Set(s)) => Ok(Value::Set(m & s)),
            (Value::Det(det), Value::Set(a)) => {
                self.restrictors.push(a);
                Ok(Value::Gq {
                    det,
                    restrictor: a,
                    negated: false,
                })
            }
            (
                Value::Gq {
                    det,
                    restrictor,
                    negated,
                },
                scope,
            ) => self.gq(&det, restrictor, negated, &scope),
            (Value::Op(op), arg) => match (op, arg) {
                (Op::Identity, v) => Ok(v),
                (Op::Predicate, Value::Modifier(m)) => Ok(Value::Set(m)),
                (Op::Complement, Value::Set(m)) => Ok(Value::Set(!m & full)),
                (Op::Complement, Value::Modifier(m)) => Ok(Value::Modifier(!m & full)),
                (
                    Op::Complement,
                    Value::Gq {
                        det,
                        restrictor,
                        negated,
                    },
                ) => Ok(Value::Gq {
                    det,
                    restrictor,
                    negated: !negated,
                }),
                (Op::RelPronoun, Value::Set(m)) => Ok(Value::Modifier(m)),
                (
                    Op::Without(shape),
                    Value::Gq {
                        det,
                        restrictor,
                        negated,
                    },
                ) => {
                    let with = self.binary(SymbolKind::Prep, "with")?.to_vec();
                    let mut out = 0;
                    for (x, row) in with.iter().enumerate() {
                        let holds = quantify(&det, restrictor, *row)
                            .ok_or_else(|| OracleError::UninterpretedLemma(det.clone()))?
                            != negated;
                        if !holds {
                            out |= 1 << x;
                        }
                    }
                    Ok(match shape {
                        Shape::Truth => Value::Truth(out == full),
                        s => wrap(s, out),
                    })
                }
                _ => bad("operator applied to an argument of the wrong type"),
            },
            _ => bad("ill-typed application"),
        }
    }

    fn eval(&mut self, node: &Derivation) -> Result<Value, OracleError> {
        match node {
            Derivation::Leaf { token, cat } => self.leaf(&token.lemma, cat),
            Derivation::Apply { func, arg, .. } => {
                let f = self.eval(func)?;
                let a = self.eval(arg)?;
                self.apply(f, a)
            }
            Derivation::Unary { child, .. } => match self.eval(child)? {
                Value::Set(a) => {
                    self.restrictors.push(a);
                    Ok(Value::Gq {
                        det: "some".into(),
                        restrictor: a,
                        negated: false,
                    })
                }
                _ => Err(OracleError::Unsupported("bare noun phrase over a non-set".into())),
            },
        }
    }
}

/// Truth value of a sentence together with the extensions of every
/// quantifier restrictor met on the way.
pub fn eval_with_restrictors(model: &FiniteModel, derivation: &Derivation) -> Result<(bool, Vec<Mask>), OracleError> {
    let mut ev = Evaluator {
        model,
        restrictors: Vec::new(),
    };
    match ev.eval(derivation)? {
        Value::Truth(t) => Ok((t, ev.restrictors)),
        _ => Err(OracleError::Unsupported("derivation is not a sentence".into())),
    }
}

/// Truth value of a sentence-level derivation in `model`.
pub fn eval_sentence(model: &FiniteModel, derivation: &Derivation) -> Result<bool, OracleError> {
    eval_with_restrictors(model, derivation).map(|(t, _)| t)
}

/// True when every restrictor in the sentence is nonempty in `model`.
pub fn presuppositions_hold(model: &FiniteModel, derivation: &Derivation) -> Result<bool, OracleError> {
    eval_with_restrictors(model, derivation).map(|(_, r)| r.iter().all(|m| *m != 0))
}
