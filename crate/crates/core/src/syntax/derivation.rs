use serde_json::{json, Map, Value};
use thiserror::Error;

use super::category::{Category, Slash};
use crate::types::{Mono, Token};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Derivation {
    Leaf {
        token: Token,
        cat: Category,
    },
    /// Function application. The function's slash decides which child comes
    /// first in the yield.
    Apply {
        func: Box<Derivation>,
        arg: Box<Derivation>,
        cat: Category,
    },
    /// Type change of a bare noun into a raised noun phrase with an implicit
    /// existential determiner; `mono` marks the restrictor slot.
    Unary {
        child: Box<Derivation>,
        cat: Category,
        mono: Mono,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("categories do not combine at {path}: {message}")]
    Combination { path: String, message: String },
}

impl Derivation {
    pub fn leaf(lemma: &str, index: usize, cat: Category) -> Derivation {
        Derivation::Leaf {
            token: Token::new(lemma, lemma, index),
            cat,
        }
    }

    /// Applies `func` to `arg`, checking that the categories combine.
    pub fn apply(func: Derivation, arg: Derivation) -> Result<Derivation, DerivationError> {
        let cat = combine(func.cat(), arg.cat()).map_err(|message| DerivationError::Combination {
            path: "root".into(),
            message,
        })?;
        Ok(Derivation::Apply {
            func: Box::new(func),
            arg: Box::new(arg),
            cat,
        })
    }

    /// Raises a bare noun phrase over `target`.
    pub fn bare(child: Derivation, target: &Category) -> Derivation {
        Derivation::Unary {
            child: Box::new(child),
            cat: Category::raised_np(target, Mono::UpSlot),
            mono: Mono::UpSlot,
        }
    }

    pub fn cat(&self) -> &Category {
        match self {
            Derivation::Leaf { cat, .. } | Derivation::Apply { cat, .. } | Derivation::Unary { cat, .. } => cat,
        }
    }

    /// Children in left-to-right surface order.
    pub fn children_in_order(&self) -> Vec<&Derivation> {
        match self {
            Derivation::Leaf { .. } => Vec::new(),
            Derivation::Unary { child, .. } => vec![child],
            Derivation::Apply { func, arg, .. } => match func.cat().slash() {
                Some(Slash::Backward) => vec![arg, func],
                _ => vec![func, arg],
            },
        }
    }

    pub fn leaves(&self) -> Vec<&Token> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Token>) {
        match self {
            Derivation::Leaf { token, .. } => out.push(token),
            _ => {
                for c in self.children_in_order() {
                    c.collect_leaves(out);
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Derivation::Leaf { .. } => 1,
            Derivation::Unary { child, .. } => child.len(),
            Derivation::Apply { func, arg, .. } => func.len() + arg.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Renumbers leaf indices to match their surface order.
    pub fn reindex(&mut self) {
        let mut next = 0;
        self.reindex_from(&mut next);
    }

    fn reindex_from(&mut self, next: &mut usize) {
        match self {
            Derivation::Leaf { token, .. } => {
                token.index = *next;
                *next += 1;
            }
            Derivation::Unary { child, .. } => child.reindex_from(next),
            Derivation::Apply { func, arg, .. } => {
                if func.cat().slash() == Some(Slash::Backward) {
                    arg.reindex_from(next);
                    func.reindex_from(next);
                } else {
                    func.reindex_from(next);
                    arg.reindex_from(next);
                }
            }
        }
    }

    /// Every node paired with its token span, in pre-order.
    pub fn constituents(&self) -> Vec<(std::ops::Range<usize>, &Derivation)> {
        let mut out = Vec::new();
        self.collect_constituents(0, &mut out);
        out
    }

    fn collect_constituents<'a>(&'a self, start: usize, out: &mut Vec<(std::ops::Range<usize>, &'a Derivation)>) {
        out.push((start..start + self.len(), self));
        let mut offset = start;
        for c in self.children_in_order() {
            c.collect_constituents(offset, out);
            offset += c.len();
        }
    }

    /// Checks the combination invariant at every node.
    pub fn validate(&self) -> Result<(), DerivationError> {
        self.validate_at("root")
    }

    fn validate_at(&self, path: &str) -> Result<(), DerivationError> {
        match self {
            Derivation::Leaf { token, .. } => {
                if token.lemma.is_empty() || token.lemma.chars().any(char::is_whitespace) {
                    return Err(DerivationError::Schema {
                        path: path.into(),
                        message: format!("invalid lemma {:?}", token.lemma),
                    });
                }
                Ok(())
            }
            Derivation::Apply { func, arg, cat } => {
                func.validate_at(&format!("{path}.fn"))?;
                arg.validate_at(&format!("{path}.arg"))?;
                let combined = combine(func.cat(), arg.cat()).map_err(|message| DerivationError::Combination {
                    path: path.into(),
                    message,
                })?;
                if !combined.unifies(cat) {
                    return Err(DerivationError::Combination {
                        path: path.into(),
                        message: format!("declared {cat} but function yields {combined}"),
                    });
                }
                Ok(())
            }
            Derivation::Unary { child, cat, .. } => {
                child.validate_at(&format!("{path}.child"))?;
                if !child.cat().unifies(&Category::N) || cat.raised_target().is_none() {
                    return Err(DerivationError::Combination {
                        path: path.into(),
                        message: format!("no type change from {} to {cat}", child.cat()),
                    });
                }
                Ok(())
            }
        }
    }

    pub fn to_json(&self) -> Value {
        self.to_json_with(&mut |_| None)
    }

    /// Serializes the tree, letting `extra` add fields to each node object
    /// (visited in pre-order).
    pub fn to_json_with(&self, extra: &mut dyn FnMut(&Derivation) -> Option<(String, Value)>) -> Value {
        let mut body = Map::new();
        if let Some((k, v)) = extra(self) {
            body.insert(k, v);
        }
        match self {
            Derivation::Leaf { token, cat } => {
                body.insert("lemma".into(), json!(token.lemma));
                body.insert("surface".into(), json!(token.surface));
                body.insert("cat".into(), json!(cat.to_string()));
                json!({ "leaf": body })
            }
            Derivation::Apply { func, arg, cat } => {
                body.insert("fn".into(), func.to_json_with(extra));
                body.insert("arg".into(), arg.to_json_with(extra));
                body.insert("cat".into(), json!(cat.to_string()));
                json!({ "apply": body })
            }
            Derivation::Unary { child, cat, mono } => {
                body.insert("child".into(), child.to_json_with(extra));
                body.insert("cat".into(), json!(cat.to_string()));
                body.insert("mono".into(), json!(mono.sign().to_string()));
                json!({ "unary": body })
            }
        }
    }
}

/// Result category of applying `func` to `arg`.
pub(crate) fn combine(func: &Category, arg: &Category) -> Result<Category, String> {
    match func {
        Category::Func {
            result, arg: expected, ..
        } if expected.unifies(arg) => Ok((**result).clone()),
        Category::Func { arg: expected, .. } => Err(format!("{func} expects {expected}, got {arg}")),
        Category::Atom(_) => Err(format!("{func} is not a function (argument {arg})")),
    }
}

/// Parses a derivation document and verifies the combination invariant.
pub fn load_derivation(document: &str) -> Result<Derivation, DerivationError> {
    let value: Value = serde_json::from_str(document).map_err(|e| DerivationError::Schema {
        path: "root".into(),
        message: e.to_string(),
    })?;
    let mut derivation = node_from_json(&value, "root")?;
    derivation.reindex();
    derivation.validate()?;
    Ok(derivation)
}

fn schema(path: &str, message: impl Into<String>) -> DerivationError {
    DerivationError::Schema {
        path: path.into(),
        message: message.into(),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, DerivationError> {
    obj.get(key)
        .ok_or_else(|| schema(path, format!("missing field {key:?}")))
}

fn str_field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a str, DerivationError> {
    field(obj, key, path)?
        .as_str()
        .ok_or_else(|| schema(path, format!("field {key:?} must be a string")))
}

fn cat_field(obj: &Map<String, Value>, path: &str) -> Result<Category, DerivationError> {
    let text = str_field(obj, "cat", path)?;
    text.parse().map_err(|_| schema(path, format!("bad category {text:?}")))
}

fn node_from_json(value: &Value, path: &str) -> Result<Derivation, DerivationError> {
    let obj = value
        .as_object()
        .ok_or_else(|| schema(path, "node must be an object"))?;
    if obj.len() != 1 {
        return Err(schema(path, "node must have exactly one of leaf/apply/unary"));
    }
    let (kind, body) = obj.iter().next().expect("one entry");
    let body = body
        .as_object()
        .ok_or_else(|| schema(path, format!("{kind} body must be an object")))?;
    match kind.as_str() {
        "leaf" => {
            let lemma = str_field(body, "lemma", path)?;
            let surface = body.get("surface").and_then(Value::as_str).unwrap_or(lemma);
            if lemma.is_empty() || lemma.chars().any(char::is_whitespace) {
                return Err(schema(path, format!("invalid lemma {lemma:?}")));
            }
            Ok(Derivation::Leaf {
                token: Token::new(lemma, surface, 0),
                cat: cat_field(body, path)?,
            })
        }
        "apply" => {
            let func = node_from_json(field(body, "fn", path)?, &format!("{path}.fn"))?;
            let arg = node_from_json(field(body, "arg", path)?, &format!("{path}.arg"))?;
            Ok(Derivation::Apply {
                func: Box::new(func),
                arg: Box::new(arg),
                cat: cat_field(body, path)?,
            })
        }
        "unary" => {
            let child = node_from_json(field(body, "child", path)?, &format!("{path}.child"))?;
            let mono = match body.get("mono").and_then(Value::as_str) {
                None => Mono::UpSlot,
                Some(s) => {
                    let mut chars = s.chars();
                    match (chars.next().and_then(Mono::from_sign), chars.next()) {
                        (Some(m), None) => m,
                        _ => return Err(schema(path, format!("bad mono {s:?}"))),
                    }
                }
            };
            Ok(Derivation::Unary {
                child: Box::new(child),
                cat: cat_field(body, path)?,
                mono,
            })
        }
        other => Err(schema(path, format!("unknown node kind {other:?}"))),
    }
}

/// Left-to-right leaf lemmas.
pub fn yield_of(derivation: &Derivation) -> Vec<String> {
    derivation.leaves().into_iter().map(|t| t.lemma.clone()).collect()
}
