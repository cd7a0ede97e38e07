//! Categorial types with monotonicity-marked argument slots.
//!
//! Notation: `X/Y[m]` is a function seeking a `Y` to its right, `X\Y[m]` one
//! seeking a `Y` to its left, and the bracketed sign `m` (`+`, `-`, `=`) marks
//! the monotonicity of that argument slot. An omitted mark reads as `+`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParseValueError;
use crate::types::Mono;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Atom {
    S,
    NP,
    N,
    PP,
}

impl Atom {
    fn name(self) -> &'static str {
        match self {
            Atom::S => "S",
            Atom::NP => "NP",
            Atom::N => "N",
            Atom::PP => "PP",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Slash {
    /// `/`: argument to the right.
    Forward,
    /// `\`: argument to the left.
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Category {
    Atom(Atom),
    Func {
        result: Box<Category>,
        slash: Slash,
        arg: Box<Category>,
        mono: Mono,
    },
}

impl Category {
    pub const S: Category = Category::Atom(Atom::S);
    pub const NP: Category = Category::Atom(Atom::NP);
    pub const N: Category = Category::Atom(Atom::N);
    pub const PP: Category = Category::Atom(Atom::PP);

    pub fn func(result: Category, slash: Slash, arg: Category, mono: Mono) -> Category {
        Category::Func {
            result: Box::new(result),
            slash,
            arg: Box::new(arg),
            mono,
        }
    }

    pub fn fwd(result: Category, arg: Category, mono: Mono) -> Category {
        Category::func(result, Slash::Forward, arg, mono)
    }

    pub fn bwd(result: Category, arg: Category, mono: Mono) -> Category {
        Category::func(result, Slash::Backward, arg, mono)
    }

    /// `S\NP`, a verb phrase.
    pub fn vp() -> Category {
        Category::bwd(Category::S, Category::NP, Mono::UpSlot)
    }

    /// `T/T[m]` or `T\T[m]`.
    pub fn modifier(target: &Category, slash: Slash, mono: Mono) -> Category {
        Category::func(target.clone(), slash, target.clone(), mono)
    }

    /// Type-raised quantified noun phrase. In subject position (`target` = S)
    /// this is `S/(S\NP)[scope]`; otherwise `T\(T/NP)[scope]`, consuming a
    /// relation-denoting `T/NP` to its left.
    pub fn raised_np(target: &Category, scope: Mono) -> Category {
        if *target == Category::S {
            Category::fwd(Category::S, Category::vp(), scope)
        } else {
            let relation = Category::fwd(target.clone(), Category::NP, Mono::UpSlot);
            Category::bwd(target.clone(), relation, scope)
        }
    }

    /// Determiner over `target`: `raised_np(target, scope)/N[restrictor]`.
    pub fn determiner(target: &Category, restrictor: Mono, scope: Mono) -> Category {
        Category::fwd(Category::raised_np(target, scope), Category::N, restrictor)
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Category::Atom(_))
    }

    pub fn result(&self) -> Option<&Category> {
        match self {
            Category::Func { result, .. } => Some(result),
            Category::Atom(_) => None,
        }
    }

    pub fn arg(&self) -> Option<&Category> {
        match self {
            Category::Func { arg, .. } => Some(arg),
            Category::Atom(_) => None,
        }
    }

    pub fn slash(&self) -> Option<Slash> {
        match self {
            Category::Func { slash, .. } => Some(*slash),
            Category::Atom(_) => None,
        }
    }

    pub fn mono(&self) -> Option<Mono> {
        match self {
            Category::Func { mono, .. } => Some(*mono),
            Category::Atom(_) => None,
        }
    }

    /// Structural equality ignoring slot marks.
    pub fn unifies(&self, other: &Category) -> bool {
        match (self, other) {
            (Category::Atom(a), Category::Atom(b)) => a == b,
            (
                Category::Func {
                    result: r1,
                    slash: s1,
                    arg: a1,
                    ..
                },
                Category::Func {
                    result: r2,
                    slash: s2,
                    arg: a2,
                    ..
                },
            ) => s1 == s2 && r1.unifies(r2) && a1.unifies(a2),
            _ => false,
        }
    }

    /// If this is a raised noun phrase, the target it was raised over.
    pub fn raised_target(&self) -> Option<Category> {
        let Category::Func { result, slash, arg, .. } = self else {
            return None;
        };
        match slash {
            Slash::Forward if **result == Category::S && arg.unifies(&Category::vp()) => Some(Category::S),
            Slash::Backward => {
                let expected = Category::fwd((**result).clone(), Category::NP, Mono::UpSlot);
                arg.unifies(&expected).then(|| (**result).clone())
            }
            _ => None,
        }
    }

    fn write_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_atomic() {
            write!(f, "{self}")
        } else {
            write!(f, "({self})")
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Category::Atom(a) => f.write_str(a.name()),
            Category::Func {
                result,
                slash,
                arg,
                mono,
            } => {
                result.write_operand(f)?;
                f.write_str(match slash {
                    Slash::Forward => "/",
                    Slash::Backward => "\\",
                })?;
                arg.write_operand(f)?;
                write!(f, "[{}]", mono.sign())
            }
        }
    }
}

impl FromStr for Category {
    type Err = ParseValueError;

    fn from_str(s: &str) -> Result<Category, ParseValueError> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parser = CategoryParser { chars: &chars, pos: 0 };
        let cat = parser.category().ok_or_else(|| ParseValueError::new("category", s))?;
        if parser.pos != chars.len() {
            return Err(ParseValueError::new("category", s));
        }
        Ok(cat)
    }
}

struct CategoryParser<'a> {
    chars: &'a [char],
    pos: usize,
}

impl CategoryParser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn category(&mut self) -> Option<Category> {
        let mut left = self.primary()?;
        while let Some(c) = self.peek() {
            let slash = match c {
                '/' => Slash::Forward,
                '\\' => Slash::Backward,
                _ => break,
            };
            self.pos += 1;
            let arg = self.primary()?;
            let mono = self.mark()?;
            left = Category::func(left, slash, arg, mono);
        }
        Some(left)
    }

    fn mark(&mut self) -> Option<Mono> {
        if self.peek() != Some('[') {
            return Some(Mono::UpSlot);
        }
        let sign = *self.chars.get(self.pos + 1)?;
        if self.chars.get(self.pos + 2) != Some(&']') {
            return None;
        }
        self.pos += 3;
        Mono::from_sign(sign)
    }

    fn primary(&mut self) -> Option<Category> {
        match self.peek()? {
            '(' => {
                self.pos += 1;
                let inner = self.category()?;
                if self.peek() != Some(')') {
                    return None;
                }
                self.pos += 1;
                Some(inner)
            }
            c if c.is_ascii_uppercase() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_uppercase()) {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let atom = match name.as_str() {
                    "S" => Atom::S,
                    "NP" => Atom::NP,
                    "N" => Atom::N,
                    "PP" => Atom::PP,
                    _ => return None,
                };
                Some(Category::Atom(atom))
            }
            _ => None,
        }
    }
}
