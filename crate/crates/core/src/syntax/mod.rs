//! Categories, derivation trees, the lexicon and the fragment parser.

pub mod category;
pub mod derivation;
pub mod lexicon;
pub mod parser;

pub use category::{Atom, Category, Slash};
pub use derivation::{load_derivation, yield_of, Derivation, DerivationError};
pub use lexicon::{LexEntry, Lexicon, LexiconError, Pos};
pub use parser::{parse_fragment, parse_tokens, ParseError};
