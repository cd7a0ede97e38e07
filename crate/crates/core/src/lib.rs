//! Natural-logic inference over a controlled English fragment.

pub mod augment;
pub mod engine;
pub mod error;
pub mod evalharness;
pub mod kb;
pub mod oracle;
pub mod polarizer;
pub mod preprocess;
pub mod syntax;
pub mod types;

pub use types::*;
