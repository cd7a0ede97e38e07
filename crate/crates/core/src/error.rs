use thiserror::Error;

/// A string that does not name a value of the expected kind.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid {kind}: {value:?}")]
pub struct ParseValueError {
    pub kind: &'static str,
    pub value: String,
}

impl ParseValueError {
    pub fn new(kind: &'static str, value: &str) -> ParseValueError {
        ParseValueError {
            kind,
            value: value.to_owned(),
        }
    }
}
