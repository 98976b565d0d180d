use thiserror::Error;

/// Errors produced by automaton construction and the operations on them.
///
/// Parse errors for the text formats carry positions and live in
/// [`crate::format::ParseError`]; everything else is collected here.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A word or lasso contained a symbol that is not in the alphabet.
    #[error("unknown symbol `{symbol}` at position {position}")]
    UnknownSymbol { symbol: String, position: usize },

    /// Two automata were combined but their alphabets differ.
    #[error("alphabet mismatch: only left has [{left_only}], only right has [{right_only}]")]
    AlphabetMismatch {
        left_only: String,
        right_only: String,
    },

    /// An operation was applied to an automaton of the wrong acceptance mode.
    #[error("mode error: {0}")]
    Mode(String),

    /// Malformed input (bad state index, invalid cover, ...).
    #[error("invalid input: {0}")]
    Input(String),

    /// A brute-force operation was asked to exceed its documented budget.
    #[error("resource budget exceeded: {0}")]
    Budget(String),
}
