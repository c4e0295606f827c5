use crate::ring::RingError;
use crate::wfa::ReversibilityViolation;

/// Errors produced when constructing or combining automata and documents.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Ring(#[from] RingError),

    #[error("alphabet must be nonempty")]
    EmptyAlphabet,

    #[error("empty string is not a valid symbol")]
    EmptySymbol,

    #[error("duplicate symbol {0:?} in alphabet")]
    DuplicateSymbol(String),

    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),

    #[error("state index {index} out of range for {states} states")]
    StateOutOfRange { index: usize, states: usize },

    #[error("weight {0} is not a canonical element of the declared ring")]
    ForeignElement(String),

    #[error("duplicate transition ({from}, {symbol:?}, {to})")]
    DuplicateTransition {
        from: usize,
        symbol: String,
        to: usize,
    },

    #[error("duplicate {which} weight for state {state}")]
    DuplicateWeight { which: &'static str, state: usize },

    #[error("operands use different rings")]
    RingMismatch,

    #[error("operands use different alphabets")]
    AlphabetMismatch,

    #[error("automaton is not reversible: {0}")]
    NotReversible(ReversibilityViolation),

    #[error("automaton must have exactly one initial state, found {0}")]
    NotOneInitial(usize),

    #[error("missing transition from state {state} on symbol {symbol:?}")]
    IncompleteDfa { state: usize, symbol: String },

    #[error("conflicting transitions from state {state} on symbol {symbol:?}")]
    NondeterministicDfa { state: usize, symbol: String },

    #[error("a DFA document requires \"complete\": true")]
    NotMarkedComplete,

    #[error("decomposition does not describe the target language")]
    DecompositionMismatch,

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
