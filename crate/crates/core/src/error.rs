use thiserror::Error;

use crate::structure::{StateId, SymbolId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Kinds of ids an acceptance condition or transition can point at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefKind {
    State,
    InitialState,
    TransitionTarget,
    Symbol,
}

impl std::fmt::Display for RefKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RefKind::State => "state",
            RefKind::InitialState => "initial state",
            RefKind::TransitionTarget => "transition target",
            RefKind::Symbol => "symbol",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("invalid symbol token {0:?}")]
    InvalidSymbol(String),
    #[error("duplicate symbol {0:?}")]
    DuplicateSymbol(String),
    #[error("structure has no states")]
    NoStates,
    #[error("missing transition from state {0} on symbol {1:?}")]
    IncompleteTransition(StateId, String),
    #[error("dangling {0} reference {1}")]
    DanglingReference(RefKind, usize),
    #[error("state {0} has no parity color")]
    MissingColor(StateId),
    #[error("color {color} of state {state} exceeds bound {bound}")]
    ColorOutOfRange {
        state: StateId,
        color: u32,
        bound: u32,
    },
    #[error("acceptance table contains an empty set")]
    EmptyTableEntry,
    #[error("transition ({0}, {1}, {2}) does not exist in the structure")]
    UnknownTransition(StateId, SymbolId, StateId),
    #[error("lasso word has an empty cycle")]
    EmptyCycle,
    #[error("symbol {0} is not in the alphabet")]
    UnknownSymbol(String),
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("capacity exceeded: more than {limit} {what}")]
    CapacityExceeded { what: &'static str, limit: usize },
    #[error("conversion from {from} to {to} is not supported on the same structure")]
    UnsupportedConversion {
        from: &'static str,
        to: &'static str,
    },
    #[error("acceptor is not weak")]
    NotWeak,
    #[error("language does not have a trivial right congruence (index {0})")]
    NotTrivial(usize),
    #[error("operation requires a state-Muller acceptor")]
    NotMuller,
    #[error("state {0} is not reachable")]
    Unreachable(StateId),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("random sampling gave up after {0} attempts")]
    SamplingExhausted(usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

impl Error {
    pub(crate) fn parse(line: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            line,
            reason: reason.into(),
        }
    }
}
