//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown symbol '{symbol}' at position {pos}")]
    UnknownSymbol { symbol: char, pos: usize },

    #[error("duplicate letter '{0}' in alphabet")]
    DuplicateLetter(char),

    #[error("empty relation side at position {pos}")]
    EmptyRelationSide { pos: usize },

    #[error("empty word")]
    EmptyWord,

    #[error("invalid atom at step {step}: {reason}")]
    InvalidAtom { step: usize, reason: String },

    #[error("format error on line {line}: {msg}")]
    Format { line: usize, msg: String },

    #[error("cannot compose: bottom of the first diagram differs from top of the second")]
    LabelMismatch,

    #[error("diagrams are over different presentations")]
    PresentationMismatch,

    #[error("presentation is not in left-letter form")]
    NotLeftLetterForm,

    #[error("diagram has a dipole")]
    Reducible,

    #[error("cells cannot be reordered into a positive-negative decomposition")]
    ReorderFailed,

    #[error("iteration cap of {0} exceeded")]
    IterationCap(usize),

    #[error("missing partner cell over letter position {position}")]
    MissingPartnerCell { position: usize },

    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),

    #[error("need i < j, got i={i}, j={j}")]
    BadIndexPair { i: usize, j: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("expected an ({expected},{expected})-diagram")]
    NotBaseDiagram { expected: String },

    #[error("domain/range mismatch composing piecewise-linear maps")]
    DomainMismatch,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
