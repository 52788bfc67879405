use thiserror::Error;

use crate::words::{Letter, LetterSet, PlaneSet};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A character (or digit-suffixed token) outside the RVT token set.
    /// Positions are 1-indexed character offsets into the input.
    #[error("unknown token at position {position}")]
    UnknownToken { position: usize },

    #[error("empty word: an RVT code has at least one letter")]
    EmptyWord,

    /// The first letter (1-indexed) that is not allowed by the running plane set.
    #[error(
        "letter {found} at position {position} is not allowed here; expected one of {expected}"
    )]
    Misspelled {
        position: usize,
        found: Letter,
        expected: LetterSet,
    },

    #[error("letter {letter} cannot follow plane configuration {state}")]
    IllegalLetter { state: PlaneSet, letter: Letter },

    #[error("level {level} out of range {min}..={max}")]
    LevelOutOfRange {
        level: usize,
        min: usize,
        max: usize,
    },

    /// Two routes that must agree did not. Always an engine bug.
    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
}

impl Error {
    /// True for errors caused by the input word rather than the engine.
    pub fn is_word_error(&self) -> bool {
        matches!(
            self,
            Error::UnknownToken { .. }
                | Error::EmptyWord
                | Error::Misspelled { .. }
                | Error::IllegalLetter { .. }
        )
    }
}
