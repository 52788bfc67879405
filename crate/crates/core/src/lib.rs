//! RVT words of the Monster tower over ℝ³ and the critical planes above them.
//!
//! * [`words`]: letters, spelling, counting and enumeration of RVT codes.
//! * [`charts`]: Kumpera-Rubin charts and the Pfaffian systems they induce.
//! * [`monsters`]: Baby Monster propagation, plane configurations and the
//!   backward identification walk.
//! * [`verify`]: oracles and the code-family grid.
//! * [`cli`]: the `rvt` command line.

pub mod charts;
pub mod cli;
pub mod dot;
pub mod error;
pub mod monsters;
pub mod verify;
pub mod words;

pub use charts::{
    chart_sequence, pfaffian_system, ChartChain, Coframe, PfaffianConstraint, PfaffianSystem,
};
pub use error::{Error, Result};
pub use monsters::{
    backward_identify, configuration, derive_spelling_automaton, plane_count, propagate,
    BabyMonsterRecord, DeltaIndex, Identification, PlaneConfiguration, PlaneForm, PlanePattern,
};
pub use words::{
    allowed_letters, census, count_words, enumerate_words, parse_word, project, rc_code, validate,
    Letter, LetterSet, PlaneSet, RvtWord, SpellingAutomaton,
};
