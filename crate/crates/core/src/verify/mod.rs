//! Executable checks: brute-force oracles and cross-derivations.

mod table2;

pub use table2::{
    default_prefixes, table2_grid, table2_rows, DeltaFormula, Expectation, GridParams,
    InstanceResult, LevelIndexNote, RowSummary, SkipReason, SkippedInstance, Table2Row,
    VerificationReport,
};

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::Result;
use crate::monsters::{
    backward_identify, configuration, derive_spelling_automaton, Identification, PlaneForm,
};
use crate::words::{count_words, validate, Letter, PlaneSet, RvtWord};

/// All valid words of length `level`, by generate-and-test: every prefix is
/// extended by all seven letters and kept only if [`validate`] accepts it.
pub fn brute_force_words(level: usize) -> Vec<RvtWord> {
    if level == 0 {
        return Vec::new();
    }
    let mut frontier = vec![RvtWord::default()];
    for _ in 0..level {
        frontier = frontier
            .iter()
            .flat_map(|w| Letter::ALL.iter().map(move |l| w.extended(&[*l])))
            .filter(|w| validate(w).is_ok())
            .collect();
    }
    frontier
}

/// Plane configuration expected over a point, read off its last letter.
pub fn terminal_letter_planes(letter: Letter) -> PlaneSet {
    match letter {
        Letter::R => PlaneSet::V,
        Letter::V | Letter::T1 => PlaneSet::V_T1,
        Letter::T2 => PlaneSet::V_T2,
        Letter::L1 | Letter::L2 | Letter::L3 => PlaneSet::V_T1_T2,
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CrossCheckSummary {
    pub max_level: usize,
    /// Oracle population size per level, starting at level 1.
    pub oracle_counts: Vec<usize>,
    pub words_checked: usize,
    pub failures: Vec<String>,
}

impl CrossCheckSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Duality check on one word. Returns a description of each disagreement.
pub fn duality_failures(word: &RvtWord) -> Result<Vec<String>> {
    let config = configuration(word)?;
    let mut failures = Vec::new();
    for form in [PlaneForm::T1, PlaneForm::T2] {
        let forward = config.sources(form);
        match backward_identify(word, form)? {
            Identification::Found(record) => {
                if !forward.iter().any(|r| r.birth_level == record.birth_level) {
                    failures.push(format!(
                        "{word}: backward finds {form} = {} but forward has {:?}",
                        record.delta(),
                        forward
                            .iter()
                            .map(|r| r.delta().to_string())
                            .collect::<Vec<_>>()
                    ));
                } else if !forward.contains(&record) {
                    failures.push(format!(
                        "{word}: {form} records differ in trace or vanishing"
                    ));
                }
            }
            Identification::Absent(absence) => {
                if !forward.is_empty() {
                    failures.push(format!(
                        "{word}: backward rejects {form} ({absence}) but forward finds {}",
                        forward[0].delta()
                    ));
                }
            }
        }
    }
    Ok(failures)
}

/// Run the four cross-checks over every valid word of length `1..=max_level`.
pub fn cross_check(max_level: usize) -> CrossCheckSummary {
    let mut summary = CrossCheckSummary {
        max_level,
        ..Default::default()
    };

    if let Err(e) = derive_spelling_automaton() {
        summary.failures.push(format!("automaton: {e}"));
    }

    for level in 1..=max_level {
        let words = brute_force_words(level);
        summary.oracle_counts.push(words.len());
        let counted = count_words(level);
        if counted != BigUint::from(words.len()) {
            summary.failures.push(format!(
                "count at level {level}: transfer {counted} vs oracle {}",
                words.len()
            ));
        }
        for word in &words {
            summary.words_checked += 1;
            match duality_failures(word) {
                Ok(f) => summary.failures.extend(f),
                Err(e) => summary.failures.push(format!("{word}: {e}")),
            }
            match configuration(word) {
                Ok(config) => {
                    let expected = terminal_letter_planes(word.last().expect("nonempty"));
                    if config.plane_set() != expected {
                        summary.failures.push(format!(
                            "{word}: planes {} but last letter predicts {expected}",
                            config.plane_set()
                        ));
                    }
                }
                Err(e) => summary.failures.push(format!("{word}: {e}")),
            }
        }
    }
    summary
}
