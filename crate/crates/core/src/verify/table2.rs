//! Grid harness for the table of critical-plane sources by code family.
//!
//! Each row is a family `R ω′ <suffix>` with an expected source `δʲᵢ(p_ℓ)`
//! (or none) for each tangency plane, written as formulas in `k` (word
//! length), `m`, `s` (suffix repeat counts) and `r = |ω′|`. A row is checked
//! by instantiating it over a set of prefixes `R ω′` and comparing membership
//! in the engine's source lists.
//!
//! A formula whose printed level `ℓ` differs from `k` cannot describe a plane
//! over the word's own terminal point. Such rows are recorded in
//! [`VerificationReport::level_index_notes`] and evaluated with the printed
//! birth level `i` and `j = k - i` instead.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::monsters::{configuration, BabyMonsterRecord, DeltaIndex};
use crate::words::{enumerate_words, Letter, RvtWord};

/// Inputs to a row formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GridParams {
    pub k: i64,
    pub m: i64,
    pub r: i64,
    pub s: i64,
}

type Formula = fn(&GridParams) -> i64;

#[derive(Clone, Copy)]
pub struct DeltaFormula {
    pub text: &'static str,
    pub prolongations: Formula,
    pub birth_level: Formula,
    pub level: Formula,
}

impl std::fmt::Debug for DeltaFormula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.text)
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Expectation {
    Absent,
    Source(DeltaFormula),
}

#[derive(Debug, Clone, Copy)]
pub struct Table2Row {
    pub code: &'static str,
    pub suffix: fn(usize, usize) -> Vec<Letter>,
    pub uses_m: bool,
    pub uses_s: bool,
    pub t1: Expectation,
    pub t2: Expectation,
}

const fn delta(
    text: &'static str,
    prolongations: Formula,
    birth_level: Formula,
    level: Formula,
) -> Expectation {
    Expectation::Source(DeltaFormula {
        text,
        prolongations,
        birth_level,
        level,
    })
}

fn at_k(p: &GridParams) -> i64 {
    p.k
}

fn vt_m(m: usize, tail: &[Letter]) -> Vec<Letter> {
    let mut out = vec![Letter::V];
    out.extend(std::iter::repeat_n(Letter::T1, m));
    out.extend_from_slice(tail);
    out
}

fn vt_m_l_s(m: usize, s: usize, tail: &[Letter]) -> Vec<Letter> {
    let mut out = vt_m(m, &[]);
    out.extend(std::iter::repeat_n(Letter::L1, s));
    out.extend_from_slice(tail);
    out
}

/// The rows as printed, one per code family.
pub fn table2_rows() -> Vec<Table2Row> {
    use Letter::*;
    let d1_km1 = delta("d^1_{k-1}(p_k)", |_| 1, |p| p.k - 1, at_k);
    let d2_km2 = delta("d^2_{k-2}(p_k)", |_| 2, |p| p.k - 2, at_k);
    let d3_km3 = delta("d^3_{k-3}(p_k)", |_| 3, |p| p.k - 3, at_k);
    vec![
        Table2Row {
            code: "RwL1",
            suffix: |_, _| vec![L1],
            uses_m: false,
            uses_s: false,
            t1: d1_km1,
            t2: d2_km2,
        },
        Table2Row {
            code: "Rw'VT^mLL2",
            suffix: |m, _| vt_m(m, &[L1, L2]),
            uses_m: true,
            uses_s: false,
            t1: delta(
                "d^2_{m+2+r}(p_{m+r+4})",
                |_| 2,
                |p| p.m + 2 + p.r,
                |p| p.m + p.r + 4,
            ),
            t2: delta(
                "d^{m+3}_{1+r}(p_{m+r+4})",
                |p| p.m + 3,
                |p| 1 + p.r,
                |p| p.m + p.r + 4,
            ),
        },
        Table2Row {
            code: "Rw'LLL2",
            suffix: |_, _| vec![L1, L1, L2],
            uses_m: false,
            uses_s: false,
            t1: d2_km2,
            t2: d3_km3,
        },
        Table2Row {
            code: "Rw'VT^mLL3",
            suffix: |m, _| vt_m(m, &[L1, L3]),
            uses_m: true,
            uses_s: false,
            t1: d1_km1,
            t2: delta(
                "d^{m+3}_{r+1}(p_{r+m+4})",
                |p| p.m + 3,
                |p| p.r + 1,
                |p| p.r + p.m + 4,
            ),
        },
        Table2Row {
            code: "Rw'LLL3",
            suffix: |_, _| vec![L1, L1, L3],
            uses_m: false,
            uses_s: false,
            t1: d1_km1,
            t2: d3_km3,
        },
        Table2Row {
            code: "Rw'VT^mLT2L3",
            suffix: |m, _| vt_m(m, &[L1, T2, L3]),
            uses_m: true,
            uses_s: false,
            t1: d1_km1,
            t2: delta(
                "d^{m+4}_{r+1}(p_{m+r+5})",
                |p| p.m + 4,
                |p| p.r + 1,
                |p| p.m + p.r + 5,
            ),
        },
        Table2Row {
            code: "Rw'LLT2L3",
            suffix: |_, _| vec![L1, L1, T2, L3],
            uses_m: false,
            uses_s: false,
            t1: d1_km1,
            t2: delta("d^4_{k-4}(p_k)", |_| 4, |p| p.k - 4, at_k),
        },
        Table2Row {
            code: "Rw'VT^mLL2T2L3",
            suffix: |m, _| vt_m(m, &[L1, L2, T2, L3]),
            uses_m: true,
            uses_s: false,
            t1: d1_km1,
            t2: delta(
                "d^4_{m+r+2}(p_{m+r+6})",
                |_| 4,
                |p| p.m + p.r + 2,
                |p| p.m + p.r + 6,
            ),
        },
        Table2Row {
            code: "Rw'VT^mL^sL2T2L3",
            suffix: |m, s| vt_m_l_s(m, s, &[L2, T2, L3]),
            uses_m: true,
            uses_s: true,
            t1: d1_km1,
            t2: delta(
                "d^4_{m+r+2}(p_{m+r+6})",
                |_| 4,
                |p| p.m + p.r + 2,
                |p| p.m + p.r + 6,
            ),
        },
        Table2Row {
            code: "Rw'LT1",
            suffix: |_, _| vec![L1, T1],
            uses_m: false,
            uses_s: false,
            t1: d2_km2,
            t2: Expectation::Absent,
        },
        Table2Row {
            code: "Rw'L1T1",
            suffix: |_, _| vec![L1, T1],
            uses_m: false,
            uses_s: false,
            t1: d2_km2,
            t2: Expectation::Absent,
        },
        Table2Row {
            code: "Rw'L2T1",
            suffix: |_, _| vec![L2, T1],
            uses_m: false,
            uses_s: false,
            t1: delta("d^3_{k-3}(p_{k+3})", |_| 3, |p| p.k - 3, |p| p.k + 3),
            t2: Expectation::Absent,
        },
        Table2Row {
            code: "Rw'L3T1",
            suffix: |_, _| vec![L3, T1],
            uses_m: false,
            uses_s: false,
            t1: d2_km2,
            t2: Expectation::Absent,
        },
        Table2Row {
            code: "Rw'VT^mLT2",
            suffix: |m, _| vt_m(m, &[L1, T2]),
            uses_m: true,
            uses_s: false,
            t1: Expectation::Absent,
            t2: delta(
                "d^{m+3}_{1+r}(p_{m+r+4})",
                |p| p.m + 3,
                |p| 1 + p.r,
                |p| p.m + p.r + 4,
            ),
        },
        Table2Row {
            code: "Rw'LLT2",
            suffix: |_, _| vec![L1, L1, T2],
            uses_m: false,
            uses_s: false,
            t1: Expectation::Absent,
            t2: d3_km3,
        },
        Table2Row {
            code: "Rw'VT^mLL2T2",
            suffix: |m, _| vt_m(m, &[L1, L2, T2]),
            uses_m: true,
            uses_s: false,
            t1: Expectation::Absent,
            t2: delta(
                "d^{m+4}_{r+1}(p_{m+r+5})",
                |p| p.m + 4,
                |p| p.r + 1,
                |p| p.m + p.r + 5,
            ),
        },
        Table2Row {
            code: "Rw'VT^mL^sL2T2",
            suffix: |m, s| vt_m_l_s(m, s, &[L2, T2]),
            uses_m: true,
            uses_s: true,
            t1: Expectation::Absent,
            t2: delta(
                "d^4_{r+m+s}(p_{m+s+r+4})",
                |_| 4,
                |p| p.r + p.m + p.s,
                |p| p.m + p.s + p.r + 4,
            ),
        },
        Table2Row {
            code: "Rw'VT^mLL3T2",
            suffix: |m, _| vt_m(m, &[L1, L3, T2]),
            uses_m: true,
            uses_s: false,
            t1: Expectation::Absent,
            t2: delta(
                "d^{m+4}_{r+1}(p_{m+r+5})",
                |p| p.m + 4,
                |p| p.r + 1,
                |p| p.m + p.r + 5,
            ),
        },
        Table2Row {
            code: "Rw'VT^mL^sL3T2",
            suffix: |m, s| vt_m_l_s(m, s, &[L3, T2]),
            uses_m: true,
            uses_s: true,
            t1: Expectation::Absent,
            t2: delta(
                "d^3_{m+s+r}(p_{m+s+r+3})",
                |_| 3,
                |p| p.m + p.s + p.r,
                |p| p.m + p.s + p.r + 3,
            ),
        },
    ]
}

/// All valid words of length at most 4.
pub fn default_prefixes() -> Vec<RvtWord> {
    (1..=4).flat_map(enumerate_words).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SkipReason {
    /// The instantiated word is misspelled.
    InvalidWord,
    /// `ω′` already contains T2, L2 or L3, so the suffix letter is not a first occurrence.
    NotFirstOccurrence,
}

#[derive(Debug, Clone, Serialize)]
pub struct SkippedInstance {
    pub row: &'static str,
    pub word: String,
    pub reason: SkipReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelIndexNote {
    pub row: &'static str,
    pub plane: &'static str,
    pub printed: &'static str,
    pub reading: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceResult {
    pub row: &'static str,
    pub word: String,
    pub params: GridParams,
    pub expected_t1: Option<DeltaIndex>,
    pub expected_t2: Option<DeltaIndex>,
    pub actual_t1: Vec<DeltaIndex>,
    pub actual_t2: Vec<DeltaIndex>,
    /// A level index was read as `p_k`.
    pub reread: bool,
    /// More than one fiber realizes the same plane; kept for manual inspection.
    pub multiple_sources: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RowSummary {
    pub row: &'static str,
    pub instances: usize,
    pub passed: usize,
    pub level_index_flagged: bool,
}

impl RowSummary {
    pub fn all_passed(&self) -> bool {
        self.instances > 0 && self.passed == self.instances
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub instances: Vec<InstanceResult>,
    pub skipped: Vec<SkippedInstance>,
    pub level_index_notes: Vec<LevelIndexNote>,
    pub rows: Vec<RowSummary>,
}

impl VerificationReport {
    pub fn total(&self) -> usize {
        self.instances.len()
    }

    pub fn passed(&self) -> usize {
        self.instances.iter().filter(|i| i.passed).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceResult> {
        self.instances.iter().filter(|i| !i.passed)
    }

    pub fn row(&self, code: &str) -> Option<&RowSummary> {
        self.rows.iter().find(|r| r.row == code)
    }
}

const PK_READING: &str = "level index differs from k; checked as p_k with the printed birth level";

/// Expected index for one plane, and whether the level index had to be reread.
fn expected_delta(expectation: &Expectation, params: &GridParams) -> (Option<DeltaIndex>, bool) {
    match expectation {
        Expectation::Absent => (None, false),
        Expectation::Source(f) => {
            let birth = (f.birth_level)(params);
            let printed_level = (f.level)(params);
            let (prolongations, reread) = if printed_level == params.k {
                ((f.prolongations)(params), false)
            } else {
                (params.k - birth, true)
            };
            if birth < 1 || prolongations < 0 {
                // impossible index: can never be a member
                return (Some(DeltaIndex::new(usize::MAX, 0)), reread);
            }
            (
                Some(DeltaIndex::new(prolongations as usize, birth as usize)),
                reread,
            )
        }
    }
}

fn matches(expected: Option<DeltaIndex>, actual: &[DeltaIndex]) -> bool {
    match expected {
        None => actual.is_empty(),
        Some(d) => actual.contains(&d),
    }
}

fn indices(records: &[BabyMonsterRecord]) -> Vec<DeltaIndex> {
    records.iter().map(BabyMonsterRecord::delta).collect()
}

/// Instantiate every row over `m in 0..=max_m`, `s in 2..=max_s` and each prefix.
pub fn table2_grid(max_m: usize, max_s: usize, prefixes: &[RvtWord]) -> VerificationReport {
    let rows = table2_rows();
    let mut instances = Vec::new();
    let mut skipped = Vec::new();
    let mut notes: Vec<LevelIndexNote> = Vec::new();
    let mut summaries: BTreeMap<usize, RowSummary> = BTreeMap::new();

    for (row_idx, row) in rows.iter().enumerate() {
        let summary = summaries.entry(row_idx).or_insert(RowSummary {
            row: row.code,
            instances: 0,
            passed: 0,
            level_index_flagged: false,
        });
        let ms: Vec<usize> = if row.uses_m {
            (0..=max_m).collect()
        } else {
            vec![0]
        };
        let ss: Vec<usize> = if row.uses_s {
            (2..=max_s.max(2)).collect()
        } else {
            vec![2]
        };

        for prefix in prefixes {
            let first_occurrence = !prefix
                .letters()
                .iter()
                .any(|l| matches!(l, Letter::T2 | Letter::L2 | Letter::L3));
            for &m in &ms {
                for &s in &ss {
                    let word = prefix.extended(&(row.suffix)(m, s));
                    let config = match configuration(&word) {
                        Ok(c) => c,
                        Err(_) => {
                            skipped.push(SkippedInstance {
                                row: row.code,
                                word: word.to_string(),
                                reason: SkipReason::InvalidWord,
                            });
                            continue;
                        }
                    };
                    if !first_occurrence {
                        skipped.push(SkippedInstance {
                            row: row.code,
                            word: word.to_string(),
                            reason: SkipReason::NotFirstOccurrence,
                        });
                        continue;
                    }
                    let params = GridParams {
                        k: word.len() as i64,
                        m: m as i64,
                        r: prefix.len() as i64 - 1,
                        s: s as i64,
                    };
                    let (expected_t1, reread_t1) = expected_delta(&row.t1, &params);
                    let (expected_t2, reread_t2) = expected_delta(&row.t2, &params);
                    for (reread, plane, expectation) in
                        [(reread_t1, "T1", &row.t1), (reread_t2, "T2", &row.t2)]
                    {
                        if let (true, Expectation::Source(f)) = (reread, expectation) {
                            let note = LevelIndexNote {
                                row: row.code,
                                plane,
                                printed: f.text,
                                reading: PK_READING,
                            };
                            if !notes.contains(&note) {
                                notes.push(note);
                            }
                            summary.level_index_flagged = true;
                        }
                    }
                    let actual_t1 = indices(&config.t1_sources);
                    let actual_t2 = indices(&config.t2_sources);
                    let passed =
                        matches(expected_t1, &actual_t1) && matches(expected_t2, &actual_t2);
                    summary.instances += 1;
                    summary.passed += passed as usize;
                    instances.push(InstanceResult {
                        row: row.code,
                        word: word.to_string(),
                        params,
                        expected_t1,
                        expected_t2,
                        multiple_sources: actual_t1.len() > 1 || actual_t2.len() > 1,
                        actual_t1,
                        actual_t2,
                        reread: reread_t1 || reread_t2,
                        passed,
                    });
                }
            }
        }
    }

    VerificationReport {
        instances,
        skipped,
        level_index_notes: notes,
        rows: summaries.into_values().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn instance<'a>(report: &'a VerificationReport, row: &str, word: &str) -> &'a InstanceResult {
        report
            .instances
            .iter()
            .find(|i| i.row == row && i.word == word)
            .unwrap_or_else(|| panic!("no instance {row} / {word}"))
    }

    #[test]
    fn worked_rows() {
        let report = table2_grid(0, 2, &[parse_word("R").unwrap(), parse_word("RV").unwrap()]);

        let rvl = instance(&report, "RwL1", "RVL1");
        assert_eq!(rvl.expected_t1.unwrap().to_string(), "d1_2");
        assert_eq!(rvl.expected_t2.unwrap().to_string(), "d2_1");
        assert!(rvl.passed);

        let rvll2 = instance(&report, "Rw'VT^mLL2", "RVL1L2");
        assert_eq!(rvll2.expected_t1.unwrap().to_string(), "d2_2");
        assert_eq!(rvll2.expected_t2.unwrap().to_string(), "d3_1");
        assert!(rvll2.passed);

        let rvllt2 = instance(&report, "Rw'LLT2", "RVL1L1T2");
        assert_eq!(rvllt2.expected_t2.unwrap().to_string(), "d3_2");
        assert!(rvllt2.actual_t1.is_empty());
        assert!(rvllt2.passed);
    }

    #[test]
    fn misprinted_level_is_reread() {
        let report = table2_grid(0, 2, &default_prefixes());
        let row = report.row("Rw'L2T1").unwrap();
        assert!(row.level_index_flagged);
        assert!(row.all_passed());
        assert!(report
            .level_index_notes
            .iter()
            .any(|n| n.row == "Rw'L2T1" && n.printed == "d^3_{k-3}(p_{k+3})"));
    }

    #[test]
    fn skips_are_recorded() {
        let report = table2_grid(
            0,
            2,
            &[parse_word("RR").unwrap(), parse_word("RVLL2").unwrap()],
        );
        assert!(report
            .skipped
            .iter()
            .any(|s| s.reason == SkipReason::InvalidWord));
        assert!(report
            .skipped
            .iter()
            .any(|s| s.reason == SkipReason::NotFirstOccurrence));
    }
}
