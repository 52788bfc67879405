//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Run with `cargo test --test acceptance`.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rvt_core::verify::{brute_force_words, default_prefixes, duality_failures, table2_grid};
use rvt_core::{
    configuration, count_words, derive_spelling_automaton, parse_word, pfaffian_system, Letter,
    LetterSet, PlaneSet, SpellingAutomaton,
};

const MAX_LEVEL: usize = 8;

type Criterion = (&'static str, fn() -> Outcome, Duration);

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Self {
        Outcome {
            ok: true,
            detail: detail.into(),
        }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Outcome {
            ok: false,
            detail: detail.into(),
        }
    }
}

fn deltas(word: &str) -> (Vec<String>, Vec<String>, PlaneSet) {
    let config = configuration(&parse_word(word).unwrap()).unwrap();
    let names =
        |v: &[rvt_core::BabyMonsterRecord]| v.iter().map(|r| r.delta().to_string()).collect();
    (
        names(&config.t1_sources),
        names(&config.t2_sources),
        config.plane_set(),
    )
}

fn worked_examples() -> Outcome {
    let cases: [(&str, &[&str], &[&str], PlaneSet); 4] = [
        ("RVL", &["d1_2"], &["d2_1"], PlaneSet::V_T1_T2),
        ("RVLT2", &[], &["d3_1"], PlaneSet::V_T2),
        ("RVLL2", &["d2_2"], &["d3_1"], PlaneSet::V_T1_T2),
        ("RVT1L1T2", &[], &["d4_1"], PlaneSet::V_T2),
    ];
    let mut wrong = Vec::new();
    for (word, t1, t2, planes) in cases {
        let got = deltas(word);
        if got.0 != t1 || got.1 != t2 || got.2 != planes {
            wrong.push(format!(
                "{word}: T1 {:?} T2 {:?} planes {}",
                got.0, got.1, got.2
            ));
        }
    }
    if wrong.is_empty() {
        Outcome::pass("RVL, RVLT2, RVLL2, RVT1L1T2 exact")
    } else {
        Outcome::fail(wrong.join("; "))
    }
}

const TYPO_ROW: &str = "Rw'L2T1";

fn table2() -> Outcome {
    let report = table2_grid(2, 3, &default_prefixes());
    let mut problems = Vec::new();
    for row in &report.rows {
        if !row.all_passed() {
            problems.push(format!("{} {}/{}", row.row, row.passed, row.instances));
        }
        let expect_flag = row.row == TYPO_ROW;
        if row.level_index_flagged != expect_flag {
            problems.push(format!(
                "{} level index {}",
                row.row,
                if row.level_index_flagged {
                    "flagged"
                } else {
                    "not flagged"
                }
            ));
        }
    }
    let summary = format!(
        "{}/{} instances over {} rows, {} skipped",
        report.passed(),
        report.total(),
        report.rows.len(),
        report.skipped.len()
    );
    if problems.is_empty() {
        Outcome::pass(summary)
    } else {
        for fail in report.failures().take(12) {
            println!(
                "    {} {}: expected T1 {:?} T2 {:?}, engine T1 {:?} T2 {:?}",
                fail.row,
                fail.word,
                fail.expected_t1.map(|d| d.to_string()),
                fail.expected_t2.map(|d| d.to_string()),
                fail.actual_t1
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>(),
                fail.actual_t2
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>(),
            );
        }
        Outcome::fail(format!("{summary}; {}", problems.join(", ")))
    }
}

fn letters(list: &[Letter]) -> LetterSet {
    list.iter().copied().collect()
}

fn spelling_rules() -> Outcome {
    use Letter::*;
    let derived = match derive_spelling_automaton() {
        Ok(a) => a,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let expected: BTreeSet<LetterSet> = [
        letters(&[R]),
        letters(&[R, V]),
        letters(&[R, V, T1, L1]),
        letters(&[R, V, T2, L3]),
        LetterSet::FULL,
    ]
    .into();
    let got: BTreeSet<LetterSet> = derived.states().map(|s| derived.allowed(s)).collect();
    if derived != SpellingAutomaton::reference() {
        Outcome::fail("derived automaton differs from reference")
    } else if derived.state_count() != 5 || got != expected {
        Outcome::fail(format!(
            "{} states, allowed sets {got:?}",
            derived.state_count()
        ))
    } else {
        Outcome::pass(format!("5 states, {} edges", derived.edge_count()))
    }
}

fn oracle_counts() -> Outcome {
    let oracle: Vec<usize> = (1..=MAX_LEVEL)
        .map(|k| brute_force_words(k).len())
        .collect();
    let pinned = [1usize, 2, 6, 23, 98];
    if oracle[..5] != pinned {
        return Outcome::fail(format!("oracle gives {oracle:?}, pinned {pinned:?}"));
    }
    for (k, &n) in (1..=MAX_LEVEL).zip(&oracle) {
        if count_words(k) != n.into() {
            return Outcome::fail(format!(
                "level {k}: transfer {} vs oracle {n}",
                count_words(k)
            ));
        }
    }
    Outcome::pass(format!("c1..c8 = {oracle:?}"))
}

fn duality() -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    for k in 1..=MAX_LEVEL {
        for word in brute_force_words(k) {
            checked += 1;
            failures.extend(duality_failures(&word).unwrap());
        }
    }
    if failures.is_empty() {
        Outcome::pass(format!("{checked} words agree"))
    } else {
        Outcome::fail(format!(
            "{} disagreements, first: {}",
            failures.len(),
            failures[0]
        ))
    }
}

fn terminal_letter_law() -> Outcome {
    let mut by_letter: BTreeMap<Letter, BTreeSet<PlaneSet>> = BTreeMap::new();
    for k in 1..=MAX_LEVEL {
        for word in brute_force_words(k) {
            let planes = configuration(&word).unwrap().plane_set();
            by_letter
                .entry(word.last().unwrap())
                .or_default()
                .insert(planes);
        }
    }
    let split: Vec<_> = by_letter.iter().filter(|(_, s)| s.len() != 1).collect();
    if !split.is_empty() {
        return Outcome::fail(format!(
            "plane set not determined by last letter: {split:?}"
        ));
    }
    let configurations: BTreeSet<PlaneSet> = by_letter.values().flatten().copied().collect();
    let expected: BTreeSet<PlaneSet> = [
        PlaneSet::V,
        PlaneSet::V_T1,
        PlaneSet::V_T2,
        PlaneSet::V_T1_T2,
    ]
    .into();
    if configurations != expected {
        return Outcome::fail(format!("configurations {configurations:?}"));
    }
    Outcome::pass("7 letters, 4 configurations")
}

fn pfaffian() -> Outcome {
    let delta3 = [
        "dy - u1*dx = 0",
        "dz - v1*dx = 0",
        "dx - u2*du1 = 0",
        "dv1 - v2*du1 = 0",
        "du1 - u3*dv2 = 0",
        "du2 - v3*dv2 = 0",
    ];
    let delta4_extra = ["du3 - u4*dv2 = 0", "dv3 - v4*dv2 = 0"];
    let render = |w: &str| -> Vec<String> {
        pfaffian_system(&parse_word(w).unwrap())
            .unwrap()
            .constraints
            .iter()
            .map(ToString::to_string)
            .collect()
    };
    let rvl = render("RVL");
    let rvlt2 = render("RVLT2");
    let expected4: Vec<&str> = delta3.iter().chain(&delta4_extra).copied().collect();
    if rvl != delta3 {
        Outcome::fail(format!("RVL: {rvl:?}"))
    } else if rvlt2 != expected4 {
        Outcome::fail(format!("RVLT2: {rvlt2:?}"))
    } else {
        Outcome::pass("6 and 8 constraints")
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        (
            "AC1 worked examples",
            worked_examples,
            Duration::from_secs(1),
        ),
        ("AC2 code-family grid", table2, Duration::from_secs(30)),
        (
            "AC3 spelling-rule derivation",
            spelling_rules,
            Duration::from_secs(5),
        ),
        (
            "AC4 oracle counts to k=8",
            oracle_counts,
            Duration::from_secs(10),
        ),
        (
            "AC5 forward/backward duality to k=8",
            duality,
            Duration::from_secs(60),
        ),
        (
            "AC6 terminal-letter law to k=8",
            terminal_letter_law,
            Duration::from_secs(10),
        ),
        ("AC7 Pfaffian systems", pfaffian, Duration::from_secs(1)),
    ];
    let mut all_ok = true;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let ok = outcome.ok && in_time;
        all_ok &= ok;
        println!(
            "{} {name}: {} [{:.3}s, limit {}s{}]",
            if ok { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64(),
            limit.as_secs(),
            if in_time { "" } else { ", too slow" }
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
