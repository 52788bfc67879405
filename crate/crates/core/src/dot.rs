//! Graphviz output.

use std::fmt::Write;

use crate::monsters::{BabyMonsterRecord, PlaneConfiguration};
use crate::words::SpellingAutomaton;

fn node_id(level: usize, birth: usize) -> String {
    format!("n{level}_{birth}")
}

fn record_path(out: &mut String, record: &BabyMonsterRecord, label: &str) {
    let b = record.birth_level;
    let _ = writeln!(out, "  subgraph cluster_{b} {{");
    let _ = writeln!(out, "    label=\"{label} {}\";", record.delta());
    for (offset, pattern) in record.trace.iter().enumerate() {
        let level = b + offset;
        let _ = writeln!(
            out,
            "    {} [label=\"p{level}\\n{}\"];",
            node_id(level, b),
            pattern.form()
        );
    }
    let _ = writeln!(out, "  }}");
    for offset in 1..record.trace.len() {
        let _ = writeln!(
            out,
            "  {} -> {};",
            node_id(b + offset - 1, b),
            node_id(b + offset, b)
        );
    }
}

/// One node per (level, birth level) in each trace; dead branches are dashed.
pub fn configuration_dot(config: &PlaneConfiguration) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", config.word);
    let _ = writeln!(out, "  rankdir=LR;");
    let _ = writeln!(out, "  node [shape=box];");
    record_path(&mut out, &config.vertical, "V");
    for record in &config.t1_sources {
        record_path(&mut out, record, "T1");
    }
    for record in &config.t2_sources {
        record_path(&mut out, record, "T2");
    }
    for dead in &config.dead {
        let b = dead.birth_level;
        for (offset, pattern) in dead.trace.iter().enumerate() {
            let level = b + offset;
            let _ = writeln!(
                out,
                "  {} [label=\"p{level}\\n{}\", style=dashed];",
                node_id(level, b),
                pattern.form()
            );
            if offset > 0 {
                let _ = writeln!(
                    out,
                    "  {} -> {} [style=dashed];",
                    node_id(level - 1, b),
                    node_id(level, b)
                );
            }
        }
        let end = format!("dead_{b}");
        let _ = writeln!(
            out,
            "  {end} [shape=point, label=\"\", xlabel=\"dies at p{}\"];",
            dead.death_level
        );
        let _ = writeln!(
            out,
            "  {} -> {end} [style=dashed, label=\"{}\"];",
            node_id(dead.death_level - 1, b),
            dead.letter
        );
    }
    let _ = writeln!(out, "}}");
    out
}

pub fn automaton_dot(automaton: &SpellingAutomaton) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph spelling {{");
    let _ = writeln!(out, "  rankdir=LR;");
    let states: Vec<_> = automaton.states().collect();
    let id = |s| states.iter().position(|x| *x == s).expect("known state");
    for (i, state) in states.iter().enumerate() {
        let _ = writeln!(out, "  s{i} [label=\"{state}\"];");
    }
    for (state, row) in automaton.rows() {
        for (letter, target) in row {
            let _ = writeln!(
                out,
                "  s{} -> s{} [label=\"{letter}\"];",
                id(state),
                id(*target)
            );
        }
    }
    let _ = writeln!(out, "}}");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monsters::configuration;
    use crate::words::parse_word;

    #[test]
    fn dead_branches_are_dashed() {
        let config = configuration(&parse_word("RVLT2").unwrap()).unwrap();
        let dot = configuration_dot(&config);
        assert!(dot.starts_with("digraph \"RVL1T2\""));
        assert!(dot.contains("n1_1 -> n2_1;"));
        assert!(dot.contains("style=dashed"));
        assert_eq!(dot.matches("dead_").count(), 2 * config.dead.len());
    }

    #[test]
    fn automaton_edges() {
        let dot = automaton_dot(&SpellingAutomaton::reference());
        assert_eq!(dot.matches(" -> ").count(), 18);
    }
}
