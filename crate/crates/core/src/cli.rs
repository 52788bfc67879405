//! The `rvt` command line. Every command calls one library operation and formats it.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::charts::pfaffian_system;
use crate::dot::{automaton_dot, configuration_dot};
use crate::error::Error;
use crate::monsters::{
    configuration, derive_spelling_automaton, BabyMonsterRecord, DeadBranch, DeltaIndex, LineSet,
    PlaneConfiguration,
};
use crate::verify::{default_prefixes, table2_grid};
use crate::words::{
    allowed_letters, count_words, enumerate_words, parse_word, rc_code, validate, LetterSet,
    PlaneSet, RvtWord, SpellingAutomaton,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_WORD: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "rvt",
    version,
    about = "RVT codes and critical planes of the Monster tower over R^3"
)]
pub struct CliConfig {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the spelling of a word.
    Validate { word: String },
    /// Letters that may follow a word.
    Letters { word: String },
    /// Number of valid words of a given length.
    Count {
        #[arg(long)]
        level: usize,
    },
    /// List the valid words of a given length.
    Enum {
        #[arg(long)]
        level: usize,
    },
    /// Critical planes over the word's terminal point and their sources.
    Planes {
        word: String,
        #[arg(long)]
        trace: bool,
    },
    /// Pfaffian generators of the distribution along the word's charts.
    Pfaffian { word: String },
    /// The spelling automaton.
    Automaton {
        #[arg(long, conflicts_with = "reference")]
        derived: bool,
        #[arg(long)]
        reference: bool,
    },
    /// Check the code-family table over a parameter grid.
    Table2 {
        #[arg(long, default_value_t = 2)]
        max_m: usize,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..))]
        max_s: u64,
    },
    /// Baby Monster traces as a Graphviz graph.
    Dot { word: String },
    /// Regular/critical coarsening.
    Rc { word: String },
}

#[derive(Serialize)]
struct ErrorReport {
    error: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    position: Option<usize>,
    message: String,
}

impl ErrorReport {
    fn of(e: &Error) -> Self {
        let (error, position) = match e {
            Error::UnknownToken { position } => ("unknown_token", Some(*position)),
            Error::EmptyWord => ("empty_word", None),
            Error::Misspelled { position, .. } => ("misspelled", Some(*position)),
            Error::IllegalLetter { .. } => ("illegal_letter", None),
            Error::LevelOutOfRange { .. } => ("level_out_of_range", None),
            Error::InternalMismatch(_) => ("internal_mismatch", None),
        };
        ErrorReport {
            error,
            position,
            message: e.to_string(),
        }
    }
}

enum Failure {
    Engine(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

#[derive(Serialize)]
struct ValidateOut<'a> {
    word: &'a RvtWord,
    valid: bool,
    planes: PlaneSet,
}

#[derive(Serialize)]
struct LettersOut<'a> {
    word: &'a RvtWord,
    planes: PlaneSet,
    next: LetterSet,
}

#[derive(Serialize)]
struct CountOut {
    level: usize,
    count: String,
}

#[derive(Serialize)]
struct PlaneIndices {
    vertical: DeltaIndex,
    t1: Vec<DeltaIndex>,
    t2: Vec<DeltaIndex>,
}

#[derive(Serialize)]
struct PlaneSources<'a> {
    vertical: &'a BabyMonsterRecord,
    t1: &'a [BabyMonsterRecord],
    t2: &'a [BabyMonsterRecord],
}

#[derive(Serialize)]
struct PlanesOut<'a> {
    word: &'a RvtWord,
    planes: PlaneIndices,
    lines: LineSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    sources: Option<PlaneSources<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dead: Option<&'a [DeadBranch]>,
}

#[derive(Serialize)]
struct AutomatonState {
    state: PlaneSet,
    allowed: LetterSet,
    edges: Vec<(String, PlaneSet)>,
}

#[derive(Serialize)]
struct AutomatonOut {
    source: &'static str,
    states: Vec<AutomatonState>,
    edge_count: usize,
    last_letter_edge_count: usize,
}

#[derive(Serialize)]
struct RcOut<'a> {
    word: &'a RvtWord,
    rc: String,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn indices(records: &[BabyMonsterRecord]) -> Vec<DeltaIndex> {
    records.iter().map(BabyMonsterRecord::delta).collect()
}

fn join<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn join_or_dash<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let s = join(items);
    if s.is_empty() {
        "-".to_string()
    } else {
        s
    }
}

fn no_dot(command: &str) -> Failure {
    Failure::Usage(format!("--format dot is not available for `{command}`"))
}

fn planes_text(config: &PlaneConfiguration, trace: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "word {}", config.word);
    let _ = writeln!(out, "vertical {}", config.vertical.delta());
    let _ = writeln!(out, "T1 {}", join_or_dash(indices(&config.t1_sources)));
    let _ = writeln!(out, "T2 {}", join_or_dash(indices(&config.t2_sources)));
    let _ = writeln!(out, "lines {}", join_or_dash(config.lines().letters()));
    if trace {
        for record in config.records() {
            let _ = writeln!(
                out,
                "{} {} trace {} vanishing {}",
                record.form(),
                record.delta(),
                join(record.trace.iter().map(|p| p.form())),
                record.vanishing
            );
        }
        for dead in &config.dead {
            let _ = writeln!(out, "dead {dead}");
        }
    }
    out
}

fn automaton_text(automaton: &SpellingAutomaton, source: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{source} automaton: {} states, {} edges ({} with one state per last letter)",
        automaton.state_count(),
        automaton.edge_count(),
        automaton.last_letter_edge_count()
    );
    for (state, row) in automaton.rows() {
        let _ = writeln!(
            out,
            "{state} allows {}: {}",
            automaton.allowed(state),
            join(row.iter().map(|(l, t)| format!("{l}->{t}")))
        );
    }
    out
}

fn execute(config: &CliConfig) -> Result<String, Failure> {
    let format = config.format;
    let out = match &config.command {
        Command::Validate { word } => {
            let word = parse_word(word)?;
            let planes = validate(&word)?;
            match format {
                Format::Json => json(&ValidateOut {
                    word: &word,
                    valid: true,
                    planes,
                }),
                Format::Text => format!("valid {word}\nplanes {planes}\n"),
                Format::Dot => return Err(no_dot("validate")),
            }
        }
        Command::Letters { word } => {
            let word = parse_word(word)?;
            let planes = validate(&word)?;
            let next = allowed_letters(planes);
            match format {
                Format::Json => json(&LettersOut {
                    word: &word,
                    planes,
                    next,
                }),
                Format::Text => format!("{next}\n"),
                Format::Dot => return Err(no_dot("letters")),
            }
        }
        Command::Count { level } => {
            let count = count_words(*level).to_string();
            match format {
                Format::Json => json(&CountOut {
                    level: *level,
                    count,
                }),
                Format::Text => format!("{count}\n"),
                Format::Dot => return Err(no_dot("count")),
            }
        }
        Command::Enum { level } => match format {
            Format::Json => json(&enumerate_words(*level).collect::<Vec<_>>()),
            Format::Text => enumerate_words(*level).map(|w| format!("{w}\n")).collect(),
            Format::Dot => return Err(no_dot("enum")),
        },
        Command::Planes { word, trace } => {
            let word = parse_word(word)?;
            let config = configuration(&word)?;
            match format {
                Format::Json => json(&PlanesOut {
                    word: &config.word,
                    planes: PlaneIndices {
                        vertical: config.vertical.delta(),
                        t1: indices(&config.t1_sources),
                        t2: indices(&config.t2_sources),
                    },
                    lines: config.lines(),
                    sources: trace.then_some(PlaneSources {
                        vertical: &config.vertical,
                        t1: &config.t1_sources,
                        t2: &config.t2_sources,
                    }),
                    dead: trace.then_some(config.dead.as_slice()),
                }),
                Format::Text => planes_text(&config, *trace),
                Format::Dot => configuration_dot(&config),
            }
        }
        Command::Pfaffian { word } => {
            let system = pfaffian_system(&parse_word(word)?)?;
            match format {
                Format::Json => json(&system),
                Format::Text => system.to_string(),
                Format::Dot => return Err(no_dot("pfaffian")),
            }
        }
        Command::Automaton { derived, .. } => {
            let (automaton, source) = if *derived {
                (derive_spelling_automaton()?, "derived")
            } else {
                (SpellingAutomaton::reference(), "reference")
            };
            match format {
                Format::Json => json(&AutomatonOut {
                    source,
                    states: automaton
                        .rows()
                        .map(|(state, row)| AutomatonState {
                            state,
                            allowed: automaton.allowed(state),
                            edges: row.iter().map(|(l, t)| (l.to_string(), *t)).collect(),
                        })
                        .collect(),
                    edge_count: automaton.edge_count(),
                    last_letter_edge_count: automaton.last_letter_edge_count(),
                }),
                Format::Text => automaton_text(&automaton, source),
                Format::Dot => automaton_dot(&automaton),
            }
        }
        Command::Table2 { max_m, max_s } => {
            let report = table2_grid(*max_m, *max_s as usize, &default_prefixes());
            match format {
                Format::Json => json(&report),
                Format::Text => {
                    let mut out = String::new();
                    for row in &report.rows {
                        let _ = writeln!(
                            out,
                            "{} {} {}/{}{}",
                            if row.all_passed() { "PASS" } else { "FAIL" },
                            row.row,
                            row.passed,
                            row.instances,
                            if row.level_index_flagged {
                                " (level index reread)"
                            } else {
                                ""
                            }
                        );
                    }
                    for note in &report.level_index_notes {
                        let _ = writeln!(
                            out,
                            "note {} {} {}: {}",
                            note.row, note.plane, note.printed, note.reading
                        );
                    }
                    for fail in report.failures() {
                        let _ = writeln!(
                            out,
                            "mismatch {} {}: expected T1 {} T2 {}, engine T1 [{}] T2 [{}]",
                            fail.row,
                            fail.word,
                            fail.expected_t1.map_or("none".into(), |d| d.to_string()),
                            fail.expected_t2.map_or("none".into(), |d| d.to_string()),
                            join(&fail.actual_t1),
                            join(&fail.actual_t2)
                        );
                    }
                    let _ = writeln!(
                        out,
                        "{}/{} instances pass, {} skipped",
                        report.passed(),
                        report.total(),
                        report.skipped.len()
                    );
                    out
                }
                Format::Dot => return Err(no_dot("table2")),
            }
        }
        Command::Dot { word } => configuration_dot(&configuration(&parse_word(word)?)?),
        Command::Rc { word } => {
            let word = parse_word(word)?;
            let rc = rc_code(&word)?.to_string();
            match format {
                Format::Json => json(&RcOut { word: &word, rc }),
                Format::Text => format!("{rc}\n"),
                Format::Dot => return Err(no_dot("rc")),
            }
        }
    };
    Ok(out)
}

/// Parse `args` (including the program name), run one command, and return the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };

    match execute(&config) {
        Ok(text) => match &config.out {
            Some(path) => match std::fs::write(path, text) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(stderr, "cannot write {}: {e}", path.display());
                    EXIT_USAGE
                }
            },
            None => {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            }
        },
        Err(Failure::Usage(message)) => {
            let _ = writeln!(stderr, "error: {message}");
            EXIT_USAGE
        }
        Err(Failure::Engine(e)) => {
            if config.format == Format::Json {
                let _ = stderr.write_all(json(&ErrorReport::of(&e)).as_bytes());
            } else {
                let _ = writeln!(stderr, "error: {e}");
            }
            match e {
                Error::InternalMismatch(_) => EXIT_MISMATCH,
                _ => EXIT_INVALID_WORD,
            }
        }
    }
}
