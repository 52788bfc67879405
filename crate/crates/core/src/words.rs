//! RVT letters and words.
//!
//! A word is spelled by a five-state automaton whose states are the sets of
//! critical planes sitting over the current point: nothing at level 0, then
//! `{V}`, `{V,T1}`, `{V,T2}` or `{V,T1,T2}`. A letter is allowed exactly when
//! the plane (or the line, for the `L` letters) it names is present.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Letter {
    R,
    V,
    T1,
    T2,
    L1,
    L2,
    L3,
}

impl Letter {
    /// All letters in enumeration order.
    pub const ALL: [Letter; 7] = [
        Letter::R,
        Letter::V,
        Letter::T1,
        Letter::T2,
        Letter::L1,
        Letter::L2,
        Letter::L3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Letter::R => "R",
            Letter::V => "V",
            Letter::T1 => "T1",
            Letter::T2 => "T2",
            Letter::L1 => "L1",
            Letter::L2 => "L2",
            Letter::L3 => "L3",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_regular(self) -> bool {
        self == Letter::R
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Letter {
    type Err = Error;

    /// A single token; `T` and `L` are aliases for `T1` and `L1`.
    fn from_str(s: &str) -> Result<Self> {
        let word = parse_word(s)?;
        match word.letters() {
            [letter] => Ok(*letter),
            _ => Err(Error::UnknownToken { position: 1 }),
        }
    }
}

/// An ordered set of letters, stored as a bitmask over [`Letter::ALL`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LetterSet(u8);

impl LetterSet {
    pub const EMPTY: LetterSet = LetterSet(0);
    pub const FULL: LetterSet = LetterSet(0x7f);

    pub fn insert(&mut self, letter: Letter) {
        self.0 |= 1 << letter.index();
    }

    pub fn contains(self, letter: Letter) -> bool {
        self.0 & (1 << letter.index()) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Letter> {
        Letter::ALL.into_iter().filter(move |l| self.contains(*l))
    }
}

impl FromIterator<Letter> for LetterSet {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        let mut set = LetterSet::EMPTY;
        for letter in iter {
            set.insert(letter);
        }
        set
    }
}

impl fmt::Display for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, letter) in self.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            f.write_str(letter.as_str())?;
        }
        f.write_str("}")
    }
}

impl Serialize for LetterSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter().map(Letter::as_str))
    }
}

/// Which critical planes sit over a point. The empty set is the level-0 start state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PlaneSet {
    pub vertical: bool,
    pub t1: bool,
    pub t2: bool,
}

impl PlaneSet {
    pub const START: PlaneSet = PlaneSet::new(false, false, false);
    pub const V: PlaneSet = PlaneSet::new(true, false, false);
    pub const V_T1: PlaneSet = PlaneSet::new(true, true, false);
    pub const V_T2: PlaneSet = PlaneSet::new(true, false, true);
    pub const V_T1_T2: PlaneSet = PlaneSet::new(true, true, true);

    pub const fn new(vertical: bool, t1: bool, t2: bool) -> Self {
        PlaneSet { vertical, t1, t2 }
    }

    pub fn is_start(self) -> bool {
        self == PlaneSet::START
    }

    pub fn plane_count(self) -> usize {
        self.vertical as usize + self.t1 as usize + self.t2 as usize
    }

    fn names(self) -> impl Iterator<Item = &'static str> {
        [(self.vertical, "V"), (self.t1, "T1"), (self.t2, "T2")]
            .into_iter()
            .filter_map(|(present, name)| present.then_some(name))
    }
}

impl fmt::Display for PlaneSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().collect::<Vec<_>>().join(","))
    }
}

impl Serialize for PlaneSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.names())
    }
}

/// Letters that may follow a point whose plane configuration is `state`.
pub fn allowed_letters(state: PlaneSet) -> LetterSet {
    if state.is_start() {
        return [Letter::R].into_iter().collect();
    }
    let PlaneSet { vertical, t1, t2 } = state;
    let mut set = LetterSet::EMPTY;
    set.insert(Letter::R);
    for (present, letter) in [
        (vertical, Letter::V),
        (t1, Letter::T1),
        (t2, Letter::T2),
        (vertical && t1, Letter::L1),
        (t1 && t2, Letter::L2),
        (vertical && t2, Letter::L3),
    ] {
        if present {
            set.insert(letter);
        }
    }
    set
}

/// Configuration over the new point; depends on the letter alone.
fn successor(letter: Letter) -> PlaneSet {
    match letter {
        Letter::R => PlaneSet::V,
        Letter::V | Letter::T1 => PlaneSet::V_T1,
        Letter::T2 => PlaneSet::V_T2,
        Letter::L1 | Letter::L2 | Letter::L3 => PlaneSet::V_T1_T2,
    }
}

pub fn step_state(state: PlaneSet, letter: Letter) -> Result<PlaneSet> {
    if allowed_letters(state).contains(letter) {
        Ok(successor(letter))
    } else {
        Err(Error::IllegalLetter { state, letter })
    }
}

/// A sequence of letters. Parsing does not check spelling; see [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct RvtWord(Vec<Letter>);

impl RvtWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        RvtWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn extended(&self, suffix: &[Letter]) -> RvtWord {
        let mut letters = self.0.clone();
        letters.extend_from_slice(suffix);
        RvtWord(letters)
    }

    pub fn is_valid(&self) -> bool {
        validate(self).is_ok()
    }
}

impl From<Vec<Letter>> for RvtWord {
    fn from(letters: Vec<Letter>) -> Self {
        RvtWord(letters)
    }
}

impl fmt::Display for RvtWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|l| f.write_str(l.as_str()))
    }
}

impl FromStr for RvtWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

/// Tokenize `R V T T1 T2 L L1 L2 L3`, greedily binding a digit to the
/// preceding `T` or `L`. Single spaces may separate tokens.
pub fn parse_word(text: &str) -> Result<RvtWord> {
    let chars: Vec<char> = text.chars().collect();
    let mut letters = Vec::with_capacity(chars.len());
    let mut i = 0;
    while i < chars.len() {
        let position = i + 1;
        let unknown = Error::UnknownToken { position };
        let digit = chars.get(i + 1).copied().filter(char::is_ascii_digit);
        let (letter, width) = match (chars[i], digit) {
            ('R', _) => (Letter::R, 1),
            ('V', _) => (Letter::V, 1),
            ('T', None) | ('T', Some('1')) => (Letter::T1, 1 + digit.is_some() as usize),
            ('T', Some('2')) => (Letter::T2, 2),
            ('L', None) | ('L', Some('1')) => (Letter::L1, 1 + digit.is_some() as usize),
            ('L', Some('2')) => (Letter::L2, 2),
            ('L', Some('3')) => (Letter::L3, 2),
            (' ', _) if i > 0 && chars[i - 1] != ' ' && i + 1 < chars.len() => {
                i += 1;
                continue;
            }
            _ => return Err(unknown),
        };
        letters.push(letter);
        i += width;
    }
    Ok(RvtWord(letters))
}

/// Check spelling and return the plane configuration over the terminal point.
pub fn validate(word: &RvtWord) -> Result<PlaneSet> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    word.letters()
        .iter()
        .enumerate()
        .try_fold(PlaneSet::START, |state, (idx, &letter)| {
            let expected = allowed_letters(state);
            if expected.contains(letter) {
                Ok(successor(letter))
            } else {
                Err(Error::Misspelled {
                    position: idx + 1,
                    found: letter,
                    expected,
                })
            }
        })
}

/// Prefix of length `level`, mirroring the bundle projection onto that level.
pub fn project(word: &RvtWord, level: usize) -> Result<RvtWord> {
    if level == 0 || level > word.len() {
        return Err(Error::LevelOutOfRange {
            level,
            min: 1,
            max: word.len(),
        });
    }
    Ok(RvtWord(word.0[..level].to_vec()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RcSymbol {
    R,
    C,
}

/// Regular/critical coarsening of an RVT word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct RcWord(Vec<RcSymbol>);

impl RcWord {
    pub fn symbols(&self) -> &[RcSymbol] {
        &self.0
    }
}

impl fmt::Display for RcWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for symbol in &self.0 {
            f.write_str(match symbol {
                RcSymbol::R => "R",
                RcSymbol::C => "C",
            })?;
        }
        Ok(())
    }
}

pub fn rc_code(word: &RvtWord) -> Result<RcWord> {
    validate(word)?;
    Ok(RcWord(
        word.letters()
            .iter()
            .map(|l| {
                if l.is_regular() {
                    RcSymbol::R
                } else {
                    RcSymbol::C
                }
            })
            .collect(),
    ))
}

/// Transition table `state -> letter -> state`, restricted to reachable states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpellingAutomaton {
    transitions: BTreeMap<PlaneSet, BTreeMap<Letter, PlaneSet>>,
}

impl SpellingAutomaton {
    pub fn from_transitions(transitions: BTreeMap<PlaneSet, BTreeMap<Letter, PlaneSet>>) -> Self {
        SpellingAutomaton { transitions }
    }

    /// The automaton encoded by [`allowed_letters`] and [`step_state`].
    pub fn reference() -> Self {
        let mut transitions = BTreeMap::new();
        let mut queue = VecDeque::from([PlaneSet::START]);
        while let Some(state) = queue.pop_front() {
            if transitions.contains_key(&state) {
                continue;
            }
            let row: BTreeMap<Letter, PlaneSet> = allowed_letters(state)
                .iter()
                .map(|l| (l, successor(l)))
                .collect();
            queue.extend(row.values().copied());
            transitions.insert(state, row);
        }
        SpellingAutomaton { transitions }
    }

    pub fn states(&self) -> impl Iterator<Item = PlaneSet> + '_ {
        self.transitions.keys().copied()
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn allowed(&self, state: PlaneSet) -> LetterSet {
        self.transitions
            .get(&state)
            .map(|row| row.keys().copied().collect())
            .unwrap_or_default()
    }

    pub fn target(&self, state: PlaneSet, letter: Letter) -> Option<PlaneSet> {
        self.transitions.get(&state)?.get(&letter).copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = (PlaneSet, &BTreeMap<Letter, PlaneSet>)> {
        self.transitions.iter().map(|(s, row)| (*s, row))
    }

    pub fn edge_count(&self) -> usize {
        self.transitions.values().map(BTreeMap::len).sum()
    }

    /// Edge count of the same language written with one state per last letter
    /// (start, R, V, T1, T2, L1, L2, L3) instead of one per plane set.
    pub fn last_letter_edge_count(&self) -> usize {
        let start_edges = self.allowed(PlaneSet::START).len();
        let mut seen: BTreeMap<Letter, PlaneSet> = BTreeMap::new();
        for row in self.transitions.values() {
            for (&letter, &target) in row {
                seen.insert(letter, target);
            }
        }
        start_edges + seen.values().map(|s| self.allowed(*s).len()).sum::<usize>()
    }
}

fn reachable_states() -> Vec<PlaneSet> {
    SpellingAutomaton::reference().states().collect()
}

/// Number of valid words of length `level` (zero for level 0).
pub fn count_words(level: usize) -> BigUint {
    census(level).into_values().sum()
}

/// Valid words of length `level`, bucketed by their last letter.
pub fn census(level: usize) -> BTreeMap<Letter, BigUint> {
    let automaton = SpellingAutomaton::reference();
    let states = reachable_states();
    let index = |s: PlaneSet| {
        states
            .iter()
            .position(|t| *t == s)
            .expect("reachable state")
    };

    let mut by_letter: BTreeMap<Letter, BigUint> =
        Letter::ALL.iter().map(|l| (*l, BigUint::zero())).collect();
    if level == 0 {
        return by_letter;
    }

    // counts[s] = number of valid words of the current length ending in state s
    let mut counts = vec![BigUint::zero(); states.len()];
    counts[index(PlaneSet::START)] = BigUint::one();
    for step in 0..level {
        let last = step + 1 == level;
        let mut next = vec![BigUint::zero(); states.len()];
        for (from, row) in automaton.rows() {
            let weight = &counts[index(from)];
            if weight.is_zero() {
                continue;
            }
            for (&letter, &to) in row {
                if last {
                    *by_letter.get_mut(&letter).unwrap() += weight;
                }
                next[index(to)] += weight;
            }
        }
        counts = next;
    }
    by_letter
}

/// Lazily enumerate valid words of a fixed length in lexicographic order.
pub fn enumerate_words(level: usize) -> WordEnumerator {
    WordEnumerator {
        level,
        letters: Vec::with_capacity(level),
        states: vec![PlaneSet::START],
        cursor: vec![0; level],
        done: level == 0,
    }
}

#[derive(Debug, Clone)]
pub struct WordEnumerator {
    level: usize,
    letters: Vec<Letter>,
    /// `states[d]` is the configuration after the first `d` letters.
    states: Vec<PlaneSet>,
    /// Next index into `Letter::ALL` to try at each depth.
    cursor: Vec<usize>,
    done: bool,
}

impl Iterator for WordEnumerator {
    type Item = RvtWord;

    fn next(&mut self) -> Option<RvtWord> {
        while !self.done {
            let depth = self.letters.len();
            if depth == self.level {
                let word = RvtWord(self.letters.clone());
                self.letters.pop();
                self.states.pop();
                return Some(word);
            }
            let state = *self.states.last().expect("start state");
            let allowed = allowed_letters(state);
            let from = self.cursor[depth];
            match Letter::ALL[from..]
                .iter()
                .position(|l| allowed.contains(*l))
            {
                Some(offset) => {
                    let letter = Letter::ALL[from + offset];
                    self.cursor[depth] = from + offset + 1;
                    self.letters.push(letter);
                    self.states.push(successor(letter));
                    if depth + 1 < self.level {
                        self.cursor[depth + 1] = 0;
                    }
                }
                None if depth == 0 => self.done = true,
                None => {
                    self.letters.pop();
                    self.states.pop();
                }
            }
        }
        None
    }
}
