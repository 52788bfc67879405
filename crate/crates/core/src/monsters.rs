//! Baby Monsters and the critical planes they produce.
//!
//! A Baby Monster `δʲᵢ` is the fiber `F_i` through level `i`, prolonged `j`
//! times. Over level `i` it is the vertical plane, `[0 : * : *]` in the
//! coframe `[dφ : du_i : dv_i]`. Each later letter either keeps the prolonged
//! fiber passing through the chosen point or loses it:
//!
//! * it survives when the letter's direction lies in the current plane, i.e.
//!   the direction has a zero in the plane's zero slot;
//! * the plane is then re-expressed in the next chart by permuting slots the
//!   same way the chart permutes the coframe.
//!
//! Whatever survives to the last level is a critical plane over the terminal
//! point, classified by which slot is zero (`φ` vertical, `u` T1, `v` T2).
//! The backward walk runs the inverse permutation from a candidate plane down
//! to the fiber that produced it.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::charts::{direction_form, ChartStep, CoordRef, Flag, Slot};
use crate::error::{Error, Result};
use crate::words::{
    allowed_letters, validate, Letter, LetterSet, PlaneSet, RvtWord, SpellingAutomaton,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PlaneForm {
    Vertical,
    T1,
    T2,
}

impl PlaneForm {
    pub fn zero_slot(self) -> Slot {
        match self {
            PlaneForm::Vertical => Slot::Phi,
            PlaneForm::T1 => Slot::U,
            PlaneForm::T2 => Slot::V,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PlaneForm::Vertical => "V",
            PlaneForm::T1 => "T1",
            PlaneForm::T2 => "T2",
        }
    }
}

impl fmt::Display for PlaneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A 2-plane of the rank-3 distribution: the kernel of exactly one coframe slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PlanePattern {
    zero: Slot,
}

impl PlanePattern {
    pub const VERTICAL: PlanePattern = PlanePattern { zero: Slot::Phi };

    pub fn of_form(form: PlaneForm) -> Self {
        PlanePattern {
            zero: form.zero_slot(),
        }
    }

    /// `None` unless exactly one flag is zero.
    pub fn from_flags(flags: [Flag; 3]) -> Option<Self> {
        let mut zeros = Slot::ALL
            .into_iter()
            .filter(|s| flags[s.index()] == Flag::Zero);
        match (zeros.next(), zeros.next()) {
            (Some(zero), None) => Some(PlanePattern { zero }),
            _ => None,
        }
    }

    pub fn zero_slot(self) -> Slot {
        self.zero
    }

    pub fn flags(self) -> [Flag; 3] {
        let mut flags = [Flag::NonZero; 3];
        flags[self.zero.index()] = Flag::Zero;
        flags
    }

    pub fn form(self) -> PlaneForm {
        match self.zero {
            Slot::Phi => PlaneForm::Vertical,
            Slot::U => PlaneForm::T1,
            Slot::V => PlaneForm::T2,
        }
    }

    /// Does the direction named by `letter` lie in this plane?
    pub fn contains_direction(self, letter: Letter) -> bool {
        direction_form(letter).at(self.zero) == Flag::Zero
    }

    /// The same plane's prolongation written in the next level's chart.
    pub fn transport(self, step: &ChartStep) -> Self {
        PlanePattern {
            zero: step.target_of(self.zero),
        }
    }

    /// Inverse of [`transport`](Self::transport).
    pub fn pull_back(self, step: &ChartStep) -> Self {
        PlanePattern {
            zero: step.source_of(self.zero),
        }
    }
}

impl fmt::Display for PlanePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self
            .flags()
            .map(|flag| if flag == Flag::Zero { "0" } else { "*" });
        write!(f, "[{a} : {b} : {c}]")
    }
}

impl Serialize for PlanePattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.form().as_str())
    }
}

/// `δʲᵢ`: fiber born at level `i`, prolonged `j` times. Rendered `d<j>_<i>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeltaIndex {
    pub prolongations: usize,
    pub birth_level: usize,
}

impl DeltaIndex {
    pub fn new(prolongations: usize, birth_level: usize) -> Self {
        DeltaIndex {
            prolongations,
            birth_level,
        }
    }

    pub fn level(self) -> usize {
        self.birth_level + self.prolongations
    }
}

impl fmt::Display for DeltaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}_{}", self.prolongations, self.birth_level)
    }
}

impl Serialize for DeltaIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Vanishing {
    IdenticallyZero,
    Active,
    Undetermined,
}

/// Per-coordinate behaviour of the KR coordinates along a Baby Monster.
///
/// Base coordinates are identically zero (every fiber sits over one base
/// point). Fiber coordinates of levels at or above the birth level follow the
/// plane at that level: the fiber slot that is zero vanishes identically, the
/// other is active. Levels strictly between are left undetermined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingVector {
    entries: Vec<(CoordRef, Vanishing)>,
}

impl VanishingVector {
    fn new(top_level: usize) -> Self {
        let entries = CoordRef::all_up_to(top_level)
            .into_iter()
            .map(|c| {
                let v = if c.is_fiber() {
                    Vanishing::Undetermined
                } else {
                    Vanishing::IdenticallyZero
                };
                (c, v)
            })
            .collect();
        VanishingVector { entries }
    }

    fn mark_level(&mut self, level: usize, pattern: PlanePattern) {
        let flag = |slot: Slot| match pattern.flags()[slot.index()] {
            Flag::Zero => Vanishing::IdenticallyZero,
            Flag::NonZero => Vanishing::Active,
        };
        // x, y, z occupy the first three entries
        let base = 3 + 2 * (level - 1);
        self.entries[base].1 = flag(Slot::U);
        self.entries[base + 1].1 = flag(Slot::V);
    }

    pub fn entries(&self) -> &[(CoordRef, Vanishing)] {
        &self.entries
    }

    pub fn get(&self, coord: CoordRef) -> Option<Vanishing> {
        self.entries
            .iter()
            .find(|(c, _)| *c == coord)
            .map(|(_, v)| *v)
    }
}

impl fmt::Display for VanishingVector {
    /// `(0,0,0,_,_,u2,v2,0,v3,0,v4)`: zero, undetermined, or the coordinate's name.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (n, (coord, v)) in self.entries.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            match v {
                Vanishing::IdenticallyZero => f.write_str("0")?,
                Vanishing::Undetermined => f.write_str("_")?,
                Vanishing::Active => write!(f, "{coord}")?,
            }
        }
        f.write_str(")")
    }
}

impl Serialize for VanishingVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BabyMonsterRecord {
    pub birth_level: usize,
    pub prolongations: usize,
    pub pattern: PlanePattern,
    /// Plane at each level from the birth level up to the terminal level.
    pub trace: Vec<PlanePattern>,
    pub vanishing: VanishingVector,
}

impl BabyMonsterRecord {
    pub fn delta(&self) -> DeltaIndex {
        DeltaIndex::new(self.prolongations, self.birth_level)
    }

    pub fn form(&self) -> PlaneForm {
        self.pattern.form()
    }

    pub fn level(&self) -> usize {
        self.birth_level + self.prolongations
    }

    fn from_trace(birth_level: usize, trace: Vec<PlanePattern>) -> Self {
        let top = birth_level + trace.len() - 1;
        let mut vanishing = VanishingVector::new(top);
        for (offset, pattern) in trace.iter().enumerate() {
            vanishing.mark_level(birth_level + offset, *pattern);
        }
        BabyMonsterRecord {
            birth_level,
            prolongations: trace.len() - 1,
            pattern: *trace.last().expect("nonempty trace"),
            trace,
            vanishing,
        }
    }
}

/// A prolonged fiber that stops passing through the word's points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeadBranch {
    pub birth_level: usize,
    /// First level the prolongation misses.
    pub death_level: usize,
    /// Letter whose direction leaves the plane.
    pub letter: Letter,
    /// Plane at each level from birth up to `death_level - 1`.
    pub trace: Vec<PlanePattern>,
}

impl fmt::Display for DeadBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.trace.last().expect("nonempty trace");
        write!(
            f,
            "fiber born at level {} dies at level {}: {} direction is not in the {} plane {}",
            self.birth_level,
            self.death_level,
            self.letter,
            last.form(),
            last
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Propagation {
    Survived(BabyMonsterRecord),
    Dead(DeadBranch),
}

impl Propagation {
    pub fn survivor(&self) -> Option<&BabyMonsterRecord> {
        match self {
            Propagation::Survived(r) => Some(r),
            Propagation::Dead(_) => None,
        }
    }
}

fn propagate_letters(letters: &[Letter], birth_level: usize) -> Propagation {
    let mut pattern = PlanePattern::VERTICAL;
    let mut trace = vec![pattern];
    // letters[level] names the direction chosen at `level`, leading to `level + 1`
    for (level, &letter) in letters.iter().enumerate().skip(birth_level) {
        if !pattern.contains_direction(letter) {
            return Propagation::Dead(DeadBranch {
                birth_level,
                death_level: level + 1,
                letter,
                trace,
            });
        }
        pattern = pattern.transport(&ChartStep::for_letter(letter));
        trace.push(pattern);
    }
    Propagation::Survived(BabyMonsterRecord::from_trace(birth_level, trace))
}

/// Prolong the fiber born at `birth_level` along the rest of `word`.
pub fn propagate(word: &RvtWord, birth_level: usize) -> Result<Propagation> {
    validate(word)?;
    let k = word.len();
    if birth_level == 0 || birth_level >= k {
        return Err(Error::LevelOutOfRange {
            level: birth_level,
            min: 1,
            max: k.saturating_sub(1),
        });
    }
    Ok(propagate_letters(word.letters(), birth_level))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LineSet {
    pub l1: bool,
    pub l2: bool,
    pub l3: bool,
}

impl LineSet {
    pub fn letters(self) -> impl Iterator<Item = Letter> {
        [
            (self.l1, Letter::L1),
            (self.l2, Letter::L2),
            (self.l3, Letter::L3),
        ]
        .into_iter()
        .filter_map(|(present, l)| present.then_some(l))
    }
}

impl Serialize for LineSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.letters())
    }
}

/// Critical planes over the terminal point of a word, with their sources.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneConfiguration {
    pub word: RvtWord,
    /// `δ⁰ₖ`, the tangent plane to the fiber through the point.
    pub vertical: BabyMonsterRecord,
    pub t1_sources: Vec<BabyMonsterRecord>,
    pub t2_sources: Vec<BabyMonsterRecord>,
    pub dead: Vec<DeadBranch>,
}

impl PlaneConfiguration {
    pub fn level(&self) -> usize {
        self.word.len()
    }

    pub fn lines(&self) -> LineSet {
        let t1 = !self.t1_sources.is_empty();
        let t2 = !self.t2_sources.is_empty();
        LineSet {
            l1: t1,
            l2: t1 && t2,
            l3: t2,
        }
    }

    pub fn plane_set(&self) -> PlaneSet {
        PlaneSet::new(
            true,
            !self.t1_sources.is_empty(),
            !self.t2_sources.is_empty(),
        )
    }

    pub fn plane_count(&self) -> usize {
        self.plane_set().plane_count()
    }

    pub fn sources(&self, form: PlaneForm) -> &[BabyMonsterRecord] {
        match form {
            PlaneForm::Vertical => std::slice::from_ref(&self.vertical),
            PlaneForm::T1 => &self.t1_sources,
            PlaneForm::T2 => &self.t2_sources,
        }
    }

    /// Letters whose plane or line is present over the terminal point.
    pub fn next_letters(&self) -> LetterSet {
        let planes = self.plane_set();
        let mut set: LetterSet = [Letter::R, Letter::V].into_iter().collect();
        if planes.t1 {
            set.insert(Letter::T1);
        }
        if planes.t2 {
            set.insert(Letter::T2);
        }
        for l in self.lines().letters() {
            set.insert(l);
        }
        set
    }

    /// All surviving records, vertical first, then by birth level.
    pub fn records(&self) -> impl Iterator<Item = &BabyMonsterRecord> {
        std::iter::once(&self.vertical)
            .chain(self.t1_sources.iter())
            .chain(self.t2_sources.iter())
    }
}

/// Propagation over every birth level, without spelling checks.
fn configuration_of_letters(letters: &[Letter]) -> PlaneConfiguration {
    let k = letters.len();
    assert!(k >= 1, "configuration needs a nonempty word");
    let mut t1_sources = Vec::new();
    let mut t2_sources = Vec::new();
    let mut dead = Vec::new();
    for birth in 1..k {
        match propagate_letters(letters, birth) {
            Propagation::Survived(record) => match record.form() {
                PlaneForm::T1 => t1_sources.push(record),
                PlaneForm::T2 => t2_sources.push(record),
                // the zero slot is never the divisor, so a prolonged plane is never vertical
                PlaneForm::Vertical => unreachable!("prolonged fiber cannot be vertical"),
            },
            Propagation::Dead(branch) => dead.push(branch),
        }
    }
    PlaneConfiguration {
        word: RvtWord::new(letters.to_vec()),
        vertical: BabyMonsterRecord::from_trace(k, vec![PlanePattern::VERTICAL]),
        t1_sources,
        t2_sources,
        dead,
    }
}

pub fn configuration(word: &RvtWord) -> Result<PlaneConfiguration> {
    let state = validate(word)?;
    let config = configuration_of_letters(word.letters());
    if config.plane_set() != state {
        return Err(Error::InternalMismatch(format!(
            "planes over {word}: engine found {}, spelling automaton expects {state}",
            config.plane_set()
        )));
    }
    Ok(config)
}

pub fn plane_count(word: &RvtWord) -> Result<usize> {
    Ok(configuration(word)?.plane_count())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AbsenceReason {
    /// The letter's direction is not in the plane obtained one level down.
    NotTangent { letter: Letter },
    /// The walk reached level 1 without finding a vertical plane.
    NoFiber,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Absence {
    pub level: usize,
    pub reason: AbsenceReason,
}

impl fmt::Display for Absence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.reason {
            AbsenceReason::NotTangent { letter } => write!(
                f,
                "contradiction at level {}: the {letter} direction does not lie in the plane below",
                self.level
            ),
            AbsenceReason::NoFiber => write!(f, "no source fiber above level {}", self.level),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Identification {
    Found(BabyMonsterRecord),
    Absent(Absence),
}

impl Identification {
    pub fn found(&self) -> Option<&BabyMonsterRecord> {
        match self {
            Identification::Found(r) => Some(r),
            Identification::Absent(_) => None,
        }
    }
}

/// Start from a candidate plane over the terminal point and walk down until a
/// vertical plane (a fiber with both coordinates active) is reached.
pub fn backward_identify(word: &RvtWord, target: PlaneForm) -> Result<Identification> {
    validate(word)?;
    let letters = word.letters();
    let k = letters.len();

    let mut level = k;
    let mut pattern = PlanePattern::of_form(target);
    let mut vanishing = VanishingVector::new(k);
    let mut trace = vec![pattern];
    vanishing.mark_level(level, pattern);

    while pattern.form() != PlaneForm::Vertical {
        if level == 1 {
            return Ok(Identification::Absent(Absence {
                level,
                reason: AbsenceReason::NoFiber,
            }));
        }
        let letter = letters[level - 1];
        let below = pattern.pull_back(&ChartStep::for_letter(letter));
        if !below.contains_direction(letter) {
            return Ok(Identification::Absent(Absence {
                level,
                reason: AbsenceReason::NotTangent { letter },
            }));
        }
        level -= 1;
        pattern = below;
        vanishing.mark_level(level, pattern);
        trace.push(pattern);
    }

    trace.reverse();
    Ok(Identification::Found(BabyMonsterRecord {
        birth_level: level,
        prolongations: k - level,
        pattern: PlanePattern::of_form(target),
        trace,
        vanishing,
    }))
}

/// Depth to which every state's witnesses are compared during derivation.
const DERIVATION_DEPTH: usize = 6;

/// Re-derive the spelling automaton from the plane engine alone.
///
/// Words are grown breadth-first, each time appending only the letters whose
/// plane or line the engine finds over the current point. Every word reached
/// is a witness for the state given by its plane set; all witnesses of a state
/// must agree on allowed letters and successor states.
pub fn derive_spelling_automaton_unchecked() -> Result<SpellingAutomaton> {
    let mut rows: BTreeMap<PlaneSet, BTreeMap<Letter, PlaneSet>> = BTreeMap::new();
    let mut witnesses: BTreeMap<PlaneSet, Vec<Letter>> = BTreeMap::new();

    // level 0 carries no critical planes; a code starts with a regular letter
    let start_row: BTreeMap<Letter, PlaneSet> = [Letter::R]
        .into_iter()
        .map(|l| (l, configuration_of_letters(&[l]).plane_set()))
        .collect();
    rows.insert(PlaneSet::START, start_row);
    witnesses.insert(PlaneSet::START, Vec::new());

    let mut queue: VecDeque<Vec<Letter>> = VecDeque::from([vec![Letter::R]]);
    while let Some(word) = queue.pop_front() {
        let config = configuration_of_letters(&word);
        let state = config.plane_set();
        let row: BTreeMap<Letter, PlaneSet> = config
            .next_letters()
            .iter()
            .map(|l| {
                let mut next = word.clone();
                next.push(l);
                (l, configuration_of_letters(&next).plane_set())
            })
            .collect();
        match rows.get(&state) {
            Some(existing) if *existing != row => {
                return Err(Error::InternalMismatch(format!(
                    "state {state} is not determined by its planes: witnesses {} and {} disagree",
                    RvtWord::new(witnesses[&state].clone()),
                    RvtWord::new(word.clone())
                )));
            }
            Some(_) => {}
            None => {
                rows.insert(state, row.clone());
                witnesses.insert(state, word.clone());
            }
        }
        if word.len() < DERIVATION_DEPTH {
            for l in row.keys() {
                let mut next = word.clone();
                next.push(*l);
                queue.push_back(next);
            }
        }
    }
    Ok(SpellingAutomaton::from_transitions(rows))
}

/// Derived automaton, checked against the reference table.
pub fn derive_spelling_automaton() -> Result<SpellingAutomaton> {
    let derived = derive_spelling_automaton_unchecked()?;
    let reference = SpellingAutomaton::reference();
    if derived != reference {
        let diff = reference
            .states()
            .chain(derived.states())
            .find(|s| derived.allowed(*s) != reference.allowed(*s))
            .map(|s| {
                format!(
                    "at {s}: derived {} vs reference {}",
                    derived.allowed(s),
                    reference.allowed(s)
                )
            })
            .unwrap_or_else(|| "transition targets differ".to_string());
        return Err(Error::InternalMismatch(format!(
            "derived spelling automaton differs from reference: {diff}"
        )));
    }
    debug_assert!(derived
        .states()
        .all(|s| derived.allowed(s) == allowed_letters(s)));
    Ok(derived)
}
