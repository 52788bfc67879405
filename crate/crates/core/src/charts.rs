//! Symbolic Kumpera-Rubin charts.
//!
//! Each level `k` carries a coframe `[dφ : du_k : dv_k]` of the rank-3
//! distribution, where `φ` is the uniformizing coordinate inherited from an
//! earlier level. A letter picks a direction; the chart for the next level
//! divides by the coframe slot that is nonzero on that direction and sends the
//! other two slots to the new fiber coordinates `u_{k+1}`, `v_{k+1}`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::words::{validate, Letter, RvtWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoordKind {
    BaseX,
    BaseY,
    BaseZ,
    FiberU,
    FiberV,
}

/// A KR coordinate: `x`, `y`, `z` at level 0, `u_k`, `v_k` at level `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoordRef {
    level: usize,
    kind: CoordKind,
}

impl CoordRef {
    pub const X: CoordRef = CoordRef {
        level: 0,
        kind: CoordKind::BaseX,
    };
    pub const Y: CoordRef = CoordRef {
        level: 0,
        kind: CoordKind::BaseY,
    };
    pub const Z: CoordRef = CoordRef {
        level: 0,
        kind: CoordKind::BaseZ,
    };

    pub fn fiber_u(level: usize) -> Self {
        assert!(level >= 1, "fiber coordinates start at level 1");
        CoordRef {
            level,
            kind: CoordKind::FiberU,
        }
    }

    pub fn fiber_v(level: usize) -> Self {
        assert!(level >= 1, "fiber coordinates start at level 1");
        CoordRef {
            level,
            kind: CoordKind::FiberV,
        }
    }

    pub fn level(self) -> usize {
        self.level
    }

    pub fn kind(self) -> CoordKind {
        self.kind
    }

    pub fn is_fiber(self) -> bool {
        matches!(self.kind, CoordKind::FiberU | CoordKind::FiberV)
    }

    pub fn name(self) -> String {
        match self.kind {
            CoordKind::BaseX => "x".into(),
            CoordKind::BaseY => "y".into(),
            CoordKind::BaseZ => "z".into(),
            CoordKind::FiberU => format!("u{}", self.level),
            CoordKind::FiberV => format!("v{}", self.level),
        }
    }

    /// All coordinates of level `0..=level`, in the order x, y, z, u1, v1, u2, v2, ...
    pub fn all_up_to(level: usize) -> Vec<CoordRef> {
        let mut out = vec![CoordRef::X, CoordRef::Y, CoordRef::Z];
        for l in 1..=level {
            out.push(CoordRef::fiber_u(l));
            out.push(CoordRef::fiber_v(l));
        }
        out
    }
}

impl fmt::Display for CoordRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for CoordRef {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.name())
    }
}

/// Position within a coframe `[dφ : du : dv]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Slot {
    Phi,
    U,
    V,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::Phi, Slot::U, Slot::V];

    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coframe {
    pub level: usize,
    pub phi: CoordRef,
    pub fiber_u: CoordRef,
    pub fiber_v: CoordRef,
}

impl Coframe {
    /// `[dx : dy : dz]` on the base, centered on a direction with `dx != 0`.
    pub fn base() -> Self {
        Coframe {
            level: 0,
            phi: CoordRef::X,
            fiber_u: CoordRef::Y,
            fiber_v: CoordRef::Z,
        }
    }

    pub fn slot(&self, slot: Slot) -> CoordRef {
        match slot {
            Slot::Phi => self.phi,
            Slot::U => self.fiber_u,
            Slot::V => self.fiber_v,
        }
    }
}

impl fmt::Display for Coframe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[d{} : d{} : d{}]", self.phi, self.fiber_u, self.fiber_v)
    }
}

/// How a letter's chart re-coordinatizes the next level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChartStep {
    pub letter: Letter,
    /// Slot whose differential is nonzero on the direction; becomes the new uniformizer.
    pub divisor: Slot,
    pub new_u_from: Slot,
    pub new_v_from: Slot,
}

impl ChartStep {
    pub const fn for_letter(letter: Letter) -> Self {
        let (divisor, new_u_from, new_v_from) = match letter {
            Letter::R | Letter::T1 | Letter::T2 | Letter::L2 => (Slot::Phi, Slot::U, Slot::V),
            Letter::V | Letter::L3 => (Slot::U, Slot::Phi, Slot::V),
            Letter::L1 => (Slot::V, Slot::Phi, Slot::U),
        };
        ChartStep {
            letter,
            divisor,
            new_u_from,
            new_v_from,
        }
    }

    /// Old slot feeding the given slot of the next coframe.
    pub fn source_of(&self, new_slot: Slot) -> Slot {
        match new_slot {
            Slot::Phi => self.divisor,
            Slot::U => self.new_u_from,
            Slot::V => self.new_v_from,
        }
    }

    /// Slot of the next coframe fed by the given old slot.
    pub fn target_of(&self, old_slot: Slot) -> Slot {
        Slot::ALL
            .into_iter()
            .find(|s| self.source_of(*s) == old_slot)
            .expect("chart step is a permutation of slots")
    }

    pub fn next_coframe(&self, coframe: &Coframe) -> Coframe {
        let level = coframe.level + 1;
        Coframe {
            level,
            phi: coframe.slot(self.divisor),
            fiber_u: CoordRef::fiber_u(level),
            fiber_v: CoordRef::fiber_v(level),
        }
    }

    /// The two Pfaffian equations cut out by this chart.
    pub fn constraints(&self, coframe: &Coframe) -> [PfaffianConstraint; 2] {
        let level = coframe.level + 1;
        let divisor = coframe.slot(self.divisor);
        [
            PfaffianConstraint {
                numerator: coframe.slot(self.new_u_from),
                coefficient: CoordRef::fiber_u(level),
                divisor,
            },
            PfaffianConstraint {
                numerator: coframe.slot(self.new_v_from),
                coefficient: CoordRef::fiber_v(level),
                divisor,
            },
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Flag {
    Zero,
    NonZero,
}

/// Which coframe components vanish on the direction a letter names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DirectionForm {
    pub flags: [Flag; 3],
}

impl DirectionForm {
    pub fn at(&self, slot: Slot) -> Flag {
        self.flags[slot.index()]
    }
}

impl fmt::Display for DirectionForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |flag: Flag| if flag == Flag::Zero { "0" } else { "*" };
        write!(
            f,
            "[{} : {} : {}]",
            c(self.flags[0]),
            c(self.flags[1]),
            c(self.flags[2])
        )
    }
}

pub fn direction_form(letter: Letter) -> DirectionForm {
    use Flag::{NonZero as N, Zero as Z};
    let flags = match letter {
        Letter::R => [N, N, N],
        Letter::V => [Z, N, N],
        Letter::T1 => [N, Z, N],
        Letter::T2 => [N, N, Z],
        Letter::L1 => [Z, Z, N],
        Letter::L2 => [N, Z, Z],
        Letter::L3 => [Z, N, Z],
    };
    DirectionForm { flags }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChartLink {
    pub coframe: Coframe,
    pub step: ChartStep,
}

/// Charts along a word: one link per level `0..k`, plus the coframe at level `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartChain {
    pub links: Vec<ChartLink>,
    pub terminal: Coframe,
}

impl ChartChain {
    pub fn coframes(&self) -> impl Iterator<Item = &Coframe> {
        self.links
            .iter()
            .map(|l| &l.coframe)
            .chain(std::iter::once(&self.terminal))
    }
}

pub fn chart_sequence(word: &RvtWord) -> Result<ChartChain> {
    validate(word)?;
    let mut coframe = Coframe::base();
    let mut links = Vec::with_capacity(word.len());
    for &letter in word.letters() {
        let step = ChartStep::for_letter(letter);
        links.push(ChartLink { coframe, step });
        coframe = step.next_coframe(&coframe);
    }
    Ok(ChartChain {
        links,
        terminal: coframe,
    })
}

/// `d(numerator) - coefficient * d(divisor) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PfaffianConstraint {
    #[serde(rename = "num")]
    pub numerator: CoordRef,
    #[serde(rename = "coef")]
    pub coefficient: CoordRef,
    #[serde(rename = "div")]
    pub divisor: CoordRef,
}

impl fmt::Display for PfaffianConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d{} - {}*d{} = 0",
            self.numerator, self.coefficient, self.divisor
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PfaffianSystem {
    pub constraints: Vec<PfaffianConstraint>,
}

impl PfaffianSystem {
    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }
}

impl fmt::Display for PfaffianSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.constraints {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

pub fn pfaffian_system(word: &RvtWord) -> Result<PfaffianSystem> {
    let chain = chart_sequence(word)?;
    let constraints = chain
        .links
        .iter()
        .flat_map(|link| link.step.constraints(&link.coframe))
        .collect();
    Ok(PfaffianSystem { constraints })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn coframes(s: &str) -> Vec<String> {
        chart_sequence(&parse_word(s).unwrap())
            .unwrap()
            .coframes()
            .map(|c| c.to_string())
            .collect()
    }

    #[test]
    fn rvl_coframes() {
        assert_eq!(
            coframes("RVL"),
            [
                "[dx : dy : dz]",
                "[dx : du1 : dv1]",
                "[du1 : du2 : dv2]",
                "[dv2 : du3 : dv3]"
            ]
        );
        assert_eq!(coframes("RR")[2], "[dx : du2 : dv2]");
        assert_eq!(coframes("RVLT2")[4], "[dv2 : du4 : dv4]");
    }

    #[test]
    fn pfaffian_displays() {
        let render = |s: &str| {
            pfaffian_system(&parse_word(s).unwrap())
                .unwrap()
                .constraints
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(render("R"), ["dy - u1*dx = 0", "dz - v1*dx = 0"]);
        let rvl = render("RVL");
        assert_eq!(rvl.len(), 6);
        assert_eq!(rvl[4..], ["du1 - u3*dv2 = 0", "du2 - v3*dv2 = 0"]);
        let rvlt2 = render("RVLT2");
        assert_eq!(rvlt2.len(), 8);
        assert_eq!(rvlt2[6..], ["du3 - u4*dv2 = 0", "dv3 - v4*dv2 = 0"]);
    }

    #[test]
    fn direction_form_examples() {
        use Flag::{NonZero as N, Zero as Z};
        assert_eq!(direction_form(Letter::L2).flags, [N, Z, Z]);
        assert_eq!(direction_form(Letter::L3).flags, [Z, N, Z]);
        assert_eq!(direction_form(Letter::R).flags, [N, N, N]);
    }

    #[test]
    fn steps_are_permutations_and_admissible() {
        for letter in Letter::ALL {
            let step = ChartStep::for_letter(letter);
            let mut sources: Vec<Slot> = Slot::ALL.iter().map(|s| step.source_of(*s)).collect();
            sources.sort();
            assert_eq!(sources, Slot::ALL);
            for s in Slot::ALL {
                assert_eq!(step.source_of(step.target_of(s)), s);
            }
            assert_eq!(
                direction_form(letter).at(step.divisor),
                Flag::NonZero,
                "{letter}"
            );
        }
    }

    #[test]
    fn t1_charts_like_r_but_points_elsewhere() {
        let (r, t1) = (
            ChartStep::for_letter(Letter::R),
            ChartStep::for_letter(Letter::T1),
        );
        assert_eq!(
            (r.divisor, r.new_u_from, r.new_v_from),
            (t1.divisor, t1.new_u_from, t1.new_v_from)
        );
        assert_ne!(direction_form(Letter::R), direction_form(Letter::T1));
    }

    #[test]
    fn pfaffian_json() {
        let sys = pfaffian_system(&parse_word("R").unwrap()).unwrap();
        assert_eq!(
            serde_json::to_string(&sys).unwrap(),
            r#"[{"num":"y","coef":"u1","div":"x"},{"num":"z","coef":"v1","div":"x"}]"#
        );
    }
}
