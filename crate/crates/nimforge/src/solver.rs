//! Brute-force Sprague–Grundy solver over sum-bounded regions.
//!
//! Every supported ruleset strictly decreases the token total, so the region
//! `{positions with total ≤ T}` is closed under moves and can be solved level
//! by level in ascending total. Each level is independent once lower levels
//! are done, which is where the parallelism comes from.
//!
//! Alongside Grundy values the solver computes:
//!
//! * misère outcomes by direct DP (terminal positions are misère wins for
//!   the player to move),
//! * a Final/Normal **phase** for every position:
//!   terminal positions are final; a Grundy-1 position is final iff all its
//!   Grundy-0 options are final; a nonterminal Grundy-0 position is final
//!   iff it has a final Grundy-1 option; everything with Grundy ≥ 2 is
//!   normal.
//!
//! The phase labels drive the phase-based misère analysis: for an admissible
//! ruleset the misère P-positions are exactly
//! `{Grundy 0, normal} ∪ {Grundy 1, final}`, and for sums of universally
//! admissible games the same formula applies with Grundy = XOR and
//! phase = final-iff-every-component-final.

use std::collections::HashMap;
use std::env;
use std::io;

use rayon::prelude::*;
use thiserror::Error;

use crate::game::{mex, Grundy, Outcome, Phase, Position};
use crate::ruleset::RulesetSpec;

/// Default cap on the number of positions a single solve may allocate.
pub const DEFAULT_CAPACITY: u64 = 5_000_000;

/// Environment variable overriding [`DEFAULT_CAPACITY`].
pub const CAPACITY_ENV: &str = "NIMFORGE_CAP";

/// Current position cap: `NIMFORGE_CAP` if set and parseable, else the
/// default.
pub fn capacity_cap() -> u64 {
    env::var(CAPACITY_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CAPACITY)
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(
        "region total ≤ {t} holds {needed} positions, over the cap of {cap} \
         (set {CAPACITY_ENV} to raise it)"
    )]
    Capacity { t: u64, needed: u128, cap: u64 },
}

/// Number of positions with the given arity and total ≤ `t`.
pub fn region_size(arity: usize, t: u64) -> u128 {
    let t = t as u128;
    match arity {
        2 => (t + 1) * (t + 2) / 2,
        3 => (t + 1) * (t + 2) * (t + 3) / 6,
        _ => unreachable!("arity is 2 or 3"),
    }
}

/// Index of `pos` in level-major order (ascending total, then
/// lexicographic). Independent of any region bound.
fn index_of(pos: &Position) -> usize {
    match pos {
        Position::Pair(p) => {
            let s = p.x + p.y;
            (s * (s + 1) / 2 + p.x) as usize
        }
        Position::Triple(tr) => {
            let s = tr.x + tr.y + tr.z;
            let level_off = s * (s + 1) * (s + 2) / 6;
            let within = tr.x * (s + 1) - tr.x * tr.x.saturating_sub(1) / 2 + tr.y;
            (level_off + within) as usize
        }
    }
}

pub(crate) fn level_positions(arity: usize, s: u64) -> Vec<Position> {
    match arity {
        2 => (0..=s).map(|x| Position::pair(x, s - x)).collect(),
        3 => {
            let mut out = Vec::with_capacity(((s + 1) * (s + 2) / 2) as usize);
            for x in 0..=s {
                for y in 0..=(s - x) {
                    out.push(Position::triple(x, y, s - x - y));
                }
            }
            out
        }
        _ => unreachable!(),
    }
}

/// A solved region: all positions of one ruleset with total ≤ `t`.
#[derive(Debug, Clone)]
pub struct Region {
    spec: RulesetSpec,
    t: u64,
    grundy: Vec<Grundy>,
    phase: Vec<Phase>,
    misere: Vec<Outcome>,
}

impl Region {
    /// Solves Grundy values only.
    pub fn solve(spec: &RulesetSpec, t: u64) -> Result<Region, SolveError> {
        Region::solve_core(spec, t, false)
    }

    /// Solves Grundy values, phases, and misère outcomes.
    pub fn solve_full(spec: &RulesetSpec, t: u64) -> Result<Region, SolveError> {
        Region::solve_core(spec, t, true)
    }

    fn solve_core(spec: &RulesetSpec, t: u64, full: bool) -> Result<Region, SolveError> {
        let arity = spec.arity();
        let needed = region_size(arity, t);
        let cap = capacity_cap();
        if needed > cap as u128 {
            return Err(SolveError::Capacity { t, needed, cap });
        }
        let n = needed as usize;
        let mut grundy: Vec<Grundy> = Vec::with_capacity(n);
        let mut phase: Vec<Phase> = Vec::with_capacity(if full { n } else { 0 });
        let mut misere: Vec<Outcome> = Vec::with_capacity(if full { n } else { 0 });
        let spec = *spec;
        for s in 0..=t {
            let level = level_positions(arity, s);
            let solved: Vec<(Grundy, Phase, Outcome)> = level
                .par_iter()
                .map(|pos| {
                    let mut gs: Vec<Grundy> = Vec::new();
                    let mut any = false;
                    let mut all_g0_final = true;
                    let mut has_g1_final = false;
                    let mut has_misere_p_option = false;
                    spec.for_each_option(pos, |o| {
                        let oi = index_of(&o);
                        let og = grundy[oi];
                        gs.push(og);
                        any = true;
                        if full {
                            match og {
                                0 if phase[oi] == Phase::Normal => all_g0_final = false,
                                1 if phase[oi] == Phase::Final => has_g1_final = true,
                                _ => {}
                            }
                            if misere[oi] == Outcome::P {
                                has_misere_p_option = true;
                            }
                        }
                    });
                    let g = mex(&gs);
                    let ph = match (any, g) {
                        (false, _) => Phase::Final,
                        (true, 0) => {
                            if has_g1_final {
                                Phase::Final
                            } else {
                                Phase::Normal
                            }
                        }
                        (true, 1) => {
                            if all_g0_final {
                                Phase::Final
                            } else {
                                Phase::Normal
                            }
                        }
                        _ => Phase::Normal,
                    };
                    let mis = if !any || has_misere_p_option {
                        Outcome::N
                    } else {
                        Outcome::P
                    };
                    (g, ph, mis)
                })
                .collect();
            for (g, ph, mis) in solved {
                grundy.push(g);
                if full {
                    phase.push(ph);
                    misere.push(mis);
                }
            }
        }
        Ok(Region {
            spec,
            t,
            grundy,
            phase,
            misere,
        })
    }

    pub fn spec(&self) -> &RulesetSpec {
        &self.spec
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn len(&self) -> usize {
        self.grundy.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grundy.is_empty()
    }

    /// True when phases and misère outcomes were computed
    /// ([`Region::solve_full`]).
    pub fn has_layers(&self) -> bool {
        !self.phase.is_empty()
    }

    fn contains(&self, pos: &Position) -> bool {
        pos.arity() == self.spec.arity() && pos.total() <= self.t
    }

    pub fn grundy_at(&self, pos: &Position) -> Option<Grundy> {
        self.contains(pos).then(|| self.grundy[index_of(pos)])
    }

    /// Normal-play outcome: P exactly when the Grundy value is 0.
    pub fn outcome_at(&self, pos: &Position) -> Option<Outcome> {
        self.grundy_at(pos)
            .map(|g| if g == 0 { Outcome::P } else { Outcome::N })
    }

    pub fn phase_at(&self, pos: &Position) -> Option<Phase> {
        (self.contains(pos) && !self.phase.is_empty()).then(|| self.phase[index_of(pos)])
    }

    pub fn misere_at(&self, pos: &Position) -> Option<Outcome> {
        (self.contains(pos) && !self.misere.is_empty()).then(|| self.misere[index_of(pos)])
    }

    /// All positions in the region, in ascending (total, lexicographic)
    /// order — the same order as the internal tables.
    pub fn positions(&self) -> impl Iterator<Item = Position> + '_ {
        (0..=self.t).flat_map(move |s| level_positions(self.spec.arity(), s))
    }

    /// Normal-play P-positions in (total, lexicographic) order.
    pub fn p_positions(&self) -> Vec<Position> {
        self.positions()
            .zip(self.grundy.iter())
            .filter(|(_, g)| **g == 0)
            .map(|(p, _)| p)
            .collect()
    }

    /// Misère P-positions from the direct DP, in (total, lexicographic)
    /// order. Requires [`Region::solve_full`].
    pub fn misere_p_positions(&self) -> Vec<Position> {
        assert!(
            !self.misere.is_empty(),
            "misère outcomes need Region::solve_full"
        );
        self.positions()
            .zip(self.misere.iter())
            .filter(|(_, m)| **m == Outcome::P)
            .map(|(p, _)| p)
            .collect()
    }

    /// Misère P-positions predicted by the phase formula
    /// `{Grundy 0, normal} ∪ {Grundy 1, final}`. The prediction is only
    /// guaranteed for admissible rulesets; the report carries the
    /// admissibility verdict so callers can tell.
    pub fn misere_p_via_phase(&self) -> PhaseMisereReport {
        assert!(!self.phase.is_empty(), "phases need Region::solve_full");
        let p_positions = self
            .positions()
            .zip(self.grundy.iter().zip(self.phase.iter()))
            .filter(|(_, (g, ph))| {
                matches!((**g, **ph), (0, Phase::Normal) | (1, Phase::Final))
            })
            .map(|(p, _)| p)
            .collect();
        PhaseMisereReport {
            p_positions,
            admissible: self.check_admissible().admissible,
        }
    }

    /// Checks admissibility and universal admissibility of the ruleset over
    /// this region.
    ///
    /// Admissible: every position with Grundy ≥ 2 has a normal Grundy-0
    /// option or a final Grundy-1 option (so the phase formula gives its
    /// misère outcome).
    ///
    /// Universally admissible (sums behave): additionally either every
    /// Grundy ≤ 1 position is final, or the ruleset passes the stronger
    /// per-position conditions — normal Grundy-1 positions have only normal
    /// Grundy-0 options, final Grundy-0 positions have only final Grundy-1
    /// options, and every Grundy ≥ 2 position has both a normal Grundy-0
    /// option and a normal Grundy-1 option.
    pub fn check_admissible(&self) -> AdmissibilityReport {
        assert!(!self.phase.is_empty(), "phases need Region::solve_full");
        let mut report = AdmissibilityReport {
            admissible: true,
            universally: false,
            all_low_final: true,
            admissibility_violations: 0,
            universality_violations: 0,
            admissibility_witnesses: Vec::new(),
            universality_witnesses: Vec::new(),
        };
        for (pos, i) in self.positions().zip(0..) {
            let g = self.grundy[i];
            let ph = self.phase[i];
            if g <= 1 && ph == Phase::Normal {
                report.all_low_final = false;
            }
            let mut annotated: Vec<OptionAnnotation> = Vec::new();
            let mut has = OptionKinds::default();
            self.spec.for_each_option(&pos, |o| {
                let oi = index_of(&o);
                let (og, oph) = (self.grundy[oi], self.phase[oi]);
                annotated.push(OptionAnnotation {
                    pos: o,
                    grundy: og,
                    phase: oph,
                });
                match (og, oph) {
                    (0, Phase::Final) => has.g0_final = true,
                    (0, Phase::Normal) => has.g0_normal = true,
                    (1, Phase::Final) => has.g1_final = true,
                    (1, Phase::Normal) => has.g1_normal = true,
                    _ => {}
                }
            });
            let admissible_here = g < 2 || has.g0_normal || has.g1_final;
            let universal_here = match (g, ph) {
                (0, Phase::Final) => !has.g1_normal,
                (1, Phase::Normal) => !has.g0_final,
                (g, _) if g >= 2 => has.g0_normal && has.g1_normal,
                _ => true,
            };
            if !admissible_here {
                report.admissible = false;
                report.admissibility_violations += 1;
                push_witness(&mut report.admissibility_witnesses, &pos, g, &annotated);
            }
            if !universal_here {
                report.universality_violations += 1;
                push_witness(&mut report.universality_witnesses, &pos, g, &annotated);
            }
        }
        report.universally = report.admissible
            && (report.all_low_final || report.universality_violations == 0);
        report
    }

    /// Writes `x,y[,z],grundy,outcome,phase,misere` rows in (total,
    /// lexicographic) order. Requires [`Region::solve_full`].
    pub fn write_csv<W: io::Write + ?Sized>(&self, w: &mut W) -> io::Result<()> {
        assert!(!self.phase.is_empty(), "CSV export needs Region::solve_full");
        if self.spec.arity() == 2 {
            writeln!(w, "x,y,grundy,outcome,phase,misere")?;
        } else {
            writeln!(w, "x,y,z,grundy,outcome,phase,misere")?;
        }
        for (pos, i) in self.positions().zip(0..) {
            let outcome = if self.grundy[i] == 0 { Outcome::P } else { Outcome::N };
            writeln!(
                w,
                "{},{},{},{},{}",
                pos, self.grundy[i], outcome, self.phase[i], self.misere[i]
            )?;
        }
        Ok(())
    }

    /// JSON export: `{"spec", "T", "entries"}` with one entry per position.
    /// Requires [`Region::solve_full`].
    pub fn to_json(&self) -> serde_json::Value {
        assert!(!self.phase.is_empty(), "JSON export needs Region::solve_full");
        let entries: Vec<serde_json::Value> = self
            .positions()
            .zip(0..)
            .map(|(pos, i)| {
                let outcome = if self.grundy[i] == 0 { Outcome::P } else { Outcome::N };
                serde_json::json!({
                    "pos": pos.coords(),
                    "grundy": self.grundy[i],
                    "outcome": outcome.to_string(),
                    "phase": self.phase[i].to_string(),
                    "misere": self.misere[i].to_string(),
                })
            })
            .collect();
        serde_json::json!({
            "spec": self.spec.to_string(),
            "T": self.t,
            "entries": entries,
        })
    }
}

fn push_witness(
    list: &mut Vec<Witness>,
    pos: &Position,
    grundy: Grundy,
    annotated: &[OptionAnnotation],
) {
    const WITNESS_CAP: usize = 20;
    if list.len() >= WITNESS_CAP {
        return;
    }
    let mut options = annotated.to_vec();
    options.sort_unstable_by_key(|a| (a.pos.total(), a.pos));
    options.dedup_by_key(|a| a.pos);
    list.push(Witness {
        pos: *pos,
        grundy,
        options,
    });
}

#[derive(Default)]
struct OptionKinds {
    g0_final: bool,
    g0_normal: bool,
    g1_final: bool,
    g1_normal: bool,
}

/// One option of a witness position, with its Grundy value and phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OptionAnnotation {
    pub pos: Position,
    pub grundy: Grundy,
    pub phase: Phase,
}

/// A position violating admissibility (or universal admissibility), with
/// all of its options annotated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub pos: Position,
    pub grundy: Grundy,
    pub options: Vec<OptionAnnotation>,
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) (options", self.pos)?;
        for (i, o) in self.options.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let phase = match o.phase {
                Phase::Final => "Final",
                Phase::Normal => "Normal",
            };
            if o.grundy <= 1 {
                write!(f, " ({}) {} g{}", o.pos, phase, o.grundy)?;
            } else {
                write!(f, " ({}) g{}", o.pos, o.grundy)?;
            }
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub universally: bool,
    /// True when every Grundy ≤ 1 position in the region is final.
    pub all_low_final: bool,
    pub admissibility_violations: u64,
    pub universality_violations: u64,
    /// First violating positions (capped), in (total, lexicographic) order.
    pub admissibility_witnesses: Vec<Witness>,
    pub universality_witnesses: Vec<Witness>,
}

/// Result of the phase-based misère analysis.
#[derive(Debug, Clone)]
pub struct PhaseMisereReport {
    pub p_positions: Vec<Position>,
    /// The phase formula is only proven for admissible rulesets; callers
    /// should treat the result as flagged when this is false.
    pub admissible: bool,
}

/// XOR of the component Grundy values of a disjunctive sum.
pub fn disjunctive_sum_grundy(parts: &[(RulesetSpec, Position)]) -> Result<Grundy, SolveError> {
    let mut acc = 0;
    for (spec, pos) in parts {
        let region = Region::solve(spec, pos.total())?;
        acc ^= region.grundy_at(pos).expect("position is in its own region");
    }
    Ok(acc)
}

/// One component of a disjunctive sum: a full ruleset, or a single Nim heap
/// (remove any positive number of tokens).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumPart {
    Ruleset(RulesetSpec),
    NimHeap,
}

impl std::fmt::Display for SumPart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SumPart::Ruleset(spec) => spec.fmt(f),
            SumPart::NimHeap => f.write_str("nim"),
        }
    }
}

/// A position inside one sum component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CompPos {
    Game(Position),
    Nim(u64),
}

impl CompPos {
    pub fn total(&self) -> u64 {
        match self {
            CompPos::Game(p) => p.total(),
            CompPos::Nim(n) => *n,
        }
    }
}

impl std::fmt::Display for CompPos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CompPos::Game(p) => p.fmt(f),
            CompPos::Nim(n) => n.fmt(f),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Labels {
    pub grundy: Grundy,
    pub phase: Phase,
    pub misere: Outcome,
}

fn combine_option_labels(options: &[Labels]) -> Labels {
    let gs: Vec<Grundy> = options.iter().map(|l| l.grundy).collect();
    let g = mex(&gs);
    let phase = if options.is_empty() {
        Phase::Final
    } else if g >= 2 {
        Phase::Normal
    } else if g == 1 {
        if options
            .iter()
            .all(|l| l.grundy != 0 || l.phase == Phase::Final)
        {
            Phase::Final
        } else {
            Phase::Normal
        }
    } else if options
        .iter()
        .any(|l| l.grundy == 1 && l.phase == Phase::Final)
    {
        Phase::Final
    } else {
        Phase::Normal
    };
    let misere = if options.is_empty() || options.iter().any(|l| l.misere == Outcome::P) {
        Outcome::N
    } else {
        Outcome::P
    };
    Labels { grundy: g, phase, misere }
}

fn part_options(part: &SumPart, cp: &CompPos) -> Vec<CompPos> {
    match (part, cp) {
        (SumPart::Ruleset(spec), CompPos::Game(p)) => spec
            .options(p)
            .into_iter()
            .map(CompPos::Game)
            .collect(),
        (SumPart::NimHeap, CompPos::Nim(n)) => (0..*n).map(CompPos::Nim).collect(),
        _ => panic!("component position does not match sum part"),
    }
}

/// Direct solver for a two-part disjunctive sum, memoized across calls.
pub struct SumGame {
    a: SumPart,
    b: SumPart,
    product: HashMap<(CompPos, CompPos), Labels>,
    single: [HashMap<CompPos, Labels>; 2],
}

impl SumGame {
    pub fn new(a: SumPart, b: SumPart) -> SumGame {
        SumGame {
            a,
            b,
            product: HashMap::new(),
            single: [HashMap::new(), HashMap::new()],
        }
    }

    /// Labels of one component on its own (side 0 = first part).
    pub fn component_labels(&mut self, side: usize, cp: CompPos) -> Labels {
        if let Some(l) = self.single[side].get(&cp) {
            return *l;
        }
        let part = if side == 0 { self.a } else { self.b };
        let opts = part_options(&part, &cp);
        let labels: Vec<Labels> = opts
            .into_iter()
            .map(|o| self.component_labels(side, o))
            .collect();
        let l = combine_option_labels(&labels);
        self.single[side].insert(cp, l);
        l
    }

    /// Labels of the sum position, computed by direct DP on the product
    /// game (a move is a move in exactly one component).
    pub fn labels(&mut self, ca: CompPos, cb: CompPos) -> Labels {
        if let Some(l) = self.product.get(&(ca, cb)) {
            return *l;
        }
        let mut option_labels = Vec::new();
        for oa in part_options(&self.a, &ca) {
            option_labels.push(self.labels(oa, cb));
        }
        for ob in part_options(&self.b, &cb) {
            option_labels.push(self.labels(ca, ob));
        }
        let l = combine_option_labels(&option_labels);
        self.product.insert((ca, cb), l);
        l
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumMismatch {
    pub a: CompPos,
    pub b: CompPos,
    pub kind: SumMismatchKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumMismatchKind {
    Grundy,
    Phase,
    Misere,
}

/// Result of checking the sum laws (Grundy = XOR, phase = AND, misère =
/// phase formula) against the direct product DP.
#[derive(Debug, Clone)]
pub struct SumPhaseReport {
    /// Set when a part is not universally admissible over the region, in
    /// which case the laws are outside the proven theorem.
    pub flagged: bool,
    pub checked: u64,
    pub first_mismatch: Option<SumMismatch>,
}

/// Compares, for every sum position with combined total ≤ `t`, the direct
/// product DP against the composition laws. `flagged` is set when a part
/// fails the universal-admissibility precondition (the check still runs).
pub fn sum_phase_check(a: SumPart, b: SumPart, t: u64) -> Result<SumPhaseReport, SolveError> {
    let universal = |part: &SumPart| -> Result<bool, SolveError> {
        match part {
            SumPart::NimHeap => Ok(true),
            SumPart::Ruleset(spec) => {
                Ok(Region::solve_full(spec, t)?.check_admissible().universally)
            }
        }
    };
    let flagged = !(universal(&a)? && universal(&b)?);
    let mut game = SumGame::new(a, b);
    let mut checked = 0;
    let mut first_mismatch = None;
    let level = |part: &SumPart, s: u64| -> Vec<CompPos> {
        match part {
            SumPart::Ruleset(spec) => level_positions(spec.arity(), s)
                .into_iter()
                .map(CompPos::Game)
                .collect(),
            SumPart::NimHeap => vec![CompPos::Nim(s)],
        }
    };
    'outer: for total in 0..=t {
        for sa in 0..=total {
            for ca in level(&a, sa) {
                for cb in level(&b, total - sa) {
                    checked += 1;
                    let la = game.component_labels(0, ca);
                    let lb = game.component_labels(1, cb);
                    let sum = game.labels(ca, cb);
                    let want_grundy = la.grundy ^ lb.grundy;
                    let want_phase =
                        if la.phase == Phase::Final && lb.phase == Phase::Final {
                            Phase::Final
                        } else {
                            Phase::Normal
                        };
                    let want_misere = match (want_grundy, want_phase) {
                        (0, Phase::Normal) | (1, Phase::Final) => Outcome::P,
                        _ => Outcome::N,
                    };
                    let kind = if sum.grundy != want_grundy {
                        Some(SumMismatchKind::Grundy)
                    } else if sum.phase != want_phase {
                        Some(SumMismatchKind::Phase)
                    } else if sum.misere != want_misere {
                        Some(SumMismatchKind::Misere)
                    } else {
                        None
                    };
                    if let Some(kind) = kind {
                        first_mismatch = Some(SumMismatch { a: ca, b: cb, kind });
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(SumPhaseReport {
        flagged,
        checked,
        first_mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashMap;

    const TRIANGULAR_16X16: [[u64; 16]; 16] = [
        [0, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14],
        [0, 0, 0, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15],
        [1, 0, 0, 0, 1, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16],
        [2, 3, 0, 0, 0, 2, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17],
        [3, 4, 1, 0, 0, 0, 1, 3, 11, 12, 13, 14, 15, 16, 17, 18],
        [4, 5, 6, 2, 0, 0, 0, 2, 4, 13, 14, 15, 16, 17, 18, 19],
        [5, 6, 7, 8, 1, 0, 0, 0, 1, 5, 15, 16, 17, 18, 19, 20],
        [6, 7, 8, 9, 3, 2, 0, 0, 0, 2, 3, 6, 18, 19, 20, 21],
        [7, 8, 9, 10, 11, 4, 1, 0, 0, 0, 1, 4, 7, 20, 21, 22],
        [8, 9, 10, 11, 12, 13, 5, 2, 0, 0, 0, 2, 5, 8, 22, 23],
        [9, 10, 11, 12, 13, 14, 15, 3, 1, 0, 0, 0, 1, 3, 9, 24],
        [10, 11, 12, 13, 14, 15, 16, 6, 4, 2, 0, 0, 0, 2, 4, 6],
        [11, 12, 13, 14, 15, 16, 17, 18, 7, 5, 1, 0, 0, 0, 1, 5],
        [12, 13, 14, 15, 16, 17, 18, 19, 20, 8, 3, 2, 0, 0, 0, 2],
        [13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 9, 4, 1, 0, 0, 0],
        [14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24, 6, 5, 2, 0, 0],
    ];

    #[test]
    fn triangular_16x16_table() {
        let region = Region::solve(&RulesetSpec::Triangular, 30).unwrap();
        for (x, row) in TRIANGULAR_16X16.iter().enumerate() {
            for (y, want) in row.iter().enumerate() {
                let pos = Position::pair(x as u64, y as u64);
                assert_eq!(region.grundy_at(&pos), Some(*want), "({x},{y})");
            }
        }
    }

    #[test]
    fn yama_hand_checked_values() {
        let region = Region::solve(&RulesetSpec::Yama, 12).unwrap();
        for ((x, y), want) in [
            ((0, 0), 0),
            ((0, 1), 0),
            ((0, 2), 1),
            ((2, 3), 0),
            ((4, 2), 3),
            ((0, 9), 1),
            ((5, 2), 3),
            ((6, 6), 0),
        ] {
            assert_eq!(
                region.grundy_at(&Position::pair(x, y)),
                Some(want),
                "({x},{y})"
            );
        }
        assert_eq!(region.grundy_at(&Position::pair(10, 10)), None);
    }

    #[test]
    fn p_positions_in_order() {
        let region = Region::solve(&RulesetSpec::Yama, 6).unwrap();
        let ps: Vec<String> = region.p_positions().iter().map(|p| p.to_string()).collect();
        assert_eq!(
            ps,
            ["0,0", "0,1", "1,0", "1,1", "1,2", "2,1", "2,2", "2,3", "3,2", "3,3"]
        );
    }

    #[test]
    fn triangular_final_phase_set() {
        let region = Region::solve_full(&RulesetSpec::Triangular, 10).unwrap();
        let final_set: Vec<(u64, u64)> = region
            .positions()
            .filter(|p| region.phase_at(p) == Some(Phase::Final))
            .map(|p| {
                let pr = p.as_pair().unwrap();
                (pr.x, pr.y)
            })
            .collect();
        assert_eq!(
            final_set,
            [
                (0, 0),
                (0, 1),
                (1, 0),
                (0, 2),
                (1, 1),
                (2, 0),
                (1, 2),
                (2, 1)
            ]
        );
    }

    #[test]
    fn yama_misere_outcomes() {
        let region = Region::solve_full(&RulesetSpec::Yama, 8).unwrap();
        let direct = region.misere_p_positions();
        let want: Vec<Position> = region
            .positions()
            .filter(|p| {
                let pr = p.as_pair().unwrap();
                pr.x.min(pr.y) == 0 && pr.x.max(pr.y) >= 2
            })
            .collect();
        assert_eq!(direct, want);
    }

    #[test]
    fn phase_formula_matches_direct_misere_when_admissible() {
        for spec in [RulesetSpec::Yama, RulesetSpec::Triangular] {
            let region = Region::solve_full(&spec, 20).unwrap();
            let via_phase = region.misere_p_via_phase();
            assert!(via_phase.admissible, "{spec}");
            assert_eq!(via_phase.p_positions, region.misere_p_positions(), "{spec}");
        }
    }

    #[test]
    fn triangular_admissible_but_not_universally() {
        let region = Region::solve_full(&RulesetSpec::Triangular, 12).unwrap();
        let report = region.check_admissible();
        assert!(report.admissible);
        assert!(!report.universally);
        assert!(!report.all_low_final);
        let first: Vec<String> = report
            .universality_witnesses
            .iter()
            .take(4)
            .map(|w| w.pos.to_string())
            .collect();
        assert_eq!(first, ["0,3", "3,0", "0,4", "1,3"]);
        let w13 = report
            .universality_witnesses
            .iter()
            .find(|w| w.pos == Position::pair(1, 3))
            .unwrap();
        assert_eq!(
            w13.to_string(),
            "(1,3) (options (2,0) Final g1, (2,1) Final g0, (3,0) g2)"
        );
    }

    #[test]
    fn yama_wythoff_universally_admissible() {
        for c in [0, 1, 2] {
            let region = Region::solve_full(&RulesetSpec::YamaWythoff { c }, 16).unwrap();
            let report = region.check_admissible();
            assert!(report.admissible, "c={c}");
            assert!(report.all_low_final, "c={c}");
            assert!(report.universally, "c={c}");
        }
    }

    #[test]
    fn capacity_cap_is_enforced() {
        let err = Region::solve(&RulesetSpec::Yama, 4000).unwrap_err();
        let SolveError::Capacity { needed, cap, .. } = err;
        assert!(needed > cap as u128);
    }

    #[test]
    fn index_round_trips() {
        let mut next = 0;
        for s in 0..=15u64 {
            for pos in level_positions(2, s) {
                assert_eq!(index_of(&pos), next);
                next += 1;
            }
        }
        let mut next = 0;
        for s in 0..=12u64 {
            for pos in level_positions(3, s) {
                assert_eq!(index_of(&pos), next);
                next += 1;
            }
        }
    }

    #[test]
    fn sum_grundy_is_xor_of_parts() {
        let parts = [
            (RulesetSpec::Yama, Position::pair(9, 2)),
            (RulesetSpec::Triangular, Position::pair(4, 7)),
        ];
        assert_eq!(disjunctive_sum_grundy(&parts).unwrap(), 0);
        let parts = [
            (RulesetSpec::Yama, Position::pair(0, 4)),
            (RulesetSpec::Triangular, Position::pair(0, 3)),
        ];
        assert_eq!(disjunctive_sum_grundy(&parts).unwrap(), 1 ^ 2);
    }

    #[test]
    fn sum_check_yama_wythoff_with_nim() {
        let report = sum_phase_check(
            SumPart::Ruleset(RulesetSpec::YamaWythoff { c: 0 }),
            SumPart::NimHeap,
            10,
        )
        .unwrap();
        assert!(!report.flagged);
        assert_eq!(report.first_mismatch, None);
        assert!(report.checked > 0);
    }

    #[test]
    fn sum_check_flags_non_universal_parts() {
        let report = sum_phase_check(
            SumPart::Ruleset(RulesetSpec::Triangular),
            SumPart::Ruleset(RulesetSpec::Triangular),
            8,
        )
        .unwrap();
        assert!(report.flagged);
    }

    #[test]
    fn product_engine_agrees_with_region_on_single_components() {
        let specs = [
            RulesetSpec::Yama,
            RulesetSpec::Triangular,
            RulesetSpec::YamaWythoff { c: 1 },
            RulesetSpec::geometric(2).unwrap(),
        ];
        for spec in specs {
            let region = Region::solve_full(&spec, 12).unwrap();
            let mut game = SumGame::new(SumPart::Ruleset(spec), SumPart::NimHeap);
            for pos in region.positions() {
                let l = game.component_labels(0, CompPos::Game(pos));
                assert_eq!(Some(l.grundy), region.grundy_at(&pos), "{spec} {pos}");
                assert_eq!(Some(l.phase), region.phase_at(&pos), "{spec} {pos}");
                assert_eq!(Some(l.misere), region.misere_at(&pos), "{spec} {pos}");
            }
        }
    }

    fn reference_grundy(spec: &RulesetSpec, pos: &Position) -> Grundy {
        fn go(
            spec: &RulesetSpec,
            pos: &Position,
            memo: &mut HashMap<Position, Grundy>,
        ) -> Grundy {
            if let Some(g) = memo.get(pos) {
                return *g;
            }
            let gs: Vec<Grundy> = spec
                .options(pos)
                .iter()
                .map(|o| go(spec, o, memo))
                .collect();
            let g = mex(&gs);
            memo.insert(*pos, g);
            g
        }
        go(spec, pos, &mut HashMap::new())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn solver_matches_reference_recursion(
            spec_idx in 0usize..6,
            x in 0u64..10,
            y in 0u64..10,
        ) {
            let specs = [
                RulesetSpec::Yama,
                RulesetSpec::Triangular,
                RulesetSpec::YamaWythoff { c: 1 },
                RulesetSpec::TriangularWythoff { c: 0 },
                RulesetSpec::ab_triangular(3, -1).unwrap(),
                RulesetSpec::ClassicWythoff,
            ];
            let spec = specs[spec_idx];
            let pos = Position::pair(x, y);
            let region = Region::solve(&spec, x + y).unwrap();
            prop_assert_eq!(region.grundy_at(&pos).unwrap(), reference_grundy(&spec, &pos));
        }

        #[test]
        fn three_heap_solver_matches_reference(
            v in 1u8..=6,
            h in proptest::array::uniform3(0u64..6),
        ) {
            let spec = RulesetSpec::three_heap(v).unwrap();
            let pos = Position::triple(h[0], h[1], h[2]);
            let region = Region::solve(&spec, pos.total()).unwrap();
            prop_assert_eq!(region.grundy_at(&pos).unwrap(), reference_grundy(&spec, &pos));
        }
    }
}
