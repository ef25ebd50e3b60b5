//! Transfinite extensions: the two-heap games played on ordinal heap sizes.
//!
//! The closed-form P-position descriptions extend as follows:
//!
//! * Wythoff: split both ordinals into Cantor-normal-form terms; a pair is
//!   P exactly when the exponent sequences coincide and, for every
//!   exponent, the two coefficients form a finite Wythoff P-pair.
//! * Yama and Triangular: a pair is P exactly when the two ordinals are
//!   successor-adjacent (`α+1 = β` or `β+1 = α`); note this excludes the
//!   diagonal `(α, α)`, unlike the finite near-diagonal `|x−y| ≤ 1`.
//!
//! Ordinal games are not brute-forceable, so [`closure_check`] verifies the
//! defining closure conditions of a P-set directly over a bounded
//! [`OrdinalUniverse`]: no move connects two P-positions (checked for every
//! in-universe pair), and every non-P position has a move to a P-position
//! (checked on the universe interior, where a winning move cannot be pushed
//! past the coefficient cap; boundary positions are reported as excluded
//! rather than checked).

use std::fmt;
use std::str::FromStr;

use crate::formulas::classic_wythoff_p;
use crate::ordinal::{natural_sum, Ordinal, OrdinalUniverse};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransfiniteFamily {
    Wythoff,
    Yama,
    Triangular,
}

impl TransfiniteFamily {
    pub const ALL: [TransfiniteFamily; 3] = [
        TransfiniteFamily::Wythoff,
        TransfiniteFamily::Yama,
        TransfiniteFamily::Triangular,
    ];
}

impl fmt::Display for TransfiniteFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransfiniteFamily::Wythoff => f.write_str("wythoff"),
            TransfiniteFamily::Yama => f.write_str("yama"),
            TransfiniteFamily::Triangular => f.write_str("triangular"),
        }
    }
}

impl FromStr for TransfiniteFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "wythoff" => Ok(TransfiniteFamily::Wythoff),
            "yama" => Ok(TransfiniteFamily::Yama),
            "triangular" => Ok(TransfiniteFamily::Triangular),
            other => Err(format!(
                "unknown transfinite family {other:?} (expected wythoff, yama, or triangular)"
            )),
        }
    }
}

/// Legality of the move `from → to` under the given family, on arbitrary
/// ordinals.
///
/// * Wythoff: decrease one coordinate, or decrease both so that the same
///   "amount" leaves each heap — expressed without subtraction as
///   `α ⊕ β′ = β ⊕ α′` in natural sums.
/// * Yama: take from one heap (leaving `α′` with `α′+1 < α`, so at least
///   a "2-token" step) and put exactly one token on the other.
/// * Triangular: one coordinate strictly decreases, the other strictly
///   increases, and the natural-sum total strictly decreases.
pub fn is_legal_move(
    family: TransfiniteFamily,
    from: &(Ordinal, Ordinal),
    to: &(Ordinal, Ordinal),
) -> bool {
    let (a, b) = from;
    let (a2, b2) = to;
    match family {
        TransfiniteFamily::Wythoff => {
            (a2 < a && b2 == b)
                || (a2 == a && b2 < b)
                || (a2 < a && b2 < b && natural_sum(a, b2) == natural_sum(b, a2))
        }
        TransfiniteFamily::Yama => {
            (*b2 == b.successor() && a2.successor() < *a)
                || (*a2 == a.successor() && b2.successor() < *b)
        }
        TransfiniteFamily::Triangular => {
            ((a2 < a && b2 > b) || (a2 > a && b2 < b))
                && natural_sum(a2, b2) < natural_sum(a, b)
        }
    }
}

/// All legal options of `pos` whose coordinates stay inside the universe,
/// in lexicographic order.
///
/// The universe is a window onto an infinite game, so this list can be a
/// strict subset of the real option set; pair it with [`options_complete`]
/// rather than treating absence as proof.
pub fn transfinite_options(
    family: TransfiniteFamily,
    pos: &(Ordinal, Ordinal),
    universe: &OrdinalUniverse,
) -> Vec<(Ordinal, Ordinal)> {
    let members: Vec<Ordinal> = universe.iter().collect();
    let mut out = Vec::new();
    for a in &members {
        for b in &members {
            let cand = (a.clone(), b.clone());
            if is_legal_move(family, pos, &cand) {
                out.push(cand);
            }
        }
    }
    out
}

/// Whether every ordinal strictly below `bound` belongs to the universe.
fn all_below_in(universe: &OrdinalUniverse, bound: &Ordinal) -> bool {
    match bound.as_nat() {
        Some(0) => true,
        Some(n) => n <= universe.coeff_cap() + 1 && universe.exponents().contains(&0),
        None => false,
    }
}

/// True when [`transfinite_options`] is guaranteed to list *every* legal
/// option of `pos`, i.e. no legal target can fall outside the universe.
///
/// A `false` here is a truncation flag, not a verdict: successor targets
/// (Yama's `β+1`) or large replacement heaps can overflow the coefficient
/// cap. The Triangular test is conservative — it demands the whole
/// natural-sum ball below the position's total.
pub fn options_complete(
    family: TransfiniteFamily,
    pos: &(Ordinal, Ordinal),
    universe: &OrdinalUniverse,
) -> bool {
    let (a, b) = pos;
    match family {
        TransfiniteFamily::Wythoff => all_below_in(universe, a) && all_below_in(universe, b),
        TransfiniteFamily::Yama => {
            let side_ok = |take: &Ordinal, give: &Ordinal| {
                let bound = take.predecessor().unwrap_or_else(|| take.clone());
                bound.is_zero()
                    || (all_below_in(universe, &bound) && universe.contains(&give.successor()))
            };
            side_ok(a, b) && side_ok(b, a)
        }
        TransfiniteFamily::Triangular => all_below_in(universe, &natural_sum(a, b)),
    }
}

/// Transfinite Wythoff P-test: every Cantor-normal-form exponent must carry
/// a finite Wythoff P-pair of coefficients.
pub fn transfinite_wythoff_p(a: &Ordinal, b: &Ordinal) -> bool {
    let (mut ia, mut ib) = (a.terms().iter().peekable(), b.terms().iter().peekable());
    loop {
        match (ia.peek(), ib.peek()) {
            (Some((ea, ca)), Some((eb, cb))) => match ea.cmp(eb) {
                std::cmp::Ordering::Greater => {
                    if !classic_wythoff_p(*ca, 0) {
                        return false;
                    }
                    ia.next();
                }
                std::cmp::Ordering::Less => {
                    if !classic_wythoff_p(0, *cb) {
                        return false;
                    }
                    ib.next();
                }
                std::cmp::Ordering::Equal => {
                    if !classic_wythoff_p(*ca, *cb) {
                        return false;
                    }
                    ia.next();
                    ib.next();
                }
            },
            (Some((_, ca)), None) => {
                if !classic_wythoff_p(*ca, 0) {
                    return false;
                }
                ia.next();
            }
            (None, Some((_, cb))) => {
                if !classic_wythoff_p(0, *cb) {
                    return false;
                }
                ib.next();
            }
            (None, None) => return true,
        }
    }
}

/// Transfinite Yama P-test: successor-adjacent pairs only.
///
/// The diagonal is deliberately excluded — `(ω, ω)` is not claimed as P,
/// and neither is `(0, 0)`. Restricted to naturals this gives `|x−y| = 1`,
/// which differs from the finite-game P-set on equal pairs; the closure
/// checker reports the resulting gap rather than papering over it.
pub fn transfinite_yama_p(a: &Ordinal, b: &Ordinal) -> bool {
    a.successor() == *b || b.successor() == *a
}

/// Transfinite Triangular P-test: the same near-diagonal as Yama.
pub fn transfinite_triangular_p(a: &Ordinal, b: &Ordinal) -> bool {
    transfinite_yama_p(a, b)
}

pub fn transfinite_p(family: TransfiniteFamily, a: &Ordinal, b: &Ordinal) -> bool {
    match family {
        TransfiniteFamily::Wythoff => transfinite_wythoff_p(a, b),
        TransfiniteFamily::Yama => transfinite_yama_p(a, b),
        TransfiniteFamily::Triangular => transfinite_triangular_p(a, b),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureFailure {
    /// A move connects two claimed P-positions.
    PToP {
        from: (Ordinal, Ordinal),
        to: (Ordinal, Ordinal),
    },
    /// An interior non-P position has no move to a claimed P-position
    /// inside the universe.
    NoWinningMove { from: (Ordinal, Ordinal) },
}

impl fmt::Display for ClosureFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosureFailure::PToP { from, to } => write!(
                f,
                "P-to-P move ({}, {}) -> ({}, {})",
                from.0, from.1, to.0, to.1
            ),
            ClosureFailure::NoWinningMove { from } => {
                write!(f, "no winning move from ({}, {})", from.0, from.1)
            }
        }
    }
}

/// Result of verifying the P-set closure conditions over a universe.
#[derive(Debug, Clone)]
pub struct ClosureReport {
    pub family: TransfiniteFamily,
    pub pairs_checked: u64,
    pub p_count: u64,
    pub failures: u64,
    pub first_failure: Option<ClosureFailure>,
    /// Non-P pairs skipped by the winning-move check because a coordinate
    /// is within `margin` of the coefficient cap.
    pub boundary_excluded: u64,
}

/// Checks the family's claimed P-set over `universe`:
///
/// 1. no legal move connects two P-pairs (checked exhaustively), and
/// 2. every non-P pair in the universe interior has a legal move to a
///    P-pair.
///
/// Boundary pairs are excluded from check 2 (their winning moves may
/// legitimately overflow the coefficient cap) and counted instead.
pub fn closure_check(family: TransfiniteFamily, universe: &OrdinalUniverse) -> ClosureReport {
    let members: Vec<Ordinal> = universe.iter().collect();
    let p_pairs: Vec<(Ordinal, Ordinal)> = members
        .iter()
        .flat_map(|a| {
            members
                .iter()
                .filter(|b| transfinite_p(family, a, b))
                .map(|b| (a.clone(), b.clone()))
        })
        .collect();
    let mut report = ClosureReport {
        family,
        pairs_checked: 0,
        p_count: p_pairs.len() as u64,
        failures: 0,
        first_failure: None,
        boundary_excluded: 0,
    };
    let fail = |report: &mut ClosureReport, failure: ClosureFailure| {
        report.failures += 1;
        if report.first_failure.is_none() {
            report.first_failure = Some(failure);
        }
    };
    for a in &members {
        for b in &members {
            report.pairs_checked += 1;
            let pos = (a.clone(), b.clone());
            if transfinite_p(family, a, b) {
                for target in &p_pairs {
                    if is_legal_move(family, &pos, target) {
                        fail(
                            &mut report,
                            ClosureFailure::PToP {
                                from: pos.clone(),
                                to: target.clone(),
                            },
                        );
                    }
                }
            } else if universe.is_interior(a) && universe.is_interior(b) {
                if !p_pairs.iter().any(|t| is_legal_move(family, &pos, t)) {
                    fail(&mut report, ClosureFailure::NoWinningMove { from: pos });
                }
            } else {
                report.boundary_excluded += 1;
            }
        }
    }
    report
}
