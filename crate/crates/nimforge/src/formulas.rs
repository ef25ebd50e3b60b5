//! Closed-form Grundy values, P-position tests, and winning-move search.
//!
//! Everything here is an O(1)-ish formula (up to a logarithmic search for
//! sequence membership); the [`crate::verify`] harness compares these
//! against the brute-force solver.

use thiserror::Error;

use crate::game::{Grundy, Position};
use crate::ruleset::RulesetSpec;
use crate::solver::{Region, SolveError};

/// Formulas are validated for coordinates below 2³¹; beyond that the
/// intermediate arithmetic is not guaranteed overflow-free in every branch.
pub const COORD_LIMIT: u64 = 1 << 31;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("coordinate {0} out of range (formulas accept values < 2^31)")]
    Range(u64),
    #[error("{0}")]
    Parameter(String),
    #[error("no closed form is known for c=0 with g={0}; only g=1 is conjectured")]
    UnsupportedClass(Grundy),
}

fn check_range(vals: &[u64]) -> Result<(), FormulaError> {
    match vals.iter().find(|v| **v >= COORD_LIMIT) {
        Some(v) => Err(FormulaError::Range(*v)),
        None => Ok(()),
    }
}

fn sorted(x: u64, y: u64) -> (u64, u64) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

/// Yama Nim: 0 on the near-diagonal `|x−y| ≤ 1`, else `min(x,y)+1`.
pub fn yama_grundy(x: u64, y: u64) -> Result<Grundy, FormulaError> {
    check_range(&[x, y])?;
    let (u, v) = sorted(x, y);
    Ok(if v - u <= 1 { 0 } else { u + 1 })
}

/// Misère Yama: the player to move wins from exactly the positions outside
/// `{one heap empty, the other ≥ 2}`.
pub fn yama_misere_p(x: u64, y: u64) -> bool {
    let (u, v) = sorted(x, y);
    u == 0 && v >= 2
}

/// Triangular Nim, piecewise form: 0 on `|x−y| ≤ 1`; for `d = |x−y| ≥ 2`,
/// the value is `x+y−1` while `x+y ≤ d²+1`, and past that point it drops to
/// `d(d−1)/2 + k` where `x+y−(d²+2) ≡ 2k (mod 2d)` with `0 ≤ k < d`.
pub fn triangular_grundy(x: u64, y: u64) -> Result<Grundy, FormulaError> {
    check_range(&[x, y])?;
    let (u, v) = sorted(x, y);
    let d = v - u;
    if d <= 1 {
        return Ok(0);
    }
    let s = u + v;
    if s <= d * d + 1 {
        return Ok(s - 1);
    }
    let k = ((s - (d * d + 2)) % (2 * d)) / 2;
    Ok(d * (d - 1) / 2 + k)
}

/// Triangular Nim, arithmetic-progression form: 0 on the diagonal; the
/// Grundy value is `g` exactly when `{x,y}` are consecutive terms of the
/// progression `a_{g,k} = 1 + g + k·d` (with `d` the unique integer such
/// that `d(d−1)/2 ≤ g < d(d+1)/2`), and `x+y−1` otherwise.
pub fn triangular_grundy_progression(x: u64, y: u64) -> Result<Grundy, FormulaError> {
    check_range(&[x, y])?;
    if x == y {
        return Ok(0);
    }
    let (u, v) = sorted(x, y);
    let d = v - u;
    let g0 = d * (d - 1) / 2;
    let r = (u as i128 - 1 - g0 as i128).rem_euclid(d as i128) as u64;
    let g = g0 + r;
    if u >= 1 + g {
        Ok(g)
    } else {
        Ok(u + v - 1)
    }
}

/// Misère Triangular: near-diagonal positions with both heaps ≥ 2, plus
/// (0,2) and (2,0).
pub fn triangular_misere_p(x: u64, y: u64) -> bool {
    let (u, v) = sorted(x, y);
    (u >= 2 && v - u <= 1) || (u, v) == (0, 2)
}

/// (a,b)-families: P exactly when both heaps lie in a common window
/// `[k(a−b), k(a−b)+a)`. Proven for the Triangular form with any `b < a`,
/// and for the Yama form with `0 ≤ b < a`.
pub fn ab_p_position(a: u64, b: i64, x: u64, y: u64) -> Result<bool, FormulaError> {
    if a < 1 || b >= a as i64 {
        return Err(FormulaError::Parameter(format!(
            "need a ≥ 1 and b < a, got a={a}, b={b}"
        )));
    }
    check_range(&[x, y])?;
    let span = (a as i64 - b) as u64;
    let base = x.min(y) / span;
    for k in [base.saturating_sub(1), base] {
        let lo = k * span;
        let hi = lo + a;
        if lo <= x && x < hi && lo <= y && y < hi {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Yama-Wythoff twist: P-positions are the three trivial positions plus
/// `{min = 1, max ≥ 3+c}`.
pub fn yama_wythoff_p(c: u64, x: u64, y: u64) -> bool {
    let (u, v) = sorted(x, y);
    matches!((u, v), (0, 0) | (0, 1)) || (u == 1 && v >= 3 + c)
}

/// Misère Yama-Wythoff. For c = 0 the P-positions are
/// `{(0,2),(1,1),(2,3)}`-type sporadic pairs plus `{min = 3, max ≥ 6}`;
/// for c ≥ 1 they are `{(0,2),(1,1)}`-type pairs plus
/// `{min = 2, max ≥ 5+c}`.
pub fn yama_wythoff_misere_p(c: u64, x: u64, y: u64) -> bool {
    let (u, v) = sorted(x, y);
    if (u, v) == (0, 2) || (u, v) == (1, 1) {
        return true;
    }
    if c == 0 {
        (u, v) == (2, 3) || (u == 3 && v >= 6)
    } else {
        u == 2 && v >= 5 + c
    }
}

/// k-th polygonal number of order `c+2`: `((1+c)k² + (1−c)k) / 2`.
/// (c = 0 gives triangular numbers, 1 squares, 2 pentagonal, ….)
pub fn polygonal(c: u64, k: u64) -> u64 {
    let (c, k) = (c as u128, k as u128);
    (((1 + c) * k * k + k) as i128 - (c * k) as i128) as u64 / 2
}

fn polygonal_index(c: u64, value: u64) -> Option<u64> {
    let (mut lo, mut hi) = (0u64, 1u64 << 17);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if polygonal(c, mid) < value {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    (polygonal(c, lo) == value).then_some(lo)
}

/// Triangular-Wythoff twist: P-positions are (0,0) and pairs of consecutive
/// polygonal numbers of order `c+2`.
pub fn triangular_wythoff_p(c: u64, x: u64, y: u64) -> bool {
    let (u, v) = sorted(x, y);
    if (u, v) == (0, 0) {
        return true;
    }
    match polygonal_index(c, u) {
        Some(k) => v == polygonal(c, k + 1),
        None => false,
    }
}

/// Geometric twist: for d = 2 the P-positions are
/// `{(0,0),(0,1),(1,1)}` plus consecutive powers `(2^k, 2^{k+1})`; for
/// d > 2 they are `{(0,0),(0,1)}` plus `(d^k, d^{k+1})`.
pub fn geometric_p(d: u64, x: u64, y: u64) -> Result<bool, FormulaError> {
    if d < 2 {
        return Err(FormulaError::Parameter(format!("need d ≥ 2, got d={d}")));
    }
    check_range(&[x, y])?;
    let (u, v) = sorted(x, y);
    if u == 0 {
        return Ok(v <= 1);
    }
    if (u, v) == (1, 1) {
        return Ok(d == 2);
    }
    Ok(is_power_of(u, d) && v == u * d)
}

/// Sub-geometric twist: P-positions are `{(0,0),(0,1)}` plus consecutive
/// terms of `a_{k+1} = d·a_k + 1` starting from `a_1 = 1` (for d = 2 these
/// are the Mersenne numbers).
pub fn subgeometric_p(d: u64, x: u64, y: u64) -> Result<bool, FormulaError> {
    if d < 2 {
        return Err(FormulaError::Parameter(format!("need d ≥ 2, got d={d}")));
    }
    check_range(&[x, y])?;
    let (u, v) = sorted(x, y);
    if u == 0 {
        return Ok(v <= 1);
    }
    let mut a = 1u64;
    while a < u {
        a = a * d + 1;
    }
    Ok(a == u && v == u * d + 1)
}

fn is_power_of(mut n: u64, d: u64) -> bool {
    while n % d == 0 {
        n /= d;
    }
    n == 1
}

/// Three-heap P-position families, stated on the sorted triple
/// `x ≤ y ≤ z`.
pub fn three_heap_p(variant: u8, x: u64, y: u64, z: u64) -> Result<bool, FormulaError> {
    if !(1..=6).contains(&variant) {
        return Err(FormulaError::Parameter(format!(
            "three-heap variant must be 1..=6, got {variant}"
        )));
    }
    check_range(&[x, y, z])?;
    let mut h = [x, y, z];
    h.sort_unstable();
    let [a, b, c] = h;
    Ok(match variant {
        1 => (a, b, c) == (0, 0, 1) || (a == 0 && b == c) || (a == b && b == c) || (a == b && c == 2 * a),
        2 => c <= 2 || (a == 0 && c <= b + 1) || (a == 1 && b == c && b >= 1),
        3 => c <= 1 || (a, b, c) == (1, 1, 2) || (a == 0 && b == c),
        4 => a == 0 && b == 0,
        5 => {
            c <= 1
                || (a == 0 && b == 0)
                || (a == 1 && b == c && b >= 1)
                || (a, b, c) == (1, 1, 2)
                || (a == b && a >= 1 && c == 2 * a - 1)
        }
        6 => c <= 2 || (a, b, c) == (2, 2, 3) || (a == 0 && b == 0) || (a == 1 && b == c && b >= 1),
        _ => unreachable!(),
    })
}

/// Classic Wythoff: `(u,v)` sorted with `k = v−u` is P exactly when
/// `u = ⌊k·φ⌋`, tested in integers as `u = (k + ⌊√(5k²)⌋) / 2`.
pub fn classic_wythoff_p(x: u64, y: u64) -> bool {
    let (u, v) = sorted(x, y);
    let k = (v - u) as u128;
    u as u128 == (k + (5 * k * k).isqrt()) / 2
}

/// k-th term of the conjectured Grundy-g diagonal sequence for the
/// Triangular-Wythoff twist of order `c`. For c = 0 only the g = 1
/// sequence `(k² + k + 1 − (−1)^k)/2` is conjectured; for c ≥ 1 the
/// sequence is `((1+c)k² + (1+2g−c)k)/2`.
pub fn conjectured_wythoff_grundy_seq(c: u64, g: Grundy, k: u64) -> Result<u64, FormulaError> {
    if c == 0 {
        if g != 1 {
            return Err(FormulaError::UnsupportedClass(g));
        }
        let k = k as u128;
        let sign: i128 = if k % 2 == 0 { 1 } else { -1 };
        return Ok(((k * k + k + 1) as i128 - sign) as u64 / 2);
    }
    let (c, g, k) = (c as u128, g as u128, k as u128);
    Ok((((1 + c) * k * k + (1 + 2 * g) * k - c * k) / 2) as u64)
}

/// Membership in the conjectured Grundy-g class for the Triangular-Wythoff
/// twist of order `c`: the anti-diagonal `x+y−1 = g` together with pairs of
/// consecutive terms of the conjectured sequence.
pub fn conjectured_wythoff_class_contains(
    c: u64,
    g: Grundy,
    x: u64,
    y: u64,
) -> Result<bool, FormulaError> {
    if x + y == g + 1 {
        return Ok(true);
    }
    let (u, v) = sorted(x, y);
    let mut k = 0;
    loop {
        let a = conjectured_wythoff_grundy_seq(c, g, k)?;
        if a > u {
            return Ok(false);
        }
        if a == u {
            return Ok(v == conjectured_wythoff_grundy_seq(c, g, k + 1)?);
        }
        k += 1;
    }
}

/// Closed-form normal-play P-test for any ruleset that has one.
pub fn formula_p(spec: &RulesetSpec, pos: &Position) -> Result<bool, FormulaError> {
    match (spec, pos) {
        (RulesetSpec::Yama, Position::Pair(p)) => Ok(yama_grundy(p.x, p.y)? == 0),
        (RulesetSpec::Triangular, Position::Pair(p)) => Ok(triangular_grundy(p.x, p.y)? == 0),
        (RulesetSpec::AbYama { a, b }, Position::Pair(p))
        | (RulesetSpec::AbTriangular { a, b }, Position::Pair(p)) => {
            ab_p_position(*a, *b, p.x, p.y)
        }
        (RulesetSpec::YamaWythoff { c }, Position::Pair(p)) => {
            check_range(&[p.x, p.y])?;
            Ok(yama_wythoff_p(*c, p.x, p.y))
        }
        (RulesetSpec::TriangularWythoff { c }, Position::Pair(p)) => {
            check_range(&[p.x, p.y])?;
            Ok(triangular_wythoff_p(*c, p.x, p.y))
        }
        (RulesetSpec::GeometricTwist { d }, Position::Pair(p)) => geometric_p(*d, p.x, p.y),
        (RulesetSpec::SubGeometricTwist { d }, Position::Pair(p)) => subgeometric_p(*d, p.x, p.y),
        (RulesetSpec::ThreeHeap { variant }, Position::Triple(t)) => {
            three_heap_p(*variant, t.x, t.y, t.z)
        }
        (RulesetSpec::ClassicWythoff, Position::Pair(p)) => {
            check_range(&[p.x, p.y])?;
            Ok(classic_wythoff_p(p.x, p.y))
        }
        _ => Err(FormulaError::Parameter(format!(
            "position {pos} has the wrong arity for {spec}"
        ))),
    }
}

/// Closed-form Grundy value, for the rulesets where one is known
/// (Yama and Triangular).
pub fn formula_grundy(spec: &RulesetSpec, pos: &Position) -> Option<Result<Grundy, FormulaError>> {
    match (spec, pos) {
        (RulesetSpec::Yama, Position::Pair(p)) => Some(yama_grundy(p.x, p.y)),
        (RulesetSpec::Triangular, Position::Pair(p)) => Some(triangular_grundy(p.x, p.y)),
        _ => None,
    }
}

/// Closed-form misère P-test, for the rulesets where one is known.
pub fn formula_misere_p(spec: &RulesetSpec, pos: &Position) -> Option<bool> {
    match (spec, pos) {
        (RulesetSpec::Yama, Position::Pair(p)) => Some(yama_misere_p(p.x, p.y)),
        (RulesetSpec::Triangular, Position::Pair(p)) => Some(triangular_misere_p(p.x, p.y)),
        (RulesetSpec::YamaWythoff { c }, Position::Pair(p)) => {
            Some(yama_wythoff_misere_p(*c, p.x, p.y))
        }
        _ => None,
    }
}

/// A normal-play winning move from `pos`, if one exists: the first
/// Grundy-0 option in (total, lexicographic) order. Returns `None` from
/// P-positions.
pub fn winning_move(
    spec: &RulesetSpec,
    pos: &Position,
) -> Result<Option<Position>, SolveError> {
    let region = Region::solve(spec, pos.total())?;
    if region.grundy_at(pos) == Some(0) {
        return Ok(None);
    }
    Ok(spec
        .options(pos)
        .into_iter()
        .find(|o| region.grundy_at(o) == Some(0)))
}
