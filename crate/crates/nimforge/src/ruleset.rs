//! Ruleset definitions: move generation for every supported game family.
//!
//! Parameter conventions:
//!
//! * Yama Nim: take `i ≥ 2` from one heap, return exactly 1 to the other.
//! * Triangular Nim: take `i ≥ 2`, return `1 ≤ j < i` to the other heap.
//! * `(a,b)` generalizations replace the bounds 2 and 1 by `a` and `b`
//!   (`b` may be negative for the Triangular form; coordinates stay ≥ 0).
//! * Wythoff twists additionally allow removing `i` and `j` from the two
//!   heaps with `|i−j| ≤ c`.
//! * Geometric twists allow removing `(i,j)` with `i ≤ d·j−2 ∧ j ≤ d·i−2`
//!   (sub-geometric: `i ≤ d·j−1 ∧ j ≤ d·i−1`) on top of Triangular moves.
//! * Three-heap variants 1–6 generalize Triangular Nim; variants 5 and 6
//!   treat empty heaps as removed (they cannot receive tokens, and with one
//!   live heap the position is terminal).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::game::Position;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RulesetSpec {
    Yama,
    Triangular,
    AbYama { a: u64, b: i64 },
    AbTriangular { a: u64, b: i64 },
    YamaWythoff { c: u64 },
    TriangularWythoff { c: u64 },
    GeometricTwist { d: u64 },
    SubGeometricTwist { d: u64 },
    ThreeHeap { variant: u8 },
    ClassicWythoff,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RulesetError {
    #[error("unknown ruleset {0:?}")]
    Unknown(String),
    #[error("bad parameter list {0:?} for ruleset {1}")]
    BadParams(String, &'static str),
    #[error("ab rulesets need a ≥ 1 and b < a, got a={a}, b={b}")]
    BadAb { a: u64, b: i64 },
    #[error("geometric twists need d ≥ 2, got d={0}")]
    BadGeometric(u64),
    #[error("three-heap variant must be 1..=6, got {0}")]
    BadVariant(u8),
}

impl RulesetSpec {
    pub fn ab_yama(a: u64, b: i64) -> Result<Self, RulesetError> {
        if a < 1 || b >= a as i64 {
            return Err(RulesetError::BadAb { a, b });
        }
        Ok(RulesetSpec::AbYama { a, b })
    }

    pub fn ab_triangular(a: u64, b: i64) -> Result<Self, RulesetError> {
        if a < 1 || b >= a as i64 {
            return Err(RulesetError::BadAb { a, b });
        }
        Ok(RulesetSpec::AbTriangular { a, b })
    }

    pub fn geometric(d: u64) -> Result<Self, RulesetError> {
        if d < 2 {
            return Err(RulesetError::BadGeometric(d));
        }
        Ok(RulesetSpec::GeometricTwist { d })
    }

    pub fn sub_geometric(d: u64) -> Result<Self, RulesetError> {
        if d < 2 {
            return Err(RulesetError::BadGeometric(d));
        }
        Ok(RulesetSpec::SubGeometricTwist { d })
    }

    pub fn three_heap(variant: u8) -> Result<Self, RulesetError> {
        if !(1..=6).contains(&variant) {
            return Err(RulesetError::BadVariant(variant));
        }
        Ok(RulesetSpec::ThreeHeap { variant })
    }

    /// 2 for pair games, 3 for the three-heap variants.
    pub fn arity(&self) -> usize {
        match self {
            RulesetSpec::ThreeHeap { .. } => 3,
            _ => 2,
        }
    }

    /// The ab-Yama theorem covers b ≥ 0 only; negative b is playable but its
    /// P-position formula is unproven, and reports flag it.
    pub fn outside_proven_theorem(&self) -> bool {
        matches!(self, RulesetSpec::AbYama { b, .. } if *b < 0)
    }

    /// Visits every option of `pos`. Options may repeat when distinct
    /// `(i, j)` choices produce the same position; callers that need sets
    /// should deduplicate (the solver's mex does not care).
    pub fn for_each_option<F: FnMut(Position)>(&self, pos: &Position, mut f: F) {
        match (self, pos) {
            (RulesetSpec::Yama, Position::Pair(p)) => {
                yama_like(p.x, p.y, 2, 1, |a, b| f(Position::pair(a, b)));
                yama_like(p.y, p.x, 2, 1, |a, b| f(Position::pair(b, a)));
            }
            (RulesetSpec::Triangular, Position::Pair(p)) => {
                triangular_like(p.x, p.y, 2, 1, |a, b| f(Position::pair(a, b)));
                triangular_like(p.y, p.x, 2, 1, |a, b| f(Position::pair(b, a)));
            }
            (RulesetSpec::AbYama { a, b }, Position::Pair(p)) => {
                yama_like(p.x, p.y, *a, *b, |u, v| f(Position::pair(u, v)));
                yama_like(p.y, p.x, *a, *b, |u, v| f(Position::pair(v, u)));
            }
            (RulesetSpec::AbTriangular { a, b }, Position::Pair(p)) => {
                triangular_like(p.x, p.y, *a, *b, |u, v| f(Position::pair(u, v)));
                triangular_like(p.y, p.x, *a, *b, |u, v| f(Position::pair(v, u)));
            }
            (RulesetSpec::YamaWythoff { c }, Position::Pair(p)) => {
                yama_like(p.x, p.y, 2, 1, |a, b| f(Position::pair(a, b)));
                yama_like(p.y, p.x, 2, 1, |a, b| f(Position::pair(b, a)));
                wythoff_band(p.x, p.y, *c, &mut f);
            }
            (RulesetSpec::TriangularWythoff { c }, Position::Pair(p)) => {
                triangular_like(p.x, p.y, 2, 1, |a, b| f(Position::pair(a, b)));
                triangular_like(p.y, p.x, 2, 1, |a, b| f(Position::pair(b, a)));
                wythoff_band(p.x, p.y, *c, &mut f);
            }
            (RulesetSpec::GeometricTwist { d }, Position::Pair(p)) => {
                triangular_like(p.x, p.y, 2, 1, |a, b| f(Position::pair(a, b)));
                triangular_like(p.y, p.x, 2, 1, |a, b| f(Position::pair(b, a)));
                geometric_band(p.x, p.y, *d, 2, &mut f);
            }
            (RulesetSpec::SubGeometricTwist { d }, Position::Pair(p)) => {
                triangular_like(p.x, p.y, 2, 1, |a, b| f(Position::pair(a, b)));
                triangular_like(p.y, p.x, 2, 1, |a, b| f(Position::pair(b, a)));
                geometric_band(p.x, p.y, *d, 1, &mut f);
            }
            (RulesetSpec::ClassicWythoff, Position::Pair(p)) => {
                for i in 1..=p.x {
                    f(Position::pair(p.x - i, p.y));
                }
                for j in 1..=p.y {
                    f(Position::pair(p.x, p.y - j));
                }
                for i in 1..=p.x.min(p.y) {
                    f(Position::pair(p.x - i, p.y - i));
                }
            }
            (RulesetSpec::ThreeHeap { variant }, Position::Triple(t)) => {
                three_heap_options(*variant, [t.x, t.y, t.z], &mut f);
            }
            (spec, pos) => panic!("ruleset {spec} cannot play a {}-heap position", pos.arity()),
        }
    }

    pub fn options(&self, pos: &Position) -> Vec<Position> {
        let mut out = Vec::new();
        self.for_each_option(pos, |o| out.push(o));
        out.sort_unstable_by_key(|o| (o.total(), *o));
        out.dedup();
        out
    }

    /// Direct legality test, implemented by delta inspection rather than by
    /// enumerating options.
    pub fn is_legal_move(&self, from: &Position, to: &Position) -> bool {
        if from.arity() != to.arity() {
            return false;
        }
        match self {
            RulesetSpec::Yama => pair_legal(from, to, |x, y, u, v| {
                (v == y + 1 && u + 2 <= x) || (u == x + 1 && v + 2 <= y)
            }),
            RulesetSpec::Triangular => pair_legal(from, to, |x, y, u, v| {
                (u < x && v > y && u + v < x + y) || (u > x && v < y && u + v < x + y)
            }),
            RulesetSpec::AbYama { a, b } => pair_legal(from, to, |x, y, u, v| {
                let give = |new: u64, old: u64| new as i64 - old as i64 == *b;
                (give(v, y) && u + a <= x) || (give(u, x) && v + a <= y)
            }),
            RulesetSpec::AbTriangular { a, b } => pair_legal(from, to, |x, y, u, v| {
                let ok = |take_old: u64, take_new: u64, give_old: u64, give_new: u64| {
                    take_new + a <= take_old && {
                        let j = give_new as i64 - give_old as i64;
                        let i = (take_old - take_new) as i64;
                        *b <= j && j < i
                    }
                };
                ok(x, u, y, v) || ok(y, v, x, u)
            }),
            RulesetSpec::YamaWythoff { c } => pair_legal(from, to, |x, y, u, v| {
                let yama = (v == y + 1 && u + 2 <= x) || (u == x + 1 && v + 2 <= y);
                yama || wythoff_band_legal(x, y, u, v, *c)
            }),
            RulesetSpec::TriangularWythoff { c } => pair_legal(from, to, |x, y, u, v| {
                let tri = (u < x && v > y || u > x && v < y) && u + v < x + y;
                tri || wythoff_band_legal(x, y, u, v, *c)
            }),
            RulesetSpec::GeometricTwist { d } => pair_legal(from, to, |x, y, u, v| {
                let tri = (u < x && v > y || u > x && v < y) && u + v < x + y;
                tri || geometric_band_legal(x, y, u, v, *d, 2)
            }),
            RulesetSpec::SubGeometricTwist { d } => pair_legal(from, to, |x, y, u, v| {
                let tri = (u < x && v > y || u > x && v < y) && u + v < x + y;
                tri || geometric_band_legal(x, y, u, v, *d, 1)
            }),
            RulesetSpec::ClassicWythoff => pair_legal(from, to, |x, y, u, v| {
                (u < x && v == y) || (u == x && v < y) || (u < x && v < y && x - u == y - v)
            }),
            RulesetSpec::ThreeHeap { .. } => self
                .options(from)
                .binary_search_by_key(&(to.total(), *to), |o| (o.total(), *o))
                .is_ok(),
        }
    }
}

/// Take `a ≤ i ≤ take`, return exactly `b` to the other heap (`b` may be
/// negative). Calls `f(new_take_heap, new_give_heap)`.
fn yama_like<F: FnMut(u64, u64)>(take: u64, give: u64, a: u64, b: i64, mut f: F) {
    let new_give = give as i64 + b;
    if new_give < 0 {
        return;
    }
    let new_give = new_give as u64;
    let mut i = a;
    while i <= take {
        f(take - i, new_give);
        i += 1;
    }
}

/// Take `a ≤ i ≤ take`, return `b ≤ j < i` to the other heap. Calls
/// `f(new_take_heap, new_give_heap)`.
fn triangular_like<F: FnMut(u64, u64)>(take: u64, give: u64, a: u64, b: i64, mut f: F) {
    for i in a..=take {
        let mut j = b;
        while j < i as i64 {
            let new_give = give as i64 + j;
            if new_give >= 0 {
                f(take - i, new_give as u64);
            }
            j += 1;
        }
    }
}

/// Wythoff-style removals from both heaps with |i−j| ≤ c.
fn wythoff_band<F: FnMut(Position)>(x: u64, y: u64, c: u64, f: &mut F) {
    for i in 1..=x {
        let lo = if i > c { i - c } else { 1 };
        let hi = (i + c).min(y);
        for j in lo..=hi {
            f(Position::pair(x - i, y - j));
        }
    }
}

fn wythoff_band_legal(x: u64, y: u64, u: u64, v: u64, c: u64) -> bool {
    u < x && v < y && (x - u).abs_diff(y - v) <= c
}

/// Two-heap removals with i ≤ d·j − slack and j ≤ d·i − slack
/// (slack 2 = geometric, slack 1 = sub-geometric).
fn geometric_band<F: FnMut(Position)>(x: u64, y: u64, d: u64, slack: u64, f: &mut F) {
    for i in 1..=x {
        // j ≥ ceil((i + slack) / d) from i ≤ d·j − slack.
        let lo = (i + slack).div_ceil(d).max(1);
        let hi = (d * i - slack).min(y);
        for j in lo..=hi {
            f(Position::pair(x - i, y - j));
        }
    }
}

fn geometric_band_legal(x: u64, y: u64, u: u64, v: u64, d: u64, slack: u64) -> bool {
    if u >= x || v >= y {
        return false;
    }
    let (i, j) = (x - u, y - v);
    i + slack <= d * j && j + slack <= d * i
}

fn pair_legal(
    from: &Position,
    to: &Position,
    rule: impl Fn(u64, u64, u64, u64) -> bool,
) -> bool {
    match (from, to) {
        (Position::Pair(p), Position::Pair(q)) => rule(p.x, p.y, q.x, q.y),
        _ => false,
    }
}

fn three_heap_options<F: FnMut(Position)>(variant: u8, h: [u64; 3], f: &mut F) {
    let emit = |h: [u64; 3], f: &mut F| f(Position::triple(h[0], h[1], h[2]));
    match variant {
        // Take i ≥ 2 from one heap, return 1 ≤ j < i to one other heap.
        // Variant 5 is the same but a return target must be nonempty.
        1 | 5 => {
            for src in 0..3 {
                for dst in 0..3 {
                    if dst == src || (variant == 5 && h[dst] == 0) {
                        continue;
                    }
                    for i in 2..=h[src] {
                        for j in 1..i {
                            let mut n = h;
                            n[src] -= i;
                            n[dst] += j;
                            emit(n, f);
                        }
                    }
                }
            }
        }
        // Take i ≥ 2 from one heap, return ≥ 1 to each of the other two,
        // total returned < i. Variant 6 requires live targets; with exactly
        // one live target the whole return goes to it.
        2 | 6 => {
            for src in 0..3 {
                let (o1, o2) = others(src);
                if variant == 6 && (h[o1] == 0 || h[o2] == 0) {
                    let dst = if h[o1] > 0 {
                        o1
                    } else if h[o2] > 0 {
                        o2
                    } else {
                        continue;
                    };
                    for i in 2..=h[src] {
                        for j in 1..i {
                            let mut n = h;
                            n[src] -= i;
                            n[dst] += j;
                            emit(n, f);
                        }
                    }
                    continue;
                }
                for i in 2..=h[src] {
                    for j1 in 1..i {
                        for j2 in 1..i - j1 {
                            let mut n = h;
                            n[src] -= i;
                            n[o1] += j1;
                            n[o2] += j2;
                            emit(n, f);
                        }
                    }
                }
            }
        }
        // Take i ≥ 2 from one heap, return j1, j2 ≥ 0 with 1 ≤ j1+j2 < i.
        3 => {
            for src in 0..3 {
                let (o1, o2) = others(src);
                for i in 2..=h[src] {
                    for j1 in 0..i {
                        for j2 in (if j1 == 0 { 1 } else { 0 })..i - j1 {
                            let mut n = h;
                            n[src] -= i;
                            n[o1] += j1;
                            n[o2] += j2;
                            emit(n, f);
                        }
                    }
                }
            }
        }
        // Take i1, i2 ≥ 1 from two heaps, return 1 ≤ k < i1+i2 to the third.
        4 => {
            for s1 in 0..3 {
                for s2 in s1 + 1..3 {
                    let dst = 3 - s1 - s2;
                    for i1 in 1..=h[s1] {
                        for i2 in 1..=h[s2] {
                            for k in 1..i1 + i2 {
                                let mut n = h;
                                n[s1] -= i1;
                                n[s2] -= i2;
                                n[dst] += k;
                                emit(n, f);
                            }
                        }
                    }
                }
            }
        }
        _ => unreachable!("variant validated at construction"),
    }
}

fn others(src: usize) -> (usize, usize) {
    match src {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

impl fmt::Display for RulesetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RulesetSpec::Yama => f.write_str("yama"),
            RulesetSpec::Triangular => f.write_str("triangular"),
            RulesetSpec::AbYama { a, b } => write!(f, "ab-yama:a={a},b={b}"),
            RulesetSpec::AbTriangular { a, b } => write!(f, "ab-tri:a={a},b={b}"),
            RulesetSpec::YamaWythoff { c } => write!(f, "yama-wythoff:c={c}"),
            RulesetSpec::TriangularWythoff { c } => write!(f, "tri-wythoff:c={c}"),
            RulesetSpec::GeometricTwist { d } => write!(f, "geo:d={d}"),
            RulesetSpec::SubGeometricTwist { d } => write!(f, "subgeo:d={d}"),
            RulesetSpec::ThreeHeap { variant } => write!(f, "three:variant={variant}"),
            RulesetSpec::ClassicWythoff => f.write_str("wythoff"),
        }
    }
}

impl FromStr for RulesetSpec {
    type Err = RulesetError;

    /// Parses the CLI syntax, e.g. `yama`, `ab-yama:a=3,b=1`, `geo:d=2`,
    /// `three:variant=5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, params) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        let parse_params = |keys: &[&str]| -> Result<Vec<i64>, RulesetError> {
            let raw = params.ok_or_else(|| {
                RulesetError::BadParams(String::new(), "missing parameters")
            })?;
            let parts: Vec<&str> = raw.split(',').collect();
            if parts.len() != keys.len() {
                return Err(RulesetError::BadParams(raw.to_string(), "wrong parameter count"));
            }
            let mut vals = Vec::new();
            for (part, key) in parts.iter().zip(keys) {
                let (k, v) = part
                    .split_once('=')
                    .ok_or_else(|| RulesetError::BadParams(raw.to_string(), "expected key=value"))?;
                if k.trim() != *key {
                    return Err(RulesetError::BadParams(raw.to_string(), "unexpected key"));
                }
                vals.push(
                    v.trim()
                        .parse()
                        .map_err(|_| RulesetError::BadParams(raw.to_string(), "bad number"))?,
                );
            }
            Ok(vals)
        };
        let no_params = |spec: RulesetSpec| {
            if params.is_some() {
                Err(RulesetError::BadParams(
                    params.unwrap_or_default().to_string(),
                    "ruleset takes no parameters",
                ))
            } else {
                Ok(spec)
            }
        };
        match name {
            "yama" => no_params(RulesetSpec::Yama),
            "triangular" => no_params(RulesetSpec::Triangular),
            "wythoff" => no_params(RulesetSpec::ClassicWythoff),
            "ab-yama" => {
                let v = parse_params(&["a", "b"])?;
                let a = u64::try_from(v[0])
                    .map_err(|_| RulesetError::BadAb { a: 0, b: v[1] })?;
                RulesetSpec::ab_yama(a, v[1])
            }
            "ab-tri" => {
                let v = parse_params(&["a", "b"])?;
                let a = u64::try_from(v[0])
                    .map_err(|_| RulesetError::BadAb { a: 0, b: v[1] })?;
                RulesetSpec::ab_triangular(a, v[1])
            }
            "yama-wythoff" => {
                let v = parse_params(&["c"])?;
                let c = u64::try_from(v[0])
                    .map_err(|_| RulesetError::BadParams(format!("c={}", v[0]), "c must be ≥ 0"))?;
                Ok(RulesetSpec::YamaWythoff { c })
            }
            "tri-wythoff" => {
                let v = parse_params(&["c"])?;
                let c = u64::try_from(v[0])
                    .map_err(|_| RulesetError::BadParams(format!("c={}", v[0]), "c must be ≥ 0"))?;
                Ok(RulesetSpec::TriangularWythoff { c })
            }
            "geo" => {
                let v = parse_params(&["d"])?;
                RulesetSpec::geometric(u64::try_from(v[0]).unwrap_or(0))
            }
            "subgeo" => {
                let v = parse_params(&["d"])?;
                RulesetSpec::sub_geometric(u64::try_from(v[0]).unwrap_or(0))
            }
            "three" => {
                let v = parse_params(&["variant"])?;
                RulesetSpec::three_heap(u8::try_from(v[0]).unwrap_or(0))
            }
            other => Err(RulesetError::Unknown(other.to_string())),
        }
    }
}
