//! Positions, outcomes, phase labels, and the mex primitive.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Grundy values are plain numbers; `u64` leaves headroom for the additive
/// variants whose values grow linearly with the heap total.
pub type Grundy = u64;

/// Two ordered heaps. Order matters for move generation even when a ruleset
/// happens to be symmetric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeapPair {
    pub x: u64,
    pub y: u64,
}

impl HeapPair {
    pub fn new(x: u64, y: u64) -> Self {
        HeapPair { x, y }
    }

    pub fn total(&self) -> u64 {
        self.x + self.y
    }

    /// `(min, max)`.
    pub fn sorted(&self) -> (u64, u64) {
        if self.x <= self.y {
            (self.x, self.y)
        } else {
            (self.y, self.x)
        }
    }
}

/// Three ordered heaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeapTriple {
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl HeapTriple {
    pub fn new(x: u64, y: u64, z: u64) -> Self {
        HeapTriple { x, y, z }
    }

    pub fn total(&self) -> u64 {
        self.x + self.y + self.z
    }

    /// Components in ascending order.
    pub fn sorted(&self) -> (u64, u64, u64) {
        let mut v = [self.x, self.y, self.z];
        v.sort_unstable();
        (v[0], v[1], v[2])
    }
}

/// A game position: two heaps or three.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Position {
    Pair(HeapPair),
    Triple(HeapTriple),
}

impl Position {
    pub fn pair(x: u64, y: u64) -> Self {
        Position::Pair(HeapPair::new(x, y))
    }

    pub fn triple(x: u64, y: u64, z: u64) -> Self {
        Position::Triple(HeapTriple::new(x, y, z))
    }

    pub fn total(&self) -> u64 {
        match self {
            Position::Pair(p) => p.total(),
            Position::Triple(t) => t.total(),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Position::Pair(_) => 2,
            Position::Triple(_) => 3,
        }
    }

    pub fn as_pair(&self) -> Option<HeapPair> {
        match self {
            Position::Pair(p) => Some(*p),
            Position::Triple(_) => None,
        }
    }

    pub fn as_triple(&self) -> Option<HeapTriple> {
        match self {
            Position::Triple(t) => Some(*t),
            Position::Pair(_) => None,
        }
    }

    pub fn coords(&self) -> Vec<u64> {
        match self {
            Position::Pair(p) => vec![p.x, p.y],
            Position::Triple(t) => vec![t.x, t.y, t.z],
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Position::Pair(p) => write!(f, "{},{}", p.x, p.y),
            Position::Triple(t) => write!(f, "{},{},{}", t.x, t.y, t.z),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParsePositionError {
    #[error("position must have 2 or 3 comma-separated heaps, got {0}")]
    WrongArity(usize),
    #[error("invalid heap size {0:?}")]
    BadNumber(String),
}

impl FromStr for Position {
    type Err = ParsePositionError;

    /// Accepts `"x,y"` or `"x,y,z"`; whitespace around each number is fine.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 2 && parts.len() != 3 {
            return Err(ParsePositionError::WrongArity(parts.len()));
        }
        let mut nums = [0u64; 3];
        for (i, part) in parts.iter().enumerate() {
            let trimmed = part.trim();
            nums[i] = trimmed
                .parse()
                .map_err(|_| ParsePositionError::BadNumber(trimmed.to_string()))?;
        }
        Ok(match parts.len() {
            2 => Position::pair(nums[0], nums[1]),
            _ => Position::triple(nums[0], nums[1], nums[2]),
        })
    }
}

/// Normal-play (or misère-play) outcome: `P` means the player to move loses
/// with optimal play, `N` means they win.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    P,
    N,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::P => f.write_str("P"),
            Outcome::N => f.write_str("N"),
        }
    }
}

/// Phase label from the misère analysis. `Final` positions behave like late
/// endgame (the Grundy-0/1 pattern flips); `Normal` positions still behave as
/// in normal play. Only Grundy values 0 and 1 can be `Final`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Final,
    Normal,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::Final => f.write_str("final"),
            Phase::Normal => f.write_str("normal"),
        }
    }
}

/// Minimum excludant: least natural number absent from `values`.
pub fn mex(values: &[Grundy]) -> Grundy {
    // Only values < len can influence the answer.
    let n = values.len();
    let mut seen = vec![false; n];
    for &v in values {
        if (v as usize) < n {
            seen[v as usize] = true;
        }
    }
    seen.iter().position(|&s| !s).unwrap_or(n) as Grundy
}
