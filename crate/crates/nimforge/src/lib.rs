//! Grundy values, misère phases, and closed-form P-position tests for a
//! family of two- and three-heap Nim variants built around one move shape:
//! take tokens from one heap and put some back on another, with the legal
//! (take, give) combinations varying by ruleset.
//!
//! The toolkit has three layers that check each other:
//!
//! * [`solver`] — brute-force level DP over sum-bounded regions, the
//!   oracle everything else is measured against. Also computes Yamasaki
//!   final/normal phases (misère outcomes for admissible rulesets) and
//!   solves disjunctive sums directly.
//! * [`formulas`] — closed forms: Grundy formulas for the near-diagonal
//!   families, P-set descriptions for the Wythoff-style and geometric
//!   families, misère P-sets, Beatty-sequence tests.
//! * [`verify`] — harness that sweeps formulas against the oracle,
//!   certifies Grundy partitions without computing a single mex, and
//!   scans conjectured class descriptions for their first failure.
//!
//! [`ordinal`] and [`transfinite`] extend the P-position descriptions to
//! heaps of transfinite ordinal size in Cantor normal form, checked by
//! closure conditions over bounded ordinal universes.
//!
//! ```
//! use nimforge::{Position, Region, RulesetSpec};
//! use nimforge::formulas::yama_grundy;
//!
//! let region = Region::solve(&RulesetSpec::Yama, 20).unwrap();
//! assert_eq!(region.grundy_at(&Position::pair(4, 2)), Some(3));
//! assert_eq!(yama_grundy(4, 2), Ok(3));
//! assert_eq!(region.grundy_at(&Position::pair(3, 4)), Some(0));
//! ```

pub mod cli;
pub mod game;
pub mod ordinal;
pub mod ruleset;
pub mod formulas;
pub mod solver;
pub mod transfinite;
pub mod verify;

pub use game::{Grundy, Outcome, Phase, Position};
pub use ruleset::RulesetSpec;
pub use solver::Region;
