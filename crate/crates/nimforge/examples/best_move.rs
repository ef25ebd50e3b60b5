//! Query winning moves: the first Grundy-0 option in (total, lexicographic)
//! order, or "P-position" when none exists.
//!
//!     cargo run --example best_move

use nimforge::formulas::winning_move;
use nimforge::{Position, RulesetSpec};

fn main() {
    let queries = [
        (RulesetSpec::Yama, Position::pair(9, 2)),
        (RulesetSpec::Yama, Position::pair(3, 3)),
        (RulesetSpec::Triangular, Position::pair(7, 10)),
        (RulesetSpec::TriangularWythoff { c: 0 }, Position::pair(5, 5)),
        (RulesetSpec::ClassicWythoff, Position::pair(5, 8)),
        (RulesetSpec::three_heap(4).unwrap(), Position::triple(1, 1, 1)),
    ];
    for (spec, pos) in queries {
        match winning_move(&spec, &pos).expect("region fits the default cap") {
            Some(m) => println!("{spec} ({pos}): move to ({m})"),
            None => println!("{spec} ({pos}): P-position"),
        }
    }
}
