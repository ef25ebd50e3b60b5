//! Disjunctive sums: the product-game solver recomputes each sum from
//! scratch, and its Grundy values land on the XOR of the components. The
//! phase check shows where misère analysis of sums needs universal
//! admissibility.
//!
//!     cargo run --example disjunctive_sums

use nimforge::solver::{sum_phase_check, CompPos, SumGame, SumPart};
use nimforge::{Position, RulesetSpec};

fn main() {
    let yama = SumPart::Ruleset(RulesetSpec::Yama);
    let tri = SumPart::Ruleset(RulesetSpec::Triangular);

    let mut game = SumGame::new(yama, tri);
    println!("Yama + Triangular sums:");
    for (a, b) in [((4, 2), (2, 5)), ((9, 2), (7, 10)), ((3, 4), (1, 2))] {
        let ca = CompPos::Game(Position::pair(a.0, a.1));
        let cb = CompPos::Game(Position::pair(b.0, b.1));
        let ga = game.component_labels(0, ca).grundy;
        let gb = game.component_labels(1, cb).grundy;
        let sum = game.labels(ca, cb);
        println!(
            "  ({ca}) + ({cb}): g={} = {ga} xor {gb}, misere {}",
            sum.grundy, sum.misere
        );
    }

    println!();
    for (a, b) in [(yama, SumPart::NimHeap), (tri, tri)] {
        let report = sum_phase_check(a, b, 16).expect("region fits the default cap");
        print!(
            "{a} + {b}: {} sum positions checked, flagged: {}",
            report.checked, report.flagged
        );
        match report.first_mismatch {
            Some(m) => println!(", law breaks at ({}) + ({}): {:?}", m.a, m.b, m.kind),
            None => println!(", all composition laws hold"),
        }
    }
}
