//! List P-positions for several rulesets and show the structure each
//! closed form predicts: near-diagonal bands, polygonal-number pairs,
//! powers of d, and Beatty pairs for classic Wythoff.
//!
//!     cargo run --example p_positions

use nimforge::{Region, RulesetSpec};

fn main() {
    let t = 60;
    for spec in [
        RulesetSpec::Yama,
        RulesetSpec::Triangular,
        RulesetSpec::TriangularWythoff { c: 0 },
        RulesetSpec::TriangularWythoff { c: 1 },
        RulesetSpec::geometric(2).unwrap(),
        RulesetSpec::sub_geometric(2).unwrap(),
        RulesetSpec::ClassicWythoff,
    ] {
        let list = Region::solve(&spec, t).expect("region fits the default cap").p_positions();
        let shown: Vec<String> = list.iter().take(12).map(|p| format!("({p})")).collect();
        println!(
            "{spec}: {} P-positions with total <= {t}\n  {}{}",
            list.len(),
            shown.join(" "),
            if list.len() > 12 { " ..." } else { "" }
        );
    }
}
