//! Misère analysis via Yamasaki phases: solve the normal game, classify
//! final/normal phases, read the misère P-set off {g=0, normal} ∪ {g=1,
//! final}, and cross-check against direct misère induction.
//!
//!     cargo run --example misere_analysis

use nimforge::verify::misere_cross_check;
use nimforge::{Region, RulesetSpec};

fn main() {
    let t = 50;
    for spec in [
        RulesetSpec::Yama,
        RulesetSpec::Triangular,
        RulesetSpec::YamaWythoff { c: 3 },
        RulesetSpec::geometric(2).unwrap(),
    ] {
        let region = Region::solve_full(&spec, t).expect("region fits the default cap");
        let report = region.misere_p_via_phase();
        let adm = region.check_admissible();
        println!("{spec}:");
        let shown: Vec<String> = report
            .p_positions
            .iter()
            .take(10)
            .map(|p| format!("({p})"))
            .collect();
        println!(
            "  misere P ({} total): {}{}",
            report.p_positions.len(),
            shown.join(" "),
            if report.p_positions.len() > 10 { " ..." } else { "" }
        );
        println!(
            "  admissible: {}; universally admissible: {}",
            adm.admissible, adm.universally
        );
        if !adm.universally {
            if let Some(w) = adm.universality_witnesses.first() {
                println!("  universality counterexample: {w}");
            }
        }
        println!("  cross-check: {}", misere_cross_check(&spec, t).unwrap());
        println!();
    }
}
