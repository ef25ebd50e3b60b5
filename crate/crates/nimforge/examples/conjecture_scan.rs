//! Scan conjectured Grundy-class descriptions for the Triangular-Wythoff
//! families against the oracle. The c=1 sequences hold for g ≤ 3 and first
//! break at (5,8) for g=4; c=2 breaks at (27,37).
//!
//!     cargo run --example conjecture_scan

use nimforge::formulas::conjectured_wythoff_grundy_seq;
use nimforge::verify::conjecture_scan;

fn main() {
    println!("conjectured sequence heads (c=1):");
    for g in 1..=4 {
        let head: Vec<u64> = (0..8)
            .map(|k| conjectured_wythoff_grundy_seq(1, g, k).unwrap())
            .collect();
        println!("  g={g}: {head:?}");
    }
    println!();
    for (c, g, t) in [
        (1, 1, 80),
        (1, 2, 80),
        (1, 3, 80),
        (1, 4, 80),
        (2, 26, 80),
    ] {
        let report = conjecture_scan(c, g, t).expect("region fits the default cap");
        println!("g={g}: {report}");
    }
}
