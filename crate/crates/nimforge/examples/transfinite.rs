//! Ordinal heaps in Cantor normal form: natural sums, the transfinite
//! P-position predicates, and a closure check of the claimed P-sets over a
//! bounded universe of ordinals.
//!
//!     cargo run --example transfinite

use nimforge::ordinal::{natural_sum, Ordinal, OrdinalUniverse};
use nimforge::transfinite::{
    closure_check, transfinite_options, transfinite_p, TransfiniteFamily,
};

fn ord(s: &str) -> Ordinal {
    s.parse().unwrap()
}

fn main() {
    let a = ord("w^2*2 + 3");
    let b = ord("w^2 + w*4 + 1");
    println!("({a}) # ({b}) = {}", natural_sum(&a, &b));
    println!();

    for (x, y) in [("w+3", "w*2+5"), ("w", "w"), ("w", "w+1"), ("w^2", "w^2+1")] {
        let (x, y) = (ord(x), ord(y));
        for family in TransfiniteFamily::ALL {
            print!("  {family}({x}, {y}) = {}", transfinite_p(family, &x, &y));
        }
        println!();
    }
    println!();

    let universe = OrdinalUniverse::new(vec![0, 1], 5, 2);
    let pos = (ord("3"), ord("w"));
    let opts = transfinite_options(TransfiniteFamily::Wythoff, &pos, &universe);
    let shown: Vec<String> = opts.iter().map(|(a, b)| format!("({a},{b})")).collect();
    println!("wythoff options of (3, w) inside the universe: {}", shown.join(" "));
    println!();

    for family in TransfiniteFamily::ALL {
        let report = closure_check(family, &OrdinalUniverse::new(vec![0, 1], 4, 2));
        println!(
            "{family}: {} pairs, {} claimed P, {} interior failures, {} boundary-excluded{}",
            report.pairs_checked,
            report.p_count,
            report.failures,
            report.boundary_excluded,
            report
                .first_failure
                .as_ref()
                .map(|f| format!(" ({f})"))
                .unwrap_or_default()
        );
    }
}
