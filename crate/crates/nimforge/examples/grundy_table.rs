//! Solve a region and print a small Grundy table for each two-heap ruleset.
//!
//!     cargo run --example grundy_table

use nimforge::{Position, Region, RulesetSpec};

fn print_square(spec: &RulesetSpec, max: u64) {
    let region = Region::solve(spec, 2 * max).expect("region fits the default cap");
    println!("{spec}:");
    print!("  x\\y");
    for y in 0..=max {
        print!(" {y:>2}");
    }
    println!();
    for x in 0..=max {
        print!("  {x:>3}");
        for y in 0..=max {
            let g = region.grundy_at(&Position::pair(x, y)).unwrap();
            print!(" {g:>2}");
        }
        println!();
    }
    println!();
}

fn main() {
    for spec in [
        RulesetSpec::Yama,
        RulesetSpec::Triangular,
        RulesetSpec::YamaWythoff { c: 2 },
        RulesetSpec::geometric(2).unwrap(),
        RulesetSpec::ClassicWythoff,
    ] {
        print_square(&spec, 9);
    }
}
