//! End-to-end acceptance checks. Each test covers one criterion, prints a
//! single PASS/FAIL line (visible with `--nocapture`, or automatically on
//! failure), and enforces the runtime budget.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nimforge::formulas::{
    classic_wythoff_p, triangular_grundy, triangular_grundy_progression, yama_grundy,
};
use nimforge::ordinal::{natural_sum, Ordinal, OrdinalUniverse};
use nimforge::solver::{CompPos, SumGame, SumPart};
use nimforge::transfinite::{
    closure_check, transfinite_triangular_p, transfinite_wythoff_p, transfinite_yama_p,
    TransfiniteFamily,
};
use nimforge::verify::{compare_formula_vs_oracle, conjecture_scan, misere_cross_check, VerifyStatus};
use nimforge::{Position, Region, RulesetSpec};

fn conclude(label: &str, started: Instant, budget: Duration, mut errors: Vec<String>) {
    let elapsed = started.elapsed();
    if elapsed > budget {
        errors.push(format!(
            "runtime {elapsed:.2?} exceeds the {budget:?} budget"
        ));
    }
    if errors.is_empty() {
        println!("PASS {label} ({elapsed:.2?})");
    } else {
        println!("FAIL {label} ({elapsed:.2?})");
        for e in &errors {
            println!("  - {e}");
        }
        panic!("{label}: {} check(s) failed", errors.len());
    }
}

fn ord(s: &str) -> Ordinal {
    s.parse().expect("ordinal literal")
}

fn nat(n: u64) -> Ordinal {
    Ordinal::from_terms(vec![(Ordinal::zero(), n)]).expect("natural")
}

#[test]
fn criterion_01_golden_triangular_table() {
    let start = Instant::now();
    let mut errors = Vec::new();

    let golden = include_str!("golden/triangular_16x16.txt");
    let out = Command::new(env!("CARGO_BIN_EXE_nimforge"))
        .args(["table", "triangular", "--max", "15"])
        .output()
        .expect("spawn nimforge");
    if out.stdout != golden.as_bytes() {
        errors.push("rendered table differs from the frozen 16x16 table".into());
    }

    let region = Region::solve(&RulesetSpec::Triangular, 30).unwrap();
    let mut cells = 0;
    for line in golden.lines().skip(1) {
        let mut fields = line.split_whitespace();
        let x: u64 = fields.next().unwrap().parse().unwrap();
        for (y, field) in fields.enumerate() {
            let want: u64 = field.parse().unwrap();
            let got = region.grundy_at(&Position::pair(x, y as u64)).unwrap();
            if got != want {
                errors.push(format!("g({x},{y}) = {got}, table says {want}"));
            }
            cells += 1;
        }
    }
    if cells != 256 {
        errors.push(format!("expected 256 table cells, parsed {cells}"));
    }
    for (x, y, want) in [(2, 5, 6), (7, 10, 3)] {
        if region.grundy_at(&Position::pair(x, y)) != Some(want) {
            errors.push(format!("anchor g({x},{y}) != {want}"));
        }
    }
    conclude(
        "criterion 1: triangular 16x16 table matches the frozen golden copy",
        start,
        Duration::from_secs(1),
        errors,
    );
}

#[test]
fn criterion_02_yama_formula_vs_oracle() {
    let start = Instant::now();
    let mut errors = Vec::new();
    let report = compare_formula_vs_oracle(&RulesetSpec::Yama, 60).unwrap();
    if report.status != VerifyStatus::Match {
        errors.push(format!("status {}: {:?}", report.status, report.first_mismatch));
    }
    if report.checked != 1891 {
        errors.push(format!("expected 1891 positions, checked {}", report.checked));
    }
    conclude(
        "criterion 2: Yama Grundy formula matches the oracle on T=60 (1891 positions)",
        start,
        Duration::from_secs(1),
        errors,
    );
}

#[test]
fn criterion_03_triangular_both_formulations() {
    let start = Instant::now();
    let mut errors = Vec::new();

    let report = compare_formula_vs_oracle(&RulesetSpec::Triangular, 60).unwrap();
    if report.status != VerifyStatus::Match {
        errors.push(format!(
            "modular formulation: status {}: {:?}",
            report.status, report.first_mismatch
        ));
    }

    let region = Region::solve(&RulesetSpec::Triangular, 60).unwrap();
    for pos in region.positions() {
        let coords = pos.coords();
        let (x, y) = (coords[0], coords[1]);
        let got = triangular_grundy_progression(x, y).unwrap();
        let want = region.grundy_at(&pos).unwrap();
        if got != want {
            errors.push(format!(
                "progression formulation: g({x},{y}) = {want}, formula gives {got}"
            ));
            break;
        }
    }

    let mut disagreements = 0;
    for x in 0..=500u64 {
        for y in 0..=500u64 {
            if triangular_grundy(x, y).unwrap() != triangular_grundy_progression(x, y).unwrap() {
                if disagreements == 0 {
                    errors.push(format!("formulations disagree at ({x},{y})"));
                }
                disagreements += 1;
            }
        }
    }
    if disagreements > 0 {
        errors.push(format!("{disagreements} disagreements on the 501x501 square"));
    }
    conclude(
        "criterion 3: both triangular formulations match the oracle and each other",
        start,
        Duration::from_secs(5),
        errors,
    );
}

#[test]
fn criterion_04_ab_families() {
    let start = Instant::now();
    let mut errors = Vec::new();
    for a in 1..=5u64 {
        for b in -2..(a as i64) {
            let spec = RulesetSpec::ab_triangular(a, b).unwrap();
            let report = compare_formula_vs_oracle(&spec, 50).unwrap();
            if report.status != VerifyStatus::Match {
                errors.push(format!(
                    "{spec}: status {}: {:?}",
                    report.status, report.first_mismatch
                ));
            }
            if b >= 0 {
                let spec = RulesetSpec::ab_yama(a, b).unwrap();
                let report = compare_formula_vs_oracle(&spec, 50).unwrap();
                if report.status != VerifyStatus::Match {
                    errors.push(format!(
                        "{spec}: status {}: {:?}",
                        report.status, report.first_mismatch
                    ));
                }
            }
        }
    }
    conclude(
        "criterion 4: (a,b)-family P-formulas match the oracle at T=50",
        start,
        Duration::from_secs(30),
        errors,
    );
}

#[test]
fn criterion_05_wythoff_twists() {
    let start = Instant::now();
    let mut errors = Vec::new();
    for c in 0..=4u64 {
        for spec in [
            RulesetSpec::YamaWythoff { c },
            RulesetSpec::TriangularWythoff { c },
        ] {
            let report = compare_formula_vs_oracle(&spec, 80).unwrap();
            if report.status != VerifyStatus::Match {
                errors.push(format!(
                    "{spec}: status {}: {:?}",
                    report.status, report.first_mismatch
                ));
            }
        }
    }
    let anchors: [(u64, &[(u64, u64)]); 2] = [
        (0, &[(6, 10), (10, 15), (15, 21)]),
        (1, &[(9, 16), (16, 25)]),
    ];
    for (c, pairs) in anchors {
        let list = Region::solve(&RulesetSpec::TriangularWythoff { c }, 80)
            .unwrap()
            .p_positions();
        for &(x, y) in pairs {
            if !list.contains(&Position::pair(x, y)) {
                errors.push(format!("c={c} P-list is missing ({x},{y})"));
            }
        }
    }
    conclude(
        "criterion 5: Wythoff-twist P-sets match the oracle at T=80 with polygonal anchors",
        start,
        Duration::from_secs(60),
        errors,
    );
}

#[test]
fn criterion_06_geometric_families() {
    let start = Instant::now();
    let mut errors = Vec::new();
    for d in [2u64, 3, 4] {
        for spec in [
            RulesetSpec::geometric(d).unwrap(),
            RulesetSpec::sub_geometric(d).unwrap(),
        ] {
            let report = compare_formula_vs_oracle(&spec, 80).unwrap();
            if report.status != VerifyStatus::Match {
                errors.push(format!(
                    "{spec}: status {}: {:?}",
                    report.status, report.first_mismatch
                ));
            }
        }
    }

    let mersenne: Vec<u64> = (0..7).map(|k| (1u64 << k) - 1).collect();
    let mut expected = vec![Position::pair(0, 0)];
    for w in mersenne.windows(2) {
        expected.push(Position::pair(w[0], w[1]));
        expected.push(Position::pair(w[1], w[0]));
    }
    expected.sort_by_key(|p| (p.total(), *p));
    let list = Region::solve(&RulesetSpec::sub_geometric(2).unwrap(), 94)
        .unwrap()
        .p_positions();
    if list != expected {
        errors.push(format!(
            "sub-geometric d=2 P-list has {} entries, expected the {} consecutive Mersenne pairs",
            list.len(),
            expected.len()
        ));
    }
    conclude(
        "criterion 6: geometric families match the oracle; d=2 P-list is the Mersenne chain",
        start,
        Duration::from_secs(60),
        errors,
    );
}

#[test]
fn criterion_07_three_heap_families() {
    let start = Instant::now();
    let mut errors = Vec::new();
    for v in 1..=6u8 {
        let spec = RulesetSpec::three_heap(v).unwrap();
        let report = compare_formula_vs_oracle(&spec, 30).unwrap();
        println!(
            "  variant {v}: {} (checked {}, P {}){}",
            report.status,
            report.checked,
            report.p_count,
            report
                .first_mismatch
                .as_ref()
                .map(|m| format!("; first divergence {m}"))
                .unwrap_or_default()
        );
        if report.status != VerifyStatus::Match {
            errors.push(format!(
                "variant {v}: status {}: {}",
                report.status,
                report
                    .first_mismatch
                    .as_ref()
                    .map(|m| m.to_string())
                    .unwrap_or_default()
            ));
        }
    }
    conclude(
        "criterion 7: three-heap P-families match the oracle for totals <= 30",
        start,
        Duration::from_secs(120),
        errors,
    );
}

#[test]
fn criterion_08_misere_phase_analysis() {
    let start = Instant::now();
    let mut errors = Vec::new();

    let mut families = vec![RulesetSpec::Yama, RulesetSpec::Triangular];
    for c in 0..=4u64 {
        families.push(RulesetSpec::YamaWythoff { c });
        families.push(RulesetSpec::TriangularWythoff { c });
    }
    for d in 2..=4u64 {
        families.push(RulesetSpec::geometric(d).unwrap());
        families.push(RulesetSpec::sub_geometric(d).unwrap());
    }
    for spec in &families {
        let report = misere_cross_check(spec, 50).unwrap();
        if report.status != VerifyStatus::Match {
            errors.push(format!(
                "{spec}: status {}: {:?}",
                report.status, report.first_mismatch
            ));
        }
    }

    let yama = Region::solve_full(&RulesetSpec::Yama, 50).unwrap();
    let got = yama.misere_p_positions();
    let want: Vec<Position> = yama
        .positions()
        .filter(|p| {
            let c = p.coords();
            c[0].min(c[1]) == 0 && c[0].max(c[1]) >= 2
        })
        .collect();
    if got != want {
        errors.push(format!(
            "Yama misere P-set has {} members, the min=0/max>=2 set has {}",
            got.len(),
            want.len()
        ));
    }

    let tri = Region::solve_full(&RulesetSpec::Triangular, 50).unwrap();
    let got = tri.misere_p_positions();
    let want: Vec<Position> = tri
        .positions()
        .filter(|p| {
            let c = p.coords();
            (c[0].min(c[1]) >= 2 && c[0].abs_diff(c[1]) <= 1) || *p == Position::pair(0, 2) || *p == Position::pair(2, 0)
        })
        .collect();
    if got != want {
        errors.push(format!(
            "Triangular misere P-set has {} members, the described set has {}",
            got.len(),
            want.len()
        ));
    }

    let adm = tri.check_admissible();
    if !adm.admissible || adm.universally {
        errors.push(format!(
            "Triangular admissibility: admissible={}, universally={}",
            adm.admissible, adm.universally
        ));
    }
    if !adm
        .universality_witnesses
        .iter()
        .any(|w| w.pos == Position::pair(1, 3))
    {
        errors.push("Triangular universality witnesses do not include (1,3)".into());
    }
    for c in 0..=4u64 {
        let adm = Region::solve_full(&RulesetSpec::YamaWythoff { c }, 50)
            .unwrap()
            .check_admissible();
        if !adm.universally {
            errors.push(format!("yama-wythoff:c={c} is not universally admissible"));
        }
    }
    conclude(
        "criterion 8: misere phase method agrees with direct induction, with the stated sets and admissibility verdicts",
        start,
        Duration::from_secs(60),
        errors,
    );
}

#[test]
fn criterion_09_conjectured_grundy_classes() {
    let start = Instant::now();
    let mut errors = Vec::new();
    for g in 1..=3u64 {
        let report = conjecture_scan(1, g, 80).unwrap();
        if report.status != VerifyStatus::Match {
            errors.push(format!(
                "c=1 g={g}: status {}: {:?}",
                report.status, report.first_mismatch
            ));
        }
    }

    let report = conjecture_scan(1, 4, 80).unwrap();
    match (&report.status, &report.first_mismatch) {
        (VerifyStatus::Mismatch, Some(m))
            if m.pos == [serde_json::json!(5), serde_json::json!(8)] => {}
        _ => errors.push(format!(
            "c=1 g=4: expected first failure at (5,8), got {} / {:?}",
            report.status, report.first_mismatch
        )),
    }

    let report = conjecture_scan(2, 26, 64).unwrap();
    match (&report.status, &report.first_mismatch) {
        (VerifyStatus::Mismatch, Some(m))
            if m.pos == [serde_json::json!(27), serde_json::json!(37)]
                && m.actual == serde_json::json!(26) => {}
        _ => errors.push(format!(
            "c=2: expected oracle Grundy 26 at (27,37), got {} / {:?}",
            report.status, report.first_mismatch
        )),
    }
    conclude(
        "criterion 9: conjectured Grundy-class sequences hold for c=1 g<=3 and fail exactly at the known witnesses",
        start,
        Duration::from_secs(120),
        errors,
    );
}

#[test]
fn criterion_10_transfinite_closure() {
    let start = Instant::now();
    let mut errors = Vec::new();

    let universe = OrdinalUniverse::new(vec![0, 1, 2], 6, 2);
    for family in TransfiniteFamily::ALL {
        let report = closure_check(family, &universe);
        println!(
            "  {family}: {} pairs, {} P, {} interior failures, {} boundary-excluded{}",
            report.pairs_checked,
            report.p_count,
            report.failures,
            report.boundary_excluded,
            report
                .first_failure
                .as_ref()
                .map(|f| format!("; first: {f}"))
                .unwrap_or_default()
        );
        if report.failures > 0 {
            errors.push(format!(
                "{family}: {} interior failures (first: {})",
                report.failures,
                report.first_failure.as_ref().unwrap()
            ));
        }
    }

    if !transfinite_wythoff_p(&ord("w+3"), &ord("w*2+5")) {
        errors.push("(w+3, w*2+5) should satisfy the transfinite Wythoff P-test".into());
    }

    for x in 0..=12u64 {
        for y in 0..=12u64 {
            let (a, b) = (nat(x), nat(y));
            if transfinite_wythoff_p(&a, &b) != classic_wythoff_p(x, y) {
                errors.push(format!("Wythoff restriction differs at ({x},{y})"));
            }
            if transfinite_yama_p(&a, &b) && yama_grundy(x, y).unwrap() != 0 {
                errors.push(format!("Yama restriction claims non-P ({x},{y})"));
            }
            if transfinite_triangular_p(&a, &b) && triangular_grundy(x, y).unwrap() != 0 {
                errors.push(format!("Triangular restriction claims non-P ({x},{y})"));
            }
        }
    }
    conclude(
        "criterion 10: transfinite closure conditions hold on E={0,1,2}, C=6, margin 2",
        start,
        Duration::from_secs(120),
        errors,
    );
}

#[test]
fn criterion_11_algebraic_properties() {
    let start = Instant::now();
    let mut errors = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e696d666f726765);

    let universe = OrdinalUniverse::new(vec![0, 1, 2], 6, 0);
    let members: Vec<Ordinal> = universe.iter().collect();
    let pick = |rng: &mut ChaCha8Rng| members[rng.random_range(0..members.len())].clone();
    for _ in 0..10_000 {
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        if natural_sum(&a, &b) != natural_sum(&b, &a) {
            errors.push(format!("commutativity fails at {a}, {b}"));
            break;
        }
        if natural_sum(&natural_sum(&a, &b), &c) != natural_sum(&a, &natural_sum(&b, &c)) {
            errors.push(format!("associativity fails at {a}, {b}, {c}"));
            break;
        }
        if a < b && natural_sum(&a, &c) >= natural_sum(&b, &c) {
            errors.push(format!("monotonicity fails at {a} < {b} with {c}"));
            break;
        }
        if a != b && natural_sum(&a, &c) == natural_sum(&b, &c) {
            errors.push(format!("cancellativity fails at {a}, {b} with {c}"));
            break;
        }
    }

    let families = [
        RulesetSpec::Yama,
        RulesetSpec::Triangular,
        RulesetSpec::ab_yama(3, 1).unwrap(),
        RulesetSpec::ab_triangular(3, -1).unwrap(),
        RulesetSpec::YamaWythoff { c: 2 },
        RulesetSpec::TriangularWythoff { c: 1 },
        RulesetSpec::geometric(2).unwrap(),
        RulesetSpec::sub_geometric(3).unwrap(),
        RulesetSpec::three_heap(1).unwrap(),
        RulesetSpec::ClassicWythoff,
    ];
    let random_position = |rng: &mut ChaCha8Rng, spec: &RulesetSpec, total_cap: u64| {
        let s = rng.random_range(0..=total_cap);
        if spec.arity() == 2 {
            let x = rng.random_range(0..=s);
            Position::pair(x, s - x)
        } else {
            let x = rng.random_range(0..=s);
            let y = rng.random_range(0..=(s - x));
            Position::triple(x, y, s - x - y)
        }
    };
    for spec in &families {
        let mut game = SumGame::new(SumPart::Ruleset(*spec), SumPart::Ruleset(*spec));
        for _ in 0..200 {
            let p = random_position(&mut rng, spec, 20);
            let q = random_position(&mut rng, spec, 20 - p.total());
            let (ca, cb) = (CompPos::Game(p), CompPos::Game(q));
            let ga = game.component_labels(0, ca).grundy;
            let gb = game.component_labels(1, cb).grundy;
            let sum = game.labels(ca, cb).grundy;
            if sum != ga ^ gb {
                errors.push(format!(
                    "{spec}: g({p} + {q}) = {sum}, but {ga} xor {gb} = {}",
                    ga ^ gb
                ));
                break;
            }
        }
    }

    let table = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_nimforge"))
            .args([
                "table",
                "triangular",
                "--max",
                "30",
                "--format",
                "csv",
                "--threads",
                threads,
            ])
            .output()
            .expect("spawn nimforge")
            .stdout
    };
    if table("1") != table("4") {
        errors.push("table output differs between --threads 1 and --threads 4".into());
    }
    conclude(
        "criterion 11: natural-sum laws, the XOR law for disjunctive sums, and thread-count determinism",
        start,
        Duration::from_secs(120),
        errors,
    );
}
