//! Batch command-line front end: tables, P-position lists, verification
//! sweeps, misère analysis, conjecture scans, transfinite closure checks,
//! and best-move queries.
//!
//! Exit codes: 0 for success / Match, 1 for Mismatch (or any non-Match
//! report), 2 for usage errors, 3 when a request exceeds the position
//! capacity cap.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::formulas::{formula_p, winning_move, FormulaError};
use crate::game::Position;
use crate::ordinal::OrdinalUniverse;
use crate::ruleset::RulesetSpec;
use crate::solver::{self, Region, SolveError};
use crate::transfinite::TransfiniteFamily;
use crate::verify::{
    compare_formula_vs_oracle, conjecture_scan, misere_cross_check, transfinite_closure_report,
    VerifyReport, VerifyStatus,
};

const ASCII_TABLE_LIMIT: u64 = 39;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Ascii,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    Oracle,
    Formula,
    Both,
}

#[derive(Parser)]
#[command(
    name = "nimforge",
    version,
    about = "Grundy values, misère phases, and closed-form P-position checks for Yama-style Nim variants"
)]
struct Cli {
    /// Cap the worker thread count (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write output to a file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render the Grundy table of a ruleset.
    ///
    /// ascii prints the square crop x,y ≤ max (row = x, column = y);
    /// csv and json list the triangle x+y ≤ max with outcome, phase, and
    /// misère columns.
    Table {
        spec: RulesetSpec,
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// List normal-play P-positions with total ≤ max.
    Pps {
        spec: RulesetSpec,
        #[arg(long)]
        max: u64,
        /// oracle = brute force, formula = closed form, both = compare and
        /// fail on any disagreement.
        #[arg(long, value_enum, default_value_t = Source::Oracle)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// Sweep formula against oracle over the triangle total ≤ max.
    Verify {
        spec: RulesetSpec,
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// Cross-check misère play: phase method vs direct induction vs closed
    /// form, plus the admissibility verdicts.
    Misere {
        spec: RulesetSpec,
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// Scan a Triangular-Wythoff Grundy class against its conjectured
    /// sequence description.
    Conjecture {
        #[arg(long)]
        c: u64,
        #[arg(long)]
        g: u64,
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// Check the transfinite P-set closure conditions over a bounded
    /// ordinal universe.
    Transfinite {
        family: TransfiniteFamily,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
        exponents: Vec<u64>,
        #[arg(long, default_value_t = 6)]
        coeff_cap: u64,
        #[arg(long, default_value_t = 2)]
        margin: u64,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// Print one winning move from a position, or report it as a
    /// P-position.
    BestMove {
        spec: RulesetSpec,
        position: Position,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Solve(SolveError),
    Formula(FormulaError),
    Io(io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Solve(e) => e.fmt(f),
            CliError::Formula(e) => e.fmt(f),
            CliError::Io(e) => e.fmt(f),
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        CliError::Solve(e)
    }
}

impl From<FormulaError> for CliError {
    fn from(e: FormulaError) -> Self {
        CliError::Formula(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<crate::verify::VerifyError> for CliError {
    fn from(e: crate::verify::VerifyError) -> Self {
        match e {
            crate::verify::VerifyError::Solve(s) => CliError::Solve(s),
            crate::verify::VerifyError::Formula(f) => CliError::Formula(f),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Formula(_) | CliError::Io(_) => 2,
            CliError::Solve(SolveError::Capacity { .. }) => 3,
        }
    }
}

/// Parses arguments from the process environment, runs one command, and
/// returns the exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .ok();
    }
    let mut out: Box<dyn Write> = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot open {}: {e}", path.display());
                return 2;
            }
        },
        None => Box::new(io::stdout().lock()),
    };
    let result = execute(cli.command, &mut out);
    if let Err(e) = out.flush() {
        eprintln!("error: {e}");
        return 2;
    }
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Table { spec, max, format } => cmd_table(&spec, max, format, out),
        Command::Pps {
            spec,
            max,
            source,
            format,
        } => cmd_pps(&spec, max, source, format, out),
        Command::Verify { spec, max, format } => {
            let report = compare_formula_vs_oracle(&spec, max)?;
            emit_report(&report, format, out)
        }
        Command::Misere { spec, max, format } => cmd_misere(&spec, max, format, out),
        Command::Conjecture { c, g, max, format } => {
            let report = conjecture_scan(c, g, max)?;
            emit_report(&report, format, out)
        }
        Command::Transfinite {
            family,
            exponents,
            coeff_cap,
            margin,
            format,
        } => cmd_transfinite(family, exponents, coeff_cap, margin, format, out),
        Command::BestMove { spec, position } => cmd_best_move(&spec, &position, out),
    }
}

fn emit_report(
    report: &VerifyReport,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    match format {
        Format::Json => writeln!(out, "{:#}", report.to_json())?,
        Format::Ascii | Format::Csv => writeln!(out, "{report}")?,
    }
    Ok(if report.status == VerifyStatus::Match {
        0
    } else {
        1
    })
}

fn cmd_table(
    spec: &RulesetSpec,
    max: u64,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    match format {
        Format::Ascii => {
            if spec.arity() != 2 {
                return Err(CliError::Usage(
                    "ascii tables are two-heap only; use --format csv or json".into(),
                ));
            }
            if max > ASCII_TABLE_LIMIT {
                return Err(CliError::Usage(format!(
                    "ascii tables cap at {0}x{0}; use --format csv or json",
                    ASCII_TABLE_LIMIT + 1
                )));
            }
            let region = Region::solve(spec, 2 * max)?;
            out.write_all(render_ascii_square(&region, max).as_bytes())?;
        }
        Format::Csv => {
            let region = Region::solve_full(spec, max)?;
            region.write_csv(out)?;
        }
        Format::Json => {
            let region = Region::solve_full(spec, max)?;
            writeln!(out, "{:#}", region.to_json())?;
        }
    }
    Ok(0)
}

/// Renders the square crop x,y ≤ max in the row-major layout used
/// throughout the tables in this area: x labels rows going down, y labels
/// columns going across.
fn render_ascii_square(region: &Region, max: u64) -> String {
    let grundy =
        |x: u64, y: u64| region.grundy_at(&Position::pair(x, y)).expect("crop in region");
    let mut cell = max.to_string().len();
    for x in 0..=max {
        for y in 0..=max {
            cell = cell.max(grundy(x, y).to_string().len());
        }
    }
    let label = "x\\y".len().max(max.to_string().len());
    let mut s = String::new();
    s.push_str(&format!("{:>label$}", "x\\y"));
    for y in 0..=max {
        s.push_str(&format!(" {y:>cell$}"));
    }
    s.push('\n');
    for x in 0..=max {
        s.push_str(&format!("{x:>label$}"));
        for y in 0..=max {
            s.push_str(&format!(" {:>cell$}", grundy(x, y)));
        }
        s.push('\n');
    }
    s
}

fn formula_p_positions(spec: &RulesetSpec, max: u64) -> Result<Vec<Position>, CliError> {
    let mut out = Vec::new();
    for s in 0..=max {
        for pos in solver::level_positions(spec.arity(), s) {
            if formula_p(spec, &pos)? {
                out.push(pos);
            }
        }
    }
    Ok(out)
}

fn cmd_pps(
    spec: &RulesetSpec,
    max: u64,
    source: Source,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    if spec.outside_proven_theorem() && source != Source::Oracle {
        eprintln!("warning: {spec} is outside the proven range of its closed form");
    }
    let (positions, code) = match source {
        Source::Oracle => (Region::solve(spec, max)?.p_positions(), 0),
        Source::Formula => (formula_p_positions(spec, max)?, 0),
        Source::Both => {
            let oracle = Region::solve(spec, max)?.p_positions();
            let formula = formula_p_positions(spec, max)?;
            let mut code = 0;
            if oracle != formula {
                let diverging = oracle
                    .iter()
                    .zip(formula.iter())
                    .find(|(o, f)| o != f)
                    .map(|(o, f)| format!("oracle {o} vs formula {f}"))
                    .unwrap_or_else(|| {
                        format!("oracle has {}, formula has {}", oracle.len(), formula.len())
                    });
                eprintln!("sources disagree: {diverging}");
                code = 1;
            }
            (oracle, code)
        }
    };
    match format {
        Format::Ascii => {
            for p in &positions {
                writeln!(out, "{p}")?;
            }
        }
        Format::Csv => {
            writeln!(out, "{}", if spec.arity() == 2 { "x,y" } else { "x,y,z" })?;
            for p in &positions {
                writeln!(out, "{p}")?;
            }
        }
        Format::Json => {
            let coords: Vec<Vec<u64>> = positions.iter().map(|p| p.coords()).collect();
            let v = json!({
                "spec": spec.to_string(),
                "T": max,
                "count": coords.len(),
                "positions": coords,
            });
            writeln!(out, "{v:#}")?;
        }
    }
    if format == Format::Ascii && code == 0 && positions.is_empty() {
        writeln!(out, "(none)")?;
    }
    Ok(code)
}

fn cmd_misere(
    spec: &RulesetSpec,
    max: u64,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let report = misere_cross_check(spec, max)?;
    if format == Format::Ascii {
        let region = Region::solve_full(spec, max)?;
        let adm = region.check_admissible();
        writeln!(out, "{report}")?;
        writeln!(
            out,
            "admissible: {}; universally admissible: {}",
            if adm.admissible { "yes" } else { "no" },
            if adm.universally { "yes" } else { "no" }
        )?;
        if !adm.admissible {
            if let Some(w) = adm.admissibility_witnesses.first() {
                writeln!(out, "admissibility fails at {w}")?;
            }
        }
        if !adm.universally {
            if let Some(w) = adm.universality_witnesses.first() {
                writeln!(out, "universality fails at {w}")?;
            }
        }
        return Ok(if report.status == VerifyStatus::Match {
            0
        } else {
            1
        });
    }
    emit_report(&report, format, out)
}

fn cmd_transfinite(
    family: TransfiniteFamily,
    exponents: Vec<u64>,
    coeff_cap: u64,
    margin: u64,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    if exponents.is_empty() {
        return Err(CliError::Usage("--exponents needs at least one value".into()));
    }
    if coeff_cap == 0 {
        return Err(CliError::Usage("--coeff-cap must be positive".into()));
    }
    let universe = OrdinalUniverse::new(exponents, coeff_cap, margin);
    let report = transfinite_closure_report(family, &universe);
    if format == Format::Ascii {
        writeln!(out, "{report}")?;
        writeln!(
            out,
            "universe: {} ordinals, margin {margin} (boundary pairs are reported, not checked)",
            universe.len()
        )?;
    } else {
        emit_report(&report, format, out)?;
    }
    Ok(if report.status == VerifyStatus::Match {
        0
    } else {
        1
    })
}

fn cmd_best_move(
    spec: &RulesetSpec,
    position: &Position,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    if position.coords().len() != spec.arity() {
        return Err(CliError::Usage(format!(
            "{spec} takes {}-heap positions",
            spec.arity()
        )));
    }
    match winning_move(spec, position)? {
        Some(m) => writeln!(out, "{m}")?,
        None => writeln!(out, "P-position")?,
    }
    Ok(0)
}
