//! Command-line surface: analyze point-set files, generate seeded
//! configurations, run verification suites, and render the strata
//! dimension tables.
//!
//! Exit codes: 0 success, 1 usage, 2 verification failure, 3 bad input.
//! Output bytes depend only on the flags; timing goes to stderr.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use cbgeom::classify::{classify_cb5, Classification};
use cbgeom::conditions::{conditions_imposed, h0_ideal, h1_ideal, is_cb};
use cbgeom::generate::{sample_config, ConfigCase, ConfigSpec};
use cbgeom::io::{parse_point_set, render_form, render_point_set, render_witness_sidecar};
use cbgeom::moduli::{
    build_tables, diff_tables, BoundSource, DiffReport, DimBound, DiscrepancyKind, Entry,
    StrataTable, STRATA_MAX_D,
};
use cbgeom::position::position_report;
use cbgeom::scalar::FieldSpec;
use cbgeom::verify::{run_suite, SUITES};
use cbgeom::Error;

#[derive(Parser)]
#[command(
    name = "cbgeom",
    version,
    about = "Exact arithmetic for finite point configurations in P^2/P^3: \
             Hilbert data, Cayley-Bacharach verdicts, configuration generators, \
             verification suites, strata dimension tables"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze a point-set file: Hilbert data, CB verdicts, position report
    Analyze {
        /// point-set file (`field ...` / `ambient ...` / `point ...` lines)
        file: PathBuf,
        /// inclusive degree range a..b for the Hilbert rows
        #[arg(long, value_parser = parse_degree_range, default_value = "1..6")]
        degrees: (u32, u32),
        /// comma-separated degrees m to test CB(m) at
        #[arg(long, value_delimiter = ',')]
        cb: Vec<u32>,
        /// classify the configuration (quadric membership, case shapes)
        #[arg(long)]
        classify: bool,
    },
    /// Generate a seeded configuration: points, witness sidecar, sextic
    Generate {
        /// case name: i, ii, iii, iv, v, on-plane, on-conic,
        /// on-plane-cubic, on-twisted-cubic, ci33
        #[arg(long)]
        case: String,
        /// comma-separated component lengths (defaults per case)
        #[arg(long, value_delimiter = ',')]
        lengths: Option<Vec<usize>>,
        /// field characteristic
        #[arg(long, default_value_t = 32003)]
        prime: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// output stem; writes <stem>.points, <stem>.witness, <stem>.sextic
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run one verification suite of seeded trials
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 32003)]
        prime: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Render the strata dimension tables
    Tables {
        /// bound column source: closed formula or embedded reference grid
        #[arg(long, value_enum, default_value_t = SourceArg::Table)]
        source: SourceArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SourceArg {
    Prop,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
}

fn parse_degree_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got `{s}`"))?;
    let a: u32 = a.parse().map_err(|_| format!("bad lower degree `{a}`"))?;
    let b: u32 = b.parse().map_err(|_| format!("bad upper degree `{b}`"))?;
    if a == 0 || b < a {
        return Err(format!("degree range must satisfy 1 <= a <= b, got {a}..{b}"));
    }
    Ok((a, b))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let code = match cli.cmd {
        Cmd::Analyze { file, degrees, cb, classify } => cmd_analyze(&file, degrees, &cb, classify),
        Cmd::Generate { case, lengths, prime, seed, out } => {
            cmd_generate(&case, lengths, prime, seed, out)
        }
        Cmd::Verify { suite, trials, prime, seed } => cmd_verify(&suite, trials, prime, seed),
        Cmd::Tables { source, format } => cmd_tables(source, format),
    };
    eprintln!("elapsed: {} ms", start.elapsed().as_millis());
    ExitCode::from(code)
}

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_BAD_INPUT: u8 = 3;

fn cmd_analyze(file: &PathBuf, degrees: (u32, u32), cb: &[u32], classify: bool) -> u8 {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return EXIT_BAD_INPUT;
        }
    };
    let ps = match parse_point_set(&text) {
        Ok(ps) => ps,
        Err(e) => {
            eprintln!("error: {}: {e}", file.display());
            return EXIT_BAD_INPUT;
        }
    };

    let field_name = match ps.field() {
        FieldSpec::Prime(p) => format!("F_{p}"),
        FieldSpec::Rationals => "Q".to_string(),
    };
    println!("points {} over {field_name} in P^{}", ps.len(), ps.ambient_dim());
    for d in degrees.0..=degrees.1 {
        println!(
            "degree {d}: conditions {}  h0 {}  h1 {}",
            conditions_imposed(&ps, d),
            h0_ideal(&ps, d),
            h1_ideal(&ps, d)
        );
    }
    for &m in cb {
        let rep = is_cb(&ps, m);
        if rep.satisfied {
            println!("CB({m}): true");
        } else {
            let failing: Vec<String> = rep.failing_points.iter().map(|i| i.to_string()).collect();
            println!("CB({m}): false  failing {}", failing.join(","));
        }
    }

    let pos = position_report(&ps);
    if ps.ambient_dim() == 3 {
        println!(
            "position: max collinear {}, max coplanar {}",
            pos.max_collinear, pos.max_coplanar
        );
    } else {
        println!("position: max collinear {}", pos.max_collinear);
    }
    println!("quadrics through the set: {}", pos.quadric_count);
    for (d, hyp, ind) in &pos.de {
        println!("degree {d}: position hypothesis {hyp}, independent conditions {ind}");
    }
    if let Some(cn) = &pos.castelnuovo {
        println!(
            "growth signature: holds {}, general position {}, profile {:?}, expected {:?}",
            cn.holds, cn.lgp, cn.profile, cn.expected
        );
    }

    if classify {
        match classify_cb5(&ps) {
            Classification::Unclassified(reason) => {
                println!("classification: Unclassified ({reason})");
            }
            Classification::InQuadric(_) => println!("classification: InQuadric"),
            c => {
                println!("classification: {}", display_case(c.tag()));
                if let Some(ws) = c.witnesses() {
                    for w in ws {
                        println!("  witness {} covering {} points", w.kind_name(), w.covered().len());
                    }
                }
            }
        }
    }
    EXIT_OK
}

fn display_case(tag: &str) -> String {
    match tag {
        "CaseI" => "Case I".to_string(),
        "CaseII" => "Case II".to_string(),
        "CaseIII" => "Case III".to_string(),
        "CaseIV" => "Case IV".to_string(),
        "CaseV" => "Case V".to_string(),
        other => other.to_string(),
    }
}

fn cmd_generate(
    case: &str,
    lengths: Option<Vec<usize>>,
    prime: u64,
    seed: u64,
    out: Option<PathBuf>,
) -> u8 {
    let normalized = case.to_ascii_lowercase();
    let canonical = match normalized.as_str() {
        "i" | "ii" | "iii" | "iv" | "v" => format!("case-{normalized}"),
        other => other.to_string(),
    };
    let Some(case) = ConfigCase::from_name(&canonical) else {
        eprintln!("error: unknown case `{case}`");
        return EXIT_USAGE;
    };
    let field = match FieldSpec::prime(prime) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let spec = match ConfigSpec::new(case, lengths, field, seed) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let cfg = match sample_config(&spec) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: generation failed: {e}");
            return EXIT_BAD_INPUT;
        }
    };
    let cb5 = is_cb(&cfg.points, 5);

    let stem = out.unwrap_or_else(|| PathBuf::from(case.name()));
    let files = [
        (stem.with_extension("points"), render_point_set(&cfg.points)),
        (
            stem.with_extension("witness"),
            render_witness_sidecar(case.name(), cb5.satisfied, &cfg.witnesses),
        ),
        (stem.with_extension("sextic"), render_form(&cfg.sextic)),
    ];
    for (path, contents) in &files {
        if let Err(e) = std::fs::write(path, contents) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_BAD_INPUT;
        }
        println!("wrote {}", path.display());
    }
    EXIT_OK
}

fn cmd_verify(suite: &str, trials: usize, prime: u64, seed: u64) -> u8 {
    let field = match FieldSpec::prime(prime) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match run_suite(suite, trials, field, seed) {
        Ok(rep) => {
            print!("{}", rep.render());
            eprintln!("suite wall time: {} ms", rep.wall_ms);
            if rep.all_passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY
            }
        }
        Err(Error::UnknownSuite(name)) => {
            eprintln!("error: unknown suite `{name}`; expected one of {}", SUITES.join(", "));
            EXIT_USAGE
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn cmd_tables(source: SourceArg, format: FormatArg) -> u8 {
    let src = match source {
        SourceArg::Prop => BoundSource::Prop,
        SourceArg::Table => BoundSource::Table,
    };
    let table = build_tables(src);
    match format {
        FormatArg::Text => {
            print!("{}", render_tables_text(&table));
            if source == SourceArg::Prop {
                print!("{}", render_diff_summary(&diff_tables(&table)));
            }
        }
        FormatArg::Csv => print!("{}", render_tables_csv(&table)),
    }
    EXIT_OK
}

fn bound_cell(b: DimBound) -> String {
    match b {
        DimBound::Empty => "-1".to_string(),
        DimBound::Bound(v) => v.to_string(),
    }
}

fn entry_cell(e: Entry) -> String {
    match e {
        Entry::Absent => "--".to_string(),
        Entry::Value(v) => v.to_string(),
    }
}

/// Two page-sized blocks, d = 1..9 and d = 10..14; "--" marks cells with
/// no stratum, a bound of -1 marks an empty component.
fn render_tables_text(table: &StrataTable) -> String {
    let mut out = String::new();
    for (block, (lo, hi)) in [(1i64, 9i64), (10, 14)].into_iter().enumerate() {
        if block == 1 {
            out.push('\n');
        }
        writeln!(out, "strata dimension bounds (d = {lo}..{hi})").unwrap();
        write!(out, "  c2   exp bound").unwrap();
        for d in lo..=hi {
            write!(out, " {d:>4}").unwrap();
        }
        out.push('\n');
        for row in &table.rows {
            write!(out, "{:>4} {:>5} {:>5}", row.c2, row.expected, bound_cell(row.bound)).unwrap();
            for d in lo..=hi {
                write!(out, " {:>4}", entry_cell(row.entries[(d - 1) as usize])).unwrap();
            }
            out.push('\n');
        }
    }
    out
}

/// One machine-readable grid over the full degree range; absent cells are
/// empty fields.
fn render_tables_csv(table: &StrataTable) -> String {
    let mut out = String::from("c2,expected,bound");
    for d in 1..=STRATA_MAX_D {
        write!(out, ",d{d}").unwrap();
    }
    out.push('\n');
    for row in &table.rows {
        write!(out, "{},{},{}", row.c2, row.expected, bound_cell(row.bound)).unwrap();
        for e in &row.entries {
            match e {
                Entry::Absent => out.push(','),
                Entry::Value(v) => write!(out, ",{v}").unwrap(),
            }
        }
        out.push('\n');
    }
    out
}

fn render_diff_summary(diff: &DiffReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "\ndiff against embedded grid: {} strata cells, {} bound rows",
        diff.strata_mismatches.len(),
        diff.bound_mismatches.len()
    )
    .unwrap();
    for m in &diff.strata_mismatches {
        writeln!(
            out,
            "  strata c2 {} d {}: computed {}, embedded {}",
            m.c2,
            m.d,
            entry_cell(m.computed),
            entry_cell(m.embedded)
        )
        .unwrap();
    }
    for m in &diff.bound_mismatches {
        let col = match m.against {
            DiscrepancyKind::PropVsTable => "first grid",
            DiscrepancyKind::SecondPageBound => "second grid",
        };
        writeln!(
            out,
            "  bound c2 {} vs {}: computed {}, printed {}{}",
            m.c2,
            col,
            bound_cell(m.computed),
            bound_cell(m.printed),
            if m.known { " (recorded)" } else { " (NEW)" }
        )
        .unwrap();
    }
    out
}
