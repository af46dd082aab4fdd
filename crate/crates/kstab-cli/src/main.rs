//! `kstab` — exact slope computations for log del Pezzo pairs.
//!
//! Subcommands:
//! * `beta` — slope report for one divisorial valuation over one pair;
//! * `sweep` — classify every pair of a family over a coefficient grid;
//! * `reproduce` — replay the recorded tables and flag mismatches;
//! * `volume` — piecewise-quadratic volume function of one valuation.
//!
//! All arithmetic is exact; output is deterministic byte for byte, with or
//! without `--parallel`. Exit codes: `0` success, `1` run failure
//! (uncertified refusal, reproduction mismatch, empty sweep grid), `2`
//! malformed input.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kstability::beta::{beta_report, beta_report_strict};
use kstability::classify::{classify_pair, PairVerdict};
use kstability::divisors::{self, DivisorCase};
use kstability::families::{coefficient_grid, hirzebruch_pairs, two_line_pairs, Pair};
use kstability::formulas::ConicContact;
use kstability::report::{
    beta_csv_header, beta_csv_record, repro_check_record, repro_csv_header, repro_row_record,
    to_json_pretty, verdict_csv_records, ExactValue,
};
use kstability::reproduce::{reproduce, ReproduceError};
use picard_lattice::{format_rat, int, parse_rat, Rat};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::json;
use volume_zariski::volume_sweep;

#[derive(Parser)]
#[command(
    name = "kstab",
    version,
    about = "Exact slope computations for log del Pezzo pairs"
)]
struct Cli {
    /// Accept slope reports whose vanishing threshold is heuristic
    /// (the curve catalog does not certify cone generation).
    #[arg(long, global = true)]
    allow_uncertified: bool,

    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Slope report for one divisorial valuation over one pair.
    ///
    /// Pair specs: `p2:delta=1/2`, `p1xp1:delta=1/2`,
    /// `fm:m=2,d1=1/2,d2=1/4`, `f1einf:delta=1/8`, `twolines:d1=1/8,d2=1/4`.
    /// Divisor specs: `conic`, `diagonal`, `diagonal-contact`,
    /// `toric:a,b[:contact]`, `m1:on|off`, `line-free-tail:m`, `cubic-nine`,
    /// `e`, `einf`, `fibre`, `l1`, `l2`, `curve:d` (plane) or `curve:p,q`
    /// (quadric).
    Beta { pair: String, divisor: String },

    /// Classify every pair of a family over a coefficient grid.
    ///
    /// Family specs: `plane`, `quadric`, `ruled:m=N`, `f1einf`, `twolines`.
    Sweep {
        family: String,
        /// Coefficient grid density.
        #[arg(long, value_enum, default_value_t = Grid::Eighths)]
        grid: Grid,
        /// Classify the pairs on a thread pool (honours `KSTAB_WORKERS`).
        #[arg(long)]
        parallel: bool,
    },

    /// Replay the recorded tables: `plane`, `quadric`, `ruled`, `examples`,
    /// or `all`. Exits 1 when any recomputed value disagrees.
    Reproduce { target: String },

    /// Piecewise-quadratic volume function of one valuation, with optional
    /// seeded spot samples.
    Volume {
        pair: String,
        divisor: String,
        /// Sample the volume at eight pseudorandom fractions of the
        /// vanishing threshold, deterministically from this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Grid {
    Eighths,
    Sixteenths,
}

enum CliError {
    /// Malformed input: exit code 2.
    Usage(String),
    /// A computation refused or failed: exit code 1.
    Run(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn run_failure(msg: impl std::fmt::Display) -> CliError {
    CliError::Run(msg.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Beta { pair, divisor } => run_beta(&cli, pair, divisor),
        Command::Sweep {
            family,
            grid,
            parallel,
        } => run_sweep(&cli, family, *grid, *parallel),
        Command::Reproduce { target } => run_reproduce(&cli, target),
        Command::Volume {
            pair,
            divisor,
            seed,
        } => run_volume(&cli, pair, divisor, *seed),
    }
}

// ---------------------------------------------------------------------------
// Input parsing

/// Splits `k1=v1,k2=v2,…` into a map, rejecting duplicates.
fn parse_key_values(rest: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for part in rest.split(',').filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| usage(format!("expected key=value, got '{part}'")))?;
        if map.insert(key.trim().to_string(), value.trim().to_string()).is_some() {
            return Err(usage(format!("duplicate key '{key}'")));
        }
    }
    Ok(map)
}

fn take_rat(
    map: &mut BTreeMap<String, String>,
    key: &str,
    default: Option<Rat>,
) -> Result<Rat, CliError> {
    match map.remove(key) {
        Some(text) => {
            parse_rat(&text).map_err(|e| usage(format!("bad value for '{key}': {e}")))
        }
        None => default.ok_or_else(|| usage(format!("missing required key '{key}'"))),
    }
}

fn reject_leftovers(map: &BTreeMap<String, String>, context: &str) -> Result<(), CliError> {
    if let Some(key) = map.keys().next() {
        return Err(usage(format!("unknown key '{key}' in {context} spec")));
    }
    Ok(())
}

fn parse_pair_spec(spec: &str) -> Result<Pair, CliError> {
    let (family, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let mut kv = parse_key_values(rest)?;
    let pair = match family {
        "p2" => Pair::PlaneConic {
            delta: take_rat(&mut kv, "delta", Some(int(0)))?,
        },
        "p1xp1" => Pair::QuadricDiagonal {
            delta: take_rat(&mut kv, "delta", Some(int(0)))?,
        },
        "fm" => {
            let m_text = kv
                .remove("m")
                .ok_or_else(|| usage("the fm family needs m=<ruling index>"))?;
            let m: u32 = m_text
                .parse()
                .map_err(|_| usage(format!("bad ruling index '{m_text}'")))?;
            Pair::Hirzebruch {
                m,
                section: take_rat(&mut kv, "d1", Some(int(0)))?,
                fibre: take_rat(&mut kv, "d2", Some(int(0)))?,
            }
        }
        "f1einf" => Pair::HirzebruchPositiveSection {
            delta: take_rat(&mut kv, "delta", Some(int(0)))?,
        },
        "twolines" => Pair::TwoLines {
            first: take_rat(&mut kv, "d1", Some(int(0)))?,
            second: take_rat(&mut kv, "d2", Some(int(0)))?,
        },
        other => {
            return Err(usage(format!(
                "unknown pair family '{other}'; expected p2, p1xp1, fm, f1einf, or twolines"
            )))
        }
    };
    reject_leftovers(&kv, "pair")?;
    pair.validate().map_err(|e| usage(e.to_string()))?;
    Ok(pair)
}

enum DivisorSpec {
    Conic,
    Diagonal,
    DiagonalContact,
    Toric(u64, u64, ConicContact),
    M1(bool),
    FreeTail(usize),
    CubicNine,
    NegativeSection,
    PositiveSection,
    Fibre,
    FirstLine,
    SecondLine,
    Curve(Vec<u32>),
}

fn parse_contact(text: &str) -> Result<ConicContact, CliError> {
    match text {
        "disjoint" => Ok(ConicContact::Disjoint),
        "transversal" => Ok(ConicContact::Transversal),
        "tangent" => Ok(ConicContact::Tangent),
        other => Err(usage(format!(
            "unknown contact '{other}'; expected disjoint, transversal, or tangent"
        ))),
    }
}

fn parse_divisor_spec(spec: &str) -> Result<DivisorSpec, CliError> {
    let (head, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let no_args = |value: DivisorSpec| {
        if rest.is_empty() {
            Ok(value)
        } else {
            Err(usage(format!("divisor '{head}' takes no arguments")))
        }
    };
    match head {
        "conic" => no_args(DivisorSpec::Conic),
        "diagonal" => no_args(DivisorSpec::Diagonal),
        "diagonal-contact" => no_args(DivisorSpec::DiagonalContact),
        "cubic-nine" => no_args(DivisorSpec::CubicNine),
        "e" => no_args(DivisorSpec::NegativeSection),
        "einf" => no_args(DivisorSpec::PositiveSection),
        "fibre" => no_args(DivisorSpec::Fibre),
        "l1" => no_args(DivisorSpec::FirstLine),
        "l2" => no_args(DivisorSpec::SecondLine),
        "m1" => match rest {
            "on" => Ok(DivisorSpec::M1(true)),
            "off" => Ok(DivisorSpec::M1(false)),
            other => Err(usage(format!(
                "the m1 divisor needs a position, m1:on or m1:off (got '{other}')"
            ))),
        },
        "line-free-tail" => {
            let m: usize = rest
                .parse()
                .map_err(|_| usage(format!("bad chain length '{rest}'")))?;
            Ok(DivisorSpec::FreeTail(m))
        }
        "toric" => {
            let (weights, contact) = match rest.split_once(':') {
                Some((w, c)) => (w, parse_contact(c)?),
                None => (rest, ConicContact::Disjoint),
            };
            let parts: Vec<&str> = weights.split(',').collect();
            if parts.len() != 2 {
                return Err(usage(format!(
                    "the toric divisor needs two weights, toric:a,b (got '{weights}')"
                )));
            }
            let a: u64 = parts[0]
                .trim()
                .parse()
                .map_err(|_| usage(format!("bad weight '{}'", parts[0])))?;
            let b: u64 = parts[1]
                .trim()
                .parse()
                .map_err(|_| usage(format!("bad weight '{}'", parts[1])))?;
            Ok(DivisorSpec::Toric(a, b, contact))
        }
        "curve" => {
            let components: Result<Vec<u32>, _> =
                rest.split(',').map(|p| p.trim().parse::<u32>()).collect();
            let components =
                components.map_err(|_| usage(format!("bad curve degree '{rest}'")))?;
            if components.is_empty() || components.len() > 2 {
                return Err(usage(
                    "the curve divisor needs curve:d (plane) or curve:p,q (quadric)",
                ));
            }
            Ok(DivisorSpec::Curve(components))
        }
        other => Err(usage(format!("unknown divisor spec '{other}'"))),
    }
}

/// Joins a pair with a divisor spec, rejecting combinations that are not
/// defined and mapping construction errors to usage errors.
fn build_case(pair: &Pair, spec: &DivisorSpec) -> Result<DivisorCase, CliError> {
    let incompatible = |what: &str| {
        usage(format!(
            "divisor '{what}' is not defined on the {} family",
            pair.family_key()
        ))
    };
    let from_build = |r: Result<DivisorCase, divisors::BuildError>| {
        r.map_err(|e| usage(e.to_string()))
    };
    let bare_plane = |delta: &Rat, what: &str| {
        if delta == &int(0) {
            Ok(())
        } else {
            Err(usage(format!(
                "the {what} chain is recorded on the bare plane; use p2 or p2:delta=0"
            )))
        }
    };
    match (pair, spec) {
        (Pair::PlaneConic { delta }, DivisorSpec::Conic) => {
            from_build(divisors::boundary_conic(delta))
        }
        (Pair::PlaneConic { delta }, DivisorSpec::M1(true)) => {
            from_build(divisors::point_on_conic(delta))
        }
        (Pair::PlaneConic { delta }, DivisorSpec::M1(false)) => {
            from_build(divisors::generic_point(delta))
        }
        (Pair::PlaneConic { delta }, DivisorSpec::Toric(a, b, contact)) => {
            from_build(divisors::plane_monomial_case(*a, *b, *contact, delta))
        }
        (Pair::PlaneConic { delta }, DivisorSpec::FreeTail(m)) => {
            bare_plane(delta, "line-tail")?;
            from_build(divisors::line_free_tail_case(*m))
        }
        (Pair::PlaneConic { delta }, DivisorSpec::CubicNine) => {
            bare_plane(delta, "nine-point pencil")?;
            from_build(divisors::cubic_nine_case())
        }
        (Pair::PlaneConic { delta }, DivisorSpec::Curve(components)) => {
            if components.len() != 1 {
                return Err(usage("plane curves take a single degree, curve:d"));
            }
            from_build(divisors::plane_curve_case(components[0], delta))
        }
        (Pair::QuadricDiagonal { delta }, DivisorSpec::Diagonal) => {
            from_build(divisors::boundary_diagonal(delta))
        }
        (Pair::QuadricDiagonal { delta }, DivisorSpec::DiagonalContact) => {
            from_build(divisors::diagonal_contact_case(delta))
        }
        (Pair::QuadricDiagonal { delta }, DivisorSpec::M1(true)) => {
            from_build(divisors::point_on_diagonal(delta))
        }
        (Pair::QuadricDiagonal { delta }, DivisorSpec::M1(false)) => {
            from_build(divisors::quadric_generic_point(delta))
        }
        (Pair::QuadricDiagonal { delta }, DivisorSpec::Toric(a, b, contact)) => {
            from_build(divisors::quadric_monomial_case(*a, *b, *contact, delta))
        }
        (Pair::QuadricDiagonal { delta }, DivisorSpec::Curve(components)) => {
            if components.len() != 2 {
                return Err(usage("quadric curves take a bidegree, curve:p,q"));
            }
            from_build(divisors::quadric_curve_case(
                components[0],
                components[1],
                delta,
            ))
        }
        (Pair::Hirzebruch { m, section, fibre }, DivisorSpec::NegativeSection) => {
            from_build(divisors::negative_section_case(*m, section, fibre))
        }
        (Pair::Hirzebruch { m, section, fibre }, DivisorSpec::Fibre) => {
            from_build(divisors::boundary_fibre_case(*m, section, fibre))
        }
        (Pair::HirzebruchPositiveSection { delta }, DivisorSpec::NegativeSection) => {
            from_build(divisors::f1_negative_section_case(delta))
        }
        (Pair::HirzebruchPositiveSection { delta }, DivisorSpec::PositiveSection) => {
            from_build(divisors::f1_positive_section_case(delta))
        }
        (Pair::TwoLines { first, second }, DivisorSpec::FirstLine) => {
            from_build(divisors::first_line_case(first, second))
        }
        (Pair::TwoLines { first, second }, DivisorSpec::SecondLine) => {
            from_build(divisors::second_line_case(first, second))
        }
        (_, DivisorSpec::Conic) => Err(incompatible("conic")),
        (_, DivisorSpec::Diagonal) => Err(incompatible("diagonal")),
        (_, DivisorSpec::DiagonalContact) => Err(incompatible("diagonal-contact")),
        (_, DivisorSpec::Toric(..)) => Err(incompatible("toric")),
        (_, DivisorSpec::M1(_)) => Err(incompatible("m1")),
        (_, DivisorSpec::FreeTail(_)) => Err(incompatible("line-free-tail")),
        (_, DivisorSpec::CubicNine) => Err(incompatible("cubic-nine")),
        (_, DivisorSpec::NegativeSection) => Err(incompatible("e")),
        (_, DivisorSpec::PositiveSection) => Err(incompatible("einf")),
        (_, DivisorSpec::Fibre) => Err(incompatible("fibre")),
        (_, DivisorSpec::FirstLine) => Err(incompatible("l1")),
        (_, DivisorSpec::SecondLine) => Err(incompatible("l2")),
        (_, DivisorSpec::Curve(_)) => Err(incompatible("curve")),
    }
}

// ---------------------------------------------------------------------------
// Output plumbing

fn csv_text(
    header: &[&str],
    records: impl IntoIterator<Item = Vec<String>>,
) -> Result<String, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).map_err(run_failure)?;
    for record in records {
        writer.write_record(&record).map_err(run_failure)?;
    }
    let bytes = writer.into_inner().map_err(run_failure)?;
    String::from_utf8(bytes).map_err(run_failure)
}

fn write_output(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| run_failure(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Subcommands

fn run_beta(cli: &Cli, pair_spec: &str, divisor_spec: &str) -> Result<(), CliError> {
    let pair = parse_pair_spec(pair_spec)?;
    let spec = parse_divisor_spec(divisor_spec)?;
    let case = build_case(&pair, &spec)?;
    let report = if cli.allow_uncertified {
        beta_report(&case)
    } else {
        beta_report_strict(&case)
    }
    .map_err(run_failure)?;
    let text = match cli.format {
        Format::Csv => csv_text(
            &beta_csv_header(),
            std::iter::once(beta_csv_record(&report, "")),
        )?,
        Format::Json => format!("{}\n", to_json_pretty(&report)),
    };
    write_output(cli, &text)
}

fn sweep_pairs(family_spec: &str, grid: Grid) -> Result<Vec<Pair>, CliError> {
    let unit = match grid {
        Grid::Eighths => coefficient_grid(0, 7, 8),
        Grid::Sixteenths => coefficient_grid(0, 15, 16),
    };
    let (family, rest) = family_spec.split_once(':').unwrap_or((family_spec, ""));
    let mut kv = parse_key_values(rest)?;
    let pairs = match family {
        "plane" => {
            let deltas = match grid {
                Grid::Eighths => coefficient_grid(0, 6, 8),
                Grid::Sixteenths => coefficient_grid(0, 12, 16),
            };
            deltas
                .into_iter()
                .map(|delta| Pair::PlaneConic { delta })
                .collect()
        }
        "quadric" => {
            let deltas = match grid {
                Grid::Eighths => coefficient_grid(0, 4, 8),
                Grid::Sixteenths => coefficient_grid(0, 8, 16),
            };
            deltas
                .into_iter()
                .map(|delta| Pair::QuadricDiagonal { delta })
                .collect()
        }
        "ruled" => {
            let m_text = kv
                .remove("m")
                .ok_or_else(|| usage("the ruled family needs m=<ruling index>"))?;
            let m: u32 = m_text
                .parse()
                .map_err(|_| usage(format!("bad ruling index '{m_text}'")))?;
            hirzebruch_pairs(m, &unit)
        }
        "f1einf" => unit
            .into_iter()
            .map(|delta| Pair::HirzebruchPositiveSection { delta })
            .collect(),
        "twolines" => two_line_pairs(&unit),
        other => {
            return Err(usage(format!(
                "unknown sweep family '{other}'; expected plane, quadric, ruled:m=N, f1einf, \
                 or twolines"
            )))
        }
    };
    reject_leftovers(&kv, "family")?;
    Ok(pairs)
}

fn run_sweep(cli: &Cli, family_spec: &str, grid: Grid, parallel: bool) -> Result<(), CliError> {
    let pairs = sweep_pairs(family_spec, grid)?;
    if pairs.is_empty() {
        return Err(CliError::Run(format!(
            "the sweep grid for '{family_spec}' is empty: no coefficient choice keeps the \
             polarisation ample"
        )));
    }
    let verdicts: Vec<PairVerdict> = if parallel {
        if let Ok(workers) = std::env::var("KSTAB_WORKERS") {
            let n: usize = workers
                .parse()
                .map_err(|_| usage(format!("bad KSTAB_WORKERS value '{workers}'")))?;
            // Ignore the error when a global pool already exists.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        use rayon::prelude::*;
        // Indexed collect keeps the input order, so parallel output is
        // byte-identical to the sequential one.
        pairs
            .par_iter()
            .map(classify_pair)
            .collect::<Result<Vec<_>, _>>()
            .map_err(run_failure)?
    } else {
        pairs
            .iter()
            .map(classify_pair)
            .collect::<Result<Vec<_>, _>>()
            .map_err(run_failure)?
    };
    let text = match cli.format {
        Format::Csv => csv_text(
            &beta_csv_header(),
            verdicts.iter().flat_map(verdict_csv_records),
        )?,
        Format::Json => format!("{}\n", to_json_pretty(&verdicts)),
    };
    write_output(cli, &text)
}

fn run_reproduce(cli: &Cli, target: &str) -> Result<(), CliError> {
    let repro = reproduce(target).map_err(|e| match e {
        ReproduceError::UnknownTarget(_) => usage(e.to_string()),
        other => run_failure(other),
    })?;
    let text = match cli.format {
        Format::Csv => {
            let rows = repro.rows.iter().map(repro_row_record);
            let checks = repro.checks.iter().map(repro_check_record);
            csv_text(&repro_csv_header(), rows.chain(checks))?
        }
        Format::Json => format!("{}\n", to_json_pretty(&repro)),
    };
    write_output(cli, &text)?;
    if !repro.all_match() {
        return Err(CliError::Run(format!(
            "reproduction mismatch: {}",
            repro
                .first_failure()
                .unwrap_or_else(|| "unknown failure".to_string())
        )));
    }
    Ok(())
}

fn run_volume(
    cli: &Cli,
    pair_spec: &str,
    divisor_spec: &str,
    seed: Option<u64>,
) -> Result<(), CliError> {
    let pair = parse_pair_spec(pair_spec)?;
    let spec = parse_divisor_spec(divisor_spec)?;
    let case = build_case(&pair, &spec)?;
    let vf = volume_sweep(&case.input).map_err(run_failure)?;

    const SAMPLE_DENOMINATOR: i64 = 1 << 16;
    let samples: Vec<(Rat, Rat)> = match seed {
        Some(seed) => {
            let mut rng = StdRng::seed_from_u64(seed);
            (0..8)
                .map(|_| {
                    let k = rng.gen_range(0..=SAMPLE_DENOMINATOR);
                    let x = vf.vanishing_threshold()
                        * Rat::new(k.into(), SAMPLE_DENOMINATOR.into());
                    let value = vf.eval(&x);
                    (x, value)
                })
                .collect()
        }
        None => Vec::new(),
    };

    let text = match cli.format {
        Format::Csv => {
            let header = [
                "record",
                "index",
                "start",
                "end",
                "support",
                "constant",
                "linear",
                "quadratic",
                "value",
            ];
            let blank = String::new;
            let mut records: Vec<Vec<String>> = vec![
                vec![
                    "nef-threshold".into(),
                    blank(),
                    blank(),
                    blank(),
                    blank(),
                    blank(),
                    blank(),
                    blank(),
                    format_rat(vf.nef_threshold()),
                ],
                vec![
                    "vanishing-threshold".into(),
                    blank(),
                    blank(),
                    blank(),
                    blank(),
                    blank(),
                    blank(),
                    blank(),
                    format_rat(vf.vanishing_threshold()),
                ],
            ];
            for (i, piece) in vf.pieces().iter().enumerate() {
                records.push(vec![
                    "piece".into(),
                    i.to_string(),
                    format_rat(&piece.start),
                    format_rat(&piece.end),
                    vf.support_labels(i).join("+"),
                    format_rat(&piece.coeffs[0]),
                    format_rat(&piece.coeffs[1]),
                    format_rat(&piece.coeffs[2]),
                    blank(),
                ]);
            }
            if let Some(seed) = seed {
                records.push(vec![
                    "seed".into(),
                    seed.to_string(),
                    blank(),
                    blank(),
                    blank(),
                    blank(),
                    blank(),
                    blank(),
                    blank(),
                ]);
            }
            for (i, (x, value)) in samples.iter().enumerate() {
                records.push(vec![
                    "sample".into(),
                    i.to_string(),
                    format_rat(x),
                    blank(),
                    blank(),
                    blank(),
                    blank(),
                    blank(),
                    format_rat(value),
                ]);
            }
            csv_text(&header, records)?
        }
        Format::Json => {
            let pieces: Vec<serde_json::Value> = vf
                .pieces()
                .iter()
                .enumerate()
                .map(|(i, piece)| {
                    json!({
                        "start": ExactValue::of(&piece.start),
                        "end": ExactValue::of(&piece.end),
                        "support": vf.support_labels(i),
                        "constant": ExactValue::of(&piece.coeffs[0]),
                        "linear": ExactValue::of(&piece.coeffs[1]),
                        "quadratic": ExactValue::of(&piece.coeffs[2]),
                    })
                })
                .collect();
            let samples: Vec<serde_json::Value> = samples
                .iter()
                .map(|(x, value)| {
                    json!({
                        "x": ExactValue::of(x),
                        "value": ExactValue::of(value),
                    })
                })
                .collect();
            let document = json!({
                "divisor": case.id,
                "family": pair.family_key(),
                "boundary": pair.boundary_label(),
                "nef_threshold": ExactValue::of(vf.nef_threshold()),
                "vanishing_threshold": ExactValue::of(vf.vanishing_threshold()),
                "polarisation_square": ExactValue::of(vf.polarisation_square()),
                "pieces": pieces,
                "seed": seed,
                "samples": samples,
            });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&document).map_err(run_failure)?
            )
        }
    };
    write_output(cli, &text)
}
