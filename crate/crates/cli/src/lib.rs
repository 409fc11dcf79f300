//! Library side of the `topsym` command: argument types, command dispatch
//! and exit-status mapping.

pub mod report;
pub mod space_file;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;
use topsym_core::complexes::relative_betti;
use topsym_core::exactness::mayer_vietoris_check;
use topsym_core::symmetry::factor2_check;
use topsym_core::{
    analyze_action, build_matching, builtin_example, lefschetz_duality_check, les_exactness_check,
    morse_betti, truncated_double, AnalyzeOptions, BoundarySplit, CheckStatus, ComplexPair,
    SeedOrder, SimplicialComplex, TopologyError,
};

use report::{AnalyzeJson, SuiteResult, VerifyJson};
pub use space_file::{parse_space_file, SpaceFile};

pub const EXIT_OK: u8 = 0;
pub const EXIT_ASSERTION: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_IDENTITY: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed space file at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("cannot read {path}: {message}")]
    Io { path: PathBuf, message: String },

    #[error(transparent)]
    Topology(#[from] TopologyError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Topology(TopologyError::Internal(_)) => EXIT_IDENTITY,
            _ => EXIT_INPUT,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "topsym",
    version,
    about = "Symmetry verdicts and homology identity checks for split simplicial domains"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SpaceArgs {
    /// Space file path, or the name of a built-in example
    pub space: String,
    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,
    /// Reject complexes that are not pseudomanifolds
    #[arg(long)]
    pub manifold: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Betti tables of (W, P) and (W, Nn) with symmetry verdicts
    Analyze {
        #[command(flatten)]
        space: SpaceArgs,
        /// Also report tables rolled up modulo 2N
        #[arg(long = "mod", value_name = "N")]
        modulus: Option<usize>,
        /// Exit with status 1 unless every (W, P) verdict is symmetric
        #[arg(long)]
        assert_symmetric: bool,
    },
    /// Write a built-in example as a space file
    Example {
        name: String,
        /// Output path; standard output when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run duality, exact-sequence, Mayer-Vietoris, factor-2 and Morse checks
    Verify {
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Write the truncated double as a space file
    Double {
        space: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Resolves a path to a space file, falling back to the built-in catalog.
pub fn load_space(arg: &str, require_manifold: bool) -> Result<(String, BoundarySplit), CliError> {
    let path = Path::new(arg);
    let (name, split) = if path.exists() {
        let bytes = std::fs::read(path).map_err(|e| CliError::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        let file = parse_space_file(&bytes)?;
        let split = file.to_split()?;
        (file.name, split)
    } else {
        (arg.to_string(), builtin_example(arg)?.into_split())
    };
    if require_manifold {
        split.complex().validate_pseudomanifold()?;
    }
    Ok((name, split))
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let io_err = |path: &Path, e: std::io::Error| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    };
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| io_err(path, e)),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| io_err(Path::new("<stdout>"), e)),
    }
}

/// One line per top-level field, each value written compactly.
pub fn to_json_lines<T: serde::Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("value serializes");
    let serde_json::Value::Object(map) = value else {
        return value.to_string() + "\n";
    };
    let fields: Vec<String> = map
        .iter()
        .map(|(k, v)| format!("  {}: {}", serde_json::Value::from(k.as_str()), v))
        .collect();
    format!("{{\n{}\n}}\n", fields.join(",\n"))
}

fn status(ok: bool) -> CheckStatus {
    if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    }
}

const MORSE_SEEDS: u64 = 10;

/// The full identity suite on one split.
pub fn verify_split(name: &str, split: &BoundarySplit) -> Result<VerifyJson, CliError> {
    let w = split.complex();
    let mut pairs = Vec::new();
    for (label, sub) in [
        ("P", split.positive().clone()),
        ("Nn", split.negative().clone()),
        ("empty", SimplicialComplex::new()),
    ] {
        pairs.push((label, ComplexPair::new(w.clone(), sub)?));
    }
    let mut suites = Vec::new();

    let duality = match lefschetz_duality_check(split) {
        Ok(r) => SuiteResult {
            suite: "duality",
            status: status(r.passed),
            detail: r
                .rows
                .iter()
                .map(|row| format!("{}:{}/{}", row.degree, row.negative, row.dual_positive))
                .collect::<Vec<_>>()
                .join(" "),
        },
        Err(TopologyError::NotAPseudomanifold { reason }) => SuiteResult {
            suite: "duality",
            status: CheckStatus::NotApplicable,
            detail: reason,
        },
        Err(e) => return Err(e.into()),
    };
    suites.push(duality);

    let mut les_failures = Vec::new();
    for (label, pair) in &pairs {
        let report = les_exactness_check(pair)?;
        if let Some(i) = report.first_failure {
            les_failures.push(format!("(W, {label}) at {}", report.slots[i].group));
        }
    }
    suites.push(SuiteResult {
        suite: "exact-sequence",
        status: status(les_failures.is_empty()),
        detail: if les_failures.is_empty() {
            "pairs (W, P), (W, Nn), (W, empty)".into()
        } else {
            les_failures.join("; ")
        },
    });

    let double = truncated_double(split)?;
    let mv = mayer_vietoris_check(
        &double.complex,
        &double.copy_a,
        &double.copy_b,
        &double.region_a,
        &double.region_b,
    )?;
    suites.push(SuiteResult {
        suite: "mayer-vietoris",
        status: status(mv.holds()),
        detail: format!("{:?}", mv.outcome),
    });

    let f2 = factor2_check(split)?;
    suites.push(SuiteResult {
        suite: "factor-2",
        status: f2.status,
        detail: format!(
            "doubled {:?}, expected {:?}",
            f2.doubled.hull_entries(),
            f2.expected.hull_entries()
        ),
    });

    let mut morse_failures = Vec::new();
    for (label, pair) in &pairs {
        let expected = relative_betti(pair);
        let orders = std::iter::once(SeedOrder::Lexicographic)
            .chain((0..MORSE_SEEDS).map(SeedOrder::Shuffled));
        for order in orders {
            let got = morse_betti(&build_matching(pair, &order)?)?;
            if !got.same_dims(&expected) {
                morse_failures.push(format!("(W, {label}) with {order:?}"));
            }
        }
    }
    suites.push(SuiteResult {
        suite: "morse",
        status: status(morse_failures.is_empty()),
        detail: if morse_failures.is_empty() {
            format!("{} orders on each of 3 pairs", MORSE_SEEDS + 1)
        } else {
            morse_failures.join("; ")
        },
    });

    let passed = suites.iter().all(|s| s.status != CheckStatus::Fail);
    Ok(VerifyJson {
        name: name.to_string(),
        suites,
        passed,
    })
}

/// Runs one command, writing its report to `out`; returns the exit status.
pub fn run(command: &Command, out: &mut dyn Write) -> Result<u8, CliError> {
    match command {
        Command::Analyze {
            space,
            modulus,
            assert_symmetric,
        } => {
            let (name, split) = load_space(&space.space, space.manifold)?;
            let report = analyze_action(&split, &AnalyzeOptions { modulus: *modulus })?;
            let text = if space.json {
                to_json_lines(&AnalyzeJson::new(&name, &report))
            } else {
                report::analyze_text(&name, &report)
            };
            emit(&text, None, out)?;
            let symmetric = report.verdict_positive.symmetric
                && report.rolled.as_ref().is_none_or(|r| r.verdict.symmetric);
            Ok(if *assert_symmetric && !symmetric {
                EXIT_ASSERTION
            } else {
                EXIT_OK
            })
        }
        Command::Example { name, output } => {
            let split = builtin_example(name)?.into_split();
            emit(
                &SpaceFile::from_split(name, &split).to_json(),
                output.as_deref(),
                out,
            )?;
            Ok(EXIT_OK)
        }
        Command::Verify { space } => {
            let (name, split) = load_space(&space.space, space.manifold)?;
            let report = verify_split(&name, &split)?;
            let text = if space.json {
                to_json_lines(&report)
            } else {
                report::verify_text(&report)
            };
            emit(&text, None, out)?;
            Ok(if report.passed {
                EXIT_OK
            } else {
                EXIT_IDENTITY
            })
        }
        Command::Double { space, output } => {
            let (name, split) = load_space(space, false)?;
            let double = truncated_double(&split)?;
            // the copies of P become the positive region of the double
            let doubled = if double.minus.is_empty() && double.plus.is_empty() {
                BoundarySplit::with_empty_positive(double.complex)
            } else {
                BoundarySplit::new(double.complex, double.minus, double.plus)?
            };
            let file = SpaceFile::from_split(&format!("{name}_double"), &doubled);
            emit(&file.to_json(), output.as_deref(), out)?;
            Ok(EXIT_OK)
        }
    }
}
