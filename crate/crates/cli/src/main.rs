use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hamloc::algebra::rational::{format_rational, parse_rational, to_decimal, Rational};
use hamloc::algebra::PiecewisePolynomialMeasure;
use hamloc::dh::{cut_measure, dh_measure};
use hamloc::format::{parse_space, write_chambers, write_character, write_measure, write_space};
use hamloc::quantization::{
    certifying_range, character, cut_character, verify_rr_identity, PrequantSpace,
};
use hamloc::reduction::{chamber_decomposition, jk_pairing, reduced_volume};
use hamloc::spaces::{
    build_projective, build_projective_torus, find_generic_direction, restrict_to_circle,
    validate_consistency, HamiltonianSpaceData,
};
use hamloc::Error;

/// Number of fractional digits in CSV output.
const DECIMALS_VAR: &str = "HAMLOC_CSV_DECIMALS";
const DEFAULT_DECIMALS: usize = 12;

/// Exit status when a command ran but its check did not hold.
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_INCONSISTENT: u8 = 3;
const EXIT_NON_REGULAR: u8 = 4;
const EXIT_NON_GENERIC: u8 = 5;
const EXIT_UNSUPPORTED: u8 = 6;

#[derive(Debug, Parser)]
#[command(
    name = "hamloc",
    version,
    about = "Exact invariants of Hamiltonian circle and torus actions from fixed-point data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that the fixed-point data can come from a compact space
    Validate { file: PathBuf },
    /// Duistermaat-Heckman measure, exact (json) or sampled (csv)
    Dh {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = DhFormat::Json)]
        format: DhFormat,
        /// Number of CSV intervals; N+1 rows are emitted
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
        samples: u32,
    },
    /// Volume of the reduced space at a regular level
    Volume {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        at: Rational,
    },
    /// Jeffrey-Kirwan pairing of the top power at a regular level
    Jk {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        at: Rational,
    },
    /// Chamber polynomials of the DH density
    Chambers { file: PathBuf },
    /// Equivariant index character of integral circle data
    Character { file: PathBuf },
    /// Compare weight multiplicities with toric partition counts
    Rr {
        file: PathBuf,
        /// First level (default: start of the certifying range)
        #[arg(long, allow_hyphen_values = true)]
        from: Option<i64>,
        /// Last level (default: end of the certifying range)
        #[arg(long, allow_hyphen_values = true)]
        to: Option<i64>,
    },
    /// Symplectic cut below a regular level
    Cut {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        at: Rational,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a built-in example space
    #[command(subcommand)]
    Example(Example),
    /// Restrict a torus action to the circle generated by an integer vector
    Restrict {
        file: PathBuf,
        /// Comma-separated integers; a generic direction is chosen if omitted
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        xi: Option<Vec<i64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum Example {
    /// Projective space with circle weights a_0..a_d
    #[command(name = "cp_d")]
    CpD {
        #[arg(
            long,
            required = true,
            allow_hyphen_values = true,
            value_delimiter = ','
        )]
        weights: Vec<i64>,
        #[arg(long, default_value = "1", value_parser = rational_arg)]
        scale: Rational,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Projective space with the standard rank-d torus action
    #[command(name = "cp_torus")]
    CpTorus {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "1", value_parser = rational_arg)]
        scale: Rational,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DhFormat {
    Json,
    Csv,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    File { path: PathBuf, source: Error },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Usage(_) => EXIT_PARSE,
            CliError::File { source, .. } | CliError::Core(source) => exit_code(source),
        }
    }
}

fn exit_code(error: &Error) -> u8 {
    match error {
        Error::Parse(_)
        | Error::InvalidData(_)
        | Error::RankMismatch { .. }
        | Error::DimensionMismatch { .. }
        | Error::RepeatedWeight(_)
        | Error::IndexOutOfRange { .. }
        | Error::HorizonBelowBase { .. } => EXIT_PARSE,
        Error::Inconsistent { .. } | Error::InexactDivision | Error::DivisionByZero => {
            EXIT_INCONSISTENT
        }
        Error::NonRegularPoint(_) | Error::NonRegularCut(_) | Error::NonRegularLevel { .. } => {
            EXIT_NON_REGULAR
        }
        Error::NonGenericDirection { .. } => EXIT_NON_GENERIC,
        Error::NotCircle(_)
        | Error::NotQuasiFree { .. }
        | Error::NotIntegral { .. }
        | Error::AtomicMeasure => EXIT_UNSUPPORTED,
    }
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn read_space(path: &Path) -> Result<HamiltonianSpaceData, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_space(&text).map_err(|source| CliError::File {
        path: path.to_owned(),
        source,
    })
}

/// Writes `text` to `out`, or returns it for stdout.
fn emit(text: String, out: Option<&Path>) -> Result<String, CliError> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|source| CliError::Io {
                path: path.to_owned(),
                source,
            })?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn csv_decimals() -> Result<usize, CliError> {
    match std::env::var(DECIMALS_VAR) {
        Ok(v) => v.parse().map_err(|_| {
            CliError::Usage(format!(
                "{DECIMALS_VAR} must be a non-negative integer, found `{v}`"
            ))
        }),
        Err(_) => Ok(DEFAULT_DECIMALS),
    }
}

/// `n + 1` uniformly spaced levels across the support. A level landing on a
/// breakpoint moves half a step toward the interior (downward for the last
/// one), halving the offset until it is regular.
fn csv_levels(mu: &PiecewisePolynomialMeasure, n: u32) -> Vec<Rational> {
    let Some((lo, hi)) = mu.support() else {
        return Vec::new();
    };
    let step = (hi - lo) / Rational::from_integer(n.into());
    let on_breakpoint = |t: &Rational| mu.breakpoints().binary_search(t).is_ok();
    (0..=n)
        .map(|i| {
            let t = lo + &step * Rational::from_integer(i.into());
            if !on_breakpoint(&t) {
                return t;
            }
            let mut offset = &step / Rational::from_integer(2.into());
            loop {
                let moved = if i == n { &t - &offset } else { &t + &offset };
                if !on_breakpoint(&moved) {
                    return moved;
                }
                offset /= Rational::from_integer(2.into());
            }
        })
        .collect()
}

fn dh_csv(mu: &PiecewisePolynomialMeasure, n: u32) -> Result<String, CliError> {
    let places = csv_decimals()?;
    let mut out = String::from("t,density\n");
    for t in csv_levels(mu, n) {
        let density = mu.eval_density(&t)?;
        out.push_str(&format!(
            "{},{}\n",
            to_decimal(&t, places),
            to_decimal(&density, places)
        ));
    }
    Ok(out)
}

fn json_value(text: &str) -> serde_json::Value {
    serde_json::from_str(text).expect("library output is valid JSON")
}

fn rr_table(
    ps: &PrequantSpace,
    from: Option<i64>,
    to: Option<i64>,
) -> Result<(String, bool), CliError> {
    let (lo, hi) = match (from, to) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => {
            let (lo, hi) = certifying_range(ps)?;
            (from.unwrap_or(lo), to.unwrap_or(hi))
        }
    };
    if lo > hi {
        return Err(CliError::Usage(format!("empty level range {lo}..={hi}")));
    }
    let report = verify_rr_identity(ps, lo, hi)?;
    let mut out = format!(
        "{:>8}  {:>14}  {:>14}\n",
        "level", "multiplicity", "partition_sum"
    );
    for row in &report.rows {
        out.push_str(&format!(
            "{:>8}  {:>14}  {:>14}\n",
            row.level, row.multiplicity, row.partition_sum
        ));
    }
    let passed = report.passed();
    out.push_str(if passed { "PASS\n" } else { "FAIL\n" });
    Ok((out, passed))
}

fn join(xi: &[i64]) -> String {
    xi.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

/// Runs a command, returning its stdout and whether its check held.
fn run(command: Command) -> Result<(String, bool), CliError> {
    match command {
        Command::Validate { file } => {
            let space = read_space(&file)?;
            let mut out = String::new();
            let circle = if space.torus_rank() > 1 {
                let xi = find_generic_direction(&space);
                out.push_str(&format!("restricted along xi = {}\n", join(&xi)));
                restrict_to_circle(&space, &xi)?
            } else {
                space
            };
            let report = validate_consistency(&circle)?;
            out.push_str(&format!("{report}\n"));
            Ok((out, report.passed()))
        }
        Command::Dh {
            file,
            format,
            samples,
        } => {
            let mu = dh_measure(&read_space(&file)?)?;
            let text = match format {
                DhFormat::Json => write_measure(&mu),
                DhFormat::Csv => dh_csv(&mu, samples)?,
            };
            Ok((text, true))
        }
        Command::Volume { file, at } => {
            let v = reduced_volume(&read_space(&file)?, &at)?;
            Ok((format!("{}\n", format_rational(&v)), true))
        }
        Command::Jk { file, at } => {
            let v = jk_pairing(&read_space(&file)?, &at)?;
            Ok((format!("{}\n", format_rational(&v)), true))
        }
        Command::Chambers { file } => {
            let chambers = chamber_decomposition(&read_space(&file)?)?;
            Ok((write_chambers(&chambers), true))
        }
        Command::Character { file } => {
            let ps = PrequantSpace::new(read_space(&file)?)?;
            Ok((write_character(&character(&ps)?)?, true))
        }
        Command::Rr { file, from, to } => {
            let ps = PrequantSpace::new(read_space(&file)?)?;
            rr_table(&ps, from, to)
        }
        Command::Cut { file, at, out } => {
            let space = read_space(&file)?;
            let measure = cut_measure(&space, &at)?;
            let mut doc = serde_json::Map::new();
            doc.insert("level".into(), format_rational(&at).into());
            doc.insert("measure".into(), json_value(&write_measure(&measure)));
            match PrequantSpace::new(space) {
                Ok(ps) => {
                    let chi = cut_character(&ps, &at)?;
                    doc.insert("character".into(), json_value(&write_character(&chi)?));
                }
                Err(Error::NotIntegral { .. }) => {}
                Err(e) => return Err(e.into()),
            }
            let mut text = serde_json::to_string_pretty(&doc).expect("documents serialize");
            text.push('\n');
            Ok((emit(text, out.as_deref())?, true))
        }
        Command::Example(example) => {
            let (space, out) = match example {
                Example::CpD {
                    weights,
                    scale,
                    out,
                } => (build_projective(&weights, &scale)?, out),
                Example::CpTorus { dim, scale, out } => (build_projective_torus(dim, &scale)?, out),
            };
            Ok((emit(write_space(&space), out.as_deref())?, true))
        }
        Command::Restrict { file, xi, out } => {
            let space = read_space(&file)?;
            let xi = xi.unwrap_or_else(|| find_generic_direction(&space));
            let circle = restrict_to_circle(&space, &xi)?;
            Ok((emit(write_space(&circle), out.as_deref())?, true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((stdout, passed)) => {
            print!("{stdout}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK_FAILED)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
