mod report;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;

use tileforge::attractor::{approximate_with, rasterize_with, Viewport};
use tileforge::connectivity::{
    check_level_connectivity_with, neighbor_set_bounded_with, pipeline_connected_digits,
    sufficient_condition_with,
};
use tileforge::digitset::{centered_digit_set_with, is_complete_residue_system, DigitSet};
use tileforge::jordan::{jordan_decompose, verify_similarity};
use tileforge::lattice::translation_lattice;
use tileforge::ratmath::{parse_rational, IntMatrix, Rational};
use tileforge::spectrum::is_dilation;
use tileforge::{ExecMode, TileError, DEFAULT_POINT_BUDGET};

const MAX_IMAGE_SIDE: usize = 16_384;
const BUDGET_ENV: &str = "TILEFORGE_BUDGET";

/// Exact-arithmetic analyzer for self-affine tiles.
///
/// Every command takes an integer matrix and prints a JSON report to
/// stdout. Reports are byte-identical across runs and thread counts
/// unless `--timings` is given.
#[derive(Parser)]
#[command(name = "tileforge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the spectrum, dilation status, and Jordan form of a matrix
    Analyze(CommonArgs),
    /// Compute the centered digit set and check it is a residue system
    Digits {
        #[command(flatten)]
        common: CommonArgs,
        /// Also write the digits as CSV to this path
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Compute an integer Jordan decomposition with a similarity check
    Jordan(CommonArgs),
    /// Run the hull-overlap connectivity test on the centered digit set
    Check {
        #[command(flatten)]
        common: CommonArgs,
        /// Also compute a bounded superset of the neighbor shifts
        #[arg(long)]
        neighbors: bool,
        /// Seed radius for --neighbors (default: the diameter bound)
        #[arg(long, value_name = "R", requires = "neighbors")]
        radius: Option<u64>,
    },
    /// Scan connectivity of the level sets D_1, ..., D_n
    Levels {
        #[command(flatten)]
        common: CommonArgs,
        /// Highest level to expand
        #[arg(long, default_value_t = 4, value_name = "N")]
        max_level: usize,
    },
    /// Rasterize a finite tile approximation to a binary PGM image
    Render {
        #[command(flatten)]
        common: CommonArgs,
        /// Recursion depth of the approximation
        #[arg(long, default_value_t = 6, value_name = "N")]
        depth: usize,
        /// Image dimensions
        #[arg(long, default_value = "256x256", value_name = "WxH")]
        size: String,
        /// Output PGM path
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Window "min_x,max_x,min_y,max_y" (default: padded bounding box)
        #[arg(long, value_name = "BOX", allow_hyphen_values = true)]
        viewport: Option<String>,
    },
    /// Build a connected digit set through the Jordan-form pipeline
    Pipeline {
        #[command(flatten)]
        common: CommonArgs,
        /// Also write the digits as CSV to this path
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// Square integer matrix: rows separated by ';' (e.g. "3,10;0,3")
    #[arg(long, value_name = "ROWS", allow_hyphen_values = true)]
    matrix: String,
    /// Run the enumeration kernels on a single thread
    #[arg(long)]
    sequential: bool,
    /// Append wall-clock timings to the report
    #[arg(long)]
    timings: bool,
}

impl CommonArgs {
    fn mode(&self) -> ExecMode {
        if self.sequential {
            ExecMode::Sequential
        } else {
            ExecMode::default()
        }
    }

    fn parse(&self) -> Result<IntMatrix, CliError> {
        parse_matrix(&self.matrix)
    }

    fn timings(&self, start: Instant) -> Option<report::TimingsJson> {
        self.timings.then(|| report::TimingsJson {
            total_ms: start.elapsed().as_secs_f64() * 1e3,
        })
    }
}

enum CliError {
    Input(String),
    Io(String, std::io::Error),
    Tile(TileError),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Io(..) => "io",
            CliError::Tile(e) => match e {
                TileError::Dimension { .. } => "dimension",
                TileError::NotSquare { .. } => "not-square",
                TileError::Singular => "singular",
                TileError::RankDeficient { .. } => "rank-deficient",
                TileError::NoSolution => "no-solution",
                TileError::NotRationalSpectrum { .. } => "not-rational-spectrum",
                TileError::NotDilation { .. } => "not-dilation",
                TileError::NonConvergence { .. } => "non-convergence",
                TileError::BudgetExceeded { .. } => "budget-exceeded",
                TileError::CertificateFailure { .. } => "certificate-failure",
                TileError::NotInvariant { .. } => "not-invariant",
            },
        }
    }

    /// 1: bad input or environment. 2: the matrix is outside what the
    /// implemented methods decide. 3: the point budget was exceeded.
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(..) => 1,
            CliError::Tile(e) => match e {
                TileError::NotRationalSpectrum { .. }
                | TileError::NotDilation { .. }
                | TileError::NonConvergence { .. }
                | TileError::CertificateFailure { .. }
                | TileError::NotInvariant { .. } => 2,
                TileError::BudgetExceeded { .. } => 3,
                _ => 1,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Io(path, e) => write!(f, "{path}: {e}"),
            CliError::Tile(e) => write!(f, "{e}"),
        }
    }
}

impl From<TileError> for CliError {
    fn from(e: TileError) -> Self {
        CliError::Tile(e)
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = run(cli.command) {
        let body = report::ErrorJson {
            error: report::ErrorBody {
                kind: err.kind(),
                message: err.to_string(),
            },
        };
        eprintln!("{}", serde_json::to_string(&body).expect("error report"));
        std::process::exit(err.exit_code());
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Analyze(common) => analyze(&common),
        Command::Digits { common, out } => digits(&common, out.as_deref()),
        Command::Jordan(common) => jordan(&common),
        Command::Check {
            common,
            neighbors,
            radius,
        } => check(&common, neighbors, radius),
        Command::Levels { common, max_level } => levels(&common, max_level),
        Command::Render {
            common,
            depth,
            size,
            out,
            viewport,
        } => render(&common, depth, &size, &out, viewport.as_deref()),
        Command::Pipeline { common, out } => pipeline(&common, out.as_deref()),
    }
}

fn analyze(common: &CommonArgs) -> Result<(), CliError> {
    let start = Instant::now();
    let a = common.parse()?;
    let dilation = is_dilation(&a)?;
    let decomposition = jordan_decompose(&a)?;
    let determinant = a.det()?;
    emit(&report::AnalyzeReport {
        matrix: report::matrix(&a),
        dimension: a.rows(),
        determinant: report::int(&determinant),
        characteristic_polynomial: report::vector(&dilation.eigen.char_poly),
        eigenvalues: dilation
            .eigen
            .eigenvalues
            .iter()
            .map(|(value, multiplicity)| report::EigenvalueJson {
                value: report::int(value),
                multiplicity: *multiplicity,
            })
            .collect(),
        dilation: dilation.dilation,
        offending_eigenvalue: dilation.offending.as_ref().map(report::int),
        jordan: report::jordan(&decomposition, verify_similarity(&a, &decomposition)),
        timings: common.timings(start),
    })
}

fn digits(common: &CommonArgs, out: Option<&Path>) -> Result<(), CliError> {
    let start = Instant::now();
    let a = common.parse()?;
    let digit_set = centered_digit_set_with(common.mode(), &a)?;
    let residue = is_complete_residue_system(&a, &digit_set);
    let determinant = a.det()?;
    let out = write_csv(out, &digit_set)?;
    emit(&report::DigitsReport {
        matrix: report::matrix(&a),
        dimension: a.rows(),
        determinant: report::int(&determinant),
        cardinality: digit_set.len(),
        provenance: digit_set.provenance().tag(),
        digits: report::digit_rows(&digit_set),
        residue: report::residue(&residue),
        out,
        timings: common.timings(start),
    })
}

fn jordan(common: &CommonArgs) -> Result<(), CliError> {
    let start = Instant::now();
    let a = common.parse()?;
    let decomposition = jordan_decompose(&a)?;
    emit(&report::JordanReport {
        matrix: report::matrix(&a),
        jordan: report::jordan(&decomposition, verify_similarity(&a, &decomposition)),
        timings: common.timings(start),
    })
}

fn check(common: &CommonArgs, neighbors: bool, radius: Option<u64>) -> Result<(), CliError> {
    let start = Instant::now();
    let a = common.parse()?;
    let sufficiency = sufficient_condition_with(common.mode(), &a)?;
    let neighbors = if neighbors {
        let set = neighbor_set_bounded_with(
            common.mode(),
            &a,
            &sufficiency.digit_set,
            radius.map(BigInt::from),
            budget()?,
        )?;
        Some(report::NeighborsJson {
            radius: report::int(&set.radius),
            count: set.vectors.len(),
            vectors: report::vectors(&set.vectors),
        })
    } else {
        None
    };
    emit(&report::CheckReport {
        matrix: report::matrix(&a),
        verdict: report::verdict(&sufficiency.verdict),
        lattice: sufficiency.lattice.as_ref().map(report::lattice),
        digit_count: sufficiency.digit_set.len(),
        digits: report::digit_rows(&sufficiency.digit_set),
        digit_connected: sufficiency.digit_connected,
        digit_match: sufficiency.digit_match,
        edge_checks: sufficiency.edge_checks.iter().map(report::edge_check).collect(),
        note: sufficiency.note.clone(),
        neighbors,
        timings: common.timings(start),
    })
}

fn levels(common: &CommonArgs, max_level: usize) -> Result<(), CliError> {
    let start = Instant::now();
    let a = common.parse()?;
    let digit_set = centered_digit_set_with(common.mode(), &a)?;
    let residue = is_complete_residue_system(&a, &digit_set);
    let lat = translation_lattice(&a, &digit_set)?;
    let levels = check_level_connectivity_with(
        common.mode(),
        &a,
        &digit_set,
        &lat,
        max_level,
        budget()?,
    )?;
    // A disconnected level rules the tile out only when the digits form a
    // complete residue system; an all-connected scan is evidence, not proof.
    let verdict = match levels.iter().find(|l| !l.connected) {
        Some(l) => report::VerdictJson {
            status: if residue.complete {
                "disconnected"
            } else {
                "inconclusive"
            },
            criterion: "level-sets",
            level: Some(l.level),
            witness: None,
        },
        None => report::VerdictJson {
            status: "inconclusive",
            criterion: "level-sets",
            level: Some(max_level),
            witness: None,
        },
    };
    emit(&report::LevelsReport {
        matrix: report::matrix(&a),
        verdict,
        lattice: report::lattice(&lat),
        residue: report::residue(&residue),
        levels: levels.iter().map(report::level).collect(),
        timings: common.timings(start),
    })
}

fn render(
    common: &CommonArgs,
    depth: usize,
    size: &str,
    out: &Path,
    viewport: Option<&str>,
) -> Result<(), CliError> {
    let start = Instant::now();
    let a = common.parse()?;
    if a.rows() != 2 {
        return Err(CliError::Input(format!(
            "render requires a 2x2 matrix, got {0}x{0}",
            a.rows()
        )));
    }
    let (width, height) = parse_size(size)?;
    let window = viewport.map(parse_viewport).transpose()?;
    let digit_set = centered_digit_set_with(common.mode(), &a)?;
    let cloud = approximate_with(common.mode(), &a, &digit_set, depth, budget()?)?;
    let image = rasterize_with(common.mode(), &cloud, width, height, window)?;
    fs::write(out, image.pgm_bytes())
        .map_err(|e| CliError::Io(out.display().to_string(), e))?;
    emit(&report::RenderReport {
        matrix: report::matrix(&a),
        depth,
        point_count: cloud.len(),
        gap: report::fraction(&cloud.gap),
        viewport: report::viewport(&image.viewport),
        width: image.width,
        height: image.height,
        occupied: image.occupied(),
        out: out.display().to_string(),
        timings: common.timings(start),
    })
}

fn pipeline(common: &CommonArgs, out: Option<&Path>) -> Result<(), CliError> {
    let start = Instant::now();
    let a = common.parse()?;
    let outcome = pipeline_connected_digits(&a)?;
    let out = write_csv(out, &outcome.mapped_digits)?;
    emit(&report::PipelineReport {
        matrix: report::matrix(&a),
        verdict: report::verdict(&outcome.verdict),
        jordan: report::jordan(
            &outcome.decomposition,
            verify_similarity(&a, &outcome.decomposition),
        ),
        certificates: outcome
            .blocks
            .iter()
            .map(|b| report::certificate(&b.certificate))
            .collect(),
        digit_count: outcome.mapped_digits.len(),
        digits: report::digit_rows(&outcome.mapped_digits),
        residue: report::residue(&outcome.residue),
        out,
        timings: common.timings(start),
    })
}

fn emit<T: Serialize>(value: &T) -> Result<(), CliError> {
    println!("{}", serde_json::to_string_pretty(value).expect("report"));
    Ok(())
}

fn write_csv(out: Option<&Path>, digits: &DigitSet) -> Result<Option<String>, CliError> {
    match out {
        Some(path) => {
            fs::write(path, digits.to_csv())
                .map_err(|e| CliError::Io(path.display().to_string(), e))?;
            Ok(Some(path.display().to_string()))
        }
        None => Ok(None),
    }
}

fn budget() -> Result<u64, CliError> {
    match std::env::var(BUDGET_ENV) {
        Ok(raw) => raw
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("invalid {BUDGET_ENV}: {raw:?}"))),
        Err(_) => Ok(DEFAULT_POINT_BUDGET),
    }
}

fn parse_matrix(s: &str) -> Result<IntMatrix, CliError> {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut width = None;
    for row in s.split(';') {
        let entries = row
            .split(',')
            .map(|e| {
                e.trim()
                    .parse::<i64>()
                    .map_err(|_| CliError::Input(format!("invalid matrix entry {:?}", e.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        match width {
            None => width = Some(entries.len()),
            Some(w) if w != entries.len() => {
                return Err(CliError::Input("matrix rows have unequal lengths".into()))
            }
            _ => {}
        }
        rows.push(entries);
    }
    let width = width.unwrap_or(0);
    if rows.len() != width {
        return Err(CliError::Input(format!(
            "matrix must be square, got {} rows of length {}",
            rows.len(),
            width
        )));
    }
    Ok(IntMatrix::from_rows(&rows))
}

fn parse_size(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Input(format!("invalid size {s:?}, expected WxH"));
    let (w, h) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let width: usize = w.trim().parse().map_err(|_| bad())?;
    let height: usize = h.trim().parse().map_err(|_| bad())?;
    if !(1..=MAX_IMAGE_SIDE).contains(&width) || !(1..=MAX_IMAGE_SIDE).contains(&height) {
        return Err(CliError::Input(format!(
            "image sides must be between 1 and {MAX_IMAGE_SIDE}"
        )));
    }
    Ok((width, height))
}

fn parse_viewport(s: &str) -> Result<Viewport, CliError> {
    let parts: Vec<Rational> = s
        .split(',')
        .map(|p| {
            parse_rational(p)
                .ok_or_else(|| CliError::Input(format!("invalid viewport bound {:?}", p.trim())))
        })
        .collect::<Result<_, _>>()?;
    if parts.len() != 4 {
        return Err(CliError::Input(
            "viewport needs four bounds: min_x,max_x,min_y,max_y".into(),
        ));
    }
    let [min_x, max_x, min_y, max_y] = <[Rational; 4]>::try_from(parts).expect("length checked");
    if min_x >= max_x || min_y >= max_y {
        return Err(CliError::Input(
            "viewport bounds must satisfy min < max on both axes".into(),
        ));
    }
    Ok(Viewport {
        min_x,
        max_x,
        min_y,
        max_y,
    })
}
