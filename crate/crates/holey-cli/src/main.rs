//! `holey` — build, analyze, and certify polyominoes with many holes.
//!
//! Exit codes: 0 success, 1 invariant violation, 2 usage or input error,
//! 3 capacity (budget) error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use holey::bounds;
use holey::builder;
use holey::cellfile;
use holey::lee_code;
use holey::pattern::KdPattern;
use holey::polyomino::{face_census, is_rook_connected, CellSet};
use holey::torus;
use holey::{Budget, Error};

mod obj;

#[derive(Parser)]
#[command(name = "holey", version, about = "Polyominoes with many holes")]
struct Cli {
    /// Cell budget for grids, domains, and scans (also HOLEY_CELL_BUDGET).
    #[arg(long, global = true)]
    cell_budget: Option<u64>,
    /// Include a timestamp field in JSON reports.
    #[arg(long, global = true)]
    timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Perfect Lee codes on (Z/qZ)^d, q = 2d+1.
    #[command(subcommand)]
    Code(CodeCommand),
    /// Sample the sponge pattern K_d inside a window.
    #[command(subcommand)]
    Pattern(PatternCommand),
    /// Build hole-maximizing polyominoes.
    #[command(subcommand)]
    Build(BuildCommand),
    /// Census and bounds for a cell file.
    Analyze {
        /// Cell file to analyze.
        path: PathBuf,
    },
    /// Lower/upper bounds (and optionally the exact value) for f_d(n).
    Bounds {
        #[arg(short = 'd', long)]
        dim: usize,
        #[arg(short = 'n', long)]
        n: u64,
        /// Also compute the exact value by exhaustive enumeration.
        #[arg(long)]
        exact: bool,
        /// Worker threads for the enumeration.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Exact f_d(n) by exhaustive enumeration.
    Bruteforce {
        #[arg(short = 'd', long)]
        dim: usize,
        #[arg(short = 'n', long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Raise the per-dimension tile cap of the enumerator.
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Quotient tori and toric polyominoes.
    #[command(subcommand)]
    Torus(TorusCommand),
    /// Mesh export.
    #[command(subcommand)]
    Export(ExportCommand),
}

#[derive(Subcommand)]
enum CodeCommand {
    /// Emit the code words as a cell file.
    Gen {
        #[arg(short = 'd', long)]
        dim: usize,
        /// Output file (stdout if omitted).
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively verify the perfect-code property.
    Verify {
        #[arg(short = 'd', long)]
        dim: usize,
    },
}

#[derive(Subcommand)]
enum PatternCommand {
    /// Emit the K_d cells inside a box window as a cell file.
    Sample {
        #[arg(short = 'd', long)]
        dim: usize,
        /// Window as comma-separated half-open ranges, e.g. `0..6,0..6`.
        #[arg(long, value_name = "RANGES")]
        r#box: String,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BuildOut {
    /// Write the cells to this file.
    #[arg(short = 'o', long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BuildCommand {
    /// P(Q_i) for the cube of side 2qi+2.
    Cube {
        #[arg(short = 'd', long)]
        dim: usize,
        #[arg(short = 'i', long)]
        index: u64,
        #[command(flatten)]
        out: BuildOut,
    },
    /// P(D_m) for the interpolating domain with m parallelotopes.
    Interp {
        #[arg(short = 'd', long)]
        dim: usize,
        #[arg(short = 'm', long)]
        m: u64,
        #[command(flatten)]
        out: BuildOut,
    },
    /// A hole-maximizing polyomino with exactly n tiles.
    N {
        #[arg(short = 'd', long)]
        dim: usize,
        #[arg(short = 'n', long)]
        n: u64,
        #[command(flatten)]
        out: BuildOut,
    },
}

#[derive(Subcommand)]
enum TorusCommand {
    /// Build the optimal toric polyomino for (n_1..n_{d-1}, c).
    Build {
        #[arg(short = 'd', long)]
        dim: usize,
        /// Comma-separated column periods, e.g. `2,3`.
        #[arg(long, value_name = "LIST")]
        n: String,
        #[arg(long)]
        c: u64,
        /// Write the occupied fundamental-domain cells to this file.
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Shortest-vector length of a lattice.
    Systole {
        /// Basis rows separated by `;`, e.g. `6 0; -3 3`.
        #[arg(long)]
        basis: String,
    },
    /// Rank constructible tori by normalized systole.
    Search {
        #[arg(short = 'd', long)]
        dim: usize,
        /// Largest value scanned for each n_i and c.
        #[arg(long, default_value_t = 10)]
        max: u64,
    },
}

#[derive(Subcommand)]
enum ExportCommand {
    /// Write a 3-dimensional cell file as a triangle mesh in OBJ format.
    Obj {
        input: PathBuf,
        output: PathBuf,
    },
}

/// Census plus bounds for one analyzed cell set.
#[derive(Serialize)]
struct CensusReport {
    dim: usize,
    n: u64,
    holes: u64,
    b: u64,
    p_h: u64,
    p_o: u64,
    identity_ok: bool,
    connected: bool,
    lower: u64,
    upper: u64,
}

#[derive(Serialize)]
struct Timestamped<T: Serialize> {
    #[serde(flatten)]
    report: T,
    timestamp: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Capacity { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn budget_from(cli: &Cli) -> Result<Budget, Error> {
    let mut budget = Budget::default();
    if let Ok(raw) = std::env::var("HOLEY_CELL_BUDGET") {
        budget.max_cells = raw.parse().map_err(|_| Error::Precondition {
            condition: format!("HOLEY_CELL_BUDGET must be an integer, got `{raw}`"),
        })?;
    }
    if let Some(cells) = cli.cell_budget {
        budget.max_cells = cells;
    }
    Ok(budget)
}

fn emit_json<T: Serialize>(cli: &Cli, report: &T) {
    let text = if cli.timestamp {
        let now = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs().to_string())
            .unwrap_or_default();
        serde_json::to_string_pretty(&Timestamped {
            report,
            timestamp: now,
        })
    } else {
        serde_json::to_string_pretty(report)
    };
    println!("{}", text.expect("report serialization"));
}

fn emit_cells(set: &CellSet, out: &Option<PathBuf>, comments: &[&str]) -> Result<(), Error> {
    match out {
        Some(path) => cellfile::write_cells(path, set, comments),
        None => {
            print!("{}", cellfile::format_cells(set, comments));
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let budget = budget_from(cli)?;
    match &cli.command {
        Command::Code(cmd) => run_code(cli, cmd, &budget),
        Command::Pattern(cmd) => run_pattern(cli, cmd, &budget),
        Command::Build(cmd) => run_build(cli, cmd, &budget),
        Command::Analyze { path } => run_analyze(cli, path, &budget),
        Command::Bounds {
            dim,
            n,
            exact,
            jobs,
        } => {
            let report = bounds::bound_report(*dim, *n, *exact, *jobs, &budget)?;
            emit_json(cli, &report);
            Ok(ExitCode::SUCCESS)
        }
        Command::Bruteforce { dim, n, jobs, cap } => {
            let budget = Budget {
                enum_tiles: cap.or(budget.enum_tiles),
                ..budget
            };
            let value = bounds::brute_force_max_holes(*dim, *n, *jobs, &budget)?;
            #[derive(Serialize)]
            struct Exact {
                dim: usize,
                n: u64,
                max_holes: u64,
            }
            emit_json(
                cli,
                &Exact {
                    dim: *dim,
                    n: *n,
                    max_holes: value,
                },
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Torus(cmd) => run_torus(cli, cmd, &budget),
        Command::Export(ExportCommand::Obj { input, output }) => {
            let set = cellfile::read_cells(input)?;
            let stats = obj::export_obj(&set, output)?;
            #[derive(Serialize)]
            struct ObjReport {
                cells: u64,
                vertices: u64,
                triangles: u64,
            }
            emit_json(
                cli,
                &ObjReport {
                    cells: stats.cells,
                    vertices: stats.vertices,
                    triangles: stats.triangles,
                },
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_code(cli: &Cli, cmd: &CodeCommand, budget: &Budget) -> Result<ExitCode, Error> {
    match cmd {
        CodeCommand::Gen { dim, out } => {
            if *dim == 0 {
                return Err(Error::InvalidDimension { got: 0, min: 1 });
            }
            let q = lee_code::modulus(*dim);
            budget.check(
                "code word enumeration",
                (q as u64).saturating_pow(*dim as u32 - 1),
            )?;
            let code = lee_code::code_words(*dim)?;
            // the cell file format needs dim >= 2; pad d = 1 words
            let file_dim = (*dim).max(2);
            let cells = code.words().iter().map(|w| {
                let mut cell = w.clone();
                cell.resize(file_dim, 0);
                cell
            });
            let set = CellSet::from_cells(file_dim, cells)?;
            let comment = format!("perfect Lee code, d = {dim}, q = {q}");
            emit_cells(&set, out, &[&comment])?;
            Ok(ExitCode::SUCCESS)
        }
        CodeCommand::Verify { dim } => {
            let report = lee_code::verify_perfect(*dim, budget)?;
            let ok = report.covered_once;
            emit_json(cli, &report);
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

/// One range broadcasts to every axis; otherwise exactly `dim` ranges.
fn parse_ranges(dim: usize, text: &str) -> Result<Vec<(i64, i64)>, Error> {
    let bad = |msg: String| Error::Precondition { condition: msg };
    let mut parts: Vec<&str> = text.split(',').collect();
    if parts.len() == 1 {
        parts = vec![parts[0]; dim];
    }
    if parts.len() != dim {
        return Err(bad(format!(
            "--box needs 1 or {dim} ranges, got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|part| {
            let (lo, hi) = part
                .split_once("..")
                .ok_or_else(|| bad(format!("range `{part}` is not of the form lo..hi")))?;
            let lo: i64 = lo
                .trim()
                .parse()
                .map_err(|_| bad(format!("`{lo}` is not an integer")))?;
            let hi: i64 = hi
                .trim()
                .parse()
                .map_err(|_| bad(format!("`{hi}` is not an integer")))?;
            if hi <= lo {
                return Err(bad(format!("empty range `{part}`")));
            }
            Ok((lo, hi))
        })
        .collect()
}

fn run_pattern(_cli: &Cli, cmd: &PatternCommand, budget: &Budget) -> Result<ExitCode, Error> {
    match cmd {
        PatternCommand::Sample { dim, r#box, out } => {
            let ranges = parse_ranges(*dim, r#box)?;
            let pattern = KdPattern::new(*dim)?;
            let volume: u128 = ranges.iter().map(|&(lo, hi)| (hi - lo) as u128).product();
            budget.check(
                "pattern window",
                u64::try_from(volume).unwrap_or(u64::MAX),
            )?;
            let mut cells = Vec::new();
            let mut cell: Vec<i64> = ranges.iter().map(|&(lo, _)| lo).collect();
            'outer: loop {
                if pattern.contains(&cell) {
                    cells.push(cell.clone());
                }
                let mut axis = *dim;
                loop {
                    if axis == 0 {
                        break 'outer;
                    }
                    axis -= 1;
                    cell[axis] += 1;
                    if cell[axis] < ranges[axis].1 {
                        break;
                    }
                    cell[axis] = ranges[axis].0;
                }
            }
            let set = CellSet::from_cells(*dim, cells)?;
            let comment = format!("pattern K_{dim} in window {box}", box = r#box);
            emit_cells(&set, out, &[&comment])?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_build(cli: &Cli, cmd: &BuildCommand, budget: &Budget) -> Result<ExitCode, Error> {
    let (set, report, out) = match cmd {
        BuildCommand::Cube { dim, index, out } => {
            let (set, report) = builder::build_cube_polyomino(*dim, *index, budget)?;
            (set, report, out)
        }
        BuildCommand::Interp { dim, m, out } => {
            let (set, report) = builder::build_interpolated(*dim, *m, budget)?;
            (set, report, out)
        }
        BuildCommand::N { dim, n, out } => {
            let (set, report) = builder::build_for_n(*dim, *n, budget)?;
            (set, report, out)
        }
    };
    if let Some(path) = &out.out {
        cellfile::write_cells(path, &set, &[])?;
    }
    emit_json(cli, &report);
    Ok(ExitCode::SUCCESS)
}

fn run_analyze(cli: &Cli, path: &std::path::Path, budget: &Budget) -> Result<ExitCode, Error> {
    let set = cellfile::read_cells(path)?;
    // the census floods the bounding box inflated by one layer; sparse
    // far-apart cells would make that grid enormous
    if let Some((lo, hi)) = set.bounding_box() {
        let grid_cells: u128 = lo.iter().zip(&hi).map(|(&l, &h)| (h - l + 3) as u128).product();
        budget.check(
            "analysis grid",
            u64::try_from(grid_cells).unwrap_or(u64::MAX),
        )?;
    }
    let census = face_census(&set);
    let report = CensusReport {
        dim: set.dim(),
        n: census.n,
        holes: census.holes,
        b: census.b,
        p_h: census.p_h,
        p_o: census.p_o,
        identity_ok: census.identity_holds(set.dim()),
        connected: is_rook_connected(&set),
        lower: if census.n > 0 {
            bounds::lower_bound(set.dim(), census.n, budget)?
        } else {
            0
        },
        upper: bounds::upper_bound(set.dim(), census.n),
    };
    let ok = report.identity_ok;
    emit_json(cli, &report);
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn parse_u64_list(text: &str) -> Result<Vec<u64>, Error> {
    text.split(',')
        .map(|part| {
            part.trim().parse().map_err(|_| Error::Precondition {
                condition: format!("`{part}` is not a positive integer"),
            })
        })
        .collect()
}

fn parse_basis(text: &str) -> Result<Vec<Vec<i64>>, Error> {
    text.split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|tok| {
                    tok.parse().map_err(|_| Error::Precondition {
                        condition: format!("`{tok}` is not an integer"),
                    })
                })
                .collect()
        })
        .collect()
}

fn run_torus(cli: &Cli, cmd: &TorusCommand, budget: &Budget) -> Result<ExitCode, Error> {
    match cmd {
        TorusCommand::Build { dim, n, c, out } => {
            let n_list = parse_u64_list(n)?;
            let (torus, report) = torus::build_optimal_torus(*dim, &n_list, *c, budget)?;
            if let Some(path) = out {
                let set = CellSet::from_cells(*dim, torus.occupied_cells())?;
                cellfile::write_cells(path, &set, &["occupied fundamental-domain cells"])?;
            }
            emit_json(cli, &report);
            Ok(if report.connected {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        TorusCommand::Systole { basis } => {
            let rows = parse_basis(basis)?;
            let lattice = torus::IntegerLattice::from_basis(rows)?;
            let systole_sq = torus::systole_squared(&lattice, budget)?;
            #[derive(Serialize)]
            struct SystoleReport {
                dim: usize,
                det: u64,
                systole_sq: u64,
                systole: f64,
            }
            emit_json(
                cli,
                &SystoleReport {
                    dim: lattice.dim(),
                    det: lattice.det(),
                    systole_sq: u64::try_from(systole_sq).unwrap_or(u64::MAX),
                    systole: (systole_sq as f64).sqrt(),
                },
            );
            Ok(ExitCode::SUCCESS)
        }
        TorusCommand::Search { dim, max } => {
            let entries = torus::search_fat_tori(*dim, *max, budget)?;
            #[derive(Serialize)]
            struct SearchReport {
                entries: Vec<torus::FatTorusEntry>,
            }
            emit_json(cli, &SearchReport { entries });
            Ok(ExitCode::SUCCESS)
        }
    }
}
