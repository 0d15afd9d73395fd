//! Command-line front end. Exit codes: 0 success, 1 failed verification,
//! 2 invalid input, 3 no result.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::analysis::classify;
use crate::band::BandSpec;
use crate::catalog::{breakdown, enumerate_catalog, render_breakdown, write_catalog, write_csv, Catalog};
use crate::error::Error;
use crate::export::{unfold_net, write_modules_svg, write_net_svg, write_obj, ModuleOptions, NetSvgOptions, ObjMode};
use crate::realize::{antiprism_tower, realize, verify_uniform, MeshSegment};
use crate::solver::{solve_band, BranchSolution, SolverOptions};

pub const GRID_POINTS_ENV: &str = "HELISTAR_GRID_POINTS";

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_NO_RESULT: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "helistar", version, about = "Helical deltahedra and helical star deltahedra")]
pub struct Cli {
    /// Machine-readable JSON on stdout instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every branch of a band.
    Solve {
        #[command(flatten)]
        band: BandArgs,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Write an OBJ mesh or edge frame of one branch.
    Generate {
        #[command(flatten)]
        branch: BranchArgs,
        #[arg(long, default_value_t = 4)]
        periods: u32,
        #[arg(long)]
        out: PathBuf,
        /// Emit edges as `l` records instead of faces.
        #[arg(long)]
        frame: bool,
    },
    /// Enumerate all branches over a range of strip counts.
    Enumerate {
        #[arg(long, default_value_t = 5)]
        min: u32,
        #[arg(long, default_value_t = 12)]
        max: u32,
        #[arg(long)]
        include_compounds: bool,
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Check uniformity of one branch on a finite window.
    Verify {
        #[command(flatten)]
        branch: BranchArgs,
        #[arg(long, default_value_t = 6)]
        periods: u32,
    },
    /// Write the unfolding net of one branch as SVG.
    Net {
        #[command(flatten)]
        branch: BranchArgs,
        #[arg(long, default_value_t = 4)]
        rows: u32,
        #[arg(long, default_value_t = 40.0)]
        edge_mm: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a sheet of slide-together modules as SVG.
    Modules {
        #[command(flatten)]
        branch: BranchArgs,
        #[arg(long, default_value_t = 2)]
        periods: u32,
        #[arg(long, default_value_t = 40.0)]
        edge_mm: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a tower of stacked antiprism rings as OBJ.
    Antiprism {
        #[arg(long)]
        gon: u32,
        #[arg(long)]
        rings: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        frame: bool,
    },
}

#[derive(Debug, Clone, Args)]
pub struct BandArgs {
    #[arg(long)]
    pub strips: u32,
    #[arg(long)]
    pub shift: u32,
}

#[derive(Debug, Clone, Args)]
pub struct BranchArgs {
    #[command(flatten)]
    pub band: BandArgs,
    /// 1-based branch index, in order of increasing twist.
    #[arg(long, default_value_t = 1)]
    pub branch: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
}

/// Overrides for [`SolverOptions`], one flag per field.
#[derive(Debug, Clone, Default, Args)]
pub struct SolverArgs {
    #[arg(long)]
    pub theta_min: Option<f64>,
    #[arg(long)]
    pub theta_max: Option<f64>,
    #[arg(long)]
    pub grid_points: Option<usize>,
    #[arg(long)]
    pub bisection_tol: Option<f64>,
    #[arg(long)]
    pub residual_tol: Option<f64>,
    #[arg(long = "min-a")]
    pub min_a: Option<f64>,
    #[arg(long = "min-b")]
    pub min_b: Option<f64>,
}

impl SolverArgs {
    /// Flags win over the environment, which wins over the defaults.
    pub fn options(&self) -> Result<SolverOptions, Failure> {
        let mut opts = SolverOptions::default();
        if let Ok(raw) = std::env::var(GRID_POINTS_ENV) {
            opts.grid_points = raw
                .trim()
                .parse()
                .map_err(|_| Failure::invalid(format!("{GRID_POINTS_ENV} is not a positive integer: {raw:?}")))?;
        }
        let SolverArgs {
            theta_min,
            theta_max,
            grid_points,
            bisection_tol,
            residual_tol,
            min_a,
            min_b,
        } = self.clone();
        opts.theta_min = theta_min.unwrap_or(opts.theta_min);
        opts.theta_max = theta_max.unwrap_or(opts.theta_max);
        opts.grid_points = grid_points.unwrap_or(opts.grid_points);
        opts.bisection_tol = bisection_tol.unwrap_or(opts.bisection_tol);
        opts.residual_tol = residual_tol.unwrap_or(opts.residual_tol);
        opts.min_a = min_a.unwrap_or(opts.min_a);
        opts.min_b = min_b.unwrap_or(opts.min_b);
        opts.validate()?;
        Ok(opts)
    }
}

/// A command that did not succeed, with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }

    fn no_result(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_NO_RESULT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoSuchBranch { .. } => EXIT_NO_RESULT,
            _ => EXIT_INVALID,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Parse `args` (program name first), run, and report errors on stderr.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Run a parsed command, writing reports to `out`. Returns the exit code
/// for completed runs (0, or 1 when verification fails).
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<u8, Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Solve { band, solver } => cmd_solve(band, solver, json, out),
        Command::Generate {
            branch,
            periods,
            out: path,
            frame,
        } => {
            let sol = select_branch(branch)?;
            let segment = realize(&sol, *periods)?;
            let mode = if *frame { ObjMode::Frame } else { ObjMode::Faces };
            write_file(path, |w| write_obj(&segment, mode, w))?;
            report_mesh(out, json, path, &segment, mode)?;
            Ok(EXIT_OK)
        }
        Command::Enumerate {
            min,
            max,
            include_compounds,
            catalog,
            csv,
            solver,
        } => cmd_enumerate(
            *min,
            *max,
            *include_compounds,
            catalog.as_deref(),
            csv.as_deref(),
            solver,
            json,
            out,
        ),
        Command::Verify { branch, periods } => {
            let sol = select_branch(branch)?;
            let report = verify_uniform(&realize(&sol, *periods)?)?;
            let checks = report.checks();
            if json {
                emit_json(
                    out,
                    &json!({ "report": report, "checks": checks, "passed": report.passed() }),
                )?;
            } else {
                writeln!(out, "interior vertices: {}", report.interior_vertices).map_err(io)?;
                for c in &checks {
                    let verdict = if c.passed { "ok" } else { "FAILED" };
                    writeln!(out, "{:<24} {:>12.3e}  {verdict}", c.name, c.value).map_err(io)?;
                }
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Net {
            branch,
            rows,
            edge_mm,
            out: path,
        } => {
            let sol = select_branch(branch)?;
            let net = unfold_net(&sol, *rows)?;
            write_file(path, |w| write_net_svg(&net, &NetSvgOptions { edge_mm: *edge_mm }, w))?;
            report_written(
                out,
                json,
                path,
                json!({ "triangles": net.triangles.len(), "folds": net.folds.len() }),
            )?;
            Ok(EXIT_OK)
        }
        Command::Modules {
            branch,
            periods,
            edge_mm,
            out: path,
        } => {
            let sol = select_branch(branch)?;
            let opts = ModuleOptions {
                edge_mm: *edge_mm,
                periods: *periods,
                ..ModuleOptions::default()
            };
            write_file(path, |w| write_modules_svg(&sol, &opts, w))?;
            report_written(out, json, path, json!({ "periods": periods }))?;
            Ok(EXIT_OK)
        }
        Command::Antiprism {
            gon,
            rings,
            out: path,
            frame,
        } => {
            let segment = antiprism_tower(*gon, *rings)?;
            let mode = if *frame { ObjMode::Frame } else { ObjMode::Faces };
            write_file(path, |w| write_obj(&segment, mode, w))?;
            report_mesh(out, json, path, &segment, mode)?;
            Ok(EXIT_OK)
        }
    }
}

#[derive(Serialize)]
struct BranchRow {
    branch_index: usize,
    winding_m: Option<u32>,
    theta: f64,
    r: f64,
    h: f64,
    residual: f64,
    intersecting: bool,
    vertex_figure: &'static str,
}

fn cmd_solve(band: &BandArgs, solver: &SolverArgs, json: bool, out: &mut dyn Write) -> Result<u8, Failure> {
    let spec = BandSpec::new(band.strips, band.shift)?;
    let opts = solver.options()?;
    let branches = solve_band(&spec, &opts)?;
    let rows: Vec<BranchRow> = branches
        .iter()
        .map(|b| {
            let class = classify(b);
            BranchRow {
                branch_index: b.branch_index,
                winding_m: b.winding_m,
                theta: b.params.twist,
                r: b.params.radius,
                h: b.params.rise,
                residual: b.residual,
                intersecting: class.intersecting,
                vertex_figure: class.vertex_figure.as_str(),
            }
        })
        .collect();
    if json {
        emit_json(out, &json!({ "band": spec.to_string(), "branches": rows }))?;
    } else {
        writeln!(out, "band {spec}, offsets {}", spec.offsets()).map_err(io)?;
        writeln!(
            out,
            "{:>6} {:>3} {:>14} {:>14} {:>14} {:>10} {:>12} {:>13}",
            "branch", "m", "theta", "r", "h", "residual", "intersecting", "vertex_figure"
        )
        .map_err(io)?;
        for r in &rows {
            writeln!(
                out,
                "{:>6} {:>3} {:>14.9} {:>14.9} {:>14.9} {:>10.2e} {:>12} {:>13}",
                r.branch_index,
                r.winding_m.map_or("-".into(), |m| m.to_string()),
                r.theta,
                r.r,
                r.h,
                r.residual,
                r.intersecting,
                r.vertex_figure
            )
            .map_err(io)?;
        }
    }
    if rows.is_empty() {
        return Err(Failure::no_result(format!("band {spec} has no admissible branch")));
    }
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_enumerate(
    min: u32,
    max: u32,
    include_compounds: bool,
    catalog_path: Option<&Path>,
    csv_path: Option<&Path>,
    solver: &SolverArgs,
    json: bool,
    out: &mut dyn Write,
) -> Result<u8, Failure> {
    if min > max {
        return Err(Failure::invalid(format!("--min ({min}) exceeds --max ({max})")));
    }
    let opts = solver.options()?;
    let entries = enumerate_catalog(min, max, &opts, include_compounds)?;
    let summary = breakdown(&entries, min, max, include_compounds);
    if let Some(path) = catalog_path {
        let catalog = Catalog::new(opts, entries.clone());
        write_file(path, |w| write_catalog(&catalog, w))?;
    }
    if let Some(path) = csv_path {
        write_file(path, |w| write_csv(&entries, w))?;
    }
    if json {
        emit_json(out, &json!({ "entries": entries.len(), "breakdown": summary }))?;
    } else {
        write!(out, "{}", render_breakdown(&summary, min, max)).map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn select_branch(args: &BranchArgs) -> Result<BranchSolution, Failure> {
    let spec = BandSpec::new(args.band.strips, args.band.shift)?;
    let opts = args.solver.options()?;
    let mut branches = solve_band(&spec, &opts)?;
    if branches.is_empty() {
        return Err(Failure::no_result(format!("band {spec} has no admissible branch")));
    }
    if args.branch == 0 || args.branch > branches.len() {
        return Err(Error::NoSuchBranch {
            requested: args.branch,
            available: format!("1..={}", branches.len()),
        }
        .into());
    }
    Ok(branches.swap_remove(args.branch - 1))
}

fn write_file<F>(path: &Path, body: F) -> Result<(), Failure>
where
    F: FnOnce(&mut BufWriter<File>) -> crate::error::Result<()>,
{
    let file = File::create(path).map_err(|e| Failure::invalid(format!("cannot create {}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    body(&mut w)?;
    w.flush().map_err(io)
}

fn report_mesh(
    out: &mut dyn Write,
    json: bool,
    path: &Path,
    segment: &MeshSegment,
    mode: ObjMode,
) -> Result<(), Failure> {
    let records = match mode {
        ObjMode::Faces => json!({ "vertices": segment.vertices.len(), "faces": segment.faces.len() }),
        ObjMode::Frame => json!({ "vertices": segment.vertices.len(), "lines": segment.edges.len() }),
    };
    report_written(out, json, path, records)
}

fn report_written(out: &mut dyn Write, json: bool, path: &Path, mut details: serde_json::Value) -> Result<(), Failure> {
    if json {
        details["path"] = json!(path.display().to_string());
        emit_json(out, &details)
    } else {
        let parts: Vec<String> = details
            .as_object()
            .map(|o| o.iter().map(|(k, v)| format!("{k} {v}")).collect())
            .unwrap_or_default();
        writeln!(out, "wrote {} ({})", path.display(), parts.join(", ")).map_err(io)
    }
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| Failure::invalid(e.to_string()))?;
    writeln!(out).map_err(io)
}

fn io(e: std::io::Error) -> Failure {
    Failure::from(Error::Io(e))
}
