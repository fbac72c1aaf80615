//! `hagge`: construct circles through a chosen point of a triangle's
//! plane, verify the construction's identities on random scenes, and
//! render figures.
//!
//! Exit codes: 0 success, 1 error (including a FAIL verification), 2
//! success with a degenerate-flagged construction.

use clap::{Parser, Subcommand, ValueEnum};
use hagge_cli::{render_scene, FigureOptions};
use hagge_core::construction::{construct, AnyScene, ConstructError, PathKind};
use hagge_core::io::{output_to_value, scene_from_str, to_json_string, SceneParseError};
use hagge_core::verify::{
    trial_seed, verify_batch, verify_scene, Report, ReportStatus, ScenePolicy, VerifyOptions,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hagge",
    version,
    about = "Circles through any point of a triangle's plane"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathArg {
    /// Canonical-frame coordinate formulas (canonical scenes only).
    ClosedForm,
    /// Frame-independent chord/parallelogram construction.
    Geometric,
}

#[derive(Subcommand)]
enum Command {
    /// Run the construction for a scene and write the result as JSON.
    Construct {
        /// Scene document (JSON).
        #[arg(long)]
        scene: PathBuf,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "geometric")]
        path: PathArg,
    },
    /// Verify the construction invariants over seeded random scenes.
    Verify {
        /// Number of random scenes.
        #[arg(long, default_value_t = 1000)]
        trials: u32,
        /// Master seed; per-trial seeds are split from it.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Report file (JSON); standard output when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Verify one scene document instead of a random batch (useful for
        /// replaying a report witness).
        #[arg(long, conflicts_with_all = ["trials", "seed"])]
        scene: Option<PathBuf>,
        /// Deliberately swap in the known-bad special-circle equation
        /// (y-coefficient -2mn instead of -2n) to demonstrate that the
        /// oracle comparison catches it.
        #[arg(long)]
        misprinted_circle: bool,
    },
    /// Render a scene's construction as a deterministic SVG figure.
    Figure {
        /// Scene document (JSON).
        #[arg(long)]
        scene: PathBuf,
        /// Output SVG file.
        #[arg(long)]
        svg: PathBuf,
        /// Canvas size in pixels (square).
        #[arg(long, default_value_t = 800)]
        size: u32,
        #[arg(long)]
        no_labels: bool,
        #[arg(long)]
        no_special_circle: bool,
        #[arg(long)]
        no_midcircle: bool,
        #[arg(long)]
        no_diagonals: bool,
        /// Overlay the classic orthocenter construction.
        #[arg(long)]
        hagge_overlay: bool,
    },
}

struct CliError {
    code: &'static str,
    message: String,
}

impl CliError {
    fn new(code: &'static str, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl From<SceneParseError> for CliError {
    fn from(err: SceneParseError) -> Self {
        CliError::new(err.code(), err.to_string())
    }
}

impl From<ConstructError> for CliError {
    fn from(err: ConstructError) -> Self {
        let code = match err {
            ConstructError::DIsVertex => "SCENE_D_IS_VERTEX",
            ConstructError::NonCanonicalForClosedForm(_) => "SCENE_NON_CANONICAL",
            ConstructError::DegenerateTriangle => "SCENE_DEGENERATE_TRIANGLE",
            ConstructError::DegeneratePointCircle
            | ConstructError::DegenerateInput
            | ConstructError::CollinearReflections => "SCENE_DEGENERATE",
            ConstructError::Geom(_) => "GEOM_ERROR",
        };
        CliError::new(code, err.to_string())
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::new("IO_ERROR", format!("{}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::new("IO_ERROR", format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run_construct(
    scene_path: &Path,
    out: Option<&Path>,
    path: PathArg,
) -> Result<ExitCode, CliError> {
    let scene = scene_from_str(&read_file(scene_path)?)?;
    let kind = match path {
        PathArg::ClosedForm => PathKind::ClosedForm,
        PathArg::Geometric => PathKind::Geometric,
    };
    let (value, degenerate) = match &scene {
        AnyScene::Exact(s) => {
            let result = construct(s, kind)?;
            (output_to_value(&result), result.flags.degenerate())
        }
        AnyScene::Double(s) => {
            let result = construct(s, kind)?;
            (output_to_value(&result), result.flags.degenerate())
        }
    };
    write_output(out, &to_json_string(&value))?;
    Ok(if degenerate {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn print_report_summary(report: &Report) {
    for check in &report.checks {
        let mark = if check.pass { "PASS" } else { "FAIL" };
        match &check.residual {
            Some(residual) => println!("  [{mark}] {} ({residual})", check.name),
            None => println!("  [{mark}] {}", check.name),
        }
    }
    match report.elapsed_ms {
        Some(ms) => println!("status: {} ({ms} ms)", report.status.as_str()),
        None => println!("status: {}", report.status.as_str()),
    }
}

fn run_verify(
    trials: u32,
    seed: u64,
    report_path: Option<&Path>,
    scene_path: Option<&Path>,
    misprinted_circle: bool,
) -> Result<ExitCode, CliError> {
    let opts = VerifyOptions { misprinted_circle };
    let report = match scene_path {
        Some(path) => {
            let scene = scene_from_str(&read_file(path)?)?;
            let report = match &scene {
                AnyScene::Exact(s) => verify_scene(s, &opts),
                AnyScene::Double(_) => {
                    return Err(CliError::new(
                        "SCENE_BACKEND_MISMATCH",
                        "verify --scene requires an exact-backend scene",
                    ))
                }
            };
            if let Some(digest) = &report.scene_digest {
                println!("verify: scene {digest}");
            }
            report
        }
        None => {
            if trials == 0 {
                return Err(CliError::new("USAGE", "--trials must be at least 1"));
            }
            println!(
                "verify: seed {seed}, trials {trials}, trial seed rule \
                 splitmix64(seed + i * 0x9E3779B97F4A7C15); example trial 0 -> {}",
                trial_seed(seed, 0)
            );
            verify_batch(trials, seed, &ScenePolicy::default(), &opts)
                .map_err(|e| CliError::new("POLICY_UNSATISFIABLE", e.to_string()))?
        }
    };
    print_report_summary(&report);
    write_output(report_path, &report.to_json())?;
    Ok(match report.status {
        ReportStatus::Pass => ExitCode::SUCCESS,
        ReportStatus::Fail => ExitCode::from(1),
    })
}

#[allow(clippy::too_many_arguments)]
fn run_figure(
    scene_path: &Path,
    svg_path: &Path,
    size: u32,
    no_labels: bool,
    no_special_circle: bool,
    no_midcircle: bool,
    no_diagonals: bool,
    hagge_overlay: bool,
) -> Result<ExitCode, CliError> {
    if size == 0 {
        return Err(CliError::new("USAGE", "--size must be positive"));
    }
    let scene = scene_from_str(&read_file(scene_path)?)?;
    let options = FigureOptions {
        width: size,
        height: size,
        show_labels: !no_labels,
        show_special_circle: !no_special_circle,
        show_midpoint_circle: !no_midcircle,
        show_diagonals: !no_diagonals,
        show_hagge_overlay: hagge_overlay,
        ..FigureOptions::default()
    };
    let figure = render_scene(&scene, &options)?;
    write_output(Some(svg_path), &figure.svg)?;
    Ok(if figure.flags.degenerate() {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct { scene, out, path } => run_construct(&scene, out.as_deref(), path),
        Command::Verify {
            trials,
            seed,
            report,
            scene,
            misprinted_circle,
        } => run_verify(
            trials,
            seed,
            report.as_deref(),
            scene.as_deref(),
            misprinted_circle,
        ),
        Command::Figure {
            scene,
            svg,
            size,
            no_labels,
            no_special_circle,
            no_midcircle,
            no_diagonals,
            hagge_overlay,
        } => run_figure(
            &scene,
            &svg,
            size,
            no_labels,
            no_special_circle,
            no_midcircle,
            no_diagonals,
            hagge_overlay,
        ),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("hagge: error[{}]: {}", err.code, err.message);
            ExitCode::from(1)
        }
    }
}
