mod manifest;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, ValueEnum};
use cv_tradeoff::relations::linear_grid;
use cv_tradeoff::scenarios::{
    assemble_bounds_plane, run, EvalMode, ScenarioConfig, DEFAULT_REPEATS, DEFAULT_SEED,
};
use cv_tradeoff::{plot, report, SqueezingSpec};

use manifest::{Command, RunManifest, RunSpec};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScenarioArg {
    ErrorFree,
    Nonzero,
    Mixed,
    Bounds,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Analytic,
    Mc,
    Both,
}

/// Simulate joint amplitude/phase measurements on a two-mode squeezed state
/// and test the Heisenberg, Ozawa and Branciard error-tradeoff relations.
#[derive(Debug, Parser)]
#[command(name = "cv-tradeoff", version)]
struct Args {
    /// Which scan to run.
    #[arg(long, value_enum, required_unless_present = "from_manifest")]
    scenario: Option<ScenarioArg>,

    /// Squeezed-quadrature noise in dB (<= 0). Default -2.9.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "r")]
    squeezing_db: Option<f64>,

    /// Antisqueezed-quadrature noise in dB (>= 0). Default 3.9.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "r")]
    antisqueezing_db: Option<f64>,

    /// Use a pure two-mode squeezed vacuum with this squeezing parameter.
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,

    /// Relative phases in degrees: `start:step:end` or a comma list.
    #[arg(long, default_value = "0:30:360")]
    theta_grid: String,

    /// Transmission efficiencies: `start:step:end` or a comma list.
    #[arg(long, default_value = "0:0.1:1")]
    t_grid: String,

    /// ε(A) samples for the bound curves (bounds only).
    #[arg(long, default_value = "0:0.005:1.5")]
    eps_a_grid: String,

    /// Shots per Monte Carlo record.
    #[arg(long, default_value_t = cv_tradeoff::sampler::DEFAULT_SHOTS)]
    shots: usize,

    /// Monte Carlo repeats per grid point.
    #[arg(long, default_value_t = DEFAULT_REPEATS)]
    repeats: usize,

    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[arg(long, value_enum, default_value = "analytic")]
    mode: ModeArg,

    #[arg(long, default_value = ".")]
    out_dir: PathBuf,

    /// Also write an SVG figure.
    #[arg(long)]
    svg: bool,

    /// Re-run exactly what a previous manifest describes.
    #[arg(long, conflicts_with = "scenario")]
    from_manifest: Option<PathBuf>,
}

fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let text = text.trim();
    if text.contains(':') {
        let parts: Vec<f64> = text
            .split(':')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .with_context(|| format!("bad grid `{text}`"))?;
        let [start, step, end] = parts[..] else {
            bail!("grid `{text}` must be start:step:end");
        };
        if !(step > 0.0) || end < start {
            bail!("grid `{text}` needs step > 0 and end >= start");
        }
        Ok(linear_grid(start, end, step))
    } else {
        text.split(',')
            .map(|p| p.trim().parse::<f64>().with_context(|| format!("bad grid value `{p}`")))
            .collect()
    }
}

fn spec_from_args(args: &Args) -> SqueezingSpec {
    match args.r {
        Some(r) => SqueezingSpec::pure(r),
        None => SqueezingSpec::impure(args.squeezing_db.unwrap_or(-2.9), args.antisqueezing_db.unwrap_or(3.9)),
    }
}

fn run_spec_from_args(args: &Args) -> Result<RunSpec> {
    let command = match args.scenario.expect("clap enforces --scenario") {
        ScenarioArg::ErrorFree => Command::ErrorFree,
        ScenarioArg::Nonzero => Command::Nonzero,
        ScenarioArg::Mixed => Command::Mixed,
        ScenarioArg::Bounds => Command::Bounds,
    };
    let grid = match command {
        Command::ErrorFree => parse_grid(&args.theta_grid)?,
        _ => parse_grid(&args.t_grid)?,
    };
    let eps_a_grid = match command {
        Command::Bounds => Some(parse_grid(&args.eps_a_grid)?),
        _ => None,
    };
    Ok(RunSpec {
        command,
        spec: spec_from_args(args),
        grid,
        eps_a_grid,
        n_shots: args.shots,
        repeats: args.repeats,
        seed: args.seed,
        mode: match args.mode {
            ModeArg::Analytic => EvalMode::Analytic,
            ModeArg::Mc => EvalMode::MonteCarlo,
            ModeArg::Both => EvalMode::Both,
        },
        svg: args.svg,
    })
}

/// File name and contents of every data/figure output of `spec`.
fn render_outputs(spec: &RunSpec) -> Result<Vec<(String, String)>> {
    let stem = spec.command.stem();
    let mut files = Vec::new();
    match spec.command.scenario_kind() {
        Some(kind) => {
            let config = ScenarioConfig {
                spec: spec.spec,
                kind,
                grid: spec.grid.clone(),
                n_shots: spec.n_shots,
                seed: spec.seed,
                mode: spec.mode,
                repeats: spec.repeats,
            };
            let result = run(&config)?;
            files.push((format!("{stem}.csv"), report::scenario_csv(&result)));
            if spec.svg {
                files.push((format!("{stem}.svg"), plot::scenario_figure(&result)));
            }
        }
        None => {
            let eps_grid = spec.eps_a_grid.clone().unwrap_or_else(|| linear_grid(0.0, 1.5, 0.005));
            if spec.grid.iter().any(|t| !(0.0..=1.0).contains(t)) {
                bail!("transmission grid must lie in [0, 1]");
            }
            let plane = assemble_bounds_plane(&spec.spec, &eps_grid, &spec.grid)?;
            files.push((format!("{stem}_curves.csv"), report::bound_curves_csv(&plane)));
            files.push((format!("{stem}_points.csv"), report::bound_points_csv(&plane)));
            if spec.svg {
                files.push((format!("{stem}.svg"), plot::bounds_figure(&plane)));
            }
        }
    }
    Ok(files)
}

fn execute(spec: RunSpec, out_dir: &Path, command_line: Vec<String>) -> Result<()> {
    let files = render_outputs(&spec)?;
    fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    let names = files.iter().map(|(n, _)| n.clone()).collect();
    for (name, contents) in &files {
        let path = out_dir.join(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    }
    let stem = spec.command.stem();
    let manifest = RunManifest::new(spec, command_line, names);
    let path = out_dir.join(format!("{stem}.manifest.json"));
    fs::write(&path, manifest.to_json()?).with_context(|| format!("writing {}", path.display()))?;
    for (name, _) in &files {
        println!("{}", out_dir.join(name).display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    let command_line: Vec<String> = std::env::args().collect();
    let result = match &args.from_manifest {
        Some(path) => RunManifest::load(path).and_then(|m| execute(m.run, &args.out_dir, command_line)),
        None => run_spec_from_args(&args).and_then(|spec| execute(spec, &args.out_dir, command_line)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
