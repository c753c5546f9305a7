//! WebAssembly bindings for the interactive demo page in `www/`.
//!
//! Every exported function takes plain numbers and strings and returns an SVG
//! document or a JSON string. The `*_impl` functions hold the logic and are
//! what the native tests exercise.

use cv_tradeoff::relations::linear_grid;
use cv_tradeoff::scenarios::{assemble_bounds_plane, run, EvalMode, ScenarioConfig};
use cv_tradeoff::{plot, ScenarioKind, SqueezingSpec};
use wasm_bindgen::prelude::*;

fn spec(squeezing_db: f64, antisqueezing_db: f64) -> Result<SqueezingSpec, String> {
    let spec = SqueezingSpec::impure(squeezing_db, antisqueezing_db);
    spec.validate().map_err(|e| e.to_string())?;
    Ok(spec)
}

fn kind(name: &str) -> Result<ScenarioKind, String> {
    match name {
        "error_free" => Ok(ScenarioKind::ErrorFree),
        "nonzero_error" => Ok(ScenarioKind::NonzeroError),
        "mixed_state" => Ok(ScenarioKind::MixedState),
        other => Err(format!("unknown scenario `{other}`")),
    }
}

fn dense_grid(kind: ScenarioKind) -> Vec<f64> {
    match kind {
        ScenarioKind::ErrorFree => linear_grid(0.0, 360.0, 5.0),
        _ => linear_grid(0.0, 1.0, 0.02),
    }
}

pub fn scan_svg_impl(scenario: &str, squeezing_db: f64, antisqueezing_db: f64) -> Result<String, String> {
    let kind = kind(scenario)?;
    let config = ScenarioConfig::new(kind)
        .with_spec(spec(squeezing_db, antisqueezing_db)?)
        .with_grid(dense_grid(kind));
    let result = run(&config).map_err(|e| e.to_string())?;
    Ok(plot::scenario_figure(&result))
}

pub fn bounds_svg_impl(squeezing_db: f64, antisqueezing_db: f64) -> Result<String, String> {
    let plane = assemble_bounds_plane(
        &spec(squeezing_db, antisqueezing_db)?,
        &linear_grid(0.0, 1.5, 0.005),
        &linear_grid(0.0, 1.0, 0.1),
    )
    .map_err(|e| e.to_string())?;
    Ok(plot::bounds_figure(&plane))
}

pub fn sample_point_impl(
    scenario: &str,
    squeezing_db: f64,
    antisqueezing_db: f64,
    parameter: f64,
    shots: u32,
    seed: u64,
) -> Result<String, String> {
    let config = ScenarioConfig::new(kind(scenario)?)
        .with_spec(spec(squeezing_db, antisqueezing_db)?)
        .with_grid(vec![parameter])
        .with_mode(EvalMode::Both)
        .with_shots(shots as usize, 1)
        .with_seed(seed);
    let result = run(&config).map_err(|e| e.to_string())?;
    serde_json::to_string(&result.points[0]).map_err(|e| e.to_string())
}

/// Two-panel SVG of a full scan. `scenario` is `error_free`,
/// `nonzero_error` or `mixed_state`.
#[wasm_bindgen]
pub fn scan_svg(scenario: &str, squeezing_db: f64, antisqueezing_db: f64) -> Result<String, JsValue> {
    scan_svg_impl(scenario, squeezing_db, antisqueezing_db).map_err(|e| JsValue::from_str(&e))
}

/// SVG of the bound curves with the scan points overlaid.
#[wasm_bindgen]
pub fn bounds_svg(squeezing_db: f64, antisqueezing_db: f64) -> Result<String, JsValue> {
    bounds_svg_impl(squeezing_db, antisqueezing_db).map_err(|e| JsValue::from_str(&e))
}

/// JSON with the exact and one sampled evaluation at a single grid value.
#[wasm_bindgen]
pub fn sample_point(
    scenario: &str,
    squeezing_db: f64,
    antisqueezing_db: f64,
    parameter: f64,
    shots: u32,
    seed: u64,
) -> Result<String, JsValue> {
    sample_point_impl(scenario, squeezing_db, antisqueezing_db, parameter, shots, seed)
        .map_err(|e| JsValue::from_str(&e))
}
