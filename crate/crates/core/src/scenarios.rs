//! The three joint-measurement configurations and their parameter scans.
//!
//! | scenario        | state                         | A     | B     | C                     | D        |
//! |-----------------|-------------------------------|-------|-------|-----------------------|----------|
//! | error-free (θ)  | EPR, mode 2 rotated by θ      | x1    | p1    | x1                    | p2(θ)    |
//! | nonzero-error   | EPR ⊕ vacuum ancilla          | x1    | p1    | √T x1 + √(1-T) x_v    | p2       |
//! | mixed-state (T) | EPR with loss T on mode 1     | x1'   | p1'   | x1'                   | p2       |
//!
//! In the nonzero-error case `C` and `A` refer to the signal before and after
//! the lossy channel, so the observables are written on the pre-channel state
//! extended by the vacuum ancilla the channel mixes in.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{analytic_stats, sampled_stats, standard_error, ErrorStats, MeasurementForms};
use crate::gaussian::{beamsplitter_matrix, x_index, GaussianState, LinearForm, SqueezingSpec, XP_COMMUTATOR_BOUND};
use crate::relations::{
    branciard_bound_curve, heisenberg_bound_curve, ozawa_bound_curve, BoundPoint, TradeoffPoint,
};
use crate::sampler::{derive_seed, sample_observables, Observable, DEFAULT_SHOTS};

pub const DEFAULT_REPEATS: usize = 10;
pub const DEFAULT_SEED: u64 = 20190101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    /// θ-scan with `C = A`.
    ErrorFree,
    /// T-scan with the lossy signal as the proxy for `x1`.
    NonzeroError,
    /// T-scan on the lossy signal itself.
    MixedState,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 3] = [
        ScenarioKind::ErrorFree,
        ScenarioKind::NonzeroError,
        ScenarioKind::MixedState,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::ErrorFree => "error_free",
            ScenarioKind::NonzeroError => "nonzero_error",
            ScenarioKind::MixedState => "mixed_state",
        }
    }

    /// Name of the scanned parameter (also the CSV column header).
    pub fn parameter_name(self) -> &'static str {
        match self {
            ScenarioKind::ErrorFree => "theta_deg",
            ScenarioKind::NonzeroError | ScenarioKind::MixedState => "t",
        }
    }

    /// Mixed into per-point seeds.
    fn seed_tag(self) -> u64 {
        match self {
            ScenarioKind::ErrorFree => 1,
            ScenarioKind::NonzeroError => 2,
            ScenarioKind::MixedState => 3,
        }
    }

    /// θ ∈ {0°, 30°, …, 360°} or T ∈ {0.0, 0.1, …, 1.0}.
    pub fn default_grid(self) -> Vec<f64> {
        match self {
            ScenarioKind::ErrorFree => (0..=12).map(|i| 30.0 * i as f64).collect(),
            ScenarioKind::NonzeroError | ScenarioKind::MixedState => {
                (0..=10).map(|i| i as f64 / 10.0).collect()
            }
        }
    }

    fn parameter_range(self) -> (f64, f64) {
        match self {
            ScenarioKind::ErrorFree => (0.0, 360.0),
            ScenarioKind::NonzeroError | ScenarioKind::MixedState => (0.0, 1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalMode {
    Analytic,
    #[serde(rename = "mc")]
    MonteCarlo,
    Both,
}

impl EvalMode {
    pub fn runs_monte_carlo(self) -> bool {
        !matches!(self, EvalMode::Analytic)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub spec: SqueezingSpec,
    pub kind: ScenarioKind,
    /// θ in degrees for the error-free scan, transmission T otherwise.
    pub grid: Vec<f64>,
    pub n_shots: usize,
    pub seed: u64,
    pub mode: EvalMode,
    pub repeats: usize,
}

impl ScenarioConfig {
    /// Experimental resource, default grid, analytic only.
    pub fn new(kind: ScenarioKind) -> Self {
        ScenarioConfig {
            spec: SqueezingSpec::default(),
            kind,
            grid: kind.default_grid(),
            n_shots: DEFAULT_SHOTS,
            seed: DEFAULT_SEED,
            mode: EvalMode::Analytic,
            repeats: DEFAULT_REPEATS,
        }
    }

    pub fn with_spec(mut self, spec: SqueezingSpec) -> Self {
        self.spec = spec;
        self
    }

    pub fn with_grid(mut self, grid: Vec<f64>) -> Self {
        self.grid = grid;
        self
    }

    pub fn with_mode(mut self, mode: EvalMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_shots(mut self, n_shots: usize, repeats: usize) -> Self {
        self.n_shots = n_shots;
        self.repeats = repeats;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.spec.validate()?;
        if self.grid.is_empty() {
            return Err(Error::InvalidConfig("parameter grid is empty".into()));
        }
        let (lo, hi) = self.kind.parameter_range();
        for &v in &self.grid {
            if !(lo..=hi).contains(&v) {
                return Err(Error::InvalidConfig(format!(
                    "{} = {v} outside [{lo}, {hi}]",
                    self.kind.parameter_name()
                )));
            }
        }
        if self.grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidConfig("parameter grid must be strictly increasing".into()));
        }
        if self.mode.runs_monte_carlo() {
            if self.n_shots < 2 {
                return Err(Error::InvalidConfig("need at least 2 shots".into()));
            }
            if self.repeats == 0 {
                return Err(Error::InvalidConfig("repeats must be positive".into()));
            }
        }
        Ok(())
    }
}

/// Builds the state and the `A, B, C, D` observables for one grid value.
pub fn measurement_setup(
    spec: &SqueezingSpec,
    kind: ScenarioKind,
    parameter: f64,
) -> Result<(GaussianState, MeasurementForms)> {
    let epr = GaussianState::epr(spec)?;
    match kind {
        ScenarioKind::ErrorFree => {
            let state = epr.phase_rotate(1, parameter.to_radians())?;
            let forms = MeasurementForms {
                a: LinearForm::x(2, 0),
                b: LinearForm::p(2, 0),
                c: LinearForm::x(2, 0),
                d: LinearForm::p(2, 1),
            };
            Ok((state, forms))
        }
        ScenarioKind::NonzeroError => {
            if !(0.0..=1.0).contains(&parameter) {
                return Err(Error::TransmissionOutOfRange(parameter));
            }
            // modes: 0 signal, 1 meter, 2 vacuum ancilla of the channel
            let state = epr.with_vacuum_ancillas(1)?;
            let channel = beamsplitter_matrix(3, 0, 2, parameter);
            let lossy_x1 = channel.row(x_index(0)).iter().copied().collect();
            let forms = MeasurementForms {
                a: LinearForm::x(3, 0),
                b: LinearForm::p(3, 0),
                c: LinearForm::from_coeffs(lossy_x1),
                d: LinearForm::p(3, 1),
            };
            Ok((state, forms))
        }
        ScenarioKind::MixedState => {
            let state = epr.pure_loss(0, parameter)?;
            let forms = MeasurementForms {
                a: LinearForm::x(2, 0),
                b: LinearForm::p(2, 0),
                c: LinearForm::x(2, 0),
                d: LinearForm::p(2, 1),
            };
            Ok((state, forms))
        }
    }
}

/// Exact statistics and relation values at one grid value.
pub fn evaluate_analytic(spec: &SqueezingSpec, kind: ScenarioKind, parameter: f64) -> Result<TradeoffPoint> {
    let (state, forms) = measurement_setup(spec, kind, parameter)?;
    let stats = analytic_stats(&state, &forms)?;
    TradeoffPoint::evaluate(&stats, XP_COMMUTATOR_BOUND)
}

/// Per-statistic spread (population standard deviation) across repeats.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatsSpread {
    pub eps_a: f64,
    pub eps_b: f64,
    pub sigma_a: f64,
    pub sigma_b: f64,
}

/// Monte Carlo estimate at one grid value, averaged over repeats.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McSummary {
    pub point: TradeoffPoint,
    pub spread: StatsSpread,
    pub seeds: Vec<u64>,
    pub n_shots: usize,
}

impl McSummary {
    /// Largest `|mc - analytic| / SE` over the four statistics, with SE taken
    /// from the analytic value and the total shot count. Zero analytic values
    /// demand an exact zero estimate.
    pub fn max_standard_score(&self, analytic: &TradeoffPoint) -> f64 {
        let total = self.n_shots * self.seeds.len();
        [
            (self.point.eps_a, analytic.eps_a),
            (self.point.eps_b, analytic.eps_b),
            (self.point.sigma_a, analytic.sigma_a),
            (self.point.sigma_b, analytic.sigma_b),
        ]
        .iter()
        .map(|&(mc, exact)| {
            let se = standard_error(exact, total);
            let diff = (mc - exact).abs();
            if se == 0.0 {
                if diff == 0.0 { 0.0 } else { f64::INFINITY }
            } else {
                diff / se
            }
        })
        .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioPoint {
    pub parameter: f64,
    pub analytic: TradeoffPoint,
    pub mc: Option<McSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult {
    pub config: ScenarioConfig,
    pub points: Vec<ScenarioPoint>,
}

fn sample_once(
    state: &GaussianState,
    observables: &[Observable],
    n_shots: usize,
    seed: u64,
) -> Result<ErrorStats> {
    let samples = sample_observables(state, observables, n_shots, seed)?;
    sampled_stats(&samples, [0, 1, 2, 3])
}

fn summarize(runs: &[ErrorStats], seeds: Vec<u64>, n_shots: usize) -> McSummary {
    let n = runs.len() as f64;
    let pick: [fn(&ErrorStats) -> f64; 4] = [|s| s.eps_a, |s| s.eps_b, |s| s.sigma_a, |s| s.sigma_b];
    let moments = pick.map(|f| {
        let mean = runs.iter().map(f).sum::<f64>() / n;
        let var = runs.iter().map(|s| (f(s) - mean).powi(2)).sum::<f64>() / n;
        (mean, var.sqrt())
    });
    let mean_stats = ErrorStats {
        eps_a: moments[0].0,
        eps_b: moments[1].0,
        sigma_a: moments[2].0,
        sigma_b: moments[3].0,
        source: runs[0].source,
    };
    McSummary {
        point: TradeoffPoint::evaluate_sampled(&mean_stats, XP_COMMUTATOR_BOUND),
        spread: StatsSpread {
            eps_a: moments[0].1,
            eps_b: moments[1].1,
            sigma_a: moments[2].1,
            sigma_b: moments[3].1,
        },
        seeds,
        n_shots,
    }
}

#[cfg(feature = "parallel")]
fn map_jobs<T, F>(jobs: Vec<(usize, usize)>, f: F) -> Vec<Result<T>>
where
    T: Send,
    F: Fn(usize, usize) -> Result<T> + Sync,
{
    use rayon::prelude::*;
    jobs.into_par_iter().map(|(i, r)| f(i, r)).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_jobs<T, F>(jobs: Vec<(usize, usize)>, f: F) -> Vec<Result<T>>
where
    F: Fn(usize, usize) -> Result<T>,
{
    jobs.into_iter().map(|(i, r)| f(i, r)).collect()
}

/// Runs one scan. Per-point, per-repeat seeds come from
/// [`derive_seed`]`(seed, scenario tag, grid index, repeat)`, so the output
/// does not depend on evaluation order or thread count.
pub fn run(config: &ScenarioConfig) -> Result<ScenarioResult> {
    config.validate()?;
    let setups = config
        .grid
        .iter()
        .map(|&p| measurement_setup(&config.spec, config.kind, p))
        .collect::<Result<Vec<_>>>()?;

    let mut points = Vec::with_capacity(setups.len());
    for (&parameter, (state, forms)) in config.grid.iter().zip(&setups) {
        let stats = analytic_stats(state, forms)?;
        points.push(ScenarioPoint {
            parameter,
            analytic: TradeoffPoint::evaluate(&stats, XP_COMMUTATOR_BOUND)?,
            mc: None,
        });
    }

    if config.mode.runs_monte_carlo() {
        let observables: Vec<Vec<Observable>> = setups
            .iter()
            .map(|(_, f)| {
                vec![
                    Observable::new("A", f.a.clone()),
                    Observable::new("B", f.b.clone()),
                    Observable::new("C", f.c.clone()),
                    Observable::new("D", f.d.clone()),
                ]
            })
            .collect();
        let seed_of = |i: usize, r: usize| derive_seed(config.seed, config.kind.seed_tag(), i as u64, r as u64);
        let jobs: Vec<(usize, usize)> = (0..setups.len())
            .flat_map(|i| (0..config.repeats).map(move |r| (i, r)))
            .collect();
        let runs = map_jobs(jobs, |i, r| {
            sample_once(&setups[i].0, &observables[i], config.n_shots, seed_of(i, r))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

        for (i, (point, chunk)) in points.iter_mut().zip(runs.chunks(config.repeats)).enumerate() {
            let seeds = (0..config.repeats).map(|r| seed_of(i, r)).collect();
            point.mc = Some(summarize(chunk, seeds, config.n_shots));
        }
    }

    Ok(ScenarioResult {
        config: config.clone(),
        points,
    })
}

/// Transmission `T*` at which the nonzero-error Heisenberg product crosses
/// `C_AB`: satisfied for `T <= T*`, violated above. `None` if the product is
/// already below `C_AB` at `T = 0`.
pub fn heisenberg_threshold(spec: &SqueezingSpec) -> Result<Option<f64>> {
    let excess = |t: f64| -> Result<f64> {
        Ok(evaluate_analytic(spec, ScenarioKind::NonzeroError, t)?.lhs_heisenberg - XP_COMMUTATOR_BOUND)
    };
    if excess(0.0)? < 0.0 {
        return Ok(None);
    }
    // excess(1) = -C_AB < 0 and the product decreases monotonically in T.
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if excess(mid)? >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

/// Bound curves computed for one choice of `(σ(A), σ(B))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundVariant {
    /// `spec` for the configured resource, `pure_equivalent` for the pure
    /// state with the same squeezing.
    pub label: String,
    pub sigma_a: f64,
    pub sigma_b: f64,
    pub heisenberg: Vec<BoundPoint>,
    pub ozawa: Vec<BoundPoint>,
    pub branciard: Vec<BoundPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlayPoint {
    pub source: ScenarioKind,
    pub parameter: f64,
    pub eps_a: f64,
    pub eps_b: f64,
    pub heisenberg_satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsPlane {
    pub c_ab: f64,
    pub variants: Vec<BoundVariant>,
    pub overlay: Vec<OverlayPoint>,
}

fn bound_variant(label: &str, spec: &SqueezingSpec, eps_a_grid: &[f64]) -> Result<BoundVariant> {
    // pre-loss signal deviations σ(x1), σ(p1)
    let epr = GaussianState::epr(spec)?;
    let sigma_a = epr.linear_combination_variance(LinearForm::x(2, 0).as_slice())?.sqrt();
    let sigma_b = epr.linear_combination_variance(LinearForm::p(2, 0).as_slice())?.sqrt();
    let c = XP_COMMUTATOR_BOUND;
    Ok(BoundVariant {
        label: label.to_string(),
        sigma_a,
        sigma_b,
        heisenberg: heisenberg_bound_curve(eps_a_grid, c),
        ozawa: ozawa_bound_curve(eps_a_grid, sigma_a, sigma_b, c),
        branciard: branciard_bound_curve(eps_a_grid, sigma_a, sigma_b, c)?,
    })
}

/// The three bound curves in the `(ε(A), ε(B))` plane, overlaid with the
/// analytic points of both T-scans and the θ = 0 error-free point.
pub fn assemble_bounds_plane(spec: &SqueezingSpec, eps_a_grid: &[f64], t_grid: &[f64]) -> Result<BoundsPlane> {
    spec.validate()?;
    let mut variants = vec![bound_variant("spec", spec, eps_a_grid)?];
    if matches!(spec, SqueezingSpec::Impure { .. }) {
        variants.push(bound_variant("pure_equivalent", &spec.pure_equivalent(), eps_a_grid)?);
    }

    let mut overlay = Vec::new();
    let mut push = |kind: ScenarioKind, parameter: f64| -> Result<()> {
        let p = evaluate_analytic(spec, kind, parameter)?;
        overlay.push(OverlayPoint {
            source: kind,
            parameter,
            eps_a: p.eps_a,
            eps_b: p.eps_b,
            heisenberg_satisfied: p.heisenberg_satisfied,
        });
        Ok(())
    };
    push(ScenarioKind::ErrorFree, 0.0)?;
    for &t in t_grid {
        push(ScenarioKind::NonzeroError, t)?;
    }
    for &t in t_grid {
        push(ScenarioKind::MixedState, t)?;
    }
    Ok(BoundsPlane {
        c_ab: XP_COMMUTATOR_BOUND,
        variants,
        overlay,
    })
}
