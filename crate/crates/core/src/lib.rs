//! Simulation of error-tradeoff uncertainty relations on a continuous-variable
//! EPR state.
//!
//! The crate builds two-mode squeezed Gaussian states, sends them through
//! phase rotations and lossy channels, and evaluates the approximation errors
//! `ε(A)`, `ε(B)` of a joint amplitude/phase measurement, both exactly from
//! the covariance matrix and by seeded Monte Carlo homodyne sampling. The
//! Heisenberg, Ozawa and Branciard relations are then checked across the
//! error-free, nonzero-error and mixed-state configurations.

pub mod error;
pub mod estimators;
pub mod gaussian;
pub mod plot;
pub mod relations;
pub mod report;
pub mod sampler;
pub mod scenarios;

pub use error::{Error, Result};
pub use estimators::{ErrorStats, MeasurementForms, StatsSource};
pub use gaussian::{GaussianState, LinearForm, QuadratureConvention, SqueezingSpec};
pub use relations::{Relation, TradeoffPoint};
pub use sampler::{sample_observables, Observable, SampleSet};
pub use scenarios::{EvalMode, ScenarioConfig, ScenarioKind, ScenarioResult};
