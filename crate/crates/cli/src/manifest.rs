use std::path::Path;

use anyhow::{Context, Result};
use cv_tradeoff::scenarios::EvalMode;
use cv_tradeoff::{ScenarioKind, SqueezingSpec};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    ErrorFree,
    Nonzero,
    Mixed,
    Bounds,
}

impl Command {
    pub fn scenario_kind(self) -> Option<ScenarioKind> {
        match self {
            Command::ErrorFree => Some(ScenarioKind::ErrorFree),
            Command::Nonzero => Some(ScenarioKind::NonzeroError),
            Command::Mixed => Some(ScenarioKind::MixedState),
            Command::Bounds => None,
        }
    }

    /// Base name of the files this command writes.
    pub fn stem(self) -> &'static str {
        match self.scenario_kind() {
            Some(kind) => kind.name(),
            None => "bounds",
        }
    }
}

/// Everything needed to regenerate a run's data files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSpec {
    pub command: Command,
    pub spec: SqueezingSpec,
    /// θ (degrees) for error-free, T otherwise; for `bounds` the T values of
    /// the overlaid scan points.
    pub grid: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_a_grid: Option<Vec<f64>>,
    pub n_shots: usize,
    pub repeats: usize,
    pub seed: u64,
    pub mode: EvalMode,
    pub svg: bool,
}

/// Written next to every output as `<stem>.manifest.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub tool_version: String,
    pub timestamp: String,
    pub command_line: Vec<String>,
    pub run: RunSpec,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(run: RunSpec, command_line: Vec<String>, outputs: Vec<String>) -> Self {
        RunManifest {
            tool: env!("CARGO_BIN_NAME").to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            command_line,
            run,
            outputs,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing manifest {}", path.display()))
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_round_trip_and_key_order() {
        let run = RunSpec {
            command: Command::Bounds,
            spec: SqueezingSpec::default(),
            grid: vec![0.0, 0.5, 1.0],
            eps_a_grid: Some(vec![0.0, 1.0]),
            n_shots: 10,
            repeats: 2,
            seed: 3,
            mode: EvalMode::Analytic,
            svg: false,
        };
        let m = RunManifest::new(run, vec!["cv-tradeoff".into()], vec!["bounds_curves.csv".into()]);
        let json = m.to_json().unwrap();
        let back: RunManifest = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        let keys = ["\"tool\"", "\"tool_version\"", "\"timestamp\"", "\"command_line\"", "\"run\"", "\"outputs\""];
        let pos: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert!(json.contains("\"kind\": \"impure\""));
    }

    #[test]
    fn stems() {
        assert_eq!(Command::ErrorFree.stem(), "error_free");
        assert_eq!(Command::Nonzero.stem(), "nonzero_error");
        assert_eq!(Command::Mixed.stem(), "mixed_state");
        assert_eq!(Command::Bounds.stem(), "bounds");
    }
}
