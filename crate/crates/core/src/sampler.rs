//! Seeded Monte Carlo draws of jointly Gaussian quadrature outcomes.
//!
//! Each shot is one simultaneous record of every requested linear form, drawn
//! from the projected normal `N(M·mean, M·cov·Mᵀ)`. The generator is
//! `ChaCha20Rng::seed_from_u64(seed)`, which is portable and platform
//! independent, so a `(state, observables, n_shots, seed)` tuple always
//! reproduces the same bits.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{GaussianState, LinearForm};

/// Shots per record used by the experiment.
pub const DEFAULT_SHOTS: usize = 500_000;

const EIGEN_TOL: f64 = 1e-10;

/// A measured observable: a label and its quadrature coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Observable {
    pub label: String,
    pub form: LinearForm,
}

impl Observable {
    pub fn new(label: impl Into<String>, form: LinearForm) -> Self {
        Observable {
            label: label.into(),
            form,
        }
    }
}

/// Joint outcomes, one column per observable.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    labels: Vec<String>,
    columns: Vec<Vec<f64>>,
    seed: u64,
    n_shots: usize,
}

impl SampleSet {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn n_shots(&self) -> usize {
        self.n_shots
    }

    pub fn n_observables(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, index: usize) -> &[f64] {
        &self.columns[index]
    }

    pub fn column_by_label(&self, label: &str) -> Option<&[f64]> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.columns[i].as_slice())
    }

    /// One shot across all observables.
    pub fn row(&self, shot: usize) -> Vec<f64> {
        self.columns.iter().map(|c| c[shot]).collect()
    }
}

/// Mixes a base seed with a scenario tag, grid index and repeat index into an
/// independent 64-bit seed (SplitMix64 finaliser applied per component).
pub fn derive_seed(base: u64, tag: u64, grid_index: u64, repeat: u64) -> u64 {
    [tag, grid_index, repeat]
        .into_iter()
        .fold(splitmix64(base), |acc, part| splitmix64(acc ^ splitmix64(part)))
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Factor `cov = L Lᵀ` through an eigendecomposition so that rank-deficient
/// projections are accepted. Eigenvalues in `[-1e-10, 0)` are clamped.
pub fn psd_factor(cov: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let eig = SymmetricEigen::new(cov.clone());
    let min = eig.eigenvalues.min();
    if min < -EIGEN_TOL {
        return Err(Error::IndefiniteProjection(min));
    }
    let scales = eig.eigenvalues.map(|l| l.max(0.0).sqrt());
    let mut factor = eig.eigenvectors;
    for (j, s) in scales.iter().enumerate() {
        factor.column_mut(j).scale_mut(*s);
    }
    Ok(factor)
}

/// Draws `n_shots` joint outcomes of `observables` measured on `state`.
///
/// Observables with identical coefficient vectors share one sampled column,
/// so e.g. `C = A` yields bit-identical columns.
pub fn sample_observables(
    state: &GaussianState,
    observables: &[Observable],
    n_shots: usize,
    seed: u64,
) -> Result<SampleSet> {
    if n_shots == 0 {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let dim = 2 * state.n_modes();
    for obs in observables {
        if obs.form.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: obs.form.len(),
            });
        }
    }

    let mut unique: Vec<&LinearForm> = Vec::new();
    let slot: Vec<usize> = observables
        .iter()
        .map(|obs| match unique.iter().position(|u| **u == obs.form) {
            Some(i) => i,
            None => {
                unique.push(&obs.form);
                unique.len() - 1
            }
        })
        .collect();

    let k = unique.len();
    let mut proj_cov = DMatrix::zeros(k, k);
    let mut proj_mean = vec![0.0; k];
    for i in 0..k {
        proj_mean[i] = state.linear_combination_mean(unique[i].as_slice())?;
        for j in 0..=i {
            let c = state.covariance_between(unique[i].as_slice(), unique[j].as_slice())?;
            proj_cov[(i, j)] = c;
            proj_cov[(j, i)] = c;
        }
    }
    let factor = if k > 0 { psd_factor(&proj_cov)? } else { DMatrix::zeros(0, 0) };

    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut drawn = vec![Vec::with_capacity(n_shots); k];
    let mut z = vec![0.0; k];
    for _ in 0..n_shots {
        for zi in z.iter_mut() {
            *zi = StandardNormal.sample(&mut rng);
        }
        for (i, col) in drawn.iter_mut().enumerate() {
            let mut y = proj_mean[i];
            for (j, zj) in z.iter().enumerate() {
                y += factor[(i, j)] * zj;
            }
            col.push(y);
        }
    }

    let columns = slot.iter().map(|&s| drawn[s].clone()).collect();
    Ok(SampleSet {
        labels: observables.iter().map(|o| o.label.clone()).collect(),
        columns,
        seed,
        n_shots,
    })
}
