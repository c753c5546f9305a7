//! Error and deviation statistics, from samples and from covariance algebra.
//!
//! `ε(A) = <(C - A)²>^{1/2}` is the raw (uncentred) RMS of the difference
//! column; `σ(A)` is the centred population standard deviation (1/n).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{GaussianState, LinearForm};
use crate::sampler::SampleSet;

/// Where a set of statistics came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StatsSource {
    Analytic,
    MonteCarlo { n_shots: usize, seed: u64 },
}

/// `ε(A)`, `ε(B)`, `σ(A)`, `σ(B)` for one configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorStats {
    pub eps_a: f64,
    pub eps_b: f64,
    pub sigma_a: f64,
    pub sigma_b: f64,
    pub source: StatsSource,
}

/// The four observables of a joint-measurement configuration: targets `A`, `B`
/// and the compatible proxies `C`, `D` actually read out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementForms {
    pub a: LinearForm,
    pub b: LinearForm,
    pub c: LinearForm,
    pub d: LinearForm,
}

fn check_len(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: n });
    }
    Ok(())
}

/// `sqrt(mean((c - a)²))`, no mean subtraction.
pub fn rms_error(samples_c: &[f64], samples_a: &[f64]) -> Result<f64> {
    if samples_c.len() != samples_a.len() {
        return Err(Error::LengthMismatch(samples_c.len(), samples_a.len()));
    }
    check_len(samples_c.len())?;
    let sum_sq: f64 = samples_c
        .iter()
        .zip(samples_a)
        .map(|(c, a)| (c - a) * (c - a))
        .sum();
    Ok((sum_sq / samples_c.len() as f64).sqrt())
}

/// Population standard deviation.
pub fn std_dev(samples: &[f64]) -> Result<f64> {
    check_len(samples.len())?;
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    Ok(var.sqrt())
}

/// Exact statistics from the covariance matrix.
pub fn analytic_stats(state: &GaussianState, forms: &MeasurementForms) -> Result<ErrorStats> {
    let var = |f: &LinearForm| state.linear_combination_variance(f.as_slice());
    // ε uses the raw second moment, so fold in the squared mean difference.
    let raw = |f: LinearForm| -> Result<f64> {
        let m = state.linear_combination_mean(f.as_slice())?;
        Ok((var(&f)? + m * m).sqrt())
    };
    Ok(ErrorStats {
        eps_a: raw(forms.c.minus(&forms.a))?,
        eps_b: raw(forms.d.minus(&forms.b))?,
        sigma_a: var(&forms.a)?.sqrt(),
        sigma_b: var(&forms.b)?.sqrt(),
        source: StatsSource::Analytic,
    })
}

/// Statistics from a sample set whose columns `[a, b, c, d]` hold the targets
/// and proxies.
pub fn sampled_stats(samples: &SampleSet, columns: [usize; 4]) -> Result<ErrorStats> {
    let [a, b, c, d] = columns.map(|i| samples.column(i));
    Ok(ErrorStats {
        eps_a: rms_error(c, a)?,
        eps_b: rms_error(d, b)?,
        sigma_a: std_dev(a)?,
        sigma_b: std_dev(b)?,
        source: StatsSource::MonteCarlo {
            n_shots: samples.n_shots(),
            seed: samples.seed(),
        },
    })
}

/// Large-sample standard error of an RMS or standard-deviation estimate of a
/// zero-mean Gaussian quantity with true value `value`, averaged over
/// `n_samples` draws in total: `value / sqrt(2 n)`.
pub fn standard_error(value: f64, n_samples: usize) -> f64 {
    value / (2.0 * n_samples as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::SqueezingSpec;
    use crate::sampler::{sample_observables, Observable, DEFAULT_SHOTS};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    const R_EXP: f64 = 0.3338748384841367; // ln(10)·2.9/20

    #[test]
    fn rms_basics() {
        let a = [1.0, -2.0, 3.5, 0.25];
        assert_eq!(rms_error(&a, &a).unwrap(), 0.0);
        let shifted: Vec<f64> = a.iter().map(|x| x - 0.75).collect();
        assert_abs_diff_eq!(rms_error(&shifted, &a).unwrap(), 0.75, epsilon = 1e-15);
        assert_eq!(rms_error(&a, &a[..3]), Err(Error::LengthMismatch(4, 3)));
        assert!(matches!(rms_error(&[], &[]), Err(Error::TooFewSamples { .. })));
    }

    #[test]
    fn std_basics() {
        assert_eq!(std_dev(&[2.0; 10]).unwrap(), 0.0);
        assert_abs_diff_eq!(std_dev(&[1.0, 3.0]).unwrap(), 1.0, epsilon = 1e-15);
        assert!(std_dev(&[]).is_err());
    }

    #[test]
    fn sampled_error_and_deviation() {
        let st = GaussianState::epr(&SqueezingSpec::pure(R_EXP)).unwrap();
        let obs = [
            Observable::new("p2", LinearForm::p(2, 1)),
            Observable::new("p1", LinearForm::p(2, 0)),
            Observable::new("x1", LinearForm::x(2, 0)),
        ];
        let s = sample_observables(&st, &obs, DEFAULT_SHOTS, 21).unwrap();
        let eps = rms_error(s.column(0), s.column(1)).unwrap();
        assert!((eps / 0.5063898616636024 - 1.0).abs() < 0.01, "eps = {eps}");
        // √(cosh(2r)/4) evaluated independently in double precision.
        let sd = std_dev(s.column(2)).unwrap();
        assert!((sd / 0.5548317294177364 - 1.0).abs() < 0.01, "sd = {sd}");

        let vac = GaussianState::vacuum(1).unwrap();
        let v = sample_observables(&vac, &[Observable::new("x", LinearForm::x(1, 0))], 1_000_000, 2).unwrap();
        assert!((std_dev(v.column(0)).unwrap() / 0.5 - 1.0).abs() < 0.01);
    }

    fn error_free_forms() -> MeasurementForms {
        MeasurementForms {
            a: LinearForm::x(2, 0),
            b: LinearForm::p(2, 0),
            c: LinearForm::x(2, 0),
            d: LinearForm::p(2, 1),
        }
    }

    #[test]
    fn analytic_error_free() {
        for r in [0.0, 0.2, R_EXP, 1.1] {
            let st = GaussianState::epr(&SqueezingSpec::pure(r)).unwrap();
            let s = analytic_stats(&st, &error_free_forms()).unwrap();
            assert_eq!(s.eps_a, 0.0);
            assert_eq!(s.source, StatsSource::Analytic);
            let eq5 = (1.0 + (-4.0 * r).exp()).sqrt() / 4.0;
            assert_abs_diff_eq!(s.sigma_a * s.eps_b, eq5, epsilon = 1e-14);
        }
        let st = GaussianState::epr(&SqueezingSpec::pure(0.0)).unwrap();
        let s = analytic_stats(&st, &error_free_forms()).unwrap();
        assert_abs_diff_eq!(s.sigma_a * s.eps_b, 0.35355339059327373, epsilon = 1e-15);
    }

    #[test]
    fn analytic_dimension_mismatch() {
        let st = GaussianState::vacuum(1).unwrap();
        assert!(matches!(
            analytic_stats(&st, &error_free_forms()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sampled_stats_track_analytic() {
        let st = GaussianState::epr(&SqueezingSpec::default()).unwrap();
        let f = error_free_forms();
        let obs = [
            Observable::new("A", f.a.clone()),
            Observable::new("B", f.b.clone()),
            Observable::new("C", f.c.clone()),
            Observable::new("D", f.d.clone()),
        ];
        let n = DEFAULT_SHOTS;
        let samples = sample_observables(&st, &obs, n, 77).unwrap();
        let mc = sampled_stats(&samples, [0, 1, 2, 3]).unwrap();
        let exact = analytic_stats(&st, &f).unwrap();
        assert_eq!(mc.eps_a, 0.0);
        for (m, e) in [
            (mc.eps_b, exact.eps_b),
            (mc.sigma_a, exact.sigma_a),
            (mc.sigma_b, exact.sigma_b),
        ] {
            assert!((m - e).abs() < 5.0 * standard_error(e, n), "{m} vs {e}");
        }
        assert_eq!(mc.source, StatsSource::MonteCarlo { n_shots: n, seed: 77 });
    }

    proptest! {
        #[test]
        fn rms_symmetric_and_triangle(
            cols in prop::collection::vec((-5.0..5.0f64, -5.0..5.0f64, -5.0..5.0f64), 2..64)
        ) {
            let a: Vec<f64> = cols.iter().map(|t| t.0).collect();
            let b: Vec<f64> = cols.iter().map(|t| t.1).collect();
            let c: Vec<f64> = cols.iter().map(|t| t.2).collect();
            prop_assert_eq!(rms_error(&a, &b).unwrap(), rms_error(&b, &a).unwrap());
            let lhs = rms_error(&a, &c).unwrap();
            let rhs = rms_error(&a, &b).unwrap() + rms_error(&b, &c).unwrap();
            prop_assert!(lhs <= rhs + 1e-12);
        }
    }
}
