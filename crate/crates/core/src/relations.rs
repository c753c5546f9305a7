//! Heisenberg, Ozawa and Branciard error-tradeoff relations.
//!
//! Each relation reads `LHS(ε(A), ε(B), σ(A), σ(B)) >= C_AB`:
//!
//! * Heisenberg: `ε(A) ε(B)`
//! * Ozawa: `ε(A) ε(B) + ε(A) σ(B) + σ(A) ε(B)`
//! * Branciard: `sqrt(ε(A)² σ(B)² + σ(A)² ε(B)² + 2 ε(A) ε(B) sqrt(σ(A)² σ(B)² - C_AB²))`
//!
//! The bound curves are the equality sets of each relation in the
//! `(ε(A), ε(B))` plane for fixed `σ(A)`, `σ(B)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::ErrorStats;

/// Slack used when classifying a relation as satisfied.
pub const SATISFY_TOL: f64 = 1e-9;

const REGIME_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Heisenberg,
    Ozawa,
    Branciard,
}

impl Relation {
    pub const ALL: [Relation; 3] = [Relation::Heisenberg, Relation::Ozawa, Relation::Branciard];

    pub fn name(self) -> &'static str {
        match self {
            Relation::Heisenberg => "heisenberg",
            Relation::Ozawa => "ozawa",
            Relation::Branciard => "branciard",
        }
    }
}

pub fn heisenberg_lhs(eps_a: f64, eps_b: f64) -> f64 {
    eps_a * eps_b
}

pub fn ozawa_lhs(eps_a: f64, eps_b: f64, sigma_a: f64, sigma_b: f64) -> f64 {
    eps_a * eps_b + eps_a * sigma_b + sigma_a * eps_b
}

/// `σ(A)² σ(B)² - C_AB²`, with values in `[-1e-12, 0)` clamped to zero.
fn branciard_gap(sigma_a: f64, sigma_b: f64, c_ab: f64) -> Result<f64> {
    let gap = sigma_a * sigma_a * sigma_b * sigma_b - c_ab * c_ab;
    if gap < -REGIME_TOL {
        return Err(Error::InvalidRegime(gap));
    }
    Ok(gap.max(0.0))
}

fn branciard_from_gap(eps_a: f64, eps_b: f64, sigma_a: f64, sigma_b: f64, gap: f64) -> f64 {
    let sq = eps_a * eps_a * sigma_b * sigma_b
        + sigma_a * sigma_a * eps_b * eps_b
        + 2.0 * eps_a * eps_b * gap.sqrt();
    sq.max(0.0).sqrt()
}

pub fn branciard_lhs(eps_a: f64, eps_b: f64, sigma_a: f64, sigma_b: f64, c_ab: f64) -> Result<f64> {
    let gap = branciard_gap(sigma_a, sigma_b, c_ab)?;
    Ok(branciard_from_gap(eps_a, eps_b, sigma_a, sigma_b, gap))
}

/// Like [`branciard_lhs`] but treats any negative gap as zero. Meant for
/// sampled deviations, where noise can push `σ(A)σ(B)` just below `C_AB` for
/// minimum-uncertainty states.
pub fn branciard_lhs_saturating(eps_a: f64, eps_b: f64, sigma_a: f64, sigma_b: f64, c_ab: f64) -> f64 {
    let gap = (sigma_a * sigma_a * sigma_b * sigma_b - c_ab * c_ab).max(0.0);
    branciard_from_gap(eps_a, eps_b, sigma_a, sigma_b, gap)
}

/// One evaluated configuration with all three relation left-hand sides.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TradeoffPoint {
    pub eps_a: f64,
    pub eps_b: f64,
    pub sigma_a: f64,
    pub sigma_b: f64,
    pub c_ab: f64,
    pub lhs_heisenberg: f64,
    pub lhs_ozawa: f64,
    pub lhs_branciard: f64,
    pub heisenberg_satisfied: bool,
    pub ozawa_satisfied: bool,
    pub branciard_satisfied: bool,
}

impl TradeoffPoint {
    fn assemble(stats: &ErrorStats, c_ab: f64, lhs_branciard: f64) -> Self {
        let lhs_heisenberg = heisenberg_lhs(stats.eps_a, stats.eps_b);
        let lhs_ozawa = ozawa_lhs(stats.eps_a, stats.eps_b, stats.sigma_a, stats.sigma_b);
        let ok = |lhs: f64| lhs >= c_ab - SATISFY_TOL;
        TradeoffPoint {
            eps_a: stats.eps_a,
            eps_b: stats.eps_b,
            sigma_a: stats.sigma_a,
            sigma_b: stats.sigma_b,
            c_ab,
            lhs_heisenberg,
            lhs_ozawa,
            lhs_branciard,
            heisenberg_satisfied: ok(lhs_heisenberg),
            ozawa_satisfied: ok(lhs_ozawa),
            branciard_satisfied: ok(lhs_branciard),
        }
    }

    /// Evaluates exact statistics; fails if `σ(A)σ(B) < C_AB`.
    pub fn evaluate(stats: &ErrorStats, c_ab: f64) -> Result<Self> {
        let b = branciard_lhs(stats.eps_a, stats.eps_b, stats.sigma_a, stats.sigma_b, c_ab)?;
        Ok(Self::assemble(stats, c_ab, b))
    }

    /// Evaluates sampled statistics, saturating the Branciard square root.
    pub fn evaluate_sampled(stats: &ErrorStats, c_ab: f64) -> Self {
        let b = branciard_lhs_saturating(stats.eps_a, stats.eps_b, stats.sigma_a, stats.sigma_b, c_ab);
        Self::assemble(stats, c_ab, b)
    }

    pub fn lhs(&self, relation: Relation) -> f64 {
        match relation {
            Relation::Heisenberg => self.lhs_heisenberg,
            Relation::Ozawa => self.lhs_ozawa,
            Relation::Branciard => self.lhs_branciard,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundPoint {
    pub eps_a: f64,
    pub eps_b: f64,
}

/// `ε(B) = C_AB / ε(A)`. Non-positive `ε(A)` values are dropped since the
/// bound diverges there.
pub fn heisenberg_bound_curve(eps_a_grid: &[f64], c_ab: f64) -> Vec<BoundPoint> {
    eps_a_grid
        .iter()
        .filter(|&&e| e > 0.0)
        .map(|&eps_a| BoundPoint {
            eps_a,
            eps_b: c_ab / eps_a,
        })
        .collect()
}

/// Ozawa equality solved for `ε(B)`, clamped at zero once
/// `ε(A) >= C_AB / σ(B)`.
pub fn ozawa_bound_curve(eps_a_grid: &[f64], sigma_a: f64, sigma_b: f64, c_ab: f64) -> Vec<BoundPoint> {
    eps_a_grid
        .iter()
        .map(|&eps_a| BoundPoint {
            eps_a,
            eps_b: ((c_ab - eps_a * sigma_b) / (eps_a + sigma_a)).max(0.0),
        })
        .collect()
}

/// Branciard equality solved for `ε(B)`: the larger root of
/// `σa² x² + 2 εa sqrt(σa²σb² - c²) x + (εa² σb² - c²) = 0`, whose
/// discriminant simplifies to `4 c² (σa² - εa²)`.
pub fn branciard_bound_curve(
    eps_a_grid: &[f64],
    sigma_a: f64,
    sigma_b: f64,
    c_ab: f64,
) -> Result<Vec<BoundPoint>> {
    let gap = branciard_gap(sigma_a, sigma_b, c_ab)?;
    let root_gap = gap.sqrt();
    let sa2 = sigma_a * sigma_a;
    Ok(eps_a_grid
        .iter()
        .map(|&eps_a| {
            let eps_b = if eps_a * sigma_b >= c_ab {
                0.0
            } else {
                let disc = (sa2 - eps_a * eps_a).max(0.0);
                ((c_ab * disc.sqrt() - eps_a * root_gap) / sa2).max(0.0)
            };
            BoundPoint { eps_a, eps_b }
        })
        .collect())
}

/// Evenly spaced grid `start, start + step, ...` up to `end` inclusive
/// (within a relative 1e-9 of `step`).
pub fn linear_grid(start: f64, end: f64, step: f64) -> Vec<f64> {
    if step <= 0.0 || end < start {
        return vec![start];
    }
    let n = ((end - start) / step + 1e-9).floor() as usize;
    if n > 0 && ((end - start) - n as f64 * step).abs() <= 1e-9 * step {
        // step divides the span: interpolate so the endpoint is exact
        return (0..=n).map(|i| start + (end - start) * i as f64 / n as f64).collect();
    }
    (0..=n).map(|i| start + i as f64 * step).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::StatsSource;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    const C: f64 = 0.25;

    #[test]
    fn heisenberg_examples() {
        assert_eq!(heisenberg_lhs(0.0, 0.5064), 0.0);
        assert_eq!(heisenberg_lhs(0.5, 0.5), 0.25);
    }

    #[test]
    fn ozawa_examples() {
        assert_eq!(ozawa_lhs(0.5, 0.5, 0.5, 0.5), 0.75);
        assert_eq!(ozawa_lhs(0.0, 0.3, 0.7, 0.9), 0.7 * 0.3);
        // error-free point of the pure r = ln(10)·2.9/20 state
        let r: f64 = 0.3338748384841367;
        let sigma = ((2.0 * r).cosh() / 4.0).sqrt();
        let eps_b = (-r).exp() / 2f64.sqrt();
        assert_abs_diff_eq!(
            ozawa_lhs(0.0, eps_b, sigma, sigma),
            (1.0 + (-4.0 * r).exp()).sqrt() / 4.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn branciard_examples() {
        let b = branciard_lhs(0.0, 0.3, 0.7, 0.9, C).unwrap();
        assert_abs_diff_eq!(b, ozawa_lhs(0.0, 0.3, 0.7, 0.9), epsilon = 1e-15);
        // minimum-uncertainty state: cross term vanishes
        let (sa, sb) = (0.5, 0.5);
        let b = branciard_lhs(0.3, 0.4, sa, sb, C).unwrap();
        assert_abs_diff_eq!(b, (0.09f64 * 0.25 + 0.25 * 0.16).sqrt(), epsilon = 1e-15);
        assert!(matches!(branciard_lhs(0.1, 0.1, 0.4, 0.4, C), Err(Error::InvalidRegime(_))));
        assert_eq!(branciard_lhs_saturating(0.0, 0.5, 0.4, 0.4, C), 0.4 * 0.5);
    }

    #[test]
    fn tradeoff_point_flags() {
        let stats = ErrorStats {
            eps_a: 0.0,
            eps_b: 0.5,
            sigma_a: 0.6,
            sigma_b: 0.6,
            source: StatsSource::Analytic,
        };
        let p = TradeoffPoint::evaluate(&stats, C).unwrap();
        assert!(!p.heisenberg_satisfied);
        assert!(p.ozawa_satisfied && p.branciard_satisfied);
        assert_eq!(p.lhs(Relation::Ozawa), p.lhs_ozawa);
        assert_abs_diff_eq!(p.lhs_ozawa, p.lhs_branciard, epsilon = 1e-15);
    }

    #[test]
    fn heisenberg_curve() {
        let c = heisenberg_bound_curve(&[0.0, 0.25, 0.5, 1.0, 4.0], C);
        assert_eq!(c.len(), 4);
        assert_eq!(c[0], BoundPoint { eps_a: 0.25, eps_b: 1.0 });
        assert_eq!(c[1].eps_b, 0.5);
        assert!(c.windows(2).all(|w| w[1].eps_b < w[0].eps_b));
    }

    #[test]
    fn curve_axis_intercepts() {
        let (sa, sb) = (0.6, 0.7);
        let o = ozawa_bound_curve(&[0.0, C / sb], sa, sb, C);
        let b = branciard_bound_curve(&[0.0, C / sb], sa, sb, C).unwrap();
        assert_abs_diff_eq!(o[0].eps_b, C / sa, epsilon = 1e-15);
        assert_abs_diff_eq!(b[0].eps_b, C / sa, epsilon = 1e-15);
        assert_eq!(o[1].eps_b, 0.0);
        assert_eq!(b[1].eps_b, 0.0);
    }

    #[test]
    fn ozawa_axis_for_experimental_deviation() {
        let sigma = 0.5548317294177364;
        let o = ozawa_bound_curve(&[0.0], sigma, sigma, C);
        assert_abs_diff_eq!(o[0].eps_b, 0.25 / sigma, epsilon = 1e-15);
    }

    #[test]
    fn bound_curves_reevaluate_to_c() {
        let (sa, sb) = (0.61, 0.58);
        let grid = linear_grid(0.0, 1.0, 0.01);
        for p in ozawa_bound_curve(&grid, sa, sb, C).iter().filter(|p| p.eps_b > 0.0) {
            assert_abs_diff_eq!(ozawa_lhs(p.eps_a, p.eps_b, sa, sb), C, epsilon = 1e-12);
        }
        for p in branciard_bound_curve(&grid, sa, sb, C).unwrap().iter().filter(|p| p.eps_b > 0.0) {
            assert_abs_diff_eq!(branciard_lhs(p.eps_a, p.eps_b, sa, sb, C).unwrap(), C, epsilon = 1e-9);
        }
    }

    #[test]
    fn grid_helper() {
        assert_eq!(linear_grid(0.0, 1.0, 0.25), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(linear_grid(0.0, 360.0, 30.0).len(), 13);
        assert_eq!(linear_grid(0.0, 1.0, 0.1).len(), 11);
    }

    fn sigmas() -> impl Strategy<Value = (f64, f64)> {
        (0.05..3.0f64, 0.0..2.0f64).prop_map(|(sa, extra)| {
            let sb_min = C / sa;
            (sa, sb_min * (1.0 + extra))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn branciard_never_exceeds_ozawa(
            (sa, sb) in sigmas(),
            ea in 0.0..3.0f64,
            eb in 0.0..3.0f64,
        ) {
            let b = branciard_lhs(ea, eb, sa, sb, C).unwrap();
            prop_assert!(b <= ozawa_lhs(ea, eb, sa, sb) + 1e-12);
        }
    }

    proptest! {
        #[test]
        fn curves_monotone_and_ordered((sa, sb) in sigmas()) {
            let grid = linear_grid(0.0, 2.0, 0.02);
            let o = ozawa_bound_curve(&grid, sa, sb, C);
            let b = branciard_bound_curve(&grid, sa, sb, C).unwrap();
            for w in o.windows(2) { prop_assert!(w[1].eps_b <= w[0].eps_b + 1e-15); }
            for w in b.windows(2) { prop_assert!(w[1].eps_b <= w[0].eps_b + 1e-15); }
            // Branciard is the stronger constraint, so its boundary sits on or above Ozawa's.
            for (po, pb) in o.iter().zip(&b) { prop_assert!(pb.eps_b >= po.eps_b - 1e-12); }
            for p in b.iter().filter(|p| p.eps_b > 0.0) {
                let lhs = branciard_lhs(p.eps_a, p.eps_b, sa, sb, C).unwrap();
                prop_assert!((lhs - C).abs() < 1e-9);
            }
        }
    }
}
