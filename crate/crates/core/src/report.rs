//! CSV serialisation of scan results and bound planes.
//!
//! Numbers are written in scientific notation with nine significant digits
//! (`{:.8e}`), comma separated, one record per line, so identical inputs give
//! byte-identical files.

use crate::relations::TradeoffPoint;
use crate::scenarios::{BoundsPlane, ScenarioResult};

/// Fixed nine-significant-digit scientific formatting; `-0` is written as `0`.
pub fn format_number(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.8e}")
}

const ANALYTIC_COLUMNS: [&str; 8] = [
    "eps_a",
    "eps_b",
    "sigma_a",
    "sigma_b",
    "c_ab",
    "lhs_heisenberg",
    "lhs_ozawa",
    "lhs_branciard",
];

const MC_COLUMNS: [&str; 11] = [
    "mc_eps_a",
    "mc_spread_eps_a",
    "mc_eps_b",
    "mc_spread_eps_b",
    "mc_sigma_a",
    "mc_spread_sigma_a",
    "mc_sigma_b",
    "mc_spread_sigma_b",
    "mc_lhs_heisenberg",
    "mc_lhs_ozawa",
    "mc_lhs_branciard",
];

fn analytic_fields(p: &TradeoffPoint) -> [f64; 8] {
    [
        p.eps_a,
        p.eps_b,
        p.sigma_a,
        p.sigma_b,
        p.c_ab,
        p.lhs_heisenberg,
        p.lhs_ozawa,
        p.lhs_branciard,
    ]
}

/// Header row for a scan: parameter column, analytic columns, and the Monte
/// Carlo columns when `with_mc`.
pub fn scenario_header(parameter: &str, with_mc: bool) -> String {
    let mut cols = vec![parameter];
    cols.extend(ANALYTIC_COLUMNS);
    if with_mc {
        cols.extend(MC_COLUMNS);
    }
    cols.join(",")
}

pub fn scenario_csv(result: &ScenarioResult) -> String {
    let with_mc = result.config.mode.runs_monte_carlo();
    let mut out = scenario_header(result.config.kind.parameter_name(), with_mc);
    out.push('\n');
    for point in &result.points {
        let mut fields = vec![point.parameter];
        fields.extend(analytic_fields(&point.analytic));
        if let Some(mc) = point.mc.as_ref().filter(|_| with_mc) {
            let (p, s) = (&mc.point, &mc.spread);
            fields.extend([
                p.eps_a,
                s.eps_a,
                p.eps_b,
                s.eps_b,
                p.sigma_a,
                s.sigma_a,
                p.sigma_b,
                s.sigma_b,
                p.lhs_heisenberg,
                p.lhs_ozawa,
                p.lhs_branciard,
            ]);
        }
        let row: Vec<String> = fields.into_iter().map(format_number).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub const BOUND_CURVES_HEADER: &str = "variant,relation,sigma_a,sigma_b,eps_a,eps_b";
pub const BOUND_POINTS_HEADER: &str = "source,parameter,eps_a,eps_b,heisenberg_satisfied";

/// One row per curve sample: `variant,relation,sigma_a,sigma_b,eps_a,eps_b`.
pub fn bound_curves_csv(plane: &BoundsPlane) -> String {
    let mut out = format!("{BOUND_CURVES_HEADER}\n");
    for v in &plane.variants {
        for (name, curve) in [
            ("heisenberg", &v.heisenberg),
            ("ozawa", &v.ozawa),
            ("branciard", &v.branciard),
        ] {
            for p in curve {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    v.label,
                    name,
                    format_number(v.sigma_a),
                    format_number(v.sigma_b),
                    format_number(p.eps_a),
                    format_number(p.eps_b)
                ));
            }
        }
    }
    out
}

/// Scan points overlaid on the bound plane.
pub fn bound_points_csv(plane: &BoundsPlane) -> String {
    let mut out = format!("{BOUND_POINTS_HEADER}\n");
    for p in &plane.overlay {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            p.source.name(),
            format_number(p.parameter),
            format_number(p.eps_a),
            format_number(p.eps_b),
            p.heisenberg_satisfied
        ));
    }
    out
}
