//! Self-contained SVG line/marker charts for the scan figures.

use std::fmt::Write;

use crate::scenarios::{BoundsPlane, EvalMode, ScenarioKind, ScenarioResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Solid,
    Dashed,
    Dotted,
    Circles,
    Diamonds,
    Squares,
}

impl Style {
    fn is_marker(self) -> bool {
        matches!(self, Style::Circles | Style::Diamonds | Style::Squares)
    }
}

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub color: String,
    pub style: Style,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn new(label: impl Into<String>, color: &str, style: Style, points: Vec<(f64, f64)>) -> Self {
        Series {
            label: label.into(),
            color: color.to_string(),
            style,
            points,
        }
    }
}

/// A horizontal reference line such as `C_AB = 1/4`.
#[derive(Debug, Clone)]
pub struct Reference {
    pub label: String,
    pub value: f64,
    pub color: String,
}

#[derive(Debug, Clone, Default)]
pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    pub references: Vec<Reference>,
    pub x_range: Option<(f64, f64)>,
    pub y_range: Option<(f64, f64)>,
    /// Fixed x tick spacing; automatic when `None`.
    pub x_tick_step: Option<f64>,
}

const PANEL_W: f64 = 640.0;
const PANEL_H: f64 = 360.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 170.0;
const MARGIN_T: f64 = 36.0;
const MARGIN_B: f64 = 50.0;

/// Tick positions covering `[lo, hi]` with a 1-2-5 step.
pub fn nice_ticks(lo: f64, hi: f64, target: usize) -> Vec<f64> {
    if !(hi > lo) {
        return vec![lo];
    }
    let raw = (hi - lo) / target.max(1) as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step + 1e-9).floor() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

fn tick_label(v: f64) -> String {
    let s = format!("{:.4}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.to_string() }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl Chart {
    fn data_range(&self) -> ((f64, f64), (f64, f64)) {
        let pts = self.series.iter().flat_map(|s| s.points.iter());
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for &(x, y) in pts.filter(|(x, y)| x.is_finite() && y.is_finite()) {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        for r in &self.references {
            y0 = y0.min(r.value);
            y1 = y1.max(r.value);
        }
        if !x0.is_finite() {
            (x0, x1) = (0.0, 1.0);
        }
        if !y0.is_finite() {
            (y0, y1) = (0.0, 1.0);
        }
        let pad = |lo: f64, hi: f64| {
            let span = if hi > lo { hi - lo } else { 1.0 };
            (lo - 0.05 * span, hi + 0.05 * span)
        };
        let xr = self.x_range.unwrap_or((x0, if x1 > x0 { x1 } else { x0 + 1.0 }));
        let yr = self.y_range.unwrap_or_else(|| pad(y0.min(0.0), y1));
        (xr, yr)
    }

    /// Writes the panel as an SVG group translated by `offset_y`.
    fn render_into(&self, out: &mut String, offset_y: f64, clip_id: &str) {
        let ((x0, x1), (y0, y1)) = self.data_range();
        let plot_w = PANEL_W - MARGIN_L - MARGIN_R;
        let plot_h = PANEL_H - MARGIN_T - MARGIN_B;
        let sx = |x: f64| MARGIN_L + (x - x0) / (x1 - x0) * plot_w;
        let sy = |y: f64| MARGIN_T + (1.0 - (y - y0) / (y1 - y0)) * plot_h;

        let _ = writeln!(out, r#"<g transform="translate(0,{offset_y})">"#);
        let _ = writeln!(
            out,
            r#"<clipPath id="{clip_id}"><rect x="{MARGIN_L}" y="{MARGIN_T}" width="{plot_w}" height="{plot_h}"/></clipPath>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
            MARGIN_L + plot_w / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            out,
            r##"<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#333"/>"##
        );
        let x_ticks = match self.x_tick_step {
            Some(step) => crate::relations::linear_grid(x0, x1, step),
            None => nice_ticks(x0, x1, 6),
        };
        for t in x_ticks {
            let x = sx(t);
            let _ = writeln!(
                out,
                r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#333"/><text x="{x:.2}" y="{:.2}" text-anchor="middle" font-size="11">{}</text>"##,
                MARGIN_T + plot_h,
                MARGIN_T + plot_h + 5.0,
                MARGIN_T + plot_h + 18.0,
                tick_label(t)
            );
        }
        for t in nice_ticks(y0, y1, 6) {
            let y = sy(t);
            let _ = writeln!(
                out,
                r##"<line x1="{:.2}" y1="{y:.2}" x2="{MARGIN_L}" y2="{y:.2}" stroke="#333"/><text x="{:.2}" y="{:.2}" text-anchor="end" font-size="11">{}</text>"##,
                MARGIN_L - 5.0,
                MARGIN_L - 8.0,
                y + 4.0,
                tick_label(t)
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-size="13">{}</text>"#,
            MARGIN_L + plot_w / 2.0,
            PANEL_H - 10.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            out,
            r#"<text transform="translate(18,{:.1}) rotate(-90)" text-anchor="middle" font-size="13">{}</text>"#,
            MARGIN_T + plot_h / 2.0,
            escape(&self.y_label)
        );

        let _ = writeln!(out, r#"<g clip-path="url(#{clip_id})">"#);
        for r in &self.references {
            let y = sy(r.value);
            let _ = writeln!(
                out,
                r#"<line class="reference" data-value="{}" x1="{MARGIN_L}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{}" stroke-width="1.5"/>"#,
                r.value,
                MARGIN_L + plot_w,
                r.color
            );
        }
        for s in &self.series {
            let finite: Vec<(f64, f64)> = s
                .points
                .iter()
                .copied()
                .filter(|(x, y)| x.is_finite() && y.is_finite())
                .collect();
            if s.style.is_marker() {
                for (x, y) in finite {
                    let (px, py) = (sx(x), sy(y));
                    let shape = match s.style {
                        Style::Circles => format!(r#"<circle cx="{px:.2}" cy="{py:.2}" r="4""#),
                        Style::Squares => format!(r#"<rect x="{:.2}" y="{:.2}" width="7" height="7""#, px - 3.5, py - 3.5),
                        _ => format!(
                            r#"<polygon points="{px:.2},{:.2} {:.2},{py:.2} {px:.2},{:.2} {:.2},{py:.2}""#,
                            py - 5.0,
                            px + 5.0,
                            py + 5.0,
                            px - 5.0
                        ),
                    };
                    let _ = writeln!(out, r#"{shape} fill="none" stroke="{}" stroke-width="1.5"/>"#, s.color);
                }
            } else if !finite.is_empty() {
                let path: Vec<String> = finite.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
                let dash = match s.style {
                    Style::Dashed => r#" stroke-dasharray="8 5""#,
                    Style::Dotted => r#" stroke-dasharray="2 4""#,
                    _ => "",
                };
                let _ = writeln!(
                    out,
                    r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="2"{dash}/>"#,
                    path.join(" "),
                    s.color
                );
            }
        }
        let _ = writeln!(out, "</g>");

        let legend_x = MARGIN_L + plot_w + 12.0;
        let entries = self
            .series
            .iter()
            .map(|s| (s.label.as_str(), s.color.as_str(), s.style))
            .chain(self.references.iter().map(|r| (r.label.as_str(), r.color.as_str(), Style::Solid)));
        for (i, (label, color, style)) in entries.enumerate() {
            let y = MARGIN_T + 10.0 + 18.0 * i as f64;
            if style.is_marker() {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{:.1}" cy="{y:.1}" r="4" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                    legend_x + 10.0
                );
            } else {
                let _ = writeln!(
                    out,
                    r#"<line x1="{legend_x:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="{color}" stroke-width="2"/>"#,
                    legend_x + 20.0
                );
            }
            let _ = writeln!(
                out,
                r#"<text x="{:.1}" y="{:.1}" font-size="12">{}</text>"#,
                legend_x + 26.0,
                y + 4.0,
                escape(label)
            );
        }
        let _ = writeln!(out, "</g>");
    }
}

/// Renders panels stacked vertically into one standalone SVG document.
pub fn render_panels(panels: &[Chart]) -> String {
    let height = PANEL_H * panels.len() as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{PANEL_W}" height="{height}" viewBox="0 0 {PANEL_W} {height}" font-family="sans-serif">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, panel) in panels.iter().enumerate() {
        panel.render_into(&mut out, PANEL_H * i as f64, &format!("plot-area-{i}"));
    }
    out.push_str("</svg>\n");
    out
}

const RED: &str = "#d62728";
const BLUE: &str = "#1f77b4";
const YELLOW: &str = "#e6a700";
const BLACK: &str = "#222222";
const GRAY: &str = "#7f7f7f";

fn c_ab_reference(c_ab: f64) -> Reference {
    Reference {
        label: format!("C_AB = {c_ab}"),
        value: c_ab,
        color: RED.to_string(),
    }
}

/// Analytic curve and/or Monte Carlo markers for one statistic.
fn series_pair<F>(result: &ScenarioResult, label: &str, color: &str, line: Style, marker: Style, pick: F) -> Vec<Series>
where
    F: Fn(&crate::relations::TradeoffPoint) -> f64,
{
    let mut out = Vec::new();
    if result.config.mode != EvalMode::MonteCarlo {
        let pts = result.points.iter().map(|p| (p.parameter, pick(&p.analytic))).collect();
        out.push(Series::new(label, color, line, pts));
    }
    if result.config.mode.runs_monte_carlo() {
        let pts = result
            .points
            .iter()
            .filter_map(|p| p.mc.as_ref().map(|m| (p.parameter, pick(&m.point))))
            .collect();
        out.push(Series::new(format!("{label} (MC)"), color, marker, pts));
    }
    out
}

/// Two-panel figure for a scan: errors on top, relation left-hand sides below.
pub fn scenario_figure(result: &ScenarioResult) -> String {
    let kind = result.config.kind;
    let (x_label, x_range, x_tick_step) = match kind {
        ScenarioKind::ErrorFree => ("relative phase θ (deg)", Some((0.0, 360.0)), Some(60.0)),
        _ => ("transmission efficiency T", Some((0.0, 1.0)), None),
    };
    let c_ab = result.points.first().map(|p| p.analytic.c_ab).unwrap_or(0.25);

    let mut errors = Chart {
        x_label: x_label.into(),
        y_label: "error".into(),
        x_range,
        x_tick_step,
        ..Chart::default()
    };
    let mut lhs = Chart {
        title: "left-hand sides of the relations".into(),
        x_label: x_label.into(),
        y_label: "LHS".into(),
        x_range,
        x_tick_step,
        references: vec![c_ab_reference(c_ab)],
        ..Chart::default()
    };
    match kind {
        ScenarioKind::ErrorFree => {
            errors.title = "error-free measurement of A: ε(B) vs θ".into();
            errors.series = series_pair(result, "ε(B)", BLUE, Style::Solid, Style::Circles, |p| p.eps_b);
            lhs.series = series_pair(result, "Ozawa = Branciard", BLACK, Style::Solid, Style::Circles, |p| p.lhs_ozawa);
            lhs.series.extend(series_pair(result, "Heisenberg", BLUE, Style::Dashed, Style::Diamonds, |p| p.lhs_heisenberg));
        }
        ScenarioKind::NonzeroError => {
            errors.title = "nonzero errors: ε(A), ε(B) vs T".into();
            errors.series = series_pair(result, "ε(A)", RED, Style::Solid, Style::Circles, |p| p.eps_a);
            errors.series.extend(series_pair(result, "ε(B)", BLUE, Style::Solid, Style::Diamonds, |p| p.eps_b));
            lhs.series = series_pair(result, "Heisenberg", BLUE, Style::Solid, Style::Diamonds, |p| p.lhs_heisenberg);
            lhs.series.extend(series_pair(result, "Ozawa", YELLOW, Style::Solid, Style::Squares, |p| p.lhs_ozawa));
            lhs.series.extend(series_pair(result, "Branciard", BLACK, Style::Solid, Style::Circles, |p| p.lhs_branciard));
        }
        ScenarioKind::MixedState => {
            errors.title = "mixed state: ε(B) vs T".into();
            errors.series = series_pair(result, "ε(B)", BLUE, Style::Solid, Style::Circles, |p| p.eps_b);
            lhs.series = series_pair(result, "Ozawa = Branciard", BLACK, Style::Solid, Style::Circles, |p| p.lhs_ozawa);
        }
    }
    render_panels(&[errors, lhs])
}

/// The bound curves in the `(ε(A), ε(B))` plane with the scan points overlaid.
pub fn bounds_figure(plane: &BoundsPlane) -> String {
    let mut chart = Chart {
        title: "lower bounds of the error-tradeoff relations".into(),
        x_label: "ε(A)".into(),
        y_label: "ε(B)".into(),
        ..Chart::default()
    };
    let x_max = plane
        .variants
        .iter()
        .flat_map(|v| v.ozawa.iter().map(|p| p.eps_a))
        .fold(0.0, f64::max);
    chart.x_range = Some((0.0, if x_max > 0.0 { x_max } else { 1.0 }));
    let y_max = plane
        .overlay
        .iter()
        .map(|p| p.eps_b)
        .chain(plane.variants.iter().map(|v| v.ozawa.first().map_or(0.0, |p| p.eps_b)))
        .fold(0.0, f64::max);
    chart.y_range = Some((0.0, 1.3 * y_max.max(0.1)));

    for (i, v) in plane.variants.iter().enumerate() {
        let suffix = if plane.variants.len() > 1 { format!(" [{}]", v.label) } else { String::new() };
        let (h, o, b) = if i == 0 { (BLUE, YELLOW, GRAY) } else { ("#9ecae1", "#f2d27a", "#c7c7c7") };
        let pts = |c: &[crate::relations::BoundPoint]| c.iter().map(|p| (p.eps_a, p.eps_b)).collect();
        chart.series.push(Series::new(format!("Heisenberg{suffix}"), h, Style::Dashed, pts(&v.heisenberg)));
        chart.series.push(Series::new(format!("Ozawa{suffix}"), o, Style::Dotted, pts(&v.ozawa)));
        chart.series.push(Series::new(format!("Branciard{suffix}"), b, Style::Solid, pts(&v.branciard)));
    }
    for (kind, color, style) in [
        (ScenarioKind::ErrorFree, RED, Style::Circles),
        (ScenarioKind::NonzeroError, BLACK, Style::Diamonds),
        (ScenarioKind::MixedState, "#2ca02c", Style::Squares),
    ] {
        let pts = plane
            .overlay
            .iter()
            .filter(|p| p.source == kind)
            .map(|p| (p.eps_a, p.eps_b))
            .collect();
        chart.series.push(Series::new(kind.name().replace('_', " "), color, style, pts));
    }
    render_panels(&[chart])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::{assemble_bounds_plane, run, ScenarioConfig};

    #[test]
    fn ticks() {
        assert_eq!(nice_ticks(0.0, 1.0, 5), vec![0.0, 0.2, 0.4, 0.6000000000000001, 0.8, 1.0]);
        assert_eq!(nice_ticks(0.0, 360.0, 6), vec![0.0, 100.0, 200.0, 300.0]);
        assert_eq!(nice_ticks(1.0, 1.0, 5), vec![1.0]);
        assert_eq!(tick_label(0.30000000000000004), "0.3");
    }

    #[test]
    fn scenario_svg_has_reference_line() {
        let res = run(&ScenarioConfig::new(ScenarioKind::ErrorFree)).unwrap();
        let svg = scenario_figure(&res);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains(r#"class="reference" data-value="0.25""#));
        assert_eq!(svg.matches("<polyline").count(), 3);
        assert!(!svg.contains("href="));
    }

    #[test]
    fn bounds_svg_renders() {
        let plane = assemble_bounds_plane(
            &crate::SqueezingSpec::default(),
            &crate::relations::linear_grid(0.0, 1.0, 0.01),
            &ScenarioKind::NonzeroError.default_grid(),
        )
        .unwrap();
        let svg = bounds_figure(&plane);
        assert_eq!(svg.matches("<polyline").count(), 6);
        assert!(svg.contains("<circle"));
        assert!(svg.contains("<polygon"));
    }
}
