//! Dependency-free SVG line charts: one panel per muscle, one curve per
//! surface, with a companion CSV holding the exact plotted points.

use crate::error::{Error, Result};
use crate::io::atomic::write_atomic;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub curves: Vec<Curve>,
}

const PANEL_WIDTH: f64 = 880.0;
const PANEL_HEIGHT: f64 = 240.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 150.0;
const MARGIN_TOP: f64 = 34.0;
const MARGIN_BOTTOM: f64 = 44.0;

/// Stroke color for a curve label; the three paper surfaces keep their
/// figure colors (asphalt blue, sand red, track black).
fn stroke_for(label: &str, fallback_index: usize) -> &'static str {
    const PALETTE: [&str; 6] = [
        "#1f77b4", "#d62728", "#222222", "#2ca02c", "#9467bd", "#ff7f0e",
    ];
    match label.to_ascii_lowercase().as_str() {
        "asphalt" => "#1f77b4",
        "sand" => "#d62728",
        "athletics track" | "track" => "#222222",
        _ => PALETTE[fallback_index % PALETTE.len()],
    }
}

fn axis_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if lo == hi {
        let pad = if lo == 0.0 { 1.0 } else { lo.abs() * 0.1 };
        return (lo - pad, hi + pad);
    }
    let pad = (hi - lo) * 0.05;
    (lo - pad, hi + pad)
}

fn format_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let magnitude = v.abs();
    if magnitude >= 1000.0 || magnitude < 0.01 {
        format!("{v:.2e}")
    } else if magnitude >= 10.0 {
        format!("{v:.1}")
    } else {
        format!("{v:.3}")
    }
}

/// Render stacked panels as one self-contained SVG document.
pub fn render_chart(panels: &[Panel]) -> Result<String> {
    if panels.is_empty() || panels.iter().all(|p| p.curves.is_empty()) {
        return Err(Error::InvalidSignal("no series to plot".into()));
    }
    let total_height = MARGIN_TOP + panels.len() as f64 * (PANEL_HEIGHT + MARGIN_BOTTOM);
    let total_width = MARGIN_LEFT + PANEL_WIDTH + MARGIN_RIGHT;
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total_width:.0}" height="{total_height:.0}" viewBox="0 0 {total_width:.0} {total_height:.0}" font-family="sans-serif">"#
    )
    .unwrap();
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();

    for (panel_idx, panel) in panels.iter().enumerate() {
        let top = MARGIN_TOP + panel_idx as f64 * (PANEL_HEIGHT + MARGIN_BOTTOM);
        let bottom = top + PANEL_HEIGHT;
        let left = MARGIN_LEFT;
        let right = left + PANEL_WIDTH;

        let (x_min, x_max) = axis_range(
            panel
                .curves
                .iter()
                .flat_map(|c| c.points.iter().map(|p| p.0)),
        );
        let (y_min, y_max) = axis_range(
            panel
                .curves
                .iter()
                .flat_map(|c| c.points.iter().map(|p| p.1)),
        );
        let x_of = |x: f64| left + (x - x_min) / (x_max - x_min) * PANEL_WIDTH;
        let y_of = |y: f64| bottom - (y - y_min) / (y_max - y_min) * PANEL_HEIGHT;

        writeln!(
            svg,
            r#"<text x="{left:.1}" y="{:.1}" font-size="14" font-weight="bold">{}</text>"#,
            top - 10.0,
            escape(&panel.title)
        )
        .unwrap();

        // frame and ticks
        writeln!(
            svg,
            r##"<rect x="{left:.1}" y="{top:.1}" width="{PANEL_WIDTH:.1}" height="{PANEL_HEIGHT:.1}" fill="none" stroke="#888" stroke-width="1"/>"##
        )
        .unwrap();
        for i in 0..=5 {
            let frac = i as f64 / 5.0;
            let x_val = x_min + frac * (x_max - x_min);
            let x_px = x_of(x_val);
            writeln!(
                svg,
                r##"<line x1="{x_px:.1}" y1="{bottom:.1}" x2="{x_px:.1}" y2="{:.1}" stroke="#888"/>"##,
                bottom + 5.0
            )
            .unwrap();
            writeln!(
                svg,
                r#"<text x="{x_px:.1}" y="{:.1}" font-size="11" text-anchor="middle">{}</text>"#,
                bottom + 18.0,
                format_tick(x_val)
            )
            .unwrap();

            let y_val = y_min + frac * (y_max - y_min);
            let y_px = y_of(y_val);
            writeln!(
                svg,
                r##"<line x1="{:.1}" y1="{y_px:.1}" x2="{left:.1}" y2="{y_px:.1}" stroke="#888"/>"##,
                left - 5.0
            )
            .unwrap();
            writeln!(
                svg,
                r#"<text x="{:.1}" y="{:.1}" font-size="11" text-anchor="end">{}</text>"#,
                left - 8.0,
                y_px + 4.0,
                format_tick(y_val)
            )
            .unwrap();
        }
        // axis labels
        writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="middle">{}</text>"#,
            (left + right) / 2.0,
            bottom + 34.0,
            escape(&panel.x_label)
        )
        .unwrap();
        writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="middle" transform="rotate(-90 {:.1} {:.1})">{}</text>"#,
            left - 50.0,
            (top + bottom) / 2.0,
            left - 50.0,
            (top + bottom) / 2.0,
            escape(&panel.y_label)
        )
        .unwrap();

        for (curve_idx, curve) in panel.curves.iter().enumerate() {
            let stroke = stroke_for(&curve.label, curve_idx);
            let dash = match curve_idx % 3 {
                0 => "",
                1 => r#" stroke-dasharray="6 3""#,
                _ => r#" stroke-dasharray="2 2""#,
            };
            let mut points = String::new();
            for (x, y) in &curve.points {
                write!(points, "{:.2},{:.2} ", x_of(*x), y_of(*y)).unwrap();
            }
            writeln!(
                svg,
                r#"<polyline fill="none" stroke="{stroke}" stroke-width="1.5"{dash} points="{}"/>"#,
                points.trim_end()
            )
            .unwrap();

            // legend entry
            let legend_y = top + 14.0 + curve_idx as f64 * 18.0;
            writeln!(
                svg,
                r#"<line x1="{:.1}" y1="{legend_y:.1}" x2="{:.1}" y2="{legend_y:.1}" stroke="{stroke}" stroke-width="2"{dash}/>"#,
                right + 10.0,
                right + 34.0
            )
            .unwrap();
            writeln!(
                svg,
                r#"<text x="{:.1}" y="{:.1}" font-size="11">{}</text>"#,
                right + 40.0,
                legend_y + 4.0,
                escape(&curve.label)
            )
            .unwrap();
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub const PLOT_CSV_HEADER: &str = "panel,curve,time_s,value";

/// Write the chart and a companion CSV holding the exact plotted points.
pub fn write_plot(svg_path: &Path, csv_path: &Path, panels: &[Panel]) -> Result<()> {
    let svg = render_chart(panels)?;
    let mut csv = String::new();
    csv.push_str(PLOT_CSV_HEADER);
    csv.push('\n');
    for panel in panels {
        for curve in &panel.curves {
            for (x, y) in &curve.points {
                writeln!(csv, "{},{},{x},{y}", panel.title, curve.label).unwrap();
            }
        }
    }
    write_atomic(svg_path, svg.as_bytes())?;
    write_atomic(csv_path, csv.as_bytes())
}
