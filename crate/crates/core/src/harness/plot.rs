use std::fmt::Write as _;
use std::path::Path;

use super::runner::Summary;
use crate::error::{Error, Result};

/// One curve of a regret plot.
#[derive(Debug, Clone)]
pub struct PlotSeries {
    pub label: String,
    pub summary: Summary,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 78.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 36.0;
const BOTTOM: f64 = 56.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() >= 1e4 {
        format!("{:.0}k", v / 1e3)
    } else if v.abs() >= 10.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.2}")
    }
}

struct Frame {
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn px(&self, t: f64) -> f64 {
        LEFT + t / self.x_max * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, v: f64) -> f64 {
        HEIGHT - BOTTOM - (v - self.y_min) / (self.y_max - self.y_min) * (HEIGHT - TOP - BOTTOM)
    }
}

/// Renders mean regret curves with a shaded one-std band as a standalone SVG.
pub fn render_svg(series: &[PlotSeries], title: &str) -> Result<String> {
    if series.is_empty() {
        return Err(Error::Config("nothing to plot: no summaries given".into()));
    }
    let points = || series.iter().flat_map(|s| s.summary.points.iter());
    let x_max = points().map(|p| p.t as f64).fold(0.0, f64::max).max(1.0);
    let y_min = points().map(|p| p.mean - p.std).fold(0.0, f64::min);
    let mut y_max = points().map(|p| p.mean + p.std).fold(0.0, f64::max);
    if y_max <= y_min {
        y_max = y_min + 1.0;
    }
    let frame = Frame {
        x_max,
        y_min,
        y_max,
    };

    let mut svg = String::new();
    let w = &mut svg;
    let _ = writeln!(
        w,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        w,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        w,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );

    // axes and ticks
    let (x0, x1) = (LEFT, WIDTH - RIGHT);
    let (y0, y1) = (HEIGHT - BOTTOM, TOP);
    let _ = writeln!(
        w,
        r#"<g stroke="black" fill="none"><line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}"/><line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}"/></g>"#
    );
    for k in 0..=5 {
        let t = x_max * k as f64 / 5.0;
        let x = frame.px(t);
        let _ = writeln!(
            w,
            r#"<line x1="{x:.2}" y1="{y0}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            y0 + 4.0,
            y0 + 18.0,
            tick_label(t)
        );
        let v = y_min + (y_max - y_min) * k as f64 / 5.0;
        let y = frame.py(v);
        let _ = writeln!(
            w,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{x0}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            x0 - 4.0,
            x0 - 7.0,
            y + 4.0,
            tick_label(v)
        );
    }
    let _ = writeln!(
        w,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">Round t</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 14.0
    );
    let _ = writeln!(
        w,
        r#"<text x="18" y="{0:.2}" text-anchor="middle" transform="rotate(-90 18 {0:.2})">Average cumulative regret</text>"#,
        (y0 + y1) / 2.0
    );

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts = &s.summary.points;
        if !pts.is_empty() {
            let mut band = String::new();
            for p in pts {
                let _ = write!(
                    band,
                    "{:.2},{:.2} ",
                    frame.px(p.t as f64),
                    frame.py(p.mean + p.std)
                );
            }
            for p in pts.iter().rev() {
                let _ = write!(
                    band,
                    "{:.2},{:.2} ",
                    frame.px(p.t as f64),
                    frame.py(p.mean - p.std)
                );
            }
            let _ = writeln!(
                w,
                r#"<polygon points="{}" fill="{color}" fill-opacity="0.18" stroke="none"/>"#,
                band.trim_end()
            );
            let line: Vec<String> = pts
                .iter()
                .map(|p| format!("{:.2},{:.2}", frame.px(p.t as f64), frame.py(p.mean)))
                .collect();
            let _ = writeln!(
                w,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
                line.join(" ")
            );
        }
        let ly = TOP + 8.0 + 18.0 * i as f64;
        let lx = LEFT + 12.0;
        let _ = writeln!(
            w,
            r#"<g class="legend"><rect x="{lx}" y="{:.2}" width="14" height="10" fill="{color}"/><text x="{:.2}" y="{:.2}">{}</text></g>"#,
            ly - 9.0,
            lx + 20.0,
            ly,
            escape(&s.label)
        );
    }
    let _ = writeln!(w, "</svg>");
    Ok(svg)
}

pub fn emit_plot(series: &[PlotSeries], title: &str, path: &Path) -> Result<()> {
    let svg = render_svg(series, title)?;
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}
