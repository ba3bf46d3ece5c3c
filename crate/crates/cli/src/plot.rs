//! Minimal SVG scatter plots of `n,value` CSV files.

use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Panel {
    /// `u_n` against `10 n^(-1/3)`.
    U,
    /// `v_n - offset` against `10^18 n^(-6)`.
    V,
}

pub struct Figure {
    pub panel: Panel,
    pub offset: f64,
    pub title: String,
}

const W: f64 = 640.0;
const H: f64 = 420.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

/// Parses `n,value` rows; the header line is skipped.
pub fn read_series(csv: &str) -> Result<Vec<(usize, f64)>, String> {
    let mut out = Vec::new();
    for (i, line) in csv.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let n = parts.next().and_then(|s| s.trim().parse().ok());
        let v = parts.next().and_then(|s| s.trim().parse().ok());
        match (n, v) {
            (Some(n), Some(v)) => out.push((n, v)),
            _ => return Err(format!("line {}: expected `n,value`, got {line:?}", i + 1)),
        }
    }
    Ok(out)
}

fn nice_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = (hi - lo).abs().max(f64::MIN_POSITIVE);
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|s| s * mag)
        .find(|s| span / s <= 6.0)
        .unwrap_or(10.0 * mag);
    let mut t = (lo / step).ceil() * step;
    let mut ticks = Vec::new();
    while t <= hi + step * 1e-9 {
        ticks.push(if t.abs() < step * 1e-9 { 0.0 } else { t });
        t += step;
    }
    ticks
}

fn label(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() >= 1e-3 && v.abs() < 1e5 {
        let s = format!("{v:.6}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.3e}")
    }
}

/// Renders the points `(n, value)` as a self-contained SVG document.
pub fn emit_figure(fig: &Figure, points: &[(usize, f64)]) -> Result<String, String> {
    if points.is_empty() {
        return Err("no data points in the requested range".into());
    }
    let xy: Vec<(f64, f64)> = points
        .iter()
        .map(|&(n, v)| {
            let n = n as f64;
            match fig.panel {
                Panel::U => (10.0 * n.powf(-1.0 / 3.0), v),
                Panel::V => (1e18 * n.powi(-6), v - fig.offset),
            }
        })
        .collect();
    let bounds = |f: fn(&(f64, f64)) -> f64| {
        let lo = xy.iter().map(f).fold(f64::INFINITY, f64::min);
        let hi = xy.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
        let pad = if hi > lo {
            (hi - lo) * 0.05
        } else {
            lo.abs().max(1.0) * 0.05
        };
        (lo - pad, hi + pad)
    };
    let (x0, x1) = bounds(|p| p.0);
    let (y0, y1) = bounds(|p| p.1);
    let px = |x: f64| LEFT + (x - x0) / (x1 - x0) * (W - LEFT - RIGHT);
    let py = |y: f64| H - BOTTOM - (y - y0) / (y1 - y0) * (H - TOP - BOTTOM);
    let (xlabel, ylabel) = match fig.panel {
        Panel::U => ("10 n^(-1/3)".to_string(), "u_n".to_string()),
        Panel::V => ("10^18 n^(-6)".to_string(), format!("v_n - {}", fig.offset)),
    };

    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        W / 2.0,
        escape(&fig.title)
    )
    .unwrap();
    writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        W - LEFT - RIGHT,
        H - TOP - BOTTOM
    )
    .unwrap();
    for t in nice_ticks(x0, x1) {
        let x = px(t);
        writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#,
            H - BOTTOM,
            H - BOTTOM + 5.0
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            H - BOTTOM + 18.0,
            label(t)
        )
        .unwrap();
    }
    for t in nice_ticks(y0, y1) {
        let y = py(t);
        writeln!(
            s,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/>"#,
            LEFT - 5.0
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 8.0,
            y + 4.0,
            label(t)
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        (LEFT + W - RIGHT) / 2.0,
        H - 10.0,
        escape(&xlabel)
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
        (TOP + H - BOTTOM) / 2.0,
        (TOP + H - BOTTOM) / 2.0,
        escape(&ylabel)
    )
    .unwrap();
    for (x, y) in &xy {
        writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="steelblue"/>"#,
            px(*x),
            py(*y)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_renders() {
        let pts = read_series("n,u\n800,160.5\n900,161.25\n1000,162\n").unwrap();
        assert_eq!(pts.len(), 3);
        let fig = Figure {
            panel: Panel::U,
            offset: 0.0,
            title: "u".into(),
        };
        let svg = emit_figure(&fig, &pts).unwrap();
        assert!(svg.starts_with("<?xml"));
        assert_eq!(svg.matches("<circle").count(), 3);
        assert_eq!(svg, emit_figure(&fig, &pts).unwrap());
    }

    #[test]
    fn rejects_empty_and_bad_rows() {
        let fig = Figure {
            panel: Panel::V,
            offset: 1.0,
            title: String::new(),
        };
        assert!(emit_figure(&fig, &[]).is_err());
        assert!(read_series("n,v\n1,abc\n").is_err());
    }

    #[test]
    fn ticks_cover_range() {
        let t = nice_ticks(0.93, 1.08);
        assert!(t.len() >= 3 && t[0] >= 0.93 && *t.last().unwrap() <= 1.08);
    }
}
