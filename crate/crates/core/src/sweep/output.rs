//! CSV and SVG writers for sweep rows.

use std::fmt::Write as _;
use std::io::Write;

use crate::error::{Error, Result};

use super::SweepRow;

pub const CSV_HEADER: [&str; 6] = [
    "axis_value",
    "snr_single_db",
    "snr_dual_db",
    "pr_dual_w",
    "path_loss_dual_db",
    "far_field_ok",
];

/// Six significant digits, `%g` style: fixed notation for exponents in
/// `[-4, 6)`, scientific otherwise, trailing zeros trimmed.
pub fn format_sig6(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(format_sig6).unwrap_or_default()
}

/// Writes a header plus one record per row. Failed points carry `error` in
/// the `far_field_ok` column and empty numeric fields.
pub fn emit_csv<W: Write>(rows: &[SweepRow], dest: W) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::Output("no rows to write".into()));
    }
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(dest);
    let io = |e: csv::Error| Error::Output(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        let ff = match &r.error {
            Some(_) => "error".to_string(),
            None => r
                .far_field_ok
                .iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join(";"),
        };
        w.write_record([
            format_sig6(r.axis_value),
            opt(r.snr_single_db),
            opt(r.snr_dual_db),
            opt(r.pr_dual_w),
            opt(r.path_loss_dual_db),
            ff,
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Output(e.to_string()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotStyle {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub width: u32,
    pub height: u32,
    pub x_log: bool,
    /// Axis positions for dashed vertical far-field lines.
    pub far_field_markers: Vec<f64>,
}

impl Default for PlotStyle {
    fn default() -> Self {
        Self {
            title: "SNR".into(),
            x_label: "axis value".into(),
            y_label: "SNR (dB)".into(),
            width: 800,
            height: 500,
            x_log: true,
            far_field_markers: Vec::new(),
        }
    }
}

const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 55.0;

struct Series {
    name: &'static str,
    color: &'static str,
    points: Vec<(f64, f64)>,
}

/// Standalone SVG with one polyline per non-empty SNR series (single,
/// dual). Output depends only on the inputs.
pub fn emit_svg_plot<W: Write>(rows: &[SweepRow], style: &PlotStyle, mut dest: W) -> Result<()> {
    if rows.len() < 2 {
        return Err(Error::Output("a plot needs at least 2 rows".into()));
    }
    let xs = |r: &SweepRow| if style.x_log { r.axis_value.log10() } else { r.axis_value };
    let collect = |f: fn(&SweepRow) -> Option<f64>| -> Vec<(f64, f64)> {
        rows.iter()
            .filter_map(|r| f(r).map(|y| (xs(r), y)))
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .collect()
    };
    let series: Vec<Series> = [
        Series {
            name: "single RIS",
            color: "#1f77b4",
            points: collect(|r| r.snr_single_db),
        },
        Series {
            name: "dual RIS",
            color: "#d62728",
            points: collect(|r| r.snr_dual_db),
        },
    ]
    .into_iter()
    .filter(|s| !s.points.is_empty())
    .collect();

    let x_min = rows.iter().map(&xs).fold(f64::INFINITY, f64::min);
    let x_max = rows.iter().map(&xs).fold(f64::NEG_INFINITY, f64::max);
    let (mut y_min, mut y_max) = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.1))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), y| (lo.min(y), hi.max(y)));
    if !y_min.is_finite() {
        (y_min, y_max) = (0.0, 1.0);
    }
    if y_max - y_min < 1e-9 {
        y_min -= 1.0;
        y_max += 1.0;
    }
    let pad = 0.05 * (y_max - y_min);
    let (y_min, y_max) = (y_min - pad, y_max + pad);
    let x_span = if x_max > x_min { x_max - x_min } else { 1.0 };

    let (w, h) = (f64::from(style.width), f64::from(style.height));
    let pw = w - MARGIN_L - MARGIN_R;
    let ph = h - MARGIN_T - MARGIN_B;
    let px = |x: f64| MARGIN_L + (x - x_min) / x_span * pw;
    let py = |y: f64| MARGIN_T + (y_max - y) / (y_max - y_min) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        style.width, style.height, style.width, style.height
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
        w / 2.0,
        xml_escape(&style.title)
    );
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN_L:.2}" y="{MARGIN_T:.2}" width="{pw:.2}" height="{ph:.2}" fill="none" stroke="black"/>"#
    );

    // Ticks: five evenly spaced on each axis.
    for i in 0..=4 {
        let t = f64::from(i) / 4.0;
        let xv = x_min + t * (x_max - x_min);
        let label = if style.x_log { 10f64.powf(xv) } else { xv };
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="11">{}</text>"#,
            px(xv),
            MARGIN_T + ph + 16.0,
            format_sig6(label)
        );
        let yv = y_min + t * (y_max - y_min);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="11">{:.1}</text>"#,
            MARGIN_L - 6.0,
            py(yv) + 4.0,
            yv
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="13">{}</text>"#,
        MARGIN_L + pw / 2.0,
        h - 12.0,
        xml_escape(&style.x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="13" transform="rotate(-90 16 {:.2})">{}</text>"#,
        MARGIN_T + ph / 2.0,
        MARGIN_T + ph / 2.0,
        xml_escape(&style.y_label)
    );

    for m in &style.far_field_markers {
        let xv = if style.x_log { m.log10() } else { *m };
        if !(xv >= x_min && xv <= x_max) {
            continue;
        }
        let _ = writeln!(
            s,
            r#"<line class="far-field" x1="{x:.2}" y1="{MARGIN_T:.2}" x2="{x:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="6,4"/>"#,
            MARGIN_T + ph,
            x = px(xv)
        );
    }

    for (i, ser) in series.iter().enumerate() {
        let pts: Vec<String> = ser
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{}" stroke-width="2" points="{}"/>"#,
            ser.color,
            pts.join(" ")
        );
        let ly = MARGIN_T + 16.0 + 18.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{ly:.2}" fill="{}" font-family="sans-serif" font-size="12">{}</text>"#,
            MARGIN_L + 10.0,
            ser.color,
            ser.name
        );
    }
    s.push_str("</svg>\n");
    dest.write_all(s.as_bytes())
        .and_then(|()| dest.flush())
        .map_err(|e| Error::Output(e.to_string()))
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
