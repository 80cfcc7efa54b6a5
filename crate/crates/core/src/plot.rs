//! Minimal SVG charts: multi-series line plots and grouped bars.
//!
//! Output is plain text with fixed-precision coordinates so identical data
//! renders to identical bytes.

use std::fmt::Write as _;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 160.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 50.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Debug, Clone)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn new(name: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Series {
            name: name.into(),
            points,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YScale {
    Linear,
    /// Base-10 log; non-positive values are dropped.
    Log,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn header(out: &mut String, title: &str) {
    let _ = write!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">
<rect width="100%" height="100%" fill="white"/>
<text x="{x:.1}" y="24" text-anchor="middle" font-size="15">{t}</text>
"#,
        x = WIDTH / 2.0,
        t = escape(title)
    );
}

fn axes(out: &mut String, x_label: &str, y_label: &str) {
    let (x0, y0) = (MARGIN_LEFT, HEIGHT - MARGIN_BOTTOM);
    let (x1, y1) = (WIDTH - MARGIN_RIGHT, MARGIN_TOP);
    let _ = writeln!(
        out,
        r#"<path d="M{x0:.1},{y1:.1} L{x0:.1},{y0:.1} L{x1:.1},{y0:.1}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text transform="translate(18,{:.1}) rotate(-90)" text-anchor="middle">{}</text>"#,
        (y0 + y1) / 2.0,
        escape(y_label)
    );
}

fn legend(out: &mut String, names: &[&str]) {
    for (i, name) in names.iter().enumerate() {
        let y = MARGIN_TOP + 10.0 + 18.0 * i as f64;
        let x = WIDTH - MARGIN_RIGHT + 12.0;
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(
            out,
            r#"<rect x="{x:.1}" y="{:.1}" width="12" height="12" fill="{color}"/><text x="{:.1}" y="{:.1}">{}</text>"#,
            y - 10.0,
            x + 18.0,
            y,
            escape(name)
        );
    }
}

fn tick_label(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-3 || v.abs() >= 1e5) {
        format!("{v:.1e}")
    } else {
        format!("{v:.3}")
    }
}

/// Line chart of one or more series sharing both axes. `x_ticks` maps an x
/// value to its label (for instance a day number to a date).
pub fn line_chart(
    title: &str,
    x_label: &str,
    y_label: &str,
    series: &[Series],
    scale: YScale,
    x_ticks: &dyn Fn(f64) -> String,
) -> String {
    let transform = |y: f64| match scale {
        YScale::Linear => Some(y),
        YScale::Log if y > 0.0 => Some(y.log10()),
        YScale::Log => None,
    };
    let visible: Vec<Vec<(f64, f64)>> = series
        .iter()
        .map(|s| {
            s.points
                .iter()
                .filter_map(|&(x, y)| transform(y).filter(|ty| ty.is_finite() && x.is_finite()).map(|ty| (x, ty)))
                .collect()
        })
        .collect();
    let all = visible.iter().flatten();
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        xmin = xmin.min(x);
        xmax = xmax.max(x);
        ymin = ymin.min(y);
        ymax = ymax.max(y);
    }
    if !xmin.is_finite() {
        (xmin, xmax, ymin, ymax) = (0.0, 1.0, 0.0, 1.0);
    }
    if xmax == xmin {
        xmax = xmin + 1.0;
    }
    if ymax == ymin {
        ymax = ymin + 1.0;
    }
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let px = |x: f64| MARGIN_LEFT + (x - xmin) / (xmax - xmin) * plot_w;
    let py = |y: f64| HEIGHT - MARGIN_BOTTOM - (y - ymin) / (ymax - ymin) * plot_h;

    let mut out = String::new();
    header(&mut out, title);
    axes(&mut out, x_label, y_label);
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let yv = ymin + f * (ymax - ymin);
        let label = match scale {
            YScale::Linear => tick_label(yv),
            YScale::Log => format!("1e{yv:.1}"),
        };
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
            MARGIN_LEFT - 6.0,
            py(yv) + 4.0,
            label
        );
        let xv = xmin + f * (xmax - xmin);
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            px(xv),
            HEIGHT - MARGIN_BOTTOM + 16.0,
            escape(&x_ticks(xv))
        );
    }
    for (i, pts) in visible.iter().enumerate() {
        if pts.is_empty() {
            continue;
        }
        let mut d = String::new();
        for (j, &(x, y)) in pts.iter().enumerate() {
            let _ = write!(d, "{}{:.2},{:.2}", if j == 0 { "M" } else { " L" }, px(x), py(y));
        }
        let _ = writeln!(
            out,
            r#"<path d="{d}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
            PALETTE[i % PALETTE.len()]
        );
    }
    let names: Vec<&str> = series.iter().map(|s| s.name.as_str()).collect();
    legend(&mut out, &names);
    out.push_str("</svg>\n");
    out
}

/// Grouped bar chart: one cluster per category, one bar per group, values
/// expected in `[0, 1]`.
pub fn bar_chart(title: &str, y_label: &str, categories: &[String], groups: &[(String, Vec<f64>)]) -> String {
    let mut out = String::new();
    header(&mut out, title);
    axes(&mut out, "", y_label);
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let base = HEIGHT - MARGIN_BOTTOM;
    for i in 0..=4 {
        let v = i as f64 / 4.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{v:.2}</text>"#,
            MARGIN_LEFT - 6.0,
            base - v * plot_h + 4.0
        );
    }
    let n_cat = categories.len().max(1) as f64;
    let cluster = plot_w / n_cat;
    let bar = cluster * 0.8 / groups.len().max(1) as f64;
    for (c, name) in categories.iter().enumerate() {
        let x_start = MARGIN_LEFT + c as f64 * cluster + cluster * 0.1;
        for (g, (_, values)) in groups.iter().enumerate() {
            let v = values.get(c).copied().unwrap_or(0.0).clamp(0.0, 1.0);
            let h = v * plot_h;
            let _ = writeln!(
                out,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                x_start + g as f64 * bar,
                base - h,
                bar,
                h,
                PALETTE[g % PALETTE.len()]
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            x_start + cluster * 0.4,
            base + 16.0,
            escape(name)
        );
    }
    let names: Vec<&str> = groups.iter().map(|g| g.0.as_str()).collect();
    legend(&mut out, &names);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_chart_is_deterministic_svg() {
        let s = [Series::new("a<b", vec![(0.0, 1.0), (1.0, 2.0), (2.0, 0.5)])];
        let one = line_chart("t", "x", "y", &s, YScale::Linear, &|x| format!("{x:.0}"));
        let two = line_chart("t", "x", "y", &s, YScale::Linear, &|x| format!("{x:.0}"));
        assert_eq!(one, two);
        assert!(one.starts_with("<svg"));
        assert!(one.contains("a&lt;b"));
        assert_eq!(one.matches("<path").count(), 2);
    }

    #[test]
    fn log_scale_drops_zeros() {
        let s = [Series::new("a", vec![(0.0, 0.0), (1.0, 0.1), (2.0, 0.01)])];
        let svg = line_chart("t", "x", "y", &s, YScale::Log, &|x| format!("{x}"));
        let path = svg.lines().find(|l| l.contains("stroke-width")).unwrap();
        assert_eq!(path.matches('L').count(), 1);
    }

    #[test]
    fn empty_series_still_renders() {
        let svg = line_chart("t", "x", "y", &[], YScale::Linear, &|x| format!("{x}"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn bar_per_value() {
        let cats = vec!["0".to_string(), "1".to_string()];
        let svg = bar_chart("s", "cos", &cats, &[("leaders".into(), vec![0.9, 0.8]), ("majority".into(), vec![0.7, 0.6])]);
        // 4 bars, 2 legend swatches, 1 background
        assert_eq!(svg.matches("<rect").count(), 7);
    }
}
