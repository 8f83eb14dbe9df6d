//! Standalone SVG 1.1 line charts: linear or log10 y axis, tick labels,
//! and a legend naming each series.

use torus_cycles::{Error, Result};

#[derive(Debug, Clone)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct Axes {
    pub x_label: String,
    pub y_label: String,
    pub log_y: bool,
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_L: f64 = 78.0;
const MARGIN_R: f64 = 24.0;
const MARGIN_T: f64 = 24.0;
const MARGIN_B: f64 = 56.0;
const PALETTE: [&str; 5] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

/// Render the chart.  Nonpositive y values are dropped in log mode; every
/// series must keep at least two drawable points.
pub fn emit_svg(series: &[Series], axes: &Axes) -> Result<String> {
    if series.is_empty() {
        return Err(Error::InvalidArgument("no series to plot".into()));
    }
    let drawable: Vec<Series> = series
        .iter()
        .map(|s| Series {
            name: s.name.clone(),
            points: s
                .points
                .iter()
                .copied()
                .filter(|&(x, y)| {
                    x.is_finite() && y.is_finite() && (!axes.log_y || y > 0.0)
                })
                .map(|(x, y)| (x, if axes.log_y { y.log10() } else { y }))
                .collect(),
        })
        .collect();
    for s in &drawable {
        if s.points.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "series \"{}\" has fewer than 2 drawable points",
                s.name
            )));
        }
    }

    let all = drawable.iter().flat_map(|s| s.points.iter().copied());
    let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for (x, y) in all {
        x_min = x_min.min(x);
        x_max = x_max.max(x);
        y_min = y_min.min(y);
        y_max = y_max.max(y);
    }
    // degenerate ranges (a constant series) still get a drawable band
    if x_max - x_min < f64::MIN_POSITIVE {
        x_min -= 0.5;
        x_max += 0.5;
    }
    if y_max - y_min < f64::MIN_POSITIVE {
        y_min -= 0.5;
        y_max += 0.5;
    }

    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = HEIGHT - MARGIN_T - MARGIN_B;
    let px = |x: f64| MARGIN_L + (x - x_min) / (x_max - x_min) * plot_w;
    let py = |y: f64| MARGIN_T + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h;

    let mut out = String::new();
    out.push_str(&format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n\
         <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));
    out.push_str(&format!(
        "<rect x=\"{MARGIN_L}\" y=\"{MARGIN_T}\" width=\"{plot_w}\" height=\"{plot_h}\" \
         fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n"
    ));

    // ticks and grid
    const TICKS: usize = 5;
    for i in 0..TICKS {
        let t = i as f64 / (TICKS - 1) as f64;
        let xv = x_min + t * (x_max - x_min);
        let yv = y_min + t * (y_max - y_min);
        let (xp, yp) = (px(xv), py(yv));
        out.push_str(&format!(
            "<line x1=\"{xp:.2}\" y1=\"{:.2}\" x2=\"{xp:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
            MARGIN_T + plot_h,
            MARGIN_T + plot_h + 6.0
        ));
        out.push_str(&format!(
            "<text x=\"{xp:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
            MARGIN_T + plot_h + 20.0,
            fmt_tick(xv)
        ));
        out.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{yp:.2}\" x2=\"{MARGIN_L}\" y2=\"{yp:.2}\" stroke=\"black\"/>\n",
            MARGIN_L - 6.0
        ));
        let label = if axes.log_y {
            format!("1e{}", fmt_tick(yv))
        } else {
            fmt_tick(yv)
        };
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">{label}</text>\n",
            MARGIN_L - 10.0,
            yp + 4.0
        ));
    }

    // axis labels
    out.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
        MARGIN_L + plot_w / 2.0,
        HEIGHT - 12.0,
        escape(&axes.x_label)
    ));
    let y_label = if axes.log_y {
        format!("{} (log scale)", axes.y_label)
    } else {
        axes.y_label.clone()
    };
    out.push_str(&format!(
        "<text x=\"16\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\" \
         transform=\"rotate(-90 16 {:.2})\">{}</text>\n",
        MARGIN_T + plot_h / 2.0,
        MARGIN_T + plot_h / 2.0,
        escape(&y_label)
    ));

    // series paths
    for (i, s) in drawable.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut path = String::new();
        for (j, &(x, y)) in s.points.iter().enumerate() {
            path.push_str(if j == 0 { "M" } else { " L" });
            path.push_str(&format!("{:.2} {:.2}", px(x), py(y)));
        }
        out.push_str(&format!(
            "<path d=\"{path}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n"
        ));
    }

    // legend, top right inside the plot area
    let legend_x = MARGIN_L + plot_w - 170.0;
    for (i, s) in drawable.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let y = MARGIN_T + 16.0 + 18.0 * i as f64;
        out.push_str(&format!(
            "<line x1=\"{legend_x:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" \
             stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
            legend_x + 24.0
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">{}</text>\n",
            legend_x + 30.0,
            y + 4.0,
            escape(&s.name)
        ));
    }

    out.push_str("</svg>\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if !(1e-3..1e5).contains(&a) {
        format!("{v:.2e}")
    } else {
        let s = format!("{v:.3}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    }
}
