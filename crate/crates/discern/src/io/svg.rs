//! Minimal static SVG 1.1 output: grid heatmaps and line plots, enough to
//! eyeball experiment tables without external tooling.

fn fmt(v: f64) -> String {
    format!("{v:.2}")
}

/// Heatmap over a (row, column) grid; `values[r][c]` in `[0, 1]` maps from
/// blue (0) to red (1). NaN cells render grey.
pub fn svg_heatmap(
    title: &str,
    row_labels: &[String],
    col_labels: &[String],
    values: &[Vec<f64>],
) -> String {
    let cell = 40.0;
    let left = 70.0;
    let top = 50.0;
    let w = left + cell * col_labels.len() as f64 + 20.0;
    let h = top + cell * row_labels.len() as f64 + 40.0;
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\">\n"
    );
    s.push_str(&format!(
        "<text x=\"{}\" y=\"20\" font-size=\"14\" text-anchor=\"middle\">{title}</text>\n",
        w / 2.0
    ));
    for (r, rl) in row_labels.iter().enumerate() {
        let y = top + cell * r as f64;
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"end\">{rl}</text>\n",
            left - 6.0,
            y + cell / 2.0 + 4.0
        ));
        for (c, v) in values[r].iter().enumerate() {
            let x = left + cell * c as f64;
            let fill = if v.is_nan() {
                "rgb(180,180,180)".to_string()
            } else {
                let t = v.clamp(0.0, 1.0);
                format!("rgb({},{},{})", (255.0 * t) as u8, 60, (255.0 * (1.0 - t)) as u8)
            };
            s.push_str(&format!(
                "<rect x=\"{x}\" y=\"{y}\" width=\"{cell}\" height=\"{cell}\" fill=\"{fill}\" stroke=\"white\"/>\n"
            ));
            s.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" font-size=\"10\" fill=\"white\" text-anchor=\"middle\">{}</text>\n",
                x + cell / 2.0,
                y + cell / 2.0 + 3.0,
                if v.is_nan() { "-".to_string() } else { fmt(*v) }
            ));
        }
    }
    for (c, cl) in col_labels.iter().enumerate() {
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"middle\">{cl}</text>\n",
            left + cell * c as f64 + cell / 2.0,
            top + cell * row_labels.len() as f64 + 16.0
        ));
    }
    s.push_str("</svg>\n");
    s
}

/// Line plot of one or more series over a shared x-axis.
pub fn svg_lines(title: &str, series: &[(String, Vec<(f64, f64)>)]) -> String {
    let (w, h, left, top, right, bottom) = (520.0, 340.0, 60.0, 40.0, 20.0, 40.0);
    let pw = w - left - right;
    let ph = h - top - bottom;
    let all: Vec<(f64, f64)> = series.iter().flat_map(|(_, pts)| pts.iter().copied()).collect();
    let (mut x0, mut x1, mut y0, mut y1) =
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (x, y) in &all {
        if x.is_finite() && y.is_finite() {
            x0 = x0.min(*x);
            x1 = x1.max(*x);
            y0 = y0.min(*y);
            y1 = y1.max(*y);
        }
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 - x0 < 1e-12 {
        x1 = x0 + 1.0;
    }
    if y1 - y0 < 1e-12 {
        y1 = y0 + 1.0;
    }
    let colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"];
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\">\n"
    );
    s.push_str(&format!(
        "<text x=\"{}\" y=\"20\" font-size=\"14\" text-anchor=\"middle\">{title}</text>\n",
        w / 2.0
    ));
    s.push_str(&format!(
        "<rect x=\"{left}\" y=\"{top}\" width=\"{pw}\" height=\"{ph}\" fill=\"none\" stroke=\"black\"/>\n"
    ));
    for (k, (name, pts)) in series.iter().enumerate() {
        let color = colors[k % colors.len()];
        let path: Vec<String> = pts
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|(x, y)| {
                let px = left + (x - x0) / (x1 - x0) * pw;
                let py = top + ph - (y - y0) / (y1 - y0) * ph;
                format!("{px:.1},{py:.1}")
            })
            .collect();
        if !path.is_empty() {
            s.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
                path.join(" ")
            ));
        }
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"{color}\">{name}</text>\n",
            left + 8.0,
            top + 16.0 + 14.0 * k as f64
        ));
    }
    s.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{}</text>\n",
        left,
        h - 8.0,
        fmt(x0)
    ));
    s.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{}</text>\n",
        left + pw,
        h - 8.0,
        fmt(x1)
    ));
    s.push_str("</svg>\n");
    s
}
