use std::fmt::Write;

use super::MetricPoint;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    let pad = ((hi - lo) * 0.1).max(0.05);
    (lo - pad, hi + pad)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Affinity (x) against diversity (y) scatter with one-σ error bars.
pub fn scatter_svg(points: &[MetricPoint]) -> String {
    let (x0, x1) = padded_range(points.iter().flat_map(|p| [p.affinity - p.affinity_std, p.affinity + p.affinity_std]));
    let (y0, y1) = padded_range(points.iter().flat_map(|p| [p.diversity - p.diversity_std, p.diversity + p.diversity_std]));
    let sx = |v: f64| MARGIN + (v - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |v: f64| HEIGHT - MARGIN - (v - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        svg,
        r#"<path d="M{left} {top} L{left} {bottom} L{right} {bottom}" stroke="black" fill="none"/>"#
    );
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let (vx, vy) = (x0 + t * (x1 - x0), y0 + t * (y1 - y0));
        let _ = writeln!(svg, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{vx:.3}</text>"#, sx(vx), bottom + 18.0);
        let _ = writeln!(svg, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{vy:.3}</text>"#, left - 6.0, sy(vy) + 4.0);
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">Affinity</text>"#,
        WIDTH / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">Diversity</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );

    for (i, p) in points.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let (cx, cy) = (sx(p.affinity), sy(p.diversity));
        if p.affinity_std > 0.0 {
            let _ = writeln!(
                svg,
                r#"<line x1="{:.1}" y1="{cy:.1}" x2="{:.1}" y2="{cy:.1}" stroke="{color}"/>"#,
                sx(p.affinity - p.affinity_std),
                sx(p.affinity + p.affinity_std)
            );
        }
        if p.diversity_std > 0.0 {
            let _ = writeln!(
                svg,
                r#"<line x1="{cx:.1}" y1="{:.1}" x2="{cx:.1}" y2="{:.1}" stroke="{color}"/>"#,
                sy(p.diversity - p.diversity_std),
                sy(p.diversity + p.diversity_std)
            );
        }
        let _ = writeln!(svg, r#"<circle cx="{cx:.1}" cy="{cy:.1}" r="5" fill="{color}"/>"#);
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}">{}</text>"#,
            cx + 8.0,
            cy - 8.0,
            escape(&p.augmentation_name)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_marker_per_point() {
        let pts: Vec<MetricPoint> = ["a<b", "c"]
            .iter()
            .enumerate()
            .map(|(i, n)| MetricPoint {
                augmentation_name: n.to_string(),
                affinity: 0.8 + i as f64 * 0.1,
                affinity_std: 0.01,
                diversity: 1.0 + i as f64,
                diversity_std: 0.0,
                n_replicates: 1,
            })
            .collect();
        let svg = scatter_svg(&pts);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<circle").count(), 2);
        assert!(svg.contains("a&lt;b"));
        assert!(scatter_svg(&[]).ends_with("</svg>\n"));
    }
}
