//! Minimal SVG output: polylines over a shared viewBox.
//!
//! World coordinates map to SVG with equal scale on both axes and the
//! y axis flipped so larger y is higher on the screen. A 5% margin of
//! the larger span surrounds the data.

use std::fmt::Write as _;

/// Render curves as `<polyline>` elements, one per `(points, color)`
/// pair. Points are `(x, y)` in world coordinates; every curve shares
/// the same bounding box.
pub fn render_polylines(curves: &[(&[(f64, f64)], &str)]) -> String {
    let mut xmin = f64::INFINITY;
    let mut xmax = f64::NEG_INFINITY;
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for (points, _) in curves {
        for (x, y) in *points {
            xmin = xmin.min(*x);
            xmax = xmax.max(*x);
            ymin = ymin.min(*y);
            ymax = ymax.max(*y);
        }
    }
    if !xmin.is_finite() {
        xmin = 0.0;
        xmax = 1.0;
        ymin = 0.0;
        ymax = 1.0;
    }
    let span = (xmax - xmin).max(ymax - ymin);
    let margin = if span > 0.0 { 0.05 * span } else { 0.5 };
    let width = (xmax - xmin) + 2.0 * margin;
    let height = (ymax - ymin) + 2.0 * margin;
    let stroke = (span.max(1e-9)) / 150.0;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width} {height}\">"
    );
    for (points, color) in curves {
        let mut attr = String::new();
        for (i, (x, y)) in points.iter().enumerate() {
            if i > 0 {
                attr.push(' ');
            }
            let sx = x - xmin + margin;
            let sy = ymax - y + margin;
            let _ = write!(attr, "{sx},{sy}");
        }
        let _ = writeln!(
            out,
            "<polyline points=\"{attr}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{stroke}\"/>"
        );
    }
    out.push_str("</svg>\n");
    out
}
