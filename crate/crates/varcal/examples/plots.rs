//! Writing the comparison artifacts: one CSV of sampled curves and one
//! SVG overlay, the same files `varcal brach compare` emits.

use std::fmt::Write as _;

use varcal::brach::{sample_curve, sample_cycloid, solve_constants, Endpoints};
use varcal::cli::svg::render_polylines;
use varcal::expr::parse;

fn main() {
    let e = Endpoints {
        x0: 0.0,
        y0: 2.0,
        x1: 3.0,
        y1: 1.0,
    };
    let s = solve_constants(e, 1e-12).unwrap();
    let cycloid = sample_cycloid(&s, 200);
    let line = sample_curve(
        &parse("2 - x/3").unwrap().normalize(),
        e.x0,
        e.x1,
        200,
        "line",
    )
    .unwrap();

    let mut csv = String::from("label,x,y\n");
    for samples in [&cycloid, &line] {
        for (x, y) in &samples.points {
            writeln!(csv, "{},{x},{y}", samples.label).unwrap();
        }
    }

    let svg = render_polylines(&[
        (cycloid.points.as_slice(), "blue"),
        (line.points.as_slice(), "black"),
    ]);

    let dir = std::env::temp_dir();
    let csv_path = dir.join("brach_compare.csv");
    let svg_path = dir.join("brach_compare.svg");
    std::fs::write(&csv_path, csv).unwrap();
    std::fs::write(&svg_path, svg).unwrap();
    println!("wrote {}", csv_path.display());
    println!("wrote {}", svg_path.display());
}
