//! Which slide is fastest? Cycloid vs straight line vs circle arc.
//!
//! All three run from (0, 2) to (3, 1) under g = 9.8. The time functional
//! has an inverse-square-root singularity at the release point, handled by
//! the substitution quadrature.

use varcal::brach::{descent_time, min_time, solve_constants, Endpoints};
use varcal::expr::parse;
use varcal::numerics::QuadratureSpec;

fn main() {
    let g = 9.8;
    let spec = QuadratureSpec::default();
    let e = Endpoints {
        x0: 0.0,
        y0: 2.0,
        x1: 3.0,
        y1: 1.0,
    };

    let s = solve_constants(e, 1e-12).unwrap();
    println!("{:<10} {}", "cycloid", min_time(&s, g));

    for (label, text) in [
        ("line", "2 - x/3"),
        ("circle", "6 - sqrt(16 - x^2 + 6*x)"),
        ("parabola", "2 - 2*x/3 + x^2/9"),
    ] {
        let curve = parse(text).unwrap().normalize();
        let t = descent_time(&curve, e.x0, e.x1, e.y0, g, spec).unwrap();
        println!("{label:<10} {t}   (y = {text})");
    }

    // The straight chute has a closed form to check against: 10/7 s here.
    println!("\nline exactly: 10/7 = {}", 10.0 / 7.0);
}
