//! Checking candidate curves against the Euler-Lagrange equation.
//!
//! A curve is an extremal when the residual vanishes along it; the checker
//! substitutes the curve and its derivatives symbolically and samples.

use varcal::expr::parse;
use varcal::varcalc::{
    euler_lagrange, first_integral_constancy, verify_extremal, Lagrangian,
};

fn check(l_text: &str, curve_text: &str, lo: f64, hi: f64) {
    let l = Lagrangian::new(parse(l_text).unwrap()).unwrap();
    let curve = parse(curve_text).unwrap().normalize();
    let report = verify_extremal(&l, &curve, lo, hi, 201).unwrap();
    println!(
        "L = {:<20} y = {:<10} max |residual| = {:.3e} (worst x = {})",
        l_text, curve_text, report.max_abs_residual, report.worst_x
    );
}

fn main() {
    check("12*x*y - yp^2", "-x^3", -1.0, 0.0);
    check("yp*(1 + x^2*yp)", "7 - 4/x", 1.0, 2.0);

    // A non-extremal for contrast: the straight line fails loudly.
    check("12*x*y - yp^2", "x", -1.0, 0.0);

    // Along an extremal a first integral stays constant; here
    // dL/dyp = 1 + 2*x^2*yp evaluates to 9 everywhere on the curve.
    let l = Lagrangian::new(parse("yp*(1 + x^2*yp)").unwrap()).unwrap();
    let r = euler_lagrange(&l);
    let curve = parse("7 - 4/x").unwrap().normalize();
    let (mean, dev) =
        first_integral_constancy(&r.first_integrals[0], &curve, 1.0, 2.0, 201).unwrap();
    println!(
        "momentum {} along y = 7 - 4/x: mean {mean}, max deviation {dev:.3e}",
        r.first_integrals[0].phi
    );
}
