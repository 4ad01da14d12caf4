//! Deriving Euler-Lagrange equations and first integrals symbolically.

use varcal::expr::parse;
use varcal::varcalc::{euler_lagrange, Lagrangian};

fn show(text: &str) {
    let l = Lagrangian::new(parse(text).unwrap()).unwrap();
    let r = euler_lagrange(&l);
    println!("L = {}", l.expr());
    println!("  residual      {} = 0", r.residual);
    match &r.accel {
        Some(a) => println!("  solved        ypp = {a}"),
        None => println!("  degenerate: no ypp term"),
    }
    for fi in &r.first_integrals {
        println!("  {:<8} integral: {} = const", fi.kind.name(), fi.phi);
    }
    println!();
}

fn main() {
    // A forced oscillator-like Lagrangian: EL gives ypp = -6x, whose
    // extremals are cubics.
    show("12*x*y - yp^2");

    // No y dependence: dL/dyp is conserved along extremals.
    show("yp*(1 + x^2*yp)");

    // No x dependence: the energy yp*dL/dyp - L is conserved.
    show("yp^2 - y^2");

    // The brachistochrone integrand for release height y0 = 2 (up to the
    // 1/sqrt(2g) factor).
    show("sqrt(1 + yp^2)/sqrt(2 - y)");
}
