//! Boundary value problems: symbolic acceleration + RK4 + shooting.
//!
//! The Euler-Lagrange equation is put in the form ypp = f(x, y, yp)
//! symbolically, then the initial slope is tuned until the trajectory
//! hits the far boundary value.

use varcal::expr::{parse, Bindings};
use varcal::numerics::shoot;
use varcal::varcalc::{accel_form, euler_lagrange, Lagrangian};

fn solve(l_text: &str, a: f64, ya: f64, b: f64, yb: f64) {
    let l = Lagrangian::new(parse(l_text).unwrap()).unwrap();
    let accel = accel_form(&euler_lagrange(&l)).unwrap();
    let f = |x: f64, y: f64, v: f64| -> Result<f64, String> {
        accel
            .evaluate(&Bindings::new().with("x", x).with("y", y).with("yp", v))
            .map_err(|e| e.to_string())
    };
    let (slope, traj) = shoot(f, a, ya, b, yb, -10.0, 10.0, 1e-8, 1000).unwrap();
    let (_, y_end, _) = traj.end();
    println!("L = {l_text}");
    println!("  ypp = {accel}");
    println!("  y({a}) = {ya}, y({b}) = {yb}  ->  y'({a}) = {slope}");
    println!("  endpoint miss {:.2e}\n", (y_end - yb).abs());
}

fn main() {
    // Exact solutions y = -x^3 (slope -3 at x = -1) and y = 7 - 4/x
    // (slope 4 at x = 1).
    solve("12*x*y - yp^2", -1.0, 1.0, 0.0, 0.0);
    solve("yp*(1 + x^2*yp)", 1.0, 3.0, 2.0, 5.0);
}
