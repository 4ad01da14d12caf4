//! Integrating across an inverse-square-root endpoint singularity.
//!
//! The substitution x = x0 + t^2 makes such integrands bounded; adaptive
//! Simpson with a Richardson correction does the rest.

use varcal::numerics::{integrate_singular, QuadratureSpec};

fn main() {
    let spec = QuadratureSpec::default();

    // int_0^1 1/sqrt(x) dx = 2, untouchable for naive quadrature.
    let v = integrate_singular(|x| 1.0 / x.sqrt(), 0.0, 1.0, spec).unwrap();
    println!("int_0^1 x^-1/2 dx        = {v}   (exact 2)");

    // int_0^1 exp(x)/sqrt(x) dx = sqrt(pi)*erfi(1).
    let v = integrate_singular(|x| x.exp() / x.sqrt(), 0.0, 1.0, spec).unwrap();
    println!("int_0^1 exp(x)/sqrt(x) dx = {v}   (exact 2.925303491814363...)");

    // Smooth integrands are fine too; the substitution is harmless.
    let v = integrate_singular(|x| x.sin(), 0.0, std::f64::consts::PI, spec).unwrap();
    println!("int_0^pi sin(x) dx       = {v}   (exact 2)");

    // Tolerance is relative and tunable.
    for rel_tol in [1e-6, 1e-10, 1e-13] {
        let spec = QuadratureSpec { rel_tol, max_depth: 48 };
        let v = integrate_singular(|x| 1.0 / x.sqrt(), 0.0, 1.0, spec).unwrap();
        println!("rel_tol {rel_tol:.0e}: error {:.2e}", (v - 2.0).abs());
    }

    // A non-integrable pole is reported, not silently mangled.
    let err = integrate_singular(|x| 1.0 / x, 0.0, 1.0, spec).unwrap_err();
    println!("int_0^1 dx/x: {err}");
}
