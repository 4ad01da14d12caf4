//! Symbolic expression basics: parsing, normalization, derivatives,
//! evaluation and substitution.

use varcal::expr::{parse, Bindings};

fn main() {
    let e = parse("yp*(1 + x^2*yp)").unwrap();
    println!("parsed      {e}");

    let n = e.normalize();
    println!("normalized  {n}");

    // Partial derivatives with respect to any variable name.
    println!("dL/dy'      {}", n.differentiate("yp"));
    println!("dL/dx       {}", n.differentiate("x"));

    // The total x-derivative treats y, yp as functions of x, introducing
    // ypp for the second derivative.
    let phi = parse("1 + 2*x^2*yp").unwrap().normalize();
    println!("d/dx {phi}   ->   {}", phi.total_x_derivative().unwrap());

    let at = Bindings::new().with("x", 2.0).with("yp", 0.25);
    println!("value at x = 2, yp = 0.25: {}", n.evaluate(&at).unwrap());

    let on_curve = n.substitute("yp", &parse("4/x^2").unwrap());
    println!("with yp = 4/x^2: {}", on_curve.normalize());

    println!("free variables of {n}: {:?}", n.free_variables());

    // Parse errors carry the byte offset of the offending token.
    let err = parse("2*(x + ").unwrap_err();
    println!("parse error: {err}");
}
