//! Symbolic partial and total derivatives.

use super::{Expr, Func};

/// Returned by [`Expr::total_x_derivative`] when the input already contains
/// `ypp`: the total derivative along a trajectory would then need `yppp`,
/// which the representation does not carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("total x-derivative requires a first-order expression (input contains ypp)")]
pub struct SecondOrderInput;

/// Raw derivative, not normalized. Every variable other than `var` is
/// treated as a constant.
fn d(e: &Expr, var: &str) -> Expr {
    match e {
        Expr::Constant(_) => Expr::Constant(0.0),
        Expr::Variable(name) => Expr::Constant(if name == var { 1.0 } else { 0.0 }),
        Expr::Sum(terms) => Expr::Sum(terms.iter().map(|t| d(t, var)).collect()),
        Expr::Product(factors) => {
            // (f1*f2*...*fn)' = sum over i of f1*...*fi'*...*fn
            let mut terms = Vec::with_capacity(factors.len());
            for i in 0..factors.len() {
                let mut fs = factors.clone();
                fs[i] = d(&factors[i], var);
                terms.push(Expr::Product(fs));
            }
            Expr::Sum(terms)
        }
        Expr::Negate(u) => Expr::neg(d(u, var)),
        Expr::Power(base, exp) => {
            let db = d(base, var).normalize();
            let de = d(exp, var).normalize();
            if de.is_zero() {
                // (b^e)' = e * b^(e-1) * b'
                Expr::product(vec![
                    (**exp).clone(),
                    Expr::pow(
                        (**base).clone(),
                        Expr::Sum(vec![(**exp).clone(), Expr::Constant(-1.0)]),
                    ),
                    db,
                ])
            } else if db.is_zero() {
                // (b^e)' = b^e * ln(b) * e'
                Expr::product(vec![
                    e.clone(),
                    Expr::call(Func::Ln, (**base).clone()),
                    de,
                ])
            } else {
                // (b^e)' = b^e * (e' * ln(b) + e * b' / b)
                Expr::product(vec![
                    e.clone(),
                    Expr::sum(vec![
                        Expr::product(vec![de, Expr::call(Func::Ln, (**base).clone())]),
                        Expr::product(vec![
                            (**exp).clone(),
                            db,
                            Expr::pow((**base).clone(), Expr::Constant(-1.0)),
                        ]),
                    ]),
                ])
            }
        }
        Expr::Call(f, u) => {
            let outer = match f {
                Func::Sin => Expr::call(Func::Cos, (**u).clone()),
                Func::Cos => Expr::neg(Expr::call(Func::Sin, (**u).clone())),
                // tan' = 1 + tan^2
                Func::Tan => Expr::Sum(vec![
                    Expr::Constant(1.0),
                    Expr::pow(Expr::call(Func::Tan, (**u).clone()), Expr::Constant(2.0)),
                ]),
                // cot' = -(1 + cot^2)
                Func::Cot => Expr::neg(Expr::Sum(vec![
                    Expr::Constant(1.0),
                    Expr::pow(Expr::call(Func::Cot, (**u).clone()), Expr::Constant(2.0)),
                ])),
                // sqrt' = 1 / (2*sqrt)
                Func::Sqrt => Expr::product(vec![
                    Expr::Constant(0.5),
                    Expr::pow(
                        Expr::call(Func::Sqrt, (**u).clone()),
                        Expr::Constant(-1.0),
                    ),
                ]),
                Func::Exp => Expr::call(Func::Exp, (**u).clone()),
                Func::Ln => Expr::pow((**u).clone(), Expr::Constant(-1.0)),
                // arctan' = 1 / (1 + u^2)
                Func::Arctan => Expr::pow(
                    Expr::Sum(vec![
                        Expr::Constant(1.0),
                        Expr::pow((**u).clone(), Expr::Constant(2.0)),
                    ]),
                    Expr::Constant(-1.0),
                ),
                // arccot' = -1 / (1 + u^2)
                Func::Arccot => Expr::neg(Expr::pow(
                    Expr::Sum(vec![
                        Expr::Constant(1.0),
                        Expr::pow((**u).clone(), Expr::Constant(2.0)),
                    ]),
                    Expr::Constant(-1.0),
                )),
            };
            Expr::product(vec![outer, d(u, var)])
        }
    }
}

impl Expr {
    /// Partial derivative with respect to `var`; all other identifiers are
    /// held constant. The result is normalized.
    pub fn differentiate(&self, var: &str) -> Expr {
        d(self, var).normalize()
    }

    /// Total derivative with respect to `x` along a trajectory y(x):
    /// `de/dx + yp * de/dy + ypp * de/dyp`. The input must not already
    /// contain `ypp`.
    pub fn total_x_derivative(&self) -> Result<Expr, SecondOrderInput> {
        if self.free_variables().contains("ypp") {
            return Err(SecondOrderInput);
        }
        let explicit = d(self, "x");
        let via_y = Expr::product(vec![Expr::variable("yp"), d(self, "y")]);
        let via_yp = Expr::product(vec![Expr::variable("ypp"), d(self, "yp")]);
        Ok(Expr::Sum(vec![explicit, via_y, via_yp]).normalize())
    }
}
