//! Symbolic expression trees: parsing, printing, differentiation,
//! normalization, substitution and numeric evaluation.
//!
//! Expressions are immutable values built from constants, named variables,
//! n-ary sums and products, powers, negation and a small set of elementary
//! functions. Subtraction and division are represented structurally:
//! `a - b` is `Sum(a, Negate(b))` and `a / b` is `Product(a, Power(b, -1))`.
//!
//! Four names are reserved by convention across the crate: `x` (independent
//! variable), `y` (dependent variable), `yp` (first derivative y') and `ypp`
//! (second derivative y''). Any other identifier is an ordinary symbolic
//! parameter and is treated as a constant by [`Expr::differentiate`].

mod derivative;
mod display;
mod eval;
mod normalize;
mod parse;

pub use derivative::SecondOrderInput;
pub use eval::{Bindings, EvalError};
pub use parse::{parse, ParseError};

use std::collections::BTreeSet;

/// An immutable symbolic expression.
///
/// `Sum` and `Product` always hold at least two operands; the constructors
/// [`Expr::sum`] and [`Expr::product`] collapse shorter argument lists.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Constant(f64),
    Variable(String),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Power(Box<Expr>, Box<Expr>),
    Negate(Box<Expr>),
    Call(Func, Box<Expr>),
}

/// The supported elementary functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Cot,
    Sqrt,
    Exp,
    Ln,
    Arctan,
    Arccot,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Cot => "cot",
            Func::Sqrt => "sqrt",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Arctan => "arctan",
            Func::Arccot => "arccot",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "cot" => Func::Cot,
            "sqrt" => Func::Sqrt,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "arctan" => Func::Arctan,
            "arccot" => Func::Arccot,
            _ => return None,
        })
    }

    /// Raw IEEE application, used for constant folding and evaluation.
    /// Out-of-domain arguments produce NaN or infinities; callers decide
    /// whether that is a fold blocker or an error.
    pub(crate) fn apply(self, v: f64) -> f64 {
        match self {
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Tan => v.tan(),
            Func::Cot => {
                let s = v.sin();
                if s == 0.0 {
                    f64::NAN
                } else {
                    v.cos() / s
                }
            }
            Func::Sqrt => v.sqrt(),
            Func::Exp => v.exp(),
            Func::Ln => v.ln(),
            Func::Arctan => v.atan(),
            Func::Arccot => std::f64::consts::FRAC_PI_2 - v.atan(),
        }
    }
}

impl Expr {
    pub fn constant(value: f64) -> Expr {
        Expr::Constant(value)
    }

    pub fn variable(name: impl Into<String>) -> Expr {
        Expr::Variable(name.into())
    }

    /// n-ary sum; empty input gives 0, a single term is returned unwrapped.
    pub fn sum(mut terms: Vec<Expr>) -> Expr {
        match terms.len() {
            0 => Expr::Constant(0.0),
            1 => terms.pop().unwrap(),
            _ => Expr::Sum(terms),
        }
    }

    /// n-ary product; empty input gives 1, a single factor is returned unwrapped.
    pub fn product(mut factors: Vec<Expr>) -> Expr {
        match factors.len() {
            0 => Expr::Constant(1.0),
            1 => factors.pop().unwrap(),
            _ => Expr::Product(factors),
        }
    }

    pub fn pow(base: Expr, exponent: Expr) -> Expr {
        Expr::Power(Box::new(base), Box::new(exponent))
    }

    pub fn neg(arg: Expr) -> Expr {
        Expr::Negate(Box::new(arg))
    }

    pub fn call(function: Func, arg: Expr) -> Expr {
        Expr::Call(function, Box::new(arg))
    }

    /// `a - b` as `Sum(a, Negate(b))`.
    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sum(vec![a, Expr::neg(b)])
    }

    /// `a / b` as `Product(a, Power(b, -1))`.
    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Product(vec![a, Expr::pow(b, Expr::Constant(-1.0))])
    }

    /// True when the expression is structurally the constant 0.
    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Constant(c) if *c == 0.0)
    }

    /// The set of identifiers still present after normalization, so
    /// `y - y` has no free variables.
    pub fn free_variables(&self) -> BTreeSet<String> {
        fn collect(e: &Expr, out: &mut BTreeSet<String>) {
            match e {
                Expr::Constant(_) => {}
                Expr::Variable(name) => {
                    out.insert(name.clone());
                }
                Expr::Sum(es) | Expr::Product(es) => {
                    for e in es {
                        collect(e, out);
                    }
                }
                Expr::Power(b, x) => {
                    collect(b, out);
                    collect(x, out);
                }
                Expr::Negate(a) | Expr::Call(_, a) => collect(a, out),
            }
        }
        let mut out = BTreeSet::new();
        collect(&self.normalize(), &mut out);
        out
    }

    /// Replace every occurrence of `var` by `replacement`, then normalize.
    pub fn substitute(&self, var: &str, replacement: &Expr) -> Expr {
        fn walk(e: &Expr, var: &str, r: &Expr) -> Expr {
            match e {
                Expr::Constant(_) => e.clone(),
                Expr::Variable(name) => {
                    if name == var {
                        r.clone()
                    } else {
                        e.clone()
                    }
                }
                Expr::Sum(es) => Expr::Sum(es.iter().map(|e| walk(e, var, r)).collect()),
                Expr::Product(es) => Expr::Product(es.iter().map(|e| walk(e, var, r)).collect()),
                Expr::Power(b, x) => Expr::pow(walk(b, var, r), walk(x, var, r)),
                Expr::Negate(a) => Expr::neg(walk(a, var, r)),
                Expr::Call(f, a) => Expr::call(*f, walk(a, var, r)),
            }
        }
        walk(self, var, replacement).normalize()
    }
}

impl From<f64> for Expr {
    fn from(value: f64) -> Expr {
        Expr::Constant(value)
    }
}

impl std::str::FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Expr, ParseError> {
        parse(s)
    }
}

#[cfg(test)]
mod tests;
