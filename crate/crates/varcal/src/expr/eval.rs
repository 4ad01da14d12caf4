//! Numeric evaluation under a set of variable bindings.

use super::Expr;
use std::collections::BTreeMap;

/// Variable bindings for [`Expr::evaluate`]: a map from identifier to value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Bindings(BTreeMap<String, f64>);

impl Bindings {
    pub fn new() -> Bindings {
        Bindings::default()
    }

    /// Builder-style insert: `Bindings::new().with("x", 1.0).with("yp", 2.0)`.
    pub fn with(mut self, name: &str, value: f64) -> Bindings {
        self.set(name, value);
        self
    }

    pub fn set(&mut self, name: &str, value: f64) {
        self.0.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.get(name).copied()
    }
}

/// Domain failures during evaluation. Each error names the offending
/// subexpression (printed form) and the argument value it received.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("unbound variable `{name}`")]
    Unbound { name: String },
    #[error("square root of negative number in `{expr}` (argument {value})")]
    SqrtNegative { expr: String, value: f64 },
    #[error("logarithm of non-positive number in `{expr}` (argument {value})")]
    LnNonPositive { expr: String, value: f64 },
    #[error("division by zero in `{expr}`")]
    DivisionByZero { expr: String },
    #[error("cot singular in `{expr}` (argument {value})")]
    CotSingular { expr: String, value: f64 },
    #[error("power undefined in `{expr}` (base {base}, exponent {exponent})")]
    PowUndefined { expr: String, base: f64, exponent: f64 },
}

impl Expr {
    /// Evaluate with every free variable bound. IEEE semantics throughout;
    /// out-of-domain operations are reported as [`EvalError`]s rather than
    /// silently producing NaN.
    pub fn evaluate(&self, bindings: &Bindings) -> Result<f64, EvalError> {
        match self {
            Expr::Constant(c) => Ok(*c),
            Expr::Variable(name) => bindings.get(name).ok_or_else(|| EvalError::Unbound {
                name: name.clone(),
            }),
            Expr::Sum(terms) => {
                let mut acc = 0.0;
                for t in terms {
                    acc += t.evaluate(bindings)?;
                }
                Ok(acc)
            }
            Expr::Product(factors) => {
                let mut acc = 1.0;
                for f in factors {
                    acc *= f.evaluate(bindings)?;
                }
                Ok(acc)
            }
            Expr::Power(base, exp) => {
                let b = base.evaluate(bindings)?;
                let e = exp.evaluate(bindings)?;
                if b == 0.0 && e < 0.0 {
                    return Err(EvalError::DivisionByZero {
                        expr: self.to_string(),
                    });
                }
                let v = b.powf(e);
                if v.is_nan() && !b.is_nan() && !e.is_nan() {
                    return Err(EvalError::PowUndefined {
                        expr: self.to_string(),
                        base: b,
                        exponent: e,
                    });
                }
                Ok(v)
            }
            Expr::Negate(arg) => Ok(-arg.evaluate(bindings)?),
            Expr::Call(func, arg) => {
                let v = arg.evaluate(bindings)?;
                match func {
                    super::Func::Sqrt if v < 0.0 => Err(EvalError::SqrtNegative {
                        expr: self.to_string(),
                        value: v,
                    }),
                    super::Func::Ln if v <= 0.0 => Err(EvalError::LnNonPositive {
                        expr: self.to_string(),
                        value: v,
                    }),
                    super::Func::Cot if v.sin() == 0.0 => Err(EvalError::CotSingular {
                        expr: self.to_string(),
                        value: v,
                    }),
                    _ => Ok(func.apply(v)),
                }
            }
        }
    }
}
