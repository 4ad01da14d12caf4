//! Precedence-aware printing. The contract is that printing and re-parsing
//! an expression yields the same normal form, not the same tree: the
//! printer may write `Negate(Product(2, x))` as `-2*x`, which parses as
//! `Product(Negate(2), x)`, and both normalize identically.
//!
//! Products with negative constant exponents print as divisions
//! (`16/x^4`, `-2*yp/x`), the way one would write them by hand.

use super::Expr;
use std::fmt;

/// Binding strength used for parenthesization. A child is parenthesized
/// when its own level is below what the context requires.
fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Sum(_) => 1,
        Expr::Product(_) => 2,
        Expr::Negate(_) => 3,
        Expr::Constant(c) if *c < 0.0 => 3,
        Expr::Power(_, _) => 4,
        _ => 5,
    }
}

/// Exponents parse as `unary`: leading minus signs are fine, but a sum
/// or product underneath must be parenthesized or it escapes the `^`.
fn exponent_bare(e: &Expr) -> bool {
    match e {
        Expr::Negate(inner) => exponent_bare(inner),
        Expr::Constant(_) => true,
        other => prec(other) >= 4,
    }
}

/// Negative constant exponent, i.e. this factor belongs in a denominator.
fn denominator_part(e: &Expr) -> Option<(&Expr, f64)> {
    if let Expr::Power(base, exp) = e {
        if let Expr::Constant(k) = **exp {
            if k < 0.0 {
                return Some((base, -k));
            }
        }
    }
    None
}

fn write_expr(e: &Expr, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if prec(e) < min {
        out.write_str("(")?;
        write_expr(e, 0, out)?;
        return out.write_str(")");
    }
    match e {
        Expr::Constant(c) => write!(out, "{c}"),
        Expr::Variable(name) => out.write_str(name),
        Expr::Sum(terms) => {
            for (i, t) in terms.iter().enumerate() {
                match t {
                    Expr::Negate(inner) => {
                        out.write_str(if i == 0 { "-" } else { " - " })?;
                        write_expr(inner, 2, out)?;
                    }
                    _ => {
                        if i > 0 {
                            out.write_str(" + ")?;
                        }
                        write_expr(t, 2, out)?;
                    }
                }
            }
            Ok(())
        }
        Expr::Product(factors) => {
            let num: Vec<&Expr> = factors
                .iter()
                .filter(|f| denominator_part(f).is_none())
                .collect();
            let den: Vec<(&Expr, f64)> =
                factors.iter().filter_map(denominator_part).collect();
            if num.is_empty() {
                out.write_str("1")?;
            } else {
                for (i, f) in num.iter().enumerate() {
                    if i > 0 {
                        out.write_str("*")?;
                    }
                    write_expr(f, 3, out)?;
                }
            }
            if !den.is_empty() {
                out.write_str("/")?;
                if den.len() > 1 {
                    out.write_str("(")?;
                }
                for (i, (base, k)) in den.iter().enumerate() {
                    if i > 0 {
                        out.write_str("*")?;
                    }
                    if *k == 1.0 {
                        write_expr(base, if den.len() > 1 { 3 } else { 4 }, out)?;
                    } else {
                        write_expr(base, 5, out)?;
                        write!(out, "^{k}")?;
                    }
                }
                if den.len() > 1 {
                    out.write_str(")")?;
                }
            }
            Ok(())
        }
        Expr::Power(base, exp) => {
            write_expr(base, 5, out)?;
            out.write_str("^")?;
            if exponent_bare(exp) {
                write_expr(exp, 0, out)
            } else {
                out.write_str("(")?;
                write_expr(exp, 0, out)?;
                out.write_str(")")
            }
        }
        Expr::Negate(arg) => {
            out.write_str("-")?;
            write_expr(arg, 2, out)
        }
        Expr::Call(func, arg) => {
            out.write_str(func.name())?;
            out.write_str("(")?;
            write_expr(arg, 0, out)?;
            out.write_str(")")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(self, 0, f)
    }
}
