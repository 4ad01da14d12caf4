//! Bounded normalization.
//!
//! `normalize` applies a fixed set of local rewrites until the tree is in
//! normal form. It is deliberately not a simplifier: there is no factoring,
//! no expansion of sums under products, and no trigonometric identities.
//! The rewrites are:
//!
//! * nested sums and products are flattened;
//! * constants are folded (including through function calls and constant
//!   powers when the result is finite);
//! * identity elements are stripped: `0` in sums, `1` in products,
//!   exponent `1`; a zero factor collapses the product;
//! * identical terms and factors are collected with numeric
//!   coefficients/exponents (`yp + yp` -> `2*yp`, `x*x` -> `x^2`);
//! * signs are pulled out of products, negation distributes over sums,
//!   and integer powers distribute over products and absorb negated
//!   bases by parity;
//! * terms and factors are put in a deterministic order (sums carry their
//!   folded constant first, products their coefficient first).
//!
//! The result is idempotent and evaluation-preserving away from domain
//! singularities (collecting `x * x^-1` to `1` extends the domain at
//! `x = 0`, as bounded simplification must).

use super::Expr;
use std::cmp::Ordering;

/// Total structural order used to sort terms and factors. Constants order
/// by `total_cmp`, variables by name, composites by kind then contents.
pub(crate) fn cmp_expr(a: &Expr, b: &Expr) -> Ordering {
    fn rank(e: &Expr) -> u8 {
        match e {
            Expr::Constant(_) => 0,
            Expr::Variable(_) => 1,
            Expr::Call(_, _) => 2,
            Expr::Power(_, _) => 3,
            Expr::Negate(_) => 4,
            Expr::Product(_) => 5,
            Expr::Sum(_) => 6,
        }
    }
    match (a, b) {
        (Expr::Constant(x), Expr::Constant(y)) => x.total_cmp(y),
        (Expr::Variable(x), Expr::Variable(y)) => x.cmp(y),
        (Expr::Call(f, x), Expr::Call(g, y)) => f.cmp(g).then_with(|| cmp_expr(x, y)),
        (Expr::Power(bx, ex), Expr::Power(by, ey)) => {
            cmp_expr(bx, by).then_with(|| cmp_expr(ex, ey))
        }
        (Expr::Negate(x), Expr::Negate(y)) => cmp_expr(x, y),
        (Expr::Product(xs), Expr::Product(ys)) | (Expr::Sum(xs), Expr::Sum(ys)) => {
            xs.len().cmp(&ys.len()).then_with(|| {
                for (x, y) in xs.iter().zip(ys) {
                    let ord = cmp_expr(x, y);
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                Ordering::Equal
            })
        }
        _ => rank(a).cmp(&rank(b)),
    }
}

fn is_integer(k: f64) -> bool {
    k.is_finite() && k.fract() == 0.0 && k.abs() < 9.0e15
}

/// View a factor as base^exponent; plain factors have exponent 1.
fn factor_key(e: &Expr) -> (&Expr, f64) {
    match e {
        Expr::Power(base, exp) => {
            if let Expr::Constant(k) = **exp {
                (base, k)
            } else {
                (e, 1.0)
            }
        }
        _ => (e, 1.0),
    }
}

/// Order factors by base first, exponent second, so `x^2*yp` sorts by
/// the bases `x < yp` rather than by node kind.
fn cmp_factor(a: &Expr, b: &Expr) -> Ordering {
    let (ab, ak) = factor_key(a);
    let (bb, bk) = factor_key(b);
    cmp_expr(ab, bb).then_with(|| ak.total_cmp(&bk))
}

/// Order sum cores as monomials: compare factor lists elementwise with
/// `cmp_factor`, shorter list first on ties.
fn cmp_core(a: &Expr, b: &Expr) -> Ordering {
    fn factors(e: &Expr) -> &[Expr] {
        match e {
            Expr::Product(fs) => fs,
            _ => std::slice::from_ref(e),
        }
    }
    let xs = factors(a);
    let ys = factors(b);
    for (x, y) in xs.iter().zip(ys) {
        let ord = cmp_factor(x, y);
        if ord != Ordering::Equal {
            return ord;
        }
    }
    xs.len().cmp(&ys.len()).then_with(|| cmp_expr(a, b))
}

/// Split a normalized term into (numeric coefficient, non-constant core).
/// A pure constant has core `None`.
fn split_term(t: &Expr) -> (f64, Option<Expr>) {
    match t {
        Expr::Constant(c) => (*c, None),
        Expr::Negate(u) => {
            let (c, core) = split_term(u);
            (-c, core)
        }
        Expr::Product(fs) => {
            if let Expr::Constant(c) = fs[0] {
                let rest: Vec<Expr> = fs[1..].to_vec();
                (c, Some(Expr::product(rest)))
            } else {
                (1.0, Some(t.clone()))
            }
        }
        _ => (1.0, Some(t.clone())),
    }
}

/// Rebuild `coeff * core`, pushing a negative sign outside.
fn build_term(coeff: f64, core: Expr) -> Expr {
    if coeff < 0.0 {
        return normalize_negate(build_term(-coeff, core));
    }
    if coeff == 1.0 {
        return core;
    }
    let mut factors = vec![Expr::Constant(coeff)];
    match core {
        Expr::Product(fs) => factors.extend(fs),
        other => factors.push(other),
    }
    Expr::Product(factors)
}

fn normalize_sum(terms: Vec<Expr>) -> Expr {
    // Flatten, then group by core.
    let mut constant = 0.0;
    let mut groups: Vec<(Expr, f64)> = Vec::new();
    let mut stack: Vec<Expr> = terms.into_iter().rev().collect();
    while let Some(t) = stack.pop() {
        if let Expr::Sum(inner) = t {
            for e in inner.into_iter().rev() {
                stack.push(e);
            }
            continue;
        }
        let (coeff, core) = split_term(&t);
        match core {
            None => constant += coeff,
            Some(core) => match groups.iter_mut().find(|(k, _)| *k == core) {
                Some((_, acc)) => *acc += coeff,
                None => groups.push((core, coeff)),
            },
        }
    }
    groups.retain(|(_, c)| *c != 0.0);
    groups.sort_by(|(a, _), (b, _)| cmp_core(a, b));
    let mut out: Vec<Expr> = Vec::with_capacity(groups.len() + 1);
    if constant != 0.0 {
        out.push(Expr::Constant(constant));
    }
    out.extend(groups.into_iter().map(|(core, c)| build_term(c, core)));
    Expr::sum(out)
}

fn normalize_product(factors: Vec<Expr>) -> Expr {
    // Fold constants and signs into a single coefficient, collect factors
    // as (base, numeric exponent) pairs; non-numeric exponents stay opaque.
    let mut coeff = 1.0;
    let mut items: Vec<(Expr, f64)> = Vec::new();
    let mut opaque: Vec<Expr> = Vec::new();
    let mut stack: Vec<Expr> = factors.into_iter().rev().collect();
    while let Some(f) = stack.pop() {
        match f {
            Expr::Constant(c) => coeff *= c,
            Expr::Negate(u) => {
                coeff = -coeff;
                stack.push(*u);
            }
            Expr::Product(inner) => {
                for e in inner.into_iter().rev() {
                    stack.push(e);
                }
            }
            Expr::Power(base, exp) => {
                if let Expr::Constant(k) = *exp {
                    match items.iter_mut().find(|(b, _)| *b == *base) {
                        Some((_, acc)) => *acc += k,
                        None => items.push((*base, k)),
                    }
                } else {
                    opaque.push(Expr::Power(base, exp));
                }
            }
            other => match items.iter_mut().find(|(b, _)| *b == other) {
                Some((_, acc)) => *acc += 1.0,
                None => items.push((other, 1.0)),
            },
        }
    }
    if coeff == 0.0 {
        return Expr::Constant(0.0);
    }
    items.retain(|(_, k)| *k != 0.0);
    items.sort_by(|(a, _), (b, _)| cmp_expr(a, b));
    opaque.sort_by(|a, b| cmp_expr(a, b));
    let mut rebuilt: Vec<Expr> = items
        .into_iter()
        .map(|(base, k)| {
            if k == 1.0 {
                base
            } else {
                Expr::pow(base, Expr::Constant(k))
            }
        })
        .collect();
    rebuilt.extend(opaque);
    if rebuilt.is_empty() {
        return Expr::Constant(coeff);
    }

    let negative = coeff < 0.0;
    let coeff = coeff.abs();
    let mut out: Vec<Expr> = Vec::with_capacity(rebuilt.len() + 1);
    if coeff != 1.0 {
        out.push(Expr::Constant(coeff));
    }
    out.extend(rebuilt);
    let body = Expr::product(out);
    if negative {
        normalize_negate(body)
    } else {
        body
    }
}

fn normalize_power(base: Expr, exp: Expr) -> Expr {
    let k = match exp {
        Expr::Constant(k) => k,
        other => return Expr::pow(base, other),
    };
    if k == 1.0 {
        return base;
    }
    if k == 0.0 {
        return Expr::Constant(1.0);
    }
    if let Expr::Constant(b) = base {
        let v = b.powf(k);
        if v.is_finite() {
            return Expr::Constant(v);
        }
        return Expr::pow(Expr::Constant(b), Expr::Constant(k));
    }
    if is_integer(k) {
        match base {
            // (-u)^k by parity of the integer exponent.
            Expr::Negate(u) => {
                let p = normalize_power(*u, Expr::Constant(k));
                return if (k / 2.0).fract() == 0.0 {
                    p
                } else {
                    normalize_negate(p)
                };
            }
            // (a*b)^k = a^k * b^k, sound for integer k.
            Expr::Product(fs) => {
                let distributed: Vec<Expr> = fs
                    .into_iter()
                    .map(|f| normalize_power(f, Expr::Constant(k)))
                    .collect();
                return normalize_product(distributed);
            }
            // (b^m)^k = b^(m*k) for integer k; extends the domain at points
            // where the inner power is undefined, like every collection rule.
            Expr::Power(inner_base, inner_exp) => {
                if let Expr::Constant(m) = *inner_exp {
                    return normalize_power(*inner_base, Expr::Constant(m * k));
                }
                return Expr::pow(Expr::Power(inner_base, inner_exp), Expr::Constant(k));
            }
            other => return Expr::pow(other, Expr::Constant(k)),
        }
    }
    Expr::pow(base, Expr::Constant(k))
}

fn normalize_negate(arg: Expr) -> Expr {
    match arg {
        Expr::Constant(c) => Expr::Constant(if c == 0.0 { 0.0 } else { -c }),
        Expr::Negate(u) => *u,
        // Distribute over sums so subtraction takes part in term collection.
        Expr::Sum(terms) => normalize_sum(terms.into_iter().map(Expr::neg).collect()),
        other => Expr::neg(other),
    }
}

impl Expr {
    /// Normal form under the bounded rewrites described in the module docs.
    pub fn normalize(&self) -> Expr {
        match self {
            Expr::Constant(c) => Expr::Constant(if *c == 0.0 { 0.0 } else { *c }),
            Expr::Variable(_) => self.clone(),
            Expr::Sum(terms) => normalize_sum(terms.iter().map(Expr::normalize).collect()),
            Expr::Product(factors) => {
                normalize_product(factors.iter().map(Expr::normalize).collect())
            }
            Expr::Power(base, exp) => normalize_power(base.normalize(), exp.normalize()),
            Expr::Negate(arg) => normalize_negate(arg.normalize()),
            Expr::Call(f, arg) => {
                let arg = arg.normalize();
                if let Expr::Constant(c) = arg {
                    let v = f.apply(c);
                    if v.is_finite() {
                        return Expr::Constant(v);
                    }
                }
                Expr::call(*f, arg)
            }
        }
    }
}
