//! Euler-Lagrange machinery: residuals, first integrals, the explicit
//! acceleration form, and numeric verification of candidate extremals.
//!
//! For a first-order Lagrangian L(x, y, yp) the Euler-Lagrange residual is
//!
//! ```text
//! residual = dL/dy - d/dx (dL/dyp)
//! ```
//!
//! expanded with the total x-derivative, so the residual is an expression
//! in x, y, yp, ypp that vanishes along extremals. The residual is always
//! affine in ypp (`residual = P + Q*ypp` with P, Q free of ypp), which is
//! what makes the explicit form `ypp = -P/Q` well defined whenever Q is
//! not identically zero.

use crate::expr::{Bindings, EvalError, Expr};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VarcalcError {
    #[error("Lagrangian must be first-order in y: it contains ypp")]
    SecondOrderLagrangian,
    #[error("degenerate Lagrangian: the residual has no ypp term, so there is no second-order equation to solve")]
    Degenerate,
    #[error("evaluation failed at x = {x}: {source}")]
    EvalAt { x: f64, source: EvalError },
}

/// A validated first-order Lagrangian L(x, y, yp).
#[derive(Debug, Clone, PartialEq)]
pub struct Lagrangian {
    expr: Expr,
}

impl Lagrangian {
    /// Normalizes and validates: the expression may use x, y, yp and any
    /// non-reserved parameter names, but not ypp.
    pub fn new(expr: Expr) -> Result<Lagrangian, VarcalcError> {
        let expr = expr.normalize();
        if expr.free_variables().contains("ypp") {
            return Err(VarcalcError::SecondOrderLagrangian);
        }
        Ok(Lagrangian { expr })
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }
}

/// Which conservation law a first integral comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FirstIntegralKind {
    /// L does not depend on y: `Phi = dL/dyp` is constant along extremals.
    Momentum,
    /// L does not depend on x: `Phi = yp * dL/dyp - L` is constant.
    Energy,
}

impl FirstIntegralKind {
    pub fn name(self) -> &'static str {
        match self {
            FirstIntegralKind::Momentum => "momentum",
            FirstIntegralKind::Energy => "energy",
        }
    }
}

/// A conserved quantity `Phi(x, y, yp)` detected from the Lagrangian's
/// structure.
#[derive(Debug, Clone, PartialEq)]
pub struct FirstIntegral {
    pub kind: FirstIntegralKind,
    pub phi: Expr,
}

/// Everything derived from one Lagrangian.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerLagrangeResult {
    /// `dL/dy - d/dx(dL/dyp)`, normalized; an expression in x, y, yp, ypp.
    pub residual: Expr,
    /// `ypp = accel(x, y, yp)`, present unless the Lagrangian is degenerate.
    pub accel: Option<Expr>,
    pub first_integrals: Vec<FirstIntegral>,
}

/// Derive the Euler-Lagrange residual, the acceleration form and any
/// structural first integrals.
pub fn euler_lagrange(l: &Lagrangian) -> EulerLagrangeResult {
    let dl_dy = l.expr().differentiate("y");
    let dl_dyp = l.expr().differentiate("yp");
    let total = dl_dyp
        .total_x_derivative()
        .expect("dL/dyp of a first-order Lagrangian is first-order");
    let residual = Expr::sub(dl_dy, total).normalize();

    // residual = P + Q*ypp; Q = d(residual)/d(ypp) exactly, by affinity.
    let q = residual.differentiate("ypp");
    let p = residual.substitute("ypp", &Expr::Constant(0.0));
    let accel = if q.is_zero() {
        None
    } else {
        Some(Expr::neg(Expr::div(p, q)).normalize())
    };

    EulerLagrangeResult {
        residual,
        accel,
        first_integrals: detect_first_integrals(l),
    }
}

/// Structural conservation laws: momentum when y is absent from L, energy
/// when x is absent. Detection is by membership in `free_variables` after
/// normalization, so symbolically hidden dependence is not chased.
pub fn detect_first_integrals(l: &Lagrangian) -> Vec<FirstIntegral> {
    let fv = l.expr().free_variables();
    let mut out = Vec::new();
    let dl_dyp = l.expr().differentiate("yp");
    if !fv.contains("y") {
        out.push(FirstIntegral {
            kind: FirstIntegralKind::Momentum,
            phi: dl_dyp.clone(),
        });
    }
    if !fv.contains("x") {
        let phi = Expr::sub(
            Expr::product(vec![Expr::variable("yp"), dl_dyp]),
            l.expr().clone(),
        )
        .normalize();
        out.push(FirstIntegral {
            kind: FirstIntegralKind::Energy,
            phi,
        });
    }
    out
}

/// Isolate `ypp = -P/Q` from the affine residual, failing on degenerate
/// Lagrangians (Q identically zero after normalization).
pub fn accel_form(r: &EulerLagrangeResult) -> Result<Expr, VarcalcError> {
    r.accel.clone().ok_or(VarcalcError::Degenerate)
}

/// Result of evaluating the residual along a candidate curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerificationReport {
    pub max_abs_residual: f64,
    /// Sample x where the maximum was attained.
    pub worst_x: f64,
    pub sample_count: usize,
}

/// Substitute a candidate y(x) (an expression in x) and its derivatives
/// into the residual and evaluate on `n` uniform samples of [x_lo, x_hi].
pub fn verify_extremal(
    l: &Lagrangian,
    candidate: &Expr,
    x_lo: f64,
    x_hi: f64,
    n: usize,
) -> Result<VerificationReport, VarcalcError> {
    assert!(n >= 2, "need at least the two endpoint samples");
    let cp = candidate.differentiate("x");
    let cpp = cp.differentiate("x");
    let residual = euler_lagrange(l)
        .residual
        .substitute("y", candidate)
        .substitute("yp", &cp)
        .substitute("ypp", &cpp);

    let mut max_abs = f64::NEG_INFINITY;
    let mut worst_x = x_lo;
    for i in 0..n {
        let x = x_lo + (x_hi - x_lo) * (i as f64) / ((n - 1) as f64);
        let v = residual
            .evaluate(&Bindings::new().with("x", x))
            .map_err(|source| VarcalcError::EvalAt { x, source })?;
        if v.abs() > max_abs {
            max_abs = v.abs();
            worst_x = x;
        }
    }
    Ok(VerificationReport {
        max_abs_residual: max_abs,
        worst_x,
        sample_count: n,
    })
}

/// Evaluate a first integral along a candidate curve on `n` uniform
/// samples; returns the mean value and the maximum absolute deviation
/// from that mean.
pub fn first_integral_constancy(
    fi: &FirstIntegral,
    candidate: &Expr,
    x_lo: f64,
    x_hi: f64,
    n: usize,
) -> Result<(f64, f64), VarcalcError> {
    assert!(n >= 2, "need at least the two endpoint samples");
    let cp = candidate.differentiate("x");
    let phi = fi
        .phi
        .substitute("y", candidate)
        .substitute("yp", &cp);

    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let x = x_lo + (x_hi - x_lo) * (i as f64) / ((n - 1) as f64);
        let v = phi
            .evaluate(&Bindings::new().with("x", x))
            .map_err(|source| VarcalcError::EvalAt { x, source })?;
        values.push(v);
    }
    let mean = values.iter().sum::<f64>() / (n as f64);
    let max_dev = values
        .iter()
        .map(|v| (v - mean).abs())
        .fold(0.0, f64::max);
    Ok((mean, max_dev))
}
