//! The brachistochrone worked end to end.
//!
//! For descent from (x0, y0) to (x1, y1) under gravity g (y measured
//! upward, so the bead falls as y decreases), the descent time along a
//! curve y(x) released at rest from height y0 is
//!
//! ```text
//! T[y] = 1/sqrt(2g) * int_{x0}^{x1} sqrt((1 + y'(x)^2) / (y0 - y(x))) dx
//! ```
//!
//! The minimizing curve is the cycloid
//!
//! ```text
//! x(theta) = x0 + a/2 * (theta - sin theta)
//! y(theta) = y0 - a/2 * (1 - cos theta)        0 <= theta <= theta1
//! ```
//!
//! whose constants come from the endpoint conditions: theta1 solves
//! `(theta - sin theta) / (1 - cos theta) = (x1 - x0)/(y0 - y1)` on
//! (0, 2*pi) and then `a = 2*(y0 - y1)/(1 - cos theta1)`. The flat case
//! y1 = y0 degenerates to theta1 = 2*pi with a = (x1 - x0)/pi. The
//! minimal time in closed form is `theta1 * sqrt(a / (2g))`.

use crate::expr::{Bindings, EvalError, Expr};
use crate::numerics::{bisect, integrate_singular, NumericsError, QuadratureSpec};
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BrachError {
    #[error("endpoints must satisfy x1 > x0 (got x0 = {x0}, x1 = {x1})")]
    NotRightward { x0: f64, x1: f64 },
    #[error("ascending endpoint unsupported by this parametrization (y1 = {y1} > y0 = {y0})")]
    Ascending { y0: f64, y1: f64 },
    #[error("theta = {theta} outside [0, {theta1}]")]
    ThetaOutOfRange { theta: f64, theta1: f64 },
    #[error("curve starts at y = {actual}, expected y0 = {expected} within 1e-9")]
    CurveStartMismatch { expected: f64, actual: f64 },
    #[error("curve reaches y = {y} at x = {x}, at or above the release height y0 = {y0}")]
    CurveAboveStart { x: f64, y: f64, y0: f64 },
    #[error("curve evaluation failed at x = {x}: {source}")]
    CurveEval { x: f64, source: EvalError },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Descent endpoints, release point first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Endpoints {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

/// A solved cycloid: release point, diameter-like constant `a` and final
/// parameter `theta1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycloidSolution {
    pub x0: f64,
    pub y0: f64,
    pub a: f64,
    pub theta1: f64,
}

/// A polyline sampled from a curve, for CSV/SVG output.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSamples {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// `(theta - sin theta) / (1 - cos theta)`, strictly increasing from 0 to
/// infinity on (0, 2*pi); its value against `(x1-x0)/(y0-y1)` pins theta1.
///
/// The denominator is computed as `2*sin(theta/2)^2`, which stays positive
/// where `1 - cos theta` rounds to zero near the ends of the interval.
pub fn endpoint_ratio(theta: f64) -> f64 {
    let denom = 2.0 * (0.5 * theta).sin().powi(2);
    (theta - theta.sin()) / denom
}

/// Solve the cycloid constants for the given endpoints. `tol` is the
/// bisection tolerance on theta1 (1e-10 is plenty for 10 significant
/// digits everywhere downstream).
pub fn solve_constants(e: Endpoints, tol: f64) -> Result<CycloidSolution, BrachError> {
    if !(e.x1 > e.x0) {
        return Err(BrachError::NotRightward { x0: e.x0, x1: e.x1 });
    }
    if e.y1 > e.y0 {
        return Err(BrachError::Ascending { y0: e.y0, y1: e.y1 });
    }
    if e.y1 == e.y0 {
        // Flat endpoints: theta1 -> 2*pi, and the first endpoint equation
        // a*(2*pi - 0) = 2*(x1 - x0) gives a directly.
        return Ok(CycloidSolution {
            x0: e.x0,
            y0: e.y0,
            a: (e.x1 - e.x0) / PI,
            theta1: 2.0 * PI,
        });
    }
    let ratio = (e.x1 - e.x0) / (e.y0 - e.y1);
    let theta1 = bisect(
        |theta| endpoint_ratio(theta) - ratio,
        1e-9,
        2.0 * PI - 1e-9,
        tol,
    )?;
    let a = (e.y0 - e.y1) / (0.5 * theta1).sin().powi(2);
    Ok(CycloidSolution {
        x0: e.x0,
        y0: e.y0,
        a,
        theta1,
    })
}

/// Point of the solved cycloid at parameter theta in [0, theta1].
pub fn cycloid_xy(s: &CycloidSolution, theta: f64) -> Result<(f64, f64), BrachError> {
    if !(0.0..=s.theta1).contains(&theta) {
        return Err(BrachError::ThetaOutOfRange {
            theta,
            theta1: s.theta1,
        });
    }
    let x = s.x0 + 0.5 * s.a * (theta - theta.sin());
    let y = s.y0 - 0.5 * s.a * (1.0 - theta.cos());
    Ok((x, y))
}

/// n+1 cycloid points at uniform theta, labeled "cycloid".
pub fn sample_cycloid(s: &CycloidSolution, n: usize) -> CurveSamples {
    assert!(n >= 1, "need at least one segment");
    let points = (0..=n)
        .map(|i| {
            let theta = s.theta1 * (i as f64) / (n as f64);
            let x = s.x0 + 0.5 * s.a * (theta - theta.sin());
            let y = s.y0 - 0.5 * s.a * (1.0 - theta.cos());
            (x, y)
        })
        .collect();
    CurveSamples {
        label: "cycloid".to_string(),
        points,
    }
}

/// n+1 samples of an explicit curve y(x) on [x0, x1].
pub fn sample_curve(
    curve: &Expr,
    x0: f64,
    x1: f64,
    n: usize,
    label: &str,
) -> Result<CurveSamples, BrachError> {
    assert!(n >= 1, "need at least one segment");
    let mut points = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let x = x0 + (x1 - x0) * (i as f64) / (n as f64);
        let y = curve
            .evaluate(&Bindings::new().with("x", x))
            .map_err(|source| BrachError::CurveEval { x, source })?;
        if !y.is_finite() {
            return Err(BrachError::Numerics(NumericsError::NonFinite {
                x,
                value: y,
            }));
        }
        points.push((x, y));
    }
    Ok(CurveSamples {
        label: label.to_string(),
        points,
    })
}

/// Closed-form minimal descent time of the solved cycloid:
/// `theta1 * sqrt(a/(2g))`.
pub fn min_time(s: &CycloidSolution, g: f64) -> f64 {
    assert!(g > 0.0, "gravity must be positive");
    s.theta1 * (s.a / (2.0 * g)).sqrt()
}

const CURVE_PRECHECK_SAMPLES: usize = 256;

/// Descent time along an explicit curve y(x) from (x0, y(x0)) to x1,
/// released at rest from height y0 = y(x0).
///
/// The integrand has an inverse-square-root singularity at x0; it is
/// handled by [`integrate_singular`]. Before integrating, the curve is
/// required to start at y0 (within 1e-9) and to stay strictly below y0 on
/// (x0, x1], checked on 256 samples.
pub fn descent_time(
    curve: &Expr,
    x0: f64,
    x1: f64,
    y0: f64,
    g: f64,
    spec: QuadratureSpec,
) -> Result<f64, BrachError> {
    assert!(g > 0.0, "gravity must be positive");
    if !(x1 > x0) {
        return Err(BrachError::NotRightward { x0, x1 });
    }
    let at = |x: f64| -> Result<f64, BrachError> {
        curve
            .evaluate(&Bindings::new().with("x", x))
            .map_err(|source| BrachError::CurveEval { x, source })
    };
    let start = at(x0)?;
    if (start - y0).abs() > 1e-9 {
        return Err(BrachError::CurveStartMismatch {
            expected: y0,
            actual: start,
        });
    }
    for i in 1..=CURVE_PRECHECK_SAMPLES {
        let x = x0 + (x1 - x0) * (i as f64) / (CURVE_PRECHECK_SAMPLES as f64);
        let y = at(x)?;
        if !(y < y0) {
            return Err(BrachError::CurveAboveStart { x, y, y0 });
        }
    }

    // Time integrand sqrt((1 + y'(x)^2) / (y0 - y(x))). Close to the
    // release point the direct depth y0 - y(x) cancels catastrophically,
    // so inside a narrow band it is replaced by the mean value form
    // -y'(x0 + s/2) * s with s = x - x0, using the symbolic slope. Both
    // forms agree to ~1e-10 at the switchover.
    let slope = curve.differentiate("x");
    let slope_at = |x: f64| -> f64 {
        slope
            .evaluate(&Bindings::new().with("x", x))
            .unwrap_or(f64::NAN)
    };
    let s_switch = 1e-5 * (x1 - x0);
    let f = |x: f64| -> f64 {
        let s = x - x0;
        let depth = if s <= s_switch {
            -slope_at(x0 + 0.5 * s) * s
        } else {
            match at(x) {
                Ok(y) => y0 - y,
                Err(_) => f64::NAN,
            }
        };
        let m = slope_at(x);
        ((1.0 + m * m) / depth).sqrt()
    };
    let integral = integrate_singular(f, x0, x1, spec)?;
    Ok(integral / (2.0 * g).sqrt())
}

/// Descent time along the solved cycloid, computed numerically from the
/// parametric integrand
///
/// ```text
/// sqrt((dx/dtheta)^2 + (dy/dtheta)^2) / sqrt(y0 - y(theta))
/// ```
///
/// without using the closed form. The integrand is 0/0 at theta = 0 (and
/// at theta1 = 2*pi in the flat case), so the integral is split at
/// theta1/2 and each half is mapped with its delicate end at the left
/// endpoint of [`integrate_singular`].
pub fn descent_time_parametric(
    s: &CycloidSolution,
    g: f64,
    spec: QuadratureSpec,
) -> Result<f64, BrachError> {
    assert!(g > 0.0, "gravity must be positive");
    let a = s.a;
    let integrand = move |theta: f64| -> f64 {
        // Half-angle forms of dx/dtheta = a/2*(1 - cos) and
        // dy/dtheta = -a/2*sin keep the 0/0 ends finite in floating
        // point; arc length over sqrt(depth) is the time integrand.
        let s2 = (0.5 * theta).sin();
        let c2 = (0.5 * theta).cos();
        let dx = a * s2 * s2;
        let dy = -a * s2 * c2;
        let depth = a * s2 * s2;
        (dx * dx + dy * dy).sqrt() / depth.sqrt()
    };
    let half = 0.5 * s.theta1;
    let lower = integrate_singular(integrand, 0.0, half, spec)?;
    let theta1 = s.theta1;
    let upper = integrate_singular(move |u| integrand(theta1 - u), 0.0, theta1 - half, spec)?;
    Ok((lower + upper) / (2.0 * g).sqrt())
}
