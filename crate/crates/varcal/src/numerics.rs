//! Numeric kernels: fixed-step RK4 for second-order ODEs, scalar
//! bisection, shooting for two-point boundary value problems, and an
//! adaptive quadrature that absorbs inverse-square-root endpoint
//! singularities.
//!
//! Everything works on plain `f64` callbacks. The acceleration callback
//! for the ODE solvers returns `Result<f64, String>` so that domain
//! failures inside symbolic evaluation can abort the integration with a
//! message; pure closures just wrap their value in `Ok`.

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericsError {
    #[error("integration aborted at x = {x}: {message}")]
    Domain { x: f64, message: String },
    #[error("no sign change in [{lo}, {hi}] after scanning {scanned} sub-brackets ({failures} trial evaluations failed)")]
    NoSignChange {
        lo: f64,
        hi: f64,
        scanned: usize,
        failures: usize,
    },
    #[error("root refinement did not converge within {limit} iterations (bracket [{lo}, {hi}])")]
    IterationLimit { limit: usize, lo: f64, hi: f64 },
    #[error("non-finite value {value} at x = {x}")]
    NonFinite { x: f64, value: f64 },
    #[error("adaptive quadrature exhausted depth {max_depth} near x = {x} without reaching tolerance")]
    DepthExhausted { max_depth: u32, x: f64 },
}

/// Solution samples of y'' = f(x, y, y'): `(x, y, yp)` triples in
/// integration order with uniform spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeTrajectory {
    pub samples: Vec<(f64, f64, f64)>,
    pub step: f64,
}

impl OdeTrajectory {
    pub fn start(&self) -> (f64, f64, f64) {
        self.samples[0]
    }

    pub fn end(&self) -> (f64, f64, f64) {
        *self.samples.last().expect("trajectory is never empty")
    }
}

/// Classical fixed-step RK4 for y'' = f(x, y, y') from (x0, y0, yp0) to
/// x1 in n uniform steps, giving n+1 samples. Integration runs in either
/// direction; a domain error from `f` aborts with the failing x attached.
pub fn rk4<F>(
    f: F,
    x0: f64,
    y0: f64,
    yp0: f64,
    x1: f64,
    n: usize,
) -> Result<OdeTrajectory, NumericsError>
where
    F: Fn(f64, f64, f64) -> Result<f64, String>,
{
    assert!(n >= 1, "rk4 needs at least one step");
    assert!(x1 != x0, "rk4 needs a nonempty interval");
    let h = (x1 - x0) / (n as f64);
    let eval = |x: f64, y: f64, v: f64| -> Result<f64, NumericsError> {
        f(x, y, v).map_err(|message| NumericsError::Domain { x, message })
    };

    let mut samples = Vec::with_capacity(n + 1);
    samples.push((x0, y0, yp0));
    let (mut y, mut v) = (y0, yp0);
    for i in 0..n {
        let x = x0 + h * (i as f64);
        let k1y = v;
        let k1v = eval(x, y, v)?;
        let k2y = v + 0.5 * h * k1v;
        let k2v = eval(x + 0.5 * h, y + 0.5 * h * k1y, v + 0.5 * h * k1v)?;
        let k3y = v + 0.5 * h * k2v;
        let k3v = eval(x + 0.5 * h, y + 0.5 * h * k2y, v + 0.5 * h * k2v)?;
        let k4y = v + h * k3v;
        let k4v = eval(x + h, y + h * k3y, v + h * k3v)?;
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        let x_next = if i + 1 == n { x1 } else { x0 + h * ((i + 1) as f64) };
        samples.push((x_next, y, v));
    }
    Ok(OdeTrajectory { samples, step: h })
}

/// Plain bisection for g(x) = 0 on a bracketing interval. Returns the
/// midpoint once the interval width is at or below `tol`.
pub fn bisect<G>(g: G, lo: f64, hi: f64, tol: f64) -> Result<f64, NumericsError>
where
    G: Fn(f64) -> f64,
{
    assert!(lo < hi, "bisect needs an ordered interval");
    assert!(tol > 0.0, "bisect needs a positive tolerance");
    let check = |x: f64, v: f64| -> Result<f64, NumericsError> {
        if v.is_finite() {
            Ok(v)
        } else {
            Err(NumericsError::NonFinite { x, value: v })
        }
    };
    let (mut lo, mut hi) = (lo, hi);
    let mut glo = check(lo, g(lo))?;
    let ghi = check(hi, g(hi))?;
    if glo == 0.0 {
        return Ok(lo);
    }
    if ghi == 0.0 {
        return Ok(hi);
    }
    if glo.signum() == ghi.signum() {
        return Err(NumericsError::NoSignChange {
            lo,
            hi,
            scanned: 0,
            failures: 0,
        });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval no longer splittable in f64
        }
        let gmid = check(mid, g(mid))?;
        if gmid == 0.0 {
            return Ok(mid);
        }
        if gmid.signum() == glo.signum() {
            lo = mid;
            glo = gmid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

const SHOOT_SCAN: usize = 64;
const SHOOT_MAX_ITER: usize = 200;

/// Shooting for the boundary value problem y(a) = ya, y(b) = yb of
/// y'' = f(x, y, y'): finds the initial slope s with |y_b(s) - yb| <= tol.
///
/// The slope residual F(s) = y_b(s) - yb is bracketed on [s_lo, s_hi]; if
/// the endpoints do not straddle a root, 64 uniform sub-brackets are
/// scanned first (trial slopes whose integration fails are skipped and
/// counted). The bracket is then refined by secant steps with a bisection
/// fallback, which guarantees progress; refinement is capped at 200
/// iterations.
#[allow(clippy::too_many_arguments)]
pub fn shoot<F>(
    f: F,
    a: f64,
    ya: f64,
    b: f64,
    yb: f64,
    s_lo: f64,
    s_hi: f64,
    tol: f64,
    n: usize,
) -> Result<(f64, OdeTrajectory), NumericsError>
where
    F: Fn(f64, f64, f64) -> Result<f64, String>,
{
    assert!(s_lo < s_hi, "shoot needs an ordered slope bracket");
    assert!(tol > 0.0, "shoot needs a positive tolerance");
    let try_slope = |s: f64| -> Result<(f64, OdeTrajectory), NumericsError> {
        let traj = rk4(&f, a, ya, s, b, n)?;
        let miss = traj.end().1 - yb;
        Ok((miss, traj))
    };

    // Bracket scan, endpoints included.
    let mut nodes: Vec<(f64, f64, OdeTrajectory)> = Vec::new();
    let mut failures = 0usize;
    let mut bracket: Option<((f64, f64), (f64, f64))> = None;
    for i in 0..=SHOOT_SCAN {
        let s = s_lo + (s_hi - s_lo) * (i as f64) / (SHOOT_SCAN as f64);
        match try_slope(s) {
            Ok((miss, traj)) => {
                if miss.abs() <= tol {
                    return Ok((s, traj));
                }
                if let Some((ps, pmiss, _)) = nodes.last() {
                    if pmiss.signum() != miss.signum() {
                        bracket = Some(((*ps, *pmiss), (s, miss)));
                        break;
                    }
                }
                nodes.push((s, miss, traj));
            }
            Err(NumericsError::Domain { .. }) => failures += 1,
            Err(e) => return Err(e),
        }
    }
    let ((mut sl, mut ml), (mut sh, mut mh)) = bracket.ok_or(NumericsError::NoSignChange {
        lo: s_lo,
        hi: s_hi,
        scanned: SHOOT_SCAN,
        failures,
    })?;

    // Hybrid refinement: secant proposal, bisection whenever the proposal
    // leaves the bracket or stalls.
    let mut last_width = sh - sl;
    for _ in 0..SHOOT_MAX_ITER {
        let secant = sh - mh * (sh - sl) / (mh - ml);
        let width = sh - sl;
        let mut s = secant;
        let margin = 0.01 * width;
        if !s.is_finite() || s <= sl + margin || s >= sh - margin || width > 0.75 * last_width {
            s = 0.5 * (sl + sh);
        }
        last_width = width;
        let (miss, traj) = try_slope(s)?;
        if miss.abs() <= tol {
            return Ok((s, traj));
        }
        if miss.signum() == ml.signum() {
            sl = s;
            ml = miss;
        } else {
            sh = s;
            mh = miss;
        }
    }
    Err(NumericsError::IterationLimit {
        limit: SHOOT_MAX_ITER,
        lo: sl,
        hi: sh,
    })
}

/// Tolerances for [`integrate_singular`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadratureSpec {
    fn default() -> QuadratureSpec {
        QuadratureSpec {
            rel_tol: 1e-10,
            max_depth: 40,
        }
    }
}

/// Integrate g over [x0, x1] where g may blow up like (x - x0)^(-1/2) at
/// the left endpoint.
///
/// The substitution x = x0 + t^2 turns the integral into
/// `int_0^sqrt(x1-x0) 2*t*g(x0 + t^2) dt`, whose integrand is bounded at
/// an inverse-square-root singularity; the t = 0 sample is evaluated one
/// step inside, at t = 1e-12 * range or the smallest t for which
/// `x0 + t^2` is representable above x0, whichever is larger. The
/// transformed integrand is then handled by adaptive Simpson with
/// Richardson correction to `rel_tol`.
pub fn integrate_singular<G>(
    g: G,
    x0: f64,
    x1: f64,
    spec: QuadratureSpec,
) -> Result<f64, NumericsError>
where
    G: Fn(f64) -> f64,
{
    assert!(x1 > x0, "integrate_singular needs x1 > x0");
    assert!(spec.rel_tol > 0.0, "rel_tol must be positive");
    let span = (x1 - x0).sqrt();
    let mut t_floor = 1e-12 * span;
    while x0 + t_floor * t_floor == x0 {
        t_floor *= 2.0;
    }
    let phi = |t: f64| -> Result<f64, NumericsError> {
        let t_eff = if t == 0.0 { t_floor } else { t };
        let x = x0 + t_eff * t_eff;
        let v = 2.0 * t_eff * g(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(NumericsError::NonFinite { x, value: v })
        }
    };

    let fa = phi(0.0)?;
    let fm = phi(0.5 * span)?;
    let fb = phi(span)?;
    let whole = span / 6.0 * (fa + 4.0 * fm + fb);
    let eps = spec.rel_tol * whole.abs().max(1e-12);
    let scale = whole.abs().max(1.0);
    simpson(
        &phi, 0.0, span, fa, fm, fb, whole, eps, scale, spec.max_depth, x0,
    )
    .map_err(|e| match e {
        NumericsError::DepthExhausted { x, .. } => NumericsError::DepthExhausted {
            max_depth: spec.max_depth,
            x,
        },
        other => other,
    })
}

/// One adaptive Simpson split with the `(s2 - s1)/15` Richardson term.
#[allow(clippy::too_many_arguments)]
fn simpson<P>(
    phi: &P,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    s_whole: f64,
    eps: f64,
    scale: f64,
    depth: u32,
    x0: f64,
) -> Result<f64, NumericsError>
where
    P: Fn(f64) -> Result<f64, NumericsError>,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = phi(lm)?;
    let frm = phi(rm)?;
    let s_left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let s_right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let s2 = s_left + s_right;
    let delta = s2 - s_whole;
    // Accept on the Simpson error estimate, or once the split stops being
    // meaningful at machine precision.
    if delta.abs() <= 15.0 * eps || delta.abs() <= 16.0 * f64::EPSILON * scale {
        return Ok(s2 + delta / 15.0);
    }
    if depth == 0 {
        // max_depth is filled in by the caller at the top of the recursion.
        return Err(NumericsError::DepthExhausted {
            max_depth: 0,
            x: x0 + m * m,
        });
    }
    let left = simpson(
        phi,
        a,
        m,
        fa,
        flm,
        fm,
        s_left,
        0.5 * eps,
        scale,
        depth - 1,
        x0,
    )?;
    let right = simpson(
        phi,
        m,
        b,
        fm,
        frm,
        fb,
        s_right,
        0.5 * eps,
        scale,
        depth - 1,
        x0,
    )?;
    Ok(left + right)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_force(_x: f64, _y: f64, _v: f64) -> Result<f64, String> {
        Ok(0.0)
    }

    #[test]
    fn rk4_is_exact_on_cubic_forcing() {
        // y'' = -6x with y(-1) = 1, y'(-1) = -3 has the polynomial solution
        // y = -x^3, on which every RK4 stage is exact.
        let traj = rk4(|x, _, _| Ok(-6.0 * x), -1.0, 1.0, -3.0, 0.0, 64).unwrap();
        for &(x, y, yp) in &traj.samples {
            assert!((y - (-x * x * x)).abs() < 1e-13, "y at {x}");
            assert!((yp - (-3.0 * x * x)).abs() < 1e-13, "yp at {x}");
        }
        assert_eq!(traj.samples.len(), 65);
        assert_eq!(traj.end().0, 0.0);
    }

    #[test]
    fn rk4_integrates_backwards() {
        let traj = rk4(no_force, 1.0, 2.0, 2.0, 0.0, 10).unwrap();
        assert!(traj.step < 0.0);
        let (x, y, yp) = traj.end();
        assert_eq!(x, 0.0);
        assert!((y - 0.0).abs() < 1e-14);
        assert!((yp - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rk4_reports_the_failing_abscissa() {
        let f = |x: f64, _: f64, _: f64| -> Result<f64, String> {
            if x > 0.5 {
                Err("left the chart".into())
            } else {
                Ok(0.0)
            }
        };
        let err = rk4(f, 0.0, 0.0, 1.0, 1.0, 4).unwrap_err();
        match err {
            NumericsError::Domain { x, message } => {
                assert!(x > 0.5);
                assert_eq!(message, "left the chart");
            }
            other => panic!("expected Domain, got {other:?}"),
        }
    }

    #[test]
    fn rk4_converges_at_fourth_order() {
        // y'' = -2 y'/x on [1, 2] with y(1) = 3, y'(1) = 4: the solution
        // y = 7 - 4/x is not a low-degree polynomial, so halving the step
        // must cut the endpoint error by roughly 2^4.
        let f = |x: f64, _: f64, v: f64| -> Result<f64, String> { Ok(-2.0 * v / x) };
        let err_at = |n: usize| -> f64 {
            let traj = rk4(f, 1.0, 3.0, 4.0, 2.0, n).unwrap();
            (traj.end().1 - 5.0).abs()
        };
        let factor = err_at(100) / err_at(200);
        assert!(
            (12.0..=20.0).contains(&factor),
            "convergence factor {factor}"
        );
    }

    #[test]
    fn bisect_finds_the_cosine_root() {
        let root = bisect(|x| x.cos(), 1.0, 2.0, 1e-12).unwrap();
        assert!((root - std::f64::consts::FRAC_PI_2).abs() < 1e-11);
    }

    #[test]
    fn bisect_accepts_an_endpoint_root() {
        assert_eq!(bisect(|x| x, 0.0, 1.0, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn bisect_rejects_a_one_signed_interval() {
        let err = bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-9).unwrap_err();
        assert!(matches!(err, NumericsError::NoSignChange { .. }));
    }

    #[test]
    fn bisect_surfaces_non_finite_values() {
        let err = bisect(|x| (x - 0.5).ln(), 0.0, 1.0, 1e-9).unwrap_err();
        assert!(matches!(err, NumericsError::NonFinite { .. }));
    }

    #[test]
    fn shooting_recovers_the_cubic_slope() {
        let (slope, traj) = shoot(
            |x, _, _| Ok(-6.0 * x),
            -1.0,
            1.0,
            0.0,
            0.0,
            -10.0,
            10.0,
            1e-10,
            400,
        )
        .unwrap();
        assert!((slope - (-3.0)).abs() < 1e-6, "slope {slope}");
        assert!((traj.end().1 - 0.0).abs() <= 1e-10);
    }

    #[test]
    fn shooting_recovers_the_hyperbola_slope() {
        let (slope, traj) = shoot(
            |x, _, v| Ok(-2.0 * v / x),
            1.0,
            3.0,
            2.0,
            5.0,
            -10.0,
            10.0,
            1e-10,
            400,
        )
        .unwrap();
        assert!((slope - 4.0).abs() < 1e-6, "slope {slope}");
        assert!((traj.end().1 - 5.0).abs() <= 1e-10);
    }

    #[test]
    fn shooting_reports_unreachable_targets() {
        // y'' = 0 from y(0) = 0 with slopes in [-1, 1] lands in [-1, 1];
        // a target of 5 is out of reach.
        let err = shoot(no_force, 0.0, 0.0, 1.0, 5.0, -1.0, 1.0, 1e-10, 10).unwrap_err();
        match err {
            NumericsError::NoSignChange { scanned, .. } => assert_eq!(scanned, 64),
            other => panic!("expected NoSignChange, got {other:?}"),
        }
    }

    #[test]
    fn shooting_skips_failing_trial_slopes() {
        // Trials with a negative slope dive below y = 0 where the force
        // field is undefined; the scan must skip them and still bracket.
        let f = |_x: f64, y: f64, _v: f64| -> Result<f64, String> {
            if y < 0.0 {
                Err("y went negative".into())
            } else {
                Ok(0.0)
            }
        };
        let (slope, _) = shoot(f, 0.0, 0.5, 1.0, 1.0, -3.0, 3.0, 1e-10, 50).unwrap();
        assert!((slope - 0.5).abs() < 1e-9);
    }

    #[test]
    fn singular_quadrature_handles_the_inverse_square_root() {
        let v = integrate_singular(|x| 1.0 / x.sqrt(), 0.0, 1.0, QuadratureSpec::default())
            .unwrap();
        assert!((v - 2.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn singular_quadrature_matches_a_smooth_oracle() {
        // int_0^1 exp(x)/sqrt(x) dx = sqrt(pi) * erfi(1).
        let v = integrate_singular(
            |x| x.exp() / x.sqrt(),
            0.0,
            1.0,
            QuadratureSpec::default(),
        )
        .unwrap();
        assert!((v - 2.925303491814363).abs() < 1e-10, "{v}");
    }

    #[test]
    fn singular_quadrature_is_plain_quadrature_on_smooth_integrands() {
        let v = integrate_singular(|x| x * x * x + x, 2.0, 3.0, QuadratureSpec::default())
            .unwrap();
        let exact = (3.0f64.powi(4) - 2.0f64.powi(4)) / 4.0 + (9.0 - 4.0) / 2.0;
        assert!((v - exact).abs() < 1e-10 * exact, "{v}");
    }

    #[test]
    fn singular_quadrature_gives_up_on_non_integrable_poles() {
        let err = integrate_singular(|x| 1.0 / x, 0.0, 1.0, QuadratureSpec::default());
        assert!(matches!(
            err,
            Err(NumericsError::DepthExhausted { max_depth: 40, .. })
        ));
    }

    #[test]
    fn singular_quadrature_rejects_non_finite_integrands() {
        let g = |x: f64| if x > 0.9 { f64::NAN } else { 1.0 };
        let err = integrate_singular(g, 0.0, 1.0, QuadratureSpec::default());
        assert!(matches!(err, Err(NumericsError::NonFinite { .. })));
    }
}
