//! Uniform smoothing of tail indicators.
//!
//! Adding independent `U ~ Unif[-c, c]` to `X` replaces the step indicator of
//! a tail event by its conditional probability given `X`, a piecewise-linear
//! ramp of width `2c`:
//!
//! * `f1(x) = P(x + U >= a)` with `c <= a`; the line `x / (a + c)` dominates it,
//!   so `c = a` gives `P(X + U >= a) <= E[X] / (2a)`.
//! * `f2(x) = P(|x + U - mu| >= a)` with `c = a/2`; the parabola
//!   `(x - mu)^2 / (2a^2)` touches it at `mu ± a`, giving half of Chebyshev.
//! * `f3(x) = P(x + U >= a)` with `c = 1/t`; the curve `exp(t(x - a)) / 2`
//!   touches it at `a`, giving half of Chernoff.
//!
//! When the density of `X` is weakly decreasing across the ramp, moving mass
//! from the left half of the ramp to the right cannot happen faster than the
//! reverse, so `P(X >= a) <= P(X + U >= a)` and the halved bound holds for `X`
//! itself. [`smoothing_free_applicable`] checks those shape conditions.

use std::fmt;

use serde::Serialize;

use crate::bounds::{chebyshev_bound, check_side, chernoff_bound, markov_bound, BoundResult, Method, Side};
use crate::distribution::{Distribution, Interval};
use crate::error::{domain, precondition, Error, Result};
use crate::quadrature::Integrator;

/// Tolerance for treating a declared mode as zero in the Gauss bound.
const MODE_TOL: f64 = 1e-12;

/// Centered uniform noise `U ~ Unif[-c, c]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmoothingWindow {
    pub half_width: f64,
}

impl SmoothingWindow {
    pub fn new(half_width: f64) -> Result<Self> {
        if half_width > 0.0 && half_width.is_finite() {
            Ok(Self { half_width })
        } else {
            Err(domain(format!(
                "window half-width must be positive and finite, got {half_width}"
            )))
        }
    }

    /// Inverse-CDF draw from the window given a unit uniform.
    pub fn draw(&self, unit: f64) -> f64 {
        self.half_width * (2.0 * unit - 1.0)
    }
}

impl fmt::Display for SmoothingWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Unif[-{c}, {c}]", c = self.half_width)
    }
}

/// A halved bound together with the exact probability of the smoothed event.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmoothedBound {
    #[serde(flatten)]
    pub bound: BoundResult,
    /// `E[f(X)] = P(X + U in event)`.
    pub exact_smoothed_tail: Option<f64>,
}

impl std::ops::Deref for SmoothedBound {
    type Target = BoundResult;

    fn deref(&self) -> &BoundResult {
        &self.bound
    }
}

/// `P(x + U >= center)` for `U ~ Unif[-c, c]`.
#[inline]
fn ramp_up(x: f64, center: f64, c: f64) -> f64 {
    if x <= center - c {
        0.0
    } else if x >= center + c {
        1.0
    } else {
        ((x - center + c) / (2.0 * c)).clamp(0.0, 1.0)
    }
}

/// `P(x + U <= center)` for `U ~ Unif[-c, c]`.
#[inline]
fn ramp_down(x: f64, center: f64, c: f64) -> f64 {
    if x >= center + c {
        0.0
    } else if x <= center - c {
        1.0
    } else {
        ((center + c - x) / (2.0 * c)).clamp(0.0, 1.0)
    }
}

/// Smoothed Markov indicator: 0 up to `a - c`, linear to 1 at `a + c`.
pub fn f1_eval(x: f64, a: f64, c: f64) -> Result<f64> {
    if !(c > 0.0 && c <= a) {
        return Err(domain(format!("f1 needs 0 < c <= a, got a = {a}, c = {c}")));
    }
    Ok(ramp_up(x, a, c))
}

/// Smoothed Chebyshev indicator: 0 for `|x - mu| <= a/2`, linear to 1 at
/// `|x - mu| = 3a/2`.
pub fn f2_eval(x: f64, mu: f64, a: f64) -> Result<f64> {
    if a.is_nan() || a <= 0.0 {
        return Err(domain(format!("f2 needs a > 0, got {a}")));
    }
    Ok(ramp_up((x - mu).abs(), a, 0.5 * a))
}

/// Smoothed Chernoff indicator: `f1` with half-width `1/t`.
pub fn f3_eval(x: f64, a: f64, t: f64) -> Result<f64> {
    if t.is_nan() || t <= 0.0 {
        return Err(domain(format!("f3 needs t > 0, got {t}")));
    }
    Ok(ramp_up(x, a, 1.0 / t))
}

/// Integrates `g` over `[lo, hi]` restricted to the law's support, splitting at
/// support endpoints so kinks land on subinterval boundaries.
fn integrate_over_support<F: Fn(f64) -> f64>(dist: &Distribution, g: F, lo: f64, hi: f64) -> f64 {
    let integrator = Integrator::with_abs_tol(1e-10);
    let mut cuts = vec![lo, hi];
    if let crate::distribution::Support::Interval(s) = dist.support() {
        for e in [s.lo, s.hi] {
            if e > lo && e < hi {
                cuts.push(e);
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.windows(2)
        .map(|w| integrator.integrate(&g, w[0], w[1]).value)
        .sum()
}

/// `P(X + U >= center)` with `U ~ Unif[-c, c]`.
///
/// Continuous laws use `(1/2c) ∫_{center-c}^{center+c} P(X >= y) dy`, which
/// equals the ramp integrated against the density plus the tail beyond the
/// ramp; the survival form stays bounded where densities blow up.
pub fn smoothed_upper_tail(dist: &Distribution, center: f64, c: f64) -> f64 {
    match dist.atoms() {
        Some(atoms) => atoms.iter().map(|at| at.p * ramp_up(at.x, center, c)).sum(),
        None => integrate_over_support(dist, |y| dist.survival(y), center - c, center + c) / (2.0 * c),
    }
}

/// `P(X + U <= center)` with `U ~ Unif[-c, c]`.
pub fn smoothed_lower_tail(dist: &Distribution, center: f64, c: f64) -> f64 {
    match dist.atoms() {
        Some(atoms) => atoms.iter().map(|at| at.p * ramp_down(at.x, center, c)).sum(),
        None => integrate_over_support(dist, |y| dist.cdf(y), center - c, center + c) / (2.0 * c),
    }
}

/// `P(|X + U - mean| >= a)` with `U ~ Unif[-a/2, a/2]`, i.e. `E[f2(X)]`.
pub fn smoothed_two_sided_tail(dist: &Distribution, a: f64) -> f64 {
    let mu = dist.mean();
    match dist.atoms() {
        Some(atoms) => atoms
            .iter()
            .map(|at| at.p * ramp_up((at.x - mu).abs(), a, 0.5 * a))
            .sum(),
        None => smoothed_upper_tail(dist, mu + a, 0.5 * a) + smoothed_lower_tail(dist, mu - a, 0.5 * a),
    }
}

/// Halved Markov bound with the optimal window `c = a`.
pub fn smoothed_markov(dist: &Distribution, a: f64) -> Result<SmoothedBound> {
    let classical = markov_bound(dist, a)?;
    let window = SmoothingWindow::new(a)?;
    finish(
        Method::SmoothedMarkov,
        0.5 * classical.raw_value,
        None,
        window,
        smoothing_free_applicable(dist, a, DropKind::Markov),
        smoothed_upper_tail(dist, a, a),
    )
}

/// Smoothed Markov bound `E[X] / (a + c)` for a general window `c <= a`.
pub fn smoothed_markov_with_window(dist: &Distribution, a: f64, window: SmoothingWindow) -> Result<SmoothedBound> {
    let c = window.half_width;
    if c > a {
        return Err(domain(format!("Markov smoothing needs c <= a, got a = {a}, c = {c}")));
    }
    if c == a {
        return smoothed_markov(dist, a);
    }
    markov_bound(dist, a)?;
    let mut cert = smoothing_free_applicable(dist, a, DropKind::Markov);
    cert.kind = format!("markov(c={c})");
    finish(
        Method::SmoothedMarkov,
        dist.mean() / (a + c),
        None,
        window,
        cert,
        smoothed_upper_tail(dist, a, c),
    )
}

/// Halved Chebyshev bound with window `c = a/2`.
pub fn smoothed_chebyshev(dist: &Distribution, a: f64) -> Result<SmoothedBound> {
    let classical = chebyshev_bound(dist, a)?;
    finish(
        Method::SmoothedChebyshev,
        0.5 * classical.raw_value,
        None,
        SmoothingWindow::new(0.5 * a)?,
        smoothing_free_applicable(dist, a, DropKind::Chebyshev),
        smoothed_two_sided_tail(dist, a),
    )
}

/// Halved Chernoff bound with window `c = 1/|t|`.
pub fn smoothed_chernoff(dist: &Distribution, a: f64, t: f64, side: Side) -> Result<SmoothedBound> {
    check_side(t, side)?;
    if t == 0.0 {
        return Err(domain(
            "smoothed Chernoff needs t != 0; the window 1/|t| is undefined at 0",
        ));
    }
    let classical = chernoff_bound(dist, a, t, side)?;
    let c = 1.0 / t.abs();
    let (method, exact) = match side {
        Side::Upper => (Method::SmoothedChernoffUpper, smoothed_upper_tail(dist, a, c)),
        Side::Lower => (Method::SmoothedChernoffLower, smoothed_lower_tail(dist, a, c)),
    };
    finish(
        method,
        0.5 * classical.raw_value,
        Some(t),
        SmoothingWindow::new(c)?,
        smoothing_free_applicable(dist, a, DropKind::Chernoff { t, side }),
        exact,
    )
}

fn finish(
    method: Method,
    raw: f64,
    t: Option<f64>,
    window: SmoothingWindow,
    cert: Certificate,
    exact: f64,
) -> Result<SmoothedBound> {
    let mut bound = BoundResult::new(method, raw);
    bound.t_used = t;
    bound.window = Some(window);
    bound.smoothing_free = cert.applicable;
    bound.certificate = Some(cert);
    Ok(SmoothedBound {
        bound,
        exact_smoothed_tail: Some(exact),
    })
}

/// Which halved bound a drop-the-noise check is for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DropKind {
    Markov,
    Chebyshev,
    Chernoff { t: f64, side: Side },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Monotonicity {
    Nonincreasing,
    Nondecreasing,
}

impl fmt::Display for Monotonicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Monotonicity::Nonincreasing => "nonincreasing",
            Monotonicity::Nondecreasing => "nondecreasing",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalCheck {
    pub interval: Interval,
    pub requirement: Monotonicity,
    pub satisfied: bool,
}

/// Record of the shape conditions examined for a drop-the-noise claim.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub kind: String,
    pub applicable: bool,
    pub checks: Vec<IntervalCheck>,
    /// First failed hypothesis, when not applicable.
    pub reason: Option<String>,
}

impl Certificate {
    fn rejected(kind: String, reason: impl Into<String>) -> Self {
        Self {
            kind,
            applicable: false,
            checks: Vec::new(),
            reason: Some(reason.into()),
        }
    }
}

fn check_interval(dist: &Distribution, interval: Interval, requirement: Monotonicity) -> IntervalCheck {
    let declared = match requirement {
        Monotonicity::Nonincreasing => dist.shape().density_nonincreasing_on,
        Monotonicity::Nondecreasing => dist.shape().density_nondecreasing_on,
    };
    IntervalCheck {
        interval,
        requirement,
        satisfied: declared.is_some_and(|d| d.covers(&interval)),
    }
}

/// Decides whether a halved bound holds for `X` itself.
///
/// * Markov: continuous, nonnegative, density nonincreasing on all of `[0, ∞)`.
///   Only `[a - c, a + c]` enters the argument, but the global condition is
///   what is checked.
/// * Chebyshev: density nonincreasing on `[mu + a/2, mu + 3a/2]` and
///   nondecreasing on `[mu - 3a/2, mu - a/2]`.
/// * Chernoff (upper tail only): density nonincreasing on `[a - 1/t, a + 1/t]`.
pub fn smoothing_free_applicable(dist: &Distribution, a: f64, kind: DropKind) -> Certificate {
    let label = match kind {
        DropKind::Markov => "markov".to_string(),
        DropKind::Chebyshev => "chebyshev".to_string(),
        DropKind::Chernoff { t, side } => format!("chernoff-{side}(t={t})"),
    };
    if a.is_nan() || a <= 0.0 {
        return Certificate::rejected(label, format!("threshold a = {a} is not positive"));
    }
    if !dist.shape().continuous {
        return Certificate::rejected(label, format!("{dist} is not continuous"));
    }
    let wanted: Vec<(Interval, Monotonicity)> = match kind {
        DropKind::Markov => {
            if !dist.shape().nonnegative {
                return Certificate::rejected(label, format!("{dist} is not nonnegative"));
            }
            vec![(Interval::new(0.0, f64::INFINITY), Monotonicity::Nonincreasing)]
        }
        DropKind::Chebyshev => {
            let mu = dist.mean();
            vec![
                (Interval::new(mu + 0.5 * a, mu + 1.5 * a), Monotonicity::Nonincreasing),
                (Interval::new(mu - 1.5 * a, mu - 0.5 * a), Monotonicity::Nondecreasing),
            ]
        }
        DropKind::Chernoff { t, side } => match side {
            Side::Lower => {
                return Certificate::rejected(label, "drop-U is only established for the upper Chernoff tail")
            }
            Side::Upper if t.is_nan() || t <= 0.0 => {
                return Certificate::rejected(label, format!("upper-tail drop-U needs t > 0, got {t}"))
            }
            Side::Upper => vec![(Interval::new(a - 1.0 / t, a + 1.0 / t), Monotonicity::Nonincreasing)],
        },
    };
    let checks: Vec<IntervalCheck> = wanted
        .into_iter()
        .map(|(iv, req)| check_interval(dist, iv, req))
        .collect();
    let reason = checks
        .iter()
        .find(|c| !c.satisfied)
        .map(|c| format!("density not {} on {}", c.requirement, c.interval));
    Certificate {
        kind: label,
        applicable: reason.is_none(),
        checks,
        reason,
    }
}

/// `P(|X| >= a) <= (4/9) E[X^2] / a^2` for continuous unimodal `X` with mode 0
/// and `a^2 >= (4/3) E[X^2]`.
pub fn gauss_bound(dist: &Distribution, a: f64) -> Result<BoundResult> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(domain(format!("threshold a must be positive and finite, got {a}")));
    }
    if !dist.shape().continuous {
        return Err(precondition(format!(
            "Gauss bound needs a continuous law; {dist} is not"
        )));
    }
    match dist.shape().unimodal_mode {
        Some(m) if m.abs() <= MODE_TOL => {}
        Some(m) => return Err(precondition(format!("Gauss bound needs mode 0; {dist} has mode {m}"))),
        None => return Err(precondition(format!("Gauss bound needs a unimodal law; {dist} is not"))),
    }
    let m2 = dist
        .second_moment()
        .ok_or_else(|| precondition(format!("{dist} has no finite second moment")))?;
    let threshold = (4.0 / 3.0 * m2).sqrt();
    if a * a < 4.0 / 3.0 * m2 {
        return Err(Error::Applicability(format!(
            "Gauss bound needs a^2 >= (4/3) E[X^2], i.e. a >= {threshold}; got a = {a}"
        )));
    }
    Ok(BoundResult::new(Method::Gauss, 4.0 / 9.0 * m2 / (a * a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn normal() -> Distribution {
        Distribution::normal(0.0, 1.0).unwrap()
    }

    #[test]
    fn f1_ramp_points() {
        assert_eq!(f1_eval(2.0, 2.0, 0.5).unwrap(), 0.5);
        assert_eq!(f1_eval(1.5, 2.0, 0.5).unwrap(), 0.0);
        assert_eq!(f1_eval(2.5, 2.0, 0.5).unwrap(), 1.0);
        assert_eq!(f1_eval(1.5, 1.0, 1.0).unwrap(), 0.75);
        assert!(f1_eval(1.0, 1.0, 1.5).is_err());
        assert!(f1_eval(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn f2_ramp_points() {
        let mu = 0.7;
        assert_eq!(f2_eval(mu + 2.0, mu, 2.0).unwrap(), 0.5);
        assert_abs_diff_eq!(f2_eval(mu - 2.0, mu, 2.0).unwrap(), 0.5, epsilon = 1e-15);
        assert_eq!(f2_eval(mu, mu, 2.0).unwrap(), 0.0);
        assert_abs_diff_eq!(f2_eval(mu + 1.25, mu, 1.0).unwrap(), 0.75, epsilon = 1e-15);
        assert!(f2_eval(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn f3_ramp_points() {
        assert_eq!(f3_eval(1.0, 1.0, 4.0).unwrap(), 0.5);
        assert_eq!(f3_eval(1.25, 1.0, 4.0).unwrap(), 1.0);
        assert_eq!(f3_eval(0.5, 1.0, 2.0).unwrap(), 0.0);
        assert_eq!(f3_eval(0.75, 1.0, 2.0).unwrap(), 0.25);
        assert!(f3_eval(0.0, 1.0, 0.0).is_err());
        assert!(f3_eval(0.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn smoothed_markov_exponential() {
        let e = Distribution::exponential(1.0).unwrap();
        let s = smoothed_markov(&e, 1.0).unwrap();
        assert_eq!(s.value, 0.5);
        assert!(s.smoothing_free);
        assert_eq!(s.window, Some(SmoothingWindow { half_width: 1.0 }));
        assert_abs_diff_eq!(
            s.exact_smoothed_tail.unwrap(),
            0.5 - 0.5 * (-2f64).exp(),
            epsilon = 1e-10
        );
    }

    #[test]
    fn smoothed_markov_two_point() {
        let w = Distribution::two_point(1.0, 0.5).unwrap();
        let s = smoothed_markov(&w, 1.0).unwrap();
        assert_eq!(s.value, 0.25);
        assert_eq!(s.exact_smoothed_tail, Some(0.25));
        assert!(!s.smoothing_free);
        assert!(s
            .certificate
            .as_ref()
            .unwrap()
            .reason
            .as_ref()
            .unwrap()
            .contains("not continuous"));
    }

    #[test]
    fn smaller_window_uses_dominance_line() {
        let e = Distribution::exponential(1.0).unwrap();
        let s = smoothed_markov_with_window(&e, 2.0, SmoothingWindow::new(0.5).unwrap()).unwrap();
        assert_relative_eq!(s.raw_value, 1.0 / 2.5, max_relative = 1e-15);
        assert!(smoothed_markov_with_window(&e, 2.0, SmoothingWindow::new(3.0).unwrap()).is_err());
    }

    #[test]
    fn smoothed_chebyshev_normal() {
        let s = smoothed_chebyshev(&normal(), 1.0).unwrap();
        assert_eq!(s.value, 0.5);
        assert!(s.smoothing_free);
        assert_eq!(s.window.unwrap().half_width, 0.5);
        let pm = Distribution::point_mass(3.0).unwrap();
        let s = smoothed_chebyshev(&pm, 1.0).unwrap();
        assert_eq!(s.value, 0.0);
        assert_eq!(s.exact_smoothed_tail, Some(0.0));
    }

    #[test]
    fn smoothed_chernoff_normal() {
        let s = smoothed_chernoff(&normal(), 1.0, 1.0, Side::Upper).unwrap();
        assert_relative_eq!(s.value, 0.5 * (-0.5f64).exp(), max_relative = 1e-15);
        assert!(s.smoothing_free);
        assert!(smoothed_chernoff(&normal(), 1.0, 0.0, Side::Upper).is_err());
        assert!(smoothed_chernoff(&normal(), 1.0, 1.0, Side::Lower).is_err());
        let lower = smoothed_chernoff(&normal(), -1.0, -1.0, Side::Lower).unwrap();
        assert!(!lower.smoothing_free);
        // Symmetry of N(0,1): lower smoothed tail at -1 mirrors the upper one at 1.
        assert_abs_diff_eq!(
            lower.exact_smoothed_tail.unwrap(),
            s.exact_smoothed_tail.unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn smoothed_chernoff_witness() {
        let w = Distribution::two_point(1.0, 0.25).unwrap();
        let s = smoothed_chernoff(&w, 1.0, 10.0, Side::Upper).unwrap();
        assert_relative_eq!(s.value, 0.5 * (0.25 + 0.75 * (-10f64).exp()), max_relative = 1e-14);
    }

    #[test]
    fn drop_u_certificates() {
        let e = Distribution::exponential(1.0).unwrap();
        assert!(smoothing_free_applicable(&e, 1.0, DropKind::Markov).applicable);
        assert!(smoothing_free_applicable(&normal(), 1.0, DropKind::Chebyshev).applicable);
        let w = Distribution::two_point(2.0, 0.3).unwrap();
        assert!(!smoothing_free_applicable(&w, 2.0, DropKind::Markov).applicable);

        // Gamma(2,1) rises on [0, 1]: Markov check fails, naming the interval.
        let g = Distribution::gamma(2.0, 1.0).unwrap();
        let cert = smoothing_free_applicable(&g, 1.0, DropKind::Markov);
        assert!(!cert.applicable);
        assert_eq!(cert.reason.as_deref(), Some("density not nonincreasing on [0, inf]"));
        // ...but the Chernoff window [2, 4] lies right of its mode.
        let chern = DropKind::Chernoff {
            t: 1.0,
            side: Side::Upper,
        };
        assert!(smoothing_free_applicable(&g, 3.0, chern).applicable);
        assert!(!smoothing_free_applicable(&g, 1.0, chern).applicable);
        // Normal Chernoff window must lie right of the mean.
        assert!(!smoothing_free_applicable(&normal(), 0.5, chern).applicable);
        assert!(smoothing_free_applicable(&normal(), 1.0, chern).applicable);
        // Normal fails Markov on sign grounds.
        assert!(!smoothing_free_applicable(&normal(), 1.0, DropKind::Markov).applicable);
    }

    #[test]
    fn gauss_examples() {
        assert_relative_eq!(
            gauss_bound(&normal(), 2.0).unwrap().value,
            1.0 / 9.0,
            max_relative = 1e-15
        );
        assert!(matches!(gauss_bound(&normal(), 1.0), Err(Error::Applicability(_))));
        let u = Distribution::uniform(-1.0, 1.0).unwrap();
        assert_relative_eq!(
            gauss_bound(&u, 1.2).unwrap().value,
            4.0 / 9.0 * (1.0 / 3.0) / 1.44,
            max_relative = 1e-15
        );
        let shifted = Distribution::normal(1.0, 1.0).unwrap();
        assert!(matches!(gauss_bound(&shifted, 3.0), Err(Error::Precondition(_))));
        let w = Distribution::three_point(1.0, 0.4).unwrap();
        assert!(matches!(gauss_bound(&w, 3.0), Err(Error::Precondition(_))));
    }
}
