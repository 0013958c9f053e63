//! Classical Markov, Chebyshev and Chernoff bounds, the Chernoff exponent
//! search and its i.i.d. sample-average composition.

use std::fmt;

use serde::Serialize;

use crate::distribution::Distribution;
use crate::error::{domain, precondition, Result};
use crate::optimize::{bracket_from_origin, min_second_difference, GoldenSection};
use crate::smoothing::{Certificate, SmoothingWindow};

/// Tail a Chernoff bound controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// `P(X >= a)`, exponent `t >= 0`.
    Upper,
    /// `P(X <= a)`, exponent `t <= 0`.
    Lower,
}

impl Side {
    fn sign(self) -> f64 {
        match self {
            Side::Upper => 1.0,
            Side::Lower => -1.0,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Upper => "upper",
            Side::Lower => "lower",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Markov,
    Chebyshev,
    ChernoffUpper,
    ChernoffLower,
    IidChernoff,
    Gauss,
    SmoothedMarkov,
    SmoothedChebyshev,
    SmoothedChernoffUpper,
    SmoothedChernoffLower,
}

impl Method {
    pub fn is_chernoff(self) -> bool {
        matches!(
            self,
            Method::ChernoffUpper
                | Method::ChernoffLower
                | Method::IidChernoff
                | Method::SmoothedChernoffUpper
                | Method::SmoothedChernoffLower
        )
    }

    pub fn is_smoothed(self) -> bool {
        matches!(
            self,
            Method::SmoothedMarkov
                | Method::SmoothedChebyshev
                | Method::SmoothedChernoffUpper
                | Method::SmoothedChernoffLower
        )
    }

    pub fn label(self) -> &'static str {
        match self {
            Method::Markov => "markov",
            Method::Chebyshev => "chebyshev",
            Method::ChernoffUpper => "chernoff-upper",
            Method::ChernoffLower => "chernoff-lower",
            Method::IidChernoff => "iid-chernoff",
            Method::Gauss => "gauss",
            Method::SmoothedMarkov => "smoothed-markov",
            Method::SmoothedChebyshev => "smoothed-chebyshev",
            Method::SmoothedChernoffUpper => "smoothed-chernoff-upper",
            Method::SmoothedChernoffLower => "smoothed-chernoff-lower",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A computed probability bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundResult {
    /// `min(1, raw_value)`.
    pub value: f64,
    pub raw_value: f64,
    pub method: Method,
    pub t_used: Option<f64>,
    pub window: Option<SmoothingWindow>,
    /// Whether the bound holds for `X` itself, with no auxiliary noise added.
    pub smoothing_free: bool,
    pub certificate: Option<Certificate>,
    /// Set when the exponent search stopped at the edge of its admissible range.
    pub boundary_limited: bool,
}

impl BoundResult {
    pub(crate) fn new(method: Method, raw_value: f64) -> Self {
        Self {
            value: raw_value.min(1.0),
            raw_value,
            method,
            t_used: None,
            window: None,
            smoothing_free: true,
            certificate: None,
            boundary_limited: false,
        }
    }

    pub(crate) fn with_t(mut self, t: f64) -> Self {
        self.t_used = Some(t);
        self
    }
}

fn positive_threshold(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("threshold a must be positive and finite, got {a}")))
    }
}

/// `P(X >= a) <= E[X] / a` for nonnegative `X`.
pub fn markov_bound(dist: &Distribution, a: f64) -> Result<BoundResult> {
    positive_threshold(a)?;
    if !dist.shape().nonnegative {
        return Err(precondition(format!(
            "{dist} is not nonnegative; Markov needs support in [0, inf)"
        )));
    }
    Ok(BoundResult::new(Method::Markov, dist.mean() / a))
}

/// `P(|X - mean| >= a) <= Var(X) / a^2`.
pub fn chebyshev_bound(dist: &Distribution, a: f64) -> Result<BoundResult> {
    positive_threshold(a)?;
    let var = dist
        .variance()
        .ok_or_else(|| precondition(format!("{dist} has no finite variance")))?;
    Ok(BoundResult::new(Method::Chebyshev, var / (a * a)))
}

pub(crate) fn check_side(t: f64, side: Side) -> Result<()> {
    match side {
        Side::Upper if t < 0.0 => Err(domain(format!("upper-tail Chernoff needs t >= 0, got {t}"))),
        Side::Lower if t > 0.0 => Err(domain(format!("lower-tail Chernoff needs t <= 0, got {t}"))),
        _ if t.is_nan() => Err(domain("t is NaN")),
        _ => Ok(()),
    }
}

/// `M_X(t) exp(-t a)`, bounding `P(X >= a)` for `t >= 0` or `P(X <= a)` for `t <= 0`.
pub fn chernoff_bound(dist: &Distribution, a: f64, t: f64, side: Side) -> Result<BoundResult> {
    check_side(t, side)?;
    if a.is_nan() {
        return Err(domain("threshold is NaN"));
    }
    let raw = dist.ln_mgf_shifted(t, a)?.exp();
    let method = match side {
        Side::Upper => Method::ChernoffUpper,
        Side::Lower => Method::ChernoffLower,
    };
    Ok(BoundResult::new(method, raw).with_t(t))
}

/// Best Chernoff bound over all admissible exponents.
///
/// Works with `s = |t|` and the convex exponent `g(s) = ln M(±s) ∓ s a`. The
/// minimizer is bracketed by doubling from `s = 1`, located by golden-section
/// search, then pinned to `1e-10` by bisecting on the sign of `g'`.
pub fn optimize_chernoff(dist: &Distribution, a: f64, side: Side) -> Result<BoundResult> {
    if !a.is_finite() {
        return Err(domain(format!("threshold a must be finite, got {a}")));
    }
    let search = ExponentSearch::new(dist, a, side)?;
    let (s, boundary) = search.minimize();
    let t = side.sign() * s;
    let mut result = chernoff_bound(dist, a, t, side)?;
    result.boundary_limited = boundary;
    Ok(result)
}

/// Largest `|t|` tried before declaring the exponent unbounded below.
const S_CAP: f64 = 1e4;
const DOMAIN_MARGIN: f64 = 1e-9;
const POLISH_TOL: f64 = 1e-10;

/// The one-sided Chernoff exponent as a function of `s = |t| >= 0`.
pub struct ExponentSearch<'a> {
    dist: &'a Distribution,
    a: f64,
    sign: f64,
    s_max: f64,
}

impl<'a> ExponentSearch<'a> {
    pub fn new(dist: &'a Distribution, a: f64, side: Side) -> Result<Self> {
        let sign = side.sign();
        let dom = dist.mgf_domain();
        let edge = if sign > 0.0 { dom.hi } else { -dom.lo };
        if edge <= 0.0 {
            return Err(precondition(format!(
                "MGF domain {dom} of {dist} has no interior on the {side} side"
            )));
        }
        let s_max = if edge.is_finite() {
            (edge - DOMAIN_MARGIN).max(0.5 * edge)
        } else {
            S_CAP
        }
        .min(S_CAP);
        Ok(Self { dist, a, sign, s_max })
    }

    /// `ln M(±s) ∓ s a`.
    pub fn exponent(&self, s: f64) -> f64 {
        let t = self.sign * s;
        self.dist.ln_mgf_shifted(t, self.a).unwrap_or(f64::INFINITY)
    }

    fn slope(&self, s: f64) -> f64 {
        let t = self.sign * s;
        self.dist
            .ln_mgf_derivative(t)
            .map(|d| self.sign * (d - self.a))
            .unwrap_or(f64::INFINITY)
    }

    /// Upper end of the search bracket and whether it hit the admissible limit.
    pub fn bracket(&self) -> (f64, bool) {
        let b = bracket_from_origin(|s| self.exponent(s), 1.0, self.s_max);
        (b.hi, b.hit_limit)
    }

    /// Smallest normalized second difference of the exponent on `points`
    /// nodes over the bracket; nonnegative certifies convexity there.
    pub fn convexity_certificate(&self, points: usize) -> f64 {
        let (hi, _) = self.bracket();
        min_second_difference(|s| self.exponent(s), 0.0, hi, points)
    }

    /// Returns the minimizing `s` and whether it sits on the admissible limit.
    pub fn minimize(&self) -> (f64, bool) {
        if self.slope(0.0) >= 0.0 {
            return (0.0, false);
        }
        let (hi, hit_limit) = self.bracket();
        if hit_limit && self.slope(hi) <= 0.0 {
            return (hi, true);
        }
        let coarse = GoldenSection::default().minimize(|s| self.exponent(s), 0.0, hi);
        (self.polish(coarse.x, hi), false)
    }

    /// Bisection on the sign of the slope around the golden-section estimate.
    fn polish(&self, guess: f64, hi: f64) -> f64 {
        let mut step = 1e-8 * guess.max(1.0);
        let (mut lo, mut up);
        if self.slope(guess) < 0.0 {
            lo = guess;
            up = (guess + step).min(hi);
            while self.slope(up) < 0.0 && up < hi {
                lo = up;
                step *= 2.0;
                up = (up + step).min(hi);
            }
        } else {
            up = guess;
            lo = (guess - step).max(0.0);
            while lo > 0.0 && self.slope(lo) >= 0.0 {
                up = lo;
                step *= 2.0;
                lo = (lo - step).max(0.0);
            }
        }
        while up - lo > POLISH_TOL * up.max(1.0) {
            let mid = 0.5 * (lo + up);
            if mid <= lo || mid >= up {
                break;
            }
            if self.slope(mid) < 0.0 {
                lo = mid;
            } else {
                up = mid;
            }
        }
        0.5 * (lo + up)
    }
}

/// `[M(t) exp(-t a)]^n`, bounding `P((Y_1 + ... + Y_n)/n >= a)` for i.i.d. `Y_i`.
pub fn iid_chernoff(dist: &Distribution, n: u64, a: f64, t: f64) -> Result<BoundResult> {
    if n == 0 {
        return Err(domain("sample size n must be at least 1"));
    }
    check_side(t, Side::Upper)?;
    if a.is_nan() {
        return Err(domain("threshold is NaN"));
    }
    let raw = (n as f64 * dist.ln_mgf_shifted(t, a)?).exp();
    Ok(BoundResult::new(Method::IidChernoff, raw).with_t(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn normal() -> Distribution {
        Distribution::normal(0.0, 1.0).unwrap()
    }

    #[test]
    fn markov_examples() {
        let e = Distribution::exponential(1.0).unwrap();
        assert_eq!(markov_bound(&e, 1.0).unwrap().value, 1.0);
        assert_eq!(
            markov_bound(&Distribution::point_mass(0.0).unwrap(), 1.0)
                .unwrap()
                .value,
            0.0
        );
        let w = Distribution::two_point(2.0, 0.3).unwrap();
        assert_abs_diff_eq!(markov_bound(&w, 2.0).unwrap().value, 0.3, epsilon = 1e-15);
    }

    #[test]
    fn markov_errors() {
        let e = Distribution::exponential(1.0).unwrap();
        assert!(matches!(markov_bound(&e, 0.0), Err(crate::Error::Domain(_))));
        assert!(matches!(markov_bound(&e, -1.0), Err(crate::Error::Domain(_))));
        assert!(matches!(
            markov_bound(&normal(), 1.0),
            Err(crate::Error::Precondition(_))
        ));
    }

    #[test]
    fn clamping_keeps_raw_value() {
        let e = Distribution::exponential(1.0).unwrap();
        let b = markov_bound(&e, 0.25).unwrap();
        assert_eq!(b.raw_value, 4.0);
        assert_eq!(b.value, 1.0);
        assert!(b.t_used.is_none());
    }

    #[test]
    fn chebyshev_examples() {
        assert_eq!(chebyshev_bound(&normal(), 1.0).unwrap().value, 1.0);
        let w = Distribution::three_point(1.0, 0.4).unwrap();
        assert_abs_diff_eq!(chebyshev_bound(&w, 1.0).unwrap().value, 0.4, epsilon = 1e-15);
        let pm = Distribution::point_mass(7.0).unwrap();
        assert_eq!(chebyshev_bound(&pm, 0.5).unwrap().value, 0.0);
        assert!(chebyshev_bound(&normal(), 0.0).is_err());
    }

    #[test]
    fn chernoff_examples() {
        let b = chernoff_bound(&normal(), 1.0, 1.0, Side::Upper).unwrap();
        assert_relative_eq!(b.value, (-0.5f64).exp(), max_relative = 1e-15);
        assert_eq!(b.t_used, Some(1.0));
        assert_eq!(chernoff_bound(&normal(), 3.7, 0.0, Side::Upper).unwrap().raw_value, 1.0);
        let w = Distribution::two_point(1.0, 0.25).unwrap();
        let b = chernoff_bound(&w, 1.0, 10.0, Side::Upper).unwrap();
        assert_relative_eq!(b.value, 0.25 + 0.75 * (-10f64).exp(), max_relative = 1e-14);
    }

    #[test]
    fn chernoff_errors() {
        assert!(chernoff_bound(&normal(), 1.0, -1.0, Side::Upper).is_err());
        assert!(chernoff_bound(&normal(), 1.0, 1.0, Side::Lower).is_err());
        let e = Distribution::exponential(1.0).unwrap();
        assert!(chernoff_bound(&e, 1.0, 1.0, Side::Upper).is_err());
    }

    #[test]
    fn optimizer_normal() {
        let b = optimize_chernoff(&normal(), 1.0, Side::Upper).unwrap();
        assert!((b.t_used.unwrap() - 1.0).abs() < 1e-9, "{b:?}");
        assert_relative_eq!(b.value, (-0.5f64).exp(), max_relative = 1e-12);
        let b = optimize_chernoff(&normal(), 0.0, Side::Upper).unwrap();
        assert_eq!(b.t_used, Some(0.0));
        assert_eq!(b.value, 1.0);
    }

    #[test]
    fn optimizer_lower_side_mirrors_upper() {
        let b = optimize_chernoff(&normal(), -1.5, Side::Lower).unwrap();
        assert!((b.t_used.unwrap() + 1.5).abs() < 1e-9);
        assert_relative_eq!(b.value, (-1.125f64).exp(), max_relative = 1e-12);
    }

    #[test]
    fn optimizer_flags_unbounded_exponent() {
        // Exponent decreases toward ln(p) as t grows without bound.
        let w = Distribution::two_point(1.0, 0.25).unwrap();
        let b = optimize_chernoff(&w, 1.0, Side::Upper).unwrap();
        assert!(b.boundary_limited);
        assert_abs_diff_eq!(b.value, 0.25, epsilon = 1e-12);
    }

    #[test]
    fn optimizer_respects_open_domain() {
        // a well above the mean pushes t* toward the rate.
        let e = Distribution::exponential(1.0).unwrap();
        let b = optimize_chernoff(&e, 50.0, Side::Upper).unwrap();
        let t = b.t_used.unwrap();
        assert!(t < 1.0 && (t - 0.98).abs() < 1e-8, "{t}");
        assert!(!b.boundary_limited);
    }

    #[test]
    fn iid_examples() {
        let b = iid_chernoff(&normal(), 4, 1.0, 1.0).unwrap();
        assert_relative_eq!(b.value, (-2f64).exp(), max_relative = 1e-14);
        let single = chernoff_bound(&normal(), 0.7, 0.3, Side::Upper).unwrap();
        assert_eq!(
            iid_chernoff(&normal(), 1, 0.7, 0.3).unwrap().raw_value,
            single.raw_value
        );
        assert!(iid_chernoff(&normal(), 0, 1.0, 1.0).is_err());
        assert!(iid_chernoff(&normal(), 3, 1.0, -1.0).is_err());
    }
}
