//! Independent reference computations. Nothing here calls into the library's
//! quadrature, optimizer or special functions.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Composite Simpson rule with `n` (rounded up to even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (hi - lo) / n as f64;
    let mut acc = f(lo) + f(hi);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(lo + h * i as f64);
    }
    acc * h / 3.0
}

/// Simpson over consecutive breakpoints, so kinks never fall inside a panel.
pub fn simpson_pieces<F: Fn(f64) -> f64>(f: F, breaks: &[f64], n_each: usize) -> f64 {
    breaks.windows(2).map(|w| simpson(&f, w[0], w[1], n_each)).sum()
}

/// CDF of `Unif[-c, c]`.
pub fn uniform_cdf(u: f64, c: f64) -> f64 {
    ((u + c) / (2.0 * c)).clamp(0.0, 1.0)
}

/// `P(x + U >= a)` from the uniform CDF.
pub fn ramp_oracle(x: f64, a: f64, c: f64) -> f64 {
    1.0 - uniform_cdf(a - x, c)
}

/// `P(|x - mu + U| >= a)` for `U ~ Unif[-a/2, a/2]`.
pub fn two_sided_ramp_oracle(x: f64, mu: f64, a: f64) -> f64 {
    let c = 0.5 * a;
    let d = x - mu;
    // P(d + U >= a) + P(d + U <= -a)
    (1.0 - uniform_cdf(a - d, c)) + uniform_cdf(-a - d, c)
}

pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Arg-min of `f` over the grid `lo, lo + step, ..., <= hi`.
pub fn grid_argmin<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, step: f64) -> (f64, f64) {
    let n = ((hi - lo) / step).round() as usize;
    (0..=n)
        .map(|i| lo + step * i as f64)
        .map(|x| (x, f(x)))
        .fold(
            (f64::NAN, f64::INFINITY),
            |best, cur| if cur.1 < best.1 { cur } else { best },
        )
}

/// Relative comparison that treats exact zeros sensibly.
pub fn rel_close(x: f64, y: f64, tol: f64) -> bool {
    x == y || (x - y).abs() <= tol * x.abs().max(y.abs())
}
