//! One-dimensional minimization of convex functions.

/// 1/φ, the fraction of the bracket kept at each golden-section step.
const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldenSection {
    /// Final bracket width target.
    pub x_tol: f64,
    pub max_iter: usize,
}

impl Default for GoldenSection {
    fn default() -> Self {
        Self {
            x_tol: 1e-10,
            max_iter: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub fx: f64,
    /// Final bracket `[lo, hi]` containing the minimizer.
    pub lo: f64,
    pub hi: f64,
    pub iterations: usize,
}

impl GoldenSection {
    /// Minimizes a unimodal `f` on `[lo, hi]`.
    ///
    /// Stops when the bracket is narrower than `x_tol` or when the two interior
    /// probes coincide in floating point.
    pub fn minimize<F: Fn(f64) -> f64>(&self, f: F, lo: f64, hi: f64) -> Minimum {
        let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let mut c = b - INV_PHI * (b - a);
        let mut d = a + INV_PHI * (b - a);
        let mut fc = f(c);
        let mut fd = f(d);
        let mut iterations = 0;
        while b - a > self.x_tol && iterations < self.max_iter && c < d {
            if fc <= fd {
                b = d;
                d = c;
                fd = fc;
                c = b - INV_PHI * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + INV_PHI * (b - a);
                fd = f(d);
            }
            iterations += 1;
        }
        // The endpoints are candidates too: the minimum of a monotone f sits there.
        let mut best = if fc <= fd { (c, fc) } else { (d, fd) };
        for x in [a, b] {
            let fx = f(x);
            if fx < best.1 {
                best = (x, fx);
            }
        }
        Minimum {
            x: best.0,
            fx: best.1,
            lo: a,
            hi: b,
            iterations,
        }
    }
}

/// Outcome of [`bracket_from_origin`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub hi: f64,
    /// `true` when expansion stopped at `limit` with `f` still decreasing.
    pub hit_limit: bool,
}

/// Finds `hi > 0` such that a convex `f` on `[0, ∞)` has its minimizer in
/// `[0, hi]`, doubling from `start` until `f(hi) > f(hi / 2)`. Ties keep
/// expanding so that numerically flat tails run out to `limit`.
pub fn bracket_from_origin<F: Fn(f64) -> f64>(f: F, start: f64, limit: f64) -> Bracket {
    let mut hi = start.min(limit);
    let mut prev = f(0.5 * hi);
    loop {
        let cur = f(hi);
        if cur > prev || cur.is_nan() {
            return Bracket { hi, hit_limit: false };
        }
        if hi >= limit {
            return Bracket {
                hi: limit,
                hit_limit: true,
            };
        }
        prev = cur;
        hi = (2.0 * hi).min(limit);
        if hi == limit {
            prev = f(0.5 * hi);
        }
    }
}

/// Smallest second difference of `f` sampled at `points` evenly spaced nodes
/// over `[lo, hi]`, normalized by the squared spacing. Nonnegative values
/// certify convexity on the grid.
pub fn min_second_difference<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, points: usize) -> f64 {
    assert!(points >= 3, "need at least three grid points");
    let h = (hi - lo) / (points - 1) as f64;
    let ys: Vec<f64> = (0..points).map(|i| f(lo + h * i as f64)).collect();
    ys.windows(3)
        .map(|w| (w[0] - 2.0 * w[1] + w[2]) / (h * h))
        .fold(f64::INFINITY, f64::min)
}
