//! Globally adaptive Gauss–Kronrod (7/15) integration.
//!
//! The interval with the largest error estimate is bisected until the summed
//! estimate meets the tolerance. Infinite endpoints are handled by the usual
//! rational substitutions, so callers may pass `f64::INFINITY` directly.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
    pub subintervals: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct Integrator {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subintervals: usize,
}

impl Default for Integrator {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-12,
            max_subintervals: 500,
        }
    }
}

struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Segment {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let f_center = f(center);
    let mut kron = f_center * WGK[7];
    let mut gauss = f_center * WG[3];
    let mut res_abs = kron.abs();
    let mut fv = [(0.0, 0.0); 7];
    for (j, node) in XGK.iter().take(7).enumerate() {
        let dx = half * node;
        let (f1, f2) = (f(center - dx), f(center + dx));
        fv[j] = (f1, f2);
        kron += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kron;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for (j, (f1, f2)) in fv.iter().enumerate() {
        res_asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let value = kron * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut error = ((kron - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Segment { lo, hi, value, error }
}

impl Integrator {
    pub fn with_abs_tol(abs_tol: f64) -> Self {
        Self {
            abs_tol,
            ..Self::default()
        }
    }

    /// Integrates `f` over `[lo, hi]`; either endpoint may be infinite.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, lo: f64, hi: f64) -> Integral {
        if lo == hi {
            return Integral {
                value: 0.0,
                abs_error: 0.0,
                subintervals: 0,
                converged: true,
            };
        }
        if lo > hi {
            let mut r = self.integrate(f, hi, lo);
            r.value = -r.value;
            return r;
        }
        match (lo.is_finite(), hi.is_finite()) {
            (true, true) => self.finite(&f, lo, hi),
            // x = lo + s / (1 - s), s in [0, 1)
            (true, false) => self.finite(
                &|s: f64| {
                    let d = 1.0 - s;
                    f(lo + s / d) / (d * d)
                },
                0.0,
                1.0,
            ),
            // x = hi - s / (1 - s)
            (false, true) => self.finite(
                &|s: f64| {
                    let d = 1.0 - s;
                    f(hi - s / d) / (d * d)
                },
                0.0,
                1.0,
            ),
            // x = s / (1 - s^2), s in (-1, 1)
            (false, false) => self.finite(
                &|s: f64| {
                    let d = 1.0 - s * s;
                    f(s / d) * (1.0 + s * s) / (d * d)
                },
                -1.0,
                1.0,
            ),
        }
    }

    fn finite<F: Fn(f64) -> f64>(&self, f: &F, lo: f64, hi: f64) -> Integral {
        let first = kronrod(f, lo, hi);
        let mut value = first.value;
        let mut error = first.error;
        let mut heap = BinaryHeap::new();
        heap.push(first);
        while error > self.abs_tol.max(self.rel_tol * value.abs()) {
            if heap.len() >= self.max_subintervals {
                return Integral {
                    value,
                    abs_error: error,
                    subintervals: heap.len(),
                    converged: false,
                };
            }
            let worst = heap.pop().expect("heap is never empty");
            let mid = 0.5 * (worst.lo + worst.hi);
            if mid <= worst.lo || mid >= worst.hi {
                // Interval collapsed to adjacent floats.
                heap.push(worst);
                return Integral {
                    value,
                    abs_error: error,
                    subintervals: heap.len(),
                    converged: false,
                };
            }
            let left = kronrod(f, worst.lo, mid);
            let right = kronrod(f, mid, worst.hi);
            value += left.value + right.value - worst.value;
            error += left.error + right.error - worst.error;
            heap.push(left);
            heap.push(right);
        }
        // Re-sum to shed the drift of the running updates.
        let value = heap.iter().map(|s| s.value).sum();
        let abs_error = heap.iter().map(|s| s.error).sum();
        Integral {
            value,
            abs_error,
            subintervals: heap.len(),
            converged: true,
        }
    }
}

/// Integral of `f` over `[lo, hi]` with the default tolerances.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> f64 {
    Integrator::default().integrate(f, lo, hi).value
}
