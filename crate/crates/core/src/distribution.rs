//! Probability laws with the analytic surface the tail bounds consume:
//! moments, moment generating function, distribution function, density,
//! support, a sampler, and declared density-shape facts.

use std::fmt;

use libm::erfc;
use rand_distr::{Distribution as _, Exp, Gamma, StandardNormal};
use serde::{Serialize, Serializer};
use statrs::function::gamma;

use crate::error::{domain, Error, Result};
use crate::rng::CounterRng;

/// Relative slack for deciding whether an atom sits on a computed endpoint
/// such as `mean ± a`.
const ATOM_TOL: f64 = 1e-12;
const SHAPE_GRID: usize = 1024;
const SHAPE_TOL: f64 = 1e-12;

/// A closed real interval; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const REAL_LINE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interior(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }

    pub fn covers(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = |x: f64| {
            if x == f64::INFINITY {
                "inf".to_string()
            } else if x == f64::NEG_INFINITY {
                "-inf".to_string()
            } else {
                format!("{x}")
            }
        };
        write!(f, "[{}, {}]", end(self.lo), end(self.hi))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Atom {
    pub x: f64,
    pub p: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    PointMass {
        at: f64,
    },
    /// Mass `p` at `a`, the rest at 0.
    TwoPoint {
        a: f64,
        p: f64,
    },
    /// Mass `p/2` at `±a`, the rest at 0.
    ThreePoint {
        a: f64,
        p: f64,
    },
    Uniform {
        lo: f64,
        hi: f64,
    },
    Exponential {
        rate: f64,
    },
    Normal {
        mean: f64,
        sd: f64,
    },
    Gamma {
        shape: f64,
        rate: f64,
    },
    Discrete {
        atoms: Vec<Atom>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Support {
    Interval(Interval),
    Atoms(Vec<f64>),
}

/// Which side of the distribution a tail probability measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailKind {
    /// `P(X >= a)`
    Upper,
    /// `P(X <= a)`
    Lower,
    /// `P(|X - mean| >= a)`
    TwoSided,
}

impl fmt::Display for TailKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TailKind::Upper => "upper",
            TailKind::Lower => "lower",
            TailKind::TwoSided => "two-sided",
        })
    }
}

/// Density shape, declared per family and cross-checked on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeFacts {
    pub continuous: bool,
    pub nonnegative: bool,
    /// Largest interval on which the density is weakly nonincreasing.
    pub density_nonincreasing_on: Option<Interval>,
    /// Largest interval on which the density is weakly nondecreasing.
    pub density_nondecreasing_on: Option<Interval>,
    pub unimodal_mode: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Continuous {
    Uniform { lo: f64, hi: f64 },
    Exponential { rate: f64 },
    Normal { mean: f64, sd: f64 },
    Gamma { shape: f64, rate: f64 },
}

#[derive(Debug, Clone, PartialEq)]
enum Law {
    Continuous(Continuous),
    /// Sorted by location, strictly positive masses, no duplicates.
    Discrete(Vec<Atom>),
}

/// An immutable probability law.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    family: Family,
    law: Law,
    mean: f64,
    variance: Option<f64>,
    second_moment: Option<f64>,
    mgf_domain: Interval,
    support: Support,
    shape: ShapeFacts,
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("{name} must be positive and finite, got {v}")))
    }
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be finite, got {v}")))
    }
}

fn probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(domain(format!("{name} must lie in [0, 1], got {p}")))
    }
}

fn normalize_atoms(mut atoms: Vec<Atom>) -> Result<Vec<Atom>> {
    if atoms.is_empty() {
        return Err(domain("discrete law needs at least one atom"));
    }
    for a in &atoms {
        finite("atom location", a.x)?;
        probability("atom probability", a.p)?;
    }
    let total: f64 = atoms.iter().map(|a| a.p).sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(domain(format!("atom probabilities sum to {total}, not 1")));
    }
    atoms.sort_by(|l, r| l.x.total_cmp(&r.x));
    let mut merged: Vec<Atom> = Vec::with_capacity(atoms.len());
    for a in atoms {
        match merged.last_mut() {
            Some(last) if last.x == a.x => last.p += a.p,
            _ => merged.push(a),
        }
    }
    merged.retain(|a| a.p > 0.0);
    Ok(merged)
}

impl Distribution {
    pub fn point_mass(at: f64) -> Result<Self> {
        finite("location", at)?;
        Self::build(Family::PointMass { at })
    }

    pub fn two_point(a: f64, p: f64) -> Result<Self> {
        finite("a", a)?;
        probability("p", p)?;
        Self::build(Family::TwoPoint { a, p })
    }

    pub fn three_point(a: f64, p: f64) -> Result<Self> {
        finite("a", a)?;
        probability("p", p)?;
        Self::build(Family::ThreePoint { a, p })
    }

    pub fn uniform(lo: f64, hi: f64) -> Result<Self> {
        finite("lo", lo)?;
        finite("hi", hi)?;
        if lo >= hi {
            return Err(domain(format!("uniform needs lo < hi, got [{lo}, {hi}]")));
        }
        Self::build(Family::Uniform { lo, hi })
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        positive("rate", rate)?;
        Self::build(Family::Exponential { rate })
    }

    pub fn normal(mean: f64, sd: f64) -> Result<Self> {
        finite("mean", mean)?;
        positive("sd", sd)?;
        Self::build(Family::Normal { mean, sd })
    }

    pub fn gamma(shape: f64, rate: f64) -> Result<Self> {
        positive("shape", shape)?;
        positive("rate", rate)?;
        Self::build(Family::Gamma { shape, rate })
    }

    pub fn discrete(atoms: Vec<Atom>) -> Result<Self> {
        Self::build(Family::Discrete { atoms })
    }

    fn build(family: Family) -> Result<Self> {
        let law = match &family {
            Family::PointMass { at } => Law::Discrete(vec![Atom { x: *at, p: 1.0 }]),
            Family::TwoPoint { a, p } => Law::Discrete(normalize_atoms(vec![
                Atom { x: 0.0, p: 1.0 - p },
                Atom { x: *a, p: *p },
            ])?),
            Family::ThreePoint { a, p } => Law::Discrete(normalize_atoms(vec![
                Atom { x: -a, p: p / 2.0 },
                Atom { x: 0.0, p: 1.0 - p },
                Atom { x: *a, p: p / 2.0 },
            ])?),
            Family::Discrete { atoms } => Law::Discrete(normalize_atoms(atoms.clone())?),
            Family::Uniform { lo, hi } => Law::Continuous(Continuous::Uniform { lo: *lo, hi: *hi }),
            Family::Exponential { rate } => Law::Continuous(Continuous::Exponential { rate: *rate }),
            Family::Normal { mean, sd } => Law::Continuous(Continuous::Normal { mean: *mean, sd: *sd }),
            Family::Gamma { shape, rate } => Law::Continuous(Continuous::Gamma {
                shape: *shape,
                rate: *rate,
            }),
        };

        let (mean, variance, mgf_domain, support, shape) = match &law {
            Law::Discrete(atoms) => {
                let mean: f64 = atoms.iter().map(|a| a.x * a.p).sum();
                let var: f64 = atoms.iter().map(|a| a.p * (a.x - mean).powi(2)).sum();
                let shape = ShapeFacts {
                    continuous: false,
                    nonnegative: atoms.iter().all(|a| a.x >= 0.0),
                    density_nonincreasing_on: None,
                    density_nondecreasing_on: None,
                    unimodal_mode: None,
                };
                (
                    mean,
                    var,
                    Interval::REAL_LINE,
                    Support::Atoms(atoms.iter().map(|a| a.x).collect()),
                    shape,
                )
            }
            Law::Continuous(c) => c.summary(),
        };

        let dist = Self {
            family,
            law,
            mean,
            variance: Some(variance),
            second_moment: Some(variance + mean * mean),
            mgf_domain,
            support,
            shape,
        };
        dist.check_shape()?;
        Ok(dist)
    }

    /// Samples the density on a grid over each declared monotone interval.
    fn check_shape(&self) -> Result<()> {
        let sd = self.variance.unwrap_or(1.0).sqrt().max(1e-300);
        let window = Interval::new(self.mean - 40.0 * sd, self.mean + 40.0 * sd);
        let clip = |iv: Interval| Interval::new(iv.lo.max(window.lo), iv.hi.min(window.hi));
        let checks = [
            (self.shape.density_nonincreasing_on, -1.0, "nonincreasing"),
            (self.shape.density_nondecreasing_on, 1.0, "nondecreasing"),
        ];
        for (declared, sign, label) in checks {
            let Some(iv) = declared.map(clip) else { continue };
            if iv.lo >= iv.hi {
                continue;
            }
            let step = (iv.hi - iv.lo) / (SHAPE_GRID - 1) as f64;
            let mut prev = self.density(iv.lo);
            for i in 1..SHAPE_GRID {
                let x = if i == SHAPE_GRID - 1 {
                    iv.hi
                } else {
                    iv.lo + step * i as f64
                };
                let cur = self.density(x);
                let slack = SHAPE_TOL * prev.abs().max(cur.abs()).max(1.0);
                // sign = -1: require cur <= prev; sign = +1: require cur >= prev.
                if sign * (cur - prev) < -slack && !(prev.is_infinite() && cur.is_infinite()) {
                    return Err(Error::Shape(format!(
                        "{self}: density not {label} on {iv} near x = {x}"
                    )));
                }
                prev = cur;
            }
        }
        Ok(())
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> Option<f64> {
        self.variance
    }

    pub fn second_moment(&self) -> Option<f64> {
        self.second_moment
    }

    pub fn sd(&self) -> Option<f64> {
        self.variance.map(f64::sqrt)
    }

    /// Set of `t` for which the MGF is finite. Finite endpoints are excluded.
    pub fn mgf_domain(&self) -> Interval {
        self.mgf_domain
    }

    pub fn support(&self) -> &Support {
        &self.support
    }

    pub fn shape(&self) -> &ShapeFacts {
        &self.shape
    }

    pub fn is_continuous(&self) -> bool {
        self.shape.continuous
    }

    /// Atoms of a discrete law, `None` for continuous ones.
    pub fn atoms(&self) -> Option<&[Atom]> {
        match &self.law {
            Law::Discrete(atoms) => Some(atoms),
            Law::Continuous(_) => None,
        }
    }

    fn check_mgf_domain(&self, t: f64) -> Result<()> {
        if t == 0.0 || self.mgf_domain.contains_interior(t) {
            Ok(())
        } else {
            Err(domain(format!(
                "t = {t} outside the MGF domain {} of {self} (finite endpoints excluded)",
                self.mgf_domain
            )))
        }
    }

    /// `ln E[exp(tX)]`.
    pub fn ln_mgf(&self, t: f64) -> Result<f64> {
        self.ln_mgf_shifted(t, 0.0)
    }

    /// `ln E[exp(t(X - shift))] = ln M(t) - t shift`, evaluated without the
    /// cancellation of forming both terms separately for discrete laws.
    pub fn ln_mgf_shifted(&self, t: f64, shift: f64) -> Result<f64> {
        self.check_mgf_domain(t)?;
        if t == 0.0 {
            return Ok(0.0);
        }
        Ok(match &self.law {
            Law::Discrete(atoms) => {
                let m = atoms
                    .iter()
                    .map(|a| t * (a.x - shift))
                    .fold(f64::NEG_INFINITY, f64::max);
                let s: f64 = atoms.iter().map(|a| a.p * (t * (a.x - shift) - m).exp()).sum();
                m + s.ln()
            }
            Law::Continuous(c) => c.ln_mgf(t) - t * shift,
        })
    }

    /// `d/dt ln E[exp(tX)]`, the mean of the exponentially tilted law.
    pub fn ln_mgf_derivative(&self, t: f64) -> Result<f64> {
        self.check_mgf_domain(t)?;
        Ok(match &self.law {
            Law::Discrete(atoms) => {
                let m = atoms.iter().map(|a| t * a.x).fold(f64::NEG_INFINITY, f64::max);
                let (num, den) = atoms.iter().fold((0.0, 0.0), |(n, d), a| {
                    let w = a.p * (t * a.x - m).exp();
                    (n + w * a.x, d + w)
                });
                num / den
            }
            Law::Continuous(c) => c.ln_mgf_derivative(t),
        })
    }

    /// `E[exp(tX)]`.
    pub fn mgf(&self, t: f64) -> Result<f64> {
        self.ln_mgf(t).map(f64::exp)
    }

    /// Density for continuous laws; 0 everywhere for discrete ones.
    pub fn density(&self, x: f64) -> f64 {
        match &self.law {
            Law::Continuous(c) => c.pdf(x),
            Law::Discrete(_) => 0.0,
        }
    }

    /// `P(X <= x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        match &self.law {
            Law::Continuous(c) => c.cdf(x),
            Law::Discrete(atoms) => atoms.iter().filter(|a| a.x <= x).map(|a| a.p).sum(),
        }
    }

    /// `P(X >= x)`; computed directly rather than as `1 - cdf` to keep
    /// precision in the far right tail.
    pub fn survival(&self, x: f64) -> f64 {
        match &self.law {
            Law::Continuous(c) => c.sf(x),
            Law::Discrete(atoms) => atoms.iter().filter(|a| a.x >= x).map(|a| a.p).sum(),
        }
    }

    /// Exact tail probability of the requested kind. Atoms on the threshold
    /// count as inside the event.
    pub fn tail_probability(&self, a: f64, kind: TailKind) -> Result<f64> {
        if a.is_nan() {
            return Err(domain("threshold is NaN"));
        }
        match kind {
            TailKind::Upper => Ok(self.survival(a)),
            TailKind::Lower => Ok(self.cdf(a)),
            TailKind::TwoSided => {
                if a < 0.0 {
                    return Err(domain(format!("two-sided tail needs a >= 0, got {a}")));
                }
                if a == 0.0 {
                    return Ok(1.0);
                }
                Ok(match &self.law {
                    Law::Continuous(c) => c.cdf(self.mean - a) + c.sf(self.mean + a),
                    Law::Discrete(atoms) => {
                        let edge = a * (1.0 - ATOM_TOL);
                        atoms
                            .iter()
                            .filter(|at| (at.x - self.mean).abs() >= edge)
                            .map(|at| at.p)
                            .sum::<f64>()
                            .min(1.0)
                    }
                })
            }
        }
    }

    /// One draw from the law.
    pub fn sample(&self, rng: &mut CounterRng) -> f64 {
        match &self.law {
            Law::Continuous(c) => c.sample(rng),
            Law::Discrete(atoms) => {
                let u = rng.next_f64();
                let mut acc = 0.0;
                for a in atoms {
                    acc += a.p;
                    if u < acc {
                        return a.x;
                    }
                }
                atoms.last().expect("nonempty").x
            }
        }
    }
}

impl Continuous {
    fn summary(&self) -> (f64, f64, Interval, Support, ShapeFacts) {
        let inf = f64::INFINITY;
        match *self {
            Continuous::Uniform { lo, hi } => (
                0.5 * (lo + hi),
                (hi - lo).powi(2) / 12.0,
                Interval::REAL_LINE,
                Support::Interval(Interval::new(lo, hi)),
                ShapeFacts {
                    continuous: true,
                    nonnegative: lo >= 0.0,
                    density_nonincreasing_on: Some(Interval::new(lo, inf)),
                    density_nondecreasing_on: Some(Interval::new(-inf, hi)),
                    unimodal_mode: Some(0.5 * (lo + hi)),
                },
            ),
            Continuous::Exponential { rate } => (
                1.0 / rate,
                1.0 / (rate * rate),
                Interval::new(-inf, rate),
                Support::Interval(Interval::new(0.0, inf)),
                ShapeFacts {
                    continuous: true,
                    nonnegative: true,
                    density_nonincreasing_on: Some(Interval::new(0.0, inf)),
                    density_nondecreasing_on: Some(Interval::new(-inf, 0.0)),
                    unimodal_mode: Some(0.0),
                },
            ),
            Continuous::Normal { mean, sd } => (
                mean,
                sd * sd,
                Interval::REAL_LINE,
                Support::Interval(Interval::REAL_LINE),
                ShapeFacts {
                    continuous: true,
                    nonnegative: false,
                    density_nonincreasing_on: Some(Interval::new(mean, inf)),
                    density_nondecreasing_on: Some(Interval::new(-inf, mean)),
                    unimodal_mode: Some(mean),
                },
            ),
            Continuous::Gamma { shape, rate } => {
                let mode = if shape <= 1.0 { 0.0 } else { (shape - 1.0) / rate };
                (
                    shape / rate,
                    shape / (rate * rate),
                    Interval::new(-inf, rate),
                    Support::Interval(Interval::new(0.0, inf)),
                    ShapeFacts {
                        continuous: true,
                        nonnegative: true,
                        density_nonincreasing_on: Some(Interval::new(mode, inf)),
                        density_nondecreasing_on: Some(Interval::new(-inf, mode)),
                        unimodal_mode: Some(mode),
                    },
                )
            }
        }
    }

    fn pdf(&self, x: f64) -> f64 {
        match *self {
            Continuous::Uniform { lo, hi } => {
                if (lo..=hi).contains(&x) {
                    1.0 / (hi - lo)
                } else {
                    0.0
                }
            }
            Continuous::Exponential { rate } => {
                if x < 0.0 {
                    0.0
                } else {
                    rate * (-rate * x).exp()
                }
            }
            Continuous::Normal { mean, sd } => {
                let z = (x - mean) / sd;
                (-0.5 * z * z).exp() / (sd * (2.0 * std::f64::consts::PI).sqrt())
            }
            Continuous::Gamma { shape, rate } => {
                if x < 0.0 {
                    0.0
                } else if x == 0.0 {
                    match shape.partial_cmp(&1.0) {
                        Some(std::cmp::Ordering::Less) => f64::INFINITY,
                        Some(std::cmp::Ordering::Equal) => rate,
                        _ => 0.0,
                    }
                } else {
                    (shape * rate.ln() + (shape - 1.0) * x.ln() - rate * x - gamma::ln_gamma(shape)).exp()
                }
            }
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        match *self {
            Continuous::Uniform { lo, hi } => ((x - lo) / (hi - lo)).clamp(0.0, 1.0),
            Continuous::Exponential { rate } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-rate * x).exp_m1()
                }
            }
            Continuous::Normal { mean, sd } => 0.5 * erfc(-(x - mean) / (sd * std::f64::consts::SQRT_2)),
            Continuous::Gamma { shape, rate } => {
                if x <= 0.0 {
                    0.0
                } else {
                    gamma::gamma_lr(shape, rate * x)
                }
            }
        }
    }

    fn sf(&self, x: f64) -> f64 {
        match *self {
            Continuous::Uniform { lo, hi } => ((hi - x) / (hi - lo)).clamp(0.0, 1.0),
            Continuous::Exponential { rate } => {
                if x <= 0.0 {
                    1.0
                } else {
                    (-rate * x).exp()
                }
            }
            Continuous::Normal { mean, sd } => 0.5 * erfc((x - mean) / (sd * std::f64::consts::SQRT_2)),
            Continuous::Gamma { shape, rate } => {
                if x <= 0.0 {
                    1.0
                } else {
                    gamma::gamma_ur(shape, rate * x)
                }
            }
        }
    }

    fn ln_mgf(&self, t: f64) -> f64 {
        match *self {
            Continuous::Uniform { lo, hi } => t * lo + ln_expm1_over(t * (hi - lo)),
            Continuous::Exponential { rate } => -(-t / rate).ln_1p(),
            Continuous::Normal { mean, sd } => mean * t + 0.5 * sd * sd * t * t,
            Continuous::Gamma { shape, rate } => -shape * (-t / rate).ln_1p(),
        }
    }

    fn ln_mgf_derivative(&self, t: f64) -> f64 {
        match *self {
            Continuous::Uniform { lo, hi } => {
                let w = hi - lo;
                lo + w * d_ln_expm1_over(t * w)
            }
            Continuous::Exponential { rate } => 1.0 / (rate - t),
            Continuous::Normal { mean, sd } => mean + sd * sd * t,
            Continuous::Gamma { shape, rate } => shape / (rate - t),
        }
    }

    fn sample(&self, rng: &mut CounterRng) -> f64 {
        match *self {
            Continuous::Uniform { lo, hi } => lo + (hi - lo) * rng.next_f64(),
            Continuous::Exponential { rate } => Exp::new(rate).expect("validated rate").sample(rng),
            Continuous::Normal { mean, sd } => {
                let z: f64 = StandardNormal.sample(rng);
                mean + sd * z
            }
            Continuous::Gamma { shape, rate } => {
                Gamma::new(shape, 1.0 / rate).expect("validated parameters").sample(rng)
            }
        }
    }
}

/// `ln((e^w - 1) / w)`, continuous through `w = 0`.
fn ln_expm1_over(w: f64) -> f64 {
    if w.abs() < 1e-2 {
        let w2 = w * w;
        w / 2.0 + w2 / 24.0 - w2 * w2 / 2880.0 + w2 * w2 * w2 / 181_440.0
    } else if w < 50.0 {
        (w.exp_m1() / w).ln()
    } else {
        w + (-(-w).exp_m1()).ln() - w.ln()
    }
}

/// Derivative of [`ln_expm1_over`]: `1 / (1 - e^{-w}) - 1 / w`.
fn d_ln_expm1_over(w: f64) -> f64 {
    if w.abs() < 1e-3 {
        0.5 + w / 12.0 - w.powi(3) / 720.0
    } else {
        -1.0 / (-w).exp_m1() - 1.0 / w
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::PointMass { at } => write!(f, "point:{at}"),
            Family::TwoPoint { a, p } => write!(f, "twopoint:a={a},p={p}"),
            Family::ThreePoint { a, p } => write!(f, "threepoint:a={a},p={p}"),
            Family::Uniform { lo, hi } => write!(f, "uniform:{lo},{hi}"),
            Family::Exponential { rate } => write!(f, "exp:{rate}"),
            Family::Normal { mean, sd } => write!(f, "normal:{mean},{sd}"),
            Family::Gamma { shape, rate } => write!(f, "gamma:{shape},{rate}"),
            Family::Discrete { atoms } => {
                f.write_str("discrete:")?;
                for (i, a) in atoms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write!(f, "({},{})", a.x, a.p)?;
                }
                Ok(())
            }
        }
    }
}

impl Serialize for Distribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
