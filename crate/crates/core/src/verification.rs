//! Ground-truth checks for computed bounds: exact tails from distribution
//! functions and quadrature, and seeded Monte Carlo estimates.
//!
//! # Stream layout
//!
//! A Monte Carlo run with seed `s`, `w` workers and `n` samples splits `n`
//! into `w` contiguous chunks (the first `n % w` chunks take one extra
//! sample). Chunk `i` draws `X` from the stream keyed
//! `derive_key(s, [STREAM_X, w, i])` and `U` from `derive_key(s, [STREAM_U, w, i])`
//! (see [`crate::rng`]). Results are therefore reproducible for a fixed
//! `(seed, n, workers)` on any machine, independent of thread scheduling.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{chebyshev_bound, chernoff_bound, markov_bound, optimize_chernoff, BoundResult, Side};
use crate::distribution::{Distribution, TailKind};
use crate::error::{precondition, Result};
use crate::rng::{derive_key, CounterRng};
use crate::smoothing::{gauss_bound, smoothed_chebyshev, smoothed_chernoff, smoothed_markov, SmoothingWindow};

pub const STREAM_X: u64 = 0x58;
pub const STREAM_U: u64 = 0x55;
const CORPUS_TAG: u64 = 0xC0;
/// Fixed partition so that estimates do not depend on the host's core count.
pub const DEFAULT_WORKERS: u64 = 8;
/// Slack allowed between an exact tail and its bound before calling a violation.
pub const EXACT_SLACK: f64 = 1e-9;
/// Standard errors an MC estimate must clear before it counts as evidence.
pub const MC_SIGMAS: f64 = 5.0;
const ATOM_TOL: f64 = 1e-12;

/// How a query treats the auxiliary uniform noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SmoothingMode {
    Classical,
    /// Halved bound on the event for `X + U`.
    Smoothed,
    /// Halved bound on `X` itself when the shape certificate passes,
    /// otherwise on `X + U`.
    AutoDropU,
}

impl fmt::Display for SmoothingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SmoothingMode::Classical => "classical",
            SmoothingMode::Smoothed => "smoothed",
            SmoothingMode::AutoDropU => "auto-drop-u",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailQuery {
    pub dist: Distribution,
    pub a: f64,
    pub kind: TailKind,
    pub smoothing: SmoothingMode,
}

impl TailQuery {
    pub fn new(dist: Distribution, a: f64, kind: TailKind, smoothing: SmoothingMode) -> Self {
        Self {
            dist,
            a,
            kind,
            smoothing,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TChoice {
    Fixed(f64),
    /// Use the exponent from [`optimize_chernoff`].
    Auto,
}

/// Bound family to evaluate for a query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundSpec {
    Markov,
    Chebyshev,
    Chernoff(TChoice),
    /// Reference comparator for `P(|X| >= a)`; ignores the smoothing mode.
    Gauss,
}

impl fmt::Display for BoundSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundSpec::Markov => f.write_str("markov"),
            BoundSpec::Chebyshev => f.write_str("chebyshev"),
            BoundSpec::Chernoff(TChoice::Fixed(t)) => write!(f, "chernoff(t={t})"),
            BoundSpec::Chernoff(TChoice::Auto) => f.write_str("chernoff(t=auto)"),
            BoundSpec::Gauss => f.write_str("gauss"),
        }
    }
}

impl Serialize for BoundSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A tail event on a real variable `V`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Event {
    /// `V >= a`
    AtLeast(f64),
    /// `V <= a`
    AtMost(f64),
    /// `|V - center| >= radius`
    Outside { center: f64, radius: f64 },
}

impl Event {
    pub fn for_tail(dist: &Distribution, a: f64, kind: TailKind) -> Self {
        match kind {
            TailKind::Upper => Event::AtLeast(a),
            TailKind::Lower => Event::AtMost(a),
            TailKind::TwoSided => Event::Outside {
                center: dist.mean(),
                radius: a,
            },
        }
    }

    #[inline]
    pub fn contains(&self, v: f64) -> bool {
        match *self {
            Event::AtLeast(a) => v >= a,
            Event::AtMost(a) => v <= a,
            Event::Outside { center, radius } => (v - center).abs() >= radius * (1.0 - ATOM_TOL),
        }
    }

    /// Exact `P(X in event)`.
    pub fn probability(&self, dist: &Distribution) -> f64 {
        match *self {
            Event::AtLeast(a) => dist.survival(a),
            Event::AtMost(a) => dist.cdf(a),
            Event::Outside { radius, .. } if radius <= 0.0 => 1.0,
            Event::Outside { center, radius } if center == dist.mean() => dist
                .tail_probability(radius, TailKind::TwoSided)
                .expect("positive radius"),
            Event::Outside { center, radius } => match dist.atoms() {
                Some(atoms) => atoms.iter().filter(|at| self.contains(at.x)).map(|at| at.p).sum(),
                None => dist.cdf(center - radius) + dist.survival(center + radius),
            },
        }
    }

    pub fn describe(&self, var: &str) -> String {
        match *self {
            Event::AtLeast(a) => format!("{var} >= {a}"),
            Event::AtMost(a) => format!("{var} <= {a}"),
            Event::Outside { center: 0.0, radius } => format!("|{var}| >= {radius}"),
            Event::Outside { center, radius } => format!("|{var} - {center}| >= {radius}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    /// `sqrt(p(1 - p) / n)` at the empirical frequency.
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
    pub workers: u64,
}

/// Empirical frequency of `X (+ U) in event` over `n` seeded draws.
pub fn mc_event(
    dist: &Distribution,
    window: Option<&SmoothingWindow>,
    event: Event,
    n: u64,
    seed: u64,
    workers: u64,
) -> McEstimate {
    let workers = workers.max(1);
    let base = n / workers;
    let extra = n % workers;
    let hits: u64 = (0..workers)
        .into_par_iter()
        .map(|i| {
            let len = base + u64::from(i < extra);
            let mut xs = CounterRng::from_path(seed, &[STREAM_X, workers, i]);
            let mut us = CounterRng::from_path(seed, &[STREAM_U, workers, i]);
            let mut count = 0u64;
            for _ in 0..len {
                let mut v = dist.sample(&mut xs);
                if let Some(w) = window {
                    v += w.draw(us.next_f64());
                }
                count += u64::from(event.contains(v));
            }
            count
        })
        .sum();
    let p = if n == 0 { 0.0 } else { hits as f64 / n as f64 };
    let stderr = if n == 0 { 0.0 } else { (p * (1.0 - p) / n as f64).sqrt() };
    McEstimate {
        estimate: p,
        stderr,
        samples: n,
        seed,
        workers,
    }
}

/// Monte Carlo estimate of a tail probability, optionally for `X + U`.
pub fn mc_tail(
    dist: &Distribution,
    window: Option<&SmoothingWindow>,
    a: f64,
    kind: TailKind,
    n: u64,
    seed: u64,
) -> McEstimate {
    mc_event(dist, window, Event::for_tail(dist, a, kind), n, seed, DEFAULT_WORKERS)
}

/// Which variable a reported bound is a statement about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundedEvent {
    #[serde(rename = "X")]
    X,
    #[serde(rename = "X+U")]
    XPlusU,
}

impl fmt::Display for BoundedEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundedEvent::X => "X",
            BoundedEvent::XPlusU => "X+U",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    BoundHolds,
    BoundViolated,
    Inconclusive,
}

/// A bound for a query, resolved to the event it controls.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluatedBound {
    pub bound: BoundResult,
    pub event: Event,
    pub bounded: BoundedEvent,
    pub exact_smoothed_tail: Option<f64>,
    /// `P(X in event)`, without noise.
    pub exact_unsmoothed_tail: f64,
}

impl EvaluatedBound {
    /// Exact probability of the event the bound is about.
    pub fn exact_tail(&self) -> Option<f64> {
        match self.bounded {
            BoundedEvent::X => Some(self.exact_unsmoothed_tail),
            BoundedEvent::XPlusU => self.exact_smoothed_tail,
        }
    }

    pub fn noise(&self) -> Option<SmoothingWindow> {
        match self.bounded {
            BoundedEvent::X => None,
            BoundedEvent::XPlusU => self.bound.window,
        }
    }
}

fn chernoff_side(kind: TailKind) -> Result<Side> {
    match kind {
        TailKind::Upper => Ok(Side::Upper),
        TailKind::Lower => Ok(Side::Lower),
        TailKind::TwoSided => Err(precondition(
            "Chernoff bounds a one-sided tail; use --side upper or lower",
        )),
    }
}

fn require_kind(spec: BoundSpec, kind: TailKind, want: TailKind) -> Result<()> {
    if kind == want {
        Ok(())
    } else {
        Err(precondition(format!(
            "{spec} bounds the {want} tail, query asked for {kind}"
        )))
    }
}

/// Computes the bound a query asks for and identifies the event it controls.
pub fn evaluate(query: &TailQuery, spec: BoundSpec) -> Result<EvaluatedBound> {
    let TailQuery {
        dist,
        a,
        kind,
        smoothing,
    } = query;
    let (a, kind) = (*a, *kind);
    let smoothed = *smoothing != SmoothingMode::Classical;
    let (bound, exact_smoothed, event) = match spec {
        BoundSpec::Markov => {
            require_kind(spec, kind, TailKind::Upper)?;
            let event = Event::AtLeast(a);
            if smoothed {
                let s = smoothed_markov(dist, a)?;
                (s.bound, s.exact_smoothed_tail, event)
            } else {
                (markov_bound(dist, a)?, None, event)
            }
        }
        BoundSpec::Chebyshev => {
            require_kind(spec, kind, TailKind::TwoSided)?;
            let event = Event::for_tail(dist, a, kind);
            if smoothed {
                let s = smoothed_chebyshev(dist, a)?;
                (s.bound, s.exact_smoothed_tail, event)
            } else {
                (chebyshev_bound(dist, a)?, None, event)
            }
        }
        BoundSpec::Chernoff(choice) => {
            let side = chernoff_side(kind)?;
            let t = match choice {
                TChoice::Fixed(t) => t,
                TChoice::Auto => optimize_chernoff(dist, a, side)?.t_used.expect("chernoff sets t"),
            };
            let event = Event::for_tail(dist, a, kind);
            if smoothed {
                let s = smoothed_chernoff(dist, a, t, side)?;
                (s.bound, s.exact_smoothed_tail, event)
            } else {
                (chernoff_bound(dist, a, t, side)?, None, event)
            }
        }
        BoundSpec::Gauss => {
            require_kind(spec, kind, TailKind::TwoSided)?;
            (gauss_bound(dist, a)?, None, Event::Outside { center: 0.0, radius: a })
        }
    };
    let bounded = if bound.method.is_smoothed() && !(*smoothing == SmoothingMode::AutoDropU && bound.smoothing_free) {
        BoundedEvent::XPlusU
    } else {
        BoundedEvent::X
    };
    Ok(EvaluatedBound {
        exact_unsmoothed_tail: event.probability(dist),
        bound,
        event,
        bounded,
        exact_smoothed_tail: exact_smoothed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub query: TailQuery,
    pub method: BoundSpec,
    pub bound: Option<BoundResult>,
    pub bounded_event: Option<BoundedEvent>,
    /// Human-readable event, e.g. `X+U >= 1`.
    pub event: Option<String>,
    /// Exact probability of the bounded event.
    pub exact_tail: Option<f64>,
    /// Exact probability of the same event for `X` alone.
    pub exact_unsmoothed_tail: Option<f64>,
    pub mc_estimate: f64,
    pub mc_stderr: f64,
    pub mc_samples: u64,
    pub seed: u64,
    pub verdict: Verdict,
    pub reason: Option<String>,
}

impl VerificationReport {
    /// Whether the MC estimate lies within [`MC_SIGMAS`] standard errors of
    /// the exact tail (vacuously true without an exact tail).
    pub fn mc_concordant(&self) -> bool {
        match self.exact_tail {
            Some(exact) => (self.mc_estimate - exact).abs() <= MC_SIGMAS * self.mc_stderr + 1e-12,
            None => true,
        }
    }
}

fn decide(value: f64, exact: Option<f64>, mc: &McEstimate) -> Verdict {
    match exact {
        Some(p) if p > value + EXACT_SLACK => Verdict::BoundViolated,
        Some(_) => Verdict::BoundHolds,
        None if mc.estimate - MC_SIGMAS * mc.stderr > value => Verdict::BoundViolated,
        None if mc.estimate + MC_SIGMAS * mc.stderr <= value => Verdict::BoundHolds,
        None => Verdict::Inconclusive,
    }
}

/// Computes a bound, its exact and Monte Carlo ground truth, and a verdict.
/// Bound errors yield an inconclusive report carrying the message.
pub fn verify_query(query: &TailQuery, spec: BoundSpec, n: u64, seed: u64) -> VerificationReport {
    match evaluate(query, spec) {
        Ok(ev) => {
            let noise = ev.noise();
            let mc = mc_event(&query.dist, noise.as_ref(), ev.event, n, seed, DEFAULT_WORKERS);
            let exact = ev.exact_tail();
            let var = ev.bounded.to_string();
            VerificationReport {
                query: query.clone(),
                method: spec,
                verdict: decide(ev.bound.value, exact, &mc),
                event: Some(ev.event.describe(&var)),
                bounded_event: Some(ev.bounded),
                exact_tail: exact,
                exact_unsmoothed_tail: Some(ev.exact_unsmoothed_tail),
                bound: Some(ev.bound),
                mc_estimate: mc.estimate,
                mc_stderr: mc.stderr,
                mc_samples: mc.samples,
                seed,
                reason: None,
            }
        }
        Err(e) => VerificationReport {
            query: query.clone(),
            method: spec,
            bound: None,
            bounded_event: None,
            event: None,
            exact_tail: None,
            exact_unsmoothed_tail: None,
            mc_estimate: 0.0,
            mc_stderr: 0.0,
            mc_samples: 0,
            seed,
            verdict: Verdict::Inconclusive,
            reason: Some(e.to_string()),
        },
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusCell {
    pub query: TailQuery,
    pub spec: BoundSpec,
}

fn cell(lit: &str, a: f64, kind: TailKind, smoothing: SmoothingMode, spec: BoundSpec) -> CorpusCell {
    let dist: Distribution = lit.parse().expect("corpus literal");
    CorpusCell {
        query: TailQuery::new(dist, a, kind, smoothing),
        spec,
    }
}

/// The default verification corpus: every bound family, smoothing mode and
/// distribution family, including the tight witnesses.
pub fn default_corpus() -> Vec<CorpusCell> {
    use BoundSpec::*;
    use SmoothingMode::*;
    use TailKind::*;
    vec![
        cell("exp:1", 1.0, Upper, Classical, Markov),
        cell("exp:1", 1.0, Upper, AutoDropU, Markov),
        cell("exp:1", 1.0, Upper, Smoothed, Markov),
        cell("gamma:2,1", 3.0, Upper, AutoDropU, Markov),
        cell("gamma:1,2", 0.5, Upper, AutoDropU, Markov),
        cell("uniform:0,1", 0.5, Upper, AutoDropU, Markov),
        cell("normal:0,1", 1.0, TwoSided, Classical, Chebyshev),
        cell("normal:0,1", 1.0, TwoSided, AutoDropU, Chebyshev),
        cell("normal:0,1", 1.0, TwoSided, Smoothed, Chebyshev),
        cell("normal:0,1", 1.0, Upper, Classical, Chernoff(TChoice::Fixed(1.0))),
        cell("normal:0,1", 1.0, Upper, AutoDropU, Chernoff(TChoice::Fixed(1.0))),
        cell("normal:0,1", 1.0, Upper, Smoothed, Chernoff(TChoice::Fixed(1.0))),
        cell("normal:0,1", -1.0, Lower, Smoothed, Chernoff(TChoice::Fixed(-1.0))),
        cell("exp:1", 2.0, Upper, AutoDropU, Chernoff(TChoice::Auto)),
        cell("normal:0,1", 2.0, TwoSided, Classical, Gauss),
        cell("uniform:-1,1", 0.9, TwoSided, Classical, Gauss),
        cell("twopoint:a=2,p=0.3", 2.0, Upper, Classical, Markov),
        cell("twopoint:a=2,p=0.3", 2.0, Upper, AutoDropU, Markov),
        cell("threepoint:a=1,p=0.4", 1.0, TwoSided, Classical, Chebyshev),
        cell("threepoint:a=1,p=0.4", 1.0, TwoSided, Smoothed, Chebyshev),
        cell(
            "witness:chernoff,a=1,p=0.25",
            1.0,
            Upper,
            Smoothed,
            Chernoff(TChoice::Fixed(10.0)),
        ),
        cell("witness:perturbed,a=1,p=0.5,shift=0.2", 1.0, Upper, Smoothed, Markov),
        cell("twopoint:a=1,p=1", 1.0, Upper, Classical, Markov),
    ]
}

/// Runs every corpus cell; cell `i` uses seed `derive_key(seed, [CORPUS_TAG, i])`.
pub fn run_corpus(cells: &[CorpusCell], n: u64, seed: u64) -> Vec<VerificationReport> {
    cells
        .iter()
        .enumerate()
        .map(|(i, c)| verify_query(&c.query, c.spec, n, derive_key(seed, &[CORPUS_TAG, i as u64])))
        .collect()
}
