//! Distributions on which the classical bounds hold with equality, or in the
//! limit, plus a two-point law shifted just past the smoothing ramp.

use serde::Serialize;

use crate::distribution::{Atom, Distribution};
use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// `{(a, p), (0, 1-p)}`: Markov is exact.
    MarkovTwoPoint,
    /// `{(-a, p/2), (0, 1-p), (a, p/2)}`: Chebyshev is exact.
    ChebyshevThreePoint,
    /// `{(a, p), (0, 1-p)}`: Chernoff tends to `p` as `t` grows.
    ChernoffTwoPoint,
    /// `{(a + shift, p), (0, 1-p)}`: defeats windows with `c <= shift`.
    MarkovPerturbed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WitnessSpec {
    pub kind: WitnessKind,
    pub a: f64,
    pub p: f64,
    /// Only read for [`WitnessKind::MarkovPerturbed`].
    pub shift: f64,
}

impl WitnessSpec {
    pub fn new(kind: WitnessKind, a: f64, p: f64) -> Self {
        Self { kind, a, p, shift: 0.0 }
    }

    pub fn perturbed(a: f64, p: f64, shift: f64) -> Self {
        Self {
            kind: WitnessKind::MarkovPerturbed,
            a,
            p,
            shift,
        }
    }
}

pub fn build_witness(spec: &WitnessSpec) -> Result<Distribution> {
    let WitnessSpec { kind, a, p, shift } = *spec;
    if !(a > 0.0 && a.is_finite()) {
        return Err(domain(format!("witness needs a > 0, got {a}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(domain(format!("witness probability must lie in [0, 1], got {p}")));
    }
    match kind {
        WitnessKind::MarkovTwoPoint | WitnessKind::ChernoffTwoPoint => Distribution::two_point(a, p),
        WitnessKind::ChebyshevThreePoint => Distribution::three_point(a, p),
        WitnessKind::MarkovPerturbed => {
            if !(shift >= 0.0 && shift.is_finite()) {
                return Err(domain(format!("shift must be nonnegative, got {shift}")));
            }
            Distribution::discrete(vec![Atom { x: 0.0, p: 1.0 - p }, Atom { x: a + shift, p }])
        }
    }
}
