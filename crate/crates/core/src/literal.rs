//! Textual distribution literals.
//!
//! ```text
//! literal   := family ":" params
//! point:X                       point mass at X
//! twopoint:a=A,p=P              P at A, 1-P at 0
//! threepoint:a=A,p=P            P/2 at -A and A, 1-P at 0
//! uniform:LO,HI
//! exp:RATE
//! normal:MEAN,SD
//! gamma:SHAPE,RATE
//! discrete:(X1,P1);(X2,P2);...
//! witness:KIND,a=A,p=P[,shift=S]   KIND in markov | chebyshev | chernoff | perturbed
//! ```
//!
//! Whitespace around tokens is ignored. Keyed parameters may appear in any order.

use std::str::FromStr;

use crate::distribution::{Atom, Distribution};
use crate::error::{Error, Result};
use crate::witnesses::{build_witness, WitnessKind, WitnessSpec};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn number(tok: &str) -> Result<f64> {
    let tok = tok.trim();
    tok.parse::<f64>()
        .map_err(|_| parse_err(format!("expected a number, found {tok:?}")))
}

fn positional<const N: usize>(family: &str, params: &str) -> Result<[f64; N]> {
    let parts: Vec<&str> = params.split(',').collect();
    if parts.len() != N {
        return Err(parse_err(format!(
            "{family} takes {N} parameter(s), found {}",
            parts.len()
        )));
    }
    let mut out = [0.0; N];
    for (slot, tok) in out.iter_mut().zip(parts) {
        *slot = number(tok)?;
    }
    Ok(out)
}

/// Parses `k=v` pairs; unknown keys are errors.
fn keyed<'a>(family: &str, parts: impl Iterator<Item = &'a str>, allowed: &[&str]) -> Result<Vec<(String, f64)>> {
    let mut out: Vec<(String, f64)> = Vec::new();
    for part in parts {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| parse_err(format!("{family}: expected key=value, found {part:?}")))?;
        let k = k.trim();
        if !allowed.contains(&k) {
            return Err(parse_err(format!("{family}: unknown parameter {k:?}")));
        }
        if out.iter().any(|(seen, _)| seen == k) {
            return Err(parse_err(format!("{family}: parameter {k:?} given twice")));
        }
        out.push((k.to_string(), number(v)?));
    }
    Ok(out)
}

fn required(family: &str, pairs: &[(String, f64)], key: &str) -> Result<f64> {
    pairs
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| parse_err(format!("{family}: missing parameter {key:?}")))
}

fn atoms(params: &str) -> Result<Vec<Atom>> {
    params
        .split(';')
        .map(|chunk| {
            let chunk = chunk.trim();
            let inner = chunk
                .strip_prefix('(')
                .and_then(|c| c.strip_suffix(')'))
                .ok_or_else(|| parse_err(format!("discrete atom must look like (x,p), found {chunk:?}")))?;
            let [x, p] = positional::<2>("discrete atom", inner)?;
            Ok(Atom { x, p })
        })
        .collect()
}

fn witness(params: &str) -> Result<Distribution> {
    let mut parts = params.split(',');
    let kind = match parts.next().map(str::trim) {
        Some("markov") => WitnessKind::MarkovTwoPoint,
        Some("chebyshev") => WitnessKind::ChebyshevThreePoint,
        Some("chernoff") => WitnessKind::ChernoffTwoPoint,
        Some("perturbed") => WitnessKind::MarkovPerturbed,
        other => {
            return Err(parse_err(format!(
                "witness kind must be markov, chebyshev, chernoff or perturbed, found {other:?}"
            )))
        }
    };
    let pairs = keyed("witness", parts, &["a", "p", "shift"])?;
    let shift = pairs.iter().find(|(k, _)| k == "shift").map(|(_, v)| *v).unwrap_or(0.0);
    build_witness(&WitnessSpec {
        kind,
        a: required("witness", &pairs, "a")?,
        p: required("witness", &pairs, "p")?,
        shift,
    })
}

/// Parses a distribution literal.
pub fn parse_distribution(s: &str) -> Result<Distribution> {
    let (family, params) = s
        .trim()
        .split_once(':')
        .ok_or_else(|| parse_err(format!("expected family:params, found {s:?}")))?;
    let family = family.trim();
    match family {
        "point" => {
            let [x] = positional::<1>(family, params)?;
            Distribution::point_mass(x)
        }
        "twopoint" | "threepoint" => {
            let pairs = keyed(family, params.split(','), &["a", "p"])?;
            let (a, p) = (required(family, &pairs, "a")?, required(family, &pairs, "p")?);
            if family == "twopoint" {
                Distribution::two_point(a, p)
            } else {
                Distribution::three_point(a, p)
            }
        }
        "uniform" => {
            let [lo, hi] = positional::<2>(family, params)?;
            Distribution::uniform(lo, hi)
        }
        "exp" => {
            let [rate] = positional::<1>(family, params)?;
            Distribution::exponential(rate)
        }
        "normal" => {
            let [mean, sd] = positional::<2>(family, params)?;
            Distribution::normal(mean, sd)
        }
        "gamma" => {
            let [shape, rate] = positional::<2>(family, params)?;
            Distribution::gamma(shape, rate)
        }
        "discrete" => Distribution::discrete(atoms(params)?),
        "witness" => witness(params),
        other => Err(parse_err(format!("unknown distribution family {other:?}"))),
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_distribution(s)
    }
}
