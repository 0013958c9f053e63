use serde::Serialize;
use tailsmith::verification::{default_corpus, evaluate, mc_event, run_corpus, EvaluatedBound, DEFAULT_WORKERS};
use tailsmith::{
    iid_chernoff, optimize_chernoff, parse_distribution, BoundSpec, Certificate, Distribution, Error, Result, Side,
    SmoothingMode, TChoice, TailKind, TailQuery, Verdict, VerificationReport,
};

use crate::render::{render, render_text, Cell, Tabular};
use crate::{BoundArgs, CompareArgs, MethodArg, Outcome, QueryArgs, SweepArgs, VerifyArgs};

fn default_kind(method: MethodArg) -> TailKind {
    match method {
        MethodArg::Markov | MethodArg::Chernoff => TailKind::Upper,
        MethodArg::Chebyshev | MethodArg::Gauss => TailKind::TwoSided,
    }
}

fn spec_for(method: MethodArg, t: TChoice) -> BoundSpec {
    match method {
        MethodArg::Markov => BoundSpec::Markov,
        MethodArg::Chebyshev => BoundSpec::Chebyshev,
        MethodArg::Chernoff => BoundSpec::Chernoff(t),
        MethodArg::Gauss => BoundSpec::Gauss,
    }
}

struct Resolved {
    dist: Distribution,
    kind: TailKind,
}

fn resolve(q: &QueryArgs) -> Result<Resolved> {
    Ok(Resolved {
        dist: parse_distribution(&q.dist)?,
        kind: q.side.map(Into::into).unwrap_or_else(|| default_kind(q.method)),
    })
}

fn side_of(kind: TailKind) -> Result<Side> {
    match kind {
        TailKind::Upper => Ok(Side::Upper),
        TailKind::Lower => Ok(Side::Lower),
        TailKind::TwoSided => Err(Error::Precondition("Chernoff bounds a one-sided tail".into())),
    }
}

/// Pins `t = auto` to the optimum so classical and smoothed rows share it.
fn pin_t(r: &Resolved, a: f64, method: MethodArg, t: TChoice) -> Result<TChoice> {
    match (method, t) {
        (MethodArg::Chernoff, TChoice::Auto) => {
            let opt = optimize_chernoff(&r.dist, a, side_of(r.kind)?)?;
            Ok(TChoice::Fixed(opt.t_used.expect("chernoff sets t")))
        }
        _ => Ok(t),
    }
}

#[derive(Serialize)]
pub struct BoundReport {
    pub dist: String,
    pub a: f64,
    pub side: TailKind,
    pub smoothing: SmoothingMode,
    pub method: String,
    pub n: u64,
    pub value: f64,
    pub raw_value: f64,
    pub t: Option<f64>,
    pub window: Option<f64>,
    pub boundary_limited: bool,
    /// Which variable the bound is a statement about.
    pub bounded_event: String,
    pub event: String,
    /// Exact probability of the bounded event, when known.
    pub exact_tail: Option<f64>,
    pub exact_unsmoothed_tail: Option<f64>,
    pub exact_smoothed_tail: Option<f64>,
    pub drop_u: Option<bool>,
    pub certificate: Option<Certificate>,
}

impl Tabular for BoundReport {
    fn headers() -> Vec<&'static str> {
        vec![
            "dist",
            "a",
            "side",
            "smoothing",
            "method",
            "n",
            "value",
            "raw_value",
            "t",
            "window",
            "bounded_event",
            "event",
            "exact_tail",
            "exact_smoothed_tail",
            "drop_u",
            "drop_u_reason",
        ]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            Cell::text(&self.dist),
            Cell::num(self.a),
            Cell::text(self.side),
            Cell::text(self.smoothing),
            Cell::text(&self.method),
            Cell::Int(self.n),
            Cell::num(self.value),
            Cell::num(self.raw_value),
            Cell::opt(self.t),
            Cell::opt(self.window),
            Cell::text(&self.bounded_event),
            Cell::text(&self.event),
            Cell::opt(self.exact_tail),
            Cell::opt(self.exact_smoothed_tail),
            Cell::opt_text(self.drop_u),
            Cell::opt_text(self.certificate.as_ref().and_then(|c| c.reason.clone())),
        ]
    }
}

fn report_from(
    dist: &Distribution,
    a: f64,
    kind: TailKind,
    smoothing: SmoothingMode,
    spec: BoundSpec,
    ev: EvaluatedBound,
) -> BoundReport {
    let exact = ev.exact_tail();
    let var = ev.bounded.to_string();
    let b = ev.bound;
    BoundReport {
        dist: dist.to_string(),
        a,
        side: kind,
        smoothing,
        method: spec.to_string(),
        n: 1,
        value: b.value,
        raw_value: b.raw_value,
        t: b.t_used,
        window: b.window.map(|w| w.half_width),
        boundary_limited: b.boundary_limited,
        bounded_event: var.clone(),
        event: ev.event.describe(&var),
        exact_tail: exact,
        exact_unsmoothed_tail: Some(ev.exact_unsmoothed_tail),
        exact_smoothed_tail: ev.exact_smoothed_tail,
        drop_u: b.certificate.as_ref().map(|c| c.applicable),
        certificate: b.certificate,
    }
}

pub fn bound(args: &BoundArgs) -> Result<Outcome> {
    let q = &args.query;
    let r = resolve(q)?;
    let smoothing: SmoothingMode = args.smoothing.into();
    let report = if args.n > 1 {
        if q.method != MethodArg::Chernoff {
            return Err(Error::Precondition("--n > 1 composes Chernoff bounds only".into()));
        }
        if smoothing != SmoothingMode::Classical {
            return Err(Error::Precondition(
                "--n > 1 is only available for the classical Chernoff bound".into(),
            ));
        }
        if r.kind != TailKind::Upper {
            return Err(Error::Precondition(
                "--n > 1 bounds the upper tail of the sample mean".into(),
            ));
        }
        let t = match pin_t(&r, args.a, q.method, q.t)? {
            TChoice::Fixed(t) => t,
            TChoice::Auto => unreachable!("pinned above"),
        };
        let b = iid_chernoff(&r.dist, args.n, args.a, t)?;
        let var = format!("mean(X_1..X_{})", args.n);
        BoundReport {
            dist: r.dist.to_string(),
            a: args.a,
            side: r.kind,
            smoothing,
            method: spec_for(q.method, TChoice::Fixed(t)).to_string(),
            n: args.n,
            value: b.value,
            raw_value: b.raw_value,
            t: b.t_used,
            window: None,
            boundary_limited: false,
            event: format!("{var} >= {}", args.a),
            bounded_event: var,
            exact_tail: None,
            exact_unsmoothed_tail: None,
            exact_smoothed_tail: None,
            drop_u: None,
            certificate: None,
        }
    } else {
        let spec = spec_for(q.method, q.t);
        let query = TailQuery::new(r.dist.clone(), args.a, r.kind, smoothing);
        let ev = evaluate(&query, spec)?;
        report_from(&r.dist, args.a, r.kind, smoothing, spec, ev)
    };
    Ok(Outcome {
        text: render(q.output, std::slice::from_ref(&report), true),
        violated: false,
    })
}

#[derive(Serialize)]
pub struct CompareRow {
    pub dist: String,
    pub a: f64,
    pub side: TailKind,
    pub method: String,
    pub t: Option<f64>,
    pub classical: f64,
    pub smoothed: Option<f64>,
    pub drop_u: Option<bool>,
    pub drop_u_reason: Option<String>,
    /// Variable the smoothed bound is a statement about.
    pub bounded_event: Option<String>,
    pub exact_tail: f64,
    pub exact_smoothed_tail: Option<f64>,
    pub mc_tail: f64,
    pub mc_tail_stderr: f64,
    pub mc_smoothed_tail: Option<f64>,
    pub mc_smoothed_stderr: Option<f64>,
    pub samples: u64,
    pub seed: u64,
}

impl Tabular for CompareRow {
    fn headers() -> Vec<&'static str> {
        vec![
            "dist",
            "a",
            "side",
            "method",
            "t",
            "classical",
            "smoothed",
            "drop_u",
            "bounded_event",
            "exact_tail",
            "exact_smoothed_tail",
            "mc_tail",
            "mc_tail_stderr",
            "mc_smoothed_tail",
            "mc_smoothed_stderr",
            "samples",
            "seed",
            "drop_u_reason",
        ]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            Cell::text(&self.dist),
            Cell::num(self.a),
            Cell::text(self.side),
            Cell::text(&self.method),
            Cell::opt(self.t),
            Cell::num(self.classical),
            Cell::opt(self.smoothed),
            Cell::opt_text(self.drop_u),
            Cell::opt_text(self.bounded_event.clone()),
            Cell::num(self.exact_tail),
            Cell::opt(self.exact_smoothed_tail),
            Cell::num(self.mc_tail),
            Cell::num(self.mc_tail_stderr),
            Cell::opt(self.mc_smoothed_tail),
            Cell::opt(self.mc_smoothed_stderr),
            Cell::Int(self.samples),
            Cell::Int(self.seed),
            Cell::opt_text(self.drop_u_reason.clone()),
        ]
    }
}

fn halved_mode(mode: SmoothingMode) -> Result<SmoothingMode> {
    if mode == SmoothingMode::Classical {
        Err(Error::Parse(
            "--smoothing classical is not meaningful here; the classical bound is always reported alongside".into(),
        ))
    } else {
        Ok(mode)
    }
}

pub fn compare(args: &CompareArgs) -> Result<Outcome> {
    let q = &args.query;
    let mode = halved_mode(args.smoothing.into())?;
    let r = resolve(q)?;
    let spec = spec_for(q.method, pin_t(&r, args.a, q.method, q.t)?);
    let classical = evaluate(
        &TailQuery::new(r.dist.clone(), args.a, r.kind, SmoothingMode::Classical),
        spec,
    )?;
    let smoothed = match q.method {
        MethodArg::Gauss => None,
        _ => Some(evaluate(&TailQuery::new(r.dist.clone(), args.a, r.kind, mode), spec)?),
    };
    let mc = mc_event(&r.dist, None, classical.event, args.samples, args.seed, DEFAULT_WORKERS);
    // Same X draws with the window added: common random numbers.
    let mc_smoothed = smoothed.as_ref().and_then(|s| s.bound.window).map(|w| {
        mc_event(
            &r.dist,
            Some(&w),
            classical.event,
            args.samples,
            args.seed,
            DEFAULT_WORKERS,
        )
    });
    let cert = smoothed.as_ref().and_then(|s| s.bound.certificate.clone());
    let row = CompareRow {
        dist: r.dist.to_string(),
        a: args.a,
        side: r.kind,
        method: spec.to_string(),
        t: classical.bound.t_used,
        classical: classical.bound.value,
        smoothed: smoothed.as_ref().map(|s| s.bound.value),
        drop_u: cert.as_ref().map(|c| c.applicable),
        drop_u_reason: cert.and_then(|c| c.reason),
        bounded_event: smoothed.as_ref().map(|s| s.bounded.to_string()),
        exact_tail: classical.exact_unsmoothed_tail,
        exact_smoothed_tail: smoothed.as_ref().and_then(|s| s.exact_smoothed_tail),
        mc_tail: mc.estimate,
        mc_tail_stderr: mc.stderr,
        mc_smoothed_tail: mc_smoothed.map(|m| m.estimate),
        mc_smoothed_stderr: mc_smoothed.map(|m| m.stderr),
        samples: args.samples,
        seed: args.seed,
    };
    Ok(Outcome {
        text: render(q.output, std::slice::from_ref(&row), true),
        violated: false,
    })
}

/// One line of a sweep. The first six columns are the stable interface.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub a: f64,
    pub method: String,
    pub classical: f64,
    pub smoothed: Option<f64>,
    pub exact_tail: f64,
    pub exact_smoothed_tail: Option<f64>,
    pub t: Option<f64>,
    pub bounded_event: Option<String>,
}

impl Tabular for SweepRow {
    fn headers() -> Vec<&'static str> {
        vec![
            "a",
            "method",
            "classical",
            "smoothed",
            "exact_tail",
            "exact_smoothed_tail",
            "t",
            "bounded_event",
        ]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            Cell::num(self.a),
            Cell::text(&self.method),
            Cell::num(self.classical),
            Cell::opt(self.smoothed),
            Cell::num(self.exact_tail),
            Cell::opt(self.exact_smoothed_tail),
            Cell::opt(self.t),
            Cell::opt_text(self.bounded_event.clone()),
        ]
    }
}

/// Evenly spaced thresholds from `lo` to `hi` inclusive.
pub fn grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..steps)
            .map(|i| {
                if i + 1 == steps {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (steps - 1) as f64
                }
            })
            .collect(),
    }
}

/// A sweep row for one threshold. A smoothed bound that is undefined at this
/// threshold (e.g. Chernoff with optimal `t = 0`) leaves its columns empty.
pub fn sweep_row(
    dist: &Distribution,
    a: f64,
    kind: TailKind,
    method: MethodArg,
    t: TChoice,
    mode: SmoothingMode,
) -> Result<SweepRow> {
    let r = Resolved {
        dist: dist.clone(),
        kind,
    };
    let spec = spec_for(method, pin_t(&r, a, method, t)?);
    let classical = evaluate(&TailQuery::new(dist.clone(), a, kind, SmoothingMode::Classical), spec)
        .map_err(|e| with_threshold(e, a))?;
    let smoothed = match method {
        MethodArg::Gauss => None,
        _ => evaluate(&TailQuery::new(dist.clone(), a, kind, mode), spec).ok(),
    };
    Ok(SweepRow {
        a,
        method: spec.to_string(),
        classical: classical.bound.value,
        smoothed: smoothed.as_ref().map(|s| s.bound.value),
        exact_tail: classical.exact_unsmoothed_tail,
        exact_smoothed_tail: smoothed.as_ref().and_then(|s| s.exact_smoothed_tail),
        t: classical.bound.t_used,
        bounded_event: smoothed.as_ref().map(|s| s.bounded.to_string()),
    })
}

fn with_threshold(e: Error, a: f64) -> Error {
    match e {
        Error::Domain(m) => Error::Domain(format!("{m} (at a = {a})")),
        Error::Precondition(m) => Error::Precondition(format!("{m} (at a = {a})")),
        Error::Applicability(m) => Error::Applicability(format!("{m} (at a = {a})")),
        other => other,
    }
}

pub fn sweep(args: &SweepArgs) -> Result<Outcome> {
    let q = &args.query;
    let mode = halved_mode(args.smoothing.into())?;
    let r = resolve(q)?;
    if !(args.a_min.is_finite() && args.a_max.is_finite() && args.a_min <= args.a_max) {
        return Err(Error::Domain(format!(
            "need finite a-min <= a-max, got [{}, {}]",
            args.a_min, args.a_max
        )));
    }
    let rows = grid(args.a_min, args.a_max, args.steps)
        .into_iter()
        .map(|a| sweep_row(&r.dist, a, r.kind, q.method, q.t, mode))
        .collect::<Result<Vec<_>>>()?;
    Ok(Outcome {
        text: render(q.output, &rows, false),
        violated: false,
    })
}

#[derive(Serialize)]
struct VerifySummary<'a> {
    samples: u64,
    seed: u64,
    cells: usize,
    violations: usize,
    inconclusive: usize,
    mc_discordant: usize,
    reports: &'a [VerificationReport],
}

struct VerifyRow<'a>(usize, &'a VerificationReport);

impl Tabular for VerifyRow<'_> {
    fn headers() -> Vec<&'static str> {
        vec![
            "cell",
            "dist",
            "a",
            "side",
            "smoothing",
            "method",
            "bound",
            "bounded_event",
            "exact_tail",
            "mc_estimate",
            "mc_stderr",
            "verdict",
            "mc_concordant",
        ]
    }

    fn cells(&self) -> Vec<Cell> {
        let r = self.1;
        vec![
            Cell::Int(self.0 as u64),
            Cell::text(&r.query.dist),
            Cell::num(r.query.a),
            Cell::text(r.query.kind),
            Cell::text(r.query.smoothing),
            Cell::text(r.method),
            Cell::opt(r.bound.as_ref().map(|b| b.value)),
            Cell::opt_text(r.bounded_event),
            Cell::opt(r.exact_tail),
            Cell::num(r.mc_estimate),
            Cell::num(r.mc_stderr),
            Cell::text(verdict_label(r.verdict)),
            Cell::text(r.mc_concordant()),
        ]
    }
}

fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::BoundHolds => "bound-holds",
        Verdict::BoundViolated => "bound-violated",
        Verdict::Inconclusive => "inconclusive",
    }
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let reports = run_corpus(&default_corpus(), args.samples, args.seed);
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    let violations = count(Verdict::BoundViolated);
    let inconclusive = count(Verdict::Inconclusive);
    let discordant = reports.iter().filter(|r| !r.mc_concordant()).count();
    let text = match args.output {
        crate::OutputArg::Json => {
            let summary = VerifySummary {
                samples: args.samples,
                seed: args.seed,
                cells: reports.len(),
                violations,
                inconclusive,
                mc_discordant: discordant,
                reports: &reports,
            };
            let mut s = serde_json::to_string_pretty(&summary).expect("reports serialize");
            s.push('\n');
            s
        }
        out => {
            let rows: Vec<_> = reports.iter().enumerate().map(|(i, r)| VerifyRow(i, r)).collect();
            let mut s = render_text(out, &rows);
            if out == crate::OutputArg::Table {
                s.push_str(&format!(
                    "\n{} cells, {} bound-violated, {} inconclusive, {} MC-discordant (samples={}, seed={})\n",
                    reports.len(),
                    violations,
                    inconclusive,
                    discordant,
                    args.samples,
                    args.seed
                ));
            }
            s
        }
    };
    Ok(Outcome {
        text,
        violated: violations > 0,
    })
}
