//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails. Every tolerance and time limit is a literal
//! below.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use tailsmith::smoothing::smoothed_upper_tail;
use tailsmith::verification::{default_corpus, run_corpus};
use tailsmith::{
    build_witness, chebyshev_bound, chernoff_bound, f1_eval, f2_eval, f3_eval, iid_chernoff, markov_bound,
    optimize_chernoff, smoothed_chebyshev, smoothed_chernoff, smoothed_markov, smoothing_free_applicable, Distribution,
    DropKind, Side, TailKind, WitnessKind, WitnessSpec,
};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(name: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    ensure((got - want).abs() <= tol, || {
        format!("{name} = {got:.17}, want {want:.17} +/- {tol:e}")
    })
}

fn exp1() -> Distribution {
    Distribution::exponential(1.0).unwrap()
}

fn std_normal() -> Distribution {
    Distribution::normal(0.0, 1.0).unwrap()
}

fn c1_exponential_halving() -> Check {
    let d = exp1();
    let classical = markov_bound(&d, 1.0).map_err(|e| e.to_string())?;
    let smoothed = smoothed_markov(&d, 1.0).map_err(|e| e.to_string())?;
    let exact = d.tail_probability(1.0, TailKind::Upper).unwrap();
    ensure(classical.value == 1.0, || format!("classical = {}", classical.value))?;
    ensure(smoothed.value == 0.5, || format!("smoothed = {}", smoothed.value))?;
    ensure(smoothed.smoothing_free, || "drop-U not applicable".into())?;
    within("exact tail", exact, (-1.0f64).exp(), 1e-9)?;
    // The quoted 8-digit literal truncates e^-1 by 1.2e-9; it is checked to its own precision.
    within("exact tail vs 0.36787944", exact, 0.367_879_44, 5e-9)?;
    ensure(exact <= smoothed.value, || {
        "exact tail exceeds the smoothed bound".into()
    })?;
    Ok(format!("markov=1 smoothed=0.5 drop_u=true exact={exact:.10}"))
}

fn c2_normal_chebyshev() -> Check {
    let d = std_normal();
    let classical = chebyshev_bound(&d, 1.0).map_err(|e| e.to_string())?;
    let smoothed = smoothed_chebyshev(&d, 1.0).map_err(|e| e.to_string())?;
    let cert = smoothing_free_applicable(&d, 1.0, DropKind::Chebyshev);
    let exact = d.tail_probability(1.0, TailKind::TwoSided).unwrap();
    ensure(classical.value == 1.0, || format!("classical = {}", classical.value))?;
    ensure(smoothed.value == 0.5, || format!("smoothed = {}", smoothed.value))?;
    ensure(cert.applicable && smoothed.smoothing_free, || {
        format!("drop-U rejected: {:?}", cert.reason)
    })?;
    within("exact two-sided tail", exact, 0.317_311, 1e-6)?;
    Ok(format!("chebyshev=1 smoothed=0.5 drop_u=true exact={exact:.8}"))
}

fn c3_normal_chernoff() -> Check {
    let d = std_normal();
    let classical = chernoff_bound(&d, 1.0, 1.0, Side::Upper).map_err(|e| e.to_string())?;
    let smoothed = smoothed_chernoff(&d, 1.0, 1.0, Side::Upper).map_err(|e| e.to_string())?;
    let exact = d.tail_probability(1.0, TailKind::Upper).unwrap();
    let e_half = (-0.5f64).exp();
    within("classical", classical.value, e_half, 1e-12)?;
    within("smoothed", smoothed.value, 0.5 * e_half, 1e-12)?;
    within("smoothed vs 0.303265", smoothed.value, 0.303_265, 5e-7)?;
    within("exact tail", exact, 0.158_655, 1e-6)?;
    Ok(format!(
        "chernoff={:.12} smoothed={:.12} exact={exact:.8}",
        classical.value, smoothed.value
    ))
}

fn c4_halving_identity() -> Check {
    let families = [
        "exp:1",
        "exp:2.5",
        "normal:0,1",
        "normal:1,2",
        "gamma:2,1",
        "gamma:0.5,1",
        "uniform:0,1",
        "uniform:-1,2",
        "twopoint:a=2,p=0.3",
        "discrete:(0,0.2);(1,0.5);(4,0.3)",
    ];
    let thresholds = [0.3, 1.0, 2.0, 5.0];
    // Fractions of the admissible exponent range; negative ones bound the lower tail.
    let t_fracs = [-0.5, 0.1, 0.3, 0.6, 0.9];
    let rel = |half: f64, full: f64| (half - 0.5 * full).abs() <= 1e-15 * (0.5 * full).abs();
    let mut cells = 0;
    for lit in families {
        let d: Distribution = lit.parse().unwrap();
        let dom = d.mgf_domain();
        for &a in &thresholds {
            if d.shape().nonnegative {
                let (s, c) = (smoothed_markov(&d, a).unwrap(), markov_bound(&d, a).unwrap());
                ensure(rel(s.raw_value, c.raw_value), || format!("markov {lit} a={a}"))?;
            }
            let (s, c) = (smoothed_chebyshev(&d, a).unwrap(), chebyshev_bound(&d, a).unwrap());
            ensure(rel(s.raw_value, c.raw_value), || format!("chebyshev {lit} a={a}"))?;
            for &f in &t_fracs {
                let (t, side, at) = if f > 0.0 {
                    (f * dom.hi.min(3.0), Side::Upper, d.mean() + a)
                } else {
                    (f * (-dom.lo).min(3.0), Side::Lower, d.mean() - a)
                };
                let s = smoothed_chernoff(&d, at, t, side).map_err(|e| format!("{lit} t={t}: {e}"))?;
                let c = chernoff_bound(&d, at, t, side).unwrap();
                ensure(rel(s.raw_value, c.raw_value), || {
                    format!("chernoff {lit} a={at} t={t}: {} vs {}", s.raw_value, c.raw_value)
                })?;
                cells += 1;
            }
        }
    }
    ensure(cells == 200, || format!("grid has {cells} cells"))?;
    Ok(format!(
        "{cells} (family, a, t) cells, plus Markov/Chebyshev at each (family, a)"
    ))
}

fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

fn c5_dominance() -> Check {
    const N: usize = 10_000;
    let mut worst = f64::INFINITY;
    let mut tangency = 0.0f64;
    for k in 0..20 {
        // f1: a spread over three decades, c from a/20 to a.
        let a = 0.05 * 1.5f64.powi(k);
        let c = a * (k + 1) as f64 / 20.0;
        for x in grid(0.0, 10.0 * a, N) {
            worst = worst.min(x / (a + c) - f1_eval(x, a, c).unwrap());
        }
        tangency = tangency.max((f1_eval(a + c, a, c).unwrap() - 1.0).abs());

        // f2: shifted centers.
        let mu = -3.0 + 0.3 * k as f64;
        let a2 = 0.1 + 0.4 * k as f64;
        for x in grid(mu - 10.0 * a2, mu + 10.0 * a2, N) {
            worst = worst.min(0.5 * (x - mu).powi(2) / (a2 * a2) - f2_eval(x, mu, a2).unwrap());
        }
        for x in [mu - a2, mu + a2] {
            tangency = tangency.max((f2_eval(x, mu, a2).unwrap() - 0.5 * (x - mu).powi(2) / (a2 * a2)).abs());
        }

        // f3: t from 0.05 to ~25.
        let a3 = -2.0 + 0.25 * k as f64;
        let t = 0.05 * 1.4f64.powi(k);
        let w = 1.0 / t;
        for x in grid(a3 - 10.0 * w, a3 + 10.0 * w, N) {
            worst = worst.min(0.5 * (t * (x - a3)).exp() - f3_eval(x, a3, t).unwrap());
        }
        tangency = tangency.max((f3_eval(a3, a3, t).unwrap() - 0.5).abs());
    }
    ensure(worst >= -1e-12, || format!("slack {worst:e}"))?;
    ensure(tangency < 1e-9, || format!("tangency residual {tangency:e}"))?;
    Ok(format!(
        "3 x 20 settings x 1e4 points, min slack {worst:e}, max tangency residual {tangency:e}"
    ))
}

fn c6_drop_u_ordering() -> Check {
    let laws = [
        ("exp:1", exp1()),
        ("gamma:1,2", Distribution::gamma(1.0, 2.0).unwrap()),
        ("uniform:0,1", Distribution::uniform(0.0, 1.0).unwrap()),
    ];
    let mut min_gap = f64::INFINITY;
    for (lit, d) in &laws {
        for a in [0.5, 1.0, 2.0] {
            let cert = smoothing_free_applicable(d, a, DropKind::Markov);
            ensure(cert.applicable, || {
                format!("{lit}: certificate rejected ({:?})", cert.reason)
            })?;
            let tail = d.tail_probability(a, TailKind::Upper).unwrap();
            for c in [a / 4.0, a / 2.0, a] {
                let smoothed = smoothed_upper_tail(d, a, c);
                min_gap = min_gap.min(smoothed - tail);
                ensure(tail <= smoothed + 1e-9, || {
                    format!("{lit} a={a} c={c}: {tail} > {smoothed}")
                })?;
            }
        }
    }
    Ok(format!("27 cells, min E[f1] - P(X >= a) = {min_gap:e}"))
}

fn c7_witnesses() -> Check {
    let (a, p) = (2.0, 0.3);
    let m = build_witness(&WitnessSpec::new(WitnessKind::MarkovTwoPoint, a, p)).unwrap();
    within(
        "markov witness",
        markov_bound(&m, a).unwrap().value,
        m.tail_probability(a, TailKind::Upper).unwrap(),
        1e-12,
    )?;
    let c = build_witness(&WitnessSpec::new(WitnessKind::ChebyshevThreePoint, 1.0, 0.4)).unwrap();
    within(
        "chebyshev witness",
        chebyshev_bound(&c, 1.0).unwrap().value,
        c.tail_probability(1.0, TailKind::TwoSided).unwrap(),
        1e-12,
    )?;
    let ch = build_witness(&WitnessSpec::new(WitnessKind::ChernoffTwoPoint, 1.0, 0.25)).unwrap();
    let at_100 = chernoff_bound(&ch, 1.0, 100.0, Side::Upper).unwrap().value;
    within("chernoff witness at t = 100/a", at_100, 0.25, 1e-3)?;
    let s = smoothed_markov(&m, a).unwrap();
    ensure(s.exact_smoothed_tail == Some(p / 2.0), || {
        format!("smoothed tail {:?}", s.exact_smoothed_tail)
    })?;
    Ok(format!(
        "chernoff(t=100)={at_100:.6}, smoothed two-point tail = p/2 = {}",
        p / 2.0
    ))
}

fn c8_monte_carlo() -> Check {
    let reports = run_corpus(&default_corpus(), 1_000_000, 42);
    let mut worst = 0.0f64;
    for r in &reports {
        ensure(r.reason.is_none(), || format!("{} failed: {:?}", r.method, r.reason))?;
        let exact = r.exact_tail.ok_or_else(|| format!("{} has no exact tail", r.method))?;
        if r.mc_stderr > 0.0 {
            worst = worst.max((r.mc_estimate - exact).abs() / r.mc_stderr);
        }
        ensure(r.mc_concordant(), || {
            format!(
                "{} on {}: mc {} vs exact {exact}",
                r.method, r.query.dist, r.mc_estimate
            )
        })?;
    }
    let out = Command::new(env!("CARGO_BIN_EXE_tailsmith"))
        .args(["verify", "--samples", "1000000", "--seed", "42"])
        .env_remove("TAILSMITH_SEED")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || {
        format!("verify exited with {:?}", out.status.code())
    })?;
    Ok(format!(
        "{} cells, max |mc - exact| = {worst:.2} stderr, verify exit 0",
        reports.len()
    ))
}

/// Minimizer of `f` over `lo, lo + step, ..., hi`.
fn grid_argmin(f: impl Fn(f64) -> f64, lo: f64, hi: f64, step: f64) -> f64 {
    let n = ((hi - lo) / step).round() as usize;
    let (mut best_x, mut best) = (lo, f(lo));
    for i in 1..=n {
        let x = lo + step * i as f64;
        let y = f(x);
        if y < best {
            best = y;
            best_x = x;
        }
    }
    best_x
}

fn c9_optimizer() -> Check {
    let d = std_normal();
    for a in [0.5, 1.0, 2.0] {
        let r = optimize_chernoff(&d, a, Side::Upper).map_err(|e| e.to_string())?;
        within(&format!("t* at a={a}"), r.t_used.unwrap(), a, 1e-8)?;
        within(&format!("bound at a={a}"), r.value, (-a * a / 2.0).exp(), 1e-12)?;
    }
    let oracle = grid_argmin(|t| (-2.0 * t).exp() / (1.0 - t), 0.0, 0.99, 1e-6);
    let r = optimize_chernoff(&exp1(), 2.0, Side::Upper).map_err(|e| e.to_string())?;
    within("exp t*", r.t_used.unwrap(), oracle, 1e-6)?;
    Ok(format!(
        "normal t* exact to 1e-8; exp(1) t*={:.10} grid={oracle}",
        r.t_used.unwrap()
    ))
}

fn c10_iid() -> Check {
    let d = std_normal();
    let four = iid_chernoff(&d, 4, 1.0, 1.0).map_err(|e| e.to_string())?;
    within("n=4", four.value, (-2.0f64).exp(), 1e-12)?;
    let one = iid_chernoff(&d, 1, 1.0, 1.0).unwrap();
    let single = chernoff_bound(&d, 1.0, 1.0, Side::Upper).unwrap();
    ensure(one.raw_value == single.raw_value, || {
        format!("n=1 {} vs {}", one.raw_value, single.raw_value)
    })?;
    Ok(format!("n=4: {:.15}, n=1 identical to single-sample bound", four.value))
}

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            name: "exponential halving",
            limit: secs(1),
            run: c1_exponential_halving,
        },
        Criterion {
            id: 2,
            name: "normal chebyshev",
            limit: secs(1),
            run: c2_normal_chebyshev,
        },
        Criterion {
            id: 3,
            name: "normal chernoff",
            limit: secs(1),
            run: c3_normal_chernoff,
        },
        Criterion {
            id: 4,
            name: "halving identity",
            limit: secs(5),
            run: c4_halving_identity,
        },
        Criterion {
            id: 5,
            name: "dominance suites",
            limit: secs(5),
            run: c5_dominance,
        },
        Criterion {
            id: 6,
            name: "drop-U ordering",
            limit: secs(5),
            run: c6_drop_u_ordering,
        },
        Criterion {
            id: 7,
            name: "witness equalities",
            limit: secs(1),
            run: c7_witnesses,
        },
        Criterion {
            id: 8,
            name: "monte carlo concordance",
            limit: secs(60),
            run: c8_monte_carlo,
        },
        Criterion {
            id: 9,
            name: "chernoff optimizer",
            limit: secs(2),
            run: c9_optimizer,
        },
        Criterion {
            id: 10,
            name: "iid composition",
            limit: secs(1),
            run: c10_iid,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.limit => Err(format!("{detail}; took {elapsed:?} > {:?}", c.limit)),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!(
            "{tag} [{:>2}] {:<24} {:>9.3} ms  {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64() * 1e3
        );
        failed += usize::from(outcome.is_err());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
