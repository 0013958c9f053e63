//! Markov, Chebyshev and Chernoff tail bounds, their halved counterparts
//! under centered uniform smoothing, and exact and Monte Carlo oracles to
//! check them against.
//!
//! ```
//! use tailsmith::{markov_bound, smoothed_markov, Distribution, TailKind};
//!
//! let x: Distribution = "exp:1".parse().unwrap();
//! assert_eq!(markov_bound(&x, 1.0).unwrap().value, 1.0);
//!
//! // The exponential density is decreasing, so the halved bound holds for X itself.
//! let s = smoothed_markov(&x, 1.0).unwrap();
//! assert_eq!(s.value, 0.5);
//! assert!(s.smoothing_free);
//! assert!(x.tail_probability(1.0, TailKind::Upper).unwrap() <= s.value);
//! ```

pub mod bounds;
pub mod distribution;
mod error;
pub mod literal;
pub mod optimize;
pub mod quadrature;
pub mod rng;
pub mod smoothing;
pub mod verification;
pub mod witnesses;

pub use bounds::{
    chebyshev_bound, chernoff_bound, iid_chernoff, markov_bound, optimize_chernoff, BoundResult, Method, Side,
};
pub use distribution::{Atom, Distribution, Family, Interval, ShapeFacts, Support, TailKind};
pub use error::{Error, Result};
pub use literal::parse_distribution;
pub use smoothing::{
    f1_eval, f2_eval, f3_eval, gauss_bound, smoothed_chebyshev, smoothed_chernoff, smoothed_markov,
    smoothed_markov_with_window, smoothing_free_applicable, Certificate, DropKind, SmoothedBound, SmoothingWindow,
};
pub use verification::{
    mc_tail, verify_query, BoundSpec, BoundedEvent, McEstimate, SmoothingMode, TChoice, TailQuery, Verdict,
    VerificationReport,
};
pub use witnesses::{build_witness, WitnessKind, WitnessSpec};
