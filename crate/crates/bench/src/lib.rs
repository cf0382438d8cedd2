//! Benchmark fixtures shared by the criterion targets in `benches/`.

use fracineq::ostrowski::{Interval, Params};

/// A representative interior point: `[1, 3]`, `x = 1.7`.
pub fn sample_interval() -> Interval {
    Interval::new(1.0, 3.0, 1.7).expect("valid interval")
}

/// α = 0.75, s = 0.6, q = 2.5.
pub fn sample_params() -> Params {
    Params::new(0.75, 0.6, 2.5).expect("valid params")
}
