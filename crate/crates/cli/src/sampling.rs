//! Seeded random evaluation points.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// `(a, b, x)` with `0 < a <= x <= b <= 10`: `a` log-uniform on
/// `[0.01, 10)`, `b` uniform on `(a, 10]`, `x` uniform on `[a, b]`.
/// Keeping `b/a <= 1000` holds every hypergeometric argument at or below
/// 0.999.
pub fn interval(rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
    let a = rng.gen_range(0.01f64.ln()..10f64.ln()).exp();
    let b = rng.gen_range(a..=10.0).max(a * (1.0 + 1e-9));
    let x = rng.gen_range(a..=b);
    (a, b, x)
}

pub fn alpha(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(0.1..=3.0)
}

pub fn s(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(0.1..=1.0)
}

/// `q = 1` a quarter of the time, otherwise uniform on `[1.25, 4]`.
pub fn q(rng: &mut ChaCha8Rng) -> f64 {
    if rng.gen_bool(0.25) {
        1.0
    } else {
        rng.gen_range(1.25..=4.0)
    }
}

/// A full sweep point `[alpha, s, q, a, b, x]`.
pub fn point(rng: &mut ChaCha8Rng) -> [f64; 6] {
    let (alpha, s, q) = (alpha(rng), s(rng), q(rng));
    let (a, b, x) = interval(rng);
    [alpha, s, q, a, b, x]
}
