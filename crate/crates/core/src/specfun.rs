//! Real-valued special functions: Gamma, log-Gamma, Beta and the Gauss
//! hypergeometric function ₂F₁ on `0 <= z < 1`.
//!
//! Everything is computed in `f64`. Gamma uses a Lanczos approximation
//! (g = 7, nine coefficients) with the reflection formula below 1/2, and an
//! exact product for integer arguments. ₂F₁ is summed from its power series
//! with a term recurrence and compensated summation, optionally after the
//! Euler transformation
//!
//! ```text
//! 2F1(a, b; c; z) = (1 - z)^(c - a - b) · 2F1(c - a, c - b; c; z)
//! ```
//!
//! which shortens the series considerably when `c - a - b < 0` and `z` is
//! close to one.

use std::f64::consts::PI;

use thiserror::Error;

use crate::sum::CompensatedSum;

/// Hard cap on the number of series terms summed by [`hyp2f1`].
pub const MAX_SERIES_TERMS: usize = 1_000_000;

/// Largest argument for which Γ(x) is representable as an `f64`.
pub const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const SQRT_2PI: f64 = 2.506_628_274_631_000_5;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// Relative size of the estimated series tail at which summation stops.
const SERIES_TAIL_TOL: f64 = 1e-17;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecfunError {
    #[error("{func}: argument outside domain ({detail})")]
    Domain { func: &'static str, detail: String },

    #[error("{func}: result overflows f64 at x = {arg}")]
    Overflow { func: &'static str, arg: f64 },

    #[error("2F1 series did not converge within {terms} terms (a={a}, b={b}, c={c}, z={z})")]
    NonConvergence {
        terms: usize,
        a: f64,
        b: f64,
        c: f64,
        z: f64,
    },
}

fn domain(func: &'static str, detail: String) -> SpecfunError {
    SpecfunError::Domain { func, detail }
}

fn lanczos_sum(xm1: f64) -> f64 {
    LANCZOS_COEFFS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS_COEFFS[0], |acc, (i, c)| acc + c / (xm1 + (i + 1) as f64))
}

// Beyond this the Lanczos sum's limiting bias (about 2e-13) dominates, so
// the Stirling series takes over.
const STIRLING_MIN: f64 = 10.0;

// B_2k / (2k (2k-1)), k = 1..8.
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

// ln Γ(x) - [(x - 1/2) ln x - x + ln(2π)/2] for x >= STIRLING_MIN.
fn stirling_correction(x: f64) -> f64 {
    let r2 = 1.0 / (x * x);
    STIRLING_COEFFS.iter().rev().fold(0.0, |acc, c| acc * r2 + c) / x
}

fn gamma_stirling(x: f64) -> f64 {
    // x^(x - 1/2) from exact inputs, split to stay finite.
    let half = x.powf(0.5 * (x - 0.5));
    SQRT_2PI * ((half * (-x).exp()) * half) * stirling_correction(x).exp()
}

// Γ(x) for x >= 1/2, no domain checks.
fn gamma_lanczos(x: f64) -> f64 {
    let xm1 = x - 1.0;
    let t = xm1 + LANCZOS_G + 0.5;
    // t^(x - 1/2) is split in two halves so that it stays finite up to
    // GAMMA_MAX_ARG even though it alone would overflow.
    let half = t.powf(0.5 * (xm1 + 0.5));
    SQRT_2PI * ((half * (-t).exp()) * half) * lanczos_sum(xm1)
}

/// Γ(x) for finite `x > 0`.
pub fn gamma_fn(x: f64) -> Result<f64, SpecfunError> {
    if !x.is_finite() || x <= 0.0 {
        return Err(domain("gamma", format!("x = {x}, need finite x > 0")));
    }
    if x > GAMMA_MAX_ARG {
        return Err(SpecfunError::Overflow { func: "gamma", arg: x });
    }
    let value = if x.fract() == 0.0 {
        (2..x as u32).fold(1.0, |acc, k| acc * k as f64)
    } else if x < 0.5 {
        PI / ((PI * x).sin() * gamma_lanczos(1.0 - x))
    } else if x < STIRLING_MIN {
        gamma_lanczos(x)
    } else {
        gamma_stirling(x)
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(SpecfunError::Overflow { func: "gamma", arg: x })
    }
}

/// ln Γ(x) for finite `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64, SpecfunError> {
    if !x.is_finite() || x <= 0.0 {
        return Err(domain("ln_gamma", format!("x = {x}, need finite x > 0")));
    }
    Ok(ln_gamma_unchecked(x))
}

fn ln_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        (PI / (PI * x).sin()).ln() - ln_gamma_unchecked(1.0 - x)
    } else if x >= STIRLING_MIN {
        HALF_LN_2PI + (x - 0.5) * x.ln() - x + stirling_correction(x)
    } else {
        let xm1 = x - 1.0;
        let t = xm1 + LANCZOS_G + 0.5;
        HALF_LN_2PI + (xm1 + 0.5) * t.ln() - t + lanczos_sum(xm1).ln()
    }
}

/// B(x, y) = Γ(x)Γ(y)/Γ(x+y).
///
/// Uses the Gamma ratio directly while it is representable and falls back to
/// `exp(lnΓ(x) + lnΓ(y) - lnΓ(x+y))` otherwise.
pub fn beta_fn(x: f64, y: f64) -> Result<f64, SpecfunError> {
    if !(x.is_finite() && y.is_finite()) || x <= 0.0 || y <= 0.0 {
        return Err(domain("beta", format!("(x, y) = ({x}, {y}), need x > 0, y > 0")));
    }
    if x + y < GAMMA_MAX_ARG - 1.0 {
        let num = gamma_fn(x)? * gamma_fn(y)?;
        if num.is_finite() {
            return Ok(num / gamma_fn(x + y)?);
        }
    }
    let ln_b = ln_gamma_unchecked(x) + ln_gamma_unchecked(y) - ln_gamma_unchecked(x + y);
    let value = ln_b.exp();
    if value.is_finite() {
        Ok(value)
    } else {
        Err(SpecfunError::Overflow { func: "beta", arg: x })
    }
}

/// Arguments of ₂F₁(a, b; c; z), validated on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypArgs {
    a: f64,
    b: f64,
    c: f64,
    z: f64,
}

impl HypArgs {
    pub fn new(a: f64, b: f64, c: f64, z: f64) -> Result<Self, SpecfunError> {
        if ![a, b, c, z].iter().all(|v| v.is_finite()) {
            return Err(domain("2F1", format!("non-finite argument ({a}, {b}; {c}; {z})")));
        }
        if c <= 0.0 {
            return Err(domain("2F1", format!("c = {c}, need c > 0")));
        }
        if !(0.0..1.0).contains(&z) {
            return Err(domain("2F1", format!("z = {z}, need 0 <= z < 1")));
        }
        Ok(Self { a, b, c, z })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn z(&self) -> f64 {
        self.z
    }
}

/// How [`hyp2f1_route`] evaluates the function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesRoute {
    /// Pick between the two below.
    Auto,
    /// Sum the defining power series.
    Direct,
    /// Apply the Euler transformation, then sum.
    Euler,
}

/// ₂F₁(a, b; c; z) for `0 <= z < 1`.
pub fn hyp2f1(args: HypArgs) -> Result<f64, SpecfunError> {
    hyp2f1_route(args, SeriesRoute::Auto)
}

pub fn hyp2f1_route(args: HypArgs, route: SeriesRoute) -> Result<f64, SpecfunError> {
    let HypArgs { a, b, c, z } = args;
    if z == 0.0 {
        return Ok(1.0);
    }
    let route = match route {
        SeriesRoute::Auto if prefers_euler(a, b, c, z) => SeriesRoute::Euler,
        SeriesRoute::Auto => SeriesRoute::Direct,
        r => r,
    };
    let value = match route {
        SeriesRoute::Euler => {
            (1.0 - z).powf(c - a - b) * power_series(c - a, c - b, c, z)?
        }
        _ => power_series(a, b, c, z)?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(SpecfunError::Overflow { func: "2F1", arg: z })
    }
}

// The transformed series decays like n^(c-a-b-1) z^n instead of
// n^(a+b-c-1) z^n. Its leading coefficients alternate in sign when c - a or
// c - b is negative, so it is only used when every term is nonnegative.
fn prefers_euler(a: f64, b: f64, c: f64, z: f64) -> bool {
    z > 0.5 && c - a - b < 0.0 && c - a >= 0.0 && c - b >= 0.0
}

fn power_series(a: f64, b: f64, c: f64, z: f64) -> Result<f64, SpecfunError> {
    let mut sum = CompensatedSum::new();
    sum.add(1.0);
    let mut term = 1.0_f64;
    // The tail estimate is only trusted once the term ratio has settled.
    let settle = 2.0 * (a.abs() + b.abs() + c.abs()) + 2.0;
    let ratio = |n: f64| (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    for n in 0..MAX_SERIES_TERMS {
        let nf = n as f64;
        term *= ratio(nf);
        if term == 0.0 {
            return Ok(sum.value());
        }
        sum.add(term);
        let total = sum.value();
        if !total.is_finite() {
            return Err(SpecfunError::Overflow { func: "2F1", arg: z });
        }
        if nf + 1.0 >= settle {
            let r = ratio(nf + 1.0).abs().max(z);
            if r < 1.0 && term.abs() * r / (1.0 - r) <= SERIES_TAIL_TOL * total.abs() {
                return Ok(total);
            }
        }
    }
    Err(SpecfunError::NonConvergence {
        terms: MAX_SERIES_TERMS,
        a,
        b,
        c,
        z,
    })
}
