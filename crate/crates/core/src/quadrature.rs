//! Adaptive Gauss-Kronrod quadrature and Riemann-Liouville fractional
//! integrals.
//!
//! [`integrate`] is a globally adaptive 10/21-point Gauss-Kronrod scheme: the
//! panel with the largest error estimate is bisected until the summed
//! estimate drops below `max(abs_tol, rel_tol * |value|)`.
//!
//! The fractional integrals carry a weakly singular kernel `(y - t)^(α-1)`.
//! Substituting `t = y - (y - c) w^(1/α)` turns
//!
//! ```text
//! (1/Γ(α)) ∫_c^y (y - t)^(α-1) h(t) dt  =  ((y - c)^α / Γ(α + 1)) ∫_0^1 h(y - (y - c) w^(1/α)) dw
//! ```
//!
//! so the integrand handed to the quadrature is bounded for every α > 0.
//! The order-zero convention `J⁰h = h` is not represented by
//! [`FractionalOrder`]; callers that need it evaluate `h` directly.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::specfun::gamma_fn;
use crate::sum::CompensatedSum;

pub const DEFAULT_REL_TOL: f64 = 1e-10;
pub const DEFAULT_ABS_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_DEPTH: u32 = 60;
pub const DEFAULT_MAX_PANELS: usize = 20_000;

// Kronrod abscissae on [0, 1]; odd indices are the 10-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("subdivision depth {depth} exceeded on [{lo}, {hi}] (error estimate {error_estimate:e})")]
    DepthExceeded {
        depth: u32,
        lo: f64,
        hi: f64,
        error_estimate: f64,
    },

    #[error("panel limit {panels} reached (error estimate {error_estimate:e})")]
    PanelLimit { panels: usize, error_estimate: f64 },

    #[error("integrand is not finite at t = {at} (value {value})")]
    NonFinite { at: f64, value: f64 },

    #[error("invalid integration range [{lo}, {hi}]")]
    InvalidRange { lo: f64, hi: f64 },

    #[error("tolerances must be positive (rel {rel_tol}, abs {abs_tol})")]
    InvalidTolerance { rel_tol: f64, abs_tol: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: u32,
    pub max_panels: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            rel_tol: DEFAULT_REL_TOL,
            abs_tol: DEFAULT_ABS_TOL,
            max_depth: DEFAULT_MAX_DEPTH,
            max_panels: DEFAULT_MAX_PANELS,
        }
    }
}

impl QuadConfig {
    pub fn with_tolerances(rel_tol: f64, abs_tol: f64) -> Self {
        Self {
            rel_tol,
            abs_tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn sample<F: Fn(f64) -> f64>(f: &F, t: f64) -> std::result::Result<f64, QuadError> {
    let v = f(t);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(QuadError::NonFinite { at: t, value: v })
    }
}

// QUADPACK-style error scaling of |K21 - G10|.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        scaled = res_asc * (200.0 * scaled / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn gauss_kronrod_21<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
) -> std::result::Result<(f64, f64), QuadError> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let f_center = sample(f, center)?;

    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    let mut res_gauss = 0.0;
    let mut res_kronrod = f_center * WGK[10];
    let mut res_abs = res_kronrod.abs();
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = sample(f, center - dx)?;
        let f2 = sample(f, center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let err = (res_kronrod - res_gauss) * half;
    let value = res_kronrod * half;
    let error = rescale_error(err, res_abs * half.abs(), res_asc * half.abs());
    Ok((value, error))
}

const EVALS_PER_PANEL: usize = 21;

/// ∫_lo^hi f(t) dt with the default depth and panel caps.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> std::result::Result<QuadResult, QuadError> {
    integrate_with(f, lo, hi, &QuadConfig::with_tolerances(rel_tol, abs_tol))
}

pub fn integrate_with<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    cfg: &QuadConfig,
) -> std::result::Result<QuadResult, QuadError> {
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(QuadError::InvalidRange { lo, hi });
    }
    if !(cfg.rel_tol > 0.0 && cfg.abs_tol > 0.0) {
        return Err(QuadError::InvalidTolerance {
            rel_tol: cfg.rel_tol,
            abs_tol: cfg.abs_tol,
        });
    }

    let (value, error) = gauss_kronrod_21(&f, lo, hi)?;
    let mut evaluations = EVALS_PER_PANEL;
    let mut heap = BinaryHeap::new();
    heap.push(Panel {
        lo,
        hi,
        value,
        error,
        depth: 0,
    });
    let mut total_value = value;
    let mut total_error = error;

    while total_error > cfg.abs_tol.max(cfg.rel_tol * total_value.abs()) {
        if heap.len() >= cfg.max_panels {
            return Err(QuadError::PanelLimit {
                panels: heap.len(),
                error_estimate: total_error,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        if worst.depth >= cfg.max_depth {
            return Err(QuadError::DepthExceeded {
                depth: worst.depth,
                lo: worst.lo,
                hi: worst.hi,
                error_estimate: total_error,
            });
        }
        let mid = 0.5 * (worst.lo + worst.hi);
        let (v1, e1) = gauss_kronrod_21(&f, worst.lo, mid)?;
        let (v2, e2) = gauss_kronrod_21(&f, mid, worst.hi)?;
        evaluations += 2 * EVALS_PER_PANEL;
        total_value += v1 + v2 - worst.value;
        total_error += e1 + e2 - worst.error;
        let depth = worst.depth + 1;
        heap.push(Panel { lo: worst.lo, hi: mid, value: v1, error: e1, depth });
        heap.push(Panel { lo: mid, hi: worst.hi, value: v2, error: e2, depth });
    }

    // Re-sum from the panels to shed the drift of the running totals.
    let value = heap.iter().map(|p| p.value).collect::<CompensatedSum>().value();
    let error_estimate = heap.iter().map(|p| p.error).sum();
    Ok(QuadResult {
        value,
        error_estimate,
        evaluations,
    })
}

/// Order α > 0 of a Riemann-Liouville integral.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::domain(format!("fractional order must be finite and > 0, got {alpha}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Left-sided integral J_{c+}^α h(y) for y > c.
pub fn rl_left<H: Fn(f64) -> f64>(
    h: H,
    c: f64,
    order: FractionalOrder,
    y: f64,
    cfg: &QuadConfig,
) -> Result<f64> {
    if y.partial_cmp(&c) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::domain(format!("left fractional integral needs y > c, got y = {y}, c = {c}")));
    }
    let alpha = order.value();
    let len = y - c;
    let inv = alpha.recip();
    let r = integrate_with(|w: f64| h(y - len * w.powf(inv)), 0.0, 1.0, cfg)?;
    Ok(len.powf(alpha) / gamma_fn(alpha + 1.0)? * r.value)
}

/// Right-sided integral J_{c-}^α h(y) for y < c.
pub fn rl_right<H: Fn(f64) -> f64>(
    h: H,
    c: f64,
    order: FractionalOrder,
    y: f64,
    cfg: &QuadConfig,
) -> Result<f64> {
    if y.partial_cmp(&c) != Some(std::cmp::Ordering::Less) {
        return Err(Error::domain(format!("right fractional integral needs y < c, got y = {y}, c = {c}")));
    }
    let alpha = order.value();
    let len = c - y;
    let inv = alpha.recip();
    let r = integrate_with(|w: f64| h(y + len * w.powf(inv)), 0.0, 1.0, cfg)?;
    Ok(len.powf(alpha) / gamma_fn(alpha + 1.0)? * r.value)
}
