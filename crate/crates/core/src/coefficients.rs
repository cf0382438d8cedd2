//! The λ coefficient family.
//!
//! Each λ is a moment integral over `[0, 1]` of a power of `t` (and possibly
//! `1 - t`) against `(tθ + (1 - t)x)^(-2ϑ)`, written in closed form through
//! ₂F₁. Left-side coefficients (λ₁, λ₂, λ₅) take θ = a <= x, right-side
//! ones (λ₃, λ₄, λ₆) take θ = b >= x:
//!
//! ```text
//! λ₁(a,x,s,ϑ,ρ) = B(ρ+s+1, 1) x^(-2ϑ) 2F1(2ϑ, ρ+s+1; ρ+s+2; 1 - a/x)  = ∫ t^(ρ+s)        / (ta+(1-t)x)^(2ϑ)
//! λ₂(a,x,s,ϑ,ρ) = B(ρ+1, s+1) x^(-2ϑ) 2F1(2ϑ, ρ+1;   ρ+s+2; 1 - a/x)  = ∫ t^ρ (1-t)^s     / (ta+(1-t)x)^(2ϑ)
//! λ₃(b,x,s,ϑ,ρ) = B(1, ρ+s+1) b^(-2ϑ) 2F1(2ϑ, 1;     ρ+s+2; 1 - x/b)  = ∫ t^(ρ+s)        / (tb+(1-t)x)^(2ϑ)
//! λ₄(b,x,s,ϑ,ρ) = B(s+1, ρ+1) b^(-2ϑ) 2F1(2ϑ, s+1;   ρ+s+2; 1 - x/b)  = ∫ t^ρ (1-t)^s     / (tb+(1-t)x)^(2ϑ)
//! λ₅(a,x,α)     = x^(-2) 2F1(2, α+1; α+2; 1 - a/x)                    = (α+1) ∫ t^α / (ta+(1-t)x)²
//! λ₆(b,x,α)     = b^(-2) 2F1(2, 1;   α+2; 1 - x/b)                    = (α+1) ∫ t^α / (tb+(1-t)x)²
//! ```
//!
//! [`moment_ts`] and [`moment_t_1mt`] evaluate the right-hand integrals by
//! direct quadrature and serve as the independent check on the closed forms.

use crate::error::{Error, Result};
use crate::quadrature::{integrate_with, QuadConfig};
use crate::specfun::{beta_fn, hyp2f1, HypArgs};

/// Arguments (θ, x, s, ϑ, ρ) of λ₁..λ₄ and of the moment integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaInputs {
    pub theta: f64,
    pub x: f64,
    pub s: f64,
    pub vartheta: f64,
    pub rho: f64,
}

impl LambdaInputs {
    /// Validates everything except the orientation of θ relative to x.
    pub fn new(theta: f64, x: f64, s: f64, vartheta: f64, rho: f64) -> Result<Self> {
        let all_finite = [theta, x, s, vartheta, rho].iter().all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::domain("lambda inputs must be finite"));
        }
        if theta <= 0.0 || x <= 0.0 {
            return Err(Error::domain(format!("need θ > 0 and x > 0, got θ = {theta}, x = {x}")));
        }
        // s = 0 is admitted: the Hölder-type bound evaluates λ₁, λ₃ there.
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::domain(format!("need s in [0, 1], got {s}")));
        }
        if vartheta <= 0.0 || rho < 0.0 {
            return Err(Error::domain(format!("need ϑ > 0 and ρ >= 0, got ϑ = {vartheta}, ρ = {rho}")));
        }
        Ok(Self { theta, x, s, vartheta, rho })
    }

    /// Inputs for λ₁, λ₂: θ = a <= x.
    pub fn left(a: f64, x: f64, s: f64, vartheta: f64, rho: f64) -> Result<Self> {
        let v = Self::new(a, x, s, vartheta, rho)?;
        if a > x {
            return Err(Error::domain(format!("left coefficient needs a <= x, got a = {a}, x = {x}")));
        }
        Ok(v)
    }

    /// Inputs for λ₃, λ₄: θ = b >= x.
    pub fn right(b: f64, x: f64, s: f64, vartheta: f64, rho: f64) -> Result<Self> {
        let v = Self::new(b, x, s, vartheta, rho)?;
        if x > b {
            return Err(Error::domain(format!("right coefficient needs x <= b, got x = {x}, b = {b}")));
        }
        Ok(v)
    }
}

fn denominator(theta: f64, x: f64, t: f64) -> f64 {
    t * theta + (1.0 - t) * x
}

/// ∫₀¹ t^(ρ+s) / (tθ + (1-t)x)^(2ϑ) dt by adaptive quadrature.
pub fn moment_ts(li: &LambdaInputs, cfg: &QuadConfig) -> Result<f64> {
    let LambdaInputs { theta, x, s, vartheta, rho } = *li;
    let r = integrate_with(
        |t: f64| t.powf(rho + s) / denominator(theta, x, t).powf(2.0 * vartheta),
        0.0,
        1.0,
        cfg,
    )?;
    Ok(r.value)
}

/// ∫₀¹ t^ρ (1-t)^s / (tθ + (1-t)x)^(2ϑ) dt by adaptive quadrature.
pub fn moment_t_1mt(li: &LambdaInputs, cfg: &QuadConfig) -> Result<f64> {
    let LambdaInputs { theta, x, s, vartheta, rho } = *li;
    let r = integrate_with(
        |t: f64| t.powf(rho) * (1.0 - t).powf(s) / denominator(theta, x, t).powf(2.0 * vartheta),
        0.0,
        1.0,
        cfg,
    )?;
    Ok(r.value)
}

/// ∫₀¹ t^α / (tθ + (1-t)x)² dt by adaptive quadrature; λ₅ and λ₆ are this
/// integral times (α + 1).
pub fn moment_alpha(theta: f64, x: f64, alpha: f64, cfg: &QuadConfig) -> Result<f64> {
    let r = integrate_with(
        |t: f64| t.powf(alpha) / denominator(theta, x, t).powi(2),
        0.0,
        1.0,
        cfg,
    )?;
    Ok(r.value)
}

fn closed_form(beta: f64, base: f64, exponent: f64, hyp: HypArgs) -> Result<f64> {
    let value = beta * base.powf(-exponent) * hyp2f1(hyp)?;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::domain(format!("coefficient overflows (base {base}, exponent {exponent})")))
    }
}

pub fn lambda1(a: f64, x: f64, s: f64, vartheta: f64, rho: f64) -> Result<f64> {
    LambdaInputs::left(a, x, s, vartheta, rho)?;
    let z = (x - a) / x;
    closed_form(
        beta_fn(rho + s + 1.0, 1.0)?,
        x,
        2.0 * vartheta,
        HypArgs::new(2.0 * vartheta, rho + s + 1.0, rho + s + 2.0, z)?,
    )
}

pub fn lambda2(a: f64, x: f64, s: f64, vartheta: f64, rho: f64) -> Result<f64> {
    LambdaInputs::left(a, x, s, vartheta, rho)?;
    let z = (x - a) / x;
    closed_form(
        beta_fn(rho + 1.0, s + 1.0)?,
        x,
        2.0 * vartheta,
        HypArgs::new(2.0 * vartheta, rho + 1.0, rho + s + 2.0, z)?,
    )
}

pub fn lambda3(b: f64, x: f64, s: f64, vartheta: f64, rho: f64) -> Result<f64> {
    LambdaInputs::right(b, x, s, vartheta, rho)?;
    let z = (b - x) / b;
    closed_form(
        beta_fn(1.0, rho + s + 1.0)?,
        b,
        2.0 * vartheta,
        HypArgs::new(2.0 * vartheta, 1.0, rho + s + 2.0, z)?,
    )
}

pub fn lambda4(b: f64, x: f64, s: f64, vartheta: f64, rho: f64) -> Result<f64> {
    LambdaInputs::right(b, x, s, vartheta, rho)?;
    let z = (b - x) / b;
    closed_form(
        beta_fn(s + 1.0, rho + 1.0)?,
        b,
        2.0 * vartheta,
        HypArgs::new(2.0 * vartheta, s + 1.0, rho + s + 2.0, z)?,
    )
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("need α > 0, got {alpha}")))
    }
}

pub fn lambda5(a: f64, x: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    LambdaInputs::left(a, x, 1.0, 1.0, 0.0)?;
    let z = (x - a) / x;
    closed_form(1.0, x, 2.0, HypArgs::new(2.0, alpha + 1.0, alpha + 2.0, z)?)
}

/// Defined on the right endpoint `b`; the closed form only involves b and x.
pub fn lambda6(b: f64, x: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    LambdaInputs::right(b, x, 1.0, 1.0, 0.0)?;
    let z = (b - x) / b;
    closed_form(1.0, b, 2.0, HypArgs::new(2.0, 1.0, alpha + 2.0, z)?)
}

/// The logarithmic closed form
/// `(1/(x-θ)) · [1/θ - (ln x - ln θ)/(x-θ)]` of ∫₀¹ t / (tθ + (1-t)x)² dt.
/// Equals λ₅(θ, x, 1)/2 for θ < x and λ₆(θ, x, 1)/2 for θ > x.
///
/// Written as `g(u)/θ²` with `u = (x-θ)/θ` and `g(u) = (u - ln(1+u))/u²`;
/// near `u = 0` the printed form cancels badly, so `g` switches to its
/// series there (and extends continuously to θ = x).
pub fn lambda5_log_form(theta: f64, x: f64) -> f64 {
    let u = (x - theta) / theta;
    let g = if u.abs() < 0.25 {
        let mut sum = 0.0;
        let mut power = 1.0;
        for k in 0..60 {
            let term = power / (k as f64 + 2.0);
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
            power *= -u;
        }
        sum
    } else {
        (u - u.ln_1p()) / (u * u)
    };
    g / (theta * theta)
}
