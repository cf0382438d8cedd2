//! The fractional Ostrowski functional and its upper bounds.
//!
//! For `0 < a <= x <= b`, `a < b`, α > 0 and `g(u) = 1/u`,
//!
//! ```text
//! S_f = [((x-a)/(ax))^α + ((b-x)/(bx))^α] f(x) - Γ(α+1) [ J_{1/x-}^α (f∘g)(1/b) + J_{1/x+}^α (f∘g)(1/a) ]
//! ```
//!
//! and the integral identity
//!
//! ```text
//! S_f = A ∫₀¹ t^α (ta+(1-t)x)^(-2) f'(ax/(ta+(1-t)x)) dt - B ∫₀¹ t^α (tb+(1-t)x)^(-2) f'(bx/(tb+(1-t)x)) dt
//! A = (x-a)^(α+1) / (ax)^(α-1),   B = (b-x)^(α+1) / (bx)^(α-1)
//! ```
//!
//! [`s_f`] evaluates the left side through the fractional operators and
//! [`s_f_rhs`] the right side by direct quadrature over `[0, 1]`, so their
//! agreement is a genuine check. The five bounds take only the derivative
//! magnitudes `|f'(a)|, |f'(b)|, |f'(x)|`, which lets the same code serve
//! the constant-derivative corollaries.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coefficients::{lambda1, lambda2, lambda3, lambda4, lambda5, lambda6};
use crate::error::{Error, Result};
use crate::functions::TestFunction;
use crate::quadrature::{integrate_with, rl_left, rl_right, FractionalOrder, QuadConfig};
use crate::specfun::gamma_fn;

/// Relative slack (scaled by `max(1, bound)`) before `|S_f| > bound` counts
/// as a violation.
pub const VIOLATION_SLACK: f64 = 1e-12;

/// `0 < a <= x <= b` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    a: f64,
    b: f64,
    x: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64, x: f64) -> Result<Self> {
        if ![a, b, x].iter().all(|v| v.is_finite()) {
            return Err(Error::domain("interval endpoints must be finite"));
        }
        if a == b {
            return Err(Error::DegenerateInterval(a));
        }
        if !(a > 0.0 && a < b && a <= x && x <= b) {
            return Err(Error::domain(format!("need 0 < a <= x <= b, a < b; got a = {a}, b = {b}, x = {x}")));
        }
        Ok(Self { a, b, x })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn x(&self) -> f64 {
        self.x
    }

    /// The weights `(x-a)^(α+1)/(ax)^(α-1)` and `(b-x)^(α+1)/(bx)^(α-1)`.
    pub fn side_weights(&self, alpha: f64) -> (f64, f64) {
        let Self { a, b, x } = *self;
        (
            (x - a).powf(alpha + 1.0) / (a * x).powf(alpha - 1.0),
            (b - x).powf(alpha + 1.0) / (b * x).powf(alpha - 1.0),
        )
    }
}

/// Fractional order α, convexity order s and power-mean exponent q, with
/// the Hölder conjugate p when q > 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Params {
    alpha: f64,
    s: f64,
    q: f64,
    p: Option<f64>,
}

impl Params {
    pub fn new(alpha: f64, s: f64, q: f64) -> Result<Self> {
        FractionalOrder::new(alpha)?;
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::domain(format!("need s in (0, 1], got {s}")));
        }
        if !(q.is_finite() && q >= 1.0) {
            return Err(Error::domain(format!("need finite q >= 1, got {q}")));
        }
        let p = (q > 1.0).then(|| q / (q - 1.0));
        Ok(Self { alpha, s, q, p })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn s(&self) -> f64 {
        self.s
    }
    pub fn q(&self) -> f64 {
        self.q
    }
    pub fn p(&self) -> Option<f64> {
        self.p
    }

    fn conjugate(&self, theorem: TheoremId) -> Result<f64> {
        self.p.ok_or_else(|| {
            Error::domain(format!("{} requires q > 1, got q = {}", theorem.label(), self.q))
        })
    }
}

/// `|f'(a)|, |f'(b)|, |f'(x)|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivMagnitudes {
    at_a: f64,
    at_b: f64,
    at_x: f64,
}

impl DerivMagnitudes {
    pub fn new(at_a: f64, at_b: f64, at_x: f64) -> Result<Self> {
        let ok = [at_a, at_b, at_x].iter().all(|v| v.is_finite() && *v >= 0.0);
        if !ok {
            return Err(Error::domain("derivative magnitudes must be finite and nonnegative"));
        }
        Ok(Self { at_a, at_b, at_x })
    }

    pub fn uniform(m: f64) -> Result<Self> {
        Self::new(m, m, m)
    }

    pub fn sample(tf: &TestFunction, iv: &Interval) -> Result<Self> {
        Self::new(tf.deriv(iv.a).abs(), tf.deriv(iv.b).abs(), tf.deriv(iv.x).abs())
    }

    pub fn at_a(&self) -> f64 {
        self.at_a
    }
    pub fn at_b(&self) -> f64 {
        self.at_b
    }
    pub fn at_x(&self) -> f64 {
        self.at_x
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "b22")]
    T22,
    #[serde(rename = "b23")]
    T23,
    #[serde(rename = "b24")]
    T24,
    #[serde(rename = "b25")]
    T25,
    #[serde(rename = "b26")]
    T26,
}

impl TheoremId {
    pub const ALL: [TheoremId; 5] = [Self::T22, Self::T23, Self::T24, Self::T25, Self::T26];

    /// Column label, `b22` .. `b26`.
    pub fn label(self) -> &'static str {
        match self {
            Self::T22 => "b22",
            Self::T23 => "b23",
            Self::T24 => "b24",
            Self::T25 => "b25",
            Self::T26 => "b26",
        }
    }

    /// Whether the bound applies only for q > 1.
    pub fn needs_conjugate(self) -> bool {
        matches!(self, Self::T25 | Self::T26)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    /// Accepts `2.2`, `22`, `b22` and `thm22` style spellings.
    fn from_str(s: &str) -> Result<Self> {
        let digits: String = s
            .trim()
            .trim_start_matches("thm")
            .trim_start_matches('b')
            .chars()
            .filter(|c| *c != '.')
            .collect();
        match digits.as_str() {
            "22" => Ok(Self::T22),
            "23" => Ok(Self::T23),
            "24" => Ok(Self::T24),
            "25" => Ok(Self::T25),
            "26" => Ok(Self::T26),
            _ => Err(Error::UnknownTheorem(s.to_string())),
        }
    }
}

fn order(alpha: f64) -> Result<FractionalOrder> {
    FractionalOrder::new(alpha)
}

/// The functional S_f(g; α; x, a, b), through the fractional operators.
pub fn s_f(tf: &TestFunction, iv: &Interval, alpha: f64, cfg: &QuadConfig) -> Result<f64> {
    let ord = order(alpha)?;
    let Interval { a, b, x } = *iv;
    let h = |u: f64| tf.eval(1.0 / u);
    let weight = ((x - a) / (a * x)).powf(alpha) + ((b - x) / (b * x)).powf(alpha);
    // Empty ranges at x = a or x = b contribute zero.
    let right = if x < b { rl_right(h, 1.0 / x, ord, 1.0 / b, cfg)? } else { 0.0 };
    let left = if x > a { rl_left(h, 1.0 / x, ord, 1.0 / a, cfg)? } else { 0.0 };
    Ok(weight * tf.eval(x) - gamma_fn(alpha + 1.0)? * (right + left))
}

/// The right-hand side of the identity, by quadrature over `[0, 1]`.
pub fn s_f_rhs(tf: &TestFunction, iv: &Interval, alpha: f64, cfg: &QuadConfig) -> Result<f64> {
    order(alpha)?;
    let Interval { a, b, x } = *iv;
    let (wa, wb) = iv.side_weights(alpha);
    let side = |theta: f64| -> Result<f64> {
        let r = integrate_with(
            |t: f64| {
                let d = t * theta + (1.0 - t) * x;
                t.powf(alpha) / (d * d) * tf.deriv(theta * x / d)
            },
            0.0,
            1.0,
            cfg,
        )?;
        Ok(r.value)
    };
    let left = if x > a { wa * side(a)? } else { 0.0 };
    let right = if x < b { wb * side(b)? } else { 0.0 };
    Ok(left - right)
}

/// `|s_f - s_f_rhs| / max(1, |s_f|)`; zero when the identity holds.
pub fn identity_residual(tf: &TestFunction, iv: &Interval, alpha: f64, cfg: &QuadConfig) -> Result<f64> {
    let lhs = s_f(tf, iv, alpha, cfg)?;
    let rhs = s_f_rhs(tf, iv, alpha, cfg)?;
    Ok((lhs - rhs).abs() / lhs.abs().max(1.0))
}

/// `f(x) - (ab/(b-a)) ∫_a^b f(u)/u² du`, the classical (α = 1) deviation,
/// by plain quadrature. At α = 1, `S_f = (b-a)/(ab)` times this.
pub fn classical_deviation(tf: &TestFunction, iv: &Interval, cfg: &QuadConfig) -> Result<f64> {
    let Interval { a, b, x } = *iv;
    let r = integrate_with(|u: f64| tf.eval(u) / (u * u), a, b, cfg)?;
    Ok(tf.eval(x) - a * b / (b - a) * r.value)
}

// weight · (λ_x |f'(x)|^q + λ_end |f'(end)|^q)^(1/q), skipped when the weight vanishes.
fn side_term(
    weight: f64,
    q: f64,
    lambdas: impl FnOnce() -> Result<(f64, f64)>,
    d_x: f64,
    d_end: f64,
) -> Result<f64> {
    if weight == 0.0 {
        return Ok(0.0);
    }
    let (lx, lend) = lambdas()?;
    Ok(weight * (lx * d_x.powf(q) + lend * d_end.powf(q)).powf(q.recip()))
}

fn power_mean_bound(
    d: &DerivMagnitudes,
    iv: &Interval,
    pr: &Params,
    (vartheta, rho): (f64, f64),
    q: f64,
    scale: f64,
) -> Result<f64> {
    let Interval { a, b, x } = *iv;
    let s = pr.s;
    let (wa, wb) = iv.side_weights(pr.alpha);
    let left = side_term(
        wa,
        q,
        || Ok((lambda1(a, x, s, vartheta, rho)?, lambda2(a, x, s, vartheta, rho)?)),
        d.at_x,
        d.at_a,
    )?;
    let right = side_term(
        wb,
        q,
        || Ok((lambda3(b, x, s, vartheta, rho)?, lambda4(b, x, s, vartheta, rho)?)),
        d.at_x,
        d.at_b,
    )?;
    Ok(scale * (left + right))
}

pub fn bound_thm22(d: &DerivMagnitudes, iv: &Interval, pr: &Params) -> Result<f64> {
    let q = pr.q;
    power_mean_bound(d, iv, pr, (q, pr.alpha * q), q, 1.0)
}

pub fn bound_thm23(d: &DerivMagnitudes, iv: &Interval, pr: &Params) -> Result<f64> {
    let q = pr.q;
    let scale = (1.0 / (pr.alpha + 1.0)).powf(1.0 - 1.0 / q);
    power_mean_bound(d, iv, pr, (q, pr.alpha), q, scale)
}

pub fn bound_thm24(d: &DerivMagnitudes, iv: &Interval, pr: &Params) -> Result<f64> {
    let Interval { a, b, x } = *iv;
    let Params { alpha, s, q, .. } = *pr;
    let outer = 1.0 - 1.0 / q;
    let (wa, wb) = iv.side_weights(alpha);
    let left = side_term(
        wa,
        q,
        || Ok((lambda1(a, x, s, 1.0, alpha)?, lambda2(a, x, s, 1.0, alpha)?)),
        d.at_x,
        d.at_a,
    )?;
    let right = side_term(
        wb,
        q,
        || Ok((lambda3(b, x, s, 1.0, alpha)?, lambda4(b, x, s, 1.0, alpha)?)),
        d.at_x,
        d.at_b,
    )?;
    let l5 = if left > 0.0 { lambda5(a, x, alpha)?.powf(outer) } else { 0.0 };
    let l6 = if right > 0.0 { lambda6(b, x, alpha)?.powf(outer) } else { 0.0 };
    Ok((1.0 / (alpha + 1.0)).powf(outer) * (l5 * left + l6 * right))
}

pub fn bound_thm25(d: &DerivMagnitudes, iv: &Interval, pr: &Params) -> Result<f64> {
    let p = pr.conjugate(TheoremId::T25)?;
    let scale = (1.0 / (pr.alpha * p + 1.0)).powf(1.0 / p);
    power_mean_bound(d, iv, pr, (pr.q, 0.0), pr.q, scale)
}

pub fn bound_thm26(d: &DerivMagnitudes, iv: &Interval, pr: &Params) -> Result<f64> {
    let p = pr.conjugate(TheoremId::T26)?;
    let Interval { a, b, x } = *iv;
    let Params { alpha, s, q, .. } = *pr;
    let (wa, wb) = iv.side_weights(alpha);
    let mean = |d_end: f64| ((d.at_x.powf(q) + d_end.powf(q)) / (s + 1.0)).powf(1.0 / q);
    let left = if wa > 0.0 {
        wa * lambda1(a, x, 0.0, p, alpha * p)?.powf(1.0 / p) * mean(d.at_a)
    } else {
        0.0
    };
    let right = if wb > 0.0 {
        wb * lambda3(b, x, 0.0, p, alpha * p)?.powf(1.0 / p) * mean(d.at_b)
    } else {
        0.0
    };
    Ok(left + right)
}

pub fn bound(theorem: TheoremId, d: &DerivMagnitudes, iv: &Interval, pr: &Params) -> Result<f64> {
    match theorem {
        TheoremId::T22 => bound_thm22(d, iv, pr),
        TheoremId::T23 => bound_thm23(d, iv, pr),
        TheoremId::T24 => bound_thm24(d, iv, pr),
        TheoremId::T25 => bound_thm25(d, iv, pr),
        TheoremId::T26 => bound_thm26(d, iv, pr),
    }
}

/// The bound of `theorem` under `|f'| <= m` on `[a, b]`, in the factored
/// form with `m` pulled out of the braces. Equal to [`bound`] with all three
/// magnitudes set to `m`.
pub fn corollary_bound(theorem: TheoremId, m: f64, iv: &Interval, pr: &Params) -> Result<f64> {
    if !(m.is_finite() && m >= 0.0) {
        return Err(Error::domain(format!("need finite M >= 0, got {m}")));
    }
    let Interval { a, b, x } = *iv;
    let Params { alpha, s, q, .. } = *pr;
    let (wa, wb) = iv.side_weights(alpha);
    let inv_q = 1.0 / q;
    let summed = |vartheta: f64, rho: f64| -> Result<(f64, f64)> {
        let left = if wa > 0.0 {
            wa * (lambda1(a, x, s, vartheta, rho)? + lambda2(a, x, s, vartheta, rho)?).powf(inv_q)
        } else {
            0.0
        };
        let right = if wb > 0.0 {
            wb * (lambda3(b, x, s, vartheta, rho)? + lambda4(b, x, s, vartheta, rho)?).powf(inv_q)
        } else {
            0.0
        };
        Ok((left, right))
    };
    let value = match theorem {
        TheoremId::T22 => {
            let (l, r) = summed(q, alpha * q)?;
            m * (l + r)
        }
        TheoremId::T23 => {
            let (l, r) = summed(q, alpha)?;
            m * (1.0 / (alpha + 1.0)).powf(1.0 - inv_q) * (l + r)
        }
        TheoremId::T24 => {
            let (l, r) = summed(1.0, alpha)?;
            let outer = 1.0 - inv_q;
            let l5 = if l > 0.0 { lambda5(a, x, alpha)?.powf(outer) } else { 0.0 };
            let l6 = if r > 0.0 { lambda6(b, x, alpha)?.powf(outer) } else { 0.0 };
            m * (1.0 / (alpha + 1.0)).powf(outer) * (l5 * l + l6 * r)
        }
        TheoremId::T25 => {
            let p = pr.conjugate(theorem)?;
            let (l, r) = summed(q, 0.0)?;
            m * (1.0 / (alpha * p + 1.0)).powf(1.0 / p) * (l + r)
        }
        TheoremId::T26 => {
            let p = pr.conjugate(theorem)?;
            let l = if wa > 0.0 { wa * lambda1(a, x, 0.0, p, alpha * p)?.powf(1.0 / p) } else { 0.0 };
            let r = if wb > 0.0 { wb * lambda3(b, x, 0.0, p, alpha * p)?.powf(1.0 / p) } else { 0.0 };
            m * (2.0 / (s + 1.0)).powf(inv_q) * (l + r)
        }
    };
    Ok(value)
}

/// `f(2ab/(a+b))`, the fractional Hermite-Hadamard mean, `(f(a)+f(b))/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HadamardTriple {
    pub left: f64,
    pub middle: f64,
    pub right: f64,
}

impl HadamardTriple {
    /// `left <= middle <= right` up to `slack · max(1, |·|)`.
    pub fn is_ordered(&self, slack: f64) -> bool {
        let tol = |u: f64, v: f64| slack * 1f64.max(u.abs()).max(v.abs());
        self.left <= self.middle + tol(self.left, self.middle)
            && self.middle <= self.right + tol(self.middle, self.right)
    }
}

pub fn hh_fractional_check(
    tf: &TestFunction,
    a: f64,
    b: f64,
    alpha: f64,
    cfg: &QuadConfig,
) -> Result<HadamardTriple> {
    let ord = order(alpha)?;
    if !(a > 0.0 && a < b && b.is_finite()) {
        return Err(Error::domain(format!("need 0 < a < b, got [{a}, {b}]")));
    }
    let h = |u: f64| tf.eval(1.0 / u);
    let sum = rl_right(h, 1.0 / a, ord, 1.0 / b, cfg)? + rl_left(h, 1.0 / b, ord, 1.0 / a, cfg)?;
    let middle = gamma_fn(alpha + 1.0)? / 2.0 * (a * b / (b - a)).powf(alpha) * sum;
    Ok(HadamardTriple {
        left: tf.eval(2.0 * a * b / (a + b)),
        middle,
        right: 0.5 * (tf.eval(a) + tf.eval(b)),
    })
}

/// `|S_f|` against every applicable bound at one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub abs_sf: f64,
    pub b22: f64,
    pub b23: f64,
    pub b24: f64,
    pub b25: Option<f64>,
    pub b26: Option<f64>,
    pub tightest: TheoremId,
    pub violations: Vec<TheoremId>,
}

impl BoundReport {
    /// Builds a report from `|S_f|` and the present bounds, in theorem order.
    pub fn from_bounds(abs_sf: f64, bounds: &[(TheoremId, f64)]) -> Self {
        let get = |id: TheoremId| bounds.iter().find(|(t, _)| *t == id).map(|(_, v)| *v);
        let tightest = bounds
            .iter()
            .fold(None, |best: Option<(TheoremId, f64)>, &(id, v)| match best {
                Some((_, bv)) if bv <= v => best,
                _ => Some((id, v)),
            })
            .map(|(id, _)| id)
            .unwrap_or(TheoremId::T22);
        let violations = bounds
            .iter()
            .filter(|(_, v)| abs_sf > v + VIOLATION_SLACK * v.max(1.0))
            .map(|(id, _)| *id)
            .collect();
        Self {
            abs_sf,
            b22: get(TheoremId::T22).unwrap_or(f64::NAN),
            b23: get(TheoremId::T23).unwrap_or(f64::NAN),
            b24: get(TheoremId::T24).unwrap_or(f64::NAN),
            b25: get(TheoremId::T25),
            b26: get(TheoremId::T26),
            tightest,
            violations,
        }
    }

    /// Present bounds in theorem order.
    pub fn bounds(&self) -> Vec<(TheoremId, f64)> {
        let mut out = vec![
            (TheoremId::T22, self.b22),
            (TheoremId::T23, self.b23),
            (TheoremId::T24, self.b24),
        ];
        out.extend(self.b25.map(|v| (TheoremId::T25, v)));
        out.extend(self.b26.map(|v| (TheoremId::T26, v)));
        out
    }
}

/// Computes `|S_f|` and all bounds whose preconditions hold. The caller is
/// responsible for the convexity hypothesis on `|f'|^q`.
pub fn evaluate_all_bounds(
    tf: &TestFunction,
    iv: &Interval,
    pr: &Params,
    cfg: &QuadConfig,
) -> Result<BoundReport> {
    let abs_sf = s_f(tf, iv, pr.alpha, cfg)?.abs();
    let d = DerivMagnitudes::sample(tf, iv)?;
    let bounds = TheoremId::ALL
        .into_iter()
        .filter(|id| !id.needs_conjugate() || pr.p.is_some())
        .map(|id| Ok((id, bound(id, &d, iv, pr)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundReport::from_bounds(abs_sf, &bounds))
}
