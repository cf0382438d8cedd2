//! Test-function corpus and a grid certifier for harmonic s-convexity.
//!
//! A function `g` on `I ⊂ (0, ∞)` is harmonically s-convex when
//!
//! ```text
//! g(xy / (tx + (1 - t)y)) <= t^s g(y) + (1 - t)^s g(x)    for x, y ∈ I, t ∈ [0, 1].
//! ```
//!
//! The bounds in [`crate::ostrowski`] need this property for `|f'|^q`.
//! [`is_harmonically_s_convex`] checks it on a deterministic grid and reports
//! the worst violating triple when it fails.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default number of grid points per axis.
pub const DEFAULT_GRID_DENSITY: usize = 64;
/// Smallest accepted grid density.
pub const MIN_GRID_DENSITY: usize = 16;
const VIOLATION_TOL: f64 = 1e-10;

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A differentiable function on (0, ∞) with its analytic derivative.
#[derive(Clone)]
pub struct TestFunction {
    pub name: String,
    pub f: RealFn,
    pub fprime: RealFn,
    /// Why `|f'|^q` is harmonically s-convex, if there is an argument;
    /// `None` means "certify numerically".
    pub analytic_certificate: Option<String>,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("name", &self.name)
            .field("analytic_certificate", &self.analytic_certificate)
            .finish_non_exhaustive()
    }
}

impl TestFunction {
    pub fn new(
        name: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        fprime: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            f: Arc::new(f),
            fprime: Arc::new(fprime),
            analytic_certificate: None,
        }
    }

    pub fn with_certificate(mut self, note: impl Into<String>) -> Self {
        self.analytic_certificate = Some(note.into());
        self
    }

    pub fn eval(&self, u: f64) -> f64 {
        (self.f)(u)
    }

    pub fn deriv(&self, u: f64) -> f64 {
        (self.fprime)(u)
    }

    /// `u ↦ |f'(u)|^q`, the quantity whose convexity the bounds require.
    pub fn deriv_power(&self, q: f64) -> impl Fn(f64) -> f64 + Send + Sync + '_ {
        move |u| self.deriv(u).abs().powf(q)
    }

    /// Largest scaled mismatch between `fprime` and a central difference of
    /// `f` at step `1e-5·u`, over the sample points.
    pub fn derivative_mismatch(&self, samples: &[f64]) -> f64 {
        samples
            .iter()
            .map(|&u| {
                let h = 1e-5 * u;
                let fd = (self.eval(u + h) - self.eval(u - h)) / (2.0 * h);
                let d = self.deriv(u);
                (fd - d).abs() / d.abs().max(1.0)
            })
            .fold(0.0, f64::max)
    }
}

/// The standard corpus.
pub fn catalog() -> Vec<TestFunction> {
    vec![
        TestFunction::new("identity", |u| u, |_| 1.0).with_certificate(
            "|f'|^q = 1 and t^s + (1-t)^s >= 1 on [0,1], so every s in (0,1] and q >= 1",
        ),
        TestFunction::new("neg_log", |u: f64| -u.ln(), |u| -1.0 / u).with_certificate(
            "|f'|^q = u^-q; v -> v^q is convex for q >= 1 and nonnegative, so every s in (0,1]",
        ),
        TestFunction::new("quadratic", |u| 0.5 * u * u, |u| u).with_certificate(
            "|f'|^q = u^q; v -> v^-q is convex on (0,inf) and nonnegative, so every s in (0,1]",
        ),
        TestFunction::new("reciprocal", |u| 1.0 / u, |u| -1.0 / (u * u)).with_certificate(
            "|f'|^q = u^-2q; v -> v^2q is convex and nonnegative, so every s in (0,1]",
        ),
        TestFunction::new("exp", f64::exp, f64::exp).with_certificate(
            "|f'|^q = e^(qu); v -> e^(q/v) is convex on (0,inf) and nonnegative, so every s in (0,1]",
        ),
        // |f'|^q = 2^-q u^(-q/2): harmonically convex only for q >= 2.
        TestFunction::new("sqrt", f64::sqrt, |u: f64| 0.5 / u.sqrt()),
    ]
}

/// Deliberately broken entries, resolvable by name but not part of the
/// corpus.
pub fn fixtures() -> Vec<TestFunction> {
    vec![
        TestFunction::new("constant", |_| 1.0, |_| 0.0),
        // f' should be 2u.
        TestFunction::new("corrupt_deriv", |u| u * u, |u| u),
    ]
}

/// Raw functions that can be certified directly (not through `|f'|^q`).
pub fn probe(name: &str) -> Option<RealFn> {
    match name {
        "neg_identity" => Some(Arc::new(|x: f64| -x)),
        _ => None,
    }
}

/// Finds a function by name in the catalog, then in the fixtures.
pub fn lookup(name: &str) -> Result<TestFunction> {
    catalog()
        .into_iter()
        .chain(fixtures())
        .find(|tf| tf.name == name)
        .ok_or_else(|| Error::UnknownFunction(name.to_string()))
}

/// A grid point violating the convexity inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub x: f64,
    pub y: f64,
    pub t: f64,
    /// `g(H) - (t^s g(y) + (1-t)^s g(x))`.
    pub violation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvexityVerdict {
    pub passed: bool,
    pub witness: Option<Witness>,
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { hi } else { lo + step * i as f64 })
        .collect()
}

fn checked(g: &(dyn Fn(f64) -> f64 + Sync), at: f64) -> Result<f64> {
    let value = g(at);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFiniteSample { at, value })
    }
}

/// Checks harmonic s-convexity of `g` on `[a, b]` using `grid_density`
/// points per axis for x, y and t.
///
/// A point counts as a violation when its excess exceeds
/// `1e-10 · max(1, |lhs|, |rhs terms|)`. The grids are fixed, so repeated runs
/// give identical verdicts.
pub fn is_harmonically_s_convex(
    g: &(dyn Fn(f64) -> f64 + Sync),
    a: f64,
    b: f64,
    s: f64,
    grid_density: usize,
) -> Result<ConvexityVerdict> {
    if !(a.is_finite() && b.is_finite()) || a <= 0.0 || a >= b {
        return Err(Error::domain(format!("need 0 < a < b, got [{a}, {b}]")));
    }
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::domain(format!("need s in (0, 1], got {s}")));
    }
    if grid_density < MIN_GRID_DENSITY {
        return Err(Error::domain(format!(
            "grid density must be at least {MIN_GRID_DENSITY}, got {grid_density}"
        )));
    }

    let nodes = linspace(a, b, grid_density);
    let ts = linspace(0.0, 1.0, grid_density);
    let g_nodes = nodes.iter().map(|&u| checked(g, u)).collect::<Result<Vec<_>>>()?;
    let weights: Vec<(f64, f64)> = ts.iter().map(|&t| (t.powf(s), (1.0 - t).powf(s))).collect();

    // Worst violation per x row, then the first maximal row.
    let rows = (0..nodes.len())
        .into_par_iter()
        .map(|i| -> Result<Option<Witness>> {
            let (x, gx) = (nodes[i], g_nodes[i]);
            let mut worst: Option<Witness> = None;
            for (&y, &gy) in nodes.iter().zip(&g_nodes) {
                for (&t, &(ws, wc)) in ts.iter().zip(&weights) {
                    let h = x * y / (t * x + (1.0 - t) * y);
                    let lhs = checked(g, h)?;
                    let (r1, r2) = (ws * gy, wc * gx);
                    let excess = lhs - (r1 + r2);
                    let scale = 1f64.max(lhs.abs()).max(r1.abs() + r2.abs());
                    if excess > VIOLATION_TOL * scale
                        && worst.is_none_or(|w| excess > w.violation)
                    {
                        worst = Some(Witness { x, y, t, violation: excess });
                    }
                }
            }
            Ok(worst)
        })
        .collect::<Result<Vec<_>>>()?;

    let witness = rows.into_iter().flatten().fold(None, |best: Option<Witness>, w| match best {
        Some(b) if b.violation >= w.violation => Some(b),
        _ => Some(w),
    });
    Ok(ConvexityVerdict {
        passed: witness.is_none(),
        witness,
    })
}

/// Certifies `|f'|^q` of a test function on `[a, b]`.
pub fn certify(tf: &TestFunction, a: f64, b: f64, s: f64, q: f64, grid_density: usize) -> Result<ConvexityVerdict> {
    if !(q.is_finite() && q >= 1.0) {
        return Err(Error::domain(format!("need q >= 1, got {q}")));
    }
    let g = tf.deriv_power(q);
    is_harmonically_s_convex(&g, a, b, s, grid_density)
}
