//! Numerical machinery for fractional Ostrowski-type inequalities on
//! harmonically s-convex functions.
//!
//! The crate is organised bottom-up:
//!
//! - [`specfun`]: Gamma, Beta and the Gauss hypergeometric function on `[0, 1)`.
//! - [`quadrature`]: adaptive Gauss-Kronrod integration and the left/right
//!   Riemann-Liouville fractional integrals.
//! - [`coefficients`]: the λ₁..λ₆ coefficient family in hypergeometric closed
//!   form, plus the moment integrals they stand for.
//! - [`ostrowski`]: the `S_f` functional, both sides of its integral identity,
//!   the five upper bounds and their constant-derivative corollaries.
//! - [`functions`]: a corpus of test functions and a grid certifier for
//!   harmonic s-convexity.

pub mod coefficients;
pub mod error;
pub mod functions;
pub mod ostrowski;
pub mod quadrature;
pub mod specfun;
mod sum;

pub use coefficients::LambdaInputs;
pub use error::{Error, Result};
pub use functions::{ConvexityVerdict, TestFunction, Witness};
pub use ostrowski::{BoundReport, DerivMagnitudes, Interval, Params, TheoremId};
pub use quadrature::{FractionalOrder, QuadConfig, QuadResult};
pub use specfun::HypArgs;
