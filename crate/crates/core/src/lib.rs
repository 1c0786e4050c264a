//! Numerical laboratory for Riemann's auxiliary function
//!
//! The auxiliary function
//!
//! ```text
//! R(s) = integral over the line 0\swarrow1 of x^(-s) e^(pi i x^2) / (e^(pi i x) - e^(-pi i x)) dx
//! ```
//!
//! recovers the zeta function on the critical line through
//! Z(t) = 2 Re{ e^(i theta(t)) R(1/2 + it) }. This crate evaluates R and R',
//! the entire function F(s) = s pi^(-s/2) Gamma(s/2) R(s), locates and
//! classifies the zeros of R by the argument principle, and computes the
//! critical-line phase omega(t) together with its decomposition into the
//! Riemann-Siegel theta, the zero-counting terms u(t) and d(t), and the
//! constants a and B.
//!
//! Modules mirror the subsystems:
//!
//! - [`specfun`]: complex log-gamma, digamma, Riemann-Siegel theta, and an
//!   independent critical-line zeta oracle.
//! - [`thetafun`]: the theta kernel phi(x), its dual series, and the
//!   inequality checks for phi'.
//! - [`rzeta`]: shifted-contour evaluators for R, R', F, Z and the growth
//!   envelope.
//! - [`zerolab`]: winding counts, zero scanning and refinement, sided counts,
//!   and the persistent zero store.
//! - [`phase`]: omega(t), u(t), d(t), the constants a and B, and the
//!   decomposition checks.
//! - [`verify`]: the runnable verification suite behind `rzetalab verify`.
//!
//! Complex points s = sigma + it are plain `num_complex::Complex64` values;
//! every evaluator validates finiteness and returns an a-posteriori error
//! estimate alongside its value.

pub mod error;
pub mod phase;
pub mod quad;
pub mod rzeta;
pub mod specfun;
pub mod sum;
pub mod thetafun;
pub mod verify;
pub mod zerolab;

pub use error::{Error, Result};
pub use specfun::{EvalMethod, EvalResult};

/// Formats a float with 17 significant digits (round-trip exact for f64).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Formats a complex value as "re,im" with 17 significant digits each.
pub fn fmt_complex(z: num_complex::Complex64) -> String {
    format!("{},{}", fmt_f64(z.re), fmt_f64(z.im))
}
