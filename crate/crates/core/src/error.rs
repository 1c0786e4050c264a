//! Error type shared by every evaluator and scanner in the crate.

use num_complex::Complex64;

/// Errors surfaced by evaluators, scanners, and the zero store.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Evaluation requested at a pole of the function.
    #[error("pole at s = {0}")]
    Pole(Complex64),

    /// Input outside the supported domain (NaN/∞ components, x ≤ 0, …).
    #[error("domain error: {0}")]
    Domain(String),

    /// An adaptive scheme could not reach the requested accuracy.
    #[error("precision failure: requested {requested:e}, achieved {achieved:e}")]
    Precision { requested: f64, achieved: f64 },

    /// Quadrature contour violates its invariants.
    #[error("contour error: {0}")]
    Contour(String),

    /// Argument-principle subdivision could not certify a boundary segment.
    #[error("boundary too close to a zero: {0}")]
    BoundaryZero(String),

    /// A rectangle could not be resolved into simple, isolated zeros.
    #[error("unresolved cluster in [{smin}, {smax}] x [{tmin}, {tmax}] (winding {winding})")]
    UnresolvedCluster {
        smin: f64,
        smax: f64,
        tmin: f64,
        tmax: f64,
        winding: i64,
    },

    /// The zero store does not cover the region a computation needs.
    #[error("incomplete store: {0}")]
    IncompleteStore(String),

    /// A persisted store line failed to parse.
    #[error("store format error at line {line}: {message}")]
    StoreFormat { line: usize, message: String },

    /// The phase integral met a point where |R| is numerically zero.
    #[error("|R(1/2+it)| below tolerance at t = {t}; integration through it is unsupported")]
    NearZeroOnLine { t: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Rejects NaN/infinite complex inputs before they reach an evaluator.
pub fn require_finite(s: Complex64, what: &str) -> Result<()> {
    if s.re.is_finite() && s.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} must be finite, got {s}")))
    }
}

/// Real-argument variant of [`require_finite`].
pub fn require_finite_real(x: f64, what: &str) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} must be finite, got {x}")))
    }
}
