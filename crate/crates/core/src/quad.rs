//! Adaptive Simpson quadrature over finite intervals.
//!
//! Used for the theta-integral representation of F(s), the phase integral
//! of -Re{R'/R}, and several test oracles. The integrand returns a Result so
//! that evaluator failures (precision, near-zeros) propagate instead of being
//! averaged away.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct QuadOutcome {
    pub value: Complex64,
    /// Accumulated local error estimates (|S2 - S1| / 15 per panel).
    pub abs_err: f64,
    pub evals: usize,
}

struct Panel {
    a: f64,
    fa: Complex64,
    b: f64,
    fb: Complex64,
    m: f64,
    fm: Complex64,
    whole: Complex64,
    depth: u32,
}

fn simpson(a: f64, fa: Complex64, b: f64, fb: Complex64, fm: Complex64) -> Complex64 {
    (fa + 4.0 * fm + fb) * ((b - a) / 6.0)
}

/// Integrates `f` over `[a, b]` to absolute tolerance `abs_tol`.
///
/// The interval is first split into `min_panels` equal panels so that
/// localized features cannot hide between the three initial probe points;
/// each panel is then refined adaptively. `max_depth` bounds the subdivision
/// depth; exceeding it on a panel whose error estimate still violates its
/// share of the tolerance is a precision failure.
pub fn adaptive_simpson<F>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_depth: u32,
    min_panels: usize,
) -> Result<QuadOutcome>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(Error::Domain(format!("bad interval [{a}, {b}]")));
    }
    let panels = min_panels.max(1);
    let mut evals = 0usize;
    let mut eval = |x: f64| -> Result<Complex64> {
        evals += 1;
        f(x)
    };

    let mut stack = Vec::with_capacity(2 * panels);
    let width = (b - a) / panels as f64;
    let mut left_x = a;
    let mut left_f = eval(a)?;
    for k in 1..=panels {
        let right_x = if k == panels { b } else { a + width * k as f64 };
        let right_f = eval(right_x)?;
        let mid_x = 0.5 * (left_x + right_x);
        let mid_f = eval(mid_x)?;
        stack.push(Panel {
            a: left_x,
            fa: left_f,
            b: right_x,
            fb: right_f,
            m: mid_x,
            fm: mid_f,
            whole: simpson(left_x, left_f, right_x, right_f, mid_f),
            depth: 0,
        });
        left_x = right_x;
        left_f = right_f;
    }
    let mut total = Complex64::new(0.0, 0.0);
    let mut err_total = 0.0;

    while let Some(p) = stack.pop() {
        let lm = 0.5 * (p.a + p.m);
        let rm = 0.5 * (p.m + p.b);
        let flm = eval(lm)?;
        let frm = eval(rm)?;
        let left = simpson(p.a, p.fa, p.m, p.fm, flm);
        let right = simpson(p.m, p.fm, p.b, p.fb, frm);
        let delta = left + right - p.whole;
        let local_tol = abs_tol * (p.b - p.a) / (b - a);
        if delta.norm() <= 15.0 * local_tol || (p.b - p.a) < 1e-14 * (b - a).abs() {
            total += left + right + delta / 15.0;
            err_total += delta.norm() / 15.0;
        } else if p.depth >= max_depth {
            return Err(Error::Precision {
                requested: abs_tol,
                achieved: delta.norm() / 15.0,
            });
        } else {
            stack.push(Panel {
                a: p.a,
                fa: p.fa,
                b: p.m,
                fb: p.fm,
                m: lm,
                fm: flm,
                whole: left,
                depth: p.depth + 1,
            });
            stack.push(Panel {
                a: p.m,
                fa: p.fm,
                b: p.b,
                fb: p.fb,
                m: rm,
                fm: frm,
                whole: right,
                depth: p.depth + 1,
            });
        }
    }

    Ok(QuadOutcome {
        value: total,
        abs_err: err_total,
        evals,
    })
}

/// Real-valued convenience wrapper around [`adaptive_simpson`].
pub fn adaptive_simpson_real<F>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_depth: u32,
    min_panels: usize,
) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let wrapped = |x: f64| -> Result<Complex64> { Ok(Complex64::new(f(x)?, 0.0)) };
    let out = adaptive_simpson(&wrapped, a, b, abs_tol, max_depth, min_panels)?;
    Ok((out.value.re, out.abs_err))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomial_exactly() {
        let f = |x: f64| Ok(Complex64::new(x * x * x - 2.0 * x + 1.0, 0.0));
        let out = adaptive_simpson(&f, 0.0, 2.0, 1e-12, 30, 1).unwrap();
        // x^4/4 - x^2 + x on [0,2] = 4 - 4 + 2
        assert!((out.value.re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn integrates_oscillatory() {
        let f = |x: f64| Ok(Complex64::new((10.0 * x).sin(), 0.0));
        let out = adaptive_simpson(&f, 0.0, std::f64::consts::PI, 1e-12, 40, 4).unwrap();
        let exact = (1.0 - (10.0 * std::f64::consts::PI).cos()) / 10.0;
        assert!((out.value.re - exact).abs() < 1e-10);
    }

    #[test]
    fn propagates_integrand_errors() {
        let f = |x: f64| {
            if x > 0.5 {
                Err(Error::Domain("boom".into()))
            } else {
                Ok(Complex64::new(1.0, 0.0))
            }
        };
        assert!(adaptive_simpson(&f, 0.0, 1.0, 1e-9, 20, 1).is_err());
    }
}
