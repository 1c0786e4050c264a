//! Evaluators for the auxiliary function R(s), its derivative, the entire
//! function F(s) = s pi^(-s/2) Gamma(s/2) R(s), the critical-line rotation
//! Z(t), and the growth envelope f(t) g(sigma).
//!
//! R is computed from its defining contour integral over a slope-one line
//! crossing the real axis between consecutive integers, directed along
//! e^(5 pi i/4) so that e^(pi i x^2) decays like a Gaussian. Shifting the
//! crossing from (0,1) to (N, N+1) extracts the partial Dirichlet sum
//! sum_{n<=N} n^(-s) through the residues n^(-s)/(2 pi i) at the integer
//! poles, which keeps the remaining integrand commensurate with the answer.
//! The crossing follows the saddle x* = sqrt(s / (2 pi i)) of the integrand,
//! which reduces to the classical floor(sqrt(t/2pi)) for t > 0.

use num_complex::Complex64;

use crate::error::{require_finite, require_finite_real, Error, Result};
use crate::quad;
use crate::specfun::{self, EvalMethod, EvalResult};
use crate::sum::ComplexSum;
use crate::thetafun;

/// Default absolute/relative tolerance for the contour evaluators.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Integration direction e^(5 pi i / 4): southwest along the slope-one line.
fn contour_direction() -> Complex64 {
    let r = -0.5f64.sqrt();
    Complex64::new(r, r)
}

/// Saddle point x* = sqrt(s / (2 pi i)), principal branch (Re >= 0).
fn saddle(s: Complex64) -> Complex64 {
    (s * Complex64::new(0.0, -1.0) / (2.0 * std::f64::consts::PI)).sqrt()
}

/// Contour parameters for one evaluation of R(s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Where the line crosses the real axis; must lie in (N, N+1) with
    /// distance >= 0.05 from both integers.
    pub crossing: f64,
    /// Number of residues extracted into the main sum.
    pub shift_level: u32,
    /// Truncation of the contour parameter u in [-U, U].
    pub half_width: f64,
    /// Initial trapezoid step; refined by halving until agreement.
    pub step: f64,
}

impl QuadratureSpec {
    /// Spec for a given shift level: crossing at the midpoint N + 1/2,
    /// half-width covering the saddle plus Gaussian tails, step matched to
    /// the integrand's oscillation rate.
    pub fn with_level(s: Complex64, level: u32) -> Self {
        let p = f64::from(level) + 0.5;
        let x_star = saddle(s);
        let p_star = x_star.re - x_star.im;
        // The saddle sits at u = -sqrt(2) Im x* along the line; cover it.
        let u_peak = (-std::f64::consts::SQRT_2 * x_star.im).max(0.0);
        let half_width = (u_peak + 4.5 + 1.5 * (p - p_star).abs()
            + 0.3 * (-s.re).max(0.0).sqrt())
        .min(80.0);
        let rate = 2.0 * std::f64::consts::PI * (p + half_width)
            + std::f64::consts::SQRT_2 * s.norm() / p;
        let step = (1.5 / rate).min(0.125);
        Self {
            crossing: p,
            shift_level: level,
            half_width,
            step,
        }
    }

    /// Automatic spec: the shift level nearest the saddle crossing,
    /// floor(sqrt(t/2pi)) for s on the upper critical strip.
    pub fn auto(s: Complex64) -> Self {
        let x_star = saddle(s);
        let p_star = x_star.re - x_star.im;
        let level = (p_star - 0.5).round().max(0.0) as u32;
        Self::with_level(s, level)
    }

    pub fn validate(&self) -> Result<()> {
        let n = f64::from(self.shift_level);
        if !(self.crossing > n + 0.05 && self.crossing < n + 0.95) {
            return Err(Error::Contour(format!(
                "crossing {} must lie in ({}, {}) with margin 0.05",
                self.crossing,
                n,
                n + 1.0
            )));
        }
        if !(self.step > 0.0 && self.half_width > 0.0 && self.step <= self.half_width) {
            return Err(Error::Contour(format!(
                "need 0 < step <= half_width, got step {} half_width {}",
                self.step, self.half_width
            )));
        }
        Ok(())
    }
}

/// ln(1 + z) accurate for small |z|.
fn cln1p(z: Complex64) -> Complex64 {
    if z.norm() >= 0.25 {
        return (Complex64::new(1.0, 0.0) + z).ln();
    }
    let mut term = z;
    let mut sum = z;
    let mut n = 2.0;
    loop {
        term *= -z;
        let contrib = term / n;
        sum += contrib;
        if contrib.norm() < 1e-18 {
            return sum;
        }
        n += 1.0;
    }
}

/// Log of the integrand x^(-s) e^(pi i x^2) / (e^(pi i x) - e^(-pi i x)),
/// assembled in the exponent so huge envelopes stay representable. Also
/// returns Log(x) for the derivative integrand.
fn log_integrand(s: Complex64, x: Complex64) -> Result<(Complex64, Complex64)> {
    let log_x = x.ln();
    let i_pi = Complex64::new(0.0, std::f64::consts::PI);
    // Denominator written with the decaying exponential factored out; the
    // branch of its log is irrelevant because only exp(g) is used.
    let log_den = if x.im <= 0.0 {
        i_pi * x + cln1p(-(-2.0 * i_pi * x).exp())
    } else {
        -i_pi * x + cln1p(-(2.0 * i_pi * x).exp()) + Complex64::new(0.0, std::f64::consts::PI)
    };
    let g = -s * log_x + i_pi * x * x - log_den;
    if g.re > 705.0 {
        return Err(Error::Unsupported(format!(
            "contour integrand overflows f64 at s = {s} (exponent {:.1})",
            g.re
        )));
    }
    Ok((g, log_x))
}

struct ContourEval {
    value: Complex64,
    derivative: Complex64,
    abs_err: f64,
}

/// Trapezoid sums of f and -Log(x) f at the nodes u = k h, |k| <= M, plus
/// midpoint refinements until step-halving agrees.
fn contour_integral(s: Complex64, spec: &QuadratureSpec, tol: f64) -> Result<ContourEval> {
    let dir = contour_direction();
    let p = spec.crossing;
    let u_limit = spec.half_width;

    let node = |u: f64| -> Result<(Complex64, Complex64)> {
        let x = p + u * dir;
        let (g, log_x) = log_integrand(s, x)?;
        let f = g.exp();
        Ok((f, -log_x * f))
    };

    // One pass at step h over the nodes with offset and stride.
    let sweep = |h: f64, offset: f64| -> Result<(Complex64, Complex64, f64)> {
        let mut sum_f = ComplexSum::new();
        let mut sum_df = ComplexSum::new();
        let mut peak: f64 = 0.0;
        let m = ((u_limit - offset) / h).floor() as i64;
        let m_neg = ((u_limit + offset) / h).floor() as i64;
        for k in -m_neg..=m {
            let u = offset + k as f64 * h;
            let (f, df) = node(u)?;
            peak = peak.max(f.norm());
            sum_f.add(f);
            sum_df.add(df);
        }
        Ok((sum_f.value(), sum_df.value(), peak))
    };

    let mut h = spec.step;
    let (mut sf, mut sdf, mut peak) = sweep(h, 0.0)?;
    let mut value = sf * h * dir;
    let mut deriv = sdf * h * dir;
    let mut abs_err;
    let mut halvings = 0;
    loop {
        // Midpoints at offset h/2 refine the trapezoid to step h/2.
        let (mf, mdf, mpeak) = sweep(h, 0.5 * h)?;
        sf += mf;
        sdf += mdf;
        peak = peak.max(mpeak);
        h *= 0.5;
        let new_value = sf * h * dir;
        let new_deriv = sdf * h * dir;
        let delta = (new_value - value).norm() + (new_deriv - deriv).norm();
        value = new_value;
        deriv = new_deriv;
        let scale = value.norm().max(deriv.norm()).max(1.0);
        abs_err = delta;
        if delta <= tol * scale {
            break;
        }
        halvings += 1;
        if halvings > 7 {
            return Err(Error::Precision {
                requested: tol * scale,
                achieved: delta,
            });
        }
    }

    // Truncation and rounding contributions.
    let (tail_f, tail_df) = node(u_limit)?;
    let (tail_f2, tail_df2) = node(-u_limit)?;
    let tail = (tail_f.norm() + tail_f2.norm() + tail_df.norm() + tail_df2.norm()) * h * 10.0;
    let rounding = peak * h * (2.0 * u_limit / h) * f64::EPSILON * 4.0;
    Ok(ContourEval {
        value,
        derivative: deriv,
        abs_err: abs_err + tail + rounding,
    })
}

fn main_sum(s: Complex64, level: u32) -> (Complex64, Complex64) {
    let mut sum = ComplexSum::new();
    let mut dsum = ComplexSum::new();
    for n in 1..=level {
        let ln_n = f64::from(n).ln();
        let term = (-s * ln_n).exp();
        sum.add(term);
        dsum.add(-ln_n * term);
    }
    (sum.value(), dsum.value())
}

fn eval_r_core(
    s: Complex64,
    spec: &QuadratureSpec,
    tol: f64,
) -> Result<(EvalResult, EvalResult)> {
    require_finite(s, "eval_r argument")?;
    spec.validate()?;
    let contour = contour_integral(s, spec, tol)?;
    let (head, dhead) = main_sum(s, spec.shift_level);
    let value = head + contour.value;
    let deriv = dhead + contour.derivative;
    let head_err = f64::from(spec.shift_level) * 4.0 * f64::EPSILON * head.norm().max(1.0);
    let err = contour.abs_err + head_err;
    Ok((
        EvalResult::new(value, err, EvalMethod::ContourTrapezoid),
        EvalResult::new(deriv, err, EvalMethod::ContourTrapezoid),
    ))
}

/// R(s) with the automatic contour.
pub fn eval_r(s: Complex64) -> Result<EvalResult> {
    eval_r_core(s, &QuadratureSpec::auto(s), DEFAULT_TOL).map(|(r, _)| r)
}

/// R(s) with an explicit contour and tolerance.
pub fn eval_r_with(s: Complex64, spec: &QuadratureSpec, tol: f64) -> Result<EvalResult> {
    eval_r_core(s, spec, tol).map(|(r, _)| r)
}

/// R'(s): same contour with the integrand multiplied by -Log x and the main
/// sum terms by -log n.
pub fn eval_r_prime(s: Complex64) -> Result<EvalResult> {
    eval_r_core(s, &QuadratureSpec::auto(s), DEFAULT_TOL).map(|(_, d)| d)
}

pub fn eval_r_prime_with(s: Complex64, spec: &QuadratureSpec, tol: f64) -> Result<EvalResult> {
    eval_r_core(s, spec, tol).map(|(_, d)| d)
}

/// R and R' from a single contour pass (the phase integral needs both).
pub fn eval_r_and_prime(s: Complex64, tol: f64) -> Result<(EvalResult, EvalResult)> {
    eval_r_core(s, &QuadratureSpec::auto(s), tol)
}

/// Growth envelope of Proposition-type bounds: |F(s)| <= f(t) g(sigma).
#[derive(Debug, Clone, Copy)]
pub struct Envelope {
    pub f_t: f64,
    pub g_sigma: f64,
}

/// f(t) = 1 for t >= 0, e^(pi |t| / 4) otherwise;
/// g(sigma) = 1 for sigma <= 0, 3 * 2^(sigma/4) Gamma(1 + sigma/2) otherwise.
pub fn bound_envelope(s: Complex64) -> Envelope {
    assert!(
        s.re.is_finite() && s.im.is_finite(),
        "bound_envelope requires finite s"
    );
    let f_t = if s.im >= 0.0 {
        1.0
    } else {
        (std::f64::consts::PI * s.im.abs() / 4.0).exp()
    };
    let g_sigma = if s.re <= 0.0 {
        1.0
    } else {
        let lg = specfun::log_gamma(Complex64::new(1.0 + 0.5 * s.re, 0.0))
            .expect("Gamma(1 + sigma/2) is pole-free for sigma > 0");
        3.0 * (0.25 * s.re * std::f64::consts::LN_2).exp() * lg.value.re.exp()
    };
    Envelope { f_t, g_sigma }
}

/// F(s) through the theta-kernel integral
/// F(s) = -e^(-pi i s/4) Int_0^inf (-1 + ix)^(s/2) phi'(x) dx,
/// principal branch of the power. Must agree with s pi^(-s/2) Gamma(s/2) R(s).
pub fn eval_f_theta(s: Complex64) -> Result<EvalResult> {
    require_finite(s, "eval_f_theta argument")?;
    if s == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("eval_f_theta requires s != 0".into()));
    }
    let half_s = 0.5 * s;
    let integrand = |x: f64| -> Result<Complex64> {
        let dphi = thetafun::phi_prime(x)?;
        if dphi == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let base = Complex64::new(-1.0, x).ln();
        Ok((half_s * base).exp() * dphi)
    };
    // phi' underflows below x ~ 1e-3; the upper tail is controlled by
    // phi' <= 2 pi e^(-pi x).
    let x_lo = 1e-4;
    let x_hi = 45.0 + 3.0 * s.re.max(0.0);
    let envelope = bound_envelope(s);
    let tol = 1e-11 * envelope.g_sigma * (-std::f64::consts::PI * s.im / 4.0).exp();
    let out = quad::adaptive_simpson(&integrand, x_lo, x_hi, tol, 48, 96)?;

    let prefactor = -(Complex64::new(0.0, -std::f64::consts::PI / 4.0) * s).exp();
    let value = prefactor * out.value;
    // Tail beyond x_hi, using phi' <= 2 pi e^(-pi x).
    let tail = 2.0
        * (1.0 + x_hi * x_hi).powf(s.re / 4.0)
        * (s.im.abs() * std::f64::consts::PI / 2.0).exp().min(1e30)
        * (-std::f64::consts::PI * x_hi).exp()
        * prefactor.norm();
    let abs_err = out.abs_err * prefactor.norm() + tail;
    Ok(EvalResult::new(value, abs_err, EvalMethod::ThetaIntegral))
}

/// Z(t) = 2 Re{ e^(i theta(t)) R(1/2 + it) }, real by construction and even
/// in t, so the evaluation always runs at |t|.
pub fn z_function(t: f64) -> Result<EvalResult> {
    require_finite_real(t, "z_function argument")?;
    if t.abs() > 2000.0 {
        return Err(Error::Unsupported(format!(
            "z_function supports |t| <= 2000, got {t}"
        )));
    }
    let ta = t.abs();
    let theta = specfun::riemann_siegel_theta(ta)?;
    let r = eval_r(Complex64::new(0.5, ta))?;
    let rotated = Complex64::from_polar(1.0, theta.value.re) * r.value;
    let value = 2.0 * rotated.re;
    let abs_err = 2.0 * (r.abs_err + r.value.norm() * theta.abs_err);
    Ok(EvalResult::new(
        Complex64::new(value, 0.0),
        abs_err,
        EvalMethod::Composite,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_at_zero_is_minus_half() {
        let r = eval_r(Complex64::new(0.0, 0.0)).unwrap();
        assert!(
            (r.value - Complex64::new(-0.5, 0.0)).norm() < 1e-10,
            "R(0) = {}",
            r.value
        );
    }

    #[test]
    fn r_phase_at_one_half() {
        let r = eval_r(Complex64::new(0.5, 0.0)).unwrap();
        assert!((r.value.arg() + 2.86349).abs() < 5e-5, "arg = {}", r.value.arg());
    }

    #[test]
    fn trivial_zero_at_minus_two() {
        let r = eval_r(Complex64::new(-2.0, 0.0)).unwrap();
        assert!(r.value.norm() < 1e-8, "|R(-2)| = {}", r.value.norm());
    }

    #[test]
    fn residue_shift_invariance_moderate_t() {
        let s = Complex64::new(0.5, 30.0);
        let a = eval_r_with(s, &QuadratureSpec::with_level(s, 2), 1e-11).unwrap();
        let b = eval_r_with(s, &QuadratureSpec::with_level(s, 3), 1e-11).unwrap();
        assert!((a.value - b.value).norm() < 1e-9, "{} vs {}", a.value, b.value);
    }

    #[test]
    fn far_right_is_near_one() {
        let r = eval_r(Complex64::new(2.0, 110.0)).unwrap();
        assert!((r.value - Complex64::new(1.0, 0.0)).norm() < 1.0);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let s = Complex64::new(0.5, 20.0);
        let h = 1e-5;
        let rp = eval_r_prime(s).unwrap();
        let plus = eval_r(s + Complex64::new(h, 0.0)).unwrap();
        let minus = eval_r(s - Complex64::new(h, 0.0)).unwrap();
        let fd = (plus.value - minus.value) / (2.0 * h);
        assert!((rp.value - fd).norm() < 1e-7, "{} vs {fd}", rp.value);
    }

    #[test]
    fn spec_validation() {
        let s = Complex64::new(0.5, 10.0);
        let mut spec = QuadratureSpec::auto(s);
        spec.crossing = spec.shift_level as f64 + 0.01;
        assert!(spec.validate().is_err());
        let mut spec2 = QuadratureSpec::auto(s);
        spec2.step = spec2.half_width * 2.0;
        assert!(spec2.validate().is_err());
    }

    #[test]
    fn envelope_cases() {
        let e = bound_envelope(Complex64::new(-1.0, -4.0));
        assert!((e.f_t - std::f64::consts::PI.exp()).abs() < 1e-12);
        assert_eq!(e.g_sigma, 1.0);

        let e2 = bound_envelope(Complex64::new(2.0, 1.0));
        assert_eq!(e2.f_t, 1.0);
        assert!((e2.g_sigma - 3.0 * std::f64::consts::SQRT_2).abs() < 1e-12);

        let e3 = bound_envelope(Complex64::new(0.0, 0.0));
        assert_eq!(e3.f_t, 1.0);
        assert_eq!(e3.g_sigma, 1.0);
    }
}
