//! Jacobi theta kernels on the ray tau = -1 + ix.
//!
//! The real kernel
//!
//! ```text
//! phi(x) = 1 + 2 sum_{n>=1} (-1)^n e^(-pi n^2 x)          (fast for x >= 1)
//!        = (2/sqrt(x)) sum_{n>=0} e^(-pi (n+1/2)^2 / x)   (fast for x < 1)
//! ```
//!
//! equals theta3(0, -1+ix) = theta4(0, ix); phi' feeds the theta-integral
//! representation of F(s). Truncations are driven by explicit geometric tail
//! majorants, not fixed term counts.

use num_complex::Complex64;

use crate::error::{require_finite_real, Error, Result};
use crate::specfun::{EvalMethod, EvalResult};

/// Which series produced a [`PhiEval`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiSeries {
    Direct,
    Transformed,
}

/// phi(x) and phi'(x) with provenance. For every x > 0 the product form
/// forces 0 < phi < 1, and phi' >= 0.
#[derive(Debug, Clone, Copy)]
pub struct PhiEval {
    pub x: f64,
    pub phi: f64,
    pub phi_prime: f64,
    pub series_used: PhiSeries,
    pub terms: usize,
}

const TAIL_TARGET: f64 = 1e-17;

fn check_domain(x: f64) -> Result<()> {
    require_finite_real(x, "phi argument")?;
    if x <= 0.0 {
        return Err(Error::Domain(format!("phi requires x > 0, got {x}")));
    }
    Ok(())
}

fn phi_direct(x: f64) -> PhiEval {
    let mut phi = 1.0;
    let mut dphi = 0.0;
    let mut n = 1usize;
    loop {
        let nf = n as f64;
        let e = (-std::f64::consts::PI * nf * nf * x).exp();
        let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
        phi += 2.0 * sign * e;
        dphi += -2.0 * std::f64::consts::PI * sign * nf * nf * e;
        // Ratio between consecutive terms is below e^(-3 pi x) <= e^(-3 pi).
        let next = ((n + 1) * (n + 1)) as f64;
        let bound = 2.0 * (1.0 + std::f64::consts::PI * next) * (-std::f64::consts::PI * next * x).exp();
        if bound < TAIL_TARGET || n > 64 {
            return PhiEval {
                x,
                phi,
                phi_prime: dphi,
                series_used: PhiSeries::Direct,
                terms: n,
            };
        }
        n += 1;
    }
}

fn phi_transformed(x: f64) -> PhiEval {
    let inv_sqrt = x.powf(-0.5);
    let x32 = x.powf(-1.5);
    let x52 = x.powf(-2.5);
    let mut phi = 0.0;
    let mut dphi = 0.0;
    let mut n = 0usize;
    loop {
        let half = n as f64 + 0.5;
        let a = std::f64::consts::PI * half * half;
        let e = (-a / x).exp();
        phi += 2.0 * inv_sqrt * e;
        dphi += (2.0 * a * x52 - x32) * e;
        let next_half = n as f64 + 1.5;
        let next_a = std::f64::consts::PI * next_half * next_half;
        let bound = (2.0 * inv_sqrt + 2.0 * next_a * x52 + x32) * (-next_a / x).exp();
        if bound < TAIL_TARGET || n > 64 {
            return PhiEval {
                x,
                phi,
                phi_prime: dphi,
                series_used: PhiSeries::Transformed,
                terms: n + 1,
            };
        }
        n += 1;
    }
}

/// Evaluates phi and phi' by the series suited to x (branch switch at x = 1,
/// where both decay like e^(-pi) per term).
pub fn phi(x: f64) -> Result<PhiEval> {
    check_domain(x)?;
    Ok(if x >= 1.0 {
        phi_direct(x)
    } else {
        phi_transformed(x)
    })
}

/// Evaluates phi with an explicit series choice (dual-series checks).
pub fn phi_with_series(x: f64, series: PhiSeries) -> Result<PhiEval> {
    check_domain(x)?;
    Ok(match series {
        PhiSeries::Direct => phi_direct(x),
        PhiSeries::Transformed => phi_transformed(x),
    })
}

/// phi'(x), termwise-differentiated series; for x < 1 the transformed series
/// avoids the cancellation of the direct one.
pub fn phi_prime(x: f64) -> Result<f64> {
    Ok(phi(x)?.phi_prime)
}

/// Product form phi(x) = prod (1 - e^(-pi n x)) (1 - e^(-pi (2n-1) x)).
pub fn phi_product(x: f64) -> Result<f64> {
    check_domain(x)?;
    let mut value = 1.0;
    let mut n = 1usize;
    loop {
        let nf = n as f64;
        let f1 = 1.0 - (-std::f64::consts::PI * nf * x).exp();
        let f2 = 1.0 - (-std::f64::consts::PI * (2.0 * nf - 1.0) * x).exp();
        value *= f1 * f2;
        // Remaining factors differ from 1 by at most a geometric tail.
        let tail = 2.0 * (-std::f64::consts::PI * (nf + 1.0) * x).exp()
            / (1.0 - (-std::f64::consts::PI * x).exp());
        if tail < TAIL_TARGET || n > 4096 {
            return Ok(value);
        }
        n += 1;
    }
}

/// theta3(0, tau) = 1 + 2 sum e^(pi i n^2 tau) for Im tau > 0.
pub fn theta3(tau: Complex64) -> Result<EvalResult> {
    theta3_series(tau, false)
}

/// d/dtau theta3(0, tau) = 2 sum pi i n^2 e^(pi i n^2 tau).
pub fn theta3_prime(tau: Complex64) -> Result<EvalResult> {
    theta3_series(tau, true)
}

fn theta3_series(tau: Complex64, derivative: bool) -> Result<EvalResult> {
    if !(tau.re.is_finite() && tau.im.is_finite()) {
        return Err(Error::Domain(format!("theta3 argument must be finite, got {tau}")));
    }
    if tau.im <= 0.0 {
        return Err(Error::Domain(format!(
            "theta3 requires Im tau > 0, got Im = {}",
            tau.im
        )));
    }
    let pit = Complex64::i() * std::f64::consts::PI * tau;
    let mut value = if derivative {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::new(1.0, 0.0)
    };
    let mut n = 1usize;
    loop {
        let n2 = (n * n) as f64;
        let term = (pit * n2).exp();
        if derivative {
            value += 2.0 * Complex64::i() * std::f64::consts::PI * n2 * term;
        } else {
            value += 2.0 * term;
        }
        let next = ((n + 1) * (n + 1)) as f64;
        let weight = if derivative {
            2.0 * std::f64::consts::PI * next
        } else {
            2.0
        };
        let bound = weight * (-std::f64::consts::PI * tau.im * next).exp()
            / (1.0 - (-std::f64::consts::PI * tau.im).exp()).max(f64::MIN_POSITIVE);
        if bound < TAIL_TARGET || n > 256 {
            let abs_err = bound + (1.0 + value.norm()) * 2.0 * f64::EPSILON * n as f64;
            return Ok(EvalResult::new(value, abs_err, EvalMethod::ThetaSeries));
        }
        n += 1;
    }
}

/// One grid point of the phi' inequality check.
#[derive(Debug, Clone, Copy)]
pub struct Prop2Margin {
    pub x: f64,
    /// phi'(x) itself (nonnegativity margin).
    pub nonneg: f64,
    /// 2 pi e^(-pi x) - phi'(x).
    pub upper: f64,
    /// (pi/2) x^(-5/2) e^(-pi/(4x)) - phi'(x); only for x < 1.
    pub small_x: Option<f64>,
}

/// Result of checking the three phi' inequalities over a grid.
#[derive(Debug, Clone, Default)]
pub struct Prop2Report {
    pub margins: Vec<Prop2Margin>,
    /// Points whose margin fell below -slack; empty means all hold.
    pub violations: Vec<Prop2Margin>,
    pub slack: f64,
}

impl Prop2Report {
    pub fn worst_nonneg(&self) -> Option<f64> {
        self.margins.iter().map(|m| m.nonneg).fold(None, fold_min)
    }

    pub fn worst_upper(&self) -> Option<f64> {
        self.margins.iter().map(|m| m.upper).fold(None, fold_min)
    }

    pub fn worst_small_x(&self) -> Option<f64> {
        self.margins.iter().filter_map(|m| m.small_x).fold(None, fold_min)
    }
}

fn fold_min(acc: Option<f64>, v: f64) -> Option<f64> {
    Some(match acc {
        None => v,
        Some(a) => a.min(v),
    })
}

/// Checks phi' >= 0 and phi' <= 2 pi e^(-pi x) on every grid point, plus
/// phi' <= (pi/2) x^(-5/2) e^(-pi/(4x)) where x < 1. Violations beyond the
/// slack are reported, never thrown.
pub fn check_prop2_grid(grid: &[f64]) -> Result<Prop2Report> {
    let slack = 1e-12;
    let mut report = Prop2Report {
        slack,
        ..Default::default()
    };
    for &x in grid {
        let dphi = phi_prime(x)?;
        let upper = 2.0 * std::f64::consts::PI * (-std::f64::consts::PI * x).exp() - dphi;
        let small_x = if x < 1.0 {
            let cap = 0.5 * std::f64::consts::PI * x.powf(-2.5)
                * (-std::f64::consts::PI / (4.0 * x)).exp();
            Some(cap - dphi)
        } else {
            None
        };
        let margin = Prop2Margin {
            x,
            nonneg: dphi,
            upper,
            small_x,
        };
        let violated = margin.nonneg < -slack
            || margin.upper < -slack
            || margin.small_x.map_or(false, |m| m < -slack);
        if violated {
            report.violations.push(margin);
        }
        report.margins.push(margin);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_term_limit_at_large_x() {
        // phi(30) = 1 - 2 e^(-30 pi) up to the e^(-120 pi) second term.
        let p = phi(30.0).unwrap();
        let expected = 1.0 - 2.0 * (-30.0 * std::f64::consts::PI).exp();
        assert!((p.phi - expected).abs() < 1e-30);
        assert_eq!(p.series_used, PhiSeries::Direct);
    }

    #[test]
    fn branches_agree_at_switch_point() {
        let d = phi_with_series(1.0, PhiSeries::Direct).unwrap();
        let t = phi_with_series(1.0, PhiSeries::Transformed).unwrap();
        assert!((d.phi - t.phi).abs() < 1e-14);
        assert!((d.phi_prime - t.phi_prime).abs() < 1e-14);
    }

    #[test]
    fn transformed_matches_brute_force_direct() {
        // At x = 0.3 the direct series still converges, just slowly enough
        // to need a longer sum: use it as the brute-force oracle.
        let x = 0.3;
        let mut brute = 1.0;
        for n in 1..=50 {
            let nf = n as f64;
            let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
            brute += 2.0 * sign * (-std::f64::consts::PI * nf * nf * x).exp();
        }
        let p = phi(x).unwrap();
        assert_eq!(p.series_used, PhiSeries::Transformed);
        assert!((p.phi - brute).abs() < 1e-14, "phi={} brute={brute}", p.phi);
    }

    #[test]
    fn phi_prime_matches_finite_difference() {
        let x = 2.0;
        let h = 1e-6;
        let fd = (phi(x + h).unwrap().phi - phi(x - h).unwrap().phi) / (2.0 * h);
        let dphi = phi_prime(x).unwrap();
        assert!((dphi - fd).abs() < 1e-9, "dphi={dphi} fd={fd}");
    }

    #[test]
    fn phi_prime_small_x_inequalities() {
        let dphi = phi_prime(0.5).unwrap();
        assert!(dphi >= 0.0);
        let cap = 0.5 * std::f64::consts::PI * 0.5f64.powf(-2.5)
            * (-std::f64::consts::PI / 2.0).exp();
        assert!(dphi <= cap);
    }

    #[test]
    fn theta3_at_minus_one_plus_ix_is_phi() {
        for &x in &[0.4, 1.0, 2.5] {
            let th = theta3(Complex64::new(-1.0, x)).unwrap();
            let p = phi(x).unwrap();
            assert!((th.value.re - p.phi).abs() < 1e-14);
            assert!(th.value.im.abs() < 1e-14);
        }
    }

    #[test]
    fn theta3_prime_matches_phi_prime() {
        // phi'(x) = i theta3'(0, -1 + ix)
        for &x in &[0.5, 1.0, 3.0] {
            let tp = theta3_prime(Complex64::new(-1.0, x)).unwrap();
            let v = Complex64::i() * tp.value;
            let dphi = phi_prime(x).unwrap();
            assert!((v.re - dphi).abs() < 1e-13, "x={x}: {} vs {dphi}", v.re);
            assert!(v.im.abs() < 1e-13);
        }
    }

    #[test]
    fn theta3_transformation_formula() {
        // theta3(0, -1/tau) = sqrt(-i tau) theta3(0, tau) at tau = 2i and
        // the self-dual point tau = i.
        for &y in &[1.0, 2.0] {
            let tau = Complex64::new(0.0, y);
            let lhs = theta3(-tau.finv()).unwrap().value;
            let rhs = (-Complex64::i() * tau).sqrt() * theta3(tau).unwrap().value;
            assert!((lhs - rhs).norm() < 1e-14, "y={y}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn theta3_one_term_dominance() {
        let tau = Complex64::new(0.3, 10.0);
        let th = theta3(tau).unwrap();
        let one_term = Complex64::new(1.0, 0.0)
            + 2.0 * (Complex64::i() * std::f64::consts::PI * tau).exp();
        assert!((th.value - one_term).norm() < 1e-40);
    }

    #[test]
    fn prop2_grid_clean_and_empty() {
        let grid: Vec<f64> = (1..=100).map(|i| i as f64 * 0.05).collect();
        let report = check_prop2_grid(&grid).unwrap();
        assert!(report.violations.is_empty());
        assert!(report.worst_nonneg().unwrap() >= 0.0);

        let empty = check_prop2_grid(&[]).unwrap();
        assert!(empty.margins.is_empty());
        assert!(empty.violations.is_empty());
    }

    #[test]
    fn prop2_margin_at_x_ten() {
        let report = check_prop2_grid(&[10.0]).unwrap();
        assert!(report.margins[0].upper >= 0.0);
    }

    #[test]
    fn domain_errors() {
        assert!(phi(0.0).is_err());
        assert!(phi(-1.0).is_err());
        assert!(theta3(Complex64::new(0.5, 0.0)).is_err());
    }
}
