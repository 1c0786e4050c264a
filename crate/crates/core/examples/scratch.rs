use num_complex::Complex64;
use rzetalab::{rzeta, specfun};

fn main() {
    // a = -2 R'(0) - gamma/2
    let s0 = Complex64::new(0.0, 0.0);
    let spec = rzeta::QuadratureSpec::auto(s0);
    let rp0 = rzeta::eval_r_prime_with(s0, &spec, 1e-12).unwrap();
    let a = -2.0 * rp0.value - Complex64::new(specfun::EULER_GAMMA / 2.0, 0.0);
    println!("a        = {:.17e}  {:.17e}   (err {:.2e})", a.re, a.im, 2.0 * rp0.abs_err);
    println!("a target = 6.4087373271637604e-1  5.5990021329435156e-1");

    // remark identity: 2 + R'(1/2)/R(1/2) + psi(1/4)/2
    let sh = Complex64::new(0.5, 0.0);
    let spec_h = rzeta::QuadratureSpec::auto(sh);
    let r = rzeta::eval_r_with(sh, &spec_h, 1e-12).unwrap();
    let rp = rzeta::eval_r_prime_with(sh, &spec_h, 1e-12).unwrap();
    let psi_q = specfun::digamma(Complex64::new(0.25, 0.0)).unwrap();
    let ident = Complex64::new(2.0, 0.0) + rp.value / r.value + 0.5 * psi_q.value;
    println!("ident    = {:.17e}  {:.17e}", ident.re, ident.im);
    println!("target   = 6.3738668057367844e-1  5.5243491674163977e-1");

    // Z(t) from R vs the zeta oracle
    for t in [0.0f64, 10.0, 25.0, 50.0, 100.0, 250.0] {
        let z = rzeta::z_function(t).unwrap();
        let zeta = specfun::zeta_line_oracle(t).unwrap();
        let theta = specfun::riemann_siegel_theta(t).unwrap();
        let z_oracle = (Complex64::from_polar(1.0, theta.value.re) * zeta.value).re;
        println!(
            "t={t:6.1}  Z_R={:+.12e}  Z_zeta={:+.12e}  diff={:.2e}",
            z.value.re,
            z_oracle,
            (z.value.re - z_oracle).abs()
        );
    }

    // F equivalence at a few grid points
    for (sig, t) in [(1.0, 0.0), (-3.0, 5.0), (4.0, 0.0), (2.0, -10.0), (-4.0, 20.0), (-2.0, -20.0)] {
        let s = Complex64::new(sig, t);
        let f_theta = rzeta::eval_f_theta(s).unwrap();
        let r = rzeta::eval_r(s).unwrap();
        let lg = specfun::log_gamma(0.5 * s).unwrap();
        let pi_pow = (-0.5 * s * std::f64::consts::PI.ln()).exp();
        let f_gamma = s * pi_pow * lg.value.exp() * r.value;
        let env = rzeta::bound_envelope(s);
        println!(
            "s=({sig:+.0},{t:+.0})  F_theta={:+.10e}{:+.10e}i |diff|={:.2e}  |F|={:.3e} fg={:.3e}",
            f_theta.value.re,
            f_theta.value.im,
            (f_theta.value - f_gamma).norm(),
            f_theta.value.norm(),
            env.f_t * env.g_sigma,
        );
    }

    // zeta(1/2) check and first zero
    let z0 = specfun::zeta_line_oracle(0.0).unwrap();
    println!("zeta(1/2) = {:.17e} (err {:.1e})", z0.value.re, z0.abs_err);
    let z14 = rzeta::z_function(14.134725141734694).unwrap();
    println!("Z(14.1347251417) = {:.3e}", z14.value.re);

    // negative-t conditioning probe
    for (sig, t) in [(1.0, -10.0), (5.0, -40.0), (80.0, -60.0), (250.0, -400.0), (0.5, -400.0)] {
        let s = Complex64::new(sig, t);
        match rzeta::eval_r(s) {
            Ok(r) => println!("R({sig},{t}) |R|={:.3e} err={:.2e}", r.value.norm(), r.abs_err),
            Err(e) => println!("R({sig},{t}) -> {e}"),
        }
    }
}
