//! Reference solutions used as fitting bases. Deliberately independent of
//! `specfun`: no gamma functions, no connection formulas.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

const MAX_TERMS: usize = 200;

/// Frobenius solution `rho^nu sum_k (-p^2 rho^2 / 4)^k / (k! (nu + 1)_k)`
/// of the `lambda = 0` radial equation, with its `rho` derivative.
///
/// This is `Gamma(nu + 1) (2/p)^nu J_nu(p rho)`. When `(nu + 1)_k` vanishes
/// (negative integer `nu`) the series is truncated before the pole, leaving
/// the leading part of the `rho^nu` branch.
pub fn frobenius(nu: Complex64, p: f64, rho: f64) -> (Complex64, Complex64) {
    let z = -0.25 * p * p * rho * rho;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut dsum = nu * term;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        let den = kf * (nu + kf);
        if den.norm() < 1e-12 {
            break;
        }
        term = term * z / den;
        sum += term;
        dsum += term * (nu + 2.0 * kf);
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    let power = (nu * rho.ln()).exp();
    (power * sum, power * dsum / rho)
}

/// Ingoing or outgoing wave `sqrt(2/(pi x)) e^{-+i(x - pi/4)} P(x)` at `x = p rho`,
/// with the asymptotic series `P` for the order `nu^2`, and its `rho` derivative.
///
/// A combination `I w_in + O w_out` equals `a H1_nu + b H2_nu` with
/// `O = a e^{-i nu pi/2}` and `I = b e^{i nu pi/2}`.
pub fn asymptotic_wave(outgoing: bool, nu_squared: f64, p: f64, rho: f64) -> (Complex64, Complex64) {
    let x = p * rho;
    let mu4 = 4.0 * nu_squared;
    let rot = if outgoing { Complex64::i() } else { -Complex64::i() };
    let mut coeff = Complex64::new(1.0, 0.0);
    let mut sum = coeff;
    let mut sum_k = Complex64::new(0.0, 0.0);
    let mut previous = f64::INFINITY;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        coeff = coeff * rot * (mu4 - (2.0 * kf - 1.0).powi(2)) / (8.0 * kf * x);
        let size = coeff.norm();
        // stop at the smallest term of the divergent series
        if size > previous || size == 0.0 {
            break;
        }
        sum += coeff;
        sum_k += coeff * kf;
        previous = size;
        if size < 1e-18 {
            break;
        }
    }
    let phase = if outgoing { x - FRAC_PI_4 } else { FRAC_PI_4 - x };
    let carrier = Complex64::from_polar((2.0 / (PI * x)).sqrt(), phase);
    let value = carrier * sum;
    let dx = carrier * ((rot - 0.5 / x) * sum - sum_k / x);
    (value, p * dx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_order_waves_are_exact() {
        // nu^2 = 1/4: the series terminates and the waves are sqrt(2/(pi x)) e^{+-i(x - pi/4)}
        let (v, d) = asymptotic_wave(true, 0.25, 2.0, 0.3);
        let x: f64 = 0.6;
        let expected = Complex64::from_polar((2.0 / (PI * x)).sqrt(), x - FRAC_PI_4);
        assert!((v - expected).norm() < 1e-15);
        let de = 2.0 * expected * (Complex64::i() - 0.5 / x);
        assert!((d - de).norm() < 1e-14);
    }

    #[test]
    fn frobenius_order_half_is_sine() {
        // Gamma(3/2) (2/p)^{1/2} J_{1/2}(p rho) = sin(p rho) / p / sqrt(rho)
        let (v, _) = frobenius(Complex64::new(0.5, 0.0), 1.7, 2.3);
        let expected = (1.7f64 * 2.3).sin() / 1.7 / 2.3f64.sqrt();
        assert!((v.re - expected).abs() < 1e-14 && v.im.abs() < 1e-16);
    }

    #[test]
    fn frobenius_derivative_matches_difference() {
        let nu = Complex64::new(0.0, 0.8);
        let h = 1e-5;
        let (_, d) = frobenius(nu, 1.0, 0.7);
        let fd = (frobenius(nu, 1.0, 0.7 + h).0 - frobenius(nu, 1.0, 0.7 - h).0) / (2.0 * h);
        assert!((d - fd).norm() < 1e-8);
    }
}
