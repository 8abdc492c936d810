//! Evaluation kernels for Bessel and Hankel functions of order `nu`, where
//! `nu` is real (either sign) or purely imaginary, at real `x > 0`.
//!
//! Every kernel returns the pair (f(x), f'(x)).

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use super::gamma::reciprocal_gamma;
use crate::ode::{integrate, StepControl};

pub(crate) type Pair = (Complex64, Complex64);

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ODE_RTOL: f64 = 1e-14;
const SERIES_MAX_TERMS: usize = 400;
const ASYMPTOTIC_MAX_TERMS: usize = 60;

/// Upper end of the power-series region.
pub(crate) fn series_limit(nu_abs: f64) -> f64 {
    10f64.max(2.0 * (nu_abs + 1.0).sqrt())
}

/// Lower end of the large-argument expansion region.
pub(crate) fn asymptotic_limit(nu_abs: f64) -> f64 {
    30f64.max(0.5 * nu_abs * nu_abs)
}

/// Neumaier-compensated accumulator.
#[derive(Default)]
struct Compensated {
    sum: Complex64,
    carry: Complex64,
}

impl Compensated {
    fn add(&mut self, v: Complex64) {
        self.sum = Self::two_sum(self.sum, v, &mut self.carry);
    }

    fn two_sum(a: Complex64, b: Complex64, carry: &mut Complex64) -> Complex64 {
        let re = a.re + b.re;
        carry.re += if a.re.abs() >= b.re.abs() {
            (a.re - re) + b.re
        } else {
            (b.re - re) + a.re
        };
        let im = a.im + b.im;
        carry.im += if a.im.abs() >= b.im.abs() {
            (a.im - im) + b.im
        } else {
            (b.im - im) + a.im
        };
        Complex64::new(re, im)
    }

    fn value(&self) -> Complex64 {
        self.sum + self.carry
    }
}

/// Ascending series for J_nu(x) and its derivative.
pub(crate) fn series_j(nu: Complex64, x: f64) -> Pair {
    let half = 0.5 * x;
    let lead = (nu * half.ln()).exp() * reciprocal_gamma(nu + 1.0);
    let q = -half * half;
    let mut term = lead;
    let mut value = Compensated::default();
    let mut deriv = Compensated::default();
    value.add(term);
    deriv.add(term * nu / x);
    for k in 1..SERIES_MAX_TERMS {
        let kf = k as f64;
        term = term * q / (kf * (nu + kf));
        value.add(term);
        deriv.add(term * (nu + 2.0 * kf) / x);
        let scale = value.value().norm().max(1e-300);
        if kf > half && term.norm() < 1e-18 * scale {
            break;
        }
    }
    (value.value(), deriv.value())
}

/// Large-argument Hankel expansion; `first` selects H⁽¹⁾ over H⁽²⁾.
pub(crate) fn asymptotic_hankel(first: bool, nu: Complex64, x: f64) -> Pair {
    let mu4 = 4.0 * nu * nu;
    let rot = if first { I } else { -I };
    let mut a = Complex64::new(1.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(1.0, 0.0);
    let mut sum_k = Complex64::new(0.0, 0.0);
    let mut previous = f64::INFINITY;
    for k in 1..ASYMPTOTIC_MAX_TERMS {
        let kf = k as f64;
        let odd = (2.0 * kf - 1.0).powi(2);
        a = a * (mu4 - odd) / (8.0 * kf);
        power *= rot / x;
        let term = a * power;
        let size = term.norm();
        if size > previous {
            break;
        }
        sum += term;
        sum_k += term * kf;
        previous = size;
        if size < 1e-18 * sum.norm() {
            break;
        }
    }
    let phase_real = if first { x - FRAC_PI_4 } else { -(x - FRAC_PI_4) };
    // e^{±iω}, ω = x − νπ/2 − π/4
    let carrier = Complex64::from_polar(1.0, phase_real) * (rot * (-FRAC_PI_2) * nu).exp();
    let amp = (2.0 / (PI * x)).sqrt();
    let value = amp * carrier * sum;
    let deriv = amp * carrier * ((rot - 0.5 / x) * sum - sum_k / x);
    (value, deriv)
}

/// Carries a Bessel-equation solution from `x0` to `x1` by integrating in
/// `t = ln x`, where the state is (y, x y').
pub(crate) fn propagate(nu_sq: Complex64, x0: f64, start: Pair, x1: f64) -> Option<Pair> {
    let rhs = |t: f64, y: &[Complex64; 2]| {
        let x = t.exp();
        [y[1], (nu_sq - x * x) * y[0]]
    };
    let cap = |t: f64| {
        let x = t.exp();
        let k = (x * x + nu_sq.norm()).sqrt();
        (2.0 * PI / (40.0 * k)).min(0.1)
    };
    let y0 = [start.0, start.1 * x0];
    let (y, _) = integrate(
        rhs,
        x0.ln(),
        y0,
        x1.ln(),
        &StepControl::new(ODE_RTOL),
        cap,
        |_, _| {},
    )
    .ok()?;
    Some((y[0], y[1] / x1))
}

/// J_nu via series, ODE continuation, or the Hankel expansion.
pub(crate) fn bessel_j(nu: Complex64, x: f64) -> Option<Pair> {
    let nu_abs = nu.norm();
    let xs = series_limit(nu_abs);
    let xa = asymptotic_limit(nu_abs);
    if x <= xs {
        Some(series_j(nu, x))
    } else if x >= xa {
        let h1 = asymptotic_hankel(true, nu, x);
        let h2 = asymptotic_hankel(false, nu, x);
        Some((0.5 * (h1.0 + h2.0), 0.5 * (h1.1 + h2.1)))
    } else {
        propagate(nu * nu, xs, series_j(nu, xs), x)
    }
}

fn sin_pi(nu: Complex64) -> Complex64 {
    (PI * nu).sin()
}

/// |sin νπ| below this routes Hankel evaluation to the ODE path.
const CONNECTION_GUARD: f64 = 0.05;

/// H⁽¹⁾ (first = true) or H⁽²⁾ of order nu.
pub(crate) fn hankel(first: bool, nu: Complex64, x: f64) -> Option<Pair> {
    let nu_abs = nu.norm();
    let xa = asymptotic_limit(nu_abs);
    if x >= xa {
        return Some(asymptotic_hankel(first, nu, x));
    }
    let s = sin_pi(nu);
    if x <= series_limit(nu_abs) && s.norm() >= CONNECTION_GUARD {
        // H⁽¹⁾ = (J₋ν − e^{−iνπ} J_ν)/(i sin νπ), H⁽²⁾ = (J₋ν − e^{iνπ} J_ν)/(−i sin νπ)
        let jp = series_j(nu, x);
        let jm = series_j(-nu, x);
        let (phase, denom) = if first {
            ((-I * PI * nu).exp(), I * s)
        } else {
            ((I * PI * nu).exp(), -I * s)
        };
        return Some(((jm.0 - phase * jp.0) / denom, (jm.1 - phase * jp.1) / denom));
    }
    let start = asymptotic_hankel(first, nu, xa);
    propagate(nu * nu, xa, start, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let mut acc = Compensated::default();
        acc.add(c(1e16, 0.0));
        acc.add(c(1.0, 0.0));
        acc.add(c(-1e16, 0.0));
        assert_eq!(acc.value().re, 1.0);
    }

    #[test]
    fn series_and_ode_agree_on_overlap() {
        for nu in [c(0.4, 0.0), c(0.0, 1.3), c(-2.5, 0.0)] {
            let direct = series_j(nu, 10.0);
            let carried = propagate(nu * nu, 4.0, series_j(nu, 4.0), 10.0).unwrap();
            assert!(rel(carried.0, direct.0) < 1e-11, "nu = {nu}");
            assert!(rel(carried.1, direct.1) < 1e-11, "nu = {nu}");
        }
    }

    #[test]
    fn asymptotic_and_ode_agree_near_thirty() {
        let nu = c(0.0, 0.8);
        let far = asymptotic_hankel(true, nu, 40.0);
        let carried = propagate(nu * nu, 40.0, far, 30.0).unwrap();
        let direct = asymptotic_hankel(true, nu, 30.0);
        assert!(rel(carried.0, direct.0) < 1e-11);
    }
}
