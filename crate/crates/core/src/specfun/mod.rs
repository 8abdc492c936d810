//! Bessel and Hankel functions of real or purely imaginary order at real
//! positive argument, plus the complex Gamma function.
//!
//! Evaluation strategy by argument:
//!
//! * `x <= max(10, 2 sqrt(|nu| + 1))`: ascending power series with
//!   compensated summation. Hankel functions come from the connection
//!   formula `H1 = (J_{-nu} - e^{-i nu pi} J_nu) / (i sin nu pi)` unless
//!   `|sin nu pi| < 0.05` (near-integer real order, or tiny imaginary
//!   order), where the ODE route below is used instead.
//! * `x >= max(30, nu^2 / 2)`: the large-argument Hankel expansion.
//! * in between: Bessel's equation is integrated in `ln x`. J is carried
//!   forward from the series region and H backward from the expansion
//!   region, which is the stable direction for each.

mod bessel;
mod gamma;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use gamma::{complex_gamma, real_gamma, reciprocal_gamma};

#[allow(unused_imports)]
pub(crate) use bessel::asymptotic_hankel;

/// Largest supported order magnitude.
pub const MAX_ORDER: f64 = 50.0;
/// Largest supported argument.
pub const MAX_ARGUMENT: f64 = 1e4;

/// Bessel order: real `mu >= 0`, or purely imaginary `i mu` with `mu > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Order {
    Real(f64),
    Imaginary(f64),
}

impl Order {
    pub fn real(mu: f64) -> Result<Self> {
        if mu.is_finite() && mu >= 0.0 {
            Ok(Order::Real(mu))
        } else {
            Err(Error::InvalidConfig(format!("real order must be >= 0, got {mu}")))
        }
    }

    pub fn imaginary(mu: f64) -> Result<Self> {
        if mu.is_finite() && mu > 0.0 {
            Ok(Order::Imaginary(mu))
        } else {
            Err(Error::InvalidConfig(format!("imaginary order must be > 0, got {mu}")))
        }
    }

    /// Order whose square is `nu_sq`: real for `nu_sq >= 0`, imaginary otherwise.
    pub fn from_nu_squared(nu_sq: f64) -> Result<Self> {
        if nu_sq >= 0.0 {
            Order::real(nu_sq.sqrt())
        } else {
            Order::imaginary((-nu_sq).sqrt())
        }
    }

    /// The magnitude `mu`.
    pub fn mu(&self) -> f64 {
        match *self {
            Order::Real(mu) | Order::Imaginary(mu) => mu,
        }
    }

    /// The order as a complex number `nu`.
    pub fn nu(&self) -> Complex64 {
        match *self {
            Order::Real(mu) => Complex64::new(mu, 0.0),
            Order::Imaginary(mu) => Complex64::new(0.0, mu),
        }
    }

    pub fn nu_squared(&self) -> f64 {
        match *self {
            Order::Real(mu) => mu * mu,
            Order::Imaginary(mu) => -mu * mu,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HankelKind {
    First,
    Second,
}

fn check_box(order: Order, x: f64) -> Result<()> {
    let mu = order.mu();
    if !(x > 0.0 && x <= MAX_ARGUMENT && mu.is_finite() && mu <= MAX_ORDER) {
        return Err(Error::Range { order: mu, x });
    }
    Ok(())
}

fn finite(v: (Complex64, Complex64), order: Order, x: f64) -> Result<(Complex64, Complex64)> {
    if v.0.is_finite() && v.1.is_finite() {
        Ok(v)
    } else {
        Err(Error::Range { order: order.mu(), x })
    }
}

/// J_nu(x) together with its derivative.
pub fn bessel_j_with_derivative(order: Order, x: f64) -> Result<(Complex64, Complex64)> {
    check_box(order, x)?;
    let v = bessel::bessel_j(order.nu(), x).ok_or(Error::Range { order: order.mu(), x })?;
    let v = match order {
        Order::Real(_) => (Complex64::new(v.0.re, 0.0), Complex64::new(v.1.re, 0.0)),
        Order::Imaginary(_) => v,
    };
    finite(v, order, x)
}

pub fn bessel_j(order: Order, x: f64) -> Result<Complex64> {
    bessel_j_with_derivative(order, x).map(|v| v.0)
}

/// J_{-nu}(x) and its derivative: the reflected order `-mu` or `-i mu`.
pub fn bessel_j_reflected_with_derivative(order: Order, x: f64) -> Result<(Complex64, Complex64)> {
    check_box(order, x)?;
    match order {
        // J_{-i mu}(x) = conj J_{i mu}(x) for real x
        Order::Imaginary(_) => {
            bessel_j_with_derivative(order, x).map(|(v, d)| (v.conj(), d.conj()))
        }
        Order::Real(mu) => {
            let n = mu.round();
            if (mu - n).abs() < 1e-12 {
                let sign = if n as i64 % 2 == 0 { 1.0 } else { -1.0 };
                return bessel_j_with_derivative(order, x).map(|(v, d)| (v * sign, d * sign));
            }
            let v = bessel::bessel_j(Complex64::new(-mu, 0.0), x)
                .ok_or(Error::Range { order: mu, x })?;
            finite((Complex64::new(v.0.re, 0.0), Complex64::new(v.1.re, 0.0)), order, x)
        }
    }
}

/// H⁽¹⁾_nu(x) or H⁽²⁾_nu(x) together with the derivative.
pub fn hankel_with_derivative(
    kind: HankelKind,
    order: Order,
    x: f64,
) -> Result<(Complex64, Complex64)> {
    check_box(order, x)?;
    let first = kind == HankelKind::First;
    let v = match order {
        // H⁽²⁾_mu = conj H⁽¹⁾_mu for real order and argument
        Order::Real(_) => {
            let h = bessel::hankel(true, order.nu(), x).ok_or(Error::DegenerateOrder(order.mu()))?;
            if first {
                h
            } else {
                (h.0.conj(), h.1.conj())
            }
        }
        Order::Imaginary(_) => {
            bessel::hankel(first, order.nu(), x).ok_or(Error::DegenerateOrder(order.mu()))?
        }
    };
    finite(v, order, x)
}

pub fn hankel(kind: HankelKind, order: Order, x: f64) -> Result<Complex64> {
    hankel_with_derivative(kind, order, x).map(|v| v.0)
}

/// Deviation of the Hankel Wronskian from its exact value,
/// `|W{H1, H2}(x) * (i pi x / 4) - 1|` with `W = -4i / (pi x)`.
pub fn wronskian_check(order: Order, x: f64) -> Result<f64> {
    let h1 = hankel_with_derivative(HankelKind::First, order, x)?;
    let h2 = hankel_with_derivative(HankelKind::Second, order, x)?;
    Ok(wronskian_deviation(h1, h2, x))
}

pub fn wronskian_deviation(
    h1: (Complex64, Complex64),
    h2: (Complex64, Complex64),
    x: f64,
) -> f64 {
    let w = h1.0 * h2.1 - h1.1 * h2.0;
    (w * Complex64::new(0.0, std::f64::consts::PI * x / 4.0) - 1.0).norm()
}
