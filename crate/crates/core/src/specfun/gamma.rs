use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

// Lanczos approximation, g = 7, nine terms.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const POLE_TOLERANCE: f64 = 1e-14;

fn is_pole(z: Complex64) -> bool {
    z.im.abs() < POLE_TOLERANCE && z.re <= POLE_TOLERANCE && (z.re - z.re.round()).abs() < POLE_TOLERANCE
}

/// ln Γ(z) for Re z ≥ 1/2 (principal branch of the Lanczos sum, not
/// continuous across the negative real axis of the result).
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut sum = Complex64::new(LANCZOS[0], 0.0);
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        sum += *c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + sum.ln()
}

/// Γ(z) for complex `z`.
pub fn complex_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::InvalidConfig(format!("non-finite gamma argument {z}")));
    }
    if is_pole(z) {
        return Err(Error::Pole(z.re));
    }
    if z.re < 0.5 {
        // Γ(z) Γ(1 − z) = π / sin(πz)
        let s = (PI * z).sin();
        Ok(PI / (s * ln_gamma_right(1.0 - z).exp()))
    } else {
        Ok(ln_gamma_right(z).exp())
    }
}

/// 1/Γ(z); entire, so poles of Γ map to exact zeros.
pub fn reciprocal_gamma(z: Complex64) -> Complex64 {
    if is_pole(z) {
        return Complex64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        (PI * z).sin() * ln_gamma_right(1.0 - z).exp() / PI
    } else {
        (-ln_gamma_right(z)).exp()
    }
}

/// Γ(x) for real `x`.
pub fn real_gamma(x: f64) -> Result<f64> {
    complex_gamma(Complex64::new(x, 0.0)).map(|g| g.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn gamma_of_one_and_half() {
        let one = complex_gamma(Complex64::new(1.0, 0.0)).unwrap();
        assert!((one - 1.0).norm() < 1e-14);
        let half = complex_gamma(Complex64::new(0.5, 0.0)).unwrap();
        assert!((half.re - PI.sqrt()).abs() < 1e-14);
    }

    // Reference values from a 30-digit evaluation.
    #[test]
    fn gamma_matches_high_precision_references() {
        let cases = [
            (
                Complex64::new(1.0, 1.0),
                Complex64::new(0.498_015_668_118_356_04, -0.154_949_828_301_810_69),
            ),
            (
                Complex64::new(0.3, -2.7),
                Complex64::new(0.028_059_879_610_273_216, 0.009_433_071_836_457_113_6),
            ),
            (
                Complex64::new(-3.5, 0.2),
                Complex64::new(0.216_802_261_225_436_74, 0.061_839_525_441_077_677),
            ),
            (
                Complex64::new(25.0, 10.0),
                Complex64::new(5.699_868_950_101_421_5e22, 6.310_401_914_827_461_6e22),
            ),
        ];
        for (z, expected) in cases {
            let got = complex_gamma(z).unwrap();
            assert!(rel(got, expected) < 1e-12, "Γ({z}) = {got}, expected {expected}");
        }
    }

    #[test]
    fn factorials_up_to_forty() {
        let mut fact = 1.0f64;
        for n in 1..40 {
            let g = real_gamma(n as f64).unwrap();
            assert!(((g - fact) / fact).abs() < 1e-12, "n = {n}");
            fact *= n as f64;
        }
    }

    #[test]
    fn poles_are_rejected_and_reciprocal_vanishes() {
        for n in 0..5 {
            let z = Complex64::new(-(n as f64), 0.0);
            assert_eq!(complex_gamma(z), Err(Error::Pole(-(n as f64))));
            assert_eq!(reciprocal_gamma(z), Complex64::new(0.0, 0.0));
        }
        assert!(complex_gamma(Complex64::new(-2.0 + 1e-6, 0.0)).is_ok());
    }

    #[test]
    fn recurrence_and_reflection_hold_off_axis() {
        for &(re, im) in &[(0.2, 3.0), (-4.3, 1.1), (12.0, -7.5), (-0.5, 0.01)] {
            let z = Complex64::new(re, im);
            let g = complex_gamma(z).unwrap();
            let g1 = complex_gamma(z + 1.0).unwrap();
            assert!(rel(g1, z * g) < 1e-12);
            let refl = g * complex_gamma(1.0 - z).unwrap() * (PI * z).sin();
            assert!((refl - PI).norm() / PI < 1e-12);
            assert!(rel(reciprocal_gamma(z) * g, Complex64::new(1.0, 0.0)) < 1e-12);
        }
    }

    #[test]
    fn modulus_identity_on_the_line_one_plus_i_mu() {
        // |Γ(1 + iμ)|² = πμ / sinh(πμ)
        for &mu in &[0.1, 0.4, 1.7, 5.0, 20.0] {
            let g = complex_gamma(Complex64::new(1.0, mu)).unwrap();
            let exact = PI * mu / (PI * mu).sinh();
            assert!((g.norm_sqr() - exact).abs() / exact < 1e-12, "mu = {mu}");
        }
    }
}
