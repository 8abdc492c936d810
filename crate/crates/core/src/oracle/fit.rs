use num_complex::Complex64;

use crate::error::{Error, Result};

/// Result of a two-function complex least-squares fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoTermFit {
    pub c1: Complex64,
    pub c2: Complex64,
    /// `||R - c1 f1 - c2 f2|| / || |c1 f1| + |c2 f2| ||` over the samples.
    pub residual: f64,
}

/// Fits `samples[i] ~ c1 f1[i] + c2 f2[i]` in the least-squares sense.
///
/// Columns are normalized before solving the 2x2 normal equations; nearly
/// collinear columns are rejected.
pub fn fit_two_terms(samples: &[Complex64], f1: &[Complex64], f2: &[Complex64]) -> Result<TwoTermFit> {
    let n = samples.len();
    if n < 2 || f1.len() != n || f2.len() != n {
        return Err(Error::FitDegenerate(format!("need at least two samples, got {n}")));
    }
    let dot = |u: &[Complex64], v: &[Complex64]| -> Complex64 { u.iter().zip(v).map(|(a, b)| a.conj() * b).sum() };
    let n1 = dot(f1, f1).re.sqrt();
    let n2 = dot(f2, f2).re.sqrt();
    if !(n1 > 0.0 && n2 > 0.0) {
        return Err(Error::FitDegenerate("basis function vanishes on the window".into()));
    }
    let g11 = 1.0;
    let g22 = 1.0;
    let g12 = dot(f1, f2) / (n1 * n2);
    let det = g11 * g22 - g12.norm_sqr();
    if det < 1e-12 {
        return Err(Error::FitDegenerate(format!("basis nearly collinear (1 - |cos|^2 = {det:.3e})")));
    }
    let r1 = dot(f1, samples) / n1;
    let r2 = dot(f2, samples) / n2;
    let u1 = (g22 * r1 - g12 * r2) / det;
    let u2 = (g11 * r2 - g12.conj() * r1) / det;
    let c1 = u1 / n1;
    let c2 = u2 / n2;

    let mut res = 0.0;
    let mut scale = 0.0;
    for i in 0..n {
        let a = c1 * f1[i];
        let b = c2 * f2[i];
        res += (samples[i] - a - b).norm_sqr();
        scale += (a.norm() + b.norm()).powi(2);
    }
    let residual = if scale > 0.0 { (res / scale).sqrt() } else { res.sqrt() };
    Ok(TwoTermFit { c1, c2, residual })
}
