//! Adaptive Dormand–Prince 5(4) integrator for the two-component complex
//! systems `y' = f(t, y)` that all radial problems here reduce to.

use num_complex::Complex64;

pub type State = [Complex64; 2];

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// fifth-order weights minus embedded fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;

/// Step control for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl {
    /// Local error tolerance relative to the state norm.
    pub rtol: f64,
    /// Absolute floor added to the error scale.
    pub atol: f64,
    /// Initial step magnitude; `None` picks one from the right-hand side.
    pub initial_step: Option<f64>,
}

impl StepControl {
    pub fn new(rtol: f64) -> Self {
        Self {
            rtol,
            atol: 1e-300,
            initial_step: None,
        }
    }
}

/// The step size fell below the representable resolution at `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepCollapse {
    pub t: f64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct IntegrationStats {
    pub accepted: usize,
    pub rejected: usize,
}

fn axpy(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for (w, k) in terms {
        if *w != 0.0 {
            out[0] += k[0] * (h * w);
            out[1] += k[1] * (h * w);
        }
    }
    out
}

fn norm(y: &State) -> f64 {
    y[0].norm().max(y[1].norm())
}

/// Integrates from `t0` to `t1` (either direction).
///
/// `max_step(t)` caps the step magnitude locally. `observer` sees every
/// accepted point including the final one, but not the initial point.
pub fn integrate<F, M, O>(
    f: F,
    t0: f64,
    y0: State,
    t1: f64,
    control: &StepControl,
    max_step: M,
    mut observer: O,
) -> Result<(State, IntegrationStats), StepCollapse>
where
    F: Fn(f64, &State) -> State,
    M: Fn(f64) -> f64,
    O: FnMut(f64, &State),
{
    let mut stats = IntegrationStats::default();
    if t1 == t0 {
        return Ok((y0, stats));
    }
    let dir = (t1 - t0).signum();
    let span = (t1 - t0).abs();
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);

    let mut h = match control.initial_step {
        Some(h) => h.abs(),
        None => {
            let dnorm = norm(&k1);
            let ynorm = norm(&y).max(control.atol);
            if dnorm > 0.0 {
                0.01 * ynorm / dnorm
            } else {
                1e-3 * span
            }
        }
    }
    .min(span)
    .min(max_step(t));

    loop {
        let remaining = (t1 - t) * dir;
        if remaining <= 0.0 {
            break;
        }
        let cap = max_step(t);
        let mut last = false;
        if h >= cap {
            h = cap;
        }
        if h >= remaining {
            h = remaining;
            last = true;
        }
        if h < 1e-14 * t.abs().max(1.0) && !last {
            return Err(StepCollapse { t });
        }
        let hs = h * dir;

        let k2 = f(t + C2 * hs, &axpy(&y, hs, &[(A21, &k1)]));
        let k3 = f(t + C3 * hs, &axpy(&y, hs, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(
            t + C4 * hs,
            &axpy(&y, hs, &[(A41, &k1), (A42, &k2), (A43, &k3)]),
        );
        let k5 = f(
            t + C5 * hs,
            &axpy(&y, hs, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = f(
            t + hs,
            &axpy(
                &y,
                hs,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            ),
        );
        let y_new = axpy(
            &y,
            hs,
            &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
        );
        let k7 = f(t + hs, &y_new);

        let err_vec = axpy(
            &[Complex64::new(0.0, 0.0); 2],
            hs,
            &[
                (E1, &k1),
                (E3, &k3),
                (E4, &k4),
                (E5, &k5),
                (E6, &k6),
                (E7, &k7),
            ],
        );
        let scale = control.atol + control.rtol * norm(&y).max(norm(&y_new));
        let err = norm(&err_vec) / scale;

        if err <= 1.0 {
            t = if last { t1 } else { t + hs };
            y = y_new;
            k1 = k7;
            stats.accepted += 1;
            observer(t, &y);
            let factor = if err == 0.0 {
                MAX_FACTOR
            } else {
                (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
            };
            if last {
                break;
            }
            h *= factor;
        } else {
            stats.rejected += 1;
            let factor = if err.is_finite() {
                (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, 1.0)
            } else {
                MIN_FACTOR
            };
            h *= factor;
        }
    }
    Ok((y, stats))
}
