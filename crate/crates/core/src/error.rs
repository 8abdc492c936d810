use thiserror::Error;

/// Every failure the solvers can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at z = {0}")]
    Pole(f64),

    #[error("argument outside the supported box: order {order}, x = {x}")]
    Range { order: f64, x: f64 },

    #[error("integer-order Hankel evaluation failed for order {0}")]
    DegenerateOrder(f64),

    #[error("mode m = {m} sits on a regime boundary (|m - beta| = {distance})")]
    DegenerateMode { m: i64, distance: f64 },

    #[error("boundary model {model} does not apply to {regime} mode m = {m}")]
    ModelRegimeMismatch {
        m: i64,
        model: &'static str,
        regime: &'static str,
    },

    #[error("custom ratio for mode m = {m} gives |S_m| = {modulus} > 1")]
    UnitarityViolation { m: i64, modulus: f64 },

    #[error("scattering angle {phi} is inside the forward exclusion cone {phi_min}")]
    ForwardDirection { phi: f64, phi_min: f64 },

    #[error("non-regular mode m = {m} lies outside the requested range [{lo}, {hi}]")]
    IncompleteRange { m: i64, lo: i64, hi: i64 },

    #[error("integrator step collapsed at rho = {rho}")]
    Stiffness { rho: f64 },

    #[error("asymptotic fit is degenerate: {0}")]
    FitDegenerate(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
