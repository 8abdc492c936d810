//! Partial-wave scattering and absorption for two-dimensional particles in
//! singular attractive potentials: an Aharonov–Bohm flux line combined with
//! a `rho^-2` or `rho^-4` core.
//!
//! - [`channel`]: closed-form channel solutions of the inverse-square problem
//! - [`quartic`]: the inverse-quartic core via a numerical connection problem
//! - [`oracle`]: independent ODE integration used to verify both
//! - [`specfun`]: Bessel and Hankel functions of real and imaginary order

pub mod certify;
pub mod channel;
pub mod error;
pub mod ode;
pub mod oracle;
pub mod quartic;
pub mod specfun;

pub use channel::{
    classify_mode, cross_sections, solve_channel, solve_mode, BoundaryModel, ChannelSolution, CrossSectionReport,
    ModelSchedule, PartialMode, Regime, ScatteringConfig,
};
pub use error::{Error, Result};
pub use quartic::{quartic_smatrix, QuarticConfig, QuarticModel, QuarticSchedule, QuarticSolution};
pub use specfun::{HankelKind, Order};
