//! Partial-wave channels of the flux line with a `rho^-2` core.

mod amplitude;
mod config;
mod cross_section;
mod current;
mod model;
mod solve;

pub use amplitude::*;
pub use config::*;
pub use cross_section::*;
pub use current::*;
pub use model::*;
pub use solve::*;
