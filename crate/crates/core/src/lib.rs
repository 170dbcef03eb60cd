//! Shifted-ℓ expansion for bound states of the radial Schrödinger equation.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod leading;
pub mod numeric;
pub mod oracle;
pub mod potential;
pub mod record;
pub mod resum;
pub mod series;
pub mod tables;

pub use error::{Error, Result};
pub use leading::{solve_leading, LeadingOrder, QuantumState};
pub use numeric::{BigFloat, Precision, Real};
pub use potential::{parse_potential, PotentialExpr};
pub use series::{energy_series, optimal_truncation, EnergySeries};

pub type EnergySeriesMp = EnergySeries<BigFloat>;
pub type EnergySeries64 = EnergySeries<f64>;
