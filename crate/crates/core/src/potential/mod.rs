//! Radial potentials: parsing, evaluation and arbitrary-order jets.

pub mod expr;
pub mod jet;

pub use expr::{parse_potential, Expr, PotentialExpr};
pub use jet::{jet, truncated_coulomb_jet, Jet};
