//! Configurable-precision arithmetic, dense linear solving and bracketed
//! root finding.

pub mod linalg;
pub mod real;
pub mod roots;

pub use linalg::solve_linear;
pub use real::{BigFloat, DecimalDigits, Precision, Real};
pub use roots::{find_root, try_find_root};
