//! Exact trigonometric polynomial algebra over a rectangular box.

mod exact;
mod poly;
mod quadrature;
mod scalar;

pub use exact::ExactValue;
pub use poly::{TrigFactor, TrigKey, TrigKind, TrigPoly, VectorTrigPoly, MAX_HARMONIC};
pub use quadrature::{gauss_legendre, integrate_numeric, min_points};
pub use scalar::Scalar;

pub(crate) use exact::rational_to_f64;
