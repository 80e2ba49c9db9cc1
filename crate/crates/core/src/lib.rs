//! Euler-Heisenberg four-photon transition amplitudes between the quantized
//! modes of perfectly conducting rectangular cavities.
//!
//! The crate is organised bottom-up:
//!
//! * [`trig_algebra`]: exact arithmetic on surds and on trigonometric
//!   polynomials over the box, with a Gauss-Legendre oracle.
//! * [`mode_basis`]: cavity geometry, TE/TM and 1-D mode identities,
//!   eigenprofiles and their plane-wave decompositions.
//! * [`wick`]: Wick contractions of the normal-ordered quartic Lagrangian
//!   against Fock and coherent external states.
//! * [`amplitudes`]: assembled matrix elements for merging, scattering and
//!   coherent generation, plus the plane-wave vertex cross-check.
//! * [`resonance`]: solving `2 ω_pump = ω_1 + ω_2` over box proportions.
//! * [`experiment`]: probabilities, signal quanta and measurement time in
//!   physical units.
//! * [`verify`]: the self-check suite run by `cavity-eh verify`.

pub mod amplitudes;
pub mod error;
pub mod experiment;
pub mod mode_basis;
pub mod resonance;
pub mod trig_algebra;
pub mod verify;
pub mod wick;

pub use error::{Error, Result};
