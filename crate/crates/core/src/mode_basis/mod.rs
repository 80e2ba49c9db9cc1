//! Cavity geometry, mode labels, eigenprofiles and plane-wave decompositions.

mod geometry;
mod mode;
mod plane_wave;
mod profile;

pub use geometry::{parse_rational, Axis, CavityGeometry};
pub use mode::{
    enumerate_modes, mode_frequency, mode_frequency_f64, validate_mode, ModeFamily, ModeId, Polarization,
    MAX_MODE_INDEX,
};
pub use plane_wave::{decompose_plane_waves, PlaneWave};
pub use profile::{electric_profile, magnetic_profile};
