use itertools::Itertools;
use num_complex::Complex64;
use serde::Serialize;

use super::vertex::{eh_four_photon_vertex, PlaneWaveLeg};
use super::{matrix_element, Couplings, ProcessSpec};
use crate::error::Result;
use crate::mode_basis::{decompose_plane_waves, PlaneWave};
use crate::trig_algebra::ExactValue;
use crate::wick::Side;

/// One plane-wave tuple that conserves four-momentum.
#[derive(Clone, Debug, Serialize)]
pub struct PlaneWaveSurvivor {
    /// Signed harmonics of each leg, incoming legs first.
    pub harmonics: Vec<[i32; 3]>,
    /// Product of the expansion coefficients.
    #[serde(serialize_with = "serialize_complex")]
    pub weight: Complex64,
    #[serde(serialize_with = "serialize_complex")]
    pub vertex: Complex64,
    pub collinear: bool,
    /// `|weight|·κ(1+|β|)·4!·Π ω|ε|`, the size a non-cancelling vertex would have.
    #[serde(skip)]
    magnitude: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaneWaveReport {
    pub total_tuples: usize,
    /// Tuples whose signed harmonics balance on every axis.
    pub momentum_conserving: usize,
    pub survivors: Vec<PlaneWaveSurvivor>,
    pub all_collinear: bool,
    #[serde(serialize_with = "serialize_complex")]
    pub plane_wave_total: Complex64,
    pub cavity_amplitude: f64,
    /// Both sums vanish, or neither does.
    pub consistent: bool,
}

fn serialize_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(2))?;
    seq.serialize_element(&z.re)?;
    seq.serialize_element(&z.im)?;
    seq.end()
}

fn parallel(a: [f64; 3], b: [f64; 3]) -> bool {
    let cross = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
    let norm = |v: [f64; 3]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    norm(cross) <= 1e-12 * norm(a) * norm(b)
}

/// Cavity amplitude and whether it vanishes, exactly when the geometry allows.
fn cavity_total(process: &ProcessSpec, couplings: Couplings) -> Result<(f64, bool)> {
    if let Ok(a) = matrix_element::<ExactValue>(process) {
        return Ok((a.total(couplings), a.is_exact_zero()));
    }
    let a = matrix_element::<f64>(process)?;
    let scale: f64 = a.pattern_sums.iter().map(|x| x.abs()).sum();
    let total = a.total(couplings);
    Ok((total, total.abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE)))
}

/// Expands every leg into plane waves, keeps the four-momentum conserving
/// tuples and sums coefficient products times the plane-wave vertex.
pub fn planewave_consistency(process: &ProcessSpec, couplings: Couplings) -> Result<PlaneWaveReport> {
    let geom = process.geometry();
    let legs = process.state().legs();
    let expansions: Vec<Vec<PlaneWave>> =
        legs.iter().map(|(mode, _)| decompose_plane_waves(geom, mode)).collect::<Result<_>>()?;

    let mut total_tuples = 0;
    let mut momentum_conserving = 0;
    let mut survivors = Vec::new();
    for tuple in expansions.iter().map(|e| e.iter()).multi_cartesian_product() {
        total_tuples += 1;
        let mut balance = [0i32; 3];
        let mut energy = 0.0;
        let mut scale: f64 = 0.0;
        for (wave, (_, side)) in tuple.iter().zip(&legs) {
            let s = if *side == Side::In { 1 } else { -1 };
            for (b, h) in balance.iter_mut().zip(wave.harmonics) {
                *b += s * h;
            }
            let omega = wave.wavevector.iter().map(|k| k * k).sum::<f64>().sqrt();
            energy += f64::from(s) * omega;
            scale = scale.max(omega);
        }
        if balance != [0; 3] {
            continue;
        }
        momentum_conserving += 1;
        if energy.abs() > 1e-12 * scale {
            continue;
        }
        let plane_legs: Vec<PlaneWaveLeg> = tuple
            .iter()
            .zip(&legs)
            .map(|(w, (_, side))| PlaneWaveLeg::new(w.wavevector, w.polarization, *side))
            .collect::<Result<_>>()?;
        let plane_legs: [PlaneWaveLeg; 4] = plane_legs.try_into().map_err(|v: Vec<_>| crate::Error::LegCount(v.len()))?;
        let vertex = eh_four_photon_vertex(&plane_legs, couplings)?;
        let size: f64 = tuple
            .iter()
            .map(|w| w.wavevector.iter().map(|k| k * k).sum::<f64>().sqrt() * w.polarization.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt())
            .product();
        let weight: Complex64 = tuple.iter().map(|w| w.coefficient).product();
        let magnitude = weight.norm() * couplings.kappa.abs() * (1.0 + couplings.beta.abs()) * 24.0 * size;
        let collinear = tuple.iter().tuple_combinations().all(|(a, b)| parallel(a.wavevector, b.wavevector));
        survivors.push(PlaneWaveSurvivor {
            harmonics: tuple.iter().map(|w| w.harmonics).collect(),
            weight,
            vertex,
            collinear,
            magnitude,
        });
    }

    let plane_wave_total: Complex64 = survivors.iter().map(|s| s.weight * s.vertex).sum();
    let (cavity_amplitude, cavity_zero) = cavity_total(process, couplings)?;
    let vertex_scale: f64 = survivors.iter().map(|s| s.magnitude).sum();
    let pw_zero = plane_wave_total.norm() <= 1e-12 * vertex_scale.max(f64::MIN_POSITIVE);
    Ok(PlaneWaveReport {
        total_tuples,
        momentum_conserving,
        all_collinear: survivors.iter().all(|s| s.collinear),
        survivors,
        plane_wave_total,
        cavity_amplitude,
        consistent: pw_zero == cavity_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mode_basis::{CavityGeometry, Polarization};

    #[test]
    fn one_d_merge_keeps_two_of_sixteen() {
        let g = CavityGeometry::rational([(1, 1), (1, 1), (1, 1)]).unwrap();
        let y = Polarization::Y;
        let p = ProcessSpec::merge_3to1_1d(g, 1, 1, 3, [y; 4]).unwrap();
        let r = planewave_consistency(&p, Couplings::unit_qed()).unwrap();
        assert_eq!(r.total_tuples, 16);
        assert_eq!(r.survivors.len(), 2);
        assert!(r.all_collinear);
        assert!(r.plane_wave_total.norm() < 1e-12);
        assert!(r.consistent);
    }
}
