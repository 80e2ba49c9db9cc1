use std::collections::BTreeMap;

use num_complex::Complex64;

use super::geometry::CavityGeometry;
use super::mode::ModeId;
use super::profile::electric_profile;
use crate::error::Result;
use crate::trig_algebra::{TrigFactor, TrigKind};

/// One travelling-wave component of a standing cavity mode.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneWave {
    pub coefficient: Complex64,
    /// Signed harmonic numbers; the wavevector is `π·h_i / L_i`.
    pub harmonics: [i32; 3],
    pub wavevector: [f64; 3],
    pub polarization: [Complex64; 3],
}

impl PlaneWave {
    /// Contribution `c·ε·exp(i k·x)` at a point.
    pub fn eval(&self, point: [f64; 3]) -> [Complex64; 3] {
        let phase: f64 = (0..3).map(|a| self.wavevector[a] * point[a]).sum();
        let e = Complex64::from_polar(1.0, phase) * self.coefficient;
        self.polarization.map(|p| p * e)
    }
}

/// Splits a factor into exponentials `Σ w·exp(i·h·πx/L)`.
fn exponentials(f: TrigFactor) -> Vec<(i32, Complex64)> {
    let m = f.harmonic as i32;
    let inv_2i = Complex64::new(0.0, -0.5);
    match f.kind {
        TrigKind::Const => vec![(0, Complex64::new(1.0, 0.0))],
        TrigKind::Sin => vec![(m, inv_2i), (-m, -inv_2i)],
        TrigKind::Cos => vec![(m, Complex64::new(0.5, 0.0)), (-m, Complex64::new(0.5, 0.0))],
    }
}

/// Expands the electric profile of `mode` into plane waves.
///
/// 1-D modes give the two counter-propagating waves with coefficients
/// `±1/(2i)`; 3-D modes give up to eight, fewer when an index vanishes.
pub fn decompose_plane_waves(geom: &CavityGeometry, mode: &ModeId) -> Result<Vec<PlaneWave>> {
    let profile = electric_profile::<f64>(geom, mode)?;
    let lengths = geom.lengths_f64();

    // amplitude vector and the expansion weight of the first contributing term
    let mut waves: BTreeMap<[i32; 3], ([Complex64; 3], Option<Complex64>)> = BTreeMap::new();
    for (comp, poly) in profile.components.iter().enumerate() {
        for (key, c) in poly.terms() {
            let mut partial = vec![([0i32; 3], Complex64::new(1.0, 0.0))];
            for axis in 0..3 {
                let mut next = Vec::new();
                for (h, w) in &partial {
                    for (dh, dw) in exponentials(key[axis]) {
                        let mut h = *h;
                        h[axis] = dh;
                        next.push((h, w * dw));
                    }
                }
                partial = next;
            }
            for (h, w) in partial {
                let entry = waves.entry(h).or_insert(([Complex64::new(0.0, 0.0); 3], None));
                entry.0[comp] += w * c;
                entry.1.get_or_insert(w);
            }
        }
    }

    let pi = std::f64::consts::PI;
    Ok(waves
        .into_iter()
        .filter(|(_, (amp, _))| amp.iter().any(|a| a.norm() > 0.0))
        .map(|(h, (amp, weight))| {
            let coefficient = weight.unwrap_or(Complex64::new(1.0, 0.0));
            PlaneWave {
                coefficient,
                harmonics: h,
                wavevector: [0, 1, 2].map(|a| pi * h[a] as f64 / lengths[a]),
                polarization: amp.map(|a| a / coefficient),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mode_basis::mode::Polarization;

    #[test]
    fn one_d_mode_is_two_counter_propagating_waves() {
        let g = CavityGeometry::rational([(1, 1), (1, 1), (1, 1)]).unwrap();
        let waves = decompose_plane_waves(&g, &ModeId::one_d(Polarization::Y, 2)).unwrap();
        assert_eq!(waves.len(), 2);
        let by_sign: BTreeMap<i32, &PlaneWave> = waves.iter().map(|w| (w.harmonics[0], w)).collect();
        let inv_2i = Complex64::new(0.0, -0.5);
        assert!((by_sign[&2].coefficient - inv_2i).norm() < 1e-15);
        assert!((by_sign[&-2].coefficient + inv_2i).norm() < 1e-15);
        for w in &waves {
            assert_eq!(w.harmonics[1], 0);
            assert_eq!(w.harmonics[2], 0);
        }
    }

    #[test]
    fn te011_has_four_waves() {
        let g = CavityGeometry::rational([(1, 1), (2, 1), (3, 1)]).unwrap();
        let waves = decompose_plane_waves(&g, &ModeId::te(0, 1, 1)).unwrap();
        assert_eq!(waves.len(), 4);
        assert!(waves.iter().all(|w| w.harmonics[0] == 0));
    }

    #[test]
    fn generic_mode_has_eight_waves_with_real_polarizations() {
        let g = CavityGeometry::rational([(1, 1), (2, 1), (3, 1)]).unwrap();
        for mode in [ModeId::te(1, 2, 1), ModeId::tm(2, 1, 3)] {
            let waves = decompose_plane_waves(&g, &mode).unwrap();
            assert_eq!(waves.len(), 8);
            for w in &waves {
                assert!(w.polarization.iter().all(|p| p.im.abs() < 1e-14));
            }
        }
    }
}
