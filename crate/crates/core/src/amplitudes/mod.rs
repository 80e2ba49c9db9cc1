//! Four-photon matrix elements between cavity states.
//!
//! The spatial matrix element is split by electromagnetic invariant,
//! `M = κ·c_F4 + κβ·c_FFdual`, and never carries the energy delta; that
//! factor is applied in the probability layer.

mod closed_form;
mod merge;
mod planewave;
mod vertex;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mode_basis::{CavityGeometry, ModeId, Polarization};
use crate::trig_algebra::Scalar;
use crate::wick::{
    coherent_enhancement, enumerate_contractions, fock_normalization, CoherentLabel, ExternalState,
    LagrangianTerm, Normalization,
};

pub use closed_form::{
    g1_squared, g1_tilde_squared, m22_closed_form, resonant_bracket, scatter_2to2_components,
    BracketComponents,
};
pub use merge::{merge_3to1_term, merge_bracket_closed_form, polarization_factor, MergeBrackets};
pub use planewave::{planewave_consistency, PlaneWaveReport, PlaneWaveSurvivor};
pub use vertex::{eh_four_photon_vertex, PlaneWaveLeg};

/// Couplings of the quartic Lagrangian `κ[(F²)² + β(FF̃)²]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Couplings {
    pub kappa: f64,
    pub beta: f64,
}

impl Couplings {
    pub fn new(kappa: f64, beta: f64) -> Self {
        Self { kappa, beta }
    }

    /// `κ = 1`, `β = 7/4`: amplitudes in units of `κ`.
    pub fn unit_qed() -> Self {
        Self { kappa: 1.0, beta: 1.75 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProcessTag {
    #[serde(rename = "merge_3to1_1d")]
    Merge3to1OneD,
    #[serde(rename = "merge_3to1_3d")]
    Merge3to1ThreeD,
    #[serde(rename = "scatter_2to2")]
    Scatter2to2,
    CoherentMinus,
}

impl ProcessTag {
    fn leg_counts(self) -> (u32, u32) {
        match self {
            ProcessTag::Merge3to1OneD | ProcessTag::Merge3to1ThreeD => (3, 1),
            ProcessTag::Scatter2to2 | ProcessTag::CoherentMinus => (2, 2),
        }
    }
}

/// A cavity process: geometry, external legs and their energy bookkeeping.
#[derive(Clone, Debug)]
pub struct ProcessSpec {
    geometry: CavityGeometry,
    state: ExternalState,
    tag: ProcessTag,
    energy_in: f64,
    energy_out: f64,
}

impl ProcessSpec {
    pub fn new(geometry: CavityGeometry, state: ExternalState, tag: ProcessTag) -> Result<Self> {
        let count = |side: &[(ModeId, u32)]| side.iter().map(|(_, o)| *o).sum::<u32>();
        let (n_in, n_out) = (count(state.incoming()), count(state.outgoing()));
        if (n_in, n_out) != tag.leg_counts() {
            return Err(Error::InvalidState(format!(
                "{tag:?} needs {:?} (in, out) quanta, got ({n_in}, {n_out})",
                tag.leg_counts()
            )));
        }
        let modes: Vec<&ModeId> = state.incoming().iter().chain(state.outgoing()).map(|(m, _)| m).collect();
        let one_d = modes.iter().filter(|m| m.is_one_d()).count();
        if one_d != 0 && one_d != modes.len() {
            return Err(Error::IncompatibleModes("slab and box modes in one process".into()));
        }
        let wants_one_d = tag == ProcessTag::Merge3to1OneD;
        if (one_d > 0) != wants_one_d {
            return Err(Error::IncompatibleModes(format!("{tag:?} does not accept these mode families")));
        }
        if (tag == ProcessTag::CoherentMinus) == state.coherent().is_empty() {
            return Err(Error::InvalidState("coherent labels are required exactly for CoherentMinus".into()));
        }
        let energy_in = state.energy_in(&geometry)?;
        let energy_out = state.energy_out(&geometry)?;
        Ok(Self { geometry, state, tag, energy_in, energy_out })
    }

    /// `|1ⁱ_n 1ʲ_n 1ˡ_p⟩ → |1ˢ_s⟩` in a slab, built from bare creation operators.
    pub fn merge_3to1_1d(geometry: CavityGeometry, n: u32, p: u32, s: u32, pols: [Polarization; 4]) -> Result<Self> {
        let [i, j, l, f] = pols;
        let incoming = [ModeId::one_d(i, n), ModeId::one_d(j, n), ModeId::one_d(l, p)];
        let state = ExternalState::from_quanta(&incoming, &[ModeId::one_d(f, s)], Normalization::BareOperators)?;
        Self::new(geometry, state, ProcessTag::Merge3to1OneD)
    }

    /// `|2_pump, 1_partner⟩ → |1_signal⟩` in a box (Fock normalized).
    pub fn merge_3to1_3d(geometry: CavityGeometry, pump: ModeId, partner: ModeId, signal: ModeId) -> Result<Self> {
        let state = ExternalState::from_quanta(&[pump, pump, partner], &[signal], Normalization::Fock)?;
        Self::new(geometry, state, ProcessTag::Merge3to1ThreeD)
    }

    /// `|2_pump⟩ → |1_sig1, 1_sig2⟩` (Fock normalized).
    pub fn scatter_2to2(geometry: CavityGeometry, pump: ModeId, sig1: ModeId, sig2: ModeId) -> Result<Self> {
        let state = ExternalState::from_quanta(&[pump, pump], &[sig1, sig2], Normalization::Fock)?;
        Self::new(geometry, state, ProcessTag::Scatter2to2)
    }

    /// Coherent pump `ξ` and partner `η` generating one signal quantum through
    /// the elementary `2 pump → partner + signal` channel.
    pub fn coherent_minus(
        geometry: CavityGeometry,
        pump: ModeId,
        partner: ModeId,
        signal: ModeId,
        xi: Complex64,
        eta: Complex64,
    ) -> Result<Self> {
        let state = ExternalState::from_quanta(&[pump, pump], &[partner, signal], Normalization::Fock)?
            .with_coherent(vec![
                CoherentLabel { mode: pump, amplitude: xi },
                CoherentLabel { mode: partner, amplitude: eta },
            ])?;
        Self::new(geometry, state, ProcessTag::CoherentMinus)
    }

    pub fn geometry(&self) -> &CavityGeometry {
        &self.geometry
    }

    pub fn state(&self) -> &ExternalState {
        &self.state
    }

    pub fn tag(&self) -> ProcessTag {
        self.tag
    }

    pub fn energy_in(&self) -> f64 {
        self.energy_in
    }

    pub fn energy_out(&self) -> f64 {
        self.energy_out
    }

    /// Resonant when `Σω_out − Σω_in` is an exact zero or below `10⁻¹²·Σω_in`.
    pub fn is_resonant(&self) -> bool {
        let exact = self.state.energy_mismatch::<crate::trig_algebra::ExactValue>(&self.geometry);
        match exact {
            Ok(m) => m.is_zero(),
            Err(_) => (self.energy_out - self.energy_in).abs() <= 1e-12 * self.energy_in,
        }
    }
}

/// Spatial matrix element split by invariant.
///
/// `pattern_sums` are the contraction sums of the four Lagrangian monomials
/// in the order of [`LagrangianTerm::ALL`], already multiplied by the Fock
/// normalization but not by `4κ` or the monomial weights.
#[derive(Clone, Debug, PartialEq)]
pub struct AmplitudeValue<S: Scalar> {
    pub c_f4: S,
    pub c_ffdual: S,
    pub pattern_sums: [S; 4],
    /// Coherent-state factor relative to the Fock element (1 otherwise).
    pub prefactor: Complex64,
    pub resonant: bool,
    pub energy_mismatch: f64,
}

impl<S: Scalar> AmplitudeValue<S> {
    /// `κ·c_F4 + κβ·c_FFdual`, without the coherent prefactor.
    pub fn total(&self, couplings: Couplings) -> f64 {
        couplings.kappa * (self.c_f4.to_f64() + couplings.beta * self.c_ffdual.to_f64())
    }

    /// Same combination carried out in the coefficient field.
    pub fn total_exact(&self, kappa: S, beta: S) -> S {
        kappa.clone() * self.c_f4.clone() + kappa * beta * self.c_ffdual.clone()
    }

    pub fn complex_total(&self, couplings: Couplings) -> Complex64 {
        self.prefactor * self.total(couplings)
    }

    pub fn is_exact_zero(&self) -> bool {
        self.c_f4.is_zero() && self.c_ffdual.is_zero()
    }

    pub fn warning(&self) -> Option<String> {
        (!self.resonant).then(|| {
            format!(
                "process is off resonance (Σω_out − Σω_in = {:.6e}); amplitude returned without the energy delta",
                self.energy_mismatch
            )
        })
    }
}

/// Contraction sum of one monomial, times the Fock normalization. Coherent
/// legs are normalized as Fock states here; their factor is the prefactor.
pub fn pattern_sum<S: Scalar>(term: LagrangianTerm, process: &ProcessSpec) -> Result<S> {
    let geom = &process.geometry;
    let mut total = S::zero();
    for c in enumerate_contractions::<S>(term, &process.state, geom)? {
        total = total + c.spatial_value(geom)?;
    }
    let norm = if process.state.coherent().is_empty() {
        fock_normalization::<S>(&process.state)?
    } else {
        fock_normalization::<S>(&process.state.as_fock())?
    };
    Ok(total * norm)
}

/// Sums every Wick contraction of the four monomials and splits the result
/// into `c_F4 = 4(⟨E⁴⟩ − 2⟨B²E²⟩ + ⟨B⁴⟩)` and `c_FFdual = 16⟨(B·E)²⟩`.
pub fn matrix_element<S: Scalar>(process: &ProcessSpec) -> Result<AmplitudeValue<S>> {
    let [ee, mixed, bb, dual] = [
        LagrangianTerm::ElectricQuartic,
        LagrangianTerm::Mixed,
        LagrangianTerm::MagneticQuartic,
        LagrangianTerm::Dual,
    ]
    .map(|t| pattern_sum::<S>(t, process));
    let (ee, mixed, bb, dual) = (ee?, mixed?, bb?, dual?);
    let four = S::integer(4);
    let c_f4 = four.clone() * (ee.clone() - S::integer(2) * mixed.clone() + bb.clone());
    let c_ffdual = four.clone() * four * dual.clone();
    let prefactor = if process.state.coherent().is_empty() {
        Complex64::new(1.0, 0.0)
    } else {
        coherent_enhancement(&process.state)
    };
    Ok(AmplitudeValue {
        c_f4,
        c_ffdual,
        pattern_sums: [ee, mixed, bb, dual],
        prefactor,
        resonant: process.is_resonant(),
        energy_mismatch: process.energy_out - process.energy_in,
    })
}

/// `√2·ξ²·η*·M₂→₂` for coherent TE011 (`ξ`) and TM110 (`η`) pumps generating
/// a TM130 quantum.
pub fn coherent_amplitude(xi: Complex64, eta: Complex64, geom: &CavityGeometry, couplings: Couplings) -> Result<Complex64> {
    let (pump, partner, signal) = (ModeId::te(0, 1, 1), ModeId::tm(1, 1, 0), ModeId::tm(1, 3, 0));
    let process = ProcessSpec::coherent_minus(geom.clone(), pump, partner, signal, xi, eta)?;
    Ok(matrix_element::<f64>(&process)?.complex_total(couplings))
}
