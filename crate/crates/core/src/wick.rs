//! Wick contractions of the normal-ordered quartic Lagrangian
//! `4κ[(E·E)² − 2(B·B)(E·E) + (B·B)² + 4β(B·E)²]` against external cavity
//! states.
//!
//! Each field slot of a Lagrangian monomial is contracted with exactly one
//! external leg. Contracting a leg with a field yields a kernel
//!
//! * E, outgoing: `+i·√(ω/2V)·𝓐(r)·e^{+iωt}`
//! * E, incoming: `−i·√(ω/2V)·𝓐(r)·e^{−iωt}`
//! * B, either side: `curl 𝓐(r) / √(2ωV)` with the same phase
//!
//! Kernel magnitudes are carried squared so that products of four of them
//! stay in surd form; the time dependence is kept as a net frequency only.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mode_basis::{
    electric_profile, magnetic_profile, mode_frequency, mode_frequency_f64, validate_mode, CavityGeometry,
    ModeId,
};
use crate::trig_algebra::{Scalar, TrigPoly, VectorTrigPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldKind {
    E,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    In,
    Out,
}

/// Which Lorentz invariant a monomial belongs to: `(F_{μν}F^{μν})²` or
/// `(F_{μν}F̃^{μν})²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invariant {
    FSquared,
    FDual,
}

/// The four monomials of `E⁴ − 2B²E² + B⁴ + 4β(B·E)²`. Slots `(0,1)` and
/// `(2,3)` are contracted into dot products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LagrangianTerm {
    /// `(E·E)(E·E)`
    ElectricQuartic,
    /// `(B·B)(E·E)`
    Mixed,
    /// `(B·B)(B·B)`
    MagneticQuartic,
    /// `(B·E)(B·E)`
    Dual,
}

impl LagrangianTerm {
    pub const ALL: [LagrangianTerm; 4] = [
        LagrangianTerm::ElectricQuartic,
        LagrangianTerm::Mixed,
        LagrangianTerm::MagneticQuartic,
        LagrangianTerm::Dual,
    ];

    pub fn slots(self) -> [FieldKind; 4] {
        use FieldKind::*;
        match self {
            LagrangianTerm::ElectricQuartic => [E, E, E, E],
            LagrangianTerm::Mixed => [B, B, E, E],
            LagrangianTerm::MagneticQuartic => [B, B, B, B],
            LagrangianTerm::Dual => [B, E, B, E],
        }
    }

    /// Weight inside the bracket multiplying `4κ`; the dual term is further
    /// multiplied by β.
    pub fn weight(self) -> i64 {
        match self {
            LagrangianTerm::ElectricQuartic | LagrangianTerm::MagneticQuartic => 1,
            LagrangianTerm::Mixed => -2,
            LagrangianTerm::Dual => 4,
        }
    }

    pub fn invariant(self) -> Invariant {
        match self {
            LagrangianTerm::Dual => Invariant::FDual,
            _ => Invariant::FSquared,
        }
    }
}

impl fmt::Display for LagrangianTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LagrangianTerm::ElectricQuartic => "(E·E)²",
            LagrangianTerm::Mixed => "(B·B)(E·E)",
            LagrangianTerm::MagneticQuartic => "(B·B)²",
            LagrangianTerm::Dual => "(B·E)²",
        })
    }
}

/// Power of the imaginary unit, `i^k` with `k` taken mod 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct IPower(pub u8);

impl IPower {
    pub fn times(self, other: IPower) -> IPower {
        IPower((self.0 + other.0) % 4)
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    /// `±1` when the phase is real.
    pub fn real_sign(self) -> Option<i64> {
        match self.0 % 4 {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }
}

/// Result of contracting one ladder operator with one field operator.
#[derive(Clone, Debug)]
pub struct Kernel<S: Scalar> {
    pub phase: IPower,
    /// Square of the real amplitude factor (`ω/2V` or `1/(2ωV)`).
    pub magnitude_sq: S,
    pub profile: VectorTrigPoly<S>,
    /// Signed oscillation frequency: `+ω` for outgoing legs, `−ω` incoming.
    pub frequency: f64,
}

pub fn contraction_kernel<S: Scalar>(
    mode: &ModeId,
    field: FieldKind,
    side: Side,
    geom: &CavityGeometry,
) -> Result<Kernel<S>> {
    validate_mode(mode)?;
    let omega: S = mode_frequency(geom, mode)?;
    let two_v = S::integer(2) * geom.volume::<S>()?;
    let sign = if side == Side::Out { 1.0 } else { -1.0 };
    let frequency = sign * mode_frequency_f64(geom, mode)?;
    Ok(match field {
        FieldKind::E => Kernel {
            phase: IPower(if side == Side::Out { 1 } else { 3 }),
            magnitude_sq: omega * two_v.recip()?,
            profile: electric_profile(geom, mode)?,
            frequency,
        },
        FieldKind::B => Kernel {
            phase: IPower(0),
            magnitude_sq: (omega * two_v).recip()?,
            profile: magnetic_profile(geom, mode)?,
            frequency,
        },
    })
}

/// How a state was built from creation operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// `|m⟩ = (a⁺)^m / √(m!) |0⟩`
    Fock,
    /// Plain products of creation operators, `a⁺a⁺…|0⟩`.
    BareOperators,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoherentLabel {
    pub mode: ModeId,
    pub amplitude: Complex64,
}

/// Leg content of a four-photon process.
///
/// Modes carrying a [`CoherentLabel`] are coherent states `|ξ⟩`; their
/// occupation on a side gives how many quanta the elementary channel takes
/// from (incoming) or returns to (outgoing) the coherent state.
#[derive(Clone, Debug, PartialEq)]
pub struct ExternalState {
    incoming: Vec<(ModeId, u32)>,
    outgoing: Vec<(ModeId, u32)>,
    normalization: Normalization,
    coherent: Vec<CoherentLabel>,
}

/// A distinct (mode, side) pair; identical quanta share one class.
pub type LegClass = (ModeId, Side);

impl ExternalState {
    pub fn fock(incoming: Vec<(ModeId, u32)>, outgoing: Vec<(ModeId, u32)>) -> Result<Self> {
        Self::build(incoming, outgoing, Normalization::Fock)
    }

    pub fn bare(incoming: Vec<(ModeId, u32)>, outgoing: Vec<(ModeId, u32)>) -> Result<Self> {
        Self::build(incoming, outgoing, Normalization::BareOperators)
    }

    /// State from a list of quanta, merging repeated modes into occupations.
    pub fn from_quanta(incoming: &[ModeId], outgoing: &[ModeId], normalization: Normalization) -> Result<Self> {
        let count = |ms: &[ModeId]| -> Vec<(ModeId, u32)> {
            let mut map: BTreeMap<ModeId, u32> = BTreeMap::new();
            for m in ms {
                *map.entry(*m).or_default() += 1;
            }
            map.into_iter().collect()
        };
        Self::build(count(incoming), count(outgoing), normalization)
    }

    fn build(incoming: Vec<(ModeId, u32)>, outgoing: Vec<(ModeId, u32)>, normalization: Normalization) -> Result<Self> {
        for side in [&incoming, &outgoing] {
            for (i, (mode, occ)) in side.iter().enumerate() {
                validate_mode(mode)?;
                if *occ == 0 {
                    return Err(Error::InvalidState(format!("mode {mode} has zero occupation")));
                }
                if side[..i].iter().any(|(m, _)| m == mode) {
                    return Err(Error::InvalidState(format!("mode {mode} listed twice on one side")));
                }
            }
        }
        Ok(Self { incoming, outgoing, normalization, coherent: Vec::new() })
    }

    /// Marks modes as coherent states with the given amplitudes.
    pub fn with_coherent(mut self, labels: Vec<CoherentLabel>) -> Result<Self> {
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].iter().any(|l| l.mode == label.mode) {
                return Err(Error::InvalidState(format!("mode {} has two coherent labels", label.mode)));
            }
            let present = self.incoming.iter().chain(&self.outgoing).any(|(m, _)| *m == label.mode);
            if !present {
                return Err(Error::InvalidState(format!(
                    "coherent mode {} takes no part in the elementary channel",
                    label.mode
                )));
            }
            if !label.amplitude.re.is_finite() || !label.amplitude.im.is_finite() {
                return Err(Error::InvalidState("coherent amplitude must be finite".into()));
            }
        }
        self.coherent = labels;
        Ok(self)
    }

    pub fn incoming(&self) -> &[(ModeId, u32)] {
        &self.incoming
    }

    pub fn outgoing(&self) -> &[(ModeId, u32)] {
        &self.outgoing
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn coherent(&self) -> &[CoherentLabel] {
        &self.coherent
    }

    fn coherent_amplitude(&self, mode: &ModeId) -> Option<Complex64> {
        self.coherent.iter().find(|l| l.mode == *mode).map(|l| l.amplitude)
    }

    /// Same legs with every coherent label dropped.
    pub fn as_fock(&self) -> Self {
        Self { coherent: Vec::new(), normalization: Normalization::Fock, ..self.clone() }
    }

    /// Every external quantum as its leg class, incoming first.
    pub fn legs(&self) -> Vec<LegClass> {
        let expand = |side: &[(ModeId, u32)], s: Side| {
            side.iter().flat_map(move |(m, occ)| std::iter::repeat_n((*m, s), *occ as usize)).collect::<Vec<_>>()
        };
        let mut legs = expand(&self.incoming, Side::In);
        legs.extend(expand(&self.outgoing, Side::Out));
        legs
    }

    pub fn energy_in(&self, geom: &CavityGeometry) -> Result<f64> {
        self.incoming.iter().map(|(m, occ)| Ok(*occ as f64 * mode_frequency_f64(geom, m)?)).sum()
    }

    pub fn energy_out(&self, geom: &CavityGeometry) -> Result<f64> {
        self.outgoing.iter().map(|(m, occ)| Ok(*occ as f64 * mode_frequency_f64(geom, m)?)).sum()
    }

    /// `Σω_out − Σω_in` in the coefficient field (exact when possible).
    pub fn energy_mismatch<S: Scalar>(&self, geom: &CavityGeometry) -> Result<S> {
        let mut total = S::zero();
        for (side, sign) in [(&self.outgoing, 1), (&self.incoming, -1)] {
            for (m, occ) in side {
                total = total + S::integer(sign * *occ as i64) * mode_frequency::<S>(geom, m)?;
            }
        }
        Ok(total)
    }
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

/// `Π 1/√(m!)` over Fock-normalized, non-coherent modes.
pub fn fock_normalization<S: Scalar>(state: &ExternalState) -> Result<S> {
    let mut norm = S::one();
    if state.normalization == Normalization::BareOperators {
        return Ok(norm);
    }
    for (mode, occ) in state.incoming.iter().chain(&state.outgoing) {
        if state.coherent_amplitude(mode).is_none() && *occ > 1 {
            norm = norm * S::ratio(1, factorial(*occ)).sqrt()?;
        }
    }
    Ok(norm)
}

/// Factor multiplying the bare-operator contraction sum.
///
/// Fock modes contribute `1/√(m!)` (for normalized states). A coherent mode
/// feeding `c` quanta into the vertex contributes `ξ^c`, one absorbing `d`
/// quanta contributes `(ξ*)^d`; this is the closed form left after the
/// Kronecker deltas collapse the double sums over coherent-state components.
/// The single-signal channel is the only one kept.
pub fn state_prefactor(state: &ExternalState) -> Complex64 {
    let mut factor = Complex64::new(1.0, 0.0);
    for (side, mode, occ) in state
        .incoming
        .iter()
        .map(|(m, o)| (Side::In, m, *o))
        .chain(state.outgoing.iter().map(|(m, o)| (Side::Out, m, *o)))
    {
        match state.coherent_amplitude(mode) {
            Some(xi) => {
                let a = if side == Side::In { xi } else { xi.conj() };
                factor *= a.powu(occ);
            }
            None if state.normalization == Normalization::Fock => {
                factor /= (factorial(occ) as f64).sqrt();
            }
            None => {}
        }
    }
    factor
}

/// Ratio of the coherent-state amplitude to the normalized Fock amplitude
/// with the same legs (`√2·ξ²·η*` for two pump quanta and one partner).
pub fn coherent_enhancement(state: &ExternalState) -> Complex64 {
    state_prefactor(state) / state_prefactor(&state.as_fock())
}

/// One class of Wick pairings sharing the same kernel product.
#[derive(Clone, Debug)]
pub struct ContractionTerm<S: Scalar> {
    pub multiplicity: u32,
    /// The two dot products, each a pair of (leg class, field) slots.
    pub pairs: [[(LegClass, FieldKind); 2]; 2],
    pub phase: IPower,
    /// Product of the four kernel magnitudes squared.
    pub magnitude_sq: S,
    /// `Σω_out − Σω_in`.
    pub net_frequency: f64,
    /// `(K_a·K_b)(K_c·K_d)` spatial profile product.
    pub integrand: TrigPoly<S>,
}

impl<S: Scalar> ContractionTerm<S> {
    /// `multiplicity · phase · √(magnitude²) · ∫_V integrand`.
    pub fn spatial_value(&self, geom: &CavityGeometry) -> Result<S> {
        let integral = self.integrand.integrate_box(geom)?;
        if integral.is_zero() {
            return Ok(S::zero());
        }
        let sign = self
            .phase
            .real_sign()
            .ok_or_else(|| Error::InvalidState("contraction with an imaginary phase".into()))?;
        Ok(S::integer(sign * self.multiplicity as i64) * self.magnitude_sq.sqrt()? * integral)
    }
}

/// Enumerates all 4! slot-to-leg assignments for `term` and groups them by
/// kernel product.
pub fn enumerate_contractions<S: Scalar>(
    term: LagrangianTerm,
    state: &ExternalState,
    geom: &CavityGeometry,
) -> Result<Vec<ContractionTerm<S>>> {
    let classes = pairing_classes(term, state)?;
    let net_frequency = state.energy_out(geom)? - state.energy_in(geom)?;

    let mut kernels: HashMap<(LegClass, FieldKind), Kernel<S>> = HashMap::new();
    let mut kernel = |slot: (LegClass, FieldKind)| -> Result<Kernel<S>> {
        if let Some(k) = kernels.get(&slot) {
            return Ok(k.clone());
        }
        let ((mode, side), field) = slot;
        let k = contraction_kernel::<S>(&mode, field, side, geom)?;
        kernels.insert(slot, k.clone());
        Ok(k)
    };

    let mut out = Vec::with_capacity(classes.len());
    for (pairs, multiplicity) in classes {
        let [[a, b], [c, d]] = pairs;
        let (ka, kb, kc, kd) = (kernel(a)?, kernel(b)?, kernel(c)?, kernel(d)?);
        let integrand = ka.profile.dot(&kb.profile)?.multiply(&kc.profile.dot(&kd.profile)?);
        out.push(ContractionTerm {
            multiplicity,
            pairs,
            phase: ka.phase.times(kb.phase).times(kc.phase).times(kd.phase),
            magnitude_sq: ka.magnitude_sq * kb.magnitude_sq * kc.magnitude_sq * kd.magnitude_sq,
            net_frequency,
            integrand,
        });
    }
    Ok(out)
}

/// Two factors of two slots each, as `(leg, field)` pairs.
pub type PairingClass = [[(LegClass, FieldKind); 2]; 2];

/// Pairing classes with multiplicities, without building any kernels.
pub fn pairing_classes(
    term: LagrangianTerm,
    state: &ExternalState,
) -> Result<BTreeMap<PairingClass, u32>> {
    let legs = state.legs();
    if legs.len() != 4 {
        return Err(Error::LegCount(legs.len()));
    }
    let fields = term.slots();
    let mut classes = BTreeMap::new();
    for perm in (0..4).permutations(4) {
        let slot = |i: usize| (legs[perm[i]], fields[i]);
        let mut p1 = [slot(0), slot(1)];
        let mut p2 = [slot(2), slot(3)];
        p1.sort();
        p2.sort();
        let key = if p1 <= p2 { [p1, p2] } else { [p2, p1] };
        *classes.entry(key).or_insert(0u32) += 1;
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mode_basis::Polarization;
    use crate::trig_algebra::ExactValue;

    fn y(n: u32) -> ModeId {
        ModeId::one_d(Polarization::Y, n)
    }

    #[test]
    fn identical_slab_pumps_form_one_class_of_24() {
        let state = ExternalState::bare(vec![(y(1), 3)], vec![(y(3), 1)]).unwrap();
        let classes = pairing_classes(LagrangianTerm::ElectricQuartic, &state).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes.values().copied().collect::<Vec<_>>(), vec![24]);
    }

    #[test]
    fn two_to_two_classes_are_8_and_16() {
        let state = ExternalState::fock(
            vec![(ModeId::te(0, 1, 1), 2)],
            vec![(ModeId::tm(1, 1, 0), 1), (ModeId::tm(1, 3, 0), 1)],
        )
        .unwrap();
        let classes = pairing_classes(LagrangianTerm::ElectricQuartic, &state).unwrap();
        let mut mult: Vec<u32> = classes.values().copied().collect();
        mult.sort();
        // 8·[(130·110)(011·011) + 2·(130·011)(110·011)]
        assert_eq!(mult, vec![8, 16]);
    }

    #[test]
    fn odd_leg_count_is_rejected() {
        let state = ExternalState::bare(vec![(y(1), 3)], vec![]).unwrap();
        assert_eq!(
            pairing_classes(LagrangianTerm::ElectricQuartic, &state).unwrap_err(),
            Error::LegCount(3)
        );
    }

    #[test]
    fn one_d_kernels_match_slab_contractions() {
        let g = CavityGeometry::rational([(2, 1), (1, 1), (1, 1)]).unwrap();
        let e = contraction_kernel::<ExactValue>(&y(1), FieldKind::E, Side::Out, &g).unwrap();
        assert_eq!(e.phase, IPower(1));
        // magnitude·√2 = √(ω/V): magnitude² = ω/(2V)
        let omega = mode_frequency::<ExactValue>(&g, &y(1)).unwrap();
        assert_eq!(e.magnitude_sq, omega.clone() * ExactValue::ratio(1, 4));
        let b = contraction_kernel::<ExactValue>(&y(1), FieldKind::B, Side::Out, &g).unwrap();
        assert_eq!(b.phase, IPower(0));
        assert!(b.profile.components[1].is_zero());
        assert!(!b.profile.components[2].is_zero());
        let inc = contraction_kernel::<ExactValue>(&y(1), FieldKind::E, Side::In, &g).unwrap();
        assert_eq!(inc.phase, IPower(3));
        assert!(inc.frequency < 0.0);
    }

    #[test]
    fn state_prefactors() {
        let te = ModeId::te(0, 1, 1);
        let a = ModeId::tm(1, 1, 0);
        let s = ModeId::tm(1, 3, 0);
        let fock = ExternalState::fock(vec![(te, 2)], vec![(a, 1), (s, 1)]).unwrap();
        assert!((state_prefactor(&fock).re - 0.5f64.sqrt()).abs() < 1e-15);
        let vacuum = ExternalState::fock(vec![], vec![]).unwrap();
        assert_eq!(state_prefactor(&vacuum), Complex64::new(1.0, 0.0));

        let xi = Complex64::new(0.3, -1.2);
        let eta = Complex64::new(-0.7, 0.4);
        let coh = fock
            .clone()
            .with_coherent(vec![CoherentLabel { mode: te, amplitude: xi }, CoherentLabel { mode: a, amplitude: eta }])
            .unwrap();
        let expected = xi * xi * eta.conj() * 2f64.sqrt();
        assert!((coherent_enhancement(&coh) - expected).norm() < 1e-14);
    }

    #[test]
    fn state_validation() {
        let te = ModeId::te(0, 1, 1);
        assert!(ExternalState::fock(vec![(te, 0)], vec![]).is_err());
        assert!(ExternalState::fock(vec![(te, 1), (te, 1)], vec![]).is_err());
        assert!(ExternalState::fock(vec![(ModeId::tm(0, 1, 1), 1)], vec![]).is_err());
        let st = ExternalState::fock(vec![(te, 1)], vec![]).unwrap();
        let label = CoherentLabel { mode: ModeId::tm(1, 1, 0), amplitude: Complex64::new(1.0, 0.0) };
        assert!(st.with_coherent(vec![label]).is_err());
    }
}
