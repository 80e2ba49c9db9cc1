use super::geometry::CavityGeometry;
use super::mode::{mode_frequency, validate_mode, ModeFamily, ModeId};
use crate::error::Result;
use crate::trig_algebra::{Scalar, TrigFactor, TrigPoly, VectorTrigPoly};

/// Normalized electric eigenprofile 𝓐 of a mode, with `∫_V |𝓐|² = V`.
///
/// TM: `√(4(2−δ_q0))/ω · (k_x k_z/k_t · c s s, k_y k_z/k_t · s c s, −k_t · s s c)`,
/// TE: `√(4(2−δ_n0−δ_p0)) · (k_y/k_t · c s s, −k_x/k_t · s c s, 0)`,
/// with `k_t = √(k_x²+k_y²)`. 1-D: `√2 sin(k_n x)` along the polarization.
pub fn electric_profile<S: Scalar>(geom: &CavityGeometry, mode: &ModeId) -> Result<VectorTrigPoly<S>> {
    validate_mode(mode)?;
    let ModeId { n, p, q, .. } = *mode;
    let one = TrigFactor::ONE;
    let (cx, sx) = (TrigFactor::cos(n), TrigFactor::sin(n));
    let (cy, sy) = (TrigFactor::cos(p), TrigFactor::sin(p));
    let (cz, sz) = (TrigFactor::cos(q), TrigFactor::sin(q));

    let components = match mode.family {
        ModeFamily::OneD(pol) => {
            let mut c = [TrigPoly::zero(), TrigPoly::zero(), TrigPoly::zero()];
            c[pol.axis().index()] = TrigPoly::term(S::integer(2).sqrt()?, [sx, one, one]);
            c
        }
        ModeFamily::TM => {
            let [kx, ky, kz] = mode.wavenumbers::<S>(geom)?;
            let kt = (kx.clone() * kx.clone() + ky.clone() * ky.clone()).sqrt()?;
            let delta_q0 = i64::from(q == 0);
            let norm = S::integer(4 * (2 - delta_q0)).sqrt()? * mode_frequency::<S>(geom, mode)?.recip()?;
            let kt_inv = kt.recip()?;
            [
                TrigPoly::term(norm.clone() * kx * kz.clone() * kt_inv.clone(), [cx, sy, sz]),
                TrigPoly::term(norm.clone() * ky * kz * kt_inv, [sx, cy, sz]),
                TrigPoly::term(-(norm * kt), [sx, sy, cz]),
            ]
        }
        ModeFamily::TE => {
            let [kx, ky, _] = mode.wavenumbers::<S>(geom)?;
            let kt_inv = (kx.clone() * kx.clone() + ky.clone() * ky.clone()).sqrt()?.recip()?;
            let deltas = i64::from(n == 0) + i64::from(p == 0);
            let norm = S::integer(4 * (2 - deltas)).sqrt()?;
            [
                TrigPoly::term(norm.clone() * ky * kt_inv.clone(), [cx, sy, sz]),
                TrigPoly::term(-(norm * kx * kt_inv), [sx, cy, sz]),
                TrigPoly::zero(),
            ]
        }
    };
    Ok(VectorTrigPoly::on(components, geom))
}

/// `curl 𝓐`, computed term by term on the trigonometric representation.
pub fn magnetic_profile<S: Scalar>(geom: &CavityGeometry, mode: &ModeId) -> Result<VectorTrigPoly<S>> {
    electric_profile::<S>(geom, mode)?.curl(geom)
}
