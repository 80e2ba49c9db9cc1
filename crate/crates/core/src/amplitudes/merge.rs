use num_bigint::BigInt;
use num_rational::BigRational;

use super::{pattern_sum, ProcessSpec};
use crate::error::{Error, Result};
use crate::mode_basis::{Axis, CavityGeometry, Polarization};
use crate::trig_algebra::ExactValue;
use crate::wick::LagrangianTerm;

/// Operator brackets of the slab merging element, integrated over the slab
/// (`S·∫dx`) and without the overall `4iκ`.
///
/// `b2e2` is the mixed monomial together with its Lagrangian weight −2, so
/// the F² part `ee + b2e2 + bb` vanishes when `ee = bb = −½·b2e2`.
#[derive(Clone, Debug, PartialEq)]
pub struct MergeBrackets {
    pub ee: ExactValue,
    pub bb: ExactValue,
    pub b2e2: ExactValue,
    pub eb: ExactValue,
}

impl MergeBrackets {
    /// `⟨(EE)²⟩ + ⟨B²E²⟩ + ⟨(BB)²⟩`, the F² part up to the factor `4`.
    pub fn f_squared_part(&self) -> ExactValue {
        self.ee.clone() + self.b2e2.clone() + self.bb.clone()
    }
}

/// `δ_ij δ_ls (1 + 2δ_is) + (1 − δ_ls)(1 − δ_ij)` for `[i, j, l, s]`.
pub fn polarization_factor(pols: [Polarization; 4]) -> i64 {
    let d = |a: Polarization, b: Polarization| i64::from(a == b);
    let [i, j, l, s] = pols;
    d(i, j) * d(l, s) * (1 + 2 * d(i, s)) + (1 - d(l, s)) * (1 - d(i, j))
}

/// `√((2n+p)n²p)·π²/L_x³ · polarization_factor`.
pub fn merge_bracket_closed_form(geom: &CavityGeometry, n: u32, p: u32, pols: [Polarization; 4]) -> Result<ExactValue> {
    let (n, p) = (i64::from(n), i64::from(p));
    let root = ExactValue::sqrt_rational(&BigRational::from_integer(BigInt::from((2 * n + p) * n * n * p)))?;
    let lx = geom.length::<ExactValue>(Axis::X)?;
    let inv_l3 = (lx.clone() * lx.clone() * lx).recip()?;
    Ok(root * ExactValue::pi_power(2) * inv_l3 * ExactValue::integer(polarization_factor(pols)))
}

/// Exact brackets for `|1ⁱ_n 1ʲ_n 1ˡ_p⟩ → |1ˢ_s⟩`; requires `s = 2n + p`.
pub fn merge_3to1_term(geom: &CavityGeometry, n: u32, p: u32, s: u32, pols: [Polarization; 4]) -> Result<MergeBrackets> {
    if s != 2 * n + p {
        return Err(Error::IncompatibleModes(format!(
            "signal harmonic {s} differs from 2n + p = {}",
            2 * n + p
        )));
    }
    let process = ProcessSpec::merge_3to1_1d(geom.clone(), n, p, s, pols)?;
    let area = geom.transverse_area::<ExactValue>()?;
    let bracket = |t| -> Result<ExactValue> { Ok(pattern_sum::<ExactValue>(t, &process)? * area.clone()) };
    Ok(MergeBrackets {
        ee: bracket(LagrangianTerm::ElectricQuartic)?,
        bb: bracket(LagrangianTerm::MagneticQuartic)?,
        b2e2: ExactValue::integer(-2) * bracket(LagrangianTerm::Mixed)?,
        eb: bracket(LagrangianTerm::Dual)?,
    })
}
