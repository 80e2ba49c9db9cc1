use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use super::{pattern_sum, Couplings, ProcessSpec, ProcessTag};
use crate::error::{Error, Result};
use crate::mode_basis::CavityGeometry;
use crate::wick::LagrangianTerm;

/// The four operator brackets of the 2→2 element, each including `4κ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BracketComponents {
    pub e4: f64,
    pub b4: f64,
    pub b2e2: f64,
    pub be2: f64,
}

impl BracketComponents {
    /// `⟨E⁴⟩ − 2⟨B²E²⟩ + ⟨B⁴⟩ + 4β⟨(B·E)²⟩`.
    pub fn combine(&self, beta: f64) -> f64 {
        self.e4 - 2.0 * self.b2e2 + self.b4 + 4.0 * beta * self.be2
    }

    /// Brackets from the contraction engine for any 2→2 process.
    pub fn from_engine(process: &ProcessSpec, couplings: Couplings) -> Result<Self> {
        if !matches!(process.tag(), ProcessTag::Scatter2to2 | ProcessTag::CoherentMinus) {
            return Err(Error::IncompatibleModes(format!("{:?} is not a 2→2 process", process.tag())));
        }
        let four_kappa = 4.0 * couplings.kappa;
        let sum = |t| -> Result<f64> { Ok(four_kappa * pattern_sum::<f64>(t, process)?) };
        Ok(Self {
            e4: sum(LagrangianTerm::ElectricQuartic)?,
            b4: sum(LagrangianTerm::MagneticQuartic)?,
            b2e2: sum(LagrangianTerm::Mixed)?,
            be2: sum(LagrangianTerm::Dual)?,
        })
    }
}

fn square_base(geom: &CavityGeometry) -> Result<(f64, f64)> {
    let r = geom.aspect_ratio().ok_or_else(|| {
        Error::IncompatibleModes("the TE011 → TM110 + TM130 closed forms need a square base L_x = L_y".into())
    })?;
    Ok((r, geom.lengths_f64()[2]))
}

/// Closed-form brackets for `2·TE011 → TM110 + TM130` in a `1:1:r` box.
///
/// Valid for any `r`; only at the resonant ratio does their sum reduce to
/// [`m22_closed_form`].
pub fn scatter_2to2_components(geom: &CavityGeometry, couplings: Couplings) -> Result<BracketComponents> {
    let (r, lz) = square_base(geom)?;
    let v = geom.volume_f64();
    let unit = PI / lz;
    let w011 = unit * (r * r + 1.0).sqrt();
    let w110 = unit * SQRT_2 * r;
    let w130 = unit * 10f64.sqrt() * r;
    let root = (w011 * w011 * w110 * w130).sqrt();
    let k = 4.0 * couplings.kappa;
    let r2 = r * r;
    let pz2 = PI * PI / (lz * lz);
    let pump_over = (w011 * w011 / (w110 * w130)).sqrt();
    let over_pump = (w110 * w130 / (w011 * w011)).sqrt();
    Ok(BracketComponents {
        e4: -k / (SQRT_2 * v) * root,
        b4: k / (SQRT_2 * v) * pz2 * pz2 * 2.0 * r2 * (2.0 * r2 - 3.0) / root,
        b2e2: k / (2.0 * SQRT_2 * v) * pz2 * (4.0 * r2 * pump_over - (r2 - 1.0) * over_pump),
        be2: k / (2.0 * SQRT_2 * v)
            * pz2
            * r2
            * (3.0 * pump_over + 3.0 * (w110 / w130).sqrt() - (w130 / w110).sqrt() - over_pump),
    })
}

/// `5 + 2√5 − β(√(1+r²) + √2·r)²`.
pub fn resonant_bracket(r: f64, beta: f64) -> f64 {
    let s = (1.0 + r * r).sqrt() + SQRT_2 * r;
    5.0 + 2.0 * 5f64.sqrt() - beta * s * s
}

/// `M₂→₂ = −κ/L_z⁵ · (2π)²r³/(5^¼√(1+r²)) · [5 + 2√5 − β(√(1+r²)+√2r)²]`.
pub fn m22_closed_form(r: f64, lz: f64, couplings: Couplings) -> f64 {
    let pre = (2.0 * PI).powi(2) * r.powi(3) / (5f64.powf(0.25) * (1.0 + r * r).sqrt());
    -couplings.kappa / lz.powi(5) * pre * resonant_bracket(r, couplings.beta)
}

/// `G₁²` with `P₂→₂ = G₁²κ²Q²/L_z⁸`.
pub fn g1_squared(r: f64, beta: f64) -> f64 {
    8.0 * PI * PI * r.powi(4) / (5f64.powf(1.5) * (1.0 + r * r)) * resonant_bracket(r, beta).powi(2)
}

/// `G̃₁²` with `⟨N_s⟩ = G̃₁²κ²Q²F₀⁶L_z⁴`.
pub fn g1_tilde_squared(r: f64, beta: f64) -> f64 {
    4.0 / (10f64.powf(1.5) * PI * r.powi(3) * (1.0 + r * r).powi(2)) * resonant_bracket(r, beta).powi(2)
}
