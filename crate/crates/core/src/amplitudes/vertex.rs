use itertools::Itertools;
use num_complex::Complex64;

use super::Couplings;
use crate::error::{Error, Result};
use crate::wick::Side;

const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// External photon of a plane-wave amplitude, components contravariant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneWaveLeg {
    pub momentum: [f64; 4],
    pub polarization: [Complex64; 4],
    pub side: Side,
}

fn minkowski(a: [Complex64; 4], b: [Complex64; 4]) -> Complex64 {
    (0..4).map(|m| a[m] * b[m] * METRIC[m]).sum()
}

impl PlaneWaveLeg {
    /// On-shell leg with `ω = |k|` and polarization `(0, ε)`; `ε·k` must vanish.
    pub fn new(k: [f64; 3], eps: [Complex64; 3], side: Side) -> Result<Self> {
        let omega = k.iter().map(|x| x * x).sum::<f64>().sqrt();
        let leg = Self {
            momentum: [omega, k[0], k[1], k[2]],
            polarization: [Complex64::new(0.0, 0.0), eps[0], eps[1], eps[2]],
            side,
        };
        let norm = eps.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt();
        if minkowski(leg.k_complex(), leg.polarization).norm() > 1e-12 * omega.max(1.0) * norm.max(1.0) {
            return Err(Error::InvalidState("polarization is not transverse to the momentum".into()));
        }
        Ok(leg)
    }

    /// `ε → ε + c·k`, which leaves every field strength unchanged.
    pub fn gauge_shifted(&self, c: Complex64) -> Self {
        let mut leg = *self;
        for m in 0..4 {
            leg.polarization[m] += c * self.momentum[m];
        }
        leg
    }

    fn k_complex(&self) -> [Complex64; 4] {
        self.momentum.map(|x| Complex64::new(x, 0.0))
    }

    /// `F_μν = i·s·(k_μ ε_ν − k_ν ε_μ)`, lower indices, with `s = −1` and `ε`
    /// for absorbed photons, `s = +1` and `ε*` for emitted ones.
    fn field_strength(&self) -> [[Complex64; 4]; 4] {
        let (s, eps) = match self.side {
            Side::In => (-1.0, self.polarization),
            Side::Out => (1.0, self.polarization.map(|e| e.conj())),
        };
        let lower = |v: [Complex64; 4]| [0, 1, 2, 3].map(|m| v[m] * METRIC[m]);
        let (k, e) = (lower(self.k_complex()), lower(eps));
        let mut f = [[Complex64::new(0.0, 0.0); 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                f[mu][nu] = Complex64::new(0.0, s) * (k[mu] * e[nu] - k[nu] * e[mu]);
            }
        }
        f
    }
}

/// `F_μν G^μν`.
fn contract(f: &[[Complex64; 4]; 4], g: &[[Complex64; 4]; 4]) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for mu in 0..4 {
        for nu in 0..4 {
            sum += f[mu][nu] * g[mu][nu] * METRIC[mu] * METRIC[nu];
        }
    }
    sum
}

fn levi_civita(idx: [usize; 4]) -> f64 {
    if idx.iter().duplicates().next().is_some() {
        return 0.0;
    }
    let mut sign = 1.0;
    for i in 0..4 {
        for j in i + 1..4 {
            if idx[i] > idx[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// `F_μν G̃^μν = ½ ε^μνρσ F_μν G_ρσ`.
fn contract_dual(f: &[[Complex64; 4]; 4], g: &[[Complex64; 4]; 4]) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for idx in (0..4).permutations(4) {
        let [mu, nu, rho, sigma] = [idx[0], idx[1], idx[2], idx[3]];
        sum += f[mu][nu] * g[rho][sigma] * levi_civita([mu, nu, rho, sigma]);
    }
    sum * 0.5
}

/// Tree-level vertex of `κ[(F_μνF^μν)² + β(F_μνF̃^μν)²]` between four plane
/// waves, summed over the 4! assignments of legs to field slots.
pub fn eh_four_photon_vertex(legs: &[PlaneWaveLeg; 4], couplings: Couplings) -> Result<Complex64> {
    let mut balance = [0.0; 4];
    let mut scale: f64 = 1.0;
    for leg in legs {
        let s = if leg.side == Side::In { 1.0 } else { -1.0 };
        for (b, p) in balance.iter_mut().zip(leg.momentum) {
            *b += s * p;
        }
        scale = scale.max(leg.momentum[0]);
    }
    let mismatch = balance.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    if mismatch > 1e-12 * scale {
        return Err(Error::MomentumNotConserved(mismatch));
    }

    let f: Vec<_> = legs.iter().map(PlaneWaveLeg::field_strength).collect();
    let mut plain = [[Complex64::new(0.0, 0.0); 4]; 4];
    let mut dual = plain;
    for a in 0..4 {
        for b in 0..4 {
            if a != b {
                plain[a][b] = contract(&f[a], &f[b]);
                dual[a][b] = contract_dual(&f[a], &f[b]);
            }
        }
    }
    let mut total = Complex64::new(0.0, 0.0);
    for p in (0..4).permutations(4) {
        let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
        total += plain[a][b] * plain[c][d] + couplings.beta * dual[a][b] * dual[c][d];
    }
    Ok(total * couplings.kappa)
}
