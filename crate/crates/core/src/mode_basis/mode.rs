use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::geometry::{Axis, CavityGeometry};
use crate::error::{Error, Result};
use crate::trig_algebra::{Scalar, MAX_HARMONIC};

/// Largest mode index accepted; four such factors stay within
/// [`MAX_HARMONIC`] after product-to-sum reduction.
pub const MAX_MODE_INDEX: u32 = MAX_HARMONIC / 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarization {
    Y,
    Z,
}

impl Polarization {
    pub fn axis(self) -> Axis {
        match self {
            Polarization::Y => Axis::Y,
            Polarization::Z => Axis::Z,
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'y' | 'Y' => Some(Polarization::Y),
            'z' | 'Z' => Some(Polarization::Z),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModeFamily {
    TE,
    TM,
    /// Slab mode polarized along `y` or `z`, depending on `x` only.
    OneD(Polarization),
}

/// Cavity mode label. Construction does not validate; see [`validate_mode`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeId {
    pub family: ModeFamily,
    pub n: u32,
    pub p: u32,
    pub q: u32,
}

impl ModeId {
    pub fn te(n: u32, p: u32, q: u32) -> Self {
        Self { family: ModeFamily::TE, n, p, q }
    }

    pub fn tm(n: u32, p: u32, q: u32) -> Self {
        Self { family: ModeFamily::TM, n, p, q }
    }

    pub fn one_d(pol: Polarization, n: u32) -> Self {
        Self { family: ModeFamily::OneD(pol), n, p: 0, q: 0 }
    }

    pub fn indices(&self) -> [u32; 3] {
        [self.n, self.p, self.q]
    }

    pub fn is_one_d(&self) -> bool {
        matches!(self.family, ModeFamily::OneD(_))
    }

    /// `(k_x, k_y, k_z)` with `k_i = π·index_i / L_i`.
    pub fn wavenumbers<S: Scalar>(&self, geom: &CavityGeometry) -> Result<[S; 3]> {
        let k = |idx: u32, axis| -> Result<S> {
            Ok(S::pi_power(1) * S::integer(idx as i64) * geom.length::<S>(axis)?.recip()?)
        };
        Ok([k(self.n, Axis::X)?, k(self.p, Axis::Y)?, k(self.q, Axis::Z)?])
    }

    pub fn wavenumbers_f64(&self, geom: &CavityGeometry) -> [f64; 3] {
        let l = geom.lengths_f64();
        let pi = std::f64::consts::PI;
        [pi * self.n as f64 / l[0], pi * self.p as f64 / l[1], pi * self.q as f64 / l[2]]
    }
}

impl fmt::Display for ModeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            ModeFamily::OneD(pol) => {
                let c = if pol == Polarization::Y { 'y' } else { 'z' };
                write!(f, "1D-{c}:{}", self.n)
            }
            fam => {
                let name = if fam == ModeFamily::TE { "TE" } else { "TM" };
                if self.indices().iter().all(|&i| i < 10) {
                    write!(f, "{name}{}{}{}", self.n, self.p, self.q)
                } else {
                    write!(f, "{name}_{}_{}_{}", self.n, self.p, self.q)
                }
            }
        }
    }
}

impl FromStr for ModeId {
    type Err = Error;

    /// Accepts `TE011`, `TM130`, `TE_1_10_2` and `1D-y:3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("`{s}` is not a mode label (e.g. TE011, TM130, 1D-y:3)"));
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("1D-") {
            let (pol, n) = rest.split_once(':').ok_or_else(bad)?;
            let mut chars = pol.chars();
            let pol = chars.next().and_then(Polarization::from_char).ok_or_else(bad)?;
            if chars.next().is_some() {
                return Err(bad());
            }
            let n = n.parse().map_err(|_| bad())?;
            return Ok(ModeId::one_d(pol, n));
        }
        let upper = s.to_ascii_uppercase();
        let (family, rest) = if let Some(r) = upper.strip_prefix("TE") {
            (ModeFamily::TE, r)
        } else if let Some(r) = upper.strip_prefix("TM") {
            (ModeFamily::TM, r)
        } else {
            return Err(bad());
        };
        let idx: Vec<u32> = if let Some(r) = rest.strip_prefix('_') {
            r.split('_').map(|t| t.parse().map_err(|_| bad())).collect::<Result<_>>()?
        } else {
            rest.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect::<Result<_>>()?
        };
        let [n, p, q] = idx[..] else { return Err(bad()) };
        Ok(ModeId { family, n, p, q })
    }
}

impl Serialize for ModeId {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ModeId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Accepts exactly the index sets whose eigenprofile is nonzero.
pub fn validate_mode(mode: &ModeId) -> Result<()> {
    let fail = |reason| Err(Error::InvalidMode { mode: mode.to_string(), reason });
    let ModeId { n, p, q, .. } = *mode;
    match mode.family {
        ModeFamily::TM if n == 0 || p == 0 => fail("TM modes need n >= 1 and p >= 1"),
        ModeFamily::TE if q == 0 => fail("TE modes need q >= 1"),
        ModeFamily::TE if n == 0 && p == 0 => fail("TE modes need n or p nonzero"),
        ModeFamily::OneD(_) if n == 0 => fail("1-D modes need n >= 1"),
        ModeFamily::OneD(_) if p != 0 || q != 0 => fail("1-D modes carry a single index"),
        _ if mode.indices().iter().any(|&i| i > MAX_MODE_INDEX) => {
            fail("index exceeds the supported harmonic bound")
        }
        _ => Ok(()),
    }
}

/// `ω = √(k_x² + k_y² + k_z²)`; for 1-D modes `ω = πn/L_x`.
pub fn mode_frequency<S: Scalar>(geom: &CavityGeometry, mode: &ModeId) -> Result<S> {
    validate_mode(mode)?;
    let [kx, ky, kz] = mode.wavenumbers::<S>(geom)?;
    if mode.is_one_d() {
        return Ok(kx);
    }
    (kx.clone() * kx + ky.clone() * ky + kz.clone() * kz).sqrt()
}

pub fn mode_frequency_f64(geom: &CavityGeometry, mode: &ModeId) -> Result<f64> {
    validate_mode(mode)?;
    let [kx, ky, kz] = mode.wavenumbers_f64(geom);
    if mode.is_one_d() {
        return Ok(kx);
    }
    Ok((kx * kx + ky * ky + kz * kz).sqrt())
}

/// All valid TE and TM modes with every index at most `max_index`.
pub fn enumerate_modes(max_index: u32) -> Vec<ModeId> {
    let mut out = Vec::new();
    for n in 0..=max_index {
        for p in 0..=max_index {
            for q in 0..=max_index {
                for mode in [ModeId::te(n, p, q), ModeId::tm(n, p, q)] {
                    if validate_mode(&mode).is_ok() {
                        out.push(mode);
                    }
                }
            }
        }
    }
    out
}
