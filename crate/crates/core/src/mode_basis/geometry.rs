use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::trig_algebra::{rational_to_f64, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Side lengths of a perfectly conducting box `[0,L_x]×[0,L_y]×[0,L_z]`.
///
/// Lengths given as rationals are kept exactly, which enables exact surd
/// arithmetic downstream; irrational proportions are stored as floats only.
#[derive(Clone, Debug, PartialEq)]
pub struct CavityGeometry {
    lengths: [f64; 3],
    exact: Option<[BigRational; 3]>,
}

impl CavityGeometry {
    pub fn new(lx: f64, ly: f64, lz: f64) -> Result<Self> {
        let lengths = [lx, ly, lz];
        if lengths.iter().any(|l| !l.is_finite() || *l <= 0.0) {
            return Err(Error::InvalidGeometry(format!(
                "side lengths must be positive and finite, got {lengths:?}"
            )));
        }
        Ok(Self { lengths, exact: None })
    }

    pub fn exact(lx: BigRational, ly: BigRational, lz: BigRational) -> Result<Self> {
        let exact = [lx, ly, lz];
        if exact.iter().any(|l| !l.is_positive()) {
            return Err(Error::InvalidGeometry("side lengths must be positive".into()));
        }
        let lengths = [0, 1, 2].map(|i| rational_to_f64(&exact[i]));
        Ok(Self { lengths, exact: Some(exact) })
    }

    /// Exact box with integer-ratio sides `num_i/den_i`.
    pub fn rational(sides: [(i64, i64); 3]) -> Result<Self> {
        let [a, b, c] = sides.map(|(n, d)| {
            if d == 0 {
                BigRational::zero()
            } else {
                BigRational::new(n.into(), d.into())
            }
        });
        Self::exact(a, b, c)
    }

    pub fn unit_cube() -> Self {
        Self::rational([(1, 1); 3]).expect("unit cube is valid")
    }

    /// The `1:1:r` family anchored at `L_z`: `L_x = L_y = L_z / r`.
    pub fn square_base(r: f64, lz: f64) -> Result<Self> {
        Self::proportional(1.0, r, lz)
    }

    /// The `ρ:1:r` family anchored at `L_z`: `L_x = ρ·L_y`, `L_z = r·L_y`.
    pub fn proportional(x_over_y: f64, r: f64, lz: f64) -> Result<Self> {
        if !(r.is_finite() && r > 0.0 && x_over_y.is_finite() && x_over_y > 0.0) {
            return Err(Error::InvalidGeometry(format!(
                "aspect ratios must be positive, got ρ={x_over_y}, r={r}"
            )));
        }
        let ly = lz / r;
        Self::new(x_over_y * ly, ly, lz)
    }

    /// Parses `Lx:Ly:Lz`. With an `L_z` anchor the triple is read as
    /// proportions and rescaled so that the third side equals the anchor.
    pub fn parse(text: &str, lz_anchor: Option<f64>) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("geometry `{text}` is not of the form a:b:c")));
        }
        let exact: Vec<BigRational> =
            parts.iter().map(|p| parse_rational(p)).collect::<Result<_>>()?;
        let geom = Self::exact(exact[0].clone(), exact[1].clone(), exact[2].clone())?;
        match lz_anchor {
            None => Ok(geom),
            Some(lz) => {
                let scale = lz / geom.lengths[2];
                let [a, b, c] = geom.lengths;
                Self::new(a * scale, b * scale, c * scale)
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn lengths_f64(&self) -> [f64; 3] {
        self.lengths
    }

    pub fn exact_lengths(&self) -> Option<&[BigRational; 3]> {
        self.exact.as_ref()
    }

    pub fn length<S: Scalar>(&self, axis: Axis) -> Result<S> {
        let i = axis.index();
        S::from_length(self.exact.as_ref().map(|e| &e[i]), self.lengths[i])
    }

    pub fn volume<S: Scalar>(&self) -> Result<S> {
        Ok(self.length::<S>(Axis::X)? * self.length::<S>(Axis::Y)? * self.length::<S>(Axis::Z)?)
    }

    /// Transverse area `S = L_y·L_z` of the slab seen by 1-D modes.
    pub fn transverse_area<S: Scalar>(&self) -> Result<S> {
        Ok(self.length::<S>(Axis::Y)? * self.length::<S>(Axis::Z)?)
    }

    pub fn volume_f64(&self) -> f64 {
        self.lengths.iter().product()
    }

    /// `r = L_z / L_x` when the base is square (`L_x = L_y`).
    pub fn aspect_ratio(&self) -> Option<f64> {
        let [lx, ly, lz] = self.lengths;
        let square = match &self.exact {
            Some(e) => e[0] == e[1],
            None => lx == ly,
        };
        square.then(|| lz / lx)
    }

    /// Same box with every length scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let [a, b, c] = self.lengths;
        Self::new(a * factor, b * factor, c * factor)
    }
}

impl fmt::Display for CavityGeometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some([a, b, c]) => write!(f, "{a}:{b}:{c}"),
            None => {
                let [a, b, c] = self.lengths;
                write!(f, "{a}:{b}:{c}")
            }
        }
    }
}

impl FromStr for CavityGeometry {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, None)
    }
}

/// Parses `3`, `0.25`, `-1.5e-3` or `7/4` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("`{text}` is not a rational number"));
    if let Some((n, d)) = text.split_once('/') {
        let n = parse_rational(n.trim())?;
        let d = parse_rational(d.trim())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(n / d);
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    let numer: BigInt = all.parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let pow = num_traits::pow(ten, scale.unsigned_abs() as usize);
    let mut value = if scale >= 0 {
        BigRational::from_integer(numer * pow)
    } else {
        BigRational::new(numer, pow)
    };
    if negative {
        value = -value;
    }
    Ok(value)
}
