use std::fmt;
use std::ops::{Div, Mul};

use serde::Deserialize;

use crate::error::{Error, Result};

const CONSTANTS_FILE: &str = include_str!("../../data/constants.toml");

#[derive(Deserialize)]
struct Entry {
    value: f64,
    #[allow(dead_code)]
    unit: String,
    #[allow(dead_code)]
    source: String,
}

#[derive(Deserialize)]
struct ConstantsFile {
    version: String,
    hbar_c: Entry,
    hbar: Entry,
    boltzmann: Entry,
    mu0: Entry,
    elementary_charge: Entry,
    fine_structure: Entry,
    electron_mass: Entry,
}

/// Conversion data into natural units (`ħ = c = 1`, Heaviside-Lorentz).
#[derive(Clone, Debug, PartialEq)]
pub struct UnitConstants {
    pub version: String,
    /// eV·m
    pub hbar_c: f64,
    /// eV·s
    pub hbar: f64,
    /// eV/K
    pub boltzmann: f64,
    pub mu0: f64,
    pub elementary_charge: f64,
    pub fine_structure: f64,
    /// eV
    pub electron_mass: f64,
}

impl UnitConstants {
    /// The bundled CODATA table.
    pub fn codata() -> Self {
        Self::from_toml(CONSTANTS_FILE).expect("bundled constants table is valid")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let f: ConstantsFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let c = Self {
            version: f.version,
            hbar_c: f.hbar_c.value,
            hbar: f.hbar.value,
            boltzmann: f.boltzmann.value,
            mu0: f.mu0.value,
            elementary_charge: f.elementary_charge.value,
            fine_structure: f.fine_structure.value,
            electron_mass: f.electron_mass.value,
        };
        let all = [c.hbar_c, c.hbar, c.boltzmann, c.mu0, c.elementary_charge, c.fine_structure, c.electron_mass];
        if all.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::Parse("constants must be positive and finite".into()));
        }
        Ok(c)
    }

    /// eV⁻¹ per metre.
    pub fn meter(&self) -> f64 {
        1.0 / self.hbar_c
    }

    /// eV⁻¹ per second.
    pub fn second(&self) -> f64 {
        1.0 / self.hbar
    }

    /// eV per kelvin.
    pub fn kelvin(&self) -> f64 {
        self.boltzmann
    }

    /// eV² per tesla, from matching `B²/2μ₀` to the natural-unit energy
    /// density `B²/2`: `√((ħc)³/(μ₀e))`.
    pub fn tesla(&self) -> f64 {
        (self.hbar_c.powi(3) / (self.mu0 * self.elementary_charge)).sqrt()
    }

    /// `κ_EH = α²/(90 m_e⁴)` in eV⁻⁴.
    pub fn kappa_eh(&self) -> f64 {
        self.fine_structure.powi(2) / (90.0 * self.electron_mass.powi(4))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unit {
    Meter,
    Centimeter,
    Second,
    Kelvin,
    Tesla,
    Ev,
    InvEv,
    Ev2,
    Watt,
    Dimensionless,
}

const SUFFIXES: [(&str, Unit); 9] = [
    ("eV^-1", Unit::InvEv),
    ("eV^2", Unit::Ev2),
    ("eV", Unit::Ev),
    ("cm", Unit::Centimeter),
    ("m", Unit::Meter),
    ("s", Unit::Second),
    ("K", Unit::Kelvin),
    ("T", Unit::Tesla),
    ("W", Unit::Watt),
];

impl Unit {
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "1" | "" => Ok(Unit::Dimensionless),
            t => SUFFIXES.iter().find(|(s, _)| *s == t).map(|(_, u)| *u).ok_or_else(|| Error::UnknownUnit(t.into())),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Unit::Meter => "m",
            Unit::Centimeter => "cm",
            Unit::Second => "s",
            Unit::Kelvin => "K",
            Unit::Tesla => "T",
            Unit::Ev => "eV",
            Unit::InvEv => "eV^-1",
            Unit::Ev2 => "eV^2",
            Unit::Watt => "W",
            Unit::Dimensionless => "1",
        }
    }

    /// Power of eV in natural units.
    pub fn ev_power(self) -> i32 {
        match self {
            Unit::Meter | Unit::Centimeter | Unit::Second | Unit::InvEv => -1,
            Unit::Kelvin | Unit::Ev => 1,
            Unit::Tesla | Unit::Ev2 | Unit::Watt => 2,
            Unit::Dimensionless => 0,
        }
    }

    /// Natural-unit value of one of this unit.
    pub fn factor(self, c: &UnitConstants) -> f64 {
        match self {
            Unit::Meter => c.meter(),
            Unit::Centimeter => 0.01 * c.meter(),
            Unit::Second => c.second(),
            Unit::Kelvin => c.kelvin(),
            Unit::Tesla => c.tesla(),
            // J/s with J = eV/e and s = 1/ħ
            Unit::Watt => c.hbar / c.elementary_charge,
            Unit::Ev | Unit::InvEv | Unit::Ev2 | Unit::Dimensionless => 1.0,
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

pub fn convert_units(value: f64, from: Unit, to: Unit, c: &UnitConstants) -> Result<f64> {
    if from.ev_power() != to.ev_power() {
        return Err(Error::IncompatibleUnits(from.to_string(), to.to_string()));
    }
    Ok(value * from.factor(c) / to.factor(c))
}

/// A natural-unit value tagged with its power of eV.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub dim: i32,
}

impl Quantity {
    pub fn new(value: f64, dim: i32) -> Self {
        Self { value, dim }
    }

    pub fn number(value: f64) -> Self {
        Self { value, dim: 0 }
    }

    pub fn from_unit(value: f64, unit: Unit, c: &UnitConstants) -> Self {
        Self { value: value * unit.factor(c), dim: unit.ev_power() }
    }

    pub fn powi(self, n: i32) -> Self {
        Self { value: self.value.powi(n), dim: self.dim * n }
    }

    /// The value, provided the dimension is `eV^dim`.
    pub fn expect(self, dim: i32, what: &str) -> Result<f64> {
        if self.dim != dim {
            return Err(Error::IncompatibleUnits(format!("{what} has eV^{}", self.dim), format!("eV^{dim}")));
        }
        Ok(self.value)
    }

    pub fn in_unit(self, unit: Unit, c: &UnitConstants) -> Result<f64> {
        self.expect(unit.ev_power(), unit.symbol())?;
        Ok(self.value / unit.factor(c))
    }
}

impl Mul for Quantity {
    type Output = Quantity;
    fn mul(self, rhs: Quantity) -> Quantity {
        Quantity { value: self.value * rhs.value, dim: self.dim + rhs.dim }
    }
}

impl Div for Quantity {
    type Output = Quantity;
    fn div(self, rhs: Quantity) -> Quantity {
        Quantity { value: self.value / rhs.value, dim: self.dim - rhs.dim }
    }
}

/// Parses `"0.1T"`, `"20 cm"` or a bare number in `default` units and checks
/// that the dimension matches `default`.
pub fn parse_quantity(text: &str, default: Unit, c: &UnitConstants) -> Result<Quantity> {
    let t = text.trim();
    let (number, unit) = SUFFIXES
        .iter()
        .find_map(|(s, u)| t.strip_suffix(s).map(|rest| (rest.trim(), *u)))
        .filter(|(rest, _)| rest.parse::<f64>().is_ok())
        .unwrap_or((t, default));
    let value: f64 = number.parse().map_err(|_| Error::Parse(format!("cannot read `{text}` as a quantity")))?;
    if unit.ev_power() != default.ev_power() {
        return Err(Error::IncompatibleUnits(unit.to_string(), default.to_string()));
    }
    Ok(Quantity::from_unit(value, unit, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tesla_in_ev_squared() {
        let c = UnitConstants::codata();
        assert!((c.tesla() - 195.35).abs() < 0.01, "{}", c.tesla());
    }

    #[test]
    fn parses_suffixes() {
        let c = UnitConstants::codata();
        let b = parse_quantity("0.1T", Unit::Tesla, &c).unwrap();
        assert!((b.value - 0.1 * c.tesla()).abs() < 1e-12 * b.value);
        let l = parse_quantity("20 cm", Unit::Meter, &c).unwrap();
        assert!((l.in_unit(Unit::Meter, &c).unwrap() - 0.2).abs() < 1e-15);
        assert_eq!(parse_quantity("1e10", Unit::Dimensionless, &c).unwrap().value, 1e10);
        assert!(parse_quantity("1K", Unit::Meter, &c).is_err());
        assert!(parse_quantity("1furlong", Unit::Meter, &c).is_err());
    }

    #[test]
    fn unknown_and_mismatched_units() {
        let c = UnitConstants::codata();
        assert!(Unit::parse("parsec").is_err());
        assert!(convert_units(1.0, Unit::Tesla, Unit::Second, &c).is_err());
    }
}
