use num_complex::Complex64;
use serde_json::Value;

use super::units::{parse_quantity, Quantity, Unit, UnitConstants};
use super::{resonant_r, ExperimentConfig, Pump};
use crate::error::{Error, Result};

/// Raw experiment inputs as text, keyed like the command-line flags.
/// Values may carry unit suffixes (`"0.1T"`, `"20cm"`, `"1K"`).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExperimentInputs {
    pub lz: Option<String>,
    pub f0: Option<String>,
    pub q: Option<String>,
    pub temperature: Option<String>,
    pub snr: Option<String>,
    pub kappa: Option<String>,
    pub beta: Option<String>,
    pub r: Option<String>,
    pub n1: Option<String>,
    pub n2: Option<String>,
    pub xi: Option<String>,
    pub eta: Option<String>,
    pub omega_s: Option<String>,
    pub coherence_time: Option<String>,
}

impl ExperimentInputs {
    pub const KEYS: [&'static str; 14] =
        ["Lz", "F0", "Q", "T", "snr", "kappa", "beta", "r", "N1", "N2", "xi", "eta", "omega-s", "coherence-time"];

    fn slot(&mut self, key: &str) -> Option<&mut Option<String>> {
        Some(match key {
            "Lz" => &mut self.lz,
            "F0" => &mut self.f0,
            "Q" => &mut self.q,
            "T" => &mut self.temperature,
            "snr" => &mut self.snr,
            "kappa" => &mut self.kappa,
            "beta" => &mut self.beta,
            "r" => &mut self.r,
            "N1" => &mut self.n1,
            "N2" => &mut self.n2,
            "xi" => &mut self.xi,
            "eta" => &mut self.eta,
            "omega-s" => &mut self.omega_s,
            "coherence-time" => &mut self.coherence_time,
            _ => return None,
        })
    }

    /// Reads a JSON object with the flag names as keys; values are numbers
    /// or strings.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let Value::Object(map) = value else {
            return Err(Error::Config("config file must hold a JSON object".into()));
        };
        let mut out = Self::default();
        for (key, v) in map {
            let text = match v {
                Value::Number(n) => n.to_string(),
                Value::String(s) => s,
                Value::Null => continue,
                other => return Err(Error::Config(format!("`{key}`: expected a number or string, got {other}"))),
            };
            let slot = out.slot(&key).ok_or_else(|| {
                Error::Config(format!("unknown config key `{key}`; expected one of {}", Self::KEYS.join(", ")))
            })?;
            *slot = Some(text);
        }
        Ok(out)
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overlay(mut self, mut over: Self) -> Self {
        for key in Self::KEYS {
            if let Some(v) = over.slot(key).and_then(Option::take) {
                *self.slot(key).expect("known key") = Some(v);
            }
        }
        self
    }

    pub fn resolve(&self, c: &UnitConstants) -> Result<ExperimentConfig> {
        let required = |v: &Option<String>, name: &str| -> Result<String> {
            v.clone().ok_or_else(|| Error::Config(format!("missing `{name}`")))
        };
        let quantity = |v: &str, unit| parse_quantity(v, unit, c);
        let number = |v: &str| -> Result<f64> { quantity(v, Unit::Dimensionless).map(|q| q.value) };
        let optional = |v: &Option<String>, unit| v.as_deref().map(|v| quantity(v, unit)).transpose();

        let pump = match (&self.f0, &self.n1, &self.n2, &self.xi, &self.eta) {
            (Some(f0), None, None, None, None) => Pump::Field(quantity(f0, Unit::Tesla)?),
            (None, Some(n1), Some(n2), None, None) => Pump::Occupations { n1: number(n1)?, n2: number(n2)? },
            (None, None, None, Some(xi), Some(eta)) => Pump::Coherent { xi: complex(xi)?, eta: complex(eta)? },
            (None, None, None, None, None) => {
                return Err(Error::Config("no pump specified: give F0, or N1 and N2, or xi and eta".into()))
            }
            _ => return Err(Error::Config("give exactly one pump specification: F0, N1+N2 or xi+eta".into())),
        };
        let cfg = ExperimentConfig {
            kappa: match &self.kappa {
                Some(k) => Quantity::new(number(k)?, -4),
                None => Quantity::new(c.kappa_eh(), -4),
            },
            beta: self.beta.as_deref().map(number).transpose()?.unwrap_or(1.75),
            q: number(&required(&self.q, "Q")?)?,
            lz: quantity(&required(&self.lz, "Lz")?, Unit::Meter)?,
            temperature: quantity(&required(&self.temperature, "T")?, Unit::Kelvin)?,
            snr: number(&required(&self.snr, "snr")?)?,
            pump,
            omega_s: optional(&self.omega_s, Unit::Ev)?,
            coherence_time: optional(&self.coherence_time, Unit::Second)?,
            r: self.r.as_deref().map(number).transpose()?.unwrap_or_else(resonant_r),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// `"0.5"` or `"0.5,0.2"` (real, imaginary).
fn complex(text: &str) -> Result<Complex64> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |s: &str| s.parse::<f64>().map_err(|_| Error::Parse(format!("cannot read `{text}` as a complex number")));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(Error::Parse(format!("cannot read `{text}` as a complex number"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file = ExperimentInputs::from_json(r#"{"Lz": 0.2, "F0": "0.1T", "Q": 1e10, "T": "1K", "snr": 5}"#).unwrap();
        let flags = ExperimentInputs { q: Some("2e10".into()), ..Default::default() };
        let merged = file.overlay(flags);
        assert_eq!(merged.q.as_deref(), Some("2e10"));
        assert_eq!(merged.f0.as_deref(), Some("0.1T"));
        let c = UnitConstants::codata();
        assert_eq!(merged.resolve(&c).unwrap().q, 2e10);
    }

    #[test]
    fn missing_pump_and_unknown_keys() {
        let c = UnitConstants::codata();
        let no_pump = ExperimentInputs::from_json(r#"{"Lz": 0.2, "Q": 1e10, "T": 1, "snr": 5}"#).unwrap();
        assert!(no_pump.resolve(&c).is_err());
        assert!(ExperimentInputs::from_json(r#"{"Lzz": 0.2}"#).is_err());
    }
}
