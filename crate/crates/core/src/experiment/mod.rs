//! Probabilities, signal quanta and measurement time for the resonant
//! `2·TE011 → TM110 + TM130` channel.
//!
//! Everything is evaluated in natural units as [`Quantity`] values whose eV
//! power is checked at each reported output.

mod inputs;
mod units;

pub use inputs::ExperimentInputs;
pub use units::{convert_units, parse_quantity, Quantity, Unit, UnitConstants};

use num_complex::Complex64;
use serde::Serialize;

use crate::amplitudes::{g1_tilde_squared, g1_squared, matrix_element, Couplings, ProcessSpec};
use crate::error::{Error, Result};
use crate::mode_basis::{mode_frequency_f64, CavityGeometry, ModeId};

/// `ω_s` quoted for `L_z = 20 cm`, in eV.
pub const QUOTED_OMEGA_S_EV: f64 = 2.4e-6;
/// Quoted detection time, in seconds.
pub const QUOTED_TIME_S: f64 = 22.0;
/// Lowest quality factor accepted by the high-Q treatment.
pub const MIN_QUALITY: f64 = 100.0;

/// `r = √(√5 − 2)`.
pub fn resonant_r() -> f64 {
    (5f64.sqrt() - 2.0).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Pump {
    /// Both pump modes at field amplitude `F₀` (eV²).
    Field(Quantity),
    Occupations { n1: f64, n2: f64 },
    Coherent { xi: Complex64, eta: Complex64 },
}

/// Natural-unit inputs; dimensions are checked by [`ExperimentConfig::validate`].
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    /// eV⁻⁴
    pub kappa: Quantity,
    pub beta: f64,
    pub q: f64,
    /// eV⁻¹
    pub lz: Quantity,
    /// eV
    pub temperature: Quantity,
    pub snr: f64,
    pub pump: Pump,
    /// Overrides `ω_130` in the radiometer equation (eV).
    pub omega_s: Option<Quantity>,
    /// Replaces `Q/ω_130` by `max(t_coh, Q/ω_130)` (eV⁻¹).
    pub coherence_time: Option<Quantity>,
    pub r: f64,
}

impl ExperimentConfig {
    /// `L_z = 20 cm`, `F₀ = 0.1 T`, `Q = 10¹⁰`, `T = 1 K`, SNR 5, `κ = κ_EH`.
    pub fn benchmark(c: &UnitConstants) -> Self {
        Self {
            kappa: Quantity::new(c.kappa_eh(), -4),
            beta: 1.75,
            q: 1e10,
            lz: Quantity::from_unit(0.2, Unit::Meter, c),
            temperature: Quantity::from_unit(1.0, Unit::Kelvin, c),
            snr: 5.0,
            pump: Pump::Field(Quantity::from_unit(0.1, Unit::Tesla, c)),
            omega_s: None,
            coherence_time: None,
            r: resonant_r(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let check = |q: Quantity, dim: i32, name: &str| -> Result<f64> { q.expect(dim, name) };
        let positive = |v: f64, name: &str| -> Result<()> {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} must be positive, got {v}")))
            }
        };
        let kappa = check(self.kappa, -4, "κ")?;
        if !(kappa.is_finite() && kappa >= 0.0) {
            return Err(Error::Config(format!("κ must be non-negative, got {kappa}")));
        }
        if !self.beta.is_finite() {
            return Err(Error::Config("β must be finite".into()));
        }
        if self.q.is_nan() || self.q < MIN_QUALITY || !self.q.is_finite() {
            return Err(Error::Config(format!("Q = {} is below {MIN_QUALITY}; the treatment needs Q ≫ 1", self.q)));
        }
        positive(check(self.lz, -1, "L_z")?, "L_z")?;
        positive(check(self.temperature, 1, "T")?, "T")?;
        positive(self.snr, "SNR")?;
        positive(self.r, "r")?;
        match self.pump {
            Pump::Field(f0) => {
                let v = check(f0, 2, "F₀")?;
                if !(v.is_finite() && v >= 0.0) {
                    return Err(Error::Config(format!("F₀ must be non-negative, got {v}")));
                }
            }
            Pump::Occupations { n1, n2 } => {
                if !(n1 >= 0.0 && n2 >= 0.0 && n1.is_finite() && n2.is_finite()) {
                    return Err(Error::Config("occupations must be non-negative".into()));
                }
            }
            Pump::Coherent { xi, eta } => {
                if !(xi.norm().is_finite() && eta.norm().is_finite()) {
                    return Err(Error::Config("coherent amplitudes must be finite".into()));
                }
            }
        }
        if let Some(w) = self.omega_s {
            positive(check(w, 1, "ω_s")?, "ω_s")?;
        }
        if let Some(t) = self.coherence_time {
            positive(check(t, -1, "t_coh")?, "t_coh")?;
        }
        Ok(())
    }

    pub fn couplings(&self) -> Couplings {
        Couplings::new(self.kappa.value, self.beta)
    }

    pub fn geometry(&self) -> Result<CavityGeometry> {
        CavityGeometry::square_base(self.r, self.lz.value)
    }

    fn volume(&self) -> Result<Quantity> {
        Ok(Quantity::new(self.geometry()?.volume_f64(), -3))
    }

    fn frequency(&self, mode: ModeId) -> Result<Quantity> {
        Ok(Quantity::new(mode_frequency_f64(&self.geometry()?, &mode)?, 1))
    }

    /// Interaction time replacing `2πδ(E)`.
    fn interaction_time(&self) -> Result<Quantity> {
        let decay = Quantity::number(self.q) / self.frequency(ModeId::tm(1, 3, 0))?;
        Ok(match self.coherence_time {
            Some(t) if t.value > decay.value => t,
            _ => decay,
        })
    }
}

fn resonant_process(cfg: &ExperimentConfig) -> Result<ProcessSpec> {
    let p = ProcessSpec::scatter_2to2(cfg.geometry()?, ModeId::te(0, 1, 1), ModeId::tm(1, 1, 0), ModeId::tm(1, 3, 0))?;
    if !p.is_resonant() {
        return Err(Error::OffResonance(p.energy_out() - p.energy_in()));
    }
    Ok(p)
}

/// `P = |M₂→₂ · τ|²` with `τ = Q/ω_130`, or the coherence time when longer.
pub fn probability_2to2(cfg: &ExperimentConfig) -> Result<Quantity> {
    cfg.validate()?;
    let process = resonant_process(cfg)?;
    let m = Quantity::new(matrix_element::<f64>(&process)?.total(cfg.couplings()), 1);
    Ok((m * cfg.interaction_time()?).powi(2))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SignalQuanta {
    #[serde(rename = "N1")]
    pub n1: f64,
    #[serde(rename = "N2")]
    pub n2: f64,
    /// `2⟨N₁⟩²⟨N₂⟩·P₂→₂`.
    #[serde(rename = "N_s")]
    pub via_occupations: f64,
    /// `G̃₁²κ²Q²F₀⁶L_z⁴`; only for a field pump without a coherence time.
    #[serde(rename = "N_s_closed_form")]
    pub via_closed_form: Option<f64>,
}

fn occupation(f0: Quantity, volume: Quantity, omega: Quantity) -> Result<f64> {
    (f0.powi(2) * volume / (Quantity::number(2.0) * omega)).expect(0, "⟨N⟩")
}

pub fn mean_signal_quanta(cfg: &ExperimentConfig) -> Result<SignalQuanta> {
    let p = probability_2to2(cfg)?.expect(0, "P₂→₂")?;
    let (n1, n2) = match cfg.pump {
        Pump::Field(f0) => {
            let v = cfg.volume()?;
            (
                occupation(f0, v, cfg.frequency(ModeId::te(0, 1, 1))?)?,
                occupation(f0, v, cfg.frequency(ModeId::tm(1, 1, 0))?)?,
            )
        }
        Pump::Occupations { n1, n2 } => (n1, n2),
        Pump::Coherent { xi, eta } => (xi.norm_sqr(), eta.norm_sqr()),
    };
    let via_closed_form = match (cfg.pump, cfg.coherence_time) {
        (Pump::Field(f0), None) => Some(
            (Quantity::number(g1_tilde_squared(cfg.r, cfg.beta))
                * cfg.kappa.powi(2)
                * Quantity::number(cfg.q * cfg.q)
                * f0.powi(6)
                * cfg.lz.powi(4))
            .expect(0, "⟨N_s⟩")?,
        ),
        _ => None,
    };
    Ok(SignalQuanta { n1, n2, via_occupations: 2.0 * n1 * n1 * n2 * p, via_closed_form })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementTime {
    /// `P_s = ⟨N_s⟩ω_s/(L_z Q)`, eV².
    pub signal_power: Quantity,
    /// eV
    pub omega_s: Quantity,
    /// eV⁻¹; `None` when the signal vanishes and the time is infinite.
    pub time: Option<Quantity>,
    pub note: Option<String>,
}

/// Dicke radiometer with `B = 1/t`: `SNR = P_s·t/T`.
pub fn measurement_time(cfg: &ExperimentConfig) -> Result<MeasurementTime> {
    let n_s = Quantity::number(mean_signal_quanta(cfg)?.via_occupations);
    let omega_s = match cfg.omega_s {
        Some(w) => w,
        None => cfg.frequency(ModeId::tm(1, 3, 0))?,
    };
    let signal_power = n_s * omega_s / (cfg.lz * Quantity::number(cfg.q));
    signal_power.expect(2, "P_s")?;
    if signal_power.value == 0.0 {
        let why = if cfg.kappa.value == 0.0 { "κ = 0" } else { "the signal vanishes" };
        return Ok(MeasurementTime {
            signal_power,
            omega_s,
            time: None,
            note: Some(format!("{why}: no signal power, the measurement time is infinite")),
        });
    }
    let t = Quantity::number(cfg.snr) * cfg.temperature / signal_power;
    t.expect(-1, "t")?;
    Ok(MeasurementTime { signal_power, omega_s, time: Some(t), note: None })
}

/// Fixed-order summary; the first four keys are the headline results.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    #[serde(rename = "P_2to2")]
    pub p_2to2: f64,
    #[serde(rename = "N_s")]
    pub n_s: f64,
    /// eV²
    #[serde(rename = "P_s")]
    pub p_s: f64,
    pub t_seconds: Option<f64>,
    #[serde(rename = "P_s_watts")]
    pub p_s_watts: f64,
    #[serde(rename = "N_s_closed_form")]
    pub n_s_closed_form: Option<f64>,
    #[serde(rename = "N1")]
    pub n1: f64,
    #[serde(rename = "N2")]
    pub n2: f64,
    pub r: f64,
    #[serde(rename = "Lz_m")]
    pub lz_m: f64,
    #[serde(rename = "Q")]
    pub q: f64,
    pub kappa_ev4: f64,
    pub kappa_eh_ev4: f64,
    pub beta: f64,
    #[serde(rename = "G1_sq")]
    pub g1_sq: f64,
    #[serde(rename = "G1_tilde_sq")]
    pub g1_tilde_sq: f64,
    pub omega_s_ev: f64,
    pub omega_s_quoted_ev: f64,
    pub t_seconds_quoted_omega_s: Option<f64>,
    pub t_seconds_quoted: f64,
    pub constants: String,
    pub note: Option<String>,
}

pub fn experiment_report(cfg: &ExperimentConfig, c: &UnitConstants) -> Result<ExperimentReport> {
    let p = probability_2to2(cfg)?;
    let quanta = mean_signal_quanta(cfg)?;
    let time = measurement_time(cfg)?;
    let quoted = measurement_time(&ExperimentConfig {
        omega_s: Some(Quantity::from_unit(QUOTED_OMEGA_S_EV, Unit::Ev, c)),
        ..cfg.clone()
    })?;
    let seconds = |t: &MeasurementTime| t.time.map(|t| t.in_unit(Unit::Second, c)).transpose();
    Ok(ExperimentReport {
        p_2to2: p.expect(0, "P₂→₂")?,
        n_s: quanta.via_occupations,
        p_s: time.signal_power.in_unit(Unit::Ev2, c)?,
        t_seconds: seconds(&time)?,
        p_s_watts: time.signal_power.in_unit(Unit::Watt, c)?,
        n_s_closed_form: quanta.via_closed_form,
        n1: quanta.n1,
        n2: quanta.n2,
        r: cfg.r,
        lz_m: cfg.lz.in_unit(Unit::Meter, c)?,
        q: cfg.q,
        kappa_ev4: cfg.kappa.expect(-4, "κ")?,
        kappa_eh_ev4: c.kappa_eh(),
        beta: cfg.beta,
        g1_sq: g1_squared(cfg.r, cfg.beta),
        g1_tilde_sq: g1_tilde_squared(cfg.r, cfg.beta),
        omega_s_ev: time.omega_s.in_unit(Unit::Ev, c)?,
        omega_s_quoted_ev: QUOTED_OMEGA_S_EV,
        t_seconds_quoted_omega_s: seconds(&quoted)?,
        t_seconds_quoted: QUOTED_TIME_S,
        constants: c.version.clone(),
        note: time.note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn benchmark_inputs_run() {
        let c = UnitConstants::codata();
        let r = experiment_report(&ExperimentConfig::benchmark(&c), &c).unwrap();
        assert!(r.t_seconds.unwrap() > 0.0);
        let closed = r.n_s_closed_form.unwrap();
        assert!((r.n_s - closed).abs() <= 1e-10 * closed);
    }

    #[test]
    fn zero_kappa_gives_infinite_time() {
        let c = UnitConstants::codata();
        let cfg = ExperimentConfig { kappa: Quantity::new(0.0, -4), ..ExperimentConfig::benchmark(&c) };
        let t = measurement_time(&cfg).unwrap();
        assert!(t.time.is_none());
        assert!(t.note.unwrap().contains("κ = 0"));
    }

    #[test]
    fn off_resonance_is_an_error() {
        let c = UnitConstants::codata();
        let cfg = ExperimentConfig { r: 0.5, ..ExperimentConfig::benchmark(&c) };
        assert!(matches!(probability_2to2(&cfg), Err(Error::OffResonance(_))));
    }

    #[test]
    fn low_q_is_rejected() {
        let c = UnitConstants::codata();
        let cfg = ExperimentConfig { q: 10.0, ..ExperimentConfig::benchmark(&c) };
        assert!(probability_2to2(&cfg).is_err());
    }
}
