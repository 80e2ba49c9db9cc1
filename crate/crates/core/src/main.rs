use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use cavity_eh::amplitudes::{
    coherent_amplitude, m22_closed_form, matrix_element, merge_3to1_term, merge_bracket_closed_form,
    planewave_consistency, scatter_2to2_components, AmplitudeValue, BracketComponents, Couplings, PlaneWaveReport,
    ProcessSpec,
};
use cavity_eh::experiment::{
    experiment_report, parse_quantity, resonant_r, ExperimentInputs, ExperimentReport, Unit, UnitConstants,
};
use cavity_eh::mode_basis::{
    enumerate_modes, mode_frequency_f64, parse_rational, CavityGeometry, ModeId, Polarization,
};
use cavity_eh::resonance::{aspect_ratio_for_resonance, scan_resonances, Resonance, ResonanceHit, R_MAX, R_MIN};
use cavity_eh::trig_algebra::{ExactValue, Scalar};
use cavity_eh::verify::{run_checks, Check};
use cavity_eh::{Error, Result};

#[derive(Parser)]
#[command(name = "cavity-eh", version, about = "Euler-Heisenberg photon-photon amplitudes in rectangular cavities")]
struct Cli {
    /// JSON keeps full precision; text rounds to 4 significant figures.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// List cavity modes sorted by frequency.
    Modes(ModesArgs),
    /// Evaluate a four-photon matrix element.
    Amplitude(AmplitudeArgs),
    /// Find aspect ratios where 2ω_pump = ω_sig1 + ω_sig2.
    ResonanceScan(ScanArgs),
    /// Probability, signal quanta and measurement time for the resonant channel.
    Experiment(ExperimentArgs),
    /// Run the self-check suite.
    Verify,
}

#[derive(clap::Args)]
struct ModesArgs {
    /// `Lx:Ly:Lz` proportions; `r` as the last entry means the resonant ratio.
    #[arg(long, default_value = "1:1:r")]
    geom: String,
    /// Physical L_z (e.g. `0.2`, `20cm`); frequencies are then in eV.
    #[arg(long = "Lz")]
    lz: Option<String>,
    #[arg(long, default_value_t = 3)]
    list_max: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProcessKind {
    #[value(name = "2to2")]
    TwoToTwo,
    #[value(name = "3to1-1d")]
    MergeOneD,
    #[value(name = "3to1-3d")]
    MergeThreeD,
    Coherent,
}

#[derive(clap::Args)]
struct AmplitudeArgs {
    #[arg(long, value_enum)]
    process: ProcessKind,
    #[arg(long, default_value = "TE011")]
    pump: String,
    /// Two comma-separated signal modes (2to2).
    #[arg(long, default_value = "TM110,TM130")]
    signals: String,
    /// Second incoming mode (3to1-3d).
    #[arg(long)]
    partner: Option<String>,
    /// Outgoing mode (3to1-3d).
    #[arg(long)]
    signal: Option<String>,
    #[arg(long)]
    geom: Option<String>,
    /// L_z in natural length units; integers, decimals and fractions stay exact.
    #[arg(long = "Lz")]
    lz: Option<String>,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    kappa: f64,
    #[arg(long, default_value_t = 1.75, allow_hyphen_values = true)]
    beta: f64,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    p: Option<u32>,
    /// Polarizations of the three pumps and the signal, e.g. `yyzz`.
    #[arg(long, default_value = "yyyy")]
    pols: String,
    /// Coherent amplitude of TE011, `re` or `re,im`.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    xi: String,
    /// Coherent amplitude of TM110, `re` or `re,im`.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    eta: String,
    /// Append the plane-wave cross-check.
    #[arg(long)]
    planewave: bool,
}

#[derive(clap::Args)]
struct ScanArgs {
    #[arg(long, default_value_t = 3)]
    max_index: u32,
    #[arg(long, default_value = "1:1:r")]
    family: String,
    #[arg(long, default_value_t = R_MIN)]
    r_min: f64,
    #[arg(long, default_value_t = R_MAX)]
    r_max: f64,
    /// Solve one triple `PUMP,SIG1,SIG2` instead of scanning.
    #[arg(long)]
    triple: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ExperimentArgs {
    /// JSON file with the same keys as the flags; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "Lz")]
    lz: Option<String>,
    #[arg(long = "F0")]
    f0: Option<String>,
    #[arg(long = "Q")]
    q: Option<String>,
    #[arg(long = "T")]
    temperature: Option<String>,
    #[arg(long)]
    snr: Option<String>,
    /// eV⁻⁴; defaults to α²/(90 m_e⁴).
    #[arg(long)]
    kappa: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long = "N1")]
    n1: Option<String>,
    #[arg(long = "N2")]
    n2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
    #[arg(long = "omega-s")]
    omega_s: Option<String>,
    #[arg(long = "coherence-time")]
    coherence_time: Option<String>,
}

impl ExperimentArgs {
    fn inputs(&self) -> ExperimentInputs {
        ExperimentInputs {
            lz: self.lz.clone(),
            f0: self.f0.clone(),
            q: self.q.clone(),
            temperature: self.temperature.clone(),
            snr: self.snr.clone(),
            kappa: self.kappa.clone(),
            beta: self.beta.clone(),
            r: self.r.clone(),
            n1: self.n1.clone(),
            n2: self.n2.clone(),
            xi: self.xi.clone(),
            eta: self.eta.clone(),
            omega_s: self.omega_s.clone(),
            coherence_time: self.coherence_time.clone(),
        }
    }
}

/// Four significant figures.
fn sig4(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-3..4).contains(&mag) {
        format!("{:.*}", (3 - mag).max(0) as usize, x)
    } else {
        format!("{x:.3e}")
    }
}

fn sig4_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "n/a".into(), sig4)
}

fn parse_geometry(text: &str, lz: Option<f64>) -> Result<CavityGeometry> {
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    if parts.len() == 3 && parts[2] == "r" {
        let ratio = parse_rational(parts[0])? / parse_rational(parts[1])?;
        let ratio = ExactValue::rational(ratio).to_f64();
        return CavityGeometry::proportional(ratio, resonant_r(), lz.unwrap_or(1.0));
    }
    CavityGeometry::parse(text, lz)
}

/// Like [`parse_geometry`] but keeps rational proportions exact when `L_z`
/// is itself rational.
fn parse_geometry_exact(text: &str, lz: Option<&str>) -> Result<CavityGeometry> {
    let Some(lz) = lz else { return parse_geometry(text, None) };
    let is_resonant_family = text.split(':').nth(2).map(str::trim) == Some("r");
    match parse_rational(lz) {
        Ok(lz) if !is_resonant_family => {
            let geom = CavityGeometry::parse(text, None)?;
            let [a, b, c] = geom.exact_lengths().cloned().ok_or(Error::InexactGeometry)?;
            let scale = lz / c.clone();
            CavityGeometry::exact(a * scale.clone(), b * scale.clone(), c * scale)
        }
        _ => {
            let lz: f64 = lz.parse().map_err(|_| Error::Parse(format!("`{lz}` is not a length")))?;
            parse_geometry(text, Some(lz))
        }
    }
}

fn parse_complex(text: &str) -> Result<Complex64> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |s: &str| s.parse::<f64>().map_err(|_| Error::Parse(format!("`{text}` is not a complex number")));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(Error::Parse(format!("`{text}` is not a complex number"))),
    }
}

fn parse_modes(text: &str, count: usize) -> Result<Vec<ModeId>> {
    let modes: Vec<ModeId> = text.split(',').map(|s| s.trim().parse()).collect::<Result<_>>()?;
    if modes.len() != count {
        return Err(Error::Parse(format!("expected {count} comma-separated modes, got `{text}`")));
    }
    Ok(modes)
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?);
    Ok(())
}

#[derive(Serialize)]
struct ModeRow {
    mode: ModeId,
    omega: f64,
    unit: &'static str,
}

fn cmd_modes(args: &ModesArgs, format: Format) -> Result<()> {
    let c = UnitConstants::codata();
    let lz = args.lz.as_deref().map(|l| parse_quantity(l, Unit::Meter, &c)).transpose()?;
    let geom = parse_geometry(&args.geom, lz.map(|q| q.value))?;
    let unit = if lz.is_some() { "eV" } else { "1/length" };
    let mut rows: Vec<ModeRow> = enumerate_modes(args.list_max)
        .into_iter()
        .map(|mode| Ok(ModeRow { mode, omega: mode_frequency_f64(&geom, &mode)?, unit }))
        .collect::<Result<_>>()?;
    rows.sort_by(|a, b| a.omega.total_cmp(&b.omega).then(a.mode.cmp(&b.mode)));
    match format {
        Format::Json => print_json(&rows),
        Format::Text => {
            println!("{:<10} {:>12}", "mode", format!("ω [{unit}]"));
            for r in &rows {
                println!("{:<10} {:>12}", r.mode.to_string(), sig4(r.omega));
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct ScatterOutput {
    process: &'static str,
    pump: ModeId,
    signals: [ModeId; 2],
    geometry: [f64; 3],
    resonant: bool,
    energy_mismatch: f64,
    #[serde(rename = "c_F4")]
    c_f4: f64,
    #[serde(rename = "c_FFdual")]
    c_ffdual: f64,
    #[serde(rename = "M_total")]
    m_total: f64,
    components: BracketComponents,
    closed_form: Option<ClosedForm>,
    warning: Option<String>,
    planewave: Option<PlaneWaveReport>,
}

#[derive(Serialize)]
struct ClosedForm {
    components: BracketComponents,
    #[serde(rename = "M22")]
    m22: Option<f64>,
}

#[derive(Serialize)]
struct MergeOutput {
    process: &'static str,
    n: u32,
    p: u32,
    s: u32,
    pols: String,
    geometry: [f64; 3],
    exact: bool,
    resonant: bool,
    #[serde(rename = "c_F4")]
    c_f4: f64,
    #[serde(rename = "c_FFdual")]
    c_ffdual: f64,
    #[serde(rename = "M_total")]
    m_total: f64,
    #[serde(rename = "c_F4_is_zero")]
    c_f4_is_zero: bool,
    #[serde(rename = "c_FFdual_is_zero")]
    c_ffdual_is_zero: bool,
    #[serde(rename = "M_total_is_zero")]
    m_total_is_zero: bool,
    brackets: Option<MergeBracketStrings>,
    planewave: Option<PlaneWaveReport>,
}

#[derive(Serialize)]
struct MergeBracketStrings {
    ee: String,
    bb: String,
    b2e2: String,
    eb: String,
    closed_form: String,
}

#[derive(Serialize)]
struct Merge3dOutput {
    process: &'static str,
    pump: ModeId,
    partner: ModeId,
    signal: ModeId,
    geometry: [f64; 3],
    resonant: bool,
    energy_mismatch: f64,
    #[serde(rename = "c_F4")]
    c_f4: f64,
    #[serde(rename = "c_FFdual")]
    c_ffdual: f64,
    #[serde(rename = "M_total")]
    m_total: f64,
    exact_zero: Option<bool>,
    warning: Option<String>,
    planewave: Option<PlaneWaveReport>,
}

#[derive(Serialize)]
struct CoherentOutput {
    process: &'static str,
    xi: [f64; 2],
    eta: [f64; 2],
    geometry: [f64; 3],
    #[serde(rename = "M_coh")]
    m_coh: [f64; 2],
    #[serde(rename = "M_2to2")]
    m_2to2: f64,
    /// `M_coh / (√2 ξ² η* M₂→₂)`.
    ratio: [f64; 2],
}

fn to_f64<S: Scalar>(a: &AmplitudeValue<S>, c: Couplings) -> (f64, f64, f64) {
    // `+ 0.0` turns −0 into 0 for display
    (a.c_f4.to_f64() + 0.0, a.c_ffdual.to_f64() + 0.0, a.total(c) + 0.0)
}

fn parse_pols(text: &str) -> Result<[Polarization; 4]> {
    let pols: Vec<Polarization> = text
        .chars()
        .map(|ch| Polarization::from_char(ch).ok_or_else(|| Error::Parse(format!("`{ch}` is not a polarization (y or z)"))))
        .collect::<Result<_>>()?;
    pols.try_into().map_err(|_| Error::Parse(format!("`{text}` must name four polarizations")))
}

fn cmd_amplitude(args: &AmplitudeArgs, format: Format) -> Result<()> {
    let c = Couplings::new(args.kappa, args.beta);
    match args.process {
        ProcessKind::TwoToTwo => {
            let geom = parse_geometry_exact(args.geom.as_deref().unwrap_or("1:1:r"), args.lz.as_deref())?;
            let pump: ModeId = args.pump.parse()?;
            let sig = parse_modes(&args.signals, 2)?;
            let process = ProcessSpec::scatter_2to2(geom.clone(), pump, sig[0], sig[1])?;
            let a = matrix_element::<f64>(&process)?;
            let paper_triple = pump == ModeId::te(0, 1, 1)
                && ((sig[0], sig[1]) == (ModeId::tm(1, 1, 0), ModeId::tm(1, 3, 0))
                    || (sig[1], sig[0]) == (ModeId::tm(1, 1, 0), ModeId::tm(1, 3, 0)));
            let closed_form = match (paper_triple, geom.aspect_ratio()) {
                (true, Some(r)) => Some(ClosedForm {
                    components: scatter_2to2_components(&geom, c)?,
                    m22: process.is_resonant().then(|| m22_closed_form(r, geom.lengths_f64()[2], c)),
                }),
                _ => None,
            };
            let (c_f4, c_ffdual, m_total) = to_f64(&a, c);
            let out = ScatterOutput {
                process: "2to2",
                pump,
                signals: [sig[0], sig[1]],
                geometry: geom.lengths_f64(),
                resonant: a.resonant,
                energy_mismatch: a.energy_mismatch,
                c_f4,
                c_ffdual,
                m_total,
                components: BracketComponents::from_engine(&process, c)?,
                closed_form,
                warning: a.warning(),
                planewave: args.planewave.then(|| planewave_consistency(&process, c)).transpose()?,
            };
            match format {
                Format::Json => print_json(&out),
                Format::Text => {
                    println!("{} → {} + {}  (resonant: {})", out.pump, out.signals[0], out.signals[1], out.resonant);
                    println!("c_F4      {}", sig4(out.c_f4));
                    println!("c_FFdual  {}", sig4(out.c_ffdual));
                    println!("M_total   {}", sig4(out.m_total));
                    let k = out.components;
                    println!("⟨E⁴⟩ {}  ⟨B⁴⟩ {}  ⟨B²E²⟩ {}  ⟨(B·E)²⟩ {}", sig4(k.e4), sig4(k.b4), sig4(k.b2e2), sig4(k.be2));
                    if let Some(w) = out.warning {
                        println!("warning: {w}");
                    }
                    Ok(())
                }
            }
        }
        ProcessKind::MergeOneD => {
            let (n, p) = match (args.n, args.p) {
                (Some(n), Some(p)) => (n, p),
                _ => return Err(Error::Config("3to1-1d needs --n and --p".into())),
            };
            let pols = parse_pols(&args.pols)?;
            let geom = parse_geometry_exact(args.geom.as_deref().unwrap_or("1:1:1"), args.lz.as_deref())?;
            let s = 2 * n + p;
            let process = ProcessSpec::merge_3to1_1d(geom.clone(), n, p, s, pols)?;
            let planewave = args.planewave.then(|| planewave_consistency(&process, c)).transpose()?;
            let out = match matrix_element::<ExactValue>(&process) {
                Ok(a) => {
                    let b = merge_3to1_term(&geom, n, p, s, pols)?;
                    let (c_f4, c_ffdual, m_total) = to_f64(&a, c);
                    MergeOutput {
                        process: "3to1-1d",
                        n,
                        p,
                        s,
                        pols: args.pols.clone(),
                        geometry: geom.lengths_f64(),
                        exact: true,
                        resonant: a.resonant,
                        c_f4,
                        c_ffdual,
                        m_total,
                        c_f4_is_zero: a.c_f4.is_zero(),
                        c_ffdual_is_zero: a.c_ffdual.is_zero(),
                        m_total_is_zero: a.is_exact_zero(),
                        brackets: Some(MergeBracketStrings {
                            ee: b.ee.to_string(),
                            bb: b.bb.to_string(),
                            b2e2: b.b2e2.to_string(),
                            eb: b.eb.to_string(),
                            closed_form: merge_bracket_closed_form(&geom, n, p, pols)?.to_string(),
                        }),
                        planewave,
                    }
                }
                Err(Error::InexactGeometry) => {
                    let a = matrix_element::<f64>(&process)?;
                    let scale = a.pattern_sums.iter().map(|x| x.abs()).sum::<f64>().max(f64::MIN_POSITIVE);
                    let (c_f4, c_ffdual, m_total) = to_f64(&a, c);
                    MergeOutput {
                        process: "3to1-1d",
                        n,
                        p,
                        s,
                        pols: args.pols.clone(),
                        geometry: geom.lengths_f64(),
                        exact: false,
                        resonant: a.resonant,
                        c_f4,
                        c_ffdual,
                        m_total,
                        c_f4_is_zero: c_f4.abs() <= 1e-12 * scale,
                        c_ffdual_is_zero: c_ffdual.abs() <= 1e-12 * scale,
                        m_total_is_zero: m_total.abs() <= 1e-12 * scale * (args.kappa.abs() * (1.0 + args.beta.abs())),
                        brackets: None,
                        planewave,
                    }
                }
                Err(e) => return Err(e),
            };
            match format {
                Format::Json => print_json(&out),
                Format::Text => {
                    println!("1-D merge n={} p={} → s={} pols {} ({})", n, p, s, out.pols, if out.exact { "exact" } else { "float" });
                    println!("c_F4      {}  zero: {}", sig4(out.c_f4), out.c_f4_is_zero);
                    println!("c_FFdual  {}  zero: {}", sig4(out.c_ffdual), out.c_ffdual_is_zero);
                    println!("M_total   {}  zero: {}", sig4(out.m_total), out.m_total_is_zero);
                    Ok(())
                }
            }
        }
        ProcessKind::MergeThreeD => {
            let pump: ModeId = args.pump.parse()?;
            let missing = || Error::Config("3to1-3d needs --partner and --signal".into());
            let partner: ModeId = args.partner.as_deref().ok_or_else(missing)?.parse()?;
            let signal: ModeId = args.signal.as_deref().ok_or_else(missing)?.parse()?;
            let geom = parse_geometry_exact(args.geom.as_deref().unwrap_or("1:1:1"), args.lz.as_deref())?;
            let process = ProcessSpec::merge_3to1_3d(geom.clone(), pump, partner, signal)?;
            let (c_f4, c_ffdual, m_total, resonant, mismatch, exact_zero, warning) =
                match matrix_element::<ExactValue>(&process) {
                    Ok(a) => {
                        let (x, y, z) = to_f64(&a, c);
                        (x, y, z, a.resonant, a.energy_mismatch, Some(a.is_exact_zero()), a.warning())
                    }
                    Err(Error::InexactGeometry) => {
                        let a = matrix_element::<f64>(&process)?;
                        let (x, y, z) = to_f64(&a, c);
                        (x, y, z, a.resonant, a.energy_mismatch, None, a.warning())
                    }
                    Err(e) => return Err(e),
                };
            let out = Merge3dOutput {
                process: "3to1-3d",
                pump,
                partner,
                signal,
                geometry: geom.lengths_f64(),
                resonant,
                energy_mismatch: mismatch,
                c_f4,
                c_ffdual,
                m_total,
                exact_zero,
                warning,
                planewave: args.planewave.then(|| planewave_consistency(&process, c)).transpose()?,
            };
            match format {
                Format::Json => print_json(&out),
                Format::Text => {
                    println!("2·{} + {} → {}  (resonant: {})", pump, partner, signal, resonant);
                    println!("M_total   {}", sig4(m_total));
                    if let Some(w) = &out.warning {
                        println!("warning: {w}");
                    }
                    Ok(())
                }
            }
        }
        ProcessKind::Coherent => {
            let geom = parse_geometry_exact(args.geom.as_deref().unwrap_or("1:1:r"), args.lz.as_deref())?;
            let (xi, eta) = (parse_complex(&args.xi)?, parse_complex(&args.eta)?);
            let m_coh = coherent_amplitude(xi, eta, &geom, c)?;
            let process = ProcessSpec::scatter_2to2(geom.clone(), ModeId::te(0, 1, 1), ModeId::tm(1, 1, 0), ModeId::tm(1, 3, 0))?;
            let m22 = matrix_element::<f64>(&process)?.total(c);
            let ratio = m_coh / (xi * xi * eta.conj() * (2f64.sqrt() * m22));
            let out = CoherentOutput {
                process: "coherent",
                xi: [xi.re, xi.im],
                eta: [eta.re, eta.im],
                geometry: geom.lengths_f64(),
                m_coh: [m_coh.re, m_coh.im],
                m_2to2: m22,
                ratio: [ratio.re, ratio.im],
            };
            match format {
                Format::Json => print_json(&out),
                Format::Text => {
                    println!("M_coh   {} + {}i", sig4(m_coh.re), sig4(m_coh.im));
                    println!("M_2to2  {}", sig4(m22));
                    println!("ratio   {} + {}i", sig4(ratio.re), sig4(ratio.im));
                    Ok(())
                }
            }
        }
    }
}

fn cmd_scan(args: &ScanArgs, format: Format) -> Result<()> {
    if args.family != "1:1:r" {
        return Err(Error::Config(format!("unsupported family `{}`; the scan uses 1:1:r", args.family)));
    }
    let hits: Vec<ResonanceHit> = match &args.triple {
        Some(t) => {
            let m = parse_modes(t, 3)?;
            match aspect_ratio_for_resonance(&m[0], &m[1], &m[2])? {
                Resonance::Roots(roots) => roots
                    .into_iter()
                    .filter(|r| (args.r_min..=args.r_max).contains(r))
                    .map(|r| ResonanceHit {
                        pump: m[0],
                        sig1: m[1],
                        sig2: m[2],
                        r,
                        residual: cavity_eh::resonance::resonance_residual(&m[0], &m[1], &m[2], 1.0, r).abs(),
                    })
                    .collect(),
                Resonance::NoRoot => Vec::new(),
                Resonance::Degenerate => {
                    return Err(Error::IncompatibleModes(format!("{t}: the condition holds for every r")));
                }
            }
        }
        None => {
            if args.max_index > 4 {
                eprintln!("warning: about half of all triples resonate; max-index {} produces a very large list", args.max_index);
            }
            scan_resonances(args.max_index, (args.r_min, args.r_max))?
        }
    };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&hits).map_err(|e| Error::Parse(e.to_string()))? + "\n",
        Format::Text => {
            let mut s = format!("{:<10} {:<10} {:<10} {:>10} {:>10}\n", "pump", "sig1", "sig2", "r", "residual");
            for h in &hits {
                s += &format!(
                    "{:<10} {:<10} {:<10} {:>10} {:>10}\n",
                    h.pump.to_string(),
                    h.sig1.to_string(),
                    h.sig2.to_string(),
                    sig4(h.r),
                    sig4(h.residual)
                );
            }
            s
        }
    };
    match &args.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            eprintln!("{} hits written to {}", hits.len(), path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn print_report_text(r: &ExperimentReport) {
    println!("P_2to2        {}", sig4(r.p_2to2));
    println!("N_s           {}", sig4(r.n_s));
    println!("P_s           {} eV² ({} W)", sig4(r.p_s), sig4(r.p_s_watts));
    println!("t             {} s", sig4_opt(r.t_seconds));
    println!("ω_s           {} eV (quoted {} eV → t = {} s)", sig4(r.omega_s_ev), sig4(r.omega_s_quoted_ev), sig4_opt(r.t_seconds_quoted_omega_s));
    println!("quoted t      {} s", sig4(r.t_seconds_quoted));
    println!("G1², G̃1²      {}, {}", sig4(r.g1_sq), sig4(r.g1_tilde_sq));
    if let Some(n) = &r.note {
        println!("note: {n}");
    }
}

fn cmd_experiment(args: &ExperimentArgs, format: Format) -> Result<()> {
    let c = UnitConstants::codata();
    let file = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            ExperimentInputs::from_json(&text)?
        }
        None => ExperimentInputs::default(),
    };
    let cfg = file.overlay(args.inputs()).resolve(&c)?;
    let report = experiment_report(&cfg, &c)?;
    match format {
        Format::Json => print_json(&report),
        Format::Text => {
            print_report_text(&report);
            Ok(())
        }
    }
}

fn cmd_verify(format: Format) -> Result<bool> {
    let checks: Vec<Check> = run_checks();
    let ok = checks.iter().all(|c| c.passed);
    match format {
        Format::Json => print_json(&checks)?,
        Format::Text => {
            for c in &checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
        }
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Modes(a) => cmd_modes(a, cli.format).map(|_| true),
        Command::Amplitude(a) => cmd_amplitude(a, cli.format).map(|_| true),
        Command::ResonanceScan(a) => cmd_scan(a, cli.format).map(|_| true),
        Command::Experiment(a) => cmd_experiment(a, cli.format).map(|_| true),
        Command::Verify => cmd_verify(cli.format),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
