//! Resonant aspect ratios for `2ω_pump = ω_sig1 + ω_sig2`.
//!
//! Boxes are taken in the `ρ:1:r` family with `L_z = 1`, so `L_y = 1/r`,
//! `L_x = ρ/r` and `ω/π = √((n r/ρ)² + (p r)² + q²)`. The scanner fixes `ρ = 1`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mode_basis::{enumerate_modes, validate_mode, ModeId};

/// Bracketing grid: log-spaced points on `[R_MIN, R_MAX]`.
pub const GRID_POINTS: usize = 10_000;
pub const R_MIN: f64 = 1e-3;
pub const R_MAX: f64 = 1e2;
pub const MAX_SCAN_INDEX: u32 = 8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResonanceHit {
    pub pump: ModeId,
    pub sig1: ModeId,
    pub sig2: ModeId,
    pub r: f64,
    /// `|2ω_p − ω_1 − ω_2|` at `r`, with `L_z = 1`.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Resonance {
    Roots(Vec<f64>),
    NoRoot,
    /// The condition holds for every `r` (e.g. identical modes); not a hit.
    Degenerate,
}

fn omega(mode: &ModeId, x_over_y: f64, r: f64) -> f64 {
    let [n, p, q] = mode.indices().map(f64::from);
    PI * ((n * r / x_over_y).powi(2) + (p * r).powi(2) + q * q).sqrt()
}

/// `2ω_p − ω_1 − ω_2` in the `ρ:1:r` family with `L_z = 1`.
pub fn resonance_residual(pump: &ModeId, sig1: &ModeId, sig2: &ModeId, x_over_y: f64, r: f64) -> f64 {
    2.0 * omega(pump, x_over_y, r) - (omega(sig1, x_over_y, r) + omega(sig2, x_over_y, r))
}

fn check_modes(modes: [&ModeId; 3]) -> Result<()> {
    for m in modes {
        validate_mode(m)?;
        if m.is_one_d() {
            return Err(Error::IncompatibleModes(format!("{m} is a slab mode; the scan uses box modes")));
        }
    }
    Ok(())
}

fn grid(r_range: (f64, f64)) -> Vec<f64> {
    let (lo, hi) = (r_range.0.max(R_MIN), r_range.1.min(R_MAX));
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
        return Vec::new();
    }
    let mut pts = vec![lo];
    pts.extend((0..GRID_POINTS).map(grid_point).filter(|&r| r > lo && r < hi));
    pts.push(hi);
    pts
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..200 {
        if b - a <= 1e-14 * b {
            break;
        }
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    if f(a).abs() <= f(b).abs() {
        a
    } else {
        b
    }
}

/// Roots of the resonance condition in the `1:1:r` family on `[10⁻³, 10²]`.
pub fn aspect_ratio_for_resonance(pump: &ModeId, sig1: &ModeId, sig2: &ModeId) -> Result<Resonance> {
    aspect_ratio_for_resonance_in(pump, sig1, sig2, 1.0, (R_MIN, R_MAX))
}

/// Roots in the `ρ:1:r` family by sign changes on the log grid, each refined
/// by bisection to relative `10⁻¹⁴`.
pub fn aspect_ratio_for_resonance_in(
    pump: &ModeId,
    sig1: &ModeId,
    sig2: &ModeId,
    x_over_y: f64,
    r_range: (f64, f64),
) -> Result<Resonance> {
    check_modes([pump, sig1, sig2])?;
    if !(x_over_y.is_finite() && x_over_y > 0.0) {
        return Err(Error::InvalidGeometry(format!("ρ must be positive, got {x_over_y}")));
    }
    let f = |r: f64| resonance_residual(pump, sig1, sig2, x_over_y, r);
    let identical = pump == sig1 && pump == sig2;
    let flat = [0.01, 1.0, 50.0].iter().all(|&r| f(r).abs() <= 1e-13 * omega(pump, x_over_y, r));
    if identical || flat {
        return Ok(Resonance::Degenerate);
    }
    let pts = grid(r_range);
    let values: Vec<f64> = pts.iter().map(|&r| f(r)).collect();
    let mut roots = Vec::new();
    for i in 0..pts.len() {
        if values[i] == 0.0 {
            roots.push(pts[i]);
        } else if i + 1 < pts.len() && values[i] * values[i + 1] < 0.0 {
            roots.push(bisect(f, pts[i], pts[i + 1]));
        }
    }
    Ok(if roots.is_empty() { Resonance::NoRoot } else { Resonance::Roots(roots) })
}

/// `(a, c)` with `ω²/π² = a·r² + c` in the `ρ:1:r` family.
fn quadratic_form(m: &ModeId, x_over_y: f64) -> (f64, f64) {
    let [n, p, q] = m.indices().map(f64::from);
    ((n / x_over_y).powi(2) + p * p, q * q)
}

/// Candidate roots of `2√U = √V + √W` with `U = a_p x + c_p` etc. and
/// `x = r²`. Squaring twice leaves `D² = 4VW` with `D = 4U − V − W`, a
/// quadratic in `x`; every real root of the original condition is among its
/// positive roots with `D ≥ 0`.
fn candidate_roots(p: (f64, f64), s1: (f64, f64), s2: (f64, f64)) -> Vec<f64> {
    let (d1, d0) = (4.0 * p.0 - (s1.0 + s2.0), 4.0 * p.1 - (s1.1 + s2.1));
    let qa = d1 * d1 - 4.0 * s1.0 * s2.0;
    let qb = 2.0 * d1 * d0 - 4.0 * (s1.0 * s2.1 + s2.0 * s1.1);
    let qc = d0 * d0 - 4.0 * s1.1 * s2.1;
    let xs = if qa == 0.0 {
        if qb == 0.0 {
            return Vec::new();
        }
        vec![-qc / qb]
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            return Vec::new();
        }
        // cancellation-free pair of roots
        let t = -0.5 * (qb + qb.signum() * disc.sqrt());
        if t == 0.0 {
            vec![0.0]
        } else {
            vec![t / qa, qc / t]
        }
    };
    xs.into_iter()
        .filter(|&x| x > 0.0 && d1 * x + d0 >= -1e-9 * (d1.abs() * x + d0.abs()))
        .map(f64::sqrt)
        .collect()
}

fn grid_point(i: usize) -> f64 {
    let step = (R_MAX / R_MIN).ln() / (GRID_POINTS - 1) as f64;
    R_MIN * (step * i as f64).exp()
}

/// The bracketing grid restricted to a few cells around `r`.
fn grid_window(r: f64, lo: f64, hi: f64) -> Vec<f64> {
    let step = (R_MAX / R_MIN).ln() / (GRID_POINTS - 1) as f64;
    let centre = ((r / R_MIN).ln() / step).round().clamp(0.0, (GRID_POINTS - 1) as f64) as usize;
    let first = centre.saturating_sub(2);
    let last = (centre + 2).min(GRID_POINTS - 1);
    let mut pts: Vec<f64> = (first..=last).map(grid_point).filter(|&g| g > lo && g < hi).collect();
    if first == 0 || lo >= grid_point(first) {
        pts.insert(0, lo);
    }
    if last == GRID_POINTS - 1 || hi <= grid_point(last) {
        pts.push(hi);
    }
    pts.retain(|&g| g >= lo && g <= hi);
    pts
}

/// Same result as [`aspect_ratio_for_resonance_in`], evaluating the grid
/// only next to the algebraic candidates.
fn local_roots(pump: &ModeId, sig1: &ModeId, sig2: &ModeId, r_range: (f64, f64)) -> Vec<f64> {
    let (lo, hi) = (r_range.0.max(R_MIN), r_range.1.min(R_MAX));
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
        return Vec::new();
    }
    let f = |r: f64| resonance_residual(pump, sig1, sig2, 1.0, r);
    let forms = [pump, sig1, sig2].map(|m| quadratic_form(m, 1.0));
    let mut brackets: BTreeMap<u64, f64> = BTreeMap::new();
    for r in candidate_roots(forms[0], forms[1], forms[2]) {
        if r < lo * (1.0 - 1e-3) || r > hi * (1.0 + 1e-3) {
            continue;
        }
        let pts = grid_window(r, lo, hi);
        for i in 0..pts.len() {
            let fa = f(pts[i]);
            if fa == 0.0 {
                brackets.insert(pts[i].to_bits(), pts[i]);
            } else if i + 1 < pts.len() && fa * f(pts[i + 1]) < 0.0 {
                brackets.entry(pts[i].to_bits()).or_insert_with(|| bisect(f, pts[i], pts[i + 1]));
            }
        }
    }
    brackets.into_values().collect()
}

/// Modes sharing `(n² + p², q)` have equal frequencies on the square base.
type FrequencyClass = (u32, u32);

fn class_of(m: &ModeId) -> FrequencyClass {
    let [n, p, q] = m.indices();
    (n * n + p * p, q)
}

/// All non-degenerate resonant triples with indices up to `max_index`,
/// signals unordered, sorted by `r` and then by labels.
pub fn scan_resonances(max_index: u32, r_range: (f64, f64)) -> Result<Vec<ResonanceHit>> {
    if max_index > MAX_SCAN_INDEX {
        return Err(Error::Config(format!("max index {max_index} exceeds {MAX_SCAN_INDEX}")));
    }
    if r_range.0.partial_cmp(&r_range.1) != Some(std::cmp::Ordering::Less) {
        return Ok(Vec::new());
    }
    let mut classes: BTreeMap<FrequencyClass, Vec<ModeId>> = BTreeMap::new();
    for m in enumerate_modes(max_index) {
        classes.entry(class_of(&m)).or_default().push(m);
    }
    let keys: Vec<FrequencyClass> = classes.keys().copied().collect();

    let triples: Vec<(FrequencyClass, FrequencyClass, FrequencyClass)> = keys
        .iter()
        .flat_map(|&p| {
            let keys = &keys;
            keys.iter().enumerate().flat_map(move |(i, &s1)| keys[i..].iter().map(move |&s2| (p, s1, s2)))
        })
        .collect();

    let solved: Vec<Vec<ResonanceHit>> = triples
        .par_iter()
        .map(|&(p, s1, s2)| {
            let rep = |c| classes[&c][0];
            let (rp, r1, r2) = (rep(p), rep(s1), rep(s2));
            let flat = [0.01, 1.0, 50.0].iter().all(|&r| resonance_residual(&rp, &r1, &r2, 1.0, r).abs() <= 1e-13 * omega(&rp, 1.0, r));
            if flat {
                return Vec::new();
            }
            let roots = local_roots(&rp, &r1, &r2, r_range);
            if roots.is_empty() {
                return Vec::new();
            }
            let mut hits = Vec::new();
            for pump in &classes[&p] {
                for a in &classes[&s1] {
                    for b in &classes[&s2] {
                        let (sig1, sig2) = if a <= b { (*a, *b) } else { (*b, *a) };
                        if pump == &sig1 && pump == &sig2 {
                            continue;
                        }
                        for &r in &roots {
                            let residual = resonance_residual(pump, &sig1, &sig2, 1.0, r).abs();
                            hits.push(ResonanceHit { pump: *pump, sig1, sig2, r, residual });
                        }
                    }
                }
            }
            hits
        })
        .collect();

    let mut hits: Vec<ResonanceHit> = solved.into_iter().flatten().collect();
    hits.sort_by(|a, b| a.r.total_cmp(&b.r).then_with(|| (a.pump, a.sig1, a.sig2).cmp(&(b.pump, b.sig1, b.sig2))));
    hits.dedup_by(|a, b| (a.pump, a.sig1, a.sig2) == (b.pump, b.sig1, b.sig2) && a.r == b.r);
    Ok(hits)
}
