//! Self-check suite behind the `verify` command: exact results against
//! quadrature and closed forms.

use num_complex::Complex64;
use serde::Serialize;

use crate::amplitudes::{
    coherent_amplitude, m22_closed_form, matrix_element, merge_3to1_term, merge_bracket_closed_form,
    planewave_consistency, scatter_2to2_components, BracketComponents, Couplings, ProcessSpec,
};
use crate::error::Result;
use crate::experiment::{convert_units, mean_signal_quanta, resonant_r, ExperimentConfig, Unit, UnitConstants};
use crate::mode_basis::{electric_profile, magnetic_profile, CavityGeometry, ModeId, Polarization};
use crate::resonance::{aspect_ratio_for_resonance, Resonance};
use crate::trig_algebra::{integrate_numeric, min_points, ExactValue, TrigFactor, TrigPoly, VectorTrigPoly};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match f() {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(e) => Check { name, passed: false, detail: format!("error: {e}") },
    }
}

fn all_polarizations() -> impl Iterator<Item = [Polarization; 4]> {
    use Polarization::{Y, Z};
    (0..16u32).map(|bits| [0, 1, 2, 3].map(|k| if bits >> k & 1 == 0 { Y } else { Z }))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn one_d_merges_vanish() -> Result<(bool, String)> {
    let g = CavityGeometry::rational([(3, 2), (1, 1), (1, 1)])?;
    let mut count = 0;
    for n in 1..=3 {
        for p in 1..=3 {
            for pols in all_polarizations() {
                let a = matrix_element::<ExactValue>(&ProcessSpec::merge_3to1_1d(g.clone(), n, p, 2 * n + p, pols)?)?;
                if !(a.c_f4.is_zero() && a.c_ffdual.is_zero()) {
                    return Ok((false, format!("n={n} p={p} {pols:?}: c_F4 = {}, c_FFdual = {}", a.c_f4, a.c_ffdual)));
                }
                count += 1;
            }
        }
    }
    Ok((true, format!("{count} channels are exact zeros")))
}

fn slab_integral() -> Result<(bool, String)> {
    let g = CavityGeometry::rational([(3, 2), (1, 1), (1, 1)])?;
    let s1 = TrigPoly::<ExactValue>::term(ExactValue::one(), [TrigFactor::sin(1), TrigFactor::ONE, TrigFactor::ONE]);
    let s3 = TrigPoly::term(ExactValue::one(), [TrigFactor::sin(3), TrigFactor::ONE, TrigFactor::ONE]);
    let p = s3.multiply(&s1).multiply(&s1).multiply(&s1);
    let exact = p.integrate_box(&g)?;
    let expected = ExactValue::ratio(-3, 16);
    let numeric = integrate_numeric(&p, &g, min_points(&p) + 4)?;
    let ok = exact == expected && (numeric - expected.to_f64()).abs() <= 1e-10;
    Ok((ok, format!("exact {exact}, quadrature {numeric:.15}, expected −L/8 = −3/16")))
}

fn merge_brackets() -> Result<(bool, String)> {
    let g = CavityGeometry::rational([(5, 3), (1, 2), (2, 1)])?;
    for n in 1..=3 {
        for p in 1..=3 {
            for pols in all_polarizations() {
                let b = merge_3to1_term(&g, n, p, 2 * n + p, pols)?;
                let c = merge_bracket_closed_form(&g, n, p, pols)?;
                let ok = b.ee == c && b.bb == c && b.b2e2 == ExactValue::integer(-2) * c.clone() && b.eb.is_zero();
                if !ok {
                    return Ok((false, format!("n={n} p={p} {pols:?}: ee={} bb={} b2e2={} closed={c}", b.ee, b.bb, b.b2e2)));
                }
            }
        }
    }
    Ok((true, "ee = bb = −½·b2e2 = closed form, eb = 0, for n, p ≤ 3".into()))
}

type Profile = VectorTrigPoly<ExactValue>;

fn quartic(u: &Profile, v: &Profile, w: &Profile, x: &Profile) -> Result<TrigPoly<ExactValue>> {
    Ok(u.dot(v)?.multiply(&w.dot(x)?))
}

fn golden_integrals() -> Result<(bool, String)> {
    let g = CavityGeometry::rational([(2, 1), (3, 1), (5, 1)])?;
    let (te, t1, t3) = (ModeId::te(0, 1, 1), ModeId::tm(1, 1, 0), ModeId::tm(1, 3, 0));
    let a = |m| electric_profile::<ExactValue>(&g, &m);
    let b = |m| magnetic_profile::<ExactValue>(&g, &m);
    let (ae, a1, a3) = (a(te)?, a(t1)?, a(t3)?);
    let (be, b1, b3) = (b(te)?, b(t1)?, b(t3)?);
    let v = g.volume::<ExactValue>()?;
    let half_v = v * ExactValue::ratio(1, 2);
    let inv2 = |l: i64| ExactValue::ratio(1, l * l);
    let (x2, y2, z2) = (inv2(2), inv2(3), inv2(5));
    let pi2 = ExactValue::pi_power(2);
    let pi4 = ExactValue::pi_power(4);
    let cases = [
        (quartic(&a3, &a1, &ae, &ae)?, -half_v.clone()),
        (quartic(&a3, &ae, &a1, &ae)?, ExactValue::zero()),
        (
            quartic(&b3, &b1, &be, &be)?,
            half_v.clone() * pi4.clone() * (x2.clone() + ExactValue::integer(3) * y2.clone()) * (y2.clone() - z2.clone()),
        ),
        (quartic(&b3, &be, &b1, &be)?, -half_v.clone() * pi4 * x2.clone() * z2.clone()),
        (
            quartic(&b3, &b1, &ae, &ae)?,
            -half_v.clone() * pi2.clone() * (x2 + ExactValue::integer(3) * y2.clone()),
        ),
        (quartic(&be, &be, &a3, &a1)?, half_v.clone() * pi2.clone() * (y2.clone() - z2)),
        (quartic(&b3, &ae, &b1, &ae)?, ExactValue::integer(-3) * half_v.clone() * pi2.clone() * y2.clone()),
        (quartic(&be, &a3, &be, &a1)?, half_v.clone() * pi2.clone() * y2.clone()),
        (quartic(&b3, &ae, &be, &a1)?, ExactValue::integer(3) * half_v * pi2 * y2),
        (quartic(&b3, &be, &a1, &ae)?, ExactValue::zero()),
    ];
    for (k, (p, expected)) in cases.iter().enumerate() {
        let exact = p.integrate_box(&g)?;
        let numeric = integrate_numeric(p, &g, min_points(p) + 2)?;
        let scale = expected.to_f64().abs().max(1.0);
        if &exact != expected || (numeric - expected.to_f64()).abs() > 1e-8 * scale {
            return Ok((false, format!("integral {}: exact {exact}, quadrature {numeric}, expected {expected}", k + 1)));
        }
    }
    Ok((true, "ten integrals exact and within 1e-8 by quadrature on a 2×3×5 box".into()))
}

fn scattering_components() -> Result<(bool, String)> {
    let c = Couplings::new(1.0, 0.6);
    let mut worst: f64 = 0.0;
    for r in [0.3, resonant_r(), 1.4] {
        let g = CavityGeometry::square_base(r, 0.8)?;
        let p = ProcessSpec::scatter_2to2(g.clone(), ModeId::te(0, 1, 1), ModeId::tm(1, 1, 0), ModeId::tm(1, 3, 0))?;
        let e = BracketComponents::from_engine(&p, c)?;
        let k = scatter_2to2_components(&g, c)?;
        for (x, y) in [(e.e4, k.e4), (e.b4, k.b4), (e.b2e2, k.b2e2), (e.be2, k.be2)] {
            worst = worst.max(rel(x, y));
        }
    }
    Ok((worst <= 1e-12, format!("largest relative deviation {worst:.2e}")))
}

fn resonant_m22() -> Result<(bool, String)> {
    let r = resonant_r();
    let g = CavityGeometry::square_base(r, 1.0)?;
    let p = ProcessSpec::scatter_2to2(g, ModeId::te(0, 1, 1), ModeId::tm(1, 1, 0), ModeId::tm(1, 3, 0))?;
    let c = Couplings::unit_qed();
    let engine = matrix_element::<f64>(&p)?.total(c);
    let closed = m22_closed_form(r, 1.0, c);
    let ok = rel(engine, closed) <= 1e-12 && rel(closed, -10.3745) <= 1e-3;
    Ok((ok, format!("engine {engine:.10}, closed form {closed:.10} (κ/L_z⁵)")))
}

fn resonance_solver() -> Result<(bool, String)> {
    let res = aspect_ratio_for_resonance(&ModeId::te(0, 1, 1), &ModeId::tm(1, 1, 0), &ModeId::tm(1, 3, 0))?;
    Ok(match res {
        Resonance::Roots(r) if r.len() == 1 => {
            let d = (r[0] * r[0] + 2.0 - 5f64.sqrt()).abs();
            (d <= 1e-12, format!("r = {:.15}, |r² + 2 − √5| = {d:.1e}", r[0]))
        }
        other => (false, format!("{other:?}")),
    })
}

fn signal_quanta_paths() -> Result<(bool, String)> {
    let c = UnitConstants::codata();
    let q = mean_signal_quanta(&ExperimentConfig::benchmark(&c))?;
    let closed = q.via_closed_form.unwrap_or(f64::NAN);
    let d = rel(q.via_occupations, closed);
    Ok((d <= 1e-10, format!("⟨N_s⟩ = {:.6e} vs {closed:.6e}, relative {d:.1e}", q.via_occupations)))
}

fn coherent_reduction() -> Result<(bool, String)> {
    let g = CavityGeometry::square_base(resonant_r(), 1.0)?;
    let c = Couplings::unit_qed();
    let m = m22_closed_form(resonant_r(), 1.0, c);
    let mut worst: f64 = 0.0;
    for (xi, eta) in [(Complex64::new(0.7, 0.2), Complex64::new(-0.3, 1.1)), (Complex64::new(1.5, -0.4), Complex64::new(0.2, 0.0))] {
        let got = coherent_amplitude(xi, eta, &g, c)?;
        let want = xi * xi * eta.conj() * (2f64.sqrt() * m);
        worst = worst.max((got - want).norm() / want.norm());
    }
    Ok((worst <= 1e-12, format!("largest relative deviation {worst:.2e}")))
}

fn plane_wave_survivors() -> Result<(bool, String)> {
    let g = CavityGeometry::unit_cube();
    let p = ProcessSpec::merge_3to1_1d(g, 1, 1, 3, [Polarization::Y; 4])?;
    let r = planewave_consistency(&p, Couplings::unit_qed())?;
    let ok = r.total_tuples == 16 && r.survivors.len() == 2 && r.all_collinear && r.consistent;
    Ok((ok, format!("{} of {} tuples survive, collinear: {}", r.survivors.len(), r.total_tuples, r.all_collinear)))
}

fn unit_round_trips() -> Result<(bool, String)> {
    let c = UnitConstants::codata();
    let mut worst: f64 = 0.0;
    for (u, nat) in [(Unit::Meter, Unit::InvEv), (Unit::Second, Unit::InvEv), (Unit::Tesla, Unit::Ev2), (Unit::Kelvin, Unit::Ev)] {
        let back = convert_units(convert_units(1.234, u, nat, &c)?, nat, u, &c)?;
        worst = worst.max(rel(back, 1.234));
    }
    let t = convert_units(1.0, Unit::Tesla, Unit::Ev2, &c)?;
    Ok((worst <= 1e-12 && (t - 195.35).abs() < 0.01, format!("1 T = {t:.4} eV², round-trip error {worst:.1e}")))
}

/// Runs every check; a failure never aborts the rest.
pub fn run_checks() -> Vec<Check> {
    vec![
        check("1-D 3→1 merges are exact zeros", one_d_merges_vanish),
        check("∫ sin(3kx) sin³(kx) dx = −L/8", slab_integral),
        check("3→1 bracket formula", merge_brackets),
        check("2→2 overlap integrals", golden_integrals),
        check("2→2 components: engine vs closed form", scattering_components),
        check("resonant M₂→₂", resonant_m22),
        check("resonant aspect ratio", resonance_solver),
        check("⟨N_s⟩ by occupations vs G̃₁²", signal_quanta_paths),
        check("coherent reduction", coherent_reduction),
        check("1-D plane-wave survivors", plane_wave_survivors),
        check("unit round trips", unit_round_trips),
    ]
}
