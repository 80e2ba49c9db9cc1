use cavity_eh::amplitudes::{g1_squared, g1_tilde_squared};
use cavity_eh::experiment::{
    convert_units, mean_signal_quanta, measurement_time, probability_2to2, resonant_r, ExperimentConfig, Pump, Quantity,
    Unit, UnitConstants,
};
use cavity_eh::Error;
use proptest::prelude::*;

fn consts() -> UnitConstants {
    UnitConstants::codata()
}

fn seconds(cfg: &ExperimentConfig) -> f64 {
    measurement_time(cfg).unwrap().time.unwrap().in_unit(Unit::Second, &consts()).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn with_f0(mut cfg: ExperimentConfig, tesla: f64) -> ExperimentConfig {
    cfg.pump = Pump::Field(Quantity::from_unit(tesla, Unit::Tesla, &consts()));
    cfg
}

/// Benchmark inputs with `ω_s` pinned, so `L_z` enters only through the cavity.
fn pinned() -> ExperimentConfig {
    let c = consts();
    let mut cfg = ExperimentConfig::benchmark(&c);
    cfg.omega_s = Some(Quantity::from_unit(2.4e-6, Unit::Ev, &c));
    cfg
}

#[derive(Debug, Clone)]
struct Draw {
    lz_m: f64,
    f0_t: f64,
    q: f64,
    kappa_factor: f64,
    beta: f64,
    t_k: f64,
    snr: f64,
}

fn draw() -> impl Strategy<Value = Draw> {
    (-2.0f64..0.5, -3.0f64..1.0, 2.0f64..12.0, -2.0f64..2.0, -1.0f64..3.0, -2.0f64..2.0, 0.5f64..20.0).prop_map(
        |(lz, f0, q, k, beta, t, snr)| Draw {
            lz_m: 10f64.powf(lz),
            f0_t: 10f64.powf(f0),
            q: 10f64.powf(q),
            kappa_factor: 10f64.powf(k),
            beta,
            t_k: 10f64.powf(t),
            snr,
        },
    )
}

fn config(d: &Draw) -> ExperimentConfig {
    let c = consts();
    let mut cfg = ExperimentConfig::benchmark(&c);
    cfg.lz = Quantity::from_unit(d.lz_m, Unit::Meter, &c);
    cfg.pump = Pump::Field(Quantity::from_unit(d.f0_t, Unit::Tesla, &c));
    cfg.q = d.q;
    cfg.kappa = Quantity::new(c.kappa_eh() * d.kappa_factor, -4);
    cfg.beta = d.beta;
    cfg.temperature = Quantity::from_unit(d.t_k, Unit::Kelvin, &c);
    cfg.snr = d.snr;
    cfg
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn signal_quanta_paths_agree(d in draw()) {
        let n = mean_signal_quanta(&config(&d)).unwrap();
        let closed = n.via_closed_form.unwrap();
        prop_assert!(rel(n.via_occupations, closed) <= 1e-10, "{} vs {}", n.via_occupations, closed);
    }

    #[test]
    fn probability_matches_g1(d in draw()) {
        let cfg = config(&d);
        let p = probability_2to2(&cfg).unwrap().expect(0, "P").unwrap();
        let want = g1_squared(cfg.r, cfg.beta) * cfg.kappa.value.powi(2) * cfg.q.powi(2) / cfg.lz.value.powi(8);
        prop_assert!(rel(p, want) <= 1e-10, "{} vs {}", p, want);
    }

    #[test]
    fn time_matches_radiometer_formula(d in draw()) {
        let cfg = config(&d);
        let Pump::Field(f0) = cfg.pump else { unreachable!() };
        let omega_s = measurement_time(&cfg).unwrap().omega_s.value;
        let want = cfg.snr * cfg.temperature.value
            / (g1_tilde_squared(cfg.r, cfg.beta) * cfg.q * f0.value.powi(6) * cfg.lz.value.powi(3) * omega_s
                * cfg.kappa.value.powi(2));
        let t = measurement_time(&cfg).unwrap().time.unwrap().expect(-1, "t").unwrap();
        prop_assert!(rel(t, want) <= 1e-10, "{} vs {}", t, want);
    }

    #[test]
    fn time_is_monotone(d in draw(), bump in 1.01f64..3.0) {
        let base = config(&d);
        let t0 = seconds(&base);
        let w = measurement_time(&base).unwrap().omega_s.value;
        let tweak = |f: &dyn Fn(&mut ExperimentConfig)| -> f64 {
            let mut c = base.clone();
            f(&mut c);
            seconds(&c)
        };
        let faster = [
            tweak(&|c| c.q *= bump),
            tweak(&|c| c.kappa.value *= bump),
            tweak(&|c| c.lz.value *= bump),
            tweak(&|c| *c = with_f0(c.clone(), d.f0_t * bump)),
            tweak(&|c| c.omega_s = Some(Quantity::new(w * bump, 1))),
        ];
        let slower = [tweak(&|c| c.temperature.value *= bump), tweak(&|c| c.snr *= bump)];
        prop_assert!(faster.iter().all(|&t| t < t0), "{:?} vs {}", faster, t0);
        prop_assert!(slower.iter().all(|&t| t > t0), "{:?} vs {}", slower, t0);
    }
}

#[test]
fn time_scales_as_inverse_kappa_squared() {
    let base = pinned();
    let t0 = seconds(&base);
    for factor in [0.1, 0.5, 3.0, 17.0] {
        let mut cfg = base.clone();
        cfg.kappa.value *= factor;
        assert!(rel(seconds(&cfg), t0 / (factor * factor)) < 1e-12);
    }
}

#[test]
fn time_scales_as_inverse_q() {
    let base = pinned();
    let t0 = seconds(&base);
    for factor in [0.01, 0.5, 4.0] {
        let mut cfg = base.clone();
        cfg.q *= factor;
        assert!(rel(seconds(&cfg), t0 / factor) < 1e-12);
    }
}

#[test]
fn halving_f0_multiplies_time_by_64() {
    let base = pinned();
    assert!(rel(seconds(&with_f0(base.clone(), 0.05)), 64.0 * seconds(&base)) < 1e-12);
    assert!(rel(seconds(&with_f0(base.clone(), 0.3)), seconds(&base) / 729.0) < 1e-12);
}

#[test]
fn time_scales_as_inverse_lz_cubed_at_fixed_signal_frequency() {
    let base = pinned();
    let t0 = seconds(&base);
    for factor in [0.25, 2.0, 5.0] {
        let mut cfg = base.clone();
        cfg.lz.value *= factor;
        assert!(rel(seconds(&cfg), t0 / factor.powi(3)) < 1e-12);
    }
}

#[test]
fn doubling_q_quadruples_probability() {
    let base = pinned();
    let mut cfg = base.clone();
    cfg.q *= 2.0;
    let p = |c: &ExperimentConfig| probability_2to2(c).unwrap().value;
    assert!(rel(p(&cfg), 4.0 * p(&base)) < 1e-12);
}

#[test]
fn bracket_root_gives_zero_probability() {
    let c = consts();
    let r = resonant_r();
    let mut cfg = ExperimentConfig::benchmark(&c);
    let reference = probability_2to2(&cfg).unwrap().value;
    cfg.beta = (5.0 + 2.0 * 5f64.sqrt()) / ((1.0 + r * r).sqrt() + 2f64.sqrt() * r).powi(2);
    let p = probability_2to2(&cfg).unwrap().value;
    assert!(p <= 1e-24 * reference, "{p} vs {reference}");
}

#[test]
fn zero_field_gives_no_signal() {
    let cfg = with_f0(pinned(), 0.0);
    let n = mean_signal_quanta(&cfg).unwrap();
    assert_eq!(n.via_occupations, 0.0);
    assert!(measurement_time(&cfg).unwrap().time.is_none());
}

#[test]
fn reported_quantities_carry_their_dimensions() {
    let c = consts();
    let cfg = ExperimentConfig::benchmark(&c);
    cfg.validate().unwrap();
    assert_eq!(probability_2to2(&cfg).unwrap().dim, 0);
    let t = measurement_time(&cfg).unwrap();
    assert_eq!(t.signal_power.dim, 2);
    assert_eq!(t.omega_s.dim, 1);
    assert_eq!(t.time.unwrap().dim, -1);
    assert!(t.signal_power.in_unit(Unit::Watt, &c).is_ok());
    assert!(matches!(t.time.unwrap().in_unit(Unit::Watt, &c), Err(Error::IncompatibleUnits(..))));

    let mut wrong = cfg.clone();
    wrong.lz = Quantity::new(1.0, 1);
    assert!(wrong.validate().is_err());
    let mut wrong = cfg;
    wrong.pump = Pump::Field(Quantity::new(1.0, 1));
    assert!(probability_2to2(&wrong).is_err());
}

#[test]
fn unit_round_trips() {
    let c = consts();
    let groups: [&[Unit]; 4] = [
        &[Unit::Meter, Unit::Centimeter, Unit::Second, Unit::InvEv],
        &[Unit::Kelvin, Unit::Ev],
        &[Unit::Tesla, Unit::Ev2, Unit::Watt],
        &[Unit::Dimensionless],
    ];
    for group in groups {
        for &a in group {
            for &b in group {
                for v in [1e-7, 0.2, 3.0, 5e9] {
                    let there = convert_units(v, a, b, &c).unwrap();
                    let back = convert_units(there, b, a, &c).unwrap();
                    assert!(rel(back, v) < 1e-12, "{a} → {b}");
                }
            }
        }
    }
    assert!((convert_units(1.0, Unit::Tesla, Unit::Ev2, &c).unwrap() - 195.35).abs() < 0.01);
    let metre = convert_units(1.0, Unit::Meter, Unit::InvEv, &c).unwrap();
    assert!(rel(convert_units(0.2, Unit::Meter, Unit::InvEv, &c).unwrap(), 0.2 * metre) < 1e-15);
    assert!(convert_units(1.0, Unit::Meter, Unit::Kelvin, &c).is_err());
}
