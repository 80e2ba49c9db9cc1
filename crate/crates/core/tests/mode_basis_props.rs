use cavity_eh::mode_basis::{
    electric_profile, magnetic_profile, mode_frequency, validate_mode, CavityGeometry, ModeId,
};
use cavity_eh::trig_algebra::{integrate_numeric, min_points, ExactValue, TrigFactor, TrigPoly};
use proptest::prelude::*;

fn box_strategy() -> impl Strategy<Value = CavityGeometry> {
    [(1i64..6, 1i64..4), (1i64..6, 1i64..4), (1i64..6, 1i64..4)]
        .prop_map(|s| CavityGeometry::rational([s[0], s[1], s[2]]).unwrap())
}

fn mode_strategy() -> impl Strategy<Value = ModeId> {
    (any::<bool>(), 0u32..4, 0u32..4, 0u32..4)
        .prop_map(|(te, n, p, q)| if te { ModeId::te(n, p, q) } else { ModeId::tm(n, p, q) })
        .prop_filter("valid mode", |m| validate_mode(m).is_ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn profiles_are_orthonormal(g in box_strategy(), a in mode_strategy(), b in mode_strategy()) {
        let pa = electric_profile::<ExactValue>(&g, &a).unwrap();
        let pb = electric_profile::<ExactValue>(&g, &b).unwrap();
        let overlap = pa.dot(&pb).unwrap().integrate_box(&g).unwrap();
        let expected = if a == b { g.volume::<ExactValue>().unwrap() } else { ExactValue::zero() };
        prop_assert_eq!(overlap, expected, "{} · {}", a, b);
    }

    #[test]
    fn profiles_are_divergence_free(g in box_strategy(), m in mode_strategy()) {
        let p = electric_profile::<ExactValue>(&g, &m).unwrap();
        prop_assert!(p.divergence(&g).unwrap().is_zero());
    }

    #[test]
    fn rayleigh_identity(g in box_strategy(), m in mode_strategy()) {
        let b = magnetic_profile::<ExactValue>(&g, &m).unwrap();
        let w = mode_frequency::<ExactValue>(&g, &m).unwrap();
        let lhs = b.dot(&b).unwrap().integrate_box(&g).unwrap();
        prop_assert_eq!(lhs, g.volume::<ExactValue>().unwrap() * w.clone() * w);
    }

    #[test]
    fn tangential_field_vanishes_on_walls(
        g in box_strategy(),
        m in mode_strategy(),
        wall in 0usize..6,
        u in 0.0f64..1.0,
        v in 0.0f64..1.0,
    ) {
        let p = electric_profile::<f64>(&g, &m).unwrap();
        let lengths = g.lengths_f64();
        let axis = wall / 2;
        let (t1, t2) = ((axis + 1) % 3, (axis + 2) % 3);
        let mut point = [0.0; 3];
        point[axis] = if wall % 2 == 0 { 0.0 } else { lengths[axis] };
        point[t1] = u * lengths[t1];
        point[t2] = v * lengths[t2];
        let e = p.eval(point, lengths);
        prop_assert!(e[t1].abs() < 1e-12 && e[t2].abs() < 1e-12, "{} at {:?}: {:?}", m, point, e);
    }
}

fn factor_strategy() -> impl Strategy<Value = TrigFactor> {
    (0u8..3, 0u32..7).prop_map(|(k, m)| match k {
        0 => TrigFactor::ONE,
        1 => TrigFactor::sin(m),
        _ => TrigFactor::cos(m),
    })
}

fn poly_strategy() -> impl Strategy<Value = TrigPoly<ExactValue>> {
    prop::collection::vec(((-9i64..10, 1i64..5), [factor_strategy(), factor_strategy(), factor_strategy()]), 1..4)
        .prop_map(|terms| {
            terms.into_iter().fold(TrigPoly::zero(), |acc, ((num, den), key)| {
                acc.add(&TrigPoly::term(ExactValue::ratio(num, den), key))
            })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn exact_integral_matches_quadrature(g in box_strategy(), a in poly_strategy(), b in poly_strategy()) {
        let p = a.multiply(&b);
        let exact = p.integrate_box(&g).unwrap().to_f64();
        let numeric = integrate_numeric(&p, &g, min_points(&p) + 3).unwrap();
        let scale: f64 = p.terms().map(|(_, c)| c.to_f64().abs()).sum::<f64>() * g.volume_f64();
        prop_assert!((exact - numeric).abs() <= 1e-10 * scale.max(1.0), "{} vs {}", exact, numeric);
    }
}

#[test]
fn quadrature_below_the_bound_is_refused() {
    let g = CavityGeometry::unit_cube();
    let p = TrigPoly::<ExactValue>::term(ExactValue::one(), [TrigFactor::sin(5), TrigFactor::ONE, TrigFactor::ONE]);
    assert!(integrate_numeric(&p, &g, min_points(&p) - 1).is_err());
}

#[test]
fn te_and_tm_with_equal_indices_are_orthogonal() {
    let g = CavityGeometry::rational([(2, 1), (3, 1), (5, 1)]).unwrap();
    let te = electric_profile::<ExactValue>(&g, &ModeId::te(1, 1, 1)).unwrap();
    let tm = electric_profile::<ExactValue>(&g, &ModeId::tm(1, 1, 1)).unwrap();
    assert!(te.dot(&tm).unwrap().integrate_box(&g).unwrap().is_zero());
    assert_ne!(te, tm);
}
