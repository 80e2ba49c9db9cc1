use cavity_eh::amplitudes::{coherent_amplitude, m22_closed_form, matrix_element, Couplings, ProcessSpec, ProcessTag};
use cavity_eh::experiment::resonant_r;
use cavity_eh::mode_basis::{CavityGeometry, ModeId};
use cavity_eh::wick::{coherent_enhancement, ExternalState, Normalization};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LZ: f64 = 0.7;

fn setup() -> (CavityGeometry, Couplings, f64) {
    let r = resonant_r();
    let g = CavityGeometry::square_base(r, LZ).unwrap();
    let c = Couplings::new(2.5, 1.75);
    (g, c, m22_closed_form(r, LZ, c))
}

fn random_pairs(n: usize) -> Vec<(Complex64, Complex64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut z = || Complex64::from_polar(rng.gen_range(0.05..3.0), rng.gen_range(-3.2..3.2));
    (0..n).map(|_| (z(), z())).collect()
}

#[test]
fn coherent_amplitude_is_enhanced_fock_amplitude() {
    let (g, c, m22) = setup();
    for (xi, eta) in random_pairs(50) {
        let got = coherent_amplitude(xi, eta, &g, c).unwrap();
        let want = 2f64.sqrt() * xi * xi * eta.conj() * m22;
        assert!((got - want).norm() <= 1e-12 * want.norm(), "ξ={xi} η={eta}: {got} vs {want}");
    }
}

#[test]
fn squared_coherent_amplitude_carries_bose_factor() {
    let (g, c, m22) = setup();
    for (xi, eta) in random_pairs(50) {
        let got = coherent_amplitude(xi, eta, &g, c).unwrap().norm_sqr();
        let (n1, n2) = (xi.norm_sqr(), eta.norm_sqr());
        let want = 2.0 * n1 * n1 * n2 * m22 * m22;
        assert!((got - want).abs() <= 1e-12 * want, "{got} vs {want}");
    }
}

#[test]
fn enhancement_factor_of_the_state() {
    let (g, _, _) = setup();
    let (xi, eta) = (Complex64::new(0.3, -1.2), Complex64::new(-0.7, 0.4));
    let p = ProcessSpec::coherent_minus(g, ModeId::te(0, 1, 1), ModeId::tm(1, 1, 0), ModeId::tm(1, 3, 0), xi, eta).unwrap();
    let want = 2f64.sqrt() * xi * xi * eta.conj();
    assert!((coherent_enhancement(p.state()) - want).norm() < 1e-14);
}

#[test]
fn bare_operators_double_the_fock_pump_amplitude_squared() {
    let (g, c, _) = setup();
    let legs = |norm| {
        let st = ExternalState::from_quanta(
            &[ModeId::te(0, 1, 1), ModeId::te(0, 1, 1)],
            &[ModeId::tm(1, 1, 0), ModeId::tm(1, 3, 0)],
            norm,
        )
        .unwrap();
        let p = ProcessSpec::new(g.clone(), st, ProcessTag::Scatter2to2).unwrap();
        matrix_element::<f64>(&p).unwrap().total(c)
    };
    let (fock, bare) = (legs(Normalization::Fock), legs(Normalization::BareOperators));
    assert!((bare / fock - 2f64.sqrt()).abs() < 1e-12, "{bare} / {fock}");
}
