use std::collections::BTreeMap;
use std::fmt;

use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::mode_basis::{Axis, CavityGeometry};

/// Largest harmonic a trigonometric factor may carry on one axis.
pub const MAX_HARMONIC: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TrigKind {
    Const,
    Sin,
    Cos,
}

/// `sin(πmx/L)`, `cos(πmx/L)` or `1` along one axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TrigFactor {
    pub kind: TrigKind,
    pub harmonic: u32,
}

impl TrigFactor {
    pub const ONE: TrigFactor = TrigFactor { kind: TrigKind::Const, harmonic: 0 };

    pub fn sin(m: u32) -> Self {
        TrigFactor { kind: TrigKind::Sin, harmonic: m }
    }

    pub fn cos(m: u32) -> Self {
        TrigFactor { kind: TrigKind::Cos, harmonic: m }
    }

    /// Canonical form; `None` for the zero factor `sin(0)`.
    fn canonical(self) -> Option<Self> {
        match (self.kind, self.harmonic) {
            (TrigKind::Const, _) | (TrigKind::Cos, 0) => Some(Self::ONE),
            (TrigKind::Sin, 0) => None,
            _ => Some(self),
        }
    }

    pub fn eval(self, x: f64, length: f64) -> f64 {
        let arg = std::f64::consts::PI * self.harmonic as f64 * x / length;
        match self.kind {
            TrigKind::Const => 1.0,
            TrigKind::Sin => arg.sin(),
            TrigKind::Cos => arg.cos(),
        }
    }
}

/// Product-to-sum reduction of two single-axis factors.
///
/// Returns whether a factor ½ applies and up to two signed factors.
fn multiply_factors(a: TrigFactor, b: TrigFactor) -> (bool, [(i64, Option<TrigFactor>); 2]) {
    use TrigKind::*;
    let (m, n) = (a.harmonic as i64, b.harmonic as i64);
    let diff = (m - n).unsigned_abs() as u32;
    let sum = (m + n) as u32;
    let sign_mn = if m >= n { 1 } else { -1 };
    match (a.kind, b.kind) {
        (Const, _) => (false, [(1, b.canonical()), (0, None)]),
        (_, Const) => (false, [(1, a.canonical()), (0, None)]),
        // sin a sin b = ½[cos(a−b) − cos(a+b)]
        (Sin, Sin) => (true, [(1, TrigFactor::cos(diff).canonical()), (-1, TrigFactor::cos(sum).canonical())]),
        // sin a cos b = ½[sin(a+b) + sin(a−b)]
        (Sin, Cos) => (true, [(1, TrigFactor::sin(sum).canonical()), (sign_mn, TrigFactor::sin(diff).canonical())]),
        (Cos, Sin) => (true, [(1, TrigFactor::sin(sum).canonical()), (-sign_mn, TrigFactor::sin(diff).canonical())]),
        // cos a cos b = ½[cos(a−b) + cos(a+b)]
        (Cos, Cos) => (true, [(1, TrigFactor::cos(diff).canonical()), (1, TrigFactor::cos(sum).canonical())]),
    }
}

pub type TrigKey = [TrigFactor; 3];

/// Sum of terms `c · f_x(x) · f_y(y) · f_z(z)` in canonical form: like terms
/// merged and zero coefficients dropped.
#[derive(Clone, PartialEq)]
pub struct TrigPoly<S: Scalar> {
    terms: BTreeMap<TrigKey, S>,
}

impl<S: Scalar> Default for TrigPoly<S> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> TrigPoly<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::term(c, [TrigFactor::ONE; 3])
    }

    pub fn term(coeff: S, factors: TrigKey) -> Self {
        let mut p = Self::zero();
        p.add_term(factors, coeff);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TrigKey, &S)> {
        self.terms.iter()
    }

    pub fn max_harmonic(&self) -> u32 {
        self.terms.keys().flat_map(|k| k.iter().map(|f| f.harmonic)).max().unwrap_or(0)
    }

    fn add_term(&mut self, factors: TrigKey, coeff: S) {
        let mut key = [TrigFactor::ONE; 3];
        for (slot, f) in key.iter_mut().zip(factors) {
            match f.canonical() {
                Some(c) => *slot = c,
                None => return,
            }
        }
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let merged = o.get().clone() + coeff;
                if merged.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = merged;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v.clone() * c.clone());
        }
        out
    }

    /// Distributes and reduces every per-axis product with product-to-sum
    /// identities.
    pub fn multiply(&self, other: &Self) -> Self {
        let half = S::ratio(1, 2);
        let mut out = Self::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let base = ca.clone() * cb.clone();
                // expand the three axes, at most 2³ resulting terms
                let mut partial: Vec<(S, TrigKey)> = vec![(base, [TrigFactor::ONE; 3])];
                for axis in 0..3 {
                    let (halved, pieces) = multiply_factors(ka[axis], kb[axis]);
                    let mut next = Vec::with_capacity(partial.len() * 2);
                    for (c, key) in &partial {
                        for (sign, factor) in pieces {
                            let Some(factor) = factor else { continue };
                            if sign == 0 {
                                continue;
                            }
                            let mut c = if sign < 0 { -c.clone() } else { c.clone() };
                            if halved {
                                c = c * half.clone();
                            }
                            let mut key = *key;
                            key[axis] = factor;
                            next.push((c, key));
                        }
                    }
                    partial = next;
                }
                for (c, key) in partial {
                    out.add_term(key, c);
                }
            }
        }
        out
    }

    /// Partial derivative along `axis`.
    pub fn derivative(&self, axis: Axis, geom: &CavityGeometry) -> Result<Self> {
        let a = axis.index();
        let k_unit = S::pi_power(1) * geom.length::<S>(axis)?.recip()?;
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            let f = key[a];
            let scale = k_unit.clone() * S::integer(f.harmonic as i64);
            let mut new_key = *key;
            let coeff = match f.kind {
                TrigKind::Const => continue,
                TrigKind::Sin => {
                    new_key[a] = TrigFactor::cos(f.harmonic);
                    c.clone() * scale
                }
                TrigKind::Cos => {
                    new_key[a] = TrigFactor::sin(f.harmonic);
                    -(c.clone() * scale)
                }
            };
            out.add_term(new_key, coeff);
        }
        Ok(out)
    }

    pub fn eval(&self, point: [f64; 3], lengths: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(key, c)| {
                c.to_f64() * (0..3).map(|a| key[a].eval(point[a], lengths[a])).product::<f64>()
            })
            .sum()
    }

    /// Exact integral over `[0,L_x]×[0,L_y]×[0,L_z]`.
    ///
    /// Per axis: `∫cos(πmx/L) = L·δ_m0` and `∫sin(πmx/L) = L(1−(−1)^m)/(πm)`.
    pub fn integrate_box(&self, geom: &CavityGeometry) -> Result<S> {
        let lengths = [
            geom.length::<S>(Axis::X)?,
            geom.length::<S>(Axis::Y)?,
            geom.length::<S>(Axis::Z)?,
        ];
        let mut total = S::zero();
        'terms: for (key, c) in &self.terms {
            let mut value = c.clone();
            for (f, len) in key.iter().zip(&lengths) {
                let factor = match f.kind {
                    TrigKind::Const => len.clone(),
                    TrigKind::Cos => continue 'terms,
                    TrigKind::Sin if f.harmonic % 2 == 0 => continue 'terms,
                    TrigKind::Sin => {
                        len.clone() * S::ratio(2, f.harmonic as i64) * S::pi_power(-1)
                    }
                };
                value = value * factor;
            }
            total = total + value;
        }
        Ok(total)
    }

    pub fn map_coefficients<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TrigPoly<T> {
        let mut out = TrigPoly::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, f(c));
        }
        out
    }
}

impl<S: Scalar> fmt::Debug for TrigPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ['x', 'y', 'z'];
        for (i, (key, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})")?;
            for (a, fac) in key.iter().enumerate() {
                match fac.kind {
                    TrigKind::Const => {}
                    TrigKind::Sin => write!(f, "·sin({}{})", fac.harmonic, names[a])?,
                    TrigKind::Cos => write!(f, "·cos({}{})", fac.harmonic, names[a])?,
                }
            }
        }
        Ok(())
    }
}

/// A vector field with one [`TrigPoly`] per Cartesian component.
#[derive(Clone, PartialEq, Debug)]
pub struct VectorTrigPoly<S: Scalar> {
    pub components: [TrigPoly<S>; 3],
    /// Box the field lives on, when known.
    geometry: Option<[f64; 3]>,
}

impl<S: Scalar> VectorTrigPoly<S> {
    pub fn new(components: [TrigPoly<S>; 3]) -> Self {
        Self { components, geometry: None }
    }

    pub fn on(components: [TrigPoly<S>; 3], geom: &CavityGeometry) -> Self {
        Self { components, geometry: Some(geom.lengths_f64()) }
    }

    pub fn zero() -> Self {
        Self::new([TrigPoly::zero(), TrigPoly::zero(), TrigPoly::zero()])
    }

    pub fn geometry(&self) -> Option<[f64; 3]> {
        self.geometry
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(TrigPoly::is_zero)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self { components: self.components.clone().map(|p| p.scale(c)), geometry: self.geometry }
    }

    pub fn dot(&self, other: &Self) -> Result<TrigPoly<S>> {
        if let (Some(a), Some(b)) = (self.geometry, other.geometry) {
            if a != b {
                return Err(Error::InvalidGeometry(format!(
                    "dot product of fields on different boxes {a:?} and {b:?}"
                )));
            }
        }
        Ok(self
            .components
            .iter()
            .zip(&other.components)
            .fold(TrigPoly::zero(), |acc, (u, v)| acc.add(&u.multiply(v))))
    }

    pub fn curl(&self, geom: &CavityGeometry) -> Result<Self> {
        let [ax, ay, az] = &self.components;
        let d = |p: &TrigPoly<S>, axis| p.derivative(axis, geom);
        Ok(Self::on(
            [
                d(az, Axis::Y)?.sub(&d(ay, Axis::Z)?),
                d(ax, Axis::Z)?.sub(&d(az, Axis::X)?),
                d(ay, Axis::X)?.sub(&d(ax, Axis::Y)?),
            ],
            geom,
        ))
    }

    pub fn divergence(&self, geom: &CavityGeometry) -> Result<TrigPoly<S>> {
        let mut out = TrigPoly::zero();
        for axis in Axis::ALL {
            out = out.add(&self.components[axis.index()].derivative(axis, geom)?);
        }
        Ok(out)
    }

    pub fn eval(&self, point: [f64; 3], lengths: [f64; 3]) -> [f64; 3] {
        self.components.clone().map(|p| p.eval(point, lengths))
    }

    pub fn max_harmonic(&self) -> u32 {
        self.components.iter().map(TrigPoly::max_harmonic).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trig_algebra::ExactValue;

    type P = TrigPoly<ExactValue>;

    fn sin_x(m: u32) -> P {
        P::term(ExactValue::one(), [TrigFactor::sin(m), TrigFactor::ONE, TrigFactor::ONE])
    }

    fn cos_x(m: u32) -> P {
        P::term(ExactValue::one(), [TrigFactor::cos(m), TrigFactor::ONE, TrigFactor::ONE])
    }

    #[test]
    fn sin_squared_reduces() {
        let got = sin_x(1).multiply(&sin_x(1));
        let half = ExactValue::ratio(1, 2);
        let expected = P::constant(half.clone()).sub(&cos_x(2).scale(&half));
        assert_eq!(got, expected);
    }

    #[test]
    fn sin_cubed_times_sin_triple_has_minus_one_eighth_constant() {
        // sin³θ = (3 sinθ − sin3θ)/4, so sin3θ·sin³θ = (3 sinθ sin3θ − sin²3θ)/4,
        // whose mean is −1/8.
        let s = sin_x(2);
        let p = s.multiply(&s).multiply(&s).multiply(&sin_x(6));
        let constant = p
            .terms()
            .find(|(k, _)| k.iter().all(|f| f.kind == TrigKind::Const))
            .map(|(_, c)| c.clone())
            .unwrap();
        assert_eq!(constant, ExactValue::ratio(-1, 8));
    }

    #[test]
    fn unit_polynomial_is_identity() {
        let p = sin_x(3).add(&cos_x(2).scale(&ExactValue::ratio(5, 7)));
        assert_eq!(p.multiply(&P::one()), p);
        assert_eq!(P::one().multiply(&p), p);
    }

    #[test]
    fn sin_zero_is_dropped_and_cos_zero_is_const() {
        assert!(sin_x(0).is_zero());
        assert_eq!(cos_x(0), P::one());
    }

    #[test]
    fn mixed_products_cancel_to_zero() {
        // sin(x)cos(x) − ½ sin(2x) == 0
        let lhs = sin_x(1).multiply(&cos_x(1));
        assert!(lhs.sub(&sin_x(2).scale(&ExactValue::ratio(1, 2))).is_zero());
    }
}
