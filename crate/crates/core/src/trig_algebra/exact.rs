//! Exact values of the form `Σ q·√s·πᵉ` with rational `q`, square-free
//! positive integer `s` and integer `e`.
//!
//! Square-free radicands are linearly independent over the rationals, and
//! distinct powers of π are treated as independent symbols, so a value is
//! zero exactly when its canonical map is empty.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Key of one monomial: (power of π, square-free radicand).
type MonomialKey = (i32, BigInt);

#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExactValue {
    terms: BTreeMap<MonomialKey, BigRational>,
}

impl ExactValue {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(q: BigRational) -> Self {
        Self::monomial(q, 0, BigInt::one())
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(num.into(), den.into()))
    }

    pub fn integer(n: i64) -> Self {
        Self::ratio(n, 1)
    }

    /// `q·√radicand·π^pi_exp`; the radicand is reduced to square-free form.
    pub fn monomial(q: BigRational, pi_exp: i32, radicand: BigInt) -> Self {
        assert!(radicand.is_positive(), "radicand must be positive");
        let mut out = Self::zero();
        if q.is_zero() {
            return out;
        }
        let (outside, inside) = square_free_split(&radicand);
        out.terms.insert((pi_exp, inside), q * BigRational::from_integer(outside));
        out
    }

    pub fn pi_power(e: i32) -> Self {
        Self::monomial(BigRational::one(), e, BigInt::one())
    }

    /// `√q` for a non-negative rational.
    pub fn sqrt_rational(q: &BigRational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::NotASurd(q.to_string()));
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        // √(a/b) = √(a·b) / b
        let radicand = q.numer() * q.denom();
        let coeff = BigRational::new(BigInt::one(), q.denom().clone());
        Ok(Self::monomial(coeff, 0, radicand))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value as a rational number, if it has no surd or π content.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let ((e, s), q) = self.terms.iter().next().unwrap();
                (*e == 0 && s.is_one()).then(|| q.clone())
            }
            _ => None,
        }
    }

    /// Coefficient of `√radicand·π^pi_exp` (radicand taken as given, it must
    /// already be square-free).
    pub fn coefficient(&self, pi_exp: i32, radicand: i64) -> BigRational {
        self.terms
            .get(&(pi_exp, BigInt::from(radicand)))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt, &BigRational)> {
        self.terms.iter().map(|((e, s), q)| (*e, s, q))
    }

    fn single(&self) -> Option<(i32, &BigInt, &BigRational)> {
        (self.terms.len() == 1).then(|| self.terms().next().unwrap())
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        match self.single() {
            Some((e, s, q)) if s.is_one() && e % 2 == 0 && !q.is_negative() => {
                Ok(Self::sqrt_rational(q)? * Self::pi_power(e / 2))
            }
            _ => Err(Error::NotASurd(self.to_string())),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self.single() {
            // 1/(q√s πᵉ) = √s / (q s) · π⁻ᵉ
            Some((e, s, q)) => {
                let coeff = (q * BigRational::from_integer(s.clone())).recip();
                Ok(Self::monomial(coeff, -e, s.clone()))
            }
            None => Err(Error::NotASurd(format!("1/({self})"))),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms()
            .map(|(e, s, q)| {
                rational_to_f64(q) * s.to_f64().unwrap_or(f64::NAN).sqrt() * std::f64::consts::PI.powi(e)
            })
            .sum()
    }

    fn insert_add(&mut self, key: MonomialKey, q: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                if !q.is_zero() {
                    v.insert(q);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += q;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale down huge numerators/denominators before dividing
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(900);
            let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Splits `n = outside² · inside` with `inside` square-free.
fn square_free_split(n: &BigInt) -> (BigInt, BigInt) {
    if let Some(small) = n.to_u64() {
        let (o, i) = square_free_split_u64(small);
        return (o.into(), i.into());
    }
    let mut rest = n.clone();
    let mut outside = BigInt::one();
    let mut inside = BigInt::one();
    let mut d = BigInt::from(2u32);
    let limit = BigInt::from(1_000_000u32);
    while &d * &d <= rest && d <= limit {
        let mut count = 0u32;
        while (&rest % &d).is_zero() {
            rest /= &d;
            count += 1;
        }
        for _ in 0..count / 2 {
            outside *= &d;
        }
        if count % 2 == 1 {
            inside *= &d;
        }
        d += 1u32;
    }
    // A large leftover factor is either prime or beyond the trial bound.
    let root = rest.sqrt();
    if &root * &root == rest {
        outside *= root;
    } else {
        inside *= rest;
    }
    (outside, inside)
}

fn square_free_split_u64(mut n: u64) -> (u64, u64) {
    let mut outside = 1u64;
    let mut inside = 1u64;
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        let mut count = 0;
        while n.is_multiple_of(d) {
            n /= d;
            count += 1;
        }
        for _ in 0..count / 2 {
            outside *= d;
        }
        if count % 2 == 1 {
            inside *= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    (outside, inside * n)
}

impl Add for ExactValue {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (k, q) in rhs.terms {
            self.insert_add(k, q);
        }
        self
    }
}

impl<'a> Add<&'a ExactValue> for &'a ExactValue {
    type Output = ExactValue;
    fn add(self, rhs: &ExactValue) -> ExactValue {
        self.clone() + rhs.clone()
    }
}

impl Neg for ExactValue {
    type Output = Self;
    fn neg(mut self) -> Self {
        for q in self.terms.values_mut() {
            *q = -q.clone();
        }
        self
    }
}

impl Sub for ExactValue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<'a> Mul<&'a ExactValue> for &'a ExactValue {
    type Output = ExactValue;
    fn mul(self, rhs: &ExactValue) -> ExactValue {
        let mut out = ExactValue::zero();
        for ((e1, s1), q1) in &self.terms {
            for ((e2, s2), q2) in &rhs.terms {
                // √a·√b = g·√((a/g)(b/g)) with g = gcd(a, b); stays square-free
                let g = s1.gcd(s2);
                let radicand = (s1 / &g) * (s2 / &g);
                let q = q1 * q2 * BigRational::from_integer(g);
                out.insert_add((e1 + e2, radicand), q);
            }
        }
        out
    }
}

impl Mul for ExactValue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, s, q)) in self.terms().enumerate() {
            let negative = q.is_negative();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            let mag = q.abs();
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || (s.is_one() && e == 0) {
                parts.push(mag.to_string());
            }
            if !s.is_one() {
                parts.push(format!("√{s}"));
            }
            match e {
                0 => {}
                1 => parts.push("π".into()),
                _ => parts.push(format!("π^{e}")),
            }
            write!(f, "{}", parts.join("·"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactValue({self})")
    }
}

impl From<i64> for ExactValue {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl From<BigRational> for ExactValue {
    fn from(q: BigRational) -> Self {
        Self::rational(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn square_free_reduction() {
        let v = ExactValue::monomial(q(1, 1), 0, 72.into());
        // √72 = 6√2
        assert_eq!(v.coefficient(0, 2), q(6, 1));
        assert_eq!(v.num_terms(), 1);
    }

    #[test]
    fn surd_products_merge() {
        let a = ExactValue::sqrt_rational(&q(6, 1)).unwrap();
        let b = ExactValue::sqrt_rational(&q(3, 1)).unwrap();
        let prod = &a * &b; // √18 = 3√2
        assert_eq!(prod.coefficient(0, 2), q(3, 1));
        let sq = &a * &a;
        assert_eq!(sq.as_rational(), Some(q(6, 1)));
    }

    #[test]
    fn unlike_surds_stay_formal_and_cancel_exactly() {
        let s2 = ExactValue::sqrt_rational(&q(2, 1)).unwrap();
        let s3 = ExactValue::sqrt_rational(&q(3, 1)).unwrap();
        let sum = s2.clone() + s3.clone();
        assert_eq!(sum.num_terms(), 2);
        assert!((sum.to_f64() - (2f64.sqrt() + 3f64.sqrt())).abs() < 1e-15);
        assert!((sum - s2 - s3).is_zero());
    }

    #[test]
    fn sqrt_of_rational_fraction() {
        let v = ExactValue::sqrt_rational(&q(1, 2)).unwrap();
        // √(1/2) = √2 / 2
        assert_eq!(v.coefficient(0, 2), q(1, 2));
        let back = &v * &v;
        assert_eq!(back.as_rational(), Some(q(1, 2)));
    }

    #[test]
    fn sqrt_and_recip_of_monomials() {
        let w2 = ExactValue::ratio(5, 4) * ExactValue::pi_power(2);
        let w = w2.sqrt().unwrap();
        assert!((w.to_f64() - std::f64::consts::PI * 1.25f64.sqrt()).abs() < 1e-14);
        let inv = w.recip().unwrap();
        assert_eq!((&inv * &w).as_rational(), Some(q(1, 1)));
        assert!(ExactValue::pi_power(1).sqrt().is_err());
        assert!(ExactValue::integer(-1).sqrt().is_err());
        assert_eq!(ExactValue::zero().recip(), Err(Error::DivisionByZero));
    }

    #[test]
    fn display_is_readable() {
        let v = ExactValue::ratio(-1, 2) * ExactValue::pi_power(4);
        assert_eq!(v.to_string(), "-1/2·π^4");
        let w = ExactValue::sqrt_rational(&q(3, 1)).unwrap() * ExactValue::integer(12);
        assert_eq!(w.to_string(), "12·√3");
    }

    #[test]
    fn large_radicands_are_split() {
        let n = BigInt::from(u64::MAX) * BigInt::from(4u32);
        let (o, i) = square_free_split(&n);
        assert_eq!(&o * &o * &i, n);
        assert_eq!(o, BigInt::from(2u32));
    }
}
