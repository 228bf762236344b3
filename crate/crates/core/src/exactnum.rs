//! Exact numbers: arbitrary-precision rationals and the ring of rational
//! combinations of square roots of square-free integers.
//!
//! Every matrix element met in the finite representations is of the form
//! `q * sqrt(m)`, so [`Radical`] keeps a sparse map `m -> q` with `m`
//! square-free.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds the rational `num / den`. Panics if `den == 0`.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer `n` as a rational.
pub fn rational_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n!` as an arbitrary-precision integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Splits `n` into `(outside, inside)` with `n = outside^2 * inside` and
/// `inside` square-free. Trial division.
pub fn square_free_split(mut n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 0);
    }
    let mut outside = 1u64;
    let mut inside = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut exponent = 0u32;
        while n.is_multiple_of(p) {
            n /= p;
            exponent += 1;
        }
        if exponent > 0 {
            outside *= p.pow(exponent / 2);
            if exponent % 2 == 1 {
                inside *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // leftover is 1 or a prime
    inside *= n;
    (outside, inside)
}

/// Returns true when no prime square divides `n`. Zero is not square-free.
pub fn is_square_free(n: u64) -> bool {
    n != 0 && square_free_split(n).0 == 1
}

fn largest_prime_factor(mut n: u64) -> u64 {
    let mut largest = 1;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        while n.is_multiple_of(p) {
            n /= p;
            largest = p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        largest = n;
    }
    largest
}

/// A finite sum `Σ q·√m` with every `m` square-free and every `q` nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Radical {
    terms: BTreeMap<u64, Rational>,
}

impl Radical {
    /// Returns `coefficient * sqrt(radicand)` in canonical form.
    pub fn normalize(coefficient: Rational, radicand: u64) -> Self {
        let mut out = Self::zero();
        if coefficient.is_zero() || radicand == 0 {
            return out;
        }
        let (outside, inside) = square_free_split(radicand);
        out.terms
            .insert(inside, coefficient * BigInt::from(outside));
        out
    }

    /// `sqrt(n)` for a nonnegative integer.
    pub fn sqrt(n: u64) -> Self {
        Self::normalize(Rational::one(), n)
    }

    /// Square root of a signed integer; negative input is rejected.
    pub fn sqrt_signed(n: i64) -> Result<Self> {
        if n < 0 {
            return Err(Error::NegativeRadicand(n.to_string()));
        }
        Ok(Self::sqrt(n as u64))
    }

    /// `sqrt(p/q)` written as `(1/q)·sqrt(p·q)`.
    pub fn sqrt_rational(value: &Rational) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::NegativeRadicand(value.to_string()));
        }
        if value.is_zero() {
            return Ok(Self::zero());
        }
        let product = value.numer() * value.denom();
        let radicand = product
            .to_u64()
            .ok_or_else(|| Error::RadicandOverflow(product.to_string()))?;
        Ok(Self::normalize(
            Rational::new(BigInt::one(), value.denom().clone()),
            radicand,
        ))
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::normalize(q, 1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(rational_int(n))
    }

    /// Iterates `(radicand, coefficient)` pairs in increasing radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(m, q)| (*m, q))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// The value as a rational, if it has no irrational part.
    pub fn to_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, q)| (*m, q * factor))
                .collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exponent {
            acc = &acc * self;
        }
        acc
    }

    /// Exact sign: -1, 0 or 1.
    ///
    /// Writes `x = A + B·√p` for the largest prime `p` occurring in a
    /// radicand; when `A` and `B` disagree in sign the answer is
    /// `sign(A)·sign(A² − p·B²)`, which lives in a smaller field.
    pub fn signum(&self) -> i32 {
        match self.terms.len() {
            0 => return 0,
            1 => {
                let q = self.terms.values().next().unwrap();
                return if q.is_positive() { 1 } else { -1 };
            }
            _ => {}
        }
        let p = self
            .terms
            .keys()
            .map(|&m| largest_prime_factor(m))
            .max()
            .unwrap_or(1);
        let mut rest = Self::zero();
        let mut along = Self::zero();
        for (&m, q) in &self.terms {
            if m % p == 0 {
                along.terms.insert(m / p, q.clone());
            } else {
                rest.terms.insert(m, q.clone());
            }
        }
        let sign_rest = rest.signum();
        let sign_along = along.signum();
        if sign_rest == 0 {
            return sign_along;
        }
        if sign_along == 0 || sign_rest == sign_along {
            return sign_rest;
        }
        let p_scaled = Rational::from_integer(BigInt::from(p));
        let discriminant = &rest * &rest - (&along * &along).scale(&p_scaled);
        sign_rest * discriminant.signum()
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Floating-point approximation, for display and sanity checks only.
    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(m, q)| q.to_f64().unwrap_or(f64::NAN) * (*m as f64).sqrt())
            .sum()
    }

    fn add_term(&mut self, radicand: u64, coefficient: Rational) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(radicand).or_insert_with(Rational::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&radicand);
        }
    }
}

impl Zero for Radical {
    fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Radical {
    fn one() -> Self {
        Self::from_integer(1)
    }
}

impl From<i64> for Radical {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for Radical {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl<'a> Add<&'a Radical> for &Radical {
    type Output = Radical;
    fn add(self, rhs: &'a Radical) -> Radical {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Radical {
    type Output = Radical;
    fn add(mut self, rhs: Radical) -> Radical {
        self += &rhs;
        self
    }
}

impl<'a> AddAssign<&'a Radical> for Radical {
    fn add_assign(&mut self, rhs: &'a Radical) {
        for (&m, q) in &rhs.terms {
            self.add_term(m, q.clone());
        }
    }
}

impl AddAssign for Radical {
    fn add_assign(&mut self, rhs: Radical) {
        *self += &rhs;
    }
}

impl<'a> Sub<&'a Radical> for &Radical {
    type Output = Radical;
    fn sub(self, rhs: &'a Radical) -> Radical {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Radical {
    type Output = Radical;
    fn sub(mut self, rhs: Radical) -> Radical {
        self -= &rhs;
        self
    }
}

impl<'a> SubAssign<&'a Radical> for Radical {
    fn sub_assign(&mut self, rhs: &'a Radical) {
        for (&m, q) in &rhs.terms {
            self.add_term(m, -q.clone());
        }
    }
}

impl SubAssign for Radical {
    fn sub_assign(&mut self, rhs: Radical) {
        *self -= &rhs;
    }
}

impl Neg for &Radical {
    type Output = Radical;
    fn neg(self) -> Radical {
        Radical {
            terms: self.terms.iter().map(|(m, q)| (*m, -q.clone())).collect(),
        }
    }
}

impl Neg for Radical {
    type Output = Radical;
    fn neg(self) -> Radical {
        -&self
    }
}

impl<'a> Mul<&'a Radical> for &Radical {
    type Output = Radical;
    fn mul(self, rhs: &'a Radical) -> Radical {
        let mut out = Radical::zero();
        for (&m, q) in &self.terms {
            for (&n, r) in &rhs.terms {
                // m, n square-free: sqrt(m)·sqrt(n) = g·sqrt((m/g)(n/g))
                let g = m.gcd(&n);
                let radicand = (m / g)
                    .checked_mul(n / g)
                    .expect("radicand exceeds u64 range");
                out.add_term(radicand, q * r * BigInt::from(g));
            }
        }
        out
    }
}

impl Mul for Radical {
    type Output = Radical;
    fn mul(self, rhs: Radical) -> Radical {
        &self * &rhs
    }
}

impl MulAssign<&Radical> for Radical {
    fn mul_assign(&mut self, rhs: &Radical) {
        *self = &*self * rhs;
    }
}

impl Sum for Radical {
    fn sum<I: Iterator<Item = Radical>>(iter: I) -> Self {
        iter.fold(Radical::zero(), |acc, x| acc + x)
    }
}

impl PartialOrd for Radical {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Radical {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, q)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            if *m == 1 {
                write!(f, "{q}")?;
            } else {
                write!(f, "{q}*sqrt({m})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Radical({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_pulls_out_squares() {
        let r = Radical::normalize(Rational::one(), 8);
        assert_eq!(r, Radical::normalize(rational_int(2), 2));
        assert_eq!(Radical::normalize(Rational::one(), 1), Radical::one());
        assert!(Radical::normalize(rational_int(3), 0).is_zero());
        assert_eq!(Radical::normalize(rational_int(-1), 12).to_string(), "-2*sqrt(3)");
    }

    #[test]
    fn add_and_mul_examples() {
        let s2 = Radical::sqrt(2);
        let s3 = Radical::sqrt(3);
        assert_eq!(&s2 + &s2, Radical::normalize(rational_int(2), 2));
        assert!((&s2 + &(-&s2)).is_zero());
        let a = &Radical::one() + &s3;
        let b = &Radical::from_integer(2) - &s3;
        assert_eq!(a + b, Radical::from_integer(3));
        assert_eq!(&s2 * &s2, Radical::from_integer(2));
        assert_eq!(&s2 * &s3, Radical::sqrt(6));
        let sum = &s2 + &s3;
        assert_eq!(&sum * &sum, &Radical::from_integer(5) + &Radical::normalize(rational_int(2), 6));
    }

    #[test]
    fn negative_radicand_rejected() {
        assert!(matches!(Radical::sqrt_signed(-4), Err(Error::NegativeRadicand(_))));
        assert!(Radical::sqrt_rational(&rational(-1, 2)).is_err());
    }

    #[test]
    fn sqrt_rational_rationalizes() {
        let r = Radical::sqrt_rational(&rational(1, 2)).unwrap();
        assert_eq!(r.to_string(), "1/2*sqrt(2)");
        assert_eq!(Radical::sqrt_rational(&rational(1, 4)).unwrap(), Radical::from_rational(rational(1, 2)));
    }

    #[test]
    fn sign_of_nested_radicals() {
        // 3 - 2√2 > 0, √2 + √3 - √10 < 0, 5 - √2 - √3 - √6 < 0
        let a = &Radical::from_integer(3) - &Radical::normalize(rational_int(2), 2);
        assert_eq!(a.signum(), 1);
        let b = &(&Radical::sqrt(2) + &Radical::sqrt(3)) - &Radical::sqrt(10);
        assert_eq!(b.signum(), -1);
        let c = &(&(&Radical::from_integer(5) - &Radical::sqrt(2)) - &Radical::sqrt(3)) - &Radical::sqrt(6);
        assert_eq!(c.signum(), if c.to_f64() > 0.0 { 1 } else { -1 });
        assert!(Radical::sqrt(7) > Radical::from_integer(2));
        assert!(Radical::sqrt(3) < Radical::from_rational(rational(7, 4)));
    }

    #[test]
    fn square_free_split_matches_definition() {
        for n in 1..2000u64 {
            let (o, i) = square_free_split(n);
            assert_eq!(o * o * i, n);
            assert!((2..=i).take_while(|p| p * p <= i).all(|p| i % (p * p) != 0));
        }
    }

    #[test]
    fn binomial_and_factorial() {
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(7, 3), BigInt::from(35));
        assert_eq!(binomial(3, 4), BigInt::zero());
    }
}
