//! Commuting nilpotent Grassmann variables `θ_1..θ_k` (`θ_i² = 0`) with
//! their conjugates `θ̄_i`, and the calculus of the generalized variable
//! `η = Σ θ_i`.
//!
//! Monomials are pairs of bitsets; elements are sorted sparse maps from
//! monomials to coefficients in any [`Coefficient`] ring.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactnum::{factorial, Rational};
use rayon::prelude::*;

use crate::{CheckReport, Coefficient, Error, Radical, Result};

pub const MAX_ORDER: usize = 32;

/// Product of a subset of the `θ_i` with a subset of the `θ̄_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GrassmannMonomial {
    pub theta: u32,
    pub theta_bar: u32,
}

impl GrassmannMonomial {
    pub const ONE: Self = Self {
        theta: 0,
        theta_bar: 0,
    };

    pub fn new(theta: u32, theta_bar: u32) -> Self {
        Self { theta, theta_bar }
    }

    /// Builds a monomial from 1-based index lists.
    pub fn from_indices(theta: &[usize], theta_bar: &[usize]) -> Self {
        let bits = |idx: &[usize]| idx.iter().fold(0u32, |acc, &i| acc | 1 << (i - 1));
        Self::new(bits(theta), bits(theta_bar))
    }

    pub fn degree(&self) -> u32 {
        self.theta.count_ones()
    }

    pub fn conjugate_degree(&self) -> u32 {
        self.theta_bar.count_ones()
    }

    /// Product of two monomials, or `None` when a variable would be squared.
    pub fn times(&self, other: &Self) -> Option<Self> {
        if self.theta & other.theta != 0 || self.theta_bar & other.theta_bar != 0 {
            None
        } else {
            Some(Self::new(
                self.theta | other.theta,
                self.theta_bar | other.theta_bar,
            ))
        }
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.theta_bar, self.theta)
    }
}

fn write_index_set(f: &mut fmt::Formatter<'_>, prefix: &str, bits: u32) -> fmt::Result {
    write!(f, "{prefix}{{")?;
    let mut first = true;
    for i in 0..32 {
        if bits >> i & 1 == 1 {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
            first = false;
        }
    }
    f.write_str("}")
}

impl fmt::Display for GrassmannMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.theta == 0 && self.theta_bar == 0 {
            return f.write_str("1");
        }
        if self.theta != 0 {
            write_index_set(f, "t", self.theta)?;
        }
        if self.theta_bar != 0 {
            write_index_set(f, "tb", self.theta_bar)?;
        }
        Ok(())
    }
}

/// Which family of variables a Berezin integral runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variables {
    Theta,
    ThetaBar,
}

/// Element of the Grassmann algebra of order `k` with coefficients in `C`.
#[derive(Clone, PartialEq, Eq)]
pub struct GrassmannElement<C> {
    order: usize,
    terms: BTreeMap<GrassmannMonomial, C>,
}

fn check_order(order: usize) -> Result<()> {
    match order {
        0 => Err(Error::ZeroOrder),
        k if k > MAX_ORDER => Err(Error::OrderTooLarge(k)),
        _ => Ok(()),
    }
}

fn full_set(order: usize) -> u32 {
    if order == 32 {
        u32::MAX
    } else {
        (1u32 << order) - 1
    }
}

/// All `n`-element subsets of `{0..k}` as bitsets, in increasing order.
pub fn subsets_of_size(k: usize, n: usize) -> Vec<u32> {
    if n > k {
        return Vec::new();
    }
    if n == 0 {
        return vec![0];
    }
    let limit = 1u64 << k;
    let mut out = Vec::new();
    let mut set: u64 = (1 << n) - 1;
    while set < limit {
        out.push(set as u32);
        // Gosper's hack: next integer with the same popcount
        let c = set & set.wrapping_neg();
        let r = set + c;
        set = (((r ^ set) >> 2) / c) | r;
    }
    out
}

impl<C: Coefficient> GrassmannElement<C> {
    pub fn zero(order: usize) -> Result<Self> {
        check_order(order)?;
        Ok(Self {
            order,
            terms: BTreeMap::new(),
        })
    }

    pub fn constant(order: usize, value: C) -> Result<Self> {
        let mut out = Self::zero(order)?;
        out.add_term(GrassmannMonomial::ONE, value);
        Ok(out)
    }

    pub fn one(order: usize) -> Result<Self> {
        Self::constant(order, C::one())
    }

    /// Single-term element; panics if the monomial uses indices beyond the order.
    pub fn monomial(order: usize, monomial: GrassmannMonomial, value: C) -> Result<Self> {
        let mut out = Self::zero(order)?;
        let full = full_set(order);
        assert!(
            monomial.theta & !full == 0 && monomial.theta_bar & !full == 0,
            "monomial {monomial} outside order {order}"
        );
        out.add_term(monomial, value);
        Ok(out)
    }

    /// `θ_i` for 1-based `i`.
    pub fn theta(order: usize, i: usize) -> Result<Self> {
        Self::monomial(order, GrassmannMonomial::new(1 << (i - 1), 0), C::one())
    }

    /// `θ̄_i` for 1-based `i`.
    pub fn theta_bar(order: usize, i: usize) -> Result<Self> {
        Self::monomial(order, GrassmannMonomial::new(0, 1 << (i - 1)), C::one())
    }

    pub fn order(&self) -> usize {
        self.order
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

    pub fn terms(&self) -> impl Iterator<Item = (&GrassmannMonomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, monomial: &GrassmannMonomial) -> C {
        self.terms.get(monomial).cloned().unwrap_or_else(C::zero)
    }

    fn add_term(&mut self, monomial: GrassmannMonomial, value: C) {
        if value.is_zero() {
            return;
        }
        match self.terms.get_mut(&monomial) {
            Some(existing) => {
                let sum = existing.add_ref(&value);
                if sum.is_zero() {
                    self.terms.remove(&monomial);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(monomial, value);
            }
        }
    }

    fn check_same_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            Err(Error::OrderMismatch(self.order, other.order))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, factor: &C) -> Self {
        let mut out = Self {
            order: self.order,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            out.add_term(*m, c.mul_ref(factor));
        }
        out
    }

    /// Product with `θ_i² = θ̄_i² = 0`; the variables commute.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        let mut out = Self {
            order: self.order,
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(m) = ma.times(mb) {
                    out.add_term(m, ca.mul_ref(cb));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut acc = Self::one(self.order).expect("order already validated");
        for _ in 0..exponent {
            acc = acc.mul(self).expect("same order");
        }
        acc
    }

    /// Swaps every `θ_i` with `θ̄_i`. Coefficients are left untouched, which
    /// is complex conjugation for the real coefficient rings used here.
    pub fn conjugate(&self) -> Self {
        Self {
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.conjugate(), c.clone()))
                .collect(),
        }
    }

    /// `∂/∂θ_i` (1-based `i`): removes `θ_i` from terms containing it and
    /// annihilates the rest. No signs, since the variables commute.
    pub fn partial_theta(&self, i: usize) -> Self {
        let bit = 1u32 << (i - 1);
        let mut out = Self {
            order: self.order,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            if m.theta & bit != 0 {
                out.add_term(GrassmannMonomial::new(m.theta & !bit, m.theta_bar), c.clone());
            }
        }
        out
    }

    /// `∂_η = Σ_i ∂/∂θ_i`.
    pub fn eta_derivative(&self) -> Self {
        let mut out = Self {
            order: self.order,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let mut bits = m.theta;
            while bits != 0 {
                let bit = bits & bits.wrapping_neg();
                bits &= bits - 1;
                out.add_term(GrassmannMonomial::new(m.theta & !bit, m.theta_bar), c.clone());
            }
        }
        out
    }

    /// Applies `∂_η` `times` times.
    pub fn eta_derivative_pow(&self, times: u32) -> Self {
        (0..times).fold(self.clone(), |acc, _| acc.eta_derivative())
    }

    /// Sum over all `n`-subsets `S` of `∏_{i∈S} ∂/∂θ_i` applied to `self`
    /// (the operator `g_n` with `∂_η^n = n!·g_n`).
    pub fn distinct_partial_sum(&self, n: usize) -> Self {
        let mut out = Self {
            order: self.order,
            terms: BTreeMap::new(),
        };
        for subset in subsets_of_size(self.order, n) {
            for (m, c) in &self.terms {
                if m.theta & subset == subset {
                    out.add_term(GrassmannMonomial::new(m.theta & !subset, m.theta_bar), c.clone());
                }
            }
        }
        out
    }

    /// Berezin integral over all `θ` (or all `θ̄`) at once: keeps the terms
    /// containing every variable of the family and strips them.
    pub fn berezin(&self, which: Variables) -> Self {
        let full = full_set(self.order);
        let mut out = Self {
            order: self.order,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            match which {
                Variables::Theta if m.theta == full => {
                    out.add_term(GrassmannMonomial::new(0, m.theta_bar), c.clone())
                }
                Variables::ThetaBar if m.theta_bar == full => {
                    out.add_term(GrassmannMonomial::new(m.theta, 0), c.clone())
                }
                _ => {}
            }
        }
        out
    }

    /// `∫∫ x dη dη̄`: Berezin over both families, returned as a scalar.
    pub fn berezin_both(&self) -> C {
        self.berezin(Variables::Theta)
            .berezin(Variables::ThetaBar)
            .coefficient(&GrassmannMonomial::ONE)
    }

    /// `∫∫ self·other dη dη̄` without forming the product: only pairs of
    /// monomials with complementary index sets reach the top monomial.
    pub fn berezin_pairing(&self, other: &Self) -> C {
        let full = full_set(self.order);
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let partner = GrassmannMonomial::new(full & !m.theta, full & !m.theta_bar);
            if let Some(d) = other.terms.get(&partner) {
                acc = acc.add_ref(&c.mul_ref(d));
            }
        }
        acc
    }

    /// The scalar part, if the element has no nilpotent part.
    pub fn as_scalar(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&GrassmannMonomial::ONE).cloned(),
            _ => None,
        }
    }
}

impl<C: Coefficient> fmt::Display for GrassmannElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            if *m == GrassmannMonomial::ONE {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for GrassmannElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GrassmannElement[k={}]({self})", self.order)
    }
}

/// `η = Σ_i θ_i`.
pub fn eta<C: Coefficient>(order: usize) -> Result<GrassmannElement<C>> {
    let mut out = GrassmannElement::zero(order)?;
    for i in 0..order {
        out.add_term(GrassmannMonomial::new(1 << i, 0), C::one());
    }
    Ok(out)
}

/// `η̄ = Σ_i θ̄_i`.
pub fn eta_bar<C: Coefficient>(order: usize) -> Result<GrassmannElement<C>> {
    Ok(eta::<C>(order)?.conjugate())
}

/// Elementary symmetric polynomial `e_n(θ)`; `e_0 = 1`.
pub fn sym_poly<C: Coefficient>(order: usize, degree: usize) -> Result<GrassmannElement<C>> {
    let mut out = GrassmannElement::zero(order)?;
    if degree > order {
        return Err(Error::DegreeTooLarge { degree, order });
    }
    for subset in subsets_of_size(order, degree) {
        out.add_term(GrassmannMonomial::new(subset, 0), C::one());
    }
    Ok(out)
}

/// Grassmann analogue of the Dicke state: `D_n = sqrt(n!(k-n)!/k!)·e_n`.
pub fn dicke_poly(order: usize, degree: usize) -> Result<GrassmannElement<Radical>> {
    let e_n = sym_poly::<Radical>(order, degree)?;
    let ratio = Rational::new(
        factorial(degree as u64) * factorial((order - degree) as u64),
        factorial(order as u64),
    );
    let norm = Radical::sqrt_rational(&ratio)?;
    Ok(e_n.scale(&norm))
}

/// Weight function `σ(η, η̄) = Σ_{n=0}^{k} η^{k-n} η̄^{k-n} / (k!(k-n)!)`,
/// expanded in the monomial basis.
pub fn sigma_measure<C: Coefficient>(order: usize) -> Result<GrassmannElement<C>> {
    let eta = eta::<C>(order)?;
    let eta_bar = eta.conjugate();
    let k_fact = factorial(order as u64);
    let mut out = GrassmannElement::zero(order)?;
    let mut eta_power = GrassmannElement::one(order)?;
    let mut eta_bar_power = GrassmannElement::one(order)?;
    // p = k - n runs from 0 up to k
    for p in 0..=order {
        let weight = C::from_rational(Rational::new(
            BigInt::one(),
            &k_fact * factorial(p as u64),
        ));
        out = out.add(&eta_power.mul(&eta_bar_power)?.scale(&weight))?;
        eta_power = eta_power.mul(&eta)?;
        eta_bar_power = eta_bar_power.mul(&eta_bar)?;
    }
    Ok(out)
}

/// `∫∫ σ(η, η̄) η^n η̄^m dη dη̄`, computed through the θ expansion.
pub fn sigma_moment<C: Coefficient>(order: usize, n: u32, m: u32) -> Result<C> {
    let sigma = sigma_measure::<C>(order)?;
    let eta = eta::<C>(order)?;
    let integrand = sigma
        .mul(&eta.pow(n))?
        .mul(&eta.conjugate().pow(m))?;
    Ok(integrand.berezin_both())
}

/// Closed form of [`sigma_moment`]: `δ_{nm}·k!/(k-n)!`.
pub fn sigma_moment_closed_form(order: u32, n: u32, m: u32) -> Rational {
    if n != m || n > order {
        return Rational::zero();
    }
    Rational::from_integer(factorial(order as u64) / factorial((order - n) as u64))
}

/// Largest order at which σ moments are expanded over the θ variables.
pub const THETA_MOMENT_MAX_ORDER: usize = 8;

/// `table[p][q] = ∫∫ σ η^p η̄^q dη dη̄` for `p, q ≤ k`, from the θ expansion.
pub fn sigma_moment_table(order: usize) -> Result<Vec<Vec<Rational>>> {
    let sigma = sigma_measure::<Rational>(order)?;
    let eta = eta::<Rational>(order)?;
    let eta_bar = eta.conjugate();
    let mut bar_powers = vec![GrassmannElement::<Rational>::one(order)?];
    for q in 1..=order {
        let next = bar_powers[q - 1].mul(&eta_bar)?;
        bar_powers.push(next);
    }
    let rows: Vec<Result<Vec<Rational>>> = (0..=order)
        .into_par_iter()
        .map(|p| {
            let weighted = sigma.mul(&eta.pow(p as u32))?;
            Ok(bar_powers.iter().map(|b| weighted.berezin_pairing(b)).collect())
        })
        .collect();
    rows.into_iter().collect()
}

fn element_failure<C: Coefficient>(
    label: impl FnOnce() -> String,
    lhs: &GrassmannElement<C>,
    rhs: &GrassmannElement<C>,
) -> Result<Option<(String, Radical)>>
where
    Radical: From<C>,
{
    let diff = lhs.sub(rhs)?;
    let first = diff.terms().next().map(|(m, c)| (*m, c.clone()));
    Ok(first.map(|(m, c)| (format!("{}: {m} has {c}", label()), Radical::from(c))))
}

/// Every element of the θ algebra with coefficient 1 on each monomial.
fn all_theta_monomials(order: usize) -> Result<GrassmannElement<Rational>> {
    let mut out = GrassmannElement::zero(order)?;
    for bits in 0..=full_set(order) {
        out.add_term(GrassmannMonomial::new(bits, 0), Rational::one());
        if bits == full_set(order) {
            break;
        }
    }
    Ok(out)
}

/// The generalized Grassmann calculus at order `k`: nilpotency of `η` and
/// `∂_η`, powers of `η`, the derivative of `e_n`, Berezin integrals, σ
/// moments, the `D_n` ladders and `∂_η^n = n! g_n` (the last two for
/// `k ≤ 6`).
pub fn verify_grassmann(order: usize) -> Result<CheckReport> {
    check_order(order)?;
    let mut report = CheckReport::new("grassmann", 1, order as u32);
    let eta = eta::<Rational>(order)?;
    let eta_bar = eta.conjugate();
    let zero = GrassmannElement::<Rational>::zero(order)?;
    let sym: Vec<_> = (0..=order)
        .map(|n| sym_poly::<Rational>(order, n))
        .collect::<Result<_>>()?;
    let powers: Vec<_> = (0..=order + 1).map(|n| eta.pow(n as u32)).collect();

    report.record(
        "eta^(k+1) = 0",
        element_failure(|| "eta^(k+1)".into(), &powers[order + 1], &zero)?,
    );

    let mut failure = None;
    for n in 0..=order {
        let rhs = sym[n].scale(&Rational::from_integer(factorial(n as u64)));
        if failure.is_none() {
            failure = element_failure(|| format!("n={n}"), &powers[n], &rhs)?;
        }
    }
    report.record("eta^n = n! e_n", failure);

    let generic = all_theta_monomials(order)?;
    report.record(
        "d_eta^(k+1) = 0",
        element_failure(
            || "sum of all theta monomials".into(),
            &generic.eta_derivative_pow(order as u32 + 1),
            &zero,
        )?,
    );

    let mut failure = None;
    for n in 1..=order {
        let rhs = sym[n - 1].scale(&Rational::from_integer(BigInt::from(order - n + 1)));
        if failure.is_none() {
            failure = element_failure(|| format!("n={n}"), &sym[n].eta_derivative(), &rhs)?;
        }
    }
    report.record("d_eta e_n = (k-n+1) e_(n-1)", failure);

    let k_fact = Rational::from_integer(factorial(order as u64));
    let mut failure = None;
    for (n, p) in powers.iter().enumerate().take(order + 1) {
        let expected = if n == order { k_fact.clone() } else { Rational::zero() };
        let got = p.berezin(Variables::Theta).coefficient(&GrassmannMonomial::ONE);
        if got != expected && failure.is_none() {
            failure = Some((
                format!("n={n}: {got}"),
                Radical::from_rational(&got - &expected),
            ));
        }
    }
    report.record("int eta^n d eta = k! delta(n,k)", failure);
    let bar_top = eta_bar.pow(order as u32);
    let got = bar_top.berezin(Variables::ThetaBar).coefficient(&GrassmannMonomial::ONE);
    report.record(
        "int etabar^k d etabar = k!",
        (got != k_fact).then(|| (got.to_string(), Radical::from_rational(&got - &k_fact))),
    );

    if order <= THETA_MOMENT_MAX_ORDER {
        let table = sigma_moment_table(order)?;
        let mut failure = None;
        for (p, row) in table.iter().enumerate() {
            for (q, got) in row.iter().enumerate() {
                let expected = sigma_moment_closed_form(order as u32, p as u32, q as u32);
                if *got != expected && failure.is_none() {
                    failure = Some((
                        format!("n={p} m={q}: {got}"),
                        Radical::from_rational(got - &expected),
                    ));
                }
            }
        }
        report.record(
            "int int sigma eta^n etabar^m = delta(n,m) k!/(k-n)!",
            failure,
        );
    } else {
        report.note(format!(
            "sigma moments skipped above order {THETA_MOMENT_MAX_ORDER}"
        ));
    }

    if order <= 6 {
        let eta_r = self::eta::<Radical>(order)?;
        let dicke: Vec<_> = (0..=order)
            .map(|n| dicke_poly(order, n))
            .collect::<Result<_>>()?;
        let zero_r = GrassmannElement::<Radical>::zero(order)?;
        let mut up = None;
        let mut down = None;
        for n in 0..=order {
            let raised = eta_r.mul(&dicke[n])?;
            let expected = if n < order {
                dicke[n + 1].scale(&Radical::sqrt(((n + 1) * (order - n)) as u64))
            } else {
                zero_r.clone()
            };
            if up.is_none() {
                up = element_failure(|| format!("n={n}"), &raised, &expected)?;
            }
            let lowered = dicke[n].eta_derivative();
            let expected = if n > 0 {
                dicke[n - 1].scale(&Radical::sqrt((n * (order + 1 - n)) as u64))
            } else {
                zero_r.clone()
            };
            if down.is_none() {
                down = element_failure(|| format!("n={n}"), &lowered, &expected)?;
            }
        }
        report.record("eta D_n = sqrt((n+1)(k-n)) D_(n+1)", up);
        report.record("d_eta D_n = sqrt(n(k+1-n)) D_(n-1)", down);

        let mut failure = None;
        for n in 0..=order {
            let lhs = generic.eta_derivative_pow(n as u32);
            let rhs = generic
                .distinct_partial_sum(n)
                .scale(&Rational::from_integer(factorial(n as u64)));
            if failure.is_none() {
                failure = element_failure(|| format!("n={n}"), &lhs, &rhs)?;
            }
        }
        report.record("d_eta^n = n! g_n", failure);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational_int;

    type G = GrassmannElement<Rational>;

    #[test]
    fn nilpotent_and_commuting_products() {
        let t1 = G::theta(2, 1).unwrap();
        let t2 = G::theta(2, 2).unwrap();
        assert!(t1.mul(&t1).unwrap().is_zero());
        let t12 = G::monomial(2, GrassmannMonomial::from_indices(&[1, 2], &[]), Rational::one()).unwrap();
        assert_eq!(t1.mul(&t2).unwrap(), t12);
        assert_eq!(t2.mul(&t1).unwrap(), t12);
        let s = t1.add(&t2).unwrap();
        assert_eq!(s.mul(&s).unwrap(), t12.scale(&rational_int(2)));
    }

    #[test]
    fn order_mismatch_and_zero_order() {
        let a = G::theta(2, 1).unwrap();
        let b = G::theta(3, 1).unwrap();
        assert_eq!(a.mul(&b), Err(Error::OrderMismatch(2, 3)));
        assert_eq!(eta::<Rational>(0).unwrap_err(), Error::ZeroOrder);
        assert!(matches!(sym_poly::<Rational>(2, 3), Err(Error::DegreeTooLarge { .. })));
        assert!(dicke_poly(2, 3).is_err());
    }

    #[test]
    fn eta_small_orders() {
        assert_eq!(eta::<Rational>(1).unwrap(), G::theta(1, 1).unwrap());
        let e = eta::<Rational>(2).unwrap();
        assert_eq!(e.pow(2), sym_poly::<Rational>(2, 2).unwrap().scale(&rational_int(2)));
    }

    #[test]
    fn sym_poly_three_two() {
        let e2 = sym_poly::<Rational>(3, 2).unwrap();
        assert_eq!(e2.to_string(), "(1)*t{1,2} + (1)*t{1,3} + (1)*t{2,3}");
        assert_eq!(sym_poly::<Rational>(4, 0).unwrap(), G::one(4).unwrap());
    }

    #[test]
    fn eta_derivative_of_pair() {
        let t12 = G::monomial(2, GrassmannMonomial::from_indices(&[1, 2], &[]), Rational::one()).unwrap();
        assert_eq!(t12.eta_derivative(), eta::<Rational>(2).unwrap());
        // conjugate variables are constants for ∂_η
        assert!(G::theta_bar(2, 1).unwrap().eta_derivative().is_zero());
    }

    #[test]
    fn sigma_order_one() {
        let s = sigma_measure::<Rational>(1).unwrap();
        assert_eq!(s.to_string(), "1 + (1)*t{1}tb{1}");
    }

    #[test]
    fn monomial_text_form() {
        let m = GrassmannMonomial::from_indices(&[1, 3], &[2]);
        assert_eq!(m.to_string(), "t{1,3}tb{2}");
        assert_eq!(GrassmannMonomial::ONE.to_string(), "1");
    }

    #[test]
    fn subsets_enumeration_counts() {
        for k in 0..=8 {
            for n in 0..=k {
                let subsets = subsets_of_size(k, n);
                assert_eq!(BigInt::from(subsets.len()), crate::exactnum::binomial(k as u64, n as u64));
                assert!(subsets.iter().all(|s| s.count_ones() as usize == n));
            }
        }
    }

    #[test]
    fn dicke_poly_zero_is_one() {
        assert_eq!(dicke_poly(4, 0).unwrap(), GrassmannElement::one(4).unwrap());
    }
}
