use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use whg_core::fock::{self, FockBasis};
use whg_core::grassmann::{GrassmannElement, GrassmannMonomial};
use whg_core::{Radical, Rational};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn radical() -> impl Strategy<Value = Radical> {
    prop::collection::vec((small_rational(), 0u64..=30), 0..4).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(q, m)| Radical::normalize(q, m))
            .fold(Radical::zero(), |acc, t| acc + t)
    })
}

fn grassmann_element(order: usize) -> impl Strategy<Value = GrassmannElement<Rational>> {
    let full = (1u32 << order) - 1;
    prop::collection::vec((0..=full, 0..=full, small_rational()), 0..6).prop_map(move |terms| {
        terms.into_iter().fold(GrassmannElement::zero(order).unwrap(), |acc, (t, tb, c)| {
            let m = GrassmannElement::monomial(order, GrassmannMonomial::new(t, tb), c).unwrap();
            acc.add(&m).unwrap()
        })
    })
}

fn grassmann_triple() -> impl Strategy<Value = (GrassmannElement<Rational>, GrassmannElement<Rational>, GrassmannElement<Rational>)> {
    (1usize..=6).prop_flat_map(|k| (grassmann_element(k), grassmann_element(k), grassmann_element(k)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn radical_ring_axioms(a in radical(), b in radical(), c in radical()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Radical::one(), a.clone());
    }

    #[test]
    fn radical_sign_is_consistent(a in radical(), b in radical()) {
        let d = &a - &b;
        prop_assert_eq!(a.cmp(&b) as i32, d.signum());
        if !d.is_zero() {
            prop_assert_eq!((d.to_f64() > 0.0) as i32 * 2 - 1, d.signum());
        }
    }

    #[test]
    fn normalize_is_idempotent(q in small_rational(), m in 0u64..=5000) {
        let once = Radical::normalize(q, m);
        let again = once
            .terms()
            .map(|(rad, coef)| Radical::normalize(coef.clone(), rad))
            .fold(Radical::zero(), |acc, t| acc + t);
        prop_assert_eq!(&again, &once);
        for (rad, _) in once.terms() {
            prop_assert!(whg_core::exactnum::is_square_free(rad));
        }
    }

    #[test]
    fn grassmann_ring_axioms((a, b, c) in grassmann_triple()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.mul(&GrassmannElement::one(a.order()).unwrap()).unwrap(), a.clone());
    }

    #[test]
    fn eta_derivative_is_linear_and_nilpotent((a, b, _c) in grassmann_triple()) {
        let lhs = a.add(&b).unwrap().eta_derivative();
        let rhs = a.eta_derivative().add(&b.eta_derivative()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(a.eta_derivative_pow(a.order() as u32 + 1).is_zero());
    }

    #[test]
    fn rank_unrank_round_trip(r in 1usize..=4, k in 1u32..=6, seed in any::<u64>()) {
        let basis = FockBasis::new(r, k).unwrap();
        let idx = (seed % basis.len() as u64) as usize;
        let n = basis.unrank(idx).unwrap().clone();
        prop_assert_eq!(basis.rank_of(&n), Some(idx));
    }

    #[test]
    fn creation_is_transpose_of_annihilation(r in 1usize..=3, k in 1u32..=5) {
        let basis = FockBasis::new(r, k).unwrap();
        for i in 0..r {
            let lo = fock::annihilation(&basis, i).unwrap();
            let hi = fock::creation(&basis, i).unwrap();
            prop_assert_eq!(hi, lo.transpose());
        }
    }
}

#[test]
fn sqrt_squares_back_for_small_integers() {
    for a in 0..=10_000u64 {
        let s = Radical::sqrt(a);
        assert_eq!(&s * &s, Radical::from_integer(a as i64), "a = {a}");
    }
}

#[test]
fn dimension_identity_against_brute_force() {
    fn count(r: usize, budget: u32) -> usize {
        if r == 0 {
            return 1;
        }
        (0..=budget).map(|x| count(r - 1, budget - x)).sum()
    }
    for r in 1..=4 {
        for k in 1..=6 {
            assert_eq!(FockBasis::new(r, k).unwrap().len(), count(r, k));
            assert_eq!(FockBasis::dimension_of(r, k), count(r, k));
        }
    }
}
