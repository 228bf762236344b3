//! Barut-Girardello coherent states of `su(r+1)` in the symmetric
//! representation of level `k`.
//!
//! Eigenvalues of the commuting lowering ladders must be nilpotent, so
//! they are written `λ_i = η z_i` with one generalized Grassmann variable
//! `η` (`η^{k+1} = 0`) and complex labels `z_i`. Entries of a state live in
//! the ring of polynomials in `η, η̄, z_i, z̄_i` with [`Radical`]
//! coefficients, all kept symbolic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bargmann::basis_coefficient;
use crate::exactnum::{factorial, rational, Rational};
use crate::fock::{self, compositions_of, format_tuple, FockBasis, MultiIndex};
use crate::grassmann;
use crate::{CheckReport, Error, Radical, Result, SparseOperator};

/// Exponents of `z_1..z_r` and `z̄_1..z̄_r`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZMonomial {
    pub z: Vec<u32>,
    pub z_bar: Vec<u32>,
}

impl ZMonomial {
    pub fn one(rank: usize) -> Self {
        Self {
            z: vec![0; rank],
            z_bar: vec![0; rank],
        }
    }

    fn times(&self, other: &Self) -> Self {
        Self {
            z: self.z.iter().zip(&other.z).map(|(a, b)| a + b).collect(),
            z_bar: self.z_bar.iter().zip(&other.z_bar).map(|(a, b)| a + b).collect(),
        }
    }

    fn conjugate(&self) -> Self {
        Self {
            z: self.z_bar.clone(),
            z_bar: self.z.clone(),
        }
    }
}

/// Key of one term: `η^p η̄^q` times a z-monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolicKey {
    pub eta: u32,
    pub eta_bar: u32,
    pub z: ZMonomial,
}

/// Polynomial in `η, η̄, z, z̄` truncated at `η^{k+1} = η̄^{k+1} = 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct SymbolicCoefficient {
    rank: usize,
    level: u32,
    terms: BTreeMap<SymbolicKey, Radical>,
}

impl SymbolicCoefficient {
    pub fn zero(rank: usize, level: u32) -> Self {
        Self {
            rank,
            level,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(rank: usize, level: u32, key: SymbolicKey, value: Radical) -> Self {
        let mut out = Self::zero(rank, level);
        out.add_term(key, value);
        out
    }

    pub fn constant(rank: usize, level: u32, value: Radical) -> Self {
        Self::term(
            rank,
            level,
            SymbolicKey {
                eta: 0,
                eta_bar: 0,
                z: ZMonomial::one(rank),
            },
            value,
        )
    }

    /// The eigenvalue `λ_i = η z_i` (0-based mode).
    pub fn lambda(rank: usize, level: u32, mode: usize) -> Self {
        let mut z = ZMonomial::one(rank);
        z.z[mode] = 1;
        Self::term(
            rank,
            level,
            SymbolicKey {
                eta: 1,
                eta_bar: 0,
                z,
            },
            Radical::one(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymbolicKey, &Radical)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &SymbolicKey) -> Radical {
        self.terms.get(key).cloned().unwrap_or_else(Radical::zero)
    }

    fn add_term(&mut self, key: SymbolicKey, value: Radical) {
        if value.is_zero() || key.eta > self.level || key.eta_bar > self.level {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(slot) => {
                *slot += &value;
                if slot.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, value);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Radical::from_integer(-1)))
    }

    pub fn scale(&self, factor: &Radical) -> Self {
        let mut out = Self::zero(self.rank, self.level);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * factor);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.rank, self.level);
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let key = SymbolicKey {
                    eta: ka.eta + kb.eta,
                    eta_bar: ka.eta_bar + kb.eta_bar,
                    z: ka.z.times(&kb.z),
                };
                out.add_term(key, va * vb);
            }
        }
        out
    }

    /// Complex conjugation: `η ↔ η̄`, `z_i ↔ z̄_i`; coefficients are real.
    pub fn conjugate(&self) -> Self {
        let mut out = Self::zero(self.rank, self.level);
        for (k, v) in &self.terms {
            out.add_term(
                SymbolicKey {
                    eta: k.eta_bar,
                    eta_bar: k.eta,
                    z: k.z.conjugate(),
                },
                v.clone(),
            );
        }
        out
    }

    fn max_term(&self) -> Option<(String, Radical)> {
        self.terms
            .iter()
            .max_by(|a, b| a.1.abs().cmp(&b.1.abs()))
            .map(|(k, v)| (format!("{} at {}", v, format_key(k)), v.clone()))
    }
}

fn format_key(k: &SymbolicKey) -> String {
    format!(
        "eta^{} etabar^{} z^{} zbar^{}",
        k.eta,
        k.eta_bar,
        format_tuple(&k.z.z),
        format_tuple(&k.z.z_bar)
    )
}

impl fmt::Display for SymbolicCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({v}) {}", format_key(k))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymbolicCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymbolicCoefficient({self})")
    }
}

/// Unnormalized coherent state `Σ_n C_n η^{Σn} z^n |n⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherentState {
    pub basis: FockBasis,
    pub entries: Vec<SymbolicCoefficient>,
}

/// JSON record of one state entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryRecord {
    pub index: Vec<u32>,
    pub coefficient: String,
    pub eta_power: u32,
    pub z_monomial: Vec<u32>,
}

impl CoherentState {
    /// One record per basis vector, in basis order.
    pub fn entry_records(&self) -> Vec<EntryRecord> {
        self.basis
            .states()
            .iter()
            .zip(&self.entries)
            .map(|(n, entry)| {
                let (key, coefficient) = entry
                    .terms()
                    .next()
                    .map(|(k, v)| (k.clone(), v.clone()))
                    .expect("state entries are single nonzero terms");
                EntryRecord {
                    index: n.clone(),
                    coefficient: coefficient.to_string(),
                    eta_power: key.eta,
                    z_monomial: key.z.z,
                }
            })
            .collect()
    }
}

/// Spin-`j` matrices in the basis `|n⟩ = |j, n - j⟩`, `n = 0..2j`.
#[derive(Clone, Debug)]
pub struct SpinOperators {
    pub two_j: u32,
    pub plus: SparseOperator,
    pub minus: SparseOperator,
    pub z: SparseOperator,
    pub casimir: SparseOperator,
}

pub fn spin_operators(two_j: u32) -> Result<(SpinOperators, CheckReport)> {
    if two_j < 1 {
        return Err(Error::InvalidSpin);
    }
    let dim = two_j as usize + 1;
    let j = rational(two_j as i64, 2);
    let m_of = |n: usize| Rational::from_integer(BigInt::from(n)) - &j;
    let one = Rational::one();
    let mut plus = SparseOperator::zero(dim);
    let mut minus = SparseOperator::zero(dim);
    for n in 0..dim {
        let m = m_of(n);
        // j+ |j,m⟩ = sqrt((j+m+1)(j-m)) |j,m+1⟩
        let up = (&j + &m + &one) * (&j - &m);
        if n + 1 < dim {
            plus.add_entry(n + 1, n, Radical::sqrt_rational(&up)?);
        }
        // j- |j,m⟩ = sqrt((j+m)(j-m+1)) |j,m-1⟩
        let down = (&j + &m) * (&j - &m + &one);
        if n > 0 {
            minus.add_entry(n - 1, n, Radical::sqrt_rational(&down)?);
        }
    }
    let z = SparseOperator::diagonal((0..dim).map(|n| Radical::from_rational(m_of(n))));
    let half = rational(1, 2);
    let casimir = z
        .mul(&z)?
        .add(&plus.mul(&minus)?.add(&minus.mul(&plus)?)?.scale(&half))?;

    let mut report = CheckReport::new("spin", 1, two_j);
    let label = |n: usize| format!("|{n}>");
    report.record_zero("[jz, j+] = +j+", &z.commutator(&plus)?.sub(&plus)?, label);
    report.record_zero("[jz, j-] = -j-", &z.commutator(&minus)?.add(&minus)?, label);
    report.record_zero("[j+, j-] = 2 jz", &plus.commutator(&minus)?.sub(&z.scale(&rational(2, 1)))?, label);
    let jj1 = &j * (&j + &one);
    report.record_zero(
        format!("j^2 = j(j+1) I = {jj1} I"),
        &casimir.sub(&SparseOperator::identity(dim).scale(&jj1))?,
        label,
    );
    let basis = FockBasis::new(1, two_j)?;
    report.record_zero("j+ = a+ (r=1, k=2j)", &plus.sub(&fock::creation(&basis, 0)?)?, label);
    report.record_zero("j- = a- (r=1, k=2j)", &minus.sub(&fock::annihilation(&basis, 0)?)?, label);
    let n_minus_j = fock::number(&basis, 0)?.sub(&SparseOperator::identity(dim).scale(&j))?;
    report.record_zero("jz = N - j I", &z.sub(&n_minus_j)?, label);
    Ok((
        SpinOperators {
            two_j,
            plus,
            minus,
            z,
            casimir,
        },
        report,
    ))
}

/// Closed form `C_n = sqrt((k - Σn)! / (k! ∏ n_i!))` for every basis index.
pub fn bg_coefficients(rank: usize, level: u32) -> Result<BTreeMap<MultiIndex, Radical>> {
    let basis = FockBasis::new(rank, level)?;
    basis
        .states()
        .iter()
        .map(|n| Ok((n.clone(), basis_coefficient(level, n)?)))
        .collect()
}

/// Coefficients generated from `C_0 = 1` by the eigenvalue recurrences
/// `C_{n+e_i} sqrt((n_i + 1)(k - Σn)) = C_n`, stepping along the last
/// occupied mode.
pub fn bg_coefficients_by_recurrence(rank: usize, level: u32) -> Result<BTreeMap<MultiIndex, Radical>> {
    let basis = FockBasis::new(rank, level)?;
    let mut out: BTreeMap<MultiIndex, Radical> = BTreeMap::new();
    for n in basis.states() {
        let Some(mode) = n.iter().rposition(|&x| x > 0) else {
            out.insert(n.clone(), Radical::one());
            continue;
        };
        let mut prev = n.clone();
        prev[mode] -= 1;
        let total_prev: u32 = prev.iter().sum();
        let step = Rational::new(
            BigInt::one(),
            BigInt::from(n[mode] as u64 * (level - total_prev) as u64),
        );
        let value = &out[&prev] * &Radical::sqrt_rational(&step)?;
        out.insert(n.clone(), value);
    }
    Ok(out)
}

/// Closed form against recurrences and the rank-1/rank-2 special forms.
pub fn recurrence_check(rank: usize, level: u32) -> Result<CheckReport> {
    let closed = bg_coefficients(rank, level)?;
    let iterated = bg_coefficients_by_recurrence(rank, level)?;
    let mut report = CheckReport::new("bg_recurrence", rank, level);
    let mismatch = closed
        .iter()
        .find(|(n, c)| iterated.get(*n) != Some(c))
        .map(|(n, c)| {
            let other = iterated.get(n).cloned().unwrap_or_default();
            (format!("{} closed {} iterated {}", format_tuple(n), c, other), c - &other)
        });
    report.record("iterated recurrence from C_0 = 1 equals closed form", mismatch);

    // every mode's recurrence, not only the one used to iterate
    let mut failure = None;
    for (n, c) in &closed {
        let total: u32 = n.iter().sum();
        if total == level {
            continue;
        }
        for mode in 0..rank {
            let mut next = n.clone();
            next[mode] += 1;
            let factor = Radical::sqrt((n[mode] as u64 + 1) * (level - total) as u64);
            let lhs = &closed[&next] * &factor;
            if &lhs != c && failure.is_none() {
                failure = Some((format!("{} mode {}", format_tuple(n), mode + 1), &lhs - c));
            }
        }
    }
    report.record("C_(n+e_i) sqrt((n_i+1)(k-|n|)) = C_n for every mode", failure);

    let sqrt_ratio = |num: BigInt, den: BigInt| Radical::sqrt_rational(&Rational::new(num, den));
    if rank == 1 {
        let mut failure = None;
        for (n, c) in &closed {
            let n0 = n[0] as u64;
            let expected = sqrt_ratio(factorial(level as u64 - n0), factorial(n0) * factorial(level as u64))?;
            if &expected != c && failure.is_none() {
                failure = Some((format_tuple(n), c - &expected));
            }
        }
        report.record("C_n = sqrt((2j-n)!/(n!(2j)!))", failure);
    }
    if rank == 2 {
        let k = level as u64;
        let mut failure = None;
        for (idx, c) in &closed {
            let (n, l) = (idx[0] as u64, idx[1] as u64);
            let c0l = sqrt_ratio(factorial(k - l), factorial(k) * factorial(l))?;
            let expected = &c0l * &sqrt_ratio(factorial(k - n - l), factorial(k - l) * factorial(n))?;
            if &expected != c && failure.is_none() {
                failure = Some((format_tuple(idx), c - &expected));
            }
        }
        report.record("C_(n,l) = C_(0,l) sqrt((k-n-l)!/((k-l)! n!)), C_(0,l) = sqrt((k-l)!/(k! l!))", failure);
    }
    Ok(report)
}

/// `|η, z⟩ = Σ_n C_n η^{Σn} z_1^{n_1}⋯z_r^{n_r} |n⟩`, unnormalized.
pub fn build_coherent_state(rank: usize, level: u32) -> Result<CoherentState> {
    let basis = FockBasis::new(rank, level)?;
    let entries = basis
        .states()
        .iter()
        .map(|n| {
            let key = SymbolicKey {
                eta: n.iter().sum(),
                eta_bar: 0,
                z: ZMonomial {
                    z: n.clone(),
                    z_bar: vec![0; rank],
                },
            };
            Ok(SymbolicCoefficient::term(rank, level, key, basis_coefficient(level, n)?))
        })
        .collect::<Result<_>>()?;
    Ok(CoherentState { basis, entries })
}

/// `|N|^{-2} = Σ_n C_n² η^{Σn} η̄^{Σn} ∏ |z_i|^{2 n_i}`.
pub fn normalization_inverse_square(rank: usize, level: u32) -> Result<SymbolicCoefficient> {
    let basis = FockBasis::new(rank, level)?;
    let mut out = SymbolicCoefficient::zero(rank, level);
    for n in basis.states() {
        let total: u32 = n.iter().sum();
        let denom = n
            .iter()
            .fold(factorial(level as u64), |acc, &x| acc * factorial(x as u64));
        let c2 = Rational::new(factorial((level - total) as u64), denom);
        out.add_term(
            SymbolicKey {
                eta: total,
                eta_bar: total,
                z: ZMonomial {
                    z: n.clone(),
                    z_bar: n.clone(),
                },
            },
            Radical::from_rational(c2),
        );
    }
    Ok(out)
}

/// `(op · state)_n = Σ_m op[n, m] state_m`, entrywise on symbolic entries.
pub fn apply_operator(op: &SparseOperator, state: &CoherentState) -> Vec<SymbolicCoefficient> {
    let rank = state.basis.rank();
    let level = state.basis.level();
    (0..op.dim())
        .map(|row| {
            op.row(row).fold(SymbolicCoefficient::zero(rank, level), |acc, (col, v)| {
                acc.add(&state.entries[col].scale(v))
            })
        })
        .collect()
}

/// `j_i^-|η,z⟩ = η z_i |η,z⟩` for every mode, plus `λ`-nilpotency.
pub fn eigen_check(rank: usize, level: u32) -> Result<CheckReport> {
    let state = build_coherent_state(rank, level)?;
    let (ladders, _) = fock::commuting_ladders(rank, level)?;
    let mut report = CheckReport::new("bg_eigen", rank, level);
    for mode in 0..rank {
        let lhs = apply_operator(&ladders.lowering[mode], &state);
        let lambda = SymbolicCoefficient::lambda(rank, level, mode);
        let mut failure = None;
        for (idx, (l, entry)) in lhs.iter().zip(&state.entries).enumerate() {
            let diff = l.sub(&lambda.mul(entry));
            if let (true, Some((w, v))) = (failure.is_none(), diff.max_term()) {
                failure = Some((format!("{}: {}", state.basis.label(idx), w), v));
            }
        }
        report.record(format!("j{}- |eta,z> = eta z{} |eta,z>", mode + 1, mode + 1), failure);
    }
    let lambdas: Vec<_> = (0..rank)
        .map(|i| SymbolicCoefficient::lambda(rank, level, i))
        .collect();
    let mut witness = None;
    for exps in compositions_of(level + 1, rank) {
        let product = exps.iter().zip(&lambdas).fold(
            SymbolicCoefficient::constant(rank, level, Radical::one()),
            |acc, (&e, lam)| (0..e).fold(acc, |a, _| a.mul(lam)),
        );
        if !product.is_zero() && witness.is_none() {
            witness = Some((format_tuple(&exps), Radical::one()));
        }
    }
    report.record("prod lambda_i^{n_i} = 0 for sum n = k+1", witness);
    Ok(report)
}

/// `∫ z^n z̄^m e^{-|z|²} d²z/π = n! δ_{nm}`.
pub fn gaussian_moment(n: u32, m: u32) -> Rational {
    if n == m {
        Rational::from_integer(factorial(n as u64))
    } else {
        Rational::zero()
    }
}

pub use crate::grassmann::THETA_MOMENT_MAX_ORDER;

/// `∫ |η,z⟩ dμ ⟨η,z| = I` with `dμ = |N|^{-2} σ dη dη̄ ∏ e^{-|z_i|²} d²z_i/π`.
///
/// The `|N|^{-2}` in the measure cancels the state normalization, so the
/// states enter unnormalized.
pub fn resolution_check(rank: usize, level: u32) -> Result<CheckReport> {
    let state = build_coherent_state(rank, level)?;
    let mut report = CheckReport::new("resolution", rank, level);

    let closed: Vec<Vec<Rational>> = (0..=level)
        .map(|p| (0..=level).map(|q| grassmann::sigma_moment_closed_form(level, p, q)).collect())
        .collect();
    let moments = if level as usize <= THETA_MOMENT_MAX_ORDER {
        let table = grassmann::sigma_moment_table(level as usize)?;
        let mismatch = (0..=level as usize)
            .flat_map(|p| (0..=level as usize).map(move |q| (p, q)))
            .find(|&(p, q)| table[p][q] != closed[p][q])
            .map(|(p, q)| {
                (
                    format!("p={p} q={q}: theta {} closed {}", table[p][q], closed[p][q]),
                    Radical::from_rational(&table[p][q] - &closed[p][q]),
                )
            });
        report.record("int sigma eta^p etabar^q = delta(p,q) k!/(k-p)!", mismatch);
        table
    } else {
        report.note(format!(
            "sigma moments taken from the closed form above order {THETA_MOMENT_MAX_ORDER}"
        ));
        closed
    };

    let dim = state.basis.len();
    let conjugates: Vec<_> = state.entries.iter().map(SymbolicCoefficient::conjugate).collect();
    let integrate = |x: &SymbolicCoefficient| -> Radical {
        x.terms()
            .map(|(key, c)| {
                let mut weight = moments[key.eta as usize][key.eta_bar as usize].clone();
                for (zn, zm) in key.z.z.iter().zip(&key.z.z_bar) {
                    if weight.is_zero() {
                        break;
                    }
                    weight *= gaussian_moment(*zn, *zm);
                }
                c * &Radical::from_rational(weight)
            })
            .sum()
    };
    let entries: Vec<(usize, usize, Radical)> = (0..dim * dim)
        .into_par_iter()
        .map(|idx| {
            let (row, col) = (idx / dim, idx % dim);
            let product = state.entries[row].mul(&conjugates[col]);
            (row, col, integrate(&product))
        })
        .collect();
    let assembled = SparseOperator::from_entries(dim, entries);
    let residual = assembled.sub(&SparseOperator::identity(dim))?;
    report.record_zero("int |eta,z> dmu <eta,z| = I", &residual, |i| state.basis.label(i));
    if residual.is_zero() {
        report.note("identity: exact");
    }
    Ok(report)
}
