//! Fock-Bargmann realization of `A(r)`: functions of `r` generalized
//! Grassmann variables `η_1..η_r` in the commutative algebra truncated at
//! total degree `k`. Creation acts as multiplication by `η_i`, annihilation
//! as the η-derivative.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exactnum::{factorial, Rational};
use crate::fock::{self, compositions_of, format_tuple, FockBasis};
use crate::grassmann::{eta, GrassmannElement};
use crate::{CheckReport, Error, Radical, Result, SparseOperator};

/// Exponent tuple `(l_1..l_r)` of `η_1^{l_1}⋯η_r^{l_r}`.
pub type TruncatedMonomial = Vec<u32>;

/// Sparse polynomial in `η_1..η_r` with every monomial of total degree `≤ k`.
#[derive(Clone, PartialEq, Eq)]
pub struct BargmannFunction {
    rank: usize,
    level: u32,
    terms: BTreeMap<TruncatedMonomial, Radical>,
}

impl BargmannFunction {
    pub fn zero(rank: usize, level: u32) -> Self {
        Self {
            rank,
            level,
            terms: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TruncatedMonomial, &Radical)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Radical {
        self.terms.get(exponents).cloned().unwrap_or_else(Radical::zero)
    }

    fn add_term(&mut self, exponents: TruncatedMonomial, value: Radical) {
        if value.is_zero() || exponents.iter().sum::<u32>() > self.level {
            return;
        }
        let slot = self.terms.entry(exponents.clone()).or_insert_with(Radical::zero);
        *slot += &value;
        if slot.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Radical::from_integer(-1)))
    }

    pub fn scale(&self, factor: &Radical) -> Self {
        let mut out = Self::zero(self.rank, self.level);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * factor);
        }
        out
    }
}

impl fmt::Display for BargmannFunction {
    /// One `(l1,…,lr) coefficient` line per term.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, c) in &self.terms {
            writeln!(f, "{} {}", format_tuple(m), c)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BargmannFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BargmannFunction[r={}, k={}]\n{self}", self.rank, self.level)
    }
}

/// `sqrt((k - Σn)! / (k! ∏ n_i!))`.
pub fn basis_coefficient(level: u32, n: &[u32]) -> Result<Radical> {
    let total: u32 = n.iter().sum();
    let denom = n
        .iter()
        .fold(factorial(level as u64), |acc, &x| acc * factorial(x as u64));
    Radical::sqrt_rational(&Rational::new(factorial((level - total) as u64), denom))
}

/// `f_n = sqrt((k - Σn)! / (k! ∏ n_i!)) ∏ η_i^{n_i}`.
pub fn basis_function(rank: usize, level: u32, n: &[u32]) -> Result<BargmannFunction> {
    let total: u32 = n.iter().sum();
    if n.len() != rank || total > level {
        return Err(Error::InvalidMultiIndex {
            occupations: n.to_vec(),
            rank,
            level,
        });
    }
    let mut f = BargmannFunction::zero(rank, level);
    f.add_term(n.to_vec(), basis_coefficient(level, n)?);
    Ok(f)
}

fn check_mode(f: &BargmannFunction, mode: usize) -> Result<()> {
    if mode >= f.rank {
        Err(Error::ModeOutOfRange {
            mode,
            rank: f.rank,
        })
    } else {
        Ok(())
    }
}

/// Multiplication by `η_i`; terms reaching total degree `k + 1` vanish.
pub fn multiply_by_eta(mode: usize, f: &BargmannFunction) -> Result<BargmannFunction> {
    check_mode(f, mode)?;
    let mut out = BargmannFunction::zero(f.rank, f.level);
    for (m, c) in &f.terms {
        let mut raised = m.clone();
        raised[mode] += 1;
        out.add_term(raised, c.clone());
    }
    Ok(out)
}

/// `∂/∂η_i`: the monomial `η^l` maps to `l_i (k + 1 - Σl) η^{l - e_i}`.
pub fn eta_partial(mode: usize, f: &BargmannFunction) -> Result<BargmannFunction> {
    check_mode(f, mode)?;
    let mut out = BargmannFunction::zero(f.rank, f.level);
    for (m, c) in &f.terms {
        let li = m[mode];
        if li == 0 {
            continue;
        }
        let total: u32 = m.iter().sum();
        let factor = Radical::from_integer(li as i64 * (f.level as i64 + 1 - total as i64));
        let mut lowered = m.clone();
        lowered[mode] -= 1;
        out.add_term(lowered, c * &factor);
    }
    Ok(out)
}

/// `Σ_m op[m, col] f_m`: the image of column `col` under `|n⟩ ↦ f_n`.
fn column_image(basis: &FockBasis, op: &SparseOperator, col: usize, functions: &[BargmannFunction]) -> BargmannFunction {
    let mut acc = BargmannFunction::zero(basis.rank(), basis.level());
    for (m, f) in functions.iter().enumerate() {
        let c = op.get(m, col);
        if !c.is_zero() {
            acc = acc.add(&f.scale(&c));
        }
    }
    acc
}

fn record_function(report: &mut CheckReport, relation: String, residual: &BargmannFunction) {
    let failure = residual
        .terms
        .iter()
        .max_by(|a, b| a.1.abs().cmp(&b.1.abs()))
        .map(|(m, c)| (format!("{} {}", format_tuple(m), c), c.clone()));
    report.record(relation, failure);
}

/// Exact equivalence of the Bargmann and matrix representations.
pub fn verify_bargmann(rank: usize, level: u32) -> Result<CheckReport> {
    let basis = FockBasis::new(rank, level)?;
    let functions: Vec<BargmannFunction> = basis
        .states()
        .iter()
        .map(|n| basis_function(rank, level, n))
        .collect::<Result<_>>()?;
    let mut report = CheckReport::new("bargmann", rank, level);
    report.record_bool("f_(0,...,0) = 1", functions[0].coefficient(&vec![0; rank]) == Radical::one(), || {
        functions[0].to_string()
    });

    for mode in 0..rank {
        let raising = fock::creation(&basis, mode)?;
        let lowering = fock::annihilation(&basis, mode)?;
        let mut up_failure: Option<BargmannFunction> = None;
        let mut down_failure: Option<BargmannFunction> = None;
        for (col, f) in functions.iter().enumerate() {
            let up = multiply_by_eta(mode, f)?.sub(&column_image(&basis, &raising, col, &functions));
            if !up.is_zero() && up_failure.is_none() {
                up_failure = Some(up);
            }
            let down = eta_partial(mode, f)?.sub(&column_image(&basis, &lowering, col, &functions));
            if !down.is_zero() && down_failure.is_none() {
                down_failure = Some(down);
            }
        }
        let zero = BargmannFunction::zero(rank, level);
        record_function(
            &mut report,
            format!("eta{} f_n = image of a{}+|n> for all n", mode + 1, mode + 1),
            up_failure.as_ref().unwrap_or(&zero),
        );
        record_function(
            &mut report,
            format!("d/d eta{} f_n = image of a{}-|n> for all n", mode + 1, mode + 1),
            down_failure.as_ref().unwrap_or(&zero),
        );
    }

    // joint nilpotency at total order k + 1
    let mut mult_witness = None;
    let mut deriv_witness = None;
    for exps in compositions_of(level + 1, rank) {
        for f in &functions {
            let mut m = f.clone();
            let mut d = f.clone();
            for (mode, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    m = multiply_by_eta(mode, &m)?;
                    d = eta_partial(mode, &d)?;
                }
            }
            if !m.is_zero() && mult_witness.is_none() {
                mult_witness = Some(format_tuple(&exps));
            }
            if !d.is_zero() && deriv_witness.is_none() {
                deriv_witness = Some(format_tuple(&exps));
            }
        }
    }
    report.record(
        "prod eta_i^{l_i} = 0 for sum l = k+1",
        mult_witness.map(|w| (w, Radical::one())),
    );
    report.record(
        "prod (d/d eta_i)^{l_i} = 0 for sum l = k+1",
        deriv_witness.map(|w| (w, Radical::one())),
    );

    if rank == 1 {
        let concrete = verify_theta_realization(level)?;
        report.absorb("theta realization: ", concrete);
    }
    Ok(report)
}

/// Image of a rank-1 function under `η^l ↦ (Σ θ_i)^l`, using the closed
/// form `η^l = l!·e_l`.
pub fn to_theta(f: &BargmannFunction) -> Result<GrassmannElement<Radical>> {
    let order = f.level as usize;
    let mut acc = GrassmannElement::zero(order)?;
    for (m, c) in &f.terms {
        let l = m[0] as usize;
        let e_l = crate::grassmann::sym_poly::<Radical>(order, l)?;
        let scale = Radical::from_rational(Rational::from_integer(factorial(l as u64)));
        acc = acc.add(&e_l.scale(&(c * &scale)))?;
    }
    Ok(acc)
}

/// Rank-1 cross-check against commuting θ variables: the abstract
/// truncated algebra maps onto the subalgebra generated by `η = Σ θ_i`.
pub fn verify_theta_realization(level: u32) -> Result<CheckReport> {
    let order = level as usize;
    let mut report = CheckReport::new("bargmann_theta", 1, level);
    let eta_theta = eta::<Radical>(order)?;
    let mut power_theta = GrassmannElement::<Radical>::one(order)?;
    for l in 0..=level + 1 {
        let mut monomial = BargmannFunction::zero(1, level);
        monomial.add_term(vec![l], Radical::one());
        let image = to_theta(&monomial)?;
        let diff = image.sub(&power_theta)?;
        report.record(
            format!("phi(eta^{l}) = (sum theta)^{l}"),
            (!diff.is_zero()).then(|| (diff.to_string(), Radical::one())),
        );
        if l <= level {
            let mult = to_theta(&multiply_by_eta(0, &monomial)?)?;
            let diff = mult.sub(&eta_theta.mul(&image)?)?;
            report.record(
                format!("phi(eta * eta^{l}) = eta_theta * phi(eta^{l})"),
                (!diff.is_zero()).then(|| (diff.to_string(), Radical::one())),
            );
            let deriv = to_theta(&eta_partial(0, &monomial)?)?;
            let diff = deriv.sub(&image.eta_derivative())?;
            report.record(
                format!("phi(d eta^{l}) = d_eta phi(eta^{l})"),
                (!diff.is_zero()).then(|| (diff.to_string(), Radical::one())),
            );
        }
        power_theta = power_theta.mul(&eta_theta)?;
    }
    // both sides are (k+1)-dimensional: η^k ≠ 0 and η^{k+1} = 0
    let top = eta_theta.pow(level);
    let beyond = eta_theta.pow(level + 1);
    report.record_bool(
        format!("dimension k+1 = {}: eta^k != 0, eta^(k+1) = 0", level + 1),
        !top.is_zero() && beyond.is_zero(),
        || format!("eta^k zero: {}, eta^(k+1) zero: {}", top.is_zero(), beyond.is_zero()),
    );
    let expected_top = Rational::from_integer(factorial(level as u64));
    let top_coeff = top.coefficient(&crate::grassmann::GrassmannMonomial::new((1u32 << order) - 1, 0));
    report.record_bool(
        "eta^k = k! theta_1...theta_k",
        top_coeff == Radical::from_rational(expected_top) && top.len() == 1,
        || top.to_string(),
    );
    Ok(report)
}
