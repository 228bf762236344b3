//! Multi-qubit realization of `A(1)`. Collective ladders on `k` qubits act
//! on the Dicke states exactly as the rank-1 Fock ladders act on `|n⟩`.
//!
//! Basis state `x` of the `2^k` space has qubit `i` excited (`|+⟩`) when
//! bit `i` of `x` is set. Qubit 0 is printed leftmost.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactnum::{binomial, factorial, Rational};
use crate::grassmann::{dicke_poly, eta};
use crate::{fock, CheckReport, Error, Radical, Result, SparseOperator};

pub const DEFAULT_QUBIT_CAP: usize = 12;

/// `+-+-…` rendering of a basis state of `k` qubits.
pub fn format_bits(bits: u32, qubits: usize) -> String {
    (0..qubits)
        .map(|i| if bits >> i & 1 == 1 { '+' } else { '-' })
        .collect()
}

/// Sparse state vector over the `2^k` computational basis.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiQubitVector {
    qubits: usize,
    amplitudes: BTreeMap<u32, Radical>,
}

impl MultiQubitVector {
    pub fn zero(qubits: usize) -> Self {
        Self {
            qubits,
            amplitudes: BTreeMap::new(),
        }
    }

    pub fn basis_state(qubits: usize, bits: u32) -> Self {
        let mut v = Self::zero(qubits);
        v.amplitudes.insert(bits, Radical::one());
        v
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitude(&self, bits: u32) -> Radical {
        self.amplitudes.get(&bits).cloned().unwrap_or_else(Radical::zero)
    }

    pub fn amplitudes(&self) -> impl Iterator<Item = (u32, &Radical)> {
        self.amplitudes.iter().map(|(b, a)| (*b, a))
    }

    pub fn is_zero(&self) -> bool {
        self.amplitudes.is_empty()
    }

    fn add_amplitude(&mut self, bits: u32, value: Radical) {
        if value.is_zero() {
            return;
        }
        let slot = self.amplitudes.entry(bits).or_insert_with(Radical::zero);
        *slot += &value;
        if slot.is_zero() {
            self.amplitudes.remove(&bits);
        }
    }

    pub fn scale(&self, factor: &Radical) -> Self {
        let mut out = Self::zero(self.qubits);
        for (b, a) in &self.amplitudes {
            out.add_amplitude(*b, a * factor);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, a) in &other.amplitudes {
            out.add_amplitude(*b, a.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, a) in &other.amplitudes {
            out.add_amplitude(*b, -a);
        }
        out
    }

    /// Real inner product (all amplitudes here are real).
    pub fn inner(&self, other: &Self) -> Radical {
        self.amplitudes
            .iter()
            .filter_map(|(b, a)| other.amplitudes.get(b).map(|c| a * c))
            .sum()
    }

    /// `op · self`, with `op` acting on the full `2^k` space.
    pub fn apply(&self, op: &SparseOperator) -> Self {
        assert_eq!(op.dim(), 1usize << self.qubits, "operator dimension");
        let mut out = Self::zero(self.qubits);
        // columns of op are needed: scan rows and pick the matching entries
        for row in 0..op.dim() {
            let value: Radical = op
                .row(row)
                .filter_map(|(c, v)| self.amplitudes.get(&(c as u32)).map(|a| v * a))
                .sum();
            out.add_amplitude(row as u32, value);
        }
        out
    }

    /// Largest-magnitude amplitude, as `bitstring value` text.
    fn max_entry(&self) -> Option<(String, Radical)> {
        let mut best: Option<(u32, Radical)> = None;
        for (b, a) in &self.amplitudes {
            let mag = a.abs();
            if best.as_ref().is_none_or(|(_, m)| mag > *m) {
                best = Some((*b, mag));
            }
        }
        best.map(|(b, m)| (format!("{} {}", format_bits(b, self.qubits), self.amplitude(b)), m))
    }
}

impl fmt::Display for MultiQubitVector {
    /// One `bitstring amplitude` line per nonzero amplitude.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, a) in &self.amplitudes {
            writeln!(f, "{} {}", format_bits(*b, self.qubits), a)?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiQubitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiQubitVector[k={}]\n{self}", self.qubits)
    }
}

/// Single-qubit `(q⁻, q⁺, N_q)` in the basis `(|−⟩, |+⟩)`.
pub fn single_qubit_ops() -> (SparseOperator, SparseOperator, SparseOperator) {
    let one = Radical::one;
    let lowering = SparseOperator::from_entries(2, [(0, 1, one())]);
    let raising = SparseOperator::from_entries(2, [(1, 0, one())]);
    let number = SparseOperator::from_entries(2, [(1, 1, one())]);
    (lowering, raising, number)
}

/// Collective operators `a^± = Σ_i q_i^±` and `N = Σ_i N_{q_i}` on `k` qubits.
#[derive(Clone, Debug)]
pub struct CollectiveOps {
    pub qubits: usize,
    pub lowering: SparseOperator,
    pub raising: SparseOperator,
    pub number: SparseOperator,
}

fn check_qubits(qubits: usize, cap: usize) -> Result<()> {
    if qubits == 0 || qubits > cap {
        Err(Error::QubitCount { count: qubits, cap })
    } else {
        Ok(())
    }
}

pub fn collective_ops(qubits: usize) -> Result<CollectiveOps> {
    collective_ops_capped(qubits, DEFAULT_QUBIT_CAP)
}

pub fn collective_ops_capped(qubits: usize, cap: usize) -> Result<CollectiveOps> {
    check_qubits(qubits, cap.min(31))?;
    let dim = 1usize << qubits;
    let mut lowering = SparseOperator::zero(dim);
    let mut raising = SparseOperator::zero(dim);
    let mut number = SparseOperator::zero(dim);
    for x in 0..dim {
        for i in 0..qubits {
            let bit = 1usize << i;
            if x & bit == 0 {
                raising.add_entry(x | bit, x, Radical::one());
            } else {
                lowering.add_entry(x & !bit, x, Radical::one());
            }
        }
        number.add_entry(x, x, Radical::from_integer(x.count_ones() as i64));
    }
    Ok(CollectiveOps {
        qubits,
        lowering,
        raising,
        number,
    })
}

/// Normalized Dicke state: amplitude `C(k,n)^{-1/2}` on every bitstring of
/// Hamming weight `n`.
pub fn dicke_state(qubits: usize, excitations: usize) -> Result<MultiQubitVector> {
    check_qubits(qubits, 31)?;
    if excitations > qubits {
        return Err(Error::DegreeTooLarge {
            degree: excitations,
            order: qubits,
        });
    }
    let count = binomial(qubits as u64, excitations as u64);
    let amplitude = Radical::sqrt_rational(&Rational::new(BigInt::one(), count))?;
    let mut v = MultiQubitVector::zero(qubits);
    for bits in crate::grassmann::subsets_of_size(qubits, excitations) {
        v.amplitudes.insert(bits, amplitude.clone());
    }
    Ok(v)
}

/// Which sign makes `lhs = sign · rhs` hold exactly, if any.
fn realized_sign(lhs: &SparseOperator, rhs: &SparseOperator) -> Option<i64> {
    if lhs.sub(rhs).ok()?.is_zero() {
        Some(1)
    } else if lhs.add(rhs).ok()?.is_zero() {
        Some(-1)
    } else {
        None
    }
}

/// Records which sign `[.., ..] = ±rhs` actually holds with, noting when it
/// is not the `stated` one.
fn record_sign(report: &mut CheckReport, name: &str, stated: i64, lhs: &SparseOperator, rhs: &SparseOperator, rhs_name: &str) {
    match realized_sign(lhs, rhs) {
        Some(s) => {
            let sign = if s > 0 { "+" } else { "-" };
            report.record(format!("{name} = {sign}{rhs_name} (realized sign)"), None);
            if s != stated {
                report.note(format!(
                    "{name}: realized sign {sign} differs from the stated convention"
                ));
            }
        }
        None => report.record(
            format!("{name} = ±{rhs_name}"),
            Some(("neither sign holds".into(), Radical::one())),
        ),
    }
}

fn record_vector(report: &mut CheckReport, relation: String, residual: &MultiQubitVector) {
    report.record(relation, residual.max_entry());
}

/// Exact checks of the qukit realization on `k` qubits.
pub fn verify_qukit(qubits: usize) -> Result<CheckReport> {
    verify_qukit_capped(qubits, DEFAULT_QUBIT_CAP)
}

pub fn verify_qukit_capped(qubits: usize, cap: usize) -> Result<CheckReport> {
    let ops = collective_ops_capped(qubits, cap)?;
    let k = qubits;
    let dim = 1usize << k;
    let mut report = CheckReport::new("qukit", 1, k as u32);

    // single-qubit algebra
    let (q_lo, q_hi, q_n) = single_qubit_ops();
    report.record_zero("(q+)^2 = 0", &q_hi.pow(2), |i| format_bits(i as u32, 1));
    report.record_zero("(q-)^2 = 0", &q_lo.pow(2), |i| format_bits(i as u32, 1));
    let id2 = SparseOperator::identity(2);
    let expected = id2.sub(&q_n.scale(&Rational::from_integer(2.into())))?;
    report.record_zero(
        "[q-, q+] = I2 - 2 Nq",
        &q_lo.commutator(&q_hi)?.sub(&expected)?,
        |i| format_bits(i as u32, 1),
    );
    record_sign(&mut report, "[Nq, q+]", -1, &q_n.commutator(&q_hi)?, &q_hi, "q+");
    record_sign(&mut report, "[Nq, q-]", 1, &q_n.commutator(&q_lo)?, &q_lo, "q-");

    let vacuum = MultiQubitVector::basis_state(k, 0);
    let dicke: Vec<MultiQubitVector> = (0..=k).map(|n| dicke_state(k, n)).collect::<Result<_>>()?;
    let f = |n: usize| (n * (k + 1 - n)) as u64;

    // (a+)^n |0⟩ = sqrt(n! k!/(k-n)!) |n⟩
    let mut power = vacuum.clone();
    for (n, d) in dicke.iter().enumerate() {
        let ratio = Rational::from_integer(factorial(n as u64) * factorial(k as u64) / factorial((k - n) as u64));
        let prefactor = Radical::sqrt_rational(&ratio)?;
        record_vector(
            &mut report,
            format!("(a+)^{n}|0> = sqrt({n}! {k}!/{}!) |{n}>", k - n),
            &power.sub(&d.scale(&prefactor)),
        );
        power = power.apply(&ops.raising);
    }
    record_vector(&mut report, format!("(a+)^{}|0> = 0", k + 1), &power);

    for (n, d) in dicke.iter().enumerate() {
        let up = d.apply(&ops.raising);
        let expected_up = if n < k {
            dicke[n + 1].scale(&Radical::sqrt(f(n + 1)))
        } else {
            MultiQubitVector::zero(k)
        };
        let up_label = if n < k {
            format!("a+|{n}> = sqrt(F({}))|{}>", n + 1, n + 1)
        } else {
            format!("a+|{n}> = 0")
        };
        record_vector(&mut report, up_label, &up.sub(&expected_up));
        let down = d.apply(&ops.lowering);
        let expected_down = if n > 0 {
            dicke[n - 1].scale(&Radical::sqrt(f(n)))
        } else {
            MultiQubitVector::zero(k)
        };
        let down_label = if n > 0 {
            format!("a-|{n}> = sqrt(F({n}))|{}>", n - 1)
        } else {
            "a-|0> = 0".to_string()
        };
        record_vector(&mut report, down_label, &down.sub(&expected_down));
        record_vector(
            &mut report,
            format!("N|{n}> = {n}|{n}>"),
            &d.apply(&ops.number).sub(&d.scale(&Radical::from_integer(n as i64))),
        );
    }
    let mut ortho_failure = None;
    for (n, d) in dicke.iter().enumerate() {
        for (m, e) in dicke.iter().enumerate() {
            let ip = d.inner(e);
            let target = if m == n { Radical::one() } else { Radical::zero() };
            if ip != target && ortho_failure.is_none() {
                ortho_failure = Some((format!("<{n}|{m}> = {ip}"), &ip - &target));
            }
        }
    }
    report.record("<n|m> = delta(n,m) for Dicke states", ortho_failure);

    let label = |i: usize| format_bits(i as u32, k);
    let comm = ops.lowering.commutator(&ops.raising)?;
    let expected = SparseOperator::identity(dim)
        .scale(&Rational::from_integer((k as i64).into()))
        .sub(&ops.number.scale(&Rational::from_integer(2.into())))?;
    report.record_zero("[a-, a+] = k I - 2N on the full space", &comm.sub(&expected)?, label);
    report.record_zero(format!("(a+)^{} = 0", k + 1), &ops.raising.pow(k as u32 + 1), label);
    report.record_zero(format!("(a-)^{} = 0", k + 1), &ops.lowering.pow(k as u32 + 1), label);

    record_sign(&mut report, "[N, a+]", 1, &ops.number.commutator(&ops.raising)?, &ops.raising, "a+");
    record_sign(&mut report, "[N, a-]", -1, &ops.number.commutator(&ops.lowering)?, &ops.lowering, "a-");
    let comm_hl = ops.raising.commutator(&ops.lowering)?;
    let two = Rational::from_integer(2.into());
    record_sign(
        &mut report,
        "[a-, [a+, a-]]",
        1,
        &ops.lowering.commutator(&comm_hl)?,
        &ops.lowering.scale(&two),
        "2 a-",
    );
    record_sign(
        &mut report,
        "[a+, [a+, a-]]",
        -1,
        &ops.raising.commutator(&comm_hl)?,
        &ops.raising.scale(&two),
        "2 a+",
    );

    // restriction to the Dicke span against the rank-1 Fock matrices
    let basis = fock::FockBasis::new(1, k as u32)?;
    let pairs = [
        ("a-", &ops.lowering, fock::annihilation(&basis, 0)?),
        ("a+", &ops.raising, fock::creation(&basis, 0)?),
        ("N", &ops.number, fock::number(&basis, 0)?),
    ];
    for (name, full, target) in pairs {
        let mut restricted = SparseOperator::zero(k + 1);
        let mut leaks = MultiQubitVector::zero(k);
        for (n, d) in dicke.iter().enumerate() {
            let image = d.apply(full);
            let mut projected = MultiQubitVector::zero(k);
            for (m, e) in dicke.iter().enumerate() {
                let c = e.inner(&image);
                projected = projected.add(&e.scale(&c));
                restricted.add_entry(m, n, c);
            }
            let leak = image.sub(&projected);
            if leaks.is_zero() {
                leaks = leak;
            }
        }
        record_vector(&mut report, format!("{name} preserves the Dicke span"), &leaks);
        report.record_zero(
            format!("{name} on Dicke span = Fock r=1 matrix"),
            &restricted.sub(&target)?,
            |i| format!("|{i}>"),
        );
    }
    Ok(report)
}

/// Checks that `|n⟩ ↦ D_n(θ)` intertwines `a^+` with `η·` and `a^-` with `∂_η`.
pub fn verify_grassmann_correspondence(order: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("qukit_grassmann", 1, order as u32);
    let basis = fock::FockBasis::new(1, order as u32)?;
    let raising = fock::creation(&basis, 0)?;
    let lowering = fock::annihilation(&basis, 0)?;
    let d: Vec<_> = (0..=order).map(|n| dicke_poly(order, n)).collect::<Result<_>>()?;
    let eta = eta::<Radical>(order)?;
    let image = |op: &SparseOperator, n: usize| -> Result<_> {
        let mut acc = crate::grassmann::GrassmannElement::zero(order)?;
        for (m, dm) in d.iter().enumerate() {
            let c = op.get(m, n);
            if !c.is_zero() {
                acc = acc.add(&dm.scale(&c))?;
            }
        }
        Ok(acc)
    };
    for (n, dn) in d.iter().enumerate() {
        let lhs = eta.mul(dn)?;
        let rhs = image(&raising, n)?;
        let diff = lhs.sub(&rhs)?;
        report.record(
            format!("eta D_{n} = image of a+|{n}>"),
            (!diff.is_zero()).then(|| (diff.to_string(), Radical::one())),
        );
        let lhs = dn.eta_derivative();
        let rhs = image(&lowering, n)?;
        let diff = lhs.sub(&rhs)?;
        report.record(
            format!("d_eta D_{n} = image of a-|{n}>"),
            (!diff.is_zero()).then(|| (diff.to_string(), Radical::one())),
        );
    }
    Ok(report)
}
