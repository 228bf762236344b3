//! Finite Fock representation of `A(r)` at level `k`.
//!
//! The basis is every occupation tuple `(n_1..n_r)` with `Σ n_i ≤ k`, in
//! graded lexicographic order. Ladder matrix elements follow the structure
//! function `F_i(n) = n_i (k + 1 - Σ n)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::exactnum::{binomial, rational_int, Rational};
use crate::{CheckReport, Error, Radical, Result, SparseOperator};

/// Occupation tuple of a Fock state.
pub type MultiIndex = Vec<u32>;

/// All occupation tuples of rank `r` with total at most `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockBasis {
    rank: usize,
    level: u32,
    states: Vec<MultiIndex>,
}

fn count_u64(n: BigInt) -> usize {
    usize::try_from(n).expect("count fits in usize")
}

/// Number of tuples of `parts` nonnegative integers summing to `total`.
fn compositions(total: u32, parts: usize) -> usize {
    if parts == 0 {
        return usize::from(total == 0);
    }
    count_u64(binomial(total as u64 + parts as u64 - 1, parts as u64 - 1))
}

/// Tuples of length `parts` summing to `total`, lexicographically ascending.
pub fn compositions_of(total: u32, parts: usize) -> Vec<MultiIndex> {
    fn go(total: u32, parts: usize, prefix: &mut MultiIndex, out: &mut Vec<MultiIndex>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for v in 0..=total {
            prefix.push(v);
            go(total - v, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

impl FockBasis {
    pub fn new(rank: usize, level: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        if level == 0 {
            return Err(Error::ZeroLevel);
        }
        let states = (0..=level)
            .flat_map(|s| compositions_of(s, rank))
            .collect();
        Ok(Self {
            rank,
            level,
            states,
        })
    }

    /// `(k + r)! / (k! r!)` without building the basis.
    pub fn dimension_of(rank: usize, level: u32) -> usize {
        count_u64(binomial(level as u64 + rank as u64, rank as u64))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[MultiIndex] {
        &self.states
    }

    pub fn unrank(&self, index: usize) -> Option<&MultiIndex> {
        self.states.get(index)
    }

    /// Position of `n` in the graded lexicographic order, computed
    /// combinatorially.
    pub fn rank_of(&self, n: &[u32]) -> Option<usize> {
        if n.len() != self.rank {
            return None;
        }
        let total: u32 = n.iter().sum();
        if total > self.level {
            return None;
        }
        // tuples with a smaller total
        let mut index = if total == 0 {
            0
        } else {
            count_u64(binomial(total as u64 - 1 + self.rank as u64, self.rank as u64))
        };
        let mut remaining = total;
        for (pos, &value) in n.iter().enumerate().take(self.rank - 1) {
            let parts_after = self.rank - pos - 1;
            for smaller in 0..value {
                index += compositions(remaining - smaller, parts_after);
            }
            remaining -= value;
        }
        Some(index)
    }

    fn checked_rank(&self, n: &[u32]) -> Result<usize> {
        self.rank_of(n).ok_or_else(|| Error::InvalidMultiIndex {
            occupations: n.to_vec(),
            rank: self.rank,
            level: self.level,
        })
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.rank {
            Err(Error::ModeOutOfRange {
                mode,
                rank: self.rank,
            })
        } else {
            Ok(())
        }
    }

    /// `(n1,...,nr)` text label of basis index `index`.
    pub fn label(&self, index: usize) -> String {
        format_tuple(&self.states[index])
    }

    /// One line per nonzero entry: `row col value`, rows and columns as tuples.
    pub fn dump_operator(&self, op: &SparseOperator) -> String {
        let mut out = String::new();
        for (r, c, v) in op.entries() {
            let _ = writeln!(out, "{} {} {}", self.label(r), self.label(c), v);
        }
        out
    }
}

pub fn format_tuple(n: &[u32]) -> String {
    let parts: Vec<String> = n.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

/// `F_i(n) = n_i (k + 1 - Σ n)` for 0-based mode `i`.
pub fn structure_function(basis: &FockBasis, mode: usize, n: &[u32]) -> Result<Rational> {
    basis.check_mode(mode)?;
    basis.checked_rank(n)?;
    let total: i64 = n.iter().map(|&x| x as i64).sum();
    Ok(rational_int(n[mode] as i64 * (basis.level as i64 + 1 - total)))
}

fn ladder_sqrt(basis: &FockBasis, mode: usize, n: &[u32]) -> Radical {
    let total: u64 = n.iter().map(|&x| x as u64).sum();
    Radical::sqrt(n[mode] as u64 * (basis.level as u64 + 1 - total))
}

/// `a_i^-|n⟩ = sqrt(n_i (k + 1 - Σn)) |n - e_i⟩`.
pub fn annihilation(basis: &FockBasis, mode: usize) -> Result<SparseOperator> {
    basis.check_mode(mode)?;
    let mut op = SparseOperator::zero(basis.len());
    for (col, n) in basis.states.iter().enumerate() {
        if n[mode] == 0 {
            continue;
        }
        let mut lowered = n.clone();
        lowered[mode] -= 1;
        let row = basis.checked_rank(&lowered)?;
        op.add_entry(row, col, ladder_sqrt(basis, mode, n));
    }
    Ok(op)
}

/// `a_i^+|n⟩ = sqrt((n_i + 1)(k - Σn)) |n + e_i⟩`, zero on the top shell.
pub fn creation(basis: &FockBasis, mode: usize) -> Result<SparseOperator> {
    basis.check_mode(mode)?;
    let mut op = SparseOperator::zero(basis.len());
    for (col, n) in basis.states.iter().enumerate() {
        let total: u32 = n.iter().sum();
        if total == basis.level {
            continue;
        }
        let mut raised = n.clone();
        raised[mode] += 1;
        let row = basis.checked_rank(&raised)?;
        op.add_entry(row, col, ladder_sqrt(basis, mode, &raised));
    }
    Ok(op)
}

/// Diagonal `N_i`.
pub fn number(basis: &FockBasis, mode: usize) -> Result<SparseOperator> {
    basis.check_mode(mode)?;
    Ok(SparseOperator::diagonal(
        basis.states.iter().map(|n| Radical::from_integer(n[mode] as i64)),
    ))
}

/// Diagonal `Σ_j N_j`.
pub fn total_number(basis: &FockBasis) -> SparseOperator {
    SparseOperator::diagonal(
        basis
            .states
            .iter()
            .map(|n| Radical::from_integer(n.iter().map(|&x| x as i64).sum())),
    )
}

/// The `3r` generators of `A(r)` in one place.
#[derive(Clone, Debug)]
pub struct Ladders {
    pub basis: FockBasis,
    pub lowering: Vec<SparseOperator>,
    pub raising: Vec<SparseOperator>,
    pub number: Vec<SparseOperator>,
}

impl Ladders {
    pub fn new(rank: usize, level: u32) -> Result<Self> {
        let basis = FockBasis::new(rank, level)?;
        let lowering = (0..rank).map(|i| annihilation(&basis, i)).collect::<Result<_>>()?;
        let raising = (0..rank).map(|i| creation(&basis, i)).collect::<Result<_>>()?;
        let number = (0..rank).map(|i| number(&basis, i)).collect::<Result<_>>()?;
        Ok(Self {
            basis,
            lowering,
            raising,
            number,
        })
    }

    /// `k·I - (Σ_j N_j + N_i)`.
    pub fn expected_commutator(&self, mode: usize) -> SparseOperator {
        let k = Radical::from_integer(self.basis.level as i64);
        SparseOperator::diagonal(self.basis.states.iter().map(|n| {
            let total: i64 = n.iter().map(|&x| x as i64).sum();
            &k - &Radical::from_integer(total + n[mode] as i64)
        }))
    }
}

type Residual<'a> = Box<dyn Fn() -> SparseOperator + Send + Sync + 'a>;

/// Evaluates named residuals concurrently and records them in declaration order.
fn record_residuals(report: &mut CheckReport, basis: &FockBasis, checks: Vec<(String, Residual<'_>)>) {
    let residuals: Vec<(String, SparseOperator)> = checks
        .into_par_iter()
        .map(|(name, f)| (name, f()))
        .collect();
    for (name, residual) in residuals {
        report.record_zero(name, &residual, |i| basis.label(i));
    }
}

fn comm(a: &SparseOperator, b: &SparseOperator) -> SparseOperator {
    a.commutator(b).expect("operators share a basis")
}

fn minus(a: &SparseOperator, b: &SparseOperator) -> SparseOperator {
    a.sub(b).expect("operators share a basis")
}

/// Checks the defining relations of `A(r)` on the level-`k` representation.
pub fn verify_wh_relations(rank: usize, level: u32) -> Result<CheckReport> {
    let l = Ladders::new(rank, level)?;
    let mut report = CheckReport::new("wh_relations", rank, level);
    let mut checks: Vec<(String, Residual<'_>)> = Vec::new();
    let l = &l;
    for i in 0..rank {
        checks.push((
            format!("[a{0}-, a{0}+] = k I - (sum N + N{0})", i + 1),
            Box::new(move || minus(&comm(&l.lowering[i], &l.raising[i]), &l.expected_commutator(i))),
        ));
    }
    for i in 0..rank {
        for j in 0..rank {
            let delta = i == j;
            checks.push((
                format!("[N{}, a{}+] = {}", i + 1, j + 1, if delta { format!("+a{}+", j + 1) } else { "0".into() }),
                Box::new(move || {
                    let lhs = comm(&l.number[i], &l.raising[j]);
                    if delta { minus(&lhs, &l.raising[j]) } else { lhs }
                }),
            ));
            checks.push((
                format!("[N{}, a{}-] = {}", i + 1, j + 1, if delta { format!("-a{}-", j + 1) } else { "0".into() }),
                Box::new(move || {
                    let lhs = comm(&l.number[i], &l.lowering[j]);
                    if delta { lhs.add(&l.lowering[j]).expect("same basis") } else { lhs }
                }),
            ));
        }
    }
    for i in 0..rank {
        for j in 0..rank {
            if i == j {
                continue;
            }
            if i < j {
                checks.push((
                    format!("[a{}+, a{}+] = 0", i + 1, j + 1),
                    Box::new(move || comm(&l.raising[i], &l.raising[j])),
                ));
                checks.push((
                    format!("[a{}-, a{}-] = 0", i + 1, j + 1),
                    Box::new(move || comm(&l.lowering[i], &l.lowering[j])),
                ));
            }
            checks.push((
                format!("[a{0}+, [a{0}+, a{1}-]] = 0", i + 1, j + 1),
                Box::new(move || comm(&l.raising[i], &comm(&l.raising[i], &l.lowering[j]))),
            ));
            checks.push((
                format!("[a{0}-, [a{0}-, a{1}+]] = 0", i + 1, j + 1),
                Box::new(move || comm(&l.lowering[i], &comm(&l.lowering[i], &l.raising[j]))),
            ));
        }
    }
    record_residuals(&mut report, &l.basis, checks);
    Ok(report)
}

/// The `r(r+2)` generators of `su(r+1)` realized through `A(r)`.
#[derive(Clone, Debug)]
pub struct SuGenerators {
    /// `E_{+α} = a_α^+`
    pub raising: Vec<SparseOperator>,
    /// `E_{-α} = a_α^-`
    pub lowering: Vec<SparseOperator>,
    /// `H_i = ½(k·I - (Σ N_j + N_i))`
    pub cartan: Vec<SparseOperator>,
    /// `E_{+α,-β} = [a_α^+, a_β^-]` for `α ≠ β`, keyed by `(α, β)`.
    pub mixed: BTreeMap<(usize, usize), SparseOperator>,
}

impl SuGenerators {
    pub fn count(&self) -> usize {
        self.raising.len() + self.lowering.len() + self.cartan.len() + self.mixed.len()
    }
}

pub fn su_generators(rank: usize, level: u32) -> Result<(SuGenerators, CheckReport)> {
    let l = Ladders::new(rank, level)?;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let cartan: Vec<_> = (0..rank).map(|i| l.expected_commutator(i).scale(&half)).collect();
    let mut mixed = BTreeMap::new();
    for a in 0..rank {
        for b in 0..rank {
            if a != b {
                mixed.insert((a, b), comm(&l.raising[a], &l.lowering[b]));
            }
        }
    }
    let mut report = CheckReport::new("su_generators", rank, level);
    let gens = SuGenerators {
        raising: l.raising.clone(),
        lowering: l.lowering.clone(),
        cartan,
        mixed,
    };
    let expected = rank * (rank + 2);
    report.record_bool(format!("generator count = r(r+2) = {expected}"), gens.count() == expected, || {
        format!("found {}", gens.count())
    });

    let basis = &l.basis;
    for (&(i, j), op) in &gens.mixed {
        // [a_i^+, a_j^-]|n⟩ = sqrt(n_j (n_i + 1)) |n + e_i - e_j⟩
        let mut expected = SparseOperator::zero(basis.len());
        for (col, n) in basis.states().iter().enumerate() {
            if n[j] == 0 {
                continue;
            }
            let mut target = n.clone();
            target[i] += 1;
            target[j] -= 1;
            let row = basis.checked_rank(&target)?;
            expected.add_entry(row, col, Radical::sqrt(n[j] as u64 * (n[i] as u64 + 1)));
        }
        report.record_zero(
            format!("[a{}+, a{}-]|n> = sqrt(n{} (n{} + 1)) |n + e{} - e{}>", i + 1, j + 1, j + 1, i + 1, i + 1, j + 1),
            &minus(op, &expected),
            |x| basis.label(x),
        );
        let trace = op.trace();
        report.record(
            format!("tr E(+{}, -{}) = 0", i + 1, j + 1),
            (!trace.is_zero()).then(|| (trace.to_string(), trace.clone())),
        );
        let total = total_number(basis);
        report.record_zero(
            format!("[sum N, [a{}+, a{}-]] = 0", i + 1, j + 1),
            &comm(&total, op),
            |x| basis.label(x),
        );
    }
    Ok((gens, report))
}

/// Cartan matrix of `su(r+1)`: 2 on the diagonal, -1 on the first off-diagonals.
pub fn cartan_matrix(rank: usize) -> Vec<Vec<i64>> {
    (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

/// Boson bilinear `b_p^+ b_q^-` restricted to `Σ_{i=0}^{r} n_i = k`, with the
/// reference mode `n_0 = k - Σ_{i≥1} n_i` eliminated. Modes are `0..=r`.
pub fn boson_bilinear(basis: &FockBasis, create: usize, destroy: usize) -> Result<SparseOperator> {
    let r = basis.rank();
    if create > r || destroy > r {
        return Err(Error::ModeOutOfRange {
            mode: create.max(destroy),
            rank: r + 1,
        });
    }
    let k = basis.level();
    let mut op = SparseOperator::zero(basis.len());
    for (col, n) in basis.states().iter().enumerate() {
        let mut full: Vec<u32> = Vec::with_capacity(r + 1);
        full.push(k - n.iter().sum::<u32>());
        full.extend_from_slice(n);
        if full[destroy] == 0 {
            continue;
        }
        let mut amplitude = full[destroy] as u64;
        full[destroy] -= 1;
        full[create] += 1;
        amplitude *= full[create] as u64;
        let row = basis.checked_rank(&full[1..])?;
        op.add_entry(row, col, Radical::sqrt(amplitude));
    }
    Ok(op)
}

/// Chevalley generators `e_i = b_{i-1}^+ b_i^-`, `f_i = b_{i-1}^- b_i^+`,
/// `h_i = N_{i-1} - N_i` on the symmetric representation.
#[derive(Clone, Debug)]
pub struct Chevalley {
    pub basis: FockBasis,
    pub e: Vec<SparseOperator>,
    pub f: Vec<SparseOperator>,
    pub h: Vec<SparseOperator>,
}

impl Chevalley {
    pub fn new(rank: usize, level: u32) -> Result<Self> {
        let basis = FockBasis::new(rank, level)?;
        let mut e = Vec::with_capacity(rank);
        let mut f = Vec::with_capacity(rank);
        let mut h = Vec::with_capacity(rank);
        for i in 1..=rank {
            e.push(boson_bilinear(&basis, i - 1, i)?);
            f.push(boson_bilinear(&basis, i, i - 1)?);
            h.push(boson_bilinear(&basis, i - 1, i - 1)?.sub(&boson_bilinear(&basis, i, i)?)?);
        }
        Ok(Self { basis, e, f, h })
    }
}

/// Chevalley-Serre relations of `su(r+1)` on the symmetric representation.
pub fn serre_check(rank: usize, level: u32) -> Result<CheckReport> {
    let ch = Chevalley::new(rank, level)?;
    let a = cartan_matrix(rank);
    let mut report = CheckReport::new("serre", rank, level);
    if rank < 2 {
        report.note("rank 1: Serre relations are vacuous, only [e,f] and [h,e], [h,f] checked");
    }
    let ch = &ch;
    let a = &a;
    let mut checks: Vec<(String, Residual<'_>)> = Vec::new();
    for (i, row) in a.iter().enumerate() {
        for (j, &a_ij) in row.iter().enumerate() {
            checks.push((
                format!("[e{}, f{}] = {}", i + 1, j + 1, if i == j { format!("h{}", j + 1) } else { "0".into() }),
                Box::new(move || {
                    let lhs = comm(&ch.e[i], &ch.f[j]);
                    if i == j { minus(&lhs, &ch.h[j]) } else { lhs }
                }),
            ));
            let aij = Rational::from_integer(BigInt::from(a_ij));
            let neg_aij = -aij.clone();
            checks.push((
                format!("[h{}, e{}] = ({}) e{}", i + 1, j + 1, a_ij, j + 1),
                Box::new(move || minus(&comm(&ch.h[i], &ch.e[j]), &ch.e[j].scale(&aij))),
            ));
            checks.push((
                format!("[h{}, f{}] = -({}) f{}", i + 1, j + 1, a_ij, j + 1),
                Box::new(move || minus(&comm(&ch.h[i], &ch.f[j]), &ch.f[j].scale(&neg_aij))),
            ));
        }
    }
    for i in 0..rank {
        for j in (i + 1)..rank {
            if j - i > 1 {
                checks.push((format!("[e{}, e{}] = 0", i + 1, j + 1), Box::new(move || comm(&ch.e[i], &ch.e[j]))));
                checks.push((format!("[f{}, f{}] = 0", i + 1, j + 1), Box::new(move || comm(&ch.f[i], &ch.f[j]))));
            }
        }
    }
    let serre = |x: &SparseOperator, y: &SparseOperator| -> SparseOperator {
        let x2 = x.mul(x).expect("same basis");
        let t1 = x2.mul(y).expect("same basis");
        let t2 = x.mul(y).and_then(|m| m.mul(x)).expect("same basis");
        let t3 = y.mul(&x2).expect("same basis");
        t1.sub(&t2.scale(&rational_int(2))).and_then(|s| s.add(&t3)).expect("same basis")
    };
    let serre = &serre;
    for i in 0..rank {
        for j in [i.wrapping_sub(1), i + 1] {
            if j >= rank {
                continue;
            }
            checks.push((
                format!("e{0}^2 e{1} - 2 e{0} e{1} e{0} + e{1} e{0}^2 = 0", i + 1, j + 1),
                Box::new(move || serre(&ch.e[i], &ch.e[j])),
            ));
            checks.push((
                format!("f{0}^2 f{1} - 2 f{0} f{1} f{0} + f{1} f{0}^2 = 0", i + 1, j + 1),
                Box::new(move || serre(&ch.f[i], &ch.f[j])),
            ));
        }
    }
    record_residuals(&mut report, &ch.basis, checks);
    Ok(report)
}

/// Mutually commuting ladders `j_i^±` built from the Chevalley generators.
#[derive(Clone, Debug)]
pub struct CommutingLadders {
    pub raising: Vec<SparseOperator>,
    pub lowering: Vec<SparseOperator>,
}

/// Builds `j_1^+ = f_1`, `j_i^+ = [f_i, j_{i-1}^+]` and `j_1^- = e_1`,
/// `j_i^- = [j_{i-1}^-, e_i]`, then checks they coincide with the `A(r)`
/// ladders, commute among themselves, and obey the joint nilpotency.
pub fn commuting_ladders(rank: usize, level: u32) -> Result<(CommutingLadders, CheckReport)> {
    let ch = Chevalley::new(rank, level)?;
    let l = Ladders::new(rank, level)?;
    let basis = &ch.basis;
    let mut raising: Vec<SparseOperator> = vec![ch.f[0].clone()];
    let mut lowering: Vec<SparseOperator> = vec![ch.e[0].clone()];
    for i in 1..rank {
        raising.push(comm(&ch.f[i], &raising[i - 1]));
        lowering.push(comm(&lowering[i - 1], &ch.e[i]));
    }
    let mut report = CheckReport::new("commuting_ladders", rank, level);
    let label = |x: usize| basis.label(x);
    for i in 0..rank {
        report.record_zero(format!("j{}- = a{}-", i + 1, i + 1), &minus(&lowering[i], &l.lowering[i]), label);
        report.record_zero(format!("j{}+ = a{}+", i + 1, i + 1), &minus(&raising[i], &l.raising[i]), label);
        report.record_zero(
            format!("j{}- = b0+ b{}-", i + 1, i + 1),
            &minus(&lowering[i], &boson_bilinear(basis, 0, i + 1)?),
            label,
        );
        report.record_zero(
            format!("j{}+ = (j{}-)^T", i + 1, i + 1),
            &minus(&raising[i], &lowering[i].transpose()),
            label,
        );
    }
    for i in 0..rank {
        for j in (i + 1)..rank {
            report.record_zero(format!("[j{}-, j{}-] = 0", i + 1, j + 1), &comm(&lowering[i], &lowering[j]), label);
            report.record_zero(format!("[j{}+, j{}+] = 0", i + 1, j + 1), &comm(&raising[i], &raising[j]), label);
        }
    }
    let mut raising_ok = None;
    let mut lowering_ok = None;
    for exps in compositions_of(level + 1, rank) {
        let product = |ops: &[SparseOperator]| {
            exps.iter()
                .zip(ops)
                .fold(SparseOperator::identity(basis.len()), |acc, (&e, op)| {
                    acc.mul(&op.pow(e)).expect("same basis")
                })
        };
        if raising_ok.is_none() {
            let p = product(&raising);
            if !p.is_zero() {
                raising_ok = Some(format_tuple(&exps));
            }
        }
        if lowering_ok.is_none() {
            let p = product(&lowering);
            if !p.is_zero() {
                lowering_ok = Some(format_tuple(&exps));
            }
        }
    }
    report.record(
        "prod (j_i+)^{l_i} = 0 for sum l = k+1",
        raising_ok.map(|w| (format!("exponents {w}"), Radical::from_integer(1))),
    );
    report.record(
        "prod (j_i-)^{l_i} = 0 for sum l = k+1",
        lowering_ok.map(|w| (format!("exponents {w}"), Radical::from_integer(1))),
    );
    Ok((CommutingLadders { raising, lowering }, report))
}

/// Largest deviations of the `1/k`-scaled commutators from the oscillator
/// algebra on the window `Σ n ≤ n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LargeKDeviation {
    /// `max |[a_i^-, a_i^+]/k - I|` over the window (always rational).
    pub same_mode: Rational,
    /// `max |[a_i^-, a_j^+]/k|` over the window, `i ≠ j`.
    pub cross_mode: Radical,
    /// Cross-mode entries sit exactly at `⟨n + e_j - e_i| ... |n⟩` with value
    /// `-sqrt(n_i (n_j + 1))/k`, and nowhere else.
    pub cross_pattern_exact: bool,
}

impl LargeKDeviation {
    /// Both deviations are at most `2·n_max/k`.
    pub fn within_bound(&self, n_max: u32, level: u32) -> bool {
        let bound = Rational::new(BigInt::from(2 * n_max), BigInt::from(level));
        self.same_mode <= bound && self.cross_mode <= Radical::from_rational(bound)
    }
}

pub fn large_k_deviation(rank: usize, level: u32, n_max: u32) -> Result<LargeKDeviation> {
    if n_max >= level {
        return Err(Error::ContractionWindow { n_max, level });
    }
    let l = Ladders::new(rank, level)?;
    let basis = &l.basis;
    let inside = |idx: usize| basis.states[idx].iter().sum::<u32>() <= n_max;
    let inv_k = Rational::new(BigInt::one(), BigInt::from(level));
    let identity = SparseOperator::identity(basis.len());

    let mut same_mode = Rational::zero();
    let mut cross_mode = Radical::zero();
    let mut cross_pattern_exact = true;
    for i in 0..rank {
        let scaled = comm(&l.lowering[i], &l.raising[i]).scale(&inv_k);
        let dev = minus(&scaled, &identity).restrict(inside);
        if let Some((_, _, v)) = dev.max_abs_entry() {
            let v = v.abs().to_rational().expect("diagonal deviation is rational");
            if v > same_mode {
                same_mode = v;
            }
        }
        for j in 0..rank {
            if i == j {
                continue;
            }
            let cross = comm(&l.lowering[i], &l.raising[j]).scale(&inv_k).restrict(inside);
            if let Some((_, _, v)) = cross.max_abs_entry() {
                let v = v.abs();
                if v > cross_mode {
                    cross_mode = v;
                }
            }
            let mut expected = SparseOperator::zero(basis.len());
            for (col, n) in basis.states.iter().enumerate() {
                if !inside(col) || n[i] == 0 {
                    continue;
                }
                let mut target = n.clone();
                target[i] -= 1;
                target[j] += 1;
                let row = basis.checked_rank(&target)?;
                if inside(row) {
                    let amp = Radical::sqrt(n[i] as u64 * (n[j] as u64 + 1)).scale(&-inv_k.clone());
                    expected.add_entry(row, col, amp);
                }
            }
            cross_pattern_exact &= cross == expected;
        }
    }
    Ok(LargeKDeviation {
        same_mode,
        cross_mode,
        cross_pattern_exact,
    })
}

/// Runs the large-`k` contraction as a report entry.
pub fn large_k_report(rank: usize, level: u32, n_max: u32) -> Result<CheckReport> {
    let dev = large_k_deviation(rank, level, n_max)?;
    let mut report = CheckReport::new("large_k", rank, level);
    let bound = Rational::new(BigInt::from(2 * n_max), BigInt::from(level));
    report.record_bool(
        format!("max |[ai-, ai+]/k - I| on sum n <= {n_max} is {} <= {bound}", dev.same_mode),
        dev.same_mode <= bound,
        || dev.same_mode.to_string(),
    );
    report.record_bool(
        format!("max |[ai-, aj+]/k| on sum n <= {n_max} is {} <= {bound}", dev.cross_mode),
        dev.cross_mode <= Radical::from_rational(bound.clone()),
        || dev.cross_mode.to_string(),
    );
    report.record_bool("cross-mode entries only at |n + ej - ei>", dev.cross_pattern_exact, || {
        "off-pattern entry".into()
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational;

    #[test]
    fn basis_sizes() {
        assert_eq!(FockBasis::new(2, 2).unwrap().len(), 6);
        assert_eq!(FockBasis::new(1, 1).unwrap().len(), 2);
        assert_eq!(FockBasis::new(3, 4).unwrap().len(), 35);
        assert_eq!(FockBasis::new(0, 2).unwrap_err(), Error::ZeroRank);
        assert_eq!(FockBasis::new(2, 0).unwrap_err(), Error::ZeroLevel);
    }

    #[test]
    fn graded_lex_order() {
        let b = FockBasis::new(2, 2).unwrap();
        let labels: Vec<_> = (0..b.len()).map(|i| b.label(i)).collect();
        assert_eq!(labels, ["(0,0)", "(0,1)", "(1,0)", "(0,2)", "(1,1)", "(2,0)"]);
    }

    #[test]
    fn structure_function_values() {
        let b1 = FockBasis::new(1, 2).unwrap();
        assert_eq!(structure_function(&b1, 0, &[1]).unwrap(), rational_int(2));
        let b2 = FockBasis::new(2, 2).unwrap();
        assert_eq!(structure_function(&b2, 0, &[1, 1]).unwrap(), rational_int(1));
        assert_eq!(structure_function(&b2, 1, &[2, 0]).unwrap(), rational_int(0));
        assert!(structure_function(&b2, 0, &[2, 1]).is_err());
        assert!(structure_function(&b2, 2, &[0, 0]).is_err());
    }

    #[test]
    fn qubit_creation_matrix() {
        let b = FockBasis::new(1, 1).unwrap();
        let c = creation(&b, 0).unwrap();
        assert_eq!(c.nnz(), 1);
        assert_eq!(c.get(1, 0), Radical::one());
    }

    #[test]
    fn annihilation_amplitudes() {
        let b = FockBasis::new(1, 2).unwrap();
        let a = annihilation(&b, 0).unwrap();
        assert_eq!(a.get(1, 2), Radical::sqrt(2));
        let b3 = FockBasis::new(3, 2).unwrap();
        for i in 0..3 {
            let a = annihilation(&b3, i).unwrap();
            // vacuum column is empty
            assert!((0..b3.len()).all(|r| a.get(r, 0).is_zero()));
        }
        assert!(matches!(annihilation(&b3, 3), Err(Error::ModeOutOfRange { .. })));
    }

    #[test]
    fn commutator_examples() {
        let l = Ladders::new(2, 3).unwrap();
        assert!(comm(&l.raising[0], &l.raising[0]).is_zero());
        assert_eq!(comm(&l.number[0], &l.raising[0]), l.raising[0]);
        assert!(comm(&l.raising[0], &l.raising[1]).is_zero());
    }

    #[test]
    fn small_relation_suites_pass() {
        for (r, k) in [(1, 1), (2, 3), (3, 2)] {
            let rep = verify_wh_relations(r, k).unwrap();
            assert!(rep.passed, "{rep}");
        }
    }

    #[test]
    fn mixed_generator_action() {
        let (gens, rep) = su_generators(2, 1).unwrap();
        assert!(rep.passed, "{rep}");
        let b = FockBasis::new(2, 1).unwrap();
        let col = b.rank_of(&[0, 1]).unwrap();
        let row = b.rank_of(&[1, 0]).unwrap();
        assert_eq!(gens.mixed[&(0, 1)].get(row, col), Radical::one());
    }

    #[test]
    fn cartan_r1_diagonal() {
        let (gens, _) = su_generators(1, 3).unwrap();
        for n in 0..=3u32 {
            assert_eq!(
                gens.cartan[0].get(n as usize, n as usize),
                Radical::from_rational(rational(3 - 2 * n as i64, 2))
            );
        }
    }

    #[test]
    fn cartan_matrix_r3() {
        assert_eq!(cartan_matrix(3), vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
    }

    #[test]
    fn serre_small() {
        assert!(serre_check(2, 1).unwrap().passed);
        assert!(serre_check(2, 2).unwrap().passed);
    }

    #[test]
    fn commuting_ladders_small() {
        let (ladders, rep) = commuting_ladders(2, 2).unwrap();
        assert!(rep.passed, "{rep}");
        assert!(ladders.lowering[0].pow(3).is_zero());
    }

    #[test]
    fn large_k_vacuum_and_window() {
        let d = large_k_deviation(1, 7, 0).unwrap();
        assert_eq!(d.same_mode, Rational::zero());
        let d = large_k_deviation(1, 100, 3).unwrap();
        assert_eq!(d.same_mode, rational(6, 100));
        assert!(d.within_bound(3, 100));
        assert!(large_k_deviation(1, 3, 3).is_err());
    }

    #[test]
    fn dump_uses_tuples() {
        let b = FockBasis::new(2, 1).unwrap();
        let a = creation(&b, 1).unwrap();
        assert_eq!(b.dump_operator(&a), "(0,1) (0,0) 1\n");
    }
}
