//! Sparse square matrices over [`Radical`].

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exactnum::Rational;
use crate::{Error, Radical, Result};

/// Square matrix stored as one sorted sparse row per index. No stored zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseOperator {
    dim: usize,
    rows: Vec<BTreeMap<usize, Radical>>,
}

impl SparseOperator {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            rows: vec![BTreeMap::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal((0..dim).map(|_| Radical::one()))
    }

    pub fn diagonal<I: IntoIterator<Item = Radical>>(values: I) -> Self {
        let values: Vec<_> = values.into_iter().collect();
        let mut out = Self::zero(values.len());
        for (i, v) in values.into_iter().enumerate() {
            out.add_entry(i, i, v);
        }
        out
    }

    pub fn from_entries<I>(dim: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Radical)>,
    {
        let mut out = Self::zero(dim);
        for (r, c, v) in entries {
            out.add_entry(r, c, v);
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `value` to entry `(row, col)`, pruning a resulting zero.
    pub fn add_entry(&mut self, row: usize, col: usize, value: Radical) {
        assert!(row < self.dim && col < self.dim, "entry ({row}, {col}) outside dimension {}", self.dim);
        if value.is_zero() {
            return;
        }
        let slot = self.rows[row].entry(col).or_insert_with(Radical::zero);
        *slot += &value;
        if slot.is_zero() {
            self.rows[row].remove(&col);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Radical {
        self.rows[row].get(&col).cloned().unwrap_or_else(Radical::zero)
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Radical)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn row(&self, row: usize) -> impl Iterator<Item = (usize, &Radical)> {
        self.rows[row].iter().map(|(c, v)| (*c, v))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            Err(Error::DimensionMismatch(self.dim, other.dim))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_entry(r, c, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_entry(r, c, -v);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        self.scale_by(&Radical::from_rational(factor.clone()))
    }

    pub fn scale_by(&self, factor: &Radical) -> Self {
        let mut out = Self::zero(self.dim);
        for (r, c, v) in self.entries() {
            out.add_entry(r, c, v * factor);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, Radical> = BTreeMap::new();
            for (mid, a) in row {
                for (c, b) in &other.rows[*mid] {
                    *acc.entry(*c).or_insert_with(Radical::zero) += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.rows[r] = acc;
        }
        Ok(out)
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (r, c, v) in self.entries() {
            out.rows[c].insert(r, v.clone());
        }
        out
    }

    pub fn pow(&self, exponent: u32) -> Self {
        (0..exponent).fold(Self::identity(self.dim), |acc, _| {
            acc.mul(self).expect("same dimension")
        })
    }

    pub fn trace(&self) -> Radical {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// `y = A x` for a dense vector.
    pub fn apply(&self, x: &[Radical]) -> Result<Vec<Radical>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, x.len()));
        }
        Ok(self
            .rows
            .iter()
            .map(|row| row.iter().map(|(c, v)| v * &x[*c]).sum())
            .collect())
    }

    /// Keeps only entries whose row and column satisfy `keep`.
    pub fn restrict<F: Fn(usize) -> bool>(&self, keep: F) -> Self {
        let mut out = Self::zero(self.dim);
        for (r, c, v) in self.entries() {
            if keep(r) && keep(c) {
                out.rows[r].insert(c, v.clone());
            }
        }
        out
    }

    /// Entry of largest absolute value (exact comparison); first in
    /// row-major order on ties.
    pub fn max_abs_entry(&self) -> Option<(usize, usize, Radical)> {
        let mut best: Option<(usize, usize, Radical)> = None;
        for (r, c, v) in self.entries() {
            let mag = v.abs();
            match &best {
                Some((_, _, m)) if *m >= mag => {}
                _ => best = Some((r, c, mag)),
            }
        }
        best.map(|(r, c, _)| (r, c, self.get(r, c)))
    }
}

impl fmt::Debug for SparseOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseOperator(dim={})", self.dim)?;
        for (r, c, v) in self.entries() {
            writeln!(f, "  {r} {c} {v}")?;
        }
        Ok(())
    }
}
