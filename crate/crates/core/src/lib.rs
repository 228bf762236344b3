//! Exact finite-dimensional representations of the generalized
//! Weyl-Heisenberg algebra `A(r)` and the Barut-Girardello coherent states
//! of `su(r+1)` built from them with commuting nilpotent Grassmann variables.
//!
//! Every identity is checked with exact arithmetic ([`exactnum::Radical`]);
//! there is no floating point anywhere in the verification paths.

pub mod bargmann;
pub mod coherent;
pub mod exactnum;
pub mod fock;
pub mod grassmann;
pub mod qukit;
pub mod report;
pub mod sparse;

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

pub use exactnum::{Radical, Rational};
pub use report::{CheckReport, RelationRecord};
pub use sparse::SparseOperator;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative radicand {0}")]
    NegativeRadicand(String),
    #[error("radicand {0} exceeds the supported range")]
    RadicandOverflow(String),
    #[error("Grassmann order must be positive")]
    ZeroOrder,
    #[error("Grassmann order {0} exceeds the supported maximum of 32")]
    OrderTooLarge(usize),
    #[error("Grassmann order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("degree {degree} exceeds order {order}")]
    DegreeTooLarge { degree: usize, order: usize },
    #[error("rank must be positive")]
    ZeroRank,
    #[error("level must be positive")]
    ZeroLevel,
    #[error("mode {mode} out of range for rank {rank}")]
    ModeOutOfRange { mode: usize, rank: usize },
    #[error("multi-index {occupations:?} is not in the basis of rank {rank}, level {level}")]
    InvalidMultiIndex {
        occupations: Vec<u32>,
        rank: usize,
        level: u32,
    },
    #[error("operator dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("qubit count {count} outside 1..={cap}")]
    QubitCount { count: usize, cap: usize },
    #[error("contraction window n_max = {n_max} must be below level {level}")]
    ContractionWindow { n_max: u32, level: u32 },
    #[error("spin must satisfy 2j >= 1")]
    InvalidSpin,
}

pub type Result<T> = std::result::Result<T, Error>;

/// A commutative ring with exact equality, used as the coefficient type of
/// Grassmann elements.
pub trait Coefficient:
    Clone + PartialEq + fmt::Display + fmt::Debug + Zero + One + Send + Sync
{
    fn from_rational(q: Rational) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn from_integer(n: i64) -> Self {
        Self::from_rational(exactnum::rational_int(n))
    }
}

impl Coefficient for Rational {
    fn from_rational(q: Rational) -> Self {
        q
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl Coefficient for Radical {
    fn from_rational(q: Rational) -> Self {
        Radical::from_rational(q)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}
