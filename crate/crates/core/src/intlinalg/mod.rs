//! Exact sparse integer linear algebra: Smith normal form, ranks over Q and
//! Z/p, integer and rational solving, and finitely generated abelian groups.

mod eliminate;
mod group;
mod ring;
mod sms;
mod snf;
mod sparse;

use std::time::Duration;

use thiserror::Error;

pub(crate) use group::torsion_json as group_torsion_json_raw;
pub use group::AbelianGroup;
pub use sms::{read_sms, to_sms_string, write_sms};
pub use snf::{
    homology_from_boundaries, integer_kernel_basis, is_prime, rank, rank_with, smith_normal_form,
    smith_normal_form_with, solve, solve_integer, solve_rational, Field, SmithForm, SnfOptions, Solution, SolveRing,
    RANK_PRIMES,
};
pub use sparse::SparseIntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("dimension mismatch in {context}: {left:?} vs {right:?}")]
    DimensionMismatch { context: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("boundary composite is nonzero ({nnz} nonzero entries)")]
    NonzeroComposite { nnz: usize },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("resource budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("malformed SMS input at line {line}: {reason}")]
    Sms { line: usize, reason: String },
}

/// Resource ceilings for a single elimination. `None` means unlimited.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_entries: Option<usize>,
    pub max_bits: Option<u64>,
    pub max_duration: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }
}
