use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::eliminate::{eliminate, ElementaryOp, ElimError, Elimination};
use super::ring::{BigZ, CheckedI64, PrimeField, Ring};
use super::{AbelianGroup, Budget, LinalgError, SparseIntMatrix};

/// Primes used to certify ranks over Q.
pub const RANK_PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SolveRing {
    Integer,
    Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Integer(Vec<BigInt>),
    Rational(Vec<BigRational>),
}

#[derive(Clone, Debug, Default)]
pub struct SnfOptions {
    pub budget: Budget,
    /// Keep the unimodular transforms so the form can solve systems.
    pub transcript: bool,
}

/// Recorded elementary operations with `U * M * V = D`.
#[derive(Clone, Debug)]
struct Transforms {
    rows: usize,
    cols: usize,
    row_ops: Vec<ElementaryOp<BigInt>>,
    col_ops: Vec<ElementaryOp<BigInt>>,
    pivots: Vec<(usize, usize, BigInt)>,
}

#[derive(Clone, Debug)]
pub struct SmithForm {
    /// `d_1 | d_2 | ... | d_r`, all positive.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    transforms: Option<Transforms>,
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn has_transforms(&self) -> bool {
        self.transforms.is_some()
    }

    fn transforms(&self) -> &Transforms {
        self.transforms.as_ref().expect("Smith form computed without transforms")
    }

    /// Solves `M x = b` over Z; `None` when no integral solution exists.
    pub fn solve_integer(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let t = self.transforms();
        assert_eq!(b.len(), t.rows, "right-hand side length must equal row count");
        let mut b = b.to_vec();
        for op in &t.row_ops {
            let delta = &op.factor * &b[op.source as usize];
            b[op.target as usize] -= delta;
        }
        let mut y = vec![BigInt::zero(); t.cols];
        let mut pivot_rows = vec![false; t.rows];
        for (r, c, d) in &t.pivots {
            pivot_rows[*r] = true;
            let (q, rem) = b[*r].div_rem(d);
            if !rem.is_zero() {
                return None;
            }
            y[*c] = q;
        }
        if b.iter().zip(&pivot_rows).any(|(v, p)| !p && !v.is_zero()) {
            return None;
        }
        apply_col_ops(&t.col_ops, &mut y);
        Some(y)
    }

    /// Solves `M x = b` over Q; `None` when the system is inconsistent.
    pub fn solve_rational(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        let t = self.transforms();
        assert_eq!(b.len(), t.rows, "right-hand side length must equal row count");
        let mut b = b.to_vec();
        for op in &t.row_ops {
            let delta = BigRational::from_integer(op.factor.clone()) * &b[op.source as usize];
            b[op.target as usize] -= delta;
        }
        let mut y = vec![BigRational::zero(); t.cols];
        let mut pivot_rows = vec![false; t.rows];
        for (r, c, d) in &t.pivots {
            pivot_rows[*r] = true;
            y[*c] = &b[*r] / BigRational::from_integer(d.clone());
        }
        if b.iter().zip(&pivot_rows).any(|(v, p)| !p && !v.is_zero()) {
            return None;
        }
        for op in t.col_ops.iter().rev() {
            let delta = BigRational::from_integer(op.factor.clone()) * &y[op.target as usize];
            y[op.source as usize] -= delta;
        }
        Some(y)
    }

    /// A Z-basis of the integer kernel `{x : M x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let t = self.transforms();
        let mut pivot_cols = vec![false; t.cols];
        for (_, c, _) in &t.pivots {
            pivot_cols[*c] = true;
        }
        (0..t.cols)
            .filter(|c| !pivot_cols[*c])
            .map(|c| {
                let mut y = vec![BigInt::zero(); t.cols];
                y[c] = BigInt::one();
                apply_col_ops(&t.col_ops, &mut y);
                y
            })
            .collect()
    }
}

// x = V y with V the product of the recorded column operations
fn apply_col_ops(col_ops: &[ElementaryOp<BigInt>], y: &mut [BigInt]) {
    for op in col_ops.iter().rev() {
        let delta = &op.factor * &y[op.target as usize];
        y[op.source as usize] -= delta;
    }
}

fn widen<R: Ring>(ring: &R, e: Elimination<R::Elem>) -> Elimination<BigInt> {
    let conv = |ops: Vec<ElementaryOp<R::Elem>>| {
        ops.into_iter()
            .map(|op| ElementaryOp { target: op.target, source: op.source, factor: ring.to_bigint(&op.factor) })
            .collect()
    };
    Elimination {
        pivots: e.pivots.into_iter().map(|(r, c, v)| (r, c, ring.to_bigint(&v))).collect(),
        row_ops: conv(e.row_ops),
        col_ops: conv(e.col_ops),
    }
}

fn integer_elimination(m: &SparseIntMatrix, record: bool, budget: &Budget) -> Result<Elimination<BigInt>, LinalgError> {
    match eliminate(&CheckedI64, m, record, budget) {
        Ok(e) => return Ok(widen(&CheckedI64, e)),
        Err(ElimError::Budget(err)) => return Err(err),
        Err(ElimError::Overflow) => {}
    }
    match eliminate(&BigZ, m, record, budget) {
        Ok(e) => Ok(e),
        Err(ElimError::Budget(err)) => Err(err),
        Err(ElimError::Overflow) => unreachable!("arbitrary precision arithmetic cannot overflow"),
    }
}

/// Turns arbitrary nonzero diagonal entries into a divisibility chain.
pub(crate) fn canonical_chain(diagonal: impl IntoIterator<Item = BigInt>) -> Vec<BigInt> {
    let mut units = 0usize;
    let mut rest: Vec<BigInt> = Vec::new();
    for d in diagonal {
        let d = d.abs();
        assert!(!d.is_zero(), "zero on the Smith diagonal");
        if d.is_one() {
            units += 1;
        } else {
            rest.push(d);
        }
    }
    rest.sort();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            let l = &rest[i] / &g * &rest[j];
            rest[i] = g;
            rest[j] = l;
        }
    }
    let ones = rest.iter().filter(|d| d.is_one()).count();
    let mut out = vec![BigInt::one(); units + ones];
    out.extend(rest.into_iter().filter(|d| !d.is_one()));
    out
}

pub fn smith_normal_form(m: &SparseIntMatrix) -> Result<SmithForm, LinalgError> {
    smith_normal_form_with(m, &SnfOptions::default())
}

pub fn smith_normal_form_with(m: &SparseIntMatrix, opts: &SnfOptions) -> Result<SmithForm, LinalgError> {
    let e = integer_elimination(m, opts.transcript, &opts.budget)?;
    let invariant_factors = canonical_chain(e.pivots.iter().map(|(_, _, d)| d.clone()));
    let transforms = opts.transcript.then(|| Transforms {
        rows: m.rows(),
        cols: m.cols(),
        row_ops: e.row_ops,
        col_ops: e.col_ops,
        pivots: e.pivots,
    });
    Ok(SmithForm { rank: invariant_factors.len(), invariant_factors, transforms })
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn rank_mod_p(m: &SparseIntMatrix, p: u64, budget: &Budget) -> Result<usize, LinalgError> {
    if !is_prime(p) || p >= (1 << 32) {
        return Err(LinalgError::NotPrime(p));
    }
    match eliminate(&PrimeField::new(p), m, false, budget) {
        Ok(e) => Ok(e.pivots.len()),
        Err(ElimError::Budget(err)) => Err(err),
        Err(ElimError::Overflow) => unreachable!("field arithmetic is reduced mod p"),
    }
}

pub fn rank(m: &SparseIntMatrix, field: Field) -> Result<usize, LinalgError> {
    rank_with(m, field, &Budget::default())
}

/// Exact rank over Q or Z/p.
///
/// Over Q the rank is read off three large primes; if they disagree the
/// integer elimination decides.
pub fn rank_with(m: &SparseIntMatrix, field: Field, budget: &Budget) -> Result<usize, LinalgError> {
    match field {
        Field::Prime(p) => rank_mod_p(m, p, budget),
        Field::Rational => {
            let (a, (b, c)) = rayon::join(
                || rank_mod_p(m, RANK_PRIMES[0], budget),
                || rayon::join(|| rank_mod_p(m, RANK_PRIMES[1], budget), || rank_mod_p(m, RANK_PRIMES[2], budget)),
            );
            let (a, b, c) = (a?, b?, c?);
            if a == b && b == c {
                Ok(a)
            } else {
                Ok(integer_elimination(m, false, budget)?.pivots.len())
            }
        }
    }
}

pub fn solve_integer(m: &SparseIntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
    check_rhs(m, b.len())?;
    let snf = smith_normal_form_with(m, &SnfOptions { transcript: true, ..Default::default() })?;
    Ok(snf.solve_integer(b))
}

pub fn solve_rational(m: &SparseIntMatrix, b: &[BigRational]) -> Result<Option<Vec<BigRational>>, LinalgError> {
    check_rhs(m, b.len())?;
    let snf = smith_normal_form_with(m, &SnfOptions { transcript: true, ..Default::default() })?;
    Ok(snf.solve_rational(b))
}

/// Solves `M x = b` for an integer right-hand side over the requested ring.
pub fn solve(m: &SparseIntMatrix, b: &[BigInt], ring: SolveRing) -> Result<Option<Solution>, LinalgError> {
    match ring {
        SolveRing::Integer => Ok(solve_integer(m, b)?.map(Solution::Integer)),
        SolveRing::Rational => {
            let b: Vec<BigRational> = b.iter().cloned().map(BigRational::from_integer).collect();
            Ok(solve_rational(m, &b)?.map(Solution::Rational))
        }
    }
}

fn check_rhs(m: &SparseIntMatrix, len: usize) -> Result<(), LinalgError> {
    if len != m.rows() {
        return Err(LinalgError::DimensionMismatch {
            context: "linear solve",
            left: (m.rows(), m.cols()),
            right: (len, 1),
        });
    }
    Ok(())
}

pub fn integer_kernel_basis(m: &SparseIntMatrix) -> Result<Vec<Vec<BigInt>>, LinalgError> {
    let snf = smith_normal_form_with(m, &SnfOptions { transcript: true, ..Default::default() })?;
    Ok(snf.kernel_basis())
}

/// `ker d_n / im d_next` for consecutive boundary matrices.
pub fn homology_from_boundaries(d_n: &SparseIntMatrix, d_next: &SparseIntMatrix) -> Result<AbelianGroup, LinalgError> {
    if d_n.cols() != d_next.rows() {
        return Err(LinalgError::DimensionMismatch {
            context: "consecutive boundaries",
            left: (d_n.rows(), d_n.cols()),
            right: (d_next.rows(), d_next.cols()),
        });
    }
    let composite = d_n.mul(d_next)?;
    if !composite.is_zero() {
        return Err(LinalgError::NonzeroComposite { nnz: composite.nnz() });
    }
    let rank_n = rank(d_n, Field::Rational)?;
    let snf = smith_normal_form(d_next)?;
    Ok(AbelianGroup::new(d_n.cols() - rank_n - snf.rank, snf.torsion()))
}
