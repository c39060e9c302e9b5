//! (Co)homology of the Yang-Baxter complexes with coefficients in Z, Q or
//! Z/p, plus the cochain-level machinery and theorem verifiers for cyclic
//! biquandles.

mod cochain;
pub mod golden;
mod verify;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::biquandle::BiquandleError;
use crate::complex::{boundary_matrix, ComplexError, FaceMaps, Variant};
use crate::intlinalg::{
    rank_with, smith_normal_form_with, AbelianGroup, Budget, Field, LinalgError, SmithForm, SnfOptions, SparseIntMatrix,
};

pub use cochain::{
    act_on_cochain, averaging_projector, coboundary, cocycle_basis, delta_y, is_coboundary, orbit_cocycle,
    orbit_representative, slice_last, Cochain, CochainRing,
};
pub use verify::{
    verify_averaging_lemma, verify_betti, verify_cocycle_basis, verify_conjecture, verify_equivariance,
    verify_proof_identities, verify_splitting, verify_torsion_bound, AveragingReport, BettiReport, CocycleBasisReport,
    ConjectureReport, EquivarianceReport, ProofIdentityReport, SplittingReport, TorsionReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Biquandle(#[from] BiquandleError),
    #[error("degree must be at least 1")]
    DegreeZero,
    #[error("universal coefficient check failed in degree {n} ({variant}): transpose gives {cohomology}, UCT gives {expected}")]
    UctMismatch { n: usize, variant: Variant, cohomology: AbelianGroup, expected: AbelianGroup },
    #[error("cochain ring mismatch: {0}")]
    RingMismatch(String),
    #[error("cochain has shape (m={got_m}, n={got_n}), expected (m={want_m}, n={want_n})")]
    ShapeMismatch { got_m: usize, got_n: usize, want_m: usize, want_n: usize },
    #[error("cochain is not a cocycle")]
    NotCocycle,
    #[error("operator does not satisfy property (I)")]
    PropertyIFails,
    #[error("invalid cochain data: {0}")]
    InvalidCochain(String),
}

/// Coefficient ring for (co)homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficients {
    Z,
    Q,
    Zp(u64),
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Z => write!(f, "Z"),
            Coefficients::Q => write!(f, "Q"),
            Coefficients::Zp(p) => write!(f, "Z_{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = String;

    /// `z`, `q` or `zp:<p>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "z" => Ok(Coefficients::Z),
            "q" => Ok(Coefficients::Q),
            _ => {
                let p = lower
                    .strip_prefix("zp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| format!("unknown coefficients `{s}` (expected z, q or zp:<p>)"))?;
                if !crate::intlinalg::is_prime(p) || p >= 1 << 32 {
                    return Err(format!("{p} is not a prime below 2^32"));
                }
                Ok(Coefficients::Zp(p))
            }
        }
    }
}

impl Coefficients {
    fn field(self) -> Option<Field> {
        match self {
            Coefficients::Z => None,
            Coefficients::Q => Some(Field::Rational),
            Coefficients::Zp(p) => Some(Field::Prime(p)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportKind {
    Homology,
    Cohomology,
}

/// One computed (co)homology cell. Over a field the group is free and its
/// rank is the dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub kind: ReportKind,
    pub m: usize,
    pub n: usize,
    pub variant: Variant,
    pub coeff: Coefficients,
    pub group: AbelianGroup,
    pub elapsed_ms: u64,
    /// Shapes of the two matrices the cell was read from.
    pub matrix_dims: [(usize, usize); 2],
}

impl HomologyReport {
    pub fn dimension(&self) -> usize {
        self.group.free_rank
    }
}

impl Serialize for HomologyReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("HomologyReport", 9)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("variant", &self.variant)?;
        st.serialize_field("coeff", &self.coeff.to_string())?;
        st.serialize_field("free_rank", &self.group.free_rank)?;
        st.serialize_field("torsion", &crate::intlinalg::group_torsion_json_raw(&self.group.torsion))?;
        st.serialize_field("elapsed_ms", &self.elapsed_ms)?;
        let dims: Vec<[usize; 2]> = self.matrix_dims.iter().map(|&(r, c)| [r, c]).collect();
        st.serialize_field("matrix_dims", &dims)?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct MatrixKey {
    fingerprint: u64,
    n: usize,
    variant: Variant,
    transposed: bool,
}

type Cell<T> = Arc<OnceLock<Result<Arc<T>, HomologyError>>>;

/// Per-key cache where each value is computed by exactly one caller; other
/// callers asking for the same key wait for that result.
struct OnceCache<K, T> {
    cells: Mutex<HashMap<K, Cell<T>>>,
}

impl<K: std::hash::Hash + Eq + Copy, T> OnceCache<K, T> {
    fn new() -> Self {
        OnceCache { cells: Mutex::new(HashMap::new()) }
    }

    fn get_or_compute(
        &self,
        key: K,
        compute: impl FnOnce() -> Result<T, HomologyError>,
    ) -> Result<Arc<T>, HomologyError> {
        let cell = {
            let mut cells = self.cells.lock().expect("cache lock poisoned");
            cells.entry(key).or_default().clone()
        };
        cell.get_or_init(|| compute().map(Arc::new)).clone()
    }
}

/// Computes and caches boundary matrices, Smith forms and ranks keyed by
/// `(operator fingerprint, degree, variant)`. Safe to share across threads.
pub struct HomologyEngine {
    budget: Budget,
    matrices: OnceCache<MatrixKey, SparseIntMatrix>,
    smith: OnceCache<MatrixKey, SmithForm>,
    ranks: OnceCache<(MatrixKey, Field), usize>,
}

impl Default for HomologyEngine {
    fn default() -> Self {
        HomologyEngine::new(Budget::default())
    }
}

impl HomologyEngine {
    pub fn new(budget: Budget) -> Self {
        HomologyEngine { budget, matrices: OnceCache::new(), smith: OnceCache::new(), ranks: OnceCache::new() }
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    fn key<F: FaceMaps + ?Sized>(map: &F, n: usize, variant: Variant, transposed: bool) -> MatrixKey {
        MatrixKey { fingerprint: map.fingerprint(), n, variant, transposed }
    }

    /// `∂_n` (or its transpose `δ^{n-1}`) for the variant.
    pub fn matrix<F: FaceMaps + ?Sized>(
        &self,
        map: &F,
        n: usize,
        variant: Variant,
        transposed: bool,
    ) -> Result<Arc<SparseIntMatrix>, HomologyError> {
        let key = Self::key(map, n, variant, transposed);
        self.matrices.get_or_compute(key, || {
            if transposed {
                Ok(self.matrix(map, n, variant, false)?.transpose())
            } else {
                Ok(boundary_matrix(map, n, variant)?)
            }
        })
    }

    pub fn smith_form<F: FaceMaps + ?Sized>(
        &self,
        map: &F,
        n: usize,
        variant: Variant,
        transposed: bool,
    ) -> Result<Arc<SmithForm>, HomologyError> {
        let key = Self::key(map, n, variant, transposed);
        self.smith.get_or_compute(key, || {
            let m = self.matrix(map, n, variant, transposed)?;
            let opts = SnfOptions { budget: self.budget.clone(), transcript: false };
            Ok(smith_normal_form_with(&m, &opts)?)
        })
    }

    pub fn rank<F: FaceMaps + ?Sized>(
        &self,
        map: &F,
        n: usize,
        variant: Variant,
        transposed: bool,
        field: Field,
    ) -> Result<usize, HomologyError> {
        let key = Self::key(map, n, variant, transposed);
        let r = self.ranks.get_or_compute((key, field), || {
            let m = self.matrix(map, n, variant, transposed)?;
            Ok(rank_with(&m, field, &self.budget)?)
        })?;
        Ok(*r)
    }

    fn check_composite<F: FaceMaps + ?Sized>(&self, map: &F, n: usize, variant: Variant) -> Result<(), HomologyError> {
        let d_n = self.matrix(map, n, variant, false)?;
        let d_next = self.matrix(map, n + 1, variant, false)?;
        let composite = d_n.mul(&d_next)?;
        if !composite.is_zero() {
            return Err(LinalgError::NonzeroComposite { nnz: composite.nnz() }.into());
        }
        Ok(())
    }

    /// `H_n = ker ∂_n / im ∂_{n+1}` for the variant and coefficients.
    pub fn compute_homology<F: FaceMaps + ?Sized>(
        &self,
        map: &F,
        n: usize,
        variant: Variant,
        coeff: Coefficients,
    ) -> Result<HomologyReport, HomologyError> {
        if n == 0 {
            return Err(HomologyError::DegreeZero);
        }
        let started = Instant::now();
        self.check_composite(map, n, variant)?;
        let d_n = self.matrix(map, n, variant, false)?;
        let d_next = self.matrix(map, n + 1, variant, false)?;
        let dim = d_n.cols();
        let group = match coeff.field() {
            None => {
                let rank_n = self.rank(map, n, variant, false, Field::Rational)?;
                let snf = self.smith_form(map, n + 1, variant, false)?;
                AbelianGroup::new(dim - rank_n - snf.rank, snf.torsion())
            }
            Some(field) => {
                let rank_n = self.rank(map, n, variant, false, field)?;
                let rank_next = self.rank(map, n + 1, variant, false, field)?;
                AbelianGroup::free(dim - rank_n - rank_next)
            }
        };
        Ok(HomologyReport {
            kind: ReportKind::Homology,
            m: map.size(),
            n,
            variant,
            coeff,
            group,
            elapsed_ms: started.elapsed().as_millis() as u64,
            matrix_dims: [(d_n.rows(), d_n.cols()), (d_next.rows(), d_next.cols())],
        })
    }

    /// `H^n = ker δ^n / im δ^{n-1}` computed from the transposed boundaries.
    /// Over Z the result must agree with `Free(H_n) ⊕ Tor(H_{n-1})`.
    pub fn compute_cohomology<F: FaceMaps + ?Sized>(
        &self,
        map: &F,
        n: usize,
        variant: Variant,
        coeff: Coefficients,
    ) -> Result<HomologyReport, HomologyError> {
        if n == 0 {
            return Err(HomologyError::DegreeZero);
        }
        let started = Instant::now();
        let delta_prev = self.matrix(map, n, variant, true)?;
        let delta_n = self.matrix(map, n + 1, variant, true)?;
        let composite = delta_prev.transpose().mul(&delta_n.transpose())?;
        if !composite.is_zero() {
            return Err(LinalgError::NonzeroComposite { nnz: composite.nnz() }.into());
        }
        let dim = delta_prev.rows();
        let group = match coeff.field() {
            None => {
                let rank_n = self.rank(map, n + 1, variant, true, Field::Rational)?;
                let snf = self.smith_form(map, n, variant, true)?;
                let group = AbelianGroup::new(dim - rank_n - snf.rank, snf.torsion());
                let free = self.compute_homology(map, n, variant, Coefficients::Z)?.group.free_rank;
                let torsion = if n >= 2 {
                    self.compute_homology(map, n - 1, variant, Coefficients::Z)?.group.torsion
                } else {
                    Vec::new()
                };
                let expected = AbelianGroup::new(free, torsion);
                if expected != group {
                    return Err(HomologyError::UctMismatch { n, variant, cohomology: group, expected });
                }
                group
            }
            Some(field) => {
                let rank_n = self.rank(map, n + 1, variant, true, field)?;
                let rank_prev = self.rank(map, n, variant, true, field)?;
                AbelianGroup::free(dim - rank_n - rank_prev)
            }
        };
        Ok(HomologyReport {
            kind: ReportKind::Cohomology,
            m: map.size(),
            n,
            variant,
            coeff,
            group,
            elapsed_ms: started.elapsed().as_millis() as u64,
            matrix_dims: [(delta_prev.rows(), delta_prev.cols()), (delta_n.rows(), delta_n.cols())],
        })
    }
}

/// One-shot homology without a shared engine.
pub fn compute_homology<F: FaceMaps + ?Sized>(
    map: &F,
    n: usize,
    variant: Variant,
    coeff: Coefficients,
) -> Result<HomologyReport, HomologyError> {
    HomologyEngine::default().compute_homology(map, n, variant, coeff)
}

/// One-shot cohomology without a shared engine.
pub fn compute_cohomology<F: FaceMaps + ?Sized>(
    map: &F,
    n: usize,
    variant: Variant,
    coeff: Coefficients,
) -> Result<HomologyReport, HomologyError> {
    HomologyEngine::default().compute_cohomology(map, n, variant, coeff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biquandle::{make_cyclic, YBMap};

    fn group(s: &str) -> AbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn homology_examples() {
        let e = HomologyEngine::default();
        let c3 = make_cyclic(3);
        assert_eq!(e.compute_homology(c3.map(), 3, Variant::YB, Coefficients::Z).unwrap().group, group("Z^9 ⊕ Z_3"));
        assert_eq!(e.compute_homology(c3.map(), 2, Variant::YB, Coefficients::Z).unwrap().group, group("Z^3"));
        let c4 = make_cyclic(4);
        assert_eq!(e.compute_homology(c4.map(), 2, Variant::NYB, Coefficients::Z).unwrap().group, group("Z^3"));
        let c2 = make_cyclic(2);
        assert_eq!(e.compute_homology(c2.map(), 2, Variant::D, Coefficients::Z).unwrap().group, group("Z"));
        assert_eq!(e.compute_homology(c2.map(), 1, Variant::YB, Coefficients::Z).unwrap().group, group("Z ⊕ Z_2"));
    }

    #[test]
    fn cohomology_examples() {
        let e = HomologyEngine::default();
        let c2 = make_cyclic(2);
        assert_eq!(e.compute_cohomology(c2.map(), 2, Variant::YB, Coefficients::Z).unwrap().group, group("Z^2 ⊕ Z_2"));
        for m in 1..=4 {
            let b = make_cyclic(m);
            assert_eq!(e.compute_cohomology(b.map(), 1, Variant::YB, Coefficients::Q).unwrap().dimension(), 1);
        }
        let c5 = make_cyclic(5);
        assert_eq!(e.compute_cohomology(c5.map(), 4, Variant::YB, Coefficients::Q).unwrap().dimension(), 125);
    }

    #[test]
    fn mod_p_coefficients_see_torsion() {
        // H_1(C_2; Z_2) = Z/2 ⊗ (Z ⊕ Z_2) has dimension 2
        let c2 = make_cyclic(2);
        let r = compute_homology(c2.map(), 1, Variant::YB, Coefficients::Zp(2)).unwrap();
        assert_eq!(r.dimension(), 2);
        let r = compute_homology(c2.map(), 1, Variant::YB, Coefficients::Zp(3)).unwrap();
        assert_eq!(r.dimension(), 1);
    }

    #[test]
    fn one_point_biquandle() {
        // every boundary vanishes; (0, 0) is fixed, so from degree 2 on the
        // whole chain group is degenerate
        let c1 = make_cyclic(1);
        let e = HomologyEngine::default();
        for n in 1..=5 {
            let h = |v| e.compute_homology(c1.map(), n, v, Coefficients::Z).unwrap().group;
            assert_eq!(h(Variant::YB), AbelianGroup::free(1));
            let (d, nyb) = if n == 1 { (0, 1) } else { (1, 0) };
            assert_eq!(h(Variant::D), AbelianGroup::free(d));
            assert_eq!(h(Variant::NYB), AbelianGroup::free(nyb));
        }
    }

    #[test]
    fn identity_operator_homology_allowed_for_yb_only() {
        let id = YBMap::identity(2).unwrap();
        assert!(compute_homology(&id, 2, Variant::YB, Coefficients::Z).is_ok());
        assert!(matches!(
            compute_homology(&id, 2, Variant::D, Coefficients::Z),
            Err(HomologyError::Complex(ComplexError::DiagonalCondition))
        ));
    }

    #[test]
    fn coefficient_parsing() {
        assert_eq!("zp:5".parse::<Coefficients>().unwrap(), Coefficients::Zp(5));
        assert!("zp:6".parse::<Coefficients>().is_err());
        assert_eq!("Q".parse::<Coefficients>().unwrap(), Coefficients::Q);
    }

    #[test]
    fn report_json_shape() {
        let c3 = make_cyclic(3);
        let r = compute_homology(c3.map(), 3, Variant::YB, Coefficients::Z).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["free_rank"], 9);
        assert_eq!(v["torsion"], serde_json::json!([3]));
        assert_eq!(v["variant"], "YB");
        assert_eq!(v["matrix_dims"], serde_json::json!([[9, 27], [27, 81]]));
    }
}
