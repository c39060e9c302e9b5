//! Mechanical checks of the structural results on cyclic biquandles. Each
//! verifier computes the relevant cells and reports a verdict; none of them
//! extrapolate beyond what they computed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::cochain::CoboundarySolver;
use super::{
    act_on_cochain, coboundary, cocycle_basis, delta_y, slice_last, Cochain, CochainRing, Coefficients, HomologyEngine,
    HomologyError,
};
use crate::biquandle::{check_property_i, make_cyclic, Element, YBMap};
use crate::complex::{boundary_matrix, FaceMaps, Variant};
use crate::intlinalg::{integer_kernel_basis, rank_with, AbelianGroup, Field, SparseIntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiReport {
    pub m: usize,
    pub n: usize,
    /// Ranks for YB, D, NYB.
    pub expected: [usize; 3],
    pub computed: [usize; 3],
    pub pass: bool,
}

/// Rational ranks of `H_n^{YB}`, `H_n^D`, `H_n^{NYB}` of `C_m` against
/// `m^{n-1}`, `m^{n-1} - (m-1)^{n-1}` and `(m-1)^{n-1}`.
pub fn verify_betti(engine: &HomologyEngine, m: usize, n: usize) -> Result<BettiReport, HomologyError> {
    let b = make_cyclic(m);
    let yb = m.pow(n as u32 - 1);
    let nyb = (m - 1).pow(n as u32 - 1);
    let expected = [yb, yb - nyb, nyb];
    let mut computed = [0; 3];
    for (slot, variant) in computed.iter_mut().zip(Variant::ALL) {
        *slot = engine.compute_homology(b.map(), n, variant, Coefficients::Q)?.dimension();
    }
    Ok(BettiReport { m, n, expected, computed, pass: expected == computed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    pub m: usize,
    pub n: usize,
    /// `m` for odd `m`, `2m` for even `m`.
    pub bound: usize,
    pub groups: Vec<(Variant, AbelianGroup)>,
    pub pass: bool,
}

/// Every invariant factor of `H_n(C_m; Z)`, in all three variants, divides
/// the bound.
pub fn verify_torsion_bound(engine: &HomologyEngine, m: usize, n: usize) -> Result<TorsionReport, HomologyError> {
    let b = make_cyclic(m);
    let bound = if m % 2 == 1 { m } else { 2 * m };
    let mut groups = Vec::new();
    for variant in Variant::ALL {
        groups.push((variant, engine.compute_homology(b.map(), n, variant, Coefficients::Z)?.group));
    }
    let pass = groups.iter().all(|(_, g)| g.torsion_annihilated_by(&BigInt::from(bound)));
    Ok(TorsionReport { m, n, bound, groups, pass })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub m: usize,
    pub n: usize,
    pub computed: AbelianGroup,
    pub conjectured: AbelianGroup,
    pub matches: bool,
}

/// Compares `H_n^{NYB}(C_m; Z)` to `Z^{(m-1)^{n-1}} ⊕ Z_m` (odd `n`) or
/// `Z^{(m-1)^{n-1}}` (even `n`).
pub fn verify_conjecture(engine: &HomologyEngine, m: usize, n: usize) -> Result<ConjectureReport, HomologyError> {
    let b = make_cyclic(m);
    let computed = engine.compute_homology(b.map(), n, Variant::NYB, Coefficients::Z)?.group;
    let free = (m - 1).pow(n as u32 - 1);
    let conjectured = if n % 2 == 1 { AbelianGroup::new(free, [BigInt::from(m)]) } else { AbelianGroup::free(free) };
    let matches = computed == conjectured;
    Ok(ConjectureReport { m, n, computed, conjectured, matches })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    pub m: usize,
    pub n: usize,
    pub yb: AbelianGroup,
    pub d: AbelianGroup,
    pub nyb: AbelianGroup,
    pub pass: bool,
}

/// `H_n^{YB} ≅ H_n^D ⊕ H_n^{NYB}` for `C_m` over Z.
pub fn verify_splitting(engine: &HomologyEngine, m: usize, n: usize) -> Result<SplittingReport, HomologyError> {
    let b = make_cyclic(m);
    let g = |v| engine.compute_homology(b.map(), n, v, Coefficients::Z).map(|r| r.group);
    let (yb, d, nyb) = (g(Variant::YB)?, g(Variant::D)?, g(Variant::NYB)?);
    let pass = yb == d.direct_sum(&nyb);
    Ok(SplittingReport { m, n, yb, d, nyb, pass })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivarianceReport {
    pub m: usize,
    pub n: usize,
    /// Number of `(e_t, y)` pairs compared.
    pub checked: usize,
    /// `(code of t, y)` for each pair where `δ(e_t·y) ≠ δ(e_t)·y`.
    pub failures: Vec<(u64, Element)>,
    pub pass: bool,
}

/// `δ^n(f·y) = δ^n(f)·y` on the full dual basis of `C^n` and every `y`.
/// Rejects operators without property (I).
pub fn verify_equivariance(map: &YBMap, n: usize) -> Result<EquivarianceReport, HomologyError> {
    if !check_property_i(map) {
        return Err(HomologyError::PropertyIFails);
    }
    if n == 0 {
        return Err(HomologyError::DegreeZero);
    }
    let m = map.size();
    let mut failures = Vec::new();
    let mut checked = 0;
    for code in 0..m.pow(n as u32) as u64 {
        let e = Cochain::from_values(m, n, CochainRing::Z, [(code, BigRational::one())])?;
        let de = coboundary(map, &e)?;
        for y in 0..m as Element {
            checked += 1;
            let lhs = coboundary(map, &act_on_cochain(map, &e, y)?)?;
            let rhs = act_on_cochain(map, &de, y)?;
            if lhs != rhs {
                failures.push((code, y));
            }
        }
    }
    let pass = failures.is_empty();
    Ok(EquivarianceReport { m, n, checked, failures, pass })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleBasisReport {
    pub m: usize,
    pub n: usize,
    pub count: usize,
    pub all_cocycles: bool,
    /// `rank [δ^{n-1} | F_1 ... F_k] - rank δ^{n-1}` over Q.
    pub rank_gain: usize,
    pub pass: bool,
}

/// The orbit cocycles of `C_m` are integral cocycles whose classes are
/// rationally independent modulo coboundaries.
pub fn verify_cocycle_basis(engine: &HomologyEngine, m: usize, n: usize) -> Result<CocycleBasisReport, HomologyError> {
    let b = make_cyclic(m);
    let basis = cocycle_basis(m, n);
    let mut all_cocycles = true;
    for f in &basis {
        all_cocycles &= coboundary(b.map(), f)?.is_zero();
    }
    let delta_prev = engine.matrix(b.map(), n, Variant::YB, true)?;
    let columns =
        basis.iter().map(|f| f.support().map(|(code, v)| (code as usize, v.to_integer())).collect()).collect();
    let f_block = SparseIntMatrix::from_columns(delta_prev.rows(), columns)?;
    let augmented = delta_prev.hstack(&f_block)?;
    let base = engine.rank(b.map(), n, Variant::YB, true, Field::Rational)?;
    let rank_gain = rank_with(&augmented, Field::Rational, engine.budget())? - base;
    let count = basis.len();
    let pass = all_cocycles && count == m.pow(n as u32 - 1) && rank_gain == count;
    Ok(CocycleBasisReport { m, n, count, all_cocycles, rank_gain, pass })
}

/// Integral cocycles spanning `ker δ^n` over Z.
fn integral_cocycle_span<F: FaceMaps + ?Sized>(map: &F, n: usize) -> Result<Vec<Cochain>, HomologyError> {
    let delta_n = boundary_matrix(map, n + 1, Variant::YB)?.transpose();
    let m = map.size();
    Ok(integer_kernel_basis(&delta_n)?.iter().map(|v| Cochain::from_integer_vec(m, n, v)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProofIdentityReport {
    pub m: usize,
    pub n: usize,
    pub cocycles: usize,
    /// Number of `(f, y)` pairs tested.
    pub pairs: usize,
    /// `δ^{n-1}(f_y) = Δ_y f - (-1)^n (f·y - f)` held exactly.
    pub slice_identity: bool,
    /// `Δ_y f - (-1)^n (f·y - f)` had an integral witness.
    pub delta_witnesses: usize,
    /// `m (f·y - f)` had an integral witness.
    pub multiple_witnesses: usize,
    pub pass: bool,
}

/// For a spanning set of integral cocycles `f` of `C_m` and every `y`,
/// finds integral witnesses for the two coboundaries used in the torsion
/// bound and checks each witness by applying `δ`.
pub fn verify_proof_identities(m: usize, n: usize) -> Result<ProofIdentityReport, HomologyError> {
    assert!(n >= 2, "the identities need degree at least 2");
    let b = make_cyclic(m);
    let map = b.map();
    let solver = CoboundarySolver::new(map, n)?;
    let cocycles = integral_cocycle_span(map, n)?;
    let sign = BigInt::from(if n % 2 == 0 { 1 } else { -1 });
    let mut pairs = 0;
    let mut slice_identity = true;
    let mut delta_witnesses = 0;
    let mut multiple_witnesses = 0;
    let witnessed = |h: &Cochain| -> Result<bool, HomologyError> {
        Ok(match solver.solve(h, CochainRing::Z)? {
            Some(g) => coboundary(map, &g)? == *h,
            None => false,
        })
    };
    for f in &cocycles {
        for y in 0..m as Element {
            pairs += 1;
            let moved = act_on_cochain(map, f, y)?.sub(f);
            let h = delta_y(map, f, y)?.sub(&moved.scale_int(&sign));
            slice_identity &= coboundary(map, &slice_last(f, y))? == h;
            if witnessed(&h)? {
                delta_witnesses += 1;
            }
            if witnessed(&moved.scale_int(&BigInt::from(m)))? {
                multiple_witnesses += 1;
            }
        }
    }
    let pass = slice_identity && delta_witnesses == pairs && multiple_witnesses == pairs;
    Ok(ProofIdentityReport {
        m,
        n,
        cocycles: cocycles.len(),
        pairs,
        slice_identity,
        delta_witnesses,
        multiple_witnesses,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AveragingReport {
    pub m: usize,
    pub n: usize,
    pub cocycles: usize,
    /// `δ^{n-1} f' = (-1)^{n+1} (f·ḡ - f)` held exactly with
    /// `f' = (1/m) Σ_y f(..., y)`.
    pub explicit_witness: bool,
    /// `f·ḡ - f` was found to be a rational coboundary by the solver.
    pub solver_witnesses: usize,
    pub pass: bool,
}

/// For integral cocycles `f` of `C_m`, `f·ḡ - f` with `ḡ` the average of the
/// `m` actions is a rational coboundary.
pub fn verify_averaging_lemma(m: usize, n: usize) -> Result<AveragingReport, HomologyError> {
    assert!(n >= 2, "the averaging lemma needs degree at least 2");
    let b = make_cyclic(m);
    let map = b.map();
    let solver = CoboundarySolver::new(map, n)?;
    let cocycles = integral_cocycle_span(map, n)?;
    let inv_m = BigRational::new(BigInt::one(), BigInt::from(m));
    let sign = BigRational::from_integer(BigInt::from(if n % 2 == 1 { 1 } else { -1 }));
    let mut explicit_witness = true;
    let mut solver_witnesses = 0;
    for f in &cocycles {
        let mut avg_action = Cochain::zero(m, n, CochainRing::Q);
        let mut f_prime = Cochain::zero(m, n - 1, CochainRing::Q);
        for y in 0..m as Element {
            avg_action = avg_action.add(&act_on_cochain(map, f, y)?);
            f_prime = f_prime.add(&slice_last(f, y));
        }
        let h = scale(&avg_action, &inv_m).sub(f);
        let f_prime = scale(&f_prime, &inv_m);
        explicit_witness &= coboundary(map, &f_prime)? == scale(&h, &sign);
        if let Some(g) = solver.solve(&h, CochainRing::Q)? {
            if coboundary(map, &g)? == h {
                solver_witnesses += 1;
            }
        }
    }
    let pass = explicit_witness && solver_witnesses == cocycles.len();
    Ok(AveragingReport { m, n, cocycles: cocycles.len(), explicit_witness, solver_witnesses, pass })
}

fn scale(f: &Cochain, k: &BigRational) -> Cochain {
    let values = f.support().map(|(c, v)| (c, v * k)).collect::<Vec<_>>();
    Cochain::from_values(f.m(), f.n(), CochainRing::Q, values).expect("scaling keeps codes in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biquandle::make_alexander;

    #[test]
    fn betti_small() {
        let e = HomologyEngine::default();
        let r = verify_betti(&e, 3, 1).unwrap();
        assert_eq!(r.computed, [1, 0, 1]);
        assert!(r.pass);
        assert!(verify_betti(&e, 3, 3).unwrap().pass);
    }

    #[test]
    fn torsion_and_conjecture_small() {
        let e = HomologyEngine::default();
        let t = verify_torsion_bound(&e, 3, 3).unwrap();
        assert!(t.pass);
        assert_eq!(t.bound, 3);
        let c = verify_conjecture(&e, 3, 3).unwrap();
        assert!(c.matches);
        assert_eq!(c.computed.to_string(), "Z^4 ⊕ Z_3");
        assert!(verify_conjecture(&e, 2, 4).unwrap().matches);
    }

    #[test]
    fn splitting_small() {
        let e = HomologyEngine::default();
        for m in 2..=3 {
            for n in 1..=3 {
                assert!(verify_splitting(&e, m, n).unwrap().pass, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn equivariance_small() {
        assert!(verify_equivariance(make_cyclic(3).map(), 2).unwrap().pass);
        assert!(verify_equivariance(make_alexander(4, 3, 3).unwrap().map(), 2).unwrap().pass);
        let id = YBMap::identity(2).unwrap();
        assert_eq!(verify_equivariance(&id, 1), Err(HomologyError::PropertyIFails));
    }

    #[test]
    fn cocycle_basis_small() {
        let e = HomologyEngine::default();
        let r = verify_cocycle_basis(&e, 3, 2).unwrap();
        assert_eq!((r.count, r.rank_gain), (3, 3));
        assert!(r.pass);
    }

    #[test]
    fn proof_identities_small() {
        let r = verify_proof_identities(2, 2).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.cocycles > 0);
        assert!(verify_averaging_lemma(2, 2).unwrap().pass);
    }
}
