//! The set-theoretic Yang-Baxter chain complex, its degenerate subcomplex and
//! the normalized quotient, as sparse integer boundary matrices.
//!
//! `C_n` is free on `X^n` for `n >= 1` and zero otherwise. Generators are
//! indexed by the mixed-radix code `sum_k x_k m^(n-k)` in ascending order.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::biquandle::{Element, YBMap};
use crate::intlinalg::{LinalgError, SparseIntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("face index {index} out of range 1..={arity}")]
    FaceIndex { index: usize, arity: usize },
    #[error("tuple entry {value} outside 0..{m}")]
    BadElement { value: Element, m: usize },
    #[error("the degenerate and normalized complexes need a unique fixed pair for every element")]
    DiagonalCondition,
    #[error("boundary of degenerate {source_tuple:?} has a non-degenerate term {target_tuple:?}")]
    DegenerateClosure { source_tuple: Vec<Element>, target_tuple: Vec<Element> },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    YB,
    D,
    NYB,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::YB, Variant::D, Variant::NYB];
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::YB => "YB",
            Variant::D => "D",
            Variant::NYB => "NYB",
        })
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "yb" => Ok(Variant::YB),
            "d" => Ok(Variant::D),
            "nyb" => Ok(Variant::NYB),
            other => Err(format!("unknown variant `{other}` (expected yb, d or nyb)")),
        }
    }
}

/// Number of generators of `C_n` before any restriction to a variant.
pub fn tuple_count(m: usize, n: usize) -> usize {
    if n == 0 {
        0
    } else {
        m.pow(n as u32)
    }
}

pub fn encode(m: usize, tuple: &[Element]) -> u64 {
    tuple.iter().fold(0u64, |acc, &x| acc * m as u64 + u64::from(x))
}

pub fn decode(m: usize, n: usize, code: u64) -> Vec<Element> {
    let mut t = vec![0; n];
    decode_into(m, code, &mut t);
    t
}

fn decode_into(m: usize, mut code: u64, out: &mut [Element]) {
    for slot in out.iter_mut().rev() {
        *slot = (code % m as u64) as Element;
        code /= m as u64;
    }
}

/// A generator of `C_n`: an `n`-tuple by its mixed-radix code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TupleIndex {
    pub n: usize,
    pub code: u64,
}

impl TupleIndex {
    pub fn encode(m: usize, tuple: &[Element]) -> Self {
        TupleIndex { n: tuple.len(), code: encode(m, tuple) }
    }

    pub fn decode(&self, m: usize) -> Vec<Element> {
        decode(m, self.n, self.code)
    }
}

/// Access to `R` sufficient to build the complex. The face maps default to
/// the threading formulas; implementors may override them.
pub trait FaceMaps: Sync {
    fn size(&self) -> usize;
    fn r1(&self, a: Element, b: Element) -> Element;
    fn r2(&self, a: Element, b: Element) -> Element;

    /// Identifies the operator for caching.
    fn fingerprint(&self) -> u64 {
        let m = self.size() as Element;
        let mut h = DefaultHasher::new();
        m.hash(&mut h);
        for a in 0..m {
            for b in 0..m {
                (self.r1(a, b), self.r2(a, b)).hash(&mut h);
            }
        }
        h.finish()
    }

    fn is_fixed_pair(&self, a: Element, b: Element) -> bool {
        self.r1(a, b) == a && self.r2(a, b) == b
    }

    /// `d^l_{i,n+1}` for `1 <= i <= n+1`: thread `x_i` leftward, emitting
    /// `R2(x_j, c)` and carrying `R1(x_j, c)`.
    fn face_left_into(&self, i: usize, t: &[Element], out: &mut Vec<Element>) {
        out.clear();
        out.extend_from_slice(&t[..i - 1]);
        let mut c = t[i - 1];
        for j in (0..i - 1).rev() {
            out[j] = self.r2(t[j], c);
            c = self.r1(t[j], c);
        }
        out.extend_from_slice(&t[i..]);
    }

    /// `d^r_{i,n+1}` for `1 <= i <= n+1`: thread `x_i` rightward, emitting
    /// `R1(c, x_j)` and carrying `R2(c, x_j)`.
    fn face_right_into(&self, i: usize, t: &[Element], out: &mut Vec<Element>) {
        out.clear();
        out.extend_from_slice(&t[..i - 1]);
        let mut c = t[i - 1];
        for &x in &t[i..] {
            out.push(self.r1(c, x));
            c = self.r2(c, x);
        }
    }
}

impl FaceMaps for YBMap {
    fn size(&self) -> usize {
        YBMap::size(self)
    }

    fn r1(&self, a: Element, b: Element) -> Element {
        YBMap::r1(self, a, b)
    }

    fn r2(&self, a: Element, b: Element) -> Element {
        YBMap::r2(self, a, b)
    }
}

fn check_face_args<F: FaceMaps + ?Sized>(map: &F, i: usize, t: &[Element]) -> Result<(), ComplexError> {
    if i == 0 || i > t.len() {
        return Err(ComplexError::FaceIndex { index: i, arity: t.len() });
    }
    if let Some(&value) = t.iter().find(|&&x| x as usize >= map.size()) {
        return Err(ComplexError::BadElement { value, m: map.size() });
    }
    Ok(())
}

/// Left face `d^l_{i,n+1}` applied to an `(n+1)`-tuple (1-based `i`).
pub fn face_left<F: FaceMaps + ?Sized>(map: &F, i: usize, t: &[Element]) -> Result<Vec<Element>, ComplexError> {
    check_face_args(map, i, t)?;
    let mut out = Vec::with_capacity(t.len());
    map.face_left_into(i, t, &mut out);
    Ok(out)
}

/// Right face `d^r_{i,n+1}` applied to an `(n+1)`-tuple (1-based `i`).
pub fn face_right<F: FaceMaps + ?Sized>(map: &F, i: usize, t: &[Element]) -> Result<Vec<Element>, ComplexError> {
    check_face_args(map, i, t)?;
    let mut out = Vec::with_capacity(t.len());
    map.face_right_into(i, t, &mut out);
    Ok(out)
}

/// Some adjacent pair of the tuple is fixed by `R`.
pub fn is_degenerate<F: FaceMaps + ?Sized>(map: &F, t: &[Element]) -> bool {
    t.windows(2).any(|w| map.is_fixed_pair(w[0], w[1]))
}

/// Every element has exactly one fixed partner.
pub fn diagonal_condition<F: FaceMaps + ?Sized>(map: &F) -> bool {
    let m = map.size() as Element;
    (0..m).all(|a| (0..m).filter(|&b| map.is_fixed_pair(a, b)).count() == 1)
}

const ABSENT: u32 = u32::MAX;

/// Ordered generators of `C_n` for one variant.
#[derive(Clone, Debug)]
pub struct ChainBasis {
    pub m: usize,
    pub n: usize,
    pub variant: Variant,
    generators: Vec<u64>,
    // code -> position; only materialized for D and NYB
    position: Option<Vec<u32>>,
}

impl ChainBasis {
    pub fn new<F: FaceMaps + ?Sized>(map: &F, n: usize, variant: Variant) -> Self {
        let m = map.size();
        let total = tuple_count(m, n) as u64;
        let generators: Vec<u64> = match variant {
            Variant::YB => (0..total).collect(),
            Variant::D if n < 2 => Vec::new(),
            Variant::D | Variant::NYB => {
                let want_degenerate = variant == Variant::D;
                let mut t = vec![0; n];
                (0..total)
                    .filter(|&code| {
                        decode_into(m, code, &mut t);
                        is_degenerate(map, &t) == want_degenerate
                    })
                    .collect()
            }
        };
        let position = (variant != Variant::YB).then(|| {
            let mut pos = vec![ABSENT; total as usize];
            for (i, &code) in generators.iter().enumerate() {
                pos[code as usize] = i as u32;
            }
            pos
        });
        ChainBasis { m, n, variant, generators, position }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn index_of(&self, code: u64) -> Option<usize> {
        match &self.position {
            None => ((code as usize) < self.generators.len()).then_some(code as usize),
            Some(pos) => pos.get(code as usize).copied().filter(|&p| p != ABSENT).map(|p| p as usize),
        }
    }

    pub fn tuple(&self, index: usize) -> Vec<Element> {
        decode(self.m, self.n, self.generators[index])
    }
}

/// Signed face terms of `∂_n(t)`, accumulated by target code, zeros dropped,
/// sorted by code. Empty for `n = 1` since `C_0 = 0`.
pub fn boundary_terms<F: FaceMaps + ?Sized>(map: &F, t: &[Element]) -> Vec<(u64, i64)> {
    let n = t.len();
    if n <= 1 {
        return Vec::new();
    }
    let m = map.size();
    let mut acc: Vec<(u64, i64)> = Vec::with_capacity(2 * n);
    let mut push = |code: u64, v: i64| match acc.iter_mut().find(|(c, _)| *c == code) {
        Some((_, w)) => *w += v,
        None => acc.push((code, v)),
    };
    let mut face = Vec::with_capacity(n);
    for i in 1..=n {
        let sign = if i % 2 == 1 { 1 } else { -1 };
        map.face_left_into(i, t, &mut face);
        push(encode(m, &face), sign);
        map.face_right_into(i, t, &mut face);
        push(encode(m, &face), -sign);
    }
    acc.retain(|(_, v)| *v != 0);
    acc.sort_unstable();
    acc
}

/// Matrix of `∂_n : C_n -> C_{n-1}` in the bases of the chosen variant.
///
/// For `D`, every term of a degenerate generator's boundary must itself be
/// degenerate; a violation is reported as an error. For `NYB`, terms landing
/// on degenerate tuples are dropped.
pub fn boundary_matrix<F: FaceMaps + ?Sized>(
    map: &F,
    n: usize,
    variant: Variant,
) -> Result<SparseIntMatrix, ComplexError> {
    assert!(n >= 1, "boundary degree must be at least 1");
    if variant != Variant::YB && !diagonal_condition(map) {
        return Err(ComplexError::DiagonalCondition);
    }
    let source = ChainBasis::new(map, n, variant);
    let target = ChainBasis::new(map, n - 1, variant);
    let m = map.size();
    let columns: Result<Vec<Vec<(usize, BigInt)>>, ComplexError> = source
        .generators()
        .par_iter()
        .map(|&code| {
            let t = decode(m, n, code);
            let mut col = Vec::new();
            for (target_code, v) in boundary_terms(map, &t) {
                match target.index_of(target_code) {
                    Some(row) => col.push((row, BigInt::from(v))),
                    None if variant == Variant::D => {
                        return Err(ComplexError::DegenerateClosure {
                            source_tuple: t.clone(),
                            target_tuple: decode(m, n - 1, target_code),
                        })
                    }
                    None => {}
                }
            }
            Ok(col)
        })
        .collect();
    Ok(SparseIntMatrix::from_columns(target.len(), columns?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biquandle::{make_alexander, make_cyclic};

    #[test]
    fn encode_decode_round_trip() {
        for code in 0..125u64 {
            assert_eq!(encode(5, &decode(5, 3, code)), code);
        }
        assert_eq!(encode(3, &[1, 0, 2]), 11);
        assert_eq!(TupleIndex::encode(3, &[1, 0, 2]).decode(3), vec![1, 0, 2]);
    }

    #[test]
    fn face_examples() {
        let c5 = make_cyclic(5);
        assert_eq!(face_left(c5.map(), 2, &[1, 3, 4]).unwrap(), vec![0, 4]);
        assert_eq!(face_right(c5.map(), 2, &[1, 3, 4]).unwrap(), vec![1, 0]);
        assert_eq!(face_left(c5.map(), 1, &[1, 3, 4]).unwrap(), vec![3, 4]);
        assert_eq!(face_right(c5.map(), 3, &[1, 3, 4]).unwrap(), vec![1, 3]);
        let alex = make_alexander(4, 3, 3).unwrap();
        assert_eq!(face_left(alex.map(), 2, &[1, 2, 3]).unwrap(), vec![3, 3]);
        assert_eq!(face_right(alex.map(), 1, &[1, 2, 3]).unwrap(), vec![0, 3]);
    }

    #[test]
    fn face_index_errors() {
        let c = make_cyclic(3);
        assert!(matches!(face_left(c.map(), 0, &[0, 1]), Err(ComplexError::FaceIndex { .. })));
        assert!(matches!(face_right(c.map(), 3, &[0, 1]), Err(ComplexError::FaceIndex { .. })));
        assert!(matches!(face_right(c.map(), 1, &[0, 7]), Err(ComplexError::BadElement { .. })));
    }

    #[test]
    fn degeneracy() {
        assert!(is_degenerate(make_cyclic(2).map(), &[1, 0]));
        assert!(!is_degenerate(make_cyclic(2).map(), &[1]));
        assert!(!is_degenerate(make_cyclic(3).map(), &[0, 1, 2]));
    }

    #[test]
    fn cyclic_two_boundary() {
        let d2 = boundary_matrix(make_cyclic(2).map(), 2, Variant::YB).unwrap();
        let expected = SparseIntMatrix::from_dense(&[vec![2, 0, 0, -2], vec![-2, 0, 0, 2]]);
        assert_eq!(d2, expected);
    }

    #[test]
    fn degree_one_boundary_is_zero() {
        let d1 = boundary_matrix(make_cyclic(4).map(), 1, Variant::YB).unwrap();
        assert_eq!((d1.rows(), d1.cols()), (0, 4));
        assert!(d1.is_zero());
    }

    #[test]
    fn degenerate_basis_size() {
        let c2 = make_cyclic(2);
        assert_eq!(ChainBasis::new(c2.map(), 3, Variant::D).len(), 6);
        assert_eq!(ChainBasis::new(c2.map(), 1, Variant::D).len(), 0);
        assert_eq!(ChainBasis::new(c2.map(), 1, Variant::NYB).len(), 2);
        assert_eq!(ChainBasis::new(c2.map(), 0, Variant::YB).len(), 0);
    }

    #[test]
    fn identity_rejected_for_normalized_complex() {
        let id = YBMap::identity(2).unwrap();
        assert_eq!(boundary_matrix(&id, 2, Variant::NYB), Err(ComplexError::DiagonalCondition));
        assert!(boundary_matrix(&id, 2, Variant::YB).is_ok());
    }

    #[test]
    fn variants_parse() {
        assert_eq!("nyb".parse::<Variant>().unwrap(), Variant::NYB);
        assert_eq!("YB".parse::<Variant>().unwrap(), Variant::YB);
        assert!("x".parse::<Variant>().is_err());
    }
}
