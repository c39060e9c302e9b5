use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use super::HomologyError;
use crate::biquandle::Element;
use crate::complex::{boundary_matrix, boundary_terms, decode, encode, tuple_count, FaceMaps, Variant};
use crate::intlinalg::{smith_normal_form_with, SmithForm, SnfOptions, SparseIntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CochainRing {
    Z,
    Q,
}

impl fmt::Display for CochainRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CochainRing::Z => "Z",
            CochainRing::Q => "Q",
        })
    }
}

/// A sparse function `X^n -> Z` or `X^n -> Q`, keyed by tuple code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    m: usize,
    n: usize,
    ring: CochainRing,
    values: BTreeMap<u64, BigRational>,
}

impl Cochain {
    pub fn zero(m: usize, n: usize, ring: CochainRing) -> Self {
        Cochain { m, n, ring, values: BTreeMap::new() }
    }

    /// The dual basis element `e_t`.
    pub fn basis(m: usize, tuple: &[Element], ring: CochainRing) -> Self {
        let mut c = Cochain::zero(m, tuple.len(), ring);
        c.values.insert(encode(m, tuple), BigRational::one());
        c
    }

    pub fn from_values(
        m: usize,
        n: usize,
        ring: CochainRing,
        values: impl IntoIterator<Item = (u64, BigRational)>,
    ) -> Result<Self, HomologyError> {
        let mut c = Cochain::zero(m, n, ring);
        let len = c.len() as u64;
        for (code, v) in values {
            if code >= len {
                return Err(HomologyError::InvalidCochain(format!("code {code} outside 0..{len}")));
            }
            if ring == CochainRing::Z && !v.is_integer() {
                return Err(HomologyError::InvalidCochain(format!("non-integral value {v} in a Z cochain")));
            }
            let slot = c.values.entry(code).or_insert_with(BigRational::zero);
            *slot += v;
            if slot.is_zero() {
                c.values.remove(&code);
            }
        }
        Ok(c)
    }

    pub fn from_integer_vec(m: usize, n: usize, v: &[BigInt]) -> Self {
        let mut c = Cochain::zero(m, n, CochainRing::Z);
        assert_eq!(v.len(), c.len(), "vector length must be m^n");
        for (code, x) in v.iter().enumerate() {
            if !x.is_zero() {
                c.values.insert(code as u64, BigRational::from_integer(x.clone()));
            }
        }
        c
    }

    pub fn from_rational_vec(m: usize, n: usize, v: &[BigRational]) -> Self {
        let mut c = Cochain::zero(m, n, CochainRing::Q);
        assert_eq!(v.len(), c.len(), "vector length must be m^n");
        for (code, x) in v.iter().enumerate() {
            if !x.is_zero() {
                c.values.insert(code as u64, x.clone());
            }
        }
        c
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> CochainRing {
        self.ring
    }

    /// Size of the domain, `m^n` (zero in degree 0).
    pub fn len(&self) -> usize {
        tuple_count(self.m, self.n)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, tuple: &[Element]) -> BigRational {
        self.get_code(encode(self.m, tuple))
    }

    pub fn get_code(&self, code: u64) -> BigRational {
        self.values.get(&code).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.values.iter().map(|(c, v)| (*c, v))
    }

    pub fn to_rational(&self) -> Cochain {
        Cochain { ring: CochainRing::Q, ..self.clone() }
    }

    pub fn to_integer_vec(&self) -> Option<Vec<BigInt>> {
        let mut out = vec![BigInt::zero(); self.len()];
        for (code, v) in &self.values {
            if !v.is_integer() {
                return None;
            }
            out[*code as usize] = v.to_integer();
        }
        Some(out)
    }

    pub fn to_rational_vec(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.len()];
        for (code, v) in &self.values {
            out[*code as usize] = v.clone();
        }
        out
    }

    fn check_shape(&self, other: &Cochain) {
        assert_eq!((self.m, self.n), (other.m, other.n), "cochain shapes differ");
    }

    fn joined_ring(&self, other: &Cochain) -> CochainRing {
        if self.ring == CochainRing::Q || other.ring == CochainRing::Q {
            CochainRing::Q
        } else {
            CochainRing::Z
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        self.check_shape(other);
        let mut out = Cochain { ring: self.joined_ring(other), ..self.clone() };
        for (code, v) in &other.values {
            out.accumulate(*code, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.scale_int(&BigInt::from(-1)))
    }

    pub fn scale_int(&self, k: &BigInt) -> Cochain {
        if k.is_zero() {
            return Cochain::zero(self.m, self.n, self.ring);
        }
        let k = BigRational::from_integer(k.clone());
        Cochain { values: self.values.iter().map(|(c, v)| (*c, v * &k)).collect(), ..self.clone() }
    }

    fn accumulate(&mut self, code: u64, v: BigRational) {
        let slot = self.values.entry(code).or_insert_with(BigRational::zero);
        *slot += v;
        if slot.is_zero() {
            self.values.remove(&code);
        }
    }

    /// Constant on every diagonal-shift orbit of `Z/m`.
    pub fn is_orbit_constant(&self) -> bool {
        (0..self.len() as u64).all(|code| {
            let t = decode(self.m, self.n, code);
            self.get_code(code) == self.get(&shift(self.m, &t, 1))
        })
    }
}

fn shift(m: usize, t: &[Element], by: usize) -> Vec<Element> {
    t.iter().map(|&x| ((x as usize + by) % m) as Element).collect()
}

fn check_size<F: FaceMaps + ?Sized>(map: &F, f: &Cochain) -> Result<(), HomologyError> {
    if map.size() != f.m {
        return Err(HomologyError::ShapeMismatch { got_m: f.m, got_n: f.n, want_m: map.size(), want_n: f.n });
    }
    Ok(())
}

impl Serialize for Cochain {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Values<'a>(&'a BTreeMap<u64, BigRational>);
        impl Serialize for Values<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.collect_map(self.0.iter().map(|(c, v)| (c.to_string(), v.to_string())))
            }
        }
        let values = Values(&self.values);
        let mut st = serializer.serialize_struct("Cochain", 4)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("ring", &self.ring)?;
        st.serialize_field("values", &values)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Cochain {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            m: usize,
            n: usize,
            ring: CochainRing,
            values: BTreeMap<String, String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut values = Vec::with_capacity(raw.values.len());
        for (code, v) in raw.values {
            let code: u64 = code.parse().map_err(de::Error::custom)?;
            let v: BigRational = v.parse().map_err(de::Error::custom)?;
            values.push((code, v));
        }
        Cochain::from_values(raw.m, raw.n, raw.ring, values).map_err(de::Error::custom)
    }
}

/// `δf = f ∘ ∂_{n+1}`, evaluated tuple by tuple.
pub fn coboundary<F: FaceMaps + ?Sized>(map: &F, f: &Cochain) -> Result<Cochain, HomologyError> {
    check_size(map, f)?;
    let m = f.m;
    let mut out = Cochain::zero(m, f.n + 1, f.ring);
    for code in 0..out.len() as u64 {
        let t = decode(m, f.n + 1, code);
        let mut v = BigRational::zero();
        for (target, coeff) in boundary_terms(map, &t) {
            if let Some(x) = f.values.get(&target) {
                v += x * BigRational::from_integer(coeff.into());
            }
        }
        out.accumulate(code, v);
    }
    Ok(out)
}

/// `(f·y)(t) = f(d^l_{n+1,n+1}(t, y))`.
pub fn act_on_cochain<F: FaceMaps + ?Sized>(map: &F, f: &Cochain, y: Element) -> Result<Cochain, HomologyError> {
    check_size(map, f)?;
    let m = f.m;
    let n = f.n;
    let mut out = Cochain::zero(m, n, f.ring);
    let mut ext = vec![0; n + 1];
    ext[n] = y;
    let mut face = Vec::with_capacity(n + 1);
    for code in 0..f.len() as u64 {
        let t = decode(m, n, code);
        ext[..n].copy_from_slice(&t);
        map.face_left_into(n + 1, &ext, &mut face);
        if let Some(v) = f.values.get(&encode(m, &face)) {
            out.values.insert(code, v.clone());
        }
    }
    Ok(out)
}

/// `(f·P)(x) = (1/m) Σ_i f(x_1 - i, ..., x_n - i)` on `Z/m`.
pub fn averaging_projector(m: usize, f: &Cochain) -> Result<Cochain, HomologyError> {
    if f.ring != CochainRing::Q {
        return Err(HomologyError::RingMismatch("the averaging projector divides by m and needs Q".into()));
    }
    if f.m != m {
        return Err(HomologyError::ShapeMismatch { got_m: f.m, got_n: f.n, want_m: m, want_n: f.n });
    }
    let inv = BigRational::new(BigInt::one(), BigInt::from(m));
    let mut out = Cochain::zero(m, f.n, CochainRing::Q);
    for (code, v) in &f.values {
        let t = decode(m, f.n, *code);
        let share = v * &inv;
        for i in 0..m {
            out.accumulate(encode(m, &shift(m, &t, i)), share.clone());
        }
    }
    Ok(out)
}

/// Canonical representative of the diagonal orbit: rotated so the last
/// coordinate is zero.
pub fn orbit_representative(m: usize, tuple: &[Element]) -> Vec<Element> {
    match tuple.last() {
        None => Vec::new(),
        Some(&last) => shift(m, tuple, m - last as usize),
    }
}

/// Indicator of the diagonal orbit of `rep`, over Z.
pub fn orbit_cocycle(m: usize, rep: &[Element]) -> Cochain {
    let mut f = Cochain::zero(m, rep.len(), CochainRing::Z);
    for i in 0..m {
        f.values.insert(encode(m, &shift(m, rep, i)), BigRational::one());
    }
    f
}

/// One orbit cocycle per representative with last coordinate zero, in
/// ascending code order: `m^{n-1}` cochains.
pub fn cocycle_basis(m: usize, n: usize) -> Vec<Cochain> {
    assert!(n >= 1, "cocycle degree must be at least 1");
    (0..tuple_count(m, n - 1).max(1) as u64)
        .map(|code| {
            let mut rep = decode(m, n - 1, code);
            rep.push(0);
            orbit_cocycle(m, &rep)
        })
        .collect()
}

/// `f_y(x_1, ..., x_{n-1}) = f(x_1, ..., x_{n-1}, y)`.
pub fn slice_last(f: &Cochain, y: Element) -> Cochain {
    assert!(f.n >= 1, "cannot slice a degree-zero cochain");
    let m = f.m as u64;
    let mut out = Cochain::zero(f.m, f.n - 1, f.ring);
    for (code, v) in &f.values {
        if code % m == u64::from(y) {
            out.values.insert(code / m, v.clone());
        }
    }
    out
}

/// `Δ_y f = Σ_{i=1}^{n} (-1)^i (f_y - f_{y+1}) ∘ d^r_{i,n}` with `y + 1` taken
/// mod `m`. Zero for `n = 1`.
pub fn delta_y<F: FaceMaps + ?Sized>(map: &F, f: &Cochain, y: Element) -> Result<Cochain, HomologyError> {
    check_size(map, f)?;
    let m = f.m;
    let n = f.n;
    if n < 2 {
        return Ok(Cochain::zero(m, n, f.ring));
    }
    let next = ((y as usize + 1) % m) as Element;
    let diff = slice_last(f, y).sub(&slice_last(f, next));
    let mut out = Cochain::zero(m, n, f.ring);
    let mut face = Vec::with_capacity(n);
    for code in 0..f.len() as u64 {
        let t = decode(m, n, code);
        let mut v = BigRational::zero();
        for i in 1..=n {
            map.face_right_into(i, &t, &mut face);
            if let Some(x) = diff.values.get(&encode(m, &face)) {
                if i % 2 == 0 {
                    v += x;
                } else {
                    v -= x;
                }
            }
        }
        out.accumulate(code, v);
    }
    Ok(out)
}

/// Solves `δ^{n-1} g = h` against one operator and degree, reusing a single
/// Smith form of `∂_n^T`.
pub(crate) struct CoboundarySolver {
    m: usize,
    n: usize,
    delta_prev: SmithForm,
    // ∂_{n+1}; h is a cocycle iff h ∘ ∂_{n+1} = 0
    d_next: SparseIntMatrix,
}

impl CoboundarySolver {
    pub(crate) fn new<F: FaceMaps + ?Sized>(map: &F, n: usize) -> Result<Self, HomologyError> {
        if n == 0 {
            return Err(HomologyError::DegreeZero);
        }
        let d_n = boundary_matrix(map, n, Variant::YB)?;
        let opts = SnfOptions { transcript: true, ..Default::default() };
        let delta_prev = smith_normal_form_with(&d_n.transpose(), &opts)?;
        let d_next = boundary_matrix(map, n + 1, Variant::YB)?;
        Ok(CoboundarySolver { m: map.size(), n, delta_prev, d_next })
    }

    pub(crate) fn is_cocycle(&self, h: &Cochain) -> bool {
        let v = h.to_rational_vec();
        self.d_next.columns().all(|col| {
            let mut s = BigRational::zero();
            for (r, c) in col {
                s += &v[*r] * BigRational::from_integer(c.clone());
            }
            s.is_zero()
        })
    }

    pub(crate) fn solve(&self, h: &Cochain, ring: CochainRing) -> Result<Option<Cochain>, HomologyError> {
        if (h.m, h.n) != (self.m, self.n) {
            return Err(HomologyError::ShapeMismatch { got_m: h.m, got_n: h.n, want_m: self.m, want_n: self.n });
        }
        if !self.is_cocycle(h) {
            return Err(HomologyError::NotCocycle);
        }
        match ring {
            CochainRing::Z => {
                let Some(b) = h.to_integer_vec() else {
                    return Err(HomologyError::RingMismatch("integral solve of a non-integral cochain".into()));
                };
                Ok(self.delta_prev.solve_integer(&b).map(|g| Cochain::from_integer_vec(self.m, self.n - 1, &g)))
            }
            CochainRing::Q => Ok(self
                .delta_prev
                .solve_rational(&h.to_rational_vec())
                .map(|g| Cochain::from_rational_vec(self.m, self.n - 1, &g))),
        }
    }
}

/// A witness `g` with `δ^{n-1} g = h` over the ring, or `None` when `h` is
/// not a coboundary. `h` must be a cocycle.
pub fn is_coboundary<F: FaceMaps + ?Sized>(
    map: &F,
    n: usize,
    h: &Cochain,
    ring: CochainRing,
) -> Result<Option<Cochain>, HomologyError> {
    check_size(map, h)?;
    CoboundarySolver::new(map, n)?.solve(h, ring)
}
