//! Finite set-theoretic Yang-Baxter operators and biquandles.
//!
//! Elements of an `m`-element set are the integers `0..m`. An operator
//! `R(a, b) = (R1(a, b), R2(a, b))` is stored as two row-major `m x m` tables
//! whose row index is the first argument.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intlinalg::{smith_normal_form, AbelianGroup, LinalgError, SparseIntMatrix};

pub type Element = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BiquandleError {
    #[error("set size must be positive")]
    EmptySet,
    #[error("table {table} has shape {rows}x{cols}, expected {m}x{m}")]
    Dimension { table: &'static str, rows: usize, cols: usize, m: usize },
    #[error("table {table} entry ({row}, {col}) = {value} is outside 0..{m}")]
    EntryOutOfRange { table: &'static str, row: usize, col: usize, value: i64, m: usize },
    #[error("parameter {name} = {value} is not a unit modulo {m}")]
    NonUnit { name: &'static str, value: i64, m: usize },
    #[error("(1 - s)(1 - t) is not 0 modulo {m} for s = {s}, t = {t}")]
    Incompatible { m: usize, s: i64, t: i64 },
    #[error("{axiom} fails at {witness:?}")]
    AxiomFailure { axiom: Axiom, witness: Vec<Element> },
    #[error("invalid biquandle JSON: {0}")]
    Json(String),
    #[error("unrecognized biquandle specifier `{0}` (expected cyclic:<m> or alexander:<m>:<s>:<t>)")]
    BadSpec(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    YangBaxter,
    Bijective,
    LeftInvertible,
    RightInvertible,
    Diagonal,
}

impl Axiom {
    pub const ALL: [Axiom; 5] =
        [Axiom::YangBaxter, Axiom::Bijective, Axiom::LeftInvertible, Axiom::RightInvertible, Axiom::Diagonal];
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::YangBaxter => "Yang-Baxter equation",
            Axiom::Bijective => "R bijective on X x X",
            Axiom::LeftInvertible => "R1 left-invertible",
            Axiom::RightInvertible => "R2 right-invertible",
            Axiom::Diagonal => "unique fixed pair per element",
        };
        f.write_str(name)
    }
}

/// Outcome of one axiom check; a failure carries the first witness found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail { witness: Vec<Element> },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    fn from_witness(w: Option<Vec<Element>>) -> Self {
        match w {
            None => Verdict::Pass,
            Some(witness) => Verdict::Fail { witness },
        }
    }
}

/// Per-axiom verdicts, kept separately so that a Yang-Baxter operator that is
/// not a biquandle can still be used where only the YBE matters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certification {
    pub yang_baxter: Verdict,
    pub bijective: Verdict,
    pub left_invertible: Verdict,
    pub right_invertible: Verdict,
    pub diagonal: Verdict,
}

impl Certification {
    pub fn verdict(&self, axiom: Axiom) -> &Verdict {
        match axiom {
            Axiom::YangBaxter => &self.yang_baxter,
            Axiom::Bijective => &self.bijective,
            Axiom::LeftInvertible => &self.left_invertible,
            Axiom::RightInvertible => &self.right_invertible,
            Axiom::Diagonal => &self.diagonal,
        }
    }

    pub fn first_failure(&self) -> Option<(Axiom, Vec<Element>)> {
        Axiom::ALL.iter().find_map(|&a| match self.verdict(a) {
            Verdict::Pass => None,
            Verdict::Fail { witness } => Some((a, witness.clone())),
        })
    }

    pub fn is_yb_operator(&self) -> bool {
        self.yang_baxter.passed() && self.bijective.passed()
    }

    pub fn is_biquandle(&self) -> bool {
        self.first_failure().is_none()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct YBMap {
    m: usize,
    r1: Vec<Element>,
    r2: Vec<Element>,
}

impl fmt::Debug for YBMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("YBMap").field("m", &self.m).field("R1", &self.r1).field("R2", &self.r2).finish()
    }
}

fn flatten(table: &'static str, m: usize, rows: &[Vec<i64>]) -> Result<Vec<Element>, BiquandleError> {
    let bad_shape = |cols| BiquandleError::Dimension { table, rows: rows.len(), cols, m };
    if rows.len() != m {
        return Err(bad_shape(rows.first().map_or(0, Vec::len)));
    }
    let mut out = Vec::with_capacity(m * m);
    for (a, row) in rows.iter().enumerate() {
        if row.len() != m {
            return Err(bad_shape(row.len()));
        }
        for (b, &v) in row.iter().enumerate() {
            if v < 0 || v as usize >= m {
                return Err(BiquandleError::EntryOutOfRange { table, row: a, col: b, value: v, m });
            }
            out.push(v as Element);
        }
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    m: usize,
    #[serde(rename = "R1")]
    r1: Vec<Vec<i64>>,
    #[serde(rename = "R2")]
    r2: Vec<Vec<i64>>,
}

impl YBMap {
    /// Builds a map from two `m x m` tables indexed `[a][b]`.
    pub fn from_tables(m: usize, r1: &[Vec<i64>], r2: &[Vec<i64>]) -> Result<Self, BiquandleError> {
        if m == 0 {
            return Err(BiquandleError::EmptySet);
        }
        Ok(YBMap { m, r1: flatten("R1", m, r1)?, r2: flatten("R2", m, r2)? })
    }

    pub fn from_fn(m: usize, f: impl Fn(Element, Element) -> (Element, Element)) -> Result<Self, BiquandleError> {
        if m == 0 {
            return Err(BiquandleError::EmptySet);
        }
        let mut r1 = Vec::with_capacity(m * m);
        let mut r2 = Vec::with_capacity(m * m);
        for a in 0..m as Element {
            for b in 0..m as Element {
                let (x, y) = f(a, b);
                for (table, v) in [("R1", x), ("R2", y)] {
                    if v as usize >= m {
                        return Err(BiquandleError::EntryOutOfRange {
                            table,
                            row: a as usize,
                            col: b as usize,
                            value: i64::from(v),
                            m,
                        });
                    }
                }
                r1.push(x);
                r2.push(y);
            }
        }
        Ok(YBMap { m, r1, r2 })
    }

    /// `R = Id` on `X x X`.
    pub fn identity(m: usize) -> Result<Self, BiquandleError> {
        YBMap::from_fn(m, |a, b| (a, b))
    }

    pub fn from_json(text: &str) -> Result<Self, BiquandleError> {
        let file: TableFile = serde_json::from_str(text).map_err(|e| BiquandleError::Json(e.to_string()))?;
        YBMap::from_tables(file.m, &file.r1, &file.r2)
    }

    pub fn to_json(&self) -> String {
        let (r1, r2) = self.tables();
        let file = TableFile { m: self.m, r1, r2 };
        serde_json::to_string(&file).expect("tables serialize")
    }

    pub fn tables(&self) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
        let to_rows = |t: &[Element]| t.chunks(self.m).map(|row| row.iter().map(|&v| i64::from(v)).collect()).collect();
        (to_rows(&self.r1), to_rows(&self.r2))
    }

    pub fn size(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn r1(&self, a: Element, b: Element) -> Element {
        self.r1[a as usize * self.m + b as usize]
    }

    #[inline]
    pub fn r2(&self, a: Element, b: Element) -> Element {
        self.r2[a as usize * self.m + b as usize]
    }

    #[inline]
    pub fn apply(&self, a: Element, b: Element) -> (Element, Element) {
        (self.r1(a, b), self.r2(a, b))
    }

    pub fn is_fixed_pair(&self, a: Element, b: Element) -> bool {
        self.apply(a, b) == (a, b)
    }

    fn elements(&self) -> impl Iterator<Item = Element> + Clone {
        0..self.m as Element
    }

    /// Runs every axiom check and records each verdict.
    pub fn certification(&self) -> Certification {
        Certification {
            yang_baxter: Verdict::from_witness(check_yang_baxter(self).err()),
            bijective: Verdict::from_witness(self.bijectivity_witness()),
            left_invertible: Verdict::from_witness(self.left_invertibility_witness()),
            right_invertible: Verdict::from_witness(self.right_invertibility_witness()),
            diagonal: Verdict::from_witness(self.diagonal_witness()),
        }
    }

    fn bijectivity_witness(&self) -> Option<Vec<Element>> {
        let mut seen: HashMap<(Element, Element), (Element, Element)> = HashMap::new();
        for a in self.elements() {
            for b in self.elements() {
                if let Some(&(a0, b0)) = seen.get(&self.apply(a, b)) {
                    return Some(vec![a0, b0, a, b]);
                }
                seen.insert(self.apply(a, b), (a, b));
            }
        }
        None
    }

    // R1(a, .) must be a bijection for each a; witness is (a, b, b') with equal images
    fn left_invertibility_witness(&self) -> Option<Vec<Element>> {
        for a in self.elements() {
            let mut first = vec![None; self.m];
            for b in self.elements() {
                let img = self.r1(a, b) as usize;
                if let Some(b0) = first[img] {
                    return Some(vec![a, b0, b]);
                }
                first[img] = Some(b);
            }
        }
        None
    }

    // R2(., b) must be a bijection for each b; witness is (a, a', b)
    fn right_invertibility_witness(&self) -> Option<Vec<Element>> {
        for b in self.elements() {
            let mut first = vec![None; self.m];
            for a in self.elements() {
                let img = self.r2(a, b) as usize;
                if let Some(a0) = first[img] {
                    return Some(vec![a0, a, b]);
                }
                first[img] = Some(a);
            }
        }
        None
    }

    // witness is the element a whose number of fixed partners is not one
    fn diagonal_witness(&self) -> Option<Vec<Element>> {
        self.elements().find(|&a| self.elements().filter(|&b| self.is_fixed_pair(a, b)).count() != 1).map(|a| vec![a])
    }
}

/// Checks `(R x Id)(Id x R)(R x Id) = (Id x R)(R x Id)(Id x R)` on all
/// triples, evaluating each side by explicit composition. The error carries
/// the first failing triple.
pub fn check_yang_baxter(map: &YBMap) -> Result<(), Vec<Element>> {
    let left = |a, b, c| -> [Element; 3] {
        let (a, b) = map.apply(a, b);
        let (b, c) = map.apply(b, c);
        let (a, b) = map.apply(a, b);
        [a, b, c]
    };
    let right = |a, b, c| -> [Element; 3] {
        let (b, c) = map.apply(b, c);
        let (a, b) = map.apply(a, b);
        let (b, c) = map.apply(b, c);
        [a, b, c]
    };
    for a in map.elements() {
        for b in map.elements() {
            for c in map.elements() {
                if left(a, b, c) != right(a, b, c) {
                    return Err(vec![a, b, c]);
                }
            }
        }
    }
    Ok(())
}

/// A certified biquandle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biquandle {
    map: YBMap,
    certified: Certification,
}

impl Biquandle {
    pub fn map(&self) -> &YBMap {
        &self.map
    }

    pub fn certification(&self) -> &Certification {
        &self.certified
    }

    pub fn size(&self) -> usize {
        self.map.m
    }

    pub fn into_map(self) -> YBMap {
        self.map
    }
}

/// Accepts the map only if every biquandle axiom holds.
pub fn certify(map: YBMap) -> Result<Biquandle, BiquandleError> {
    let certified = map.certification();
    if let Some((axiom, witness)) = certified.first_failure() {
        return Err(BiquandleError::AxiomFailure { axiom, witness });
    }
    Ok(Biquandle { map, certified })
}

/// The cyclic biquandle on `Z/m`: `R(a, b) = (b + 1, a - 1)`.
pub fn make_cyclic(m: usize) -> Biquandle {
    assert!(m >= 1, "cyclic biquandle needs m >= 1");
    let mm = m as Element;
    let map = YBMap::from_fn(m, |a, b| ((b + 1) % mm, (a + mm - 1) % mm)).expect("entries reduced mod m");
    certify(map).expect("cyclic biquandle satisfies every axiom")
}

/// The Alexander biquandle on `Z/m`: `R(x, y) = ((1-s)x + sy, tx + (1-t)y)`.
pub fn make_alexander(m: usize, s: i64, t: i64) -> Result<Biquandle, BiquandleError> {
    if m == 0 {
        return Err(BiquandleError::EmptySet);
    }
    let mi = m as i64;
    for (name, value) in [("s", s), ("t", t)] {
        if value.mod_floor(&mi).gcd(&mi) != 1 {
            return Err(BiquandleError::NonUnit { name, value, m });
        }
    }
    if ((1 - s) * (1 - t)).mod_floor(&mi) != 0 {
        return Err(BiquandleError::Incompatible { m, s, t });
    }
    let map = YBMap::from_fn(m, |x, y| {
        let (x, y) = (i64::from(x), i64::from(y));
        (((1 - s) * x + s * y).mod_floor(&mi) as Element, (t * x + (1 - t) * y).mod_floor(&mi) as Element)
    })?;
    Ok(certify(map).expect("Alexander biquandle satisfies every axiom"))
}

/// Parses `cyclic:<m>` or `alexander:<m>:<s>:<t>`.
pub fn from_builtin(spec: &str) -> Result<Biquandle, BiquandleError> {
    let bad = || BiquandleError::BadSpec(spec.to_string());
    let parts: Vec<&str> = spec.trim().split(':').collect();
    match parts.as_slice() {
        ["cyclic", m] => {
            let m: usize = m.parse().map_err(|_| bad())?;
            if m == 0 {
                return Err(BiquandleError::EmptySet);
            }
            Ok(make_cyclic(m))
        }
        ["alexander", m, s, t] => {
            let m: usize = m.parse().map_err(|_| bad())?;
            let s: i64 = s.parse().map_err(|_| bad())?;
            let t: i64 = t.parse().map_err(|_| bad())?;
            make_alexander(m, s, t)
        }
        _ => Err(bad()),
    }
}

/// Coarsest partition of `X` with `y ~ y'` implying `R2(x, y) = R2(x, y')`
/// and `R1(x, y) ~ R1(x, y')` for every `x`. Returned as a class label per
/// element. Two elements share a label iff they act identically on cochains
/// of every degree.
pub fn action_partition(map: &YBMap) -> Vec<usize> {
    let relabel = |sigs: Vec<Vec<Element>>| -> Vec<usize> {
        let mut ids: HashMap<Vec<Element>, usize> = HashMap::new();
        sigs.into_iter()
            .map(|s| {
                let next = ids.len();
                *ids.entry(s).or_insert(next)
            })
            .collect()
    };
    let mut labels = relabel(map.elements().map(|y| map.elements().map(|x| map.r2(x, y)).collect()).collect());
    loop {
        let sigs = map
            .elements()
            .map(|y| {
                let mut s = vec![labels[y as usize] as Element];
                s.extend(map.elements().map(|x| labels[map.r1(x, y) as usize] as Element));
                s
            })
            .collect();
        let next = relabel(sigs);
        let classes = |l: &[usize]| l.iter().max().map_or(0, |v| v + 1);
        if classes(&next) == classes(&labels) {
            return next;
        }
        labels = next;
    }
}

/// Property (I): `f.y = f.R1(a, y)` for every cochain of every degree.
pub fn check_property_i(map: &YBMap) -> bool {
    let labels = action_partition(map);
    map.elements().all(|y| map.elements().all(|a| labels[y as usize] == labels[map.r1(a, y) as usize]))
}

/// Tuple part of the action of `y` in degree `n`: threads `y` leftward
/// through `(x_1, ..., x_n)`.
pub fn action_map(map: &YBMap, y: Element, tuple: &[Element]) -> Vec<Element> {
    let mut out = vec![0; tuple.len()];
    let mut c = y;
    for j in (0..tuple.len()).rev() {
        out[j] = map.r2(tuple[j], c);
        c = map.r1(tuple[j], c);
    }
    out
}

/// Direct check of property (I) by comparing action maps on all tuples of
/// degree `1..=max_degree`.
pub fn check_property_i_bounded(map: &YBMap, max_degree: usize) -> bool {
    let m = map.m;
    for n in 1..=max_degree {
        let count = m.pow(n as u32);
        let tuples: Vec<Vec<Element>> = (0..count)
            .map(|code| {
                let mut t = vec![0; n];
                let mut c = code;
                for slot in t.iter_mut().rev() {
                    *slot = (c % m) as Element;
                    c /= m;
                }
                t
            })
            .collect();
        let tables: Vec<Vec<Vec<Element>>> =
            map.elements().map(|y| tuples.iter().map(|t| action_map(map, y, t)).collect()).collect();
        for y in map.elements() {
            for a in map.elements() {
                if tables[y as usize] != tables[map.r1(a, y) as usize] {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub lhs: Vec<Element>,
    pub rhs: Vec<Element>,
    /// Both sides are the same word.
    pub trivial: bool,
}

/// Group presentation with generators `0..generator_count`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generator_count: usize,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn nontrivial_relations(&self) -> impl Iterator<Item = &Relation> {
        self.relations.iter().filter(|r| !r.trivial)
    }
}

/// Structure group `<X | ab = R1(a,b) R2(a,b)>`, one relation per pair in
/// row-major order, trivial relations kept and flagged.
pub fn structure_group_presentation(b: &Biquandle) -> Presentation {
    let map = b.map();
    let mut relations = Vec::with_capacity(map.m * map.m);
    for x in map.elements() {
        for y in map.elements() {
            let lhs = vec![x, y];
            let rhs = vec![map.r1(x, y), map.r2(x, y)];
            let trivial = lhs == rhs;
            relations.push(Relation { lhs, rhs, trivial });
        }
    }
    Presentation { generator_count: map.m, relations }
}

/// Abelianization from the Smith form of the exponent-difference matrix.
pub fn abelianization(p: &Presentation) -> Result<AbelianGroup, LinalgError> {
    let mut triplets = Vec::new();
    for (i, rel) in p.relations.iter().enumerate() {
        for &g in &rel.lhs {
            triplets.push((i, g as usize, BigInt::from(1)));
        }
        for &g in &rel.rhs {
            triplets.push((i, g as usize, BigInt::from(-1)));
        }
    }
    let matrix = SparseIntMatrix::from_triplets(p.relations.len(), p.generator_count, triplets)?;
    let snf = smith_normal_form(&matrix)?;
    Ok(AbelianGroup::new(p.generator_count - snf.rank, snf.torsion()))
}
