//! Sparse pivoting elimination shared by the Smith form, rank and solver paths.
//!
//! The engine repeatedly picks a pivot of least `(|value|, Markowitz cost)`,
//! ties going to the lowest `(row, col)` among the candidates inspected, clears its column with row
//! operations and its row with column operations, and isolates it as a
//! diagonal entry. A non-unit pivot whose column or row leaves a nonzero
//! remainder is not isolated; the smaller remainder becomes the next pivot.

use std::time::Instant;

use super::ring::Ring;
use super::{Budget, LinalgError, SparseIntMatrix};

/// Candidate rows and columns inspected per unit-pivot search.
const SEARCH_LINES: usize = 16;

pub(crate) enum ElimError {
    Overflow,
    Budget(LinalgError),
}

/// Elementary operation `target -= factor * source`, on rows or columns.
#[derive(Clone, Debug)]
pub(crate) struct ElementaryOp<E> {
    pub target: u32,
    pub source: u32,
    pub factor: E,
}

pub(crate) struct Elimination<E> {
    /// Isolated diagonal entries as `(row, col, value)` in isolation order.
    pub pivots: Vec<(usize, usize, E)>,
    pub row_ops: Vec<ElementaryOp<E>>,
    pub col_ops: Vec<ElementaryOp<E>>,
}

struct Eliminator<'a, R: Ring> {
    ring: &'a R,
    rows: Vec<Vec<(u32, R::Elem)>>,
    col_rows: Vec<Vec<u32>>,
    row_units: Vec<u32>,
    col_units: Vec<u32>,
    row_buckets: Buckets,
    col_buckets: Buckets,
    total_units: usize,
    nnz: usize,
    record: bool,
    out: Elimination<R::Elem>,
    budget: &'a Budget,
    started: Instant,
}

pub(crate) fn eliminate<R: Ring>(
    ring: &R,
    m: &SparseIntMatrix,
    record: bool,
    budget: &Budget,
) -> Result<Elimination<R::Elem>, ElimError> {
    let mut e = Eliminator::new(ring, m, record, budget)?;
    e.run()?;
    Ok(e.out)
}

const NIL: u32 = u32::MAX;

/// Lines grouped by their current entry count, as intrusive doubly linked
/// lists so moves are O(1). Iteration order depends only on the sequence of
/// moves, so it is deterministic.
struct Buckets {
    head: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    count: Vec<usize>,
}

impl Buckets {
    fn new(lines: usize) -> Self {
        Buckets { head: Vec::new(), next: vec![NIL; lines], prev: vec![NIL; lines], count: vec![0; lines] }
    }

    fn len(&self) -> usize {
        self.head.len()
    }

    fn set(&mut self, idx: u32, new: usize) {
        let i = idx as usize;
        let old = self.count[i];
        if old == new {
            return;
        }
        if old > 0 {
            let (p, n) = (self.prev[i], self.next[i]);
            if p == NIL {
                self.head[old] = n;
            } else {
                self.next[p as usize] = n;
            }
            if n != NIL {
                self.prev[n as usize] = p;
            }
        }
        self.count[i] = new;
        if new > 0 {
            if self.head.len() <= new {
                self.head.resize(new + 1, NIL);
            }
            let h = self.head[new];
            self.next[i] = h;
            self.prev[i] = NIL;
            if h != NIL {
                self.prev[h as usize] = idx;
            }
            self.head[new] = idx;
        }
    }

    fn iter(&self, k: usize) -> BucketIter<'_> {
        BucketIter { buckets: self, cur: self.head.get(k).copied().unwrap_or(NIL) }
    }
}

struct BucketIter<'a> {
    buckets: &'a Buckets,
    cur: u32,
}

impl Iterator for BucketIter<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.cur == NIL {
            return None;
        }
        let c = self.cur;
        self.cur = self.buckets.next[c as usize];
        Some(c)
    }
}

impl<'a, R: Ring> Eliminator<'a, R> {
    fn new(ring: &'a R, m: &SparseIntMatrix, record: bool, budget: &'a Budget) -> Result<Self, ElimError> {
        let (nr, nc) = (m.rows(), m.cols());
        let mut rows: Vec<Vec<(u32, R::Elem)>> = vec![Vec::new(); nr];
        let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); nc];
        for (r, c, v) in m.triplets() {
            let e = ring.from_bigint(v).ok_or(ElimError::Overflow)?;
            if ring.is_zero(&e) {
                continue;
            }
            rows[r].push((c as u32, e));
            col_rows[c].push(r as u32);
        }
        let mut row_units = vec![0u32; nr];
        let mut col_units = vec![0u32; nc];
        let mut total_units = 0;
        let mut nnz = 0;
        for (r, row) in rows.iter().enumerate() {
            nnz += row.len();
            for (c, v) in row {
                if ring.is_unit(v) {
                    row_units[r] += 1;
                    col_units[*c as usize] += 1;
                    total_units += 1;
                }
            }
        }
        // inserted in reverse so each bucket starts out in ascending order
        let mut row_buckets = Buckets::new(nr);
        for (r, row) in rows.iter().enumerate().rev() {
            row_buckets.set(r as u32, row.len());
        }
        let mut col_buckets = Buckets::new(nc);
        for (c, col) in col_rows.iter().enumerate().rev() {
            col_buckets.set(c as u32, col.len());
        }
        Ok(Eliminator {
            ring,
            rows,
            col_rows,
            row_units,
            col_units,
            row_buckets,
            col_buckets,
            total_units,
            nnz,
            record,
            out: Elimination { pivots: Vec::new(), row_ops: Vec::new(), col_ops: Vec::new() },
            budget,
            started: Instant::now(),
        })
    }

    fn value(&self, r: u32, c: u32) -> Option<&R::Elem> {
        let row = &self.rows[r as usize];
        row.binary_search_by_key(&c, |(col, _)| *col).ok().map(|pos| &row[pos].1)
    }

    fn col_insert(&mut self, c: u32, r: u32) {
        let col = &mut self.col_rows[c as usize];
        if let Err(pos) = col.binary_search(&r) {
            col.insert(pos, r);
        }
        let new = col.len();
        self.col_buckets.set(c, new);
    }

    fn col_remove(&mut self, c: u32, r: u32) {
        let col = &mut self.col_rows[c as usize];
        if let Ok(pos) = col.binary_search(&r) {
            col.remove(pos);
        }
        let new = col.len();
        self.col_buckets.set(c, new);
    }

    fn unit_delta(&mut self, r: u32, c: u32, was: bool, is: bool) {
        match (was, is) {
            (true, false) => {
                self.row_units[r as usize] -= 1;
                self.col_units[c as usize] -= 1;
                self.total_units -= 1;
            }
            (false, true) => {
                self.row_units[r as usize] += 1;
                self.col_units[c as usize] += 1;
                self.total_units += 1;
            }
            _ => {}
        }
    }

    fn check_budget(&self) -> Result<(), ElimError> {
        if let Some(max) = self.budget.max_entries {
            if self.nnz > max {
                return Err(ElimError::Budget(LinalgError::BudgetExceeded(format!(
                    "{} stored entries exceed the limit of {max}",
                    self.nnz
                ))));
            }
        }
        if let Some(limit) = self.budget.max_duration {
            if self.started.elapsed() > limit {
                return Err(ElimError::Budget(LinalgError::BudgetExceeded(format!(
                    "elimination exceeded the wall-clock limit of {:.1}s",
                    limit.as_secs_f64()
                ))));
            }
        }
        Ok(())
    }

    fn check_bits(&self, v: &R::Elem) -> Result<(), ElimError> {
        if let Some(max) = self.budget.max_bits {
            let bits = self.ring.bits(v);
            if bits > max {
                return Err(ElimError::Budget(LinalgError::BudgetExceeded(format!(
                    "intermediate entry of {bits} bits exceeds the limit of {max}"
                ))));
            }
        }
        Ok(())
    }

    /// `row[target] -= q * prow`, where `prow` is a snapshot of the pivot row.
    fn row_op(&mut self, target: u32, prow: &[(u32, R::Elem)], q: &R::Elem) -> Result<(), ElimError> {
        let old_row = std::mem::take(&mut self.rows[target as usize]);
        let old_len = old_row.len();
        let mut merged = Vec::with_capacity(old_len + prow.len());
        let mut a_iter = old_row.into_iter().peekable();
        let mut b_iter = prow.iter().peekable();
        loop {
            let take_a = match (a_iter.peek(), b_iter.peek()) {
                (None, None) => break,
                (Some(_), None) => Some(true),
                (None, Some(_)) => Some(false),
                (Some((ca, _)), Some((cb, _))) => {
                    if ca < cb {
                        Some(true)
                    } else if cb < ca {
                        Some(false)
                    } else {
                        None
                    }
                }
            };
            match take_a {
                Some(true) => merged.push(a_iter.next().unwrap()),
                Some(false) => {
                    let (c, pv) = b_iter.next().unwrap();
                    let zero = self.ring.zero();
                    let nv = self.ring.sub_mul(&zero, q, pv).ok_or(ElimError::Overflow)?;
                    if self.ring.is_zero(&nv) {
                        continue;
                    }
                    self.check_bits(&nv)?;
                    self.col_insert(*c, target);
                    let u = self.ring.is_unit(&nv);
                    self.unit_delta(target, *c, false, u);
                    merged.push((*c, nv));
                }
                None => {
                    let (c, av) = a_iter.next().unwrap();
                    let (_, pv) = b_iter.next().unwrap();
                    let nv = self.ring.sub_mul(&av, q, pv).ok_or(ElimError::Overflow)?;
                    let was = self.ring.is_unit(&av);
                    if self.ring.is_zero(&nv) {
                        self.col_remove(c, target);
                        self.unit_delta(target, c, was, false);
                        continue;
                    }
                    self.check_bits(&nv)?;
                    let is = self.ring.is_unit(&nv);
                    self.unit_delta(target, c, was, is);
                    merged.push((c, nv));
                }
            }
        }
        let new_len = merged.len();
        self.nnz = self.nnz + new_len - old_len;
        self.rows[target as usize] = merged;
        self.row_buckets.set(target, new_len);
        Ok(())
    }

    /// Removes row `r` and column `c` after the pivot at `(r, c)` is isolated.
    fn isolate(&mut self, r: u32, c: u32) {
        let row = std::mem::take(&mut self.rows[r as usize]);
        self.row_buckets.set(r, 0);
        self.nnz -= row.len();
        for (l, v) in row {
            let u = self.ring.is_unit(&v);
            self.unit_delta(r, l, u, false);
            self.col_remove(l, r);
        }
        debug_assert!(self.col_rows[c as usize].is_empty());
    }

    fn find_pivot(&self) -> Option<(u32, u32)> {
        if self.nnz == 0 {
            return None;
        }
        if self.total_units > 0 {
            return self.find_unit_pivot();
        }
        // no units left: global minimum of (|value|, cost, row, col)
        let mut best: Option<(&R::Elem, usize, u32, u32)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                let cost = (row.len() - 1) * (self.col_rows[*c as usize].len() - 1);
                let better = match &best {
                    None => true,
                    Some((bv, bcost, br, bc)) => match self.ring.size_cmp(v, bv) {
                        std::cmp::Ordering::Less => true,
                        std::cmp::Ordering::Greater => false,
                        std::cmp::Ordering::Equal => (cost, r as u32, *c) < (*bcost, *br, *bc),
                    },
                };
                if better {
                    best = Some((v, cost, r as u32, *c));
                }
            }
        }
        best.map(|(_, _, r, c)| (r, c))
    }

    /// Markowitz search over unit entries in order of increasing row and
    /// column counts, examining at most `SEARCH_LINES` candidate lines.
    fn find_unit_pivot(&self) -> Option<(u32, u32)> {
        let mut best: Option<(usize, u32, u32)> = None;
        let mut examined = 0;
        let max_k = self.row_buckets.len().max(self.col_buckets.len());
        for k in 1..max_k {
            if k < self.col_buckets.len() {
                for c in self.col_buckets.iter(k) {
                    if self.col_units[c as usize] == 0 {
                        continue;
                    }
                    if examined >= SEARCH_LINES || best.is_some_and(|b| b.0 == 0) {
                        break;
                    }
                    examined += 1;
                    for &r in &self.col_rows[c as usize] {
                        let v = self.value(r, c).expect("column index out of sync");
                        if !self.ring.is_unit(v) {
                            continue;
                        }
                        let cand = ((self.rows[r as usize].len() - 1) * (k - 1), r, c);
                        if best.is_none_or(|b| cand < b) {
                            best = Some(cand);
                        }
                    }
                }
            }
            if k < self.row_buckets.len() {
                for r in self.row_buckets.iter(k) {
                    if self.row_units[r as usize] == 0 {
                        continue;
                    }
                    if examined >= SEARCH_LINES || best.is_some_and(|b| b.0 == 0) {
                        break;
                    }
                    examined += 1;
                    for (c, v) in &self.rows[r as usize] {
                        if !self.ring.is_unit(v) {
                            continue;
                        }
                        let cand = ((k - 1) * (self.col_rows[*c as usize].len() - 1), r, *c);
                        if best.is_none_or(|b| cand < b) {
                            best = Some(cand);
                        }
                    }
                }
            }
            // entries not yet seen have row and column counts above k
            if let Some((cost, _, _)) = best {
                if cost < k * k || examined >= SEARCH_LINES {
                    break;
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }

    fn run(&mut self) -> Result<(), ElimError> {
        while let Some((pi, pj)) = self.find_pivot() {
            self.check_budget()?;
            let p = self.value(pi, pj).expect("pivot vanished").clone();
            let prow = self.rows[pi as usize].clone();
            let others: Vec<u32> = self.col_rows[pj as usize].iter().copied().filter(|&r| r != pi).collect();
            let mut clean = true;
            for k in others {
                let a = self.value(k, pj).expect("column index out of sync").clone();
                let q = self.ring.quotient(&a, &p).ok_or(ElimError::Overflow)?;
                if !self.ring.is_zero(&q) {
                    self.row_op(k, &prow, &q)?;
                    if self.record {
                        self.out.row_ops.push(ElementaryOp { target: k, source: pi, factor: q });
                    }
                }
                if self.value(k, pj).is_some() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            // column pj now holds only the pivot, so column operations touch row pi alone
            let unit = self.ring.is_unit(&p);
            let mut remainders = Vec::new();
            for (l, a) in &prow {
                if *l == pj {
                    continue;
                }
                let q = self.ring.quotient(a, &p).ok_or(ElimError::Overflow)?;
                if self.record && !self.ring.is_zero(&q) {
                    self.out.col_ops.push(ElementaryOp { target: *l, source: pj, factor: q.clone() });
                }
                if !unit {
                    let r = self.ring.sub_mul(a, &q, &p).ok_or(ElimError::Overflow)?;
                    remainders.push((*l, a.clone(), r));
                }
            }
            if remainders.iter().all(|(_, _, r)| self.ring.is_zero(r)) {
                self.isolate(pi, pj);
                self.out.pivots.push((pi as usize, pj as usize, p));
                continue;
            }
            let mut new_row = Vec::with_capacity(prow.len());
            new_row.push((pj, p.clone()));
            for (l, old, r) in remainders {
                let was = self.ring.is_unit(&old);
                if self.ring.is_zero(&r) {
                    self.col_remove(l, pi);
                    self.unit_delta(pi, l, was, false);
                } else {
                    let is = self.ring.is_unit(&r);
                    self.unit_delta(pi, l, was, is);
                    new_row.push((l, r));
                }
            }
            new_row.sort_by_key(|(c, _)| *c);
            let old_len = prow.len();
            let new_len = new_row.len();
            self.nnz = self.nnz + new_len - old_len;
            self.rows[pi as usize] = new_row;
            self.row_buckets.set(pi, new_len);
        }
        Ok(())
    }
}
