//! Smith normal form and ranks of sparse integer matrices.
//!
//! Elimination runs in two phases. The sparse phase repeatedly pivots on an
//! invertible entry (a unit over `Z`, any nonzero entry over `F_p`), choosing
//! the sparsest column and then the shortest row to keep fill-in low; each
//! such pivot contributes an invariant factor 1. Whatever is left has no unit
//! entries and is finished densely with the least-absolute-value pivot rule.
//! The sparse phase runs in `i64` with checked arithmetic and restarts in
//! arbitrary precision on overflow.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeSet, BinaryHeap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SparseIntMatrix;

/// Invariant factors `d_1 | d_2 | … | d_r` of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Number of nonzero invariant factors.
    pub rank: usize,
    /// The factors greater than 1, in divisibility order; all others are 1.
    pub torsion: Vec<BigInt>,
}

impl SmithForm {
    /// All invariant factors, ones first.
    pub fn divisors(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::one(); self.rank - self.torsion.len()];
        out.extend(self.torsion.iter().cloned());
        out
    }
}

trait Ring: Sync {
    type E: Clone + Send;
    fn lift(&self, v: i64) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    /// Whether `a` may serve as a sparse-phase pivot.
    fn invertible(&self, a: &Self::E) -> bool;
    /// `a / u` for an invertible `u`.
    fn quotient(&self, a: &Self::E, u: &Self::E) -> Self::E;
    /// `x - f * y`, `None` on overflow.
    fn sub_mul(&self, x: &Self::E, f: &Self::E, y: &Self::E) -> Option<Self::E>;
}

struct Checked;

impl Ring for Checked {
    type E = i64;
    fn lift(&self, v: i64) -> i64 {
        v
    }
    fn is_zero(&self, a: &i64) -> bool {
        *a == 0
    }
    fn invertible(&self, a: &i64) -> bool {
        *a == 1 || *a == -1
    }
    fn quotient(&self, a: &i64, u: &i64) -> i64 {
        a * u
    }
    fn sub_mul(&self, x: &i64, f: &i64, y: &i64) -> Option<i64> {
        f.checked_mul(*y).and_then(|p| x.checked_sub(p))
    }
}

struct Big;

impl Ring for Big {
    type E = BigInt;
    fn lift(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn invertible(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
    fn quotient(&self, a: &BigInt, u: &BigInt) -> BigInt {
        a * u
    }
    fn sub_mul(&self, x: &BigInt, f: &BigInt, y: &BigInt) -> Option<BigInt> {
        Some(x - f * y)
    }
}

struct ModP {
    p: u64,
}

impl ModP {
    fn inverse(&self, a: u64) -> u64 {
        let (mut result, mut base, mut e) = (1u128, a as u128, self.p - 2);
        let p = self.p as u128;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        result as u64
    }
}

impl Ring for ModP {
    type E = u64;
    fn lift(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn invertible(&self, a: &u64) -> bool {
        *a != 0
    }
    fn quotient(&self, a: &u64, u: &u64) -> u64 {
        ((*a as u128 * self.inverse(*u) as u128) % self.p as u128) as u64
    }
    fn sub_mul(&self, x: &u64, f: &u64, y: &u64) -> Option<u64> {
        let p = self.p as u128;
        let prod = (*f as u128 * *y as u128) % p;
        Some(((*x as u128 + p - prod) % p) as u64)
    }
}

/// Outcome of the sparse phase.
struct Reduced<E> {
    pivots: usize,
    /// Remaining nonzero entries `(row, col, value)`.
    rest: Vec<(u32, u32, E)>,
}

struct Overflow;

fn sparse_phase<R: Ring>(ring: &R, m: &SparseIntMatrix) -> Result<Reduced<R::E>, Overflow> {
    let nrows = m.rows();
    let ncols = m.cols();
    let mut rows: Vec<Vec<(u32, R::E)>> = vec![Vec::new(); nrows];
    let mut cols: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); ncols];
    for (r, c, v) in m.triples() {
        let e = ring.lift(v);
        if !ring.is_zero(&e) {
            rows[r].push((c as u32, e));
            cols[c].insert(r as u32);
        }
    }
    // triples come column by column, so each row is already sorted
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> = (0..ncols)
        .filter(|&c| !cols[c].is_empty())
        .map(|c| Reverse((cols[c].len(), c as u32)))
        .collect();
    let mut pivots = 0usize;
    let mut touched: BTreeSet<u32> = BTreeSet::new();
    while let Some(Reverse((count, c))) = heap.pop() {
        let cu = c as usize;
        if cols[cu].len() != count || count == 0 {
            continue;
        }
        let mut best: Option<(usize, u32)> = None;
        for &r in &cols[cu] {
            let row = &rows[r as usize];
            let idx = row.binary_search_by_key(&c, |e| e.0).expect("row/column index agree");
            if ring.invertible(&row[idx].1) && best.is_none_or(|b| (row.len(), r) < b) {
                best = Some((row.len(), r));
            }
        }
        let Some((_, pr)) = best else {
            // no invertible entry; revisited if the column changes
            continue;
        };
        let pivot_row = std::mem::take(&mut rows[pr as usize]);
        touched.clear();
        for (k, _) in &pivot_row {
            cols[*k as usize].remove(&pr);
            touched.insert(*k);
        }
        let pidx = pivot_row.binary_search_by_key(&c, |e| e.0).expect("pivot in row");
        let u = pivot_row[pidx].1.clone();
        let targets: Vec<u32> = cols[cu].iter().copied().collect();
        for r in targets {
            let row = std::mem::take(&mut rows[r as usize]);
            let idx = row.binary_search_by_key(&c, |e| e.0).expect("entry in row");
            let f = ring.quotient(&row[idx].1, &u);
            let merged = combine(ring, &row, &f, &pivot_row, r, &mut cols, &mut touched)?;
            rows[r as usize] = merged;
        }
        debug_assert!(cols[cu].is_empty());
        pivots += 1;
        for &k in &touched {
            let len = cols[k as usize].len();
            if len > 0 {
                heap.push(Reverse((len, k)));
            }
        }
    }
    let mut rest = Vec::new();
    for (r, row) in rows.into_iter().enumerate() {
        for (c, v) in row {
            rest.push((r as u32, c, v));
        }
    }
    Ok(Reduced { pivots, rest })
}

/// `row - f * pivot_row`, keeping the column index sets in step.
fn combine<R: Ring>(
    ring: &R,
    row: &[(u32, R::E)],
    f: &R::E,
    pivot_row: &[(u32, R::E)],
    r: u32,
    cols: &mut [BTreeSet<u32>],
    touched: &mut BTreeSet<u32>,
) -> Result<Vec<(u32, R::E)>, Overflow> {
    let zero = ring.lift(0);
    let mut out = Vec::with_capacity(row.len() + pivot_row.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot_row.len() {
        let ord = match (row.get(i), pivot_row.get(j)) {
            (Some(a), Some(b)) => a.0.cmp(&b.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(row[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let (k, y) = &pivot_row[j];
                let v = ring.sub_mul(&zero, f, y).ok_or(Overflow)?;
                if !ring.is_zero(&v) {
                    cols[*k as usize].insert(r);
                    touched.insert(*k);
                    out.push((*k, v));
                }
                j += 1;
            }
            Ordering::Equal => {
                let (k, x) = &row[i];
                let v = ring.sub_mul(x, f, &pivot_row[j].1).ok_or(Overflow)?;
                touched.insert(*k);
                if ring.is_zero(&v) {
                    cols[*k as usize].remove(&r);
                } else {
                    out.push((*k, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    Ok(out)
}

/// Smith normal form of an integer matrix.
pub fn smith_normal_form(m: &SparseIntMatrix) -> SmithForm {
    let (pivots, rest): (usize, Vec<(u32, u32, BigInt)>) = match sparse_phase(&Checked, m) {
        Ok(red) => (
            red.pivots,
            red.rest.into_iter().map(|(r, c, v)| (r, c, BigInt::from(v))).collect(),
        ),
        Err(Overflow) => match sparse_phase(&Big, m) {
            Ok(red) => (red.pivots, red.rest),
            Err(Overflow) => unreachable!("arbitrary precision does not overflow"),
        },
    };
    let mut divisors = vec![BigInt::one(); pivots];
    divisors.extend(dense_smith(compact(rest)));
    normalize(&mut divisors);
    let rank = divisors.len();
    SmithForm {
        rank,
        torsion: divisors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// Rank over `F_p`.
pub fn rank_mod_p(m: &SparseIntMatrix, p: u64) -> usize {
    assert!(p >= 2, "modulus must be prime");
    match sparse_phase(&ModP { p }, m) {
        Ok(red) => {
            debug_assert!(red.rest.is_empty());
            red.pivots
        }
        Err(Overflow) => unreachable!("modular arithmetic does not overflow"),
    }
}

/// Rank over the rationals.
pub fn rank_rational(m: &SparseIntMatrix) -> usize {
    smith_normal_form(m).rank
}

/// Dense matrix on the rows and columns that still hold entries.
fn compact(rest: Vec<(u32, u32, BigInt)>) -> Vec<Vec<BigInt>> {
    let mut row_ids: Vec<u32> = rest.iter().map(|e| e.0).collect();
    let mut col_ids: Vec<u32> = rest.iter().map(|e| e.1).collect();
    row_ids.sort_unstable();
    row_ids.dedup();
    col_ids.sort_unstable();
    col_ids.dedup();
    let mut dense = vec![vec![BigInt::zero(); col_ids.len()]; row_ids.len()];
    for (r, c, v) in rest {
        let i = row_ids.binary_search(&r).expect("row id");
        let j = col_ids.binary_search(&c).expect("col id");
        dense[i][j] = v;
    }
    dense
}

/// Diagonal entries of a dense Smith reduction, least-absolute-value pivots
/// (ties: lowest row, then lowest column).
pub(crate) fn dense_smith(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        let Some((pr, pc)) = least_entry(&a, t, t) else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut moved = false;
            // clear column t below the pivot
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                if !q.is_zero() {
                    let (top, bottom) = a.split_at_mut(i);
                    for (x, y) in bottom[0][t..].iter_mut().zip(&top[t][t..]) {
                        *x -= &q * y;
                    }
                }
                if !a[i][t].is_zero() {
                    moved = true;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                if !q.is_zero() {
                    for row in a[t..].iter_mut() {
                        let delta = &q * &row[t];
                        row[j] -= delta;
                    }
                }
                if !a[t][j].is_zero() {
                    moved = true;
                }
            }
            if moved {
                // a remainder smaller than the pivot appeared; make it the pivot
                let (pr, pc) = least_in_cross(&a, t);
                a.swap(t, pr);
                for row in a.iter_mut() {
                    row.swap(t, pc);
                }
                continue;
            }
            // pivot must divide the rest of the block
            let bad = (t + 1..nrows)
                .find(|&i| a[i][t + 1..].iter().any(|x| !x.is_zero() && !x.is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let (top, bottom) = a.split_at_mut(i);
                    for (x, y) in top[t].iter_mut().zip(&bottom[0]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

fn least_entry(a: &[Vec<BigInt>], r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(r0) {
        for (j, x) in row.iter().enumerate().skip(c0) {
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Least nonzero entry in row `t` and column `t` of the active block.
fn least_in_cross(a: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let better = |x: &BigInt, b: (usize, usize)| a[b.0][b.1].is_zero() || x.abs() < a[b.0][b.1].abs();
    for i in t..a.len() {
        if !a[i][t].is_zero() && better(&a[i][t], best) {
            best = (i, t);
        }
    }
    for j in t..a[t].len() {
        if !a[t][j].is_zero() && better(&a[t][j], best) {
            best = (t, j);
        }
    }
    best
}

/// Rewrites a list of nonzero diagonal entries into invariant factors.
pub(crate) fn normalize(d: &mut Vec<BigInt>) {
    for x in d.iter_mut() {
        *x = x.abs();
    }
    d.retain(|x| !x.is_zero());
    // replacing (a, b) by (gcd, lcm) preserves the diagonal's Smith form
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            if !d[j].is_multiple_of(&d[i]) {
                let g = d[i].gcd(&d[j]);
                let l = d[i].lcm(&d[j]);
                d[i] = g;
                d[j] = l;
            }
        }
    }
    d.sort();
}
