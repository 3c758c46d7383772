//! Brute-force reference implementations used to cross-check the fast paths.
//!
//! They share no code with the algorithms they check and are only meant for
//! small inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::structure::CommutingStructure;

/// Largest structure accepted by [`maximal_noncommuting_sets_exhaustive`].
pub const EXHAUSTIVE_CLIQUE_LIMIT: usize = 14;

/// Largest matrix side accepted by [`smith_invariants_by_minors`].
pub const MINOR_SNF_LIMIT: usize = 8;

/// Maximal non-commuting sets by scanning every subset; `None` above
/// [`EXHAUSTIVE_CLIQUE_LIMIT`] points. Sorted lexicographically.
pub fn maximal_noncommuting_sets_exhaustive(s: &CommutingStructure) -> Option<Vec<Vec<usize>>> {
    let n = s.size();
    if n > EXHAUSTIVE_CLIQUE_LIMIT {
        return None;
    }
    let non_commuting = |mask: u32| {
        (0..n).all(|i| mask & (1 << i) == 0 || (i + 1..n).all(|j| mask & (1 << j) == 0 || !s.related(i, j)))
    };
    let sets: Vec<u32> = (1u32..1 << n).filter(|&m| non_commuting(m)).collect();
    let is_set = {
        let mut flags = vec![false; 1 << n];
        for &m in &sets {
            flags[m as usize] = true;
        }
        flags
    };
    let mut out: Vec<Vec<usize>> = sets
        .iter()
        .filter(|&&m| (0..n).all(|v| m & (1 << v) != 0 || !is_set[(m | 1 << v) as usize]))
        .map(|&m| (0..n).filter(|&v| m & (1 << v) != 0).collect())
        .collect();
    out.sort();
    Some(out)
}

/// Number of non-commuting sets of each size, by scanning every subset.
pub fn nc_counts_exhaustive(s: &CommutingStructure) -> Option<Vec<u64>> {
    let n = s.size();
    if n > EXHAUSTIVE_CLIQUE_LIMIT {
        return None;
    }
    let mut counts = vec![0u64; n];
    for mask in 1u32..1 << n {
        let members: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        let ok = members
            .iter()
            .enumerate()
            .all(|(a, &i)| members[a + 1..].iter().all(|&j| !s.related(i, j)));
        if ok {
            counts[members.len() - 1] += 1;
        }
    }
    while counts.last() == Some(&0) {
        counts.pop();
    }
    Some(counts)
}

fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    // fraction-free Bareiss elimination
    let n = m.len();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Nonzero invariant factors `d_k / d_{k−1}`, where `d_k` is the gcd of all
/// `k × k` minors. `None` when a side exceeds [`MINOR_SNF_LIMIT`].
pub fn smith_invariants_by_minors(a: &[Vec<i64>]) -> Option<Vec<BigInt>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    if rows > MINOR_SNF_LIMIT || cols > MINOR_SNF_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut previous = BigInt::from(1);
    for k in 1..=rows.min(cols) {
        let mut d = BigInt::zero();
        for rs in combinations(rows, k) {
            for cs in combinations(cols, k) {
                let minor: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| BigInt::from(a[r][c])).collect())
                    .collect();
                d = d.gcd(&determinant(minor));
            }
        }
        if d.is_zero() {
            break;
        }
        out.push((&d / &previous).abs());
        previous = d;
    }
    Some(out)
}
