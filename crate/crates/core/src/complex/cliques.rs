//! Clique search over bit-row adjacency: ordered depth-first extension for
//! counting and listing all cliques, Bron–Kerbosch with pivoting for the
//! maximal ones.
//!
//! Work is split by the lowest vertex of each clique ("root"), which gives
//! disjoint chunks whose concatenation in root order is lexicographic.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use fixedbitset::FixedBitSet;

use crate::par::{self, Exec};

/// A running count crossed its cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapHit {
    pub cap: u64,
    /// Counts gathered before stopping (a lower bound, per size class).
    pub partial: Vec<u64>,
}

/// Shared counter for a capped enumeration.
struct Budget {
    cap: u64,
    used: AtomicU64,
    stop: AtomicBool,
}

const FLUSH: u64 = 4096;

impl Budget {
    fn new(cap: u64) -> Self {
        Budget {
            cap,
            used: AtomicU64::new(0),
            stop: AtomicBool::new(false),
        }
    }

    /// Adds `n` and reports whether the run may continue.
    fn charge(&self, n: u64) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let total = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if total > self.cap {
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }
}

/// Vertices of `row` above `v`, intersected with `cand`, written into `out`.
#[inline]
fn later_neighbours(out: &mut FixedBitSet, cand: &FixedBitSet, row: &FixedBitSet, v: usize) {
    out.clone_from(cand);
    out.intersect_with(row);
    out.set_range(..v + 1, false);
}

fn later_than(row: &FixedBitSet, v: usize) -> FixedBitSet {
    let mut out = row.clone();
    out.set_range(..v + 1, false);
    out
}

struct Counter<'a> {
    adj: &'a [FixedBitSet],
    max_size: usize,
    counts: Vec<u64>,
    pending: u64,
    budget: &'a Budget,
}

impl Counter<'_> {
    fn run(&mut self, cand: &FixedBitSet, depth: usize, bufs: &mut [FixedBitSet]) -> bool {
        let (next, rest) = bufs.split_first_mut().expect("buffer per depth");
        for u in cand.ones() {
            self.counts[depth] += 1;
            self.pending += 1;
            if self.pending >= FLUSH {
                if !self.budget.charge(self.pending) {
                    return false;
                }
                self.pending = 0;
            }
            if depth + 1 < self.max_size {
                later_neighbours(next, cand, &self.adj[u], u);
                if !next.is_clear() && !self.run(next, depth + 1, rest) {
                    return false;
                }
            }
        }
        true
    }
}

/// Number of cliques of each size `1..=max_size` (index `k - 1`).
pub fn count_cliques(
    adj: &[FixedBitSet],
    max_size: Option<usize>,
    cap: u64,
    exec: Exec,
) -> Result<Vec<u64>, CapHit> {
    let n = adj.len();
    let max_size = max_size.unwrap_or(n).min(n);
    if n == 0 || max_size == 0 {
        return Ok(Vec::new());
    }
    let budget = Budget::new(cap);
    // every root reports what it counted, finished or not, so a cap hit
    // still yields a meaningful partial f-vector
    let per_root: Vec<(Vec<u64>, bool)> = par::map_indexed(exec, n, |root| {
        if budget.stopped() {
            return (Vec::new(), false);
        }
        let mut bufs = vec![FixedBitSet::with_capacity(n); max_size + 1];
        let mut counter = Counter {
            adj,
            max_size,
            counts: vec![0; max_size],
            pending: 1,
            budget: &budget,
        };
        counter.counts[0] = 1;
        let start = later_than(&adj[root], root);
        let finished = (max_size == 1 || counter.run(&start, 1, &mut bufs)) && budget.charge(counter.pending);
        (counter.counts, finished)
    });
    let mut total = vec![0u64; max_size];
    let mut complete = true;
    for (counts, finished) in &per_root {
        total.iter_mut().zip(counts).for_each(|(t, x)| *t += x);
        complete &= finished;
    }
    while total.last() == Some(&0) {
        total.pop();
    }
    if !complete || budget.stopped() {
        return Err(CapHit { cap, partial: total });
    }
    Ok(total)
}

/// Cliques rooted at `root` grouped by size, each group lexicographic.
pub fn cliques_rooted_at(adj: &[FixedBitSet], root: usize, max_size: usize) -> Vec<Vec<u32>> {
    let n = adj.len();
    let mut out: Vec<Vec<u32>> = vec![Vec::new(); max_size];
    if max_size == 0 {
        return out;
    }
    let mut stack: Vec<u32> = vec![root as u32];
    let mut bufs = vec![FixedBitSet::with_capacity(n); max_size + 1];
    out[0].push(root as u32);
    fn walk(
        adj: &[FixedBitSet],
        cand: &FixedBitSet,
        stack: &mut Vec<u32>,
        out: &mut [Vec<u32>],
        bufs: &mut [FixedBitSet],
    ) {
        let (next, rest) = bufs.split_first_mut().expect("buffer per depth");
        for u in cand.ones() {
            stack.push(u as u32);
            out[stack.len() - 1].extend_from_slice(stack);
            if stack.len() < out.len() {
                later_neighbours(next, cand, &adj[u], u);
                if !next.is_clear() {
                    walk(adj, next, stack, out, rest);
                }
            }
            stack.pop();
        }
    }
    if max_size > 1 {
        walk(adj, &later_than(&adj[root], root), &mut stack, &mut out, &mut bufs);
    }
    out
}

/// All cliques of size `1..=max_size`, per size as a flat row-major array of
/// width `size`, in lexicographic order.
pub fn list_cliques(
    adj: &[FixedBitSet],
    max_size: Option<usize>,
    cap: u64,
    exec: Exec,
) -> Result<Vec<Vec<u32>>, CapHit> {
    // count first so a runaway listing never allocates
    let counts = count_cliques(adj, max_size, cap, exec)?;
    let max_size = counts.len();
    let per_root = par::map_indexed(exec, adj.len(), |root| cliques_rooted_at(adj, root, max_size));
    let mut out: Vec<Vec<u32>> = counts
        .iter()
        .enumerate()
        .map(|(k, &c)| Vec::with_capacity(c as usize * (k + 1)))
        .collect();
    for chunk in per_root {
        for (k, flat) in chunk.into_iter().enumerate() {
            out[k].extend_from_slice(&flat);
        }
    }
    Ok(out)
}

/// Maximal cliques, as an inventory by size and optionally the cliques
/// themselves (sorted, in lexicographic order).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MaximalCliques {
    pub by_size: BTreeMap<usize, u64>,
    pub cliques: Option<Vec<Vec<usize>>>,
}

impl MaximalCliques {
    pub fn total(&self) -> u64 {
        self.by_size.values().sum()
    }

    /// Size of a largest clique (0 for the empty graph).
    pub fn clique_number(&self) -> usize {
        self.by_size.keys().next_back().copied().unwrap_or(0)
    }
}

struct Bk<'a> {
    adj: &'a [FixedBitSet],
    keep: bool,
    found: Vec<Vec<usize>>,
    by_size: BTreeMap<usize, u64>,
    budget: &'a Budget,
}

impl Bk<'_> {
    fn run(&mut self, r: &mut Vec<usize>, mut p: FixedBitSet, mut x: FixedBitSet) -> bool {
        if p.is_clear() {
            if x.is_clear() {
                if !self.budget.charge(1) {
                    return false;
                }
                *self.by_size.entry(r.len()).or_insert(0) += 1;
                if self.keep {
                    let mut clique = r.clone();
                    clique.sort_unstable();
                    self.found.push(clique);
                }
            }
            return true;
        }
        // pivot: most neighbours inside P, lowest index among the maximizers
        let mut pivot = usize::MAX;
        let mut best = 0usize;
        for u in p.ones().chain(x.ones()) {
            let score = p.intersection_count(&self.adj[u]);
            if pivot == usize::MAX || score > best || (score == best && u < pivot) {
                pivot = u;
                best = score;
            }
        }
        let mut branch = p.clone();
        branch.difference_with(&self.adj[pivot]);
        for v in branch.ones() {
            let mut np = p.clone();
            np.intersect_with(&self.adj[v]);
            let mut nx = x.clone();
            nx.intersect_with(&self.adj[v]);
            r.push(v);
            let ok = self.run(r, np, nx);
            r.pop();
            if !ok {
                return false;
            }
            p.set(v, false);
            x.insert(v);
        }
        true
    }
}

/// Bron–Kerbosch with pivoting. `adj` must be irreflexive and symmetric.
pub fn maximal_cliques(
    adj: &[FixedBitSet],
    keep: bool,
    cap: u64,
    exec: Exec,
) -> Result<MaximalCliques, CapHit> {
    let n = adj.len();
    let budget = Budget::new(cap);
    let per_root = par::map_indexed(exec, n, |v| {
        if budget.stopped() {
            return None;
        }
        let mut p = adj[v].clone();
        p.set_range(..v + 1, false);
        let mut x = adj[v].clone();
        x.set_range(v.., false);
        let mut bk = Bk {
            adj,
            keep,
            found: Vec::new(),
            by_size: BTreeMap::new(),
            budget: &budget,
        };
        let mut r = vec![v];
        bk.run(&mut r, p, x).then_some((bk.by_size, bk.found))
    });
    let mut out = MaximalCliques {
        by_size: BTreeMap::new(),
        cliques: keep.then(Vec::new),
    };
    let mut complete = true;
    for root in per_root {
        match root {
            Some((sizes, found)) => {
                for (s, c) in sizes {
                    *out.by_size.entry(s).or_insert(0) += c;
                }
                if let Some(all) = out.cliques.as_mut() {
                    all.extend(found);
                }
            }
            None => complete = false,
        }
    }
    if !complete || budget.stopped() {
        let top = out.clique_number();
        let partial = (1..=top).map(|s| out.by_size.get(&s).copied().unwrap_or(0)).collect();
        return Err(CapHit { cap, partial });
    }
    if let Some(all) = out.cliques.as_mut() {
        all.sort_unstable();
    }
    Ok(out)
}

/// Graph given by a symmetric predicate on `0..n`, without loops.
pub fn graph_from_fn<F: Fn(usize, usize) -> bool>(n: usize, edge: F) -> Vec<FixedBitSet> {
    let mut adj = vec![FixedBitSet::with_capacity(n); n];
    for i in 0..n {
        for j in 0..i {
            if edge(i, j) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    adj
}
