//! Finite groups given by complete multiplication tables.
//!
//! Elements are indices `0..n` with the identity always at index 0. Tables
//! coming from files are untrusted and fully validated; tables built by the
//! constructors in this module are correct by construction and only checked
//! in debug builds.

mod catalog;
mod perm;
mod poset;
mod product;
mod subgroup;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use catalog::{
    alternating, cyclic, dihedral, frobenius, heisenberg3, parse_group_spec, quaternion8,
    read_cayley_file, symmetric, write_cayley_table, EXTENDED_CATALOG, SMALL_CATALOG,
};
pub use perm::{format_cycles, parse_cycles, parse_perm_spec, Permutation, DEFAULT_ORDER_CAP};
pub use poset::{abelian_poset, ap_poset, SubgroupPoset, DEFAULT_ABELIAN_POSET_CAP};
pub use product::{direct_product, semidirect_product};
pub use subgroup::{
    all_subgroups, all_subgroups_of, center, centralizer, conjugacy_classes, conjugate,
    frobenius_complement, generate, is_normal, normalizer, quillen_n, sylow_subgroup, Subgroup,
    DEFAULT_SUBGROUP_CAP,
};

/// Orders above this are validated for associativity by sampling.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 512;
const ASSOCIATIVITY_SAMPLES: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("multiplication table is empty")]
    EmptyTable,
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedTable { row: usize, len: usize, expected: usize },
    #[error("entry {value} at ({row}, {col}) is outside 0..{order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("point {point} exceeds degree {degree}")]
    DegreeExceeded { point: usize, degree: usize },
    #[error("malformed cycle notation: {0}")]
    MalformedCycle(String),
    #[error("group order exceeds the cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("action is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("action has order {action_order}, which does not divide {order}")]
    OrderMismatch { action_order: usize, order: usize },
    #[error("group of order {order} is not cyclic")]
    NotCyclic { order: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} does not divide the group order {order}")]
    PrimeDoesNotDivideOrder { p: u64, order: usize },
    #[error("subgroup enumeration exceeds the cap of {cap}")]
    SubgroupCapExceeded { cap: usize },
    #[error("element set is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("cannot parse group spec {spec:?}: {reason}")]
    Parse { spec: String, reason: String },
    #[error("i/o error on {path}: {reason}")]
    Io { path: String, reason: String },
}

impl GroupError {
    /// True when a configured cap, not the input, stopped the computation.
    pub fn is_cap(&self) -> bool {
        matches!(self, GroupError::OrderCapExceeded { .. } | GroupError::SubgroupCapExceeded { .. })
    }
}

/// A finite group stored as a full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u32>,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Builds a group from an untrusted Cayley table.
    ///
    /// If the identity is not at index 0 the table is relabelled by swapping
    /// the identity with element 0, so the invariant `identity == 0` holds.
    pub fn from_cayley(table: &[Vec<usize>], names: Option<Vec<String>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::EmptyTable);
        }
        let mut mul = Vec::with_capacity(n * n);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(GroupError::RaggedTable {
                    row,
                    len: entries.len(),
                    expected: n,
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= n {
                    return Err(GroupError::EntryOutOfRange {
                        row,
                        col,
                        value,
                        order: n,
                    });
                }
                mul.push(value as u32);
            }
        }
        check_associative_table(n, &mul)?;
        let at = |a: usize, b: usize| mul[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;

        let mut names = match names {
            Some(names) if names.len() == n => names,
            _ => (0..n).map(|i| i.to_string()).collect(),
        };
        if identity != 0 {
            // relabel by the transposition (0 identity)
            let swap = |x: usize| {
                if x == 0 {
                    identity
                } else if x == identity {
                    0
                } else {
                    x
                }
            };
            let mut relabelled = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    relabelled[a * n + b] = swap(at(swap(a), swap(b))) as u32;
                }
            }
            mul = relabelled;
            names.swap(0, identity);
        }

        Self::assemble(n, mul, names)
    }

    /// Builds a group from a multiplication function that is known to define
    /// a group with identity 0 (used by the internal constructors).
    pub(crate) fn from_fn<F>(order: usize, names: Vec<String>, f: F) -> Self
    where
        F: Fn(usize, usize) -> usize,
    {
        let mut mul = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                mul.push(f(a, b) as u32);
            }
        }
        let group = Self::assemble(order, mul, names).expect("constructor produced a non-group");
        debug_assert!(group.check_associative().is_ok());
        group
    }

    fn assemble(n: usize, mul: Vec<u32>, names: Vec<String>) -> Result<Self, GroupError> {
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 && mul[b * n + a] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
            if inv[a] == u32::MAX {
                return Err(GroupError::NoInverse { element: a });
            }
        }
        let mut orders = vec![0u32; n];
        for (g, slot) in orders.iter_mut().enumerate() {
            let mut x = g;
            let mut k = 1u32;
            while x != 0 {
                x = mul[x * n + g] as usize;
                k += 1;
                if k as usize > n {
                    // unreachable for associative tables with inverses
                    break;
                }
            }
            *slot = k;
        }
        Ok(FiniteGroup {
            order: n,
            mul,
            inv,
            orders,
            names,
        })
    }

    /// Checks associativity exhaustively for small orders and on a fixed
    /// pseudo-random sample of triples above [`EXHAUSTIVE_ASSOCIATIVITY_LIMIT`].
    pub fn check_associative(&self) -> Result<(), GroupError> {
        check_associative_table(self.order, &self.mul)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// Least `k >= 1` with `g^k = 1`.
    #[inline]
    pub fn element_order(&self, g: usize) -> usize {
        self.orders[g] as usize
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        let k = k % self.element_order(g);
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    /// `g h g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commutes(a, b)))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Row `a` of the multiplication table.
    pub fn row(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.mul[a * self.order..(a + 1) * self.order]
            .iter()
            .map(|&x| x as usize)
    }

    /// Sorted multiset of element orders, used to compare groups that should
    /// be isomorphic.
    pub fn order_statistics(&self) -> Vec<usize> {
        let mut stats: Vec<usize> = self.orders.iter().map(|&o| o as usize).collect();
        stats.sort_unstable();
        stats
    }
}

fn check_associative_table(n: usize, mul: &[u32]) -> Result<(), GroupError> {
    let at = |a: usize, b: usize| mul[a * n + b] as usize;
    if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6e63_636f_6d70);
        for _ in 0..ASSOCIATIVITY_SAMPLES {
            let (a, b, c) = (
                rng.random_range(0..n),
                rng.random_range(0..n),
                rng.random_range(0..n),
            );
            if at(at(a, b), c) != at(a, at(b, c)) {
                return Err(GroupError::NotAssociative { a, b, c });
            }
        }
    }
    Ok(())
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime divisors of `n` in increasing order.
pub fn prime_divisors(mut n: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d as u64);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::from_cayley(&[vec![0]], None).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.element_order(0), 1);
    }

    #[test]
    fn z2_orders() {
        let g = FiniteGroup::from_cayley(&[vec![0, 1], vec![1, 0]], None).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.order_statistics(), vec![1, 2]);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn nonassociative_loop_rejected() {
        // A Latin square of order 5 with identity 0 that is a loop but not a
        // group (no group of order 5 has a non-cyclic table like this).
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_cayley(&table, None).unwrap_err();
        assert!(matches!(err, GroupError::NotAssociative { .. }), "{err:?}");
    }

    #[test]
    fn nonassociative_three_element_quasigroup_rejected() {
        // x*y = -x-y mod 3 is a Latin square but (x*y)*z = x+y-z != -x+y+z
        let table: Vec<Vec<usize>> = (0..3)
            .map(|x| (0..3).map(|y| (6 - x - y) % 3).collect())
            .collect();
        assert!(matches!(
            FiniteGroup::from_cayley(&table, None),
            Err(GroupError::NotAssociative { .. })
        ));
        let z3 = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        assert!(FiniteGroup::from_cayley(&z3, None).is_ok());
    }

    #[test]
    fn identity_relabelled_to_zero() {
        // Z/2 with identity at index 1
        let table = vec![vec![1, 0], vec![0, 1]];
        let g = FiniteGroup::from_cayley(&table, Some(vec!["a".into(), "e".into()])).unwrap();
        assert_eq!(g.name(0), "e");
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn missing_inverse_rejected() {
        // associative monoid {1, a, 0} under multiplication: 0 absorbs
        let table = vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]];
        assert_eq!(
            FiniteGroup::from_cayley(&table, None).unwrap_err(),
            GroupError::NoInverse { element: 1 }
        );
    }

    #[test]
    fn ragged_and_out_of_range() {
        assert!(matches!(
            FiniteGroup::from_cayley(&[vec![0, 1], vec![1]], None),
            Err(GroupError::RaggedTable { row: 1, .. })
        ));
        assert!(matches!(
            FiniteGroup::from_cayley(&[vec![0, 2], vec![1, 0]], None),
            Err(GroupError::EntryOutOfRange { value: 2, .. })
        ));
    }

    #[test]
    fn primes() {
        assert_eq!(prime_divisors(60), vec![2, 3, 5]);
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
        assert!(is_prime(7) && !is_prime(9) && !is_prime(1));
    }
}
