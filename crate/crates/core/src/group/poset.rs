//! Posets of nontrivial (elementary) abelian subgroups.

use std::collections::BTreeSet;

use super::subgroup::{generate, Subgroup};
use super::{is_prime, FiniteGroup, GroupError};

pub const DEFAULT_ABELIAN_POSET_CAP: usize = 64;

/// Nontrivial subgroups ordered by inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupPoset {
    pub nodes: Vec<Subgroup>,
    /// Strict inclusions `(i, j)` meaning `nodes[i] < nodes[j]`.
    pub relations: Vec<(usize, usize)>,
}

impl SubgroupPoset {
    fn from_nodes(nodes: BTreeSet<Subgroup>) -> Self {
        let mut nodes: Vec<Subgroup> = nodes.into_iter().collect();
        nodes.sort_by(|a, b| (a.order(), a.members()).cmp(&(b.order(), b.members())));
        let mut relations = Vec::new();
        for i in 0..nodes.len() {
            for j in 0..nodes.len() {
                if i != j && nodes[i].order() < nodes[j].order() && nodes[i].is_subset_of(&nodes[j]) {
                    relations.push((i, j));
                }
            }
        }
        SubgroupPoset { nodes, relations }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn less_than(&self, i: usize, j: usize) -> bool {
        self.relations.binary_search(&(i, j)).is_ok()
    }
}

/// Grows abelian subgroups one commuting generator at a time.
fn grow_abelian<F>(g: &FiniteGroup, seeds: &[usize], admissible: F) -> BTreeSet<Subgroup>
where
    F: Fn(&Subgroup) -> bool,
{
    let mut found = BTreeSet::new();
    let mut frontier: Vec<Subgroup> = Vec::new();
    for &x in seeds {
        let h = generate(g, &[x]);
        if admissible(&h) && found.insert(h.clone()) {
            frontier.push(h);
        }
    }
    while let Some(h) = frontier.pop() {
        for &x in seeds {
            if h.contains(x) || !h.members().iter().all(|&y| g.commutes(x, y)) {
                continue;
            }
            let mut gens = h.members().to_vec();
            gens.push(x);
            let next = generate(g, &gens);
            if admissible(&next) && found.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    found
}

/// Nontrivial elementary abelian `p`-subgroups under inclusion.
pub fn ap_poset(g: &FiniteGroup, p: u64) -> Result<SubgroupPoset, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let seeds: Vec<usize> = g
        .elements()
        .filter(|&x| g.element_order(x) as u64 == p)
        .collect();
    // generated by commuting elements of order p, so every member has order
    // dividing p: always elementary abelian
    let nodes = grow_abelian(g, &seeds, |_| true);
    Ok(SubgroupPoset::from_nodes(nodes))
}

/// Nontrivial abelian subgroups under inclusion; `|G|` must not exceed `cap`.
pub fn abelian_poset(g: &FiniteGroup, cap: usize) -> Result<SubgroupPoset, GroupError> {
    if g.order() > cap {
        return Err(GroupError::SubgroupCapExceeded { cap });
    }
    let seeds: Vec<usize> = g.elements().filter(|&x| x != 0).collect();
    let nodes = grow_abelian(g, &seeds, |_| true);
    Ok(SubgroupPoset::from_nodes(nodes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{all_subgroups, alternating, parse_group_spec, symmetric, DEFAULT_SUBGROUP_CAP};

    fn brute_elementary_abelian(g: &FiniteGroup, p: u64) -> usize {
        all_subgroups(g, DEFAULT_SUBGROUP_CAP)
            .unwrap()
            .into_iter()
            .filter(|h| !h.is_trivial() && h.is_abelian(g))
            .filter(|h| h.members().iter().all(|&x| x == 0 || g.element_order(x) as u64 == p))
            .count()
    }

    #[test]
    fn ap_small() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(ap_poset(&s3, 3).unwrap().len(), 1);
        let a4 = alternating(4).unwrap();
        let a = ap_poset(&a4, 2).unwrap();
        assert_eq!(a.len(), 4);
        assert_eq!(a.relations.len(), 3);
    }

    #[test]
    fn ap_a5() {
        let a5 = alternating(5).unwrap();
        let a = ap_poset(&a5, 2).unwrap();
        assert_eq!(a.len(), 20);
        assert_eq!(a.len(), brute_elementary_abelian(&a5, 2));
        assert_eq!(a.relations.len(), 15);
    }

    #[test]
    fn ap_matches_brute_force() {
        for spec in ["S4", "D8", "Q8", "D12", "Heis3"] {
            let g = parse_group_spec(spec).unwrap();
            for p in crate::group::prime_divisors(g.order()) {
                assert_eq!(ap_poset(&g, p).unwrap().len(), brute_elementary_abelian(&g, p), "{spec} {p}");
            }
        }
    }

    #[test]
    fn abelian_poset_matches_brute_force() {
        for spec in ["S4", "D8", "Q8", "A4"] {
            let g = parse_group_spec(spec).unwrap();
            let brute = all_subgroups(&g, DEFAULT_SUBGROUP_CAP)
                .unwrap()
                .into_iter()
                .filter(|h| !h.is_trivial() && h.is_abelian(&g))
                .count();
            assert_eq!(abelian_poset(&g, DEFAULT_ABELIAN_POSET_CAP).unwrap().len(), brute, "{spec}");
        }
        let a5 = alternating(5).unwrap();
        assert!(matches!(abelian_poset(&a5, 32), Err(GroupError::SubgroupCapExceeded { .. })));
    }
}
