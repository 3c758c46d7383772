//! Subgroups and the classical subgroup queries.

use std::collections::BTreeSet;

use super::{is_prime, FiniteGroup, GroupError};

pub const DEFAULT_SUBGROUP_CAP: usize = 256;

/// A subgroup given by its sorted member list (always containing 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    /// Validates closure under products and inverses.
    pub fn new(g: &FiniteGroup, mut members: Vec<usize>) -> Result<Self, GroupError> {
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) {
            return Err(GroupError::NotASubgroup("identity missing".into()));
        }
        if let Some(&x) = members.iter().find(|&&x| x >= g.order()) {
            return Err(GroupError::NotASubgroup(format!("{x} is not an element")));
        }
        let sub = Subgroup { members };
        for &a in &sub.members {
            if !sub.contains(g.inv(a)) {
                return Err(GroupError::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &sub.members {
                if !sub.contains(g.mul(a, b)) {
                    return Err(GroupError::NotASubgroup(format!("{a}*{b} missing")));
                }
            }
        }
        debug_assert_eq!(g.order() % sub.order(), 0);
        Ok(sub)
    }

    pub fn trivial() -> Self {
        Subgroup { members: vec![0] }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup {
            members: g.elements().collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.members
            .iter()
            .all(|&a| self.members.iter().all(|&b| g.commutes(a, b)))
    }

    /// Index of `self` in `g`.
    pub fn index_in(&self, g: &FiniteGroup) -> usize {
        g.order() / self.order()
    }
}

/// Subgroup generated by `gens`.
pub fn generate(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
    extend(g, &Subgroup::trivial(), gens)
}

/// Subgroup generated by `h` together with `extra`.
fn extend(g: &FiniteGroup, h: &Subgroup, extra: &[usize]) -> Subgroup {
    let mut inside = vec![false; g.order()];
    let mut members: Vec<usize> = h.members.clone();
    for &x in &members {
        inside[x] = true;
    }
    let mut gens: Vec<usize> = extra.iter().copied().filter(|&x| !inside[x]).collect();
    if gens.is_empty() {
        return h.clone();
    }
    // generators of the whole result: the old members act as generators too,
    // but right-multiplying the orbit by `extra` and the old members suffices
    gens.extend(h.members.iter().copied().filter(|&x| x != 0));
    gens.sort_unstable();
    gens.dedup();
    let mut head = 0;
    while head < members.len() {
        let x = members[head];
        for &s in &gens {
            let y = g.mul(x, s);
            if !inside[y] {
                inside[y] = true;
                members.push(y);
            }
        }
        head += 1;
    }
    members.sort_unstable();
    Subgroup { members }
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    Subgroup {
        members: g
            .elements()
            .filter(|&z| g.elements().all(|x| g.commutes(z, x)))
            .collect(),
    }
}

pub fn centralizer(g: &FiniteGroup, x: usize) -> Subgroup {
    Subgroup {
        members: g.elements().filter(|&y| g.commutes(x, y)).collect(),
    }
}

/// Conjugacy classes as sorted member lists, ordered by least element.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; g.order()];
    let mut classes = Vec::new();
    for x in g.elements() {
        if assigned[x] {
            continue;
        }
        let class: BTreeSet<usize> = g.elements().map(|h| g.conj(h, x)).collect();
        for &y in &class {
            assigned[y] = true;
        }
        classes.push(class.into_iter().collect());
    }
    classes
}

/// `t H t^-1`.
pub fn conjugate(g: &FiniteGroup, h: &Subgroup, t: usize) -> Subgroup {
    let mut members: Vec<usize> = h.members.iter().map(|&x| g.conj(t, x)).collect();
    members.sort_unstable();
    Subgroup { members }
}

pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> bool {
    g.elements()
        .all(|t| h.members.iter().all(|&x| h.contains(g.conj(t, x))))
}

pub fn normalizer(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    Subgroup {
        members: g
            .elements()
            .filter(|&t| h.members.iter().all(|&x| h.contains(g.conj(t, x))))
            .collect(),
    }
}

fn check_prime_divides(g: &FiniteGroup, p: u64) -> Result<(), GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if !(g.order() as u64).is_multiple_of(p) {
        return Err(GroupError::PrimeDoesNotDivideOrder { p, order: g.order() });
    }
    Ok(())
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// A Sylow `p`-subgroup, found by greedily adjoining the lowest-index
/// `p`-element that keeps the generated subgroup a `p`-group.
///
/// Greedy extension never gets stuck (a non-Sylow `p`-subgroup always has a
/// normalizing `p`-element outside it); the depth-first backtracking below is
/// kept as a fallback so the search is complete regardless.
pub fn sylow_subgroup(g: &FiniteGroup, p: u64) -> Result<Subgroup, GroupError> {
    check_prime_divides(g, p)?;
    let p = p as usize;
    let mut target = 1;
    while g.order().is_multiple_of(target * p) {
        target *= p;
    }
    let p_elements: Vec<usize> = g
        .elements()
        .filter(|&x| x != 0 && is_power_of(g.element_order(x), p))
        .collect();

    fn search(
        g: &FiniteGroup,
        h: Subgroup,
        p: usize,
        target: usize,
        p_elements: &[usize],
    ) -> Option<Subgroup> {
        if h.order() == target {
            return Some(h);
        }
        for &x in p_elements {
            if h.contains(x) {
                continue;
            }
            let next = extend(g, &h, &[x]);
            if is_power_of(next.order(), p) {
                if let Some(found) = search(g, next, p, target, p_elements) {
                    return Some(found);
                }
            }
        }
        None
    }

    Ok(search(g, Subgroup::trivial(), p, target, &p_elements)
        .expect("Sylow subgroups exist for every prime divisor"))
}

/// All subgroups of `h` (including trivial and `h`), sorted by
/// `(order, members)`.
pub fn all_subgroups_of(g: &FiniteGroup, h: &Subgroup, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
    if h.order() > cap {
        return Err(GroupError::SubgroupCapExceeded { cap });
    }
    let mut found: BTreeSet<Subgroup> = BTreeSet::new();
    let mut frontier = vec![Subgroup::trivial()];
    found.insert(Subgroup::trivial());
    while let Some(k) = frontier.pop() {
        for &x in &h.members {
            if k.contains(x) {
                continue;
            }
            let next = extend(g, &k, &[x]);
            if found.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let mut all: Vec<Subgroup> = found.into_iter().collect();
    all.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
    Ok(all)
}

/// All subgroups of `g`.
pub fn all_subgroups(g: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
    all_subgroups_of(g, &Subgroup::whole(g), cap)
}

/// The subgroup generated by the normalizers of all nontrivial subgroups of
/// a fixed Sylow `p`-subgroup.
pub fn quillen_n(g: &FiniteGroup, p: u64, cap: usize) -> Result<Subgroup, GroupError> {
    let sylow = sylow_subgroup(g, p)?;
    let mut gens = BTreeSet::new();
    for h in all_subgroups_of(g, &sylow, cap)?.iter().filter(|h| !h.is_trivial()) {
        gens.extend(normalizer(g, h).members);
    }
    let gens: Vec<usize> = gens.into_iter().collect();
    Ok(generate(g, &gens))
}

/// A Frobenius complement of `g`, if one exists: the first proper nontrivial
/// subgroup `H` (in `(order, members)` order) with `H ∩ H^t = 1` for every
/// `t` outside `H`.
pub fn frobenius_complement(g: &FiniteGroup, cap: usize) -> Result<Option<Subgroup>, GroupError> {
    let subgroups = all_subgroups(g, cap)?;
    Ok(subgroups
        .into_iter()
        .filter(|h| !h.is_trivial() && h.order() < g.order())
        .find(|h| is_frobenius_complement(g, h)))
}

pub(crate) fn is_frobenius_complement(g: &FiniteGroup, h: &Subgroup) -> bool {
    if h.is_trivial() || h.order() == g.order() {
        return false;
    }
    g.elements().filter(|&t| !h.contains(t)).all(|t| {
        h.members
            .iter()
            .filter(|&&x| x != 0)
            .all(|&x| !h.contains(g.conj(t, x)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating, cyclic, direct_product, parse_group_spec, quaternion8, symmetric};

    /// Brute force: every subset closed under multiplication.
    fn brute_subgroup_count(g: &FiniteGroup) -> usize {
        let n = g.order();
        assert!(n <= 16);
        (0u32..1 << n)
            .filter(|mask| mask & 1 == 1)
            .filter(|mask| {
                let has = |x: usize| mask >> x & 1 == 1;
                (0..n).filter(|&a| has(a)).all(|a| (0..n).filter(|&b| has(b)).all(|b| has(g.mul(a, b))))
            })
            .count()
    }

    #[test]
    fn centers_and_classes() {
        let d8 = parse_group_spec("D8").unwrap();
        assert_eq!(center(&d8).order(), 2);
        let s3 = symmetric(3).unwrap();
        let mut sizes: Vec<usize> = conjugacy_classes(&s3).iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        let a4 = alternating(4).unwrap();
        for x in a4.elements().filter(|&x| a4.element_order(x) == 2) {
            assert_eq!(centralizer(&a4, x).order(), 4);
        }
    }

    #[test]
    fn class_equation_and_centralizer_index() {
        for spec in ["S4", "A4", "D12", "Q8", "frob:7:3:2", "Heis3"] {
            let g = parse_group_spec(spec).unwrap();
            let classes = conjugacy_classes(&g);
            assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), g.order());
            for class in &classes {
                assert_eq!(class.len(), g.order() / centralizer(&g, class[0]).order(), "{spec}");
            }
        }
    }

    #[test]
    fn sylow_examples() {
        let a4 = alternating(4).unwrap();
        let p = sylow_subgroup(&a4, 2).unwrap();
        assert_eq!(p.order(), 4);
        assert!(is_normal(&a4, &p));
        let s3 = symmetric(3).unwrap();
        let p3 = sylow_subgroup(&s3, 3).unwrap();
        assert_eq!(p3.order(), 3);
        assert!(p3.members().iter().all(|&x| x == 0 || s3.element_order(x) == 3));
        let a5 = alternating(5).unwrap();
        let p2 = sylow_subgroup(&a5, 2).unwrap();
        assert_eq!(p2.order(), 4);
        assert!(p2.is_abelian(&a5));
        assert!(p2.members().iter().all(|&x| a5.element_order(x) <= 2));
        assert_eq!(sylow_subgroup(&s3, 5).unwrap_err(), GroupError::PrimeDoesNotDivideOrder { p: 5, order: 6 });
        assert_eq!(sylow_subgroup(&s3, 4).unwrap_err(), GroupError::NotPrime(4));
    }

    #[test]
    fn subgroup_lattices() {
        let z4 = cyclic(4);
        assert_eq!(all_subgroups(&z4, DEFAULT_SUBGROUP_CAP).unwrap().len(), 3);
        let v4 = direct_product(&cyclic(2), &cyclic(2));
        assert_eq!(all_subgroups(&v4, DEFAULT_SUBGROUP_CAP).unwrap().len(), 5);
        let q8 = quaternion8();
        assert_eq!(all_subgroups(&q8, DEFAULT_SUBGROUP_CAP).unwrap().len(), brute_subgroup_count(&q8));
        assert_eq!(brute_subgroup_count(&q8), 6);
        let d8 = parse_group_spec("D8").unwrap();
        assert_eq!(all_subgroups(&d8, DEFAULT_SUBGROUP_CAP).unwrap().len(), brute_subgroup_count(&d8));
        assert_eq!(
            all_subgroups(&alternating(5).unwrap(), 10).unwrap_err(),
            GroupError::SubgroupCapExceeded { cap: 10 }
        );
    }

    #[test]
    fn cyclic_lattice_counts_divisors() {
        for n in 1..=30usize {
            let divisors = (1..=n).filter(|d| n % d == 0).count();
            assert_eq!(all_subgroups(&cyclic(n), DEFAULT_SUBGROUP_CAP).unwrap().len(), divisors);
        }
    }

    #[test]
    fn normalizers() {
        let a4 = alternating(4).unwrap();
        let p3 = sylow_subgroup(&a4, 3).unwrap();
        assert_eq!(normalizer(&a4, &p3).order(), 3);
        assert_eq!(normalizer(&a4, &Subgroup::whole(&a4)).order(), 12);
        let s3 = symmetric(3).unwrap();
        let c3 = sylow_subgroup(&s3, 3).unwrap();
        assert_eq!(normalizer(&s3, &c3).order(), 6);
    }

    #[test]
    fn quillen_subgroup() {
        let a4 = alternating(4).unwrap();
        assert_eq!(quillen_n(&a4, 2, DEFAULT_SUBGROUP_CAP).unwrap().index_in(&a4), 1);
        assert_eq!(quillen_n(&a4, 3, DEFAULT_SUBGROUP_CAP).unwrap().index_in(&a4), 4);
        let s3 = symmetric(3).unwrap();
        assert_eq!(quillen_n(&s3, 3, DEFAULT_SUBGROUP_CAP).unwrap().order(), 6);
        let a5 = alternating(5).unwrap();
        assert_eq!(quillen_n(&a5, 2, DEFAULT_SUBGROUP_CAP).unwrap().index_in(&a5), 5);
    }

    #[test]
    fn quillen_n_contains_sylow() {
        for spec in ["S4", "A5", "D12", "frob:5:4:2"] {
            let g = parse_group_spec(spec).unwrap();
            for p in crate::group::prime_divisors(g.order()) {
                let n = quillen_n(&g, p, DEFAULT_SUBGROUP_CAP).unwrap();
                assert!(sylow_subgroup(&g, p).unwrap().is_subset_of(&n), "{spec} p={p}");
            }
        }
    }

    #[test]
    fn lagrange_on_all_subgroups() {
        for spec in ["S4", "D12", "Q8", "frob:7:3:2"] {
            let g = parse_group_spec(spec).unwrap();
            for h in all_subgroups(&g, DEFAULT_SUBGROUP_CAP).unwrap() {
                assert_eq!(g.order() % h.order(), 0);
                Subgroup::new(&g, h.members().to_vec()).unwrap();
            }
        }
    }

    #[test]
    fn frobenius_detection() {
        let a4 = alternating(4).unwrap();
        assert_eq!(frobenius_complement(&a4, DEFAULT_SUBGROUP_CAP).unwrap().unwrap().order(), 3);
        let s3 = symmetric(3).unwrap();
        assert_eq!(frobenius_complement(&s3, DEFAULT_SUBGROUP_CAP).unwrap().unwrap().order(), 2);
        let d8 = parse_group_spec("D8").unwrap();
        assert!(frobenius_complement(&d8, DEFAULT_SUBGROUP_CAP).unwrap().is_none());
    }

    #[test]
    fn subgroup_validation() {
        let s3 = symmetric(3).unwrap();
        let cyclic_part = generate(&s3, &[1]).members().to_vec();
        assert!(Subgroup::new(&s3, cyclic_part).is_ok());
        // two distinct involutions never form a subgroup of S3
        let involutions: Vec<usize> = s3.elements().filter(|&x| s3.element_order(x) == 2).collect();
        assert!(Subgroup::new(&s3, vec![0, involutions[0], involutions[1]]).is_err());
        assert!(matches!(Subgroup::new(&s3, vec![1]), Err(GroupError::NotASubgroup(_))));
        let all: Vec<usize> = s3.elements().collect();
        assert!(Subgroup::new(&s3, all).is_ok());
    }
}
