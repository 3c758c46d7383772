//! Maximal non-commuting sets, the `nc_k` counts, rank bounds on the top
//! homology of `BNC(G)`, TC-group wedge predictions, lexicographic shellings
//! and the h-vector inequalities of pure shellable complexes.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::complex::cliques::{count_cliques, maximal_cliques};
use crate::complex::{nc_complex, ComplexError};
use crate::group::{center, conjugacy_classes, FiniteGroup, GroupError};
use crate::homology::{homology_profile, Coefficients, HomologyError, HomologyProfile};
use crate::structure::{group_structure, CommutingStructure, GroupScope, StructureError};
use crate::{par, Limits};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MaxSetError {
    #[error("maximal set enumeration exceeded the cap of {cap} sets")]
    CliqueCapExceeded { cap: u64 },
    #[error("the commuting relation is not transitive on the points")]
    NotTc,
    #[error("facets have sizes {sizes:?}; shelling verification needs a pure complex")]
    NotPure { sizes: Vec<usize> },
    #[error("group is abelian; BNC(G) is empty")]
    Abelian,
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl MaxSetError {
    pub fn is_cap(&self) -> bool {
        match self {
            MaxSetError::CliqueCapExceeded { .. } => true,
            MaxSetError::Complex(e) => e.is_cap(),
            MaxSetError::Homology(e) => e.is_cap(),
            MaxSetError::Group(e) => e.is_cap(),
            _ => false,
        }
    }
}

/// Maximal non-commuting sets grouped by size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalSetInventory {
    /// `|S_s|` for each size `s` that occurs.
    pub by_size: BTreeMap<usize, u64>,
    /// The sets themselves in lexicographic order, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sets: Option<Vec<Vec<usize>>>,
    /// Largest size of a non-commuting set.
    pub nc: usize,
}

impl MaximalSetInventory {
    pub fn total(&self) -> u64 {
        self.by_size.values().sum()
    }

    pub fn count(&self, size: usize) -> u64 {
        self.by_size.get(&size).copied().unwrap_or(0)
    }
}

/// Maximal cliques of the non-commuting graph of `s`.
pub fn maximal_noncommuting_sets(
    s: &CommutingStructure,
    keep_sets: bool,
    limits: &Limits,
) -> Result<MaximalSetInventory, MaxSetError> {
    let graph = nc_complex(s);
    let found = maximal_cliques(graph.adjacency(), keep_sets, limits.clique_cap, limits.exec)
        .map_err(|hit| MaxSetError::CliqueCapExceeded { cap: hit.cap })?;
    Ok(MaximalSetInventory {
        nc: found.clique_number(),
        by_size: found.by_size,
        sets: found.cliques,
    })
}

/// `nc_k` for `k = 1..=nc`: the number of non-commuting sets of each size.
pub fn nc_counts(s: &CommutingStructure, limits: &Limits) -> Result<Vec<u64>, MaxSetError> {
    let graph = nc_complex(s);
    Ok(count_cliques(graph.adjacency(), None, limits.face_cap, limits.exec).map_err(ComplexError::from)?)
}

/// Largest size of a non-commuting set.
pub fn nc_value(s: &CommutingStructure, limits: &Limits) -> Result<usize, MaxSetError> {
    Ok(nc_counts(s, limits)?.len())
}

/// Number of non-commuting sets of size `k` (`1` for `k = 0`).
pub fn count_k_sets(s: &CommutingStructure, k: usize, limits: &Limits) -> Result<u64, MaxSetError> {
    if k == 0 {
        return Ok(1);
    }
    let graph = nc_complex(s);
    let counts =
        count_cliques(graph.adjacency(), Some(k), limits.face_cap, limits.exec).map_err(ComplexError::from)?;
    Ok(counts.get(k - 1).copied().unwrap_or(0))
}

fn noncentral(g: &FiniteGroup) -> Result<CommutingStructure, MaxSetError> {
    if g.is_abelian() {
        return Err(MaxSetError::Abelian);
    }
    Ok(group_structure(g, GroupScope::Noncentral)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankBoundRow {
    pub size: usize,
    pub maximal_sets: u64,
    /// `Σ_{F ∈ S_s} Π_{x ∈ F} (1 − 1/m_x)` as an exact fraction.
    pub bound: String,
    /// The bound when it is an integer.
    pub bound_integer: Option<u64>,
    /// `b̃_{s−1}(BNC(G))`.
    pub betti: u64,
    pub holds: bool,
    pub tight: bool,
    /// Whether `b̃_{s−1} ≠ 0`; only recorded when every `m_x ≥ 2` is
    /// guaranteed (nontrivial center or odd order).
    pub nonvanishing: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankBoundReport {
    pub center_order: usize,
    pub odd_order: bool,
    pub rows: Vec<RankBoundRow>,
    pub homology: HomologyProfile,
    pub passed: bool,
}

/// Compares the lower bound on `rk H_{s−1}(BNC(G))` coming from the maximal
/// non-commuting sets of size `s` with the computed Betti numbers.
pub fn rank_bound_report(g: &FiniteGroup, limits: &Limits) -> Result<RankBoundReport, MaxSetError> {
    let s = noncentral(g)?;
    let partition = s.core();
    let inventory = maximal_noncommuting_sets(&s, true, limits)?;
    let homology = homology_profile(&nc_complex(&s), Coefficients::Integers, None, limits)?;
    let center_order = center(g).order();
    let odd_order = g.order() % 2 == 1;
    let nonvanishing_applies = center_order > 1 || odd_order;

    let mut sums: BTreeMap<usize, BigRational> = BTreeMap::new();
    for set in inventory.sets.as_deref().unwrap_or_default() {
        let term: BigRational = set
            .iter()
            .map(|&x| {
                let m = BigInt::from(partition.multiplicity(x));
                BigRational::new(&m - 1, m)
            })
            .product();
        *sums.entry(set.len()).or_insert_with(BigRational::zero) += term;
    }
    let mut rows = Vec::new();
    for (&size, &count) in inventory.by_size.iter().filter(|(&s, _)| s > 1) {
        let bound = sums.remove(&size).unwrap_or_else(BigRational::zero);
        let betti = homology.betti(size as isize - 1);
        let b = BigRational::from_integer(BigInt::from(betti));
        let bound_integer = bound.is_integer().then(|| bound.to_integer().to_u64()).flatten();
        rows.push(RankBoundRow {
            size,
            maximal_sets: count,
            holds: bound <= b,
            tight: bound == b,
            bound_integer,
            bound: bound.to_string(),
            betti,
            nonvanishing: nonvanishing_applies.then_some(betti != 0),
        });
    }
    let passed = rows.iter().all(|r| r.holds && r.nonvanishing != Some(false));
    Ok(RankBoundReport {
        center_order,
        odd_order,
        rows,
        homology,
        passed,
    })
}

/// Whether commuting is transitive on the noncentral elements of `g`.
pub fn tc_check(g: &FiniteGroup) -> Result<bool, MaxSetError> {
    if g.is_abelian() {
        return Ok(true);
    }
    Ok(noncentral(g)?.is_transitive())
}

/// Wedge of spheres predicted for `NC(S)` when `∼` is transitive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WedgePrediction {
    /// Sphere dimension `n − 1` over `n` equivalence classes.
    pub dimension: isize,
    /// `Π (m_i − 1)`.
    #[serde(serialize_with = "big_string")]
    pub spheres: BigUint,
    pub class_sizes: Vec<usize>,
}

fn big_string<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl WedgePrediction {
    /// Whether a homology profile is exactly this wedge (no torsion).
    pub fn matches(&self, h: &HomologyProfile) -> bool {
        let expected: Vec<(isize, u64)> = if self.spheres.is_zero() {
            Vec::new()
        } else {
            match self.spheres.to_u64() {
                Some(n) => vec![(self.dimension, n)],
                None => return false,
            }
        };
        !h.has_torsion() && h.nonzero_betti() == expected
    }
}

pub fn tc_wedge_prediction(s: &CommutingStructure) -> Result<WedgePrediction, MaxSetError> {
    if !s.is_transitive() {
        return Err(MaxSetError::NotTc);
    }
    let sizes = s.core().sizes;
    Ok(WedgePrediction {
        dimension: sizes.len() as isize - 1,
        spheres: sizes.iter().map(|&m| BigUint::from(m - 1)).product(),
        class_sizes: sizes,
    })
}

/// An ordered facet list together with the restriction face of each facet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShellingCertificate {
    pub facets: Vec<Vec<usize>>,
    /// `R(F_j)`: the vertices `x` of `F_j` with `F_j − x` inside an earlier facet.
    pub restrictions: Vec<Vec<usize>>,
    pub valid: bool,
    /// First facet index where the shelling condition fails.
    pub first_failure: Option<usize>,
}

/// Facets of `NC(S)` for transitive `∼` (one point per class) in
/// lexicographic order of the class-indexed tuples, with its certificate.
pub fn lexicographic_shelling(s: &CommutingStructure, exec: crate::Exec) -> Result<ShellingCertificate, MaxSetError> {
    if !s.is_transitive() {
        return Err(MaxSetError::NotTc);
    }
    let classes = s.core().classes;
    let mut facets: Vec<Vec<usize>> = vec![Vec::new()];
    for class in &classes {
        facets = facets
            .into_iter()
            .flat_map(|f| {
                class.iter().map(move |&x| {
                    let mut g = f.clone();
                    g.push(x);
                    g
                })
            })
            .collect();
    }
    for f in facets.iter_mut() {
        f.sort_unstable();
    }
    verify_shelling(&facets, exec)
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

/// Checks the shelling condition for an ordered list of facets of a pure
/// complex: for `i < j` there are `k < j` and `x ∈ F_j` with
/// `F_i ∩ F_j ⊆ F_k ∩ F_j = F_j − x`.
pub fn verify_shelling(facets: &[Vec<usize>], exec: crate::Exec) -> Result<ShellingCertificate, MaxSetError> {
    let mut facets: Vec<Vec<usize>> = facets.to_vec();
    for f in facets.iter_mut() {
        f.sort_unstable();
        f.dedup();
    }
    let mut sizes: Vec<usize> = facets.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() > 1 {
        return Err(MaxSetError::NotPure { sizes });
    }
    let per_facet = par::map_indexed(exec, facets.len(), |j| {
        let fj = &facets[j];
        let restriction: Vec<usize> = fj
            .iter()
            .copied()
            .filter(|&x| {
                let rest: Vec<usize> = fj.iter().copied().filter(|&y| y != x).collect();
                facets[..j].iter().any(|fk| is_subset(&rest, fk))
            })
            .collect();
        // F_i ∩ F_j must miss some vertex of the restriction face
        let ok = facets[..j]
            .iter()
            .all(|fi| restriction.iter().any(|x| fi.binary_search(x).is_err()));
        (restriction, ok)
    });
    let first_failure = per_facet.iter().position(|(_, ok)| !ok);
    Ok(ShellingCertificate {
        restrictions: per_facet.into_iter().map(|(r, _)| r).collect(),
        valid: first_failure.is_none(),
        first_failure,
        facets,
    })
}

/// Status of the pure-shellability hypothesis behind the inequalities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShellabilityStatus {
    /// TC group and the lexicographic shelling certificate is valid.
    Verified,
    /// Not a TC group; no shelling was searched for.
    Unverified,
    /// TC group but the certificate failed.
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub nc: usize,
    pub nc_counts: Vec<u64>,
    /// `(−1)^j C(nc, j) + Σ_{k=1}^j (−1)^{j−k} C(nc − k, j − k) nc_k` for `j = 1..=nc`.
    pub shell_values: Vec<String>,
    pub shell_holds: bool,
    /// `nc(nc − 1) + |G|(|G| − m) − 2(nc − 1)(|G| − |Z|)`.
    pub cor_shell_lhs: i128,
    pub cor_shell_holds: bool,
    pub conjugacy_classes: usize,
    pub center_order: usize,
    /// `nc_1 = |G| − |Z|` and `nc_2 = (|G|/2)(|G| − m)`.
    pub closed_forms_hold: bool,
    pub hypothesis: ShellabilityStatus,
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// The h-vector inequalities of a pure shellable `BNC(G)`, evaluated from the
/// `nc_k` counts, plus the closed form of the `j = 2` case.
pub fn shell_inequalities(g: &FiniteGroup, limits: &Limits) -> Result<InequalityReport, MaxSetError> {
    let s = noncentral(g)?;
    let counts = nc_counts(&s, limits)?;
    let nc = counts.len();
    let shell: Vec<BigInt> = (1..=nc)
        .map(|j| {
            let sign = |e: usize| if e.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
            let mut v = sign(j) * binomial(nc, j);
            for k in 1..=j {
                v += sign(j - k) * binomial(nc - k, j - k) * BigInt::from(counts[k - 1]);
            }
            v
        })
        .collect();
    let order = g.order() as i128;
    let m = conjugacy_classes(g).len();
    let z = center(g).order();
    let n = nc as i128;
    let cor = n * (n - 1) + order * (order - m as i128) - 2 * (n - 1) * (order - z as i128);
    let closed_forms_hold = counts.first().copied() == Some((g.order() - z) as u64)
        && counts.get(1).copied() == Some((g.order() * (g.order() - m) / 2) as u64);
    let hypothesis = if s.is_transitive() {
        if lexicographic_shelling(&s, limits.exec)?.valid {
            ShellabilityStatus::Verified
        } else {
            ShellabilityStatus::Refuted
        }
    } else {
        ShellabilityStatus::Unverified
    };
    Ok(InequalityReport {
        nc,
        shell_holds: shell.iter().all(|v| !v.is_negative()),
        shell_values: shell.iter().map(BigInt::to_string).collect(),
        nc_counts: counts,
        cor_shell_lhs: cor,
        cor_shell_holds: cor >= 0,
        conjugacy_classes: m,
        center_order: z,
        closed_forms_hold,
        hypothesis,
    })
}
