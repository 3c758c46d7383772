//! Commuting structures: finite sets with a reflexive, symmetric relation.
//!
//! The relation is stored as packed bit rows so that the clique and
//! component searches downstream are word-wise AND / popcount loops.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::group::{self, center, is_normal, parse_group_spec, FiniteGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("empty structure: {0}")]
    EmptyStructure(String),
    #[error("field of order {p}^{dim} is larger than 2^16")]
    FieldTooLarge { p: u64, dim: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("relation is not constant on scalar classes: {0}")]
    NotWellDefined(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("structure was not built from a bilinear form")]
    NotBilinear,
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("bracket entries must lie in 0..{p}")]
    BracketOutOfRange { p: u64 },
    #[error("cannot parse structure spec {spec:?}: {reason}")]
    Parse { spec: String, reason: String },
    #[error(transparent)]
    Group(#[from] group::GroupError),
}

/// Which points of a group form the structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupScope {
    /// All nontrivial elements.
    AllNontrivial,
    /// Elements outside the center.
    Noncentral,
    /// Elements of order exactly `p`.
    OrderP(u64),
    /// Noncentral elements of order exactly `p`.
    NoncentralOrderP(u64),
}

/// How a structure was constructed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Provenance {
    GroupAll,
    GroupNoncentral,
    GroupOrderP { p: u64 },
    GroupNoncentralOrderP { p: u64 },
    Bilinear { p: u64, dim: usize },
    Projective { p: u64, dim: usize },
    /// `central` records whether the quotient was by a central subgroup; for
    /// noncentral subgroups the relation means "some pair of lifts commutes".
    CentralQuotient { central: bool },
    DualOf { of: Box<Provenance> },
    CoreOf { of: Box<Provenance> },
    InducedFrom { of: Box<Provenance> },
    Explicit,
}

/// A finite set with a reflexive symmetric relation `x ~ y` ("x and y commute").
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingStructure {
    labels: Vec<String>,
    rel: Vec<FixedBitSet>,
    provenance: Provenance,
    /// Group element behind each point, when the structure came from a group.
    elements: Option<Vec<usize>>,
}

impl CommutingStructure {
    /// Builds a structure from an explicit relation; fails unless the
    /// relation is reflexive and symmetric.
    pub fn from_relation(labels: Vec<String>, rel: &[Vec<bool>]) -> Result<Self, StructureError> {
        let n = labels.len();
        if rel.len() != n || rel.iter().any(|r| r.len() != n) {
            return Err(StructureError::InvalidRelation("matrix shape does not match labels".into()));
        }
        for i in 0..n {
            if !rel[i][i] {
                return Err(StructureError::InvalidRelation(format!("point {i} is not related to itself")));
            }
            for j in 0..i {
                if rel[i][j] != rel[j][i] {
                    return Err(StructureError::InvalidRelation(format!("not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(Self::from_fn(labels, Provenance::Explicit, None, |i, j| rel[i][j]))
    }

    /// Builds from a predicate that is assumed symmetric; the diagonal is
    /// forced to true.
    pub(crate) fn from_fn<F>(
        labels: Vec<String>,
        provenance: Provenance,
        elements: Option<Vec<usize>>,
        related: F,
    ) -> Self
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = labels.len();
        let mut rel = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            rel[i].insert(i);
            for j in 0..i {
                if related(i, j) {
                    rel[i].insert(j);
                    rel[j].insert(i);
                }
            }
        }
        CommutingStructure {
            labels,
            rel,
            provenance,
            elements,
        }
    }

    /// Complete (everything commutes) relation on `n` points.
    pub fn complete(n: usize) -> Self {
        Self::from_fn(numbered(n), Provenance::Explicit, None, |_, _| true)
    }

    /// Discrete (only reflexive pairs) relation on `n` points.
    pub fn discrete(n: usize) -> Self {
        Self::from_fn(numbered(n), Provenance::Explicit, None, |_, _| false)
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Group elements behind the points, for group-derived structures.
    pub fn elements(&self) -> Option<&[usize]> {
        self.elements.as_deref()
    }

    #[inline]
    pub fn related(&self, i: usize, j: usize) -> bool {
        self.rel[i].contains(j)
    }

    /// The centralizer set `C(i) = { j : j ~ i }` as a bit row.
    pub fn row(&self, i: usize) -> &FixedBitSet {
        &self.rel[i]
    }

    pub fn relation_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.size())
            .map(|i| (0..self.size()).map(|j| self.related(i, j)).collect())
            .collect()
    }

    /// True if `~` is transitive (an equivalence relation).
    pub fn is_transitive(&self) -> bool {
        (0..self.size()).all(|i| self.rel[i].ones().all(|j| self.rel[j] == self.rel[i]))
    }

    /// Number of unordered pairs of distinct related points.
    pub fn related_pairs(&self) -> usize {
        (0..self.size()).map(|i| self.rel[i].count_ones(..) - 1).sum::<usize>() / 2
    }

    /// The dual structure: same points, relation complemented off the diagonal.
    pub fn dual(&self) -> CommutingStructure {
        CommutingStructure::from_fn(
            self.labels.clone(),
            Provenance::DualOf {
                of: Box::new(self.provenance.clone()),
            },
            self.elements.clone(),
            |i, j| !self.related(i, j),
        )
    }

    /// Substructure on the given points, in the given order.
    pub fn induced(&self, points: &[usize]) -> CommutingStructure {
        let labels = points.iter().map(|&p| self.labels[p].clone()).collect();
        let elements = self
            .elements
            .as_ref()
            .map(|e| points.iter().map(|&p| e[p]).collect());
        CommutingStructure::from_fn(
            labels,
            Provenance::InducedFrom {
                of: Box::new(self.provenance.clone()),
            },
            elements,
            |i, j| self.related(points[i], points[j]),
        )
    }

    /// Connected components of the graph of related distinct points, each
    /// sorted, ordered by least point.
    pub fn commuting_components(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut head = 0;
            while head < members.len() {
                let x = members[head];
                for y in self.rel[x].ones() {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                    }
                }
                head += 1;
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Partition into centralizer classes and the quotient core structure.
    pub fn core(&self) -> CorePartition {
        let n = self.size();
        let mut projection = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if projection[i] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let class: Vec<usize> = (i..n).filter(|&j| self.rel[j] == self.rel[i]).collect();
            for &j in &class {
                projection[j] = id;
            }
            classes.push(class);
        }
        let labels = classes
            .iter()
            .map(|c| format!("[{}]", self.labels[c[0]]))
            .collect();
        // well defined: equal centralizer sets give equal relations, so the
        // representative choice does not matter
        let core = CommutingStructure::from_fn(
            labels,
            Provenance::CoreOf {
                of: Box::new(self.provenance.clone()),
            },
            None,
            |a, b| self.related(classes[a][0], classes[b][0]),
        );
        let sizes = classes.iter().map(Vec::len).collect();
        CorePartition {
            classes,
            sizes,
            core,
            projection,
        }
    }

    /// `true` iff `C(x) = [x]` for the point `x` (its centralizer set is its
    /// own centralizer class).
    pub fn is_self_centralizing_class(&self, partition: &CorePartition, x: usize) -> bool {
        let class = &partition.classes[partition.projection[x]];
        self.rel[x].count_ones(..) == class.len() && class.iter().all(|&y| self.rel[x].contains(y))
    }
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl fmt::Display for CommutingStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} points, {} commuting pairs", self.size(), self.related_pairs())
    }
}

/// Centralizer-class partition of a structure together with its core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorePartition {
    /// Classes of points with equal centralizer sets, ordered by least point.
    pub classes: Vec<Vec<usize>>,
    /// `sizes[c] = |classes[c]|`, the multiplicities `m_x`.
    pub sizes: Vec<usize>,
    /// The quotient structure on classes.
    pub core: CommutingStructure,
    /// Point to class index.
    pub projection: Vec<usize>,
}

impl CorePartition {
    /// Class size of the class containing point `x`.
    pub fn multiplicity(&self, x: usize) -> usize {
        self.sizes[self.projection[x]]
    }
}

/// Commuting structure of a group on the selected elements.
pub fn group_structure(g: &FiniteGroup, scope: GroupScope) -> Result<CommutingStructure, StructureError> {
    let (points, provenance): (Vec<usize>, Provenance) = match scope {
        GroupScope::AllNontrivial => (g.elements().skip(1).collect(), Provenance::GroupAll),
        GroupScope::Noncentral => {
            let z = center(g);
            (
                g.elements().filter(|&x| !z.contains(x)).collect(),
                Provenance::GroupNoncentral,
            )
        }
        GroupScope::OrderP(p) => {
            if !group::is_prime(p) {
                return Err(StructureError::NotPrime(p));
            }
            (
                g.elements().filter(|&x| g.element_order(x) as u64 == p).collect(),
                Provenance::GroupOrderP { p },
            )
        }
        GroupScope::NoncentralOrderP(p) => {
            if !group::is_prime(p) {
                return Err(StructureError::NotPrime(p));
            }
            let z = center(g);
            (
                g.elements()
                    .filter(|&x| g.element_order(x) as u64 == p && !z.contains(x))
                    .collect(),
                Provenance::GroupNoncentralOrderP { p },
            )
        }
    };
    if points.is_empty() {
        return Err(StructureError::EmptyStructure(match scope {
            GroupScope::AllNontrivial => "trivial group has no nontrivial elements".into(),
            GroupScope::Noncentral => "abelian group has no noncentral elements".into(),
            GroupScope::OrderP(p) => format!("no elements of order {p}"),
            GroupScope::NoncentralOrderP(p) => format!("no noncentral elements of order {p}"),
        }));
    }
    let labels = points.iter().map(|&x| g.name(x).to_string()).collect();
    Ok(CommutingStructure::from_fn(
        labels,
        provenance,
        Some(points.clone()),
        |i, j| g.commutes(points[i], points[j]),
    ))
}

/// A scalar-valued bilinear form on `F_p^dim`: `bracket[i][j] = [e_i, e_j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearSpace {
    pub p: u64,
    pub dim: usize,
    pub bracket: Vec<Vec<u64>>,
}

impl BilinearSpace {
    pub fn new(p: u64, bracket: Vec<Vec<u64>>) -> Result<Self, StructureError> {
        if !group::is_prime(p) {
            return Err(StructureError::NotPrime(p));
        }
        let dim = bracket.len();
        if dim == 0 || bracket.iter().any(|r| r.len() != dim) {
            return Err(StructureError::InvalidRelation("bracket must be a square matrix".into()));
        }
        if bracket.iter().flatten().any(|&v| v >= p) {
            return Err(StructureError::BracketOutOfRange { p });
        }
        Ok(BilinearSpace { p, dim, bracket })
    }

    /// The alternating form on `F_p^2` with `[x, y] = 1`.
    pub fn symplectic_plane(p: u64) -> Result<Self, StructureError> {
        if !group::is_prime(p) {
            return Err(StructureError::NotPrime(p));
        }
        Self::new(p, vec![vec![0, 1], vec![p - 1, 0]])
    }

    pub fn zero(p: u64, dim: usize) -> Result<Self, StructureError> {
        Self::new(p, vec![vec![0; dim]; dim])
    }

    pub fn is_alternating(&self) -> bool {
        self.vectors().all(|v| self.eval(&v, &v) == 0)
    }

    pub fn eval(&self, v: &[u64], w: &[u64]) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for i in 0..self.dim {
            if v[i] == 0 {
                continue;
            }
            for j in 0..self.dim {
                acc = (acc + v[i] * self.bracket[i][j] % p * w[j]) % p;
            }
        }
        acc
    }

    fn point_count(&self) -> Result<usize, StructureError> {
        let total = (self.p as u128).checked_pow(self.dim as u32).unwrap_or(u128::MAX);
        if total > 1 << 16 {
            return Err(StructureError::FieldTooLarge { p: self.p, dim: self.dim });
        }
        Ok(total as usize - 1)
    }

    /// Nonzero vectors in the fixed enumeration order used for point indices:
    /// point `i` is the base-`p` expansion of `i + 1`, least significant
    /// coordinate first.
    pub fn vectors(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let total = (self.p as usize).pow(self.dim as u32);
        (1..total).map(move |code| decode_vector(code, self.p, self.dim))
    }
}

fn decode_vector(mut code: usize, p: u64, dim: usize) -> Vec<u64> {
    let mut v = vec![0u64; dim];
    for slot in v.iter_mut() {
        *slot = (code % p as usize) as u64;
        code /= p as usize;
    }
    v
}

fn vector_label(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

/// Nonzero vectors with `v ~ w` iff `[v, w] = 0` or `v = w`.
pub fn bilinear_structure(space: &BilinearSpace) -> Result<CommutingStructure, StructureError> {
    space.point_count()?;
    let vectors: Vec<Vec<u64>> = space.vectors().collect();
    let labels = vectors.iter().map(|v| vector_label(v)).collect();
    Ok(CommutingStructure::from_fn(
        labels,
        Provenance::Bilinear {
            p: space.p,
            dim: space.dim,
        },
        None,
        |i, j| space.eval(&vectors[i], &vectors[j]) == 0,
    ))
}

/// The bilinear structure of the symplectic plane over `F_p`.
pub fn symp(p: u64) -> Result<CommutingStructure, StructureError> {
    bilinear_structure(&BilinearSpace::symplectic_plane(p)?)
}

/// Descends a bilinear structure to the lines of the space.
pub fn projectivize(s: &CommutingStructure) -> Result<CommutingStructure, StructureError> {
    let (p, dim) = match s.provenance() {
        Provenance::Bilinear { p, dim } => (*p, *dim),
        _ => return Err(StructureError::NotBilinear),
    };
    let vectors: Vec<Vec<u64>> = (1..=s.size()).map(|c| decode_vector(c, p, dim)).collect();
    // normal form of a line: scale so the first nonzero coordinate is 1
    let normalize = |v: &[u64]| -> Vec<u64> {
        let lead = *v.iter().find(|&&x| x != 0).expect("nonzero vector");
        let inv = mod_inverse(lead, p);
        v.iter().map(|&x| x * inv % p).collect()
    };
    let mut lines: Vec<Vec<u64>> = Vec::new();
    let mut line_of = vec![0usize; s.size()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let n = normalize(v);
        let id = match lines.iter().position(|l| *l == n) {
            Some(id) => id,
            None => {
                lines.push(n);
                classes.push(Vec::new());
                lines.len() - 1
            }
        };
        line_of[i] = id;
        classes[id].push(i);
    }
    for a in 0..lines.len() {
        for b in 0..lines.len() {
            let expected = s.related(classes[a][0], classes[b][0]);
            for &x in &classes[a] {
                for &y in &classes[b] {
                    if a == b && x != y {
                        continue;
                    }
                    if s.related(x, y) != expected {
                        return Err(StructureError::NotWellDefined(format!(
                            "{} and {} disagree with their representatives",
                            s.label(x),
                            s.label(y)
                        )));
                    }
                }
            }
        }
    }
    let labels = lines.iter().map(|l| format!("<{}>", vector_label(l))).collect();
    Ok(CommutingStructure::from_fn(
        labels,
        Provenance::Projective { p, dim },
        None,
        |a, b| s.related(classes[a][0], classes[b][0]),
    ))
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// The structure `(G; C)` on nontrivial cosets of a normal subgroup `C`.
///
/// Two cosets commute iff some pair of lifts commutes; for central `C` this
/// is the same as every pair commuting.
pub fn central_quotient(g: &FiniteGroup, c: &Subgroup) -> Result<CommutingStructure, StructureError> {
    if !is_normal(g, c) {
        return Err(StructureError::NotNormal);
    }
    let z = center(g);
    let central = c.is_subset_of(&z);
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in g.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let mut coset: Vec<usize> = c.members().iter().map(|&k| g.mul(x, k)).collect();
        coset.sort_unstable();
        for &y in &coset {
            coset_of[y] = cosets.len();
        }
        cosets.push(coset);
    }
    // coset 0 is C itself
    let nontrivial: Vec<Vec<usize>> = cosets.into_iter().skip(1).collect();
    if nontrivial.is_empty() {
        return Err(StructureError::EmptyStructure("quotient is trivial".into()));
    }
    let labels = nontrivial
        .iter()
        .map(|coset| format!("{}C", g.name(coset[0])))
        .collect();
    let reps: Vec<usize> = nontrivial.iter().map(|c| c[0]).collect();
    Ok(CommutingStructure::from_fn(
        labels,
        Provenance::CentralQuotient { central },
        Some(reps),
        |a, b| {
            if central {
                g.commutes(nontrivial[a][0], nontrivial[b][0])
            } else {
                nontrivial[a]
                    .iter()
                    .any(|&x| nontrivial[b].iter().any(|&y| g.commutes(x, y)))
            }
        },
    ))
}

/// Parses `g:<group>:all|noncentral|p<k>|np<k>`, `symp:<p>`, `proj:symp:<p>` or
/// `quot:<group>:center`.
pub fn parse_structure_spec(spec: &str) -> Result<CommutingStructure, StructureError> {
    let err = |reason: &str| StructureError::Parse {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    let parse_prime = |s: &str| -> Result<u64, StructureError> {
        s.trim().parse::<u64>().map_err(|_| err("expected a prime"))
    };
    if let Some(rest) = spec.strip_prefix("g:") {
        let (group_spec, scope) = rest
            .rsplit_once(':')
            .ok_or_else(|| err("expected g:<group>:<scope>"))?;
        let scope = match scope {
            "all" => GroupScope::AllNontrivial,
            "noncentral" => GroupScope::Noncentral,
            s => {
                let prime = |t: &str| t.parse::<u64>().ok();
                if let Some(p) = s.strip_prefix("np").and_then(prime) {
                    GroupScope::NoncentralOrderP(p)
                } else if let Some(p) = s.strip_prefix('p').and_then(prime) {
                    GroupScope::OrderP(p)
                } else {
                    return Err(err("scope must be all, noncentral, p<k> or np<k>"));
                }
            }
        };
        return group_structure(&parse_group_spec(group_spec)?, scope);
    }
    if let Some(p) = spec.strip_prefix("proj:symp:") {
        return projectivize(&symp(parse_prime(p)?)?);
    }
    if let Some(p) = spec.strip_prefix("symp:") {
        return symp(parse_prime(p)?);
    }
    if let Some(rest) = spec.strip_prefix("quot:") {
        let group_spec = rest
            .strip_suffix(":center")
            .ok_or_else(|| err("expected quot:<group>:center"))?;
        let g = parse_group_spec(group_spec)?;
        return central_quotient(&g, &center(&g));
    }
    Err(err("unknown structure spec"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating, dihedral, heisenberg3, parse_group_spec, symmetric};

    fn g(spec: &str) -> FiniteGroup {
        parse_group_spec(spec).unwrap()
    }

    #[test]
    fn s3_all_nontrivial() {
        let s3 = symmetric(3).unwrap();
        let s = group_structure(&s3, GroupScope::AllNontrivial).unwrap();
        assert_eq!(s.size(), 5);
        let elements = s.elements().unwrap();
        let three: Vec<usize> = (0..5).filter(|&i| s3.element_order(elements[i]) == 3).collect();
        let two: Vec<usize> = (0..5).filter(|&i| s3.element_order(elements[i]) == 2).collect();
        assert!(s.related(three[0], three[1]));
        for &a in &two {
            for &b in &two {
                assert_eq!(s.related(a, b), a == b);
            }
        }
    }

    #[test]
    fn d8_noncentral_pairs() {
        let s = group_structure(&dihedral(8).unwrap(), GroupScope::Noncentral).unwrap();
        assert_eq!(s.size(), 6);
        let comps = s.commuting_components();
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| c.len() == 2));
        assert_eq!(s.related_pairs(), 3);
    }

    #[test]
    fn a5_involutions() {
        let s = group_structure(&alternating(5).unwrap(), GroupScope::OrderP(2)).unwrap();
        assert_eq!(s.size(), 15);
        let comps = s.commuting_components();
        assert_eq!(comps.len(), 5);
        assert!(comps.iter().all(|c| c.len() == 3));
        assert!(s.is_transitive());
    }

    #[test]
    fn a4_threes() {
        let s = group_structure(&alternating(4).unwrap(), GroupScope::OrderP(3)).unwrap();
        let comps = s.commuting_components();
        assert_eq!(comps.len(), 4);
        assert!(comps.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn empty_structures_are_errors() {
        assert!(matches!(
            group_structure(&g("C6"), GroupScope::Noncentral),
            Err(StructureError::EmptyStructure(_))
        ));
        assert!(matches!(
            group_structure(&g("S3"), GroupScope::OrderP(5)),
            Err(StructureError::EmptyStructure(_))
        ));
        assert!(matches!(
            group_structure(&g("S3"), GroupScope::OrderP(4)),
            Err(StructureError::NotPrime(4))
        ));
    }

    #[test]
    fn symplectic_structures() {
        let s3 = symp(3).unwrap();
        assert_eq!(s3.size(), 8);
        let space = BilinearSpace::symplectic_plane(3).unwrap();
        assert!(space.is_alternating());
        let vs: Vec<Vec<u64>> = space.vectors().collect();
        for i in 0..8 {
            for j in 0..8 {
                let multiple = (1..3).any(|c| vs[i].iter().zip(&vs[j]).all(|(a, b)| (a * c) % 3 == *b));
                assert_eq!(s3.related(i, j), multiple);
            }
        }
        let s2 = symp(2).unwrap();
        assert_eq!(s2.size(), 3);
        assert_eq!(s2.related_pairs(), 0);
        let zero = bilinear_structure(&BilinearSpace::zero(2, 2).unwrap()).unwrap();
        assert_eq!(zero.related_pairs(), 3);
        assert!(matches!(
            bilinear_structure(&BilinearSpace::zero(257, 2).unwrap()),
            Err(StructureError::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn projective_structures() {
        let p3 = projectivize(&symp(3).unwrap()).unwrap();
        assert_eq!(p3.size(), 4);
        assert_eq!(p3.related_pairs(), 0);
        let p5 = projectivize(&symp(5).unwrap()).unwrap();
        assert_eq!(p5.size(), 6);
        assert_eq!(p5.related_pairs(), 0);
        let z = projectivize(&bilinear_structure(&BilinearSpace::zero(3, 3).unwrap()).unwrap()).unwrap();
        assert_eq!(z.size(), 13);
        assert_eq!(z.related_pairs(), 13 * 12 / 2);
        assert_eq!(projectivize(&CommutingStructure::complete(3)).unwrap_err(), StructureError::NotBilinear);
    }

    #[test]
    fn projectivize_rejects_non_homogeneous_relation() {
        // a bilinear-tagged structure whose relation is not scalar invariant
        let mut s = symp(3).unwrap();
        let n = s.size();
        let broken = CommutingStructure::from_fn(
            s.labels().to_vec(),
            s.provenance().clone(),
            None,
            |i, j| (i == 0 && j == 2) || (i == 2 && j == 0) || s.related(i, j),
        );
        s = broken;
        assert_eq!(s.size(), n);
        assert!(matches!(projectivize(&s), Err(StructureError::NotWellDefined(_))));
    }

    #[test]
    fn heisenberg_quotient_is_symp3() {
        let p = heisenberg3();
        let q = central_quotient(&p, &center(&p)).unwrap();
        let sp = symp(3).unwrap();
        assert_eq!(q.size(), sp.size());
        // coset of x^a y^b  <->  vector (a, b); symp point i is vector i+1 in base 3
        let reps = q.elements().unwrap();
        let coords: Vec<usize> = reps.iter().map(|&x| x % 9).collect();
        let to_symp: Vec<usize> = coords.iter().map(|&c| c - 1).collect();
        for a in 0..q.size() {
            for b in 0..q.size() {
                assert_eq!(q.related(a, b), sp.related(to_symp[a], to_symp[b]));
            }
        }
    }

    #[test]
    fn quotients() {
        let d8 = dihedral(8).unwrap();
        let q = central_quotient(&d8, &center(&d8)).unwrap();
        assert_eq!(q.size(), 3);
        assert_eq!(q.related_pairs(), 0);
        let s3 = symmetric(3).unwrap();
        let trivial = central_quotient(&s3, &Subgroup::trivial()).unwrap();
        let direct = group_structure(&s3, GroupScope::AllNontrivial).unwrap();
        assert_eq!(trivial.relation_matrix(), direct.relation_matrix());
        let not_normal = crate::group::generate(&s3, &[s3.elements().find(|&x| s3.element_order(x) == 2).unwrap()]);
        assert_eq!(central_quotient(&s3, &not_normal).unwrap_err(), StructureError::NotNormal);
    }

    #[test]
    fn duals() {
        let d = CommutingStructure::discrete(3).dual();
        assert_eq!(d.related_pairs(), 3);
        let s = group_structure(&symmetric(3).unwrap(), GroupScope::AllNontrivial).unwrap();
        assert_eq!(s.dual().dual().relation_matrix(), s.relation_matrix());
        let sp = symp(3).unwrap();
        let dual = sp.dual();
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    assert_eq!(dual.related(i, j), !sp.related(i, j));
                }
            }
        }
    }

    #[test]
    fn cores() {
        let s3 = group_structure(&symmetric(3).unwrap(), GroupScope::Noncentral).unwrap();
        let core = s3.core();
        let mut sizes = core.sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 1, 2]);
        assert_eq!(core.core.related_pairs(), 0);

        let a4 = group_structure(&alternating(4).unwrap(), GroupScope::Noncentral).unwrap();
        let mut sizes = a4.core().sizes;
        sizes.sort();
        assert_eq!(sizes, vec![2, 2, 2, 2, 3]);

        for p in [3u64, 5, 7] {
            let sp = symp(p).unwrap();
            let core = sp.core();
            assert_eq!(core.sizes.len() as u64, p + 1);
            assert!(core.sizes.iter().all(|&m| m as u64 == p - 1));
            let proj = projectivize(&sp).unwrap();
            assert_eq!(core.core.related_pairs(), proj.related_pairs());
        }
    }

    #[test]
    fn core_of_core_is_trivial_partition() {
        for spec in ["S4", "D12", "A4", "Q8", "frob:5:4:2"] {
            let s = group_structure(&g(spec), GroupScope::Noncentral).unwrap();
            let core = s.core();
            assert!(core.core.core().sizes.iter().all(|&m| m == 1), "{spec}");
            assert_eq!(core.sizes.iter().sum::<usize>(), s.size());
        }
    }

    #[test]
    fn parse_specs() {
        assert_eq!(parse_structure_spec("g:A4:all").unwrap().size(), 11);
        assert_eq!(parse_structure_spec("g:frob:7:3:2:p3").unwrap().size(), 14);
        assert_eq!(parse_structure_spec("g:D8:noncentral").unwrap().size(), 6);
        assert_eq!(parse_structure_spec("g:D8:np2").unwrap().size(), 4);
        assert_eq!(parse_structure_spec("symp:5").unwrap().size(), 24);
        assert_eq!(parse_structure_spec("proj:symp:5").unwrap().size(), 6);
        assert_eq!(parse_structure_spec("quot:D8:center").unwrap().size(), 3);
        assert!(parse_structure_spec("g:A4:bogus").is_err());
        assert!(parse_structure_spec("nothing").is_err());
    }
}
