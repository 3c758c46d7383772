//! Predictors and verifiers for the homotopy decompositions of
//! non-commuting complexes: wedge decompositions of blowups, joins,
//! duality factorizations, Frobenius groups and Quillen's `N`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::complex::{
    c_complex, join_f_vector, nc_complex, order_complex, ComplexError, FVector, FlagComplex, SimplicialComplex,
};
use crate::group::{
    ap_poset, conjugate, is_normal, quillen_n, sylow_subgroup, FiniteGroup, GroupError, Subgroup,
    DEFAULT_SUBGROUP_CAP,
};
use crate::homology::{
    connectivity_lower_bound, homology_profile, normalize, Coefficients, DegreeHomology, HomologyError,
    HomologyProfile,
};
use crate::structure::{group_structure, CommutingStructure, CorePartition, GroupScope, StructureError};
use crate::{par, Limits};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecompositionError {
    #[error("the non-commuting complex of the core has {components} components; factor it first")]
    CoreNotConnected { components: usize },
    #[error("integer join prediction needs torsion-free factors")]
    TorsionPresent,
    #[error("factor profiles use {found} coefficients, {expected} requested")]
    CoefficientMismatch { expected: Coefficients, found: Coefficients },
    #[error("not a Frobenius group: {0}")]
    NotFrobenius(String),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl DecompositionError {
    pub fn is_cap(&self) -> bool {
        match self {
            DecompositionError::Homology(e) => e.is_cap(),
            DecompositionError::Complex(e) => e.is_cap(),
            DecompositionError::Group(e) => e.is_cap(),
            _ => false,
        }
    }
}

/// One wedge summand `Susp^{|F|}(Lk F)^{γ(F)}` of a blowup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupTerm {
    /// Core classes forming the face.
    pub face: Vec<usize>,
    /// `γ(F) = Π (m_x − 1)` over the classes of `F`.
    #[serde(serialize_with = "as_string")]
    pub gamma: BigUint,
    /// Reduced Betti numbers of the link, from degree −1.
    pub link_betti: Vec<u64>,
}

fn as_string<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Predicted reduced homology of a blowup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupPrediction {
    pub multiplicities: Vec<usize>,
    pub core: HomologyProfile,
    /// Faces with `γ(F) > 0` (faces with a size-1 class contribute nothing).
    pub terms: Vec<BlowupTerm>,
    pub predicted: HomologyProfile,
}

fn to_u64(v: &BigUint) -> u64 {
    v.to_u64().expect("Betti number fits in 64 bits")
}

/// A profile assembled from per-degree free ranks and torsion lists.
fn assemble(coefficients: Coefficients, vertex_count: usize, complete: bool, degrees: BTreeMap<isize, (BigUint, Vec<BigInt>)>) -> HomologyProfile {
    let top = degrees.keys().next_back().copied().unwrap_or(-1).max(-1);
    let mut out = Vec::new();
    for d in -1..=top {
        let (betti, mut torsion) = degrees.get(&d).cloned().unwrap_or_default();
        normalize(&mut torsion);
        out.push(DegreeHomology {
            degree: d,
            betti: to_u64(&betti),
            torsion: torsion.into_iter().filter_map(|t| t.to_biguint()).filter(|t| *t > BigUint::from(1u8)).collect(),
        });
    }
    HomologyProfile {
        coefficients,
        vertex_count,
        chain_ranks: Vec::new(),
        complete,
        degrees: out,
    }
}

/// Adds `times` copies of `h` shifted up by `shift` into `acc`.
fn add_shifted(acc: &mut BTreeMap<isize, (BigUint, Vec<BigInt>)>, h: &HomologyProfile, shift: isize, times: &BigUint) {
    for d in &h.degrees {
        if d.betti == 0 && d.torsion.is_empty() {
            continue;
        }
        let slot = acc.entry(d.degree + shift).or_default();
        slot.0 += BigUint::from(d.betti) * times;
        let copies = times.to_usize().expect("torsion multiplicity fits in memory");
        for _ in 0..copies {
            slot.1.extend(d.torsion.iter().map(|t| BigInt::from(t.clone())));
        }
    }
}

/// Predicts the reduced homology of `NC(S)` from its core: the core's own
/// homology plus, for every core face `F`, `γ(F)` copies of the link of `F`
/// shifted up by `|F|`.
pub fn blowup_predict(partition: &CorePartition, limits: &Limits) -> Result<BlowupPrediction, DecompositionError> {
    let core = nc_complex(&partition.core);
    let components = core.components().len();
    if components != 1 {
        return Err(DecompositionError::CoreNotConnected { components });
    }
    let m = &partition.sizes;
    let core_profile = homology_profile(&core, Coefficients::Integers, None, limits)?;
    // only faces of classes with m ≥ 2 have γ > 0
    let heavy: Vec<usize> = (0..m.len()).filter(|&x| m[x] >= 2).collect();
    let heavy_complex = core.induced(&heavy);
    let table = heavy_complex.face_table(None, limits)?;
    let faces: Vec<Vec<usize>> = table
        .dims
        .iter()
        .flat_map(|f| f.iter().map(|face| face.iter().map(|&v| heavy[v as usize]).collect::<Vec<_>>()))
        .collect();
    // links with equal vertex sets have equal homology
    let mut link_keys: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut face_key = Vec::with_capacity(faces.len());
    let mut links: Vec<FlagComplex> = Vec::new();
    for face in &faces {
        let link = core.link_flag(face)?;
        let vertices: Vec<usize> = common_neighbours(&core, face);
        let next = link_keys.len();
        let key = *link_keys.entry(vertices).or_insert_with(|| {
            links.push(link);
            next
        });
        face_key.push(key);
    }
    let link_profiles: Vec<Result<HomologyProfile, HomologyError>> =
        par::map_slice(limits.exec, &links, |l| homology_profile(l, Coefficients::Integers, None, limits));
    let link_profiles: Vec<HomologyProfile> = link_profiles.into_iter().collect::<Result<_, _>>()?;

    let mut acc: BTreeMap<isize, (BigUint, Vec<BigInt>)> = BTreeMap::new();
    add_shifted(&mut acc, &core_profile, 0, &BigUint::from(1u8));
    let mut terms = Vec::with_capacity(faces.len());
    for (face, &key) in faces.iter().zip(&face_key) {
        let gamma: BigUint = face.iter().map(|&x| BigUint::from(m[x] - 1)).product();
        let link = &link_profiles[key];
        add_shifted(&mut acc, link, face.len() as isize, &gamma);
        terms.push(BlowupTerm {
            face: face.clone(),
            gamma,
            link_betti: link.betti_vector(),
        });
    }
    let vertex_count = m.iter().sum();
    Ok(BlowupPrediction {
        multiplicities: m.clone(),
        core: core_profile,
        terms,
        predicted: assemble(Coefficients::Integers, vertex_count, true, acc),
    })
}

fn common_neighbours(x: &FlagComplex, face: &[usize]) -> Vec<usize> {
    (0..x.vertex_count())
        .filter(|&v| face.iter().all(|&u| x.is_edge(u, v)))
        .collect()
}

/// How a blowup verification was assembled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlowupRoute {
    /// The core complex is connected: one prediction.
    Direct,
    /// The core complex is disconnected: one prediction per component of
    /// the non-commuting graph, combined as a disjoint union.
    DisjointUnion { parts: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupVerification {
    pub route: BlowupRoute,
    pub predicted: HomologyProfile,
    pub direct: HomologyProfile,
    pub matches: bool,
}

/// Compares the blowup prediction with directly computed homology of `NC(S)`.
pub fn blowup_verify(s: &CommutingStructure, limits: &Limits) -> Result<BlowupVerification, DecompositionError> {
    let direct = homology_profile(&nc_complex(s), Coefficients::Integers, None, limits)?;
    let partition = s.core();
    let (route, predicted) = match blowup_predict(&partition, limits) {
        Ok(p) => (BlowupRoute::Direct, p.predicted),
        Err(DecompositionError::CoreNotConnected { .. }) => {
            // the non-commuting graph of S splits the same way as that of
            // its core; a disjoint union adds reduced homology in degrees
            // ≥ 1 and adds (parts − 1) to b̃_0
            let parts = nc_complex(s).components();
            let mut acc: BTreeMap<isize, (BigUint, Vec<BigInt>)> = BTreeMap::new();
            for part in &parts {
                let sub = s.induced(part);
                let p = blowup_predict(&sub.core(), limits)?.predicted;
                add_shifted(&mut acc, &p, 0, &BigUint::from(1u8));
            }
            acc.entry(0).or_default().0 += BigUint::from(parts.len() - 1);
            let predicted = assemble(Coefficients::Integers, s.size(), true, acc);
            (BlowupRoute::DisjointUnion { parts: parts.len() }, predicted)
        }
        Err(e) => return Err(e),
    };
    let matches = predicted.same_homology(&direct);
    Ok(BlowupVerification {
        route,
        predicted,
        direct,
        matches,
    })
}

/// Reduced homology of a join from the homology of its factors:
/// `b̃_n(X * Y) = Σ_{i+j=n−1} b̃_i(X) b̃_j(Y)`.
pub fn join_predict(factors: &[HomologyProfile], coeff: Coefficients) -> Result<HomologyProfile, DecompositionError> {
    for f in factors {
        let compatible = f.coefficients == coeff
            || (f.coefficients == Coefficients::Integers && coeff == Coefficients::Rationals && !f.has_torsion());
        if !compatible {
            return Err(DecompositionError::CoefficientMismatch {
                expected: coeff,
                found: f.coefficients,
            });
        }
        if f.has_torsion() {
            return Err(DecompositionError::TorsionPresent);
        }
    }
    // Betti vectors indexed from degree −1; the unit is {∅}
    let mut acc: Vec<BigUint> = vec![BigUint::from(1u8)];
    for f in factors {
        let b: Vec<u64> = f.degrees.iter().map(|d| d.betti).collect();
        let mut next = vec![BigUint::from(0u8); acc.len() + b.len()];
        for (i, x) in acc.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    // degrees (i−1) and (j−1) land in degree i + j − 1
                    next[i + j] += x * BigUint::from(y);
                }
            }
        }
        acc = next;
    }
    let degrees: BTreeMap<isize, (BigUint, Vec<BigInt>)> = acc
        .into_iter()
        .enumerate()
        .filter(|(_, b)| *b > BigUint::from(0u8))
        .map(|(i, b)| (i as isize - 1, (b, Vec::new())))
        .collect();
    let vertex_count = factors.iter().map(|f| f.vertex_count).sum();
    let complete = factors.iter().all(|f| f.complete);
    Ok(assemble(coeff, vertex_count, complete, degrees))
}

/// Splits `S` along the components of its commuting graph; `NC(S)` is the
/// join of the non-commuting complexes of the parts.
pub fn duality_factorization(s: &CommutingStructure) -> Vec<CommutingStructure> {
    s.commuting_components().iter().map(|c| s.induced(c)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityCheck {
    pub factor_sizes: Vec<usize>,
    pub direct: FVector,
    pub joined: FVector,
    pub matches: bool,
}

/// Checks that the f-vector of `NC(S)` is the join product of the factors'.
pub fn verify_duality_factorization(s: &CommutingStructure, limits: &Limits) -> Result<DualityCheck, DecompositionError> {
    let factors = duality_factorization(s);
    let direct = nc_complex(s).f_vector(None, limits)?;
    let parts: Vec<FVector> = factors
        .iter()
        .map(|f| nc_complex(f).f_vector(None, limits))
        .collect::<Result<_, _>>()?;
    let joined = join_f_vector(&parts);
    Ok(DualityCheck {
        factor_sizes: factors.iter().map(CommutingStructure::size).collect(),
        matches: joined == direct,
        direct,
        joined,
    })
}

/// The kernel `{1} ∪ (G − ∪_t H^t)` of a Frobenius group with complement `H`.
pub fn frobenius_kernel(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup, DecompositionError> {
    if h.is_trivial() || h.order() == g.order() {
        return Err(DecompositionError::NotFrobenius("complement must be proper and nontrivial".into()));
    }
    let mut covered = vec![false; g.order()];
    for t in g.elements() {
        for &x in conjugate(g, h, t).members() {
            covered[x] = x != 0;
        }
    }
    for t in g.elements().filter(|&t| !h.contains(t)) {
        let conj = conjugate(g, h, t);
        if h.members().iter().any(|&x| x != 0 && conj.contains(x)) {
            return Err(DecompositionError::NotFrobenius(format!(
                "H meets its conjugate by {} nontrivially",
                g.name(t)
            )));
        }
    }
    let members: Vec<usize> = g.elements().filter(|&x| !covered[x]).collect();
    let k = Subgroup::new(g, members)
        .map_err(|_| DecompositionError::NotFrobenius("kernel is not a subgroup".into()))?;
    if !is_normal(g, &k) {
        return Err(DecompositionError::NotFrobenius("kernel is not normal".into()));
    }
    Ok(k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusReport {
    pub kernel_order: usize,
    pub complement_order: usize,
    /// Largest non-commuting set of `G`, by clique search.
    pub nc_direct: usize,
    pub nc_kernel: usize,
    pub nc_complement: usize,
    /// `nc(K) + |K| nc(H)` with `nc` the largest non-commuting set size,
    /// i.e. dimension + 1 of each join factor.
    pub nc_formula: usize,
    /// `(|K| − 1) + |K| (|H| − 1)`: the same formula with `nc` read as a
    /// vertex count; equals `|G| − 1` and is reported for comparison only.
    pub nc_vertex_reading: usize,
    pub f_vector_matches: bool,
    /// `1 − χ(NC(G)) = (1 − χ(NC(K))) Π (1 − χ(NC(H^t)))`.
    pub euler_matches: bool,
    /// Sphere count `(|K| − 2)(|H| − 2)^{|K|}` and dimension `|K|`, when
    /// both `K` and `H` are abelian.
    #[serde(serialize_with = "opt_big")]
    pub predicted_spheres: Option<BigUint>,
    pub predicted_dimension: Option<usize>,
    /// Whether direct homology matched the join prediction; `None` when the
    /// direct computation hit a cap.
    pub homology_matches: Option<bool>,
    pub passed: bool,
}

fn opt_big<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.serialize_some(&b.to_string()),
        None => s.serialize_none(),
    }
}

/// Checks the join factorization `NC(G) = NC(K) * NC(H^{t_1}) * … * NC(H^{t_|K|})`
/// of a Frobenius group with kernel `k` and complement `h`.
pub fn frobenius_verify(
    g: &FiniteGroup,
    k: &Subgroup,
    h: &Subgroup,
    limits: &Limits,
) -> Result<FrobeniusReport, DecompositionError> {
    let kernel = frobenius_kernel(g, h)?;
    if kernel != *k {
        return Err(DecompositionError::NotFrobenius("given kernel differs from G − ∪(H^t − 1)".into()));
    }
    let all = group_structure(g, GroupScope::AllNontrivial)?;
    let elements = all.elements().expect("group structure").to_vec();
    let point_of = |x: usize| elements.iter().position(|&e| e == x).expect("nontrivial element");
    let part = |sub: &Subgroup| -> CommutingStructure {
        let points: Vec<usize> = sub.members().iter().filter(|&&x| x != 0).map(|&x| point_of(x)).collect();
        all.induced(&points)
    };
    // one conjugate of H per element of K
    let mut factors = vec![part(k)];
    factors.extend(k.members().iter().map(|&t| part(&conjugate(g, h, t))));

    let nc_g = nc_complex(&all);
    let direct_f = nc_g.f_vector(None, limits)?;
    let factor_f: Vec<FVector> = factors
        .iter()
        .map(|s| nc_complex(s).f_vector(None, limits))
        .collect::<Result<_, _>>()?;
    let joined = join_f_vector(&factor_f);
    let f_vector_matches = joined == direct_f;
    let one_minus = |f: &FVector| 1 - f.euler_characteristic();
    let euler_matches = one_minus(&direct_f) == factor_f.iter().map(one_minus).product::<i64>();

    let nc_of = |f: &FVector| f.counts.len();
    let nc_direct = nc_of(&direct_f);
    let nc_kernel = nc_of(&factor_f[0]);
    let nc_complement = nc_of(&factor_f[1]);
    let (ko, ho) = (k.order(), h.order());
    let nc_formula = nc_kernel + ko * nc_complement;
    let nc_vertex_reading = (ko - 1) + ko * (ho - 1);

    let abelian = k.is_abelian(g) && h.is_abelian(g);
    let (predicted_spheres, predicted_dimension) = if abelian {
        let spheres = BigUint::from(ko.saturating_sub(2)) * BigUint::from(ho.saturating_sub(2)).pow(ko as u32);
        (Some(spheres), Some(ko))
    } else {
        (None, None)
    };
    let homology_matches = match homology_profile(&nc_g, Coefficients::Integers, None, limits) {
        Ok(direct) => {
            let parts: Vec<HomologyProfile> = factors
                .iter()
                .map(|s| homology_profile(&nc_complex(s), Coefficients::Integers, None, limits))
                .collect::<Result<_, _>>()?;
            let joined = join_predict(&parts, Coefficients::Integers);
            let mut ok = joined.is_ok_and(|j| j.same_homology(&direct));
            if let (Some(n), Some(d)) = (&predicted_spheres, predicted_dimension) {
                let expected = to_u64(n);
                ok &= direct.nonzero_betti() == if expected == 0 { vec![] } else { vec![(d as isize, expected)] };
                ok &= !direct.has_torsion();
            }
            Some(ok)
        }
        Err(e) if e.is_cap() => None,
        Err(e) => return Err(e.into()),
    };
    let passed = f_vector_matches && euler_matches && nc_direct == nc_formula && homology_matches != Some(false);
    Ok(FrobeniusReport {
        kernel_order: ko,
        complement_order: ho,
        nc_direct,
        nc_kernel,
        nc_complement,
        nc_formula,
        nc_vertex_reading,
        f_vector_matches,
        euler_matches,
        predicted_spheres,
        predicted_dimension,
        homology_matches,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuillenDualityReport {
    pub p: u64,
    /// `|G : N|`.
    pub index: usize,
    /// Number of components of `C_p(G)`.
    pub components: usize,
    /// `|G : N| − 2`.
    pub claimed_connectivity: isize,
    /// Whether `NC_p(G)` is nonempty with vanishing `H̃_i` for `i ≤ |G:N| − 2`.
    pub connectivity_holds: bool,
    pub profile: HomologyProfile,
    pub factor_sizes: Vec<usize>,
    pub join_matches: bool,
    pub passed: bool,
}

/// Compares `|G : N|` with the component count of `C_p(G)` and checks the
/// homological connectivity of `NC_p(G)`.
pub fn quillen_duality(g: &FiniteGroup, p: u64, limits: &Limits) -> Result<QuillenDualityReport, DecompositionError> {
    sylow_subgroup(g, p)?;
    let n = quillen_n(g, p, DEFAULT_SUBGROUP_CAP)?;
    let index = n.index_in(g);
    let s = group_structure(g, GroupScope::OrderP(p))?;
    let components = s.commuting_components().len();
    let claimed = index as isize - 2;
    let profile = homology_profile(&nc_complex(&s), Coefficients::Integers, None, limits)?;
    let connectivity_holds = connectivity_lower_bound(&profile, claimed)?;
    let duality = verify_duality_factorization(&s, limits)?;
    let passed = components == index && connectivity_holds && duality.matches;
    Ok(QuillenDualityReport {
        p,
        index,
        components,
        claimed_connectivity: claimed,
        connectivity_holds,
        profile,
        factor_sizes: duality.factor_sizes,
        join_matches: duality.matches,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CpApReport {
    pub p: u64,
    pub cp: HomologyProfile,
    pub ap: HomologyProfile,
    pub equal: bool,
}

/// Compares the homology of `C_p(G)` with that of the order complex of the
/// elementary abelian `p`-subgroups.
pub fn cp_vs_ap_verify(g: &FiniteGroup, p: u64, limits: &Limits) -> Result<CpApReport, DecompositionError> {
    let s = group_structure(g, GroupScope::OrderP(p))?;
    let cp = homology_profile(&c_complex(&s), Coefficients::Integers, None, limits)?;
    let ap = homology_profile(&order_complex(&ap_poset(g, p)?), Coefficients::Integers, None, limits)?;
    let equal = cp.same_homology(&ap);
    Ok(CpApReport { p, cp, ap, equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating, frobenius_complement, parse_group_spec};
    use crate::structure::{symp, CommutingStructure};

    fn limits() -> Limits {
        Limits::default()
    }

    fn g(spec: &str) -> FiniteGroup {
        parse_group_spec(spec).unwrap()
    }

    fn manual_partition(core: CommutingStructure, sizes: Vec<usize>) -> CorePartition {
        let mut classes = Vec::new();
        let mut projection = Vec::new();
        let mut next = 0;
        for (c, &m) in sizes.iter().enumerate() {
            classes.push((next..next + m).collect());
            projection.extend(std::iter::repeat_n(c, m));
            next += m;
        }
        CorePartition {
            classes,
            sizes,
            core,
            projection,
        }
    }

    #[test]
    fn edge_with_doubled_vertices_is_a_circle() {
        let edge = CommutingStructure::discrete(2);
        let p = blowup_predict(&manual_partition(edge, vec![2, 2]), &limits()).unwrap();
        assert_eq!(p.predicted.nonzero_betti(), vec![(1, 1)]);
    }

    #[test]
    fn a4_and_symp5_predictions() {
        let s = group_structure(&alternating(4).unwrap(), GroupScope::Noncentral).unwrap();
        let p = blowup_predict(&s.core(), &limits()).unwrap();
        assert_eq!(p.predicted.nonzero_betti(), vec![(4, 2)]);
        let p5 = blowup_predict(&symp(5).unwrap().core(), &limits()).unwrap();
        assert_eq!(p5.predicted.nonzero_betti(), vec![(5, 729)]);
        assert!(p5.terms.iter().all(|t| t.gamma > BigUint::from(0u8)));
    }

    #[test]
    fn blowup_verification_on_small_groups() {
        for spec in ["S3", "D8", "Q8", "A4", "D12", "frob:5:4:2"] {
            let s = group_structure(&g(spec), GroupScope::Noncentral).unwrap();
            let v = blowup_verify(&s, &limits()).unwrap();
            assert!(v.matches, "{spec}: {:?} vs {:?}", v.predicted.betti_vector(), v.direct.betti_vector());
            assert_eq!(v.route, BlowupRoute::Direct);
        }
        let s3 = group_structure(&g("S3"), GroupScope::AllNontrivial).unwrap();
        assert!(blowup_verify(&s3, &limits()).unwrap().direct.is_acyclic());
    }

    #[test]
    fn disconnected_core_uses_disjoint_union() {
        let s = group_structure(&g("D8"), GroupScope::AllNontrivial).unwrap();
        assert!(matches!(
            blowup_predict(&s.core(), &limits()),
            Err(DecompositionError::CoreNotConnected { components: 2 })
        ));
        let v = blowup_verify(&s, &limits()).unwrap();
        assert_eq!(v.route, BlowupRoute::DisjointUnion { parts: 2 });
        assert!(v.matches);
    }

    #[test]
    fn join_predictions() {
        let point_set = |n: usize| {
            let x = crate::complex::FaceList::discrete((0..n).map(|i| i.to_string()).collect());
            homology_profile(&x, Coefficients::Rationals, None, &limits()).unwrap()
        };
        let five = vec![point_set(3); 5];
        assert_eq!(join_predict(&five, Coefficients::Rationals).unwrap().nonzero_betti(), vec![(4, 32)]);
        let s0 = point_set(2);
        assert_eq!(join_predict(&[s0.clone(), s0.clone()], Coefficients::Rationals).unwrap().nonzero_betti(), vec![(1, 1)]);
        let mut frob = vec![point_set(6)];
        frob.extend(std::iter::repeat_n(s0, 7));
        assert_eq!(join_predict(&frob, Coefficients::Rationals).unwrap().nonzero_betti(), vec![(7, 5)]);
        assert!(join_predict(&[], Coefficients::Rationals).unwrap().betti(-1) == 1);
    }

    #[test]
    fn duality_factorizations() {
        let a5 = group_structure(&alternating(5).unwrap(), GroupScope::OrderP(2)).unwrap();
        let check = verify_duality_factorization(&a5, &limits()).unwrap();
        assert_eq!(check.factor_sizes, vec![3; 5]);
        assert!(check.matches);
        let a4 = group_structure(&alternating(4).unwrap(), GroupScope::OrderP(3)).unwrap();
        assert_eq!(duality_factorization(&a4).len(), 4);
        assert_eq!(duality_factorization(&CommutingStructure::complete(4)).len(), 1);
    }

    #[test]
    fn frobenius_groups() {
        for (spec, ko, ho) in [("A4", 4, 3), ("frob:7:3:2", 7, 3), ("S3", 3, 2), ("frob:5:4:2", 5, 4), ("D10", 5, 2)] {
            let grp = g(spec);
            let h = frobenius_complement(&grp, DEFAULT_SUBGROUP_CAP).unwrap().unwrap();
            let k = frobenius_kernel(&grp, &h).unwrap();
            let r = frobenius_verify(&grp, &k, &h, &limits()).unwrap();
            assert_eq!((r.kernel_order, r.complement_order), (ko, ho), "{spec}");
            assert!(r.passed, "{spec}: {r:?}");
        }
        let a4 = g("A4");
        let h = frobenius_complement(&a4, DEFAULT_SUBGROUP_CAP).unwrap().unwrap();
        let k = frobenius_kernel(&a4, &h).unwrap();
        let r = frobenius_verify(&a4, &k, &h, &limits()).unwrap();
        assert_eq!(r.nc_direct, 5);
        assert_eq!(r.nc_vertex_reading, 11);
        assert_eq!(r.predicted_spheres, Some(BigUint::from(2u8)));
        let f21 = g("frob:7:3:2");
        let h = frobenius_complement(&f21, DEFAULT_SUBGROUP_CAP).unwrap().unwrap();
        let r = frobenius_verify(&f21, &frobenius_kernel(&f21, &h).unwrap(), &h, &limits()).unwrap();
        assert_eq!(r.nc_direct, 8);
        assert_eq!(r.predicted_spheres, Some(BigUint::from(5u8)));
        assert_eq!(r.homology_matches, Some(true));
        let d8 = g("D8");
        assert!(frobenius_complement(&d8, DEFAULT_SUBGROUP_CAP).unwrap().is_none());
        let z2 = crate::group::generate(&d8, &[d8.elements().find(|&x| d8.element_order(x) == 2 && x != 2).unwrap()]);
        assert!(matches!(frobenius_kernel(&d8, &z2), Err(DecompositionError::NotFrobenius(_))));
    }

    #[test]
    fn quillen_reports() {
        let a4 = alternating(4).unwrap();
        let r = quillen_duality(&a4, 3, &limits()).unwrap();
        assert_eq!((r.index, r.components), (4, 4));
        assert!(r.connectivity_holds);
        assert_eq!(r.profile.nonzero_betti(), vec![(3, 1)]);
        assert!(r.passed);
        let r = quillen_duality(&a4, 2, &limits()).unwrap();
        assert_eq!((r.index, r.components), (1, 1));
        assert!(r.passed);
        let r = quillen_duality(&alternating(5).unwrap(), 2, &limits()).unwrap();
        assert_eq!((r.index, r.components, r.claimed_connectivity), (5, 5, 3));
        assert!(r.passed);
    }

    #[test]
    fn cp_ap() {
        for (spec, p) in [("S3", 2), ("S3", 3), ("A4", 2), ("A4", 3), ("D8", 2), ("A5", 2)] {
            let r = cp_vs_ap_verify(&g(spec), p, &limits()).unwrap();
            assert!(r.equal, "{spec} {p}");
        }
        let r = cp_vs_ap_verify(&g("A5"), 2, &limits()).unwrap();
        assert_eq!(r.cp.nonzero_betti(), vec![(0, 4)]);
    }
}
