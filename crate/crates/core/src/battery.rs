//! The named verification checks. Each check maps to one library operation
//! and carries a short statement of the claim it tests.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::complex::{nc_complex, FlagComplex, SimplicialComplex};
use crate::decomposition::{blowup_verify, cp_vs_ap_verify, frobenius_kernel, frobenius_verify, quillen_duality};
use crate::group::{center, frobenius_complement, prime_divisors, FiniteGroup, DEFAULT_SUBGROUP_CAP};
use crate::homology::{homology_profile, Coefficients};
use crate::maxsets::{
    lexicographic_shelling, maximal_noncommuting_sets, rank_bound_report, shell_inequalities, tc_wedge_prediction,
    ShellabilityStatus,
};
use crate::structure::{group_structure, CommutingStructure, GroupScope};
use crate::{Error, Limits};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    H1Trivial,
    CenterDividesChi,
    OddOrderEvenChi,
    NcpOddEvenChi,
    ChiMod2Nc2,
    ConeSelfCentralizing,
    BlowupMatches,
    CoreContractible,
    FrobeniusJoin,
    QuillenDuality,
    CpEqAp,
    RankBound,
    TcWedge,
    Shelling,
    ShellIneq,
    CorShell,
    DiameterLe2,
    NoMaximalPair,
}

impl CheckId {
    pub const ALL: [CheckId; 18] = [
        CheckId::H1Trivial,
        CheckId::CenterDividesChi,
        CheckId::OddOrderEvenChi,
        CheckId::NcpOddEvenChi,
        CheckId::ChiMod2Nc2,
        CheckId::ConeSelfCentralizing,
        CheckId::BlowupMatches,
        CheckId::CoreContractible,
        CheckId::FrobeniusJoin,
        CheckId::QuillenDuality,
        CheckId::CpEqAp,
        CheckId::RankBound,
        CheckId::TcWedge,
        CheckId::Shelling,
        CheckId::ShellIneq,
        CheckId::CorShell,
        CheckId::DiameterLe2,
        CheckId::NoMaximalPair,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::H1Trivial => "H1_TRIVIAL",
            CheckId::CenterDividesChi => "CENTER_DIVIDES_CHI",
            CheckId::OddOrderEvenChi => "ODD_ORDER_EVEN_CHI",
            CheckId::NcpOddEvenChi => "NCP_ODD_EVEN_CHI",
            CheckId::ChiMod2Nc2 => "CHI_MOD2_NC2",
            CheckId::ConeSelfCentralizing => "CONE_SELF_CENTRALIZING",
            CheckId::BlowupMatches => "BLOWUP_MATCHES",
            CheckId::CoreContractible => "CORE_CONTRACTIBLE",
            CheckId::FrobeniusJoin => "FROBENIUS_JOIN",
            CheckId::QuillenDuality => "QUILLEN_DUALITY",
            CheckId::CpEqAp => "CP_EQ_AP",
            CheckId::RankBound => "RANK_BOUND",
            CheckId::TcWedge => "TC_WEDGE",
            CheckId::Shelling => "SHELLING",
            CheckId::ShellIneq => "SHELL_INEQ",
            CheckId::CorShell => "COR_SHELL",
            CheckId::DiameterLe2 => "DIAMETER_LE_2",
            CheckId::NoMaximalPair => "NO_MAXIMAL_PAIR",
        }
    }

    /// The claim this check tests.
    pub fn anchor(self) -> &'static str {
        match self {
            CheckId::H1Trivial => "BNC(G) is simply connected, so H_1(BNC(G)) = 0",
            CheckId::CenterDividesChi => "Z(G) acts freely on BNC(G), so |Z(G)| divides chi(BNC(G))",
            CheckId::OddOrderEvenChi => "for |G| odd, inversion is a free involution, so chi(BNC(G)) and chi(NC(G)) are even",
            CheckId::NcpOddEvenChi => "for odd p, inversion is free on NC_p(G), so chi(NC_p(G)) is even",
            CheckId::ChiMod2Nc2 => "NC_2(G) is the fixed set of inversion, so chi(NC(G)) = chi(NC_2(G)) mod 2",
            CheckId::ConeSelfCentralizing => "a self-centralizing involution x makes BNC(G) = NC(G) a cone with apex x",
            CheckId::BlowupMatches => "NC(S) is NC(core) wedge the suspended links Susp^|F| Lk(F), gamma(F) times each",
            CheckId::CoreContractible => "a centralizer class [x] with [x] = C(x) makes NC(core) a cone",
            CheckId::FrobeniusJoin => "for a Frobenius group, NC(G) = NC(K) * NC(H^t1) * ... * NC(H^t|K|)",
            CheckId::QuillenDuality => "C_p(G) has |G:N| components and NC_p(G) is (|G:N| - 2)-connected",
            CheckId::CpEqAp => "C_p(G) is homotopy equivalent to A_p(G)",
            CheckId::RankBound => "rk H_{s-1}(BNC(G)) >= sum over maximal sets F of size s of prod (1 - 1/m_x)",
            CheckId::TcWedge => "for a TC group, BNC(G) is a wedge of prod (m_i - 1) spheres of dimension nc(G) - 1",
            CheckId::Shelling => "for transitive commuting, the lexicographic facet order is a shelling",
            CheckId::ShellIneq => "pure shellable BNC(G) satisfies the h-vector inequalities in the nc_k",
            CheckId::CorShell => "TC groups satisfy nc(nc-1) + |G|(|G|-m) - 2(nc-1)(|G|-|Z|) >= 0",
            CheckId::DiameterLe2 => "the non-commuting graph on noncentral elements has diameter at most 2",
            CheckId::NoMaximalPair => "{a, b} non-commuting extends to {a, b, ab}, so no maximal set has size 2",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for CheckId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_ascii_uppercase().replace('-', "_");
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == wanted)
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: CheckId,
    pub anchor: &'static str,
    #[serde(flatten)]
    pub status: CheckStatus,
    pub payload: Value,
    pub millis: f64,
}

/// What a battery runs on.
pub enum Subject<'a> {
    Group(&'a FiniteGroup),
    /// A bare structure: only the structure-level checks apply.
    Structure(&'a CommutingStructure),
}

type Outcome = Result<(CheckStatus, Value), Error>;

fn verdict(ok: bool, payload: Value) -> Outcome {
    Ok((if ok { CheckStatus::Pass } else { CheckStatus::Fail }, payload))
}

fn skip(reason: impl Into<String>) -> Outcome {
    Ok((CheckStatus::Skipped(reason.into()), Value::Null))
}

/// Unreduced Euler characteristic: by counting faces when the count stays
/// under the cap, otherwise by the pruned signed clique sum.
pub fn flag_euler(x: &FlagComplex, limits: &Limits) -> (i64, &'static str) {
    match x.f_vector(None, limits) {
        Ok(f) => (f.euler_characteristic(), "f-vector"),
        Err(_) => (x.euler_characteristic_pruned(), "pruned-clique-sum"),
    }
}

fn scoped(g: &FiniteGroup, scope: GroupScope) -> Option<CommutingStructure> {
    group_structure(g, scope).ok()
}

fn chi_of(g: &FiniteGroup, scope: GroupScope, limits: &Limits) -> i64 {
    // an empty structure gives the void complex, whose χ is 0
    scoped(g, scope).map_or(0, |s| flag_euler(&nc_complex(&s), limits).0)
}

fn group_check(id: CheckId, g: &FiniteGroup, limits: &Limits) -> Outcome {
    let local = matches!(
        id,
        CheckId::OddOrderEvenChi | CheckId::NcpOddEvenChi | CheckId::ChiMod2Nc2 | CheckId::QuillenDuality | CheckId::CpEqAp
    );
    if g.is_abelian() && !local {
        return skip("abelian group: BNC(G) is empty");
    }
    let bnc = || group_structure(g, GroupScope::Noncentral);
    match id {
        CheckId::H1Trivial => {
            let h = homology_profile(&nc_complex(&bnc()?), Coefficients::Integers, Some(1), limits)?;
            let ok = h.betti(0) == 0 && h.betti(1) == 0 && h.torsion(1).is_empty();
            verdict(ok, json!({ "b0": h.betti(0), "b1": h.betti(1), "torsion1": h.torsion(1).len() }))
        }
        CheckId::CenterDividesChi => {
            let z = center(g).order() as i64;
            let (chi, method) = flag_euler(&nc_complex(&bnc()?), limits);
            verdict(chi % z == 0, json!({ "center": z, "chi_bnc": chi, "method": method }))
        }
        CheckId::OddOrderEvenChi => {
            if g.order().is_multiple_of(2) {
                return skip("even order");
            }
            let chi_nc = chi_of(g, GroupScope::AllNontrivial, limits);
            let chi_bnc = chi_of(g, GroupScope::Noncentral, limits);
            verdict(chi_nc % 2 == 0 && chi_bnc % 2 == 0, json!({ "chi_nc": chi_nc, "chi_bnc": chi_bnc }))
        }
        CheckId::NcpOddEvenChi => {
            let primes: Vec<u64> = prime_divisors(g.order()).into_iter().filter(|&p| p > 2).collect();
            if primes.is_empty() {
                return skip("no odd prime divides |G|");
            }
            let rows: Vec<(u64, i64)> = primes.iter().map(|&p| (p, chi_of(g, GroupScope::OrderP(p), limits))).collect();
            let ok = rows.iter().all(|r| r.1 % 2 == 0);
            verdict(ok, json!(rows.iter().map(|(p, c)| json!({ "p": p, "chi": c })).collect::<Vec<_>>()))
        }
        CheckId::ChiMod2Nc2 => {
            if g.order() % 2 == 1 {
                return skip("odd order");
            }
            let chi_nc = chi_of(g, GroupScope::AllNontrivial, limits);
            let chi_nc2 = chi_of(g, GroupScope::OrderP(2), limits);
            verdict((chi_nc - chi_nc2) % 2 == 0, json!({ "chi_nc": chi_nc, "chi_nc2": chi_nc2 }))
        }
        CheckId::ConeSelfCentralizing => {
            let s = bnc()?;
            let elements = s.elements().expect("group structure").to_vec();
            let apex = (0..s.size()).find(|&i| {
                let x = elements[i];
                g.element_order(x) == 2 && g.elements().filter(|&y| g.commutes(x, y)).count() == 2
            });
            let Some(apex) = apex else {
                return skip("no self-centralizing involution");
            };
            let all = group_structure(g, GroupScope::AllNontrivial)?;
            let x = nc_complex(&s);
            let h = homology_profile(&x, Coefficients::Integers, None, limits)?;
            let is_apex = x.neighbours(apex).count_ones(..) + 1 == s.size();
            let ok = is_apex && h.is_acyclic() && all.size() == s.size();
            verdict(ok, json!({ "apex": g.name(elements[apex]), "acyclic": h.is_acyclic(), "bnc_equals_nc": all.size() == s.size() }))
        }
        CheckId::BlowupMatches => structure_check(id, &bnc()?, limits),
        CheckId::CoreContractible => structure_check(id, &bnc()?, limits),
        CheckId::FrobeniusJoin => {
            let Some(h) = frobenius_complement(g, DEFAULT_SUBGROUP_CAP)? else {
                return skip("not a Frobenius group");
            };
            let k = frobenius_kernel(g, &h)?;
            let r = frobenius_verify(g, &k, &h, limits)?;
            verdict(r.passed, serde_json::to_value(&r).expect("serializable"))
        }
        CheckId::QuillenDuality => {
            let mut rows = Vec::new();
            let mut ok = true;
            for p in prime_divisors(g.order()) {
                let r = quillen_duality(g, p, limits)?;
                ok &= r.passed;
                rows.push(json!({
                    "p": p, "index": r.index, "components": r.components,
                    "connectivity": r.claimed_connectivity, "connected": r.connectivity_holds,
                    "betti": r.profile.nonzero_betti(), "passed": r.passed,
                }));
            }
            verdict(ok, Value::Array(rows))
        }
        CheckId::CpEqAp => {
            let mut rows = Vec::new();
            let mut ok = true;
            for p in prime_divisors(g.order()) {
                let r = cp_vs_ap_verify(g, p, limits)?;
                ok &= r.equal;
                rows.push(json!({ "p": p, "cp": r.cp.nonzero_betti(), "ap": r.ap.nonzero_betti(), "equal": r.equal }));
            }
            verdict(ok, Value::Array(rows))
        }
        CheckId::RankBound => {
            let r = rank_bound_report(g, limits)?;
            verdict(r.passed, json!({ "center": r.center_order, "odd_order": r.odd_order, "rows": r.rows }))
        }
        CheckId::TcWedge | CheckId::Shelling => structure_check(id, &bnc()?, limits),
        CheckId::ShellIneq => {
            let r = shell_inequalities(g, limits)?;
            let payload = serde_json::to_value(&r).expect("serializable");
            match r.hypothesis {
                ShellabilityStatus::Verified => verdict(r.shell_holds && r.closed_forms_hold, payload),
                ShellabilityStatus::Refuted => verdict(false, payload),
                ShellabilityStatus::Unverified => Ok((CheckStatus::Skipped("hypothesis unverified: not a TC group".into()), payload)),
            }
        }
        CheckId::CorShell => {
            let r = shell_inequalities(g, limits)?;
            let payload = json!({
                "lhs": r.cor_shell_lhs, "nc": r.nc, "order": g.order(),
                "conjugacy_classes": r.conjugacy_classes, "center": r.center_order,
            });
            if r.hypothesis == ShellabilityStatus::Unverified {
                return Ok((CheckStatus::Skipped("hypothesis unverified: not a TC group".into()), payload));
            }
            verdict(r.cor_shell_holds, payload)
        }
        CheckId::DiameterLe2 => {
            let d = nc_complex(&bnc()?).diameter();
            verdict(matches!(d, Some(x) if x <= 2), json!({ "diameter": d }))
        }
        CheckId::NoMaximalPair => {
            let inv = maximal_noncommuting_sets(&bnc()?, false, limits)?;
            verdict(inv.count(2) == 0, json!({ "by_size": inv.by_size, "nc": inv.nc }))
        }
    }
}

fn structure_check(id: CheckId, s: &CommutingStructure, limits: &Limits) -> Outcome {
    match id {
        CheckId::BlowupMatches => {
            let v = blowup_verify(s, limits)?;
            verdict(
                v.matches,
                json!({ "route": v.route, "predicted": v.predicted.nonzero_betti(), "direct": v.direct.nonzero_betti() }),
            )
        }
        CheckId::CoreContractible => {
            let partition = s.core();
            let Some(x) = (0..s.size()).find(|&x| s.is_self_centralizing_class(&partition, x)) else {
                return skip("no centralizer class equal to its centralizer set");
            };
            let core = nc_complex(&partition.core);
            let h = homology_profile(&core, Coefficients::Integers, None, limits)?;
            let apex = core.cone_apex();
            verdict(
                h.is_acyclic() && apex.is_some(),
                json!({ "class": s.label(x), "apex": apex.map(|a| core.vertex_label(a).to_string()), "acyclic": h.is_acyclic() }),
            )
        }
        CheckId::TcWedge => {
            if !s.is_transitive() {
                return skip("hypothesis unverified: commuting is not transitive");
            }
            let prediction = tc_wedge_prediction(s)?;
            let h = homology_profile(&nc_complex(s), Coefficients::Integers, None, limits)?;
            verdict(
                prediction.matches(&h),
                json!({ "dimension": prediction.dimension, "spheres": prediction.spheres.to_string(), "direct": h.nonzero_betti() }),
            )
        }
        CheckId::Shelling => {
            if !s.is_transitive() {
                return skip("hypothesis unverified: commuting is not transitive");
            }
            let c = lexicographic_shelling(s, limits.exec)?;
            verdict(c.valid, json!({ "facets": c.facets.len(), "first_failure": c.first_failure }))
        }
        _ => skip("needs a group"),
    }
}

/// Runs one check, turning cap errors into skips.
pub fn run_check(id: CheckId, subject: &Subject<'_>, limits: &Limits) -> Result<CheckRecord, Error> {
    let start = Instant::now();
    let outcome = match subject {
        Subject::Group(g) => group_check(id, g, limits),
        Subject::Structure(s) => structure_check(id, s, limits),
    };
    let (status, payload) = match outcome {
        Ok(r) => r,
        Err(e) if e.is_cap() => (CheckStatus::Skipped(format!("cap: {e}")), Value::Null),
        Err(e) => return Err(e),
    };
    Ok(CheckRecord {
        id,
        anchor: id.anchor(),
        status,
        payload,
        millis: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Runs the given checks (all when empty), sorted by id.
pub fn run_battery(subject: &Subject<'_>, checks: &[CheckId], limits: &Limits) -> Result<Vec<CheckRecord>, Error> {
    let mut ids: Vec<CheckId> = if checks.is_empty() { CheckId::ALL.to_vec() } else { checks.to_vec() };
    ids.sort();
    ids.dedup();
    // checks run concurrently; each one's inner loops stay sequential
    let inner = Limits {
        exec: crate::Exec::Sequential,
        ..*limits
    };
    let results = crate::par::map_slice(limits.exec, &ids, |&id| run_check(id, subject, &inner));
    results.into_iter().collect()
}

/// Euler characteristic of `NC(G)` on all nontrivial elements, with its
/// parity and the method that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerParity {
    pub chi: i64,
    pub odd: bool,
    pub method: &'static str,
    /// Set when plain face counting stopped at the cap.
    pub counting_cap: Option<u64>,
}

pub fn nc_euler_parity(g: &FiniteGroup, limits: &Limits) -> Result<EulerParity, Error> {
    let x = nc_complex(&group_structure(g, GroupScope::AllNontrivial)?);
    let (chi, method) = flag_euler(&x, limits);
    Ok(EulerParity {
        chi,
        odd: chi % 2 != 0,
        method,
        counting_cap: (method != "f-vector").then_some(limits.face_cap),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group_spec;
    use crate::structure::symp;

    fn status_of(records: &[CheckRecord], id: CheckId) -> &CheckStatus {
        &records.iter().find(|r| r.id == id).unwrap().status
    }

    #[test]
    fn ids_round_trip() {
        for id in CheckId::ALL {
            assert_eq!(id.name().parse::<CheckId>().unwrap(), id);
            assert_eq!(serde_json::to_value(id).unwrap(), json!(id.name()));
        }
        assert!("nope".parse::<CheckId>().is_err());
        assert_eq!("shell-ineq".parse::<CheckId>().unwrap(), CheckId::ShellIneq);
    }

    #[test]
    fn a4_battery() {
        let g = parse_group_spec("A4").unwrap();
        let r = run_battery(&Subject::Group(&g), &[], &Limits::default()).unwrap();
        assert_eq!(r.len(), 18);
        assert!(r.iter().all(|c| c.status != CheckStatus::Fail), "{r:#?}");
        assert_eq!(status_of(&r, CheckId::FrobeniusJoin), &CheckStatus::Pass);
        assert_eq!(status_of(&r, CheckId::TcWedge), &CheckStatus::Pass);
        let rank = r.iter().find(|c| c.id == CheckId::RankBound).unwrap();
        assert_eq!(rank.payload["rows"][0]["bound_integer"], json!(2));
    }

    #[test]
    fn s3_and_s4_batteries() {
        let s3 = parse_group_spec("S3").unwrap();
        let r = run_battery(&Subject::Group(&s3), &[], &Limits::default()).unwrap();
        assert!(r.iter().all(|c| c.status != CheckStatus::Fail), "{r:#?}");
        assert_eq!(status_of(&r, CheckId::ConeSelfCentralizing), &CheckStatus::Pass);
        let s4 = parse_group_spec("S4").unwrap();
        let r = run_battery(&Subject::Group(&s4), &[CheckId::ShellIneq, CheckId::DiameterLe2], &Limits::default()).unwrap();
        assert!(matches!(status_of(&r, CheckId::ShellIneq), CheckStatus::Skipped(_)));
        assert_eq!(status_of(&r, CheckId::DiameterLe2), &CheckStatus::Pass);
    }

    #[test]
    fn abelian_and_structure_subjects() {
        let c4 = parse_group_spec("C4").unwrap();
        let r = run_battery(&Subject::Group(&c4), &[CheckId::H1Trivial], &Limits::default()).unwrap();
        assert!(matches!(r[0].status, CheckStatus::Skipped(_)));
        let s = symp(3).unwrap();
        let r = run_battery(&Subject::Structure(&s), &[CheckId::BlowupMatches, CheckId::RankBound], &Limits::default()).unwrap();
        assert_eq!(r[0].status, CheckStatus::Pass);
        assert!(matches!(r[1].status, CheckStatus::Skipped(_)));
    }

    #[test]
    fn caps_become_skips() {
        let g = parse_group_spec("A4").unwrap();
        let tight = Limits::default().with_face_cap(5);
        let r = run_check(CheckId::H1Trivial, &Subject::Group(&g), &tight).unwrap();
        assert!(matches!(r.status, CheckStatus::Skipped(ref why) if why.starts_with("cap")));
    }

    #[test]
    fn parity_uses_pruning_above_the_cap() {
        let g = parse_group_spec("D8").unwrap();
        let exact = nc_euler_parity(&g, &Limits::default()).unwrap();
        let pruned = nc_euler_parity(&g, &Limits::default().with_face_cap(3)).unwrap();
        assert_eq!(exact.chi, pruned.chi);
        assert_eq!((exact.method, pruned.method), ("f-vector", "pruned-clique-sum"));
    }
}
