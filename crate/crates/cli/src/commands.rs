use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use serde_json::{json, Value};

use nc_complex::battery::{nc_euler_parity, run_battery, CheckId, CheckRecord, CheckStatus, Subject};
use nc_complex::complex::{nc_complex, SimplicialComplex};
use nc_complex::decomposition::blowup_verify;
use nc_complex::group::{
    conjugacy_classes, generate, parse_group_spec, FiniteGroup, EXTENDED_CATALOG, SMALL_CATALOG,
};
use nc_complex::homology::{boundary_matrices, smith_normal_form, Coefficients};
use nc_complex::maxsets::{
    lexicographic_shelling, maximal_noncommuting_sets, nc_counts, nc_value, rank_bound_report, shell_inequalities,
    tc_check, tc_wedge_prediction,
};
use nc_complex::oracle::{maximal_noncommuting_sets_exhaustive, smith_invariants_by_minors};
use nc_complex::structure::CommutingStructure;
use nc_complex::{Error, Limits};

use crate::input::{complex_of, structure_of, Input, Kind, UsageError};
use crate::report::{noncentral_class_sizes, structure_summary, Report, SCHEMA};

pub type CmdResult = Result<Outcome, Box<dyn std::error::Error>>;

/// What a command produced: the report, a human-readable rendering, and
/// whether a mathematical check failed.
pub struct Outcome {
    pub report: Report,
    pub text: String,
    pub failed: bool,
}

pub struct Options {
    pub kind: Option<Kind>,
    pub p: Option<u64>,
    pub coeff: Coefficients,
    pub max_dim: Option<usize>,
    pub oracle: bool,
    pub nc: bool,
    pub checks: Vec<CheckId>,
    pub replay: Option<PathBuf>,
    pub limits: Limits,
}

/// Default kind: the noncentral complex for groups, the structure itself otherwise.
fn default_kind(input: &Input, opts: &Options) -> Kind {
    opts.kind.unwrap_or(match input {
        Input::Group(_) => Kind::Bnc,
        _ => Kind::Nc,
    })
}

pub fn info(spec: &str, opts: &Options) -> CmdResult {
    let input = Input::parse(spec)?;
    let mut text = String::new();
    let result = match &input {
        Input::Group(g) => {
            let classes = noncentral_class_sizes(g);
            let tc = tc_check(g)?;
            let mut r = json!({
                "order_statistics": g.order_statistics(),
                "centralizer_classes": classes,
                "tc": tc,
            });
            let summary = crate::report::GroupSummary::of(g);
            writeln!(text, "order {}", summary.order)?;
            writeln!(text, "center {}", summary.center)?;
            writeln!(text, "conjugacy classes {}", summary.conjugacy_classes)?;
            writeln!(text, "centralizer classes of noncentral elements {classes:?}")?;
            writeln!(text, "TC group {tc}")?;
            if opts.nc {
                let s = structure_of(&input, Kind::Nc, None)?;
                let nc = nc_value(&s, &opts.limits)?;
                r["nc"] = json!(nc);
                writeln!(text, "nc {nc}")?;
            }
            r
        }
        Input::Structure(s) => {
            let mut r = structure_summary(s);
            writeln!(text, "{s}")?;
            writeln!(text, "centralizer classes {:?}", s.core().sizes)?;
            if opts.nc {
                let nc = nc_value(s, &opts.limits)?;
                r["nc"] = json!(nc);
                writeln!(text, "nc {nc}")?;
            }
            r
        }
        Input::Faces(x) => {
            let f = x.f_vector(None, &opts.limits)?;
            writeln!(text, "{} vertices, {} facets, f-vector {:?}", x.vertex_count(), x.facets_ref().len(), f.counts)?;
            json!({ "vertices": x.vertex_count(), "facets": x.facets_ref().len(), "pure": x.is_pure(), "f_vector": f })
        }
    };
    Ok(Outcome {
        report: Report::new("info", spec, input.group(), result),
        text,
        failed: false,
    })
}

/// Compares every boundary matrix small enough for the minor oracle.
fn snf_oracle(x: &dyn SimplicialComplex, up_to: Option<usize>, limits: &Limits) -> Result<Value, Error> {
    let matrices = boundary_matrices(x, up_to, limits)?;
    let (mut compared, mut skipped, mut agree) = (0, 0, true);
    for m in &matrices {
        match smith_invariants_by_minors(&m.to_dense()) {
            Some(expected) => {
                compared += 1;
                agree &= smith_normal_form(m).divisors() == expected;
            }
            None => skipped += 1,
        }
    }
    Ok(json!({ "snf_compared": compared, "snf_skipped_above_threshold": skipped, "agree": agree }))
}

fn clique_oracle(s: &CommutingStructure, limits: &Limits) -> Result<Value, Error> {
    let Some(expected) = maximal_noncommuting_sets_exhaustive(s) else {
        return Ok(json!({ "cliques": "skipped: above threshold" }));
    };
    let found = maximal_noncommuting_sets(s, true, limits)?;
    Ok(json!({ "cliques_compared": expected.len(), "agree": found.sets.as_ref() == Some(&expected) }))
}

pub fn homology(spec: &str, opts: &Options) -> CmdResult {
    let input = Input::parse(spec)?;
    let kind = opts.kind.unwrap_or(Kind::Nc);
    let x = complex_of(&input, kind, opts.p)?;
    let profile = x.homology(opts.coeff, opts.max_dim, &opts.limits)?;
    let mut result = json!({
        "kind": kind.to_string(),
        "p": opts.p,
        "profile": profile,
        "euler_characteristic": profile.complete.then(|| profile.reduced_euler_characteristic() + 1),
    });
    let mut failed = false;
    if opts.oracle {
        let o = snf_oracle(x.as_dyn(), opts.max_dim, &opts.limits)?;
        failed |= o["agree"] == json!(false);
        result["oracle"] = o;
    }
    Ok(Outcome {
        report: Report::new("homology", spec, input.group(), result),
        text: profile.to_string(),
        failed,
    })
}

pub fn core(spec: &str, opts: &Options) -> CmdResult {
    let input = Input::parse(spec)?;
    let s = structure_of(&input, default_kind(&input, opts), opts.p)?;
    let partition = s.core();
    let core_nc = nc_complex(&partition.core);
    let cone_class = (0..s.size()).find(|&x| s.is_self_centralizing_class(&partition, x));
    let v = blowup_verify(&s, &opts.limits)?;
    let mut text = String::new();
    writeln!(text, "{} points in {} centralizer classes, sizes {:?}", s.size(), partition.sizes.len(), partition.sizes)?;
    writeln!(text, "core complex connected: {}", core_nc.is_connected())?;
    if let Some(x) = cone_class {
        writeln!(text, "class of {} equals its centralizer set: core complex is a cone", s.label(x))?;
    }
    writeln!(text, "predicted {:?}", v.predicted.nonzero_betti())?;
    writeln!(text, "direct    {:?}", v.direct.nonzero_betti())?;
    writeln!(text, "blowup prediction {}", if v.matches { "matches" } else { "DOES NOT match" })?;
    let result = json!({
        "structure": structure_summary(&s),
        "core_connected": core_nc.is_connected(),
        "self_centralizing_class": cone_class.map(|x| s.label(x).to_string()),
        "blowup": v,
    });
    Ok(Outcome {
        report: Report::new("core", spec, input.group(), result),
        text,
        failed: !v.matches,
    })
}

pub fn maxsets(spec: &str, opts: &Options) -> CmdResult {
    let input = Input::parse(spec)?;
    let s = structure_of(&input, default_kind(&input, opts), opts.p)?;
    let inventory = maximal_noncommuting_sets(&s, false, &opts.limits)?;
    let mut text = String::new();
    writeln!(text, "nc {}", inventory.nc)?;
    for (size, count) in &inventory.by_size {
        writeln!(text, "maximal sets of size {size}: {count}")?;
    }
    let mut result = json!({ "inventory": inventory });
    match nc_counts(&s, &opts.limits) {
        Ok(counts) => {
            writeln!(text, "nc_k {counts:?}")?;
            result["nc_counts"] = json!(counts);
        }
        Err(e) if e.is_cap() => result["nc_counts"] = json!(format!("skipped: {e}")),
        Err(e) => return Err(e.into()),
    }
    let mut failed = false;
    if let (Input::Group(g), Kind::Bnc) = (&input, default_kind(&input, opts)) {
        match rank_bound_report(g, &opts.limits) {
            Ok(r) => {
                for row in &r.rows {
                    writeln!(text, "rank bound s={}: {} <= b~{} = {}", row.size, row.bound, row.size - 1, row.betti)?;
                }
                failed |= !r.passed;
                result["rank_bound"] = json!(r.rows);
            }
            Err(e) if e.is_cap() => result["rank_bound"] = json!(format!("skipped: {e}")),
            Err(e) => return Err(e.into()),
        }
    }
    if opts.oracle {
        let o = clique_oracle(&s, &opts.limits)?;
        failed |= o["agree"] == json!(false);
        writeln!(text, "oracle {o}")?;
        result["oracle"] = o;
    }
    Ok(Outcome {
        report: Report::new("maxsets", spec, input.group(), result),
        text,
        failed,
    })
}

pub fn shelling(spec: &str, opts: &Options) -> CmdResult {
    let input = Input::parse(spec)?;
    let s = structure_of(&input, default_kind(&input, opts), opts.p)?;
    let mut text = String::new();
    let mut result = json!({ "transitive": s.is_transitive() });
    let mut failed = false;
    if s.is_transitive() {
        let cert = lexicographic_shelling(&s, opts.limits.exec)?;
        let wedge = tc_wedge_prediction(&s)?;
        writeln!(text, "lexicographic order of {} facets is a shelling: {}", cert.facets.len(), cert.valid)?;
        writeln!(text, "predicted wedge of {} spheres of dimension {}", wedge.spheres, wedge.dimension)?;
        failed |= !cert.valid;
        result["certificate"] = json!({
            "facets": cert.facets.len(), "valid": cert.valid, "first_failure": cert.first_failure,
            "restriction_sizes": cert.restrictions.iter().map(Vec::len).collect::<Vec<_>>(),
        });
        result["wedge"] = json!(wedge);
    } else {
        writeln!(text, "commuting is not transitive: no lexicographic shelling generated")?;
    }
    if let Input::Group(g) = &input {
        if !g.is_abelian() {
            let r = shell_inequalities(g, &opts.limits)?;
            writeln!(text, "hypothesis {:?}", r.hypothesis)?;
            writeln!(text, "h-vector inequalities {:?} hold: {}", r.shell_values, r.shell_holds)?;
            writeln!(text, "closed-form j=2 value {} >= 0: {}", r.cor_shell_lhs, r.cor_shell_holds)?;
            result["inequalities"] = json!(r);
        }
    }
    Ok(Outcome {
        report: Report::new("shelling", spec, input.group(), result),
        text,
        failed,
    })
}

fn render_checks(records: &[CheckRecord]) -> String {
    let mut text = String::new();
    for r in records {
        let status = match &r.status {
            CheckStatus::Pass => "PASS".to_string(),
            CheckStatus::Fail => "FAIL".to_string(),
            CheckStatus::Skipped(why) => format!("skip ({why})"),
        };
        let _ = writeln!(text, "{:<24} {status}", r.id.name());
    }
    text
}

fn subject_of(input: &Input) -> Result<Subject<'_>, UsageError> {
    match input {
        Input::Group(g) => Ok(Subject::Group(g)),
        Input::Structure(s) => Ok(Subject::Structure(s)),
        Input::Faces(_) => Err(UsageError("verify needs a group or structure spec".into())),
    }
}

pub fn verify(spec: Option<&str>, opts: &Options) -> CmdResult {
    if let Some(path) = &opts.replay {
        return replay(path, opts);
    }
    let spec = spec.ok_or_else(|| UsageError("verify needs a spec or --replay".into()))?;
    let input = Input::parse(spec)?;
    let records = run_battery(&subject_of(&input)?, &opts.checks, &opts.limits)?;
    let mut failed = records.iter().any(|r| r.status == CheckStatus::Fail);
    let mut text = render_checks(&records);
    let structures = match &input {
        Input::Group(_) => {
            let mut m = BTreeMap::new();
            for kind in [Kind::Nc, Kind::Bnc] {
                if let Ok(s) = structure_of(&input, kind, None) {
                    m.insert(kind.to_string(), structure_summary(&s));
                }
            }
            json!(m)
        }
        Input::Structure(s) => json!({ "structure": structure_summary(s) }),
        Input::Faces(_) => unreachable!("rejected by subject_of"),
    };
    let mut result = json!({ "structures": structures, "checks": records });
    if opts.oracle {
        let s = match &input {
            Input::Group(g) if g.is_abelian() => None,
            Input::Group(_) => Some(structure_of(&input, Kind::Bnc, None)?),
            Input::Structure(s) => Some(s.clone()),
            Input::Faces(_) => None,
        };
        if let Some(s) = s {
            let mut o = clique_oracle(&s, &opts.limits)?;
            let snf = snf_oracle(&nc_complex(&s), None, &opts.limits);
            o["snf"] = match snf {
                Ok(v) => v,
                Err(e) if e.is_cap() => json!(format!("skipped: {e}")),
                Err(e) => return Err(e.into()),
            };
            let bad = o["agree"] == json!(false) || o["snf"]["agree"] == json!(false);
            failed |= bad;
            writeln!(text, "oracle {}", if bad { "DISAGREES" } else { "agrees" })?;
            result["oracle"] = o;
        }
    }
    Ok(Outcome {
        report: Report::new("verify", spec, input.group(), result),
        text,
        failed,
    })
}

/// Re-runs the checks named in a saved verify report and compares payloads.
fn replay(path: &PathBuf, opts: &Options) -> CmdResult {
    let text = std::fs::read_to_string(path)?;
    let saved: Value = serde_json::from_str(&text)?;
    if saved["schema"] != json!(SCHEMA) || saved["command"] != json!("verify") {
        return Err(UsageError(format!("{} is not a {SCHEMA} verify report", path.display())).into());
    }
    let spec = saved["input"].as_str().ok_or_else(|| UsageError("report has no input".into()))?;
    let old = saved["result"]["checks"].as_array().cloned().unwrap_or_default();
    let ids: Vec<CheckId> = old
        .iter()
        .map(|c| c["id"].as_str().unwrap_or("").parse::<CheckId>())
        .collect::<Result<_, _>>()
        .map_err(UsageError)?;
    let input = Input::parse(spec)?;
    let fresh = run_battery(&subject_of(&input)?, &ids, &opts.limits)?;
    let mut differing = Vec::new();
    for (before, after) in old.iter().zip(&fresh) {
        let after = serde_json::to_value(after)?;
        let strip = |v: &Value| {
            let mut v = v.clone();
            v.as_object_mut().map(|o| o.remove("millis"));
            v
        };
        if strip(before) != strip(&after) {
            differing.push(after["id"].clone());
        }
    }
    let identical = differing.is_empty() && old.len() == fresh.len();
    let text = format!(
        "replayed {} checks from {}: {}\n",
        fresh.len(),
        path.display(),
        if identical { "identical payloads" } else { "payloads differ" }
    );
    Ok(Outcome {
        report: Report::new(
            "verify",
            spec,
            input.group(),
            json!({ "replayed": path.display().to_string(), "identical": identical, "differing": differing, "checks": fresh }),
        ),
        text,
        failed: !identical,
    })
}

/// Expands a survey range: `catalog`, `extended`, `order<=N` or a comma list.
pub fn survey_specs(range: &str) -> Vec<String> {
    let extended = || SMALL_CATALOG.iter().chain(EXTENDED_CATALOG).map(|s| s.to_string());
    match range.trim() {
        "catalog" => SMALL_CATALOG.iter().map(|s| s.to_string()).collect(),
        "extended" => extended().collect(),
        r => match r.strip_prefix("order<=").and_then(|n| n.trim().parse::<usize>().ok()) {
            Some(bound) => extended()
                .filter(|s| parse_group_spec(s).is_ok_and(|g| g.order() <= bound))
                .collect(),
            None => r.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
        },
    }
}

/// Nonabelian with no proper nontrivial normal subgroup: every nontrivial
/// conjugacy class generates the whole group.
fn is_nonabelian_simple(g: &FiniteGroup) -> bool {
    !g.is_abelian()
        && conjugacy_classes(g)
            .iter()
            .filter(|c| c[0] != 0)
            .all(|c| generate(g, c).order() == g.order())
}

pub fn survey(range: &str, opts: &Options) -> CmdResult {
    let specs = survey_specs(range);
    if specs.is_empty() {
        return Err(UsageError(format!("empty survey range {range:?}")).into());
    }
    let mut rows = Vec::new();
    let mut tally: BTreeMap<String, [usize; 3]> = BTreeMap::new();
    let mut text = String::from("group,order,check,status,reason\n");
    let mut failed = false;
    for spec in &specs {
        let g = parse_group_spec(spec)?;
        let mut records: Vec<(String, CheckStatus, Value)> = run_battery(&Subject::Group(&g), &opts.checks, &opts.limits)?
            .into_iter()
            .map(|r| (r.id.name().to_string(), r.status, r.payload))
            .collect();
        if is_nonabelian_simple(&g) {
            // evidence row: χ(NC(G)) of a nonabelian simple group is expected odd
            let parity = nc_euler_parity(&g, &opts.limits)?;
            let status = if parity.odd { CheckStatus::Pass } else { CheckStatus::Fail };
            records.push(("NC_EULER_PARITY".into(), status, json!(parity)));
        }
        for (check, status, payload) in records {
            let (name, reason, slot) = match &status {
                CheckStatus::Pass => ("pass", String::new(), 0),
                CheckStatus::Fail => ("fail", String::new(), 1),
                CheckStatus::Skipped(why) => ("skipped", why.clone(), 2),
            };
            failed |= slot == 1;
            tally.entry(check.clone()).or_default()[slot] += 1;
            writeln!(text, "{spec},{},{check},{name},{}", g.order(), reason.replace(',', ";"))?;
            rows.push(json!({ "group": spec, "order": g.order(), "check": check, "status": name, "reason": reason, "payload": payload }));
        }
    }
    let aggregate: BTreeMap<String, Value> = tally
        .into_iter()
        .map(|(k, [p, f, s])| (k, json!({ "pass": p, "fail": f, "skipped": s })))
        .collect();
    Ok(Outcome {
        report: Report::new("survey", range, None, json!({ "groups": specs, "rows": rows, "aggregate": aggregate })),
        text,
        failed,
    })
}
