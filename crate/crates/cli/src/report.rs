use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use nc_complex::group::{center, conjugacy_classes, FiniteGroup};
use nc_complex::structure::{group_structure, CommutingStructure, GroupScope};

pub const SCHEMA: &str = "nc-complex-report/1";

/// Top-level JSON document written by every subcommand.
#[derive(Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub command: &'static str,
    pub input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSummary>,
    pub result: Value,
}

impl Report {
    pub fn new(command: &'static str, input: &str, group: Option<&FiniteGroup>, result: Value) -> Self {
        Report {
            schema: SCHEMA,
            tool_version: env!("CARGO_PKG_VERSION"),
            command,
            input: input.to_string(),
            group: group.map(GroupSummary::of),
            result,
        }
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(self).expect("report is serializable");
        std::fs::write(path, text + "\n")
    }
}

#[derive(Serialize)]
pub struct GroupSummary {
    pub order: usize,
    pub center: usize,
    pub conjugacy_classes: usize,
    pub abelian: bool,
}

impl GroupSummary {
    pub fn of(g: &FiniteGroup) -> Self {
        GroupSummary {
            order: g.order(),
            center: center(g).order(),
            conjugacy_classes: conjugacy_classes(g).len(),
            abelian: g.is_abelian(),
        }
    }
}

pub fn structure_summary(s: &CommutingStructure) -> Value {
    let core = s.core();
    json!({
        "points": s.size(),
        "commuting_pairs": s.related_pairs(),
        "transitive": s.is_transitive(),
        "centralizer_classes": core.sizes,
        "provenance": s.provenance(),
    })
}

/// Centralizer class sizes of the noncentral elements, largest first; empty
/// when abelian.
pub fn noncentral_class_sizes(g: &FiniteGroup) -> Vec<usize> {
    let mut sizes = group_structure(g, GroupScope::Noncentral)
        .map(|s| s.core().sizes)
        .unwrap_or_default();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}
