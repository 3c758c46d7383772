//! Exact computations on commuting and non-commuting complexes of finite
//! groups and of general commuting structures.
//!
//! The crate is organised bottom-up:
//!
//! - [`group`]: finite groups as multiplication tables, permutation closure,
//!   semidirect products, the catalog, and subgroup queries.
//! - [`structure`]: commuting structures (a set with a reflexive symmetric
//!   relation), duals, components and the centralizer-class core.
//! - [`complex`]: flag complexes of commuting structures, explicit face
//!   lists, order complexes, links, joins and face enumeration.
//! - [`homology`]: reduced simplicial homology over the integers, rationals
//!   and prime fields via sparse Smith normal form.
//! - [`decomposition`]: wedge, join and duality predictors and verifiers.
//! - [`maxsets`]: maximal non-commuting sets, rank bounds, shellings.
//! - [`battery`]: the named verification checks run by the CLI.
//!
//! Hot loops (face counting, clique enumeration, boundary-rank jobs) run on
//! rayon when the `parallel` feature is enabled and fall back to plain
//! iteration otherwise; results are identical either way.

pub mod battery;
pub mod complex;
pub mod decomposition;
pub mod group;
pub mod homology;
pub mod maxsets;
pub mod oracle;
pub mod par;
pub mod structure;

mod error;

pub use error::{Error, Result};
pub use par::Exec;

/// Resource limits shared by the enumeration-heavy operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of faces any single enumeration may produce.
    pub face_cap: u64,
    /// Maximum number of maximal cliques kept by a clique enumeration.
    pub clique_cap: u64,
    pub exec: Exec,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            face_cap: 5_000_000,
            clique_cap: 10_000_000,
            exec: Exec::default(),
        }
    }
}

impl Limits {
    pub fn with_face_cap(mut self, cap: u64) -> Self {
        self.face_cap = cap;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }
}
