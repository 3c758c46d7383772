use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::cliques::{self, graph_from_fn};
use super::{ComplexError, FVector, FaceList, FaceTable, Faces, SimplicialComplex};
use crate::structure::CommutingStructure;
use crate::Limits;

/// Which pairs of distinct points span an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Commuting pairs: the complex `C(S)`.
    Commuting,
    /// Non-commuting pairs: the complex `NC(S)`.
    NonCommuting,
    /// An explicitly given graph.
    Graph,
}

/// The clique complex of a graph, kept implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagComplex {
    labels: Vec<String>,
    adj: Vec<FixedBitSet>,
    mode: Mode,
}

/// Flag complex of the non-commuting graph of `s`.
pub fn nc_complex(s: &CommutingStructure) -> FlagComplex {
    FlagComplex::from_structure(s, Mode::NonCommuting)
}

/// Flag complex of the commuting graph of `s`.
pub fn c_complex(s: &CommutingStructure) -> FlagComplex {
    FlagComplex::from_structure(s, Mode::Commuting)
}

impl FlagComplex {
    pub fn from_structure(s: &CommutingStructure, mode: Mode) -> Self {
        let adj = match mode {
            Mode::NonCommuting => graph_from_fn(s.size(), |i, j| !s.related(i, j)),
            _ => graph_from_fn(s.size(), |i, j| s.related(i, j)),
        };
        let mode = if mode == Mode::Graph { Mode::Commuting } else { mode };
        FlagComplex {
            labels: s.labels().to_vec(),
            adj,
            mode,
        }
    }

    /// Clique complex of the graph with the given symmetric edge predicate.
    pub fn from_graph<F: Fn(usize, usize) -> bool>(labels: Vec<String>, edge: F) -> Self {
        let adj = graph_from_fn(labels.len(), edge);
        FlagComplex {
            labels,
            adj,
            mode: Mode::Graph,
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn adjacency(&self) -> &[FixedBitSet] {
        &self.adj
    }

    pub fn neighbours(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    /// Full subcomplex on `vertices` (in the given order).
    pub fn induced(&self, vertices: &[usize]) -> FlagComplex {
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        FlagComplex {
            adj: graph_from_fn(vertices.len(), |i, j| self.is_edge(vertices[i], vertices[j])),
            labels,
            mode: self.mode,
        }
    }

    /// Link of a face: the flag complex on the common neighbours.
    pub fn link_flag(&self, face: &[usize]) -> Result<FlagComplex, ComplexError> {
        let mut f = face.to_vec();
        f.sort_unstable();
        f.dedup();
        if !self.is_face(&f) {
            return Err(ComplexError::NotAFace(f));
        }
        let mut common = FixedBitSet::with_capacity(self.labels.len());
        common.insert_range(..);
        for &v in &f {
            common.intersect_with(&self.adj[v]);
        }
        let vertices: Vec<usize> = common.ones().collect();
        Ok(self.induced(&vertices))
    }

    /// Connected components of the 1-skeleton, each sorted, by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.labels.len();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut out = Vec::new();
        for s in 0..n {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for u in self.adj[v].ones() {
                    if !seen.put(u) {
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Nonempty and path connected.
    pub fn is_connected(&self) -> bool {
        !self.labels.is_empty() && self.components().len() == 1
    }

    /// Graph diameter of the 1-skeleton; `None` when disconnected or empty.
    pub fn diameter(&self) -> Option<usize> {
        let n = self.labels.len();
        if n == 0 {
            return None;
        }
        let mut diameter = 0;
        for s in 0..n {
            let mut reached = FixedBitSet::with_capacity(n);
            reached.insert(s);
            let mut frontier = reached.clone();
            let mut depth = 0;
            while reached.count_ones(..) < n {
                let mut next = FixedBitSet::with_capacity(n);
                for v in frontier.ones() {
                    next.union_with(&self.adj[v]);
                }
                next.difference_with(&reached);
                if next.is_clear() {
                    return None;
                }
                reached.union_with(&next);
                frontier = next;
                depth += 1;
            }
            diameter = diameter.max(depth);
        }
        Some(diameter)
    }

    /// Explicit facet list (the maximal cliques).
    pub fn to_face_list(&self, limits: &Limits) -> Result<FaceList, ComplexError> {
        Ok(FaceList::new(self.labels.clone(), self.facets(limits)?))
    }

    /// Faces whose least vertex is `root`, grouped by dimension; the
    /// concatenation of these chunks over all roots is the full
    /// lexicographic enumeration.
    pub fn faces_rooted_at(&self, root: usize, max_dim: usize) -> Vec<Faces> {
        cliques::cliques_rooted_at(&self.adj, root, max_dim + 1)
            .into_iter()
            .enumerate()
            .map(|(d, flat)| Faces::from_flat(d + 1, flat))
            .collect()
    }

    /// Unreduced Euler characteristic by signed clique counting with cone
    /// pruning; does not enumerate faces of cones.
    pub fn euler_characteristic_pruned(&self) -> i64 {
        let n = self.labels.len();
        let mut all = FixedBitSet::with_capacity(n);
        all.insert_range(..);
        1 - signed_clique_sum(&self.adj, all)
    }
}

/// `Σ (−1)^{|σ|}` over cliques `σ ⊆ p`, the empty clique included.
fn signed_clique_sum(adj: &[FixedBitSet], mut p: FixedBitSet) -> i64 {
    let mut acc = 0i64;
    loop {
        let size = p.count_ones(..);
        if size == 0 {
            return acc + 1;
        }
        // a vertex adjacent to everything else in p makes p a cone: sum 0
        let mut pick = usize::MAX;
        let mut low = usize::MAX;
        for v in p.ones() {
            let deg = p.intersection_count(&adj[v]);
            if deg + 1 == size {
                return acc;
            }
            if deg < low {
                low = deg;
                pick = v;
            }
        }
        // cliques through `pick` contribute minus the sum over its link
        let mut through = p.clone();
        through.intersect_with(&adj[pick]);
        acc -= signed_clique_sum(adj, through);
        p.set(pick, false);
    }
}

impl SimplicialComplex for FlagComplex {
    fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    fn vertex_label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    fn is_face(&self, face: &[usize]) -> bool {
        face.iter().all(|&v| v < self.labels.len())
            && face
                .iter()
                .enumerate()
                .all(|(i, &u)| face[..i].iter().all(|&v| u != v && self.is_edge(u, v)))
    }

    fn face_table(&self, max_dim: Option<usize>, limits: &Limits) -> Result<FaceTable, ComplexError> {
        let lists = cliques::list_cliques(&self.adj, max_dim.map(|d| d + 1), limits.face_cap, limits.exec)?;
        Ok(FaceTable {
            empty_face: true,
            dims: lists
                .into_iter()
                .enumerate()
                .map(|(d, flat)| Faces::from_flat(d + 1, flat))
                .collect(),
        })
    }

    fn f_vector(&self, max_dim: Option<usize>, limits: &Limits) -> Result<FVector, ComplexError> {
        let counts = cliques::count_cliques(&self.adj, max_dim.map(|d| d + 1), limits.face_cap, limits.exec)?;
        Ok(FVector::new(true, counts))
    }

    fn facets(&self, limits: &Limits) -> Result<Vec<Vec<usize>>, ComplexError> {
        if self.labels.is_empty() {
            return Ok(vec![Vec::new()]);
        }
        let found = cliques::maximal_cliques(&self.adj, true, limits.face_cap, limits.exec)?;
        Ok(found.cliques.unwrap_or_default())
    }

    fn cone_apex(&self) -> Option<usize> {
        let n = self.labels.len();
        (0..n).find(|&v| self.adj[v].count_ones(..) + 1 == n)
    }
}
