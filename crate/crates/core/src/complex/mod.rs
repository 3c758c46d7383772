//! Simplicial complexes: flag complexes of commuting structures, explicit
//! face lists, order complexes of subgroup posets, links, joins and face
//! enumeration.
//!
//! Faces are sorted vertex lists. Every complex here except the void one
//! contains the empty face, so the complex with no vertices is `{∅}`, the
//! (−1)-sphere.

pub mod cliques;
mod facelist;
mod flag;

use serde::Serialize;

use crate::Limits;

pub use facelist::{join, order_complex, parse_face_list, read_face_list, write_face_list, FaceList};
pub use flag::{c_complex, nc_complex, FlagComplex, Mode};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("face enumeration exceeded the cap of {cap} faces (partial counts {partial:?})")]
    FaceCapExceeded { cap: u64, partial: Vec<u64> },
    #[error("{0:?} is not a face")]
    NotAFace(Vec<usize>),
    #[error("vertex {vertex} out of range for {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("face list line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("{path}: {reason}")]
    Io { path: String, reason: String },
}

impl ComplexError {
    pub fn is_cap(&self) -> bool {
        matches!(self, ComplexError::FaceCapExceeded { .. })
    }
}

impl From<cliques::CapHit> for ComplexError {
    fn from(hit: cliques::CapHit) -> Self {
        ComplexError::FaceCapExceeded {
            cap: hit.cap,
            partial: hit.partial,
        }
    }
}

/// Faces of a single dimension stored row-major, in lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Faces {
    width: usize,
    data: Vec<u32>,
}

impl Faces {
    pub(crate) fn from_flat(width: usize, data: Vec<u32>) -> Self {
        debug_assert!(width > 0 && data.len().is_multiple_of(width));
        Faces { width, data }
    }

    /// Number of vertices per face (dimension + 1).
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        if self.width == 0 {
            0
        } else {
            self.data.len() / self.width
        }
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> &[u32] {
        &self.data[i * self.width..(i + 1) * self.width]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, u32> {
        self.data.chunks_exact(self.width.max(1))
    }

    /// Position of `face` in the lexicographic order, if present.
    pub fn index_of(&self, face: &[u32]) -> Option<usize> {
        if face.len() != self.width {
            return None;
        }
        let (mut lo, mut hi) = (0usize, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(face) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// All faces of a complex up to some dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceTable {
    /// Whether the empty face is present (false only for the void complex).
    pub empty_face: bool,
    /// `dims[d]` holds the `d`-dimensional faces.
    pub dims: Vec<Faces>,
}

impl FaceTable {
    pub fn f_vector(&self) -> FVector {
        FVector::new(self.empty_face, self.dims.iter().map(|f| f.len() as u64).collect())
    }

    pub fn faces(&self, dim: usize) -> Option<&Faces> {
        self.dims.get(dim)
    }
}

/// Face counts `f_0, …, f_d`; the empty face is tracked separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FVector {
    pub empty_face: bool,
    pub counts: Vec<u64>,
}

impl FVector {
    /// Trailing zero counts are dropped.
    pub fn new(empty_face: bool, mut counts: Vec<u64>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        FVector { empty_face, counts }
    }

    /// Dimension, −1 for `{∅}`; `None` for the void complex.
    pub fn dimension(&self) -> Option<isize> {
        if self.counts.is_empty() {
            self.empty_face.then_some(-1)
        } else {
            Some(self.counts.len() as isize - 1)
        }
    }

    /// Number of nonempty faces.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Unreduced Euler characteristic `Σ (−1)^i f_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// `χ − 1` when the empty face is present, otherwise `χ`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.euler_characteristic() - self.empty_face as i64
    }

    /// Generating polynomial: coefficient `k` counts faces with `k` vertices.
    fn polynomial(&self) -> Vec<u64> {
        let mut p = vec![self.empty_face as u64];
        p.extend_from_slice(&self.counts);
        p
    }

    /// f-vector of the simplicial join.
    pub fn join(&self, other: &FVector) -> FVector {
        let (a, b) = (self.polynomial(), other.polynomial());
        let mut c = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        FVector::new(c[0] == 1, c[1..].to_vec())
    }

    /// The f-vector of `{∅}`, the unit for joins.
    pub fn empty_complex() -> FVector {
        FVector::new(true, Vec::new())
    }
}

/// f-vector of the join of all `parts`.
pub fn join_f_vector<'a, I: IntoIterator<Item = &'a FVector>>(parts: I) -> FVector {
    parts
        .into_iter()
        .fold(FVector::empty_complex(), |acc, f| acc.join(f))
}

/// Operations shared by implicit (flag) and explicit (face-list) complexes.
pub trait SimplicialComplex: Sync {
    fn vertex_count(&self) -> usize;

    fn vertex_label(&self, v: usize) -> &str;

    /// False only for the void complex (no faces at all).
    fn has_empty_face(&self) -> bool {
        true
    }

    fn is_face(&self, face: &[usize]) -> bool;

    /// Faces of dimension `0..=max_dim` (all faces when `None`).
    fn face_table(&self, max_dim: Option<usize>, limits: &Limits) -> Result<FaceTable, ComplexError>;

    /// Face counts up to `max_dim`, without keeping the faces when avoidable.
    fn f_vector(&self, max_dim: Option<usize>, limits: &Limits) -> Result<FVector, ComplexError> {
        Ok(self.face_table(max_dim, limits)?.f_vector())
    }

    /// Maximal faces, sorted, in lexicographic order.
    fn facets(&self, limits: &Limits) -> Result<Vec<Vec<usize>>, ComplexError>;

    /// A vertex lying in every facet, lowest index first.
    fn cone_apex(&self) -> Option<usize>;

    fn labels(&self) -> Vec<String> {
        (0..self.vertex_count()).map(|v| self.vertex_label(v).to_string()).collect()
    }
}

/// Unreduced Euler characteristic from a full face count.
pub fn euler_characteristic<X: SimplicialComplex + ?Sized>(x: &X, limits: &Limits) -> Result<i64, ComplexError> {
    Ok(x.f_vector(None, limits)?.euler_characteristic())
}

/// Link of `face` as an explicit complex on the parent's labels.
pub fn link<X: SimplicialComplex + ?Sized>(
    x: &X,
    face: &[usize],
    limits: &Limits,
) -> Result<FaceList, ComplexError> {
    let mut face = face.to_vec();
    face.sort_unstable();
    face.dedup();
    if !x.is_face(&face) {
        return Err(ComplexError::NotAFace(face));
    }
    let facets: Vec<Vec<usize>> = x
        .facets(limits)?
        .into_iter()
        .filter(|f| face.iter().all(|v| f.binary_search(v).is_ok()))
        .map(|f| f.into_iter().filter(|v| face.binary_search(v).is_err()).collect())
        .collect();
    Ok(FaceList::new(x.labels(), facets))
}
