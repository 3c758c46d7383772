use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::path::Path;

use super::cliques::{graph_from_fn, maximal_cliques};
use super::{ComplexError, FaceTable, Faces, SimplicialComplex};
use crate::group::SubgroupPoset;
use crate::{Exec, Limits};

/// A complex given by its facets.
///
/// Normalized on construction: facets are sorted and lexicographically
/// ordered, none contains another, and every vertex lies in some facet
/// (unused vertices are dropped). `facets == [[]]` is `{∅}`; no facets at
/// all is the void complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceList {
    labels: Vec<String>,
    facets: Vec<Vec<usize>>,
}

impl FaceList {
    pub fn new(labels: Vec<String>, facets: Vec<Vec<usize>>) -> Self {
        let mut facets: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        facets.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        facets.dedup();
        let mut kept: Vec<Vec<usize>> = Vec::with_capacity(facets.len());
        for f in facets {
            if !kept.iter().any(|k| is_subset(&f, k)) {
                kept.push(f);
            }
        }
        // compact the vertex set, keeping label order
        let mut used = vec![false; labels.len()];
        for f in &kept {
            for &v in f {
                used[v] = true;
            }
        }
        let mut remap = vec![usize::MAX; labels.len()];
        let mut new_labels = Vec::new();
        for (v, label) in labels.into_iter().enumerate() {
            if used[v] {
                remap[v] = new_labels.len();
                new_labels.push(label);
            }
        }
        for f in kept.iter_mut() {
            for v in f.iter_mut() {
                *v = remap[*v];
            }
        }
        kept.sort_unstable();
        FaceList {
            labels: new_labels,
            facets: kept,
        }
    }

    /// The complex `{∅}` (the (−1)-sphere).
    pub fn empty_complex() -> Self {
        FaceList {
            labels: Vec::new(),
            facets: vec![Vec::new()],
        }
    }

    /// The complex with no faces at all.
    pub fn void() -> Self {
        FaceList {
            labels: Vec::new(),
            facets: Vec::new(),
        }
    }

    /// The full simplex on the given vertices.
    pub fn simplex(labels: Vec<String>) -> Self {
        let all = (0..labels.len()).collect();
        FaceList::new(labels, vec![all])
    }

    /// `n` isolated points.
    pub fn discrete(labels: Vec<String>) -> Self {
        let facets = (0..labels.len()).map(|v| vec![v]).collect();
        FaceList::new(labels, facets)
    }

    pub fn facets_ref(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn is_empty_complex(&self) -> bool {
        self.facets.len() == 1 && self.facets[0].is_empty()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// All facets have the same size.
    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Dimension, `None` for the void complex.
    pub fn dimension(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

impl SimplicialComplex for FaceList {
    fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    fn vertex_label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    fn has_empty_face(&self) -> bool {
        !self.facets.is_empty()
    }

    fn is_face(&self, face: &[usize]) -> bool {
        let mut f = face.to_vec();
        f.sort_unstable();
        f.dedup();
        f.len() == face.len() && self.facets.iter().any(|facet| is_subset(&f, facet))
    }

    fn face_table(&self, max_dim: Option<usize>, limits: &Limits) -> Result<FaceTable, ComplexError> {
        let top = self.facets.iter().map(Vec::len).max().unwrap_or(0);
        let top = max_dim.map_or(top, |d| top.min(d + 1));
        let mut dims = Vec::with_capacity(top);
        let mut total = 0u64;
        let mut partial = Vec::new();
        for size in 1..=top {
            let mut seen: HashSet<Vec<u32>> = HashSet::new();
            for facet in self.facets.iter().filter(|f| f.len() >= size) {
                for_each_subset(facet, size, &mut |s| {
                    seen.insert(s.iter().map(|&v| v as u32).collect());
                });
                if total + seen.len() as u64 > limits.face_cap {
                    partial.push(seen.len() as u64);
                    return Err(ComplexError::FaceCapExceeded {
                        cap: limits.face_cap,
                        partial,
                    });
                }
            }
            let mut faces: Vec<Vec<u32>> = seen.into_iter().collect();
            faces.sort_unstable();
            total += faces.len() as u64;
            partial.push(faces.len() as u64);
            dims.push(Faces::from_flat(size, faces.concat()));
        }
        Ok(FaceTable {
            empty_face: self.has_empty_face(),
            dims,
        })
    }

    fn facets(&self, _limits: &Limits) -> Result<Vec<Vec<usize>>, ComplexError> {
        Ok(self.facets.clone())
    }

    fn cone_apex(&self) -> Option<usize> {
        let first = self.facets.first()?;
        first
            .iter()
            .copied()
            .find(|v| self.facets.iter().all(|f| f.binary_search(v).is_ok()))
    }
}

/// Calls `f` on every `k`-subset of the sorted slice, in lexicographic order.
fn for_each_subset<F: FnMut(&[usize])>(items: &[usize], k: usize, f: &mut F) {
    fn rec<F: FnMut(&[usize])>(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut F) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let need = k - cur.len();
        for i in start..=items.len() - need {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    if k <= items.len() {
        rec(items, k, 0, &mut Vec::with_capacity(k), f);
    }
}

/// Simplicial join; vertex labels are prefixed by the factor index when two
/// factors share a label.
pub fn join(factors: &[FaceList]) -> FaceList {
    let mut all_labels: Vec<&str> = factors.iter().flat_map(|f| f.labels.iter().map(String::as_str)).collect();
    all_labels.sort_unstable();
    let clash = all_labels.windows(2).any(|w| w[0] == w[1]);
    let mut labels = Vec::new();
    let mut facets: Vec<Vec<usize>> = vec![Vec::new()];
    for (i, factor) in factors.iter().enumerate() {
        let offset = labels.len();
        labels.extend(factor.labels.iter().map(|l| {
            if clash {
                format!("{i}.{l}")
            } else {
                l.clone()
            }
        }));
        let mut next = Vec::with_capacity(facets.len() * factor.facets.len());
        for f in &facets {
            for g in &factor.facets {
                let mut h = f.clone();
                h.extend(g.iter().map(|v| v + offset));
                next.push(h);
            }
        }
        facets = next;
    }
    FaceList::new(labels, facets)
}

/// Order complex of a subgroup poset: facets are the maximal chains.
pub fn order_complex(poset: &SubgroupPoset) -> FaceList {
    let n = poset.len();
    let mut comparable = vec![vec![false; n]; n];
    for &(i, j) in &poset.relations {
        comparable[i][j] = true;
        comparable[j][i] = true;
    }
    let adj = graph_from_fn(n, |i, j| comparable[i][j]);
    let chains = maximal_cliques(&adj, true, u64::MAX, Exec::Sequential)
        .expect("uncapped")
        .cliques
        .unwrap_or_default();
    let labels = poset
        .nodes
        .iter()
        .map(|h| {
            let members: Vec<String> = h.members().iter().map(usize::to_string).collect();
            format!("<{}>", members.join(","))
        })
        .collect();
    if n == 0 {
        return FaceList::empty_complex();
    }
    FaceList::new(labels, chains)
}

/// Parses the face-list format: one facet per line, whitespace-separated
/// vertex labels, `#` starts a comment. A line holding only `{}` is the
/// empty facet. Vertices are numbered by first appearance.
pub fn parse_face_list(text: &str) -> Result<FaceList, ComplexError> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut facets = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line == "{}" {
            facets.push(Vec::new());
            continue;
        }
        let mut facet = Vec::new();
        for token in line.split_whitespace() {
            if token == "{}" {
                return Err(ComplexError::Parse {
                    line: lineno + 1,
                    reason: "{} must stand alone".into(),
                });
            }
            let v = *index.entry(token.to_string()).or_insert_with(|| {
                labels.push(token.to_string());
                labels.len() - 1
            });
            facet.push(v);
        }
        facets.push(facet);
    }
    Ok(FaceList::new(labels, facets))
}

pub fn read_face_list(path: &Path) -> Result<FaceList, ComplexError> {
    let text = std::fs::read_to_string(path).map_err(|e| ComplexError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    parse_face_list(&text)
}

/// Writes the face-list format; labels containing whitespace or `#` are
/// not representable and have those characters replaced by `_`.
pub fn write_face_list(x: &FaceList) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# {} vertices, {} facets",
        x.vertex_count(),
        x.facets.len()
    );
    for f in &x.facets {
        if f.is_empty() {
            out.push_str("{}\n");
            continue;
        }
        let line: Vec<String> = f
            .iter()
            .map(|&v| {
                x.labels[v]
                    .chars()
                    .map(|c| if c.is_whitespace() || c == '#' { '_' } else { c })
                    .collect()
            })
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{join_f_vector, link};
    use crate::group::{alternating, ap_poset};

    fn names(prefix: &str, n: usize) -> Vec<String> {
        (0..n).map(|i| format!("{prefix}{i}")).collect()
    }

    #[test]
    fn normalization() {
        let x = FaceList::new(names("v", 5), vec![vec![2, 0], vec![0], vec![0, 2, 2], vec![3]]);
        assert_eq!(x.facets_ref(), &[vec![0, 1], vec![2]]);
        assert_eq!(x.labels(), vec!["v0", "v2", "v3"]);
        assert!(!x.is_pure());
        assert_eq!(FaceList::new(vec![], vec![vec![]]), FaceList::empty_complex());
    }

    #[test]
    fn joins() {
        let s0 = FaceList::discrete(names("a", 2));
        let circle = join(&[s0.clone(), s0.clone()]);
        let limits = Limits::default();
        assert_eq!(circle.f_vector(None, &limits).unwrap().counts, vec![4, 4]);
        assert!(circle.is_pure());
        let three = FaceList::discrete(names("p", 3));
        let nc2 = join(&vec![three; 5]);
        let f = nc2.f_vector(None, &limits).unwrap();
        assert_eq!(f.counts, vec![15, 90, 270, 405, 243]);
        assert_eq!(f.euler_characteristic(), 33);
        assert_eq!(join(&[FaceList::empty_complex(), s0.clone()]), s0);
    }

    #[test]
    fn join_f_vectors_match_enumeration() {
        let a = FaceList::new(names("a", 4), vec![vec![0, 1, 2], vec![2, 3], vec![1, 3]]);
        let b = FaceList::new(names("b", 3), vec![vec![0, 1], vec![2]]);
        let limits = Limits::default();
        let direct = join(&[a.clone(), b.clone()]).f_vector(None, &limits).unwrap();
        let fa = a.f_vector(None, &limits).unwrap();
        let fb = b.f_vector(None, &limits).unwrap();
        assert_eq!(direct, join_f_vector([&fa, &fb]));
    }

    #[test]
    fn links_and_apex() {
        let limits = Limits::default();
        let x = FaceList::new(names("v", 4), vec![vec![0, 1, 2], vec![0, 3]]);
        assert_eq!(x.cone_apex(), Some(0));
        let lk = link(&x, &[0], &limits).unwrap();
        assert_eq!(lk.facets_ref().len(), 2);
        assert!(link(&x, &[0, 1, 2], &limits).unwrap().is_empty_complex());
        assert!(matches!(link(&x, &[1, 3], &limits), Err(ComplexError::NotAFace(_))));
        let cycle = FaceList::new(names("v", 4), vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]);
        assert_eq!(cycle.cone_apex(), None);
    }

    #[test]
    fn order_complexes() {
        let limits = Limits::default();
        let a4 = order_complex(&ap_poset(&alternating(4).unwrap(), 2).unwrap());
        assert_eq!(a4.f_vector(None, &limits).unwrap().counts, vec![4, 3]);
        assert!(a4.cone_apex().is_some());
        let a5 = order_complex(&ap_poset(&alternating(5).unwrap(), 2).unwrap());
        assert_eq!(a5.f_vector(None, &limits).unwrap().counts, vec![20, 15]);
        let point = order_complex(&ap_poset(&crate::group::symmetric(3).unwrap(), 3).unwrap());
        assert_eq!(point.facets_ref(), &[vec![0]]);
    }

    #[test]
    fn text_format_round_trip() {
        let x = FaceList::new(names("v", 4), vec![vec![0, 1, 2], vec![0, 3]]);
        let text = write_face_list(&x);
        assert_eq!(parse_face_list(&text).unwrap(), x);
        let e = parse_face_list("# nothing but\n{}\n").unwrap();
        assert!(e.is_empty_complex());
        assert!(parse_face_list("").unwrap().is_void());
        assert!(parse_face_list("a {}\n").is_err());
        let with_comments = parse_face_list("a b # edge\n\nb c\n").unwrap();
        assert_eq!(with_comments.facets_ref(), &[vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn face_list_cap() {
        let big = FaceList::simplex(names("v", 12));
        assert!(matches!(
            big.face_table(None, &Limits::default().with_face_cap(100)),
            Err(ComplexError::FaceCapExceeded { .. })
        ));
    }
}
