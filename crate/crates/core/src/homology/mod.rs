//! Reduced simplicial homology over `Z`, `Q` and `F_p`.
//!
//! Degrees start at −1: the augmented chain complex has `C_{−1} = Z`
//! spanned by the empty face, so `{∅}` has `H̃_{−1} = Z` and every nonempty
//! complex has `H̃_{−1} = 0`.

mod snf;
mod sparse;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde::{Serialize, Serializer};

use crate::complex::{ComplexError, FaceTable, SimplicialComplex};
use crate::par;
use crate::Limits;

pub use snf::{rank_mod_p, rank_rational, smith_normal_form, SmithForm};
pub use sparse::SparseIntMatrix;

pub(crate) use snf::normalize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("boundary maps do not compose to zero in degree {degree}")]
    BoundarySquareNonzero { degree: usize },
    #[error("Euler characteristic mismatch: chains give {chains}, homology gives {homology}")]
    EulerMismatch { chains: i64, homology: i64 },
    #[error("invalid coefficients {0:?}: expected z, q or f<prime>")]
    InvalidCoefficients(String),
    #[error("homology was only computed through degree {computed}, {requested} requested")]
    DegreeNotComputed { computed: isize, requested: isize },
}

impl HomologyError {
    pub fn is_cap(&self) -> bool {
        matches!(self, HomologyError::Complex(e) if e.is_cap())
    }
}

/// Coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    Rationals,
    Prime(u64),
}

impl Coefficients {
    pub fn is_field(self) -> bool {
        !matches!(self, Coefficients::Integers)
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Rationals => write!(f, "Q"),
            Coefficients::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = HomologyError;

    /// Accepts `z`, `q` and `f<p>` (case-insensitive) with `p` prime.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "z" => Ok(Coefficients::Integers),
            "q" => Ok(Coefficients::Rationals),
            other => other
                .strip_prefix('f')
                .and_then(|p| p.parse::<u64>().ok())
                .filter(|&p| crate::group::is_prime(p) && p < 1 << 32)
                .map(Coefficients::Prime)
                .ok_or_else(|| HomologyError::InvalidCoefficients(s.to_string())),
        }
    }
}

impl Serialize for Coefficients {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn torsion_as_strings<S: Serializer>(t: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(t.iter().map(|d| d.to_string()))
}

/// Reduced homology in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub degree: isize,
    /// Free rank (dimension over a field).
    pub betti: u64,
    /// Elementary divisors greater than 1 (integer coefficients only).
    #[serde(serialize_with = "torsion_as_strings")]
    pub torsion: Vec<BigUint>,
}

/// Reduced homology from degree −1 up to `max_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub coefficients: Coefficients,
    pub vertex_count: usize,
    /// Ranks of `C_{−1}, C_0, …` as used by the computation.
    pub chain_ranks: Vec<u64>,
    /// True when every nonempty face was included, so the profile is the
    /// full homology and not a truncation.
    pub complete: bool,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyProfile {
    /// Highest degree computed.
    pub fn max_degree(&self) -> isize {
        self.degrees.len() as isize - 2
    }

    fn slot(&self, degree: isize) -> Option<&DegreeHomology> {
        if degree < -1 {
            return None;
        }
        self.degrees.get((degree + 1) as usize)
    }

    /// Reduced Betti number; 0 outside the computed range when the profile
    /// is complete.
    pub fn betti(&self, degree: isize) -> u64 {
        self.slot(degree).map_or(0, |d| d.betti)
    }

    pub fn torsion(&self, degree: isize) -> &[BigUint] {
        self.slot(degree).map_or(&[], |d| &d.torsion)
    }

    /// `(degree, b̃)` for the degrees with nonzero Betti number.
    pub fn nonzero_betti(&self) -> Vec<(isize, u64)> {
        self.degrees
            .iter()
            .filter(|d| d.betti > 0)
            .map(|d| (d.degree, d.betti))
            .collect()
    }

    pub fn has_torsion(&self) -> bool {
        self.degrees.iter().any(|d| !d.torsion.is_empty())
    }

    /// No reduced homology at all in the computed range.
    pub fn is_acyclic(&self) -> bool {
        self.degrees.iter().all(|d| d.betti == 0 && d.torsion.is_empty())
    }

    /// `Σ (−1)^i b̃_i` over the computed degrees.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|d| if d.degree.rem_euclid(2) == 0 { d.betti as i64 } else { -(d.betti as i64) })
            .sum()
    }

    /// Betti numbers from degree −1, trailing zeros removed.
    pub fn betti_vector(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.degrees.iter().map(|d| d.betti).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// Same Betti numbers and torsion in every degree (missing degrees
    /// count as zero).
    pub fn same_homology(&self, other: &HomologyProfile) -> bool {
        let top = self.max_degree().max(other.max_degree());
        (-1..=top).all(|d| self.betti(d) == other.betti(d) && self.torsion(d) == other.torsion(d))
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree  betti  torsion   (coefficients {})", self.coefficients)?;
        for d in &self.degrees {
            let torsion: Vec<String> = d.torsion.iter().map(|t| format!("Z/{t}")).collect();
            writeln!(f, "{:>6}  {:>5}  {}", d.degree, d.betti, torsion.join(" + "))?;
        }
        Ok(())
    }
}

/// Boundary maps `∂_0, …, ∂_{top}` over the lexicographic face bases;
/// `∂_0` is the augmentation onto the empty face.
pub fn boundary_matrices_from_table(table: &FaceTable) -> Vec<SparseIntMatrix> {
    let mut out = Vec::with_capacity(table.dims.len());
    for (d, faces) in table.dims.iter().enumerate() {
        let below = if d == 0 {
            table.empty_face as usize
        } else {
            table.dims[d - 1].len()
        };
        let mut m = SparseIntMatrix::zeros(below, 0);
        let mut scratch: Vec<u32> = Vec::with_capacity(d + 1);
        for face in faces.iter() {
            if d == 0 {
                m.push_column(if below == 1 { vec![(0, 1)] } else { Vec::new() });
                continue;
            }
            let mut column: Vec<(u32, i64)> = Vec::with_capacity(d + 1);
            for k in 0..=d {
                scratch.clear();
                scratch.extend(face.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &v)| v));
                let row = table.dims[d - 1].index_of(&scratch).expect("faces are closed under subsets");
                column.push((row as u32, if k % 2 == 0 { 1 } else { -1 }));
            }
            column.sort_unstable_by_key(|e| e.0);
            m.push_column(column);
        }
        out.push(m);
    }
    out
}

/// Number of columns checked per boundary map above degree 3.
const BOUNDARY_SAMPLE: usize = 256;

fn check_boundaries(maps: &[SparseIntMatrix]) -> Result<(), HomologyError> {
    for d in 1..maps.len() {
        let cols = maps[d].cols();
        let ok = if d <= 3 || cols <= BOUNDARY_SAMPLE {
            maps[d - 1].product_vanishes_on(&maps[d], None)
        } else {
            let step = cols / BOUNDARY_SAMPLE;
            let sample: Vec<usize> = (0..BOUNDARY_SAMPLE).map(|i| i * step).collect();
            maps[d - 1].product_vanishes_on(&maps[d], Some(&sample))
        };
        if !ok {
            return Err(HomologyError::BoundarySquareNonzero { degree: d });
        }
    }
    Ok(())
}

/// Boundary maps of `x` from `∂_0` through `∂_{up_to}`, checked for `∂² = 0`.
pub fn boundary_matrices<X: SimplicialComplex + ?Sized>(
    x: &X,
    up_to: Option<usize>,
    limits: &Limits,
) -> Result<Vec<SparseIntMatrix>, HomologyError> {
    let table = x.face_table(up_to, limits)?;
    let maps = boundary_matrices_from_table(&table);
    check_boundaries(&maps)?;
    Ok(maps)
}

struct RankJob {
    rank: usize,
    torsion: Vec<BigInt>,
}

fn rank_job(m: &SparseIntMatrix, coeff: Coefficients) -> RankJob {
    match coeff {
        Coefficients::Integers => {
            let s = smith_normal_form(m);
            RankJob {
                rank: s.rank,
                torsion: s.torsion,
            }
        }
        Coefficients::Rationals => RankJob {
            rank: rank_rational(m),
            torsion: Vec::new(),
        },
        Coefficients::Prime(p) => RankJob {
            rank: rank_mod_p(m, p),
            torsion: Vec::new(),
        },
    }
}

/// Reduced homology of `x` in degrees `−1..=up_to` (all degrees if `None`).
pub fn homology_profile<X: SimplicialComplex + ?Sized>(
    x: &X,
    coeff: Coefficients,
    up_to: Option<usize>,
    limits: &Limits,
) -> Result<HomologyProfile, HomologyError> {
    // H̃_d needs faces one dimension higher
    let table = x.face_table(up_to.map(|d| d + 1), limits)?;
    let top_face_dim = table.dims.len() as isize - 1;
    let complete = match up_to {
        None => true,
        Some(d) => (d as isize + 1) > top_face_dim,
    };
    let maps = boundary_matrices_from_table(&table);
    check_boundaries(&maps)?;
    let jobs: Vec<RankJob> = par::map_slice(limits.exec, &maps, |m| rank_job(m, coeff));

    let mut chain_ranks = vec![table.empty_face as u64];
    chain_ranks.extend(table.dims.iter().map(|f| f.len() as u64));
    // rank of ∂_i for i = 0..; maps[i] is ∂_i : C_i → C_{i−1}
    let rank_of = |i: isize| -> u64 {
        if i < 0 {
            0
        } else {
            jobs.get(i as usize).map_or(0, |j| j.rank as u64)
        }
    };
    let top = match up_to {
        Some(d) => d as isize,
        None => top_face_dim,
    };
    let mut degrees = Vec::new();
    for d in -1..=top {
        let c = chain_ranks.get((d + 1) as usize).copied().unwrap_or(0);
        let betti = c - rank_of(d) - rank_of(d + 1);
        let torsion = if coeff == Coefficients::Integers {
            jobs.get((d + 1) as usize)
                .map(|j| j.torsion.iter().map(|t| t.magnitude().clone()).collect())
                .unwrap_or_default()
        } else {
            Vec::new()
        };
        degrees.push(DegreeHomology { degree: d, betti, torsion });
    }
    let profile = HomologyProfile {
        coefficients: coeff,
        vertex_count: x.vertex_count(),
        chain_ranks,
        complete,
        degrees,
    };
    if complete {
        let chains: i64 = profile
            .chain_ranks
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 1 { c as i64 } else { -(c as i64) })
            .sum();
        let homology = profile.reduced_euler_characteristic();
        if chains != homology {
            return Err(HomologyError::EulerMismatch { chains, homology });
        }
    }
    Ok(profile)
}

/// Homology shadow of `k`-connectivity: nonempty, and `H̃_i = 0` (free and
/// torsion parts) for every `i ≤ k`. For `k = −1` this is nonemptiness.
pub fn connectivity_lower_bound(profile: &HomologyProfile, k: isize) -> Result<bool, HomologyError> {
    if k > profile.max_degree() && !profile.complete {
        return Err(HomologyError::DegreeNotComputed {
            computed: profile.max_degree(),
            requested: k,
        });
    }
    if profile.vertex_count == 0 {
        return Ok(false);
    }
    Ok((-1..=k).all(|i| profile.betti(i) == 0 && profile.torsion(i).is_empty()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{join, FaceList, FlagComplex};

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    fn z(x: &dyn SimplicialComplex) -> HomologyProfile {
        homology_profile(x, Coefficients::Integers, None, &Limits::default()).unwrap()
    }

    #[test]
    fn coefficients_parse() {
        assert_eq!("z".parse::<Coefficients>().unwrap(), Coefficients::Integers);
        assert_eq!("Q".parse::<Coefficients>().unwrap(), Coefficients::Rationals);
        assert_eq!("f7".parse::<Coefficients>().unwrap(), Coefficients::Prime(7));
        assert!("f8".parse::<Coefficients>().is_err());
        assert!("r".parse::<Coefficients>().is_err());
    }

    #[test]
    fn spheres_and_points() {
        let cycle = FaceList::new(names(4), vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]);
        let maps = boundary_matrices(&cycle, None, &Limits::default()).unwrap();
        assert_eq!(maps[1].rows(), 4);
        assert_eq!(smith_normal_form(&maps[1]).rank, 3);
        let h = z(&cycle);
        assert_eq!(h.betti_vector(), vec![0, 0, 1]);
        assert_eq!(h.nonzero_betti(), vec![(1, 1)]);

        let triangle = FaceList::new(names(3), vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert_eq!(z(&triangle).betti(1), 1);

        let empty = FaceList::empty_complex();
        let h = z(&empty);
        assert_eq!(h.betti(-1), 1);
        assert!(!connectivity_lower_bound(&h, -1).unwrap());

        let point = FaceList::discrete(names(1));
        assert!(z(&point).is_acyclic());
        let three = FaceList::discrete(names(3));
        assert_eq!(z(&three).betti(0), 2);
        let void = FaceList::void();
        assert!(z(&void).is_acyclic());
    }

    #[test]
    fn projective_plane_has_torsion() {
        // six-vertex triangulation of RP^2
        let facets = vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 5],
            vec![0, 1, 5],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![1, 3, 4],
            vec![1, 3, 5],
            vec![2, 4, 5],
        ];
        let rp2 = FaceList::new(names(6), facets);
        let h = z(&rp2);
        assert_eq!(h.betti_vector(), Vec::<u64>::new());
        assert_eq!(h.torsion(1), &[BigUint::from(2u8)]);
        let q = homology_profile(&rp2, Coefficients::Rationals, None, &Limits::default()).unwrap();
        assert!(q.is_acyclic());
        let f2 = homology_profile(&rp2, Coefficients::Prime(2), None, &Limits::default()).unwrap();
        assert_eq!(f2.betti(1), 1);
        assert_eq!(f2.betti(2), 1);
        assert!(!connectivity_lower_bound(&h, 1).unwrap());
        assert!(connectivity_lower_bound(&h, 0).unwrap());
    }

    #[test]
    fn joins_shift_homology() {
        let s0 = FaceList::discrete(names(2));
        let s2 = join(&[s0.clone(), s0.clone(), s0.clone()]);
        assert_eq!(z(&s2).nonzero_betti(), vec![(2, 1)]);
        let three = FaceList::discrete(names(3));
        let x = join(&vec![three; 3]);
        assert_eq!(z(&x).nonzero_betti(), vec![(2, 8)]);
    }

    #[test]
    fn degree_cap() {
        let cycle = FlagComplex::from_graph(names(5), |i, j| (i + 1) % 5 == j || (j + 1) % 5 == i);
        let h = homology_profile(&cycle, Coefficients::Integers, Some(0), &Limits::default()).unwrap();
        assert_eq!(h.max_degree(), 0);
        assert!(!h.complete);
        assert!(connectivity_lower_bound(&h, 0).unwrap());
        assert!(matches!(
            connectivity_lower_bound(&h, 1),
            Err(HomologyError::DegreeNotComputed { .. })
        ));
        let full = z(&cycle);
        assert!(full.complete);
        assert!(!connectivity_lower_bound(&full, 1).unwrap());
        assert!(connectivity_lower_bound(&full, 0).unwrap());
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let s0 = FaceList::discrete(names(2));
        let x = join(&[s0.clone(), FaceList::discrete(names(4)), s0]);
        let a = homology_profile(&x, Coefficients::Integers, None, &Limits::default().with_exec(crate::Exec::Sequential));
        let b = homology_profile(&x, Coefficients::Integers, None, &Limits::default().with_exec(crate::Exec::Parallel));
        assert_eq!(a, b);
    }
}
