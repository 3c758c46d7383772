//! Randomized invariants over small graphs, structures and matrices.

use proptest::prelude::*;

use nc_complex::complex::cliques::{count_cliques, maximal_cliques};
use nc_complex::complex::{join, nc_complex, FaceList, FlagComplex, SimplicialComplex};
use nc_complex::decomposition::{blowup_verify, verify_duality_factorization};
use nc_complex::homology::{boundary_matrices, homology_profile, smith_normal_form, Coefficients, SparseIntMatrix};
use nc_complex::maxsets::{maximal_noncommuting_sets, nc_counts};
use nc_complex::oracle::{maximal_noncommuting_sets_exhaustive, nc_counts_exhaustive, smith_invariants_by_minors};
use nc_complex::structure::CommutingStructure;
use nc_complex::{Exec, Limits};

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// A symmetric edge predicate on `n` vertices, as a lower-triangular bit list.
fn graph(max_n: usize) -> impl Strategy<Value = (usize, Vec<bool>)> {
    (1..=max_n).prop_flat_map(|n| (Just(n), prop::collection::vec(any::<bool>(), n * (n - 1) / 2)))
}

fn edge(bits: &[bool], i: usize, j: usize) -> bool {
    let (a, b) = if i > j { (i, j) } else { (j, i) };
    i != j && bits[a * (a - 1) / 2 + b]
}

fn flag((n, bits): &(usize, Vec<bool>)) -> FlagComplex {
    FlagComplex::from_graph(names(*n), |i, j| edge(bits, i, j))
}

/// The structure whose non-commuting graph is the given graph.
fn structure((n, bits): &(usize, Vec<bool>)) -> CommutingStructure {
    let rel: Vec<Vec<bool>> = (0..*n).map(|i| (0..*n).map(|j| !edge(bits, i, j)).collect()).collect();
    CommutingStructure::from_relation(names(*n), &rel).unwrap()
}

fn facets(max_vertices: usize) -> impl Strategy<Value = FaceList> {
    prop::collection::vec(prop::collection::btree_set(0..max_vertices, 1..=3), 1..=4).prop_map(move |fs| {
        FaceList::new(names(max_vertices), fs.into_iter().map(|f| f.into_iter().collect()).collect())
    })
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
}

fn sequential() -> Limits {
    Limits::default().with_exec(Exec::Sequential)
}

fn dense_product_is_zero(a: &SparseIntMatrix, b: &SparseIntMatrix) -> bool {
    let (a, b) = (a.to_dense(), b.to_dense());
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .all(|row| (0..cols).all(|j| row.iter().zip(&b).map(|(x, r)| x * r[j]).sum::<i64>() == 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pruned_euler_matches_face_count(g in graph(11)) {
        let x = flag(&g);
        let f = x.f_vector(None, &Limits::default()).unwrap();
        prop_assert_eq!(x.euler_characteristic_pruned(), f.euler_characteristic());
    }

    #[test]
    fn maximal_sets_match_exhaustive_scan(g in graph(11)) {
        let s = structure(&g);
        let mut fast = maximal_noncommuting_sets(&s, true, &Limits::default()).unwrap().sets.unwrap();
        fast.sort();
        prop_assert_eq!(fast, maximal_noncommuting_sets_exhaustive(&s).unwrap());
        prop_assert_eq!(nc_counts(&s, &Limits::default()).unwrap(), nc_counts_exhaustive(&s).unwrap());
    }

    #[test]
    fn boundary_squares_to_zero(g in graph(9)) {
        let maps = boundary_matrices(&flag(&g), None, &Limits::default()).unwrap();
        for pair in maps.windows(2) {
            prop_assert!(dense_product_is_zero(&pair[0], &pair[1]));
        }
    }

    #[test]
    fn euler_identity(g in graph(10)) {
        let x = flag(&g);
        let f = x.f_vector(None, &Limits::default()).unwrap();
        let h = homology_profile(&x, Coefficients::Integers, None, &Limits::default()).unwrap();
        prop_assert_eq!(f.reduced_euler_characteristic(), h.reduced_euler_characteristic());
    }

    #[test]
    fn field_ranks_bound_integer_ranks(g in graph(9)) {
        let x = flag(&g);
        let z = homology_profile(&x, Coefficients::Integers, None, &Limits::default()).unwrap();
        let q = homology_profile(&x, Coefficients::Rationals, None, &Limits::default()).unwrap();
        let f2 = homology_profile(&x, Coefficients::Prime(2), None, &Limits::default()).unwrap();
        prop_assert_eq!(z.betti_vector(), q.betti_vector());
        for d in -1..=z.max_degree() {
            prop_assert!(f2.betti(d) >= z.betti(d));
        }
    }

    #[test]
    fn smith_form_matches_minors(a in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| matrix(r, c))) {
        let fast = smith_normal_form(&SparseIntMatrix::from_dense(&a)).divisors();
        prop_assert_eq!(fast, smith_invariants_by_minors(&a).unwrap());
    }

    #[test]
    fn join_f_vector_is_product(a in facets(4), b in facets(3)) {
        let limits = Limits::default();
        let joined = join(&[a.clone(), b.clone()]).f_vector(None, &limits).unwrap();
        let product = a.f_vector(None, &limits).unwrap().join(&b.f_vector(None, &limits).unwrap());
        prop_assert_eq!(joined, product);
    }

    #[test]
    fn duality_factorization_is_a_join(g in graph(9)) {
        let check = verify_duality_factorization(&structure(&g), &Limits::default()).unwrap();
        prop_assert!(check.matches);
        prop_assert_eq!(check.factor_sizes.iter().sum::<usize>(), g.0);
    }

    #[test]
    fn blowup_prediction_matches(g in graph(8), extra in prop::collection::vec(0usize..3, 8)) {
        // blow every point up into a class of 1..=3 mutually commuting copies
        let base = structure(&g);
        let owner: Vec<usize> = (0..g.0).flat_map(|v| std::iter::repeat_n(v, 1 + extra[v])).collect();
        let rel: Vec<Vec<bool>> = owner
            .iter()
            .map(|&a| owner.iter().map(|&b| base.related(a, b)).collect())
            .collect();
        let s = CommutingStructure::from_relation(names(owner.len()), &rel).unwrap();
        let v = blowup_verify(&s, &Limits::default()).unwrap();
        prop_assert!(v.matches, "predicted {:?}, direct {:?}", v.predicted.nonzero_betti(), v.direct.nonzero_betti());
    }

    #[test]
    fn parallel_and_sequential_agree(g in graph(12)) {
        let x = flag(&g);
        let par = Limits::default().with_exec(Exec::Parallel);
        let seq = sequential();
        prop_assert_eq!(
            count_cliques(x.adjacency(), None, u64::MAX, Exec::Parallel).unwrap(),
            count_cliques(x.adjacency(), None, u64::MAX, Exec::Sequential).unwrap()
        );
        prop_assert_eq!(
            maximal_cliques(x.adjacency(), true, u64::MAX, Exec::Parallel).unwrap().cliques,
            maximal_cliques(x.adjacency(), true, u64::MAX, Exec::Sequential).unwrap().cliques
        );
        prop_assert_eq!(
            homology_profile(&x, Coefficients::Integers, None, &par).unwrap(),
            homology_profile(&x, Coefficients::Integers, None, &seq).unwrap()
        );
        prop_assert_eq!(x.face_table(None, &par).unwrap(), x.face_table(None, &seq).unwrap());
    }

    #[test]
    fn nc_complex_of_structure_is_the_graph(g in graph(10)) {
        let s = structure(&g);
        let x = nc_complex(&s);
        for i in 0..g.0 {
            for j in 0..g.0 {
                prop_assert_eq!(x.is_edge(i, j), edge(&g.1, i, j));
            }
        }
    }
}
