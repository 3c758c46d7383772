//! Sequential vs rayon execution of the hot loops: clique counting, maximal
//! clique enumeration and boundary-rank jobs.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use nc_complex::complex::cliques::{count_cliques, maximal_cliques};
use nc_complex::complex::{nc_complex, FlagComplex};
use nc_complex::group::parse_group_spec;
use nc_complex::homology::{homology_profile, Coefficients};
use nc_complex::structure::{group_structure, symp, GroupScope};
use nc_complex::{Exec, Limits};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn group_nc(spec: &str, scope: GroupScope) -> FlagComplex {
    let g = parse_group_spec(spec).unwrap();
    nc_complex(&group_structure(&g, scope).unwrap())
}

fn clique_counting(c: &mut Criterion) {
    let inputs = [
        ("S4", group_nc("S4", GroupScope::Noncentral)),
        ("A5-order2", group_nc("A5", GroupScope::OrderP(2))),
        ("symp5", nc_complex(&symp(5).unwrap())),
    ];
    let mut group = c.benchmark_group("count_cliques");
    for (name, x) in &inputs {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, name), x, |b, x| {
                b.iter(|| count_cliques(black_box(x.adjacency()), None, u64::MAX, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn maximal_sets(c: &mut Criterion) {
    let inputs = [
        ("S4", group_nc("S4", GroupScope::Noncentral)),
        ("Heis3", group_nc("Heis3", GroupScope::Noncentral)),
    ];
    let mut group = c.benchmark_group("maximal_cliques");
    group.sample_size(20);
    for (name, x) in &inputs {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, name), x, |b, x| {
                b.iter(|| maximal_cliques(black_box(x.adjacency()), false, u64::MAX, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn homology(c: &mut Criterion) {
    let inputs = [
        ("symp5", nc_complex(&symp(5).unwrap())),
        ("frob21", group_nc("frob:7:3:2", GroupScope::AllNontrivial)),
    ];
    let mut group = c.benchmark_group("homology_profile");
    group.sample_size(10);
    for (name, x) in &inputs {
        for (mode, exec) in MODES {
            let limits = Limits::default().with_exec(exec);
            group.bench_with_input(BenchmarkId::new(mode, name), x, |b, x| {
                b.iter(|| homology_profile(black_box(x), Coefficients::Integers, None, &limits).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, clique_counting, maximal_sets, homology);
criterion_main!(benches);
