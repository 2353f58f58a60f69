use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use iso_core::corpus::make_group;
use iso_core::group_iso::generator_enumeration;
use iso_core::{is_isomorphic_groups, p_group_iso_via_series, ChunkPlan};

fn relabeled(spec: &str) -> (iso_core::CayleyTable, iso_core::CayleyTable) {
    let g = make_group(spec, 256).unwrap();
    let perm: Vec<usize> = (0..g.order()).rev().collect();
    let h = g.relabel(&perm);
    (g, h)
}

fn groups(c: &mut Criterion) {
    let specs = ["elementary 2 4", "elementary 2 5", "heisenberg 3", "order16 9", "dihedral 8"];
    let mut group = c.benchmark_group("groups");
    for spec in specs {
        let (g, h) = relabeled(spec);
        group.bench_with_input(BenchmarkId::new("genenum", spec), &(), |b, _| b.iter(|| generator_enumeration(&g, &h)));
        for delta in [16, usize::MAX] {
            let plan = if delta == usize::MAX { ChunkPlan::unbounded() } else { ChunkPlan::new(delta) };
            let id = BenchmarkId::new(format!("bidi/delta={}", if delta == usize::MAX { "all".into() } else { delta.to_string() }), spec);
            group.bench_with_input(id, &(), |b, _| b.iter(|| is_isomorphic_groups(&g, &h, &plan)));
        }
        group.bench_with_input(BenchmarkId::new("series", spec), &(), |b, _| b.iter(|| p_group_iso_via_series(&g, &h)));
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = groups
}
criterion_main!(benches);
