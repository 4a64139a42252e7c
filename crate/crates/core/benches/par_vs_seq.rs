use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use minmod::fusion::fusion_table;
use minmod::invariants::{build_catalog, verify_with, CatalogRow};
use minmod::modular_data::{check_modular_relations, SMatrixHat};
use minmod::{par, MinimalModel};

fn modes() -> [(&'static str, bool); 2] {
    [("parallel", true), ("sequential", false)]
}

fn e8_verify(c: &mut Criterion) {
    let m = MinimalModel::new(31, 30).unwrap();
    let s = SMatrixHat::build(&m).unwrap();
    let x = build_catalog(&m, CatalogRow::E8P30).unwrap();
    let mut g = c.benchmark_group("verify_e8_31_30");
    g.sample_size(10);
    for (name, on) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            par::set_parallel(on);
            b.iter(|| assert!(verify_with(&s, &x).pass()));
        });
    }
    g.finish();
    par::set_parallel(true);
}

fn relations_and_fusion(c: &mut Criterion) {
    let m = MinimalModel::new(13, 4).unwrap();
    let mut g = c.benchmark_group("model_13_4");
    g.sample_size(10);
    for (name, on) in modes() {
        g.bench_function(BenchmarkId::new("relations", name), |b| {
            par::set_parallel(on);
            b.iter(|| check_modular_relations(&m, 128).unwrap());
        });
        g.bench_function(BenchmarkId::new("fusion_table", name), |b| {
            par::set_parallel(on);
            b.iter(|| fusion_table(&m).unwrap());
        });
    }
    g.finish();
    par::set_parallel(true);
}

criterion_group!(benches, e8_verify, relations_and_fusion);
criterion_main!(benches);
