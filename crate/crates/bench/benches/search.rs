use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use hmset::coeffs::CoeffTable;
use hmset::families::{build_hm, hm_size};
use hmset::search::raw::{raw_max_nontrivial, DEFAULT_VERTEX_GUARD};
use hmset::search::{
    count_maximal_p_families, maximal_iso_classes, verify_main_theorem_on, SearchOptions,
};
use hmset::{Multiplicity, Params};
use hmset_bench::{scrambled_maximal, theorem_params};

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for n in [5, 6] {
        group.bench_with_input(BenchmarkId::new("count", n), &n, |b, &n| {
            b.iter(|| count_maximal_p_families(n, &SearchOptions::default()).unwrap())
        });
    }
    group.sample_size(10);
    group.bench_function("classes/6", |b| {
        b.iter(|| maximal_iso_classes(6, &SearchOptions::default()).unwrap())
    });
    group.finish();
}

fn canonical_form(c: &mut Criterion) {
    let families = scrambled_maximal(6);
    c.bench_function("canonical_form/n6_all", |b| {
        b.iter(|| {
            for f in &families {
                black_box(f.canonical_form());
            }
        })
    });
}

fn coefficients(c: &mut Criterion) {
    let mut group = c.benchmark_group("coefficients");
    for k in [12, 40] {
        group.bench_with_input(BenchmarkId::new("row_m3", k), &k, |b, &k| {
            b.iter(|| CoeffTable::compute(black_box(k), Multiplicity::Bounded(3)))
        });
    }
    group.finish();
}

fn hm(c: &mut Criterion) {
    let p = Params::new(7, 4, Multiplicity::Bounded(2)).unwrap();
    c.bench_function("hm_size/7_4_2", |b| {
        b.iter(|| hm_size(black_box(&p)).unwrap())
    });
    c.bench_function("build_hm/7_4_2", |b| {
        b.iter(|| build_hm(black_box(&p)).unwrap())
    });
    let big = Params::new(24, 12, Multiplicity::Bounded(3)).unwrap();
    c.bench_function("hm_size/24_12_3", |b| {
        b.iter(|| hm_size(black_box(&big)).unwrap())
    });
}

fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    let opts = SearchOptions::default();
    for p in theorem_params() {
        let classes = maximal_iso_classes(p.n(), &opts).unwrap();
        group.bench_function(BenchmarkId::new("theorem", p.to_string()), |b| {
            b.iter(|| verify_main_theorem_on(&p, &classes, &opts).unwrap())
        });
        group.bench_function(BenchmarkId::new("raw", p.to_string()), |b| {
            b.iter(|| raw_max_nontrivial(&p, DEFAULT_VERTEX_GUARD).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    enumeration,
    canonical_form,
    coefficients,
    hm,
    verification
);
criterion_main!(benches);
