use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nfam_bench::{candidate_params, SEARCH_INSTANCES};
use nfam_core::{
    build_k, closed_form_k_size, enumerate_l, max_family_search, PolytopeSpec, SearchOptions,
};

fn candidate(c: &mut Criterion) {
    let mut group = c.benchmark_group("candidate");
    for (name, params) in candidate_params() {
        group.bench_with_input(BenchmarkId::new("build_k", name), &params, |b, p| {
            b.iter(|| build_k(black_box(p)).len())
        });
        let spec = PolytopeSpec::new(params.clone());
        group.bench_with_input(BenchmarkId::new("enumerate_l", name), &spec, |b, s| {
            b.iter(|| enumerate_l(black_box(s)).len())
        });
        group.bench_with_input(BenchmarkId::new("closed_form", name), &params, |b, p| {
            b.iter(|| closed_form_k_size(black_box(p)).total)
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for &(n, r, s) in SEARCH_INSTANCES {
        let id = format!("n{n}_r{r}_s{s}");
        for threads in [1, 4] {
            let opts = SearchOptions {
                threads,
                ..SearchOptions::default()
            };
            group.bench_function(BenchmarkId::new(format!("threads{threads}"), &id), |b| {
                b.iter(|| {
                    max_family_search(n, r, s, black_box(&opts))
                        .unwrap()
                        .search_max
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, candidate, search);
criterion_main!(benches);
