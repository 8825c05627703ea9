use criterion::{black_box, criterion_group, criterion_main, Criterion};

use ydh_core::abgroup::FinAbGroup;
use ydh_core::catalog::{search_nontrivial, standard_catalog, Ansatz, SearchConfig};
use ydh_core::commalg::{analyze, AnalysisConfig};
use ydh_core::integrals::compute_integrals;
use ydh_core::io::{build_report, parse, render, ReportOptions};
use ydh_core::ydhopf::verify_axioms;

fn nontrivial_text() -> String {
    let p = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../fixtures/search/search_z2_d4_06_nontrivial.ydh"
    );
    std::fs::read_to_string(p).expect("fixture present")
}

fn verify(c: &mut Criterion) {
    let cat = standard_catalog();
    c.bench_function("verify_axioms/catalog", |b| {
        b.iter(|| {
            for (_, a) in &cat {
                black_box(verify_axioms(a));
            }
        })
    });
    let text = nontrivial_text();
    c.bench_function("parse_render/dim4", |b| {
        b.iter(|| render(&parse(black_box(&text)).unwrap()))
    });
}

fn analysis(c: &mut Criterion) {
    let a = parse(&nontrivial_text()).unwrap();
    c.bench_function("integrals/dim4", |b| b.iter(|| compute_integrals(black_box(&a))));
    let mut g = c.benchmark_group("analyze");
    g.sample_size(10);
    let fast = AnalysisConfig {
        tensor_ideals: false,
        ..AnalysisConfig::default()
    };
    g.bench_function("dim4", |b| b.iter(|| analyze(&a, fast.clone()).unwrap()));
    g.bench_function("dim4_tensor_ideals", |b| {
        b.iter(|| analyze(&a, AnalysisConfig::default()).unwrap())
    });
    g.bench_function("report/dim4", |b| {
        b.iter(|| build_report(&a, &ReportOptions::default()).unwrap())
    });
    g.finish();
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    let mut cfg = SearchConfig::new(FinAbGroup::cyclic(2), 4);
    cfg.ansatz = Some(vec![Ansatz {
        phi: vec![vec![0, 1, 3, 2]],
        psi: vec![vec![0, 1, 3, 2]],
    }]);
    g.bench_function("z2_d4_swap", |b| b.iter(|| search_nontrivial(&cfg).unwrap()));
    g.finish();
}

criterion_group!(benches, verify, analysis, search);
criterion_main!(benches);
