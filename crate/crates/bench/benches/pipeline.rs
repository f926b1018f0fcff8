use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use reflexo::catalog::catalog;
use reflexo::fibration::{classify_fibres, critical_value_polynomial};
use reflexo::laurent::build_fP;
use reflexo::mordell_weil::mw_group;
use reflexo::mutation::mutation_classes;
use reflexo::period::{find_picard_fuchs, period_coefficients};
use reflexo::polygon::enumerate_reflexive;
use reflexo_bench::{polygon, REPRESENTATIVES};

fn combinatorics(c: &mut Criterion) {
    c.bench_function("enumerate_reflexive(3)", |b| b.iter(|| enumerate_reflexive(black_box(3))));
    let cat = catalog();
    c.bench_function("mutation_classes", |b| b.iter(|| mutation_classes(black_box(&cat))));
}

fn periods(c: &mut Criterion) {
    let mut g = c.benchmark_group("period_coefficients(72)");
    for name in REPRESENTATIVES {
        let f = build_fP(&polygon(name));
        g.bench_with_input(BenchmarkId::from_parameter(name), &f, |b, f| b.iter(|| period_coefficients(f, 72)));
    }
    g.finish();
    let mut g = c.benchmark_group("find_picard_fuchs");
    g.sample_size(10);
    for name in ["3", "4b", "9"] {
        let s = period_coefficients(&build_fP(&polygon(name)), 72);
        g.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, s| b.iter(|| find_picard_fuchs(s, 4, 12, 8)));
    }
    g.finish();
}

fn fibres(c: &mut Criterion) {
    let mut g = c.benchmark_group("fibres");
    g.sample_size(10);
    for name in REPRESENTATIVES {
        let p = polygon(name);
        g.bench_with_input(BenchmarkId::new("critical_values", name), &p, |b, p| {
            b.iter(|| critical_value_polynomial(p))
        });
        g.bench_with_input(BenchmarkId::new("classify_and_mw", name), &p, |b, p| {
            b.iter(|| {
                let cfg = classify_fibres(p).unwrap();
                mw_group(p, &cfg).unwrap()
            })
        });
    }
    g.finish();
}

criterion_group!(benches, combinatorics, periods, fibres);
criterion_main!(benches);
