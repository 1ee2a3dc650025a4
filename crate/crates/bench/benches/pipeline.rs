use criterion::{black_box, criterion_group, criterion_main, Criterion};

use vvmf_core::component::{enumerate_components, trace_l_candidates};
use vvmf_core::dmatrix::{random_dmatrix, reduce_e6};
use vvmf_core::euler::{p_polynomial, ChiContext};
use vvmf_core::search::{enumerate_types, FilterSet};
use vvmf_core::BlockShape;

fn enumerate(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_types");
    g.sample_size(10);
    for d in [4u32, 6] {
        g.bench_function(format!("d={d}"), |b| {
            b.iter(|| enumerate_types(black_box(d), &FilterSet::default()).unwrap())
        });
    }
    g.finish();
}

fn p_polynomials(c: &mut Criterion) {
    let contexts: Vec<_> = enumerate_components(6)
        .into_iter()
        .flat_map(|comp| trace_l_candidates(&comp).into_iter().map(move |t| (comp, t)))
        .take(200)
        .collect();
    c.bench_function("p_polynomial/200 contexts d=6", |b| {
        b.iter(|| {
            for (comp, t) in &contexts {
                let (ctx, _) = ChiContext::for_component(comp, *t).unwrap();
                black_box(p_polynomial(&ctx).unwrap());
            }
        })
    });
}

fn reduction(c: &mut Criterion) {
    let mut g = c.benchmark_group("reduce_e6");
    for mults in [vec![1u32, 1, 1, 1, 1], vec![1, 2, 3, 2, 1], vec![1; 10]] {
        let shape = BlockShape::new(mults.clone(), 0).unwrap();
        let a = random_dmatrix(&shape, 1);
        g.bench_function(format!("{mults:?}"), |b| b.iter(|| reduce_e6(black_box(&a)).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, enumerate, p_polynomials, reduction);
criterion_main!(benches);
