use criterion::{criterion_group, criterion_main, Criterion};
use reprzeta::engine::topological_rep_zeta;
use reprzeta::topo_eval::red;
use reprzeta_bench::{algebra, sample_element, serial};

fn zeta(c: &mut Criterion) {
    let mut g = c.benchmark_group("zeta");
    g.sample_size(10);
    for expr in ["L_{4,3}", "L_{6,13}", "L_{6,19}(0)", "L_{5,5}[eps]", "L_{5,7}[eps]"] {
        let l = algebra(expr);
        g.bench_function(expr, |b| b.iter(|| topological_rep_zeta(&l, &serial()).unwrap()));
    }
    g.finish();
}

fn reduction(c: &mut Criterion) {
    let w = sample_element();
    c.bench_function("red", |b| b.iter(|| red(&w).unwrap()));
}

criterion_group!(benches, zeta, reduction);
criterion_main!(benches);
