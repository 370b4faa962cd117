use std::hint::black_box;

use cocycle_bench::{dim32, dim81};
use cocycle_core::gallery::{lifting, nichols_quantum_plane};
use cocycle_core::prebialgebra::smash_product;
use cocycle_core::twist::{is_two_cocycle, twist_bialgebra};
use criterion::{criterion_group, criterion_main, Criterion};

fn kernels(c: &mut Criterion) {
    let f = dim32();
    let a = f.biproduct.a();
    let co = a.coalg().expect("coalgebra");
    let hs = f.biproduct.hsub();

    c.bench_function("dim32 convolution", |b| b.iter(|| black_box(f.gamma.convolve(&f.gamma, co))));
    c.bench_function("dim32 convolution inverse", |b| b.iter(|| black_box(f.gamma.inverse(co).expect("invertible"))));
    c.bench_function("dim32 certify γ", |b| b.iter(|| black_box(is_two_cocycle(&f.gamma, a, Some(&hs)).expect("cocycle"))));
    let cert = is_two_cocycle(&f.gamma, a, None).expect("cocycle");
    c.bench_function("dim32 twist", |b| b.iter(|| black_box(twist_bialgebra(a, &cert).expect("twist"))));
    c.bench_function("dim32 lifting", |b| b.iter(|| black_box(lifting(&f.datum).expect("lifting"))));

    let d = dim81();
    let r = nichols_quantum_plane(&d).expect("nichols");
    let mut g = c.benchmark_group("dim81");
    g.sample_size(10);
    g.bench_function("smash product", |b| b.iter(|| black_box(smash_product(&r).expect("smash"))));
    g.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
