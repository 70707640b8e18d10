use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ppower_core::delsarte::{divisible_distances, lp_bound};
use ppower_core::krawtchouk::{kraw, KrawtchoukTable};
use ppower_core::spectral::{kn_power_spectrum_exact, power_spectrum, BaseSpectralData};
use ppower_core::Graph;

fn krawtchouk(c: &mut Criterion) {
    c.bench_function("kraw(40,5,20,17)", |b| b.iter(|| kraw(black_box(40), 5, 20, 17)));
    c.bench_function("table(24,3)", |b| b.iter(|| KrawtchoukTable::new(black_box(24), 3)));
}

fn delsarte(c: &mut Criterion) {
    let mut group = c.benchmark_group("lp");
    group.sample_size(10);
    group.bench_function("lp_bound(2,12,3)", |b| b.iter(|| lp_bound(2, 12, &divisible_distances(12, 3)).unwrap()));
    group.bench_function("lp_bound(3,10,3)", |b| b.iter(|| lp_bound(3, 10, &divisible_distances(10, 3)).unwrap()));
    group.finish();
}

fn spectra(c: &mut Criterion) {
    let petersen = BaseSpectralData::from_graph(&Graph::petersen()).unwrap();
    c.bench_function("power_spectrum(petersen,6,3)", |b| b.iter(|| power_spectrum(&petersen, black_box(6), 3).unwrap()));
    c.bench_function("kn_power_spectrum_exact(5,12,3)", |b| b.iter(|| kn_power_spectrum_exact(5, black_box(12), 3).unwrap()));
}

criterion_group!(benches, krawtchouk, delsarte, spectra);
criterion_main!(benches);
