use std::hint::black_box;

use complexlab::duality::dual_c;
use complexlab::homology::{betti, Field, DEFAULT_PRIME};
use complexlab::measures::{sandwich_lower, sandwich_upper};
use complexlab::oracle::{pushforward, Closure};
use complexlab::sampler::{Model, SampleSpec, Sampler};
use complexlab::{Ambient, Complex, ParamMap, Probability, Rational};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn upper_sample(n: u32, p: f64, seed: u64) -> Complex {
    let amb = Ambient::simplex(n).unwrap();
    Sampler::new(SampleSpec::new(ParamMap::uniform(amb, p).unwrap(), Model::Upper, 1, seed).unwrap()).sample(0)
}

fn sampling(c: &mut Criterion) {
    let mut g = c.benchmark_group("sample_upper");
    for n in [20u32, 40, 60] {
        let amb = Ambient::simplex(n).unwrap();
        let params = ParamMap::exponent(amb, &[0.3, 0.5, 2.9]).unwrap();
        let sampler = Sampler::new(SampleSpec::new(params, Model::Upper, 1, 0).unwrap());
        g.bench_with_input(BenchmarkId::from_parameter(n), &sampler, |b, s| {
            let mut i = 0;
            b.iter(|| {
                i += 1;
                black_box(s.sample(i))
            })
        });
    }
    g.finish();
}

fn homology(c: &mut Criterion) {
    let mut g = c.benchmark_group("betti");
    let y = upper_sample(14, 0.01, 3);
    for (name, field) in [("gf_p", Field::Prime(DEFAULT_PRIME)), ("gf2", Field::Prime(2)), ("rational", Field::Rational)] {
        g.bench_function(name, |b| b.iter(|| black_box(betti(&y, field).unwrap())));
    }
    g.finish();
}

fn duality(c: &mut Criterion) {
    let amb = Ambient::boundary(12).unwrap();
    let x = Sampler::new(SampleSpec::new(ParamMap::uniform(amb, 0.02).unwrap(), Model::Upper, 1, 1).unwrap()).sample(0);
    c.bench_function("dual_c_n12", |b| b.iter(|| black_box(dual_c(&x).unwrap())));
}

fn exact(c: &mut Criterion) {
    let amb = Ambient::boundary(3).unwrap();
    let params = ParamMap::uniform(amb, Rational::from_ratio(1, 3)).unwrap();
    c.bench_function("pushforward_upper_boundary3", |b| {
        b.iter(|| black_box(pushforward(Closure::Upper, &params).unwrap()))
    });
    let empty = Complex::empty(amb);
    let edge = Complex::from_vertex_lists(amb, &[&[0, 1]]).unwrap();
    c.bench_function("sandwich_lower_boundary3", |b| {
        b.iter(|| black_box(sandwich_lower(&empty, &edge, &params).unwrap()))
    });
    let full = Complex::full(amb);
    c.bench_function("sandwich_upper_boundary3", |b| {
        b.iter(|| black_box(sandwich_upper(&edge, &full, &params).unwrap()))
    });
}

criterion_group!(benches, sampling, homology, duality, exact);
criterion_main!(benches);
