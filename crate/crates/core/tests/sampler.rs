use std::collections::HashMap;

use complexlab::measures::{hypergraph_prob, lower_measure, upper_measure};
use complexlab::oracle::enumerate_complexes;
use complexlab::sampler::{Model, SampleSpec, Sampler};
use complexlab::{Ambient, Complex, ParamMap, Simplex};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use statrs::distribution::{ChiSquared, ContinuousCDF};

const SAMPLES: u64 = 100_000;

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// Pearson goodness of fit, pooling cells with expected count below 5.
fn chi_square_p_value(observed: &HashMap<Complex, u64>, expected: &[(Complex, f64)]) -> f64 {
    let total: f64 = SAMPLES as f64;
    assert_eq!(observed.values().sum::<u64>(), SAMPLES);
    let (mut stat, mut cells) = (0.0, 0usize);
    let (mut pooled_obs, mut pooled_exp) = (0.0, 0.0);
    for (c, p) in expected {
        let o = *observed.get(c).unwrap_or(&0) as f64;
        let e = p * total;
        if e < 5.0 {
            pooled_obs += o;
            pooled_exp += e;
        } else {
            stat += (o - e).powi(2) / e;
            cells += 1;
        }
    }
    if pooled_exp > 0.0 {
        stat += (pooled_obs - pooled_exp).powi(2) / pooled_exp.max(1e-9);
        cells += 1;
    }
    let seen: u64 = expected.iter().filter_map(|(c, _)| observed.get(c)).sum();
    assert_eq!(seen, SAMPLES, "sampler produced a complex outside the enumerated support");
    ChiSquared::new((cells - 1) as f64).unwrap().sf(stat)
}

fn check(params: ParamMap<BigRational>, model: Model, seed: u64) {
    let amb = params.ambient();
    let candidates: Vec<Complex> = match model {
        Model::Hypergraph => {
            let s: Vec<Simplex> = amb.simplices().collect();
            (0..1u32 << s.len())
                .map(|b| Complex::from_simplices(amb, (0..s.len()).filter(|i| b >> i & 1 == 1).map(|i| s[i])).unwrap())
                .collect()
        }
        _ => enumerate_complexes(amb).unwrap(),
    };
    let expected: Vec<(Complex, f64)> = candidates
        .into_iter()
        .map(|c| {
            let p = match model {
                Model::Hypergraph => hypergraph_prob(&c, &params),
                Model::Lower => lower_measure(&c, &params),
                Model::Upper => upper_measure(&c, &params),
                Model::Pure { .. } => unreachable!(),
            }
            .unwrap();
            (c, p.to_f64().unwrap())
        })
        .filter(|(_, p)| *p > 0.0)
        .collect();
    let sampler = Sampler::new(SampleSpec::new(params.to_f64(), model, SAMPLES, seed).unwrap());
    let mut observed: HashMap<Complex, u64> = HashMap::new();
    for c in sampler.sample_all() {
        *observed.entry(c).or_default() += 1;
    }
    let p = chi_square_p_value(&observed, &expected);
    assert!(p > 0.001, "{model:?} on {amb}: chi-square p-value {p}");
}

fn param_sets(amb: Ambient) -> Vec<ParamMap<BigRational>> {
    vec![
        ParamMap::uniform(amb, q(1, 2)).unwrap(),
        ParamMap::per_dimension(amb, (0..=amb.n() as i64).map(|d| q(d + 2, 2 * d + 5)).collect()).unwrap(),
        ParamMap::per_simplex(amb, amb.simplices().map(|s| (s, q((s.mask() % 5) as i64 + 1, 7)))).unwrap(),
    ]
}

#[test]
fn samplers_match_exact_laws() {
    let mut seed = 0;
    for amb in [Ambient::simplex(1), Ambient::boundary(2), Ambient::simplex(2)].map(Result::unwrap) {
        for params in param_sets(amb) {
            for model in [Model::Hypergraph, Model::Lower, Model::Upper] {
                seed += 1;
                check(params.clone(), model, seed);
            }
        }
    }
}

#[test]
fn upper_full_edge_frequency() {
    let amb = Ambient::simplex(1).unwrap();
    let sampler = Sampler::new(SampleSpec::new(ParamMap::uniform(amb, 0.5).unwrap(), Model::Upper, SAMPLES, 99).unwrap());
    let full = Complex::full(amb);
    let freq = sampler.par_map(|_, c| c == full).into_iter().filter(|&b| b).count() as f64 / SAMPLES as f64;
    let se = (0.25 / SAMPLES as f64).sqrt();
    assert!((freq - 0.5).abs() < 3.0 * se, "{freq}");
}
