//! Seeded sampling of Bernoulli hypergraphs and the complexes they induce.
//!
//! Sample `i` of a run with seed `s` uses ChaCha8 keyed by `s` on stream `i`,
//! so every sample is a pure function of `(s, i)` and batches can be split
//! across threads freely.

mod sparse;

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::colex_unrank_mask;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::params::{ParamMap, ParamValues};
use crate::simplex::{Ambient, Simplex};

pub use sparse::{sample_pure_sparse, SparseComplex};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Hypergraph,
    Lower,
    Upper,
    /// Downward closure of a Bernoulli(`p`) set of `k`-simplices.
    Pure { k: u32, p: f64 },
}

#[derive(Clone, Debug)]
pub struct SampleSpec {
    pub params: ParamMap<f64>,
    pub model: Model,
    pub count: u64,
    pub seed: u64,
}

impl SampleSpec {
    pub fn new(params: ParamMap<f64>, model: Model, count: u64, seed: u64) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidSpec("count must be at least 1".into()));
        }
        if let Model::Pure { k, p } = model {
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::InvalidSpec(format!("pure model needs 0 < p <= 1, got {p}")));
            }
            if k > params.ambient().n() {
                return Err(Error::InvalidSpec(format!("pure model needs k <= n, got k={k}")));
            }
        }
        Ok(SampleSpec { params, model, count, seed })
    }
}

/// The RNG for sample `index` of a run seeded with `seed`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Calls `hit` on each rank in `0..total` kept by independent Bernoulli(`p`)
/// trials, in increasing order, skipping geometrically between hits.
pub(crate) fn geometric_hits(rng: &mut ChaCha8Rng, total: u128, p: f64, mut hit: impl FnMut(u128)) {
    if p <= 0.0 || total == 0 {
        return;
    }
    if p >= 1.0 {
        (0..total).for_each(hit);
        return;
    }
    let ln_q = (-p).ln_1p();
    let mut pos: u128 = 0;
    loop {
        let u: f64 = 1.0 - rng.random::<f64>();
        let skip = (u.ln() / ln_q).floor();
        if skip >= (total - pos) as f64 {
            return;
        }
        pos += skip as u128;
        if pos >= total {
            return;
        }
        hit(pos);
        pos += 1;
        if pos >= total {
            return;
        }
    }
}

pub struct Sampler {
    spec: SampleSpec,
}

impl Sampler {
    pub fn new(spec: SampleSpec) -> Self {
        Sampler { spec }
    }

    pub fn spec(&self) -> &SampleSpec {
        &self.spec
    }

    pub fn ambient(&self) -> Ambient {
        self.spec.params.ambient()
    }

    /// Sample number `index`; independent of how many others are drawn.
    pub fn sample(&self, index: u64) -> Complex {
        let mut rng = stream_rng(self.spec.seed, index);
        let params = &self.spec.params;
        match self.spec.model {
            Model::Hypergraph => draw_hypergraph(&mut rng, params),
            Model::Upper => draw_hypergraph(&mut rng, params).upper_closure(),
            Model::Lower => draw_lower(&mut rng, params),
            Model::Pure { k, p } => draw_pure(&mut rng, params.ambient(), k, p),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Complex> + '_ {
        (0..self.spec.count).map(|i| self.sample(i))
    }

    /// All samples in index order, drawn in parallel.
    pub fn sample_all(&self) -> Vec<Complex> {
        self.par_map(|_, c| c)
    }

    /// `f(i, sample(i))` for every index, in index order.
    pub fn par_map<T: Send>(&self, f: impl Fn(u64, Complex) -> T + Sync + Send) -> Vec<T> {
        (0..self.spec.count).into_par_iter().map(|i| f(i, self.sample(i))).collect()
    }
}

fn draw_hypergraph(rng: &mut ChaCha8Rng, params: &ParamMap<f64>) -> Complex {
    let amb = params.ambient();
    let mut set = HashSet::new();
    match params.values() {
        ParamValues::PerDimension { probs, .. } => {
            for (d, &p) in probs.iter().enumerate() {
                let d = d as u32;
                let size = d as u64 + 1;
                geometric_hits(rng, amb.count_dim(d), p, |rank| {
                    set.insert(Simplex::new(colex_unrank_mask(rank, size, amb.vertex_count() as u64)));
                });
            }
        }
        ParamValues::PerSimplex(map) => {
            for (&s, &p) in map {
                if rng.random::<f64>() < p {
                    set.insert(s);
                }
            }
        }
    }
    Complex::from_simplices(amb, set).expect("ambient simplices")
}

/// The lower model grown dimension by dimension: a simplex is drawn only once
/// all of its facets are present, which has the law of `lower_interior` of a
/// full hypergraph draw without visiting simplices that could not survive.
fn draw_lower(rng: &mut ChaCha8Rng, params: &ParamMap<f64>) -> Complex {
    let amb = params.ambient();
    let nv = amb.vertex_count();
    let mut set: HashSet<Simplex> = HashSet::new();
    let mut layer: Vec<Simplex> = (0..nv)
        .map(Simplex::vertex)
        .filter(|&v| rng.random::<f64>() < params.p(v))
        .collect();
    while !layer.is_empty() {
        set.extend(layer.iter().copied());
        let mut candidates: Vec<Simplex> = Vec::new();
        for &t in &layer {
            for v in t.max_vertex() + 1..nv {
                let s = t.union(Simplex::vertex(v));
                if amb.contains(s) && s.facets().all(|f| set.contains(&f)) {
                    candidates.push(s);
                }
            }
        }
        candidates.sort_unstable();
        layer = candidates.into_iter().filter(|&s| rng.random::<f64>() < params.p(s)).collect();
    }
    Complex::from_simplices(amb, set).expect("ambient simplices")
}

fn draw_pure(rng: &mut ChaCha8Rng, amb: Ambient, k: u32, p: f64) -> Complex {
    let mut gens = Vec::new();
    let size = k as u64 + 1;
    geometric_hits(rng, amb.count_dim(k), p, |rank| {
        gens.push(Simplex::new(colex_unrank_mask(rank, size, amb.vertex_count() as u64)));
    });
    Complex::from_simplices(amb, gens).expect("ambient simplices").upper_closure()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(amb: Ambient, p: f64, model: Model, count: u64) -> SampleSpec {
        SampleSpec::new(ParamMap::uniform(amb, p).unwrap(), model, count, 7).unwrap()
    }

    #[test]
    fn certain_and_impossible() {
        let a = Ambient::simplex(4).unwrap();
        for model in [Model::Upper, Model::Lower, Model::Hypergraph] {
            let s = Sampler::new(spec(a, 1.0, model, 5));
            assert!(s.iter().all(|c| c == Complex::full(a)));
            let s = Sampler::new(spec(a, 0.0, model, 5));
            assert!(s.iter().all(|c| c.is_empty()));
        }
    }

    #[test]
    fn deterministic_and_partition_free() {
        let a = Ambient::boundary(6).unwrap();
        let s = Sampler::new(spec(a, 0.3, Model::Upper, 64));
        let serial: Vec<Complex> = s.iter().collect();
        assert_eq!(serial, s.sample_all());
        assert_eq!(s.sample(17), serial[17]);
        let other = Sampler::new(SampleSpec { seed: 8, ..s.spec().clone() });
        assert_ne!(other.iter().collect::<Vec<_>>(), serial);
    }

    #[test]
    fn spec_validation() {
        let a = Ambient::simplex(3).unwrap();
        let pm = ParamMap::uniform(a, 0.5).unwrap();
        assert!(SampleSpec::new(pm.clone(), Model::Pure { k: 1, p: 0.0 }, 1, 0).is_err());
        assert!(SampleSpec::new(pm.clone(), Model::Pure { k: 4, p: 0.5 }, 1, 0).is_err());
        assert!(SampleSpec::new(pm, Model::Upper, 0, 0).is_err());
    }

    #[test]
    fn geometric_skipping_marginals() {
        // every rank should be hit with frequency p
        let (total, p, reps) = (50u128, 0.1, 4000u64);
        let mut hits = vec![0u64; total as usize];
        for i in 0..reps {
            let mut rng = stream_rng(3, i);
            geometric_hits(&mut rng, total, p, |r| hits[r as usize] += 1);
        }
        let se = (p * (1.0 - p) / reps as f64).sqrt();
        let mean = hits.iter().sum::<u64>() as f64 / (total as f64 * reps as f64);
        assert!((mean - p).abs() < 4.0 * se / (total as f64).sqrt());
        for h in hits {
            assert!((h as f64 / reps as f64 - p).abs() < 5.0 * se);
        }
    }

    #[test]
    fn pure_model_marginal() {
        let a = Ambient::simplex(7).unwrap();
        let p = 0.2;
        let s = Sampler::new(spec(a, 0.5, Model::Pure { k: 2, p }, 2000));
        let target = Simplex::new(0b1011);
        let freq = s.iter().filter(|c| c.contains(target)).count() as f64 / 2000.0;
        let se = (p * (1.0 - p) / 2000.0).sqrt();
        assert!((freq - p).abs() < 3.0 * se, "{freq}");
        assert!(s.iter().all(|c| c.dim().is_none_or(|d| d == 2)));
    }
}
