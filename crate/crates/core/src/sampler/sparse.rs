//! Pure-model sampling beyond the 64-vertex bitset limit.

use std::collections::HashSet;

use crate::combinatorics::{binomial, colex_unrank};
use crate::error::{Error, Result};

use super::{geometric_hits, stream_rng};

/// Downward closure of a list of generating simplices on `{0, .., n}`,
/// stored as ascending vertex lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseComplex {
    pub n: u64,
    pub generators: Vec<Vec<u32>>,
}

fn for_each_subset(v: &[u32], size: usize, f: &mut impl FnMut(&[u32])) {
    fn rec(v: &[u32], size: usize, start: usize, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for i in start..v.len() {
            if v.len() - i < size - cur.len() {
                break;
            }
            cur.push(v[i]);
            rec(v, size, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(v, size, 0, &mut Vec::with_capacity(size), f);
}

impl SparseComplex {
    /// Distinct faces of dimension `d`.
    pub fn faces_of_dim(&self, d: usize) -> HashSet<Vec<u32>> {
        let mut out = HashSet::new();
        for g in self.generators.iter().filter(|g| g.len() > d) {
            for_each_subset(g, d + 1, &mut |s| {
                out.insert(s.to_vec());
            });
        }
        out
    }

    pub fn f_vector(&self) -> Vec<u64> {
        let top = self.generators.iter().map(|g| g.len()).max().unwrap_or(0);
        (0..top).map(|d| self.faces_of_dim(d).len() as u64).collect()
    }

    pub fn contains_skeleton(&self, ell: u32) -> bool {
        let want = binomial(self.n + 1, ell as u64 + 1).unwrap_or(u128::MAX);
        self.faces_of_dim(ell as usize).len() as u128 == want
    }
}

/// Pure model on `Δ_n` for any `n`, drawing the same ranks in the same order
/// as the bitset sampler so the two agree wherever both apply.
pub fn sample_pure_sparse(n: u64, k: u32, p: f64, seed: u64, index: u64) -> Result<SparseComplex> {
    if k as u64 > n || !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidSpec(format!("pure model needs k <= n and 0 < p <= 1 (k={k}, p={p})")));
    }
    if n >= u32::MAX as u64 {
        return Err(Error::AmbientTooLarge(u32::MAX));
    }
    let total = binomial(n + 1, k as u64 + 1).ok_or(Error::EnumerationTooLarge(u64::MAX))?;
    let mut rng = stream_rng(seed, index);
    let mut generators = Vec::new();
    geometric_hits(&mut rng, total, p, |rank| generators.push(colex_unrank(rank, k as u64 + 1, n + 1)));
    Ok(SparseComplex { n, generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ParamMap;
    use crate::sampler::{Model, SampleSpec, Sampler};
    use crate::simplex::Ambient;

    #[test]
    fn agrees_with_bitset_sampler() {
        let a = Ambient::simplex(12).unwrap();
        let spec = SampleSpec::new(ParamMap::uniform(a, 0.0).unwrap(), Model::Pure { k: 2, p: 0.05 }, 30, 11).unwrap();
        let s = Sampler::new(spec);
        for i in 0..30 {
            let sparse = sample_pure_sparse(12, 2, 0.05, 11, i).unwrap();
            let dense = s.sample(i);
            assert_eq!(sparse.f_vector(), dense.f_vector());
            assert_eq!(sparse.contains_skeleton(0), dense.contains_skeleton(0));
        }
    }

    #[test]
    fn full_probability_gives_everything() {
        let c = sample_pure_sparse(80, 1, 1.0, 0, 0).unwrap();
        assert_eq!(c.f_vector(), vec![81, 3240]);
        assert!(c.contains_skeleton(1));
    }
}
