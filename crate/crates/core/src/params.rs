//! Probability parameters `σ ↦ p_σ` for the Bernoulli hypergraph measure.

use std::collections::BTreeMap;

use crate::complex::Complex;
use crate::duality::MAX_DUAL_N;
use crate::error::{Error, Result};
use crate::prob::{Factor, Probability};
use crate::simplex::{Ambient, Simplex};

/// Exponents `α_i` with `p_i = base^{-α_i}`; informational once the
/// probabilities are materialized.
#[derive(Clone, Debug, PartialEq)]
pub struct Exponents {
    pub base: f64,
    pub alpha: Vec<f64>,
}

#[derive(Clone, Debug)]
pub enum ParamValues<P> {
    /// `p_σ = probs[dim σ]`; dimensions past the end have `p = 0`.
    PerDimension { probs: Vec<P>, exponents: Option<Exponents> },
    /// Explicit per-simplex values; unlisted simplices have `p = 0`.
    PerSimplex(BTreeMap<Simplex, P>),
}

#[derive(Clone, Debug)]
pub struct ParamMap<P> {
    ambient: Ambient,
    values: ParamValues<P>,
}

fn check_prob<P: Probability>(p: &P, what: impl FnOnce() -> String) -> Result<()> {
    if p.in_unit_interval() {
        Ok(())
    } else {
        Err(Error::InvalidProbability { what: what(), value: p.to_string() })
    }
}

impl<P: Probability> ParamMap<P> {
    pub fn per_dimension(ambient: Ambient, probs: Vec<P>) -> Result<Self> {
        for (i, p) in probs.iter().enumerate() {
            check_prob(p, || format!("dimension {i}"))?;
        }
        Ok(ParamMap { ambient, values: ParamValues::PerDimension { probs, exponents: None } })
    }

    /// The same `p` for every ambient simplex.
    pub fn uniform(ambient: Ambient, p: P) -> Result<Self> {
        Self::per_dimension(ambient, vec![p; ambient.n() as usize + 1])
    }

    pub fn per_simplex<I: IntoIterator<Item = (Simplex, P)>>(ambient: Ambient, it: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (s, p) in it {
            ambient.check(s)?;
            check_prob(&p, || format!("simplex {s}"))?;
            if !p.is_zero() {
                map.insert(s, p);
            }
        }
        Ok(ParamMap { ambient, values: ParamValues::PerSimplex(map) })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn values(&self) -> &ParamValues<P> {
        &self.values
    }

    pub fn dimension_probs(&self) -> Option<&[P]> {
        match &self.values {
            ParamValues::PerDimension { probs, .. } => Some(probs),
            ParamValues::PerSimplex(_) => None,
        }
    }

    pub fn exponents(&self) -> Option<&Exponents> {
        match &self.values {
            ParamValues::PerDimension { exponents, .. } => exponents.as_ref(),
            ParamValues::PerSimplex(_) => None,
        }
    }

    /// `p` of dimension `d` in per-dimension mode.
    pub fn dim_p(&self, d: u32) -> Option<P> {
        self.dimension_probs()
            .map(|probs| probs.get(d as usize).cloned().unwrap_or_else(P::zero))
    }

    pub fn p(&self, s: Simplex) -> P {
        if !self.ambient.contains(s) {
            return P::zero();
        }
        match &self.values {
            ParamValues::PerDimension { probs, .. } => {
                probs.get(s.dim() as usize).cloned().unwrap_or_else(P::zero)
            }
            ParamValues::PerSimplex(map) => map.get(&s).cloned().unwrap_or_else(P::zero),
        }
    }

    pub fn q(&self, s: Simplex) -> P {
        self.p(s).complement()
    }

    /// Highest dimension carrying a nonzero probability.
    pub fn top_dim(&self) -> Option<u32> {
        match &self.values {
            ParamValues::PerDimension { probs, .. } => probs
                .iter()
                .rposition(|p| !p.is_zero())
                .map(|d| d as u32)
                .filter(|&d| self.ambient.count_dim(d) > 0),
            ParamValues::PerSimplex(map) => map.keys().map(|s| s.dim()).max(),
        }
    }

    /// `∏_{σ ∈ it} p_σ` as factors (grouped by dimension when possible).
    pub(crate) fn p_factors<I: IntoIterator<Item = Simplex>>(&self, it: I, complement: bool) -> Vec<Factor<P>> {
        match &self.values {
            ParamValues::PerDimension { .. } => {
                let mut counts: Vec<u64> = Vec::new();
                for s in it {
                    let d = s.dim() as usize;
                    if counts.len() <= d {
                        counts.resize(d + 1, 0);
                    }
                    counts[d] += 1;
                }
                counts
                    .into_iter()
                    .enumerate()
                    .filter(|&(_, c)| c > 0)
                    .map(|(d, c)| Factor {
                        p: self.dim_p(d as u32).unwrap(),
                        complement,
                        exponent: c,
                    })
                    .collect()
            }
            ParamValues::PerSimplex(_) => it
                .into_iter()
                .map(|s| Factor { p: self.p(s), complement, exponent: 1 })
                .collect(),
        }
    }

    /// `∏_{σ ∉ Y} q_σ` over the ambient, as factors.
    pub(crate) fn q_outside_factors(&self, y: &Complex) -> Vec<Factor<P>> {
        match &self.values {
            ParamValues::PerDimension { probs, .. } => probs
                .iter()
                .enumerate()
                .map(|(d, p)| {
                    let total = self.ambient.count_dim(d as u32) as u64;
                    Factor::q(p.clone(), total - y.of_dim(d as u32).len() as u64)
                })
                .collect(),
            ParamValues::PerSimplex(map) => map
                .iter()
                .filter(|(s, _)| !y.contains(**s))
                .map(|(_, p)| Factor::q(p.clone(), 1))
                .collect(),
        }
    }

    /// Explicit `(σ, p_σ)` for every ambient simplex with `p_σ > 0`.
    pub fn support(&self) -> Result<Vec<(Simplex, P)>> {
        match &self.values {
            ParamValues::PerSimplex(map) => Ok(map.iter().map(|(s, p)| (*s, p.clone())).collect()),
            ParamValues::PerDimension { probs, .. } => {
                let mut out = Vec::new();
                for (d, p) in probs.iter().enumerate() {
                    if p.is_zero() || d as u32 > self.ambient.n() {
                        continue;
                    }
                    if self.ambient.count_dim(d as u32) > 1 << 22 {
                        return Err(Error::EnumerationTooLarge(self.ambient.count_dim(d as u32) as u64));
                    }
                    out.extend(self.ambient.simplices_of_dim(d as u32).map(|s| (s, p.clone())));
                }
                Ok(out)
            }
        }
    }

    /// Same measure in explicit per-simplex form.
    pub fn to_per_simplex(&self) -> Result<Self> {
        Self::per_simplex(self.ambient, self.support()?)
    }

    pub fn to_f64(&self) -> ParamMap<f64> {
        let values = match &self.values {
            ParamValues::PerDimension { probs, exponents } => ParamValues::PerDimension {
                probs: probs.iter().map(|p| p.to_f64()).collect(),
                exponents: exponents.clone(),
            },
            ParamValues::PerSimplex(map) => {
                ParamValues::PerSimplex(map.iter().map(|(s, p)| (*s, p.to_f64())).collect())
            }
        };
        ParamMap { ambient: self.ambient, values }
    }

    pub(crate) fn with_values(ambient: Ambient, values: ParamValues<P>) -> Self {
        ParamMap { ambient, values }
    }

    /// Compares the induced measures, i.e. `p_σ` for every ambient simplex.
    pub fn same_measure(&self, other: &Self) -> bool {
        if self.ambient != other.ambient {
            return false;
        }
        match (&self.values, &other.values) {
            (ParamValues::PerDimension { .. }, ParamValues::PerDimension { .. }) => {
                (0..=self.ambient.n()).all(|d| {
                    self.ambient.count_dim(d) == 0 || self.dim_p(d) == other.dim_p(d)
                })
            }
            _ if self.ambient.n() <= MAX_DUAL_N => {
                self.ambient.simplices().all(|s| self.p(s) == other.p(s))
            }
            _ => false,
        }
    }
}

impl ParamMap<f64> {
    /// `p_σ = n^{-α_i}` for `dim σ = i <= r`, zero above `r`.
    pub fn exponent(ambient: Ambient, alpha: &[f64]) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::InvalidParams("exponent mode needs at least one α".into()));
        }
        if let Some(a) = alpha.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
            return Err(Error::InvalidParams(format!("exponents must be positive, got {a}")));
        }
        if ambient.n() < 1 {
            return Err(Error::InvalidParams("exponent mode needs n >= 1".into()));
        }
        let base = ambient.n() as f64;
        let probs = alpha.iter().map(|a| base.powf(-a)).collect();
        Ok(ParamMap {
            ambient,
            values: ParamValues::PerDimension {
                probs,
                exponents: Some(Exponents { base, alpha: alpha.to_vec() }),
            },
        })
    }
}

impl<P: Probability> PartialEq for ParamMap<P> {
    fn eq(&self, other: &Self) -> bool {
        self.same_measure(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::from_ratio(a, b)
    }

    #[test]
    fn lookups_and_defaults() {
        let a = Ambient::boundary(2).unwrap();
        let pm = ParamMap::per_dimension(a, vec![r(1, 2)]).unwrap();
        assert_eq!(pm.p(Simplex::vertex(1)), r(1, 2));
        assert_eq!(pm.p(Simplex::new(0b11)), r(0, 1));
        assert_eq!(pm.p(Simplex::new(0b111)), r(0, 1));
        assert_eq!(pm.top_dim(), Some(0));
        let ex = ParamMap::per_simplex(a, [(Simplex::new(0b11), r(1, 3))]).unwrap();
        assert_eq!(ex.q(Simplex::new(0b11)), r(2, 3));
        assert_eq!(ex.p(Simplex::vertex(0)), r(0, 1));
        assert_eq!(ex.top_dim(), Some(1));
    }

    #[test]
    fn rejects_bad_values() {
        let a = Ambient::simplex(2).unwrap();
        assert!(ParamMap::per_dimension(a, vec![r(3, 2)]).is_err());
        assert!(ParamMap::per_simplex(a, [(Simplex::new(0b1000), r(1, 2))]).is_err());
        assert!(ParamMap::exponent(a, &[0.5, -1.0]).is_err());
        assert!(ParamMap::exponent(a, &[]).is_err());
    }

    #[test]
    fn exponent_mode_materializes_powers() {
        let a = Ambient::simplex(50).unwrap();
        let pm = ParamMap::exponent(a, &[0.3, 0.5, 2.9]).unwrap();
        assert!((pm.dim_p(1).unwrap() - 50f64.powf(-0.5)).abs() < 1e-15);
        assert_eq!(pm.dim_p(3), Some(0.0));
        assert_eq!(pm.top_dim(), Some(2));
    }

    #[test]
    fn semantic_equality_across_modes() {
        let a = Ambient::boundary(2).unwrap();
        let pd = ParamMap::per_dimension(a, vec![r(1, 2), r(1, 3), r(1, 5)]).unwrap();
        let short = ParamMap::per_dimension(a, vec![r(1, 2), r(1, 3)]).unwrap();
        // dimension 2 does not exist in ∂Δ_2
        assert_eq!(pd, short);
        assert_eq!(pd.to_per_simplex().unwrap(), pd);
    }
}
