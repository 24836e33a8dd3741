//! Brute-force ground truth for small ambients: enumerate every hypergraph,
//! push the Bernoulli measure forward exactly, and compare against the
//! closed forms of [`crate::measures`].

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::Complex;
use crate::duality::dual_c;
use crate::error::{Error, Result};
use crate::measures::{
    dual_params, hypergraph_prob, intersection_params_lower, link_measure_upper, link_params_lower,
    lower_measure, sandwich_lower_routes, sandwich_upper_routes, union_params_upper, upper_measure,
    SandwichRoutes, DEFAULT_GUARD,
};
use crate::params::ParamMap;
use crate::prob::{format_rational, Probability};
use crate::simplex::{Ambient, Simplex};

/// At most `2^15` hypergraphs.
pub const MAX_ORACLE_SIMPLICES: u32 = 15;

type Q = BigRational;
type MeasureFn = fn(&Complex, &ParamMap<Q>) -> Result<Q>;

fn q(a: i64, b: i64) -> Q {
    Q::from_ratio(a, b)
}

/// Ambient simplices indexed `0..N`, with complexes encoded as `N`-bit masks.
struct Universe {
    amb: Ambient,
    simplices: Vec<Simplex>,
    /// Index mask of all nonempty faces of each simplex.
    down: Vec<u32>,
}

impl Universe {
    fn new(amb: Ambient) -> Result<Self> {
        let total = amb.total_simplices();
        if total > MAX_ORACLE_SIMPLICES as u128 {
            return Err(Error::EnumerationTooLarge(total as u64));
        }
        let simplices: Vec<Simplex> = amb.simplices().collect();
        let index: HashMap<Simplex, usize> = simplices.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let down = simplices
            .iter()
            .map(|s| s.faces().fold(0u32, |m, f| m | 1 << index[&f]))
            .collect();
        Ok(Universe { amb, simplices, down })
    }

    fn size(&self) -> usize {
        self.simplices.len()
    }

    fn bits(m: u32) -> impl Iterator<Item = usize> {
        (0..32).filter(move |i| m >> i & 1 == 1)
    }

    fn upper(&self, m: u32) -> u32 {
        Self::bits(m).fold(0, |acc, i| acc | self.down[i])
    }

    fn lower(&self, m: u32) -> u32 {
        Self::bits(m).filter(|&i| self.down[i] & !m == 0).fold(0, |acc, i| acc | 1 << i)
    }

    fn is_closed(&self, m: u32) -> bool {
        self.upper(m) == m
    }

    fn complex(&self, m: u32) -> Complex {
        Complex::from_set(self.amb, Self::bits(m).map(|i| self.simplices[i]).collect())
    }

    /// `P(X)` for every hypergraph mask `X`, built one simplex at a time.
    fn hypergraph_probs(&self, params: &ParamMap<Q>) -> Vec<Q> {
        let mut probs = vec![q(1, 1)];
        for &s in &self.simplices {
            let p = params.p(s);
            let qq = p.complement();
            let mut next: Vec<Q> = probs.iter().map(|x| x * &qq).collect();
            next.extend(probs.iter().map(|x| x * &p));
            probs = next;
        }
        probs
    }

    fn closed_masks(&self) -> Vec<u32> {
        (0..1u32 << self.size()).filter(|&m| self.is_closed(m)).collect()
    }
}

/// Every face-closed subset of the ambient, `∅` included, in mask order.
pub fn enumerate_complexes(amb: Ambient) -> Result<Vec<Complex>> {
    let u = Universe::new(amb)?;
    Ok(u.closed_masks().into_iter().map(|m| u.complex(m)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Closure {
    Lower,
    Upper,
}

/// A finitely supported law on complexes with exact masses.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactDistribution {
    pub ambient: Ambient,
    pub entries: BTreeMap<Complex, Q>,
}

impl ExactDistribution {
    pub fn get(&self, c: &Complex) -> Q {
        self.entries.get(c).cloned().unwrap_or_else(Q::zero)
    }

    pub fn total(&self) -> Q {
        Q::sum(self.entries.values())
    }

    /// `Σ_Y f(Y) P(Y)`.
    pub fn expectation(&self, f: impl Fn(&Complex) -> Q) -> Q {
        self.entries.iter().fold(Q::zero(), |acc, (c, p)| acc + f(c) * p)
    }

    /// Image law under `f`.
    pub fn map(&self, ambient: Ambient, f: impl Fn(&Complex) -> Complex) -> ExactDistribution {
        let mut entries: BTreeMap<Complex, Q> = BTreeMap::new();
        for (c, p) in &self.entries {
            *entries.entry(f(c)).or_insert_with(Q::zero) += p;
        }
        ExactDistribution { ambient, entries }
    }

    /// Law of `f(Y, Y')` for independent `Y ~ self`, `Y' ~ other`.
    pub fn combine(&self, other: &ExactDistribution, f: impl Fn(&Complex, &Complex) -> Complex) -> ExactDistribution {
        let mut entries: BTreeMap<Complex, Q> = BTreeMap::new();
        for (a, pa) in &self.entries {
            for (b, pb) in &other.entries {
                *entries.entry(f(a, b)).or_insert_with(Q::zero) += pa * pb;
            }
        }
        ExactDistribution { ambient: self.ambient, entries }
    }
}

/// Exact law of `lower_interior(X)` or `upper_closure(X)` for the Bernoulli
/// hypergraph `X`.
pub fn pushforward(model: Closure, params: &ParamMap<Q>) -> Result<ExactDistribution> {
    let u = Universe::new(params.ambient())?;
    let probs = u.hypergraph_probs(params);
    let acc: HashMap<u32, Q> = (0..probs.len() as u32)
        .into_par_iter()
        .fold(HashMap::new, |mut acc: HashMap<u32, Q>, x| {
            let p = &probs[x as usize];
            if !p.is_zero() {
                let y = match model {
                    Closure::Lower => u.lower(x),
                    Closure::Upper => u.upper(x),
                };
                *acc.entry(y).or_insert_with(Q::zero) += p;
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert_with(Q::zero) += v;
            }
            a
        });
    let entries = acc.into_iter().map(|(m, p)| (u.complex(m), p)).collect();
    Ok(ExactDistribution { ambient: u.amb, entries })
}

/// The identities the oracle can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// Pushforwards and closed-form point masses each sum to one.
    Normalization,
    /// Lower point-mass formula.
    Lower,
    /// Upper point-mass formula.
    Upper,
    SandwichLower,
    SandwichUpper,
    /// `Σ_{Y⊇K} P_(Y) = ∏_K p` and `Σ_{Y⊆K} P̄(Y) = ∏_{∉K} q`.
    Intrinsic,
    /// `P(c(X)) = P'(X)` for hypergraphs.
    DualHypergraph,
    /// `P̄(c(Y)) = P_'(Y)` and `P_(c(Y)) = P̄'(Y)`.
    DualMeasures,
    /// `c(upper_closure(X)) = lower_interior(c(X))`.
    ClosureDuality,
    LinkUpper,
    LinkLower,
    Union,
    Intersection,
}

impl Identity {
    pub const ALL: [Identity; 13] = [
        Identity::Normalization,
        Identity::Lower,
        Identity::Upper,
        Identity::SandwichLower,
        Identity::SandwichUpper,
        Identity::Intrinsic,
        Identity::DualHypergraph,
        Identity::DualMeasures,
        Identity::ClosureDuality,
        Identity::LinkUpper,
        Identity::LinkLower,
        Identity::Union,
        Identity::Intersection,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Normalization => "normalization",
            Identity::Lower => "lower",
            Identity::Upper => "upper",
            Identity::SandwichLower => "sandwich-lower",
            Identity::SandwichUpper => "sandwich-upper",
            Identity::Intrinsic => "intrinsic",
            Identity::DualHypergraph => "dual-hypergraph",
            Identity::DualMeasures => "dual-measures",
            Identity::ClosureDuality => "closure-duality",
            Identity::LinkUpper => "link-upper",
            Identity::LinkLower => "link-lower",
            Identity::Union => "union",
            Identity::Intersection => "intersection",
        }
    }

    pub fn parse(s: &str) -> Result<Identity> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown identity {s:?}")))
    }

    /// `"all"` or a comma-separated list of names.
    pub fn parse_list(s: &str) -> Result<Vec<Identity>> {
        if s.trim() == "all" {
            return Ok(Identity::ALL.to_vec());
        }
        s.split(',').map(Identity::parse).collect()
    }

    fn needs_boundary(self) -> bool {
        matches!(self, Identity::DualHypergraph | Identity::DualMeasures | Identity::ClosureDuality)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub description: String,
    pub complexes: Vec<Complex>,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum Outcome {
    Holds { cases: usize },
    Failed(Counterexample),
    NotApplicable { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub outcome: Outcome,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        !matches!(self.outcome, Outcome::Failed(_))
    }
}

/// Counts cases and keeps the first mismatch.
struct Checker {
    cases: usize,
    failure: Option<Counterexample>,
}

impl Checker {
    fn new() -> Self {
        Checker { cases: 0, failure: None }
    }

    fn eq(&mut self, description: impl FnOnce() -> String, complexes: &[&Complex], expected: &Q, actual: &Q) {
        self.cases += 1;
        if expected != actual && self.failure.is_none() {
            self.failure = Some(Counterexample {
                description: description(),
                complexes: complexes.iter().map(|c| (*c).clone()).collect(),
                expected: format_rational(expected),
                actual: format_rational(actual),
            });
        }
    }

    fn same(&mut self, description: impl FnOnce() -> String, complexes: &[&Complex], ok: bool) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(Counterexample {
                description: description(),
                complexes: complexes.iter().map(|c| (*c).clone()).collect(),
                expected: "equal".into(),
                actual: "different".into(),
            });
        }
    }

    fn outcome(self) -> Outcome {
        match self.failure {
            Some(c) => Outcome::Failed(c),
            None => Outcome::Holds { cases: self.cases },
        }
    }
}

/// Second parameter set for the union and intersection checks:
/// `p'_σ = (1 + p_σ) / 3`, which keeps `p'` strictly inside `(0, 1)`.
pub fn partner_params(params: &ParamMap<Q>) -> Result<ParamMap<Q>> {
    let amb = params.ambient();
    ParamMap::per_simplex(amb, amb.simplices().map(|s| (s, (q(1, 1) + params.p(s)) / q(3, 1))))
}

/// Parameter sets used by default: uniform, per-dimension, per-simplex, and
/// one with certain and impossible simplices.
pub fn default_param_sets(amb: Ambient) -> Result<Vec<(String, ParamMap<Q>)>> {
    let dims = (0..=amb.n()).map(|d| q(d as i64 + 1, 2 * d as i64 + 3)).collect();
    Ok(vec![
        ("uniform-1/2".into(), ParamMap::uniform(amb, q(1, 2))?),
        ("per-dimension".into(), ParamMap::per_dimension(amb, dims)?),
        (
            "per-simplex".into(),
            ParamMap::per_simplex(amb, amb.simplices().map(|s| (s, q((s.mask() % 7) as i64 + 1, 9))))?,
        ),
        (
            "degenerate".into(),
            ParamMap::per_simplex(
                amb,
                amb.simplices().map(|s| {
                    let p = match s.mask() % 5 {
                        0 => q(0, 1),
                        1 => q(1, 1),
                        m => q(m as i64, 6),
                    };
                    (s, p)
                }),
            )?,
        ),
    ])
}

struct Context<'a> {
    u: Universe,
    params: &'a ParamMap<Q>,
    closed: Vec<u32>,
    complexes: Vec<Complex>,
    lower: ExactDistribution,
    upper: ExactDistribution,
}

impl Context<'_> {
    fn masses(&self, dist: &ExactDistribution) -> Vec<Q> {
        self.complexes.iter().map(|c| dist.get(c)).collect()
    }
}

/// Checks each identity exactly on every enumerable instance.
pub fn verify_identities(params: &ParamMap<Q>, identities: &[Identity]) -> Result<Vec<IdentityReport>> {
    let u = Universe::new(params.ambient())?;
    let closed = u.closed_masks();
    let complexes: Vec<Complex> = closed.iter().map(|&m| u.complex(m)).collect();
    let ctx = Context {
        lower: pushforward(Closure::Lower, params)?,
        upper: pushforward(Closure::Upper, params)?,
        u,
        params,
        closed,
        complexes,
    };
    identities
        .iter()
        .map(|&identity| {
            let outcome = if identity.needs_boundary() && !ctx.u.amb.is_boundary() {
                Outcome::NotApplicable { reason: "requires a ∂Δ_n ambient".into() }
            } else {
                run(identity, &ctx)?
            };
            Ok(IdentityReport { identity, outcome })
        })
        .collect()
}

fn run(identity: Identity, ctx: &Context) -> Result<Outcome> {
    let params = ctx.params;
    let mut ck = Checker::new();
    match identity {
        Identity::Normalization => {
            let one = q(1, 1);
            ck.eq(|| "lower pushforward mass".into(), &[], &one, &ctx.lower.total());
            ck.eq(|| "upper pushforward mass".into(), &[], &one, &ctx.upper.total());
            let lo: Vec<Q> = ctx.complexes.iter().map(|c| lower_measure(c, params)).collect::<Result<_>>()?;
            let up: Vec<Q> = ctx.complexes.iter().map(|c| upper_measure(c, params)).collect::<Result<_>>()?;
            ck.eq(|| "Σ lower_measure".into(), &[], &one, &Q::sum(&lo));
            ck.eq(|| "Σ upper_measure".into(), &[], &one, &Q::sum(&up));
        }
        Identity::Lower | Identity::Upper => {
            let (dist, f): (_, MeasureFn) = if identity == Identity::Lower {
                (&ctx.lower, lower_measure)
            } else {
                (&ctx.upper, upper_measure)
            };
            for c in &ctx.complexes {
                ck.eq(|| format!("{identity} point mass"), &[c], &dist.get(c), &f(c, params)?);
            }
        }
        Identity::SandwichLower | Identity::SandwichUpper => {
            let lower = identity == Identity::SandwichLower;
            let masses = ctx.masses(if lower { &ctx.lower } else { &ctx.upper });
            for (ia, &a) in ctx.closed.iter().enumerate() {
                for (ib, &b) in ctx.closed.iter().enumerate() {
                    if a & !b != 0 {
                        continue;
                    }
                    let oracle = ctx
                        .closed
                        .iter()
                        .zip(&masses)
                        .filter(|(&y, _)| a & !y == 0 && y & !b == 0)
                        .fold(Q::zero(), |acc, (_, p)| acc + p);
                    let (ca, cb) = (&ctx.complexes[ia], &ctx.complexes[ib]);
                    let routes: SandwichRoutes<Q> = if lower {
                        sandwich_lower_routes(ca, cb, params, DEFAULT_GUARD)?
                    } else {
                        sandwich_upper_routes(ca, cb, params, DEFAULT_GUARD)?
                    };
                    ck.eq(|| format!("{identity} general route"), &[ca, cb], &oracle, &routes.general);
                    if let Some(v) = &routes.product {
                        ck.eq(|| format!("{identity} product route"), &[ca, cb], &oracle, v);
                    }
                    if let Some(v) = &routes.closed_form {
                        ck.eq(|| format!("{identity} closed-form route"), &[ca, cb], &oracle, v);
                    }
                }
            }
        }
        Identity::Intrinsic => {
            let lo = ctx.masses(&ctx.lower);
            let up = ctx.masses(&ctx.upper);
            for (ik, &k) in ctx.closed.iter().enumerate() {
                let kc = &ctx.complexes[ik];
                let above = ctx.closed.iter().zip(&lo).filter(|(&y, _)| k & !y == 0).fold(Q::zero(), |a, (_, p)| a + p);
                let p_k = Q::product(&params.p_factors(kc.iter(), false));
                ck.eq(|| "Σ_{Y⊇K} lower mass".into(), &[kc], &p_k, &above);
                let below = ctx.closed.iter().zip(&up).filter(|(&y, _)| y & !k == 0).fold(Q::zero(), |a, (_, p)| a + p);
                let q_k = Q::product(&params.q_outside_factors(kc));
                ck.eq(|| "Σ_{Y⊆K} upper mass".into(), &[kc], &q_k, &below);
            }
        }
        Identity::DualHypergraph => {
            let dp = dual_params(params)?;
            for x in 0..1u32 << ctx.u.size() {
                let xc = ctx.u.complex(x);
                let cx = dual_c(&xc)?;
                ck.eq(|| "P(c(X)) = P'(X)".into(), &[&xc], &hypergraph_prob(&cx, params)?, &hypergraph_prob(&xc, &dp)?);
            }
        }
        Identity::DualMeasures => {
            let dp = dual_params(params)?;
            for y in &ctx.complexes {
                let cy = dual_c(y)?;
                ck.eq(|| "upper(c(Y), P) = lower(Y, P')".into(), &[y], &upper_measure(&cy, params)?, &lower_measure(y, &dp)?);
                ck.eq(|| "lower(c(Y), P) = upper(Y, P')".into(), &[y], &lower_measure(&cy, params)?, &upper_measure(y, &dp)?);
            }
        }
        Identity::ClosureDuality => {
            for x in 0..1u32 << ctx.u.size() {
                let xc = ctx.u.complex(x);
                let lhs = dual_c(&xc.upper_closure())?;
                let rhs = dual_c(&xc)?.lower_interior();
                ck.same(|| "c(upper(X)) = lower(c(X))".into(), &[&xc], lhs == rhs);
            }
        }
        Identity::LinkUpper | Identity::LinkLower => {
            let upper = identity == Identity::LinkUpper;
            let dist = if upper { &ctx.upper } else { &ctx.lower };
            for &sigma in &ctx.u.simplices {
                let frame = match crate::complex::LinkFrame::new(ctx.u.amb, sigma) {
                    Ok(f) => f,
                    Err(Error::EmptyLinkAmbient(_)) => continue,
                    Err(e) => return Err(e),
                };
                let present: Q = dist.entries.iter().filter(|(y, _)| y.contains(sigma)).fold(Q::zero(), |a, (_, p)| a + p);
                if present.is_zero() {
                    continue;
                }
                let mut conditional: BTreeMap<Complex, Q> = BTreeMap::new();
                for (y, p) in dist.entries.iter().filter(|(y, _)| y.contains(sigma)) {
                    *conditional.entry(y.link(sigma)?).or_insert_with(Q::zero) += p / &present;
                }
                let link_complexes = enumerate_complexes(frame.ambient())?;
                if upper {
                    let mix = link_measure_upper(params, sigma)?;
                    for l in &link_complexes {
                        let got = conditional.get(l).cloned().unwrap_or_else(Q::zero);
                        ck.eq(|| format!("upper link of {sigma}"), &[l], &got, &mix.measure(l)?);
                    }
                } else {
                    let lp = link_params_lower(params, sigma)?;
                    for l in &link_complexes {
                        let got = conditional.get(l).cloned().unwrap_or_else(Q::zero);
                        ck.eq(|| format!("lower link of {sigma}"), &[l], &got, &lower_measure(l, &lp)?);
                    }
                }
            }
        }
        Identity::Union | Identity::Intersection => {
            let partner = partner_params(params)?;
            let amb = ctx.u.amb;
            let (law, combined) = if identity == Identity::Union {
                let other = pushforward(Closure::Upper, &partner)?;
                let law = ctx.upper.combine(&other, |a, b| a.union(b).expect("same ambient"));
                (law, union_params_upper(params, &partner)?)
            } else {
                let other = pushforward(Closure::Lower, &partner)?;
                let law = ctx.lower.combine(&other, |a, b| a.intersection(b).expect("same ambient"));
                (law, intersection_params_lower(params, &partner)?)
            };
            debug_assert_eq!(law.ambient, amb);
            for y in &ctx.complexes {
                let formula = if identity == Identity::Union {
                    upper_measure(y, &combined)?
                } else {
                    lower_measure(y, &combined)?
                };
                ck.eq(|| format!("{identity} law"), &[y], &law.get(y), &formula);
            }
        }
    }
    Ok(ck.outcome())
}

/// Complexes carrying positive mass, as a set; handy for support checks.
pub fn support(dist: &ExactDistribution) -> HashSet<Complex> {
    dist.entries.iter().filter(|(_, p)| !p.is_zero()).map(|(c, _)| c.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half(a: Ambient) -> ParamMap<Q> {
        ParamMap::uniform(a, q(1, 2)).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        let d1 = enumerate_complexes(Ambient::simplex(1).unwrap()).unwrap();
        assert_eq!(d1.len(), 5);
        assert_eq!(enumerate_complexes(Ambient::simplex(0).unwrap()).unwrap().len(), 2);
        let b2 = enumerate_complexes(Ambient::boundary(2).unwrap()).unwrap();
        let a = Ambient::boundary(2).unwrap();
        assert!(b2.contains(&Complex::full(a)));
        for v in 0..3 {
            assert!(b2.contains(&Complex::from_simplices(a, [Simplex::vertex(v)]).unwrap()));
        }
        assert!(enumerate_complexes(Ambient::simplex(4).unwrap()).is_err());
    }

    #[test]
    fn pushforwards_at_n1() {
        let a = Ambient::simplex(1).unwrap();
        let cx = |l: &[&[u32]]| Complex::from_vertex_lists(a, l).unwrap();
        let up = pushforward(Closure::Upper, &half(a)).unwrap();
        assert_eq!(up.get(&Complex::full(a)), q(1, 2));
        for c in [Complex::empty(a), cx(&[&[0]]), cx(&[&[1]]), cx(&[&[0], &[1]])] {
            assert_eq!(up.get(&c), q(1, 8));
        }
        let lo = pushforward(Closure::Lower, &half(a)).unwrap();
        assert_eq!(lo.get(&Complex::empty(a)), q(1, 4));
        assert_eq!(lo.get(&cx(&[&[1]])), q(1, 4));
        assert_eq!(lo.get(&cx(&[&[0], &[1]])), q(1, 8));
        assert_eq!(lo.get(&Complex::full(a)), q(1, 8));
        let certain = ParamMap::uniform(a, q(1, 1)).unwrap();
        for model in [Closure::Lower, Closure::Upper] {
            let d = pushforward(model, &certain).unwrap();
            assert_eq!(d.get(&Complex::full(a)), q(1, 1));
            assert_eq!(support(&d).len(), 1);
        }
    }

    #[test]
    fn all_identities_hold_at_n1_and_boundary_2() {
        for amb in [Ambient::simplex(1).unwrap(), Ambient::boundary(2).unwrap()] {
            for (name, params) in default_param_sets(amb).unwrap() {
                for r in verify_identities(&params, &Identity::ALL).unwrap() {
                    assert!(r.holds(), "{amb} {name}: {r:?}");
                }
            }
        }
    }

    #[test]
    fn identity_names_round_trip() {
        for i in Identity::ALL {
            assert_eq!(Identity::parse(i.name()).unwrap(), i);
        }
        assert_eq!(Identity::parse_list("all").unwrap().len(), 13);
        assert!(Identity::parse_list("lower,bogus").is_err());
    }

    #[test]
    fn a_wrong_formula_is_caught() {
        let a = Ambient::simplex(1).unwrap();
        let mut ck = Checker::new();
        ck.eq(|| "x".into(), &[&Complex::empty(a)], &q(1, 2), &q(1, 3));
        assert!(matches!(ck.outcome(), Outcome::Failed(_)));
    }
}
