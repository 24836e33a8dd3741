//! Exact point masses and sandwich probabilities for the lower and upper
//! models, plus the parameter calculus for duals, links, unions and
//! intersections.

use std::collections::{BTreeMap, HashMap};

use crate::combinatorics::binomial;
use crate::complex::{Complex, LinkFrame};
use crate::duality::MAX_DUAL_N;
use crate::error::{Error, Result};
use crate::params::{Exponents, ParamMap, ParamValues};
use crate::prob::{Factor, Probability};
use crate::simplex::Simplex;

/// Default cap on `log2` of the number of inclusion-exclusion terms.
pub const DEFAULT_GUARD: u32 = 24;

fn check_ambient<P: Probability>(y: &Complex, params: &ParamMap<P>) -> Result<()> {
    if y.ambient() != params.ambient() {
        return Err(Error::AmbientMismatch(y.ambient().to_string(), params.ambient().to_string()));
    }
    Ok(())
}

fn require_closed(y: &Complex, what: &'static str) -> Result<()> {
    if y.is_closed() {
        Ok(())
    } else {
        Err(Error::NotFaceClosed(what))
    }
}

/// `∏_{σ∈X} p_σ · ∏_{σ∉X} q_σ`.
pub fn hypergraph_prob<P: Probability>(x: &Complex, params: &ParamMap<P>) -> Result<P> {
    check_ambient(x, params)?;
    let mut f = params.p_factors(x.iter(), false);
    f.extend(params.q_outside_factors(x));
    Ok(P::product(&f))
}

/// `∏_{σ∈Y} p_σ · ∏_{σ∈E(Y)} q_σ`.
pub fn lower_measure<P: Probability>(y: &Complex, params: &ParamMap<P>) -> Result<P> {
    check_ambient(y, params)?;
    require_closed(y, "lower_measure")?;
    let mut f = params.p_factors(y.iter(), false);
    f.extend(params.p_factors(y.external_faces()?, true));
    Ok(P::product(&f))
}

/// `∏_{σ∉Y} q_σ · ∏_{σ∈M(Y)} p_σ`.
pub fn upper_measure<P: Probability>(y: &Complex, params: &ParamMap<P>) -> Result<P> {
    check_ambient(y, params)?;
    require_closed(y, "upper_measure")?;
    let mut f = params.q_outside_factors(y);
    f.extend(params.p_factors(y.maximal_faces()?, false));
    Ok(P::product(&f))
}

/// `Σ_{S ⊆ [m]} (-1)^{|S|} ∏_{i ∈ ∪_{j∈S} sets[j]} values[i]`, with a Gray
/// code walk that adds or removes one set per step.
fn inclusion_exclusion<P: Probability>(sets: &[Vec<usize>], values: &[P]) -> P {
    let m = sets.len();
    let mut cover = vec![0u32; values.len()];
    let mut prod = P::one();
    let mut zeros = 0usize;
    let mut gray = 0u64;
    let mut total = P::one();
    for step in 1..(1u64 << m) {
        let j = step.trailing_zeros() as usize;
        gray ^= 1 << j;
        let adding = gray >> j & 1 == 1;
        for &i in &sets[j] {
            if adding {
                cover[i] += 1;
                if cover[i] == 1 {
                    if values[i].is_zero() {
                        zeros += 1;
                    } else {
                        prod = prod.mul(&values[i]);
                    }
                }
            } else {
                cover[i] -= 1;
                if cover[i] == 0 {
                    if values[i].is_zero() {
                        zeros -= 1;
                    } else {
                        prod = prod.div(&values[i]).expect("nonzero divisor");
                    }
                }
            }
        }
        if zeros == 0 {
            total = if gray.count_ones() % 2 == 1 { total.sub(&prod) } else { total.add(&prod) };
        }
    }
    total
}

/// Interns simplices into index lists for `inclusion_exclusion`.
struct WorkingSets<P> {
    index: HashMap<Simplex, usize>,
    values: Vec<P>,
    sets: Vec<Vec<usize>>,
}

impl<P: Probability> WorkingSets<P> {
    fn new() -> Self {
        WorkingSets { index: HashMap::new(), values: Vec::new(), sets: Vec::new() }
    }

    fn push(&mut self, members: impl IntoIterator<Item = Simplex>, value: impl Fn(Simplex) -> P) {
        let mut set = Vec::new();
        for t in members {
            let next = self.values.len();
            let i = *self.index.entry(t).or_insert(next);
            if i == next {
                self.values.push(value(t));
            }
            set.push(i);
        }
        self.sets.push(set);
    }

    fn disjoint(&self) -> bool {
        self.sets.iter().map(Vec::len).sum::<usize>() == self.values.len()
    }

    /// `∏_j (1 - ∏_{i∈sets[j]} values[i])`, valid when the sets are disjoint.
    fn product_form(&self) -> P {
        self.sets.iter().fold(P::one(), |acc, set| {
            let f: Vec<Factor<P>> = set.iter().map(|&i| Factor::p(self.values[i].clone(), 1)).collect();
            acc.mul(&P::product(&f).complement())
        })
    }
}

/// All evaluation routes of a sandwich probability; the fast paths are
/// `None` when their hypotheses fail.
#[derive(Clone, Debug, PartialEq)]
pub struct SandwichRoutes<P> {
    pub general: P,
    pub product: Option<P>,
    pub closed_form: Option<P>,
}

impl<P: Probability> SandwichRoutes<P> {
    /// The value reported by `sandwich_lower`/`sandwich_upper`.
    pub fn value(&self) -> P {
        self.closed_form.clone().or_else(|| self.product.clone()).unwrap_or_else(|| self.general.clone())
    }
}

fn check_sandwich<P: Probability>(a: &Complex, b: &Complex, params: &ParamMap<P>) -> Result<()> {
    check_ambient(a, params)?;
    check_ambient(b, params)?;
    require_closed(a, "sandwich lower bound")?;
    require_closed(b, "sandwich upper bound")?;
    if !a.is_subset(b) {
        return Err(Error::NotNested);
    }
    Ok(())
}

fn check_guard(terms: usize, guard: u32) -> Result<()> {
    if terms > guard as usize {
        return Err(Error::GuardExceeded { terms, guard: guard as usize });
    }
    Ok(())
}

/// `P(A ⊆ Y ⊆ B)` under the lower model, by every applicable route.
pub fn sandwich_lower_routes<P: Probability>(
    a: &Complex,
    b: &Complex,
    params: &ParamMap<P>,
    guard: u32,
) -> Result<SandwichRoutes<P>> {
    check_sandwich(a, b, params)?;
    let eb = b.external_faces()?;
    check_guard(eb.len(), guard)?;
    let mut ws = WorkingSets::new();
    for &s in &eb {
        ws.push(s.faces().filter(|t| !a.contains(*t)), |t| params.p(t));
    }
    let p_a = P::product(&params.p_factors(a.iter(), false));
    let general = p_a.mul(&inclusion_exclusion(&ws.sets, &ws.values));
    let product = ws.disjoint().then(|| p_a.mul(&ws.product_form()));
    let ea = a.external_faces()?;
    let closed_form = eb.iter().all(|s| ea.binary_search_by(|x| cmp_dim(x, s)).is_ok()).then(|| {
        let mut f = params.p_factors(a.iter(), false);
        f.extend(params.p_factors(eb.iter().copied(), true));
        P::product(&f)
    });
    Ok(SandwichRoutes { general, product, closed_form })
}

/// `P(A ⊆ Y ⊆ B)` under the upper model, by every applicable route.
pub fn sandwich_upper_routes<P: Probability>(
    a: &Complex,
    b: &Complex,
    params: &ParamMap<P>,
    guard: u32,
) -> Result<SandwichRoutes<P>> {
    check_sandwich(a, b, params)?;
    let ma = a.maximal_faces()?;
    check_guard(ma.len(), guard)?;
    let mut ws = WorkingSets::new();
    for &s in &ma {
        ws.push(b.iter().filter(|t| s.is_face_of(*t)), |t| params.q(t));
    }
    let q_b = P::product(&params.q_outside_factors(b));
    let general = q_b.mul(&inclusion_exclusion(&ws.sets, &ws.values));
    let product = ws.disjoint().then(|| q_b.mul(&ws.product_form()));
    let mb = b.maximal_faces()?;
    let closed_form = ma.iter().all(|s| mb.binary_search_by(|x| cmp_dim(x, s)).is_ok()).then(|| {
        let mut f = params.q_outside_factors(b);
        f.extend(params.p_factors(ma.iter().copied(), false));
        P::product(&f)
    });
    Ok(SandwichRoutes { general, product, closed_form })
}

// Face lists are sorted by dimension, then mask.
fn cmp_dim(x: &Simplex, y: &Simplex) -> std::cmp::Ordering {
    (x.dim(), x.mask()).cmp(&(y.dim(), y.mask()))
}

/// `P(A ⊆ Y ⊆ B)` for the lower random complex `Y`.
pub fn sandwich_lower<P: Probability>(a: &Complex, b: &Complex, params: &ParamMap<P>) -> Result<P> {
    Ok(sandwich_lower_routes(a, b, params, DEFAULT_GUARD)?.value())
}

/// `P(A ⊆ Y ⊆ B)` for the upper random complex `Y`.
pub fn sandwich_upper<P: Probability>(a: &Complex, b: &Complex, params: &ParamMap<P>) -> Result<P> {
    Ok(sandwich_upper_routes(a, b, params, DEFAULT_GUARD)?.value())
}

/// `P(σ ∈ Y)` in the upper model: `1 - ∏_{τ⊇σ} q_τ`.
pub fn prob_simplex_in_upper<P: Probability>(sigma: Simplex, params: &ParamMap<P>) -> Result<P> {
    let amb = params.ambient();
    amb.check(sigma)?;
    let f: Vec<Factor<P>> = match params.values() {
        ParamValues::PerDimension { probs, .. } => {
            let k = sigma.dim();
            let n = amb.n();
            probs
                .iter()
                .enumerate()
                .skip(k as usize)
                .filter(|&(d, _)| d as u32 <= n)
                .map(|(d, p)| {
                    let d = d as u32;
                    let mut c = binomial((n - k) as u64, (d - k) as u64).unwrap() as u64;
                    if d == n && !amb.include_top() {
                        c -= 1;
                    }
                    Factor::q(p.clone(), c)
                })
                .collect()
        }
        ParamValues::PerSimplex(map) => map
            .iter()
            .filter(|(t, _)| sigma.is_face_of(**t))
            .map(|(_, p)| Factor::q(p.clone(), 1))
            .collect(),
    };
    Ok(P::product(&f).complement())
}

/// Parameters of the dual model: `p'_σ = 1 - p_{σ̂}`.
pub fn dual_params<P: Probability>(params: &ParamMap<P>) -> Result<ParamMap<P>> {
    let amb = params.ambient();
    amb.require_boundary("dual_params")?;
    let n = amb.n();
    match params.values() {
        ParamValues::PerDimension { .. } => {
            // dimensions 0..=n-1 of ∂Δ_n, flipped i ↦ n-1-i
            let probs = (0..n).map(|i| params.dim_p(n - 1 - i).unwrap().complement()).collect();
            ParamMap::per_dimension(amb, probs)
        }
        ParamValues::PerSimplex(_) => {
            if n > MAX_DUAL_N {
                return Err(Error::EnumerationTooLarge(amb.total_simplices() as u64));
            }
            let full = amb.vertex_mask();
            ParamMap::per_simplex(
                amb,
                amb.simplices().map(|s| (s, params.q(Simplex::new(full & !s.mask())))),
            )
        }
    }
}

/// Parameters of the lower model induced on the link of `σ`:
/// `p'_τ = p_τ · ∏_{∅≠ν⊆σ} p_{ντ}`, over the ambient spanned by `[n] - σ`.
pub fn link_params_lower<P: Probability>(params: &ParamMap<P>, sigma: Simplex) -> Result<ParamMap<P>> {
    let frame = LinkFrame::new(params.ambient(), sigma)?;
    let link_amb = frame.ambient();
    let k = sigma.dim();
    match params.values() {
        ParamValues::PerDimension { exponents, .. } => {
            let probs_out = (0..=link_amb.n())
                .map(|i| {
                    let mut f = vec![Factor::p(params.dim_p(i).unwrap(), 1)];
                    for j in 0..=k {
                        let e = binomial(k as u64 + 1, j as u64 + 1).unwrap() as u64;
                        f.push(Factor::p(params.dim_p(i + j + 1).unwrap(), e));
                    }
                    P::product(&f)
                })
                .collect::<Vec<P>>();
            let exponents = exponents.as_ref().map(|ex| {
                let len = ex.alpha.len().saturating_sub(k as usize + 1);
                let alpha = (0..len)
                    .map(|i| {
                        ex.alpha[i]
                            + (0..=k as usize)
                                .map(|j| binomial(k as u64 + 1, j as u64 + 1).unwrap() as f64 * ex.alpha[i + j + 1])
                                .sum::<f64>()
                    })
                    .collect();
                Exponents { base: ex.base, alpha }
            });
            Ok(ParamMap::with_values(link_amb, ParamValues::PerDimension { probs: probs_out, exponents }))
        }
        ParamValues::PerSimplex(_) => {
            if link_amb.n() > MAX_DUAL_N {
                return Err(Error::EnumerationTooLarge(link_amb.total_simplices() as u64));
            }
            let faces: Vec<Simplex> = sigma.faces().collect();
            let entries = link_amb.simplices().map(|t| {
                let tau = frame.from_link(t);
                let mut f = vec![Factor::p(params.p(tau), 1)];
                f.extend(faces.iter().map(|nu| Factor::p(params.p(nu.union(tau)), 1)));
                (t, P::product(&f))
            });
            ParamMap::per_simplex(link_amb, entries.collect::<Vec<_>>())
        }
    }
}

/// The upper-model measure on links of `σ`, conditioned on `σ ∈ Y`:
/// `c_σ P̄' + (1 - c_σ) λ_∅`.
#[derive(Clone, Debug)]
pub struct LinkMixture<P> {
    pub c: P,
    pub params: ParamMap<P>,
    pub frame: LinkFrame,
}

impl<P: Probability> LinkMixture<P> {
    /// Mass of the link complex `l` (over `frame.ambient()`).
    pub fn measure(&self, l: &Complex) -> Result<P> {
        let base = self.c.mul(&upper_measure(l, &self.params)?);
        Ok(if l.is_empty() { base.add(&P::one().sub(&self.c)) } else { base })
    }
}

pub fn link_measure_upper<P: Probability>(params: &ParamMap<P>, sigma: Simplex) -> Result<LinkMixture<P>> {
    let frame = LinkFrame::new(params.ambient(), sigma)?;
    let present = prob_simplex_in_upper(sigma, params)?;
    let c = P::one().div(&present).ok_or(Error::ZeroProbability(sigma))?;
    let link_amb = frame.ambient();
    let shift = sigma.len();
    let link_params = match params.values() {
        ParamValues::PerDimension { exponents, .. } => {
            let probs = (0..=link_amb.n()).map(|i| params.dim_p(i + shift).unwrap()).collect();
            let exponents = exponents.as_ref().map(|ex| Exponents {
                base: ex.base,
                alpha: ex.alpha.iter().skip(shift as usize).copied().collect(),
            });
            ParamMap::with_values(link_amb, ParamValues::PerDimension { probs, exponents })
        }
        ParamValues::PerSimplex(map) => {
            let entries: BTreeMap<Simplex, P> = map
                .iter()
                .filter(|(t, _)| sigma.is_face_of(**t) && **t != sigma)
                .map(|(t, p)| (frame.to_link(Simplex::new(t.mask() & !sigma.mask())), p.clone()))
                .filter(|(t, _)| link_amb.contains(*t))
                .collect();
            ParamMap::with_values(link_amb, ParamValues::PerSimplex(entries))
        }
    };
    Ok(LinkMixture { c, params: link_params, frame })
}

fn combine<P: Probability>(
    a: &ParamMap<P>,
    b: &ParamMap<P>,
    op: impl Fn(&P, &P) -> P,
) -> Result<ParamMap<P>> {
    if a.ambient() != b.ambient() {
        return Err(Error::AmbientMismatch(a.ambient().to_string(), b.ambient().to_string()));
    }
    let amb = a.ambient();
    match (a.values(), b.values()) {
        (ParamValues::PerDimension { .. }, ParamValues::PerDimension { .. }) => {
            let probs = (0..=amb.n()).map(|d| op(&a.dim_p(d).unwrap(), &b.dim_p(d).unwrap())).collect();
            ParamMap::per_dimension(amb, probs)
        }
        _ => {
            let mut keys: Vec<Simplex> = a.support()?.into_iter().map(|(s, _)| s).collect();
            keys.extend(b.support()?.into_iter().map(|(s, _)| s));
            keys.sort_unstable();
            keys.dedup();
            ParamMap::per_simplex(amb, keys.into_iter().map(|s| (s, op(&a.p(s), &b.p(s)))))
        }
    }
}

/// Parameters of `Y ∪ Y'` for independent upper complexes: `q'' = q q'`.
pub fn union_params_upper<P: Probability>(a: &ParamMap<P>, b: &ParamMap<P>) -> Result<ParamMap<P>> {
    combine(a, b, |p, r| p.complement().mul(&r.complement()).complement())
}

/// Parameters of `Y ∩ Y'` for independent lower complexes: `p'' = p p'`.
pub fn intersection_params_lower<P: Probability>(a: &ParamMap<P>, b: &ParamMap<P>) -> Result<ParamMap<P>> {
    combine(a, b, |p, r| p.mul(r))
}
