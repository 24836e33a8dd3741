//! Hypergraphs and simplicial complexes over a fixed ambient.
//!
//! A [`Complex`] is any finite set of ambient simplices; whether it is
//! face-closed is computed once at construction and cached. Operations that
//! only make sense for simplicial complexes (external and maximal faces,
//! links, homology) check the flag and fail otherwise.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::simplex::{Ambient, Simplex};

#[derive(Clone)]
pub struct Complex {
    ambient: Ambient,
    set: HashSet<Simplex>,
    by_dim: Vec<Vec<Simplex>>,
    closed: bool,
}

impl Complex {
    /// Builds a hypergraph from simplices, dropping repeats.
    pub fn from_simplices<I: IntoIterator<Item = Simplex>>(ambient: Ambient, it: I) -> Result<Self> {
        let mut set = HashSet::new();
        for s in it {
            set.insert(ambient.check(s)?);
        }
        Ok(Self::from_set(ambient, set))
    }

    /// Convenience for literals: each inner slice is a vertex list.
    pub fn from_vertex_lists(ambient: Ambient, lists: &[&[u32]]) -> Result<Self> {
        let simplices = lists
            .iter()
            .map(|l| Simplex::from_vertices(l.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_simplices(ambient, simplices)
    }

    pub fn empty(ambient: Ambient) -> Self {
        Self::from_set(ambient, HashSet::new())
    }

    /// Every simplex of the ambient (`Δ_n` or `∂Δ_n` itself).
    pub fn full(ambient: Ambient) -> Self {
        Self::from_set(ambient, ambient.simplices().collect())
    }

    pub(crate) fn from_set(ambient: Ambient, set: HashSet<Simplex>) -> Self {
        let top = set.iter().map(|s| s.dim() as usize).max();
        let mut by_dim: Vec<Vec<Simplex>> = vec![Vec::new(); top.map_or(0, |d| d + 1)];
        for &s in &set {
            by_dim[s.dim() as usize].push(s);
        }
        for layer in &mut by_dim {
            layer.sort_unstable();
        }
        let closed = by_dim
            .iter()
            .skip(1)
            .flatten()
            .all(|s| s.facets().all(|f| set.contains(&f)));
        Complex { ambient, set, by_dim, closed }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn contains(&self, s: Simplex) -> bool {
        self.set.contains(&s)
    }

    /// Whether the set is face-closed, i.e. a simplicial complex.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Dimension of the largest simplex, `None` for the empty complex.
    pub fn dim(&self) -> Option<u32> {
        self.by_dim.len().checked_sub(1).map(|d| d as u32)
    }

    /// Simplices of dimension `d`, sorted.
    pub fn of_dim(&self, d: u32) -> &[Simplex] {
        self.by_dim.get(d as usize).map_or(&[], |v| v.as_slice())
    }

    /// All simplices, by dimension and then in mask order.
    pub fn iter(&self) -> impl Iterator<Item = Simplex> + '_ {
        self.by_dim.iter().flatten().copied()
    }

    pub fn is_subset(&self, other: &Complex) -> bool {
        self.ambient == other.ambient && self.set.iter().all(|s| other.set.contains(s))
    }

    pub fn union(&self, other: &Complex) -> Result<Complex> {
        self.same_ambient(other)?;
        Ok(Self::from_set(self.ambient, self.set.union(&other.set).copied().collect()))
    }

    pub fn intersection(&self, other: &Complex) -> Result<Complex> {
        self.same_ambient(other)?;
        Ok(Self::from_set(
            self.ambient,
            self.set.intersection(&other.set).copied().collect(),
        ))
    }

    pub(crate) fn same_ambient(&self, other: &Complex) -> Result<()> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(Error::AmbientMismatch(self.ambient.to_string(), other.ambient.to_string()))
        }
    }

    fn require_closed(&self, op: &'static str) -> Result<()> {
        if self.closed {
            Ok(())
        } else {
            Err(Error::NotFaceClosed(op))
        }
    }

    /// Smallest simplicial complex containing the hypergraph.
    pub fn upper_closure(&self) -> Complex {
        if self.closed {
            return self.clone();
        }
        let mut set: HashSet<Simplex> = HashSet::with_capacity(self.set.len() * 2);
        // Descend one dimension at a time so each face is produced from its cofacets.
        let mut layer: Vec<Simplex> = Vec::new();
        for d in (0..self.by_dim.len()).rev() {
            let mut next: Vec<Simplex> = Vec::new();
            for &s in self.by_dim[d].iter().chain(layer.iter()) {
                if set.insert(s) {
                    next.extend(s.facets());
                }
            }
            layer = next;
        }
        Self::from_set(self.ambient, set)
    }

    /// Largest simplicial complex contained in the hypergraph.
    pub fn lower_interior(&self) -> Complex {
        if self.closed {
            return self.clone();
        }
        let mut set: HashSet<Simplex> = HashSet::with_capacity(self.set.len());
        for layer in &self.by_dim {
            let keep: Vec<Simplex> = layer
                .iter()
                .copied()
                .filter(|s| s.facets().all(|f| set.contains(&f)))
                .collect();
            if keep.is_empty() {
                break;
            }
            set.extend(keep);
        }
        Self::from_set(self.ambient, set)
    }

    /// External simplices: ambient simplices outside the complex whose proper
    /// faces all lie in it. Every ambient vertex not in the complex counts.
    pub fn external_faces(&self) -> Result<Vec<Simplex>> {
        self.require_closed("external_faces")?;
        let amb = self.ambient;
        let mut out: Vec<Simplex> = (0..amb.vertex_count())
            .map(Simplex::vertex)
            .filter(|&v| amb.contains(v) && !self.contains(v))
            .collect();
        for layer in &self.by_dim {
            let mut found = Vec::new();
            for &tau in layer {
                // Generate each candidate once: from the facet missing its top vertex.
                for v in tau.max_vertex() + 1..amb.vertex_count() {
                    let sigma = tau.union(Simplex::vertex(v));
                    if amb.contains(sigma)
                        && !self.contains(sigma)
                        && sigma.facets().all(|f| self.contains(f))
                    {
                        found.push(sigma);
                    }
                }
            }
            found.sort_unstable();
            out.extend(found);
        }
        Ok(out)
    }

    /// Simplices not strictly contained in another simplex of the complex.
    pub fn maximal_faces(&self) -> Result<Vec<Simplex>> {
        self.require_closed("maximal_faces")?;
        let n = self.ambient.vertex_count();
        Ok(self
            .iter()
            .filter(|&s| {
                (0..n)
                    .filter(|&v| !s.contains_vertex(v))
                    .all(|v| !self.contains(s.union(Simplex::vertex(v))))
            })
            .collect())
    }

    /// `(f_0, .., f_dim)`; empty for the empty complex.
    pub fn f_vector(&self) -> Vec<u64> {
        self.by_dim.iter().map(|l| l.len() as u64).collect()
    }

    /// Per-dimension counts `e_i` of external simplices.
    pub fn external_counts(&self) -> Result<Vec<u64>> {
        Ok(count_by_dim(&self.external_faces()?))
    }

    /// Per-dimension counts `d_i` of maximal simplices.
    pub fn maximal_counts(&self) -> Result<Vec<u64>> {
        Ok(count_by_dim(&self.maximal_faces()?))
    }

    /// Whether all `C(n+1, ℓ+1)` ℓ-simplices on `[n]` are present.
    pub fn contains_skeleton(&self, ell: u32) -> bool {
        let want = binomial(self.ambient.n() as u64 + 1, ell as u64 + 1).unwrap_or(u128::MAX);
        self.of_dim(ell).len() as u128 == want
    }

    /// Simplices of the complex containing `sigma`.
    pub fn star(&self, sigma: Simplex) -> Vec<Simplex> {
        self.iter().filter(|&t| sigma.is_face_of(t)).collect()
    }

    /// `Lk(σ) = {τ : τ ∩ σ = ∅, σ ∪ τ ∈ Y}`, relabelled onto the ambient of
    /// [`LinkFrame::new`].
    pub fn link(&self, sigma: Simplex) -> Result<Complex> {
        self.require_closed("link")?;
        if !self.contains(sigma) {
            return Err(Error::SimplexNotInComplex(sigma));
        }
        let frame = LinkFrame::new(self.ambient, sigma)?;
        let set = self
            .iter()
            .filter(|&t| sigma.is_face_of(t) && t != sigma)
            .map(|t| frame.to_link(Simplex::new(t.mask() & !sigma.mask())))
            .collect();
        Ok(Complex::from_set(frame.ambient(), set))
    }

    /// Canonical vertex-list form, used for display and serialization.
    pub fn vertex_lists(&self) -> Vec<Vec<u32>> {
        self.iter().map(|s| s.vertices().collect()).collect()
    }
}

fn count_by_dim(simplices: &[Simplex]) -> Vec<u64> {
    let mut counts = Vec::new();
    for s in simplices {
        let d = s.dim() as usize;
        if counts.len() <= d {
            counts.resize(d + 1, 0);
        }
        counts[d] += 1;
    }
    counts
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.by_dim == other.by_dim
    }
}

impl Eq for Complex {}

impl Hash for Complex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.by_dim.hash(state);
    }
}

impl PartialOrd for Complex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Complex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then_with(|| self.by_dim.cmp(&other.by_dim))
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{", self.ambient)?;
        for (i, s) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

/// Relabelling between `[n] - σ` and the vertices `{0, .., m}` of the link ambient.
///
/// The link ambient is `Δ_m` with `m = n - |σ|`. Inside `∂Δ_n` it is `∂Δ_m`:
/// `σ ∪ ([n] - σ) = [n]` is never a simplex there, so the top simplex of the
/// link ambient can never occur.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkFrame {
    sigma: Simplex,
    vertices: Vec<u32>,
    ambient: Ambient,
}

impl LinkFrame {
    pub fn new(parent: Ambient, sigma: Simplex) -> Result<Self> {
        parent.check(sigma)?;
        let vertices: Vec<u32> = (0..parent.vertex_count())
            .filter(|&v| !sigma.contains_vertex(v))
            .collect();
        if vertices.is_empty() {
            return Err(Error::EmptyLinkAmbient(sigma));
        }
        let ambient = Ambient::new(vertices.len() as u32 - 1, parent.include_top())?;
        Ok(LinkFrame { sigma, vertices, ambient })
    }

    pub fn sigma(&self) -> Simplex {
        self.sigma
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    /// Parent vertex carried by each link vertex.
    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    /// Parent simplex disjoint from σ → link simplex.
    pub fn to_link(&self, tau: Simplex) -> Simplex {
        let mut m = 0u64;
        for (i, &v) in self.vertices.iter().enumerate() {
            if tau.contains_vertex(v) {
                m |= 1 << i;
            }
        }
        Simplex::new(m)
    }

    /// Link simplex → parent simplex (disjoint from σ).
    pub fn from_link(&self, tau: Simplex) -> Simplex {
        Simplex::new(tau.vertices().fold(0u64, |m, i| m | 1 << self.vertices[i as usize]))
    }

    /// `σ ∪ τ` for a link simplex τ.
    pub fn join(&self, tau: Simplex) -> Simplex {
        self.sigma.union(self.from_link(tau))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amb(n: u32, top: bool) -> Ambient {
        Ambient::new(n, top).unwrap()
    }

    fn cx(a: Ambient, lists: &[&[u32]]) -> Complex {
        Complex::from_vertex_lists(a, lists).unwrap()
    }

    fn s(vs: &[u32]) -> Simplex {
        Simplex::from_vertices(vs.iter().copied()).unwrap()
    }

    #[test]
    fn upper_closure_examples() {
        let a = amb(2, true);
        let x = cx(a, &[&[0, 1], &[2]]);
        assert!(!x.is_closed());
        assert_eq!(x.upper_closure(), cx(a, &[&[0], &[1], &[2], &[0, 1]]));
        let k = cx(a, &[&[0], &[1], &[0, 1]]);
        assert_eq!(k.upper_closure(), k);
        assert_eq!(Complex::empty(a).upper_closure(), Complex::empty(a));
    }

    #[test]
    fn lower_interior_examples() {
        let a = amb(1, true);
        assert_eq!(cx(a, &[&[0], &[0, 1]]).lower_interior(), cx(a, &[&[0]]));
        let k = cx(a, &[&[0], &[1]]);
        assert_eq!(k.lower_interior(), k);
        assert!(cx(a, &[&[0, 1]]).lower_interior().is_empty());
    }

    #[test]
    fn external_faces_examples() {
        let b2 = amb(2, false);
        let verts = cx(b2, &[&[0], &[1], &[2]]);
        assert_eq!(verts.external_faces().unwrap(), vec![s(&[0, 1]), s(&[0, 2]), s(&[1, 2])]);
        assert_eq!(
            Complex::empty(amb(1, true)).external_faces().unwrap(),
            vec![s(&[0]), s(&[1])]
        );
        assert_eq!(cx(b2, &[&[0]]).external_faces().unwrap(), vec![s(&[1]), s(&[2])]);
        // ∂Δ_2 has no external faces: the triangle is not in the ambient.
        assert!(Complex::full(b2).external_faces().unwrap().is_empty());
        assert_eq!(Complex::full(amb(2, true)).external_faces().unwrap(), vec![]);
        assert!(cx(b2, &[&[0, 1]]).external_faces().is_err());
    }

    #[test]
    fn maximal_faces_examples() {
        let d1 = amb(1, true);
        assert_eq!(Complex::full(d1).maximal_faces().unwrap(), vec![s(&[0, 1])]);
        let v = cx(amb(2, false), &[&[0], &[1], &[2]]);
        assert_eq!(v.maximal_faces().unwrap().len(), 3);
        assert!(Complex::empty(d1).maximal_faces().unwrap().is_empty());
    }

    #[test]
    fn link_examples() {
        let d1 = amb(1, true);
        let l = Complex::full(d1).link(s(&[0])).unwrap();
        // Δ' on the single vertex 1, relabelled to 0.
        assert_eq!(l.vertex_lists(), vec![vec![0]]);
        assert!(cx(d1, &[&[0], &[1]]).link(s(&[0])).unwrap().is_empty());
        let b2 = amb(2, false);
        let frame = LinkFrame::new(b2, s(&[0])).unwrap();
        let l = Complex::full(b2).link(s(&[0])).unwrap();
        let back: Vec<Simplex> = l.iter().map(|t| frame.from_link(t)).collect();
        assert_eq!(back, vec![s(&[1]), s(&[2])]);
        assert_eq!(l.ambient(), amb(1, false));
        assert!(cx(b2, &[&[1]]).link(s(&[0])).is_err());
        assert!(Complex::full(amb(0, true)).link(s(&[0])).is_err());
    }

    #[test]
    fn f_vectors_and_skeleta() {
        let b2 = Complex::full(amb(2, false));
        assert_eq!(b2.f_vector(), vec![3, 3]);
        assert!(Complex::empty(amb(2, false)).f_vector().is_empty());
        let d4 = Complex::full(amb(4, true));
        assert_eq!(d4.f_vector(), vec![5, 10, 10, 5, 1]);
        assert!(b2.contains_skeleton(1));
        let v = cx(amb(2, false), &[&[0], &[1], &[2]]);
        assert!(v.contains_skeleton(0));
        assert!(!v.contains_skeleton(1));
        assert!(!Complex::empty(amb(0, true)).contains_skeleton(0));
    }

    #[test]
    fn star_helper() {
        let b2 = Complex::full(amb(2, false));
        assert_eq!(b2.star(s(&[0])), vec![s(&[0]), s(&[0, 1]), s(&[0, 2])]);
    }
}
