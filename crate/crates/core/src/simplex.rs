use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, subsets_of_size};
use crate::error::{Error, Result};

/// Largest supported vertex index: simplices are packed into a `u64`.
pub const MAX_N: u32 = 63;

/// The simplex `Δ_n` on `[n] = {0, .., n}`, or its boundary `∂Δ_n` when the
/// full vertex set is excluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ambient {
    n: u32,
    include_top: bool,
}

impl Ambient {
    pub fn new(n: u32, include_top: bool) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::AmbientTooLarge(n));
        }
        Ok(Ambient { n, include_top })
    }

    /// `Δ_n`.
    pub fn simplex(n: u32) -> Result<Self> {
        Self::new(n, true)
    }

    /// `∂Δ_n`.
    pub fn boundary(n: u32) -> Result<Self> {
        Self::new(n, false)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn include_top(&self) -> bool {
        self.include_top
    }

    pub fn is_boundary(&self) -> bool {
        !self.include_top
    }

    pub fn vertex_count(&self) -> u32 {
        self.n + 1
    }

    /// Bitmask of `[n]`.
    pub fn vertex_mask(&self) -> u64 {
        if self.n == 63 {
            u64::MAX
        } else {
            (1u64 << (self.n + 1)) - 1
        }
    }

    /// The full vertex set `[n]` as a simplex (a member only of `Δ_n`).
    pub fn top(&self) -> Simplex {
        Simplex(self.vertex_mask())
    }

    pub fn contains(&self, s: Simplex) -> bool {
        let full = self.vertex_mask();
        s.0 & !full == 0 && (self.include_top || s.0 != full)
    }

    pub fn check(&self, s: Simplex) -> Result<Simplex> {
        if self.contains(s) {
            Ok(s)
        } else {
            Err(Error::OutsideAmbient(s, self.to_string()))
        }
    }

    pub fn require_boundary(&self, op: &'static str) -> Result<()> {
        if self.include_top {
            Err(Error::RequiresBoundary(op))
        } else {
            Ok(())
        }
    }

    /// Highest simplex dimension present in the ambient, `None` for `∂Δ_0`.
    pub fn max_dim(&self) -> Option<u32> {
        match (self.include_top, self.n) {
            (true, n) => Some(n),
            (false, 0) => None,
            (false, n) => Some(n - 1),
        }
    }

    /// Number of ambient simplices of dimension `d`.
    pub fn count_dim(&self, d: u32) -> u128 {
        if d > self.n {
            return 0;
        }
        let c = binomial(self.n as u64 + 1, d as u64 + 1).expect("n <= 63 fits u128");
        if d == self.n && !self.include_top {
            c - 1
        } else {
            c
        }
    }

    /// Total number of ambient simplices.
    pub fn total_simplices(&self) -> u128 {
        let all = (1u128 << (self.n + 1)) - 1;
        if self.include_top {
            all
        } else {
            all - 1
        }
    }

    /// Ambient simplices of dimension `d` in increasing mask order.
    pub fn simplices_of_dim(&self, d: u32) -> impl Iterator<Item = Simplex> + '_ {
        let top = self.vertex_mask();
        let include_top = self.include_top;
        subsets_of_size(self.n + 1, d + 1)
            .filter(move |&m| include_top || m != top)
            .map(Simplex)
    }

    /// All ambient simplices, dimension by dimension.
    pub fn simplices(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..=self.n).flat_map(move |d| self.simplices_of_dim(d))
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.include_top {
            write!(f, "Δ_{}", self.n)
        } else {
            write!(f, "∂Δ_{}", self.n)
        }
    }
}

/// A nonempty vertex set, bit `v` set iff vertex `v` belongs to it.
///
/// Ordering is numeric on the mask (colex on vertex lists); the complex layer
/// sorts per dimension so this gives the canonical simplex order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(u64);

impl Simplex {
    pub fn from_mask(mask: u64) -> Result<Self> {
        if mask == 0 {
            Err(Error::EmptySimplex)
        } else {
            Ok(Simplex(mask))
        }
    }

    /// Panics on an empty mask; for literals in code and tests.
    pub fn new(mask: u64) -> Self {
        Self::from_mask(mask).expect("nonempty vertex set")
    }

    pub fn from_vertices<I: IntoIterator<Item = u32>>(vs: I) -> Result<Self> {
        let mut mask = 0u64;
        for v in vs {
            if v > MAX_N {
                return Err(Error::AmbientTooLarge(v));
            }
            mask |= 1 << v;
        }
        Self::from_mask(mask)
    }

    pub fn vertex(v: u32) -> Self {
        Simplex(1 << v)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn dim(self) -> u32 {
        self.len() - 1
    }

    pub fn contains_vertex(self, v: u32) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    /// Ascending vertex list.
    pub fn vertices(self) -> impl Iterator<Item = u32> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let v = m.trailing_zeros();
                m &= m - 1;
                Some(v)
            }
        })
    }

    pub fn max_vertex(self) -> u32 {
        63 - self.0.leading_zeros()
    }

    /// `self ⊆ other`.
    pub fn is_face_of(self, other: Simplex) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Simplex) -> Simplex {
        Simplex(self.0 | other.0)
    }

    pub fn intersects(self, other: Simplex) -> bool {
        self.0 & other.0 != 0
    }

    /// Codimension-one faces; empty for a vertex.
    pub fn facets(self) -> impl Iterator<Item = Simplex> {
        let m = self.0;
        let single = m.count_ones() == 1;
        self.vertices()
            .filter(move |_| !single)
            .map(move |v| Simplex(m & !(1 << v)))
    }

    /// All nonempty faces, `self` included.
    pub fn faces(self) -> impl Iterator<Item = Simplex> {
        crate::combinatorics::nonempty_submasks(self.0).map(Simplex)
    }

    /// `[n] - σ`; only meaningful inside `∂Δ_n`, where it is again a simplex.
    pub fn hat(self, ambient: &Ambient) -> Result<Simplex> {
        ambient.require_boundary("hat")?;
        ambient.check(self)?;
        Ok(Simplex(ambient.vertex_mask() & !self.0))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(vs: &[u32]) -> Simplex {
        Simplex::from_vertices(vs.iter().copied()).unwrap()
    }

    #[test]
    fn ambient_bounds() {
        assert!(Ambient::simplex(63).is_ok());
        assert_eq!(Ambient::simplex(64), Err(Error::AmbientTooLarge(64)));
        let b = Ambient::boundary(2).unwrap();
        assert!(!b.contains(s(&[0, 1, 2])));
        assert!(b.contains(s(&[0, 2])));
        assert!(!b.contains(s(&[3])));
        assert_eq!(b.total_simplices(), 6);
        assert_eq!(b.simplices().count(), 6);
        assert_eq!(Ambient::simplex(3).unwrap().simplices().count(), 15);
        assert_eq!(Ambient::boundary(0).unwrap().simplices().count(), 0);
        assert_eq!(Ambient::simplex(63).unwrap().count_dim(1), 2016);
    }

    #[test]
    fn hat_examples() {
        let a3 = Ambient::boundary(3).unwrap();
        assert_eq!(s(&[0, 1]).hat(&a3).unwrap(), s(&[2, 3]));
        let a2 = Ambient::boundary(2).unwrap();
        assert_eq!(s(&[0, 1]).hat(&a2).unwrap(), s(&[2]));
        assert!(s(&[0, 1, 2]).hat(&a2).is_err());
        assert!(s(&[0]).hat(&Ambient::simplex(2).unwrap()).is_err());
    }

    #[test]
    fn hat_is_an_involution_at_n5() {
        let a = Ambient::boundary(5).unwrap();
        for x in a.simplices() {
            assert_eq!(x.hat(&a).unwrap().hat(&a).unwrap(), x);
        }
    }

    #[test]
    fn facets_and_faces() {
        let t = s(&[0, 2, 5]);
        let f: Vec<_> = t.facets().collect();
        assert_eq!(f.len(), 3);
        assert!(f.contains(&s(&[2, 5])));
        assert_eq!(s(&[4]).facets().count(), 0);
        assert_eq!(t.faces().count(), 7);
        assert_eq!(t.to_string(), "[0,2,5]");
        assert_eq!(t.dim(), 2);
        assert_eq!(t.max_vertex(), 5);
    }
}
