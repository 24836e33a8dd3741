//! Combinatorial Alexander duality inside `∂Δ_n`.
//!
//! `c(X) = {τ : τ̂ ∉ X}` together with the two nerve constructions that are
//! homotopy equivalent to it: the complex `X'` on the external faces and the
//! nerve of the cover of a complex by its maximal simplices.

use std::collections::HashSet;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::simplex::{Ambient, Simplex};

/// Largest ambient for which `dual_c` will enumerate `∂Δ_n` (2^22 simplices).
pub const MAX_DUAL_N: u32 = 21;

/// The combinatorial Alexander dual `c(X) = i(j(X))`.
pub fn dual_c(x: &Complex) -> Result<Complex> {
    let amb = x.ambient();
    amb.require_boundary("dual_c")?;
    if amb.n() > MAX_DUAL_N {
        return Err(Error::EnumerationTooLarge(amb.total_simplices() as u64));
    }
    let full = amb.vertex_mask();
    let set: HashSet<Simplex> = amb
        .simplices()
        .filter(|t| !x.contains(Simplex::new(full & !t.mask())))
        .collect();
    Ok(Complex::from_set(amb, set))
}

/// A complex built on an abstract vertex set, with the object each vertex stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledComplex {
    pub complex: Complex,
    pub labels: Vec<Simplex>,
}

impl LabelledComplex {
    /// Vertex sets of the complex with every vertex replaced by its label.
    pub fn labelled_simplices(&self) -> HashSet<Vec<Simplex>> {
        self.complex
            .iter()
            .map(|s| {
                let mut v: Vec<Simplex> = s.vertices().map(|i| self.labels[i as usize]).collect();
                v.sort_unstable();
                v
            })
            .collect()
    }
}

/// Complex on `labels` whose faces are the subsets accepted by `spans`.
/// `spans` must be monotone (closed under subsets).
fn nerve_like(labels: Vec<Simplex>, spans: impl Fn(&[Simplex]) -> bool) -> Result<LabelledComplex> {
    if labels.is_empty() {
        // Placeholder ambient; the complex has no simplices.
        let amb = Ambient::simplex(0)?;
        return Ok(LabelledComplex { complex: Complex::empty(amb), labels });
    }
    if labels.len() > 64 {
        return Err(Error::AmbientTooLarge(labels.len() as u32 - 1));
    }
    let amb = Ambient::simplex(labels.len() as u32 - 1)?;
    let mut set = HashSet::new();
    let mut chosen: Vec<Simplex> = Vec::new();
    // Depth-first over increasing index sequences; monotonicity prunes.
    fn grow(
        start: usize,
        mask: u64,
        labels: &[Simplex],
        chosen: &mut Vec<Simplex>,
        spans: &dyn Fn(&[Simplex]) -> bool,
        set: &mut HashSet<Simplex>,
    ) {
        for i in start..labels.len() {
            chosen.push(labels[i]);
            if spans(chosen) {
                let m = mask | 1 << i;
                set.insert(Simplex::new(m));
                grow(i + 1, m, labels, chosen, spans, set);
            }
            chosen.pop();
        }
    }
    grow(0, 0, &labels, &mut chosen, &spans, &mut set);
    Ok(LabelledComplex { complex: Complex::from_set(amb, set), labels })
}

/// The dual complex `Y'`: vertices are the external faces of `Y`; a family
/// spans a simplex iff the union of its vertex sets is not all of `[n]`.
pub fn dual_prime(y: &Complex) -> Result<LabelledComplex> {
    let amb = y.ambient();
    amb.require_boundary("dual_prime")?;
    let full = amb.vertex_mask();
    let ext = y.external_faces()?;
    nerve_like(ext, |fam| fam.iter().fold(0u64, |m, s| m | s.mask()) != full)
}

/// Nerve of the cover of `Y` by its maximal simplices.
pub fn nerve_of_maximal(y: &Complex) -> Result<LabelledComplex> {
    let max = y.maximal_faces()?;
    nerve_like(max, |fam| fam.iter().fold(u64::MAX, |m, s| m & s.mask()) != 0)
}
