//! Simplicial homology by boundary-matrix rank.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{Error, Result};

/// `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Coefficient field for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Field {
    Rational,
    /// `GF(p)`; `p` must be prime and below `2^32`.
    Prime(u64),
}

impl Field {
    pub fn parse(s: &str) -> Result<Field> {
        match s.trim() {
            "q" | "Q" | "rational" => Ok(Field::Rational),
            other => {
                let p = other
                    .trim_start_matches("gf")
                    .trim_start_matches("GF")
                    .trim_matches(|c| c == '(' || c == ')')
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("unknown field {other:?}")))?;
                if !(2..1 << 32).contains(&p) || !(2..).take_while(|d| d * d <= p).all(|d| p % d != 0) {
                    return Err(Error::Parse(format!("{p} is not a prime below 2^32")));
                }
                Ok(Field::Prime(p))
            }
        }
    }
}

impl From<Field> for String {
    fn from(f: Field) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for Field {
    type Error = Error;

    fn try_from(s: String) -> Result<Field> {
        Field::parse(&s)
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// Sparse matrix of `∂_k`, one column per `k`-simplex, rows indexed by the
/// sorted `(k-1)`-simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub rows: usize,
    pub cols: usize,
    /// `(row, ±1)` pairs sorted by row.
    pub columns: Vec<Vec<(usize, i8)>>,
}

impl BoundaryMatrix {
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                m[i][j] = v as i64;
            }
        }
        m
    }

    pub fn rank(&self, field: Field) -> usize {
        match field {
            Field::Prime(p) => rank_mod_p(self, p),
            Field::Rational => rank_rational(self),
        }
    }
}

/// `∂_k` of a face-closed complex. Deleting the vertex at position `i` of the
/// ascending vertex list carries the sign `(-1)^i`. For `k = 0` the matrix has
/// no rows.
pub fn boundary_matrix(y: &Complex, k: u32) -> Result<BoundaryMatrix> {
    if !y.is_closed() {
        return Err(Error::NotFaceClosed("boundary_matrix"));
    }
    let cols = y.of_dim(k);
    if k == 0 {
        return Ok(BoundaryMatrix { rows: 0, cols: cols.len(), columns: vec![Vec::new(); cols.len()] });
    }
    let rows = y.of_dim(k - 1);
    let columns = cols
        .iter()
        .map(|s| {
            let mut col: Vec<(usize, i8)> = s
                .vertices()
                .enumerate()
                .map(|(i, v)| {
                    let face = crate::simplex::Simplex::new(s.mask() & !(1 << v));
                    let row = rows.binary_search(&face).expect("face-closed");
                    (row, if i % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    Ok(BoundaryMatrix { rows: rows.len(), cols: cols.len(), columns })
}

fn ordered_columns(m: &BoundaryMatrix) -> Vec<&Vec<(usize, i8)>> {
    let mut cols: Vec<_> = m.columns.iter().filter(|c| !c.is_empty()).collect();
    cols.sort_by_key(|c| c.len());
    cols
}

/// Reduces columns so that their lowest nonzero rows are distinct; the rank is
/// the number of surviving columns. `eliminate(c, pivot)` must cancel the
/// lowest entry of `c` using `pivot`, which shares that lowest row.
fn low_reduce<T>(
    rows: usize,
    cols: impl Iterator<Item = Vec<(usize, T)>>,
    mut eliminate: impl FnMut(&[(usize, T)], &[(usize, T)]) -> Option<Vec<(usize, T)>>,
) -> Option<usize> {
    let mut pivots: Vec<Option<Vec<(usize, T)>>> = (0..rows).map(|_| None).collect();
    let mut rank = 0;
    for mut c in cols {
        while let Some(&(low, _)) = c.last() {
            match &pivots[low] {
                Some(p) => c = eliminate(&c, p)?,
                None => break,
            }
        }
        if let Some(&(low, _)) = c.last() {
            pivots[low] = Some(c);
            rank += 1;
        }
    }
    Some(rank)
}

/// Merges `a*x + b*y` for sparse columns, dropping zeros.
fn axpby<T: Clone>(
    x: &[(usize, T)],
    y: &[(usize, T)],
    mut f: impl FnMut(Option<&T>, Option<&T>) -> Option<T>,
    is_zero: impl Fn(&T) -> bool,
) -> Option<Vec<(usize, T)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (row, v) = match (x.get(i), y.get(j)) {
            (Some(a), Some(b)) if a.0 == b.0 => {
                i += 1;
                j += 1;
                (a.0, f(Some(&a.1), Some(&b.1))?)
            }
            (Some(a), b) if b.is_none_or(|b| a.0 < b.0) => {
                i += 1;
                (a.0, f(Some(&a.1), None)?)
            }
            (_, Some(b)) => {
                j += 1;
                (b.0, f(None, Some(&b.1))?)
            }
            _ => unreachable!(),
        };
        if !is_zero(&v) {
            out.push((row, v));
        }
    }
    Some(out)
}

/// Rank over `GF(p)`.
pub fn rank_mod_p(m: &BoundaryMatrix, p: u64) -> usize {
    let inv = |a: u64| -> u64 {
        // Fermat inverse.
        let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let cols = ordered_columns(m).into_iter().map(|c| {
        c.iter().map(|&(r, v)| (r, if v > 0 { 1 } else { p - 1 })).collect::<Vec<(usize, u64)>>()
    });
    low_reduce(m.rows, cols, |c, piv| {
        let factor = c.last().unwrap().1 * inv(piv.last().unwrap().1) % p;
        let neg = (p - factor) % p;
        axpby(
            c,
            piv,
            |a, b| Some((a.copied().unwrap_or(0) + neg * b.copied().unwrap_or(0)) % p),
            |v| *v == 0,
        )
    })
    .expect("modular reduction cannot overflow")
}

fn content_normalize_i128(c: &mut [(usize, i128)]) {
    let g = c.iter().fold(0i128, |g, (_, v)| g.gcd(v));
    if g > 1 {
        c.iter_mut().for_each(|(_, v)| *v /= g);
    }
}

/// Fraction-free elimination in `i128`; `None` on overflow.
fn rank_rational_i128(m: &BoundaryMatrix) -> Option<usize> {
    let cols = ordered_columns(m)
        .into_iter()
        .map(|c| c.iter().map(|&(r, v)| (r, v as i128)).collect::<Vec<_>>());
    low_reduce(m.rows, cols, |c, piv| {
        let a = c.last().unwrap().1;
        let b = piv.last().unwrap().1;
        let g = a.gcd(&b);
        let (a, b) = (a / g, b / g);
        // b*c - a*piv
        let mut out = axpby(
            c,
            piv,
            |x, y| {
                let x = x.copied().unwrap_or(0).checked_mul(b)?;
                let y = y.copied().unwrap_or(0).checked_mul(a)?;
                x.checked_sub(y)
            },
            |v| *v == 0,
        )?;
        content_normalize_i128(&mut out);
        Some(out)
    })
}

fn rank_rational_bigint(m: &BoundaryMatrix) -> usize {
    let cols = ordered_columns(m)
        .into_iter()
        .map(|c| c.iter().map(|&(r, v)| (r, BigInt::from(v))).collect::<Vec<_>>());
    low_reduce(m.rows, cols, |c, piv| {
        let a = &c.last().unwrap().1;
        let b = &piv.last().unwrap().1;
        let g = a.gcd(b);
        let (a, b) = (a / &g, b / &g);
        let mut out = axpby(
            c,
            piv,
            |x, y| {
                let zero = BigInt::zero();
                Some(x.unwrap_or(&zero) * &b - y.unwrap_or(&zero) * &a)
            },
            |v| v.is_zero(),
        )?;
        let g = out.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
        if g.abs() > BigInt::from(1) {
            out.iter_mut().for_each(|(_, v)| *v /= &g);
        }
        Some(out)
    })
    .expect("bigint reduction cannot overflow")
}

/// Exact rank over `Q`.
pub fn rank_rational(m: &BoundaryMatrix) -> usize {
    rank_rational_i128(m).unwrap_or_else(|| rank_rational_bigint(m))
}

/// Betti numbers over one field, unreduced and reduced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector {
    pub field: Field,
    /// `(b_0, .., b_d)`.
    pub betti: Vec<u64>,
    /// `(b̃_{-1}, b̃_0, .., b̃_d)`.
    pub reduced: Vec<u64>,
}

impl BettiVector {
    /// `b_j`, zero outside `0..=d`.
    pub fn b(&self, j: i64) -> u64 {
        usize::try_from(j).ok().and_then(|j| self.betti.get(j)).copied().unwrap_or(0)
    }

    /// `b̃_j` for `j >= -1`, zero elsewhere.
    pub fn b_reduced(&self, j: i64) -> u64 {
        usize::try_from(j + 1).ok().and_then(|j| self.reduced.get(j)).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }
}

pub fn betti(y: &Complex, field: Field) -> Result<BettiVector> {
    if !y.is_closed() {
        return Err(Error::NotFaceClosed("betti"));
    }
    let f = y.f_vector();
    let d = f.len();
    // ranks[k] = rank ∂_k for k in 0..=d (∂_0 and ∂_{d+1} vanish)
    let mut ranks = vec![0usize; d + 2];
    let inner = (1..d)
        .into_par_iter()
        .map(|k| Ok(boundary_matrix(y, k as u32)?.rank(field)))
        .collect::<Result<Vec<usize>>>()?;
    ranks[1..1 + inner.len()].copy_from_slice(&inner);
    let betti: Vec<u64> = (0..d).map(|k| f[k] - ranks[k] as u64 - ranks[k + 1] as u64).collect();
    let mut reduced = Vec::with_capacity(d + 1);
    if d == 0 {
        reduced.push(1);
    } else {
        reduced.push(0);
        reduced.extend(betti.iter().enumerate().map(|(k, &b)| if k == 0 { b - 1 } else { b }));
    }
    Ok(BettiVector { field, betti, reduced })
}

/// `betti` over many complexes in parallel, preserving order.
pub fn betti_many(ys: &[Complex], field: Field) -> Result<Vec<BettiVector>> {
    ys.par_iter().map(|y| betti(y, field)).collect()
}
