//! Binomial coefficients and colexicographic ranking of k-subsets.
//!
//! Colex order on k-subsets of `{0, .., N-1}` coincides with numeric order of
//! their bitmasks, so the sampler can draw ranks and the complex layer can
//! keep masks sorted without translating between the two.

/// `C(n, k)` exactly, or `None` on `u128` overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// `C(n, k)` as a float; accurate for the small `k` the asymptotic formulas use.
pub fn binomial_f64(n: f64, k: u64) -> f64 {
    if (k as f64) > n {
        return 0.0;
    }
    ln_binomial(n, k).exp()
}

/// `ln C(n, k)` summed term by term; `-inf` when the coefficient vanishes.
pub fn ln_binomial(n: f64, k: u64) -> f64 {
    if (k as f64) > n {
        return f64::NEG_INFINITY;
    }
    let k = if n.fract() == 0.0 && (k as f64) > n / 2.0 {
        (n as u64) - k
    } else {
        k
    };
    (0..k).map(|i| ((n - i as f64) / (i as f64 + 1.0)).ln()).sum()
}

/// Largest `c` in `[lo, hi]` with `C(c, i) <= rank`, assuming `C(lo, i) <= rank`.
fn largest_below(rank: u128, i: u64, lo: u64, hi: u64) -> u64 {
    let (mut lo, mut hi) = (lo, hi);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        match binomial(mid, i) {
            Some(b) if b <= rank => lo = mid,
            _ => hi = mid - 1,
        }
    }
    lo
}

/// The `rank`-th `size`-subset of `{0, .., universe-1}` in colex order, ascending.
pub fn colex_unrank(mut rank: u128, size: u64, universe: u64) -> Vec<u32> {
    let mut out = vec![0u32; size as usize];
    let mut hi = universe.saturating_sub(1);
    for i in (1..=size).rev() {
        let c = largest_below(rank, i, i - 1, hi);
        out[(i - 1) as usize] = c as u32;
        rank -= binomial(c, i).unwrap_or(0);
        hi = c.saturating_sub(1);
    }
    out
}

/// Colex rank of an ascending vertex list.
pub fn colex_rank(vertices: &[u32]) -> u128 {
    vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| binomial(v as u64, i as u64 + 1).unwrap_or(0))
        .sum()
}

/// Same as [`colex_unrank`] but packed into a bitmask (universe <= 64).
pub fn colex_unrank_mask(rank: u128, size: u64, universe: u64) -> u64 {
    debug_assert!(universe <= 64);
    colex_unrank(rank, size, universe)
        .into_iter()
        .fold(0u64, |m, v| m | (1u64 << v))
}

/// All `size`-subsets of the low `universe` bits, in increasing numeric order
/// (Gosper's hack).
pub fn subsets_of_size(universe: u32, size: u32) -> impl Iterator<Item = u64> {
    let limit: u128 = 1u128 << universe;
    let first: u128 = if size == 0 || size > universe {
        limit
    } else {
        (1u128 << size) - 1
    };
    std::iter::successors(Some(first), move |&x| {
        let c = x & x.wrapping_neg();
        let r = x + c;
        let next = (((r ^ x) >> 2) / c) | r;
        Some(next)
    })
    .take_while(move |&x| x < limit)
    .map(|x| x as u64)
}

/// Nonempty submasks of `mask`, including `mask` itself.
pub fn nonempty_submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut sub = mask;
    let mut done = mask == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = sub;
        sub = (sub.wrapping_sub(1)) & mask;
        if sub == 0 {
            done = true;
        }
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), Some(10));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(64, 32), Some(1_832_624_140_942_590_534));
        assert_eq!(binomial(150, 2), Some(11175));
        assert!((binomial_f64(150.0, 2) - 11175.0).abs() < 1e-6);
        assert!((binomial_f64(1e6, 3) - 1e6 * 999_999.0 * 999_998.0 / 6.0).abs() / 1.6e17 < 1e-10);
    }

    #[test]
    fn colex_round_trip_matches_numeric_order() {
        let masks: Vec<u64> = subsets_of_size(7, 3).collect();
        assert_eq!(masks.len(), 35);
        for (rank, &m) in masks.iter().enumerate() {
            assert_eq!(colex_unrank_mask(rank as u128, 3, 7), m);
            let verts: Vec<u32> = (0..7).filter(|v| m >> v & 1 == 1).collect();
            assert_eq!(colex_rank(&verts), rank as u128);
        }
    }

    #[test]
    fn submask_enumeration() {
        let subs: Vec<u64> = nonempty_submasks(0b1011).collect();
        assert_eq!(subs.len(), 7);
        assert!(nonempty_submasks(0).next().is_none());
    }
}
