//! Closed-form large-`n` predictions for exponent profiles
//! `p_i = n^{-α_i}`: critical dimensions, spread, growth exponents,
//! expected face counts and pure-model skeleton thresholds.

use serde::Serialize;

use crate::combinatorics::{binomial_f64, ln_binomial};
use crate::error::{Error, Result};

const INTEGER_TOL: f64 = 1e-9;

fn near_integer(x: f64) -> bool {
    (x - x.round()).abs() < INTEGER_TOL
}

fn ln_factorial(k: u64) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// Exponents `(α_0, .., α_r)`, all positive.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentProfile {
    alpha: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum GenericityViolation {
    IntegerExponent { i: usize, alpha: f64 },
    IntegerDifference { i: usize, j: usize, difference: f64 },
}

impl std::fmt::Display for GenericityViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GenericityViolation::IntegerExponent { i, alpha } => write!(f, "α_{i} = {alpha} is an integer"),
            GenericityViolation::IntegerDifference { i, j, difference } => {
                write!(f, "α_{i} - α_{j} = {difference} is an integer")
            }
        }
    }
}

impl ExponentProfile {
    pub fn new(alpha: Vec<f64>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::InvalidParams("empty exponent profile".into()));
        }
        if let Some(a) = alpha.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
            return Err(Error::InvalidParams(format!("exponents must be positive, got {a}")));
        }
        Ok(ExponentProfile { alpha })
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn r(&self) -> usize {
        self.alpha.len() - 1
    }

    pub fn genericity_violations(&self) -> Vec<GenericityViolation> {
        let mut out = Vec::new();
        for (i, &a) in self.alpha.iter().enumerate() {
            if near_integer(a) {
                out.push(GenericityViolation::IntegerExponent { i, alpha: a });
            }
        }
        for i in 0..self.alpha.len() {
            for j in i + 1..self.alpha.len() {
                let d = self.alpha[i] - self.alpha[j];
                if near_integer(d) {
                    out.push(GenericityViolation::IntegerDifference { i, j, difference: d });
                }
            }
        }
        out
    }

    pub fn is_generic(&self) -> bool {
        self.genericity_violations().is_empty()
    }

    /// `p_i = n^{-α_i}` at a given `n`.
    pub fn probs(&self, n: f64) -> Vec<f64> {
        self.alpha.iter().map(|a| n.powf(-a)).collect()
    }
}

/// Upper-model growth data derived from `β_i = i + 1 - α_i`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BetaProfile {
    pub beta: Vec<f64>,
    pub beta_star: f64,
    pub i_star: usize,
    /// `⌊β*⌋`; negative when every `β_i < 0`.
    pub k_star: i64,
    pub spread: i64,
    pub gamma: Vec<f64>,
    /// `β*_k = max_{i>=k} β_i`.
    pub beta_star_k: Vec<f64>,
    pub i_star_k: Vec<usize>,
}

fn argmax_from(v: &[f64], from: usize) -> usize {
    (from..v.len()).fold(from, |best, i| if v[i] > v[best] { i } else { best })
}

pub fn beta_profile(profile: &ExponentProfile) -> Result<BetaProfile> {
    let violations = profile.genericity_violations();
    if !violations.is_empty() {
        let msg: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::NonGeneric(msg.join("; ")));
    }
    let beta: Vec<f64> = profile.alpha.iter().enumerate().map(|(i, a)| i as f64 + 1.0 - a).collect();
    let i_star = argmax_from(&beta, 0);
    let beta_star = beta[i_star];
    let k_star = beta_star.floor() as i64;
    let i_star_k: Vec<usize> = (0..beta.len()).map(|k| argmax_from(&beta, k)).collect();
    let beta_star_k: Vec<f64> = i_star_k.iter().map(|&i| beta[i]).collect();
    let gamma = (0..beta.len())
        .map(|k| {
            if (k as i64) < k_star {
                k as f64 + 1.0
            } else if k <= i_star {
                beta_star
            } else {
                beta_star_k[k]
            }
        })
        .collect();
    Ok(BetaProfile {
        spread: i_star as i64 - k_star,
        beta,
        beta_star,
        i_star,
        k_star,
        gamma,
        beta_star_k,
        i_star_k,
    })
}

/// Zero spread iff `α_{i*} < 1` and `α_{i*+k} > α_{i*} + k` for all `k >= 1`.
pub fn zero_spread_criterion(profile: &ExponentProfile) -> Result<bool> {
    let b = beta_profile(profile)?;
    let a = &profile.alpha;
    let i = b.i_star;
    Ok(a[i] < 1.0 && (i + 1..a.len()).all(|j| a[j] > a[i] + (j - i) as f64))
}

/// Lower-model critical dimension from `ψ_k(α) = Σ_i C(k,i) α_i`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LowerCriticalReport {
    pub psi: Vec<f64>,
    /// The `k ∈ {-1, .., r}` with `α ∈ 𝔇_k`; `None` when some `ψ_k = 1`.
    pub k_lower: Option<i64>,
    pub boundary_hit: bool,
}

pub fn lower_critical_dimension(profile: &ExponentProfile) -> LowerCriticalReport {
    let a = &profile.alpha;
    let psi: Vec<f64> = (0..a.len())
        .map(|k| (0..=k).map(|i| binomial_f64(k as f64, i as u64) * a[i]).sum())
        .collect();
    let boundary_hit = psi.iter().any(|&v| (v - 1.0).abs() < INTEGER_TOL);
    let k_lower = if boundary_hit {
        None
    } else {
        // ψ is non-decreasing, so the domain index is the number of ψ_k below 1, minus one.
        Some(psi.iter().filter(|&&v| v < 1.0).count() as i64 - 1)
    };
    LowerCriticalReport { psi, k_lower, boundary_hit }
}

/// `E(f_ℓ)` for the upper model on `Δ_n` and its approximations.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaceCountExpectation {
    pub n: f64,
    pub ell: usize,
    pub value: f64,
    /// `ln value`, finite even when `value` overflows.
    pub ln_value: f64,
    /// `n^{β*_ℓ} / ((ℓ+1)! (i*_ℓ-ℓ)!)`, when `ℓ >= k*` and the profile is generic.
    pub asymptotic: Option<f64>,
    /// `Σ_{i>=ℓ} n^{β_i} / ((ℓ+1)! (i-ℓ)!)`.
    pub leading_sum: f64,
}

/// Exact `C(n+1,ℓ+1) (1 - ∏_{i>=ℓ} q_i^{C(n-ℓ,i-ℓ)})` for per-dimension
/// probabilities `probs`, evaluated in log space. Returns `ln E(f_ℓ)`.
pub fn ln_expected_face_count_probs(n: f64, probs: &[f64], ell: usize) -> f64 {
    let mut ln_q = 0.0;
    for (i, &p) in probs.iter().enumerate().skip(ell) {
        if p == 0.0 {
            continue;
        }
        if p >= 1.0 {
            ln_q = f64::NEG_INFINITY;
            break;
        }
        ln_q += binomial_f64(n - ell as f64, (i - ell) as u64) * (-p).ln_1p();
    }
    let present = -ln_q.exp_m1();
    ln_binomial(n + 1.0, ell as u64 + 1) + present.ln()
}

pub fn expected_face_count(n: u64, profile: &ExponentProfile, ell: usize) -> FaceCountExpectation {
    let nf = n as f64;
    let ln_value = ln_expected_face_count_probs(nf, &profile.probs(nf), ell);
    let ln_prefactor = -ln_factorial(ell as u64 + 1);
    let beta: Vec<f64> = profile.alpha.iter().enumerate().map(|(i, a)| i as f64 + 1.0 - a).collect();
    let leading_sum = (ell..beta.len())
        .map(|i| (beta[i] * nf.ln() + ln_prefactor - ln_factorial((i - ell) as u64)).exp())
        .sum();
    let asymptotic = beta_profile(profile).ok().and_then(|b| {
        if ell >= beta.len() || (ell as i64) < b.k_star {
            return None;
        }
        let i = b.i_star_k[ell];
        Some((b.beta_star_k[ell] * nf.ln() + ln_prefactor - ln_factorial((i - ell) as u64)).exp())
    });
    FaceCountExpectation { n: nf, ell, value: ln_value.exp(), ln_value, asymptotic, leading_sum }
}

/// `P̄(∅) = ∏_i q_i^{C(n+1,i+1)}` on `Δ_n`.
pub fn upper_empty_probability(n: u64, profile: &ExponentProfile) -> f64 {
    let nf = n as f64;
    profile
        .probs(nf)
        .iter()
        .enumerate()
        .map(|(i, &p)| binomial_f64(nf + 1.0, i as u64 + 1) * (-p).ln_1p())
        .sum::<f64>()
        .exp()
}

/// Pure-model probability at which the `ℓ`-skeleton appears.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SkeletonThreshold {
    /// The binomial form, clamped to `[0, 1]`.
    pub p: f64,
    pub unclamped: f64,
    pub clamped: bool,
    /// `((ℓ+1)(k-ℓ)! ln n + ω) / n^{k-ℓ}`, unclamped.
    pub power_form: f64,
}

/// `((ℓ+1) ln n + ω) / C(n-ℓ, k-ℓ)`; pass a negative `ω` for the lower side.
pub fn skeleton_threshold(n: u64, k: u64, ell: u64, omega: f64) -> Result<SkeletonThreshold> {
    if !(ell < k && k <= n) {
        return Err(Error::InvalidParams(format!("need 0 <= ℓ < k <= n, got n={n}, k={k}, ℓ={ell}")));
    }
    let nf = n as f64;
    let lead = (ell as f64 + 1.0) * nf.ln();
    let unclamped = (lead + omega) / binomial_f64((n - ell) as f64, k - ell);
    let p = unclamped.clamp(0.0, 1.0);
    let power_form =
        (lead * ln_factorial(k - ell).exp() + omega) / nf.powi((k - ell) as i32);
    Ok(SkeletonThreshold { p, unclamped, clamped: p != unclamped, power_form })
}
