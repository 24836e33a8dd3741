//! Reproducible Monte Carlo experiments with CSV reports and a JSON manifest.
//!
//! Every runner is a pure function of its config: samples come from
//! counter-based RNG streams, so rerunning a manifest reproduces the CSVs
//! bit for bit whatever the thread count.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::asymptotics::{
    beta_profile, expected_face_count, ln_expected_face_count_probs, skeleton_threshold, BetaProfile,
    ExponentProfile,
};
use crate::complex::Complex;
use crate::duality::dual_c;
use crate::error::{Error, Result};
use crate::homology::{betti, BettiVector, Field, DEFAULT_PRIME};
use crate::io::{params_from_json_f64, params_to_json, parse_ambient};
use crate::measures::dual_params;
use crate::oracle::{pushforward, Closure};
use crate::params::ParamMap;
use crate::prob::format_rational;
use crate::sampler::{sample_pure_sparse, Model, SampleSpec, Sampler};
use crate::simplex::Ambient;

/// Default homology field for experiments.
pub const EXPERIMENT_FIELD: Field = Field::Prime(DEFAULT_PRIME);

/// Offset separating the lower-dual sample streams from the upper ones.
const DUAL_SEED_OFFSET: u64 = 0x9E37_79B9_7F4A_7C15;

/// Caps rayon's global pool at `COMPLEXLAB_THREADS` when set. Returns the
/// number of worker threads in use.
pub fn init_thread_pool() -> usize {
    if let Some(n) = std::env::var("COMPLEXLAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Ignore the error when a pool already exists (e.g. repeated calls in tests).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    rayon::current_num_threads()
}

#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub experiment: String,
    pub config: Value,
    pub seed: u64,
    pub build_id: String,
    pub outputs: Vec<String>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub notes: Value,
}

pub fn write_manifest(dir: &Path, manifest: &Manifest) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join("manifest.json");
    std::fs::write(&path, serde_json::to_string_pretty(manifest)?)?;
    Ok(path)
}

fn csv_writer(dir: &Path, name: &str) -> Result<(csv::Writer<std::fs::File>, PathBuf)> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    Ok((csv::Writer::from_path(&path)?, path))
}

fn padded<T: Copy + Default>(v: &[T], len: usize) -> Vec<T> {
    (0..len).map(|i| v.get(i).copied().unwrap_or_default()).collect()
}

/// `f_0..f_{d}`, `b_0..b_{d}`, `btilde_-1..btilde_{d}` headers.
fn shape_headers(d: usize) -> Vec<String> {
    let mut h: Vec<String> = (0..=d).map(|k| format!("f_{k}")).collect();
    h.extend((0..=d).map(|k| format!("b_{k}")));
    h.extend((-1..=d as i64).map(|k| format!("btilde_{k}")));
    h
}

fn shape_cells(f: &[u64], b: &BettiVector, d: usize) -> Vec<String> {
    let mut row: Vec<String> = padded(f, d + 1).iter().map(u64::to_string).collect();
    row.extend(padded(&b.betti, d + 1).iter().map(u64::to_string));
    row.extend(padded(&b.reduced, d + 2).iter().map(u64::to_string));
    row
}

// ---------------------------------------------------------------- duality

#[derive(Clone, Debug)]
pub struct DualityConfig {
    pub n: u32,
    /// Parameters of the upper side over `∂Δ_n`; the lower side uses their dual.
    pub params: ParamMap<f64>,
    pub samples: u64,
    pub seed: u64,
    pub field: Field,
}

impl DualityConfig {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "params": params_to_json(&self.params),
            "samples": self.samples,
            "seed": self.seed,
            "field": self.field,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            n: u32,
            params: Value,
            samples: u64,
            seed: u64,
            field: Field,
        }
        let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("duality config: {e}")))?;
        let params = params_from_json_f64(&raw.params, parse_ambient(raw.n, "boundary")?)?;
        Ok(DualityConfig { n: raw.n, params, samples: raw.samples, seed: raw.seed, field: raw.field })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualitySample {
    pub index: u64,
    /// `"upper"` or `"lower-dual"`.
    pub side: &'static str,
    pub f: Vec<u64>,
    pub betti: BettiVector,
    /// Per-sample `b̃_j(c(X)) = b̃_{n-2-j}(X)` for every `j`, upper side only.
    pub duality_ok: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistributionRow {
    pub j: i64,
    pub value: u64,
    /// Count of upper samples with `b̃_j = value`.
    pub upper: u64,
    /// Count of lower-dual samples with `b̃_{n-2-j} = value`.
    pub lower_dual: u64,
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub config: DualityConfig,
    pub samples: Vec<DualitySample>,
    pub duality_failures: u64,
    pub distribution: Vec<DistributionRow>,
}

/// `b̃_j(c(X)) = b̃_{n-2-j}(X)` for `j = -1, .., n-1`.
pub fn alexander_duality_holds(x: &Complex, field: Field) -> Result<bool> {
    let n = x.ambient().n() as i64;
    let bx = betti(x, field)?;
    let bc = betti(&dual_c(x)?, field)?;
    Ok((-1..n).all(|j| bc.b_reduced(j) == bx.b_reduced(n - 2 - j)))
}

pub fn run_duality(cfg: &DualityConfig) -> Result<DualityReport> {
    let amb = Ambient::boundary(cfg.n)?;
    if cfg.params.ambient() != amb {
        return Err(Error::AmbientMismatch(cfg.params.ambient().to_string(), amb.to_string()));
    }
    let upper = Sampler::new(SampleSpec::new(cfg.params.clone(), Model::Upper, cfg.samples, cfg.seed)?);
    let lower = Sampler::new(SampleSpec::new(
        dual_params(&cfg.params)?,
        Model::Lower,
        cfg.samples,
        cfg.seed ^ DUAL_SEED_OFFSET,
    )?);
    let field = cfg.field;
    let up: Vec<DualitySample> = upper
        .par_map(|i, y| -> Result<DualitySample> {
            Ok(DualitySample {
                index: i,
                side: "upper",
                f: y.f_vector(),
                betti: betti(&y, field)?,
                duality_ok: Some(alexander_duality_holds(&y, field)?),
            })
        })
        .into_iter()
        .collect::<Result<_>>()?;
    let lo: Vec<DualitySample> = lower
        .par_map(|i, x| -> Result<DualitySample> {
            Ok(DualitySample { index: i, side: "lower-dual", f: x.f_vector(), betti: betti(&x, field)?, duality_ok: None })
        })
        .into_iter()
        .collect::<Result<_>>()?;
    let duality_failures = up.iter().filter(|s| s.duality_ok == Some(false)).count() as u64;
    let n = cfg.n as i64;
    let mut counts: BTreeMap<(i64, u64), (u64, u64)> = BTreeMap::new();
    for j in -1..n {
        for s in &up {
            counts.entry((j, s.betti.b_reduced(j))).or_default().0 += 1;
        }
        for s in &lo {
            counts.entry((j, s.betti.b_reduced(n - 2 - j))).or_default().1 += 1;
        }
    }
    let distribution = counts
        .into_iter()
        .map(|((j, value), (upper, lower_dual))| DistributionRow { j, value, upper, lower_dual })
        .collect();
    let mut samples = up;
    samples.extend(lo);
    Ok(DualityReport { config: cfg.clone(), samples, duality_failures, distribution })
}

impl DualityReport {
    pub fn write(&self, dir: &Path, build_id: &str) -> Result<Vec<PathBuf>> {
        let d = self.config.n as usize; // dimensions 0..n-1, plus one spare column
        let (mut w, samples_path) = csv_writer(dir, "samples.csv")?;
        let mut header = vec!["sample_index".to_string(), "side".into()];
        header.extend(shape_headers(d));
        header.push("duality_ok".into());
        w.write_record(&header)?;
        for s in &self.samples {
            let mut row = vec![s.index.to_string(), s.side.to_string()];
            row.extend(shape_cells(&s.f, &s.betti, d));
            row.push(s.duality_ok.map_or(String::new(), |b| b.to_string()));
            w.write_record(&row)?;
        }
        w.flush()?;
        let (mut w, dist_path) = csv_writer(dir, "distribution.csv")?;
        for row in &self.distribution {
            w.serialize(row)?;
        }
        w.flush()?;
        let cfg = ExperimentConfig::Duality(self.config.clone());
        let notes = json!({"dual_seed": self.config.seed ^ DUAL_SEED_OFFSET, "duality_failures": self.duality_failures});
        let manifest = cfg.manifest(build_id, &["samples.csv", "distribution.csv"], notes);
        Ok(vec![samples_path, dist_path, write_manifest(dir, &manifest)?])
    }
}

/// Exact laws of `b̃_j` under the upper measure and of `b̃_{n-2-j}` under the
/// lower measure with dual parameters, keyed by `(j, value)`.
pub fn exact_duality_laws(params: &ParamMap<BigRational>) -> Result<BTreeMap<(i64, u64), (BigRational, BigRational)>> {
    let n = params.ambient().n() as i64;
    let up = pushforward(Closure::Upper, params)?;
    let lo = pushforward(Closure::Lower, &dual_params(params)?)?;
    let mut laws: BTreeMap<(i64, u64), (BigRational, BigRational)> = BTreeMap::new();
    for (y, p) in &up.entries {
        let b = betti(y, Field::Rational)?;
        for j in -1..n {
            laws.entry((j, b.b_reduced(j))).or_default().0 += p;
        }
    }
    for (x, p) in &lo.entries {
        let b = betti(x, Field::Rational)?;
        for j in -1..n {
            laws.entry((j, b.b_reduced(n - 2 - j))).or_default().1 += p;
        }
    }
    Ok(laws)
}

/// Renders exact laws for reports.
pub fn format_laws(laws: &BTreeMap<(i64, u64), (BigRational, BigRational)>) -> Vec<Value> {
    laws.iter()
        .map(|((j, v), (a, b))| json!({"j": j, "value": v, "upper": format_rational(a), "lower_dual": format_rational(b)}))
        .collect()
}

// ---------------------------------------------------------------- threshold

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdConfig {
    pub n: u64,
    pub k: u32,
    pub ell: u32,
    pub omegas: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdRow {
    pub omega: f64,
    pub p: f64,
    pub clamped: bool,
    pub trials: u64,
    pub contained: u64,
    pub fraction: f64,
}

/// Fraction of pure-model complexes containing the `ℓ`-skeleton at
/// `p = skeleton_threshold(n, k, ℓ, ω)` for each `ω`.
pub fn run_threshold(cfg: &ThresholdConfig) -> Result<Vec<ThresholdRow>> {
    cfg.omegas
        .iter()
        .map(|&omega| {
            let t = skeleton_threshold(cfg.n, cfg.k as u64, cfg.ell as u64, omega)?;
            let contained = if t.p == 0.0 {
                // no k-simplex is ever drawn, so not even the vertices are covered
                0
            } else {
                (0..cfg.trials)
                    .into_par_iter()
                    .map(|i| sample_pure_sparse(cfg.n, cfg.k, t.p, cfg.seed, i).map(|c| c.contains_skeleton(cfg.ell)))
                    .collect::<Result<Vec<bool>>>()?
                    .into_iter()
                    .filter(|&b| b)
                    .count() as u64
            };
            Ok(ThresholdRow {
                omega,
                p: t.p,
                clamped: t.clamped,
                trials: cfg.trials,
                contained,
                fraction: contained as f64 / cfg.trials as f64,
            })
        })
        .collect()
}

pub fn write_threshold(cfg: &ThresholdConfig, rows: &[ThresholdRow], dir: &Path, build_id: &str) -> Result<Vec<PathBuf>> {
    let (mut w, path) = csv_writer(dir, "threshold.csv")?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    let manifest = ExperimentConfig::Threshold(cfg.clone()).manifest(build_id, &["threshold.csv"], Value::Null);
    Ok(vec![path, write_manifest(dir, &manifest)?])
}

// ---------------------------------------------------------------- betti profile

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BettiProfileConfig {
    pub n: u32,
    pub alpha: Vec<f64>,
    pub samples: u64,
    pub seed: u64,
    pub field: Field,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProfileSample {
    pub index: u64,
    pub f: Vec<u64>,
    pub betti: BettiVector,
}

#[derive(Clone, Debug)]
pub struct BettiProfileReport {
    pub config: BettiProfileConfig,
    pub profile: BetaProfile,
    /// `n^{γ_k} / ((k+1)! (i*_k - k)!)` for `k = 0..=r`.
    pub predictions: Vec<f64>,
    pub samples: Vec<ProfileSample>,
    pub warnings: Vec<String>,
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

pub fn run_betti_profile(cfg: &BettiProfileConfig) -> Result<BettiProfileReport> {
    let ep = ExponentProfile::new(cfg.alpha.clone())?;
    let profile = beta_profile(&ep)?;
    let mut warnings = Vec::new();
    if profile.spread != 0 {
        warnings.push(format!("spread is {}, the vanishing and dominance predictions assume zero spread", profile.spread));
    }
    let nf = cfg.n as f64;
    let predictions = (0..cfg.alpha.len())
        .map(|k| nf.powf(profile.gamma[k]) / (factorial(k + 1) * factorial(profile.i_star_k[k] - k)))
        .collect();
    let amb = Ambient::simplex(cfg.n)?;
    let sampler = Sampler::new(SampleSpec::new(ParamMap::exponent(amb, &cfg.alpha)?, Model::Upper, cfg.samples, cfg.seed)?);
    let field = cfg.field;
    let samples = sampler
        .par_map(|i, y| -> Result<ProfileSample> { Ok(ProfileSample { index: i, f: y.f_vector(), betti: betti(&y, field)? }) })
        .into_iter()
        .collect::<Result<_>>()?;
    Ok(BettiProfileReport { config: cfg.clone(), profile, predictions, samples, warnings })
}

impl BettiProfileReport {
    pub fn write(&self, dir: &Path, build_id: &str) -> Result<Vec<PathBuf>> {
        let r = self.config.alpha.len() - 1;
        let (mut w, path) = csv_writer(dir, "betti_profile.csv")?;
        let mut header = vec!["sample_index".to_string()];
        header.extend(shape_headers(r));
        header.extend((0..=r).map(|k| format!("prediction_{k}")));
        w.write_record(&header)?;
        for s in &self.samples {
            let mut row = vec![s.index.to_string()];
            row.extend(shape_cells(&s.f, &s.betti, r));
            row.extend(self.predictions.iter().map(|p| p.to_string()));
            w.write_record(&row)?;
        }
        w.flush()?;
        let notes = json!({"profile": self.profile, "predictions": self.predictions, "warnings": self.warnings});
        let manifest = ExperimentConfig::BettiProfile(self.config.clone()).manifest(build_id, &["betti_profile.csv"], notes);
        Ok(vec![path, write_manifest(dir, &manifest)?])
    }
}

// ---------------------------------------------------------------- face counts

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceCountsConfig {
    pub n: u32,
    pub alpha: Vec<f64>,
    pub samples: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaceCountRow {
    pub k: usize,
    pub exact: f64,
    pub mean: f64,
    pub std_error: f64,
    /// `(mean - exact) / std_error`; zero when both agree with no spread.
    pub z: f64,
}

/// Monte Carlo mean of `f_k` for upper complexes on `Δ_n` against the exact
/// expectation, `k = 0..=r`.
pub fn run_face_counts(cfg: &FaceCountsConfig) -> Result<Vec<FaceCountRow>> {
    let amb = Ambient::simplex(cfg.n)?;
    let params = ParamMap::exponent(amb, &cfg.alpha)?;
    let probs = params.dimension_probs().expect("per-dimension").to_vec();
    let sampler = Sampler::new(SampleSpec::new(params, Model::Upper, cfg.samples, cfg.seed)?);
    let r = cfg.alpha.len() - 1;
    let fs: Vec<Vec<u64>> = sampler.par_map(|_, y| padded(&y.f_vector(), r + 1));
    let m = cfg.samples as f64;
    Ok((0..=r)
        .map(|k| {
            let exact = ln_expected_face_count_probs(cfg.n as f64, &probs, k).exp();
            let mean = fs.iter().map(|f| f[k] as f64).sum::<f64>() / m;
            let var = fs.iter().map(|f| (f[k] as f64 - mean).powi(2)).sum::<f64>() / (m - 1.0).max(1.0);
            let std_error = (var / m).sqrt();
            let z = if std_error > 0.0 { (mean - exact) / std_error } else if mean == exact { 0.0 } else { f64::INFINITY };
            FaceCountRow { k, exact, mean, std_error, z }
        })
        .collect())
}

pub fn write_face_counts(cfg: &FaceCountsConfig, rows: &[FaceCountRow], dir: &Path, build_id: &str) -> Result<Vec<PathBuf>> {
    let (mut w, path) = csv_writer(dir, "face_counts.csv")?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    let manifest = ExperimentConfig::FaceCounts(cfg.clone()).manifest(build_id, &["face_counts.csv"], Value::Null);
    Ok(vec![path, write_manifest(dir, &manifest)?])
}

// ---------------------------------------------------------------- dispatch

/// Any experiment, as stored in a manifest's `config` field.
#[derive(Clone, Debug)]
pub enum ExperimentConfig {
    Duality(DualityConfig),
    Threshold(ThresholdConfig),
    BettiProfile(BettiProfileConfig),
    FaceCounts(FaceCountsConfig),
}

impl ExperimentConfig {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentConfig::Duality(_) => "duality",
            ExperimentConfig::Threshold(_) => "threshold",
            ExperimentConfig::BettiProfile(_) => "betti-profile",
            ExperimentConfig::FaceCounts(_) => "face-counts",
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            ExperimentConfig::Duality(c) => c.seed,
            ExperimentConfig::Threshold(c) => c.seed,
            ExperimentConfig::BettiProfile(c) => c.seed,
            ExperimentConfig::FaceCounts(c) => c.seed,
        }
    }

    /// The config object with an `"experiment"` tag.
    pub fn to_json(&self) -> Value {
        let mut v = match self {
            ExperimentConfig::Duality(c) => c.to_json(),
            ExperimentConfig::Threshold(c) => serde_json::to_value(c).expect("config serializes"),
            ExperimentConfig::BettiProfile(c) => serde_json::to_value(c).expect("config serializes"),
            ExperimentConfig::FaceCounts(c) => serde_json::to_value(c).expect("config serializes"),
        };
        v["experiment"] = json!(self.name());
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let mut body = v.clone();
        let name = body
            .as_object_mut()
            .and_then(|o| o.remove("experiment"))
            .and_then(|n| n.as_str().map(str::to_owned))
            .ok_or_else(|| Error::Parse("config: missing \"experiment\" name".into()))?;
        let parse = |what: &str, e: serde_json::Error| Error::Parse(format!("{what} config: {e}"));
        match name.as_str() {
            "duality" => Ok(ExperimentConfig::Duality(DualityConfig::from_json(&body)?)),
            "threshold" => Ok(ExperimentConfig::Threshold(serde_json::from_value(body).map_err(|e| parse("threshold", e))?)),
            "betti-profile" => {
                Ok(ExperimentConfig::BettiProfile(serde_json::from_value(body).map_err(|e| parse("betti-profile", e))?))
            }
            "face-counts" => Ok(ExperimentConfig::FaceCounts(serde_json::from_value(body).map_err(|e| parse("face-counts", e))?)),
            other => Err(Error::Parse(format!("unknown experiment {other:?}"))),
        }
    }

    fn manifest(&self, build_id: &str, outputs: &[&str], notes: Value) -> Manifest {
        Manifest {
            experiment: self.name().into(),
            config: self.to_json(),
            seed: self.seed(),
            build_id: build_id.into(),
            outputs: outputs.iter().map(|s| s.to_string()).collect(),
            notes,
        }
    }
}

/// Files written by an experiment and a JSON summary of its results.
#[derive(Clone, Debug)]
pub struct ExperimentOutcome {
    pub files: Vec<PathBuf>,
    pub summary: Value,
}

/// Runs `cfg` and writes its CSVs and manifest into `dir`.
pub fn run_experiment(cfg: &ExperimentConfig, dir: &Path, build_id: &str) -> Result<ExperimentOutcome> {
    match cfg {
        ExperimentConfig::Duality(c) => {
            let rep = run_duality(c)?;
            let files = rep.write(dir, build_id)?;
            Ok(ExperimentOutcome {
                files,
                summary: json!({"samples": c.samples, "duality_failures": rep.duality_failures}),
            })
        }
        ExperimentConfig::Threshold(c) => {
            let rows = run_threshold(c)?;
            Ok(ExperimentOutcome { files: write_threshold(c, &rows, dir, build_id)?, summary: serde_json::to_value(&rows)? })
        }
        ExperimentConfig::BettiProfile(c) => {
            let rep = run_betti_profile(c)?;
            let files = rep.write(dir, build_id)?;
            let median = |j: i64| {
                let mut v: Vec<u64> = rep.samples.iter().map(|s| s.betti.b_reduced(j)).collect();
                v.sort_unstable();
                v[v.len() / 2]
            };
            let medians: Vec<u64> = (0..c.alpha.len() as i64).map(median).collect();
            Ok(ExperimentOutcome {
                files,
                summary: json!({
                    "k_star": rep.profile.k_star,
                    "spread": rep.profile.spread,
                    "predictions": rep.predictions,
                    "median_btilde": medians,
                    "warnings": rep.warnings,
                }),
            })
        }
        ExperimentConfig::FaceCounts(c) => {
            let rows = run_face_counts(c)?;
            Ok(ExperimentOutcome { files: write_face_counts(c, &rows, dir, build_id)?, summary: serde_json::to_value(&rows)? })
        }
    }
}

/// Reruns the experiment recorded in a manifest.
pub fn replay_manifest(manifest: &Value, dir: &Path, build_id: &str) -> Result<ExperimentOutcome> {
    let config = manifest.get("config").ok_or_else(|| Error::Parse("manifest: missing \"config\"".into()))?;
    run_experiment(&ExperimentConfig::from_json(config)?, dir, build_id)
}

// ---------------------------------------------------------------- expectation table

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpectationRow {
    pub n: u64,
    pub k: usize,
    pub exact: f64,
    pub ln_exact: f64,
    pub asymptotic: Option<f64>,
    pub leading_sum: f64,
}

/// `E(f_k)` on `Δ_n` for every `n` in `ns` and `k = 0..=r`.
pub fn expectation_table(profile: &ExponentProfile, ns: &[u64]) -> Vec<ExpectationRow> {
    ns.iter()
        .flat_map(|&n| {
            (0..=profile.r()).map(move |k| {
                let e = expected_face_count(n, profile, k);
                ExpectationRow { n, k, exact: e.value, ln_exact: e.ln_value, asymptotic: e.asymptotic, leading_sum: e.leading_sum }
            })
        })
        .collect()
}

pub fn write_expectation_csv<W: std::io::Write>(w: W, rows: &[ExpectationRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(w);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::Probability;

    #[test]
    fn duality_experiment_small() {
        let amb = Ambient::boundary(4).unwrap();
        let cfg = DualityConfig {
            n: 4,
            params: ParamMap::per_dimension(amb, vec![0.6, 0.3, 0.1, 0.05]).unwrap(),
            samples: 200,
            seed: 5,
            field: Field::Rational,
        };
        let rep = run_duality(&cfg).unwrap();
        assert_eq!(rep.duality_failures, 0);
        assert_eq!(rep.samples.len(), 400);
        let dir = tempfile_dir("duality");
        let files = rep.write(&dir, "test").unwrap();
        assert!(files.iter().all(|p| p.exists()));
        let again = run_duality(&cfg).unwrap();
        assert_eq!(again.samples, rep.samples);
    }

    #[test]
    fn exact_laws_match_at_n3() {
        let amb = Ambient::boundary(3).unwrap();
        let p = ParamMap::per_dimension(amb, vec![BigRational::from_ratio(2, 3), BigRational::from_ratio(1, 3), BigRational::from_ratio(1, 4)]).unwrap();
        for (_, (a, b)) in exact_duality_laws(&p).unwrap() {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn certain_threshold_is_always_contained() {
        let cfg = ThresholdConfig { n: 30, k: 2, ell: 0, omegas: vec![1e6], trials: 5, seed: 1 };
        let rows = run_threshold(&cfg).unwrap();
        assert_eq!(rows[0].p, 1.0);
        assert_eq!(rows[0].fraction, 1.0);
    }

    #[test]
    fn face_counts_small() {
        let cfg = FaceCountsConfig { n: 12, alpha: vec![0.3, 0.5, 2.9], samples: 500, seed: 2 };
        for row in run_face_counts(&cfg).unwrap() {
            assert!(row.z.abs() < 5.0, "{row:?}");
        }
    }

    #[test]
    fn replay_reproduces_csv() {
        let cfg = ExperimentConfig::BettiProfile(BettiProfileConfig {
            n: 15,
            alpha: vec![1.6, 0.4, 2.5],
            samples: 20,
            seed: 3,
            field: EXPERIMENT_FIELD,
        });
        let (a, b) = (tempfile_dir("replay-a"), tempfile_dir("replay-b"));
        run_experiment(&cfg, &a, "x").unwrap();
        let manifest: Value = serde_json::from_str(&std::fs::read_to_string(a.join("manifest.json")).unwrap()).unwrap();
        replay_manifest(&manifest, &b, "x").unwrap();
        let read = |d: &Path| std::fs::read(d.join("betti_profile.csv")).unwrap();
        assert_eq!(read(&a), read(&b));
        assert_eq!(ExperimentConfig::from_json(&cfg.to_json()).unwrap().to_json(), cfg.to_json());
    }

    fn tempfile_dir(name: &str) -> PathBuf {
        let d = std::env::temp_dir().join(format!("complexlab-{name}-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&d);
        d
    }
}
