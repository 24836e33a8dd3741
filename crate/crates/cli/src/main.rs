use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use complexlab::asymptotics::{
    beta_profile, lower_critical_dimension, skeleton_threshold, zero_spread_criterion, ExponentProfile,
};
use complexlab::duality::{dual_c, dual_prime, nerve_of_maximal, LabelledComplex};
use complexlab::experiments::{
    expectation_table, init_thread_pool, replay_manifest, run_experiment, write_expectation_csv, BettiProfileConfig,
    DualityConfig, ExperimentConfig, FaceCountsConfig, ThresholdConfig, EXPERIMENT_FIELD,
};
use complexlab::homology::{betti, Field};
use complexlab::io::{complex_to_json, params_from_json, params_from_json_f64, parse_ambient, read_complex, read_json, write_jsonl};
use complexlab::measures::{
    hypergraph_prob, lower_measure, sandwich_lower_routes, sandwich_upper_routes, upper_measure, SandwichRoutes,
    DEFAULT_GUARD,
};
use complexlab::oracle::{default_param_sets, verify_identities, Identity, Outcome};
use complexlab::prob::format_rational;
use complexlab::sampler::{Model, SampleSpec, Sampler};
use complexlab::{Ambient, Complex, ParamMap, Probability, Rational};
use serde_json::{json, Value};

const BUILD_ID: &str = env!("COMPLEXLAB_BUILD_ID");

#[derive(Parser)]
#[command(name = "complexlab", version, about = "Lower and upper random simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw complexes and write them as JSON lines.
    Sample(SampleArgs),
    /// Betti numbers of a complex.
    Betti {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long, default_value = "Q", value_parser = parse_field)]
        field: Field,
    },
    /// Alexander dual, dual complex or nerve of maximal faces.
    Dual {
        #[arg(long, value_enum)]
        op: DualOp,
        #[arg(long)]
        complex: PathBuf,
        /// Expected ambient dimension; checked against the file.
        #[arg(long)]
        n: Option<u32>,
    },
    /// Probability of a complex (or hypergraph) under a model.
    Measure {
        #[arg(long, value_enum)]
        model: MeasureModel,
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        params: PathBuf,
    },
    /// P(A ⊆ Y ⊆ B) under the lower or upper model.
    Sandwich {
        #[arg(long, value_enum)]
        model: ClosureModel,
        /// The complex A.
        #[arg(long)]
        lower: PathBuf,
        /// The complex B.
        #[arg(long)]
        upper: PathBuf,
        #[arg(long)]
        params: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: u32,
        /// Print every evaluation route as JSON.
        #[arg(long)]
        routes: bool,
    },
    /// Critical dimensions and growth exponents of an exponent profile.
    Critdim {
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<f64>,
    },
    /// Exact expected face counts E(f_k) of the upper model on Δ_n, as CSV.
    Expect {
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
    },
    /// Skeleton threshold probability of the pure model.
    Threshold {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 0)]
        ell: u64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        omega: f64,
    },
    /// Exhaustive identity checks on a small ambient.
    Oracle {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "boundary")]
        ambient: String,
        /// `all` or a comma-separated list of identity names.
        #[arg(long, default_value = "all")]
        check: String,
        /// Rational parameters; defaults to a built-in family.
        #[arg(long)]
        params: Option<PathBuf>,
    },
    /// Monte Carlo experiments writing CSV reports and a manifest.
    Experiment {
        #[command(subcommand)]
        kind: ExperimentKind,
    },
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value = "delta")]
    ambient: String,
    #[arg(long, value_enum, default_value = "upper")]
    model: SampleModel,
    #[command(flatten)]
    params: ParamSource,
    /// Generator dimension for the pure model.
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, default_value_t = 1)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ParamSource {
    /// Parameter file (explicit, dimension or exponent mode).
    #[arg(long, conflicts_with_all = ["alpha", "p"])]
    params: Option<PathBuf>,
    /// Exponents, giving p_i = n^{-α_i}.
    #[arg(long, value_delimiter = ',', conflicts_with = "p")]
    alpha: Option<Vec<f64>>,
    /// One probability for every simplex.
    #[arg(long)]
    p: Option<f64>,
}

impl ParamSource {
    fn resolve(&self, amb: Ambient) -> Result<ParamMap<f64>> {
        if let Some(path) = &self.params {
            return Ok(params_from_json_f64(&read_json(path)?, amb)?);
        }
        if let Some(alpha) = &self.alpha {
            return Ok(ParamMap::exponent(amb, alpha)?);
        }
        if let Some(p) = self.p {
            return Ok(ParamMap::uniform(amb, p)?);
        }
        bail!("give one of --params, --alpha or --p")
    }
}

#[derive(Subcommand)]
enum ExperimentKind {
    /// Betti laws of upper(P) against lower(dual P) on ∂Δ_n.
    Duality {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        params: ParamSource,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Skeleton containment in the pure model around the threshold.
    Threshold {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        ell: u32,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-6,-3,0,3,6")]
        omega: Vec<f64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// f-vectors and Betti numbers of upper complexes with predictions.
    BettiProfile {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<f64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Monte Carlo face counts against the exact expectation.
    FaceCounts {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<f64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the experiment described by a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rerun the experiment recorded in a manifest.
    Replay {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// Samples (trials for the threshold experiment).
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = EXPERIMENT_FIELD, value_parser = parse_field)]
    field: Field,
}

#[derive(Clone, Copy, ValueEnum)]
enum DualOp {
    C,
    Prime,
    Nerve,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureModel {
    Hypergraph,
    Lower,
    Upper,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClosureModel {
    Lower,
    Upper,
}

#[derive(Clone, Copy, ValueEnum)]
enum SampleModel {
    Hypergraph,
    Lower,
    Upper,
    Pure,
}

fn parse_field(s: &str) -> Result<Field, String> {
    Field::parse(s).map_err(|e| e.to_string())
}

fn print_json(v: &Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

enum Exit {
    Ok,
    Counterexample,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_thread_pool();
    match run(cli.command) {
        Ok(Exit::Ok) => ExitCode::SUCCESS,
        Ok(Exit::Counterexample) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Exit> {
    match command {
        Command::Sample(args) => cmd_sample(args)?,
        Command::Betti { complex, field } => {
            let y = read_complex(&complex)?;
            let b = betti(&y, field)?;
            print_json(&json!({
                "field": b.field,
                "betti": b.betti,
                "reduced": b.reduced,
                "euler_characteristic": b.euler_characteristic(),
                "f_vector": y.f_vector(),
            }))?;
        }
        Command::Dual { op, complex, n } => {
            let y = read_complex(&complex)?;
            if let Some(n) = n {
                if y.ambient().n() != n {
                    bail!("{} is a complex with n = {}, not {n}", complex.display(), y.ambient().n());
                }
            }
            match op {
                DualOp::C => print_json(&complex_to_json(&dual_c(&y)?))?,
                DualOp::Prime => print_json(&labelled_json(&dual_prime(&y)?))?,
                DualOp::Nerve => print_json(&labelled_json(&nerve_of_maximal(&y)?))?,
            }
        }
        Command::Measure { model, complex, params } => cmd_measure(model, &complex, &params)?,
        Command::Sandwich { model, lower, upper, params, guard, routes } => {
            let (a, b) = (read_complex(&lower)?, read_complex(&upper)?);
            if a.ambient() != b.ambient() {
                bail!("{} and {} live in different ambients", lower.display(), upper.display());
            }
            let v = read_json(&params)?;
            match params_from_json::<Rational>(&v, a.ambient()) {
                Ok(pm) => print_sandwich(model, &a, &b, &pm, guard, routes, format_rational)?,
                Err(complexlab::Error::InvalidParams(_)) => {
                    let pm = params_from_json_f64(&v, a.ambient())?;
                    print_sandwich(model, &a, &b, &pm, guard, routes, |x: &f64| x.to_string())?
                }
                Err(e) => return Err(e).with_context(|| format!("reading {}", params.display())),
            }
        }
        Command::Critdim { alpha } => {
            let profile = ExponentProfile::new(alpha)?;
            let b = beta_profile(&profile)?;
            let lower = lower_critical_dimension(&profile);
            print_json(&json!({
                "alpha": profile.alpha(),
                "beta": b.beta,
                "beta_star": b.beta_star,
                "i_star": b.i_star,
                "k_star": b.k_star,
                "spread": b.spread,
                "zero_spread": zero_spread_criterion(&profile)?,
                "gamma": b.gamma,
                "beta_star_k": b.beta_star_k,
                "i_star_k": b.i_star_k,
                "lower": lower,
            }))?;
        }
        Command::Expect { alpha, n } => {
            let rows = expectation_table(&ExponentProfile::new(alpha)?, &n);
            write_expectation_csv(io::stdout().lock(), &rows)?;
        }
        Command::Threshold { n, k, ell, omega } => {
            print_json(&serde_json::to_value(skeleton_threshold(n, k, ell, omega)?)?)?;
        }
        Command::Oracle { n, ambient, check, params } => return cmd_oracle(n, &ambient, &check, params.as_deref()),
        Command::Experiment { kind } => cmd_experiment(kind)?,
    }
    Ok(Exit::Ok)
}

fn labelled_json(l: &LabelledComplex) -> Value {
    let labels: Vec<Vec<u32>> = l.labels.iter().map(|s| s.vertices().collect()).collect();
    json!({"labels": labels, "simplices": l.complex.vertex_lists()})
}

fn cmd_sample(args: SampleArgs) -> Result<()> {
    let amb = parse_ambient(args.n, &args.ambient)?;
    let (params, model) = match args.model {
        SampleModel::Pure => {
            let k = args.k.ok_or_else(|| anyhow!("the pure model needs --k"))?;
            let p = args.params.p.ok_or_else(|| anyhow!("the pure model needs --p"))?;
            (ParamMap::uniform(amb, 0.0)?, Model::Pure { k, p })
        }
        other => {
            let model = match other {
                SampleModel::Hypergraph => Model::Hypergraph,
                SampleModel::Lower => Model::Lower,
                _ => Model::Upper,
            };
            (args.params.resolve(amb)?, model)
        }
    };
    let sampler = Sampler::new(SampleSpec::new(params, model, args.samples, args.seed)?);
    let samples = sampler.sample_all();
    match &args.out {
        Some(path) => {
            let w = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
            write_jsonl(w, &samples)?;
        }
        None => write_jsonl(io::stdout().lock(), &samples)?,
    }
    Ok(())
}

fn cmd_measure(model: MeasureModel, complex: &Path, params: &Path) -> Result<()> {
    let y = read_complex(complex)?;
    let v = read_json(params)?;
    fn eval<P: Probability>(model: MeasureModel, y: &Complex, pm: &ParamMap<P>) -> complexlab::Result<P> {
        match model {
            MeasureModel::Hypergraph => hypergraph_prob(y, pm),
            MeasureModel::Lower => lower_measure(y, pm),
            MeasureModel::Upper => upper_measure(y, pm),
        }
    }
    match params_from_json::<Rational>(&v, y.ambient()) {
        Ok(pm) => println!("{}", format_rational(&eval(model, &y, &pm)?)),
        Err(complexlab::Error::InvalidParams(_)) => {
            println!("{}", eval(model, &y, &params_from_json_f64(&v, y.ambient())?)?)
        }
        Err(e) => return Err(e).with_context(|| format!("reading {}", params.display())),
    }
    Ok(())
}

fn print_sandwich<P: Probability>(
    model: ClosureModel,
    a: &Complex,
    b: &Complex,
    pm: &ParamMap<P>,
    guard: u32,
    all_routes: bool,
    show: impl Fn(&P) -> String,
) -> Result<()> {
    let routes: SandwichRoutes<P> = match model {
        ClosureModel::Lower => sandwich_lower_routes(a, b, pm, guard)?,
        ClosureModel::Upper => sandwich_upper_routes(a, b, pm, guard)?,
    };
    if all_routes {
        print_json(&json!({
            "value": show(&routes.value()),
            "general": show(&routes.general),
            "product": routes.product.as_ref().map(&show),
            "closed_form": routes.closed_form.as_ref().map(&show),
        }))
    } else {
        println!("{}", show(&routes.value()));
        Ok(())
    }
}

fn cmd_oracle(n: u32, ambient: &str, check: &str, params: Option<&Path>) -> Result<Exit> {
    let amb = parse_ambient(n, ambient)?;
    let identities = Identity::parse_list(check)?;
    let sets = match params {
        Some(path) => vec![(path.display().to_string(), params_from_json::<Rational>(&read_json(path)?, amb)?)],
        None => default_param_sets(amb)?,
    };
    let mut failed = false;
    let mut out = io::stdout().lock();
    for (name, pm) in &sets {
        for report in verify_identities(pm, &identities)? {
            let mut line = json!({"params": name, "identity": report.identity.name(), "outcome": report.outcome});
            if let Outcome::Failed(c) = &report.outcome {
                failed = true;
                line["complexes"] = json!(c.complexes.iter().map(complex_to_json).collect::<Vec<_>>());
            }
            writeln!(out, "{}", serde_json::to_string(&line)?)?;
        }
    }
    Ok(if failed { Exit::Counterexample } else { Exit::Ok })
}

fn cmd_experiment(kind: ExperimentKind) -> Result<()> {
    let (outcome, out) = match kind {
        ExperimentKind::Run { config, out } => {
            let cfg = ExperimentConfig::from_json(&read_json(&config)?)?;
            (run_experiment(&cfg, &out, BUILD_ID)?, out)
        }
        ExperimentKind::Replay { manifest, out } => (replay_manifest(&read_json(&manifest)?, &out, BUILD_ID)?, out),
        kind => {
            let (cfg, out) = match kind {
                ExperimentKind::Duality { n, params, common } => {
                    let amb = Ambient::boundary(n)?;
                    let cfg = DualityConfig {
                        n,
                        params: params.resolve(amb)?,
                        samples: common.samples,
                        seed: common.seed,
                        field: common.field,
                    };
                    (ExperimentConfig::Duality(cfg), common.out)
                }
                ExperimentKind::Threshold { n, k, ell, omega, common } => {
                    let cfg = ThresholdConfig { n, k, ell, omegas: omega, trials: common.samples, seed: common.seed };
                    (ExperimentConfig::Threshold(cfg), common.out)
                }
                ExperimentKind::BettiProfile { n, alpha, common } => {
                    let cfg = BettiProfileConfig { n, alpha, samples: common.samples, seed: common.seed, field: common.field };
                    (ExperimentConfig::BettiProfile(cfg), common.out)
                }
                ExperimentKind::FaceCounts { n, alpha, common } => {
                    let cfg = FaceCountsConfig { n, alpha, samples: common.samples, seed: common.seed };
                    (ExperimentConfig::FaceCounts(cfg), common.out)
                }
                ExperimentKind::Run { .. } | ExperimentKind::Replay { .. } => unreachable!(),
            };
            (run_experiment(&cfg, &out, BUILD_ID)?, out)
        }
    };
    if let Some(warnings) = outcome.summary.get("warnings").and_then(Value::as_array) {
        for w in warnings {
            eprintln!("warning: {}", w.as_str().unwrap_or_default());
        }
    }
    print_json(&json!({
        "out": out,
        "files": outcome.files,
        "summary": outcome.summary,
    }))
}
