//! Monte Carlo logical error rate estimation.
//!
//! Configs are flat `key = value` text:
//!
//! ```text
//! # comments start with '#'
//! code = surface 3             # or: problem = H.alist L.alist
//! noise = depolarizing-split   # bsc | depolarizing | depolarizing-split
//! decoder = bposd              # bp | bposd | mwd | mld
//! osd_order = 2
//! bp_variant = sum-product     # or min-sum
//! max_iterations = 100
//! min_sum_scale = 0.8125
//! llr_clamp = 30
//! rates = 0.01, 0.02
//! trials = 10000
//! seed = 1
//! max_wall_time = 60           # seconds per rate point, optional
//! timing = false               # fill the seconds column
//! ```
//!
//! Relative paths resolve against the config file's directory. Trial `t` at
//! rate index `i` draws from `trial_rng(seed, i, t)`, so results do not
//! depend on the thread count.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::decoders::{success, BpConfig, BpVariant, Decoder, DecoderSpec};
use crate::error::{Error, Result};
use crate::f2la::{alist, F2Matrix, F2Vec};
use crate::io::{BuiltCode, CodeSpec};
use crate::noise::{
    depolarizing_problem, depolarizing_split, sample_depolarizing, stabilizer_depolarizing_problem,
    xzy_fault_vector, DecodingProblem, Prior,
};
use crate::rng::trial_rng;

/// Two-sided 95% normal quantile.
pub const WILSON_Z: f64 = 1.959963984540054;

/// Trials between wall-time checks.
const CHUNK: u64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseModel {
    /// Independent bit flips with the rate as prior.
    Bsc,
    /// Single-qubit depolarizing, one XZY problem.
    Depolarizing,
    /// Single-qubit depolarizing, Z and X faults decoded separately.
    DepolarizingSplit,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProblemSource {
    Code(CodeSpec),
    /// `H` and `L` alist files; the prior is uniform at each rate.
    Files {
        h: PathBuf,
        l: PathBuf,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchmarkConfig {
    pub source: ProblemSource,
    pub noise: NoiseModel,
    pub decoder: DecoderSpec,
    pub rates: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub max_wall_time: Option<f64>,
    /// When false the seconds column is 0, making output byte-reproducible.
    pub timing: bool,
    /// Directory that relative paths resolve against.
    pub base_dir: PathBuf,
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    v.parse()
        .map_err(|e| Error::Parse(format!("{key} = {v:?}: {e}")))
}

impl BenchmarkConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = crate::io::read_text(path)?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let mut source = None;
        let mut noise = None;
        let mut decoder = "bposd".to_string();
        let mut order = 0usize;
        let mut bp = BpConfig::default();
        let mut rates = None;
        let mut trials = None;
        let mut seed = 0u64;
        let mut max_wall_time = None;
        let mut timing = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Parse(format!("line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "code" => {
                    let words: Vec<&str> = value.split_whitespace().collect();
                    source = Some(ProblemSource::Code(CodeSpec::parse(&words)?));
                }
                "problem" => {
                    let words: Vec<&str> = value.split_whitespace().collect();
                    let [h, l] = words[..] else {
                        return Err(Error::Parse(
                            "problem takes an H and an L alist file".into(),
                        ));
                    };
                    source = Some(ProblemSource::Files {
                        h: base_dir.join(h),
                        l: base_dir.join(l),
                    });
                }
                "noise" => {
                    noise = Some(match value {
                        "bsc" => NoiseModel::Bsc,
                        "depolarizing" => NoiseModel::Depolarizing,
                        "depolarizing-split" => NoiseModel::DepolarizingSplit,
                        other => {
                            return Err(Error::Parse(format!("unknown noise model {other:?}")))
                        }
                    })
                }
                "decoder" => decoder = value.to_string(),
                "osd_order" => order = parse_value(key, value)?,
                "bp_variant" => {
                    bp.variant = match value {
                        "sum-product" => BpVariant::SumProduct,
                        "min-sum" => BpVariant::MinSum,
                        other => return Err(Error::Parse(format!("unknown BP variant {other:?}"))),
                    }
                }
                "max_iterations" => bp.max_iterations = parse_value(key, value)?,
                "min_sum_scale" => bp.min_sum_scale = parse_value(key, value)?,
                "llr_clamp" => bp.llr_clamp = parse_value(key, value)?,
                "rates" => {
                    rates = Some(
                        value
                            .split(',')
                            .map(|r| parse_value::<f64>(key, r.trim()))
                            .collect::<Result<Vec<_>>>()?,
                    )
                }
                "trials" => trials = Some(parse_value(key, value)?),
                "seed" => seed = parse_value(key, value)?,
                "max_wall_time" => max_wall_time = Some(parse_value(key, value)?),
                "timing" => timing = parse_value(key, value)?,
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            }
        }
        let source = source.ok_or_else(|| Error::Parse("missing code or problem".into()))?;
        let noise = noise.unwrap_or(match &source {
            ProblemSource::Code(CodeSpec::Hamming | CodeSpec::Repetition(_))
            | ProblemSource::Files { .. } => NoiseModel::Bsc,
            ProblemSource::Code(CodeSpec::FiveQubit) => NoiseModel::Depolarizing,
            ProblemSource::Code(_) => NoiseModel::DepolarizingSplit,
        });
        let decoder = match decoder.as_str() {
            "bp" => DecoderSpec::Bp { bp },
            "bposd" => DecoderSpec::Bposd { bp, order },
            "mwd" => DecoderSpec::Mwd,
            "mld" => DecoderSpec::Mld,
            other => return Err(Error::Parse(format!("unknown decoder {other:?}"))),
        };
        let cfg = Self {
            source,
            noise,
            decoder,
            rates: rates.ok_or_else(|| Error::Parse("missing rates".into()))?,
            trials: trials.ok_or_else(|| Error::Parse("missing trials".into()))?,
            seed,
            max_wall_time,
            timing,
            base_dir: base_dir.to_path_buf(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        if self.rates.is_empty() {
            return Err(Error::InvalidArgument("no rates given".into()));
        }
        if let Some(r) = self.rates.iter().find(|&&r| !(r > 0.0 && r <= 0.5)) {
            return Err(Error::InvalidArgument(format!("rate {r} outside (0, 0.5]")));
        }
        if let DecoderSpec::Bp { bp } | DecoderSpec::Bposd { bp, .. } = &self.decoder {
            bp.validate()?;
        }
        Ok(())
    }
}

/// How errors are drawn for one rate point.
#[derive(Clone, Debug)]
enum Sampler {
    /// Each problem samples its own prior.
    Independent,
    /// One depolarizing Pauli on `n` qubits, mapped to the XZY layout.
    DepolarizingXzy { n: usize, p: f64 },
    /// One depolarizing Pauli, split into (Z part, X part).
    DepolarizingSplit { n: usize, p: f64 },
}

/// Problems decoded per trial and how their errors are sampled.
#[derive(Clone, Debug)]
pub struct RatePlan {
    problems: Vec<DecodingProblem>,
    sampler: Sampler,
}

impl RatePlan {
    pub fn problems(&self) -> &[DecodingProblem] {
        &self.problems
    }

    /// One error per problem, drawn from the plan's noise model.
    pub fn sample(&self, rng: &mut impl rand::Rng) -> Result<Vec<F2Vec>> {
        Ok(match self.sampler {
            Sampler::Independent => self.problems.iter().map(|p| p.sample(rng)).collect(),
            Sampler::DepolarizingXzy { n, p } => {
                vec![xzy_fault_vector(&sample_depolarizing(n, p, rng)?)]
            }
            Sampler::DepolarizingSplit { n, p } => {
                let e = sample_depolarizing(n, p, rng)?;
                vec![e.z().clone(), e.x().clone()]
            }
        })
    }
}

fn load_built(cfg: &BenchmarkConfig) -> Result<Option<BuiltCode>> {
    match &cfg.source {
        ProblemSource::Code(spec) => spec.build(&cfg.base_dir).map(Some),
        ProblemSource::Files { .. } => Ok(None),
    }
}

/// Problems for one physical rate.
pub fn plan_for_rate(cfg: &BenchmarkConfig, p: f64) -> Result<RatePlan> {
    let built = load_built(cfg)?;
    plan_from(cfg, built.as_ref(), p)
}

fn plan_from(cfg: &BenchmarkConfig, built: Option<&BuiltCode>, p: f64) -> Result<RatePlan> {
    let unsupported = || {
        Error::InvalidArgument(format!(
            "noise model {:?} does not apply to this problem source",
            cfg.noise
        ))
    };
    match (built, cfg.noise) {
        (None, NoiseModel::Bsc) => {
            let ProblemSource::Files { h, l } = &cfg.source else {
                unreachable!("no built code means files")
            };
            let h = alist::read_file(h)?;
            let l = alist::read_file(l)?;
            let n = h.cols();
            Ok(RatePlan {
                problems: vec![DecodingProblem::new(h, l, Prior::uniform(n, p)?)?],
                sampler: Sampler::Independent,
            })
        }
        (Some(BuiltCode::Classical(code)), NoiseModel::Bsc) => {
            let n = code.n();
            Ok(RatePlan {
                problems: vec![DecodingProblem::new(
                    code.parity_check().clone(),
                    F2Matrix::identity(n),
                    Prior::uniform(n, p)?,
                )?],
                sampler: Sampler::Independent,
            })
        }
        (Some(BuiltCode::Css(code)), NoiseModel::Depolarizing) => Ok(RatePlan {
            problems: vec![depolarizing_problem(code, p)?],
            sampler: Sampler::DepolarizingXzy { n: code.n(), p },
        }),
        (Some(BuiltCode::Stabilizer(code)), NoiseModel::Depolarizing) => Ok(RatePlan {
            problems: vec![stabilizer_depolarizing_problem(code, p)?],
            sampler: Sampler::DepolarizingXzy { n: code.n(), p },
        }),
        (Some(BuiltCode::Css(code)), NoiseModel::DepolarizingSplit) => {
            let (z, x) = depolarizing_split(code, p)?;
            Ok(RatePlan {
                problems: vec![z, x],
                sampler: Sampler::DepolarizingSplit { n: code.n(), p },
            })
        }
        (Some(BuiltCode::Stabilizer(_)), NoiseModel::DepolarizingSplit) => Err(Error::NotCss),
        _ => Err(unsupported()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchmarkRecord {
    pub rate: f64,
    pub trials: u64,
    pub failures: u64,
    pub logical_error_rate: f64,
    pub wilson_95_interval: (f64, f64),
    pub mean_iterations: f64,
    pub wall_time: f64,
    /// Set when the wall-time budget stopped the point early.
    pub truncated: bool,
    /// Set when a decoder error aborted the point.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aborted: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchmarkResult {
    pub decoder: String,
    pub seed: u64,
    pub records: Vec<BenchmarkRecord>,
}

/// Wilson score interval for `failures` out of `trials`.
pub fn wilson_interval(failures: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = failures as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z / denom * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    let lo = if failures == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let hi = if failures == trials {
        1.0
    } else {
        (center + half).min(1.0)
    };
    (lo, hi)
}

struct TrialOutcome {
    failed: bool,
    iterations: usize,
}

fn run_trial(
    plan: &RatePlan,
    decoders: &mut [Box<dyn Decoder>],
    seed: u64,
    point: u64,
    trial: u64,
) -> Result<TrialOutcome> {
    let mut rng = trial_rng(seed, point, trial);
    let errors = plan.sample(&mut rng)?;
    let mut failed = false;
    let mut iterations = 0;
    for ((problem, decoder), e) in plan.problems.iter().zip(decoders.iter_mut()).zip(&errors) {
        let s = problem.syndrome(e)?;
        let r = decoder.decode(&s)?;
        iterations += r.iterations;
        if !success(&r.correction, e, problem)?.success {
            failed = true;
        }
    }
    Ok(TrialOutcome { failed, iterations })
}

/// Estimate one rate point.
pub fn run_point(cfg: &BenchmarkConfig, plan: &RatePlan, point: u64) -> BenchmarkRecord {
    let rate = cfg.rates.get(point as usize).copied().unwrap_or(f64::NAN);
    let start = Instant::now();
    let (mut trials, mut failures, mut iterations) = (0u64, 0u64, 0u64);
    let mut truncated = false;
    let mut aborted = None;
    let build = || -> Result<Vec<Box<dyn Decoder>>> {
        plan.problems.iter().map(|p| cfg.decoder.build(p)).collect()
    };
    while trials < cfg.trials {
        if let Some(limit) = cfg.max_wall_time {
            if trials > 0 && start.elapsed().as_secs_f64() > limit {
                truncated = true;
                break;
            }
        }
        let end = (trials + CHUNK).min(cfg.trials);
        let outcomes: Vec<Result<TrialOutcome>> = (trials..end)
            .into_par_iter()
            .map_init(build, |decoders, t| match decoders {
                Ok(d) => run_trial(plan, d, cfg.seed, point, t),
                Err(e) => Err(e.clone()),
            })
            .collect();
        let mut chunk = (0u64, 0u64);
        let mut error = None;
        for o in outcomes {
            match o {
                Ok(o) => {
                    chunk.0 += o.failed as u64;
                    chunk.1 += o.iterations as u64;
                }
                Err(e) => {
                    error = Some(e);
                    break;
                }
            }
        }
        if let Some(e) = error {
            aborted = Some(e.to_string());
            break;
        }
        failures += chunk.0;
        iterations += chunk.1;
        trials = end;
    }
    let ler = if trials == 0 {
        0.0
    } else {
        failures as f64 / trials as f64
    };
    BenchmarkRecord {
        rate,
        trials,
        failures,
        logical_error_rate: ler,
        wilson_95_interval: wilson_interval(failures, trials, WILSON_Z),
        mean_iterations: if trials == 0 {
            0.0
        } else {
            iterations as f64 / trials as f64
        },
        wall_time: if cfg.timing {
            start.elapsed().as_secs_f64()
        } else {
            0.0
        },
        truncated,
        aborted,
    }
}

pub fn run_benchmark(cfg: &BenchmarkConfig) -> Result<BenchmarkResult> {
    cfg.validate()?;
    let built = load_built(cfg)?;
    let mut records = Vec::with_capacity(cfg.rates.len());
    for (i, &p) in cfg.rates.iter().enumerate() {
        let plan = plan_from(cfg, built.as_ref(), p)?;
        records.push(run_point(cfg, &plan, i as u64));
    }
    Ok(BenchmarkResult {
        decoder: cfg.decoder.name().into(),
        seed: cfg.seed,
        records,
    })
}

pub const CSV_HEADER: &str = "rate,trials,failures,ler,ci_low,ci_high,mean_iters,seconds";

/// CSV with the fixed schema. Aborted points are left out; they appear in
/// the JSON output with their error.
pub fn to_csv(result: &BenchmarkResult) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in result.records.iter().filter(|r| r.aborted.is_none()) {
        out.push_str(&format!(
            "{},{},{},{:.8e},{:.8e},{:.8e},{:.4},{:.3}\n",
            r.rate,
            r.trials,
            r.failures,
            r.logical_error_rate,
            r.wilson_95_interval.0,
            r.wilson_95_interval.1,
            r.mean_iterations,
            r.wall_time
        ));
    }
    out
}
