use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qec_core::bench::{self, BenchmarkConfig, NoiseModel, ProblemSource};
use qec_core::classical;
use qec_core::decoders::DecoderSpec;
use qec_core::graphstate::foliate;
use qec_core::io::{self, BuiltCode, CodeSpec, StabilizerDescriptor};
use qec_core::rng::trial_rng;
use qec_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "qecwb",
    version,
    about = "Decoding workbench for classical and quantum codes"
)]
struct Cli {
    /// Seed for random draws; overrides the benchmark config's seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output file, directory or prefix, depending on the subcommand.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a code's check matrices (alist) and JSON descriptor.
    ///
    /// Families: hamming | repetition N | fivequbit | surface L | hgp A B | css HX HZ,
    /// where A and B are hamming, repN or alist files, optionally suffixed ^T.
    BuildCode {
        #[arg(required = true, num_args = 1..)]
        code: Vec<String>,
        /// Base name of the written files.
        #[arg(long)]
        name: Option<String>,
    },
    /// Foliate a CSS code and export the graph with its detectors.
    Foliate {
        #[arg(required = true, num_args = 1..)]
        code: Vec<String>,
        #[arg(long, default_value_t = 2)]
        layers: usize,
    },
    /// Draw noise samples and their syndromes.
    Sample {
        #[arg(required = true, num_args = 1..)]
        code: Vec<String>,
        #[arg(long)]
        rate: f64,
        #[arg(long, default_value_t = 10)]
        shots: u64,
        /// bsc | depolarizing | depolarizing-split (default depends on the code).
        #[arg(long)]
        noise: Option<String>,
    },
    /// Answer a decode request JSON file.
    Decode { request: PathBuf },
    /// Run a Monte Carlo benchmark from a config file.
    Benchmark { config: PathBuf },
}

/// Distinguishes bad input (exit 1) from capacity or unsatisfiable
/// syndromes (exit 2).
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapacityExceeded(_) | Error::Unsatisfiable => 2,
            _ => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::BuildCode { code, name } => build_code(cli, code, name.as_deref()),
        Command::Foliate { code, layers } => foliate_cmd(cli, code, *layers),
        Command::Sample {
            code,
            rate,
            shots,
            noise,
        } => sample(cli, code, *rate, *shots, noise.as_deref()),
        Command::Decode { request } => decode(cli, request),
        Command::Benchmark { config } => benchmark(cli, config),
    }
}

fn code_spec(words: &[String]) -> CliResult<CodeSpec> {
    let words: Vec<&str> = words.iter().map(String::as_str).collect();
    CodeSpec::parse(&words).map_err(|e| usage(e.to_string()))
}

/// Write `text` to `--out`, or print it.
fn emit(cli: &Cli, text: &str) -> CliResult<()> {
    match &cli.out {
        Some(path) => io::write_text(path, text).map_err(Failure::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn build_code(cli: &Cli, words: &[String], name: Option<&str>) -> CliResult<()> {
    let spec = code_spec(words)?;
    let name = name.map(str::to_string).unwrap_or_else(|| match &spec {
        CodeSpec::Hamming => "hamming".into(),
        CodeSpec::Repetition(n) => format!("repetition{n}"),
        CodeSpec::FiveQubit => "fivequbit".into(),
        CodeSpec::Surface(l) => format!("surface{l}"),
        CodeSpec::Hgp(..) => "hgp".into(),
        CodeSpec::Css(..) => "css".into(),
    });
    let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
    let (n, k, descriptor) = match spec.build(Path::new("."))? {
        BuiltCode::Classical(code) => {
            let d = classical::distance(&code)?;
            (
                code.n(),
                code.k(),
                io::save_classical(&dir, &name, &code, d)?,
            )
        }
        BuiltCode::Css(code) => (code.n(), code.k(), io::save_css(&dir, &name, &code)?),
        BuiltCode::Stabilizer(code) => {
            let path = dir.join(format!("{name}.json"));
            io::write_json(&path, &StabilizerDescriptor::from_code(&code))?;
            (code.n(), code.k(), path)
        }
    };
    let summary = match cli.format.unwrap_or(Format::Json) {
        Format::Json => pretty(&json!({ "name": name, "n": n, "k": k, "descriptor": descriptor })),
        Format::Csv => format!(
            "name,n,k,descriptor\n{name},{n},{k},{}\n",
            descriptor.display()
        ),
    };
    print!("{summary}");
    Ok(())
}

fn foliate_cmd(cli: &Cli, words: &[String], layers: usize) -> CliResult<()> {
    let code = match code_spec(words)?.build(Path::new("."))? {
        BuiltCode::Css(c) => c,
        _ => return Err(usage("foliation needs a CSS code")),
    };
    let f = foliate(&code, layers)?;
    let mut out = f.to_json();
    let sets = |checks: &[qec_core::graphstate::ParityCheck]| -> Value {
        json!(checks.iter().map(|c| &c.vertices).collect::<Vec<_>>())
    };
    out["detectors"] = sets(f.detectors());
    out["detector_parities"] = json!(f.detectors().iter().map(|c| c.expected).collect::<Vec<_>>());
    out["logical_correlations"] = sets(f.logical_correlations());
    emit(cli, &pretty(&out))
}

fn parse_noise(s: &str) -> CliResult<NoiseModel> {
    match s {
        "bsc" => Ok(NoiseModel::Bsc),
        "depolarizing" => Ok(NoiseModel::Depolarizing),
        "depolarizing-split" => Ok(NoiseModel::DepolarizingSplit),
        other => Err(usage(format!("unknown noise model {other:?}"))),
    }
}

fn sample(
    cli: &Cli,
    words: &[String],
    rate: f64,
    shots: u64,
    noise: Option<&str>,
) -> CliResult<()> {
    let spec = code_spec(words)?;
    let noise = match noise {
        Some(n) => parse_noise(n)?,
        None => match spec {
            CodeSpec::Hamming | CodeSpec::Repetition(_) => NoiseModel::Bsc,
            CodeSpec::FiveQubit => NoiseModel::Depolarizing,
            _ => NoiseModel::DepolarizingSplit,
        },
    };
    let cfg = BenchmarkConfig {
        source: ProblemSource::Code(spec),
        noise,
        decoder: DecoderSpec::Mwd,
        rates: vec![rate],
        trials: shots.max(1),
        seed: cli.seed.unwrap_or(0),
        max_wall_time: None,
        timing: false,
        base_dir: PathBuf::from("."),
    };
    cfg.validate().map_err(|e| usage(e.to_string()))?;
    let plan = bench::plan_for_rate(&cfg, rate)?;
    let mut rows = Vec::new();
    for shot in 0..shots {
        let mut rng = trial_rng(cfg.seed, 0, shot);
        let errors = plan.sample(&mut rng)?;
        let syndromes = plan
            .problems()
            .iter()
            .zip(&errors)
            .map(|(p, e)| p.syndrome(e))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push((shot, errors, syndromes));
    }
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Json => pretty(&json!(rows
            .iter()
            .map(|(shot, e, s)| json!({ "shot": shot, "errors": e, "syndromes": s }))
            .collect::<Vec<_>>())),
        Format::Csv => {
            let mut t = String::from("shot,component,error,syndrome\n");
            for (shot, errors, syndromes) in &rows {
                for (c, (e, s)) in errors.iter().zip(syndromes).enumerate() {
                    t.push_str(&format!("{shot},{c},{e},{s}\n"));
                }
            }
            t
        }
    };
    emit(cli, &text)
}

fn decode(cli: &Cli, request: &Path) -> CliResult<()> {
    let resp = io::run_decode_request(request)?;
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Json => pretty(&json!(resp)),
        Format::Csv => format!(
            "correction,converged,iterations\n{},{},{}\n",
            resp.correction, resp.converged, resp.iterations
        ),
    };
    emit(cli, &text)
}

fn benchmark(cli: &Cli, config: &Path) -> CliResult<()> {
    let mut cfg = BenchmarkConfig::from_file(config)?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    let result = bench::run_benchmark(&cfg)?;
    let csv = bench::to_csv(&result);
    let json_text = pretty(&json!(result));
    match &cli.out {
        Some(prefix) => {
            let with_ext = |ext: &str| {
                let mut p = prefix.clone().into_os_string();
                p.push(ext);
                PathBuf::from(p)
            };
            io::write_text(&with_ext(".csv"), &csv)?;
            io::write_text(&with_ext(".json"), &json_text)?;
        }
        None => match cli.format.unwrap_or(Format::Csv) {
            Format::Csv => print!("{csv}"),
            Format::Json => print!("{json_text}"),
        },
    }
    if let Some(r) = result.records.iter().find(|r| r.aborted.is_some()) {
        return Err(Failure {
            code: 2,
            message: format!(
                "rate {} aborted: {}",
                r.rate,
                r.aborted.as_deref().unwrap_or_default()
            ),
        });
    }
    Ok(())
}
