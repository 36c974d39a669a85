//! File formats: JSON descriptors for codes and complexes, decoding problems
//! as alist + CSV, decode requests, and the shared code-spec syntax.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::classical::LinearCode;
use crate::decoders::DecoderSpec;
use crate::error::{Error, Result};
use crate::f2la::{alist, F2Matrix, F2Vec};
use crate::homology::{self, ChainComplex};
use crate::noise::{DecodingProblem, Prior};
use crate::pauli::PauliOperator;
use crate::stabilizer::{five_qubit_code, CssCode, StabilizerCode};

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| io_err(path, e))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    text.push('\n');
    write_text(path, &text)
}

/// Resolve `file` against the directory holding `descriptor`.
fn resolve(descriptor: &Path, file: &str) -> PathBuf {
    let p = Path::new(file);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        descriptor.parent().unwrap_or(Path::new(".")).join(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalDescriptor {
    pub name: String,
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    /// alist file, relative to the descriptor.
    #[serde(rename = "H")]
    pub h: String,
}

/// Write `<dir>/<name>.alist` and `<dir>/<name>.json`; returns the JSON path.
pub fn save_classical(
    dir: &Path,
    name: &str,
    code: &LinearCode,
    d: Option<usize>,
) -> Result<PathBuf> {
    let h_file = format!("{name}.alist");
    alist::write_file(dir.join(&h_file), code.parity_check())?;
    let desc = ClassicalDescriptor {
        name: name.into(),
        n: code.n(),
        k: code.k(),
        d,
        h: h_file,
    };
    let path = dir.join(format!("{name}.json"));
    write_json(&path, &desc)?;
    Ok(path)
}

pub fn load_classical(path: &Path) -> Result<(ClassicalDescriptor, LinearCode)> {
    let desc: ClassicalDescriptor = read_json(path)?;
    let code = LinearCode::from_parity_check(alist::read_file(resolve(path, &desc.h))?);
    if code.n() != desc.n || code.k() != desc.k {
        return Err(Error::Parse(format!(
            "descriptor says [{}, {}], matrix gives [{}, {}]",
            desc.n,
            desc.k,
            code.n(),
            code.k()
        )));
    }
    Ok((desc, code))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerDescriptor {
    pub n: usize,
    pub k: usize,
    pub generators: Vec<String>,
}

impl StabilizerDescriptor {
    pub fn from_code(code: &StabilizerCode) -> Self {
        Self {
            n: code.n(),
            k: code.k(),
            generators: code.generators().iter().map(|g| g.to_string()).collect(),
        }
    }

    pub fn to_code(&self) -> Result<StabilizerCode> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.parse::<PauliOperator>())
            .collect::<Result<Vec<_>>>()?;
        let code = StabilizerCode::new(self.n, gens)?;
        if code.k() != self.k {
            return Err(Error::Parse(format!(
                "descriptor says k = {}, generators give {}",
                self.k,
                code.k()
            )));
        }
        Ok(code)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CssDescriptor {
    #[serde(rename = "H_X")]
    pub h_x: String,
    #[serde(rename = "H_Z")]
    pub h_z: String,
}

pub fn save_css(dir: &Path, name: &str, code: &CssCode) -> Result<PathBuf> {
    let desc = CssDescriptor {
        h_x: format!("{name}_hx.alist"),
        h_z: format!("{name}_hz.alist"),
    };
    alist::write_file(dir.join(&desc.h_x), code.h_x())?;
    alist::write_file(dir.join(&desc.h_z), code.h_z())?;
    let path = dir.join(format!("{name}.json"));
    write_json(&path, &desc)?;
    Ok(path)
}

pub fn load_css(path: &Path) -> Result<CssCode> {
    let desc: CssDescriptor = read_json(path)?;
    CssCode::new(
        alist::read_file(resolve(path, &desc.h_x))?,
        alist::read_file(resolve(path, &desc.h_z))?,
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDescriptor {
    pub dims: Vec<usize>,
    /// `∂_1` first.
    pub boundaries: Vec<String>,
}

pub fn save_complex(dir: &Path, name: &str, complex: &ChainComplex) -> Result<PathBuf> {
    let mut boundaries = Vec::new();
    for (i, b) in complex.boundaries().iter().enumerate() {
        let file = format!("{name}_d{}.alist", i + 1);
        alist::write_file(dir.join(&file), b)?;
        boundaries.push(file);
    }
    let path = dir.join(format!("{name}.json"));
    write_json(
        &path,
        &ComplexDescriptor {
            dims: complex.dims(),
            boundaries,
        },
    )?;
    Ok(path)
}

pub fn load_complex(path: &Path) -> Result<ChainComplex> {
    let desc: ComplexDescriptor = read_json(path)?;
    let boundaries = desc
        .boundaries
        .iter()
        .map(|f| alist::read_file(resolve(path, f)))
        .collect::<Result<Vec<_>>>()?;
    let complex = ChainComplex::new(boundaries)?;
    if complex.dims() != desc.dims {
        return Err(Error::Parse(format!(
            "descriptor dims {:?}, matrices give {:?}",
            desc.dims,
            complex.dims()
        )));
    }
    Ok(complex)
}

/// Prior as one line of comma-separated floats. `f64` display is the
/// shortest round-tripping form, so reading back is exact.
pub fn prior_to_csv(prior: &Prior) -> String {
    let mut s = prior
        .probabilities()
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",");
    s.push('\n');
    s
}

pub fn prior_from_csv(text: &str) -> Result<Prior> {
    let values = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|e| Error::Parse(format!("prior entry {t:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Prior::new(values)
}

/// File names of a serialized decoding problem, relative to a base path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemFiles {
    #[serde(rename = "H")]
    pub h: String,
    #[serde(rename = "L")]
    pub l: String,
    pub prior: String,
}

pub fn save_problem(dir: &Path, name: &str, problem: &DecodingProblem) -> Result<ProblemFiles> {
    let files = ProblemFiles {
        h: format!("{name}_H.alist"),
        l: format!("{name}_L.alist"),
        prior: format!("{name}_prior.csv"),
    };
    alist::write_file(dir.join(&files.h), problem.h())?;
    alist::write_file(dir.join(&files.l), problem.l())?;
    write_text(&dir.join(&files.prior), &prior_to_csv(problem.prior()))?;
    Ok(files)
}

/// Load a problem whose file names are relative to `base` (a file in the
/// same directory, e.g. the request JSON).
pub fn load_problem(base: &Path, files: &ProblemFiles) -> Result<DecodingProblem> {
    let h = alist::read_file(resolve(base, &files.h))?;
    let l = alist::read_file(resolve(base, &files.l))?;
    let prior = prior_from_csv(&read_text(&resolve(base, &files.prior))?)?;
    DecodingProblem::new(h, l, prior)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecodeRequest {
    pub problem: ProblemFiles,
    pub syndrome: F2Vec,
    pub decoder: DecoderSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodeResponse {
    pub correction: F2Vec,
    pub converged: bool,
    pub iterations: usize,
}

/// Answer a request stored at `path`.
pub fn run_decode_request(path: &Path) -> Result<DecodeResponse> {
    let req: DecodeRequest = read_json(path)?;
    let problem = load_problem(path, &req.problem)?;
    let r = req.decoder.build(&problem)?.decode(&req.syndrome)?;
    Ok(DecodeResponse {
        correction: r.correction,
        converged: r.converged,
        iterations: r.iterations,
    })
}

/// A classical code named on the command line: `hamming`, `repN`, or an
/// alist path, optionally suffixed with `^T` for the transpose code.
pub fn parse_classical(arg: &str, base: &Path) -> Result<LinearCode> {
    let (name, transpose) = match arg.strip_suffix("^T") {
        Some(n) => (n, true),
        None => (arg, false),
    };
    let code = if name == "hamming" {
        LinearCode::hamming74()
    } else if let Some(len) = name
        .strip_prefix("rep")
        .and_then(|n| n.parse::<usize>().ok())
    {
        LinearCode::repetition(len)?
    } else {
        LinearCode::from_parity_check(alist::read_file(base.join(name))?)
    };
    Ok(if transpose { code.transpose() } else { code })
}

/// Code families understood by the CLI and benchmark configs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeSpec {
    Hamming,
    Repetition(usize),
    FiveQubit,
    Surface(usize),
    /// Hypergraph product of two classical codes (see [`parse_classical`]).
    Hgp(String, String),
    /// CSS code from `H_X` and `H_Z` alist files.
    Css(String, String),
}

#[derive(Clone, Debug)]
pub enum BuiltCode {
    Classical(LinearCode),
    Stabilizer(StabilizerCode),
    Css(CssCode),
}

impl CodeSpec {
    pub fn parse(words: &[&str]) -> Result<Self> {
        let num = |w: Option<&&str>| -> Result<usize> {
            w.ok_or_else(|| Error::Parse("missing size".into()))?
                .parse()
                .map_err(|e| Error::Parse(format!("bad size: {e}")))
        };
        let two = |what: &str| -> Result<(String, String)> {
            match words {
                [_, a, b] => Ok((a.to_string(), b.to_string())),
                _ => Err(Error::Parse(format!("{what} takes two arguments"))),
            }
        };
        let spec = match words.first().copied() {
            Some("hamming") => Self::Hamming,
            Some("repetition") => Self::Repetition(num(words.get(1))?),
            Some("fivequbit") => Self::FiveQubit,
            Some("surface") => Self::Surface(num(words.get(1))?),
            Some("hgp") => {
                let (a, b) = two("hgp")?;
                Self::Hgp(a, b)
            }
            Some("css") => {
                let (a, b) = two("css")?;
                Self::Css(a, b)
            }
            Some(other) => return Err(Error::Parse(format!("unknown code family {other:?}"))),
            None => return Err(Error::Parse("empty code spec".into())),
        };
        let expected = match spec {
            Self::Hamming | Self::FiveQubit => 1,
            Self::Repetition(_) | Self::Surface(_) => 2,
            Self::Hgp(..) | Self::Css(..) => 3,
        };
        if words.len() != expected {
            return Err(Error::Parse(format!(
                "wrong number of arguments in {:?}",
                words.join(" ")
            )));
        }
        Ok(spec)
    }

    /// Relative file names resolve against `base`.
    pub fn build(&self, base: &Path) -> Result<BuiltCode> {
        Ok(match self {
            Self::Hamming => BuiltCode::Classical(LinearCode::hamming74()),
            Self::Repetition(n) => BuiltCode::Classical(LinearCode::repetition(*n)?),
            Self::FiveQubit => BuiltCode::Stabilizer(five_qubit_code()),
            Self::Surface(l) => BuiltCode::Css(homology::surface_code(*l)?),
            Self::Hgp(a, b) => BuiltCode::Css(homology::hypergraph_product(
                &parse_classical(a, base)?,
                &parse_classical(b, base)?,
            )),
            Self::Css(hx, hz) => BuiltCode::Css(CssCode::new(
                alist::read_file(base.join(hx))?,
                alist::read_file(base.join(hz))?,
            )?),
        })
    }
}

/// Parse a syndrome or fault vector given as a bit string.
pub fn parse_bits(s: &str) -> Result<F2Vec> {
    s.parse()
}

/// Dense rows of a matrix as bit strings, for JSON output.
pub fn matrix_rows(m: &F2Matrix) -> Vec<String> {
    m.row_vecs().iter().map(|r| r.to_string()).collect()
}
