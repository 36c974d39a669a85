//! Noise channels, priors and decoder-facing problems.

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{shape_err, Error, Result};
use crate::f2la::{F2Matrix, F2Vec};
use crate::pauli::PauliOperator;
use crate::stabilizer::{CssCode, StabilizerCode};

/// Per-fault error probabilities, each in `[0, 0.5]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Prior {
    p: Vec<f64>,
}

impl Prior {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if let Some((i, &bad)) = p
            .iter()
            .enumerate()
            .find(|(_, &x)| !(0.0..=0.5).contains(&x))
        {
            return Err(Error::InvalidArgument(format!(
                "prior entry {i} = {bad} outside [0, 0.5]"
            )));
        }
        Ok(Self { p })
    }

    pub fn uniform(n: usize, p: f64) -> Result<Self> {
        Self::new(vec![p; n])
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.p
    }

    /// `log((1 - p) / p)`; `+∞` where `p = 0`.
    pub fn llr(&self) -> Vec<f64> {
        self.p.iter().map(|&p| ((1.0 - p) / p).ln()).collect()
    }

    pub fn mean(&self) -> f64 {
        if self.p.is_empty() {
            0.0
        } else {
            self.p.iter().sum::<f64>() / self.p.len() as f64
        }
    }
}

/// `ln P(e)` under the product distribution; `-∞` for impossible errors.
pub fn log_error_probability(e: &F2Vec, prior: &Prior) -> Result<f64> {
    if e.len() != prior.len() {
        return Err(shape_err(format!(
            "error of length {} for prior of length {}",
            e.len(),
            prior.len()
        )));
    }
    Ok(prior
        .p
        .iter()
        .enumerate()
        .map(|(i, &p)| if e.get(i) { p.ln() } else { (-p).ln_1p() })
        .sum())
}

/// `∏ (1 - p_i)^{1 - e_i} p_i^{e_i}`, accumulated in the log domain.
pub fn error_probability(e: &F2Vec, prior: &Prior) -> Result<f64> {
    Ok(log_error_probability(e, prior)?.exp())
}

/// Decoder-facing view: detectors × faults check matrix `H`, logical
/// correlations `L` over the same faults, and a prior per fault.
#[derive(Clone, Debug, PartialEq)]
pub struct DecodingProblem {
    h: F2Matrix,
    l: F2Matrix,
    prior: Prior,
    undetectable: Vec<usize>,
}

impl DecodingProblem {
    pub fn new(h: F2Matrix, l: F2Matrix, prior: Prior) -> Result<Self> {
        if h.cols() != l.cols() || h.cols() != prior.len() {
            return Err(shape_err(format!(
                "H has {} columns, L has {}, prior has {}",
                h.cols(),
                l.cols(),
                prior.len()
            )));
        }
        let undetectable = h.zero_columns();
        Ok(Self {
            h,
            l,
            prior,
            undetectable,
        })
    }

    pub fn h(&self) -> &F2Matrix {
        &self.h
    }

    pub fn l(&self) -> &F2Matrix {
        &self.l
    }

    pub fn prior(&self) -> &Prior {
        &self.prior
    }

    /// Faults whose column in `H` is zero.
    pub fn undetectable(&self) -> &[usize] {
        &self.undetectable
    }

    pub fn num_faults(&self) -> usize {
        self.h.cols()
    }

    pub fn num_detectors(&self) -> usize {
        self.h.rows()
    }

    pub fn syndrome(&self, e: &F2Vec) -> Result<F2Vec> {
        self.h.mul_vec(e)
    }

    pub fn logical_action(&self, e: &F2Vec) -> Result<F2Vec> {
        self.l.mul_vec(e)
    }

    pub fn with_prior(&self, prior: Prior) -> Result<Self> {
        Self::new(self.h.clone(), self.l.clone(), prior)
    }

    pub fn sample(&self, rng: &mut impl Rng) -> F2Vec {
        sample_bsc(&self.prior, rng)
    }
}

/// Independent flips with the prior's probabilities.
pub fn sample_bsc(prior: &Prior, rng: &mut impl Rng) -> F2Vec {
    let mut e = F2Vec::zeros(prior.len());
    for (i, &p) in prior.p.iter().enumerate() {
        if p > 0.0 && rng.random::<f64>() < p {
            e.set(i, true);
        }
    }
    e
}

/// Erase each position with probability `p_e`. Erased positions get prior
/// `0.5` (LLR 0); the rest keep the channel prior.
pub fn sample_erasure(p_e: f64, channel: &Prior, rng: &mut impl Rng) -> Result<(F2Vec, Prior)> {
    if !(0.0..=1.0).contains(&p_e) {
        return Err(Error::InvalidArgument(format!(
            "erasure probability {p_e} outside [0, 1]"
        )));
    }
    let mut flags = F2Vec::zeros(channel.len());
    let mut p = channel.p.clone();
    for (i, pi) in p.iter_mut().enumerate() {
        if rng.random::<f64>() < p_e {
            flags.set(i, true);
            *pi = 0.5;
        }
    }
    Ok((flags, Prior { p }))
}

/// Transmit `x ∈ {±1}ⁿ` (`+1` encodes bit 0) through `y = x + δ`,
/// `δ ~ N(0, σ²)`, and return the per-bit LLRs `2y/σ²`.
pub fn sample_awgn(x: &[f64], sigma: f64, rng: &mut impl Rng) -> Result<Vec<f64>> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "noise deviation {sigma} must be positive"
        )));
    }
    let normal = Normal::new(0.0, sigma).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let scale = 2.0 / (sigma * sigma);
    Ok(x.iter()
        .map(|&xi| scale * (xi + normal.sample(rng)))
        .collect())
}

/// Uniform single-qubit depolarizing noise: each qubit independently gets
/// `X`, `Y` or `Z` with probability `p/3` each.
pub fn sample_depolarizing(n: usize, p: f64, rng: &mut impl Rng) -> Result<PauliOperator> {
    check_rate(p)?;
    let mut e = PauliOperator::identity(n);
    for q in 0..n {
        if rng.random::<f64>() < p {
            match rng.random_range(0..3u8) {
                0 => e.x_mut().set(q, true),
                1 => {
                    e.x_mut().set(q, true);
                    e.z_mut().set(q, true);
                }
                _ => e.z_mut().set(q, true),
            }
        }
    }
    Ok(e)
}

/// Two-qubit depolarizing noise: identity with probability `1 - p`,
/// otherwise one of the 15 nontrivial two-qubit Paulis uniformly.
pub fn sample_depolarizing2(p: f64, rng: &mut impl Rng) -> Result<PauliOperator> {
    check_rate(p)?;
    let mut e = PauliOperator::identity(2);
    if rng.random::<f64>() < p {
        // index 1..16 read as (x0, z0, x1, z1) bits
        let k = rng.random_range(1..16u8);
        e.x_mut().set(0, k & 1 != 0);
        e.z_mut().set(0, k & 2 != 0);
        e.x_mut().set(1, k & 4 != 0);
        e.z_mut().set(1, k & 8 != 0);
    }
    Ok(e)
}

fn check_rate(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "error rate {p} outside [0, 1]"
        )))
    }
}

/// How depolarizing noise on a CSS code is handed to a decoder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DepolarizingMode {
    /// One problem with separate Z, X and Y fault columns, prior `p/3`.
    Xzy,
    /// Two independent problems (Z faults against `H_X`, X faults against
    /// `H_Z`), prior `2p/3`.
    Split,
}

/// Column blocks of the XZY layout: `[Z faults | X faults | Y faults]`.
///
/// Block 0 is detected by the X-type checks, which is what makes the
/// assembled matrix `[[H_X, 0, H_X], [0, H_Z, H_Z]]`.
pub fn xzy_matrix(sym: &F2Matrix) -> F2Matrix {
    let n = sym.cols() / 2;
    let x_part = sym.column_range(0, n);
    let z_part = sym.column_range(n, 2 * n);
    let y = x_part.add(&z_part).expect("equal halves");
    x_part
        .hstack(&z_part)
        .and_then(|m| m.hstack(&y))
        .expect("equal heights")
}

/// Fault vector of a Pauli error in the XZY layout.
pub fn xzy_fault_vector(e: &PauliOperator) -> F2Vec {
    let n = e.n();
    let mut v = F2Vec::zeros(3 * n);
    for q in 0..n {
        match e.factor(q) {
            'Z' => v.set(q, true),
            'X' => v.set(n + q, true),
            'Y' => v.set(2 * n + q, true),
            _ => {}
        }
    }
    v
}

/// XZY problem from symplectic checks and logicals of any stabilizer code.
/// A fault column is its syndrome `H Λ bsr(P)`, and likewise for `L`.
pub fn depolarizing_problem_symplectic(
    h: &F2Matrix,
    logicals: &F2Matrix,
    p: f64,
) -> Result<DecodingProblem> {
    check_rate(p)?;
    let n = h.cols() / 2;
    let prior = Prior::uniform(3 * n, p / 3.0)?;
    DecodingProblem::new(xzy_matrix(h), xzy_matrix(logicals), prior)
}

pub fn depolarizing_problem(code: &CssCode, p: f64) -> Result<DecodingProblem> {
    depolarizing_problem_symplectic(&code.check_matrix(), &code.symplectic_logicals(), p)
}

pub fn stabilizer_depolarizing_problem(code: &StabilizerCode, p: f64) -> Result<DecodingProblem> {
    depolarizing_problem_symplectic(code.check_matrix(), code.logicals(), p)
}

/// `(Z-fault problem on H_X, X-fault problem on H_Z)`, each with `n` columns.
pub fn depolarizing_split(code: &CssCode, p: f64) -> Result<(DecodingProblem, DecodingProblem)> {
    check_rate(p)?;
    let prior = Prior::uniform(code.n(), 2.0 * p / 3.0)?;
    let z_faults =
        DecodingProblem::new(code.h_x().clone(), code.logical_x().clone(), prior.clone())?;
    let x_faults = DecodingProblem::new(code.h_z().clone(), code.logical_z().clone(), prior)?;
    Ok((z_faults, x_faults))
}
