use serde::{Deserialize, Serialize};

use crate::error::{shape_err, Error, Result};
use crate::f2la::{F2Matrix, F2Vec};
use crate::noise::DecodingProblem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum BpVariant {
    #[default]
    SumProduct,
    MinSum,
}

/// Belief-propagation settings. Only the flooding schedule is implemented.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BpConfig {
    pub variant: BpVariant,
    pub max_iterations: usize,
    pub min_sum_scale: f64,
    pub llr_clamp: f64,
}

impl Default for BpConfig {
    fn default() -> Self {
        Self {
            variant: BpVariant::SumProduct,
            max_iterations: 100,
            min_sum_scale: 0.8125,
            llr_clamp: 30.0,
        }
    }
}

impl BpConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::InvalidArgument(
                "max_iterations must be at least 1".into(),
            ));
        }
        if !(self.llr_clamp > 0.0) {
            return Err(Error::InvalidArgument("llr_clamp must be positive".into()));
        }
        if !(self.min_sum_scale > 0.0 && self.min_sum_scale <= 1.0) {
            return Err(Error::InvalidArgument(
                "min_sum_scale must lie in (0, 1]".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecodeResult {
    pub correction: F2Vec,
    pub converged: bool,
    pub iterations: usize,
    pub posterior_llr: Vec<f64>,
}

/// Flooding BP over the Tanner graph of `H`, LLR domain.
///
/// Messages live on edges stored check by check; `var_edges` indexes the
/// same edges by variable. Scratch buffers are reused across calls, so one
/// decoder per thread.
#[derive(Clone, Debug)]
pub struct BpDecoder {
    cfg: BpConfig,
    n: usize,
    check_start: Vec<usize>,
    edge_var: Vec<usize>,
    var_edges: Vec<Vec<usize>>,
    channel: Vec<f64>,
    to_check: Vec<f64>,
    to_var: Vec<f64>,
    posterior: Vec<f64>,
    scratch: Vec<f64>,
}

impl BpDecoder {
    pub fn new(problem: &DecodingProblem, cfg: BpConfig) -> Result<Self> {
        Self::from_parts(problem.h(), problem.prior().llr(), cfg)
    }

    /// Decoder for `h` with explicit channel LLRs.
    pub fn from_parts(h: &F2Matrix, channel_llr: Vec<f64>, cfg: BpConfig) -> Result<Self> {
        cfg.validate()?;
        if channel_llr.len() != h.cols() {
            return Err(shape_err(format!(
                "{} channel LLRs for {} columns",
                channel_llr.len(),
                h.cols()
            )));
        }
        let n = h.cols();
        let mut check_start = Vec::with_capacity(h.rows() + 1);
        let mut edge_var = Vec::new();
        let mut var_edges = vec![Vec::new(); n];
        check_start.push(0);
        for c in 0..h.rows() {
            for v in h.row_ones(c) {
                var_edges[v].push(edge_var.len());
                edge_var.push(v);
            }
            check_start.push(edge_var.len());
        }
        let edges = edge_var.len();
        let mut dec = Self {
            cfg,
            n,
            check_start,
            edge_var,
            var_edges,
            channel: Vec::new(),
            to_check: vec![0.0; edges],
            to_var: vec![0.0; edges],
            posterior: vec![0.0; n],
            scratch: Vec::new(),
        };
        dec.set_channel_llr(channel_llr)?;
        Ok(dec)
    }

    pub fn config(&self) -> &BpConfig {
        &self.cfg
    }

    /// Replace the channel LLRs (clamped), e.g. for erasure-adjusted priors.
    pub fn set_channel_llr(&mut self, llr: Vec<f64>) -> Result<()> {
        if llr.len() != self.n {
            return Err(shape_err(format!(
                "{} channel LLRs for {} columns",
                llr.len(),
                self.n
            )));
        }
        let clamp = self.cfg.llr_clamp;
        self.channel = llr.into_iter().map(|l| l.clamp(-clamp, clamp)).collect();
        Ok(())
    }

    fn num_checks(&self) -> usize {
        self.check_start.len() - 1
    }

    fn check_syndrome(&self, s: &F2Vec) -> Result<()> {
        if s.len() != self.num_checks() {
            return Err(shape_err(format!(
                "syndrome of length {} for {} checks",
                s.len(),
                self.num_checks()
            )));
        }
        Ok(())
    }

    fn initialize(&mut self) {
        for (e, &v) in self.edge_var.iter().enumerate() {
            self.to_check[e] = self.channel[v];
        }
    }

    fn check_update(&mut self, s: &F2Vec) {
        let clamp = self.cfg.llr_clamp;
        for c in 0..self.num_checks() {
            let (lo, hi) = (self.check_start[c], self.check_start[c + 1]);
            let flip = if s.get(c) { -1.0 } else { 1.0 };
            match self.cfg.variant {
                BpVariant::SumProduct => {
                    // exclusive products of tanh(q/2) from both ends
                    let t: &mut Vec<f64> = &mut self.scratch;
                    t.clear();
                    t.extend(self.to_check[lo..hi].iter().map(|&q| (q / 2.0).tanh()));
                    let d = hi - lo;
                    let mut prefix = 1.0;
                    for k in 0..d {
                        self.to_var[lo + k] = prefix;
                        prefix *= t[k];
                    }
                    let mut suffix = 1.0;
                    for k in (0..d).rev() {
                        let prod = self.to_var[lo + k] * suffix;
                        self.to_var[lo + k] = (flip * 2.0 * prod.atanh()).clamp(-clamp, clamp);
                        suffix *= t[k];
                    }
                }
                BpVariant::MinSum => {
                    let mut sign = flip;
                    let (mut min1, mut min2, mut arg) = (f64::INFINITY, f64::INFINITY, usize::MAX);
                    for e in lo..hi {
                        let q = self.to_check[e];
                        if q < 0.0 {
                            sign = -sign;
                        }
                        let a = q.abs();
                        if a < min1 {
                            min2 = min1;
                            min1 = a;
                            arg = e;
                        } else if a < min2 {
                            min2 = a;
                        }
                    }
                    let scale = self.cfg.min_sum_scale;
                    for e in lo..hi {
                        let q = self.to_check[e];
                        let own = if q < 0.0 { -1.0 } else { 1.0 };
                        let mag = if e == arg { min2 } else { min1 };
                        self.to_var[e] = (sign * own * scale * mag).clamp(-clamp, clamp);
                    }
                }
            }
        }
    }

    fn variable_update(&mut self) {
        for v in 0..self.n {
            let total: f64 = self.channel[v]
                + self.var_edges[v]
                    .iter()
                    .map(|&e| self.to_var[e])
                    .sum::<f64>();
            self.posterior[v] = total;
            for &e in &self.var_edges[v] {
                self.to_check[e] = total - self.to_var[e];
            }
        }
    }

    fn hard_decision(&self) -> F2Vec {
        let mut e = F2Vec::zeros(self.n);
        for (v, &l) in self.posterior.iter().enumerate() {
            if l < 0.0 {
                e.set(v, true);
            }
        }
        e
    }

    fn satisfies(&self, e: &F2Vec, s: &F2Vec) -> bool {
        (0..self.num_checks()).all(|c| {
            let parity = self.edge_var[self.check_start[c]..self.check_start[c + 1]]
                .iter()
                .fold(false, |acc, &v| acc ^ e.get(v));
            parity == s.get(c)
        })
    }

    /// Iterate until the hard decision satisfies `s` or the iteration budget
    /// runs out.
    pub fn decode(&mut self, s: &F2Vec) -> Result<DecodeResult> {
        self.check_syndrome(s)?;
        self.initialize();
        let mut correction = F2Vec::zeros(self.n);
        for it in 1..=self.cfg.max_iterations {
            self.check_update(s);
            self.variable_update();
            correction = self.hard_decision();
            if self.satisfies(&correction, s) {
                return Ok(DecodeResult {
                    correction,
                    converged: true,
                    iterations: it,
                    posterior_llr: self.posterior.clone(),
                });
            }
        }
        Ok(DecodeResult {
            correction,
            converged: false,
            iterations: self.cfg.max_iterations,
            posterior_llr: self.posterior.clone(),
        })
    }

    /// Posterior LLRs after exactly `rounds` flooding rounds, ignoring the
    /// stopping rule.
    pub fn marginals(&mut self, s: &F2Vec, rounds: usize) -> Result<Vec<f64>> {
        self.check_syndrome(s)?;
        self.initialize();
        self.posterior.copy_from_slice(&self.channel);
        for _ in 0..rounds {
            self.check_update(s);
            self.variable_update();
        }
        Ok(self.posterior.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::LinearCode;
    use crate::noise::Prior;

    fn problem(h: F2Matrix, p: f64) -> DecodingProblem {
        let n = h.cols();
        DecodingProblem::new(h, F2Matrix::zeros(0, n), Prior::uniform(n, p).unwrap()).unwrap()
    }

    #[test]
    fn zero_syndrome_converges_immediately() {
        let prob = problem(LinearCode::hamming74().parity_check().clone(), 0.1);
        for variant in [BpVariant::SumProduct, BpVariant::MinSum] {
            let cfg = BpConfig {
                variant,
                ..Default::default()
            };
            let mut dec = BpDecoder::new(&prob, cfg).unwrap();
            let r = dec.decode(&F2Vec::zeros(3)).unwrap();
            assert!(r.converged);
            assert_eq!(r.iterations, 1);
            assert!(r.correction.is_zero());
        }
    }

    #[test]
    fn repetition_single_flip() {
        let rep = LinearCode::repetition(5).unwrap();
        let prob = problem(rep.parity_check().clone(), 0.1);
        let e = F2Vec::unit(5, 2);
        let s = prob.syndrome(&e).unwrap();
        let r = BpDecoder::new(&prob, BpConfig::default())
            .unwrap()
            .decode(&s)
            .unwrap();
        assert!(r.converged);
        assert_eq!(r.correction, e);
    }

    #[test]
    fn rejects_bad_inputs() {
        let prob = problem(LinearCode::hamming74().parity_check().clone(), 0.1);
        let mut dec = BpDecoder::new(&prob, BpConfig::default()).unwrap();
        assert!(dec.decode(&F2Vec::zeros(4)).is_err());
        let bad = BpConfig {
            max_iterations: 0,
            ..Default::default()
        };
        assert!(BpDecoder::new(&prob, bad).is_err());
    }

    #[test]
    fn degree_one_check_forces_bit() {
        let prob = problem(F2Matrix::from_dense(&[[1, 0], [0, 1]]), 0.01);
        let mut dec = BpDecoder::new(&prob, BpConfig::default()).unwrap();
        let r = dec.decode(&F2Vec::from_bits(&[1, 0])).unwrap();
        assert_eq!(r.correction, F2Vec::from_bits(&[1, 0]));
        assert!(r.posterior_llr.iter().all(|l| l.is_finite()));
    }
}
