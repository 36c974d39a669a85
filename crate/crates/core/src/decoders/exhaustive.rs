//! Brute-force reference decoders over the full syndrome coset.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::f2la::{self, F2Vec};
use crate::noise::DecodingProblem;

pub const MAX_MWD_FAULTS: usize = 24;
pub const MAX_MLD_FAULTS: usize = 20;

/// Visit every `e` with `H e = s` via a particular solution plus a Gray-code
/// walk over the kernel.
fn for_each_in_coset(
    problem: &DecodingProblem,
    s: &F2Vec,
    mut visit: impl FnMut(&F2Vec),
) -> Result<()> {
    let h = problem.h();
    let base = f2la::solve(h, s).map_err(|e| match e {
        Error::NoSolution => Error::Unsatisfiable,
        other => other,
    })?;
    let kernel = f2la::kernel_basis(h).row_vecs();
    let mut e = base;
    visit(&e);
    for i in 1u64..(1u64 << kernel.len()) {
        e.xor_assign(&kernel[i.trailing_zeros() as usize]);
        visit(&e);
    }
    Ok(())
}

fn guard(problem: &DecodingProblem, limit: usize, what: &str) -> Result<()> {
    if problem.num_faults() > limit {
        return Err(Error::CapacityExceeded(format!(
            "{what} enumerates at most {limit} fault columns, problem has {}",
            problem.num_faults()
        )));
    }
    Ok(())
}

/// Log-weight of `e` relative to the all-zero error: `Σ_{i∈e} ln(p_i/(1-p_i))`.
fn log_weight(e: &F2Vec, neg_llr: &[f64]) -> f64 {
    e.iter_ones().map(|i| neg_llr[i]).sum()
}

/// The single most probable `e` with `H e = s`. Ties go to lower Hamming
/// weight, then lexicographic order.
pub fn exhaustive_mwd(problem: &DecodingProblem, s: &F2Vec) -> Result<F2Vec> {
    guard(problem, MAX_MWD_FAULTS, "exhaustive MWD")?;
    let neg_llr: Vec<f64> = problem.prior().llr().into_iter().map(|l| -l).collect();
    let mut best: Option<(f64, usize, F2Vec)> = None;
    for_each_in_coset(problem, s, |e| {
        let score = log_weight(e, &neg_llr);
        let w = e.weight();
        let replace = match &best {
            None => true,
            Some((bs, bw, be)) => {
                score > *bs || (score == *bs && (w < *bw || (w == *bw && e.lex_cmp(be).is_lt())))
            }
        };
        if replace {
            best = Some((score, w, e.clone()));
        }
    })?;
    Ok(best.expect("coset is nonempty").2)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MldResult {
    /// Winning logical class `ℓ = L e`.
    pub logical: F2Vec,
    /// Most probable error inside the winning class.
    pub correction: F2Vec,
    /// `P(H e = s, L e = ℓ)` for the winning class.
    pub probability: f64,
    /// Every class that occurs, with its coset probability, sorted by `ℓ`.
    pub classes: Vec<(F2Vec, f64)>,
}

#[derive(Default)]
struct ClassAcc {
    max_log: f64,
    terms: Vec<f64>,
    best: Option<(f64, usize, F2Vec)>,
}

/// Maximum-likelihood logical class for syndrome `s`, summing the product
/// distribution over each class. Ties go to the lexicographically smallest
/// `ℓ`.
pub fn exhaustive_mld(problem: &DecodingProblem, s: &F2Vec) -> Result<MldResult> {
    guard(problem, MAX_MLD_FAULTS, "exhaustive MLD")?;
    let prior = problem.prior();
    let neg_llr: Vec<f64> = prior.llr().into_iter().map(|l| -l).collect();
    let base_log: f64 = prior.probabilities().iter().map(|&p| (-p).ln_1p()).sum();
    let mut classes: BTreeMap<Vec<u8>, (F2Vec, ClassAcc)> = BTreeMap::new();
    for_each_in_coset(problem, s, |e| {
        let logical = problem
            .l()
            .mul_vec(e)
            .expect("shapes checked at construction");
        let score = log_weight(e, &neg_llr);
        let w = e.weight();
        let (_, acc) = classes.entry(logical.to_bits()).or_insert_with(|| {
            (
                logical,
                ClassAcc {
                    max_log: f64::NEG_INFINITY,
                    ..Default::default()
                },
            )
        });
        acc.terms.push(score);
        acc.max_log = acc.max_log.max(score);
        let replace = match &acc.best {
            None => true,
            Some((bs, bw, be)) => {
                score > *bs || (score == *bs && (w < *bw || (w == *bw && e.lex_cmp(be).is_lt())))
            }
        };
        if replace {
            acc.best = Some((score, w, e.clone()));
        }
    })?;
    let mut out: Vec<(F2Vec, f64, F2Vec)> = classes
        .into_values()
        .map(|(logical, acc)| {
            let log_sum = if acc.max_log == f64::NEG_INFINITY {
                f64::NEG_INFINITY
            } else {
                acc.max_log
                    + acc
                        .terms
                        .iter()
                        .map(|t| (t - acc.max_log).exp())
                        .sum::<f64>()
                        .ln()
            };
            let best = acc.best.expect("class has members").2;
            (logical, (base_log + log_sum).exp(), best)
        })
        .collect();
    out.sort_by(|a, b| a.0.lex_cmp(&b.0));
    let mut winner = 0;
    for (i, c) in out.iter().enumerate() {
        if c.1 > out[winner].1 {
            winner = i;
        }
    }
    let (logical, probability, correction) = out[winner].clone();
    Ok(MldResult {
        logical,
        correction,
        probability,
        classes: out.into_iter().map(|(l, p, _)| (l, p)).collect(),
    })
}
