use std::cmp::Ordering;

use itertools::Itertools;

use super::bp::{BpConfig, BpDecoder, DecodeResult};
use crate::error::{shape_err, Error, Result};
use crate::f2la::{self, EliminationResult, F2Matrix, F2Vec};
use crate::noise::DecodingProblem;

/// Largest `C(|J|, w)` an order-`w` sweep will attempt.
pub const MAX_OSD_CANDIDATES: u128 = 10_000_000;

/// Column order for OSD: most likely in error (lowest LLR) first, ties by
/// index.
pub fn soft_order(soft: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..soft.len()).collect();
    order.sort_by(|&a, &b| soft[a].total_cmp(&soft[b]).then(a.cmp(&b)));
    order
}

struct Inversion {
    elim: EliminationResult,
    /// `T s`, restricted to the pivot rows.
    t: F2Vec,
}

fn invert(h: &F2Matrix, s: &F2Vec, soft: &[f64]) -> Result<Inversion> {
    if s.len() != h.rows() {
        return Err(shape_err(format!(
            "syndrome of length {} for {} checks",
            s.len(),
            h.rows()
        )));
    }
    if soft.len() != h.cols() {
        return Err(shape_err(format!(
            "{} soft values for {} columns",
            soft.len(),
            h.cols()
        )));
    }
    let elim = f2la::eliminate(h, &soft_order(soft))?;
    let full = elim.row_transform.mul_vec(s)?;
    let rank = elim.rank();
    if (rank..h.rows()).any(|i| full.get(i)) {
        return Err(Error::Unsatisfiable);
    }
    Ok(Inversion {
        t: full.slice(0, rank),
        elim,
    })
}

fn scatter(n: usize, pivots: &[usize], bits: &F2Vec) -> F2Vec {
    let mut c = F2Vec::zeros(n);
    for (i, &p) in pivots.iter().enumerate() {
        if bits.get(i) {
            c.set(p, true);
        }
    }
    c
}

/// OSD-0: solve on the first `rank(H)` independent columns in soft order
/// and leave the rest zero.
pub fn osd0(h: &F2Matrix, s: &F2Vec, soft: &[f64]) -> Result<F2Vec> {
    let inv = invert(h, s, soft)?;
    Ok(scatter(h.cols(), &inv.elim.pivot_columns, &inv.t))
}

/// Soft weight `Σ |llr_i|` over set bits.
pub fn soft_weight(c: &F2Vec, soft: &[f64]) -> f64 {
    c.iter_ones().map(|i| soft[i].abs()).sum()
}

fn better(a: (f64, usize, &F2Vec), b: (f64, usize, &F2Vec)) -> bool {
    match a.0.total_cmp(&b.0) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => match a.1.cmp(&b.1) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => a.2.lex_cmp(b.2) == Ordering::Less,
        },
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Every reprocessing candidate for `c_[J]` of weight `≤ w`, in sweep order
/// (the OSD-0 solution first). Exposed for validation.
pub fn osd_candidates(h: &F2Matrix, s: &F2Vec, soft: &[f64], w: usize) -> Result<Vec<F2Vec>> {
    let mut out = Vec::new();
    sweep(h, s, soft, w, |c| out.push(c.clone()))?;
    Ok(out)
}

fn sweep(
    h: &F2Matrix,
    s: &F2Vec,
    soft: &[f64],
    w: usize,
    mut visit: impl FnMut(&F2Vec),
) -> Result<()> {
    let inv = invert(h, s, soft)?;
    let n = h.cols();
    let pivots = &inv.elim.pivot_columns;
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    // non-pivot columns, still in soft order
    let free: Vec<usize> = soft_order(soft)
        .into_iter()
        .filter(|&j| !is_pivot[j])
        .collect();
    let w = w.min(free.len());
    if w > 0 && binomial(free.len(), w) > MAX_OSD_CANDIDATES {
        return Err(Error::CapacityExceeded(format!(
            "C({}, {w}) reprocessing candidates exceed {MAX_OSD_CANDIDATES}",
            free.len()
        )));
    }
    let rank = pivots.len();
    // column j of the reduced matrix on the pivot rows: H_[I]⁻¹ H_j
    let reduced_cols: Vec<F2Vec> = free
        .iter()
        .map(|&j| {
            F2Vec::from_bools(
                &(0..rank)
                    .map(|i| inv.elim.reduced.get(i, j))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    visit(&scatter(n, pivots, &inv.t));
    for weight in 1..=w {
        for set in (0..free.len()).combinations(weight) {
            let mut bits = inv.t.clone();
            for &k in &set {
                bits.xor_assign(&reduced_cols[k]);
            }
            let mut c = scatter(n, pivots, &bits);
            for &k in &set {
                c.set(free[k], true);
            }
            visit(&c);
        }
    }
    Ok(())
}

/// Order-`w` OSD: best candidate by soft weight, then Hamming weight, then
/// lexicographic order.
pub fn osd_w(h: &F2Matrix, s: &F2Vec, soft: &[f64], w: usize) -> Result<F2Vec> {
    let mut best: Option<(f64, usize, F2Vec)> = None;
    sweep(h, s, soft, w, |c| {
        let key = (soft_weight(c, soft), c.weight());
        let replace = match &best {
            None => true,
            Some((bw, bh, bc)) => better((key.0, key.1, c), (*bw, *bh, bc)),
        };
        if replace {
            best = Some((key.0, key.1, c.clone()));
        }
    })?;
    Ok(best.expect("the OSD-0 candidate is always visited").2)
}

/// BP followed by order-`w` OSD on the final posteriors when BP fails.
#[derive(Clone, Debug)]
pub struct BpOsdDecoder {
    bp: BpDecoder,
    h: F2Matrix,
    order: usize,
}

impl BpOsdDecoder {
    pub fn new(problem: &DecodingProblem, cfg: BpConfig, order: usize) -> Result<Self> {
        Ok(Self {
            bp: BpDecoder::new(problem, cfg)?,
            h: problem.h().clone(),
            order,
        })
    }

    pub fn set_channel_llr(&mut self, llr: Vec<f64>) -> Result<()> {
        self.bp.set_channel_llr(llr)
    }

    pub fn decode(&mut self, s: &F2Vec) -> Result<DecodeResult> {
        let mut r = self.bp.decode(s)?;
        if !r.converged {
            r.correction = osd_w(&self.h, s, &r.posterior_llr, self.order)?;
            r.converged = true;
        }
        Ok(r)
    }
}

/// Convenience wrapper: one BP+OSD decode.
pub fn bp_osd(
    problem: &DecodingProblem,
    s: &F2Vec,
    cfg: BpConfig,
    w: usize,
) -> Result<DecodeResult> {
    BpOsdDecoder::new(problem, cfg, w)?.decode(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::LinearCode;

    #[test]
    fn zero_syndrome_gives_zero() {
        let h = LinearCode::hamming74().parity_check().clone();
        let soft = vec![1.0, 0.5, 2.0, 0.1, 3.0, 0.2, 0.7];
        assert!(osd0(&h, &F2Vec::zeros(3), &soft).unwrap().is_zero());
    }

    #[test]
    fn hamming_column_five_ranked_first() {
        let h = LinearCode::hamming74().parity_check().clone();
        let s = h.column(4);
        let mut soft = vec![2.0; 7];
        soft[4] = -1.0;
        assert_eq!(osd0(&h, &s, &soft).unwrap(), F2Vec::unit(7, 4));
    }

    #[test]
    fn unsatisfiable_syndrome() {
        let h = F2Matrix::from_dense(&[[1, 1], [1, 1]]);
        assert_eq!(
            osd0(&h, &F2Vec::from_bits(&[1, 0]), &[1.0, 1.0]).unwrap_err(),
            Error::Unsatisfiable
        );
    }

    #[test]
    fn order_zero_matches_osd0_and_higher_orders_improve() {
        // columns 0 and 1 ranked first and independent, but column 2 alone
        // explains the syndrome
        let h = F2Matrix::from_dense(&[[1, 0, 1], [0, 1, 1]]);
        let s = F2Vec::from_bits(&[1, 1]);
        let soft = [1.0, 1.0, 1.5];
        let c0 = osd0(&h, &s, &soft).unwrap();
        assert_eq!(c0, F2Vec::from_bits(&[1, 1, 0]));
        assert_eq!(osd_w(&h, &s, &soft, 0).unwrap(), c0);
        assert_eq!(
            osd_w(&h, &s, &soft, 1).unwrap(),
            F2Vec::from_bits(&[0, 0, 1])
        );
        for c in osd_candidates(&h, &s, &soft, 1).unwrap() {
            assert_eq!(h.mul_vec(&c).unwrap(), s);
        }
    }

    #[test]
    fn capacity_guard() {
        let h = F2Matrix::zeros(1, 40);
        let soft = vec![1.0; 40];
        assert!(matches!(
            osd_w(&h, &F2Vec::zeros(1), &soft, 10),
            Err(Error::CapacityExceeded(_))
        ));
    }
}
