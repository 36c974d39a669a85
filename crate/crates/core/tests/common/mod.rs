//! Independent reference implementations used by the integration tests.
//! Nothing here calls the library's linear algebra or decoders.

#![allow(dead_code)]

use num_complex::Complex64;
use qec_core::f2la::{F2Matrix, F2Vec};
use qec_core::pauli::PauliOperator;

/// Dense state vector; qubit `q` is bit `q` of the basis index.
#[derive(Clone, Debug)]
pub struct StateVector {
    pub n: usize,
    pub amp: Vec<Complex64>,
}

impl StateVector {
    pub fn zero(n: usize) -> Self {
        let mut amp = vec![Complex64::new(0.0, 0.0); 1 << n];
        amp[0] = Complex64::new(1.0, 0.0);
        Self { n, amp }
    }

    pub fn plus(n: usize) -> Self {
        let a = (1.0 / (1u64 << n) as f64).sqrt();
        Self {
            n,
            amp: vec![Complex64::new(a, 0.0); 1 << n],
        }
    }

    pub fn h(&mut self, q: usize) {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for i in 0..self.amp.len() {
            if i >> q & 1 == 0 {
                let j = i | 1 << q;
                let (a, b) = (self.amp[i], self.amp[j]);
                self.amp[i] = (a + b) * s;
                self.amp[j] = (a - b) * s;
            }
        }
    }

    pub fn s(&mut self, q: usize) {
        for i in 0..self.amp.len() {
            if i >> q & 1 == 1 {
                self.amp[i] *= Complex64::new(0.0, 1.0);
            }
        }
    }

    pub fn cz(&mut self, a: usize, b: usize) {
        for i in 0..self.amp.len() {
            if i >> a & 1 == 1 && i >> b & 1 == 1 {
                self.amp[i] = -self.amp[i];
            }
        }
    }

    pub fn cx(&mut self, c: usize, t: usize) {
        for i in 0..self.amp.len() {
            if i >> c & 1 == 1 && i >> t & 1 == 0 {
                self.amp.swap(i, i | 1 << t);
            }
        }
    }

    /// `P|ψ⟩` with `P = sign · ⊗ P_q`, `Y = iXZ`.
    pub fn apply_pauli(&self, p: &PauliOperator) -> Vec<Complex64> {
        let mut xmask = 0usize;
        let mut zmask = 0usize;
        let mut ys = 0u32;
        for q in 0..self.n {
            match p.factor(q) {
                'X' => xmask |= 1 << q,
                'Z' => zmask |= 1 << q,
                'Y' => {
                    xmask |= 1 << q;
                    zmask |= 1 << q;
                    ys += 1;
                }
                _ => {}
            }
        }
        let mut phase = Complex64::new(0.0, 1.0).powu(ys);
        if p.is_negative() {
            phase = -phase;
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.amp.len()];
        for (b, &a) in self.amp.iter().enumerate() {
            let sign = if (b & zmask).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            out[b ^ xmask] += a * phase * sign;
        }
        out
    }

    pub fn expectation(&self, p: &PauliOperator) -> f64 {
        let pv = self.apply_pauli(p);
        self.amp
            .iter()
            .zip(&pv)
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }

    /// Project onto the `outcome` eigenspace of `p`; returns the probability
    /// of that outcome and renormalizes.
    pub fn project(&mut self, p: &PauliOperator, outcome: i8) -> f64 {
        let pv = self.apply_pauli(p);
        let o = outcome as f64;
        for (a, b) in self.amp.iter_mut().zip(&pv) {
            *a = (*a + b * o) * 0.5;
        }
        let norm: f64 = self.amp.iter().map(|a| a.norm_sqr()).sum();
        if norm > 1e-12 {
            let s = norm.sqrt();
            for a in &mut self.amp {
                *a /= s;
            }
        }
        norm
    }
}

pub fn bits_of(x: u64, len: usize) -> F2Vec {
    F2Vec::from_bools(&(0..len).map(|i| x >> i & 1 == 1).collect::<Vec<_>>())
}

/// `H e` computed entry by entry.
pub fn naive_mul(h: &F2Matrix, e: &F2Vec) -> F2Vec {
    F2Vec::from_bools(
        &(0..h.rows())
            .map(|r| (0..h.cols()).filter(|&c| h.get(r, c) && e.get(c)).count() % 2 == 1)
            .collect::<Vec<_>>(),
    )
}

/// Rank by Gaussian elimination over `u128` rows (widths ≤ 128).
pub fn naive_rank(m: &F2Matrix) -> usize {
    let mut rows: Vec<u128> = (0..m.rows())
        .map(|r| (0..m.cols()).fold(0u128, |acc, c| acc | (m.get(r, c) as u128) << c))
        .collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        if let Some(p) = (rank..rows.len()).find(|&r| rows[r] >> c & 1 == 1) {
            rows.swap(rank, p);
            for r in 0..rows.len() {
                if r != rank && rows[r] >> c & 1 == 1 {
                    rows[r] ^= rows[rank];
                }
            }
            rank += 1;
        }
    }
    rank
}

pub fn log_prob(e: &F2Vec, p: &[f64]) -> f64 {
    (0..e.len())
        .map(|i| {
            if e.get(i) {
                p[i].ln()
            } else {
                (1.0 - p[i]).ln()
            }
        })
        .sum()
}

/// Every `e ∈ F_2^n` with its probability, `n ≤ 20`.
pub fn all_errors(p: &[f64]) -> impl Iterator<Item = (F2Vec, f64)> + '_ {
    let n = p.len();
    (0..1u64 << n).map(move |x| {
        let e = bits_of(x, n);
        let w = log_prob(&e, p).exp();
        (e, w)
    })
}

/// Most probable `e` with `H e = s`, ties to lower Hamming weight then
/// lexicographic order, by scanning all `2^n` vectors.
pub fn brute_mwd(h: &F2Matrix, s: &F2Vec, p: &[f64]) -> Option<F2Vec> {
    let mut best: Option<(f64, usize, F2Vec)> = None;
    for (e, _) in all_errors(p) {
        if naive_mul(h, &e) != *s {
            continue;
        }
        let score = log_prob(&e, p);
        let w = e.weight();
        let better = match &best {
            None => true,
            Some((bs, bw, be)) => {
                score > *bs + 1e-12
                    || ((score - bs).abs() <= 1e-12
                        && (w < *bw || (w == *bw && e.lex_cmp(be).is_lt())))
            }
        };
        if better {
            best = Some((score, w, e));
        }
    }
    best.map(|b| b.2)
}

/// Minimum weight of a vector in `ker A` outside `rowspan B`, by scanning.
pub fn brute_min_weight_outside(a: &F2Matrix, b: &F2Matrix) -> Option<usize> {
    let n = a.cols();
    let target = naive_rank(b);
    let mut best: Option<usize> = None;
    for x in 1u64..1 << n {
        let v = bits_of(x, n);
        if best.is_some_and(|w| v.weight() >= w) || !naive_mul(a, &v).is_zero() {
            continue;
        }
        let mut rows = b.row_vecs();
        rows.push(v.clone());
        let stacked = F2Matrix::from_row_vecs(n, &rows).unwrap();
        if naive_rank(&stacked) > target {
            best = Some(v.weight());
        }
    }
    best
}

pub fn pauli(s: &str) -> PauliOperator {
    s.parse().unwrap()
}
