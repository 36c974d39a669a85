//! Classical binary linear block codes.

use std::collections::VecDeque;

use crate::error::{shape_err, Error, Result};
use crate::f2la::{self, F2Matrix, F2Vec};

/// Largest `k` that [`distance`] will enumerate by default.
pub const DEFAULT_MAX_DISTANCE_K: usize = 24;

/// A binary linear code given by its parity-check matrix.
///
/// `h` need not have full row rank; `k = n - rank(h)` either way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    h: F2Matrix,
    g: F2Matrix,
    k: usize,
}

impl LinearCode {
    pub fn from_parity_check(h: F2Matrix) -> Self {
        let g = f2la::kernel_basis(&h);
        let k = g.rows();
        Self { h, g, k }
    }

    /// `[n, 1, n]` repetition code with the bidiagonal `(n-1) × n` check matrix.
    pub fn repetition(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "repetition code needs n >= 2, got {n}"
            )));
        }
        let mut h = F2Matrix::zeros(n - 1, n);
        for i in 0..n - 1 {
            h.set(i, i, true);
            h.set(i, i + 1, true);
        }
        Ok(Self::from_parity_check(h))
    }

    /// `[7, 4, 3]` Hamming code; column `j` is the binary expansion of `j + 1`
    /// with the least significant bit in the first row.
    pub fn hamming74() -> Self {
        let mut h = F2Matrix::zeros(3, 7);
        for j in 0..7 {
            for bit in 0..3 {
                if ((j + 1) >> bit) & 1 == 1 {
                    h.set(bit, j, true);
                }
            }
        }
        Self::from_parity_check(h)
    }

    /// Code whose check matrix is `hᵀ`.
    pub fn transpose(&self) -> Self {
        Self::from_parity_check(self.h.transpose())
    }

    pub fn parity_check(&self) -> &F2Matrix {
        &self.h
    }

    /// Generator rows spanning `ker h`; any basis is valid.
    pub fn generator(&self) -> &F2Matrix {
        &self.g
    }

    pub fn n(&self) -> usize {
        self.h.cols()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of checks (rows of `h`).
    pub fn m(&self) -> usize {
        self.h.rows()
    }

    pub fn is_codeword(&self, c: &F2Vec) -> bool {
        c.len() == self.n() && self.h.mul_vec_unchecked(c).is_zero()
    }

    /// Encode `b ∈ F2^k` as `bᵀ G`.
    pub fn encode(&self, b: &F2Vec) -> Result<F2Vec> {
        self.g.vec_mul(b)
    }
}

/// `s = H e`.
pub fn syndrome(h: &F2Matrix, e: &F2Vec) -> Result<F2Vec> {
    h.mul_vec(e)
}

/// `V = (G ; (H⁻¹)ᵀ)` together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodingMatrix {
    pub v: F2Matrix,
    pub v_inv: F2Matrix,
    /// The right inverse of `H` used for the bottom block.
    pub h_right_inverse: F2Matrix,
    pub k: usize,
}

/// Build the encoding matrix. The right inverse comes from natural-order
/// elimination so that [`decompose`] is reproducible.
pub fn encoding_matrix(code: &LinearCode) -> Result<EncodingMatrix> {
    let r = f2la::right_inverse(&code.h)?;
    let v = code.g.vstack(&r.transpose())?;
    let v_inv = f2la::inverse(&v)?;
    Ok(EncodingMatrix {
        v,
        v_inv,
        h_right_inverse: r,
        k: code.k,
    })
}

/// Split `v` into `(logical, syndrome)` via `vᵀ V⁻¹ = (ℓ : s)`.
///
/// The last `n - k` columns of `V⁻¹` are `Hᵀ`, so the syndrome part always
/// equals `H v`; the logical part depends on the chosen right inverse.
pub fn decompose(v: &F2Vec, enc: &EncodingMatrix) -> Result<(F2Vec, F2Vec)> {
    let n = enc.v.rows();
    if v.len() != n {
        return Err(shape_err(format!(
            "vector of length {} for n = {n}",
            v.len()
        )));
    }
    let full = enc.v_inv.vec_mul(v)?;
    Ok((full.slice(0, enc.k), full.slice(enc.k, n)))
}

/// Minimum weight of a nonzero codeword, `None` when `k = 0`.
pub fn distance(code: &LinearCode) -> Result<Option<usize>> {
    distance_with_limit(code, DEFAULT_MAX_DISTANCE_K)
}

/// [`distance`] with an explicit guard on `k`; the sweep visits all `2^k`
/// codewords.
pub fn distance_with_limit(code: &LinearCode, max_k: usize) -> Result<Option<usize>> {
    let k = code.k;
    if k > max_k {
        return Err(Error::CapacityExceeded(format!(
            "distance enumeration over 2^{k} codewords (limit k <= {max_k})"
        )));
    }
    if k == 0 {
        return Ok(None);
    }
    let rows = code.g.row_vecs();
    let mut word = F2Vec::zeros(code.n());
    let mut best = usize::MAX;
    // Gray code: step i flips generator trailing_zeros(i).
    for i in 1u64..(1u64 << k) {
        word.xor_assign(&rows[i.trailing_zeros() as usize]);
        best = best.min(word.weight());
    }
    Ok(Some(best))
}

/// Bipartite graph with variable nodes for columns and check nodes for rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TannerGraph {
    pub variable_nodes: usize,
    pub check_nodes: usize,
    /// `(check, variable)` pairs, sorted.
    pub edges: Vec<(usize, usize)>,
    pub check_neighbors: Vec<Vec<usize>>,
    pub variable_neighbors: Vec<Vec<usize>>,
}

impl TannerGraph {
    pub fn from_parity_check(h: &F2Matrix) -> Self {
        let view = h.sparse_view();
        let edges = view
            .row_support
            .iter()
            .enumerate()
            .flat_map(|(c, vs)| vs.iter().map(move |&v| (c, v)))
            .collect();
        Self {
            variable_nodes: h.cols(),
            check_nodes: h.rows(),
            edges,
            check_neighbors: view.row_support,
            variable_neighbors: view.col_support,
        }
    }

    pub fn biadjacency(&self) -> F2Matrix {
        let mut h = F2Matrix::zeros(self.check_nodes, self.variable_nodes);
        for &(c, v) in &self.edges {
            h.set(c, v, true);
        }
        h
    }

    /// Length of the shortest cycle, `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        girth(self)
    }
}

pub fn tanner_graph(h: &F2Matrix) -> TannerGraph {
    TannerGraph::from_parity_check(h)
}

/// Shortest cycle length by a BFS from every node. Nodes are numbered
/// variables first, then checks.
pub fn girth(g: &TannerGraph) -> Option<usize> {
    let nv = g.variable_nodes;
    let total = nv + g.check_nodes;
    let neighbors = |u: usize| -> &[usize] {
        if u < nv {
            &g.variable_neighbors[u]
        } else {
            &g.check_neighbors[u - nv]
        }
    };
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; total];
    let mut parent = vec![usize::MAX; total];
    let mut queue = VecDeque::new();
    for src in 0..total {
        dist.fill(usize::MAX);
        parent.fill(usize::MAX);
        dist[src] = 0;
        queue.clear();
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            let offset = if u < nv { nv } else { 0 };
            for &w in neighbors(u) {
                let w = w + offset;
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}
