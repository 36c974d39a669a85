//! Stabilizer and CSS codes: logical operators, destabilizers, TLS
//! decomposition and brute-force distance.

use itertools::Itertools;

use crate::error::{shape_err, Error, Result};
use crate::f2la::{self, F2Matrix, F2Vec, RowBasis};
use crate::pauli::{symplectic_product, PauliOperator};

pub const DEFAULT_MAX_WEIGHT: usize = 6;
/// Largest `n` for the general (non-CSS) distance search.
pub const MAX_DISTANCE_QUBITS: usize = 20;
const MAX_DISTANCE_CANDIDATES: u128 = 200_000_000;

/// `M Λ` for a matrix of symplectic rows: swaps the x and z halves.
pub fn symplectic_dual(m: &F2Matrix) -> F2Matrix {
    let n = m.cols() / 2;
    m.column_range(n, 2 * n)
        .hstack(&m.column_range(0, n))
        .expect("halves have equal height")
}

/// `A Λ Bᵀ`.
pub fn symplectic_gram(a: &F2Matrix, b: &F2Matrix) -> F2Matrix {
    symplectic_dual(a)
        .mul(&b.transpose())
        .expect("symplectic rows of equal length")
}

/// `2k` rows spanning `N(S)/S`, ordered `X̄_1..X̄_k, Z̄_1..Z̄_k` with
/// `⟨X̄_i, Z̄_j⟩ = δ_ij` and every other pair commuting.
///
/// Symplectic Gram–Schmidt over a basis of `ker(H Λ)`; vectors left without
/// a partner commute with the whole normalizer and so lie in `S`.
pub fn logicals(h: &F2Matrix) -> F2Matrix {
    let two_n = h.cols();
    let mut pool: Vec<F2Vec> = f2la::kernel_basis(&symplectic_dual(h)).row_vecs();
    let stabilizers = RowBasis::from_matrix(h);
    for v in &mut pool {
        *v = stabilizers.reduce(v);
    }
    let mut xs = Vec::new();
    let mut zs = Vec::new();
    while let Some(v) = pool.first().cloned() {
        pool.remove(0);
        let Some(pos) = pool.iter().position(|w| symplectic_product(&v, w)) else {
            continue;
        };
        let w = pool.remove(pos);
        for u in &mut pool {
            let with_w = symplectic_product(u, &w);
            let with_v = symplectic_product(u, &v);
            if with_w {
                u.xor_assign(&v);
            }
            if with_v {
                u.xor_assign(&w);
            }
        }
        xs.push(v);
        zs.push(w);
    }
    xs.extend(zs);
    F2Matrix::from_row_vecs(two_n, &xs).expect("rows of equal length")
}

/// Stabilizer code defined by a list of commuting signed generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCode {
    n: usize,
    k: usize,
    generators: Vec<PauliOperator>,
    h: F2Matrix,
    basis_rows: Vec<usize>,
    logicals: F2Matrix,
    destabilizers: F2Matrix,
}

/// Output of [`StabilizerCode::tls_decompose`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TlsDecomposition {
    pub t: F2Vec,
    pub l: F2Vec,
    pub s: F2Vec,
}

impl StabilizerCode {
    pub fn new(n: usize, generators: Vec<PauliOperator>) -> Result<Self> {
        Self::build(n, generators, None)
    }

    /// Unsigned generators from the rows of an `r × 2n` check matrix.
    pub fn from_check_matrix(h: &F2Matrix) -> Result<Self> {
        if !h.cols().is_multiple_of(2) {
            return Err(shape_err(format!(
                "check matrix with odd width {}",
                h.cols()
            )));
        }
        let gens = (0..h.rows())
            .map(|i| PauliOperator::from_symplectic(&h.row(i), false))
            .collect::<Result<_>>()?;
        Self::new(h.cols() / 2, gens)
    }

    fn build(
        n: usize,
        generators: Vec<PauliOperator>,
        fixed_logicals: Option<F2Matrix>,
    ) -> Result<Self> {
        if let Some(bad) = generators.iter().position(|g| g.n() != n) {
            return Err(shape_err(format!(
                "generator {bad} acts on {} qubits, expected {n}",
                generators[bad].n()
            )));
        }
        for (i, j) in (0..generators.len()).tuple_combinations() {
            if !generators[i].commutes_unchecked(&generators[j]) {
                return Err(Error::NotAbelian(i, j));
            }
        }
        let rows: Vec<F2Vec> = generators.iter().map(PauliOperator::symplectic).collect();
        let h = F2Matrix::from_row_vecs(2 * n, &rows)?;
        check_no_minus_identity(&generators, &h)?;

        let mut basis = RowBasis::new(2 * n);
        let basis_rows: Vec<usize> = (0..rows.len())
            .filter(|&i| basis.insert(&rows[i]))
            .collect();
        let k = n - basis_rows.len();
        let logicals = fixed_logicals.unwrap_or_else(|| logicals(&h));
        debug_assert_eq!(logicals.rows(), 2 * k);
        let s = h.select_rows(&basis_rows);
        let destabilizers = destabilizers_for(&s, &logicals)?;
        Ok(Self {
            n,
            k,
            generators,
            h,
            basis_rows,
            logicals,
            destabilizers,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn check_matrix(&self) -> &F2Matrix {
        &self.h
    }

    /// Indices of an independent subset of generators; destabilizers and
    /// TLS bits refer to these rows in order.
    pub fn basis_rows(&self) -> &[usize] {
        &self.basis_rows
    }

    /// The independent generators as a `(n-k) × 2n` matrix.
    pub fn independent_checks(&self) -> F2Matrix {
        self.h.select_rows(&self.basis_rows)
    }

    /// `X̄` rows then `Z̄` rows.
    pub fn logicals(&self) -> &F2Matrix {
        &self.logicals
    }

    pub fn logical_x(&self, j: usize) -> PauliOperator {
        PauliOperator::from_symplectic(&self.logicals.row(j), false).expect("even width")
    }

    pub fn logical_z(&self, j: usize) -> PauliOperator {
        PauliOperator::from_symplectic(&self.logicals.row(self.k + j), false).expect("even width")
    }

    pub fn destabilizers(&self) -> &F2Matrix {
        &self.destabilizers
    }

    /// Syndrome over all generators.
    pub fn syndrome(&self, p: &PauliOperator) -> Result<F2Vec> {
        if p.n() != self.n {
            return Err(shape_err(format!(
                "{}-qubit Pauli for n = {}",
                p.n(),
                self.n
            )));
        }
        symplectic_dual(&self.h).mul_vec(&p.symplectic())
    }

    /// Write `bsr(P) = t·T + l·L + s·S` over the independent generators `S`.
    pub fn tls_decompose(&self, p: &PauliOperator) -> Result<TlsDecomposition> {
        if p.n() != self.n {
            return Err(shape_err(format!(
                "{}-qubit Pauli for n = {}",
                p.n(),
                self.n
            )));
        }
        let v = p.symplectic();
        let s_rows = self.independent_checks();
        let t = symplectic_dual(&s_rows).mul_vec_unchecked(&v);
        let k = self.k;
        let mut l = F2Vec::zeros(2 * k);
        for j in 0..k {
            // X̄_j coefficient is read off by pairing with Z̄_j and vice versa
            l.set(j, symplectic_product(&v, &self.logicals.row(k + j)));
            l.set(k + j, symplectic_product(&v, &self.logicals.row(j)));
        }
        let mut residual = v;
        residual.xor_assign(&self.destabilizers.vec_mul(&t)?);
        residual.xor_assign(&self.logicals.vec_mul(&l)?);
        let s = f2la::solve(&s_rows.transpose(), &residual)
            .map_err(|_| Error::State("residual outside the stabilizer span".into()))?;
        Ok(TlsDecomposition { t, l, s })
    }

    /// Recombine `t·T + l·L + s·S`.
    pub fn tls_recombine(&self, d: &TlsDecomposition) -> Result<F2Vec> {
        let mut v = self.destabilizers.vec_mul(&d.t)?;
        v.xor_assign(&self.logicals.vec_mul(&d.l)?);
        v.xor_assign(&self.independent_checks().vec_mul(&d.s)?);
        Ok(v)
    }

    /// Minimum weight of a Pauli in `N(S) \ S`. `None` when `k = 0`.
    pub fn distance(&self, max_weight: usize) -> Result<Option<usize>> {
        if self.k == 0 {
            return Ok(None);
        }
        if self.n > MAX_DISTANCE_QUBITS {
            return Err(Error::CapacityExceeded(format!(
                "general distance search limited to n <= {MAX_DISTANCE_QUBITS}, got {}",
                self.n
            )));
        }
        let n = self.n;
        let r = self.h.rows();
        let test = self.h.vstack(&self.logicals)?;
        let cols: Vec<[F2Vec; 3]> = (0..n)
            .map(|q| {
                // X_q pairs with z-entries, Z_q with x-entries
                let x = test.column(n + q);
                let z = test.column(q);
                let y = &x ^ &z;
                [x, y, z]
            })
            .collect();
        for w in 1..=max_weight.min(n) {
            for support in (0..n).combinations(w) {
                for kinds in std::iter::repeat_n(0..3usize, w).multi_cartesian_product() {
                    let mut acc = F2Vec::zeros(test.rows());
                    for (&q, &t) in support.iter().zip(&kinds) {
                        acc.xor_assign(&cols[q][t]);
                    }
                    if (0..r).all(|i| !acc.get(i)) && (r..acc.len()).any(|i| acc.get(i)) {
                        return Ok(Some(w));
                    }
                }
            }
        }
        Err(Error::DistanceUnknown(max_weight))
    }
}

/// Any dependency among generators multiplies to `±I`; reject `-I`.
fn check_no_minus_identity(generators: &[PauliOperator], h: &F2Matrix) -> Result<()> {
    if generators
        .iter()
        .any(|g| g.is_identity_up_to_sign() && g.is_negative())
    {
        return Err(Error::MinusIdentity);
    }
    let deps = f2la::kernel_basis(&h.transpose());
    for d in deps.row_vecs() {
        let mut prod = PauliOperator::identity(h.cols() / 2);
        for i in d.iter_ones() {
            prod = prod.checked_mul(&generators[i])?;
        }
        debug_assert!(prod.is_identity_up_to_sign());
        if prod.is_negative() {
            return Err(Error::MinusIdentity);
        }
    }
    Ok(())
}

/// Destabilizers paired with the rows of `s`: `⟨T_i, S_j⟩ = δ_ij`, every `T`
/// commutes with every logical and with every other `T`.
fn destabilizers_for(s: &F2Matrix, logicals: &F2Matrix) -> Result<F2Matrix> {
    let r = s.rows();
    let two_n = s.cols();
    let m = s.vstack(logicals)?;
    // (M Λ) R = 1, so column j of R pairs only with row j of M
    let inv = f2la::right_inverse(&symplectic_dual(&m))?;
    let mut t: Vec<F2Vec> = (0..r).map(|j| inv.column(j)).collect();
    for j in 0..r {
        for i in 0..j {
            if symplectic_product(&t[j], &t[i]) {
                let si = s.row(i);
                t[j].xor_assign(&si);
            }
        }
    }
    F2Matrix::from_row_vecs(two_n, &t)
}

/// CSS code from X-type checks `H_X` and Z-type checks `H_Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    n: usize,
    k: usize,
    h_x: F2Matrix,
    h_z: F2Matrix,
    logical_x: F2Matrix,
    logical_z: F2Matrix,
}

impl CssCode {
    pub fn new(h_x: F2Matrix, h_z: F2Matrix) -> Result<Self> {
        if h_x.cols() != h_z.cols() {
            return Err(shape_err(format!(
                "H_X has {} columns, H_Z has {}",
                h_x.cols(),
                h_z.cols()
            )));
        }
        if !h_x.mul(&h_z.transpose())?.is_zero() {
            return Err(Error::NotCss);
        }
        let n = h_x.cols();
        let xs = complement(&f2la::kernel_basis(&h_z), &h_x);
        let zs = complement(&f2la::kernel_basis(&h_x), &h_z);
        let k = xs.rows();
        debug_assert_eq!(k, zs.rows());
        // pair them: M = X Zᵀ is invertible, and X ((M⁻¹)ᵀ Z)ᵀ = 1
        let pairing = xs.mul(&zs.transpose())?;
        let zs = f2la::inverse(&pairing)?.transpose().mul(&zs)?;
        Ok(Self {
            n,
            k,
            h_x,
            h_z,
            logical_x: xs,
            logical_z: zs,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn h_x(&self) -> &F2Matrix {
        &self.h_x
    }

    pub fn h_z(&self) -> &F2Matrix {
        &self.h_z
    }

    /// `k × n` x-parts of the `X̄` representatives.
    pub fn logical_x(&self) -> &F2Matrix {
        &self.logical_x
    }

    /// `k × n` z-parts of the `Z̄` representatives, paired with `logical_x`.
    pub fn logical_z(&self) -> &F2Matrix {
        &self.logical_z
    }

    /// Block-diagonal `[[H_X, 0], [0, H_Z]]`.
    pub fn check_matrix(&self) -> F2Matrix {
        let n = self.n;
        F2Matrix::block(&[
            vec![self.h_x.clone(), F2Matrix::zeros(self.h_x.rows(), n)],
            vec![F2Matrix::zeros(self.h_z.rows(), n), self.h_z.clone()],
        ])
        .expect("consistent block shapes")
    }

    /// `[[L_X, 0], [0, L_Z]]`, the pure-type logicals in symplectic form.
    pub fn symplectic_logicals(&self) -> F2Matrix {
        let (n, k) = (self.n, self.k);
        F2Matrix::block(&[
            vec![self.logical_x.clone(), F2Matrix::zeros(k, n)],
            vec![F2Matrix::zeros(k, n), self.logical_z.clone()],
        ])
        .expect("consistent block shapes")
    }

    /// The same code as a [`StabilizerCode`], keeping pure-type logicals.
    pub fn to_stabilizer(&self) -> Result<StabilizerCode> {
        let h = self.check_matrix();
        let gens = (0..h.rows())
            .map(|i| PauliOperator::from_symplectic(&h.row(i), false))
            .collect::<Result<_>>()?;
        StabilizerCode::build(self.n, gens, Some(self.symplectic_logicals()))
    }

    /// `(d_X, d_Z)`: minimum weights of nontrivial X- and Z-type logicals.
    /// `None` when `k = 0`.
    pub fn distances(&self, max_weight: usize) -> Result<Option<(usize, usize)>> {
        if self.k == 0 {
            return Ok(None);
        }
        let dx = pure_distance(&self.h_z, &self.logical_z, max_weight)?;
        let dz = pure_distance(&self.h_x, &self.logical_x, max_weight)?;
        Ok(Some((dx, dz)))
    }

    pub fn distance(&self, max_weight: usize) -> Result<Option<usize>> {
        Ok(self.distances(max_weight)?.map(|(a, b)| a.min(b)))
    }
}

/// Rows of `candidates` that extend `base` to a larger span, in order.
fn complement(candidates: &F2Matrix, base: &F2Matrix) -> F2Matrix {
    let mut basis = RowBasis::from_matrix(base);
    let rows: Vec<F2Vec> = candidates
        .row_vecs()
        .into_iter()
        .filter(|v| basis.insert(v))
        .collect();
    F2Matrix::from_row_vecs(candidates.cols(), &rows).expect("rows of equal length")
}

/// Smallest weight `w` of a vector in `ker checks` that has odd overlap with
/// some row of `partners`.
fn pure_distance(checks: &F2Matrix, partners: &F2Matrix, max_weight: usize) -> Result<usize> {
    let n = checks.cols();
    let mut total: u128 = 0;
    for w in 1..=max_weight.min(n) {
        total += binomial(n, w);
    }
    if total > MAX_DISTANCE_CANDIDATES {
        return Err(Error::CapacityExceeded(format!(
            "{total} candidate supports up to weight {max_weight}"
        )));
    }
    let test = checks.vstack(partners)?;
    let r = checks.rows();
    let cols: Vec<F2Vec> = (0..n).map(|q| test.column(q)).collect();
    for w in 1..=max_weight.min(n) {
        for support in (0..n).combinations(w) {
            let mut acc = F2Vec::zeros(test.rows());
            for &q in &support {
                acc.xor_assign(&cols[q]);
            }
            if (0..r).all(|i| !acc.get(i)) && (r..acc.len()).any(|i| acc.get(i)) {
                return Ok(w);
            }
        }
    }
    Err(Error::DistanceUnknown(max_weight))
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// The `[[5,1,3]]` code generated by the cyclic shifts of `XZZXI`.
pub fn five_qubit_code() -> StabilizerCode {
    let gens = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
        .iter()
        .map(|s| s.parse().expect("valid Pauli string"))
        .collect();
    StabilizerCode::new(5, gens).expect("five-qubit generators commute")
}
