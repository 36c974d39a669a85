//! Chain complexes over F2, the CSS correspondence and the hypergraph product.

use crate::classical::LinearCode;
use crate::error::{shape_err, Error, Result};
use crate::f2la::{self, F2Matrix};
use crate::stabilizer::CssCode;

/// `C_ℓ → … → C_1 → C_0` given by its boundary maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    /// `boundaries[i - 1]` is `∂_i : C_i → C_{i-1}`, an `n_{i-1} × n_i` matrix.
    boundaries: Vec<F2Matrix>,
}

impl ChainComplex {
    /// Boundaries listed from `∂_1` upward. Shapes must chain; the
    /// composition property is checked separately by [`validate`](Self::validate).
    pub fn new(boundaries: Vec<F2Matrix>) -> Result<Self> {
        if boundaries.is_empty() {
            return Err(Error::InvalidArgument(
                "a chain complex needs at least one boundary".into(),
            ));
        }
        for i in 1..boundaries.len() {
            let (lower, upper) = (&boundaries[i - 1], &boundaries[i]);
            if lower.cols() != upper.rows() {
                return Err(shape_err(format!(
                    "d_{} has {} columns but d_{} has {} rows",
                    i,
                    lower.cols(),
                    i + 1,
                    upper.rows()
                )));
            }
        }
        Ok(Self { boundaries })
    }

    /// Length-1 complex of a classical code: `∂_1 = H`.
    pub fn from_classical(code: &LinearCode) -> Self {
        Self {
            boundaries: vec![code.parity_check().clone()],
        }
    }

    /// Top degree `ℓ`.
    pub fn length(&self) -> usize {
        self.boundaries.len()
    }

    /// `∂_i` for `1 ≤ i ≤ ℓ`.
    pub fn boundary(&self, i: usize) -> Option<&F2Matrix> {
        i.checked_sub(1).and_then(|j| self.boundaries.get(j))
    }

    pub fn boundaries(&self) -> &[F2Matrix] {
        &self.boundaries
    }

    /// `dim C_i`.
    pub fn dim(&self, i: usize) -> Option<usize> {
        match i {
            0 => Some(self.boundaries[0].rows()),
            _ => self.boundary(i).map(F2Matrix::cols),
        }
    }

    /// `[n_0, n_1, …, n_ℓ]`.
    pub fn dims(&self) -> Vec<usize> {
        (0..=self.length())
            .map(|i| self.dim(i).expect("in range"))
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        for i in 1..self.boundaries.len() {
            if !self.boundaries[i - 1].mul(&self.boundaries[i])?.is_zero() {
                return Err(Error::NotAComplex(i));
            }
        }
        Ok(())
    }

    /// `dim ker ∂_i − rank ∂_{i+1}`, with `∂_0` and `∂_{ℓ+1}` taken as zero.
    pub fn homology_dimension(&self, i: usize) -> Result<usize> {
        let n_i = self.dim(i).ok_or_else(|| {
            Error::InvalidArgument(format!("degree {i} outside 0..={}", self.length()))
        })?;
        let kernel = n_i - self.boundary(i).map_or(0, f2la::rank);
        let image = self.boundary(i + 1).map_or(0, f2la::rank);
        Ok(kernel - image)
    }

    /// CSS code with qubits on `C_i`: `H_X = ∂_i` and `H_Z = ∂_{i+1}ᵀ`.
    /// At the top degree there are no Z checks.
    pub fn to_css(&self, i: usize) -> Result<CssCode> {
        let h_x = self
            .boundary(i)
            .ok_or_else(|| Error::InvalidArgument(format!("no boundary d_{i}")))?
            .clone();
        let h_z = match self.boundary(i + 1) {
            Some(d) => {
                if !h_x.mul(d)?.is_zero() {
                    return Err(Error::NotAComplex(i));
                }
                d.transpose()
            }
            None => F2Matrix::zeros(0, h_x.cols()),
        };
        CssCode::new(h_x, h_z)
    }
}

/// `C_2 → C_1 → C_0` with `∂_2 = H_Zᵀ` and `∂_1 = H_X`; qubits sit at degree 1.
pub fn from_css(code: &CssCode) -> ChainComplex {
    ChainComplex {
        boundaries: vec![code.h_x().clone(), code.h_z().transpose()],
    }
}

/// Product complex of `A_1 → A_0` and `B_1 → B_0`.
///
/// `C_1 = A_1⊗B_0 ⊕ A_0⊗B_1`, so
/// `∂_1 = (H_A⊗1_{m_B} | 1_{m_A}⊗H_B)` and
/// `∂_2 = (1_{n_A}⊗H_B ; H_A⊗1_{n_B})`.
pub fn hypergraph_product_complex(a: &LinearCode, b: &LinearCode) -> ChainComplex {
    let h_a = a.parity_check();
    let h_b = b.parity_check();
    let (m_a, n_a) = h_a.shape();
    let (m_b, n_b) = h_b.shape();
    let d1 = h_a
        .kron(&F2Matrix::identity(m_b))
        .hstack(&F2Matrix::identity(m_a).kron(h_b))
        .expect("both blocks have m_A m_B rows");
    let d2 = F2Matrix::identity(n_a)
        .kron(h_b)
        .vstack(&h_a.kron(&F2Matrix::identity(n_b)))
        .expect("both blocks have n_A n_B columns");
    ChainComplex {
        boundaries: vec![d1, d2],
    }
}

/// Hypergraph product code on `n_A m_B + m_A n_B` qubits.
pub fn hypergraph_product(a: &LinearCode, b: &LinearCode) -> CssCode {
    hypergraph_product_complex(a, b)
        .to_css(1)
        .expect("product boundaries compose to zero")
}

/// `[[L² + (L−1)², 1, L]]` surface code: repetition(L) times its transpose.
pub fn surface_code(l: usize) -> Result<CssCode> {
    if l < 2 {
        return Err(Error::InvalidArgument(format!(
            "surface code needs L >= 2, got {l}"
        )));
    }
    let rep = LinearCode::repetition(l)?;
    Ok(hypergraph_product(&rep, &rep.transpose()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let single =
            ChainComplex::new(vec![LinearCode::hamming74().parity_check().clone()]).unwrap();
        assert!(single.validate().is_ok());
        let one = F2Matrix::identity(1);
        let bad = ChainComplex::new(vec![one.clone(), one]).unwrap();
        assert_eq!(bad.validate(), Err(Error::NotAComplex(1)));
        assert!(ChainComplex::new(vec![F2Matrix::zeros(2, 3), F2Matrix::zeros(2, 1)]).is_err());
    }

    #[test]
    fn classical_homology_is_k() {
        let ham = LinearCode::hamming74();
        let c = ChainComplex::from_classical(&ham);
        assert_eq!(c.homology_dimension(1).unwrap(), 4);
        assert_eq!(c.homology_dimension(0).unwrap(), 0);
        assert!(c.homology_dimension(2).is_err());
    }

    #[test]
    fn exact_complex_has_no_homology() {
        // 0 → F2 → F2 → 0 with the identity in the middle
        let c = ChainComplex::new(vec![F2Matrix::identity(3)]).unwrap();
        assert_eq!(c.homology_dimension(0).unwrap(), 0);
        assert_eq!(c.homology_dimension(1).unwrap(), 0);
    }

    #[test]
    fn four_qubit_code_complex() {
        let h_z = F2Matrix::from_dense(&[[1, 1, 1, 1]]);
        let h_x = F2Matrix::from_dense(&[[1, 1, 0, 0], [0, 0, 1, 1]]);
        let code = CssCode::new(h_x.clone(), h_z.clone()).unwrap();
        let c = from_css(&code);
        assert_eq!(c.boundary(2).unwrap().shape(), (4, 1));
        assert_eq!(*c.boundary(1).unwrap(), h_x);
        assert_eq!(c.dims(), vec![2, 4, 1]);
        assert_eq!(c.to_css(1).unwrap(), code);
        assert_eq!(c.homology_dimension(1).unwrap(), 1);
    }

    #[test]
    fn surface_codes() {
        let s3 = surface_code(3).unwrap();
        assert_eq!((s3.n(), s3.k()), (13, 1));
        assert!(s3.h_x().mul(&s3.h_z().transpose()).unwrap().is_zero());
        assert_eq!(s3.distance(6).unwrap(), Some(3));
        assert_eq!(from_css(&s3).homology_dimension(1).unwrap(), 1);

        let s2 = surface_code(2).unwrap();
        assert_eq!((s2.n(), s2.k()), (5, 1));
        assert_eq!(s2.distance(6).unwrap(), Some(2));
        for l in 2..=5 {
            let s = surface_code(l).unwrap();
            assert_eq!((s.n(), s.k()), (l * l + (l - 1) * (l - 1), 1));
        }
        assert!(surface_code(1).is_err());
    }

    #[test]
    fn surface_logicals_are_pure() {
        let s3 = surface_code(3).unwrap().to_stabilizer().unwrap();
        let l = s3.logicals();
        let n = 13;
        assert!((n..2 * n).all(|j| !l.get(0, j)));
        assert!((0..n).all(|j| !l.get(1, j)));
    }
}
