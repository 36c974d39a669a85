//! Pauli operators in binary symplectic form.
//!
//! An operator is stored as `sign · ⊗ P_j` where each factor is `I`, `X`, `Z`
//! or `Y = iXZ`, so every stored operator is Hermitian. The symplectic vector
//! is `(x | z)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{shape_err, Error, Result};
use crate::f2la::F2Vec;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: F2Vec,
    z: F2Vec,
    negative: bool,
}

/// Exponent of `i` picked up when the single-qubit Pauli `(x1, z1)` is
/// multiplied from the right by `(x2, z2)`, in `{-1, 0, 1}`.
fn phase_exponent(x1: bool, z1: bool, x2: bool, z2: bool) -> i32 {
    let (x2, z2) = (x2 as i32, z2 as i32);
    match (x1, z1) {
        (false, false) => 0,
        (true, true) => z2 - x2,
        (true, false) => z2 * (2 * x2 - 1),
        (false, true) => x2 * (1 - 2 * z2),
    }
}

/// `⟨a, b⟩ = a_x·b_z + a_z·b_x` for symplectic vectors of length `2n`.
pub fn symplectic_product(a: &F2Vec, b: &F2Vec) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let n = a.len() / 2;
    let mut acc = false;
    for i in a.iter_ones() {
        let partner = if i < n { i + n } else { i - n };
        acc ^= b.get(partner);
    }
    acc
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            x: F2Vec::zeros(n),
            z: F2Vec::zeros(n),
            negative: false,
        }
    }

    pub fn new(x: F2Vec, z: F2Vec, negative: bool) -> Result<Self> {
        if x.len() != z.len() {
            return Err(shape_err(format!(
                "x has {} bits, z has {}",
                x.len(),
                z.len()
            )));
        }
        Ok(Self { x, z, negative })
    }

    /// Build from a symplectic vector `(x | z)` of even length.
    pub fn from_symplectic(v: &F2Vec, negative: bool) -> Result<Self> {
        if !v.len().is_multiple_of(2) {
            return Err(shape_err(format!("odd symplectic length {}", v.len())));
        }
        let n = v.len() / 2;
        Ok(Self {
            x: v.slice(0, n),
            z: v.slice(n, 2 * n),
            negative,
        })
    }

    pub fn single(n: usize, qubit: usize, kind: char) -> Result<Self> {
        if qubit >= n {
            return Err(Error::InvalidArgument(format!(
                "qubit {qubit} out of range for n = {n}"
            )));
        }
        let mut p = Self::identity(n);
        match kind {
            'X' => p.x.set(qubit, true),
            'Z' => p.z.set(qubit, true),
            'Y' => {
                p.x.set(qubit, true);
                p.z.set(qubit, true);
            }
            'I' => {}
            other => return Err(Error::InvalidArgument(format!("unknown Pauli {other:?}"))),
        }
        Ok(p)
    }

    pub fn x_on(n: usize, qubits: &[usize]) -> Self {
        Self {
            x: F2Vec::from_support(n, qubits),
            z: F2Vec::zeros(n),
            negative: false,
        }
    }

    pub fn z_on(n: usize, qubits: &[usize]) -> Self {
        Self {
            x: F2Vec::zeros(n),
            z: F2Vec::from_support(n, qubits),
            negative: false,
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &F2Vec {
        &self.x
    }

    pub fn z(&self) -> &F2Vec {
        &self.z
    }

    pub fn x_mut(&mut self) -> &mut F2Vec {
        &mut self.x
    }

    pub fn z_mut(&mut self) -> &mut F2Vec {
        &mut self.z
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn set_negative(&mut self, negative: bool) {
        self.negative = negative;
    }

    pub fn negate(&mut self) {
        self.negative = !self.negative;
    }

    pub fn negated(&self) -> Self {
        let mut p = self.clone();
        p.negate();
        p
    }

    pub fn symplectic(&self) -> F2Vec {
        self.x.concat(&self.z)
    }

    /// Number of non-identity tensor factors.
    pub fn weight(&self) -> usize {
        let mut either = self.x.clone();
        for i in self.z.iter_ones() {
            either.set(i, true);
        }
        either.weight()
    }

    /// `true` for `±I`.
    pub fn is_identity_up_to_sign(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Single-qubit factor as one of `I`, `X`, `Y`, `Z`.
    pub fn factor(&self, qubit: usize) -> char {
        match (self.x.get(qubit), self.z.get(qubit)) {
            (false, false) => 'I',
            (true, false) => 'X',
            (false, true) => 'Z',
            (true, true) => 'Y',
        }
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        if self.n() != other.n() {
            return Err(shape_err(format!("{} vs {} qubits", self.n(), other.n())));
        }
        Ok(self.commutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &Self) -> bool {
        !(self.x.dot(&other.z) ^ self.z.dot(&other.x))
    }

    /// Full product `self · other = i^e · Q` with `Q` carrying a `+` sign.
    /// Returns `(Q, e mod 4)`.
    pub fn mul_with_phase(&self, other: &Self) -> Result<(Self, u8)> {
        if self.n() != other.n() {
            return Err(shape_err(format!("{} vs {} qubits", self.n(), other.n())));
        }
        let mut e: i32 = 2 * (self.negative as i32 + other.negative as i32);
        let mut support = self.x.clone();
        for v in [&self.z, &other.x, &other.z] {
            for i in v.iter_ones() {
                support.set(i, true);
            }
        }
        for i in support.iter_ones() {
            e += phase_exponent(self.x.get(i), self.z.get(i), other.x.get(i), other.z.get(i));
        }
        let q = Self {
            x: &self.x ^ &other.x,
            z: &self.z ^ &other.z,
            negative: false,
        };
        Ok((q, e.rem_euclid(4) as u8))
    }

    /// Product of two commuting operators; the result is again Hermitian.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let (mut q, e) = self.mul_with_phase(other)?;
        match e {
            0 => Ok(q),
            2 => {
                q.negative = true;
                Ok(q)
            }
            _ => Err(Error::InvalidArgument(
                "product of anticommuting Paulis is not Hermitian".into(),
            )),
        }
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.negative { "-" } else { "+" })?;
        for q in 0..self.n() {
            write!(f, "{}", self.factor(q))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    /// Parse `[+|-]` followed by letters from `IXYZ`; `_` is read as `I`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (negative, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let n = body.chars().count();
        let mut p = Self::identity(n);
        p.negative = negative;
        for (q, c) in body.chars().enumerate() {
            match c.to_ascii_uppercase() {
                'I' | '_' => {}
                'X' => p.x.set(q, true),
                'Z' => p.z.set(q, true),
                'Y' => {
                    p.x.set(q, true);
                    p.z.set(q, true);
                }
                other => return Err(Error::Parse(format!("invalid Pauli character {other:?}"))),
            }
        }
        Ok(p)
    }
}

impl serde::Serialize for PauliOperator {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for PauliOperator {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn commutation_examples() {
        assert!(!p("X").commutes(&p("Z")).unwrap());
        assert!(p("XI").commutes(&p("IX")).unwrap());
        assert!(p("XZZXI").commutes(&p("IXZZX")).unwrap());
        assert!(p("XY").commutes(&p("YX")).unwrap());
        assert!(p("X").commutes(&p("XX")).is_err());
    }

    #[test]
    fn single_qubit_products() {
        // XZ = -iY, ZX = iY, XY = iZ, YZ = iX
        let (q, e) = p("X").mul_with_phase(&p("Z")).unwrap();
        assert_eq!((q.to_string().as_str(), e), ("+Y", 3));
        let (q, e) = p("Z").mul_with_phase(&p("X")).unwrap();
        assert_eq!((q.to_string().as_str(), e), ("+Y", 1));
        let (q, e) = p("X").mul_with_phase(&p("Y")).unwrap();
        assert_eq!((q.to_string().as_str(), e), ("+Z", 1));
        let (q, e) = p("Y").mul_with_phase(&p("Z")).unwrap();
        assert_eq!((q.to_string().as_str(), e), ("+X", 1));
        let (q, e) = p("Y").mul_with_phase(&p("Y")).unwrap();
        assert_eq!((q.to_string().as_str(), e), ("+I", 0));
    }

    #[test]
    fn commuting_products_keep_sign() {
        assert_eq!(p("XX").checked_mul(&p("ZZ")).unwrap(), p("-YY"));
        assert_eq!(p("-XI").checked_mul(&p("-XZ")).unwrap(), p("+IZ"));
        assert!(p("XI").checked_mul(&p("ZI")).is_err());
    }

    #[test]
    fn text_round_trip_and_weight() {
        let q = p("-XIZY");
        assert_eq!(q.to_string(), "-XIZY");
        assert_eq!(q.weight(), 3);
        assert_eq!(q.symplectic(), F2Vec::from_bits(&[1, 0, 0, 1, 0, 0, 1, 1]));
        assert_eq!(
            PauliOperator::from_symplectic(&q.symplectic(), true).unwrap(),
            q
        );
        assert!("XQ".parse::<PauliOperator>().is_err());
    }

    #[test]
    fn symplectic_product_matches_commutes() {
        let a = p("XZZXI");
        let b = p("ZIIII");
        assert_eq!(
            symplectic_product(&a.symplectic(), &b.symplectic()),
            !a.commutes(&b).unwrap()
        );
    }
}
