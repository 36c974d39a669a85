use rand::Rng;

use crate::error::{shape_err, Error, Result};
use crate::f2la::{self, F2Matrix};
use crate::pauli::PauliOperator;
use crate::stabilizer::StabilizerCode;

/// Clifford gates understood by [`Tableau::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    S(usize),
    Cz(usize, usize),
    Cx(usize, usize),
}

/// Result of a Pauli measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measurement {
    /// `+1` or `-1`.
    pub outcome: i8,
    /// `true` when the outcome was fixed by the state.
    pub deterministic: bool,
}

impl Measurement {
    /// Outcome as a bit: `0` for `+1`, `1` for `-1`.
    pub fn bit(&self) -> bool {
        self.outcome < 0
    }
}

/// Conjugate `p` by a gate in place.
pub fn conjugate(p: &mut PauliOperator, gate: Gate) {
    match gate {
        Gate::H(q) => {
            let (x, z) = (p.x().get(q), p.z().get(q));
            if x && z {
                p.negate();
            }
            p.x_mut().set(q, z);
            p.z_mut().set(q, x);
        }
        Gate::S(q) => {
            let (x, z) = (p.x().get(q), p.z().get(q));
            if x && z {
                p.negate();
            }
            p.z_mut().set(q, z ^ x);
        }
        Gate::Cx(a, b) => {
            let (xa, za, xb, zb) = (p.x().get(a), p.z().get(a), p.x().get(b), p.z().get(b));
            if xa && zb && !(xb ^ za) {
                p.negate();
            }
            p.x_mut().set(b, xb ^ xa);
            p.z_mut().set(a, za ^ zb);
        }
        Gate::Cz(a, b) => {
            let (xa, za, xb, zb) = (p.x().get(a), p.z().get(a), p.x().get(b), p.z().get(b));
            if xa && xb && (za ^ zb) {
                p.negate();
            }
            p.z_mut().set(a, za ^ xb);
            p.z_mut().set(b, zb ^ xa);
        }
    }
}

/// Sign-tracking stabilizer tableau.
///
/// Rows form a symplectic basis of the `n`-qubit Pauli group: `r`
/// stabilizer/destabilizer pairs and `k = n - r` tracked logical pairs. A
/// pure state has `k = 0`; tracked logicals let a circuit carry unknown data
/// while its Heisenberg action is read off the logical rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    n: usize,
    stabilizers: Vec<PauliOperator>,
    destabilizers: Vec<PauliOperator>,
    logical_x: Vec<PauliOperator>,
    logical_z: Vec<PauliOperator>,
}

impl Tableau {
    /// `|0⟩^n`.
    pub fn zero_state(n: usize) -> Self {
        Self::with_data_qubits(n, &[])
            .map(|mut t| {
                for q in 0..n {
                    t.apply(Gate::H(q)).expect("in range");
                }
                t
            })
            .expect("no data qubits")
    }

    /// `|+⟩^n`.
    pub fn plus_state(n: usize) -> Self {
        Self::with_data_qubits(n, &[]).expect("no data qubits")
    }

    /// Qubits in `data` carry unknown states tracked by logical pairs
    /// `(X_q, Z_q)`; all others start in `|+⟩`.
    pub fn with_data_qubits(n: usize, data: &[usize]) -> Result<Self> {
        let mut is_data = vec![false; n];
        for &q in data {
            if q >= n || is_data[q] {
                return Err(Error::InvalidArgument(format!(
                    "bad or repeated data qubit {q}"
                )));
            }
            is_data[q] = true;
        }
        let mut t = Self {
            n,
            stabilizers: Vec::new(),
            destabilizers: Vec::new(),
            logical_x: Vec::new(),
            logical_z: Vec::new(),
        };
        for q in 0..n {
            if !is_data[q] {
                t.stabilizers.push(PauliOperator::x_on(n, &[q]));
                t.destabilizers.push(PauliOperator::z_on(n, &[q]));
            }
        }
        for &q in data {
            t.logical_x.push(PauliOperator::x_on(n, &[q]));
            t.logical_z.push(PauliOperator::z_on(n, &[q]));
        }
        Ok(t)
    }

    /// The code space of a stabilizer code with its logicals tracked.
    pub fn encoded(code: &StabilizerCode) -> Self {
        let n = code.n();
        let row = |m: &F2Matrix, i: usize| {
            PauliOperator::from_symplectic(&m.row(i), false).expect("even width")
        };
        let stabilizers = code
            .basis_rows()
            .iter()
            .map(|&i| code.generators()[i].clone())
            .collect();
        let destabilizers = (0..code.destabilizers().rows())
            .map(|i| row(code.destabilizers(), i))
            .collect();
        Self {
            n,
            stabilizers,
            destabilizers,
            logical_x: (0..code.k()).map(|j| code.logical_x(j)).collect(),
            logical_z: (0..code.k()).map(|j| code.logical_z(j)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stabilizers(&self) -> &[PauliOperator] {
        &self.stabilizers
    }

    pub fn destabilizers(&self) -> &[PauliOperator] {
        &self.destabilizers
    }

    pub fn num_logicals(&self) -> usize {
        self.logical_x.len()
    }

    pub fn logical_x(&self, j: usize) -> &PauliOperator {
        &self.logical_x[j]
    }

    pub fn logical_z(&self, j: usize) -> &PauliOperator {
        &self.logical_z[j]
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::InvalidArgument(format!(
                "qubit {q} out of range for n = {}",
                self.n
            )));
        }
        Ok(())
    }

    fn rows_mut(&mut self) -> impl Iterator<Item = &mut PauliOperator> {
        self.stabilizers
            .iter_mut()
            .chain(self.destabilizers.iter_mut())
            .chain(self.logical_x.iter_mut())
            .chain(self.logical_z.iter_mut())
    }

    pub fn apply(&mut self, gate: Gate) -> Result<()> {
        match gate {
            Gate::H(q) | Gate::S(q) => self.check_qubit(q)?,
            Gate::Cz(a, b) | Gate::Cx(a, b) => {
                self.check_qubit(a)?;
                self.check_qubit(b)?;
                if a == b {
                    return Err(Error::InvalidArgument(format!(
                        "two-qubit gate on qubit {a} twice"
                    )));
                }
            }
        }
        for row in self.rows_mut() {
            conjugate(row, gate);
        }
        Ok(())
    }

    pub fn h(&mut self, q: usize) -> Result<()> {
        self.apply(Gate::H(q))
    }

    pub fn s(&mut self, q: usize) -> Result<()> {
        self.apply(Gate::S(q))
    }

    pub fn cz(&mut self, a: usize, b: usize) -> Result<()> {
        self.apply(Gate::Cz(a, b))
    }

    pub fn cx(&mut self, a: usize, b: usize) -> Result<()> {
        self.apply(Gate::Cx(a, b))
    }

    /// Apply a Pauli operator to the state: rows that anticommute with it
    /// change sign.
    pub fn apply_pauli(&mut self, p: &PauliOperator) -> Result<()> {
        if p.n() != self.n {
            return Err(shape_err(format!(
                "{}-qubit Pauli on {} qubits",
                p.n(),
                self.n
            )));
        }
        for row in self
            .stabilizers
            .iter_mut()
            .chain(self.logical_x.iter_mut())
            .chain(self.logical_z.iter_mut())
        {
            if !row.commutes_unchecked(p) {
                row.negate();
            }
        }
        Ok(())
    }

    fn check_observable(&self, m: &PauliOperator) -> Result<()> {
        if m.n() != self.n {
            return Err(shape_err(format!(
                "{}-qubit Pauli on {} qubits",
                m.n(),
                self.n
            )));
        }
        if m.is_identity_up_to_sign() {
            return Err(Error::InvalidArgument("cannot measure the identity".into()));
        }
        Ok(())
    }

    /// Signed stabilizer-group element with the same symplectic vector as
    /// `m`, if there is one.
    pub fn stabilizer_element(&self, m: &PauliOperator) -> Option<PauliOperator> {
        if self.stabilizers.iter().any(|s| !s.commutes_unchecked(m))
            || self
                .logical_x
                .iter()
                .chain(&self.logical_z)
                .any(|l| !l.commutes_unchecked(m))
        {
            return None;
        }
        // coefficient of s_i is the pairing with its destabilizer
        let mut prod = PauliOperator::identity(self.n);
        for (s, d) in self.stabilizers.iter().zip(&self.destabilizers) {
            if !d.commutes_unchecked(m) {
                prod = prod.checked_mul(s).expect("stabilizers commute");
            }
        }
        debug_assert_eq!(prod.symplectic(), m.symplectic());
        Some(prod)
    }

    /// `Some(±1)` when measuring `m` is deterministic, `None` otherwise.
    pub fn expectation(&self, m: &PauliOperator) -> Result<Option<i8>> {
        self.check_observable(m)?;
        Ok(self.stabilizer_element(m).map(|s| {
            if s.is_negative() == m.is_negative() {
                1
            } else {
                -1
            }
        }))
    }

    /// Measure `m`, drawing random outcomes from `rng`.
    pub fn measure(&mut self, m: &PauliOperator, rng: &mut impl Rng) -> Result<Measurement> {
        self.measure_with(m, || if rng.random::<bool>() { -1 } else { 1 })
    }

    /// Measure `m`; if the outcome is random it is taken to be `outcome`.
    pub fn measure_forcing(&mut self, m: &PauliOperator, outcome: i8) -> Result<Measurement> {
        if outcome != 1 && outcome != -1 {
            return Err(Error::InvalidArgument(format!(
                "outcome {outcome} is not ±1"
            )));
        }
        self.measure_with(m, || outcome)
    }

    fn measure_with(
        &mut self,
        m: &PauliOperator,
        draw: impl FnOnce() -> i8,
    ) -> Result<Measurement> {
        self.check_observable(m)?;
        let Some(p) = self
            .stabilizers
            .iter()
            .position(|s| !s.commutes_unchecked(m))
        else {
            if self
                .logical_x
                .iter()
                .chain(&self.logical_z)
                .any(|l| !l.commutes_unchecked(m))
            {
                return Err(Error::State(format!(
                    "measuring {m} would collapse a tracked logical"
                )));
            }
            let outcome = self.expectation(m)?.expect("commutes with the full basis");
            return Ok(Measurement {
                outcome,
                deterministic: true,
            });
        };
        let pivot = self.stabilizers[p].clone();
        for (i, s) in self.stabilizers.iter_mut().enumerate() {
            if i != p && !s.commutes_unchecked(m) {
                *s = s.checked_mul(&pivot).expect("stabilizers commute");
            }
        }
        for (i, d) in self.destabilizers.iter_mut().enumerate() {
            if i != p && !d.commutes_unchecked(m) {
                *d = d
                    .checked_mul(&pivot)
                    .expect("commutes with foreign stabilizers");
            }
        }
        for l in self.logical_x.iter_mut().chain(self.logical_z.iter_mut()) {
            if !l.commutes_unchecked(m) {
                *l = l
                    .checked_mul(&pivot)
                    .expect("logicals commute with stabilizers");
            }
        }
        let outcome = draw();
        let mut new = m.clone();
        if outcome < 0 {
            new.negate();
        }
        self.destabilizers[p] = pivot;
        self.stabilizers[p] = new;
        Ok(Measurement {
            outcome,
            deterministic: false,
        })
    }

    /// Multiply every tracked logical that acts on qubit `q` by the
    /// stabilizer `±P_q`, so logicals no longer touch a measured qubit.
    pub fn strip_measured_qubit(&mut self, q: usize, kind: char) -> Result<()> {
        self.check_qubit(q)?;
        let p = PauliOperator::single(self.n, q, kind)?;
        let s = self
            .stabilizer_element(&p)
            .ok_or_else(|| Error::State(format!("{kind}_{q} is not in the stabilizer group")))?;
        let terms: Vec<usize> = (0..self.destabilizers.len())
            .filter(|&i| !self.destabilizers[i].commutes_unchecked(&p))
            .collect();
        for j in 0..2 * self.num_logicals() {
            let k = self.num_logicals();
            let (row, partner) = if j < k {
                (self.logical_x[j].clone(), self.logical_z[j].clone())
            } else {
                (self.logical_z[j - k].clone(), self.logical_x[j - k].clone())
            };
            if row.factor(q) == 'I' {
                continue;
            }
            let updated = row
                .checked_mul(&s)
                .expect("logicals commute with stabilizers");
            // keep the destabilizers of the absorbed generators commuting
            // with the new logical
            for &i in &terms {
                let (mut d, _) = self.destabilizers[i]
                    .mul_with_phase(&partner)
                    .expect("same width");
                d.set_negative(false);
                self.destabilizers[i] = d;
            }
            if j < k {
                self.logical_x[j] = updated;
            } else {
                self.logical_z[j - k] = updated;
            }
        }
        Ok(())
    }

    /// Strip measured X support from the logicals for several qubits.
    pub fn strip_measured_qubits(&mut self, qubits: &[usize], kind: char) -> Result<()> {
        for &q in qubits {
            self.strip_measured_qubit(q, kind)?;
        }
        Ok(())
    }

    /// Check the symplectic-basis invariants.
    pub fn validate(&self) -> Result<()> {
        let k = self.num_logicals();
        if self.stabilizers.len() + k != self.n
            || self.destabilizers.len() != self.stabilizers.len()
        {
            return Err(Error::State("row counts do not form a basis".into()));
        }
        let r = self.stabilizers.len();
        let rows: Vec<&PauliOperator> = self
            .stabilizers
            .iter()
            .chain(&self.destabilizers)
            .chain(&self.logical_x)
            .chain(&self.logical_z)
            .collect();
        // partner of row i in the symplectic basis
        let partner = |i: usize| -> usize {
            if i < r {
                i + r
            } else if i < 2 * r {
                i - r
            } else if i < 2 * r + k {
                i + k
            } else {
                i - k
            }
        };
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                let anti = !rows[i].commutes_unchecked(rows[j]);
                if anti != (partner(i) == j) {
                    return Err(Error::State(format!(
                        "rows {i} and {j} break the commutation table"
                    )));
                }
            }
        }
        let m = F2Matrix::from_row_vecs(
            2 * self.n,
            &rows.iter().map(|p| p.symplectic()).collect::<Vec<_>>(),
        )?;
        if f2la::rank(&m) != 2 * self.n {
            return Err(Error::State("rows are not independent".into()));
        }
        Ok(())
    }
}
