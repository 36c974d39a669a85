//! Stabilizer tableau simulation, graph states, measurement-based primitives
//! and foliated CSS codes.

mod foliation;
mod tableau;

pub use foliation::{
    foliate, graph_detectors, FoliatedState, LayerType, Parity, ParityCheck, VertexInfo, VertexKind,
};
pub use tableau::{conjugate, Gate, Measurement, Tableau};

use rand::Rng;

use crate::error::{Error, Result};
use crate::f2la::F2Matrix;
use crate::pauli::PauliOperator;

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    /// Rejects self-loops, repeated edges and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut neighbors = vec![Vec::new(); n];
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop on vertex {u}")));
            }
            if neighbors[u].contains(&v) {
                return Err(Error::InvalidArgument(format!("repeated edge ({u}, {v})")));
            }
            neighbors[u].push(v);
            neighbors[v].push(u);
            normalized.push((u.min(v), u.max(v)));
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(Self {
            n,
            edges: normalized,
            neighbors,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, &[]).expect("no edges")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges).expect("valid path")
    }

    /// Star with `leaves` leaves `0..leaves` around the center vertex `leaves`.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (0..leaves).map(|i| (i, leaves)).collect();
        Self::new(leaves + 1, &edges).expect("valid star")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(min, max)` pairs in insertion order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn adjacency(&self) -> F2Matrix {
        let mut m = F2Matrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            m.set(u, v, true);
            m.set(v, u, true);
        }
        m
    }

    /// `S_v = X_v ∏_{u ∈ N(v)} Z_u`.
    pub fn stabilizer(&self, v: usize) -> PauliOperator {
        let mut p = PauliOperator::x_on(self.n, &[v]);
        for &u in &self.neighbors[v] {
            p.z_mut().set(u, true);
        }
        p
    }
}

/// `|G⟩`: CZ along every edge applied to `|+⟩^n`.
pub fn graph_state(g: &Graph) -> Tableau {
    let mut t = Tableau::plus_state(g.n());
    for &(u, v) in g.edges() {
        t.cz(u, v).expect("edges are in range");
    }
    t
}

fn require_plus(t: &Tableau, q: usize) -> Result<()> {
    if q >= t.n() {
        return Err(Error::InvalidArgument(format!(
            "qubit {q} out of range for n = {}",
            t.n()
        )));
    }
    if t.expectation(&PauliOperator::x_on(t.n(), &[q]))? != Some(1) {
        return Err(Error::State(format!("qubit {q} is not in |+⟩")));
    }
    Ok(())
}

fn measure_x(t: &mut Tableau, q: usize, rng: &mut impl Rng) -> Result<i8> {
    Ok(t.measure(&PauliOperator::x_on(t.n(), &[q]), rng)?.outcome)
}

/// One-bit teleportation: `CZ(data, fresh)` then an X measurement of `data`.
///
/// Tracked logicals end up on `fresh` as `X̄ → m Z_fresh`, `Z̄ → X_fresh`,
/// i.e. the state `X^m H |ψ⟩`.
pub fn teleport_one_bit(
    t: &mut Tableau,
    data: usize,
    fresh: usize,
    rng: &mut impl Rng,
) -> Result<i8> {
    if data == fresh {
        return Err(Error::InvalidArgument(
            "data and fresh qubit coincide".into(),
        ));
    }
    require_plus(t, fresh)?;
    t.cz(data, fresh)?;
    let m = measure_x(t, data, rng)?;
    t.strip_measured_qubit(data, 'X')?;
    Ok(m)
}

/// CZ between `a` and `b` through the path `a - mid1 - mid2 - b`, with both
/// middle qubits measured in X. Returns the two outcomes.
pub fn measurement_induced_cz(
    t: &mut Tableau,
    a: usize,
    mid1: usize,
    mid2: usize,
    b: usize,
    rng: &mut impl Rng,
) -> Result<(i8, i8)> {
    let qs = [a, mid1, mid2, b];
    for i in 0..4 {
        for j in i + 1..4 {
            if qs[i] == qs[j] {
                return Err(Error::InvalidArgument(
                    "primitive needs four distinct qubits".into(),
                ));
            }
        }
    }
    require_plus(t, mid1)?;
    require_plus(t, mid2)?;
    t.cz(a, mid1)?;
    t.cz(mid1, mid2)?;
    t.cz(mid2, b)?;
    let m1 = measure_x(t, mid1, rng)?;
    let m2 = measure_x(t, mid2, rng)?;
    t.strip_measured_qubits(&[mid1, mid2], 'X')?;
    Ok((m1, m2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded_rng;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn graph_validation() {
        assert!(Graph::new(2, &[(0, 0)]).is_err());
        assert!(Graph::new(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(2, &[(0, 2)]).is_err());
        assert_eq!(Graph::star(4).neighbors(4), &[0, 1, 2, 3]);
    }

    #[test]
    fn graph_state_generators() {
        let t = graph_state(&Graph::path(2));
        assert_eq!(t.stabilizers(), &[p("XZ"), p("ZX")]);
        let star = Graph::star(4);
        let t = graph_state(&star);
        for v in 0..5 {
            assert_eq!(t.stabilizers()[v], star.stabilizer(v));
        }
        assert_eq!(t.stabilizers()[4], p("ZZZZX"));
        assert_eq!(
            graph_state(&Graph::empty(2)).stabilizers(),
            &[p("XI"), p("IX")]
        );
    }

    #[test]
    fn single_teleport_maps_logicals() {
        for seed in 0..8 {
            let mut t = Tableau::with_data_qubits(2, &[0]).unwrap();
            let m = teleport_one_bit(&mut t, 0, 1, &mut seeded_rng(seed)).unwrap();
            let mut zx = p("IZ");
            if m < 0 {
                zx.negate();
            }
            assert_eq!(t.logical_x(0), &zx);
            assert_eq!(t.logical_z(0), &p("IX"));
            t.validate().unwrap();
        }
    }

    #[test]
    fn teleport_requires_fresh_plus() {
        let mut t = Tableau::with_data_qubits(2, &[0]).unwrap();
        t.h(1).unwrap();
        assert!(matches!(
            teleport_one_bit(&mut t, 0, 1, &mut seeded_rng(0)),
            Err(Error::State(_))
        ));
    }

    #[test]
    fn remote_cz_heisenberg_table() {
        for seed in 0..8 {
            let mut t = Tableau::with_data_qubits(4, &[0, 3]).unwrap();
            measurement_induced_cz(&mut t, 0, 1, 2, 3, &mut seeded_rng(seed)).unwrap();
            let strip = |q: &PauliOperator| {
                let mut q = q.clone();
                q.set_negative(false);
                q
            };
            assert_eq!(strip(t.logical_x(0)), p("XIIZ"));
            assert_eq!(strip(t.logical_x(1)), p("ZIIX"));
            assert_eq!(t.logical_z(0), &p("ZIII"));
            assert_eq!(t.logical_z(1), &p("IIIZ"));
            t.validate().unwrap();
        }
    }
}
