use rand::Rng;
use serde::Serialize;

use super::{graph_state, Graph};
use crate::error::{shape_err, Error, Result};
use crate::f2la::{self, F2Matrix, F2Vec};
use crate::noise::{DecodingProblem, Prior};
use crate::pauli::PauliOperator;
use crate::stabilizer::CssCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LayerType {
    /// Code qubits plus one ancilla per row of `H_Z`.
    Z,
    /// Code qubits plus one ancilla per row of `H_X`.
    X,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Code,
    Ancilla,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Primal,
    Dual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VertexInfo {
    pub layer: usize,
    pub kind: VertexKind,
    pub parity: Parity,
    /// Qubit index for code vertices, check index for ancillas.
    pub index: usize,
}

/// A set of X-measurement outcomes with a fixed noiseless parity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityCheck {
    pub vertices: Vec<usize>,
    /// `true` when the outcomes multiply to `-1`.
    pub expected: bool,
}

/// Alternating `G_Z` / `G_X` layers of a CSS code's Tanner-graph states,
/// with every vertex measured in X.
#[derive(Clone, Debug)]
pub struct FoliatedState {
    code: CssCode,
    graph: Graph,
    vertices: Vec<VertexInfo>,
    layer_start: Vec<usize>,
    detectors: Vec<ParityCheck>,
    logicals: Vec<ParityCheck>,
}

pub fn layer_type(layer: usize) -> LayerType {
    if layer.is_multiple_of(2) {
        LayerType::Z
    } else {
        LayerType::X
    }
}

/// Build `layers` alternating layers, starting with `G_Z`.
pub fn foliate(code: &CssCode, layers: usize) -> Result<FoliatedState> {
    if layers == 0 {
        return Err(Error::InvalidArgument(
            "a foliation needs at least one layer".into(),
        ));
    }
    let n = code.n();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut layer_start = Vec::with_capacity(layers);
    for layer in 0..layers {
        let start = vertices.len();
        layer_start.push(start);
        let (h, code_parity) = match layer_type(layer) {
            LayerType::Z => (code.h_z(), Parity::Primal),
            LayerType::X => (code.h_x(), Parity::Dual),
        };
        let ancilla_parity = match code_parity {
            Parity::Primal => Parity::Dual,
            Parity::Dual => Parity::Primal,
        };
        for q in 0..n {
            vertices.push(VertexInfo {
                layer,
                kind: VertexKind::Code,
                parity: code_parity,
                index: q,
            });
        }
        for c in 0..h.rows() {
            vertices.push(VertexInfo {
                layer,
                kind: VertexKind::Ancilla,
                parity: ancilla_parity,
                index: c,
            });
            for q in h.row_ones(c) {
                edges.push((start + n + c, start + q));
            }
        }
        if layer > 0 {
            let prev = layer_start[layer - 1];
            for q in 0..n {
                edges.push((prev + q, start + q));
            }
        }
    }
    let graph = Graph::new(vertices.len(), &edges)?;
    let mut f = FoliatedState {
        code: code.clone(),
        graph,
        vertices,
        layer_start,
        detectors: Vec::new(),
        logicals: Vec::new(),
    };
    f.classify();
    Ok(f)
}

/// Basis of all vertex sets `A` with `∏_{v∈A} S_v` pure X, with the sign of
/// that product as the expected parity.
pub fn graph_detectors(g: &Graph) -> Vec<ParityCheck> {
    f2la::kernel_basis(&g.adjacency())
        .row_vecs()
        .iter()
        .map(|a| parity_check(g, a))
        .collect()
}

fn parity_check(g: &Graph, a: &F2Vec) -> ParityCheck {
    let mut prod = PauliOperator::identity(g.n());
    for v in a.iter_ones() {
        prod = prod
            .checked_mul(&g.stabilizer(v))
            .expect("graph stabilizers commute");
    }
    debug_assert!(prod.z().is_zero() && prod.x() == a);
    ParityCheck {
        vertices: a.support(),
        expected: prod.is_negative(),
    }
}

impl FoliatedState {
    /// Split `ker Γ` into detectors and logical correlations. A set is a
    /// logical correlation when its code part in the first or last layer
    /// overlaps a matching logical oddly: `Z̄` in `G_Z` layers, `X̄` in
    /// `G_X` layers.
    fn classify(&mut self) {
        let kernel = f2la::kernel_basis(&self.graph.adjacency()).row_vecs();
        let last = self.layers() - 1;
        let mut boundary = vec![0];
        if last > 0 {
            boundary.push(last);
        }
        let image = |a: &F2Vec| -> F2Vec {
            let mut bits = Vec::new();
            for &layer in &boundary {
                let part = a.slice(
                    self.layer_start[layer],
                    self.layer_start[layer] + self.code.n(),
                );
                let logicals = match layer_type(layer) {
                    LayerType::Z => self.code.logical_z(),
                    LayerType::X => self.code.logical_x(),
                };
                bits.extend(logicals.mul_vec(&part).expect("code width").to_bools());
            }
            F2Vec::from_bools(&bits)
        };
        // pivoted echelon form over the logical images
        let mut reduced: Vec<(usize, F2Vec, F2Vec)> = Vec::new();
        let mut detectors = Vec::new();
        for a in kernel {
            let (mut a, mut img) = (a.clone(), image(&a));
            for (piv, r_img, r_a) in &reduced {
                if img.get(*piv) {
                    img.xor_assign(r_img);
                    a.xor_assign(r_a);
                }
            }
            let pivot = img.iter_ones().next();
            match pivot {
                None => detectors.push(a),
                Some(piv) => reduced.push((piv, img, a)),
            }
        }
        self.detectors = detectors
            .iter()
            .map(|a| parity_check(&self.graph, a))
            .collect();
        self.logicals = reduced
            .iter()
            .map(|(_, _, a)| parity_check(&self.graph, a))
            .collect();
    }

    pub fn code(&self) -> &CssCode {
        &self.code
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn layers(&self) -> usize {
        self.layer_start.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[VertexInfo] {
        &self.vertices
    }

    /// Vertex ids of one layer.
    pub fn layer_vertices(&self, layer: usize) -> std::ops::Range<usize> {
        let start = self.layer_start[layer];
        let end = self
            .layer_start
            .get(layer + 1)
            .copied()
            .unwrap_or(self.vertices.len());
        start..end
    }

    pub fn vertex_id(&self, layer: usize, kind: VertexKind, index: usize) -> Option<usize> {
        if layer >= self.layers() {
            return None;
        }
        let range = self.layer_vertices(layer);
        let id = match kind {
            VertexKind::Code if index < self.code.n() => range.start + index,
            VertexKind::Ancilla => range.start + self.code.n() + index,
            VertexKind::Code => return None,
        };
        (id < range.end).then_some(id)
    }

    pub fn detectors(&self) -> &[ParityCheck] {
        &self.detectors
    }

    pub fn logical_correlations(&self) -> &[ParityCheck] {
        &self.logicals
    }

    pub fn logical_supports(&self) -> Vec<Vec<usize>> {
        self.logicals.iter().map(|c| c.vertices.clone()).collect()
    }

    /// Simulate `|G⟩`, apply Z faults on the given vertices and measure every
    /// vertex in X. Bit `v` is set when vertex `v` reads `-1`.
    pub fn sample_outcomes(&self, z_faults: Option<&F2Vec>, rng: &mut impl Rng) -> Result<F2Vec> {
        let n = self.num_vertices();
        let mut t = graph_state(&self.graph);
        if let Some(f) = z_faults {
            if f.len() != n {
                return Err(shape_err(format!(
                    "{} fault bits for {n} vertices",
                    f.len()
                )));
            }
            t.apply_pauli(&PauliOperator::z_on(n, &f.support()))?;
        }
        let mut out = F2Vec::zeros(n);
        for v in 0..n {
            let m = t.measure(&PauliOperator::x_on(n, &[v]), rng)?;
            out.set(v, m.bit());
        }
        Ok(out)
    }

    /// Parity of `outcomes` on each check, relative to its expected value.
    pub fn evaluate(checks: &[ParityCheck], outcomes: &F2Vec) -> F2Vec {
        F2Vec::from_bools(
            &checks
                .iter()
                .map(|c| {
                    c.vertices
                        .iter()
                        .fold(c.expected, |acc, &v| acc ^ outcomes.get(v))
                })
                .collect::<Vec<_>>(),
        )
    }

    /// Phenomenological decoding problem: one fault column per vertex (a Z
    /// error before its X measurement) with probability `p`.
    pub fn decoding_problem(&self, p: f64) -> Result<DecodingProblem> {
        let n = self.num_vertices();
        let rows = |checks: &[ParityCheck]| {
            let supports: Vec<Vec<usize>> = checks.iter().map(|c| c.vertices.clone()).collect();
            F2Matrix::from_row_supports(supports.len(), n, &supports)
        };
        DecodingProblem::new(
            rows(&self.detectors)?,
            rows(&self.logicals)?,
            Prior::uniform(n, p)?,
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Vertex {
            id: usize,
            layer: usize,
            kind: VertexKind,
            parity: Parity,
        }
        let vertices: Vec<Vertex> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(id, v)| Vertex {
                id,
                layer: v.layer,
                kind: v.kind,
                parity: v.parity,
            })
            .collect();
        let edges: Vec<[usize; 2]> = self.graph.edges().iter().map(|&(u, v)| [u, v]).collect();
        serde_json::json!({ "vertices": vertices, "edges": edges })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded_rng;

    fn four_qubit_code() -> CssCode {
        CssCode::new(
            F2Matrix::from_dense(&[[1, 1, 0, 0], [0, 0, 1, 1]]),
            F2Matrix::from_dense(&[[1, 1, 1, 1]]),
        )
        .unwrap()
    }

    #[test]
    fn two_layer_structure() {
        let f = foliate(&four_qubit_code(), 2).unwrap();
        assert_eq!(f.num_vertices(), 11);
        assert_eq!(f.graph().edges().len(), 4 + 4 + 4);
        let primal = f
            .vertices()
            .iter()
            .filter(|v| v.parity == Parity::Primal)
            .count();
        assert_eq!(primal, 4 + 2);
        assert_eq!(f.detectors().len(), 3);
        assert!(f.logical_correlations().is_empty());
    }

    #[test]
    fn single_layer_reads_out_x_logical() {
        let f = foliate(&four_qubit_code(), 1).unwrap();
        assert_eq!(f.logical_correlations().len(), 1);
        // X stabilizers X0X1 and X2X3
        assert_eq!(f.detectors().len(), 2);
        let mut rng = seeded_rng(3);
        for _ in 0..20 {
            let out = f.sample_outcomes(None, &mut rng).unwrap();
            assert!(FoliatedState::evaluate(f.detectors(), &out).is_zero());
            assert!(FoliatedState::evaluate(f.logical_correlations(), &out).is_zero());
        }
    }

    #[test]
    fn edgeless_graph_detectors_are_singletons() {
        let d = graph_detectors(&Graph::empty(3));
        let sets: Vec<_> = d.iter().map(|c| c.vertices.clone()).collect();
        assert_eq!(sets.len(), 3);
        for v in 0..3 {
            assert!(sets.contains(&vec![v]));
        }
        assert!(d.iter().all(|c| !c.expected));
    }

    #[test]
    fn json_shape() {
        let f = foliate(&four_qubit_code(), 2).unwrap();
        let j = f.to_json();
        assert_eq!(j["vertices"].as_array().unwrap().len(), 11);
        assert_eq!(j["vertices"][4]["kind"], "ancilla");
        assert_eq!(j["vertices"][0]["parity"], "primal");
        assert_eq!(j["edges"].as_array().unwrap().len(), 12);
    }

    #[test]
    fn zero_layers_rejected() {
        assert!(foliate(&four_qubit_code(), 0).is_err());
    }
}
