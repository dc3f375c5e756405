//! Unit-cell and asymmetric-unit multigraphs, plus the multiplicity-corrected
//! readout that makes the two give the same graph-level aggregate.

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::elements;
use crate::neighbors::{in_degrees, PeriodicEdge};
use crate::structure::CrystalStructure;
use crate::symmetry::OrbitMap;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("edge {edge} references node {node} but the structure has {n_nodes} sites")]
    IndexMismatch {
        edge: usize,
        node: usize,
        n_nodes: usize,
    },
    #[error("site {site} has in-degree {found}, its representative {rep} has {expected}")]
    IncompleteNeighborhood {
        site: usize,
        rep: usize,
        found: usize,
        expected: usize,
    },
    #[error("orbit map covers {0} sites, structure has {1}")]
    OrbitMismatch(usize, usize),
    #[error("{0} values but {1} multiplicities")]
    LengthMismatch(usize, usize),
    #[error("multiplicity of node {0} is zero")]
    ZeroMultiplicity(usize),
    #[error("attention readout needs one score per node")]
    MissingScores,
    #[error("readout over an empty node set")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    UnitCell,
    AsymmetricUnit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub z: u8,
    pub multiplicity: usize,
    /// Static atom features, see [`elements::node_features`].
    pub features: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrystalGraph {
    pub id: String,
    pub kind: GraphKind,
    pub nodes: Vec<Node>,
    /// Incoming edges grouped by destination.
    pub edges: Vec<PeriodicEdge>,
    /// Cartesian rotations referenced by `PeriodicEdge::op`: entry `s` carries
    /// unit-cell site `s` into the frame of its representative.
    pub frames: Vec<Matrix3<f64>>,
}

impl CrystalGraph {
    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.nodes.iter().map(|n| n.multiplicity).collect()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        in_degrees(self.nodes.len(), &self.edges)
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for e in &self.edges {
            deg[e.src] += 1;
        }
        deg
    }

    /// Edges into each node, as edge indices in list order.
    pub fn incoming(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.nodes.len()];
        for (k, e) in self.edges.iter().enumerate() {
            inc[e.dst].push(k);
        }
        inc
    }

    /// Rotation that brings edge `k`'s vector into its source's
    /// representative frame (identity on unit-cell graphs).
    pub fn source_frame(&self, k: usize) -> Option<&Matrix3<f64>> {
        self.edges[k].op.and_then(|op| self.frames.get(op))
    }
}

fn check_indices(n: usize, edges: &[PeriodicEdge]) -> Result<(), GraphError> {
    for (k, e) in edges.iter().enumerate() {
        for node in [e.src, e.dst] {
            if node >= n {
                return Err(GraphError::IndexMismatch {
                    edge: k,
                    node,
                    n_nodes: n,
                });
            }
        }
    }
    Ok(())
}

/// One node per unit-cell atom with multiplicity 1; edges pass through.
pub fn build_unit_graph(
    structure: &CrystalStructure,
    edges: Vec<PeriodicEdge>,
) -> Result<CrystalGraph, GraphError> {
    check_indices(structure.len(), &edges)?;
    let nodes = structure
        .sites()
        .iter()
        .map(|s| Node {
            z: s.species,
            multiplicity: 1,
            features: elements::node_features(s.species),
        })
        .collect();
    Ok(CrystalGraph {
        id: structure.id.clone(),
        kind: GraphKind::UnitCell,
        nodes,
        edges,
        frames: Vec::new(),
    })
}

/// Merges every orbit into its representative.
///
/// A representative keeps exactly its unit-cell incoming edges, with each
/// source renamed to the source's representative. Edge vectors are expressed
/// in the representative's frame; `op` indexes the rotation that would carry
/// the original source into its own representative's frame, so angles at
/// the source end can be recovered.
pub fn build_asu_graph(
    structure: &CrystalStructure,
    edges: &[PeriodicEdge],
    orbits: &OrbitMap,
) -> Result<CrystalGraph, GraphError> {
    let n = structure.len();
    if orbits.representative.len() != n {
        return Err(GraphError::OrbitMismatch(orbits.representative.len(), n));
    }
    check_indices(n, edges)?;
    let degrees = in_degrees(n, edges);
    for site in 0..n {
        let rep = orbits.representative[site];
        if degrees[site] != degrees[rep] {
            return Err(GraphError::IncompleteNeighborhood {
                site,
                rep,
                found: degrees[site],
                expected: degrees[rep],
            });
        }
    }

    let reps = orbits.representatives();
    let mut node_of = vec![usize::MAX; n];
    for (k, &r) in reps.iter().enumerate() {
        node_of[r] = k;
    }
    let frames: Vec<Matrix3<f64>> = orbits
        .op_to_rep
        .iter()
        .map(|op| {
            if op.is_identity() {
                Matrix3::identity()
            } else {
                op.cartesian_rotation(&structure.lattice)
            }
        })
        .collect();

    let nodes = reps
        .iter()
        .map(|&r| {
            let z = structure.sites()[r].species;
            Node {
                z,
                multiplicity: orbits.orbit_size[r],
                features: elements::node_features(z),
            }
        })
        .collect();

    let mut asu_edges = Vec::new();
    for &d in &reps {
        let frame = &frames[d];
        for e in edges.iter().filter(|e| e.dst == d) {
            asu_edges.push(PeriodicEdge {
                src: node_of[orbits.representative[e.src]],
                dst: node_of[d],
                offset: e.offset,
                vector: frame * e.vector,
                distance: e.distance,
                ridge_area: e.ridge_area,
                op: Some(e.src),
            });
        }
    }
    Ok(CrystalGraph {
        id: structure.id.clone(),
        kind: GraphKind::AsymmetricUnit,
        nodes,
        edges: asu_edges,
        frames,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReadoutMode {
    Mean,
    Sum,
    Min,
    Max,
    Attention,
}

impl ReadoutMode {
    pub const ALL: [ReadoutMode; 5] = [
        ReadoutMode::Mean,
        ReadoutMode::Sum,
        ReadoutMode::Min,
        ReadoutMode::Max,
        ReadoutMode::Attention,
    ];
}

/// Graph-level aggregate of per-node feature rows, weighted by multiplicity.
///
/// - mean: `mean_v(x_v·m_v) · |V| / Σm`
/// - sum: `Σ x_v·m_v`
/// - min / max: elementwise over `x_v`, multiplicity ignored
/// - attention: softmax-weighted mean with the same correction applied to
///   the softmax normaliser, `Σ m_v·e_v·x_v / Σ m_v·e_v` with
///   `e_v = exp(s_v - max s)`
///
/// With all multiplicities 1 each mode reduces to its plain form, and on an
/// asymmetric-unit graph each equals the plain form over the expanded cell.
pub fn asu_readout(
    values: &[Vec<f64>],
    multiplicities: &[usize],
    mode: ReadoutMode,
    scores: Option<&[f64]>,
) -> Result<Vec<f64>, GraphError> {
    if values.len() != multiplicities.len() {
        return Err(GraphError::LengthMismatch(values.len(), multiplicities.len()));
    }
    if let Some(k) = multiplicities.iter().position(|&m| m == 0) {
        return Err(GraphError::ZeroMultiplicity(k));
    }
    if values.is_empty() {
        return Err(GraphError::Empty);
    }
    let dim = values[0].len();
    let n = values.len() as f64;
    let total: f64 = multiplicities.iter().map(|&m| m as f64).sum();
    let mut out = vec![0.0; dim];
    match mode {
        ReadoutMode::Mean => {
            for (x, &m) in values.iter().zip(multiplicities) {
                for (o, v) in out.iter_mut().zip(x) {
                    *o += v * m as f64;
                }
            }
            for o in &mut out {
                *o = *o / n * (n / total);
            }
        }
        ReadoutMode::Sum => {
            for (x, &m) in values.iter().zip(multiplicities) {
                for (o, v) in out.iter_mut().zip(x) {
                    *o += v * m as f64;
                }
            }
        }
        ReadoutMode::Min | ReadoutMode::Max => {
            out.clone_from(&values[0]);
            for x in &values[1..] {
                for (o, &v) in out.iter_mut().zip(x) {
                    *o = if mode == ReadoutMode::Min { o.min(v) } else { o.max(v) };
                }
            }
        }
        ReadoutMode::Attention => {
            let scores = scores.ok_or(GraphError::MissingScores)?;
            if scores.len() != values.len() {
                return Err(GraphError::MissingScores);
            }
            let top = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let mut norm = 0.0;
            for ((x, &m), &s) in values.iter().zip(multiplicities).zip(scores) {
                let w = m as f64 * (s - top).exp();
                norm += w;
                for (o, v) in out.iter_mut().zip(x) {
                    *o += w * v;
                }
            }
            for o in &mut out {
                *o /= norm;
            }
        }
    }
    Ok(out)
}

/// Scalar convenience wrapper around [`asu_readout`].
pub fn asu_readout_scalar(
    values: &[f64],
    multiplicities: &[usize],
    mode: ReadoutMode,
    scores: Option<&[f64]>,
) -> Result<f64, GraphError> {
    let rows: Vec<Vec<f64>> = values.iter().map(|&v| vec![v]).collect();
    asu_readout(&rows, multiplicities, mode, scores).map(|v| v[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::neighbors::{knn_edges, radius_edges};
    use crate::structure::{AtomSite, Lattice};
    use crate::symmetry::{compute_orbits, find_symmetry_ops, DEFAULT_SYMPREC};

    fn nacl() -> CrystalStructure {
        let mut sites = Vec::new();
        for f in [[0.0, 0.0, 0.0], [0.5, 0.5, 0.0], [0.5, 0.0, 0.5], [0.0, 0.5, 0.5]] {
            sites.push(AtomSite::new(11, f));
        }
        for f in [[0.5, 0.0, 0.0], [0.0, 0.5, 0.0], [0.0, 0.0, 0.5], [0.5, 0.5, 0.5]] {
            sites.push(AtomSite::new(17, f));
        }
        CrystalStructure::new(Lattice::cubic(5.64), sites, "NaCl").unwrap()
    }

    #[test]
    fn readout_examples() {
        let (v, m) = ([1.0, 4.0], [2, 1]);
        assert!((asu_readout_scalar(&v, &m, ReadoutMode::Mean, None).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(asu_readout_scalar(&v, &m, ReadoutMode::Sum, None).unwrap(), 6.0);
        assert_eq!(asu_readout_scalar(&v, &m, ReadoutMode::Max, None).unwrap(), 4.0);
        assert_eq!(asu_readout_scalar(&v, &m, ReadoutMode::Min, None).unwrap(), 1.0);
        let att = asu_readout_scalar(&v, &m, ReadoutMode::Attention, Some(&[0.0, 0.0])).unwrap();
        assert!((att - 2.0).abs() < 1e-15);
    }

    #[test]
    fn readout_errors() {
        assert_eq!(
            asu_readout_scalar(&[1.0], &[1, 1], ReadoutMode::Sum, None),
            Err(GraphError::LengthMismatch(1, 2))
        );
        assert_eq!(
            asu_readout_scalar(&[1.0], &[0], ReadoutMode::Sum, None),
            Err(GraphError::ZeroMultiplicity(0))
        );
        assert_eq!(
            asu_readout_scalar(&[1.0], &[1], ReadoutMode::Attention, None),
            Err(GraphError::MissingScores)
        );
    }

    #[test]
    fn unit_graph_of_simple_cubic() {
        let s = CrystalStructure::new(Lattice::cubic(3.0), vec![AtomSite::new(84, [0.0; 3])], "sc")
            .unwrap();
        let g = build_unit_graph(&s, knn_edges(&s, 1, 1e-9).unwrap()).unwrap();
        assert_eq!(g.n_nodes(), 1);
        assert_eq!(g.n_edges(), 6);
        let mut offsets: Vec<_> = g.edges.iter().map(|e| e.offset).collect();
        offsets.sort();
        offsets.dedup();
        assert_eq!(offsets.len(), 6);
        assert_eq!(build_unit_graph(&s, vec![]).unwrap().n_edges(), 0);
    }

    #[test]
    fn unit_graph_rejects_foreign_edges() {
        let s = nacl();
        let mut edges = radius_edges(&s, 3.0).unwrap();
        assert_eq!(edges.len(), 48);
        assert!(build_unit_graph(&s, edges.clone()).unwrap().in_degrees().iter().all(|&d| d == 6));
        edges[0].src = 8;
        assert!(matches!(
            build_unit_graph(&s, edges),
            Err(GraphError::IndexMismatch { node: 8, .. })
        ));
    }

    #[test]
    fn nacl_asu_graph() {
        let s = nacl();
        let edges = knn_edges(&s, 6, 1e-9).unwrap();
        let ops = find_symmetry_ops(&s, DEFAULT_SYMPREC).unwrap();
        let orbits = compute_orbits(&s, &ops, DEFAULT_SYMPREC).unwrap();
        let g = build_asu_graph(&s, &edges, &orbits).unwrap();
        assert_eq!(g.kind, GraphKind::AsymmetricUnit);
        assert_eq!(g.multiplicities(), vec![4, 4]);
        assert_eq!(g.in_degrees(), vec![6, 6]);
        assert_eq!(edges.len() as f64 / g.n_edges() as f64, 4.0);
        // Na only neighbours Cl.
        assert!(g.edges.iter().all(|e| e.src != e.dst));
    }

    #[test]
    fn identity_asu_equals_unit_graph() {
        let s = nacl();
        let edges = knn_edges(&s, 6, 1e-9).unwrap();
        let unit = build_unit_graph(&s, edges.clone()).unwrap();
        let asu = build_asu_graph(&s, &edges, &OrbitMap::trivial(8)).unwrap();
        assert_eq!(asu.nodes, unit.nodes);
        assert_eq!(asu.edges.len(), unit.edges.len());
        for (a, u) in asu.edges.iter().zip(&unit.edges) {
            assert_eq!((a.src, a.dst, a.offset, a.distance), (u.src, u.dst, u.offset, u.distance));
            assert_eq!(a.vector, u.vector);
        }
    }

    #[test]
    fn asymmetric_degree_is_rejected() {
        let s = nacl();
        let ops = find_symmetry_ops(&s, DEFAULT_SYMPREC).unwrap();
        let orbits = compute_orbits(&s, &ops, DEFAULT_SYMPREC).unwrap();
        let mut edges = knn_edges(&s, 6, 1e-9).unwrap();
        edges.retain(|e| !(e.dst == 1 && e.src == 4));
        assert!(matches!(
            build_asu_graph(&s, &edges, &orbits),
            Err(GraphError::IncompleteNeighborhood { site: 1, rep: 0, .. })
        ));
    }
}
