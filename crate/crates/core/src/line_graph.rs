//! Line graphs over crystal-graph edges, with bond angles as edge features.
//!
//! Node `i` of a line graph is edge `i` of its base. The path variant links
//! consecutive edges (`e1.dst == e2.src`); the destination variant links every
//! ordered pair of distinct edges into the same node. Both can be applied a
//! second time, on topology only.

use nalgebra::{Matrix3, Vector3};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::CrystalGraph;

/// Reverse-image test tolerance (Å) for backtrack detection.
const BACKTRACK_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LineGraphError {
    #[error("base edge {0} has no usable vector")]
    MissingVectors(usize),
    #[error("angle between a zero-length vector and another vector is undefined")]
    ZeroVector,
    #[error("second-order construction needs a first-order line graph, got order {0}")]
    NotFirstOrder(u8),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineGraphVariant {
    Path,
    Destination,
}

impl std::str::FromStr for LineGraphVariant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "path" => Ok(Self::Path),
            "destination" | "dest" => Ok(Self::Destination),
            other => Err(format!("unknown line-graph variant `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineEdge {
    pub a: usize,
    pub b: usize,
    /// Bond angle in radians; absent on second-order graphs.
    pub angle: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LineGraph {
    pub variant: LineGraphVariant,
    pub order: u8,
    /// `(src, dst)` of the base edge behind each node.
    pub base_edges: Vec<(usize, usize)>,
    /// Sorted by `(b, a)`, so incoming edges of a node are contiguous.
    pub edges: Vec<LineEdge>,
    pub keep_backtrack: bool,
}

impl LineGraph {
    pub fn n_nodes(&self) -> usize {
        self.base_edges.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn angles(&self) -> Vec<f64> {
        self.edges.iter().filter_map(|e| e.angle).collect()
    }
}

/// Angle in [0, π]; `atan2(|v1×v2|, v1·v2)` keeps full precision near 0 and π.
pub fn angle_between(v1: &Vector3<f64>, v2: &Vector3<f64>) -> Result<f64, LineGraphError> {
    let (n1, n2) = (v1.norm(), v2.norm());
    if n1 == 0.0 || n2 == 0.0 || !n1.is_finite() || !n2.is_finite() {
        return Err(LineGraphError::ZeroVector);
    }
    Ok(v1.cross(v2).norm().atan2(v1.dot(v2)))
}

/// First-order line graph of a crystal graph.
///
/// On asymmetric-unit graphs the second edge of a path is rotated into the
/// shared node's frame first, so path angles match the unit-cell ones.
/// Backtracks are pairs whose second edge is the exact reverse image of the
/// first; they are dropped unless `keep_backtrack` is set.
pub fn line_graph(
    graph: &CrystalGraph,
    variant: LineGraphVariant,
    keep_backtrack: bool,
) -> Result<LineGraph, LineGraphError> {
    for (k, e) in graph.edges.iter().enumerate() {
        let n = e.vector.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(LineGraphError::MissingVectors(k));
        }
    }
    let incoming = graph.incoming();
    let edges = &graph.edges;
    let identity = Matrix3::identity();

    let per_node: Vec<Vec<LineEdge>> = (0..edges.len())
        .into_par_iter()
        .map(|b| {
            let eb = &edges[b];
            let mut out = Vec::new();
            match variant {
                LineGraphVariant::Path => {
                    let frame = graph.source_frame(b).unwrap_or(&identity);
                    let vb = frame * eb.vector;
                    for &a in &incoming[eb.src] {
                        let va = &edges[a].vector;
                        let backtrack =
                            edges[a].src == eb.dst && (va + vb).norm() < BACKTRACK_TOL;
                        if backtrack && !keep_backtrack {
                            continue;
                        }
                        out.push(LineEdge {
                            a,
                            b,
                            angle: Some(angle_between(va, &vb).expect("checked vectors")),
                        });
                    }
                }
                LineGraphVariant::Destination => {
                    for &a in &incoming[eb.dst] {
                        if a == b {
                            continue;
                        }
                        out.push(LineEdge {
                            a,
                            b,
                            angle: Some(
                                angle_between(&edges[a].vector, &eb.vector)
                                    .expect("checked vectors"),
                            ),
                        });
                    }
                }
            }
            out
        })
        .collect();

    Ok(LineGraph {
        variant,
        order: 1,
        base_edges: edges.iter().map(|e| (e.src, e.dst)).collect(),
        edges: per_node.into_iter().flatten().collect(),
        keep_backtrack,
    })
}

/// Line graph of a first-order line graph, same variant rule, no angles.
/// A backtrack here is a pair `(x→y, y→x)`.
pub fn line_graph_order2(lg: &LineGraph) -> Result<LineGraph, LineGraphError> {
    if lg.order != 1 {
        return Err(LineGraphError::NotFirstOrder(lg.order));
    }
    let mut incoming = vec![Vec::new(); lg.n_nodes()];
    for (k, e) in lg.edges.iter().enumerate() {
        incoming[e.b].push(k);
    }
    let mut edges = Vec::new();
    for (b, eb) in lg.edges.iter().enumerate() {
        let pool = match lg.variant {
            LineGraphVariant::Path => &incoming[eb.a],
            LineGraphVariant::Destination => &incoming[eb.b],
        };
        for &a in pool {
            if a == b {
                continue;
            }
            if lg.variant == LineGraphVariant::Path
                && !lg.keep_backtrack
                && lg.edges[a].a == eb.b
            {
                continue;
            }
            edges.push(LineEdge { a, b, angle: None });
        }
    }
    Ok(LineGraph {
        variant: lg.variant,
        order: 2,
        base_edges: lg.edges.iter().map(|e| (e.a, e.b)).collect(),
        edges,
        keep_backtrack: lg.keep_backtrack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_unit_graph, GraphKind, Node};
    use crate::neighbors::{knn_edges, PeriodicEdge};
    use crate::structure::{AtomSite, CrystalStructure, Lattice};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn edge(src: usize, dst: usize, v: [f64; 3]) -> PeriodicEdge {
        let vector = Vector3::from(v);
        PeriodicEdge {
            src,
            dst,
            offset: [0; 3],
            vector,
            distance: vector.norm(),
            ridge_area: None,
            op: None,
        }
    }

    fn toy(n: usize, edges: Vec<PeriodicEdge>) -> CrystalGraph {
        CrystalGraph {
            id: "toy".into(),
            kind: GraphKind::UnitCell,
            nodes: (0..n)
                .map(|_| Node {
                    z: 1,
                    multiplicity: 1,
                    features: vec![],
                })
                .collect(),
            edges,
            frames: vec![],
        }
    }

    #[test]
    fn angle_examples() {
        let v = Vector3::new(0.3, -1.0, 2.0);
        assert_eq!(angle_between(&v, &v).unwrap(), 0.0);
        assert!((angle_between(&v, &-v).unwrap() - PI).abs() < 1e-12);
        let a = angle_between(&Vector3::x(), &Vector3::new(1.0, 1.0, 0.0)).unwrap();
        assert!((a - FRAC_PI_4).abs() < 1e-15);
        assert_eq!(angle_between(&Vector3::zeros(), &v), Err(LineGraphError::ZeroVector));
    }

    #[test]
    fn chain_path_variant() {
        // a(0) -> b(1) -> c(2) -> d(3); vectors point from dst to src.
        let g = toy(
            4,
            vec![edge(0, 1, [-1.0, 0.0, 0.0]), edge(1, 2, [-1.0, 0.0, 0.0]), edge(2, 3, [0.0, -1.0, 0.0])],
        );
        let lg = line_graph(&g, LineGraphVariant::Path, false).unwrap();
        assert_eq!(lg.n_nodes(), 3);
        assert_eq!(lg.edges.len(), 2);
        assert_eq!((lg.edges[0].a, lg.edges[0].b), (0, 1));
        assert_eq!(lg.edges[0].angle, Some(0.0));
        let lg2 = line_graph_order2(&lg).unwrap();
        assert_eq!(lg2.n_nodes(), 2);
        assert_eq!(lg2.edges.len(), 1);
        assert_eq!(lg2.edges[0].angle, None);
        assert_eq!(line_graph_order2(&lg2), Err(LineGraphError::NotFirstOrder(2)));

        let short = toy(3, vec![edge(0, 1, [1.0, 0.0, 0.0]), edge(1, 2, [1.0, 0.0, 0.0])]);
        let lg = line_graph(&short, LineGraphVariant::Path, false).unwrap();
        assert_eq!(lg.edges.len(), 1);
        assert!(line_graph_order2(&lg).unwrap().edges.is_empty());
    }

    #[test]
    fn destination_star() {
        let g = toy(
            4,
            vec![
                edge(1, 0, [1.0, 0.0, 0.0]),
                edge(2, 0, [0.0, 1.0, 0.0]),
                edge(3, 0, [0.0, 0.0, 1.0]),
            ],
        );
        let lg = line_graph(&g, LineGraphVariant::Destination, false).unwrap();
        assert_eq!(lg.edges.len(), 6);
        assert!(lg.edges.iter().all(|e| (e.angle.unwrap() - FRAC_PI_2).abs() < 1e-15));
        let lg2 = line_graph_order2(&lg).unwrap();
        assert_eq!(lg2.n_nodes(), 6);
    }

    #[test]
    fn backtrack_flag() {
        let g = toy(2, vec![edge(0, 1, [1.0, 0.0, 0.0]), edge(1, 0, [-1.0, 0.0, 0.0])]);
        assert!(line_graph(&g, LineGraphVariant::Path, false).unwrap().edges.is_empty());
        let kept = line_graph(&g, LineGraphVariant::Path, true).unwrap();
        assert_eq!(kept.edges.len(), 2);
        assert!(kept.edges.iter().all(|e| (e.angle.unwrap() - PI).abs() < 1e-15));
    }

    #[test]
    fn simple_cubic_counts() {
        let s = CrystalStructure::new(Lattice::cubic(3.0), vec![AtomSite::new(84, [0.0; 3])], "sc")
            .unwrap();
        let g = build_unit_graph(&s, knn_edges(&s, 1, 1e-9).unwrap()).unwrap();
        let dest = line_graph(&g, LineGraphVariant::Destination, false).unwrap();
        assert_eq!(dest.n_edges(), 30);
        // 36 ordered pairs minus the 6 reverse images.
        let path = line_graph(&g, LineGraphVariant::Path, false).unwrap();
        assert_eq!(path.n_edges(), 30);
        assert_eq!(line_graph(&g, LineGraphVariant::Path, true).unwrap().n_edges(), 36);
    }

    #[test]
    fn rejects_zero_vectors() {
        let g = toy(2, vec![edge(0, 1, [0.0; 3])]);
        assert_eq!(
            line_graph(&g, LineGraphVariant::Path, false),
            Err(LineGraphError::MissingVectors(0))
        );
    }
}
