//! One-graph-per-line JSON records.
//!
//! Field names and order are fixed:
//! `{"id","kind","nodes":[{"z","m","feat"}],"edges":[{"s","d","off","vec","dist","ridge"?}]}`
//! with an optional trailing `"angles":[{"a","b","ang"}]` for line graphs.

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::graph::{CrystalGraph, GraphKind, Node};
use crate::line_graph::{LineEdge, LineGraph, LineGraphVariant};
use crate::neighbors::PeriodicEdge;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeRecord {
    pub z: u8,
    pub m: usize,
    pub feat: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub s: usize,
    pub d: usize,
    pub off: [i32; 3],
    pub vec: [f64; 3],
    pub dist: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ridge: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AngleRecord {
    pub a: usize,
    pub b: usize,
    /// Absent on second-order line graphs.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ang: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphRecord {
    pub id: String,
    pub kind: GraphKind,
    pub nodes: Vec<NodeRecord>,
    pub edges: Vec<EdgeRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub angles: Option<Vec<AngleRecord>>,
}

impl GraphRecord {
    pub fn from_graph(graph: &CrystalGraph, line_graph: Option<&LineGraph>) -> Self {
        GraphRecord {
            id: graph.id.clone(),
            kind: graph.kind,
            nodes: graph
                .nodes
                .iter()
                .map(|n| NodeRecord {
                    z: n.z,
                    m: n.multiplicity,
                    feat: n.features.clone(),
                })
                .collect(),
            edges: graph
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    s: e.src,
                    d: e.dst,
                    off: e.offset,
                    vec: [e.vector.x, e.vector.y, e.vector.z],
                    dist: e.distance,
                    ridge: e.ridge_area,
                })
                .collect(),
            angles: line_graph.map(|lg| {
                lg.edges
                    .iter()
                    .map(|e| AngleRecord {
                        a: e.a,
                        b: e.b,
                        ang: e.angle,
                    })
                    .collect()
            }),
        }
    }

    /// Rebuilds the graph. Symmetry frames are not serialised, so the result
    /// carries none; the line graph comes from `angles` when present, with
    /// its variant inferred from which edge ends the pairs share.
    pub fn to_graph(&self) -> (CrystalGraph, Option<LineGraph>) {
        let graph = CrystalGraph {
            id: self.id.clone(),
            kind: self.kind,
            nodes: self
                .nodes
                .iter()
                .map(|n| Node {
                    z: n.z,
                    multiplicity: n.m,
                    features: n.feat.clone(),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| PeriodicEdge {
                    src: e.s,
                    dst: e.d,
                    offset: e.off,
                    vector: Vector3::from(e.vec),
                    distance: e.dist,
                    ridge_area: e.ridge,
                    op: None,
                })
                .collect(),
            frames: Vec::new(),
        };
        let lg = self.angles.as_ref().map(|angles| {
            let base_edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.s, e.d)).collect();
            let same_dst = angles.iter().all(|r| {
                matches!((base_edges.get(r.a), base_edges.get(r.b)), (Some(x), Some(y)) if x.1 == y.1)
            });
            LineGraph {
                variant: if same_dst {
                    LineGraphVariant::Destination
                } else {
                    LineGraphVariant::Path
                },
                order: if angles.iter().all(|r| r.ang.is_some()) { 1 } else { 2 },
                base_edges,
                edges: angles
                    .iter()
                    .map(|r| LineEdge {
                        a: r.a,
                        b: r.b,
                        angle: r.ang,
                    })
                    .collect(),
                keep_backtrack: false,
            }
        });
        (graph, lg)
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("graph record serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_order_is_fixed() {
        let rec = GraphRecord {
            id: "x".into(),
            kind: GraphKind::AsymmetricUnit,
            nodes: vec![NodeRecord {
                z: 11,
                m: 4,
                feat: vec![0.11],
            }],
            edges: vec![
                EdgeRecord {
                    s: 0,
                    d: 1,
                    off: [0, 0, -1],
                    vec: [0.0, 0.0, 2.82],
                    dist: 2.82,
                    ridge: Some(9.0),
                },
                EdgeRecord {
                    s: 1,
                    d: 0,
                    off: [0, 0, 1],
                    vec: [0.0, 0.0, -2.82],
                    dist: 2.82,
                    ridge: None,
                },
            ],
            angles: None,
        };
        assert_eq!(
            rec.to_line(),
            r#"{"id":"x","kind":"asymmetric_unit","nodes":[{"z":11,"m":4,"feat":[0.11]}],"edges":[{"s":0,"d":1,"off":[0,0,-1],"vec":[0.0,0.0,2.82],"dist":2.82,"ridge":9.0},{"s":1,"d":0,"off":[0,0,1],"vec":[0.0,0.0,-2.82],"dist":2.82}]}"#
        );
        let back: GraphRecord = serde_json::from_str(&rec.to_line()).unwrap();
        assert_eq!(back, rec);
    }

    #[test]
    fn angles_extend_the_record() {
        let line = r#"{"id":"t","kind":"unit_cell","nodes":[{"z":1,"m":1,"feat":[]}],"edges":[{"s":0,"d":0,"off":[1,0,0],"vec":[3.0,0.0,0.0],"dist":3.0},{"s":0,"d":0,"off":[0,1,0],"vec":[0.0,3.0,0.0],"dist":3.0}],"angles":[{"a":1,"b":0,"ang":1.5707963267948966},{"a":0,"b":1,"ang":1.5707963267948966}]}"#;
        let rec: GraphRecord = serde_json::from_str(line).unwrap();
        assert_eq!(rec.to_line(), line);
        let (g, lg) = rec.to_graph();
        let lg = lg.unwrap();
        assert_eq!(lg.n_nodes(), g.n_edges());
        assert_eq!(lg.variant, LineGraphVariant::Destination);
        assert_eq!(lg.order, 1);
    }
}
