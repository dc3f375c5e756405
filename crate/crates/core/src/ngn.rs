//! Seeded, inference-only (nested) graph network.
//!
//! Block structure follows coGN / coNGN: a Gauss-basis embedding, `T`
//! processing blocks (edge MLP over `x_e ‖ x_dst ‖ x_src`, optional nested
//! blocks on the line graph, incoming-edge aggregation, residual or gated
//! node update, optional global update) and a readout with one linear layer.
//!
//! Parameters come from `ChaCha8Rng::seed_from_u64(seed)`. Each draw takes
//! one `next_u64`, keeps the top 53 bits as `u ∈ [0, 1)`, and maps it to
//! `(2u − 1) · bound` with `bound = 1/√fan_in`. Weights are drawn row by row
//! (output unit, then input unit) and multiplied by `init_scale`; biases
//! follow their weights and are not scaled. Layer order is fixed (see
//! [`init_params`]) and the attention score layer is always drawn last, so
//! the readout mode never changes any other parameter.
//!
//! Gated update: `h = MLP_V(x̂)`, `z = sigmoid([x ‖ h]·W_z + b_z)`,
//! `x' = x + z ⊙ (h − x)`.

use nalgebra::{DMatrix, DVector, RowDVector};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::elements::NODE_FEATURE_COUNT;
use crate::graph::{asu_readout, CrystalGraph, GraphError, ReadoutMode};
use crate::line_graph::LineGraph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NgnError {
    #[error("T_lg > 0 needs a line graph")]
    MissingLineGraph,
    #[error("line graph has {found} nodes, graph has {expected} edges")]
    LineGraphMismatch { expected: usize, found: usize },
    #[error("line graph carries no angles (order {0})")]
    MissingAngles(u8),
    #[error("non-finite activation in block {0}")]
    NonFiniteActivation(usize),
    #[error("node {node} has {found} features, expected {expected}")]
    BadNodeFeatures {
        node: usize,
        found: usize,
        expected: usize,
    },
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Readout(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussBasisConfig {
    pub count: usize,
    pub lo: f64,
    pub hi: f64,
    /// σ; defaults to the centre spacing.
    pub width: f64,
}

impl GaussBasisConfig {
    /// Evenly spaced centres on `[lo, hi]` with σ equal to their spacing.
    pub fn evenly(count: usize, lo: f64, hi: f64) -> Self {
        let width = if count > 1 { (hi - lo) / (count - 1) as f64 } else { hi - lo };
        GaussBasisConfig { count, lo, hi, width }
    }

    pub fn distance_default() -> Self {
        Self::evenly(32, 0.0, 8.0)
    }

    pub fn angle_default() -> Self {
        Self::evenly(16, 0.0, std::f64::consts::PI)
    }

    pub fn validate(&self) -> Result<(), NgnError> {
        if self.count == 0 || !(self.hi > self.lo) || !(self.width > 0.0) {
            return Err(NgnError::InvalidConfig(format!("bad Gauss basis {self:?}")));
        }
        Ok(())
    }

    pub fn center(&self, c: usize) -> f64 {
        if self.count == 1 {
            self.lo
        } else {
            self.lo + (self.hi - self.lo) * c as f64 / (self.count - 1) as f64
        }
    }
}

/// `exp(−(value − μ_c)² / 2σ²)` for each centre, unnormalised.
pub fn gauss_basis(value: f64, cfg: &GaussBasisConfig) -> Vec<f64> {
    let two_s2 = 2.0 * cfg.width * cfg.width;
    (0..cfg.count)
        .map(|c| {
            let d = value - cfg.center(c);
            (-d * d / two_s2).exp()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeUpdate {
    Residual,
    Gated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeAggregation {
    Sum,
    Mean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Swish,
    Relu,
    Identity,
}

impl Activation {
    fn apply(self, x: f64) -> f64 {
        match self {
            Activation::Swish => x / (1.0 + (-x).exp()),
            Activation::Relu => x.max(0.0),
            Activation::Identity => x,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NgnConfig {
    #[serde(rename = "T")]
    pub t: usize,
    #[serde(rename = "T_lg")]
    pub t_lg: usize,
    pub width: usize,
    pub mlp_depth_edge: usize,
    pub mlp_depth_node: usize,
    pub mlp_depth_global: usize,
    pub node_update: NodeUpdate,
    pub edge_agg: EdgeAggregation,
    pub readout: ReadoutMode,
    pub seed: u64,
    pub activation: Activation,
    pub distance_basis: GaussBasisConfig,
    pub angle_basis: GaussBasisConfig,
    /// Global feature path (x_G updated per block from node and edge means). Off in both presets.
    pub use_global: bool,
    /// Multiplies every drawn weight (not biases).
    pub init_scale: f64,
}

impl Default for NgnConfig {
    fn default() -> Self {
        Self::cogn()
    }
}

impl NgnConfig {
    /// Plain GN: five processing blocks, no nesting.
    pub fn cogn() -> Self {
        NgnConfig {
            t: 5,
            t_lg: 0,
            width: 128,
            mlp_depth_edge: 5,
            mlp_depth_node: 1,
            mlp_depth_global: 1,
            node_update: NodeUpdate::Residual,
            edge_agg: EdgeAggregation::Sum,
            readout: ReadoutMode::Mean,
            seed: 0,
            activation: Activation::Swish,
            distance_basis: GaussBasisConfig::distance_default(),
            angle_basis: GaussBasisConfig::angle_default(),
            use_global: false,
            init_scale: 1.0,
        }
    }

    /// Nested GN: every outer block carries two line-graph blocks.
    pub fn congn() -> Self {
        NgnConfig {
            t_lg: 2,
            ..Self::cogn()
        }
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "cogn" | "coGN" => Some(Self::cogn()),
            "congn" | "coNGN" => Some(Self::congn()),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<(), NgnError> {
        if self.t == 0
            || self.width == 0
            || self.mlp_depth_edge == 0
            || self.mlp_depth_node == 0
            || self.mlp_depth_global == 0
        {
            return Err(NgnError::InvalidConfig(
                "T, width and MLP depths must be positive".into(),
            ));
        }
        if !self.init_scale.is_finite() {
            return Err(NgnError::InvalidConfig("init_scale must be finite".into()));
        }
        self.distance_basis.validate()?;
        self.angle_basis.validate()
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn fingerprint(&self) -> String {
        let json = serde_json::to_string(self).expect("config serialises");
        hex(&Sha256::digest(json.as_bytes()))
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Linear {
    /// `(in, out)`, so a layer is `X·W + b`.
    pub weight: DMatrix<f64>,
    pub bias: RowDVector<f64>,
}

impl Linear {
    fn draw(rng: &mut ChaCha8Rng, fan_in: usize, fan_out: usize, scale: f64) -> Self {
        let bound = 1.0 / (fan_in as f64).sqrt();
        let mut uniform = || {
            let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            (2.0 * u - 1.0) * bound
        };
        let mut weight = DMatrix::zeros(fan_in, fan_out);
        for o in 0..fan_out {
            for i in 0..fan_in {
                weight[(i, o)] = uniform() * scale;
            }
        }
        let bias = RowDVector::from_iterator(fan_out, (0..fan_out).map(|_| uniform()));
        Linear { weight, bias }
    }

    fn forward(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        let mut y = x * &self.weight;
        for mut row in y.row_iter_mut() {
            row += &self.bias;
        }
        y
    }

    fn n_params(&self) -> usize {
        self.weight.len() + self.bias.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mlp {
    pub layers: Vec<Linear>,
}

impl Mlp {
    fn draw(rng: &mut ChaCha8Rng, fan_in: usize, width: usize, depth: usize, scale: f64) -> Self {
        let layers = (0..depth)
            .map(|l| Linear::draw(rng, if l == 0 { fan_in } else { width }, width, scale))
            .collect();
        Mlp { layers }
    }

    /// Every layer is followed by the activation.
    fn forward(&self, x: &DMatrix<f64>, act: Activation) -> DMatrix<f64> {
        let mut h = x.clone();
        for layer in &self.layers {
            h = layer.forward(&h);
            h.apply(|v| *v = act.apply(*v));
        }
        h
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NestedBlockParams {
    pub edge: Mlp,
    pub node: Mlp,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockParams {
    pub edge: Mlp,
    pub nested: Vec<NestedBlockParams>,
    pub node: Mlp,
    pub gate: Option<Linear>,
    pub global: Option<Mlp>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NgnParams {
    pub embed_edge: Linear,
    pub embed_node: Linear,
    pub blocks: Vec<BlockParams>,
    pub output: Linear,
    pub attention: Linear,
}

impl NgnParams {
    fn layers(&self) -> Vec<&Linear> {
        let mut out = vec![&self.embed_edge, &self.embed_node];
        for b in &self.blocks {
            out.extend(&b.edge.layers);
            for n in &b.nested {
                out.extend(&n.edge.layers);
                out.extend(&n.node.layers);
            }
            out.extend(&b.node.layers);
            out.extend(b.gate.iter());
            if let Some(g) = &b.global {
                out.extend(&g.layers);
            }
        }
        out.push(&self.output);
        out.push(&self.attention);
        out
    }

    pub fn n_params(&self) -> usize {
        self.layers().iter().map(|l| l.n_params()).sum()
    }

    /// Hex SHA-256 over every weight then bias, layer by layer, as
    /// little-endian f64 in draw order.
    pub fn checksum(&self) -> String {
        let mut h = Sha256::new();
        for layer in self.layers() {
            for o in 0..layer.weight.ncols() {
                for i in 0..layer.weight.nrows() {
                    h.update(layer.weight[(i, o)].to_le_bytes());
                }
            }
            for b in layer.bias.iter() {
                h.update(b.to_le_bytes());
            }
        }
        hex(&h.finalize())
    }
}

/// Draw order: edge embedding, node embedding, then per block: edge MLP,
/// nested (edge MLP, node MLP) pairs, node MLP, gate, global MLP; then the
/// output layer and finally the attention score layer.
pub fn init_params(cfg: &NgnConfig) -> Result<NgnParams, NgnError> {
    cfg.validate()?;
    let w = cfg.width;
    let s = cfg.init_scale;
    let g = if cfg.use_global { w } else { 0 };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let embed_edge = Linear::draw(&mut rng, cfg.distance_basis.count, w, s);
    let embed_node = Linear::draw(&mut rng, NODE_FEATURE_COUNT, w, s);
    let mut blocks = Vec::with_capacity(cfg.t);
    for _ in 0..cfg.t {
        let edge = Mlp::draw(&mut rng, 3 * w + g, w, cfg.mlp_depth_edge, s);
        let nested = (0..cfg.t_lg)
            .map(|_| NestedBlockParams {
                edge: Mlp::draw(&mut rng, cfg.angle_basis.count + 2 * w, w, cfg.mlp_depth_edge, s),
                node: Mlp::draw(&mut rng, w, w, cfg.mlp_depth_node, s),
            })
            .collect();
        let node = Mlp::draw(&mut rng, w + g, w, cfg.mlp_depth_node, s);
        let gate = (cfg.node_update == NodeUpdate::Gated).then(|| Linear::draw(&mut rng, 2 * w, w, s));
        let global = cfg
            .use_global
            .then(|| Mlp::draw(&mut rng, 3 * w, w, cfg.mlp_depth_global, s));
        blocks.push(BlockParams {
            edge,
            nested,
            node,
            gate,
            global,
        });
    }
    let output = Linear::draw(&mut rng, w, 1, s);
    let attention = Linear::draw(&mut rng, w, 1, s);
    Ok(NgnParams {
        embed_edge,
        embed_node,
        blocks,
        output,
        attention,
    })
}

/// Final features of a forward pass.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSet {
    pub x_e: DMatrix<f64>,
    pub x_v: DMatrix<f64>,
    pub x_g: DVector<f64>,
    /// Angle basis features, one row per line-graph edge (empty if unnested).
    pub x_angle: DMatrix<f64>,
}

/// Rows `idx` of each part (or all rows when `None`), side by side.
fn concat_rows(parts: &[(&DMatrix<f64>, Option<&[usize]>)], n_rows: usize) -> DMatrix<f64> {
    let n_cols = parts.iter().map(|(m, _)| m.ncols()).sum();
    let mut out = DMatrix::zeros(n_rows, n_cols);
    let mut c0 = 0;
    for (m, idx) in parts {
        for c in 0..m.ncols() {
            for r in 0..n_rows {
                let src = idx.map_or(r, |ix| ix[r]);
                out[(r, c0 + c)] = m[(src, c)];
            }
        }
        c0 += m.ncols();
    }
    out
}

fn broadcast(v: &DVector<f64>, n_rows: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n_rows, v.len(), |_, c| v[c])
}

/// Per-receiver sum (or mean) of message rows, in message order.
fn aggregate(messages: &DMatrix<f64>, receivers: &[usize], n: usize, mode: EdgeAggregation) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(n, messages.ncols());
    let mut count = vec![0usize; n];
    for (k, &r) in receivers.iter().enumerate() {
        count[r] += 1;
        for c in 0..messages.ncols() {
            out[(r, c)] += messages[(k, c)];
        }
    }
    if mode == EdgeAggregation::Mean {
        for (r, &k) in count.iter().enumerate() {
            if k > 0 {
                for c in 0..out.ncols() {
                    out[(r, c)] /= k as f64;
                }
            }
        }
    }
    out
}

fn all_finite(ms: &[&DMatrix<f64>]) -> bool {
    ms.iter().all(|m| m.iter().all(|v| v.is_finite()))
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

/// Embedding and processing blocks; everything before the readout.
pub fn trunk(
    graph: &CrystalGraph,
    line_graph: Option<&LineGraph>,
    cfg: &NgnConfig,
    params: &NgnParams,
) -> Result<FeatureSet, NgnError> {
    cfg.validate()?;
    let (n, m) = (graph.n_nodes(), graph.n_edges());
    let act = cfg.activation;
    let lg = if cfg.t_lg > 0 {
        let lg = line_graph.ok_or(NgnError::MissingLineGraph)?;
        if lg.n_nodes() != m {
            return Err(NgnError::LineGraphMismatch {
                expected: m,
                found: lg.n_nodes(),
            });
        }
        if lg.order != 1 {
            return Err(NgnError::MissingAngles(lg.order));
        }
        Some(lg)
    } else {
        None
    };

    let src: Vec<usize> = graph.edges.iter().map(|e| e.src).collect();
    let dst: Vec<usize> = graph.edges.iter().map(|e| e.dst).collect();

    let dist = DMatrix::from_fn(m, cfg.distance_basis.count, |r, c| {
        let d = graph.edges[r].distance - cfg.distance_basis.center(c);
        (-d * d / (2.0 * cfg.distance_basis.width * cfg.distance_basis.width)).exp()
    });
    let mut node_in = DMatrix::zeros(n, NODE_FEATURE_COUNT);
    for (v, node) in graph.nodes.iter().enumerate() {
        if node.features.len() != NODE_FEATURE_COUNT {
            return Err(NgnError::BadNodeFeatures {
                node: v,
                found: node.features.len(),
                expected: NODE_FEATURE_COUNT,
            });
        }
        for (c, &f) in node.features.iter().enumerate() {
            node_in[(v, c)] = f;
        }
    }
    let mut x_e = params.embed_edge.forward(&dist);
    x_e.apply(|v| *v = act.apply(*v));
    let mut x_v = params.embed_node.forward(&node_in);
    x_v.apply(|v| *v = act.apply(*v));
    let mut x_g = DVector::zeros(cfg.width);

    let (x_angle, lg_a, lg_b) = match lg {
        Some(lg) => {
            let angles: Vec<f64> = lg
                .edges
                .iter()
                .map(|e| e.angle.ok_or(NgnError::MissingAngles(lg.order)))
                .collect::<Result<_, _>>()?;
            let basis = &cfg.angle_basis;
            let xa = DMatrix::from_fn(angles.len(), basis.count, |r, c| {
                let d = angles[r] - basis.center(c);
                (-d * d / (2.0 * basis.width * basis.width)).exp()
            });
            let a: Vec<usize> = lg.edges.iter().map(|e| e.a).collect();
            let b: Vec<usize> = lg.edges.iter().map(|e| e.b).collect();
            (xa, a, b)
        }
        None => (DMatrix::zeros(0, cfg.angle_basis.count), vec![], vec![]),
    };
    if !all_finite(&[&x_e, &x_v]) {
        return Err(NgnError::NonFiniteActivation(0));
    }

    // Edge multiplicities for the global edge mean: an edge into node d
    // stands for m_d unit-cell edges.
    let mult = graph.multiplicities();
    let edge_mult: Vec<usize> = dst.iter().map(|&d| mult[d]).collect();

    for (t, block) in params.blocks.iter().enumerate() {
        let g_rows_e;
        let mut parts: Vec<(&DMatrix<f64>, Option<&[usize]>)> =
            vec![(&x_e, None), (&x_v, Some(&dst)), (&x_v, Some(&src))];
        if cfg.use_global {
            g_rows_e = broadcast(&x_g, m);
            parts.push((&g_rows_e, None));
        }
        let mut new_e = block.edge.forward(&concat_rows(&parts, m), act);

        for nested in &block.nested {
            let msg_in = concat_rows(
                &[(&x_angle, None), (&new_e, Some(&lg_b)), (&new_e, Some(&lg_a))],
                lg_b.len(),
            );
            let msg = nested.edge.forward(&msg_in, act);
            let agg = aggregate(&msg, &lg_b, m, cfg.edge_agg);
            new_e += nested.node.forward(&agg, act);
        }

        let agg = aggregate(&new_e, &dst, n, cfg.edge_agg);
        let node_in = if cfg.use_global {
            concat_rows(&[(&agg, None), (&broadcast(&x_g, n), None)], n)
        } else {
            agg
        };
        let h = block.node.forward(&node_in, act);
        let new_v = match (&block.gate, cfg.node_update) {
            (Some(gate), NodeUpdate::Gated) => {
                let mut z = gate.forward(&concat_rows(&[(&x_v, None), (&h, None)], n));
                z.apply(|v| *v = 1.0 / (1.0 + (-*v).exp()));
                &x_v + z.component_mul(&(&h - &x_v))
            }
            _ => &x_v + h,
        };

        if let Some(global) = &block.global {
            let node_mean = asu_readout(&rows(&new_v), &mult, ReadoutMode::Mean, None)?;
            let edge_mean = if m == 0 {
                vec![0.0; cfg.width]
            } else {
                asu_readout(&rows(&new_e), &edge_mult, ReadoutMode::Mean, None)?
            };
            let mut g_in = DMatrix::zeros(1, 3 * cfg.width);
            for c in 0..cfg.width {
                g_in[(0, c)] = x_g[c];
                g_in[(0, cfg.width + c)] = node_mean[c];
                g_in[(0, 2 * cfg.width + c)] = edge_mean[c];
            }
            let out = global.forward(&g_in, act);
            x_g = DVector::from_iterator(cfg.width, out.row(0).iter().copied());
        }

        x_e = new_e;
        x_v = new_v;
        if !all_finite(&[&x_e, &x_v]) || !x_g.iter().all(|v| v.is_finite()) {
            return Err(NgnError::NonFiniteActivation(t + 1));
        }
    }
    Ok(FeatureSet {
        x_e,
        x_v,
        x_g,
        x_angle,
    })
}

/// Graph-level prediction from trunk features. Multiplicities of the graph
/// enter through the corrected readout, so unit-cell and asymmetric-unit
/// graphs give the same value.
pub fn readout(
    graph: &CrystalGraph,
    features: &FeatureSet,
    mode: ReadoutMode,
    params: &NgnParams,
) -> Result<f64, NgnError> {
    let node_rows = rows(&features.x_v);
    let scores: Option<Vec<f64>> = (mode == ReadoutMode::Attention).then(|| {
        params
            .attention
            .forward(&features.x_v)
            .column(0)
            .iter()
            .copied()
            .collect()
    });
    let pooled = asu_readout(&node_rows, &graph.multiplicities(), mode, scores.as_deref())?;
    let pooled = DMatrix::from_row_slice(1, pooled.len(), &pooled);
    let y = params.output.forward(&pooled)[(0, 0)];
    if !y.is_finite() {
        return Err(NgnError::NonFiniteActivation(params.blocks.len() + 1));
    }
    Ok(y)
}

/// Full forward pass with the configured readout.
pub fn forward(
    graph: &CrystalGraph,
    line_graph: Option<&LineGraph>,
    cfg: &NgnConfig,
    params: &NgnParams,
) -> Result<(f64, FeatureSet), NgnError> {
    let features = trunk(graph, line_graph, cfg, params)?;
    let y = readout(graph, &features, cfg.readout, params)?;
    Ok((y, features))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_unit_graph;
    use crate::line_graph::{line_graph, LineGraphVariant};
    use crate::neighbors::knn_edges;
    use crate::structure::{AtomSite, CrystalStructure, Lattice};

    fn small() -> NgnConfig {
        NgnConfig {
            width: 8,
            t: 2,
            ..NgnConfig::cogn()
        }
    }

    fn sc_graph() -> CrystalGraph {
        let s = CrystalStructure::new(Lattice::cubic(3.0), vec![AtomSite::new(84, [0.0; 3])], "sc")
            .unwrap();
        build_unit_graph(&s, knn_edges(&s, 6, 1e-9).unwrap()).unwrap()
    }

    #[test]
    fn gauss_basis_examples() {
        let cfg = GaussBasisConfig::distance_default();
        assert_eq!(gauss_basis(0.0, &cfg)[0], 1.0);
        let g = gauss_basis(cfg.center(7), &cfg);
        assert_eq!(g[7], 1.0);
        assert!((g[6] - g[8]).abs() < 1e-12);
    }

    #[test]
    fn params_are_seeded() {
        let a = init_params(&small()).unwrap();
        let b = init_params(&small()).unwrap();
        assert_eq!(a.checksum(), b.checksum());
        let c = init_params(&NgnConfig { seed: 1, ..small() }).unwrap();
        assert_ne!(a.checksum(), c.checksum());
    }

    #[test]
    fn readout_mode_does_not_move_params() {
        let a = init_params(&small()).unwrap();
        let b = init_params(&NgnConfig {
            readout: ReadoutMode::Attention,
            ..small()
        })
        .unwrap();
        assert_eq!(a.checksum(), b.checksum());
    }

    #[test]
    fn zero_network_returns_output_bias() {
        let cfg = NgnConfig {
            init_scale: 0.0,
            activation: Activation::Identity,
            ..small()
        };
        let p = init_params(&cfg).unwrap();
        let (y, _) = forward(&sc_graph(), None, &cfg, &p).unwrap();
        assert_eq!(y, p.output.bias[0]);
    }

    #[test]
    fn nesting_needs_line_graph() {
        let cfg = NgnConfig { t_lg: 1, ..small() };
        let p = init_params(&cfg).unwrap();
        let g = sc_graph();
        assert_eq!(forward(&g, None, &cfg, &p).unwrap_err(), NgnError::MissingLineGraph);
        let lg = line_graph(&g, LineGraphVariant::Destination, false).unwrap();
        let (y, fs) = forward(&g, Some(&lg), &cfg, &p).unwrap();
        assert!(y.is_finite());
        assert_eq!(fs.x_angle.nrows(), 30);
    }

    #[test]
    fn config_json_round_trip() {
        let cfg = NgnConfig::congn();
        let json = serde_json::to_string(&cfg).unwrap();
        assert!(json.contains("\"T\":5") && json.contains("\"T_lg\":2"));
        let back: NgnConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cfg);
        let partial: NgnConfig = serde_json::from_str(r#"{"T": 3, "readout": "sum"}"#).unwrap();
        assert_eq!((partial.t, partial.readout, partial.width), (3, ReadoutMode::Sum, 128));
        assert!(serde_json::from_str::<NgnConfig>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn gated_update_runs() {
        let cfg = NgnConfig {
            node_update: NodeUpdate::Gated,
            use_global: true,
            edge_agg: EdgeAggregation::Mean,
            ..small()
        };
        let p = init_params(&cfg).unwrap();
        assert!(forward(&sc_graph(), None, &cfg, &p).unwrap().0.is_finite());
    }
}
