//! Corpus statistics: degree/distance histograms, connectivity sweeps and
//! asymmetric-unit reduction factors. Everything here is deterministic in
//! input order.

use rayon::prelude::*;
use serde::Serialize;

use crate::graph::{build_asu_graph, build_unit_graph};
use crate::line_graph::{line_graph, LineGraphVariant};
use crate::pipeline::{orbits, EdgeSelection, LoadedStructure, PipelineError, Processed, SymmetrySource};

/// Degree histograms use unit bins starting at 0.
pub const DEGREE_BIN_WIDTH: f64 = 1.0;
/// Distance histograms cover [0, 12] Å in 0.1 Å bins.
pub const DISTANCE_BIN_WIDTH: f64 = 0.1;
pub const DISTANCE_MAX: f64 = 12.0;
/// Corpus-average node reduction quoted for MatBench; reported only.
pub const MATBENCH_REDUCTION_FACTOR: f64 = 2.1;

/// Fixed-width histogram. Bin `i` covers `[lo + i·w, lo + (i+1)·w)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub lo: f64,
    pub bin_width: f64,
    /// `None` grows the bin list as needed.
    pub hi: Option<f64>,
    pub counts: Vec<u64>,
    pub underflow: u64,
    pub overflow: u64,
}

impl Histogram {
    pub fn bounded(lo: f64, hi: f64, bin_width: f64) -> Self {
        let n = ((hi - lo) / bin_width).round() as usize;
        Histogram {
            lo,
            bin_width,
            hi: Some(hi),
            counts: vec![0; n],
            underflow: 0,
            overflow: 0,
        }
    }

    pub fn growing(lo: f64, bin_width: f64) -> Self {
        Histogram {
            lo,
            bin_width,
            hi: None,
            counts: Vec::new(),
            underflow: 0,
            overflow: 0,
        }
    }

    pub fn degree() -> Self {
        Self::growing(0.0, DEGREE_BIN_WIDTH)
    }

    pub fn distance() -> Self {
        Self::bounded(0.0, DISTANCE_MAX, DISTANCE_BIN_WIDTH)
    }

    pub fn add(&mut self, x: f64) {
        let pos = ((x - self.lo) / self.bin_width).floor();
        if pos < 0.0 {
            self.underflow += 1;
            return;
        }
        let i = pos as usize;
        match self.hi {
            Some(_) if i >= self.counts.len() => self.overflow += 1,
            _ => {
                if i >= self.counts.len() {
                    self.counts.resize(i + 1, 0);
                }
                self.counts[i] += 1;
            }
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.underflow + self.overflow
    }

    pub fn edges(&self) -> Vec<f64> {
        (0..=self.counts.len()).map(|i| self.lo + i as f64 * self.bin_width).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphStats {
    pub id: String,
    pub n_nodes: usize,
    pub n_edges: usize,
    pub avg_degree: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_lg_edges: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusStats {
    pub graphs: Vec<GraphStats>,
    pub mean_nodes: f64,
    pub mean_edges: f64,
    pub mean_avg_degree: f64,
    /// One count per graph.
    pub node_count_histogram: Histogram,
    /// One count per graph (edge-to-node ratio).
    pub avg_degree_histogram: Histogram,
    /// One count per node (in-degree).
    pub degree_histogram: Histogram,
    /// One count per edge.
    pub distance_histogram: Histogram,
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (mut s, mut n) = (0.0, 0usize);
    for x in xs {
        s += x;
        n += 1;
    }
    if n == 0 {
        0.0
    } else {
        s / n as f64
    }
}

fn std_dev(xs: &[f64]) -> f64 {
    let m = mean(xs.iter().copied());
    mean(xs.iter().map(|x| (x - m) * (x - m))).sqrt()
}

pub fn graph_stats(p: &Processed) -> GraphStats {
    let g = &p.graph;
    GraphStats {
        id: g.id.clone(),
        n_nodes: g.n_nodes(),
        n_edges: g.n_edges(),
        avg_degree: if g.n_nodes() == 0 { 0.0 } else { g.n_edges() as f64 / g.n_nodes() as f64 },
        n_lg_edges: p.line_graph.as_ref().map(|lg| lg.n_edges()),
    }
}

pub fn corpus_stats(processed: &[Processed]) -> CorpusStats {
    let graphs: Vec<GraphStats> = processed.iter().map(graph_stats).collect();
    let mut node_count_histogram = Histogram::growing(0.0, 1.0);
    let mut avg_degree_histogram = Histogram::degree();
    let mut degree_histogram = Histogram::degree();
    let mut distance_histogram = Histogram::distance();
    for (p, s) in processed.iter().zip(&graphs) {
        node_count_histogram.add(s.n_nodes as f64);
        avg_degree_histogram.add(s.avg_degree);
        for d in p.graph.in_degrees() {
            degree_histogram.add(d as f64);
        }
        for e in &p.graph.edges {
            distance_histogram.add(e.distance);
        }
    }
    CorpusStats {
        mean_nodes: mean(graphs.iter().map(|g| g.n_nodes as f64)),
        mean_edges: mean(graphs.iter().map(|g| g.n_edges as f64)),
        mean_avg_degree: mean(graphs.iter().map(|g| g.avg_degree)),
        graphs,
        node_count_histogram,
        avg_degree_histogram,
        degree_histogram,
        distance_histogram,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub method: String,
    pub param: Option<f64>,
    pub n_structures: usize,
    pub n_failed: usize,
    pub mean_avg_degree: f64,
    pub std_avg_degree: f64,
    pub min_avg_degree: f64,
    pub max_avg_degree: f64,
}

/// Average-degree statistics of every structure under every edge selection.
pub fn sweep_connectivity(structures: &[LoadedStructure], grid: &[EdgeSelection]) -> Vec<SweepRow> {
    grid.iter()
        .map(|sel| {
            let degrees: Vec<Option<f64>> = structures
                .par_iter()
                .map(|l| {
                    sel.edges(&l.structure)
                        .ok()
                        .map(|e| e.len() as f64 / l.structure.len() as f64)
                })
                .collect();
            let ok: Vec<f64> = degrees.iter().flatten().copied().collect();
            SweepRow {
                method: sel.method().to_string(),
                param: sel.param(),
                n_structures: ok.len(),
                n_failed: degrees.len() - ok.len(),
                mean_avg_degree: mean(ok.iter().copied()),
                std_avg_degree: std_dev(&ok),
                min_avg_degree: if ok.is_empty() { 0.0 } else { ok.iter().copied().fold(f64::INFINITY, f64::min) },
                max_avg_degree: ok.iter().copied().fold(0.0, f64::max),
            }
        })
        .collect()
}

pub fn sweep_to_csv(rows: &[SweepRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "method",
        "param",
        "n_structures",
        "n_failed",
        "mean_avg_degree",
        "std_avg_degree",
        "min_avg_degree",
        "max_avg_degree",
    ])
    .expect("in-memory write");
    for r in rows {
        w.write_record([
            r.method.clone(),
            r.param.map(|p| p.to_string()).unwrap_or_default(),
            r.n_structures.to_string(),
            r.n_failed.to_string(),
            r.mean_avg_degree.to_string(),
            r.std_avg_degree.to_string(),
            r.min_avg_degree.to_string(),
            r.max_avg_degree.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionRow {
    pub id: String,
    pub n_unit: usize,
    pub n_asu: usize,
    pub m_unit: usize,
    pub m_asu: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lg_unit: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lg_asu: Option<usize>,
    pub factor_n: f64,
    pub factor_m: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor_lg: Option<f64>,
    pub symmetry_fallback: bool,
    /// Node factor more than two standard deviations above the corpus mean.
    pub outlier: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionReport {
    pub rows: Vec<ReductionRow>,
    pub errors: Vec<(String, String)>,
    pub mean_factor_n: f64,
    pub mean_factor_m: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_factor_lg: Option<f64>,
    pub matbench_reference_factor: f64,
}

fn ratio(unit: usize, asu: usize) -> f64 {
    if asu == 0 {
        1.0
    } else {
        unit as f64 / asu as f64
    }
}

fn reduction_row(
    l: &LoadedStructure,
    edges: &EdgeSelection,
    variant: Option<LineGraphVariant>,
    symmetry: SymmetrySource,
    symprec: f64,
) -> Result<ReductionRow, PipelineError> {
    let e = edges.edges(&l.structure)?;
    let (orbit_map, fallback) = orbits(l, symmetry, symprec)?;
    let asu = build_asu_graph(&l.structure, &e, &orbit_map)?;
    let unit = build_unit_graph(&l.structure, e)?;
    let (lg_unit, lg_asu) = match variant {
        Some(v) => (
            Some(line_graph(&unit, v, false)?.n_edges()),
            Some(line_graph(&asu, v, false)?.n_edges()),
        ),
        None => (None, None),
    };
    Ok(ReductionRow {
        id: l.structure.id.clone(),
        n_unit: unit.n_nodes(),
        n_asu: asu.n_nodes(),
        m_unit: unit.n_edges(),
        m_asu: asu.n_edges(),
        lg_unit,
        lg_asu,
        factor_n: ratio(unit.n_nodes(), asu.n_nodes()),
        factor_m: ratio(unit.n_edges(), asu.n_edges()),
        factor_lg: lg_unit.zip(lg_asu).map(|(u, a)| ratio(u, a)),
        symmetry_fallback: fallback,
        outlier: false,
    })
}

/// Unit-cell vs asymmetric-unit sizes for every structure.
pub fn asu_reduction_report(
    structures: &[LoadedStructure],
    edges: &EdgeSelection,
    variant: Option<LineGraphVariant>,
    symmetry: SymmetrySource,
    symprec: f64,
) -> ReductionReport {
    let results: Vec<Result<ReductionRow, PipelineError>> = structures
        .par_iter()
        .map(|l| reduction_row(l, edges, variant, symmetry, symprec))
        .collect();
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for (l, r) in structures.iter().zip(results) {
        match r {
            Ok(row) => rows.push(row),
            Err(e) => errors.push((l.structure.id.clone(), e.to_string())),
        }
    }
    let factors: Vec<f64> = rows.iter().map(|r| r.factor_n).collect();
    let (m, s) = (mean(factors.iter().copied()), std_dev(&factors));
    for r in &mut rows {
        r.outlier = s > 0.0 && r.factor_n > m + 2.0 * s;
    }
    let mean_factor_lg = if variant.is_some() && !rows.is_empty() {
        Some(mean(rows.iter().filter_map(|r| r.factor_lg)))
    } else {
        None
    };
    ReductionReport {
        mean_factor_n: m,
        mean_factor_m: mean(rows.iter().map(|r| r.factor_m)),
        mean_factor_lg,
        rows,
        errors,
        matbench_reference_factor: MATBENCH_REDUCTION_FACTOR,
    }
}
