//! Structure → graph pipeline shared by the CLI, the statistics and the
//! export driver.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cif::{read_cif, CifError};
use crate::graph::{build_asu_graph, build_unit_graph, CrystalGraph, GraphError};
use crate::line_graph::{line_graph, line_graph_order2, LineGraph, LineGraphError, LineGraphVariant};
use crate::ndjson::GraphRecord;
use crate::neighbors::{NeighborConfig, NeighborError, PeriodicEdge};
use crate::structure::{CrystalStructure, StructureError};
use crate::symmetry::{
    compute_orbits, find_symmetry_ops_or_identity, OrbitMap, SymmetryError, SymmetryOp, DEFAULT_SYMPREC,
};
use crate::voronoi::{voronoi_edges, VoronoiError, DEFAULT_AREA_EPSILON};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{0}: {1}")]
    Io(PathBuf, String),
    #[error("unsupported input extension for {0} (expected .cif or .json)")]
    UnknownFormat(PathBuf),
    #[error(transparent)]
    Cif(#[from] CifError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Neighbors(#[from] NeighborError),
    #[error(transparent)]
    Voronoi(#[from] VoronoiError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    LineGraph(#[from] LineGraphError),
    #[error("--symmetry cif requested but {0} carries no symmetry operations")]
    NoCifOps(String),
}

/// How edges are selected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "lowercase")]
pub enum EdgeSelection {
    Knn {
        k: usize,
        tie_epsilon: f64,
        symmetrize: bool,
    },
    Radius {
        r: f64,
    },
    Voronoi {
        ridge_area: bool,
        area_epsilon: f64,
    },
}

impl Default for EdgeSelection {
    fn default() -> Self {
        let d = NeighborConfig::default();
        EdgeSelection::Knn {
            k: d.k,
            tie_epsilon: d.tie_epsilon,
            symmetrize: false,
        }
    }
}

impl EdgeSelection {
    pub fn knn(k: usize) -> Self {
        EdgeSelection::Knn {
            k,
            tie_epsilon: NeighborConfig::default().tie_epsilon,
            symmetrize: false,
        }
    }

    pub fn radius(r: f64) -> Self {
        EdgeSelection::Radius { r }
    }

    pub fn voronoi() -> Self {
        EdgeSelection::Voronoi {
            ridge_area: false,
            area_epsilon: DEFAULT_AREA_EPSILON,
        }
    }

    pub fn method(&self) -> &'static str {
        match self {
            EdgeSelection::Knn { .. } => "knn",
            EdgeSelection::Radius { .. } => "radius",
            EdgeSelection::Voronoi { .. } => "voronoi",
        }
    }

    /// The swept parameter: k, r, or nothing for Voronoi.
    pub fn param(&self) -> Option<f64> {
        match self {
            EdgeSelection::Knn { k, .. } => Some(*k as f64),
            EdgeSelection::Radius { r } => Some(*r),
            EdgeSelection::Voronoi { .. } => None,
        }
    }

    pub fn edges(&self, structure: &CrystalStructure) -> Result<Vec<PeriodicEdge>, PipelineError> {
        Ok(match *self {
            EdgeSelection::Knn {
                k,
                tie_epsilon,
                symmetrize,
            } => NeighborConfig {
                k,
                tie_epsilon,
                symmetrize,
                ..NeighborConfig::default()
            }
            .edges(structure)?,
            EdgeSelection::Radius { r } => NeighborConfig::radius(r).edges(structure)?,
            EdgeSelection::Voronoi {
                ridge_area,
                area_epsilon,
            } => voronoi_edges(structure, ridge_area, area_epsilon)?,
        })
    }
}

/// Where symmetry operations come from for asymmetric-unit graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetrySource {
    Detect,
    Cif,
    None,
}

impl std::str::FromStr for SymmetrySource {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "detect" => Ok(Self::Detect),
            "cif" => Ok(Self::Cif),
            "none" => Ok(Self::None),
            other => Err(format!("unknown symmetry source `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub edges: EdgeSelection,
    /// Emit the asymmetric-unit graph instead of the unit-cell graph.
    pub asu: bool,
    pub symmetry: SymmetrySource,
    pub symprec: f64,
    pub line_graph: Option<LineGraphVariant>,
    /// 1 or 2.
    pub line_graph_order: u8,
    pub keep_backtrack: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            edges: EdgeSelection::default(),
            asu: false,
            symmetry: SymmetrySource::Detect,
            symprec: DEFAULT_SYMPREC,
            line_graph: None,
            line_graph_order: 1,
            keep_backtrack: false,
        }
    }
}

/// A parsed input with any symmetry operations its file carried.
#[derive(Debug, Clone)]
pub struct LoadedStructure {
    pub structure: CrystalStructure,
    pub file_ops: Vec<SymmetryOp>,
}

/// Id used for a file: its stem.
pub fn structure_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn load_structure(path: &Path) -> Result<LoadedStructure, PipelineError> {
    let text = std::fs::read_to_string(path).map_err(|e| PipelineError::Io(path.to_path_buf(), e.to_string()))?;
    let id = structure_id(path);
    match path.extension().and_then(|e| e.to_str()).map(|e| e.to_ascii_lowercase()) {
        Some(ext) if ext == "cif" => {
            let (structure, ops) = read_cif(&text, &id)?;
            Ok(LoadedStructure {
                structure,
                file_ops: ops,
            })
        }
        Some(ext) if ext == "json" => Ok(LoadedStructure {
            structure: CrystalStructure::from_json_str(&text, id)?,
            file_ops: Vec::new(),
        }),
        _ => Err(PipelineError::UnknownFormat(path.to_path_buf())),
    }
}

/// Every `.cif` / `.json` file directly inside `dir`, sorted by name.
pub fn list_inputs(dir: &Path) -> Result<Vec<PathBuf>, PipelineError> {
    let mut out = Vec::new();
    let entries = std::fs::read_dir(dir).map_err(|e| PipelineError::Io(dir.to_path_buf(), e.to_string()))?;
    for entry in entries {
        let path = entry.map_err(|e| PipelineError::Io(dir.to_path_buf(), e.to_string()))?.path();
        let ext = path.extension().and_then(|e| e.to_str()).map(|e| e.to_ascii_lowercase());
        if path.is_file() && matches!(ext.as_deref(), Some("cif") | Some("json")) {
            out.push(path);
        }
    }
    out.sort();
    Ok(out)
}

/// Symmetry operations for a structure; the flag is set when detection fell
/// back to the identity.
pub fn symmetry_ops(
    loaded: &LoadedStructure,
    source: SymmetrySource,
    symprec: f64,
) -> Result<(Vec<SymmetryOp>, bool), PipelineError> {
    match source {
        SymmetrySource::None => Ok((vec![SymmetryOp::identity()], false)),
        SymmetrySource::Detect => Ok(find_symmetry_ops_or_identity(&loaded.structure, symprec)),
        SymmetrySource::Cif if loaded.file_ops.is_empty() => {
            Err(PipelineError::NoCifOps(loaded.structure.id.clone()))
        }
        SymmetrySource::Cif => Ok((loaded.file_ops.clone(), false)),
    }
}

pub fn orbits(loaded: &LoadedStructure, source: SymmetrySource, symprec: f64) -> Result<(OrbitMap, bool), PipelineError> {
    let (ops, flagged) = symmetry_ops(loaded, source, symprec)?;
    Ok((compute_orbits(&loaded.structure, &ops, symprec)?, flagged))
}

#[derive(Debug, Clone)]
pub struct Processed {
    pub graph: CrystalGraph,
    pub line_graph: Option<LineGraph>,
    /// Symmetry detection fell back to the identity.
    pub symmetry_fallback: bool,
}

impl Processed {
    pub fn record(&self) -> GraphRecord {
        GraphRecord::from_graph(&self.graph, self.line_graph.as_ref())
    }
}

pub fn process(loaded: &LoadedStructure, cfg: &PipelineConfig) -> Result<Processed, PipelineError> {
    let structure = &loaded.structure;
    let edges = cfg.edges.edges(structure)?;
    let (graph, symmetry_fallback) = if cfg.asu {
        let (orbit_map, flagged) = orbits(loaded, cfg.symmetry, cfg.symprec)?;
        (build_asu_graph(structure, &edges, &orbit_map)?, flagged)
    } else {
        (build_unit_graph(structure, edges)?, false)
    };
    let line_graph = match cfg.line_graph {
        None => None,
        Some(variant) => {
            let lg = line_graph(&graph, variant, cfg.keep_backtrack)?;
            Some(if cfg.line_graph_order >= 2 { line_graph_order2(&lg)? } else { lg })
        }
    };
    Ok(Processed {
        graph,
        line_graph,
        symmetry_fallback,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExportError {
    pub file: String,
    pub error: String,
}

#[derive(Debug, Clone, Default)]
pub struct ExportOutput {
    /// One NDJSON line per successful input, in input order.
    pub lines: Vec<String>,
    pub errors: Vec<ExportError>,
}

/// Runs the pipeline over `paths` in parallel; results keep input order.
pub fn export(paths: &[PathBuf], cfg: &PipelineConfig) -> ExportOutput {
    let results: Vec<Result<String, String>> = paths
        .par_iter()
        .map(|p| {
            load_structure(p)
                .and_then(|l| process(&l, cfg))
                .map(|out| out.record().to_line())
                .map_err(|e| e.to_string())
        })
        .collect();
    let mut out = ExportOutput::default();
    for (path, res) in paths.iter().zip(results) {
        match res {
            Ok(line) => out.lines.push(line),
            Err(error) => out.errors.push(ExportError {
                file: path.display().to_string(),
                error,
            }),
        }
    }
    out
}
