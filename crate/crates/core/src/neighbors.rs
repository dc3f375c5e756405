//! Periodic k-nearest-neighbour and radius edge selection.
//!
//! Searches go through a fractional-coordinate cell list: the unit cell is
//! split into bins along each lattice axis and a query visits every
//! (bin, lattice shift) pair that can hold an image within the cutoff. Along
//! axis `a` an image can only be within `r` if its fractional offset is at
//! most `r / h_a`, where `h_a` is the interplanar spacing, which keeps the
//! scan exact for arbitrarily skewed cells.

use nalgebra::Vector3;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::structure::CrystalStructure;

pub const DEFAULT_K: usize = 24;
pub const DEFAULT_RADIUS: f64 = 5.0;
pub const DEFAULT_TIE_EPSILON: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NeighborError {
    #[error("structure has no sites")]
    EmptyStructure,
    #[error("invalid neighbour configuration: {0}")]
    InvalidConfig(String),
}

/// A directed edge from an image of `src` into `dst`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicEdge {
    pub src: usize,
    pub dst: usize,
    /// Lattice shift of the source image.
    pub offset: [i32; 3],
    /// Cartesian vector from the destination atom to the source image, Å.
    pub vector: Vector3<f64>,
    pub distance: f64,
    /// Shared Voronoi ridge area, Å², when requested.
    pub ridge_area: Option<f64>,
    /// Index of the symmetry operation that moved the source into its
    /// representative's frame (asymmetric-unit graphs only).
    pub op: Option<usize>,
}

impl PeriodicEdge {
    pub fn new(structure: &CrystalStructure, src: usize, dst: usize, offset: [i32; 3]) -> Self {
        let vector = structure.image_vector(dst, src, offset);
        PeriodicEdge {
            src,
            dst,
            offset,
            distance: vector.norm(),
            vector,
            ridge_area: None,
            op: None,
        }
    }

    /// Orders incoming edges of one destination: distance, then source, then offset.
    fn sort_key_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.distance
            .total_cmp(&other.distance)
            .then(self.src.cmp(&other.src))
            .then(self.offset.cmp(&other.offset))
    }
}

/// Sorts by destination, then distance, source and offset.
pub fn sort_edges(edges: &mut [PeriodicEdge]) {
    edges.sort_by(|a, b| a.dst.cmp(&b.dst).then_with(|| a.sort_key_cmp(b)));
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NeighborMethod {
    Knn,
    Radius,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeighborConfig {
    pub method: NeighborMethod,
    pub k: usize,
    /// Cutoff radius, Å.
    pub r: f64,
    /// Images within this distance of the k-th neighbour are also kept, Å.
    pub tie_epsilon: f64,
    /// Add the reverse of every kNN edge.
    pub symmetrize: bool,
}

impl Default for NeighborConfig {
    fn default() -> Self {
        NeighborConfig {
            method: NeighborMethod::Knn,
            k: DEFAULT_K,
            r: DEFAULT_RADIUS,
            tie_epsilon: DEFAULT_TIE_EPSILON,
            symmetrize: false,
        }
    }
}

impl NeighborConfig {
    pub fn knn(k: usize) -> Self {
        NeighborConfig {
            k,
            ..Default::default()
        }
    }

    pub fn radius(r: f64) -> Self {
        NeighborConfig {
            method: NeighborMethod::Radius,
            r,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), NeighborError> {
        if !(self.tie_epsilon >= 0.0) {
            return Err(NeighborError::InvalidConfig(
                "tie_epsilon must be >= 0".into(),
            ));
        }
        match self.method {
            NeighborMethod::Knn if self.k == 0 => {
                Err(NeighborError::InvalidConfig("k must be >= 1".into()))
            }
            NeighborMethod::Radius if !(self.r > 0.0 && self.r.is_finite()) => {
                Err(NeighborError::InvalidConfig("r must be > 0".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn edges(&self, structure: &CrystalStructure) -> Result<Vec<PeriodicEdge>, NeighborError> {
        self.validate()?;
        match self.method {
            NeighborMethod::Knn => {
                let edges = knn_edges(structure, self.k, self.tie_epsilon)?;
                Ok(if self.symmetrize {
                    symmetrized(structure, edges)
                } else {
                    edges
                })
            }
            NeighborMethod::Radius => radius_edges(structure, self.r),
        }
    }
}

/// Fractional bins over the unit cell.
pub(crate) struct CellList {
    bins_per_axis: [i64; 3],
    bins: Vec<Vec<usize>>,
    spacings: [f64; 3],
}

impl CellList {
    pub(crate) fn new(structure: &CrystalStructure, bin_size: f64) -> Self {
        let spacings = structure.lattice.interplanar_spacings();
        // Cap the bin count so tiny cutoffs on large cells stay linear in memory.
        let cap = ((2 * structure.len().max(1)) as f64).cbrt().ceil() as i64 + 1;
        let mut bins_per_axis = [1i64; 3];
        for a in 0..3 {
            bins_per_axis[a] = ((spacings[a] / bin_size).floor() as i64).clamp(1, cap);
        }
        let total = (bins_per_axis[0] * bins_per_axis[1] * bins_per_axis[2]) as usize;
        let mut bins = vec![Vec::new(); total];
        let mut list = CellList {
            bins_per_axis,
            bins: Vec::new(),
            spacings,
        };
        for (i, site) in structure.sites().iter().enumerate() {
            let idx = list.flat(list.bin_of(&site.frac));
            bins[idx].push(i);
        }
        list.bins = bins;
        list
    }

    fn bin_of(&self, frac: &Vector3<f64>) -> [i64; 3] {
        let mut b = [0i64; 3];
        for a in 0..3 {
            let nb = self.bins_per_axis[a];
            b[a] = ((frac[a] * nb as f64).floor() as i64).clamp(0, nb - 1);
        }
        b
    }

    fn flat(&self, b: [i64; 3]) -> usize {
        let [_, ny, nz] = self.bins_per_axis;
        ((b[0] * ny + b[1]) * nz + b[2]) as usize
    }

    /// Calls `visit(src, offset)` for every image whose fractional position
    /// may lie within `cutoff` of `frac`. Each image is visited at most once.
    fn for_each_candidate(
        &self,
        frac: &Vector3<f64>,
        cutoff: f64,
        mut visit: impl FnMut(usize, [i32; 3]),
    ) {
        let mut lo = [0i64; 3];
        let mut hi = [0i64; 3];
        for a in 0..3 {
            // Slack so images exactly at the cutoff survive rounding.
            let reach = cutoff / self.spacings[a] * (1.0 + 1e-9) + 1e-12;
            let nb = self.bins_per_axis[a] as f64;
            lo[a] = ((frac[a] - reach) * nb).floor() as i64;
            hi[a] = ((frac[a] + reach) * nb).floor() as i64;
        }
        let nb = self.bins_per_axis;
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                for z in lo[2]..=hi[2] {
                    let virt = [x, y, z];
                    let mut real = [0i64; 3];
                    let mut shift = [0i32; 3];
                    for a in 0..3 {
                        real[a] = virt[a].rem_euclid(nb[a]);
                        shift[a] = virt[a].div_euclid(nb[a]) as i32;
                    }
                    for &src in &self.bins[self.flat(real)] {
                        visit(src, shift);
                    }
                }
            }
        }
    }

    /// All images within `cutoff` of site `dst`, excluding the site itself.
    pub(crate) fn incoming_within(
        &self,
        structure: &CrystalStructure,
        dst: usize,
        cutoff: f64,
    ) -> Vec<PeriodicEdge> {
        let mut out = Vec::new();
        self.for_each_candidate(&structure.sites()[dst].frac, cutoff, |src, offset| {
            if src == dst && offset == [0, 0, 0] {
                return;
            }
            let edge = PeriodicEdge::new(structure, src, dst, offset);
            if edge.distance <= cutoff {
                out.push(edge);
            }
        });
        out.sort_by(PeriodicEdge::sort_key_cmp);
        out
    }
}

/// Every directed image pair within `cutoff` (inclusive), sorted.
pub(crate) fn pairs_within(structure: &CrystalStructure, cutoff: f64) -> Vec<PeriodicEdge> {
    if structure.is_empty() {
        return Vec::new();
    }
    let cells = CellList::new(structure, cutoff);
    (0..structure.len())
        .flat_map(|dst| cells.incoming_within(structure, dst, cutoff))
        .collect()
}

/// Incoming kNN edges: for each destination, the `k` nearest images plus
/// every further image within `tie_epsilon` of the k-th distance.
pub fn knn_edges(
    structure: &CrystalStructure,
    k: usize,
    tie_epsilon: f64,
) -> Result<Vec<PeriodicEdge>, NeighborError> {
    if structure.is_empty() {
        return Err(NeighborError::EmptyStructure);
    }
    if k == 0 {
        return Err(NeighborError::InvalidConfig("k must be >= 1".into()));
    }
    let n = structure.len() as f64;
    // Radius of a sphere expected to hold k atoms at the average density.
    let guess = (3.0 * k as f64 * structure.lattice.volume() / (4.0 * std::f64::consts::PI * n))
        .cbrt()
        * 1.2;
    let cells = CellList::new(structure, guess);
    let per_node: Vec<Vec<PeriodicEdge>> = (0..structure.len())
        .into_par_iter()
        .map(|dst| {
            let mut cutoff = guess;
            loop {
                let found = cells.incoming_within(structure, dst, cutoff);
                if found.len() >= k {
                    let limit = found[k - 1].distance + tie_epsilon;
                    if limit <= cutoff {
                        return found.into_iter().take_while(|e| e.distance <= limit).collect();
                    }
                    cutoff = limit.max(cutoff * 1.25);
                } else {
                    cutoff *= 1.5;
                }
            }
        })
        .collect();
    Ok(per_node.into_iter().flatten().collect())
}

/// All directed edges with `0 < distance <= r`. Symmetric by construction.
pub fn radius_edges(structure: &CrystalStructure, r: f64) -> Result<Vec<PeriodicEdge>, NeighborError> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(NeighborError::InvalidConfig("r must be > 0".into()));
    }
    if structure.is_empty() {
        return Ok(Vec::new());
    }
    let cells = CellList::new(structure, r);
    let per_node: Vec<Vec<PeriodicEdge>> = (0..structure.len())
        .into_par_iter()
        .map(|dst| cells.incoming_within(structure, dst, r))
        .collect();
    Ok(per_node.into_iter().flatten().collect())
}

/// Adds the reverse `(dst -> src, -offset)` of every edge that lacks one.
pub fn symmetrized(structure: &CrystalStructure, mut edges: Vec<PeriodicEdge>) -> Vec<PeriodicEdge> {
    use std::collections::HashSet;
    let present: HashSet<(usize, usize, [i32; 3])> =
        edges.iter().map(|e| (e.src, e.dst, e.offset)).collect();
    let mut extra = Vec::new();
    for e in &edges {
        let rev = [-e.offset[0], -e.offset[1], -e.offset[2]];
        if !present.contains(&(e.dst, e.src, rev)) {
            extra.push(PeriodicEdge::new(structure, e.dst, e.src, rev));
        }
    }
    edges.extend(extra);
    sort_edges(&mut edges);
    edges.dedup_by(|a, b| (a.src, a.dst, a.offset) == (b.src, b.dst, b.offset));
    edges
}

/// Per-node in-degree.
pub fn in_degrees(n_nodes: usize, edges: &[PeriodicEdge]) -> Vec<usize> {
    let mut deg = vec![0; n_nodes];
    for e in edges {
        deg[e.dst] += 1;
    }
    deg
}
