//! Periodic Voronoi cells by iterative half-space cutting.
//!
//! Each cell starts as a cube around its atom that is larger than any
//! possible cell, then gets clipped by the perpendicular bisector planes of
//! periodic neighbour images in order of distance. An image at distance `d`
//! can only cut the cell if some vertex is farther than `d/2` from the atom,
//! so once every image within twice the cell's circumradius has been applied
//! the cell is exact.

use nalgebra::Vector3;
use rayon::prelude::*;
use thiserror::Error;

use crate::neighbors::{sort_edges, CellList, PeriodicEdge};
use crate::structure::CrystalStructure;

pub const DEFAULT_AREA_EPSILON: f64 = 1e-7;

/// Vertices within this distance of a plane count as lying on it, Å.
const PLANE_TOLERANCE: f64 = 1e-9;
const VERTEX_DEDUP: f64 = 1e-9;
const MAX_ROUNDS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VoronoiError {
    #[error("structure has no sites")]
    EmptyStructure,
    #[error("Voronoi cell of site {0} did not close")]
    DegenerateCell(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct VoronoiFace {
    pub neighbor: usize,
    pub offset: [i32; 3],
    /// Ridge area, Å².
    pub area: f64,
    /// Cartesian ridge centroid, Å.
    pub centroid: Vector3<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VoronoiCell {
    pub owner: usize,
    /// Faces above the area threshold, sorted by neighbour distance.
    pub faces: Vec<VoronoiFace>,
    /// Volume, Å³.
    pub volume: f64,
    /// Cartesian vertices, Å.
    pub vertices: Vec<Vector3<f64>>,
}

#[derive(Debug, Clone)]
struct Face {
    /// `None` for faces of the initial bounding cube.
    key: Option<(usize, [i32; 3], f64)>,
    /// Plane offset along the outward unit normal, owner atom at the origin.
    dist: f64,
    verts: Vec<Vector3<f64>>,
}

impl Face {
    fn area_and_centroid(&self) -> (f64, Vector3<f64>) {
        let v0 = self.verts[0];
        let mut area = 0.0;
        let mut weighted = Vector3::zeros();
        for w in self.verts[1..].windows(2) {
            let tri = (w[0] - v0).cross(&(w[1] - v0)).norm() * 0.5;
            area += tri;
            weighted += (v0 + w[0] + w[1]) * (tri / 3.0);
        }
        let centroid = if area > 0.0 {
            weighted / area
        } else {
            self.verts.iter().sum::<Vector3<f64>>() / self.verts.len() as f64
        };
        (area, centroid)
    }
}

/// A convex polyhedron as a list of planar faces.
#[derive(Debug, Clone)]
struct Polyhedron {
    faces: Vec<Face>,
}

impl Polyhedron {
    fn cube(half: f64) -> Self {
        let mut faces = Vec::with_capacity(6);
        for axis in 0..3 {
            for sign in [-1.0, 1.0] {
                let mut normal = Vector3::zeros();
                normal[axis] = sign;
                let (u, v) = ((axis + 1) % 3, (axis + 2) % 3);
                let corner = |a: f64, b: f64| {
                    let mut p = normal * half;
                    p[u] = a * half;
                    p[v] = b * half;
                    p
                };
                let mut verts = vec![
                    corner(-1.0, -1.0),
                    corner(1.0, -1.0),
                    corner(1.0, 1.0),
                    corner(-1.0, 1.0),
                ];
                if sign < 0.0 {
                    verts.reverse();
                }
                faces.push(Face {
                    key: None,
                    dist: half,
                    verts,
                });
            }
        }
        Polyhedron { faces }
    }

    fn circumradius(&self) -> f64 {
        self.faces
            .iter()
            .flat_map(|f| f.verts.iter())
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    /// Clips by `normal · x <= dist`. Returns false when nothing was cut.
    fn clip(&mut self, normal: Vector3<f64>, dist: f64, key: (usize, [i32; 3], f64)) -> bool {
        let side = |v: &Vector3<f64>| normal.dot(v) - dist;
        let cuts = self
            .faces
            .iter()
            .any(|f| f.verts.iter().any(|v| side(v) > PLANE_TOLERANCE));
        if !cuts {
            return false;
        }
        let mut on_plane: Vec<Vector3<f64>> = Vec::new();
        let mut kept = Vec::with_capacity(self.faces.len() + 1);
        for face in self.faces.drain(..) {
            let n = face.verts.len();
            let mut out: Vec<Vector3<f64>> = Vec::with_capacity(n + 1);
            for k in 0..n {
                let a = face.verts[k];
                let b = face.verts[(k + 1) % n];
                let (sa, sb) = (side(&a), side(&b));
                if sa <= PLANE_TOLERANCE {
                    out.push(a);
                    if sa >= -PLANE_TOLERANCE {
                        on_plane.push(a);
                    }
                }
                if (sa < -PLANE_TOLERANCE && sb > PLANE_TOLERANCE)
                    || (sa > PLANE_TOLERANCE && sb < -PLANE_TOLERANCE)
                {
                    let p = a + (b - a) * (sa / (sa - sb));
                    out.push(p);
                    on_plane.push(p);
                }
            }
            dedup_ring(&mut out);
            if out.len() >= 3 {
                kept.push(Face { verts: out, ..face });
            }
        }
        self.faces = kept;
        dedup_points(&mut on_plane);
        if on_plane.len() >= 3 {
            order_around(&mut on_plane, &normal);
            self.faces.push(Face {
                key: Some(key),
                dist,
                verts: on_plane,
            });
        }
        true
    }
}

fn dedup_ring(points: &mut Vec<Vector3<f64>>) {
    let mut out: Vec<Vector3<f64>> = Vec::with_capacity(points.len());
    for p in points.drain(..) {
        if out.last().is_none_or(|q| (p - q).norm() > VERTEX_DEDUP) {
            out.push(p);
        }
    }
    while out.len() > 1 && (out[0] - out[out.len() - 1]).norm() <= VERTEX_DEDUP {
        out.pop();
    }
    *points = out;
}

fn dedup_points(points: &mut Vec<Vector3<f64>>) {
    let mut out: Vec<Vector3<f64>> = Vec::with_capacity(points.len());
    for p in points.drain(..) {
        if !out.iter().any(|q| (p - q).norm() <= VERTEX_DEDUP) {
            out.push(p);
        }
    }
    *points = out;
}

/// Sorts coplanar points counter-clockwise around their mean, seen from `normal`.
fn order_around(points: &mut [Vector3<f64>], normal: &Vector3<f64>) {
    let centre = points.iter().sum::<Vector3<f64>>() / points.len() as f64;
    let helper = if normal.x.abs() < 0.9 {
        Vector3::x()
    } else {
        Vector3::y()
    };
    let u = normal.cross(&helper).normalize();
    let v = normal.cross(&u);
    points.sort_by(|a, b| {
        let (da, db) = (a - centre, b - centre);
        let ta = da.dot(&v).atan2(da.dot(&u));
        let tb = db.dot(&v).atan2(db.dot(&u));
        ta.total_cmp(&tb)
    });
}

fn build_cell(
    structure: &CrystalStructure,
    cells: &CellList,
    owner: usize,
    area_epsilon: f64,
) -> Result<VoronoiCell, VoronoiError> {
    let lattice = &structure.lattice;
    let half: f64 = (0..3).map(|k| lattice.vector(k).norm()).sum();
    let mut poly = Polyhedron::cube(half);
    let typical = (lattice.volume() / structure.len() as f64).cbrt();
    let mut done = 0.0;
    let mut cutoff = 2.5 * typical;
    let mut closed = false;
    for _ in 0..MAX_ROUNDS {
        let candidates = cells.incoming_within(structure, owner, cutoff);
        for cand in candidates.iter().filter(|c| c.distance > done) {
            if cand.distance * 0.5 > poly.circumradius() + PLANE_TOLERANCE {
                break;
            }
            let normal = cand.vector / cand.distance;
            poly.clip(normal, cand.distance * 0.5, (cand.src, cand.offset, cand.distance));
        }
        done = cutoff;
        let reach = 2.0 * poly.circumradius() + PLANE_TOLERANCE;
        if reach <= cutoff {
            closed = true;
            break;
        }
        cutoff = reach.max(cutoff * 1.5);
    }
    if !closed || poly.faces.iter().any(|f| f.key.is_none()) {
        return Err(VoronoiError::DegenerateCell(owner));
    }

    let origin = structure.cart(owner);
    let mut volume = 0.0;
    let mut faces = Vec::with_capacity(poly.faces.len());
    let mut keyed: Vec<(f64, VoronoiFace)> = Vec::new();
    for face in &poly.faces {
        let (area, centroid) = face.area_and_centroid();
        volume += area * face.dist / 3.0;
        let (neighbor, offset, distance) = face.key.expect("checked above");
        if area > area_epsilon {
            keyed.push((
                distance,
                VoronoiFace {
                    neighbor,
                    offset,
                    area,
                    centroid: centroid + origin,
                },
            ));
        }
    }
    keyed.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then(a.1.neighbor.cmp(&b.1.neighbor))
            .then(a.1.offset.cmp(&b.1.offset))
    });
    faces.extend(keyed.into_iter().map(|(_, f)| f));

    let mut vertices: Vec<Vector3<f64>> = poly
        .faces
        .iter()
        .flat_map(|f| f.verts.iter().copied())
        .collect();
    dedup_points(&mut vertices);
    Ok(VoronoiCell {
        owner,
        faces,
        volume,
        vertices: vertices.into_iter().map(|v| v + origin).collect(),
    })
}

/// Voronoi cell of every site, in site order.
pub fn voronoi_cells(
    structure: &CrystalStructure,
    area_epsilon: f64,
) -> Result<Vec<VoronoiCell>, VoronoiError> {
    if structure.is_empty() {
        return Err(VoronoiError::EmptyStructure);
    }
    let typical = (structure.lattice.volume() / structure.len() as f64).cbrt();
    let cells = CellList::new(structure, 2.5 * typical);
    (0..structure.len())
        .into_par_iter()
        .map(|owner| build_cell(structure, &cells, owner, area_epsilon))
        .collect()
}

/// One incoming edge per face; the edge set is symmetric.
pub fn voronoi_edges(
    structure: &CrystalStructure,
    include_ridge_area: bool,
    area_epsilon: f64,
) -> Result<Vec<PeriodicEdge>, VoronoiError> {
    let cells = voronoi_cells(structure, area_epsilon)?;
    let mut edges = Vec::new();
    for cell in &cells {
        for face in &cell.faces {
            let mut e = PeriodicEdge::new(structure, face.neighbor, cell.owner, face.offset);
            if include_ridge_area {
                e.ridge_area = Some(face.area);
            }
            edges.push(e);
        }
    }
    sort_edges(&mut edges);
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{AtomSite, Lattice};
    use approx::assert_relative_eq;

    fn cubic(a: f64, sites: &[[f64; 3]]) -> CrystalStructure {
        CrystalStructure::new(
            Lattice::cubic(a),
            sites.iter().map(|&f| AtomSite::new(26, f)).collect(),
            "c",
        )
        .unwrap()
    }

    #[test]
    fn simple_cubic_cell_is_a_cube() {
        let cells = voronoi_cells(&cubic(3.0, &[[0.0; 3]]), DEFAULT_AREA_EPSILON).unwrap();
        let c = &cells[0];
        assert_eq!(c.faces.len(), 6);
        for f in &c.faces {
            assert_relative_eq!(f.area, 9.0, epsilon = 1e-9);
        }
        assert_relative_eq!(c.volume, 27.0, epsilon = 1e-9);
        assert_eq!(c.vertices.len(), 8);
    }

    #[test]
    fn fcc_rhombic_dodecahedron() {
        let s = cubic(4.0, &[[0.0; 3], [0.5, 0.5, 0.0], [0.5, 0.0, 0.5], [0.0, 0.5, 0.5]]);
        for c in voronoi_cells(&s, DEFAULT_AREA_EPSILON).unwrap() {
            assert_eq!(c.faces.len(), 12);
            assert_relative_eq!(c.volume, 16.0, max_relative = 1e-10);
            assert_eq!(c.vertices.len(), 14);
        }
    }

    #[test]
    fn bcc_truncated_octahedron() {
        let s = cubic(4.0, &[[0.0; 3], [0.5, 0.5, 0.5]]);
        for c in voronoi_cells(&s, DEFAULT_AREA_EPSILON).unwrap() {
            assert_eq!(c.faces.len(), 14);
            assert_relative_eq!(c.volume, 32.0, max_relative = 1e-10);
            let hexagons = c.faces.iter().filter(|f| f.area > 5.0).count();
            assert_eq!(hexagons, 8);
        }
    }

    #[test]
    fn edges_carry_ridge_areas() {
        let s = cubic(3.0, &[[0.0; 3]]);
        let edges = voronoi_edges(&s, true, DEFAULT_AREA_EPSILON).unwrap();
        assert_eq!(edges.len(), 6);
        assert!(edges.iter().all(|e| (e.ridge_area.unwrap() - 9.0).abs() < 1e-9));
        let bare = voronoi_edges(&s, false, DEFAULT_AREA_EPSILON).unwrap();
        assert!(bare.iter().all(|e| e.ridge_area.is_none()));
    }
}
