//! Lattice mathematics, periodic atom sites and supercells.
//!
//! Fractional coordinates are column vectors in the basis of the lattice
//! rows: `cart = f[0]·a + f[1]·b + f[2]·c`.

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::elements;

/// Minimum allowed separation between two distinct sites, in Å.
pub const MIN_SITE_SEPARATION: f64 = 0.01;

/// Values within this distance of an integer snap to it when wrapping.
const WRAP_SNAP: f64 = 1e-12;

/// Two image distances closer than this are considered tied.
const TIE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StructureError {
    #[error("degenerate or left-handed lattice (det = {0})")]
    InvalidLattice(f64),
    #[error("invalid atomic number {0}")]
    InvalidSpecies(u32),
    #[error("non-finite coordinate for site {0}")]
    NonFinite(usize),
    #[error("sites {0} and {1} are only {2:.4} Å apart")]
    OverlappingSites(usize, usize, f64),
    #[error("supercell repetitions must be >= 1, got {0:?}")]
    InvalidRepetitions([u32; 3]),
    #[error("invalid structure JSON: {0}")]
    Json(String),
}

/// Wraps a fractional coordinate into `[0, 1)`.
pub fn wrap_unit(x: f64) -> f64 {
    let mut w = x - x.floor();
    if !(WRAP_SNAP..1.0 - WRAP_SNAP).contains(&w) {
        w = 0.0;
    }
    w
}

pub fn wrap_frac(f: &Vector3<f64>) -> Vector3<f64> {
    Vector3::new(wrap_unit(f.x), wrap_unit(f.y), wrap_unit(f.z))
}

/// Three lattice vectors stored as the rows of `basis`, in Å.
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    basis: Matrix3<f64>,
    /// `(basisᵀ)⁻¹`, maps cartesian column vectors to fractional ones.
    to_frac: Matrix3<f64>,
}

impl Lattice {
    pub fn new(basis: Matrix3<f64>) -> Result<Self, StructureError> {
        let det = basis.determinant();
        if !(det.is_finite() && det > 0.0) {
            return Err(StructureError::InvalidLattice(det));
        }
        let to_frac = basis
            .transpose()
            .try_inverse()
            .ok_or(StructureError::InvalidLattice(det))?;
        Ok(Lattice { basis, to_frac })
    }

    pub fn from_rows(rows: [[f64; 3]; 3]) -> Result<Self, StructureError> {
        Self::new(Matrix3::from_row_slice(&[
            rows[0][0], rows[0][1], rows[0][2], rows[1][0], rows[1][1], rows[1][2], rows[2][0],
            rows[2][1], rows[2][2],
        ]))
    }

    pub fn cubic(a: f64) -> Self {
        Self::new(Matrix3::from_diagonal_element(a)).expect("positive cubic lattice")
    }

    /// Builds a lattice from cell lengths (Å) and angles (degrees) with `a`
    /// along x and `b` in the xy-plane.
    pub fn from_parameters(
        a: f64,
        b: f64,
        c: f64,
        alpha: f64,
        beta: f64,
        gamma: f64,
    ) -> Result<Self, StructureError> {
        let (ca, cb, cg) = (
            alpha.to_radians().cos(),
            beta.to_radians().cos(),
            gamma.to_radians().cos(),
        );
        let sg = gamma.to_radians().sin();
        let cy = (ca - cb * cg) / sg;
        let cz2 = 1.0 - cb * cb - cy * cy;
        if !(cz2 > 0.0) {
            return Err(StructureError::InvalidLattice(0.0));
        }
        Self::from_rows([
            [a, 0.0, 0.0],
            [b * cg, b * sg, 0.0],
            [c * cb, c * cy, c * cz2.sqrt()],
        ])
    }

    pub fn basis(&self) -> &Matrix3<f64> {
        &self.basis
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        let b = &self.basis;
        [
            [b[(0, 0)], b[(0, 1)], b[(0, 2)]],
            [b[(1, 0)], b[(1, 1)], b[(1, 2)]],
            [b[(2, 0)], b[(2, 1)], b[(2, 2)]],
        ]
    }

    pub fn vector(&self, i: usize) -> Vector3<f64> {
        self.basis.row(i).transpose()
    }

    pub fn volume(&self) -> f64 {
        self.basis.determinant()
    }

    /// Metric tensor `G = B·Bᵀ` (dot products of the lattice vectors).
    pub fn metric(&self) -> Matrix3<f64> {
        self.basis * self.basis.transpose()
    }

    pub fn frac_to_cart(&self, frac: &Vector3<f64>) -> Vector3<f64> {
        self.basis.transpose() * frac
    }

    pub fn cart_to_frac(&self, cart: &Vector3<f64>) -> Vector3<f64> {
        self.to_frac * cart
    }

    /// Distances between neighbouring lattice planes along each reciprocal axis.
    pub fn interplanar_spacings(&self) -> [f64; 3] {
        let (a, b, c) = (self.vector(0), self.vector(1), self.vector(2));
        let v = self.volume();
        [
            v / b.cross(&c).norm(),
            v / c.cross(&a).norm(),
            v / a.cross(&b).norm(),
        ]
    }

    /// Number of cells to scan on each side of the home cell along every
    /// axis so that all images within `distance` are covered.
    pub fn search_window(&self, distance: f64) -> [i32; 3] {
        let h = self.interplanar_spacings();
        let h_min = h.iter().cloned().fold(f64::INFINITY, f64::min);
        let n = (distance / h_min).ceil() as i32 + 1;
        [n, n, n]
    }

    /// Applies `basis·R` for an orthonormal `R`; a rigid rotation of the
    /// crystal that keeps fractional coordinates fixed.
    pub fn rotated(&self, rotation: &Matrix3<f64>) -> Result<Self, StructureError> {
        Self::new(self.basis * rotation)
    }
}

/// One atom of the unit cell.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomSite {
    /// Atomic number, 1..=118.
    pub species: u8,
    /// Fractional position wrapped into `[0, 1)`.
    pub frac: Vector3<f64>,
}

impl AtomSite {
    pub fn new(species: u8, frac: [f64; 3]) -> Self {
        AtomSite {
            species,
            frac: wrap_frac(&Vector3::from(frac)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrystalStructure {
    pub lattice: Lattice,
    sites: Vec<AtomSite>,
    /// Source identifier (file stem, database id, ...).
    pub id: String,
}

/// Result of a minimum-image query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinImage {
    pub distance: f64,
    /// Cell offset applied to the second site.
    pub offset: [i32; 3],
}

impl CrystalStructure {
    /// Validates species and site separation, and wraps all coordinates.
    pub fn new(
        lattice: Lattice,
        sites: Vec<AtomSite>,
        id: impl Into<String>,
    ) -> Result<Self, StructureError> {
        let mut wrapped = Vec::with_capacity(sites.len());
        for (i, site) in sites.into_iter().enumerate() {
            if !(1..=elements::MAX_Z).contains(&site.species) {
                return Err(StructureError::InvalidSpecies(site.species as u32));
            }
            if !site.frac.iter().all(|x| x.is_finite()) {
                return Err(StructureError::NonFinite(i));
            }
            wrapped.push(AtomSite {
                species: site.species,
                frac: wrap_frac(&site.frac),
            });
        }
        let structure = CrystalStructure {
            lattice,
            sites: wrapped,
            id: id.into(),
        };
        if let Some((i, j, d)) = structure.closest_distinct_pair(MIN_SITE_SEPARATION) {
            return Err(StructureError::OverlappingSites(i, j, d));
        }
        Ok(structure)
    }

    pub fn sites(&self) -> &[AtomSite] {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn species(&self) -> Vec<u8> {
        self.sites.iter().map(|s| s.species).collect()
    }

    pub fn cart(&self, i: usize) -> Vector3<f64> {
        self.lattice.frac_to_cart(&self.sites[i].frac)
    }

    /// Cartesian vector from site `i` to the image of site `j` shifted by `offset`.
    pub fn image_vector(&self, i: usize, j: usize, offset: [i32; 3]) -> Vector3<f64> {
        // (fj - fi) + n keeps the i/j swap an exact negation in floating point.
        let n = Vector3::new(offset[0] as f64, offset[1] as f64, offset[2] as f64);
        let df = (self.sites[j].frac - self.sites[i].frac) + n;
        self.lattice.frac_to_cart(&df)
    }

    /// Distance from site `i` to the nearest periodic image of site `j`.
    ///
    /// For `i == j` the zero offset is skipped. Ties within 1e-10 Å go to the
    /// lexicographically greatest offset.
    pub fn min_image_distance(&self, i: usize, j: usize) -> MinImage {
        let fi = self.sites[i].frac;
        let fj = self.sites[j].frac;
        // Centre the scan on the wrapped difference; its length bounds the answer.
        let mut df = fj - fi;
        let base = [
            -(df.x.round() as i32),
            -(df.y.round() as i32),
            -(df.z.round() as i32),
        ];
        df += Vector3::new(base[0] as f64, base[1] as f64, base[2] as f64);
        let mut target = self.lattice.frac_to_cart(&df).norm();
        if i == j {
            target = (0..3)
                .map(|k| self.lattice.vector(k).norm())
                .fold(f64::INFINITY, f64::min);
        }
        let w = self.lattice.search_window(target);
        let mut best = MinImage {
            distance: f64::INFINITY,
            offset: [0, 0, 0],
        };
        for a in -w[0]..=w[0] {
            for b in -w[1]..=w[1] {
                for c in -w[2]..=w[2] {
                    let off = [base[0] + a, base[1] + b, base[2] + c];
                    if i == j && off == [0, 0, 0] {
                        continue;
                    }
                    let d = self.image_vector(i, j, off).norm();
                    if d < best.distance - TIE_TOLERANCE
                        || ((d - best.distance).abs() <= TIE_TOLERANCE && off > best.offset)
                    {
                        best = MinImage {
                            distance: d,
                            offset: off,
                        };
                    }
                }
            }
        }
        best
    }

    /// Replicates the cell `reps` times along each axis.
    ///
    /// Sites are ordered cell-major (first axis slowest), original order within a cell.
    pub fn make_supercell(&self, reps: [u32; 3]) -> Result<Self, StructureError> {
        if reps.contains(&0) {
            return Err(StructureError::InvalidRepetitions(reps));
        }
        let mut basis = *self.lattice.basis();
        for (i, &r) in reps.iter().enumerate() {
            let scaled = basis.row(i) * r as f64;
            basis.set_row(i, &scaled);
        }
        let lattice = Lattice::new(basis)?;
        let scale = Vector3::new(reps[0] as f64, reps[1] as f64, reps[2] as f64);
        let mut sites = Vec::with_capacity(self.len() * reps.iter().product::<u32>() as usize);
        for a in 0..reps[0] {
            for b in 0..reps[1] {
                for c in 0..reps[2] {
                    let shift = Vector3::new(a as f64, b as f64, c as f64);
                    for s in &self.sites {
                        sites.push(AtomSite {
                            species: s.species,
                            frac: wrap_frac(&(s.frac + shift).component_div(&scale)),
                        });
                    }
                }
            }
        }
        Ok(CrystalStructure {
            lattice,
            sites,
            id: self.id.clone(),
        })
    }

    /// Same fractional structure on a rigidly rotated basis.
    pub fn rotated(&self, rotation: &Matrix3<f64>) -> Result<Self, StructureError> {
        Ok(CrystalStructure {
            lattice: self.lattice.rotated(rotation)?,
            sites: self.sites.clone(),
            id: self.id.clone(),
        })
    }

    /// Shifts every site by `shift` (fractional) and re-wraps.
    pub fn translated(&self, shift: [f64; 3]) -> Self {
        let s = Vector3::from(shift);
        CrystalStructure {
            lattice: self.lattice.clone(),
            sites: self
                .sites
                .iter()
                .map(|site| AtomSite {
                    species: site.species,
                    frac: wrap_frac(&(site.frac + s)),
                })
                .collect(),
            id: self.id.clone(),
        }
    }

    /// Reorders sites so that new site `k` is old site `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        CrystalStructure {
            lattice: self.lattice.clone(),
            sites: order.iter().map(|&k| self.sites[k].clone()).collect(),
            id: self.id.clone(),
        }
    }

    fn closest_distinct_pair(&self, cutoff: f64) -> Option<(usize, usize, f64)> {
        crate::neighbors::pairs_within(self, cutoff)
            .into_iter()
            .filter(|p| p.src != p.dst)
            .map(|p| (p.src.min(p.dst), p.src.max(p.dst), p.distance))
            .min_by(|a, b| a.2.total_cmp(&b.2).then((a.0, a.1).cmp(&(b.0, b.1))))
    }

    pub fn to_json(&self) -> StructureJson {
        StructureJson {
            lattice: self.lattice.rows(),
            sites: self
                .sites
                .iter()
                .map(|s| SiteJson {
                    z: s.species,
                    frac: [s.frac.x, s.frac.y, s.frac.z],
                })
                .collect(),
        }
    }

    pub fn from_json(doc: &StructureJson, id: impl Into<String>) -> Result<Self, StructureError> {
        let lattice = Lattice::from_rows(doc.lattice)?;
        let sites = doc
            .sites
            .iter()
            .map(|s| AtomSite::new(s.z, s.frac))
            .collect();
        CrystalStructure::new(lattice, sites, id)
    }

    pub fn from_json_str(text: &str, id: impl Into<String>) -> Result<Self, StructureError> {
        let doc: StructureJson =
            serde_json::from_str(text).map_err(|e| StructureError::Json(e.to_string()))?;
        Self::from_json(&doc, id)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("structure serializes")
    }
}

/// On-disk structure format: lattice rows in Å plus fractional sites.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureJson {
    pub lattice: [[f64; 3]; 3],
    pub sites: Vec<SiteJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SiteJson {
    pub z: u8,
    pub frac: [f64; 3],
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn single(a: f64) -> CrystalStructure {
        CrystalStructure::new(Lattice::cubic(a), vec![AtomSite::new(84, [0.0; 3])], "sc").unwrap()
    }

    #[test]
    fn frac_to_cart_examples() {
        let cubic = Lattice::cubic(3.0);
        assert_eq!(
            cubic.frac_to_cart(&Vector3::new(1.0, 0.0, 0.0)),
            Vector3::new(3.0, 0.0, 0.0)
        );
        assert_eq!(cubic.frac_to_cart(&Vector3::zeros()), Vector3::zeros());
        let tri = Lattice::from_rows([[2.0, 0.0, 0.0], [1.0, 2.0, 0.0], [0.0, 1.0, 2.0]]).unwrap();
        let c = tri.frac_to_cart(&Vector3::new(0.5, 0.5, 0.5));
        assert_relative_eq!(c, Vector3::new(1.5, 1.5, 1.0), epsilon = 1e-15);
        let back = tri.cart_to_frac(&c);
        assert_relative_eq!(back, Vector3::new(0.5, 0.5, 0.5), epsilon = 1e-12);
        assert_relative_eq!(tri.volume(), 8.0, max_relative = 1e-12);
    }

    #[test]
    fn rejects_bad_lattices() {
        assert!(Lattice::from_rows([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]).is_err());
        assert!(Lattice::from_rows([[1.0, 0.0, 0.0], [2.0, 0.0, 0.0], [0.0, 0.0, 1.0]]).is_err());
    }

    #[test]
    fn wrapping_snaps_near_one() {
        assert_eq!(wrap_unit(0.9999999999999), 0.0);
        assert_eq!(wrap_unit(-0.25), 0.75);
        assert_eq!(wrap_unit(1.0), 0.0);
        assert_eq!(wrap_unit(-1e-14), 0.0);
    }

    #[test]
    fn self_image_in_simple_cubic() {
        let s = single(3.0);
        let m = s.min_image_distance(0, 0);
        assert_relative_eq!(m.distance, 3.0, epsilon = 1e-12);
        assert_eq!(m.offset, [1, 0, 0]);
    }

    #[test]
    fn body_diagonal_pair() {
        let s = CrystalStructure::new(
            Lattice::cubic(4.0),
            vec![AtomSite::new(11, [0.0; 3]), AtomSite::new(17, [0.5; 3])],
            "cscl",
        )
        .unwrap();
        let m = s.min_image_distance(0, 1);
        assert_relative_eq!(m.distance, 2.0 * 3f64.sqrt(), epsilon = 1e-12);
        // (0,0,0) and its seven corner partners all tie; the greatest is (0,0,0).
        assert_eq!(m.offset, [0, 0, 0]);
    }

    #[test]
    fn overlapping_sites_rejected() {
        let err = CrystalStructure::new(
            Lattice::cubic(4.0),
            vec![AtomSite::new(1, [0.0; 3]), AtomSite::new(1, [0.999, 0.0, 0.0])],
            "bad",
        )
        .unwrap_err();
        assert!(matches!(err, StructureError::OverlappingSites(0, 1, _)));
        assert!(matches!(
            CrystalStructure::new(Lattice::cubic(4.0), vec![AtomSite::new(0, [0.0; 3])], "x"),
            Err(StructureError::InvalidSpecies(0))
        ));
    }

    #[test]
    fn supercell_counts_and_order() {
        let s = single(3.0);
        assert_eq!(s.make_supercell([1, 1, 1]).unwrap(), s);
        let sc = s.make_supercell([2, 1, 1]).unwrap();
        assert_eq!(sc.len(), 2);
        assert_eq!(sc.sites()[0].frac.x, 0.0);
        assert_eq!(sc.sites()[1].frac.x, 0.5);
        assert_relative_eq!(sc.lattice.volume(), 54.0, max_relative = 1e-12);
        assert!(s.make_supercell([0, 1, 1]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = CrystalStructure::new(
            Lattice::from_parameters(3.1, 4.2, 5.3, 80.0, 95.0, 101.0).unwrap(),
            vec![
                AtomSite::new(8, [0.1, 0.2, 0.3]),
                AtomSite::new(26, [0.7, 0.123456789012345, 0.9]),
            ],
            "rt",
        )
        .unwrap();
        let text = s.to_json_string();
        let back = CrystalStructure::from_json_str(&text, "rt").unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_json_string(), text);
    }

    #[test]
    fn lattice_parameters_convention() {
        let l = Lattice::from_parameters(3.0, 4.0, 5.0, 90.0, 90.0, 120.0).unwrap();
        let r = l.rows();
        assert_relative_eq!(r[0][0], 3.0);
        assert_relative_eq!(r[1][0], -2.0, epsilon = 1e-12);
        assert_relative_eq!(r[1][2], 0.0);
        assert_relative_eq!(l.vector(2).norm(), 5.0, epsilon = 1e-12);
    }
}
