//! Space-group operations, detection from geometry, and atom orbits.
//!
//! An operation acts on fractional column vectors as `f' = W·f + t` with an
//! integer matrix `W`. Detection enumerates every `W` with entries in
//! `{-1, 0, 1}` on a reduced basis that preserves the metric tensor, then
//! pairs each with the translations that carry one atom of the rarest species
//! onto its peers, keeping the combinations that permute every site.

use nalgebra::{Matrix3, Vector3};
use std::collections::VecDeque;
use thiserror::Error;

use crate::structure::{wrap_frac, CrystalStructure, Lattice};

pub const DEFAULT_SYMPREC: f64 = 1e-5;

/// Upper bound on the size of a crystallographic group in a conventional cell.
pub const MAX_OPS: usize = 192;

/// Largest point group order of a crystal.
pub const MAX_POINT_GROUP_ORDER: usize = 48;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymmetryError {
    #[error("lattice reduction did not converge")]
    ReductionFailure,
    #[error("operation {op} does not map site {site} onto a site of the same species")]
    InconsistentOps { op: usize, site: usize },
    #[error("operation list must contain the identity")]
    MissingIdentity,
    #[error("cannot parse symmetry operation '{0}'")]
    InvalidOperation(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryOp {
    /// Integer rotation part in the fractional basis.
    pub rotation: Matrix3<i32>,
    /// Translation part, wrapped into `[0, 1)`.
    pub translation: Vector3<f64>,
}

impl SymmetryOp {
    pub fn identity() -> Self {
        SymmetryOp {
            rotation: Matrix3::identity(),
            translation: Vector3::zeros(),
        }
    }

    pub fn new(rotation: Matrix3<i32>, translation: Vector3<f64>) -> Self {
        SymmetryOp {
            rotation,
            translation: wrap_frac(&translation),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rotation == Matrix3::identity() && self.translation == Vector3::zeros()
    }

    pub fn rotation_f64(&self) -> Matrix3<f64> {
        self.rotation.map(|x| x as f64)
    }

    pub fn apply(&self, frac: &Vector3<f64>) -> Vector3<f64> {
        self.rotation_f64() * frac + self.translation
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SymmetryOp) -> SymmetryOp {
        SymmetryOp::new(
            self.rotation * other.rotation,
            self.rotation_f64() * other.translation + self.translation,
        )
    }

    pub fn determinant(&self) -> i32 {
        let r = &self.rotation;
        r[(0, 0)] * (r[(1, 1)] * r[(2, 2)] - r[(1, 2)] * r[(2, 1)])
            - r[(0, 1)] * (r[(1, 0)] * r[(2, 2)] - r[(1, 2)] * r[(2, 0)])
            + r[(0, 2)] * (r[(1, 0)] * r[(2, 1)] - r[(1, 1)] * r[(2, 0)])
    }

    /// Equal rotations and translations equal modulo 1 within `tol`.
    pub fn approx_eq(&self, other: &SymmetryOp, tol: f64) -> bool {
        self.rotation == other.rotation
            && (0..3).all(|k| {
                let d = self.translation[k] - other.translation[k];
                (d - d.round()).abs() <= tol
            })
    }

    /// The same operation as a cartesian rotation for `lattice`.
    pub fn cartesian_rotation(&self, lattice: &Lattice) -> Matrix3<f64> {
        let bt = lattice.basis().transpose();
        let inv = bt.try_inverse().expect("lattice is invertible");
        bt * self.rotation_f64() * inv
    }

    /// Whether `WᵀGW = G` within a relative tolerance.
    pub fn preserves_metric(&self, metric: &Matrix3<f64>, tol: f64) -> bool {
        metric_preserved(&self.rotation, metric, tol)
    }

    /// Where each site lands: `perm[i] = j` if the operation carries site `i`
    /// onto site `j` of the same species (within `symprec`, modulo the
    /// lattice). `Err(i)` names the first site with no partner.
    pub fn site_permutation(
        &self,
        structure: &CrystalStructure,
        symprec: f64,
    ) -> Result<Vec<usize>, usize> {
        let sites = structure.sites();
        let mut perm = vec![usize::MAX; sites.len()];
        let mut taken = vec![false; sites.len()];
        for (i, site) in sites.iter().enumerate() {
            let image = self.apply(&site.frac);
            let hit = sites.iter().enumerate().find(|(j, other)| {
                !taken[*j] && other.species == site.species && frac_close(&image, &other.frac, symprec)
            });
            match hit {
                Some((j, _)) => {
                    perm[i] = j;
                    taken[j] = true;
                }
                None => return Err(i),
            }
        }
        Ok(perm)
    }

    /// Parses a Jones-faithful string such as `-y,x-y,z+1/3`.
    pub fn from_xyz(text: &str) -> Result<Self, SymmetryError> {
        let bad = || SymmetryError::InvalidOperation(text.to_string());
        let parts: Vec<&str> = text.trim().split(',').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let mut rotation = Matrix3::zeros();
        let mut translation = Vector3::zeros();
        for (row, part) in parts.iter().enumerate() {
            let (coeffs, constant) = parse_affine(part).ok_or_else(bad)?;
            for col in 0..3 {
                let c = coeffs[col];
                if (c - c.round()).abs() > 1e-9 {
                    return Err(bad());
                }
                rotation[(row, col)] = c.round() as i32;
            }
            translation[row] = constant;
        }
        let op = SymmetryOp::new(rotation, translation);
        if op.determinant().abs() != 1 {
            return Err(bad());
        }
        Ok(op)
    }

    pub fn to_xyz(&self) -> String {
        let names = ['x', 'y', 'z'];
        let rows: Vec<String> = (0..3)
            .map(|row| {
                let mut s = String::new();
                for col in 0..3 {
                    let c = self.rotation[(row, col)];
                    if c == 0 {
                        continue;
                    }
                    if c < 0 {
                        s.push('-');
                    } else if !s.is_empty() {
                        s.push('+');
                    }
                    if c.abs() != 1 {
                        s.push_str(&c.abs().to_string());
                    }
                    s.push(names[col]);
                }
                let t = self.translation[row];
                if t != 0.0 {
                    s.push('+');
                    s.push_str(&format_fraction(t));
                }
                s
            })
            .collect();
        rows.join(",")
    }
}

fn format_fraction(t: f64) -> String {
    for den in [2, 3, 4, 6, 8, 12] {
        let num = t * den as f64;
        if (num - num.round()).abs() < 1e-9 {
            return format!("{}/{}", num.round() as i64, den);
        }
    }
    format!("{t}")
}

/// Parses one component like `x-y+1/2` into `([cx, cy, cz], constant)`.
fn parse_affine(text: &str) -> Option<([f64; 3], f64)> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let mut coeffs = [0.0; 3];
    let mut constant = 0.0;
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = 1.0;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -1.0;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.' || bytes[i] == b'/') {
            i += 1;
        }
        let number = if i > start {
            Some(parse_rational(&s[start..i])?)
        } else {
            None
        };
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let var = if i < bytes.len() {
            match bytes[i].to_ascii_lowercase() {
                b'x' => Some(0),
                b'y' => Some(1),
                b'z' => Some(2),
                _ => None,
            }
        } else {
            None
        };
        match (number, var) {
            (n, Some(v)) => {
                coeffs[v] += sign * n.unwrap_or(1.0);
                i += 1;
            }
            (Some(n), None) => constant += sign * n,
            (None, None) => return None,
        }
        if i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            return None;
        }
    }
    Some((coeffs, constant))
}

fn parse_rational(text: &str) -> Option<f64> {
    match text.split_once('/') {
        Some((n, d)) => {
            let d: f64 = d.parse().ok()?;
            if d == 0.0 {
                return None;
            }
            Some(n.parse::<f64>().ok()? / d)
        }
        None => text.parse().ok(),
    }
}

fn frac_close(a: &Vector3<f64>, b: &Vector3<f64>, tol: f64) -> bool {
    (0..3).all(|k| {
        let d = a[k] - b[k];
        (d - d.round()).abs() <= tol
    })
}

fn metric_preserved(w: &Matrix3<i32>, metric: &Matrix3<f64>, tol: f64) -> bool {
    let wf = w.map(|x| x as f64);
    let rotated = wf.transpose() * metric * wf;
    (0..3).all(|i| {
        (0..3).all(|j| {
            let scale = (metric[(i, i)] * metric[(j, j)]).sqrt();
            (rotated[(i, j)] - metric[(i, j)]).abs() <= tol * scale
        })
    })
}

/// Greedy Minkowski-style reduction. Returns the unimodular `P` (det +1)
/// whose rows express the reduced lattice vectors in the input basis.
pub fn reduce_basis(lattice: &Lattice) -> Result<Matrix3<i32>, SymmetryError> {
    let mut p: [[i64; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let mut b: [Vector3<f64>; 3] = [lattice.vector(0), lattice.vector(1), lattice.vector(2)];
    let shrink = 1.0 - 1e-10;
    let mut converged = false;
    for _ in 0..1000 {
        let mut changed = false;
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let mut best = b[i];
            let mut best_coef = (0i64, 0i64);
            for cj in -1i64..=1 {
                for ck in -1i64..=1 {
                    if cj == 0 && ck == 0 {
                        continue;
                    }
                    let cand = b[i] + b[j] * cj as f64 + b[k] * ck as f64;
                    if cand.norm_squared() < best.norm_squared() * shrink {
                        best = cand;
                        best_coef = (cj, ck);
                    }
                }
            }
            // Large coefficients: pairwise size reduction.
            for &(other, slot) in &[(j, 0), (k, 1)] {
                let mu = (b[i].dot(&b[other]) / b[other].norm_squared()).round() as i64;
                if mu.abs() > 1 {
                    let cand = b[i] - b[other] * mu as f64;
                    if cand.norm_squared() < best.norm_squared() * shrink {
                        best = cand;
                        best_coef = if slot == 0 { (-mu, 0) } else { (0, -mu) };
                    }
                }
            }
            if best_coef != (0, 0) {
                b[i] = best;
                for c in 0..3 {
                    p[i][c] += best_coef.0 * p[j][c] + best_coef.1 * p[k][c];
                }
                changed = true;
            }
        }
        if !changed {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(SymmetryError::ReductionFailure);
    }
    let mut order = [0usize, 1, 2];
    order.sort_by(|&x, &y| b[x].norm_squared().total_cmp(&b[y].norm_squared()).then(x.cmp(&y)));
    let mut m = Matrix3::<i32>::zeros();
    for (row, &src) in order.iter().enumerate() {
        for c in 0..3 {
            m[(row, c)] = p[src][c] as i32;
        }
    }
    let det = SymmetryOp::new(m, Vector3::zeros()).determinant();
    if det == -1 {
        for c in 0..3 {
            m[(2, c)] = -m[(2, c)];
        }
    } else if det != 1 {
        return Err(SymmetryError::ReductionFailure);
    }
    Ok(m)
}

/// Integer 3×3 inverse of a unimodular matrix.
fn unimodular_inverse(m: &Matrix3<i32>) -> Matrix3<i32> {
    let inv = m.map(|x| x as f64).try_inverse().expect("unimodular");
    inv.map(|x| x.round() as i32)
}

/// All lattice point operations: integer matrices (in the input basis) that
/// preserve the metric, found with entries in `{-1,0,1}` on the reduced cell.
pub fn lattice_point_ops(lattice: &Lattice, symprec: f64) -> Result<Vec<Matrix3<i32>>, SymmetryError> {
    let p = reduce_basis(lattice)?;
    let reduced = Lattice::new(p.map(|x| x as f64) * lattice.basis())
        .map_err(|_| SymmetryError::ReductionFailure)?;
    let metric = reduced.metric();
    let tol = metric_tolerance(symprec);
    let pt = p.transpose();
    let pt_inv = unimodular_inverse(&pt);
    let mut out = Vec::new();
    let mut entries = [0i32; 9];
    for code in 0..3usize.pow(9) {
        let mut c = code;
        for e in entries.iter_mut() {
            *e = (c % 3) as i32 - 1;
            c /= 3;
        }
        let w = Matrix3::from_row_slice(&entries);
        let det = SymmetryOp::new(w, Vector3::zeros()).determinant();
        if det.abs() != 1 || !metric_preserved(&w, &metric, tol) {
            continue;
        }
        out.push(pt * w * pt_inv);
    }
    Ok(out)
}

fn metric_tolerance(symprec: f64) -> f64 {
    (4.0 * symprec).max(1e-12)
}

/// Detects the operations that map the structure onto itself.
///
/// The identity is always first; the rest are sorted by rotation entries and
/// then translation. The result is closed under composition (up to
/// [`MAX_OPS`] operations).
pub fn find_symmetry_ops(
    structure: &CrystalStructure,
    symprec: f64,
) -> Result<Vec<SymmetryOp>, SymmetryError> {
    if structure.is_empty() {
        return Ok(vec![SymmetryOp::identity()]);
    }
    let rotations = lattice_point_ops(&structure.lattice, symprec)?;
    let sites = structure.sites();

    let mut counts = std::collections::BTreeMap::new();
    for s in sites {
        *counts.entry(s.species).or_insert(0usize) += 1;
    }
    let rare = counts
        .iter()
        .min_by_key(|(z, n)| (**n, **z))
        .map(|(z, _)| *z)
        .expect("non-empty");
    let anchor = sites.iter().position(|s| s.species == rare).unwrap();

    let mut ops: Vec<SymmetryOp> = Vec::new();
    for w in &rotations {
        let wf = w.map(|x| x as f64);
        let moved = wf * sites[anchor].frac;
        for target in sites.iter().filter(|s| s.species == rare) {
            let op = SymmetryOp::new(*w, target.frac - moved);
            if op.site_permutation(structure, symprec).is_ok()
                && !ops.iter().any(|o| o.approx_eq(&op, symprec))
            {
                ops.push(op);
            }
        }
    }
    if !ops.iter().any(|o| o.rotation == Matrix3::identity()) {
        ops.push(SymmetryOp::identity());
    }
    close_group(&mut ops, structure, symprec);
    sort_ops(&mut ops);
    Ok(ops)
}

/// Like [`find_symmetry_ops`] but falls back to the identity when the cell
/// reduction fails. The flag reports whether the fallback was used.
pub fn find_symmetry_ops_or_identity(structure: &CrystalStructure, symprec: f64) -> (Vec<SymmetryOp>, bool) {
    match find_symmetry_ops(structure, symprec) {
        Ok(ops) => (ops, false),
        Err(_) => (vec![SymmetryOp::identity()], true),
    }
}

fn close_group(ops: &mut Vec<SymmetryOp>, structure: &CrystalStructure, symprec: f64) {
    let mut i = 0;
    while i < ops.len() && ops.len() < MAX_OPS {
        let mut j = 0;
        while j <= i && ops.len() < MAX_OPS {
            for prod in [ops[i].compose(&ops[j]), ops[j].compose(&ops[i])] {
                if !ops.iter().any(|o| o.approx_eq(&prod, symprec))
                    && prod.site_permutation(structure, 2.0 * symprec).is_ok()
                    && ops.len() < MAX_OPS
                {
                    ops.push(prod);
                }
            }
            j += 1;
        }
        i += 1;
    }
}

fn sort_ops(ops: &mut [SymmetryOp]) {
    ops.sort_by(|a, b| {
        b.is_identity()
            .cmp(&a.is_identity())
            .then_with(|| a.rotation.as_slice().cmp(b.rotation.as_slice()))
            .then_with(|| {
                (0..3)
                    .map(|k| a.translation[k].total_cmp(&b.translation[k]))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
    });
}

/// Partition of the sites into symmetry orbits.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitMap {
    /// Smallest site index of each site's orbit.
    pub representative: Vec<usize>,
    /// Orbit size of each site (equal across an orbit).
    pub orbit_size: Vec<usize>,
    /// For each site, an operation carrying it onto its representative.
    pub op_to_rep: Vec<SymmetryOp>,
}

impl OrbitMap {
    /// Every site its own orbit.
    pub fn trivial(n: usize) -> Self {
        OrbitMap {
            representative: (0..n).collect(),
            orbit_size: vec![1; n],
            op_to_rep: vec![SymmetryOp::identity(); n],
        }
    }

    pub fn representatives(&self) -> Vec<usize> {
        (0..self.representative.len())
            .filter(|&i| self.representative[i] == i)
            .collect()
    }

    /// Multiplicities in representative order.
    pub fn multiplicities(&self) -> Vec<usize> {
        self.representatives()
            .into_iter()
            .map(|r| self.orbit_size[r])
            .collect()
    }

    pub fn n_orbits(&self) -> usize {
        self.representatives().len()
    }
}

/// Groups sites into orbits under `ops` (which must contain the identity).
pub fn compute_orbits(
    structure: &CrystalStructure,
    ops: &[SymmetryOp],
    symprec: f64,
) -> Result<OrbitMap, SymmetryError> {
    if !ops.iter().any(|o| o.approx_eq(&SymmetryOp::identity(), symprec)) {
        return Err(SymmetryError::MissingIdentity);
    }
    let n = structure.len();
    let mut perms = Vec::with_capacity(ops.len());
    for (k, op) in ops.iter().enumerate() {
        let perm = op
            .site_permutation(structure, symprec)
            .map_err(|site| SymmetryError::InconsistentOps { op: k, site })?;
        perms.push(perm);
    }

    let mut representative = vec![usize::MAX; n];
    let mut orbit_size = vec![0; n];
    let mut op_to_rep = vec![SymmetryOp::identity(); n];
    for start in 0..n {
        if representative[start] != usize::MAX {
            continue;
        }
        // Breadth-first from the smallest unvisited index; `reach[i]` maps start -> i.
        let mut reach: Vec<Option<SymmetryOp>> = vec![None; n];
        reach[start] = Some(SymmetryOp::identity());
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let base = reach[i].clone().unwrap();
            for (k, perm) in perms.iter().enumerate() {
                let j = perm[i];
                if reach[j].is_none() {
                    reach[j] = Some(ops[k].compose(&base));
                    members.push(j);
                    queue.push_back(j);
                }
            }
        }
        for &m in &members {
            representative[m] = start;
            orbit_size[m] = members.len();
            // Prefer a listed operation that sends m straight to the representative.
            op_to_rep[m] = match perms.iter().position(|p| p[m] == start) {
                Some(k) => ops[k].clone(),
                None => invert(reach[m].as_ref().unwrap()),
            };
        }
    }
    Ok(OrbitMap {
        representative,
        orbit_size,
        op_to_rep,
    })
}

fn invert(op: &SymmetryOp) -> SymmetryOp {
    let inv = unimodular_inverse(&op.rotation);
    let t = -(inv.map(|x| x as f64) * op.translation);
    SymmetryOp::new(inv, t)
}

/// Expands an asymmetric set of fractional positions by `ops`, merging
/// images closer than `min_distance` Å. Returns `(species, frac)` pairs, or
/// `Err((a, b))` when two images of different species overlap.
pub fn expand_sites(
    lattice: &Lattice,
    sites: &[(u8, Vector3<f64>)],
    ops: &[SymmetryOp],
    min_distance: f64,
) -> Result<Vec<(u8, Vector3<f64>)>, (u8, u8)> {
    let mut out: Vec<(u8, Vector3<f64>)> = Vec::new();
    for (z, frac) in sites {
        for op in ops {
            let image = wrap_frac(&op.apply(frac));
            let clash = out.iter().find(|(_, f)| {
                let mut d = image - f;
                d.iter_mut().for_each(|x| *x -= x.round());
                lattice.frac_to_cart(&d).norm() < min_distance
            });
            match clash {
                Some((other, _)) if other == z => {}
                Some((other, _)) => return Err((*z, *other)),
                None => out.push((*z, image)),
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::AtomSite;

    fn structure(a: f64, sites: &[(u8, [f64; 3])]) -> CrystalStructure {
        CrystalStructure::new(
            Lattice::cubic(a),
            sites.iter().map(|&(z, f)| AtomSite::new(z, f)).collect(),
            "t",
        )
        .unwrap()
    }

    fn nacl() -> CrystalStructure {
        let mut s = Vec::new();
        for f in [[0.0, 0.0, 0.0], [0.5, 0.5, 0.0], [0.5, 0.0, 0.5], [0.0, 0.5, 0.5]] {
            s.push((11, f));
        }
        for f in [[0.5, 0.0, 0.0], [0.0, 0.5, 0.0], [0.0, 0.0, 0.5], [0.5, 0.5, 0.5]] {
            s.push((17, f));
        }
        structure(5.64, &s)
    }

    #[test]
    fn parse_jones_strings() {
        let id = SymmetryOp::from_xyz("x,y,z").unwrap();
        assert!(id.is_identity());
        let op = SymmetryOp::from_xyz("-y,x-y,z+1/3").unwrap();
        assert_eq!(op.rotation, Matrix3::new(0, -1, 0, 1, -1, 0, 0, 0, 1));
        assert!((op.translation - Vector3::new(0.0, 0.0, 1.0 / 3.0)).norm() < 1e-15);
        let op = SymmetryOp::from_xyz(" 1/2+X , -Y+0.5, -z ").unwrap();
        assert_eq!(op.rotation, Matrix3::new(1, 0, 0, 0, -1, 0, 0, 0, -1));
        assert_eq!(op.translation, Vector3::new(0.5, 0.5, 0.0));
        assert!(SymmetryOp::from_xyz("x,y").is_err());
        assert!(SymmetryOp::from_xyz("x,x,z").is_err());
        assert!(SymmetryOp::from_xyz("x,y,q").is_err());
        assert!(SymmetryOp::from_xyz("0.5x,y,z").is_err());
        let back = SymmetryOp::from_xyz(&op.to_xyz()).unwrap();
        assert!(back.approx_eq(&op, 1e-12));
    }

    #[test]
    fn simple_cubic_has_full_point_group() {
        let ops = find_symmetry_ops(&structure(3.0, &[(84, [0.0; 3])]), DEFAULT_SYMPREC).unwrap();
        assert_eq!(ops.len(), 48);
        assert!(ops[0].is_identity());
        assert!(ops.iter().all(|o| o.translation == Vector3::zeros()));
    }

    #[test]
    fn nacl_has_192_ops() {
        let s = nacl();
        let ops = find_symmetry_ops(&s, DEFAULT_SYMPREC).unwrap();
        assert_eq!(ops.len(), 192);
        let pure = ops.iter().filter(|o| o.rotation == Matrix3::identity()).count();
        let mut rots: Vec<_> = ops.iter().map(|o| o.rotation).collect();
        rots.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
        rots.dedup();
        assert_eq!(pure, 4);
        assert_eq!(rots.len() * pure, ops.len());
        let orbits = compute_orbits(&s, &ops, DEFAULT_SYMPREC).unwrap();
        assert_eq!(orbits.representatives(), vec![0, 4]);
        assert_eq!(orbits.multiplicities(), vec![4, 4]);
        for i in 0..s.len() {
            let perm = orbits.op_to_rep[i].site_permutation(&s, DEFAULT_SYMPREC).unwrap();
            assert_eq!(perm[i], orbits.representative[i]);
        }
    }

    #[test]
    fn identity_only_orbits_are_trivial() {
        let s = nacl();
        let o = compute_orbits(&s, &[SymmetryOp::identity()], DEFAULT_SYMPREC).unwrap();
        assert_eq!(o, OrbitMap::trivial(8));
    }

    #[test]
    fn mirror_pair_merges() {
        // Two atoms related by z -> -z in a tetragonal cell.
        let s = CrystalStructure::new(
            Lattice::from_parameters(3.0, 3.0, 7.0, 90.0, 90.0, 90.0).unwrap(),
            vec![
                AtomSite::new(16, [0.0, 0.0, 0.2]),
                AtomSite::new(16, [0.0, 0.0, 0.8]),
                AtomSite::new(42, [0.5, 0.5, 0.0]),
            ],
            "mirror",
        )
        .unwrap();
        let mirror = SymmetryOp::from_xyz("x,y,-z").unwrap();
        let o = compute_orbits(&s, &[SymmetryOp::identity(), mirror], DEFAULT_SYMPREC).unwrap();
        assert_eq!(o.representatives(), vec![0, 2]);
        assert_eq!(o.multiplicities(), vec![2, 1]);
    }

    #[test]
    fn wrong_species_is_inconsistent() {
        let s = structure(4.0, &[(11, [0.0; 3]), (17, [0.5, 0.0, 0.0])]);
        let shift = SymmetryOp::from_xyz("x+1/2,y,z").unwrap();
        assert!(matches!(
            compute_orbits(&s, &[SymmetryOp::identity(), shift], DEFAULT_SYMPREC),
            Err(SymmetryError::InconsistentOps { op: 1, site: 0 })
        ));
        assert_eq!(
            compute_orbits(&s, &[shift_only()], DEFAULT_SYMPREC),
            Err(SymmetryError::MissingIdentity)
        );
    }

    fn shift_only() -> SymmetryOp {
        SymmetryOp::from_xyz("x+1/2,y,z").unwrap()
    }

    #[test]
    fn reduction_is_unimodular_and_shortens() {
        let l = Lattice::from_rows([[3.0, 0.0, 0.0], [6.0, 3.0, 0.0], [-6.0, 3.0, 3.0]]).unwrap();
        let p = reduce_basis(&l).unwrap();
        assert_eq!(SymmetryOp::new(p, Vector3::zeros()).determinant(), 1);
        let reduced = p.map(|x| x as f64) * l.basis();
        for i in 0..3 {
            assert!(reduced.row(i).norm() <= 3.0 + 1e-9);
        }
    }

    #[test]
    fn skewed_cubic_basis_still_finds_48() {
        // Simple cubic described by a sheared basis.
        let l = Lattice::from_rows([[3.0, 0.0, 0.0], [3.0, 3.0, 0.0], [6.0, -3.0, 3.0]]).unwrap();
        let s = CrystalStructure::new(l, vec![AtomSite::new(84, [0.0; 3])], "skew").unwrap();
        let ops = find_symmetry_ops(&s, DEFAULT_SYMPREC).unwrap();
        assert_eq!(ops.len(), 48);
        assert!(ops.iter().any(|o| o.rotation.iter().any(|&x| x.abs() > 1)));
    }
}
