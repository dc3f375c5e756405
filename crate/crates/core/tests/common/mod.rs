//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use crystgraph::neighbors::PeriodicEdge;
use crystgraph::symmetry::{expand_sites, SymmetryOp};
use crystgraph::{AtomSite, CrystalStructure, Lattice};
use nalgebra::{Matrix3, Vector3};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/corpus")
}

pub const SPECIES: [u8; 8] = [3, 8, 11, 14, 17, 26, 29, 56];

pub fn cubic(a: f64, sites: &[(u8, [f64; 3])]) -> CrystalStructure {
    CrystalStructure::new(
        Lattice::cubic(a),
        sites.iter().map(|&(z, f)| AtomSite::new(z, f)).collect(),
        "cubic",
    )
    .unwrap()
}

pub fn simple_cubic(a: f64) -> CrystalStructure {
    cubic(a, &[(84, [0.0; 3])])
}

pub fn fcc(a: f64) -> CrystalStructure {
    cubic(
        a,
        &[
            (29, [0.0, 0.0, 0.0]),
            (29, [0.5, 0.5, 0.0]),
            (29, [0.5, 0.0, 0.5]),
            (29, [0.0, 0.5, 0.5]),
        ],
    )
}

pub fn bcc(a: f64) -> CrystalStructure {
    cubic(a, &[(26, [0.0; 3]), (26, [0.5; 3])])
}

pub fn nacl() -> CrystalStructure {
    let mut s = Vec::new();
    for f in [[0.0, 0.0, 0.0], [0.5, 0.5, 0.0], [0.5, 0.0, 0.5], [0.0, 0.5, 0.5]] {
        s.push((11, f));
    }
    for f in [[0.5, 0.0, 0.0], [0.0, 0.5, 0.0], [0.0, 0.0, 0.5], [0.5, 0.5, 0.5]] {
        s.push((17, f));
    }
    cubic(5.64, &s)
}

/// Lengths in `[lo, hi]` Å, angles in 70–110°.
pub fn random_lattice(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Lattice {
    loop {
        let l: Vec<f64> = (0..3).map(|_| rng.gen_range(lo..hi)).collect();
        let a: Vec<f64> = (0..3).map(|_| rng.gen_range(70.0..110.0)).collect();
        if let Ok(lat) = Lattice::from_parameters(l[0], l[1], l[2], a[0], a[1], a[2]) {
            if lat.volume() > 0.3 * l[0] * l[1] * l[2] {
                return lat;
            }
        }
    }
}

fn min_pair_distance(s: &CrystalStructure) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..s.len() {
        for j in 0..s.len() {
            let d = s.min_image_distance(i, j).distance;
            if i != j || s.len() == 1 {
                best = best.min(d);
            }
        }
    }
    best
}

/// `1..=n_max` random atoms in a random cell, no two closer than `min_sep` Å.
pub fn random_structure(rng: &mut ChaCha8Rng, n_max: usize, min_sep: f64) -> CrystalStructure {
    loop {
        let lattice = random_lattice(rng, 3.0, 6.0);
        let n = rng.gen_range(1..=n_max);
        let sites: Vec<AtomSite> = (0..n)
            .map(|_| {
                AtomSite::new(
                    SPECIES[rng.gen_range(0..SPECIES.len())],
                    [rng.gen(), rng.gen(), rng.gen()],
                )
            })
            .collect();
        if let Ok(s) = CrystalStructure::new(lattice, sites, "random") {
            if min_pair_distance(&s) >= min_sep {
                return s;
            }
        }
    }
}

/// Group closure from Jones-symbol generators.
pub fn group(generators: &[&str]) -> Vec<SymmetryOp> {
    let gens: Vec<SymmetryOp> = generators.iter().map(|g| SymmetryOp::from_xyz(g).unwrap()).collect();
    let mut ops = vec![SymmetryOp::identity()];
    let mut i = 0;
    while i < ops.len() {
        for g in &gens {
            let p = g.compose(&ops[i]);
            if !ops.iter().any(|o| o.approx_eq(&p, 1e-9)) {
                ops.push(p);
            }
        }
        i += 1;
    }
    ops
}

pub struct SpaceGroup {
    pub name: &'static str,
    pub generators: &'static [&'static str],
    pub system: char,
}

pub const GROUPS: [SpaceGroup; 8] = [
    SpaceGroup { name: "P-1", generators: &["-x,-y,-z"], system: 'a' },
    SpaceGroup { name: "P2/m", generators: &["-x,y,-z", "-x,-y,-z"], system: 'm' },
    SpaceGroup { name: "P21/c", generators: &["-x,y+1/2,-z+1/2", "-x,-y,-z"], system: 'm' },
    SpaceGroup { name: "Pmmm", generators: &["-x,-y,z", "x,-y,-z", "-x,-y,-z"], system: 'o' },
    SpaceGroup { name: "P4/mmm", generators: &["-y,x,z", "x,-y,-z", "-x,-y,-z"], system: 't' },
    SpaceGroup { name: "P42/mnm", generators: &["-y+1/2,x+1/2,z+1/2", "y,x,-z", "-x,-y,-z"], system: 't' },
    SpaceGroup { name: "P6/mmm", generators: &["x-y,x,z", "y,x,-z", "-x,-y,-z"], system: 'h' },
    SpaceGroup { name: "Pm-3m", generators: &["z,x,y", "-x,-y,z", "y,x,-z", "-x,-y,-z"], system: 'c' },
];

fn lattice_for(rng: &mut ChaCha8Rng, system: char) -> Lattice {
    let mut len = || rng.gen_range(3.5..6.0);
    let (a, b, c) = (len(), len(), len());
    match system {
        'a' => random_lattice(rng, 3.5, 6.0),
        'm' => Lattice::from_parameters(a, b, c, 90.0, rng.gen_range(95.0..115.0), 90.0).unwrap(),
        'o' => Lattice::from_parameters(a, b, c, 90.0, 90.0, 90.0).unwrap(),
        't' => Lattice::from_parameters(a, a, c, 90.0, 90.0, 90.0).unwrap(),
        'h' => Lattice::from_parameters(a, a, c, 90.0, 90.0, 120.0).unwrap(),
        _ => Lattice::cubic(a),
    }
}

/// A random structure generated from a space group: one to three orbits,
/// with coordinates randomly snapped to special values so high-order groups
/// stay small. Cells have at most `max_sites` atoms and no pair closer than
/// 1 Å.
pub struct SymmetricCell {
    pub structure: CrystalStructure,
    pub ops: Vec<SymmetryOp>,
    pub group: &'static str,
    /// Sites produced by each asymmetric site, in site order.
    pub expansion_counts: Vec<usize>,
}

pub fn symmetric_cell(rng: &mut ChaCha8Rng, max_sites: usize) -> SymmetricCell {
    loop {
        let g = &GROUPS[rng.gen_range(0..GROUPS.len())];
        let ops = group(g.generators);
        let lattice = lattice_for(rng, g.system);
        let n_orbits = rng.gen_range(1..=3);
        let specials = [0.0, 0.5, 0.25, 1.0 / 3.0];
        let asym: Vec<(u8, Vector3<f64>)> = (0..n_orbits)
            .map(|_| {
                let f = Vector3::from_fn(|_, _| {
                    if rng.gen_bool(0.6) {
                        specials[rng.gen_range(0..specials.len())]
                    } else {
                        rng.gen::<f64>()
                    }
                });
                (SPECIES[rng.gen_range(0..SPECIES.len())], f)
            })
            .collect();
        let Ok(sites) = expand_sites(&lattice, &asym, &ops, 1e-6) else {
            continue;
        };
        if sites.len() > max_sites {
            continue;
        }
        let atoms = sites.iter().map(|(z, f)| AtomSite::new(*z, [f.x, f.y, f.z])).collect();
        let Ok(s) = CrystalStructure::new(lattice, atoms, g.name) else {
            continue;
        };
        if min_pair_distance(&s) >= 1.0 {
            let expansion_counts = asym
                .iter()
                .map(|a| expand_sites(&s.lattice, std::slice::from_ref(a), &ops, 1e-6).unwrap().len())
                .collect();
            return SymmetricCell {
                structure: s,
                ops,
                group: g.name,
                expansion_counts,
            };
        }
    }
}

pub fn symmetric_structure(rng: &mut ChaCha8Rng, max_sites: usize) -> (CrystalStructure, Vec<SymmetryOp>, &'static str) {
    let c = symmetric_cell(rng, max_sites);
    (c.structure, c.ops, c.group)
}

/// Random orthonormal matrix with determinant +1.
pub fn random_rotation(rng: &mut ChaCha8Rng) -> Matrix3<f64> {
    let axis = Vector3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let angle = rng.gen_range(0.0..std::f64::consts::TAU);
    nalgebra::Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(axis + Vector3::new(1e-3, 0.0, 0.0)), angle)
        .into_inner()
}

/// Every periodic image `(src, dst, offset, distance)` over offsets in
/// `[-w, w]³`, excluding the zero-offset self pair.
pub fn brute_images(s: &CrystalStructure, w: i32) -> Vec<(usize, usize, [i32; 3], f64)> {
    let mut out = Vec::new();
    for dst in 0..s.len() {
        let rd = s.lattice.frac_to_cart(&s.sites()[dst].frac);
        for src in 0..s.len() {
            for a in -w..=w {
                for b in -w..=w {
                    for c in -w..=w {
                        if src == dst && (a, b, c) == (0, 0, 0) {
                            continue;
                        }
                        let f = s.sites()[src].frac + Vector3::new(a as f64, b as f64, c as f64);
                        let d = (s.lattice.frac_to_cart(&f) - rd).norm();
                        out.push((src, dst, [a, b, c], d));
                    }
                }
            }
        }
    }
    out
}

/// Brute-force kNN: per destination, every image within the k-th smallest
/// distance plus `eps`.
pub fn brute_knn(s: &CrystalStructure, k: usize, eps: f64, w: i32) -> Vec<(usize, usize, [i32; 3], f64)> {
    let all = brute_images(s, w);
    let mut out = Vec::new();
    for dst in 0..s.len() {
        let mut mine: Vec<_> = all.iter().filter(|e| e.1 == dst).cloned().collect();
        mine.sort_by(|a, b| a.3.total_cmp(&b.3));
        let kth = mine[k - 1].3;
        out.extend(mine.into_iter().filter(|e| e.3 <= kth + eps));
    }
    out
}

pub fn brute_radius(s: &CrystalStructure, r: f64, w: i32) -> Vec<(usize, usize, [i32; 3], f64)> {
    brute_images(s, w).into_iter().filter(|e| e.3 <= r).collect()
}

/// Sorted `(src, dst, offset)` keys plus distances, for set comparison.
pub fn keyed(mut v: Vec<(usize, usize, [i32; 3], f64)>) -> Vec<(usize, usize, [i32; 3], f64)> {
    v.sort_by_key(|e| (e.0, e.1, e.2));
    v
}

pub fn keyed_edges(edges: &[PeriodicEdge]) -> Vec<(usize, usize, [i32; 3], f64)> {
    keyed(edges.iter().map(|e| (e.src, e.dst, e.offset, e.distance)).collect())
}

/// Compares two keyed edge lists: identical keys, distances within `tol`.
pub fn same_edge_set(
    a: &[(usize, usize, [i32; 3], f64)],
    b: &[(usize, usize, [i32; 3], f64)],
    tol: f64,
) -> Result<(), String> {
    if a.len() != b.len() {
        return Err(format!("{} vs {} edges", a.len(), b.len()));
    }
    for (x, y) in a.iter().zip(b) {
        if (x.0, x.1, x.2) != (y.0, y.1, y.2) {
            return Err(format!("key mismatch {:?} vs {:?}", (x.0, x.1, x.2), (y.0, y.1, y.2)));
        }
        if (x.3 - y.3).abs() > tol {
            return Err(format!("distance mismatch {} vs {}", x.3, y.3));
        }
    }
    Ok(())
}

/// Relative difference with the acceptance denominator.
pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / (a.abs() + 1e-12)
}

/// Independent Voronoi cell by vertex enumeration: intersect every triple of
/// bisector planes among the nearest candidate images, keep points inside
/// all half-spaces. The candidate set is grown until no image outside it
/// lies within twice the farthest vertex distance, which certifies the cell.
pub struct OracleCell {
    pub volume: f64,
    /// `(src, offset, area)` per face.
    pub faces: Vec<(usize, [i32; 3], f64)>,
    pub n_vertices: usize,
}

pub fn oracle_voronoi(s: &CrystalStructure, owner: usize) -> OracleCell {
    let mut images: Vec<(usize, [i32; 3], Vector3<f64>)> = Vec::new();
    let origin = s.lattice.frac_to_cart(&s.sites()[owner].frac);
    let w = 3;
    for src in 0..s.len() {
        for a in -w..=w {
            for b in -w..=w {
                for c in -w..=w {
                    if src == owner && (a, b, c) == (0, 0, 0) {
                        continue;
                    }
                    let f = s.sites()[src].frac + Vector3::new(a as f64, b as f64, c as f64);
                    images.push((src, [a, b, c], s.lattice.frac_to_cart(&f) - origin));
                }
            }
        }
    }
    images.sort_by(|x, y| x.2.norm().total_cmp(&y.2.norm()));
    let mut take = 26.min(images.len());
    loop {
        let cand = &images[..take];
        let planes: Vec<(Vector3<f64>, f64)> = cand.iter().map(|(_, _, p)| (*p, p.norm_squared() / 2.0)).collect();
        let inside = |x: &Vector3<f64>| planes.iter().all(|(n, d)| n.dot(x) <= d + 1e-9 * (1.0 + d));
        let mut verts: Vec<Vector3<f64>> = Vec::new();
        for i in 0..planes.len() {
            for j in i + 1..planes.len() {
                for k in j + 1..planes.len() {
                    let m = Matrix3::from_rows(&[
                        planes[i].0.transpose(),
                        planes[j].0.transpose(),
                        planes[k].0.transpose(),
                    ]);
                    if m.determinant().abs() < 1e-10 {
                        continue;
                    }
                    let x = m.try_inverse().unwrap() * Vector3::new(planes[i].1, planes[j].1, planes[k].1);
                    if inside(&x) && !verts.iter().any(|v| (v - x).norm() < 1e-7) {
                        verts.push(x);
                    }
                }
            }
        }
        let rmax = verts.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let certified = images.len() == take || images[take].2.norm() > 2.0 * rmax + 1e-9;
        if !certified {
            take = (take * 2).min(images.len());
            continue;
        }
        let mut faces = Vec::new();
        let mut volume = 0.0;
        for (idx, (n, d)) in planes.iter().enumerate() {
            let on: Vec<Vector3<f64>> = verts
                .iter()
                .filter(|v| (n.dot(v) - d).abs() < 1e-7 * (1.0 + d))
                .cloned()
                .collect();
            if on.len() < 3 {
                continue;
            }
            let area = polygon_area(&on, &n.normalize());
            if area > 1e-7 {
                faces.push((cand[idx].0, cand[idx].1, area));
                volume += area * (d / n.norm()) / 3.0;
            }
        }
        return OracleCell {
            volume,
            faces,
            n_vertices: verts.len(),
        };
    }
}

/// Area of a convex planar point set, ordering by angle around the centroid.
fn polygon_area(points: &[Vector3<f64>], normal: &Vector3<f64>) -> f64 {
    let c: Vector3<f64> = points.iter().sum::<Vector3<f64>>() / points.len() as f64;
    let u = (points[0] - c).normalize();
    let v = normal.cross(&u);
    let mut pts: Vec<(f64, Vector3<f64>)> = points
        .iter()
        .map(|p| ((p - c).dot(&v).atan2((p - c).dot(&u)), *p))
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut area = 0.0;
    for i in 0..pts.len() {
        let (p, q) = (pts[i].1 - c, pts[(i + 1) % pts.len()].1 - c);
        area += p.cross(&q).dot(normal) / 2.0;
    }
    area.abs()
}
