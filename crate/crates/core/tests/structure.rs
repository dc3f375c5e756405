mod common;

use common::*;
use crystgraph::CrystalStructure;
use nalgebra::Vector3;
use proptest::prelude::*;

fn shifted(s: &CrystalStructure, site: usize, by: [i32; 3]) -> CrystalStructure {
    let atoms = s
        .sites()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let mut f = a.frac;
            if i == site {
                f += Vector3::new(by[0] as f64, by[1] as f64, by[2] as f64);
            }
            crystgraph::AtomSite::new(a.species, [f.x, f.y, f.z])
        })
        .collect();
    CrystalStructure::new(s.lattice.clone(), atoms, "shifted").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn min_image_is_symmetric_and_offsets_negate(seed in any::<u64>()) {
        let s = random_structure(&mut rng(seed), 5, 0.8);
        for i in 0..s.len() {
            for j in 0..s.len() {
                let a = s.min_image_distance(i, j);
                let b = s.min_image_distance(j, i);
                prop_assert!((a.distance - b.distance).abs() < 1e-12);
                // Equal distances reached by the negated offset.
                let back = s.image_vector(j, i, [-a.offset[0], -a.offset[1], -a.offset[2]]).norm();
                prop_assert!((back - b.distance).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn min_image_ignores_integer_shifts(seed in any::<u64>(), by in prop::array::uniform3(-3i32..=3)) {
        let s = random_structure(&mut rng(seed), 4, 0.8);
        let t = shifted(&s, 0, by);
        for j in 0..s.len() {
            prop_assert!((s.min_image_distance(0, j).distance - t.min_image_distance(0, j).distance).abs() < 1e-12);
        }
    }

    #[test]
    fn rotation_preserves_min_image_distances(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_structure(&mut r, 5, 0.8);
        let rot = random_rotation(&mut r);
        let t = s.rotated(&rot).unwrap();
        for i in 0..s.len() {
            for j in 0..s.len() {
                let d = (s.min_image_distance(i, j).distance - t.min_image_distance(i, j).distance).abs();
                prop_assert!(d < 1e-9, "{d}");
            }
        }
    }

    #[test]
    fn supercell_preserves_density(seed in any::<u64>(), reps in prop::array::uniform3(1u32..=3)) {
        let s = random_structure(&mut rng(seed), 3, 0.8);
        let sup = s.make_supercell(reps).unwrap();
        let before = s.lattice.volume() / s.len() as f64;
        let after = sup.lattice.volume() / sup.len() as f64;
        prop_assert!(rel(before, after) < 1e-12);
    }
}

#[test]
fn json_round_trip_is_identity() {
    let mut r = rng(7);
    for _ in 0..20 {
        let s = random_structure(&mut r, 6, 0.8);
        let back = CrystalStructure::from_json_str(&s.to_json_string(), s.id.clone()).unwrap();
        assert_eq!(s, back);
    }
}
