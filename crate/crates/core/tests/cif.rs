mod common;

use common::*;
use crystgraph::cif::read_cif;
use crystgraph::pipeline::{list_inputs, load_structure};
use crystgraph::symmetry::{compute_orbits, find_symmetry_ops};
use crystgraph::CrystalStructure;

#[test]
fn every_corpus_file_parses_and_round_trips_through_json() {
    let files = list_inputs(&corpus_dir()).unwrap();
    assert!(files.len() >= 30);
    for f in files {
        let loaded = load_structure(&f).unwrap_or_else(|e| panic!("{}: {e}", f.display()));
        let s = loaded.structure;
        assert!(!s.is_empty());
        let text = s.to_json_string();
        let back = CrystalStructure::from_json_str(&text, s.id.clone()).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_json_string(), text);
    }
}

#[test]
fn expanded_orbits_match_expansion_counts() {
    let mut r = rng(11);
    for _ in 0..40 {
        let cell = symmetric_cell(&mut r, 24);
        let (s, ops, name) = (&cell.structure, &cell.ops, cell.group);
        let orbits = compute_orbits(s, ops, 1e-5).unwrap();
        let mut site = 0;
        for &count in &cell.expansion_counts {
            for i in site..site + count {
                assert_eq!(orbits.orbit_size[i], count, "{name}");
                assert_eq!(orbits.representative[i], site, "{name}");
            }
            site += count;
        }
        let detected = find_symmetry_ops(s, 1e-5).unwrap();
        let from_detected = compute_orbits(s, &detected, 1e-5).unwrap();
        // Detection may find extra symmetry, which can only merge orbits.
        for i in 0..s.len() {
            assert!(from_detected.orbit_size[i] >= orbits.orbit_size[i], "{name}");
            assert_eq!(from_detected.orbit_size[i] % orbits.orbit_size[i], 0, "{name}");
        }
        assert_eq!(orbits.multiplicities().iter().sum::<usize>(), s.len());
    }
}

#[test]
fn cif_symmetry_block_expands_rock_salt() {
    let text = "data_nacl
_cell_length_a 5.64
_cell_length_b 5.64
_cell_length_c 5.64
_cell_angle_alpha 90
_cell_angle_beta 90
_cell_angle_gamma 90
loop_
_space_group_symop_operation_xyz
x,y,z
x,y+1/2,z+1/2
x+1/2,y,z+1/2
x+1/2,y+1/2,z
loop_
_atom_site_label
_atom_site_type_symbol
_atom_site_fract_x
_atom_site_fract_y
_atom_site_fract_z
Na1 Na 0 0 0
Cl1 Cl 0.5 0 0
";
    let (s, ops) = read_cif(text, "nacl").unwrap();
    assert_eq!(s.len(), 8);
    assert_eq!(ops.len(), 4);
    let orbits = compute_orbits(&s, &ops, 1e-5).unwrap();
    assert_eq!(orbits.multiplicities(), vec![4, 4]);
}
