//! Static per-element data used as node features.
//!
//! Values: standard atomic weight (u), single-bond covalent radius (Å),
//! Pauling electronegativity, first ionization energy (eV), and the extreme
//! common oxidation states. Unknown quantities are stored as 0.

pub const MAX_Z: u8 = 118;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Element {
    pub z: u8,
    pub symbol: &'static str,
    pub mass: f64,
    pub covalent_radius: f64,
    pub electronegativity: f64,
    pub ionization_energy: f64,
    pub max_oxidation: i8,
    pub min_oxidation: i8,
}

/// Number of static features produced by [`node_features`].
pub const NODE_FEATURE_COUNT: usize = 7;

pub fn by_z(z: u8) -> Option<&'static Element> {
    if z == 0 || z > MAX_Z {
        None
    } else {
        Some(&ELEMENTS[z as usize - 1])
    }
}

/// Looks up an element symbol, case-insensitively.
pub fn by_symbol(symbol: &str) -> Option<&'static Element> {
    ELEMENTS
        .iter()
        .find(|e| e.symbol.eq_ignore_ascii_case(symbol))
}

/// Static feature vector for a node, scaled to order one:
/// `[Z/100, mass/100, radius, EN/4, IE/10, max_ox/8, min_ox/8]`.
pub fn node_features(z: u8) -> Vec<f64> {
    let e = by_z(z).expect("validated atomic number");
    vec![
        e.z as f64 / 100.0,
        e.mass / 100.0,
        e.covalent_radius,
        e.electronegativity / 4.0,
        e.ionization_energy / 10.0,
        e.max_oxidation as f64 / 8.0,
        e.min_oxidation as f64 / 8.0,
    ]
}

static ELEMENTS: [Element; 118] = [
    Element { z: 1, symbol: "H", mass: 1.008, covalent_radius: 0.32, electronegativity: 2.20, ionization_energy: 13.5984, max_oxidation: 1, min_oxidation: -1 },
    Element { z: 2, symbol: "He", mass: 4.0026, covalent_radius: 0.46, electronegativity: 0.00, ionization_energy: 24.5874, max_oxidation: 0, min_oxidation: 0 },
    Element { z: 3, symbol: "Li", mass: 6.94, covalent_radius: 1.33, electronegativity: 0.98, ionization_energy: 5.3917, max_oxidation: 1, min_oxidation: 1 },
    Element { z: 4, symbol: "Be", mass: 9.01218, covalent_radius: 1.02, electronegativity: 1.57, ionization_energy: 9.3227, max_oxidation: 2, min_oxidation: 2 },
    Element { z: 5, symbol: "B", mass: 10.81, covalent_radius: 0.85, electronegativity: 2.04, ionization_energy: 8.2980, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 6, symbol: "C", mass: 12.011, covalent_radius: 0.75, electronegativity: 2.55, ionization_energy: 11.2603, max_oxidation: 4, min_oxidation: -4 },
    Element { z: 7, symbol: "N", mass: 14.007, covalent_radius: 0.71, electronegativity: 3.04, ionization_energy: 14.5341, max_oxidation: 5, min_oxidation: -3 },
    Element { z: 8, symbol: "O", mass: 15.999, covalent_radius: 0.63, electronegativity: 3.44, ionization_energy: 13.6181, max_oxidation: -2, min_oxidation: -2 },
    Element { z: 9, symbol: "F", mass: 18.9984, covalent_radius: 0.64, electronegativity: 3.98, ionization_energy: 17.4228, max_oxidation: -1, min_oxidation: -1 },
    Element { z: 10, symbol: "Ne", mass: 20.1797, covalent_radius: 0.67, electronegativity: 0.00, ionization_energy: 21.5645, max_oxidation: 0, min_oxidation: 0 },
    Element { z: 11, symbol: "Na", mass: 22.9898, covalent_radius: 1.55, electronegativity: 0.93, ionization_energy: 5.1391, max_oxidation: 1, min_oxidation: 1 },
    Element { z: 12, symbol: "Mg", mass: 24.305, covalent_radius: 1.39, electronegativity: 1.31, ionization_energy: 7.6462, max_oxidation: 2, min_oxidation: 2 },
    Element { z: 13, symbol: "Al", mass: 26.9815, covalent_radius: 1.26, electronegativity: 1.61, ionization_energy: 5.9858, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 14, symbol: "Si", mass: 28.085, covalent_radius: 1.16, electronegativity: 1.90, ionization_energy: 8.1517, max_oxidation: 4, min_oxidation: -4 },
    Element { z: 15, symbol: "P", mass: 30.9738, covalent_radius: 1.11, electronegativity: 2.19, ionization_energy: 10.4867, max_oxidation: 5, min_oxidation: -3 },
    Element { z: 16, symbol: "S", mass: 32.06, covalent_radius: 1.03, electronegativity: 2.58, ionization_energy: 10.3600, max_oxidation: 6, min_oxidation: -2 },
    Element { z: 17, symbol: "Cl", mass: 35.45, covalent_radius: 0.99, electronegativity: 3.16, ionization_energy: 12.9676, max_oxidation: 7, min_oxidation: -1 },
    Element { z: 18, symbol: "Ar", mass: 39.948, covalent_radius: 0.96, electronegativity: 0.00, ionization_energy: 15.7596, max_oxidation: 0, min_oxidation: 0 },
    Element { z: 19, symbol: "K", mass: 39.0983, covalent_radius: 1.96, electronegativity: 0.82, ionization_energy: 4.3407, max_oxidation: 1, min_oxidation: 1 },
    Element { z: 20, symbol: "Ca", mass: 40.078, covalent_radius: 1.71, electronegativity: 1.00, ionization_energy: 6.1132, max_oxidation: 2, min_oxidation: 2 },
    Element { z: 21, symbol: "Sc", mass: 44.9559, covalent_radius: 1.48, electronegativity: 1.36, ionization_energy: 6.5615, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 22, symbol: "Ti", mass: 47.867, covalent_radius: 1.36, electronegativity: 1.54, ionization_energy: 6.8281, max_oxidation: 4, min_oxidation: 4 },
    Element { z: 23, symbol: "V", mass: 50.9415, covalent_radius: 1.34, electronegativity: 1.63, ionization_energy: 6.7462, max_oxidation: 5, min_oxidation: 5 },
    Element { z: 24, symbol: "Cr", mass: 51.9961, covalent_radius: 1.22, electronegativity: 1.66, ionization_energy: 6.7665, max_oxidation: 6, min_oxidation: 3 },
    Element { z: 25, symbol: "Mn", mass: 54.938, covalent_radius: 1.19, electronegativity: 1.55, ionization_energy: 7.4340, max_oxidation: 7, min_oxidation: 2 },
    Element { z: 26, symbol: "Fe", mass: 55.845, covalent_radius: 1.16, electronegativity: 1.83, ionization_energy: 7.9025, max_oxidation: 3, min_oxidation: 2 },
    Element { z: 27, symbol: "Co", mass: 58.9332, covalent_radius: 1.11, electronegativity: 1.88, ionization_energy: 7.8810, max_oxidation: 3, min_oxidation: 2 },
    Element { z: 28, symbol: "Ni", mass: 58.6934, covalent_radius: 1.10, electronegativity: 1.91, ionization_energy: 7.6399, max_oxidation: 2, min_oxidation: 2 },
    Element { z: 29, symbol: "Cu", mass: 63.546, covalent_radius: 1.12, electronegativity: 1.90, ionization_energy: 7.7264, max_oxidation: 2, min_oxidation: 2 },
    Element { z: 30, symbol: "Zn", mass: 65.38, covalent_radius: 1.18, electronegativity: 1.65, ionization_energy: 9.3942, max_oxidation: 2, min_oxidation: 2 },
    Element { z: 31, symbol: "Ga", mass: 69.723, covalent_radius: 1.24, electronegativity: 1.81, ionization_energy: 5.9993, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 32, symbol: "Ge", mass: 72.63, covalent_radius: 1.21, electronegativity: 2.01, ionization_energy: 7.8994, max_oxidation: 4, min_oxidation: -4 },
    Element { z: 33, symbol: "As", mass: 74.9216, covalent_radius: 1.21, electronegativity: 2.18, ionization_energy: 9.7886, max_oxidation: 5, min_oxidation: -3 },
    Element { z: 34, symbol: "Se", mass: 78.971, covalent_radius: 1.16, electronegativity: 2.55, ionization_energy: 9.7524, max_oxidation: 6, min_oxidation: -2 },
    Element { z: 35, symbol: "Br", mass: 79.904, covalent_radius: 1.14, electronegativity: 2.96, ionization_energy: 11.8138, max_oxidation: 5, min_oxidation: -1 },
    Element { z: 36, symbol: "Kr", mass: 83.798, covalent_radius: 1.17, electronegativity: 0.00, ionization_energy: 13.9996, max_oxidation: 2, min_oxidation: 2 },
    Element { z: 37, symbol: "Rb", mass: 85.4678, covalent_radius: 2.10, electronegativity: 0.82, ionization_energy: 4.1771, max_oxidation: 1, min_oxidation: 1 },
    Element { z: 38, symbol: "Sr", mass: 87.62, covalent_radius: 1.85, electronegativity: 0.95, ionization_energy: 5.6949, max_oxidation: 2, min_oxidation: 2 },
    Element { z: 39, symbol: "Y", mass: 88.9058, covalent_radius: 1.63, electronegativity: 1.22, ionization_energy: 6.2173, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 40, symbol: "Zr", mass: 91.224, covalent_radius: 1.54, electronegativity: 1.33, ionization_energy: 6.6341, max_oxidation: 4, min_oxidation: 4 },
    Element { z: 41, symbol: "Nb", mass: 92.9064, covalent_radius: 1.47, electronegativity: 1.60, ionization_energy: 6.7588, max_oxidation: 5, min_oxidation: 5 },
    Element { z: 42, symbol: "Mo", mass: 95.95, covalent_radius: 1.38, electronegativity: 2.16, ionization_energy: 7.0924, max_oxidation: 6, min_oxidation: 4 },
    Element { z: 43, symbol: "Tc", mass: 97.9072, covalent_radius: 1.28, electronegativity: 2.10, ionization_energy: 7.1194, max_oxidation: 7, min_oxidation: 4 },
    Element { z: 44, symbol: "Ru", mass: 101.07, covalent_radius: 1.25, electronegativity: 2.20, ionization_energy: 7.3605, max_oxidation: 4, min_oxidation: 3 },
    Element { z: 45, symbol: "Rh", mass: 102.906, covalent_radius: 1.25, electronegativity: 2.28, ionization_energy: 7.4589, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 46, symbol: "Pd", mass: 106.42, covalent_radius: 1.20, electronegativity: 2.20, ionization_energy: 8.3368, max_oxidation: 4, min_oxidation: 2 },
    Element { z: 47, symbol: "Ag", mass: 107.868, covalent_radius: 1.28, electronegativity: 1.93, ionization_energy: 7.5762, max_oxidation: 1, min_oxidation: 1 },
    Element { z: 48, symbol: "Cd", mass: 112.414, covalent_radius: 1.36, electronegativity: 1.69, ionization_energy: 8.9938, max_oxidation: 2, min_oxidation: 2 },
    Element { z: 49, symbol: "In", mass: 114.818, covalent_radius: 1.42, electronegativity: 1.78, ionization_energy: 5.7864, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 50, symbol: "Sn", mass: 118.71, covalent_radius: 1.40, electronegativity: 1.96, ionization_energy: 7.3439, max_oxidation: 4, min_oxidation: -4 },
    Element { z: 51, symbol: "Sb", mass: 121.76, covalent_radius: 1.40, electronegativity: 2.05, ionization_energy: 8.6084, max_oxidation: 5, min_oxidation: -3 },
    Element { z: 52, symbol: "Te", mass: 127.6, covalent_radius: 1.36, electronegativity: 2.10, ionization_energy: 9.0098, max_oxidation: 6, min_oxidation: -2 },
    Element { z: 53, symbol: "I", mass: 126.904, covalent_radius: 1.33, electronegativity: 2.66, ionization_energy: 10.4512, max_oxidation: 7, min_oxidation: -1 },
    Element { z: 54, symbol: "Xe", mass: 131.293, covalent_radius: 1.31, electronegativity: 2.60, ionization_energy: 12.1298, max_oxidation: 6, min_oxidation: 2 },
    Element { z: 55, symbol: "Cs", mass: 132.905, covalent_radius: 2.32, electronegativity: 0.79, ionization_energy: 3.8939, max_oxidation: 1, min_oxidation: 1 },
    Element { z: 56, symbol: "Ba", mass: 137.327, covalent_radius: 1.96, electronegativity: 0.89, ionization_energy: 5.2117, max_oxidation: 2, min_oxidation: 2 },
    Element { z: 57, symbol: "La", mass: 138.905, covalent_radius: 1.80, electronegativity: 1.10, ionization_energy: 5.5769, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 58, symbol: "Ce", mass: 140.116, covalent_radius: 1.63, electronegativity: 1.12, ionization_energy: 5.5386, max_oxidation: 4, min_oxidation: 3 },
    Element { z: 59, symbol: "Pr", mass: 140.908, covalent_radius: 1.76, electronegativity: 1.13, ionization_energy: 5.4702, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 60, symbol: "Nd", mass: 144.242, covalent_radius: 1.74, electronegativity: 1.14, ionization_energy: 5.5250, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 61, symbol: "Pm", mass: 144.913, covalent_radius: 1.73, electronegativity: 0.00, ionization_energy: 5.5819, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 62, symbol: "Sm", mass: 150.36, covalent_radius: 1.72, electronegativity: 1.17, ionization_energy: 5.6437, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 63, symbol: "Eu", mass: 151.964, covalent_radius: 1.68, electronegativity: 0.00, ionization_energy: 5.6704, max_oxidation: 3, min_oxidation: 2 },
    Element { z: 64, symbol: "Gd", mass: 157.25, covalent_radius: 1.69, electronegativity: 1.20, ionization_energy: 6.1498, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 65, symbol: "Tb", mass: 158.925, covalent_radius: 1.68, electronegativity: 0.00, ionization_energy: 5.8638, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 66, symbol: "Dy", mass: 162.5, covalent_radius: 1.67, electronegativity: 1.22, ionization_energy: 5.9391, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 67, symbol: "Ho", mass: 164.93, covalent_radius: 1.66, electronegativity: 1.23, ionization_energy: 6.0215, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 68, symbol: "Er", mass: 167.259, covalent_radius: 1.65, electronegativity: 1.24, ionization_energy: 6.1077, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 69, symbol: "Tm", mass: 168.934, covalent_radius: 1.64, electronegativity: 1.25, ionization_energy: 6.1844, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 70, symbol: "Yb", mass: 173.045, covalent_radius: 1.70, electronegativity: 0.00, ionization_energy: 6.2542, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 71, symbol: "Lu", mass: 174.967, covalent_radius: 1.62, electronegativity: 1.00, ionization_energy: 5.4259, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 72, symbol: "Hf", mass: 178.49, covalent_radius: 1.52, electronegativity: 1.30, ionization_energy: 6.8251, max_oxidation: 4, min_oxidation: 4 },
    Element { z: 73, symbol: "Ta", mass: 180.948, covalent_radius: 1.46, electronegativity: 1.50, ionization_energy: 7.5496, max_oxidation: 5, min_oxidation: 5 },
    Element { z: 74, symbol: "W", mass: 183.84, covalent_radius: 1.37, electronegativity: 1.70, ionization_energy: 7.8640, max_oxidation: 6, min_oxidation: 4 },
    Element { z: 75, symbol: "Re", mass: 186.207, covalent_radius: 1.31, electronegativity: 1.90, ionization_energy: 7.8335, max_oxidation: 4, min_oxidation: 4 },
    Element { z: 76, symbol: "Os", mass: 190.23, covalent_radius: 1.29, electronegativity: 2.20, ionization_energy: 8.4382, max_oxidation: 4, min_oxidation: 4 },
    Element { z: 77, symbol: "Ir", mass: 192.217, covalent_radius: 1.22, electronegativity: 2.20, ionization_energy: 8.9670, max_oxidation: 4, min_oxidation: 3 },
    Element { z: 78, symbol: "Pt", mass: 195.084, covalent_radius: 1.23, electronegativity: 2.20, ionization_energy: 8.9588, max_oxidation: 4, min_oxidation: 2 },
    Element { z: 79, symbol: "Au", mass: 196.967, covalent_radius: 1.24, electronegativity: 2.40, ionization_energy: 9.2256, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 80, symbol: "Hg", mass: 200.592, covalent_radius: 1.33, electronegativity: 1.90, ionization_energy: 10.4375, max_oxidation: 2, min_oxidation: 1 },
    Element { z: 81, symbol: "Tl", mass: 204.38, covalent_radius: 1.44, electronegativity: 1.80, ionization_energy: 6.1083, max_oxidation: 3, min_oxidation: 1 },
    Element { z: 82, symbol: "Pb", mass: 207.2, covalent_radius: 1.44, electronegativity: 1.80, ionization_energy: 7.4167, max_oxidation: 4, min_oxidation: 2 },
    Element { z: 83, symbol: "Bi", mass: 208.98, covalent_radius: 1.51, electronegativity: 1.90, ionization_energy: 7.2855, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 84, symbol: "Po", mass: 209.0, covalent_radius: 1.45, electronegativity: 2.00, ionization_energy: 8.4181, max_oxidation: 4, min_oxidation: -2 },
    Element { z: 85, symbol: "At", mass: 210.0, covalent_radius: 1.47, electronegativity: 2.20, ionization_energy: 9.3175, max_oxidation: 1, min_oxidation: -1 },
    Element { z: 86, symbol: "Rn", mass: 222.0, covalent_radius: 1.42, electronegativity: 0.00, ionization_energy: 10.7485, max_oxidation: 0, min_oxidation: 0 },
    Element { z: 87, symbol: "Fr", mass: 223.0, covalent_radius: 2.23, electronegativity: 0.70, ionization_energy: 4.0727, max_oxidation: 1, min_oxidation: 1 },
    Element { z: 88, symbol: "Ra", mass: 226.0, covalent_radius: 2.01, electronegativity: 0.90, ionization_energy: 5.2784, max_oxidation: 2, min_oxidation: 2 },
    Element { z: 89, symbol: "Ac", mass: 227.0, covalent_radius: 1.86, electronegativity: 1.10, ionization_energy: 5.3802, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 90, symbol: "Th", mass: 232.038, covalent_radius: 1.75, electronegativity: 1.30, ionization_energy: 6.3067, max_oxidation: 4, min_oxidation: 4 },
    Element { z: 91, symbol: "Pa", mass: 231.036, covalent_radius: 1.69, electronegativity: 1.50, ionization_energy: 5.8900, max_oxidation: 5, min_oxidation: 5 },
    Element { z: 92, symbol: "U", mass: 238.029, covalent_radius: 1.70, electronegativity: 1.70, ionization_energy: 6.1940, max_oxidation: 6, min_oxidation: 6 },
    Element { z: 93, symbol: "Np", mass: 237.0, covalent_radius: 1.71, electronegativity: 1.30, ionization_energy: 6.2655, max_oxidation: 5, min_oxidation: 5 },
    Element { z: 94, symbol: "Pu", mass: 244.0, covalent_radius: 1.72, electronegativity: 1.30, ionization_energy: 6.0258, max_oxidation: 4, min_oxidation: 4 },
    Element { z: 95, symbol: "Am", mass: 243.0, covalent_radius: 1.66, electronegativity: 0.00, ionization_energy: 5.9738, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 96, symbol: "Cm", mass: 247.0, covalent_radius: 1.66, electronegativity: 0.00, ionization_energy: 5.9922, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 97, symbol: "Bk", mass: 247.0, covalent_radius: 1.68, electronegativity: 0.00, ionization_energy: 6.1978, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 98, symbol: "Cf", mass: 251.0, covalent_radius: 1.68, electronegativity: 0.00, ionization_energy: 6.2819, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 99, symbol: "Es", mass: 252.0, covalent_radius: 1.65, electronegativity: 0.00, ionization_energy: 6.3684, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 100, symbol: "Fm", mass: 257.0, covalent_radius: 1.67, electronegativity: 0.00, ionization_energy: 6.5000, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 101, symbol: "Md", mass: 258.0, covalent_radius: 1.73, electronegativity: 0.00, ionization_energy: 6.5800, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 102, symbol: "No", mass: 259.0, covalent_radius: 1.76, electronegativity: 0.00, ionization_energy: 6.6262, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 103, symbol: "Lr", mass: 262.0, covalent_radius: 1.61, electronegativity: 0.00, ionization_energy: 4.9600, max_oxidation: 3, min_oxidation: 3 },
    Element { z: 104, symbol: "Rf", mass: 267.0, covalent_radius: 1.57, electronegativity: 0.00, ionization_energy: 6.0200, max_oxidation: 4, min_oxidation: 4 },
    Element { z: 105, symbol: "Db", mass: 268.0, covalent_radius: 1.49, electronegativity: 0.00, ionization_energy: 6.8000, max_oxidation: 0, min_oxidation: 0 },
    Element { z: 106, symbol: "Sg", mass: 271.0, covalent_radius: 1.43, electronegativity: 0.00, ionization_energy: 7.8000, max_oxidation: 0, min_oxidation: 0 },
    Element { z: 107, symbol: "Bh", mass: 274.0, covalent_radius: 1.41, electronegativity: 0.00, ionization_energy: 7.7000, max_oxidation: 0, min_oxidation: 0 },
    Element { z: 108, symbol: "Hs", mass: 269.0, covalent_radius: 1.34, electronegativity: 0.00, ionization_energy: 7.6000, max_oxidation: 0, min_oxidation: 0 },
    Element { z: 109, symbol: "Mt", mass: 276.0, covalent_radius: 1.29, electronegativity: 0.00, ionization_energy: 0.0000, max_oxidation: 0, min_oxidation: 0 },
    Element { z: 110, symbol: "Ds", mass: 281.0, covalent_radius: 1.28, electronegativity: 0.00, ionization_energy: 0.0000, max_oxidation: 0, min_oxidation: 0 },
    Element { z: 111, symbol: "Rg", mass: 281.0, covalent_radius: 1.21, electronegativity: 0.00, ionization_energy: 0.0000, max_oxidation: 0, min_oxidation: 0 },
    Element { z: 112, symbol: "Cn", mass: 285.0, covalent_radius: 1.22, electronegativity: 0.00, ionization_energy: 0.0000, max_oxidation: 0, min_oxidation: 0 },
    Element { z: 113, symbol: "Nh", mass: 286.0, covalent_radius: 1.36, electronegativity: 0.00, ionization_energy: 0.0000, max_oxidation: 0, min_oxidation: 0 },
    Element { z: 114, symbol: "Fl", mass: 289.0, covalent_radius: 1.43, electronegativity: 0.00, ionization_energy: 0.0000, max_oxidation: 0, min_oxidation: 0 },
    Element { z: 115, symbol: "Mc", mass: 288.0, covalent_radius: 1.62, electronegativity: 0.00, ionization_energy: 0.0000, max_oxidation: 0, min_oxidation: 0 },
    Element { z: 116, symbol: "Lv", mass: 293.0, covalent_radius: 1.75, electronegativity: 0.00, ionization_energy: 0.0000, max_oxidation: 0, min_oxidation: 0 },
    Element { z: 117, symbol: "Ts", mass: 294.0, covalent_radius: 1.65, electronegativity: 0.00, ionization_energy: 0.0000, max_oxidation: 0, min_oxidation: 0 },
    Element { z: 118, symbol: "Og", mass: 294.0, covalent_radius: 1.57, electronegativity: 0.00, ionization_energy: 0.0000, max_oxidation: 0, min_oxidation: 0 },
];
