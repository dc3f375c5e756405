#!/usr/bin/env python3
"""Regenerate the bundled CIF corpus in data/corpus/.

Each entry is a textbook prototype. Entries with `group` are written as an
asymmetric unit plus a `_symmetry_equiv_pos_as_xyz` loop; the rest are
written as full P1 site lists. Groups are built by closure from generators,
and every structure is checked to be closed under its group before writing.

    python3 scripts/gen_corpus.py
"""

from fractions import Fraction as F
from itertools import product
from pathlib import Path
import random

OUT = Path(__file__).resolve().parent.parent / "data" / "corpus"
TOL = 1e-6


# --- symmetry operations as (3x3 int rows, 3 Fractions) -----------------

def parse_xyz(text):
    rot, tr = [], []
    for part in text.split(","):
        row, t = [0, 0, 0], F(0)
        tok = part.replace(" ", "").replace("-", "+-")
        for term in filter(None, tok.split("+")):
            sign = -1 if term.startswith("-") else 1
            term = term.lstrip("-")
            if term in "xyz":
                row["xyz".index(term)] += sign
            else:
                t += sign * F(term)
        rot.append(tuple(row))
        tr.append(t % 1)
    return tuple(rot), tuple(tr)


def compose(a, b):
    (ra, ta), (rb, tb) = a, b
    rot = tuple(tuple(sum(ra[i][k] * rb[k][j] for k in range(3)) for j in range(3)) for i in range(3))
    tr = tuple((sum(ra[i][k] * tb[k] for k in range(3)) + ta[i]) % 1 for i in range(3))
    return rot, tr


def closure(generators):
    ident = (((1, 0, 0), (0, 1, 0), (0, 0, 1)), (F(0),) * 3)
    ops = {ident}
    frontier = [ident]
    gens = [parse_xyz(g) for g in generators]
    while frontier:
        nxt = []
        for op in frontier:
            for g in gens:
                new = compose(g, op)
                if new not in ops:
                    ops.add(new)
                    nxt.append(new)
        frontier = nxt
    assert len(ops) <= 192
    return sorted(ops, key=lambda o: (o != ident, o))


def fmt_op(op):
    rot, tr = op
    parts = []
    for row, t in zip(rot, tr):
        s = ""
        for c, v in zip("xyz", row):
            if v == 1:
                s += ("+" if s else "") + c
            elif v == -1:
                s += "-" + c
            elif v != 0:
                raise ValueError(row)
        if t:
            s += f"+{t.numerator}/{t.denominator}"
        parts.append(s)
    return ",".join(parts)


def apply(op, p):
    rot, tr = op
    return tuple((sum(float(rot[i][k]) * p[k] for k in range(3)) + float(tr[i])) % 1.0 for i in range(3))


def same(p, q):
    return all(min(abs(a - b), 1 - abs(a - b)) < TOL for a, b in zip(p, q))


def expand(sites, ops):
    full = []
    for el, p in sites:
        for op in ops:
            q = apply(op, p)
            if not any(e == el and same(q, r) for e, r in full):
                full.append((el, q))
    return full


def check_closed(sites, ops):
    for op in ops:
        for el, p in sites:
            q = apply(op, p)
            assert any(e == el and same(q, r) for e, r in sites), (op, el, p)


M3M = ["z,x,y", "-x,-y,z", "y,x,-z", "-x,-y,-z"]
F_CENTER = ["x,y+1/2,z+1/2", "x+1/2,y,z+1/2"]
I_CENTER = ["x+1/2,y+1/2,z+1/2"]
T_D = ["z,x,y", "-x,-y,z", "y,-x,-z"]
P6_MMM = ["x-y,x,z", "y,x,-z", "-x,-y,-z"]
P63_MMC = ["x-y,x,z+1/2", "y,x,-z", "-x,-y,-z"]
P4_MMM = ["-y,x,z", "x,-y,-z", "-x,-y,-z"]
P42_MNM = ["-y+1/2,x+1/2,z+1/2", "y,x,-z", "-x,-y,-z"]
MMM = ["-x,-y,z", "x,-y,-z", "-x,-y,-z"]

GROUPS = {
    "P m -3 m": M3M,
    "F m -3 m": M3M + F_CENTER,
    "I m -3 m": M3M + I_CENTER,
    "F -4 3 m": T_D + F_CENTER,
    "P 6/m m m": P6_MMM,
    "P 63/m m c": P63_MMC,
    "P 4/m m m": P4_MMM,
    "I 4/m m m": P4_MMM + I_CENTER,
    "P 42/m n m": P42_MNM,
    "P m m m": MMM,
    "I m m m": MMM + I_CENTER,
    "P -1": ["-x,-y,-z"],
    "P 2/m": ["-x,y,-z", "-x,-y,-z"],
}


def cubic(a):
    return (a, a, a, 90, 90, 90)


def hexa(a, c):
    return (a, a, c, 90, 90, 120)


def tetra(a, c):
    return (a, a, c, 90, 90, 90)


# name, cell, group (None = P1 full list), sites
ENTRIES = []


def add(name, cell, group, sites, note=""):
    ENTRIES.append((name, cell, group, sites, note))


third, u_wz = 1 / 3, 0.382

# cubic, asymmetric unit + ops
for name, a, (x, y) in [("NaCl", 5.64, ("Na", "Cl")), ("KCl", 6.29, ("K", "Cl")),
                        ("LiF", 4.03, ("Li", "F")), ("MgO", 4.21, ("Mg", "O")),
                        ("PbS", 5.94, ("Pb", "S"))]:
    add(name, cubic(a), "F m -3 m", [(x, (0, 0, 0)), (y, (0.5, 0.5, 0.5))], "rock salt")
for name, a, el in [("Cu", 3.615, "Cu"), ("Al", 4.05, "Al"), ("Au", 4.08, "Au"), ("Ni", 3.52, "Ni")]:
    add(name, cubic(a), "F m -3 m", [(el, (0, 0, 0))], "fcc")
for name, a, el in [("Fe", 2.87, "Fe"), ("W", 3.165, "W"), ("Na", 4.29, "Na"), ("Mo", 3.147, "Mo")]:
    add(name, cubic(a), "I m -3 m", [(el, (0, 0, 0))], "bcc")
add("Po", cubic(3.359), "P m -3 m", [("Po", (0, 0, 0))], "simple cubic")
for name, a, (x, y) in [("CsCl", 4.12, ("Cs", "Cl")), ("CsBr", 4.29, ("Cs", "Br")),
                        ("TlBr", 3.97, ("Tl", "Br"))]:
    add(name, cubic(a), "P m -3 m", [(x, (0, 0, 0)), (y, (0.5, 0.5, 0.5))], "CsCl type")
for name, a, (x, y) in [("CaF2", 5.46, ("Ca", "F")), ("BaF2", 6.20, ("Ba", "F")),
                        ("CeO2", 5.41, ("Ce", "O")), ("Li2O", 4.61, ("O", "Li"))]:
    add(name, cubic(a), "F m -3 m", [(x, (0, 0, 0)), (y, (0.25, 0.25, 0.25))], "fluorite")
for name, a, (x, y) in [("ZnS", 5.41, ("Zn", "S")), ("GaAs", 5.65, ("Ga", "As")),
                        ("Si", 5.431, ("Si", "Si")), ("C_diamond", 3.567, ("C", "C"))]:
    add(name, cubic(a), "F -4 3 m", [(x, (0, 0, 0)), (y, (0.25, 0.25, 0.25))], "zincblende/diamond")
for name, a, (x, y, z) in [("SrTiO3", 3.905, ("Sr", "Ti", "O")), ("KNbO3", 4.02, ("K", "Nb", "O")),
                           ("BaZrO3", 4.19, ("Ba", "Zr", "O"))]:
    add(name, cubic(a), "P m -3 m", [(x, (0, 0, 0)), (y, (0.5, 0.5, 0.5)), (z, (0.5, 0.5, 0))],
        "cubic perovskite")
add("Cu3Au", cubic(3.75), "P m -3 m", [("Au", (0, 0, 0)), ("Cu", (0, 0.5, 0.5))], "L1_2")
add("ReO3", cubic(3.75), "P m -3 m", [("Re", (0, 0, 0)), ("O", (0.5, 0, 0))], "ReO3 type")

# hexagonal
add("Mg", hexa(3.21, 5.21), "P 63/m m c", [("Mg", (third, 2 * third, 0.25))], "hcp")
add("Ti", hexa(2.95, 4.68), "P 63/m m c", [("Ti", (third, 2 * third, 0.25))], "hcp")
add("Zn", hexa(2.66, 4.95), "P 63/m m c", [("Zn", (third, 2 * third, 0.25))], "hcp")
add("ZnO", hexa(3.25, 5.21), None, [("Zn", (third, 2 * third, 0)), ("Zn", (2 * third, third, 0.5)),
                                     ("O", (third, 2 * third, u_wz)), ("O", (2 * third, third, 0.5 + u_wz))],
    "wurtzite")
add("GaN", hexa(3.19, 5.19), None, [("Ga", (third, 2 * third, 0)), ("Ga", (2 * third, third, 0.5)),
                                     ("N", (third, 2 * third, 0.377)), ("N", (2 * third, third, 0.877))],
    "wurtzite")
add("graphite", hexa(2.46, 6.71), "P 63/m m c", [("C", (0, 0, 0.25)), ("C", (third, 2 * third, 0.25))],
    "AB graphite")
add("NiAs", hexa(3.62, 5.03), "P 63/m m c", [("Ni", (0, 0, 0)), ("As", (third, 2 * third, 0.25))], "NiAs type")
add("hBN", hexa(2.50, 6.66), "P 63/m m c", [("B", (third, 2 * third, 0.25)), ("N", (2 * third, third, 0.25))],
    "hexagonal BN")
add("AlB2", hexa(3.01, 3.26), "P 6/m m m", [("Al", (0, 0, 0)), ("B", (third, 2 * third, 0.5))], "AlB2 type")
add("CdI2", hexa(4.24, 6.84), None, [("Cd", (0, 0, 0)), ("I", (third, 2 * third, 0.25)),
                                      ("I", (2 * third, third, 0.75))], "CdI2 type")

# tetragonal
add("TiO2_rutile", tetra(4.594, 2.959), "P 42/m n m", [("Ti", (0, 0, 0)), ("O", (0.305, 0.305, 0))], "rutile")
add("SnO2", tetra(4.737, 3.186), "P 42/m n m", [("Sn", (0, 0, 0)), ("O", (0.307, 0.307, 0))], "rutile")
add("In", tetra(3.25, 4.95), "I 4/m m m", [("In", (0, 0, 0))], "body-centred tetragonal")
add("CuAu", tetra(2.80, 3.67), "P 4/m m m", [("Au", (0, 0, 0)), ("Cu", (0.5, 0.5, 0.5))], "L1_0 (primitive)")
add("BaTiO3_tet", tetra(3.99, 4.03), None, [("Ba", (0, 0, 0)), ("Ti", (0.5, 0.5, 0.512)),
                                             ("O", (0.5, 0.5, 0.975)), ("O", (0.5, 0, 0.488)),
                                             ("O", (0, 0.5, 0.488))], "P4mm perovskite")

# orthorhombic, monoclinic, triclinic, rhombohedral
add("ortho_AB", (3.1, 3.7, 4.3, 90, 90, 90), "P m m m", [("Cu", (0, 0, 0)), ("Zn", (0.5, 0.5, 0.5))],
    "orthorhombic CsCl-like")
add("ortho_I", (2.9, 3.4, 4.1, 90, 90, 90), "I m m m", [("Ga", (0, 0, 0))], "body-centred orthorhombic")
add("mono_P", (3.3, 3.8, 4.4, 90, 101.5, 90), "P 2/m", [("Se", (0, 0, 0))], "primitive monoclinic")
add("Bi_rhombo", (4.75, 4.75, 4.75, 57.23, 57.23, 57.23), "P -1", [("Bi", (0.237, 0.237, 0.237))],
    "A7 rhombohedral cell")
add("NaCl_primitive", (3.988, 3.988, 3.988, 60, 60, 60), None,
    [("Na", (0, 0, 0)), ("Cl", (0.5, 0.5, 0.5))], "rock salt, primitive rhombohedral setting")
add("Po_2x1x1", (6.718, 3.359, 3.359, 90, 90, 90), None, [("Po", (0, 0, 0)), ("Po", (0.5, 0, 0))],
    "simple cubic doubled along a")

rng = random.Random(20240611)
for k in range(4):
    cell = (round(rng.uniform(3.5, 5.5), 3), round(rng.uniform(3.5, 5.5), 3), round(rng.uniform(3.5, 5.5), 3),
            round(rng.uniform(75, 105), 2), round(rng.uniform(75, 105), 2), round(rng.uniform(75, 105), 2))
    els = rng.sample(["Li", "O", "Si", "Fe", "Cu", "S", "N", "Mg"], 3)
    sites = [(rng.choice(els), tuple(round(rng.random(), 4) for _ in range(3))) for _ in range(2 + k)]
    add(f"triclinic_{k + 1}", cell, None, sites, "random low-symmetry cell")
add("triclinic_inv", (4.1, 4.6, 5.2, 84.0, 97.0, 102.0), "P -1",
    [("Si", (0.13, 0.27, 0.41)), ("O", (0.31, 0.12, 0.07))], "centrosymmetric triclinic")


def fmt(v):
    return f"{v:.10f}".rstrip("0").rstrip(".") if v else "0.0"


def write(name, cell, group, sites, note):
    lines = [f"# {name}: {note}", f"data_{name}"]
    a, b, c, al, be, ga = cell
    lines += [f"_cell_length_a {a}", f"_cell_length_b {b}", f"_cell_length_c {c}",
              f"_cell_angle_alpha {al}", f"_cell_angle_beta {be}", f"_cell_angle_gamma {ga}"]
    if group:
        ops = closure(GROUPS[group])
        check_closed(expand(sites, ops), ops)
        lines += [f"_symmetry_space_group_name_H-M '{group}'", "loop_", "_symmetry_equiv_pos_as_xyz"]
        lines += [f"'{fmt_op(op)}'" for op in ops]
    else:
        lines.append("_symmetry_space_group_name_H-M 'P 1'")
    lines += ["loop_", "_atom_site_label", "_atom_site_type_symbol", "_atom_site_fract_x",
              "_atom_site_fract_y", "_atom_site_fract_z", "_atom_site_occupancy"]
    counts = {}
    for el, p in sites:
        counts[el] = counts.get(el, 0) + 1
        lines.append(f"{el}{counts[el]} {el} " + " ".join(fmt(x) for x in p) + " 1.0")
    (OUT / f"{name}.cif").write_text("\n".join(lines) + "\n")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for old in OUT.glob("*.cif"):
        old.unlink()
    for entry in ENTRIES:
        write(*entry)
    print(f"wrote {len(ENTRIES)} CIFs to {OUT}")


if __name__ == "__main__":
    main()
