//! A practical CIF 1.1 subset: data blocks, items, loops, quoted and
//! semicolon-delimited values, comments.
//!
//! Only the first data block is read. Values are kept as raw text; numeric
//! accessors strip standard-uncertainty suffixes such as `5.64(2)`.

use nalgebra::Vector3;
use thiserror::Error;

use crate::elements;
use crate::structure::{AtomSite, CrystalStructure, Lattice, StructureError, MIN_SITE_SEPARATION};
use crate::symmetry::{expand_sites, SymmetryError, SymmetryOp};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CifError {
    #[error("malformed CIF at line {line}: {reason}")]
    MalformedCif { line: usize, reason: String },
    #[error("missing field {0}")]
    MissingField(String),
    #[error("unknown element '{0}'")]
    UnknownElement(String),
    #[error("symmetry expansion overlaps {0} and {1}")]
    InconsistentSymmetry(String, String),
    #[error("partial occupancy on site {0} is not supported")]
    UnsupportedOccupancy(String),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

const SYMOP_TAGS: [&str; 2] = [
    "_symmetry_equiv_pos_as_xyz",
    "_space_group_symop_operation_xyz",
];

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CifLoop {
    /// Lower-cased tag names.
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CifLoop {
    pub fn column(&self, tag: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == tag)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CifDocument {
    pub block: String,
    /// Non-loop items in file order; tags lower-cased.
    pub items: Vec<(String, String)>,
    pub loops: Vec<CifLoop>,
    /// Symmetry operation strings, when the block lists any.
    pub symmetry_xyz: Option<Vec<String>>,
}

impl CifDocument {
    pub fn item(&self, tag: &str) -> Option<&str> {
        self.items
            .iter()
            .find(|(k, _)| k == tag)
            .map(|(_, v)| v.as_str())
    }

    pub fn number(&self, tag: &str) -> Option<f64> {
        self.item(tag).and_then(parse_number)
    }

    /// The loop containing `tag`, if any.
    pub fn loop_with(&self, tag: &str) -> Option<&CifLoop> {
        self.loops.iter().find(|l| l.column(tag).is_some())
    }
}

/// Parses a CIF number, dropping a trailing `(uncertainty)`. `.` and `?`
/// (inapplicable / unknown) give `None`.
pub fn parse_number(raw: &str) -> Option<f64> {
    let t = raw.trim();
    let t = match t.find('(') {
        Some(i) if t.ends_with(')') => &t[..i],
        _ => t,
    };
    if t == "." || t == "?" {
        return None;
    }
    t.parse().ok()
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Data(String),
    Loop,
    Tag(String),
    Value(String),
    /// `save_`, `global_`, `stop_`: recognised and skipped.
    Reserved,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, CifError> {
    let mut out = Vec::new();
    let mut lines = text.lines().enumerate().peekable();
    while let Some((idx, line)) = lines.next() {
        let lineno = idx + 1;
        if let Some(first) = line.strip_prefix(';') {
            let mut value = first.to_string();
            let mut closed = false;
            for (_, next) in lines.by_ref() {
                if next.starts_with(';') {
                    closed = true;
                    break;
                }
                value.push('\n');
                value.push_str(next);
            }
            if !closed {
                return Err(CifError::MalformedCif {
                    line: lineno,
                    reason: "unterminated text field".into(),
                });
            }
            out.push((lineno, Token::Value(value.trim().to_string())));
            continue;
        }
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c == '#' {
                break;
            }
            if c == '\'' || c == '"' {
                // A quote closes only when followed by whitespace or end of line.
                let mut j = i + 1;
                let mut end = None;
                while j < chars.len() {
                    if chars[j] == c && (j + 1 == chars.len() || chars[j + 1].is_whitespace()) {
                        end = Some(j);
                        break;
                    }
                    j += 1;
                }
                let Some(end) = end else {
                    return Err(CifError::MalformedCif {
                        line: lineno,
                        reason: "unterminated quoted string".into(),
                    });
                };
                out.push((lineno, Token::Value(chars[i + 1..end].iter().collect())));
                i = end + 1;
                continue;
            }
            let start = i;
            while i < chars.len() && !chars[i].is_whitespace() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let lower = word.to_ascii_lowercase();
            let token = if lower.starts_with("data_") {
                Token::Data(word[5..].to_string())
            } else if lower == "loop_" {
                Token::Loop
            } else if lower.starts_with("save_") || lower == "global_" || lower == "stop_" {
                Token::Reserved
            } else if word.starts_with('_') {
                Token::Tag(lower)
            } else {
                Token::Value(word)
            };
            out.push((lineno, token));
        }
    }
    Ok(out)
}

/// Parses the first data block of `text`.
pub fn parse_cif(text: &str) -> Result<CifDocument, CifError> {
    let tokens = tokenize(text)?;
    let mut doc = CifDocument::default();
    let mut seen_block = false;
    let mut i = 0;
    while i < tokens.len() {
        let (line, ref tok) = tokens[i];
        match tok {
            Token::Data(name) => {
                if seen_block {
                    break;
                }
                seen_block = true;
                doc.block = name.clone();
                i += 1;
            }
            Token::Reserved => i += 1,
            Token::Tag(tag) => match tokens.get(i + 1) {
                Some((_, Token::Value(v))) => {
                    doc.items.push((tag.clone(), v.clone()));
                    i += 2;
                }
                _ => {
                    return Err(CifError::MalformedCif {
                        line,
                        reason: format!("tag {tag} has no value"),
                    })
                }
            },
            Token::Loop => {
                let mut columns = Vec::new();
                i += 1;
                while let Some((_, Token::Tag(t))) = tokens.get(i) {
                    columns.push(t.clone());
                    i += 1;
                }
                if columns.is_empty() {
                    return Err(CifError::MalformedCif {
                        line,
                        reason: "loop_ without tags".into(),
                    });
                }
                let mut values = Vec::new();
                while let Some((_, Token::Value(v))) = tokens.get(i) {
                    values.push(v.clone());
                    i += 1;
                }
                if values.len() % columns.len() != 0 {
                    return Err(CifError::MalformedCif {
                        line,
                        reason: format!(
                            "loop has {} values for {} columns",
                            values.len(),
                            columns.len()
                        ),
                    });
                }
                let rows = values.chunks(columns.len()).map(|c| c.to_vec()).collect();
                doc.loops.push(CifLoop { columns, rows });
            }
            Token::Value(v) => {
                return Err(CifError::MalformedCif {
                    line,
                    reason: format!("value '{v}' without a tag"),
                })
            }
        }
    }
    doc.symmetry_xyz = symmetry_strings(&doc);
    Ok(doc)
}

fn symmetry_strings(doc: &CifDocument) -> Option<Vec<String>> {
    for tag in SYMOP_TAGS {
        if let Some(lp) = doc.loop_with(tag) {
            let col = lp.column(tag).unwrap();
            return Some(lp.rows.iter().map(|r| r[col].clone()).collect());
        }
        if let Some(v) = doc.item(tag) {
            return Some(vec![v.to_string()]);
        }
    }
    None
}

/// Resolves an element from a type symbol or label: leading letters, with
/// digits and charge suffixes (`Fe3+`, `O2-`, `Na1`) stripped.
pub fn element_from_symbol(raw: &str) -> Result<u8, CifError> {
    let letters: String = raw.chars().take_while(|c| c.is_ascii_alphabetic()).collect();
    let unknown = || CifError::UnknownElement(raw.to_string());
    if letters.is_empty() {
        return Err(unknown());
    }
    if letters.len() >= 2 {
        if let Some(e) = elements::by_symbol(&letters[..2]) {
            return Ok(e.z);
        }
    }
    elements::by_symbol(&letters[..1])
        .map(|e| e.z)
        .ok_or_else(unknown)
}

fn required(doc: &CifDocument, tag: &str) -> Result<f64, CifError> {
    doc.number(tag)
        .ok_or_else(|| CifError::MissingField(tag.to_string()))
}

/// Builds the full unit cell. When the block lists symmetry operations the
/// sites are expanded by them and the parsed operations are returned.
pub fn cif_to_structure(
    doc: &CifDocument,
    id: &str,
) -> Result<(CrystalStructure, Vec<SymmetryOp>), CifError> {
    let lattice = Lattice::from_parameters(
        required(doc, "_cell_length_a")?,
        required(doc, "_cell_length_b")?,
        required(doc, "_cell_length_c")?,
        required(doc, "_cell_angle_alpha")?,
        required(doc, "_cell_angle_beta")?,
        required(doc, "_cell_angle_gamma")?,
    )?;

    let atoms = doc
        .loop_with("_atom_site_fract_x")
        .ok_or_else(|| CifError::MissingField("_atom_site_fract_x".into()))?;
    let col = |tag: &str| {
        atoms
            .column(tag)
            .ok_or_else(|| CifError::MissingField(tag.to_string()))
    };
    let (cx, cy, cz) = (
        col("_atom_site_fract_x")?,
        col("_atom_site_fract_y")?,
        col("_atom_site_fract_z")?,
    );
    let species_col = atoms
        .column("_atom_site_type_symbol")
        .or_else(|| atoms.column("_atom_site_label"))
        .ok_or_else(|| CifError::MissingField("_atom_site_type_symbol".into()))?;
    let label_col = atoms.column("_atom_site_label").unwrap_or(species_col);
    let occ_col = atoms.column("_atom_site_occupancy");

    let mut asym = Vec::with_capacity(atoms.rows.len());
    for row in &atoms.rows {
        if let Some(c) = occ_col {
            if let Some(occ) = parse_number(&row[c]) {
                if occ < 1.0 - 1e-6 {
                    return Err(CifError::UnsupportedOccupancy(row[label_col].clone()));
                }
            }
        }
        let coord = |c: usize, tag: &str| {
            parse_number(&row[c]).ok_or_else(|| CifError::MissingField(tag.to_string()))
        };
        let frac = Vector3::new(
            coord(cx, "_atom_site_fract_x")?,
            coord(cy, "_atom_site_fract_y")?,
            coord(cz, "_atom_site_fract_z")?,
        );
        asym.push((element_from_symbol(&row[species_col])?, frac));
    }

    let ops = match &doc.symmetry_xyz {
        Some(strings) => strings
            .iter()
            .map(|s| SymmetryOp::from_xyz(s))
            .collect::<Result<Vec<_>, _>>()?,
        None => Vec::new(),
    };
    let expanded = if ops.is_empty() {
        asym
    } else {
        expand_sites(&lattice, &asym, &ops, MIN_SITE_SEPARATION).map_err(|(a, b)| {
            let name = |z: u8| elements::by_z(z).map_or("?", |e| e.symbol).to_string();
            CifError::InconsistentSymmetry(name(a), name(b))
        })?
    };
    let sites = expanded
        .into_iter()
        .map(|(z, f)| AtomSite::new(z, [f.x, f.y, f.z]))
        .collect();
    Ok((CrystalStructure::new(lattice, sites, id)?, ops))
}

/// Parses CIF text straight into a structure.
pub fn read_cif(text: &str, id: &str) -> Result<(CrystalStructure, Vec<SymmetryOp>), CifError> {
    cif_to_structure(&parse_cif(text)?, id)
}
