//! Flat-file formats: complex and colored-complex JSON, group action JSON,
//! MatrixMarket operator export with JSON basis manifests.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::GroupAction;
use crate::colored::{ColoredComplex, ColoredError};
use crate::complex::{build_complex, ComplexError, SimplicialComplex};
use crate::operators::{BasisLabel, ChainOperator};

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Colored(#[from] ColoredError),
    #[error("invalid file: {0}")]
    Invalid(String),
}

/// The complex file format: maximal cells plus optional colouring data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexFile {
    pub maximal_cells: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_colors: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_colors: Option<Vec<(u32, u32, u32)>>,
}

/// Group action file: generators as permutations in one-line notation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFile {
    pub generators: Vec<Vec<u32>>,
}

pub fn read_complex_file(path: impl AsRef<Path>) -> Result<ComplexFile, IoError> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn load_complex(path: impl AsRef<Path>) -> Result<SimplicialComplex, IoError> {
    let file = read_complex_file(path)?;
    Ok(build_complex(&file.maximal_cells)?)
}

/// Loads and validates a colored complex; requires `d` plus vertex colours
/// or a full set of edge colours.
pub fn load_colored_complex(path: impl AsRef<Path>) -> Result<ColoredComplex, IoError> {
    let file = read_complex_file(path)?;
    colored_from_file(&file)
}

pub fn colored_from_file(file: &ComplexFile) -> Result<ColoredComplex, IoError> {
    let d = file
        .d
        .ok_or_else(|| IoError::Invalid("colored complex file must set \"d\"".into()))?;
    let complex = build_complex(&file.maximal_cells)?;
    let colored = match (&file.vertex_colors, &file.edge_colors) {
        (vc, Some(ec)) => ColoredComplex::from_edge_colors(complex, d, vc.clone(), ec)?,
        (Some(vc), None) => ColoredComplex::new(complex, d, vc.clone())?,
        (None, None) => {
            return Err(IoError::Invalid(
                "colored complex file needs vertex_colors or edge_colors".into(),
            ))
        }
    };
    Ok(colored)
}

pub fn save_complex(x: &SimplicialComplex, path: impl AsRef<Path>) -> Result<(), IoError> {
    let file = ComplexFile {
        maximal_cells: x.maximal_cells().iter().map(|c| c.vertices().to_vec()).collect(),
        d: None,
        vertex_colors: None,
        edge_colors: None,
    };
    write_json(&file, path)
}

pub fn save_colored_complex(x: &ColoredComplex, path: impl AsRef<Path>) -> Result<(), IoError> {
    let file = ComplexFile {
        maximal_cells: x.complex.maximal_cells().iter().map(|c| c.vertices().to_vec()).collect(),
        d: Some(x.d),
        vertex_colors: Some(x.vertex_colors.clone()),
        edge_colors: None,
    };
    write_json(&file, path)
}

pub fn load_group_action(path: impl AsRef<Path>) -> Result<GroupAction, IoError> {
    let text = std::fs::read_to_string(path)?;
    let file: GroupFile = serde_json::from_str(&text)?;
    Ok(GroupAction::new(file.generators))
}

pub fn save_group_action(action: &GroupAction, path: impl AsRef<Path>) -> Result<(), IoError> {
    write_json(&GroupFile { generators: action.generators.clone() }, path)
}

fn write_json<T: Serialize>(value: &T, path: impl AsRef<Path>) -> Result<(), IoError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// MatrixMarket coordinate format, complex-valued, 1-based indices.
pub fn matrix_market(op: &ChainOperator) -> String {
    let mut out = String::from("%%MatrixMarket matrix coordinate complex general\n");
    out.push_str(&format!("{} {} {}\n", op.nrows(), op.ncols(), op.entries().len()));
    for &(r, c, v) in op.entries() {
        out.push_str(&format!("{} {} {:.17e} {:.17e}\n", r + 1, c + 1, v.re, v.im));
    }
    out
}

/// Basis manifest: the cell (or oriented cell) behind every matrix index.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisManifest {
    pub kind: String,
    pub dim: usize,
    pub inner_scale: f64,
    /// Cell vertex lists; oriented entries carry an explicit sign.
    pub labels: Vec<(Vec<u32>, i8)>,
}

pub fn basis_manifest(basis: &crate::operators::ChainBasis) -> BasisManifest {
    let labels = basis
        .labels
        .iter()
        .map(|l| match l {
            BasisLabel::Cell(c) => (c.vertices().to_vec(), 1i8),
            BasisLabel::Oriented(c, s) => (c.vertices().to_vec(), *s),
        })
        .collect();
    BasisManifest {
        kind: format!("{:?}", basis.kind),
        dim: basis.dim,
        inner_scale: basis.inner_scale,
        labels,
    }
}

/// Writes `<path>` as MatrixMarket and `<path>.basis.json` with the source
/// and target manifests.
pub fn save_operator(op: &ChainOperator, path: impl AsRef<Path>) -> Result<(), IoError> {
    let path = path.as_ref();
    std::fs::write(path, matrix_market(op))?;
    #[derive(Serialize)]
    struct Sidecar {
        source: BasisManifest,
        target: BasisManifest,
    }
    let sidecar = Sidecar {
        source: basis_manifest(&op.source),
        target: basis_manifest(&op.target),
    };
    let mut sidecar_path = path.as_os_str().to_owned();
    sidecar_path.push(".basis.json");
    let mut text = serde_json::to_string_pretty(&sidecar)?;
    text.push('\n');
    std::fs::write(sidecar_path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::cycle;

    #[test]
    fn complex_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c6.json");
        let x = cycle(6);
        save_complex(&x, &p).unwrap();
        let y = load_complex(&p).unwrap();
        for d in 0..=x.dim() {
            assert_eq!(x.cells(d), y.cells(d));
        }
    }

    #[test]
    fn colored_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("trip.json");
        let x = crate::colored::tripartite_colored(2);
        save_colored_complex(&x, &p).unwrap();
        let y = load_colored_complex(&p).unwrap();
        assert_eq!(x.vertex_colors, y.vertex_colors);
        assert_eq!(x.d, y.d);
        assert_eq!(x.complex.cells(2), y.complex.cells(2));
    }

    #[test]
    fn inconsistent_edge_colors_identified() {
        let file = ComplexFile {
            maximal_cells: (0..6).map(|i| vec![i, (i + 1) % 6]).collect(),
            d: Some(3),
            vertex_colors: None,
            edge_colors: Some(vec![(0, 1, 1), (1, 0, 1)]),
        };
        let err = colored_from_file(&file).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("(0,1)") || msg.contains("(1,0)"), "unhelpful: {msg}");
    }

    #[test]
    fn matrix_market_header() {
        let x = cycle(3);
        let a = crate::operators::adjacency(&x, 0, 1).unwrap();
        let mm = matrix_market(&a);
        assert!(mm.starts_with("%%MatrixMarket matrix coordinate complex general\n3 3 6\n"));
    }
}
