//! JSON matrix files: `{"dim": 3, "entries": [[[re, im], ...], ...]}`.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use symgate_core::linalg::ComplexMatrix;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub dim: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            dim: m.dim(),
            entries: m
                .rows()
                .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, CliError> {
        if !(2..=4).contains(&self.dim) {
            return Err(CliError::Parse(format!(
                "dim must be 2, 3 or 4, got {}",
                self.dim
            )));
        }
        if self.entries.len() != self.dim {
            return Err(CliError::Parse(format!(
                "expected {} rows, found {}",
                self.dim,
                self.entries.len()
            )));
        }
        let mut data = Vec::with_capacity(self.dim * self.dim);
        for (r, row) in self.entries.iter().enumerate() {
            if row.len() != self.dim {
                return Err(CliError::Parse(format!(
                    "row {r} has {} entries, expected {}",
                    row.len(),
                    self.dim
                )));
            }
            for &[re, im] in row {
                if !re.is_finite() || !im.is_finite() {
                    return Err(CliError::Parse(format!("row {r} has a non-finite entry")));
                }
                data.push(Complex64::new(re, im));
            }
        }
        ComplexMatrix::from_vec(self.dim, data).map_err(|e| CliError::Parse(e.to_string()))
    }
}

pub fn parse(text: &str) -> Result<ComplexMatrix, CliError> {
    let file: MatrixFile =
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("matrix file: {e}")))?;
    file.to_matrix()
}

pub fn read(path: &Path) -> Result<ComplexMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}
