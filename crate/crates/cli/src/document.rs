//! JSON file formats: matrices as `[re, im]` pairs and constraint-form specs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use eplab_core::subspace::ConstraintSpec;
use eplab_core::{c, ComplexMatrix};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// `{"rows": m, "cols": n, "data": [[[re, im], ...], ...]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<[f64; 2]>>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let data = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
            .collect();
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data,
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, String> {
        if self.data.len() != self.rows {
            return Err(format!("declared {} rows, found {}", self.rows, self.data.len()));
        }
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for (i, row) in self.data.iter().enumerate() {
            if row.len() != self.cols {
                return Err(format!(
                    "row {} has {} entries, declared {} columns",
                    i + 1,
                    row.len(),
                    self.cols
                ));
            }
            for (j, &[re, im]) in row.iter().enumerate() {
                if !(re.is_finite() && im.is_finite()) {
                    return Err(format!("non-finite entry at row {}, column {}", i + 1, j + 1));
                }
                entries.push(c(re, im));
            }
        }
        ComplexMatrix::new(self.rows, self.cols, entries).map_err(|e| e.to_string())
    }

    /// One matrix row per line; numbers use the shortest round-trip form.
    pub fn to_json(&self) -> String {
        let num = |x: f64| serde_json::to_string(&x).expect("finite float");
        let mut s = format!(
            "{{\n  \"rows\": {},\n  \"cols\": {},\n  \"data\": [",
            self.rows, self.cols
        );
        for (i, row) in self.data.iter().enumerate() {
            s.push_str(if i == 0 { "\n    [" } else { ",\n    [" });
            for (j, [re, im]) in row.iter().enumerate() {
                if j > 0 {
                    s.push_str(", ");
                }
                let _ = write!(s, "[{}, {}]", num(*re), num(*im));
            }
            s.push(']');
        }
        s.push_str(if self.data.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
        s
    }
}

/// Constraint form with 1-based indices. `coefficients` maps each
/// constrained index to the coefficients of the free coordinates, in the
/// order of `free_indices`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub ambient_dim: usize,
    pub free_indices: Vec<usize>,
    pub constrained_indices: Vec<usize>,
    #[serde(default)]
    pub coefficients: BTreeMap<String, Vec<[f64; 2]>>,
    pub basis_free_coords: MatrixDocument,
}

impl SpecDocument {
    pub fn to_inputs(&self) -> Result<(ConstraintSpec, ComplexMatrix), String> {
        let zero_based = |v: &[usize], what: &str| -> Result<Vec<usize>, String> {
            v.iter()
                .map(|&i| i.checked_sub(1).ok_or_else(|| format!("{what} are 1-based; found 0")))
                .collect()
        };
        let free = zero_based(&self.free_indices, "free_indices")?;
        let constrained = zero_based(&self.constrained_indices, "constrained_indices")?;

        let mut coefficients = Vec::with_capacity(constrained.len());
        for idx in &self.constrained_indices {
            let a = self
                .coefficients
                .get(&idx.to_string())
                .ok_or_else(|| format!("no coefficients for constrained index {idx}"))?;
            coefficients.push(a.iter().map(|&[re, im]| c(re, im)).collect());
        }
        if let Some(extra) = self
            .coefficients
            .keys()
            .find(|k| !self.constrained_indices.iter().any(|i| i.to_string() == **k))
        {
            return Err(format!(
                "coefficients given for `{extra}`, which is not a constrained index"
            ));
        }
        let spec = ConstraintSpec::new(self.ambient_dim, free, constrained, coefficients).map_err(|e| e.to_string())?;
        let x = self.basis_free_coords.to_matrix()?;
        Ok((spec, x))
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn read_matrix(path: &Path) -> CliResult<ComplexMatrix> {
    let doc: MatrixDocument = read_json(path)?;
    doc.to_matrix().map_err(|message| CliError::Parse {
        path: path.to_path_buf(),
        message,
    })
}

pub fn read_spec(path: &Path) -> CliResult<(ConstraintSpec, ComplexMatrix)> {
    let doc: SpecDocument = read_json(path)?;
    doc.to_inputs().map_err(|message| CliError::Parse {
        path: path.to_path_buf(),
        message,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn emits_one_row_per_line() {
        let m = ComplexMatrix::from_rows(&[vec![c(0.1, 0.0), c(0.2, -1.5)]]);
        let json = MatrixDocument::from_matrix(&m).to_json();
        assert_eq!(
            json,
            "{\n  \"rows\": 1,\n  \"cols\": 2,\n  \"data\": [\n    [[0.1, 0.0], [0.2, -1.5]]\n  ]\n}\n"
        );
    }

    #[test]
    fn parse_emit_round_trips_bits() {
        let vals = [0.1, -0.0, 1e-300, f64::MAX, 1.0 / 3.0, 5e-324, -2.5e17];
        let m = ComplexMatrix::from_fn(vals.len(), 2, |i, j| c(vals[i], vals[(i + j) % vals.len()]));
        let doc = MatrixDocument::from_matrix(&m);
        let back: MatrixDocument = serde_json::from_str(&doc.to_json()).unwrap();
        let m2 = back.to_matrix().unwrap();
        for (x, y) in m.as_slice().iter().zip(m2.as_slice()) {
            assert_eq!(x.re.to_bits(), y.re.to_bits());
            assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
    }

    #[test]
    fn empty_matrix_round_trips() {
        let doc = MatrixDocument::from_matrix(&ComplexMatrix::zeros(0, 3));
        let back: MatrixDocument = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(back.to_matrix().unwrap().shape(), (0, 3));
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let doc = MatrixDocument {
            rows: 2,
            cols: 2,
            data: vec![vec![[1.0, 0.0], [0.0, 0.0]], vec![[1.0, 0.0]]],
        };
        assert!(doc.to_matrix().unwrap_err().contains("row 2"));
    }

    #[test]
    fn spec_indices_are_one_based() {
        let doc = SpecDocument {
            ambient_dim: 2,
            free_indices: vec![1],
            constrained_indices: vec![2],
            coefficients: BTreeMap::from([("2".to_string(), vec![[0.0, 0.0]])]),
            basis_free_coords: MatrixDocument::from_matrix(&ComplexMatrix::identity(1)),
        };
        let (spec, x) = doc.to_inputs().unwrap();
        assert_eq!(spec.free_indices(), &[0]);
        assert_eq!(spec.constrained_indices(), &[1]);
        assert_eq!(x, ComplexMatrix::identity(1));

        let zero = SpecDocument {
            free_indices: vec![0],
            ..doc.clone()
        };
        assert!(zero.to_inputs().is_err());

        let missing = SpecDocument {
            coefficients: BTreeMap::new(),
            ..doc
        };
        assert!(missing.to_inputs().unwrap_err().contains("no coefficients"));
    }
}
