//! Matrix files:
//!
//! ```json
//! { "field": {"kind": "Fp", "p": 3}, "rows": 2, "cols": 2,
//!   "entries": [["1", "0"], ["1", "0"]] }
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::FieldDescriptor;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub field: FieldDescriptor,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &Matrix) -> Self {
        MatrixFile { field: m.field(), rows: m.rows(), cols: m.cols(), entries: m.to_strings() }
    }

    pub fn to_matrix(&self) -> Result<Matrix> {
        let field = self.field.validate()?;
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::ShapeMismatch("rows and cols must be positive".into()));
        }
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(Error::ShapeMismatch(format!(
                "entries do not form a {}x{} array",
                self.rows, self.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .flatten()
            .map(|s| field.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(field, self.rows, self.cols, entries)
    }
}

impl Matrix {
    pub fn from_json(text: &str) -> Result<Matrix> {
        let file: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.to_matrix()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(MatrixFile::from_matrix(self)).expect("matrix file serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixFile::from_matrix(self)).expect("matrix file serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_fields() {
        let m = Matrix::from_json(r#"{"field":{"kind":"Qi"},"rows":1,"cols":2,"entries":[["1/2+3/4i","0-1i"]]}"#)
            .unwrap();
        assert_eq!(m.to_strings(), vec![vec!["1/2+3/4i", "0-1i"]]);
        let m = Matrix::from_json(r#"{"field":{"kind":"Fp","p":3},"rows":1,"cols":1,"entries":[["2"]]}"#).unwrap();
        assert_eq!(m.field(), FieldDescriptor::PrimeField { p: 3 });
        assert_eq!(Matrix::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn rejects_bad_files() {
        for bad in [
            r#"{"field":{"kind":"Fp","p":3},"rows":1,"cols":1,"entries":[["3"]]}"#,
            r#"{"field":{"kind":"Fp","p":4},"rows":1,"cols":1,"entries":[["1"]]}"#,
            r#"{"field":{"kind":"Qi"},"rows":1,"cols":1,"entries":[["1/0"]]}"#,
            r#"{"field":{"kind":"Qi"},"rows":2,"cols":1,"entries":[["1"]]}"#,
            r#"{"field":{"kind":"Qi"},"rows":0,"cols":0,"entries":[]}"#,
            r#"{"field":{"kind":"Qr"},"rows":1,"cols":1,"entries":[["1"]]}"#,
            r#"{"field":{"kind":"Qi"},"rows":1,"cols":1,"entries":[[1]]}"#,
        ] {
            assert!(Matrix::from_json(bad).is_err(), "{bad}");
        }
    }
}
