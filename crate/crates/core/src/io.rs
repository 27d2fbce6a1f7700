//! Matrix files.
//!
//! A matrix is stored as JSON with its shape and a row-major list of
//! `[re, im]` pairs:
//!
//! ```json
//! {
//!   "rows": 2,
//!   "cols": 2,
//!   "data": [
//!     [0.7071067811865476, 0.0],
//!     [0.7071067811865476, 0.0],
//!     [0.7071067811865476, 0.0],
//!     [-0.7071067811865476, 0.0]
//!   ],
//!   "metadata": {"name": "beam splitter"}
//! }
//! ```
//!
//! `metadata` is optional. Numbers are written in shortest round-trip form, so
//! reading a written file gives back the same bits.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

impl MatrixFile {
    pub fn from_matrix(matrix: &ComplexMatrix) -> Self {
        Self {
            rows: matrix.rows(),
            cols: matrix.cols(),
            data: matrix.row_major().iter().map(|z| [z.re, z.im]).collect(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_metadata(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.metadata.insert(key.into(), value.into());
        self
    }

    /// Check shape and values and convert.
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::InvalidArgument(format!(
                "rows and cols must be at least 1, got {}x{}",
                self.rows, self.cols
            )));
        }
        if self.data.len() != self.rows * self.cols {
            return Err(Error::InvalidArgument(format!(
                "{}x{} matrix needs {} entries, found {}",
                self.rows,
                self.cols,
                self.rows * self.cols,
                self.data.len()
            )));
        }
        if let Some(k) = self
            .data
            .iter()
            .position(|e| !e[0].is_finite() || !e[1].is_finite())
        {
            return Err(Error::InvalidArgument(format!("entry {k} is not finite")));
        }
        let entries = self
            .data
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        ComplexMatrix::from_row_major(self.rows, self.cols, entries)
    }

    /// JSON text, one `[re, im]` pair per line.
    pub fn to_json(&self) -> String {
        let num = |x: f64| serde_json::to_string(&x).expect("finite number");
        let mut out = format!(
            "{{\n  \"rows\": {},\n  \"cols\": {},\n  \"data\": [\n",
            self.rows, self.cols
        );
        for (k, [re, im]) in self.data.iter().enumerate() {
            let sep = if k + 1 == self.data.len() { "" } else { "," };
            out.push_str(&format!("    [{}, {}]{sep}\n", num(*re), num(*im)));
        }
        out.push_str("  ]");
        if !self.metadata.is_empty() {
            let meta = serde_json::to_string(&self.metadata).expect("string map");
            out.push_str(&format!(",\n  \"metadata\": {meta}"));
        }
        out.push_str("\n}\n");
        out
    }
}

pub fn read_matrix_file(path: impl AsRef<Path>) -> Result<MatrixFile> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Read and validate a matrix. Shape and value problems are parse errors.
pub fn read_matrix(path: impl AsRef<Path>) -> Result<ComplexMatrix> {
    let path = path.as_ref();
    read_matrix_file(path)?
        .to_matrix()
        .map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
}

pub fn write_matrix_file(file: &MatrixFile, path: impl AsRef<Path>) -> Result<()> {
    file.to_matrix()?;
    let path = path.as_ref();
    fs::write(path, file.to_json()).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_matrix(matrix: &ComplexMatrix, path: impl AsRef<Path>) -> Result<()> {
    write_matrix_file(&MatrixFile::from_matrix(matrix), path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn write_text(dir: &tempfile::TempDir, name: &str, text: &str) -> std::path::PathBuf {
        let path = dir.path().join(name);
        fs::write(&path, text).unwrap();
        path
    }

    #[test]
    fn reads_beam_splitter() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_text(
            &dir,
            "bs.json",
            r#"{"rows": 2, "cols": 2, "data": [[0.70710678, 0], [0.70710678, 0], [0.70710678, 0], [-0.70710678, 0]]}"#,
        );
        let m = read_matrix(&path).unwrap();
        let h = FRAC_1_SQRT_2;
        let expected = ComplexMatrix::from_real_rows(&[[h, h], [h, -h]]).unwrap();
        assert!(m.distance(&expected) < 1e-8);
    }

    #[test]
    fn reads_scalar_with_metadata() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_text(
            &dir,
            "one.json",
            r#"{"rows": 1, "cols": 1, "data": [[1, 0]], "metadata": {"note": "unit"}}"#,
        );
        assert_eq!(read_matrix(&path).unwrap(), ComplexMatrix::identity(1));
        assert_eq!(read_matrix_file(&path).unwrap().metadata["note"], "unit");
    }

    #[test]
    fn rejects_length_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_text(
            &dir,
            "short.json",
            r#"{"rows": 2, "cols": 2, "data": [[1, 0], [0, 0], [0, 0]]}"#,
        );
        assert!(matches!(read_matrix(&path), Err(Error::Parse { .. })));
    }

    #[test]
    fn rejects_malformed_and_non_finite() {
        let dir = tempfile::tempdir().unwrap();
        for (name, text) in [
            ("garbage.json", "not json"),
            ("nan.json", r#"{"rows": 1, "cols": 1, "data": [[NaN, 0]]}"#),
            (
                "huge.json",
                r#"{"rows": 1, "cols": 1, "data": [[1e999, 0]]}"#,
            ),
            (
                "triple.json",
                r#"{"rows": 1, "cols": 1, "data": [[1, 0, 0]]}"#,
            ),
            ("zero.json", r#"{"rows": 0, "cols": 1, "data": []}"#),
        ] {
            let path = write_text(&dir, name, text);
            assert!(
                matches!(read_matrix(&path), Err(Error::Parse { .. })),
                "{name}"
            );
        }
    }

    #[test]
    fn missing_file_is_io_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            read_matrix(dir.path().join("absent.json")),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        let m = ComplexMatrix::from_rows(&[
            vec![
                Complex64::new(0.1, -1.0 / 3.0),
                Complex64::new(1e-300, 2.5e17),
            ],
            vec![
                Complex64::new(-0.0, std::f64::consts::PI),
                Complex64::new(123.456, 0.0),
            ],
        ])
        .unwrap();
        write_matrix(&m, &path).unwrap();
        assert_eq!(read_matrix(&path).unwrap(), m);

        write_matrix(&ComplexMatrix::identity(3), &path).unwrap();
        assert_eq!(read_matrix(&path).unwrap(), ComplexMatrix::identity(3));
    }

    #[test]
    fn rejects_empty_shape_on_write() {
        let dir = tempfile::tempdir().unwrap();
        let file = MatrixFile {
            rows: 0,
            cols: 2,
            data: vec![],
            metadata: BTreeMap::new(),
        };
        assert!(matches!(
            write_matrix_file(&file, dir.path().join("x.json")),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn unwritable_path() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("no").join("such").join("dir.json");
        assert!(matches!(
            write_matrix(&ComplexMatrix::identity(1), path),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn metadata_is_written() {
        let file =
            MatrixFile::from_matrix(&ComplexMatrix::identity(1)).with_metadata("kind", "unitary");
        let text = file.to_json();
        let back: MatrixFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, file);
    }
}
