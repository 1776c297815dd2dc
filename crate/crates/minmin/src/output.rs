//! CSV and OBJ writers.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{CliError, CliResult};

/// Comma-separated text with a header row. Values use the shortest
/// representation that round-trips.
pub fn csv_string(header: &[String], rows: &[Vec<f64>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// A structured `rows × cols` grid of 3D vertices, split into triangles.
#[derive(Debug, Clone, PartialEq)]
pub struct GridMesh {
    pub rows: usize,
    pub cols: usize,
    /// Row-major.
    pub vertices: Vec<[f64; 3]>,
}

impl GridMesh {
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut t = Vec::with_capacity(2 * self.rows.saturating_sub(1) * self.cols.saturating_sub(1));
        for i in 0..self.rows.saturating_sub(1) {
            for j in 0..self.cols.saturating_sub(1) {
                let a = i * self.cols + j;
                let b = a + self.cols;
                t.push([a, b, b + 1]);
                t.push([a, b + 1, a + 1]);
            }
        }
        t
    }

    /// ASCII OBJ: `v` records then 1-based `f` records.
    pub fn to_obj(&self) -> String {
        let mut out = format!("# {} x {} grid\n", self.rows, self.cols);
        for v in &self.vertices {
            let _ = writeln!(out, "v {} {} {}", v[0], v[1], v[2]);
        }
        for [a, b, c] in self.triangles() {
            let _ = writeln!(out, "f {} {} {}", a + 1, b + 1, c + 1);
        }
        out
    }
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let s = csv_string(&["u".into(), "f".into()], &[vec![0.5, -1.0], vec![1e-20, 2.0]]);
        assert_eq!(s, "u,f\n0.5,-1\n0.00000000000000000001,2\n");
    }

    #[test]
    fn obj_counts() {
        let mesh = GridMesh {
            rows: 3,
            cols: 4,
            vertices: vec![[0.0; 3]; 12],
        };
        let obj = mesh.to_obj();
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 12);
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 12);
        assert!(obj.contains("f 1 5 6\n"));
    }
}
