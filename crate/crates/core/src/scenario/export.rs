//! Delimited text for cuts and spectra, raw binary plus sidecar for grids.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ComplexField2D, TransverseGrid};

/// One named column with its unit.
pub struct Column<'a> {
    pub name: &'a str,
    pub unit: &'a str,
    pub values: Vec<f64>,
}

/// Whitespace-delimited table. `#` lines carry the notes and a
/// `name [unit]` description of every column, then the bare column names.
pub fn write_table(path: &Path, notes: &[String], columns: &[Column]) -> Result<()> {
    let rows = columns.first().map_or(0, |c| c.values.len());
    if columns.iter().any(|c| c.values.len() != rows) {
        return Err(Error::GridMismatch(format!(
            "{}: columns of unequal length",
            path.display()
        )));
    }
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let mut body = || -> std::io::Result<()> {
        for n in notes {
            writeln!(w, "# {n}")?;
        }
        for c in columns {
            writeln!(w, "# {} [{}]", c.name, c.unit)?;
        }
        let names: Vec<&str> = columns.iter().map(|c| c.name).collect();
        writeln!(w, "# {}", names.join("\t"))?;
        for i in 0..rows {
            let line: Vec<String> = columns.iter().map(|c| format!("{:e}", c.values[i])).collect();
            writeln!(w, "{}", line.join("\t"))?;
        }
        w.flush()
    };
    body().map_err(|e| Error::io(path, e))
}

/// Reads the numeric rows of a table written by [`write_table`].
pub fn read_table(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut last_comment = "";
    let mut names = Vec::new();
    let mut rows = Vec::new();
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("# ") {
            last_comment = rest;
            continue;
        }
        if names.is_empty() {
            // the comment directly above the data holds the bare column names
            names = last_comment.split('\t').map(str::to_string).collect();
        }
        let row: std::result::Result<Vec<f64>, _> = line.split('\t').map(str::parse).collect();
        rows.push(row.map_err(|e| Error::io(path, std::io::Error::new(std::io::ErrorKind::InvalidData, e)))?);
    }
    Ok((names, rows))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSidecar {
    pub quantity: String,
    pub units: String,
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub dy: f64,
    pub extent_x: f64,
    pub extent_y: f64,
    pub z: f64,
    pub length_unit: String,
    pub byte_order: String,
    pub layout: String,
    pub data_file: String,
}

pub fn sidecar_path(bin: &Path) -> PathBuf {
    bin.with_extension("json")
}

/// Writes `values` as little-endian f64 pairs (re, im), row-major with x
/// fastest, plus a JSON sidecar next to it.
pub fn write_grid(bin: &Path, field: &ComplexField2D, quantity: &str, units: &str) -> Result<()> {
    let mut bytes = Vec::with_capacity(field.values.len() * 16);
    for v in &field.values {
        bytes.extend_from_slice(&v.re.to_le_bytes());
        bytes.extend_from_slice(&v.im.to_le_bytes());
    }
    fs::write(bin, &bytes).map_err(|e| Error::io(bin, e))?;
    let g = field.grid;
    let meta = GridSidecar {
        quantity: quantity.into(),
        units: units.into(),
        nx: g.nx,
        ny: g.ny,
        dx: g.dx(),
        dy: g.dy(),
        extent_x: g.extent_x,
        extent_y: g.extent_y,
        z: field.z,
        length_unit: "cm".into(),
        byte_order: "little".into(),
        layout: "row-major (index iy*nx + ix), interleaved re/im float64".into(),
        data_file: bin
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default(),
    };
    let side = sidecar_path(bin);
    let text = serde_json::to_string_pretty(&meta).expect("sidecar serialises");
    fs::write(&side, text).map_err(|e| Error::io(&side, e))
}

pub fn read_grid(bin: &Path) -> Result<(ComplexField2D, GridSidecar)> {
    let side = sidecar_path(bin);
    let text = fs::read_to_string(&side).map_err(|e| Error::io(&side, e))?;
    let meta: GridSidecar = serde_json::from_str(&text).map_err(|e| Error::ConfigInvalid {
        path: side.display().to_string(),
        message: e.to_string(),
    })?;
    let bytes = fs::read(bin).map_err(|e| Error::io(bin, e))?;
    let grid = TransverseGrid::new_2d(meta.nx, meta.ny, meta.extent_x, meta.extent_y);
    if bytes.len() != grid.len() * 16 {
        return Err(Error::GridMismatch(format!(
            "{}: {} bytes for a {}x{} grid",
            bin.display(),
            bytes.len(),
            meta.nx,
            meta.ny
        )));
    }
    let f = |c: &[u8]| f64::from_le_bytes(c.try_into().expect("8-byte chunk"));
    let values = bytes
        .chunks_exact(16)
        .map(|c| Complex64::new(f(&c[..8]), f(&c[8..])))
        .collect();
    let field = ComplexField2D::new(grid, values, meta.z)?;
    Ok((field, meta))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("summary serialises");
    fs::write(path, text).map_err(|e| Error::io(path, e))
}
