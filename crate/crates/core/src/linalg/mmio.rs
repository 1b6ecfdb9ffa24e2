//! Matrix Market `array` format, complex or real, general symmetry.
//!
//! Values are written with 17 significant digits so that reading a written
//! file reproduces every entry bit for bit.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

const HEADER: &str = "%%MatrixMarket matrix array complex general";

pub fn write_matrix_market<W: Write>(m: &ComplexMatrix, mut w: W) -> Result<()> {
    writeln!(w, "{HEADER}")?;
    writeln!(w, "{} {}", m.nrows(), m.ncols())?;
    // column-major order
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let z = m[(i, j)];
            writeln!(w, "{:.16e} {:.16e}", z.re, z.im)?;
        }
    }
    Ok(())
}

pub fn write_matrix_market_file<P: AsRef<Path>>(m: &ComplexMatrix, path: P) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_matrix_market(m, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn read_matrix_market<R: Read>(r: R) -> Result<ComplexMatrix> {
    let mut lines = BufReader::new(r).lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))??;
    let tokens: Vec<String> = header
        .split_whitespace()
        .map(|t| t.to_ascii_lowercase())
        .collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(Error::Parse(format!("bad header line: {header}")));
    }
    if tokens[2] != "array" {
        return Err(Error::Parse(format!(
            "only the array format is supported, found {}",
            tokens[2]
        )));
    }
    let complex = match tokens[3].as_str() {
        "complex" => true,
        "real" | "double" => false,
        other => return Err(Error::Parse(format!("unsupported field {other}"))),
    };
    if tokens[4] != "general" {
        return Err(Error::Parse(format!(
            "only general symmetry is supported, found {}",
            tokens[4]
        )));
    }

    let mut data = lines.filter_map(|l| match l {
        Ok(l) => {
            let t = l.trim().to_string();
            if t.is_empty() || t.starts_with('%') {
                None
            } else {
                Some(Ok(t))
            }
        }
        Err(e) => Some(Err(Error::from(e))),
    });

    let size_line = data
        .next()
        .ok_or_else(|| Error::Parse("missing size line".into()))??;
    let dims: Vec<usize> = size_line
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse(format!("bad size line '{size_line}': {e}")))?;
    if dims.len() != 2 {
        return Err(Error::Parse(format!("bad size line '{size_line}'")));
    }
    let (rows, cols) = (dims[0], dims[1]);

    let mut m = ComplexMatrix::zeros(rows, cols);
    for k in 0..rows * cols {
        let line = data
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {} entries, found {k}", rows * cols)))??;
        let vals: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("bad entry '{line}': {e}")))?;
        let z = match (complex, vals.as_slice()) {
            (true, [re, im]) => Complex64::new(*re, *im),
            (false, [re]) => Complex64::new(*re, 0.0),
            _ => return Err(Error::Parse(format!("bad entry '{line}'"))),
        };
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Parse(format!("non-finite entry '{line}'")));
        }
        m[(k % rows, k / rows)] = z;
    }
    if let Some(extra) = data.next() {
        let extra = extra?;
        return Err(Error::Parse(format!("trailing data: '{extra}'")));
    }
    Ok(m)
}

pub fn read_matrix_market_file<P: AsRef<Path>>(path: P) -> Result<ComplexMatrix> {
    read_matrix_market(File::open(path)?)
}
