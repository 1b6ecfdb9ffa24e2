use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use schmidt_core::linalg::mmio::read_matrix_market_file;
use schmidt_core::linalg::orthonormal_frame;
use schmidt_core::{ComplexMatrix, Frame, ToleranceConfig};

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    read_matrix_market_file(path).with_context(|| format!("reading {}", path.display()))
}

/// The column space of a Matrix Market matrix. For an orthogonal projector
/// this is its range.
pub fn read_subspace(path: &Path, cfg: &ToleranceConfig) -> Result<Frame> {
    Ok(orthonormal_frame(&read_matrix(path)?, cfg)?)
}

/// Complex points, one per line as `re im` (or just `re`); blank lines and
/// text after `#` are ignored.
pub fn parse_points(text: &str) -> Result<Vec<Complex64>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|f| !f.is_empty())
            .collect();
        let parse = |f: &str| -> Result<f64> {
            f.parse::<f64>()
                .with_context(|| format!("line {}: '{f}' is not a number", lineno + 1))
        };
        let z = match fields.as_slice() {
            [re] => Complex64::new(parse(re)?, 0.0),
            [re, im] => Complex64::new(parse(re)?, parse(im)?),
            _ => bail!("line {}: expected 're im', got '{line}'", lineno + 1),
        };
        if !z.re.is_finite() || !z.im.is_finite() {
            bail!("line {}: non-finite point", lineno + 1);
        }
        out.push(z);
    }
    Ok(out)
}

pub fn read_points(path: &Path) -> Result<Vec<Complex64>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_points(&text).with_context(|| format!("parsing {}", path.display()))
}

/// `a,b` with `a < b`.
pub fn parse_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected 'a,b', got '{s}'"))?;
    let a: f64 = a.trim().parse().map_err(|_| format!("'{a}' is not a number"))?;
    let b: f64 = b.trim().parse().map_err(|_| format!("'{b}' is not a number"))?;
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_with_comments() {
        let pts = parse_points("# zeros\n0.5 0\n\n-0.25 0.125  # second\n0.1\n").unwrap();
        assert_eq!(
            pts,
            vec![
                Complex64::new(0.5, 0.0),
                Complex64::new(-0.25, 0.125),
                Complex64::new(0.1, 0.0)
            ]
        );
        assert!(parse_points("1 2 3\n").is_err());
        assert!(parse_points("x 1\n").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-1,2.5"), Ok((-1.0, 2.5)));
        assert!(parse_range("1").is_err());
    }
}
