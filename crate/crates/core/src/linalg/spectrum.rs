use num_complex::Complex64;

use super::{ensure_finite, ensure_square, ComplexMatrix};
use crate::error::{Error, Result};

/// A group of nearly equal values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cluster {
    pub value: f64,
    pub multiplicity: usize,
}

/// Groups values whose consecutive gaps (after sorting, nonincreasing) are at
/// most `tol`. Each cluster reports the mean of its members.
pub fn cluster_values(values: &[f64], tol: f64) -> Vec<Cluster> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut out: Vec<(f64, usize, f64)> = Vec::new();
    for v in sorted {
        match out.last_mut() {
            Some((sum, count, last)) if (*last - v).abs() <= tol => {
                *sum += v;
                *count += 1;
                *last = v;
            }
            _ => out.push((v, 1, v)),
        }
    }
    out.into_iter()
        .map(|(sum, count, _)| Cluster {
            value: sum / count as f64,
            multiplicity: count,
        })
        .collect()
}

/// Largest elementwise gap between two real multisets after sorting.
/// Multisets of different sizes are infinitely far apart.
pub fn real_multiset_defect(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.iter()
        .zip(&b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Distance between two complex multisets: each element of `a` is matched
/// greedily to the nearest unused element of `b`; the result is the largest
/// matched distance.
pub fn complex_multiset_defect(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for x in a {
        let (best, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("equal lengths");
        used[best] = true;
        worst = worst.max(d);
    }
    worst
}

/// Eigenvalues of a general square matrix.
pub fn eigenvalues_general(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    ensure_finite(m, "matrix")?;
    ensure_square(m, "matrix")?;
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    super::decomp::to_faer(m)
        .eigenvalues()
        .map_err(|_| Error::InvalidInput("eigenvalue iteration did not converge".into()))
}
