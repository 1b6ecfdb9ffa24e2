use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{zeros, ComplexMatrix, ToleranceConfig};

/// Trigonometric truncation: the monomials `z^n`, `−N ≤ n ≤ N`, together with
/// `M ≥ 2N + 1` quadrature nodes `ω_j = e^{2πij/M}` on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrigTruncation {
    n: usize,
    nodes: usize,
}

impl TrigTruncation {
    /// `8N + 1` nodes, enough to separate every coefficient index used by
    /// [`toeplitz_compression`] and damp aliasing of smooth symbols.
    pub fn new(n: usize) -> Self {
        TrigTruncation {
            n,
            nodes: 8 * n + 1,
        }
    }

    pub fn with_nodes(n: usize, nodes: usize) -> Result<Self> {
        if nodes < 2 * n + 1 {
            return Err(Error::InvalidInput(format!(
                "need at least 2N + 1 = {} nodes, got {nodes}",
                2 * n + 1
            )));
        }
        Ok(TrigTruncation { n, nodes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn nodes(&self) -> Vec<Complex64> {
        (0..self.nodes)
            .map(|j| Complex64::from_polar(1.0, TAU * j as f64 / self.nodes as f64))
            .collect()
    }

    /// Basis position of `z^k`, `−N ≤ k ≤ N`.
    pub fn index_of(&self, k: i64) -> Option<usize> {
        let n = self.n as i64;
        (-n..=n).contains(&k).then(|| (k + n) as usize)
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> {
        let n = self.n as i64;
        -n..=n
    }

    pub fn sample<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Vec<Complex64> {
        self.nodes().into_iter().map(f).collect()
    }

    /// `φ̂(k) ≈ (1/M) Σ_j φ(ω_j) ω_j^{−k}`.
    pub fn coefficient(&self, samples: &[Complex64], k: i64) -> Complex64 {
        let m = self.nodes as i64;
        let sum: Complex64 = samples
            .iter()
            .enumerate()
            .map(|(j, &v)| {
                let phase = -TAU * ((j as i64 * k).rem_euclid(m)) as f64 / m as f64;
                v * Complex64::from_polar(1.0, phase)
            })
            .sum();
        sum / m as f64
    }
}

/// `P₊ M_φ` restricted to analytic and to anti-analytic monomials.
#[derive(Debug, Clone)]
pub struct ToeplitzCompression {
    /// `(2N + 1) × (N + 1)`: columns `z^0..z^N`, rows `z^0..z^{2N}`.
    pub toeplitz: ComplexMatrix,
    /// `(2N + 1) × N`: columns `z^{−N}..z^{−1}`, rows `z^0..z^{2N}`.
    pub hankel: ComplexMatrix,
    /// Largest `||φ(ω_j)| − 1|`.
    pub unimodularity_defect: f64,
}

/// Toeplitz and Hankel blocks of a unimodular symbol sampled on the nodes.
///
/// The row range extends to `2N` so that `M_φ z^j` is captured for every
/// column when `φ` is a polynomial of degree at most `N`.
pub fn toeplitz_compression(
    samples: &[Complex64],
    trunc: &TrigTruncation,
    cfg: &ToleranceConfig,
) -> Result<ToeplitzCompression> {
    if samples.len() != trunc.node_count() {
        return Err(Error::DimensionMismatch {
            expected: trunc.node_count(),
            found: samples.len(),
        });
    }
    if samples.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidInput("symbol samples must be finite".into()));
    }
    let defect = samples
        .iter()
        .map(|z| (z.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    if defect > cfg.rank_tol.max(cfg.slack(1.0)) {
        return Err(Error::InvalidSymbol { defect });
    }
    let n = trunc.n() as i64;
    let rows = 2 * trunc.n() + 1;
    // φ̂(k) for k in −N..=3N
    let coeffs: Vec<Complex64> = (-n..=3 * n)
        .map(|k| trunc.coefficient(samples, k))
        .collect();
    let coef = |k: i64| coeffs[(k + n) as usize];
    let mut toeplitz = zeros(rows, trunc.n() + 1);
    for i in 0..rows as i64 {
        for j in 0..=n {
            toeplitz[(i as usize, j as usize)] = coef(i - j);
        }
    }
    let mut hankel = zeros(rows, trunc.n());
    for i in 0..rows as i64 {
        for (col, j) in (-n..0).enumerate() {
            hankel[(i as usize, col)] = coef(i - j);
        }
    }
    Ok(ToeplitzCompression {
        toeplitz,
        hankel,
        unimodularity_defect: defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, frobenius_norm, identity, singular_values};

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn nodes_are_distinct_roots_of_unity() {
        let t = TrigTruncation::new(3);
        let nodes = t.nodes();
        assert_eq!(nodes.len(), 25);
        for (i, a) in nodes.iter().enumerate() {
            assert!((a.norm() - 1.0).abs() < 1e-15);
            assert!((a.powu(25) - c64(1.0, 0.0)).norm() < 1e-12);
            for b in &nodes[i + 1..] {
                assert!((a - b).norm() > 0.1);
            }
        }
        assert_eq!(t.index_of(-3), Some(0));
        assert_eq!(t.index_of(4), None);
        assert!(TrigTruncation::with_nodes(3, 6).is_err());
    }

    #[test]
    fn constant_symbol_gives_identity() {
        let t = TrigTruncation::new(4);
        let c = toeplitz_compression(&t.sample(|_| c64(1.0, 0.0)), &t, &cfg()).unwrap();
        let top = c.toeplitz.rows(0, 5).into_owned();
        assert!(frobenius_norm(&(top - identity(5))) < 1e-14);
        assert!(frobenius_norm(&c.hankel) < 1e-14);
    }

    #[test]
    fn shift_symbols() {
        let t = TrigTruncation::new(6);
        let z = toeplitz_compression(&t.sample(|w| w), &t, &cfg()).unwrap();
        assert!(singular_values(&z.toeplitz)
            .iter()
            .all(|s| (s - 1.0).abs() < 1e-12));
        // the Hankel block of z carries z^{-1} to the constant
        assert!((z.hankel[(0, t.n() - 1)] - c64(1.0, 0.0)).norm() < 1e-13);

        let zbar = toeplitz_compression(&t.sample(|w| w.conj()), &t, &cfg()).unwrap();
        let s = singular_values(&zbar.toeplitz);
        assert!(s[s.len() - 1].abs() < 1e-12);
        assert!(s[..s.len() - 1].iter().all(|v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn rejects_non_unimodular() {
        let t = TrigTruncation::new(2);
        let r = toeplitz_compression(&t.sample(|w| w * 2.0), &t, &cfg());
        assert!(matches!(r, Err(Error::InvalidSymbol { .. })));
    }
}
