use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grassmann::geodesic_distance;
use crate::linalg::{c64, real_multiset_defect, tridiagonal_eigenvalues, zeros, Frame, ToleranceConfig};

/// Largest `N` for which the dense geodesic cross-check runs.
const DENSE_LIMIT: usize = 64;

/// Symmetric-subspace compression of the cyclic bilateral shift on `−N..N`.
#[derive(Debug, Clone)]
pub struct SymmetricShiftReport {
    pub n: usize,
    /// `dim L₀ = N + 1`.
    pub dimension: usize,
    /// Diagonal and off-diagonal of `P₀SP₀` in the basis
    /// `b₀ = e₀`, `b_k = (e_k + e_{−k})/√2`.
    pub diagonal: Vec<f64>,
    pub off_diagonal: Vec<f64>,
    /// `‖P₀SP₀e₀ − ½(e₁ + e₋₁)‖`.
    pub e0_defect: f64,
    /// Largest `|T_ik − conj(T_ki)|`.
    pub hermitian_defect: f64,
    /// Part of `P₀Sb_k` outside `span{b_{k−1}, b_k, b_{k+1}}`.
    pub tridiagonal_residual: f64,
    /// `max |(P₀Sf)(z) − ½(z + z̄)f(z)|` over the nodes for a symmetric test `f`.
    pub multiplication_defect: f64,
    /// Nonincreasing eigenvalues of the compression.
    pub eigenvalues: Vec<f64>,
    /// Against `cos(2πj/M)`, `M = 2N + 1`.
    pub eigenvalue_defect: f64,
    /// `(lower, upper, count)` over ten equal bins of `[−1, 1]`.
    pub histogram: Vec<(f64, f64, usize)>,
    /// `cos² X` against `½(Re z² + 1)` at the nodes `z = e^{2πij/M}`, `j ≤ N`.
    pub cosine_relation_defect: f64,
    /// Geodesic distance between `L₀` and `S L₀`.
    pub distance: f64,
    /// `π/2 − π/(2M)`.
    pub predicted_distance: f64,
    /// Distance recomputed from dense frames when `N ≤ 64`.
    pub dense_distance: Option<f64>,
}

impl SymmetricShiftReport {
    pub fn max_identity_defect(&self) -> f64 {
        [
            self.e0_defect,
            self.hermitian_defect,
            self.tridiagonal_residual,
            self.multiplication_defect,
            self.eigenvalue_defect,
            self.cosine_relation_defect,
            (self.distance - self.predicted_distance).abs(),
            self.dense_distance
                .map_or(0.0, |d| (d - self.distance).abs()),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Sequences on `−N..N`, stored at offset `N`.
struct Sequences {
    n: usize,
}

impl Sequences {
    fn len(&self) -> usize {
        2 * self.n + 1
    }

    fn idx(&self, k: i64) -> usize {
        (k + self.n as i64) as usize
    }

    /// Cyclic shift `e_k ↦ e_{k+1}`, `e_N ↦ e_{−N}`.
    fn shift(&self, v: &[Complex64]) -> Vec<Complex64> {
        let m = self.len();
        (0..m).map(|i| v[(i + m - 1) % m]).collect()
    }

    /// `P₀ = ½(1 + Π)` with `Π e_k = e_{−k}`.
    fn symmetrize(&self, v: &[Complex64]) -> Vec<Complex64> {
        let m = self.len();
        (0..m).map(|i| (v[i] + v[m - 1 - i]) * 0.5).collect()
    }

    fn basis(&self, k: usize) -> Vec<Complex64> {
        let mut v = vec![c64(0.0, 0.0); self.len()];
        if k == 0 {
            v[self.n] = c64(1.0, 0.0);
        } else {
            v[self.idx(k as i64)] = c64(FRAC_1_SQRT_2, 0.0);
            v[self.idx(-(k as i64))] = c64(FRAC_1_SQRT_2, 0.0);
        }
        v
    }

    fn coefficient(&self, v: &[Complex64], k: usize) -> Complex64 {
        if k == 0 {
            v[self.n]
        } else {
            (v[self.idx(k as i64)] + v[self.idx(-(k as i64))]) * FRAC_1_SQRT_2
        }
    }

    fn compress(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.symmetrize(&self.shift(&self.symmetrize(v)))
    }
}

pub fn symmetric_subspace_shift(n: usize, cfg: &ToleranceConfig) -> Result<SymmetricShiftReport> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("N must be at least 2, got {n}")));
    }
    let seq = Sequences { n };
    let m = seq.len();
    let dim = n + 1;

    let mut e0 = vec![c64(0.0, 0.0); m];
    e0[n] = c64(1.0, 0.0);
    let image = seq.compress(&e0);
    let mut expected = vec![c64(0.0, 0.0); m];
    expected[seq.idx(1)] = c64(0.5, 0.0);
    expected[seq.idx(-1)] = c64(0.5, 0.0);
    let e0_defect = norm(&sub(&image, &expected));

    // T_ik = ⟨b_i, P₀ S b_k⟩ for |i − k| ≤ 1
    let mut entries = vec![[c64(0.0, 0.0); 3]; dim];
    let mut tridiagonal_residual = 0.0f64;
    for (k, row) in entries.iter_mut().enumerate() {
        let col = seq.compress(&seq.basis(k));
        let mut rest = col.clone();
        for (slot, i) in [k.wrapping_sub(1), k, k + 1].into_iter().enumerate() {
            if i >= dim {
                continue;
            }
            let t = seq.coefficient(&col, i);
            row[slot] = t;
            let b = seq.basis(i);
            for (r, bv) in rest.iter_mut().zip(&b) {
                *r -= bv * t;
            }
        }
        tridiagonal_residual = tridiagonal_residual.max(norm(&rest));
    }
    let diagonal: Vec<f64> = entries.iter().map(|e| e[1].re).collect();
    let mut off_diagonal = Vec::with_capacity(n);
    let mut hermitian_defect = entries
        .iter()
        .map(|e| e[1].im.abs())
        .fold(0.0, f64::max);
    for k in 0..n {
        // T_{k+1,k} and T_{k,k+1}
        let lower = entries[k][2];
        let upper = entries[k + 1][0];
        hermitian_defect = hermitian_defect.max((lower - upper.conj()).norm());
        off_diagonal.push(lower.re);
        hermitian_defect = hermitian_defect.max(lower.im.abs());
    }

    let multiplication_defect = multiplication_check(&seq);

    let eigenvalues = tridiagonal_eigenvalues(&diagonal, &off_diagonal)?;
    let predicted: Vec<f64> = (0..dim)
        .map(|j| (TAU * j as f64 / m as f64).cos())
        .collect();
    let eigenvalue_defect = real_multiset_defect(&eigenvalues, &predicted);

    let histogram = (0..10)
        .map(|b| {
            let lo = -1.0 + 0.2 * b as f64;
            let hi = lo + 0.2;
            let count = eigenvalues
                .iter()
                .filter(|&&l| l >= lo && (l < hi || (b == 9 && l <= hi + cfg.abs_tol)))
                .count();
            (lo, hi, count)
        })
        .collect();

    let cosines: Vec<f64> = eigenvalues.iter().map(|l| l.abs().min(1.0)).collect();
    let cos_sq: Vec<f64> = cosines.iter().map(|c| c * c).collect();
    let relation: Vec<f64> = (0..dim)
        .map(|j| {
            let z = Complex64::from_polar(1.0, TAU * j as f64 / m as f64);
            0.5 * ((z * z).re + 1.0)
        })
        .collect();
    let cosine_relation_defect = real_multiset_defect(&cos_sq, &relation);

    // no cosine vanishes for odd M, so both corner blocks are trivial
    let smallest = cosines.iter().copied().fold(f64::INFINITY, f64::min);
    let distance = smallest.acos();
    let predicted_distance = FRAC_PI_2 - PI / (2.0 * m as f64);

    let dense_distance = if n <= DENSE_LIMIT {
        let mut l0 = zeros(m, dim);
        let mut sl0 = zeros(m, dim);
        for k in 0..dim {
            let b = seq.basis(k);
            let sb = seq.shift(&b);
            for i in 0..m {
                l0[(i, k)] = b[i];
                sl0[(i, k)] = sb[i];
            }
        }
        Some(geodesic_distance(
            &Frame::from_orthonormal(l0)?,
            &Frame::from_orthonormal(sl0)?,
            cfg,
        )?)
    } else {
        None
    };

    Ok(SymmetricShiftReport {
        n,
        dimension: dim,
        diagonal,
        off_diagonal,
        e0_defect,
        hermitian_defect,
        tridiagonal_residual,
        multiplication_defect,
        eigenvalues,
        eigenvalue_defect,
        histogram,
        cosine_relation_defect,
        distance,
        predicted_distance,
        dense_distance,
    })
}

/// Evaluates `P₀Sf` and `½(z + z̄)f` at the `M` nodes for the symmetric
/// sequence `f_k = 1/(1 + k²)`.
fn multiplication_check(seq: &Sequences) -> f64 {
    let n = seq.n as i64;
    let m = seq.len();
    let f: Vec<Complex64> = (-n..=n)
        .map(|k| c64(1.0 / (1.0 + (k * k) as f64), 0.0))
        .collect();
    let g = seq.compress(&f);
    let eval = |v: &[Complex64], z: Complex64| -> Complex64 {
        // Σ v_k z^k with z^{−N} as the starting power
        let mut p = z.powi(-(n as i32));
        let mut s = c64(0.0, 0.0);
        for x in v {
            s += x * p;
            p *= z;
        }
        s
    };
    (0..m)
        .map(|j| {
            let z = Complex64::from_polar(1.0, TAU * j as f64 / m as f64);
            (eval(&g, z) - eval(&f, z) * (z + z.conj()) * 0.5).norm()
        })
        .fold(0.0, f64::max)
}

fn sub(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}
