use nalgebra::DVector;
use num_complex::Complex64;

use super::{
    c64, ensure_finite, ensure_square, frobenius_norm, hermitian_defect, zeros, ComplexMatrix,
    ToleranceConfig,
};
use crate::error::{Error, Result};

/// Thin SVD `M = U diag(s) V*` with singular values in nonincreasing order.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub v: ComplexMatrix,
}

/// Thin SVD with nonincreasing singular values.
pub fn svd_full(m: &ComplexMatrix) -> Svd {
    let (r, c) = m.shape();
    let k = r.min(c);
    if k == 0 {
        return Svd {
            u: zeros(r, 0),
            singular_values: Vec::new(),
            v: zeros(c, 0),
        };
    }
    let svd = to_faer(m)
        .thin_svd()
        .expect("SVD of a finite matrix converges");
    let s = svd.S().column_vector();
    let u = svd.U();
    let v = svd.V();
    let vals: Vec<f64> = (0..k).map(|i| s[i].re).collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| vals[b].total_cmp(&vals[a]));
    Svd {
        u: ComplexMatrix::from_fn(r, k, |i, j| u[(i, order[j])]),
        singular_values: order.iter().map(|&j| vals[j]).collect(),
        v: ComplexMatrix::from_fn(c, k, |i, j| v[(i, order[j])]),
    }
}

/// All `min(rows, cols)` singular values, nonincreasing.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<f64> = to_faer(m)
        .singular_values()
        .expect("SVD of a finite matrix converges");
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub(crate) fn to_faer(m: &ComplexMatrix) -> faer::Mat<Complex64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Schmidt system `T = Σ sₙ ψₙ ⊗ ξₙ`, where `(f ⊗ g) h = ⟨h, g⟩ f`.
#[derive(Debug, Clone)]
pub struct SchmidtSystem {
    /// Nonincreasing, strictly positive.
    pub singular_values: Vec<f64>,
    /// `ψₙ` as columns.
    pub left: ComplexMatrix,
    /// `ξₙ` as columns.
    pub right: ComplexMatrix,
}

impl SchmidtSystem {
    pub fn len(&self) -> usize {
        self.singular_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.singular_values.is_empty()
    }

    /// `Σ sₙ ψₙ ξₙ*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut scaled = self.left.clone();
        for (j, &s) in self.singular_values.iter().enumerate() {
            scaled.column_mut(j).scale_mut(s);
        }
        scaled * self.right.adjoint()
    }
}

/// Singular value decomposition as a Schmidt system. Values at or below
/// `rank_tol · s₁` (default tolerances) are dropped, so the zero matrix yields
/// an empty system.
pub fn svd_schmidt(t: &ComplexMatrix) -> Result<SchmidtSystem> {
    ensure_finite(t, "operator")?;
    let svd = svd_full(t);
    let s1 = svd.singular_values.first().copied().unwrap_or(0.0);
    let cut = ToleranceConfig::default().rank_tol * s1;
    let r = svd
        .singular_values
        .iter()
        .take_while(|&&s| s > cut && s > 0.0)
        .count();
    Ok(SchmidtSystem {
        singular_values: svd.singular_values[..r].to_vec(),
        left: svd.u.columns(0, r).into_owned(),
        right: svd.v.columns(0, r).into_owned(),
    })
}

/// Spectral decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Nonincreasing.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors, column `k` belonging to `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V f(Λ) V*`.
    pub fn apply<F: Fn(f64) -> Complex64>(&self, f: F) -> ComplexMatrix {
        let mut scaled = self.vectors.clone();
        for (j, &l) in self.values.iter().enumerate() {
            let fl = f(l);
            for z in scaled.column_mut(j).iter_mut() {
                *z *= fl;
            }
        }
        scaled * self.vectors.adjoint()
    }
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues nonincreasing.
///
/// Rejects inputs with `‖H − H*‖ > τ·‖H‖` (default tolerances); the input is
/// symmetrized before factorization.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<HermitianEigen> {
    ensure_finite(h, "matrix")?;
    ensure_square(h, "matrix")?;
    let n = h.nrows();
    if n == 0 {
        return Ok(HermitianEigen {
            values: Vec::new(),
            vectors: zeros(0, 0),
        });
    }
    let cfg = ToleranceConfig::default();
    let defect = hermitian_defect(h);
    if defect > cfg.slack(frobenius_norm(h)) {
        return Err(Error::NotHermitian { defect });
    }
    let sym = (h + h.adjoint()).unscale(2.0);
    let eig = to_faer(&sym)
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|_| Error::InvalidInput("Hermitian eigensolver did not converge".into()))?;
    let s = eig.S().column_vector();
    let u = eig.U();
    let vals: Vec<f64> = (0..n).map(|i| s[i].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| vals[b].total_cmp(&vals[a]));
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| u[(i, order[j])]);
    Ok(HermitianEigen {
        values: order.iter().map(|&j| vals[j]).collect(),
        vectors,
    })
}

/// `f(H)` for Hermitian `H` through its spectral decomposition.
pub fn hermitian_function<F: Fn(f64) -> f64>(h: &ComplexMatrix, f: F) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h)?;
    Ok(eig.apply(|l| c64(f(l), 0.0)))
}

/// Square root of a positive semidefinite matrix. Eigenvalues in
/// `[−τ, 0)` are clipped to zero; anything more negative is an error.
pub fn sqrt_psd(h: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h)?;
    let scale = eig.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = -cfg.slack(scale);
    if let Some(&min) = eig.values.last() {
        if min < floor {
            return Err(Error::InvalidInput(format!(
                "matrix is not positive semidefinite (eigenvalue {min:.3e})"
            )));
        }
    }
    Ok(eig.apply(|l| c64(l.max(0.0).sqrt(), 0.0)))
}

/// `exp(i t H)` for Hermitian `H`.
pub fn i_exp_hermitian(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h)?;
    Ok(eig.apply(|l| Complex64::from_polar(1.0, t * l)))
}

/// Polar decomposition `M = unitary · modulus`.
#[derive(Debug, Clone)]
pub struct Polar {
    pub unitary: ComplexMatrix,
    /// `(M* M)^{1/2}`, Hermitian positive definite.
    pub modulus: ComplexMatrix,
}

/// Polar decomposition of a square invertible matrix via its SVD
/// `M = Y Σ W*`: unitary part `Y W*`, modulus `W Σ W*`.
pub fn polar(m: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<Polar> {
    ensure_finite(m, "matrix")?;
    ensure_square(m, "matrix")?;
    let svd = svd_full(m);
    let smallest = svd.singular_values.last().copied().unwrap_or(0.0);
    if m.nrows() > 0 && smallest <= cfg.rank_tol {
        return Err(Error::SingularMatrix { smallest });
    }
    let unitary = &svd.u * svd.v.adjoint();
    let sigma = DVector::from_iterator(
        svd.singular_values.len(),
        svd.singular_values.iter().map(|&s| c64(s, 0.0)),
    );
    let modulus = &svd.v * ComplexMatrix::from_diagonal(&sigma) * svd.v.adjoint();
    let modulus = (&modulus + modulus.adjoint()).unscale(2.0);
    Ok(Polar { unitary, modulus })
}
