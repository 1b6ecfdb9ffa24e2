//! Dense complex linear-algebra substrate.
//!
//! Subspaces are carried as [`Frame`]s (matrices with orthonormal columns);
//! projectors are formed on demand as `F F*`. Matrices are `nalgebra` types;
//! SVD and eigensolvers come from `faer`, wrapped so that orderings and
//! tolerances are explicit.

mod decomp;
mod frame;
pub mod mmio;
mod spectrum;
mod tridiagonal;

pub use decomp::{
    hermitian_eig, hermitian_function, i_exp_hermitian, polar, singular_values, sqrt_psd,
    svd_full, svd_schmidt, HermitianEigen, Polar, SchmidtSystem, Svd,
};
pub use frame::{orthonormal_frame, Frame};
pub use spectrum::{
    cluster_values, complex_multiset_defect, eigenvalues_general, real_multiset_defect, Cluster,
};
pub use tridiagonal::tridiagonal_eigenvalues;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix; the carrier for every operator in the crate.
pub type ComplexMatrix = DMatrix<Complex64>;

/// Numerical thresholds shared by all operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Absolute slack for identity checks.
    pub abs_tol: f64,
    /// Relative slack for identity checks, scaled by the operand norm.
    pub rel_tol: f64,
    /// Relative threshold below which singular values count as zero, and the
    /// width of the band near one that counts as one.
    pub rank_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            rank_tol: 1e-8,
        }
    }
}

impl ToleranceConfig {
    pub fn new(abs_tol: f64, rel_tol: f64, rank_tol: f64) -> Result<Self> {
        let cfg = Self {
            abs_tol,
            rel_tol,
            rank_tol,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("abs_tol", self.abs_tol),
            ("rel_tol", self.rel_tol),
            ("rank_tol", self.rank_tol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "{name} must be finite and strictly positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Slack allowed for an identity whose operands have size `scale`.
    pub fn slack(&self, scale: f64) -> f64 {
        self.abs_tol + self.rel_tol * scale
    }
}

pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

pub fn zeros(r: usize, c: usize) -> ComplexMatrix {
    ComplexMatrix::zeros(r, c)
}

pub fn from_real_diagonal(values: &[f64]) -> ComplexMatrix {
    let n = values.len();
    let mut m = zeros(n, n);
    for (i, &v) in values.iter().enumerate() {
        m[(i, i)] = c64(v, 0.0);
    }
    m
}

/// Row-major constructor from real entries.
pub fn from_real_rows(rows: usize, cols: usize, entries: &[f64]) -> ComplexMatrix {
    assert_eq!(rows * cols, entries.len());
    ComplexMatrix::from_fn(rows, cols, |i, j| c64(entries[i * cols + j], 0.0))
}

pub fn ensure_finite(m: &ComplexMatrix, what: &str) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{what} has non-finite entries")))
    }
}

pub fn ensure_square(m: &ComplexMatrix, what: &str) -> Result<()> {
    if m.nrows() == m.ncols() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "{what} must be square, got {}x{}",
            m.nrows(),
            m.ncols()
        )))
    }
}

/// Largest singular value.
pub fn spectral_norm(m: &ComplexMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    singular_values(m).first().copied().unwrap_or(0.0)
}

pub fn frobenius_norm(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `‖H − H*‖_F`.
pub fn hermitian_defect(h: &ComplexMatrix) -> f64 {
    frobenius_norm(&(h - h.adjoint()))
}

/// `‖U* U − I‖_F` (square or tall `U`).
pub fn unitary_defect(u: &ComplexMatrix) -> f64 {
    frobenius_norm(&(u.adjoint() * u - identity(u.ncols())))
}

pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b - b * a
}

/// Block diagonal matrix `diag(a, b)`.
pub fn block_diag(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut m = zeros(a.nrows() + b.nrows(), a.ncols() + b.ncols());
    m.view_mut((0, 0), a.shape()).copy_from(a);
    m.view_mut((a.nrows(), a.ncols()), b.shape()).copy_from(b);
    m
}

/// `[[a, b], [c, d]]` from four equally partitioned blocks.
pub fn block2x2(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    d: &ComplexMatrix,
) -> ComplexMatrix {
    assert_eq!(a.nrows(), b.nrows());
    assert_eq!(c.nrows(), d.nrows());
    assert_eq!(a.ncols(), c.ncols());
    assert_eq!(b.ncols(), d.ncols());
    let (r0, c0) = a.shape();
    let mut m = zeros(r0 + c.nrows(), c0 + b.ncols());
    m.view_mut((0, 0), a.shape()).copy_from(a);
    m.view_mut((0, c0), b.shape()).copy_from(b);
    m.view_mut((r0, 0), c.shape()).copy_from(c);
    m.view_mut((r0, c0), d.shape()).copy_from(d);
    m
}

/// Horizontal concatenation `[a | b]`.
pub fn hcat(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    assert_eq!(a.nrows(), b.nrows());
    let mut m = zeros(a.nrows(), a.ncols() + b.ncols());
    m.view_mut((0, 0), a.shape()).copy_from(a);
    m.view_mut((0, a.ncols()), b.shape()).copy_from(b);
    m
}
