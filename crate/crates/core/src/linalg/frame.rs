use super::{ensure_finite, frobenius_norm, identity, zeros, ComplexMatrix, ToleranceConfig};
use crate::error::{Error, Result};

/// A subspace of `C^n`, stored as an `n × k` matrix with orthonormal columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    basis: ComplexMatrix,
}

impl Frame {
    /// Wraps `basis` after checking `basis* basis = I` to `1e-10`.
    pub fn from_orthonormal(basis: ComplexMatrix) -> Result<Self> {
        ensure_finite(&basis, "frame basis")?;
        let defect = frobenius_norm(&(basis.adjoint() * &basis - identity(basis.ncols())));
        if defect > 1e-10 {
            return Err(Error::InvalidInput(format!(
                "frame columns are not orthonormal (defect {defect:.3e})"
            )));
        }
        Ok(Self { basis })
    }

    pub(crate) fn new_unchecked(basis: ComplexMatrix) -> Self {
        Self { basis }
    }

    /// The zero subspace of `C^n`.
    pub fn empty(ambient_dim: usize) -> Self {
        Self {
            basis: zeros(ambient_dim, 0),
        }
    }

    /// The whole of `C^n`.
    pub fn full(ambient_dim: usize) -> Self {
        Self {
            basis: identity(ambient_dim),
        }
    }

    /// Span of the canonical vectors with the given indices, in that order.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Self {
        let mut basis = zeros(ambient_dim, indices.len());
        for (j, &i) in indices.iter().enumerate() {
            basis[(i, j)] = 1.0.into();
        }
        Self { basis }
    }

    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    pub fn into_basis(self) -> ComplexMatrix {
        self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn rank(&self) -> usize {
        self.basis.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.rank() == 0
    }

    /// Orthogonal projector `F F*`.
    pub fn projector(&self) -> ComplexMatrix {
        &self.basis * self.basis.adjoint()
    }

    pub fn orthonormality_defect(&self) -> f64 {
        frobenius_norm(&(self.basis.adjoint() * &self.basis - identity(self.rank())))
    }

    /// Orthonormal frame of the orthogonal complement.
    pub fn complement(&self, cfg: &ToleranceConfig) -> Frame {
        let n = self.ambient_dim();
        if self.is_empty() {
            return Frame::full(n);
        }
        if self.rank() == n {
            return Frame::empty(n);
        }
        let p = identity(n) - self.projector();
        let f = orthonormal_frame_unchecked(&p, cfg);
        debug_assert_eq!(f.rank(), n - self.rank());
        f
    }

    /// Image of the subspace under a unitary `u`.
    pub fn transform(&self, u: &ComplexMatrix) -> Frame {
        Frame::new_unchecked(u * &self.basis)
    }

    /// Concatenates mutually orthogonal frames.
    pub fn direct_sum(frames: &[&Frame]) -> Result<Frame> {
        let n = frames.first().map(|f| f.ambient_dim()).unwrap_or(0);
        let total: usize = frames.iter().map(|f| f.rank()).sum();
        let mut basis = zeros(n, total);
        let mut col = 0;
        for f in frames {
            if f.ambient_dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: f.ambient_dim(),
                });
            }
            basis.view_mut((0, col), f.basis.shape()).copy_from(&f.basis);
            col += f.rank();
        }
        Frame::from_orthonormal(basis)
    }

    /// Orthonormalizes the columns of `m` by modified Gram–Schmidt with one
    /// re-orthogonalization pass, preserving column order.
    pub fn gram_schmidt(m: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<Frame> {
        ensure_finite(m, "matrix")?;
        let mut q = m.clone();
        for j in 0..q.ncols() {
            let original = q.column(j).norm();
            for _pass in 0..2 {
                for i in 0..j {
                    let proj = q.column(i).dotc(&q.column(j));
                    let qi = q.column(i).clone_owned();
                    let mut cj = q.column_mut(j);
                    cj -= qi * proj;
                }
            }
            let norm = q.column(j).norm();
            if norm <= cfg.rank_tol * original.max(f64::MIN_POSITIVE) || norm == 0.0 {
                return Err(Error::InvalidInput(format!(
                    "column {j} is linearly dependent on the previous ones"
                )));
            }
            q.column_mut(j).unscale_mut(norm);
        }
        Ok(Frame::new_unchecked(q))
    }
}

/// Orthonormal frame for the column space of `m`.
///
/// Rank is the number of singular values above `rank_tol · s₁`; the frame
/// columns are the corresponding left singular vectors.
pub fn orthonormal_frame(m: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<Frame> {
    ensure_finite(m, "matrix")?;
    Ok(orthonormal_frame_unchecked(m, cfg))
}

fn orthonormal_frame_unchecked(m: &ComplexMatrix, cfg: &ToleranceConfig) -> Frame {
    let n = m.nrows();
    if m.ncols() == 0 || n == 0 {
        return Frame::empty(n);
    }
    let svd = super::svd_full(m);
    let s1 = svd.singular_values.first().copied().unwrap_or(0.0);
    if s1 == 0.0 {
        return Frame::empty(n);
    }
    let rank = svd
        .singular_values
        .iter()
        .take_while(|&&s| s > cfg.rank_tol * s1)
        .count();
    Frame::new_unchecked(svd.u.columns(0, rank).into_owned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, from_real_rows};
    use crate::random;

    #[test]
    fn identity_gives_identity_frame() {
        let cfg = ToleranceConfig::default();
        let f = orthonormal_frame(&identity(3), &cfg).unwrap();
        assert_eq!(f.rank(), 3);
        assert!(frobenius_norm(&(f.projector() - identity(3))) < 1e-14);
    }

    #[test]
    fn single_column_is_normalized() {
        let cfg = ToleranceConfig::default();
        let m = from_real_rows(2, 1, &[1.0, 1.0]);
        let f = orthonormal_frame(&m, &cfg).unwrap();
        assert_eq!(f.rank(), 1);
        let v = f.basis().column(0);
        // sign/phase of the singular vector is free; compare the projector
        let expected = from_real_rows(2, 2, &[0.5, 0.5, 0.5, 0.5]);
        assert!(frobenius_norm(&(f.projector() - expected)) < 1e-14);
        assert!((v.norm() - 1.0).abs() < 1e-14);
        assert!((v[0].norm() - 0.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn rank_two_product_gives_rank_two_frame() {
        let cfg = ToleranceConfig::default();
        let mut rng = random::rng(11);
        let a = random::gaussian_matrix(&mut rng, 6, 2);
        let b = random::gaussian_matrix(&mut rng, 2, 4);
        let m = &a * &b;
        let f = orthonormal_frame(&m, &cfg).unwrap();
        assert_eq!(f.rank(), 2);
        let residual = frobenius_norm(&(&m - f.projector() * &m)) / frobenius_norm(&m);
        assert!(residual <= 1e-10, "residual {residual}");
        assert!(f.orthonormality_defect() <= 1e-10);
    }

    #[test]
    fn zero_and_empty_matrices_give_empty_frames() {
        let cfg = ToleranceConfig::default();
        assert_eq!(orthonormal_frame(&zeros(4, 3), &cfg).unwrap().rank(), 0);
        assert_eq!(orthonormal_frame(&zeros(4, 0), &cfg).unwrap().rank(), 0);
    }

    #[test]
    fn non_finite_input_is_rejected() {
        let cfg = ToleranceConfig::default();
        let mut m = identity(2);
        m[(0, 1)] = c64(f64::NAN, 0.0);
        assert!(matches!(
            orthonormal_frame(&m, &cfg),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn complement_is_orthogonal_and_completes() {
        let cfg = ToleranceConfig::default();
        let mut rng = random::rng(3);
        let f = random::random_frame(&mut rng, 7, 3);
        let g = f.complement(&cfg);
        assert_eq!(g.rank(), 4);
        assert!(frobenius_norm(&(f.basis().adjoint() * g.basis())) < 1e-12);
        assert!(frobenius_norm(&(f.projector() + g.projector() - identity(7))) < 1e-12);
    }

    #[test]
    fn gram_schmidt_keeps_order_and_rejects_dependence() {
        let cfg = ToleranceConfig::default();
        let m = from_real_rows(3, 2, &[2.0, 1.0, 0.0, 1.0, 0.0, 0.0]);
        let f = Frame::gram_schmidt(&m, &cfg).unwrap();
        assert!((f.basis()[(0, 0)] - c64(1.0, 0.0)).norm() < 1e-15);
        assert!((f.basis()[(1, 1)] - c64(1.0, 0.0)).norm() < 1e-15);
        let dep = from_real_rows(2, 2, &[1.0, 2.0, 1.0, 2.0]);
        assert!(Frame::gram_schmidt(&dep, &cfg).is_err());
    }
}
