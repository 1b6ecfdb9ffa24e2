//! Oblique projections `Q` with range `S` and nullspace `T`, the reflection
//! polar factor `ρ_Q` of `2Q − I`, and transfer of singular values from the
//! corner block to `P_S P_T`.

use crate::error::{Error, Result};
use crate::linalg::{
    block2x2, ensure_finite, ensure_square, frobenius_norm, from_real_diagonal,
    hermitian_defect, hermitian_eig, identity, orthonormal_frame,
    real_multiset_defect, singular_values, spectral_norm, svd_full, zeros, ComplexMatrix, Frame,
    ToleranceConfig,
};
use crate::two_projections::{halmos_decompose, HalmosModel};

/// An idempotent `Q` with its range `S`, nullspace `T` and corner block
/// `B = P_S Q |_{S⊥}`. In the basis `[F_S | F_{S⊥}]`, `Q = [[I, B], [0, 0]]`.
#[derive(Debug, Clone)]
pub struct ObliqueProjection {
    pub q: ComplexMatrix,
    pub range_frame: Frame,
    pub nullspace_frame: Frame,
    /// `S⊥`, the domain of the corner block.
    pub complement_frame: Frame,
    /// `k × (n − k)` with `k = dim S`.
    pub corner: ComplexMatrix,
}

impl ObliqueProjection {
    pub fn dim(&self) -> usize {
        self.q.nrows()
    }

    pub fn idempotency_defect(&self) -> f64 {
        frobenius_norm(&(&self.q * &self.q - &self.q))
    }

    /// `max(‖Q F_S − F_S‖, ‖Q F_T‖)`.
    pub fn frame_defect(&self) -> f64 {
        let r = self.range_frame.basis();
        let t = self.nullspace_frame.basis();
        frobenius_norm(&(&self.q * r - r)).max(frobenius_norm(&(&self.q * t)))
    }

    /// `[F_S | F_{S⊥}]`.
    pub fn adapted_basis(&self) -> ComplexMatrix {
        crate::linalg::hcat(self.range_frame.basis(), self.complement_frame.basis())
    }

    /// `Q` in the adapted basis.
    pub fn adapted(&self) -> ComplexMatrix {
        let v = self.adapted_basis();
        v.adjoint() * &self.q * v
    }

    /// Distance of the adapted matrix from `[[I, B], [0, 0]]`.
    pub fn block_form_defect(&self) -> f64 {
        frobenius_norm(&(self.adapted() - self.block_form()))
    }

    fn block_form(&self) -> ComplexMatrix {
        let k = self.range_frame.rank();
        let m = self.dim() - k;
        block2x2(&identity(k), &self.corner, &zeros(m, k), &zeros(m, m))
    }

    /// Checks idempotency and the frames within `cfg`.
    pub fn validate(&self, cfg: &ToleranceConfig) -> Result<()> {
        let scale = spectral_norm(&self.q).max(1.0);
        let defect = self.idempotency_defect().max(self.frame_defect());
        if defect > cfg.slack(scale) * (self.dim().max(1) as f64) {
            return Err(Error::InvalidInput(format!(
                "not an idempotent with the given range and nullspace (defect {defect:.3e})"
            )));
        }
        Ok(())
    }

    /// Builds the record for an idempotent matrix.
    pub fn from_idempotent(q: ComplexMatrix, cfg: &ToleranceConfig) -> Result<Self> {
        ensure_finite(&q, "Q")?;
        ensure_square(&q, "Q")?;
        let n = q.nrows();
        let range_frame = orthonormal_frame(&q, cfg)?;
        let nullspace_frame = orthonormal_frame(&(identity(n) - &q), cfg)?;
        if range_frame.rank() + nullspace_frame.rank() != n {
            return Err(Error::InvalidInput(
                "range and nullspace of Q do not span the space".into(),
            ));
        }
        let out = Self::assemble(q, range_frame, nullspace_frame, cfg);
        out.validate(cfg)?;
        Ok(out)
    }

    fn assemble(q: ComplexMatrix, range: Frame, null: Frame, cfg: &ToleranceConfig) -> Self {
        let complement = range.complement(cfg);
        let corner = range.basis().adjoint() * &q * complement.basis();
        ObliqueProjection {
            q,
            range_frame: range,
            nullspace_frame: null,
            complement_frame: complement,
            corner,
        }
    }
}

/// `Q = P_S (P_S − P_T)^{-1}`, the idempotent with range `S` and nullspace `T`.
pub fn oblique_projection(s: &Frame, t: &Frame, cfg: &ToleranceConfig) -> Result<ObliqueProjection> {
    let n = s.ambient_dim();
    if t.ambient_dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: t.ambient_dim(),
        });
    }
    if s.rank() + t.rank() != n {
        return Err(Error::NotComplementary { smallest: 0.0 });
    }
    let ps = s.projector();
    let diff = &ps - t.projector();
    let smallest = singular_values(&diff).last().copied().unwrap_or(1.0);
    if smallest < cfg.rank_tol {
        return Err(Error::NotComplementary { smallest });
    }
    let inv = diff
        .try_inverse()
        .ok_or(Error::NotComplementary { smallest })?;
    let q = ps * inv;
    Ok(ObliqueProjection::assemble(q, s.clone(), t.clone(), cfg))
}

/// Result of transferring the corner singular values to `P_S P_T`.
#[derive(Debug, Clone)]
pub struct SvTransfer {
    /// Singular values of `B`, nonincreasing.
    pub beta: Vec<f64>,
    /// `β / √(β² + 1)`.
    pub s: Vec<f64>,
    /// Singular values of `P_S P_T` restricted to `T → S`.
    pub direct: Vec<f64>,
    pub defect: f64,
}

pub fn sv_transfer(q: &ObliqueProjection) -> SvTransfer {
    let beta = singular_values(&q.corner);
    let s: Vec<f64> = beta.iter().map(|b| b / (b * b + 1.0).sqrt()).collect();
    let direct = if q.range_frame.is_empty() || q.nullspace_frame.is_empty() {
        Vec::new()
    } else {
        singular_values(&(q.range_frame.basis().adjoint() * q.nullspace_frame.basis()))
    };
    let defect = real_multiset_defect(&s, &direct);
    SvTransfer {
        beta,
        s,
        direct,
        defect,
    }
}

/// Polar decomposition `2Q − I = ρ |2Q − I|` and its checks.
#[derive(Debug, Clone)]
pub struct ReflectionPolar {
    pub rho: ComplexMatrix,
    /// `|2Q − I| = ((2Q − I)*(2Q − I))^{1/2}`.
    pub modulus: ComplexMatrix,
    /// `max(‖ρ² − I‖, ‖ρ − ρ*‖)`.
    pub symmetry_defect: f64,
    /// `‖ρ |2Q − I| − |2Q − I|^{-1} ρ‖`.
    pub intertwining_defect: f64,
    /// Largest gap between the computed blocks on the generic part and the
    /// closed forms `[[S, −C], [−C, (1 + C²)S^{-1}]]` and `[[S, −C], [−C, −S]]`.
    pub closed_form_defect: f64,
    /// `‖J* Q J − [[1, −C S^{-1}], [0, 0]]‖`.
    pub model_q_defect: f64,
    /// Defect of `[[S², −2CS], [−2CS, 3C² + 1]] = U diag((1+C)², (1−C)²) U*`
    /// with the explicit unitary `U`.
    pub lemma_defect: f64,
    pub model: HalmosModel,
}

impl ReflectionPolar {
    pub fn max_defect(&self) -> f64 {
        [
            self.symmetry_defect,
            self.intertwining_defect,
            self.closed_form_defect,
            self.model_q_defect,
            self.lemma_defect,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn diag_map(model: &HalmosModel, f: impl Fn(f64) -> f64) -> ComplexMatrix {
    from_real_diagonal(&model.angles.iter().map(|&x| f(x)).collect::<Vec<_>>())
}

pub fn reflection_polar(q: &ObliqueProjection, cfg: &ToleranceConfig) -> Result<ReflectionPolar> {
    let n = q.dim();
    let r = q.q.scale(2.0) - identity(n);
    // 2Q − I = Y Σ W* is invertible; going through the SVD rather than the
    // spectrum of (2Q − I)*(2Q − I) avoids squaring its condition number
    let svd = svd_full(&r);
    let w = &svd.v;
    let sigma = from_real_diagonal(&svd.singular_values);
    let sigma_inv = from_real_diagonal(&svd.singular_values.iter().map(|v| 1.0 / v).collect::<Vec<_>>());
    let modulus = w * sigma * w.adjoint();
    let modulus = (&modulus + modulus.adjoint()).unscale(2.0);
    let modulus_inv = w * sigma_inv * w.adjoint();
    let modulus_inv = (&modulus_inv + modulus_inv.adjoint()).unscale(2.0);
    let rho = &svd.u * w.adjoint();

    let id = identity(n);
    let symmetry_defect =
        frobenius_norm(&(&rho * &rho - &id)).max(frobenius_norm(&(&rho - rho.adjoint())));
    let intertwining_defect = frobenius_norm(&(&rho * &modulus - &modulus_inv * &rho));

    let model = halmos_decompose(&q.range_frame, &q.nullspace_frame, cfg)?;
    let j = &model.generic_frame;
    let c = model.cos();
    let s = model.sin();
    let s_inv = diag_map(&model, |x| 1.0 / x.sin());
    let one_plus_c2 = diag_map(&model, |x| 1.0 + x.cos() * x.cos());
    let modulus_closed = block2x2(&s, &(-&c), &(-&c), &(&one_plus_c2 * &s_inv));
    let rho_closed = block2x2(&s, &(-&c), &(-&c), &(-&s));
    let closed_form_defect = frobenius_norm(&(j.adjoint() * &modulus * j - modulus_closed))
        .max(frobenius_norm(&(j.adjoint() * &rho * j - rho_closed)));
    let g = model.generic_dim();
    let q_closed = block2x2(&identity(g), &(-(&c * &s_inv)), &zeros(g, g), &zeros(g, g));
    let model_q_defect = frobenius_norm(&(j.adjoint() * &q.q * j - q_closed));
    let lemma_defect = lemma_diagonalization_defect(&model);

    Ok(ReflectionPolar {
        rho,
        modulus,
        symmetry_defect,
        intertwining_defect,
        closed_form_defect,
        model_q_defect,
        lemma_defect,
        model,
    })
}

/// `‖M − U diag((1+C)², (1−C)²) U*‖ + ‖U*U − I‖` for
/// `M = [[S², −2CS], [−2CS, 3C² + 1]]`.
fn lemma_diagonalization_defect(model: &HalmosModel) -> f64 {
    let c = model.cos();
    let s = model.sin();
    let m = block2x2(
        &(&s * &s),
        &(&c * &s).scale(-2.0),
        &(&c * &s).scale(-2.0),
        &((&c * &c).scale(3.0) + identity(model.generic_dim())),
    );
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let u = block2x2(
        &diag_map(model, |x| -h * x.sin() / (1.0 + x.cos()).sqrt()),
        &diag_map(model, |x| h * x.sin() / (1.0 - x.cos()).sqrt()),
        &diag_map(model, |x| h * (1.0 + x.cos()).sqrt()),
        &diag_map(model, |x| h * (1.0 - x.cos()).sqrt()),
    );
    let d = block2x2(
        &diag_map(model, |x| (1.0 + x.cos()).powi(2)),
        &zeros(model.generic_dim(), model.generic_dim()),
        &zeros(model.generic_dim(), model.generic_dim()),
        &diag_map(model, |x| (1.0 - x.cos()).powi(2)),
    );
    let unitary = frobenius_norm(&(u.adjoint() * &u - identity(u.nrows())));
    frobenius_norm(&(m - &u * d * u.adjoint())) + unitary
}

/// Spectral data tying `QQ*` and `|2Q − I|` to the corner block.
#[derive(Debug, Clone)]
pub struct RhoReport {
    pub beta: Vec<f64>,
    /// Spectrum of `QQ*`, nonincreasing.
    pub qq_star_eigenvalues: Vec<f64>,
    /// `‖V* QQ* V − diag(I + BB*, 0)‖` in the adapted basis `V`.
    pub block_identity_defect: f64,
    /// Spectrum of the `(1,1)` entry `P_S |2Q − I| |_S`, nonincreasing.
    pub corner_modulus_spectrum: Vec<f64>,
    /// Distance between the nonzero part of `eig(QQ*)` and `1 + β²`.
    pub qq_star_defect: f64,
    /// Distance between the `(1,1)` spectrum and `1/√(1 + β²)`.
    pub corner_modulus_defect: f64,
}

pub fn rho_in_sd_report(q: &ObliqueProjection, cfg: &ToleranceConfig) -> Result<RhoReport> {
    let n = q.dim();
    let k = q.range_frame.rank();
    let m = n - k;
    let mut beta = singular_values(&q.corner);
    let qq = &q.q * q.q.adjoint();
    let qq_star_eigenvalues = hermitian_eig(&qq)?.values;

    let v = q.adapted_basis();
    let bb = &q.corner * q.corner.adjoint();
    let expected = block2x2(&(identity(k) + bb), &zeros(k, m), &zeros(m, k), &zeros(m, m));
    let block_identity_defect = frobenius_norm(&(v.adjoint() * &qq * &v - expected));

    beta.resize(k, 0.0);
    let predicted: Vec<f64> = beta.iter().map(|b| 1.0 + b * b).collect();
    let qq_star_defect = real_multiset_defect(&qq_star_eigenvalues[..k], &predicted);

    let polar = reflection_polar(q, cfg)?;
    let fs = q.range_frame.basis();
    let corner_modulus = fs.adjoint() * &polar.modulus * fs;
    let corner_modulus_spectrum = hermitian_eig(&corner_modulus)?.values;
    let predicted: Vec<f64> = beta.iter().map(|b| 1.0 / (1.0 + b * b).sqrt()).collect();
    let corner_modulus_defect = real_multiset_defect(&corner_modulus_spectrum, &predicted);
    beta.truncate(k.min(m));

    Ok(RhoReport {
        beta,
        qq_star_eigenvalues,
        block_identity_defect,
        corner_modulus_spectrum,
        qq_star_defect,
        corner_modulus_defect,
    })
}

/// A unitarily equivalent idempotent whose corner block is positive.
#[derive(Debug, Clone)]
pub struct PositiveNormalForm {
    /// `[[I, B₊], [0, 0]]` on coordinates; range is the first `k` coordinates.
    pub q_plus: ObliqueProjection,
    /// `V` with `Q = V Q₊ V*`.
    pub unitary: ComplexMatrix,
}

/// For square `B = Y Σ Z*`, conjugation by `diag(I, Z Y*)` gives
/// `B₊ = Y Σ Y* = |B*|`. For rectangular `B` the conjugation is
/// `diag(Y, Z)` and `B₊ = Σ`, nonnegative diagonal.
pub fn positive_normal_form(
    q: &ObliqueProjection,
    cfg: &ToleranceConfig,
) -> Result<PositiveNormalForm> {
    let n = q.dim();
    let k = q.range_frame.rank();
    let m = n - k;
    let b = &q.corner;
    let (g1, g2) = if k == m {
        let svd = svd_full(b);
        let w = &svd.u * svd.v.adjoint();
        (identity(k), w.adjoint())
    } else {
        (full_unitary_factor(b, true), full_unitary_factor(b, false))
    };
    let g = block2x2(&g1, &zeros(k, m), &zeros(m, k), &g2);
    let unitary = q.adapted_basis() * &g;
    let b_plus = g1.adjoint() * b * &g2;
    let q_plus_matrix = block2x2(&identity(k), &b_plus, &zeros(m, k), &zeros(m, m));
    let range = Frame::coordinate(n, &(0..k).collect::<Vec<_>>());
    let null = orthonormal_frame(&(identity(n) - &q_plus_matrix), cfg)?;
    let q_plus = ObliqueProjection {
        q: q_plus_matrix,
        range_frame: range,
        nullspace_frame: null,
        complement_frame: Frame::coordinate(n, &(k..n).collect::<Vec<_>>()),
        corner: b_plus,
    };
    Ok(PositiveNormalForm { q_plus, unitary })
}

/// Square unitary whose leading columns are the left (`left = true`) or
/// right singular vectors of `b`.
fn full_unitary_factor(b: &ComplexMatrix, left: bool) -> ComplexMatrix {
    let dim = if left { b.nrows() } else { b.ncols() };
    let gram = if left {
        b * b.adjoint()
    } else {
        b.adjoint() * b
    };
    if dim == 0 {
        return identity(0);
    }
    // full eigenbasis of B B* (or B* B), eigenvalues nonincreasing
    let eig = hermitian_eig(&gram).expect("Gram matrix is Hermitian");
    let svd = svd_full(b);
    let thin = if left { &svd.u } else { &svd.v };
    let mut out = eig.vectors.clone();
    let r = thin.ncols();
    out.columns_mut(0, r).copy_from(thin);
    // re-orthonormalize the tail against the singular vectors
    let mut cols: Vec<nalgebra::DVector<num_complex::Complex64>> =
        out.column_iter().take(r).map(|c| c.into_owned()).collect();
    for j in r..dim {
        let mut v = out.column(j).into_owned();
        for _ in 0..2 {
            for c in &cols {
                let p = c.dotc(&v);
                v -= c * p;
            }
        }
        let nv = v.norm();
        cols.push(v.unscale(nv));
    }
    ComplexMatrix::from_columns(&cols)
}

/// `max(‖B₊ − B₊*‖, −λ_min(B₊))` for square corners; for rectangular ones the
/// largest off-diagonal modulus or negative diagonal entry.
pub fn positivity_defect(b: &ComplexMatrix) -> f64 {
    if b.is_empty() {
        return 0.0;
    }
    if b.nrows() == b.ncols() {
        let herm = hermitian_defect(b);
        let sym = (b + b.adjoint()).unscale(2.0);
        let min = hermitian_eig(&sym)
            .ok()
            .and_then(|e| e.values.last().copied())
            .unwrap_or(0.0);
        herm.max(-min)
    } else {
        let mut worst = 0.0f64;
        for i in 0..b.nrows() {
            for j in 0..b.ncols() {
                let z = b[(i, j)];
                if i == j {
                    worst = worst.max(z.im.abs()).max(-z.re);
                } else {
                    worst = worst.max(z.norm());
                }
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, from_real_rows, unitary_defect};
    use crate::random;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn c2_example() -> ObliqueProjection {
        let cfg = cfg();
        let s = Frame::coordinate(2, &[0]);
        let t = orthonormal_frame(&from_real_rows(2, 1, &[1.0, 1.0]), &cfg).unwrap();
        oblique_projection(&s, &t, &cfg).unwrap()
    }

    fn random_oblique(seed: u64, n: usize, k: usize) -> ObliqueProjection {
        let mut rng = random::rng(seed);
        let s = random::random_frame(&mut rng, n, k);
        let t = random::random_frame(&mut rng, n, n - k);
        oblique_projection(&s, &t, &cfg()).unwrap()
    }

    #[test]
    fn orthogonal_case() {
        let cfg = cfg();
        let s = Frame::coordinate(3, &[0]);
        let q = oblique_projection(&s, &s.complement(&cfg), &cfg).unwrap();
        assert!(frobenius_norm(&(&q.q - s.projector())) < 1e-14);
        assert!(frobenius_norm(&q.corner) < 1e-14);
        let p = reflection_polar(&q, &cfg).unwrap();
        assert!(frobenius_norm(&(&p.modulus - identity(3))) < 1e-14);
        let r = rho_in_sd_report(&q, &cfg).unwrap();
        assert!(r
            .qq_star_eigenvalues
            .iter()
            .all(|v| v.abs() < 1e-14 || (v - 1.0).abs() < 1e-14));
    }

    #[test]
    fn two_by_two_example() {
        let cfg = cfg();
        let q = c2_example();
        let expected = from_real_rows(2, 2, &[1.0, -1.0, 0.0, 0.0]);
        assert!(frobenius_norm(&(&q.q - expected)) < 1e-14);
        assert!((q.corner[(0, 0)] - c64(-1.0, 0.0)).norm() < 1e-14);
        let t = sv_transfer(&q);
        assert!((t.s[0] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
        assert!(t.defect < 1e-14);
        let p = reflection_polar(&q, &cfg).unwrap();
        assert!(p.closed_form_defect <= 1e-10);
        assert!(p.max_defect() <= 1e-10);
        let r = rho_in_sd_report(&q, &cfg).unwrap();
        assert!((r.qq_star_eigenvalues[0] - 2.0).abs() < 1e-14);
        let f = positive_normal_form(&q, &cfg).unwrap();
        assert!((f.q_plus.corner[(0, 0)] - c64(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn rejects_non_complementary() {
        let s = Frame::coordinate(2, &[0]);
        let r = oblique_projection(&s, &s, &cfg());
        assert!(matches!(r, Err(Error::NotComplementary { .. })));
    }

    #[test]
    fn random_oblique_invariants() {
        let cfg = cfg();
        for (seed, n, k) in [(1, 8, 3), (2, 6, 3), (3, 7, 5), (4, 8, 2)] {
            let q = random_oblique(seed, n, k);
            assert!(q.idempotency_defect() <= 1e-10);
            assert!(q.frame_defect() <= 1e-10);
            assert!(q.block_form_defect() <= 1e-10);
            assert!(sv_transfer(&q).defect <= 1e-9);
            let p = reflection_polar(&q, &cfg).unwrap();
            assert!(p.symmetry_defect <= 1e-9 && p.intertwining_defect <= 1e-9);
            assert!(p.closed_form_defect <= 1e-8 && p.model_q_defect <= 1e-8);
            assert!(p.lemma_defect <= 1e-10);
            let r = rho_in_sd_report(&q, &cfg).unwrap();
            assert!(r.qq_star_defect <= 1e-9 && r.corner_modulus_defect <= 1e-9);
            assert!(r.block_identity_defect <= 1e-9);
        }
    }

    #[test]
    fn normal_form_preserves_singular_values() {
        let cfg = cfg();
        for (seed, n, k) in [(5, 6, 3), (6, 7, 2), (7, 7, 5)] {
            let q = random_oblique(seed, n, k);
            let f = positive_normal_form(&q, &cfg).unwrap();
            let a = singular_values(&q.corner);
            let b = singular_values(&f.q_plus.corner);
            assert!(real_multiset_defect(&a, &b) <= 1e-10);
            assert!(positivity_defect(&f.q_plus.corner) <= 1e-10);
            assert!(unitary_defect(&f.unitary) <= 1e-10);
            let back = &f.unitary * &f.q_plus.q * f.unitary.adjoint();
            assert!(frobenius_norm(&(back - &q.q)) <= 1e-9);
        }
    }

    #[test]
    fn from_idempotent_round_trip() {
        let cfg = cfg();
        let mut rng = random::rng(40);
        let m = random::random_idempotent(&mut rng, 5, 2);
        let q = ObliqueProjection::from_idempotent(m, &cfg).unwrap();
        assert_eq!(q.range_frame.rank(), 2);
        assert!(sv_transfer(&q).defect <= 1e-9);
    }
}
