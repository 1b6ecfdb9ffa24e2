//! Pairs of orthogonal projections: the Halmos model and the spectral
//! relations tying `PQ`, `P − Q`, `P Q⊥`, `P⊥ Q⊥` and `[P, Q]` together.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    block2x2, c64, cluster_values, commutator, complex_multiset_defect, ensure_finite,
    ensure_square, frobenius_norm, from_real_diagonal, hermitian_defect, hermitian_eig,
    hermitian_function, identity, orthonormal_frame, real_multiset_defect, spectral_norm,
    sqrt_psd, svd_full, unitary_defect, zeros, Cluster, ComplexMatrix, Frame, ToleranceConfig,
};

/// Canonical decomposition of `C^n` relative to two subspaces `R(P)`, `R(Q)`.
///
/// On the generic part the isometry `generic_frame = [ψ | φ]` identifies
/// `H'` with `L × L`, where `P' = diag(1, 0)` and
/// `Q' = [[C², CS], [CS, S²]]`, `C = cos X`, `S = sin X`.
#[derive(Debug, Clone)]
pub struct HalmosModel {
    /// `R(P) ∩ R(Q)`
    pub h11: Frame,
    /// `N(P) ∩ N(Q)`
    pub h00: Frame,
    /// `R(P) ∩ N(Q)`
    pub h10: Frame,
    /// `N(P) ∩ R(Q)`
    pub h01: Frame,
    /// `n × 2g` isometry onto the generic part; the first `g` columns lie in
    /// `R(P)`, the last `g` in `N(P)`.
    pub generic_frame: ComplexMatrix,
    /// Spectrum of the angle operator `X`, in the order of `generic_frame`.
    pub angles: Vec<f64>,
}

impl HalmosModel {
    pub fn ambient_dim(&self) -> usize {
        self.generic_frame.nrows()
    }

    pub fn generic_dim(&self) -> usize {
        self.angles.len()
    }

    /// `X` in model coordinates (diagonal, radians).
    pub fn x(&self) -> ComplexMatrix {
        from_real_diagonal(&self.angles)
    }

    pub fn cos(&self) -> ComplexMatrix {
        from_real_diagonal(&self.angles.iter().map(|x| x.cos()).collect::<Vec<_>>())
    }

    pub fn sin(&self) -> ComplexMatrix {
        from_real_diagonal(&self.angles.iter().map(|x| x.sin()).collect::<Vec<_>>())
    }

    /// The part of `R(P)` inside the generic part.
    pub fn generic_first(&self) -> Frame {
        let g = self.generic_dim();
        Frame::new_unchecked(self.generic_frame.columns(0, g).into_owned())
    }

    /// The part of `N(P)` inside the generic part.
    pub fn generic_second(&self) -> Frame {
        let g = self.generic_dim();
        Frame::new_unchecked(self.generic_frame.columns(g, g).into_owned())
    }

    /// `P' = diag(1, 0)` on `L × L`.
    pub fn p_model(&self) -> ComplexMatrix {
        let g = self.generic_dim();
        block2x2(&identity(g), &zeros(g, g), &zeros(g, g), &zeros(g, g))
    }

    /// `Q' = [[C², CS], [CS, S²]]` on `L × L`.
    pub fn q_model(&self) -> ComplexMatrix {
        let c = self.cos();
        let s = self.sin();
        block2x2(&(&c * &c), &(&c * &s), &(&c * &s), &(&s * &s))
    }

    /// Rebuilds `(P, Q)` from the five blocks.
    pub fn reconstruct(&self) -> (ComplexMatrix, ComplexMatrix) {
        let j = &self.generic_frame;
        let p = self.h11.projector() + self.h10.projector() + j * self.p_model() * j.adjoint();
        let q = self.h11.projector() + self.h01.projector() + j * self.q_model() * j.adjoint();
        (p, q)
    }

    /// Angle spectrum grouped by `tol`, for reporting multiplicities.
    pub fn angle_clusters(&self, tol: f64) -> Vec<Cluster> {
        cluster_values(&self.angles, tol)
    }

    /// Largest deviation of the five blocks from being mutually orthogonal and
    /// summing to the identity.
    pub fn orthogonality_defect(&self) -> f64 {
        let blocks = [
            self.h11.basis(),
            self.h00.basis(),
            self.h10.basis(),
            self.h01.basis(),
            &self.generic_frame,
        ];
        let n = self.ambient_dim();
        let mut all = zeros(n, 0);
        for b in blocks {
            all = crate::linalg::hcat(&all, b);
        }
        frobenius_norm(&(all.adjoint() * &all - identity(all.ncols())))
            .max(frobenius_norm(&(&all * all.adjoint() - identity(n))))
    }
}

fn check_pair(p: &Frame, q: &Frame) -> Result<()> {
    if p.ambient_dim() != q.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: p.ambient_dim(),
            found: q.ambient_dim(),
        });
    }
    ensure_finite(p.basis(), "P frame")?;
    ensure_finite(q.basis(), "Q frame")
}

/// Vectors of the intersection `R(A) ∩ R(B)`: left singular directions of
/// `A* B` with singular value at least `1 − rank_tol`.
fn intersection(a: &Frame, b: &Frame, cfg: &ToleranceConfig) -> Frame {
    let n = a.ambient_dim();
    if a.is_empty() || b.is_empty() {
        return Frame::empty(n);
    }
    let svd = svd_full(&(a.basis().adjoint() * b.basis()));
    let k = svd
        .singular_values
        .iter()
        .take_while(|&&s| s >= 1.0 - cfg.rank_tol)
        .count();
    Frame::new_unchecked(a.basis() * svd.u.columns(0, k))
}

/// Classification of a cosine of a principal angle.
fn is_one(s: f64, cfg: &ToleranceConfig) -> bool {
    s >= 1.0 - cfg.rank_tol
}

fn is_generic(s: f64, cfg: &ToleranceConfig) -> bool {
    s > cfg.rank_tol && !is_one(s, cfg)
}

/// `sqrt(1 − s²)` computed as `sqrt((1 − s)(1 + s))`.
fn complementary(s: f64) -> f64 {
    ((1.0 - s).max(0.0) * (1.0 + s)).sqrt()
}

/// Halmos decomposition of the pair `(R(P), R(Q))`.
pub fn halmos_decompose(p: &Frame, q: &Frame, cfg: &ToleranceConfig) -> Result<HalmosModel> {
    check_pair(p, q)?;
    let n = p.ambient_dim();
    let p_perp = p.complement(cfg);
    let q_perp = q.complement(cfg);

    let h11 = intersection(p, q, cfg);
    let h10 = intersection(p, &q_perp, cfg);
    let h01 = intersection(&p_perp, q, cfg);
    let h00 = intersection(&p_perp, &q_perp, cfg);

    let mut psi_cols = Vec::new();
    let mut phi_cols = Vec::new();
    let mut angles = Vec::new();
    if !p.is_empty() && !q.is_empty() {
        let svd = svd_full(&(p.basis().adjoint() * q.basis()));
        let proj_p = p.projector();
        for (k, &s) in svd.singular_values.iter().enumerate() {
            if !is_generic(s, cfg) {
                continue;
            }
            let psi = p.basis() * svd.u.column(k);
            let xi = q.basis() * svd.v.column(k);
            let resid = &xi - &proj_p * &xi;
            let t = resid.norm();
            psi_cols.push(psi);
            phi_cols.push(resid.unscale(t));
            angles.push(t.atan2(s));
        }
    }
    let g = angles.len();
    let mut generic_frame = zeros(n, 2 * g);
    for (k, (psi, phi)) in psi_cols.iter().zip(&phi_cols).enumerate() {
        generic_frame.column_mut(k).copy_from(psi);
        generic_frame.column_mut(g + k).copy_from(phi);
    }

    let total = h11.rank() + h00.rank() + h10.rank() + h01.rank() + 2 * g;
    if total != n {
        return Err(Error::InvalidInput(format!(
            "rank decisions are inconsistent: blocks cover {total} of {n} dimensions; \
             adjust rank_tol"
        )));
    }
    Ok(HalmosModel {
        h11,
        h00,
        h10,
        h01,
        generic_frame,
        angles,
    })
}

/// Numerical check of the relations between the products and differences of
/// two projections.
#[derive(Debug, Clone)]
pub struct RelationsReport {
    /// All `min(p, q)` singular values of `PQ` restricted to `R(Q) → R(P)`.
    pub singular_values_pq: Vec<f64>,
    /// Spectrum of `P − Q`, nonincreasing.
    pub eigenvalues_p_minus_q: Vec<f64>,
    /// The multiset `{±√(1−s²)} ∪ {0, ±1}` predicted from `singular_values_pq`.
    pub predicted_p_minus_q: Vec<f64>,
    /// Singular values of `P Q⊥` restricted to `R(Q⊥) → R(P)`.
    pub singular_values_pqperp: Vec<f64>,
    /// Singular values of `P⊥ Q⊥` restricted to `R(Q⊥) → R(P⊥)`.
    pub singular_values_pperp_qperp: Vec<f64>,
    pub commutator_eigenvalues: Vec<Complex64>,
    /// Multiset distance between `eig(P − Q)` and its prediction.
    pub difference_defect: f64,
    /// Distance between the generic values of `P Q⊥` and `√(1 − s²)`.
    pub perp_defect: f64,
    /// Distance between the generic values of `P⊥ Q⊥` and those of `PQ`.
    pub complement_defect: f64,
    pub commutator_defect: f64,
    pub max_identity_defect: f64,
}

fn generic_values(values: &[f64], cfg: &ToleranceConfig) -> Vec<f64> {
    values
        .iter()
        .copied()
        .filter(|&s| is_generic(s, cfg))
        .collect()
}

fn restricted_singular_values(a: &Frame, b: &Frame) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    crate::linalg::singular_values(&(a.basis().adjoint() * b.basis()))
}

/// Spectrum of `P − Q` predicted from the singular values `s` of `PQ`.
pub fn predicted_difference_spectrum(
    s: &[f64],
    n: usize,
    p_rank: usize,
    q_rank: usize,
    cfg: &ToleranceConfig,
) -> Vec<f64> {
    let ones = s.iter().filter(|&&v| is_one(v, cfg)).count();
    let generic = generic_values(s, cfg);
    let rank = ones + generic.len();
    let mut out = Vec::with_capacity(n);
    for &v in &generic {
        let t = complementary(v);
        out.push(t);
        out.push(-t);
    }
    out.extend(std::iter::repeat_n(1.0, p_rank - rank));
    out.extend(std::iter::repeat_n(-1.0, q_rank - rank));
    out.extend(std::iter::repeat_n(0.0, n + 2 * ones - p_rank - q_rank));
    out.sort_by(|a, b| b.total_cmp(a));
    out
}

/// Checks the spectral transfer laws for the pair `(P, Q)`.
pub fn product_relations(p: &Frame, q: &Frame, cfg: &ToleranceConfig) -> Result<RelationsReport> {
    check_pair(p, q)?;
    let n = p.ambient_dim();
    let p_perp = p.complement(cfg);
    let q_perp = q.complement(cfg);

    let s = restricted_singular_values(p, q);
    let eig = hermitian_eig(&(p.projector() - q.projector()))?.values;
    let predicted = predicted_difference_spectrum(&s, n, p.rank(), q.rank(), cfg);
    let difference_defect = real_multiset_defect(&eig, &predicted);

    let generic_s = generic_values(&s, cfg);
    let t_all = restricted_singular_values(p, &q_perp);
    // both sides filtered on t itself so rounding near 1 cannot split them
    let below_one = |t: &f64| !is_one(*t, cfg);
    let t_generic: Vec<f64> = t_all
        .iter()
        .copied()
        .filter(|t| *t > cfg.rank_tol && below_one(t))
        .collect();
    let t_predicted: Vec<f64> = generic_s
        .iter()
        .map(|&v| complementary(v))
        .filter(below_one)
        .collect();
    let perp_defect = real_multiset_defect(&t_generic, &t_predicted);

    let c_all = restricted_singular_values(&p_perp, &q_perp);
    let complement_defect = real_multiset_defect(&generic_values(&c_all, cfg), &generic_s);

    let comm = commutator_spectrum(p, q, cfg)?;
    let max_identity_defect = difference_defect
        .max(perp_defect)
        .max(complement_defect)
        .max(comm.spectrum_defect);

    Ok(RelationsReport {
        singular_values_pq: s,
        eigenvalues_p_minus_q: eig,
        predicted_p_minus_q: predicted,
        singular_values_pqperp: t_all,
        singular_values_pperp_qperp: c_all,
        commutator_eigenvalues: comm.eigenvalues,
        difference_defect,
        perp_defect,
        complement_defect,
        commutator_defect: comm.spectrum_defect,
        max_identity_defect,
    })
}

/// Spectrum of `[P, Q] = PQ − QP` and the explicit eigenvectors built from
/// the Schmidt system of `PQ`.
#[derive(Debug, Clone)]
pub struct CommutatorSpectrum {
    /// Eigenvalues of `[P, Q]` (purely imaginary), ordered by imaginary part.
    pub eigenvalues: Vec<Complex64>,
    /// Orthonormal eigenvectors matching `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
    /// `{±i s √(1 − s²)} ∪ {0}`.
    pub predicted: Vec<Complex64>,
    pub spectrum_defect: f64,
    /// Largest relative residual `‖[P,Q]v − λv‖ / ‖v‖` over the explicit
    /// vectors `v_k = (s² − i s t) ξ_k − s ψ_k` and `w_k` (conjugate sign).
    pub eigenvector_residual: f64,
    /// Largest `‖[P,Q] F‖` over the four non-generic blocks.
    pub kernel_defect: f64,
}

pub fn commutator_spectrum(
    p: &Frame,
    q: &Frame,
    cfg: &ToleranceConfig,
) -> Result<CommutatorSpectrum> {
    check_pair(p, q)?;
    let n = p.ambient_dim();
    let pp = p.projector();
    let qq = q.projector();
    let a = commutator(&pp, &qq);
    // i[P,Q] is Hermitian; eig([P,Q]) = -i eig(i[P,Q])
    let ia = a.map(|z| z * Complex64::i());
    let eig = hermitian_eig(&ia)?;
    let eigenvalues: Vec<Complex64> = eig.values.iter().map(|&m| c64(0.0, -m)).collect();

    let mut predicted = Vec::with_capacity(n);
    let mut residual = 0.0f64;
    if !p.is_empty() && !q.is_empty() {
        let svd = svd_full(&(p.basis().adjoint() * q.basis()));
        for (k, &s) in svd.singular_values.iter().enumerate() {
            if !is_generic(s, cfg) {
                continue;
            }
            let t = complementary(s);
            let lambda = c64(0.0, s * t);
            predicted.push(lambda);
            predicted.push(-lambda);
            let psi = p.basis() * svd.u.column(k);
            let xi = q.basis() * svd.v.column(k);
            for (coef, lam) in [(c64(s * s, -s * t), lambda), (c64(s * s, s * t), -lambda)] {
                let v = &xi * coef - &psi * c64(s, 0.0);
                let r = (&a * &v - &v * lam).norm() / v.norm();
                residual = residual.max(r);
            }
        }
    }
    predicted.resize(n, c64(0.0, 0.0));
    let spectrum_defect = complex_multiset_defect(&eigenvalues, &predicted);

    let model = halmos_decompose(p, q, cfg)?;
    let kernel_defect = [&model.h11, &model.h00, &model.h10, &model.h01]
        .iter()
        .filter(|f| !f.is_empty())
        .map(|f| frobenius_norm(&(&a * f.basis())))
        .fold(0.0, f64::max);

    Ok(CommutatorSpectrum {
        eigenvalues,
        eigenvectors: eig.vectors,
        predicted,
        spectrum_defect,
        eigenvector_residual: residual,
        kernel_defect,
    })
}

/// Recovers the angle operator `X` from `CS = ½ sin(2X)`.
///
/// `e` spans the spectral subspace of `2X` in `[0, π/2]`; there
/// `X = ½ arcsin(2 CS)`, and on its complement `X = ½ (arccos(2 CS) + π/2)`.
pub fn recover_angle_from_cs(
    cs: &ComplexMatrix,
    e: &Frame,
    cfg: &ToleranceConfig,
) -> Result<ComplexMatrix> {
    ensure_finite(cs, "CS")?;
    ensure_square(cs, "CS")?;
    let n = cs.nrows();
    if e.ambient_dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: e.ambient_dim(),
        });
    }
    let spec = hermitian_eig(cs)?.values;
    let slack = cfg.slack(0.5);
    if let (Some(&hi), Some(&lo)) = (spec.first(), spec.last()) {
        if hi > 0.5 + slack || lo < -slack {
            return Err(Error::InvalidInput(format!(
                "spectrum of CS must lie in [0, 1/2], found [{lo}, {hi}]"
            )));
        }
    }
    let e_perp = e.complement(cfg);
    let mut x = zeros(n, n);
    type Branch<'a> = (&'a Frame, fn(f64) -> f64);
    let branches: [Branch; 2] = [
        (e, |v| 0.5 * v.clamp(-1.0, 1.0).asin()),
        (&e_perp, |v| 0.5 * (v.clamp(-1.0, 1.0).acos() + FRAC_PI_2)),
    ];
    for (frame, f) in branches {
        if frame.is_empty() {
            continue;
        }
        let b = frame.basis();
        let restricted = b.adjoint() * cs * b;
        let invariance = frobenius_norm(&(cs * b - b * &restricted));
        if invariance > cfg.slack(frobenius_norm(cs)) * 10.0 {
            return Err(Error::InvalidInput(format!(
                "E does not span an invariant subspace of CS (defect {invariance:.3e})"
            )));
        }
        let two_cs = restricted.scale(2.0);
        let local = hermitian_function(&two_cs, f)?;
        x += b * local * b.adjoint();
    }
    Ok((&x + x.adjoint()).unscale(2.0))
}

/// Orthonormal bases `f`, `f'` of `L0` with `⟨f_n, U f'_m⟩ = 0` for `n ≠ m`.
#[derive(Debug, Clone)]
pub struct BiorthonormalBases {
    /// `n × k`, columns `f_n`.
    pub f: ComplexMatrix,
    /// `n × k`, columns `f'_n`.
    pub f_prime: ComplexMatrix,
    /// `G[n][m] = ⟨U f'_m, f_n⟩ = f_n* U f'_m`.
    pub cross_gram: ComplexMatrix,
    /// Singular values of the compression `P0 U |L0`, nonincreasing.
    pub singular_values: Vec<f64>,
}

impl BiorthonormalBases {
    pub fn off_diagonal_defect(&self) -> f64 {
        let mut m = self.cross_gram.clone();
        for i in 0..m.nrows().min(m.ncols()) {
            m[(i, i)] = c64(0.0, 0.0);
        }
        frobenius_norm(&m)
    }

    /// Largest gap between `|G[n][n]|` and the singular values.
    pub fn diagonal_defect(&self) -> f64 {
        self.singular_values
            .iter()
            .enumerate()
            .map(|(i, s)| (self.cross_gram[(i, i)].norm() - s).abs())
            .fold(0.0, f64::max)
    }
}

pub fn ensure_unitary(u: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<()> {
    ensure_finite(u, "U")?;
    ensure_square(u, "U")?;
    let defect = unitary_defect(u);
    if defect > cfg.slack(u.nrows() as f64) {
        return Err(Error::NotUnitary { defect });
    }
    Ok(())
}

/// Extends the orthonormal columns of `partial` (`k × r`) to an orthonormal
/// basis of `C^k` by projecting canonical vectors in index order.
fn complete_basis(partial: &ComplexMatrix, cfg: &ToleranceConfig) -> ComplexMatrix {
    let k = partial.nrows();
    let mut cols: Vec<nalgebra::DVector<Complex64>> =
        partial.column_iter().map(|c| c.into_owned()).collect();
    for i in 0..k {
        if cols.len() == k {
            break;
        }
        let mut v = nalgebra::DVector::<Complex64>::zeros(k);
        v[i] = c64(1.0, 0.0);
        for _pass in 0..2 {
            for c in &cols {
                let proj = c.dotc(&v);
                v -= c * proj;
            }
        }
        let norm = v.norm();
        if norm > 0.5_f64.max(cfg.rank_tol) {
            cols.push(v.unscale(norm));
        }
    }
    ComplexMatrix::from_columns(&cols)
}

/// Bi-orthonormal bases of `L0` for the compression of `U`.
pub fn biorthonormal_bases(
    u: &ComplexMatrix,
    l0: &Frame,
    cfg: &ToleranceConfig,
) -> Result<BiorthonormalBases> {
    ensure_unitary(u, cfg)?;
    if u.nrows() != l0.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: u.nrows(),
            found: l0.ambient_dim(),
        });
    }
    let k = l0.rank();
    let f0 = l0.basis();
    let m = f0.adjoint() * u * f0;
    let svd = svd_full(&m);
    let s1 = svd.singular_values.first().copied().unwrap_or(0.0);
    let r = svd
        .singular_values
        .iter()
        .take_while(|&&s| s > cfg.rank_tol * s1.max(1.0))
        .count();
    let y = complete_basis(&svd.u.columns(0, r).into_owned(), cfg);
    let w = complete_basis(&svd.v.columns(0, r).into_owned(), cfg);
    debug_assert_eq!(y.ncols(), k);
    let f = f0 * &y;
    let f_prime = f0 * &w;
    let cross_gram = f.adjoint() * u * &f_prime;
    Ok(BiorthonormalBases {
        f,
        f_prime,
        cross_gram,
        singular_values: svd.singular_values,
    })
}

/// Spectral data of the compression `P0 U |L0`, viewed through the pair
/// `(L0, U L0)`.
#[derive(Debug, Clone)]
pub struct CompressionReport {
    pub singular_values: Vec<f64>,
    pub eigenvalues_p0_minus_q: Vec<f64>,
    pub commutator_eigenvalues: Vec<Complex64>,
    /// `‖(I − P0) U P0‖`.
    pub invariance_defect: f64,
    /// `L0` is invariant under `U` within tolerance.
    pub invariant: bool,
    /// Distance between the compression singular values and the singular
    /// values of `P0 · U P0 U*` reported by [`product_relations`].
    pub consistency_defect: f64,
    pub relations: RelationsReport,
}

pub fn compression_report(
    u: &ComplexMatrix,
    l0: &Frame,
    cfg: &ToleranceConfig,
) -> Result<CompressionReport> {
    ensure_unitary(u, cfg)?;
    if u.nrows() != l0.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: u.nrows(),
            found: l0.ambient_dim(),
        });
    }
    let n = u.nrows();
    let f0 = l0.basis();
    let singular_values = crate::linalg::singular_values(&(f0.adjoint() * u * f0));
    let ul0 = l0.transform(u);
    let relations = product_relations(l0, &ul0, cfg)?;
    let invariance_defect = spectral_norm(&((identity(n) - l0.projector()) * u * f0));
    let consistency_defect =
        real_multiset_defect(&singular_values, &relations.singular_values_pq);
    Ok(CompressionReport {
        eigenvalues_p0_minus_q: relations.eigenvalues_p_minus_q.clone(),
        commutator_eigenvalues: relations.commutator_eigenvalues.clone(),
        invariant: invariance_defect <= cfg.slack(1.0),
        singular_values,
        invariance_defect,
        consistency_defect,
        relations,
    })
}

/// Projections `P_U = ½(1 + A + U(1 − A²)^{1/2})`, `Q_U = ½(1 − A + U(1 − A²)^{1/2})`
/// for a Hermitian contraction `A` anticommuting with the symmetry `U`.
pub fn davis_pair(
    a: &ComplexMatrix,
    u: &ComplexMatrix,
    cfg: &ToleranceConfig,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    ensure_finite(a, "A")?;
    ensure_square(a, "A")?;
    if u.shape() != a.shape() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: u.nrows(),
        });
    }
    let n = a.nrows();
    let scale = (n as f64).sqrt();
    if hermitian_defect(a) > cfg.slack(scale) {
        return Err(Error::InvalidInput("A must be Hermitian".into()));
    }
    let norm = spectral_norm(a);
    if norm > 1.0 + cfg.slack(1.0) {
        return Err(Error::NotContraction { norm });
    }
    if hermitian_defect(u) > cfg.slack(scale)
        || frobenius_norm(&(u * u - identity(n))) > cfg.slack(scale)
    {
        return Err(Error::InvalidInput("U must be a symmetry".into()));
    }
    let anti = frobenius_norm(&(u * a * u + a));
    if anti > cfg.slack(scale) {
        return Err(Error::InvalidInput(format!(
            "U A U = −A fails (defect {anti:.3e})"
        )));
    }
    let root = sqrt_psd(&(identity(n) - a * a), cfg)?;
    let ud = u * root;
    let p = (identity(n) + a + &ud).unscale(2.0);
    let q = (identity(n) - a + &ud).unscale(2.0);
    Ok((p, q))
}

/// `U_P = [[P, 1 − P], [1 − P, P]]` on `C^n × C^n`.
pub fn block_unitary_of_projection(p: &Frame) -> ComplexMatrix {
    let n = p.ambient_dim();
    let pp = p.projector();
    let pc = identity(n) - &pp;
    block2x2(&pp, &pc, &pc, &pp)
}

/// `‖P0 U_P U_Q P0 − diag(PQ + (1 − P)(1 − Q), 0)‖`, with `L0` the first factor.
pub fn block_product_compression_defect(p: &Frame, q: &Frame) -> f64 {
    let n = p.ambient_dim();
    let up = block_unitary_of_projection(p);
    let uq = block_unitary_of_projection(q);
    let p0 = block2x2(&identity(n), &zeros(n, n), &zeros(n, n), &zeros(n, n));
    let lhs = &p0 * up * uq * &p0;
    let pp = p.projector();
    let qq = q.projector();
    let t = &pp * &qq + (identity(n) - &pp) * (identity(n) - &qq);
    let rhs = block2x2(&t, &zeros(n, n), &zeros(n, n), &zeros(n, n));
    frobenius_norm(&(lhs - rhs))
}

/// Frame for the column space of a projector matrix.
pub fn frame_of_projector(p: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<Frame> {
    orthonormal_frame(p, cfg)
}
