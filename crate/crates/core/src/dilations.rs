//! Unitary dilations of a contraction `A`: the Halmos dilation `V_A`, the
//! spectrum of `J V_A`, and a cyclically truncated Sz.-Nagy–Foias dilation.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    block2x2, c64, complex_multiset_defect, eigenvalues_general, ensure_finite, ensure_square,
    frobenius_norm, from_real_diagonal, identity, svd_full, unitary_defect, zeros, ComplexMatrix,
    ToleranceConfig,
};

/// Singular values with `1 − s² ≤ SNAP` are treated as exactly one.
const SNAP: f64 = 64.0 * f64::EPSILON;

/// A square matrix with `‖A‖₂ ≤ 1` and its defect operators.
#[derive(Debug, Clone)]
pub struct Contraction {
    a: ComplexMatrix,
    /// `D_A = (1 − A*A)^{1/2}`
    d_a: ComplexMatrix,
    /// `D_{A*} = (1 − AA*)^{1/2}`
    d_a_star: ComplexMatrix,
    singular_values: Vec<f64>,
}

impl Contraction {
    pub fn new(a: ComplexMatrix, cfg: &ToleranceConfig) -> Result<Self> {
        ensure_finite(&a, "A")?;
        ensure_square(&a, "A")?;
        // both defect operators come from one SVD A = Y Σ W*, so D_A = W f(Σ) W*
        // and D_{A*} = Y f(Σ) Y* share the singular values used for predictions
        let svd = svd_full(&a);
        let norm = svd.singular_values.first().copied().unwrap_or(0.0);
        if norm > 1.0 + cfg.slack(1.0) {
            return Err(Error::NotContraction { norm });
        }
        let s: Vec<f64> = svd
            .singular_values
            .iter()
            .map(|&v| if 1.0 - v * v <= SNAP { 1.0 } else { v })
            .collect();
        let f: Vec<f64> = s.iter().map(|v| (1.0 - v * v).max(0.0).sqrt()).collect();
        let fd = from_real_diagonal(&f);
        let d_a = &svd.v * &fd * svd.v.adjoint();
        let d_a_star = &svd.u * &fd * svd.u.adjoint();
        let d_a = (&d_a + d_a.adjoint()).unscale(2.0);
        let d_a_star = (&d_a_star + d_a_star.adjoint()).unscale(2.0);
        Ok(Contraction {
            a,
            d_a,
            d_a_star,
            singular_values: s,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn defect(&self) -> &ComplexMatrix {
        &self.d_a
    }

    pub fn defect_adjoint(&self) -> &ComplexMatrix {
        &self.d_a_star
    }

    /// Nonincreasing, clipped to `[0, 1]`.
    pub fn singular_values(&self) -> Vec<f64> {
        self.singular_values.iter().map(|s| s.min(1.0)).collect()
    }

    /// `N_A = [[D_A, −A*], [A, D_{A*}]]`.
    pub fn n_block(&self) -> ComplexMatrix {
        block2x2(&self.d_a, &(-self.a.adjoint()), &self.a, &self.d_a_star)
    }
}

/// `V_A = [[A, D_{A*}], [D_A, −A*]]`.
pub fn halmos_dilation(c: &Contraction) -> ComplexMatrix {
    block2x2(&c.a, &c.d_a_star, &c.d_a, &(-c.a.adjoint()))
}

/// `J = [[0, I], [I, 0]]` on `C^n × C^n`.
pub fn block_swap(n: usize) -> ComplexMatrix {
    block2x2(&zeros(n, n), &identity(n), &identity(n), &zeros(n, n))
}

#[derive(Debug, Clone)]
pub struct JvSpectrum {
    pub eigenvalues: Vec<Complex64>,
    /// `√(1 − s²) ± i s` for every singular value `s` of `A`.
    pub predicted: Vec<Complex64>,
    pub defect: f64,
    /// `‖Re(J V_A) − diag(D_A, D_{A*})‖`.
    pub real_part_defect: f64,
    /// `‖Im(J V_A) − [[0, i A*], [−i A, 0]]‖`.
    pub imaginary_part_defect: f64,
}

pub fn jv_spectrum(c: &Contraction) -> Result<JvSpectrum> {
    let n = c.dim();
    let m = block_swap(n) * halmos_dilation(c);
    let eigenvalues = eigenvalues_general(&m)?;
    let predicted: Vec<Complex64> = c
        .singular_values()
        .into_iter()
        .flat_map(|s| {
            let r = (1.0 - s * s).max(0.0).sqrt();
            [c64(r, s), c64(r, -s)]
        })
        .collect();
    let defect = complex_multiset_defect(&eigenvalues, &predicted);

    let re = (&m + m.adjoint()).unscale(2.0);
    let im = (&m - m.adjoint()) * c64(0.0, -0.5);
    let re_expected = block2x2(&c.d_a, &zeros(n, n), &zeros(n, n), &c.d_a_star);
    let i = c64(0.0, 1.0);
    let im_expected = block2x2(&zeros(n, n), &(c.a.adjoint() * i), &(&c.a * -i), &zeros(n, n));
    Ok(JvSpectrum {
        eigenvalues,
        predicted,
        defect,
        real_part_defect: frobenius_norm(&(re - re_expected)),
        imaginary_part_defect: frobenius_norm(&(im - im_expected)),
    })
}

fn block_offset(index: i64, n_trunc: usize, d: usize) -> usize {
    (index + n_trunc as i64) as usize * d
}

fn wrap(index: i64, n_trunc: usize) -> i64 {
    let m = 2 * n_trunc as i64 + 1;
    (index + n_trunc as i64).rem_euclid(m) - n_trunc as i64
}

fn set_block(m: &mut ComplexMatrix, i: i64, j: i64, n_trunc: usize, b: &ComplexMatrix) {
    let d = b.nrows();
    let (r, c) = (
        block_offset(wrap(i, n_trunc), n_trunc, d),
        block_offset(wrap(j, n_trunc), n_trunc, d),
    );
    m.view_mut((r, c), (d, d)).copy_from(b);
}

fn get_block(m: &ComplexMatrix, i: i64, j: i64, n_trunc: usize, d: usize) -> ComplexMatrix {
    let (r, c) = (block_offset(i, n_trunc, d), block_offset(j, n_trunc, d));
    m.view((r, c), (d, d)).into_owned()
}

fn check_truncation(n_trunc: usize) -> Result<()> {
    if n_trunc < 2 {
        return Err(Error::InvalidInput(format!(
            "truncation N must be at least 2, got {n_trunc}"
        )));
    }
    Ok(())
}

/// The dilation on `⊕_{i=−N..N} L0` with blocks `U_{0,0} = A`,
/// `U_{0,1} = D_{A*}`, `U_{−1,0} = D_A`, `U_{−1,1} = −A*` and
/// `U_{i,i+1} = I` for `i ∉ {0, −1}`, the index `N + 1` wrapping to `−N`.
pub fn nagy_foias_truncated(c: &Contraction, n_trunc: usize) -> Result<ComplexMatrix> {
    check_truncation(n_trunc)?;
    let d = c.dim();
    let total = (2 * n_trunc + 1) * d;
    let mut u = zeros(total, total);
    let id = identity(d);
    let n = n_trunc as i64;
    for i in -n..=n {
        if i != 0 && i != -1 {
            set_block(&mut u, i, i + 1, n_trunc, &id);
        }
    }
    set_block(&mut u, 0, 0, n_trunc, &c.a);
    set_block(&mut u, 0, 1, n_trunc, &c.d_a_star);
    set_block(&mut u, -1, 0, n_trunc, &c.d_a);
    set_block(&mut u, -1, 1, n_trunc, &(-c.a.adjoint()));
    Ok(u)
}

/// Cyclic bilateral shift: `S_{i,i−1} = I`, with `S_{−N,N} = I`.
pub fn cyclic_shift(d: usize, n_trunc: usize) -> ComplexMatrix {
    let total = (2 * n_trunc + 1) * d;
    let mut s = zeros(total, total);
    let id = identity(d);
    let n = n_trunc as i64;
    for i in -n..=n {
        set_block(&mut s, i, i - 1, n_trunc, &id);
    }
    s
}

#[derive(Debug, Clone)]
pub struct DilationReport {
    pub unitarity_defect: f64,
    /// `‖U_{0,0} − A‖`.
    pub center_defect: f64,
    /// `‖S U_A − (I ⊕ N_A ⊕ I)‖`.
    pub block_defect: f64,
    /// `‖N_A − J V_A‖`.
    pub jv_defect: f64,
    /// `‖(U_A^k)_{0,0} − A^k‖` for `k = 1, 2, 3`.
    pub power_defects: Vec<f64>,
    /// Distance between `eig(S U_A)` and `eig(J V_A) ∪ {1, …}`.
    pub spectrum_defect: f64,
}

impl DilationReport {
    pub fn max_defect(&self) -> f64 {
        self.power_defects
            .iter()
            .copied()
            .chain([
                self.unitarity_defect,
                self.center_defect,
                self.block_defect,
                self.jv_defect,
                self.spectrum_defect,
            ])
            .fold(0.0, f64::max)
    }
}

pub fn dilation_block_check(c: &Contraction, n_trunc: usize) -> Result<DilationReport> {
    let u = nagy_foias_truncated(c, n_trunc)?;
    let d = c.dim();
    let s = cyclic_shift(d, n_trunc);
    let su = &s * &u;
    let total = su.nrows();
    let mut expected = identity(total);
    let na = c.n_block();
    let r0 = block_offset(0, n_trunc, d);
    expected.view_mut((r0, r0), (2 * d, 2 * d)).copy_from(&na);
    let block_defect = frobenius_norm(&(&su - expected));
    let jv = block_swap(d) * halmos_dilation(c);
    let jv_defect = frobenius_norm(&(&na - &jv));

    let mut power_defects = Vec::new();
    let mut uk = identity(total);
    let mut ak = identity(d);
    for _ in 1..=3 {
        uk = &uk * &u;
        ak = &ak * &c.a;
        power_defects.push(frobenius_norm(&(get_block(&uk, 0, 0, n_trunc, d) - &ak)));
    }

    let mut predicted = jv_spectrum(c)?.predicted;
    predicted.resize(total, c64(1.0, 0.0));
    let spectrum_defect = complex_multiset_defect(&eigenvalues_general(&su)?, &predicted);

    Ok(DilationReport {
        unitarity_defect: unitary_defect(&u),
        center_defect: frobenius_norm(&(get_block(&u, 0, 0, n_trunc, d) - &c.a)),
        block_defect,
        jv_defect,
        power_defects,
        spectrum_defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{from_real_diagonal, from_real_rows};
    use crate::random;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn contraction(a: ComplexMatrix) -> Contraction {
        Contraction::new(a, &cfg()).unwrap()
    }

    #[test]
    fn rejects_large_norm() {
        let r = Contraction::new(from_real_diagonal(&[1.5]), &cfg());
        assert!(matches!(r, Err(Error::NotContraction { .. })));
    }

    #[test]
    fn halmos_dilation_extremes() {
        let v = halmos_dilation(&contraction(zeros(2, 2)));
        assert!(frobenius_norm(&(v - block_swap(2))) < 1e-15);
        let v = halmos_dilation(&contraction(identity(1)));
        let expected = from_real_rows(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        assert!(frobenius_norm(&(v - expected)) < 1e-15);
    }

    #[test]
    fn halmos_dilation_random_unitary_and_symmetric() {
        let mut rng = random::rng(3);
        let a = random::random_contraction(&mut rng, 4);
        let v = halmos_dilation(&contraction(a));
        assert!(unitary_defect(&v) <= 1e-10);

        let h = random::random_hermitian(&mut rng, 3);
        let h = h.unscale(crate::linalg::spectral_norm(&h) * 1.1);
        let v = halmos_dilation(&contraction(h));
        assert!(frobenius_norm(&(&v * &v - identity(6))) <= 1e-10);
        assert!(crate::linalg::hermitian_defect(&v) <= 1e-12);
    }

    #[test]
    fn jv_spectrum_cases() {
        let s = jv_spectrum(&contraction(zeros(3, 3))).unwrap();
        assert!(s.eigenvalues.iter().all(|z| (z - c64(1.0, 0.0)).norm() < 1e-14));

        let s = jv_spectrum(&contraction(from_real_diagonal(&[0.6]))).unwrap();
        let expected = [c64(0.8, 0.6), c64(0.8, -0.6)];
        assert!(complex_multiset_defect(&s.eigenvalues, &expected) < 1e-14);

        let mut rng = random::rng(5);
        let a = random::random_contraction(&mut rng, 5);
        let s = jv_spectrum(&contraction(a)).unwrap();
        assert!(s.defect <= 1e-9, "{}", s.defect);
        assert!(s.real_part_defect <= 1e-12 && s.imaginary_part_defect <= 1e-12);
    }

    #[test]
    fn nagy_foias_zero_is_permutation() {
        let u = nagy_foias_truncated(&contraction(zeros(1, 1)), 2).unwrap();
        assert_eq!(u.nrows(), 5);
        for row in u.row_iter() {
            let ones = row.iter().filter(|z| (*z - c64(1.0, 0.0)).norm() < 1e-15).count();
            let zeros = row.iter().filter(|z| z.norm() < 1e-15).count();
            assert_eq!((ones, zeros), (1, 4));
        }
        assert!(unitary_defect(&u) < 1e-15);
    }

    #[test]
    fn nagy_foias_rejects_small_n() {
        let r = nagy_foias_truncated(&contraction(zeros(1, 1)), 1);
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn nagy_foias_identity_center() {
        let c = contraction(identity(2));
        let r = dilation_block_check(&c, 2).unwrap();
        assert!(r.center_defect < 1e-15);
        assert!(r.max_defect() < 1e-12);
    }

    #[test]
    fn random_block_checks() {
        let mut rng = random::rng(9);
        let a = random::random_contraction(&mut rng, 3);
        let c = contraction(a);
        let u = nagy_foias_truncated(&c, 4).unwrap();
        assert!(unitary_defect(&u) <= 1e-10);
        let r = dilation_block_check(&c, 3).unwrap();
        assert!(r.block_defect <= 1e-12 && r.jv_defect <= 1e-12);
        assert!(r.center_defect == 0.0);
        assert!(r.power_defects.iter().all(|&v| v <= 1e-9));
        assert!(r.spectrum_defect <= 1e-9);
    }

    #[test]
    fn hermitian_spectrum_cross_check() {
        let mut rng = random::rng(11);
        let h = random::random_hermitian(&mut rng, 3);
        let h = h.unscale(crate::linalg::spectral_norm(&h) * 1.2);
        let r = dilation_block_check(&contraction(h), 2).unwrap();
        assert!(r.spectrum_defect <= 1e-9);
    }
}
