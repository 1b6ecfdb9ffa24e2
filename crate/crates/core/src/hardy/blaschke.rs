use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    c64, hermitian_eig, orthonormal_frame, real_multiset_defect,
    singular_values, zeros, ComplexMatrix, Frame, ToleranceConfig,
};
use crate::oblique::{oblique_projection, sv_transfer};
use crate::two_projections::halmos_decompose;

/// Hard cap on the H² coefficient length used for kernels and products.
const MAX_LENGTH: usize = 1 << 16;

/// Finite Blaschke product `θ(z) = Π (z − a_j)/(1 − ā_j z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeData {
    zeros: Vec<Complex64>,
}

impl BlaschkeData {
    pub fn new(zeros: Vec<Complex64>) -> Result<Self> {
        for a in &zeros {
            if !a.re.is_finite() || !a.im.is_finite() || a.norm() >= 1.0 {
                return Err(Error::InvalidInput(format!(
                    "zero {a} is not in the open unit disk"
                )));
            }
        }
        Ok(BlaschkeData { zeros })
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.zeros
            .iter()
            .map(|a| (z - a) / (c64(1.0, 0.0) - a.conj() * z))
            .product()
    }

    /// `θ(0) = Π (−a_j)`.
    pub fn theta_at_zero(&self) -> Complex64 {
        self.zeros.iter().map(|a| -a).product()
    }

    /// `|θ(0)| = Π |a_j|`.
    pub fn product_of_moduli(&self) -> f64 {
        self.zeros.iter().map(|a| a.norm()).product()
    }

    /// Two nonzero zeros closer than `rank_tol`. Repeated zeros at the
    /// origin are allowed.
    pub fn has_confluent_zeros(&self, cfg: &ToleranceConfig) -> bool {
        has_confluent(&self.zeros, cfg)
    }

    /// First `len` Taylor coefficients of `θ`.
    pub fn coefficients(&self, len: usize) -> Vec<Complex64> {
        let mut out = vec![c64(0.0, 0.0); len];
        if len == 0 {
            return out;
        }
        out[0] = c64(1.0, 0.0);
        for a in &self.zeros {
            // factor coefficients: −a, then ā^{n−1}(1 − |a|²)
            let mut factor = vec![c64(0.0, 0.0); len];
            factor[0] = -a;
            let mut p = c64(1.0 - a.norm_sqr(), 0.0);
            for f in factor.iter_mut().skip(1) {
                *f = p;
                p *= a.conj();
            }
            let mut next = vec![c64(0.0, 0.0); len];
            for (i, &x) in out.iter().enumerate() {
                if x == c64(0.0, 0.0) {
                    continue;
                }
                for (j, &y) in factor[..len - i].iter().enumerate() {
                    next[i + j] += x * y;
                }
            }
            out = next;
        }
        out
    }

    /// Coefficient length `L ≥ max(64, 8d)` with `r^L L^{d−1} ≤ 1e−14`,
    /// `r = max |a_j|`.
    pub fn truncation_length(&self) -> Result<usize> {
        truncation_length(&self.zeros)
    }
}

fn has_confluent(points: &[Complex64], cfg: &ToleranceConfig) -> bool {
    points.iter().enumerate().any(|(i, a)| {
        points[i + 1..]
            .iter()
            .any(|b| (a - b).norm() < cfg.rank_tol && !(a.norm() == 0.0 && b.norm() == 0.0))
    })
}

fn truncation_length(points: &[Complex64]) -> Result<usize> {
    let d = points.len();
    let r = points.iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut len = 64.max(8 * d);
    if r == 0.0 {
        return Ok(len);
    }
    while r.powi(len as i32) * (len as f64).powi(d.saturating_sub(1) as i32) > 1e-14 {
        len += len / 2;
        if len > MAX_LENGTH {
            return Err(Error::GridTooCoarse(format!(
                "zeros of modulus {r} need more than {MAX_LENGTH} coefficients"
            )));
        }
    }
    Ok(len)
}

/// Szegő kernels `c_b(z) = 1/(1 − b̄ z)` at distinct points of the disk.
#[derive(Debug, Clone)]
pub struct SzegoKernelSet {
    pub points: Vec<Complex64>,
    /// `G[i][j] = ⟨c_{b_j}, c_{b_i}⟩ = 1/(1 − b_i b̄_j)`.
    pub gram: ComplexMatrix,
}

/// `⟨c_x, c_y⟩ = 1/(1 − x̄ y)`.
pub fn kernel_inner(x: Complex64, y: Complex64) -> Complex64 {
    c64(1.0, 0.0) / (c64(1.0, 0.0) - x.conj() * y)
}

impl SzegoKernelSet {
    pub fn new(points: Vec<Complex64>, cfg: &ToleranceConfig) -> Result<Self> {
        BlaschkeData::new(points.clone())?;
        if points
            .iter()
            .enumerate()
            .any(|(i, a)| points[i + 1..].iter().any(|b| (a - b).norm() < cfg.rank_tol))
        {
            return Err(Error::ConfluentZeros);
        }
        let k = points.len();
        let gram = ComplexMatrix::from_fn(k, k, |i, j| {
            if i == j {
                c64(1.0 / (1.0 - points[i].norm_sqr()), 0.0)
            } else {
                kernel_inner(points[j], points[i])
            }
        });
        Ok(SzegoKernelSet { points, gram })
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(hermitian_eig(&self.gram)?.values.last().copied().unwrap_or(0.0))
    }

    /// Upper-triangular `R` with `R* R = G`: column `j` holds the coordinates
    /// of `c_{b_j}` in an orthonormal basis of the kernel span.
    pub fn coordinates(&self) -> Result<ComplexMatrix> {
        let chol = self.gram.clone().cholesky().ok_or_else(|| Error::SingularMatrix {
            smallest: self.min_eigenvalue().unwrap_or(0.0),
        })?;
        Ok(chol.l().adjoint())
    }

    /// Kernel coefficient vectors `(b̄^n)_{n < len}` as columns.
    pub fn truncated(&self, len: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(len, self.points.len(), |n, j| {
            self.points[j].conj().powu(n as u32)
        })
    }
}

/// Orthonormal frame of `K_θ = H² ⊖ θH²` in the first `length` coefficients.
#[derive(Debug, Clone)]
pub struct ModelSpace {
    pub frame: Frame,
    pub length: usize,
    /// Largest relative tail `|a|^L` of the kernels that were truncated.
    pub residual: f64,
}

/// Szegő kernels at the zeros (monomials `z^k` for a zero of multiplicity
/// `m` at the origin), orthonormalized in input order.
pub fn model_space_frame(theta: &BlaschkeData, cfg: &ToleranceConfig) -> Result<ModelSpace> {
    if theta.has_confluent_zeros(cfg) {
        return Err(Error::ConfluentZeros);
    }
    let len = theta.truncation_length()?;
    model_space_frame_with_length(theta, len, cfg)
}

fn model_space_frame_with_length(
    theta: &BlaschkeData,
    len: usize,
    cfg: &ToleranceConfig,
) -> Result<ModelSpace> {
    let d = theta.degree();
    let mut m = zeros(len, d);
    let mut origin = 0;
    let mut residual = 0.0f64;
    for (j, a) in theta.zeros().iter().enumerate() {
        if a.norm() == 0.0 {
            m[(origin, j)] = c64(1.0, 0.0);
            origin += 1;
        } else {
            let ab = a.conj();
            let mut p = c64(1.0, 0.0);
            for n in 0..len {
                m[(n, j)] = p;
                p *= ab;
            }
            residual = residual.max(a.norm().powi(len as i32));
        }
    }
    let frame = Frame::gram_schmidt(&m, cfg)?;
    Ok(ModelSpace {
        frame,
        length: len,
        residual,
    })
}

/// Singular values of the compressed shift `P_{K_θ} S |_{K_θ}`.
#[derive(Debug, Clone)]
pub struct ShiftCompression {
    pub singular_values: Vec<f64>,
    pub theta_at_zero: Complex64,
    /// `Π |a_j|`.
    pub predicted_smallest: f64,
    /// `max(max_{i<d−1} |s_i − 1|, |s_{d−1} − Π|a_j||)`.
    pub defect: f64,
    /// `‖P_θ S z^{−1} − θ(0)̄ θ‖` in the truncation.
    pub rank_one_defect: f64,
    pub length: usize,
}

pub fn truncated_shift_singulars(
    theta: &BlaschkeData,
    cfg: &ToleranceConfig,
) -> Result<ShiftCompression> {
    let d = theta.degree();
    if d == 0 {
        return Err(Error::InvalidInput("θ must have degree at least 1".into()));
    }
    let ms = model_space_frame(theta, cfg)?;
    let f = ms.frame.basis();
    let len = ms.length;
    let mut sf = zeros(len, d);
    sf.rows_mut(1, len - 1).copy_from(&f.rows(0, len - 1));
    let compression = f.adjoint() * sf;
    let s = singular_values(&compression);
    let predicted_smallest = theta.product_of_moduli();
    let mut defect = (s[d - 1] - predicted_smallest).abs();
    for v in &s[..d - 1] {
        defect = defect.max((v - 1.0).abs());
    }

    // P_θ S z^{-1} = P_θ 1, with θH² spanned by θ z^k in 2L coefficients
    let long = 2 * len;
    let coeffs = theta.coefficients(long);
    let cols = ComplexMatrix::from_fn(long, len, |i, k| {
        if i >= k {
            coeffs[i - k]
        } else {
            c64(0.0, 0.0)
        }
    });
    let frame = orthonormal_frame(&cols, cfg)?;
    let fb = frame.basis();
    let p_one = fb * fb.row(0).adjoint();
    let theta0 = theta.theta_at_zero();
    let expected = nalgebra::DVector::from_iterator(long, coeffs.iter().map(|c| c * theta0.conj()));
    let rank_one_defect = (p_one - expected).norm();

    Ok(ShiftCompression {
        singular_values: s,
        theta_at_zero: theta0,
        predicted_smallest,
        defect,
        rank_one_defect,
        length: len,
    })
}

/// Singular values below one of `T_φ`, `φ = B_a / B_b`, by three routes.
#[derive(Debug, Clone)]
pub struct RationalSingulars {
    /// Singular values of `P_{K_a} P_{K_b}` inside `K_{ab}`.
    pub s_direct: Vec<f64>,
    /// Route (i): singular values of `P_{H'_a} P_{H'_b}`, `H'_x = K_{ab} ⊖ K_x`.
    pub s_generic: Vec<f64>,
    /// Route (ii): `β/√(β² + 1)` with `β` the corner singular values of the
    /// idempotent onto `K_a` along `K_b`.
    pub s_oblique: Vec<f64>,
    /// Route (iii), `n = 2` only: square roots of the eigenvalues of the
    /// explicit Gram–Schmidt matrix.
    pub s_gram: Option<Vec<f64>>,
    pub beta: Vec<f64>,
    /// Singular values of the idempotent itself, `√(1 + β²)` on `K_a`.
    pub idempotent_singular_values: Vec<f64>,
    /// `(dim H_10, dim H_01)` of the pair `(H'_a, H'_b)`.
    pub corner_dims: (usize, usize),
    pub defect_generic_oblique: f64,
    pub defect_generic_direct: f64,
    pub defect_generic_gram: Option<f64>,
    pub defect_oblique_gram: Option<f64>,
}

impl RationalSingulars {
    pub fn max_defect(&self) -> f64 {
        [
            Some(self.defect_generic_oblique),
            Some(self.defect_generic_direct),
            self.defect_generic_gram,
            self.defect_oblique_gram,
        ]
        .into_iter()
        .flatten()
        .fold(0.0, f64::max)
    }
}

pub fn rational_symbol_singulars(
    a: &[Complex64],
    b: &[Complex64],
    cfg: &ToleranceConfig,
) -> Result<RationalSingulars> {
    let n = a.len();
    if n == 0 || b.len() != n {
        return Err(Error::InvalidInput(format!(
            "zero sets must be nonempty with equal counts, got {} and {}",
            n,
            b.len()
        )));
    }
    BlaschkeData::new(a.to_vec())?;
    BlaschkeData::new(b.to_vec())?;
    if has_confluent(a, cfg) || has_confluent(b, cfg) || a.iter().filter(|z| z.norm() == 0.0).count() > 1
        || b.iter().filter(|z| z.norm() == 0.0).count() > 1
    {
        return Err(Error::ConfluentZeros);
    }
    if a.iter().any(|x| b.iter().any(|y| (x - y).norm() < cfg.rank_tol)) {
        return Err(Error::InvalidInput("zero sets a and b overlap".into()));
    }
    let points: Vec<Complex64> = a.iter().chain(b).copied().collect();
    let kernels = SzegoKernelSet::new(points, cfg)?;
    let r = kernels.coordinates()?;
    let ka = orthonormal_frame(&r.columns(0, n).into_owned(), cfg)?;
    let kb = orthonormal_frame(&r.columns(n, n).into_owned(), cfg)?;
    if ka.rank() != n || kb.rank() != n {
        return Err(Error::SingularMatrix { smallest: 0.0 });
    }
    let ha = ka.complement(cfg);
    let hb = kb.complement(cfg);

    let s_direct = singular_values(&(ka.basis().adjoint() * kb.basis()));
    let s_generic = singular_values(&(ha.basis().adjoint() * hb.basis()));

    let q = oblique_projection(&ka, &kb, cfg)?;
    let transfer = sv_transfer(&q);
    let mut idempotent_singular_values = singular_values(&q.q);
    idempotent_singular_values.truncate(n);

    let model = halmos_decompose(&ha, &hb, cfg)?;
    let corner_dims = (model.h10.rank(), model.h01.rank());

    let s_gram = (n == 2).then(|| gram_route(a, b)).transpose()?;
    let defect_generic_gram = s_gram
        .as_ref()
        .map(|g| real_multiset_defect(&s_generic, g));
    let defect_oblique_gram = s_gram
        .as_ref()
        .map(|g| real_multiset_defect(&transfer.s, g));

    Ok(RationalSingulars {
        defect_generic_oblique: real_multiset_defect(&s_generic, &transfer.s),
        defect_generic_direct: real_multiset_defect(&s_generic, &s_direct),
        defect_generic_gram,
        defect_oblique_gram,
        s_direct,
        s_generic,
        s_oblique: transfer.s,
        s_gram,
        beta: transfer.beta,
        idempotent_singular_values,
        corner_dims,
    })
}

/// A combination `Σ α_i c_{x_i}` of Szegő kernels.
type KernelCombination = Vec<(Complex64, Complex64)>;

fn combo_inner(f: &KernelCombination, g: &KernelCombination) -> Complex64 {
    let mut s = c64(0.0, 0.0);
    for &(alpha, x) in f {
        for &(beta, y) in g {
            // ⟨α c_x, β c_y⟩ = α β̄ ⟨c_x, c_y⟩
            s += alpha * beta.conj() * kernel_inner(x, y);
        }
    }
    s
}

/// Gram–Schmidt pair `u_1 = c_{x_1}`, `u_2 = c_{x_2} − κ c_{x_1}` with
/// `κ = ⟨c_{x_2}, c_{x_1}⟩/‖c_{x_1}‖² = (1 − |x_1|²)/(1 − x̄_2 x_1)`.
pub fn gram_schmidt_pair(x1: Complex64, x2: Complex64) -> (KernelCombination, KernelCombination) {
    let one = c64(1.0, 0.0);
    let kappa = (1.0 - x1.norm_sqr()) / (one - x2.conj() * x1);
    (vec![(one, x1)], vec![(one, x2), (-kappa, x1)])
}

/// Route (iii): the `2 × 2` matrix
/// `M_{kl} = Σ_j ⟨u_k, v_j⟩⟨v_j, u_l⟩ / (‖v_j‖² ‖u_k‖ ‖u_l‖)`.
pub fn gram_route_matrix(a: &[Complex64], b: &[Complex64]) -> ComplexMatrix {
    let (u1, u2) = gram_schmidt_pair(a[0], a[1]);
    let (v1, v2) = gram_schmidt_pair(b[0], b[1]);
    let u = [u1, u2];
    let v = [v1, v2];
    let un: Vec<f64> = u.iter().map(|f| combo_inner(f, f).re.sqrt()).collect();
    let vn: Vec<f64> = v.iter().map(|f| combo_inner(f, f).re).collect();
    ComplexMatrix::from_fn(2, 2, |k, l| {
        (0..2)
            .map(|j| {
                combo_inner(&u[k], &v[j]) * combo_inner(&v[j], &u[l]) / (vn[j] * un[k] * un[l])
            })
            .sum()
    })
}

fn gram_route(a: &[Complex64], b: &[Complex64]) -> Result<Vec<f64>> {
    let m = gram_route_matrix(a, b);
    let eig = hermitian_eig(&m)?;
    Ok(eig.values.iter().map(|l| l.max(0.0).sqrt()).collect())
}

/// `|⟨c_{x_2} − κ c_{x_1}, c_{x_1}⟩|` for a trial coefficient `κ`.
pub fn gram_schmidt_overlap(x1: Complex64, x2: Complex64, kappa: Complex64) -> f64 {
    let one = c64(1.0, 0.0);
    let u1: KernelCombination = vec![(one, x1)];
    let u2: KernelCombination = vec![(one, x2), (-kappa, x1)];
    combo_inner(&u2, &u1).norm()
}
