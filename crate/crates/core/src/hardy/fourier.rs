use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{c64, hermitian_eig, singular_values, ComplexMatrix, ToleranceConfig};

/// Eigenvalues of the discretized time–band limiting operator
/// `P_{[t₀,t₁]} F* P_{[ω₀,ω₁]} F P_{[t₀,t₁]}`.
#[derive(Debug, Clone)]
pub struct ProlateReport {
    /// Nonincreasing.
    pub eigenvalues: Vec<f64>,
    pub count_above_half: usize,
    pub trace: f64,
    /// `(t₁ − t₀)(ω₁ − ω₀)`, the continuum trace.
    pub time_bandwidth: f64,
    /// Grid points inside the interval and frequencies inside the band.
    pub interval_points: usize,
    pub band_frequencies: usize,
    /// Period of the discretization, `8 max(|t₀|, |t₁|)`.
    pub period: f64,
    /// Distance of the spectrum from `[0, 1]`.
    pub range_defect: f64,
    /// Largest increase between consecutive sorted eigenvalues (zero when sorted).
    pub monotonicity_defect: f64,
}

/// Frequencies are in cycles per unit length: `(Ff)(ω) = ∫ f(x) e^{−2πixω} dx`.
/// The interval sits in one period of length `8 max(|t₀|, |t₁|)` sampled at
/// `grid` points; the band keeps the DFT frequencies `m/L` inside `[ω₀, ω₁]`.
pub fn prolate_compression(
    interval: (f64, f64),
    band: (f64, f64),
    grid: usize,
    cfg: &ToleranceConfig,
) -> Result<ProlateReport> {
    let (t0, t1) = interval;
    let (w0, w1) = band;
    if ![t0, t1, w0, w1].iter().all(|v| v.is_finite()) || t1 <= t0 || w1 <= w0 {
        return Err(Error::InvalidInput(format!(
            "need finite t0 < t1 and w0 < w1, got [{t0}, {t1}] and [{w0}, {w1}]"
        )));
    }
    if grid < 64 {
        return Err(Error::InvalidInput(format!("grid must be at least 64, got {grid}")));
    }
    let period = 8.0 * t0.abs().max(t1.abs());
    let h = period / grid as f64;
    let xs: Vec<f64> = (0..grid)
        .map(|j| -period / 2.0 + j as f64 * h)
        .filter(|x| *x >= t0 && *x <= t1)
        .collect();
    let half = (grid / 2) as i64;
    let freqs: Vec<f64> = (-half..grid as i64 - half)
        .map(|m| m as f64 / period)
        .filter(|f| *f >= w0 && *f <= w1)
        .collect();
    if xs.is_empty() {
        return Err(Error::GridTooCoarse(format!(
            "no grid point of spacing {h} falls inside [{t0}, {t1}]"
        )));
    }
    if freqs.is_empty() {
        return Err(Error::GridTooCoarse(format!(
            "no frequency of spacing {} falls inside [{w0}, {w1}]",
            1.0 / period
        )));
    }
    let g = grid as f64;
    let k = ComplexMatrix::from_fn(xs.len(), xs.len(), |a, b| {
        let d = xs[a] - xs[b];
        freqs
            .iter()
            .map(|f| Complex64::from_polar(1.0, TAU * f * d))
            .sum::<Complex64>()
            / g
    });
    let eigenvalues = hermitian_eig(&k)?.values;
    let trace = (xs.len() * freqs.len()) as f64 / g;
    let slack = cfg.slack(1.0);
    let range_defect = eigenvalues
        .iter()
        .map(|l| (-l).max(l - 1.0).max(0.0))
        .fold(0.0, f64::max);
    let monotonicity_defect = eigenvalues
        .windows(2)
        .map(|w| (w[1] - w[0]).max(0.0))
        .fold(0.0, f64::max);
    Ok(ProlateReport {
        count_above_half: eigenvalues.iter().filter(|l| **l > 0.5 + slack).count(),
        trace,
        time_bandwidth: (t1 - t0) * (w1 - w0),
        interval_points: xs.len(),
        band_frequencies: freqs.len(),
        period,
        range_defect,
        monotonicity_defect,
        eigenvalues,
    })
}

/// Half-line compression of the Fourier–Plancherel transform on Hermite
/// directions.
#[derive(Debug, Clone)]
pub struct HalflineReport {
    pub k_max: usize,
    pub grid: usize,
    pub spacing: f64,
    pub half_width: f64,
    /// Largest `|h Σ ψ_n² − 1|` before renormalization.
    pub hermite_norm_defect: f64,
    /// Largest `‖Uψ_n − (−i)^n ψ_n‖`.
    pub fourier_eigen_defect: f64,
    /// Rayleigh quotients of `Re = ½(P₀UP₀ + P₀U*P₀)` on `P₀ψ_{2k}`.
    pub re_eigenvalues: Vec<f64>,
    /// `(−1)^k / 2`.
    pub re_predicted: Vec<f64>,
    /// `‖Re f − λ f‖/‖f‖` for `f = P₀ψ_{2k}`.
    pub re_residuals: Vec<f64>,
    /// Rayleigh quotients of `Im = (P₀UP₀ − P₀U*P₀)/(2i)` on `P₀ψ_{2k+1}`.
    pub im_eigenvalues: Vec<f64>,
    /// `−(−1)^k / 2`.
    pub im_predicted: Vec<f64>,
    pub im_residuals: Vec<f64>,
    /// `‖2G − I‖` for the Gram matrices of `{P₀ψ_{2k}}` and `{P₀ψ_{2k+1}}`.
    pub gram_defect: f64,
    /// `‖P₀UP₀χ_{(0,1)}‖₂`.
    pub chi_norm: f64,
    /// The value `1` asserted for the previous quantity.
    pub chi_claimed: f64,
    /// `1/√2 = ‖χ‖/√2`, from Plancherel and the evenness of `|Uχ|`.
    pub chi_exact: f64,
    /// Largest singular value of the discretized `P₀UP₀`.
    pub operator_norm: f64,
    /// Eigenvalues of the discretized real and imaginary parts (diagnostic).
    pub re_spectrum: Vec<f64>,
    pub im_spectrum: Vec<f64>,
}

impl HalflineReport {
    /// Largest deviation from `±½` over both parities.
    pub fn eigenvalue_defect(&self) -> f64 {
        self.re_eigenvalues
            .iter()
            .zip(&self.re_predicted)
            .chain(self.im_eigenvalues.iter().zip(&self.im_predicted))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_residual(&self) -> f64 {
        self.re_residuals
            .iter()
            .chain(&self.im_residuals)
            .copied()
            .fold(0.0, f64::max)
    }
}

pub const HALFLINE_MAX_K: usize = 12;
pub const HALFLINE_DEFAULT_GRID: usize = 1024;

/// `L²`-normalized Hermite functions `ψ_0..ψ_{count−1}` at the points `xs`,
/// with `(Uψ_n)(t) = (2π)^{−1/2} ∫ e^{−ixt} ψ_n(x) dx = (−i)^n ψ_n(t)`.
pub fn hermite_functions(xs: &[f64], count: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    out.push(xs.iter().map(|x| PI.powf(-0.25) * (-x * x / 2.0).exp()).collect());
    if count > 1 {
        out.push(xs.iter().zip(&out[0]).map(|(x, p)| 2f64.sqrt() * x * p).collect());
    }
    for n in 1..count.saturating_sub(1) {
        let a = (2.0 / (n + 1) as f64).sqrt();
        let b = (n as f64 / (n + 1) as f64).sqrt();
        let next = xs
            .iter()
            .enumerate()
            .map(|(j, x)| a * x * out[n][j] - b * out[n - 1][j])
            .collect();
        out.push(next);
    }
    out
}

/// Midpoint grid `x_j = (j + ½ − G/2)h` on `[−W, W]` with
/// `W = √(2(2K + 1) + 1) + 8`. `grid` must be even so the flip `x ↦ −x` maps
/// nodes to nodes and no node sits at the origin.
pub fn fourier_halfline(k_max: usize, grid: usize, cfg: &ToleranceConfig) -> Result<HalflineReport> {
    if k_max > HALFLINE_MAX_K {
        return Err(Error::InvalidInput(format!(
            "at most {HALFLINE_MAX_K} Hermite indices, got {k_max}"
        )));
    }
    if grid < 64 || !grid.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "grid must be even and at least 64, got {grid}"
        )));
    }
    let top = 2 * k_max + 1;
    let half_width = ((2 * top + 1) as f64).sqrt() + 8.0;
    let h = 2.0 * half_width / grid as f64;
    // about twelve nodes per local wavelength 2π/√(2n + 1)
    if h * ((2 * top + 1) as f64).sqrt() > 0.5 {
        return Err(Error::GridTooCoarse(format!(
            "spacing {h:.3e} does not resolve ψ_{top}"
        )));
    }
    let xs: Vec<f64> = (0..grid)
        .map(|j| (j as f64 + 0.5 - grid as f64 / 2.0) * h)
        .collect();
    let mut psi = hermite_functions(&xs, top + 1);
    let mut hermite_norm_defect = 0.0f64;
    for p in psi.iter_mut() {
        let norm2 = h * p.iter().map(|v| v * v).sum::<f64>();
        hermite_norm_defect = hermite_norm_defect.max((norm2 - 1.0).abs());
        let s = norm2.sqrt();
        p.iter_mut().for_each(|v| *v /= s);
    }

    let scale = h / TAU.sqrt();
    let u = ComplexMatrix::from_fn(grid, grid, |t, j| {
        Complex64::from_polar(scale, -xs[t] * xs[j])
    });
    // coordinates are scaled by √h so that U acts isometrically on ℓ²
    let vec_of = |p: &[f64]| {
        nalgebra::DVector::from_iterator(p.len(), p.iter().map(|v| c64(v * h.sqrt(), 0.0)))
    };
    let mut fourier_eigen_defect = 0.0f64;
    let mut phase = c64(1.0, 0.0);
    for p in &psi {
        let v = vec_of(p);
        fourier_eigen_defect = fourier_eigen_defect.max((&u * &v - &v * phase).norm());
        phase *= c64(0.0, -1.0);
    }

    let half = grid / 2;
    let block = u.view((half, half), (half, half)).into_owned();
    let re_part = (&block + block.adjoint()).scale(0.5);
    let im_part = (&block - block.adjoint()) * c64(0.0, -0.5);
    let restrict = |p: &[f64]| vec_of(&p[half..]);

    let rayleigh = |a: &ComplexMatrix, f: &nalgebra::DVector<Complex64>| {
        let af = a * f;
        let lambda = f.dotc(&af).re / f.norm_squared();
        let res = (af - f.scale(lambda)).norm() / f.norm();
        (lambda, res)
    };
    let mut re_eigenvalues = Vec::new();
    let mut re_residuals = Vec::new();
    let mut im_eigenvalues = Vec::new();
    let mut im_residuals = Vec::new();
    let mut re_predicted = Vec::new();
    let mut im_predicted = Vec::new();
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for k in 0..=k_max {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let fe = restrict(&psi[2 * k]);
        let (l, r) = rayleigh(&re_part, &fe);
        re_eigenvalues.push(l);
        re_residuals.push(r);
        re_predicted.push(sign / 2.0);
        let fo = restrict(&psi[2 * k + 1]);
        let (l, r) = rayleigh(&im_part, &fo);
        im_eigenvalues.push(l);
        im_residuals.push(r);
        im_predicted.push(-sign / 2.0);
        even.push(fe);
        odd.push(fo);
    }
    let gram_defect = [even, odd]
        .iter()
        .map(|fs| {
            let m = nalgebra::DMatrix::from_columns(fs);
            let g = m.adjoint() * &m;
            (g.scale(2.0) - crate::linalg::identity(fs.len())).norm()
        })
        .fold(0.0, f64::max);

    let chi_norm = chi_interval_norm(4000.0, 1e-2);
    let operator_norm = singular_values(&block)[0];
    let re_spectrum = hermitian_eig(&re_part)?.values;
    let im_spectrum = hermitian_eig(&im_part)?.values;
    let _ = cfg;

    Ok(HalflineReport {
        k_max,
        grid,
        spacing: h,
        half_width,
        hermite_norm_defect,
        fourier_eigen_defect,
        re_eigenvalues,
        re_predicted,
        re_residuals,
        im_eigenvalues,
        im_predicted,
        im_residuals,
        gram_defect,
        chi_norm,
        chi_claimed: 1.0,
        chi_exact: std::f64::consts::FRAC_1_SQRT_2,
        operator_norm,
        re_spectrum,
        im_spectrum,
    })
}

/// `‖P₀Uχ_{(0,1)}‖₂` by midpoint quadrature of
/// `|Uχ(t)|² = 2 sin²(t/2)/(πt²)` over `(0, X)` plus the averaged tail `1/(πX)`.
pub fn chi_interval_norm(cutoff: f64, step: f64) -> f64 {
    let n = (cutoff / step).round() as usize;
    let dt = cutoff / n as f64;
    let body: f64 = (0..n)
        .map(|j| {
            let t = (j as f64 + 0.5) * dt;
            let s = (t / 2.0).sin();
            2.0 * s * s / (PI * t * t)
        })
        .sum::<f64>()
        * dt;
    (body + 1.0 / (PI * cutoff)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn full_band_is_identity() {
        let r = prolate_compression((-1.0, 1.0), (-1e6, 1e6), 128, &cfg()).unwrap();
        assert!(r.eigenvalues.iter().all(|l| (l - 1.0).abs() < 1e-12));
        assert_eq!(r.eigenvalues.len(), r.interval_points);
    }

    #[test]
    fn prolate_spectrum_in_unit_interval() {
        let r = prolate_compression((-1.0, 1.0), (-0.5, 0.5), 512, &cfg()).unwrap();
        assert!(r.range_defect <= 1e-10);
        assert_eq!(r.monotonicity_defect, 0.0);
        assert!(r.eigenvalues[0] < 1.0);
        assert!(r.eigenvalues[0] > 0.9);
        // rapid decay past the time-bandwidth product
        assert!(r.eigenvalues[8] < 1e-6, "{:?}", &r.eigenvalues[..10]);
        let sum: f64 = r.eigenvalues.iter().sum();
        assert!((sum - r.trace).abs() < 1e-9);
    }

    #[test]
    fn shrinking_band_lowers_leading_eigenvalue() {
        let mut last = f64::INFINITY;
        for w in [1.0, 0.5, 0.25, 0.125] {
            let r = prolate_compression((-1.0, 1.0), (-w, w), 512, &cfg()).unwrap();
            assert!(r.eigenvalues[0] < last);
            last = r.eigenvalues[0];
        }
    }

    #[test]
    fn prolate_errors() {
        let c = cfg();
        assert!(matches!(prolate_compression((1.0, 1.0), (0.0, 1.0), 128, &c), Err(Error::InvalidInput(_))));
        assert!(matches!(prolate_compression((0.0, 1.0), (0.0, 1.0), 32, &c), Err(Error::InvalidInput(_))));
        assert!(matches!(
            prolate_compression((-1.0, 1.0), (0.01, 0.02), 64, &c),
            Err(Error::GridTooCoarse(_))
        ));
    }

    #[test]
    fn hermite_functions_are_orthonormal() {
        let h = 0.01;
        let xs: Vec<f64> = (0..4000).map(|j| (j as f64 + 0.5 - 2000.0) * h).collect();
        let psi = hermite_functions(&xs, 8);
        for a in 0..8 {
            for b in 0..8 {
                let ip: f64 = h * psi[a].iter().zip(&psi[b]).map(|(x, y)| x * y).sum::<f64>();
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((ip - expected).abs() < 1e-10, "{a} {b} {ip}");
            }
        }
    }

    #[test]
    fn halfline_low_indices() {
        let r = fourier_halfline(2, HALFLINE_DEFAULT_GRID, &cfg()).unwrap();
        assert!(r.fourier_eigen_defect < 1e-8, "{}", r.fourier_eigen_defect);
        assert!((r.re_eigenvalues[0] - 0.5).abs() < 2e-2);
        assert!((r.re_eigenvalues[1] + 0.5).abs() < 2e-2);
        assert!((r.im_eigenvalues[0] + 0.5).abs() < 2e-2);
        assert!(r.gram_defect < 1e-6);
        assert!(r.max_residual() < 2e-2);
    }

    #[test]
    fn chi_norm_is_one_over_root_two() {
        let v = chi_interval_norm(4000.0, 1e-2);
        assert!((v - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-6, "{v}");
    }

    #[test]
    fn halfline_errors() {
        assert!(matches!(fourier_halfline(13, 1024, &cfg()), Err(Error::InvalidInput(_))));
        assert!(matches!(fourier_halfline(3, 63, &cfg()), Err(Error::InvalidInput(_))));
        assert!(matches!(fourier_halfline(12, 64, &cfg()), Err(Error::GridTooCoarse(_))));
    }
}
