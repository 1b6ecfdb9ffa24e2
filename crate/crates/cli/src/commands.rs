use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

use anyhow::{bail, Result};
use num_complex::Complex64;
use serde_json::json;

use schmidt_core::dilations::{dilation_block_check, jv_spectrum, Contraction};
use schmidt_core::error::Error;
use schmidt_core::grassmann::{
    codiagonality_defect, davis_symmetry, geodesic_commutation_defects, geodesic_exponent,
    geodesic_point, minimal_geodesic_exists,
};
use schmidt_core::hardy::{
    fourier_halfline, model_space_frame, prolate_compression, rational_symbol_singulars,
    symmetric_subspace_shift, toeplitz_compression, truncated_shift_singulars, BlaschkeData,
    TrigTruncation,
};
use schmidt_core::linalg::{frobenius_norm, singular_values, spectral_norm};
use schmidt_core::oblique::{oblique_projection, reflection_polar, rho_in_sd_report, sv_transfer};
use schmidt_core::random::{self, FixtureRng};
use schmidt_core::two_projections::{commutator_spectrum, halmos_decompose, product_relations};
use schmidt_core::{Frame, ToleranceConfig};

use crate::input::{read_matrix, read_points, read_subspace};
use crate::report::Report;

/// Settings shared by every subcommand.
pub struct Ctx {
    pub cfg: ToleranceConfig,
    pub seed: u64,
    pub size: Option<usize>,
    pub tol: Option<f64>,
}

impl Ctx {
    fn report(&self, command: &str) -> Report {
        let mut r = Report::new(command, self.seed, self.tol);
        r.tolerances.insert("abs_tol".into(), self.cfg.abs_tol);
        r.tolerances.insert("rel_tol".into(), self.cfg.rel_tol);
        r.tolerances.insert("rank_tol".into(), self.cfg.rank_tol);
        if let Some(t) = self.tol {
            r.tolerances.insert("check_override".into(), t);
        }
        if let Some(n) = self.size {
            r.input("size", n);
        }
        r
    }

    fn rng(&self) -> FixtureRng {
        random::rng(self.seed)
    }

    fn size_or(&self, default: usize) -> usize {
        self.size.unwrap_or(default)
    }
}

fn path_str(p: &Option<PathBuf>) -> serde_json::Value {
    match p {
        Some(p) => json!(p.display().to_string()),
        None => serde_json::Value::Null,
    }
}

/// `(P, Q)` from `--p/--q`, or a seeded random pair in `C^size`.
fn load_pair(
    ctx: &Ctx,
    report: &mut Report,
    p: &Option<PathBuf>,
    q: &Option<PathBuf>,
    random_pair: impl FnOnce(&mut FixtureRng, usize) -> (Frame, Frame),
) -> Result<(Frame, Frame)> {
    report.input("p", path_str(p));
    report.input("q", path_str(q));
    match (p, q) {
        (Some(p), Some(q)) => Ok((read_subspace(p, &ctx.cfg)?, read_subspace(q, &ctx.cfg)?)),
        (None, None) => {
            let n = ctx.size_or(8);
            if n < 2 {
                bail!("--size must be at least 2");
            }
            Ok(random_pair(&mut ctx.rng(), n))
        }
        _ => bail!("--p and --q must be given together"),
    }
}

fn generic_pair(rng: &mut FixtureRng, n: usize) -> (Frame, Frame) {
    random::random_pair(rng, n)
}

fn equal_dim_pair(rng: &mut FixtureRng, n: usize) -> (Frame, Frame) {
    let k = n / 2;
    (random::random_frame(rng, n, k), random::random_frame(rng, n, k))
}

fn complementary_pair(rng: &mut FixtureRng, n: usize) -> (Frame, Frame) {
    let k = n / 2;
    (random::random_frame(rng, n, k), random::random_frame(rng, n, n - k))
}

fn add_halmos(r: &mut Report, p: &Frame, q: &Frame, cfg: &ToleranceConfig) -> Result<()> {
    let model = halmos_decompose(p, q, cfg)?;
    let (pr, qr) = model.reconstruct();
    r.result("ambient_dim", model.ambient_dim());
    r.result("dim_h11", model.h11.rank());
    r.result("dim_h00", model.h00.rank());
    r.result("dim_h10", model.h10.rank());
    r.result("dim_h01", model.h01.rank());
    r.result("dim_generic", model.generic_dim());
    r.reals("angles", &model.angles);
    r.check_max("reconstruct_p", frobenius_norm(&(pr - p.projector())), 1e-9);
    r.check_max("reconstruct_q", frobenius_norm(&(qr - q.projector())), 1e-9);
    r.check_max("model_orthogonality", model.orthogonality_defect(), 1e-9);
    Ok(())
}

pub fn halmos(ctx: &Ctx, p: &Option<PathBuf>, q: &Option<PathBuf>) -> Result<Report> {
    let mut r = ctx.report("halmos");
    let (p, q) = load_pair(ctx, &mut r, p, q, generic_pair)?;
    add_halmos(&mut r, &p, &q, &ctx.cfg)?;
    Ok(r)
}

fn add_relations(r: &mut Report, p: &Frame, q: &Frame, cfg: &ToleranceConfig) -> Result<()> {
    let rel = product_relations(p, q, cfg)?;
    r.reals("s", &rel.singular_values_pq);
    r.reals("eig_p_minus_q", &rel.eigenvalues_p_minus_q);
    r.reals("eig_p_minus_q_predicted", &rel.predicted_p_minus_q);
    r.reals("s_p_qperp", &rel.singular_values_pqperp);
    r.reals("s_pperp_qperp", &rel.singular_values_pperp_qperp);
    r.complexes("eig_commutator", &rel.commutator_eigenvalues);
    r.check_max("difference_spectrum", rel.difference_defect, 1e-9);
    r.check_max("perp_transfer", rel.perp_defect, 1e-9);
    r.check_max("complement_transfer", rel.complement_defect, 1e-9);
    r.check_max("commutator_spectrum", rel.commutator_defect, 1e-9);
    Ok(())
}

pub fn relations(ctx: &Ctx, p: &Option<PathBuf>, q: &Option<PathBuf>) -> Result<Report> {
    let mut r = ctx.report("relations");
    let (p, q) = load_pair(ctx, &mut r, p, q, generic_pair)?;
    add_relations(&mut r, &p, &q, &ctx.cfg)?;
    Ok(r)
}

fn add_commutator(r: &mut Report, p: &Frame, q: &Frame, cfg: &ToleranceConfig) -> Result<()> {
    let c = commutator_spectrum(p, q, cfg)?;
    r.complexes("eigenvalues", &c.eigenvalues);
    r.complexes("predicted", &c.predicted);
    r.check_max("commutator_spectrum", c.spectrum_defect, 1e-9);
    r.check_max("explicit_eigenvectors", c.eigenvector_residual, 1e-8);
    r.check_max("corner_kernel", c.kernel_defect, 1e-9);
    Ok(())
}

pub fn commutator(ctx: &Ctx, p: &Option<PathBuf>, q: &Option<PathBuf>) -> Result<Report> {
    let mut r = ctx.report("commutator");
    let (p, q) = load_pair(ctx, &mut r, p, q, generic_pair)?;
    add_commutator(&mut r, &p, &q, &ctx.cfg)?;
    Ok(r)
}

fn add_geodesic(r: &mut Report, l0: &Frame, l: &Frame, cfg: &ToleranceConfig) -> Result<()> {
    let ex = minimal_geodesic_exists(l0, l, cfg)?;
    r.result("exists", ex.exists);
    r.result("dim_h10", ex.dim10);
    r.result("dim_h01", ex.dim01);
    if !ex.exists {
        return Ok(());
    }
    let g = geodesic_exponent(l0, l, cfg)?;
    r.result("distance", g.distance);
    r.result("unique", g.unique);
    r.reals("angles", &g.model.angles);
    let end = geodesic_point(&g, l0, 1.0);
    r.check_max("endpoint", frobenius_norm(&(end.projector() - l.projector())), 1e-9);
    r.check_max("norm_bound", (spectral_norm(&g.z) - FRAC_PI_2).max(0.0), 1e-12);
    r.check_max("codiagonality", codiagonality_defect(&g, l0), 1e-9);
    let comm = geodesic_commutation_defects(&g, l0, &[0.25, 0.5, 0.75, 1.0]);
    r.check_max("exp_commutes", comm.into_iter().fold(0.0, f64::max), 1e-9);
    match davis_symmetry(l0, l, cfg) {
        Ok(v) => {
            r.check_max("davis_closed_form", v.closed_form_defect, 1e-9);
            r.check_max("davis_involution", v.involution_defect, 1e-9);
            r.check_max("davis_mapping", v.mapping_defect, 1e-9);
            r.check_max("davis_exponential", v.exponential_defect, 1e-9);
            r.check_max("davis_commutation", v.commutation_defect, 1e-9);
            r.check_max("davis_anticommutation", v.anticommutation_defect, 1e-9);
        }
        Err(Error::EmptyGenericPart) => {}
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

pub fn geodesic(ctx: &Ctx, p: &Option<PathBuf>, q: &Option<PathBuf>) -> Result<Report> {
    let mut r = ctx.report("geodesic");
    let (l0, l) = load_pair(ctx, &mut r, p, q, equal_dim_pair)?;
    add_geodesic(&mut r, &l0, &l, &ctx.cfg)?;
    Ok(r)
}

fn add_oblique(r: &mut Report, s: &Frame, t: &Frame, cfg: &ToleranceConfig) -> Result<()> {
    let q = oblique_projection(s, t, cfg)?;
    let tr = sv_transfer(&q);
    r.reals("beta", &tr.beta);
    r.reals("s_transfer", &tr.s);
    r.reals("s_direct", &tr.direct);
    r.check_max("idempotency", q.idempotency_defect(), 1e-9);
    r.check_max("sv_transfer", tr.defect, 1e-9);
    let polar = reflection_polar(&q, cfg)?;
    r.check_max("rho_symmetry", polar.symmetry_defect, 1e-9);
    r.check_max("rho_intertwining", polar.intertwining_defect, 1e-9);
    r.check_max("polar_closed_form", polar.closed_form_defect, 1e-8);
    r.check_max("model_q", polar.model_q_defect, 1e-8);
    r.check_max("lemma_diagonalization", polar.lemma_defect, 1e-8);
    let rho = rho_in_sd_report(&q, cfg)?;
    r.reals("qq_star_eigenvalues", &rho.qq_star_eigenvalues);
    r.check_max("qq_star_block", rho.block_identity_defect, 1e-8);
    r.check_max("qq_star_spectrum", rho.qq_star_defect, 1e-8);
    r.check_max("corner_modulus_spectrum", rho.corner_modulus_defect, 1e-8);
    Ok(())
}

pub fn oblique(ctx: &Ctx, p: &Option<PathBuf>, q: &Option<PathBuf>) -> Result<Report> {
    let mut r = ctx.report("oblique");
    let (s, t) = load_pair(ctx, &mut r, p, q, complementary_pair)?;
    add_oblique(&mut r, &s, &t, &ctx.cfg)?;
    Ok(r)
}

fn add_dilation(r: &mut Report, c: &Contraction, n_trunc: usize) -> Result<()> {
    let jv = jv_spectrum(c)?;
    r.reals("singular_values", &c.singular_values());
    r.complexes("jv_eigenvalues", &jv.eigenvalues);
    r.check_max("jv_spectrum", jv.defect, 1e-9);
    r.check_max("jv_real_part", jv.real_part_defect, 1e-9);
    r.check_max("jv_imaginary_part", jv.imaginary_part_defect, 1e-9);
    let d = dilation_block_check(c, n_trunc)?;
    r.check_max("dilation_unitary", d.unitarity_defect, 1e-10);
    r.check_max("dilation_center", d.center_defect, 1e-10);
    r.check_max("shift_block_identity", d.block_defect, 1e-10);
    r.check_max("n_block_is_jv", d.jv_defect, 1e-10);
    r.check_max(
        "dilation_powers",
        d.power_defects.iter().copied().fold(0.0, f64::max),
        1e-9,
    );
    r.check_max("shift_product_spectrum", d.spectrum_defect, 1e-9);
    Ok(())
}

pub fn dilate(ctx: &Ctx, matrix: &Option<PathBuf>, n_trunc: Option<usize>) -> Result<Report> {
    let mut r = ctx.report("dilate");
    let n_trunc = n_trunc.unwrap_or(3);
    r.input("matrix", path_str(matrix));
    r.input("N", n_trunc);
    let a = match matrix {
        Some(path) => read_matrix(path)?,
        None => random::random_contraction(&mut ctx.rng(), ctx.size_or(4)),
    };
    let c = Contraction::new(a, &ctx.cfg)?;
    add_dilation(&mut r, &c, n_trunc)?;
    Ok(r)
}

fn theta_or_random(ctx: &Ctx, theta: &Option<PathBuf>, degree: usize) -> Result<BlaschkeData> {
    let zeros = match theta {
        Some(path) => read_points(path)?,
        None => random::disk_points(&mut ctx.rng(), degree, 0.85, 0.1),
    };
    Ok(BlaschkeData::new(zeros)?)
}

pub fn toeplitz(
    ctx: &Ctx,
    theta: &Option<PathBuf>,
    power: i32,
    n: Option<usize>,
) -> Result<Report> {
    let mut r = ctx.report("toeplitz");
    let n = n.unwrap_or(16);
    r.input("N", n);
    r.input("theta", path_str(theta));
    let trunc = TrigTruncation::new(n);
    let (samples, predicted) = match theta {
        Some(path) => {
            let b = BlaschkeData::new(read_points(path)?)?;
            r.complexes("zeros", b.zeros());
            // analytic inner symbol: an isometry on H²
            (trunc.sample(|z| b.eval(z)), vec![1.0; n + 1])
        }
        None => {
            r.input("power", power);
            let k = power.unsigned_abs() as usize;
            if k > n {
                bail!("|power| must not exceed N");
            }
            let mut predicted = vec![1.0; n + 1];
            if power < 0 {
                predicted[n + 1 - k..].iter_mut().for_each(|v| *v = 0.0);
            }
            (trunc.sample(|z| z.powi(power)), predicted)
        }
    };
    let c = toeplitz_compression(&samples, &trunc, &ctx.cfg)?;
    let s = singular_values(&c.toeplitz);
    r.reals("toeplitz_singular_values", &s);
    r.reals("hankel_singular_values", &singular_values(&c.hankel));
    r.check("unimodularity", c.unimodularity_defect, 1e-9);
    r.check(
        "toeplitz_spectrum",
        schmidt_core::linalg::real_multiset_defect(&s, &predicted),
        1e-8,
    );
    Ok(r)
}

fn add_modelspace(r: &mut Report, theta: &BlaschkeData, cfg: &ToleranceConfig) -> Result<()> {
    let ms = model_space_frame(theta, cfg)?;
    let sh = truncated_shift_singulars(theta, cfg)?;
    r.reals("singular_values", &sh.singular_values);
    r.complexes("theta_at_zero", &[sh.theta_at_zero]);
    r.result("predicted_smallest", sh.predicted_smallest);
    r.result("truncation_length", sh.length);
    r.check_max("frame_orthonormality", ms.frame.orthonormality_defect(), 1e-10);
    r.check_max("truncation_residual", ms.residual, 1e-12);
    r.check_max("shift_singular_values", sh.defect, 1e-8);
    r.check_max("rank_one_identity", sh.rank_one_defect, 1e-8);
    Ok(())
}

pub fn modelspace(ctx: &Ctx, theta: &Option<PathBuf>) -> Result<Report> {
    let mut r = ctx.report("modelspace");
    r.input("theta", path_str(theta));
    let b = theta_or_random(ctx, theta, ctx.size_or(4))?;
    r.complexes("zeros", b.zeros());
    add_modelspace(&mut r, &b, &ctx.cfg)?;
    Ok(r)
}

fn add_rational(
    r: &mut Report,
    a: &[Complex64],
    b: &[Complex64],
    cfg: &ToleranceConfig,
) -> Result<()> {
    let rs = rational_symbol_singulars(a, b, cfg)?;
    r.reals("s_direct", &rs.s_direct);
    r.reals("s_generic", &rs.s_generic);
    r.reals("s_oblique", &rs.s_oblique);
    if let Some(g) = &rs.s_gram {
        r.reals("s_gram", g);
    }
    r.reals("beta", &rs.beta);
    r.reals("idempotent_singular_values", &rs.idempotent_singular_values);
    r.result("dim_h10", rs.corner_dims.0);
    r.result("dim_h01", rs.corner_dims.1);
    r.check_max("generic_vs_oblique", rs.defect_generic_oblique, 1e-8);
    r.check_max("generic_vs_direct", rs.defect_generic_direct, 1e-8);
    if let Some(d) = rs.defect_generic_gram {
        r.check_max("generic_vs_gram", d, 1e-8);
    }
    if let Some(d) = rs.defect_oblique_gram {
        r.check_max("oblique_vs_gram", d, 1e-8);
    }
    r.check_max(
        "corner_dimensions",
        (rs.corner_dims.0 + rs.corner_dims.1) as f64,
        0.0,
    );
    Ok(())
}

pub fn rational(ctx: &Ctx, za: &Option<PathBuf>, zb: &Option<PathBuf>) -> Result<Report> {
    let mut r = ctx.report("rational");
    r.input("zeros_a", path_str(za));
    r.input("zeros_b", path_str(zb));
    let (a, b) = match (za, zb) {
        (Some(a), Some(b)) => (read_points(a)?, read_points(b)?),
        (None, None) => {
            let n = ctx.size_or(2);
            let pts = random::disk_points(&mut ctx.rng(), 2 * n, 0.8, 0.1);
            (pts[..n].to_vec(), pts[n..].to_vec())
        }
        _ => bail!("--zeros-a and --zeros-b must be given together"),
    };
    r.complexes("zeros_a", &a);
    r.complexes("zeros_b", &b);
    add_rational(&mut r, &a, &b, &ctx.cfg)?;
    Ok(r)
}

fn add_shiftsym(r: &mut Report, n: usize, cfg: &ToleranceConfig) -> Result<()> {
    let s = symmetric_subspace_shift(n, cfg)?;
    r.result("dimension", s.dimension);
    r.result("distance", s.distance);
    r.result("predicted_distance", s.predicted_distance);
    r.result("distance_gap_to_half_pi", FRAC_PI_2 - s.distance);
    if let Some(d) = s.dense_distance {
        r.result("dense_distance", d);
        r.check_max("dense_distance", (d - s.distance).abs(), 1e-9);
    }
    r.result(
        "eigenvalue_histogram",
        s.histogram
            .iter()
            .map(|(lo, hi, c)| json!({"lo": lo, "hi": hi, "count": c}))
            .collect::<Vec<_>>(),
    );
    r.check_max("e0_image", s.e0_defect, 1e-12);
    r.check_max("selfadjoint", s.hermitian_defect, 1e-12);
    r.check_max("tridiagonal", s.tridiagonal_residual, 1e-12);
    r.check_max("multiplication", s.multiplication_defect, 1e-10);
    r.check_max("eigenvalues", s.eigenvalue_defect, 1e-10);
    r.check_max("cosine_relation", s.cosine_relation_defect, 1e-10);
    r.check_max(
        "distance_formula",
        (s.distance - s.predicted_distance).abs(),
        1e-10,
    );
    Ok(())
}

pub fn shiftsym(ctx: &Ctx, n: Option<usize>) -> Result<Report> {
    let mut r = ctx.report("shiftsym");
    let n = n.unwrap_or(64);
    r.input("N", n);
    add_shiftsym(&mut r, n, &ctx.cfg)?;
    Ok(r)
}

fn add_prolate(
    r: &mut Report,
    interval: (f64, f64),
    band: (f64, f64),
    grid: usize,
    cfg: &ToleranceConfig,
) -> Result<()> {
    let p = prolate_compression(interval, band, grid, cfg)?;
    r.reals("eigenvalues", &p.eigenvalues);
    r.result("count_above_half", p.count_above_half);
    r.result("trace", p.trace);
    r.result("time_bandwidth", p.time_bandwidth);
    r.result("interval_points", p.interval_points);
    r.result("band_frequencies", p.band_frequencies);
    r.check_max("unit_interval", p.range_defect, 1e-9);
    r.check_max("nonincreasing", p.monotonicity_defect, 1e-12);
    let sum: f64 = p.eigenvalues.iter().sum();
    r.check_max("trace", (sum - p.trace).abs(), 1e-9);
    Ok(())
}

pub fn prolate(ctx: &Ctx, interval: (f64, f64), band: (f64, f64)) -> Result<Report> {
    let mut r = ctx.report("prolate");
    let grid = ctx.size_or(512);
    r.input("interval", json!({"lo": interval.0, "hi": interval.1}));
    r.input("band", json!({"lo": band.0, "hi": band.1}));
    r.input("grid", grid);
    add_prolate(&mut r, interval, band, grid, &ctx.cfg)?;
    Ok(r)
}

fn add_halfline(r: &mut Report, k: usize, grid: usize, cfg: &ToleranceConfig) -> Result<()> {
    let h = fourier_halfline(k, grid, cfg)?;
    r.reals("re_eigenvalues", &h.re_eigenvalues);
    r.reals("re_predicted", &h.re_predicted);
    r.reals("im_eigenvalues", &h.im_eigenvalues);
    r.reals("im_predicted", &h.im_predicted);
    r.result("chi_norm", h.chi_norm);
    r.result("chi_claimed", h.chi_claimed);
    r.result("chi_exact", h.chi_exact);
    r.result("operator_norm", h.operator_norm);
    r.result("re_spectrum_histogram", histogram(&h.re_spectrum, -1.0, 1.0, 20));
    r.result("im_spectrum_histogram", histogram(&h.im_spectrum, -1.0, 1.0, 20));
    r.check_max("hermite_eigenvalues", h.eigenvalue_defect(), 2e-2);
    r.check_max("hermite_residuals", h.max_residual(), 2e-2);
    r.check_max("half_gram", h.gram_defect, 1e-6);
    r.check_max("hermite_norm", h.hermite_norm_defect, 1e-8);
    r.check_max("fourier_eigenfunctions", h.fourier_eigen_defect, 1e-8);
    r.check_max("chi_norm_exact", (h.chi_norm - h.chi_exact).abs(), 1e-6);
    Ok(())
}

fn histogram(values: &[f64], lo: f64, hi: f64, bins: usize) -> serde_json::Value {
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for v in values {
        let b = (((v - lo) / width).floor().max(0.0) as usize).min(bins - 1);
        counts[b] += 1;
    }
    json!(counts
        .iter()
        .enumerate()
        .map(|(i, c)| json!({"lo": lo + i as f64 * width, "hi": lo + (i + 1) as f64 * width, "count": c}))
        .collect::<Vec<_>>())
}

pub fn halfline(ctx: &Ctx, k: Option<usize>) -> Result<Report> {
    let mut r = ctx.report("halfline");
    let k = k.unwrap_or(10);
    let grid = ctx.size_or(schmidt_core::hardy::HALFLINE_DEFAULT_GRID);
    r.input("K", k);
    r.input("grid", grid);
    add_halfline(&mut r, k, grid, &ctx.cfg)?;
    Ok(r)
}

/// Every invariant at dimension `size` over a few seeded trials.
pub fn selftest(ctx: &Ctx) -> Result<Report> {
    let mut r = ctx.report("selftest");
    let n = ctx.size_or(16);
    if n < 4 {
        bail!("selftest needs --size of at least 4");
    }
    let cfg = &ctx.cfg;
    let mut rng = ctx.rng();
    const TRIALS: usize = 8;
    r.input("trials", TRIALS);
    let mut scratch = Report::new("", 0, ctx.tol);
    for _ in 0..TRIALS {
        let (p, q) = random::random_pair(&mut rng, n);
        add_halmos(&mut scratch, &p, &q, cfg)?;
        add_relations(&mut scratch, &p, &q, cfg)?;
        add_commutator(&mut scratch, &p, &q, cfg)?;
        let (l0, l) = equal_dim_pair(&mut rng, n);
        add_geodesic(&mut scratch, &l0, &l, cfg)?;
        let (s, t) = complementary_pair(&mut rng, n);
        add_oblique(&mut scratch, &s, &t, cfg)?;
        let d = n.min(6);
        let c = Contraction::new(random::random_contraction(&mut rng, d), cfg)?;
        add_dilation(&mut scratch, &c, 3)?;
        let theta = BlaschkeData::new(random::disk_points(&mut rng, n.min(8), 0.85, 0.1))?;
        add_modelspace(&mut scratch, &theta, cfg)?;
        let m = (n / 4).clamp(1, 4);
        let pts = random::disk_points(&mut rng, 2 * m, 0.8, 0.1);
        add_rational(&mut scratch, &pts[..m], &pts[m..], cfg)?;
    }
    add_shiftsym(&mut scratch, n, cfg)?;
    add_prolate(&mut scratch, (-1.0, 1.0), (-0.5, 0.5), 256, cfg)?;
    add_halfline(&mut scratch, 2, 512, cfg)?;
    for (name, c) in &scratch.checks {
        r.check(name, c.defect, c.tolerance);
    }
    r.result("checks_run", r.checks.len());
    r.result("checks_failed", r.checks.values().filter(|c| !c.pass).count());
    Ok(r)
}
