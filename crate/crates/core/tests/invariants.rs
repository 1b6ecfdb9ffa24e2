use proptest::prelude::*;

use schmidt_core::dilations::{dilation_block_check, jv_spectrum, Contraction};
use schmidt_core::grassmann::{davis_symmetry, geodesic_exponent, geodesic_point};
use schmidt_core::hardy::{
    model_space_frame, rational_symbol_singulars, truncated_shift_singulars, BlaschkeData,
    SzegoKernelSet,
};
use schmidt_core::linalg::{frobenius_norm, spectral_norm};
use schmidt_core::oblique::{oblique_projection, reflection_polar, sv_transfer};
use schmidt_core::random;
use schmidt_core::two_projections::{commutator_spectrum, halmos_decompose, product_relations};
use schmidt_core::{Complex64, Error, ToleranceConfig};

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn disk_points(seed: u64, count: usize, radius: f64) -> Vec<Complex64> {
    random::disk_points(&mut random::rng(seed), count, radius, 0.1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn halmos_model_reconstructs_both_projectors(seed in any::<u64>(), n in 4usize..24) {
        let mut rng = random::rng(seed);
        let (p, q) = random::random_pair(&mut rng, n);
        let model = halmos_decompose(&p, &q, &cfg()).unwrap();
        let (pr, qr) = model.reconstruct();
        prop_assert!(frobenius_norm(&(pr - p.projector())) <= 1e-9);
        prop_assert!(frobenius_norm(&(qr - q.projector())) <= 1e-9);
        prop_assert!(model.orthogonality_defect() <= 1e-9);
    }

    #[test]
    fn spectral_transfer_laws(seed in any::<u64>(), n in 4usize..24) {
        let mut rng = random::rng(seed);
        let (p, q) = random::random_pair(&mut rng, n);
        let r = product_relations(&p, &q, &cfg()).unwrap();
        prop_assert!(r.difference_defect <= 1e-9, "{:?}", r);
        prop_assert!(r.perp_defect <= 1e-9);
        prop_assert!(r.complement_defect <= 1e-9);
        prop_assert!(r.eigenvalues_p_minus_q.iter().all(|l| l.abs() <= 1.0 + 1e-12));
    }

    #[test]
    fn commutator_is_skew_with_explicit_eigenvectors(seed in any::<u64>(), n in 4usize..20) {
        let mut rng = random::rng(seed);
        let (p, q) = random::random_pair(&mut rng, n);
        let c = commutator_spectrum(&p, &q, &cfg()).unwrap();
        prop_assert!(c.spectrum_defect <= 1e-9);
        prop_assert!(c.eigenvector_residual <= 1e-8);
        prop_assert!(c.kernel_defect <= 1e-9);
        prop_assert!(c.eigenvalues.iter().all(|l| l.re == 0.0 && l.im.abs() <= 0.5 + 1e-12));
    }

    #[test]
    fn geodesic_reaches_its_endpoint(seed in any::<u64>(), n in 4usize..20) {
        let mut rng = random::rng(seed);
        let k = n / 2;
        let l0 = random::random_frame(&mut rng, n, k);
        let l = random::random_frame(&mut rng, n, k);
        let g = geodesic_exponent(&l0, &l, &cfg()).unwrap();
        let end = geodesic_point(&g, &l0, 1.0);
        prop_assert!(frobenius_norm(&(end.projector() - l.projector())) <= 1e-9);
        prop_assert!(spectral_norm(&g.z) <= std::f64::consts::FRAC_PI_2 + 1e-12);
        let v = davis_symmetry(&l0, &l, &cfg()).unwrap();
        prop_assert!(v.max_defect() <= 1e-9);
    }

    #[test]
    fn oblique_corner_transfer(seed in any::<u64>(), n in 3usize..20) {
        let mut rng = random::rng(seed);
        let k = 1 + (seed as usize) % (n - 1);
        let s = random::random_frame(&mut rng, n, k);
        let t = random::random_frame(&mut rng, n, n - k);
        let q = oblique_projection(&s, &t, &cfg()).unwrap();
        prop_assert!(q.idempotency_defect() <= 1e-9);
        let tr = sv_transfer(&q);
        prop_assert!(tr.defect <= 1e-9, "{:?}", tr);
        let polar = reflection_polar(&q, &cfg()).unwrap();
        prop_assert!(polar.symmetry_defect <= 1e-9);
        prop_assert!(polar.intertwining_defect <= 1e-9);
    }

    #[test]
    fn dilation_structure(seed in any::<u64>(), d in 1usize..6) {
        let mut rng = random::rng(seed);
        let a = random::random_contraction(&mut rng, d);
        let c = Contraction::new(a, &cfg()).unwrap();
        let jv = jv_spectrum(&c).unwrap();
        prop_assert!(jv.defect <= 1e-9);
        prop_assert!(jv.eigenvalues.iter().all(|z| (z.norm() - 1.0).abs() <= 1e-9));
        let r = dilation_block_check(&c, 3).unwrap();
        prop_assert!(r.unitarity_defect <= 1e-10);
        prop_assert!(r.max_defect() <= 1e-9, "{:?}", r);
    }

    #[test]
    fn szego_gram_is_positive(seed in any::<u64>(), k in 1usize..7) {
        let pts = disk_points(seed, k, 0.95);
        let set = SzegoKernelSet::new(pts.clone(), &cfg()).unwrap();
        prop_assert!(set.min_eigenvalue().unwrap() > 0.0);
        for (i, b) in pts.iter().enumerate() {
            prop_assert_eq!(set.gram[(i, i)].re, 1.0 / (1.0 - b.norm_sqr()));
        }
    }

    #[test]
    fn compressed_shift_defect_is_theta_at_zero(seed in any::<u64>(), d in 1usize..=8) {
        let theta = BlaschkeData::new(disk_points(seed, d, 0.85)).unwrap();
        let r = truncated_shift_singulars(&theta, &cfg()).unwrap();
        prop_assert!(r.defect <= 1e-8, "{:?}", r);
        let below = r.singular_values.iter().filter(|s| **s < 1.0 - cfg().rank_tol).count();
        prop_assert_eq!(below, 1);
        prop_assert!(r.rank_one_defect <= 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rational_routes_agree(seed in any::<u64>(), n in 1usize..=4) {
        let pts = disk_points(seed, 2 * n, 0.8);
        let r = rational_symbol_singulars(&pts[..n], &pts[n..], &cfg()).unwrap();
        prop_assert!(r.max_defect() <= 1e-8, "{:?}", r);
        prop_assert_eq!(r.corner_dims, (0, 0));
        prop_assert!(r.s_generic.iter().all(|s| *s < 1.0 - cfg().rank_tol));
    }
}

#[test]
fn confluent_zeros_are_rejected() {
    let a = Complex64::new(0.2, 0.3);
    let theta = BlaschkeData::new(vec![a, a]).unwrap();
    assert!(matches!(model_space_frame(&theta, &cfg()), Err(Error::ConfluentZeros)));
    assert!(matches!(
        rational_symbol_singulars(&[a, a], &[Complex64::new(-0.4, 0.0), Complex64::new(0.5, 0.0)], &cfg()),
        Err(Error::ConfluentZeros)
    ));
}
