//! Acceptance suite: runs the thirteen criteria at their stated tolerances and
//! prints one PASS/FAIL line each.
//!
//! Criterion 12 asks for ‖P₀UP₀χ_(0,1)‖ = 1, but the exact value is 1/√2, so it
//! always prints FAIL. It is listed in `KNOWN_UNATTAINABLE` and does not change
//! the exit status unless `ACCEPTANCE_STRICT=1` is set. Any other failure exits
//! nonzero.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};
use std::panic;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use schmidt_core::dilations::{dilation_block_check, jv_spectrum, Contraction};
use schmidt_core::grassmann::{davis_symmetry, geodesic_exponent, geodesic_point};
use schmidt_core::hardy::{
    fourier_halfline, rational_symbol_singulars, symmetric_subspace_shift,
    truncated_shift_singulars, BlaschkeData, HALFLINE_DEFAULT_GRID,
};
use schmidt_core::linalg::mmio::write_matrix_market_file;
use schmidt_core::linalg::{frobenius_norm, from_real_diagonal, spectral_norm};
use schmidt_core::oblique::{oblique_projection, reflection_polar, sv_transfer};
use schmidt_core::random::{self, PairLayout};
use schmidt_core::two_projections::{
    commutator_spectrum, halmos_decompose, product_relations, recover_angle_from_cs,
};
use schmidt_core::{Complex64, Frame, ToleranceConfig};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

/// Dimensions 4..=64 visited in a fixed scrambled order.
fn dims(trials: usize) -> impl Iterator<Item = (u64, usize)> {
    (0..trials).map(|i| (1000 + i as u64, 4 + (i * 37) % 61))
}

fn spectral_transfer() -> Outcome {
    let mut worst = 0.0f64;
    let trials = 120;
    for (seed, n) in dims(trials) {
        let (p, q) = random::random_pair(&mut random::rng(seed), n);
        let r = product_relations(&p, &q, &cfg()).unwrap();
        worst = worst.max(r.difference_defect);
    }
    outcome(
        worst <= 1e-9,
        format!("{trials} pairs in dims 4-64, max eig(P-Q) defect {worst:.2e} (tol 1e-9)"),
    )
}

fn complement_transfer() -> Outcome {
    let (mut comp, mut perp) = (0.0f64, 0.0f64);
    let trials = 120;
    for (seed, n) in dims(trials) {
        let (p, q) = random::random_pair(&mut random::rng(seed), n);
        let r = product_relations(&p, &q, &cfg()).unwrap();
        comp = comp.max(r.complement_defect);
        perp = perp.max(r.perp_defect);
    }
    outcome(
        comp <= 1e-9 && perp <= 1e-9,
        format!(
            "{trials} pairs, PQ vs P^perp Q^perp {comp:.2e}, PQ^perp vs sqrt(1-s^2) {perp:.2e} (tol 1e-9)"
        ),
    )
}

fn commutator_theorem() -> Outcome {
    let (mut spec, mut vec) = (0.0f64, 0.0f64);
    let trials = 120;
    for (seed, n) in dims(trials) {
        let (p, q) = random::random_pair(&mut random::rng(seed), n);
        let c = commutator_spectrum(&p, &q, &cfg()).unwrap();
        spec = spec.max(c.spectrum_defect);
        vec = vec.max(c.eigenvector_residual);
    }
    outcome(
        spec <= 1e-9 && vec <= 1e-8,
        format!(
            "{trials} pairs, spectrum defect {spec:.2e} (tol 1e-9), explicit eigenvector residual {vec:.2e} (tol 1e-8)"
        ),
    )
}

/// `X = U diag(x) U*`, `CS = U diag(cos x sin x) U*`, `E = U[:, x ≤ π/4]`.
fn angle_round_trip(seed: u64, x: &[f64]) -> f64 {
    let n = x.len();
    let u = random::haar_unitary(&mut random::rng(seed), n);
    let conj = |d: Vec<f64>| &u * from_real_diagonal(&d) * u.adjoint();
    let big_x = conj(x.to_vec());
    let cs = conj(x.iter().map(|v| v.cos() * v.sin()).collect());
    let low: Vec<usize> = (0..n).filter(|&i| x[i] <= FRAC_PI_4).collect();
    let mut e = schmidt_core::linalg::zeros(n, low.len());
    for (j, &i) in low.iter().enumerate() {
        e.set_column(j, &u.column(i));
    }
    let e = Frame::from_orthonormal(e).unwrap();
    let rec = recover_angle_from_cs(&cs, &e, &cfg()).unwrap();
    frobenius_norm(&(rec - big_x))
}

fn angle_recovery() -> Outcome {
    let two_branch = angle_round_trip(1, &[FRAC_PI_6, FRAC_PI_3]);
    let mut worst = 0.0f64;
    let mut model_worst = 0.0f64;
    for seed in 0..100u64 {
        let mut rng = random::rng(seed);
        let g = 1 + (seed as usize) % 8;
        let angles = random::random_angles(&mut rng, g);
        worst = worst.max(angle_round_trip(seed + 500, &angles));
        // forward through a projection pair: s = cos X from PQ, back by arccos
        let layout = PairLayout { h11: 1, h00: 1, h10: 0, h01: 1, generic: g };
        let (p, q) = random::structured_pair(&mut rng, layout, &angles);
        let model = halmos_decompose(&p, &q, &cfg()).unwrap();
        let mut got = model.angles.clone();
        let mut want = angles.clone();
        got.sort_by(f64::total_cmp);
        want.sort_by(f64::total_cmp);
        let d = got
            .iter()
            .zip(&want)
            .map(|(a, b)| (a - b).abs())
            .fold(if got.len() == want.len() { 0.0 } else { f64::INFINITY }, f64::max);
        model_worst = model_worst.max(d);
    }
    outcome(
        two_branch <= 1e-9 && worst <= 1e-9 && model_worst <= 1e-9,
        format!(
            "diag(pi/6, pi/3) {two_branch:.2e}, 100 random X {worst:.2e}, angles from pairs {model_worst:.2e} (tol 1e-9)"
        ),
    )
}

fn halmos_round_trip() -> Outcome {
    let mut worst = 0.0f64;
    let trials = 120;
    for (seed, n) in dims(trials) {
        let (p, q) = random::random_pair(&mut random::rng(seed + 77), n);
        let model = halmos_decompose(&p, &q, &cfg()).unwrap();
        let (pr, qr) = model.reconstruct();
        worst = worst
            .max(frobenius_norm(&(pr - p.projector())))
            .max(frobenius_norm(&(qr - q.projector())));
    }
    outcome(
        worst <= 1e-9,
        format!("{trials} pairs, max reconstruction defect {worst:.2e} (tol 1e-9)"),
    )
}

fn geodesics() -> Outcome {
    let (mut end, mut norm_excess, mut comm, mut anti, mut expo) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let trials = 60;
    for seed in 0..trials as u64 {
        let mut rng = random::rng(seed + 9000);
        let (l0, l) = if seed % 2 == 0 {
            let n = 4 + (seed as usize * 5) % 29;
            let k = n / 2;
            (random::random_frame(&mut rng, n, k), random::random_frame(&mut rng, n, k))
        } else {
            let c = 1 + (seed as usize) % 3;
            let layout = PairLayout { h11: 1, h00: 2, h10: c, h01: c, generic: 2 + (seed as usize) % 5 };
            let angles = random::random_angles(&mut rng, layout.generic);
            random::structured_pair(&mut rng, layout, &angles)
        };
        let g = geodesic_exponent(&l0, &l, &cfg()).unwrap();
        let e = geodesic_point(&g, &l0, 1.0);
        end = end.max(frobenius_norm(&(e.projector() - l.projector())));
        norm_excess = norm_excess.max(spectral_norm(&g.z) - FRAC_PI_2);
        let v = davis_symmetry(&l0, &l, &cfg()).unwrap();
        comm = comm.max(v.commutation_defect);
        anti = anti.max(v.anticommutation_defect);
        expo = expo.max(v.exponential_defect);
    }
    let pass = end <= 1e-9 && norm_excess <= 1e-12 && comm <= 1e-9 && anti <= 1e-9 && expo <= 1e-9;
    outcome(
        pass,
        format!(
            "{trials} pairs, endpoint {end:.2e}, ||Z|| - pi/2 {norm_excess:.2e}, [e^iZ', K] {comm:.2e}, {{V, K}} {anti:.2e}, V - e^iZ'(2P0'-I) {expo:.2e} (tol 1e-9)"
        ),
    )
}

fn oblique_transfer() -> Outcome {
    let (mut tr, mut sym, mut int, mut closed) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let trials = 120;
    for seed in 0..trials as u64 {
        let mut rng = random::rng(seed + 4242);
        let n = 3 + (seed as usize * 7) % 22;
        let k = 1 + (seed as usize) % (n - 1);
        let s = random::random_frame(&mut rng, n, k);
        let t = random::random_frame(&mut rng, n, n - k);
        let q = oblique_projection(&s, &t, &cfg()).unwrap();
        tr = tr.max(sv_transfer(&q).defect);
        let polar = reflection_polar(&q, &cfg()).unwrap();
        sym = sym.max(polar.symmetry_defect);
        int = int.max(polar.intertwining_defect);
        closed = closed.max(polar.closed_form_defect);
    }
    outcome(
        tr <= 1e-9 && sym <= 1e-9 && int <= 1e-9 && closed <= 1e-8,
        format!(
            "{trials} idempotents, transfer {tr:.2e}, rho symmetry {sym:.2e}, intertwining {int:.2e} (tol 1e-9), closed forms {closed:.2e} (tol 1e-8)"
        ),
    )
}

fn dilations() -> Outcome {
    let (mut jv, mut unit, mut block) = (0.0f64, 0.0f64, 0.0f64);
    let trials = 40;
    for seed in 0..trials as u64 {
        let mut rng = random::rng(seed + 31337);
        let d = 1 + (seed as usize) % 6;
        let c = Contraction::new(random::random_contraction(&mut rng, d), &cfg()).unwrap();
        jv = jv.max(jv_spectrum(&c).unwrap().defect);
        let r = dilation_block_check(&c, 2 + (seed as usize) % 3).unwrap();
        unit = unit.max(r.unitarity_defect);
        block = block.max(r.block_defect).max(r.jv_defect);
    }
    outcome(
        jv <= 1e-9 && unit <= 1e-10 && block <= 1e-12,
        format!(
            "{trials} contractions, JV spectrum {jv:.2e} (tol 1e-9), dilation unitarity {unit:.2e} (tol 1e-10), S U_A = I + N_A + I {block:.2e} (exact)"
        ),
    )
}

fn model_space_shift() -> Outcome {
    let mut worst = 0.0f64;
    let mut count_ok = true;
    let mut cases = 0;
    let mut thetas = vec![vec![Complex64::new(0.0, 0.0)]];
    for d in 1..=8usize {
        for t in 0..5u64 {
            let mut z = random::disk_points(&mut random::rng(100 * d as u64 + t), d, 0.85, 0.1);
            if t == 4 {
                z[0] = Complex64::new(0.0, 0.0);
            }
            thetas.push(z);
        }
    }
    for z in thetas {
        let theta = BlaschkeData::new(z).unwrap();
        let r = truncated_shift_singulars(&theta, &cfg()).unwrap();
        worst = worst.max(r.defect);
        let below = r.singular_values.iter().filter(|s| **s < 1.0 - cfg().rank_tol).count();
        count_ok &= below == 1;
        cases += 1;
    }
    outcome(
        worst <= 1e-8 && count_ok,
        format!("{cases} Blaschke products of degree 1-8, d-1 ones and |theta(0)| within {worst:.2e} (tol 1e-8), one value below 1: {count_ok}"),
    )
}

fn rational_symbols() -> Outcome {
    let mut worst = 0.0f64;
    let mut corners = 0;
    let trials = 60;
    for seed in 0..trials as u64 {
        let n = 1 + (seed as usize) % 4;
        let pts = random::disk_points(&mut random::rng(seed + 777), 2 * n, 0.8, 0.1);
        let r = rational_symbol_singulars(&pts[..n], &pts[n..], &cfg()).unwrap();
        worst = worst.max(r.max_defect());
        corners += r.corner_dims.0 + r.corner_dims.1;
    }
    outcome(
        worst <= 1e-8 && corners == 0,
        format!("{trials} zero configurations n = 1-4, route agreement {worst:.2e} (tol 1e-8), nontrivial corner dimensions {corners}"),
    )
}

fn shift_symmetric_subspace() -> Outcome {
    let start = Instant::now();
    let mut last = 0.0;
    let mut monotone = true;
    let mut final_distance = 0.0;
    let mut n = 2;
    while n <= 2048 {
        let r = symmetric_subspace_shift(n, &cfg()).unwrap();
        monotone &= r.distance > last;
        last = r.distance;
        final_distance = r.distance;
        n *= 2;
    }
    let secs = start.elapsed().as_secs_f64();
    let gap = (final_distance - FRAC_PI_2).abs();
    outcome(
        gap <= 0.05 && monotone && secs <= 60.0,
        format!("d(L0, S L0) at N = 2048 is {final_distance:.6}, |d - pi/2| = {gap:.2e} (tol 0.05), monotone over N = 2..2048: {monotone}, {secs:.2}s (limit 60s)"),
    )
}

fn fourier_halfline_criterion() -> Outcome {
    let r = fourier_halfline(10, HALFLINE_DEFAULT_GRID, &cfg()).unwrap();
    let signs = r.eigenvalue_defect();
    let chi_gap = (r.chi_norm - 1.0).abs();
    outcome(
        signs <= 2e-2 && chi_gap <= 1e-3,
        format!(
            "k <= 10: Re eigenvalues vs (-1)^k/2 and Im vs -(-1)^k/2, max defect {signs:.2e} (tol 2e-2); \
             ||P0 U P0 chi_(0,1)|| = {:.6} vs 1, gap {chi_gap:.2e} (tol 1e-3; Plancherel gives exactly 1/sqrt(2) = {:.6})",
            r.chi_norm, r.chi_exact
        ),
    )
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_schmidt"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).display().to_string();
    let mut rng = random::rng(5);
    let layout = PairLayout { h11: 1, h00: 1, h10: 1, h01: 2, generic: 3 };
    let angles = random::random_angles(&mut rng, 3);
    let (p, q) = random::structured_pair(&mut rng, layout, &angles);
    write_matrix_market_file(&p.projector(), Path::new(&path("P.mtx"))).unwrap();
    write_matrix_market_file(&q.projector(), Path::new(&path("Q.mtx"))).unwrap();
    std::fs::write(path("a.txt"), "# zeros of B_a\n0.5 0.1\n-0.2 0.3\n").unwrap();

    let mut notes = Vec::new();
    let mut pass = true;
    let runs: [Vec<String>; 4] = [
        vec!["relations".into(), "--p".into(), path("P.mtx"), "--q".into(), path("Q.mtx"), "--format".into(), "json".into()],
        vec!["selftest".into(), "--size".into(), "16".into(), "--seed".into(), "7".into()],
        vec!["rational".into(), "--seed".into(), "11".into(), "--size".into(), "3".into(), "--format".into(), "csv".into()],
        vec!["modelspace".into(), "--seed".into(), "4".into()],
    ];
    for args in &runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (c1, o1) = run_cli(&args);
        let (c2, o2) = run_cli(&args);
        let same = o1 == o2 && !o1.is_empty();
        pass &= same && c1 == 0 && c2 == 0;
        notes.push(format!("{} identical={same} exit={c1}", args[0]));
    }
    let (overlap, _) = run_cli(&["rational", "--zeros-a", &path("a.txt"), "--zeros-b", &path("a.txt")]);
    let (strict, _) = run_cli(&["relations", "--p", &path("P.mtx"), "--q", &path("Q.mtx"), "--tol", "1e-300"]);
    let (unknown, _) = run_cli(&["frobnicate"]);
    pass &= overlap == 2 && strict == 1 && unknown == 2;
    notes.push(format!("overlapping zeros exit={overlap} (want 2), failed identity exit={strict} (want 1), unknown subcommand exit={unknown} (want 2)"));
    outcome(pass, notes.join("; "))
}

type Criterion = fn() -> Outcome;

const KNOWN_UNATTAINABLE: &[u32] = &[12];

fn main() {
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let criteria: [(u32, &str, Criterion); 13] = [
        (1, "two-projection spectral transfer", spectral_transfer),
        (2, "complement transfer", complement_transfer),
        (3, "commutator theorem", commutator_theorem),
        (4, "angle recovery", angle_recovery),
        (5, "Halmos round trip", halmos_round_trip),
        (6, "geodesics", geodesics),
        (7, "oblique transfer", oblique_transfer),
        (8, "dilations", dilations),
        (9, "model-space shift", model_space_shift),
        (10, "rational symbols", rational_symbols),
        (11, "shift symmetric subspace", shift_symmetric_subspace),
        (12, "Fourier half-line", fourier_halfline_criterion),
        (13, "CLI determinism and exit codes", cli_determinism),
    ];
    let mut failed = 0;
    let mut blocking = 0;
    for (id, name, f) in criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(f).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let tag = if result.pass { "PASS" } else { "FAIL" };
        let known = KNOWN_UNATTAINABLE.contains(&id);
        failed += usize::from(!result.pass);
        blocking += usize::from(!result.pass && (strict || !known));
        println!(
            "{tag} criterion {id:>2} {name}: {} [{:.2}s]{}",
            result.detail,
            start.elapsed().as_secs_f64(),
            if !result.pass && known { " (known unattainable)" } else { "" }
        );
    }
    println!("acceptance: {} of 13 criteria passed", 13 - failed);
    if blocking > 0 {
        std::process::exit(1);
    }
}
