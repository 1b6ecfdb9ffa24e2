//! Seeded random fixtures: Gaussian matrices, Haar-like unitaries, frames,
//! structured projection pairs and contractions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{c64, from_real_diagonal, identity, ComplexMatrix, Frame};
use crate::Complex64;

pub type FixtureRng = ChaCha8Rng;

pub fn rng(seed: u64) -> FixtureRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut FixtureRng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c64(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix(rng: &mut FixtureRng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Haar-distributed unitary: QR of a Gaussian matrix with the phases of
/// `diag(R)` moved into `Q`.
pub fn haar_unitary(rng: &mut FixtureRng, n: usize) -> ComplexMatrix {
    if n == 0 {
        return identity(0);
    }
    let g = gaussian_matrix(rng, n, n);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c64(1.0, 0.0) };
        for z in q.column_mut(j).iter_mut() {
            *z *= phase;
        }
    }
    q
}

/// Uniformly random `k`-dimensional subspace of `C^n`.
pub fn random_frame(rng: &mut FixtureRng, n: usize, k: usize) -> Frame {
    assert!(k <= n);
    let u = haar_unitary(rng, n);
    Frame::new_unchecked(u.columns(0, k).into_owned())
}

pub fn random_hermitian(rng: &mut FixtureRng, n: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, n, n);
    (&g + g.adjoint()).unscale(2.0)
}

/// Idempotent of rank `k` with random range and random complementary kernel.
pub fn random_idempotent(rng: &mut FixtureRng, n: usize, k: usize) -> ComplexMatrix {
    // Q = X diag(I_k, 0) X^{-1} for a well-conditioned random X
    let g = gaussian_matrix(rng, n, n).scale(0.5) + identity(n);
    let inv = g.clone().try_inverse().expect("random matrix invertible");
    let mut d = vec![0.0; n];
    d[..k].iter_mut().for_each(|v| *v = 1.0);
    &g * from_real_diagonal(&d) * inv
}

/// Contraction `Y diag(s) W*` with prescribed singular values.
pub fn contraction_with_singular_values(rng: &mut FixtureRng, s: &[f64]) -> ComplexMatrix {
    let n = s.len();
    let y = haar_unitary(rng, n);
    let w = haar_unitary(rng, n);
    &y * from_real_diagonal(s) * w.adjoint()
}

/// Random contraction of size `n` whose singular values are drawn from
/// `(0, 1)`, with occasional exact zeros and ones mixed in.
pub fn random_contraction(rng: &mut FixtureRng, n: usize) -> ComplexMatrix {
    let s: Vec<f64> = (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            if u < 0.15 {
                0.0
            } else if u < 0.3 {
                1.0
            } else {
                rng.random_range(0.02..0.98)
            }
        })
        .collect();
    contraction_with_singular_values(rng, &s)
}

/// Principal angles for a generic block, kept away from 0 and π/2.
pub fn random_angles(rng: &mut FixtureRng, g: usize) -> Vec<f64> {
    (0..g)
        .map(|_| rng.random_range(0.05..(std::f64::consts::FRAC_PI_2 - 0.05)))
        .collect()
}

/// Block sizes of a two-projection fixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairLayout {
    pub h11: usize,
    pub h00: usize,
    pub h10: usize,
    pub h01: usize,
    pub generic: usize,
}

impl PairLayout {
    pub fn ambient_dim(&self) -> usize {
        self.h11 + self.h00 + self.h10 + self.h01 + 2 * self.generic
    }
}

/// A random layout of ambient dimension `n` with every kind of block possible.
pub fn random_layout(rng: &mut FixtureRng, n: usize) -> PairLayout {
    let generic = rng.random_range(0..=n / 2);
    let mut rest = n - 2 * generic;
    let mut take = |rng: &mut FixtureRng| {
        let k = if rest == 0 { 0 } else { rng.random_range(0..=rest.min(3)) };
        rest -= k;
        k
    };
    let h11 = take(rng);
    let h10 = take(rng);
    let h01 = take(rng);
    let h00 = rest;
    PairLayout {
        h11,
        h00,
        h10,
        h01,
        generic,
    }
}

/// Frames `(R(P), R(Q))` realising `layout` with the given generic angles,
/// rotated by a Haar unitary.
pub fn structured_pair(
    rng: &mut FixtureRng,
    layout: PairLayout,
    angles: &[f64],
) -> (Frame, Frame) {
    assert_eq!(angles.len(), layout.generic);
    let n = layout.ambient_dim();
    let u = haar_unitary(rng, n);
    let g = layout.generic;
    // coordinates: [h11 | h00 | h10 | h01 | generic-first | generic-second]
    let o11 = 0;
    let o10 = layout.h11 + layout.h00;
    let o01 = o10 + layout.h10;
    let og1 = o01 + layout.h01;
    let og2 = og1 + g;
    let p_rank = layout.h11 + layout.h10 + g;
    let q_rank = layout.h11 + layout.h01 + g;
    let mut p = ComplexMatrix::zeros(n, p_rank);
    let mut q = ComplexMatrix::zeros(n, q_rank);
    let one = c64(1.0, 0.0);
    let mut cp = 0;
    let mut cq = 0;
    for i in 0..layout.h11 {
        p[(o11 + i, cp)] = one;
        q[(o11 + i, cq)] = one;
        cp += 1;
        cq += 1;
    }
    for i in 0..layout.h10 {
        p[(o10 + i, cp)] = one;
        cp += 1;
    }
    for i in 0..layout.h01 {
        q[(o01 + i, cq)] = one;
        cq += 1;
    }
    for (i, &x) in angles.iter().enumerate() {
        p[(og1 + i, cp)] = one;
        q[(og1 + i, cq)] = c64(x.cos(), 0.0);
        q[(og2 + i, cq)] = c64(x.sin(), 0.0);
        cp += 1;
        cq += 1;
    }
    (
        Frame::new_unchecked(&u * p),
        Frame::new_unchecked(&u * q),
    )
}

/// A random pair of subspaces in `C^n`: either two independent uniform
/// subspaces or a structured pair with nontrivial corner blocks.
pub fn random_pair(rng: &mut FixtureRng, n: usize) -> (Frame, Frame) {
    if rng.random_bool(0.5) {
        let p = rng.random_range(1..n);
        let q = rng.random_range(1..n);
        (random_frame(rng, n, p), random_frame(rng, n, q))
    } else {
        let layout = random_layout(rng, n);
        let angles = random_angles(rng, layout.generic);
        structured_pair(rng, layout, &angles)
    }
}

/// `count` points in the disk `|z| < radius` with pairwise distances above
/// `separation`, drawn by rejection.
pub fn disk_points(
    rng: &mut FixtureRng,
    count: usize,
    radius: f64,
    separation: f64,
) -> Vec<Complex64> {
    loop {
        let pts: Vec<Complex64> = (0..count)
            .map(|_| {
                Complex64::from_polar(
                    rng.random_range(0.05..radius),
                    rng.random_range(0.0..std::f64::consts::TAU),
                )
            })
            .collect();
        let separated = pts
            .iter()
            .enumerate()
            .all(|(i, a)| pts[i + 1..].iter().all(|b| (a - b).norm() > separation));
        if separated {
            return pts;
        }
    }
}
