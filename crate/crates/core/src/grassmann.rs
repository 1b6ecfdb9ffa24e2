//! Minimal geodesics `δ(t) = e^{itZ} L0` of the Grassmann manifold, the
//! exponent `Z` and the Davis symmetry of a pair in generic position.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::linalg::{
    block2x2, c64, commutator, frobenius_norm, hermitian_eig, identity,
    polar, spectral_norm, zeros, ComplexMatrix, Frame, HermitianEigen, ToleranceConfig,
};
use crate::two_projections::{halmos_decompose, HalmosModel};

/// Corner dimensions deciding whether a minimal geodesic exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeodesicExistence {
    pub exists: bool,
    /// `dim(L0 ∩ L⊥)`
    pub dim10: usize,
    /// `dim(L0⊥ ∩ L)`
    pub dim01: usize,
}

pub fn minimal_geodesic_exists(
    l0: &Frame,
    l: &Frame,
    cfg: &ToleranceConfig,
) -> Result<GeodesicExistence> {
    let model = halmos_decompose(l0, l, cfg)?;
    Ok(existence_of(&model))
}

fn existence_of(model: &HalmosModel) -> GeodesicExistence {
    let dim10 = model.h10.rank();
    let dim01 = model.h01.rank();
    GeodesicExistence {
        exists: dim10 == dim01,
        dim10,
        dim01,
    }
}

/// Exponent of a minimal geodesic from `L0` to `L`.
#[derive(Debug, Clone)]
pub struct GeodesicData {
    /// Hermitian, co-diagonal with respect to `L0 ⊕ L0⊥`.
    pub z: ComplexMatrix,
    pub model: HalmosModel,
    /// Orthonormal basis `μ` of `L0 ∩ L⊥`.
    pub corner_source: Frame,
    /// Orthonormal basis `ν = W μ` of `L0⊥ ∩ L`.
    pub corner_target: Frame,
    /// `‖Z‖₂`, in `[0, π/2]`.
    pub distance: f64,
    /// No corners and all angles below `π/2`. Reported, not certified.
    pub unique: bool,
    z_eigen: HermitianEigen,
}

impl GeodesicData {
    /// `X` on the generic part, in model coordinates.
    pub fn x(&self) -> ComplexMatrix {
        self.model.x()
    }

    /// The partial isometry `W = Σ ν_k μ_k*`.
    pub fn w(&self) -> ComplexMatrix {
        self.corner_target.basis() * self.corner_source.basis().adjoint()
    }

    /// `e^{itZ}`.
    pub fn exp_itz(&self, t: f64) -> ComplexMatrix {
        self.z_eigen
            .apply(|l| num_complex::Complex64::from_polar(1.0, t * l))
    }

    /// Generic block `Z' = [[0, iX], [−iX, 0]]` in model coordinates.
    pub fn z_model(&self) -> ComplexMatrix {
        let g = self.model.generic_dim();
        let ix = self.x() * c64(0.0, 1.0);
        block2x2(&zeros(g, g), &ix, &(-&ix), &zeros(g, g))
    }

    /// `e^{iZ'} = [[C, −S], [S, C]]` in model coordinates.
    pub fn exp_iz_model(&self) -> ComplexMatrix {
        let c = self.model.cos();
        let s = self.model.sin();
        block2x2(&c, &(-&s), &s, &c)
    }
}

/// Builds `Z` from the Halmos model of `(L0, L)`.
pub fn geodesic_exponent(l0: &Frame, l: &Frame, cfg: &ToleranceConfig) -> Result<GeodesicData> {
    let model = halmos_decompose(l0, l, cfg)?;
    let ex = existence_of(&model);
    if !ex.exists {
        return Err(Error::NoGeodesic {
            dim10: ex.dim10,
            dim01: ex.dim01,
        });
    }
    let n = model.ambient_dim();
    let j = &model.generic_frame;
    let g = model.generic_dim();
    let ix = model.x() * c64(0.0, 1.0);
    let z_generic = block2x2(&zeros(g, g), &ix, &(-&ix), &zeros(g, g));
    let mut z = j * z_generic * j.adjoint();

    // μ_k ↦ ν_k rotated through π/2
    let mu = model.h10.clone();
    let nu = model.h01.clone();
    if !mu.is_empty() {
        let a = mu.basis() * nu.basis().adjoint();
        z += (&a - a.adjoint()) * c64(0.0, FRAC_PI_2);
    }
    let z = (&z + z.adjoint()).unscale(2.0);
    let z_eigen = hermitian_eig(&z)?;

    let max_angle = model.angles.iter().copied().fold(0.0, f64::max);
    let distance = if mu.is_empty() {
        max_angle
    } else {
        max_angle.max(FRAC_PI_2)
    };
    let unique = mu.is_empty() && max_angle < FRAC_PI_2 - cfg.rank_tol;
    debug_assert_eq!(n, z.nrows());
    Ok(GeodesicData {
        z,
        model,
        corner_source: mu,
        corner_target: nu,
        distance,
        unique,
        z_eigen,
    })
}

/// `δ(t) = e^{itZ} L0`.
pub fn geodesic_point(g: &GeodesicData, l0: &Frame, t: f64) -> Frame {
    l0.transform(&g.exp_itz(t))
}

/// Geodesic distance `‖Z‖₂` between `L0` and `L`.
pub fn geodesic_distance(l0: &Frame, l: &Frame, cfg: &ToleranceConfig) -> Result<f64> {
    Ok(geodesic_exponent(l0, l, cfg)?.distance)
}

/// The Davis symmetry on the generic part and its defects.
#[derive(Debug, Clone)]
pub struct DavisSymmetry {
    /// `V` in model coordinates (`2g × 2g`).
    pub v_model: ComplexMatrix,
    /// `J V J*` on the ambient space (zero off the generic part).
    pub v: ComplexMatrix,
    /// `‖V − [[C, S], [S, −C]]‖`.
    pub closed_form_defect: f64,
    /// `max(‖V² − I‖, ‖V − V*‖)`.
    pub involution_defect: f64,
    /// `‖V P0' V − P'‖`.
    pub mapping_defect: f64,
    /// `‖V − e^{iZ'}(2P0' − I)‖`.
    pub exponential_defect: f64,
    /// `‖[e^{iZ'}, K]‖` with `K = [P0', P']`.
    pub commutation_defect: f64,
    /// `‖VK + KV‖`.
    pub anticommutation_defect: f64,
}

impl DavisSymmetry {
    pub fn max_defect(&self) -> f64 {
        [
            self.closed_form_defect,
            self.involution_defect,
            self.mapping_defect,
            self.exponential_defect,
            self.commutation_defect,
            self.anticommutation_defect,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Unitary part of the polar decomposition of `P0' + P' − I` on the generic
/// part of `(L0, L)`.
pub fn davis_symmetry(l0: &Frame, l: &Frame, cfg: &ToleranceConfig) -> Result<DavisSymmetry> {
    let model = halmos_decompose(l0, l, cfg)?;
    let g = model.generic_dim();
    if g == 0 {
        return Err(Error::EmptyGenericPart);
    }
    let j = &model.generic_frame;
    let n = model.ambient_dim();
    let sum = l0.projector() + l.projector() - identity(n);
    let restricted = j.adjoint() * sum * j;
    let v_model = polar(&restricted, cfg)?.unitary;

    let c = model.cos();
    let s = model.sin();
    let closed = block2x2(&c, &s, &s, &(-&c));
    let p0 = model.p_model();
    let p = model.q_model();
    let id = identity(2 * g);
    let exp_iz = block2x2(&c, &(-&s), &s, &c);
    let k = commutator(&p0, &p);

    let closed_form_defect = frobenius_norm(&(&v_model - &closed));
    let involution_defect = frobenius_norm(&(&v_model * &v_model - &id))
        .max(frobenius_norm(&(&v_model - v_model.adjoint())));
    let mapping_defect = frobenius_norm(&(&v_model * &p0 * &v_model - &p));
    let exponential_defect =
        frobenius_norm(&(&v_model - &exp_iz * (p0.scale(2.0) - &id)));
    let commutation_defect = frobenius_norm(&commutator(&exp_iz, &k));
    let anticommutation_defect = frobenius_norm(&(&v_model * &k + &k * &v_model));
    let v = j * &v_model * j.adjoint();
    Ok(DavisSymmetry {
        v_model,
        v,
        closed_form_defect,
        involution_defect,
        mapping_defect,
        exponential_defect,
        commutation_defect,
        anticommutation_defect,
    })
}

/// `‖[e^{itZ}, [P0, P_{δ(t)}]]‖` for each `t`.
pub fn geodesic_commutation_defects(g: &GeodesicData, l0: &Frame, ts: &[f64]) -> Vec<f64> {
    let p0 = l0.projector();
    ts.iter()
        .map(|&t| {
            let e = g.exp_itz(t);
            let pt = l0.transform(&e).projector();
            frobenius_norm(&commutator(&e, &commutator(&p0, &pt)))
        })
        .collect()
}

/// `max(‖P0 Z P0‖, ‖P0⊥ Z P0⊥‖)`.
pub fn codiagonality_defect(g: &GeodesicData, l0: &Frame) -> f64 {
    let n = l0.ambient_dim();
    let p0 = l0.projector();
    let q0 = identity(n) - &p0;
    spectral_norm(&(&p0 * &g.z * &p0)).max(spectral_norm(&(&q0 * &g.z * &q0)))
}

/// Largest principal angle between two subspaces of equal dimension.
pub fn largest_principal_angle(a: &Frame, b: &Frame) -> f64 {
    let s = crate::linalg::singular_values(&(a.basis().adjoint() * b.basis()));
    s.iter()
        .map(|v| v.clamp(-1.0, 1.0).acos())
        .fold(0.0, f64::max)
}
