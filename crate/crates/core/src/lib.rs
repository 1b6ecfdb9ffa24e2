//! Finite-dimensional numerics for pairs `(U, L0)` of a unitary operator and a
//! subspace whose compression `P0 U |L0` has a singular value decomposition.
//!
//! The crate is organised around the objects that appear in that theory:
//!
//! * [`linalg`]: dense complex substrate (frames, SVD, Hermitian spectra,
//!   polar decomposition, Matrix Market I/O).
//! * [`two_projections`]: Halmos model of two orthogonal projections, the
//!   spectral relations between `PQ`, `P - Q` and `[P, Q]`, angle recovery.
//! * [`grassmann`]: minimal geodesics `t ↦ exp(itZ) L0` and the Davis symmetry.
//! * [`oblique`]: idempotents, the reflection polar factor `ρ_Q` and the
//!   corner-block singular value transfer.
//! * [`dilations`]: Halmos and Sz.-Nagy–Foias unitary dilations of contractions.
//! * [`hardy`]: truncated Hardy-space and Fourier examples (Toeplitz symbols,
//!   Blaschke products, model spaces, time–band limiting, half-line Fourier).

pub mod dilations;
pub mod error;
pub mod grassmann;
pub mod hardy;
pub mod linalg;
pub mod oblique;
pub mod random;
pub mod two_projections;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Frame, SchmidtSystem, ToleranceConfig};
pub use num_complex::Complex64;
