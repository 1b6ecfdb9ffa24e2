//! Finite truncations of Hardy-space examples: Toeplitz and Hankel blocks,
//! Blaschke products, Szegő kernels and model spaces, the symmetric subspace
//! of the bilateral shift, rational symbols and Fourier concentration.

mod blaschke;
mod fourier;
mod shift;
mod trig;

pub use blaschke::{
    gram_route_matrix, gram_schmidt_overlap, gram_schmidt_pair, kernel_inner, model_space_frame,
    rational_symbol_singulars, truncated_shift_singulars, BlaschkeData, ModelSpace,
    RationalSingulars, ShiftCompression, SzegoKernelSet,
};
pub use fourier::{
    chi_interval_norm, fourier_halfline, hermite_functions, prolate_compression, HalflineReport,
    ProlateReport, HALFLINE_DEFAULT_GRID, HALFLINE_MAX_K,
};
pub use shift::{symmetric_subspace_shift, SymmetricShiftReport};
pub use trig::{toeplitz_compression, ToeplitzCompression, TrigTruncation};
