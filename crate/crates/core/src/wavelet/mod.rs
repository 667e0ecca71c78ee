//! Daubechies wavelet tables, pairings and coefficient norms.

mod besov;
mod family;
mod filters;
mod pairing;

use std::sync::OnceLock;

pub use besov::{besov_norm_coeffs, lp_n_norm, CoefficientPyramid, PyramidLevel};
pub use family::{
    build_family, BasisKind, Kernel, WaveletFamily, DEFAULT_REFINE_DEPTH, MAX_REFINE_DEPTH,
    MIN_REFINE_DEPTH,
};
pub use filters::WaveletName;
pub use pairing::{admissible_range, pair_derivative, pair_function, DyadicIndex};

/// Shared DB8 family at the default refine depth.
pub fn default_family() -> &'static WaveletFamily {
    static FAMILY: OnceLock<WaveletFamily> = OnceLock::new();
    FAMILY.get_or_init(|| {
        build_family(WaveletName::Db8, DEFAULT_REFINE_DEPTH)
            .expect("DB8 cascade converges at the default depth")
    })
}
