//! Reconstruction-based lift of a sampled path to a `G²`-valued path.
//!
//! For scalar components `Y, W` the distribution `Y·Ẇ` is reconstructed from
//! wavelet coefficients, integrated to a primitive `Z`, and turned into
//! `𝕏_{s,t} = Z_{s,t} - Y_s W_{s,t}`. A symmetric correction then places the
//! result in `G²`.

mod assemble;
mod model;
mod reconstruct;
mod second_level;

pub use assemble::{
    assemble_lift, lift_path, reconstruction_bound_diagnostic, rough_sobolev_norm,
    rough_sobolev_norm_with, BoundDiagnostic, Lift, Lifter, ASSEMBLY_TOL,
};
pub use model::{build_model, md_norm, md_norm_with, ModelledDistribution, SobolevModel};
pub use reconstruct::{primitive_at, primitive_increment, reconstruct_coeffs};
pub use second_level::{second_level, SecondLevel, BASE_INTERVAL};
