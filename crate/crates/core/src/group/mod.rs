//! The step-2 free nilpotent group `G²(R^d)` and paths in it.

mod element;
mod path;
mod signature;

pub use element::{homogeneous_norm, increment, inverse, tensor_mul, GroupElement, MEMBERSHIP_TOL};
pub use path::{DefectReport, GroupPath};
pub use signature::{segment_signature, signature2_pl};

pub(crate) use element::norm_unchecked;
