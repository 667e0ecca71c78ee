//! Step-2 rough path lifts of fractional Sobolev paths.
//!
//! A sampled path `X: [0, 1] → R^d` with `W^α_p` regularity, `1/3 < α < 1/2`,
//! is lifted to a `G²(R^d)`-valued path by reconstructing the products
//! `X^i · Ẋ^j` from Daubechies wavelet coefficients.

pub mod cli;
pub mod error;
pub mod extension;
pub mod generate;
pub mod group;
pub mod io;
pub mod lift;
pub mod metrics;
pub mod params;
pub mod path;
pub mod quadrature;
pub mod sobolev;
pub mod wavelet;

pub use error::{Error, Result};
pub use params::{validate_params, SobolevParams};
pub use path::SampledPath;
