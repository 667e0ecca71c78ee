//! Regularity and integrability parameters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Validated `(alpha, p)` pair with `1/3 < alpha < 1/2` and `p > 1/alpha`.
///
/// `gamma = 2 alpha - 1` is the (negative) regularity of the modelled
/// distribution that produces the second level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SobolevParams {
    alpha: f64,
    p: f64,
    gamma: f64,
}

impl SobolevParams {
    pub fn new(alpha: f64, p: f64) -> Result<Self> {
        validate_params(alpha, p)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Exponent `alpha * p + 1` of the singular kernel `|t - s|^{-(alpha p + 1)}`.
    pub fn kernel_exponent(&self) -> f64 {
        self.alpha * self.p + 1.0
    }

    /// `|alpha - 1 - 1/p|`, the lower bound on the wavelet regularity order.
    pub fn required_wavelet_regularity(&self) -> f64 {
        (self.alpha - 1.0 - 1.0 / self.p).abs()
    }
}

pub fn validate_params(alpha: f64, p: f64) -> Result<SobolevParams> {
    if alpha.is_nan() || p.is_nan() {
        return Err(Error::InvalidInput("alpha and p must be numbers".into()));
    }
    if !(alpha > 1.0 / 3.0 && alpha < 0.5) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if p.is_infinite() && p > 0.0 {
        return Err(Error::InfiniteP);
    }
    let min = 1.0 / alpha;
    if p.is_nan() || p <= min {
        return Err(Error::IntegrabilityTooLow { p, min });
    }
    Ok(SobolevParams {
        alpha,
        p,
        gamma: 2.0 * alpha - 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn accepts_interior_point() {
        let params = validate_params(0.4, 4.0).unwrap();
        assert!((params.gamma() - (-0.2)).abs() < 1e-15);
        assert_eq!(params.kernel_exponent(), 0.4 * 4.0 + 1.0);
    }

    #[test]
    fn rejects_low_integrability() {
        assert!(matches!(
            validate_params(0.4, 2.0),
            Err(Error::IntegrabilityTooLow { .. })
        ));
        // p = 1/alpha exactly is excluded
        assert!(matches!(
            validate_params(0.4, 2.5),
            Err(Error::IntegrabilityTooLow { .. })
        ));
    }

    #[test]
    fn rejects_alpha_boundaries() {
        assert!(matches!(
            validate_params(0.5, 8.0),
            Err(Error::AlphaOutOfRange(_))
        ));
        assert!(matches!(
            validate_params(1.0 / 3.0, 8.0),
            Err(Error::AlphaOutOfRange(_))
        ));
        assert!(matches!(
            validate_params(0.2, 8.0),
            Err(Error::AlphaOutOfRange(_))
        ));
    }

    #[test]
    fn rejects_infinite_p() {
        assert!(matches!(
            validate_params(0.4, f64::INFINITY),
            Err(Error::InfiniteP)
        ));
    }

    proptest! {
        #[test]
        fn acceptance_region_is_exact(alpha in 0.2f64..0.6, p in 0.5f64..12.0) {
            let expected = alpha > 1.0 / 3.0 && alpha < 0.5 && p > 1.0 / alpha;
            prop_assert_eq!(validate_params(alpha, p).is_ok(), expected);
        }
    }
}
