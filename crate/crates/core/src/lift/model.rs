//! The model built from a driving path and the modelled distribution `Y · Ẇ`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::SobolevParams;
use crate::path::SampledPath;
use crate::quadrature::{cell_centers, default_quad_level, Pow};
use crate::wavelet::{besov_norm_coeffs, CoefficientPyramid, WaveletFamily};

/// Model attached to a scalar path `W`: the coefficients `⟨Ẇ, ψ^n_x⟩`,
/// `⟨Ẇ, φ_x⟩` and the norm of `Ẇ` at smoothness `alpha - 1`.
///
/// The re-expansion part is the identity and carries no data.
#[derive(Debug, Clone)]
pub struct SobolevModel {
    w: SampledPath,
    deriv: CoefficientPyramid,
    pi_norm: f64,
    params: SobolevParams,
}

pub fn build_model(
    w: &SampledPath,
    params: &SobolevParams,
    fam: &WaveletFamily,
    n: u32,
) -> Result<SobolevModel> {
    let need = params.required_wavelet_regularity();
    if fam.r_reg() <= need {
        return Err(Error::InvalidInput(format!(
            "{} regularity {} does not exceed {need}",
            fam.name(),
            fam.r_reg()
        )));
    }
    let deriv = CoefficientPyramid::of_derivative(w, fam, n)?;
    let pi_norm = besov_norm_coeffs(&deriv, params.alpha() - 1.0, params.p());
    Ok(SobolevModel {
        w: w.clone(),
        deriv,
        pi_norm,
        params: *params,
    })
}

impl SobolevModel {
    pub fn path(&self) -> &SampledPath {
        &self.w
    }

    pub fn deriv_pyramid(&self) -> &CoefficientPyramid {
        &self.deriv
    }

    pub fn pi_norm(&self) -> f64 {
        self.pi_norm
    }

    pub fn params(&self) -> &SobolevParams {
        &self.params
    }

    pub fn truncation(&self) -> u32 {
        self.deriv.max_level()
    }
}

/// The modelled distribution `x ↦ Y_x · Ẇ`, stored through its coefficient path `Y`.
#[derive(Debug, Clone)]
pub struct ModelledDistribution {
    y: SampledPath,
    md_norm: f64,
}

impl ModelledDistribution {
    pub fn new(y: &SampledPath, params: &SobolevParams) -> Result<Self> {
        Ok(Self {
            y: y.clone(),
            md_norm: md_norm(y, params)?,
        })
    }

    pub fn path(&self) -> &SampledPath {
        &self.y
    }

    pub fn norm(&self) -> f64 {
        self.md_norm
    }
}

/// `‖Y‖_{L^p} + (∫_{|h|≤1} ‖Y(·+h) - Y‖^p_{L^p} / |h|^{alpha p + 1} dh)^{1/p}`.
///
/// The outer integral runs over the sampling window; `Y` is continued as a
/// constant beyond it.
pub fn md_norm_with(y: &SampledPath, params: &SobolevParams, q: u32) -> Result<f64> {
    if y.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: y.dim(),
        });
    }
    if y.len() < 4 {
        return Err(Error::DegenerateGrid(y.len()));
    }
    let p = params.p();
    let pow = Pow::new(p);
    let nodes = cell_centers(y, q)?;
    let pad = 1usize << q;
    let h = 1.0 / pad as f64;
    let first = y.value(0, 0);
    let last = y.value(y.len() - 1, 0);
    let count = nodes.len();
    let ext = |j: isize| -> f64 {
        if j < 0 {
            first
        } else if j as usize >= count {
            last
        } else {
            nodes[j as usize]
        }
    };
    let exponent = params.kernel_exponent();
    let w: Vec<f64> = (0..=pad)
        .map(|l| {
            if l == 0 {
                0.0
            } else {
                h * h / (l as f64 * h).powf(exponent)
            }
        })
        .collect();
    let rows: Vec<f64> = (0..count)
        .into_par_iter()
        .map(|i| {
            let v = nodes[i];
            (1..=pad)
                .map(|l| {
                    let a = pow.of((ext(i as isize + l as isize) - v).abs());
                    let b = pow.of((ext(i as isize - l as isize) - v).abs());
                    w[l] * (a + b)
                })
                .sum::<f64>()
        })
        .collect();
    let translation = rows.iter().sum::<f64>().powf(1.0 / p);
    let lp = nodes
        .iter()
        .map(|v| h * pow.of(v.abs()))
        .sum::<f64>()
        .powf(1.0 / p);
    Ok(lp + translation)
}

pub fn md_norm(y: &SampledPath, params: &SobolevParams) -> Result<f64> {
    md_norm_with(y, params, default_quad_level(y.level()))
}
