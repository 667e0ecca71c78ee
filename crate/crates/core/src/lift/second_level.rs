use crate::error::{Error, Result};
use crate::extension::extend_path;
use crate::lift::model::{build_model, ModelledDistribution, SobolevModel};
use crate::lift::reconstruct::{primitive_profile, reconstruct_coeffs};
use crate::params::SobolevParams;
use crate::path::SampledPath;
use crate::wavelet::WaveletFamily;

/// Interval on which lifts are evaluated.
pub const BASE_INTERVAL: (f64, f64) = (0.0, 1.0);

/// One entry `𝕏^{ij}_{s,t} = Z_{s,t} - Y_s W_{s,t}` on the grid of `[0, 1]`.
///
/// Only the primitive `Z` and the two scalar paths are stored; values for a
/// pair `(s, t)` are formed on demand.
#[derive(Debug, Clone)]
pub struct SecondLevel {
    truncation: u32,
    level: u32,
    z: Vec<f64>,
    y: Vec<f64>,
    w: Vec<f64>,
}

pub(crate) fn base_indices(path: &SampledPath) -> Result<(usize, usize)> {
    match (
        path.index_of(BASE_INTERVAL.0),
        path.index_of(BASE_INTERVAL.1),
    ) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::GridMismatch(format!(
            "window [{}, {}] does not contain [0, 1] on its grid",
            path.t0(),
            path.t1()
        ))),
    }
}

impl SecondLevel {
    /// Builds the entry from a modelled distribution `Y·Ẇ` and the model of `W`.
    pub fn from_parts(
        md: &ModelledDistribution,
        model: &SobolevModel,
        fam: &WaveletFamily,
        n: u32,
    ) -> Result<Self> {
        let pyr = reconstruct_coeffs(md, model, fam, n)?;
        let range = base_indices(model.path())?;
        let z = primitive_profile(&pyr, fam, model.path(), range);
        let slice = |p: &SampledPath| p.values()[range.0..=range.1].to_vec();
        Ok(Self {
            truncation: n,
            level: model.path().level(),
            z,
            y: slice(md.path()),
            w: slice(model.path()),
        })
    }

    pub fn truncation_level(&self) -> u32 {
        self.truncation
    }

    pub fn grid_level(&self) -> u32 {
        self.level
    }

    /// Number of grid points on `[0, 1]`.
    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    /// `Z_{s,t}` for grid indices `s, t` of `[0, 1]`.
    pub fn primitive(&self, s: usize, t: usize) -> f64 {
        self.z[t] - self.z[s]
    }

    /// `𝕏_{s,t}` for grid indices `s, t` of `[0, 1]`.
    pub fn value(&self, s: usize, t: usize) -> f64 {
        self.primitive(s, t) - self.y[s] * (self.w[t] - self.w[s])
    }

    /// `𝕏_{s,u} - 𝕏_{s,t} - 𝕏_{t,u} - Y_{s,t} W_{t,u}`, zero up to rounding.
    pub fn chen_defect(&self, s: usize, t: usize, u: usize) -> f64 {
        let lhs = self.value(s, u) - self.value(s, t) - self.value(t, u);
        lhs - (self.y[t] - self.y[s]) * (self.w[u] - self.w[t])
    }

    /// `max_t |𝕏_{0,t}|`.
    pub fn max_abs_from_origin(&self) -> f64 {
        (0..self.len()).fold(0.0f64, |m, t| m.max(self.value(0, t).abs()))
    }

    /// `max |𝕏_{s,t}|` over pairs of every `stride`-th grid point.
    pub fn max_abs(&self, stride: usize) -> f64 {
        let mut worst = 0.0f64;
        for s in (0..self.len()).step_by(stride.max(1)) {
            for t in (s..self.len()).step_by(stride.max(1)) {
                worst = worst.max(self.value(s, t).abs());
            }
        }
        worst
    }
}

/// Second-level entry for scalar paths `Y, W` on `[0, 1]`; both are extended
/// to `[-1, 2]` first.
pub fn second_level(
    y: &SampledPath,
    w: &SampledPath,
    params: &SobolevParams,
    fam: &WaveletFamily,
    n: u32,
) -> Result<SecondLevel> {
    y.check_same_grid(w)?;
    let (ye, we) = (extend_path(y)?, extend_path(w)?);
    let model = build_model(&we, params, fam, n)?;
    let md = ModelledDistribution::new(&ye, params)?;
    SecondLevel::from_parts(&md, &model, fam, n)
}
