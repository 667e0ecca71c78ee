//! Wavelet reconstruction of `Y · Ẇ` and evaluation of its primitive.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lift::model::{ModelledDistribution, SobolevModel};
use crate::path::SampledPath;
use crate::wavelet::{BasisKind, CoefficientPyramid, Kernel, WaveletFamily};

/// Running integral of the piecewise-linear interpolant, continued as constants.
#[derive(Debug, Clone)]
pub(crate) struct RunningIntegral<'a> {
    t0: f64,
    per_unit: f64,
    vals: &'a [f64],
    prefix: Vec<f64>,
}

impl<'a> RunningIntegral<'a> {
    pub fn new(path: &'a SampledPath) -> Self {
        let vals = path.values();
        let h = path.step();
        let mut prefix = Vec::with_capacity(vals.len());
        let mut acc = 0.0;
        prefix.push(0.0);
        for w in vals.windows(2) {
            acc += 0.5 * h * (w[0] + w[1]);
            prefix.push(acc);
        }
        Self {
            t0: path.t0(),
            per_unit: path.samples_per_unit() as f64,
            vals,
            prefix,
        }
    }

    /// `∫_{t0}^t Y`.
    pub fn at(&self, t: f64) -> f64 {
        let last = self.vals.len() - 1;
        let u = (t - self.t0) * self.per_unit;
        if u <= 0.0 {
            return u / self.per_unit * self.vals[0];
        }
        if u >= last as f64 {
            return self.prefix[last] + (u - last as f64) / self.per_unit * self.vals[last];
        }
        let i = u as usize;
        let th = u - i as f64;
        let (a, b) = (self.vals[i], self.vals[i + 1]);
        self.prefix[i] + (th * a + 0.5 * th * th * (b - a)) / self.per_unit
    }

    /// Mean of `Y` over `[x - r, x + r]`.
    pub fn ball_average(&self, x: f64, r: f64) -> f64 {
        (self.at(x + r) - self.at(x - r)) / (2.0 * r)
    }
}

/// Coefficients of the reconstruction `ℛ(Y·Ẇ)` truncated at level `n`:
/// `a^n_x = Ȳⁿ(x) ⟨Ẇ, ψ^n_x⟩` and `b_k = Ȳ⁰(k) ⟨Ẇ, φ_k⟩`, where `Ȳⁿ(x)` is the
/// mean of `Y` over the ball `B(x, 2^{-n})`.
pub fn reconstruct_coeffs(
    md: &ModelledDistribution,
    model: &SobolevModel,
    _fam: &WaveletFamily,
    n: u32,
) -> Result<CoefficientPyramid> {
    md.path().check_same_grid(model.path())?;
    if n > model.truncation() {
        return Err(Error::InvalidInput(format!(
            "reconstruction level {n} exceeds the model truncation {}",
            model.truncation()
        )));
    }
    let avg = RunningIntegral::new(md.path());
    Ok(model.deriv_pyramid().truncated(n).map(|kind, idx, c| {
        let r = match kind {
            BasisKind::Father => 1.0,
            BasisKind::Mother => 1.0 / (1u64 << idx.n) as f64,
        };
        avg.ball_average(idx.position(), r) * c
    }))
}

/// `∫_{-∞}^t ℛ` for the distribution with coefficients `pyr`.
///
/// Mother terms with support entirely left of `t` are skipped; their
/// antiderivative has vanished at the right end of the support.
pub fn primitive_at(pyr: &CoefficientPyramid, fam: &WaveletFamily, t: f64) -> f64 {
    let (lo, hi) = fam.support();
    let base = pyr.base();
    let mut acc = 0.0;
    for (k, b) in base.iter() {
        if t - k as f64 > lo {
            acc += b * fam.eval(Kernel::IntPhi, t - k as f64);
        }
    }
    for lvl in pyr.levels() {
        let scale = (1u64 << lvl.n()) as f64;
        let u = scale * t;
        let k_lo = ((u - hi).ceil() as i64).max(lvl.k_min());
        let k_hi = ((u - lo).floor() as i64).min(lvl.k_max());
        let mut s = 0.0;
        for k in k_lo..=k_hi {
            s += lvl.get(k) * fam.eval(Kernel::IntPsi, u - k as f64);
        }
        acc += s / scale.sqrt();
    }
    acc
}

/// `Z_{s,t} = ⟨ℛ, 1_{[s,t]}⟩`.
pub fn primitive_increment(pyr: &CoefficientPyramid, fam: &WaveletFamily, s: f64, t: f64) -> f64 {
    if s == t {
        return 0.0;
    }
    primitive_at(pyr, fam, t) - primitive_at(pyr, fam, s)
}

/// Primitive evaluated at every grid point of `path` inside `[a, b]`.
pub(crate) fn primitive_profile(
    pyr: &CoefficientPyramid,
    fam: &WaveletFamily,
    path: &SampledPath,
    (i0, i1): (usize, usize),
) -> Vec<f64> {
    (i0..=i1)
        .into_par_iter()
        .map(|i| primitive_at(pyr, fam, path.time(i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn running_integral_of_linear() {
        let p = SampledPath::from_scalar_fn(0.0, 1.0, 4, |t| 2.0 * t).unwrap();
        let r = RunningIntegral::new(&p);
        assert!((r.at(0.3) - 0.09).abs() < 1e-15);
        assert!((r.at(1.5) - (1.0 + 0.5 * 2.0)).abs() < 1e-15);
        assert!((r.at(-0.5)).abs() < 1e-15);
        assert!((r.ball_average(0.5, 0.25) - 1.0).abs() < 1e-14);
    }
}
