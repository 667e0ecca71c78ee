//! Coefficient pyramids and their Besov-type norms.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::path::SampledPath;
use crate::wavelet::family::{BasisKind, WaveletFamily};
use crate::wavelet::pairing::{
    admissible_range, pair_derivative_raw, pair_function_raw, DyadicIndex, ScalarGrid,
};

/// Coefficients at one level over the contiguous translation range starting at `k_min`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PyramidLevel {
    n: u32,
    k_min: i64,
    coeffs: Vec<f64>,
}

impl PyramidLevel {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k_min(&self) -> i64 {
        self.k_min
    }

    pub fn k_max(&self) -> i64 {
        self.k_min + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn get(&self, k: i64) -> f64 {
        usize::try_from(k - self.k_min)
            .ok()
            .and_then(|i| self.coeffs.get(i).copied())
            .unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.k_min + i as i64, *c))
    }
}

/// Father coefficients `b⁰_k` and mother coefficients `a^n_k` for `n = 0..=N`
/// on the translations admissible for `window`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientPyramid {
    window: (f64, f64),
    base: PyramidLevel,
    levels: Vec<PyramidLevel>,
}

fn fill_level<F>(fam: &WaveletFamily, n: u32, window: (f64, f64), f: F) -> PyramidLevel
where
    F: Fn(DyadicIndex) -> f64 + Sync,
{
    let (k_min, k_max) = admissible_range(fam, n, window);
    let coeffs = (k_min..=k_max)
        .into_par_iter()
        .map(|k| f(DyadicIndex::new(n, k)))
        .collect();
    PyramidLevel { n, k_min, coeffs }
}

impl CoefficientPyramid {
    /// Builds a pyramid by evaluating `f(kind, index)` at every admissible index.
    pub fn from_fn<F>(fam: &WaveletFamily, window: (f64, f64), max_level: u32, f: F) -> Self
    where
        F: Fn(BasisKind, DyadicIndex) -> f64 + Sync,
    {
        let base = fill_level(fam, 0, window, |i| f(BasisKind::Father, i));
        let levels = (0..=max_level)
            .map(|n| fill_level(fam, n, window, |i| f(BasisKind::Mother, i)))
            .collect();
        Self {
            window,
            base,
            levels,
        }
    }

    /// Coefficients `⟨f, χ⟩` of a scalar path over its own sampling window.
    pub fn of_function(f: &SampledPath, fam: &WaveletFamily, max_level: u32) -> Result<Self> {
        let grid = ScalarGrid::of(f)?;
        check_level(f, max_level)?;
        Ok(Self::from_fn(
            fam,
            (f.t0(), f.t1()),
            max_level,
            |kind, idx| pair_function_raw(grid, kind, idx, fam),
        ))
    }

    /// Coefficients `⟨Ẇ, χ⟩` of a scalar path over its own sampling window.
    pub fn of_derivative(w: &SampledPath, fam: &WaveletFamily, max_level: u32) -> Result<Self> {
        let grid = ScalarGrid::of(w)?;
        check_level(w, max_level)?;
        Ok(Self::from_fn(
            fam,
            (w.t0(), w.t1()),
            max_level,
            |kind, idx| pair_derivative_raw(grid, kind, idx, fam),
        ))
    }

    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    pub fn base(&self) -> &PyramidLevel {
        &self.base
    }

    pub fn levels(&self) -> &[PyramidLevel] {
        &self.levels
    }

    pub fn level(&self, n: u32) -> Option<&PyramidLevel> {
        self.levels.get(n as usize)
    }

    /// Highest mother level `N`.
    pub fn max_level(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    /// Copy keeping mother levels `0..=n` only.
    pub fn truncated(&self, n: u32) -> Self {
        let keep = (n as usize + 1).min(self.levels.len());
        Self {
            window: self.window,
            base: self.base.clone(),
            levels: self.levels[..keep].to_vec(),
        }
    }

    /// Replaces every coefficient `c` at `(kind, index)` by `f(kind, index, c)`.
    pub fn map<F>(&self, f: F) -> Self
    where
        F: Fn(BasisKind, DyadicIndex, f64) -> f64 + Sync,
    {
        let map_level = |lvl: &PyramidLevel, kind: BasisKind| PyramidLevel {
            n: lvl.n,
            k_min: lvl.k_min,
            coeffs: lvl
                .coeffs
                .par_iter()
                .enumerate()
                .map(|(i, &c)| f(kind, DyadicIndex::new(lvl.n, lvl.k_min + i as i64), c))
                .collect(),
        };
        Self {
            window: self.window,
            base: map_level(&self.base, BasisKind::Father),
            levels: self
                .levels
                .iter()
                .map(|l| map_level(l, BasisKind::Mother))
                .collect(),
        }
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        self.map(|_, _, c| lambda * c)
    }

    /// Sum of squares of all coefficients.
    pub fn energy(&self) -> f64 {
        self.base
            .coeffs
            .iter()
            .chain(self.levels.iter().flat_map(|l| l.coeffs.iter()))
            .map(|c| c * c)
            .sum()
    }
}

fn check_level(path: &SampledPath, max_level: u32) -> Result<()> {
    if max_level + 2 > path.level() {
        return Err(Error::ResourceLimit(format!(
            "truncation level {max_level} needs grid level >= {}, got {}",
            max_level + 2,
            path.level()
        )));
    }
    Ok(())
}

/// `(Σ_x 2^{-n} |u(x)|^p)^{1/p}`.
pub fn lp_n_norm(u: &[f64], n: u32, p: f64) -> f64 {
    lp_n_sum(u, n, p).powf(1.0 / p)
}

fn lp_n_sum(u: &[f64], n: u32, p: f64) -> f64 {
    let w = 1.0 / (1u64 << n) as f64;
    u.iter().map(|v| w * v.abs().powf(p)).sum()
}

/// `(‖b⁰‖^p + Σ_n ‖a^n / 2^{-n/2 - n s}‖^p_{ℓ^p_n})^{1/p}`.
pub fn besov_norm_coeffs(pyr: &CoefficientPyramid, s: f64, p: f64) -> f64 {
    let mut total = lp_n_sum(&pyr.base.coeffs, 0, p);
    for lvl in &pyr.levels {
        let n = lvl.n as f64;
        let weight = 2f64.powf(n * (0.5 + s));
        let scaled: Vec<f64> = lvl.coeffs.iter().map(|c| c * weight).collect();
        total += lp_n_sum(&scaled, lvl.n, p);
    }
    total.powf(1.0 / p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavelet::{build_family, WaveletName};
    use proptest::prelude::*;

    #[test]
    fn lp_n_formulas() {
        assert_eq!(lp_n_norm(&[0.0; 5], 3, 4.0), 0.0);
        let v = 1.7;
        let one = lp_n_norm(&[0.0, -v, 0.0], 3, 4.0);
        assert!((one - 2f64.powf(-3.0 / 4.0) * v).abs() < 1e-14);
        let two = lp_n_norm(&[v, v], 3, 4.0);
        assert!((two - 2f64.powf(0.25) * 2f64.powf(-0.75) * v).abs() < 1e-14);
    }

    fn toy_pyramid(levels: u32) -> CoefficientPyramid {
        let fam = build_family(WaveletName::Db8, 8).unwrap();
        CoefficientPyramid::from_fn(&fam, (0.0, 1.0), levels, |_, _| 0.0)
    }

    #[test]
    fn zero_and_single_coefficient() {
        let pyr = toy_pyramid(4);
        assert_eq!(besov_norm_coeffs(&pyr, -0.6, 4.0), 0.0);
        let (n, k, c, s, p) = (3u32, 2i64, -0.8, -0.6, 4.0);
        let one = pyr.map(|kind, idx, _| {
            if kind == BasisKind::Mother && idx == DyadicIndex::new(n, k) {
                c
            } else {
                0.0
            }
        });
        let expect = 2f64.powf(n as f64 * (s + 0.5)) * 2f64.powf(-(n as f64) / p) * c.abs();
        let got = besov_norm_coeffs(&one, s, p);
        assert!((got - expect).abs() < 1e-14 * expect, "{got} vs {expect}");
    }

    #[test]
    fn extents_follow_admissible_ranges() {
        let pyr = toy_pyramid(3);
        let fam = build_family(WaveletName::Db8, 8).unwrap();
        for lvl in pyr.levels() {
            let (a, b) = admissible_range(&fam, lvl.n(), (0.0, 1.0));
            assert_eq!((lvl.k_min(), lvl.k_max()), (a, b));
        }
        assert_eq!(pyr.truncated(1).max_level(), 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn norm_is_absolutely_homogeneous(lambda in -5.0f64..5.0, s in -1.0f64..1.0, seed in 0u64..1000) {
            let pyr = toy_pyramid(3).map(|_, idx, _| {
                ((idx.k as f64 + 0.37 * idx.n as f64 + seed as f64).sin() * 3.0).tanh()
            });
            let a = besov_norm_coeffs(&pyr, s, 4.0);
            let b = besov_norm_coeffs(&pyr.scaled(lambda), s, 4.0);
            prop_assert!((b - lambda.abs() * a).abs() <= 1e-12 * (1.0 + a));
        }
    }
}
