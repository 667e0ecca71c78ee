//! Seeded synthetic paths built from random-sign wavelet series.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::SobolevParams;
use crate::path::SampledPath;
use crate::wavelet::{
    admissible_range, default_family, BasisKind, CoefficientPyramid, Kernel, WaveletFamily,
};

/// Largest grid level the generator accepts.
pub const MAX_GENERATE_LEVEL: u32 = 14;

/// Evaluates `Σ_k b_k φ(t - k) + Σ_{n,k} a^n_k 2^{n/2} ψ(2^n t - k)` on a grid.
pub fn synthesize(
    pyr: &CoefficientPyramid,
    fam: &WaveletFamily,
    t0: f64,
    t1: f64,
    level: u32,
) -> Result<SampledPath> {
    let (lo, hi) = fam.support();
    let probe = SampledPath::from_scalar_fn(t0, t1, level, |_| 0.0)?;
    let values: Vec<f64> = (0..probe.len())
        .into_par_iter()
        .map(|i| {
            let t = probe.time(i);
            let base = pyr.base();
            let mut acc = 0.0;
            for k in ((t - hi).floor() as i64)..=((t - lo).ceil() as i64) {
                acc += base.get(k) * fam.eval(Kernel::Phi, t - k as f64);
            }
            for lvl in pyr.levels() {
                let scale = (1u64 << lvl.n()) as f64;
                let u = scale * t;
                let mut s = 0.0;
                for k in ((u - hi).floor() as i64)..=((u - lo).ceil() as i64) {
                    s += lvl.get(k) * fam.eval(Kernel::Psi, u - k as f64);
                }
                acc += scale.sqrt() * s;
            }
            acc
        })
        .collect();
    SampledPath::new(t0, t1, level, 1, values)
}

/// Generator of `R^d` paths on `[0, 1]` with level-`n` wavelet coefficients of
/// size `2^{-n(alpha + 1/2)} max(n, 1)^{-2/p}` and independent random signs.
#[derive(Debug, Clone, Copy)]
pub struct PathGenerator<'a> {
    fam: &'a WaveletFamily,
    params: SobolevParams,
    detail_level: Option<u32>,
}

impl<'a> PathGenerator<'a> {
    pub fn new(fam: &'a WaveletFamily, params: SobolevParams) -> Self {
        Self {
            fam,
            params,
            detail_level: None,
        }
    }

    /// Caps the finest wavelet level; the default is `level - 2`.
    pub fn with_detail_level(mut self, n: u32) -> Self {
        self.detail_level = Some(n);
        self
    }

    fn coefficients(&self, rng: &mut ChaCha8Rng, top: u32) -> CoefficientPyramid {
        let window = (0.0, 1.0);
        let (alpha, p) = (self.params.alpha(), self.params.p());
        let mut signs = Vec::new();
        let (b0, b1) = admissible_range(self.fam, 0, window);
        signs.push((b0..=b1).map(|_| rng.gen::<bool>()).collect::<Vec<_>>());
        for n in 0..=top {
            let (k0, k1) = admissible_range(self.fam, n, window);
            signs.push((k0..=k1).map(|_| rng.gen::<bool>()).collect());
        }
        let sign = |b: bool| if b { 1.0 } else { -1.0 };
        CoefficientPyramid::from_fn(self.fam, window, top, |kind, idx| match kind {
            BasisKind::Father => sign(signs[0][(idx.k - b0) as usize]),
            BasisKind::Mother => {
                let (k0, _) = admissible_range(self.fam, idx.n, window);
                let n = idx.n as f64;
                let mag = 2f64.powf(-n * (alpha + 0.5)) * n.max(1.0).powf(-2.0 / p);
                mag * sign(signs[idx.n as usize + 1][(idx.k - k0) as usize])
            }
        })
    }

    pub fn generate(&self, seed: u64, level: u32, d: usize) -> Result<SampledPath> {
        if level > MAX_GENERATE_LEVEL {
            return Err(Error::ResourceLimit(format!(
                "grid level {level} exceeds the generator limit {MAX_GENERATE_LEVEL}"
            )));
        }
        if level < 2 {
            return Err(Error::DegenerateGrid((1usize << level) + 1));
        }
        if d == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        let top = self.detail_level.unwrap_or(level - 2).min(level - 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let comps = (0..d)
            .map(|_| {
                let pyr = self.coefficients(&mut rng, top);
                synthesize(&pyr, self.fam, 0.0, 1.0, level)
            })
            .collect::<Result<Vec<_>>>()?;
        SampledPath::stack(&comps.iter().collect::<Vec<_>>())
    }
}

/// Seeded path on `[0, 1]` at grid level `level` using the default DB8 family.
pub fn generate_sobolev_path(
    params: &SobolevParams,
    seed: u64,
    level: u32,
    d: usize,
) -> Result<SampledPath> {
    PathGenerator::new(default_family(), *params).generate(seed, level, d)
}
