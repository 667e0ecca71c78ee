//! Pairings of sampled paths with dilated and translated basis functions.
//!
//! A sampled path is identified with its piecewise-linear interpolant,
//! continued as constants outside the sampling window. `χ^n_k(y) = 2^{n/2}
//! χ(2^n y - k)` for `χ ∈ {φ, ψ}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::path::SampledPath;
use crate::wavelet::family::{BasisKind, WaveletFamily};

/// Dyadic index `(n, k)` standing for the point `x = 2^{-n} k` of `Λ_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DyadicIndex {
    pub n: u32,
    pub k: i64,
}

impl DyadicIndex {
    pub fn new(n: u32, k: i64) -> Self {
        Self { n, k }
    }

    pub fn position(&self) -> f64 {
        self.k as f64 / (1u64 << self.n) as f64
    }
}

/// Translations `k` at level `n` whose support meets the open window `(a, b)`.
pub fn admissible_range(fam: &WaveletFamily, n: u32, window: (f64, f64)) -> (i64, i64) {
    let (lo, hi) = fam.support();
    let scale = (1u64 << n) as f64;
    let k_min = (window.0 * scale - hi).floor() as i64 + 1;
    let k_max = (window.1 * scale - lo).ceil() as i64 - 1;
    (k_min, k_max)
}

/// Borrowed view of a scalar sampled path.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ScalarGrid<'a> {
    pub t0: f64,
    pub per_unit: f64,
    pub vals: &'a [f64],
}

impl<'a> ScalarGrid<'a> {
    pub fn of(path: &'a SampledPath) -> Result<Self> {
        if path.dim() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: path.dim(),
            });
        }
        Ok(Self {
            t0: path.t0(),
            per_unit: path.samples_per_unit() as f64,
            vals: path.values(),
        })
    }

    fn time(&self, i: usize) -> f64 {
        self.t0 + i as f64 / self.per_unit
    }

    /// Range of cells `[t_i, t_{i+1}]` meeting the open interval `(a, b)`.
    fn cells_meeting(&self, a: f64, b: f64) -> Option<(usize, usize)> {
        let cells = self.vals.len() - 1;
        let lo = ((a - self.t0) * self.per_unit).floor().max(0.0);
        let hi = ((b - self.t0) * self.per_unit).ceil() - 1.0;
        let hi = hi.min(cells as f64 - 1.0);
        (hi >= lo).then_some((lo as usize, hi as usize))
    }
}

fn support_of(fam: &WaveletFamily, n: u32, k: i64) -> (f64, f64) {
    let (lo, hi) = fam.support();
    let scale = (1u64 << n) as f64;
    ((k as f64 + lo) / scale, (k as f64 + hi) / scale)
}

/// `⟨Ẇ, χ^n_k⟩ = Σ_i slope_i (X(t_{i+1}) - X(t_i))` with `X` the antiderivative of `χ^n_k`.
pub(crate) fn pair_derivative_raw(
    w: ScalarGrid<'_>,
    kind: BasisKind,
    idx: DyadicIndex,
    fam: &WaveletFamily,
) -> f64 {
    let (_, k1, _) = kind.kernels();
    let (a, b) = support_of(fam, idx.n, idx.k);
    let Some((i_lo, i_hi)) = w.cells_meeting(a, b) else {
        return 0.0;
    };
    let scale = (1u64 << idx.n) as f64;
    let kf = idx.k as f64;
    let mut prev = fam.eval(k1, scale * w.time(i_lo) - kf);
    let mut acc = 0.0;
    for i in i_lo..=i_hi {
        let next = fam.eval(k1, scale * w.time(i + 1) - kf);
        let slope = (w.vals[i + 1] - w.vals[i]) * w.per_unit;
        acc += slope * (next - prev);
        prev = next;
    }
    acc / scale.sqrt()
}

/// `⟨f, χ^n_k⟩` by parts: `X(∞) f(b) - Σ_i slope_i ∫_{cell i} X`.
pub(crate) fn pair_function_raw(
    f: ScalarGrid<'_>,
    kind: BasisKind,
    idx: DyadicIndex,
    fam: &WaveletFamily,
) -> f64 {
    let (_, k1, k2) = kind.kernels();
    let (_, hi) = fam.support();
    let scale = (1u64 << idx.n) as f64;
    let mass = fam.eval(k1, hi) / scale.sqrt();
    let (a, b) = support_of(fam, idx.n, idx.k);
    let Some((i_lo, i_hi)) = f.cells_meeting(a, b) else {
        let v = if b <= f.t0 {
            f.vals[0]
        } else {
            f.vals[f.vals.len() - 1]
        };
        return mass * v;
    };
    let kf = idx.k as f64;
    let mut prev = fam.eval(k2, scale * f.time(i_lo) - kf);
    let mut acc = 0.0;
    for i in i_lo..=i_hi {
        let next = fam.eval(k2, scale * f.time(i + 1) - kf);
        let slope = (f.vals[i + 1] - f.vals[i]) * f.per_unit;
        acc += slope * (next - prev);
        prev = next;
    }
    mass * f.vals[i_hi + 1] - acc / (scale * scale.sqrt())
}

/// `⟨f, χ^n_k⟩` for a scalar path `f`.
pub fn pair_function(
    f: &SampledPath,
    kind: BasisKind,
    idx: DyadicIndex,
    fam: &WaveletFamily,
) -> Result<f64> {
    Ok(pair_function_raw(ScalarGrid::of(f)?, kind, idx, fam))
}

/// `⟨Ẇ, χ^n_k⟩` for a scalar path `W` (Riemann–Stieltjes against its interpolant).
pub fn pair_derivative(
    w: &SampledPath,
    kind: BasisKind,
    idx: DyadicIndex,
    fam: &WaveletFamily,
) -> Result<f64> {
    Ok(pair_derivative_raw(ScalarGrid::of(w)?, kind, idx, fam))
}
