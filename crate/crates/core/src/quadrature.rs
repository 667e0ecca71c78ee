//! Midpoint-rule double integrals against the kernel `|t - s|^{-e}`.
//!
//! Nodes are the centres of the `2^q` cells per unit time. The diagonal cell
//! pair is dropped, which removes the band `|t - s| < 2^{-q}`. Rows are summed
//! in parallel and reduced in index order, so results do not depend on the
//! thread count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::path::SampledPath;

/// Cap on the default quadrature level (2^11 nodes per unit time).
pub const MAX_DEFAULT_QUAD_LEVEL: u32 = 11;

/// Default quadrature level for a path sampled at level `grid_level`.
///
/// Using `q < M` puts every node on a sample, so group paths can be
/// evaluated without interpolation.
pub fn default_quad_level(grid_level: u32) -> u32 {
    grid_level.saturating_sub(1).min(MAX_DEFAULT_QUAD_LEVEL)
}

/// `x ↦ x^p` for `x >= 0`, using repeated multiplication when `p` is an integer.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Pow {
    p: f64,
    int: Option<i32>,
}

impl Pow {
    pub fn new(p: f64) -> Self {
        let int = (p.fract() == 0.0 && p.abs() <= 64.0).then_some(p as i32);
        Self { p, int }
    }

    #[inline]
    pub fn of(&self, x: f64) -> f64 {
        match self.int {
            Some(n) => x.powi(n),
            None => x.powf(self.p),
        }
    }
}

/// Kernel weights `h^2 / (l h)^e` indexed by lag `l >= 1` (entry 0 unused).
pub(crate) fn lag_weights(count: usize, h: f64, exponent: f64) -> Vec<f64> {
    let mut w = vec![0.0; count.max(1)];
    for (l, wl) in w.iter_mut().enumerate().skip(1) {
        *wl = h * h / (l as f64 * h).powf(exponent);
    }
    w
}

/// `sum_{i < j} w(j - i) f(i, j)` over `count` nodes with spacing `h`.
pub(crate) fn upper_pair_sum<F>(count: usize, h: f64, exponent: f64, f: F) -> f64
where
    F: Fn(usize, usize) -> f64 + Sync,
{
    let w = lag_weights(count, h, exponent);
    let rows: Vec<f64> = (0..count)
        .into_par_iter()
        .map(|i| ((i + 1)..count).map(|j| w[j - i] * f(i, j)).sum::<f64>())
        .collect();
    rows.iter().sum()
}

/// As [`upper_pair_sum`], with per-thread scratch space created by `init`.
pub(crate) fn upper_pair_sum_scratch<S, I, F>(
    count: usize,
    h: f64,
    exponent: f64,
    init: I,
    f: F,
) -> f64
where
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize, usize) -> f64 + Sync,
{
    let w = lag_weights(count, h, exponent);
    let rows: Vec<f64> = (0..count)
        .into_par_iter()
        .map_init(init, |scratch, i| {
            ((i + 1)..count)
                .map(|j| w[j - i] * f(scratch, i, j))
                .sum::<f64>()
        })
        .collect();
    rows.iter().sum()
}

/// Values of `path` at the level-`q` cell centres, row-major with `dim` columns.
///
/// For `q < M` the centres are samples; for `q = M` they are midpoints of
/// adjacent samples.
pub(crate) fn cell_centers(path: &SampledPath, q: u32) -> Result<Vec<f64>> {
    let m = path.level();
    if q > m {
        return Err(Error::GridMismatch(format!(
            "quadrature level {q} is finer than grid level {m}"
        )));
    }
    let d = path.dim();
    let cells = path.len() - 1;
    if q == m {
        let mut out = Vec::with_capacity(cells * d);
        for i in 0..cells {
            let (a, b) = (path.point(i), path.point(i + 1));
            out.extend(a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)));
        }
        return Ok(out);
    }
    let stride = 1usize << (m - q);
    let count = cells / stride;
    let mut out = Vec::with_capacity(count * d);
    for i in 0..count {
        out.extend_from_slice(path.point(i * stride + stride / 2));
    }
    Ok(out)
}

/// Sample indices of the level-`q` cell centres (requires `q < M`).
pub(crate) fn center_indices(grid_level: u32, cells: usize, q: u32) -> Result<Vec<usize>> {
    if q >= grid_level {
        return Err(Error::GridMismatch(format!(
            "quadrature level {q} must be below grid level {grid_level}"
        )));
    }
    let stride = 1usize << (grid_level - q);
    Ok((0..cells / stride)
        .map(|i| i * stride + stride / 2)
        .collect())
}
