//! Uniformly sampled paths on dyadic grids.

use crate::error::{Error, Result};

/// Largest dyadic level accepted for a sampled path.
pub const MAX_GRID_LEVEL: u32 = 20;

/// An `R^d`-valued path sampled at `t0 + i 2^{-M}`, `i = 0..=(t1 - t0) 2^M`.
///
/// Values are stored row-major: sample `i`, component `j` lives at `i * d + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPath {
    t0: f64,
    t1: f64,
    level: u32,
    dim: usize,
    values: Vec<f64>,
}

pub(crate) fn sample_count(t0: f64, t1: f64, level: u32) -> Result<usize> {
    if !(t0.is_finite() && t1.is_finite() && t1 > t0) {
        return Err(Error::InvalidInput(format!("bad interval [{t0}, {t1}]")));
    }
    if level > MAX_GRID_LEVEL {
        return Err(Error::ResourceLimit(format!(
            "grid level {level} exceeds {MAX_GRID_LEVEL}"
        )));
    }
    let cells = (t1 - t0) * (1u64 << level) as f64;
    if cells.fract() != 0.0 {
        return Err(Error::GridMismatch(format!(
            "interval length {} is not a multiple of 2^-{level}",
            t1 - t0
        )));
    }
    Ok(cells as usize + 1)
}

impl SampledPath {
    pub fn new(t0: f64, t1: f64, level: u32, dim: usize, values: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        let n = sample_count(t0, t1, level)?;
        if values.len() != n * dim {
            return Err(Error::GridMismatch(format!(
                "expected {} values ({n} samples x {dim}), got {}",
                n * dim,
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "non-finite value at sample {}",
                pos / dim
            )));
        }
        Ok(Self {
            t0,
            t1,
            level,
            dim,
            values,
        })
    }

    /// Samples `f(t, out)` on the grid.
    pub fn from_fn(
        t0: f64,
        t1: f64,
        level: u32,
        dim: usize,
        mut f: impl FnMut(f64, &mut [f64]),
    ) -> Result<Self> {
        let n = sample_count(t0, t1, level)?;
        let h = 1.0 / (1u64 << level) as f64;
        let mut values = vec![0.0; n * dim];
        for (i, row) in values.chunks_mut(dim).enumerate() {
            f(t0 + i as f64 * h, row);
        }
        Self::new(t0, t1, level, dim, values)
    }

    pub fn from_scalar_fn(t0: f64, t1: f64, level: u32, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_fn(t0, t1, level, 1, |t, out| out[0] = f(t))
    }

    /// Stacks scalar paths on a common grid into one vector-valued path.
    pub fn stack(components: &[&SampledPath]) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::InvalidInput("no components to stack".into()))?;
        let dim: usize = components.iter().map(|c| c.dim).sum();
        for c in components {
            first.check_same_grid(c)?;
        }
        let n = first.len();
        let mut values = Vec::with_capacity(n * dim);
        for i in 0..n {
            for c in components {
                values.extend_from_slice(c.point(i));
            }
        }
        Self::new(first.t0, first.t1, first.level, dim, values)
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.values.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Grid spacing `2^{-M}`.
    pub fn step(&self) -> f64 {
        1.0 / self.samples_per_unit() as f64
    }

    pub fn samples_per_unit(&self) -> u64 {
        1u64 << self.level
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.step()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.dim + j]
    }

    /// Index of the grid point at time `t`, if `t` lies exactly on the grid.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        let u = (t - self.t0) * self.samples_per_unit() as f64;
        (u.fract() == 0.0 && u >= 0.0 && (u as usize) < self.len()).then_some(u as usize)
    }

    /// Scalar path holding component `j`.
    pub fn component(&self, j: usize) -> Result<SampledPath> {
        if j >= self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: j + 1,
            });
        }
        let values = self
            .values
            .iter()
            .skip(j)
            .step_by(self.dim)
            .copied()
            .collect();
        Ok(SampledPath {
            values,
            dim: 1,
            ..*self
        })
    }

    /// Restriction to the grid points in `[a, b]`; both ends must be grid points.
    pub fn restrict(&self, a: f64, b: f64) -> Result<SampledPath> {
        let (i, j) = match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) if j > i => (i, j),
            _ => {
                return Err(Error::GridMismatch(format!(
                    "[{a}, {b}] is not a grid sub-interval of [{}, {}]",
                    self.t0, self.t1
                )))
            }
        };
        Ok(SampledPath {
            t0: a,
            t1: b,
            values: self.values[i * self.dim..(j + 1) * self.dim].to_vec(),
            ..*self
        })
    }

    /// `self + eps * other` on a common grid.
    pub fn add_scaled(&self, other: &SampledPath, eps: f64) -> Result<SampledPath> {
        self.check_same_grid(other)?;
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + eps * b)
            .collect();
        Self::new(self.t0, self.t1, self.level, self.dim, values)
    }

    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Result<SampledPath> {
        let values = self.values.iter().map(|&v| f(v)).collect();
        Self::new(self.t0, self.t1, self.level, self.dim, values)
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Piecewise-linear interpolant at `t`, continued as constants outside `[t0, t1]`.
    pub fn interpolate(&self, t: f64, out: &mut [f64]) {
        let last = self.len() - 1;
        let u = (t - self.t0) * self.samples_per_unit() as f64;
        if u <= 0.0 {
            out.copy_from_slice(self.point(0));
        } else if u >= last as f64 {
            out.copy_from_slice(self.point(last));
        } else {
            let i = u.floor() as usize;
            let theta = u - i as f64;
            let (a, b) = (self.point(i), self.point(i + 1));
            for ((o, x), y) in out.iter_mut().zip(a).zip(b) {
                *o = x + theta * (y - x);
            }
        }
    }

    /// Resamples onto the dyadic grid of level `level` by linear interpolation.
    pub fn resample(&self, level: u32) -> Result<SampledPath> {
        let mut buf = vec![0.0; self.dim];
        Self::from_fn(self.t0, self.t1, level, self.dim, |t, out| {
            self.interpolate(t, &mut buf);
            out.copy_from_slice(&buf);
        })
    }

    pub fn check_same_grid(&self, other: &SampledPath) -> Result<()> {
        if self.t0 != other.t0 || self.t1 != other.t1 || self.level != other.level {
            return Err(Error::GridMismatch(format!(
                "[{}, {}] at level {} vs [{}, {}] at level {}",
                self.t0, self.t1, self.level, other.t0, other.t1, other.level
            )));
        }
        Ok(())
    }
}
