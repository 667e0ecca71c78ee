//! Fractional Sobolev norms of sampled paths.

use crate::error::{Error, Result};
use crate::params::SobolevParams;
use crate::path::SampledPath;
use crate::quadrature::{cell_centers, default_quad_level, upper_pair_sum, Pow};

fn check_grid(f: &SampledPath) -> Result<()> {
    if f.len() < 4 {
        return Err(Error::DegenerateGrid(f.len()));
    }
    Ok(())
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// `(∬ |f(u) - f(v)|^p / |v - u|^{alpha p + 1} du dv)^{1/p}` at quadrature level `q`.
pub fn sobolev_seminorm_with(f: &SampledPath, params: &SobolevParams, q: u32) -> Result<f64> {
    check_grid(f)?;
    let d = f.dim();
    let nodes = cell_centers(f, q)?;
    let count = nodes.len() / d;
    let h = 1.0 / (1u64 << q) as f64;
    let p = params.p();
    let pow = Pow::new(p);
    let upper = upper_pair_sum(count, h, params.kernel_exponent(), |i, j| {
        pow.of(distance(
            &nodes[i * d..(i + 1) * d],
            &nodes[j * d..(j + 1) * d],
        ))
    });
    Ok((2.0 * upper).powf(1.0 / p))
}

pub fn sobolev_seminorm(f: &SampledPath, params: &SobolevParams) -> Result<f64> {
    sobolev_seminorm_with(f, params, default_quad_level(f.level()))
}

/// `(∫ |x0 - f(u)|^p du)^{1/p}` on the same nodes as the seminorm.
pub fn lp_distance_with(f: &SampledPath, x0: &[f64], p: f64, q: u32) -> Result<f64> {
    check_grid(f)?;
    if x0.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: x0.len(),
        });
    }
    let d = f.dim();
    let nodes = cell_centers(f, q)?;
    let h = 1.0 / (1u64 << q) as f64;
    let pow = Pow::new(p);
    let s: f64 = nodes.chunks(d).map(|v| h * pow.of(distance(v, x0))).sum();
    Ok(s.powf(1.0 / p))
}

/// Seminorm plus the `L^p` distance to the reference point `x0`.
pub fn sobolev_norm_path_with(
    f: &SampledPath,
    params: &SobolevParams,
    x0: &[f64],
    q: u32,
) -> Result<f64> {
    let lp = lp_distance_with(f, x0, params.p(), q)?;
    Ok(sobolev_seminorm_with(f, params, q)? + lp)
}

pub fn sobolev_norm_path(f: &SampledPath, params: &SobolevParams, x0: &[f64]) -> Result<f64> {
    sobolev_norm_path_with(f, params, x0, default_quad_level(f.level()))
}

/// Norm with the reference point taken as the initial value `f(t0)`.
pub fn sobolev_norm(f: &SampledPath, params: &SobolevParams) -> Result<f64> {
    check_grid(f)?;
    sobolev_norm_path(f, params, f.point(0))
}
