use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::GroupPath;
use crate::params::SobolevParams;
use crate::quadrature::{center_indices, default_quad_level, lag_weights, Pow};

/// The two levels of the inhomogeneous metric and their sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RhoValue {
    pub rho1: f64,
    pub rho2: f64,
    pub total: f64,
}

fn diff_norm(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// `ρ^{(k)} = (∬ |π_k(A_{s,t} - B_{s,t})|^{p/k} / |t - s|^{alpha p + 1} ds dt)^{k/p}`
/// for `k = 1, 2` at quadrature level `q`.
///
/// Both orders `(s, t)` and `(t, s)` are evaluated: level-2 increments are
/// not symmetric under swapping the endpoints.
pub fn rho_metric_with(
    a: &GroupPath,
    b: &GroupPath,
    params: &SobolevParams,
    q: u32,
) -> Result<RhoValue> {
    a.check_same_grid(b)?;
    let d = a.dim();
    let idx = center_indices(a.level(), a.len() - 1, q)?;
    let count = idx.len();
    let h = 1.0 / (1u64 << q) as f64;
    let w = lag_weights(count, h, params.kernel_exponent());
    let p = params.p();
    let (pow1, pow2) = (Pow::new(p), Pow::new(0.5 * p));
    let rows: Vec<(f64, f64)> = (0..count)
        .into_par_iter()
        .map_init(
            || {
                [
                    vec![0.0; d],
                    vec![0.0; d * d],
                    vec![0.0; d],
                    vec![0.0; d * d],
                ]
            },
            |s, i| {
                let [a1, a2, b1, b2] = s;
                let mut acc = (0.0, 0.0);
                for j in (0..count).filter(|&j| j != i) {
                    let wl = w[i.abs_diff(j)];
                    a.increment_into(idx[i], idx[j], a1, a2);
                    b.increment_into(idx[i], idx[j], b1, b2);
                    acc.0 += wl * pow1.of(diff_norm(a1, b1));
                    acc.1 += wl * pow2.of(diff_norm(a2, b2));
                }
                acc
            },
        )
        .collect();
    let (s1, s2) = rows.iter().fold((0.0, 0.0), |(x, y), r| (x + r.0, y + r.1));
    let rho1 = s1.powf(1.0 / p);
    let rho2 = s2.powf(2.0 / p);
    Ok(RhoValue {
        rho1,
        rho2,
        total: rho1 + rho2,
    })
}

pub fn rho_metric(a: &GroupPath, b: &GroupPath, params: &SobolevParams) -> Result<RhoValue> {
    rho_metric_with(a, b, params, default_quad_level(a.level()))
}
