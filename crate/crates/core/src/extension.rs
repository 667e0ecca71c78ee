//! Compactly supported extension of a path beyond its sampling interval.

use crate::error::{Error, Result};
use crate::path::SampledPath;

/// `C^1` cutoff: 1 on `[t0, t1]`, 0 outside `[t0 - 1, t1 + 1]`, smoothstep in between.
pub fn cutoff(t: f64, t0: f64, t1: f64) -> f64 {
    let u = if t < t0 {
        1.0 - (t0 - t)
    } else if t > t1 {
        1.0 - (t - t1)
    } else {
        return 1.0;
    };
    if u <= 0.0 {
        0.0
    } else {
        u * u * (3.0 - 2.0 * u)
    }
}

/// Extends `f` from `[t0, t1]` to `[t0 - 1, t1 + 1]` by even reflection at
/// both endpoints times [`cutoff`]. The samples on `[t0, t1]` are copied
/// unchanged.
pub fn extend_path(f: &SampledPath) -> Result<SampledPath> {
    let (t0, t1) = (f.t0(), f.t1());
    if t1 - t0 < 1.0 {
        return Err(Error::InvalidInput(format!(
            "reflection needs an interval of length >= 1, got [{t0}, {t1}]"
        )));
    }
    let d = f.dim();
    let pad = f.samples_per_unit() as usize;
    let n = f.len();
    let last = n - 1;
    let mut values = Vec::with_capacity((n + 2 * pad) * d);
    for j in 0..pad {
        // t = t0 - (pad - j) h mirrors sample pad - j
        let chi = cutoff(t0 - (pad - j) as f64 * f.step(), t0, t1);
        values.extend(f.point(pad - j).iter().map(|v| chi * v));
    }
    values.extend_from_slice(f.values());
    for j in 1..=pad {
        let chi = cutoff(t1 + j as f64 * f.step(), t0, t1);
        values.extend(f.point(last - j).iter().map(|v| chi * v));
    }
    SampledPath::new(t0 - 1.0, t1 + 1.0, f.level(), d, values)
}
