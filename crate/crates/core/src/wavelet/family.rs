//! Tabulated scaling function and mother wavelet.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::wavelet::filters::WaveletName;

pub const MIN_REFINE_DEPTH: u32 = 8;
pub const MAX_REFINE_DEPTH: u32 = 14;
pub const DEFAULT_REFINE_DEPTH: u32 = 14;

const CASCADE_TOL: f64 = 1e-7;
const CASCADE_MAX_ITER: usize = 2000;

/// Which tabulated function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    Phi,
    Psi,
    DPhi,
    DPsi,
    /// `∫_{-∞}^x φ`
    IntPhi,
    /// `∫_{-∞}^x ψ`
    IntPsi,
    /// `∫_{-∞}^x ∫_{-∞}^y φ`
    IntIntPhi,
    /// `∫_{-∞}^x ∫_{-∞}^y ψ`
    IntIntPsi,
}

/// Father or mother function of the basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    Father,
    Mother,
}

impl BasisKind {
    pub(crate) fn kernels(self) -> (Kernel, Kernel, Kernel) {
        match self {
            BasisKind::Father => (Kernel::Phi, Kernel::IntPhi, Kernel::IntIntPhi),
            BasisKind::Mother => (Kernel::Psi, Kernel::IntPsi, Kernel::IntIntPsi),
        }
    }
}

/// Orthonormal compactly supported wavelet family on a dyadic table.
///
/// Both `φ` and `ψ` are shifted by an integer so that their support is
/// `[-c, S - c]` with `S = L - 1` and `c = ⌊S/2⌋`; this keeps `x = 2^{-n} k`
/// close to the centre of `ψ^n_x`. Integer shifts do not change the basis.
///
/// Point values come from the cascade and are exact on the dyadic table up to
/// rounding. Between table points `φ, ψ` are linear and the antiderivatives
/// are integrated exactly, so pairings are exact for that interpolant.
#[derive(Debug, Clone)]
pub struct WaveletFamily {
    name: WaveletName,
    refine_depth: u32,
    filter: Vec<f64>,
    span: usize,
    offset: i64,
    phi: Vec<f64>,
    psi: Vec<f64>,
    dphi: Vec<f64>,
    dpsi: Vec<f64>,
    int_phi: Vec<f64>,
    int_psi: Vec<f64>,
    int2_phi: Vec<f64>,
    int2_psi: Vec<f64>,
}

/// Values at the integers `0..=S` via power iteration on the refinement matrix.
fn integer_values(a: &[f64]) -> Result<Vec<f64>> {
    let s = a.len() - 1;
    let mut v = vec![0.0; s + 1];
    for x in v.iter_mut().take(s).skip(1) {
        *x = 1.0 / (s - 1) as f64;
    }
    let mut change = f64::INFINITY;
    for _ in 0..CASCADE_MAX_ITER {
        let mut next = vec![0.0; s + 1];
        for (m, out) in next.iter_mut().enumerate().take(s).skip(1) {
            *out = a
                .iter()
                .enumerate()
                .filter_map(|(k, ak)| {
                    let j = (2 * m) as i64 - k as i64;
                    (j >= 0 && j as usize <= s).then(|| ak * v[j as usize])
                })
                .sum();
        }
        change = next
            .iter()
            .zip(&v)
            .fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs()));
        v = next;
        if change < 1e-15 {
            break;
        }
    }
    if change.is_nan() || change >= CASCADE_TOL {
        return Err(Error::CascadeDiverged(change));
    }
    Ok(v)
}

fn centered_difference(v: &[f64], inv_h: f64) -> Vec<f64> {
    let n = v.len();
    (0..n)
        .map(|i| {
            let left = if i == 0 { 0.0 } else { v[i - 1] };
            let right = if i + 1 == n { 0.0 } else { v[i + 1] };
            0.5 * (right - left) * inv_h
        })
        .collect()
}

/// Exact antiderivative of the piecewise-linear interpolant of `v`.
fn cumulative_trapezoid(v: &[f64], h: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(v.len());
    let mut acc = 0.0;
    out.push(0.0);
    for w in v.windows(2) {
        acc += 0.5 * h * (w[0] + w[1]);
        out.push(acc);
    }
    out
}

/// Exact antiderivative of a piecewise-quadratic `f` with piecewise-linear `f'`.
fn cumulative_corrected(f: &[f64], df: &[f64], h: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(f.len());
    let mut acc = 0.0;
    out.push(0.0);
    for i in 0..f.len() - 1 {
        acc += 0.5 * h * (f[i] + f[i + 1]) + h * h * (df[i] - df[i + 1]) / 12.0;
        out.push(acc);
    }
    out
}

pub fn build_family(name: WaveletName, refine_depth: u32) -> Result<WaveletFamily> {
    if !(MIN_REFINE_DEPTH..=MAX_REFINE_DEPTH).contains(&refine_depth) {
        return Err(Error::InvalidInput(format!(
            "refine depth {refine_depth} outside [{MIN_REFINE_DEPTH}, {MAX_REFINE_DEPTH}]"
        )));
    }
    let sqrt2 = 2f64.sqrt();
    let filter: Vec<f64> = name.lowpass().iter().map(|h| h * sqrt2).collect();
    let span = filter.len() - 1;
    let per_unit = 1usize << refine_depth;
    let size = span * per_unit + 1;

    let ints = integer_values(&filter)?;
    let mut phi = vec![0.0; size];
    for (m, v) in ints.iter().enumerate() {
        phi[m * per_unit] = *v;
    }
    for r in 1..=refine_depth {
        let step = 1usize << (refine_depth - r);
        for i in (step..size).step_by(2 * step) {
            phi[i] = filter
                .iter()
                .enumerate()
                .filter_map(|(k, ak)| {
                    let j = 2 * i as i64 - (k * per_unit) as i64;
                    (j >= 0 && (j as usize) < size).then(|| ak * phi[j as usize])
                })
                .sum();
        }
    }

    let psi: Vec<f64> = (0..size)
        .map(|i| {
            (0..=span)
                .filter_map(|k| {
                    let gk = if k % 2 == 0 { 1.0 } else { -1.0 } * filter[span - k];
                    let j = 2 * i as i64 - (k * per_unit) as i64;
                    (j >= 0 && (j as usize) < size).then(|| gk * phi[j as usize])
                })
                .sum()
        })
        .collect();

    let h = 1.0 / per_unit as f64;
    let dphi = centered_difference(&phi, per_unit as f64);
    let dpsi = centered_difference(&psi, per_unit as f64);
    let int_phi = cumulative_trapezoid(&phi, h);
    let int_psi = cumulative_trapezoid(&psi, h);
    let int2_phi = cumulative_corrected(&int_phi, &phi, h);
    let int2_psi = cumulative_corrected(&int_psi, &psi, h);

    Ok(WaveletFamily {
        name,
        refine_depth,
        filter,
        span,
        offset: (span / 2) as i64,
        phi,
        psi,
        dphi,
        dpsi,
        int_phi,
        int_psi,
        int2_phi,
        int2_psi,
    })
}

impl WaveletFamily {
    pub fn name(&self) -> WaveletName {
        self.name
    }

    pub fn refine_depth(&self) -> u32 {
        self.refine_depth
    }

    /// Refinement coefficients `a_k` with `φ(x) = Σ a_k φ(2x - k)`, `Σ a_k = 2`.
    pub fn filter(&self) -> &[f64] {
        &self.filter
    }

    /// Support `[lo, hi]` of both `φ` and `ψ`.
    pub fn support(&self) -> (f64, f64) {
        let lo = -(self.offset as f64);
        (lo, lo + self.span as f64)
    }

    pub fn support_radius(&self) -> f64 {
        0.5 * self.span as f64
    }

    pub fn vanishing_moments(&self) -> usize {
        self.name.vanishing_moments()
    }

    pub fn r_reg(&self) -> f64 {
        self.name.holder_regularity()
    }

    /// Table spacing `2^{-J}`.
    pub fn table_step(&self) -> f64 {
        1.0 / (1u64 << self.refine_depth) as f64
    }

    /// Table abscissae in the centred coordinate.
    pub fn grid(&self) -> impl Iterator<Item = f64> + '_ {
        let (lo, _) = self.support();
        let h = self.table_step();
        (0..self.phi.len()).map(move |i| lo + i as f64 * h)
    }

    pub fn table(&self, kernel: Kernel) -> &[f64] {
        match kernel {
            Kernel::Phi => &self.phi,
            Kernel::Psi => &self.psi,
            Kernel::DPhi => &self.dphi,
            Kernel::DPsi => &self.dpsi,
            Kernel::IntPhi => &self.int_phi,
            Kernel::IntPsi => &self.int_psi,
            Kernel::IntIntPhi => &self.int2_phi,
            Kernel::IntIntPsi => &self.int2_psi,
        }
    }

    /// Evaluates `kernel` at `x` (centred coordinate).
    ///
    /// Point values interpolate linearly; antiderivatives use cubic Hermite
    /// interpolation with the next-lower table as slope, which is exact for
    /// the linear interpolant of `φ, ψ`. Beyond the support antiderivatives
    /// continue with their terminal value and slope.
    pub fn eval(&self, kernel: Kernel, x: f64) -> f64 {
        let per_unit = (1u64 << self.refine_depth) as f64;
        let u = (x + self.offset as f64) * per_unit;
        let tab = self.table(kernel);
        let last = tab.len() - 1;
        if u <= 0.0 {
            return 0.0;
        }
        let slope = match kernel {
            Kernel::Phi | Kernel::Psi | Kernel::DPhi | Kernel::DPsi => None,
            Kernel::IntPhi => Some(&self.phi),
            Kernel::IntPsi => Some(&self.psi),
            Kernel::IntIntPhi => Some(&self.int_phi),
            Kernel::IntIntPsi => Some(&self.int_psi),
        };
        if u >= last as f64 {
            return match kernel {
                Kernel::Phi | Kernel::Psi | Kernel::DPhi | Kernel::DPsi => 0.0,
                Kernel::IntPhi | Kernel::IntPsi => tab[last],
                Kernel::IntIntPhi | Kernel::IntIntPsi => {
                    let s = slope.map_or(0.0, |s| s[last]);
                    tab[last] + s * (u - last as f64) / per_unit
                }
            };
        }
        let j = u as usize;
        let t = u - j as f64;
        match slope {
            None => tab[j] + t * (tab[j + 1] - tab[j]),
            Some(s) => {
                let h = 1.0 / per_unit;
                let t2 = t * t;
                let t3 = t2 * t;
                let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
                let h10 = t3 - 2.0 * t2 + t;
                let h01 = -2.0 * t3 + 3.0 * t2;
                let h11 = t3 - t2;
                h00 * tab[j] + h10 * h * s[j] + h01 * tab[j + 1] + h11 * h * s[j + 1]
            }
        }
    }

    /// Writes the tables as CSV with header `grid,phi,psi,dpsi,Psi,Phi`.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = std::io::BufWriter::new(file);
        let io = |e| Error::io(path, e);
        writeln!(w, "grid,phi,psi,dpsi,Psi,Phi").map_err(io)?;
        for (i, x) in self.grid().enumerate() {
            writeln!(
                w,
                "{x},{},{},{},{},{}",
                self.phi[i], self.psi[i], self.dpsi[i], self.int_psi[i], self.int_phi[i]
            )
            .map_err(io)?;
        }
        w.flush().map_err(io)
    }
}
