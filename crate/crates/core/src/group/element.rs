use crate::error::{Error, Result};

/// Tolerance factor for `G²` membership checks.
pub const MEMBERSHIP_TOL: f64 = 1e-10;

/// Element `(1, level1, level2)` of the truncated tensor algebra `T²(R^d)`.
///
/// `level2` is a row-major `d × d` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    level1: Vec<f64>,
    level2: Vec<f64>,
}

impl GroupElement {
    pub fn new(level1: Vec<f64>, level2: Vec<f64>) -> Result<Self> {
        let d = level1.len();
        if level2.len() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                found: level2.len(),
            });
        }
        Ok(Self { level1, level2 })
    }

    pub fn identity(d: usize) -> Self {
        Self {
            level1: vec![0.0; d],
            level2: vec![0.0; d * d],
        }
    }

    /// Signature of the straight segment with increment `delta`: `(Δ, ½ Δ⊗Δ)`.
    pub fn segment(delta: &[f64]) -> Self {
        let d = delta.len();
        let mut level2 = vec![0.0; d * d];
        for i in 0..d {
            for j in 0..d {
                level2[i * d + j] = 0.5 * delta[i] * delta[j];
            }
        }
        Self {
            level1: delta.to_vec(),
            level2,
        }
    }

    pub fn dim(&self) -> usize {
        self.level1.len()
    }

    pub fn level1(&self) -> &[f64] {
        &self.level1
    }

    pub fn level2(&self) -> &[f64] {
        &self.level2
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.level2[i * self.dim() + j]
    }

    /// Dilation `(λ level1, λ² level2)`.
    pub fn dilate(&self, lambda: f64) -> Self {
        Self {
            level1: self.level1.iter().map(|v| lambda * v).collect(),
            level2: self.level2.iter().map(|v| lambda * lambda * v).collect(),
        }
    }

    /// `max_{ij} |Sym(level2) - ½ level1⊗level1|`.
    pub fn sym_defect(&self) -> f64 {
        sym_defect(&self.level1, &self.level2)
    }

    /// `max(|level1|_∞², |level2|_∞)`, the natural size for relative checks.
    pub fn scale(&self) -> f64 {
        element_scale(&self.level1, &self.level2)
    }

    pub fn is_in_group(&self, rel_tol: f64) -> bool {
        self.sym_defect() <= rel_tol * self.scale()
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        tensor_mul(self, other)
    }

    pub fn inverse(&self) -> GroupElement {
        inverse(self)
    }

    /// Largest entrywise difference at either level.
    pub fn max_abs_diff(&self, other: &GroupElement) -> f64 {
        self.level1
            .iter()
            .zip(&other.level1)
            .chain(self.level2.iter().zip(&other.level2))
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

pub(crate) fn sym_defect(l1: &[f64], l2: &[f64]) -> f64 {
    let d = l1.len();
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in i..d {
            let sym = 0.5 * (l2[i * d + j] + l2[j * d + i]);
            worst = worst.max((sym - 0.5 * l1[i] * l1[j]).abs());
        }
    }
    worst
}

pub(crate) fn element_scale(l1: &[f64], l2: &[f64]) -> f64 {
    let a = l1.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let b = l2.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    (a * a).max(b)
}

/// Writes `inverse(a) ⊗ b` into the output slices.
pub(crate) fn increment_into(
    a1: &[f64],
    a2: &[f64],
    b1: &[f64],
    b2: &[f64],
    out1: &mut [f64],
    out2: &mut [f64],
) {
    let d = a1.len();
    for i in 0..d {
        out1[i] = b1[i] - a1[i];
    }
    for i in 0..d {
        for j in 0..d {
            out2[i * d + j] = b2[i * d + j] - a2[i * d + j] - a1[i] * out1[j];
        }
    }
}

/// `|l1| + (2 |Antisym(l2)|_F)^{1/2}` without membership checks.
pub(crate) fn norm_unchecked(l1: &[f64], l2: &[f64]) -> f64 {
    let d = l1.len();
    let first = l1.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut fro = 0.0;
    for i in 0..d {
        for j in 0..d {
            let a = 0.5 * (l2[i * d + j] - l2[j * d + i]);
            fro += a * a;
        }
    }
    first + (2.0 * fro.sqrt()).sqrt()
}

fn check_dims(g: &GroupElement, h: &GroupElement) -> Result<()> {
    if g.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: h.dim(),
        });
    }
    Ok(())
}

/// `(g1 + h1, g2 + h2 + g1⊗h1)`.
pub fn tensor_mul(g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
    check_dims(g, h)?;
    let d = g.dim();
    let level1 = g.level1.iter().zip(&h.level1).map(|(a, b)| a + b).collect();
    let mut level2 = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            level2[i * d + j] =
                g.level2[i * d + j] + h.level2[i * d + j] + g.level1[i] * h.level1[j];
        }
    }
    Ok(GroupElement { level1, level2 })
}

/// `(-g1, -g2 + g1⊗g1)`.
pub fn inverse(g: &GroupElement) -> GroupElement {
    let d = g.dim();
    let mut level2 = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            level2[i * d + j] = -g.level2[i * d + j] + g.level1[i] * g.level1[j];
        }
    }
    GroupElement {
        level1: g.level1.iter().map(|v| -v).collect(),
        level2,
    }
}

/// `inverse(xs) ⊗ xt`.
pub fn increment(xs: &GroupElement, xt: &GroupElement) -> Result<GroupElement> {
    check_dims(xs, xt)?;
    let d = xs.dim();
    let mut out = GroupElement::identity(d);
    increment_into(
        &xs.level1,
        &xs.level2,
        &xt.level1,
        &xt.level2,
        &mut out.level1,
        &mut out.level2,
    );
    Ok(out)
}

/// Homogeneous norm `|level1| + (2 |Antisym(level2)|_F)^{1/2}`, equivalent to the
/// Carnot–Carathéodory norm on `G²`.
pub fn homogeneous_norm(g: &GroupElement) -> Result<f64> {
    let defect = g.sym_defect();
    let tol = MEMBERSHIP_TOL * g.scale().max(f64::MIN_POSITIVE);
    if defect > tol {
        return Err(Error::NotInGroup { defect, tol });
    }
    Ok(norm_unchecked(&g.level1, &g.level2))
}
