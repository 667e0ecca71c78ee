use crate::error::{Error, Result};
use crate::group::element::{element_scale, increment_into, sym_defect, GroupElement};
use crate::path::sample_count;

/// A `G²(R^d)`-valued path on a dyadic grid, stored flat.
///
/// `elements[0]` is the identity, so `X_t` doubles as the increment `X_{t0,t}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupPath {
    t0: f64,
    t1: f64,
    level: u32,
    dim: usize,
    level1: Vec<f64>,
    level2: Vec<f64>,
}

/// Largest symmetric defect along a path, with its location and the path scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefectReport {
    pub index: usize,
    pub defect: f64,
    pub scale: f64,
}

impl DefectReport {
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.defect / self.scale
        } else {
            self.defect
        }
    }
}

impl GroupPath {
    pub fn new(
        t0: f64,
        t1: f64,
        level: u32,
        dim: usize,
        level1: Vec<f64>,
        level2: Vec<f64>,
    ) -> Result<Self> {
        let n = sample_count(t0, t1, level)?;
        if dim == 0 || level1.len() != n * dim || level2.len() != n * dim * dim {
            return Err(Error::GridMismatch(format!(
                "group path with {n} samples in dimension {dim} got {} + {} values",
                level1.len(),
                level2.len()
            )));
        }
        if level1.iter().chain(&level2).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite group path entry".into()));
        }
        if level1[..dim]
            .iter()
            .chain(&level2[..dim * dim])
            .any(|&v| v != 0.0)
        {
            return Err(Error::InvalidInput(
                "first element of a group path must be the identity".into(),
            ));
        }
        Ok(Self {
            t0,
            t1,
            level,
            dim,
            level1,
            level2,
        })
    }

    pub fn from_elements(t0: f64, t1: f64, level: u32, elements: &[GroupElement]) -> Result<Self> {
        let dim = elements.first().map_or(0, |e| e.dim());
        let mut l1 = Vec::with_capacity(elements.len() * dim);
        let mut l2 = Vec::with_capacity(elements.len() * dim * dim);
        for e in elements {
            if e.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: e.dim(),
                });
            }
            l1.extend_from_slice(e.level1());
            l2.extend_from_slice(e.level2());
        }
        Self::new(t0, t1, level, dim, l1, l2)
    }

    /// Constant path at the identity.
    pub fn identity(t0: f64, t1: f64, level: u32, dim: usize) -> Result<Self> {
        let n = sample_count(t0, t1, level)?;
        Self::new(
            t0,
            t1,
            level,
            dim,
            vec![0.0; n * dim],
            vec![0.0; n * dim * dim],
        )
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
        self.level1.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.level1.is_empty()
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t0 + i as f64 / (1u64 << self.level) as f64
    }

    pub fn level1_at(&self, i: usize) -> &[f64] {
        &self.level1[i * self.dim..(i + 1) * self.dim]
    }

    pub fn level2_at(&self, i: usize) -> &[f64] {
        let dd = self.dim * self.dim;
        &self.level2[i * dd..(i + 1) * dd]
    }

    pub fn element(&self, i: usize) -> GroupElement {
        GroupElement::new(self.level1_at(i).to_vec(), self.level2_at(i).to_vec())
            .expect("stored shapes are consistent")
    }

    /// Writes the increment `X_{s,t} = X_s^{-1} ⊗ X_t` for sample indices `s, t`.
    pub(crate) fn increment_into(&self, s: usize, t: usize, out1: &mut [f64], out2: &mut [f64]) {
        increment_into(
            self.level1_at(s),
            self.level2_at(s),
            self.level1_at(t),
            self.level2_at(t),
            out1,
            out2,
        );
    }

    pub fn increment(&self, s: usize, t: usize) -> GroupElement {
        let mut l1 = vec![0.0; self.dim];
        let mut l2 = vec![0.0; self.dim * self.dim];
        self.increment_into(s, t, &mut l1, &mut l2);
        GroupElement::new(l1, l2).expect("shapes match")
    }

    /// Global size `max_t max(|level1|_∞², |level2|_∞)`.
    pub fn scale(&self) -> f64 {
        (0..self.len()).fold(0.0f64, |m, i| {
            m.max(element_scale(self.level1_at(i), self.level2_at(i)))
        })
    }

    pub fn max_level2_abs(&self) -> f64 {
        self.level2.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Worst `|Sym(level2) - ½ level1⊗level1|` over all elements.
    pub fn max_sym_defect(&self) -> DefectReport {
        let mut report = DefectReport {
            index: 0,
            defect: 0.0,
            scale: self.scale(),
        };
        for i in 0..self.len() {
            let d = sym_defect(self.level1_at(i), self.level2_at(i));
            if d > report.defect {
                report.index = i;
                report.defect = d;
            }
        }
        report
    }

    pub(crate) fn level1_mut(&mut self) -> &mut [f64] {
        &mut self.level1
    }

    pub(crate) fn level2_mut(&mut self) -> &mut [f64] {
        &mut self.level2
    }

    pub fn check_same_grid(&self, other: &GroupPath) -> Result<()> {
        if self.t0 != other.t0
            || self.t1 != other.t1
            || self.level != other.level
            || self.dim != other.dim
        {
            return Err(Error::GridMismatch(format!(
                "[{}, {}] level {} dim {} vs [{}, {}] level {} dim {}",
                self.t0, self.t1, self.level, self.dim, other.t0, other.t1, other.level, other.dim
            )));
        }
        Ok(())
    }
}
