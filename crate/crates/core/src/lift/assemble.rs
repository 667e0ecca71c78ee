use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::extend_path;
use crate::group::{norm_unchecked, GroupPath};
use crate::lift::model::{build_model, ModelledDistribution, SobolevModel};
use crate::lift::second_level::{SecondLevel, BASE_INTERVAL};
use crate::params::SobolevParams;
use crate::path::SampledPath;
use crate::quadrature::{
    center_indices, default_quad_level, upper_pair_sum, upper_pair_sum_scratch, Pow,
};
use crate::wavelet::WaveletFamily;

/// Relative tolerance of the membership check performed during assembly.
pub const ASSEMBLY_TOL: f64 = 1e-8;

/// Assembles `X_x = (X_{0,x}, 𝕏_{0,x} + F_x)` with
/// `F^{ij}_x = ½ (X^i_{0,x} X^j_{0,x} - 𝕏^{ij}_{0,x} - 𝕏^{ji}_{0,x})`.
///
/// `xx` holds the `d × d` second-level entries in row-major order.
pub fn assemble_lift(x: &SampledPath, xx: &[SecondLevel]) -> Result<GroupPath> {
    let d = x.dim();
    if xx.len() != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            found: xx.len(),
        });
    }
    if x.t0() != BASE_INTERVAL.0 || x.t1() != BASE_INTERVAL.1 {
        return Err(Error::GridMismatch("lifts are assembled on [0, 1]".into()));
    }
    let n = x.len();
    if let Some(bad) = xx
        .iter()
        .find(|b| b.len() != n || b.grid_level() != x.level())
    {
        return Err(Error::GridMismatch(format!(
            "second-level entry has {} points at level {}, path has {n} at level {}",
            bad.len(),
            bad.grid_level(),
            x.level()
        )));
    }
    let mut lift = GroupPath::identity(x.t0(), x.t1(), x.level(), d)?;
    let origin = x.point(0).to_vec();
    for t in 0..n {
        let inc: Vec<f64> = x.point(t).iter().zip(&origin).map(|(a, b)| a - b).collect();
        lift.level1_mut()[t * d..(t + 1) * d].copy_from_slice(&inc);
        let row = &mut lift.level2_mut()[t * d * d..(t + 1) * d * d];
        // `𝕏 + F` written as `½ X⊗X + Antisym(𝕏)`, which is the same sum but
        // keeps the symmetric part exact up to rounding of the output itself.
        for i in 0..d {
            for j in 0..d {
                let anti = 0.5 * (xx[i * d + j].value(0, t) - xx[j * d + i].value(0, t));
                row[i * d + j] = 0.5 * inc[i] * inc[j] + anti;
            }
        }
    }
    let report = lift.max_sym_defect();
    let tol = ASSEMBLY_TOL * report.scale;
    if report.defect > tol {
        return Err(Error::GroupMembershipViolated {
            index: report.index,
            defect: report.defect,
            tol,
        });
    }
    Ok(lift)
}

/// A lift together with the pieces it was assembled from.
#[derive(Debug, Clone)]
pub struct Lift {
    pub path: GroupPath,
    pub blocks: Vec<SecondLevel>,
    pub pi_norms: Vec<f64>,
    pub md_norms: Vec<f64>,
    pub truncation: u32,
}

/// Lifts paths on `[0, 1]` at a fixed truncation level.
#[derive(Debug, Clone, Copy)]
pub struct Lifter<'a> {
    fam: &'a WaveletFamily,
    params: SobolevParams,
    truncation: u32,
}

impl<'a> Lifter<'a> {
    pub fn new(fam: &'a WaveletFamily, params: SobolevParams, truncation: u32) -> Self {
        Self {
            fam,
            params,
            truncation,
        }
    }

    /// Extends each component, builds one model and one modelled distribution
    /// per component, and reconstructs every ordered pair `(i, j)`.
    pub fn lift(&self, x: &SampledPath) -> Result<Lift> {
        let d = x.dim();
        let mut models: Vec<SobolevModel> = Vec::with_capacity(d);
        let mut mds: Vec<ModelledDistribution> = Vec::with_capacity(d);
        for j in 0..d {
            let ext = extend_path(&x.component(j)?)?;
            models.push(build_model(&ext, &self.params, self.fam, self.truncation)?);
            mds.push(ModelledDistribution::new(&ext, &self.params)?);
        }
        let mut blocks = Vec::with_capacity(d * d);
        for md in &mds {
            for model in &models {
                blocks.push(SecondLevel::from_parts(
                    md,
                    model,
                    self.fam,
                    self.truncation,
                )?);
            }
        }
        let path = assemble_lift(x, &blocks)?;
        Ok(Lift {
            path,
            blocks,
            pi_norms: models.iter().map(|m| m.pi_norm()).collect(),
            md_norms: mds.iter().map(|m| m.norm()).collect(),
            truncation: self.truncation,
        })
    }
}

pub fn lift_path(
    x: &SampledPath,
    params: &SobolevParams,
    fam: &WaveletFamily,
    n: u32,
) -> Result<Lift> {
    Lifter::new(fam, *params, n).lift(x)
}

/// `(∬ ‖X_s^{-1} ⊗ X_t‖^p / |t - s|^{alpha p + 1} ds dt)^{1/p}` with the
/// homogeneous norm in place of the Carnot–Carathéodory norm.
pub fn rough_sobolev_norm_with(lift: &GroupPath, params: &SobolevParams, q: u32) -> Result<f64> {
    let d = lift.dim();
    let cells = lift.len() - 1;
    let per_unit = 1usize << lift.level();
    if !cells.is_multiple_of(per_unit) {
        return Err(Error::GridMismatch(
            "group path length is not whole units".into(),
        ));
    }
    let idx = center_indices(lift.level(), cells, q)?;
    let h = 1.0 / (1u64 << q) as f64;
    let p = params.p();
    let pow = Pow::new(p);
    let upper = upper_pair_sum_scratch(
        idx.len(),
        h,
        params.kernel_exponent(),
        || (vec![0.0; d], vec![0.0; d * d]),
        |(b1, b2), i, j| {
            lift.increment_into(idx[i], idx[j], b1, b2);
            pow.of(norm_unchecked(b1, b2))
        },
    );
    Ok((2.0 * upper).powf(1.0 / p))
}

pub fn rough_sobolev_norm(lift: &GroupPath, params: &SobolevParams) -> Result<f64> {
    rough_sobolev_norm_with(lift, params, default_quad_level(lift.level()))
}

/// Indicator-function form of the reconstruction bound for one entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundDiagnostic {
    pub pi_norm: f64,
    pub md_norm: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    #[serde(rename = "N")]
    pub n: u32,
    pub alpha: f64,
    pub p: f64,
    pub wavelet: String,
    pub refine_depth: u32,
}

/// `LHS = (∬_{0≤x<y≤1} |Z_{x,y} - Y_x W_{x,y}|^{p/2} / (y - x)^{alpha p + 1})^{2/p}`,
/// `RHS = pi_norm · md_norm`.
pub fn reconstruction_bound_diagnostic(
    md: &ModelledDistribution,
    model: &SobolevModel,
    params: &SobolevParams,
    fam: &WaveletFamily,
    n: u32,
) -> Result<BoundDiagnostic> {
    let block = SecondLevel::from_parts(md, model, fam, n)?;
    let level = model.path().level();
    let q = default_quad_level(level);
    let idx = center_indices(level, block.len() - 1, q)?;
    let h = 1.0 / (1u64 << q) as f64;
    let half = 0.5 * params.p();
    let pow = Pow::new(half);
    let sum = upper_pair_sum(idx.len(), h, params.kernel_exponent(), |i, j| {
        pow.of(block.value(idx[i], idx[j]).abs())
    });
    let lhs = sum.powf(1.0 / half);
    let rhs = model.pi_norm() * md.norm();
    Ok(BoundDiagnostic {
        pi_norm: model.pi_norm(),
        md_norm: md.norm(),
        lhs,
        rhs,
        ratio: if rhs > 0.0 { lhs / rhs } else { 0.0 },
        n,
        alpha: params.alpha(),
        p: params.p(),
        wavelet: fam.name().label().to_string(),
        refine_depth: fam.refine_depth(),
    })
}
