//! Lipschitz, truncation and oracle experiments.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::PathGenerator;
use crate::group::{signature2_pl, GroupPath};
use crate::lift::{rough_sobolev_norm, Lift, Lifter, SecondLevel};
use crate::metrics::invariants::{chen_suite, geometricity_suite};
use crate::metrics::report::LiftReport;
use crate::metrics::rho::rho_metric;
use crate::params::SobolevParams;
use crate::path::SampledPath;
use crate::quadrature::{center_indices, default_quad_level, upper_pair_sum, Pow};
use crate::sobolev::sobolev_seminorm;
use crate::wavelet::WaveletFamily;

/// Largest `max/min` of the Lipschitz ratios accepted per direction.
pub const LIPSCHITZ_SPREAD_TOL: f64 = 4.0;
/// Relative tolerance of `ρ^{(1)} = ‖X - X̃‖`.
pub const RHO1_IDENTITY_TOL: f64 = 0.01;
/// Number of random triples used by the invariant suites in reports.
pub const SUITE_TRIPLES: usize = 500;
/// Seed of the triples used by the invariant suites in reports.
pub const SUITE_SEED: u64 = 0;

/// Offset between path seeds and perturbation-direction seeds.
const DIRECTION_SEED_OFFSET: u64 = 0x5EED_0000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub params: SobolevParams,
    #[serde(rename = "N")]
    pub truncation: u32,
    pub perturbation_eps: Vec<f64>,
    pub seeds: Vec<u64>,
    pub grid_level: u32,
}

impl ExperimentConfig {
    pub fn new(
        params: SobolevParams,
        truncation: u32,
        perturbation_eps: Vec<f64>,
        seeds: Vec<u64>,
        grid_level: u32,
    ) -> Result<Self> {
        let cfg = Self {
            params,
            truncation,
            perturbation_eps,
            seeds,
            grid_level,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        crate::params::validate_params(self.params.alpha(), self.params.p())?;
        if self.perturbation_eps.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "at least 3 perturbation sizes are required, got {}",
                self.perturbation_eps.len()
            )));
        }
        if let Some(e) = self
            .perturbation_eps
            .iter()
            .find(|e| !(**e > 0.0 && **e < 1.0))
        {
            return Err(Error::InvalidInput(format!(
                "perturbation size {e} is outside (0, 1)"
            )));
        }
        if self.seeds.is_empty() {
            return Err(Error::InvalidInput("no seeds given".into()));
        }
        Ok(())
    }

    fn echo(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config is serialisable")
    }
}

/// `(∬ |A_{s,t} - B_{s,t}|^{p/2} / |t - s|^{alpha p + 1} ds dt)^{2/p}` for one
/// second-level entry, both orders of `(s, t)` included.
pub fn second_level_distance(
    a: &SecondLevel,
    b: &SecondLevel,
    params: &SobolevParams,
) -> Result<f64> {
    if a.len() != b.len() || a.grid_level() != b.grid_level() {
        return Err(Error::GridMismatch(
            "second-level entries differ in grid".into(),
        ));
    }
    let q = default_quad_level(a.grid_level());
    let idx = center_indices(a.grid_level(), a.len() - 1, q)?;
    let h = 1.0 / (1u64 << q) as f64;
    let pow = Pow::new(0.5 * params.p());
    let diff = |s: usize, t: usize| pow.of((a.value(s, t) - b.value(s, t)).abs());
    let sum = upper_pair_sum(idx.len(), h, params.kernel_exponent(), |i, j| {
        diff(idx[i], idx[j]) + diff(idx[j], idx[i])
    });
    Ok(sum.powf(2.0 / params.p()))
}

fn spread(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    if min > 0.0 {
        max / min
    } else {
        f64::NAN
    }
}

fn lift_report_norms(report: &mut LiftReport, prefix: &str, lift: &Lift) {
    for (j, v) in lift.pi_norms.iter().enumerate() {
        report.norm(format!("{prefix}pi_norm_{}", j + 1), *v);
    }
    for (j, v) in lift.md_norms.iter().enumerate() {
        report.norm(format!("{prefix}md_norm_{}", j + 1), *v);
    }
}

/// One Lipschitz cell: the lift of `X + eps V` compared with the lift of `X`.
struct Cell {
    ratio: f64,
    rho1_rel_err: f64,
    aux: f64,
    rho_total: f64,
    denominator: f64,
}

fn lipschitz_cell(
    base: &Lift,
    x: &SampledPath,
    v: &SampledPath,
    eps: f64,
    lifter: &Lifter,
    params: &SobolevParams,
) -> Result<Cell> {
    let xt = x.add_scaled(v, eps)?;
    let lt = lifter.lift(&xt)?;
    let rho = rho_metric(&base.path, &lt.path, params)?;
    let denominator = sobolev_seminorm(&xt.add_scaled(x, -1.0)?, params)?;
    let mut aux = 0.0f64;
    for (a, b) in base.blocks.iter().zip(&lt.blocks) {
        aux = aux.max(second_level_distance(a, b, params)?);
    }
    let div = |num: f64| {
        if denominator > 0.0 {
            num / denominator
        } else {
            f64::NAN
        }
    };
    Ok(Cell {
        ratio: div(rho.total),
        rho1_rel_err: if denominator > 0.0 {
            (rho.rho1 / denominator - 1.0).abs()
        } else {
            rho.rho1
        },
        aux: div(aux),
        rho_total: rho.total,
        denominator,
    })
}

/// Lipschitz experiment for explicitly given perturbation directions.
///
/// For each direction `V` and each `eps` the ratio
/// `ρ(L(X), L(X + eps V)) / ‖eps V‖` is recorded; a direction passes when the
/// ratios spread by at most [`LIPSCHITZ_SPREAD_TOL`] and `ρ^{(1)}` matches the
/// denominator within [`RHO1_IDENTITY_TOL`].
pub fn lipschitz_with_directions(
    x: &SampledPath,
    directions: &[(String, SampledPath)],
    config: &ExperimentConfig,
    fam: &WaveletFamily,
) -> Result<LiftReport> {
    config.validate()?;
    let params = config.params;
    let lifter = Lifter::new(fam, params, config.truncation);
    let base = lifter.lift(x)?;
    let mut report = LiftReport::new("lipschitz", config.echo(), fam);
    lift_report_norms(&mut report, "", &base);
    report.norm("path_seminorm", sobolev_seminorm(x, &params)?);
    let cells: Vec<(usize, f64)> = (0..directions.len())
        .flat_map(|d| config.perturbation_eps.iter().map(move |&e| (d, e)))
        .collect();
    let results = cells
        .par_iter()
        .map(|&(d, eps)| lipschitz_cell(&base, x, &directions[d].1, eps, &lifter, &params))
        .collect::<Result<Vec<_>>>()?;
    let per = config.perturbation_eps.len();
    for (d, (name, _)) in directions.iter().enumerate() {
        let row = &results[d * per..(d + 1) * per];
        for (cell, eps) in row.iter().zip(&config.perturbation_eps) {
            let key = format!("{name}/eps={eps:e}");
            report.norm(format!("{key}/rho"), cell.rho_total);
            report.norm(format!("{key}/difference_norm"), cell.denominator);
            report.ratio(
                format!("{key}/ratio"),
                cell.ratio,
                None,
                "rho / difference norm",
            );
            report.ratio(
                format!("{key}/rho1_relative_error"),
                cell.rho1_rel_err,
                Some(RHO1_IDENTITY_TOL),
                "|rho1 / difference norm - 1| <= tolerance",
            );
            report.ratio(
                format!("{key}/second_level_ratio"),
                cell.aux,
                None,
                "max second-level distance / difference norm (report only)",
            );
        }
        let ratios: Vec<f64> = row.iter().map(|c| c.ratio).collect();
        let s = spread(&ratios);
        report.ratio(
            format!("{name}/ratio_spread"),
            s,
            Some(LIPSCHITZ_SPREAD_TOL),
            "max / min over eps <= tolerance",
        );
        report.flag(
            format!("{name}/ratio_stable"),
            s <= LIPSCHITZ_SPREAD_TOL,
            true,
        );
        let identity = row.iter().all(|c| c.rho1_rel_err <= RHO1_IDENTITY_TOL);
        report.flag(format!("{name}/rho1_identity"), identity, true);
    }
    Ok(report)
}

/// Seeded directions `V_seed` from the path generator, one per configured seed.
pub fn seeded_directions(
    config: &ExperimentConfig,
    fam: &WaveletFamily,
    level: u32,
    dim: usize,
) -> Result<Vec<(String, SampledPath)>> {
    let gen = PathGenerator::new(fam, config.params);
    config
        .seeds
        .iter()
        .map(|&s| {
            Ok((
                format!("seed={s}"),
                gen.generate(s + DIRECTION_SEED_OFFSET, level, dim)?,
            ))
        })
        .collect()
}

/// Lipschitz experiment with one seeded random direction per configured seed.
pub fn lipschitz_experiment(
    x: &SampledPath,
    config: &ExperimentConfig,
    fam: &WaveletFamily,
) -> Result<LiftReport> {
    if x.level() != config.grid_level {
        return Err(Error::ConfigMismatch(format!(
            "path grid level {} differs from configured grid level {}",
            x.level(),
            config.grid_level
        )));
    }
    let dirs = seeded_directions(config, fam, x.level(), x.dim())?;
    lipschitz_with_directions(x, &dirs, config, fam)
}

/// Rough norms of the lift of `x` at each truncation level and their successive
/// relative changes.
pub fn truncation_study(
    x: &SampledPath,
    params: &SobolevParams,
    levels: &[u32],
    fam: &WaveletFamily,
) -> Result<LiftReport> {
    if levels.is_empty() || levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(
            "truncation levels must be non-empty and strictly ascending".into(),
        ));
    }
    let config = serde_json::json!({ "params": params, "N_list": levels, "grid_level": x.level() });
    let mut report = LiftReport::new("truncation", config, fam);
    let norms = levels
        .iter()
        .map(|&n| rough_sobolev_norm(&Lifter::new(fam, *params, n).lift(x)?.path, params))
        .collect::<Result<Vec<f64>>>()?;
    for (n, v) in levels.iter().zip(&norms) {
        report.norm(format!("rough_norm/N={n}"), *v);
    }
    let deltas: Vec<f64> = norms
        .windows(2)
        .map(|w| (w[1] / w[0] - 1.0).abs())
        .collect();
    for (w, d) in levels.windows(2).zip(&deltas) {
        report.ratio(
            format!("delta/N={}->{}", w[0], w[1]),
            *d,
            None,
            "|norm(N') / norm(N) - 1|",
        );
    }
    report.flag("norms_finite", norms.iter().all(|v| v.is_finite()), true);
    report.flag(
        "deltas_decreasing",
        deltas.windows(2).all(|w| w[1] <= w[0]),
        false,
    );
    Ok(report)
}

/// Distance between the reconstruction lift and the piecewise-linear signature
/// of `x`, with both lifts run through the invariant suites.
///
/// Closeness is reported, never asserted.
pub fn oracle_compare(
    x: &SampledPath,
    params: &SobolevParams,
    n: u32,
    fam: &WaveletFamily,
) -> Result<LiftReport> {
    let config = serde_json::json!({ "params": params, "N": n, "grid_level": x.level() });
    let mut report = LiftReport::new("oracle", config, fam);
    let lift = Lifter::new(fam, *params, n).lift(x)?;
    let oracle = signature2_pl(x)?;
    let rho = rho_metric(&lift.path, &oracle, params)?;
    lift_report_norms(&mut report, "", &lift);
    report
        .norm("rho1", rho.rho1)
        .norm("rho2", rho.rho2)
        .norm("rho", rho.total)
        .norm("rough_norm/lift", rough_sobolev_norm(&lift.path, params)?)
        .norm("rough_norm/oracle", rough_sobolev_norm(&oracle, params)?);
    report.flag("distance_finite", rho.total.is_finite(), true);
    suite_flags(&mut report, "lift", &lift.path);
    suite_flags(&mut report, "oracle", &oracle);
    Ok(report)
}

/// Runs the Chen and weak-geometricity suites and records them as hard flags.
pub fn suite_flags(report: &mut LiftReport, prefix: &str, path: &GroupPath) {
    for suite in [
        chen_suite(path, SUITE_TRIPLES, SUITE_SEED),
        geometricity_suite(path, SUITE_TRIPLES, SUITE_SEED),
    ] {
        report.norm(
            format!("{prefix}/{}/max_defect", suite.name),
            suite.max_defect,
        );
        report.ratio(
            format!("{prefix}/{}/relative_defect", suite.name),
            suite.relative(),
            Some(suite.tolerance),
            "max defect / scale <= tolerance",
        );
        report.flag(format!("{prefix}/{}", suite.name), suite.passed, true);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavelet::default_family;
    use std::f64::consts::PI;

    fn params() -> SobolevParams {
        SobolevParams::new(0.4, 4.0).unwrap()
    }

    fn config(eps: Vec<f64>) -> ExperimentConfig {
        ExperimentConfig {
            params: params(),
            truncation: 6,
            perturbation_eps: eps,
            seeds: vec![1],
            grid_level: 8,
        }
    }

    #[test]
    fn config_validation() {
        assert!(config(vec![0.1, 0.01, 0.001]).validate().is_ok());
        assert!(config(vec![0.1, 0.01]).validate().is_err());
        assert!(config(vec![0.1, 0.01, 1.0]).validate().is_err());
        assert!(config(vec![0.1, 0.0, 0.5]).validate().is_err());
    }

    #[test]
    fn zero_perturbation_has_zero_distance() {
        let fam = default_family();
        let x = crate::generate::generate_sobolev_path(&params(), 2, 8, 2).unwrap();
        let lifter = Lifter::new(fam, params(), 6);
        let base = lifter.lift(&x).unwrap();
        let cell = lipschitz_cell(&base, &x, &x, 0.0, &lifter, &params()).unwrap();
        assert_eq!(cell.rho_total, 0.0);
        assert!(cell.ratio.is_nan());
    }

    #[test]
    fn scaling_direction_is_stable() {
        let fam = default_family();
        let x = crate::generate::generate_sobolev_path(&params(), 5, 8, 2).unwrap();
        let cfg = config(vec![0.1, 0.01, 0.001]);
        let r = lipschitz_with_directions(&x, &[("scale".into(), x.clone())], &cfg, fam).unwrap();
        assert!(r.pass, "{}", r.to_json());
    }

    #[test]
    fn truncation_levels_must_ascend() {
        let fam = default_family();
        let x = SampledPath::from_fn(0.0, 1.0, 8, 2, |t, v| {
            v[0] = t;
            v[1] = t * t;
        })
        .unwrap();
        assert!(truncation_study(&x, &params(), &[6, 5], fam).is_err());
        let r = truncation_study(&x, &params(), &[6], fam).unwrap();
        assert_eq!(r.metrics.norms.len(), 1);
        assert!(r.metrics.ratios.is_empty());
    }

    #[test]
    fn oracle_of_loop_and_zero_path() {
        let fam = default_family();
        let loop_path = SampledPath::from_fn(0.0, 1.0, 8, 2, |t, v| {
            v[0] = (2.0 * PI * t).sin();
            v[1] = (2.0 * PI * t).cos();
        })
        .unwrap();
        let r = oracle_compare(&loop_path, &params(), 6, fam).unwrap();
        assert!(r.pass, "{}", r.to_json());
        assert!(r.get_norm("rho").unwrap() > 0.0);
        let zero = SampledPath::from_fn(0.0, 1.0, 8, 2, |_, v| v.fill(0.0)).unwrap();
        let r = oracle_compare(&zero, &params(), 6, fam).unwrap();
        assert_eq!(r.get_norm("rho"), Some(0.0));
    }
}
