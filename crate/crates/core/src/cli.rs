//! Command-line front end.
//!
//! Exit codes: 0 pass, 1 invariant failure, 2 configuration error, 3 IO error.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::error::{Error, Result};
use crate::extension::extend_path;
use crate::generate::PathGenerator;
use crate::group::MEMBERSHIP_TOL;
use crate::io::{read_group_path_csv, read_path_csv, write_group_path_csv, write_path_csv};
use crate::lift::{rough_sobolev_norm, Lifter};
use crate::metrics::{
    lipschitz_experiment, oracle_compare, suite_flags, truncation_study, ExperimentConfig,
    LiftReport,
};
use crate::params::SobolevParams;
use crate::path::SampledPath;
use crate::sobolev::{sobolev_norm, sobolev_seminorm};
use crate::wavelet::{
    besov_norm_coeffs, build_family, default_family, CoefficientPyramid, WaveletFamily,
    WaveletName, DEFAULT_REFINE_DEPTH,
};

pub const DEFAULT_ALPHA: f64 = 0.4;
pub const DEFAULT_P: f64 = 4.0;
pub const DEFAULT_GRID_LEVEL: u32 = 11;
pub const DEFAULT_TRUNCATION: u32 = 8;

#[derive(Debug, Parser)]
#[command(
    name = "roughlift",
    version,
    about = "Rough path lifts of fractional Sobolev paths"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by all commands.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Regularity exponent in (1/3, 1/2) [default: 0.4]
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    /// Integrability exponent, greater than 1/alpha [default: 4]
    #[arg(long, global = true)]
    pub p: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = WaveletName::Db8)]
    pub wavelet: WaveletName,
    #[arg(long, global = true, default_value_t = DEFAULT_REFINE_DEPTH)]
    pub refine_depth: u32,
    #[arg(long, global = true, default_value_t = DEFAULT_GRID_LEVEL)]
    pub grid_level: u32,
    /// Truncation level N of the wavelet expansion
    #[arg(long = "levels", global = true, default_value_t = DEFAULT_TRUNCATION)]
    pub truncation: u32,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 2)]
    pub dim: usize,
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a seeded random path as CSV
    Generate,
    /// Lift a path CSV to a group path CSV and a JSON report
    Lift,
    /// Sobolev and wavelet norms of a path CSV
    Norms,
    /// Run the invariant suites on a group path CSV
    Check,
    /// Run an experiment and write its JSON report
    Experiment {
        #[command(subcommand)]
        kind: ExperimentKind,
    },
    /// Write the wavelet tables as CSV
    Tabulate,
}

#[derive(Debug, Subcommand)]
pub enum ExperimentKind {
    /// Ratio of rough-path distance to path distance under perturbations
    Lipschitz {
        /// Perturbation sizes in (0, 1)
        #[arg(long, value_delimiter = ',', default_values_t = [1e-1, 1e-2, 1e-3])]
        eps: Vec<f64>,
        /// Seeds of the perturbation directions
        #[arg(long, value_delimiter = ',', default_values_t = [0u64, 1, 2, 3, 4])]
        seeds: Vec<u64>,
    },
    /// Rough norm of the lift as the truncation level grows
    Truncation {
        #[arg(long = "n-list", value_delimiter = ',', default_values_t = [6u32, 7, 8, 9])]
        n_list: Vec<u32>,
    },
    /// Distance between the lift and the piecewise-linear signature
    Oracle,
}

impl Common {
    pub fn params(&self) -> Result<SobolevParams> {
        SobolevParams::new(
            self.alpha.unwrap_or(DEFAULT_ALPHA),
            self.p.unwrap_or(DEFAULT_P),
        )
    }

    fn family(&self) -> Result<std::borrow::Cow<'static, WaveletFamily>> {
        if self.wavelet == WaveletName::Db8 && self.refine_depth == DEFAULT_REFINE_DEPTH {
            Ok(std::borrow::Cow::Borrowed(default_family()))
        } else {
            Ok(std::borrow::Cow::Owned(build_family(
                self.wavelet,
                self.refine_depth,
            )?))
        }
    }

    fn input(&self) -> Result<&Path> {
        self.input
            .as_deref()
            .ok_or_else(|| Error::InvalidInput("--in is required".into()))
    }

    fn output(&self) -> Result<&Path> {
        self.out
            .as_deref()
            .ok_or_else(|| Error::InvalidInput("--out is required".into()))
    }

    fn echo(&self, params: &SobolevParams, fam: &WaveletFamily) -> serde_json::Value {
        json!({
            "params": params,
            "wavelet": fam.name().label(),
            "refine_depth": fam.refine_depth(),
            "grid_level": self.grid_level,
            "N": self.truncation,
            "seed": self.seed,
            "dim": self.dim,
            "input": self.input,
            "out": self.out,
        })
    }
}

/// Result of a command: the report, if any, and whether all hard checks passed.
#[derive(Debug)]
pub struct Outcome {
    pub report: Option<LiftReport>,
    pub pass: bool,
}

impl Outcome {
    fn done() -> Self {
        Self {
            report: None,
            pass: true,
        }
    }

    fn from_report(report: LiftReport) -> Self {
        Self {
            pass: report.pass,
            report: Some(report),
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

fn write_report(path: Option<&Path>, report: &LiftReport) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, report.to_json() + "\n").map_err(|e| Error::io(p, e)),
        None => {
            println!("{}", report.to_json());
            Ok(())
        }
    }
}

/// Input path from `--in`, or a seeded path when no file is given.
fn input_or_generated(
    c: &Common,
    params: &SobolevParams,
    fam: &WaveletFamily,
) -> Result<(SampledPath, serde_json::Value)> {
    match &c.input {
        Some(p) => {
            let (x, rec) = read_path_csv(p)?;
            Ok((x, serde_json::to_value(rec).expect("serialisable")))
        }
        None => {
            let x = PathGenerator::new(fam, *params).generate(c.seed, c.grid_level, c.dim)?;
            Ok((
                x,
                json!({ "generated": { "seed": c.seed, "grid_level": c.grid_level } }),
            ))
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let c = &cli.common;
    let params = c.params()?;
    match &cli.command {
        Command::Generate => cmd_generate(c, &params),
        Command::Lift => cmd_lift(c, &params),
        Command::Norms => cmd_norms(c, &params),
        Command::Check => cmd_check(c, &params),
        Command::Experiment { kind } => cmd_experiment(c, &params, kind),
        Command::Tabulate => {
            c.family()?.write_csv(c.output()?)?;
            Ok(Outcome::done())
        }
    }
}

fn cmd_generate(c: &Common, params: &SobolevParams) -> Result<Outcome> {
    let out = c.output()?;
    let fam = c.family()?;
    let x = PathGenerator::new(&fam, *params).generate(c.seed, c.grid_level, c.dim)?;
    write_path_csv(out, &x)?;
    Ok(Outcome::done())
}

fn cmd_lift(c: &Common, params: &SobolevParams) -> Result<Outcome> {
    let (x, rec) = read_path_csv(c.input()?)?;
    let out = c.output()?;
    let fam = c.family()?;
    let lift = Lifter::new(&fam, *params, c.truncation).lift(&x)?;
    write_group_path_csv(out, &lift.path)?;
    let mut config = c.echo(params, &fam);
    config["grid_level"] = json!(x.level());
    config["resampling"] = json!(rec);
    let mut report = LiftReport::new("lift", config, &fam);
    for (j, v) in lift.pi_norms.iter().enumerate() {
        report.norm(format!("pi_norm_{}", j + 1), *v);
    }
    for (j, v) in lift.md_norms.iter().enumerate() {
        report.norm(format!("md_norm_{}", j + 1), *v);
    }
    report.norm("rough_norm", rough_sobolev_norm(&lift.path, params)?);
    suite_flags(&mut report, "lift", &lift.path);
    write_report(c.report.as_deref(), &report)?;
    Ok(Outcome::from_report(report))
}

fn cmd_norms(c: &Common, params: &SobolevParams) -> Result<Outcome> {
    let (x, rec) = read_path_csv(c.input()?)?;
    let fam = c.family()?;
    let mut config = c.echo(params, &fam);
    config["grid_level"] = json!(x.level());
    config["resampling"] = json!(rec);
    let mut report = LiftReport::new("norms", config, &fam);
    report.norm("sobolev_norm", sobolev_norm(&x, params)?);
    report.norm("sobolev_seminorm", sobolev_seminorm(&x, params)?);
    for j in 0..x.dim() {
        let ext = extend_path(&x.component(j)?)?;
        let pyr = CoefficientPyramid::of_function(&ext, &fam, c.truncation)?;
        report.norm(
            format!("besov_norm_{}", j + 1),
            besov_norm_coeffs(&pyr, params.alpha(), params.p()),
        );
    }
    write_report(c.report.as_deref().or(c.out.as_deref()), &report)?;
    Ok(Outcome::from_report(report))
}

/// Compares `alpha` and `p` given on the command line with the ones stored in a
/// lift report.
fn check_metadata(c: &Common, report_path: &Path) -> Result<()> {
    let text = std::fs::read_to_string(report_path).map_err(|e| Error::io(report_path, e))?;
    let meta: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
        row: e.line(),
        msg: format!("report {}: {e}", report_path.display()),
    })?;
    for (name, flag) in [("alpha", c.alpha), ("p", c.p)] {
        let stored = meta["config"]["params"][name].as_f64();
        if let (Some(given), Some(stored)) = (flag, stored) {
            if given != stored {
                return Err(Error::ConfigMismatch(format!(
                    "{name} = {given} on the command line, {stored} in {}",
                    report_path.display()
                )));
            }
        }
    }
    Ok(())
}

fn cmd_check(c: &Common, params: &SobolevParams) -> Result<Outcome> {
    if let Some(r) = &c.report {
        check_metadata(c, r)?;
    }
    let input = c.input()?;
    let g = read_group_path_csv(input)?;
    let fam = c.family()?;
    let mut config = c.echo(params, &fam);
    config["grid_level"] = json!(g.level());
    let mut report = LiftReport::new("check", config, &fam);
    let defect = g.max_sym_defect();
    let tol = MEMBERSHIP_TOL * defect.scale;
    if defect.defect > tol {
        let err = Error::GroupMembershipViolated {
            index: defect.index,
            defect: defect.defect,
            tol,
        };
        eprintln!("{err}");
        report.fail("group_membership", err.to_string());
    } else {
        report.flag("group_membership", true, true);
    }
    suite_flags(&mut report, "input", &g);
    if report.pass {
        report.norm("rough_norm", rough_sobolev_norm(&g, params)?);
    }
    write_report(c.out.as_deref(), &report)?;
    Ok(Outcome::from_report(report))
}

fn cmd_experiment(c: &Common, params: &SobolevParams, kind: &ExperimentKind) -> Result<Outcome> {
    let fam = c.family()?;
    let (x, source) = input_or_generated(c, params, &fam)?;
    let mut report = match kind {
        ExperimentKind::Lipschitz { eps, seeds } => {
            let cfg = ExperimentConfig::new(
                *params,
                c.truncation,
                eps.clone(),
                seeds.clone(),
                x.level(),
            )?;
            lipschitz_experiment(&x, &cfg, &fam)?
        }
        ExperimentKind::Truncation { n_list } => truncation_study(&x, params, n_list, &fam)?,
        ExperimentKind::Oracle => oracle_compare(&x, params, c.truncation, &fam)?,
    };
    report.config["source"] = source;
    write_report(c.report.as_deref().or(c.out.as_deref()), &report)?;
    Ok(Outcome::from_report(report))
}
