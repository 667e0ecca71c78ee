//! The inhomogeneous rough-path metric, invariant suites and experiments.

mod experiments;
mod invariants;
mod report;
mod rho;

pub use experiments::{
    lipschitz_experiment, lipschitz_with_directions, oracle_compare, second_level_distance,
    seeded_directions, suite_flags, truncation_study, ExperimentConfig, LIPSCHITZ_SPREAD_TOL,
    RHO1_IDENTITY_TOL, SUITE_SEED, SUITE_TRIPLES,
};
pub use invariants::{
    chen_suite, geometricity_suite, random_dyadic_triples, second_level_chen_suite, SuiteReport,
    CHEN_TOL,
};
pub use report::{Flag, LiftReport, Metrics, Ratio, Versions};
pub use rho::{rho_metric, rho_metric_with, RhoValue};
