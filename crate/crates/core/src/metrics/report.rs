use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::wavelet::WaveletFamily;

/// A ratio with the tolerance it was tested against, if any.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ratio {
    pub value: Option<f64>,
    pub tolerance: Option<f64>,
    pub rule: String,
}

/// A pass flag; only hard flags decide the overall verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flag {
    pub passed: bool,
    pub hard: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub norms: BTreeMap<String, Option<f64>>,
    pub ratios: BTreeMap<String, Ratio>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Versions {
    pub wavelet: String,
    pub refine_depth: u32,
}

impl Versions {
    pub fn of(fam: &WaveletFamily) -> Self {
        Self {
            wavelet: fam.name().label().to_string(),
            refine_depth: fam.refine_depth(),
        }
    }
}

/// Machine-readable result of a command or experiment.
///
/// Non-finite values are stored as `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftReport {
    pub experiment: String,
    pub config: serde_json::Value,
    pub metrics: Metrics,
    pub pass_flags: BTreeMap<String, Flag>,
    pub pass: bool,
    pub versions: Versions,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<String>,
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

impl LiftReport {
    pub fn new(experiment: &str, config: serde_json::Value, fam: &WaveletFamily) -> Self {
        Self {
            experiment: experiment.to_string(),
            config,
            metrics: Metrics::default(),
            pass_flags: BTreeMap::new(),
            pass: true,
            versions: Versions::of(fam),
            errors: Vec::new(),
        }
    }

    pub fn norm(&mut self, name: impl Into<String>, value: f64) -> &mut Self {
        self.metrics.norms.insert(name.into(), finite(value));
        self
    }

    pub fn ratio(
        &mut self,
        name: impl Into<String>,
        value: f64,
        tolerance: Option<f64>,
        rule: &str,
    ) -> &mut Self {
        self.metrics.ratios.insert(
            name.into(),
            Ratio {
                value: finite(value),
                tolerance,
                rule: rule.to_string(),
            },
        );
        self
    }

    pub fn flag(&mut self, name: impl Into<String>, passed: bool, hard: bool) -> &mut Self {
        self.pass_flags.insert(name.into(), Flag { passed, hard });
        self.pass = self.pass_flags.values().all(|f| f.passed || !f.hard);
        self
    }

    /// Records a failed hard check together with its error message.
    pub fn fail(&mut self, name: impl Into<String>, message: String) -> &mut Self {
        self.errors.push(message);
        self.flag(name, false, true)
    }

    pub fn get_norm(&self, name: &str) -> Option<f64> {
        self.metrics.norms.get(name).copied().flatten()
    }

    pub fn get_ratio(&self, name: &str) -> Option<f64> {
        self.metrics.ratios.get(name).and_then(|r| r.value)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serialisable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavelet::default_family;

    #[test]
    fn soft_flags_do_not_decide() {
        let mut r = LiftReport::new("t", serde_json::Value::Null, default_family());
        r.flag("soft", false, false);
        assert!(r.pass);
        r.flag("hard", false, true);
        assert!(!r.pass);
    }

    #[test]
    fn non_finite_values_round_trip_as_null() {
        let mut r = LiftReport::new("t", serde_json::json!({"a": 1}), default_family());
        r.norm("x", f64::NAN)
            .ratio("y", 2.0, Some(4.0), "max/min <= tolerance");
        let back: LiftReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.get_norm("x"), None);
        assert_eq!(back.get_ratio("y"), Some(2.0));
    }
}
