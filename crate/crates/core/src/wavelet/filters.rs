use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Daubechies extremal-phase low-pass filters, normalised to `sum h_k = sqrt(2)`.
#[allow(clippy::excessive_precision)]
const DB6: [f64; 12] = [
    0.111_540_743_350_109_46,
    0.494_623_890_398_453_1,
    0.751_133_908_021_095_4,
    0.315_250_351_709_197_6,
    -0.226_264_693_965_439_8,
    -0.129_766_867_567_261_94,
    0.097_501_605_587_323_05,
    0.027_522_865_530_305_73,
    -0.031_582_039_317_486_03,
    0.000_553_842_201_161_496_1,
    0.004_777_257_510_945_511,
    -0.001_077_301_085_308_479_6,
];

#[allow(clippy::excessive_precision)]
const DB8: [f64; 16] = [
    0.054_415_842_243_104_01,
    0.312_871_590_914_299_97,
    0.675_630_736_297_289_8,
    0.585_354_683_654_206_7,
    -0.015_829_105_256_349_306,
    -0.284_015_542_961_546_93,
    0.000_472_484_573_913_282_8,
    0.128_747_426_620_478_46,
    -0.017_369_301_001_807_546,
    -0.044_088_253_930_794_75,
    0.013_981_027_917_398_282,
    0.008_746_094_047_405_777,
    -0.004_870_352_993_451_574,
    -0.000_391_740_373_376_947,
    0.000_675_449_406_450_569_4,
    -0.000_117_476_784_124_769_53,
];

/// Supported wavelet families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum WaveletName {
    Db6,
    Db8,
}

impl WaveletName {
    pub fn label(self) -> &'static str {
        match self {
            WaveletName::Db6 => "db6",
            WaveletName::Db8 => "db8",
        }
    }

    /// Low-pass filter `h_k` with `sum h_k = sqrt(2)`.
    pub fn lowpass(self) -> &'static [f64] {
        match self {
            WaveletName::Db6 => &DB6,
            WaveletName::Db8 => &DB8,
        }
    }

    /// Number of vanishing moments of the mother wavelet.
    pub fn vanishing_moments(self) -> usize {
        self.lowpass().len() / 2
    }

    /// Hölder exponent of the scaling function (published values).
    pub fn holder_regularity(self) -> f64 {
        match self {
            WaveletName::Db6 => 2.1891,
            WaveletName::Db8 => 2.7608,
        }
    }
}

impl fmt::Display for WaveletName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for WaveletName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "db6" => Ok(WaveletName::Db6),
            "db8" => Ok(WaveletName::Db8),
            other => Err(Error::InvalidInput(format!("unknown wavelet '{other}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filters_are_orthonormal() {
        for name in [WaveletName::Db6, WaveletName::Db8] {
            let h = name.lowpass();
            let sum: f64 = h.iter().sum();
            assert!((sum - 2f64.sqrt()).abs() < 1e-14);
            for shift in (0..h.len()).step_by(2) {
                let dot: f64 = (0..h.len() - shift).map(|k| h[k] * h[k + shift]).sum();
                let expect = if shift == 0 { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-14, "{name} shift {shift}: {dot}");
            }
        }
    }

    #[test]
    fn high_pass_kills_low_moments() {
        for name in [WaveletName::Db6, WaveletName::Db8] {
            let h = name.lowpass();
            let l = h.len();
            for m in 0..name.vanishing_moments() as i32 {
                let s: f64 = (0..l)
                    .map(|k| {
                        let g = if k % 2 == 0 { 1.0 } else { -1.0 } * h[l - 1 - k];
                        g * (k as f64).powi(m)
                    })
                    .sum();
                let scale = (l as f64).powi(m);
                assert!(s.abs() < 1e-11 * scale, "{name} moment {m}: {s}");
            }
        }
    }

    #[test]
    fn parses_names() {
        assert_eq!("DB8".parse::<WaveletName>().unwrap(), WaveletName::Db8);
        assert!("haar".parse::<WaveletName>().is_err());
    }
}
