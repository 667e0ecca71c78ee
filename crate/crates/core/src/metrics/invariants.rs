//! Chen and weak-geometricity checks on lifted paths.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::group::{tensor_mul, GroupPath, MEMBERSHIP_TOL};
use crate::lift::SecondLevel;

/// Relative tolerance of the Chen check.
pub const CHEN_TOL: f64 = 1e-9;

/// Outcome of one invariant suite: the worst defect against `tolerance · scale`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub max_defect: f64,
    pub scale: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl SuiteReport {
    fn new(name: &str, checked: usize, max_defect: f64, scale: f64, tolerance: f64) -> Self {
        // An all-zero path has scale 0 and must have zero defect.
        let passed = max_defect.is_finite() && max_defect <= tolerance * scale;
        Self {
            name: name.to_string(),
            checked,
            max_defect,
            scale,
            tolerance,
            passed,
        }
    }

    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.max_defect / self.scale
        } else {
            self.max_defect
        }
    }
}

/// `count` seeded triples `s < t < u` of indices below `len` (requires `len >= 3`).
pub fn random_dyadic_triples(len: usize, count: usize, seed: u64) -> Vec<(usize, usize, usize)> {
    assert!(len >= 3, "need at least three grid points");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| loop {
            let mut v = [
                rng.gen_range(0..len),
                rng.gen_range(0..len),
                rng.gen_range(0..len),
            ];
            v.sort_unstable();
            if v[0] < v[1] && v[1] < v[2] {
                break (v[0], v[1], v[2]);
            }
        })
        .collect()
}

/// `max |X_{s,u} - X_{s,t} ⊗ X_{t,u}|` over seeded triples, against `max |level2|`.
pub fn chen_suite(path: &GroupPath, triples: usize, seed: u64) -> SuiteReport {
    let mut worst = 0.0f64;
    for (s, t, u) in random_dyadic_triples(path.len(), triples, seed) {
        let direct = path.increment(s, u);
        let composed = tensor_mul(&path.increment(s, t), &path.increment(t, u))
            .expect("increments share the path dimension");
        worst = worst.max(direct.max_abs_diff(&composed));
    }
    SuiteReport::new("chen", triples, worst, path.max_level2_abs(), CHEN_TOL)
}

/// `|Sym(level2) - ½ level1⊗level1|` over every element and over seeded increments.
pub fn geometricity_suite(path: &GroupPath, triples: usize, seed: u64) -> SuiteReport {
    let mut worst = path.max_sym_defect().defect;
    for (s, _, u) in random_dyadic_triples(path.len(), triples, seed) {
        worst = worst.max(path.increment(s, u).sym_defect());
    }
    SuiteReport::new(
        "weak_geometricity",
        path.len() + triples,
        worst,
        path.scale(),
        MEMBERSHIP_TOL,
    )
}

/// `𝕏_{s,u} - 𝕏_{s,t} - 𝕏_{t,u} = Y_{s,t} W_{t,u}` on seeded triples of one entry.
pub fn second_level_chen_suite(block: &SecondLevel, triples: usize, seed: u64) -> SuiteReport {
    let mut worst = 0.0f64;
    for (s, t, u) in random_dyadic_triples(block.len(), triples, seed) {
        worst = worst.max(block.chen_defect(s, t, u).abs());
    }
    let scale = block.max_abs(1.max(block.len() / 512));
    SuiteReport::new("second_level_chen", triples, worst, scale, CHEN_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{signature2_pl, GroupElement};
    use crate::path::SampledPath;

    #[test]
    fn triples_are_ordered_and_reproducible() {
        let a = random_dyadic_triples(17, 50, 4);
        assert_eq!(a, random_dyadic_triples(17, 50, 4));
        assert!(a.iter().all(|&(s, t, u)| s < t && t < u && u < 17));
    }

    #[test]
    fn signature_passes_both_suites() {
        let x = SampledPath::from_fn(0.0, 1.0, 8, 2, |t, v| {
            v[0] = (6.0 * t).sin();
            v[1] = t * t;
        })
        .unwrap();
        let g = signature2_pl(&x).unwrap();
        assert!(chen_suite(&g, 200, 1).passed);
        assert!(geometricity_suite(&g, 200, 1).passed);
    }

    #[test]
    fn corrupted_element_fails_geometricity() {
        let x = SampledPath::from_fn(0.0, 1.0, 4, 2, |t, v| {
            v[0] = t;
            v[1] = -t;
        })
        .unwrap();
        let g = signature2_pl(&x).unwrap();
        let mut elems: Vec<GroupElement> = (0..g.len()).map(|i| g.element(i)).collect();
        let mut l2 = elems[5].level2().to_vec();
        l2[0] += 0.1;
        elems[5] = GroupElement::new(elems[5].level1().to_vec(), l2).unwrap();
        let bad = GroupPath::from_elements(0.0, 1.0, 4, &elems).unwrap();
        assert!(!geometricity_suite(&bad, 10, 0).passed);
    }
}
