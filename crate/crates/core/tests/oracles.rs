//! Independent numerical oracles for the wavelet engine and the lift.

use std::f64::consts::PI;

use roughlift::extension::extend_path;
use roughlift::generate::PathGenerator;
use roughlift::group::signature2_pl;
use roughlift::lift::{
    build_model, md_norm, primitive_increment, reconstruct_coeffs, reconstruction_bound_diagnostic,
    rough_sobolev_norm, second_level, Lifter, ModelledDistribution, SecondLevel,
};
use roughlift::sobolev::sobolev_norm_path;
use roughlift::wavelet::{
    admissible_range, besov_norm_coeffs, build_family, default_family, pair_derivative,
    pair_function, BasisKind, CoefficientPyramid, DyadicIndex, Kernel, WaveletFamily, WaveletName,
};
use roughlift::{SampledPath, SobolevParams};

fn params() -> SobolevParams {
    SobolevParams::new(0.4, 4.0).unwrap()
}

fn seeded_scalar(seed: u64, level: u32) -> SampledPath {
    PathGenerator::new(default_family(), params())
        .generate(seed, level, 1)
        .unwrap()
}

/// `χ^n_k(y)` with the `L²` normalisation `2^{n/2} χ(2^n y - k)`.
fn basis(fam: &WaveletFamily, kind: BasisKind, idx: DyadicIndex, y: f64) -> f64 {
    let s = (1u64 << idx.n) as f64;
    let kernel = match kind {
        BasisKind::Father => Kernel::Phi,
        BasisKind::Mother => Kernel::Psi,
    };
    s.sqrt() * fam.eval(kernel, s * y - idx.k as f64)
}

fn supported_in(fam: &WaveletFamily, idx: DyadicIndex, a: f64, b: f64) -> bool {
    let (lo, hi) = fam.support();
    let s = (1u64 << idx.n) as f64;
    (idx.k as f64 + lo) / s >= a && (idx.k as f64 + hi) / s <= b
}

#[test]
fn derivative_pairing_matches_integration_by_parts() {
    let fam = default_family();
    let w = extend_path(&seeded_scalar(3, 12)).unwrap();
    let (lo, hi) = fam.support();
    let mut worst = 0.0f64;
    for (n, k) in [(2u32, 3i64), (4, 9), (5, 20), (6, 70)] {
        let idx = DyadicIndex::new(n, k);
        let got = pair_derivative(&w, BasisKind::Mother, idx, fam).unwrap();
        // -∫ W(y) (ψ^n_k)'(y) dy by the midpoint rule on a grid much finer than
        // both the samples and the table.
        let s = (1u64 << n) as f64;
        let (a, b) = ((k as f64 + lo) / s, (k as f64 + hi) / s);
        let cells = 1usize << 20;
        let h = (b - a) / cells as f64;
        let mut acc = 0.0;
        let mut v = [0.0];
        for i in 0..cells {
            let y = a + (i as f64 + 0.5) * h;
            w.interpolate(y, &mut v);
            acc += v[0] * s.powf(1.5) * fam.eval(Kernel::DPsi, s * y - k as f64);
        }
        worst = worst.max((got + acc * h).abs());
    }
    assert!(worst < 1e-6, "{worst:e}");
}

#[test]
fn parseval_at_level_ten() {
    let fam = default_family();
    for seed in [1u64, 2] {
        let f = extend_path(&seeded_scalar(seed, 12)).unwrap();
        let pyr = CoefficientPyramid::of_function(&f, fam, 10).unwrap();
        let h = f.step();
        let l2: f64 = (0..f.len() - 1)
            .map(|i| {
                let (a, b) = (f.value(i, 0), f.value(i + 1, 0));
                h * (a * a + a * b + b * b) / 3.0
            })
            .sum();
        let energy = pyr.energy();
        assert!((energy / l2 - 1.0).abs() < 0.01, "{energy} vs {l2}");
    }
}

#[test]
fn gram_matrix_is_identity() {
    let fam = default_family();
    let mut indices = vec![];
    for k in -1..=1 {
        indices.push((BasisKind::Father, DyadicIndex::new(0, k)));
    }
    for n in 0..=3u32 {
        for k in -3..=3 {
            indices.push((BasisKind::Mother, DyadicIndex::new(n, k)));
        }
    }
    let window = (-12.0, 12.0);
    let sampled: Vec<SampledPath> = indices
        .iter()
        .map(|&(kind, idx)| {
            SampledPath::from_scalar_fn(window.0, window.1, 13, |y| basis(fam, kind, idx, y))
                .unwrap()
        })
        .collect();
    let mut worst = 0.0f64;
    for (i, f) in sampled.iter().enumerate() {
        for (j, &(kind, idx)) in indices.iter().enumerate() {
            assert!(supported_in(fam, idx, window.0, window.1));
            let g = pair_function(f, kind, idx, fam).unwrap();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g - target).abs());
        }
    }
    assert!(worst < 1e-5, "{worst:e}");
}

#[test]
fn father_projection_reproduces_linear_functions() {
    let fam = default_family();
    // Wide enough that every father function touching [0, 1] is fully sampled.
    let f = SampledPath::from_scalar_fn(-16.0, 16.0, 13, |y| y).unwrap();
    let (k0, k1) = admissible_range(fam, 0, (0.0, 1.0));
    let coeffs: Vec<(i64, f64)> = (k0..=k1)
        .map(|k| {
            let idx = DyadicIndex::new(0, k);
            (k, pair_function(&f, BasisKind::Father, idx, fam).unwrap())
        })
        .collect();
    let mut worst = 0.0f64;
    for i in 1..64 {
        let y = i as f64 / 64.0;
        let proj: f64 = coeffs
            .iter()
            .map(|&(k, c)| c * fam.eval(Kernel::Phi, y - k as f64))
            .sum();
        worst = worst.max((proj - y).abs());
    }
    assert!(worst < 1e-5, "{worst:e}");
}

#[test]
fn cascade_converges_in_depth() {
    let a = build_family(WaveletName::Db8, 10).unwrap();
    let b = build_family(WaveletName::Db8, 12).unwrap();
    let (lo, hi) = a.support();
    let worst = (0..=(1 << 12))
        .map(|i| lo + (hi - lo) * i as f64 / (1 << 12) as f64)
        .map(|x| (a.eval(Kernel::Psi, x) - b.eval(Kernel::Psi, x)).abs())
        .fold(0.0f64, f64::max);
    assert!(worst < 1e-5, "{worst:e}");
}

#[test]
fn derivative_pairing_is_linear() {
    let fam = default_family();
    let w1 = extend_path(&seeded_scalar(4, 11)).unwrap();
    let w2 = extend_path(&seeded_scalar(5, 11)).unwrap();
    let (a, b) = (1.7, -0.3);
    let combo = w1
        .map_values(|v| a * v)
        .unwrap()
        .add_scaled(&w2, b)
        .unwrap();
    for (n, k) in [(0u32, 0i64), (3, 5), (7, 100)] {
        let idx = DyadicIndex::new(n, k);
        let p = |w: &SampledPath| pair_derivative(w, BasisKind::Mother, idx, fam).unwrap();
        let lhs = p(&combo);
        let rhs = a * p(&w1) + b * p(&w2);
        assert!(
            (lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()),
            "{lhs} vs {rhs}"
        );
    }
}

#[test]
fn quadratic_path_has_vanishing_interior_coefficients() {
    let fam = default_family();
    let w = SampledPath::from_scalar_fn(-1.0, 2.0, 13, |t| t * t).unwrap();
    let pyr = CoefficientPyramid::of_derivative(&w, fam, 8).unwrap();
    let mut worst = 0.0f64;
    for level in pyr.levels() {
        for (k, c) in level.iter() {
            if supported_in(fam, DyadicIndex::new(level.n(), k), -1.0, 2.0) {
                worst = worst.max(c.abs());
            }
        }
    }
    assert!(worst < 1e-7, "{worst:e}");
}

#[test]
fn model_norm_converges_in_truncation() {
    let fam = default_family();
    let w = extend_path(&seeded_scalar(6, 12)).unwrap();
    let a = build_model(&w, &params(), fam, 8).unwrap().pi_norm();
    let b = build_model(&w, &params(), fam, 10).unwrap().pi_norm();
    assert!((a / b - 1.0).abs() < 0.02, "{a} vs {b}");
}

#[test]
fn linear_path_model_has_only_father_terms() {
    let fam = default_family();
    let w = SampledPath::from_scalar_fn(-1.0, 2.0, 11, |t| 2.0 - 0.5 * t).unwrap();
    let model = build_model(&w, &params(), fam, 6).unwrap();
    let only_father = CoefficientPyramid::from_fn(fam, (-1.0, 2.0), 6, |kind, idx| match kind {
        BasisKind::Father => model.deriv_pyramid().base().get(idx.k),
        BasisKind::Mother => 0.0,
    });
    let base_only = besov_norm_coeffs(&only_father, params().alpha() - 1.0, params().p());
    let interior_max = model
        .deriv_pyramid()
        .levels()
        .iter()
        .flat_map(|l| {
            l.iter()
                .filter(|&(k, _)| supported_in(fam, DyadicIndex::new(l.n(), k), -1.0, 2.0))
                .map(|(_, c)| c.abs())
                .collect::<Vec<_>>()
        })
        .fold(0.0f64, f64::max);
    assert!(interior_max < 1e-9, "{interior_max:e}");
    assert!(model.pi_norm() >= base_only);
}

#[test]
fn modelled_norm_is_comparable_to_sobolev_norm() {
    for seed in [7u64, 8, 9] {
        let y = extend_path(&seeded_scalar(seed, 11)).unwrap();
        let md = md_norm(&y, &params()).unwrap();
        let sob = sobolev_norm_path(&y, &params(), &[0.0]).unwrap();
        let r = md / sob;
        assert!((0.25..=4.0).contains(&r), "ratio {r}");
    }
}

#[test]
fn reconstruction_of_trivial_coefficients() {
    let fam = default_family();
    let w = extend_path(&seeded_scalar(10, 11)).unwrap();
    let model = build_model(&w, &params(), fam, 7).unwrap();
    let one = SampledPath::from_scalar_fn(-1.0, 2.0, 11, |_| 1.0).unwrap();
    let pyr = reconstruct_coeffs(
        &ModelledDistribution::new(&one, &params()).unwrap(),
        &model,
        fam,
        7,
    )
    .unwrap();
    assert_eq!(&pyr, model.deriv_pyramid());
    let zero = one.map_values(|_| 0.0).unwrap();
    let pyr = reconstruct_coeffs(
        &ModelledDistribution::new(&zero, &params()).unwrap(),
        &model,
        fam,
        7,
    )
    .unwrap();
    assert_eq!(pyr.energy(), 0.0);
}

#[test]
fn primitive_is_additive_and_recovers_the_path() {
    let fam = default_family();
    let grid = 14;
    let w = SampledPath::from_scalar_fn(0.0, 1.0, grid, |t| (2.0 * PI * t).cos()).unwrap();
    let we = extend_path(&w).unwrap();
    let model = build_model(&we, &params(), fam, 10).unwrap();
    let pyr = model.deriv_pyramid();
    assert_eq!(primitive_increment(pyr, fam, 0.3, 0.3), 0.0);
    let (s, t, u) = (0.125, 0.4, 0.8125);
    let split = primitive_increment(pyr, fam, s, t) + primitive_increment(pyr, fam, t, u);
    assert!((primitive_increment(pyr, fam, s, u) - split).abs() < 1e-12);
    let mut worst = 0.0f64;
    for i in 0..=64 {
        let t = i as f64 / 64.0;
        let z = primitive_increment(pyr, fam, 0.0, t);
        let idx = w.index_of(t).unwrap();
        worst = worst.max((z - (w.value(idx, 0) - w.value(0, 0))).abs());
    }
    assert!(worst < 1e-5 * w.sup_norm(), "{worst:e}");
}

#[test]
fn second_level_is_bilinear() {
    let fam = default_family();
    let y1 = seeded_scalar(11, 10);
    let y2 = seeded_scalar(12, 10);
    let w = seeded_scalar(13, 10);
    let (a, b) = (2.5, -1.25);
    let combo = y1
        .map_values(|v| a * v)
        .unwrap()
        .add_scaled(&y2, b)
        .unwrap();
    let e = |y: &SampledPath, w: &SampledPath| second_level(y, w, &params(), fam, 7).unwrap();
    let (l, r1, r2) = (e(&combo, &w), e(&y1, &w), e(&y2, &w));
    let (l2, s1) = (e(&w, &combo), e(&w, &y1));
    let s2 = e(&w, &y2);
    let mut worst = 0.0f64;
    for (s, t) in [(0usize, 1024usize), (100, 700), (513, 514)] {
        worst = worst.max((l.value(s, t) - a * r1.value(s, t) - b * r2.value(s, t)).abs());
        worst = worst.max((l2.value(s, t) - a * s1.value(s, t) - b * s2.value(s, t)).abs());
    }
    assert!(worst < 1e-12, "{worst:e}");
}

#[test]
fn one_dimensional_lift_is_forced() {
    let fam = default_family();
    let x = seeded_scalar(14, 10);
    let lift = Lifter::new(fam, params(), 7).lift(&x).unwrap();
    for t in 0..lift.path.len() {
        let d = x.value(t, 0) - x.value(0, 0);
        assert_eq!(lift.path.level1_at(t)[0], d);
        assert!((lift.path.level2_at(t)[0] - 0.5 * d * d).abs() < 1e-14 * (1.0 + d * d));
    }
}

#[test]
fn lift_level_one_is_the_input_and_zero_lifts_to_identity() {
    let fam = default_family();
    let x = PathGenerator::new(fam, params())
        .generate(15, 10, 3)
        .unwrap();
    let lift = Lifter::new(fam, params(), 7).lift(&x).unwrap();
    assert_eq!(lift.blocks.len(), 9);
    for t in 0..x.len() {
        for j in 0..3 {
            assert_eq!(lift.path.level1_at(t)[j], x.value(t, j) - x.value(0, j));
        }
    }
    let zero = x.map_values(|_| 0.0).unwrap();
    let lz = Lifter::new(fam, params(), 7).lift(&zero).unwrap();
    assert_eq!(lz.path.max_level2_abs(), 0.0);
    assert_eq!(rough_sobolev_norm(&lz.path, &params()).unwrap(), 0.0);
}

#[test]
fn bound_diagnostic_for_constant_coefficient_is_truncation_error() {
    let fam = default_family();
    let p = params();
    let y = SampledPath::from_scalar_fn(-1.0, 2.0, 12, |_| 0.7).unwrap();
    let md = ModelledDistribution::new(&y, &p).unwrap();
    // Smooth driver: the truncation error is negligible and the ratio vanishes.
    let smooth = SampledPath::from_scalar_fn(0.0, 1.0, 12, |t| (2.0 * PI * t).cos()).unwrap();
    let model = build_model(&extend_path(&smooth).unwrap(), &p, fam, 10).unwrap();
    let d = reconstruction_bound_diagnostic(&md, &model, &p, fam, 10).unwrap();
    assert!(d.ratio < 1e-4, "{}", d.ratio);
    // Rough driver: the ratio shrinks as the truncation level grows.
    let w = extend_path(&seeded_scalar(16, 12)).unwrap();
    let r = |n: u32| {
        let m = build_model(&w, &p, fam, n).unwrap();
        reconstruction_bound_diagnostic(&md, &m, &p, fam, n)
            .unwrap()
            .ratio
    };
    let (a, b) = (r(6), r(10));
    assert!(b < a, "{a} then {b}");
}

fn truncation_sweep(levels: &[u32]) -> (Vec<f64>, Vec<f64>) {
    let fam = default_family();
    let p = params();
    let gen = PathGenerator::new(fam, p);
    let w = extend_path(&seeded_scalar(16, 12)).unwrap();
    let y = extend_path(&seeded_scalar(17, 12)).unwrap();
    let md = ModelledDistribution::new(&y, &p).unwrap();
    let x = gen.generate(19, 12, 2).unwrap();
    levels
        .iter()
        .map(|&n| {
            let model = build_model(&w, &p, fam, n).unwrap();
            let diag = reconstruction_bound_diagnostic(&md, &model, &p, fam, n).unwrap();
            let lift = Lifter::new(fam, p, n).lift(&x).unwrap();
            (diag.ratio, rough_sobolev_norm(&lift.path, &p).unwrap())
        })
        .unzip()
}

// Below the grid resolution the omitted detail `Y_s W^{>N}_{s,t}` still
// enters the second level, so both quantities shrink as `N` grows.
#[test]
fn truncation_residual_decreases_with_level() {
    let (diag, rough) = truncation_sweep(&[6, 8, 10]);
    for v in [&diag, &rough] {
        assert!(v.windows(2).all(|w| w[1] < w[0]), "{v:?}");
    }
}

#[test]
#[ignore = "fails: the truncation residual dominates at resolvable levels"]
fn truncation_stability_at_two_levels() {
    let (diag, rough) = truncation_sweep(&[8, 10]);
    assert!((diag[0] / diag[1] - 1.0).abs() < 0.1, "{diag:?}");
    assert!((rough[0] / rough[1] - 1.0).abs() < 0.05, "{rough:?}");
}

#[test]
fn linear_path_rough_norm_matches_closed_form() {
    let p = params();
    let c = [0.6, -0.8];
    let x = SampledPath::from_fn(0.0, 1.0, 12, 2, |t, v| {
        v[0] = c[0] * t;
        v[1] = c[1] * t;
    })
    .unwrap();
    let b1 = (1.0 - p.alpha()) * p.p();
    let exact = (2.0 / (b1 * (b1 + 1.0))).powf(1.0 / p.p());
    let got = rough_sobolev_norm(&signature2_pl(&x).unwrap(), &p).unwrap();
    assert!((got / exact - 1.0).abs() < 0.05, "{got} vs {exact}");
}

#[test]
fn generated_paths_have_stable_besov_norm() {
    let fam = default_family();
    let gen = PathGenerator::new(fam, params());
    let norms: Vec<f64> = [10u32, 12, 14]
        .iter()
        .map(|&level| {
            let x = gen.generate(21, level, 1).unwrap();
            let pyr = CoefficientPyramid::of_function(&x, fam, level - 2).unwrap();
            besov_norm_coeffs(&pyr, params().alpha(), params().p())
        })
        .collect();
    for w in norms.windows(2) {
        let r = w[1] / w[0];
        assert!((0.8..=1.25).contains(&r), "{norms:?}");
    }
}

#[test]
fn second_level_of_constant_is_zero() {
    let fam = default_family();
    let w = extend_path(&seeded_scalar(18, 11)).unwrap();
    let model = build_model(&w, &params(), fam, 7).unwrap();
    let zero = SampledPath::from_scalar_fn(-1.0, 2.0, 11, |_| 0.0).unwrap();
    let md = ModelledDistribution::new(&zero, &params()).unwrap();
    let block = SecondLevel::from_parts(&md, &model, fam, 7).unwrap();
    assert_eq!(block.max_abs(1), 0.0);
}
