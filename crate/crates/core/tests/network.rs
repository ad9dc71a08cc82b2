use std::f64::consts::PI;

use proptest::prelude::*;
use zfnet::activation::phi_hat;
use zfnet::network::{
    build_network, dphi_apply, level_sites, make_target_from_density, rate_study, rotation_check, sigma_apply,
    test_grid, BuildInfo, RateStudyConfig, Smoother, Symmetrization,
};
use zfnet::quadrature::{compute_weights_with, QuadratureOptions};
use zfnet::sphere::{generate, generate_symmetric};
use zfnet::{
    ActivationSpec, Cutoff, PointCloud, PointKind, QuadratureRule, Rotation, SampleSet, SpherePoint, ZFNetwork,
};

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn p2(t: f64) -> f64 {
    1.5 * t * t - 0.5
}

fn p4(t: f64) -> f64 {
    (35.0 * t.powi(4) - 30.0 * t * t + 3.0) / 8.0
}

/// An antipodally closed Fibonacci rule of order `4n` on `S^2`.
fn site_rule(n: usize, seed: u64) -> QuadratureRule {
    let sites = level_sites(2, PointKind::FibonacciS2, 4 * n, 1.6, seed).unwrap();
    let rule = compute_weights_with(&sites, 4 * n, &QuadratureOptions::default()).unwrap();
    assert!(rule.is_exact());
    rule
}

fn unit(v: [f64; 3]) -> [f64; 3] {
    let n = dot(&v, &v).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

#[test]
fn smoothing_reproduces_even_polynomials() {
    let h = Cutoff::default_for(2);
    let grid = test_grid(2, 20_000, 5).unwrap();
    let z = unit([0.3, -0.2, 0.9]);
    let w = unit([-0.5, 0.5, 0.1]);
    for n in [4, 8] {
        let mu = site_rule(n, 1);
        let poly = |x: &[f64]| 0.7 + p2(dot(x, &z)) + if n >= 4 { p4(dot(x, &w)) } else { 0.0 };
        let samples = SampleSet::from_fn(mu.cloud().clone(), poly);
        let smoother = Smoother::new(&mu, &samples, n, &h).unwrap();
        assert!(!smoother.order_warning());
        let values = smoother.eval_cloud(&grid).unwrap();
        let err = grid
            .iter()
            .zip(&values)
            .map(|(x, v)| (poly(x) - v).abs())
            .fold(0.0, f64::max);
        assert!(
            err <= 10.0 * mu.residual() && err < 1e-7,
            "n={n}: {err:e} vs residual {:e}",
            mu.residual()
        );

        let ones = SampleSet::from_fn(mu.cloud().clone(), |_| 1.0);
        let one = sigma_apply(&mu, &ones, n, &h, &[0.0, 0.0, 1.0]).unwrap();
        assert!((one - 1.0).abs() <= 10.0 * mu.residual());
    }
}

#[test]
fn smoothing_is_linear() {
    let h = Cutoff::default_for(2);
    let mu = site_rule(4, 2);
    let f = SampleSet::from_fn(mu.cloud().clone(), |x| (3.0 * x[0]).sin());
    let g = SampleSet::from_fn(mu.cloud().clone(), |x| x[1] * x[2]);
    let mix = f.combine(2.0, &g, -0.5).unwrap();
    let x = [0.6, 0.0, 0.8];
    let lhs = sigma_apply(&mu, &mix, 4, &h, &x).unwrap();
    let rhs = 2.0 * sigma_apply(&mu, &f, 4, &h, &x).unwrap() - 0.5 * sigma_apply(&mu, &g, 4, &h, &x).unwrap();
    assert!((lhs - rhs).abs() < 1e-13);
    let other_sites = generate(2, PointKind::UniformRandom, mu.cloud().len(), 3).unwrap();
    let elsewhere = SampleSet::from_fn(other_sites, |_| 1.0);
    assert!(f.combine(1.0, &elsewhere, 1.0).is_err());
    assert!(sigma_apply(&mu, &elsewhere, 4, &h, &x).is_err());
}

#[test]
fn dphi_commutes_with_smoothing() {
    // f = P_2(x·z) + P_4(x·w) has D_φ f = P_2/φ̂(2) + P_4/φ̂(4) exactly
    let spec = ActivationSpec::new(0.0, 2).unwrap();
    let h = Cutoff::default_for(2);
    let n = 8;
    let mu = site_rule(n, 4);
    let z = unit([1.0, 2.0, 2.0]);
    let w = unit([0.0, -1.0, 1.0]);
    let (c2, c4) = (phi_hat(&spec, 1).unwrap(), phi_hat(&spec, 2).unwrap());
    let f = SampleSet::from_fn(mu.cloud().clone(), |x| p2(dot(x, &z)) + p4(dot(x, &w)));
    let df = SampleSet::from_fn(mu.cloud().clone(), |x| p2(dot(x, &z)) / c2 + p4(dot(x, &w)) / c4);
    let grid = test_grid(2, 500, 1).unwrap();
    let lhs = dphi_apply(&spec, &mu, &f, n, &h, &grid).unwrap();
    let rhs = Smoother::new(&mu, &df, n, &h).unwrap().eval_cloud(&grid).unwrap();
    for (a, b) in lhs.iter().zip(&rhs) {
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }
}

#[test]
fn network_evaluation() {
    let spec = ActivationSpec::new(0.0, 2).unwrap();
    let build = BuildInfo {
        mu_residual: 0.0,
        nu_residual: 0.0,
    };
    let x1 = SpherePoint::new(vec![0.0, 0.6, 0.8]).unwrap();
    let centers = PointCloud::from_points(std::slice::from_ref(&x1)).unwrap();
    let single = ZFNetwork::new(spec, 1, centers.clone(), vec![1.0], build).unwrap();
    let x = [0.48, 0.6, -0.64];
    assert!((single.eval(&x).unwrap() - dot(&x, x1.coords()).abs()).abs() < 1e-15);
    assert_eq!(single.coefficient_l1(), 1.0);
    let zero = ZFNetwork::new(spec, 1, centers.clone(), vec![0.0], build).unwrap();
    assert_eq!(zero.eval(&x).unwrap(), 0.0);
    assert_eq!(zero.coefficient_l1(), 0.0);
    assert!(ZFNetwork::new(spec, 1, centers, vec![1.0, 2.0], build).is_err());

    let cubic = ActivationSpec::new(1.0, 2).unwrap();
    let cloud = generate(2, PointKind::UniformRandom, 5, 3).unwrap();
    let a = vec![1.0, -2.0, 0.5, 0.0, 3.0];
    let b = vec![0.2, 0.2, -1.0, 4.0, 1.0];
    let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
    let na = ZFNetwork::new(cubic, 2, cloud.clone(), a, build).unwrap();
    let nb = ZFNetwork::new(cubic, 2, cloud.clone(), b, build).unwrap();
    let ns = ZFNetwork::new(cubic, 2, cloud, sum, build).unwrap();
    let y = [0.0, 0.0, -1.0];
    assert!((ns.eval(&y).unwrap() - na.eval(&y).unwrap() - nb.eval(&y).unwrap()).abs() < 1e-14);
    let again = ZFNetwork::from_json(&ns.to_json().unwrap()).unwrap();
    assert_eq!(again, ns);
}

#[test]
fn build_constant_target() {
    let spec = ActivationSpec::new(0.0, 2).unwrap();
    let h = Cutoff::default_for(2);
    let n = 8;
    let mu = site_rule(n, 10);
    let nu = site_rule(n, 11);
    let samples = SampleSet::from_fn(mu.cloud().clone(), |_| 1.0).symmetrize().0;
    let net = build_network(&spec, &mu, &nu, &samples, n, &h).unwrap();
    assert_eq!(net.coefficients().len(), nu.cloud().len());
    let grid = test_grid(2, 5000, 2).unwrap();
    let err = net
        .eval_cloud(&grid)
        .unwrap()
        .iter()
        .map(|g| (g - 1.0).abs())
        .fold(0.0, f64::max);
    assert!(err <= 0.05, "{err}");

    let zeros = SampleSet::from_fn(mu.cloud().clone(), |_| 0.0).symmetrize().0;
    let zero = build_network(&spec, &mu, &nu, &zeros, n, &h).unwrap();
    assert!(zero.coefficients().iter().all(|a| *a == 0.0));

    let raw = SampleSet::from_fn(mu.cloud().clone(), |_| 1.0);
    assert!(build_network(&spec, &mu, &nu, &raw, n, &h).is_err());
    assert!(matches!(
        build_network(&spec, &mu, &nu, &samples, 2 * n, &h),
        Err(zfnet::Error::Infeasible { .. })
    ));
}

#[test]
fn symmetrization() {
    let cloud = generate_symmetric(2, PointKind::UniformRandom, 4, 1).unwrap();
    let (even, how) = SampleSet::from_fn(cloud.clone(), |x| x[0] * x[1]).symmetrize();
    assert_eq!(how, Symmetrization::AlreadyEven);
    assert!(even.is_even());
    let (odd, how) = SampleSet::from_fn(cloud, |x| x[0]).symmetrize();
    assert!(matches!(how, Symmetrization::Averaged { .. }));
    assert!(odd.values().iter().all(|v| v.abs() < 1e-15));
}

#[test]
fn density_targets() {
    let spec = ActivationSpec::new(0.0, 2).unwrap();
    let opts = QuadratureOptions {
        probes: Some(200),
        ..QuadratureOptions::default()
    };
    let rule = QuadratureRule::product(2, 128, &opts).unwrap();
    let grid = test_grid(2, 300, 9).unwrap();
    // the kink of |t| along the great circle x^⊥ limits the rule to about 1e-3 relative
    let constant = make_target_from_density(&spec, |_| 3.0, &rule).unwrap();
    for x in grid.iter() {
        assert!((constant.eval(x) - 3.0 * 2.0 * PI).abs() < 3.0 * 2.0 * PI * 1e-3);
    }
    // Funk–Hecke: F = 1 + P_2(y·z) gives f = φ̂(0) + φ̂(2) P_2(x·z)
    let z = unit([0.2, 0.1, 1.0]);
    let band = make_target_from_density(&spec, |y| 1.0 + p2(dot(y, &z)), &rule).unwrap();
    for x in grid.iter() {
        let want = 2.0 * PI + PI / 2.0 * p2(dot(x, &z));
        assert!(
            (band.eval(x) - want).abs() < 2.0 * PI * 1e-3,
            "{} vs {want}",
            band.eval(x)
        );
        let minus: Vec<f64> = x.iter().map(|c| -c).collect();
        assert_eq!(band.eval(x), band.eval(&minus));
    }
    let coarse = QuadratureRule::from_weights(rule.cloud().clone(), vec![0.0; rule.cloud().len()], 128, &opts).unwrap();
    assert!(make_target_from_density(&spec, |_| 1.0, &coarse).is_err());
}

#[test]
fn short_rate_study() {
    let spec = ActivationSpec::new(0.0, 2).unwrap();
    let opts = QuadratureOptions {
        probes: Some(200),
        ..QuadratureOptions::default()
    };
    let rule = QuadratureRule::product(2, 128, &opts).unwrap();
    let z = unit([0.3, -0.5, 0.8]);
    let target = make_target_from_density(&spec, |y| dot(y, &z).exp(), &rule).unwrap();
    let mut config = RateStudyConfig::new(2, vec![1, 2, 3]);
    config.grid_size = 5000;
    let report = rate_study(&spec, |x| target.eval(x), &config).unwrap();
    assert!(report.skipped.is_empty());
    assert!(report.nonincreasing());
    assert!(report.mean_contraction() <= 0.35, "{:?}", report.errors());
    let l1 = report.coefficient_l1();
    let (lo, hi) = l1.iter().fold((f64::MAX, 0.0f64), |(a, b), v| (a.min(*v), b.max(*v)));
    assert!(hi / lo <= 2.0, "{l1:?}");
}

#[test]
fn cubic_activation_contracts_faster() {
    // theory 2^{-2(γ+1)} = 1/16 for γ = 1
    let spec = ActivationSpec::new(1.0, 2).unwrap();
    let opts = QuadratureOptions {
        probes: Some(200),
        ..QuadratureOptions::default()
    };
    let rule = QuadratureRule::product(2, 128, &opts).unwrap();
    let z = unit([0.3, -0.5, 0.8]);
    let target = make_target_from_density(&spec, |y| dot(y, &z).exp(), &rule).unwrap();
    let mut config = RateStudyConfig::new(2, vec![1, 2, 3]);
    config.grid_size = 5000;
    let report = rate_study(&spec, |x| target.eval(x), &config).unwrap();
    assert!(report.nonincreasing());
    assert!(report.mean_contraction() <= 0.2, "{:?}", report.errors());
}

#[test]
fn rotation_equivariance() {
    let spec = ActivationSpec::new(0.0, 2).unwrap();
    let h = Cutoff::default_for(2);
    let n = 4;
    let mu = site_rule(n, 20);
    let nu = site_rule(n, 21);
    let points = test_grid(2, 400, 4).unwrap();
    let smooth = |x: &[f64]| (x[0] - 0.5 * x[2]).cos() + x[1] * x[1];
    let id = rotation_check(&spec, smooth, &mu, &nu, n, &h, &Rotation::identity(2), &points).unwrap();
    assert_eq!(id, 0.0);
    for seed in 0..3 {
        let u = Rotation::random(2, seed);
        let c = rotation_check(&spec, |_| 1.0, &mu, &nu, n, &h, &u, &points).unwrap();
        assert!(c <= 1e-12, "{c}");
        let s = rotation_check(&spec, smooth, &mu, &nu, n, &h, &u, &points).unwrap();
        assert!(s <= 1e-9, "{s}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn networks_are_even(seed in any::<u64>(), g in prop::sample::select(vec![0.0, 0.25, 1.0])) {
        let spec = ActivationSpec::new(g, 2).unwrap();
        let centers = generate(2, PointKind::UniformRandom, 7, seed).unwrap();
        let coeffs: Vec<f64> = (0..7).map(|k| (k as f64 * 0.37 + seed as f64 * 1e-19).sin()).collect();
        let net = ZFNetwork::new(spec, 1, centers, coeffs, BuildInfo { mu_residual: 0.0, nu_residual: 0.0 }).unwrap();
        let x = generate(2, PointKind::UniformRandom, 1, seed ^ 1).unwrap();
        let minus: Vec<f64> = x.point(0).iter().map(|c| -c).collect();
        prop_assert_eq!(net.eval(x.point(0)).unwrap(), net.eval(&minus).unwrap());
    }
}
