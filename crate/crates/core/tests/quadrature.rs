use std::f64::consts::PI;

use proptest::prelude::*;
use zfnet::orthopoly::gauss_jacobi;
use zfnet::quadrature::{
    compute_weights, compute_weights_with, exactness_residual, order_search, regularity_estimate, reproducing_kernel,
    QuadratureOptions, ReproducingKernel, DEFAULT_TRUNCATION,
};
use zfnet::sphere::{generate, generate_symmetric};
use zfnet::{PointCloud, PointKind, QuadratureRule, Rotation, SpherePoint};

/// `Σ_{ℓ≤n} (2ℓ+1)/(4π) P_ℓ(t)` with Bonnet's recurrence for the classical
/// Legendre polynomials.
fn legendre_kernel(n: usize, t: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, t);
    let mut sum = 1.0;
    if n >= 1 {
        sum += 3.0 * t;
    }
    for l in 1..n {
        let p2 = ((2 * l + 1) as f64 * t * p1 - l as f64 * p0) / (l + 1) as f64;
        sum += (2 * l + 3) as f64 * p2;
        p0 = p1;
        p1 = p2;
    }
    sum / (4.0 * PI)
}

fn fibonacci_400_rule() -> QuadratureRule {
    let cloud = generate(2, PointKind::FibonacciS2, 400, 0).unwrap();
    compute_weights(&cloud, 12, DEFAULT_TRUNCATION).unwrap()
}

#[test]
fn reproducing_kernel_values() {
    for t in [-1.0, 0.0, 0.5] {
        assert!((reproducing_kernel(2, 0, t).unwrap() - 1.0 / (4.0 * PI)).abs() < 1e-15);
        assert!((reproducing_kernel(2, 1, t).unwrap() - (1.0 + 3.0 * t) / (4.0 * PI)).abs() < 1e-15);
        assert!((reproducing_kernel(3, 0, t).unwrap() - 1.0 / (2.0 * PI * PI)).abs() < 1e-15);
    }
    for n in [2, 7, 20, 41] {
        for i in 0..=20 {
            let t = -1.0 + i as f64 / 10.0;
            let want = legendre_kernel(n, t);
            let got = reproducing_kernel(2, n, t).unwrap();
            assert!(
                (got - want).abs() < 1e-12 * (n * n) as f64,
                "n={n} t={t}: {got} vs {want}"
            );
        }
    }
    assert!(reproducing_kernel(2, 3, 1.5).is_err());
}

#[test]
fn reproducing_kernel_integrates_to_one() {
    for q in [2, 3, 5] {
        let a = q as f64 / 2.0 - 1.0;
        let rule = gauss_jacobi(a, a, 60).unwrap();
        let omega = zfnet::sphere::surface_area(q - 1);
        for n in [0, 1, 5, 30] {
            let k = ReproducingKernel::new(q, n).unwrap();
            let total = omega * rule.integrate(|t| k.eval(t).unwrap());
            assert!((total - 1.0).abs() < 1e-12, "q={q} n={n}: {total}");
        }
    }
}

#[test]
fn analytic_rules() {
    let single = PointCloud::from_points(&[SpherePoint::basis(2, 1)]).unwrap();
    let rule = compute_weights(&single, 0, DEFAULT_TRUNCATION).unwrap();
    assert!((rule.weights()[0] - 4.0 * PI).abs() < 1e-12);
    assert!(rule.residual() < 1e-15);
    let p = SpherePoint::new(vec![0.2, -0.4, 0.7]).unwrap();
    let pair = PointCloud::from_points(&[p.clone(), p.antipode()]).unwrap();
    let rule = compute_weights(&pair, 1, DEFAULT_TRUNCATION).unwrap();
    for w in rule.weights() {
        assert!((w - 2.0 * PI).abs() < 1e-12);
    }
    assert!(rule.residual() < 1e-13);
    assert!(rule.diagnostics().folded);
}

#[test]
fn fibonacci_rule_of_order_twelve() {
    let rule = fibonacci_400_rule();
    let d = rule.diagnostics();
    assert!(rule.residual() < 1e-8, "{d:?}");
    assert!((d.weight_sum - 4.0 * PI).abs() < 1e-8);
    assert!(d.min_weight > 0.0 && !rule.has_negative_weights());
    assert!(rule.is_exact());
    assert_eq!(d.rank, 169);
}

#[test]
fn under_resolved_cloud_is_detected() {
    let cloud = generate(2, PointKind::UniformRandom, 10, 4).unwrap();
    let rule = compute_weights(&cloud, 12, DEFAULT_TRUNCATION).unwrap();
    assert!(rule.residual() > 1e-3, "{}", rule.residual());
    assert!(!rule.is_exact());
}

#[test]
fn residual_examples() {
    let single = PointCloud::from_points(&[SpherePoint::basis(2, 0)]).unwrap();
    let rule = QuadratureRule::from_weights(single, vec![4.0 * PI], 0, &QuadratureOptions::default()).unwrap();
    assert!(exactness_residual(&rule, 100, 1).unwrap() < 1e-15);
    let wrong = QuadratureRule::from_weights(rule.cloud().clone(), vec![1.0, 2.0], 0, &QuadratureOptions::default());
    assert!(wrong.is_err());
}

#[test]
fn order_search_examples() {
    let single = PointCloud::from_points(&[SpherePoint::basis(2, 0)]).unwrap();
    assert_eq!(order_search(&single, 1e-8).unwrap(), 0);
    let pair = single.with_antipodes();
    assert_eq!(order_search(&pair, 1e-8).unwrap(), 1);
    let fib = generate(2, PointKind::FibonacciS2, 400, 0).unwrap();
    assert!(order_search(&fib, 1e-8).unwrap() >= 12);
}

#[test]
fn rules_integrate_polynomials() {
    let rule = fibonacci_400_rule();
    let product = QuadratureRule::product(3, 10, &QuadratureOptions::default()).unwrap();
    assert!(product.is_exact());
    assert!((product.diagnostics().weight_sum - 2.0 * PI * PI).abs() < 1e-12);
    // ∫_{S^2} (x·a)^k = 4π/(k+1) for even k, |a| = 1
    let a = [0.48, -0.6, 0.64];
    for k in 0..=12 {
        let got = rule.integrate(|x| (x[0] * a[0] + x[1] * a[1] + x[2] * a[2]).powi(k));
        let want = if k % 2 == 0 { 4.0 * PI / (k + 1) as f64 } else { 0.0 };
        assert!((got - want).abs() < 1e-9, "k={k}: {got} vs {want}");
    }
}

#[test]
fn rotating_the_cloud_keeps_the_weights() {
    let cloud = generate(2, PointKind::FibonacciS2, 200, 0).unwrap();
    let base = compute_weights(&cloud, 8, DEFAULT_TRUNCATION).unwrap();
    for seed in 0..3 {
        let u = Rotation::random(2, seed);
        let rotated = compute_weights(&u.rotate_cloud(&cloud).unwrap(), 8, DEFAULT_TRUNCATION).unwrap();
        for (a, b) in base.weights().iter().zip(rotated.weights()) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
    }
}

#[test]
fn weights_are_bit_reproducible() {
    let cloud = generate_symmetric(2, PointKind::UniformRandom, 150, 8).unwrap();
    let a = compute_weights(&cloud, 10, DEFAULT_TRUNCATION).unwrap();
    let b = compute_weights(&cloud, 10, DEFAULT_TRUNCATION).unwrap();
    let bits = |r: &QuadratureRule| r.weights().iter().map(|w| w.to_bits()).collect::<Vec<_>>();
    assert_eq!(bits(&a), bits(&b));
}

#[test]
fn folded_and_full_solves_agree() {
    let closed = generate_symmetric(2, PointKind::UniformRandom, 120, 2).unwrap();
    let folded = compute_weights(&closed, 10, DEFAULT_TRUNCATION).unwrap();
    assert!(folded.diagnostics().folded);
    // a tiny perturbation breaks the exact pairing and forces the full solve
    let mut data = closed.as_flat().to_vec();
    data[0] += 1e-9;
    let full = compute_weights(&PointCloud::from_flat(2, data).unwrap(), 10, DEFAULT_TRUNCATION).unwrap();
    assert!(!full.diagnostics().folded);
    for (a, b) in folded.weights().iter().zip(full.weights()) {
        assert!((a - b).abs() < 1e-6, "{a} vs {b}");
    }
}

#[test]
fn regularity() {
    let single = PointCloud::from_points(&[SpherePoint::basis(2, 0)]).unwrap();
    let d = 0.3f64;
    let atom = QuadratureRule::from_weights(single, vec![d * d], 0, &QuadratureOptions::default()).unwrap();
    let est = regularity_estimate(&atom, d, 0, 0).unwrap();
    assert!((est.value - 1.0).abs() < 1e-12);
    assert!(regularity_estimate(&atom, 0.0, 10, 0).is_err());

    let cloud = generate(2, PointKind::FibonacciS2, 400, 0).unwrap();
    let values: Vec<f64> = [8usize, 12, 16]
        .iter()
        .map(|&n| {
            let rule = compute_weights(&cloud, n, DEFAULT_TRUNCATION).unwrap();
            regularity_estimate(&rule, 1.0 / n as f64, 2000, 1).unwrap().value
        })
        .collect();
    let mean = values.iter().sum::<f64>() / 3.0;
    assert!(values.iter().all(|v| (v / mean - 1.0).abs() <= 0.5), "{values:?}");

    // equal masses η^q at separation η stay bounded at d = η
    let pruned = zfnet::sphere::prune_close(&cloud).unwrap();
    let eta = pruned.separation().unwrap();
    let uniform = QuadratureRule::from_weights(
        pruned.clone(),
        vec![eta * eta; pruned.len()],
        0,
        &QuadratureOptions::default(),
    )
    .unwrap();
    let est = regularity_estimate(&uniform, eta, 2000, 3).unwrap();
    assert!(est.value <= 10.0, "{est:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn passing_rules_integrate_constants(seed in any::<u64>(), n in 0usize..8) {
        let cloud = generate_symmetric(2, PointKind::UniformRandom, 80, seed).unwrap();
        let opts = QuadratureOptions::default();
        let rule = compute_weights_with(&cloud, n, &opts).unwrap();
        if rule.is_exact() {
            prop_assert!((rule.diagnostics().weight_sum - 4.0 * PI).abs() < 1e-7);
        }
    }
}
