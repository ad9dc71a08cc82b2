use std::f64::consts::PI;

use proptest::prelude::*;
use statrs::function::{beta::ln_beta, gamma as sgamma};
use zfnet::orthopoly::{
    even_jacobi_at_zero, gauss_jacobi, harmonic_dimension, jacobi_at_one, ln_abs_gamma, ln_gamma, polynomial_dimension,
    JacobiBasis,
};

const PAIRS: [(f64, f64); 5] = [(0.0, 0.0), (0.5, 0.5), (0.0, -0.5), (0.0, 0.5), (1.5, 1.5)];

#[test]
fn orthonormal_under_64_point_rule() {
    for (a, b) in PAIRS {
        let basis = JacobiBasis::new(a, b, 40).unwrap();
        let rule = gauss_jacobi(a, b, 64).unwrap();
        let mut gram = [[0.0; 41]; 41];
        let mut vals = [0.0; 41];
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            basis.eval_all(t, &mut vals);
            for i in 0..=40 {
                for j in 0..=40 {
                    gram[i][j] += w * vals[i] * vals[j];
                }
            }
        }
        for (i, row) in gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((g - expect).abs() < 1e-9, "({a},{b}) i={i} j={j}: {g}");
            }
        }
    }
}

#[test]
fn legendre_values() {
    let basis = JacobiBasis::new(0.0, 0.0, 4).unwrap();
    for t in [-1.0, -0.3, 0.0, 0.8] {
        assert!((basis.eval(0, t).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
    }
    assert!((basis.eval(1, 1.0).unwrap() - 1.5f64.sqrt()).abs() < 1e-14);
    assert!((basis.eval(2, 1.0).unwrap() - 2.5f64.sqrt()).abs() < 1e-14);
    assert!((jacobi_at_one(0, 0.0, 0.0).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
    assert!((jacobi_at_one(2, 0.0, 0.0).unwrap() - 2.5f64.sqrt()).abs() < 1e-14);
    assert!(basis.eval(5, 0.0).is_err());
}

#[test]
fn leading_coefficients_positive() {
    // p_ℓ(t) ~ c t^ℓ for large t; the recurrence is valid off [-1, 1]
    for (a, b) in PAIRS {
        let basis = JacobiBasis::new(a, b, 20).unwrap();
        let mut vals = [0.0; 21];
        basis.eval_all(1e6, &mut vals);
        assert!(vals.iter().all(|v| *v > 0.0), "({a},{b})");
    }
}

#[test]
fn endpoint_formula_matches_recurrence() {
    for (a, b) in PAIRS.iter().copied().chain([(2.3, -0.2), (0.0, 1.0)]) {
        let basis = JacobiBasis::new(a, b, 200).unwrap();
        let mut vals = vec![0.0; 201];
        basis.eval_all(1.0, &mut vals);
        for (l, v) in vals.iter().enumerate() {
            let closed = jacobi_at_one(l, a, b).unwrap();
            assert!(
                (closed - v).abs() <= 1e-11 * v.abs(),
                "({a},{b}) ℓ={l}: {closed} vs {v}"
            );
        }
    }
}

#[test]
fn endpoint_growth_rate() {
    for a in [0.0, 0.5, 1.5] {
        let l0 = 50.0f64;
        let l1 = 200.0f64;
        let slope = (jacobi_at_one(200, a, a).unwrap() / jacobi_at_one(50, a, a).unwrap()).ln() / (l1 / l0).ln();
        assert!((slope - (a + 0.5)).abs() < 0.05, "α={a}: slope {slope}");
    }
}

#[test]
fn even_values_at_zero() {
    assert!((even_jacobi_at_zero(0, 0.0).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
    assert!((even_jacobi_at_zero(1, 0.0).unwrap() + 2.5f64.sqrt() / 2.0).abs() < 1e-14);
    for a in [0.0, 0.5, 1.0] {
        let basis = JacobiBasis::new(a, a, 40).unwrap();
        for l in 0..=20 {
            let v = even_jacobi_at_zero(l, a).unwrap();
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(v.signum(), sign, "α={a} ℓ={l}");
            let rec = basis.eval(2 * l, 0.0).unwrap();
            assert!((v - rec).abs() < 1e-12 * rec.abs().max(1.0));
        }
    }
}

#[test]
fn small_gauss_rules() {
    let one = gauss_jacobi(0.0, 0.0, 1).unwrap();
    assert!(one.nodes[0].abs() < 1e-15);
    assert!((one.weights[0] - 2.0).abs() < 1e-14);
    let two = gauss_jacobi(0.0, 0.0, 2).unwrap();
    let x = 1.0 / 3f64.sqrt();
    assert!((two.nodes[0] + x).abs() < 1e-15 && (two.nodes[1] - x).abs() < 1e-15);
    assert!(two.weights.iter().all(|w| (w - 1.0).abs() < 1e-14));
    // ∫ t² (1-t²)^{1/2} dt = π/8
    let cheb = gauss_jacobi(0.5, 0.5, 8).unwrap();
    assert!((cheb.integrate(|t| t * t) - PI / 8.0).abs() < 1e-14);
}

#[test]
fn gamma_values() {
    assert_eq!(ln_gamma(1.0).unwrap(), 0.0);
    assert!((ln_gamma(0.5).unwrap() - 0.5723649429247001).abs() < 1e-14);
    assert!((ln_gamma(6.0).unwrap() - 120f64.ln()).abs() < 1e-13);
    assert!(ln_gamma(0.0).is_err());
    // Γ(-1/2) = -2√π
    let (v, s) = ln_abs_gamma(-0.5).unwrap();
    assert_eq!(s, -1.0);
    assert!((v - (2.0 * PI.sqrt()).ln()).abs() < 1e-14);
}

#[test]
fn dimensions() {
    for q in 2..6 {
        assert_eq!(harmonic_dimension(q, 0), 1);
    }
    assert_eq!(harmonic_dimension(2, 7), 15);
    assert_eq!(harmonic_dimension(3, 2), 9);
    assert_eq!(polynomial_dimension(2, 12), 169);
}

fn beta_moment(a: f64, b: f64, k: usize) -> f64 {
    // ∫ (1+t)^k (1-t)^a (1+t)^b dt = 2^{a+b+k+1} B(a+1, b+k+1)
    ((a + b + k as f64 + 1.0) * 2f64.ln() + ln_beta(a + 1.0, b + k as f64 + 1.0)).exp()
}

proptest! {
    #[test]
    fn gauss_rule_exact_to_degree_2m_minus_1(
        a in -0.9f64..3.0,
        b in -0.9f64..3.0,
        m in 1usize..16,
        coeffs in prop::collection::vec(0.0f64..1.0, 32),
    ) {
        let rule = gauss_jacobi(a, b, m).unwrap();
        prop_assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(rule.weights.iter().all(|w| *w > 0.0));
        let deg = 2 * m - 1;
        let got = rule.integrate(|t| (0..=deg).map(|k| coeffs[k] * (1.0 + t).powi(k as i32)).sum());
        let want: f64 = (0..=deg).map(|k| coeffs[k] * beta_moment(a, b, k)).sum();
        prop_assert!((got - want).abs() <= 1e-11 * want.abs(), "{got} vs {want}");
    }

    #[test]
    fn parity_for_symmetric_weights(a in -0.9f64..3.0, t in -1.0f64..1.0) {
        let basis = JacobiBasis::new(a, a, 30).unwrap();
        let mut plus = [0.0; 31];
        let mut minus = [0.0; 31];
        basis.eval_all(t, &mut plus);
        basis.eval_all(-t, &mut minus);
        for l in 0..=30 {
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((minus[l] - sign * plus[l]).abs() <= 1e-13 * plus[l].abs().max(1.0));
        }
    }

    #[test]
    fn ln_gamma_matches_reference(x in 0.01f64..150.0) {
        let ours = ln_gamma(x).unwrap();
        let reference = sgamma::ln_gamma(x);
        prop_assert!((ours - reference).abs() <= 1e-12 * reference.abs().max(1.0), "{x}: {ours} vs {reference}");
    }

    #[test]
    fn reflection_for_negative_arguments(x in -30.0f64..-0.01) {
        prop_assume!((x - x.round()).abs() > 1e-3);
        let (v, s) = ln_abs_gamma(x).unwrap();
        let reference = sgamma::gamma(x);
        prop_assume!(reference.is_finite() && reference != 0.0);
        prop_assert_eq!(s, reference.signum());
        prop_assert!((v - reference.abs().ln()).abs() <= 1e-11 * v.abs().max(1.0));
    }
}
