//! The activations `φ_γ(t) = |t|^{2γ+1}` and their expansion coefficients.
//!
//! `φ_γ` is even, so only even degrees carry coefficients. Everywhere below an
//! index `ℓ` is the *half-degree*: `phi_hat(spec, ℓ)` is the coefficient of
//! degree `2ℓ`,
//!
//! `φ̂(2ℓ) = ω_{q-1} / p_{2ℓ}(1) · ∫ φ(t) p_{2ℓ}(t) (1-t²)^{q/2-1} dt`
//!
//! with `p_{2ℓ} = p_{2ℓ}^{(α,α)}`, `α = q/2 - 1`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::orthopoly::{ln_abs_gamma, ln_gamma, refined_gauss_jacobi, Dd, ExtendedJacobi};
use crate::sphere::surface_area;

const ADMISSIBILITY_TOL: f64 = 1e-12;

/// An admissible activation exponent on a sphere of dimension `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActivationSpec {
    gamma: f64,
    q: usize,
}

impl ActivationSpec {
    /// Rejects `γ ≤ -1/2` and exponents where `2γ+1` is an even integer
    /// (within 1e-12), i.e. where `|t|^{2γ+1}` is a polynomial.
    pub fn new(gamma: f64, q: usize) -> Result<Self> {
        if !gamma.is_finite() || gamma <= -0.5 {
            return Err(Error::Inadmissible(gamma));
        }
        let power = 2.0 * gamma + 1.0;
        let nearest = power.round();
        if (power - nearest).abs() < ADMISSIBILITY_TOL && (nearest as i64) % 2 == 0 {
            return Err(Error::Inadmissible(gamma));
        }
        if q < 2 {
            return Err(Error::domain(format!("sphere dimension must be at least 2, got {q}")));
        }
        Ok(Self { gamma, q })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// `α = q/2 - 1`.
    pub fn alpha(&self) -> f64 {
        self.q as f64 / 2.0 - 1.0
    }

    /// Smoothness exponent `s = (4γ + 3 + q)/2` of the coefficient sequence.
    pub fn smoothness_exponent(&self) -> f64 {
        (4.0 * self.gamma + 3.0 + self.q as f64) / 2.0
    }

    pub fn eval(&self, t: f64) -> f64 {
        phi_eval(self.gamma, t)
    }
}

/// `|t|^{2γ+1}`.
pub fn phi_eval(gamma: f64, t: f64) -> f64 {
    let power = 2.0 * gamma + 1.0;
    if power == power.round() && power.abs() <= 64.0 {
        t.abs().powi(power as i32)
    } else {
        t.abs().powf(power)
    }
}

/// Integrator for `∫ |t|^{2γ+1} p_{2ℓ}(t) (1-t²)^α dt`, `ℓ ≤ max_half_degree`.
///
/// With `u = 2t² - 1` and `p_{2ℓ}^{(α,α)}(t) = 2^{α/2+1/4} p_ℓ^{(α,-1/2)}(u)` the
/// integral becomes `2^{-α-γ-1} 2^{α/2+1/4} ∫ p_ℓ^{(α,-1/2)}(u) (1-u)^α (1+u)^γ du`,
/// a degree-`ℓ` polynomial against a Jacobi weight, which a Gauss–Jacobi(α, γ)
/// rule integrates exactly.
struct CoefficientOracle {
    spec: ActivationSpec,
    rule: Vec<(Dd, Dd)>,
    reduced: ExtendedJacobi,
    scale: f64,
    omega: f64,
}

impl CoefficientOracle {
    fn new(spec: ActivationSpec, max_half_degree: usize) -> Result<Self> {
        let alpha = spec.alpha();
        let gamma = spec.gamma();
        // the integral is far smaller than its terms for large ℓ, so the rule
        // and the sum are carried in double-double
        let rule = refined_gauss_jacobi(alpha, gamma, max_half_degree + 2)?;
        let reduced = ExtendedJacobi::new(alpha, -0.5, max_half_degree)?;
        let scale = 2f64.powf(-alpha - gamma - 1.0) * 2f64.powf(alpha / 2.0 + 0.25);
        Ok(Self {
            spec,
            rule,
            reduced,
            scale,
            omega: surface_area(spec.q() - 1),
        })
    }

    /// φ̂(2ℓ) for every ℓ ≤ max_half_degree.
    fn all(&self) -> Vec<f64> {
        let len = self.reduced.max_degree() + 1;
        let mut acc = vec![Dd::ZERO; len];
        let mut vals = vec![Dd::ZERO; len];
        for &(u, w) in &self.rule {
            self.reduced.eval_all(u, &mut vals);
            for (a, v) in acc.iter_mut().zip(&vals) {
                *a = *a + w * *v;
            }
        }
        let mut at_one = vec![Dd::ZERO; len];
        self.reduced.eval_all(Dd::ONE, &mut at_one);
        // p_{2ℓ}(1) = 2^{α/2+1/4} p_ℓ^{(α,-1/2)}(1); the 2^{α/2+1/4} cancels
        // against the one in `scale`.
        let unscale = 2f64.powf(self.spec.alpha() / 2.0 + 0.25);
        acc.iter()
            .zip(&at_one)
            .map(|(integral, p1)| self.omega * self.scale * (*integral / *p1).to_f64() / unscale)
            .collect()
    }
}

/// `φ̂_γ(2ℓ)` computed by exact Gauss–Jacobi quadrature of the reduced integral.
pub fn phi_hat(spec: &ActivationSpec, half_degree: usize) -> Result<f64> {
    let oracle = CoefficientOracle::new(*spec, half_degree)?;
    Ok(oracle.all()[half_degree])
}

/// Magnitude of the gamma-function closed form,
///
/// `ω_{q-1} |cos πγ| Γ(q/2) Γ(2γ+2) / (2^{2γ+1} √π) · |Γ(ℓ-γ-1/2)| / Γ(ℓ+γ+q/2+1)`.
///
/// Only the magnitude is used: the sign printed with this closed form is the
/// opposite of what direct integration gives, so [`phi_hat`] is authoritative.
pub fn phi_hat_closed_form_magnitude(spec: &ActivationSpec, half_degree: usize) -> Result<f64> {
    let g = spec.gamma();
    let q = spec.q() as f64;
    let l = half_degree as f64;
    let (ln_num, _) = ln_abs_gamma(l - g - 0.5)?;
    let ln_value =
        surface_area(spec.q() - 1).ln() + (PI * g).cos().abs().ln() + ln_gamma(q / 2.0)? + ln_gamma(2.0 * g + 2.0)?
            - (2.0 * g + 1.0) * 2f64.ln()
            - 0.5 * PI.ln()
            + ln_num
            - ln_gamma(l + g + q / 2.0 + 1.0)?;
    Ok(ln_value.exp())
}

/// `b_ℓ = (-1)^ℓ φ̂(2ℓ)`, ℓ = 0..=L, with the smoothness exponent `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSequence {
    pub values: Vec<f64>,
    pub s: f64,
}

impl CoefficientSequence {
    pub fn max_index(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `φ̂(2ℓ) = (-1)^ℓ b_ℓ`.
    pub fn phi_hat(&self, half_degree: usize) -> f64 {
        alternate(half_degree) * self.values[half_degree]
    }

    /// For each order `r ≤ r_max`, the ratio of the weighted-difference bound
    /// over the second half of the index range to that over the first half.
    /// Values near or below 1 indicate no growth in `ℓ`.
    pub fn growth_ratios(&self, r_max: usize) -> Vec<f64> {
        let weighted = self.weighted();
        (0..=r_max)
            .map(|r| {
                let diffs = weighted_differences(&weighted, r);
                if diffs.len() < 2 {
                    return f64::NAN;
                }
                let mid = diffs.len() / 2;
                let first = diffs[..mid].iter().fold(0.0f64, |m, v| m.max(*v));
                let second = diffs[mid..].iter().fold(0.0f64, |m, v| m.max(*v));
                second / first
            })
            .collect()
    }

    fn weighted(&self) -> Vec<f64> {
        self.values
            .iter()
            .enumerate()
            .map(|(l, b)| (l as f64 + 1.0).powf(self.s) * b)
            .collect()
    }
}

fn alternate(l: usize) -> f64 {
    if l % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn coefficient_sequence(spec: &ActivationSpec, max_index: usize) -> Result<CoefficientSequence> {
    let oracle = CoefficientOracle::new(*spec, max_index)?;
    let values = oracle
        .all()
        .into_iter()
        .enumerate()
        .map(|(l, v)| alternate(l) * v)
        .collect();
    Ok(CoefficientSequence {
        values,
        s: spec.smoothness_exponent(),
    })
}

/// `Δ^r a_ℓ` with `Δa_ℓ = a_{ℓ+1} - a_ℓ`.
pub fn forward_difference(seq: &[f64], r: usize, index: usize) -> Result<f64> {
    let end = index + r;
    if end >= seq.len() {
        return Err(Error::OutOfBounds {
            index: end,
            len: seq.len(),
        });
    }
    let mut window = seq[index..=end].to_vec();
    for k in (1..=r).rev() {
        for i in 0..k {
            window[i] = window[i + 1] - window[i];
        }
    }
    Ok(window[0])
}

/// `(ℓ+1)^r |Δ^r((ℓ+1)^s b_ℓ)|` for all ℓ where the difference is defined.
fn weighted_differences(weighted: &[f64], r: usize) -> Vec<f64> {
    if weighted.len() <= r {
        return Vec::new();
    }
    let mut diff = weighted.to_vec();
    for _ in 0..r {
        diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
    }
    diff.iter()
        .enumerate()
        .map(|(l, d)| (l as f64 + 1.0).powi(r as i32) * d.abs())
        .collect()
}

/// For `r = 0..=r_max`: `max_ℓ (ℓ+1)^r |Δ^r((ℓ+1)^s b_ℓ)|` over the available range.
pub fn bs_diagnostic(seq: &CoefficientSequence, r_max: usize) -> Result<Vec<f64>> {
    if r_max > 6 {
        return Err(Error::domain(format!("r_max must be at most 6, got {r_max}")));
    }
    let weighted = seq.weighted();
    Ok((0..=r_max)
        .map(|r| weighted_differences(&weighted, r).into_iter().fold(0.0, f64::max))
        .collect())
}
