use std::f64::consts::PI;

use super::gamma::ln_gamma_positive;
use crate::error::{Error, Result};

/// Orthonormal Jacobi polynomials `p_0, …, p_L` for the weight
/// `(1-t)^α (1+t)^β`, evaluated by the upward three-term recurrence
///
/// `√b_{k+1} p_{k+1}(t) = (t - a_k) p_k(t) - √b_k p_{k-1}(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiBasis {
    alpha: f64,
    beta: f64,
    max_degree: usize,
    /// `a_k`, k = 0..=L
    diag: Vec<f64>,
    /// `√b_k`, k = 0..=L+1 (entry 0 unused)
    off: Vec<f64>,
    /// `p_0`, the reciprocal square root of the total mass of the weight.
    p0: f64,
}

impl JacobiBasis {
    pub fn new(alpha: f64, beta: f64, max_degree: usize) -> Result<Self> {
        check_params(alpha, beta)?;
        let (diag, off) = recurrence(alpha, beta, max_degree + 1);
        let p0 = (-0.5 * ln_weight_mass(alpha, beta)).exp();
        Ok(Self {
            alpha,
            beta,
            max_degree,
            diag,
            off,
            p0,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Total mass `∫ (1-t)^α (1+t)^β dt` of the weight.
    pub fn weight_mass(&self) -> f64 {
        ln_weight_mass(self.alpha, self.beta).exp()
    }

    /// Recurrence diagonal `a_0..a_{m-1}` and off-diagonal `√b_1..√b_{m-1}`,
    /// i.e. the Jacobi matrix of order `m`.
    pub(crate) fn jacobi_matrix(&self, m: usize) -> (Vec<f64>, Vec<f64>) {
        assert!(m <= self.max_degree + 1);
        (self.diag[..m].to_vec(), self.off[1..m].to_vec())
    }

    /// `p_ℓ(t)`.
    pub fn eval(&self, degree: usize, t: f64) -> Result<f64> {
        if degree > self.max_degree {
            return Err(Error::Degree {
                degree,
                max: self.max_degree,
            });
        }
        let t = check_unit_interval(t)?;
        let mut prev = 0.0;
        let mut cur = self.p0;
        for k in 0..degree {
            let next = ((t - self.diag[k]) * cur - self.off[k] * prev) / self.off[k + 1];
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    /// Writes `p_0(t), …, p_{out.len()-1}(t)` into `out`.
    ///
    /// `t` is not range checked; callers clamp inner products themselves.
    pub fn eval_all(&self, t: f64, out: &mut [f64]) {
        assert!(out.len() <= self.max_degree + 1, "eval_all beyond max degree");
        let mut prev = 0.0;
        let mut cur = self.p0;
        for (k, o) in out.iter_mut().enumerate() {
            *o = cur;
            let next = ((t - self.diag[k]) * cur - self.off[k] * prev) / self.off[k + 1];
            prev = cur;
            cur = next;
        }
    }

    /// `Σ_k coeffs[k] p_k(t)`, accumulated in ascending degree.
    pub fn series(&self, coeffs: &[f64], t: f64) -> f64 {
        assert!(coeffs.len() <= self.max_degree + 1, "series beyond max degree");
        let mut prev = 0.0;
        let mut cur = self.p0;
        let mut acc = 0.0;
        for (k, &c) in coeffs.iter().enumerate() {
            acc += c * cur;
            let next = ((t - self.diag[k]) * cur - self.off[k] * prev) / self.off[k + 1];
            prev = cur;
            cur = next;
        }
        acc
    }
}

fn check_params(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha > -1.0 && beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
        return Err(Error::domain(format!(
            "Jacobi parameters must exceed -1, got alpha = {alpha}, beta = {beta}"
        )));
    }
    Ok(())
}

fn check_unit_interval(t: f64) -> Result<f64> {
    if t.is_nan() || t.abs() > 1.0 + 1e-12 {
        return Err(Error::domain(format!("argument {t} outside [-1, 1]")));
    }
    Ok(t.clamp(-1.0, 1.0))
}

fn ln_weight_mass(alpha: f64, beta: f64) -> f64 {
    (alpha + beta + 1.0) * 2f64.ln() + ln_gamma_positive(alpha + 1.0) + ln_gamma_positive(beta + 1.0)
        - ln_gamma_positive(alpha + beta + 2.0)
}

/// Monic recurrence coefficients `a_k` (k < len) and `√b_k` (k ≤ len).
fn recurrence(alpha: f64, beta: f64, len: usize) -> (Vec<f64>, Vec<f64>) {
    let ab = alpha + beta;
    let mut diag = Vec::with_capacity(len);
    let mut off = vec![0.0; len + 1];
    for k in 0..len {
        let a = if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            let s = 2.0 * k as f64 + ab;
            (beta * beta - alpha * alpha) / (s * (s + 2.0))
        };
        diag.push(a);
    }
    for (k, o) in off.iter_mut().enumerate().skip(1) {
        let kf = k as f64;
        let b = if k == 1 {
            // (k + α + β) cancels against (2k + α + β - 1), which vanish
            // together when α + β = -1.
            4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            let s = 2.0 * kf + ab;
            4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
        };
        *o = b.sqrt();
    }
    (diag, off)
}

/// Closed form of the endpoint value `p_ℓ^{(α,β)}(1)`:
///
/// `{ (2ℓ+α+β+1)/2^{α+β+1} · ℓ!(ℓ+α+β)!/((ℓ+α)!(ℓ+β)!) }^{1/2} · (ℓ+α)!/(α! ℓ!)`,
/// which grows like `ℓ^{α+1/2}`.
pub fn jacobi_at_one(degree: usize, alpha: f64, beta: f64) -> Result<f64> {
    check_params(alpha, beta)?;
    let ab = alpha + beta;
    if degree == 0 {
        return Ok((-0.5 * ln_weight_mass(alpha, beta)).exp());
    }
    let l = degree as f64;
    let lg = ln_gamma_positive;
    let ln_sq = (2.0 * l + ab + 1.0).ln() - (ab + 1.0) * 2f64.ln() + lg(l + 1.0) + lg(l + ab + 1.0)
        - lg(l + alpha + 1.0)
        - lg(l + beta + 1.0);
    let ln_ratio = lg(l + alpha + 1.0) - lg(alpha + 1.0) - lg(l + 1.0);
    Ok((0.5 * ln_sq + ln_ratio).exp())
}

/// `p_{2ℓ}^{(α,α)}(0)`, from the endpoint value and the closed-form ratio
///
/// `p_{2ℓ}(1) / p_{2ℓ}(0) = (-1)^ℓ √π (ℓ+α)! / (α! (ℓ-1/2)!)`.
pub fn even_jacobi_at_zero(half_degree: usize, alpha: f64) -> Result<f64> {
    let at_one = jacobi_at_one(2 * half_degree, alpha, alpha)?;
    let l = half_degree as f64;
    let lg = ln_gamma_positive;
    let ln_ratio = lg(alpha + 1.0) + lg(l + 0.5) - 0.5 * PI.ln() - lg(l + alpha + 1.0);
    let sign = if half_degree % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * at_one * ln_ratio.exp())
}
