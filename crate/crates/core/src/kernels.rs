//! Smooth cutoffs and the band-limited zonal kernels built from them.
//!
//! Every kernel here is an even polynomial series
//!
//! `K(t) = ω_{q-1}^{-1} Σ_ℓ c_ℓ p_{2ℓ}(1) p_{2ℓ}(t)`, `p_{2ℓ} = p_{2ℓ}^{(α,α)}`,
//!
//! evaluated through `p_{2ℓ}^{(α,α)}(t) = 2^{α/2+1/4} p_ℓ^{(α,-1/2)}(2t² - 1)`,
//! which halves the recurrence length and makes evenness exact.

use std::f64::consts::PI;

use crate::activation::{coefficient_sequence, phi_eval, ActivationSpec, CoefficientSequence};
use crate::error::{Error, Result};
use crate::orthopoly::{jacobi_at_one, JacobiBasis};
use crate::sphere::surface_area;

/// The cutoff `h`: 1 on `[0, 1/2]`, 0 on `[1, ∞)`, with a polynomial
/// transition whose first `S` derivatives vanish at both ends.
///
/// With `x = 2t - 1`, the transition is `Σ_{j≤S} C(2S+1, j) x^j (1-x)^{2S+1-j}`,
/// the degree-`2S+1` smoothstep reflected so that it decreases from 1 to 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Cutoff {
    smoothness: usize,
    binomials: Vec<f64>,
}

impl Cutoff {
    pub fn new(smoothness: usize) -> Result<Self> {
        if smoothness == 0 {
            return Err(Error::domain("cutoff smoothness must be positive"));
        }
        let n = 2 * smoothness + 1;
        let mut binomials = Vec::with_capacity(smoothness + 1);
        let mut c = 1.0f64;
        for j in 0..=smoothness {
            binomials.push(c);
            c = c * (n - j) as f64 / (j + 1) as f64;
        }
        Ok(Self { smoothness, binomials })
    }

    /// Checks `S > q + 1` as well.
    pub fn for_sphere(smoothness: usize, q: usize) -> Result<Self> {
        if smoothness <= q + 1 {
            return Err(Error::domain(format!(
                "cutoff smoothness {smoothness} must exceed q + 1 = {}",
                q + 1
            )));
        }
        Self::new(smoothness)
    }

    /// Default smoothness `S = q + 5`.
    pub fn default_for(q: usize) -> Self {
        Self::new(default_smoothness(q)).expect("positive smoothness")
    }

    pub fn smoothness(&self) -> usize {
        self.smoothness
    }

    /// `h(t)`; negative arguments are treated as `|t|`.
    pub fn eval(&self, t: f64) -> f64 {
        let t = t.abs();
        if t <= 0.5 {
            return 1.0;
        }
        if t >= 1.0 {
            return 0.0;
        }
        let x = 2.0 * t - 1.0;
        let y = 1.0 - x;
        let n = 2 * self.smoothness + 1;
        self.binomials
            .iter()
            .enumerate()
            .map(|(j, c)| c * x.powi(j as i32) * y.powi((n - j) as i32))
            .sum()
    }

    /// `g(t) = h(t) - h(2t)`, supported in `[1/4, 1]`.
    pub fn band(&self, t: f64) -> f64 {
        self.eval(t) - self.eval(2.0 * t)
    }
}

pub fn default_smoothness(q: usize) -> usize {
    q + 5
}

/// The window applied to degree indices: `h(ℓ/n)` or `g(ℓ/n)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Window {
    Cutoff(Cutoff),
    Band(Cutoff),
}

impl Window {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Window::Cutoff(h) => h.eval(t),
            Window::Band(h) => h.band(t),
        }
    }

    /// Smallest `ℓ` with `H(ℓ'/n) = 0` for all `ℓ' ≥ ℓ`.
    pub fn support_end(&self, n: usize) -> usize {
        n
    }
}

/// `K(t) = ω_{q-1}^{-1} Σ_ℓ c_ℓ p_{2ℓ}(1) p_{2ℓ}(t)`.
#[derive(Debug, Clone)]
pub struct SeriesKernel {
    q: usize,
    n: usize,
    coeffs: Vec<f64>,
    scaled: Vec<f64>,
    basis: JacobiBasis,
}

impl SeriesKernel {
    /// A kernel with per-degree weights `c_ℓ` (`ℓ` is the half-degree) and
    /// nominal bandwidth `n`.
    pub fn new(q: usize, coeffs: Vec<f64>, n: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::domain(format!("sphere dimension must be at least 2, got {q}")));
        }
        let alpha = q as f64 / 2.0 - 1.0;
        let len = coeffs.len().max(1);
        let basis = JacobiBasis::new(alpha, -0.5, len - 1)?;
        let omega = surface_area(q - 1);
        let lift = 2f64.powf(alpha / 2.0 + 0.25);
        let mut scaled = Vec::with_capacity(coeffs.len());
        for (l, c) in coeffs.iter().enumerate() {
            scaled.push(c * jacobi_at_one(2 * l, alpha, alpha)? * lift / omega);
        }
        Ok(Self {
            q,
            n,
            coeffs,
            scaled,
            basis,
        })
    }

    /// `Φ_n`: weights `h(ℓ/n)`.
    pub fn lowpass(q: usize, cutoff: &Cutoff, n: usize) -> Result<Self> {
        check_bandwidth(n)?;
        let coeffs = (0..n).map(|l| cutoff.eval(l as f64 / n as f64)).collect();
        Self::new(q, coeffs, n)
    }

    /// `Φ̃_n(H, b)`: weights `(-1)^ℓ b_ℓ H(ℓ/n)`.
    pub fn tilted(q: usize, window: &Window, seq: &CoefficientSequence, n: usize) -> Result<Self> {
        check_bandwidth(n)?;
        let end = window.support_end(n);
        if seq.len() < end {
            return Err(Error::Length {
                need: end,
                have: seq.len(),
            });
        }
        let coeffs = (0..end)
            .map(|l| seq.phi_hat(l) * window.eval(l as f64 / n as f64))
            .collect();
        Self::new(q, coeffs, n)
    }

    /// `Ψ̃_N`: weights `h(ℓ/N) φ̂(2ℓ)^{[-1]}`.
    pub fn dphi(spec: &ActivationSpec, cutoff: &Cutoff, n: usize) -> Result<Self> {
        check_bandwidth(n)?;
        let seq = coefficient_sequence(spec, n)?;
        let coeffs = (0..n)
            .map(|l| {
                let h = cutoff.eval(l as f64 / n as f64);
                let c = seq.phi_hat(l);
                assert!(c != 0.0 || h == 0.0, "vanishing activation coefficient at {l}");
                if h == 0.0 {
                    0.0
                } else {
                    h / c
                }
            })
            .collect();
        Self::new(spec.q(), coeffs, n)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn bandwidth(&self) -> usize {
        self.n
    }

    /// The weights `c_ℓ`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `K(t)` for `|t| ≤ 1` (up to 1e-12, then clamped).
    pub fn eval(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t.abs() > 1.0 + 1e-12 {
            return Err(Error::domain(format!("argument {t} outside [-1, 1]")));
        }
        Ok(self.eval_unchecked(t.clamp(-1.0, 1.0)))
    }

    pub(crate) fn eval_unchecked(&self, t: f64) -> f64 {
        let u = (2.0 * t * t - 1.0).clamp(-1.0, 1.0);
        self.basis.series(&self.scaled, u)
    }
}

fn check_bandwidth(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("bandwidth n must be at least 1"));
    }
    Ok(())
}

/// `Φ_n(t)`.
pub fn lowpass_kernel(q: usize, cutoff: &Cutoff, n: usize, t: f64) -> Result<f64> {
    SeriesKernel::lowpass(q, cutoff, n)?.eval(t)
}

/// `Φ̃_n(H, b; t)`.
pub fn tilted_kernel(q: usize, window: &Window, seq: &CoefficientSequence, n: usize, t: f64) -> Result<f64> {
    SeriesKernel::tilted(q, window, seq, n)?.eval(t)
}

/// `Ψ̃_N(t)`.
pub fn dphi_kernel(spec: &ActivationSpec, cutoff: &Cutoff, n: usize, t: f64) -> Result<f64> {
    SeriesKernel::dphi(spec, cutoff, n)?.eval(t)
}

/// `max_t |φ(t) - Φ̃_n(h, b; t)|` over `grid_size` equispaced points of
/// `[-1, 1]`, endpoints included.
pub fn phi_series_error(spec: &ActivationSpec, cutoff: &Cutoff, n: usize, grid_size: usize) -> Result<f64> {
    if !n.is_power_of_two() {
        return Err(Error::domain(format!("n must be a power of two, got {n}")));
    }
    if grid_size < 1000 {
        return Err(Error::domain(format!(
            "grid size must be at least 1000, got {grid_size}"
        )));
    }
    let seq = coefficient_sequence(spec, n)?;
    let kernel = SeriesKernel::tilted(spec.q(), &Window::Cutoff(cutoff.clone()), &seq, n)?;
    let mut worst = 0.0f64;
    for i in 0..grid_size {
        let t = -1.0 + 2.0 * i as f64 / (grid_size - 1) as f64;
        worst = worst.max((phi_eval(spec.gamma(), t) - kernel.eval_unchecked(t)).abs());
    }
    Ok(worst)
}

/// Tabulates `Φ̃_n(g, b; cos θ)` with the band window `g` of `cutoff`.
pub fn localization_profile(
    q: usize,
    seq: &CoefficientSequence,
    cutoff: &Cutoff,
    n: usize,
    theta_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    let kernel = SeriesKernel::tilted(q, &Window::Band(cutoff.clone()), seq, n)?;
    theta_grid
        .iter()
        .map(|&theta| {
            if !(0.0..=PI).contains(&theta) {
                return Err(Error::domain(format!("angle {theta} outside [0, π]")));
            }
            Ok((theta, kernel.eval_unchecked(theta.cos())))
        })
        .collect()
}

/// Largest `|value|` over the part of a profile at angular distance at least
/// `gap` from the equator `θ = π/2`.
pub fn equatorial_tail(profile: &[(f64, f64)], gap: f64) -> f64 {
    profile
        .iter()
        .filter(|(theta, _)| (theta - PI / 2.0).abs() >= gap)
        .fold(0.0, |m, (_, v)| m.max(v.abs()))
}
