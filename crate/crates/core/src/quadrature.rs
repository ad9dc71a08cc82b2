//! Quadrature rules on scattered points from the reproducing-kernel Gram system.
//!
//! By the addition formula, `y ↦ K_n(x·y)` with
//!
//! `K_n(t) = ω_{q-1}^{-1} Σ_{ℓ≤n} p_ℓ(1) p_ℓ(t)`, `p_ℓ = p_ℓ^{(α,α)}`,
//!
//! reproduces `Π_n^q` and integrates to 1. Weights `w` with
//! `Σ_j w_j K_n(x·x_j) = 1` for every `x` therefore integrate all of `Π_n^q`
//! exactly. Imposing this at the nodes gives `G w = 1`, `G_jk = K_n(x_j·x_k)`,
//! whose minimum-norm solution equals that of the moment system in a
//! spherical-harmonic basis.

use faer::{Mat, Side};

use crate::error::{Error, Result};
use crate::kernels::SeriesKernel;
use crate::orthopoly::{jacobi_at_one, polynomial_dimension, JacobiBasis};
use crate::parallel;
use crate::sphere::{self, dot, surface_area, tensor_product, PointCloud, PointKind};

/// Default relative eigenvalue cutoff.
pub const DEFAULT_TRUNCATION: f64 = 1e-12;
/// Default acceptance threshold for the exactness residual.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
/// Default seed of the probe sample used by [`exactness_residual`].
pub const DEFAULT_PROBE_SEED: u64 = 0x9e37_79b9;
/// Probe counts are `20·dim Π_n`, capped here.
pub const MAX_DEFAULT_PROBES: usize = 10_000;

/// `K_n(t)` including both parities, plus its even part as a reduced series.
#[derive(Debug, Clone)]
pub struct ReproducingKernel {
    q: usize,
    n: usize,
    coeffs: Vec<f64>,
    basis: JacobiBasis,
    even: SeriesKernel,
}

impl ReproducingKernel {
    pub fn new(q: usize, n: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::domain(format!("sphere dimension must be at least 2, got {q}")));
        }
        let alpha = q as f64 / 2.0 - 1.0;
        let omega = surface_area(q - 1);
        let coeffs = (0..=n)
            .map(|l| jacobi_at_one(l, alpha, alpha).map(|p| p / omega))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            q,
            n,
            coeffs,
            basis: JacobiBasis::new(alpha, alpha, n)?,
            even: SeriesKernel::new(q, vec![1.0; n / 2 + 1], n)?,
        })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t.abs() > 1.0 + 1e-12 {
            return Err(Error::domain(format!("argument {t} outside [-1, 1]")));
        }
        Ok(self.eval_unchecked(t.clamp(-1.0, 1.0)))
    }

    pub(crate) fn eval_unchecked(&self, t: f64) -> f64 {
        self.basis.series(&self.coeffs, t.clamp(-1.0, 1.0))
    }

    /// `(K_n(t) + K_n(-t)) / 2`.
    pub(crate) fn eval_even(&self, t: f64) -> f64 {
        self.even.eval_unchecked(t.clamp(-1.0, 1.0))
    }
}

/// `K_n(t)`.
pub fn reproducing_kernel(q: usize, n: usize, t: f64) -> Result<f64> {
    ReproducingKernel::new(q, n)?.eval(t)
}

/// Knobs for [`compute_weights_with`].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureOptions {
    /// Eigenvalues below `truncation · λ_max` are discarded.
    pub truncation: f64,
    /// Residual threshold stored with the rule.
    pub tolerance: f64,
    /// Random probes for the exactness residual; `None` means
    /// `min(20·dim Π_n, 10 000)`.
    pub probes: Option<usize>,
    pub probe_seed: u64,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            truncation: DEFAULT_TRUNCATION,
            tolerance: DEFAULT_TOLERANCE,
            probes: None,
            probe_seed: DEFAULT_PROBE_SEED,
        }
    }
}

/// Default probe count for order `n` on `S^q`.
pub fn default_probe_count(q: usize, n: usize) -> usize {
    let dim = polynomial_dimension(q, n).min(MAX_DEFAULT_PROBES as u64) as usize;
    (20 * dim).min(MAX_DEFAULT_PROBES)
}

/// Quality figures recorded with a rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics {
    /// `max_x |Σ_j w_j K_n(x·x_j) - 1|` over random probes and the nodes.
    pub residual: f64,
    pub probes: usize,
    pub tolerance: f64,
    pub weight_sum: f64,
    pub min_weight: f64,
    pub max_weight: f64,
    /// `λ_max / λ_min` over the retained Gram eigenvalues.
    pub condition: f64,
    /// Number of retained eigenvalues.
    pub rank: usize,
    /// Whether the solve exploited antipodal symmetry of the nodes.
    pub folded: bool,
}

/// Points, weights and the polynomial order the weights are meant to integrate.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    cloud: PointCloud,
    weights: Vec<f64>,
    order: usize,
    diagnostics: Diagnostics,
}

impl QuadratureRule {
    /// Wraps externally supplied weights and measures their residual.
    pub fn from_weights(
        cloud: PointCloud,
        weights: Vec<f64>,
        order: usize,
        options: &QuadratureOptions,
    ) -> Result<Self> {
        if weights.len() != cloud.len() {
            return Err(Error::Dimension {
                expected: cloud.len(),
                got: weights.len(),
            });
        }
        let mut rule = Self {
            diagnostics: Diagnostics {
                residual: f64::NAN,
                probes: 0,
                tolerance: options.tolerance,
                weight_sum: weights.iter().sum(),
                min_weight: weights.iter().copied().fold(f64::INFINITY, f64::min),
                max_weight: weights.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                condition: f64::NAN,
                rank: 0,
                folded: false,
            },
            cloud,
            weights,
            order,
        };
        let probes = options.probes.unwrap_or_else(|| default_probe_count(rule.q(), order));
        rule.diagnostics.residual = exactness_residual(&rule, probes, options.probe_seed)?;
        rule.diagnostics.probes = probes + rule.cloud.len().div_ceil(node_stride(rule.cloud.len(), probes));
        Ok(rule)
    }

    /// Product Gauss rule exact for `Π_order^q` (see [`sphere::tensor_product`]).
    pub fn product(q: usize, order: usize, options: &QuadratureOptions) -> Result<Self> {
        let (cloud, weights) = tensor_product(q, order)?;
        Self::from_weights(cloud, weights, order, options)
    }

    pub fn cloud(&self) -> &PointCloud {
        &self.cloud
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn q(&self) -> usize {
        self.cloud.q()
    }

    pub fn diagnostics(&self) -> &Diagnostics {
        &self.diagnostics
    }

    pub fn residual(&self) -> f64 {
        self.diagnostics.residual
    }

    /// Residual below the stored tolerance.
    pub fn is_exact(&self) -> bool {
        self.diagnostics.residual < self.diagnostics.tolerance
    }

    /// Whether some weight is negative.
    pub fn has_negative_weights(&self) -> bool {
        self.diagnostics.min_weight < 0.0
    }

    /// Same weights on a different (e.g. rotated) copy of the nodes.
    pub fn with_cloud(&self, cloud: PointCloud) -> Result<Self> {
        if cloud.len() != self.cloud.len() || cloud.q() != self.cloud.q() {
            return Err(Error::Dimension {
                expected: self.cloud.len(),
                got: cloud.len(),
            });
        }
        Ok(Self {
            cloud,
            weights: self.weights.clone(),
            order: self.order,
            diagnostics: self.diagnostics.clone(),
        })
    }

    /// `Σ_j w_j f(x_j)`.
    pub fn integrate<F: Fn(&[f64]) -> f64>(&self, f: F) -> f64 {
        self.cloud.iter().zip(&self.weights).map(|(x, w)| w * f(x)).sum()
    }

    /// Index pairs `(i, partner)` with `i < partner` when the nodes are
    /// antipodally closed and partners carry identical weights.
    fn folding(&self) -> Option<Vec<usize>> {
        let partners = self.cloud.antipodal_partners()?;
        if partners
            .iter()
            .enumerate()
            .any(|(i, &j)| self.weights[i] != self.weights[j])
        {
            return None;
        }
        Some(representatives(&partners))
    }
}

fn representatives(partners: &[usize]) -> Vec<usize> {
    partners
        .iter()
        .enumerate()
        .filter(|(i, &j)| *i < j)
        .map(|(i, _)| i)
        .collect()
}

/// Minimum-norm weights for order `n` with default options.
pub fn compute_weights(cloud: &PointCloud, n: usize, truncation: f64) -> Result<QuadratureRule> {
    compute_weights_with(
        cloud,
        n,
        &QuadratureOptions {
            truncation,
            ..QuadratureOptions::default()
        },
    )
}

/// Solves `G w = 1` by a truncated symmetric eigendecomposition.
///
/// Antipodally closed clouds are folded: with `w` equal on `±x`, the system
/// reduces to the half-size matrix `2 K_n^{even}(x_a·x_b)` over one point of
/// each pair, which has the same minimum-norm solution.
pub fn compute_weights_with(cloud: &PointCloud, n: usize, options: &QuadratureOptions) -> Result<QuadratureRule> {
    if cloud.is_empty() {
        return Err(Error::Degenerate(
            "cannot build a quadrature rule on an empty cloud".into(),
        ));
    }
    let kernel = ReproducingKernel::new(cloud.q(), n)?;
    let partners = cloud.antipodal_partners();
    let (nodes, folded) = match &partners {
        Some(p) => (representatives(p), true),
        None => ((0..cloud.len()).collect(), false),
    };
    let m = nodes.len();
    let mut gram = vec![0.0; m * m];
    parallel::fill_rows(&mut gram, m, |a, row| {
        let x = cloud.point(nodes[a]);
        for (b, g) in row.iter_mut().enumerate().take(a + 1) {
            let t = dot(x, cloud.point(nodes[b]));
            *g = if folded {
                2.0 * kernel.eval_even(t)
            } else {
                kernel.eval_unchecked(t)
            };
        }
    });
    let solve = truncated_solve(m, &gram, options.truncation)?;
    let mut weights = vec![0.0; cloud.len()];
    for (a, &i) in nodes.iter().enumerate() {
        weights[i] = solve.x[a];
        if let Some(p) = &partners {
            weights[p[i]] = solve.x[a];
        }
    }
    let mut rule = QuadratureRule::from_weights(cloud.clone(), weights, n, options)?;
    rule.diagnostics.condition = solve.condition;
    rule.diagnostics.rank = solve.rank;
    rule.diagnostics.folded = folded;
    Ok(rule)
}

struct Solve {
    x: Vec<f64>,
    rank: usize,
    condition: f64,
}

/// Minimum-norm solution of `A x = 1` for symmetric `A` (lower triangle of the
/// row-major buffer is read), discarding eigenvalues below `τ λ_max`.
fn truncated_solve(m: usize, lower: &[f64], truncation: f64) -> Result<Solve> {
    let a = Mat::<f64>::from_fn(m, m, |i, j| if j <= i { lower[i * m + j] } else { lower[j * m + i] });
    let eig = a
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Numeric(format!("Gram eigensolver failed: {e:?}")))?;
    let s = eig.S().column_vector();
    let u = eig.U();
    let lambda_max = (0..m).map(|i| s[i]).fold(f64::NEG_INFINITY, f64::max);
    if !(lambda_max > 0.0) || !lambda_max.is_finite() {
        return Err(Error::Degenerate(format!(
            "Gram matrix has no positive eigenvalue (λ_max = {lambda_max})"
        )));
    }
    let cutoff = truncation * lambda_max;
    let mut x = vec![0.0; m];
    let mut rank = 0;
    let mut lambda_min = lambda_max;
    // descending eigenvalue order
    for k in (0..m).rev() {
        let lambda = s[k];
        if lambda < cutoff {
            continue;
        }
        rank += 1;
        lambda_min = lambda_min.min(lambda);
        let c: f64 = (0..m).map(|i| u[(i, k)]).sum::<f64>() / lambda;
        for (i, xi) in x.iter_mut().enumerate() {
            *xi += c * u[(i, k)];
        }
    }
    if rank == 0 {
        return Err(Error::Degenerate(
            "all Gram eigenvalues fall below the truncation".into(),
        ));
    }
    Ok(Solve {
        x,
        rank,
        condition: lambda_max / lambda_min,
    })
}

/// `max_x |Σ_j w_j K_n(x·x_j) - 1|` over `probe_count` seeded uniform points and
/// the rule's own nodes (an evenly strided subset of at most `probe_count` of
/// them when the rule is larger).
///
/// As `x` varies, `y ↦ K_n(x·y)` spans `Π_n^q`, so a zero residual on enough
/// probes certifies exactness on all of `Π_n^q`.
pub fn exactness_residual(rule: &QuadratureRule, probe_count: usize, seed: u64) -> Result<f64> {
    let q = rule.q();
    let kernel = ReproducingKernel::new(q, rule.order)?;
    let mut probes = Vec::with_capacity((probe_count + rule.cloud.len()) * (q + 1));
    if probe_count > 0 {
        probes.extend_from_slice(sphere::generate(q, PointKind::UniformRandom, probe_count, seed)?.as_flat());
    }
    for x in rule.cloud.iter().step_by(node_stride(rule.cloud.len(), probe_count)) {
        probes.extend_from_slice(x);
    }
    let probes = PointCloud::from_normalized(q, probes);
    let folding = rule.folding();
    let mut residuals = vec![0.0; probes.len()];
    parallel::fill(&mut residuals, |p| {
        let x = probes.point(p);
        let total: f64 = match &folding {
            Some(reps) => reps
                .iter()
                .map(|&i| 2.0 * rule.weights[i] * kernel.eval_even(dot(x, rule.cloud.point(i))))
                .sum(),
            None => rule
                .cloud
                .iter()
                .zip(&rule.weights)
                .map(|(y, w)| w * kernel.eval_unchecked(dot(x, y)))
                .sum(),
        };
        (total - 1.0).abs()
    });
    Ok(residuals.into_iter().fold(0.0, f64::max))
}

/// Stride through the nodes so that at most `max(probe_count, 1)` of them
/// are used as extra probes.
fn node_stride(len: usize, probe_count: usize) -> usize {
    len.div_ceil(probe_count.max(1)).max(1)
}

/// Upper end of the order scan: `ceil(3/δ)`.
pub fn order_upper_bound(cloud: &PointCloud) -> Result<usize> {
    let delta = cloud.mesh_norm()?.value;
    Ok((3.0 / delta.max(1e-12)).ceil() as usize)
}

/// Largest order whose minimum-norm weights pass the residual test at `tol`.
pub fn order_search(cloud: &PointCloud, tol: f64) -> Result<usize> {
    Ok(search_rule(cloud, tol, &QuadratureOptions::default())?.order())
}

/// Scans down from [`order_upper_bound`] and returns the first passing rule
/// (the order-0 rule if nothing else passes).
pub fn search_rule(cloud: &PointCloud, tol: f64, options: &QuadratureOptions) -> Result<QuadratureRule> {
    let options = QuadratureOptions {
        tolerance: tol,
        ..options.clone()
    };
    let mut n = order_upper_bound(cloud)?;
    loop {
        let rule = compute_weights_with(cloud, n, &options)?;
        if rule.is_exact() || n == 0 {
            return Ok(rule);
        }
        n -= 1;
    }
}

/// Estimate of `sup_x |ν|(B(x, d)) / d^q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularityEstimate {
    pub d: f64,
    pub value: f64,
    pub probes: usize,
}

/// Maximizes the absolute weight inside caps of radius `d` centered at seeded
/// uniform probes and at the nodes themselves.
pub fn regularity_estimate(rule: &QuadratureRule, d: f64, probe_count: usize, seed: u64) -> Result<RegularityEstimate> {
    if !(d > 0.0 && d <= 1.0) {
        return Err(Error::domain(format!("cap radius must lie in (0, 1], got {d}")));
    }
    let q = rule.q();
    let mut centers = Vec::with_capacity((probe_count + rule.cloud.len()) * (q + 1));
    if probe_count > 0 {
        centers.extend_from_slice(sphere::generate(q, PointKind::UniformRandom, probe_count, seed)?.as_flat());
    }
    centers.extend_from_slice(rule.cloud.as_flat());
    let centers = PointCloud::from_normalized(q, centers);
    let threshold = d.cos();
    let mut masses = vec![0.0; centers.len()];
    parallel::fill(&mut masses, |c| {
        let x = centers.point(c);
        rule.cloud
            .iter()
            .zip(&rule.weights)
            .filter(|(y, _)| dot(x, y) >= threshold - 1e-15)
            .map(|(_, w)| w.abs())
            .sum()
    });
    let mass = masses.iter().copied().fold(0.0, f64::max);
    Ok(RegularityEstimate {
        d,
        value: mass / d.powi(q as i32),
        probes: centers.len(),
    })
}
