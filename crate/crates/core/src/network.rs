//! Construction, evaluation and diagnostics of ZF networks
//! `G(x) = Σ_k a_k |x·x_k|^{2γ+1}`.
//!
//! Given sample sites `ξ` with quadrature weights `w̃_ξ` (order `4N`) and
//! centers `x_k` with weights `w_k` (order `4N`), the coefficients are
//!
//! `a_k = w_k Σ_ξ w̃_ξ f(ξ) Ψ̃_N(x_k·ξ)`,
//!
//! i.e. the band-limited pseudo-inverse `D_φ σ_N(f)` read at the centers.

use serde::{Deserialize, Serialize};

use crate::activation::{phi_eval, ActivationSpec};
use crate::error::{Error, Result};
use crate::kernels::{Cutoff, SeriesKernel};
use crate::orthopoly::polynomial_dimension;
use crate::parallel;
use crate::quadrature::{compute_weights_with, QuadratureOptions, QuadratureRule};
use crate::sphere::{self, dot, PointCloud, PointKind, Rotation};

/// Residual threshold both rules must meet before a network is built.
pub const BUILD_TOLERANCE: f64 = 1e-6;

/// How [`SampleSet::symmetrize`] made the data even.
#[derive(Debug, Clone, PartialEq)]
pub enum Symmetrization {
    /// Sites were antipodally closed and values already agreed on pairs.
    AlreadyEven,
    /// Sites were antipodally closed; values on each pair were replaced by
    /// their mean. Carries the largest half-difference removed.
    Averaged { max_odd_part: f64 },
    /// Antipodes of all sites were appended with the same values.
    Augmented { added: usize },
}

/// Sample sites and values.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    cloud: PointCloud,
    values: Vec<f64>,
    even: bool,
}

impl SampleSet {
    pub fn new(cloud: PointCloud, values: Vec<f64>) -> Result<Self> {
        if values.len() != cloud.len() {
            return Err(Error::Dimension {
                expected: cloud.len(),
                got: values.len(),
            });
        }
        Ok(Self {
            cloud,
            values,
            even: false,
        })
    }

    /// Samples `f` at every site.
    pub fn from_fn<F: Fn(&[f64]) -> f64 + Sync>(cloud: PointCloud, f: F) -> Self {
        let mut values = vec![0.0; cloud.len()];
        parallel::fill(&mut values, |i| f(cloud.point(i)));
        Self {
            cloud,
            values,
            even: false,
        }
    }

    pub fn cloud(&self) -> &PointCloud {
        &self.cloud
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// True once the set is known to hold `±ξ` pairs with equal values.
    pub fn is_even(&self) -> bool {
        self.even
    }

    /// Replaces `f` by its even part `(f(x) + f(-x))/2`.
    ///
    /// Closed clouds are averaged pairwise; otherwise the antipodes are added
    /// with copied values, which is the even extension of the data.
    pub fn symmetrize(self) -> (Self, Symmetrization) {
        if let Some(partners) = self.cloud.antipodal_partners() {
            let mut values = self.values.clone();
            let mut odd = 0.0f64;
            for (i, &j) in partners.iter().enumerate() {
                odd = odd.max((self.values[i] - self.values[j]).abs() / 2.0);
                values[i] = 0.5 * (self.values[i] + self.values[j]);
            }
            let how = if odd == 0.0 {
                Symmetrization::AlreadyEven
            } else {
                Symmetrization::Averaged { max_odd_part: odd }
            };
            let set = Self {
                cloud: self.cloud,
                values,
                even: true,
            };
            return (set, how);
        }
        let added = self.cloud.len();
        let cloud = self.cloud.with_antipodes();
        let mut values = self.values.clone();
        values.extend_from_slice(&self.values);
        (
            Self {
                cloud,
                values,
                even: true,
            },
            Symmetrization::Augmented { added },
        )
    }

    /// Pointwise `a·self + b·other` on identical sites.
    pub fn combine(&self, a: f64, other: &SampleSet, b: f64) -> Result<Self> {
        if self.cloud != other.cloud {
            return Err(Error::domain("sample sets live on different sites"));
        }
        Ok(Self {
            cloud: self.cloud.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| a * x + b * y)
                .collect(),
            even: self.even && other.even,
        })
    }
}

/// `Σ_ξ w̃_ξ f(ξ) K(x·ξ)`, folded over antipodal pairs when the rule allows
/// it. The kernel must be even.
struct WeightedSum<'a> {
    cloud: &'a PointCloud,
    /// `(site index, multiplier · w̃ · f)` per retained site.
    terms: Vec<(usize, f64)>,
}

impl<'a> WeightedSum<'a> {
    fn new(mu: &'a QuadratureRule, values: &[f64]) -> Self {
        let w = mu.weights();
        let folded = mu.cloud().antipodal_partners().filter(|p| {
            p.iter()
                .enumerate()
                .all(|(i, &j)| w[i] == w[j] && values[i] == values[j])
        });
        let terms = match folded {
            Some(p) => (0..w.len())
                .filter(|&i| i < p[i])
                .map(|i| (i, 2.0 * w[i] * values[i]))
                .collect(),
            None => (0..w.len()).map(|i| (i, w[i] * values[i])).collect(),
        };
        Self {
            cloud: mu.cloud(),
            terms,
        }
    }

    fn eval(&self, kernel: &SeriesKernel, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|&(i, c)| c * kernel.eval_unchecked(dot(x, self.cloud.point(i)).clamp(-1.0, 1.0)))
            .sum()
    }
}

fn check_sites(mu: &QuadratureRule, samples: &SampleSet) -> Result<()> {
    if mu.cloud() != samples.cloud() {
        return Err(Error::domain("quadrature nodes and sample sites differ"));
    }
    Ok(())
}

/// The smoothing operator `σ_n(μ; f, x) = Σ_ξ w̃_ξ f(ξ) Φ_n(x·ξ)`.
pub struct Smoother<'a> {
    kernel: SeriesKernel,
    sum: WeightedSum<'a>,
    order_warning: bool,
}

impl<'a> Smoother<'a> {
    pub fn new(mu: &'a QuadratureRule, samples: &SampleSet, n: usize, cutoff: &Cutoff) -> Result<Self> {
        check_sites(mu, samples)?;
        Ok(Self {
            kernel: SeriesKernel::lowpass(mu.q(), cutoff, n)?,
            sum: WeightedSum::new(mu, samples.values()),
            order_warning: mu.order() < 4 * n,
        })
    }

    /// True when the rule's order is below `4n`, the order under which
    /// `σ_n` reproduces `Π_n`.
    pub fn order_warning(&self) -> bool {
        self.order_warning
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.kernel.q() + 1 {
            return Err(Error::Dimension {
                expected: self.kernel.q() + 1,
                got: x.len(),
            });
        }
        Ok(self.sum.eval(&self.kernel, x))
    }

    pub fn eval_cloud(&self, points: &PointCloud) -> Result<Vec<f64>> {
        if points.q() != self.kernel.q() {
            return Err(Error::Dimension {
                expected: self.kernel.q() + 1,
                got: points.dim(),
            });
        }
        let mut out = vec![0.0; points.len()];
        parallel::fill(&mut out, |i| self.sum.eval(&self.kernel, points.point(i)));
        Ok(out)
    }
}

/// `σ_n(μ; f, x)`.
pub fn sigma_apply(mu: &QuadratureRule, samples: &SampleSet, n: usize, cutoff: &Cutoff, x: &[f64]) -> Result<f64> {
    Smoother::new(mu, samples, n, cutoff)?.eval(x)
}

/// `D_φ σ_N(μ; f)` evaluated at arbitrary points, through `Ψ̃_N`.
pub fn dphi_apply(
    spec: &ActivationSpec,
    mu: &QuadratureRule,
    samples: &SampleSet,
    n: usize,
    cutoff: &Cutoff,
    points: &PointCloud,
) -> Result<Vec<f64>> {
    check_sites(mu, samples)?;
    let kernel = SeriesKernel::dphi(spec, cutoff, n)?;
    let sum = WeightedSum::new(mu, samples.values());
    let mut out = vec![0.0; points.len()];
    parallel::fill(&mut out, |i| sum.eval(&kernel, points.point(i)));
    Ok(out)
}

/// Residuals of the two rules used in a build.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BuildInfo {
    pub mu_residual: f64,
    pub nu_residual: f64,
}

/// `x ↦ Σ_k a_k |x·x_k|^{2γ+1}` on `S^q`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZFNetwork {
    spec: ActivationSpec,
    bandwidth: usize,
    centers: PointCloud,
    coefficients: Vec<f64>,
    build: BuildInfo,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkFile {
    q: usize,
    gamma: f64,
    #[serde(rename = "N")]
    n: usize,
    centers: Vec<Vec<f64>>,
    coefficients: Vec<f64>,
    build: BuildInfo,
}

impl ZFNetwork {
    pub fn new(
        spec: ActivationSpec,
        bandwidth: usize,
        centers: PointCloud,
        coefficients: Vec<f64>,
        build: BuildInfo,
    ) -> Result<Self> {
        if centers.q() != spec.q() {
            return Err(Error::Dimension {
                expected: spec.q() + 1,
                got: centers.dim(),
            });
        }
        if coefficients.len() != centers.len() {
            return Err(Error::Dimension {
                expected: centers.len(),
                got: coefficients.len(),
            });
        }
        Ok(Self {
            spec,
            bandwidth,
            centers,
            coefficients,
            build,
        })
    }

    pub fn spec(&self) -> &ActivationSpec {
        &self.spec
    }

    pub fn q(&self) -> usize {
        self.spec.q()
    }

    pub fn gamma(&self) -> f64 {
        self.spec.gamma()
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn centers(&self) -> &PointCloud {
        &self.centers
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn build_info(&self) -> BuildInfo {
        self.build
    }

    /// `G(x)`.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.centers.dim() {
            return Err(Error::Dimension {
                expected: self.centers.dim(),
                got: x.len(),
            });
        }
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: &[f64]) -> f64 {
        let g = self.spec.gamma();
        self.centers
            .iter()
            .zip(&self.coefficients)
            .map(|(c, a)| a * phi_eval(g, dot(x, c)))
            .sum()
    }

    pub fn eval_cloud(&self, points: &PointCloud) -> Result<Vec<f64>> {
        if points.dim() != self.centers.dim() {
            return Err(Error::Dimension {
                expected: self.centers.dim(),
                got: points.dim(),
            });
        }
        let mut out = vec![0.0; points.len()];
        parallel::fill(&mut out, |i| self.eval_unchecked(points.point(i)));
        Ok(out)
    }

    /// `Σ_k |a_k|`.
    pub fn coefficient_l1(&self) -> f64 {
        self.coefficients.iter().map(|a| a.abs()).sum()
    }

    /// `Σ_k w_k |a_k / w_k|`, the center-weighted integral of `|D_φ σ_N|`;
    /// equals [`coefficient_l1`](Self::coefficient_l1) when every `w_k > 0`.
    pub fn weighted_l1(&self, center_weights: &[f64]) -> Result<f64> {
        if center_weights.len() != self.coefficients.len() {
            return Err(Error::Dimension {
                expected: self.coefficients.len(),
                got: center_weights.len(),
            });
        }
        Ok(self
            .coefficients
            .iter()
            .zip(center_weights)
            .map(|(a, w)| if *w == 0.0 { 0.0 } else { w * (a / w).abs() })
            .sum())
    }

    pub fn to_json(&self) -> Result<String> {
        let file = NetworkFile {
            q: self.q(),
            gamma: self.gamma(),
            n: self.bandwidth,
            centers: self.centers.iter().map(<[f64]>::to_vec).collect(),
            coefficients: self.coefficients.clone(),
            build: self.build,
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: NetworkFile = serde_json::from_str(text)?;
        let spec = ActivationSpec::new(file.gamma, file.q)?;
        let mut flat = Vec::with_capacity(file.centers.len() * (file.q + 1));
        for c in &file.centers {
            if c.len() != file.q + 1 {
                return Err(Error::Dimension {
                    expected: file.q + 1,
                    got: c.len(),
                });
            }
            flat.extend_from_slice(c);
        }
        let centers = PointCloud::from_flat(file.q, flat)?;
        Self::new(spec, file.n, centers, file.coefficients, file.build)
    }
}

fn check_rule(rule: &QuadratureRule, order: usize) -> Result<()> {
    if rule.order() < order || !(rule.residual() < BUILD_TOLERANCE) {
        return Err(Error::Infeasible {
            order,
            residual: rule.residual(),
            tol: BUILD_TOLERANCE,
        });
    }
    Ok(())
}

/// Builds `G_N` from samples.
///
/// `mu` lives on the sample sites, `nu` on the centers; both must be exact to
/// order `4N` with residual below [`BUILD_TOLERANCE`]. The samples must be
/// even (see [`SampleSet::symmetrize`]).
pub fn build_network(
    spec: &ActivationSpec,
    mu: &QuadratureRule,
    nu: &QuadratureRule,
    samples: &SampleSet,
    n: usize,
    cutoff: &Cutoff,
) -> Result<ZFNetwork> {
    if !samples.is_even() {
        return Err(Error::domain("samples must be even-symmetrized before building"));
    }
    if mu.q() != spec.q() || nu.q() != spec.q() {
        return Err(Error::Dimension {
            expected: spec.q() + 1,
            got: if mu.q() != spec.q() { mu.q() + 1 } else { nu.q() + 1 },
        });
    }
    check_sites(mu, samples)?;
    check_rule(mu, 4 * n)?;
    check_rule(nu, 4 * n)?;
    let values = dphi_apply(spec, mu, samples, n, cutoff, nu.cloud())?;
    let coefficients = values.iter().zip(nu.weights()).map(|(v, w)| w * v).collect();
    ZFNetwork::new(
        *spec,
        n,
        nu.cloud().clone(),
        coefficients,
        BuildInfo {
            mu_residual: mu.residual(),
            nu_residual: nu.residual(),
        },
    )
}

/// A discretized continuous network `f(x) = Σ_j v_j F(y_j) φ(x·y_j)` whose
/// pseudo-derivative `D_φ f` is (up to discretization) the even part of `F`.
#[derive(Debug, Clone)]
pub struct DensityTarget {
    spec: ActivationSpec,
    nodes: PointCloud,
    masses: Vec<f64>,
    order: usize,
}

/// Residual the high-order rule must meet.
pub const TARGET_RULE_TOLERANCE: f64 = 1e-10;

/// Discretizes `∫ φ(x·y) F(y) dμ*(y)` with `rule`.
pub fn make_target_from_density<F: Fn(&[f64]) -> f64>(
    spec: &ActivationSpec,
    density: F,
    rule: &QuadratureRule,
) -> Result<DensityTarget> {
    if rule.q() != spec.q() {
        return Err(Error::Dimension {
            expected: spec.q() + 1,
            got: rule.q() + 1,
        });
    }
    if !(rule.residual() < TARGET_RULE_TOLERANCE) {
        return Err(Error::Infeasible {
            order: rule.order(),
            residual: rule.residual(),
            tol: TARGET_RULE_TOLERANCE,
        });
    }
    let masses = rule
        .cloud()
        .iter()
        .zip(rule.weights())
        .map(|(y, w)| w * density(y))
        .collect();
    Ok(DensityTarget {
        spec: *spec,
        nodes: rule.cloud().clone(),
        masses,
        order: rule.order(),
    })
}

impl DensityTarget {
    pub fn eval(&self, x: &[f64]) -> f64 {
        let g = self.spec.gamma();
        self.nodes
            .iter()
            .zip(&self.masses)
            .map(|(y, m)| m * phi_eval(g, dot(x, y)))
            .sum()
    }

    /// Order of the rule used for the discretization.
    pub fn order(&self) -> usize {
        self.order
    }

    /// The discretization as a network (one center per rule node).
    pub fn as_network(&self) -> Result<ZFNetwork> {
        ZFNetwork::new(
            self.spec,
            0,
            self.nodes.clone(),
            self.masses.clone(),
            BuildInfo {
                mu_residual: 0.0,
                nu_residual: 0.0,
            },
        )
    }
}

/// Site generation and measurement settings for [`rate_study`].
#[derive(Debug, Clone, PartialEq)]
pub struct RateStudyConfig {
    /// Dyadic levels `n`; level `n` uses bandwidth `N = 2^n` and rules of order `4N`.
    pub levels: Vec<usize>,
    pub cutoff: Cutoff,
    pub sample_kind: PointKind,
    pub center_kind: PointKind,
    /// Number of points per `dim Π_{4N}`; clouds are antipodally closed.
    pub oversampling: f64,
    /// Size of the seeded uniform test grid.
    pub grid_size: usize,
    pub seed: u64,
    /// Random probes per exactness check.
    pub probes: usize,
}

impl RateStudyConfig {
    pub fn new(q: usize, levels: Vec<usize>) -> Self {
        let kind = if q == 2 {
            PointKind::FibonacciS2
        } else {
            PointKind::UniformRandom
        };
        Self {
            levels,
            cutoff: Cutoff::default_for(q),
            sample_kind: kind,
            center_kind: kind,
            oversampling: 1.6,
            grid_size: 20_000,
            seed: 0,
            probes: 2000,
        }
    }
}

/// One level of a rate study.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelReport {
    pub level: usize,
    pub bandwidth: usize,
    pub samples: usize,
    pub centers: usize,
    pub mu_residual: f64,
    pub nu_residual: f64,
    pub error: f64,
    pub coefficient_l1: f64,
    pub weighted_l1: f64,
    pub min_center_weight: f64,
}

/// Errors and coefficient sums across dyadic levels.
#[derive(Debug, Clone, PartialEq)]
pub struct RateReport {
    pub levels: Vec<LevelReport>,
    /// Levels dropped because a rule failed the exactness test.
    pub skipped: Vec<(usize, String)>,
    pub grid_size: usize,
}

impl RateReport {
    pub fn errors(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.error).collect()
    }

    pub fn coefficient_l1(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.coefficient_l1).collect()
    }

    /// `e_{n+1} / e_n` for consecutive reported levels.
    pub fn ratios(&self) -> Vec<f64> {
        self.levels.windows(2).map(|w| w[1].error / w[0].error).collect()
    }

    /// Fitted order per doubling, `-log2(e_{n+1}/e_n)`.
    pub fn fitted_orders(&self) -> Vec<f64> {
        self.ratios().iter().map(|r| -r.log2()).collect()
    }

    /// Geometric mean of the per-level contractions, `(e_last/e_first)^{1/(k-1)}`.
    pub fn mean_contraction(&self) -> f64 {
        let k = self.levels.len();
        if k < 2 {
            return f64::NAN;
        }
        (self.levels[k - 1].error / self.levels[0].error).powf(1.0 / (k - 1) as f64)
    }

    pub fn nonincreasing(&self) -> bool {
        self.levels.windows(2).all(|w| w[1].error <= w[0].error)
    }
}

/// The seeded uniform grid on which rate-study errors are measured.
pub fn test_grid(q: usize, size: usize, seed: u64) -> Result<PointCloud> {
    sphere::generate(q, PointKind::UniformRandom, size, seed ^ 0x7e57_6e1d)
}

/// Antipodally closed sites for rules of order `order`.
pub fn level_sites(q: usize, kind: PointKind, order: usize, oversampling: f64, seed: u64) -> Result<PointCloud> {
    let dim = polynomial_dimension(q, order) as f64;
    let pairs = ((oversampling * dim) / 2.0).ceil() as usize;
    sphere::generate_symmetric(q, kind, pairs.max(1), seed)
}

/// Builds `G_{2^n}` for every level and measures `max |f - G|` on a fixed grid.
pub fn rate_study<F>(spec: &ActivationSpec, target: F, config: &RateStudyConfig) -> Result<RateReport>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let q = spec.q();
    let grid = test_grid(q, config.grid_size, config.seed)?;
    let mut truth = vec![0.0; grid.len()];
    parallel::fill(&mut truth, |i| target(grid.point(i)));
    let rotation = Rotation::random(q, config.seed ^ 0xce27_e125);
    let options = QuadratureOptions {
        tolerance: BUILD_TOLERANCE,
        probes: Some(config.probes),
        probe_seed: config.seed,
        ..QuadratureOptions::default()
    };
    let mut levels = Vec::new();
    let mut skipped = Vec::new();
    for &level in &config.levels {
        let bandwidth = 1usize << level;
        let order = 4 * bandwidth;
        let level_seed = config.seed.wrapping_add(level as u64);
        let sites = level_sites(q, config.sample_kind, order, config.oversampling, level_seed)?;
        let centers = rotation.rotate_cloud(&level_sites(
            q,
            config.center_kind,
            order,
            config.oversampling,
            level_seed.wrapping_add(0x1000),
        )?)?;
        let mu = compute_weights_with(&sites, order, &options)?;
        let nu = compute_weights_with(&centers, order, &options)?;
        if !mu.is_exact() || !nu.is_exact() {
            skipped.push((
                level,
                format!(
                    "order {order} infeasible: sample residual {:.3e}, center residual {:.3e}",
                    mu.residual(),
                    nu.residual()
                ),
            ));
            continue;
        }
        let samples = SampleSet::from_fn(sites, &target).symmetrize().0;
        let net = build_network(spec, &mu, &nu, &samples, bandwidth, &config.cutoff)?;
        let approx = net.eval_cloud(&grid)?;
        let error = truth.iter().zip(&approx).fold(0.0f64, |m, (f, g)| m.max((f - g).abs()));
        levels.push(LevelReport {
            level,
            bandwidth,
            samples: mu.cloud().len(),
            centers: nu.cloud().len(),
            mu_residual: mu.residual(),
            nu_residual: nu.residual(),
            error,
            coefficient_l1: net.coefficient_l1(),
            weighted_l1: net.weighted_l1(nu.weights())?,
            min_center_weight: nu.diagnostics().min_weight,
        });
    }
    Ok(RateReport {
        levels,
        skipped,
        grid_size: grid.len(),
    })
}

/// `max_x |G(f∘U; x) - G(f; Ux)|` over `test_points`.
///
/// The first network is built on the original sites and centers from the data
/// `f(Uξ)`; the second on the rotated sites `Uξ` and centers `Ux_k`, reusing
/// the same weights and data.
#[allow(clippy::too_many_arguments)]
pub fn rotation_check<F>(
    spec: &ActivationSpec,
    target: F,
    mu: &QuadratureRule,
    nu: &QuadratureRule,
    n: usize,
    cutoff: &Cutoff,
    rotation: &Rotation,
    test_points: &PointCloud,
) -> Result<f64>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let rotated_sites = rotation.rotate_cloud(mu.cloud())?;
    let values = {
        let mut v = vec![0.0; rotated_sites.len()];
        parallel::fill(&mut v, |i| target(rotated_sites.point(i)));
        v
    };
    let plain = SampleSet::new(mu.cloud().clone(), values.clone())?.symmetrize().0;
    let moved = SampleSet::new(rotated_sites.clone(), values)?.symmetrize().0;
    let mu_rot = mu.with_cloud(rotated_sites)?;
    let nu_rot = nu.with_cloud(rotation.rotate_cloud(nu.cloud())?)?;
    let net = build_network(spec, mu, nu, &plain, n, cutoff)?;
    let net_rot = build_network(spec, &mu_rot, &nu_rot, &moved, n, cutoff)?;
    let a = net.eval_cloud(test_points)?;
    let b = net_rot.eval_cloud(&rotation.rotate_cloud(test_points)?)?;
    Ok(a.iter().zip(&b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())))
}
