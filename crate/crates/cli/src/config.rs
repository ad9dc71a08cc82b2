//! Experiment settings: a JSON config file overlaid by command-line flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use zfnet::kernels::default_smoothness;
use zfnet::{ActivationSpec, Cutoff, PointKind};

use crate::Failure;

/// Settings as read from a config file or from flags; every field optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Partial {
    pub q: Option<usize>,
    pub gamma: Option<f64>,
    pub smoothness: Option<usize>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub n: Option<usize>,
    pub levels: Option<Vec<usize>>,
    pub sample_kind: Option<String>,
    pub center_kind: Option<String>,
    pub oversampling: Option<f64>,
    pub grid_size: Option<usize>,
    pub probes: Option<usize>,
    pub target_order: Option<usize>,
    pub target_probes: Option<usize>,
    pub density_center: Option<Vec<f64>>,
    pub max_index: Option<usize>,
    pub trials: Option<usize>,
    pub profile_points: Option<usize>,
}

macro_rules! overlay {
    ($base:ident, $top:ident, $($f:ident),*) => {
        Partial { $($f: $top.$f.or($base.$f)),* }
    };
}

impl Partial {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
    }

    /// Fields set in `top` win.
    pub fn overlay(self, top: Partial) -> Partial {
        let base = self;
        overlay!(
            base,
            top,
            q,
            gamma,
            smoothness,
            seed,
            tol,
            out,
            n,
            levels,
            sample_kind,
            center_kind,
            oversampling,
            grid_size,
            probes,
            target_order,
            target_probes,
            density_center,
            max_index,
            trials,
            profile_points
        )
    }

    pub fn resolve(self) -> Result<Config, Failure> {
        let q = self.q.unwrap_or(2);
        if q < 2 {
            return Err(Failure::Config(format!("q must be at least 2, got {q}")));
        }
        let gamma = self.gamma.unwrap_or(0.0);
        ActivationSpec::new(gamma, q)?;
        let smoothness = self.smoothness.unwrap_or_else(|| default_smoothness(q));
        Cutoff::for_sphere(smoothness, q)?;
        let default_kind = if q == 2 {
            PointKind::FibonacciS2
        } else {
            PointKind::UniformRandom
        };
        let kind = |s: Option<String>| -> Result<String, Failure> {
            match s {
                Some(s) => Ok(s.parse::<PointKind>()?.name().to_string()),
                None => Ok(default_kind.name().to_string()),
            }
        };
        let tol = self.tol.unwrap_or(1e-8);
        if !(tol > 0.0) {
            return Err(Failure::Config(format!("tolerance must be positive, got {tol}")));
        }
        let oversampling = self.oversampling.unwrap_or(1.6);
        if !(oversampling >= 1.0) {
            return Err(Failure::Config(format!(
                "oversampling must be at least 1, got {oversampling}"
            )));
        }
        let levels = self.levels.unwrap_or_else(|| vec![1, 2, 3, 4]);
        if levels.is_empty() {
            return Err(Failure::Config("levels must not be empty".into()));
        }
        let density_center = match self.density_center {
            Some(z) if z.len() != q + 1 => {
                return Err(Failure::Config(format!(
                    "density_center needs {} coordinates, got {}",
                    q + 1,
                    z.len()
                )));
            }
            Some(z) => z,
            None => default_center(q),
        };
        let norm = density_center.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Failure::Config("density_center must be a nonzero vector".into()));
        }
        Ok(Config {
            q,
            gamma,
            smoothness,
            seed: self.seed.unwrap_or(0),
            tol,
            out: self.out.unwrap_or_else(|| PathBuf::from("zfnet-out")),
            n: self.n.unwrap_or(8).max(1),
            levels,
            sample_kind: kind(self.sample_kind)?,
            center_kind: kind(self.center_kind)?,
            oversampling,
            grid_size: self.grid_size.unwrap_or(20_000).max(1),
            probes: self.probes.unwrap_or(2000),
            target_order: self.target_order.unwrap_or(256),
            target_probes: self.target_probes.unwrap_or(200),
            density_center: density_center.iter().map(|c| c / norm).collect(),
            max_index: self.max_index.unwrap_or(60),
            trials: self.trials.unwrap_or(5),
            profile_points: self.profile_points.unwrap_or(1001).max(3),
        })
    }
}

fn default_center(q: usize) -> Vec<f64> {
    let base = [0.3, -0.5, 0.8, 0.2, -0.4, 0.6];
    (0..=q).map(|i| base[i % base.len()]).collect()
}

/// Fully resolved settings; written into every metadata sidecar.
#[derive(Debug, Clone, Serialize)]
pub struct Config {
    pub q: usize,
    pub gamma: f64,
    pub smoothness: usize,
    pub seed: u64,
    pub tol: f64,
    pub out: PathBuf,
    /// Network bandwidth `N`.
    pub n: usize,
    pub levels: Vec<usize>,
    pub sample_kind: String,
    pub center_kind: String,
    pub oversampling: f64,
    pub grid_size: usize,
    /// Random probes for the exactness check of site rules.
    pub probes: usize,
    pub target_order: usize,
    pub target_probes: usize,
    /// Unit vector `z` of the rate-study density `exp(y·z)`.
    pub density_center: Vec<f64>,
    pub max_index: usize,
    pub trials: usize,
    pub profile_points: usize,
}

impl Config {
    pub fn spec(&self) -> ActivationSpec {
        ActivationSpec::new(self.gamma, self.q).expect("validated in resolve")
    }

    pub fn cutoff(&self) -> Cutoff {
        Cutoff::for_sphere(self.smoothness, self.q).expect("validated in resolve")
    }

    pub fn sample_kind(&self) -> PointKind {
        self.sample_kind.parse().expect("validated in resolve")
    }

    pub fn center_kind(&self) -> PointKind {
        self.center_kind.parse().expect("validated in resolve")
    }
}
