use std::f64::consts::PI;
use std::path::Path;

use serde_json::json;
use zfnet::activation::{coefficient_sequence, phi_hat_closed_form_magnitude};
use zfnet::io;
use zfnet::network::{
    build_network, level_sites, make_target_from_density, rate_study as run_rate_study, rotation_check, test_grid,
    RateStudyConfig, Symmetrization,
};
use zfnet::quadrature::{compute_weights_with, regularity_estimate, search_rule, QuadratureOptions};
use zfnet::sphere::{generate as generate_points, generate_symmetric};
use zfnet::{Error, PointKind, QuadratureRule, Rotation, SampleSet, SeriesKernel, Window};

use crate::config::Config;
use crate::output::{write_json, write_metadata, Csv};
use crate::Failure;

/// Generic smooth test function used by `rotate-check` and `generate`.
fn smooth_target(x: &[f64]) -> f64 {
    let a: f64 = x.iter().enumerate().map(|(i, c)| c * (0.7 - 0.45 * i as f64)).sum();
    let b: f64 = x
        .iter()
        .enumerate()
        .map(|(i, c)| c * if i % 2 == 0 { 0.6 } else { -0.3 })
        .sum();
    a.cos() + b * b
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `f(x) = Σ_y w_y φ(x·y) exp(y·z)` over a product rule.
fn density_target(config: &Config) -> Result<zfnet::network::DensityTarget, Failure> {
    let options = QuadratureOptions {
        probes: Some(config.target_probes),
        probe_seed: config.seed,
        ..QuadratureOptions::default()
    };
    let rule = QuadratureRule::product(config.q, config.target_order, &options)?;
    let z = config.density_center.clone();
    Ok(make_target_from_density(&config.spec(), |y| dot(y, &z).exp(), &rule)?)
}

pub fn coeffs(config: &Config) -> Result<(), Failure> {
    let spec = config.spec();
    let last = config.max_index;
    let seq = coefficient_sequence(&spec, last + 1)?;
    let ln_abs = |l: usize| seq.phi_hat(l).abs().ln();
    let mut csv = Csv::new(&["ell", "phi_hat", "closed_form_magnitude", "rel_gap", "slope"]);
    let mut worst_gap = 0.0f64;
    for l in 0..=last {
        let value = seq.phi_hat(l);
        let closed = phi_hat_closed_form_magnitude(&spec, l)?;
        let gap = (value.abs() - closed).abs() / closed;
        worst_gap = worst_gap.max(gap);
        // central difference of log|φ̂| against log ℓ
        let slope = (l >= 2).then(|| (ln_abs(l + 1) - ln_abs(l - 1)) / (((l + 1) as f64).ln() - ((l - 1) as f64).ln()));
        csv.row(&[Some(l as f64), Some(value), Some(closed), Some(gap), slope]);
    }
    csv.write(&config.out.join("coeffs.csv"))?;
    write_metadata(
        config,
        "coeffs",
        &[],
        json!({ "max_rel_gap": worst_gap, "smoothness_exponent": spec.smoothness_exponent() }),
    )
}

pub fn quadrature(
    config: &Config,
    points: &Path,
    order: Option<usize>,
    probes: Option<usize>,
    cap_radius: Option<f64>,
) -> Result<(), Failure> {
    let cloud = io::read_points(points, Some(config.q))?;
    let options = QuadratureOptions {
        tolerance: config.tol,
        probes,
        probe_seed: config.seed,
        ..QuadratureOptions::default()
    };
    let rule = match order {
        Some(n) => compute_weights_with(&cloud, n, &options)?,
        None => search_rule(&cloud, config.tol, &options)?,
    };
    let d = cap_radius.unwrap_or(1.0 / rule.order().max(1) as f64);
    let regularity = regularity_estimate(&rule, d, 1000, config.seed)?;
    let diag = rule.diagnostics();
    let doc = json!({
        "order": rule.order(),
        "weights": rule.weights(),
        "residual": diag.residual,
        "weight_sum": diag.weight_sum,
        "min_weight": diag.min_weight,
        "condition": diag.condition,
        "regularity": { "d": regularity.d, "value": regularity.value },
    });
    write_json(&config.out.join("quadrature.json"), &doc)?;
    let mut notes = Vec::new();
    if rule.has_negative_weights() {
        notes.push(format!("negative weights present (min {:e})", diag.min_weight));
    }
    write_metadata(
        config,
        "quadrature",
        &notes,
        json!({
            "points": cloud.len(),
            "searched": order.is_none(),
            "probes": diag.probes,
            "rank": diag.rank,
            "folded": diag.folded,
        }),
    )?;
    if !rule.is_exact() {
        return Err(Error::Infeasible {
            order: rule.order(),
            residual: rule.residual(),
            tol: config.tol,
        }
        .into());
    }
    Ok(())
}

pub fn build(config: &Config, samples: &Path, centers: &Path) -> Result<(), Failure> {
    let spec = config.spec();
    let n = config.n;
    let raw = io::read_samples(samples, Some(config.q))?;
    let centers = io::read_points(centers, Some(config.q))?;
    let mut notes = Vec::new();
    let (samples, how) = raw.clone().symmetrize();
    match how {
        Symmetrization::AlreadyEven => {}
        Symmetrization::Averaged { max_odd_part } => notes.push(format!(
            "samples were not even: values on antipodal pairs replaced by their mean (largest odd part {max_odd_part:e})"
        )),
        Symmetrization::Augmented { added } => notes.push(format!(
            "samples were not even: {added} antipodal sites appended with copied values"
        )),
    }
    for note in &notes {
        eprintln!("zfnet: warning: {note}");
    }
    let options = QuadratureOptions {
        tolerance: config.tol,
        probes: Some(config.probes),
        probe_seed: config.seed,
        ..QuadratureOptions::default()
    };
    let mu = compute_weights_with(samples.cloud(), 4 * n, &options)?;
    let nu = compute_weights_with(&centers, 4 * n, &options)?;
    for (name, rule) in [("sample", &mu), ("center", &nu)] {
        eprintln!(
            "zfnet: {name} rule of order {}: residual {:.3e} over {} probes",
            rule.order(),
            rule.residual(),
            rule.diagnostics().probes
        );
    }
    let net = build_network(&spec, &mu, &nu, &samples, n, &config.cutoff())?;
    std::fs::write(config.out.join("network.json"), net.to_json()? + "\n")?;

    let fitted = net.eval_cloud(raw.cloud())?;
    let mut csv = Csv::new(&["index", "f", "G", "abs_error"]);
    let mut worst = 0.0f64;
    for (i, (f, g)) in raw.values().iter().zip(&fitted).enumerate() {
        worst = worst.max((f - g).abs());
        csv.row(&[Some(i as f64), Some(*f), Some(*g), Some((f - g).abs())]);
    }
    csv.write(&config.out.join("build_errors.csv"))?;
    write_metadata(
        config,
        "build",
        &notes,
        json!({
            "bandwidth": n,
            "samples": samples.cloud().len(),
            "centers": centers.len(),
            "mu_residual": mu.residual(),
            "nu_residual": nu.residual(),
            "max_abs_error": worst,
            "coefficient_l1": net.coefficient_l1(),
            "weighted_l1": net.weighted_l1(nu.weights())?,
            "negative_center_weights": nu.has_negative_weights(),
        }),
    )
}

pub fn rate_study(config: &Config) -> Result<(), Failure> {
    let spec = config.spec();
    let target = density_target(config)?;
    let mut study = RateStudyConfig::new(config.q, config.levels.clone());
    study.cutoff = config.cutoff();
    study.sample_kind = config.sample_kind();
    study.center_kind = config.center_kind();
    study.oversampling = config.oversampling;
    study.grid_size = config.grid_size;
    study.seed = config.seed;
    study.probes = config.probes;
    let report = run_rate_study(&spec, |x| target.eval(x), &study)?;

    let mut csv = Csv::new(&["n", "error", "l1", "ratio"]);
    for (i, level) in report.levels.iter().enumerate() {
        let ratio = (i > 0).then(|| level.error / report.levels[i - 1].error);
        csv.row(&[
            Some(level.level as f64),
            Some(level.error),
            Some(level.coefficient_l1),
            ratio,
        ]);
    }
    csv.write(&config.out.join("rate.csv"))?;
    let mut notes: Vec<String> = report
        .skipped
        .iter()
        .map(|(n, why)| format!("level {n} skipped: {why}"))
        .collect();
    for (n, why) in &report.skipped {
        eprintln!("zfnet: warning: level {n} skipped: {why}");
    }
    if report.levels.iter().any(|l| l.min_center_weight <= 0.0) {
        notes.push("some center weights are not positive; see weighted_l1".into());
    }
    let levels: Vec<_> = report
        .levels
        .iter()
        .map(|l| {
            json!({
                "n": l.level,
                "bandwidth": l.bandwidth,
                "samples": l.samples,
                "centers": l.centers,
                "mu_residual": l.mu_residual,
                "nu_residual": l.nu_residual,
                "error": l.error,
                "coefficient_l1": l.coefficient_l1,
                "weighted_l1": l.weighted_l1,
                "min_center_weight": l.min_center_weight,
            })
        })
        .collect();
    let mean = report.mean_contraction();
    write_metadata(
        config,
        "rate-study",
        &notes,
        json!({
            "levels": levels,
            "grid_size": report.grid_size,
            "mean_contraction": mean.is_finite().then_some(mean),
            "nonincreasing": report.nonincreasing(),
            "theory_contraction": 2f64.powf(-2.0 * (config.gamma + 1.0)),
        }),
    )
}

pub fn kernel_profile(config: &Config) -> Result<(), Failure> {
    let spec = config.spec();
    let cutoff = config.cutoff();
    let n = config.n;
    let window = Window::Band(cutoff.clone());
    let seq = coefficient_sequence(&spec, window.support_end(n))?;
    let lowpass = SeriesKernel::lowpass(config.q, &cutoff, n)?;
    let tilted = SeriesKernel::tilted(config.q, &window, &seq, n)?;
    let dphi = SeriesKernel::dphi(&spec, &cutoff, n)?;
    let m = config.profile_points;
    // t(π - θ) = -t(θ) exactly, so the even kernels tabulate symmetrically
    let mut ts = vec![0.0; m];
    for i in 0..m.div_ceil(2) {
        let t = (PI * i as f64 / (m - 1) as f64).cos();
        ts[i] = t;
        ts[m - 1 - i] = -t;
    }
    if m % 2 == 1 {
        ts[m / 2] = 0.0;
    }
    let mut csv = Csv::new(&["theta", "lowpass", "tilted", "dphi"]);
    for (i, &t) in ts.iter().enumerate() {
        let theta = PI * i as f64 / (m - 1) as f64;
        csv.row(&[
            Some(theta),
            Some(lowpass.eval(t)?),
            Some(tilted.eval(t)?),
            Some(dphi.eval(t)?),
        ]);
    }
    csv.write(&config.out.join("profile.csv"))?;
    write_metadata(config, "kernel-profile", &[], json!({ "bandwidth": n, "points": m }))
}

pub fn rotate_check(config: &Config) -> Result<(), Failure> {
    let spec = config.spec();
    let n = config.n;
    let order = 4 * n;
    let options = QuadratureOptions {
        tolerance: config.tol,
        probes: Some(config.probes),
        probe_seed: config.seed,
        ..QuadratureOptions::default()
    };
    let sites = level_sites(config.q, config.sample_kind(), order, config.oversampling, config.seed)?;
    let centers = level_sites(
        config.q,
        config.center_kind(),
        order,
        config.oversampling,
        config.seed.wrapping_add(1),
    )?;
    let centers = Rotation::random(config.q, config.seed ^ 0xc3).rotate_cloud(&centers)?;
    let mu = compute_weights_with(&sites, order, &options)?;
    let nu = compute_weights_with(&centers, order, &options)?;
    let grid = test_grid(config.q, config.grid_size, config.seed)?;
    let mut csv = Csv::new(&["trial", "deviation"]);
    let mut worst = 0.0f64;
    for trial in 0..config.trials {
        let rotation = Rotation::random(config.q, config.seed.wrapping_add(trial as u64));
        let dev = rotation_check(&spec, smooth_target, &mu, &nu, n, &config.cutoff(), &rotation, &grid)?;
        worst = worst.max(dev);
        csv.row(&[Some(trial as f64), Some(dev)]);
    }
    csv.write(&config.out.join("rotation.csv"))?;
    write_metadata(
        config,
        "rotate-check",
        &[],
        json!({
            "bandwidth": n,
            "samples": sites.len(),
            "centers": centers.len(),
            "mu_residual": mu.residual(),
            "nu_residual": nu.residual(),
            "max_deviation": worst,
        }),
    )
}

pub fn generate(
    config: &Config,
    kind: &str,
    count: usize,
    symmetric: bool,
    target: Option<&str>,
) -> Result<(), Failure> {
    let kind: PointKind = kind.parse()?;
    let cloud = if symmetric {
        generate_symmetric(config.q, kind, count, config.seed)?
    } else {
        generate_points(config.q, kind, count, config.seed)?
    };
    io::write_points(&config.out.join("points.csv"), &cloud)?;
    let samples = match target {
        None => None,
        Some("one") => Some(SampleSet::from_fn(cloud.clone(), |_| 1.0)),
        Some("smooth") => Some(SampleSet::from_fn(cloud.clone(), smooth_target)),
        Some("density") => {
            let f = density_target(config)?;
            Some(SampleSet::from_fn(cloud.clone(), |x| f.eval(x)))
        }
        Some(other) => {
            return Err(Failure::Config(format!(
                "unknown target '{other}' (one, smooth, density)"
            )))
        }
    };
    if let Some(samples) = &samples {
        io::write_samples(&config.out.join("samples.csv"), samples)?;
    }
    write_metadata(
        config,
        "generate",
        &[],
        json!({ "kind": kind.name(), "points": cloud.len(), "symmetric": symmetric, "target": target }),
    )
}
