//! Geometry of the unit sphere `S^q ⊂ R^{q+1}`: points, clouds, covering
//! radius and separation, point generators, caps and rotations.

use std::f64::consts::PI;
use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::orthopoly::{gauss_jacobi, ln_gamma};
use crate::parallel;

/// Points whose norm is this close to 1 after renormalization are accepted by
/// [`SpherePoint::new`]; file loaders apply the stricter [`FILE_NORM_TOL`].
pub const FILE_NORM_TOL: f64 = 1e-6;

/// Surface area `ω_q = 2π^{(q+1)/2} / Γ((q+1)/2)` of `S^q`.
pub fn surface_area(q: usize) -> f64 {
    let h = (q as f64 + 1.0) / 2.0;
    2.0 * (h * PI.ln() - ln_gamma(h).expect("positive argument")).exp()
}

/// Surface measure of a cap of geodesic radius `r`:
/// `ω_{q-1} ∫_0^r sin^{q-1}(t) dt`.
pub fn cap_measure(q: usize, r: f64) -> f64 {
    let r = r.clamp(0.0, PI);
    let rule = gauss_jacobi(0.0, 0.0, 40).expect("legendre rule");
    let half = r / 2.0;
    let integral = half * rule.integrate(|x| (half * (x + 1.0)).sin().powi(q as i32 - 1));
    surface_area(q - 1) * integral
}

/// A unit vector in `R^{q+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint {
    coords: Vec<f64>,
}

impl SpherePoint {
    /// Renormalizes `coords` onto the sphere.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::domain("a sphere point needs at least two coordinates"));
        }
        let norm = norm(&coords);
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::domain(format!("cannot normalize vector of norm {norm}")));
        }
        Ok(Self {
            coords: coords.into_iter().map(|c| c / norm).collect(),
        })
    }

    /// The `i`-th standard basis vector of `R^{q+1}`.
    pub fn basis(q: usize, i: usize) -> Self {
        let mut coords = vec![0.0; q + 1];
        coords[i] = 1.0;
        Self { coords }
    }

    pub fn q(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dot(&self, other: &SpherePoint) -> Result<f64> {
        check_dims(self.coords.len(), other.coords.len())?;
        Ok(dot(&self.coords, &other.coords))
    }

    pub fn antipode(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

fn check_dims(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::Dimension { expected, got });
    }
    Ok(())
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Geodesic distance `arccos(x·y)`.
pub fn geodesic(x: &SpherePoint, y: &SpherePoint) -> Result<f64> {
    x.dot(y)?;
    Ok(distance(&x.coords, &y.coords))
}

/// `arccos(x·y)` as `2 atan2(|x-y|, |x+y|)`, which keeps full accuracy near 0
/// and π where `arccos` loses half the digits.
pub(crate) fn distance(x: &[f64], y: &[f64]) -> f64 {
    let (mut minus, mut plus) = (0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        minus += (a - b) * (a - b);
        plus += (a + b) * (a + b);
    }
    2.0 * minus.sqrt().atan2(plus.sqrt())
}

/// Index of the cloud point with the largest inner product with `x`.
fn nearest(cloud: &PointCloud, x: &[f64]) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for (j, y) in cloud.iter().enumerate() {
        let t = dot(x, y);
        if t > best.1 {
            best = (j, t);
        }
    }
    best.0
}

/// A covering-radius estimate together with the probe set that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshNorm {
    /// Lower bound for the mesh norm `δ = sup_x min_j ρ(x, x_j)`.
    pub value: f64,
    pub probes: usize,
    /// Approximate covering radius of the probe set itself.
    pub resolution: f64,
}

/// A finite set of points on `S^q`, stored row-major.
#[derive(Debug, Clone)]
pub struct PointCloud {
    q: usize,
    data: Vec<f64>,
    mesh: OnceLock<MeshNorm>,
    separation: OnceLock<f64>,
}

impl PartialEq for PointCloud {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.data == other.data
    }
}

impl PointCloud {
    /// Builds a cloud from flat row-major coordinates, renormalizing each row.
    /// Rows already of unit norm to rounding are kept bit for bit.
    pub fn from_flat(q: usize, data: Vec<f64>) -> Result<Self> {
        let dim = q + 1;
        if q < 1 || data.len() % dim != 0 {
            return Err(Error::Dimension {
                expected: dim,
                got: data.len() % dim,
            });
        }
        let mut data = data;
        for row in data.chunks_mut(dim) {
            let n = norm(row);
            if !n.is_finite() || n == 0.0 {
                return Err(Error::domain(format!("cannot normalize vector of norm {n}")));
            }
            if (n - 1.0).abs() > 2.0 * f64::EPSILON {
                row.iter_mut().for_each(|c| *c /= n);
            }
        }
        Ok(Self::from_normalized(q, data))
    }

    pub(crate) fn from_normalized(q: usize, data: Vec<f64>) -> Self {
        Self {
            q,
            data,
            mesh: OnceLock::new(),
            separation: OnceLock::new(),
        }
    }

    pub fn from_points(points: &[SpherePoint]) -> Result<Self> {
        let q = points
            .first()
            .map(SpherePoint::q)
            .ok_or_else(|| Error::domain("empty point list"))?;
        let mut data = Vec::with_capacity(points.len() * (q + 1));
        for p in points {
            check_dims(q + 1, p.coords.len())?;
            data.extend_from_slice(&p.coords);
        }
        Ok(Self::from_normalized(q, data))
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.q + 1
    }

    pub fn len(&self) -> usize {
        self.data.len() / (self.q + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        let d = self.q + 1;
        &self.data[i * d..(i + 1) * d]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, f64> {
        self.data.chunks_exact(self.q + 1)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.data
    }

    pub fn to_points(&self) -> Vec<SpherePoint> {
        self.iter().map(|c| SpherePoint { coords: c.to_vec() }).collect()
    }

    /// The cloud followed by the antipodes of all its points.
    pub fn with_antipodes(&self) -> Self {
        let mut data = self.data.clone();
        data.extend(self.data.iter().map(|c| -c));
        Self::from_normalized(self.q, data)
    }

    /// If the cloud is closed under `x ↦ -x` with an even number of points,
    /// returns `partner[i]` = index of the antipode of point `i`.
    ///
    /// Antipodes must be exact negations (up to a 1e-12 coordinate grid).
    pub fn antipodal_partners(&self) -> Option<Vec<usize>> {
        let n = self.len();
        if n == 0 || n % 2 == 1 {
            return None;
        }
        let key = |c: &[f64], sign: f64| -> Vec<i64> { c.iter().map(|v| (sign * v * 1e12).round() as i64).collect() };
        let mut index = std::collections::HashMap::with_capacity(n);
        for (i, c) in self.iter().enumerate() {
            if index.insert(key(c, 1.0), i).is_some() {
                return None;
            }
        }
        let mut partner = vec![0; n];
        for (i, c) in self.iter().enumerate() {
            match index.get(&key(c, -1.0)) {
                Some(&j) if j != i => partner[i] = j,
                _ => return None,
            }
        }
        Some(partner)
    }

    /// Cached mesh norm estimate with the default probe density (50 probes per point).
    pub fn mesh_norm(&self) -> Result<MeshNorm> {
        if let Some(m) = self.mesh.get() {
            return Ok(*m);
        }
        let m = mesh_norm(self, DEFAULT_PROBE_DENSITY)?;
        Ok(*self.mesh.get_or_init(|| m))
    }

    /// Cached minimal separation.
    pub fn separation(&self) -> Result<f64> {
        if let Some(s) = self.separation.get() {
            return Ok(*s);
        }
        let s = separation(self)?;
        Ok(*self.separation.get_or_init(|| s))
    }

    fn select(&self, keep: &[usize]) -> Self {
        let mut data = Vec::with_capacity(keep.len() * self.dim());
        for &i in keep {
            data.extend_from_slice(self.point(i));
        }
        Self::from_normalized(self.q, data)
    }
}

/// Point-set generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointKind {
    /// Normalized Gaussian vectors from a seeded ChaCha8 stream.
    UniformRandom,
    /// Golden-angle spiral on `S^2`.
    FibonacciS2,
    /// Product of Gauss–Gegenbauer nodes in the polar angles and equispaced
    /// longitudes.
    TensorDesign,
}

impl PointKind {
    pub fn name(&self) -> &'static str {
        match self {
            PointKind::UniformRandom => "uniform-random",
            PointKind::FibonacciS2 => "fibonacci-s2",
            PointKind::TensorDesign => "tensor-design",
        }
    }
}

impl std::str::FromStr for PointKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform-random" | "random" => Ok(PointKind::UniformRandom),
            "fibonacci-s2" | "fibonacci" => Ok(PointKind::FibonacciS2),
            "tensor-design" | "tensor" => Ok(PointKind::TensorDesign),
            other => Err(Error::domain(format!("unknown point generator '{other}'"))),
        }
    }
}

/// Generates `m` points of the given kind.
///
/// `TensorDesign` returns the smallest product set with at least `m` points.
pub fn generate(q: usize, kind: PointKind, m: usize, seed: u64) -> Result<PointCloud> {
    if m == 0 {
        return Err(Error::domain("cannot generate an empty point cloud"));
    }
    if q < 1 {
        return Err(Error::Unsupported {
            kind: kind.name().into(),
            q,
        });
    }
    match kind {
        PointKind::UniformRandom => Ok(uniform_random(q, m, seed)),
        PointKind::FibonacciS2 if q == 2 => Ok(fibonacci(m)),
        PointKind::TensorDesign if q >= 2 => {
            let mut degree = 0;
            while tensor_count(q, degree) < m {
                degree += 1;
            }
            Ok(tensor_product(q, degree)?.0)
        }
        _ => Err(Error::Unsupported {
            kind: kind.name().into(),
            q,
        }),
    }
}

/// `2·pairs` points closed under `x ↦ -x`: `pairs` points of the requested kind
/// in the half-space `x_q > 0` (`x_q ≥ 0` for random points), then their
/// antipodes in the same order.
///
/// Fibonacci points are the upper half of a `2·pairs` spiral; random points
/// are folded into the upper half; tensor designs keep their upper half.
pub fn generate_symmetric(q: usize, kind: PointKind, pairs: usize, seed: u64) -> Result<PointCloud> {
    if pairs == 0 {
        return Err(Error::domain("cannot generate an empty point cloud"));
    }
    let dim = q + 1;
    let half: Vec<f64> = match kind {
        PointKind::UniformRandom => {
            let mut data = generate(q, kind, pairs, seed)?.data;
            for row in data.chunks_mut(dim) {
                if row[dim - 1] < 0.0 {
                    row.iter_mut().for_each(|c| *c = -*c);
                }
            }
            data
        }
        PointKind::FibonacciS2 => {
            let full = generate(q, kind, 2 * pairs, seed)?;
            full.data[..pairs * dim].to_vec()
        }
        PointKind::TensorDesign => {
            let full = generate(q, kind, 2 * pairs, seed)?;
            full.iter()
                .filter(|x| x[dim - 1] > 0.0)
                .flat_map(|x| x.iter().copied())
                .collect()
        }
    };
    Ok(PointCloud::from_normalized(q, half).with_antipodes())
}

fn uniform_random(q: usize, m: usize, seed: u64) -> PointCloud {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = q + 1;
    let mut data = Vec::with_capacity(m * dim);
    while data.len() < m * dim {
        let v: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
        let n = norm(&v);
        if n > 1e-12 {
            data.extend(v.iter().map(|c| c / n));
        }
    }
    PointCloud::from_normalized(q, data)
}

fn fibonacci(m: usize) -> PointCloud {
    let golden_angle = PI * (3.0 - 5f64.sqrt());
    let mut data = Vec::with_capacity(3 * m);
    for i in 0..m {
        let z = 1.0 - (2.0 * i as f64 + 1.0) / m as f64;
        let r = (1.0 - z * z).max(0.0).sqrt();
        let lon = golden_angle * i as f64;
        let v = [r * lon.cos(), r * lon.sin(), z];
        let n = norm(&v);
        data.extend(v.iter().map(|c| c / n));
    }
    PointCloud::from_normalized(2, data)
}

fn tensor_count(q: usize, degree: usize) -> usize {
    let m = degree / 2 + 1;
    m.pow(q as u32 - 1) * ((degree + 2) & !1)
}

/// Product points on `S^q` together with product weights that integrate every
/// polynomial of degree `≤ degree` exactly against surface measure.
///
/// Writing `x = (t, √(1-t²) y)` with `y ∈ S^{q-1}`, surface measure factors as
/// `(1-t²)^{(q-2)/2} dt dσ_{q-1}(y)`; the `t` factor gets a Gauss–Gegenbauer
/// rule and the circle gets `degree + 1` equispaced longitudes, rounded up to
/// an even count so that the set is closed under `x ↦ -x`.
pub(crate) fn tensor_product(q: usize, degree: usize) -> Result<(PointCloud, Vec<f64>)> {
    let m = degree / 2 + 1;
    // S^1
    // an even count keeps the set antipodally closed; the second half is the
    // exact negation of the first
    let k = (degree + 2) & !1;
    let half: Vec<Vec<f64>> = (0..k / 2)
        .map(|j| {
            let a = 2.0 * PI * (j as f64 + 0.5) / k as f64;
            vec![a.cos(), a.sin()]
        })
        .collect();
    let mut points: Vec<Vec<f64>> = half
        .iter()
        .cloned()
        .chain(half.iter().map(|y| y.iter().map(|c| -c).collect()))
        .collect();
    let mut weights = vec![2.0 * PI / k as f64; k];
    for d in 2..=q {
        let a = (d as f64 - 2.0) / 2.0;
        let rule = gauss_jacobi(a, a, m)?;
        // pair node i with node m-1-i exactly so that (t, y) and (-t, -y)
        // are bitwise antipodes
        let nodes: Vec<(f64, f64)> = (0..m)
            .map(|i| {
                let j = m - 1 - i;
                let t = 0.5 * (rule.nodes[i] - rule.nodes[j]);
                (t, 0.5 * (rule.weights[i] + rule.weights[j]))
            })
            .collect();
        let mut next_points = Vec::with_capacity(points.len() * m);
        let mut next_weights = Vec::with_capacity(points.len() * m);
        for &(t, wt) in &nodes {
            let s = (1.0 - t * t).sqrt();
            for (y, &wy) in points.iter().zip(&weights) {
                let mut x = Vec::with_capacity(d + 1);
                x.extend(y.iter().map(|c| s * c));
                x.push(t);
                next_points.push(x);
                next_weights.push(wt * wy);
            }
        }
        points = next_points;
        weights = next_weights;
    }
    let data: Vec<f64> = points.into_iter().flatten().collect();
    Ok((PointCloud::from_flat(q, data)?, weights))
}

/// Default number of mesh-norm probes per cloud point.
pub const DEFAULT_PROBE_DENSITY: usize = 50;
const PROBE_SEED: u64 = 0x05ee_d0f9_e0de;
const MIN_PROBES: usize = 2000;

/// Covering radius estimated by maximizing the distance to the cloud over a
/// dense probe set: `probe_density · M` points (at least 2000) of a Fibonacci
/// spiral (`q = 2`) or a seeded uniform sample, plus the antipodes of the
/// cloud.
pub fn mesh_norm(cloud: &PointCloud, probe_density: usize) -> Result<MeshNorm> {
    if cloud.is_empty() {
        return Err(Error::Degenerate("mesh norm of an empty cloud".into()));
    }
    let count = (probe_density.max(1) * cloud.len()).max(MIN_PROBES);
    let probes = if cloud.q() == 2 {
        fibonacci(count)
    } else {
        uniform_random(cloud.q(), count, PROBE_SEED)
    };
    let probes = PointCloud::from_normalized(cloud.q(), {
        let mut d = probes.data;
        d.extend(cloud.data.iter().map(|c| -c));
        d
    });
    let mut gaps = vec![0.0; probes.len()];
    parallel::fill(&mut gaps, |i| {
        let x = probes.point(i);
        distance(x, cloud.point(nearest(cloud, x)))
    });
    let worst = gaps.iter().copied().fold(0.0f64, f64::max);
    let resolution = (surface_area(cloud.q()) / count as f64).powf(1.0 / cloud.q() as f64);
    Ok(MeshNorm {
        value: worst,
        probes: probes.len(),
        resolution,
    })
}

/// Minimal pairwise geodesic distance, computed exactly.
pub fn separation(cloud: &PointCloud) -> Result<f64> {
    let n = cloud.len();
    if n < 2 {
        return Err(Error::Degenerate(format!("separation needs two points, cloud has {n}")));
    }
    let mut closest = vec![0.0; n - 1];
    parallel::fill(&mut closest, |i| {
        let x = cloud.point(i);
        let mut best = (i + 1, f64::NEG_INFINITY);
        for j in i + 1..n {
            let t = dot(x, cloud.point(j));
            if t > best.1 {
                best = (j, t);
            }
        }
        distance(x, cloud.point(best.0))
    });
    Ok(closest.iter().copied().fold(PI, f64::min))
}

/// Greedy thinning at radius `δ(C)`: a point is kept unless it lies within the
/// estimated mesh norm of an already kept point. The result has separation at
/// least `δ(C)` and mesh norm at most `2δ(C)`, so `η ≤ 2δ ≤ 4η` holds up to
/// probe resolution.
pub fn prune_close(cloud: &PointCloud) -> Result<PointCloud> {
    if cloud.len() < 2 {
        return Ok(cloud.clone());
    }
    let radius = cloud.mesh_norm()?.value;
    let threshold = radius.cos();
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..cloud.len() {
        let x = cloud.point(i);
        let close = keep.iter().any(|&j| {
            let t = dot(x, cloud.point(j));
            // Exact duplicates are always dropped, even when δ rounds to 0.
            t > threshold || t >= 1.0 - 1e-15
        });
        if !close {
            keep.push(i);
        }
    }
    if keep.len() == cloud.len() {
        return Ok(cloud.clone());
    }
    Ok(cloud.select(&keep))
}

/// An orthogonal `(q+1)×(q+1)` matrix with determinant +1, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Rotation {
    dim: usize,
    m: Vec<f64>,
}

const ORTHOGONALITY_TOL: f64 = 1e-12;

impl Rotation {
    /// Checks `U Uᵀ = I` (entrywise within 1e-12) and `det U > 0`.
    pub fn new(dim: usize, rows: Vec<f64>) -> Result<Self> {
        if rows.len() != dim * dim {
            return Err(Error::Dimension {
                expected: dim * dim,
                got: rows.len(),
            });
        }
        for i in 0..dim {
            for j in 0..dim {
                let v = dot(&rows[i * dim..(i + 1) * dim], &rows[j * dim..(j + 1) * dim]);
                let target = if i == j { 1.0 } else { 0.0 };
                if (v - target).abs() > ORTHOGONALITY_TOL {
                    return Err(Error::domain(format!(
                        "matrix is not orthogonal: (U Uᵀ)[{i}][{j}] = {v}"
                    )));
                }
            }
        }
        if determinant(dim, &rows) < 0.0 {
            return Err(Error::domain("matrix is a reflection (determinant -1)"));
        }
        Ok(Self { dim, m: rows })
    }

    pub fn identity(q: usize) -> Self {
        let dim = q + 1;
        let mut m = vec![0.0; dim * dim];
        for i in 0..dim {
            m[i * dim + i] = 1.0;
        }
        Self { dim, m }
    }

    /// Haar-distributed rotation: Gram–Schmidt of a seeded Gaussian matrix with
    /// the sign convention `diag(R) > 0`, then one column flipped if needed to
    /// make the determinant +1.
    pub fn random(q: usize, seed: u64) -> Self {
        let dim = q + 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cols: Vec<Vec<f64>> = (0..dim)
            .map(|_| (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect())
            .collect();
        for j in 0..dim {
            // two passes of modified Gram–Schmidt
            for _ in 0..2 {
                for k in 0..j {
                    let proj = dot(&cols[j], &cols[k]);
                    let (head, tail) = cols.split_at_mut(j);
                    for (c, b) in tail[0].iter_mut().zip(&head[k]) {
                        *c -= proj * b;
                    }
                }
            }
            let n = norm(&cols[j]);
            cols[j].iter_mut().for_each(|c| *c /= n);
        }
        let mut m = vec![0.0; dim * dim];
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m[i * dim + j] = *v;
            }
        }
        if determinant(dim, &m) < 0.0 {
            for i in 0..dim {
                m[i * dim] = -m[i * dim];
            }
        }
        Self { dim, m }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &[f64] {
        &self.m
    }

    /// `U x`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dims(self.dim, x.len())?;
        Ok(self.m.chunks_exact(self.dim).map(|row| dot(row, x)).collect())
    }

    pub fn rotate_point(&self, x: &SpherePoint) -> Result<SpherePoint> {
        Ok(SpherePoint {
            coords: self.apply(&x.coords)?,
        })
    }

    pub fn rotate_cloud(&self, cloud: &PointCloud) -> Result<PointCloud> {
        check_dims(self.dim, cloud.dim())?;
        let mut data = Vec::with_capacity(cloud.data.len());
        for x in cloud.iter() {
            data.extend(self.apply(x)?);
        }
        Ok(PointCloud::from_normalized(cloud.q, data))
    }
}

fn determinant(dim: usize, rows: &[f64]) -> f64 {
    let mut a = rows.to_vec();
    let mut det = 1.0;
    for c in 0..dim {
        let pivot = (c..dim)
            .max_by(|&i, &j| a[i * dim + c].abs().total_cmp(&a[j * dim + c].abs()))
            .unwrap();
        if a[pivot * dim + c] == 0.0 {
            return 0.0;
        }
        if pivot != c {
            for k in 0..dim {
                a.swap(c * dim + k, pivot * dim + k);
            }
            det = -det;
        }
        let p = a[c * dim + c];
        det *= p;
        for r in c + 1..dim {
            let f = a[r * dim + c] / p;
            for k in c..dim {
                a[r * dim + k] -= f * a[c * dim + k];
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_areas() {
        assert!((surface_area(1) - 2.0 * PI).abs() < 1e-13);
        assert!((surface_area(2) - 4.0 * PI).abs() < 1e-13);
        assert!((surface_area(3) - 2.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn geodesic_examples() {
        let e1 = SpherePoint::basis(2, 0);
        let e2 = SpherePoint::basis(2, 1);
        assert_eq!(geodesic(&e1, &e1).unwrap(), 0.0);
        assert!((geodesic(&e1, &e1.antipode()).unwrap() - PI).abs() < 1e-15);
        assert!((geodesic(&e1, &e2).unwrap() - PI / 2.0).abs() < 1e-15);
        let e3 = SpherePoint::basis(3, 0);
        assert!(matches!(geodesic(&e1, &e3), Err(Error::Dimension { .. })));
    }

    #[test]
    fn points_are_renormalized() {
        let p = SpherePoint::new(vec![3.0, 0.0, 4.0]).unwrap();
        assert_eq!(p.coords(), &[0.6, 0.0, 0.8]);
        assert!(SpherePoint::new(vec![0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn whole_cap_is_whole_sphere() {
        for q in 2..5 {
            assert!((cap_measure(q, PI) - surface_area(q)).abs() < 1e-12);
        }
        // S^2: 2π(1 - cos r)
        assert!((cap_measure(2, 0.7) - 2.0 * PI * (1.0 - 0.7f64.cos())).abs() < 1e-13);
    }

    #[test]
    fn generator_support() {
        assert!(generate(3, PointKind::FibonacciS2, 10, 0).is_err());
        assert!(generate(2, PointKind::UniformRandom, 0, 0).is_err());
        let t = generate(3, PointKind::TensorDesign, 100, 0).unwrap();
        assert!(t.len() >= 100);
        assert_eq!(t.q(), 3);
        let a = generate(2, PointKind::UniformRandom, 50, 7).unwrap();
        let b = generate(2, PointKind::UniformRandom, 50, 7).unwrap();
        let c = generate(2, PointKind::UniformRandom, 50, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn tensor_product_weights_integrate_low_degree() {
        for q in 2..5 {
            let (cloud, w) = tensor_product(q, 6).unwrap();
            let total: f64 = w.iter().sum();
            assert!((total - surface_area(q)).abs() < 1e-11);
            // ∫ x_0² dσ = ω_q / (q+1)
            let second: f64 = cloud.iter().zip(&w).map(|(x, w)| w * x[0] * x[0]).sum();
            assert!((second - surface_area(q) / (q as f64 + 1.0)).abs() < 1e-11);
        }
    }

    #[test]
    fn antipodal_detection() {
        let cloud = generate(2, PointKind::FibonacciS2, 30, 0).unwrap();
        assert!(cloud.antipodal_partners().is_none());
        let sym = cloud.with_antipodes();
        let partners = sym.antipodal_partners().unwrap();
        for (i, &j) in partners.iter().enumerate() {
            assert_eq!(partners[j], i);
            assert_eq!((i as i64 - j as i64).abs(), 30);
        }
    }

    #[test]
    fn mesh_norm_small_clouds() {
        let single = PointCloud::from_points(&[SpherePoint::basis(2, 2)]).unwrap();
        assert!((mesh_norm(&single, 50).unwrap().value - PI).abs() < 1e-12);
        let pair = single.with_antipodes();
        let m = mesh_norm(&pair, 50).unwrap();
        assert!((m.value - PI / 2.0).abs() < 0.01, "{m:?}");
    }

    #[test]
    fn separation_small_clouds() {
        let single = PointCloud::from_points(&[SpherePoint::basis(2, 2)]).unwrap();
        assert!(separation(&single).is_err());
        assert!((separation(&single.with_antipodes()).unwrap() - PI).abs() < 1e-12);
        let dup = PointCloud::from_points(&[SpherePoint::basis(2, 2), SpherePoint::basis(2, 2)]).unwrap();
        assert_eq!(separation(&dup).unwrap(), 0.0);
    }

    #[test]
    fn prune_removes_duplicates_only_when_needed() {
        let cloud = generate(2, PointKind::FibonacciS2, 200, 0).unwrap();
        let pruned = prune_close(&cloud).unwrap();
        assert_eq!(pruned, cloud);

        let mut data = cloud.as_flat().to_vec();
        data.extend_from_slice(cloud.point(17));
        let dup = PointCloud::from_flat(2, data).unwrap();
        let pruned = prune_close(&dup).unwrap();
        assert_eq!(pruned.len(), cloud.len());
        let drift = pruned
            .as_flat()
            .iter()
            .zip(cloud.as_flat())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        assert!(drift < 1e-15);
    }

    #[test]
    fn rotations() {
        let u = Rotation::random(2, 11);
        assert!(Rotation::new(3, u.matrix().to_vec()).is_ok());
        assert!(determinant(3, u.matrix()) > 0.0);
        let reflection = vec![-1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0];
        assert!(Rotation::new(3, reflection).is_err());
        let skew = vec![1.0, 0.1, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0];
        assert!(Rotation::new(3, skew).is_err());

        let cloud = generate(2, PointKind::UniformRandom, 10, 3).unwrap();
        assert_eq!(Rotation::identity(2).rotate_cloud(&cloud).unwrap(), cloud);
        let x = SpherePoint::basis(2, 0);
        assert!(u.rotate_point(&SpherePoint::basis(3, 0)).is_err());
        let ux = u.rotate_point(&x).unwrap();
        assert!((norm(ux.coords()) - 1.0).abs() < 1e-14);
    }
}
