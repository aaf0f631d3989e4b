//! Simulation world for the benchmark scenarios: uniform linear arrays,
//! incoherently scattered source covariances (Gaussian/uniform/point
//! angular densities), snapshot generation, sample covariance, and the
//! low-rank factorization of the signal covariance.
//!
//! Conventions: angles are in degrees measured from broadside; a desired
//! power `p` always means `tr(R)/N = p`, so `SNR(dB) = 10·log10(p/noise)`
//! exactly. Complex Gaussians are circularly symmetric with unit variance
//! (real and imaginary parts each of variance 1/2).

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{eig_hermitian, sqrt_psd, ComplexMatrix, HermitianMatrix};
use crate::{Error, Result};

/// Uniform linear array described by its element count and spacing in
/// wavelengths.
#[derive(Clone, Copy, Debug)]
pub struct ArrayGeometry {
    sensors: usize,
    spacing: f64,
}

impl ArrayGeometry {
    /// Requires at least two sensors and positive spacing.
    pub fn new(sensors: usize, spacing: f64) -> Result<Self> {
        if sensors < 2 {
            return Err(Error::InvalidInput(format!(
                "array needs at least 2 sensors, got {sensors}"
            )));
        }
        if !(spacing > 0.0) || !spacing.is_finite() {
            return Err(Error::InvalidInput(format!(
                "array spacing must be positive, got {spacing}"
            )));
        }
        Ok(Self { sensors, spacing })
    }

    /// Half-wavelength ULA, the standard benchmark geometry.
    pub fn half_wavelength(sensors: usize) -> Result<Self> {
        Self::new(sensors, 0.5)
    }

    pub fn sensors(&self) -> usize {
        self.sensors
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }
}

/// Angular power density shape of a source.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Density {
    /// `spread` is the standard deviation; support truncated at ±4σ.
    Gaussian,
    /// `spread` is the full width of the support.
    Uniform,
    /// Single plane wave; `spread` ignored.
    Point,
}

/// A (possibly scattered) source: density shape, center angle, angular
/// spread, and linear power.
#[derive(Clone, Copy, Debug)]
pub struct SourceDescriptor {
    density: Density,
    center_deg: f64,
    spread_deg: f64,
    power: f64,
}

impl SourceDescriptor {
    pub fn new(density: Density, center_deg: f64, spread_deg: f64, power: f64) -> Result<Self> {
        if !(spread_deg >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "source spread must be nonnegative, got {spread_deg}"
            )));
        }
        if !(power > 0.0) {
            return Err(Error::InvalidInput(format!(
                "source power must be positive, got {power}"
            )));
        }
        Ok(Self { density, center_deg, spread_deg, power })
    }

    pub fn gaussian(center_deg: f64, spread_deg: f64, power: f64) -> Result<Self> {
        Self::new(Density::Gaussian, center_deg, spread_deg, power)
    }

    pub fn uniform(center_deg: f64, spread_deg: f64, power: f64) -> Result<Self> {
        Self::new(Density::Uniform, center_deg, spread_deg, power)
    }

    pub fn point(center_deg: f64, power: f64) -> Result<Self> {
        Self::new(Density::Point, center_deg, 0.0, power)
    }

    pub fn density(&self) -> Density {
        self.density
    }

    pub fn center_deg(&self) -> f64 {
        self.center_deg
    }

    pub fn spread_deg(&self) -> f64 {
        self.spread_deg
    }

    pub fn power(&self) -> f64 {
        self.power
    }
}

/// A block of array snapshots.
#[derive(Clone, Debug)]
pub struct SnapshotSet {
    snapshots: Vec<Vec<Complex64>>,
}

impl SnapshotSet {
    pub fn new(snapshots: Vec<Vec<Complex64>>) -> Result<Self> {
        if snapshots.is_empty() {
            return Err(Error::InvalidInput("snapshot set must not be empty".into()));
        }
        let n = snapshots[0].len();
        if snapshots.iter().any(|s| s.len() != n) {
            return Err(Error::Dimension("snapshots have inconsistent lengths".into()));
        }
        Ok(Self { snapshots })
    }

    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    pub fn snapshots(&self) -> &[Vec<Complex64>] {
        &self.snapshots
    }
}

/// Plane-wave steering vector `aₙ = exp(j·2π·spacing·n·sin θ)`, `n = 0..N−1`.
/// `‖a‖² = N` and `a₀ = 1` by construction. Angles are clamped nowhere;
/// callers keep `|θ| ≤ 90°`.
pub fn steering_vector(geometry: &ArrayGeometry, theta_deg: f64) -> Vec<Complex64> {
    let phase = 2.0 * std::f64::consts::PI * geometry.spacing * theta_deg.to_radians().sin();
    (0..geometry.sensors)
        .map(|n| Complex64::from_polar(1.0, phase * n as f64))
        .collect()
}

/// Default integration grid step (degrees) for scattered covariances.
pub const DEFAULT_GRID_STEP_DEG: f64 = 0.05;

/// Covariance of an incoherently scattered source:
/// `R = Σₖ wₖ ρ(θₖ) a(θₖ)a(θₖ)ᴴ` on a trapezoidal grid over the density's
/// support (Gaussian support truncated at ±4σ, clipped to ±90°), then
/// rescaled so that `tr R = power·N` exactly.
pub fn scattered_covariance(
    geometry: &ArrayGeometry,
    source: &SourceDescriptor,
    grid_step_deg: f64,
) -> Result<HermitianMatrix> {
    if !(grid_step_deg > 0.0) {
        return Err(Error::InvalidInput(format!(
            "grid step must be positive, got {grid_step_deg}"
        )));
    }
    let n = geometry.sensors;
    if source.density == Density::Point || source.spread_deg == 0.0 {
        let a = steering_vector(geometry, source.center_deg);
        let mut r = HermitianMatrix::outer(&a);
        let tr = r.trace();
        r = r.scaled(source.power * n as f64 / tr);
        return Ok(r);
    }

    let (lo_raw, hi_raw) = match source.density {
        Density::Gaussian => (
            source.center_deg - 4.0 * source.spread_deg,
            source.center_deg + 4.0 * source.spread_deg,
        ),
        Density::Uniform => (
            source.center_deg - 0.5 * source.spread_deg,
            source.center_deg + 0.5 * source.spread_deg,
        ),
        Density::Point => unreachable!(),
    };
    let lo = lo_raw.max(-90.0);
    let hi = hi_raw.min(90.0);
    if !(hi > lo) {
        return Err(Error::InvalidInput(format!(
            "scattered source has empty integration support [{lo_raw}, {hi_raw}] within ±90°"
        )));
    }

    let steps = ((hi - lo) / grid_step_deg).ceil() as usize;
    let steps = steps.max(1);
    let dt = (hi - lo) / steps as f64;
    let density = |theta: f64| -> f64 {
        match source.density {
            Density::Gaussian => {
                let u = (theta - source.center_deg) / source.spread_deg;
                (-0.5 * u * u).exp()
            }
            Density::Uniform => 1.0,
            Density::Point => unreachable!(),
        }
    };
    let mut acc = ComplexMatrix::zeros(n, n);
    for k in 0..=steps {
        let theta = lo + dt * k as f64;
        let w = if k == 0 || k == steps { 0.5 * dt } else { dt };
        let rho = w * density(theta);
        if rho == 0.0 {
            continue;
        }
        let a = steering_vector(geometry, theta);
        for i in 0..n {
            for j in 0..n {
                acc[(i, j)] += a[i] * a[j].conj() * rho;
            }
        }
    }
    let r = HermitianMatrix::symmetrize(acc);
    let tr = r.trace();
    if !(tr > 0.0) {
        return Err(Error::InvalidInput(
            "scattered source integrated to zero power".into(),
        ));
    }
    Ok(r.scaled(source.power * n as f64 / tr))
}

/// Draws `t` snapshots `y = R_s^{1/2} g₁ + R_i^{1/2} g₂ + √noise·g₃` with
/// independent circularly symmetric unit-variance complex Gaussians,
/// deterministically from the seed.
pub fn generate_snapshots(
    rs: &HermitianMatrix,
    ri: &HermitianMatrix,
    noise_power: f64,
    t: usize,
    seed: u64,
) -> Result<SnapshotSet> {
    let n = rs.dim();
    if ri.dim() != n {
        return Err(Error::Dimension(format!(
            "signal covariance is {n}×{n} but interference covariance is {0}×{0}",
            ri.dim()
        )));
    }
    if t == 0 {
        return Err(Error::InvalidInput("snapshot count must be at least 1".into()));
    }
    if !(noise_power > 0.0) {
        return Err(Error::InvalidInput(format!(
            "noise power must be positive, got {noise_power}"
        )));
    }
    let rs_half = sqrt_psd(rs);
    let ri_half = sqrt_psd(ri);
    let noise_amp = noise_power.sqrt();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let draw = |rng: &mut ChaCha12Rng| -> Vec<Complex64> {
        (0..n)
            .map(|_| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                Complex64::new(re * scale, im * scale)
            })
            .collect()
    };
    let mut snapshots = Vec::with_capacity(t);
    for _ in 0..t {
        let g1 = draw(&mut rng);
        let g2 = draw(&mut rng);
        let g3 = draw(&mut rng);
        let mut y = rs_half.as_matrix().matvec(&g1);
        let iy = ri_half.as_matrix().matvec(&g2);
        for i in 0..n {
            y[i] += iy[i] + noise_amp * g3[i];
        }
        snapshots.push(y);
    }
    SnapshotSet::new(snapshots)
}

/// Sample covariance `R̂ = (1/T) Σ y yᴴ`.
pub fn sample_covariance(set: &SnapshotSet) -> HermitianMatrix {
    let n = set.snapshots[0].len();
    let t = set.len();
    let mut acc = ComplexMatrix::zeros(n, n);
    for y in &set.snapshots {
        for i in 0..n {
            for j in 0..n {
                acc[(i, j)] += y[i] * y[j].conj();
            }
        }
    }
    HermitianMatrix::symmetrize(acc.scaled_re(1.0 / t as f64))
}

/// Relative eigenvalue threshold used by automatic rank selection.
pub const DEFAULT_RANK_THRESHOLD: f64 = 1e-8;

/// Number of eigenvalues of `rs_hat` at or above `threshold·λ₁`.
pub fn auto_rank(rs_hat: &HermitianMatrix, threshold: f64) -> Result<usize> {
    let e = eig_hermitian(rs_hat);
    let top = e.eigenvalues[0];
    if !(top > 0.0) {
        return Err(Error::InvalidInput(
            "covariance has no positive eigenvalue; rank selection undefined".into(),
        ));
    }
    Ok(e.eigenvalues.iter().filter(|&&v| v >= threshold * top).count())
}

/// Factorizes `R̂_s ≈ Q̂Q̂ᴴ` with `Q̂ ∈ C^{N×M}`: columns are the top
/// eigenvectors scaled by the square roots of their eigenvalues, ordered by
/// descending eigenvalue, so `Q̂Q̂ᴴ` is the best rank-`M` approximation.
/// `m = None` selects the rank automatically with
/// [`DEFAULT_RANK_THRESHOLD`]; see [`factorize_with_threshold`].
pub fn factorize_signal_covariance(
    rs_hat: &HermitianMatrix,
    m: Option<usize>,
) -> Result<ComplexMatrix> {
    factorize_with_threshold(rs_hat, m, DEFAULT_RANK_THRESHOLD)
}

/// As [`factorize_signal_covariance`] with an explicit auto-rank threshold.
pub fn factorize_with_threshold(
    rs_hat: &HermitianMatrix,
    m: Option<usize>,
    threshold: f64,
) -> Result<ComplexMatrix> {
    let n = rs_hat.dim();
    let rank = match m {
        Some(k) => {
            if k > n {
                return Err(Error::InvalidInput(format!(
                    "requested rank {k} exceeds dimension {n}"
                )));
            }
            if k == 0 {
                return Err(Error::InvalidInput("requested rank must be at least 1".into()));
            }
            k
        }
        None => auto_rank(rs_hat, threshold)?,
    };
    let e = eig_hermitian(rs_hat);
    let mut q = ComplexMatrix::zeros(n, rank);
    for c in 0..rank {
        let s = e.eigenvalues[c].max(0.0).sqrt();
        for i in 0..n {
            q[(i, c)] = e.eigenvectors[(i, c)] * s;
        }
    }
    Ok(q)
}
