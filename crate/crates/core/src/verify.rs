//! Numerical certification of the theory behind the solvers.
//!
//! Each check samples many random probes against a property the solved
//! instance must satisfy — the saddle-point inequalities of the SINR
//! function, the first-order optimality condition of the eigenvalue
//! objective, the closed-form partial derivatives, convexity of the two
//! objective functions, and the maximin/minimax value relation — and
//! reports the worst signed violation found. A passing report means the
//! property held on every probe to within the stated tolerance.
//!
//! Every check derives its probes from an explicit seed (the derivative
//! checks use a fixed internal stream), so a failing report is
//! reproducible from its inputs. The derivative formulas assume the top
//! eigenvalue of `R₁^{-1/2} Q Qᴴ R₁^{-1/2}` is simple; the derivative
//! checks refuse to run when the spectral gap is too small for the
//! formulas to apply.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::linalg::{
    cdot, eig_hermitian, inv_sqrt_psd, vnorm, ComplexMatrix, HermitianMatrix,
};
use crate::minimax::MinimaxSolution;
use crate::uncertainty::{contains_inc, IncSetSpec, SignalSetSpec};
use crate::{Error, Result};

/// Outcome of one certification check.
#[derive(Clone, Debug)]
pub struct CheckReport {
    /// Which property was checked.
    pub name: String,
    /// Number of probes evaluated.
    pub samples: usize,
    /// Largest signed violation observed (negative values mean the
    /// property held with margin on every probe).
    pub worst_violation: f64,
    /// Threshold the worst violation is compared against.
    pub tolerance: f64,
    /// `worst_violation <= tolerance`.
    pub pass: bool,
    /// Up to five human-readable descriptions of violating probes.
    pub witnesses: Vec<String>,
}

impl CheckReport {
    fn new(name: &str, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            samples: 0,
            worst_violation: f64::NEG_INFINITY,
            tolerance,
            pass: false,
            witnesses: Vec::new(),
        }
    }

    /// Record one probe's signed violation; `witness` is rendered only
    /// when the probe actually violates the tolerance.
    fn record(&mut self, violation: f64, witness: impl FnOnce() -> String) {
        self.samples += 1;
        if violation > self.worst_violation {
            self.worst_violation = violation;
        }
        if violation > self.tolerance && self.witnesses.len() < 5 {
            self.witnesses.push(witness());
        }
    }

    fn finish(mut self) -> Self {
        if self.samples == 0 {
            self.worst_violation = 0.0;
        }
        self.pass = self.worst_violation <= self.tolerance;
        self
    }

    /// One-line structured text record (plus indented witness lines),
    /// suitable for log output.
    pub fn render(&self) -> String {
        let mut out = format!(
            "check={} samples={} worst_violation={:.3e} tolerance={:.1e} pass={}",
            self.name, self.samples, self.worst_violation, self.tolerance, self.pass
        );
        for w in &self.witnesses {
            out.push_str("\n  witness: ");
            out.push_str(w);
        }
        out
    }
}

/// `S(w, Q, R₁) = ‖Qᴴw‖² / (wᴴ R₁ w)` — the SINR of beamformer `w`
/// against signal factor `Q` and interference-plus-noise covariance `R₁`.
pub fn sinr_value(w: &[Complex64], q: &ComplexMatrix, r1: &HermitianMatrix) -> f64 {
    let num = vnorm(&q.adjoint().matvec(w)).powi(2);
    num / r1.quadratic_form(w)
}

/// `f(Q, R₁) = λ₁(R₁^{-1/2} Q Qᴴ R₁^{-1/2})` — the worst-case-SINR
/// objective minimized over the uncertainty sets.
pub fn f_value(q: &ComplexMatrix, r1: &HermitianMatrix) -> Result<f64> {
    Ok(lambda_w_gap(q, r1)?.0)
}

/// Top eigenvalue, the beamformer `R₁^{-1/2} u₁`, and the spectral gap
/// `λ₁ − λ₂` (infinite for a 1×1 problem).
fn lambda_w_gap(q: &ComplexMatrix, r1: &HermitianMatrix) -> Result<(f64, Vec<Complex64>, f64)> {
    let rinv = inv_sqrt_psd(r1, None)?;
    let b = rinv.as_matrix() * q;
    let gram = HermitianMatrix::symmetrize(&b * &b.adjoint());
    let dec = eig_hermitian(&gram);
    let lambda = dec.eigenvalues[0];
    let gap = if dec.eigenvalues.len() > 1 {
        lambda - dec.eigenvalues[1]
    } else {
        f64::INFINITY
    };
    let u1: Vec<Complex64> = (0..gram.dim()).map(|i| dec.eigenvectors[(i, 0)]).collect();
    Ok((lambda, rinv.as_matrix().matvec(&u1), gap))
}

fn gaussian_c64(rng: &mut ChaCha12Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn gaussian_vec(rng: &mut ChaCha12Rng, n: usize) -> Vec<Complex64> {
    loop {
        let w: Vec<Complex64> = (0..n).map(|_| gaussian_c64(rng)).collect();
        if vnorm(&w) > 1e-6 {
            return w;
        }
    }
}

fn gaussian_matrix(rng: &mut ChaCha12Rng, n: usize, m: usize) -> ComplexMatrix {
    let entries: Vec<Complex64> = (0..n * m).map(|_| gaussian_c64(rng)).collect();
    ComplexMatrix::from_fn(n, m, |i, j| entries[i * m + j])
}

fn gaussian_hermitian(rng: &mut ChaCha12Rng, n: usize) -> HermitianMatrix {
    HermitianMatrix::symmetrize(gaussian_matrix(rng, n, n))
}

/// Clip eigenvalues below `floor` and rebuild the matrix.
fn clip_psd(h: &HermitianMatrix, floor: f64) -> HermitianMatrix {
    let dec = eig_hermitian(h);
    if dec.eigenvalues.iter().all(|&e| e >= floor) {
        return h.clone();
    }
    let n = h.dim();
    let v = &dec.eigenvectors;
    let m = ComplexMatrix::from_fn(n, n, |r, c| {
        (0..n)
            .map(|k| v[(r, k)] * dec.eigenvalues[k].max(floor) * v[(c, k)].conj())
            .sum()
    });
    HermitianMatrix::symmetrize(m)
}

/// Draw a member of the signal-factor set: random direction, radius
/// fraction in `[0, 1]` (exactly 1 when `boundary`).
fn sample_signal_member(
    rng: &mut ChaCha12Rng,
    spec: &SignalSetSpec,
    boundary: bool,
) -> ComplexMatrix {
    let center = spec.center();
    let (n, m) = (center.nrows(), center.ncols());
    let dir = gaussian_matrix(rng, n, m);
    let norm = match spec.norm() {
        crate::uncertainty::MatrixNorm::Frobenius => dir.frobenius_norm(),
        crate::uncertainty::MatrixNorm::Spectral => dir.spectral_norm(),
    };
    let frac = if boundary { 1.0 } else { rng.random::<f64>() };
    let scale = frac * spec.radius() / norm;
    center + &dir.scaled(Complex64::new(scale, 0.0))
}

/// Draw a member of the covariance set: random Hermitian direction,
/// radius fraction, eigenvalue clipping to the definiteness floor, trace
/// shifted into the interval, then a membership re-check. Falls back to
/// the center (always a member) if rejection sampling fails.
fn sample_inc_member(rng: &mut ChaCha12Rng, spec: &IncSetSpec, boundary: bool) -> HermitianMatrix {
    let center = spec.center();
    let n = center.dim();
    for _ in 0..64 {
        let dir = gaussian_hermitian(rng, n);
        let norm = match spec.norm() {
            crate::uncertainty::MatrixNorm::Frobenius => dir.frobenius_norm(),
            crate::uncertainty::MatrixNorm::Spectral => dir.spectral_norm(),
        };
        let frac = if boundary { 1.0 } else { rng.random::<f64>() };
        let scale = frac * spec.radius() / norm;
        let mut r = center.add_scaled(&dir, scale);
        r = clip_psd(&r, spec.pd_floor());
        if let Some((lo, hi)) = spec.trace_interval() {
            let t = r.trace();
            let target = t.clamp(lo, hi);
            if target != t {
                r = r.add_scaled_identity((target - t) / n as f64);
            }
        }
        if contains_inc(spec, &r).unwrap_or(false) {
            return r;
        }
    }
    center.clone()
}

/// Certify the saddle-point property of the SINR function at a solved
/// instance: `S(w, Q*, R₁*) ≤ S(w*, Q*, R₁*) ≤ S(w*, Q, R₁)` for every
/// `w ≠ 0` and every member `(Q, R₁)` of the uncertainty sets.
///
/// Probes `n_samples` random beamformers for the left inequality (plus
/// the analytic maximizer recomputed from `(Q*, R₁*)`, which makes a
/// corrupted `w*` detectable deterministically) and `n_samples` random
/// set members for the right inequality.
pub fn check_saddle_point(
    sol: &MinimaxSolution,
    signal: &SignalSetSpec,
    inc: &IncSetSpec,
    n_samples: usize,
    seed: u64,
    tol: f64,
) -> CheckReport {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut report = CheckReport::new("saddle-point", tol);
    let n = sol.r1_star.dim();
    let center = sinr_value(&sol.w_star, &sol.q_star, &sol.r1_star);
    let scale = 1.0 + center.abs();

    // Left inequality: no beamformer beats w* against (Q*, R₁*). The
    // analytic maximizer of the Rayleigh quotient is probed first.
    if let Ok((_, w_best, _)) = lambda_w_gap(&sol.q_star, &sol.r1_star) {
        let s = sinr_value(&w_best, &sol.q_star, &sol.r1_star);
        report.record((s - center) / scale, || {
            format!("left, analytic maximizer: S={s:.9e} exceeds center {center:.9e}")
        });
    }
    for k in 0..n_samples {
        let w = gaussian_vec(&mut rng, n);
        let s = sinr_value(&w, &sol.q_star, &sol.r1_star);
        report.record((s - center) / scale, || {
            format!("left, sample {k}: S={s:.9e} exceeds center {center:.9e}")
        });
    }

    // Right inequality: no member of the sets drives w* below the center
    // value.
    for k in 0..n_samples {
        let q = sample_signal_member(&mut rng, signal, k % 2 == 0);
        let r1 = sample_inc_member(&mut rng, inc, k % 2 == 1);
        let s = sinr_value(&sol.w_star, &q, &r1);
        report.record((center - s) / scale, || {
            format!("right, sample {k}: S={s:.9e} below center {center:.9e}")
        });
    }
    report.finish()
}

/// The first-order optimality expression of the eigenvalue objective at
/// `(Q*, R₁*)` paired with the member `(Q, R₁)`:
/// `2 Re(w*ᴴ Q Q*ᴴ w*) − w*ᴴ(λ*(R₁ − R₁*) + 2 Q* Q*ᴴ)w*`.
/// Optimality of `(Q*, R₁*)` is equivalent to this being nonnegative for
/// every member pair.
pub fn optimality_expression(
    q_star: &ComplexMatrix,
    r1_star: &HermitianMatrix,
    w_star: &[Complex64],
    lambda_star: f64,
    q: &ComplexMatrix,
    r1: &HermitianMatrix,
) -> f64 {
    let y_star = q_star.adjoint().matvec(w_star);
    let y = q.adjoint().matvec(w_star);
    let first = 2.0 * cdot(&y, &y_star).re;
    let second = lambda_star * (r1.quadratic_form(w_star) - r1_star.quadratic_form(w_star))
        + 2.0 * vnorm(&y_star).powi(2);
    first - second
}

/// Certify the first-order optimality condition at a solved instance by
/// sampling boundary and interior members of both sets and recording the
/// most negative value of [`optimality_expression`].
#[allow(clippy::too_many_arguments)]
pub fn check_optimality_condition(
    q_star: &ComplexMatrix,
    r1_star: &HermitianMatrix,
    w_star: &[Complex64],
    lambda_star: f64,
    signal: &SignalSetSpec,
    inc: &IncSetSpec,
    n_samples: usize,
    seed: u64,
    tol: f64,
) -> CheckReport {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut report = CheckReport::new("optimality-condition", tol);
    let scale = 1.0 + lambda_star.abs();
    for k in 0..n_samples {
        let q = sample_signal_member(&mut rng, signal, k % 2 == 0);
        let r1 = sample_inc_member(&mut rng, inc, k % 2 == 1);
        let value = optimality_expression(q_star, r1_star, w_star, lambda_star, &q, &r1);
        report.record(-value / scale, || {
            format!("sample {k}: optimality expression is {value:.9e}")
        });
    }
    report.finish()
}

/// Check that the spectral gap permits the closed-form derivatives.
fn require_simple_top(lambda: f64, gap: f64) -> Result<()> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidInput(
            "derivative check skipped: the top eigenvalue is not positive".into(),
        ));
    }
    if gap < 1e-6 * lambda {
        return Err(Error::InvalidInput(format!(
            "derivative check skipped: eigenvalue gap {gap:.3e} is below 1e-6·λ₁ — the \
             closed-form derivative assumes a simple top eigenvalue"
        )));
    }
    Ok(())
}

/// Certify `∂f/∂Q = 2 w wᴴ Q` by comparing the analytic directional
/// derivative `2 Re(wᴴ D Qᴴ w)` against central finite differences of
/// `f(Q + tD, R₁)` over 20 random directions (fixed internal stream).
///
/// Errors when the top eigenvalue is not simple enough for the formula
/// to apply.
pub fn check_grad_q(q: &ComplexMatrix, r1: &HermitianMatrix, h_step: f64) -> Result<CheckReport> {
    let (lambda, w, gap) = lambda_w_gap(q, r1)?;
    require_simple_top(lambda, gap)?;
    let mut rng = ChaCha12Rng::seed_from_u64(0x5eed_0001);
    let mut report = CheckReport::new("grad-q", 1e-4);
    let y = q.adjoint().matvec(&w);
    for k in 0..20 {
        let dir = gaussian_matrix(&mut rng, q.nrows(), q.ncols());
        let dir = dir.scaled(Complex64::new(dir.frobenius_norm().recip(), 0.0));
        let analytic = 2.0 * cdot(&w, &dir.matvec(&y)).re;
        let plus = f_value(&(q + &dir.scaled(Complex64::new(h_step, 0.0))), r1)?;
        let minus = f_value(&(q + &dir.scaled(Complex64::new(-h_step, 0.0))), r1)?;
        let fd = (plus - minus) / (2.0 * h_step);
        let err = (analytic - fd).abs() / (1.0 + analytic.abs().max(fd.abs()));
        report.record(err, || {
            format!("direction {k}: analytic {analytic:.9e} vs finite difference {fd:.9e}")
        });
    }
    Ok(report.finish())
}

/// Certify `∂f/∂R₁ = −λ w wᴴ` by comparing the analytic directional
/// derivative `−λ·wᴴ D w` against central finite differences of
/// `f(Q, R₁ + tD)` over 20 random Hermitian directions.
pub fn check_grad_r1(q: &ComplexMatrix, r1: &HermitianMatrix, h_step: f64) -> Result<CheckReport> {
    let (lambda, w, gap) = lambda_w_gap(q, r1)?;
    require_simple_top(lambda, gap)?;
    if r1.min_eigenvalue() <= 2.0 * h_step {
        return Err(Error::InvalidInput(
            "derivative check skipped: the finite-difference step would leave the \
             positive-definite domain"
                .into(),
        ));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(0x5eed_0002);
    let mut report = CheckReport::new("grad-r1", 1e-4);
    for k in 0..20 {
        let dir = gaussian_hermitian(&mut rng, r1.dim());
        let dir = dir.scaled(dir.frobenius_norm().recip());
        let analytic = -lambda * dir.quadratic_form(&w);
        let plus = f_value(q, &r1.add_scaled(&dir, h_step))?;
        let minus = f_value(q, &r1.add_scaled(&dir, -h_step))?;
        let fd = (plus - minus) / (2.0 * h_step);
        let err = (analytic - fd).abs() / (1.0 + analytic.abs().max(fd.abs()));
        report.record(err, || {
            format!("direction {k}: analytic {analytic:.9e} vs finite difference {fd:.9e}")
        });
    }
    Ok(report.finish())
}

/// Which function a convexity check probes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvexityTarget {
    /// `f(Q, R₁) = λ₁(R₁^{-1/2} Q Qᴴ R₁^{-1/2})` over matrices paired
    /// with positive-definite covariances.
    ObjectiveF,
    /// `h(Q, R₁) = ‖Qᴴw‖² / (wᴴR₁w)` for a fixed beamformer, over
    /// matrices paired with positive-semidefinite covariances.
    RatioH,
}

/// Certify convexity by sampling point pairs `P₁, P₂` of dimension
/// `n × m` and mixing weights `α ∈ (0, 1)`, recording violations of the
/// Jensen inequality `α g(P₁) + (1−α) g(P₂) ≥ g(αP₁ + (1−α)P₂)`.
///
/// `fixed_w` must be a nonzero length-`n` beamformer for [`ConvexityTarget::RatioH`].
pub fn check_convexity(
    target: ConvexityTarget,
    n: usize,
    m: usize,
    fixed_w: Option<&[Complex64]>,
    n_pairs: usize,
    seed: u64,
) -> Result<CheckReport> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput("convexity check needs n, m >= 1".into()));
    }
    let w = match target {
        ConvexityTarget::ObjectiveF => None,
        ConvexityTarget::RatioH => {
            let Some(w) = fixed_w else {
                return Err(Error::InvalidInput(
                    "the ratio function is convex for a fixed beamformer: supply fixed_w".into(),
                ));
            };
            if w.len() != n || vnorm(w) <= 1e-12 {
                return Err(Error::InvalidInput(
                    "fixed_w must be nonzero with length n".into(),
                ));
            }
            Some(w.to_vec())
        }
    };

    let eval = |q: &ComplexMatrix, r: &HermitianMatrix| -> Result<f64> {
        match &w {
            None => f_value(q, r),
            Some(w) => {
                let denom = r.quadratic_form(w);
                if denom <= 1e-14 {
                    return Err(Error::InvalidInput("degenerate denominator".into()));
                }
                Ok(vnorm(&q.adjoint().matvec(w)).powi(2) / denom)
            }
        }
    };

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let name = match target {
        ConvexityTarget::ObjectiveF => "convexity-f",
        ConvexityTarget::RatioH => "convexity-h",
    };
    let mut report = CheckReport::new(name, 1e-9);
    let sample_point = |rng: &mut ChaCha12Rng| -> (ComplexMatrix, HermitianMatrix) {
        let q = gaussian_matrix(rng, n, m);
        let g = gaussian_matrix(rng, n, n);
        let mut r = HermitianMatrix::symmetrize(&g * &g.adjoint());
        if target == ConvexityTarget::ObjectiveF {
            // f needs a strictly positive-definite covariance.
            r = r.add_scaled_identity(0.1 + rng.random::<f64>());
        }
        (q, r)
    };
    for k in 0..n_pairs {
        let (q1, r1) = sample_point(&mut rng);
        let (q2, r2) = sample_point(&mut rng);
        let mut alpha = rng.random::<f64>();
        if alpha == 0.0 {
            alpha = 0.5;
        }
        let qm = &q1.scaled(Complex64::new(alpha, 0.0))
            + &q2.scaled(Complex64::new(1.0 - alpha, 0.0));
        let rm = r1.scaled(alpha).add_scaled(&r2, 1.0 - alpha);
        let (g1, g2, gm) = (eval(&q1, &r1)?, eval(&q2, &r2)?, eval(&qm, &rm)?);
        let combo = alpha * g1 + (1.0 - alpha) * g2;
        let violation = (gm - combo) / (1.0 + combo.abs());
        report.record(violation, || {
            format!("pair {k}, alpha={alpha:.4}: midpoint {gm:.9e} exceeds chord {combo:.9e}")
        });
    }
    Ok(report.finish())
}

/// Certify the value relation between the two problem forms: the squared
/// clipped objective of the iterative (locally optimal) maximin solver
/// never exceeds the single-shot minimax optimum.
pub fn check_value_equivalence(minimax_lambda: f64, dc_objective: f64) -> CheckReport {
    let mut report = CheckReport::new("value-equivalence", 1e-6);
    let squared = dc_objective * dc_objective;
    let violation = (squared - minimax_lambda) / (1.0 + minimax_lambda.abs());
    report.record(violation, || {
        format!("squared maximin objective {squared:.9e} exceeds minimax value {minimax_lambda:.9e}")
    });
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic::SolverSettings;
    use crate::dc::{solve_maximin_ball_dc, DcSettings};
    use crate::linalg::principal_pair;
    use crate::minimax::solve_minimax;
    use crate::uncertainty::MatrixNorm;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rand_matrix(rng: &mut ChaCha12Rng, n: usize, m: usize) -> ComplexMatrix {
        gaussian_matrix(rng, n, m)
    }

    fn rand_pd(rng: &mut ChaCha12Rng, n: usize, shift: f64) -> HermitianMatrix {
        let g = rand_matrix(rng, n, n);
        HermitianMatrix::symmetrize(&g * &g.adjoint()).add_scaled_identity(shift)
    }

    /// A solved, well-conditioned instance shared by several tests.
    fn solved_instance() -> (MinimaxSolution, SignalSetSpec, IncSetSpec) {
        let mut rng = ChaCha12Rng::seed_from_u64(101);
        let q = rand_matrix(&mut rng, 3, 2);
        let r = rand_pd(&mut rng, 3, 0.8);
        let eta = 0.08 * q.frobenius_norm();
        let gamma = (0.08 * r.frobenius_norm()).min(0.5 * r.min_eigenvalue());
        let signal = SignalSetSpec::new(q, MatrixNorm::Frobenius, eta).unwrap();
        let inc = IncSetSpec::ball(r, MatrixNorm::Frobenius, gamma).unwrap();
        let sol = solve_minimax(&signal, &inc, &SolverSettings::default()).unwrap();
        (sol, signal, inc)
    }

    #[test]
    fn saddle_point_passes_on_solved_instance() {
        let (sol, signal, inc) = solved_instance();
        let report = check_saddle_point(&sol, &signal, &inc, 1000, 7, 1e-6);
        assert!(report.pass, "{}", report.render());
        assert_eq!(report.samples, 2001);
        assert_eq!(report.pass, report.worst_violation <= report.tolerance);

        // Reproducible from (inputs, seed).
        let again = check_saddle_point(&sol, &signal, &inc, 1000, 7, 1e-6);
        assert_eq!(report.worst_violation, again.worst_violation);
    }

    #[test]
    fn saddle_point_right_side_is_tight_for_singletons() {
        let mut rng = ChaCha12Rng::seed_from_u64(103);
        let q = rand_matrix(&mut rng, 3, 2);
        let r = rand_pd(&mut rng, 3, 0.8);
        let signal = SignalSetSpec::new(q, MatrixNorm::Frobenius, 0.0).unwrap();
        let inc = IncSetSpec::ball(r, MatrixNorm::Frobenius, 0.0).unwrap();
        let sol = solve_minimax(&signal, &inc, &SolverSettings::default()).unwrap();
        let report = check_saddle_point(&sol, &signal, &inc, 200, 11, 1e-6);
        assert!(report.pass, "{}", report.render());
        // Singleton sets leave the right inequality an equality; the left
        // stays below by optimality of w*, so the worst violation is tiny.
        assert!(report.worst_violation <= 1e-9, "{}", report.render());
    }

    #[test]
    fn corrupted_beamformer_fails_left_inequality() {
        let (mut sol, signal, inc) = solved_instance();
        sol.w_star[0] += c64(0.5, 0.0);
        let report = check_saddle_point(&sol, &signal, &inc, 1000, 13, 1e-6);
        assert!(!report.pass, "corruption went undetected: {}", report.render());
        assert!(!report.witnesses.is_empty());
        assert!(report.witnesses.len() <= 5);
        assert_eq!(report.pass, report.worst_violation <= report.tolerance);
    }

    #[test]
    fn optimality_condition_holds_at_optimum_and_detects_suboptimality() {
        let (sol, signal, inc) = solved_instance();
        let report = check_optimality_condition(
            &sol.q_star,
            &sol.r1_star,
            &sol.w_star,
            sol.lambda_star,
            &signal,
            &inc,
            1000,
            17,
            1e-6,
        );
        assert!(report.pass, "{}", report.render());

        // At the optimizer itself the expression collapses to
        // 2λ* − (0 + 2λ*) = 0.
        let at_opt = optimality_expression(
            &sol.q_star,
            &sol.r1_star,
            &sol.w_star,
            sol.lambda_star,
            &sol.q_star,
            &sol.r1_star,
        );
        assert!(
            at_opt.abs() <= 1e-10 * (1.0 + sol.lambda_star),
            "expected exact zero, got {at_opt}"
        );

        // The set centers are interior and generically suboptimal; using
        // them as the candidate optimizer must produce negative values.
        let (lambda_c, w_c, _) = lambda_w_gap(signal.center(), inc.center()).unwrap();
        let report = check_optimality_condition(
            signal.center(),
            inc.center(),
            &w_c,
            lambda_c,
            &signal,
            &inc,
            1000,
            19,
            1e-6,
        );
        assert!(!report.pass, "{}", report.render());
    }

    #[test]
    fn gradient_in_q_matches_finite_differences() {
        let mut rng = ChaCha12Rng::seed_from_u64(107);
        let q = rand_matrix(&mut rng, 4, 2);
        let r = rand_pd(&mut rng, 4, 0.7);
        let report = check_grad_q(&q, &r, 1e-5).unwrap();
        assert!(report.pass, "{}", report.render());
        assert_eq!(report.samples, 20);

        // Direction aligned with w wᴴ Q: derivative is 2‖w‖²‖Qᴴw‖².
        let (_, w, _) = lambda_w_gap(&q, &r).unwrap();
        let y = q.adjoint().matvec(&w);
        let expected = 2.0 * vnorm(&w).powi(2) * vnorm(&y).powi(2);
        let dir = ComplexMatrix::from_fn(4, 2, |i, j| w[i] * y[j].conj());
        let h = 1e-5;
        let plus = f_value(&(&q + &dir.scaled(c64(h, 0.0))), &r).unwrap();
        let minus = f_value(&(&q + &dir.scaled(c64(-h, 0.0))), &r).unwrap();
        let fd = (plus - minus) / (2.0 * h);
        assert!(
            (fd - expected).abs() <= 1e-4 * (1.0 + expected),
            "aligned direction: fd {fd} vs {expected}"
        );
        assert!(expected > 0.0);

        // Zero direction: both the formula and the difference vanish.
        let zero = ComplexMatrix::zeros(4, 2);
        let same = f_value(&(&q + &zero), &r).unwrap();
        assert_eq!(same, f_value(&q, &r).unwrap());
    }

    #[test]
    fn gradient_in_r1_matches_finite_differences() {
        let mut rng = ChaCha12Rng::seed_from_u64(109);
        let q = rand_matrix(&mut rng, 4, 2);
        let r = rand_pd(&mut rng, 4, 0.7);
        let report = check_grad_r1(&q, &r, 1e-5).unwrap();
        assert!(report.pass, "{}", report.render());

        // Identity direction: the derivative is −λ‖w‖².
        let (lambda, w, _) = lambda_w_gap(&q, &r).unwrap();
        let expected = -lambda * vnorm(&w).powi(2);
        let h = 1e-5;
        let plus = f_value(&q, &r.add_scaled_identity(h)).unwrap();
        let minus = f_value(&q, &r.add_scaled_identity(-h)).unwrap();
        let fd = (plus - minus) / (2.0 * h);
        assert!(
            (fd - expected).abs() <= 1e-4 * (1.0 + expected.abs()),
            "identity direction: fd {fd} vs {expected}"
        );
    }

    #[test]
    fn degenerate_top_eigenvalue_skips_derivative_checks() {
        // Two orthonormal columns against the identity: λ₁ = λ₂ = 1.
        let q = ComplexMatrix::from_fn(3, 2, |i, j| {
            if i == j { c64(1.0, 0.0) } else { Complex64::ZERO }
        });
        let r = HermitianMatrix::identity(3);
        assert!(matches!(check_grad_q(&q, &r, 1e-5), Err(Error::InvalidInput(_))));
        assert!(matches!(check_grad_r1(&q, &r, 1e-5), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn convexity_of_objective_and_ratio() {
        let report =
            check_convexity(ConvexityTarget::ObjectiveF, 3, 2, None, 500, 23).unwrap();
        assert!(report.pass, "{}", report.render());
        assert_eq!(report.samples, 500);

        let w = vec![Complex64::ONE, Complex64::ZERO, Complex64::ZERO];
        let report =
            check_convexity(ConvexityTarget::RatioH, 3, 2, Some(&w), 500, 29).unwrap();
        assert!(report.pass, "{}", report.render());

        // The ratio target requires the fixed beamformer.
        assert!(matches!(
            check_convexity(ConvexityTarget::RatioH, 3, 2, None, 10, 1),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn value_equivalence_checks_the_one_sided_bound() {
        // Singleton sets: both forms reduce to the same eigenproblem, so
        // the squared iterative objective matches the minimax value.
        let mut rng = ChaCha12Rng::seed_from_u64(113);
        let q = rand_matrix(&mut rng, 3, 2);
        let r = rand_pd(&mut rng, 3, 0.8);
        let signal = SignalSetSpec::new(q, MatrixNorm::Frobenius, 0.0).unwrap();
        let inc = IncSetSpec::ball(r, MatrixNorm::Frobenius, 0.0).unwrap();
        let sol = solve_minimax(&signal, &inc, &SolverSettings::default()).unwrap();
        let settings = DcSettings { tol: 1e-10, max_iter: 300, ..DcSettings::default() };
        let dc = solve_maximin_ball_dc(&signal, &inc, None, &settings).unwrap();
        let report = check_value_equivalence(sol.lambda_star, dc.objective);
        assert!(report.pass, "{}", report.render());
        assert!(
            (dc.objective * dc.objective - sol.lambda_star).abs()
                <= 1e-5 * (1.0 + sol.lambda_star),
            "singleton specs should make both values equal"
        );

        // A fabricated objective above the bound must fail.
        let report = check_value_equivalence(sol.lambda_star, dc.objective + 1.0);
        assert!(!report.pass);
        assert_eq!(report.pass, report.worst_violation <= report.tolerance);
    }

    #[test]
    fn objective_value_agrees_with_gram_form() {
        // f can be evaluated as λ₁ of either the N×N or the M×M Gram
        // composition; the two routes agree to near machine precision.
        let mut rng = ChaCha12Rng::seed_from_u64(127);
        for _ in 0..5 {
            let q = rand_matrix(&mut rng, 4, 2);
            let r = rand_pd(&mut rng, 4, 0.5);
            let direct = f_value(&q, &r).unwrap();
            let rinv = inv_sqrt_psd(&r, None).unwrap();
            let b = rinv.as_matrix() * &q;
            let small = HermitianMatrix::symmetrize(&b.adjoint() * &b);
            let (alt, _) = principal_pair(&small);
            assert!(
                (direct - alt).abs() <= 1e-10 * (1.0 + direct),
                "{direct} vs {alt}"
            );
        }
    }
}
