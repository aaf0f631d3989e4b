//! Iterative difference-of-convex (DC) baselines for the maximin SINR
//! problem.
//!
//! The maximin problem is equivalent to maximizing the concave-minus-convex
//! objective `‖Q̂ᴴw‖ − √η‖w‖` subject to the worst-case
//! interference-plus-noise power not exceeding one. Each iteration
//! linearizes the first term around the previous iterate `w_k`, replacing
//! it with `Re(w_kᴴ Q̂ Q̂ᴴ w) / ‖Q̂ᴴ w_k‖`, and solves the resulting convex
//! subproblem:
//!
//! - with a plain covariance ball, the worst-case power has the closed form
//!   `wᴴ(R̂ + √γ I)w`, so the subproblem is a small second-order cone
//!   program;
//! - with an additional trace interval `ρ₁ ≤ tr R₁ ≤ ρ₂`, the worst-case
//!   power constraint is imposed through a dual certificate `(X, x, y)`
//!   (plus a second certificate matrix `Y` for the spectral ball), making
//!   the subproblem a small semidefinite program.
//!
//! The iteration ascends: the linearization minorizes the true objective
//! and touches it at `w_k`, so each subproblem solution can only improve
//! the objective. These baselines are deliberately local — they are what
//! the single-shot minimax solver in [`crate::minimax`] is measured
//! against, and their squared objective never exceeds the minimax optimum.

use num_complex::Complex64;

use crate::conic::{solve, Cone, ConicProblem, SolveStatus, SolverSettings};
use crate::linalg::{
    embed_hermitian, hvec_hermitian, inv_sqrt_psd, principal_pair, sqrt_psd, svec_len, vnorm,
    ComplexMatrix, HermitianMatrix, RealMatrix,
};
use crate::uncertainty::{
    assemble, bordered, hermitian_basis, solver_error, svec_embed, IncSetSpec, SignalSetSpec,
};
use crate::{Error, Result};

/// Stopping controls for the DC iteration.
#[derive(Clone, Debug)]
pub struct DcSettings {
    /// Relative objective-change threshold that declares convergence.
    pub tol: f64,
    /// Hard cap on the number of subproblem solves.
    pub max_iter: usize,
    /// Settings forwarded to the conic solver for each subproblem.
    pub solver: SolverSettings,
}

impl Default for DcSettings {
    fn default() -> Self {
        Self { tol: 1e-6, max_iter: 50, solver: SolverSettings::default() }
    }
}

/// Outcome of a DC run.
#[derive(Clone, Debug)]
pub struct DcResult {
    /// Final beamformer iterate.
    pub w: Vec<Complex64>,
    /// `max{‖Q̂ᴴw‖ − √η‖w‖, 0}` at the final iterate (clipped at zero,
    /// consistent with the worst-case signal power being a clipped square).
    pub objective: f64,
    /// Unclipped objective value after every accepted iterate, starting
    /// with the initial point. Non-decreasing by construction.
    pub objective_trace: Vec<f64>,
    /// Number of subproblem solves performed.
    pub iterations: usize,
    /// Whether the relative-change test (or a detected stall at subproblem
    /// accuracy) stopped the run before `max_iter`.
    pub converged: bool,
}

/// Deterministic starting beamformer: `w0 ∝ (R̂ + √γ I)⁻¹ q̂₁`, where `q̂₁`
/// is the principal left singular vector of `Q̂`, scaled so that
/// `w0ᴴ(R̂ + √γ I)w0 = 1`.
///
/// This is the one-step solution of the linearized subproblem started from
/// the dominant signal direction, and it is feasible for both the ball and
/// the trace-interval constraint (the trace-constrained set is contained
/// in the ball, so its worst-case power at `w0` is at most one).
pub fn default_start(signal: &SignalSetSpec, inc: &IncSetSpec) -> Result<Vec<Complex64>> {
    let n = inc.center().dim();
    if signal.center().nrows() != n {
        return Err(Error::InvalidInput(format!(
            "signal factor has {} rows but the covariance has side {n}",
            signal.center().nrows()
        )));
    }
    let shifted = inc.center().add_scaled_identity(inc.radius());
    let inv_sqrt = inv_sqrt_psd(&shifted, None)?;
    let gram =
        HermitianMatrix::symmetrize(signal.center() * &signal.center().adjoint());
    let (_, u1) = principal_pair(&gram);
    let half = inv_sqrt.as_matrix().matvec(&u1);
    let w = inv_sqrt.as_matrix().matvec(&half);
    let power = shifted.quadratic_form(&w);
    if !(power > 0.0) || !power.is_finite() {
        return Err(Error::InvalidInput(
            "starting point has non-positive constraint power".into(),
        ));
    }
    let alpha = power.sqrt().recip();
    Ok(w.into_iter().map(|z| z * alpha).collect())
}

/// DC iteration for the ball-only uncertainty model.
///
/// Requires `inc` to carry no trace interval and no positive-definiteness
/// floor; the worst-case power then has the closed form
/// `wᴴ(R̂ + √γ I)w`, identical for the Frobenius and spectral balls, and
/// each subproblem is a second-order cone program.
pub fn solve_maximin_ball_dc(
    signal: &SignalSetSpec,
    inc: &IncSetSpec,
    w0: Option<&[Complex64]>,
    settings: &DcSettings,
) -> Result<DcResult> {
    if inc.trace_interval().is_some() {
        return Err(Error::InvalidInput(
            "ball DC iteration requires a covariance set without a trace interval".into(),
        ));
    }
    if inc.pd_floor() > 0.0 {
        return Err(Error::InvalidInput(
            "ball DC iteration requires a covariance set without a definiteness floor".into(),
        ));
    }
    let scaled = Scaled::new(signal, inc)?;
    let n = scaled.n;

    let shifted = scaled.r_center.add_scaled_identity(scaled.inc_radius);
    let embed_l = embed_hermitian(&sqrt_psd(&shifted));
    let base = build_ball_subproblem(n, scaled.sig_radius, &embed_l);

    let w_start = scaled.start(signal, inc, w0, &shifted)?;
    let mut solve_sub = |c: &[Complex64], iter: usize| -> Result<Vec<Complex64>> {
        let mut prob = base.clone();
        patch_objective(&mut prob, c, n);
        run_subproblem(&prob, &settings.solver, iter, n)
    };
    scaled.iterate(w_start, settings, &mut solve_sub)
}

/// DC iteration for the ball-plus-trace-interval uncertainty model.
///
/// The worst-case power constraint is imposed through its dual
/// certificate, so each subproblem is a semidefinite program: with the
/// Frobenius ball the certificate is one free Hermitian matrix `X` and a
/// Frobenius-norm epigraph, with the spectral ball it is a pair of
/// positive-semidefinite matrices `X, Y`. The ball norm is taken from
/// `inc`.
pub fn solve_maximin_trace_dc(
    signal: &SignalSetSpec,
    inc: &IncSetSpec,
    w0: Option<&[Complex64]>,
    settings: &DcSettings,
) -> Result<DcResult> {
    let Some((rho1, rho2)) = inc.trace_interval() else {
        return Err(Error::InvalidInput(
            "trace DC iteration requires a covariance set with a trace interval".into(),
        ));
    };
    if inc.pd_floor() > 0.0 {
        return Err(Error::InvalidInput(
            "the dual certificate does not model a definiteness floor".into(),
        ));
    }
    let scaled = Scaled::new(signal, inc)?;
    let n = scaled.n;
    let rho1_s = rho1 / scaled.nu;
    let rho2_s = rho2 / scaled.nu;

    let base = match inc.norm() {
        crate::uncertainty::MatrixNorm::Frobenius => build_trace_fro_subproblem(
            n,
            scaled.sig_radius,
            &scaled.r_center,
            scaled.inc_radius,
            rho1_s,
            rho2_s,
        ),
        crate::uncertainty::MatrixNorm::Spectral => build_trace_spec_subproblem(
            n,
            scaled.sig_radius,
            &scaled.r_center,
            scaled.inc_radius,
            rho1_s,
            rho2_s,
        ),
    };

    let shifted = scaled.r_center.add_scaled_identity(scaled.inc_radius);
    let w_start = scaled.start(signal, inc, w0, &shifted)?;
    let mut solve_sub = |c: &[Complex64], iter: usize| -> Result<Vec<Complex64>> {
        let mut prob = base.clone();
        patch_objective(&mut prob, c, n);
        run_subproblem(&prob, &settings.solver, iter, n)
    };
    scaled.iterate(w_start, settings, &mut solve_sub)
}

/// Problem data rescaled so the covariance has unit average eigenvalue and
/// the signal factor unit Frobenius norm; keeps the interior-point
/// subproblems well conditioned independently of SNR/INR levels.
struct Scaled {
    n: usize,
    /// `Q̂ / ‖Q̂‖_F`.
    q_center: ComplexMatrix,
    /// `√η / ‖Q̂‖_F`.
    sig_radius: f64,
    /// `R̂ / ν` with `ν = tr R̂ / N`.
    r_center: HermitianMatrix,
    /// `√γ / ν`.
    inc_radius: f64,
    nu: f64,
    /// Multiplies a scaled objective value back to the original scale.
    back: f64,
    /// Multiplies a scaled iterate back to the original scale.
    w_back: f64,
}

impl Scaled {
    fn new(signal: &SignalSetSpec, inc: &IncSetSpec) -> Result<Self> {
        let n = inc.center().dim();
        if signal.center().nrows() != n {
            return Err(Error::InvalidInput(format!(
                "signal factor has {} rows but the covariance has side {n}",
                signal.center().nrows()
            )));
        }
        let q_norm = signal.center().frobenius_norm();
        let trace = inc.center().trace();
        let nu = if trace > 0.0 { trace / n as f64 } else { 1.0 };
        let root = nu.sqrt();
        Ok(Self {
            n,
            q_center: signal.center().scaled(Complex64::new(q_norm.recip(), 0.0)),
            sig_radius: signal.radius() / q_norm,
            r_center: inc.center().scaled(nu.recip()),
            inc_radius: inc.radius() / nu,
            nu,
            back: q_norm / root,
            w_back: root.recip(),
        })
    }

    /// Resolve and validate the starting point, mapped into scaled
    /// coordinates and normalized onto the ball-constraint boundary
    /// `wᴴ(R̂ + √γ I)w = 1` (in scaled terms), which guarantees feasibility
    /// for both constraint models and hence monotone ascent.
    fn start(
        &self,
        signal: &SignalSetSpec,
        inc: &IncSetSpec,
        w0: Option<&[Complex64]>,
        shifted_scaled: &HermitianMatrix,
    ) -> Result<Vec<Complex64>> {
        let root = self.nu.sqrt();
        let mut w: Vec<Complex64> = match w0 {
            Some(user) => {
                if user.len() != self.n {
                    return Err(Error::InvalidInput(format!(
                        "starting point has length {} but the array has {} sensors",
                        user.len(),
                        self.n
                    )));
                }
                user.iter().map(|z| z * root).collect()
            }
            None => default_start(signal, inc)?.into_iter().map(|z| z * root).collect(),
        };
        let power = shifted_scaled.quadratic_form(&w);
        if !(power > 0.0) || !power.is_finite() {
            return Err(Error::InvalidInput(
                "starting point has non-positive constraint power".into(),
            ));
        }
        let alpha = power.sqrt().recip();
        for z in &mut w {
            *z *= alpha;
        }
        let along = vnorm(&self.q_center.adjoint().matvec(&w));
        if along <= 1e-12 {
            return Err(Error::InvalidInput(
                "degenerate starting point: Q̂ᴴw0 vanishes — re-initialize with a \
                 different w0"
                    .into(),
            ));
        }
        Ok(w)
    }

    /// Shared ascent loop over linearized subproblems.
    fn iterate(
        &self,
        w_start: Vec<Complex64>,
        settings: &DcSettings,
        solve_sub: &mut dyn FnMut(&[Complex64], usize) -> Result<Vec<Complex64>>,
    ) -> Result<DcResult> {
        let qh = self.q_center.adjoint();
        let g_of = |w: &[Complex64]| vnorm(&qh.matvec(w)) - self.sig_radius * vnorm(w);

        let mut w = w_start;
        let mut g = g_of(&w);
        let mut trace = vec![g * self.back];
        let mut iterations = 0usize;
        let mut converged = false;

        for k in 1..=settings.max_iter {
            let dir = qh.matvec(&w);
            let nd = vnorm(&dir);
            if nd <= 1e-13 * (1.0 + vnorm(&w)) {
                // The iterate collapsed onto the null space of Q̂ᴴ; the
                // clipped objective is zero and nothing can ascend further.
                converged = true;
                break;
            }
            let unit: Vec<Complex64> = dir.iter().map(|z| z / nd).collect();
            let c = self.q_center.matvec(&unit);
            let w_new = solve_sub(&c, k)?;
            iterations = k;
            let g_new = g_of(&w_new);
            if g_new < g - 1e-6 * (1.0 + g.abs()) {
                // The linearization minorizes the objective and touches it
                // at the incumbent, so a real regression means the
                // subproblem was not solved.
                return Err(Error::Solver {
                    status: "regression".into(),
                    detail: format!(
                        "DC subproblem at iteration {k} returned objective {g_new:.6e} \
                         below incumbent {g:.6e}"
                    ),
                });
            }
            if g_new < g {
                // Ascent has shrunk below subproblem accuracy: stationary.
                converged = true;
                break;
            }
            let rel = (g_new - g) / (1.0 + g.abs());
            w = w_new;
            g = g_new;
            trace.push(g * self.back);
            if rel <= settings.tol {
                converged = true;
                break;
            }
        }

        Ok(DcResult {
            w: w.into_iter().map(|z| z * self.w_back).collect(),
            objective: (g * self.back).max(0.0),
            objective_trace: trace,
            iterations,
            converged,
        })
    }
}

/// Overwrite the `w`-part of the minimized objective with `−Re(cᴴw)`.
fn patch_objective(prob: &mut ConicProblem, c: &[Complex64], n: usize) {
    for i in 0..n {
        prob.c[i] = -c[i].re;
        prob.c[n + i] = -c[i].im;
    }
}

/// Solve one subproblem and pull the beamformer out of the variable block.
fn run_subproblem(
    prob: &ConicProblem,
    settings: &SolverSettings,
    iteration: usize,
    n: usize,
) -> Result<Vec<Complex64>> {
    let sol = solve(prob, settings)?;
    match sol.status {
        SolveStatus::Optimal => Ok((0..n)
            .map(|i| Complex64::new(sol.x[i], sol.x[n + i]))
            .collect()),
        status => {
            let base = solver_error(status, &sol);
            Err(match base {
                Error::Solver { status, detail } => Error::Solver {
                    status,
                    detail: format!("DC subproblem at iteration {iteration}: {detail}"),
                },
                other => other,
            })
        }
    }
}

/// Variable block shared by every subproblem: `x = [Re w, Im w, t]` plus
/// variant-specific certificate variables after it. The objective is
/// `minimize −Re(cᴴw) + √η·t` with `t ≥ ‖w‖` enforced by a second-order
/// cone.
fn norm_epigraph_rows(
    rows: &mut Vec<(Vec<(usize, f64)>, f64)>,
    w_off: usize,
    t_col: usize,
    n2: usize,
) {
    rows.push((vec![(t_col, -1.0)], 0.0));
    for i in 0..n2 {
        rows.push((vec![(w_off + i, -1.0)], 0.0));
    }
}

/// Ball subproblem:
/// `max Re(cᴴw) − √η t  s.t.  t ≥ ‖w‖,  ‖L w‖ ≤ 1`, with `L` the Hermitian
/// square root of `R̂ + √γ I` (embedded over the reals).
fn build_ball_subproblem(n: usize, sig_radius: f64, embed_l: &RealMatrix) -> ConicProblem {
    let n2 = 2 * n;
    let t_col = n2;
    let nvars = n2 + 1;

    let mut c = vec![0.0; nvars];
    c[t_col] = sig_radius;

    let mut rows: Vec<(Vec<(usize, f64)>, f64)> = Vec::new();
    norm_epigraph_rows(&mut rows, 0, t_col, n2);
    rows.push((Vec::new(), 1.0));
    for i in 0..n2 {
        let coeffs: Vec<(usize, f64)> = (0..n2)
            .filter(|&j| embed_l[(i, j)] != 0.0)
            .map(|j| (j, -embed_l[(i, j)]))
            .collect();
        rows.push((coeffs, 0.0));
    }

    let cones = vec![Cone::Soc(1 + n2), Cone::Soc(1 + n2)];
    assemble(nvars, c, rows, cones)
}

/// Append the rows of the bordered certificate LMI
/// `[[(y−x)I ± (Y) − X, w], [wᴴ, 1]] ⪰ 0` shared by both trace
/// subproblems. `top_cols` lists `(column, embedded top-left basis, sign)`
/// contributions; the border columns for `w` are added internally.
fn bordered_lmi_rows(
    rows: &mut Vec<(Vec<(usize, f64)>, f64)>,
    n: usize,
    top_cols: &[(usize, Vec<f64>, f64)],
    w_off: usize,
) {
    let zero_top = HermitianMatrix::zeros(n);
    let b_const = svec_embed(&bordered(&zero_top, &vec![Complex64::ZERO; n], 1.0));
    let mut border_cols: Vec<(usize, Vec<f64>)> = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut e = vec![Complex64::ZERO; n];
        e[i] = Complex64::ONE;
        border_cols.push((w_off + i, svec_embed(&bordered(&zero_top, &e, 0.0))));
        e[i] = Complex64::I;
        border_cols.push((w_off + n + i, svec_embed(&bordered(&zero_top, &e, 0.0))));
    }
    let nrows = svec_len(2 * (n + 1));
    for r in 0..nrows {
        let mut coeffs: Vec<(usize, f64)> = Vec::new();
        for (col, vec, sign) in top_cols {
            let val = -sign * vec[r];
            if val != 0.0 {
                coeffs.push((*col, val));
            }
        }
        for (col, vec) in &border_cols {
            if vec[r] != 0.0 {
                coeffs.push((*col, -vec[r]));
            }
        }
        rows.push((coeffs, b_const[r]));
    }
}

/// Frobenius-ball trace subproblem:
/// `max Re(cᴴw) − √η t` over `(w, t, X, x, y, u)` subject to
/// `√γ·u − tr(R̂X) − ρ₁x + ρ₂y ≤ 1`, `u ≥ ‖X‖_F`, `t ≥ ‖w‖`, `x, y ≥ 0`,
/// and `[[(y−x)I − X, w], [wᴴ, 1]] ⪰ 0`.
fn build_trace_fro_subproblem(
    n: usize,
    sig_radius: f64,
    r_center: &HermitianMatrix,
    inc_radius: f64,
    rho1: f64,
    rho2: f64,
) -> ConicProblem {
    let n2 = 2 * n;
    let nn = n * n;
    let t_col = n2;
    let x_off = n2 + 1;
    let x_col = x_off + nn;
    let y_col = x_col + 1;
    let u_col = y_col + 1;
    let nvars = u_col + 1;

    let mut c = vec![0.0; nvars];
    c[t_col] = sig_radius;

    let r_h = hvec_hermitian(r_center);
    let mut rows: Vec<(Vec<(usize, f64)>, f64)> = Vec::new();

    // Dual-certificate budget, then x ≥ 0, y ≥ 0.
    let mut budget: Vec<(usize, f64)> = vec![(u_col, inc_radius), (x_col, -rho1), (y_col, rho2)];
    for (v, rv) in r_h.iter().enumerate() {
        if *rv != 0.0 {
            budget.push((x_off + v, -rv));
        }
    }
    rows.push((budget, 1.0));
    rows.push((vec![(x_col, -1.0)], 0.0));
    rows.push((vec![(y_col, -1.0)], 0.0));

    // u ≥ ‖X‖_F.
    rows.push((vec![(u_col, -1.0)], 0.0));
    for v in 0..nn {
        rows.push((vec![(x_off + v, -1.0)], 0.0));
    }

    norm_epigraph_rows(&mut rows, 0, t_col, n2);

    // [[(y−x)I − X, w], [wᴴ, 1]] ⪰ 0.
    let eye_top = svec_embed(&bordered(
        &HermitianMatrix::identity(n),
        &vec![Complex64::ZERO; n],
        0.0,
    ));
    let mut top_cols: Vec<(usize, Vec<f64>, f64)> = vec![
        (y_col, eye_top.clone(), 1.0),
        (x_col, eye_top, -1.0),
    ];
    for v in 0..nn {
        let basis = bordered(&hermitian_basis(n, v), &vec![Complex64::ZERO; n], 0.0);
        top_cols.push((x_off + v, svec_embed(&basis), -1.0));
    }
    bordered_lmi_rows(&mut rows, n, &top_cols, 0);

    let cones = vec![
        Cone::Nonneg(3),
        Cone::Soc(1 + nn),
        Cone::Soc(1 + n2),
        Cone::Psd(2 * (n + 1)),
    ];
    assemble(nvars, c, rows, cones)
}

/// Spectral-ball trace subproblem:
/// `max Re(cᴴw) − √η t` over `(w, t, X, Y, x, y)` subject to
/// `√γ·tr(X+Y) + tr(R̂(Y−X)) − ρ₁x + ρ₂y ≤ 1`, `X ⪰ 0`, `Y ⪰ 0`,
/// `t ≥ ‖w‖`, `x, y ≥ 0`, and `[[(y−x)I + Y − X, w], [wᴴ, 1]] ⪰ 0`.
fn build_trace_spec_subproblem(
    n: usize,
    sig_radius: f64,
    r_center: &HermitianMatrix,
    inc_radius: f64,
    rho1: f64,
    rho2: f64,
) -> ConicProblem {
    let n2 = 2 * n;
    let nn = n * n;
    let t_col = n2;
    let x_off = n2 + 1;
    let y_off = x_off + nn;
    let x_col = y_off + nn;
    let y_col = x_col + 1;
    let nvars = y_col + 1;

    let mut c = vec![0.0; nvars];
    c[t_col] = sig_radius;

    let r_h = hvec_hermitian(r_center);
    let eye_h = hvec_hermitian(&HermitianMatrix::identity(n));
    let mut rows: Vec<(Vec<(usize, f64)>, f64)> = Vec::new();

    // Dual-certificate budget, then x ≥ 0, y ≥ 0.
    let mut budget: Vec<(usize, f64)> = vec![(x_col, -rho1), (y_col, rho2)];
    for v in 0..nn {
        let from_x = inc_radius * eye_h[v] - r_h[v];
        if from_x != 0.0 {
            budget.push((x_off + v, from_x));
        }
        let from_y = inc_radius * eye_h[v] + r_h[v];
        if from_y != 0.0 {
            budget.push((y_off + v, from_y));
        }
    }
    rows.push((budget, 1.0));
    rows.push((vec![(x_col, -1.0)], 0.0));
    rows.push((vec![(y_col, -1.0)], 0.0));

    // X ⪰ 0 and Y ⪰ 0.
    let basis_cols: Vec<Vec<f64>> =
        (0..nn).map(|v| svec_embed(&hermitian_basis(n, v))).collect();
    for off in [x_off, y_off] {
        let nrows = svec_len(2 * n);
        for r in 0..nrows {
            let coeffs: Vec<(usize, f64)> = (0..nn)
                .filter(|&v| basis_cols[v][r] != 0.0)
                .map(|v| (off + v, -basis_cols[v][r]))
                .collect();
            rows.push((coeffs, 0.0));
        }
    }

    norm_epigraph_rows(&mut rows, 0, t_col, n2);

    // [[(y−x)I + Y − X, w], [wᴴ, 1]] ⪰ 0.
    let eye_top = svec_embed(&bordered(
        &HermitianMatrix::identity(n),
        &vec![Complex64::ZERO; n],
        0.0,
    ));
    let mut top_cols: Vec<(usize, Vec<f64>, f64)> = vec![
        (y_col, eye_top.clone(), 1.0),
        (x_col, eye_top, -1.0),
    ];
    for v in 0..nn {
        let basis = bordered(&hermitian_basis(n, v), &vec![Complex64::ZERO; n], 0.0);
        let col = svec_embed(&basis);
        top_cols.push((y_off + v, col.clone(), 1.0));
        top_cols.push((x_off + v, col, -1.0));
    }
    bordered_lmi_rows(&mut rows, n, &top_cols, 0);

    let cones = vec![
        Cone::Nonneg(3),
        Cone::Psd(2 * n),
        Cone::Psd(2 * n),
        Cone::Soc(1 + n2),
        Cone::Psd(2 * (n + 1)),
    ];
    assemble(nvars, c, rows, cones)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimax::solve_minimax;
    use crate::uncertainty::{
        worst_case_inc_power, worst_case_signal_power, MatrixNorm,
    };
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(rng: &mut ChaCha12Rng, n: usize, m: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, m, |_, _| {
            c64(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        })
    }

    fn random_psd(rng: &mut ChaCha12Rng, n: usize, shift: f64) -> HermitianMatrix {
        let g = random_matrix(rng, n, n);
        HermitianMatrix::symmetrize(&g * &g.adjoint()).add_scaled_identity(shift)
    }

    fn assert_ascent(trace: &[f64]) {
        for pair in trace.windows(2) {
            assert!(
                pair[1] >= pair[0] - 1e-9 * (1.0 + pair[0].abs()),
                "objective regressed: {} -> {}",
                pair[0],
                pair[1]
            );
        }
    }

    #[test]
    fn no_uncertainty_matches_eigen_oracle() {
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        for &(n, m) in &[(3usize, 2usize), (4, 1)] {
            let q = random_matrix(&mut rng, n, m);
            let r = random_psd(&mut rng, n, 0.6);
            let signal = SignalSetSpec::new(q.clone(), MatrixNorm::Frobenius, 0.0).unwrap();
            let inc = IncSetSpec::ball(r.clone(), MatrixNorm::Frobenius, 0.0).unwrap();

            let settings =
                DcSettings { tol: 1e-10, max_iter: 300, ..DcSettings::default() };
            let res = solve_maximin_ball_dc(&signal, &inc, None, &settings).unwrap();
            assert!(res.converged);
            assert_ascent(&res.objective_trace);

            // Independent oracle: with no uncertainty the maximin value is
            // the top eigenvalue of R̂^{-1/2} Q̂ Q̂ᴴ R̂^{-1/2}.
            let rinv = inv_sqrt_psd(&r, None).unwrap();
            let b = rinv.as_matrix() * &q;
            let (lam, _) = principal_pair(&HermitianMatrix::symmetrize(&b * &b.adjoint()));
            let got = res.objective * res.objective;
            assert!(
                (got - lam).abs() <= 1e-5 * lam,
                "n={n} m={m}: {got} vs {lam}"
            );
        }
    }

    #[test]
    fn ball_dc_stays_below_minimax_and_feasible() {
        let mut rng = ChaCha12Rng::seed_from_u64(33);
        for trial in 0..3 {
            let (n, m) = (3usize, 2usize);
            let q = random_matrix(&mut rng, n, m);
            let r = random_psd(&mut rng, n, 0.6);
            let eta = 0.2 * q.frobenius_norm();
            let gamma = 0.15 * r.frobenius_norm();
            let signal = SignalSetSpec::new(q.clone(), MatrixNorm::Frobenius, eta).unwrap();
            let inc = IncSetSpec::ball(r.clone(), MatrixNorm::Frobenius, gamma).unwrap();

            let res =
                solve_maximin_ball_dc(&signal, &inc, None, &DcSettings::default()).unwrap();
            assert!(res.converged, "trial {trial} did not converge");
            assert!(res.iterations <= 50);
            assert_ascent(&res.objective_trace);

            // Feasibility: the final iterate respects the worst-case
            // power constraint.
            let wc = worst_case_inc_power(&inc, &res.w).unwrap();
            assert!(wc <= 1.0 + 1e-7, "trial {trial}: constraint {wc}");

            // The squared DC objective never beats the single-shot convex
            // optimum of the same instance.
            let mm = solve_minimax(&signal, &inc, &SolverSettings::default()).unwrap();
            assert!(
                res.objective * res.objective <= mm.lambda_star + 1e-6,
                "trial {trial}: {} vs {}",
                res.objective * res.objective,
                mm.lambda_star
            );
        }
    }

    #[test]
    fn trace_wide_interval_matches_ball() {
        let mut rng = ChaCha12Rng::seed_from_u64(35);
        let (n, m) = (3usize, 2usize);
        let q = random_matrix(&mut rng, n, m);
        let r = random_psd(&mut rng, n, 0.6);
        let eta = 0.2 * q.frobenius_norm();
        let gamma = 0.15 * r.frobenius_norm();
        let signal = SignalSetSpec::new(q.clone(), MatrixNorm::Frobenius, eta).unwrap();

        let ball = IncSetSpec::ball(r.clone(), MatrixNorm::Frobenius, gamma).unwrap();
        let base =
            solve_maximin_ball_dc(&signal, &ball, None, &DcSettings::default()).unwrap();

        // An interval wide enough to contain every trace the ball allows
        // leaves the constraint inactive.
        let slack = r.trace() + (n as f64) * gamma;
        for norm in [MatrixNorm::Frobenius, MatrixNorm::Spectral] {
            let inc = IncSetSpec::new(
                r.clone(),
                norm,
                gamma,
                Some((0.0, 10.0 * slack)),
                0.0,
            )
            .unwrap();
            let res =
                solve_maximin_trace_dc(&signal, &inc, None, &DcSettings::default()).unwrap();
            assert!(res.converged);
            assert_ascent(&res.objective_trace);
            assert!(
                (res.objective - base.objective).abs() <= 1e-4 * (1.0 + base.objective),
                "{:?}: {} vs ball {}",
                norm,
                res.objective,
                base.objective
            );
        }
    }

    #[test]
    fn trace_dc_stays_below_trace_minimax() {
        let mut rng = ChaCha12Rng::seed_from_u64(37);
        let (n, m) = (3usize, 2usize);
        let q = random_matrix(&mut rng, n, m);
        let r = random_psd(&mut rng, n, 0.6);
        let eta = 0.2 * q.frobenius_norm();
        let gamma = 0.15 * r.frobenius_norm();
        let tr = r.trace();
        let signal = SignalSetSpec::new(q.clone(), MatrixNorm::Frobenius, eta).unwrap();

        for norm in [MatrixNorm::Frobenius, MatrixNorm::Spectral] {
            let inc =
                IncSetSpec::new(r.clone(), norm, gamma, Some((0.6 * tr, 0.95 * tr)), 0.0)
                    .unwrap();
            let res =
                solve_maximin_trace_dc(&signal, &inc, None, &DcSettings::default()).unwrap();
            assert!(res.converged);
            assert_ascent(&res.objective_trace);

            let wc = worst_case_inc_power(&inc, &res.w).unwrap();
            assert!(wc <= 1.0 + 1e-7, "{norm:?}: constraint {wc}");

            let mm = solve_minimax(&signal, &inc, &SolverSettings::default()).unwrap();
            assert!(
                res.objective * res.objective <= mm.lambda_star + 1e-6,
                "{norm:?}: {} vs {}",
                res.objective * res.objective,
                mm.lambda_star
            );

            // The squared clipped objective is exactly the guaranteed
            // worst-case SINR when the power constraint is active.
            let sig = worst_case_signal_power(&signal, &res.w).unwrap();
            let guaranteed = sig / wc;
            assert!(
                (guaranteed - res.objective * res.objective).abs()
                    <= 1e-5 * (1.0 + guaranteed),
                "{norm:?}: {guaranteed} vs {}",
                res.objective * res.objective
            );
        }
    }

    #[test]
    fn default_start_examples() {
        // R̂ = I, γ = 0, Q̂ = e₁: the start is e₁ up to phase, on the
        // constraint boundary.
        let q = ComplexMatrix::from_fn(3, 1, |i, _| {
            if i == 0 { c64(1.0, 0.0) } else { Complex64::ZERO }
        });
        let r = HermitianMatrix::identity(3);
        let signal = SignalSetSpec::new(q.clone(), MatrixNorm::Frobenius, 0.0).unwrap();
        let inc = IncSetSpec::ball(r.clone(), MatrixNorm::Frobenius, 0.0).unwrap();
        let w0 = default_start(&signal, &inc).unwrap();
        assert!((w0[0].norm() - 1.0).abs() <= 1e-10);
        assert!(w0[1].norm() <= 1e-10 && w0[2].norm() <= 1e-10);

        // Boundary normalization and determinism on a random instance.
        let mut rng = ChaCha12Rng::seed_from_u64(39);
        let q = random_matrix(&mut rng, 4, 2);
        let r = random_psd(&mut rng, 4, 0.5);
        let gamma = 0.3;
        let signal = SignalSetSpec::new(q.clone(), MatrixNorm::Frobenius, 0.1).unwrap();
        let inc = IncSetSpec::ball(r.clone(), MatrixNorm::Frobenius, gamma).unwrap();
        let w0 = default_start(&signal, &inc).unwrap();
        let shifted = r.add_scaled_identity(gamma);
        assert!((shifted.quadratic_form(&w0) - 1.0).abs() <= 1e-10);
        let again = default_start(&signal, &inc).unwrap();
        assert_eq!(w0, again);
    }

    #[test]
    fn degenerate_start_is_rejected() {
        let q = ComplexMatrix::from_fn(3, 1, |i, _| {
            if i == 0 { c64(1.0, 0.0) } else { Complex64::ZERO }
        });
        let r = HermitianMatrix::identity(3);
        let signal = SignalSetSpec::new(q, MatrixNorm::Frobenius, 0.0).unwrap();
        let inc = IncSetSpec::ball(r, MatrixNorm::Frobenius, 0.0).unwrap();
        let w0 = vec![Complex64::ZERO, Complex64::ONE, Complex64::ZERO];
        let err = solve_maximin_ball_dc(&signal, &inc, Some(&w0), &DcSettings::default());
        assert!(matches!(err, Err(Error::InvalidInput(_))));

        // Mismatched preconditions are rejected too.
        let with_trace =
            IncSetSpec::new(HermitianMatrix::identity(3), MatrixNorm::Frobenius, 0.5,
                Some((1.0, 4.0)), 0.0)
            .unwrap();
        let sig2 = SignalSetSpec::new(
            ComplexMatrix::from_fn(3, 1, |i, _| {
                if i == 0 { c64(1.0, 0.0) } else { Complex64::ZERO }
            }),
            MatrixNorm::Frobenius,
            0.0,
        )
        .unwrap();
        assert!(matches!(
            solve_maximin_ball_dc(&sig2, &with_trace, None, &DcSettings::default()),
            Err(Error::InvalidInput(_))
        ));
        let ball_only =
            IncSetSpec::ball(HermitianMatrix::identity(3), MatrixNorm::Frobenius, 0.5).unwrap();
        assert!(matches!(
            solve_maximin_trace_dc(&sig2, &ball_only, None, &DcSettings::default()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn termination_is_a_fixed_point() {
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        let (n, m) = (3usize, 2usize);
        let q = random_matrix(&mut rng, n, m);
        let r = random_psd(&mut rng, n, 0.8);
        let eta = 0.15 * q.frobenius_norm();
        let gamma = 0.1 * r.frobenius_norm();
        let signal = SignalSetSpec::new(q.clone(), MatrixNorm::Frobenius, eta).unwrap();
        let inc = IncSetSpec::ball(r.clone(), MatrixNorm::Frobenius, gamma).unwrap();

        let tight = DcSettings { tol: 1e-10, max_iter: 500, ..DcSettings::default() };
        let res = solve_maximin_ball_dc(&signal, &inc, None, &tight).unwrap();
        assert!(res.converged);

        // One more linearized step from the converged iterate stays put.
        let one = DcSettings { tol: 1e-12, max_iter: 1, ..DcSettings::default() };
        let next = solve_maximin_ball_dc(&signal, &inc, Some(&res.w), &one).unwrap();
        let diff: f64 = res
            .w
            .iter()
            .zip(next.w.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let scale = vnorm(&res.w);
        assert!(diff <= 1e-5 * scale, "moved by {diff} at scale {scale}");
    }
}
