//! Homogeneous self-dual interior-point solver: Nesterov–Todd scaled
//! directions, Mehrotra predictor-corrector, dense normal-equation
//! factorizations with equality rows handled through a Schur complement.
//!
//! The embedding carries `(x, y, s, τ, κ)` with residuals
//! `r_p = Ax + s − bτ`, `r_d = Aᵀy + cτ`, `r_g = κ + cᵀx + bᵀy`.
//! A vanishing `τ` with positive `κ` yields an infeasibility or
//! unboundedness certificate; positive `τ` yields the optimum after
//! rescaling by `1/τ`.

use super::cones::{ProperCones, Scaling};
use super::{dot, norm2, Cone, ConicProblem, ConicSolution, SolveStatus, SolverSettings};
use crate::linalg::real::{self, RealMatrix};

pub(crate) fn solve_hsde(prob: &ConicProblem, settings: &SolverSettings) -> ConicSolution {
    let n = prob.num_vars();
    let m = prob.num_rows();
    if n == 0 {
        return solve_no_vars(prob);
    }
    if m == 0 {
        return solve_no_rows(prob);
    }

    let sp = split_rows(prob);
    let proper = ProperCones::new(&prob.cones);
    let mc = proper.dim();
    let p = sp.e_rows.len();
    let nb = 1.0 + norm2(&prob.b);
    let nc = 1.0 + norm2(&prob.c);
    let deg = proper.degree();
    let tol = settings.tol;

    // ---------- initialization ----------
    // Primal: x̂ minimizing ‖b_C − Cx‖ subject to Ex = b_E, slack shifted
    // into the cone interior. Dual: least-squares y on range(A) with
    // Aᵀy ≈ −c, proper blocks shifted likewise.
    let mut x;
    let mut s;
    {
        let f0 = match factor(&sp.c_mat, &sp.e_mat) {
            Some(f) => f,
            None => return finish(prob, SolveStatus::NumericalFailure, zeros(n), zeros(m), zeros(m), 0),
        };
        let rhs = sp.c_mat.t_matvec(&sp.b_c);
        let (x0, _) = saddle_solve(&f0, &sp.e_mat, &rhs, &sp.b_e);
        let cx0 = sp.c_mat.matvec(&x0);
        let mut s0: Vec<f64> = (0..mc).map(|i| sp.b_c[i] - cx0[i]).collect();
        let me = proper.min_eig(&s0);
        if me <= 1e-8 * norm2(&s0).max(1.0) {
            proper.add_scaled_unit(&mut s0, 1.0 - me);
        }
        x = x0;
        s = s0;
    }
    let mut ze;
    let mut zc;
    {
        let mfull = real::ata(&prob.a);
        let lm = match chol_ladder(&mfull) {
            Some(l) => l,
            None => return finish(prob, SolveStatus::NumericalFailure, zeros(n), zeros(m), zeros(m), 0),
        };
        let mut t: Vec<f64> = prob.c.iter().map(|v| -v).collect();
        real::chol_solve(&lm, &mut t);
        ze = sp.e_mat.matvec(&t);
        let mut z0 = sp.c_mat.matvec(&t);
        let me = proper.min_eig(&z0);
        if me <= 1e-8 * norm2(&z0).max(1.0) {
            proper.add_scaled_unit(&mut z0, 1.0 - me);
        }
        zc = z0;
    }
    let mut tau = 1.0f64;
    let mut kappa = 1.0f64;

    let mut best: Option<(Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>, f64, f64)> = None;

    for iter in 0..settings.max_iter {
        // ---------- residuals and termination ----------
        let ex = sp.e_mat.matvec(&x);
        let cx_mat = sp.c_mat.matvec(&x);
        let r_pe: Vec<f64> = (0..p).map(|i| ex[i] - sp.b_e[i] * tau).collect();
        let r_pc: Vec<f64> = (0..mc).map(|i| cx_mat[i] + s[i] - sp.b_c[i] * tau).collect();
        let atz = add(&sp.e_mat.t_matvec(&ze), &sp.c_mat.t_matvec(&zc));
        let r_d: Vec<f64> = (0..n).map(|j| atz[j] + prob.c[j] * tau).collect();
        let cx = dot(&prob.c, &x);
        let by = dot(&sp.b_e, &ze) + dot(&sp.b_c, &zc);
        let r_g = kappa + cx + by;

        let pres = (dot(&r_pe, &r_pe) + dot(&r_pc, &r_pc)).sqrt() / (tau * nb);
        let dres = norm2(&r_d) / (tau * nc);
        let pobj = cx / tau;
        let gap_comp = dot(&s, &zc) / (tau * tau);
        let gap_spec = (pobj + by / tau).abs() / (1.0 + pobj.abs());
        let merit = pres.max(dres).max(gap_comp.abs() / (1.0 + pobj.abs()));

        if !merit.is_finite() || !tau.is_finite() || !kappa.is_finite() {
            let (bx, bze, bzc, bs, btau, _) = best.unwrap_or((x, ze, zc, s, tau, f64::INFINITY));
            return point_solution(prob, &sp, SolveStatus::NumericalFailure, &bx, &bze, &bzc, &bs, btau, iter);
        }
        if best.as_ref().is_none_or(|b| merit < b.5) {
            best = Some((x.clone(), ze.clone(), zc.clone(), s.clone(), tau, merit));
        }

        if pres <= tol && dres <= tol && gap_spec <= tol && gap_comp / (1.0 + pobj.abs()) <= tol {
            return point_solution(prob, &sp, SolveStatus::Optimal, &x, &ze, &zc, &s, tau, iter);
        }
        if by < 0.0 && norm2(&atz) <= tol * (-by) {
            let scale = -1.0 / by;
            let y_full = scatter(&sp, m, &ze, &zc, scale);
            return finish(prob, SolveStatus::Infeasible, zeros(n), y_full, zeros(m), iter);
        }
        if cx < 0.0 {
            let axs = (dot(&ex, &ex)
                + (0..mc).map(|i| (cx_mat[i] + s[i]) * (cx_mat[i] + s[i])).sum::<f64>())
            .sqrt();
            if axs <= tol * (-cx) {
                let scale = -1.0 / cx;
                let x_ray: Vec<f64> = x.iter().map(|v| v * scale).collect();
                let s_ray = scatter(&sp, m, &vec![0.0; p], &s, scale);
                return finish(prob, SolveStatus::Unbounded, x_ray, zeros(m), s_ray, iter);
            }
        }

        let mu = (dot(&s, &zc) + tau * kappa) / (deg + 1) as f64;

        // ---------- scaling and factorization ----------
        let numerical_failure = |best: Option<(Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>, f64, f64)>| {
            let (bx, bze, bzc, bs, btau, _) = best.expect("best iterate recorded");
            point_solution(prob, &sp, SolveStatus::NumericalFailure, &bx, &bze, &bzc, &bs, btau, iter)
        };
        let sc = match Scaling::compute(&proper, &s, &zc) {
            Some(sc) => sc,
            None => return numerical_failure(best),
        };
        let g = sc.scale_rows_winvt(&sp.c_mat);
        let f = match factor(&g, &sp.e_mat) {
            Some(f) => f,
            None => return numerical_failure(best),
        };

        // Direction component multiplying Δτ: K₂ solve with rhs (−c, b).
        let neg_c: Vec<f64> = prob.c.iter().map(|v| -v).collect();
        let (x1, ze1, zc1) = k2_solve(&f, &sp, &g, &sc, &neg_c, &sp.b_e, &sp.b_c);
        let den = dot(&prob.c, &x1) + dot(&sp.b_e, &ze1) + dot(&sp.b_c, &zc1) - kappa / tau;

        let lam_sq = sc.lambda_sq();

        // ---------- affine (predictor) direction ----------
        let ds_aff: Vec<f64> = lam_sq.iter().map(|v| -v).collect();
        let dtk_aff = -tau * kappa;
        let (_adx, _adze, _adzc, adtau, ads_tilde, adz_tilde, adkappa) = direction(
            &f, &sp, &g, &sc, prob, &x1, &ze1, &zc1, den, tau, kappa,
            &neg(&r_pe), &neg(&r_pc), &neg(&r_d), -r_g, &ds_aff, dtk_aff,
        );
        let step_aff = boundary_step(&sc, &ads_tilde, &adz_tilde, tau, adtau, kappa, adkappa);
        let alpha_aff = step_aff.min(1.0);
        let sigma = {
            let v = 1.0 - alpha_aff;
            (v * v * v).clamp(0.0, 1.0)
        };

        // ---------- combined (corrector) direction ----------
        let oms = 1.0 - sigma;
        let corr = proper.jprod(&ads_tilde, &adz_tilde);
        let mut ds: Vec<f64> = (0..mc).map(|i| -lam_sq[i] - corr[i]).collect();
        proper.add_scaled_unit(&mut ds, sigma * mu);
        let dtk = -tau * kappa - adtau * adkappa + sigma * mu;
        let (dx, dze, dzc, dtau, ds_tilde, _dz_tilde, dkappa) = direction(
            &f, &sp, &g, &sc, prob, &x1, &ze1, &zc1, den, tau, kappa,
            &scaled(&r_pe, -oms), &scaled(&r_pc, -oms), &scaled(&r_d, -oms), -oms * r_g, &ds, dtk,
        );
        let step = boundary_step(&sc, &ds_tilde, &sc.apply_w(&dzc), tau, dtau, kappa, dkappa);
        if !(step > 1e-13) {
            return numerical_failure(best);
        }
        let alpha = (0.99 * step).min(1.0);

        // ---------- update ----------
        let ds_unscaled = sc.apply_wt(&ds_tilde);
        axpy(&mut x, alpha, &dx);
        axpy(&mut ze, alpha, &dze);
        axpy(&mut zc, alpha, &dzc);
        axpy(&mut s, alpha, &ds_unscaled);
        tau += alpha * dtau;
        kappa += alpha * dkappa;
        if !(tau > 0.0 && kappa > 0.0) {
            return numerical_failure(best);
        }
    }

    let (bx, bze, bzc, bs, btau, _) = best.expect("at least one iterate");
    point_solution(prob, &sp, SolveStatus::MaxIter, &bx, &bze, &bzc, &bs, btau, settings.max_iter)
}

/// Unscaled solution from an HSDE point: divide by τ and scatter back to
/// the original row order.
#[allow(clippy::too_many_arguments)]
fn point_solution(
    prob: &ConicProblem,
    sp: &Split,
    status: SolveStatus,
    x: &[f64],
    ze: &[f64],
    zc: &[f64],
    s: &[f64],
    tau: f64,
    iterations: usize,
) -> ConicSolution {
    let m = prob.num_rows();
    let inv = if tau > 0.0 { 1.0 / tau } else { 1.0 };
    let xs: Vec<f64> = x.iter().map(|v| v * inv).collect();
    let ys = scatter(sp, m, ze, zc, inv);
    let ss = scatter(sp, m, &vec![0.0; sp.e_rows.len()], s, inv);
    // Complementarity-based dual bound: cᵀx̄ − s̄ᵀz̄ never exceeds the primal
    // objective (sᵀz ≥ 0 by cone membership) and coincides with −bᵀy at
    // optimality; −bᵀy itself is not a valid bound until dual feasibility
    // is reached.
    let dual_bound = dot(&prob.c, &xs) - dot(s, zc) * inv * inv;
    let mut sol = finish(prob, status, xs, ys, ss, iterations);
    sol.dual_objective = dual_bound;
    sol
}

fn finish(
    prob: &ConicProblem,
    status: SolveStatus,
    x: Vec<f64>,
    y: Vec<f64>,
    s: Vec<f64>,
    iterations: usize,
) -> ConicSolution {
    let (pr, dr, gap) = super::residuals(prob, &x, &y, &s);
    ConicSolution {
        status,
        primal_objective: dot(&prob.c, &x),
        dual_objective: -dot(&prob.b, &y),
        primal_residual: pr,
        dual_residual: dr,
        gap,
        x,
        y,
        s,
        iterations,
    }
}

/// Computes a full search direction given the shared Δτ-component solve.
#[allow(clippy::too_many_arguments)]
fn direction(
    f: &KktFactor,
    sp: &Split,
    g: &RealMatrix,
    sc: &Scaling,
    prob: &ConicProblem,
    x1: &[f64],
    ze1: &[f64],
    zc1: &[f64],
    den: f64,
    tau: f64,
    kappa: f64,
    d_pe: &[f64],
    d_pc: &[f64],
    d_d: &[f64],
    d_g: f64,
    d_s: &[f64],
    d_tk: f64,
) -> (Vec<f64>, Vec<f64>, Vec<f64>, f64, Vec<f64>, Vec<f64>, f64) {
    let lam_ds = sc.lambda_jdiv(d_s);
    let wt_lam_ds = sc.apply_wt(&lam_ds);
    let rc: Vec<f64> = (0..d_pc.len()).map(|i| d_pc[i] - wt_lam_ds[i]).collect();
    let (x2, ze2, zc2) = k2_solve(f, sp, g, sc, d_d, d_pe, &rc);
    let num = d_g - d_tk / tau - (dot(&prob.c, &x2) + dot(&sp.b_e, &ze2) + dot(&sp.b_c, &zc2));
    let dtau = num / den;
    let dx = add_scaled(&x2, x1, dtau);
    let dze = add_scaled(&ze2, ze1, dtau);
    let dzc = add_scaled(&zc2, zc1, dtau);
    let dz_tilde = sc.apply_w(&dzc);
    let ds_tilde: Vec<f64> = (0..lam_ds.len()).map(|i| lam_ds[i] - dz_tilde[i]).collect();
    let dkappa = (d_tk - kappa * dtau) / tau;
    (dx, dze, dzc, dtau, ds_tilde, dz_tilde, dkappa)
}

fn boundary_step(
    sc: &Scaling,
    ds_tilde: &[f64],
    dz_tilde: &[f64],
    tau: f64,
    dtau: f64,
    kappa: f64,
    dkappa: f64,
) -> f64 {
    let mut step = sc.step_to_boundary(ds_tilde).min(sc.step_to_boundary(dz_tilde));
    if dtau < 0.0 {
        step = step.min(-tau / dtau);
    }
    if dkappa < 0.0 {
        step = step.min(-kappa / dkappa);
    }
    step
}

// ---------- row splitting ----------

struct Split {
    e_rows: Vec<usize>,
    c_rows: Vec<usize>,
    e_mat: RealMatrix,
    c_mat: RealMatrix,
    b_e: Vec<f64>,
    b_c: Vec<f64>,
}

fn split_rows(prob: &ConicProblem) -> Split {
    let n = prob.num_vars();
    let mut e_rows = Vec::new();
    let mut c_rows = Vec::new();
    let mut off = 0usize;
    for cone in &prob.cones {
        let d = cone.slack_dim();
        let target = if matches!(cone, Cone::Zero(_)) { &mut e_rows } else { &mut c_rows };
        target.extend(off..off + d);
        off += d;
    }
    let gather = |rows: &[usize]| {
        let mut mtx = RealMatrix::zeros(rows.len(), n);
        let mut rhs = vec![0.0; rows.len()];
        for (i, &r) in rows.iter().enumerate() {
            mtx.row_mut(i).copy_from_slice(prob.a.row(r));
            rhs[i] = prob.b[r];
        }
        (mtx, rhs)
    };
    let (e_mat, b_e) = gather(&e_rows);
    let (c_mat, b_c) = gather(&c_rows);
    Split { e_rows, c_rows, e_mat, c_mat, b_e, b_c }
}

fn scatter(sp: &Split, m: usize, ve: &[f64], vc: &[f64], scale: f64) -> Vec<f64> {
    let mut out = vec![0.0; m];
    for (i, &r) in sp.e_rows.iter().enumerate() {
        out[r] = ve[i] * scale;
    }
    for (i, &r) in sp.c_rows.iter().enumerate() {
        out[r] = vc[i] * scale;
    }
    out
}

// ---------- KKT factorization ----------

struct KktFactor {
    /// Cholesky factor of `N = GᵀG (+ δI)`.
    ln: RealMatrix,
    /// Cached `N^{-1}Eᵀ`, `n × p`.
    niet: RealMatrix,
    /// Cholesky factor of the Schur complement `E N^{-1} Eᵀ`.
    ls: Option<RealMatrix>,
}

/// Cholesky with a deterministic regularization ladder; `None` when even
/// the largest shift fails.
fn chol_ladder(mtx: &RealMatrix) -> Option<RealMatrix> {
    let n = mtx.nrows();
    if n == 0 {
        return Some(RealMatrix::zeros(0, 0));
    }
    let mean_diag = (0..n).map(|i| mtx[(i, i)].abs()).sum::<f64>() / n as f64;
    let base = mean_diag.max(1e-300);
    let mut work = mtx.clone();
    let mut added = 0.0;
    for &fac in &[0.0, 1e-14, 1e-11, 1e-8] {
        let delta = fac * base;
        if delta > added {
            let inc = delta - added;
            for i in 0..n {
                work[(i, i)] += inc;
            }
            added = delta;
        }
        if let Some(l) = real::cholesky(&work) {
            return Some(l);
        }
    }
    None
}

fn factor(g: &RealMatrix, e: &RealMatrix) -> Option<KktFactor> {
    let n = g.ncols();
    let nmat = real::ata(g);
    let ln = chol_ladder(&nmat)?;
    let p = e.nrows();
    if p == 0 {
        return Some(KktFactor { ln, niet: RealMatrix::zeros(n, 0), ls: None });
    }
    let mut niet = RealMatrix::zeros(n, p);
    for j in 0..p {
        let mut col = e.row(j).to_vec();
        real::chol_solve(&ln, &mut col);
        for i in 0..n {
            niet[(i, j)] = col[i];
        }
    }
    let se = e * &niet;
    let ls = chol_ladder(&se)?;
    Some(KktFactor { ln, niet, ls: Some(ls) })
}

/// Solves the saddle system `N dx + Eᵀ dze = rx`, `E dx = re`.
fn saddle_solve(f: &KktFactor, e: &RealMatrix, rx: &[f64], re: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut u = rx.to_vec();
    real::chol_solve(&f.ln, &mut u);
    let p = e.nrows();
    if p == 0 {
        return (u, Vec::new());
    }
    let eu = e.matvec(&u);
    let mut ze: Vec<f64> = (0..p).map(|i| eu[i] - re[i]).collect();
    real::chol_solve(f.ls.as_ref().expect("schur factor"), &mut ze);
    let corr = f.niet.matvec(&ze);
    let dx: Vec<f64> = (0..u.len()).map(|i| u[i] - corr[i]).collect();
    (dx, ze)
}

/// Solves the scaled KKT system
/// `Eᵀ ze + Cᵀ zc = rx`, `E x = re`, `C x − WᵀW zc = rc`
/// by elimination through `G = W^{-T}C`, with one round of iterative
/// refinement against the unscaled equations.
fn k2_solve(
    f: &KktFactor,
    sp: &Split,
    g: &RealMatrix,
    sc: &Scaling,
    rx: &[f64],
    re: &[f64],
    rc: &[f64],
) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let (mut x, mut ze, mut zc) = k2_once(f, sp, g, sc, rx, re, rc);
    for _ in 0..1 {
        // residuals of the original system
        let atz = add(&sp.e_mat.t_matvec(&ze), &sp.c_mat.t_matvec(&zc));
        let rx_res: Vec<f64> = (0..rx.len()).map(|j| rx[j] - atz[j]).collect();
        let ex = sp.e_mat.matvec(&x);
        let re_res: Vec<f64> = (0..re.len()).map(|i| re[i] - ex[i]).collect();
        let cx = sp.c_mat.matvec(&x);
        let wtwz = sc.apply_wt(&sc.apply_w(&zc));
        let rc_res: Vec<f64> = (0..rc.len()).map(|i| rc[i] - cx[i] + wtwz[i]).collect();
        let (dx, dze, dzc) = k2_once(f, sp, g, sc, &rx_res, &re_res, &rc_res);
        axpy(&mut x, 1.0, &dx);
        axpy(&mut ze, 1.0, &dze);
        axpy(&mut zc, 1.0, &dzc);
    }
    (x, ze, zc)
}

fn k2_once(
    f: &KktFactor,
    sp: &Split,
    g: &RealMatrix,
    sc: &Scaling,
    rx: &[f64],
    re: &[f64],
    rc: &[f64],
) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let wc = sc.apply_winvt(rc);
    let mut rhat = g.t_matvec(&wc);
    for (r, v) in rhat.iter_mut().zip(rx) {
        *r += v;
    }
    let (x, ze) = saddle_solve(f, &sp.e_mat, &rhat, re);
    let gx = g.matvec(&x);
    let diff: Vec<f64> = (0..gx.len()).map(|i| gx[i] - wc[i]).collect();
    let zc = sc.apply_winv(&diff);
    (x, ze, zc)
}

// ---------- degenerate shapes ----------

/// `n = 0`: feasibility is decided directly; infeasibility produces an
/// explicit separating certificate per cone block.
fn solve_no_vars(prob: &ConicProblem) -> ConicSolution {
    let m = prob.num_rows();
    let tiny = 1e-12 * (1.0 + norm2(&prob.b));
    let mut off = 0usize;
    let mut cert: Option<Vec<f64>> = None;
    for cone in &prob.cones {
        let d = cone.slack_dim();
        let blk = &prob.b[off..off + d];
        match cone {
            Cone::Zero(_) => {
                if let Some(i) = blk.iter().position(|v| v.abs() > tiny) {
                    let mut y = zeros(m);
                    y[off + i] = -blk[i].signum();
                    cert = Some(y);
                }
            }
            Cone::Nonneg(_) => {
                if let Some(i) = blk.iter().position(|&v| v < -tiny) {
                    let mut y = zeros(m);
                    y[off + i] = 1.0;
                    cert = Some(y);
                }
            }
            Cone::Soc(_) => {
                let tail = norm2(&blk[1..]);
                if blk[0] < tail - tiny {
                    let mut y = zeros(m);
                    if tail > 0.0 {
                        y[off] = tail;
                        for i in 1..d {
                            y[off + i] = -blk[i];
                        }
                    } else {
                        y[off] = 1.0;
                    }
                    cert = Some(y);
                }
            }
            Cone::Psd(pside) => {
                let (vals, vecs) = real::sym_eig(&real::smat(blk, *pside));
                let k = vals.len() - 1;
                if vals[k] < -tiny {
                    let v: Vec<f64> = (0..*pside).map(|i| vecs[(i, k)]).collect();
                    let vv = RealMatrix::from_fn(*pside, *pside, |i, j| v[i] * v[j]);
                    let mut y = zeros(m);
                    y[off..off + d].copy_from_slice(&real::svec(&vv));
                    cert = Some(y);
                }
            }
        }
        if cert.is_some() {
            break;
        }
        off += d;
    }
    match cert {
        Some(mut y) => {
            let by = dot(&prob.b, &y);
            let scale = -1.0 / by;
            for v in &mut y {
                *v *= scale;
            }
            finish(prob, SolveStatus::Infeasible, Vec::new(), y, zeros(m), 0)
        }
        None => finish(prob, SolveStatus::Optimal, Vec::new(), zeros(m), prob.b.clone(), 0),
    }
}

/// `m = 0`: unconstrained linear objective.
fn solve_no_rows(prob: &ConicProblem) -> ConicSolution {
    let ncsq = dot(&prob.c, &prob.c);
    if ncsq == 0.0 {
        finish(prob, SolveStatus::Optimal, zeros(prob.num_vars()), Vec::new(), Vec::new(), 0)
    } else {
        let ray: Vec<f64> = prob.c.iter().map(|v| -v / ncsq).collect();
        finish(prob, SolveStatus::Unbounded, ray, Vec::new(), Vec::new(), 0)
    }
}

// ---------- small vector helpers ----------

fn zeros(k: usize) -> Vec<f64> {
    vec![0.0; k]
}

fn neg(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| -x).collect()
}

fn scaled(v: &[f64], a: f64) -> Vec<f64> {
    v.iter().map(|x| a * x).collect()
}

fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn add_scaled(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + t * y).collect()
}

fn axpy(dst: &mut [f64], a: f64, src: &[f64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += a * s;
    }
}
