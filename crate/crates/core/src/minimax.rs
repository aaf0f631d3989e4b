//! Single-shot convex route to the globally optimal robust beamformer.
//!
//! The robust SINR problem `max_{w != 0} min_{Q, R1} w^H Q Q^H w / w^H R1 w`
//! over the sets of [`crate::uncertainty`] is solved through its equivalent
//! semidefinite program
//!
//! ```text
//! minimize    lambda
//! subject to  [[R1, Q], [Q^H, lambda*I_M]] ⪰ 0,   Q in signal set,
//!             R1 in covariance set,
//! ```
//!
//! whose optimum `lambda*` equals the optimal worst-case SINR, after which
//! the beamformer is recovered in closed form from the optimal `(Q*, R1*)`.

use num_complex::Complex64;

use crate::conic::{solve, Cone, ConicProblem, SolveStatus, SolverSettings};
use crate::linalg::{
    eig_hermitian, hvec_hermitian, inv_sqrt_psd, principal_pair, unhvec_hermitian,
    unvec_isometric, vec_isometric, vnorm, ComplexMatrix, HermitianMatrix,
};
use crate::uncertainty::{
    assemble, hermitian_basis, solver_error, svec_embed, IncSetSpec, MatrixNorm, SignalSetSpec,
};
use crate::{Error, Result};

/// Result of a minimax solve: the optimal value, the worst-case pair
/// `(Q*, R1*)`, the optimal beamformer, and solver diagnostics.
///
/// On return, `w_star^H R1_star w_star = 1` and
/// `lambda_star = w_star^H Q_star Q_star^H w_star` hold to solver
/// tolerance.
#[derive(Clone, Debug)]
pub struct MinimaxSolution {
    /// Optimal worst-case SINR (also the optimal value of the minimax
    /// program).
    pub lambda_star: f64,
    /// Worst-case signal factor.
    pub q_star: ComplexMatrix,
    /// Worst-case interference-plus-noise covariance.
    pub r1_star: HermitianMatrix,
    /// Globally optimal beamformer, normalized so `w^H R1* w = 1`.
    pub w_star: Vec<Complex64>,
    /// Interior-point iterations spent.
    pub iterations: usize,
    /// Primal residual at the returned iterate.
    pub primal_residual: f64,
    /// Dual residual at the returned iterate.
    pub dual_residual: f64,
    /// Relative objective gap at the returned iterate.
    pub gap: f64,
}

/// Assemble the conic program for the given uncertainty sets.
///
/// Variable layout (all real): `x = [lambda, vec(Q), hvec(R1)]` where
/// `vec` is the isometric vectorization of a complex `N x M` matrix
/// (`2NM` coordinates) and `hvec` the isometric vectorization of a
/// Hermitian matrix (`N^2` coordinates). Cone blocks are appended in this
/// order:
///
/// 1. two nonnegative rows `rho1 <= tr R1 <= rho2` when a trace interval
///    is present;
/// 2. the signal ball: a second-order cone `||vec(Q) - vec(Q̂)|| <= radius`
///    (Frobenius) or the PSD block `[[radius^2 I_N, Q - Q̂], [., I_M]]`
///    (spectral);
/// 3. the covariance ball: a second-order cone on `hvec(R1) - hvec(R̂)`
///    (Frobenius) or the PSD pair `radius*I ∓ (R1 - R̂) ⪰ 0` (spectral);
/// 4. the coupling PSD block `[[R1, Q], [Q^H, lambda*I_M]] ⪰ 0` of side
///    `2(N + M)` after real embedding;
/// 5. a PSD block `R1 ⪰ pd_floor * I` when the floor is positive.
///
/// `lambda >= 0` is implied by the coupling block, and `R1 ⪰ 0` by its
/// top-left corner, so neither is encoded separately.
pub fn build_minimax(signal: &SignalSetSpec, inc: &IncSetSpec) -> Result<ConicProblem> {
    let n = inc.center().dim();
    let m = signal.center().ncols();
    if signal.center().nrows() != n {
        return Err(Error::Dimension(format!(
            "signal center has {} rows but the covariance set has dimension {}",
            signal.center().nrows(),
            n
        )));
    }
    let nq = 2 * n * m;
    let nr = n * n;
    let nv = 1 + nq + nr;
    let qoff = 1;
    let roff = 1 + nq;

    let mut c = vec![0.0; nv];
    c[0] = 1.0;
    let mut cones: Vec<Cone> = Vec::new();
    let mut rows: Vec<(Vec<(usize, f64)>, f64)> = Vec::new();

    if let Some((lo, hi)) = inc.trace_interval() {
        let tvec = hvec_hermitian(&HermitianMatrix::identity(n));
        cones.push(Cone::Nonneg(2));
        rows.push((tvec.iter().enumerate().map(|(v, t)| (roff + v, -t)).collect(), -lo));
        rows.push((tvec.iter().enumerate().map(|(v, t)| (roff + v, *t)).collect(), hi));
    }

    match signal.norm() {
        MatrixNorm::Frobenius => {
            cones.push(Cone::Soc(1 + nq));
            rows.push((Vec::new(), signal.radius()));
            let qc = vec_isometric(signal.center());
            for (k, b) in qc.iter().enumerate() {
                rows.push((vec![(qoff + k, 1.0)], *b));
            }
        }
        MatrixNorm::Spectral => {
            // [[radius^2 I, Q - Q̂], [(Q - Q̂)^H, I]] ⪰ 0.
            let constant = block2(
                &HermitianMatrix::identity(n).scaled(signal.radius() * signal.radius()),
                &signal.center().scaled_re(-1.0),
                &HermitianMatrix::identity(m),
            );
            let b = svec_embed(&constant);
            cones.push(Cone::Psd(2 * (n + m)));
            let cols: Vec<Vec<f64>> = (0..nq)
                .map(|k| {
                    svec_embed(&block2(
                        &HermitianMatrix::zeros(n),
                        &signal_basis(n, m, k),
                        &HermitianMatrix::zeros(m),
                    ))
                })
                .collect();
            push_psd_rows(&mut rows, &b, |row| {
                (0..nq).filter_map(|k| nz(qoff + k, -cols[k][row])).collect()
            });
        }
    }

    let r_basis: Vec<Vec<f64>> = (0..nr).map(|v| svec_embed(&hermitian_basis(n, v))).collect();
    match inc.norm() {
        MatrixNorm::Frobenius => {
            cones.push(Cone::Soc(1 + nr));
            rows.push((Vec::new(), inc.radius()));
            let rc = hvec_hermitian(inc.center());
            for (v, b) in rc.iter().enumerate() {
                rows.push((vec![(roff + v, 1.0)], *b));
            }
        }
        MatrixNorm::Spectral => {
            // radius*I - (R1 - R̂) ⪰ 0 and radius*I + (R1 - R̂) ⪰ 0.
            let upper = svec_embed(&inc.center().add_scaled_identity(inc.radius()));
            let lower = svec_embed(&inc.center().scaled(-1.0).add_scaled_identity(inc.radius()));
            cones.push(Cone::Psd(2 * n));
            push_psd_rows(&mut rows, &upper, |row| {
                (0..nr).filter_map(|v| nz(roff + v, r_basis[v][row])).collect()
            });
            cones.push(Cone::Psd(2 * n));
            push_psd_rows(&mut rows, &lower, |row| {
                (0..nr).filter_map(|v| nz(roff + v, -r_basis[v][row])).collect()
            });
        }
    }

    // Coupling block [[R1, Q], [Q^H, lambda*I]] ⪰ 0.
    {
        let side = 2 * (n + m);
        cones.push(Cone::Psd(side));
        let lam_col = svec_embed(&block2(
            &HermitianMatrix::zeros(n),
            &ComplexMatrix::zeros(n, m),
            &HermitianMatrix::identity(m),
        ));
        let q_cols: Vec<Vec<f64>> = (0..nq)
            .map(|k| {
                svec_embed(&block2(
                    &HermitianMatrix::zeros(n),
                    &signal_basis(n, m, k),
                    &HermitianMatrix::zeros(m),
                ))
            })
            .collect();
        let r_cols: Vec<Vec<f64>> = (0..nr)
            .map(|v| {
                svec_embed(&block2(
                    &hermitian_basis(n, v),
                    &ComplexMatrix::zeros(n, m),
                    &HermitianMatrix::zeros(m),
                ))
            })
            .collect();
        let zeros_b = vec![0.0; lam_col.len()];
        push_psd_rows(&mut rows, &zeros_b, |row| {
            let mut coeffs = Vec::new();
            if let Some(e) = nz(0, -lam_col[row]) {
                coeffs.push(e);
            }
            coeffs.extend((0..nq).filter_map(|k| nz(qoff + k, -q_cols[k][row])));
            coeffs.extend((0..nr).filter_map(|v| nz(roff + v, -r_cols[v][row])));
            coeffs
        });
    }

    if inc.pd_floor() > 0.0 {
        let shift = svec_embed(&HermitianMatrix::identity(n).scaled(-inc.pd_floor()));
        cones.push(Cone::Psd(2 * n));
        push_psd_rows(&mut rows, &shift, |row| {
            (0..nr).filter_map(|v| nz(roff + v, -r_basis[v][row])).collect()
        });
    }

    Ok(assemble(nv, c, rows, cones))
}

/// Solve the minimax program and extract the optimal beamformer.
///
/// Internally the data are rescaled so the covariance center has unit
/// average eigenvalue (the optimal value is invariant under this joint
/// scaling); the returned matrices are mapped back to the original scale.
pub fn solve_minimax(
    signal: &SignalSetSpec,
    inc: &IncSetSpec,
    settings: &SolverSettings,
) -> Result<MinimaxSolution> {
    let n = inc.center().dim();
    let m = signal.center().ncols();
    let nu = {
        let mean = inc.center().trace() / n as f64;
        if mean > 0.0 {
            mean
        } else {
            1.0
        }
    };
    let root = nu.sqrt();
    let scaled_signal = SignalSetSpec::new(
        signal.center().scaled_re(1.0 / root),
        signal.norm(),
        signal.radius() / root,
    )?;
    let scaled_inc = IncSetSpec::new(
        inc.center().scaled(1.0 / nu),
        inc.norm(),
        inc.radius() / nu,
        inc.trace_interval().map(|(lo, hi)| (lo / nu, hi / nu)),
        inc.pd_floor() / nu,
    )?;
    let prob = build_minimax(&scaled_signal, &scaled_inc)?;
    let sol = solve(&prob, settings)?;
    match sol.status {
        SolveStatus::Optimal => {}
        SolveStatus::Infeasible => {
            return Err(Error::InfeasibleSet(
                "the covariance trace interval admits no member of the ball".to_string(),
            ))
        }
        status => return Err(solver_error(status, &sol)),
    }

    let nq = 2 * n * m;
    let lambda_star = sol.x[0];
    let q_star = unvec_isometric(&sol.x[1..1 + nq], n, m).scaled_re(root);
    let r1_star = unhvec_hermitian(&sol.x[1 + nq..1 + nq + n * n], n).scaled(nu);
    let w_star = tie_broken_beamformer(signal.center(), &q_star, &r1_star)?;
    Ok(MinimaxSolution {
        lambda_star,
        q_star,
        r1_star,
        w_star,
        iterations: sol.iterations,
        primal_residual: sol.primal_residual,
        dual_residual: sol.dual_residual,
        gap: sol.gap,
    })
}

/// Relative width below the top eigenvalue within which eigenvalues are
/// treated as numerically coincident during beamformer extraction. The
/// interior-point solver resolves the optimizer only to about the square
/// root of its duality-gap tolerance in the eigenvalues of the whitened
/// factor, so splits below this width cannot be distinguished from an
/// exactly multiple top eigenvalue; conversely, tie-breaking across a
/// genuine split this small concedes at most a 0.1% drop in the
/// worst-case ratio the returned beamformer attains.
const EXTRACTION_TIE_REL: f64 = 1e-3;

/// Beamformer extraction with a deterministic tie policy.
///
/// When the top eigenvalue of `R1^{-1/2} Q Q^H R1^{-1/2}` is numerically
/// multiple, every unit-power direction in its top eigenspace attains the
/// same worst-case ratio against `(Q, R1)`, and the basic eigenvector
/// route returns a solver-arbitrary member of that space. Among those ties
/// this picks the direction with the largest nominal signal alignment
/// `||Q̂^H w||² / ||w||²` — a scale-free criterion, so members whose unit
/// worst-case power requires a large beamformer norm cannot win through
/// sheer amplification — via a `k x k` generalized eigenproblem; with a
/// simple top eigenvalue it coincides with [`extract_beamformer`].
fn tie_broken_beamformer(
    nominal: &ComplexMatrix,
    q_star: &ComplexMatrix,
    r1_star: &HermitianMatrix,
) -> Result<Vec<Complex64>> {
    let rinv_half = inv_sqrt_psd(r1_star, None)?;
    let b = rinv_half.as_matrix() * q_star;
    let gram = HermitianMatrix::symmetrize(&b * &b.adjoint());
    let eig = eig_hermitian(&gram);
    let lmax = eig.eigenvalues[0];
    let k = eig
        .eigenvalues
        .iter()
        .take_while(|&&l| l >= lmax * (1.0 - EXTRACTION_TIE_REL))
        .count()
        .max(1);
    if k == 1 {
        let u1 = eig.eigenvectors.col(0);
        return Ok(rinv_half.as_matrix().matvec(&u1));
    }
    // Columns of V = R1^{-1/2} U_k are R1-orthonormal, so coefficient
    // vectors c with ||c|| = 1 parametrize beamformers w = V c with unit
    // worst-case power; the alignment ratio becomes the generalized
    // Rayleigh quotient of (Q̂^H V)^H (Q̂^H V) against the Gram matrix V^H V.
    let n = r1_star.dim();
    let mut v = ComplexMatrix::zeros(n, k);
    for j in 0..k {
        let vj = rinv_half.as_matrix().matvec(&eig.eigenvectors.col(j));
        for i in 0..n {
            v[(i, j)] = vj[i];
        }
    }
    let g = &nominal.adjoint() * &v;
    let aligned = HermitianMatrix::symmetrize(&g.adjoint() * &g);
    let v_gram = HermitianMatrix::symmetrize(&v.adjoint() * &v);
    let gram_inv_half = inv_sqrt_psd(&v_gram, None)?;
    let whitened = HermitianMatrix::symmetrize(
        &(gram_inv_half.as_matrix() * aligned.as_matrix()) * gram_inv_half.as_matrix(),
    );
    let (_, z) = principal_pair(&whitened);
    let c = gram_inv_half.as_matrix().matvec(&z);
    let cn = vnorm(&c);
    let c: Vec<Complex64> = c.iter().map(|x| x / cn).collect();
    Ok(v.matvec(&c))
}

/// Recover the optimal beamformer from the worst-case pair:
/// `w = R1^{-1/2} u1` with `u1` a principal eigenvector of
/// `R1^{-1/2} Q Q^H R1^{-1/2}`. Fails with a positive-definiteness error
/// (naming the `pd_floor` remedy) when `R1` is singular to tolerance.
pub fn extract_beamformer(
    q_star: &ComplexMatrix,
    r1_star: &HermitianMatrix,
) -> Result<Vec<Complex64>> {
    if q_star.nrows() != r1_star.dim() {
        return Err(Error::Dimension(format!(
            "signal factor has {} rows but the covariance has dimension {}",
            q_star.nrows(),
            r1_star.dim()
        )));
    }
    let rinv_half = inv_sqrt_psd(r1_star, None)?;
    let b = rinv_half.as_matrix() * q_star;
    let gram = HermitianMatrix::symmetrize(&b * &b.adjoint());
    let eig = eig_hermitian(&gram);
    let u1 = eig.eigenvectors.col(0);
    Ok(rinv_half.as_matrix().matvec(&u1))
}

/// The SINR attained by beamformer `w` against the pair `(Q, R1)`:
/// `w^H Q Q^H w / w^H R1 w`. Scale-invariant in `w`.
pub fn sinr(w: &[Complex64], q: &ComplexMatrix, r1: &HermitianMatrix) -> Result<f64> {
    if w.len() != q.nrows() || q.nrows() != r1.dim() {
        return Err(Error::Dimension(format!(
            "beamformer length {}, signal factor rows {}, covariance dimension {} must agree",
            w.len(),
            q.nrows(),
            r1.dim()
        )));
    }
    if vnorm(w) == 0.0 {
        return Err(Error::InvalidInput("beamformer must be nonzero".to_string()));
    }
    let den = r1.quadratic_form(w);
    if !(den > 0.0) {
        return Err(Error::InvalidInput(format!(
            "SINR denominator w^H R1 w = {den:.3e} is not positive; R1 must be positive \
             definite on the beamformer"
        )));
    }
    let qw = q.adjoint().matvec(w);
    let num = vnorm(&qw);
    Ok(num * num / den)
}

/// Rank-one specialization (`M = 1`). Solves the same convex program and
/// recovers the beamformer through the matched-filter form
/// `w = R1*^{-1} a* / ||R1*^{-1/2} a*||`, which coincides with the
/// eigenvector route when the signal factor is a single column.
pub fn solve_rank_one(
    a_set: &SignalSetSpec,
    inc: &IncSetSpec,
    settings: &SolverSettings,
) -> Result<MinimaxSolution> {
    if a_set.center().ncols() != 1 {
        return Err(Error::InvalidInput(format!(
            "rank-one route requires a single-column signal center, got {} columns",
            a_set.center().ncols()
        )));
    }
    let mut solution = solve_minimax(a_set, inc, settings)?;
    let a_star = solution.q_star.col(0);
    let rinv_half = inv_sqrt_psd(&solution.r1_star, None)?;
    let half = rinv_half.as_matrix().matvec(&a_star);
    let denom = vnorm(&half);
    if denom == 0.0 {
        return Err(Error::InvalidInput(
            "worst-case steering vector collapsed to zero".to_string(),
        ));
    }
    let w: Vec<Complex64> =
        rinv_half.as_matrix().matvec(&half).iter().map(|z| z / denom).collect();
    solution.w_star = w;
    Ok(solution)
}

/// Hermitian block matrix `[[t, a], [a^H, d]]`.
fn block2(t: &HermitianMatrix, a: &ComplexMatrix, d: &HermitianMatrix) -> HermitianMatrix {
    let n = t.dim();
    let m = d.dim();
    debug_assert_eq!(a.nrows(), n);
    debug_assert_eq!(a.ncols(), m);
    HermitianMatrix::symmetrize(ComplexMatrix::from_fn(n + m, n + m, |i, j| {
        if i < n && j < n {
            t.get(i, j)
        } else if i < n {
            a[(i, j - n)]
        } else if j < n {
            a[(j, i - n)].conj()
        } else {
            d.get(i - n, j - n)
        }
    }))
}

/// The `k`-th element of the isometric basis of complex `n x m` matrices
/// (real units first, imaginary units second, column-major).
fn signal_basis(n: usize, m: usize, k: usize) -> ComplexMatrix {
    let nm = n * m;
    let (idx, val) = if k < nm {
        (k, Complex64::new(1.0, 0.0))
    } else {
        (k - nm, Complex64::new(0.0, 1.0))
    };
    let mut e = ComplexMatrix::zeros(n, m);
    e[(idx % n, idx / n)] = val;
    e
}

fn nz(col: usize, val: f64) -> Option<(usize, f64)> {
    (val != 0.0).then_some((col, val))
}

fn push_psd_rows<F: Fn(usize) -> Vec<(usize, f64)>>(
    rows: &mut Vec<(Vec<(usize, f64)>, f64)>,
    b: &[f64],
    coeffs: F,
) {
    for (row, bi) in b.iter().enumerate() {
        rows.push((coeffs(row), *bi));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cdot;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Eigenvalues of `R1^{-1/2} Q Q^H R1^{-1/2}`, descending.
    fn gram_eigenvalues(q: &ComplexMatrix, r1: &HermitianMatrix) -> Vec<f64> {
        let rinv = inv_sqrt_psd(r1, None).unwrap();
        let b = rinv.as_matrix() * q;
        eig_hermitian(&HermitianMatrix::symmetrize(&b * &b.adjoint())).eigenvalues
    }

    fn random_psd(rng: &mut ChaCha12Rng, n: usize, shift: f64) -> HermitianMatrix {
        let g = ComplexMatrix::from_fn(n, n, |_, _| {
            c64(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        });
        HermitianMatrix::symmetrize(&g * &g.adjoint()).add_scaled_identity(shift)
    }

    fn random_matrix(rng: &mut ChaCha12Rng, n: usize, m: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, m, |_, _| {
            c64(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        })
    }

    fn settings() -> SolverSettings {
        SolverSettings::default()
    }

    /// Independent oracle for singleton sets: eigenvalue route
    /// `lambda_1(R̂^{-1/2} Q̂ Q̂^H R̂^{-1/2})` computed without the conic
    /// solver.
    fn singleton_oracle(q: &ComplexMatrix, r: &HermitianMatrix) -> f64 {
        let rinv_half = inv_sqrt_psd(r, None).unwrap();
        let b = rinv_half.as_matrix() * q;
        let gram = HermitianMatrix::symmetrize(&b * &b.adjoint());
        eig_hermitian(&gram).eigenvalues[0]
    }

    #[test]
    fn build_dimension_bookkeeping() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let (n, m) = (2usize, 1usize);
        let q = random_matrix(&mut rng, n, m);
        let r = random_psd(&mut rng, n, 0.5);
        let signal =
            SignalSetSpec::new(q.clone(), MatrixNorm::Frobenius, 0.3 * q.frobenius_norm())
                .unwrap();
        let inc = IncSetSpec::ball(r.clone(), MatrixNorm::Frobenius, 0.4).unwrap();
        let prob = build_minimax(&signal, &inc).unwrap();
        assert_eq!(prob.num_vars(), 1 + 2 * n * m + n * n);
        assert_eq!(
            prob.cones,
            vec![Cone::Soc(1 + 2 * n * m), Cone::Soc(1 + n * n), Cone::Psd(2 * (n + m))]
        );
        prob.validate().unwrap();

        // Spectral/spectral: four PSD blocks, no SOC.
        let signal_s =
            SignalSetSpec::new(q.clone(), MatrixNorm::Spectral, 0.2 * q.frobenius_norm())
                .unwrap();
        let inc_s = IncSetSpec::ball(r.clone(), MatrixNorm::Spectral, 0.4).unwrap();
        let prob_s = build_minimax(&signal_s, &inc_s).unwrap();
        assert_eq!(
            prob_s.cones,
            vec![
                Cone::Psd(2 * (n + m)),
                Cone::Psd(2 * n),
                Cone::Psd(2 * n),
                Cone::Psd(2 * (n + m)),
            ]
        );
        prob_s.validate().unwrap();

        // Trace interval adds exactly one block of two nonnegative rows.
        let tr = r.trace();
        let inc_t = IncSetSpec::new(
            r.clone(),
            MatrixNorm::Frobenius,
            0.4,
            Some((0.5 * tr, 1.5 * tr)),
            0.0,
        )
        .unwrap();
        let prob_t = build_minimax(&signal, &inc_t).unwrap();
        assert_eq!(prob_t.cones[0], Cone::Nonneg(2));
        assert_eq!(prob_t.num_rows(), prob.num_rows() + 2);

        // Positive floor appends one more PSD block.
        let inc_f = IncSetSpec::new(r.clone(), MatrixNorm::Frobenius, 0.4, None, 1e-3).unwrap();
        let prob_f = build_minimax(&signal, &inc_f).unwrap();
        assert_eq!(prob_f.cones.last(), Some(&Cone::Psd(2 * n)));
        assert_eq!(prob_f.cones.len(), prob.cones.len() + 1);

        let mismatched = IncSetSpec::ball(HermitianMatrix::identity(3), MatrixNorm::Frobenius, 0.1)
            .unwrap();
        assert!(matches!(build_minimax(&signal, &mismatched), Err(Error::Dimension(_))));
    }

    #[test]
    fn singleton_matches_eigen_oracle() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for (n, m) in [(3usize, 1usize), (4, 2)] {
            let q = random_matrix(&mut rng, n, m);
            let r = random_psd(&mut rng, n, 0.6);
            let signal = SignalSetSpec::new(q.clone(), MatrixNorm::Frobenius, 0.0).unwrap();
            let inc = IncSetSpec::ball(r.clone(), MatrixNorm::Frobenius, 0.0).unwrap();
            let sol = solve_minimax(&signal, &inc, &settings()).unwrap();
            let oracle = singleton_oracle(&q, &r);
            assert!(
                (sol.lambda_star - oracle).abs() <= 1e-6 * oracle.max(1.0),
                "n={n} m={m}: {} vs oracle {}",
                sol.lambda_star,
                oracle
            );
        }
    }

    #[test]
    fn rank_one_singleton_closed_form() {
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        let n = 4;
        let a = random_matrix(&mut rng, n, 1);
        let r = random_psd(&mut rng, n, 0.5);
        let signal = SignalSetSpec::new(a.clone(), MatrixNorm::Frobenius, 0.0).unwrap();
        let inc = IncSetSpec::ball(r.clone(), MatrixNorm::Frobenius, 0.0).unwrap();
        let sol = solve_rank_one(&signal, &inc, &settings()).unwrap();
        // a^H R^{-1} a through the inverse square root, independent of the
        // conic path.
        let rinv_half = inv_sqrt_psd(&r, None).unwrap();
        let half = rinv_half.as_matrix().matvec(&a.col(0));
        let oracle = vnorm(&half).powi(2);
        assert!(
            (sol.lambda_star - oracle).abs() <= 1e-6 * oracle.max(1.0),
            "{} vs {}",
            sol.lambda_star,
            oracle
        );

        // Identity covariance, ||a||^2 = n: lambda* = n.
        let unit = ComplexMatrix::from_fn(n, 1, |i, _| {
            Complex64::from_polar(1.0, 0.7 * i as f64)
        });
        let sig_unit = SignalSetSpec::new(unit, MatrixNorm::Frobenius, 0.0).unwrap();
        let inc_unit =
            IncSetSpec::ball(HermitianMatrix::identity(n), MatrixNorm::Frobenius, 0.0).unwrap();
        let sol_unit = solve_rank_one(&sig_unit, &inc_unit, &settings()).unwrap();
        assert!((sol_unit.lambda_star - n as f64).abs() <= 1e-6 * n as f64);
    }

    #[test]
    fn extraction_identities() {
        // R1 = I, Q = e1: w = e1 up to phase.
        let q = ComplexMatrix::from_fn(2, 1, |i, _| {
            if i == 0 {
                c64(1.0, 0.0)
            } else {
                c64(0.0, 0.0)
            }
        });
        let w = extract_beamformer(&q, &HermitianMatrix::identity(2)).unwrap();
        assert!((w[0].norm() - 1.0).abs() < 1e-12 && w[1].norm() < 1e-12);
        assert!((sinr(&w, &q, &HermitianMatrix::identity(2)).unwrap() - 1.0).abs() < 1e-12);

        // R1 = diag(1, 4), Q = e2: lambda = 1/4, w = e2 / 2.
        let q2 = ComplexMatrix::from_fn(2, 1, |i, _| {
            if i == 1 {
                c64(1.0, 0.0)
            } else {
                c64(0.0, 0.0)
            }
        });
        let mut d = ComplexMatrix::zeros(2, 2);
        d[(0, 0)] = c64(1.0, 0.0);
        d[(1, 1)] = c64(4.0, 0.0);
        let r = HermitianMatrix::symmetrize(d);
        let w2 = extract_beamformer(&q2, &r).unwrap();
        assert!(w2[0].norm() < 1e-12 && (w2[1].norm() - 0.5).abs() < 1e-12);
        assert!((sinr(&w2, &q2, &r).unwrap() - 0.25).abs() < 1e-12);

        // Singular covariance: extraction reports the floor remedy.
        let singular = HermitianMatrix::outer(&[c64(1.0, 0.0), c64(0.0, 0.0)]);
        assert!(matches!(
            extract_beamformer(&q, &singular),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn solved_instance_satisfies_identity_chain() {
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        let (n, m) = (4usize, 2usize);
        let q = random_matrix(&mut rng, n, m);
        let r = random_psd(&mut rng, n, 0.8);
        let signal =
            SignalSetSpec::new(q.clone(), MatrixNorm::Frobenius, 0.3 * q.frobenius_norm())
                .unwrap();
        let inc =
            IncSetSpec::ball(r.clone(), MatrixNorm::Frobenius, 0.2 * r.frobenius_norm()).unwrap();
        let sol = solve_minimax(&signal, &inc, &settings()).unwrap();

        // w*^H R1* w* = 1.
        let norm_r = sol.r1_star.quadratic_form(&sol.w_star);
        assert!((norm_r - 1.0).abs() <= 1e-7, "normalization {norm_r}");
        // w*^H Q* Q*^H w* = lambda*.
        let qw = sol.q_star.adjoint().matvec(&sol.w_star);
        let power = vnorm(&qw).powi(2);
        assert!(
            (power - sol.lambda_star).abs() <= 1e-6 * (1.0 + sol.lambda_star),
            "{power} vs {}",
            sol.lambda_star
        );
        // S(w*, Q*, R1*) = lambda*.
        let s = sinr(&sol.w_star, &sol.q_star, &sol.r1_star).unwrap();
        assert!((s - sol.lambda_star).abs() <= 1e-6 * (1.0 + sol.lambda_star));
        // lambda* equals the eigenvalue of the worst-case pair.
        let oracle = singleton_oracle(&sol.q_star, &sol.r1_star);
        assert!((oracle - sol.lambda_star).abs() <= 1e-6 * (1.0 + sol.lambda_star));
        assert!(sol.lambda_star >= 0.0);

        // The worst-case pair stays inside its sets.
        assert!(crate::uncertainty::contains_signal(&signal, &sol.q_star).unwrap());
        assert!(crate::uncertainty::contains_inc(&inc, &sol.r1_star).unwrap());
    }

    #[test]
    fn frobenius_and_spectral_balls_agree() {
        // With equal radii, no trace interval, and the covariance ball
        // inside the positive-definite cone, the two ball shapes yield the
        // same optimal value and equally good beamformers — provided the
        // top eigenvalue of R1*^{-1/2} Q* Q*^H R1*^{-1/2} stays simple at
        // the Frobenius optimum. The radii below are kept small enough for
        // that to hold on every trial, and each trial asserts the gap; see
        // `norm_gap_under_eigenvalue_coalescence` for what happens when the
        // eigenvalues collide.
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        for trial in 0..3 {
            let (n, m) = (3usize, 2usize);
            let q = random_matrix(&mut rng, n, m);
            let r = random_psd(&mut rng, n, 0.7);
            let min_eig = r.min_eigenvalue();
            let eta = 0.08 * q.frobenius_norm();
            let gamma = (0.08 * r.frobenius_norm()).min(0.5 * min_eig);
            let sol_f = solve_minimax(
                &SignalSetSpec::new(q.clone(), MatrixNorm::Frobenius, eta).unwrap(),
                &IncSetSpec::ball(r.clone(), MatrixNorm::Frobenius, gamma).unwrap(),
                &settings(),
            )
            .unwrap();
            let sol_s = solve_minimax(
                &SignalSetSpec::new(q.clone(), MatrixNorm::Spectral, eta).unwrap(),
                &IncSetSpec::ball(r.clone(), MatrixNorm::Spectral, gamma).unwrap(),
                &settings(),
            )
            .unwrap();

            let evals = gram_eigenvalues(&sol_f.q_star, &sol_f.r1_star);
            assert!(
                evals[0] - evals[1] > 1e-3 * evals[0],
                "trial {trial}: instance violates the simple-eigenvalue hypothesis: {evals:?}"
            );

            let scale = 1.0 + sol_f.lambda_star.abs();
            assert!(
                (sol_f.lambda_star - sol_s.lambda_star).abs() <= 1e-5 * scale,
                "trial {trial}: {} vs {}",
                sol_f.lambda_star,
                sol_s.lambda_star
            );

            // Both beamformers are optimal for the shared max-min problem:
            // their worst-case SINRs agree.
            let wc = |w: &[Complex64]| {
                let sig = crate::uncertainty::worst_case_signal_power(
                    &SignalSetSpec::new(q.clone(), MatrixNorm::Frobenius, eta).unwrap(),
                    w,
                )
                .unwrap();
                let inc_p = crate::uncertainty::worst_case_inc_power(
                    &IncSetSpec::ball(r.clone(), MatrixNorm::Frobenius, gamma).unwrap(),
                    w,
                )
                .unwrap();
                sig / inc_p
            };
            let wc_f = wc(&sol_f.w_star);
            let wc_s = wc(&sol_s.w_star);
            assert!(
                (wc_f - wc_s).abs() <= 1e-5 * (1.0 + wc_f.abs()),
                "trial {trial}: worst-case SINR {wc_f} vs {wc_s}"
            );

            // The worst-case factor stays inside the spectral ball up to
            // solver feasibility slack (regression check on the ball block
            // orientation, which would misplace Q* by O(‖Q̂‖) if flipped).
            let overshoot = (&sol_s.q_star - &q).spectral_norm() - eta;
            assert!(
                overshoot <= 1e-6 * (1.0 + eta),
                "trial {trial}: spectral overshoot {overshoot:.3e}"
            );
        }
    }

    #[test]
    fn norm_gap_under_eigenvalue_coalescence() {
        // When the ball radii are large enough that minimizing the top
        // eigenvalue drives its two leading eigenvalues together, the
        // Frobenius-ball optimum is no longer a saddle point: the optimal
        // value of the min-max program exceeds the max-min value that any
        // beamformer can guarantee. The spectral ball (a superset at equal
        // radius) still reaches the max-min floor on this instance. This
        // pins the phenomenon so the agreement test's small radii are seen
        // to be load-bearing, not cosmetic.
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        let (n, m) = (3usize, 2usize);
        // Discard one draw so the data matches the second trial shape of
        // the historical instance that exposed the gap.
        let _ = random_matrix(&mut rng, n, m);
        let _ = random_psd(&mut rng, n, 0.7);
        let q = random_matrix(&mut rng, n, m);
        let r = random_psd(&mut rng, n, 0.7);
        let eta = 0.25 * q.frobenius_norm();
        let gamma = (0.2 * r.frobenius_norm()).min(0.8 * r.min_eigenvalue());

        let sol_f = solve_minimax(
            &SignalSetSpec::new(q.clone(), MatrixNorm::Frobenius, eta).unwrap(),
            &IncSetSpec::ball(r.clone(), MatrixNorm::Frobenius, gamma).unwrap(),
            &settings(),
        )
        .unwrap();
        let sol_s = solve_minimax(
            &SignalSetSpec::new(q.clone(), MatrixNorm::Spectral, eta).unwrap(),
            &IncSetSpec::ball(r.clone(), MatrixNorm::Spectral, gamma).unwrap(),
            &settings(),
        )
        .unwrap();

        // The Frobenius optimum has a coalesced top eigenvalue...
        let evals_f = gram_eigenvalues(&sol_f.q_star, &sol_f.r1_star);
        assert!(
            evals_f[0] - evals_f[1] <= 1e-6 * evals_f[0],
            "expected coalescence, got {evals_f:?}"
        );
        // ...and a strictly larger optimal value than the spectral build.
        assert!(
            sol_f.lambda_star > sol_s.lambda_star + 1e-3,
            "{} vs {}",
            sol_f.lambda_star,
            sol_s.lambda_star
        );

        // The worst-case SINR of any beamformer is the same function under
        // both ball shapes (the inner extremizers are rank-one, where the
        // two norms agree), so it never exceeds the spectral optimum even
        // for the Frobenius-optimal beamformer.
        let wc = |w: &[Complex64]| {
            let sig = crate::uncertainty::worst_case_signal_power(
                &SignalSetSpec::new(q.clone(), MatrixNorm::Frobenius, eta).unwrap(),
                w,
            )
            .unwrap();
            let inc_p = crate::uncertainty::worst_case_inc_power(
                &IncSetSpec::ball(r.clone(), MatrixNorm::Frobenius, gamma).unwrap(),
                w,
            )
            .unwrap();
            sig / inc_p
        };
        let wc_s = wc(&sol_s.w_star);
        let wc_f = wc(&sol_f.w_star);
        // The spectral solution is self-certifying: its beamformer attains
        // its optimal value, so min-max = max-min there.
        assert!(
            (wc_s - sol_s.lambda_star).abs() <= 1e-6 * (1.0 + sol_s.lambda_star),
            "{wc_s} vs {}",
            sol_s.lambda_star
        );
        // Guaranteed-SINR ranking: no beamformer beats the max-min value.
        assert!(wc_f <= sol_s.lambda_star + 1e-6);
        // And each build's own value upper-bounds what its beamformer
        // guarantees (weak duality).
        assert!(wc_f <= sol_f.lambda_star + 1e-6);
        assert!(wc_s <= sol_s.lambda_star + 1e-6);
    }

    #[test]
    fn lambda_monotone_in_radii() {
        let mut rng = ChaCha12Rng::seed_from_u64(19);
        let (n, m) = (3usize, 2usize);
        let q = random_matrix(&mut rng, n, m);
        let r = random_psd(&mut rng, n, 0.6);
        let qn = q.frobenius_norm();
        let mut last = f64::INFINITY;
        for eta_frac in [0.0, 0.2, 0.5] {
            let sol = solve_minimax(
                &SignalSetSpec::new(q.clone(), MatrixNorm::Frobenius, eta_frac * qn).unwrap(),
                &IncSetSpec::ball(r.clone(), MatrixNorm::Frobenius, 0.3).unwrap(),
                &settings(),
            )
            .unwrap();
            assert!(
                sol.lambda_star <= last + 1e-7,
                "eta fraction {eta_frac}: {} > {last}",
                sol.lambda_star
            );
            last = sol.lambda_star;
        }

        // Tightening the trace interval can only raise the optimum.
        let tr = r.trace();
        let ball = solve_minimax(
            &SignalSetSpec::new(q.clone(), MatrixNorm::Frobenius, 0.2 * qn).unwrap(),
            &IncSetSpec::ball(r.clone(), MatrixNorm::Frobenius, 0.3).unwrap(),
            &settings(),
        )
        .unwrap();
        let tight = solve_minimax(
            &SignalSetSpec::new(q.clone(), MatrixNorm::Frobenius, 0.2 * qn).unwrap(),
            &IncSetSpec::new(
                r.clone(),
                MatrixNorm::Frobenius,
                0.3,
                Some((0.95 * tr, 1.02 * tr)),
                0.0,
            )
            .unwrap(),
            &settings(),
        )
        .unwrap();
        assert!(tight.lambda_star >= ball.lambda_star - 1e-7);
    }

    #[test]
    fn rank_one_route_matches_general_route() {
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        let n = 4;
        let a = random_matrix(&mut rng, n, 1);
        let r = random_psd(&mut rng, n, 0.5);
        let signal =
            SignalSetSpec::new(a.clone(), MatrixNorm::Frobenius, 0.3 * a.frobenius_norm())
                .unwrap();
        let inc =
            IncSetSpec::ball(r.clone(), MatrixNorm::Frobenius, 0.2 * r.frobenius_norm()).unwrap();
        let general = solve_minimax(&signal, &inc, &settings()).unwrap();
        let rank_one = solve_rank_one(&signal, &inc, &settings()).unwrap();
        assert!(
            (general.lambda_star - rank_one.lambda_star).abs()
                <= 1e-6 * (1.0 + general.lambda_star)
        );
        // Same beamformer up to a unit phase.
        let overlap = cdot(&general.w_star, &rank_one.w_star).norm();
        let denom = vnorm(&general.w_star) * vnorm(&rank_one.w_star);
        assert!((overlap / denom - 1.0).abs() <= 1e-5);

        let wide = SignalSetSpec::new(random_matrix(&mut rng, n, 2), MatrixNorm::Frobenius, 0.0)
            .unwrap();
        assert!(matches!(
            solve_rank_one(&wide, &inc, &settings()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn sinr_scale_invariance_and_errors() {
        let mut rng = ChaCha12Rng::seed_from_u64(25);
        let q = random_matrix(&mut rng, 3, 2);
        let r = random_psd(&mut rng, 3, 0.5);
        let w: Vec<Complex64> =
            (0..3).map(|_| c64(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect();
        let base = sinr(&w, &q, &r).unwrap();
        let scaled: Vec<Complex64> = w.iter().map(|z| z * c64(-2.5, 1.5)).collect();
        let other = sinr(&scaled, &q, &r).unwrap();
        assert!((base - other).abs() <= 1e-12 * (1.0 + base));
        assert!(base >= 0.0);

        let zero = vec![c64(0.0, 0.0); 3];
        assert!(matches!(sinr(&zero, &q, &r), Err(Error::InvalidInput(_))));
    }
}
