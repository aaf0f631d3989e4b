//! Convex, closed uncertainty sets for the signal cross-covariance factor
//! `Q` and the interference-plus-noise covariance `R1`, together with
//! membership tests and the worst-case powers the robust reformulations
//! rely on.
//!
//! Two evaluation routes exist for the trace-constrained worst-case
//! interference power and are deliberately kept independent: the primal
//! route ([`worst_case_inc_power`]) maximizes `w^H R1 w` over the set
//! directly, while the dual route ([`dual_inc_power`]) solves the Lagrangian
//! dual and returns a checkable [`DualCertificate`]. Agreement between the
//! two is a strong-duality test, so neither is implemented in terms of the
//! other.

use num_complex::Complex64;

use crate::conic::{solve, Cone, ConicProblem, SolveStatus, SolverSettings};
use crate::linalg::{
    embed_hermitian, hvec_hermitian, svec, unhvec_hermitian, vnorm, ComplexMatrix,
    HermitianMatrix, RealMatrix,
};
use crate::{Error, Result};

/// Absolute tolerance for all membership tests. Quantities are O(1) once
/// the harness normalizes the noise power to 1, so an absolute tolerance
/// is appropriate.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Matrix norm selecting the shape of an uncertainty ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixNorm {
    /// `||A||_F = sqrt(sum |a_ij|^2)`.
    Frobenius,
    /// `||A||_2 = sigma_max(A)`.
    Spectral,
}

/// Norm ball around a nominal signal factor `Q̂` (`N x M`):
/// `{ Q : ||Q - Q̂|| <= radius }` in the declared norm.
///
/// The radius must satisfy `radius < ||Q̂||_F`, which excludes the zero
/// matrix from the Frobenius ball and rules out the degenerate problem
/// whose optimal worst-case power is identically zero.
#[derive(Clone, Debug)]
pub struct SignalSetSpec {
    center: ComplexMatrix,
    norm: MatrixNorm,
    radius: f64,
}

impl SignalSetSpec {
    pub fn new(center: ComplexMatrix, norm: MatrixNorm, radius: f64) -> Result<Self> {
        if !radius.is_finite() || radius < 0.0 {
            return Err(Error::InvalidInput(format!(
                "signal set radius must be finite and nonnegative, got {radius}"
            )));
        }
        let center_norm = center.frobenius_norm();
        if radius >= center_norm {
            return Err(Error::InvalidInput(format!(
                "signal set radius {radius} must be smaller than the Frobenius norm \
                 {center_norm:.6e} of the center (the ball must exclude the zero matrix)"
            )));
        }
        Ok(Self { center, norm, radius })
    }

    pub fn center(&self) -> &ComplexMatrix {
        &self.center
    }

    pub fn norm(&self) -> MatrixNorm {
        self.norm
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// Uncertainty set for the interference-plus-noise covariance `R1`:
/// a norm ball `||R1 - R̂|| <= radius` intersected with the PSD cone
/// (optionally shifted to `R1 ⪰ pd_floor · I`) and, when present, the
/// trace interval `rho1 <= tr R1 <= rho2`.
#[derive(Clone, Debug)]
pub struct IncSetSpec {
    center: HermitianMatrix,
    norm: MatrixNorm,
    radius: f64,
    trace_interval: Option<(f64, f64)>,
    pd_floor: f64,
}

impl IncSetSpec {
    pub fn new(
        center: HermitianMatrix,
        norm: MatrixNorm,
        radius: f64,
        trace_interval: Option<(f64, f64)>,
        pd_floor: f64,
    ) -> Result<Self> {
        if !radius.is_finite() || radius < 0.0 {
            return Err(Error::InvalidInput(format!(
                "covariance set radius must be finite and nonnegative, got {radius}"
            )));
        }
        if !pd_floor.is_finite() || pd_floor < 0.0 {
            return Err(Error::InvalidInput(format!(
                "pd_floor must be finite and nonnegative, got {pd_floor}"
            )));
        }
        if let Some((lo, hi)) = trace_interval {
            if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi) {
                return Err(Error::InvalidInput(format!(
                    "trace interval must satisfy 0 <= rho1 <= rho2 with finite bounds, \
                     got [{lo}, {hi}]"
                )));
            }
        }
        let min_eig = center.min_eigenvalue();
        if min_eig < -MEMBERSHIP_TOL {
            return Err(Error::NotPositiveDefinite { min_eig, floor: 0.0 });
        }
        Ok(Self { center, norm, radius, trace_interval, pd_floor })
    }

    /// Ball-only set: no trace interval, no positive-definiteness floor.
    pub fn ball(center: HermitianMatrix, norm: MatrixNorm, radius: f64) -> Result<Self> {
        Self::new(center, norm, radius, None, 0.0)
    }

    pub fn center(&self) -> &HermitianMatrix {
        &self.center
    }

    pub fn norm(&self) -> MatrixNorm {
        self.norm
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn trace_interval(&self) -> Option<(f64, f64)> {
        self.trace_interval
    }

    pub fn pd_floor(&self) -> f64 {
        self.pd_floor
    }

    fn dim(&self) -> usize {
        self.center.dim()
    }
}

/// Feasible point of the dual of the trace-constrained worst-case
/// interference power problem.
///
/// For a Frobenius-ball set the dual is
/// `min sqrt(gamma)*||X||_F - tr(R̂ X) - rho1*x + rho2*y` subject to
/// `[[(y-x)I - X, w], [w^H, 1]] ⪰ 0`, `x, y >= 0` (`y_mat` absent);
/// for a spectral-ball set it is
/// `min sqrt(gamma)*tr(X+Y) + tr(R̂ (Y-X)) - rho1*x + rho2*y` subject to
/// `[[(y-x)I + Y - X, w], [w^H, 1]] ⪰ 0`, `x, y >= 0`, `X, Y ⪰ 0`.
#[derive(Clone, Debug)]
pub struct DualCertificate {
    /// Multiplier of the lower trace bound, `x >= 0`.
    pub x: f64,
    /// Multiplier of the upper trace bound, `y >= 0`.
    pub y: f64,
    /// Hermitian dual matrix `X`.
    pub x_mat: HermitianMatrix,
    /// Hermitian dual matrix `Y`; present only for the spectral-norm dual.
    pub y_mat: Option<HermitianMatrix>,
}

impl DualCertificate {
    /// Dual objective value under `spec` (requires a trace interval).
    pub fn objective(&self, spec: &IncSetSpec) -> Result<f64> {
        let (rho1, rho2) = spec.trace_interval.ok_or_else(|| {
            Error::InvalidInput(
                "dual certificate objective requires a trace interval".to_string(),
            )
        })?;
        match spec.norm {
            MatrixNorm::Frobenius => Ok(spec.radius * self.x_mat.frobenius_norm()
                - herm_inner(&spec.center, &self.x_mat)
                - rho1 * self.x
                + rho2 * self.y),
            MatrixNorm::Spectral => {
                let y_mat = self.y_mat.as_ref().ok_or_else(|| {
                    Error::InvalidInput(
                        "spectral dual certificate is missing the Y matrix".to_string(),
                    )
                })?;
                Ok(spec.radius * (self.x_mat.trace() + y_mat.trace())
                    + herm_inner(&spec.center, &y_mat.sub(&self.x_mat))
                    - rho1 * self.x
                    + rho2 * self.y)
            }
        }
    }

    /// Largest constraint violation of the certificate for beamformer `w`:
    /// zero means exactly feasible. Checks the bordered LMI, the sign
    /// constraints on `x` and `y`, and (spectral case) the PSD constraints
    /// on `X` and `Y`.
    pub fn feasibility_residual(&self, spec: &IncSetSpec, w: &[Complex64]) -> Result<f64> {
        let n = spec.dim();
        if w.len() != n {
            return Err(Error::Dimension(format!(
                "beamformer length {} does not match set dimension {}",
                w.len(),
                n
            )));
        }
        if self.x_mat.dim() != n || self.y_mat.as_ref().is_some_and(|y| y.dim() != n) {
            return Err(Error::Dimension(
                "certificate matrices do not match the set dimension".to_string(),
            ));
        }
        let mut violation: f64 = (-self.x).max(-self.y).max(0.0);
        let top = match (spec.norm, &self.y_mat) {
            (MatrixNorm::Frobenius, _) => {
                HermitianMatrix::identity(n).scaled(self.y - self.x).sub(&self.x_mat)
            }
            (MatrixNorm::Spectral, Some(y_mat)) => HermitianMatrix::identity(n)
                .scaled(self.y - self.x)
                .add(&y_mat.sub(&self.x_mat)),
            (MatrixNorm::Spectral, None) => {
                return Err(Error::InvalidInput(
                    "spectral dual certificate is missing the Y matrix".to_string(),
                ))
            }
        };
        violation = violation.max(-bordered(&top, w, 1.0).min_eigenvalue());
        if spec.norm == MatrixNorm::Spectral {
            violation = violation.max(-self.x_mat.min_eigenvalue());
            if let Some(y_mat) = &self.y_mat {
                violation = violation.max(-y_mat.min_eigenvalue());
            }
        }
        Ok(violation.max(0.0))
    }
}

/// True iff `q` lies in the signal set (closed ball, absolute tolerance
/// [`MEMBERSHIP_TOL`]).
pub fn contains_signal(spec: &SignalSetSpec, q: &ComplexMatrix) -> Result<bool> {
    if q.nrows() != spec.center.nrows() || q.ncols() != spec.center.ncols() {
        return Err(Error::Dimension(format!(
            "candidate is {}x{} but the set center is {}x{}",
            q.nrows(),
            q.ncols(),
            spec.center.nrows(),
            spec.center.ncols()
        )));
    }
    let diff = q - &spec.center;
    let dist = match spec.norm {
        MatrixNorm::Frobenius => diff.frobenius_norm(),
        MatrixNorm::Spectral => diff.spectral_norm(),
    };
    Ok(dist <= spec.radius + MEMBERSHIP_TOL)
}

/// True iff `r` lies in the covariance set: inside the norm ball, above the
/// positive-semidefinite floor, and inside the trace interval when one is
/// declared (all with absolute tolerance [`MEMBERSHIP_TOL`]).
pub fn contains_inc(spec: &IncSetSpec, r: &HermitianMatrix) -> Result<bool> {
    if r.dim() != spec.dim() {
        return Err(Error::Dimension(format!(
            "candidate dimension {} does not match set dimension {}",
            r.dim(),
            spec.dim()
        )));
    }
    let diff = r.sub(&spec.center);
    let dist = match spec.norm {
        MatrixNorm::Frobenius => diff.frobenius_norm(),
        MatrixNorm::Spectral => diff.spectral_norm(),
    };
    if dist > spec.radius + MEMBERSHIP_TOL {
        return Ok(false);
    }
    if r.min_eigenvalue() < spec.pd_floor - MEMBERSHIP_TOL {
        return Ok(false);
    }
    if let Some((lo, hi)) = spec.trace_interval {
        let tr = r.trace();
        if tr < lo - MEMBERSHIP_TOL || tr > hi + MEMBERSHIP_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Worst-case (smallest) signal power over the set:
/// `(max{ ||Q̂^H w|| - radius*||w||, 0 })^2`. The closed form is the same
/// for the Frobenius and the spectral ball.
pub fn worst_case_signal_power(spec: &SignalSetSpec, w: &[Complex64]) -> Result<f64> {
    if w.len() != spec.center.nrows() {
        return Err(Error::Dimension(format!(
            "beamformer length {} does not match the {} rows of the set center",
            w.len(),
            spec.center.nrows()
        )));
    }
    let wn = vnorm(w);
    if wn == 0.0 {
        return Err(Error::InvalidInput("beamformer must be nonzero".to_string()));
    }
    let qw = spec.center.adjoint().matvec(w);
    let amp = (vnorm(&qw) - spec.radius * wn).max(0.0);
    Ok(amp * amp)
}

/// Worst-case (largest) interference-plus-noise power `max w^H R1 w` over
/// the set.
///
/// Without a trace interval or floor the maximizer is
/// `R̂ + radius * w w^H / ||w||^2`, giving the closed form
/// `w^H R̂ w + radius * ||w||^2` for both ball shapes. With a trace
/// interval (or a positive floor) the maximization is solved as a small
/// conic program; an empty set yields [`Error::InfeasibleSet`].
pub fn worst_case_inc_power(spec: &IncSetSpec, w: &[Complex64]) -> Result<f64> {
    let n = spec.dim();
    if w.len() != n {
        return Err(Error::Dimension(format!(
            "beamformer length {} does not match set dimension {}",
            w.len(),
            n
        )));
    }
    let wn = vnorm(w);
    if wn == 0.0 {
        return Err(Error::InvalidInput("beamformer must be nonzero".to_string()));
    }
    if spec.trace_interval.is_none() && spec.pd_floor == 0.0 {
        return Ok(spec.center.quadratic_form(w) + spec.radius * wn * wn);
    }

    // Maximize tr(R1 w w^H) over the set, in isometric coordinates
    // r = hvec(R1), with the beamformer normalized for conditioning
    // (the value is quadratically homogeneous in w).
    let wu: Vec<Complex64> = w.iter().map(|z| z / wn).collect();
    let nsq = n * n;
    let mut c = hvec_hermitian(&HermitianMatrix::outer(&wu));
    for v in c.iter_mut() {
        *v = -*v;
    }

    let mut cones = Vec::new();
    let mut rows = Vec::new(); // (A row builder, b entry) accumulated densely below
    let tvec = hvec_hermitian(&HermitianMatrix::identity(n));
    // Trace interval rows (always added; absent interval handled above or
    // replaced by an unbounded one when only the floor is active).
    let (lo, hi) = spec.trace_interval.unwrap_or((0.0, f64::INFINITY));
    let mut add_row = |coeffs: Vec<(usize, f64)>, b: f64| {
        rows.push((coeffs, b));
    };
    if hi.is_finite() {
        cones.push(Cone::Nonneg(2));
        // s = tr R1 - lo >= 0  =>  A row = -tvec, b = -lo
        add_row(tvec.iter().enumerate().map(|(v, t)| (v, -t)).collect(), -lo);
        // s = hi - tr R1 >= 0  =>  A row = +tvec, b = hi
        add_row(tvec.iter().enumerate().map(|(v, t)| (v, *t)).collect(), hi);
    } else {
        cones.push(Cone::Nonneg(1));
        add_row(tvec.iter().enumerate().map(|(v, t)| (v, -t)).collect(), -lo);
    }

    let basis_cols: Vec<Vec<f64>> = (0..nsq).map(|v| svec_embed(&hermitian_basis(n, v))).collect();
    match spec.norm {
        MatrixNorm::Frobenius => {
            // s = (radius, hvec(R̂) - r) in a second-order cone.
            cones.push(Cone::Soc(1 + nsq));
            add_row(Vec::new(), spec.radius);
            let rc = hvec_hermitian(&spec.center);
            for v in 0..nsq {
                add_row(vec![(v, 1.0)], rc[v]);
            }
        }
        MatrixNorm::Spectral => {
            // radius*I - (R1 - R̂) ⪰ 0 and radius*I + (R1 - R̂) ⪰ 0.
            let plus = svec_embed(&spec.center.add_scaled_identity(spec.radius));
            let minus = svec_embed(&spec.center.scaled(-1.0).add_scaled_identity(spec.radius));
            let len = plus.len();
            cones.push(Cone::Psd(2 * n));
            for k in 0..len {
                add_row(
                    (0..nsq).map(|v| (v, basis_cols[v][k])).collect(),
                    plus[k],
                );
            }
            cones.push(Cone::Psd(2 * n));
            for k in 0..len {
                add_row(
                    (0..nsq).map(|v| (v, -basis_cols[v][k])).collect(),
                    minus[k],
                );
            }
        }
    }

    // R1 - pd_floor*I ⪰ 0.
    let shift = svec_embed(&HermitianMatrix::identity(n).scaled(-spec.pd_floor));
    cones.push(Cone::Psd(2 * n));
    for (k, sh) in shift.iter().enumerate() {
        add_row((0..nsq).map(|v| (v, -basis_cols[v][k])).collect(), *sh);
    }

    let prob = assemble(nsq, c, rows, cones);
    let sol = solve(&prob, &SolverSettings::default())?;
    match sol.status {
        SolveStatus::Optimal => Ok(-sol.primal_objective * wn * wn),
        SolveStatus::Infeasible => Err(Error::InfeasibleSet(format!(
            "no covariance lies in the ball of radius {} around the center while meeting \
             the trace interval {:?} and floor {}",
            spec.radius, spec.trace_interval, spec.pd_floor
        ))),
        status => Err(solver_error(status, &sol)),
    }
}

/// Dual route for the trace-constrained worst-case interference power:
/// solves the dual program directly and returns the multipliers.
///
/// Requires a trace interval. Weak duality guarantees
/// `certificate.objective(spec) >= worst_case_inc_power(spec, w)` up to
/// solver tolerance, and strong duality makes them equal; the pair is used
/// as a cross-check of the primal route.
pub fn dual_inc_power(spec: &IncSetSpec, w: &[Complex64]) -> Result<DualCertificate> {
    let n = spec.dim();
    if w.len() != n {
        return Err(Error::Dimension(format!(
            "beamformer length {} does not match set dimension {}",
            w.len(),
            n
        )));
    }
    let (rho1, rho2) = spec.trace_interval.ok_or_else(|| {
        Error::InvalidInput("the dual program is defined only with a trace interval".to_string())
    })?;
    if spec.pd_floor > 0.0 {
        return Err(Error::InvalidInput(
            "the dual program does not model a definiteness floor".to_string(),
        ));
    }
    let wn = vnorm(w);
    if wn == 0.0 {
        return Err(Error::InvalidInput("beamformer must be nonzero".to_string()));
    }
    let wu: Vec<Complex64> = w.iter().map(|z| z / wn).collect();
    let scale = wn * wn; // certificate is quadratically homogeneous in w
    let nsq = n * n;
    let rc = hvec_hermitian(&spec.center);
    let tvec = hvec_hermitian(&HermitianMatrix::identity(n));
    let eye_border = svec_embed(&bordered(
        &HermitianMatrix::identity(n),
        &vec![Complex64::new(0.0, 0.0); n],
        0.0,
    ));
    let basis_border: Vec<Vec<f64>> = (0..nsq)
        .map(|v| {
            svec_embed(&bordered(
                &hermitian_basis(n, v),
                &vec![Complex64::new(0.0, 0.0); n],
                0.0,
            ))
        })
        .collect();
    let lmi_b = svec_embed(&bordered(&HermitianMatrix::zeros(n), &wu, 1.0));
    let lmi_len = lmi_b.len();

    match spec.norm {
        MatrixNorm::Frobenius => {
            // Variables: [t, x, y, hvec(X)]; minimize
            // radius*t - tr(R̂ X) - rho1*x + rho2*y with t >= ||X||_F.
            let nv = 3 + nsq;
            let mut c = vec![0.0; nv];
            c[0] = spec.radius;
            c[1] = -rho1;
            c[2] = rho2;
            for v in 0..nsq {
                c[3 + v] = -rc[v];
            }
            let mut rows = Vec::new();
            let mut cones = Vec::new();
            cones.push(Cone::Nonneg(2));
            rows.push((vec![(1usize, -1.0)], 0.0));
            rows.push((vec![(2usize, -1.0)], 0.0));
            cones.push(Cone::Soc(1 + nsq));
            rows.push((vec![(0usize, -1.0)], 0.0));
            for v in 0..nsq {
                rows.push((vec![(3 + v, -1.0)], 0.0));
            }
            // LMI [[(y-x)I - X, w], [w^H, 1]] ⪰ 0.
            cones.push(Cone::Psd(2 * (n + 1)));
            for k in 0..lmi_len {
                let mut coeffs = vec![(1usize, eye_border[k]), (2usize, -eye_border[k])];
                for v in 0..nsq {
                    let val = basis_border[v][k];
                    if val != 0.0 {
                        coeffs.push((3 + v, val));
                    }
                }
                rows.push((coeffs, lmi_b[k]));
            }
            let prob = assemble(nv, c, rows, cones);
            let sol = solve(&prob, &SolverSettings::default())?;
            if sol.status != SolveStatus::Optimal {
                return Err(solver_error(sol.status, &sol));
            }
            Ok(DualCertificate {
                x: sol.x[1] * scale,
                y: sol.x[2] * scale,
                x_mat: unhvec_hermitian(&sol.x[3..3 + nsq], n).scaled(scale),
                y_mat: None,
            })
        }
        MatrixNorm::Spectral => {
            // Variables: [x, y, hvec(X), hvec(Y)]; minimize
            // radius*tr(X+Y) + tr(R̂(Y-X)) - rho1*x + rho2*y
            // with X ⪰ 0, Y ⪰ 0.
            let nv = 2 + 2 * nsq;
            let mut c = vec![0.0; nv];
            c[0] = -rho1;
            c[1] = rho2;
            for v in 0..nsq {
                c[2 + v] = spec.radius * tvec[v] - rc[v];
                c[2 + nsq + v] = spec.radius * tvec[v] + rc[v];
            }
            let mut rows = Vec::new();
            let mut cones = Vec::new();
            cones.push(Cone::Nonneg(2));
            rows.push((vec![(0usize, -1.0)], 0.0));
            rows.push((vec![(1usize, -1.0)], 0.0));
            let basis_plain: Vec<Vec<f64>> =
                (0..nsq).map(|v| svec_embed(&hermitian_basis(n, v))).collect();
            let plain_len = basis_plain[0].len();
            for block in 0..2 {
                cones.push(Cone::Psd(2 * n));
                for k in 0..plain_len {
                    let coeffs = (0..nsq)
                        .filter_map(|v| {
                            let val = -basis_plain[v][k];
                            (val != 0.0).then_some((2 + block * nsq + v, val))
                        })
                        .collect();
                    rows.push((coeffs, 0.0));
                }
            }
            // LMI [[(y-x)I + Y - X, w], [w^H, 1]] ⪰ 0.
            cones.push(Cone::Psd(2 * (n + 1)));
            for k in 0..lmi_len {
                let mut coeffs = vec![(0usize, eye_border[k]), (1usize, -eye_border[k])];
                for v in 0..nsq {
                    let val = basis_border[v][k];
                    if val != 0.0 {
                        coeffs.push((2 + v, val));
                        coeffs.push((2 + nsq + v, -val));
                    }
                }
                rows.push((coeffs, lmi_b[k]));
            }
            let prob = assemble(nv, c, rows, cones);
            let sol = solve(&prob, &SolverSettings::default())?;
            if sol.status != SolveStatus::Optimal {
                return Err(solver_error(sol.status, &sol));
            }
            Ok(DualCertificate {
                x: sol.x[0] * scale,
                y: sol.x[1] * scale,
                x_mat: unhvec_hermitian(&sol.x[2..2 + nsq], n).scaled(scale),
                y_mat: Some(unhvec_hermitian(&sol.x[2 + nsq..2 + 2 * nsq], n).scaled(scale)),
            })
        }
    }
}

/// `tr(A B)` for Hermitian `A`, `B` (real by symmetry).
fn herm_inner(a: &HermitianMatrix, b: &HermitianMatrix) -> f64 {
    hvec_hermitian(a)
        .iter()
        .zip(hvec_hermitian(b).iter())
        .map(|(p, q)| p * q)
        .sum()
}

/// `svec` of the real symmetric embedding of a Hermitian matrix.
pub(crate) fn svec_embed(h: &HermitianMatrix) -> Vec<f64> {
    svec(&embed_hermitian(h))
}

/// The `v`-th element of the isometric Hermitian basis of side `n`.
pub(crate) fn hermitian_basis(n: usize, v: usize) -> HermitianMatrix {
    let mut e = vec![0.0; n * n];
    e[v] = 1.0;
    unhvec_hermitian(&e, n)
}

/// Bordered Hermitian matrix `[[top, w], [w^H, corner]]`.
pub(crate) fn bordered(
    top: &HermitianMatrix,
    w: &[Complex64],
    corner: f64,
) -> HermitianMatrix {
    let n = top.dim();
    debug_assert_eq!(w.len(), n);
    let m = ComplexMatrix::from_fn(n + 1, n + 1, |i, j| {
        if i < n && j < n {
            top.get(i, j)
        } else if i < n && j == n {
            w[i]
        } else if i == n && j < n {
            w[j].conj()
        } else {
            Complex64::new(corner, 0.0)
        }
    });
    HermitianMatrix::symmetrize(m)
}

/// Assemble a dense [`ConicProblem`] from sparse row descriptions.
pub(crate) fn assemble(
    nvars: usize,
    c: Vec<f64>,
    rows: Vec<(Vec<(usize, f64)>, f64)>,
    cones: Vec<Cone>,
) -> ConicProblem {
    let m = rows.len();
    let mut a = RealMatrix::zeros(m, nvars);
    let mut b = vec![0.0; m];
    for (i, (coeffs, bi)) in rows.into_iter().enumerate() {
        b[i] = bi;
        for (j, val) in coeffs {
            a[(i, j)] += val;
        }
    }
    ConicProblem { c, a, b, cones }
}

pub(crate) fn solver_error(status: SolveStatus, sol: &crate::conic::ConicSolution) -> Error {
    Error::Solver {
        status: status.to_string(),
        detail: format!(
            "primal residual {:.3e}, dual residual {:.3e}, gap {:.3e} after {} iterations",
            sol.primal_residual, sol.dual_residual, sol.gap, sol.iterations
        ),
    }
}
