//! Real symmetric-cone programming over products of zero, nonnegative,
//! second-order, and positive semidefinite cones, with a dense primal-dual
//! interior-point solver.
//!
//! Conventions used throughout the crate:
//!
//! ```text
//! primal:  minimize cᵀx   subject to  A x + s = b,  s ∈ K
//! dual:    maximize −bᵀy  subject to  Aᵀy + c = 0,  y ∈ K*
//! ```
//!
//! `K` is the ordered product of the cone blocks. Every block is self-dual
//! except the zero cone, whose dual is the free cone (so `y` is
//! unconstrained on zero blocks). The dual slack coincides with `y` itself
//! under this sign convention. PSD blocks travel in the scaled
//! upper-triangular vectorization ([`crate::linalg::real::svec`]): a
//! side-`p` block occupies `p(p+1)/2` consecutive slack entries, and
//! Hermitian data enters only after the real embedding from
//! [`crate::linalg`] — this module never sees complex numbers.
//!
//! The solver is a homogeneous self-dual embedding with Nesterov–Todd
//! scaling and a Mehrotra predictor-corrector, dense factorizations only.
//! It is deterministic: identical problems and settings produce bitwise
//! identical solutions.

pub mod io;

mod cones;
mod solver;

use crate::linalg::real::{smat, svec_len, sym_eig};
use crate::{Error, Result};

pub use crate::linalg::real::RealMatrix;

/// One block of the cone product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cone {
    /// `s = 0` (equality rows); dual free.
    Zero(usize),
    /// `s ≥ 0` componentwise.
    Nonneg(usize),
    /// `s₀ ≥ ‖s₁‖₂`, total dimension given (first entry plus the rest).
    Soc(usize),
    /// Symmetric positive semidefinite block of the given side, stored as
    /// its scaled upper-triangular vectorization.
    Psd(usize),
}

impl Cone {
    /// Number of slack entries the block occupies.
    pub fn slack_dim(&self) -> usize {
        match *self {
            Cone::Zero(k) | Cone::Nonneg(k) | Cone::Soc(k) => k,
            Cone::Psd(p) => svec_len(p),
        }
    }

    /// Barrier degree of the block (zero blocks carry no barrier).
    pub(crate) fn degree(&self) -> usize {
        match *self {
            Cone::Zero(_) => 0,
            Cone::Nonneg(k) => k,
            Cone::Soc(_) => 1,
            Cone::Psd(p) => p,
        }
    }
}

/// Conic program in standard form `min cᵀx  s.t.  Ax + s = b, s ∈ K`.
#[derive(Clone, Debug)]
pub struct ConicProblem {
    /// Objective vector, length `n`.
    pub c: Vec<f64>,
    /// Constraint matrix, `m × n` dense.
    pub a: RealMatrix,
    /// Right-hand side, length `m`.
    pub b: Vec<f64>,
    /// Ordered cone blocks; slack dimensions must sum to `m`.
    pub cones: Vec<Cone>,
}

impl ConicProblem {
    pub fn num_vars(&self) -> usize {
        self.c.len()
    }

    pub fn num_rows(&self) -> usize {
        self.b.len()
    }

    /// Checks dimension consistency, finiteness, and cone-list
    /// well-formedness. Every inconsistency names the offending field.
    pub fn validate(&self) -> Result<()> {
        let n = self.c.len();
        let m = self.b.len();
        if self.a.nrows() != m {
            return Err(Error::Dimension(format!(
                "a: has {} rows but b has {} entries",
                self.a.nrows(),
                m
            )));
        }
        if self.a.ncols() != n {
            return Err(Error::Dimension(format!(
                "a: has {} columns but c has {} entries",
                self.a.ncols(),
                n
            )));
        }
        let cone_dim: usize = self.cones.iter().map(Cone::slack_dim).sum();
        if cone_dim != m {
            return Err(Error::Dimension(format!(
                "cones: dimensions sum to {cone_dim} but the slack dimension is {m}"
            )));
        }
        for (i, cone) in self.cones.iter().enumerate() {
            let k = match *cone {
                Cone::Zero(k) | Cone::Nonneg(k) | Cone::Soc(k) => k,
                Cone::Psd(p) => p,
            };
            if k == 0 {
                return Err(Error::InvalidInput(format!(
                    "cones[{i}]: zero-dimensional block"
                )));
            }
        }
        for (name, v) in [("c", &self.c), ("b", &self.b)] {
            if let Some(i) = v.iter().position(|x| !x.is_finite()) {
                return Err(Error::InvalidInput(format!("{name}[{i}]: not finite")));
            }
        }
        if let Some(i) = self.a.data().iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "a: entry {} (row {}, column {}) is not finite",
                i,
                i / n.max(1),
                i % n.max(1)
            )));
        }
        Ok(())
    }
}

/// Interior-point settings.
#[derive(Clone, Copy, Debug)]
pub struct SolverSettings {
    /// Relative feasibility/gap tolerance; also the certificate threshold
    /// for declaring infeasibility or unboundedness.
    pub tol: f64,
    /// Iteration cap.
    pub max_iter: usize,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self { tol: 1e-8, max_iter: 100 }
    }
}

/// Termination status of a solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    /// KKT residuals within tolerance; `x`, `y`, `s` are the solution.
    Optimal,
    /// Primal infeasible: `y` holds a ray with `Aᵀy ≈ 0`, `bᵀy = −1`,
    /// `y ∈ K*`; `x` and `s` are zero.
    Infeasible,
    /// Primal unbounded (dual infeasible): `x`, `s` hold a ray with
    /// `Ax + s ≈ 0`, `cᵀx = −1`, `s ∈ K`; `y` is zero.
    Unbounded,
    /// Iteration cap hit; fields hold the best iterate found.
    MaxIter,
    /// Factorization breakdown or a vanishing step; fields hold the best
    /// iterate found.
    NumericalFailure,
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::Infeasible => "infeasible",
            SolveStatus::Unbounded => "unbounded",
            SolveStatus::MaxIter => "max_iter",
            SolveStatus::NumericalFailure => "numerical_failure",
        };
        f.write_str(s)
    }
}

/// Result of a conic solve. Objective and residual fields are meaningful
/// for `Optimal` and `MaxIter`; for certificates they describe the ray.
#[derive(Clone, Debug)]
pub struct ConicSolution {
    pub status: SolveStatus,
    /// Primal point (or unbounded ray).
    pub x: Vec<f64>,
    /// Dual point (or infeasibility certificate), length `m`.
    pub y: Vec<f64>,
    /// Primal slack, length `m`.
    pub s: Vec<f64>,
    pub primal_objective: f64,
    /// Dual bound on the optimum. For interior iterates this is the
    /// complementarity-based value `cᵀx − sᵀy` (never above the primal
    /// objective), which converges to `−bᵀy` at optimality; for
    /// certificates it is the ray value `−bᵀy`.
    pub dual_objective: f64,
    /// `‖Ax + s − b‖ / (1 + ‖b‖)`.
    pub primal_residual: f64,
    /// `‖Aᵀy + c‖ / (1 + ‖c‖)`.
    pub dual_residual: f64,
    /// `|cᵀx + bᵀy| / (1 + |cᵀx|)`.
    pub gap: f64,
    pub iterations: usize,
}

/// Normalized primal/dual/gap residuals of a candidate triple under the
/// module's sign convention (see the module docs).
pub fn residuals(problem: &ConicProblem, x: &[f64], y: &[f64], s: &[f64]) -> (f64, f64, f64) {
    let ax = problem.a.matvec(x);
    let mut pres = 0.0f64;
    for i in 0..problem.b.len() {
        let r = ax[i] + s[i] - problem.b[i];
        pres += r * r;
    }
    let aty = problem.a.t_matvec(y);
    let mut dres = 0.0f64;
    for j in 0..problem.c.len() {
        let r = aty[j] + problem.c[j];
        dres += r * r;
    }
    let nb = problem.b.iter().map(|v| v * v).sum::<f64>().sqrt();
    let nc = problem.c.iter().map(|v| v * v).sum::<f64>().sqrt();
    let cx = dot(&problem.c, x);
    let by = dot(&problem.b, y);
    (
        pres.sqrt() / (1.0 + nb),
        dres.sqrt() / (1.0 + nc),
        (cx + by).abs() / (1.0 + cx.abs()),
    )
}

/// Solves the problem. Returns `Err` only for malformed input; numerical
/// outcomes are reported through [`ConicSolution::status`].
pub fn solve(problem: &ConicProblem, settings: &SolverSettings) -> Result<ConicSolution> {
    problem.validate()?;
    Ok(solver::solve_hsde(problem, settings))
}

/// Minimum eigenvalue over the proper-cone blocks of a slack vector
/// (componentwise for nonnegative blocks, `s₀ − ‖s₁‖` for second-order
/// blocks, matrix eigenvalue for PSD blocks); `+∞` when there are none.
/// Zero blocks are skipped.
pub fn slack_min_eigenvalue(cones: &[Cone], s: &[f64]) -> f64 {
    let mut off = 0usize;
    let mut m = f64::INFINITY;
    for cone in cones {
        let d = cone.slack_dim();
        let blk = &s[off..off + d];
        let e = match *cone {
            Cone::Zero(_) => f64::INFINITY,
            Cone::Nonneg(_) => blk.iter().cloned().fold(f64::INFINITY, f64::min),
            Cone::Soc(_) => blk[0] - blk[1..].iter().map(|v| v * v).sum::<f64>().sqrt(),
            Cone::Psd(p) => {
                let (vals, _) = sym_eig(&smat(blk, p));
                vals.last().copied().unwrap_or(f64::INFINITY)
            }
        };
        m = m.min(e);
        off += d;
    }
    m
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::real::svec;

    fn lp_geq_one() -> ConicProblem {
        // min x  s.t.  x ≥ 1   (slack s = x − 1 on the nonnegative cone)
        ConicProblem {
            c: vec![1.0],
            a: RealMatrix::from_fn(1, 1, |_, _| -1.0),
            b: vec![-1.0],
            cones: vec![Cone::Nonneg(1)],
        }
    }

    fn solve_default(p: &ConicProblem) -> ConicSolution {
        solve(p, &SolverSettings::default()).expect("valid problem")
    }

    #[test]
    fn validate_reports_field_paths() {
        let mut p = lp_geq_one();
        p.b.push(0.0);
        let e = p.validate().unwrap_err();
        assert!(format!("{e}").contains("a:"), "{e}");

        let mut p = lp_geq_one();
        p.cones = vec![Cone::Nonneg(2)];
        let e = p.validate().unwrap_err();
        assert!(format!("{e}").contains("cones"), "{e}");

        let mut p = lp_geq_one();
        p.a = RealMatrix::from_fn(1, 1, |_, _| f64::NAN);
        let e = p.validate().unwrap_err();
        assert!(format!("{e}").contains("finite"), "{e}");

        let mut p = lp_geq_one();
        p.cones = vec![Cone::Nonneg(1), Cone::Zero(0)];
        assert!(p.validate().is_err());
    }

    #[test]
    fn lp_minimum_is_one() {
        let p = lp_geq_one();
        let sol = solve_default(&p);
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert!((sol.x[0] - 1.0).abs() < 1e-7, "x = {}", sol.x[0]);
        assert!((sol.primal_objective - 1.0).abs() < 1e-7);
        // dual: max −bᵀy = −y·(−1) = y with Aᵀy + c = −y + 1 = 0 → y = 1
        assert!((sol.y[0] - 1.0).abs() < 1e-6);
        let scale = 1e-7 * (1.0 + 1.0 + 1.0);
        assert!(sol.primal_residual <= scale && sol.dual_residual <= scale);
        assert!(sol.gap <= 1e-7 * (1.0 + sol.primal_objective.abs()));
    }

    #[test]
    fn soc_norm_bound_gives_five() {
        // min t  s.t.  ‖(3,4)‖ ≤ t
        let mut a = RealMatrix::zeros(3, 1);
        a[(0, 0)] = -1.0;
        let p = ConicProblem {
            c: vec![1.0],
            a,
            b: vec![0.0, 3.0, 4.0],
            cones: vec![Cone::Soc(3)],
        };
        let sol = solve_default(&p);
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert!((sol.x[0] - 5.0).abs() < 1e-6, "t = {}", sol.x[0]);
    }

    #[test]
    fn sdp_fixed_diagonal_trace() {
        // min tr X  s.t.  X ⪰ 0, X₁₁ = 1, X₂₂ = 2; optimum is diagonal.
        // Variables: x = svec(X) = (X₁₁, √2·X₁₂, X₂₂).
        let mut a = RealMatrix::zeros(5, 3);
        a[(0, 0)] = 1.0;
        a[(1, 2)] = 1.0;
        for j in 0..3 {
            a[(2 + j, j)] = -1.0;
        }
        let p = ConicProblem {
            c: vec![1.0, 0.0, 1.0],
            a,
            b: vec![1.0, 2.0, 0.0, 0.0, 0.0],
            cones: vec![Cone::Zero(2), Cone::Psd(2)],
        };
        let sol = solve_default(&p);
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert!((sol.primal_objective - 3.0).abs() < 1e-6);
        assert!(sol.x[1].abs() < 1e-6, "off-diagonal {}", sol.x[1]);
        // PSD slack eigenvalues ≥ −tol at the optimum.
        let me = slack_min_eigenvalue(&p.cones, &sol.s);
        assert!(me >= -1e-8, "min slack eigenvalue {me}");
    }

    #[test]
    fn mixed_cones_largest_eigenvalue() {
        // min t  s.t.  tI − diag(1,2) ⪰ 0  and  t ≤ 10  → t = 2.
        let d = RealMatrix::from_fn(2, 2, |i, j| if i == j { (i + 1) as f64 } else { 0.0 });
        let id2 = RealMatrix::identity(2);
        let svec_i = svec(&id2);
        let svec_d = svec(&d);
        let mut a = RealMatrix::zeros(4, 1);
        a[(0, 0)] = 1.0; // t + s = 10, s ≥ 0
        for k in 0..3 {
            a[(1 + k, 0)] = -svec_i[k];
        }
        let p = ConicProblem {
            c: vec![1.0],
            a,
            b: vec![10.0, -svec_d[0], -svec_d[1], -svec_d[2]],
            cones: vec![Cone::Nonneg(1), Cone::Psd(2)],
        };
        let sol = solve_default(&p);
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert!((sol.x[0] - 2.0).abs() < 1e-6, "t = {}", sol.x[0]);
    }

    #[test]
    fn equality_rows_respected() {
        // min x₁ + x₂  s.t.  x₁ + x₂ = 1, x ≥ 0  → objective 1.
        let mut a = RealMatrix::zeros(3, 2);
        a[(0, 0)] = 1.0;
        a[(0, 1)] = 1.0;
        a[(1, 0)] = -1.0;
        a[(2, 1)] = -1.0;
        let p = ConicProblem {
            c: vec![1.0, 1.0],
            a,
            b: vec![1.0, 0.0, 0.0],
            cones: vec![Cone::Zero(1), Cone::Nonneg(2)],
        };
        let sol = solve_default(&p);
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert!((sol.primal_objective - 1.0).abs() < 1e-7);
        assert!((sol.x[0] + sol.x[1] - 1.0).abs() < 1e-7);
    }

    #[test]
    fn infeasible_lp_yields_certificate() {
        // x ≥ 1 and x ≤ 0 simultaneously.
        let mut a = RealMatrix::zeros(2, 1);
        a[(0, 0)] = -1.0;
        a[(1, 0)] = 1.0;
        let p = ConicProblem {
            c: vec![0.0],
            a: a.clone(),
            b: vec![-1.0, 0.0],
            cones: vec![Cone::Nonneg(2)],
        };
        let sol = solve_default(&p);
        assert_eq!(sol.status, SolveStatus::Infeasible);
        let aty = a.t_matvec(&sol.y);
        assert!(norm2(&aty) <= 1e-6, "certificate residual {}", norm2(&aty));
        assert!((dot(&p.b, &sol.y) + 1.0).abs() <= 1e-9);
        assert!(sol.y.iter().all(|&v| v >= -1e-9));
    }

    #[test]
    fn unbounded_lp_yields_ray() {
        // min −x s.t. x ≥ 0.
        let mut a = RealMatrix::zeros(1, 1);
        a[(0, 0)] = -1.0;
        let p = ConicProblem {
            c: vec![-1.0],
            a: a.clone(),
            b: vec![0.0],
            cones: vec![Cone::Nonneg(1)],
        };
        let sol = solve_default(&p);
        assert_eq!(sol.status, SolveStatus::Unbounded);
        assert!((dot(&p.c, &sol.x) + 1.0).abs() <= 1e-9);
        let mut r = a.matvec(&sol.x);
        for i in 0..r.len() {
            r[i] += sol.s[i];
        }
        assert!(norm2(&r) <= 1e-6, "ray residual {}", norm2(&r));
    }

    #[test]
    fn residuals_analytic_and_perturbed() {
        let p = lp_geq_one();
        // exact analytic solution: x = 1, s = 0, y = 1
        let (pr, dr, g) = residuals(&p, &[1.0], &[1.0], &[0.0]);
        assert!(pr <= 1e-12 && dr <= 1e-12 && g <= 1e-12);
        // perturbing x by 1e−3 moves the primal residual to that order
        let (pr, _, _) = residuals(&p, &[1.0 + 1e-3], &[1.0], &[0.0]);
        assert!(pr > 1e-4 && pr < 1e-2, "pr = {pr}");
    }

    #[test]
    fn zero_variable_problem() {
        // n = 0, b = 0: trivially feasible with zero residuals.
        let p = ConicProblem {
            c: vec![],
            a: RealMatrix::zeros(2, 0),
            b: vec![0.0, 0.0],
            cones: vec![Cone::Nonneg(2)],
        };
        let sol = solve_default(&p);
        assert_eq!(sol.status, SolveStatus::Optimal);
        let (pr, dr, g) = residuals(&p, &sol.x, &sol.y, &sol.s);
        assert_eq!((pr, dr, g), (0.0, 0.0, 0.0));
    }

    #[test]
    fn zero_variable_infeasible_has_certificate() {
        let p = ConicProblem {
            c: vec![],
            a: RealMatrix::zeros(3, 0),
            b: vec![1.0, 0.3, 2.0],
            cones: vec![Cone::Soc(3)],
        };
        let sol = solve_default(&p);
        assert_eq!(sol.status, SolveStatus::Infeasible);
        assert!((dot(&p.b, &sol.y) + 1.0).abs() <= 1e-9);
    }

    #[test]
    fn no_constraint_problems() {
        let p = ConicProblem {
            c: vec![0.0, 0.0],
            a: RealMatrix::zeros(0, 2),
            b: vec![],
            cones: vec![],
        };
        assert_eq!(solve_default(&p).status, SolveStatus::Optimal);
        let p = ConicProblem {
            c: vec![1.0, 0.0],
            a: RealMatrix::zeros(0, 2),
            b: vec![],
            cones: vec![],
        };
        assert_eq!(solve_default(&p).status, SolveStatus::Unbounded);
    }

    #[test]
    fn determinism_bitwise() {
        for p in [lp_geq_one(), {
            let mut a = RealMatrix::zeros(3, 1);
            a[(0, 0)] = -1.0;
            ConicProblem {
                c: vec![1.0],
                a,
                b: vec![0.0, 3.0, 4.0],
                cones: vec![Cone::Soc(3)],
            }
        }] {
            let s1 = solve_default(&p);
            let s2 = solve_default(&p);
            let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
            assert_eq!(bits(&s1.x), bits(&s2.x));
            assert_eq!(bits(&s1.y), bits(&s2.y));
            assert_eq!(bits(&s1.s), bits(&s2.s));
            assert_eq!(s1.iterations, s2.iterations);
        }
    }

    #[test]
    fn weak_duality_along_the_path() {
        // Determinism makes a run truncated at k iterations an exact prefix
        // of the full run, so sweeping the cap checks every iterate.
        let problems = vec![lp_geq_one(), {
            let mut a = RealMatrix::zeros(3, 1);
            a[(0, 0)] = -1.0;
            ConicProblem {
                c: vec![1.0],
                a,
                b: vec![0.0, 3.0, 4.0],
                cones: vec![Cone::Soc(3)],
            }
        }];
        for p in problems {
            for k in 1..=25 {
                let sol = solve(&p, &SolverSettings { tol: 1e-8, max_iter: k }).unwrap();
                if matches!(sol.status, SolveStatus::Optimal | SolveStatus::MaxIter) {
                    assert!(
                        sol.primal_objective >= sol.dual_objective - 1e-9,
                        "weak duality violated at cap {k}: {} vs {}",
                        sol.primal_objective,
                        sol.dual_objective
                    );
                }
            }
        }
    }
}
