//! Per-cone operations for the interior-point solver: interior shifts,
//! Nesterov–Todd scalings, Jordan-algebra products, and step-to-boundary
//! computations. Zero cones are handled upstream as equality rows and never
//! appear here.

use super::Cone;
use crate::linalg::real::{self, RealMatrix};

/// The proper (non-zero) cone blocks of a problem, with offsets into the
/// compacted slack vector that excludes equality rows.
pub(crate) struct ProperCones {
    blocks: Vec<(Cone, usize)>,
    dim: usize,
    degree: usize,
}

impl ProperCones {
    pub fn new(cones: &[Cone]) -> Self {
        let mut blocks = Vec::new();
        let mut off = 0usize;
        let mut degree = 0usize;
        for cone in cones {
            if matches!(cone, Cone::Zero(_)) {
                continue;
            }
            blocks.push((*cone, off));
            off += cone.slack_dim();
            degree += cone.degree();
        }
        Self { blocks, dim: off, degree }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Add `alpha · e` to `v`, where `e` is the Jordan identity element of
    /// the cone product.
    pub fn add_scaled_unit(&self, v: &mut [f64], alpha: f64) {
        for &(cone, off) in &self.blocks {
            match cone {
                Cone::Nonneg(k) => {
                    for x in &mut v[off..off + k] {
                        *x += alpha;
                    }
                }
                Cone::Soc(_) => v[off] += alpha,
                Cone::Psd(p) => {
                    for j in 0..p {
                        v[off + diag_pos(j)] += alpha;
                    }
                }
                Cone::Zero(_) => unreachable!(),
            }
        }
    }

    /// Minimum eigenvalue across blocks (see
    /// [`super::slack_min_eigenvalue`]); `+∞` when there are no blocks.
    pub fn min_eig(&self, v: &[f64]) -> f64 {
        let mut m = f64::INFINITY;
        for &(cone, off) in &self.blocks {
            let blk = &v[off..off + cone.slack_dim()];
            let e = match cone {
                Cone::Nonneg(_) => blk.iter().cloned().fold(f64::INFINITY, f64::min),
                Cone::Soc(_) => blk[0] - real_norm(&blk[1..]),
                Cone::Psd(p) => {
                    let (vals, _) = real::sym_eig(&real::smat(blk, p));
                    vals.last().copied().unwrap_or(f64::INFINITY)
                }
                Cone::Zero(_) => unreachable!(),
            };
            m = m.min(e);
        }
        m
    }

    /// Jordan product `u ∘ v` blockwise.
    pub fn jprod(&self, u: &[f64], v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for &(cone, off) in &self.blocks {
            let d = cone.slack_dim();
            let (ub, vb) = (&u[off..off + d], &v[off..off + d]);
            let ob = &mut out[off..off + d];
            match cone {
                Cone::Nonneg(_) => {
                    for i in 0..d {
                        ob[i] = ub[i] * vb[i];
                    }
                }
                Cone::Soc(_) => {
                    ob[0] = super::dot(ub, vb);
                    for i in 1..d {
                        ob[i] = ub[0] * vb[i] + vb[0] * ub[i];
                    }
                }
                Cone::Psd(p) => {
                    let um = real::smat(ub, p);
                    let vm = real::smat(vb, p);
                    let uv = &um * &vm;
                    let sym = RealMatrix::from_fn(p, p, |i, j| 0.5 * (uv[(i, j)] + uv[(j, i)]));
                    ob.copy_from_slice(&real::svec(&sym));
                }
                Cone::Zero(_) => unreachable!(),
            }
        }
        out
    }
}

/// Position of diagonal entry `(j,j)` inside a svec block.
fn diag_pos(j: usize) -> usize {
    j * (j + 1) / 2 + j
}

fn real_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Nesterov–Todd scaling `W` for the current interior pair `(s, z)`, with
/// the scaling point `λ = Wz = W^{−T}s`.
pub(crate) struct Scaling {
    blocks: Vec<ScaleBlock>,
    pub lambda: Vec<f64>,
    dim: usize,
}

enum ScaleBlock {
    Nonneg {
        off: usize,
        w: Vec<f64>,
    },
    Soc {
        off: usize,
        dim: usize,
        eta: f64,
        /// Unit-hyperbolic point `(w̄₀, w̄₁)` with `w̄₀² − ‖w̄₁‖² = 1`.
        wbar: Vec<f64>,
    },
    Psd {
        off: usize,
        side: usize,
        r: RealMatrix,
        rt: RealMatrix,
        rinv: RealMatrix,
        rinvt: RealMatrix,
        /// NT eigenvalues; the scaled point is `λ = svec(diag(sigma))`.
        sigma: Vec<f64>,
    },
}

impl Scaling {
    /// `None` when `(s, z)` is not safely interior (factorization failure).
    pub fn compute(cones: &ProperCones, s: &[f64], z: &[f64]) -> Option<Scaling> {
        let mut blocks = Vec::with_capacity(cones.blocks.len());
        let mut lambda = vec![0.0; cones.dim];
        for &(cone, off) in &cones.blocks {
            let d = cone.slack_dim();
            let (sb, zb) = (&s[off..off + d], &z[off..off + d]);
            match cone {
                Cone::Nonneg(_) => {
                    let mut w = vec![0.0; d];
                    for i in 0..d {
                        if !(sb[i] > 0.0 && zb[i] > 0.0) {
                            return None;
                        }
                        w[i] = (sb[i] / zb[i]).sqrt();
                        lambda[off + i] = (sb[i] * zb[i]).sqrt();
                    }
                    blocks.push(ScaleBlock::Nonneg { off, w });
                }
                Cone::Soc(_) => {
                    let sres = sb[0] * sb[0] - super::dot(&sb[1..], &sb[1..]);
                    let zres = zb[0] * zb[0] - super::dot(&zb[1..], &zb[1..]);
                    if !(sres > 0.0 && zres > 0.0 && sb[0] > 0.0 && zb[0] > 0.0) {
                        return None;
                    }
                    let (snorm, znorm) = (sres.sqrt(), zres.sqrt());
                    let gamma = (0.5 * (1.0 + super::dot(sb, zb) / (snorm * znorm))).sqrt();
                    if !(gamma.is_finite() && gamma > 0.0) {
                        return None;
                    }
                    let mut wbar = vec![0.0; d];
                    wbar[0] = (sb[0] / snorm + zb[0] / znorm) / (2.0 * gamma);
                    for i in 1..d {
                        wbar[i] = (sb[i] / snorm - zb[i] / znorm) / (2.0 * gamma);
                    }
                    let eta = (snorm / znorm).sqrt();
                    let blk = ScaleBlock::Soc { off, dim: d, eta, wbar };
                    let lam = apply_soc(&blk, zb, SocOp::W);
                    lambda[off..off + d].copy_from_slice(&lam);
                    blocks.push(blk);
                }
                Cone::Psd(p) => {
                    let sm = real::smat(sb, p);
                    let zm = real::smat(zb, p);
                    let ls = real::cholesky(&sm)?;
                    let lz = real::cholesky(&zm)?;
                    let f = &lz.transpose() * &ls;
                    let (u, sig, v) = real::svd_square(&f);
                    if sig.iter().any(|&x| !(x > 0.0)) {
                        return None;
                    }
                    // R = L_s V Σ^{−1/2},  R^{−1} = Σ^{−1/2} Uᵀ L_zᵀ
                    let mut r = &ls * &v;
                    for j in 0..p {
                        let sc = 1.0 / sig[j].sqrt();
                        for i in 0..p {
                            r[(i, j)] *= sc;
                        }
                    }
                    let mut rinv = &u.transpose() * &lz.transpose();
                    for i in 0..p {
                        let sc = 1.0 / sig[i].sqrt();
                        for j in 0..p {
                            rinv[(i, j)] *= sc;
                        }
                    }
                    for (j, &sj) in sig.iter().enumerate() {
                        lambda[off + diag_pos(j)] = sj;
                    }
                    blocks.push(ScaleBlock::Psd {
                        off,
                        side: p,
                        rt: r.transpose(),
                        rinvt: rinv.transpose(),
                        r,
                        rinv,
                        sigma: sig,
                    });
                }
                Cone::Zero(_) => unreachable!(),
            }
        }
        Some(Scaling { blocks, lambda, dim: cones.dim })
    }

    pub fn apply_w(&self, v: &[f64]) -> Vec<f64> {
        self.apply(v, SocOp::W, PsdOp::W)
    }

    pub fn apply_wt(&self, v: &[f64]) -> Vec<f64> {
        self.apply(v, SocOp::W, PsdOp::Wt)
    }

    pub fn apply_winv(&self, v: &[f64]) -> Vec<f64> {
        self.apply(v, SocOp::Winv, PsdOp::Winv)
    }

    pub fn apply_winvt(&self, v: &[f64]) -> Vec<f64> {
        self.apply(v, SocOp::Winv, PsdOp::Winvt)
    }

    fn apply(&self, v: &[f64], soc: SocOp, psd: PsdOp) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for blk in &self.blocks {
            match blk {
                ScaleBlock::Nonneg { off, w } => {
                    for (i, wi) in w.iter().enumerate() {
                        out[off + i] = match soc {
                            SocOp::W => wi * v[off + i],
                            SocOp::Winv => v[off + i] / wi,
                        };
                    }
                }
                ScaleBlock::Soc { off, dim, .. } => {
                    let res = apply_soc(blk, &v[*off..off + dim], soc);
                    out[*off..off + dim].copy_from_slice(&res);
                }
                ScaleBlock::Psd { off, side, .. } => {
                    let d = real::svec_len(*side);
                    let res = apply_psd(blk, &v[*off..off + d], psd);
                    out[*off..off + d].copy_from_slice(&res);
                }
            }
        }
        out
    }

    /// Row-scales a constraint block: returns `G = W^{−T} A`.
    pub fn scale_rows_winvt(&self, a: &RealMatrix) -> RealMatrix {
        let n = a.ncols();
        let mut g = a.clone();
        for blk in &self.blocks {
            match blk {
                ScaleBlock::Nonneg { off, w } => {
                    for (i, wi) in w.iter().enumerate() {
                        for x in g.row_mut(off + i) {
                            *x /= wi;
                        }
                    }
                }
                ScaleBlock::Soc { off, dim, eta, wbar } => {
                    // W^{−1} row block: out₀ = (w̄₀ r₀ − w̄₁ᵀr₁)/η,
                    // out₁ = (−w̄₁ r₀ + r₁ + w̄₁ (w̄₁ᵀr₁)/(1+w̄₀))/η
                    let mut t = vec![0.0; n];
                    for i in 1..*dim {
                        let wi = wbar[i];
                        if wi == 0.0 {
                            continue;
                        }
                        for (tj, aj) in t.iter_mut().zip(a.row(off + i)) {
                            *tj += wi * aj;
                        }
                    }
                    let denom = 1.0 + wbar[0];
                    let row0: Vec<f64> = a.row(*off).to_vec();
                    {
                        let g0 = g.row_mut(*off);
                        for j in 0..n {
                            g0[j] = (wbar[0] * row0[j] - t[j]) / eta;
                        }
                    }
                    for i in 1..*dim {
                        let wi = wbar[i];
                        let gi = g.row_mut(off + i);
                        for j in 0..n {
                            gi[j] = (-wi * row0[j] + a[(off + i, j)] + wi * t[j] / denom) / eta;
                        }
                    }
                }
                ScaleBlock::Psd { off, side, .. } => {
                    let d = real::svec_len(*side);
                    let mut col = vec![0.0; d];
                    for j in 0..n {
                        for (i, ci) in col.iter_mut().enumerate() {
                            *ci = a[(off + i, j)];
                        }
                        let res = apply_psd(blk, &col, PsdOp::Winvt);
                        for (i, ri) in res.iter().enumerate() {
                            g[(off + i, j)] = *ri;
                        }
                    }
                }
            }
        }
        g
    }

    /// Solves `λ ∘ u = w` blockwise.
    pub fn lambda_jdiv(&self, w: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for blk in &self.blocks {
            match blk {
                ScaleBlock::Nonneg { off, w: wt } => {
                    for i in 0..wt.len() {
                        out[off + i] = w[off + i] / self.lambda[off + i];
                    }
                }
                ScaleBlock::Soc { off, dim, .. } => {
                    let lb = &self.lambda[*off..off + dim];
                    let wb = &w[*off..off + dim];
                    let l1sq = super::dot(&lb[1..], &lb[1..]);
                    let det = lb[0] * lb[0] - l1sq;
                    let l1w1 = super::dot(&lb[1..], &wb[1..]);
                    let u0 = (lb[0] * wb[0] - l1w1) / det;
                    out[*off] = u0;
                    for i in 1..*dim {
                        out[off + i] = (wb[i] - u0 * lb[i]) / lb[0];
                    }
                }
                ScaleBlock::Psd { off, side, sigma, .. } => {
                    let d = real::svec_len(*side);
                    let wm = real::smat(&w[*off..off + d], *side);
                    let um = RealMatrix::from_fn(*side, *side, |i, j| {
                        2.0 * wm[(i, j)] / (sigma[i] + sigma[j])
                    });
                    out[*off..off + d].copy_from_slice(&real::svec(&um));
                }
            }
        }
        out
    }

    /// `λ ∘ λ` blockwise.
    pub fn lambda_sq(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for blk in &self.blocks {
            match blk {
                ScaleBlock::Nonneg { off, w } => {
                    for i in 0..w.len() {
                        out[off + i] = self.lambda[off + i] * self.lambda[off + i];
                    }
                }
                ScaleBlock::Soc { off, dim, .. } => {
                    let lb = &self.lambda[*off..off + dim];
                    out[*off] = super::dot(lb, lb);
                    for i in 1..*dim {
                        out[off + i] = 2.0 * lb[0] * lb[i];
                    }
                }
                ScaleBlock::Psd { off, sigma, .. } => {
                    for (j, &sj) in sigma.iter().enumerate() {
                        out[off + diag_pos(j)] = sj * sj;
                    }
                }
            }
        }
        out
    }

    /// Largest `α` with `λ + α d` in the cone (∞ when the direction never
    /// leaves it). `λ` is the scaling point stored in `self`.
    pub fn step_to_boundary(&self, d: &[f64]) -> f64 {
        let mut alpha = f64::INFINITY;
        for blk in &self.blocks {
            let a = match blk {
                ScaleBlock::Nonneg { off, w } => {
                    let mut a = f64::INFINITY;
                    for i in 0..w.len() {
                        if d[off + i] < 0.0 {
                            a = a.min(-self.lambda[off + i] / d[off + i]);
                        }
                    }
                    a
                }
                ScaleBlock::Soc { off, dim, .. } => {
                    let lb = &self.lambda[*off..off + dim];
                    let db = &d[*off..off + dim];
                    soc_boundary_step(lb, db)
                }
                ScaleBlock::Psd { off, side, sigma, .. } => {
                    let dm = real::smat(&d[*off..off + real::svec_len(*side)], *side);
                    let b = RealMatrix::from_fn(*side, *side, |i, j| {
                        dm[(i, j)] / (sigma[i] * sigma[j]).sqrt()
                    });
                    let (vals, _) = real::sym_eig(&b);
                    match vals.last() {
                        Some(&m) if m < 0.0 => -1.0 / m,
                        _ => f64::INFINITY,
                    }
                }
            };
            alpha = alpha.min(a);
        }
        alpha
    }
}

#[derive(Clone, Copy)]
enum SocOp {
    W,
    Winv,
}

#[derive(Clone, Copy)]
enum PsdOp {
    W,
    Wt,
    Winv,
    Winvt,
}

fn apply_soc(blk: &ScaleBlock, v: &[f64], op: SocOp) -> Vec<f64> {
    let ScaleBlock::Soc { dim, eta, wbar, .. } = blk else {
        unreachable!()
    };
    let d = *dim;
    let mut out = vec![0.0; d];
    let w1v1: f64 = (1..d).map(|i| wbar[i] * v[i]).sum();
    let denom = 1.0 + wbar[0];
    match op {
        SocOp::W => {
            out[0] = eta * (wbar[0] * v[0] + w1v1);
            for i in 1..d {
                out[i] = eta * (v[0] * wbar[i] + v[i] + wbar[i] * w1v1 / denom);
            }
        }
        SocOp::Winv => {
            out[0] = (wbar[0] * v[0] - w1v1) / eta;
            for i in 1..d {
                out[i] = (-v[0] * wbar[i] + v[i] + wbar[i] * w1v1 / denom) / eta;
            }
        }
    }
    out
}

fn apply_psd(blk: &ScaleBlock, v: &[f64], op: PsdOp) -> Vec<f64> {
    let ScaleBlock::Psd { side, r, rt, rinv, rinvt, .. } = blk else {
        unreachable!()
    };
    let x = real::smat(v, *side);
    // W x = svec(Rᵀ X R); Wᵀ x = svec(R X Rᵀ); inverses likewise.
    let (left, right) = match op {
        PsdOp::W => (rt, r),
        PsdOp::Wt => (r, rt),
        PsdOp::Winv => (rinvt, rinv),
        PsdOp::Winvt => (rinv, rinvt),
    };
    let prod = &(left * &x) * right;
    let sym = RealMatrix::from_fn(*side, *side, |i, j| 0.5 * (prod[(i, j)] + prod[(j, i)]));
    real::svec(&sym)
}

/// Smallest positive root of `‖(v + α d)₁‖ = (v + α d)₀` for an interior
/// `v`; ∞ when the ray stays interior.
fn soc_boundary_step(v: &[f64], d: &[f64]) -> f64 {
    let a = d[0] * d[0] - super::dot(&d[1..], &d[1..]);
    let b = 2.0 * (v[0] * d[0] - super::dot(&v[1..], &d[1..]));
    let c = v[0] * v[0] - super::dot(&v[1..], &v[1..]);
    smallest_positive_root(a, b, c)
}

fn smallest_positive_root(a: f64, b: f64, c: f64) -> f64 {
    if a.abs() <= 1e-300 {
        return if b < 0.0 { -c / b } else { f64::INFINITY };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return f64::INFINITY;
    }
    let sq = disc.sqrt();
    let q = -0.5 * (b + b.signum() * sq);
    let mut best = f64::INFINITY;
    if q != 0.0 {
        let r1 = q / a;
        if r1 > 0.0 {
            best = best.min(r1);
        }
        let r2 = c / q;
        if r2 > 0.0 {
            best = best.min(r2);
        }
    } else {
        // b == 0: roots ±sqrt(−c/a)
        let r = -c / a;
        if r > 0.0 {
            best = r.sqrt();
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn random_interior(rng: &mut ChaCha12Rng, cones: &ProperCones) -> Vec<f64> {
        let mut v: Vec<f64> = (0..cones.dim()).map(|_| rng.random::<f64>() - 0.5).collect();
        let m = cones.min_eig(&v);
        cones.add_scaled_unit(&mut v, 1.0 - m.min(0.0) + 0.3);
        v
    }

    #[test]
    fn nt_scaling_maps_both_points_to_lambda() {
        let cones =
            ProperCones::new(&[Cone::Nonneg(3), Cone::Soc(4), Cone::Psd(3), Cone::Zero(2)]);
        assert_eq!(cones.dim(), 3 + 4 + 6);
        assert_eq!(cones.degree(), 3 + 1 + 3);
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..20 {
            let s = random_interior(&mut rng, &cones);
            let z = random_interior(&mut rng, &cones);
            let sc = Scaling::compute(&cones, &s, &z).expect("interior");
            let wz = sc.apply_w(&z);
            let wints = sc.apply_winvt(&s);
            for i in 0..cones.dim() {
                assert!((wz[i] - sc.lambda[i]).abs() < 1e-9, "Wz ≠ λ at {i}");
                assert!((wints[i] - sc.lambda[i]).abs() < 1e-9, "W^-T s ≠ λ at {i}");
            }
            // W^T W z should reproduce s via s = W^T λ
            let wtl = sc.apply_wt(&sc.lambda);
            for i in 0..cones.dim() {
                assert!((wtl[i] - s[i]).abs() < 1e-8 * (1.0 + s[i].abs()));
            }
        }
    }

    #[test]
    fn inverse_operators_round_trip() {
        let cones = ProperCones::new(&[Cone::Soc(3), Cone::Psd(2), Cone::Nonneg(2)]);
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let s = random_interior(&mut rng, &cones);
        let z = random_interior(&mut rng, &cones);
        let sc = Scaling::compute(&cones, &s, &z).unwrap();
        let v: Vec<f64> = (0..cones.dim()).map(|_| rng.random::<f64>() - 0.5).collect();
        let rt = sc.apply_winv(&sc.apply_w(&v));
        let rt2 = sc.apply_winvt(&sc.apply_wt(&v));
        for i in 0..v.len() {
            assert!((rt[i] - v[i]).abs() < 1e-10);
            assert!((rt2[i] - v[i]).abs() < 1e-10);
        }
    }

    #[test]
    fn scale_rows_matches_columnwise_apply() {
        let cones = ProperCones::new(&[Cone::Nonneg(2), Cone::Soc(3), Cone::Psd(2)]);
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let s = random_interior(&mut rng, &cones);
        let z = random_interior(&mut rng, &cones);
        let sc = Scaling::compute(&cones, &s, &z).unwrap();
        let a = RealMatrix::from_fn(cones.dim(), 4, |_, _| rng.random::<f64>() - 0.5);
        let g = sc.scale_rows_winvt(&a);
        for j in 0..4 {
            let col: Vec<f64> = (0..cones.dim()).map(|i| a[(i, j)]).collect();
            let want = sc.apply_winvt(&col);
            for i in 0..cones.dim() {
                assert!((g[(i, j)] - want[i]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn jordan_division_inverts_product() {
        let cones = ProperCones::new(&[Cone::Nonneg(2), Cone::Soc(4), Cone::Psd(3)]);
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let s = random_interior(&mut rng, &cones);
        let z = random_interior(&mut rng, &cones);
        let sc = Scaling::compute(&cones, &s, &z).unwrap();
        // λ \ (λ∘λ) = λ
        let lsq = sc.lambda_sq();
        let lam = sc.lambda_jdiv(&lsq);
        for i in 0..cones.dim() {
            assert!((lam[i] - sc.lambda[i]).abs() < 1e-9);
        }
        // λ ∘ (λ \ w) = w for generic w
        let w: Vec<f64> = (0..cones.dim()).map(|_| rng.random::<f64>() - 0.5).collect();
        let u = sc.lambda_jdiv(&w);
        let back = cones.jprod(&sc.lambda, &u);
        for i in 0..cones.dim() {
            assert!((back[i] - w[i]).abs() < 1e-9);
        }
    }

    #[test]
    fn boundary_step_is_exact() {
        let cones = ProperCones::new(&[Cone::Nonneg(2), Cone::Soc(3), Cone::Psd(2)]);
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        for _ in 0..20 {
            let s = random_interior(&mut rng, &cones);
            let z = random_interior(&mut rng, &cones);
            let sc = Scaling::compute(&cones, &s, &z).unwrap();
            let d: Vec<f64> = (0..cones.dim()).map(|_| rng.random::<f64>() - 0.5).collect();
            let alpha = sc.step_to_boundary(&d);
            if alpha.is_finite() {
                let at = |t: f64| -> f64 {
                    let v: Vec<f64> =
                        sc.lambda.iter().zip(&d).map(|(l, di)| l + t * di).collect();
                    cones.min_eig(&v)
                };
                assert!(at(alpha * 0.999) >= -1e-9, "inside before boundary");
                assert!(at(alpha * 1.01) <= 1e-9, "outside after boundary");
            } else {
                let v: Vec<f64> =
                    sc.lambda.iter().zip(&d).map(|(l, di)| l + 1e6 * di).collect();
                assert!(cones.min_eig(&v) >= -1e-6);
            }
        }
    }
}
