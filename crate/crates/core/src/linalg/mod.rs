//! Dense complex linear algebra shared by every other module.
//!
//! All matrices are small (array sizes, tens of rows), so the
//! factorizations favor accuracy and determinism over asymptotics:
//! Hermitian eigendecompositions use cyclic complex Jacobi rotations and
//! the SVD uses one-sided Jacobi on columns. Both converge to working
//! precision and involve no pivot heuristics, so identical inputs always
//! produce identical outputs.
//!
//! Normalization conventions, applied everywhere:
//! * eigenvalues and singular values are sorted in descending order,
//!   ties resolved by keeping the lower original index first;
//! * each eigenvector (and each singular-vector pair) is scaled by a unit
//!   phase so that its largest-magnitude entry is real and nonnegative,
//!   ties resolved by the lowest index.

pub mod real;

use num_complex::Complex64;

use crate::{Error, Result};
pub use real::{smat, svec, svec_len, RealMatrix};

/// Dense complex matrix, row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self { nrows, ncols, data: vec![Complex64::new(0.0, 0.0); nrows * ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(
        nrows: usize,
        ncols: usize,
        mut f: F,
    ) -> Self {
        let mut m = Self::zeros(nrows, ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from row-major data. Errors if the length is wrong.
    pub fn from_data(nrows: usize, ncols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != nrows * ncols {
            return Err(Error::Dimension(format!(
                "data length {} does not match {}x{}",
                data.len(),
                nrows,
                ncols
            )));
        }
        Ok(Self { nrows, ncols, data })
    }

    /// Single-column matrix from a vector.
    pub fn from_column(v: &[Complex64]) -> Self {
        Self { nrows: v.len(), ncols: 1, data: v.to_vec() }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.ncols, self.nrows, |i, j| self[(j, i)].conj())
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.ncols, "matvec dimension mismatch");
        let mut out = vec![Complex64::new(0.0, 0.0); self.nrows];
        for i in 0..self.nrows {
            let row = &self.data[i * self.ncols..(i + 1) * self.ncols];
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, x) in row.iter().zip(v) {
                acc += a * x;
            }
            out[i] = acc;
        }
        out
    }

    pub fn col(&self, j: usize) -> Vec<Complex64> {
        (0..self.nrows).map(|i| self[(i, j)]).collect()
    }

    pub fn trace(&self) -> Complex64 {
        assert_eq!(self.nrows, self.ncols, "trace of non-square matrix");
        (0..self.nrows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest singular value.
    pub fn spectral_norm(&self) -> f64 {
        if self.nrows == 0 || self.ncols == 0 {
            return 0.0;
        }
        let s = svd(self);
        s.singular_values.first().copied().unwrap_or(0.0)
    }

    pub fn scaled(&self, a: Complex64) -> Self {
        Self {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(|z| z * a).collect(),
        }
    }

    pub fn scaled_re(&self, a: f64) -> Self {
        self.scaled(Complex64::new(a, 0.0))
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.ncols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.ncols + j]
    }
}

impl std::ops::Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols), "add dimension mismatch");
        ComplexMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl std::ops::Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols), "sub dimension mismatch");
        ComplexMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl std::ops::Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.ncols, rhs.nrows, "mul dimension mismatch");
        let mut out = ComplexMatrix::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let aik = self[(i, k)];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let rrow = &rhs.data[k * rhs.ncols..(k + 1) * rhs.ncols];
                let orow = &mut out.data[i * rhs.ncols..(i + 1) * rhs.ncols];
                for (o, b) in orow.iter_mut().zip(rrow) {
                    *o += aik * b;
                }
            }
        }
        out
    }
}

/// Hermitian matrix. Construction verifies (and then enforces exactly)
/// the symmetry, so downstream code can rely on `h[(i,j)] == conj(h[(j,i)])`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    m: ComplexMatrix,
}

impl HermitianMatrix {
    /// Wraps a square matrix after checking Hermitian symmetry to a
    /// relative tolerance of 1e-12, then symmetrizes exactly.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if m.nrows != m.ncols {
            return Err(Error::Dimension(format!(
                "hermitian matrix must be square, got {}x{}",
                m.nrows, m.ncols
            )));
        }
        let asym = (&m - &m.adjoint()).frobenius_norm();
        let scale = m.frobenius_norm().max(1.0);
        if asym > 1e-12 * scale {
            return Err(Error::InvalidInput(format!(
                "matrix is not Hermitian: asymmetry {:.3e} exceeds 1e-12 * {:.3e}",
                asym, scale
            )));
        }
        Ok(Self::symmetrize(m))
    }

    /// Symmetrizes `(m + m^H) / 2` without the tolerance check. Useful when
    /// the input is Hermitian by construction up to roundoff.
    pub fn symmetrize(m: ComplexMatrix) -> Self {
        assert_eq!(m.nrows, m.ncols, "hermitian matrix must be square");
        let n = m.nrows;
        let mut s = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            s[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
            for j in (i + 1)..n {
                let v = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
                s[(i, j)] = v;
                s[(j, i)] = v.conj();
            }
        }
        Self { m: s }
    }

    pub fn zeros(n: usize) -> Self {
        Self { m: ComplexMatrix::zeros(n, n) }
    }

    pub fn identity(n: usize) -> Self {
        Self { m: ComplexMatrix::identity(n) }
    }

    /// Rank-one Hermitian outer product `w w^H`.
    pub fn outer(w: &[Complex64]) -> Self {
        let n = w.len();
        Self::symmetrize(ComplexMatrix::from_fn(n, n, |i, j| w[i] * w[j].conj()))
    }

    pub fn dim(&self) -> usize {
        self.m.nrows
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.m[(i, j)]
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { m: &self.m + &o.m }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { m: &self.m - &o.m }
    }

    /// `self + a·o`, staying Hermitian for real `a`.
    pub fn add_scaled(&self, o: &Self, a: f64) -> Self {
        Self { m: &self.m + &o.m.scaled_re(a) }
    }

    /// Real scaling keeps the matrix Hermitian.
    pub fn scaled(&self, a: f64) -> Self {
        Self { m: self.m.scaled_re(a) }
    }

    pub fn add_scaled_identity(&self, a: f64) -> Self {
        let mut m = self.m.clone();
        for i in 0..self.dim() {
            m[(i, i)] += Complex64::new(a, 0.0);
        }
        Self { m }
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.m.frobenius_norm()
    }

    /// Largest eigenvalue magnitude (the spectral norm of a Hermitian matrix).
    pub fn spectral_norm(&self) -> f64 {
        let e = eig_hermitian(self);
        e.eigenvalues.iter().fold(0.0f64, |a, &l| a.max(l.abs()))
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let e = eig_hermitian(self);
        e.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Real quadratic form `w^H H w`.
    pub fn quadratic_form(&self, w: &[Complex64]) -> f64 {
        let hw = self.m.matvec(w);
        cdot(w, &hw).re
    }
}

/// Eigendecomposition of a Hermitian matrix: `H = V diag(l) V^H` with real
/// eigenvalues in descending order and orthonormal columns in `V`.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// `V diag(l) V^H`, for residual checks.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.nrows();
        let k = v.ncols();
        let mut out = ComplexMatrix::zeros(n, n);
        for c in 0..k {
            let l = self.eigenvalues[c];
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += v[(i, c)] * v[(j, c)].conj() * l;
                }
            }
        }
        out
    }
}

/// Thin singular value decomposition `A = U diag(s) V^H`.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub v: ComplexMatrix,
}

/// Conjugated dot product `sum conj(a_i) b_i`.
pub fn cdot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    assert_eq!(a.len(), b.len(), "cdot dimension mismatch");
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Euclidean norm of a complex vector.
pub fn vnorm(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
pub fn eig_hermitian(h: &HermitianMatrix) -> EigenDecomposition {
    let n = h.dim();
    let mut a = h.as_matrix().clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();

    if n > 1 && scale > 0.0 {
        let stop = 1e-15 * scale;
        for _sweep in 0..40 {
            let mut off = 0.0f64;
            for i in 0..n {
                for j in (i + 1)..n {
                    off += a[(i, j)].norm_sqr();
                }
            }
            if off.sqrt() <= stop {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    jacobi_rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut vals: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[j].partial_cmp(&vals[i]).unwrap().then(i.cmp(&j)));
    vals = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (c, &src) in order.iter().enumerate() {
        let mut col = v.col(src);
        normalize_phase(&mut col);
        for i in 0..n {
            vectors[(i, c)] = col[i];
        }
    }
    EigenDecomposition { eigenvalues: vals, eigenvectors: vectors }
}

// One complex Jacobi rotation zeroing a[(p, q)]; accumulates into v.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g <= 1e-300 {
        return;
    }
    let phase = apq / g; // e^{i phi}, so that a_pq * conj(phase) is real
    let n = a.nrows();

    // absorb the phase into column q (mirroring row q) so the pivot is
    // real; the diagonal entry is invariant under this conjugation
    for i in 0..n {
        if i == q {
            continue;
        }
        let x = a[(i, q)] * phase.conj();
        a[(i, q)] = x;
        a[(q, i)] = x.conj();
    }
    for i in 0..n {
        let x = v[(i, q)] * phase.conj();
        v[(i, q)] = x;
    }

    let alpha = a[(p, p)].re;
    let beta = a[(q, q)].re;
    let tau = (beta - alpha) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * c - aiq * s;
        a[(i, q)] = aip * s + aiq * c;
    }
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = apj * c - aqj * s;
        a[(q, j)] = apj * s + aqj * c;
    }
    // clean up roundoff on the pivot pair
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    a[(p, p)] = Complex64::new(app, 0.0);
    a[(q, q)] = Complex64::new(aqq, 0.0);

    for i in 0..a.nrows() {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * c - viq * s;
        v[(i, q)] = vip * s + viq * c;
    }
}

// Unit-phase normalization: the largest-magnitude entry (lowest index on
// ties) becomes real and nonnegative.
fn normalize_phase(v: &mut [Complex64]) {
    let mut best = 0usize;
    let mut best_mag = -1.0f64;
    for (i, z) in v.iter().enumerate() {
        let m = z.norm();
        if m > best_mag {
            best_mag = m;
            best = i;
        }
    }
    if best_mag <= 0.0 {
        return;
    }
    let ph = v[best] / best_mag;
    for z in v.iter_mut() {
        *z *= ph.conj();
    }
    // the pivot entry is now real up to roundoff; make it exact
    v[best] = Complex64::new(best_mag, 0.0);
}

/// Thin SVD by one-sided Jacobi on columns. For a wide matrix the
/// decomposition of the adjoint is computed and the factors swapped.
pub fn svd(a: &ComplexMatrix) -> Svd {
    assert!(a.nrows() > 0 && a.ncols() > 0, "svd of empty matrix");
    if a.nrows() < a.ncols() {
        let s = svd(&a.adjoint());
        return Svd { u: s.v, singular_values: s.singular_values, v: s.u };
    }
    let n = a.nrows();
    let m = a.ncols();
    let mut b = a.clone();
    let mut v = ComplexMatrix::identity(m);
    let eps = 1e-15;

    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..m {
            for q in (p + 1)..m {
                let mut app = 0.0f64;
                let mut aqq = 0.0f64;
                let mut apq = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    let bp = b[(i, p)];
                    let bq = b[(i, q)];
                    app += bp.norm_sqr();
                    aqq += bq.norm_sqr();
                    apq += bp.conj() * bq;
                }
                let g = apq.norm();
                if g <= eps * (app * aqq).sqrt() || g <= 1e-300 {
                    continue;
                }
                rotated = true;
                let phase = apq / g;
                // absorb phase into column q so the Gram pivot is real
                for i in 0..n {
                    let x = b[(i, q)] * phase.conj();
                    b[(i, q)] = x;
                }
                for i in 0..m {
                    let x = v[(i, q)] * phase.conj();
                    v[(i, q)] = x;
                }
                let tau = (aqq - app) / (2.0 * g);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for i in 0..n {
                    let bp = b[(i, p)];
                    let bq = b[(i, q)];
                    b[(i, p)] = bp * c - bq * s;
                    b[(i, q)] = bp * s + bq * c;
                }
                for i in 0..m {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = vp * c - vq * s;
                    v[(i, q)] = vp * s + vq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sig: Vec<f64> = (0..m).map(|j| vnorm(&b.col(j))).collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| sig[j].partial_cmp(&sig[i]).unwrap().then(i.cmp(&j)));
    sig = order.iter().map(|&j| vnorm(&b.col(j))).collect();

    let mut u = ComplexMatrix::zeros(n, m);
    let mut vv = ComplexMatrix::zeros(m, m);
    let sig_max = sig.first().copied().unwrap_or(0.0);
    for (c, &src) in order.iter().enumerate() {
        let s = sig[c];
        if s > sig_max * 1e-300 && s > 0.0 {
            let mut ucol = b.col(src);
            for z in ucol.iter_mut() {
                *z /= s;
            }
            let mut vcol = v.col(src);
            // shared phase keeps u s v^H unchanged
            let ph = dominant_phase(&ucol);
            for z in ucol.iter_mut() {
                *z *= ph.conj();
            }
            for z in vcol.iter_mut() {
                *z *= ph.conj();
            }
            for i in 0..n {
                u[(i, c)] = ucol[i];
            }
            for i in 0..m {
                vv[(i, c)] = vcol[i];
            }
        } else {
            // null column: complete u deterministically by Gram-Schmidt
            // against the columns already placed
            let mut picked = vec![Complex64::new(0.0, 0.0); n];
            for cand in 0..n {
                let mut w = vec![Complex64::new(0.0, 0.0); n];
                w[cand] = Complex64::new(1.0, 0.0);
                for _pass in 0..2 {
                    for cc in 0..c {
                        let col = u.col(cc);
                        let proj = cdot(&col, &w);
                        for i in 0..n {
                            w[i] -= col[i] * proj;
                        }
                    }
                }
                let nrm = vnorm(&w);
                if nrm > 1e-6 {
                    for z in w.iter_mut() {
                        *z /= nrm;
                    }
                    picked = w;
                    break;
                }
            }
            let vcol = v.col(src);
            for i in 0..n {
                u[(i, c)] = picked[i];
            }
            for i in 0..m {
                vv[(i, c)] = vcol[i];
            }
        }
    }
    Svd { u, singular_values: sig, v: vv }
}

fn dominant_phase(v: &[Complex64]) -> Complex64 {
    let mut best_mag = -1.0f64;
    let mut ph = Complex64::new(1.0, 0.0);
    for z in v {
        let m = z.norm();
        if m > best_mag {
            best_mag = m;
            ph = if m > 0.0 { z / m } else { Complex64::new(1.0, 0.0) };
        }
    }
    ph
}

/// Largest eigenvalue and its (phase-normalized) eigenvector.
pub fn principal_pair(h: &HermitianMatrix) -> (f64, Vec<Complex64>) {
    let e = eig_hermitian(h);
    (e.eigenvalues[0], e.eigenvectors.col(0))
}

/// Inverse square root of a positive definite Hermitian matrix:
/// returns `M` with `M R M = I`.
///
/// `pd_floor` is an absolute eigenvalue floor; when `None` it defaults to
/// `1e-10 * ||R||_2`. Any eigenvalue at or below the floor is an error.
pub fn inv_sqrt_psd(r: &HermitianMatrix, pd_floor: Option<f64>) -> Result<HermitianMatrix> {
    let e = eig_hermitian(r);
    let lmax = e.eigenvalues.first().copied().unwrap_or(0.0);
    let floor = pd_floor.unwrap_or(1e-10 * lmax.max(0.0));
    let lmin = e.eigenvalues.last().copied().unwrap_or(0.0);
    if !(lmin > floor && lmin > 0.0) {
        return Err(Error::NotPositiveDefinite { min_eig: lmin, floor });
    }
    Ok(recombine(&e.eigenvectors, &e.eigenvalues.iter().map(|l| 1.0 / l.sqrt()).collect::<Vec<_>>()))
}

/// Positive semidefinite square root; negative roundoff eigenvalues clamp
/// to zero.
pub fn sqrt_psd(r: &HermitianMatrix) -> HermitianMatrix {
    let e = eig_hermitian(r);
    recombine(&e.eigenvectors, &e.eigenvalues.iter().map(|l| l.max(0.0).sqrt()).collect::<Vec<_>>())
}

fn recombine(v: &ComplexMatrix, d: &[f64]) -> HermitianMatrix {
    let n = v.nrows();
    let mut out = ComplexMatrix::zeros(n, n);
    for c in 0..d.len() {
        if d[c] == 0.0 {
            continue;
        }
        for i in 0..n {
            let vic = v[(i, c)] * d[c];
            for j in 0..n {
                out[(i, j)] += vic * v[(j, c)].conj();
            }
        }
    }
    HermitianMatrix::symmetrize(out)
}

/// Real symmetric embedding of a Hermitian matrix:
/// `[[Re H, -Im H], [Im H, Re H]]`, side `2n`. Every eigenvalue of `H`
/// appears twice, so positive semidefiniteness is preserved both ways.
pub fn embed_hermitian(h: &HermitianMatrix) -> RealMatrix {
    let n = h.dim();
    let mut out = RealMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = h.get(i, j);
            out[(i, j)] = z.re;
            out[(n + i, n + j)] = z.re;
            out[(i, n + j)] = -z.im;
            out[(n + i, j)] = z.im;
        }
    }
    out
}

/// Isometric real vectorization of a complex matrix: column-major real
/// parts stacked over column-major imaginary parts. Preserves Euclidean
/// norms: `||vec(A)|| = ||A||_F`.
pub fn vec_isometric(a: &ComplexMatrix) -> Vec<f64> {
    let (n, m) = (a.nrows(), a.ncols());
    let mut out = Vec::with_capacity(2 * n * m);
    for j in 0..m {
        for i in 0..n {
            out.push(a[(i, j)].re);
        }
    }
    for j in 0..m {
        for i in 0..n {
            out.push(a[(i, j)].im);
        }
    }
    out
}

/// Inverse of [`vec_isometric`].
pub fn unvec_isometric(v: &[f64], nrows: usize, ncols: usize) -> ComplexMatrix {
    assert_eq!(v.len(), 2 * nrows * ncols, "isometric vector length mismatch");
    let nm = nrows * ncols;
    ComplexMatrix::from_fn(nrows, ncols, |i, j| {
        Complex64::new(v[j * nrows + i], v[nm + j * nrows + i])
    })
}

/// Isometric real vectorization of a Hermitian matrix (dimension `n^2`):
/// the diagonal, then `sqrt(2) * Re` of the strict upper triangle in
/// column-major order, then `sqrt(2) * Im` of the same entries.
/// Preserves Frobenius distances between Hermitian matrices.
pub fn hvec_hermitian(h: &HermitianMatrix) -> Vec<f64> {
    let n = h.dim();
    let s2 = std::f64::consts::SQRT_2;
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        out.push(h.get(i, i).re);
    }
    for j in 0..n {
        for i in 0..j {
            out.push(s2 * h.get(i, j).re);
        }
    }
    for j in 0..n {
        for i in 0..j {
            out.push(s2 * h.get(i, j).im);
        }
    }
    out
}

/// Inverse of [`hvec_hermitian`].
pub fn unhvec_hermitian(v: &[f64], n: usize) -> HermitianMatrix {
    assert_eq!(v.len(), n * n, "hvec length mismatch");
    let s2 = std::f64::consts::SQRT_2;
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = Complex64::new(v[i], 0.0);
    }
    let pairs = n * (n - 1) / 2;
    let mut k = 0usize;
    for j in 0..n {
        for i in 0..j {
            let re = v[n + k] / s2;
            let im = v[n + pairs + k] / s2;
            m[(i, j)] = Complex64::new(re, im);
            m[(j, i)] = Complex64::new(re, -im);
            k += 1;
        }
    }
    HermitianMatrix { m }
}
