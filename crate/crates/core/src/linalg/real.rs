//! Dense real matrices and the factorizations the conic core runs in its
//! inner loop: Cholesky, symmetric Jacobi eigendecomposition, one-sided
//! Jacobi SVD, and the scaled symmetric vectorization (svec).
//!
//! Everything here is deterministic; there is no pivoting and no
//! randomness, so a given input always factors to the same bits.

/// Dense real matrix, row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct RealMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self { nrows, ncols, data: vec![0.0; nrows * ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> f64>(nrows: usize, ncols: usize, mut f: F) -> Self {
        let mut m = Self::zeros(nrows, ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ncols, self.nrows, |i, j| self[(j, i)])
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.ncols, "matvec dimension mismatch");
        (0..self.nrows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `A^T x` without forming the transpose.
    pub fn t_matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.nrows, "t_matvec dimension mismatch");
        let mut y = vec![0.0; self.ncols];
        for i in 0..self.nrows {
            let xi = x[i];
            if xi == 0.0 {
                continue;
            }
            for (yj, aij) in y.iter_mut().zip(self.row(i)) {
                *yj += xi * aij;
            }
        }
        y
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

impl std::ops::Index<(usize, usize)> for RealMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.ncols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.ncols + j]
    }
}

impl std::ops::Mul for &RealMatrix {
    type Output = RealMatrix;
    fn mul(self, rhs: &RealMatrix) -> RealMatrix {
        assert_eq!(self.ncols, rhs.nrows, "mul dimension mismatch");
        let mut out = RealMatrix::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let aik = self[(i, k)];
                if aik == 0.0 {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow = out.row_mut(i);
                for (o, b) in orow.iter_mut().zip(rrow) {
                    *o += aik * b;
                }
            }
        }
        out
    }
}

/// Symmetric product `A^T A`, the hot spot of the interior-point normal
/// equations. Only the upper triangle is accumulated, then mirrored.
pub fn ata(a: &RealMatrix) -> RealMatrix {
    let n = a.ncols;
    let mut c = RealMatrix::zeros(n, n);
    for k in 0..a.nrows {
        let row = a.row(k);
        for i in 0..n {
            let aki = row[i];
            if aki == 0.0 {
                continue;
            }
            let crow = &mut c.data[i * n..i * n + n];
            for j in i..n {
                crow[j] += aki * row[j];
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            c.data[i * n + j] = c.data[j * n + i];
        }
    }
    c
}

/// Lower-triangular Cholesky factor of a symmetric positive definite
/// matrix; `None` when a pivot is nonpositive or not finite.
pub fn cholesky(a: &RealMatrix) -> Option<RealMatrix> {
    assert_eq!(a.nrows, a.ncols, "cholesky of non-square matrix");
    let n = a.nrows;
    let mut l = RealMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[(i, j)];
            for k in 0..j {
                sum -= l.data[i * n + k] * l.data[j * n + k];
            }
            if i == j {
                if !(sum > 0.0) || !sum.is_finite() {
                    return None;
                }
                l[(i, i)] = sum.sqrt();
            } else {
                l[(i, j)] = sum / l[(j, j)];
            }
        }
    }
    Some(l)
}

/// Solves `L y = b` in place (forward substitution, `L` lower-triangular).
pub fn solve_lower(l: &RealMatrix, b: &mut [f64]) {
    let n = l.nrows;
    for i in 0..n {
        let mut sum = b[i];
        let row = &l.data[i * n..i * n + i];
        for (k, lik) in row.iter().enumerate() {
            sum -= lik * b[k];
        }
        b[i] = sum / l[(i, i)];
    }
}

/// Solves `L^T x = b` in place (back substitution on the transposed factor).
pub fn solve_lower_transpose(l: &RealMatrix, b: &mut [f64]) {
    let n = l.nrows;
    for i in (0..n).rev() {
        let mut sum = b[i];
        for k in (i + 1)..n {
            sum -= l.data[k * n + i] * b[k];
        }
        b[i] = sum / l[(i, i)];
    }
}

/// Solves `A x = b` given the Cholesky factor of `A`.
pub fn chol_solve(l: &RealMatrix, b: &mut [f64]) {
    solve_lower(l, b);
    solve_lower_transpose(l, b);
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations:
/// `A = V diag(vals) V^T`, eigenvalues descending, stable on ties.
pub fn sym_eig(a: &RealMatrix) -> (Vec<f64>, RealMatrix) {
    assert_eq!(a.nrows, a.ncols, "sym_eig of non-square matrix");
    let n = a.nrows;
    let mut m = a.clone();
    let mut v = RealMatrix::identity(n);
    let scale = m.frobenius_norm();
    if n > 1 && scale > 0.0 {
        let stop = 1e-15 * scale;
        for _sweep in 0..40 {
            let mut off = 0.0f64;
            for i in 0..n {
                for j in (i + 1)..n {
                    off += m[(i, j)] * m[(i, j)];
                }
            }
            if off.sqrt() <= stop {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    real_jacobi_rotate(&mut m, &mut v, p, q);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].partial_cmp(&m[(i, i)]).unwrap().then(i.cmp(&j)));
    let vals: Vec<f64> = order.iter().map(|&i| m[(i, i)]).collect();
    let mut vecs = RealMatrix::zeros(n, n);
    for (c, &src) in order.iter().enumerate() {
        for i in 0..n {
            vecs[(i, c)] = v[(i, src)];
        }
    }
    (vals, vecs)
}

fn real_jacobi_rotate(a: &mut RealMatrix, v: &mut RealMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq.abs() <= 1e-300 {
        return;
    }
    let alpha = a[(p, p)];
    let beta = a[(q, q)];
    let tau = (beta - alpha) / (2.0 * apq);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let n = a.nrows;
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
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for i in 0..n {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * c - viq * s;
        v[(i, q)] = vip * s + viq * c;
    }
}

/// SVD of a square matrix by one-sided Jacobi: `A = U diag(s) V^T` with
/// singular values descending. Used for the Nesterov-Todd scaling factor.
pub fn svd_square(a: &RealMatrix) -> (RealMatrix, Vec<f64>, RealMatrix) {
    assert_eq!(a.nrows, a.ncols, "svd_square of non-square matrix");
    let n = a.nrows;
    let mut b = a.clone();
    let mut v = RealMatrix::identity(n);
    let eps = 1e-15;
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = 0.0;
                for i in 0..n {
                    let bp = b[(i, p)];
                    let bq = b[(i, q)];
                    app += bp * bp;
                    aqq += bq * bq;
                    apq += bp * bq;
                }
                if apq.abs() <= eps * (app * aqq).sqrt() || apq.abs() <= 1e-300 {
                    continue;
                }
                rotated = true;
                let tau = (aqq - app) / (2.0 * apq);
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
                for i in 0..n {
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
    let mut sig: Vec<f64> = (0..n)
        .map(|j| (0..n).map(|i| b[(i, j)] * b[(i, j)]).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sig[j].partial_cmp(&sig[i]).unwrap().then(i.cmp(&j)));
    sig = order.iter().map(|&j| (0..n).map(|i| b[(i, j)] * b[(i, j)]).sum::<f64>().sqrt()).collect();
    let mut u = RealMatrix::zeros(n, n);
    let mut vv = RealMatrix::zeros(n, n);
    for (cidx, &src) in order.iter().enumerate() {
        let s = sig[cidx];
        if s > 0.0 {
            for i in 0..n {
                u[(i, cidx)] = b[(i, src)] / s;
            }
        } else {
            // complete an orthonormal basis deterministically
            let mut w = vec![0.0; n];
            for cand in 0..n {
                w.iter_mut().for_each(|x| *x = 0.0);
                w[cand] = 1.0;
                for _pass in 0..2 {
                    for cc in 0..cidx {
                        let proj: f64 = (0..n).map(|i| u[(i, cc)] * w[i]).sum();
                        for i in 0..n {
                            w[i] -= proj * u[(i, cc)];
                        }
                    }
                }
                let nrm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
                if nrm > 1e-6 {
                    w.iter_mut().for_each(|x| *x /= nrm);
                    break;
                }
            }
            for i in 0..n {
                u[(i, cidx)] = w[i];
            }
        }
        for i in 0..n {
            vv[(i, cidx)] = v[(i, src)];
        }
    }
    (u, sig, vv)
}

/// Length of the scaled vectorization of a side-`p` symmetric matrix.
pub fn svec_len(p: usize) -> usize {
    p * (p + 1) / 2
}

/// Scaled upper-triangular vectorization: column-major upper triangle with
/// off-diagonal entries multiplied by `sqrt(2)`, so that
/// `<svec(A), svec(B)> = tr(A B)` exactly in exact arithmetic.
pub fn svec(m: &RealMatrix) -> Vec<f64> {
    assert_eq!(m.nrows, m.ncols, "svec of non-square matrix");
    let p = m.nrows;
    let s2 = std::f64::consts::SQRT_2;
    let mut out = Vec::with_capacity(svec_len(p));
    for j in 0..p {
        for i in 0..=j {
            out.push(if i == j { m[(i, j)] } else { s2 * m[(i, j)] });
        }
    }
    out
}

/// Inverse of [`svec`].
pub fn smat(v: &[f64], p: usize) -> RealMatrix {
    assert_eq!(v.len(), svec_len(p), "svec length mismatch");
    let s2 = std::f64::consts::SQRT_2;
    let mut m = RealMatrix::zeros(p, p);
    let mut k = 0;
    for j in 0..p {
        for i in 0..=j {
            if i == j {
                m[(i, j)] = v[k];
            } else {
                m[(i, j)] = v[k] / s2;
                m[(j, i)] = v[k] / s2;
            }
            k += 1;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cholesky_factors_spd() {
        let a = RealMatrix::from_fn(3, 3, |i, j| {
            let m = [[4.0, 2.0, 0.6], [2.0, 5.0, 1.0], [0.6, 1.0, 3.0]];
            m[i][j]
        });
        let l = cholesky(&a).expect("spd");
        let rec = &l * &l.transpose();
        for i in 0..3 {
            for j in 0..3 {
                assert!((rec[(i, j)] - a[(i, j)]).abs() < 1e-12);
            }
        }
        let mut b = vec![1.0, 2.0, 3.0];
        chol_solve(&l, &mut b);
        let ax = a.matvec(&b);
        assert!((ax[0] - 1.0).abs() < 1e-10 && (ax[1] - 2.0).abs() < 1e-10 && (ax[2] - 3.0).abs() < 1e-10);
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let a = RealMatrix::from_fn(2, 2, |i, j| if i == j { -1.0 } else { 0.0 });
        assert!(cholesky(&a).is_none());
    }

    #[test]
    fn sym_eig_reconstructs() {
        let a = RealMatrix::from_fn(4, 4, |i, j| 1.0 / (1.0 + i as f64 + j as f64));
        let (vals, v) = sym_eig(&a);
        for w in vals.windows(2) {
            assert!(w[0] >= w[1]);
        }
        let mut rec = RealMatrix::zeros(4, 4);
        for c in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    rec[(i, j)] += vals[c] * v[(i, c)] * v[(j, c)];
                }
            }
        }
        for i in 0..4 {
            for j in 0..4 {
                assert!((rec[(i, j)] - a[(i, j)]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn svd_square_reconstructs() {
        let a = RealMatrix::from_fn(4, 4, |i, j| ((i * 7 + j * 3) % 5) as f64 - 2.0 + 0.1 * i as f64);
        let (u, s, v) = svd_square(&a);
        let mut rec = RealMatrix::zeros(4, 4);
        for c in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    rec[(i, j)] += s[c] * u[(i, c)] * v[(j, c)];
                }
            }
        }
        for i in 0..4 {
            for j in 0..4 {
                assert!((rec[(i, j)] - a[(i, j)]).abs() < 1e-10);
            }
        }
        let gu = ata(&u);
        let gv = ata(&v);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((gu[(i, j)] - want).abs() < 1e-10);
                assert!((gv[(i, j)] - want).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn svec_is_isometric() {
        let a = RealMatrix::from_fn(3, 3, |i, j| (i + j) as f64 + if i == j { 2.0 } else { 0.0 });
        let b = RealMatrix::from_fn(3, 3, |i, j| (i as f64 - j as f64) * (i as f64 - j as f64) + 1.0);
        let sa = svec(&a);
        let sb = svec(&b);
        let ip: f64 = sa.iter().zip(&sb).map(|(x, y)| x * y).sum();
        let tr_ab = {
            let ab = &a * &b;
            (0..3).map(|i| ab[(i, i)]).sum::<f64>()
        };
        assert!((ip - tr_ab).abs() < 1e-14 * tr_ab.abs().max(1.0));
        let back = smat(&sa, 3);
        for i in 0..3 {
            for j in 0..3 {
                assert!((back[(i, j)] - a[(i, j)]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn ata_matches_explicit_product() {
        let a = RealMatrix::from_fn(4, 3, |i, j| (i as f64 + 1.0) * 0.3 - (j as f64) * 0.7);
        let c = ata(&a);
        let c2 = &a.transpose() * &a;
        for i in 0..3 {
            for j in 0..3 {
                assert!((c[(i, j)] - c2[(i, j)]).abs() < 1e-12);
            }
        }
    }
}
