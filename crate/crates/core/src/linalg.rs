//! Small dense linear-algebra kernels backing the feature computations:
//! least squares via column-pivoted Householder QR, a cyclic Jacobi
//! eigensolver for symmetric matrices, Cholesky factorization and a plain
//! square QR used for random rotation matrices.
//!
//! The matrices involved are small (at most a few thousand rows and a few
//! dozen columns), so straightforward textbook implementations are used.

use ndarray::{Array1, Array2, ArrayView1, ArrayView2};

use crate::{cst, Error, Real, Result};

/// Least-squares solution of `a x = y` (`m >= p`) by Householder QR with
/// column pivoting. Rank-deficient systems return a basic solution with the
/// pivoted-out coefficients set to zero; the call never fails on rank.
pub fn least_squares<T: Real>(a: &ArrayView2<T>, y: &ArrayView1<T>) -> Result<Array1<T>> {
    let (m, p) = a.dim();
    if m == 0 || p == 0 {
        return Err(Error::invalid("least_squares: empty matrix"));
    }
    if m < p {
        return Err(Error::invalid(format!(
            "least_squares: underdetermined system ({m} rows, {p} columns)"
        )));
    }
    if y.len() != m {
        return Err(Error::invalid("least_squares: length mismatch"));
    }

    let mut work = a.to_owned();
    let mut rhs = y.to_owned();
    let mut perm: Vec<usize> = (0..p).collect();

    // Column norms for pivot selection, downdated after each reflection and
    // recomputed when cancellation makes them unreliable.
    let mut norms_sq: Vec<T> = (0..p)
        .map(|j| work.column(j).iter().map(|&v| v * v).sum())
        .collect();
    let orig_norms_sq = norms_sq.clone();
    let recompute_tol = cst::<T>(1e-8);

    let mut diag = vec![T::zero(); p];
    for k in 0..p {
        // Pivot: bring the column with the largest remaining norm to front.
        let (jmax, _) = norms_sq
            .iter()
            .enumerate()
            .skip(k)
            .fold((k, T::neg_infinity()), |acc, (j, &n)| {
                if n > acc.1 {
                    (j, n)
                } else {
                    acc
                }
            });
        if jmax != k {
            for i in 0..m {
                work.swap((i, k), (i, jmax));
            }
            perm.swap(k, jmax);
            norms_sq.swap(k, jmax);
        }

        // Householder reflector for column k below the diagonal.
        let norm_x: T = work
            .column(k)
            .iter()
            .skip(k)
            .map(|&v| v * v)
            .sum::<T>()
            .sqrt();
        if norm_x == T::zero() {
            diag[k] = T::zero();
            continue;
        }
        let x0 = work[(k, k)];
        let alpha = if x0 >= T::zero() { -norm_x } else { norm_x };
        let mut v = vec![T::zero(); m - k];
        v[0] = x0 - alpha;
        for i in k + 1..m {
            v[i - k] = work[(i, k)];
        }
        let vtv: T = v.iter().map(|&w| w * w).sum();
        diag[k] = alpha;
        work[(k, k)] = alpha;
        for i in k + 1..m {
            work[(i, k)] = T::zero();
        }
        if vtv > T::zero() {
            let two = cst::<T>(2.0);
            for j in k + 1..p {
                let dot: T = (k..m).map(|i| v[i - k] * work[(i, j)]).sum();
                let scale = two * dot / vtv;
                for i in k..m {
                    let delta = scale * v[i - k];
                    work[(i, j)] = work[(i, j)] - delta;
                }
            }
            let dot: T = (k..m).map(|i| v[i - k] * rhs[i]).sum();
            let scale = two * dot / vtv;
            for i in k..m {
                let delta = scale * v[i - k];
                rhs[i] = rhs[i] - delta;
            }
        }

        // Downdate remaining column norms.
        for j in k + 1..p {
            let t = work[(k, j)];
            norms_sq[j] = norms_sq[j] - t * t;
            if norms_sq[j] < recompute_tol * orig_norms_sq[j] {
                norms_sq[j] = work.column(j).iter().skip(k + 1).map(|&v| v * v).sum();
            }
        }
    }

    // Numerical rank from the pivoted diagonal.
    let dmax = diag.iter().fold(T::zero(), |acc, &d| acc.max(d.abs()));
    let rank_tol = dmax * T::epsilon() * cst::<T>(m.max(p) as f64);
    let rank = diag.iter().take_while(|d| d.abs() > rank_tol).count();

    // Back substitution on the leading rank x rank triangle.
    let mut beta_p = vec![T::zero(); p];
    for k in (0..rank).rev() {
        let mut acc = rhs[k];
        for j in k + 1..rank {
            acc = acc - work[(k, j)] * beta_p[j];
        }
        beta_p[k] = acc / diag[k];
    }

    let mut beta = Array1::zeros(p);
    for (k, &col) in perm.iter().enumerate() {
        beta[col] = beta_p[k];
    }
    Ok(beta)
}

/// Eigenvalues (descending) and matching orthonormal eigenvectors (columns)
/// of a symmetric matrix, by the cyclic Jacobi method.
pub fn eigh<T: Real>(a: &ArrayView2<T>) -> Result<(Array1<T>, Array2<T>)> {
    let n = a.nrows();
    if n == 0 || a.ncols() != n {
        return Err(Error::invalid("eigh: matrix must be square and non-empty"));
    }
    let mut m = a.to_owned();
    let mut v: Array2<T> = Array2::eye(n);

    let frob: T = m.iter().map(|&x| x * x).sum::<T>().sqrt();
    let tol = frob * T::epsilon() * cst::<T>(n as f64);
    let half = cst::<T>(0.5);

    for _sweep in 0..60 {
        let off: T = {
            let mut s = T::zero();
            for p in 0..n {
                for q in p + 1..n {
                    s += m[(p, q)] * m[(p, q)];
                }
            }
            s.sqrt()
        };
        if off <= tol || n == 1 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq.abs() <= tol * cst::<T>(1e-3) {
                    continue;
                }
                let theta = half * (m[(q, q)] - m[(p, p)]) / apq;
                let t = {
                    let sign = if theta >= T::zero() { T::one() } else { -T::one() };
                    sign / (theta.abs() + (T::one() + theta * theta).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;

                for i in 0..n {
                    let mip = m[(i, p)];
                    let miq = m[(i, q)];
                    m[(i, p)] = c * mip - s * miq;
                    m[(i, q)] = s * mip + c * miq;
                }
                for j in 0..n {
                    let mpj = m[(p, j)];
                    let mqj = m[(q, j)];
                    m[(p, j)] = c * mpj - s * mqj;
                    m[(q, j)] = s * mpj + c * mqj;
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = c * vip - s * viq;
                    v[(i, q)] = s * vip + c * viq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m[(j, j)]
            .partial_cmp(&m[(i, i)])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(i.cmp(&j))
    });
    let values = Array1::from_iter(order.iter().map(|&i| m[(i, i)]));
    let mut vectors = Array2::zeros((n, n));
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, dst)] = v[(i, src)];
        }
    }
    Ok((values, vectors))
}

/// Lower Cholesky factor of a symmetric positive-definite matrix, or `None`
/// when the matrix is not positive definite.
pub fn cholesky<T: Real>(a: &ArrayView2<T>) -> Option<Array2<T>> {
    let n = a.nrows();
    if n == 0 || a.ncols() != n {
        return None;
    }
    let mut l: Array2<T> = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[(i, j)];
            for k in 0..j {
                s = s - l[(i, k)] * l[(j, k)];
            }
            if i == j {
                if s <= T::zero() || !s.is_finite() {
                    return None;
                }
                l[(i, j)] = s.sqrt();
            } else {
                l[(i, j)] = s / l[(j, j)];
            }
        }
    }
    Some(l)
}

/// Solve `L L^T x = b` given the lower Cholesky factor.
pub fn cho_solve<T: Real>(l: &Array2<T>, b: &ArrayView1<T>) -> Array1<T> {
    let n = l.nrows();
    let mut x = b.to_owned();
    for i in 0..n {
        let mut s = x[i];
        for k in 0..i {
            s = s - l[(i, k)] * x[k];
        }
        x[i] = s / l[(i, i)];
    }
    for i in (0..n).rev() {
        let mut s = x[i];
        for k in i + 1..n {
            s = s - l[(k, i)] * x[k];
        }
        x[i] = s / l[(i, i)];
    }
    x
}

/// Forward solve `L z = b`; `|z|^2` is the Mahalanobis quadratic form.
pub fn forward_solve<T: Real>(l: &Array2<T>, b: &[T], out: &mut [T]) {
    let n = l.nrows();
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s = s - l[(i, k)] * out[k];
        }
        out[i] = s / l[(i, i)];
    }
}

/// `ln det(L L^T) = 2 sum ln l_ii`.
pub fn cho_log_det<T: Real>(l: &Array2<T>) -> T {
    let two = cst::<T>(2.0);
    two * (0..l.nrows()).map(|i| l[(i, i)].ln()).sum::<T>()
}

/// Unpivoted Householder QR of a square matrix, with `Q` explicit.
pub fn qr_square<T: Real>(a: &ArrayView2<T>) -> Result<(Array2<T>, Array2<T>)> {
    let n = a.nrows();
    if n == 0 || a.ncols() != n {
        return Err(Error::invalid("qr_square: matrix must be square"));
    }
    let mut r = a.to_owned();
    let mut qt: Array2<T> = Array2::eye(n);
    let two = cst::<T>(2.0);

    for k in 0..n {
        let norm_x: T = (k..n).map(|i| r[(i, k)] * r[(i, k)]).sum::<T>().sqrt();
        if norm_x == T::zero() {
            continue;
        }
        let x0 = r[(k, k)];
        let alpha = if x0 >= T::zero() { -norm_x } else { norm_x };
        let mut v = vec![T::zero(); n - k];
        v[0] = x0 - alpha;
        for i in k + 1..n {
            v[i - k] = r[(i, k)];
        }
        let vtv: T = v.iter().map(|&w| w * w).sum();
        if vtv == T::zero() {
            continue;
        }
        for j in 0..n {
            if j >= k {
                let dot: T = (k..n).map(|i| v[i - k] * r[(i, j)]).sum();
                let scale = two * dot / vtv;
                for i in k..n {
                    let delta = scale * v[i - k];
                    r[(i, j)] = r[(i, j)] - delta;
                }
            }
            let dot: T = (k..n).map(|i| v[i - k] * qt[(i, j)]).sum();
            let scale = two * dot / vtv;
            for i in k..n {
                let delta = scale * v[i - k];
                qt[(i, j)] = qt[(i, j)] - delta;
            }
        }
        r[(k, k)] = alpha;
        for i in k + 1..n {
            r[(i, k)] = T::zero();
        }
    }
    Ok((qt.t().to_owned(), r))
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant<T: Real>(a: &ArrayView2<T>) -> Result<T> {
    let n = a.nrows();
    if n == 0 || a.ncols() != n {
        return Err(Error::invalid("determinant: matrix must be square"));
    }
    let mut m = a.to_owned();
    let mut det = T::one();
    for k in 0..n {
        let (piv, pmax) = (k..n).fold((k, T::neg_infinity()), |acc, i| {
            let v = m[(i, k)].abs();
            if v > acc.1 {
                (i, v)
            } else {
                acc
            }
        });
        if pmax == T::zero() {
            return Ok(T::zero());
        }
        if piv != k {
            for j in 0..n {
                m.swap((k, j), (piv, j));
            }
            det = -det;
        }
        det *= m[(k, k)];
        for i in k + 1..n {
            let f = m[(i, k)] / m[(k, k)];
            for j in k..n {
                let delta = f * m[(k, j)];
                m[(i, j)] = m[(i, j)] - delta;
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::array;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn random_matrix(m: usize, n: usize, seed: u64) -> Array2<f64> {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        Array2::from_shape_fn((m, n), |_| rng.random_range(-1.0..1.0))
    }

    #[test]
    fn least_squares_recovers_exact_model() {
        let a = {
            let mut a = random_matrix(60, 5, 1);
            a.column_mut(0).fill(1.0);
            a
        };
        let beta_true = array![3.0, -2.0, 0.5, 7.0, -0.25];
        let y = a.dot(&beta_true);
        let beta = least_squares(&a.view(), &y.view()).unwrap();
        for (b, t) in beta.iter().zip(beta_true.iter()) {
            assert_abs_diff_eq!(b, t, epsilon = 1e-10);
        }
    }

    #[test]
    fn least_squares_handles_rank_deficiency() {
        // Column 2 duplicates column 1; the fitted values must still match.
        let mut a = random_matrix(40, 4, 2);
        let dup = a.column(1).to_owned();
        a.column_mut(2).assign(&dup);
        let y = a.dot(&array![1.0, 2.0, 0.0, -1.0]);
        let beta = least_squares(&a.view(), &y.view()).unwrap();
        let fitted = a.dot(&beta);
        for (f, t) in fitted.iter().zip(y.iter()) {
            assert_abs_diff_eq!(f, t, epsilon = 1e-8);
        }
    }

    #[test]
    fn least_squares_minimizes_residual() {
        let a = random_matrix(50, 3, 3);
        let y = Array1::from_iter((0..50).map(|i| (i as f64 * 0.37).sin()));
        let beta = least_squares(&a.view(), &y.view()).unwrap();
        // The residual must be orthogonal to the column space.
        let r = &y - &a.dot(&beta);
        for j in 0..3 {
            let dot: f64 = a.column(j).iter().zip(r.iter()).map(|(x, e)| x * e).sum();
            assert_abs_diff_eq!(dot, 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn eigh_known_matrix() {
        let a = array![[2.0, 1.0], [1.0, 2.0]];
        let (vals, vecs) = eigh(&a.view()).unwrap();
        assert_abs_diff_eq!(vals[0], 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(vals[1], 1.0, epsilon = 1e-12);
        // Reconstruct.
        let lam = Array2::from_diag(&vals);
        let rec = vecs.dot(&lam).dot(&vecs.t());
        for (x, y) in rec.iter().zip(a.iter()) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-12);
        }
    }

    #[test]
    fn eigh_random_symmetric() {
        let b = random_matrix(8, 8, 4);
        let a = &b + &b.t();
        let (vals, vecs) = eigh(&a.view()).unwrap();
        // Orthonormality.
        let vtv = vecs.t().dot(&vecs);
        for i in 0..8 {
            for j in 0..8 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(vtv[(i, j)], expect, epsilon = 1e-10);
            }
        }
        // Descending order and reconstruction.
        for w in vals.as_slice().unwrap().windows(2) {
            assert!(w[0] >= w[1]);
        }
        let rec = vecs.dot(&Array2::from_diag(&vals)).dot(&vecs.t());
        for (x, y) in rec.iter().zip(a.iter()) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-9);
        }
    }

    #[test]
    fn cholesky_round_trip() {
        let b = random_matrix(6, 6, 5);
        let a = b.dot(&b.t()) + Array2::<f64>::eye(6) * 6.0;
        let l = cholesky(&a.view()).unwrap();
        let rec = l.dot(&l.t());
        for (x, y) in rec.iter().zip(a.iter()) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-10);
        }
        let rhs = Array1::from_iter((0..6).map(|i| i as f64 - 2.5));
        let x = cho_solve(&l, &rhs.view());
        let back = a.dot(&x);
        for (u, v) in back.iter().zip(rhs.iter()) {
            assert_abs_diff_eq!(u, v, epsilon = 1e-9);
        }
        // log det against direct determinant.
        let det = determinant(&a.view()).unwrap();
        assert_abs_diff_eq!(cho_log_det(&l), det.ln(), epsilon = 1e-9);
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let a = array![[1.0, 2.0], [2.0, 1.0]]; // eigenvalues 3, -1
        assert!(cholesky(&a.view()).is_none());
    }

    #[test]
    fn qr_square_factorizes() {
        let a = random_matrix(7, 7, 6);
        let (q, r) = qr_square(&a.view()).unwrap();
        let qtq = q.t().dot(&q);
        for i in 0..7 {
            for j in 0..7 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(qtq[(i, j)], expect, epsilon = 1e-12);
            }
        }
        let rec = q.dot(&r);
        for (x, y) in rec.iter().zip(a.iter()) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-12);
        }
        // R upper triangular.
        for i in 0..7 {
            for j in 0..i {
                assert_abs_diff_eq!(r[(i, j)], 0.0, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn determinant_known() {
        let a = array![[1.0, 2.0], [3.0, 4.0]];
        assert_abs_diff_eq!(determinant(&a.view()).unwrap(), -2.0, epsilon = 1e-12);
        let id = Array2::<f64>::eye(5);
        assert_abs_diff_eq!(determinant(&id.view()).unwrap(), 1.0, epsilon = 1e-12);
    }
}
