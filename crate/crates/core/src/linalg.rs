//! Dense complex matrix kernels: Hermitian eigensolver, eigendecomposition
//! of normal matrices, SVD, polar factors, numerical null spaces and
//! subspace arithmetic.
//!
//! Everything operates on `DMatrix<Complex<f64>>`.  The eigensolver contract
//! is what matters, not the algorithm: a normal matrix must come back as
//! `P · diag(λ) · P*` with a Frobenius-relative residual below
//! `eps_residual`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::tol::ToleranceConfig;

pub type Scalar = Complex<f64>;
pub type Matrix = DMatrix<Scalar>;
pub type Vector = DVector<Scalar>;

const ONE: Scalar = Complex::new(1.0, 0.0);

// ── basic helpers ───────────────────────────────────────────────────

pub fn identity(n: usize) -> Matrix {
    Matrix::identity(n, n)
}

pub fn zeros(r: usize, c: usize) -> Matrix {
    Matrix::zeros(r, c)
}

/// Matrix from rows of real entries.
pub fn from_real_rows(rows: &[&[f64]]) -> Matrix {
    let r = rows.len();
    let c = if r == 0 { 0 } else { rows[0].len() };
    Matrix::from_fn(r, c, |i, j| Complex::new(rows[i][j], 0.0))
}

/// Frobenius inner product `⟨a, b⟩ = tr(b* a) = Σ a_ij conj(b_ij)`.
pub fn fro_inner(a: &Matrix, b: &Matrix) -> Scalar {
    debug_assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum()
}

/// `‖m* m − I‖_F`, the distance from having orthonormal columns.
pub fn unitary_defect(m: &Matrix) -> f64 {
    let k = m.ncols();
    (m.adjoint() * m - identity(k)).norm()
}

pub fn is_unitary(m: &Matrix, tol: f64) -> bool {
    m.is_square() && unitary_defect(m) <= tol * (m.ncols() as f64).sqrt().max(1.0)
}

pub fn symmetry_defect(m: &Matrix) -> f64 {
    (m - m.transpose()).norm()
}

pub fn skewness_defect(m: &Matrix) -> f64 {
    (m + m.transpose()).norm()
}

pub fn hermitian_defect(m: &Matrix) -> f64 {
    (m - m.adjoint()).norm()
}

pub fn all_finite(m: &Matrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Block-diagonal assembly of square blocks.
pub fn direct_sum(blocks: &[Matrix]) -> Matrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = zeros(n, n);
    let mut at = 0;
    for b in blocks {
        out.view_mut((at, at), b.shape()).copy_from(b);
        at += b.nrows();
    }
    out
}

/// Horizontal concatenation of frames with a common row count.
pub fn hstack(parts: &[Matrix]) -> Matrix {
    let rows = parts.first().map_or(0, |p| p.nrows());
    let cols: usize = parts.iter().map(|p| p.ncols()).sum();
    let mut out = zeros(rows, cols);
    let mut at = 0;
    for p in parts {
        out.view_mut((0, at), p.shape()).copy_from(p);
        at += p.ncols();
    }
    out
}

pub fn block(m: &Matrix, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
    m.view((r0, c0), (rows, cols)).into_owned()
}

// ── Hermitian eigensolver (cyclic Jacobi) ───────────────────────────

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and the unitary matrix of
/// eigenvectors as columns.  The input is symmetrized first, so slightly
/// drifted compressions are fine.
pub fn hermitian_eig(m: &Matrix) -> (Vec<f64>, Matrix) {
    let n = m.nrows();
    assert!(m.is_square(), "hermitian_eig needs a square matrix");
    let mut a = (m + m.adjoint()).scale(0.5);
    let mut v = identity(n);
    if n > 1 {
        let scale = a.norm().max(f64::MIN_POSITIVE);
        let tol = 1e-15 * scale;
        for _sweep in 0..64 {
            let mut off = 0.0_f64;
            for p in 0..n - 1 {
                for q in p + 1..n {
                    off += a[(p, q)].norm_sqr();
                }
            }
            if off.sqrt() <= tol {
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    let apq = a[(p, q)];
                    let b = apq.norm();
                    if b <= 1e-300 {
                        continue;
                    }
                    // Unitary 2x2 rotation G = [[c, -s e^{iφ}], [s e^{-iφ}, c]]
                    // zeroing a_pq, with φ the phase of a_pq.
                    let phase = apq / b;
                    let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * b);
                    let t = -tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let gpq = Complex::new(-s, 0.0) * phase;
                    let gqp = Complex::new(s, 0.0) * phase.conj();
                    // columns: [col_p, col_q] <- [c col_p + gqp col_q, gpq col_p + c col_q]
                    for i in 0..n {
                        let aip = a[(i, p)];
                        let aiq = a[(i, q)];
                        a[(i, p)] = aip * c + aiq * gqp;
                        a[(i, q)] = aip * gpq + aiq * c;
                    }
                    for j in 0..n {
                        let apj = a[(p, j)];
                        let aqj = a[(q, j)];
                        a[(p, j)] = apj * c + aqj * gqp.conj();
                        a[(q, j)] = apj * gpq.conj() + aqj * c;
                    }
                    for i in 0..n {
                        let vip = v[(i, p)];
                        let viq = v[(i, q)];
                        v[(i, p)] = vip * c + viq * gqp;
                        v[(i, q)] = vip * gpq + viq * c;
                    }
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vecs = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    (vals, vecs)
}

// ── eigendecomposition of normal matrices ───────────────────────────

/// Eigendecomposition `m = P diag(λ) P*` of a normal matrix.
///
/// Splits `m = H + iS` into its commuting Hermitian parts and refines a
/// joint eigenbasis by alternating compressions, which is exact for normal
/// input and avoids any non-normal Schur machinery.
pub fn eig_normal(m: &Matrix, cfg: &ToleranceConfig) -> Result<(Vec<Scalar>, Matrix)> {
    let n = m.nrows();
    let scale = m.norm();
    let comm = (m * m.adjoint() - m.adjoint() * m).norm();
    if comm > cfg.eps_residual * scale * scale {
        return Err(Error::NotNormal {
            residual: comm,
            bound: cfg.eps_residual * scale * scale,
        });
    }
    let h = (m + m.adjoint()).scale(0.5);
    let s = (m - m.adjoint()).scale(0.5) * Complex::new(0.0, -1.0);
    let gap_tol = 1e-10 * scale.max(1.0);

    // Worklist of (frame, split on H next?, other part already constant?)
    let mut work: Vec<(Matrix, bool, bool)> = vec![(identity(n), true, false)];
    let mut done: Vec<Matrix> = Vec::new();
    while let Some((frame, by_h, other_constant)) = work.pop() {
        let k = frame.ncols();
        if k <= 1 {
            done.push(frame);
            continue;
        }
        let part = if by_h { &h } else { &s };
        let a = frame.adjoint() * part * &frame;
        let (vals, vecs) = hermitian_eig(&a);
        let rotated = &frame * &vecs;
        let mut start = 0;
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for i in 1..k {
            if vals[i] - vals[i - 1] > gap_tol {
                groups.push((start, i));
                start = i;
            }
        }
        groups.push((start, k));
        if groups.len() == 1 {
            if other_constant {
                done.push(rotated);
            } else {
                work.push((rotated, !by_h, true));
            }
        } else {
            for (lo, hi) in groups {
                work.push((block(&rotated, 0, lo, n, hi - lo), !by_h, false));
            }
        }
    }
    let p = hstack(&done);
    let eigs: Vec<Scalar> = (0..n)
        .map(|j| {
            let col = p.column(j);
            (m * col).dotc(&p.column(j).into_owned()).conj()
        })
        .collect();
    let residual = (m * &p - &p * Matrix::from_diagonal(&DVector::from_vec(eigs.clone()))).norm();
    if residual > cfg.eps_residual * scale.max(1.0) {
        return Err(Error::NoConvergence("eig_normal"));
    }
    Ok((eigs, p))
}

// ── Householder reflectors, QR, bidiagonalization ───────────────────

/// Complex elementary reflector `Z = I - t v v*` with `Z x = β e₁`,
/// `β` real, `v[0] = 1` and `Z` unitary (`Z⁻¹ = Z* = I - conj(t) v v*`).
/// Returns `(t, β, v)`; `t = 0` means no-op.
fn house(x: &[Scalar]) -> (Scalar, f64, Vec<Scalar>) {
    let alpha = x[0];
    let xnorm: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if xnorm == 0.0 && alpha.im == 0.0 {
        return (Scalar::new(0.0, 0.0), alpha.re, vec![ONE; x.len()]);
    }
    let anorm = (alpha.norm_sqr() + xnorm * xnorm).sqrt();
    let beta = -anorm.copysign(alpha.re);
    let t = Scalar::new((beta - alpha.re) / beta, alpha.im / beta);
    let denom = alpha - Scalar::new(beta, 0.0);
    let mut v = vec![ONE; x.len()];
    for (vi, xi) in v.iter_mut().zip(x.iter()).skip(1) {
        *vi = xi / denom;
    }
    (t, beta, v)
}

/// `M ← (I - τ v v*) M` restricted to rows `r0..` and columns `c0..`.
fn apply_house_left(m: &mut Matrix, tau: Scalar, v: &[Scalar], r0: usize, c0: usize) {
    if tau.norm_sqr() == 0.0 {
        return;
    }
    let cols = m.ncols();
    for j in c0..cols {
        let mut dot = Scalar::new(0.0, 0.0);
        for (k, vk) in v.iter().enumerate() {
            dot += vk.conj() * m[(r0 + k, j)];
        }
        let f = tau * dot;
        for (k, vk) in v.iter().enumerate() {
            m[(r0 + k, j)] -= f * vk;
        }
    }
}

/// `M ← M (I - τ v v*)` restricted to columns `c0..` and rows `r0..`.
fn apply_house_right(m: &mut Matrix, tau: Scalar, v: &[Scalar], r0: usize, c0: usize) {
    if tau.norm_sqr() == 0.0 {
        return;
    }
    let rows = m.nrows();
    for i in r0..rows {
        let mut dot = Scalar::new(0.0, 0.0);
        for (k, vk) in v.iter().enumerate() {
            dot += m[(i, c0 + k)] * vk;
        }
        let f = tau * dot;
        for (k, vk) in v.iter().enumerate() {
            m[(i, c0 + k)] -= f * vk.conj();
        }
    }
}

/// Householder QR of an r×c matrix with r ≥ c: `m = Q R` with `Q` r×c
/// having orthonormal columns and `R` c×c upper triangular with real
/// diagonal.
pub fn householder_qr(m: &Matrix) -> (Matrix, Matrix) {
    let (rows, cols) = m.shape();
    assert!(rows >= cols, "householder_qr needs rows >= cols");
    let mut a = m.clone();
    let mut reflectors: Vec<(Scalar, Vec<Scalar>)> = Vec::with_capacity(cols);
    for k in 0..cols {
        let x: Vec<Scalar> = (k..rows).map(|i| a[(i, k)]).collect();
        let (tau, beta, v) = house(&x);
        apply_house_left(&mut a, tau, &v, k, k + 1);
        a[(k, k)] = Scalar::new(beta, 0.0);
        for i in k + 1..rows {
            a[(i, k)] = Scalar::new(0.0, 0.0);
        }
        reflectors.push((tau, v));
    }
    let mut q = zeros(rows, cols);
    for k in 0..cols.min(rows) {
        q[(k, k)] = ONE;
    }
    for k in (0..cols).rev() {
        let (tau, v) = &reflectors[k];
        // Q ← H_k* Q with H* = I - conj(τ) v v*
        apply_house_left(&mut q, tau.conj(), v, k, 0);
    }
    let r = a.view((0, 0), (cols, cols)).into_owned();
    (q, r)
}

/// Reduce a square complex matrix to real upper bidiagonal form
/// `m = U B V*`; returns `(U, d, e, V)` with `d` the diagonal and `e` the
/// superdiagonal of `B`.
fn bidiagonalize(m: &Matrix) -> (Matrix, Vec<f64>, Vec<f64>, Matrix) {
    let n = m.nrows();
    let mut a = m.clone();
    let mut u = identity(n);
    let mut v = identity(n);
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n.saturating_sub(1)];
    for k in 0..n {
        // left reflector: zero column k below the diagonal, make d[k] real
        let x: Vec<Scalar> = (k..n).map(|i| a[(i, k)]).collect();
        let (tau, beta, hv) = house(&x);
        apply_house_left(&mut a, tau, &hv, k, k + 1);
        d[k] = beta;
        a[(k, k)] = Scalar::new(beta, 0.0);
        for i in k + 1..n {
            a[(i, k)] = Scalar::new(0.0, 0.0);
        }
        // U ← U H* keeps m = U A V* invariant
        if tau.norm_sqr() != 0.0 {
            let rows = n;
            for i in 0..rows {
                let mut dot = Scalar::new(0.0, 0.0);
                for (idx, vk) in hv.iter().enumerate() {
                    dot += u[(i, k + idx)] * vk;
                }
                let f = tau.conj() * dot;
                for (idx, vk) in hv.iter().enumerate() {
                    u[(i, k + idx)] -= f * vk.conj();
                }
            }
        }
        if k + 1 < n {
            // right reflector on row k: zero entries beyond the superdiagonal
            let y: Vec<Scalar> = (k + 1..n).map(|j| a[(k, j)].conj()).collect();
            let (tau_r, beta_r, wv) = house(&y);
            // A ← A Ĥ* with Ĥ = I - τ_r w w*: Ĥ* = I - conj(τ_r) w w*
            apply_house_right(&mut a, tau_r.conj(), &wv, k + 1, k + 1);
            e[k] = beta_r;
            a[(k, k + 1)] = Scalar::new(beta_r, 0.0);
            for j in k + 2..n {
                a[(k, j)] = Scalar::new(0.0, 0.0);
            }
            // V ← V Ĥ*
            if tau_r.norm_sqr() != 0.0 {
                for i in 0..n {
                    let mut dot = Scalar::new(0.0, 0.0);
                    for (idx, wk) in wv.iter().enumerate() {
                        dot += v[(i, k + 1 + idx)] * wk;
                    }
                    let f = tau_r.conj() * dot;
                    for (idx, wk) in wv.iter().enumerate() {
                        v[(i, k + 1 + idx)] -= f * wk.conj();
                    }
                }
            }
        }
    }
    (u, d, e, v)
}

#[inline]
fn rotate_cols(m: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    for i in 0..m.nrows() {
        let x = m[(i, p)];
        let z = m[(i, q)];
        m[(i, p)] = x * c + z * s;
        m[(i, q)] = z * c - x * s;
    }
}

fn hypot2(a: f64, b: f64) -> f64 {
    a.hypot(b)
}

/// Implicit-shift QR iteration on a real bidiagonal, accumulating the
/// rotations into the complex factors; Golub–Kahan–Reinsch with the usual
/// splitting and zero-diagonal cancellation handling.
fn bidiagonal_qr(d: &mut [f64], e: &mut [f64], u: &mut Matrix, v: &mut Matrix) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    let mut anorm = 0.0_f64;
    for i in 0..n {
        let prev = if i > 0 { e[i - 1].abs() } else { 0.0 };
        anorm = anorm.max(d[i].abs() + prev);
    }
    let negligible = |x: f64| x.abs() <= f64::EPSILON * anorm;
    for k in (0..n).rev() {
        let mut converged = false;
        for _iter in 0..60 {
            // find split point l: block l..=k has nonzero superdiagonals
            let mut l = k;
            let mut cancel = false;
            loop {
                if l == 0 {
                    break;
                }
                if negligible(e[l - 1]) {
                    e[l - 1] = 0.0;
                    break;
                }
                if negligible(d[l - 1]) {
                    cancel = true;
                    break;
                }
                l -= 1;
            }
            if cancel {
                // d[l-1] ~ 0: chase e[l-1] away with row rotations into U
                let lm1 = l - 1;
                let mut c = 0.0_f64;
                let mut s = 1.0_f64;
                for i in l..=k {
                    let f = s * e[i - 1];
                    e[i - 1] *= c;
                    if negligible(f) {
                        break;
                    }
                    let g = d[i];
                    let h = hypot2(f, g);
                    d[i] = h;
                    c = g / h;
                    s = -f / h;
                    rotate_cols(u, lm1, i, c, s);
                }
            }
            let z = d[k];
            if l == k {
                if z < 0.0 {
                    d[k] = -z;
                    for i in 0..v.nrows() {
                        v[(i, k)] = -v[(i, k)];
                    }
                }
                converged = true;
                break;
            }
            // Wilkinson shift from the trailing 2×2 of BᵀB
            let x = d[l];
            let y = d[k - 1];
            let g0 = if k >= 2 { e[k - 2] } else { 0.0 };
            let h0 = e[k - 1];
            let mut f = ((y - z) * (y + z) + (g0 - h0) * (g0 + h0)) / (2.0 * h0 * y);
            let g1 = hypot2(f, 1.0);
            let denom = f + g1.copysign(f);
            f = ((x - z) * (x + z) + h0 * (y / denom - h0)) / x;
            // bulge-chasing sweep
            let mut c = 1.0_f64;
            let mut s = 1.0_f64;
            let mut xx = x;
            let mut gg;
            for j in l..k {
                let i = j + 1;
                let mut g = e[j];
                let mut yy = d[i];
                let h = s * g;
                g *= c;
                let zz = hypot2(f, h);
                if j > l {
                    e[j - 1] = zz;
                }
                c = f / zz;
                s = h / zz;
                f = xx * c + g * s;
                gg = g * c - xx * s;
                let hh = yy * s;
                yy *= c;
                rotate_cols(v, j, i, c, s);
                let zz2 = hypot2(f, hh);
                d[j] = zz2;
                if zz2 != 0.0 {
                    c = f / zz2;
                    s = hh / zz2;
                }
                f = c * gg + s * yy;
                xx = c * yy - s * gg;
                rotate_cols(u, j, i, c, s);
            }
            e[k - 1] = f;
            d[k] = xx;
        }
        if !converged {
            return Err(Error::NoConvergence("bidiagonal svd"));
        }
    }
    Ok(())
}

// ── SVD and polar factor ────────────────────────────────────────────

/// Singular value decomposition of a square complex matrix.
fn svd_core(m: &Matrix) -> Result<(Matrix, Vec<f64>, Matrix)> {
    let n = m.nrows();
    if n == 0 {
        return Ok((zeros(0, 0), Vec::new(), zeros(0, 0)));
    }
    let (mut u, mut d, mut e, mut v) = bidiagonalize(m);
    if bidiagonal_qr(&mut d, &mut e, &mut u, &mut v).is_err() {
        return svd_jacobi(m);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[j].partial_cmp(&d[i]).unwrap());
    let s: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let up = Matrix::from_fn(n, n, |i, j| u[(i, order[j])]);
    let vp = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok((up, s, vp))
}

/// Singular value decomposition `m = U diag(s) W*` of a square matrix,
/// singular values in descending order, `U` and `W` unitary.
pub fn svd(m: &Matrix) -> Result<(Matrix, Vec<f64>, Matrix)> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(m.nrows(), m.ncols()));
    }
    svd_core(m)
}

/// Thin SVD `m = U diag(s) V*` for an r×c matrix with r ≥ c
/// (U: r×c, V: c×c), descending singular values.
fn svd_thin(m: &Matrix) -> Result<(Matrix, Vec<f64>, Matrix)> {
    let (rows, cols) = m.shape();
    assert!(rows >= cols, "svd_thin needs rows >= cols");
    if rows == cols {
        return svd_core(m);
    }
    let (q, r) = householder_qr(m);
    let (ur, s, v) = svd_core(&r)?;
    Ok((q * ur, s, v))
}

/// One-sided Jacobi SVD; slower but unconditionally convergent backstop.
fn svd_jacobi(m: &Matrix) -> Result<(Matrix, Vec<f64>, Matrix)> {
    let (r, c) = m.shape();
    let mut a = m.clone();
    let mut v = identity(c);
    let scale = a.norm().max(f64::MIN_POSITIVE);
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..c.saturating_sub(1) {
            for q in p + 1..c {
                let app: f64 = a.column(p).norm_squared();
                let aqq: f64 = a.column(q).norm_squared();
                // Gram entry (A*A)[p,q]
                let apq: Scalar = a.column(p).dotc(&a.column(q).into_owned());
                let b = apq.norm();
                if b <= 1e-30 * scale * scale {
                    continue;
                }
                rotated = true;
                let phase = apq / b;
                let tau = (aqq - app) / (2.0 * b);
                let t = -tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let cc = 1.0 / (1.0 + t * t).sqrt();
                let ss = t * cc;
                let gpq = Complex::new(-ss, 0.0) * phase;
                let gqp = Complex::new(ss, 0.0) * phase.conj();
                for i in 0..r {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * cc + aiq * gqp;
                    a[(i, q)] = aip * gpq + aiq * cc;
                }
                for i in 0..c {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * cc + viq * gqp;
                    v[(i, q)] = vip * gpq + viq * cc;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    // Column norms are the singular values; normalize to get U.
    let mut cols: Vec<(f64, usize)> = (0..c).map(|j| (a.column(j).norm(), j)).collect();
    cols.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());
    let s: Vec<f64> = cols.iter().map(|(n, _)| *n).collect();
    let v_sorted = Matrix::from_fn(c, c, |i, j| v[(i, cols[j].1)]);
    let mut u = Matrix::zeros(r, c);
    for j in 0..c {
        let idx = cols[j].1;
        if s[j] > 1e-300 * scale {
            let col = a.column(idx) / Complex::new(s[j], 0.0);
            u.set_column(j, &col);
        }
    }
    // Complete zero-singular-value columns of U to an orthonormal set.
    complete_orthonormal(&mut u, s.iter().filter(|&&x| x > 1e-300 * scale).count());
    Ok((u, s, v_sorted))
}

/// Fill columns `rank..` of `u` with an orthonormal completion of the first
/// `rank` columns.
fn complete_orthonormal(u: &mut Matrix, rank: usize) {
    let (r, c) = u.shape();
    let mut have = rank;
    let mut cand = 0;
    while have < c && cand < r {
        let mut w = DVector::<Scalar>::zeros(r);
        w[cand] = ONE;
        for _ in 0..2 {
            for j in 0..have {
                let proj = u.column(j).dotc(&w);
                w -= u.column(j) * proj;
            }
        }
        let nrm = w.norm();
        if nrm > 0.5 {
            u.set_column(have, &(w / Complex::new(nrm, 0.0)));
            have += 1;
        }
        cand += 1;
    }
}

/// The unitary polar factor `U·W*` of `m = U diag(s) W*`; the nearest
/// unitary in Frobenius norm, unique when `m` is invertible.
pub fn polar_unitary(m: &Matrix) -> Matrix {
    let (u, _s, w) = svd(m).expect("square input");
    u * w.adjoint()
}

/// Determinant by LU with partial pivoting.
pub fn determinant(m: &Matrix) -> Scalar {
    assert!(m.is_square());
    let n = m.nrows();
    let mut a = m.clone();
    let mut det = ONE;
    for k in 0..n {
        let (pivot, mag) = (k..n)
            .map(|r| (r, a[(r, k)].norm()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
            .unwrap();
        if mag == 0.0 {
            return Scalar::new(0.0, 0.0);
        }
        if pivot != k {
            a.swap_rows(pivot, k);
            det = -det;
        }
        det *= a[(k, k)];
        for r in k + 1..n {
            let f = a[(r, k)] / a[(k, k)];
            for c in k + 1..n {
                let sub = f * a[(k, c)];
                a[(r, c)] -= sub;
            }
        }
    }
    det
}

// ── subspaces ───────────────────────────────────────────────────────

/// A subspace of ℂ^n carried by an orthonormal frame (columns).
#[derive(Debug, Clone)]
pub struct Subspace {
    frame: Matrix,
}

impl Subspace {
    pub fn from_frame(frame: Matrix, tol: f64) -> Result<Self> {
        let defect = unitary_defect(&frame);
        if defect > tol * (frame.ncols().max(1) as f64).sqrt() {
            return Err(Error::InvalidInput(format!(
                "frame is not orthonormal (defect {defect:.3e})"
            )));
        }
        Ok(Self { frame })
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            frame: zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            frame: identity(ambient),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.frame.nrows()
    }

    pub fn dim(&self) -> usize {
        self.frame.ncols()
    }

    pub fn frame(&self) -> &Matrix {
        &self.frame
    }

    /// Orthonormal frame of the orthogonal complement.
    pub fn complement(&self, cfg: &ToleranceConfig) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.ambient_dim());
        }
        null_space(&self.frame.adjoint(), cfg)
    }
}

/// Orthonormal basis of the numerical kernel of a (possibly rectangular)
/// complex matrix, with the relative `eps_rank` cutoff on singular values.
pub fn null_space(a: &Matrix, cfg: &ToleranceConfig) -> Subspace {
    let (rows, cols) = a.shape();
    if cols == 0 {
        return Subspace::zero(0);
    }
    // Padding with zero rows leaves the kernel unchanged and guarantees the
    // thin SVD carries a full right factor.
    let work = if rows < cols {
        let mut padded = zeros(cols, cols);
        padded.view_mut((0, 0), (rows, cols)).copy_from(a);
        padded
    } else {
        a.clone()
    };
    let (_u, s, v) = svd_thin(&work).expect("svd of padded matrix");
    let smax = s.first().copied().unwrap_or(0.0);
    let cut = cfg.eps_rank * smax;
    let kernel: Vec<usize> = (0..cols).filter(|&j| s[j] <= cut).collect();
    let mut frame = zeros(cols, kernel.len());
    for (out, &j) in kernel.iter().enumerate() {
        frame.set_column(out, &v.column(j));
    }
    Subspace { frame }
}

/// Kernel together with the singular values of the map, for borderline-rank
/// reporting.
pub fn null_space_with_values(a: &Matrix, cfg: &ToleranceConfig) -> (Subspace, Vec<f64>) {
    let (rows, cols) = a.shape();
    let work = if rows < cols {
        let mut padded = zeros(cols, cols);
        padded.view_mut((0, 0), (rows, cols)).copy_from(a);
        padded
    } else {
        a.clone()
    };
    let (_u, s, v) = svd_thin(&work).expect("svd of padded matrix");
    let smax = s.first().copied().unwrap_or(0.0);
    let cut = cfg.eps_rank * smax;
    let kernel: Vec<usize> = (0..cols).filter(|&j| s[j] <= cut).collect();
    let mut frame = zeros(cols, kernel.len());
    for (out, &j) in kernel.iter().enumerate() {
        frame.set_column(out, &v.column(j));
    }
    (Subspace { frame }, s)
}

/// Real analogue of [`null_space`], used by the Hermitian commutant lift.
///
/// The kernel of a real matrix over ℂ is the complexification of its real
/// kernel, so a real orthonormal basis can be read off the real parts (the
/// complex kernels computed here stay real because the input is real).
pub fn null_space_real(a: &DMatrix<f64>, cfg: &ToleranceConfig) -> Vec<DVector<f64>> {
    let (rows, cols) = a.shape();
    if cols == 0 {
        return Vec::new();
    }
    let ac = Matrix::from_fn(rows, cols, |i, j| Scalar::new(a[(i, j)], 0.0));
    let kernel = null_space(&ac, cfg);
    let k = kernel.dim();
    if k == 0 {
        return Vec::new();
    }
    // gather real and imaginary parts; they span the real kernel
    let mut parts = zeros(cols, 2 * k);
    for j in 0..k {
        for i in 0..cols {
            let z = kernel.frame()[(i, j)];
            parts[(i, j)] = Scalar::new(z.re, 0.0);
            parts[(i, j + k)] = Scalar::new(z.im, 0.0);
        }
    }
    let basis = orthonormal_span(&parts, 1e-8);
    assert!(
        basis.ncols() >= k,
        "real kernel extraction lost dimensions ({} < {k})",
        basis.ncols()
    );
    (0..k)
        .map(|j| DVector::from_fn(cols, |i, _| basis[(i, j)].re))
        .collect()
}

/// Intersection of two subspaces of a common ambient space via principal
/// angles: directions whose cosine is within `eps_cluster` of 1 are kept.
pub fn subspace_intersect(a: &Subspace, b: &Subspace, cfg: &ToleranceConfig) -> Result<Subspace> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch(a.ambient_dim(), b.ambient_dim()));
    }
    if a.dim() == 0 || b.dim() == 0 {
        return Ok(Subspace::zero(a.ambient_dim()));
    }
    let g = a.frame.adjoint() * &b.frame;
    // pad to square so the thin SVD applies regardless of ka vs kb
    let k = g.nrows().max(g.ncols());
    let mut padded = zeros(k, g.ncols().max(k));
    padded.view_mut((0, 0), g.shape()).copy_from(&g);
    let (u, s, _v) = svd_thin(&padded)?;
    let keep: Vec<usize> = (0..g.ncols().min(g.nrows()))
        .filter(|&j| s[j] >= 1.0 - cfg.eps_cluster)
        .collect();
    let mut frame = zeros(a.ambient_dim(), keep.len());
    for (out, &j) in keep.iter().enumerate() {
        let dir = &a.frame * u.view((0, j), (a.dim(), 1));
        frame.set_column(out, &dir.column(0));
    }
    Ok(Subspace { frame })
}

/// Orthonormal basis of the column span of `g` by modified Gram–Schmidt in
/// column order (two passes), dropping columns whose residual falls below
/// `drop_tol`.  Keeps coordinate directions untouched, which matters for the
/// deterministic deflations; falls back to the SVD when `expect_dim` columns
/// cannot be recovered.
pub fn orthonormalize_ordered(g: &Matrix, drop_tol: f64, expect_dim: Option<usize>) -> Matrix {
    let rows = g.nrows();
    let mut kept: Vec<Vector> = Vec::new();
    for j in 0..g.ncols() {
        let mut w: Vector = g.column(j).into_owned();
        for _ in 0..2 {
            for q in &kept {
                let proj = q.dotc(&w);
                w -= q * proj;
            }
        }
        let nrm = w.norm();
        if nrm > drop_tol {
            kept.push(w / Complex::new(nrm, 0.0));
        }
    }
    if let Some(d) = expect_dim {
        if kept.len() != d {
            let basis = orthonormal_span(g, drop_tol.min(0.5));
            assert_eq!(
                basis.ncols(),
                d,
                "span recovery produced {} of {d} directions",
                basis.ncols()
            );
            return basis;
        }
    }
    let mut out = zeros(rows, kept.len());
    for (j, q) in kept.iter().enumerate() {
        out.set_column(j, q);
    }
    out
}

/// Orthonormal basis of the column span of `g`, dropping directions with
/// singular value at most `drop_tol` (absolute).
pub fn orthonormal_span(g: &Matrix, drop_tol: f64) -> Matrix {
    if g.ncols() == 0 {
        return g.clone();
    }
    let (rows, cols) = g.shape();
    let work = if rows < cols {
        let mut padded = zeros(cols, cols);
        padded.view_mut((0, 0), (rows, cols)).copy_from(g);
        padded
    } else {
        g.clone()
    };
    let (u, s, _v) = svd_thin(&work).expect("svd");
    let keep = s.iter().take_while(|&&x| x > drop_tol).count();
    block(&u, 0, 0, rows, keep)
}
