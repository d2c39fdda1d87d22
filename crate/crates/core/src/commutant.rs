//! Hermitian commutants, irreducibility in the operator sense, and
//! orthogonal splitting of reducible matrices.
//!
//! A matrix is irreducible exactly when the only Hermitian matrices
//! commuting with it are real multiples of the identity.  The commutant is
//! computed as the real null space of the lifted system `{QT = TQ, Q = Q*}`
//! over the `n²` real parameters of a Hermitian matrix, scaled so the
//! parameter inner product matches the Frobenius one.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{block, hermitian_eig, hstack, null_space_real, zeros, Matrix, Subspace};
use crate::tol::ToleranceConfig;

/// Real-orthonormal basis of the Hermitian matrices commuting with a given
/// matrix.
#[derive(Debug, Clone)]
pub struct CommutantBasis {
    pub elements: Vec<Matrix>,
}

impl CommutantBasis {
    pub fn dim_real(&self) -> usize {
        self.elements.len()
    }
}

const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// The `p`-th Hermitian basis element of ℂ^{n×n} in the isometric
/// parametrization: `n` diagonal units, then `(E_ij + E_ji)/√2` and
/// `(iE_ij - iE_ji)/√2` for each pair `i < j`.
fn hermitian_basis_element(n: usize, p: usize) -> Matrix {
    let mut m = zeros(n, n);
    if p < n {
        m[(p, p)] = Complex::new(1.0, 0.0);
        return m;
    }
    let mut idx = p - n;
    for i in 0..n {
        for j in i + 1..n {
            if idx == 0 {
                m[(i, j)] = Complex::new(SQRT_HALF, 0.0);
                m[(j, i)] = Complex::new(SQRT_HALF, 0.0);
                return m;
            }
            if idx == 1 {
                m[(i, j)] = Complex::new(0.0, SQRT_HALF);
                m[(j, i)] = Complex::new(0.0, -SQRT_HALF);
                return m;
            }
            idx -= 2;
        }
    }
    unreachable!("parameter index out of range")
}

/// Assemble a Hermitian matrix from its real parameter vector.
fn hermitian_from_params(n: usize, x: &nalgebra::DVector<f64>) -> Matrix {
    let mut m = zeros(n, n);
    for i in 0..n {
        m[(i, i)] = Complex::new(x[i], 0.0);
    }
    let mut p = n;
    for i in 0..n {
        for j in i + 1..n {
            let re = x[p] * SQRT_HALF;
            let im = x[p + 1] * SQRT_HALF;
            m[(i, j)] = Complex::new(re, im);
            m[(j, i)] = Complex::new(re, -im);
            p += 2;
        }
    }
    m
}

/// Real-orthonormal basis of the Hermitian commutant of `t` at the
/// `eps_rank` tolerance.  Always contains the identity direction.
pub fn hermitian_commutant(t: &Matrix, cfg: &ToleranceConfig) -> CommutantBasis {
    hermitian_commutant_with_values(t, cfg).0
}

/// [`hermitian_commutant`] along with the singular values of the lifted
/// system, for borderline-rank reporting.
pub fn hermitian_commutant_with_values(
    t: &Matrix,
    cfg: &ToleranceConfig,
) -> (CommutantBasis, Vec<f64>) {
    let n = t.nrows();
    let params = n * n;
    let mut lift = DMatrix::<f64>::zeros(2 * params, params);
    for p in 0..params {
        let bp = hermitian_basis_element(n, p);
        let e = &bp * t - t * &bp;
        for (k, z) in e.iter().enumerate() {
            lift[(k, p)] = z.re;
            lift[(params + k, p)] = z.im;
        }
    }
    let lift_c = Matrix::from_fn(2 * params, params, |i, j| {
        num_complex::Complex::new(lift[(i, j)], 0.0)
    });
    let (_, svals) = crate::linalg::null_space_with_values(&lift_c, cfg);
    let vectors = null_space_real(&lift, cfg);
    let elements = vectors
        .iter()
        .map(|x| hermitian_from_params(n, x))
        .collect();
    (CommutantBasis { elements }, svals)
}

/// `true` iff the Hermitian commutant is one-dimensional.
pub fn is_irreducible(t: &Matrix, cfg: &ToleranceConfig) -> bool {
    hermitian_commutant(t, cfg).dim_real() == 1
}

/// One reducing split of a matrix.
#[derive(Debug, Clone)]
pub struct Split {
    pub subspace: Subspace,
    pub t1: Matrix,
    pub t2: Matrix,
    pub w: Matrix,
}

/// Split a reducible matrix along a spectral subspace of a non-scalar
/// commutant element; `None` when irreducible.
///
/// The commutant element farthest (in Frobenius norm) from its trace-scaled
/// identity is selected, its spectrum is clustered on gaps above
/// `eps_cluster` of the spread, and the cluster farthest from the mean
/// eigenvalue provides the reducing subspace.
pub fn split_once(t: &Matrix, cfg: &ToleranceConfig) -> Result<Option<Split>> {
    let n = t.nrows();
    let basis = hermitian_commutant(t, cfg);
    if basis.dim_real() <= 1 {
        return Ok(None);
    }
    let q = basis
        .elements
        .iter()
        .max_by(|a, b| {
            let da = nonscalar_mass(a);
            let db = nonscalar_mass(b);
            da.partial_cmp(&db).unwrap()
        })
        .expect("nonempty basis");
    let (vals, vecs) = hermitian_eig(q);
    let spread = vals[n - 1] - vals[0];
    if spread <= 1e-12 {
        return Err(Error::SplitResidualTooLarge {
            residual: spread,
            bound: 1e-12,
        });
    }
    // clusters over gaps, then the cluster farthest from the mean
    let gap_tol = cfg.eps_cluster * spread;
    let mut clusters: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..n {
        if vals[i] - vals[i - 1] > gap_tol {
            clusters.push((start, i));
            start = i;
        }
    }
    clusters.push((start, n));
    if clusters.len() < 2 {
        return Err(Error::SplitResidualTooLarge {
            residual: spread,
            bound: gap_tol,
        });
    }
    let mean = vals.iter().sum::<f64>() / n as f64;
    let (lo, hi) = clusters
        .iter()
        .copied()
        .max_by(|&(a0, a1), &(b0, b1)| {
            let ca = (vals[a0..a1].iter().sum::<f64>() / (a1 - a0) as f64 - mean).abs();
            let cb = (vals[b0..b1].iter().sum::<f64>() / (b1 - b0) as f64 - mean).abs();
            ca.partial_cmp(&cb).unwrap()
        })
        .unwrap();
    let k = hi - lo;
    let mut w = zeros(n, n);
    w.view_mut((0, 0), (n, k))
        .copy_from(&block(&vecs, 0, lo, n, k));
    // complement: the remaining eigenvector columns in order
    let rest = hstack(&[block(&vecs, 0, 0, n, lo), block(&vecs, 0, hi, n, n - hi)]);
    w.view_mut((0, k), (n, n - k)).copy_from(&rest);
    let ts = w.adjoint() * t * &w;
    let off = block(&ts, 0, k, k, n - k).norm() + block(&ts, k, 0, n - k, k).norm();
    let bound = cfg.eps_residual * t.norm().max(1.0);
    if off > bound {
        return Err(Error::SplitResidualTooLarge {
            residual: off,
            bound,
        });
    }
    Ok(Some(Split {
        subspace: Subspace::from_frame(block(&w, 0, 0, n, k), cfg.eps_orth())?,
        t1: block(&ts, 0, 0, k, k),
        t2: block(&ts, k, k, n - k, n - k),
        w,
    }))
}

fn nonscalar_mass(q: &Matrix) -> f64 {
    let n = q.nrows();
    let mean = q.trace() / Complex::new(n as f64, 0.0);
    let mut m = q.clone();
    for i in 0..n {
        m[(i, i)] -= mean;
    }
    m.norm()
}

/// Recursively split into irreducible diagonal blocks:
/// `t = w (⊕ blocks) w*` with every block irreducible.
pub fn decompose_irreducibles(t: &Matrix, cfg: &ToleranceConfig) -> Result<(Matrix, Vec<Matrix>)> {
    match split_once(t, cfg)? {
        None => {
            let n = t.nrows();
            Ok((Matrix::identity(n, n), vec![t.clone()]))
        }
        Some(split) => {
            let (w1, mut b1) = decompose_irreducibles(&split.t1, cfg)?;
            let (w2, b2) = decompose_irreducibles(&split.t2, cfg)?;
            let k = split.t1.nrows();
            let n = t.nrows();
            let mut inner = zeros(n, n);
            inner.view_mut((0, 0), (k, k)).copy_from(&w1);
            inner.view_mut((k, k), (n - k, n - k)).copy_from(&w2);
            b1.extend(b2);
            Ok((split.w * inner, b1))
        }
    }
}
