//! Conjugations and anticonjugations as first-class objects.
//!
//! A conjugation `C` is a conjugate-linear isometric involution; it always
//! factors as `C = UJ` with `U` a symmetric unitary and `J` entrywise
//! conjugation.  An anticonjugation `K` is the skew-involutive analogue
//! (`K² = -I`), factoring as `K = SJ` with `S` skew-symmetric unitary, which
//! forces even dimension.  Storing the unitary factor is lossless and makes
//! composition and verification plain matrix algebra.
//!
//! The module also provides the two constructive realizations behind the
//! deciders: a `C`-fixed orthonormal basis turning `T = CT*C` into a complex
//! symmetric matrix, and a canonical anticonjugation basis turning
//! `T = -KT*K` into an antiskewsymmetric one.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{
    self, block, hstack, identity, orthonormalize_ordered, unitary_defect, zeros, Matrix, Vector,
};
use crate::tol::ToleranceConfig;

/// The standard symplectic form `[[0, I], [-I, 0]]` on ℂ^{2d}.
pub fn omega(d: usize) -> Matrix {
    let mut m = zeros(2 * d, 2 * d);
    for i in 0..d {
        m[(i, d + i)] = Complex::new(1.0, 0.0);
        m[(d + i, i)] = Complex::new(-1.0, 0.0);
    }
    m
}

/// A conjugation `C = UJ`, stored by its symmetric unitary factor.
#[derive(Debug, Clone)]
pub struct Conjugation {
    u: Matrix,
}

impl Conjugation {
    pub fn new(u: Matrix, cfg: &ToleranceConfig) -> Result<Self> {
        if !u.is_square() {
            return Err(Error::DimensionMismatch(u.nrows(), u.ncols()));
        }
        let n = u.nrows();
        if unitary_defect(&u) > cfg.eps_orth() * (n as f64).sqrt().max(1.0) {
            return Err(Error::InvalidInput(
                "conjugation factor is not unitary".into(),
            ));
        }
        if linalg::symmetry_defect(&u) > cfg.eps_residual * u.norm().max(1.0) {
            return Err(Error::InvalidInput(
                "conjugation factor is not symmetric".into(),
            ));
        }
        Ok(Self { u })
    }

    /// Entrywise conjugation `J` itself (`u = I`).
    pub fn canonical(n: usize) -> Self {
        Self { u: identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.u.nrows()
    }

    pub fn factor(&self) -> &Matrix {
        &self.u
    }

    /// `C x = U conj(x)`.
    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch(x.len(), self.dim()));
        }
        Ok(&self.u * x.map(|z| z.conj()))
    }

    /// Columnwise application to a matrix: `C` applied to each column.
    pub fn apply_columns(&self, m: &Matrix) -> Matrix {
        &self.u * m.map(|z| z.conj())
    }

    /// The matrix `C T* C = U Tᵗ conj(U)`.
    pub fn twist(&self, t: &Matrix) -> Matrix {
        &self.u * t.transpose() * self.u.conjugate()
    }

    /// How far `t` is from satisfying `T = CT*C`, as a Frobenius norm.
    pub fn csym_defect(&self, t: &Matrix) -> f64 {
        (t - self.twist(t)).norm()
    }

    /// Compression of `C` onto a `C`-invariant subspace given by an
    /// orthonormal frame.
    pub fn restrict(&self, frame: &Matrix, cfg: &ToleranceConfig) -> Result<Conjugation> {
        let u_sub = frame.adjoint() * &self.u * frame.conjugate();
        Conjugation::new(u_sub, cfg)
    }
}

/// An anticonjugation `K = SJ`, stored by its skew-symmetric unitary factor.
#[derive(Debug, Clone)]
pub struct Anticonjugation {
    s: Matrix,
}

impl Anticonjugation {
    pub fn new(s: Matrix, cfg: &ToleranceConfig) -> Result<Self> {
        if !s.is_square() {
            return Err(Error::DimensionMismatch(s.nrows(), s.ncols()));
        }
        let n = s.nrows();
        if !n.is_multiple_of(2) {
            return Err(Error::OddDimension(n));
        }
        if unitary_defect(&s) > cfg.eps_orth() * (n as f64).sqrt().max(1.0) {
            return Err(Error::InvalidInput(
                "anticonjugation factor is not unitary".into(),
            ));
        }
        if linalg::skewness_defect(&s) > cfg.eps_residual * s.norm().max(1.0) {
            return Err(Error::InvalidInput(
                "anticonjugation factor is not skew-symmetric".into(),
            ));
        }
        Ok(Self { s })
    }

    /// The canonical instance with factor `Ω` on ℂ^{2d}.
    pub fn standard(d: usize) -> Self {
        Self { s: omega(d) }
    }

    pub fn dim(&self) -> usize {
        self.s.nrows()
    }

    pub fn factor(&self) -> &Matrix {
        &self.s
    }

    /// `K x = S conj(x)`.
    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch(x.len(), self.dim()));
        }
        Ok(&self.s * x.map(|z| z.conj()))
    }

    pub fn apply_columns(&self, m: &Matrix) -> Matrix {
        &self.s * m.map(|z| z.conj())
    }

    /// The matrix `-K T* K = S Tᵗ S*`.
    pub fn twist(&self, t: &Matrix) -> Matrix {
        &self.s * t.transpose() * self.s.adjoint()
    }

    /// How far `t` is from satisfying `T = -KT*K`.
    pub fn asym_defect(&self, t: &Matrix) -> f64 {
        (t - self.twist(t)).norm()
    }

    pub fn restrict(&self, frame: &Matrix, cfg: &ToleranceConfig) -> Result<Anticonjugation> {
        let s_sub = frame.adjoint() * &self.s * frame.conjugate();
        Anticonjugation::new(s_sub, cfg)
    }
}

/// The block shape of an antiskewsymmetric matrix `[[A, B], [D, Aᵗ]]` with
/// `B`, `D` skew-symmetric.
#[derive(Debug, Clone)]
pub struct AsmShape {
    pub d: usize,
    pub a: Matrix,
    pub b: Matrix,
    pub dd: Matrix,
}

impl AsmShape {
    pub fn new(a: Matrix, b: Matrix, dd: Matrix) -> Result<Self> {
        let d = a.nrows();
        if !(a.is_square() && b.shape() == (d, d) && dd.shape() == (d, d)) {
            return Err(Error::InvalidInput("ASM blocks must be d×d".into()));
        }
        Ok(Self { d, a, b, dd })
    }

    /// Exact-shape blocks read off a 2d×2d matrix, skew parts symmetrized.
    pub fn from_matrix(t: &Matrix, cfg: &ToleranceConfig) -> Result<Self> {
        let n = t.nrows();
        if !n.is_multiple_of(2) {
            return Err(Error::OddDimension(n));
        }
        let d = n / 2;
        let a = block(t, 0, 0, d, d);
        let b = block(t, 0, d, d, d);
        let dd = block(t, d, 0, d, d);
        let a2 = block(t, d, d, d, d);
        let scale = t.norm().max(1.0);
        let defect = (&a2 - a.transpose()).norm()
            + linalg::skewness_defect(&b)
            + linalg::skewness_defect(&dd);
        if defect > cfg.eps_residual * scale {
            return Err(Error::InvalidInput(format!(
                "matrix is not antiskewsymmetric (shape defect {defect:.3e})"
            )));
        }
        let b = (&b - b.transpose()).scale(0.5);
        let dd = (&dd - dd.transpose()).scale(0.5);
        Ok(Self { d, a, b, dd })
    }

    /// Assemble the 2d×2d matrix `[[A, B], [D, Aᵗ]]`.
    pub fn assemble(&self) -> Matrix {
        let d = self.d;
        let mut m = zeros(2 * d, 2 * d);
        m.view_mut((0, 0), (d, d)).copy_from(&self.a);
        m.view_mut((0, d), (d, d)).copy_from(&self.b);
        m.view_mut((d, 0), (d, d)).copy_from(&self.dd);
        m.view_mut((d, d), (d, d)).copy_from(&self.a.transpose());
        m
    }

    /// Residual of the symplectic identity `T = -Ω Tᵗ Ω`, zero for an exact
    /// ASM.
    pub fn symplectic_defect(&self) -> f64 {
        let t = self.assemble();
        let om = omega(self.d);
        (&t + &om * t.transpose() * om).norm()
    }
}

/// `true` when `t` carries the exact `[[A, B], [D, Aᵗ]]` shape within
/// tolerance (equivalently, satisfies the symplectic identity).
pub fn is_asm(t: &Matrix, cfg: &ToleranceConfig) -> bool {
    t.nrows().is_multiple_of(2) && AsmShape::from_matrix(t, cfg).is_ok()
}

/// Orthonormal basis of `C`-fixed vectors, returned as the columns of a
/// unitary matrix `Q` with `CQ = Q` columnwise.
///
/// Construction: pick a unit vector `v` in the remaining `C`-invariant
/// complement, take `w = v + Cv` unless its norm is at most ½ (then
/// `w = i(v - Cv)`, which `C` also fixes and which is then at least norm 1),
/// normalize and deflate.
pub fn fixed_basis(c: &Conjugation) -> Matrix {
    let n = c.dim();
    let mut frame = identity(n);
    let mut cols: Vec<Matrix> = Vec::with_capacity(n);
    while frame.ncols() > 0 {
        let v: Vector = frame.column(0).into_owned();
        let cv = c.apply(&v).expect("dimension fixed");
        let mut w = &v + &cv;
        if w.norm() <= 0.5 {
            w = (&v - &cv) * Complex::new(0.0, 1.0);
        }
        let q = &w / Complex::new(w.norm(), 0.0);
        let qm = Matrix::from_column_slice(n, 1, q.as_slice());
        // deflate: orthonormal basis of the current span minus q
        let projected = &frame - &qm * (qm.adjoint() * &frame);
        let target = frame.ncols() - 1;
        frame = orthonormalize_ordered(&projected, 1e-4, Some(target));
        cols.push(qm);
    }
    hstack(&cols)
}

/// Realize `t` as a complex symmetric matrix: returns `(S, Q)` with
/// `S = Q* t Q` symmetric and `Q` the `C`-fixed basis.
pub fn realize_csm(t: &Matrix, c: &Conjugation, cfg: &ToleranceConfig) -> Result<(Matrix, Matrix)> {
    if t.nrows() != c.dim() {
        return Err(Error::DimensionMismatch(t.nrows(), c.dim()));
    }
    let defect = c.csym_defect(t);
    if defect > cfg.eps_residual * t.norm().max(1.0) {
        return Err(Error::NotCSymmetricWithRespectToC(defect));
    }
    let q = fixed_basis(c);
    let s = q.adjoint() * t * &q;
    Ok((s, q))
}

/// Orthonormal basis `e_1..e_d, Ke_1..Ke_d` realizing the canonical
/// anticonjugation action `Ke_i = e_{i+d}`, `Ke_{i+d} = -e_i`.
pub fn canonical_anti_basis(k: &Anticonjugation) -> Matrix {
    let n = k.dim();
    let d = n / 2;
    let mut frame = identity(n);
    let mut es: Vec<Matrix> = Vec::with_capacity(d);
    let mut fs: Vec<Matrix> = Vec::with_capacity(d);
    while frame.ncols() > 0 {
        let e: Vector = frame.column(0).into_owned();
        let f = k.apply(&e).expect("dimension fixed");
        let em = Matrix::from_column_slice(n, 1, e.as_slice());
        let fm = Matrix::from_column_slice(n, 1, f.as_slice());
        let projected = &frame - &em * (em.adjoint() * &frame) - &fm * (fm.adjoint() * &frame);
        let target = frame.ncols() - 2;
        frame = orthonormalize_ordered(&projected, 1e-4, Some(target));
        es.push(em);
        fs.push(fm);
    }
    let mut cols = es;
    cols.extend(fs);
    hstack(&cols)
}

/// Realize `t` as an antiskewsymmetric matrix: returns `(shape, Q)` with
/// `Q* t Q` of the `[[A, B], [D, Aᵗ]]` form.
pub fn realize_asm(
    t: &Matrix,
    k: &Anticonjugation,
    cfg: &ToleranceConfig,
) -> Result<(AsmShape, Matrix)> {
    if t.nrows() != k.dim() {
        return Err(Error::DimensionMismatch(t.nrows(), k.dim()));
    }
    let defect = k.asym_defect(t);
    if defect > cfg.eps_residual * t.norm().max(1.0) {
        return Err(Error::NotAntiSymmetricWithRespectToK(defect));
    }
    let q = canonical_anti_basis(k);
    let s = q.adjoint() * t * &q;
    let shape = AsmShape::from_matrix(&s, cfg)
        .map_err(|_| Error::NotAntiSymmetricWithRespectToK(defect))?;
    Ok((shape, q))
}
