//! Constructive equivalence deciders.
//!
//! The kernel of `X ↦ TX - XTᵗ` contains every witness of `T = UTᵗU*`; a
//! unitary element is searched by alternating projections between the
//! kernel span and the unitary group, from seeded random starts.  Trace
//! words run first because a violating word is an exact disproof, and an
//! empty kernel is one as well.  A failed search yields `undetermined`,
//! never `no`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{
    self, fro_inner, identity, null_space, polar_unitary, skewness_defect, symmetry_defect, Matrix,
};
use crate::tol::{gaussian_complex, ToleranceConfig};
use crate::tracewords::{specht_bounded, uecsm_test_3x3, Word};

/// Classification of a witness unitary under transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryClass {
    Symmetric,
    Skew,
    Neither,
}

/// A witness unitary `U` with `T = U Tᵗ U*` up to `residual`, classified by
/// its behaviour under transpose, with the scalar `α` of `U·conj(U) = αI`
/// when that matrix is scalar.
#[derive(Debug, Clone)]
pub struct UetCertificate {
    pub u: Matrix,
    pub residual: f64,
    pub symmetry_class: SymmetryClass,
    pub alpha: Option<i8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Undetermined,
}

/// Decision with its certificate (for `yes`) and a text log of which method
/// decided.
#[derive(Debug, Clone)]
pub struct Decision {
    pub verdict: Verdict,
    pub certificate: Option<UetCertificate>,
    pub evidence: String,
}

impl Decision {
    fn yes(cert: UetCertificate, evidence: String) -> Self {
        Decision {
            verdict: Verdict::Yes,
            certificate: Some(cert),
            evidence,
        }
    }

    fn no(evidence: String) -> Self {
        Decision {
            verdict: Verdict::No,
            certificate: None,
            evidence,
        }
    }

    fn undetermined(evidence: String) -> Self {
        Decision {
            verdict: Verdict::Undetermined,
            certificate: None,
            evidence,
        }
    }

    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }
}

/// Frobenius-orthonormal basis of the kernel of `X ↦ aX - Xb`, from the
/// n²×n² Kronecker lift.
pub fn sylvester_kernel(a: &Matrix, b: &Matrix, cfg: &ToleranceConfig) -> Result<Vec<Matrix>> {
    let n = a.nrows();
    if b.nrows() != n || b.ncols() != n || a.ncols() != n {
        return Err(Error::DimensionMismatch(a.nrows(), b.nrows()));
    }
    // vec(aX - Xb) = (I⊗a - bᵗ⊗I) vec(X), column-major stacking
    let lift = identity(n).kronecker(a) - b.transpose().kronecker(&identity(n));
    let kernel = null_space(&lift, cfg);
    Ok((0..kernel.dim())
        .map(|j| Matrix::from_column_slice(n, n, kernel.frame().column(j).as_slice()))
        .collect())
}

/// Kernel plus the singular values of the lift, for borderline-rank
/// reporting.
pub fn sylvester_kernel_with_values(
    a: &Matrix,
    b: &Matrix,
    cfg: &ToleranceConfig,
) -> Result<(Vec<Matrix>, Vec<f64>)> {
    let n = a.nrows();
    if b.nrows() != n || b.ncols() != n || a.ncols() != n {
        return Err(Error::DimensionMismatch(a.nrows(), b.nrows()));
    }
    let lift = identity(n).kronecker(a) - b.transpose().kronecker(&identity(n));
    let (kernel, svals) = linalg::null_space_with_values(&lift, cfg);
    let mats = (0..kernel.dim())
        .map(|j| Matrix::from_column_slice(n, n, kernel.frame().column(j).as_slice()))
        .collect();
    Ok((mats, svals))
}

/// Alternating projections between the span of a Frobenius-orthonormal
/// basis and the unitary group, from `restarts` seeded random combinations
/// of up to `max_iter` steps each.  Returns the first unitary whose
/// distance to the span is within `eps_residual`, polished further while
/// the distance keeps shrinking.
pub fn find_unitary_in_span(basis: &[Matrix], cfg: &ToleranceConfig) -> Option<(Matrix, f64)> {
    if basis.is_empty() {
        return None;
    }
    let mut rng = cfg.rng();
    let tol = cfg.eps_residual;
    let n = basis[0].nrows();
    for restart in 0..cfg.restarts {
        // alternate two kinds of random starting combinations: projections
        // of Haar unitaries (already near the unitary set, which matters in
        // high-dimensional kernels) and plain Gaussian mixes
        let x = if restart % 2 == 0 {
            let q = crate::gallery::haar_unitary(n, &mut rng);
            project_span(&q, basis)
        } else {
            let mut x = Matrix::zeros(n, basis[0].ncols());
            for b in basis {
                x += b * gaussian_complex(&mut rng);
            }
            x
        };
        let run = alternate(x, basis, tol, cfg.max_iter);
        if let Some((u, dist)) = run.hit {
            // squeeze the witness as far as the iteration will go: tight
            // certificates keep the downstream spectral clustering clean
            let polish = alternate(project_span(&u, basis), basis, 1e-14, 400);
            let (u, dist) = match polish.best {
                Some((pu, pd)) if pd < dist => (pu, pd),
                _ => (u, dist),
            };
            if dist <= tol {
                return Some((u, dist));
            }
        }
    }
    None
}

struct AlternateRun {
    /// first iterate within the requested tolerance, polished or not
    hit: Option<(Matrix, f64)>,
    /// best iterate seen over the whole run
    best: Option<(Matrix, f64)>,
}

/// One accelerated alternating-projection run.
///
/// The plain alternation `x ↦ P_span(polar(x))` contracts linearly with a
/// rate set by the angle between the sets, which is often painfully close
/// to 1; Anderson mixing over a short residual history is applied with a
/// safeguard (a candidate is adopted only when it halves the distance),
/// which collapses thousands of slow steps into tens.
fn alternate(mut x: Matrix, basis: &[Matrix], tol: f64, max_iter: usize) -> AlternateRun {
    const DEPTH: usize = 5;
    let (rows, cols) = (x.nrows(), x.ncols());
    let flat = |m: &Matrix| Matrix::from_column_slice(rows * cols, 1, m.as_slice());
    let mut xs: Vec<Matrix> = Vec::new(); // flattened iterates
    let mut gs: Vec<Matrix> = Vec::new(); // flattened G(iterates)
    let mut best = f64::INFINITY;
    let mut best_pair: Option<(Matrix, f64)> = None;
    let mut stall = 0;
    for _iter in 0..max_iter {
        let u = polar_unitary(&x);
        let g = project_span(&u, basis);
        let dist = (&u - &g).norm();
        if dist <= tol {
            return AlternateRun {
                hit: Some((u.clone(), dist)),
                best: Some((u, dist)),
            };
        }
        let improved = dist < 0.9995 * best;
        if dist < best {
            best = dist;
            best_pair = Some((u, dist));
        }
        if improved {
            stall = 0;
        } else {
            stall += 1;
            if stall > 60 {
                break;
            }
        }
        xs.push(flat(&x));
        gs.push(flat(&g));
        if xs.len() > DEPTH {
            xs.remove(0);
            gs.remove(0);
        }
        let mut next = g;
        let m = xs.len();
        if m >= 2 {
            // least squares over residual differences: f_i = g_i - x_i
            let fk = &gs[m - 1] - &xs[m - 1];
            let mut df = Matrix::zeros(rows * cols, m - 1);
            let mut dg = Matrix::zeros(rows * cols, m - 1);
            for i in 0..m - 1 {
                df.set_column(
                    i,
                    &((&gs[i + 1] - &xs[i + 1]) - (&gs[i] - &xs[i])).column(0),
                );
                dg.set_column(i, &(&gs[i + 1] - &gs[i]).column(0));
            }
            // use the longest well-conditioned suffix of the history
            for k in (1..m).rev() {
                let dfk = linalg::block(&df, 0, m - 1 - k, rows * cols, k);
                let Some(gamma) = least_squares(&dfk, &fk) else {
                    continue;
                };
                let dgk = linalg::block(&dg, 0, m - 1 - k, rows * cols, k);
                let cand_flat = &gs[m - 1] - &dgk * &gamma;
                let cand = Matrix::from_column_slice(rows, cols, cand_flat.as_slice());
                let uc = polar_unitary(&cand);
                let gc = project_span(&uc, basis);
                let dc = (&uc - &gc).norm();
                if dc <= tol {
                    return AlternateRun {
                        hit: Some((uc.clone(), dc)),
                        best: Some((uc, dc)),
                    };
                }
                // adopt only decisive improvements; marginal teleports
                // destroy the geometric tail the mixing relies on
                if dc < 0.5 * dist {
                    if dc < best {
                        best = dc;
                        best_pair = Some((uc, dc));
                    }
                    xs.push(flat(&cand));
                    gs.push(flat(&gc));
                    if xs.len() > DEPTH {
                        xs.remove(0);
                        gs.remove(0);
                    }
                    next = gc;
                }
                break;
            }
        }
        x = next;
    }
    AlternateRun {
        hit: None,
        best: best_pair,
    }
}

/// Minimum-norm least squares `argmin ‖a γ - b‖` for a thin `a`, `None`
/// when the columns are too degenerate to trust.
fn least_squares(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    let cols = a.ncols();
    let (q, r) = linalg::householder_qr(a);
    // guard against rank collapse in the difference history
    let mut dmin = f64::INFINITY;
    let mut dmax: f64 = 0.0;
    for i in 0..cols {
        let d = r[(i, i)].norm();
        dmin = dmin.min(d);
        dmax = dmax.max(d);
    }
    if dmin <= 1e-8 * dmax.max(1e-300) {
        return None;
    }
    let rhs = q.adjoint() * b;
    let mut gamma = Matrix::zeros(cols, 1);
    for i in (0..cols).rev() {
        let mut acc = rhs[(i, 0)];
        for j in i + 1..cols {
            acc -= r[(i, j)] * gamma[(j, 0)];
        }
        gamma[(i, 0)] = acc / r[(i, i)];
    }
    Some(gamma)
}

fn project_span(x: &Matrix, basis: &[Matrix]) -> Matrix {
    let mut y = Matrix::zeros(x.nrows(), x.ncols());
    for b in basis {
        y += b * fro_inner(x, b);
    }
    y
}

/// Build the certificate data for a candidate witness.
pub fn certify(t: &Matrix, u: Matrix, cfg: &ToleranceConfig) -> UetCertificate {
    let residual = (t * &u - &u * t.transpose()).norm();
    let symmetry_class = if symmetry_defect(&u) <= cfg.eps_residual {
        SymmetryClass::Symmetric
    } else if skewness_defect(&u) <= cfg.eps_residual {
        SymmetryClass::Skew
    } else {
        SymmetryClass::Neither
    };
    let alpha = scalar_alpha(&u, cfg);
    UetCertificate {
        u,
        residual,
        symmetry_class,
        alpha,
    }
}

/// `±1` when `U·conj(U)` is that multiple of the identity, else `None`.
fn scalar_alpha(u: &Matrix, cfg: &ToleranceConfig) -> Option<i8> {
    let n = u.nrows();
    let v = u * u.conjugate();
    let sqrt_n = (n as f64).sqrt();
    for sign in [1.0f64, -1.0] {
        if (&v - identity(n) * Complex::new(sign, 0.0)).norm() <= cfg.eps_residual * sqrt_n {
            return Some(sign as i8);
        }
    }
    None
}

fn accepts(t: &Matrix, cert: &UetCertificate, cfg: &ToleranceConfig) -> bool {
    cert.residual <= cfg.eps_residual * t.norm().max(1.0) * cert.u.norm().max(1.0)
}

/// Default trace-word budget: 6 suffices to separate 3×3 matrices from
/// their transposes, 8 elsewhere.
pub fn default_specht_budget(n: usize) -> usize {
    if n == 3 {
        6
    } else {
        8
    }
}

fn word_disproof(v: &crate::tracewords::WordViolation) -> String {
    format!(
        "trace word '{}' separates T from Tᵗ: {:.6e}{:+.6e}i vs {:.6e}{:+.6e}i",
        v.word, v.lhs.re, v.lhs.im, v.rhs.re, v.rhs.im
    )
}

/// Decide unitary equivalence of `t` to its transpose.
pub fn is_uet(t: &Matrix, cfg: &ToleranceConfig) -> Decision {
    is_uet_with_budget(t, cfg, default_specht_budget(t.nrows()))
}

/// [`is_uet`] with an explicit trace-word budget.
pub fn is_uet_with_budget(t: &Matrix, cfg: &ToleranceConfig, budget: usize) -> Decision {
    let n = t.nrows();
    let scale = t.norm().max(1.0);
    if symmetry_defect(t) <= cfg.eps_residual * scale {
        let cert = certify(t, identity(n), cfg);
        return Decision::yes(cert, "complex symmetric; identity witness".into());
    }
    if crate::antilinear::is_asm(t, cfg) {
        let cert = certify(t, crate::antilinear::omega(n / 2), cfg);
        if accepts(t, &cert, cfg) {
            return Decision::yes(cert, "antiskewsymmetric; symplectic witness".into());
        }
    }
    if n == 3 {
        let test = uecsm_test_3x3(t, cfg).expect("dimension checked");
        if !test.holds {
            return Decision::no(format!(
                "3×3 trace test: tr(X*X²X*²X) = {:.6e}{:+.6e}i differs from tr(XX*²X²X*) = {:.6e}{:+.6e}i",
                test.lhs.re, test.lhs.im, test.rhs.re, test.rhs.im
            ));
        }
    } else if n >= 4 {
        match specht_bounded(t, &t.transpose(), budget, cfg) {
            Ok(Some(violation)) => return Decision::no(word_disproof(&violation)),
            Ok(None) => {}
            Err(e) => return Decision::undetermined(format!("trace sweep failed: {e}")),
        }
    }
    let kernel = match sylvester_kernel(t, &t.transpose(), cfg) {
        Ok(k) => k,
        Err(e) => return Decision::undetermined(format!("kernel computation failed: {e}")),
    };
    if kernel.is_empty() {
        return Decision::no("intertwiner kernel of (T, Tᵗ) is trivial".into());
    }
    match find_unitary_in_span(&kernel, cfg) {
        Some((u, dist)) => {
            let cert = certify(t, u, cfg);
            if accepts(t, &cert, cfg) {
                Decision::yes(
                    cert,
                    format!(
                        "unitary witness from kernel search (kernel dim {}, span distance {dist:.3e})",
                        kernel.len()
                    ),
                )
            } else {
                Decision::undetermined(format!(
                    "search converged but witness residual {:.3e} exceeds tolerance",
                    cert.residual
                ))
            }
        }
        None => Decision::undetermined(format!(
            "no unitary found in the {}-dimensional kernel span",
            kernel.len()
        )),
    }
}

/// Project each basis element onto its symmetric (`sign = +1`) or
/// skew-symmetric (`sign = -1`) part and re-orthonormalize; this is exactly
/// the kernel's intersection with that symmetry class when `b = aᵗ`.
fn symmetry_slice(basis: &[Matrix], sign: f64) -> Vec<Matrix> {
    let projected: Vec<Matrix> = basis
        .iter()
        .map(|x| (x + x.transpose() * Complex::new(sign, 0.0)).scale(0.5))
        .collect();
    frobenius_orthonormalize(&projected, 1e-7)
}

fn frobenius_orthonormalize(mats: &[Matrix], drop_tol: f64) -> Vec<Matrix> {
    let mut kept: Vec<Matrix> = Vec::new();
    for m in mats {
        let mut w = m.clone();
        for _ in 0..2 {
            for q in &kept {
                let proj = fro_inner(&w, q);
                w -= q * proj;
            }
        }
        let nrm = w.norm();
        if nrm > drop_tol {
            kept.push(w.scale(1.0 / nrm));
        }
    }
    kept
}

/// Decide unitary equivalence to a complex symmetric matrix.
pub fn is_uecsm(t: &Matrix, cfg: &ToleranceConfig) -> Decision {
    let n = t.nrows();
    let scale = t.norm().max(1.0);
    if symmetry_defect(t) <= cfg.eps_residual * scale {
        let cert = certify(t, identity(n), cfg);
        return Decision::yes(cert, "already complex symmetric".into());
    }
    if n == 3 {
        let test = uecsm_test_3x3(t, cfg).expect("dimension checked");
        if !test.holds {
            return Decision::no(format!(
                "3×3 trace test: {:.6e}{:+.6e}i vs {:.6e}{:+.6e}i",
                test.lhs.re, test.lhs.im, test.rhs.re, test.rhs.im
            ));
        }
    } else if n >= 4 {
        if let Ok(Some(violation)) =
            specht_bounded(t, &t.transpose(), default_specht_budget(n), cfg)
        {
            return Decision::no(format!(
                "not UET, hence not UECSM: {}",
                word_disproof(&violation)
            ));
        }
    }
    let kernel = match sylvester_kernel(t, &t.transpose(), cfg) {
        Ok(k) => k,
        Err(e) => return Decision::undetermined(format!("kernel computation failed: {e}")),
    };
    let slice = symmetry_slice(&kernel, 1.0);
    if slice.is_empty() {
        return Decision::no("no symmetric intertwiner: symmetric kernel slice is trivial".into());
    }
    match find_unitary_in_span(&slice, cfg) {
        Some((u, dist)) => {
            // the span is symmetric, so u is symmetric up to the span gap
            let u = polar_unitary(&(&u + u.transpose()).scale(0.5));
            let cert = certify(t, u, cfg);
            if accepts(t, &cert, cfg) && cert.symmetry_class == SymmetryClass::Symmetric {
                Decision::yes(
                    cert,
                    format!(
                        "symmetric witness from kernel slice (slice dim {}, span distance {dist:.3e})",
                        slice.len()
                    ),
                )
            } else {
                Decision::undetermined(format!(
                    "candidate witness failed certification (residual {:.3e})",
                    cert.residual
                ))
            }
        }
        None => Decision::undetermined(format!(
            "no unitary found in the {}-dimensional symmetric slice",
            slice.len()
        )),
    }
}

/// Decide unitary equivalence to an antiskewsymmetric matrix.
pub fn is_ueasm(t: &Matrix, cfg: &ToleranceConfig) -> Decision {
    let n = t.nrows();
    if !n.is_multiple_of(2) {
        return Decision::no(format!(
            "dimension {n} is odd; skew-symmetric unitaries require even dimension"
        ));
    }
    if crate::antilinear::is_asm(t, cfg) {
        let cert = certify(t, crate::antilinear::omega(n / 2), cfg);
        if accepts(t, &cert, cfg) {
            return Decision::yes(cert, "already antiskewsymmetric; symplectic witness".into());
        }
    }
    if n >= 4 {
        if let Ok(Some(violation)) =
            specht_bounded(t, &t.transpose(), default_specht_budget(n), cfg)
        {
            return Decision::no(format!(
                "not UET, hence not UEASM: {}",
                word_disproof(&violation)
            ));
        }
    }
    let kernel = match sylvester_kernel(t, &t.transpose(), cfg) {
        Ok(k) => k,
        Err(e) => return Decision::undetermined(format!("kernel computation failed: {e}")),
    };
    let slice = symmetry_slice(&kernel, -1.0);
    if slice.is_empty() {
        return Decision::no("no skew intertwiner: skew kernel slice is trivial".into());
    }
    match find_unitary_in_span(&slice, cfg) {
        Some((u, dist)) => {
            let u = polar_unitary(&(&u - u.transpose()).scale(0.5));
            let cert = certify(t, u, cfg);
            if accepts(t, &cert, cfg) && cert.symmetry_class == SymmetryClass::Skew {
                Decision::yes(
                    cert,
                    format!(
                        "skew witness from kernel slice (slice dim {}, span distance {dist:.3e})",
                        slice.len()
                    ),
                )
            } else {
                Decision::undetermined(format!(
                    "candidate witness failed certification (residual {:.3e})",
                    cert.residual
                ))
            }
        }
        None => Decision::undetermined(format!(
            "no unitary found in the {}-dimensional skew slice",
            slice.len()
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrreducibleClass {
    Uecsm,
    Ueasm,
}

/// The `α = ±1` dichotomy for irreducible UET matrices: `U·conj(U) = αI`
/// with `α = +1` forcing UECSM and `α = -1` forcing UEASM.
pub fn classify_irreducible_uet(
    t: &Matrix,
    cert: &UetCertificate,
    cfg: &ToleranceConfig,
) -> Result<IrreducibleClass> {
    let n = t.nrows();
    let v = &cert.u * cert.u.conjugate();
    let sqrt_n = (n as f64).sqrt();
    let dev_plus = (&v - identity(n)).norm();
    let dev_minus = (&v + identity(n)).norm();
    let bound = cfg.eps_residual * sqrt_n.max(1.0);
    if dev_plus <= bound {
        Ok(IrreducibleClass::Uecsm)
    } else if dev_minus <= bound {
        if !n.is_multiple_of(2) {
            return Err(Error::OddDimensionSkew(n));
        }
        Ok(IrreducibleClass::Ueasm)
    } else {
        Err(Error::NotScalar(dev_plus.min(dev_minus)))
    }
}

/// The claim a certificate makes, fixing which symmetry the witness must
/// carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertKind {
    Uet,
    Uecsm,
    Ueasm,
}

impl CertKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CertKind::Uet => "uet",
            CertKind::Uecsm => "uecsm",
            CertKind::Ueasm => "ueasm",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "uet" => Ok(CertKind::Uet),
            "uecsm" => Ok(CertKind::Uecsm),
            "ueasm" => Ok(CertKind::Ueasm),
            other => Err(Error::InvalidInput(format!(
                "unknown certificate kind {other:?}"
            ))),
        }
    }
}

/// Re-verify a certificate by direct multiplication only; returns the list
/// of violated bounds (empty means the certificate is sound).
pub fn check_certificate(
    t: &Matrix,
    kind: CertKind,
    witness: &Matrix,
    alpha: Option<i8>,
    cfg: &ToleranceConfig,
) -> Vec<String> {
    let mut violations = Vec::new();
    let n = t.nrows();
    if witness.nrows() != n || witness.ncols() != n {
        violations.push(format!(
            "witness is {}×{} but the matrix is {n}×{n}",
            witness.nrows(),
            witness.ncols()
        ));
        return violations;
    }
    let sqrt_n = (n as f64).sqrt().max(1.0);
    let orth = linalg::unitary_defect(witness);
    if orth > cfg.eps_orth() * sqrt_n {
        violations.push(format!(
            "witness is not unitary: ‖U*U - I‖ = {orth:.3e} > {:.3e}",
            cfg.eps_orth() * sqrt_n
        ));
    }
    let residual = (t * witness - witness * t.transpose()).norm();
    let bound = cfg.eps_residual * t.norm().max(1.0) * witness.norm().max(1.0);
    if residual > bound {
        violations.push(format!(
            "intertwining residual ‖TU - UTᵗ‖ = {residual:.3e} > {bound:.3e}"
        ));
    }
    match kind {
        CertKind::Uet => {}
        CertKind::Uecsm => {
            let d = symmetry_defect(witness);
            if d > cfg.eps_residual {
                violations.push(format!(
                    "witness not symmetric: ‖U - Uᵗ‖ = {d:.3e} > {:.3e}",
                    cfg.eps_residual
                ));
            }
        }
        CertKind::Ueasm => {
            if !n.is_multiple_of(2) {
                violations.push(format!("skew witness in odd dimension {n}"));
            }
            let d = skewness_defect(witness);
            if d > cfg.eps_residual {
                violations.push(format!(
                    "witness not skew-symmetric: ‖U + Uᵗ‖ = {d:.3e} > {:.3e}",
                    cfg.eps_residual
                ));
            }
        }
    }
    if let Some(a) = alpha {
        let v = witness * witness.conjugate();
        let dev = (&v - identity(n) * Complex::new(a as f64, 0.0)).norm();
        if dev > cfg.eps_residual * sqrt_n {
            violations.push(format!(
                "claimed U·conj(U) = {a}·I violated: deviation {dev:.3e}"
            ));
        }
    }
    violations
}

/// Pretty-print helper for decisions in logs.
pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::Undetermined => "undetermined",
    }
}

/// The first violating word for a transpose comparison, when one exists
/// within the budget; used to attach explicit disproofs to reports.
pub fn transpose_violation(
    t: &Matrix,
    budget: usize,
    cfg: &ToleranceConfig,
) -> Result<Option<Word>> {
    Ok(specht_bounded(t, &t.transpose(), budget, cfg)?.map(|v| v.word))
}
