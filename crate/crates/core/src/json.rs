//! JSON interchange formats.
//!
//! The matrix schema is shared by every tool:
//! `{"n": <int>, "entries": [[[re, im], ...], ...]}`, with `n` rows, each a
//! list of `n` two-element real arrays, row-major.  Parsers reject
//! non-square payloads and non-finite numbers.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::antilinear::{Anticonjugation, Conjugation};
use crate::canonical::{CanonicalDecomposition, Summand, SummandKind};
use crate::error::{Error, Result};
use crate::intertwiner::{CertKind, Decision, SymmetryClass, UetCertificate, Verdict};
use crate::linalg::Matrix;
use crate::tol::ToleranceConfig;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixRepr {
    pub n: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

pub fn matrix_to_repr(m: &Matrix) -> MatrixRepr {
    let n = m.nrows();
    MatrixRepr {
        n,
        entries: (0..n)
            .map(|i| (0..n).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
            .collect(),
    }
}

pub fn matrix_from_repr(repr: &MatrixRepr) -> Result<Matrix> {
    if repr.n == 0 {
        return Err(Error::InvalidInput("matrix size must be positive".into()));
    }
    if repr.entries.len() != repr.n {
        return Err(Error::InvalidInput(format!(
            "expected {} rows, found {}",
            repr.n,
            repr.entries.len()
        )));
    }
    for (i, row) in repr.entries.iter().enumerate() {
        if row.len() != repr.n {
            return Err(Error::InvalidInput(format!(
                "row {i} has {} entries, expected {}",
                row.len(),
                repr.n
            )));
        }
        for (j, e) in row.iter().enumerate() {
            if !(e[0].is_finite() && e[1].is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "non-finite entry at ({i}, {j})"
                )));
            }
        }
    }
    Ok(Matrix::from_fn(repr.n, repr.n, |i, j| {
        Complex::new(repr.entries[i][j][0], repr.entries[i][j][1])
    }))
}

pub fn matrix_to_json(m: &Matrix) -> String {
    serde_json::to_string_pretty(&matrix_to_repr(m)).expect("matrix serialization")
}

pub fn matrix_from_json(text: &str) -> Result<Matrix> {
    let repr: MatrixRepr = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("bad matrix JSON: {e}")))?;
    matrix_from_repr(&repr)
}

// ── conjugations ────────────────────────────────────────────────────

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AntilinearRepr {
    pub kind: String,
    pub factor: MatrixRepr,
}

pub fn conjugation_to_repr(c: &Conjugation) -> AntilinearRepr {
    AntilinearRepr {
        kind: "conjugation".into(),
        factor: matrix_to_repr(c.factor()),
    }
}

pub fn anticonjugation_to_repr(k: &Anticonjugation) -> AntilinearRepr {
    AntilinearRepr {
        kind: "anticonjugation".into(),
        factor: matrix_to_repr(k.factor()),
    }
}

pub enum AntilinearObject {
    Conjugation(Conjugation),
    Anticonjugation(Anticonjugation),
}

pub fn antilinear_from_repr(
    repr: &AntilinearRepr,
    cfg: &ToleranceConfig,
) -> Result<AntilinearObject> {
    let factor = matrix_from_repr(&repr.factor)?;
    match repr.kind.as_str() {
        "conjugation" => Ok(AntilinearObject::Conjugation(Conjugation::new(
            factor, cfg,
        )?)),
        "anticonjugation" => Ok(AntilinearObject::Anticonjugation(Anticonjugation::new(
            factor, cfg,
        )?)),
        other => Err(Error::InvalidInput(format!(
            "unknown antilinear kind {other:?}"
        ))),
    }
}

// ── certificates ────────────────────────────────────────────────────

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateRepr {
    pub kind: String,
    pub witness: MatrixRepr,
    pub residual: f64,
    pub alpha: Option<i8>,
    pub evidence: String,
}

pub fn certificate_to_repr(
    kind: CertKind,
    cert: &UetCertificate,
    evidence: &str,
) -> CertificateRepr {
    CertificateRepr {
        kind: kind.as_str().into(),
        witness: matrix_to_repr(&cert.u),
        residual: cert.residual,
        alpha: cert.alpha,
        evidence: evidence.into(),
    }
}

/// The natural certificate kind for a summand: symmetric witnesses claim
/// UECSM, skew ones UEASM, anything else plain UET.
pub fn summand_cert_kind(s: &Summand) -> CertKind {
    match s.certificate.symmetry_class {
        SymmetryClass::Symmetric => CertKind::Uecsm,
        SymmetryClass::Skew => CertKind::Ueasm,
        SymmetryClass::Neither => CertKind::Uet,
    }
}

// ── decisions and reports ───────────────────────────────────────────

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecisionRepr {
    pub verdict: String,
    pub certificate: Option<CertificateRepr>,
    pub evidence: String,
}

pub fn decision_to_repr(kind: CertKind, d: &Decision) -> DecisionRepr {
    DecisionRepr {
        verdict: match d.verdict {
            Verdict::Yes => "yes".into(),
            Verdict::No => "no".into(),
            Verdict::Undetermined => "undetermined".into(),
        },
        certificate: d
            .certificate
            .as_ref()
            .map(|c| certificate_to_repr(kind, c, &d.evidence)),
        evidence: d.evidence.clone(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SummandRepr {
    pub kind: String,
    pub size: usize,
    pub matrix: MatrixRepr,
    pub certificate: CertificateRepr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<MatrixRepr>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub provisional: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionRepr {
    pub global_w: MatrixRepr,
    pub summands: Vec<SummandRepr>,
}

pub fn decomposition_to_repr(d: &CanonicalDecomposition) -> DecompositionRepr {
    DecompositionRepr {
        global_w: matrix_to_repr(&d.global_w),
        summands: d
            .summands
            .iter()
            .map(|s| SummandRepr {
                kind: s.kind.as_str().into(),
                size: s.size(),
                matrix: matrix_to_repr(&s.matrix),
                certificate: certificate_to_repr(summand_cert_kind(s), &s.certificate, &s.evidence),
                factor: s.factor.as_ref().map(matrix_to_repr),
                provisional: s.provisional,
            })
            .collect(),
    }
}

/// Summand shapes from a decomposition repr, for consumers that only need
/// the multiset.
pub fn repr_shape(d: &DecompositionRepr) -> Result<Vec<(SummandKind, usize)>> {
    let mut shape = d
        .summands
        .iter()
        .map(|s| Ok((SummandKind::parse(&s.kind)?, s.size)))
        .collect::<Result<Vec<_>>>()?;
    shape.sort();
    Ok(shape)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ToleranceRepr {
    pub eps_rank: f64,
    pub eps_residual: f64,
    pub eps_cluster: f64,
    pub max_iter: usize,
    pub restarts: usize,
    pub seed: u64,
}

pub fn tolerances_to_repr(cfg: &ToleranceConfig) -> ToleranceRepr {
    ToleranceRepr {
        eps_rank: cfg.eps_rank,
        eps_residual: cfg.eps_residual,
        eps_cluster: cfg.eps_cluster,
        max_iter: cfg.max_iter,
        restarts: cfg.restarts,
        seed: cfg.seed,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecisionsRepr {
    pub uet: DecisionRepr,
    pub uecsm: DecisionRepr,
    pub ueasm: DecisionRepr,
}

/// The full analysis output of the command-line front end.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input_digest: String,
    pub decisions: DecisionsRepr,
    pub irreducible: bool,
    pub commutant_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionRepr>,
    pub tolerances_used: ToleranceRepr,
    pub warnings: Vec<String>,
}
