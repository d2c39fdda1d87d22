//! `mtt`: analyze complex square matrices for unitary equivalence to their
//! transpose, generate the gallery of test matrices, and re-verify
//! certificates by direct multiplication.
//!
//! Exit codes: 0 success, 1 parse error, 2 not-UET when a decomposition was
//! requested, 3 undetermined, 4 invalid certificate.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use mtt_core::canonical::decompose_with_decision;
use mtt_core::commutant::hermitian_commutant_with_values;
use mtt_core::error::Error;
use mtt_core::gallery::{self, GeneratorSpec};
use mtt_core::intertwiner::{
    check_certificate, is_ueasm, is_uecsm, is_uet_with_budget, sylvester_kernel_with_values,
    CertKind,
};
use mtt_core::json::{
    anticonjugation_to_repr, conjugation_to_repr, decision_to_repr, decomposition_to_repr,
    matrix_from_json, matrix_from_repr, matrix_to_json, tolerances_to_repr, AnalysisReport,
    CertificateRepr, DecisionsRepr,
};
use mtt_core::{Matrix, ToleranceConfig};

#[derive(Parser)]
#[command(
    name = "mtt",
    about = "decide unitary equivalence of a matrix to its transpose, with certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a matrix JSON file: UET/UECSM/UEASM decisions,
    /// irreducibility, and optionally the canonical decomposition
    Analyze {
        /// path to the matrix JSON
        path: PathBuf,
        /// run the canonical type I/II/III decomposition
        #[arg(long)]
        decompose: bool,
        /// machine-readable JSON report instead of text
        #[arg(long)]
        json: bool,
        /// override the certificate acceptance tolerance (eps_residual)
        #[arg(long)]
        tol: Option<f64>,
        /// master seed for the randomized searches
        #[arg(long)]
        seed: Option<u64>,
        /// trace-word length budget for disproofs
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Print a generated matrix (or conjugation) as JSON on stdout
    Generate {
        /// what to generate
        kind: GenerateKind,
        /// block parameter d (asm, random-asm)
        #[arg(long)]
        d: Option<usize>,
        /// matrix size n
        #[arg(long)]
        n: Option<usize>,
        /// generator seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// full generator spec JSON file (kind must be `spec`)
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Re-verify a certificate against a matrix by direct multiplication
    Verify {
        matrix: PathBuf,
        certificate: PathBuf,
        /// override the acceptance tolerance (eps_residual)
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenerateKind {
    Halmos,
    George,
    /// the irreducible antiskewsymmetric generator (needs --d >= 4)
    Asm,
    RandomCsm,
    RandomAsm,
    RandomUnitary,
    RandomConjugation,
    RandomAnticonjugation,
    Toeplitz,
    /// read a full generator spec from --spec
    Spec,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            path,
            decompose,
            json,
            tol,
            seed,
            budget,
        } => cmd_analyze(&path, decompose, json, tol, seed, budget),
        Command::Generate {
            kind,
            d,
            n,
            seed,
            spec,
        } => cmd_generate(kind, d, n, seed, spec.as_deref()),
        Command::Verify {
            matrix,
            certificate,
            tol,
        } => cmd_verify(&matrix, &certificate, tol),
    }
}

fn config_with(tol: Option<f64>, seed: Option<u64>) -> ToleranceConfig {
    let mut cfg = ToleranceConfig::default();
    if let Some(t) = tol {
        cfg.eps_residual = t;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    cfg
}

fn parse_fail(context: &str, err: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {context}: {err}");
    ExitCode::from(1)
}

fn cmd_analyze(
    path: &std::path::Path,
    decompose: bool,
    json_out: bool,
    tol: Option<f64>,
    seed: Option<u64>,
    budget: Option<usize>,
) -> ExitCode {
    let bytes = match std::fs::read(path) {
        Ok(b) => b,
        Err(e) => return parse_fail(&path.display().to_string(), e),
    };
    let text = match std::str::from_utf8(&bytes) {
        Ok(t) => t,
        Err(e) => return parse_fail(&path.display().to_string(), e),
    };
    let t = match matrix_from_json(text) {
        Ok(m) => m,
        Err(e) => return parse_fail(&path.display().to_string(), e),
    };
    let digest = hex_digest(&bytes);
    let cfg = config_with(tol, seed);
    if let Err(e) = cfg.validate() {
        return parse_fail("tolerances", e);
    }
    let n = t.nrows();
    let budget = budget.unwrap_or_else(|| mtt_core::intertwiner::default_specht_budget(n));

    let uet = is_uet_with_budget(&t, &cfg, budget);
    let uecsm = is_uecsm(&t, &cfg);
    let ueasm = is_ueasm(&t, &cfg);
    let (commutant, commutant_svals) = hermitian_commutant_with_values(&t, &cfg);
    let mut warnings = Vec::new();
    if let Ok((_, svals)) = sylvester_kernel_with_values(&t, &t.transpose(), &cfg) {
        warnings.extend(borderline(&svals, cfg.eps_rank, "intertwiner kernel"));
    }
    warnings.extend(borderline(
        &commutant_svals,
        cfg.eps_rank,
        "commutant system",
    ));

    let mut exit = ExitCode::SUCCESS;
    let decomposition = if decompose {
        match decompose_with_decision(&t, &uet, &cfg) {
            Ok(d) => Some(decomposition_to_repr(&d)),
            Err(Error::NotUet(_)) => {
                exit = ExitCode::from(2);
                None
            }
            Err(e) => {
                eprintln!("decomposition failed: {e}");
                exit = ExitCode::from(3);
                None
            }
        }
    } else {
        None
    };

    let report = AnalysisReport {
        input_digest: digest,
        decisions: DecisionsRepr {
            uet: decision_to_repr(CertKind::Uet, &uet),
            uecsm: decision_to_repr(CertKind::Uecsm, &uecsm),
            ueasm: decision_to_repr(CertKind::Ueasm, &ueasm),
        },
        irreducible: commutant.dim_real() == 1,
        commutant_dim: commutant.dim_real(),
        decomposition,
        tolerances_used: tolerances_to_repr(&cfg),
        warnings,
    };
    if json_out {
        println!("{}", serde_json::to_string_pretty(&report).expect("report"));
    } else {
        print_human(&report, n);
    }
    exit
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

fn borderline(svals: &[f64], eps_rank: f64, context: &str) -> Vec<String> {
    let smax = svals.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return Vec::new();
    }
    let cut = eps_rank * smax;
    svals
        .iter()
        .filter(|&&s| s > cut * 0.1 && s < cut * 10.0)
        .map(|s| {
            format!(
                "{context}: singular value {s:.3e} is within a decade of the rank cutoff {cut:.3e}"
            )
        })
        .collect()
}

fn print_human(report: &AnalysisReport, n: usize) {
    println!("matrix: {n}×{n}  (sha256 {})", &report.input_digest[..16]);
    for (name, d) in [
        ("uet", &report.decisions.uet),
        ("uecsm", &report.decisions.uecsm),
        ("ueasm", &report.decisions.ueasm),
    ] {
        let extra = d
            .certificate
            .as_ref()
            .map(|c| format!(" (witness residual {:.3e})", c.residual))
            .unwrap_or_default();
        println!("{name:>6}: {}{extra}", d.verdict);
        println!("        {}", d.evidence);
    }
    println!(
        "irreducible: {} (hermitian commutant dimension {})",
        report.irreducible, report.commutant_dim
    );
    if let Some(d) = &report.decomposition {
        let shape: Vec<String> = d
            .summands
            .iter()
            .map(|s| format!("{}({})", s.kind, s.size))
            .collect();
        println!("decomposition: {}", shape.join(" ⊕ "));
    }
    for w in &report.warnings {
        println!("warning: {w}");
    }
}

fn cmd_generate(
    kind: GenerateKind,
    d: Option<usize>,
    n: Option<usize>,
    seed: u64,
    spec_path: Option<&std::path::Path>,
) -> ExitCode {
    let cfg = ToleranceConfig::default();
    let need = |v: Option<usize>, what: &str| {
        v.ok_or_else(|| Error::InvalidSpec(format!("missing --{what}")))
    };
    let spec = match kind {
        GenerateKind::Halmos => Ok(GeneratorSpec::Halmos),
        GenerateKind::George => Ok(GeneratorSpec::George),
        GenerateKind::Asm => need(d, "d").map(|d| GeneratorSpec::AsmIrreducible { d }),
        GenerateKind::RandomCsm => need(n, "n").map(|n| GeneratorSpec::RandomCsm { n, seed }),
        GenerateKind::RandomAsm => need(d, "d").map(|d| GeneratorSpec::RandomAsm { d, seed }),
        GenerateKind::RandomUnitary => {
            need(n, "n").map(|n| GeneratorSpec::RandomUnitary { n, seed })
        }
        GenerateKind::RandomConjugation => {
            need(n, "n").map(|n| GeneratorSpec::RandomConjugation { n, seed })
        }
        GenerateKind::RandomAnticonjugation => {
            need(n, "n").map(|n| GeneratorSpec::RandomAnticonjugation { n, seed })
        }
        GenerateKind::Toeplitz => need(n, "n").map(|n| GeneratorSpec::ToeplitzRandom { n, seed }),
        GenerateKind::Spec => {
            let Some(path) = spec_path else {
                return parse_fail("generate", "kind `spec` requires --spec FILE");
            };
            match std::fs::read_to_string(path) {
                Ok(text) => match serde_json::from_str::<GeneratorSpec>(&text) {
                    Ok(s) => Ok(s),
                    Err(e) => return parse_fail(&path.display().to_string(), e),
                },
                Err(e) => return parse_fail(&path.display().to_string(), e),
            }
        }
    };
    let spec = match spec {
        Ok(s) => s,
        Err(e) => return parse_fail("generate", e),
    };
    match gallery::generate(&spec, &cfg) {
        Ok(gallery::Generated::Matrix(m)) => {
            println!("{}", matrix_to_json(&m));
            ExitCode::SUCCESS
        }
        Ok(gallery::Generated::Conjugation(c)) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&conjugation_to_repr(&c)).expect("serialize")
            );
            ExitCode::SUCCESS
        }
        Ok(gallery::Generated::Anticonjugation(k)) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&anticonjugation_to_repr(&k)).expect("serialize")
            );
            ExitCode::SUCCESS
        }
        Err(e) => parse_fail("generate", e),
    }
}

fn cmd_verify(
    matrix_path: &std::path::Path,
    cert_path: &std::path::Path,
    tol: Option<f64>,
) -> ExitCode {
    let t: Matrix = match std::fs::read_to_string(matrix_path)
        .map_err(|e| e.to_string())
        .and_then(|s| matrix_from_json(&s).map_err(|e| e.to_string()))
    {
        Ok(m) => m,
        Err(e) => return parse_fail(&matrix_path.display().to_string(), e),
    };
    let cert: CertificateRepr = match std::fs::read_to_string(cert_path)
        .map_err(|e| e.to_string())
        .and_then(|s| serde_json::from_str(&s).map_err(|e| e.to_string()))
    {
        Ok(c) => c,
        Err(e) => return parse_fail(&cert_path.display().to_string(), e),
    };
    let kind = match CertKind::parse(&cert.kind) {
        Ok(k) => k,
        Err(e) => return parse_fail("certificate kind", e),
    };
    let witness = match matrix_from_repr(&cert.witness) {
        Ok(w) => w,
        Err(e) => return parse_fail("certificate witness", e),
    };
    let cfg = config_with(tol, None);
    let violations = check_certificate(&t, kind, &witness, cert.alpha, &cfg);
    if violations.is_empty() {
        let residual = (&t * &witness - &witness * t.transpose()).norm();
        println!(
            "certificate OK: kind {}, recomputed residual {residual:.3e}",
            cert.kind
        );
        ExitCode::SUCCESS
    } else {
        for v in &violations {
            println!("violated: {v}");
        }
        ExitCode::from(4)
    }
}
