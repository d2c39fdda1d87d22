//! Acceptance suite: one test per criterion, each printing a pass line with
//! its runtime.  Run with
//! `cargo test -p mtt-cli --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use mtt_core::antilinear::omega;
use mtt_core::canonical::{decompose_canonical, global_symmetric_realization, SummandKind};
use mtt_core::commutant::hermitian_commutant;
use mtt_core::gallery::{self, GeneratorSpec};
use mtt_core::intertwiner::{
    check_certificate, is_uecsm, is_uet, CertKind, SymmetryClass, UetCertificate, Verdict,
};
use mtt_core::linalg::{determinant, direct_sum, eig_normal, identity, Matrix};
use mtt_core::tol::gaussian_complex;
use mtt_core::tracewords::{specht_bounded, uecsm_test_3x3};
use mtt_core::ToleranceConfig;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn random_matrix(n: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    Matrix::from_fn(n, n, |_, _| gaussian_complex(&mut rng))
}

fn finish(criterion: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    println!("criterion {criterion}: PASS ({elapsed:.2?}, budget {budget:.0?})");
    assert!(
        elapsed <= budget,
        "criterion {criterion} exceeded its runtime budget: {elapsed:.2?} > {budget:.0?}"
    );
}

/// Criterion 1: the 3×3 weighted-shift counterexample.  The two sides of
/// the length-6 trace identity evaluate to 4 and 16, the 3×3 trace test
/// says no, and the full decider says no.
#[test]
fn criterion_01_halmos_counterexample() {
    let start = Instant::now();
    let t = gallery::halmos();
    let test = uecsm_test_3x3(&t, &cfg()).unwrap();
    assert!(!test.holds);
    assert!((test.lhs - Complex::new(4.0, 0.0)).norm() < 1e-12);
    assert!((test.rhs - Complex::new(16.0, 0.0)).norm() < 1e-12);
    let dec = is_uet(&t, &cfg());
    assert_eq!(dec.verdict, Verdict::No);
    finish("1 (halmos counterexample)", start, Duration::from_secs(1));
}

/// Criterion 2: the lower-triangular 3×3 counterexample is disproved by a
/// trace word within budget 6.
#[test]
fn criterion_02_george_counterexample() {
    let start = Instant::now();
    let t = gallery::george();
    let violation = specht_bounded(&t, &t.transpose(), 6, &cfg())
        .unwrap()
        .expect("a violating word within budget 6");
    assert!(violation.word.len() <= 6);
    assert!((violation.lhs - violation.rhs).norm() > 1.0);
    let dec = is_uet(&t, &cfg());
    assert_eq!(dec.verdict, Verdict::No);
    finish("2 (george counterexample)", start, Duration::from_secs(1));
}

fn two_by_two_matrices() -> impl Iterator<Item = Matrix> {
    (0..500u64).map(|seed| random_matrix(2, 20_000 + seed))
}

/// Criterion 3: every 2×2 matrix is UECSM; 500 seeded instances with
/// certificate residual at most 1e-6.
#[test]
fn criterion_03_two_by_two_uecsm() {
    let start = Instant::now();
    for (i, t) in two_by_two_matrices().enumerate() {
        let dec = is_uecsm(&t, &cfg());
        assert_eq!(dec.verdict, Verdict::Yes, "instance {i}");
        let cert = dec.certificate.expect("yes carries a certificate");
        assert!(
            cert.residual <= 1e-6,
            "instance {i}: residual {:.3e}",
            cert.residual
        );
        assert_eq!(cert.symmetry_class, SymmetryClass::Symmetric);
    }
    finish("3 (500 random 2x2 UECSM)", start, Duration::from_secs(10));
}

/// Criterion 4: for 200 seeded unitaries U, `det(U·conj(U)) = 1` to 1e-10
/// and the spectrum of `U·conj(U)` equals its conjugate multiset to 1e-8
/// under matched pairing.
#[test]
fn criterion_04_uubar_spectrum() {
    let start = Instant::now();
    for i in 0..200u64 {
        let n = 2 + (i % 9) as usize;
        let u = gallery::haar_unitary(n, &mut ChaCha12Rng::seed_from_u64(30_000 + i));
        let v = &u * u.conjugate();
        let det = determinant(&v);
        assert!(
            (det - Complex::new(1.0, 0.0)).norm() <= 1e-10,
            "instance {i}: det {det}"
        );
        let (vals, _) = eig_normal(&v, &cfg()).unwrap();
        let mut pool: Vec<Complex<f64>> = vals.iter().map(|z| z.conj()).collect();
        for lam in &vals {
            let (idx, dist) = pool
                .iter()
                .enumerate()
                .map(|(k, z)| (k, (z - lam).norm()))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            assert!(dist <= 1e-8, "instance {i}: unmatched eigenvalue {lam}");
            pool.swap_remove(idx);
        }
    }
    finish("4 (spectra of U·conj(U))", start, Duration::from_secs(10));
}

/// Criterion 5: 200 random 4×4 and 50 random 6×6 antiskewsymmetric
/// matrices are all reducible, and the printed 6×6 companion commutes with
/// the d = 3 generator to 1e-12.
#[test]
fn criterion_05_small_asms_reducible() {
    let start = Instant::now();
    for seed in 0..200u64 {
        let t = gallery::generate_matrix(
            &GeneratorSpec::RandomAsm {
                d: 2,
                seed: 40_000 + seed,
            },
            &cfg(),
        )
        .unwrap();
        let dim = hermitian_commutant(&t, &cfg()).dim_real();
        assert!(dim >= 2, "4x4 seed {seed}: commutant dimension {dim}");
    }
    for seed in 0..50u64 {
        let t = gallery::generate_matrix(
            &GeneratorSpec::RandomAsm {
                d: 3,
                seed: 41_000 + seed,
            },
            &cfg(),
        )
        .unwrap();
        let dim = hermitian_commutant(&t, &cfg()).dim_real();
        assert!(dim >= 2, "6x6 seed {seed}: commutant dimension {dim}");
    }
    let t = gallery::prop71_matrix(3);
    let q = gallery::commuting_companion_d3();
    assert!((&q * &t - &t * &q).norm() <= 1e-12);
    let tr = q.trace() / Complex::new(6.0, 0.0);
    assert!(
        (&q - identity(6) * tr).norm() > 1.0,
        "companion must be non-scalar"
    );
    finish("5 (small ASMs reducible)", start, Duration::from_secs(60));
}

/// Criterion 6: the generators for d = 4, 5, 6 are irreducible and satisfy
/// the symplectic identity to machine precision.
#[test]
fn criterion_06_irreducible_generators() {
    let start = Instant::now();
    for d in [4usize, 5, 6] {
        let t = gallery::prop71_matrix(d);
        let om = omega(d);
        assert!(
            (&t + &om * t.transpose() * &om).norm() <= 1e-13,
            "d = {d}: symplectic identity"
        );
        let dim = hermitian_commutant(&t, &cfg()).dim_real();
        assert_eq!(dim, 1, "d = {d}: commutant dimension {dim}");
    }
    finish(
        "6 (irreducible ASM generators)",
        start,
        Duration::from_secs(30),
    );
}

/// One seeded mixture for the round-trip criteria: the expected shape, the
/// scrambled matrix.
fn mixture(seed: u64) -> (Vec<(SummandKind, usize)>, Matrix) {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let block_count = 2 + (rng.random::<u64>() % 2) as usize;
    let mut expected = Vec::new();
    let mut blocks = Vec::new();
    for _ in 0..block_count {
        match rng.random::<u64>() % 4 {
            0 | 3 => {
                let n = 1 + (rng.random::<u64>() % 5) as usize;
                // resample until the symmetrized Gaussian is irreducible
                // (generic, but guarded for determinism)
                let mut sub = rng.random::<u64>();
                let csm = loop {
                    let c = gallery::generate_matrix(
                        &GeneratorSpec::RandomCsm { n, seed: sub },
                        &cfg(),
                    )
                    .unwrap();
                    if n == 1 || hermitian_commutant(&c, &cfg()).dim_real() == 1 {
                        break c;
                    }
                    sub = sub.wrapping_add(1);
                };
                expected.push((SummandKind::I, n));
                blocks.push(csm);
            }
            1 => {
                expected.push((SummandKind::II, 8));
                blocks.push(gallery::prop71_matrix(4));
            }
            _ => {
                let a = if rng.random::<bool>() {
                    gallery::halmos()
                } else {
                    gallery::george()
                };
                expected.push((SummandKind::III, 6));
                blocks.push(direct_sum(&[a.clone(), a.transpose()]));
            }
        }
    }
    let sum = direct_sum(&blocks);
    let w = gallery::haar_unitary(sum.nrows(), &mut rng);
    expected.sort();
    (expected, &w * sum * w.adjoint())
}

/// Criterion 7: 50 seeded scrambled mixtures; the decomposition recovers
/// the exact (kind, size) multiset in at least 48, with relative
/// reconstruction residual at most 1e-6, and the rest fail loudly rather
/// than misclassify.
#[test]
fn criterion_07_canonical_round_trip() {
    let start = Instant::now();
    let mut recovered = 0;
    let mut loud_failures = Vec::new();
    for i in 0..50u64 {
        let (expected, t) = mixture(70_000 + i);
        match decompose_canonical(&t, &cfg()) {
            Ok(d) => {
                assert_eq!(
                    d.shape(),
                    expected,
                    "mixture {i} misclassified: got {:?}, expected {:?}",
                    d.shape(),
                    expected
                );
                let resid = (d.reconstruct() - &t).norm();
                assert!(
                    resid <= 1e-6 * (1.0 + t.norm()),
                    "mixture {i}: reconstruction residual {resid:.3e}"
                );
                recovered += 1;
            }
            Err(e) => loud_failures.push(format!("mixture {i}: {e}")),
        }
    }
    assert!(
        recovered >= 48,
        "only {recovered}/50 mixtures recovered; failures: {loud_failures:?}"
    );
    finish(
        &format!("7 (round trip, {recovered}/50 recovered)"),
        start,
        Duration::from_secs(300),
    );
}

/// One seeded small UET matrix (size ≤ 7) for the corollary region: direct
/// sums of small symmetric blocks and 3×3 ⊕ 3×3ᵗ pairs, scrambled.
fn small_uet(seed: u64) -> Matrix {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut blocks: Vec<Matrix> = Vec::new();
    let mut total = 0usize;
    if rng.random::<bool>() {
        let a = random_matrix(3, rng.random::<u64>());
        blocks.push(direct_sum(&[a.clone(), a.transpose()]));
        total += 6;
    }
    while total < 7 {
        let n = 1 + (rng.random::<u64>() % 3) as usize;
        if total + n > 7 {
            break;
        }
        let sub = rng.random::<u64>();
        blocks.push(
            gallery::generate_matrix(&GeneratorSpec::RandomCsm { n, seed: sub }, &cfg()).unwrap(),
        );
        total += n;
        if rng.random::<u64>() % 3 == 0 {
            break;
        }
    }
    if blocks.is_empty() {
        blocks.push(
            gallery::generate_matrix(&GeneratorSpec::RandomCsm { n: 2, seed }, &cfg()).unwrap(),
        );
    }
    let sum = direct_sum(&blocks);
    let w = gallery::haar_unitary(sum.nrows(), &mut rng);
    &w * sum * w.adjoint()
}

/// Criterion 8: 100 constructed UET matrices of size ≤ 7 decompose with no
/// type II summand and admit a global symmetric realization with residual
/// at most 1e-6.
#[test]
fn criterion_08_small_dimension_symmetric() {
    let start = Instant::now();
    for i in 0..100u64 {
        let t = small_uet(80_000 + i);
        let d = decompose_canonical(&t, &cfg())
            .unwrap_or_else(|e| panic!("small case {i} failed to decompose: {e}"));
        assert!(
            d.summands.iter().all(|s| s.kind != SummandKind::II),
            "case {i}: type II in dimension {} <= 7",
            t.nrows()
        );
        let (s, w) = global_symmetric_realization(&t, &d, &cfg())
            .unwrap()
            .expect("no type II summands");
        let sym_defect = mtt_core::linalg::symmetry_defect(&s);
        assert!(
            sym_defect <= 1e-6 * (1.0 + s.norm()),
            "case {i}: symmetric realization defect {sym_defect:.3e}"
        );
        let resid = (&w * &s * w.adjoint() - &t).norm();
        assert!(
            resid <= 1e-6 * (1.0 + t.norm()),
            "case {i}: realization residual {resid:.3e}"
        );
    }
    finish(
        "8 (size <= 7 symmetric realization)",
        start,
        Duration::from_secs(120),
    );
}

/// Criterion 9: over 1000 seeded 3×3 matrices the full decider agrees with
/// the trace test whenever it is determined, and is undetermined at most
/// 1% of the time.
#[test]
fn criterion_09_three_by_three_consistency() {
    let start = Instant::now();
    let mut undetermined = 0;
    for i in 0..1000u64 {
        let t = random_matrix(3, 90_000 + i);
        let dec = is_uet(&t, &cfg());
        let test = uecsm_test_3x3(&t, &cfg()).unwrap();
        match dec.verdict {
            Verdict::Undetermined => undetermined += 1,
            Verdict::Yes => assert!(test.holds, "instance {i}: decider yes, test no"),
            Verdict::No => assert!(!test.holds, "instance {i}: decider no, test yes"),
        }
    }
    assert!(
        undetermined <= 10,
        "undetermined rate {undetermined}/1000 exceeds 1%"
    );
    finish(
        &format!("9 (3x3 consistency, {undetermined}/1000 undetermined)"),
        start,
        Duration::from_secs(120),
    );
}

/// Criterion 10: every yes-certificate produced by the deterministic
/// batteries of criteria 1–9 passes the no-search verifier, and a sample
/// passes the actual `mtt verify` binary.
#[test]
fn criterion_10_certificate_soundness() {
    let start = Instant::now();
    let mut certs: Vec<(Matrix, CertKind, UetCertificate)> = Vec::new();
    // criterion 3 battery
    for t in two_by_two_matrices() {
        let dec = is_uecsm(&t, &cfg());
        if let Some(c) = dec.certificate {
            certs.push((t, CertKind::Uecsm, c));
        }
    }
    // a slice of the criterion 7 mixtures, including every summand
    // certificate of their decompositions
    for i in 0..6u64 {
        let (_, t) = mixture(70_000 + i);
        let dec = is_uet(&t, &cfg());
        if let Some(c) = dec.certificate.clone() {
            certs.push((t.clone(), CertKind::Uet, c));
        }
        if let Ok(d) = mtt_core::canonical::decompose_with_decision(&t, &dec, &cfg()) {
            for s in &d.summands {
                let kind = match s.certificate.symmetry_class {
                    SymmetryClass::Symmetric => CertKind::Uecsm,
                    SymmetryClass::Skew => CertKind::Ueasm,
                    SymmetryClass::Neither => CertKind::Uet,
                };
                certs.push((s.matrix.clone(), kind, s.certificate.clone()));
            }
        }
    }
    // criterion 8 slice
    for i in 0..6u64 {
        let t = small_uet(80_000 + i);
        let dec = is_uecsm(&t, &cfg());
        if let Some(c) = dec.certificate {
            certs.push((t, CertKind::Uecsm, c));
        }
    }
    assert!(certs.len() > 510, "expected a substantial certificate pool");
    for (i, (t, kind, cert)) in certs.iter().enumerate() {
        let violations = check_certificate(t, *kind, &cert.u, cert.alpha, &cfg());
        assert!(
            violations.is_empty(),
            "certificate {i} ({kind:?}) failed re-verification: {violations:?}"
        );
    }
    // drive a sample through the real binary
    let dir = tempfile::tempdir().unwrap();
    for (i, (t, kind, cert)) in certs.iter().step_by(certs.len() / 5).enumerate() {
        let tpath = dir.path().join(format!("m{i}.json"));
        std::fs::write(&tpath, mtt_core::json::matrix_to_json(t)).unwrap();
        let repr = mtt_core::json::certificate_to_repr(*kind, cert, "acceptance");
        let cpath = dir.path().join(format!("c{i}.json"));
        std::fs::write(&cpath, serde_json::to_string_pretty(&repr).unwrap()).unwrap();
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_mtt"))
            .args(["verify"])
            .arg(&tpath)
            .arg(&cpath)
            .output()
            .expect("binary runs");
        assert_eq!(
            out.status.code(),
            Some(0),
            "binary verify failed: {}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
    finish(
        &format!("10 (soundness of {} certificates)", certs.len()),
        start,
        Duration::from_secs(60),
    );
}
