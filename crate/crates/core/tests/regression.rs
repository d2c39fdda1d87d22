//! The hard-coded regression vectors: the explicit commuting companion of
//! the d = 3 generator and the two classical non-UET matrices.

use mtt_core::commutant::hermitian_commutant;
use mtt_core::gallery::{regression_vectors, RegressionExpectation};
use mtt_core::intertwiner::{is_uet, Verdict};
use mtt_core::linalg::identity;
use mtt_core::ToleranceConfig;
use num_complex::Complex;

#[test]
fn regression_vectors_hold() {
    let cfg = ToleranceConfig::default();
    let vectors = regression_vectors();
    assert_eq!(vectors.len(), 3);
    for v in vectors {
        match &v.expectation {
            RegressionExpectation::CommutesNonScalar(q) => {
                let t = &v.matrix;
                // exact rational entries: commutation residual at the
                // machine-zero level
                let resid = (q * t - t * q).norm();
                assert!(resid <= 1e-12, "{}: residual {resid:.3e}", v.name);
                let n = q.nrows();
                let mean = q.trace() / Complex::new(n as f64, 0.0);
                assert!(
                    (q - identity(n) * mean).norm() > 1.0,
                    "{}: companion is scalar",
                    v.name
                );
                // and it certifies reducibility
                assert!(
                    hermitian_commutant(t, &cfg).dim_real() >= 2,
                    "{}: expected a reducible matrix",
                    v.name
                );
            }
            RegressionExpectation::NotUet => {
                assert_eq!(
                    is_uet(&v.matrix, &cfg).verdict,
                    Verdict::No,
                    "{} must not be UET",
                    v.name
                );
            }
        }
    }
}
