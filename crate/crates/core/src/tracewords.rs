//! Trace-word unitary invariants.
//!
//! Traces of words in `X` and `X*` are invariant under `X ↦ WXW*` for
//! unitary `W`, so comparing them between `A` and `B` can disprove unitary
//! equivalence.  For 2×2 matrices three traces decide equivalence
//! completely, for 3×3 seven traces do; in general a bounded word sweep is a
//! disproof engine (a mismatch is a proof of non-equivalence, agreement up
//! to a short budget only evidence, since the complete word length bound
//! `2n²` is combinatorially out of reach from 4×4 on).

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{identity, Matrix, Scalar};
use crate::tol::ToleranceConfig;

/// One letter of a trace word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Letter {
    /// the matrix itself, written `x`
    X,
    /// the adjoint, written `*`
    Star,
}

/// A word in the two letters, read left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn parse(s: &str) -> Result<Word> {
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                'x' => letters.push(Letter::X),
                '*' => letters.push(Letter::Star),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "invalid word letter {ch:?}; alphabet is 'x' and '*'"
                    )))
                }
            }
        }
        Ok(Word(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Evaluate the word product at `x`.
    pub fn evaluate(&self, x: &Matrix) -> Matrix {
        let adj = x.adjoint();
        let mut acc = identity(x.nrows());
        for letter in &self.0 {
            acc = match letter {
                Letter::X => acc * x,
                Letter::Star => acc * &adj,
            };
        }
        acc
    }

    /// `tr w(X, X*)`.
    pub fn trace(&self, x: &Matrix) -> Scalar {
        self.evaluate(x).trace()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for letter in &self.0 {
            f.write_str(match letter {
                Letter::X => "x",
                Letter::Star => "*",
            })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimClass {
    Two,
    Three,
    General,
}

/// An ordered list of trace values together with the words that produced
/// them.
#[derive(Debug, Clone)]
pub struct TraceProfile {
    pub dim_class: DimClass,
    pub values: Vec<Scalar>,
    pub word_set: Vec<Word>,
}

fn words(strings: &[&str]) -> Vec<Word> {
    strings.iter().map(|s| Word::parse(s).unwrap()).collect()
}

/// The three-trace profile `(tr X, tr X², tr X*X)` deciding unitary
/// equivalence of 2×2 matrices.
pub fn profile_2x2(x: &Matrix) -> Result<TraceProfile> {
    if x.nrows() != 2 || x.ncols() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            got: x.nrows(),
        });
    }
    let word_set = words(&["x", "xx", "*x"]);
    let values = word_set.iter().map(|w| w.trace(x)).collect();
    Ok(TraceProfile {
        dim_class: DimClass::Two,
        values,
        word_set,
    })
}

/// The seven-trace profile
/// `(tr X, tr X², tr X³, tr X*X, tr X*X², tr X*²X², tr X*X²X*²X)`
/// deciding unitary equivalence of 3×3 matrices.
pub fn profile_3x3(x: &Matrix) -> Result<TraceProfile> {
    if x.nrows() != 3 || x.ncols() != 3 {
        return Err(Error::WrongDimension {
            expected: 3,
            got: x.nrows(),
        });
    }
    let word_set = words(&["x", "xx", "xxx", "*x", "*xx", "**xx", "*xx**x"]);
    let values = word_set.iter().map(|w| w.trace(x)).collect();
    Ok(TraceProfile {
        dim_class: DimClass::Three,
        values,
        word_set,
    })
}

/// Outcome of the 3×3 trace test, with the two word traces for reporting.
#[derive(Debug, Clone)]
pub struct TraceTest3x3 {
    pub holds: bool,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

/// Decides whether a 3×3 matrix is UECSM (equivalently, UET):
/// `tr X*X²X*²X = tr XX*²X²X*` within a tolerance scaled like the
/// sixth power of the norm.
pub fn uecsm_test_3x3(x: &Matrix, cfg: &ToleranceConfig) -> Result<TraceTest3x3> {
    if x.nrows() != 3 || x.ncols() != 3 {
        return Err(Error::WrongDimension {
            expected: 3,
            got: x.nrows(),
        });
    }
    let lhs = Word::parse("*xx**x").unwrap().trace(x);
    let rhs = Word::parse("x**xx*").unwrap().trace(x);
    let tol = cfg.eps_residual * (1.0 + x.norm().powi(6));
    Ok(TraceTest3x3 {
        holds: (lhs - rhs).norm() <= tol,
        lhs,
        rhs,
    })
}

/// A word whose traces differ between the two matrices, with both values.
#[derive(Debug, Clone)]
pub struct WordViolation {
    pub word: Word,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

/// Cap on the total number of words a sweep may enumerate.
pub const WORD_CAP: u64 = 1 << 20;

/// Compare `tr w(A, A*)` against `tr w(B, B*)` for every word up to
/// `max_len`, by length then lexicographically (`x` before `*`).  Returns
/// the first violating word if any; agreement is evidence, a violation is a
/// proof of non-equivalence.
pub fn specht_bounded(
    a: &Matrix,
    b: &Matrix,
    max_len: usize,
    cfg: &ToleranceConfig,
) -> Result<Option<WordViolation>> {
    if a.nrows() != b.nrows() || a.ncols() != b.ncols() {
        return Err(Error::DimensionMismatch(a.nrows(), b.nrows()));
    }
    if max_len < 1 {
        return Err(Error::InvalidInput("max_len must be at least 1".into()));
    }
    let words_total = 2u64.saturating_pow(max_len as u32 + 1).saturating_sub(2);
    if words_total > WORD_CAP {
        return Err(Error::BudgetTooLarge {
            words: words_total,
            cap: WORD_CAP,
        });
    }
    let scale = a.norm().max(b.norm());
    let a_adj = a.adjoint();
    let b_adj = b.adjoint();
    let n = a.nrows();
    let mut prefix = Vec::new();
    for len in 1..=max_len {
        let tol = cfg.eps_residual * (1.0 + scale.powi(len as i32));
        if let Some(v) = sweep(
            a,
            &a_adj,
            b,
            &b_adj,
            &identity(n),
            &identity(n),
            &mut prefix,
            len,
            tol,
        ) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    a: &Matrix,
    a_adj: &Matrix,
    b: &Matrix,
    b_adj: &Matrix,
    prod_a: &Matrix,
    prod_b: &Matrix,
    prefix: &mut Vec<Letter>,
    remaining: usize,
    tol: f64,
) -> Option<WordViolation> {
    if remaining == 0 {
        let lhs = prod_a.trace();
        let rhs = prod_b.trace();
        if (lhs - rhs).norm() > tol {
            return Some(WordViolation {
                word: Word(prefix.clone()),
                lhs,
                rhs,
            });
        }
        return None;
    }
    for letter in [Letter::X, Letter::Star] {
        let next_a = match letter {
            Letter::X => prod_a * a,
            Letter::Star => prod_a * a_adj,
        };
        let next_b = match letter {
            Letter::X => prod_b * b,
            Letter::Star => prod_b * b_adj,
        };
        prefix.push(letter);
        let hit = sweep(
            a,
            a_adj,
            b,
            b_adj,
            &next_a,
            &next_b,
            prefix,
            remaining - 1,
            tol,
        );
        prefix.pop();
        if hit.is_some() {
            return hit;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{from_real_rows, polar_unitary, zeros};
    use num_complex::Complex;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn halmos() -> Matrix {
        from_real_rows(&[&[0.0, 1.0, 0.0], &[0.0, 0.0, 2.0], &[0.0, 0.0, 0.0]])
    }

    fn george() -> Matrix {
        from_real_rows(&[&[1.0, 0.0, 0.0], &[4.0, 3.0, 0.0], &[0.0, 2.0, 5.0]])
    }

    fn random_matrix(n: usize, seed: u64) -> Matrix {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        Matrix::from_fn(n, n, |_, _| crate::tol::gaussian_complex(&mut rng))
    }

    #[test]
    fn word_round_trip() {
        let w = Word::parse("x*xx**x").unwrap();
        assert_eq!(w.to_string(), "x*xx**x");
        assert_eq!(w.len(), 7);
        assert!(Word::parse("xy").is_err());
    }

    #[test]
    fn profile_2x2_basics() {
        let p = profile_2x2(&identity(2)).unwrap();
        for v in &p.values {
            assert!((v - Complex::new(2.0, 0.0)).norm() < 1e-14);
        }
        let z = profile_2x2(&zeros(2, 2)).unwrap();
        for v in &z.values {
            assert!(v.norm() < 1e-14);
        }
        // nilpotent [[0,1],[0,0]]: (0, 0, 1), oracle by direct multiplication
        let n = from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let p = profile_2x2(&n).unwrap();
        assert!(p.values[0].norm() < 1e-14);
        assert!(p.values[1].norm() < 1e-14);
        assert!((p.values[2] - Complex::new(1.0, 0.0)).norm() < 1e-14);
        assert!(profile_2x2(&identity(3)).is_err());
    }

    #[test]
    fn profile_3x3_identity_and_halmos() {
        let p = profile_3x3(&identity(3)).unwrap();
        assert_eq!(p.values.len(), 7);
        for v in &p.values {
            assert!((v - Complex::new(3.0, 0.0)).norm() < 1e-14);
        }
        // seventh entry of the Halmos profile is 4: five-product chain
        // verified by direct multiplication in svd_halmos_singular_values'
        // companion hand computation
        let p = profile_3x3(&halmos()).unwrap();
        assert!((p.values[6] - Complex::new(4.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn profiles_are_unitary_invariants() {
        for seed in 0..5 {
            let x = random_matrix(3, seed);
            let w = polar_unitary(&random_matrix(3, 100 + seed));
            let y = &w * &x * w.adjoint();
            let px = profile_3x3(&x).unwrap();
            let py = profile_3x3(&y).unwrap();
            for (a, b) in px.values.iter().zip(py.values.iter()) {
                assert!((a - b).norm() < 1e-10 * (1.0 + x.norm().powi(6)));
            }
        }
    }

    #[test]
    fn first_six_profile_entries_transpose_invariant() {
        for seed in 0..5 {
            let x = random_matrix(3, 30 + seed);
            let px = profile_3x3(&x).unwrap();
            let pt = profile_3x3(&x.transpose()).unwrap();
            for i in 0..6 {
                assert!(
                    (px.values[i] - pt.values[i]).norm() < 1e-10 * (1.0 + x.norm().powi(4)),
                    "entry {i} moved under transpose"
                );
            }
        }
    }

    #[test]
    fn trace_test_halmos_4_vs_16() {
        let r = uecsm_test_3x3(&halmos(), &cfg()).unwrap();
        assert!(!r.holds);
        assert!((r.lhs - Complex::new(4.0, 0.0)).norm() < 1e-12);
        assert!((r.rhs - Complex::new(16.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn trace_test_george_fails() {
        let r = uecsm_test_3x3(&george(), &cfg()).unwrap();
        assert!(!r.holds, "lhs {} rhs {}", r.lhs, r.rhs);
    }

    #[test]
    fn trace_test_symmetric_passes() {
        for seed in 0..5 {
            let g = random_matrix(3, 60 + seed);
            let s = (&g + g.transpose()).scale(0.5);
            assert!(uecsm_test_3x3(&s, &cfg()).unwrap().holds);
        }
    }

    #[test]
    fn trace_test_decision_is_unitary_invariant() {
        for seed in 0..5 {
            let x = random_matrix(3, 90 + seed);
            let w = polar_unitary(&random_matrix(3, 200 + seed));
            let y = &w * &x * w.adjoint();
            assert_eq!(
                uecsm_test_3x3(&x, &cfg()).unwrap().holds,
                uecsm_test_3x3(&y, &cfg()).unwrap().holds
            );
        }
    }

    #[test]
    fn specht_equal_matrices_agree() {
        let a = random_matrix(3, 7);
        assert!(specht_bounded(&a, &a, 6, &cfg()).unwrap().is_none());
    }

    #[test]
    fn specht_unitary_conjugate_agrees() {
        let a = random_matrix(4, 8);
        let w = polar_unitary(&random_matrix(4, 9));
        let b = &w * &a * w.adjoint();
        assert!(specht_bounded(&a, &b, 6, &cfg()).unwrap().is_none());
    }

    #[test]
    fn specht_halmos_vs_transpose_violates_at_length_6() {
        let t = halmos();
        let v = specht_bounded(&t, &t.transpose(), 6, &cfg())
            .unwrap()
            .expect("halmos must be detected");
        assert_eq!(v.word.len(), 6);
        // independent oracle: recompute both traces by direct multiplication
        let lhs = v.word.trace(&t);
        let rhs = v.word.trace(&t.transpose());
        assert!((lhs - v.lhs).norm() < 1e-12);
        assert!((rhs - v.rhs).norm() < 1e-12);
        assert!((lhs - rhs).norm() > 1.0);
        // and no shorter word violates
        assert!(specht_bounded(&t, &t.transpose(), 5, &cfg())
            .unwrap()
            .is_none());
    }

    #[test]
    fn specht_budget_cap() {
        let a = random_matrix(2, 1);
        assert!(matches!(
            specht_bounded(&a, &a, 25, &cfg()),
            Err(Error::BudgetTooLarge { .. })
        ));
    }
}
