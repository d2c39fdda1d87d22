//! Generators for the concrete matrices used throughout the crate and for
//! seeded random instances of each structural class.
//!
//! Everything here is a pure function of its spec (seed included); two calls
//! with the same spec agree bitwise.

use num_complex::Complex;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::antilinear::{omega, Anticonjugation, Conjugation};
use crate::error::{Error, Result};
use crate::linalg::{direct_sum, from_real_rows, householder_qr, zeros, Matrix, Scalar};
use crate::tol::{derive_seed, gaussian_complex, ToleranceConfig};

/// Declarative description of a generated object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    /// the 3×3 weighted shift `[[0,1,0],[0,0,2],[0,0,0]]`
    Halmos,
    /// the 3×3 lower triangular `[[1,0,0],[4,3,0],[0,2,5]]`
    George,
    /// the 2d×2d irreducible antiskewsymmetric generator, `d ≥ 4`
    AsmIrreducible { d: usize },
    /// seeded Gaussian symmetrized to `(G + Gᵗ)/2`
    RandomCsm { n: usize, seed: u64 },
    /// seeded antiskewsymmetric block assembly, output size `2d`
    RandomAsm { d: usize, seed: u64 },
    /// Haar unitary: QR factor of a seeded complex Gaussian with
    /// positive-real R diagonal
    RandomUnitary { n: usize, seed: u64 },
    /// conjugation factor `W Wᵗ` for Haar `W`
    RandomConjugation { n: usize, seed: u64 },
    /// anticonjugation factor `W Ω Wᵗ` for Haar `W`; `n` even
    RandomAnticonjugation { n: usize, seed: u64 },
    /// seeded Toeplitz matrix (constant along diagonals)
    ToeplitzRandom { n: usize, seed: u64 },
    /// block-diagonal assembly of the operands
    DirectSum { operands: Vec<GeneratorSpec> },
    /// direct sum of the operands conjugated by one shared Haar unitary
    Scrambled {
        operands: Vec<GeneratorSpec>,
        seed: u64,
    },
}

/// A generated object: most kinds produce a matrix, the conjugation kinds
/// their antilinear objects.
#[derive(Debug, Clone)]
pub enum Generated {
    Matrix(Matrix),
    Conjugation(Conjugation),
    Anticonjugation(Anticonjugation),
}

impl Generated {
    pub fn into_matrix(self) -> Result<Matrix> {
        match self {
            Generated::Matrix(m) => Ok(m),
            Generated::Conjugation(c) => Ok(c.factor().clone()),
            Generated::Anticonjugation(k) => Ok(k.factor().clone()),
        }
    }
}

pub fn halmos() -> Matrix {
    from_real_rows(&[&[0.0, 1.0, 0.0], &[0.0, 0.0, 2.0], &[0.0, 0.0, 0.0]])
}

pub fn george() -> Matrix {
    from_real_rows(&[&[1.0, 0.0, 0.0], &[4.0, 3.0, 0.0], &[0.0, 2.0, 5.0]])
}

/// The 2d×2d block matrix `[[A, B], [0, A]]` with `A = diag(1..d)` and `B`
/// the skew matrix with +1 strictly above the diagonal.  Antiskewsymmetric
/// for every `d`; irreducible for `d ≥ 4`, and the `d = 3` instance is the
/// regression case with an explicitly known commuting matrix.
pub fn prop71_matrix(d: usize) -> Matrix {
    let mut m = zeros(2 * d, 2 * d);
    for i in 0..d {
        m[(i, i)] = Complex::new((i + 1) as f64, 0.0);
        m[(d + i, d + i)] = Complex::new((i + 1) as f64, 0.0);
        for j in 0..d {
            if i < j {
                m[(i, d + j)] = Complex::new(1.0, 0.0);
            } else if i > j {
                m[(i, d + j)] = Complex::new(-1.0, 0.0);
            }
        }
    }
    m
}

fn gaussian_matrix(n: usize, rng: &mut ChaCha12Rng) -> Matrix {
    Matrix::from_fn(n, n, |_, _| gaussian_complex(rng))
}

/// Haar-distributed unitary: QR factor with the R diagonal made positive.
pub fn haar_unitary(n: usize, rng: &mut ChaCha12Rng) -> Matrix {
    let g = gaussian_matrix(n, rng);
    let (mut q, r) = householder_qr(&g);
    for k in 0..n {
        if r[(k, k)].re < 0.0 {
            for i in 0..n {
                q[(i, k)] = -q[(i, k)];
            }
        }
    }
    q
}

fn rng_for(seed: u64) -> ChaCha12Rng {
    use rand::SeedableRng;
    ChaCha12Rng::seed_from_u64(seed)
}

/// Run a generator spec.  Bit-reproducible for a fixed spec.
pub fn generate(spec: &GeneratorSpec, cfg: &ToleranceConfig) -> Result<Generated> {
    match spec {
        GeneratorSpec::Halmos => Ok(Generated::Matrix(halmos())),
        GeneratorSpec::George => Ok(Generated::Matrix(george())),
        GeneratorSpec::AsmIrreducible { d } => {
            if *d < 4 {
                return Err(Error::InvalidSpec(format!(
                    "asm_irreducible requires d >= 4, got {d}"
                )));
            }
            Ok(Generated::Matrix(prop71_matrix(*d)))
        }
        GeneratorSpec::RandomCsm { n, seed } => {
            require_positive(*n)?;
            let g = gaussian_matrix(*n, &mut rng_for(*seed));
            Ok(Generated::Matrix((&g + g.transpose()).scale(0.5)))
        }
        GeneratorSpec::RandomAsm { d, seed } => {
            require_positive(*d)?;
            let mut rng = rng_for(*seed);
            let a = gaussian_matrix(*d, &mut rng);
            let g1 = gaussian_matrix(*d, &mut rng);
            let g2 = gaussian_matrix(*d, &mut rng);
            let b = (&g1 - g1.transpose()).scale(0.5);
            let dd = (&g2 - g2.transpose()).scale(0.5);
            let mut m = zeros(2 * d, 2 * d);
            m.view_mut((0, 0), (*d, *d)).copy_from(&a);
            m.view_mut((0, *d), (*d, *d)).copy_from(&b);
            m.view_mut((*d, 0), (*d, *d)).copy_from(&dd);
            m.view_mut((*d, *d), (*d, *d)).copy_from(&a.transpose());
            Ok(Generated::Matrix(m))
        }
        GeneratorSpec::RandomUnitary { n, seed } => {
            require_positive(*n)?;
            Ok(Generated::Matrix(haar_unitary(*n, &mut rng_for(*seed))))
        }
        GeneratorSpec::RandomConjugation { n, seed } => {
            require_positive(*n)?;
            let w = haar_unitary(*n, &mut rng_for(*seed));
            let u = &w * w.transpose();
            Ok(Generated::Conjugation(Conjugation::new(u, cfg)?))
        }
        GeneratorSpec::RandomAnticonjugation { n, seed } => {
            if *n == 0 || *n % 2 != 0 {
                return Err(Error::InvalidSpec(format!(
                    "random_anticonjugation requires even n >= 2, got {n}"
                )));
            }
            let w = haar_unitary(*n, &mut rng_for(*seed));
            let s = &w * omega(*n / 2) * w.transpose();
            Ok(Generated::Anticonjugation(Anticonjugation::new(s, cfg)?))
        }
        GeneratorSpec::ToeplitzRandom { n, seed } => {
            require_positive(*n)?;
            let mut rng = rng_for(*seed);
            let diags: Vec<Scalar> = (0..2 * n - 1).map(|_| gaussian_complex(&mut rng)).collect();
            // diags[k] sits on diagonal j - i = k - (n-1)
            Ok(Generated::Matrix(Matrix::from_fn(*n, *n, |i, j| {
                diags[j + (*n - 1) - i]
            })))
        }
        GeneratorSpec::DirectSum { operands } => {
            if operands.is_empty() {
                return Err(Error::InvalidSpec("direct_sum needs operands".into()));
            }
            let blocks = operands
                .iter()
                .map(|op| generate(op, cfg)?.into_matrix())
                .collect::<Result<Vec<_>>>()?;
            Ok(Generated::Matrix(direct_sum(&blocks)))
        }
        GeneratorSpec::Scrambled { operands, seed } => {
            if operands.is_empty() {
                return Err(Error::InvalidSpec("scrambled needs operands".into()));
            }
            let blocks = operands
                .iter()
                .map(|op| generate(op, cfg)?.into_matrix())
                .collect::<Result<Vec<_>>>()?;
            let sum = direct_sum(&blocks);
            let w = haar_unitary(sum.nrows(), &mut rng_for(derive_seed(*seed, 0x5c72a3)));
            Ok(Generated::Matrix(&w * sum * w.adjoint()))
        }
    }
}

fn require_positive(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidSpec("size must be positive".into()));
    }
    Ok(())
}

/// Convenience wrapper for specs that produce matrices.
pub fn generate_matrix(spec: &GeneratorSpec, cfg: &ToleranceConfig) -> Result<Matrix> {
    generate(spec, cfg)?.into_matrix()
}

/// What a regression vector promises.
#[derive(Debug, Clone)]
pub enum RegressionExpectation {
    /// the companion matrix commutes with the vector's matrix and is not
    /// scalar
    CommutesNonScalar(Matrix),
    /// the matrix is not unitarily equivalent to its transpose
    NotUet,
}

#[derive(Debug, Clone)]
pub struct RegressionVector {
    pub name: &'static str,
    pub matrix: Matrix,
    pub expectation: RegressionExpectation,
}

/// The explicit 6×6 matrix commuting with the `d = 3` generator, entries
/// `±1, ±1/2`.
pub fn commuting_companion_d3() -> Matrix {
    from_real_rows(&[
        &[-1.0, 1.0, 0.5, 1.0, 0.0, 0.0],
        &[1.0, 0.5, 1.0, 0.0, 1.0, 0.0],
        &[0.5, 1.0, -1.0, 0.0, 0.0, 1.0],
        &[1.0, 0.0, 0.0, 1.0, -1.0, -0.5],
        &[0.0, 1.0, 0.0, -1.0, -0.5, -1.0],
        &[0.0, 0.0, 1.0, -0.5, -1.0, 1.0],
    ])
}

/// Hard-coded regression pairs: the `d = 3` generator with its printed
/// commuting matrix, and the two classical non-UET matrices.
pub fn regression_vectors() -> Vec<RegressionVector> {
    vec![
        RegressionVector {
            name: "prop71-d3-commutant",
            matrix: prop71_matrix(3),
            expectation: RegressionExpectation::CommutesNonScalar(commuting_companion_d3()),
        },
        RegressionVector {
            name: "halmos",
            matrix: halmos(),
            expectation: RegressionExpectation::NotUet,
        },
        RegressionVector {
            name: "george",
            matrix: george(),
            expectation: RegressionExpectation::NotUet,
        },
    ]
}
