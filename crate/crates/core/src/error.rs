//! Crate-wide error type.

use thiserror::Error;

use crate::composition::Composition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {0:?} as a rational (expected \"p\" or \"p/q\")")]
    RationalParse(String),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("composition parts must be positive")]
    ZeroPart,

    #[error("cannot parse {0:?} as a composition")]
    CompositionParse(String),

    #[error("cannot parse {0:?} as a permutation")]
    PermutationParse(String),

    #[error("weights differ: {0} vs {1}")]
    WeightMismatch(usize, usize),

    #[error("grades differ: {0} vs {1}")]
    GradeMismatch(usize, usize),

    #[error("element is in the {found} basis, expected {expected}")]
    WrongBasis { expected: &'static str, found: &'static str },

    #[error("values are not pairwise distinct")]
    DuplicateValues,

    #[error("no value assigned to variable u_{0}")]
    MissingVariable(Composition),

    #[error("the empty composition is not allowed here")]
    EmptyComposition,

    #[error("S_n enumeration for n = {n} exceeds the cap {cap}")]
    EnumerationCap { n: usize, cap: usize },

    #[error("brute-force state space for n = {n} exceeds the cap {cap}")]
    BruteForceCap { n: usize, cap: usize },

    #[error("coefficients are not constant on descent classes (class {0})")]
    NotDescentClassConstant(Composition),

    #[error("negative column coefficient at {0}; re-specialize the character values")]
    NegativeWeight(Composition),

    #[error("all column coefficients vanish; no walk is defined")]
    AllZero,

    #[error("the scaling eigenvalue is zero; the walk cannot be normalized")]
    LambdaZero,

    #[error("eigenvalue at degree {0} is zero; no eigenvector is defined")]
    ZeroEigenvalue(usize),

    #[error("eigenvalue collision at degree {m}: lambda_{m} equals lambda_{beta}")]
    EigenvalueCollision { m: usize, beta: Composition },

    #[error("permutation-composition convention self-test failed")]
    ConventionMismatch,

    #[error("input vector is not an eigenvector")]
    NotAnEigenvector,

    #[error("invalid letter {0:?} in ab-word (expected 'a' or 'b')")]
    InvalidLetter(char),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("the partition is not compatible with this endomorphism: {0}")]
    PartitionViolation(String),
}
