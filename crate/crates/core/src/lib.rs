//! Exact-arithmetic toolkit for random walks on permutations and descent
//! compositions driven by Hopf-algebra endomorphisms of quasisymmetric
//! functions.
//!
//! The layers, bottom to top:
//! - [`rational`], [`composition`], [`permutation`], [`upoly`]: scalars and
//!   the combinatorial index sets.
//! - [`qsym`]: quasisymmetric functions in the monomial and fundamental
//!   bases, with product, coproduct, and basis changes.
//! - [`descent`]: Solomon's descent algebra with the group product, the
//!   concatenation product, its coproduct, and the duality pairing.
//! - [`lyndon`]: straightening onto free Lyndon generators and the universal
//!   matrices `A_n`.
//! - [`endo`]: characters, the induced endomorphisms, transition matrices
//!   `K` / `Kbar` / `Khat`, distributions, lumping, and stationary laws.
//! - [`spectral`]: eigenvalues, the recursive eigenvector construction,
//!   diagonalizability certificates, and eigenvector lifting.
//! - [`shuffles`]: closed-form shuffle laws, exact brute-force oracles, and
//!   seeded Monte Carlo simulators.
//!
//! Everything is exact: the scalar type is an arbitrary-precision rational
//! and no operation carries a tolerance.

pub mod abword;
pub mod composition;
pub mod descent;
pub mod endo;
pub mod error;
pub mod linalg;
pub mod lyndon;
pub mod permutation;
pub mod qsym;
pub mod rational;
pub mod shuffles;
pub mod spectral;
pub mod upoly;
pub mod walk;

pub use composition::{compositions, Composition};
pub use error::Error;
pub use permutation::{permutations, standardize, Permutation};
pub use rational::Rational;
