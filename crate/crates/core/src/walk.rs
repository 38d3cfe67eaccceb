//! Exact probability distributions and row-stochastic transition matrices
//! over an arbitrary ordered state space, plus stationary-law extraction by
//! exact kernel computation.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::linalg::QMatrix;
use crate::rational::Rational;

/// Probability distribution with exact rational masses.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Distribution<S: Ord + Clone> {
    probs: BTreeMap<S, Rational>,
}

impl<S: Ord + Clone> Distribution<S> {
    /// Validates nonnegativity and total mass one; zero masses are dropped.
    pub fn new(probs: BTreeMap<S, Rational>) -> Result<Self, Error> {
        let mut total = Rational::zero();
        for v in probs.values() {
            if v.is_negative() {
                return Err(Error::InvalidParameter("negative probability".into()));
            }
            total += v;
        }
        if total != Rational::one() {
            return Err(Error::InvalidParameter(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(Distribution {
            probs: probs.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        })
    }

    pub fn probs(&self) -> &BTreeMap<S, Rational> {
        &self.probs
    }

    pub fn prob(&self, state: &S) -> Rational {
        self.probs.get(state).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &S> {
        self.probs.keys()
    }
}

/// Row-stochastic matrix over an explicit ordered state list; rows are
/// source states.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TransitionMatrix<S: Ord + Clone> {
    states: Vec<S>,
    index: BTreeMap<S, usize>,
    mat: QMatrix,
}

impl<S: Ord + Clone> TransitionMatrix<S> {
    pub fn new(states: Vec<S>, mat: QMatrix) -> Result<Self, Error> {
        if mat.rows() != states.len() || mat.cols() != states.len() {
            return Err(Error::InvalidParameter("matrix size mismatch".into()));
        }
        if !mat.is_row_stochastic() {
            return Err(Error::InvalidParameter("matrix is not row-stochastic".into()));
        }
        let index = states
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        Ok(TransitionMatrix { states, index, mat })
    }

    pub fn states(&self) -> &[S] {
        &self.states
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.mat
    }

    pub fn size(&self) -> usize {
        self.states.len()
    }

    pub fn state_index(&self, state: &S) -> Option<usize> {
        self.index.get(state).copied()
    }

    pub fn entry(&self, from: &S, to: &S) -> &Rational {
        let i = self.index[from];
        let j = self.index[to];
        self.mat.get(i, j)
    }

    pub fn row_distribution(&self, from: &S) -> Distribution<S> {
        let i = self.index[from];
        let probs = self
            .states
            .iter()
            .enumerate()
            .map(|(j, s)| (s.clone(), self.mat.get(i, j).clone()))
            .collect();
        Distribution::new(probs).expect("rows are stochastic")
    }

    pub fn pow(&self, exp: u32) -> TransitionMatrix<S> {
        TransitionMatrix {
            states: self.states.clone(),
            index: self.index.clone(),
            mat: self.mat.pow(exp),
        }
    }
}

/// Result of exact stationary analysis of a row-stochastic matrix: the
/// kernel of `(M^T - I)` holds the left eigenvectors at eigenvalue one.
#[derive(Clone, Debug)]
pub struct StationaryResult<S: Ord + Clone> {
    pub kernel_dim: usize,
    pub unique: bool,
    /// The stationary law when it is unique; with a degenerate kernel no
    /// canonical choice exists and this is `None`.
    pub distribution: Option<Distribution<S>>,
    /// Kernel basis vectors in state order (unnormalized).
    pub kernel_basis: Vec<Vec<Rational>>,
}

pub fn stationary<S: Ord + Clone>(matrix: &TransitionMatrix<S>) -> StationaryResult<S> {
    let n = matrix.size();
    let system = matrix.matrix().transpose().sub(&QMatrix::identity(n));
    let kernel_basis = system.kernel_basis();
    let kernel_dim = kernel_basis.len();
    let unique = kernel_dim == 1;
    let distribution = if unique {
        let v = &kernel_basis[0];
        let total: Rational = v.iter().cloned().sum();
        // a unique fixed vector of a stochastic matrix normalizes to a
        // genuine distribution
        let normalized: Vec<Rational> = v.iter().map(|x| x / &total).collect();
        let probs = matrix
            .states()
            .iter()
            .cloned()
            .zip(normalized)
            .collect::<BTreeMap<_, _>>();
        Some(Distribution::new(probs).expect("Perron vector"))
    } else {
        None
    };
    StationaryResult { kernel_dim, unique, distribution, kernel_basis }
}
