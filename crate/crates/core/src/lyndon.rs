//! Lyndon compositions, the straightening of monomial quasisymmetric
//! functions into polynomials in Lyndon ones, and the universal endomorphism
//! matrices `A_n` whose entries are polynomials in the variables `u_alpha`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use crate::composition::{compositions, Composition};
use crate::error::Error;
use crate::qsym::{quasi_shuffle, quasi_shuffle_product, Basis, QSymElement};
use crate::rational::Rational;
use crate::upoly::UPolynomial;

/// True iff `alpha` is strictly lexicographically smaller than each of its
/// nontrivial cyclic rotations.
pub fn is_lyndon(alpha: &Composition) -> Result<bool, Error> {
    if alpha.is_empty() {
        return Err(Error::EmptyComposition);
    }
    let parts = alpha.parts();
    for rot in 1..parts.len() {
        let rotated: Vec<usize> = parts[rot..]
            .iter()
            .chain(&parts[..rot])
            .copied()
            .collect();
        if parts >= &rotated[..] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All Lyndon compositions of weight exactly `n`.
pub fn lyndon_compositions(n: usize) -> Vec<Composition> {
    compositions(n)
        .into_iter()
        .filter(|c| !c.is_empty() && is_lyndon(c).expect("nonempty"))
        .collect()
}

fn memo() -> &'static Mutex<HashMap<Composition, UPolynomial>> {
    static MEMO: OnceLock<Mutex<HashMap<Composition, UPolynomial>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Expresses `M_beta` as a polynomial in the monomial functions indexed by
/// Lyndon compositions, as an element of `Q[u_alpha]`.
///
/// The straightening step: take the earliest `k` such that the suffix
/// `(a_k, ..., a_l)` is Lyndon. The quasi-shuffle product of the prefix and
/// suffix contains `M_beta`; every other summand has fewer parts or is
/// lexicographically smaller of the same length, so recursion terminates.
/// Expansions are memoized process-wide; they are often exponential in size.
pub fn lyndon_expand(beta: &Composition) -> Result<UPolynomial, Error> {
    if beta.is_empty() {
        return Err(Error::EmptyComposition);
    }
    if let Some(hit) = memo().lock().expect("poisoned").get(beta) {
        return Ok(hit.clone());
    }
    let result = expand_uncached(beta)?;
    memo()
        .lock()
        .expect("poisoned")
        .insert(beta.clone(), result.clone());
    Ok(result)
}

fn expand_uncached(beta: &Composition) -> Result<UPolynomial, Error> {
    if is_lyndon(beta)? {
        return Ok(UPolynomial::var(beta.clone()));
    }
    let parts = beta.parts();
    let len = parts.len();
    let cut = (1..len)
        .find(|&k| {
            let suffix = Composition::new(parts[k..].to_vec()).expect("positive");
            is_lyndon(&suffix).expect("nonempty")
        })
        .expect("a single part is always Lyndon");
    let prefix = Composition::new(parts[..cut].to_vec()).expect("positive");
    let suffix = Composition::new(parts[cut..].to_vec()).expect("positive");

    let shuffles = quasi_shuffle(prefix.parts(), suffix.parts());
    let own_mult = shuffles[beta];

    let mut acc = &lyndon_expand(&prefix)? * &UPolynomial::var(suffix);
    for (gamma, mult) in &shuffles {
        if gamma == beta {
            continue;
        }
        debug_assert!(
            gamma.length() < len || (gamma.length() == len && gamma.parts() < parts),
            "straightening must reduce"
        );
        let term = lyndon_expand(gamma)?.scale(&Rational::int(*mult as i64));
        acc = &acc - &term;
    }
    Ok(acc.scale(&Rational::new(1, own_mult as i64)))
}

/// Substitutes `M_alpha` for each variable `u_alpha` and multiplies out in
/// the quasi-shuffle algebra; the polynomial must be homogeneous of weight
/// `grade`.
pub fn substitute_monomials(poly: &UPolynomial, grade: usize) -> Result<QSymElement, Error> {
    let mut out = QSymElement::zero(grade, Basis::M);
    for (monomial, coeff) in poly.terms() {
        let mut term = QSymElement::unit(Basis::M);
        for (alpha, exp) in monomial.factors() {
            let m = QSymElement::monomial(alpha.clone());
            for _ in 0..exp {
                term = quasi_shuffle_product(&term, &m)?;
            }
        }
        if term.grade() != grade {
            return Err(Error::WeightMismatch(term.grade(), grade));
        }
        out = out.add(&term.scale(coeff))?;
    }
    Ok(out)
}

/// The grade-`n` universal matrix: rows and columns indexed by `Comp(n)` in
/// canonical order, entries in `Q[u_alpha]`, lower triangular with diagonal
/// `u_(a_1) ... u_(a_k)` at `alpha`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AMatrix {
    n: usize,
    comps: Vec<Composition>,
    entries: Vec<Vec<UPolynomial>>,
}

impl AMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn compositions(&self) -> &[Composition] {
        &self.comps
    }

    /// `A_n(beta, alpha)`: row `beta`, column `alpha`.
    pub fn entry(&self, beta: &Composition, alpha: &Composition) -> &UPolynomial {
        let i = self.comps.iter().position(|c| c == beta).expect("row index");
        let j = self.comps.iter().position(|c| c == alpha).expect("column index");
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<UPolynomial>] {
        &self.entries
    }

    /// Total number of monomials across all entries.
    pub fn term_count(&self) -> usize {
        self.entries
            .iter()
            .flat_map(|row| row.iter().map(UPolynomial::num_terms))
            .sum()
    }
}

/// Builds `A_n` from cached Lyndon expansions: the entry at `(beta, alpha)`
/// with `alpha <= beta` is the product of the expansions of the blocks of
/// `beta` summing to the parts of `alpha`, and zero otherwise.
pub fn a_matrix(n: usize) -> Result<AMatrix, Error> {
    let comps = compositions(n);
    let mut entries = Vec::with_capacity(comps.len());
    for beta in &comps {
        let mut row = Vec::with_capacity(comps.len());
        for alpha in &comps {
            let entry = match beta.split_at_sums(alpha) {
                None => UPolynomial::zero(),
                Some(blocks) => {
                    let mut product = UPolynomial::one();
                    for block in blocks {
                        product = &product * &lyndon_expand(&block)?;
                    }
                    product
                }
            };
            row.push(entry);
        }
        entries.push(row);
    }
    Ok(AMatrix { n, comps, entries })
}

/// The fundamental-basis column polynomials `c_(alpha,n) = sum_{beta >= alpha}
/// A_n(beta, n)`, keyed by `alpha`.
pub fn c_column(n: usize) -> Result<BTreeMap<Composition, UPolynomial>, Error> {
    assert!(n >= 1);
    let mut out = BTreeMap::new();
    for alpha in compositions(n) {
        let mut total = UPolynomial::zero();
        for beta in alpha.refinements() {
            total = &total + &lyndon_expand(&beta)?;
        }
        out.insert(alpha, total);
    }
    Ok(out)
}
