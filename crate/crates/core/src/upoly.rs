//! Sparse polynomials in the commuting variables `u_alpha`, one variable per
//! Lyndon composition. These are the entries of the universal endomorphism
//! matrices: specializing the variables to rationals picks out one concrete
//! endomorphism.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::composition::Composition;
use crate::error::Error;
use crate::rational::Rational;

/// Variable index. Ordered by weight, then plain lexicographic order on the
/// parts; this is the order the canonical serialization is built on.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UVar(pub Composition);

impl Ord for UVar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .weight()
            .cmp(&other.0.weight())
            .then_with(|| self.0.parts().cmp(other.0.parts()))
    }
}

impl PartialOrd for UVar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Display name: parts concatenated when they are all single digits
/// (`u1`, `u12`, `u112`), underscore-joined otherwise (`u1_12`).
pub fn var_name(alpha: &Composition) -> String {
    let parts = alpha.parts();
    let sep = if parts.iter().all(|&p| p <= 9) { "" } else { "_" };
    let body: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
    format!("u{}", body.join(sep))
}

/// A monomial: map from variables to positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(BTreeMap<UVar, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(alpha: Composition) -> Self {
        let mut m = BTreeMap::new();
        m.insert(UVar(alpha), 1);
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Composition, u32)> {
        self.0.iter().map(|(v, &e)| (&v.0, e))
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (v, &e) in &other.0 {
            *out.entry(v.clone()).or_insert(0) += e;
        }
        Monomial(out)
    }
}

/// Graded lexicographic: total degree first, then the exponent vectors
/// compared variable-by-variable in ascending variable order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.0.iter();
        let mut b = other.0.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    // earlier variable with a positive exponent wins
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {}
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact polynomial over the `u_alpha`; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UPolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl UPolynomial {
    pub fn zero() -> Self {
        UPolynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        UPolynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        UPolynomial { terms }
    }

    pub fn var(alpha: Composition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(alpha), Rational::one());
        UPolynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, monomial: Monomial, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(monomial) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> UPolynomial {
        if c.is_zero() {
            return UPolynomial::zero();
        }
        UPolynomial {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// All variables occurring with nonzero exponent.
    pub fn variables(&self) -> Vec<Composition> {
        let mut out: Vec<Composition> = Vec::new();
        for (m, _) in self.terms() {
            for (alpha, _) in m.factors() {
                if !out.contains(alpha) {
                    out.push(alpha.clone());
                }
            }
        }
        out
    }

    /// Substitutes rationals for the variables; every occurring variable must
    /// be present in the assignment.
    pub fn evaluate(&self, assignment: &BTreeMap<Composition, Rational>) -> Result<Rational, Error> {
        self.evaluate_with(|alpha| assignment.get(alpha).cloned())
    }

    /// Substitution with a lookup function; `None` means the variable is
    /// unassigned and evaluation fails.
    pub fn evaluate_with<F>(&self, lookup: F) -> Result<Rational, Error>
    where
        F: Fn(&Composition) -> Option<Rational>,
    {
        let mut total = Rational::zero();
        for (monomial, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (alpha, exp) in monomial.factors() {
                let value = lookup(alpha).ok_or_else(|| Error::MissingVariable(alpha.clone()))?;
                term *= &value.pow(exp as i64);
            }
            total += term;
        }
        Ok(total)
    }
}

impl Add<&UPolynomial> for &UPolynomial {
    type Output = UPolynomial;
    fn add(self, rhs: &UPolynomial) -> UPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub<&UPolynomial> for &UPolynomial {
    type Output = UPolynomial;
    fn sub(self, rhs: &UPolynomial) -> UPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Mul<&UPolynomial> for &UPolynomial {
    type Output = UPolynomial;
    fn mul(self, rhs: &UPolynomial) -> UPolynomial {
        let mut out = UPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &UPolynomial {
    type Output = UPolynomial;
    fn neg(self) -> UPolynomial {
        UPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// Canonical serialization: terms in descending graded-lex order, e.g.
/// `"1/6*u1^3 - 1/2*u1*u2 + 1/3*u3"`.
impl fmt::Display for UPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (monomial, coeff)) in self.terms.iter().rev().enumerate() {
            let neg = coeff.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = coeff.abs();
            if monomial.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                let mut first = true;
                for (alpha, exp) in monomial.factors() {
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    write!(f, "{}", var_name(alpha))?;
                    if exp > 1 {
                        write!(f, "^{exp}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for UPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}
