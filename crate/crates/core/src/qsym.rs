//! Graded quasisymmetric-function elements in the monomial (M) and
//! fundamental (F) bases, with the quasi-shuffle product, the deconcatenation
//! coproduct, and the basis changes between M and F.
//!
//! Elements are stored abstractly as coefficient maps on compositions; they
//! are never expanded as power series.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::composition::Composition;
use crate::error::Error;
use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Basis {
    M,
    F,
}

impl Basis {
    fn name(self) -> &'static str {
        match self {
            Basis::M => "M",
            Basis::F => "F",
        }
    }
}

/// Homogeneous quasisymmetric function of one grade, in one basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSymElement {
    grade: usize,
    basis: Basis,
    coeffs: BTreeMap<Composition, Rational>,
}

impl QSymElement {
    pub fn zero(grade: usize, basis: Basis) -> Self {
        QSymElement { grade, basis, coeffs: BTreeMap::new() }
    }

    /// `M_alpha`.
    pub fn monomial(alpha: Composition) -> Self {
        Self::basis_element(alpha, Basis::M)
    }

    /// `F_alpha`.
    pub fn fundamental(alpha: Composition) -> Self {
        Self::basis_element(alpha, Basis::F)
    }

    fn basis_element(alpha: Composition, basis: Basis) -> Self {
        let grade = alpha.weight();
        let mut coeffs = BTreeMap::new();
        coeffs.insert(alpha, Rational::one());
        QSymElement { grade, basis, coeffs }
    }

    /// The unit of the algebra: `M_() = F_() = 1`.
    pub fn unit(basis: Basis) -> Self {
        Self::basis_element(Composition::empty(), basis)
    }

    pub fn from_coeffs(
        grade: usize,
        basis: Basis,
        coeffs: BTreeMap<Composition, Rational>,
    ) -> Result<Self, Error> {
        for alpha in coeffs.keys() {
            if alpha.weight() != grade {
                return Err(Error::WeightMismatch(alpha.weight(), grade));
            }
        }
        let coeffs = coeffs.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(QSymElement { grade, basis, coeffs })
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &BTreeMap<Composition, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, alpha: &Composition) -> Rational {
        self.coeffs.get(alpha).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, alpha: Composition, value: &Rational) {
        debug_assert_eq!(alpha.weight(), self.grade);
        if value.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(alpha) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += value;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(value.clone());
            }
        }
    }

    pub fn add(&self, other: &QSymElement) -> Result<QSymElement, Error> {
        if self.grade != other.grade {
            return Err(Error::GradeMismatch(self.grade, other.grade));
        }
        self.expect_basis(other.basis)?;
        let mut out = self.clone();
        for (alpha, v) in &other.coeffs {
            out.add_term(alpha.clone(), v);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> QSymElement {
        if c.is_zero() {
            return QSymElement::zero(self.grade, self.basis);
        }
        QSymElement {
            grade: self.grade,
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|(a, v)| (a.clone(), v * c)).collect(),
        }
    }

    fn expect_basis(&self, basis: Basis) -> Result<(), Error> {
        if self.basis != basis {
            return Err(Error::WrongBasis { expected: basis.name(), found: self.basis.name() });
        }
        Ok(())
    }

    /// Rewrites an M-basis element in the F basis, via
    /// `M_alpha = sum_{beta >= alpha} (-1)^(l(beta)-l(alpha)) F_beta`.
    pub fn m_to_f(&self) -> Result<QSymElement, Error> {
        self.expect_basis(Basis::M)?;
        let mut out = QSymElement::zero(self.grade, Basis::F);
        for (alpha, v) in &self.coeffs {
            for beta in alpha.refinements() {
                let sign = if (beta.length() - alpha.length()) % 2 == 0 {
                    v.clone()
                } else {
                    -v
                };
                out.add_term(beta, &sign);
            }
        }
        Ok(out)
    }

    /// Rewrites an F-basis element in the M basis, via
    /// `F_alpha = sum_{beta >= alpha} M_beta`.
    pub fn f_to_m(&self) -> Result<QSymElement, Error> {
        self.expect_basis(Basis::F)?;
        let mut out = QSymElement::zero(self.grade, Basis::M);
        for (alpha, v) in &self.coeffs {
            for beta in alpha.refinements() {
                out.add_term(beta, v);
            }
        }
        Ok(out)
    }

    pub fn to_basis(&self, basis: Basis) -> Result<QSymElement, Error> {
        if self.basis == basis {
            return Ok(self.clone());
        }
        match basis {
            Basis::M => self.f_to_m(),
            Basis::F => self.m_to_f(),
        }
    }
}

impl fmt::Display for QSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (alpha, v)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}{}", v, self.basis.name(), alpha)?;
        }
        Ok(())
    }
}

/// Quasi-shuffles of two compositions: interleavings where one part of `a`
/// and one part of `b` may also merge by addition. Returns multiplicities.
pub fn quasi_shuffle(a: &[usize], b: &[usize]) -> BTreeMap<Composition, u64> {
    fn rec(a: &[usize], b: &[usize], prefix: &mut Vec<usize>, out: &mut BTreeMap<Composition, u64>) {
        if a.is_empty() && b.is_empty() {
            let c = Composition::new(prefix.clone()).expect("positive parts");
            *out.entry(c).or_insert(0) += 1;
            return;
        }
        if !a.is_empty() {
            prefix.push(a[0]);
            rec(&a[1..], b, prefix, out);
            prefix.pop();
        }
        if !b.is_empty() {
            prefix.push(b[0]);
            rec(a, &b[1..], prefix, out);
            prefix.pop();
        }
        if !a.is_empty() && !b.is_empty() {
            prefix.push(a[0] + b[0]);
            rec(&a[1..], &b[1..], prefix, out);
            prefix.pop();
        }
    }
    let mut out = BTreeMap::new();
    let mut prefix = Vec::new();
    rec(a, b, &mut prefix, &mut out);
    out
}

/// Product of two M-basis elements: the bilinear extension of the
/// quasi-shuffle of compositions. The result grade is the sum of the grades.
pub fn quasi_shuffle_product(x: &QSymElement, y: &QSymElement) -> Result<QSymElement, Error> {
    x.expect_basis(Basis::M)?;
    y.expect_basis(Basis::M)?;
    let mut out = QSymElement::zero(x.grade + y.grade, Basis::M);
    for (alpha, va) in &x.coeffs {
        for (beta, vb) in &y.coeffs {
            let vab = va * vb;
            for (gamma, mult) in quasi_shuffle(alpha.parts(), beta.parts()) {
                out.add_term(gamma, &(&vab * &Rational::int(mult as i64)));
            }
        }
    }
    Ok(out)
}

/// Product in either basis: operands are converted to M, multiplied, and the
/// result is returned in the basis of the left operand.
pub fn product(x: &QSymElement, y: &QSymElement) -> Result<QSymElement, Error> {
    let m = quasi_shuffle_product(&x.to_basis(Basis::M)?, &y.to_basis(Basis::M)?)?;
    m.to_basis(x.basis)
}

/// Finitely supported element of `QSym (x) QSym`, both legs in the M basis.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QSymTensor {
    coeffs: BTreeMap<(Composition, Composition), Rational>,
}

impl QSymTensor {
    pub fn zero() -> Self {
        QSymTensor::default()
    }

    pub fn coeffs(&self) -> &BTreeMap<(Composition, Composition), Rational> {
        &self.coeffs
    }

    pub fn add_term(&mut self, left: Composition, right: Composition, value: &Rational) {
        if value.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry((left, right)) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += value;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(value.clone());
            }
        }
    }

    /// Componentwise product: `(a (x) b)(c (x) d) = ac (x) bd`.
    pub fn multiply(&self, other: &QSymTensor) -> QSymTensor {
        let mut out = QSymTensor::zero();
        for ((a, b), v) in &self.coeffs {
            for ((c, d), w) in &other.coeffs {
                let vw = v * w;
                for (left, ml) in quasi_shuffle(a.parts(), c.parts()) {
                    for (right, mr) in quasi_shuffle(b.parts(), d.parts()) {
                        let mult = Rational::int((ml * mr) as i64);
                        out.add_term(left.clone(), right, &(&vw * &mult));
                    }
                }
            }
        }
        out
    }

    /// Contracts the grade-0 part of one leg, recovering an element; this is
    /// the counit axiom check.
    pub fn counit_left(&self, grade: usize) -> QSymElement {
        let mut out = QSymElement::zero(grade, Basis::M);
        for ((left, right), v) in &self.coeffs {
            if left.is_empty() && right.weight() == grade {
                out.add_term(right.clone(), v);
            }
        }
        out
    }

    pub fn counit_right(&self, grade: usize) -> QSymElement {
        let mut out = QSymElement::zero(grade, Basis::M);
        for ((left, right), v) in &self.coeffs {
            if right.is_empty() && left.weight() == grade {
                out.add_term(left.clone(), v);
            }
        }
        out
    }
}

/// Deconcatenation coproduct on the M basis:
/// `Delta(M_alpha) = sum_{alpha = beta.gamma} M_beta (x) M_gamma`.
pub fn deconcat_coproduct(x: &QSymElement) -> Result<QSymTensor, Error> {
    x.expect_basis(Basis::M)?;
    let mut out = QSymTensor::zero();
    for (alpha, v) in &x.coeffs {
        let parts = alpha.parts();
        for cut in 0..=parts.len() {
            let left = Composition::new(parts[..cut].to_vec()).expect("valid");
            let right = Composition::new(parts[cut..].to_vec()).expect("valid");
            out.add_term(left, right, v);
        }
    }
    Ok(out)
}

/// Serialization shape shared by the CLI and the fuzz targets.
#[derive(Serialize, Deserialize)]
struct QSymElementRepr {
    grade: usize,
    basis: Basis,
    coeffs: Vec<CoeffRepr>,
}

#[derive(Serialize, Deserialize)]
struct CoeffRepr {
    comp: Composition,
    value: Rational,
}

impl Serialize for QSymElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = QSymElementRepr {
            grade: self.grade,
            basis: self.basis,
            coeffs: self
                .coeffs
                .iter()
                .map(|(a, v)| CoeffRepr { comp: a.clone(), value: v.clone() })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QSymElement {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = QSymElementRepr::deserialize(deserializer)?;
        let mut coeffs = BTreeMap::new();
        for c in repr.coeffs {
            let entry = coeffs.entry(c.comp).or_insert_with(Rational::zero);
            *entry += c.value;
        }
        QSymElement::from_coeffs(repr.grade, repr.basis, coeffs).map_err(serde::de::Error::custom)
    }
}
