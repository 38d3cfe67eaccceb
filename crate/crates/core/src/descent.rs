//! Solomon's descent algebra: descent-class sums inside the group algebra of
//! the symmetric group, with three interchangeable expansions (permutation,
//! Y basis, X basis), the group product, the concatenation product `*`, the
//! coproduct dual to multiplication in QSym, and the pairing with QSym.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::composition::Composition;
use crate::error::Error;
use crate::permutation::{descent_classes, permutations, Permutation};
use crate::qsym::{Basis, QSymElement, QSymTensor};
use crate::rational::Rational;

/// Default cap on `S_n` enumeration.
pub const DEFAULT_ENUM_CAP: usize = 8;

fn add_into<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, value: &Rational) {
    if value.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
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

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expansion {
    /// Coefficients on individual permutations.
    Perm(BTreeMap<Permutation, Rational>),
    /// Coefficients on descent-class sums `Y_alpha`.
    Y(BTreeMap<Composition, Rational>),
    /// Coefficients on the sums `X_alpha = sum_{beta <= alpha} Y_beta`.
    X(BTreeMap<Composition, Rational>),
}

/// Homogeneous element of the descent algebra of grade `n` (or, with a
/// permutation expansion that is not constant on descent classes, of the
/// ambient group algebra).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DElement {
    grade: usize,
    expansion: Expansion,
}

impl DElement {
    pub fn zero(grade: usize) -> Self {
        DElement { grade, expansion: Expansion::X(BTreeMap::new()) }
    }

    /// `X_alpha`.
    pub fn x_of(alpha: Composition) -> Self {
        let grade = alpha.weight();
        let mut m = BTreeMap::new();
        m.insert(alpha, Rational::one());
        DElement { grade, expansion: Expansion::X(m) }
    }

    /// `Y_alpha`.
    pub fn y_of(alpha: Composition) -> Self {
        let grade = alpha.weight();
        let mut m = BTreeMap::new();
        m.insert(alpha, Rational::one());
        DElement { grade, expansion: Expansion::Y(m) }
    }

    /// `X_n`, the identity permutation of `S_n` and the grade-`n` component
    /// of the identity series.
    pub fn x_n(n: usize) -> Self {
        if n == 0 {
            DElement::x_of(Composition::empty())
        } else {
            DElement::x_of(Composition::single(n))
        }
    }

    pub fn from_x_coeffs(grade: usize, coeffs: BTreeMap<Composition, Rational>) -> Result<Self, Error> {
        Self::check_weights(grade, coeffs.keys())?;
        let coeffs = coeffs.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(DElement { grade, expansion: Expansion::X(coeffs) })
    }

    pub fn from_y_coeffs(grade: usize, coeffs: BTreeMap<Composition, Rational>) -> Result<Self, Error> {
        Self::check_weights(grade, coeffs.keys())?;
        let coeffs = coeffs.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(DElement { grade, expansion: Expansion::Y(coeffs) })
    }

    pub fn from_perm_coeffs(grade: usize, coeffs: BTreeMap<Permutation, Rational>) -> Result<Self, Error> {
        for sigma in coeffs.keys() {
            if sigma.n() != grade {
                return Err(Error::GradeMismatch(sigma.n(), grade));
            }
        }
        let coeffs = coeffs.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(DElement { grade, expansion: Expansion::Perm(coeffs) })
    }

    fn check_weights<'a>(grade: usize, keys: impl Iterator<Item = &'a Composition>) -> Result<(), Error> {
        for alpha in keys {
            if alpha.weight() != grade {
                return Err(Error::WeightMismatch(alpha.weight(), grade));
            }
        }
        Ok(())
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn expansion(&self) -> &Expansion {
        &self.expansion
    }

    pub fn is_zero(&self) -> bool {
        match &self.expansion {
            Expansion::Perm(m) => m.is_empty(),
            Expansion::Y(m) | Expansion::X(m) => m.is_empty(),
        }
    }

    /// X-basis coefficients, converting if needed.
    pub fn x_coeffs(&self) -> Result<BTreeMap<Composition, Rational>, Error> {
        match &self.expansion {
            Expansion::X(m) => Ok(m.clone()),
            Expansion::Y(m) => {
                // Y_alpha = sum_{beta <= alpha} (-1)^(l(alpha)-l(beta)) X_beta
                let mut out = BTreeMap::new();
                for (alpha, v) in m {
                    for beta in alpha.coarsenings() {
                        let signed = if (alpha.length() - beta.length()) % 2 == 0 {
                            v.clone()
                        } else {
                            -v
                        };
                        add_into(&mut out, beta, &signed);
                    }
                }
                Ok(out)
            }
            Expansion::Perm(_) => self.to_y_basis()?.x_coeffs(),
        }
    }

    /// Y-basis coefficients, converting if needed. A permutation expansion
    /// must be constant on descent classes.
    pub fn y_coeffs(&self) -> Result<BTreeMap<Composition, Rational>, Error> {
        match &self.expansion {
            Expansion::Y(m) => Ok(m.clone()),
            Expansion::X(m) => {
                // X_alpha = sum_{beta <= alpha} Y_beta
                let mut out = BTreeMap::new();
                for (alpha, v) in m {
                    for beta in alpha.coarsenings() {
                        add_into(&mut out, beta, v);
                    }
                }
                Ok(out)
            }
            Expansion::Perm(m) => {
                let mut out = BTreeMap::new();
                for (alpha, class) in descent_classes(self.grade) {
                    let value = m.get(&class[0]).cloned().unwrap_or_else(Rational::zero);
                    for sigma in &class {
                        let v = m.get(sigma).cloned().unwrap_or_else(Rational::zero);
                        if v != value {
                            return Err(Error::NotDescentClassConstant(alpha));
                        }
                    }
                    add_into(&mut out, alpha, &value);
                }
                Ok(out)
            }
        }
    }

    pub fn to_x_basis(&self) -> Result<DElement, Error> {
        Ok(DElement { grade: self.grade, expansion: Expansion::X(self.x_coeffs()?) })
    }

    pub fn to_y_basis(&self) -> Result<DElement, Error> {
        Ok(DElement { grade: self.grade, expansion: Expansion::Y(self.y_coeffs()?) })
    }

    /// Expands over individual permutations by enumerating `S_n`; refuses
    /// grades above `cap`.
    pub fn to_permutation_basis_with_cap(&self, cap: usize) -> Result<DElement, Error> {
        if let Expansion::Perm(_) = self.expansion {
            return Ok(self.clone());
        }
        if self.grade > cap {
            return Err(Error::EnumerationCap { n: self.grade, cap });
        }
        let y = self.y_coeffs()?;
        let mut out = BTreeMap::new();
        for (alpha, class) in descent_classes(self.grade) {
            if let Some(v) = y.get(&alpha) {
                for sigma in class {
                    add_into(&mut out, sigma, v);
                }
            }
        }
        Ok(DElement { grade: self.grade, expansion: Expansion::Perm(out) })
    }

    pub fn to_permutation_basis(&self) -> Result<DElement, Error> {
        self.to_permutation_basis_with_cap(DEFAULT_ENUM_CAP)
    }

    pub fn perm_coeffs(&self) -> Result<BTreeMap<Permutation, Rational>, Error> {
        match self.to_permutation_basis()?.expansion {
            Expansion::Perm(m) => Ok(m),
            _ => unreachable!(),
        }
    }

    pub fn scale(&self, c: &Rational) -> DElement {
        let scale_map = |m: &BTreeMap<Composition, Rational>| {
            m.iter()
                .filter(|_| !c.is_zero())
                .map(|(k, v)| (k.clone(), v * c))
                .collect::<BTreeMap<_, _>>()
        };
        let expansion = match &self.expansion {
            Expansion::Perm(m) => Expansion::Perm(
                m.iter()
                    .filter(|_| !c.is_zero())
                    .map(|(k, v)| (k.clone(), v * c))
                    .collect(),
            ),
            Expansion::Y(m) => Expansion::Y(scale_map(m)),
            Expansion::X(m) => Expansion::X(scale_map(m)),
        };
        DElement { grade: self.grade, expansion }
    }

    /// Sum; the right operand is converted into the basis of the left.
    pub fn add(&self, other: &DElement) -> Result<DElement, Error> {
        if self.grade != other.grade {
            return Err(Error::GradeMismatch(self.grade, other.grade));
        }
        let expansion = match &self.expansion {
            Expansion::X(m) => {
                let mut out = m.clone();
                for (k, v) in other.x_coeffs()? {
                    add_into(&mut out, k, &v);
                }
                Expansion::X(out)
            }
            Expansion::Y(m) => {
                let mut out = m.clone();
                for (k, v) in other.y_coeffs()? {
                    add_into(&mut out, k, &v);
                }
                Expansion::Y(out)
            }
            Expansion::Perm(m) => {
                let mut out = m.clone();
                for (k, v) in other.to_permutation_basis_with_cap(usize::MAX)?.perm_entries() {
                    add_into(&mut out, k.clone(), v);
                }
                Expansion::Perm(out)
            }
        };
        Ok(DElement { grade: self.grade, expansion })
    }

    fn perm_entries(&self) -> impl Iterator<Item = (&Permutation, &Rational)> {
        match &self.expansion {
            Expansion::Perm(m) => m.iter(),
            _ => panic!("not a permutation expansion"),
        }
    }
}

impl fmt::Display for DElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tag, body): (&str, Vec<String>) = match &self.expansion {
            Expansion::Perm(m) => ("", m.iter().map(|(k, v)| format!("{v}*{k}")).collect()),
            Expansion::Y(m) => ("Y", m.iter().map(|(k, v)| format!("{v}*Y{k}")).collect()),
            Expansion::X(m) => ("X", m.iter().map(|(k, v)| format!("{v}*X{k}")).collect()),
        };
        let _ = tag;
        if body.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", body.join(" + "))
        }
    }
}

/// Group product in the group algebra, `(st)_i = s_{t_i}` on permutations.
/// When both operands lie in the descent algebra the result is returned in
/// the Y basis (it stays in the descent algebra).
pub fn group_product(v: &DElement, w: &DElement, cap: usize) -> Result<DElement, Error> {
    if v.grade() != w.grade() {
        return Err(Error::GradeMismatch(v.grade(), w.grade()));
    }
    let in_algebra = v.y_coeffs().is_ok() && w.y_coeffs().is_ok();
    let vp = v.to_permutation_basis_with_cap(cap)?;
    let wp = w.to_permutation_basis_with_cap(cap)?;
    let mut out: BTreeMap<Permutation, Rational> = BTreeMap::new();
    for (s, a) in vp.perm_entries() {
        for (t, b) in wp.perm_entries() {
            add_into(&mut out, s.compose(t), &(a * b));
        }
    }
    let product = DElement { grade: v.grade(), expansion: Expansion::Perm(out) };
    if in_algebra {
        // closure of the descent algebra under the group product
        product.to_y_basis()
    } else {
        Ok(product)
    }
}

/// Concatenation product `X_alpha * X_beta = X_(alpha.beta)`; grades add.
pub fn star_product(v: &DElement, w: &DElement) -> Result<DElement, Error> {
    let xv = v.x_coeffs()?;
    let xw = w.x_coeffs()?;
    let mut out = BTreeMap::new();
    for (alpha, a) in &xv {
        for (beta, b) in &xw {
            add_into(&mut out, alpha.concat(beta), &(a * b));
        }
    }
    Ok(DElement { grade: v.grade() + w.grade(), expansion: Expansion::X(out) })
}

/// Element of `D (x) D`, both legs in the X basis.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DTensor {
    coeffs: BTreeMap<(Composition, Composition), Rational>,
}

impl DTensor {
    pub fn zero() -> Self {
        DTensor::default()
    }

    pub fn coeffs(&self) -> &BTreeMap<(Composition, Composition), Rational> {
        &self.coeffs
    }

    pub fn add_term(&mut self, left: Composition, right: Composition, value: &Rational) {
        add_into(&mut self.coeffs, (left, right), value);
    }

    /// Componentwise `*` product (concatenation on both legs).
    pub fn star_multiply(&self, other: &DTensor) -> DTensor {
        let mut out = DTensor::zero();
        for ((a, b), v) in &self.coeffs {
            for ((c, d), w) in &other.coeffs {
                out.add_term(a.concat(c), b.concat(d), &(v * w));
            }
        }
        out
    }

    /// Pairs against a QSym tensor: `<X_a (x) X_b, M_c (x) M_d> = delta delta`.
    pub fn pair(&self, f: &QSymTensor) -> Rational {
        let mut total = Rational::zero();
        for (key, v) in &self.coeffs {
            if let Some(w) = f.coeffs().get(key) {
                total += &(v * w);
            }
        }
        total
    }
}

/// Coproduct on the X basis: each part `a` of the index splits as
/// `a = i + j`, zeros dropped, multiplicatively over parts.
pub fn coproduct_d(w: &DElement) -> Result<DTensor, Error> {
    let x = w.x_coeffs()?;
    let mut out = DTensor::zero();
    for (alpha, v) in &x {
        let mut acc: Vec<(Composition, Composition, Rational)> =
            vec![(Composition::empty(), Composition::empty(), v.clone())];
        for &a in alpha.parts() {
            let mut next = Vec::with_capacity(acc.len() * (a + 1));
            for (left, right, coeff) in &acc {
                for i in 0..=a {
                    let j = a - i;
                    let mut l = left.clone();
                    let mut r = right.clone();
                    if i > 0 {
                        l = l.concat(&Composition::single(i));
                    }
                    if j > 0 {
                        r = r.concat(&Composition::single(j));
                    }
                    next.push((l, r, coeff.clone()));
                }
            }
            acc = next;
        }
        for (l, r, coeff) in acc {
            out.add_term(l, r, &coeff);
        }
    }
    Ok(out)
}

/// Iterated coproduct with `r` legs, as coefficients on X-index tuples.
pub fn coproduct_d_iterated(w: &DElement, r: usize) -> Result<BTreeMap<Vec<Composition>, Rational>, Error> {
    assert!(r >= 1);
    let mut out: BTreeMap<Vec<Composition>, Rational> = BTreeMap::new();
    if r == 1 {
        for (alpha, v) in w.x_coeffs()? {
            out.insert(vec![alpha], v);
        }
        return Ok(out);
    }
    let prev = coproduct_d_iterated(w, r - 1)?;
    // expand the last leg once more: Delta^r = (Delta^(r-1) (x) I) o ... with
    // the new split applied to the final coordinate
    for (legs, v) in prev {
        let last = legs.last().expect("nonempty legs").clone();
        let split = coproduct_d(&DElement::x_of(last))?;
        for ((l, rr), w2) in split.coeffs() {
            let mut new_legs = legs[..legs.len() - 1].to_vec();
            new_legs.push(l.clone());
            new_legs.push(rr.clone());
            add_into(&mut out, new_legs, &(&v * w2));
        }
    }
    Ok(out)
}

/// The duality pairing `<X_alpha, M_beta> = delta_(alpha,beta)`, extended
/// bilinearly. Mismatched grades pair to zero.
pub fn pairing(w: &DElement, f: &QSymElement) -> Result<Rational, Error> {
    if w.grade() != f.grade() {
        return Ok(Rational::zero());
    }
    let x = w.x_coeffs()?;
    let m = f.to_basis(Basis::M)?;
    let mut total = Rational::zero();
    for (alpha, v) in &x {
        if let Some(c) = m.coeffs().get(alpha) {
            total += &(v * c);
        }
    }
    Ok(total)
}

/// Checks `G (F_1 * ... * F_r) = sum (G_(1) F_1) * ... * (G_(r) F_r)`
/// exactly, with the group product on each tensor slot.
pub fn verify_compat(g: &DElement, fs: &[DElement], cap: usize) -> Result<bool, Error> {
    assert!(!fs.is_empty());
    let total: usize = fs.iter().map(DElement::grade).sum();
    if g.grade() != total {
        return Err(Error::GradeMismatch(g.grade(), total));
    }
    let mut star = fs[0].clone();
    for f in &fs[1..] {
        star = star_product(&star, f)?;
    }
    let lhs = group_product(g, &star, cap)?;

    let mut rhs = DElement::zero(total);
    if fs.len() == 1 {
        rhs = group_product(g, &fs[0], cap)?;
    } else {
        for (legs, v) in coproduct_d_iterated(g, fs.len())? {
            if legs
                .iter()
                .zip(fs)
                .any(|(leg, f)| leg.weight() != f.grade())
            {
                continue;
            }
            let mut term: Option<DElement> = None;
            for (leg, f) in legs.iter().zip(fs) {
                let factor = group_product(&DElement::x_of(leg.clone()), f, cap)?;
                term = Some(match term {
                    None => factor,
                    Some(t) => star_product(&t, &factor)?,
                });
            }
            let term = term.expect("at least one factor").scale(&v);
            rhs = rhs.add(&term)?;
        }
    }
    Ok(lhs.x_coeffs()? == rhs.x_coeffs()?)
}

/// Formal series `W = sum W_n` with one descent-algebra component per grade,
/// generated on demand and memoized.
pub struct DSeries {
    rule: Box<dyn Fn(usize) -> DElement + Send + Sync>,
    memo: Mutex<BTreeMap<usize, DElement>>,
}

impl DSeries {
    pub fn new(rule: impl Fn(usize) -> DElement + Send + Sync + 'static) -> Self {
        DSeries { rule: Box::new(rule), memo: Mutex::new(BTreeMap::new()) }
    }

    /// The identity series: `X_n` in every grade.
    pub fn identity() -> Self {
        DSeries::new(DElement::x_n)
    }

    pub fn component(&self, n: usize) -> DElement {
        let mut memo = self.memo.lock().expect("poisoned");
        memo.entry(n).or_insert_with(|| (self.rule)(n)).clone()
    }

    /// Pairs the grade-matching component against `f`.
    pub fn pair(&self, f: &QSymElement) -> Result<Rational, Error> {
        pairing(&self.component(f.grade()), f)
    }
}

/// JSON shape for descent-algebra elements.
#[derive(Serialize, Deserialize)]
#[serde(tag = "basis", rename_all = "lowercase")]
enum DElementRepr {
    Perm { grade: usize, coeffs: Vec<PermCoeff> },
    Y { grade: usize, coeffs: Vec<CompCoeff> },
    X { grade: usize, coeffs: Vec<CompCoeff> },
}

#[derive(Serialize, Deserialize)]
struct PermCoeff {
    perm: Permutation,
    value: Rational,
}

#[derive(Serialize, Deserialize)]
struct CompCoeff {
    comp: Composition,
    value: Rational,
}

impl Serialize for DElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = match &self.expansion {
            Expansion::Perm(m) => DElementRepr::Perm {
                grade: self.grade,
                coeffs: m
                    .iter()
                    .map(|(k, v)| PermCoeff { perm: k.clone(), value: v.clone() })
                    .collect(),
            },
            Expansion::Y(m) => DElementRepr::Y {
                grade: self.grade,
                coeffs: m
                    .iter()
                    .map(|(k, v)| CompCoeff { comp: k.clone(), value: v.clone() })
                    .collect(),
            },
            Expansion::X(m) => DElementRepr::X {
                grade: self.grade,
                coeffs: m
                    .iter()
                    .map(|(k, v)| CompCoeff { comp: k.clone(), value: v.clone() })
                    .collect(),
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DElement {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = DElementRepr::deserialize(deserializer)?;
        let build = |coeffs: Vec<CompCoeff>| -> BTreeMap<Composition, Rational> {
            let mut out = BTreeMap::new();
            for c in coeffs {
                add_into(&mut out, c.comp, &c.value);
            }
            out
        };
        match repr {
            DElementRepr::Perm { grade, coeffs } => {
                let mut out = BTreeMap::new();
                for c in coeffs {
                    add_into(&mut out, c.perm, &c.value);
                }
                DElement::from_perm_coeffs(grade, out).map_err(serde::de::Error::custom)
            }
            DElementRepr::Y { grade, coeffs } => {
                DElement::from_y_coeffs(grade, build(coeffs)).map_err(serde::de::Error::custom)
            }
            DElementRepr::X { grade, coeffs } => {
                DElement::from_x_coeffs(grade, build(coeffs)).map_err(serde::de::Error::custom)
            }
        }
    }
}

/// `Y_alpha` summed over a set of compositions; used by the peak machinery.
pub fn y_sum(grade: usize, alphas: &[Composition]) -> DElement {
    let mut m = BTreeMap::new();
    for alpha in alphas {
        add_into(&mut m, alpha.clone(), &Rational::one());
    }
    DElement { grade, expansion: Expansion::Y(m) }
}

/// Convenience: the full list of `S_n` with attached descent compositions.
pub fn descent_class_sizes(n: usize) -> BTreeMap<Composition, usize> {
    descent_classes(n).into_iter().map(|(k, v)| (k, v.len())).collect()
}

/// Uniform probability on `S_n` is frequently needed as an oracle.
pub fn s_n_order(n: usize) -> usize {
    permutations(n).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::{comp, compositions};

    #[test]
    fn x_y_conversion_examples() {
        let x11 = DElement::x_of(comp(&[1, 1]));
        let y = x11.y_coeffs().unwrap();
        assert_eq!(y[&comp(&[2])], Rational::one());
        assert_eq!(y[&comp(&[1, 1])], Rational::one());

        let xn = DElement::x_of(comp(&[4]));
        assert_eq!(xn.y_coeffs().unwrap()[&comp(&[4])], Rational::one());

        let y21 = DElement::y_of(comp(&[2, 1]));
        let x = y21.x_coeffs().unwrap();
        assert_eq!(x[&comp(&[2, 1])], Rational::one());
        assert_eq!(x[&comp(&[3])], Rational::int(-1));
    }

    #[test]
    fn x_y_round_trip() {
        for n in 0..=10 {
            for alpha in compositions(n) {
                let y = DElement::y_of(alpha.clone());
                assert_eq!(y.to_x_basis().unwrap().y_coeffs().unwrap(), y.y_coeffs().unwrap());
                let x = DElement::x_of(alpha);
                assert_eq!(x.to_y_basis().unwrap().x_coeffs().unwrap(), x.x_coeffs().unwrap());
            }
        }
    }

    #[test]
    fn permutation_expansion() {
        let y21 = DElement::y_of(comp(&[2, 1]));
        let perms = y21.perm_coeffs().unwrap();
        let expected: Vec<Permutation> = vec![
            Permutation::new(vec![1, 3, 2]).unwrap(),
            Permutation::new(vec![2, 3, 1]).unwrap(),
        ];
        assert_eq!(perms.keys().cloned().collect::<Vec<_>>(), expected);

        let yn = DElement::y_of(comp(&[3]));
        let perms = yn.perm_coeffs().unwrap();
        assert_eq!(perms.keys().cloned().collect::<Vec<_>>(), vec![Permutation::identity(3)]);

        // X_3 = Y_3 = the identity of S_3
        assert_eq!(
            DElement::x_n(3).perm_coeffs().unwrap(),
            yn.perm_coeffs().unwrap()
        );

        let big = DElement::y_of(comp(&[9]));
        assert!(matches!(
            big.to_permutation_basis(),
            Err(Error::EnumerationCap { n: 9, cap: 8 })
        ));
    }

    #[test]
    fn group_product_examples() {
        // X_n is the identity
        let w = DElement::y_of(comp(&[2, 1]));
        let prod = group_product(&DElement::x_n(3), &w, 8).unwrap();
        assert_eq!(prod.y_coeffs().unwrap(), w.y_coeffs().unwrap());

        // Y_11 * Y_11 = Y_2 in D_2 (21 composed with 21 is the identity)
        let y11 = DElement::y_of(comp(&[1, 1]));
        let sq = group_product(&y11, &y11, 8).unwrap();
        assert_eq!(sq.y_coeffs().unwrap(), DElement::y_of(comp(&[2])).y_coeffs().unwrap());

        // closure: products of X basis elements stay descent-class constant
        let p = group_product(
            &DElement::x_of(comp(&[1, 2])),
            &DElement::x_of(comp(&[2, 1])),
            8,
        )
        .unwrap();
        assert!(p.y_coeffs().is_ok());
    }

    #[test]
    fn solomon_closure_small_grades() {
        for n in 0..=5 {
            for a in compositions(n) {
                for b in compositions(n) {
                    let p = group_product(&DElement::y_of(a.clone()), &DElement::y_of(b.clone()), 8)
                        .unwrap();
                    assert!(p.y_coeffs().is_ok(), "Y{a} * Y{b} left the algebra");
                }
            }
        }
    }

    #[test]
    fn star_product_examples() {
        let p = star_product(&DElement::x_of(comp(&[2])), &DElement::x_of(comp(&[1]))).unwrap();
        assert_eq!(p.x_coeffs().unwrap()[&comp(&[2, 1])], Rational::one());

        let unit = DElement::x_of(Composition::empty());
        let w = DElement::x_of(comp(&[2, 1]));
        assert_eq!(
            star_product(&unit, &w).unwrap().x_coeffs().unwrap(),
            w.x_coeffs().unwrap()
        );

        let x1 = DElement::x_n(1);
        let left = star_product(&star_product(&x1, &x1).unwrap(), &x1).unwrap();
        let right = star_product(&x1, &star_product(&x1, &x1).unwrap()).unwrap();
        assert_eq!(left, right);
        assert_eq!(left.x_coeffs().unwrap()[&comp(&[1, 1, 1])], Rational::one());
    }

    #[test]
    fn coproduct_examples() {
        let d = coproduct_d(&DElement::x_n(2)).unwrap();
        let c = d.coeffs();
        assert_eq!(c.len(), 3);
        assert_eq!(c[&(Composition::empty(), comp(&[2]))], Rational::one());
        assert_eq!(c[&(comp(&[1]), comp(&[1]))], Rational::one());
        assert_eq!(c[&(comp(&[2]), Composition::empty())], Rational::one());

        let d0 = coproduct_d(&DElement::x_n(0)).unwrap();
        assert_eq!(d0.coeffs().len(), 1);

        // multiplicativity: Delta(X_11) = Delta(X_1)*Delta(X_1)
        let d1 = coproduct_d(&DElement::x_n(1)).unwrap();
        let d11 = coproduct_d(&DElement::x_of(comp(&[1, 1]))).unwrap();
        assert_eq!(d11, d1.star_multiply(&d1));
    }

    #[test]
    fn pairing_examples() {
        let x21 = DElement::x_of(comp(&[2, 1]));
        let m21 = QSymElement::monomial(comp(&[2, 1]));
        assert_eq!(pairing(&x21, &m21).unwrap(), Rational::one());

        let y21 = DElement::y_of(comp(&[2, 1]));
        let f12 = QSymElement::fundamental(comp(&[1, 2]));
        assert_eq!(pairing(&y21, &f12).unwrap(), Rational::zero());

        let x11 = DElement::x_of(comp(&[1, 1]));
        let f2 = QSymElement::fundamental(comp(&[2]));
        assert_eq!(pairing(&x11, &f2).unwrap(), Rational::one());

        // <Y_alpha, F_beta> = delta over all of Comp(4)
        for a in compositions(4) {
            for b in compositions(4) {
                let expected = if a == b { Rational::one() } else { Rational::zero() };
                assert_eq!(
                    pairing(&DElement::y_of(a.clone()), &QSymElement::fundamental(b.clone())).unwrap(),
                    expected
                );
            }
        }
    }

    #[test]
    fn compat_examples() {
        let g = DElement::x_n(2);
        let fs = vec![DElement::x_n(1), DElement::x_n(1)];
        assert!(verify_compat(&g, &fs, 8).unwrap());

        let g = DElement::y_of(comp(&[1, 1]));
        assert!(verify_compat(&g, &fs, 8).unwrap());
    }

    #[test]
    fn perm_to_y_requires_class_constancy() {
        let mut m = BTreeMap::new();
        m.insert(Permutation::new(vec![1, 3, 2]).unwrap(), Rational::one());
        let w = DElement::from_perm_coeffs(3, m).unwrap();
        assert!(matches!(w.y_coeffs(), Err(Error::NotDescentClassConstant(_))));
    }

    #[test]
    fn json_round_trip() {
        let w = DElement::y_of(comp(&[2, 1]));
        let json = serde_json::to_string(&w).unwrap();
        let back: DElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
    }
}
