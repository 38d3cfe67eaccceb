//! Words in two noncommuting letters and the substitution operator that
//! realizes the signed-shuffle endomorphisms on the fundamental basis.
//!
//! A word of length `m` corresponds to a composition of `m + 1` through the
//! positions of its `b`s, so the word space of all lengths is isomorphic to
//! the positive-degree part of QSym via `u -> F_(co(S_u))`.

use std::collections::BTreeMap;

use crate::composition::Composition;
use crate::error::Error;
use crate::qsym::{Basis, QSymElement};
use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Letter {
    A,
    B,
}

/// Word in the letters `a`, `b`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct AbWord(pub Vec<Letter>);

impl AbWord {
    /// Parses from ASCII, e.g. `"aba"`.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                'a' => letters.push(Letter::A),
                'b' => letters.push(Letter::B),
                other => return Err(Error::InvalidLetter(other)),
            }
        }
        Ok(AbWord(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Positions of `b` (1-based), the subset `S_u`.
    pub fn b_positions(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == Letter::B)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

impl std::fmt::Display for AbWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for l in &self.0 {
            write!(f, "{}", if *l == Letter::A { 'a' } else { 'b' })?;
        }
        Ok(())
    }
}

/// Formal linear combination of ab-words.
pub type WordSum = BTreeMap<AbWord, Rational>;

fn add_word(sum: &mut WordSum, word: AbWord, value: &Rational) {
    if value.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match sum.entry(word) {
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

/// The substitution operator: every occurrence of the factor `ab` becomes
/// `r(ab + (r-1)ba)`, every remaining `a` becomes `a + (r-1)b`, and every
/// remaining `b` becomes `b + (r-1)a`.
pub fn omega_r(word: &AbWord, r: &Rational) -> WordSum {
    let rm1 = r - &Rational::one();
    // each block expands to a small word sum; the word is the ordered
    // product of its blocks
    let mut blocks: Vec<Vec<(Vec<Letter>, Rational)>> = Vec::new();
    let letters = &word.0;
    let mut i = 0;
    while i < letters.len() {
        if i + 1 < letters.len() && letters[i] == Letter::A && letters[i + 1] == Letter::B {
            blocks.push(vec![
                (vec![Letter::A, Letter::B], r.clone()),
                (vec![Letter::B, Letter::A], r * &rm1),
            ]);
            i += 2;
        } else {
            let (kept, flipped) = match letters[i] {
                Letter::A => (Letter::A, Letter::B),
                Letter::B => (Letter::B, Letter::A),
            };
            blocks.push(vec![
                (vec![kept], Rational::one()),
                (vec![flipped], rm1.clone()),
            ]);
            i += 1;
        }
    }
    let mut acc: Vec<(Vec<Letter>, Rational)> = vec![(Vec::new(), Rational::one())];
    for block in blocks {
        let mut next = Vec::with_capacity(acc.len() * block.len());
        for (prefix, coeff) in &acc {
            for (piece, w) in &block {
                let mut word = prefix.clone();
                word.extend_from_slice(piece);
                next.push((word, coeff * w));
            }
        }
        acc = next;
    }
    let mut out = WordSum::new();
    for (letters, coeff) in acc {
        add_word(&mut out, AbWord(letters), &coeff);
    }
    out
}

/// `gamma(u) = F_(co(S_u))`: a word of length `m` maps into grade `m + 1`.
pub fn gamma(word: &AbWord) -> QSymElement {
    let n = word.len() + 1;
    let alpha = Composition::from_subset(&word.b_positions(), n).expect("valid subset");
    QSymElement::fundamental(alpha)
}

/// Inverse of [`gamma`] on basis elements: the word whose `b` positions are
/// the descent set of `beta`.
pub fn gamma_inverse(beta: &Composition) -> Result<AbWord, Error> {
    let n = beta.weight();
    if n == 0 {
        return Err(Error::EmptyComposition);
    }
    let descents = beta.descent_set();
    let letters = (1..n)
        .map(|i| if descents.contains(&i) { Letter::B } else { Letter::A })
        .collect();
    Ok(AbWord(letters))
}

/// The signed-shuffle endomorphism on a fundamental basis element, computed
/// by conjugating `r * omega_r` with `gamma`.
pub fn vartheta_on_fundamental(beta: &Composition, r: &Rational) -> Result<QSymElement, Error> {
    let n = beta.weight();
    let word = gamma_inverse(beta)?;
    let mut out = QSymElement::zero(n, Basis::F);
    for (w, coeff) in omega_r(&word, r) {
        let f = gamma(&w);
        out = out.add(&f.scale(&(r * &coeff)))?;
    }
    Ok(out)
}

/// Closed-form fundamental-basis expansion of the signed-shuffle family at
/// `r = 1 - q`:
/// `(1-q)^(hl(beta)) sum (-q)^(b(S_alpha, S_beta)) F_alpha` over the
/// `alpha` whose shifted symmetric difference `S_alpha (sd) (S_alpha + 1)`
/// contains the peak set of `beta`, where `hl` counts hook factors and
/// `b(S,T) = |(1 + (S - T)) union (T - S)|`.
pub fn vartheta_f_expansion(beta: &Composition, q: &Rational) -> Result<QSymElement, Error> {
    let n = beta.weight();
    if n == 0 {
        return Err(Error::EmptyComposition);
    }
    let hooks = beta.hook_factorization().len();
    let peaks = beta.peak_set();
    let s_beta = beta.descent_set();
    let scale = (&Rational::one() - q).pow(hooks as i64);
    let minus_q = -q;
    let mut out = QSymElement::zero(n, Basis::F);
    for alpha in crate::composition::compositions(n) {
        let s_alpha = alpha.descent_set();
        let in_sym_diff = |i: usize| -> bool {
            let in_s = s_alpha.contains(&i);
            let in_shift = i >= 1 && s_alpha.contains(&(i - 1));
            in_s != in_shift
        };
        if !peaks.iter().all(|&i| in_sym_diff(i)) {
            continue;
        }
        let mut discrepancy = std::collections::BTreeSet::new();
        for &s in &s_alpha {
            if !s_beta.contains(&s) {
                discrepancy.insert(s + 1); // 1 + (S \ T)
            }
        }
        for &t in &s_beta {
            if !s_alpha.contains(&t) {
                discrepancy.insert(t); // T \ S
            }
        }
        let b_count = discrepancy.len();
        let coeff = &scale * &minus_q.pow(b_count as i64);
        out.add_term(alpha, &coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::{comp, compositions};
    use crate::endo::{phi_matrix, Character};

    #[test]
    fn word_parsing_and_positions() {
        let w = AbWord::parse("abaab").unwrap();
        assert_eq!(w.b_positions(), vec![2, 5]);
        assert!(AbWord::parse("abc").is_err());
        assert_eq!(w.to_string(), "abaab");
    }

    #[test]
    fn gamma_maps_words_to_fundamentals() {
        // "ab" has its b in position 2, hence descent set {2} in grade 3
        let w = AbWord::parse("ab").unwrap();
        assert_eq!(gamma(&w), QSymElement::fundamental(comp(&[2, 1])));
        let w = AbWord::parse("").unwrap();
        assert_eq!(gamma(&w), QSymElement::fundamental(comp(&[1])));
        // round trip on every composition through weight 6
        for n in 1..=6 {
            for beta in compositions(n) {
                let w = gamma_inverse(&beta).unwrap();
                assert_eq!(gamma(&w), QSymElement::fundamental(beta.clone()));
            }
        }
    }

    #[test]
    fn coefficient_of_all_a_words() {
        // in r*omega_r(b^k a^(n-1-k)) the coefficient of a^(n-1) is r(r-1)^k;
        // for any word containing the factor ab it vanishes
        let r = Rational::int(3);
        for n in 2..=6usize {
            for k in 0..n {
                let mut letters = vec![Letter::B; k];
                letters.extend(vec![Letter::A; n - 1 - k]);
                let word = AbWord(letters);
                let sum = omega_r(&word, &r);
                let all_a = AbWord(vec![Letter::A; n - 1]);
                let coeff = sum.get(&all_a).cloned().unwrap_or_else(Rational::zero);
                let expected = (&r - &Rational::one()).pow(k as i64);
                assert_eq!(&r * &coeff, &r * &expected, "n={n}, k={k}");
            }
        }
        let with_ab = AbWord::parse("aab").unwrap();
        let sum = omega_r(&with_ab, &r);
        let all_a = AbWord(vec![Letter::A; 3]);
        assert_eq!(sum.get(&all_a), None);
    }

    #[test]
    fn conjugation_equals_matrix_rows() {
        for r in [Rational::int(2), Rational::int(3), Rational::new(1, 2)] {
            let char = Character::vartheta(r.clone());
            for n in 1..=5 {
                let f = phi_matrix(&char, n, crate::qsym::Basis::F).unwrap();
                for beta in compositions(n) {
                    let via_words = vartheta_on_fundamental(&beta, &r).unwrap();
                    assert_eq!(via_words, f.row(&beta), "r={r}, beta={beta}");
                }
            }
        }
    }

    #[test]
    fn closed_form_equals_matrix_rows() {
        for q in [Rational::int(-1), Rational::int(-2), Rational::new(1, 2), Rational::zero()] {
            let r = &Rational::one() - &q;
            let char = Character::vartheta(r.clone());
            for n in 1..=5 {
                let f = phi_matrix(&char, n, crate::qsym::Basis::F).unwrap();
                for beta in compositions(n) {
                    let closed = vartheta_f_expansion(&beta, &q).unwrap();
                    assert_eq!(closed, f.row(&beta), "q={q}, beta={beta}");
                }
            }
        }
    }

    #[test]
    fn q_zero_is_identity() {
        for n in 1..=5 {
            for beta in compositions(n) {
                let e = vartheta_f_expansion(&beta, &Rational::zero()).unwrap();
                assert_eq!(e, QSymElement::fundamental(beta.clone()));
            }
        }
    }

    #[test]
    fn stembridge_form_at_q_minus_one() {
        // at q = -1 the closed form degenerates to 2^(|peaks|+1) times the
        // indicator of the peak-set condition
        for n in 1..=5 {
            for beta in compositions(n) {
                let e = vartheta_f_expansion(&beta, &Rational::int(-1)).unwrap();
                let peaks = beta.peak_set();
                let expected_coeff = Rational::int(2).pow(peaks.len() as i64 + 1);
                for (alpha, v) in e.coeffs() {
                    assert_eq!(v, &expected_coeff, "beta={beta}, alpha={alpha}");
                }
                // hook count equals peak count plus one
                assert_eq!(beta.hook_factorization().len(), peaks.len() + 1);
            }
        }
    }
}
