//! Permutations in one-line notation, descent statistics, and descent classes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::composition::Composition;
use crate::error::Error;
use crate::rational::Rational;

/// A permutation of `{1..n}` stored as the sequence `(s_1, ..., s_n)` with
/// `s_i = sigma(i)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Permutation {
    one_line: Vec<usize>,
}

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self, Error> {
        let n = one_line.len();
        let mut seen = vec![false; n];
        for &v in &one_line {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::PermutationParse(format!("{one_line:?}")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { one_line })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { one_line: (1..=n).collect() }
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    pub fn n(&self) -> usize {
        self.one_line.len()
    }

    /// `sigma(i)` with `i` in `1..=n`.
    pub fn apply(&self, i: usize) -> usize {
        self.one_line[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.one_line.len()];
        for (i, &v) in self.one_line.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { one_line: inv }
    }

    /// Group product `self * other`, acting as `self` after `other`:
    /// `(st)_i = s_{t_i}`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n(), "size mismatch");
        Permutation {
            one_line: other.one_line.iter().map(|&i| self.one_line[i - 1]).collect(),
        }
    }

    pub fn descent_set(&self) -> Vec<usize> {
        (1..self.one_line.len())
            .filter(|&i| self.one_line[i - 1] > self.one_line[i])
            .collect()
    }

    /// `D(sigma) = co(Des(sigma))`.
    pub fn descent_composition(&self) -> Composition {
        Composition::from_subset(&self.descent_set(), self.n()).expect("valid descents")
    }

    pub fn descent_count(&self) -> usize {
        self.descent_set().len()
    }

    /// Interior positions `i` with `s_{i-1} < s_i > s_{i+1}`.
    pub fn peak_set(&self) -> Vec<usize> {
        (2..self.one_line.len())
            .filter(|&i| {
                self.one_line[i - 2] < self.one_line[i - 1] && self.one_line[i - 1] > self.one_line[i]
            })
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.one_line.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses comma-separated one-line notation, e.g. `"1,3,2"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        if s.is_empty() {
            return Err(Error::PermutationParse(s.to_string()));
        }
        let mut one_line = Vec::new();
        for tok in s.split(',') {
            let v: usize = tok
                .trim()
                .parse()
                .map_err(|_| Error::PermutationParse(s.to_string()))?;
            one_line.push(v);
        }
        Permutation::new(one_line)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.one_line.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let one_line = Vec::<usize>::deserialize(deserializer)?;
        Permutation::new(one_line).map_err(de::Error::custom)
    }
}

/// The unique permutation with the same relative order as `values`.
pub fn standardize(values: &[Rational]) -> Result<Permutation, Error> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].cmp(&values[b]));
    for w in idx.windows(2) {
        if values[w[0]] == values[w[1]] {
            return Err(Error::DuplicateValues);
        }
    }
    let mut one_line = vec![0; values.len()];
    for (rank, &pos) in idx.iter().enumerate() {
        one_line[pos] = rank + 1;
    }
    Ok(Permutation { one_line })
}

/// Standardization of distinct integers; used by the shuffle samplers.
pub(crate) fn standardize_ints(values: &[i64]) -> Permutation {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by_key(|&a| values[a]);
    let mut one_line = vec![0; values.len()];
    for (rank, &pos) in idx.iter().enumerate() {
        one_line[pos] = rank + 1;
    }
    Permutation { one_line }
}

/// All of `S_n` in lexicographic one-line order.
pub fn permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if current.len() == n {
            out.push(Permutation { one_line: current.clone() });
            return;
        }
        for v in 1..=n {
            if !used[v - 1] {
                used[v - 1] = true;
                current.push(v);
                rec(n, current, used, out);
                current.pop();
                used[v - 1] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

/// Permutations grouped by descent composition.
pub fn descent_classes(n: usize) -> BTreeMap<Composition, Vec<Permutation>> {
    let mut map: BTreeMap<Composition, Vec<Permutation>> = BTreeMap::new();
    for sigma in permutations(n) {
        map.entry(sigma.descent_composition()).or_default().push(sigma);
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::comp;

    #[test]
    fn descent_compositions() {
        let p = Permutation::new(vec![1, 3, 2]).unwrap();
        assert_eq!(p.descent_composition(), comp(&[2, 1]));
        assert_eq!(Permutation::identity(4).descent_composition(), comp(&[4]));
        let rev = Permutation::new(vec![3, 2, 1]).unwrap();
        assert_eq!(rev.descent_composition(), comp(&[1, 1, 1]));
    }

    #[test]
    fn standardization() {
        let vals: Vec<Rational> = [-2, 1, 3, -4].iter().map(|&v| Rational::int(v)).collect();
        assert_eq!(
            standardize(&vals).unwrap(),
            Permutation::new(vec![2, 3, 4, 1]).unwrap()
        );
        let vals: Vec<Rational> = [10, 5].iter().map(|&v| Rational::int(v)).collect();
        assert_eq!(standardize(&vals).unwrap(), Permutation::new(vec![2, 1]).unwrap());
        let dup = vec![Rational::int(1), Rational::int(1)];
        assert!(standardize(&dup).is_err());
    }

    #[test]
    fn compose_convention() {
        // (st)_i = s_{t_i}: with s = 21 and t = 21 in S_2, st = identity.
        let s = Permutation::new(vec![2, 1]).unwrap();
        assert_eq!(s.compose(&s), Permutation::identity(2));
        let a = Permutation::new(vec![2, 3, 1]).unwrap();
        let b = Permutation::new(vec![1, 3, 2]).unwrap();
        let ab = a.compose(&b);
        assert_eq!(ab.one_line(), &[2, 1, 3]);
        assert_eq!(a.compose(&a.inverse()), Permutation::identity(3));
    }

    #[test]
    fn class_sizes_are_eulerian_refinement() {
        let classes = descent_classes(4);
        let sizes: Vec<usize> = crate::composition::compositions(4)
            .iter()
            .map(|c| classes[c].len())
            .collect();
        assert_eq!(sizes.iter().sum::<usize>(), 24);
        // class of (4) is the identity alone; class of (1,1,1,1) the reversal
        assert_eq!(classes[&comp(&[4])], vec![Permutation::identity(4)]);
        assert_eq!(classes[&comp(&[1, 1, 1, 1])].len(), 1);
    }

    #[test]
    fn peak_sets_match_descent_composition_peaks() {
        for sigma in permutations(5) {
            assert_eq!(sigma.peak_set(), sigma.descent_composition().peak_set());
        }
    }
}
