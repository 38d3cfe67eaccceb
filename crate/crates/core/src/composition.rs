//! Compositions of nonnegative integers and the refinement order.
//!
//! Compositions index every basis in this crate. The canonical order on the
//! compositions of `n` is ascending length with lexicographic tie-break; it
//! is a linear extension of the refinement order, which is what makes all
//! the matrices in the endomorphism layer lower triangular.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An ordered sequence of positive integers. The empty composition (weight 0)
/// is a first-class value so that grade-0 algebra works uniformly.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self, Error> {
        if parts.contains(&0) {
            return Err(Error::ZeroPart);
        }
        Ok(Composition { parts })
    }

    /// The empty composition of weight 0.
    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
    }

    pub fn single(n: usize) -> Self {
        assert!(n > 0);
        Composition { parts: vec![n] }
    }

    /// `(1^k, l)`: k ones followed by l.
    pub fn hook(k: usize, l: usize) -> Self {
        assert!(l > 0);
        let mut parts = vec![1; k];
        parts.push(l);
        Composition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, written `l(alpha)`.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Composition { parts }
    }

    /// Partial sums `{a_1, a_1+a_2, ..., n}`, including the final weight.
    pub fn partial_sums(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.parts.len());
        let mut acc = 0;
        for &p in &self.parts {
            acc += p;
            out.push(acc);
        }
        out
    }

    /// The subset of `[n-1]` corresponding to this composition (partial sums
    /// with the final weight dropped).
    pub fn descent_set(&self) -> Vec<usize> {
        let mut s = self.partial_sums();
        s.pop();
        s
    }

    /// Inverse of [`Composition::descent_set`]: the composition of `n` whose
    /// partial sums are `set` (a strictly increasing subset of `[n-1]`).
    pub fn from_subset(set: &[usize], n: usize) -> Result<Self, Error> {
        let mut parts = Vec::with_capacity(set.len() + 1);
        let mut prev = 0;
        for &s in set {
            if s <= prev || s >= n.max(1) {
                return Err(Error::InvalidParameter(format!(
                    "subset element {s} out of range for n = {n}"
                )));
            }
            parts.push(s - prev);
            prev = s;
        }
        if n > 0 {
            parts.push(n - prev);
        }
        Ok(Composition { parts })
    }

    /// True iff `self` refines `coarser`, i.e. `coarser <= self` in the
    /// refinement order: the parts of `self` group into consecutive blocks
    /// with sums equal to the parts of `coarser`.
    pub fn refines(&self, coarser: &Composition) -> Result<bool, Error> {
        if self.weight() != coarser.weight() {
            return Err(Error::WeightMismatch(self.weight(), coarser.weight()));
        }
        Ok(self.split_at_sums(coarser).is_some())
    }

    /// Splits `self` into consecutive blocks whose sums are the parts of
    /// `coarser`, or `None` if no such grouping exists.
    pub fn split_at_sums(&self, coarser: &Composition) -> Option<Vec<Composition>> {
        let mut blocks = Vec::with_capacity(coarser.length());
        let mut idx = 0;
        for &target in &coarser.parts {
            let start = idx;
            let mut acc = 0;
            while acc < target {
                acc += *self.parts.get(idx)?;
                idx += 1;
            }
            if acc != target {
                return None;
            }
            blocks.push(Composition { parts: self.parts[start..idx].to_vec() });
        }
        if idx == self.parts.len() {
            Some(blocks)
        } else {
            None
        }
    }

    /// All ways of cutting `self` into consecutive nonempty blocks, paired
    /// with the coarser composition of block sums. One entry per subset of
    /// the `l-1` interior cut points.
    pub fn splits(&self) -> Vec<(Vec<Composition>, Composition)> {
        let l = self.length();
        if l == 0 {
            return vec![(Vec::new(), Composition::empty())];
        }
        let mut out = Vec::with_capacity(1 << (l - 1));
        for mask in 0..(1u64 << (l - 1)) {
            let mut blocks = Vec::new();
            let mut start = 0;
            for i in 0..l {
                if i + 1 == l || mask & (1 << i) != 0 {
                    blocks.push(Composition { parts: self.parts[start..=i].to_vec() });
                    start = i + 1;
                }
            }
            let sums = Composition {
                parts: blocks.iter().map(|b| b.weight()).collect(),
            };
            out.push((blocks, sums));
        }
        out
    }

    /// Interior peak positions: `{i in S_alpha | i != 1 and i-1 not in S_alpha}`,
    /// computed from the descent set (final weight excluded). For the descent
    /// composition of a permutation this is its peak set.
    pub fn peak_set(&self) -> Vec<usize> {
        let s = self.descent_set();
        s.iter()
            .copied()
            .filter(|&i| i != 1 && !s.contains(&(i - 1)))
            .collect()
    }

    /// True iff all parts before the last equal 1.
    pub fn is_hook(&self) -> bool {
        !self.is_empty() && self.parts[..self.parts.len() - 1].iter().all(|&p| p == 1)
    }

    /// Factors into hooks `(1^k, l)`: a cut after every part >= 2, with any
    /// trailing run of ones forming one final hook.
    pub fn hook_factorization(&self) -> Vec<Composition> {
        let mut out = Vec::new();
        let mut start = 0;
        for (i, &p) in self.parts.iter().enumerate() {
            if p >= 2 {
                out.push(Composition { parts: self.parts[start..=i].to_vec() });
                start = i + 1;
            }
        }
        if start < self.parts.len() {
            out.push(Composition { parts: self.parts[start..].to_vec() });
        }
        out
    }

    /// All compositions refining `self` (everything `>= self`), obtained by
    /// refining each part independently.
    pub fn refinements(&self) -> Vec<Composition> {
        let mut out = vec![Composition::empty()];
        for &p in &self.parts {
            let fine = compositions(p);
            let mut next = Vec::with_capacity(out.len() * fine.len());
            for prefix in &out {
                for f in &fine {
                    next.push(prefix.concat(f));
                }
            }
            out = next;
        }
        out
    }

    /// All compositions coarser than `self` (everything `<= self`).
    pub fn coarsenings(&self) -> Vec<Composition> {
        self.splits().into_iter().map(|(_, sums)| sums).collect()
    }

    /// Canonical order within a fixed weight: ascending length, then
    /// lexicographic on parts.
    pub fn canonical_cmp(&self, other: &Composition) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

/// Total order: weight, then the canonical per-weight order. `BTreeMap`s
/// keyed by compositions therefore iterate in canonical order.
impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.canonical_cmp(other))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Parses comma-separated parts, e.g. `"2,1"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        if s.is_empty() {
            return Err(Error::CompositionParse(s.to_string()));
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let p: usize = tok
                .trim()
                .parse()
                .map_err(|_| Error::CompositionParse(s.to_string()))?;
            if p == 0 {
                return Err(Error::ZeroPart);
            }
            parts.push(p);
        }
        Ok(Composition { parts })
    }
}

impl Serialize for Composition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Composition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Composition::new(parts).map_err(de::Error::custom)
    }
}

/// Shorthand used throughout the tests.
pub fn comp(parts: &[usize]) -> Composition {
    Composition::new(parts.to_vec()).expect("positive parts")
}

/// All `2^(n-1)` compositions of `n` in canonical order (the empty
/// composition for `n = 0`).
pub fn compositions(n: usize) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition::empty()];
    }
    let mut out = Vec::with_capacity(1 << (n - 1));
    for mask in 0..(1u64 << (n - 1)) {
        let set: Vec<usize> = (1..n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        out.push(Composition::from_subset(&set, n).expect("valid subset"));
    }
    out.sort();
    out
}
