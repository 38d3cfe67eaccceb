//! Characters of QSym and the machinery they induce: endomorphism matrices,
//! QS*-distributions, the transition matrices `K` (permutations), `Kbar`
//! (descent compositions), and `Khat` (equivalence classes such as peak
//! sets), lumping verification, and stationary distributions.
//!
//! A character is a multiplicative functional on QSym. It is determined by
//! its values on Lyndon compositions; every other value follows from the
//! straightening of the monomial basis. The dual series acts on the descent
//! algebra by left multiplication, which is where the random walks live.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::composition::{compositions, Composition};
use crate::descent::{group_product, DElement, DSeries};
use crate::error::Error;
use crate::linalg::{solve, QMatrix};
use crate::lyndon::{is_lyndon, lyndon_expand};
use crate::permutation::{permutations, Permutation};
use crate::qsym::{Basis, QSymElement};
use crate::rational::{binomial, Rational};
use crate::walk::{Distribution, TransitionMatrix};

/// Weight above which character values are recomputed rather than memoized.
pub const DEFAULT_CHAR_CAP: usize = 10;

/// Default cap for permutation-level state spaces.
pub const DEFAULT_PERM_CAP: usize = 6;

#[derive(Clone, Debug)]
enum CharacterKind {
    /// Evaluation of quasisymmetric functions at a finite point list.
    Evaluation(Vec<Rational>),
    /// `a`-fold convolution power of the universal character.
    ConvolutionPower(usize),
    /// The peak-enumeration endomorphism (face-up face-down shuffle).
    Theta,
    /// The r-parameter signed-shuffle family; `r = 2` is `Theta`.
    Vartheta(Rational),
    /// Explicit values on Lyndon compositions; missing variables default to
    /// zero when `default_zero` is set and error otherwise.
    UAssignment {
        values: BTreeMap<Composition, Rational>,
        default_zero: bool,
    },
    /// The character of a composed endomorphism: pair the outer character
    /// against the inner endomorphism's image.
    Composite { outer: Character, inner: Character },
}

/// A character of QSym, exposed through its values `<X^Phi, M_alpha>`.
/// Values are memoized per composition up to a weight cap. Cloning shares
/// the memo table.
#[derive(Clone)]
pub struct Character {
    kind: Arc<CharacterKind>,
    memo: Arc<Mutex<BTreeMap<Composition, Rational>>>,
    cap: usize,
    label: String,
}

impl std::fmt::Debug for Character {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Character({})", self.label)
    }
}

impl Character {
    fn new(kind: CharacterKind, label: String) -> Self {
        Character {
            kind: Arc::new(kind),
            memo: Arc::new(Mutex::new(BTreeMap::new())),
            cap: DEFAULT_CHAR_CAP,
            label,
        }
    }

    /// `value(alpha) = M_alpha(r_1, ..., r_k)`.
    pub fn evaluation(rs: Vec<Rational>) -> Self {
        let label = format!(
            "eval:{}",
            rs.iter().map(Rational::to_string).collect::<Vec<_>>().join(",")
        );
        Character::new(CharacterKind::Evaluation(rs), label)
    }

    /// The universal character: evaluation at `(1, 0, 0, ...)`. Induces the
    /// identity endomorphism.
    pub fn universal() -> Self {
        Character::new(
            CharacterKind::Evaluation(vec![Rational::one()]),
            "identity".to_string(),
        )
    }

    /// The `a`-fold convolution power of the universal character; drives the
    /// `a`-shuffle.
    pub fn convolution_power(a: usize) -> Result<Self, Error> {
        if a < 1 {
            return Err(Error::InvalidParameter("convolution power needs a >= 1".into()));
        }
        Ok(Character::new(
            CharacterKind::ConvolutionPower(a),
            format!("ashuffle:{a}"),
        ))
    }

    pub fn theta() -> Self {
        Character::new(CharacterKind::Theta, "theta".to_string())
    }

    pub fn vartheta(r: Rational) -> Self {
        let label = format!("vartheta:{r}");
        Character::new(CharacterKind::Vartheta(r), label)
    }

    /// Character from explicit values on Lyndon compositions. All keys must
    /// be Lyndon; unset Lyndon variables default to zero.
    pub fn u_assignment(values: BTreeMap<Composition, Rational>) -> Result<Self, Error> {
        Self::check_lyndon_keys(&values)?;
        Ok(Character::new(
            CharacterKind::UAssignment { values, default_zero: true },
            "ufile".to_string(),
        ))
    }

    fn check_lyndon_keys(values: &BTreeMap<Composition, Rational>) -> Result<(), Error> {
        for alpha in values.keys() {
            if !is_lyndon(alpha)? {
                return Err(Error::InvalidParameter(format!(
                    "{alpha} is not a Lyndon composition"
                )));
            }
        }
        Ok(())
    }

    /// The character of a composed endomorphism (`inner` applied first).
    pub fn compose(outer: Character, inner: Character) -> Self {
        let label = format!("{}({})", outer.label(), inner.label());
        Character::new(CharacterKind::Composite { outer, inner }, label)
    }

    /// Like [`Character::u_assignment`] but erroring on any unassigned
    /// Lyndon variable instead of defaulting it to zero.
    pub fn u_assignment_strict(values: BTreeMap<Composition, Rational>) -> Result<Self, Error> {
        Self::check_lyndon_keys(&values)?;
        Ok(Character::new(
            CharacterKind::UAssignment { values, default_zero: false },
            "ufile-strict".to_string(),
        ))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Overrides the weight cap below which values are memoized.
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    /// `<X^Phi, M_alpha>`: the coefficient functional that determines the
    /// whole endomorphism.
    pub fn value(&self, alpha: &Composition) -> Result<Rational, Error> {
        if alpha.is_empty() {
            return Ok(Rational::one());
        }
        if alpha.weight() <= self.cap {
            if let Some(hit) = self.memo.lock().expect("poisoned").get(alpha) {
                return Ok(hit.clone());
            }
        }
        let value = self.compute_value(alpha)?;
        if alpha.weight() <= self.cap {
            self.memo
                .lock()
                .expect("poisoned")
                .insert(alpha.clone(), value.clone());
        }
        Ok(value)
    }

    fn compute_value(&self, alpha: &Composition) -> Result<Rational, Error> {
        match &*self.kind {
            CharacterKind::Evaluation(rs) => Ok(evaluate_monomial(alpha, rs)),
            CharacterKind::ConvolutionPower(a) => {
                // M_alpha at a ones: one term per increasing index tuple
                Ok(Rational::from_bigint(binomial(*a, alpha.length())))
            }
            CharacterKind::Theta => Ok(hook_pairing_value(alpha, &Rational::int(2))),
            CharacterKind::Vartheta(r) => Ok(hook_pairing_value(alpha, r)),
            CharacterKind::UAssignment { values, default_zero } => {
                lyndon_expand(alpha)?.evaluate_with(|gamma| {
                    values.get(gamma).cloned().or_else(|| {
                        if *default_zero {
                            Some(Rational::zero())
                        } else {
                            None
                        }
                    })
                })
            }
            CharacterKind::Composite { outer, inner } => {
                let image = inner.apply(&QSymElement::monomial(alpha.clone()))?;
                let mut total = Rational::zero();
                for (beta, coeff) in image.coeffs() {
                    total += &(coeff * &outer.value(beta)?);
                }
                Ok(total)
            }
        }
    }

    /// `lambda = value((1))`, the scaling eigenvalue.
    pub fn lambda(&self) -> Result<Rational, Error> {
        self.value(&Composition::single(1))
    }

    /// `lambda_alpha = prod_i value((a_i))`.
    pub fn lambda_of(&self, alpha: &Composition) -> Result<Rational, Error> {
        let mut out = Rational::one();
        for &p in alpha.parts() {
            out *= &self.value(&Composition::single(p))?;
        }
        Ok(out)
    }

    /// `c_(alpha,n) = <X^Phi, F_alpha> = sum_(beta >= alpha) value(beta)`.
    pub fn c_value(&self, alpha: &Composition) -> Result<Rational, Error> {
        let mut out = Rational::zero();
        for beta in alpha.refinements() {
            out += &self.value(&beta)?;
        }
        Ok(out)
    }

    /// Grade-`n` component of the dual series: `(X^Phi)_n = sum c_(alpha,n)
    /// Y_alpha`.
    pub fn x_component(&self, n: usize) -> Result<DElement, Error> {
        let mut coeffs = BTreeMap::new();
        for alpha in compositions(n) {
            let c = self.c_value(&alpha)?;
            if !c.is_zero() {
                coeffs.insert(alpha, c);
            }
        }
        DElement::from_y_coeffs(n, coeffs)
    }

    /// The dual series `X^Phi` as a lazily generated formal series.
    pub fn x_series(&self) -> DSeries {
        let c = self.clone();
        DSeries::new(move |n| c.x_component(n).expect("character value"))
    }

    /// Applies the induced endomorphism to a homogeneous element, returned
    /// in the basis of the input: on the monomial basis,
    /// `Phi(M_beta) = sum over splittings of beta` of the product of values
    /// on the blocks times `M_(block weights)`.
    pub fn apply(&self, x: &QSymElement) -> Result<QSymElement, Error> {
        let m = x.to_basis(Basis::M)?;
        let mut out = QSymElement::zero(x.grade(), Basis::M);
        for (beta, coeff) in m.coeffs() {
            for (blocks, sums) in beta.splits() {
                let mut weight = coeff.clone();
                for block in &blocks {
                    if weight.is_zero() {
                        break;
                    }
                    weight *= &self.value(block)?;
                }
                out.add_term(sums, &weight);
            }
        }
        out.to_basis(x.basis())
    }
}

/// `M_alpha(r_1, ..., r_k)`: sum over strictly increasing index tuples.
fn evaluate_monomial(alpha: &Composition, rs: &[Rational]) -> Rational {
    // dp[j] = sum over choices for the first j parts using variables seen so far
    let parts = alpha.parts();
    let mut dp = vec![Rational::zero(); parts.len() + 1];
    dp[0] = Rational::one();
    for r in rs {
        for j in (0..parts.len()).rev() {
            if !dp[j].is_zero() {
                let contribution = &dp[j] * &r.pow(parts[j] as i64);
                dp[j + 1] += &contribution;
            }
        }
    }
    dp[parts.len()].clone()
}

/// `<r * sum_k (r-1)^k Y_(1^k, n-k), M_alpha>`, the value functional shared
/// by the theta and vartheta families.
fn hook_pairing_value(alpha: &Composition, r: &Rational) -> Rational {
    let n = alpha.weight();
    let len = alpha.length();
    let mut out = Rational::zero();
    for k in 0..n {
        let hook = Composition::hook(k, n - k);
        if hook.refines(alpha).expect("same weight") {
            // <Y_beta, M_alpha> = (-1)^(l(beta) - l(alpha)) for alpha <= beta
            let sign = if (k + 1 - len).is_multiple_of(2) { 1 } else { -1 };
            let term = &(r * &(r - &Rational::one()).pow(k as i64)) * &Rational::int(sign);
            out += &term;
        }
    }
    out
}

/// Matrix of the restriction of the endomorphism to grade `n` in the chosen
/// basis; rows are indexed by the source basis element. The monomial-basis
/// matrix is lower triangular in the canonical composition order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EndoMatrix {
    n: usize,
    basis: Basis,
    comps: Vec<Composition>,
    mat: QMatrix,
}

impl EndoMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn compositions(&self) -> &[Composition] {
        &self.comps
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.mat
    }

    /// Coefficient of `B_alpha` in `Phi(B_beta)`.
    pub fn entry(&self, beta: &Composition, alpha: &Composition) -> &Rational {
        let i = self.comps.iter().position(|c| c == beta).expect("row");
        let j = self.comps.iter().position(|c| c == alpha).expect("column");
        self.mat.get(i, j)
    }

    pub fn row(&self, beta: &Composition) -> QSymElement {
        let i = self.comps.iter().position(|c| c == beta).expect("row");
        let mut out = QSymElement::zero(self.n, self.basis);
        for (j, alpha) in self.comps.iter().enumerate() {
            out.add_term(alpha.clone(), self.mat.get(i, j));
        }
        out
    }
}

/// Builds the grade-`n` matrix of the endomorphism induced by `char`.
pub fn phi_matrix(char: &Character, n: usize, basis: Basis) -> Result<EndoMatrix, Error> {
    let comps = compositions(n);
    let index: BTreeMap<&Composition, usize> =
        comps.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut mat = QMatrix::zeros(comps.len(), comps.len());
    for (i, beta) in comps.iter().enumerate() {
        let source = match basis {
            Basis::M => QSymElement::monomial(beta.clone()),
            Basis::F => QSymElement::fundamental(beta.clone()),
        };
        let image = char.apply(&source)?;
        for (alpha, v) in image.coeffs() {
            mat.set(i, index[alpha], v.clone());
        }
    }
    Ok(EndoMatrix { n, basis, comps, mat })
}

/// The QS*-distribution on permutations: mass `c_(D(pi), n) / lambda^n`.
pub fn qs_star_distribution(char: &Character, n: usize) -> Result<Distribution<Permutation>, Error> {
    let column = checked_c_column(char, n)?;
    let lambda_n = lambda_power(char, n)?;
    let mut probs = BTreeMap::new();
    for sigma in permutations(n) {
        let c = &column[&sigma.descent_composition()];
        probs.insert(sigma, c / &lambda_n);
    }
    Distribution::new(probs)
}

/// The `c_(alpha,n)` column with the walk hypotheses enforced: all entries
/// nonnegative and not identically zero.
fn checked_c_column(char: &Character, n: usize) -> Result<BTreeMap<Composition, Rational>, Error> {
    let mut column = BTreeMap::new();
    let mut all_zero = true;
    for alpha in compositions(n) {
        let c = char.c_value(&alpha)?;
        if c.is_negative() {
            return Err(Error::NegativeWeight(alpha));
        }
        if !c.is_zero() {
            all_zero = false;
        }
        column.insert(alpha, c);
    }
    if all_zero {
        return Err(Error::AllZero);
    }
    Ok(column)
}

fn lambda_power(char: &Character, n: usize) -> Result<Rational, Error> {
    let lambda = char.lambda()?;
    if lambda.is_zero() && n > 0 {
        return Err(Error::LambdaZero);
    }
    Ok(lambda.pow(n as i64))
}

/// `Kbar(alpha, beta) = c_(alpha,beta) / lambda^n`, the lumped walk on
/// descent compositions.
pub fn kbar(char: &Character, n: usize) -> Result<TransitionMatrix<Composition>, Error> {
    checked_c_column(char, n)?;
    let lambda_n = lambda_power(char, n)?;
    let f = phi_matrix(char, n, Basis::F)?;
    let mat = f.mat.scale(&lambda_n.recip()?);
    TransitionMatrix::new(f.comps, mat)
}

fn convention_verified() -> Result<(), Error> {
    static CHECK: OnceLock<bool> = OnceLock::new();
    let ok = *CHECK.get_or_init(|| {
        let theta = Character::theta();
        let Ok(kbar3) = kbar(&theta, 3) else { return false };
        let Ok(k3) = k_full_unchecked(&theta, 3) else { return false };
        // the lumped matrix must reproduce the known 4x4 walk table
        let table = [
            ([3usize].as_slice(), vec![(1, 4), (1, 4), (1, 4), (1, 4)]),
            (&[1, 2], vec![(1, 4), (1, 4), (1, 4), (1, 4)]),
            (&[2, 1], vec![(0, 1), (1, 2), (1, 2), (0, 1)]),
            (&[1, 1, 1], vec![(1, 4), (1, 4), (1, 4), (1, 4)]),
        ];
        let comps = compositions(3);
        for (row, expected) in &table {
            let from = Composition::new(row.to_vec()).expect("parts");
            for (to, &(num, den)) in comps.iter().zip(expected) {
                if kbar3.entry(&from, to) != &Rational::new(num, den) {
                    return false;
                }
            }
        }
        verify_lumping(&k3, &kbar3).is_none()
    });
    if ok {
        Ok(())
    } else {
        Err(Error::ConventionMismatch)
    }
}

fn k_full_unchecked(char: &Character, n: usize) -> Result<TransitionMatrix<Permutation>, Error> {
    let dist = qs_star_distribution(char, n)?;
    let states = permutations(n);
    let mut mat = QMatrix::zeros(states.len(), states.len());
    for (i, pi) in states.iter().enumerate() {
        for (j, tau) in states.iter().enumerate() {
            // K(pi, sigma pi) = prob(sigma^{-1}), i.e. K(pi, tau) = prob(pi tau^{-1})
            let sigma_inv = pi.compose(&tau.inverse());
            mat.set(i, j, dist.prob(&sigma_inv));
        }
    }
    TransitionMatrix::new(states, mat)
}

/// The walk on `S_n` itself: `K(pi, sigma pi) = prob(sigma^{-1})`. The
/// one-line composition convention is validated once per process against
/// the known grade-3 peak walk before any matrix is returned.
pub fn k_full(char: &Character, n: usize, cap: usize) -> Result<TransitionMatrix<Permutation>, Error> {
    if n > cap {
        return Err(Error::BruteForceCap { n, cap });
    }
    convention_verified()?;
    k_full_unchecked(char, n)
}

/// Checks the lumping identity: for every source permutation and target
/// composition, the mass of the target descent class under `K` equals the
/// corresponding `Kbar` entry. Returns a witness on failure.
pub fn verify_lumping(
    k: &TransitionMatrix<Permutation>,
    kbar: &TransitionMatrix<Composition>,
) -> Option<(Permutation, Composition)> {
    for pi in k.states() {
        for beta in kbar.states() {
            let mut mass = Rational::zero();
            for sigma in k.states() {
                if &sigma.descent_composition() == beta {
                    mass += k.entry(pi, sigma);
                }
            }
            if &mass != kbar.entry(&pi.descent_composition(), beta) {
                return Some((pi.clone(), beta.clone()));
            }
        }
    }
    None
}

/// Checks that the `(n)`-column of `Kbar^m` encodes the `m`-fold convolution
/// of the QS*-distribution, grouped by descent class.
pub fn convolution_column_check(char: &Character, n: usize, m: u32, cap: usize) -> Result<bool, Error> {
    if n > cap {
        return Err(Error::BruteForceCap { n, cap });
    }
    let dist = qs_star_distribution(char, n)?;
    let kbar_m = kbar(char, n)?.pow(m);
    // m-fold group-algebra convolution of the distribution
    let mut conv: BTreeMap<Permutation, Rational> = BTreeMap::new();
    conv.insert(Permutation::identity(n), Rational::one());
    for _ in 0..m {
        let mut next: BTreeMap<Permutation, Rational> = BTreeMap::new();
        for (s, a) in dist.probs() {
            for (t, b) in &conv {
                let st = s.compose(t);
                let w = a * b;
                use std::collections::btree_map::Entry;
                match next.entry(st) {
                    Entry::Occupied(mut e) => *e.get_mut() += &w,
                    Entry::Vacant(v) => {
                        v.insert(w);
                    }
                }
            }
        }
        conv = next;
    }
    let target = if n == 0 { Composition::empty() } else { Composition::single(n) };
    for pi in permutations(n) {
        let expected = conv.get(&pi).cloned().unwrap_or_else(Rational::zero);
        if kbar_m.entry(&pi.descent_composition(), &target) != &expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A partition of `Comp(n)` into classes, ordered deterministically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompPartition {
    n: usize,
    classes: Vec<Vec<Composition>>,
}

impl CompPartition {
    pub fn new(n: usize, mut classes: Vec<Vec<Composition>>) -> Result<Self, Error> {
        let mut seen: Vec<Composition> = Vec::new();
        for class in &mut classes {
            class.sort();
            for c in class.iter() {
                if c.weight() != n {
                    return Err(Error::WeightMismatch(c.weight(), n));
                }
                if seen.contains(c) {
                    return Err(Error::InvalidParameter(format!("{c} appears twice")));
                }
                seen.push(c.clone());
            }
        }
        if seen.len() != compositions(n).len() {
            return Err(Error::InvalidParameter("partition does not cover Comp(n)".into()));
        }
        classes.sort_by(|a, b| a[0].cmp(&b[0]));
        Ok(CompPartition { n, classes })
    }

    /// Classes of equal peak set, ordered by peak set.
    pub fn by_peak_set(n: usize) -> Self {
        let mut map: BTreeMap<Vec<usize>, Vec<Composition>> = BTreeMap::new();
        for alpha in compositions(n) {
            map.entry(alpha.peak_set()).or_default().push(alpha);
        }
        let classes = map.into_values().collect();
        CompPartition { n, classes }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[Vec<Composition>] {
        &self.classes
    }

    pub fn class_index(&self, alpha: &Composition) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(alpha))
    }
}

/// Confirms the partitioning property for `char` at grade `n`: images of the
/// fundamental basis are constant on classes, and the distinct images form a
/// basis of the image of the endomorphism.
pub fn verify_partitioning(char: &Character, partition: &CompPartition) -> Result<(), Error> {
    let n = partition.n();
    let f = phi_matrix(char, n, Basis::F)?;
    for class in partition.classes() {
        let first = f.row(&class[0]);
        for alpha in &class[1..] {
            if f.row(alpha) != first {
                return Err(Error::PartitionViolation(format!(
                    "Phi(F_{}) != Phi(F_{})",
                    class[0], alpha
                )));
            }
        }
    }
    let rep_rows: Vec<Vec<Rational>> = partition
        .classes()
        .iter()
        .map(|class| {
            let i = f.comps.iter().position(|c| c == &class[0]).expect("row");
            f.mat.row(i).to_vec()
        })
        .collect();
    let rep_rank = QMatrix::new(rep_rows).rank();
    if rep_rank != partition.classes().len() {
        return Err(Error::PartitionViolation(
            "class images are linearly dependent".into(),
        ));
    }
    if rep_rank != f.mat.rank() {
        return Err(Error::PartitionViolation(
            "class images do not span the image".into(),
        ));
    }
    Ok(())
}

/// The lumped matrix `Khat = d / lambda^n` over partition classes, where
/// `Phi(phi_class) = sum d phi_class'`. States are class indices in
/// partition order.
pub fn partition_lumped_matrix(
    char: &Character,
    partition: &CompPartition,
) -> Result<TransitionMatrix<usize>, Error> {
    verify_partitioning(char, partition)?;
    let n = partition.n();
    checked_c_column(char, n)?;
    let lambda_n = lambda_power(char, n)?;
    let f = phi_matrix(char, n, Basis::F)?;
    let k = partition.classes().len();

    // rows of C at class representatives, and their images under another
    // application of the endomorphism (rows of C^2)
    let c2 = f.mat.mul(&f.mat);
    let rep_index: Vec<usize> = partition
        .classes()
        .iter()
        .map(|class| f.comps.iter().position(|c| c == &class[0]).expect("row"))
        .collect();
    let basis_t = {
        // columns are the representative rows of C
        let mut m = QMatrix::zeros(f.comps.len(), k);
        for (j, &ri) in rep_index.iter().enumerate() {
            for col in 0..f.comps.len() {
                m.set(col, j, f.mat.get(ri, col).clone());
            }
        }
        m
    };
    let mut mat = QMatrix::zeros(k, k);
    for (i, &ri) in rep_index.iter().enumerate() {
        let target: Vec<Rational> = (0..f.comps.len()).map(|c| c2.get(ri, c).clone()).collect();
        let d = solve(&basis_t, &target).ok_or_else(|| {
            Error::PartitionViolation("image is not in the span of class images".into())
        })?;
        for (j, v) in d.into_iter().enumerate() {
            mat.set(i, j, &v / &lambda_n);
        }
    }
    TransitionMatrix::new((0..k).collect(), mat)
}

/// The peak-set lumping of the theta walk, with its partition. Also checks
/// that lumping `Kbar` over peak classes gives the same matrix.
pub fn peak_lumped_matrix(n: usize) -> Result<(TransitionMatrix<Vec<usize>>, CompPartition), Error> {
    let theta = Character::theta();
    let partition = CompPartition::by_peak_set(n);
    let lumped = partition_lumped_matrix(&theta, &partition)?;

    // cross-check against directly lumping the composition walk
    let kb = kbar(&theta, n)?;
    for (i, class) in partition.classes().iter().enumerate() {
        for (j, target) in partition.classes().iter().enumerate() {
            let mut mass = Rational::zero();
            for beta in target {
                mass += kb.entry(&class[0], beta);
            }
            if &mass != lumped.entry(&i, &j) {
                return Err(Error::PartitionViolation(format!(
                    "lumping mismatch at classes {i},{j}"
                )));
            }
        }
    }

    let states: Vec<Vec<usize>> = partition
        .classes()
        .iter()
        .map(|class| class[0].peak_set())
        .collect();
    let relabeled = TransitionMatrix::new(states, lumped.matrix().clone())?;
    Ok((relabeled, partition))
}

/// Checks that the span of the peak-class sums `Y_class` is closed under
/// right multiplication by every `Y_beta`.
pub fn right_ideal_check(n: usize, cap: usize) -> Result<bool, Error> {
    let partition = CompPartition::by_peak_set(n);
    let class_sums: Vec<DElement> = partition
        .classes()
        .iter()
        .map(|class| crate::descent::y_sum(n, class))
        .collect();
    for sum in &class_sums {
        for beta in compositions(n) {
            let product = group_product(sum, &DElement::y_of(beta), cap)?;
            let y = product.y_coeffs()?;
            for class in partition.classes() {
                let first = y.get(&class[0]).cloned().unwrap_or_else(Rational::zero);
                for alpha in &class[1..] {
                    let v = y.get(alpha).cloned().unwrap_or_else(Rational::zero);
                    if v != first {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Expands `(X^Phi)_n` in the X basis; the distribution is of
/// hyperplane-walk type exactly when all coefficients are nonnegative.
pub fn is_bhr_distribution(char: &Character, n: usize) -> Result<(bool, DElement), Error> {
    checked_c_column(char, n)?;
    let x = char.x_component(n)?.to_x_basis()?;
    let nonneg = x
        .x_coeffs()?
        .values()
        .all(|v| !v.is_negative());
    Ok((nonneg, x))
}
