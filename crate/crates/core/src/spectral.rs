//! Spectral analysis of the induced endomorphisms: eigenvalues indexed by
//! compositions, the recursive eigenvector construction in the descent
//! algebra, primitivity, diagonalizability certificates, the dual
//! eigenbasis for shuffle operators, and eigenvector lifting from the
//! composition walk to the permutation walk.

use std::collections::BTreeMap;

use crate::composition::{compositions, Composition};
use crate::descent::{coproduct_d, group_product, star_product, DElement, DTensor};
use crate::endo::{phi_matrix, Character};
use crate::linalg::QMatrix;
use crate::error::Error;
use crate::permutation::Permutation;
use crate::qsym::{Basis, QSymElement};
use crate::rational::{factorial, Rational};
use crate::walk::TransitionMatrix;

/// All eigenvalues of the grade-`n` restriction, with multiplicity: one per
/// composition, `lambda_alpha = prod_i lambda_(a_i)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Spectrum {
    n: usize,
    eigenvalues: Vec<(Composition, Rational)>,
}

impl Spectrum {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eigenvalues(&self) -> &[(Composition, Rational)] {
        &self.eigenvalues
    }

    /// The eigenvalue multiset, sorted.
    pub fn multiset(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.eigenvalues.iter().map(|(_, l)| l.clone()).collect();
        v.sort();
        v
    }

    pub fn eigenvalue(&self, alpha: &Composition) -> &Rational {
        &self
            .eigenvalues
            .iter()
            .find(|(c, _)| c == alpha)
            .expect("composition of weight n")
            .1
    }
}

pub fn spectrum(char: &Character, n: usize) -> Result<Spectrum, Error> {
    let mut eigenvalues = Vec::new();
    for alpha in compositions(n) {
        let l = char.lambda_of(&alpha)?;
        eigenvalues.push((alpha, l));
    }
    Ok(Spectrum { n, eigenvalues })
}

/// Checks that the eigenvalue multiset equals the roots of the exact
/// characteristic polynomial of the monomial-basis matrix.
pub fn spectrum_matches_charpoly(char: &Character, n: usize) -> Result<bool, Error> {
    let spec = spectrum(char, n)?;
    let roots: Vec<Rational> = spec.eigenvalues.iter().map(|(_, l)| l.clone()).collect();
    let expected = crate::linalg::poly_from_roots(&roots);
    let actual = phi_matrix(char, n, Basis::M)?.matrix().charpoly();
    Ok(expected == actual)
}

/// Eigenvector of left multiplication by the dual series, stored in the
/// X basis with leading coefficient one on `X_index`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZVector {
    pub index: Composition,
    pub element: DElement,
}

/// The atomic eigenvector `Z_m`: the unique element with `<Z_m, M_m> = 1`
/// and `X^Phi . Z_m = lambda_m Z_m`, built by the triangular recursion
/// `<Z_m, M_beta> = (sum_(alpha < beta) <Z_m, M_alpha><X^Phi X_alpha, M_beta>)
/// / (lambda_m - lambda_beta)`.
pub fn z_vector(char: &Character, m: usize) -> Result<ZVector, Error> {
    assert!(m >= 1);
    let lambda_m = char.value(&Composition::single(m))?;
    if lambda_m.is_zero() {
        return Err(Error::ZeroEigenvalue(m));
    }
    let comps = compositions(m);
    for beta in &comps {
        if beta.length() > 1 && char.lambda_of(beta)? == lambda_m {
            return Err(Error::EigenvalueCollision { m, beta: beta.clone() });
        }
    }
    let mmat = phi_matrix(char, m, Basis::M)?;
    let mut coeffs: BTreeMap<Composition, Rational> = BTreeMap::new();
    coeffs.insert(Composition::single(m), Rational::one());
    // canonical order refines the partial order, so every alpha < beta is
    // already computed when beta is reached
    for beta in &comps {
        if beta.length() == 1 {
            continue;
        }
        let mut acc = Rational::zero();
        for alpha in beta.coarsenings() {
            if &alpha == beta {
                continue;
            }
            if let Some(z) = coeffs.get(&alpha) {
                acc += &(z * mmat.entry(beta, &alpha));
            }
        }
        let denom = &lambda_m - &char.lambda_of(beta)?;
        let value = &acc / &denom;
        if !value.is_zero() {
            coeffs.insert(beta.clone(), value);
        }
    }
    Ok(ZVector {
        index: Composition::single(m),
        element: DElement::from_x_coeffs(m, coeffs)?,
    })
}

/// `Z_alpha = Z_(a_1) * ... * Z_(a_k)` in the concatenation product.
pub fn z_alpha(char: &Character, alpha: &Composition) -> Result<ZVector, Error> {
    if alpha.is_empty() {
        return Ok(ZVector { index: Composition::empty(), element: DElement::x_n(0) });
    }
    let mut element: Option<DElement> = None;
    for &p in alpha.parts() {
        let atom = z_vector(char, p)?.element;
        element = Some(match element {
            None => atom,
            Some(e) => star_product(&e, &atom)?,
        });
    }
    Ok(ZVector { index: alpha.clone(), element: element.expect("nonempty") })
}

/// Verifies the eigen-equation `X^Phi . Z_alpha = lambda_alpha Z_alpha`
/// with the honest group product in the group algebra.
pub fn verify_eigen(char: &Character, alpha: &Composition, cap: usize) -> Result<bool, Error> {
    let n = alpha.weight();
    let z = z_alpha(char, alpha)?;
    let x_phi = char.x_component(n)?;
    let lhs = group_product(&x_phi, &z.element, cap)?;
    let rhs = z.element.scale(&char.lambda_of(alpha)?);
    Ok(lhs.x_coeffs()? == rhs.x_coeffs()?)
}

/// `Delta_D(w) = 1 (x) w + w (x) 1` exactly.
pub fn is_primitive(w: &DElement) -> Result<bool, Error> {
    let actual = coproduct_d(w)?;
    let mut expected = DTensor::zero();
    for (alpha, v) in w.x_coeffs()? {
        expected.add_term(Composition::empty(), alpha.clone(), &v);
        expected.add_term(alpha, Composition::empty(), &v);
    }
    Ok(actual == expected)
}

/// Why a diagonalizability certificate failed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DiagObstruction {
    /// `lambda_m` collides with `lambda_beta` for a finer `beta`.
    EigenvalueCollision { m: usize, beta: Composition },
    /// The rank differs from the number of nonzero eigenvalues.
    RankMismatch { rank: usize, nonzero: usize },
}

/// Successful certificate: an eigenbasis for the nonzero spectrum plus an
/// exact kernel basis.
#[derive(Clone, Debug)]
pub struct Diagonalizability {
    pub diagonalizable: bool,
    pub obstruction: Option<DiagObstruction>,
    pub rank: usize,
    pub nonzero_eigenvalues: usize,
    pub eigenbasis: Vec<ZVector>,
    pub kernel_basis: Vec<QSymElement>,
}

/// Checks the two hypotheses (no eigenvalue collisions at any degree up to
/// `n` with nonzero atomic eigenvalue, and rank equal to the number of
/// nonzero `lambda_alpha`) and produces the eigenbasis and kernel on
/// success.
pub fn diagonalizable(char: &Character, n: usize) -> Result<Diagonalizability, Error> {
    let mut failure = None;
    'outer: for m in 1..=n {
        let lambda_m = char.value(&Composition::single(m))?;
        if lambda_m.is_zero() {
            continue;
        }
        for beta in compositions(m) {
            if beta.length() > 1 && char.lambda_of(&beta)? == lambda_m {
                failure = Some(DiagObstruction::EigenvalueCollision { m, beta });
                break 'outer;
            }
        }
    }

    let mmat = phi_matrix(char, n, Basis::M)?;
    let rank = mmat.matrix().rank();
    let mut nonzero = 0usize;
    let comps = compositions(n);
    for alpha in &comps {
        if !char.lambda_of(alpha)?.is_zero() {
            nonzero += 1;
        }
    }
    if failure.is_none() && rank != nonzero {
        failure = Some(DiagObstruction::RankMismatch { rank, nonzero });
    }

    if let Some(obstruction) = failure {
        return Ok(Diagonalizability {
            diagonalizable: false,
            obstruction: Some(obstruction),
            rank,
            nonzero_eigenvalues: nonzero,
            eigenbasis: Vec::new(),
            kernel_basis: Vec::new(),
        });
    }

    let mut eigenbasis = Vec::new();
    for alpha in &comps {
        if !char.lambda_of(alpha)?.is_zero() {
            eigenbasis.push(z_alpha(char, alpha)?);
        }
    }
    // the operator acts on coefficient columns through the transpose of the
    // row-convention matrix
    let kernel_basis = mmat
        .matrix()
        .transpose()
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let coeffs: BTreeMap<Composition, Rational> =
                comps.iter().cloned().zip(v).collect();
            QSymElement::from_coeffs(n, Basis::M, coeffs).expect("grade n")
        })
        .collect();
    Ok(Diagonalizability {
        diagonalizable: true,
        obstruction: None,
        rank,
        nonzero_eigenvalues: nonzero,
        eigenbasis,
        kernel_basis,
    })
}

/// Closed-form atomic eigenvector shared by the whole convolution-power
/// family: `Z_n = sum_beta (-1)^(l(beta)-1)/l(beta) X_beta`.
pub fn shuffle_z(n: usize) -> ZVector {
    assert!(n >= 1);
    let mut coeffs = BTreeMap::new();
    for beta in compositions(n) {
        let l = beta.length() as i64;
        let sign = if (l - 1) % 2 == 0 { 1 } else { -1 };
        coeffs.insert(beta, Rational::new(sign, l));
    }
    ZVector {
        index: Composition::single(n),
        element: DElement::from_x_coeffs(n, coeffs).expect("grade n"),
    }
}

/// The dual eigenbasis of the convolution-power family:
/// `P_beta = sum_(alpha <= beta) M_alpha / f(beta, alpha)` where
/// `f(beta, alpha)` is the product of factorials of the block lengths.
pub fn p_basis(n: usize) -> BTreeMap<Composition, QSymElement> {
    let mut out = BTreeMap::new();
    for beta in compositions(n) {
        let mut elem = QSymElement::zero(n, Basis::M);
        for alpha in beta.coarsenings() {
            let blocks = beta.split_at_sums(&alpha).expect("alpha <= beta");
            let mut f = Rational::one();
            for b in &blocks {
                f *= &Rational::from_bigint(factorial(b.length()));
            }
            elem.add_term(alpha, &f.recip().expect("positive factorial"));
        }
        out.insert(beta, elem);
    }
    out
}

/// Lifts a right eigenvector of the composition walk to the permutation
/// walk by constant extension over descent classes; the result is verified
/// to satisfy `K v = lambda v` exactly. Returns the lifted vector and the
/// eigenvalue.
pub fn lift_eigenvector(
    kbar: &TransitionMatrix<Composition>,
    k: &TransitionMatrix<Permutation>,
    vector: &BTreeMap<Composition, Rational>,
) -> Result<(BTreeMap<Permutation, Rational>, Rational), Error> {
    let x: Vec<Rational> = kbar
        .states()
        .iter()
        .map(|s| vector.get(s).cloned().unwrap_or_else(Rational::zero))
        .collect();
    let Some(pivot) = x.iter().position(|v| !v.is_zero()) else {
        return Err(Error::NotAnEigenvector);
    };
    let y = kbar.matrix().mul_vec(&x);
    let lambda = &y[pivot] / &x[pivot];
    for (yi, xi) in y.iter().zip(&x) {
        if yi != &(&lambda * xi) {
            return Err(Error::NotAnEigenvector);
        }
    }

    let lifted: BTreeMap<Permutation, Rational> = k
        .states()
        .iter()
        .map(|pi| {
            let alpha = pi.descent_composition();
            (pi.clone(), vector.get(&alpha).cloned().unwrap_or_else(Rational::zero))
        })
        .collect();
    let v: Vec<Rational> = k.states().iter().map(|pi| lifted[pi].clone()).collect();
    let kv = k.matrix().mul_vec(&v);
    for (a, b) in kv.iter().zip(&v) {
        if a != &(&lambda * b) {
            return Err(Error::NotAnEigenvector);
        }
    }
    Ok((lifted, lambda))
}

/// Lifts several independent eigenvectors at once and certifies that they
/// stay linearly independent.
pub fn lift_eigenbasis(
    kbar: &TransitionMatrix<Composition>,
    k: &TransitionMatrix<Permutation>,
    vectors: &[BTreeMap<Composition, Rational>],
) -> Result<Vec<(BTreeMap<Permutation, Rational>, Rational)>, Error> {
    let lifted: Vec<(BTreeMap<Permutation, Rational>, Rational)> = vectors
        .iter()
        .map(|v| lift_eigenvector(kbar, k, v))
        .collect::<Result<_, _>>()?;
    let rows: Vec<Vec<Rational>> = lifted
        .iter()
        .map(|(m, _)| k.states().iter().map(|pi| m[pi].clone()).collect())
        .collect();
    let input_rows: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| {
            kbar.states()
                .iter()
                .map(|c| v.get(c).cloned().unwrap_or_else(Rational::zero))
                .collect()
        })
        .collect();
    let input_rank = QMatrix::new(input_rows).rank();
    if QMatrix::new(rows).rank() != input_rank {
        return Err(Error::NotAnEigenvector);
    }
    Ok(lifted)
}

/// Block structure of the permutation walk: the span of descent-class
/// indicator vectors is invariant under `K` with induced matrix `Kbar`, and
/// the complementary per-class zero-sum space is invariant under the
/// transpose.
pub fn block_invariance(
    char: &Character,
    n: usize,
    cap: usize,
) -> Result<bool, Error> {
    let k = crate::endo::k_full(char, n, cap)?;
    let kb = crate::endo::kbar(char, n)?;
    let states = k.states().to_vec();
    let classes: Vec<(Composition, Vec<usize>)> = kb
        .states()
        .iter()
        .map(|alpha| {
            let members = states
                .iter()
                .enumerate()
                .filter(|(_, pi)| &pi.descent_composition() == alpha)
                .map(|(i, _)| i)
                .collect();
            (alpha.clone(), members)
        })
        .collect();

    // K applied to a class indicator expands in indicators with Kbar weights
    for (beta, members) in &classes {
        let mut indicator = vec![Rational::zero(); states.len()];
        for &i in members {
            indicator[i] = Rational::one();
        }
        let image = k.matrix().mul_vec(&indicator);
        for (i, pi) in states.iter().enumerate() {
            let expected = kb.entry(&pi.descent_composition(), beta);
            if &image[i] != expected {
                return Ok(false);
            }
        }
    }

    // the zero-sum space is carried into itself by the transpose
    let kt = k.matrix().transpose();
    for (_, members) in &classes {
        if members.len() < 2 {
            continue;
        }
        for &other in &members[1..] {
            let mut u = vec![Rational::zero(); states.len()];
            u[members[0]] = Rational::one();
            u[other] = Rational::int(-1);
            let image = kt.mul_vec(&u);
            for (_, class_members) in &classes {
                let class_sum: Rational =
                    class_members.iter().map(|&i| image[i].clone()).sum();
                if !class_sum.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::comp;
    use crate::descent::pairing;
    use crate::endo::{kbar, k_full, qs_star_distribution, DEFAULT_PERM_CAP};

    fn example_character() -> Character {
        let values: BTreeMap<Composition, Rational> = [
            (comp(&[1]), Rational::int(2)),
            (comp(&[2]), Rational::new(1, 2)),
            (comp(&[3]), Rational::int(2)),
            (comp(&[1, 2]), Rational::int(-1)),
        ]
        .into_iter()
        .collect();
        Character::u_assignment(values).unwrap()
    }

    #[test]
    fn spectrum_examples() {
        // normalized eigenvalues of the constructed example at n = 3
        let spec = spectrum(&example_character(), 3).unwrap();
        let lambda_cubed = Rational::int(8);
        let mut normalized: Vec<Rational> = spec
            .multiset()
            .into_iter()
            .map(|l| &l / &lambda_cubed)
            .collect();
        normalized.sort();
        assert_eq!(
            normalized,
            vec![
                Rational::new(1, 8),
                Rational::new(1, 8),
                Rational::new(1, 4),
                Rational::int(1)
            ]
        );

        // convolution powers: a^(length)
        let psi3 = Character::convolution_power(3).unwrap();
        let spec = spectrum(&psi3, 4).unwrap();
        for (alpha, l) in spec.eigenvalues() {
            assert_eq!(l, &Rational::int(3).pow(alpha.length() as i64));
        }

        // vartheta: product of 1 - (1-r)^(a_i)
        let r = Rational::int(3);
        let vt = Character::vartheta(r.clone());
        let spec = spectrum(&vt, 5).unwrap();
        for (alpha, l) in spec.eigenvalues() {
            let mut expected = Rational::one();
            for &p in alpha.parts() {
                expected *= &(Rational::one() - (Rational::one() - r.clone()).pow(p as i64));
            }
            assert_eq!(l, &expected);
        }
    }

    #[test]
    fn spectrum_agrees_with_charpoly() {
        for char in [
            Character::theta(),
            Character::convolution_power(2).unwrap(),
            Character::vartheta(Rational::int(3)),
            Character::evaluation(vec![Rational::new(1, 2), Rational::new(1, 2)]),
            example_character(),
        ] {
            for n in 0..=5 {
                assert!(spectrum_matches_charpoly(&char, n).unwrap(), "{} at {n}", char.label());
            }
        }
    }

    #[test]
    fn evaluation_spectrum_is_power_sums() {
        // eigenvalues of the evaluation character are power sums at the
        // point, one per composition rearrangement of each partition
        let rs = vec![Rational::new(1, 2), Rational::new(1, 3)];
        let char = Character::evaluation(rs.clone());
        let spec = spectrum(&char, 4).unwrap();
        for (alpha, l) in spec.eigenvalues() {
            let mut expected = Rational::one();
            for &p in alpha.parts() {
                let pm: Rational = rs.iter().map(|r| r.pow(p as i64)).sum();
                expected *= &pm;
            }
            assert_eq!(l, &expected);
        }
    }

    #[test]
    fn z_vectors_small() {
        // Z_1 = X_1 for any admissible character
        let z1 = z_vector(&example_character(), 1).unwrap();
        assert_eq!(z1.element.x_coeffs().unwrap(), DElement::x_n(1).x_coeffs().unwrap());

        // Z_2 = X_2 - (1/2) X_11, independent of the character
        for char in [
            example_character(),
            Character::convolution_power(2).unwrap(),
            Character::vartheta(Rational::int(3)),
        ] {
            let z2 = z_vector(&char, 2).unwrap();
            let c = z2.element.x_coeffs().unwrap();
            assert_eq!(c[&comp(&[2])], Rational::one());
            assert_eq!(c[&comp(&[1, 1])], Rational::new(-1, 2));
        }

        // generic Z_3 with u3 - u1 u2 = 1: X_3 - X_12 + 0 X_21 + 1/3 X_111
        let z3 = z_vector(&example_character(), 3).unwrap();
        let c = z3.element.x_coeffs().unwrap();
        assert_eq!(c[&comp(&[3])], Rational::one());
        assert_eq!(c[&comp(&[1, 2])], Rational::int(-1));
        assert_eq!(c.get(&comp(&[2, 1])), None);
        assert_eq!(c[&comp(&[1, 1, 1])], Rational::new(1, 3));
    }

    #[test]
    fn z_vector_errors() {
        // theta has lambda_2 = 0
        assert!(matches!(
            z_vector(&Character::theta(), 2),
            Err(Error::ZeroEigenvalue(2))
        ));
        // u1 = 1 makes lambda_2 = lambda_11 when u2 = 1
        let collide = Character::u_assignment(
            [(comp(&[1]), Rational::one()), (comp(&[2]), Rational::one())]
                .into_iter()
                .collect(),
        )
        .unwrap();
        assert!(matches!(
            z_vector(&collide, 2),
            Err(Error::EigenvalueCollision { m: 2, .. })
        ));
    }

    #[test]
    fn eigen_equation_via_group_product() {
        let psi2 = Character::convolution_power(2).unwrap();
        for n in 1..=5 {
            for alpha in compositions(n) {
                assert!(verify_eigen(&psi2, &alpha, 8).unwrap(), "{alpha}");
            }
        }
        // theta at alpha = (3): lambda = 2
        assert!(verify_eigen(&Character::theta(), &comp(&[3]), 8).unwrap());
        // grade one is trivially an eigenvector
        assert!(verify_eigen(&example_character(), &comp(&[1]), 8).unwrap());
    }

    #[test]
    fn primitivity() {
        let z2 = z_vector(&example_character(), 2).unwrap();
        assert!(is_primitive(&z2.element).unwrap());
        assert!(is_primitive(&DElement::x_n(1)).unwrap());
        assert!(!is_primitive(&DElement::x_of(comp(&[1, 1]))).unwrap());

        for char in [
            Character::convolution_power(3).unwrap(),
            Character::vartheta(Rational::int(3)),
            example_character(),
        ] {
            for m in 1..=5 {
                if char.value(&comp(&[m])).unwrap().is_zero() {
                    continue;
                }
                let z = z_vector(&char, m).unwrap();
                assert!(is_primitive(&z.element).unwrap(), "{} Z_{m}", char.label());
            }
        }
    }

    #[test]
    fn diagonalizability() {
        // theta is diagonalizable with Fibonacci rank
        fn fib(n: usize) -> usize {
            // f_0 = f_1 = f_2 = 1
            let (mut a, mut b) = (1usize, 1usize);
            for _ in 2..=n {
                let c = a + b;
                a = b;
                b = c;
            }
            if n <= 1 { 1 } else { a }
        }
        let theta = Character::theta();
        for n in 1..=6 {
            let d = diagonalizable(&theta, n).unwrap();
            assert!(d.diagonalizable, "n = {n}");
            assert_eq!(d.rank, fib(n), "rank at n = {n}");
            assert_eq!(d.eigenbasis.len() + d.kernel_basis.len(), compositions(n).len());
        }

        // generic vartheta
        for r in [Rational::int(3), Rational::new(1, 2), Rational::int(-1)] {
            let vt = Character::vartheta(r.clone());
            for n in 1..=5 {
                let d = diagonalizable(&vt, n).unwrap();
                assert!(d.diagonalizable, "r = {r}, n = {n}");
                assert_eq!(d.rank, compositions(n).len());
            }
        }

        // lambda_1 = 0, lambda_2 = 1: rank 1 equals the nonzero count
        let char = Character::u_assignment(
            [(comp(&[2]), Rational::one())].into_iter().collect(),
        )
        .unwrap();
        let d = diagonalizable(&char, 2).unwrap();
        assert!(d.diagonalizable);
        assert_eq!(d.rank, 1);
        assert_eq!(d.nonzero_eigenvalues, 1);
        assert_eq!(d.eigenbasis.len(), 1);
        assert_eq!(d.kernel_basis.len(), 1);

        // an engineered rank violation: lambda_2 = lambda_11 = 1 collides
        let collide = Character::u_assignment(
            [(comp(&[1]), Rational::one()), (comp(&[2]), Rational::one())]
                .into_iter()
                .collect(),
        )
        .unwrap();
        let d = diagonalizable(&collide, 2).unwrap();
        assert!(!d.diagonalizable);
        assert!(matches!(d.obstruction, Some(DiagObstruction::EigenvalueCollision { m: 2, .. })));
    }

    #[test]
    fn kernel_vectors_are_killed() {
        let theta = Character::theta();
        for n in 2..=5 {
            let d = diagonalizable(&theta, n).unwrap();
            for v in &d.kernel_basis {
                let image = theta.apply(v).unwrap();
                assert!(image.is_zero());
            }
        }
    }

    #[test]
    fn shuffle_z_matches_recursion() {
        for n in 1..=6 {
            let closed = shuffle_z(n);
            for a in [2usize, 3] {
                let generic = z_vector(&Character::convolution_power(a).unwrap(), n).unwrap();
                assert_eq!(generic.element.x_coeffs().unwrap(), closed.element.x_coeffs().unwrap());
            }
        }
        let z2 = shuffle_z(2);
        let c = z2.element.x_coeffs().unwrap();
        assert_eq!(c[&comp(&[2])], Rational::one());
        assert_eq!(c[&comp(&[1, 1])], Rational::new(-1, 2));

        let z3 = shuffle_z(3);
        let c = z3.element.x_coeffs().unwrap();
        assert_eq!(c[&comp(&[1, 2])], Rational::new(-1, 2));
        assert_eq!(c[&comp(&[2, 1])], Rational::new(-1, 2));
        assert_eq!(c[&comp(&[1, 1, 1])], Rational::new(1, 3));
    }

    #[test]
    fn p_basis_examples_and_duality() {
        let p = p_basis(2);
        let p11 = &p[&comp(&[1, 1])];
        assert_eq!(p11.coeff(&comp(&[2])), Rational::new(1, 2));
        assert_eq!(p11.coeff(&comp(&[1, 1])), Rational::one());

        // Psi_a(P_beta) = a^(l(beta)) P_beta
        for a in [2usize, 3] {
            let psi = Character::convolution_power(a).unwrap();
            for n in 1..=5 {
                for (beta, pb) in p_basis(n) {
                    let image = psi.apply(&pb).unwrap();
                    let scaled = pb.scale(&Rational::int(a as i64).pow(beta.length() as i64));
                    assert_eq!(image, scaled, "a = {a}, beta = {beta}");
                }
            }
        }

        // <Z_alpha, P_beta> = delta
        for n in 1..=5 {
            let p = p_basis(n);
            for alpha in compositions(n) {
                let z = shuffle_z_alpha(&alpha);
                for (beta, pb) in &p {
                    let expected = if &alpha == beta { Rational::one() } else { Rational::zero() };
                    assert_eq!(pairing(&z.element, pb).unwrap(), expected, "({alpha},{beta})");
                }
            }
        }
    }

    fn shuffle_z_alpha(alpha: &Composition) -> ZVector {
        let mut element: Option<DElement> = None;
        for &p in alpha.parts() {
            let atom = shuffle_z(p).element;
            element = Some(match element {
                None => atom,
                Some(e) => star_product(&e, &atom).unwrap(),
            });
        }
        ZVector { index: alpha.clone(), element: element.unwrap() }
    }

    #[test]
    fn binomial_sum_identity() {
        // sum over compositions (c_1..c_h) of n of (-1)^(h-1)/h prod C(a, c_i)
        // equals a (-1)^(n-1)/n
        for a in 1..=5usize {
            for n in 1..=8usize {
                let mut total = Rational::zero();
                for gamma in compositions(n) {
                    let h = gamma.length() as i64;
                    let sign = if (h - 1) % 2 == 0 { 1 } else { -1 };
                    let mut term = Rational::new(sign, h);
                    for &c in gamma.parts() {
                        term *= &Rational::from_bigint(crate::rational::binomial(a, c));
                    }
                    total += &term;
                }
                let sign = if (n as i64 - 1) % 2 == 0 { 1 } else { -1 };
                let expected = Rational::int(a as i64) * Rational::new(sign, n as i64);
                assert_eq!(total, expected, "a = {a}, n = {n}");
            }
        }
    }

    #[test]
    fn z_triangularity_and_independence() {
        let psi2 = Character::convolution_power(2).unwrap();
        for n in 1..=6 {
            for alpha in compositions(n) {
                let z = z_alpha(&psi2, &alpha).unwrap();
                let x = z.element.x_coeffs().unwrap();
                assert_eq!(x[&alpha], Rational::one(), "leading coefficient at {alpha}");
            }
        }
    }

    #[test]
    fn lifting() {
        let theta = Character::theta();
        let kb = kbar(&theta, 3).unwrap();
        let k = k_full(&theta, 3, DEFAULT_PERM_CAP).unwrap();

        // the all-ones right Perron vector lifts to all-ones
        let ones: BTreeMap<Composition, Rational> = compositions(3)
            .into_iter()
            .map(|c| (c, Rational::one()))
            .collect();
        let (lifted, lambda) = lift_eigenvector(&kb, &k, &ones).unwrap();
        assert_eq!(lambda, Rational::one());
        assert!(lifted.values().all(|v| v == &Rational::one()));

        // an eigenvector at 1/4: kernel of (Kbar - I/4)
        let mat = kb.matrix().sub(&QMatrix::identity(4).scale(&Rational::new(1, 4)));
        let kernel = mat.kernel_basis();
        assert!(!kernel.is_empty());
        let vec: BTreeMap<Composition, Rational> = kb
            .states()
            .iter()
            .cloned()
            .zip(kernel[0].clone())
            .collect();
        let (_, lambda) = lift_eigenvector(&kb, &k, &vec).unwrap();
        assert_eq!(lambda, Rational::new(1, 4));

        // zero vector and non-eigenvectors are rejected
        let zero: BTreeMap<Composition, Rational> = BTreeMap::new();
        assert!(matches!(lift_eigenvector(&kb, &k, &zero), Err(Error::NotAnEigenvector)));
        let mut junk = ones;
        junk.insert(comp(&[2, 1]), Rational::int(7));
        assert!(matches!(lift_eigenvector(&kb, &k, &junk), Err(Error::NotAnEigenvector)));
    }

    #[test]
    fn lifting_a_basis_preserves_independence() {
        let theta = Character::theta();
        let kb = kbar(&theta, 3).unwrap();
        let k = k_full(&theta, 3, DEFAULT_PERM_CAP).unwrap();
        // right eigenvectors at 1 and 1/4
        let ones: BTreeMap<Composition, Rational> = compositions(3)
            .into_iter()
            .map(|c| (c, Rational::one()))
            .collect();
        let mat = kb.matrix().sub(&QMatrix::identity(4).scale(&Rational::new(1, 4)));
        let quarter: BTreeMap<Composition, Rational> = kb
            .states()
            .iter()
            .cloned()
            .zip(mat.kernel_basis().remove(0))
            .collect();
        let lifted = lift_eigenbasis(&kb, &k, &[ones, quarter]).unwrap();
        assert_eq!(lifted.len(), 2);
        assert_eq!(lifted[0].1, Rational::one());
        assert_eq!(lifted[1].1, Rational::new(1, 4));
    }

    #[test]
    fn block_structure() {
        assert!(block_invariance(&Character::theta(), 3, DEFAULT_PERM_CAP).unwrap());
        assert!(block_invariance(&Character::convolution_power(2).unwrap(), 4, DEFAULT_PERM_CAP).unwrap());
        assert!(block_invariance(&Character::theta(), 1, DEFAULT_PERM_CAP).unwrap());
    }

    #[test]
    fn qs_distribution_reaches_spectral_data() {
        // smoke test tying the modules together: stationary law of the
        // lifted walk is uniform when the hypotheses hold
        let char = example_character();
        let k = k_full(&char, 3, DEFAULT_PERM_CAP).unwrap();
        let st = crate::walk::stationary(&k);
        assert!(st.unique);
        let d = st.distribution.unwrap();
        let uniform = Rational::new(1, 6);
        for pi in k.states() {
            assert_eq!(d.prob(pi), uniform);
        }
        let _ = qs_star_distribution(&char, 3).unwrap();
    }
}
