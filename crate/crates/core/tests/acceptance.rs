//! Acceptance suite: one test per release criterion, every comparison
//! exact unless the criterion is explicitly statistical. Each test prints a
//! single PASS line on success (visible with `--nocapture`).

use std::collections::BTreeMap;

use qsw_core::abword::{gamma, gamma_inverse, omega_r, vartheta_f_expansion};
use qsw_core::composition::{compositions, Composition};
use qsw_core::descent::{group_product, star_product, DElement};
use qsw_core::endo::{
    is_bhr_distribution, k_full, kbar, peak_lumped_matrix, phi_matrix, qs_star_distribution,
    right_ideal_check, verify_lumping, Character,
};
use qsw_core::linalg::{poly_from_roots, QMatrix};
use qsw_core::lyndon::{a_matrix, c_column};
use qsw_core::permutation::{descent_classes, permutations, Permutation};
use qsw_core::qsym::Basis;
use qsw_core::rational::{factorial, Rational};
use qsw_core::shuffles::{
    bayer_diaconis, delta_bruteforce, kbar_ashuffle_column, signed_bruteforce, simulate,
    tchebyshev_column, RngStream, ShuffleModel,
};
use qsw_core::spectral::{
    diagonalizable, is_primitive, p_basis, shuffle_z, spectrum, z_alpha, z_vector,
};
use qsw_core::walk::stationary;

fn comp(parts: &[usize]) -> Composition {
    Composition::new(parts.to_vec()).unwrap()
}

fn rat(s: &str) -> Rational {
    s.parse().unwrap()
}

fn example_character() -> Character {
    Character::u_assignment(
        [
            (comp(&[1]), Rational::int(2)),
            (comp(&[2]), rat("1/2")),
            (comp(&[3]), Rational::int(2)),
            (comp(&[1, 2]), Rational::int(-1)),
        ]
        .into_iter()
        .collect(),
    )
    .unwrap()
}

/// The five walk-driving characters exercised across criteria 4-6.
fn walk_characters() -> Vec<Character> {
    vec![
        Character::theta(),
        Character::convolution_power(2).unwrap(),
        Character::convolution_power(3).unwrap(),
        Character::vartheta(Rational::int(3)),
        Character::evaluation(vec![rat("1/2"), rat("1/2")]),
    ]
}

#[test]
fn criterion_01_theta_walk_table() {
    let kb = kbar(&Character::theta(), 3).unwrap();
    let expected: [(&[usize], [&str; 4]); 4] = [
        (&[3], ["1/4", "1/4", "1/4", "1/4"]),
        (&[1, 2], ["1/4", "1/4", "1/4", "1/4"]),
        (&[2, 1], ["0", "1/2", "1/2", "0"]),
        (&[1, 1, 1], ["1/4", "1/4", "1/4", "1/4"]),
    ];
    let order = compositions(3);
    for (row, values) in expected {
        let from = comp(row);
        for (to, v) in order.iter().zip(values) {
            assert_eq!(kb.entry(&from, to), &rat(v), "entry ({from}, {to})");
        }
    }
    println!("criterion 01 (theta walk 4x4 table, 16 exact entries): PASS");
}

#[test]
fn criterion_02_universal_matrices() {
    let a1 = a_matrix(1).unwrap();
    assert_eq!(a1.entry(&comp(&[1]), &comp(&[1])).to_string(), "u1");

    let a2 = a_matrix(2).unwrap();
    let rows2: [(&[usize], [&str; 2]); 2] = [
        (&[2], ["u2", "0"]),
        (&[1, 1], ["1/2*u1^2 - 1/2*u2", "u1^2"]),
    ];
    let order2 = compositions(2);
    for (row, values) in rows2 {
        for (col, v) in order2.iter().zip(values) {
            assert_eq!(a2.entry(&comp(row), col).to_string(), v);
        }
    }

    let a3 = a_matrix(3).unwrap();
    let rows3: [(&[usize], [&str; 4]); 4] = [
        (&[3], ["u3", "0", "0", "0"]),
        (&[1, 2], ["u12", "u1*u2", "0", "0"]),
        (&[2, 1], ["u1*u2 - u12 - u3", "0", "u1*u2", "0"]),
        (
            &[1, 1, 1],
            [
                "1/6*u1^3 - 1/2*u1*u2 + 1/3*u3",
                "1/2*u1^3 - 1/2*u1*u2",
                "1/2*u1^3 - 1/2*u1*u2",
                "u1^3",
            ],
        ),
    ];
    let order3 = compositions(3);
    for (row, values) in rows3 {
        for (col, v) in order3.iter().zip(values) {
            assert_eq!(a3.entry(&comp(row), col).to_string(), v, "A_3({row:?}, {col})");
        }
    }
    println!("criterion 02 (universal matrices A_1, A_2, A_3 entry-for-entry): PASS");
}

#[test]
fn criterion_03_constructed_endomorphism_end_to_end() {
    // the four column polynomials
    let c = c_column(3).unwrap();
    assert_eq!(c[&comp(&[3])].to_string(), "1/6*u1^3 + 1/2*u1*u2 + 1/3*u3");
    assert_eq!(c[&comp(&[1, 2])].to_string(), "1/6*u1^3 - 1/2*u1*u2 + u12 + 1/3*u3");
    assert_eq!(c[&comp(&[2, 1])].to_string(), "1/6*u1^3 + 1/2*u1*u2 - u12 - 2/3*u3");
    assert_eq!(c[&comp(&[1, 1, 1])].to_string(), "1/6*u1^3 - 1/2*u1*u2 + 1/3*u3");

    // specialization
    let char = example_character();
    let expected_c = [("3", "5/2"), ("1,2", "1/2"), ("2,1", "3/2"), ("1,1,1", "3/2")];
    for (alpha, v) in expected_c {
        let alpha: Composition = alpha.parse().unwrap();
        assert_eq!(char.c_value(&alpha).unwrap(), rat(v), "c at {alpha}");
    }

    // the QS*-distribution on the six permutations
    let dist = qs_star_distribution(&char, 3).unwrap();
    let expected_probs = [
        (vec![1, 2, 3], "5/16"),
        (vec![2, 1, 3], "1/16"),
        (vec![3, 1, 2], "1/16"),
        (vec![1, 3, 2], "3/16"),
        (vec![2, 3, 1], "3/16"),
        (vec![3, 2, 1], "3/16"),
    ];
    for (pi, p) in expected_probs {
        let pi = Permutation::new(pi).unwrap();
        assert_eq!(dist.prob(&pi), rat(p), "prob of {pi}");
    }

    // normalized eigenvalues 1, 1/4, 1/8, 1/8
    let spec = spectrum(&char, 3).unwrap();
    let lambda3 = char.lambda().unwrap().pow(3);
    let mut normalized: Vec<Rational> =
        spec.multiset().into_iter().map(|l| &l / &lambda3).collect();
    normalized.sort();
    assert_eq!(normalized, vec![rat("1/8"), rat("1/8"), rat("1/4"), rat("1")]);

    // X-basis expansion 2 X_3 - X_12 + 3/2 X_111, hence not of BHR type
    let (bhr, x) = is_bhr_distribution(&char, 3).unwrap();
    assert!(!bhr);
    let coeffs = x.x_coeffs().unwrap();
    assert_eq!(
        coeffs,
        [
            (comp(&[3]), Rational::int(2)),
            (comp(&[1, 2]), Rational::int(-1)),
            (comp(&[1, 1, 1]), rat("3/2")),
        ]
        .into_iter()
        .collect()
    );
    println!("criterion 03 (constructed endomorphism end-to-end): PASS");
}

#[test]
fn criterion_04_lumping() {
    for char in walk_characters() {
        for n in [3usize, 4, 5] {
            let k = k_full(&char, n, 6).unwrap();
            let kb = kbar(&char, n).unwrap();
            assert_eq!(
                verify_lumping(&k, &kb),
                None,
                "lumping failed for {} at n = {n}",
                char.label()
            );
        }
    }
    println!("criterion 04 (lumping for 5 characters at n = 3,4,5): PASS");
}

#[test]
fn criterion_05_stationary_laws() {
    for char in walk_characters() {
        for n in [3usize, 4, 5] {
            let classes = descent_classes(n);
            let order = factorial(n);

            let kb = kbar(&char, n).unwrap();
            let st = stationary(&kb);
            assert!(st.unique, "{} at n = {n}", char.label());
            let d = st.distribution.unwrap();
            for (alpha, members) in &classes {
                let expected = &Rational::int(members.len() as i64)
                    / &Rational::from_bigint(order.clone());
                assert_eq!(d.prob(alpha), expected, "{} at {alpha}", char.label());
            }

            let k = k_full(&char, n, 6).unwrap();
            let st = stationary(&k);
            assert_eq!(st.kernel_dim, 1, "{} at n = {n}", char.label());
            let d = st.distribution.unwrap();
            let uniform = Rational::from_bigint(order).recip().unwrap();
            for pi in k.states() {
                assert_eq!(d.prob(pi), uniform);
            }
        }
    }

    // the universal character fixes everything: uniqueness fails
    let kb = kbar(&Character::universal(), 4).unwrap();
    let st = stationary(&kb);
    assert!(!st.unique);
    assert_eq!(st.kernel_dim, 8);
    println!("criterion 05 (stationary laws and uniqueness): PASS");
}

#[test]
fn criterion_06_spectral_suite() {
    let mut chars = walk_characters();
    chars.push(example_character());
    for char in &chars {
        for n in 0..=5usize {
            // eigenvalue multiset equals the characteristic polynomial roots
            let spec = spectrum(char, n).unwrap();
            let roots: Vec<Rational> = spec.eigenvalues().iter().map(|(_, l)| l.clone()).collect();
            let charpoly = phi_matrix(char, n, Basis::M).unwrap().matrix().charpoly();
            assert_eq!(charpoly, poly_from_roots(&roots), "{} at n = {n}", char.label());

            if n == 0 {
                continue;
            }

            // eigen-equations, primitivity, and independence over the
            // nonzero part of the spectrum
            let mut vectors: Vec<Vec<Rational>> = Vec::new();
            let order = compositions(n);
            for alpha in &order {
                if char.lambda_of(alpha).unwrap().is_zero() {
                    continue;
                }
                let z = z_alpha(char, alpha).unwrap();
                let x_phi = char.x_component(n).unwrap();
                let lhs = group_product(&x_phi, &z.element, 8).unwrap();
                let rhs = z.element.scale(&char.lambda_of(alpha).unwrap());
                assert_eq!(
                    lhs.x_coeffs().unwrap(),
                    rhs.x_coeffs().unwrap(),
                    "{} eigen-equation at {alpha}",
                    char.label()
                );
                let coeffs = z.element.x_coeffs().unwrap();
                vectors.push(
                    order
                        .iter()
                        .map(|b| coeffs.get(b).cloned().unwrap_or_else(Rational::zero))
                        .collect(),
                );
            }
            if !vectors.is_empty() {
                let count = vectors.len();
                assert_eq!(QMatrix::new(vectors).rank(), count, "{} at n = {n}", char.label());
            }

            if !char.value(&comp(&[n])).unwrap().is_zero() {
                let z = z_vector(char, n).unwrap();
                assert!(is_primitive(&z.element).unwrap(), "{} Z_{n}", char.label());
            }
        }
    }

    // theta's rank is the Fibonacci number f_n (f_0 = f_1 = f_2 = 1)
    let theta = Character::theta();
    let fib = [1usize, 1, 1, 2, 3, 5, 8, 13, 21];
    for n in 1..=8usize {
        let d = diagonalizable(&theta, n).unwrap();
        assert!(d.diagonalizable, "theta at n = {n}");
        assert_eq!(d.rank, fib[n], "theta rank at n = {n}");
    }
    println!("criterion 06 (spectral suite): PASS");
}

#[test]
fn criterion_07_ashuffle_closed_forms() {
    // binomial column formula against the full matrix
    for n in 1..=7usize {
        for a in 1..=4usize {
            let col = kbar_ashuffle_column(n, a);
            let kb = kbar(&Character::convolution_power(a).unwrap(), n).unwrap();
            let target = Composition::single(n);
            for (beta, v) in col {
                assert_eq!(&v, kb.entry(&beta, &target), "n={n}, a={a}, beta={beta}");
            }
        }
    }

    // Bayer-Diaconis masses sum to one over S_n
    for n in 1..=7usize {
        for a in 1..=4usize {
            let mut total = Rational::zero();
            for pi in permutations(n) {
                total += &bayer_diaconis(n, a, pi.descent_count()).unwrap();
            }
            assert_eq!(total, Rational::one(), "n={n}, a={a}");
        }
    }

    // two riffles equal one 4-shuffle, through the convolution identity
    for n in 1..=5usize {
        let two = kbar(&Character::convolution_power(2).unwrap(), n).unwrap().pow(2);
        let four = kbar(&Character::convolution_power(4).unwrap(), n).unwrap();
        let target = Composition::single(n);
        for alpha in compositions(n) {
            assert_eq!(two.entry(&alpha, &target), four.entry(&alpha, &target));
        }
        let t = tchebyshev_column(n, 2).unwrap();
        for (beta, v) in t {
            assert_eq!(&v, four.entry(&Composition::single(n), &beta));
        }
    }

    // the closed-form eigenvector equals the recursion for both a = 2, 3
    for n in 1..=6usize {
        let closed = shuffle_z(n);
        let expected: BTreeMap<Composition, Rational> = compositions(n)
            .into_iter()
            .map(|beta| {
                let l = beta.length() as i64;
                let sign = if (l - 1) % 2 == 0 { 1 } else { -1 };
                (beta, Rational::new(sign, l))
            })
            .collect();
        assert_eq!(closed.element.x_coeffs().unwrap(), expected);
        for a in [2usize, 3] {
            let rec = z_vector(&Character::convolution_power(a).unwrap(), n).unwrap();
            assert_eq!(rec.element.x_coeffs().unwrap(), expected, "a = {a}, n = {n}");
        }
    }

    // eigen-relation and duality of the dual basis
    for n in 1..=5usize {
        let basis = p_basis(n);
        for a in [2usize, 3] {
            let psi = Character::convolution_power(a).unwrap();
            for (beta, pb) in &basis {
                let image = psi.apply(pb).unwrap();
                let scale = Rational::int(a as i64).pow(beta.length() as i64);
                assert_eq!(image, pb.scale(&scale), "a={a}, beta={beta}");
            }
        }
        for alpha in compositions(n) {
            let mut z: Option<DElement> = None;
            for &p in alpha.parts() {
                let atom = shuffle_z(p).element;
                z = Some(match z {
                    None => atom,
                    Some(e) => star_product(&e, &atom).unwrap(),
                });
            }
            let z = z.unwrap();
            for (beta, pb) in &basis {
                let expected = if &alpha == beta { Rational::one() } else { Rational::zero() };
                assert_eq!(
                    qsw_core::descent::pairing(&z, pb).unwrap(),
                    expected,
                    "({alpha}, {beta})"
                );
            }
        }
    }
    println!("criterion 07 (a-shuffle closed forms): PASS");
}

#[test]
fn criterion_08_vartheta_suite() {
    // vartheta at r = 2 is the peak endomorphism, matrix by matrix
    let theta = Character::theta();
    let v2 = Character::vartheta(Rational::int(2));
    for n in 0..=5usize {
        for basis in [Basis::M, Basis::F] {
            assert_eq!(
                phi_matrix(&v2, n, basis).unwrap().matrix(),
                phi_matrix(&theta, n, basis).unwrap().matrix(),
                "n = {n}"
            );
        }
    }

    // eigenvalues and diagonalizability for r in {3, 1/2, -1}
    for r in [rat("3"), rat("1/2"), rat("-1")] {
        let char = Character::vartheta(r.clone());
        for n in 1..=5usize {
            let spec = spectrum(&char, n).unwrap();
            for (alpha, l) in spec.eigenvalues() {
                let mut expected = Rational::one();
                for &p in alpha.parts() {
                    expected *= &(&Rational::one() - &(&Rational::one() - &r).pow(p as i64));
                }
                assert_eq!(l, &expected, "r = {r}, alpha = {alpha}");
            }
            let d = diagonalizable(&char, n).unwrap();
            assert!(d.diagonalizable, "r = {r}, n = {n}");
        }
    }

    // (X^vartheta_r)_n equals the hook series r sum (r-1)^k Y_(1^k, n-k)
    for r in [rat("2"), rat("3"), rat("1/2"), rat("-1")] {
        let char = Character::vartheta(r.clone());
        for n in 1..=6usize {
            let mut coeffs = BTreeMap::new();
            for k in 0..n {
                let c = &r * &(&r - &Rational::one()).pow(k as i64);
                if !c.is_zero() {
                    coeffs.insert(Composition::hook(k, n - k), c);
                }
            }
            let eta = DElement::from_y_coeffs(n, coeffs).unwrap();
            assert_eq!(
                char.x_component(n).unwrap().y_coeffs().unwrap(),
                eta.y_coeffs().unwrap(),
                "r = {r}, n = {n}"
            );
        }
    }

    // closed-form rows and word-conjugation rows equal matrix rows
    for r in [rat("2"), rat("3"), rat("1/2"), rat("-1")] {
        let q = &Rational::one() - &r;
        let char = Character::vartheta(r.clone());
        for n in 1..=5usize {
            let f = phi_matrix(&char, n, Basis::F).unwrap();
            for beta in compositions(n) {
                assert_eq!(
                    vartheta_f_expansion(&beta, &q).unwrap(),
                    f.row(&beta),
                    "closed form at r = {r}, beta = {beta}"
                );
                let word = gamma_inverse(&beta).unwrap();
                let mut image = qsw_core::qsym::QSymElement::zero(n, Basis::F);
                for (w, coeff) in omega_r(&word, &r) {
                    image = image.add(&gamma(&w).scale(&(&r * &coeff))).unwrap();
                }
                assert_eq!(image, f.row(&beta), "conjugation at r = {r}, beta = {beta}");
            }
        }
    }
    println!("criterion 08 (signed-shuffle family suite): PASS");
}

#[test]
fn criterion_09_bruteforce_oracles() {
    for r in [rat("2"), rat("3")] {
        for n in 1..=5usize {
            let kb = kbar(&Character::vartheta(r.clone()), n).unwrap();
            for sigma in permutations(n) {
                let row = signed_bruteforce(&sigma, &r).unwrap();
                let from = sigma.descent_composition();
                for (beta, v) in row {
                    assert_eq!(&v, kb.entry(&from, &beta), "r={r}, n={n}, sigma={sigma}");
                }
            }
        }
    }
    for a in 1..=3usize {
        let rs = vec![Rational::new(1, a as i64); a];
        for n in 1..=4usize {
            let kb = kbar(&Character::convolution_power(a).unwrap(), n).unwrap();
            for sigma in permutations(n) {
                let row = delta_bruteforce(&sigma, &rs).unwrap();
                let from = sigma.descent_composition();
                for (beta, v) in row {
                    assert_eq!(&v, kb.entry(&from, &beta), "a={a}, n={n}, sigma={sigma}");
                }
            }
        }
    }
    println!("criterion 09 (sign and digit brute-force oracles): PASS");
}

#[test]
fn criterion_10_monte_carlo() {
    let trials = 1_000_000u64;
    let rng = RngStream::new(42);

    let check = |result: &qsw_core::shuffles::SimulationResult,
                 exact: &BTreeMap<Composition, Rational>,
                 label: &str| {
        for (beta, p) in exact {
            let p = p.to_f64();
            let freq = result.composition_frequency(beta);
            let se = (p * (1.0 - p) / trials as f64).sqrt();
            if se == 0.0 {
                assert_eq!(freq, 0.0, "{label}: impossible cell {beta} was hit");
            } else {
                assert!(
                    (freq - p).abs() <= 4.0 * se,
                    "{label}: cell {beta} off by {} standard errors",
                    (freq - p).abs() / se
                );
            }
        }
    };

    // riffle shuffle of five cards
    let kb = kbar(&Character::convolution_power(2).unwrap(), 5).unwrap();
    let exact: BTreeMap<Composition, Rational> = kb
        .states()
        .iter()
        .map(|b| (b.clone(), kb.entry(&comp(&[5]), b).clone()))
        .collect();
    let result = simulate(
        &ShuffleModel::AShuffle { a: 2 },
        &Permutation::identity(5),
        1,
        trials,
        &rng,
    )
    .unwrap();
    check(&result, &exact, "ashuffle(2) n=5");

    // face-up face-down shuffle of four cards
    let kb = kbar(&Character::theta(), 4).unwrap();
    let exact: BTreeMap<Composition, Rational> = kb
        .states()
        .iter()
        .map(|b| (b.clone(), kb.entry(&comp(&[4]), b).clone()))
        .collect();
    let result = simulate(
        &ShuffleModel::FaceUpFaceDown,
        &Permutation::identity(4),
        1,
        trials,
        &rng.derive(1),
    )
    .unwrap();
    check(&result, &exact, "face-up face-down n=4");
    println!("criterion 10 (Monte Carlo at 1e6 trials within 4 standard errors): PASS");
}

#[test]
fn criterion_11_peak_lumping() {
    for n in [3usize, 4, 5] {
        // peak_lumped_matrix itself cross-checks the operator route against
        // lumping the composition walk
        let (khat, partition) = peak_lumped_matrix(n).unwrap();
        assert!(khat.matrix().is_row_stochastic());
        assert!(partition.classes().len() >= 2);
    }
    let (khat, _) = peak_lumped_matrix(3).unwrap();
    assert_eq!(khat.entry(&vec![], &vec![]), &rat("3/4"));
    assert_eq!(khat.entry(&vec![], &vec![2]), &rat("1/4"));
    assert_eq!(khat.entry(&vec![2], &vec![]), &rat("1/2"));
    assert_eq!(khat.entry(&vec![2], &vec![2]), &rat("1/2"));

    for n in 1..=5usize {
        assert!(right_ideal_check(n, 8).unwrap(), "right ideal at n = {n}");
    }
    println!("criterion 11 (peak-set lumping and right ideal): PASS");
}
