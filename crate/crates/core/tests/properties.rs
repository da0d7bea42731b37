use cdtorus::adjoint::{generated_rank, left_right_commutation_witness, AdjointGeneratorSet};
use cdtorus::cayley_dickson::{
    base_real, cd_double, complex, is_alternative, is_associative, norm_composition_witness,
    octonions, quaternions,
};
use cdtorus::elliptic::j_invariant;
use cdtorus::linalg::{
    kron, nullspace_basis, rank, rank_mod_p, rank_with_policy, DEFAULT_MAX_PRODUCTS, DEFAULT_PRIME,
};
use cdtorus::tensor::{build_b, tensor_product};
use cdtorus::torus::{
    analytic_representation, complex_coordinates, random_commutant_element, splitting_pairs,
    GaussianRational,
};
use cdtorus::{
    AlgebraElement, AlgebraTable, EndomorphismCandidate, ExactMatrix, LatticeBasis2D, RankPolicy,
    TorusModel,
};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn int_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = ExactMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |v| ExactMatrix::from_i64(r, c, &v).unwrap())
    })
}

/// Low-rank integer matrices, so that rank deficiency is actually exercised.
fn low_rank_matrix(n: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=n, 1..=n, 0..=n).prop_flat_map(|(r, c, k)| {
        (
            prop::collection::vec(-2i64..=2, r * k),
            prop::collection::vec(-2i64..=2, k * c),
        )
            .prop_map(move |(a, b)| {
                let a = ExactMatrix::from_i64(r, k.max(1), &if k == 0 { vec![0; r] } else { a })
                    .unwrap();
                let b = ExactMatrix::from_i64(k.max(1), c, &if k == 0 { vec![0; c] } else { b })
                    .unwrap();
                a.checked_mul(&b).unwrap()
            })
    })
}

fn algebra(index: usize) -> AlgebraTable {
    [base_real(), complex(), quaternions(), octonions()][index].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_of_transpose(m in int_matrix(6, 3)) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn rank_of_kron_multiplies(a in low_rank_matrix(4), b in low_rank_matrix(3)) {
        prop_assert_eq!(rank(&kron(&a, &b)), rank(&a) * rank(&b));
    }

    #[test]
    fn nullspace_is_annihilated(m in low_rank_matrix(6)) {
        let null = nullspace_basis(&m);
        prop_assert_eq!(null.len() + rank(&m), m.cols());
        for v in &null {
            prop_assert!(m.apply(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn modular_rank_agrees_with_exact(m in low_rank_matrix(8)) {
        let exact = rank(&m);
        prop_assert_eq!(rank_mod_p(&m, DEFAULT_PRIME).unwrap(), exact);
        let policy = RankPolicy { exact_up_to: 0, ..RankPolicy::default() };
        prop_assert_eq!(rank_with_policy(&m, &policy).unwrap().rank, exact);
    }

    #[test]
    fn norm_is_multiplicative(which in 0usize..4, seed: u64) {
        let a = algebra(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = AlgebraElement::random(&a, &mut rng);
        let y = AlgebraElement::random(&a, &mut rng);
        prop_assert_eq!(x.multiply(&y).unwrap().norm(), x.norm() * y.norm());
    }

    #[test]
    fn conjugation_reverses_products(seed: u64) {
        let h = quaternions();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = AlgebraElement::random(&h, &mut rng);
        let y = AlgebraElement::random(&h, &mut rng);
        prop_assert_eq!(
            x.multiply(&y).unwrap().conjugate(),
            y.conjugate().multiply(&x.conjugate()).unwrap()
        );
    }

    #[test]
    fn closure_rank_ignores_generator_order(seed: u64) {
        let gens = AdjointGeneratorSet::for_algebra(&quaternions());
        let mut shuffled = gens.generators().to_vec();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let policy = RankPolicy::exact();
        let a = generated_rank(&gens, DEFAULT_MAX_PRODUCTS, &policy).unwrap();
        let b = cdtorus::linalg::closure_rank(&shuffled, DEFAULT_MAX_PRODUCTS, &policy).unwrap();
        prop_assert_eq!(a.rank, b.rank);
    }

    #[test]
    fn analytic_representation_matches_coordinates(seed: u64, v in prop::collection::vec(-5i64..=5, 8)) {
        let t = TorusModel::new(build_b(1, 0).unwrap()).unwrap();
        let j = t.complex_structure();
        let m = random_commutant_element(j, &mut ChaCha8Rng::seed_from_u64(seed));
        let tau = analytic_representation(&t, &EndomorphismCandidate::new(m.clone(), j).unwrap()).unwrap();
        let pairs = splitting_pairs(&t).unwrap();
        let v: Vec<BigRational> = v.into_iter().map(|k| BigRational::from_integer(k.into())).collect();
        let image: Vec<GaussianRational> = complex_coordinates(&pairs, &m.apply(&v).unwrap());
        prop_assert_eq!(image, tau.apply(&complex_coordinates(&pairs, &v)));
    }

    #[test]
    fn adjoint_words_stay_integral(seed: u64, len in 1usize..8) {
        let t = TorusModel::new(build_b(0, 1).unwrap()).unwrap();
        let gens = t.adjoint_generators().generators();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut w = ExactMatrix::identity(t.real_dim());
        for _ in 0..len {
            w = w.checked_mul(gens.choose(&mut rng).unwrap()).unwrap();
        }
        prop_assert!(EndomorphismCandidate::new(w, t.complex_structure()).is_ok());
    }

    #[test]
    fn j_is_homothety_invariant(re in -3.0f64..3.0, im in -3.0f64..3.0, x in -0.5f64..0.5, y in 0.9f64..2.0) {
        prop_assume!(re.hypot(im) > 0.1);
        let lattice = LatticeBasis2D::new(Complex64::new(1.0, 0.0), Complex64::new(x, y)).unwrap();
        let base = j_invariant(&lattice, 40).unwrap();
        let scaled = j_invariant(&lattice.scaled(Complex64::new(re, im)).unwrap(), 40).unwrap();
        prop_assert!((base - scaled).norm() <= 1e-9 * base.norm().max(1.0), "{base} vs {scaled}");
    }
}

#[test]
fn doubling_stays_associative_exactly_when_commutative() {
    for a in [base_real(), complex(), quaternions(), octonions()] {
        let expected = is_associative(&a) && a.is_commutative();
        assert_eq!(is_associative(&cd_double(&a)), expected, "{}", a.name());
    }
}

#[test]
fn octonion_square_is_neither_alternative_nor_composition() {
    let oo = tensor_product(&octonions(), &octonions());
    assert!(!is_alternative(&oo));
    let (x, y) = norm_composition_witness(&oo).expect("norm is not multiplicative");
    assert_ne!(x.multiply(&y).unwrap().norm(), x.norm() * y.norm());
    assert!(norm_composition_witness(&octonions()).is_none());
}

#[test]
fn left_and_right_multiplications_commute_only_when_associative() {
    assert_eq!(left_right_commutation_witness(&quaternions()), None);
    assert_eq!(
        left_right_commutation_witness(&build_b(1, 0).unwrap().table().clone()),
        None
    );
    assert!(left_right_commutation_witness(&octonions()).is_some());
}

#[test]
fn j_is_invariant_under_basis_change() {
    let square = LatticeBasis2D::square();
    let (w1, w2) = (square.omega1(), square.omega2());
    for [a, b, c, d] in [
        [1.0, 1.0, 0.0, 1.0],
        [2.0, 1.0, 1.0, 1.0],
        [0.0, -1.0, 1.0, 0.0],
        [3.0, 2.0, 1.0, 1.0],
    ] {
        let changed = LatticeBasis2D::new(w1 * a + w2 * b, w1 * c + w2 * d).unwrap();
        let j = j_invariant(&changed, 400).unwrap();
        assert!((j - 1728.0).norm() / 1728.0 < 1e-6, "{j}");
    }
}

#[test]
fn j_converges_with_truncation() {
    let lattice = LatticeBasis2D::new(Complex64::new(1.0, 0.0), Complex64::new(0.3, 1.1)).unwrap();
    let j = |n| j_invariant(&lattice, n).unwrap();
    let mut prev = f64::INFINITY;
    for n in [25, 50, 100, 200] {
        let diff = (j(n) - j(2 * n)).norm();
        assert!(diff < prev, "N = {n}: {diff} >= {prev}");
        prev = diff;
    }
}

#[test]
fn square_lattice_g2_is_stable() {
    use cdtorus::elliptic::invariants;
    let (g2_100, _) = invariants(&LatticeBasis2D::square(), 100).unwrap();
    let (g2_200, _) = invariants(&LatticeBasis2D::square(), 200).unwrap();
    assert!((g2_100 - g2_200).norm() / g2_200.norm() < 1e-5);
}
