use proptest::prelude::*;

use rickart::harness::RingUniverse;
use rickart::order_structure::{phi, psi, segment_join, segment_meet};
use rickart::orders::{equivalence_report, star_le};
use rickart::projections::{column_space_basis, projection_onto, proj_join, proj_le, proj_meet};
use rickart::scalars::{Fp, GaussianRational};
use rickart::star_ring::{pinv, primes, rank_factorize};
use rickart::{FieldDescriptor, Matrix, RingDescriptor, Scalar, Side};

const QI: FieldDescriptor = FieldDescriptor::GaussianRationals;

fn qi_scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4)
        .prop_map(|(a, b, c, d)| Scalar::Qi(GaussianRational::from_ints((a, b), (c, d))))
}

fn fp_scalar(p: u64) -> impl Strategy<Value = Scalar> {
    (0..p).prop_map(move |v| Scalar::Fp(Fp::new(v, p)))
}

/// Sparse-ish entries so that rank deficiency is common.
fn qi_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    let entry = prop_oneof![1 => Just(QI.zero()), 2 => qi_scalar()];
    proptest::collection::vec(entry, rows * cols).prop_map(move |e| Matrix::new(QI, rows, cols, e).unwrap())
}

fn square_qi() -> impl Strategy<Value = Matrix> {
    (1usize..=3).prop_flat_map(|n| qi_matrix(n, n))
}

fn rectangular_qi() -> impl Strategy<Value = Matrix> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| qi_matrix(r, c))
}

fn square_pair() -> impl Strategy<Value = (Matrix, Matrix)> {
    (1usize..=3).prop_flat_map(|n| (qi_matrix(n, n), qi_matrix(n, n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gaussian_field_axioms(a in qi_scalar(), b in qi_scalar(), c in qi_scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn prime_field_axioms(p in prop::sample::select(vec![2u64, 3, 7, 11, 2_147_483_647]), seed in any::<u64>()) {
        let pick = |k: u64| Scalar::Fp(Fp::new(seed.rotate_left(k as u32 * 13) % p, p));
        let (a, b, c) = (pick(1), pick(2), pick(3));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a + &(-&a)).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn involution_is_an_anti_automorphism(a in qi_scalar(), b in qi_scalar(), f in fp_scalar(7)) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!(f.conj(), f);
    }

    #[test]
    fn scalars_round_trip_through_text(a in qi_scalar()) {
        prop_assert_eq!(QI.parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn star_reverses_products((a, b) in square_pair()) {
        prop_assert_eq!((&a * &b).star(), &b.star() * &a.star());
        prop_assert_eq!(a.star().star(), a.clone());
        prop_assert_eq!(a.rank(), a.star().rank());
    }

    #[test]
    fn rank_factorization_reconstructs(a in rectangular_qi()) {
        let (f, g) = rank_factorize(&a);
        prop_assert_eq!(f.cols(), a.rank());
        prop_assert_eq!(g.rows(), a.rank());
        if a.rank() > 0 {
            prop_assert_eq!(&f * &g, a);
        }
    }

    #[test]
    fn penrose_identities_on_rectangular_matrices(a in rectangular_qi()) {
        let x = pinv(&a).unwrap();
        prop_assert_eq!(x.shape(), (a.cols(), a.rows()));
        prop_assert_eq!(&(&a * &x) * &a, a.clone());
        prop_assert_eq!(&(&x * &a) * &x, x.clone());
        prop_assert!((&a * &x).is_self_adjoint());
        prop_assert!((&x * &a).is_self_adjoint());
    }

    #[test]
    fn primes_are_range_projections(a in square_qi()) {
        let q = primes(&a).unwrap();
        prop_assert_eq!(&q.left_double, &projection_onto(&column_space_basis(&a)).unwrap());
        prop_assert_eq!(&q.right_double, &projection_onto(&column_space_basis(&a.star())).unwrap());
        prop_assert!((q.left_prime.matrix() * &a).is_zero());
        prop_assert!((&a * q.right_prime.matrix()).is_zero());
    }

    #[test]
    fn projection_lattice_bounds((a, b) in square_pair()) {
        let e = projection_onto(&column_space_basis(&a)).unwrap();
        let f = projection_onto(&column_space_basis(&b)).unwrap();
        let m = proj_meet(&e, &f).unwrap();
        let j = proj_join(&e, &f).unwrap();
        prop_assert!(proj_le(&m, &e).unwrap() && proj_le(&m, &f).unwrap());
        prop_assert!(proj_le(&e, &j).unwrap() && proj_le(&f, &j).unwrap());
        prop_assert_eq!(j.matrix().rank() + m.matrix().rank(), e.matrix().rank() + f.matrix().rank());
    }

    #[test]
    fn formulations_agree_on_generic_and_comparable_pairs((a, b) in square_pair()) {
        for side in Side::BOTH {
            prop_assert!(equivalence_report(&a, &b, side).unwrap().agreed);
        }
        // b e is below b for every projection e ≤ b″
        let bd = primes(&b).unwrap().right_double;
        let e = projection_onto(&column_space_basis(&(bd.matrix() * &a))).unwrap();
        let below = &b * e.matrix();
        let report = equivalence_report(&below, &b, Side::Right).unwrap();
        prop_assert_eq!(report.verdict(), Some(true));
        prop_assert_eq!(phi(&below).unwrap(), e);
    }

    #[test]
    fn segment_operations_stay_in_the_segment((x, c) in square_pair()) {
        let xd = phi(&x).unwrap();
        let e = projection_onto(&column_space_basis(&(xd.matrix() * &c))).unwrap();
        let f = projection_onto(&column_space_basis(&(xd.matrix() * &c.star()))).unwrap();
        let (a, b) = (psi(&x, &e).unwrap(), psi(&x, &f).unwrap());
        let meet = segment_meet(&x, &a, &b).unwrap();
        let join = segment_join(&x, &a, &b).unwrap();
        for (lo, hi) in [(&meet, &a), (&meet, &b), (&a, &join), (&b, &join), (&join, &x)] {
            prop_assert!(star_le(lo, hi, Side::Right).unwrap());
        }
    }

    #[test]
    fn matrices_round_trip_through_json(a in rectangular_qi(), seed in any::<u64>()) {
        prop_assert_eq!(Matrix::from_json(&a.to_json()).unwrap(), a);
        let u = RingUniverse::sampled(RingDescriptor::fp(7, 2).unwrap(), 1, seed, 3);
        let m = u.random_element(&mut u.rng(0, 0));
        prop_assert_eq!(Matrix::from_json(&m.to_json()).unwrap(), m);
    }
}
