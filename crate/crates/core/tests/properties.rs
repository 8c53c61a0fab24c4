use cycloinv_core::matrix::reduction_matrix;
use cycloinv_core::poly::IntPoly;
use cycloinv_core::scaled::{binomial_element, generic_scaled_inverse, scaled_inverse};
use cycloinv_core::structure::{band_form, high_monomial_form, low_tail_form, residue_subset_sum};
use cycloinv_core::{make_modulus, monomial_reduce, reduce, ring_mul, CycloModulus, RingElement};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

const MODULI: &[u64] = &[
    2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 15, 16, 21, 25, 27, 33, 35, 45, 63,
];
const PQ: &[(u64, u64)] = &[
    (2, 3),
    (2, 5),
    (3, 5),
    (3, 7),
    (5, 7),
    (3, 11),
    (5, 11),
    (7, 11),
];

fn poly(max_len: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-bound..=bound, 0..=max_len)
        .prop_map(|v| IntPoly::new(v.into_iter().map(BigInt::from).collect()))
}

fn modulus() -> impl Strategy<Value = CycloModulus> {
    prop::sample::select(MODULI).prop_map(|m| make_modulus(m).unwrap())
}

fn element(m: &CycloModulus, bound: i64) -> impl Strategy<Value = RingElement> {
    let m = m.clone();
    prop::collection::vec(-bound..=bound, m.phi()).prop_map(move |v| {
        RingElement::from_reduced(&m, v.into_iter().map(BigInt::from).collect()).unwrap()
    })
}

fn sum_abs(p: &IntPoly) -> BigInt {
    p.coeffs().iter().map(|c| c.abs()).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mul_norm_is_bounded(a in poly(12, 50), b in poly(12, 50)) {
        let prod = &a * &b;
        let len = a.coeffs().len().min(b.coeffs().len());
        prop_assert!(prod.max_norm() <= a.max_norm() * b.max_norm() * BigInt::from(len.max(1)));
        prop_assert!(sum_abs(&prod) <= sum_abs(&a) * sum_abs(&b));
    }

    #[test]
    fn exact_div_inverts_mul(a in poly(10, 20), b in poly(6, 20)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn rev_is_an_involution_up_to_low_zeros(a in poly(12, 20)) {
        prop_assume!(!a.is_zero() && !a.coeff(0).is_zero());
        prop_assert_eq!(a.rev().unwrap().rev().unwrap(), a);
    }

    #[test]
    fn inflate_commutes_with_evaluation(a in poly(8, 9), m in 1usize..5, x in -3i64..=3) {
        let x = BigInt::from(x);
        prop_assert_eq!(a.inflate(m).eval(&x), a.eval(&num_traits::pow(x, m)));
    }

    #[test]
    fn content_scales(a in poly(10, 30), c in 1i64..20) {
        prop_assume!(!a.is_zero());
        let c = BigInt::from(c);
        prop_assert_eq!(a.scale(&c).content().unwrap(), a.content().unwrap() * &c);
        prop_assert!(a.div_scalar(&a.content().unwrap()).unwrap().content().unwrap().is_one());
    }

    #[test]
    fn reduction_is_a_ring_homomorphism(
        (m, a, b) in modulus().prop_flat_map(|m| {
            let phi = m.phi();
            (Just(m), poly(2 * phi, 6), poly(2 * phi, 6))
        })
    ) {
        let ra = reduce(&a, &m);
        let rb = reduce(&b, &m);
        prop_assert_eq!(reduce(&(&a * &b), &m), ring_mul(&ra, &rb).unwrap());
        prop_assert_eq!(reduce(&(&a + &b), &m), ra.add(&rb).unwrap());
        prop_assert!(reduce(m.poly(), &m).is_zero());
    }

    #[test]
    fn ring_mul_is_commutative_and_associative(
        (a, b, c) in modulus().prop_flat_map(|m| (element(&m, 5), element(&m, 5), element(&m, 5)))
    ) {
        prop_assert_eq!(ring_mul(&a, &b).unwrap(), ring_mul(&b, &a).unwrap());
        prop_assert_eq!(
            ring_mul(&ring_mul(&a, &b).unwrap(), &c).unwrap(),
            ring_mul(&a, &ring_mul(&b, &c).unwrap()).unwrap()
        );
    }

    #[test]
    fn mul_monomial_matches_ring_mul((m, a, k) in modulus().prop_flat_map(|m| {
        let e = element(&m, 7);
        (Just(m), e, -200i64..200)
    })) {
        prop_assert_eq!(a.mul_monomial(k), ring_mul(&monomial_reduce(k, &m), &a).unwrap());
    }

    #[test]
    fn scaled_inverse_postconditions((m, i, j) in modulus().prop_flat_map(|m| {
        let mm = m.m() as i64;
        (Just(m), 1..mm).prop_flat_map(|(m, i)| (Just(m), Just(i), 0..i))
    })) {
        let inv = scaled_inverse(i, j, &m).unwrap();
        let a = binomial_element(i, j, &m);
        prop_assert!(ring_mul(&a, &inv.u).unwrap().is_constant(&inv.scale));
        if let Some(bound) = inv.bound {
            prop_assert!(inv.norm() <= BigInt::from(bound));
        }
        let g = generic_scaled_inverse(&a).unwrap();
        prop_assert!((&inv.scale % &g.scale).is_zero());
    }

    #[test]
    fn closed_forms_match_reduction((p, q) in prop::sample::select(PQ), k in 0u64..200) {
        let m = make_modulus(p * q).unwrap();
        let phi = m.phi();
        let k = k % q;
        let direct = monomial_reduce((phi as u64 + k) as i64, &m);
        if k < p {
            let form = low_tail_form(k, p, q).unwrap();
            prop_assert!(form.degree().unwrap_or(0) < phi);
            prop_assert_eq!(&direct.to_poly(), &form);
        }
        if k + 1 >= p {
            prop_assert_eq!(&direct.to_poly(), &band_form(k, p, q).unwrap());
        }
        prop_assert_eq!(high_monomial_form(k, p, q).unwrap(), direct);
    }

    #[test]
    fn residue_subsets_stay_ternary(
        (p, q) in prop::sample::select(PQ),
        j in 0u64..50,
        mask in any::<u32>(),
    ) {
        let m = make_modulus(p * q).unwrap();
        let j = j % p;
        let subset: Vec<u64> = (0..q).filter(|i| mask >> i & 1 == 1).collect();
        let s = residue_subset_sum(j, &subset, &m).unwrap();
        prop_assert!(s.max_norm() <= BigInt::one());
    }
}

#[test]
fn monomial_reduce_matches_reduce_for_every_exponent() {
    for &m in MODULI {
        let md = make_modulus(m).unwrap();
        for k in 0..3 * md.m() {
            let direct = reduce(&IntPoly::monomial(BigInt::one(), k), &md);
            assert_eq!(monomial_reduce(k as i64, &md), direct, "M = {m}, k = {k}");
        }
        let r = reduction_matrix(&md);
        for col in 0..md.m() {
            let expected: Vec<i8> = monomial_reduce(col as i64, &md)
                .coeffs()
                .iter()
                .map(|c| i8::try_from(c).unwrap())
                .collect();
            assert_eq!(r.column(col), expected);
        }
    }
}
