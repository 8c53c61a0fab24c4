//! Independent oracles checked against the library: cyclotomic polynomials by
//! iterated division, rational extended Euclid for resultants and inverses,
//! and the published `R_7` / `R_21` matrices.

use cycloinv_core::arith::factorize;
use cycloinv_core::matrix::reduction_matrix;
use cycloinv_core::poly::{resultant_bezout, IntPoly};
use cycloinv_core::scaled::{
    binomial_element, consistent_with_generic, denominator_scale, generic_scaled_inverse,
    scaled_inverse,
};
use cycloinv_core::{make_modulus, reduce};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// `Phi_n = (x^n - 1) / prod_(d | n, d < n) Phi_d`, shape-agnostic.
fn cyclotomic_by_division(n: u64) -> IntPoly {
    let mut acc = IntPoly::xn_minus_one(n as usize);
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        acc = acc.exact_div(&cyclotomic_by_division(d)).unwrap();
    }
    acc
}

#[test]
fn closed_form_cyclotomics_match_division_oracle() {
    for m in 2u64..=130 {
        if factorize(m).len() > 2 {
            assert!(make_modulus(m).is_err());
            continue;
        }
        let md = make_modulus(m).unwrap();
        assert_eq!(md.poly(), &cyclotomic_by_division(m), "M = {m}");
    }
    assert_eq!(
        cyclotomic_by_division(15),
        IntPoly::from_i64s(&[1, -1, 0, 1, -1, 1, 0, -1, 1])
    );
}

#[test]
fn coefficients_of_two_prime_cyclotomics_are_ternary() {
    for m in [21u64, 35, 77, 91, 143] {
        let md = make_modulus(m).unwrap();
        assert_eq!(md.poly().content().unwrap(), BigInt::one());
        assert_eq!(md.poly().max_norm(), BigInt::one());
    }
}

// ---- rational Euclid oracle -------------------------------------------------

type Q = BigRational;

fn trim(mut v: Vec<Q>) -> Vec<Q> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn to_q(p: &IntPoly) -> Vec<Q> {
    p.coeffs()
        .iter()
        .map(|c| Q::from_integer(c.clone()))
        .collect()
}

fn q_divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![], trim(r));
    }
    let mut q = vec![Q::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &b[db];
        for (i, bc) in b.iter().enumerate() {
            r[k + i] -= &c * bc;
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

fn q_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn q_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_else(Q::zero)
                    - b.get(i).cloned().unwrap_or_else(Q::zero)
            })
            .collect(),
    )
}

/// Textbook resultant over Q: `res(A, B) = (-1)^(dA dB) lc(B)^(dA - dR) res(B, R)`.
fn q_resultant(a: &[Q], b: &[Q]) -> Q {
    let (da, db) = (a.len() - 1, b.len() - 1);
    if db == 0 {
        return num_traits::pow(b[0].clone(), da);
    }
    let (_, r) = q_divrem(a, b);
    if r.is_empty() {
        return Q::zero();
    }
    let dr = r.len() - 1;
    let sign = if (da * db) % 2 == 1 {
        -Q::one()
    } else {
        Q::one()
    };
    sign * num_traits::pow(b[db].clone(), da - dr) * q_resultant(b, &r)
}

/// Rational extended Euclid: `s` with `s a = 1 (mod f)`.
fn q_inverse(a: &[Q], f: &[Q]) -> Vec<Q> {
    let (mut r0, mut s0) = (f.to_vec(), vec![]);
    let (mut r1, mut s1) = (a.to_vec(), vec![Q::one()]);
    while r1.len() > 1 {
        let (q, r) = q_divrem(&r0, &r1);
        let s = q_sub(&s0, &q_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    let inv = Q::one() / &r1[0];
    s1.into_iter().map(|c| c * &inv).collect()
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize, bound: i64) -> IntPoly {
    let deg = rng.gen_range(0..=max_deg);
    IntPoly::new(
        (0..=deg)
            .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
            .collect(),
    )
}

#[test]
fn resultant_bezout_matches_rational_euclid() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    while checked < 300 {
        let f = {
            let mut f = random_poly(&mut rng, 7, 5);
            if f.degree().unwrap_or(0) < 1 {
                continue;
            }
            if rng.gen_bool(0.3) {
                // non-monic moduli exercise the pseudo-division scalings
                f = f.scale(&BigInt::from(rng.gen_range(2..5)));
            }
            f
        };
        let a = random_poly(&mut rng, f.degree().unwrap() - 1, 6);
        if a.is_zero() {
            continue;
        }
        let expected_r = q_resultant(&to_q(&a), &to_q(&f));
        let got = resultant_bezout(&a, &f);
        if expected_r.is_zero() {
            assert!(got.is_err(), "a = {a}, f = {f}");
            continue;
        }
        let got = got.unwrap();
        assert_eq!(
            Q::from_integer(got.resultant.clone()),
            expected_r,
            "a = {a}, f = {f}"
        );
        let inv = q_inverse(&to_q(&a), &to_q(&f));
        assert_eq!(got.s_rat.coeffs(), &inv[..], "a = {a}, f = {f}");
        checked += 1;
    }
}

#[test]
fn resultant_of_x_minus_one_against_phi_p_is_p() {
    for p in [3u64, 5, 7, 11, 13] {
        let md = make_modulus(p).unwrap();
        let b = resultant_bezout(&IntPoly::from_i64s(&[-1, 1]), md.poly()).unwrap();
        // res(x - 1, Phi_p) = Phi_p(1) = p
        assert_eq!(b.resultant, BigInt::from(p));
    }
}

#[test]
fn generic_scale_equals_denominator_lcm_for_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for m in [15u64, 16, 21] {
        let md = make_modulus(m).unwrap();
        let mut n = 0;
        while n < 60 {
            let a = reduce(&random_poly(&mut rng, md.phi() - 1, 3), &md);
            if a.is_zero() || a.coeffs().iter().filter(|c| !c.is_zero()).count() < 2 {
                continue;
            }
            let g = generic_scaled_inverse(&a).unwrap();
            assert_eq!(g.scale, denominator_scale(&a).unwrap());
            assert!(a.mul(&g.u).unwrap().is_constant(&g.scale));
            n += 1;
        }
    }
}

#[test]
fn constructive_agrees_with_generic_on_small_moduli() {
    for m in [4u64, 9, 25, 6, 12, 15, 21, 35] {
        let md = make_modulus(m).unwrap();
        for i in 1..m as i64 {
            for j in 0..i {
                let c = scaled_inverse(i, j, &md).unwrap();
                let g = generic_scaled_inverse(&binomial_element(i, j, &md)).unwrap();
                assert!(consistent_with_generic(&c, &g), "M = {m}, ({i}, {j})");
            }
        }
    }
}

// ---- published matrices -----------------------------------------------------

/// `R_(3*7)` as printed, rows 0..12, blank cells as 0.
const R21: [[i8; 21]; 12] = [
    [
        1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, -1, -1, 0, 0, 0, 0, 1, 1,
    ],
    [
        0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, -1, 0,
    ],
    [
        0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, -1,
    ],
    [
        0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, -1, -1, 0, 0, 0, -1, 0, 1, 1,
    ],
    [
        0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -1, -1, 0,
    ],
    [
        0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -1, -1,
    ],
    [
        0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -1, -1, 0, 0, 0, 0, 0, 1, 0,
    ],
    [
        0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -1, -1, 0, 0, 0, 0, 0, 1,
    ],
    [
        0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 1, 0, -1, 0, 0, 0, -1, -1,
    ],
    [
        0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, -1, 0, 0, 1, 0,
    ],
    [
        0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, -1, 0, 0, 1,
    ],
    [
        0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, -1, -1, -1,
    ],
];

#[test]
fn r21_matches_published_matrix() {
    let r = reduction_matrix(&make_modulus(21).unwrap());
    for (i, row) in R21.iter().enumerate() {
        assert_eq!(r.row(i), &row[..], "row {i}");
    }
}

#[test]
fn r7_matches_published_matrix() {
    let r = reduction_matrix(&make_modulus(7).unwrap());
    for i in 0..6 {
        let mut expected = [0i8; 7];
        expected[i] = 1;
        expected[6] = -1;
        assert_eq!(r.row(i), &expected[..]);
    }
}
