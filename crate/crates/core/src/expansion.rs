//! Expansion factors of monomials: `max ||x^k g|| / ||g||` over nonzero `g`
//! in `Z[x]/Phi_M(x)`.
//!
//! Multiplying `g = sum_l g_l x^l` (with `l < phi(M)`) by `x^k` sends `x^l` to
//! column `(k + l) mod M` of the reduction matrix. The map is therefore the
//! `phi x phi` submatrix made of those consecutive columns, and its
//! infinity-to-infinity operator norm is its largest row L1 norm.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::modulus::{CycloModulus, Shape};
use crate::poly::IntPoly;
use crate::ring::{monomial_reduce, reduce, ring_mul, RingElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionReport {
    pub m: usize,
    /// Exact factor for each `k` in `[0, M)`.
    pub per_k: Vec<u64>,
    pub max_factor: u64,
    /// Smallest `k` attaining the maximum.
    pub witness_k: i64,
    pub witness_g: RingElement,
}

fn window_row_max(k: usize, modulus: &CycloModulus) -> (u64, usize) {
    let m = modulus.m();
    let phi = modulus.phi();
    let entries = modulus.matrix_entries();
    let mut best = (0u64, 0usize);
    for row in 0..phi {
        let base = row * m;
        let sum: u64 = (0..phi)
            .map(|l| u64::from(entries[base + (k + l) % m].unsigned_abs()))
            .sum();
        if sum > best.0 {
            best = (sum, row);
        }
    }
    best
}

/// Exact expansion factor of `x^k` and a `g` with entries in `{-1, 0, 1}`
/// attaining it. The witness is re-verified with one ring product.
pub fn monomial_expansion_factor(k: i64, modulus: &CycloModulus) -> Result<(u64, RingElement)> {
    let m = modulus.m();
    let k = k.rem_euclid(m as i64) as usize;
    let (factor, row) = window_row_max(k, modulus);
    let entries = modulus.matrix_entries();
    let g: Vec<BigInt> = (0..modulus.phi())
        .map(|l| BigInt::from(entries[row * m + (k + l) % m].signum()))
        .collect();
    let g = RingElement::from_reduced(modulus, g)?;
    let image = ring_mul(&monomial_reduce(k as i64, modulus), &g)?;
    if image.max_norm() != BigInt::from(factor) * g.max_norm() {
        return Err(Error::ClaimViolated(
            "witness does not attain the expansion factor",
        ));
    }
    Ok((factor, g))
}

/// Sweeps `k` over `[0, M)`.
pub fn max_expansion_factor(modulus: &CycloModulus) -> Result<ExpansionReport> {
    let m = modulus.m();
    let per_k: Vec<u64> = (0..m).map(|k| window_row_max(k, modulus).0).collect();
    let (witness_k, &max_factor) = per_k
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .expect("M >= 2");
    let (_, witness_g) = monomial_expansion_factor(witness_k as i64, modulus)?;
    Ok(ExpansionReport {
        m,
        per_k,
        max_factor,
        witness_k: witness_k as i64,
        witness_g,
    })
}

/// The maximum for each shape: 1 for `2^s`, 2 for odd prime powers, `2p`
/// for `p^s q^t` with `p` odd.
///
/// For `p = 2` the two-prime value is 2: `x^q = -1` modulo `Phi_2q`, so a
/// window of `q - 1` consecutive columns of `R_2q` is, up to sign, a set of
/// distinct columns of `(I | -1)`, and every row of that has two nonzeros.
/// The `2p` witness `g` has degree `q + 1 >= phi(2q)` and is not reduced.
pub fn expected_max_factor(shape: Shape) -> u64 {
    match shape {
        Shape::PrimePower { p: 2, .. } => 1,
        Shape::PrimePower { .. } => 2,
        Shape::TwoPrime { p: 2, .. } => 2,
        Shape::TwoPrime { p, .. } => 2 * p,
    }
}

/// The exponent used to show the maximum is attained:
/// `(p-1) p^(s-1)` for prime powers, `(phi(pq)-1) M / pq` for two primes.
pub fn reference_witness_k(shape: Shape) -> i64 {
    let m_prime = shape.inflation() as i64;
    match shape {
        Shape::PrimePower { p, .. } => (p as i64 - 1) * m_prime,
        Shape::TwoPrime { p, q, .. } => ((p as i64 - 1) * (q as i64 - 1) - 1) * m_prime,
    }
}

/// The matching `g`: `1 - x` for prime powers and
/// `(1 + ... + x^(p-1)) - (x^q + ... + x^(q+p-1))` for two primes, both
/// inflated by `M / rad(M)`.
pub fn reference_witness_g(shape: Shape) -> IntPoly {
    let base = match shape {
        Shape::PrimePower { .. } => IntPoly::from_i64s(&[1, -1]),
        Shape::TwoPrime { p, q, .. } => {
            let low = IntPoly::geometric(p as usize);
            let high = low.shift(q as usize);
            low - high
        }
    };
    base.inflate(shape.inflation() as usize)
}

/// `(||x^k g||, ||g||)` for `g` given as any representative.
pub fn expansion_ratio(k: i64, g: &IntPoly, modulus: &CycloModulus) -> (BigInt, BigInt) {
    let g = reduce(g, modulus);
    (g.mul_monomial(k).max_norm(), g.max_norm())
}

/// Samples nonzero `g` with coefficients in `{-1, 0, 1}` and in
/// `[-bound, bound]` (alternating) and checks `||x^k g|| <= factor ||g||`;
/// also checks that the constructed witness attains equality.
pub fn randomized_expansion_check<R: Rng + ?Sized>(
    k: i64,
    modulus: &CycloModulus,
    trials: usize,
    bound: i64,
    rng: &mut R,
) -> Result<bool> {
    if trials == 0 {
        return Err(Error::OutOfRange("trials must be at least 1"));
    }
    let (factor, witness) = monomial_expansion_factor(k, modulus)?;
    let factor = BigInt::from(factor);
    let phi = modulus.phi();
    let bound = bound.max(1);
    let mut done = 0;
    while done < trials {
        let b = if done % 2 == 0 { 1 } else { bound };
        let g: Vec<BigInt> = (0..phi)
            .map(|_| BigInt::from(rng.gen_range(-b..=b)))
            .collect();
        if g.iter().all(Zero::is_zero) {
            continue;
        }
        let g = RingElement::from_reduced(modulus, g)?;
        if g.mul_monomial(k).max_norm() > &factor * g.max_norm() {
            return Ok(false);
        }
        done += 1;
    }
    let image = witness.mul_monomial(k).max_norm();
    Ok(image == factor * witness.max_norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modulus::make_modulus;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn power_of_two_is_one() {
        for m in [4u64, 8, 16, 32] {
            let md = make_modulus(m).unwrap();
            for k in 0..m as i64 {
                assert_eq!(monomial_expansion_factor(k, &md).unwrap().0, 1);
            }
        }
    }

    #[test]
    fn reference_witnesses() {
        let m9 = make_modulus(9).unwrap();
        let (f, _) = monomial_expansion_factor(6, &m9).unwrap();
        assert_eq!(f, 2);
        let g = reference_witness_g(m9.shape());
        assert_eq!(g, IntPoly::from_i64s(&[1, 0, 0, -1]));
        let (num, den) = expansion_ratio(6, &g, &m9);
        assert_eq!(num, BigInt::from(2) * den);

        let m21 = make_modulus(21).unwrap();
        assert_eq!(reference_witness_k(m21.shape()), 11);
        let (f, _) = monomial_expansion_factor(11, &m21).unwrap();
        assert_eq!(f, 6);
        let g = reference_witness_g(m21.shape());
        assert_eq!(g, IntPoly::from_i64s(&[1, 1, 1, 0, 0, 0, 0, -1, -1, -1]));
        let (num, den) = expansion_ratio(11, &g, &m21);
        assert_eq!(num, BigInt::from(6) * den);
    }

    #[test]
    fn maxima() {
        assert_eq!(
            max_expansion_factor(&make_modulus(27).unwrap())
                .unwrap()
                .max_factor,
            2
        );
        assert_eq!(
            max_expansion_factor(&make_modulus(45).unwrap())
                .unwrap()
                .max_factor,
            6
        );
        assert_eq!(
            max_expansion_factor(&make_modulus(16).unwrap())
                .unwrap()
                .max_factor,
            1
        );
    }

    #[test]
    fn randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m9 = make_modulus(9).unwrap();
        assert_eq!(
            randomized_expansion_check(6, &m9, 1000, 5, &mut rng),
            Ok(true)
        );
        assert_eq!(
            randomized_expansion_check(0, &m9, 50, 5, &mut rng),
            Ok(true)
        );
        assert_eq!(monomial_expansion_factor(0, &m9).unwrap().0, 1);
        assert!(randomized_expansion_check(0, &m9, 0, 5, &mut rng).is_err());
    }

    #[test]
    fn periodic_in_k() {
        let m = make_modulus(35).unwrap();
        for k in 0..35 {
            assert_eq!(
                monomial_expansion_factor(k, &m).unwrap().0,
                monomial_expansion_factor(k + 35, &m).unwrap().0
            );
            assert_eq!(
                monomial_expansion_factor(k, &m).unwrap().0,
                monomial_expansion_factor(k - 70, &m).unwrap().0
            );
        }
    }
}
