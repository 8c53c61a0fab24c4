//! Executable forms of the structural facts about `Phi_pq` and the reduced
//! monomials `x^k mod Phi_pq`, each paired with a brute-force or direct
//! reduction check.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::modulus::{make_modulus, CycloModulus, Shape};
use crate::poly::IntPoly;
use crate::ring::{monomial_reduce, RingElement};

/// Which `i` in `[0, pq)` are nonnegative combinations `alpha p + beta q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiophantineTable {
    pub p: u64,
    pub q: u64,
    pub solvable: Vec<bool>,
}

impl DiophantineTable {
    /// Brute force: for each `i`, try every `alpha <= i / p` and test whether
    /// `q` divides the rest.
    pub fn new(p: u64, q: u64) -> Self {
        let solvable = (0..p * q)
            .map(|i| (0..=i / p).any(|alpha| (i - alpha * p).is_multiple_of(q)))
            .collect();
        Self { p, q, solvable }
    }

    pub fn is_solvable(&self, i: u64) -> bool {
        self.solvable[i as usize]
    }
}

/// Validates `p < q` primes and returns the modulus `pq`.
pub fn pq_modulus(p: u64, q: u64) -> Result<CycloModulus> {
    if !(is_prime(p) && is_prime(q) && p < q) {
        return Err(Error::OutOfRange("expected primes p < q"));
    }
    make_modulus(p * q)
}

fn squarefree_pq(modulus: &CycloModulus) -> Result<(u64, u64)> {
    match modulus.shape() {
        Shape::TwoPrime { p, s: 1, q, t: 1 } => Ok((p, q)),
        _ => Err(Error::NotApplicable(
            "modulus is not a squarefree product pq",
        )),
    }
}

/// `(Phi_pq - 1) / (x - 1)`.
pub fn diff_quotient(p: u64, q: u64) -> Result<IntPoly> {
    let m = pq_modulus(p, q)?;
    (m.poly().clone() - IntPoly::one()).exact_div(&IntPoly::from_i64s(&[-1, 1]))
}

/// Coefficients `b_0 .. b_(phi-1)` of `(Phi_pq - 1)/(x - 1)` together with the
/// Diophantine table. Fails if the division disagrees with `b_i = 1 - solvable(i)`.
pub fn diff_quotient_coeffs(p: u64, q: u64) -> Result<(Vec<u8>, DiophantineTable)> {
    let quotient = diff_quotient(p, q)?;
    let phi = ((p - 1) * (q - 1)) as usize;
    let table = DiophantineTable::new(p, q);
    let mut b = Vec::with_capacity(phi);
    for i in 0..phi {
        let c = quotient
            .coeff(i)
            .to_u8()
            .filter(|&c| c <= 1)
            .ok_or(Error::ClaimViolated("quotient coefficient outside {0, 1}"))?;
        if c != u8::from(!table.solvable[i]) {
            return Err(Error::ClaimViolated(
                "quotient disagrees with the Diophantine table",
            ));
        }
        b.push(c);
    }
    if quotient.degree().is_some_and(|d| d >= phi) {
        return Err(Error::ClaimViolated("quotient degree is at least phi(pq)"));
    }
    Ok((b, table))
}

/// `Phi_pq(1)`.
pub fn phi_pq_at_one(p: u64, q: u64) -> Result<BigInt> {
    Ok(pq_modulus(p, q)?.poly().eval(&BigInt::one()))
}

/// `rev(Phi_pq) == Phi_pq`.
pub fn phi_pq_symmetric(p: u64, q: u64) -> Result<bool> {
    let m = pq_modulus(p, q)?;
    Ok(&m.poly().rev()? == m.poly())
}

/// Four facts about `b`: multiples of `p` vanish; below `q`
/// `b_i = 0` exactly on multiples of `p`; every `i >= phi` is solvable;
/// `b_i + b_(phi-1-i) = 1`.
pub fn diff_quotient_facts(p: u64, q: u64) -> Result<[bool; 4]> {
    let (b, table) = diff_quotient_coeffs(p, q)?;
    let phi = b.len() as u64;
    let coeff = |i: u64| b.get(i as usize).copied().unwrap_or(0);
    let a = (0..p * q).step_by(p as usize).all(|i| coeff(i) == 0);
    let bb = (0..q).all(|i| (coeff(i) == 0) == (i % p == 0));
    let c = (phi..p * q).all(|i| table.is_solvable(i));
    let d = (0..phi).all(|i| coeff(i) + coeff(phi - 1 - i) == 1);
    Ok([a, bb, c, d])
}

/// `x^(phi+k) - Phi_pq * (1 + x + ... + x^k)`, the closed form of
/// `x^(phi+k) mod Phi_pq` for `0 <= k <= p - 1`.
pub fn low_tail_form(k: u64, p: u64, q: u64) -> Result<IntPoly> {
    let m = pq_modulus(p, q)?;
    let phi = m.phi();
    Ok(IntPoly::monomial(BigInt::one(), phi + k as usize)
        - m.poly().clone() * IntPoly::geometric(k as usize + 1))
}

/// `-x^(k-(p-1)) * sum_(i=0)^(p-2) x^(qi)`, the closed form of
/// `x^(phi+k) mod Phi_pq` for `p - 1 <= k <= q - 1`.
pub fn band_form(k: u64, p: u64, q: u64) -> Result<IntPoly> {
    if k + 1 < p {
        return Err(Error::OutOfRange("band form needs k >= p - 1"));
    }
    let shift = (k - (p - 1)) as usize;
    let mut coeffs = vec![BigInt::zero(); shift + ((p - 2) * q) as usize + 1];
    for i in 0..p - 1 {
        coeffs[shift + (q * i) as usize] = BigInt::from(-1);
    }
    Ok(IntPoly::new(coeffs))
}

/// Closed form of `x^(phi(pq)+k) mod Phi_pq` for `0 <= k <= q - 1`, checked
/// against direct reduction (and on `k = p - 1` both closed forms must agree).
pub fn high_monomial_form(k: u64, p: u64, q: u64) -> Result<RingElement> {
    let m = pq_modulus(p, q)?;
    if k >= q {
        return Err(Error::OutOfRange("k must satisfy 0 <= k <= q - 1"));
    }
    let direct = monomial_reduce((m.phi() as u64 + k) as i64, &m);
    let form = if k < p {
        low_tail_form(k, p, q)?
    } else {
        band_form(k, p, q)?
    };
    if k == p - 1 && form != band_form(k, p, q)? {
        return Err(Error::ClaimViolated("closed forms disagree at k = p - 1"));
    }
    if direct.to_poly() != form {
        return Err(Error::ClaimViolated(
            "closed form differs from direct reduction",
        ));
    }
    Ok(direct)
}

/// For every `0 <= k < pq - phi(pq)`, the slot-wise reversal of
/// `x^(phi+k) mod Phi_pq` equals `x^(pq-1-k) mod Phi_pq`.
pub fn rev_symmetry_check(p: u64, q: u64) -> Result<bool> {
    let m = pq_modulus(p, q)?;
    let (pq, phi) = (m.m() as i64, m.phi() as i64);
    Ok((0..pq - phi)
        .all(|k| monomial_reduce(phi + k, &m).rev_slots() == monomial_reduce(pq - 1 - k, &m)))
}

/// Classification of one coefficient row across `{x^(j+ip)}_(0 <= i < q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowClass {
    AllZero,
    OnePlusOneMinus,
    /// Anything else; carries the observed row for diagnostics.
    Other(Vec<i8>),
}

/// One entry per row `k < phi(pq)` of the multiset of `k`-th coefficients of
/// `x^(j+ip) mod Phi_pq` for `0 <= i < q`.
pub fn residue_class_pattern(j: u64, modulus: &CycloModulus) -> Result<Vec<RowClass>> {
    let (p, q) = squarefree_pq(modulus)?;
    if j >= p {
        return Err(Error::OutOfRange("j must satisfy 0 <= j < p"));
    }
    let cols: Vec<usize> = (0..q).map(|i| (j + i * p) as usize).collect();
    let m = modulus.m();
    let entries = modulus.matrix_entries();
    Ok((0..modulus.phi())
        .map(|row| {
            let observed: Vec<i8> = cols.iter().map(|&c| entries[row * m + c]).collect();
            let plus = observed.iter().filter(|&&e| e == 1).count();
            let minus = observed.iter().filter(|&&e| e == -1).count();
            let zero = observed.iter().filter(|&&e| e == 0).count();
            match (plus, minus, zero == observed.len() - plus - minus) {
                (0, 0, true) => RowClass::AllZero,
                (1, 1, true) => RowClass::OnePlusOneMinus,
                _ => RowClass::Other(observed),
            }
        })
        .collect())
}

/// `sum_(i in subset) x^(j+ip) mod Phi_pq`.
pub fn residue_subset_sum(j: u64, subset: &[u64], modulus: &CycloModulus) -> Result<RingElement> {
    let (p, q) = squarefree_pq(modulus)?;
    if j >= p || subset.iter().any(|&i| i >= q) {
        return Err(Error::OutOfRange("need j < p and subset of [0, q)"));
    }
    let mut acc = RingElement::zero(modulus);
    for &i in subset {
        acc = acc.add(&monomial_reduce((j + i * p) as i64, modulus))?;
    }
    Ok(acc)
}

fn random_subset<R: Rng + ?Sized>(n: u64, rng: &mut R) -> Vec<u64> {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}

/// Largest norm over `trials` random subset sums for residue class `j`.
pub fn random_subset_max_norm<R: Rng + ?Sized>(
    j: u64,
    modulus: &CycloModulus,
    trials: usize,
    rng: &mut R,
) -> Result<BigInt> {
    let (_, q) = squarefree_pq(modulus)?;
    let mut worst = BigInt::zero();
    for _ in 0..trials {
        let n = residue_subset_sum(j, &random_subset(q, rng), modulus)?.max_norm();
        if n > worst {
            worst = n;
        }
    }
    Ok(worst)
}

/// `sum_k sum_(i in I_k) x^((j+ip)M' + k) mod Phi_M` for a family
/// `{I_k}_(k < M')`, `M' = M / pq`.
pub fn inflated_subset_sum(
    j: u64,
    families: &[Vec<u64>],
    modulus: &CycloModulus,
) -> Result<RingElement> {
    let Shape::TwoPrime { p, q, .. } = modulus.shape() else {
        return Err(Error::NotApplicable("modulus is not of the form p^s q^t"));
    };
    let m_prime = modulus.shape().inflation();
    if j >= p || families.len() as u64 != m_prime {
        return Err(Error::OutOfRange("need j < p and one subset per k < M'"));
    }
    // Accumulate in the coefficient domain, then wrap once.
    let m = modulus.m();
    let entries = modulus.matrix_entries();
    let mut acc = vec![0i64; modulus.phi()];
    for (k, subset) in families.iter().enumerate() {
        for &i in subset {
            if i >= q {
                return Err(Error::OutOfRange("subset index must be below q"));
            }
            let col = ((j + i * p) * m_prime) as usize + k;
            for (row, a) in acc.iter_mut().enumerate() {
                *a += i64::from(entries[row * m + col]);
            }
        }
    }
    RingElement::from_reduced(modulus, acc.into_iter().map(BigInt::from).collect())
}

/// Does `x^((j+ip)M' + k) mod Phi_M` only touch degrees congruent to `k`
/// modulo `M'`, for all `j < p`, `i < q`, `k < M'`?
pub fn inflated_support_check(modulus: &CycloModulus) -> Result<bool> {
    let Shape::TwoPrime { p, q, .. } = modulus.shape() else {
        return Err(Error::NotApplicable("modulus is not of the form p^s q^t"));
    };
    let m_prime = modulus.shape().inflation() as usize;
    let m = modulus.m();
    let entries = modulus.matrix_entries();
    for j in 0..p {
        for i in 0..q {
            for k in 0..m_prime {
                let col = ((j + i * p) as usize) * m_prime + k;
                let ok =
                    (0..modulus.phi()).all(|row| entries[row * m + col] == 0 || row % m_prime == k);
                if !ok {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Random families `{I_k}` for each `j < p`: every subset sum must have norm
/// at most 1, and the support premise must hold.
pub fn inflated_pattern_check<R: Rng + ?Sized>(
    modulus: &CycloModulus,
    trials: usize,
    rng: &mut R,
) -> Result<bool> {
    let Shape::TwoPrime { p, q, .. } = modulus.shape() else {
        return Err(Error::NotApplicable("modulus is not of the form p^s q^t"));
    };
    if !inflated_support_check(modulus)? {
        return Ok(false);
    }
    let m_prime = modulus.shape().inflation();
    for _ in 0..trials {
        for j in 0..p {
            let families: Vec<Vec<u64>> = (0..m_prime).map(|_| random_subset(q, rng)).collect();
            if inflated_subset_sum(j, &families, modulus)?.max_norm() > BigInt::one() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn diophantine_examples() {
        let (b, table) = diff_quotient_coeffs(3, 5).unwrap();
        assert_eq!(b, [0, 1, 1, 0, 1, 0, 0, 1]);
        assert!((8..15).all(|i| table.is_solvable(i)));
        for (p_, q_) in [(2, 3), (3, 7), (5, 7), (7, 11)] {
            let (b, _) = diff_quotient_coeffs(p_, q_).unwrap();
            let phi = b.len();
            assert!((0..phi).step_by(p_ as usize).all(|i| b[i] == 0));
            assert!((0..phi).all(|i| b[i] + b[phi - 1 - i] == 1));
        }
        assert!(diff_quotient_coeffs(5, 3).is_err());
        assert!(diff_quotient_coeffs(4, 5).is_err());
    }

    #[test]
    fn table_monotone() {
        let t = DiophantineTable::new(5, 7);
        for i in 0..35u64 {
            if t.is_solvable(i) {
                if i + 5 < 35 {
                    assert!(t.is_solvable(i + 5));
                }
                if i + 7 < 35 {
                    assert!(t.is_solvable(i + 7));
                }
            }
        }
    }

    #[test]
    fn high_monomial_examples() {
        let e = high_monomial_form(0, 3, 5).unwrap();
        assert_eq!(e.to_poly(), p(&[-1, 1, 0, -1, 1, -1, 0, 1]));
        let e = high_monomial_form(2, 3, 5).unwrap();
        assert_eq!(e.to_poly(), p(&[-1, 0, 0, 0, 0, -1]));
        let e = high_monomial_form(2, 3, 7).unwrap();
        assert_eq!(e.to_poly(), p(&[-1, 0, 0, 0, 0, 0, 0, -1]));
        assert!(high_monomial_form(5, 3, 5).is_err());
    }

    #[test]
    fn rev_symmetry_examples() {
        assert_eq!(rev_symmetry_check(3, 5), Ok(true));
        assert_eq!(rev_symmetry_check(3, 7), Ok(true));
        assert_eq!(rev_symmetry_check(2, 3), Ok(true));
    }

    #[test]
    fn residue_patterns_for_15() {
        let m = make_modulus(15).unwrap();
        for j in 0..3 {
            let rows = residue_class_pattern(j, &m).unwrap();
            assert_eq!(rows.len(), 8);
            assert!(rows.iter().all(|r| !matches!(r, RowClass::Other(_))));
            let all: Vec<u64> = (0..5).collect();
            assert!(residue_subset_sum(j, &all, &m).unwrap().is_zero());
        }
        assert!(residue_class_pattern(3, &m).is_err());
        assert!(residue_class_pattern(0, &make_modulus(45).unwrap()).is_err());
    }

    #[test]
    fn random_subsets_stay_ternary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = make_modulus(21).unwrap();
        for j in 0..3 {
            assert!(random_subset_max_norm(j, &m, 200, &mut rng).unwrap() <= BigInt::one());
        }
    }

    #[test]
    fn inflated_examples() {
        let m = make_modulus(45).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(inflated_pattern_check(&m, 100, &mut rng), Ok(true));
        let empty = vec![Vec::new(); 3];
        assert!(inflated_subset_sum(0, &empty, &m).unwrap().is_zero());
        let full: Vec<Vec<u64>> = (0..3).map(|_| (0..5).collect()).collect();
        for j in 0..3 {
            assert!(inflated_subset_sum(j, &full, &m).unwrap().is_zero());
        }
    }

    #[test]
    fn phi_pq_value_and_symmetry() {
        for (p_, q_) in [(2, 3), (3, 5), (5, 13), (11, 13)] {
            assert_eq!(phi_pq_at_one(p_, q_).unwrap(), BigInt::one());
            assert!(phi_pq_symmetric(p_, q_).unwrap());
            assert_eq!(diff_quotient_facts(p_, q_).unwrap(), [true; 4]);
        }
    }
}
