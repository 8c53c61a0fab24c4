//! Elements of `Z[x]/Phi_M(x)` in fully reduced form.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::modulus::CycloModulus;
use crate::poly::IntPoly;

/// Reduced residue: a coefficient vector of length exactly `phi(M)`.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    modulus: CycloModulus,
    coeffs: Vec<BigInt>,
}

impl RingElement {
    pub fn zero(modulus: &CycloModulus) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); modulus.phi()],
            modulus: modulus.clone(),
        }
    }

    pub fn one(modulus: &CycloModulus) -> Self {
        Self::constant(modulus, BigInt::from(1))
    }

    pub fn constant(modulus: &CycloModulus, c: BigInt) -> Self {
        let mut e = Self::zero(modulus);
        e.coeffs[0] = c;
        e
    }

    /// Wraps a coefficient vector that is already reduced.
    pub fn from_reduced(modulus: &CycloModulus, mut coeffs: Vec<BigInt>) -> Result<Self> {
        let phi = modulus.phi();
        if coeffs.len() > phi {
            if coeffs[phi..].iter().any(|c| !c.is_zero()) {
                return Err(Error::OutOfRange("coefficient vector is not reduced"));
            }
            coeffs.truncate(phi);
        }
        coeffs.resize(phi, BigInt::zero());
        Ok(Self {
            modulus: modulus.clone(),
            coeffs,
        })
    }

    pub fn modulus(&self) -> &CycloModulus {
        &self.modulus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn max_norm(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Is this the constant `c`?
    pub fn is_constant(&self, c: &BigInt) -> bool {
        &self.coeffs[0] == c && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self {
            modulus: self.modulus.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Slot-wise reversal of the length-`phi(M)` vector, i.e. reversal as a
    /// degree `phi(M) - 1` polynomial even when the top slots are zero.
    pub fn rev_slots(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self {
            modulus: self.modulus.clone(),
            coeffs,
        }
    }

    pub fn add(&self, other: &RingElement) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            modulus: self.modulus.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &RingElement) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            modulus: self.modulus.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            modulus: self.modulus.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &RingElement) -> Result<Self> {
        ring_mul(self, other)
    }

    /// `x^k * self` for any integer `k`.
    pub fn mul_monomial(&self, k: i64) -> Self {
        let m = self.modulus.m();
        let shift = k.rem_euclid(m as i64) as usize;
        let mut folded = vec![BigInt::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                folded[(i + shift) % m] += c;
            }
        }
        finish_reduce(&self.modulus, folded)
    }

    fn check_same(&self, other: &RingElement) -> Result<()> {
        if self.modulus.same_as(&other.modulus) {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.modulus.m(), other.modulus.m()))
        }
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement(M={}, ", self.modulus.m())?;
        f.debug_list().entries(self.coeffs.iter()).finish()?;
        write!(f, ")")
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_poly(), f)
    }
}

/// Unique representative of `a mod Phi_M` with degree below `phi(M)`.
///
/// Exponents are first folded modulo `M` (`Phi_M` divides `x^M - 1`), then the
/// short remainder is divided by the monic `Phi_M`.
pub fn reduce(a: &IntPoly, modulus: &CycloModulus) -> RingElement {
    let m = modulus.m();
    let mut folded = vec![BigInt::zero(); m.min(a.coeffs().len())];
    for (i, c) in a.terms() {
        folded[i % m] += c;
    }
    finish_reduce(modulus, folded)
}

fn finish_reduce(modulus: &CycloModulus, folded: Vec<BigInt>) -> RingElement {
    let rem = IntPoly::new(folded).rem_monic(modulus.poly());
    let mut coeffs = rem.into_coeffs();
    coeffs.resize(modulus.phi(), BigInt::zero());
    RingElement {
        modulus: modulus.clone(),
        coeffs,
    }
}

/// `x^k mod Phi_M` for any integer `k`, read from the cached reduction matrix.
pub fn monomial_reduce(k: i64, modulus: &CycloModulus) -> RingElement {
    let col = k.rem_euclid(modulus.m() as i64) as usize;
    RingElement {
        modulus: modulus.clone(),
        coeffs: modulus.column(col).map(BigInt::from).collect(),
    }
}

/// Product in `Z[x]/Phi_M(x)`.
pub fn ring_mul(a: &RingElement, b: &RingElement) -> Result<RingElement> {
    a.check_same(b)?;
    let prod = a.to_poly() * b.to_poly();
    Ok(reduce(&prod, &a.modulus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modulus::make_modulus;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn el(m: &CycloModulus, c: &[i64]) -> RingElement {
        reduce(&p(c), m)
    }

    #[test]
    fn reduce_examples() {
        let m15 = make_modulus(15).unwrap();
        let x8 = IntPoly::monomial(BigInt::from(1), 8);
        assert_eq!(
            reduce(&x8, &m15).to_poly(),
            (x8.clone() - m15.poly().clone())
        );
        assert_eq!(reduce(&x8, &m15).to_poly(), p(&[-1, 1, 0, -1, 1, -1, 0, 1]));
        assert!(reduce(m15.poly(), &m15).is_zero());
    }

    #[test]
    fn monomial_examples() {
        let m21 = make_modulus(21).unwrap();
        assert_eq!(
            monomial_reduce(12, &m21).to_poly(),
            p(&[-1, 1, 0, -1, 1, 0, -1, 0, 1, -1, 0, 1])
        );
        assert_eq!(
            monomial_reduce(14, &m21).to_poly(),
            p(&[-1, 0, 0, 0, 0, 0, 0, -1])
        );
        let m15 = make_modulus(15).unwrap();
        assert_eq!(monomial_reduce(-1, &m15), monomial_reduce(14, &m15));
        assert_eq!(monomial_reduce(15 * 7 + 3, &m15), monomial_reduce(3, &m15));
    }

    #[test]
    fn ring_mul_examples() {
        let m4 = make_modulus(4).unwrap();
        let prod = ring_mul(&el(&m4, &[-1, 1]), &el(&m4, &[-1, -1])).unwrap();
        assert!(prod.is_constant(&BigInt::from(2)));

        let m15 = make_modulus(15).unwrap();
        let a = el(&m15, &[3, 0, -2, 7, 1]);
        assert_eq!(ring_mul(&a, &RingElement::one(&m15)).unwrap(), a);

        let x = el(&m15, &[0, 1]);
        let mut acc = RingElement::one(&m15);
        for _ in 0..8 {
            acc = ring_mul(&acc, &x).unwrap();
        }
        assert_eq!(acc, monomial_reduce(8, &m15));
    }

    #[test]
    fn modulus_mismatch() {
        let a = RingElement::one(&make_modulus(15).unwrap());
        let b = RingElement::one(&make_modulus(21).unwrap());
        assert_eq!(ring_mul(&a, &b), Err(Error::ModulusMismatch(15, 21)));
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn mul_monomial_matches_product() {
        let m = make_modulus(45).unwrap();
        let a = el(&m, &[1, -2, 0, 3, 0, 0, 5, -1]);
        for k in [-50i64, -1, 0, 7, 23, 44, 91] {
            let direct = ring_mul(&a, &monomial_reduce(k, &m)).unwrap();
            assert_eq!(a.mul_monomial(k), direct, "k = {k}");
        }
    }

    #[test]
    fn from_reduced_validation() {
        let m = make_modulus(5).unwrap();
        let ok = RingElement::from_reduced(&m, vec![BigInt::from(1)]).unwrap();
        assert_eq!(ok.coeffs().len(), 4);
        let bad = RingElement::from_reduced(&m, (0..6).map(BigInt::from).collect());
        assert!(bad.is_err());
    }
}
