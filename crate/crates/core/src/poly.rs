//! Dense univariate polynomials over Z and Q.
//!
//! Coefficients are stored in ascending order of degree and trailing zeros are
//! always stripped, so the zero polynomial is the empty vector and its degree
//! is `None`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Builds a polynomial from ascending coefficients, stripping trailing zeros.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^n`.
    pub fn monomial(c: BigInt, n: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = c;
        Self { coeffs }
    }

    /// `x^n - 1`. Returns the zero polynomial for `n == 0`.
    pub fn xn_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] += 1;
        coeffs[0] -= 1;
        Self::new(coeffs)
    }

    /// `1 + x + ... + x^(n-1)`.
    pub fn geometric(n: usize) -> Self {
        Self::new(vec![BigInt::one(); n])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i`; zero past the degree.
    pub fn coeff(&self, i: usize) -> &BigInt {
        self.coeffs.get(i).unwrap_or(&BigInt::ZERO)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Indices and values of the nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Multiplication by `x^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides every coefficient by `c`, failing unless each division is exact.
    pub fn div_scalar(&self, c: &BigInt) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InexactDivision);
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            out.push(q);
        }
        Ok(Self { coeffs: out })
    }

    /// Exact quotient `self / divisor` over Z.
    ///
    /// Long division walks only the nonzero terms of the divisor, so sparse
    /// divisors such as `x^d - 1` cost O(deg self) regardless of `d`.
    pub fn exact_div(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let db = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let Some(da) = self.degree() else {
            return Ok(Self::zero());
        };
        if da < db {
            return Err(Error::InexactDivision);
        }
        let lead = divisor.leading().expect("nonzero divisor");
        let lower: Vec<(usize, &BigInt)> = divisor.terms().filter(|&(i, _)| i < db).collect();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = &rem[k + db];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for &(i, c) in &lower {
                rem[k + i] -= &q * c;
            }
            rem[k + db] = BigInt::zero();
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(Self::new(quot))
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, modulus: &IntPoly) -> Self {
        debug_assert!(modulus.is_monic());
        let dm = modulus.degree().expect("nonzero modulus");
        let Some(da) = self.degree() else {
            return Self::zero();
        };
        if da < dm {
            return self.clone();
        }
        let lower: Vec<(usize, &BigInt)> = modulus.terms().filter(|&(i, _)| i < dm).collect();
        let mut rem = self.coeffs.clone();
        for k in (0..=da - dm).rev() {
            let q = core::mem::take(&mut rem[k + dm]);
            if q.is_zero() {
                continue;
            }
            for &(i, c) in &lower {
                rem[k + i] -= &q * c;
            }
        }
        rem.truncate(dm);
        Self::new(rem)
    }

    /// `(q, r)` with `lc(b)^(deg a - deg b + 1) * a = q * b + r` and `deg r < deg b`.
    pub fn pseudo_div_rem(&self, b: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let db = b.degree().ok_or(Error::ZeroPolynomial)?;
        let da = match self.degree() {
            Some(da) if da >= db => da,
            _ => return Ok((Self::zero(), self.clone())),
        };
        let lc = b.leading().expect("nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = core::mem::take(&mut rem[k + db]);
            for c in quot.iter_mut().skip(k + 1) {
                *c *= lc;
            }
            for c in rem.iter_mut().take(k + db) {
                *c *= lc;
            }
            if !top.is_zero() {
                for (i, c) in b.terms().filter(|&(i, _)| i < db) {
                    rem[k + i] -= &top * c;
                }
            }
            quot[k] = top;
        }
        rem.truncate(db);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Reverse polynomial `x^deg(a) * a(1/x)`.
    pub fn rev(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self::new(self.coeffs.iter().rev().cloned().collect()))
    }

    /// Positive gcd of the coefficients.
    pub fn content(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.content_or_zero())
    }

    pub(crate) fn content_or_zero(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Substitution `x -> x^m`.
    pub fn inflate(&self, m: usize) -> Self {
        assert!(m >= 1, "inflation factor must be positive");
        if m == 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * m + 1];
        for (i, c) in self.terms() {
            coeffs[i * m] = c.clone();
        }
        Self { coeffs }
    }

    /// Largest absolute coefficient; zero for the zero polynomial.
    pub fn max_norm(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    fn mul_ref(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        let rhs: Vec<(usize, &BigInt)> = other.terms().collect();
        for (i, a) in self.terms() {
            for &(j, b) in &rhs {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    fn add_ref(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    fn sub_ref(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly(")?;
        f.debug_list().entries(self.coeffs.iter()).finish()?;
        write!(f, ")")
    }
}

/// Human-readable form, highest degree first: `x^2 - 3*x + 1`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl $trait<&IntPoly> for &IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                self.$impl_fn(rhs)
            }
        }
        impl $trait<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$impl_fn(&rhs)
            }
        }
        impl $trait<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                (&self).$impl_fn(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -self.clone()
    }
}

/// Polynomial with rational coefficients, each kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        // BigRational keeps itself reduced with a positive denominator.
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// `p / d` coefficient-wise.
    pub fn from_int_poly(p: &IntPoly, d: &BigInt) -> Self {
        Self::new(
            p.coeffs()
                .iter()
                .map(|c| BigRational::new(c.clone(), d.clone()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Least common multiple of the (positive) coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// `c * self` if every coefficient becomes integral.
    pub fn scale_to_int(&self, c: &BigInt) -> Option<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let v = a * BigRational::from_integer(c.clone());
            if !v.is_integer() {
                return None;
            }
            out.push(v.to_integer());
        }
        Some(IntPoly::new(out))
    }
}

/// Resultant together with Bezout data for `a` modulo `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bezout {
    /// `res(a, f)`, nonzero.
    pub resultant: BigInt,
    /// Integral cofactor with `s * a = resultant (mod f)` and `deg s < deg f`.
    pub s: IntPoly,
    /// Rational inverse `s / resultant`, so that `s_rat * a = 1 (mod f)`.
    pub s_rat: RatPoly,
}

/// Resultant `res(a, f)` and the Bezout cofactor of `a` modulo `f`.
///
/// Runs a primitive pseudo-remainder sequence carrying the cofactor of `a`
/// alongside each remainder. Common integer factors are stripped from each
/// `(remainder, cofactor)` pair, which keeps coefficients bounded, and the
/// scalings are folded into a rational accumulator for the resultant. The
/// rational inverse `s_rat` is unique, so the output coincides with the
/// extended Euclidean algorithm run over Q.
pub fn resultant_bezout(a: &IntPoly, f: &IntPoly) -> Result<Bezout> {
    let deg_a = a.degree().ok_or(Error::ZeroPolynomial)?;
    let deg_f = f.degree().ok_or(Error::ZeroPolynomial)?;
    if deg_f == 0 {
        return Err(Error::OutOfRange("modulus must have positive degree"));
    }
    if deg_a >= deg_f {
        return Err(Error::OutOfRange("deg a must be below deg f"));
    }

    // Invariant: s_hi * a = r_hi (mod f), s_lo * a = r_lo (mod f).
    let (mut r_hi, mut s_hi) = (f.clone(), IntPoly::zero());
    let (mut r_lo, mut s_lo) = (a.clone(), IntPoly::one());
    // res(f, a) = acc * res(r_hi, r_lo)
    let mut acc = BigRational::one();

    loop {
        let d_hi = r_hi.degree().expect("nonzero");
        let d_lo = r_lo.degree().expect("nonzero");
        let lc = r_lo.leading().expect("nonzero").clone();
        if d_lo == 0 {
            acc *= BigRational::from_integer(num_traits::pow(lc, d_hi));
            break;
        }
        let (q, prem) = r_hi.pseudo_div_rem(&r_lo)?;
        let Some(d_rem) = prem.degree() else {
            return Err(Error::NotCoprime);
        };
        let lc_pow = num_traits::pow(lc.clone(), d_hi - d_lo + 1);
        let s_rem = s_hi.scale(&lc_pow) - &q * &s_lo;
        let g = prem.content_or_zero().gcd(&s_rem.content_or_zero());
        let prem = prem.div_scalar(&g)?;
        let s_rem = s_rem.div_scalar(&g)?;

        // res(r_hi, r_lo) = (-1)^(d_hi d_lo) lc^(d_hi - d_rem) res(r_lo, rem),
        // rem = (g / lc_pow) * prem.
        if (d_hi * d_lo) % 2 == 1 {
            acc = -acc;
        }
        acc *= BigRational::from_integer(num_traits::pow(lc, d_hi - d_rem));
        acc *= num_traits::pow(BigRational::new(g, lc_pow), d_lo);

        r_hi = core::mem::replace(&mut r_lo, prem);
        s_hi = core::mem::replace(&mut s_lo, s_rem);
    }

    if !acc.is_integer() {
        return Err(Error::ClaimViolated("resultant is not integral"));
    }
    let mut resultant = acc.to_integer();
    if (deg_a * deg_f) % 2 == 1 {
        resultant = -resultant;
    }
    let last = r_lo.coeff(0).clone();
    let s_rat = RatPoly::from_int_poly(&s_lo, &last);
    let s = s_rat.scale_to_int(&resultant).ok_or(Error::ClaimViolated(
        "resultant does not clear the Bezout denominators",
    ))?;
    Ok(Bezout {
        resultant,
        s,
        s_rat,
    })
}
