//! Scaled inverses: for nonzero `a` in `Z[x]/Phi_M(x)`, the element `u` with
//! `a * u = c (mod Phi_M)` for the least positive integer `c`.
//!
//! Two routes are provided. The generic route works for any `a` through the
//! resultant and Bezout cofactor of `a` against `Phi_M`. The constructive
//! routes handle `a = x^i - x^j` in closed form and come with a coefficient
//! bound; every constructive result re-checks its own product and bound
//! before it is returned.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
#[cfg(test)]
use num_traits::One;
use num_traits::{Signed, Zero};

use crate::arith::valuation;
use crate::error::{Error, Result};
use crate::modulus::{phi_prime, CycloModulus, Shape};
use crate::poly::{resultant_bezout, IntPoly};
use crate::ring::{monomial_reduce, reduce, RingElement};

/// Which construction produced a [`ScaledInverse`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InverseCase {
    /// Resultant/Bezout route, any nonzero element.
    Generic,
    /// `M = p^s`: scale `p`, bound `p - 1`.
    PrimePower,
    /// `M = p^s q^t`, neither `p^s` nor `q^t` divides `i - j`: scale 1, bound `p - 1`.
    Coprime,
    /// `M = p^s q^t`, `p^s | i - j`: scale `q`, bound `q - 1`.
    PDividesShift,
    /// `M = p^s q^t`, `q^t | i - j`: scale `p`, bound `p - 1`.
    QDividesShift,
}

impl InverseCase {
    pub fn name(&self) -> &'static str {
        match self {
            InverseCase::Generic => "generic",
            InverseCase::PrimePower => "prime-power",
            InverseCase::Coprime => "coprime",
            InverseCase::PDividesShift => "p-divides-shift",
            InverseCase::QDividesShift => "q-divides-shift",
        }
    }
}

impl fmt::Display for InverseCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledInverse {
    pub u: RingElement,
    /// Positive integer `c` with `a * u = c`.
    pub scale: BigInt,
    /// Guaranteed bound on `||u||_inf` for constructive results.
    pub bound: Option<u64>,
    pub case: InverseCase,
}

impl ScaledInverse {
    pub fn norm(&self) -> BigInt {
        self.u.max_norm()
    }
}

/// Scaled inverse of any nonzero element via `res(a, Phi_M)`.
///
/// With `s * a = r (mod Phi_M)` and `d = gcd(r, cont(s))`, the scaled inverse
/// is `s / d` with scale `r / d`. The sign of `d` follows `r` so the scale is
/// positive.
pub fn generic_scaled_inverse(a: &RingElement) -> Result<ScaledInverse> {
    Ok(generic_with_denominator_lcm(a)?.0)
}

/// [`generic_scaled_inverse`] together with the lcm of the denominators of
/// the rational inverse, both from one resultant computation.
pub fn generic_with_denominator_lcm(a: &RingElement) -> Result<(ScaledInverse, BigInt)> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let modulus = a.modulus();
    let bez = resultant_bezout(&a.to_poly(), modulus.poly())?;
    let lcm = bez.s_rat.denominator_lcm();
    let mut d = bez.resultant.gcd(&bez.s.content()?);
    if bez.resultant.is_negative() {
        d = -d;
    }
    let u = reduce(&bez.s.div_scalar(&d)?, modulus);
    let inv = ScaledInverse {
        u,
        scale: &bez.resultant / &d,
        bound: None,
        case: InverseCase::Generic,
    };
    Ok((inv, lcm))
}

/// Least positive `c` such that `c * a^(-1)` is integral: the lcm of the
/// denominators of the rational inverse. Independent of the content route
/// used by [`generic_scaled_inverse`].
pub fn denominator_scale(a: &RingElement) -> Result<BigInt> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let bez = resultant_bezout(&a.to_poly(), a.modulus().poly())?;
    Ok(bez.s_rat.denominator_lcm())
}

/// `x^i - x^j` reduced modulo `Phi_M`.
pub fn binomial_element(i: i64, j: i64, modulus: &CycloModulus) -> RingElement {
    monomial_reduce(i, modulus)
        .sub(&monomial_reduce(j, modulus))
        .expect("same modulus")
}

fn check_range(i: i64, j: i64, modulus: &CycloModulus) -> Result<u64> {
    let m = modulus.m();
    if 0 <= j && j < i && i < m as i64 {
        Ok((i - j) as u64)
    } else {
        Err(Error::BadRange { i, j, m })
    }
}

/// `u = -x^(M - j) v mod Phi_M`, then verify `(x^i - x^j) u = scale` and the bound.
fn finish(
    v: &IntPoly,
    i: i64,
    j: i64,
    modulus: &CycloModulus,
    scale: u64,
    bound: u64,
    case: InverseCase,
) -> Result<ScaledInverse> {
    let m = modulus.m() as i64;
    let u = reduce(v, modulus).mul_monomial(m - j).neg();
    let scale = BigInt::from(scale);
    let prod = u.mul_monomial(i).sub(&u.mul_monomial(j))?;
    if !prod.is_constant(&scale) {
        return Err(Error::ClaimViolated("(x^i - x^j) u is not the scale"));
    }
    if u.max_norm() > BigInt::from(bound) {
        return Err(Error::ClaimViolated("||u|| exceeds the guaranteed bound"));
    }
    Ok(ScaledInverse {
        u,
        scale,
        bound: Some(bound),
        case,
    })
}

/// `v = (Phi_M(x^beta) - p) / (x^(i-j) - 1)` for `M = p^s`, where
/// `i - j = p^alpha beta` with `p` not dividing `beta`.
pub fn prime_power_numerator(i: i64, j: i64, modulus: &CycloModulus) -> Result<IntPoly> {
    let Shape::PrimePower { p, .. } = modulus.shape() else {
        return Err(Error::NotApplicable("modulus is not a prime power"));
    };
    let d = check_range(i, j, modulus)?;
    let beta = d / p.pow(valuation(d, p));
    let num = modulus.poly().inflate(beta as usize) - IntPoly::constant(BigInt::from(p));
    num.exact_div(&IntPoly::xn_minus_one(d as usize))
}

/// The same `v` as [`prime_power_numerator`], summed term by term:
/// `sum_k (p-1-k) [x^(M'k beta) + x^((M'k + p^alpha) beta) + ... + x^((M'k + M' - p^alpha) beta)]`
/// with `M' = p^(s-1)`.
pub fn prime_power_numerator_sum(i: i64, j: i64, modulus: &CycloModulus) -> Result<IntPoly> {
    let Shape::PrimePower { p, s } = modulus.shape() else {
        return Err(Error::NotApplicable("modulus is not a prime power"));
    };
    let d = check_range(i, j, modulus)?;
    let p_alpha = p.pow(valuation(d, p));
    let beta = d / p_alpha;
    let m_prime = p.pow(s - 1);
    let top = ((m_prime * (p - 1) + m_prime - p_alpha) * beta) as usize;
    let mut coeffs = alloc::vec![BigInt::zero(); top + 1];
    for k in 0..p {
        let weight = BigInt::from(p - 1 - k);
        let mut e = m_prime * k;
        while e < m_prime * k + m_prime {
            coeffs[(e * beta) as usize] += &weight;
            e += p_alpha;
        }
    }
    Ok(IntPoly::new(coeffs))
}

/// Scaled inverse of `x^i - x^j` modulo `Phi_(p^s)`: scale `p`, `||u|| <= p - 1`.
pub fn scaled_inverse_prime_power(i: i64, j: i64, modulus: &CycloModulus) -> Result<ScaledInverse> {
    let p = modulus.p();
    let v = prime_power_numerator(i, j, modulus)?;
    finish(&v, i, j, modulus, p, p - 1, InverseCase::PrimePower)
}

/// Which row of the two-prime table applies to the shift `i - j`.
pub fn two_prime_case(i: i64, j: i64, modulus: &CycloModulus) -> Result<InverseCase> {
    let Shape::TwoPrime { p, s, q, t } = modulus.shape() else {
        return Err(Error::NotApplicable("modulus is not of the form p^s q^t"));
    };
    let d = check_range(i, j, modulus)?;
    Ok(if d % p.pow(s) == 0 {
        InverseCase::PDividesShift
    } else if d % q.pow(t) == 0 {
        InverseCase::QDividesShift
    } else {
        InverseCase::Coprime
    })
}

/// The polynomial `v` of the two-prime construction, together with the
/// dispatched case.
pub fn two_prime_numerator(
    i: i64,
    j: i64,
    modulus: &CycloModulus,
) -> Result<(IntPoly, InverseCase)> {
    let case = two_prime_case(i, j, modulus)?;
    let Shape::TwoPrime { p, s, q, t } = modulus.shape() else {
        unreachable!("checked by two_prime_case");
    };
    let d = (i - j) as u64;
    let one = |c: u64| IntPoly::constant(BigInt::from(c));
    let num = match case {
        InverseCase::Coprime => {
            let gamma = d / (p.pow(valuation(d, p)) * q.pow(valuation(d, q)));
            modulus.poly().inflate(gamma as usize) - one(1)
        }
        InverseCase::PDividesShift => {
            // Phi_(q^t)(x^(p^s gamma)) - q
            let ps = p.pow(s);
            let gamma = d / (ps * q.pow(valuation(d, q)));
            phi_prime(q).inflate((q.pow(t - 1) * ps * gamma) as usize) - one(q)
        }
        InverseCase::QDividesShift => {
            let qt = q.pow(t);
            let gamma = d / (qt * p.pow(valuation(d, p)));
            phi_prime(p).inflate((p.pow(s - 1) * qt * gamma) as usize) - one(p)
        }
        _ => unreachable!(),
    };
    Ok((num.exact_div(&IntPoly::xn_minus_one(d as usize))?, case))
}

/// Scaled inverse of `x^i - x^j` modulo `Phi_(p^s q^t)`, dispatched on which
/// prime power divides `i - j`.
pub fn scaled_inverse_two_prime(i: i64, j: i64, modulus: &CycloModulus) -> Result<ScaledInverse> {
    let (v, case) = two_prime_numerator(i, j, modulus)?;
    let p = modulus.p();
    let q = modulus.shape().q().expect("two-prime shape");
    let (scale, bound) = match case {
        InverseCase::Coprime => (1, p - 1),
        InverseCase::PDividesShift => (q, q - 1),
        InverseCase::QDividesShift => (p, p - 1),
        _ => unreachable!(),
    };
    finish(&v, i, j, modulus, scale, bound, case)
}

/// Constructive scaled inverse for whichever shape `modulus` has.
pub fn scaled_inverse(i: i64, j: i64, modulus: &CycloModulus) -> Result<ScaledInverse> {
    match modulus.shape() {
        Shape::PrimePower { .. } => scaled_inverse_prime_power(i, j, modulus),
        Shape::TwoPrime { .. } => scaled_inverse_two_prime(i, j, modulus),
    }
}

/// `(i, j) = (M'(p-1), M'(p-2))` with `M' = M / pq`: the pair whose inverse
/// is shown to have norm at least `p - 2`.
pub fn lower_bound_exponents(modulus: &CycloModulus) -> Result<(i64, i64)> {
    let Shape::TwoPrime { p, .. } = modulus.shape() else {
        return Err(Error::NotApplicable("modulus is not of the form p^s q^t"));
    };
    let m_prime = modulus.shape().inflation() as i64;
    let p = p as i64;
    Ok((m_prime * (p - 1), m_prime * (p - 2)))
}

/// The explicit inverse of `x^(p-1) - x^(p-2)` modulo `Phi_pq`,
/// `Phi_pq + (p-1)(Phi_pq - 1)/(x - 1) - sum_(k=1)^(p-1) (x^(kq-p+2) - 1)/(x - 1)`,
/// inflated by `M / pq`. Its constant coefficient is `-(p - 2)`.
pub fn lower_bound_alternative(modulus: &CycloModulus) -> Result<IntPoly> {
    let Shape::TwoPrime { p, q, .. } = modulus.shape() else {
        return Err(Error::NotApplicable("modulus is not of the form p^s q^t"));
    };
    let phi_pq = crate::modulus::cyclotomic(Shape::TwoPrime { p, s: 1, q, t: 1 });
    let x_minus_one = IntPoly::from_i64s(&[-1, 1]);
    let diff = (phi_pq.clone() - IntPoly::one()).exact_div(&x_minus_one)?;
    let mut acc = phi_pq + diff.scale(&BigInt::from(p - 1));
    for k in 1..p {
        acc = acc - IntPoly::geometric((k * q - p + 2) as usize);
    }
    Ok(acc.inflate(modulus.shape().inflation() as usize))
}

/// One row of an exhaustive sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileRow {
    pub i: i64,
    pub j: i64,
    pub case: InverseCase,
    pub scale: BigInt,
    pub bound: u64,
    pub norm: BigInt,
    /// Minimal scale from the generic route, when requested.
    pub minimal_scale: Option<BigInt>,
}

/// Largest norm seen in one case, with the first pair attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseMaximum {
    pub case: InverseCase,
    pub count: usize,
    pub max_norm: BigInt,
    pub witness: (i64, i64),
    pub max_scale: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormProfile {
    pub m: usize,
    pub rows: Vec<ProfileRow>,
    pub maxima: Vec<CaseMaximum>,
}

impl NormProfile {
    pub fn maximum(&self, case: InverseCase) -> Option<&CaseMaximum> {
        self.maxima.iter().find(|c| c.case == case)
    }

    /// Pairs whose constructive scale differs from the generic minimum.
    pub fn scale_mismatches(&self) -> impl Iterator<Item = &ProfileRow> {
        self.rows
            .iter()
            .filter(|r| r.minimal_scale.as_ref().is_some_and(|c| c != &r.scale))
    }
}

/// Runs the constructive inverse on every `0 <= j < i < M`. With
/// `with_minimal_scale`, also records the generic minimal scale per pair.
pub fn norm_profile(modulus: &CycloModulus, with_minimal_scale: bool) -> Result<NormProfile> {
    let m = modulus.m() as i64;
    let mut rows = Vec::new();
    let mut maxima: Vec<CaseMaximum> = Vec::new();
    for i in 1..m {
        for j in 0..i {
            let inv = scaled_inverse(i, j, modulus)?;
            let norm = inv.norm();
            let minimal_scale = if with_minimal_scale {
                Some(generic_scaled_inverse(&binomial_element(i, j, modulus))?.scale)
            } else {
                None
            };
            match maxima.iter_mut().find(|c| c.case == inv.case) {
                Some(entry) => {
                    entry.count += 1;
                    if norm > entry.max_norm {
                        entry.max_norm = norm.clone();
                        entry.witness = (i, j);
                    }
                    if inv.scale > entry.max_scale {
                        entry.max_scale = inv.scale.clone();
                    }
                }
                None => maxima.push(CaseMaximum {
                    case: inv.case,
                    count: 1,
                    max_norm: norm.clone(),
                    witness: (i, j),
                    max_scale: inv.scale.clone(),
                }),
            }
            rows.push(ProfileRow {
                i,
                j,
                case: inv.case,
                scale: inv.scale,
                bound: inv.bound.expect("constructive"),
                norm,
                minimal_scale,
            });
        }
    }
    maxima.sort_by_key(|c| c.case);
    Ok(NormProfile {
        m: modulus.m(),
        rows,
        maxima,
    })
}

/// Oracle comparison of a constructive and a generic result for the same
/// element: the constructive scale must be a multiple `k` of the generic one
/// and `u_c = k u_g`.
pub fn consistent_with_generic(constructive: &ScaledInverse, generic: &ScaledInverse) -> bool {
    if generic.scale.is_zero() {
        return false;
    }
    let (k, r) = constructive.scale.div_rem(&generic.scale);
    r.is_zero() && k.is_positive() && constructive.u == generic.u.scale(&k)
}

/// Is `scale` the least positive integer `c` admitting an integral `u` with
/// `a u = c`? Checks that no proper divisor of `scale` does, using the
/// rational inverse.
pub fn scale_is_minimal(a: &RingElement, scale: &BigInt) -> Result<bool> {
    let bez = resultant_bezout(&a.to_poly(), a.modulus().poly())?;
    if bez.s_rat.scale_to_int(scale).is_none() {
        return Ok(false);
    }
    // The integers c with c * s_rat integral are exactly the multiples of the lcm.
    Ok(&bez.s_rat.denominator_lcm() == scale)
}
