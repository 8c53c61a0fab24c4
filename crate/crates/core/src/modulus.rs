//! Validated cyclotomic moduli `Phi_M(x)` for `M = p^s` or `M = p^s q^t`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::ToPrimitive;

use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Factorization shape of a supported modulus. `p < q` always.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    PrimePower { p: u64, s: u32 },
    TwoPrime { p: u64, s: u32, q: u64, t: u32 },
}

impl Shape {
    /// Smallest prime factor.
    pub fn p(&self) -> u64 {
        match *self {
            Shape::PrimePower { p, .. } | Shape::TwoPrime { p, .. } => p,
        }
    }

    pub fn q(&self) -> Option<u64> {
        match *self {
            Shape::TwoPrime { q, .. } => Some(q),
            Shape::PrimePower { .. } => None,
        }
    }

    /// Largest squarefree divisor of `M`.
    pub fn radical(&self) -> u64 {
        match *self {
            Shape::PrimePower { p, .. } => p,
            Shape::TwoPrime { p, q, .. } => p * q,
        }
    }

    /// `M / rad(M)`.
    pub fn inflation(&self) -> u64 {
        match *self {
            Shape::PrimePower { p, s } => p.pow(s - 1),
            Shape::TwoPrime { p, s, q, t } => p.pow(s - 1) * q.pow(t - 1),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.radical() * self.inflation()
    }

    pub fn is_squarefree(&self) -> bool {
        self.inflation() == 1
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Shape::PrimePower { p, s } => write!(f, "{p}^{s}"),
            Shape::TwoPrime { p, s, q, t } => write!(f, "{p}^{s} * {q}^{t}"),
        }
    }
}

/// Classifies `m`, rejecting anything that is not `p^s` or `p^s q^t`.
pub fn classify(m: u64) -> Result<Shape> {
    if m < 2 {
        return Err(Error::UnsupportedModulus(m));
    }
    match factorize(m)[..] {
        [(p, s)] => Ok(Shape::PrimePower { p, s }),
        [(p, s), (q, t)] => Ok(Shape::TwoPrime { p, s, q, t }),
        _ => Err(Error::UnsupportedModulus(m)),
    }
}

/// `Phi_p(x) = 1 + x + ... + x^(p-1)`.
pub fn phi_prime(p: u64) -> IntPoly {
    IntPoly::geometric(p as usize)
}

/// `Phi_M(x)` from the closed forms of the supported shapes.
///
/// Prime powers use `Phi_p(x^(p^(s-1)))`. For two primes `Phi_pq` is the
/// exact quotient `(x^pq - 1) / ((x - 1) Phi_p Phi_q)`, then inflated by
/// `M / pq`.
pub fn cyclotomic(shape: Shape) -> IntPoly {
    let base = match shape {
        Shape::PrimePower { p, .. } => phi_prime(p),
        Shape::TwoPrime { p, q, .. } => {
            let denom = IntPoly::from_i64s(&[-1, 1]) * phi_prime(p) * phi_prime(q);
            IntPoly::xn_minus_one((p * q) as usize)
                .exact_div(&denom)
                .expect("(x - 1) Phi_p Phi_q divides x^pq - 1")
        }
    };
    base.inflate(shape.inflation() as usize)
}

struct Inner {
    m: usize,
    shape: Shape,
    phi: usize,
    poly: IntPoly,
    /// Row-major `phi x M` reduction matrix; column `j` is `x^j mod Phi_M`.
    matrix: Arc<[i8]>,
}

/// A validated modulus `M` with `Phi_M(x)` and its reduction matrix cached.
///
/// Cloning is cheap; all clones share one immutable cache.
#[derive(Clone)]
pub struct CycloModulus(Arc<Inner>);

impl CycloModulus {
    pub fn new(m: u64) -> Result<Self> {
        let shape = classify(m)?;
        let poly = cyclotomic(shape);
        let phi = poly.degree().expect("nonzero");
        let m = m as usize;
        let matrix = build_matrix(&poly, phi, m)?;
        Ok(Self(Arc::new(Inner {
            m,
            shape,
            phi,
            poly,
            matrix,
        })))
    }

    pub fn m(&self) -> usize {
        self.0.m
    }

    pub fn shape(&self) -> Shape {
        self.0.shape
    }

    /// `phi(M) = deg Phi_M`.
    pub fn phi(&self) -> usize {
        self.0.phi
    }

    pub fn poly(&self) -> &IntPoly {
        &self.0.poly
    }

    pub fn p(&self) -> u64 {
        self.0.shape.p()
    }

    pub(crate) fn matrix_entries(&self) -> &Arc<[i8]> {
        &self.0.matrix
    }

    /// `x^k mod Phi_M` as a coefficient column, for `0 <= k < M`.
    pub(crate) fn column(&self, k: usize) -> impl Iterator<Item = i8> + '_ {
        let m = self.m();
        (0..self.phi()).map(move |i| self.0.matrix[i * m + k])
    }

    pub fn same_as(&self, other: &CycloModulus) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.m() == other.m()
    }
}

impl PartialEq for CycloModulus {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for CycloModulus {}

impl fmt::Debug for CycloModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CycloModulus")
            .field("m", &self.m())
            .field("shape", &self.shape())
            .field("phi", &self.phi())
            .finish()
    }
}

/// Validates `m` and builds its modulus.
pub fn make_modulus(m: u64) -> Result<CycloModulus> {
    CycloModulus::new(m)
}

/// Columns by the recurrence `x^(j+1) = x * x^j`, folding the overflow term
/// back with the monic `Phi_M`.
fn build_matrix(poly: &IntPoly, phi: usize, m: usize) -> Result<Arc<[i8]>> {
    let low: Vec<(usize, i64)> = poly
        .terms()
        .filter(|&(i, _)| i < phi)
        .map(|(i, c)| (i, c.to_i64().expect("cyclotomic coefficients are small")))
        .collect();
    let mut entries = vec![0i8; phi * m];
    let mut col = vec![0i64; phi];
    col[0] = 1;
    for j in 0..m {
        for (i, &c) in col.iter().enumerate() {
            entries[i * m + j] = i8::try_from(c).map_err(|_| Error::EntryOutOfRange)?;
        }
        let carry = col[phi - 1];
        col.copy_within(0..phi - 1, 1);
        col[0] = 0;
        if carry != 0 {
            for &(i, c) in &low {
                col[i] -= carry * c;
            }
        }
    }
    Ok(entries.into())
}
