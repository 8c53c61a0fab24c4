//! Exact arithmetic in the cyclotomic rings `Z[x]/Phi_M(x)` with `M = p^s` or
//! `M = p^s q^t`.
//!
//! The crate builds scaled inverses of `x^i - x^j` with guaranteed coefficient
//! bounds, cross-checks them against a resultant-based generic construction,
//! exposes executable forms of the structural facts about reduced monomials
//! modulo `Phi_pq`, and computes expansion factors of monomials.
//!
//! `no_std`; only `alloc` is required.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod error;
pub mod expansion;
pub mod matrix;
pub mod modulus;
pub mod poly;
pub mod ring;
pub mod scaled;
pub mod structure;

pub use error::{Error, Result};
pub use expansion::{max_expansion_factor, monomial_expansion_factor, ExpansionReport};
pub use matrix::{kron_check, reduction_matrix, Blocks, ReductionMatrix};
pub use modulus::{make_modulus, CycloModulus, Shape};
pub use poly::{resultant_bezout, Bezout, IntPoly, RatPoly};
pub use ring::{monomial_reduce, reduce, ring_mul, RingElement};
pub use scaled::{
    generic_scaled_inverse, norm_profile, scaled_inverse, scaled_inverse_prime_power,
    scaled_inverse_two_prime, InverseCase, NormProfile, ScaledInverse,
};
