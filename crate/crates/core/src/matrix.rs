//! The reduction matrix `R_M`: the `phi(M) x M` matrix whose column `j` holds
//! the coefficients of `x^j mod Phi_M`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::modulus::{make_modulus, CycloModulus, Shape};

/// Column groups `I | B1 | B2 | B3` of `R_pq` for squarefree `M = pq`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocks {
    pub identity: Range<usize>,
    pub b1: Range<usize>,
    pub b2: Range<usize>,
    pub b3: Range<usize>,
}

impl Blocks {
    fn for_pq(p: usize, q: usize) -> Self {
        let phi = (p - 1) * (q - 1);
        Blocks {
            identity: 0..phi,
            b1: phi..phi + p - 1,
            b2: phi + p - 1..phi + q,
            b3: phi + q..p * q,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionMatrix {
    modulus: CycloModulus,
    entries: Arc<[i8]>,
    blocks: Option<Blocks>,
}

impl ReductionMatrix {
    pub fn modulus(&self) -> &CycloModulus {
        &self.modulus
    }

    pub fn rows(&self) -> usize {
        self.modulus.phi()
    }

    pub fn cols(&self) -> usize {
        self.modulus.m()
    }

    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.entries[row * self.cols() + col]
    }

    pub fn row(&self, row: usize) -> &[i8] {
        let m = self.cols();
        &self.entries[row * m..(row + 1) * m]
    }

    pub fn column(&self, col: usize) -> Vec<i8> {
        (0..self.rows()).map(|i| self.get(i, col)).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows())
            .map(|i| self.row(i).iter().map(|&e| i64::from(e)).collect())
            .collect()
    }

    /// Defined only for squarefree two-prime moduli.
    pub fn blocks(&self) -> Option<&Blocks> {
        self.blocks.as_ref()
    }
}

/// `R_M` with block metadata when `M = pq` is squarefree.
pub fn reduction_matrix(modulus: &CycloModulus) -> ReductionMatrix {
    let blocks = match modulus.shape() {
        Shape::TwoPrime { p, s: 1, q, t: 1 } => Some(Blocks::for_pq(p as usize, q as usize)),
        _ => None,
    };
    ReductionMatrix {
        modulus: modulus.clone(),
        entries: modulus.matrix_entries().clone(),
        blocks,
    }
}

/// Row-major `A (x) I_n` for a row-major `rows x cols` matrix `A`.
pub fn kronecker_with_identity(a: &[i8], rows: usize, cols: usize, n: usize) -> Vec<i8> {
    let out_cols = cols * n;
    let mut out = vec![0i8; rows * n * out_cols];
    for i in 0..rows {
        for j in 0..cols {
            let v = a[i * cols + j];
            if v == 0 {
                continue;
            }
            for d in 0..n {
                out[(i * n + d) * out_cols + j * n + d] = v;
            }
        }
    }
    out
}

/// Does `R_M` equal `R_rad(M) (x) I_(M / rad(M))`?
pub fn kron_check(modulus: &CycloModulus) -> Result<bool> {
    let shape = modulus.shape();
    if shape.is_squarefree() {
        return Err(Error::NotApplicable("modulus is squarefree"));
    }
    let base = make_modulus(shape.radical())?;
    let expected = kronecker_with_identity(
        base.matrix_entries(),
        base.phi(),
        base.m(),
        shape.inflation() as usize,
    );
    Ok(expected[..] == modulus.matrix_entries()[..])
}
