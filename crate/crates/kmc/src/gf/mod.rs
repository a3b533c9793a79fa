//! Exact arithmetic kernel: the prime field F_p, its quadratic extension,
//! 2x2 matrices, sparse bivariate polynomials, and the bigraded algebra
//! `S = F_p[v,v'] (x) E(u,u')`.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so everything here is safe to use from multiple threads.

mod fp;
mod fp2;
mod mat2;
mod poly2;
mod selem;

pub use fp::{fp_inv, multiplicative_order, Fp, UnitLike};
pub use fp2::{quadratic_roots, Fp2, Fp2Ctx, QuadraticRoots};
pub use mat2::{generate_group, Mat2, MatFp};
pub use poly2::Poly2;
pub use selem::{ExtBasis, SElem, EXT_BASES};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("zero has no multiplicative inverse modulo {p}")]
    ZeroInverse { p: u64 },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("multiplicative order exceeds bound {bound}")]
    OrderExceedsBound { bound: u64 },
    #[error("X^2 - {trace}X + {norm} is reducible over F_{p}, not a field extension")]
    ReducibleMinpoly { trace: u64, norm: u64, p: u64 },
    #[error("matrix is singular modulo {p}")]
    SingularMatrix { p: u64 },
    #[error("group closure exceeded cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
}

/// Deterministic primality test by trial division; adequate for the small
/// moduli used throughout.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Checks that `p` is an odd prime, the standing assumption on the
/// coefficient field.
pub fn check_odd_prime(p: u64) -> Result<(), GfError> {
    if p > 2 && is_prime(p) {
        Ok(())
    } else {
        Err(GfError::NotOddPrime(p))
    }
}
