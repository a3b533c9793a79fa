//! Exact-arithmetic toolkit for rank-2 Kac-Moody data over finite fields.
//!
//! The crate is organized around the pipeline that turns a generalized Cartan
//! matrix `A = (2 -a; -b 2)` with `ab >= 4` into the mod-p cohomology of the
//! associated group:
//!
//! - [`gf`] — arithmetic kernel: F_p, its quadratic extension, 2x2 matrices,
//!   sparse bivariate polynomials and the bigraded algebra
//!   `S = F_p[v,v'] (x) E(u,u')`.
//! - [`roots`] — the infinite rank-2 root system: c_n/d_n recurrences, Weyl
//!   matrices, positive-root enumeration and root-sum classification.
//! - [`weylrep`] — the Weyl action on the weight lattice, its p-adic
//!   invariants, the type I-VI classification mod p, and the arithmetic
//!   witness search.
//! - [`invariants`] — modular invariant theory of the finite dihedral image:
//!   canonical generators, the derivations d and delta, relative invariants,
//!   Jacobian identities and the freeness of Coker(phi).
//! - [`cohomology`] — Poincare series and the assembled presentation of the
//!   cohomology ring.
//! - [`levi`] — structure of the Levi subgroups over F_q: monic/split
//!   classification, base-change matrices and exact-sequence verification.

pub mod cohomology;
pub mod gf;
pub mod invariants;
pub mod levi;
pub mod linalg;
pub mod roots;
pub mod weylrep;
