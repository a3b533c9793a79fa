use std::fmt;

use super::fp::{Fp, UnitLike};
use super::GfError;

/// The quotient ring `F_p[X]/(X^2 - trace*X + norm)`. When the minimal
/// polynomial is irreducible this is the field F_{p^2} and `theta` (the class
/// of X) is a root of it by construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp2Ctx {
    pub p: u64,
    pub trace: Fp,
    pub norm: Fp,
}

impl Fp2Ctx {
    /// Ring mode: any monic quadratic is accepted.
    pub fn quotient_ring(p: u64, trace: Fp, norm: Fp) -> Self {
        Fp2Ctx { p, trace, norm }
    }

    /// Extension mode: rejects a reducible minimal polynomial.
    pub fn extension(p: u64, trace: Fp, norm: Fp) -> Result<Self, GfError> {
        let ctx = Fp2Ctx { p, trace, norm };
        if ctx.discriminant().is_square() {
            Err(GfError::ReducibleMinpoly {
                trace: trace.value(),
                norm: norm.value(),
                p,
            })
        } else {
            Ok(ctx)
        }
    }

    pub fn discriminant(&self) -> Fp {
        self.trace * self.trace - Fp::new(4, self.p) * self.norm
    }

    /// The class of X.
    pub fn theta(&self) -> Fp2 {
        Fp2::new(Fp::zero(self.p), Fp::one(self.p), *self)
    }

    pub fn embed(&self, c: Fp) -> Fp2 {
        Fp2::new(c, Fp::zero(self.p), *self)
    }

    pub fn zero(&self) -> Fp2 {
        self.embed(Fp::zero(self.p))
    }

    pub fn one(&self) -> Fp2 {
        self.embed(Fp::one(self.p))
    }
}

/// `c0 + c1*theta` in the basis `{1, theta}` of `F_p[X]/(X^2 - trace*X + norm)`.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Fp2 {
    pub c0: Fp,
    pub c1: Fp,
    pub ctx: Fp2Ctx,
}

impl Fp2 {
    pub fn new(c0: Fp, c1: Fp, ctx: Fp2Ctx) -> Self {
        Fp2 { c0, c1, ctx }
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    /// True when the element lies in the base field.
    pub fn in_base_field(&self) -> bool {
        self.c1.is_zero()
    }

    pub fn add(&self, other: &Fp2) -> Fp2 {
        Fp2::new(self.c0 + other.c0, self.c1 + other.c1, self.ctx)
    }

    pub fn sub(&self, other: &Fp2) -> Fp2 {
        Fp2::new(self.c0 - other.c0, self.c1 - other.c1, self.ctx)
    }

    pub fn neg(&self) -> Fp2 {
        Fp2::new(-self.c0, -self.c1, self.ctx)
    }

    /// Multiplication with theta^2 = trace*theta - norm.
    pub fn mul(&self, other: &Fp2) -> Fp2 {
        let hi = self.c1 * other.c1;
        let c0 = self.c0 * other.c0 - hi * self.ctx.norm;
        let c1 = self.c0 * other.c1 + self.c1 * other.c0 + hi * self.ctx.trace;
        Fp2::new(c0, c1, self.ctx)
    }

    pub fn scale(&self, c: Fp) -> Fp2 {
        Fp2::new(self.c0 * c, self.c1 * c, self.ctx)
    }

    /// Galois conjugate: theta -> trace - theta, the other root.
    pub fn conjugate(&self) -> Fp2 {
        Fp2::new(self.c0 + self.c1 * self.ctx.trace, -self.c1, self.ctx)
    }

    /// Norm to F_p: x * conj(x).
    pub fn field_norm(&self) -> Fp {
        let n = self.mul(&self.conjugate());
        debug_assert!(n.c1.is_zero());
        n.c0
    }

    pub fn inv(&self) -> Result<Fp2, GfError> {
        let n = self.field_norm();
        if n.is_zero() {
            return Err(GfError::NotAUnit);
        }
        Ok(self.conjugate().scale(n.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> Fp2 {
        let mut base = *self;
        let mut acc = self.ctx.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}θ (mod {})", self.c0, self.c1, self.ctx.p)
    }
}

impl UnitLike for Fp2 {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn is_one_elem(&self) -> bool {
        self.c1.is_zero() && self.c0.value() == 1
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

/// The two roots of X^2 - trace*X + norm, living in F_p when the discriminant
/// is a square and in the quadratic extension otherwise. A zero discriminant
/// is reported through `double` rather than silently accepted.
#[derive(Clone, Copy, Debug)]
pub struct QuadraticRoots {
    pub roots: (Fp2, Fp2),
    /// Both roots lie in the base field (c1 = 0).
    pub split: bool,
    /// Repeated root; `roots` holds it twice.
    pub double: bool,
}

/// Solve X^2 - trace*X + norm = 0 over F_p (p odd).
pub fn quadratic_roots(trace: Fp, norm: Fp) -> QuadraticRoots {
    let p = trace.modulus();
    let ctx = Fp2Ctx::quotient_ring(p, trace, norm);
    let disc = ctx.discriminant();
    let half = Fp::new(2, p).inv().expect("p is odd");
    if disc.is_zero() {
        let r = ctx.embed(trace * half);
        return QuadraticRoots {
            roots: (r, r),
            split: true,
            double: true,
        };
    }
    if let Some(s) = disc.sqrt() {
        let r1 = ctx.embed((trace + s) * half);
        let r2 = ctx.embed((trace - s) * half);
        QuadraticRoots {
            roots: (r1, r2),
            split: true,
            double: false,
        }
    } else {
        // theta and trace - theta in the extension defined by the quadratic
        let theta = ctx.theta();
        let other = ctx.embed(trace).sub(&theta);
        QuadraticRoots {
            roots: (theta, other),
            split: false,
            double: false,
        }
    }
}
