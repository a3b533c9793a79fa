use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use super::GfError;

/// An element of the prime field F_p, p an odd prime. The modulus travels
/// with the value; mixing moduli is a programming error and panics.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    value: u64,
    p: u64,
}

impl Fp {
    pub fn new(value: i128, p: u64) -> Self {
        debug_assert!(p > 2, "modulus must be an odd prime");
        let m = p as i128;
        Fp {
            value: (value.rem_euclid(m)) as u64,
            p,
        }
    }

    pub fn zero(p: u64) -> Self {
        Fp::new(0, p)
    }

    pub fn one(p: u64) -> Self {
        Fp::new(1, p)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(self) -> Result<Self, GfError> {
        fp_inv(self)
    }

    /// Euler criterion. Zero counts as a square.
    pub fn is_square(self) -> bool {
        self.is_zero() || self.pow((self.p - 1) / 2).value == 1
    }

    /// A square root found by exhaustive search, if one exists. Moduli here
    /// stay small enough that this beats carrying Tonelli-Shanks around.
    pub fn sqrt(self) -> Option<Self> {
        (0..self.p)
            .map(|r| Fp::new(r as i128, self.p))
            .find(|r| *r * *r == self)
    }

    fn check(self, other: Fp) {
        assert_eq!(self.p, other.p, "mixed moduli {} and {}", self.p, other.p);
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check(rhs);
        let mut v = self.value + rhs.value;
        if v >= self.p {
            v -= self.p;
        }
        Fp {
            value: v,
            p: self.p,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.check(rhs);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.p - rhs.value
        };
        Fp {
            value: v,
            p: self.p,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp {
            value: ((self.value as u128 * rhs.value as u128) % self.p as u128) as u64,
            p: self.p,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::zero(self.p) - self
    }
}

impl AddAssign for Fp {
    fn add_assign(&mut self, rhs: Fp) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fp {
    fn sub_assign(&mut self, rhs: Fp) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fp {
    fn mul_assign(&mut self, rhs: Fp) {
        *self = *self * rhs;
    }
}

/// Inverse via the extended Euclidean algorithm.
pub fn fp_inv(x: Fp) -> Result<Fp, GfError> {
    if x.is_zero() {
        return Err(GfError::ZeroInverse { p: x.p });
    }
    let (mut r0, mut r1) = (x.p as i128, x.value as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "modulus must be prime");
    Ok(Fp::new(t0, x.p))
}

/// Types with a multiplicative structure whose element orders we can probe.
pub trait UnitLike: Clone + PartialEq {
    fn is_zero_elem(&self) -> bool;
    fn is_one_elem(&self) -> bool;
    fn mul_elem(&self, other: &Self) -> Self;
}

impl UnitLike for Fp {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn is_one_elem(&self) -> bool {
        self.value == 1
    }
    fn mul_elem(&self, other: &Self) -> Self {
        *self * *other
    }
}

/// Least n >= 1 with x^n = 1, found by repeated multiplication. The caller
/// supplies the bound (p-1 for F_p, p^2-1 for the quadratic extension).
pub fn multiplicative_order<T: UnitLike>(x: &T, bound: u64) -> Result<u64, GfError> {
    if x.is_zero_elem() {
        return Err(GfError::NotAUnit);
    }
    let mut acc = x.clone();
    for n in 1..=bound {
        if acc.is_one_elem() {
            return Ok(n);
        }
        acc = acc.mul_elem(x);
    }
    Err(GfError::OrderExceedsBound { bound })
}
