use std::collections::BTreeSet;
use std::ops::{Add, Mul, Neg, Sub};

use super::fp::Fp;
use super::GfError;

/// Row-major 2x2 matrix `[[a, b], [c, d]]` over any ring with copyable
/// elements. As a group element it acts on column vectors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Mat2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

pub type MatFp = Mat2<Fp>;

impl<T: Copy> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn from_rows(rows: [[T; 2]; 2]) -> Self {
        Mat2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }
}

impl<T> Mat2<T>
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    pub fn mul(&self, rhs: &Mat2<T>) -> Mat2<T> {
        Mat2::new(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        )
    }

    pub fn det(&self) -> T {
        self.a * self.d - self.b * self.c
    }

    pub fn apply(&self, v: (T, T)) -> (T, T) {
        (self.a * v.0 + self.b * v.1, self.c * v.0 + self.d * v.1)
    }
}

impl<T> Mat2<T>
where
    T: Copy + Neg<Output = T>,
{
    pub fn neg(&self) -> Mat2<T> {
        Mat2::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mat2<i128> {
    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    /// Adjugate; `self * adjugate = det * identity`.
    pub fn adjugate(&self) -> Self {
        Mat2::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn reduce_mod(&self, p: u64) -> MatFp {
        Mat2::new(
            Fp::new(self.a, p),
            Fp::new(self.b, p),
            Fp::new(self.c, p),
            Fp::new(self.d, p),
        )
    }
}

impl MatFp {
    pub fn identity_mod(p: u64) -> Self {
        Mat2::new(Fp::one(p), Fp::zero(p), Fp::zero(p), Fp::one(p))
    }

    pub fn modulus(&self) -> u64 {
        self.a.modulus()
    }

    pub fn inv(&self) -> Result<MatFp, GfError> {
        let det = self.det();
        if det.is_zero() {
            return Err(GfError::SingularMatrix { p: self.modulus() });
        }
        let di = det.inv()?;
        Ok(Mat2::new(
            self.d * di,
            -self.b * di,
            -self.c * di,
            self.a * di,
        ))
    }
}

/// Multiplicative closure of a set of invertible generators, in a
/// deterministic sorted order. Errors out past `cap` elements, which guards
/// against feeding in matrices that do not generate a small group.
pub fn generate_group(generators: &[MatFp], cap: usize) -> Result<Vec<MatFp>, GfError> {
    let p = generators
        .first()
        .map(|g| g.modulus())
        .expect("at least one generator");
    let mut seen: BTreeSet<MatFp> = BTreeSet::new();
    seen.insert(MatFp::identity_mod(p));
    let mut frontier: Vec<MatFp> = vec![MatFp::identity_mod(p)];
    while let Some(g) = frontier.pop() {
        for h in generators {
            let gh = g.mul(h);
            if seen.insert(gh) {
                if seen.len() > cap {
                    return Err(GfError::GroupTooLarge { cap });
                }
                frontier.push(gh);
            }
        }
    }
    Ok(seen.into_iter().collect())
}
