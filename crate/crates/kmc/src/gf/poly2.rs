use std::collections::BTreeMap;
use std::fmt;

use super::fp::Fp;
use super::mat2::MatFp;

/// Sparse polynomial in F_p[v, v']. The key (i, j) is the exponent pair of
/// v^i v'^j; both generators carry cohomological degree 2, so the monomial
/// (i, j) has degree 2(i + j). Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly2 {
    p: u64,
    terms: BTreeMap<(u16, u16), Fp>,
}

impl Poly2 {
    pub fn zero(p: u64) -> Self {
        Poly2 {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(p: u64) -> Self {
        Poly2::monomial(p, 0, 0, Fp::one(p))
    }

    pub fn constant(c: Fp) -> Self {
        Poly2::monomial(c.modulus(), 0, 0, c)
    }

    pub fn monomial(p: u64, i: u16, j: u16, c: Fp) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Poly2 { p, terms }
    }

    /// The generator v.
    pub fn gen_v(p: u64) -> Self {
        Poly2::monomial(p, 1, 0, Fp::one(p))
    }

    /// The generator v'.
    pub fn gen_vp(p: u64) -> Self {
        Poly2::monomial(p, 0, 1, Fp::one(p))
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u16, u16), &Fp)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u16, j: u16) -> Fp {
        self.terms
            .get(&(i, j))
            .copied()
            .unwrap_or_else(|| Fp::zero(self.p))
    }

    pub fn insert(&mut self, i: u16, j: u16, c: Fp) {
        if c.is_zero() {
            self.terms.remove(&(i, j));
        } else {
            self.terms.insert((i, j), c);
        }
    }

    pub fn add_term(&mut self, i: u16, j: u16, c: Fp) {
        let cur = self.coeff(i, j);
        self.insert(i, j, cur + c);
    }

    /// Cohomological degree 2(i + j) of the top monomial, None for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| 2 * (i as u32 + j as u32))
            .max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|&(i, j)| i as u32 + j as u32);
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    pub fn add(&self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&(i, j), &c) in &rhs.terms {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn sub(&self, rhs: &Poly2) -> Poly2 {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Poly2 {
        let mut out = Poly2::zero(self.p);
        for (&(i, j), &c) in &self.terms {
            out.insert(i, j, -c);
        }
        out
    }

    pub fn scale(&self, c: Fp) -> Poly2 {
        let mut out = Poly2::zero(self.p);
        if c.is_zero() {
            return out;
        }
        for (&(i, j), &a) in &self.terms {
            out.insert(i, j, a * c);
        }
        out
    }

    pub fn mul(&self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero(self.p);
        for (&(i1, j1), &c1) in &self.terms {
            for (&(i2, j2), &c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly2 {
        let mut out = Poly2::one(self.p);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative with respect to v.
    pub fn d_dv(&self) -> Poly2 {
        let mut out = Poly2::zero(self.p);
        for (&(i, j), &c) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, c * Fp::new(i as i128, self.p));
            }
        }
        out
    }

    /// Partial derivative with respect to v'.
    pub fn d_dvp(&self) -> Poly2 {
        let mut out = Poly2::zero(self.p);
        for (&(i, j), &c) in &self.terms {
            if j > 0 {
                out.add_term(i, j - 1, c * Fp::new(j as i128, self.p));
            }
        }
        out
    }

    /// Linear substitution by g: v -> g11 v + g21 v', v' -> g12 v + g22 v'
    /// (generator images are the columns of g), extended multiplicatively.
    pub fn act(&self, g: &MatFp) -> Poly2 {
        let p = self.p;
        let img_v = Poly2::linear(p, g.a, g.c);
        let img_vp = Poly2::linear(p, g.b, g.d);
        let mut out = Poly2::zero(p);
        for (&(i, j), &c) in &self.terms {
            let m = img_v.pow(i as u32).mul(&img_vp.pow(j as u32)).scale(c);
            out = out.add(&m);
        }
        out
    }

    fn linear(p: u64, cv: Fp, cvp: Fp) -> Poly2 {
        let mut out = Poly2::zero(p);
        out.insert(1, 0, cv);
        out.insert(0, 1, cvp);
        out
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), &c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            if i > 0 {
                write!(f, "*v^{}", i)?;
            }
            if j > 0 {
                write!(f, "*v'^{}", j)?;
            }
        }
        Ok(())
    }
}
