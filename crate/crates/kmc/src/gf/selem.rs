use std::fmt;

use super::fp::Fp;
use super::mat2::MatFp;
use super::poly2::Poly2;
use super::GfError;

/// Basis of the exterior factor E(u, u'): 1, u, u', uu'. The degree-1
/// generators u, u' square to zero and u*u' = -u'*u = uu'.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ExtBasis {
    One = 0,
    U = 1,
    Up = 2,
    UUp = 3,
}

pub const EXT_BASES: [ExtBasis; 4] = [ExtBasis::One, ExtBasis::U, ExtBasis::Up, ExtBasis::UUp];

impl ExtBasis {
    pub fn degree(self) -> u32 {
        match self {
            ExtBasis::One => 0,
            ExtBasis::U | ExtBasis::Up => 1,
            ExtBasis::UUp => 2,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> ExtBasis {
        EXT_BASES[i]
    }
}

/// Element of the bigraded algebra `S = F_p[v,v'] (x) E(u,u')`, stored as
/// four polynomial components indexed by the exterior basis. Total degree of
/// a monomial is its polynomial degree plus its exterior degree; an element
/// is homogeneous iff all nonzero monomials share one total degree.
#[derive(Clone, PartialEq, Eq)]
pub struct SElem {
    p: u64,
    comps: [Poly2; 4],
}

impl SElem {
    pub fn zero(p: u64) -> Self {
        SElem {
            p,
            comps: [
                Poly2::zero(p),
                Poly2::zero(p),
                Poly2::zero(p),
                Poly2::zero(p),
            ],
        }
    }

    pub fn one(p: u64) -> Self {
        SElem::from_poly(Poly2::one(p))
    }

    /// Embed a polynomial as the exterior-degree-0 part.
    pub fn from_poly(f: Poly2) -> Self {
        let p = f.modulus();
        let mut s = SElem::zero(p);
        s.comps[0] = f;
        s
    }

    pub fn from_component(f: Poly2, e: ExtBasis) -> Self {
        let p = f.modulus();
        let mut s = SElem::zero(p);
        s.comps[e.index()] = f;
        s
    }

    /// The degree-1 generator u.
    pub fn gen_u(p: u64) -> Self {
        SElem::from_component(Poly2::one(p), ExtBasis::U)
    }

    /// The degree-1 generator u'.
    pub fn gen_up(p: u64) -> Self {
        SElem::from_component(Poly2::one(p), ExtBasis::Up)
    }

    /// The degree-2 generator v.
    pub fn gen_v(p: u64) -> Self {
        SElem::from_poly(Poly2::gen_v(p))
    }

    /// The degree-2 generator v'.
    pub fn gen_vp(p: u64) -> Self {
        SElem::from_poly(Poly2::gen_vp(p))
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn component(&self, e: ExtBasis) -> &Poly2 {
        &self.comps[e.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly2::is_zero)
    }

    pub fn add(&self, rhs: &SElem) -> SElem {
        SElem {
            p: self.p,
            comps: [
                self.comps[0].add(&rhs.comps[0]),
                self.comps[1].add(&rhs.comps[1]),
                self.comps[2].add(&rhs.comps[2]),
                self.comps[3].add(&rhs.comps[3]),
            ],
        }
    }

    pub fn sub(&self, rhs: &SElem) -> SElem {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> SElem {
        SElem {
            p: self.p,
            comps: [
                self.comps[0].neg(),
                self.comps[1].neg(),
                self.comps[2].neg(),
                self.comps[3].neg(),
            ],
        }
    }

    pub fn scale(&self, c: Fp) -> SElem {
        SElem {
            p: self.p,
            comps: [
                self.comps[0].scale(c),
                self.comps[1].scale(c),
                self.comps[2].scale(c),
                self.comps[3].scale(c),
            ],
        }
    }

    pub fn mul_poly(&self, f: &Poly2) -> SElem {
        SElem {
            p: self.p,
            comps: [
                self.comps[0].mul(f),
                self.comps[1].mul(f),
                self.comps[2].mul(f),
                self.comps[3].mul(f),
            ],
        }
    }

    /// Graded-commutative product. Polynomial parts multiply commutatively;
    /// the exterior parts follow u*u = u'*u' = 0 and u*u' = -u'*u = uu'.
    pub fn mul(&self, rhs: &SElem) -> SElem {
        let x = &self.comps;
        let y = &rhs.comps;
        let comp1 = x[0].mul(&y[0]);
        let comp_u = x[0].mul(&y[1]).add(&x[1].mul(&y[0]));
        let comp_up = x[0].mul(&y[2]).add(&x[2].mul(&y[0]));
        let comp_uu = x[0]
            .mul(&y[3])
            .add(&x[3].mul(&y[0]))
            .add(&x[1].mul(&y[2]))
            .sub(&x[2].mul(&y[1]));
        SElem {
            p: self.p,
            comps: [comp1, comp_u, comp_up, comp_uu],
        }
    }

    /// Total degree when homogeneous; None for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg: Option<u32> = None;
        for e in EXT_BASES {
            let f = self.component(e);
            for (&(i, j), _) in f.terms() {
                let d = 2 * (i as u32 + j as u32) + e.degree();
                match deg {
                    None => deg = Some(d),
                    Some(d0) if d0 != d => return None,
                    _ => {}
                }
            }
        }
        deg
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Algebra automorphism induced by g acting on the generator pairs
    /// (v, v') and (u, u') by columns; uu' picks up det(g).
    pub fn act(&self, g: &MatFp) -> Result<SElem, GfError> {
        let det = g.det();
        if det.is_zero() {
            return Err(GfError::SingularMatrix { p: self.p });
        }
        let comp1 = self.comps[0].act(g);
        let f1 = self.comps[1].act(g);
        let f2 = self.comps[2].act(g);
        // u -> g11 u + g21 u', u' -> g12 u + g22 u'
        let comp_u = f1.scale(g.a).add(&f2.scale(g.b));
        let comp_up = f1.scale(g.c).add(&f2.scale(g.d));
        let comp_uu = self.comps[3].act(g).scale(det);
        Ok(SElem {
            p: self.p,
            comps: [comp1, comp_u, comp_up, comp_uu],
        })
    }
}

impl fmt::Debug for SElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tags = ["", "*u", "*u'", "*uu'"];
        let mut first = true;
        for e in EXT_BASES {
            let c = self.component(e);
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?}){}", c, tags[e.index()])?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
