//! Assembly of the mod-p cohomology answer: exact Poincare-series
//! arithmetic, the cohomology of the Levi subgroups by congruence class of
//! q mod p, the constants lambda and mu, and the graded-module presentation
//! with its verification pass.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::gf::{check_odd_prime, Fp, GfError, SElem};
use crate::invariants::{
    canonical_generators, relative_invariants, InvariantsError, RelativeInvariants,
};
use crate::roots::Gcm2;
use crate::weylrep::{
    dihedral_order_m, prime_power_base, valuation, ExtNat, KmData, PadicInvariants, RepClass,
    RepType, WeylError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("series expansion turns negative at degree {degree}")]
    NegativeCoefficient { degree: u32 },
    #[error("q is congruent to 1 mod p but p divides ab(ab-4); no answer is computed")]
    UnsupportedCase,
    #[error("operation requires p prime to ab(ab-4)")]
    NotTypeVI,
    #[error("q must be a prime power with characteristic different from p")]
    BadFieldOrder,
    #[error("presentation verification fails: {item}")]
    VerificationFailure { item: String },
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// Rational Poincare series: an integer-coefficient numerator over a
/// product of factors (1 - t^e), expanded exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincareSeries {
    numerator: BTreeMap<u32, i64>,
    denominator_factors: Vec<u32>,
}

impl PoincareSeries {
    pub fn new(numerator: &[(u32, i64)], denominator_factors: &[u32]) -> Self {
        let mut num = BTreeMap::new();
        for &(d, c) in numerator {
            let e = num.entry(d).or_insert(0i64);
            *e += c;
            if *e == 0 {
                num.remove(&d);
            }
        }
        let mut den = denominator_factors.to_vec();
        den.sort_unstable();
        PoincareSeries {
            numerator: num,
            denominator_factors: den,
        }
    }

    pub fn numerator(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.numerator.iter().map(|(&d, &c)| (d, c))
    }

    pub fn denominator_factors(&self) -> &[u32] {
        &self.denominator_factors
    }

    /// Sum of two series over the same denominator factors.
    pub fn add(&self, other: &PoincareSeries) -> PoincareSeries {
        assert_eq!(
            self.denominator_factors, other.denominator_factors,
            "series sums need a common denominator"
        );
        let mut terms: Vec<(u32, i64)> = self.numerator().collect();
        terms.extend(other.numerator());
        PoincareSeries::new(&terms, &self.denominator_factors)
    }

    /// Multiply by t^k (a degree shift).
    pub fn shift(&self, k: u32) -> PoincareSeries {
        let terms: Vec<(u32, i64)> = self.numerator().map(|(d, c)| (d + k, c)).collect();
        PoincareSeries::new(&terms, &self.denominator_factors)
    }

    /// Coefficients up to degree n, by exact geometric-series accumulation.
    /// Errors if any final coefficient is negative, which signals that the
    /// series does not come from a graded vector space.
    pub fn expand(&self, n: u32) -> Result<Vec<i64>, CohomologyError> {
        let len = n as usize + 1;
        let mut coef = vec![0i64; len];
        for (d, c) in self.numerator() {
            if (d as usize) < len {
                coef[d as usize] += c;
            }
        }
        // dividing by (1 - t^e) is the cumulative sum with stride e
        for &e in &self.denominator_factors {
            let e = e as usize;
            for k in e..len {
                coef[k] += coef[k - e];
            }
        }
        if let Some(d) = coef.iter().position(|&c| c < 0) {
            return Err(CohomologyError::NegativeCoefficient { degree: d as u32 });
        }
        Ok(coef)
    }
}

/// dim S_n = n + 1: the series (1+t)^2 / (1-t^2)^2.
pub fn series_s() -> PoincareSeries {
    PoincareSeries::new(&[(0, 1), (1, 2), (2, 1)], &[2, 2])
}

/// Invariants of a single reflection: (1+t)(1+t^3) / ((1-t^2)(1-t^4)).
pub fn series_reflection_invariants() -> PoincareSeries {
    PoincareSeries::new(&[(0, 1), (1, 1), (3, 1), (4, 1)], &[2, 4])
}

/// S^W for a type VI group: (1+t^3)(1+t^{2m-1}) / ((1-t^4)(1-t^{2m})).
pub fn series_dihedral_invariants(m: u64) -> PoincareSeries {
    let m = m as u32;
    PoincareSeries::new(
        &[(0, 1), (3, 1), (2 * m - 1, 1), (2 * m + 2, 1)],
        &[4, 2 * m],
    )
}

/// Coker(phi): (t^2 + t^3 + t^{2m-1} + t^{2m}) / ((1-t^4)(1-t^{2m})).
pub fn series_coker(m: u64) -> PoincareSeries {
    let m = m as u32;
    PoincareSeries::new(&[(2, 1), (3, 1), (2 * m - 1, 1), (2 * m, 1)], &[4, 2 * m])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeviCase {
    /// q not congruent to +-1 mod p: trivial coefficients.
    Trivial,
    /// q = 1 mod p: invariants of the reflection acting on H^*(BT).
    InvariantsOfReflection,
    /// q = -1 mod p: a polynomial generator in degree 4 and an exterior one
    /// in degree 3.
    ExteriorPolynomial,
}

/// Descriptor of H^*(BH; F_p) for a Levi subgroup H over F_q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviDescriptor {
    pub case: LeviCase,
    pub polynomial_degrees: Vec<u32>,
    pub exterior_degrees: Vec<u32>,
    /// Height r of the secondary Bockstein: nu_p(q - 1) or nu_p(q + 1) in
    /// the respective nontrivial cases.
    pub bockstein_height: u32,
}

/// Cohomology of a Levi subgroup by the congruence class of q mod p.
pub fn levi_cohomology(q: u64, p: u64) -> Result<LeviDescriptor, CohomologyError> {
    check_odd_prime(p)?;
    if q.is_multiple_of(p) {
        return Err(CohomologyError::BadFieldOrder);
    }
    let r = q % p;
    let fin = |v: ExtNat| match v {
        ExtNat::Fin(k) => k,
        ExtNat::Inf => unreachable!("valuation of a positive integer"),
    };
    let desc = if r == 1 {
        LeviDescriptor {
            case: LeviCase::InvariantsOfReflection,
            polynomial_degrees: vec![2, 4],
            exterior_degrees: vec![1, 3],
            bockstein_height: fin(valuation(p, q as i128 - 1)),
        }
    } else if r == p - 1 {
        LeviDescriptor {
            case: LeviCase::ExteriorPolynomial,
            polynomial_degrees: vec![4],
            exterior_degrees: vec![3],
            bockstein_height: fin(valuation(p, q as i128 + 1)),
        }
    } else {
        LeviDescriptor {
            case: LeviCase::Trivial,
            polynomial_degrees: vec![],
            exterior_degrees: vec![],
            bockstein_height: 0,
        }
    };
    Ok(desc)
}

/// The constants (lambda, mu): (1, 1) when p = 1 mod m, and
/// (ab(ab-4), ab(ab-4)) resp. (ab(ab-4), -1) for even resp. odd m when
/// p = -1 mod m.
pub fn lambda_mu(m: u64, p: u64, gcm: &Gcm2) -> Result<(Fp, Fp), CohomologyError> {
    let ab = gcm.ab() as i128;
    if valuation(p, ab * (ab - 4)).is_positive() {
        return Err(CohomologyError::NotTypeVI);
    }
    let disc = Fp::new(ab * (ab - 4), p);
    // consistency with the canonical-basis constant gamma^2 - 4
    let gamma_small = Fp::new(ab - 2, p);
    debug_assert_eq!(gamma_small * gamma_small - Fp::new(4, p), disc);
    let pair = if (p - 1).is_multiple_of(m) {
        (Fp::one(p), Fp::one(p))
    } else if (p + 1).is_multiple_of(m) {
        let mu = if m.is_multiple_of(2) {
            disc
        } else {
            -Fp::one(p)
        };
        (disc, mu)
    } else {
        return Err(CohomologyError::NotTypeVI);
    };
    Ok(pair)
}

/// The five module generators over S^W.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GenName {
    One,
    Alpha3,
    Alpha4,
    J2m,
    J2mPlus1,
}

impl GenName {
    pub fn degree(self, m: u64) -> u32 {
        match self {
            GenName::One => 0,
            GenName::Alpha3 => 3,
            GenName::Alpha4 => 4,
            GenName::J2m => 2 * m as u32,
            GenName::J2mPlus1 => 2 * m as u32 + 1,
        }
    }

    pub fn label(self, m: u64) -> String {
        match self {
            GenName::One => "1".to_string(),
            GenName::Alpha3 => "alpha_3".to_string(),
            GenName::Alpha4 => "alpha_4".to_string(),
            GenName::J2m => format!("J_{}", 2 * m),
            GenName::J2mPlus1 => format!("J_{}", 2 * m + 1),
        }
    }
}

/// One summand c * x_4^{e4} x_{2m}^{e2m} y_3^{eps3} y_{2m-1}^{eps} * gen of
/// a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelTerm {
    pub coeff: Fp,
    pub x4: u32,
    pub x2m: u32,
    pub y3: bool,
    pub y2m1: bool,
    pub gen: GenName,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub label: &'static str,
    pub terms: Vec<RelTerm>,
}

/// Descriptor of the coefficient ring S^W = F_p[x_4, x_{2m}] (x)
/// E(y_3, y_{2m-1}).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientRing {
    pub polynomial_degrees: [u32; 2],
    pub exterior_degrees: [u32; 2],
}

/// The graded S^W-module presentation of the cohomology ring in the
/// stable case: generators 1, alpha_3, alpha_4, J_{2m}, J_{2m+1}, the eight
/// relations, and the rule that all products among the positive-degree
/// generators vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub p: u64,
    pub q: u64,
    pub m: u64,
    /// Gamma mod p; kept so the verification pass can rebuild the
    /// canonical generators.
    pub gamma: Fp,
    pub lambda: Fp,
    pub mu: Fp,
    pub coefficient_ring: CoefficientRing,
    pub generators: Vec<(GenName, u32)>,
    pub relations: Vec<Relation>,
    /// All pairwise products of the positive-degree module generators are
    /// zero.
    pub products_vanish: bool,
}

/// One copy of `F_p[x_4] (x) E(y_3)`; the wedge answer pairs two of these by
/// equal augmentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeDescriptor {
    pub p: u64,
    /// Generators of both copies, names suffixed by the copy index.
    pub generators: Vec<(String, u32)>,
    pub bockstein_height: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BgCohomology {
    /// q not congruent to +-1 mod p.
    TrivialFp,
    /// q = -1 mod p: two copies of `F_p[x_4] (x) E(y_3)` glued along the
    /// augmentation.
    WedgeSum(WedgeDescriptor),
    /// q = 1 mod p under the stability hypothesis.
    Presented(Presentation),
}

fn build_relations(m: u64, p: u64, lambda: Fp, mu: Fp) -> Vec<Relation> {
    let one = Fp::one(p);
    let m_fp = Fp::new(m as i128, p);
    let two = Fp::new(2, p);
    let two_m2_mu = two * m_fp * m_fp * mu;
    let m_lambda = m_fp * lambda;
    let t = |coeff: Fp, x4: u32, x2m: u32, y3: bool, y2m1: bool, gen: GenName| RelTerm {
        coeff,
        x4,
        x2m,
        y3,
        y2m1,
        gen,
    };
    vec![
        Relation {
            label: "(1a)",
            terms: vec![t(one, 0, 0, true, false, GenName::Alpha3)],
        },
        Relation {
            label: "(1b)",
            terms: vec![t(one, 0, 0, false, true, GenName::Alpha3)],
        },
        Relation {
            label: "(2a)",
            terms: vec![
                t(two, 1, 0, false, false, GenName::Alpha3),
                t(-one, 0, 0, true, false, GenName::Alpha4),
            ],
        },
        Relation {
            label: "(2b)",
            terms: vec![
                t(m_fp, 0, 1, false, false, GenName::Alpha3),
                t(-one, 0, 0, false, true, GenName::Alpha4),
            ],
        },
        Relation {
            label: "(3a)",
            terms: vec![
                t(one, 0, 0, true, false, GenName::J2m),
                t(-m_lambda, 0, 1, false, false, GenName::Alpha3),
            ],
        },
        Relation {
            label: "(3b)",
            terms: vec![
                t(one, 0, 0, false, true, GenName::J2m),
                t(-two_m2_mu, m as u32 - 1, 0, false, false, GenName::Alpha3),
            ],
        },
        Relation {
            label: "(4a)",
            terms: vec![
                t(one, 0, 0, true, false, GenName::J2mPlus1),
                t(m_lambda, 0, 1, false, false, GenName::Alpha4),
                t(-two, 1, 0, false, false, GenName::J2m),
            ],
        },
        Relation {
            label: "(4b)",
            terms: vec![
                t(one, 0, 0, false, true, GenName::J2mPlus1),
                t(two_m2_mu, m as u32 - 1, 0, false, false, GenName::Alpha4),
                t(-m_fp, 0, 1, false, false, GenName::J2m),
            ],
        },
    ]
}

/// The full answer for H^*(BG; F_p), dispatched on q mod p. The stable case
/// q = 1 mod p requires p prime to ab(ab-4) and emits the presentation;
/// without that hypothesis the outcome is an explicit UnsupportedCase error.
pub fn bg_cohomology(d: &KmData, p: u64, q: u64) -> Result<BgCohomology, CohomologyError> {
    check_odd_prime(p)?;
    match prime_power_base(q) {
        Some(l) if l != p => {}
        _ => return Err(CohomologyError::BadFieldOrder),
    }
    let r = q % p;
    if r != 1 && r != p - 1 {
        return Ok(BgCohomology::TrivialFp);
    }
    if r == p - 1 {
        let height = match valuation(p, q as i128 + 1) {
            ExtNat::Fin(k) => k,
            ExtNat::Inf => unreachable!(),
        };
        return Ok(BgCohomology::WedgeSum(WedgeDescriptor {
            p,
            generators: vec![
                ("x4_1".to_string(), 4),
                ("y3_1".to_string(), 3),
                ("x4_2".to_string(), 4),
                ("y3_2".to_string(), 3),
            ],
            bockstein_height: height,
        }));
    }
    // q = 1 mod p: stability hypothesis required
    let gcm = d.gcm;
    let ab = gcm.ab() as i128;
    if valuation(p, ab * (ab - 4)).is_positive() {
        return Err(CohomologyError::UnsupportedCase);
    }
    let m = dihedral_order_m(&gcm, p)?;
    let (lambda, mu) = lambda_mu(m, p, &gcm)?;
    let gamma = Fp::new(ab, p) * Fp::new(4, p).inv()?;
    let m32 = m as u32;
    let generators = vec![
        (GenName::One, 0),
        (GenName::Alpha3, 3),
        (GenName::Alpha4, 4),
        (GenName::J2m, 2 * m32),
        (GenName::J2mPlus1, 2 * m32 + 1),
    ];
    Ok(BgCohomology::Presented(Presentation {
        p,
        q,
        m,
        gamma,
        lambda,
        mu,
        coefficient_ring: CoefficientRing {
            polynomial_degrees: [4, 2 * m32],
            exterior_degrees: [3, 2 * m32 - 1],
        },
        generators,
        relations: build_relations(m, p, lambda, mu),
        products_vanish: true,
    }))
}

#[derive(Debug, Clone)]
pub struct PresentationReport {
    pub n_max: u32,
    pub series_checked_to: u32,
    pub relations_verified: usize,
}

/// Classification record reconstructed from presentation data.
fn type_vi_class(m: u64) -> RepClass {
    RepClass {
        rep_type: RepType::VI,
        m: Some(m),
        swapped: false,
        group_order: 2 * m,
    }
}

fn substitute_term(
    term: &RelTerm,
    pair_f: &crate::gf::Poly2,
    pair_g: &crate::gf::Poly2,
    y3: &SElem,
    y2m1: &SElem,
    r: &RelativeInvariants,
    p: u64,
) -> SElem {
    // module generators map to their cokernel representatives, one degree
    // down: alpha_3 -> alpha, alpha_4 -> alpha', J_{2m} -> J', J_{2m+1} -> J
    let genimg = match term.gen {
        GenName::One => SElem::one(p),
        GenName::Alpha3 => r.alpha.clone(),
        GenName::Alpha4 => r.alpha_prime.clone(),
        GenName::J2m => r.jacobian_prime.clone(),
        GenName::J2mPlus1 => SElem::from_poly(r.jacobian.clone()),
    };
    let mut acc = genimg
        .mul_poly(&pair_f.pow(term.x4))
        .mul_poly(&pair_g.pow(term.x2m))
        .scale(term.coeff);
    if term.y3 {
        acc = y3.mul(&acc);
    }
    if term.y2m1 {
        acc = y2m1.mul(&acc);
    }
    acc
}

/// Verification pass for a presentation:
/// (i) the Poincare series of the free module on the generator degrees
///     {0, 3, 2m-1, 2m+2} + {3, 4, 2m, 2m+1} equals PS(S^W) + t PS(coker)
///     up to n_max;
/// (ii) every relation becomes an exact identity in S under the
///      substitution alpha_3 -> alpha, alpha_4 -> alpha', J_{2m} -> J',
///      J_{2m+1} -> J, y_i -> d(x_i);
/// (iii) every relation is homogeneous.
pub fn verify_presentation(
    pres: &Presentation,
    n_max: u32,
) -> Result<PresentationReport, CohomologyError> {
    let m = pres.m;
    let m32 = m as u32;
    let p = pres.p;

    // (i) series bookkeeping
    let free_module = PoincareSeries::new(
        &[
            (0, 1),
            (3, 1),
            (2 * m32 - 1, 1),
            (2 * m32 + 2, 1),
            (3, 1),
            (4, 1),
            (2 * m32, 1),
            (2 * m32 + 1, 1),
        ],
        &[4, 2 * m32],
    );
    let expected = series_dihedral_invariants(m).add(&series_coker(m).shift(1));
    let lhs = free_module.expand(n_max)?;
    let rhs = expected.expand(n_max)?;
    if lhs != rhs {
        return Err(CohomologyError::VerificationFailure {
            item: "Poincare series of the free module".to_string(),
        });
    }

    // (iii) homogeneity
    for rel in &pres.relations {
        let degrees: Vec<u32> = rel
            .terms
            .iter()
            .map(|t| {
                4 * t.x4
                    + 2 * m32 * t.x2m
                    + if t.y3 { 3 } else { 0 }
                    + if t.y2m1 { 2 * m32 - 1 } else { 0 }
                    + t.gen.degree(m)
            })
            .collect();
        if degrees.windows(2).any(|w| w[0] != w[1]) {
            return Err(CohomologyError::VerificationFailure {
                item: format!("relation {} is not homogeneous", rel.label),
            });
        }
    }

    // (ii) exact identities in S
    let cls = type_vi_class(m);
    let pair = canonical_generators(&cls, p, pres.gamma)?;
    let r = relative_invariants(&pair, m)?;
    let y3 = crate::invariants::derivation_d(&SElem::from_poly(pair.f.clone()));
    let y2m1 = crate::invariants::derivation_d(&SElem::from_poly(pair.g.clone()));
    for rel in &pres.relations {
        let mut acc = SElem::zero(p);
        for term in &rel.terms {
            acc = acc.add(&substitute_term(term, &pair.f, &pair.g, &y3, &y2m1, &r, p));
        }
        if !acc.is_zero() {
            return Err(CohomologyError::VerificationFailure {
                item: format!("relation {} does not vanish in S", rel.label),
            });
        }
    }

    Ok(PresentationReport {
        n_max,
        series_checked_to: n_max,
        relations_verified: pres.relations.len(),
    })
}

/// Invariants of the p-adic classification restated for callers that only
/// have the defining data.
pub fn classification_of(d: &KmData, p: u64) -> Result<(PadicInvariants, RepClass), WeylError> {
    let inv = crate::weylrep::padic_invariants(d, p)?;
    let cls = crate::weylrep::classify_rep(&inv)?;
    Ok((inv, cls))
}
