//! The Weyl action on the rank-2 weight lattice: validation of the defining
//! matrix factorization, the p-adic invariants (Gamma, delta_1, delta_2), the
//! classification of the mod-p image into types I-VI, explicit generation of
//! the finite dihedral image, and the arithmetic witness search.

use thiserror::Error;

use crate::gf::{
    check_odd_prime, generate_group, is_prime, multiplicative_order, quadratic_roots, Fp, GfError,
    Mat2, MatFp,
};
use crate::roots::Gcm2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("smat * nmat does not factor the Cartan matrix, or det constraint fails")]
    BadFactorization,
    #[error("p divides ab(ab-4): the quadratic has a repeated root")]
    DegenerateDiscriminant,
    #[error("no classification row matches the given invariants")]
    InconsistentInvariants,
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// Extended natural number: a p-adic valuation, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExtNat {
    Fin(u32),
    Inf,
}

impl ExtNat {
    pub fn is_zero(self) -> bool {
        self == ExtNat::Fin(0)
    }

    pub fn is_positive(self) -> bool {
        !self.is_zero()
    }
}

impl std::ops::Add for ExtNat {
    type Output = ExtNat;
    fn add(self, other: ExtNat) -> ExtNat {
        match (self, other) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => ExtNat::Fin(a + b),
            _ => ExtNat::Inf,
        }
    }
}

impl std::fmt::Display for ExtNat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtNat::Fin(n) => write!(f, "{n}"),
            ExtNat::Inf => write!(f, "inf"),
        }
    }
}

/// p-adic valuation of an integer, with nu_p(0) = infinity.
pub fn valuation(p: u64, n: i128) -> ExtNat {
    if n == 0 {
        return ExtNat::Inf;
    }
    let p = p as i128;
    let mut n = n.abs();
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    ExtNat::Fin(v)
}

/// The defining data: the Cartan matrix factorization smat * nmat = A with
/// smat rows (s_1, t_1), (s_2, t_2) and nmat columns (n_1, m_1), (n_2, m_2).
/// Only the factorization and det(smat) det(nmat) = 4 - ab are enforced;
/// entries may be zero or negative (nmat = identity is the usual choice).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KmData {
    pub gcm: Gcm2,
    pub smat: Mat2<i128>,
    pub nmat: Mat2<i128>,
}

impl KmData {
    pub fn cartan_matrix(gcm: &Gcm2) -> Mat2<i128> {
        Mat2::new(2, -gcm.a() as i128, -gcm.b() as i128, 2)
    }

    pub fn new(gcm: Gcm2, smat: Mat2<i128>, nmat: Mat2<i128>) -> Result<Self, WeylError> {
        validate_km_data(KmData { gcm, smat, nmat })
    }

    /// The default factorization nmat = identity, smat = A.
    pub fn standard(gcm: Gcm2) -> Self {
        KmData {
            gcm,
            smat: Self::cartan_matrix(&gcm),
            nmat: Mat2::identity(),
        }
    }

    pub fn delta(&self) -> i128 {
        self.smat.det()
    }

    pub fn nabla(&self) -> i128 {
        self.nmat.det()
    }

    /// Row i of smat: (s_i, t_i), i in {1, 2}.
    pub fn st(&self, i: usize) -> (i128, i128) {
        match i {
            1 => (self.smat.a, self.smat.b),
            2 => (self.smat.c, self.smat.d),
            _ => panic!("row index must be 1 or 2"),
        }
    }

    /// Column i of nmat: (n_i, m_i), i in {1, 2}.
    pub fn nm(&self, i: usize) -> (i128, i128) {
        match i {
            1 => (self.nmat.a, self.nmat.c),
            2 => (self.nmat.b, self.nmat.d),
            _ => panic!("column index must be 1 or 2"),
        }
    }
}

/// Check smat * nmat = A and delta * nabla = 4 - ab.
pub fn validate_km_data(d: KmData) -> Result<KmData, WeylError> {
    let a = KmData::cartan_matrix(&d.gcm);
    if d.smat.mul(&d.nmat) != a {
        return Err(WeylError::BadFactorization);
    }
    if d.delta() * d.nabla() != 4 - d.gcm.ab() as i128 {
        return Err(WeylError::BadFactorization);
    }
    Ok(d)
}

/// Matrices of the two reflections on the lattice in the basis (e_1, e_2).
/// Column j of omega_i is the image of e_j:
/// omega_i(e_1) = ((1 - s_i n_i), -s_i m_i), omega_i(e_2) = (-t_i n_i, (1 - t_i m_i)).
pub fn weyl_action_on_lattice(d: &KmData) -> (Mat2<i128>, Mat2<i128>) {
    let omega = |i: usize| {
        let (s, t) = d.st(i);
        let (n, m) = d.nm(i);
        let w = Mat2::new(1 - s * n, -t * n, -s * m, 1 - t * m);
        // s n + t m = 2 from the factorization diagonal makes w an involution
        debug_assert_eq!(w.mul(&w), Mat2::identity());
        w
    };
    (omega(1), omega(2))
}

/// The diagonalizing matrix P_i = (t_i, n_i; -s_i, m_i) of determinant 2
/// with P_i^{-1} omega_i P_i = diag(1, -1).
pub fn diagonalizer(d: &KmData, i: usize) -> Mat2<i128> {
    let (s, t) = d.st(i);
    let (n, m) = d.nm(i);
    Mat2::new(t, n, -s, m)
}

/// The complete invariants of the p-adic representation.
#[derive(Debug, Clone, Copy)]
pub struct PadicInvariants {
    pub p: u64,
    pub gcm: Gcm2,
    /// Gamma = ab/4 reduced mod p.
    pub gamma_mod_p: Fp,
    /// nu_p(Gamma) = nu_p(ab) for odd p.
    pub nu_gamma: ExtNat,
    /// nu_p(Gamma - 1) = nu_p(ab - 4), infinite in the affine case.
    pub nu_gamma_minus_1: ExtNat,
    pub delta1: ExtNat,
    pub delta2: ExtNat,
}

/// Invariants via the closed formulas Gamma = ab/4, delta_1 = nu(a) + nu(Delta),
/// delta_2 = nu(b) + nu(nabla), cross-checked against the general normal-form
/// formulas applied to M = P_2^{-1} P_1 = (1/2)(-a, nabla; -Delta, -b).
pub fn padic_invariants(d: &KmData, p: u64) -> Result<PadicInvariants, WeylError> {
    check_odd_prime(p)?;
    let gcm = d.gcm;
    let ab = gcm.ab() as i128;
    let inv4 = Fp::new(4, p).inv().expect("p odd");
    let gamma_mod_p = Fp::new(ab, p) * inv4;
    let inv = PadicInvariants {
        p,
        gcm,
        gamma_mod_p,
        nu_gamma: valuation(p, ab),
        nu_gamma_minus_1: valuation(p, ab - 4),
        delta1: valuation(p, gcm.a() as i128) + valuation(p, d.delta()),
        delta2: valuation(p, gcm.b() as i128) + valuation(p, d.nabla()),
    };

    // Cross-check through the normal form: with P_i as in `diagonalizer`,
    // the representation is conjugate to omega_1 = diag(1,-1),
    // omega_2 = M^{-1} diag(1,-1) M for M = P_2^{-1} P_1, and then
    // Gamma = x t / det(M), delta_1 = nu(x z), delta_2 = nu(y t) where
    // M = (x y; z t). Here 2 M = adj(P_2) P_1 is integral.
    let num = diagonalizer(d, 2).adjugate().mul(&diagonalizer(d, 1));
    assert_eq!(
        num,
        Mat2::new(
            -(gcm.a() as i128),
            d.nabla(),
            -d.delta(),
            -(gcm.b() as i128)
        ),
        "normal-form matrix must be (-a, nabla; -Delta, -b)"
    );
    let det_num = num.det();
    assert_eq!(det_num, 4, "M = num/2 has determinant 1");
    let gamma_alt = Fp::new(num.a, p) * Fp::new(num.d, p) * Fp::new(det_num, p).inv()?;
    let delta1_alt = valuation(p, num.a * num.c);
    let delta2_alt = valuation(p, num.b * num.d);
    assert_eq!(gamma_alt, inv.gamma_mod_p, "Gamma routes disagree");
    assert_eq!(delta1_alt, inv.delta1, "delta_1 routes disagree");
    assert_eq!(delta2_alt, inv.delta2, "delta_2 routes disagree");

    Ok(inv)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RepType {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl std::fmt::Display for RepType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RepType::I => "I",
            RepType::II => "II",
            RepType::III => "III",
            RepType::IV => "IV",
            RepType::V => "V",
            RepType::VI => "VI",
        };
        write!(f, "{s}")
    }
}

/// Classification record for the mod-p Weyl image W_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepClass {
    pub rep_type: RepType,
    /// Half the dihedral order, only meaningful for type VI.
    pub m: Option<u64>,
    /// Type II inputs with delta_2 = 0 < delta_1 are normalized by the outer
    /// automorphism; the swap is recorded, not silently applied.
    pub swapped: bool,
    pub group_order: u64,
}

/// The unique type row matching the invariants. The consistency relation
/// delta_1 + delta_2 = nu(Gamma) + nu(Gamma - 1) is enforced first.
pub fn classify_rep(inv: &PadicInvariants) -> Result<RepClass, WeylError> {
    if inv.delta1 + inv.delta2 != inv.nu_gamma + inv.nu_gamma_minus_1 {
        return Err(WeylError::InconsistentInvariants);
    }
    let p = inv.p;
    let (d1, d2) = (inv.delta1, inv.delta2);
    let class = if inv.gamma_mod_p.is_zero() {
        match (d1.is_positive(), d2.is_positive()) {
            (true, true) => RepClass {
                rep_type: RepType::I,
                m: None,
                swapped: false,
                group_order: 4,
            },
            (false, true) => RepClass {
                rep_type: RepType::II,
                m: None,
                swapped: false,
                group_order: 4 * p,
            },
            (true, false) => RepClass {
                rep_type: RepType::II,
                m: None,
                swapped: true,
                group_order: 4 * p,
            },
            (false, false) => return Err(WeylError::InconsistentInvariants),
        }
    } else {
        match (d1.is_positive(), d2.is_positive()) {
            (true, true) => RepClass {
                rep_type: RepType::III,
                m: None,
                swapped: false,
                group_order: 2,
            },
            (false, true) => RepClass {
                rep_type: RepType::IV,
                m: None,
                swapped: false,
                group_order: 2 * p,
            },
            (true, false) => RepClass {
                rep_type: RepType::V,
                m: None,
                swapped: false,
                group_order: 2 * p,
            },
            (false, false) => {
                let m = dihedral_order_m(&inv.gcm, p)?;
                RepClass {
                    rep_type: RepType::VI,
                    m: Some(m),
                    swapped: false,
                    group_order: 2 * m,
                }
            }
        }
    };
    Ok(class)
}

/// Multiplicative order m of either root of X^2 - (ab-2)X + 1 over F_{p^2};
/// the dihedral image then has order 2m, and m divides p - 1 or p + 1.
pub fn dihedral_order_m(gcm: &Gcm2, p: u64) -> Result<u64, WeylError> {
    check_odd_prime(p)?;
    let ab = gcm.ab() as i128;
    if valuation(p, ab * (ab - 4)).is_positive() {
        return Err(WeylError::DegenerateDiscriminant);
    }
    let trace = Fp::new(ab - 2, p);
    let roots = quadratic_roots(trace, Fp::one(p));
    debug_assert!(!roots.double);
    let m = if roots.split {
        multiplicative_order(&roots.roots.0.c0, p - 1)?
    } else {
        multiplicative_order(&roots.roots.0, p * p - 1)?
    };
    debug_assert!((p - 1).is_multiple_of(m) || (p + 1).is_multiple_of(m));
    Ok(m)
}

/// The finite image W_p: closure of the reduced reflections under matrix
/// multiplication, in deterministic sorted order. The cap 16p guards
/// against inputs that do not generate a dihedral group of order <= 4p.
pub fn reduce_and_generate(d: &KmData, p: u64) -> Result<Vec<MatFp>, WeylError> {
    check_odd_prime(p)?;
    let (w1, w2) = weyl_action_on_lattice(d);
    let gens = [w1.reduce_mod(p), w2.reduce_mod(p)];
    Ok(generate_group(&gens, 16 * p as usize)?)
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    base %= p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// q = l^k for a prime l? Returns the prime l when so.
pub fn prime_power_base(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    let mut l = 2;
    while l * l <= q {
        if q.is_multiple_of(l) {
            let mut v = q;
            while v.is_multiple_of(l) {
                v /= l;
            }
            return (v == 1).then_some(l);
        }
        l += 1;
    }
    Some(q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Witness {
    pub p: u64,
    pub q: u64,
    pub m: u64,
}

/// Search for (p, q) with p odd prime not dividing ab(ab-4), q a prime power
/// coprime to p, q not congruent to +-1 mod p, and q^m = 1 mod p for
/// m = dihedral_order_m. The result is sorted by (p, q).
pub fn friedlander_witness_search(
    gcm: &Gcm2,
    p_range: (u64, u64),
    q_range: (u64, u64),
) -> Vec<Witness> {
    let mut out = Vec::new();
    let ab = gcm.ab() as i128;
    for p in p_range.0..=p_range.1 {
        if p < 3 || !is_prime(p) {
            continue;
        }
        if valuation(p, ab * (ab - 4)).is_positive() {
            continue;
        }
        let m = dihedral_order_m(gcm, p).expect("discriminant is a unit here");
        for q in q_range.0..=q_range.1 {
            if prime_power_base(q).is_none() || q % p == 0 {
                continue;
            }
            let r = q % p;
            if r == 1 || r == p - 1 {
                continue;
            }
            if pow_mod(q, m, p) == 1 {
                out.push(Witness { p, q, m });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcm(a: i64, b: i64) -> Gcm2 {
        Gcm2::new(a, b).unwrap()
    }

    #[test]
    fn validation_examples() {
        let g = gcm(3, 3);
        assert!(KmData::new(g, KmData::cartan_matrix(&g), Mat2::identity()).is_ok());
        assert!(KmData::new(g, Mat2::identity(), KmData::cartan_matrix(&g)).is_ok());
        assert_eq!(
            KmData::new(g, Mat2::identity(), Mat2::identity()),
            Err(WeylError::BadFactorization)
        );
        let d = KmData::standard(g);
        assert_eq!(d.delta(), 4 - 9);
        assert_eq!(d.nabla(), 1);
    }

    #[test]
    fn lattice_action_matrices() {
        // (3,3), nmat = identity: s_1 = 2, t_1 = -3, s_2 = -3, t_2 = 2
        let d = KmData::standard(gcm(3, 3));
        let (w1, w2) = weyl_action_on_lattice(&d);
        assert_eq!(w1, Mat2::new(-1, 3, 0, 1));
        assert_eq!(w2, Mat2::new(1, 0, 3, -1));
        // involutions
        assert_eq!(w1.mul(&w1), Mat2::identity());
        assert_eq!(w2.mul(&w2), Mat2::identity());
    }

    #[test]
    fn diagonalizer_conjugation() {
        for (a, b) in [(3, 3), (1, 6), (2, 3), (2, 2)] {
            let d = KmData::standard(gcm(a, b));
            let (w1, w2) = weyl_action_on_lattice(&d);
            for (i, w) in [(1, w1), (2, w2)] {
                let p_i = diagonalizer(&d, i);
                assert_eq!(p_i.det(), 2);
                // omega_i P_i = P_i diag(1, -1), avoiding fractions
                let rhs = p_i.mul(&Mat2::new(1, 0, 0, -1));
                assert_eq!(w.mul(&p_i), rhs);
            }
        }
    }

    #[test]
    fn involutions_mod_p() {
        for (a, b) in [(3, 3), (1, 6), (2, 2)] {
            let d = KmData::standard(gcm(a, b));
            let (w1, w2) = weyl_action_on_lattice(&d);
            for p in [5u64, 7, 11] {
                for w in [w1.reduce_mod(p), w2.reduce_mod(p)] {
                    assert_eq!(w.mul(&w), MatFp::identity_mod(p));
                }
            }
        }
    }

    #[test]
    fn invariants_examples() {
        // (3,3), nmat = identity, p = 7: Gamma = 9/4 = 9*2 = 18 = 4 (mod 7)
        let d = KmData::standard(gcm(3, 3));
        let inv = padic_invariants(&d, 7).unwrap();
        assert_eq!(inv.gamma_mod_p, Fp::new(4, 7));
        assert_eq!(inv.delta1, ExtNat::Fin(0));
        assert_eq!(inv.delta2, ExtNat::Fin(0));

        // ab = 0 mod p gives Gamma = 0
        let d = KmData::standard(gcm(5, 5));
        let inv = padic_invariants(&d, 5).unwrap();
        assert!(inv.gamma_mod_p.is_zero());

        // consistency: delta_1 + delta_2 = nu_p(ab(ab-4)) when ab != 4
        for (a, b) in [(3, 3), (1, 6), (2, 3), (5, 5), (1, 5)] {
            let d = KmData::standard(gcm(a, b));
            for p in [3u64, 5, 7, 11] {
                let inv = padic_invariants(&d, p).unwrap();
                let ab = (a * b) as i128;
                assert_eq!(
                    inv.delta1 + inv.delta2,
                    valuation(p, ab * (ab - 4)),
                    "({a},{b}) p={p}"
                );
            }
        }
    }

    #[test]
    fn classify_all_six_types() {
        // I: (5,5) at p=5, nmat = id: Gamma = 0, delta_1 = 1, delta_2 = 1
        let inv = padic_invariants(&KmData::standard(gcm(5, 5)), 5).unwrap();
        let c = classify_rep(&inv).unwrap();
        assert_eq!((c.rep_type, c.group_order), (RepType::I, 4));

        // II: (1,5) at p=5, nmat = id: Gamma = 0, delta_1 = 0, delta_2 = 1
        let inv = padic_invariants(&KmData::standard(gcm(1, 5)), 5).unwrap();
        let c = classify_rep(&inv).unwrap();
        assert_eq!(
            (c.rep_type, c.swapped, c.group_order),
            (RepType::II, false, 20)
        );

        // II swapped: (5,6) at p=5 has delta_1 = nu(5) = 1, delta_2 = 0
        let inv = padic_invariants(&KmData::standard(gcm(5, 6)), 5).unwrap();
        let c = classify_rep(&inv).unwrap();
        assert_eq!((c.rep_type, c.swapped), (RepType::II, true));

        // III: (1,29) at p=5 with a factorization splitting 25 = 5 * 5
        let g = gcm(1, 29);
        let smat = Mat2::new(0, 1, -5, -12);
        let nmat = Mat2::new(1, 2, 2, -1);
        let d = KmData::new(g, smat, nmat).unwrap();
        assert_eq!(d.delta(), 5);
        assert_eq!(d.nabla(), -5);
        let inv = padic_invariants(&d, 5).unwrap();
        let c = classify_rep(&inv).unwrap();
        assert_eq!((c.rep_type, c.group_order), (RepType::III, 2));

        // IV: (2,7) at p=5 with smat = id (delta_1 = 0, delta_2 = 1)
        let g27 = gcm(2, 7);
        let d = KmData::new(g27, Mat2::identity(), KmData::cartan_matrix(&g27)).unwrap();
        let inv = padic_invariants(&d, 5).unwrap();
        let c = classify_rep(&inv).unwrap();
        assert_eq!((c.rep_type, c.group_order), (RepType::IV, 10));

        // V: (2,7) at p=5 with nmat = id (delta_1 = 1, delta_2 = 0)
        let inv = padic_invariants(&KmData::standard(gcm(2, 7)), 5).unwrap();
        let c = classify_rep(&inv).unwrap();
        assert_eq!((c.rep_type, c.group_order), (RepType::V, 10));

        // VI: (3,3) at p=7 with m = 4
        let inv = padic_invariants(&KmData::standard(gcm(3, 3)), 7).unwrap();
        let c = classify_rep(&inv).unwrap();
        assert_eq!((c.rep_type, c.m, c.group_order), (RepType::VI, Some(4), 8));
    }

    /// Classification rows on hand-made invariant records, independent of
    /// any lattice data.
    #[test]
    fn classify_rows_on_raw_invariants() {
        let g = gcm(3, 3);
        let base = |gamma: i128, ng: u32, ng1: u32, d1: u32, d2: u32| PadicInvariants {
            p: 7,
            gcm: g,
            gamma_mod_p: Fp::new(gamma, 7),
            nu_gamma: ExtNat::Fin(ng),
            nu_gamma_minus_1: ExtNat::Fin(ng1),
            delta1: ExtNat::Fin(d1),
            delta2: ExtNat::Fin(d2),
        };
        // Gamma = 0, delta_1 = 1, delta_2 = 2: type I
        let c = classify_rep(&base(0, 3, 0, 1, 2)).unwrap();
        assert_eq!(c.rep_type, RepType::I);
        // Gamma != 0, delta_1 = 0, delta_2 = 3: type IV
        let c = classify_rep(&base(2, 0, 3, 0, 3)).unwrap();
        assert_eq!(c.rep_type, RepType::IV);
        // violating the valuation relation is rejected
        assert_eq!(
            classify_rep(&base(0, 0, 0, 1, 2)),
            Err(WeylError::InconsistentInvariants)
        );
        // Gamma = 0 with both deltas zero matches no row
        assert_eq!(
            classify_rep(&base(0, 0, 0, 0, 0)),
            Err(WeylError::InconsistentInvariants)
        );
    }

    #[test]
    fn affine_case_has_infinite_valuation() {
        // (2,2): Delta = det A = 0, so delta_1 = inf; type V row matches
        let inv = padic_invariants(&KmData::standard(gcm(2, 2)), 7).unwrap();
        assert_eq!(inv.delta1, ExtNat::Inf);
        assert_eq!(inv.nu_gamma_minus_1, ExtNat::Inf);
        let c = classify_rep(&inv).unwrap();
        assert_eq!(c.rep_type, RepType::V);
    }

    #[test]
    fn dihedral_order_examples() {
        // frozen from the repeated-multiplication oracle
        assert_eq!(dihedral_order_m(&gcm(3, 3), 7).unwrap(), 4);
        assert_eq!(dihedral_order_m(&gcm(1, 6), 5).unwrap(), 3);
        // roots of X^2 - 4X + 1 mod 11 are 7 and 8, both of order 10
        assert_eq!(dihedral_order_m(&gcm(1, 6), 11).unwrap(), 10);
        assert_eq!(dihedral_order_m(&gcm(3, 3), 11).unwrap(), 5);
        // degenerate: p | ab
        assert_eq!(
            dihedral_order_m(&gcm(3, 3), 3),
            Err(WeylError::DegenerateDiscriminant)
        );
    }

    #[test]
    fn closure_orders() {
        // (3,3) at p=7: type VI with m = 4, so 8 elements
        let d = KmData::standard(gcm(3, 3));
        let group = reduce_and_generate(&d, 7).unwrap();
        assert_eq!(group.len(), 8);

        // trace of tau mod p is ab - 2
        let (w1, w2) = weyl_action_on_lattice(&d);
        let tau = w1.reduce_mod(7).mul(&w2.reduce_mod(7));
        assert_eq!(tau.a + tau.d, Fp::new(9 - 2, 7));

        // type III data from above: 2 elements
        let g = gcm(1, 29);
        let d3 = KmData::new(g, Mat2::new(0, 1, -5, -12), Mat2::new(1, 2, 2, -1)).unwrap();
        assert_eq!(reduce_and_generate(&d3, 5).unwrap().len(), 2);
    }

    #[test]
    fn group_order_matches_classification() {
        for (a, b, p) in [
            (3i64, 3i64, 7u64),
            (1, 6, 5),
            (1, 6, 11),
            (3, 3, 11),
            (1, 5, 5),
        ] {
            let d = KmData::standard(gcm(a, b));
            let inv = padic_invariants(&d, p).unwrap();
            let c = classify_rep(&inv).unwrap();
            let group = reduce_and_generate(&d, p).unwrap();
            assert_eq!(group.len() as u64, c.group_order, "({a},{b}) p={p}");
        }
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power_base(8), Some(2));
        assert_eq!(prime_power_base(9), Some(3));
        assert_eq!(prime_power_base(7), Some(7));
        assert_eq!(prime_power_base(12), None);
        assert_eq!(prime_power_base(1), None);
    }

    /// Random valid factorizations smat * nmat = A built from unimodular
    /// twists: the invariants must classify consistently (dual routes
    /// assert internally) and the classified order must equal the closure,
    /// for every factorization and prime.
    #[test]
    fn random_factorizations_classify_consistently() {
        use crate::levi::SplitMix64;
        let mut rng = SplitMix64::new(0xfac7);
        let elementary = |k: i128, upper: bool| {
            if upper {
                Mat2::new(1, k, 0, 1)
            } else {
                Mat2::new(1, 0, k, 1)
            }
        };
        for (a, b) in [(3i64, 3i64), (1, 6), (2, 3), (2, 2), (1, 5)] {
            let g = gcm(a, b);
            let cartan = KmData::cartan_matrix(&g);
            for p in [3u64, 5, 7, 11] {
                for _ in 0..10 {
                    // U a short random product of elementary matrices
                    let mut u = Mat2::<i128>::identity();
                    let mut u_inv = Mat2::<i128>::identity();
                    for _ in 0..(rng.next_u64() % 5) {
                        let k = rng.in_range(-2, 2) as i128;
                        let upper = rng.next_u64() % 2 == 0;
                        u = u.mul(&elementary(k, upper));
                        u_inv = elementary(-k, upper).mul(&u_inv);
                    }
                    debug_assert_eq!(u.mul(&u_inv), Mat2::identity());
                    // twist either side of the standard factorization
                    let d = if rng.next_u64() % 2 == 0 {
                        KmData::new(g, cartan.mul(&u), u_inv).unwrap()
                    } else {
                        KmData::new(g, u, u_inv.mul(&cartan)).unwrap()
                    };
                    let inv = padic_invariants(&d, p).unwrap();
                    let cls = classify_rep(&inv).unwrap();
                    let group = reduce_and_generate(&d, p).unwrap();
                    assert_eq!(
                        group.len() as u64,
                        cls.group_order,
                        "({a},{b}) p={p} smat={:?} nmat={:?}",
                        d.smat,
                        d.nmat
                    );
                }
            }
        }
    }

    #[test]
    fn witness_search_self_check() {
        let g = gcm(3, 3);
        let hits = friedlander_witness_search(&g, (3, 50), (2, 200));
        assert!(!hits.is_empty());
        for w in &hits {
            assert!(is_prime(w.p) && w.p % 2 == 1);
            assert_eq!(45 % w.p as i128, {
                let ab = 9i128;
                (ab * (ab - 4)).rem_euclid(w.p as i128) % w.p as i128
            });
            assert!(45 % w.p != 0);
            assert!(prime_power_base(w.q).is_some());
            let r = w.q % w.p;
            assert!(r != 0 && r != 1 && r != w.p - 1);
            assert_eq!(pow_mod(w.q, w.m, w.p), 1);
            assert_eq!(dihedral_order_m(&g, w.p).unwrap(), w.m);
        }
        // (p=11, q=3): 3 has order 5 = m mod 11
        assert!(hits.contains(&Witness { p: 11, q: 3, m: 5 }));
        // q = 1 mod p is never returned
        assert!(hits.iter().all(|w| w.q % w.p != 1));
        // empty range gives empty list
        assert!(friedlander_witness_search(&g, (3, 2), (2, 200)).is_empty());
    }
}
