//! Finite structure of the Levi subgroups over F_q: the monic/split
//! dichotomy, the isomorphism type (GL_2, SL_2 x units, PGL_2 x units), the
//! exact base-change matrix M with its conjugation identity, and concrete
//! verification of the defining exact sequences inside a cyclic model of
//! the multiplicative group.

use thiserror::Error;

use crate::gf::Mat2;
use crate::weylrep::prime_power_base;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LeviError {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("levi type does not match the input data")]
    InconsistentType,
    #[error("base-change matrix is singular")]
    SingularBaseChange,
    #[error("conjugation identity M^-1 omega M = omega-bar fails")]
    ConjugationFails,
    #[error("exact-sequence check fails at stage: {stage}")]
    ExactnessFailure { stage: &'static str },
    #[error("q = {q} exceeds the enumeration cap {cap}")]
    EnumerationTooLarge { q: u64, cap: u64 },
}

/// One row (s, t) of the h-data paired with one column (n, m) of the
/// alpha-data, over the field of order q = ell^e.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeviInput {
    pub s: i64,
    pub t: i64,
    pub n: i64,
    pub m: i64,
    pub ell: u64,
    pub q: u64,
}

impl LeviInput {
    /// The characteristic is recovered as the prime base of q.
    pub fn new(s: i64, t: i64, n: i64, m: i64, q: u64) -> Result<Self, LeviError> {
        let ell = prime_power_base(q).ok_or(LeviError::NotAPrimePower(q))?;
        Ok(LeviInput { s, t, n, m, ell, q })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeviKind {
    Gl2,
    Sl2Units,
    Pgl2Units,
}

/// Classification record: monic means the SL_2 map is injective
/// (ell = 2 or gcd(s, t) = 1), split means n and m are both even.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeviType {
    pub kind: LeviKind,
    pub monic: bool,
    pub split: bool,
    /// Parity of r = lambda m - mu n for lambda s + mu t = 1, defined when
    /// gcd(s, t) = 1; even iff split whenever s n + t m = 2.
    pub r_even: Option<bool>,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extended Euclid: returns (g, x, y) with a x + b y = g = gcd(a, b) >= 0.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (x0, x1) = (x1, x0 - qt * x1);
        (y0, y1) = (y1, y0 - qt * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

/// Monic/split classification with the GL_2 / SL_2 x units / PGL_2 x units
/// trichotomy. For inputs satisfying the diagonal relation s n + t m = 2
/// the recorded parity of r is asserted to match splitness.
pub fn classify_levi(input: &LeviInput) -> LeviType {
    let monic = input.ell == 2 || gcd(input.s, input.t) == 1;
    let split = input.n % 2 == 0 && input.m % 2 == 0;
    let kind = if !monic {
        LeviKind::Pgl2Units
    } else if split {
        LeviKind::Sl2Units
    } else {
        LeviKind::Gl2
    };
    let r_even = if gcd(input.s, input.t) == 1 {
        let (_, lambda, mu) = ext_gcd(input.s, input.t);
        let r = lambda * input.m - mu * input.n;
        let even = r % 2 == 0;
        if input.s * input.n + input.t * input.m == 2 {
            assert_eq!(even, split, "r-parity must match splitness");
        }
        Some(even)
    } else {
        None
    };
    LeviType {
        kind,
        monic,
        split,
        r_even,
    }
}

/// Exact 2x2 matrix with entries in (1/den) Z, den = 1 or 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfIntMat {
    pub num: Mat2<i128>,
    pub den: i128,
}

/// The base-change matrix identifying the Levi subgroup with its model:
/// (n/2, -t; m/2, s) when split monic, (1/2)(n-t, -n-t; m+s, -m+s) when
/// non-split monic, and (n, -t/2; m, s/2) when not monic.
pub fn base_change_m(input: &LeviInput, ty: &LeviType) -> Result<HalfIntMat, LeviError> {
    if *ty != classify_levi(input) {
        return Err(LeviError::InconsistentType);
    }
    let (s, t, n, m) = (
        input.s as i128,
        input.t as i128,
        input.n as i128,
        input.m as i128,
    );
    let mat = if !ty.monic {
        // s, t are both even here
        HalfIntMat {
            num: Mat2::new(n, -t / 2, m, s / 2),
            den: 1,
        }
    } else if ty.split {
        HalfIntMat {
            num: Mat2::new(n / 2, -t, m / 2, s),
            den: 1,
        }
    } else {
        HalfIntMat {
            num: Mat2::new(n - t, -n - t, m + s, -m + s),
            den: 2,
        }
    };
    if mat.num.det() == 0 {
        return Err(LeviError::SingularBaseChange);
    }
    Ok(mat)
}

/// The reflection omega(lambda) = lambda - <h, lambda> alpha on the weight
/// lattice, built from the same (s, t, n, m).
pub fn lattice_reflection(input: &LeviInput) -> Mat2<i128> {
    let (s, t, n, m) = (
        input.s as i128,
        input.t as i128,
        input.n as i128,
        input.m as i128,
    );
    Mat2::new(1 - s * n, -t * n, -s * m, 1 - t * m)
}

/// The normalized reflection on the model: the coordinate swap for GL_2 and
/// diag(-1, 1) for the two product types.
pub fn omega_bar(kind: LeviKind) -> Mat2<i128> {
    match kind {
        LeviKind::Gl2 => Mat2::new(0, 1, 1, 0),
        LeviKind::Sl2Units | LeviKind::Pgl2Units => Mat2::new(-1, 0, 0, 1),
    }
}

/// Check M^-1 omega M = omega-bar exactly: since den cancels, this is
/// omega * num = num * omega-bar over the integers.
pub fn verify_conjugation(
    mat: &HalfIntMat,
    omega: &Mat2<i128>,
    ty: &LeviType,
) -> Result<(), LeviError> {
    let bar = omega_bar(ty.kind);
    debug_assert_eq!(bar.mul(&bar), Mat2::identity());
    if omega.mul(&mat.num) == mat.num.mul(&bar) {
        Ok(())
    } else {
        Err(LeviError::ConjugationFails)
    }
}

/// The multiplicative group of F_q modeled as Z/(q-1); all verification
/// maps become integer exponent matrices.
#[derive(Debug, Clone, Copy)]
pub struct CyclicModel {
    pub order: u64,
}

impl CyclicModel {
    pub fn new(q: u64) -> Self {
        CyclicModel { order: q - 1 }
    }

    fn reduce(&self, e: i128) -> u64 {
        e.rem_euclid(self.order as i128) as u64
    }

    /// e -> (s e, t e).
    fn pair(&self, s: i64, t: i64, e: u64) -> (u64, u64) {
        (
            self.reduce(s as i128 * e as i128),
            self.reduce(t as i128 * e as i128),
        )
    }

    fn lin(&self, c1: i64, e1: u64, c2: i64, e2: u64) -> u64 {
        self.reduce(c1 as i128 * e1 as i128 + c2 as i128 * e2 as i128)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactnessReport {
    pub q: u64,
    pub monic: bool,
    /// Names of the verified stages, in check order.
    pub stages: Vec<&'static str>,
}

pub const ENUMERATION_CAP: u64 = 1 << 14;

/// Enumerate the cyclic model and verify the defining exact sequence of the
/// Levi subgroup: injectivity, surjectivity, kernel = image, and the
/// stated section. The monic case checks
///   k* >-> k* x k* ->> k*  with psi(z) = (z^s, z^t), pi(z, w) = z^{-t} w^s;
/// the non-monic case (ell odd, s = 2s', t = 2t') checks
///   k*/±1 >-> k* x k* ->> k* x {±1}
/// with pi'(z, w) = (z^{-t'} w^{s'}, (z^n w^m)^d), d = (q-1)/2.
pub fn verify_exact_sequences(input: &LeviInput) -> Result<ExactnessReport, LeviError> {
    if input.q > ENUMERATION_CAP {
        return Err(LeviError::EnumerationTooLarge {
            q: input.q,
            cap: ENUMERATION_CAP,
        });
    }
    let ty = classify_levi(input);
    let model = CyclicModel::new(input.q);
    let ord = model.order;
    let (s, t, n, m) = (input.s, input.t, input.n, input.m);
    let mut stages = Vec::new();

    if ty.monic {
        // psi injective
        for e in 1..ord {
            if model.pair(s, t, e) == (0, 0) {
                return Err(LeviError::ExactnessFailure {
                    stage: "psi injective",
                });
            }
        }
        stages.push("psi injective");

        // image of psi and kernel of pi over all pairs
        let image: std::collections::BTreeSet<(u64, u64)> =
            (0..ord).map(|e| model.pair(s, t, e)).collect();
        let mut surjective = vec![false; ord.max(1) as usize];
        for e1 in 0..ord {
            for e2 in 0..ord {
                let out = model.lin(-t, e1, s, e2);
                surjective[out as usize] = true;
                let in_kernel = out == 0;
                let in_image = image.contains(&(e1, e2));
                if in_kernel != in_image {
                    return Err(LeviError::ExactnessFailure {
                        stage: "ker pi = im psi",
                    });
                }
            }
        }
        stages.push("ker pi = im psi");
        if !surjective.iter().all(|&b| b) {
            return Err(LeviError::ExactnessFailure {
                stage: "pi surjective",
            });
        }
        stages.push("pi surjective");

        // section: coprime rows use the Bezout section, even rows in
        // characteristic 2 use half powers (squaring is invertible)
        let section: Box<dyn Fn(u64) -> (u64, u64)> = if gcd(s, t) == 1 {
            let (_, lambda, mu) = ext_gcd(s, t);
            Box::new(move |e| {
                (
                    model.reduce(-(mu as i128) * e as i128),
                    model.reduce(lambda as i128 * e as i128),
                )
            })
        } else {
            debug_assert_eq!(input.ell, 2);
            let (g, half, _) = ext_gcd(2, ord as i64);
            debug_assert_eq!(g, 1, "q - 1 is odd in characteristic 2");
            let half = half.rem_euclid(ord as i64) as i128;
            Box::new(move |e| {
                (
                    model.reduce(-(m as i128) * half * e as i128),
                    model.reduce(n as i128 * half * e as i128),
                )
            })
        };
        for e in 0..ord {
            let (e1, e2) = section(e);
            if model.lin(-t, e1, s, e2) != e {
                return Err(LeviError::ExactnessFailure {
                    stage: "pi after section is the identity",
                });
            }
        }
        stages.push("pi after section is the identity");
    } else {
        // non-monic: ell is odd and s = 2s', t = 2t'
        debug_assert!(input.ell % 2 == 1);
        let (sp, tp) = (s / 2, t / 2);
        let d = ord / 2;
        let half_ord = d;

        // psi' is psi on representatives of k*/{±1} = Z/((q-1)/2)
        for e in 1..half_ord {
            if model.pair(s, t, e) == (0, 0) {
                return Err(LeviError::ExactnessFailure {
                    stage: "psi' injective",
                });
            }
        }
        stages.push("psi' injective");

        let image: std::collections::BTreeSet<(u64, u64)> =
            (0..half_ord).map(|e| model.pair(s, t, e)).collect();
        // pi'(e1, e2) = (-t' e1 + s' e2, parity of n e1 + m e2)
        let parity = |e1: u64, e2: u64| -> u64 {
            let v = model.lin(n, e1, m, e2);
            model.reduce(d as i128 * v as i128) / d.max(1)
        };
        let mut surjective = vec![false; (ord * 2).max(1) as usize];
        for e1 in 0..ord {
            for e2 in 0..ord {
                let out = model.lin(-tp, e1, sp, e2);
                let sign = parity(e1, e2);
                surjective[(out * 2 + sign) as usize] = true;
                let in_kernel = out == 0 && sign == 0;
                let in_image = image.contains(&(e1, e2));
                if in_kernel != in_image {
                    return Err(LeviError::ExactnessFailure {
                        stage: "ker pi' = im psi'",
                    });
                }
            }
        }
        stages.push("ker pi' = im psi'");
        if !surjective.iter().all(|&b| b) {
            return Err(LeviError::ExactnessFailure {
                stage: "pi' surjective",
            });
        }
        stages.push("pi' surjective");

        // section over k* x {1}: sigma(z, 1) = (z^{-m}, z^n)
        for e in 0..ord {
            let (e1, e2) = (
                model.reduce(-(m as i128) * e as i128),
                model.reduce(n as i128 * e as i128),
            );
            if model.lin(-tp, e1, sp, e2) != e || parity(e1, e2) != 0 {
                return Err(LeviError::ExactnessFailure {
                    stage: "pi' after section is the identity on k* x {1}",
                });
            }
        }
        stages.push("pi' after section is the identity on k* x {1}");
    }

    Ok(ExactnessReport {
        q: input.q,
        monic: ty.monic,
        stages,
    })
}

/// Minimal deterministic RNG for the randomized property suites.
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn in_range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as i64
    }
}

/// Random (s, t, n, m) with gcd(s, t) = 1 and s n + t m = 2, the domain on
/// which the parity of r = lambda m - mu n is well-defined.
pub fn random_diagonal_input(rng: &mut SplitMix64) -> (i64, i64, i64, i64) {
    loop {
        let s = rng.in_range(-20, 20);
        let t = rng.in_range(-20, 20);
        if (s, t) == (0, 0) || gcd(s, t) != 1 {
            continue;
        }
        let (_, lambda, mu) = ext_gcd(s, t);
        let c = rng.in_range(-10, 10);
        // general solution of s n + t m = 2
        let n = 2 * lambda + c * t;
        let m = 2 * mu - c * s;
        debug_assert_eq!(s * n + t * m, 2);
        return (s, t, n, m);
    }
}

/// The r-parity claim on `count` random diagonal inputs: r even iff n, m
/// both even. Exercised through classify_levi, whose internal assertion
/// fires on any counterexample.
pub fn r_parity_property(seed: u64, count: usize) -> usize {
    let mut rng = SplitMix64::new(seed);
    let mut checked = 0;
    for _ in 0..count {
        let (s, t, n, m) = random_diagonal_input(&mut rng);
        let input = LeviInput {
            s,
            t,
            n,
            m,
            ell: 5,
            q: 5,
        };
        let ty = classify_levi(&input);
        assert_eq!(ty.r_even, Some(ty.split));
        checked += 1;
    }
    checked
}
