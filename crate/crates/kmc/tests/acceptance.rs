//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line and enforcing its runtime budget. All comparisons are
//! exact; there are no tolerances anywhere.

use std::time::{Duration, Instant};

use kmc::cohomology::{bg_cohomology, lambda_mu, series_coker, verify_presentation, BgCohomology};
use kmc::gf::{Fp, MatFp, SElem};
use kmc::invariants::{
    canonical_generators, canonical_group, canonical_reflection_pair, coker_phi, is_invariant,
    relative_invariants, verify_free_basis, verify_jacobian_identities, verify_relative_invariance,
};
use kmc::levi::{
    base_change_m, classify_levi, lattice_reflection, r_parity_property, verify_conjugation,
    verify_exact_sequences, LeviInput,
};
use kmc::roots::{
    classify_root_sum, cone_intersection, enumerate_positive_roots, verify_longlist, Family,
    FamilyClass, Gcm2, ItemStatus, Root, RootSet, SumVerdict,
};
use kmc::weylrep::{
    classify_rep, friedlander_witness_search, padic_invariants, prime_power_base,
    reduce_and_generate, KmData, RepType,
};

fn finish(criterion: u32, title: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed < budget,
        "criterion {criterion} exceeded its {budget:?} budget: {elapsed:?}"
    );
    println!("criterion {criterion} ({title}): PASS in {elapsed:?}");
}

fn gcm(a: i64, b: i64) -> Gcm2 {
    Gcm2::new(a, b).unwrap()
}

/// The three classified instances used by criteria 3-5: (a, b, p, m).
/// The m values are frozen from the repeated-multiplication oracle on the
/// actual roots of X^2 - (ab-2)X + 1.
const INSTANCES: [(i64, i64, u64, u64); 3] = [(3, 3, 7, 4), (1, 6, 5, 3), (1, 6, 11, 10)];

#[test]
fn criterion_1_root_sum_relations_by_brute_force() {
    let started = Instant::now();
    let max_index = 12;

    for (a, b) in [(2i64, 2i64), (2, 3), (3, 3), (1, 4), (1, 5), (1, 6)] {
        let g = gcm(a, b);
        let roots = enumerate_positive_roots(&g, max_index).unwrap();
        let cap = roots
            .iter()
            .map(|r| r.coords.0.max(r.coords.1))
            .max()
            .unwrap()
            * 2;
        let set = RootSet::up_to_coordinate(&g, cap).unwrap();

        // brute-force relation table from coordinate membership alone
        let mut found: Vec<(Root, Root, Root)> = Vec::new();
        for (ei, e) in roots.iter().enumerate() {
            for w in &roots[ei..] {
                if e.family.class() != w.family.class() {
                    continue;
                }
                let sum = (e.coords.0 + w.coords.0, e.coords.1 + w.coords.1);
                if let Some(f) = set.positive_root(sum) {
                    found.push((*e, *w, *f));
                }
                // the classifier must agree with the membership oracle
                let verdict = classify_root_sum(&g, e, w).unwrap();
                match verdict {
                    SumVerdict::NotARoot => assert!(set.positive_root(sum).is_none()),
                    SumVerdict::IsRoot { sum: s, .. } => {
                        assert_eq!(set.positive_root(sum).map(|r| r.coords), Some(s.coords))
                    }
                }
            }
        }

        if a > 1 {
            assert!(found.is_empty(), "({a},{b}): unexpected relation");
            continue;
        }

        // a = 1: compare against the exact predicted relation family
        for (e, w, f) in &found {
            let (lo, hi) = if e.index <= w.index { (e, w) } else { (w, e) };
            match e.family.class() {
                FamilyClass::A => {
                    assert_eq!((lo.family, hi.family), (Family::Ubar, Family::Ubar));
                    assert_eq!(f.family, Family::U);
                    if b > 4 {
                        assert_eq!(hi.index, lo.index + 1);
                        assert_eq!(f.index, lo.index + 1);
                    } else {
                        let gap = hi.index - lo.index;
                        assert_eq!(gap % 2, 1);
                        assert_eq!(f.index, lo.index + gap.div_ceil(2));
                    }
                }
                FamilyClass::B => {
                    assert_eq!((lo.family, hi.family), (Family::V, Family::V));
                    assert_eq!(f.family, Family::Vbar);
                    if b > 4 {
                        assert_eq!(hi.index, lo.index + 1);
                        assert_eq!(f.index, lo.index);
                    } else {
                        let gap = hi.index - lo.index;
                        assert_eq!(gap % 2, 1);
                        assert_eq!(f.index, lo.index + gap.div_ceil(2) - 1);
                    }
                }
            }
        }
        // and the count is exactly the predicted one
        let expected = if b > 4 {
            2 * max_index
        } else {
            // pairs (i, j), i < j <= max_index, j - i odd, per class
            2 * (0..max_index)
                .map(|i| (i + 1..=max_index).filter(|j| (j - i) % 2 == 1).count())
                .sum::<usize>()
        };
        assert_eq!(found.len(), expected, "({a},{b}): relation count");

        // cone intersections collapse to the single sum in every case
        for (e, w, f) in &found {
            let hits = cone_intersection(&g, e, w, 20).unwrap();
            assert_eq!(hits.len(), 1);
            assert_eq!(hits[0].coords, f.coords);
        }
    }

    finish(
        1,
        "root-sum relations by brute force",
        started,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_2_sequence_property_list() {
    let started = Instant::now();
    for (a, b) in [(1i64, 4i64), (1, 5), (2, 3), (3, 3)] {
        let report = verify_longlist(&gcm(a, b), 40).unwrap();
        assert_eq!(report.items.len(), 11);
        for (item, status) in &report.items {
            match status {
                ItemStatus::Passed => {}
                ItemStatus::Skipped(_) => {
                    // only hypothesis-excluded items may be skipped
                    // items whose hypotheses exclude this (a, b):
                    // 4 needs (1,4); 5 and 7 need ab > 4; 8 needs a > 1;
                    // 10 excludes (1,4); 11 needs a = 1
                    let allowed: &[u8] = match (a, b) {
                        (1, 4) => &[5, 7, 8, 10],
                        (1, 5) => &[4, 8],
                        _ => &[4, 11],
                    };
                    assert!(allowed.contains(item), "({a},{b}): item {item} skipped");
                }
            }
        }
        // the quartic-root closed form (item 5) ran exactly iff ab > 4
        let item5 = &report.items[4];
        assert_eq!(item5.0, 5);
        if a * b > 4 {
            assert_eq!(item5.1, ItemStatus::Passed);
        }
    }
    finish(
        2,
        "c/d sequence property list to n = 40",
        started,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_3_classification() {
    let started = Instant::now();
    for (a, b, p, m) in INSTANCES {
        let d = KmData::standard(gcm(a, b));
        // padic_invariants internally cross-checks the closed formulas
        // against the normal-form route and panics on disagreement
        let inv = padic_invariants(&d, p).unwrap();
        let cls = classify_rep(&inv).unwrap();
        assert_eq!(cls.rep_type, RepType::VI, "({a},{b}) p={p}");
        assert_eq!(cls.m, Some(m), "({a},{b}) p={p}");
        if (a, b, p) == (3, 3, 7) {
            assert_eq!(inv.gamma_mod_p, Fp::new(4, 7));
        }
        // |W_p| = 2m via explicit closure
        let group = reduce_and_generate(&d, p).unwrap();
        assert_eq!(group.len() as u64, 2 * m, "({a},{b}) p={p}");
        // the rotation tau has order m in the closure
        let (w1, w2) = kmc::weylrep::weyl_action_on_lattice(&d);
        let tau = w1.reduce_mod(p).mul(&w2.reduce_mod(p));
        let mut pow = tau;
        let mut order = 1;
        while pow != MatFp::identity_mod(p) {
            pow = pow.mul(&tau);
            order += 1;
            assert!(order <= 2 * m);
        }
        assert_eq!(order, m);
    }
    finish(
        3,
        "type VI classification of the three instances",
        started,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_4_jacobian_identities() {
    let started = Instant::now();
    // (lambda, mu) frozen mod p: 45 = 3 mod 7 twice; (12, -1) = (2, 4)
    // mod 5; and (1, 1) since 11 = 1 mod 10.
    let expected = [(3i128, 3i128), (2, 4), (1, 1)];
    for ((a, b, p, m), (lam, mu)) in INSTANCES.iter().zip(expected) {
        let g = gcm(*a, *b);
        let d = KmData::standard(g);
        let inv = padic_invariants(&d, *p).unwrap();
        let cls = classify_rep(&inv).unwrap();
        let (lambda, mu_got) = lambda_mu(*m, *p, &g).unwrap();
        assert_eq!(lambda, Fp::new(lam, *p), "({a},{b}) p={p}");
        assert_eq!(mu_got, Fp::new(mu, *p), "({a},{b}) p={p}");
        let pair = canonical_generators(&cls, *p, inv.gamma_mod_p).unwrap();
        let r = relative_invariants(&pair, *m).unwrap();
        let report = verify_jacobian_identities(&pair, &r, *m, lambda, mu_got).unwrap();
        // four identities plus the four Euler consequences, all exact
        assert_eq!(report.verified.len(), 8);
        let group = canonical_group(&cls, *p, inv.gamma_mod_p).unwrap();
        verify_relative_invariance(&r, &group).unwrap();
        assert!(is_invariant(&SElem::from_poly(pair.f.clone()), &group));
        assert!(is_invariant(&SElem::from_poly(pair.g.clone()), &group));
    }
    finish(
        4,
        "Jacobian identities with exact constants",
        started,
        Duration::from_secs(2),
    );
}

#[test]
fn criterion_5_freeness_of_the_cokernel() {
    let started = Instant::now();
    for (a, b, p, m) in INSTANCES {
        let d = KmData::standard(gcm(a, b));
        let inv = padic_invariants(&d, p).unwrap();
        let cls = classify_rep(&inv).unwrap();
        let pair = canonical_generators(&cls, p, inv.gamma_mod_p).unwrap();
        let r = relative_invariants(&pair, m).unwrap();
        let (w1, w2) = canonical_reflection_pair(&cls, p, inv.gamma_mod_p).unwrap();
        let n_max = 4 * m as u32 + 8;
        let ckr = coker_phi(&w1, &w2, n_max).unwrap();
        // degreewise dimensions match the series expansion exactly
        let series = series_coker(m).expand(n_max).unwrap();
        for n in 0..=n_max {
            assert_eq!(
                ckr.degree(n).dim_coker as i64,
                series[n as usize],
                "({a},{b}) p={p} degree {n}"
            );
        }
        // and the module classes are an actual basis in every degree
        verify_free_basis(&ckr, &pair, &r, n_max).unwrap();
    }
    finish(
        5,
        "freeness of Coker(phi) degreewise",
        started,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_6_main_presentation() {
    let started = Instant::now();
    let d = KmData::standard(gcm(3, 3));

    // 29 = 1 mod 7: the full presentation, verified to degree 24
    match bg_cohomology(&d, 7, 29).unwrap() {
        BgCohomology::Presented(pres) => {
            assert_eq!(pres.m, 4);
            assert_eq!(pres.lambda, Fp::new(3, 7));
            assert_eq!(pres.mu, Fp::new(3, 7));
            verify_presentation(&pres, 24).unwrap();

            // negative control: corrupting lambda must be detected
            let mut bad = pres.clone();
            bad.lambda += Fp::one(7);
            bad.relations = bad
                .relations
                .iter()
                .map(|rel| {
                    let mut rel = rel.clone();
                    for t in &mut rel.terms {
                        // relations (3a), (4a) carry m*lambda on the x_{2m} term
                        if t.x2m == 1 && rel.label != "(2b)" && rel.label != "(4b)" {
                            let m_fp = Fp::new(4, 7);
                            let sign = if rel.label == "(3a)" {
                                -Fp::one(7)
                            } else {
                                Fp::one(7)
                            };
                            t.coeff = sign * m_fp * bad.lambda;
                        }
                    }
                    rel
                })
                .collect();
            assert!(verify_presentation(&bad, 24).is_err());
        }
        other => panic!("expected a presentation, got {other:?}"),
    }

    // 3 is neither 1 nor -1 mod 7: trivial coefficients
    assert_eq!(bg_cohomology(&d, 7, 3).unwrap(), BgCohomology::TrivialFp);

    // 13 = -1 mod 7: the wedge of two copies
    match bg_cohomology(&d, 7, 13).unwrap() {
        BgCohomology::WedgeSum(w) => {
            assert_eq!(w.generators.len(), 4);
            assert_eq!(w.bockstein_height, 1);
        }
        other => panic!("expected the wedge answer, got {other:?}"),
    }

    finish(
        6,
        "main presentation with verification",
        started,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_7_levi_suite() {
    let started = Instant::now();
    // (s, t, n, m) all satisfying the diagonal relation s n + t m = 2,
    // covering the three kinds; crossed with prime powers q <= 64
    let suite = [
        (2i64, -1i64, 1i64, 0i64),
        (2, -3, 1, 0),
        (2, -5, 1, 0),
        (-3, 2, 0, 1),
        (1, 1, 4, -2),
        (1, 3, 8, -2),
        (3, 1, 1, -1),
        (1, -1, 1, -1),
        (2, 2, 1, 0),
        (2, -2, 2, 1),
        (4, -2, 1, 1),
        (2, 2, -1, 2),
    ];
    assert!(suite.len() >= 10);
    let mut runs = 0;
    for q in 2u64..=64 {
        if prime_power_base(q).is_none() {
            continue;
        }
        for (s, t, n, m) in suite {
            let input = LeviInput::new(s, t, n, m, q).unwrap();
            let ty = classify_levi(&input);
            let mat = base_change_m(&input, &ty).unwrap();
            let omega = lattice_reflection(&input);
            verify_conjugation(&mat, &omega, &ty).unwrap();
            verify_exact_sequences(&input).unwrap_or_else(|e| {
                panic!("({s},{t},{n},{m}) at q={q}: {e}");
            });
            runs += 1;
        }
    }
    assert!(runs > 0);
    // the r-parity property on 200 random diagonal inputs
    assert_eq!(r_parity_property(2026, 200), 200);
    finish(
        7,
        "Levi structure suite over F_q",
        started,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_8_witness_search() {
    let started = Instant::now();
    let g = gcm(3, 3);
    let hits = friedlander_witness_search(&g, (3, 50), (2, 200));
    assert!(!hits.is_empty(), "search must find a witness");
    for w in &hits {
        // p odd prime not dividing ab(ab-4) = 45
        assert!(w.p % 2 == 1 && 45 % w.p != 0);
        // q a prime power, coprime to p, not +-1 mod p
        assert!(prime_power_base(w.q).is_some());
        let r = w.q % w.p;
        assert!(r != 0 && r != 1 && r != w.p - 1);
        // q^m = 1 mod p for the true order m
        assert_eq!(kmc::weylrep::dihedral_order_m(&g, w.p).unwrap(), w.m);
        let mut acc = 1u64;
        for _ in 0..w.m {
            acc = acc * w.q % w.p;
        }
        assert_eq!(acc, 1);
    }
    finish(
        8,
        "arithmetic witness search",
        started,
        Duration::from_secs(2),
    );
}
