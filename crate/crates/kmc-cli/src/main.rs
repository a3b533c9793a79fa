//! Command-line frontend: parses the defining data, runs the library's
//! classifications and verifications, and emits deterministic text or JSON
//! reports. Exit status: 0 when every check passes, 1 on a check failure,
//! 2 on invalid configuration.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kmc::cohomology::{
    bg_cohomology, lambda_mu, levi_cohomology, verify_presentation, BgCohomology, GenName,
    LeviCase, Presentation,
};
use kmc::gf::{Fp, Mat2, Poly2, SElem, EXT_BASES};
use kmc::invariants::{
    canonical_generators, canonical_group, is_invariant, relative_invariants,
    verify_jacobian_identities, verify_relative_invariance,
};
use kmc::levi::{
    base_change_m, classify_levi, lattice_reflection, r_parity_property, verify_conjugation,
    verify_exact_sequences, LeviInput, LeviKind,
};
use kmc::roots::{
    classify_root_sum, cone_intersection, enumerate_positive_roots, verify_longlist, Family, Gcm2,
    ItemStatus, Root, RootSet, SumVerdict,
};
use kmc::weylrep::{
    classify_rep, friedlander_witness_search, padic_invariants, reduce_and_generate, ExtNat,
    KmData, RepType, Witness,
};

#[derive(Parser)]
#[command(
    name = "kmc",
    version,
    about = "Exact computations for rank-2 Kac-Moody data: root systems, mod-p Weyl images, dihedral invariant theory, and cohomology presentations"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate positive roots, check the c/d sequence properties, and
    /// tabulate which same-type root sums are roots
    Roots {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        /// Largest family index to enumerate
        #[arg(long, default_value_t = 6)]
        max_index: usize,
        /// Sequence index bound for the property checks (default 2*max_index+2, at least 8)
        #[arg(long)]
        long_n: Option<usize>,
        /// Coefficient bound for cone intersections
        #[arg(long, default_value_t = 20)]
        bound: u32,
    },
    /// Classify the mod-p Weyl image: Gamma, delta_1, delta_2, type, m
    Classify {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        p: u64,
        /// Row-major entries s1,t1,s2,t2 (default: the Cartan matrix)
        #[arg(long, allow_hyphen_values = true)]
        smat: Option<String>,
        /// Row-major entries n1,n2,m1,m2 (default: identity)
        #[arg(long, allow_hyphen_values = true)]
        nmat: Option<String>,
    },
    /// Canonical invariant generators and, for type VI, the Jacobian identities
    Invariants {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        smat: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        nmat: Option<String>,
    },
    /// The cohomology of BG: trivial, wedge, or the full presentation
    Cohomology {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        /// Run the verification pass on the emitted presentation
        #[arg(long)]
        verify: bool,
        /// Degree bound for verification (default 4m + 8)
        #[arg(long)]
        degree_bound: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        smat: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        nmat: Option<String>,
    },
    /// Levi subgroup structure over F_q: kind, base change, exact sequences
    Levi {
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        q: u64,
        /// Seed for the randomized r-parity suite
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Size of the randomized r-parity suite
        #[arg(long, default_value_t = 200)]
        suite_size: usize,
    },
    /// Search for arithmetic witnesses (p, q) with q^m = 1 but q != +-1 mod p
    Witness {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long, default_value_t = 50)]
        p_max: u64,
        #[arg(long, default_value_t = 200)]
        q_max: u64,
    },
}

/// One named verification with its outcome.
struct Check {
    name: String,
    passed: bool,
    detail: String,
}

impl Check {
    fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: true,
            detail: detail.into(),
        }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: false,
            detail: detail.into(),
        }
    }

    fn from_result<T, E: std::fmt::Display>(name: impl Into<String>, r: &Result<T, E>) -> Self {
        match r {
            Ok(_) => Check::pass(name, "ok"),
            Err(e) => Check::fail(name, e.to_string()),
        }
    }
}

struct Report {
    command: &'static str,
    config: Value,
    results: Value,
    checks: Vec<Check>,
}

impl Report {
    fn overall(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn to_json(&self) -> Value {
        json!({
            "schemaVersion": 1,
            "command": self.command,
            "config": self.config,
            "results": self.results,
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "status": if c.passed { "pass" } else { "fail" },
                "detail": c.detail,
            })).collect::<Vec<_>>(),
            "overall": if self.overall() { "pass" } else { "fail" },
        })
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("config: {}\n", self.config));
        out.push_str(&format!(
            "results:\n{}\n",
            serde_json::to_string_pretty(&self.results).expect("serializable")
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {}: {}\n",
                if c.passed { "pass" } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        out.push_str(&format!(
            "overall: {}\n",
            if self.overall() { "pass" } else { "FAIL" }
        ));
        out
    }
}

/// Configuration rejected before any computation ran.
struct ConfigError(String);

impl<E: std::fmt::Display> From<E> for ConfigError {
    fn from(e: E) -> Self {
        ConfigError(e.to_string())
    }
}

fn parse_mat(arg: &Option<String>) -> Result<Option<Mat2<i128>>, ConfigError> {
    let Some(s) = arg else {
        return Ok(None);
    };
    let parts: Vec<i128> = s
        .split(',')
        .map(|x| x.trim().parse::<i128>())
        .collect::<Result<_, _>>()
        .map_err(|e| ConfigError(format!("bad matrix entry: {e}")))?;
    if parts.len() != 4 {
        return Err(ConfigError(format!(
            "matrix needs 4 comma-separated entries, got {}",
            parts.len()
        )));
    }
    Ok(Some(Mat2::new(parts[0], parts[1], parts[2], parts[3])))
}

fn km_data(
    a: i64,
    b: i64,
    smat: &Option<String>,
    nmat: &Option<String>,
) -> Result<KmData, ConfigError> {
    let gcm = Gcm2::new(a, b)?;
    match (parse_mat(smat)?, parse_mat(nmat)?) {
        (None, None) => Ok(KmData::standard(gcm)),
        (s, n) => {
            let s = s.unwrap_or_else(|| KmData::cartan_matrix(&gcm));
            let n = n.unwrap_or_else(Mat2::identity);
            Ok(KmData::new(gcm, s, n)?)
        }
    }
}

fn mat_json(m: &Mat2<i128>) -> Value {
    json!([
        [m.a.to_string(), m.b.to_string()],
        [m.c.to_string(), m.d.to_string()]
    ])
}

fn fp_json(x: Fp) -> Value {
    json!(x.value())
}

fn extnat_json(v: ExtNat) -> Value {
    match v {
        ExtNat::Fin(k) => json!(k),
        ExtNat::Inf => json!("inf"),
    }
}

/// Polynomials serialize as arrays [i, j, exteriorTag, coefficient] in
/// lexicographic (i, j, tag) order; tag 0 is the polynomial part.
fn poly_json(f: &Poly2) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .map(|(&(i, j), &c)| json!([i, j, 0, c.value()]))
        .collect();
    Value::Array(terms)
}

fn selem_json(x: &SElem) -> Value {
    let mut terms: Vec<(u16, u16, usize, u64)> = Vec::new();
    for e in EXT_BASES {
        for (&(i, j), &c) in x.component(e).terms() {
            terms.push((i, j, e.index(), c.value()));
        }
    }
    terms.sort();
    Value::Array(
        terms
            .into_iter()
            .map(|(i, j, e, c)| json!([i, j, e, c]))
            .collect(),
    )
}

fn root_json(r: &Root) -> Value {
    let family = match r.family {
        Family::U => "u",
        Family::Ubar => "ubar",
        Family::V => "v",
        Family::Vbar => "vbar",
    };
    json!({
        "family": family,
        "index": r.index,
        "coords": [r.coords.0.to_string(), r.coords.1.to_string()],
    })
}

fn presentation_json(pres: &Presentation) -> Value {
    let m = pres.m;
    let gen_label = |g: GenName| g.label(m);
    json!({
        "p": pres.p,
        "q": pres.q,
        "m": m,
        "lambda": fp_json(pres.lambda),
        "mu": fp_json(pres.mu),
        "coefficientRing": {
            "polynomialDegrees": pres.coefficient_ring.polynomial_degrees,
            "exteriorDegrees": pres.coefficient_ring.exterior_degrees,
        },
        "generators": pres.generators.iter().map(|(g, d)| json!({
            "name": gen_label(*g),
            "degree": d,
        })).collect::<Vec<_>>(),
        "relations": pres.relations.iter().map(|rel| json!({
            "label": rel.label,
            "terms": rel.terms.iter().map(|t| json!({
                "coeff": fp_json(t.coeff),
                "x4": t.x4,
                "x2m": t.x2m,
                "y3": t.y3 as u8,
                "y2m1": t.y2m1 as u8,
                "gen": gen_label(t.gen),
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "productsVanish": pres.products_vanish,
    })
}

fn run_roots(
    a: i64,
    b: i64,
    max_index: usize,
    long_n: Option<usize>,
    bound: u32,
) -> Result<Report, ConfigError> {
    let gcm = Gcm2::new(a, b)?;
    let n_max = long_n.unwrap_or((2 * max_index + 2).max(8)).max(8);
    let mut checks = Vec::new();

    let roots = enumerate_positive_roots(&gcm, max_index)?;

    let longlist = verify_longlist(&gcm, n_max);
    match &longlist {
        Ok(rep) => {
            for (item, status) in &rep.items {
                match status {
                    ItemStatus::Passed => {
                        checks.push(Check::pass(format!("sequence property ({item})"), "holds"))
                    }
                    ItemStatus::Skipped(why) => checks.push(Check::pass(
                        format!("sequence property ({item})"),
                        format!("skipped: {why}"),
                    )),
                }
            }
        }
        Err(e) => checks.push(Check::fail("sequence properties", e.to_string())),
    }

    // root-sum table over same-class pairs, with the membership oracle and
    // cone intersections as checks
    let cap = roots
        .iter()
        .map(|r| r.coords.0.max(r.coords.1))
        .max()
        .unwrap_or(1)
        * 2;
    let set = RootSet::up_to_coordinate(&gcm, cap)?;
    let mut relations = Vec::new();
    let mut oracle_ok = true;
    let mut cones_ok = true;
    let mut cone_detail = String::from("every relation has cone {e+w}");
    for (ei, e) in roots.iter().enumerate() {
        for w in &roots[ei..] {
            if e.family.class() != w.family.class() {
                continue;
            }
            let verdict = classify_root_sum(&gcm, e, w)?;
            let sum_coords = (e.coords.0 + w.coords.0, e.coords.1 + w.coords.1);
            let member = set.positive_root(sum_coords).copied();
            match &verdict {
                SumVerdict::NotARoot => {
                    if member.is_some() {
                        oracle_ok = false;
                    }
                }
                SumVerdict::IsRoot { sum, .. } => {
                    if member.map(|r| r.coords) != Some(sum.coords) {
                        oracle_ok = false;
                    }
                    relations.push(json!({
                        "e": root_json(e),
                        "w": root_json(w),
                        "sum": root_json(sum),
                    }));
                    match cone_intersection(&gcm, e, w, bound) {
                        Ok(hits) => {
                            if hits.len() != 1 || hits[0].coords != sum.coords {
                                cones_ok = false;
                                cone_detail = format!(
                                    "cone of {:?}+{:?} is not a single root",
                                    e.coords, w.coords
                                );
                            }
                        }
                        Err(err) => {
                            cones_ok = false;
                            cone_detail = err.to_string();
                        }
                    }
                }
            }
        }
    }
    checks.push(if oracle_ok {
        Check::pass("sum classification matches membership", "exact agreement")
    } else {
        Check::fail("sum classification matches membership", "disagreement")
    });
    checks.push(if cones_ok {
        Check::pass("cone intersections", cone_detail)
    } else {
        Check::fail("cone intersections", cone_detail)
    });

    Ok(Report {
        command: "roots",
        config: json!({"a": a, "b": b, "maxIndex": max_index, "longN": n_max, "bound": bound}),
        results: json!({
            "positiveRoots": roots.iter().map(root_json).collect::<Vec<_>>(),
            "sumRelations": relations,
        }),
        checks,
    })
}

fn run_classify(d: &KmData, p: u64) -> Result<Report, ConfigError> {
    let inv = padic_invariants(d, p)?;
    let cls = classify_rep(&inv)?;
    let group = reduce_and_generate(d, p)?;
    let mut checks = Vec::new();
    checks.push(Check::pass(
        "invariant formulas agree",
        "closed form matches the normal-form route",
    ));
    checks.push(if group.len() as u64 == cls.group_order {
        Check::pass(
            "group order",
            format!("closure has {} elements", group.len()),
        )
    } else {
        Check::fail(
            "group order",
            format!("closure {} != classified {}", group.len(), cls.group_order),
        )
    });
    Ok(Report {
        command: "classify",
        config: json!({
            "a": d.gcm.a(), "b": d.gcm.b(), "p": p,
            "smat": mat_json(&d.smat), "nmat": mat_json(&d.nmat),
        }),
        results: json!({
            "gamma": fp_json(inv.gamma_mod_p),
            "delta1": extnat_json(inv.delta1),
            "delta2": extnat_json(inv.delta2),
            "type": cls.rep_type.to_string(),
            "m": cls.m,
            "swapped": cls.swapped,
            "groupOrder": cls.group_order,
        }),
        checks,
    })
}

fn run_invariants(d: &KmData, p: u64) -> Result<Report, ConfigError> {
    let inv = padic_invariants(d, p)?;
    let cls = classify_rep(&inv)?;
    let pair = canonical_generators(&cls, p, inv.gamma_mod_p)?;
    let group = canonical_group(&cls, p, inv.gamma_mod_p)?;
    let mut checks = Vec::new();
    let f_inv = is_invariant(&SElem::from_poly(pair.f.clone()), &group);
    let g_inv = is_invariant(&SElem::from_poly(pair.g.clone()), &group);
    checks.push(if f_inv && g_inv {
        Check::pass("generators invariant", "both fixed by the whole group")
    } else {
        Check::fail("generators invariant", "a generator moves under the group")
    });

    let mut results = json!({
        "type": cls.rep_type.to_string(),
        "f": poly_json(&pair.f),
        "g": poly_json(&pair.g),
        "fDegree": pair.f.degree(),
        "gDegree": pair.g.degree(),
    });

    if cls.rep_type == RepType::VI {
        let m = cls.m.expect("type VI carries m");
        let rels = relative_invariants(&pair, m)?;
        checks.push(Check::from_result(
            "relative invariance",
            &verify_relative_invariance(&rels, &group),
        ));
        let (lambda, mu) = lambda_mu(m, p, &d.gcm)?;
        let jac_report = verify_jacobian_identities(&pair, &rels, m, lambda, mu);
        checks.push(Check::from_result("jacobian identities", &jac_report));
        let obj = results.as_object_mut().expect("results is an object");
        obj.insert("m".into(), json!(m));
        obj.insert("lambda".into(), fp_json(lambda));
        obj.insert("mu".into(), fp_json(mu));
        obj.insert("jacobian".into(), poly_json(&rels.jacobian));
        obj.insert("jacobianPrime".into(), selem_json(&rels.jacobian_prime));
        obj.insert("alpha".into(), selem_json(&rels.alpha));
        obj.insert("alphaPrime".into(), selem_json(&rels.alpha_prime));
    }

    Ok(Report {
        command: "invariants",
        config: json!({
            "a": d.gcm.a(), "b": d.gcm.b(), "p": p,
            "smat": mat_json(&d.smat), "nmat": mat_json(&d.nmat),
        }),
        results,
        checks,
    })
}

fn levi_descriptor_json(q: u64, p: u64) -> Value {
    match levi_cohomology(q, p) {
        Ok(desc) => {
            let case = match desc.case {
                LeviCase::Trivial => "trivial",
                LeviCase::InvariantsOfReflection => "invariantsOfReflection",
                LeviCase::ExteriorPolynomial => "exteriorPolynomial",
            };
            json!({
                "case": case,
                "polynomialDegrees": desc.polynomial_degrees,
                "exteriorDegrees": desc.exterior_degrees,
                "bocksteinHeight": desc.bockstein_height,
            })
        }
        Err(_) => Value::Null,
    }
}

fn run_cohomology(
    d: &KmData,
    p: u64,
    q: u64,
    verify: bool,
    degree_bound: Option<u32>,
) -> Result<Report, ConfigError> {
    let answer = bg_cohomology(d, p, q)?;
    let mut checks = Vec::new();
    let mut results = match &answer {
        BgCohomology::TrivialFp => json!({"kind": "trivial", "value": "F_p"}),
        BgCohomology::WedgeSum(w) => json!({
            "kind": "wedge",
            "generators": w.generators.iter().map(|(n, d)| json!({"name": n, "degree": d})).collect::<Vec<_>>(),
            "bocksteinHeight": w.bockstein_height,
        }),
        BgCohomology::Presented(pres) => {
            if verify {
                let n = degree_bound.unwrap_or(4 * pres.m as u32 + 8);
                checks.push(Check::from_result(
                    format!("presentation verified to degree {n}"),
                    &verify_presentation(pres, n),
                ));
            }
            json!({"kind": "presentation", "presentation": presentation_json(pres)})
        }
    };
    results
        .as_object_mut()
        .expect("results is an object")
        .insert("leviCohomology".into(), levi_descriptor_json(q, p));
    Ok(Report {
        command: "cohomology",
        config: json!({
            "a": d.gcm.a(), "b": d.gcm.b(), "p": p, "q": q,
            "verify": verify, "degreeBound": degree_bound,
            "smat": mat_json(&d.smat), "nmat": mat_json(&d.nmat),
        }),
        results,
        checks,
    })
}

fn run_levi(
    s: i64,
    t: i64,
    n: i64,
    m: i64,
    q: u64,
    seed: u64,
    suite_size: usize,
) -> Result<Report, ConfigError> {
    let input = LeviInput::new(s, t, n, m, q)?;
    let ty = classify_levi(&input);
    let mut checks = Vec::new();

    let kind = match ty.kind {
        LeviKind::Gl2 => "GL2",
        LeviKind::Sl2Units => "SL2xUnits",
        LeviKind::Pgl2Units => "PGL2xUnits",
    };

    let mat = base_change_m(&input, &ty);
    let mat_json = match &mat {
        Ok(hm) => json!({
            "num": [[hm.num.a.to_string(), hm.num.b.to_string()],
                     [hm.num.c.to_string(), hm.num.d.to_string()]],
            "den": hm.den,
        }),
        Err(_) => Value::Null,
    };
    checks.push(Check::from_result("base change matrix", &mat));

    if let Ok(hm) = &mat {
        let omega = lattice_reflection(&input);
        if s as i128 * n as i128 + t as i128 * m as i128 == 2 {
            checks.push(Check::from_result(
                "conjugation identity",
                &verify_conjugation(hm, &omega, &ty),
            ));
        } else {
            checks.push(Check::pass(
                "conjugation identity",
                "skipped: s*n + t*m != 2, omega is not an involution",
            ));
        }
    }

    checks.push(Check::from_result(
        "exact sequences",
        &verify_exact_sequences(&input),
    ));

    let parity_checked = r_parity_property(seed, suite_size);
    checks.push(Check::pass(
        "r-parity suite",
        format!("{parity_checked} random diagonal inputs"),
    ));

    Ok(Report {
        command: "levi",
        config: json!({"s": s, "t": t, "n": n, "m": m, "q": q, "seed": seed, "suiteSize": suite_size}),
        results: json!({
            "kind": kind,
            "monic": ty.monic,
            "split": ty.split,
            "rEven": ty.r_even,
            "baseChange": mat_json,
        }),
        checks,
    })
}

/// KMC_THREADS caps the worker count for the witness search; the prime
/// range is sharded and the merged output re-sorted, so the report is
/// identical at any thread count.
fn searched_witnesses(gcm: &Gcm2, p_max: u64, q_max: u64) -> Vec<Witness> {
    let threads: usize = std::env::var("KMC_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&t| t >= 1)
        .unwrap_or(1);
    if threads == 1 || p_max < 4 {
        return friedlander_witness_search(gcm, (3, p_max), (2, q_max));
    }
    let chunk = (p_max - 2).div_ceil(threads as u64).max(1);
    let mut hits: Vec<Witness> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        let mut lo = 3;
        while lo <= p_max {
            let hi = (lo + chunk - 1).min(p_max);
            let g = *gcm;
            handles.push(scope.spawn(move || friedlander_witness_search(&g, (lo, hi), (2, q_max))));
            lo = hi + 1;
        }
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("search worker panicked"))
            .collect()
    });
    hits.sort();
    hits
}

fn run_witness(a: i64, b: i64, p_max: u64, q_max: u64) -> Result<Report, ConfigError> {
    let gcm = Gcm2::new(a, b)?;
    let hits = searched_witnesses(&gcm, p_max, q_max);
    let mut checks = Vec::new();
    // re-verify every returned pair against the defining congruences
    let mut ok = true;
    for w in &hits {
        let ab = (a * b) as u64;
        let cond = w.q % w.p != 0
            && w.q % w.p != 1
            && w.q % w.p != w.p - 1
            && !ab.is_multiple_of(w.p)
            && !(ab * (a * b - 4) as u64).is_multiple_of(w.p)
            && pow_mod_u64(w.q, w.m, w.p) == 1;
        if !cond {
            ok = false;
        }
    }
    checks.push(if ok {
        Check::pass(
            "witness conditions re-verified",
            format!("{} pairs", hits.len()),
        )
    } else {
        Check::fail(
            "witness conditions re-verified",
            "a pair fails a congruence",
        )
    });
    Ok(Report {
        command: "witness",
        config: json!({"a": a, "b": b, "pMax": p_max, "qMax": q_max}),
        results: json!({
            "witnesses": hits.iter().map(|w| json!({"p": w.p, "q": w.q, "m": w.m})).collect::<Vec<_>>(),
        }),
        checks,
    })
}

fn pow_mod_u64(mut base: u64, mut e: u64, p: u64) -> u64 {
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

fn dispatch(cli: &Cli) -> Result<Report, ConfigError> {
    match &cli.command {
        Command::Roots {
            a,
            b,
            max_index,
            long_n,
            bound,
        } => run_roots(*a, *b, *max_index, *long_n, *bound),
        Command::Classify {
            a,
            b,
            p,
            smat,
            nmat,
        } => {
            let d = km_data(*a, *b, smat, nmat)?;
            run_classify(&d, *p)
        }
        Command::Invariants {
            a,
            b,
            p,
            smat,
            nmat,
        } => {
            let d = km_data(*a, *b, smat, nmat)?;
            run_invariants(&d, *p)
        }
        Command::Cohomology {
            a,
            b,
            p,
            q,
            verify,
            degree_bound,
            smat,
            nmat,
        } => {
            let d = km_data(*a, *b, smat, nmat)?;
            run_cohomology(&d, *p, *q, *verify, *degree_bound)
        }
        Command::Levi {
            s,
            t,
            n,
            m,
            q,
            seed,
            suite_size,
        } => run_levi(*s, *t, *n, *m, *q, *seed, *suite_size),
        Command::Witness { a, b, p_max, q_max } => run_witness(*a, *b, *p_max, *q_max),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string(&report.to_json()).expect("report serializes")
                ),
                Format::Text => print!("{}", report.render_text()),
            }
            if report.overall() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(ConfigError(msg)) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string(&json!({
                        "schemaVersion": 1,
                        "error": {"message": msg},
                    }))
                    .expect("error serializes")
                ),
                Format::Text => eprintln!("error: {msg}"),
            }
            ExitCode::from(2)
        }
    }
}
