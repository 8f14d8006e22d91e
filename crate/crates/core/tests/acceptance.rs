//! Acceptance run: one PASS/FAIL line per criterion, exact arithmetic throughout.
//!
//! Runs as a plain binary (`harness = false`) so the lines always reach the
//! terminal. It exits non-zero on any failure other than the documented
//! T3.3 counterexample, which is reported as FAIL but does not break the build.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use common::*;
use fuzzitop_core::checker::{check, check_theorem, lookup, CheckOptions, Status};
use fuzzitop_core::compact::{
    beta1_degree, beta5_degree, cover_degrees, fi_degree, gamma, gamma_of, gamma_p, lc_degree,
    lpc_degree, GenericOptions, Path,
};
use fuzzitop_core::dsl::{eval, parse, Env};
use fuzzitop_core::maps::{
    continuity_degree, openness_degree, openness_degrees, openness_via_prebase, reduced_prebase,
    PointMap,
};
use fuzzitop_core::nets::{
    adh_p, beta2, beta3, beta4, oracle_net_predicates, pre_accumulates, pre_converges, ExplicitNet,
    NetRep,
};
use fuzzitop_core::preopen::union_closure;
use fuzzitop_core::product::Product;
use fuzzitop_core::search::{search, SearchOptions};
use fuzzitop_core::separation::{t2p, t4p};
use fuzzitop_core::space::all_crisp_topologies;
use fuzzitop_core::{Degree, FuzzyFamily, FuzzySpace, PreopenStructure, SubsetId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    /// A failure that is documented as a genuine counterexample.
    expected: bool,
    detail: String,
}

impl Outcome {
    fn from_errors(errors: Vec<String>, summary: String) -> Outcome {
        match errors.first() {
            None => Outcome {
                pass: true,
                expected: false,
                detail: summary,
            },
            Some(first) => Outcome {
                pass: false,
                expected: false,
                detail: format!("{} violation(s); first: {first}", errors.len()),
            },
        }
    }
}

const RANDOM_SEED: u64 = 2024;

fn random500() -> Vec<FuzzySpace> {
    random_spaces(500, 4, 6, RANDOM_SEED)
}

fn upto3(extra_random: usize) -> Vec<FuzzySpace> {
    let mut v = small_fixed();
    v.extend(random_spaces(extra_random, 3, 6, RANDOM_SEED + 1));
    v
}

fn show(s: &FuzzySpace) -> String {
    serde_json::to_string(&fuzzitop_core::io::space_file(s.tau())).unwrap()
}

fn c1_goldens() -> Outcome {
    let mut errors = Vec::new();
    let mut expect = |what: &str, got: Vec<Q>, want: Vec<Q>| {
        if got != want {
            errors.push(format!("{what}: got {got:?}, want {want:?}"));
        }
    };
    let deg = |d: Degree| to_q(d);
    for (name, space, tau_p, t2) in [
        ("S1", s1(), vec![one(), one(), zero(), one()], zero()),
        ("S2", s2(), vec![one(), q(3, 4), q(1, 2), one()], q(1, 2)),
    ] {
        let raw = Raw::of(&space);
        let pre = PreopenStructure::new(space);
        expect(&format!("oracle tau_p({name})"), raw.tau_p(), tau_p.clone());
        let lib: Vec<Q> = pre
            .tau_p_family()
            .as_slice()
            .iter()
            .map(|d| deg(*d))
            .collect();
        expect(&format!("tau_p({name})"), lib, tau_p);
        expect(&format!("oracle t2p({name})"), vec![raw.t2p()], vec![t2]);
        expect(&format!("t2p({name})"), vec![deg(t2p(&pre))], vec![t2]);
    }
    let raw = Raw::of(&s2());
    let pre = PreopenStructure::new(s2());
    expect("oracle t4p(S2)", vec![raw.t4p()], vec![one()]);
    expect("t4p(S2)", vec![deg(t4p(&pre))], vec![one()]);
    let b = SubsetId(0b10);
    expect(
        "oracle cl_p(S2,{b})",
        raw.cl_p(b.index()),
        vec![q(1, 4), one()],
    );
    let cl: Vec<Q> = pre.cl_p(b).values().iter().map(|d| deg(*d)).collect();
    expect("cl_p(S2,{b})", cl, vec![q(1, 4), one()]);
    Outcome::from_errors(
        errors,
        "oracle and library agree with all pinned values".into(),
    )
}

fn c2_invariants() -> Outcome {
    let mut spaces = small_fixed();
    spaces.extend(random500());
    let opts = GenericOptions::default();
    let mut errors = Vec::new();
    let mut rng_seed = 0u64;
    for s in &spaces {
        let pre = PreopenStructure::new(s.clone());
        let tp = pre.tau_p_family();
        if !s.tau().le(tp) {
            errors.push(format!("tau > tau_p on {}", show(s)));
        }
        if &union_closure(tp) != tp {
            errors.push(format!("tau_p not union closed on {}", show(s)));
        }
        rng_seed += 1;
        let random = {
            use rand::Rng;
            let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
            FuzzyFamily::from_fn(s.carrier().clone(), |_| {
                Degree::frac(rng.gen_range(0..=6), 6)
            })
        };
        for r in [s.tau().clone(), tp.clone(), pre.f_p_family(), random] {
            for a in s.carrier().subsets() {
                let d = cover_degrees(&r, a, &pre, None).unwrap();
                if d.open > d.preopen {
                    errors.push(format!(
                        "K∘ > K_P at {} on {}",
                        s.carrier().show(a),
                        show(s)
                    ));
                }
            }
        }
        let lpc = lpc_degree(&pre, Path::Analytic, &opts).unwrap();
        let gp = gamma_p(&pre, Path::Analytic, &opts).unwrap();
        if lpc < gp {
            errors.push(format!("L_PC {lpc} < Γ_P {gp} on {}", show(s)));
        }
        let g_of = gamma_of(tp, Path::Analytic, &opts).unwrap();
        if g_of != gp {
            errors.push(format!("Γ_P {gp} ≠ Γ(X,τ_P) {g_of} on {}", show(s)));
        }
    }
    Outcome::from_errors(errors, format!("{} spaces, zero violations", spaces.len()))
}

fn c3_degeneracy() -> Outcome {
    let mut errors = Vec::new();
    let opts = GenericOptions::default();
    let mut count = [0usize; 2];
    let mut all = small_fixed();
    all.extend(random500());
    let generic: Vec<FuzzySpace> = upto3(40);
    for (k, (spaces, path)) in [(&all, Path::Analytic), (&generic, Path::Generic)]
        .into_iter()
        .enumerate()
    {
        for s in spaces.iter() {
            let pre = PreopenStructure::new(s.clone());
            let tp = pre.tau_p_family().clone();
            let reduced = reduced_prebase(&pre);
            let values = [
                ("Γ", gamma(&pre, path, &opts)),
                ("Γ_P", gamma_p(&pre, path, &opts)),
                ("Γ(X,τ_P)", gamma_of(&tp, path, &opts)),
                ("β1[τ_P]", beta1_degree(&pre, &tp, path, &opts)),
                ("β1[reduced]", beta1_degree(&pre, &reduced, path, &opts)),
                ("β2", Ok(beta2(&pre))),
                ("β3", Ok(beta3(&pre))),
                ("β4", Ok(beta4(&pre))),
                ("β5", beta5_degree(&pre, path, &opts)),
                ("LC", lc_degree(&pre, path, &opts)),
                ("L_PC", lpc_degree(&pre, path, &opts)),
            ];
            for (name, v) in values {
                match v {
                    Ok(d) if d.is_one() => {}
                    Ok(d) => errors.push(format!("{name} = {d} ({path:?}) on {}", show(s))),
                    Err(e) => errors.push(format!("{name} ({path:?}) failed: {e} on {}", show(s))),
                }
            }
            count[k] += 1;
        }
    }
    Outcome::from_errors(
        errors,
        format!(
            "all eleven degrees are 1: analytic on {} spaces, generic on {} spaces (n ≤ 3)",
            count[0], count[1]
        ),
    )
}

fn c4_theorems() -> Outcome {
    let mut spaces = small_fixed();
    spaces.extend(random500());
    let opts = CheckOptions::default();
    let mut fails: BTreeMap<&str, usize> = BTreeMap::new();
    let mut skipped: BTreeMap<&str, usize> = BTreeMap::new();
    let mut unexpected = Vec::new();
    let mut first_t33 = None;
    for s in &spaces {
        let pre = PreopenStructure::new(s.clone());
        for r in check(s, "all", &opts).unwrap() {
            match r.status {
                Status::Pass => {}
                Status::Skipped => *skipped.entry(r.id).or_default() += 1,
                Status::Fail => {
                    *fails.entry(r.id).or_default() += 1;
                    let ptop = pre.p_topological_degree();
                    if r.id == "T3.3" && !ptop.is_one() {
                        first_t33.get_or_insert_with(|| {
                            let w = &r.violations[0];
                            format!(
                                "{} with {:?}: lhs {} > rhs {} (P-topological degree {ptop})",
                                show(s),
                                w.args,
                                w.lhs,
                                w.rhs
                            )
                        });
                    } else {
                        unexpected.push(format!(
                            "{} on {}: {:?}",
                            r.id,
                            show(s),
                            r.violations.first()
                        ));
                    }
                }
            }
        }
    }

    let tight =
        check_theorem(&PreopenStructure::new(s2()), lookup("T3.3").unwrap(), &opts).unwrap();
    let t = tight.tight.as_ref();
    let tight_ok = tight.status == Status::Pass
        && t.is_some_and(|t| {
            t.args.get("A").map(String::as_str) == Some("{a}") && t.slack == 0.into()
        });
    if !tight_ok {
        unexpected.push(format!("T3.3 tight witness on S2 is {t:?}"));
    }

    let summary = format!(
        "{} spaces × {} checks; failures {fails:?}; skipped by hypothesis {skipped:?}; T3.3 on S2 tight at A={{a}} with slack 0",
        spaces.len(),
        fuzzitop_core::checker::REGISTRY.len()
    );
    if !unexpected.is_empty() {
        return Outcome {
            pass: false,
            expected: false,
            detail: format!("{summary}; unexpected: {}", unexpected[0]),
        };
    }
    match first_t33 {
        None => Outcome {
            pass: true,
            expected: false,
            detail: summary,
        },
        Some(example) => Outcome {
            pass: false,
            expected: true,
            detail: format!(
                "{summary}. Every failure is T3.3 on a space that is not P-topological; the \
                 statement carries no such hypothesis, so it is left failing. First: {example}"
            ),
        },
    }
}

fn c5_nets() -> Outcome {
    let mut errors = Vec::new();
    let spaces = upto3(60);
    let mut nets_checked = 0usize;
    for s in &spaces {
        let pre = PreopenStructure::new(s.clone());
        let n = s.carrier().len();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for len in 1..=4u32 {
            for code in 0..n.pow(len) {
                let mut c = code;
                cycles.push(
                    (0..len)
                        .map(|_| {
                            let v = c % n;
                            c /= n;
                            v
                        })
                        .collect(),
                );
            }
        }
        for cycle in &cycles {
            let kernel = cycle.iter().fold(SubsetId::EMPTY, |k, v| k.with(*v));
            let rep = NetRep::new(kernel).unwrap();
            for prefix in std::iter::once(vec![]).chain((0..n).map(|p| vec![p])) {
                let net = ExplicitNet::periodic(prefix, cycle.clone()).unwrap();
                nets_checked += 1;
                for x in 0..n {
                    let (conv, acc) = oracle_net_predicates(&pre, &net, x).unwrap();
                    if conv != pre_converges(&pre, &rep, x) || acc != pre_accumulates(&pre, &rep, x)
                    {
                        errors.push(format!("net {net:?} at point {x} on {}", show(s)));
                    }
                }
            }
        }
    }
    let adh_spaces = random_spaces(200, 4, 6, RANDOM_SEED + 2);
    for s in &adh_spaces {
        let pre = PreopenStructure::new(s.clone());
        for e in s.carrier().subsets().filter(|e| !e.is_empty()) {
            if adh_p(&pre, &NetRep::new(e).unwrap()) != pre.cl_p(e) {
                errors.push(format!(
                    "adh_p ≠ cl_p at {} on {}",
                    s.carrier().show(e),
                    show(s)
                ));
            }
        }
    }
    Outcome::from_errors(
        errors,
        format!(
            "{nets_checked} explicit nets on {} spaces; adh_p = cl_p on {} spaces",
            spaces.len(),
            adh_spaces.len()
        ),
    )
}

fn c6_refinement() -> Outcome {
    let mut errors = Vec::new();
    let spaces = upto3(20);
    for s in &spaces {
        let pre = PreopenStructure::new(s.clone());
        let tp = pre.tau_p_family().clone();
        let fp = pre.f_p_family();
        let at = |r: u32| {
            let o = GenericOptions::default().refine(Some(r));
            [
                ("fI(τ_P)", fi_degree(&tp, &o)),
                ("fI(Ϝ_P)", fi_degree(&fp, &o)),
                ("Γ", gamma(&pre, Path::Generic, &o)),
                ("β1", beta1_degree(&pre, &tp, Path::Generic, &o)),
                ("β5", beta5_degree(&pre, Path::Generic, &o)),
            ]
            .map(|(name, v)| (name, v.map_err(|e| e.to_string())))
        };
        let mut prev = at(1);
        for r in [2, 4, 8] {
            let next = at(r);
            for ((name, a), (_, b)) in prev.iter().zip(&next) {
                if a != b {
                    errors.push(format!(
                        "{name} changes from r={} to r={r}: {a:?} vs {b:?} on {}",
                        r / 2,
                        show(s)
                    ));
                }
            }
            prev = next;
        }
    }
    Outcome::from_errors(
        errors,
        format!(
            "fI, Γ, β1, β5 unchanged for r = 1→2→4→8 on {} spaces",
            spaces.len()
        ),
    )
}

fn c7_prebase() -> Outcome {
    let mut errors = Vec::new();
    let mut spaces = small_fixed();
    spaces.extend(random500());
    for s in &spaces {
        let pre = PreopenStructure::new(s.clone());
        for beta in [pre.tau_p_family().clone(), reduced_prebase(&pre)] {
            match pre.is_prebase_degree(&beta) {
                Ok(d) if d.is_one() => {}
                other => errors.push(format!("pre-base degree {other:?} on {}", show(s))),
            }
        }
    }

    let three: Vec<PreopenStructure> = all_crisp_topologies(3)
        .unwrap()
        .into_iter()
        .map(PreopenStructure::new)
        .collect();
    let mut pairs = 0usize;
    for x in &three {
        let beta = reduced_prebase(x);
        for y in &three {
            for f in PointMap::all(x.carrier().clone(), y.carrier().clone()) {
                pairs += 1;
                let op = openness_degrees(&f, x, y).unwrap().o_p;
                for b in [&beta, x.tau_p_family()] {
                    let via = openness_via_prebase(&f, b, x, y).unwrap();
                    if via != op {
                        errors.push(format!("O_P {op} vs pre-base form {via}"));
                    }
                }
            }
        }
    }

    let mut two: Vec<FuzzySpace> = all_crisp_topologies(2).unwrap();
    two.extend([s1(), s2()]);
    two.extend((0..4).map(|i| FuzzySpace::random(2, 4, 100 + i).unwrap()));
    let mut three_f: Vec<FuzzySpace> = all_crisp_topologies(3).unwrap();
    three_f.extend((0..10).map(|i| FuzzySpace::random(3, 4, 200 + i).unwrap()));
    let mut products = 0usize;
    let mut factor_sets: Vec<[FuzzySpace; 2]> = Vec::new();
    for a in &two {
        for b in &two {
            factor_sets.push([a.clone(), b.clone()]);
        }
        for b in &three_f {
            factor_sets.push([a.clone(), b.clone()]);
        }
    }
    for fs in &factor_sets {
        let prod = Product::new(fs).unwrap();
        products += 1;
        for (s, factor) in prod.factors().iter().enumerate() {
            let p = prod.projection(s).unwrap();
            let c_p = continuity_degree(&p, prod.preopen(), factor.tau()).unwrap();
            let o_p = openness_degree(&p, prod.preopen(), factor.tau_p_family()).unwrap();
            if !c_p.is_one() || !o_p.is_one() {
                errors.push(format!("projection {s}: C_P {c_p}, O_P {o_p}"));
            }
        }
    }
    Outcome::from_errors(
        errors,
        format!(
            "pre-base degree 1 on {} spaces; {pairs} crisp maps agree; {products} products (2×2, 2×3) have projections with C_P = O_P = 1",
            spaces.len()
        ),
    )
}

const T2P_FORMULA: &str = "forall x:point. forall y:point. in(x, {y}) \\/ \
    (exists B:subset. exists C:subset. disjoint(B, C) /\\ pnbhd(x, B) /\\ pnbhd(y, C))";

fn c8_dsl() -> Outcome {
    let mut errors = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    for _ in 0..1000 {
        let f = formulas::closed(&mut rng, 5);
        let text = f.to_string();
        match parse(&text) {
            Ok(g) if g == f && g.to_string() == text => {}
            Ok(_) => errors.push(format!("reparse differs: {text}")),
            Err(e) => errors.push(format!("{e}: {text}")),
        }
    }
    let f = parse(T2P_FORMULA).unwrap();
    let spaces = upto3(60);
    for s in &spaces {
        let pre = PreopenStructure::new(s.clone());
        let v = eval(&f, &pre, &Env::new()).unwrap();
        if v != t2p(&pre) {
            errors.push(format!("DSL T2 {v} ≠ t2p {} on {}", t2p(&pre), show(s)));
        }
    }
    Outcome::from_errors(
        errors,
        format!(
            "1000 formulas reparse; DSL T2 formula equals t2p on {} spaces",
            spaces.len()
        ),
    )
}

fn c9_converse() -> Outcome {
    let opts = SearchOptions {
        points: 2,
        grid: 2,
        converse: true,
        exhaustive: true,
        ..SearchOptions::default()
    };
    let report = search("L3.4", &opts).unwrap();
    let mut errors: Vec<String> = report
        .violations
        .iter()
        .map(|v| format!("violation at sample {}", v.sample))
        .collect();
    let witnesses = report.converse.clone().unwrap_or_default();
    let mut strict = 0;
    for w in &witnesses {
        let text = serde_json::to_string(&w.space).unwrap();
        let pre = PreopenStructure::new(fuzzitop_core::io::parse_space(&text).unwrap());
        if t4p(&pre) > t2p(&pre) {
            strict += 1;
        } else {
            errors.push(format!("witness {text} is not strict"));
        }
    }
    if strict == 0 {
        errors.push("no space with t4p > t2p".into());
    }
    let example = witnesses
        .iter()
        .find(|w| w.instance.lhs.is_zero())
        .or(witnesses.first())
        .map(|w| {
            format!(
                "sample {}: t2p {} < t4p {}",
                w.sample, w.instance.lhs, w.instance.rhs
            )
        })
        .unwrap_or_default();
    Outcome::from_errors(
        errors,
        format!(
            "{} spaces scanned, {strict} strict witnesses re-verified; {example}",
            report.spaces_tried
        ),
    )
}

type Criterion = (u8, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "golden values", c1_goldens),
        (2, "invariant suite", c2_invariants),
        (3, "compactness degeneracy", c3_degeneracy),
        (4, "theorem suite", c4_theorems),
        (5, "net reduction oracle", c5_nets),
        (6, "grid refinement stability", c6_refinement),
        (7, "pre-base machinery", c7_prebase),
        (8, "DSL round trip and agreement", c8_dsl),
        (9, "converse search", c9_converse),
    ];
    let only: Option<u8> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .and_then(|s| s.parse().ok());
    let mut broken = false;
    for (id, name, run) in criteria {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let t = Instant::now();
        let o = run();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {id} {status} {name} [{:.2?}]: {}",
            t.elapsed(),
            o.detail
        );
        broken |= !o.pass && !o.expected;
    }
    if broken {
        std::process::exit(1);
    }
}
