mod common;

use common::formulas;
use fuzzitop_core::compact::cover_degrees;
use fuzzitop_core::dsl::ast::{BinOp, Formula};
use fuzzitop_core::dsl::{eval, parse, Env};
use fuzzitop_core::io::{parse_space, space_to_json};
use fuzzitop_core::nets::{adh_p, pre_converges, NetRep};
use fuzzitop_core::preopen::union_closure;
use fuzzitop_core::separation::t2p;
use fuzzitop_core::{Degree, FuzzyFamily, FuzzySpace, PreopenStructure, SubsetId};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn degree() -> impl Strategy<Value = Degree> {
    (1i128..=12).prop_flat_map(|den| (0..=den).prop_map(move |num| Degree::frac(num, den)))
}

fn space(max_n: usize) -> impl Strategy<Value = FuzzySpace> {
    (1..=max_n, 1u32..=6, any::<u64>())
        .prop_map(|(n, g, seed)| FuzzySpace::random(n, g, seed).unwrap())
}

/// Three-point spaces, so every label the formula generator uses exists.
fn abc_space() -> impl Strategy<Value = FuzzySpace> {
    (1u32..=6, any::<u64>()).prop_map(|(g, seed)| FuzzySpace::random(3, g, seed).unwrap())
}

fn family_on(s: &FuzzySpace, seed: u64) -> FuzzyFamily {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    FuzzyFamily::from_fn(s.carrier().clone(), |_| {
        Degree::frac(rng.gen_range(0..=4), 4)
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn lukasiewicz_laws(a in degree(), b in degree(), c in degree()) {
        prop_assert_eq!(a.tnorm(b), b.tnorm(a));
        prop_assert_eq!(a.tnorm(b).tnorm(c), a.tnorm(b.tnorm(c)));
        prop_assert_eq!(a.tnorm(b) <= c, a <= b.implies(c));
        prop_assert_eq!(a.implies(b).is_one(), a <= b);
        prop_assert_eq!(a.iff(b), a.implies(b).meet(b.implies(a)));
        prop_assert_eq!(a.neg().neg(), a);
    }

    #[test]
    fn generated_spaces_are_valid(s in space(4)) {
        prop_assert!(s.validate().valid);
        let back = parse_space(&space_to_json(s.tau())).unwrap();
        prop_assert_eq!(back.tau(), s.tau());
    }

    #[test]
    fn preopen_dominates_and_is_union_closed(s in space(4)) {
        let pre = PreopenStructure::new(s.clone());
        prop_assert!(s.tau().le(pre.tau_p_family()));
        prop_assert_eq!(&union_closure(pre.tau_p_family()), pre.tau_p_family());
        prop_assert!(pre.is_prebase_degree(pre.tau_p_family()).unwrap().is_one());
    }

    #[test]
    fn open_cover_degree_below_preopen(s in space(4), seed in any::<u64>()) {
        let pre = PreopenStructure::new(s.clone());
        let r = family_on(&s, seed);
        for a in s.carrier().subsets() {
            let d = cover_degrees(&r, a, &pre, None).unwrap();
            prop_assert!(d.open <= d.preopen);
        }
    }

    #[test]
    fn net_closed_forms(s in space(4)) {
        let pre = PreopenStructure::new(s);
        let c = pre.carrier().clone();
        for e in c.subsets().filter(|e| !e.is_empty()) {
            let net = NetRep::new(e).unwrap();
            prop_assert_eq!(adh_p(&pre, &net), pre.cl_p(e));
            for x in 0..c.len() {
                let closed = Degree::inf_over(e.points().map(|y| pre.cl_p(SubsetId::singleton(y)).at(x)));
                prop_assert_eq!(pre_converges(&pre, &net, x), closed);
            }
        }
    }

    #[test]
    fn hausdorff_degree_passes_to_subspaces(s in space(4)) {
        let pre = PreopenStructure::new(s.clone());
        let whole = t2p(&pre);
        for a in s.carrier().subsets().filter(|a| !a.is_empty()) {
            let trace = pre.tau_p_family().trace(a).unwrap();
            prop_assert!(whole <= fuzzitop_core::separation::t2p_of(&trace));
        }
    }

    #[test]
    fn printed_formulas_reparse(seed in any::<u64>()) {
        let f = formulas::closed(&mut ChaCha8Rng::seed_from_u64(seed), 4);
        let text = f.to_string();
        prop_assert_eq!(parse(&text).unwrap(), f, "{}", text);
    }

    #[test]
    fn implication_is_residuum(seed in any::<u64>(), s in abc_space()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = formulas::closed(&mut rng, 2);
        let b = formulas::closed(&mut rng, 2);
        let pre = PreopenStructure::new(s);
        let env = Env::new();
        let va = eval(&a, &pre, &env).unwrap();
        let vb = eval(&b, &pre, &env).unwrap();
        let f = Formula::Bin(BinOp::Implies, Box::new(a), Box::new(b));
        prop_assert_eq!(eval(&f, &pre, &env).unwrap(), va.implies(vb));
    }
}
