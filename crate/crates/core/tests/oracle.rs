//! Library values checked against the brute-force oracle in `common`.

mod common;

use common::*;
use fuzzitop_core::preopen::union_closure;
use fuzzitop_core::separation::{t2p, t3p, t4p};
use fuzzitop_core::{PreopenStructure, SubsetId};

#[test]
fn oracle_goldens() {
    let s1 = Raw::of(&common::s1());
    let s2 = Raw::of(&common::s2());
    // Frozen from the oracle's own output.
    assert_eq!(s1.tau_p(), vec![one(), one(), zero(), one()]);
    assert_eq!(s2.tau_p(), vec![one(), q(3, 4), q(1, 2), one()]);
    assert_eq!(s1.t2p(), zero());
    assert_eq!(s2.t2p(), q(1, 2));
    assert_eq!(s2.t4p(), one());
    assert_eq!(s2.t3p(), one());
    assert_eq!(s2.cl_p(0b10), vec![q(1, 4), one()]);
    assert_eq!(s1.t4p(), one());
}

fn agree(space: &fuzzitop_core::FuzzySpace) {
    let raw = Raw::of(space);
    let pre = PreopenStructure::new(space.clone());
    let tp: Vec<Q> = pre
        .tau_p_family()
        .as_slice()
        .iter()
        .map(|d| to_q(*d))
        .collect();
    assert_eq!(tp, raw.tau_p(), "{space:?}");
    assert_eq!(to_q(t2p(&pre)), raw.t2p(), "{space:?}");
    assert_eq!(to_q(t3p(&pre)), raw.t3p(), "{space:?}");
    assert_eq!(to_q(t4p(&pre)), raw.t4p(), "{space:?}");
    assert_eq!(
        to_q(pre.p_topological_degree()),
        raw.intersection_degree(&tp)
    );
    for a in pre.carrier().subsets() {
        let cl: Vec<Q> = pre.cl_p(a).values().iter().map(|d| to_q(*d)).collect();
        assert_eq!(cl, raw.cl_p(a.index()));
        let c: Vec<Q> = pre.closure(a).values().iter().map(|d| to_q(*d)).collect();
        assert_eq!(c, raw.closure(a.index()));
    }
    let uc: Vec<Q> = union_closure(pre.tau_p_family())
        .as_slice()
        .iter()
        .map(|d| to_q(*d))
        .collect();
    assert_eq!(uc, raw.union_closure(&tp));
}

#[test]
fn library_matches_oracle_on_small_spaces() {
    for s in small_fixed() {
        agree(&s);
    }
}

#[test]
fn library_matches_oracle_on_random_spaces() {
    for s in random_spaces(60, 3, 6, 11) {
        agree(&s);
    }
}

#[test]
fn closure_of_members_is_one() {
    for s in random_spaces(30, 3, 4, 5) {
        let pre = PreopenStructure::new(s);
        for a in pre.carrier().subsets() {
            for x in a.points() {
                assert!(pre.cl_p(a).at(x).is_one());
            }
        }
        assert!(pre
            .cl_p(SubsetId::EMPTY)
            .values()
            .iter()
            .all(|d| d.is_zero()));
    }
}
