//! Test corpora and a brute-force oracle that works on raw degree tables.
//!
//! The oracle only borrows the input table `τ` from the library; every derived
//! quantity is recomputed from its defining sup/inf expression with plain
//! `Ratio<i64>` arithmetic over bitmasks.

#![allow(dead_code)]

use fuzzitop_core::space::all_crisp_topologies;
use fuzzitop_core::{Carrier, Degree, FuzzyFamily, FuzzySpace};
use num_rational::Ratio;

pub type Q = Ratio<i64>;

pub fn q(n: i64, d: i64) -> Q {
    Ratio::new(n, d)
}

pub fn one() -> Q {
    Ratio::from_integer(1)
}

pub fn zero() -> Q {
    Ratio::from_integer(0)
}

pub fn to_q(d: Degree) -> Q {
    Ratio::new(d.numer() as i64, d.denom() as i64)
}

pub fn to_degree(v: Q) -> Degree {
    Degree::frac(*v.numer() as i128, *v.denom() as i128)
}

fn imp(a: Q, b: Q) -> Q {
    (one() - a + b).min(one())
}

fn neg(a: Q) -> Q {
    one() - a
}

fn max_of(it: impl Iterator<Item = Q>) -> Q {
    it.fold(zero(), Q::max)
}

fn min_of(it: impl Iterator<Item = Q>) -> Q {
    it.fold(one(), Q::min)
}

fn has(m: usize, x: usize) -> bool {
    m >> x & 1 == 1
}

/// A space as a raw table indexed by bitmask.
#[derive(Clone, Debug)]
pub struct Raw {
    pub n: usize,
    pub tau: Vec<Q>,
}

impl Raw {
    pub fn new(n: usize, tau: Vec<Q>) -> Self {
        assert_eq!(tau.len(), 1 << n);
        Raw { n, tau }
    }

    pub fn of(space: &FuzzySpace) -> Self {
        let tau = space.tau().as_slice().iter().map(|d| to_q(*d)).collect();
        Raw::new(space.carrier().len(), tau)
    }

    pub fn full(&self) -> usize {
        (1 << self.n) - 1
    }

    fn masks(&self) -> std::ops::Range<usize> {
        0..1 << self.n
    }

    /// `sup { f(B) : x∈B⊆A }`.
    pub fn nbhd_in(&self, f: &[Q], x: usize, a: usize) -> Q {
        max_of(
            self.masks()
                .filter(|b| b & !a == 0 && has(*b, x))
                .map(|b| f[b]),
        )
    }

    pub fn closure(&self, a: usize) -> Vec<Q> {
        let co = self.full() & !a;
        (0..self.n)
            .map(|x| neg(self.nbhd_in(&self.tau, x, co)))
            .collect()
    }

    /// `Int(μ)(x) = sup_{U∋x} min(τ(U), inf_{y∈U} μ(y))`.
    pub fn interior(&self, mu: &[Q]) -> Vec<Q> {
        (0..self.n)
            .map(|x| {
                max_of(self.masks().filter(|u| has(*u, x)).map(|u| {
                    let low = min_of((0..self.n).filter(|y| has(u, *y)).map(|y| mu[y]));
                    self.tau[u].min(low)
                }))
            })
            .collect()
    }

    pub fn tau_p(&self) -> Vec<Q> {
        self.masks()
            .map(|a| {
                let ic = self.interior(&self.closure(a));
                min_of((0..self.n).filter(|x| has(a, *x)).map(|x| ic[x]))
            })
            .collect()
    }

    pub fn cl_p(&self, a: usize) -> Vec<Q> {
        let tp = self.tau_p();
        let co = self.full() & !a;
        (0..self.n).map(|x| neg(self.nbhd_in(&tp, x, co))).collect()
    }

    pub fn t2p(&self) -> Q {
        let tp = self.tau_p();
        let mut acc = one();
        for x in 0..self.n {
            for y in 0..self.n {
                if x == y {
                    continue;
                }
                let mut best = zero();
                for b in self.masks() {
                    for c in self.masks().filter(|c| c & b == 0) {
                        best = best.max(self.nbhd_in(&tp, x, b).min(self.nbhd_in(&tp, y, c)));
                    }
                }
                acc = acc.min(best);
            }
        }
        acc
    }

    fn separate(&self, tp: &[Q], a: usize, b: usize) -> Q {
        let mut best = zero();
        for u in self.masks().filter(|u| a & !u == 0) {
            for v in self.masks().filter(|v| b & !v == 0 && v & u == 0) {
                best = best.max(tp[u].min(tp[v]));
            }
        }
        best
    }

    fn normal_term(&self, tp: &[Q], a: usize, b: usize) -> Q {
        let full = self.full();
        imp(tp[full & !a].min(tp[full & !b]), self.separate(tp, a, b))
    }

    pub fn t4p(&self) -> Q {
        let tp = self.tau_p();
        let mut acc = one();
        for a in self.masks() {
            for b in self.masks().filter(|b| b & a == 0) {
                acc = acc.min(self.normal_term(&tp, a, b));
            }
        }
        acc
    }

    pub fn t3p(&self) -> Q {
        let tp = self.tau_p();
        let mut acc = one();
        for x in 0..self.n {
            for b in self.masks().filter(|b| !has(*b, x)) {
                acc = acc.min(self.normal_term(&tp, 1 << x, b));
            }
        }
        acc
    }

    /// `inf_{A,B} (min(f(A),f(B)) → f(A∩B))`.
    pub fn intersection_degree(&self, f: &[Q]) -> Q {
        let mut acc = one();
        for a in self.masks() {
            for b in self.masks() {
                acc = acc.min(imp(f[a].min(f[b]), f[a & b]));
            }
        }
        acc
    }

    /// Union closure by enumerating every cover of A by subsets of A.
    pub fn union_closure(&self, beta: &[Q]) -> Vec<Q> {
        self.masks()
            .map(|a| {
                if a == 0 {
                    return one();
                }
                let subs: Vec<usize> = self.masks().filter(|b| b & !a == 0 && *b != 0).collect();
                let mut best = zero();
                for pick in 1u64..1 << subs.len() {
                    let mut cover = 0;
                    let mut low = one();
                    for (i, b) in subs.iter().enumerate() {
                        if pick >> i & 1 == 1 {
                            cover |= b;
                            low = low.min(beta[*b]);
                        }
                    }
                    if cover == a {
                        best = best.max(low);
                    }
                }
                best
            })
            .collect()
    }
}

/// The crisp Sierpiński space `{∅,{a},X}`.
pub fn s1() -> FuzzySpace {
    space(2, &[(0b01, q(1, 1))])
}

/// Two points with `τ({a})=3/4`, `τ({b})=1/2`.
pub fn s2() -> FuzzySpace {
    space(2, &[(0b01, q(3, 4)), (0b10, q(1, 2))])
}

/// A valid space on lettered points; unlisted proper subsets get 0.
pub fn space(n: usize, entries: &[(u32, Q)]) -> FuzzySpace {
    let c = Carrier::letters(n).unwrap().shared();
    let mut deg = vec![Degree::ZERO; 1 << n];
    deg[0] = Degree::ONE;
    deg[(1 << n) - 1] = Degree::ONE;
    for (m, v) in entries {
        deg[*m as usize] = to_degree(*v);
    }
    FuzzySpace::new(FuzzyFamily::from_vec(c, deg).unwrap()).unwrap()
}

pub fn crisp_upto(n: usize) -> Vec<FuzzySpace> {
    (1..=n)
        .flat_map(|k| all_crisp_topologies(k).unwrap())
        .collect()
}

/// Spaces with at most `max_n` points and grid at most `max_grid`, cycling both.
pub fn random_spaces(count: usize, max_n: usize, max_grid: u32, seed: u64) -> Vec<FuzzySpace> {
    (0..count)
        .map(|i| {
            let n = 1 + i % max_n;
            let g = 1 + (i / max_n) as u32 % max_grid;
            FuzzySpace::random(n, g, seed.wrapping_mul(1_000_003).wrapping_add(i as u64)).unwrap()
        })
        .collect()
}

/// Exhaustive crisp spaces on up to three points plus the two golden spaces.
pub fn small_fixed() -> Vec<FuzzySpace> {
    let mut v = crisp_upto(3);
    v.push(s1());
    v.push(s2());
    v
}

pub mod formulas {
    //! Seeded generator of well-scoped formulas over the labels `a`, `b`, `c`.

    use fuzzitop_core::dsl::ast::*;
    use fuzzitop_core::Degree;
    use rand::seq::SliceRandom;
    use rand::Rng;

    const LABELS: [&str; 3] = ["a", "b", "c"];

    #[derive(Default, Clone)]
    struct Scope {
        points: Vec<String>,
        sets: Vec<String>,
        fresh: usize,
    }

    fn point<R: Rng>(rng: &mut R, sc: &Scope) -> PointTerm {
        let r = rng.gen_range(0..4);
        if r == 0 {
            return PointTerm::Label(Ident::new(*LABELS.choose(rng).unwrap()));
        }
        if r == 1 && !sc.points.is_empty() {
            return PointTerm::Name(Ident::new(sc.points.choose(rng).unwrap().clone()));
        }
        PointTerm::Name(Ident::new(*LABELS.choose(rng).unwrap()))
    }

    fn set<R: Rng>(rng: &mut R, sc: &Scope, depth: u32) -> SetExpr {
        let leaf = depth == 0 || rng.gen_bool(0.5);
        if leaf {
            if !sc.sets.is_empty() && rng.gen_bool(0.5) {
                return SetExpr::Var(Ident::new(sc.sets.choose(rng).unwrap().clone()));
            }
            let k = rng.gen_range(0..3);
            return SetExpr::Literal((0..k).map(|_| point(rng, sc)).collect());
        }
        match rng.gen_range(0..3) {
            0 => SetExpr::Complement(Box::new(set(rng, sc, depth - 1))),
            1 => SetExpr::Union(
                Box::new(set(rng, sc, depth - 1)),
                Box::new(set(rng, sc, depth - 1)),
            ),
            _ => SetExpr::Inter(
                Box::new(set(rng, sc, depth - 1)),
                Box::new(set(rng, sc, depth - 1)),
            ),
        }
    }

    fn atom<R: Rng>(rng: &mut R, sc: &Scope) -> Formula {
        match rng.gen_range(0..5) {
            0 => {
                let den = rng.gen_range(1..7);
                Formula::Const(Degree::frac(rng.gen_range(0..=den), den))
            }
            1 => {
                let p = *[
                    SetPred::Open,
                    SetPred::Preopen,
                    SetPred::Closed,
                    SetPred::Pclosed,
                ]
                .choose(rng)
                .unwrap();
                Formula::SetPred(p, set(rng, sc, 2))
            }
            2 => {
                let r = *[SetRel::Subset, SetRel::Disjoint, SetRel::Eq]
                    .choose(rng)
                    .unwrap();
                Formula::SetRel(r, set(rng, sc, 1), set(rng, sc, 1))
            }
            3 => {
                let p = *[
                    PointPred::In,
                    PointPred::Nbhd,
                    PointPred::Pnbhd,
                    PointPred::Cl,
                    PointPred::Pcl,
                ]
                .choose(rng)
                .unwrap();
                Formula::PointPred(p, point(rng, sc), set(rng, sc, 2))
            }
            _ => Formula::Builtin(
                *[Builtin::T2p, Builtin::T4p, Builtin::Ptop, Builtin::GammaP]
                    .choose(rng)
                    .unwrap(),
            ),
        }
    }

    fn formula<R: Rng>(rng: &mut R, sc: &mut Scope, depth: u32) -> Formula {
        if depth == 0 || rng.gen_bool(0.25) {
            return atom(rng, sc);
        }
        match rng.gen_range(0..4) {
            0 => Formula::Not(Box::new(formula(rng, sc, depth - 1))),
            1 | 2 => {
                let op = *[
                    BinOp::And,
                    BinOp::Or,
                    BinOp::Tensor,
                    BinOp::Implies,
                    BinOp::Iff,
                ]
                .choose(rng)
                .unwrap();
                let a = formula(rng, sc, depth - 1);
                let b = formula(rng, sc, depth - 1);
                Formula::Bin(op, Box::new(a), Box::new(b))
            }
            _ => {
                let sort = if rng.gen_bool(0.5) {
                    Sort::Point
                } else {
                    Sort::Subset
                };
                sc.fresh += 1;
                let name = match sort {
                    Sort::Point => format!("x{}", sc.fresh),
                    Sort::Subset => format!("S{}", sc.fresh),
                };
                let mut inner = sc.clone();
                match sort {
                    Sort::Point => inner.points.push(name.clone()),
                    Sort::Subset => inner.sets.push(name.clone()),
                }
                let body = formula(rng, &mut inner, depth - 1);
                sc.fresh = inner.fresh;
                let q = if rng.gen_bool(0.5) {
                    Quantifier::Forall
                } else {
                    Quantifier::Exists
                };
                Formula::Quant {
                    q,
                    var: Ident::new(name),
                    sort,
                    body: Box::new(body),
                }
            }
        }
    }

    /// A closed formula of nesting depth at most `depth`.
    pub fn closed<R: Rng>(rng: &mut R, depth: u32) -> Formula {
        formula(rng, &mut Scope::default(), depth)
    }
}
