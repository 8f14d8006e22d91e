//! Covering degrees and the compactness family.
//!
//! Every compactness-type degree has two evaluation paths. The analytic path
//! returns 1: on a finite carrier the witness `℘ = ℜ` makes each consequent at
//! least as large as its antecedent. The generic path evaluates the defining
//! formula with the family quantifiers discretized to a [`FamilyGrid`].

use crate::carrier::{ensure_cap, Carrier, SubsetId, FAMILY_CAP};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::family::FuzzyFamily;
use crate::par::Exec;
use crate::preopen::PreopenStructure;
use crate::quantify::{
    minimize, minimize_split, Budget, FamilyGrid, FamilyOrder, Objective, Problem, Scale,
};

/// `K(ℜ,A) = inf_{x∈A} sup_{B∋x} ℜ(B)`.
pub fn k_degree(r: &FuzzyFamily, a: SubsetId) -> Degree {
    let c = r.carrier();
    Degree::inf_over(
        a.points()
            .map(|x| Degree::sup_over(c.subsets().filter(|b| b.contains(x)).map(|b| r.get(b)))),
    )
}

/// `[ℜ⊆T] = inf_B (ℜ(B) → T(B))`.
pub fn family_subset_degree(r: &FuzzyFamily, t: &FuzzyFamily) -> Result<Degree> {
    r.same_carrier(t)?;
    Ok(Degree::inf_over(
        r.as_slice()
            .iter()
            .zip(t.as_slice())
            .map(|(a, b)| a.implies(*b)),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverDegrees {
    /// `K(ℜ,A) ⊗ [ℜ⊆τ]`.
    pub open: Degree,
    /// `K(ℜ,A) ⊗ [ℜ⊆τ_P]`.
    pub preopen: Degree,
    /// `K(ℜ,A) ⊗ [ℜ⊆φ]` when a subbase family is supplied.
    pub subbase: Option<Degree>,
}

pub fn cover_degrees(
    r: &FuzzyFamily,
    a: SubsetId,
    pre: &PreopenStructure,
    phi: Option<&FuzzyFamily>,
) -> Result<CoverDegrees> {
    let k = k_degree(r, a);
    Ok(CoverDegrees {
        open: k.tnorm(family_subset_degree(r, pre.tau())?),
        preopen: k.tnorm(family_subset_degree(r, pre.tau_p_family())?),
        subbase: match phi {
            Some(phi) => Some(k.tnorm(family_subset_degree(r, phi)?)),
            None => None,
        },
    })
}

/// Literal `1 - inf{δ : ℘_δ finite}` over `{0} ∪ values(℘)`; every cut is finite here.
pub fn ff_degree(p: &FuzzyFamily) -> Degree {
    let mut candidates = p.values();
    candidates.insert(0, Degree::ZERO);
    candidates.dedup();
    let finite = |delta: Degree| p.iter().filter(|(_, d)| *d > delta).count() < usize::MAX;
    Degree::inf_over(candidates.into_iter().filter(|d| finite(*d))).neg()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Path {
    #[default]
    Analytic,
    Generic,
}

#[derive(Clone, Copy, Debug)]
pub struct GenericOptions {
    /// Extra uniform refinement `i/r` of the family grid.
    pub refine: Option<u32>,
    pub order: FamilyOrder,
    pub exec: Exec,
    /// Node limit for one family search.
    pub max_nodes: u64,
}

impl Default for GenericOptions {
    fn default() -> Self {
        GenericOptions {
            refine: None,
            order: FamilyOrder::Crisp,
            exec: Exec::Parallel,
            max_nodes: 2_000_000_000,
        }
    }
}

impl GenericOptions {
    pub fn refine(mut self, r: Option<u32>) -> Self {
        self.refine = r;
        self
    }

    pub fn exec(mut self, e: Exec) -> Self {
        self.exec = e;
        self
    }
}

/// Integer view of a carrier's subset lattice.
struct Lattice {
    size: usize,
    s: Scale,
    containing: Vec<Vec<usize>>,
    avoiding: Vec<Vec<usize>>,
}

impl Lattice {
    fn new(c: &Carrier, s: Scale) -> Self {
        let n = c.len();
        let size = c.powerset_len();
        let containing = (0..n)
            .map(|x| (0..size).filter(|m| m >> x & 1 == 1).collect())
            .collect();
        let avoiding = (0..n)
            .map(|x| (0..size).filter(|m| m >> x & 1 == 0).collect())
            .collect();
        Lattice {
            size,
            s,
            containing,
            avoiding,
        }
    }

    fn den(&self) -> i64 {
        self.s.den
    }

    /// `K(r,X)`.
    fn k(&self, r: &[i64]) -> i64 {
        self.containing
            .iter()
            .map(|bs| bs.iter().map(|&b| r[b]).max().unwrap_or(0))
            .min()
            .unwrap_or(self.den())
    }

    /// `[r⊆t]`.
    fn sub(&self, r: &[i64], t: &[i64]) -> i64 {
        r.iter()
            .zip(t)
            .map(|(a, b)| self.s.implies(*a, *b))
            .min()
            .unwrap_or(self.den())
    }

    /// `sup_x inf_{B∌x} (1 - r(B))`.
    fn cons(&self, r: &[i64]) -> i64 {
        self.avoiding
            .iter()
            .map(|bs| {
                bs.iter()
                    .map(|&b| self.den() - r[b])
                    .min()
                    .unwrap_or(self.den())
            })
            .max()
            .unwrap_or(0)
    }

    /// Literal finite-subfamily degree, mirroring [`ff_degree`].
    fn ff(&self, r: &[i64]) -> i64 {
        let mut candidates: Vec<i64> = r.to_vec();
        candidates.push(0);
        candidates.sort_unstable();
        candidates.dedup();
        let finite = |delta: i64| r.iter().filter(|v| **v > delta).count() < usize::MAX;
        let least = candidates
            .into_iter()
            .find(|d| finite(*d))
            .unwrap_or(self.den());
        self.den() - least
    }

    /// `inf_B (p(B) → r(B))`.
    fn graded_le(&self, p: &[i64], r: &[i64]) -> i64 {
        self.sub(p, r)
    }
}

fn grid_nums(s: &Scale, grid: &FamilyGrid) -> Vec<i64> {
    grid.values().iter().map(|d| s.num(*d)).collect()
}

/// Order for `∀ℜ` in the cover formulas: X first, larger sets earlier, ∅ last.
fn cover_order(size: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (1..size).collect();
    v.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
    v.push(0);
    v
}

/// Order for `∀ℜ` in the intersection formulas: ∅ first, smaller sets earlier, X last.
fn avoid_order(size: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..size).collect();
    v.sort_by_key(|m| (m.count_ones(), *m));
    v
}

/// `sup_{℘≤r} K(℘,X) ⊗ FF(℘)`, stopping once `target` is reached.
struct CoverWitness<'a> {
    lat: &'a Lattice,
    r: &'a [i64],
    order: FamilyOrder,
}

impl Objective for CoverWitness<'_> {
    fn bound(&self, lo: &[i64], hi: &[i64]) -> i64 {
        let k = self.lat.k(hi);
        match self.order {
            FamilyOrder::Crisp => -k,
            FamilyOrder::Graded => -k.min(self.lat.graded_le(lo, self.r)),
        }
    }

    fn leaf(&self, p: &[i64]) -> i64 {
        let v = self.lat.s.tnorm(self.lat.k(p), self.lat.ff(p));
        match self.order {
            FamilyOrder::Crisp => -v,
            FamilyOrder::Graded => -v.min(self.lat.graded_le(p, self.r)),
        }
    }
}

fn inner_domains(grid: &[i64], r: &[i64], order: FamilyOrder) -> Vec<Vec<i64>> {
    r.iter()
        .map(|&cap| match order {
            FamilyOrder::Crisp => grid.iter().copied().filter(|g| *g <= cap).collect(),
            FamilyOrder::Graded => grid.to_vec(),
        })
        .collect()
}

fn cover_witness(
    lat: &Lattice,
    grid: &[i64],
    r: &[i64],
    order: FamilyOrder,
    target: i64,
    budget: &Budget,
) -> Result<i64> {
    let domains = inner_domains(grid, r, order);
    let ord = cover_order(lat.size);
    let obj = CoverWitness { lat, r, order };
    let p = Problem {
        domains: &domains,
        order: &ord,
        floor: -target,
        descending: true,
    };
    Ok(-minimize(&obj, &p, budget)?.value)
}

/// `inf_ℜ (K(ℜ,X) ⊗ [ℜ⊆T] → sup_{℘≤ℜ} K(℘,X) ⊗ FF(℘))`.
struct CoverCompactness<'a> {
    lat: &'a Lattice,
    t: &'a [i64],
    grid: &'a [i64],
    order: FamilyOrder,
    budget: &'a Budget,
}

impl CoverCompactness<'_> {
    fn antecedent(&self, r: &[i64]) -> i64 {
        self.lat.s.tnorm(self.lat.k(r), self.lat.sub(r, self.t))
    }
}

impl Objective for CoverCompactness<'_> {
    fn bound(&self, lo: &[i64], hi: &[i64]) -> i64 {
        let up = self.lat.s.tnorm(self.lat.k(hi), self.lat.sub(lo, self.t));
        // ℘ = lo lies below every family in the box.
        let witness = self.lat.s.tnorm(self.lat.k(lo), self.lat.ff(lo));
        self.lat.s.implies(up, witness)
    }

    fn leaf(&self, r: &[i64]) -> i64 {
        let a = self.antecedent(r);
        let c = cover_witness(self.lat, self.grid, r, self.order, a, self.budget).unwrap_or(0);
        self.lat.s.implies(a, c)
    }
}

/// `fI(r) = inf_{℘≤r} (FF(℘) → sup_x inf_{B∌x} (1-℘(B)))`, stopping at `floor`.
struct FiniteIntersection<'a> {
    lat: &'a Lattice,
    r: &'a [i64],
    order: FamilyOrder,
}

impl Objective for FiniteIntersection<'_> {
    fn bound(&self, lo: &[i64], hi: &[i64]) -> i64 {
        let cons = self.lat.cons(hi);
        match self.order {
            FamilyOrder::Crisp => self.lat.s.implies(self.lat.den(), cons),
            FamilyOrder::Graded => self.lat.s.implies(self.lat.graded_le(lo, self.r), cons),
        }
    }

    fn leaf(&self, p: &[i64]) -> i64 {
        let ff = self.lat.ff(p);
        let ante = match self.order {
            FamilyOrder::Crisp => ff,
            FamilyOrder::Graded => ff.min(self.lat.graded_le(p, self.r)),
        };
        self.lat.s.implies(ante, self.lat.cons(p))
    }
}

fn finite_intersection(
    lat: &Lattice,
    grid: &[i64],
    r: &[i64],
    order: FamilyOrder,
    floor: i64,
    budget: &Budget,
) -> Result<i64> {
    let domains = inner_domains(grid, r, order);
    let ord = avoid_order(lat.size);
    let obj = FiniteIntersection { lat, r, order };
    let p = Problem {
        domains: &domains,
        order: &ord,
        floor,
        descending: true,
    };
    Ok(minimize(&obj, &p, budget)?.value)
}

/// `inf_ℜ ([ℜ⊆F] ⊗ fI(ℜ) → sup_x inf_{A∌x} (1-ℜ(A)))`.
struct ClosedFamilyCompactness<'a> {
    lat: &'a Lattice,
    f: &'a [i64],
    grid: &'a [i64],
    order: FamilyOrder,
    budget: &'a Budget,
}

impl Objective for ClosedFamilyCompactness<'_> {
    fn bound(&self, lo: &[i64], hi: &[i64]) -> i64 {
        let s = self.lat.s;
        // fI is antitone in ℜ, and ℘ = lo bounds fI(lo) from above.
        let fi_up = s.implies(self.lat.ff(lo), self.lat.cons(lo));
        let up = s.tnorm(self.lat.sub(lo, self.f), fi_up);
        s.implies(up, self.lat.cons(hi))
    }

    fn leaf(&self, r: &[i64]) -> i64 {
        let s = self.lat.s;
        let sub = self.lat.sub(r, self.f);
        let cons = self.lat.cons(r);
        // Any fI at or below this makes the implication 1.
        let enough = cons + s.den - sub;
        if enough >= s.den {
            return s.den;
        }
        let fi = finite_intersection(self.lat, self.grid, r, self.order, enough, self.budget)
            .unwrap_or(0);
        s.implies(s.tnorm(sub, fi), cons)
    }
}

fn scale_for(grid: &FamilyGrid, families: &[&FuzzyFamily]) -> Result<Scale> {
    let extra: Vec<Degree> = families.iter().flat_map(|f| f.values()).collect();
    Scale::covering(grid.values().iter().chain(extra.iter()))
}

fn outer_search<O: Objective>(
    obj: &O,
    lat: &Lattice,
    grid: &[i64],
    order: Vec<usize>,
    opts: &GenericOptions,
    budget: &Budget,
) -> Result<i64> {
    let domains = vec![grid.to_vec(); lat.size];
    let p = Problem {
        domains: &domains,
        order: &order,
        floor: 0,
        descending: false,
    };
    let out = minimize_split(obj, &p, budget, opts.exec)?;
    Ok(out.value)
}

/// `Γ(X,T)` evaluated by grid enumeration.
pub fn gamma_generic(t: &FuzzyFamily, grid: &FamilyGrid, opts: &GenericOptions) -> Result<Degree> {
    ensure_cap("generic compactness", t.carrier().len(), FAMILY_CAP)?;
    let s = scale_for(grid, &[t])?;
    let lat = Lattice::new(t.carrier(), s);
    let tn = s.nums(t);
    let g = grid_nums(&s, grid);
    let budget = Budget::new(opts.max_nodes);
    let obj = CoverCompactness {
        lat: &lat,
        t: &tn,
        grid: &g,
        order: opts.order,
        budget: &budget,
    };
    let v = outer_search(&obj, &lat, &g, cover_order(lat.size), opts, &budget)?;
    budget.check()?;
    Ok(s.degree(v))
}

/// `Γ(X,T)` on either path; the generic grid is built from T.
pub fn gamma_of(t: &FuzzyFamily, path: Path, opts: &GenericOptions) -> Result<Degree> {
    match path {
        Path::Analytic => Ok(Degree::ONE),
        Path::Generic => {
            let grid = FamilyGrid::new([]).with_family(t).refined(opts.refine);
            gamma_generic(t, &grid, opts)
        }
    }
}

/// Fuzzifying compactness `Γ(X,τ)`.
pub fn gamma(pre: &PreopenStructure, path: Path, opts: &GenericOptions) -> Result<Degree> {
    match path {
        Path::Analytic => Ok(Degree::ONE),
        Path::Generic => gamma_generic(pre.tau(), &FamilyGrid::for_space(pre, opts.refine), opts),
    }
}

/// Strong compactness `Γ_P(X,τ)`, the cover formula with pre-open families.
pub fn gamma_p(pre: &PreopenStructure, path: Path, opts: &GenericOptions) -> Result<Degree> {
    match path {
        Path::Analytic => Ok(Degree::ONE),
        Path::Generic => gamma_generic(
            pre.tau_p_family(),
            &FamilyGrid::for_space(pre, opts.refine),
            opts,
        ),
    }
}

/// `Γ_P(A)`: the cover formula on `A` with the trace of `τ_P`.
pub fn gamma_p_subset(
    pre: &PreopenStructure,
    a: SubsetId,
    path: Path,
    opts: &GenericOptions,
) -> Result<Degree> {
    pre.carrier().check(a)?;
    match path {
        Path::Analytic => Ok(Degree::ONE),
        Path::Generic => {
            let trace = pre.tau_p_family().trace(a)?;
            gamma_generic(&trace, &FamilyGrid::for_space(pre, opts.refine), opts)
        }
    }
}

/// The subbase characterization: the cover formula with φ in place of the topology.
pub fn beta1_degree(
    pre: &PreopenStructure,
    phi: &FuzzyFamily,
    path: Path,
    opts: &GenericOptions,
) -> Result<Degree> {
    phi.same_carrier(pre.tau())?;
    match path {
        Path::Analytic => Ok(Degree::ONE),
        Path::Generic => {
            let grid = FamilyGrid::for_space(pre, opts.refine).with_family(phi);
            gamma_generic(phi, &grid, opts)
        }
    }
}

/// The pre-closed family characterization through the finite intersection property.
pub fn beta5_degree(pre: &PreopenStructure, path: Path, opts: &GenericOptions) -> Result<Degree> {
    if path == Path::Analytic {
        return Ok(Degree::ONE);
    }
    ensure_cap("generic compactness", pre.carrier().len(), FAMILY_CAP)?;
    let fp = pre.f_p_family();
    let grid = FamilyGrid::for_space(pre, opts.refine);
    let s = scale_for(&grid, &[&fp])?;
    let lat = Lattice::new(pre.carrier(), s);
    let f = s.nums(&fp);
    let g = grid_nums(&s, &grid);
    let budget = Budget::new(opts.max_nodes);
    let obj = ClosedFamilyCompactness {
        lat: &lat,
        f: &f,
        grid: &g,
        order: opts.order,
        budget: &budget,
    };
    let v = outer_search(&obj, &lat, &g, avoid_order(lat.size), opts, &budget)?;
    budget.check()?;
    Ok(s.degree(v))
}

/// `fI(ℜ)` with `℘` ranging over `grid`; the grid is extended by ℜ's own values.
pub fn fi_degree_on(r: &FuzzyFamily, grid: &FamilyGrid, opts: &GenericOptions) -> Result<Degree> {
    ensure_cap("finite intersection degree", r.carrier().len(), FAMILY_CAP)?;
    let grid = grid.clone().with_family(r);
    let s = scale_for(&grid, &[r])?;
    let lat = Lattice::new(r.carrier(), s);
    let rn = s.nums(r);
    let g = grid_nums(&s, &grid);
    let budget = Budget::new(opts.max_nodes);
    let v = finite_intersection(&lat, &g, &rn, opts.order, 0, &budget)?;
    Ok(s.degree(v))
}

/// `fI(ℜ)` over the grid generated by ℜ and the refinement in `opts`.
pub fn fi_degree(r: &FuzzyFamily, opts: &GenericOptions) -> Result<Degree> {
    fi_degree_on(r, &FamilyGrid::new([]).refined(opts.refine), opts)
}

/// `inf_x sup_B N_x(B) ⊗ Γ(B, G/B)` with neighbourhoods from `nb` and Γ on traces of `g`.
pub fn local_compactness(
    nb: &FuzzyFamily,
    g: &FuzzyFamily,
    path: Path,
    opts: &GenericOptions,
) -> Result<Degree> {
    nb.same_carrier(g)?;
    let c = nb.carrier();
    let table = nb.neighbourhoods();
    let mut gam = vec![None; c.powerset_len()];
    let mut acc = Degree::ONE;
    for x in 0..c.len() {
        let mut best = Degree::ZERO;
        for b in c.subsets().filter(|b| b.contains(x)) {
            let n = table[x][b.index()];
            if n <= best {
                continue;
            }
            let gv = match gam[b.index()] {
                Some(v) => v,
                None => {
                    let v = match path {
                        Path::Analytic => Degree::ONE,
                        Path::Generic => {
                            let t = g.trace(b)?;
                            let grid = FamilyGrid::new([]).with_family(g).refined(opts.refine);
                            gamma_generic(&t, &grid, opts)?
                        }
                    };
                    gam[b.index()] = Some(v);
                    v
                }
            };
            best = best.join(n.tnorm(gv));
        }
        acc = acc.meet(best);
    }
    Ok(acc)
}

/// Local compactness `LC`.
pub fn lc_degree(pre: &PreopenStructure, path: Path, opts: &GenericOptions) -> Result<Degree> {
    local_compactness(pre.tau(), pre.tau(), path, opts)
}

/// Locally strong compactness `L_PC`.
pub fn lpc_degree(pre: &PreopenStructure, path: Path, opts: &GenericOptions) -> Result<Degree> {
    local_compactness(pre.tau_p_family(), pre.tau_p_family(), path, opts)
}

/// `L_PC` of the subspace on `A`, using the trace of `τ_P`.
pub fn lpc_subset(
    pre: &PreopenStructure,
    a: SubsetId,
    path: Path,
    opts: &GenericOptions,
) -> Result<Degree> {
    if a.is_empty() {
        return Err(Error::EmptySubspace);
    }
    let t = pre.tau_p_family().trace(a)?;
    local_compactness(&t, &t, path, opts)
}
