//! The theorem registry: every entry is an inequality `lhs ≤ rhs` (or an
//! equality) checked over all argument instances on a space.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::Serialize;

use crate::carrier::SubsetId;
use crate::compact::{
    beta1_degree, beta5_degree, gamma_of, gamma_p, gamma_p_subset, lc_degree, local_compactness,
    lpc_degree, lpc_subset, GenericOptions, Path,
};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::family::FuzzyFamily;
use crate::maps::{
    continuity_degree, continuity_degrees, openness_degree, openness_degrees, openness_via_prebase,
    reduced_prebase, PointMap,
};
use crate::nets::{beta2, beta3, beta4};
use crate::par::{self, Exec};
use crate::preopen::{
    finite_intersection_closure, intersection_degree, prebase_axiom_degrees,
    subbase_condition_degree, union_closure, PreopenStructure,
};
use crate::product::Product;
use crate::separation::{t2p, t2p_of, t3p, t3p_nbhd, t4p};
use crate::space::FuzzySpace;

/// Largest product carrier built by the product checks.
pub const PRODUCT_POINTS: usize = 8;
/// Largest number of maps enumerated per space pair.
pub const MAP_LIMIT: usize = 5000;
/// Carrier size up to which the generic compactness path is used when requested.
pub const GENERIC_POINTS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Le,
    Eq,
}

#[derive(Clone, Debug, Serialize)]
pub struct Instance {
    pub args: BTreeMap<String, String>,
    pub lhs: Degree,
    pub rhs: Degree,
    pub relation: Relation,
    #[serde(serialize_with = "ser_ratio")]
    pub slack: Ratio<i128>,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<i128>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

impl Instance {
    fn new(args: Vec<(&str, String)>, lhs: Degree, rhs: Degree, relation: Relation) -> Self {
        let diff = rhs.minus(lhs);
        let slack = match relation {
            Relation::Le => diff,
            Relation::Eq => -num_traits::Signed::abs(&diff),
        };
        Instance {
            args: args.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            lhs,
            rhs,
            relation,
            slack,
        }
    }

    fn le(args: Vec<(&str, String)>, lhs: Degree, rhs: Degree) -> Self {
        Self::new(args, lhs, rhs, Relation::Le)
    }

    fn eq(args: Vec<(&str, String)>, lhs: Degree, rhs: Degree) -> Self {
        Self::new(args, lhs, rhs, Relation::Eq)
    }

    pub fn holds(&self) -> bool {
        match self.relation {
            Relation::Le => self.lhs <= self.rhs,
            Relation::Eq => self.lhs == self.rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    #[serde(rename = "skipped: hypothesis")]
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: &'static str,
    pub statement: &'static str,
    pub status: Status,
    /// Every compactness factor is 1 on finite carriers, so the check is trivially satisfiable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annotation: Option<&'static str>,
    pub instances: usize,
    pub violations: Vec<Instance>,
    /// Passing instance with the least slack.
    pub tight: Option<Instance>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    /// The first violation, or the tight instance when the check passes.
    pub fn witness(&self) -> Option<&Instance> {
        self.violations.first().or(self.tight.as_ref())
    }
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub path: Path,
    pub generic: GenericOptions,
    /// Spaces paired with the checked one for map and product checks.
    pub partners: Vec<FuzzySpace>,
    pub max_violations: usize,
    pub exec: Exec,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            path: Path::Analytic,
            generic: GenericOptions::default(),
            partners: vec![FuzzySpace::sierpinski(), FuzzySpace::two_level()],
            max_violations: 10,
            exec: Exec::default(),
        }
    }
}

struct Ctx<'a> {
    pre: &'a PreopenStructure,
    opts: &'a CheckOptions,
    notes: Vec<String>,
}

impl Ctx<'_> {
    fn path(&mut self) -> Path {
        if self.opts.path == Path::Generic && self.pre.carrier().len() > GENERIC_POINTS {
            self.note(format!(
                "generic path limited to {GENERIC_POINTS} points; analytic values used"
            ));
            return Path::Analytic;
        }
        self.opts.path
    }

    fn note(&mut self, s: String) {
        if !self.notes.contains(&s) {
            self.notes.push(s);
        }
    }

    fn show(&self, a: SubsetId) -> String {
        self.pre.carrier().show(a)
    }

    fn gamma_p(&mut self) -> Result<Degree> {
        let p = self.path();
        gamma_p(self.pre, p, &self.opts.generic)
    }

    fn gamma_p_on(&mut self, a: SubsetId) -> Result<Degree> {
        if a.is_empty() {
            return Ok(Degree::ONE);
        }
        let p = self.path();
        gamma_p_subset(self.pre, a, p, &self.opts.generic)
    }

    fn lpc(&mut self) -> Result<Degree> {
        let p = self.path();
        lpc_degree(self.pre, p, &self.opts.generic)
    }

    /// Surjections and arbitrary maps between the space and its partners, both directions.
    fn map_pairs(&self) -> Vec<(PreopenStructure, PreopenStructure)> {
        let me = self.pre.clone();
        let mut out = vec![(me.clone(), me.clone())];
        for p in &self.opts.partners {
            let p = PreopenStructure::new(p.clone());
            out.push((me.clone(), p.clone()));
            out.push((p, me.clone()));
        }
        out
    }

    fn maps(&mut self, x: &PreopenStructure, y: &PreopenStructure) -> Vec<PointMap> {
        let (n, m) = (x.carrier().len(), y.carrier().len());
        if (m as f64).powi(n as i32) > MAP_LIMIT as f64 {
            self.note(format!(
                "maps from {n} to {m} points skipped (more than {MAP_LIMIT})"
            ));
            return Vec::new();
        }
        PointMap::all(x.carrier().clone(), y.carrier().clone())
    }

    fn products(&mut self) -> Result<Vec<Product>> {
        let me = self.pre.space().clone();
        let n = me.carrier().len();
        let mut factors: Vec<Vec<FuzzySpace>> = Vec::new();
        if n * n <= PRODUCT_POINTS {
            factors.push(vec![me.clone(), me.clone()]);
        }
        for p in &self.opts.partners {
            if n * p.carrier().len() <= PRODUCT_POINTS {
                factors.push(vec![me.clone(), p.clone()]);
                factors.push(vec![p.clone(), me.clone()]);
            }
        }
        if factors.is_empty() {
            self.note(format!("no product within {PRODUCT_POINTS} points"));
        }
        factors.iter().map(|f| Product::new(f)).collect()
    }
}

fn label_product(p: &Product) -> String {
    p.factors()
        .iter()
        .map(|f| f.carrier().len().to_string())
        .collect::<Vec<_>>()
        .join("x")
}

/// Families below `τ_P` used as pre-base candidates: `τ_P`, its reduced pre-base,
/// and `τ_P` with a single set removed.
fn prebase_candidates(pre: &PreopenStructure) -> Vec<(String, FuzzyFamily)> {
    let tp = pre.tau_p_family();
    let mut out = vec![
        ("tau_p".to_string(), tp.clone()),
        ("reduced".to_string(), reduced_prebase(pre)),
    ];
    for b in pre.carrier().subsets() {
        if tp.get(b).is_zero() {
            continue;
        }
        let mut f = tp.clone();
        f.set(b, Degree::ZERO).expect("same carrier");
        out.push((format!("tau_p without {}", pre.carrier().show(b)), f));
    }
    out
}

fn subbase_candidates(pre: &PreopenStructure) -> Vec<(String, FuzzyFamily)> {
    let c = pre.carrier();
    let tp = pre.tau_p_family();
    let full = c.full();
    let mut out = vec![
        ("tau".to_string(), pre.tau().clone()),
        ("tau_p".to_string(), tp.clone()),
    ];
    for b in c.subsets() {
        let keep = [b, full.minus(b)];
        let f = FuzzyFamily::from_fn(c.clone(), |s| {
            if keep.contains(&s) {
                tp.get(s)
            } else {
                Degree::ZERO
            }
        });
        out.push((format!("pair {}", c.show(b)), f));
    }
    out
}

type Runner = fn(&mut Ctx) -> Result<Vec<Instance>>;

pub struct Theorem {
    pub id: &'static str,
    pub statement: &'static str,
    /// Checked only on spaces whose pre-open family is closed under finite intersections.
    pub needs_p_topological: bool,
    pub degenerate: bool,
    run: Runner,
}

fn t2_1(cx: &mut Ctx) -> Result<Vec<Instance>> {
    let pre = cx.pre;
    let tp = pre.tau_p_family();
    Ok(prebase_candidates(pre)
        .into_iter()
        .map(|(name, beta)| {
            let is_base = pre
                .is_prebase_degree(&beta)
                .map(|d| d.is_one())
                .unwrap_or(false);
            let generates = union_closure(&beta) == *tp;
            Instance::eq(
                vec![("family", name)],
                Degree::from_bool(is_base),
                Degree::from_bool(generates),
            )
        })
        .collect())
}

fn t2_2(cx: &mut Ctx) -> Result<Vec<Instance>> {
    let pre = cx.pre;
    let mut out = Vec::new();
    let ptop = pre.p_topological_degree().is_one();
    let (u, v) = prebase_axiom_degrees(pre.tau_p_family());
    out.push(Instance::le(
        vec![("family", "tau_p".into()), ("direction", "forward".into())],
        Degree::from_bool(ptop),
        u.meet(v),
    ));
    for (name, beta) in prebase_candidates(pre) {
        let (u, v) = prebase_axiom_degrees(&beta);
        out.push(Instance::le(
            vec![("family", name), ("direction", "converse".into())],
            Degree::from_bool(u.is_one() && v.is_one()),
            intersection_degree(&union_closure(&beta)),
        ));
    }
    Ok(out)
}

fn t2_3(cx: &mut Ctx) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for (name, phi) in subbase_candidates(cx.pre) {
        let closed = finite_intersection_closure(&phi);
        let (_, axiom) = prebase_axiom_degrees(&closed);
        out.push(Instance::le(
            vec![
                ("family", name.clone()),
                ("part", "intersection axiom".into()),
            ],
            Degree::ONE,
            axiom,
        ));
        out.push(Instance::le(
            vec![("family", name), ("part", "cover of X".into())],
            subbase_condition_degree(&phi),
            union_closure(&closed).get(closed.carrier().full()),
        ));
    }
    Ok(out)
}

fn t3_1(cx: &mut Ctx) -> Result<Vec<Instance>> {
    let pre = cx.pre;
    let path = cx.path();
    let o = &cx.opts.generic;
    let g = gamma_p(pre, path, o)?;
    let arg = |s: &str| vec![("characterization", s.to_string())];
    Ok(vec![
        Instance::eq(
            arg("gamma(X, tau_p)"),
            g,
            gamma_of(pre.tau_p_family(), path, o)?,
        ),
        Instance::eq(
            arg("beta1 with tau_p"),
            g,
            beta1_degree(pre, pre.tau_p_family(), path, o)?,
        ),
        Instance::eq(
            arg("beta1 with reduced base"),
            g,
            beta1_degree(pre, &reduced_prebase(pre), path, o)?,
        ),
        Instance::eq(arg("beta2"), g, beta2(pre)),
        Instance::eq(arg("beta3"), g, beta3(pre)),
        Instance::eq(arg("beta4"), g, beta4(pre)),
        Instance::eq(arg("beta5"), g, beta5_degree(pre, path, o)?),
    ])
}

fn l3_1(cx: &mut Ctx) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for (x, y) in cx.map_pairs() {
        let beta = reduced_prebase(&x);
        for f in cx.maps(&x, &y) {
            let via = openness_via_prebase(&f, &beta, &x, &y)?;
            let direct = openness_degrees(&f, &x, &y)?.o_p;
            out.push(Instance::eq(vec![("map", show_map(&f))], via, direct));
        }
    }
    Ok(out)
}

fn show_map(f: &PointMap) -> String {
    let d = f.domain();
    let c = f.codomain();
    let parts: Vec<String> = (0..d.len())
        .map(|i| format!("{}->{}", d.label(i), c.label(f.at(i))))
        .collect();
    format!("{{{}}}", parts.join(","))
}

fn l3_2(cx: &mut Ctx) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for prod in cx.products()? {
        let name = label_product(&prod);
        for (s, factor) in prod.factors().iter().enumerate() {
            let p = prod.projection(s)?;
            let args = |what: &str| {
                vec![
                    ("product", name.clone()),
                    ("factor", s.to_string()),
                    ("degree", what.to_string()),
                ]
            };
            let c_p = continuity_degree(&p, prod.preopen(), factor.tau())?;
            let i_p = continuity_degree(&p, prod.preopen(), factor.tau_p_family())?;
            let o_p = openness_degree(&p, prod.preopen(), factor.tau_p_family())?;
            out.push(Instance::le(args("C_P"), Degree::ONE, c_p));
            out.push(Instance::le(args("I_P"), Degree::ONE, i_p));
            out.push(Instance::le(args("O_P"), Degree::ONE, o_p));
        }
    }
    Ok(out)
}

/// `sup_{T⊆S} inf_{t∈S−T} Γ_P(X_t)` over a finite index set.
fn cofinite_gamma(prod: &Product, cx: &Ctx) -> Result<Degree> {
    let k = prod.factors().len();
    let g: Vec<Degree> = prod
        .factors()
        .iter()
        .map(|f| gamma_p(f, Path::Analytic, &cx.opts.generic))
        .collect::<Result<_>>()?;
    Ok(Degree::sup_over((0u32..1 << k).map(|t| {
        Degree::inf_over((0..k).filter(|s| t >> s & 1 == 0).map(|s| g[s]))
    })))
}

fn t3_2(cx: &mut Ctx) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for prod in cx.products()? {
        let table = prod.preopen().neighbourhoods();
        let c = prod.carrier();
        // Γ_P of product subspaces is taken analytically: the product exceeds the family cap.
        let lhs = Degree::sup_over(
            c.subsets()
                .map(|u| Degree::sup_over((0..c.len()).map(|x| table[x][u.index()]))),
        );
        out.push(Instance::le(
            vec![("product", label_product(&prod))],
            lhs,
            cofinite_gamma(&prod, cx)?,
        ));
    }
    Ok(out)
}

fn l3_3(cx: &mut Ctx) -> Result<Vec<Instance>> {
    let pre = cx.pre;
    let whole = t2p(pre);
    pre.carrier()
        .subsets()
        .filter(|a| !a.is_empty())
        .map(|a| {
            let sub = t2p_of(&pre.tau_p_family().trace(a)?);
            Ok(Instance::le(vec![("A", cx.show(a))], whole, sub))
        })
        .collect()
}

fn l3_4(cx: &mut Ctx) -> Result<Vec<Instance>> {
    let g = cx.gamma_p()?;
    Ok(vec![Instance::le(
        vec![],
        t2p(cx.pre).tnorm(g),
        t4p(cx.pre),
    )])
}

fn l3_5(cx: &mut Ctx) -> Result<Vec<Instance>> {
    let g = cx.gamma_p()?;
    Ok(vec![Instance::le(
        vec![],
        t2p(cx.pre).tnorm(g),
        t3p(cx.pre),
    )])
}

fn t3_3(cx: &mut Ctx) -> Result<Vec<Instance>> {
    let pre = cx.pre;
    let h = t2p(pre);
    let mut out = Vec::new();
    for a in pre.carrier().subsets() {
        let g = cx.gamma_p_on(a)?;
        out.push(Instance::le(
            vec![("A", cx.show(a))],
            h.tnorm(g),
            pre.f_p(a),
        ));
    }
    Ok(out)
}

fn d4_1(cx: &mut Ctx) -> Result<Vec<Instance>> {
    let g = cx.gamma_p()?;
    let p = cx.path();
    let lpc = cx.lpc()?;
    let lc = lc_degree(cx.pre, p, &cx.opts.generic)?;
    Ok(vec![
        Instance::le(vec![("rhs", "L_PC".into())], g, lpc),
        Instance::le(vec![("rhs", "LC".into())], g, lc),
    ])
}

fn t4_1(cx: &mut Ctx) -> Result<Vec<Instance>> {
    let pre = cx.pre;
    let lpc = cx.lpc()?;
    let p = cx.path();
    let mut out = Vec::new();
    for a in pre.carrier().subsets().filter(|a| !a.is_empty()) {
        let sub = lpc_subset(pre, a, p, &cx.opts.generic)?;
        out.push(Instance::le(
            vec![("A", cx.show(a))],
            lpc.tnorm(pre.f_p(a)),
            sub,
        ));
    }
    Ok(out)
}

fn t4_2(cx: &mut Ctx) -> Result<Vec<Instance>> {
    let pre = cx.pre;
    let h = t2p(pre);
    let p = cx.path();
    let mut out = Vec::new();
    for a in pre.carrier().subsets().filter(|a| !a.is_empty()) {
        let dense = pre.cl_p(a).everywhere();
        let lpc = lpc_subset(pre, a, p, &cx.opts.generic)?;
        out.push(Instance::le(
            vec![("A", cx.show(a))],
            h.tnorm(lpc).tnorm(dense),
            pre.tau_p(a),
        ));
    }
    Ok(out)
}

/// `[Cl_P(V) ⊆ U] = inf_{y∉U} N^P_y(X−V)`.
fn closure_inside(pre: &PreopenStructure, v: SubsetId, u: SubsetId) -> Degree {
    let full = pre.carrier().full();
    Degree::inf_over(full.minus(u).points().map(|y| pre.nbhd_p(y, full.minus(v))))
}

fn t4_3(cx: &mut Ctx) -> Result<Vec<Instance>> {
    let pre = cx.pre;
    let c = pre.carrier().clone();
    let lpc = cx.lpc()?;
    let head = t2p(pre).tnorm(lpc).tnorm(lpc);
    let gam: Vec<Degree> = c
        .subsets()
        .map(|v| cx.gamma_p_on(v))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for x in 0..c.len() {
        for u in c.subsets() {
            let rhs = Degree::sup_over(c.subsets().map(|v| {
                pre.nbhd_p(x, v)
                    .meet(closure_inside(pre, v, u))
                    .meet(gam[v.index()])
            }));
            out.push(Instance::le(
                vec![("x", c.label(x).to_string()), ("U", c.show(u))],
                head.tnorm(pre.nbhd_p(x, u)),
                rhs,
            ));
        }
    }
    Ok(out)
}

fn t4_4(cx: &mut Ctx) -> Result<Vec<Instance>> {
    let pre = cx.pre;
    let lpc = cx.lpc()?;
    let g = cx.gamma_p()?;
    let h = t2p(pre);
    let nb = t3p_nbhd(pre);
    cx.note(format!(
        "with the squared factor taken as Γ_P: lhs {}; neighbourhood-form T3 = {nb}",
        h.tnorm(g).tnorm(g)
    ));
    Ok(vec![Instance::le(
        vec![],
        h.tnorm(lpc).tnorm(lpc),
        t3p(pre),
    )])
}

/// `N^P_A(U) = inf_{x∈A} N^P_x(U)`.
fn nbhd_of_set(pre: &PreopenStructure, a: SubsetId, u: SubsetId) -> Degree {
    Degree::inf_over(a.points().map(|x| pre.nbhd_p(x, u)))
}

fn t4_5(cx: &mut Ctx) -> Result<Vec<Instance>> {
    let pre = cx.pre;
    let c = pre.carrier().clone();
    let full = c.full();
    let lpc = cx.lpc()?;
    let head = t3p_nbhd(pre).tnorm(lpc);
    let gam: Vec<Degree> = c
        .subsets()
        .map(|v| cx.gamma_p_on(v))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for a in c.subsets() {
        for u in c.subsets() {
            let lhs = head.tnorm(gam[a.index()]).tnorm(nbhd_of_set(pre, a, u));
            let rhs = Degree::sup_over(u.submasks().map(|v| {
                nbhd_of_set(pre, a, v)
                    .meet(pre.tau_p(full.minus(v)))
                    .meet(gam[v.index()])
            }));
            out.push(Instance::le(
                vec![("A", c.show(a)), ("U", c.show(u))],
                lhs,
                rhs,
            ));
        }
    }
    Ok(out)
}

fn surjection_checks(
    cx: &mut Ctx,
    f: impl Fn(
        &PointMap,
        &PreopenStructure,
        &PreopenStructure,
        Path,
        &GenericOptions,
    ) -> Result<(Degree, Degree)>,
) -> Result<Vec<Instance>> {
    let p = cx.path();
    let mut out = Vec::new();
    for (x, y) in cx.map_pairs() {
        for m in cx.maps(&x, &y).into_iter().filter(PointMap::is_surjective) {
            let (lhs, rhs) = f(&m, &x, &y, p, &cx.opts.generic)?;
            out.push(Instance::le(vec![("map", show_map(&m))], lhs, rhs));
        }
    }
    Ok(out)
}

fn t4_6(cx: &mut Ctx) -> Result<Vec<Instance>> {
    surjection_checks(cx, |f, x, y, p, o| {
        let c = continuity_degrees(f, x, y)?;
        let op = openness_degrees(f, x, y)?;
        Ok((
            lpc_degree(x, p, o)?.tnorm(c.c_p).tnorm(op.o),
            lc_degree(y, p, o)?,
        ))
    })
}

fn t4_7(cx: &mut Ctx) -> Result<Vec<Instance>> {
    surjection_checks(cx, |f, x, y, p, o| {
        let c = continuity_degrees(f, x, y)?;
        let op = openness_degrees(f, x, y)?;
        Ok((
            lpc_degree(x, p, o)?.tnorm(c.i_p).tnorm(op.o_p),
            lpc_degree(y, p, o)?,
        ))
    })
}

fn t4_8(cx: &mut Ctx) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for prod in cx.products()? {
        let lhs = local_compactness(
            prod.preopen(),
            prod.preopen(),
            Path::Analytic,
            &cx.opts.generic,
        )?;
        let cof = cofinite_gamma(&prod, cx)?;
        let rhs = Degree::inf_over(
            prod.factors()
                .iter()
                .map(|f| lpc_degree(f, Path::Analytic, &cx.opts.generic).map(|d| d.meet(cof)))
                .collect::<Result<Vec<_>>>()?,
        );
        out.push(Instance::le(
            vec![("product", label_product(&prod))],
            lhs,
            rhs,
        ));
    }
    Ok(out)
}

pub static REGISTRY: &[Theorem] = &[
    Theorem { id: "T2.1", statement: "a family below τ_P is a pre-base exactly when its union closure is τ_P", needs_p_topological: false, degenerate: false, run: t2_1 },
    Theorem { id: "T2.2", statement: "τ_P of a P-topological space meets both pre-base axioms; a family meeting them generates a P-topology", needs_p_topological: false, degenerate: false, run: t2_2 },
    Theorem { id: "T2.3", statement: "the finite-intersection closure of any family satisfies the intersection axiom and covers X", needs_p_topological: false, degenerate: false, run: t2_3 },
    Theorem { id: "T3.1", statement: "strong compactness equals each of its five characterizations", needs_p_topological: false, degenerate: true, run: t3_1 },
    Theorem { id: "L3.1", statement: "pre-openness of a map can be read off any pre-base of the domain", needs_p_topological: false, degenerate: false, run: l3_1 },
    Theorem { id: "L3.2", statement: "projections out of a product are pre-continuous, pre-irresolute and pre-open", needs_p_topological: false, degenerate: false, run: l3_2 },
    Theorem { id: "T3.2", statement: "a strongly compact pre-neighbourhood in a product forces cofinitely many strongly compact factors", needs_p_topological: false, degenerate: true, run: t3_2 },
    Theorem { id: "L3.3", statement: "pre-Hausdorffness passes to subspaces", needs_p_topological: false, degenerate: false, run: l3_3 },
    Theorem { id: "L3.4", statement: "pre-Hausdorff and strongly compact implies pre-normal", needs_p_topological: true, degenerate: false, run: l3_4 },
    Theorem { id: "L3.5", statement: "pre-Hausdorff and strongly compact implies pre-regular", needs_p_topological: true, degenerate: false, run: l3_5 },
    Theorem { id: "T3.3", statement: "a strongly compact subset of a pre-Hausdorff space is pre-closed", needs_p_topological: false, degenerate: false, run: t3_3 },
    Theorem { id: "D4.1", statement: "strong compactness implies local strong compactness and local compactness", needs_p_topological: false, degenerate: true, run: d4_1 },
    Theorem { id: "T4.1", statement: "local strong compactness passes to pre-closed subspaces", needs_p_topological: false, degenerate: true, run: t4_1 },
    Theorem { id: "T4.2", statement: "a pre-dense locally strongly compact subspace of a pre-Hausdorff space is pre-open", needs_p_topological: true, degenerate: false, run: t4_2 },
    Theorem { id: "T4.3", statement: "each pre-neighbourhood of x contains the pre-closure of a strongly compact pre-neighbourhood", needs_p_topological: true, degenerate: false, run: t4_3 },
    Theorem { id: "T4.4", statement: "pre-Hausdorff and locally strongly compact implies pre-regular", needs_p_topological: true, degenerate: false, run: t4_4 },
    Theorem { id: "T4.5", statement: "a strongly compact set inside a pre-neighbourhood U has a pre-closed strongly compact pre-neighbourhood inside U", needs_p_topological: true, degenerate: false, run: t4_5 },
    Theorem { id: "T4.6", statement: "pre-continuous open surjections carry local strong compactness to local compactness", needs_p_topological: false, degenerate: true, run: t4_6 },
    Theorem { id: "T4.7", statement: "pre-irresolute pre-open surjections preserve local strong compactness", needs_p_topological: false, degenerate: true, run: t4_7 },
    Theorem { id: "T4.8", statement: "a locally strongly compact product has locally strongly compact factors, cofinitely many strongly compact", needs_p_topological: false, degenerate: true, run: t4_8 },
];

pub fn lookup(id: &str) -> Result<&'static Theorem> {
    REGISTRY
        .iter()
        .find(|t| t.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownTheorem(id.to_string()))
}

/// Resolves `"all"`, a single id, or a comma-separated list.
pub fn select(ids: &str) -> Result<Vec<&'static Theorem>> {
    if ids.eq_ignore_ascii_case("all") {
        return Ok(REGISTRY.iter().collect());
    }
    ids.split(',').map(|s| lookup(s.trim())).collect()
}

/// All instances of a check with any notes, or `None` when the hypothesis fails.
pub fn run_theorem(
    pre: &PreopenStructure,
    th: &Theorem,
    opts: &CheckOptions,
) -> Result<Option<(Vec<Instance>, Vec<String>)>> {
    if th.needs_p_topological && !pre.p_topological_degree().is_one() {
        return Ok(None);
    }
    let mut cx = Ctx {
        pre,
        opts,
        notes: Vec::new(),
    };
    let instances = (th.run)(&mut cx)?;
    Ok(Some((instances, cx.notes)))
}

pub fn check_theorem(
    pre: &PreopenStructure,
    th: &Theorem,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let annotation = th.degenerate.then_some("degenerate at finite scale");
    let mut report = CheckReport {
        id: th.id,
        statement: th.statement,
        status: Status::Pass,
        annotation,
        instances: 0,
        violations: Vec::new(),
        tight: None,
        notes: Vec::new(),
    };
    let Some((instances, notes)) = run_theorem(pre, th, opts)? else {
        report.status = Status::Skipped;
        report.notes.push(format!(
            "P-topological degree {}",
            pre.p_topological_degree()
        ));
        return Ok(report);
    };
    report.notes = notes;
    report.instances = instances.len();
    for inst in instances {
        if !inst.holds() {
            report.status = Status::Fail;
            if report.violations.len() < opts.max_violations {
                report.violations.push(inst);
            }
        } else if report.tight.as_ref().is_none_or(|t| inst.slack < t.slack) {
            report.tight = Some(inst);
        }
    }
    if report.status == Status::Fail && !th.needs_p_topological {
        let d = pre.p_topological_degree();
        if !d.is_one() {
            report
                .notes
                .push(format!("space is not P-topological (degree {d})"));
        }
    }
    Ok(report)
}

/// Runs the selected checks on one space.
pub fn check(space: &FuzzySpace, ids: &str, opts: &CheckOptions) -> Result<Vec<CheckReport>> {
    let pre = PreopenStructure::new(space.clone());
    let theorems = select(ids)?;
    par::map(opts.exec, &theorems, |th| check_theorem(&pre, th, opts))
        .into_iter()
        .collect()
}
