//! Discretized quantification over fuzzy families.
//!
//! A family quantifier `∀ℜ` ranges over families whose values lie in a finite
//! [`FamilyGrid`]. Values are rescaled to integers over a common denominator so the
//! search runs on exact `i64` arithmetic. The search is a depth-first
//! branch-and-bound over the subset coordinates: a node fixes some coordinates
//! and leaves the rest free, the objective supplies a lower bound valid for the
//! whole box, and boxes whose bound cannot improve the incumbent are skipped.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::family::FuzzyFamily;
use crate::par::{self, Exec};
use crate::preopen::PreopenStructure;

/// Finite ascending set of degrees, always containing 0 and 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyGrid {
    values: Vec<Degree>,
}

impl FamilyGrid {
    pub fn new(values: impl IntoIterator<Item = Degree>) -> Self {
        let mut set: BTreeSet<Degree> = values.into_iter().collect();
        set.insert(Degree::ZERO);
        set.insert(Degree::ONE);
        FamilyGrid {
            values: set.into_iter().collect(),
        }
    }

    /// Adds the values of `f` and their complements.
    pub fn with_family(self, f: &FuzzyFamily) -> Self {
        let extra = f.values().into_iter().flat_map(|d| [d, d.neg()]);
        FamilyGrid::new(self.values.into_iter().chain(extra))
    }

    /// Adds `i/r` for `i = 0..=r`.
    pub fn refined(self, r: Option<u32>) -> Self {
        match r {
            None | Some(0) => self,
            Some(r) => {
                let extra = (0..=r).map(|i| Degree::frac(i as i128, r as i128));
                FamilyGrid::new(self.values.into_iter().chain(extra))
            }
        }
    }

    /// `{0,1} ∪ τ_P ∪ (1-τ_P) ∪ τ ∪ (1-τ)`, optionally refined.
    pub fn for_space(pre: &PreopenStructure, refine: Option<u32>) -> Self {
        FamilyGrid::new([])
            .with_family(pre.tau_p_family())
            .with_family(pre.tau())
            .refined(refine)
    }

    pub fn values(&self) -> &[Degree] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Common denominator used to turn degrees into integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Scale {
    pub den: i64,
}

const SCALE_LIMIT: i128 = 1 << 40;

impl Scale {
    pub fn covering<'a>(degrees: impl IntoIterator<Item = &'a Degree>) -> Result<Scale> {
        let den = Degree::common_denominator(degrees, SCALE_LIMIT).ok_or(Error::ScaleOverflow)?;
        Ok(Scale { den: den as i64 })
    }

    pub fn num(&self, d: Degree) -> i64 {
        (d.numer() * (self.den as i128 / d.denom())) as i64
    }

    pub fn degree(&self, v: i64) -> Degree {
        Degree::frac(v as i128, self.den as i128)
    }

    pub fn nums(&self, f: &FuzzyFamily) -> Vec<i64> {
        f.as_slice().iter().map(|d| self.num(*d)).collect()
    }

    #[inline]
    pub fn tnorm(&self, a: i64, b: i64) -> i64 {
        (a + b - self.den).max(0)
    }

    #[inline]
    pub fn implies(&self, a: i64, b: i64) -> i64 {
        (self.den - a + b).min(self.den)
    }
}

/// How `℘ ≤ ℜ` between families is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FamilyOrder {
    /// Pointwise `℘(B) ≤ ℜ(B)` for every B.
    #[default]
    Crisp,
    /// The degree `inf_B (℘(B) → ℜ(B))`.
    Graded,
}

/// Shared node counter that aborts a search once a limit is passed.
#[derive(Debug)]
pub struct Budget {
    nodes: AtomicU64,
    limit: u64,
    blown: AtomicBool,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            nodes: AtomicU64::new(0),
            limit,
            blown: AtomicBool::new(false),
        }
    }

    #[inline]
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed);
        if n >= self.limit {
            self.blown.store(true, Ordering::Relaxed);
        }
        !self.blown.load(Ordering::Relaxed)
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn check(&self) -> Result<()> {
        if self.blown.load(Ordering::Relaxed) {
            Err(Error::CostGuard(format!(
                "family search exceeded {} nodes",
                self.limit
            )))
        } else {
            Ok(())
        }
    }
}

/// Function to minimize over a box of integer-valued families.
pub trait Objective: Sync {
    /// A lower bound of the objective over every family `r` with `lo ≤ r ≤ hi`.
    fn bound(&self, lo: &[i64], hi: &[i64]) -> i64;
    /// The exact objective at a fully fixed family.
    fn leaf(&self, r: &[i64]) -> i64;
}

/// One minimization problem.
pub struct Problem<'a> {
    /// Allowed values per coordinate, ascending and nonempty.
    pub domains: &'a [Vec<i64>],
    /// Coordinates in branching order; must be a permutation of `0..domains.len()`.
    pub order: &'a [usize],
    /// Search stops as soon as a value at or below this is found.
    pub floor: i64,
    /// Try larger values first at each coordinate.
    pub descending: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub value: i64,
    pub witness: Vec<i64>,
}

struct Dfs<'a, O: Objective> {
    obj: &'a O,
    p: &'a Problem<'a>,
    budget: &'a Budget,
    lo: Vec<i64>,
    hi: Vec<i64>,
    best: i64,
    witness: Option<Vec<i64>>,
}

impl<O: Objective> Dfs<'_, O> {
    fn run(&mut self, depth: usize) {
        if !self.budget.tick() {
            return;
        }
        if depth == self.p.order.len() {
            let v = self.obj.leaf(&self.lo);
            if v < self.best {
                self.best = v;
                self.witness = Some(self.lo.clone());
            }
            return;
        }
        if self.obj.bound(&self.lo, &self.hi) >= self.best {
            return;
        }
        let c = self.p.order[depth];
        let dom = &self.p.domains[c];
        for k in 0..dom.len() {
            let v = if self.p.descending {
                dom[dom.len() - 1 - k]
            } else {
                dom[k]
            };
            self.lo[c] = v;
            self.hi[c] = v;
            self.run(depth + 1);
            if self.best <= self.p.floor || self.budget.blown.load(Ordering::Relaxed) {
                break;
            }
        }
        self.lo[c] = dom[0];
        self.hi[c] = dom[dom.len() - 1];
    }
}

fn fresh<'a, O: Objective>(obj: &'a O, p: &'a Problem<'a>, budget: &'a Budget) -> Dfs<'a, O> {
    Dfs {
        obj,
        p,
        budget,
        lo: p.domains.iter().map(|d| d[0]).collect(),
        hi: p.domains.iter().map(|d| d[d.len() - 1]).collect(),
        best: i64::MAX,
        witness: None,
    }
}

/// Minimizes sequentially. The witness is the first minimizer in search order.
pub fn minimize<O: Objective>(obj: &O, p: &Problem<'_>, budget: &Budget) -> Result<Outcome> {
    let mut dfs = fresh(obj, p, budget);
    dfs.run(0);
    budget.check()?;
    Ok(Outcome {
        value: dfs.best,
        witness: dfs
            .witness
            .expect("nonempty domains give at least one leaf"),
    })
}

/// Splits the first branching coordinate across workers; same result as [`minimize`].
pub fn minimize_split<O: Objective>(
    obj: &O,
    p: &Problem<'_>,
    budget: &Budget,
    exec: Exec,
) -> Result<Outcome> {
    if !exec.is_parallel() || p.order.is_empty() {
        return minimize(obj, p, budget);
    }
    let c = p.order[0];
    let dom = &p.domains[c];
    let values: Vec<i64> = if p.descending {
        dom.iter().rev().copied().collect()
    } else {
        dom.clone()
    };
    let parts = par::map(exec, &values, |&v| {
        let mut dfs = fresh(obj, p, budget);
        dfs.lo[c] = v;
        dfs.hi[c] = v;
        dfs.run(1);
        (dfs.best, dfs.witness)
    });
    budget.check()?;
    let mut out: Option<Outcome> = None;
    for (best, witness) in parts {
        let Some(witness) = witness else { continue };
        if out.as_ref().is_none_or(|o| best < o.value) {
            out = Some(Outcome {
                value: best,
                witness,
            });
        }
        if best <= p.floor {
            break;
        }
    }
    Ok(out.expect("nonempty domains give at least one leaf"))
}
