//! Fuzzifying topological spaces: axioms, crisp-set operators, subspaces and the
//! seeded generator.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::carrier::{ensure_cap, subset_cap, Carrier, SubsetId};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::family::{FuzzyFamily, FuzzyPointSet};

/// How `Int` combines an open set's degree with the fuzzy set's infimum over it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InteriorConvention {
    /// `min(τ(B), inf_B μ)`.
    #[default]
    Min,
    /// `τ(B) ⊗ inf_B μ`.
    Tensor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzySpace {
    tau: FuzzyFamily,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub sets: Vec<Vec<String>>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    /// Whether every cut `{A : τ(A) ≥ δ}` for δ>0 in the value set is a crisp topology.
    pub level_cuts_are_topologies: bool,
}

/// Checks the three axioms on a bare family.
pub fn validate_family(tau: &FuzzyFamily) -> ValidationReport {
    let c = tau.carrier();
    let full = c.full();
    let mut violations = Vec::new();
    for (a, name) in [(SubsetId::EMPTY, "tau(∅)=1"), (full, "tau(X)=1")] {
        if !tau.get(a).is_one() {
            violations.push(Violation {
                axiom: name.to_string(),
                sets: vec![c.subset_labels(a)],
                detail: format!("degree is {}", tau.get(a)),
            });
        }
    }
    let size = c.powerset_len() as u32;
    for a in 0..size {
        for b in a + 1..size {
            let (sa, sb) = (SubsetId(a), SubsetId(b));
            let m = tau.get(sa).meet(tau.get(sb));
            let i = tau.get(sa.intersect(sb));
            if i < m {
                violations.push(Violation {
                    axiom: "intersection".to_string(),
                    sets: vec![c.subset_labels(sa), c.subset_labels(sb)],
                    detail: format!("tau(A∩B)={i} < min(tau(A),tau(B))={m}"),
                });
            }
            let u = tau.get(sa.union(sb));
            if u < m {
                violations.push(Violation {
                    axiom: "union".to_string(),
                    sets: vec![c.subset_labels(sa), c.subset_labels(sb)],
                    detail: format!("level {m}: A and B are in the cut but tau(A∪B)={u}"),
                });
            }
        }
    }
    let level_cuts_are_topologies =
        tau.values()
            .into_iter()
            .filter(|d| !d.is_zero())
            .all(|delta| {
                let cut: Vec<SubsetId> = tau
                    .iter()
                    .filter(|(_, d)| *d >= delta)
                    .map(|(a, _)| a)
                    .collect();
                let inside = |s: SubsetId| tau.get(s) >= delta;
                inside(SubsetId::EMPTY)
                    && inside(full)
                    && cut.iter().all(|a| {
                        cut.iter()
                            .all(|b| inside(a.union(*b)) && inside(a.intersect(*b)))
                    })
            });
    ValidationReport {
        valid: violations.is_empty(),
        violations,
        level_cuts_are_topologies,
    }
}

impl FuzzySpace {
    /// Validated constructor.
    pub fn new(tau: FuzzyFamily) -> Result<Self> {
        let report = validate_family(&tau);
        if !report.valid {
            let first = &report.violations[0];
            return Err(Error::InvalidSpace(format!(
                "{} violation(s), first: {} at {:?} ({})",
                report.violations.len(),
                first.axiom,
                first.sets,
                first.detail
            )));
        }
        Ok(FuzzySpace { tau })
    }

    /// Skips validation; used for counterexample study.
    pub fn new_unchecked(tau: FuzzyFamily) -> Self {
        FuzzySpace { tau }
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        self.tau.carrier()
    }

    pub fn tau(&self) -> &FuzzyFamily {
        &self.tau
    }

    pub fn open(&self, a: SubsetId) -> Degree {
        self.tau.get(a)
    }

    pub fn validate(&self) -> ValidationReport {
        validate_family(&self.tau)
    }

    /// `N_x(A) = sup { τ(B) : x∈B⊆A }`.
    pub fn nbhd(&self, x: usize, a: SubsetId) -> Result<Degree> {
        if x >= self.carrier().len() {
            return Err(Error::UnknownPoint(format!("#{x}")));
        }
        self.carrier().check(a)?;
        Ok(Degree::sup_over(
            a.submasks()
                .filter(|b| b.contains(x))
                .map(|b| self.tau.get(b)),
        ))
    }

    /// `Cl(A)(x) = 1 - N_x(X-A)`.
    pub fn closure(&self, a: SubsetId) -> Result<FuzzyPointSet> {
        let c = self.carrier();
        let co = c.complement(a)?;
        let mu = (0..c.len())
            .map(|x| self.nbhd(x, co).map(Degree::neg))
            .collect::<Result<Vec<_>>>()?;
        FuzzyPointSet::new(c.clone(), mu)
    }

    /// `Int(μ)(x) = sup_{B∋x} min(τ(B), inf_{y∈B} μ(y))` under the default convention.
    pub fn interior_fuzzy(&self, mu: &FuzzyPointSet) -> FuzzyPointSet {
        self.interior_fuzzy_with(mu, InteriorConvention::Min)
    }

    pub fn interior_fuzzy_with(
        &self,
        mu: &FuzzyPointSet,
        conv: InteriorConvention,
    ) -> FuzzyPointSet {
        let c = self.carrier();
        let weights = interior_weights(&self.tau, mu.values(), conv);
        let out = (0..c.len())
            .map(|x| {
                Degree::sup_over(
                    c.subsets()
                        .filter(|b| b.contains(x))
                        .map(|b| weights[b.index()]),
                )
            })
            .collect();
        FuzzyPointSet::new(c.clone(), out).expect("same carrier")
    }

    /// The trace topology `τ/A` on the points of `A`.
    pub fn subspace(&self, a: SubsetId) -> Result<FuzzySpace> {
        self.carrier().check(a)?;
        if a.is_empty() {
            return Err(Error::EmptySubspace);
        }
        Ok(FuzzySpace::new_unchecked(self.tau.trace(a)?))
    }

    /// The `{0,1}`-valued space of a crisp topology.
    pub fn crisp_embed(carrier: Arc<Carrier>, opens: &[SubsetId]) -> Result<FuzzySpace> {
        let set: BTreeSet<SubsetId> = opens.iter().copied().collect();
        let full = carrier.full();
        for a in &set {
            carrier.check(*a)?;
        }
        if !set.contains(&SubsetId::EMPTY) || !set.contains(&full) {
            return Err(Error::NotATopology("must contain ∅ and X".into()));
        }
        for a in &set {
            for b in &set {
                if !set.contains(&a.union(*b)) || !set.contains(&a.intersect(*b)) {
                    return Err(Error::NotATopology(format!(
                        "not closed under ∪/∩ at {} and {}",
                        carrier.show(*a),
                        carrier.show(*b)
                    )));
                }
            }
        }
        let tau = FuzzyFamily::from_fn(carrier, |a| Degree::from_bool(set.contains(&a)));
        Ok(FuzzySpace { tau })
    }

    /// Crisp discrete space on `n` lettered points.
    pub fn discrete(n: usize) -> Result<FuzzySpace> {
        let c = Carrier::letters(n)?.shared();
        Ok(FuzzySpace {
            tau: FuzzyFamily::constant(c, Degree::ONE),
        })
    }

    /// Crisp indiscrete space on `n` lettered points.
    pub fn indiscrete(n: usize) -> Result<FuzzySpace> {
        let c = Carrier::letters(n)?.shared();
        let full = c.full();
        Ok(FuzzySpace {
            tau: FuzzyFamily::from_fn(c, |a| Degree::from_bool(a.is_empty() || a == full)),
        })
    }

    /// Sierpiński space on `{a,b}` with `{a}` open.
    pub fn sierpinski() -> FuzzySpace {
        let c = Carrier::letters(2).expect("two points").shared();
        FuzzySpace::crisp_embed(c, &[SubsetId(0), SubsetId(0b01), SubsetId(0b11)]).expect("valid")
    }

    /// Two points with `τ({a}) = 3/4` and `τ({b}) = 1/2`.
    pub fn two_level() -> FuzzySpace {
        let c = Carrier::letters(2).expect("two points").shared();
        let tau = vec![
            Degree::ONE,
            Degree::frac(3, 4),
            Degree::frac(1, 2),
            Degree::ONE,
        ];
        FuzzySpace::new(FuzzyFamily::from_vec(c, tau).expect("sized")).expect("valid")
    }

    /// Random valid space from a chain of crisp topologies with grid-valued levels.
    pub fn random(n: usize, grid: u32, seed: u64) -> Result<FuzzySpace> {
        ensure_cap("random_space", n, subset_cap())?;
        if grid == 0 {
            return Err(Error::InvalidSpace("grid must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let carrier = Carrier::letters(n)?.shared();
        let full = carrier.full();
        let mut inner: Vec<u32> = (1..grid).collect();
        inner.shuffle(&mut rng);
        let extra = rng.gen_range(0..grid as usize);
        let mut levels: Vec<u32> = inner.into_iter().take(extra).collect();
        levels.sort_unstable_by(|a, b| b.cmp(a));
        levels.insert(0, grid);

        let mut member = vec![false; carrier.powerset_len()];
        member[0] = true;
        member[full.index()] = true;
        let mut tau = vec![Degree::ZERO; carrier.powerset_len()];
        for level in levels {
            let adds = if n == 0 { 0 } else { rng.gen_range(0..=n) };
            for _ in 0..adds {
                let m = rng.gen_range(0..=full.bits());
                member[m as usize] = true;
            }
            close_topology(&mut member);
            let v = Degree::frac(level as i128, grid as i128);
            for (i, &inside) in member.iter().enumerate() {
                if inside && tau[i].is_zero() {
                    tau[i] = v;
                }
            }
        }
        Ok(FuzzySpace {
            tau: FuzzyFamily::from_vec(carrier, tau)?,
        })
    }
}

/// Closes a membership table under pairwise union and intersection.
fn close_topology(member: &mut [bool]) {
    loop {
        let sets: Vec<u32> = (0..member.len() as u32)
            .filter(|&i| member[i as usize])
            .collect();
        let mut changed = false;
        for (k, &a) in sets.iter().enumerate() {
            for &b in &sets[k + 1..] {
                for m in [a | b, a & b] {
                    if !member[m as usize] {
                        member[m as usize] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// `w(B) = τ(B) ∘ inf_{y∈B} μ(y)` for every B, with `∘` per the convention.
pub(crate) fn interior_weights(
    tau: &FuzzyFamily,
    mu: &[Degree],
    conv: InteriorConvention,
) -> Vec<Degree> {
    let size = tau.carrier().powerset_len();
    let mut low = vec![Degree::ONE; size];
    let mut w = vec![Degree::ZERO; size];
    for m in 0..size {
        if m > 0 {
            let i = m.trailing_zeros() as usize;
            low[m] = low[m & (m - 1)].meet(mu[i]);
        }
        let t = tau.get(SubsetId(m as u32));
        w[m] = match conv {
            InteriorConvention::Min => t.meet(low[m]),
            InteriorConvention::Tensor => t.tnorm(low[m]),
        };
    }
    w
}

/// All crisp topologies on `n` points, in a deterministic order.
pub fn all_crisp_topologies(n: usize) -> Result<Vec<FuzzySpace>> {
    ensure_cap("crisp topology enumeration", n, 4)?;
    let carrier = Carrier::letters(n)?.shared();
    let full = carrier.full().bits();
    let proper: Vec<u32> = (1..full).collect();
    let mut out = Vec::new();
    for pick in 0u64..(1u64 << proper.len()) {
        let mut opens = vec![0u32, full];
        opens.extend(
            proper
                .iter()
                .enumerate()
                .filter(|(k, _)| pick >> k & 1 == 1)
                .map(|(_, m)| *m),
        );
        let set: BTreeSet<u32> = opens.iter().copied().collect();
        let closed = set.iter().all(|a| {
            set.iter()
                .all(|b| set.contains(&(a | b)) && set.contains(&(a & b)))
        });
        if closed {
            let ids: Vec<SubsetId> = set.into_iter().map(SubsetId).collect();
            out.push(FuzzySpace::crisp_embed(carrier.clone(), &ids)?);
        }
    }
    Ok(out)
}
