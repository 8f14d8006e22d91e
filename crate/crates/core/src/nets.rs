//! Nets on finite carriers, represented by their kernel.
//!
//! On a finite carrier the tails of a net shrink to a least tail value set E,
//! which is also the set of values taken cofinally. So the net is almost in A
//! exactly when `E⊆A` and often in A exactly when `A∩E≠∅`. [`ExplicitNet`]
//! evaluates the same predicates from an explicit directed domain and serves as
//! the reference for that reduction.

use crate::carrier::SubsetId;
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::family::FuzzyPointSet;
use crate::preopen::PreopenStructure;

/// A net identified by its kernel `E` (nonempty).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NetRep {
    kernel: SubsetId,
}

impl NetRep {
    pub fn new(kernel: SubsetId) -> Result<Self> {
        if kernel.is_empty() {
            return Err(Error::Net("kernel must be nonempty".into()));
        }
        Ok(NetRep { kernel })
    }

    pub fn kernel(&self) -> SubsetId {
        self.kernel
    }

    pub fn almost_in(&self, a: SubsetId) -> bool {
        self.kernel.is_subset(a)
    }

    pub fn often_in(&self, a: SubsetId) -> bool {
        !self.kernel.is_disjoint(a)
    }

    /// Universal nets are the eventually constant ones.
    pub fn is_universal(&self) -> bool {
        self.kernel.len() == 1
    }

    /// Every nonempty sub-kernel, ascending.
    pub fn subnet_reps(&self) -> impl Iterator<Item = NetRep> {
        self.kernel
            .submasks()
            .filter(|k| !k.is_empty())
            .map(|kernel| NetRep { kernel })
    }
}

/// `inf_{A : E⊄A} (1 - N^P_x(A))`.
pub fn pre_converges(pre: &PreopenStructure, net: &NetRep, x: usize) -> Degree {
    Degree::inf_over(
        pre.carrier()
            .subsets()
            .filter(|a| !net.almost_in(*a))
            .map(|a| pre.nbhd_p(x, a).neg()),
    )
}

/// `inf_{A : A∩E=∅} (1 - N^P_x(A))`.
pub fn pre_accumulates(pre: &PreopenStructure, net: &NetRep, x: usize) -> Degree {
    Degree::inf_over(
        pre.carrier()
            .subsets()
            .filter(|a| !net.often_in(*a))
            .map(|a| pre.nbhd_p(x, a).neg()),
    )
}

pub fn adh_p(pre: &PreopenStructure, net: &NetRep) -> FuzzyPointSet {
    let mu = (0..pre.carrier().len())
        .map(|x| pre_accumulates(pre, net, x))
        .collect();
    FuzzyPointSet::new(pre.carrier().clone(), mu).expect("same carrier")
}

fn all_nets(pre: &PreopenStructure) -> impl Iterator<Item = NetRep> + '_ {
    pre.carrier()
        .subsets()
        .filter(|k| !k.is_empty())
        .map(|kernel| NetRep { kernel })
}

fn best_limit(pre: &PreopenStructure, net: &NetRep) -> Degree {
    Degree::sup_over((0..pre.carrier().len()).map(|x| pre_converges(pre, net, x)))
}

/// Every universal net pre-converges somewhere.
pub fn beta2(pre: &PreopenStructure) -> Degree {
    Degree::inf_over(
        all_nets(pre)
            .filter(NetRep::is_universal)
            .map(|n| best_limit(pre, &n)),
    )
}

/// Every net has a pre-convergent subnet.
pub fn beta3(pre: &PreopenStructure) -> Degree {
    Degree::inf_over(
        all_nets(pre).map(|n| Degree::sup_over(n.subnet_reps().map(|t| best_limit(pre, &t)))),
    )
}

/// Every net has a pre-adherent point: `inf_E (1 - inf_x (1 - adh_P(E)(x)))`.
pub fn beta4(pre: &PreopenStructure) -> Degree {
    Degree::inf_over(all_nets(pre).map(|n| {
        let empty = Degree::inf_over(adh_p(pre, &n).values().iter().map(|d| d.neg()));
        empty.neg()
    }))
}

/// A net given by an explicit directed domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExplicitNet {
    /// A sequence over ℕ: `prefix` followed by `cycle` repeated forever.
    Periodic {
        prefix: Vec<usize>,
        cycle: Vec<usize>,
    },
    /// A finite preorder, `le[i][j]` meaning stage i ≤ stage j.
    Finite {
        le: Vec<Vec<bool>>,
        values: Vec<usize>,
    },
}

impl ExplicitNet {
    pub fn periodic(prefix: Vec<usize>, cycle: Vec<usize>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Net("periodic part must be nonempty".into()));
        }
        Ok(ExplicitNet::Periodic { prefix, cycle })
    }

    pub fn finite(le: Vec<Vec<bool>>, values: Vec<usize>) -> Result<Self> {
        let k = values.len();
        if k == 0 || le.len() != k || le.iter().any(|r| r.len() != k) {
            return Err(Error::Net(
                "preorder and values must be square and nonempty".into(),
            ));
        }
        for i in 0..k {
            if !le[i][i] {
                return Err(Error::Net("preorder is not reflexive".into()));
            }
            for j in 0..k {
                for l in 0..k {
                    if le[i][j] && le[j][l] && !le[i][l] {
                        return Err(Error::Net("preorder is not transitive".into()));
                    }
                }
                if !(0..k).any(|u| le[i][u] && le[j][u]) {
                    return Err(Error::Net("domain is not directed".into()));
                }
            }
        }
        Ok(ExplicitNet::Finite { le, values })
    }

    fn check_points(&self, n: usize) -> Result<()> {
        let vals: Vec<usize> = match self {
            ExplicitNet::Periodic { prefix, cycle } => {
                prefix.iter().chain(cycle).copied().collect()
            }
            ExplicitNet::Finite { values, .. } => values.clone(),
        };
        if vals.iter().any(|v| *v >= n) {
            return Err(Error::Net("value outside the carrier".into()));
        }
        Ok(())
    }

    /// Value sets of the tails `{S(j) : j ≥ m}`, one per stage m.
    fn tails(&self) -> Vec<SubsetId> {
        match self {
            ExplicitNet::Periodic { prefix, cycle } => {
                let at = |j: usize| {
                    if j < prefix.len() {
                        prefix[j]
                    } else {
                        cycle[(j - prefix.len()) % cycle.len()]
                    }
                };
                // Past the prefix every tail covers a whole period, so these stages suffice.
                let horizon = prefix.len() + cycle.len();
                (0..horizon)
                    .map(|m| {
                        (m..horizon + cycle.len()).fold(SubsetId::EMPTY, |acc, j| acc.with(at(j)))
                    })
                    .collect()
            }
            ExplicitNet::Finite { le, values } => (0..values.len())
                .map(|m| {
                    (0..values.len())
                        .filter(|j| le[m][*j])
                        .fold(SubsetId::EMPTY, |acc, j| acc.with(values[j]))
                })
                .collect(),
        }
    }

    /// `∃m ∀j≥m S(j)∈A`.
    pub fn almost_in(&self, a: SubsetId) -> bool {
        self.tails().iter().any(|t| t.is_subset(a))
    }

    /// `∀m ∃j≥m S(j)∈A`.
    pub fn often_in(&self, a: SubsetId) -> bool {
        self.tails().iter().all(|t| !t.is_disjoint(a))
    }

    /// Subnet keeping the cycle positions whose values lie in `keep`.
    pub fn subnet_through(&self, keep: SubsetId) -> Result<ExplicitNet> {
        match self {
            ExplicitNet::Periodic { cycle, .. } => {
                let kept: Vec<usize> = cycle
                    .iter()
                    .copied()
                    .filter(|v| keep.contains(*v))
                    .collect();
                if kept.is_empty() {
                    return Err(Error::Net(
                        "no cofinal value in the requested kernel".into(),
                    ));
                }
                // Stage k of the subnet is the k-th kept position after the prefix.
                Ok(ExplicitNet::Periodic {
                    prefix: Vec::new(),
                    cycle: kept,
                })
            }
            ExplicitNet::Finite { .. } => Err(Error::Net(
                "subnet witnesses are built for periodic nets only".into(),
            )),
        }
    }
}

/// `(S ▷^P x, S ∝^P x)` evaluated straight from the definitions on an explicit net.
pub fn oracle_net_predicates(
    pre: &PreopenStructure,
    net: &ExplicitNet,
    x: usize,
) -> Result<(Degree, Degree)> {
    net.check_points(pre.carrier().len())?;
    let mut conv = Degree::ONE;
    let mut acc = Degree::ONE;
    for a in pre.carrier().subsets() {
        let n = pre.nbhd_p(x, a);
        conv = conv.meet(n.implies(Degree::from_bool(net.almost_in(a))));
        acc = acc.meet(n.implies(Degree::from_bool(net.often_in(a))));
    }
    Ok((conv, acc))
}
