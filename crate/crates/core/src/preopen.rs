//! Pre-open degrees and the operators built from them, plus pre-base and
//! pre-subbase generation.

use std::sync::Arc;

use crate::carrier::{Carrier, SubsetId};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::family::{FuzzyFamily, FuzzyPointSet};
use crate::space::{interior_weights, FuzzySpace, InteriorConvention};

/// A space together with its memoized pre-open family and neighbourhood tables.
#[derive(Clone, Debug)]
pub struct PreopenStructure {
    space: FuzzySpace,
    tau_p: FuzzyFamily,
    nbhd: Vec<Vec<Degree>>,
    nbhd_p: Vec<Vec<Degree>>,
}

/// `τ_P(A) = inf_{x∈A} Int(Cl(A))(x)` for every A.
pub fn preopen_family(space: &FuzzySpace, conv: InteriorConvention) -> FuzzyFamily {
    let c = space.carrier();
    let n = c.len();
    let nbhd = space.tau().neighbourhoods();
    let full = c.full();
    FuzzyFamily::from_fn(c.clone(), |a| {
        if a.is_empty() {
            return Degree::ONE;
        }
        let co = full.minus(a);
        let cl: Vec<Degree> = (0..n).map(|x| nbhd[x][co.index()].neg()).collect();
        let w = interior_weights(space.tau(), &cl, conv);
        Degree::inf_over(
            a.points().map(|x| {
                Degree::sup_over(c.subsets().filter(|b| b.contains(x)).map(|b| w[b.index()]))
            }),
        )
    })
}

impl PreopenStructure {
    pub fn new(space: FuzzySpace) -> Self {
        Self::with_convention(space, InteriorConvention::Min)
    }

    pub fn with_convention(space: FuzzySpace, conv: InteriorConvention) -> Self {
        let tau_p = preopen_family(&space, conv);
        let nbhd = space.tau().neighbourhoods();
        let nbhd_p = tau_p.neighbourhoods();
        PreopenStructure {
            space,
            tau_p,
            nbhd,
            nbhd_p,
        }
    }

    pub fn space(&self) -> &FuzzySpace {
        &self.space
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        self.space.carrier()
    }

    pub fn tau(&self) -> &FuzzyFamily {
        self.space.tau()
    }

    pub fn tau_p_family(&self) -> &FuzzyFamily {
        &self.tau_p
    }

    pub fn tau_p(&self, a: SubsetId) -> Degree {
        self.tau_p.get(a)
    }

    /// Pre-closed degree `τ_P(X-A)`.
    pub fn f_p(&self, a: SubsetId) -> Degree {
        self.tau_p.get(self.carrier().full().minus(a))
    }

    /// The family `A ↦ f_p(A)`.
    pub fn f_p_family(&self) -> FuzzyFamily {
        FuzzyFamily::from_fn(self.carrier().clone(), |a| self.f_p(a))
    }

    pub fn nbhd(&self, x: usize, a: SubsetId) -> Degree {
        self.nbhd[x][a.index()]
    }

    /// `N^P_x(A) = sup { τ_P(B) : x∈B⊆A }`.
    pub fn nbhd_p(&self, x: usize, a: SubsetId) -> Degree {
        self.nbhd_p[x][a.index()]
    }

    pub fn nbhd_table(&self) -> &[Vec<Degree>] {
        &self.nbhd
    }

    pub fn nbhd_p_table(&self) -> &[Vec<Degree>] {
        &self.nbhd_p
    }

    pub fn closure(&self, a: SubsetId) -> FuzzyPointSet {
        let co = self.carrier().full().minus(a);
        let mu = (0..self.carrier().len())
            .map(|x| self.nbhd(x, co).neg())
            .collect();
        FuzzyPointSet::new(self.carrier().clone(), mu).expect("same carrier")
    }

    /// `Cl_P(A)(x) = 1 - N^P_x(X-A)`.
    pub fn cl_p(&self, a: SubsetId) -> FuzzyPointSet {
        let co = self.carrier().full().minus(a);
        let mu = (0..self.carrier().len())
            .map(|x| self.nbhd_p(x, co).neg())
            .collect();
        FuzzyPointSet::new(self.carrier().clone(), mu).expect("same carrier")
    }

    /// `Int_P(A)(x) = N^P_x(A)`.
    pub fn int_p(&self, a: SubsetId) -> FuzzyPointSet {
        let mu = (0..self.carrier().len())
            .map(|x| self.nbhd_p(x, a))
            .collect();
        FuzzyPointSet::new(self.carrier().clone(), mu).expect("same carrier")
    }

    /// Degree to which `τ_P` is closed under binary intersection.
    pub fn p_topological_degree(&self) -> Degree {
        intersection_degree(&self.tau_p)
    }

    /// Degree to which `beta` is a pre-base of this space.
    ///
    /// Fails with [`Error::NotBelowPreopen`] when `beta` exceeds `τ_P` somewhere.
    pub fn is_prebase_degree(&self, beta: &FuzzyFamily) -> Result<Degree> {
        beta.same_carrier(&self.tau_p)?;
        for (a, d) in beta.iter() {
            if d > self.tau_p.get(a) {
                return Err(Error::NotBelowPreopen {
                    set: self.carrier().show(a),
                    family: d,
                    preopen: self.tau_p.get(a),
                });
            }
        }
        let base = beta.neighbourhoods();
        let n = self.carrier().len();
        Ok(Degree::inf_over((0..n).flat_map(|x| {
            let base = &base;
            self.carrier()
                .subsets()
                .map(move |a| self.nbhd_p(x, a).implies(base[x][a.index()]))
        })))
    }
}

/// `inf_{A,B} (min(f(A),f(B)) → f(A∩B))`.
pub fn intersection_degree(f: &FuzzyFamily) -> Degree {
    let size = f.carrier().powerset_len() as u32;
    let mut acc = Degree::ONE;
    for a in 0..size {
        for b in a + 1..size {
            let (a, b) = (SubsetId(a), SubsetId(b));
            acc = acc.meet(f.get(a).meet(f.get(b)).implies(f.get(a.intersect(b))));
        }
    }
    acc
}

/// `β^(∪)(A)`: best inf over covers of A by members of the family.
///
/// For a threshold t the largest cover usable is every `B⊆A` with `β(B) ≥ t`, so
/// A's value is the largest t whose cover still reaches A.
pub fn union_closure(beta: &FuzzyFamily) -> FuzzyFamily {
    FuzzyFamily::from_fn(beta.carrier().clone(), |a| {
        if a.is_empty() {
            return Degree::ONE;
        }
        let mut subs: Vec<(Degree, SubsetId)> = a.submasks().map(|b| (beta.get(b), b)).collect();
        subs.sort_by_key(|x| std::cmp::Reverse(x.0));
        let mut acc = SubsetId::EMPTY;
        for (d, b) in subs {
            acc = acc.union(b);
            if acc == a {
                return d;
            }
        }
        Degree::ZERO
    })
}

/// `φ^⋒(A)`: best inf over finite subfamilies whose intersection is A.
pub fn finite_intersection_closure(phi: &FuzzyFamily) -> FuzzyFamily {
    let full = phi.carrier().full();
    FuzzyFamily::from_fn(phi.carrier().clone(), |a| {
        if a == full {
            return Degree::ONE;
        }
        let mut sups: Vec<(Degree, SubsetId)> = full
            .minus(a)
            .submasks()
            .map(|extra| {
                let b = a.union(extra);
                (phi.get(b), b)
            })
            .collect();
        sups.sort_by_key(|x| std::cmp::Reverse(x.0));
        let mut acc = full;
        for (d, b) in sups {
            acc = acc.intersect(b);
            if acc == a {
                return d;
            }
        }
        Degree::ZERO
    })
}

/// `(β^(∪)(X), inf_{A,B,x∈A∩B} (min(β(A),β(B)) → sup_{x∈C⊆A∩B} β(C)))`.
pub fn prebase_axiom_degrees(beta: &FuzzyFamily) -> (Degree, Degree) {
    let c = beta.carrier();
    let first = union_closure(beta).get(c.full());
    let base = beta.neighbourhoods();
    let size = c.powerset_len() as u32;
    let mut second = Degree::ONE;
    for a in 0..size {
        for b in a..size {
            let (a, b) = (SubsetId(a), SubsetId(b));
            let ab = a.intersect(b);
            let m = beta.get(a).meet(beta.get(b));
            for x in ab.points() {
                second = second.meet(m.implies(base[x][ab.index()]));
            }
        }
    }
    (first, second)
}

/// `φ^(∪)(X)`.
pub fn subbase_condition_degree(phi: &FuzzyFamily) -> Degree {
    union_closure(phi).get(phi.carrier().full())
}
