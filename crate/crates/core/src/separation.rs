//! Pre-separation degrees.
//!
//! Each degree is available on a [`PreopenStructure`] and, through the `_of`
//! variants, on any pre-open family (for example a trace on a subspace or the
//! pre-open family of a product).

use std::borrow::Cow;

use crate::carrier::SubsetId;
use crate::degree::Degree;
use crate::family::FuzzyFamily;
use crate::preopen::PreopenStructure;

struct View<'a> {
    tp: &'a FuzzyFamily,
    nb: Cow<'a, [Vec<Degree>]>,
}

impl<'a> View<'a> {
    fn of(tp: &'a FuzzyFamily) -> Self {
        View {
            tp,
            nb: Cow::Owned(tp.neighbourhoods()),
        }
    }

    fn pre(pre: &'a PreopenStructure) -> Self {
        View {
            tp: pre.tau_p_family(),
            nb: Cow::Borrowed(pre.nbhd_p_table()),
        }
    }

    fn nbhd(&self, x: usize, a: SubsetId) -> Degree {
        self.nb[x][a.index()]
    }

    fn t2p(&self) -> Degree {
        let c = self.tp.carrier();
        let n = c.len();
        let pairs: Vec<(SubsetId, SubsetId)> = c.disjoint_pairs().collect();
        let mut acc = Degree::ONE;
        for x in 0..n {
            // The quantity is symmetric in (x,y), so unordered pairs suffice.
            for y in x + 1..n {
                let best = Degree::sup_over(
                    pairs
                        .iter()
                        .map(|(b, cc)| self.nbhd(x, *b).meet(self.nbhd(y, *cc))),
                );
                acc = acc.meet(best);
            }
        }
        acc
    }

    /// `sup { min(τ_P(U), τ_P(V)) : U∩V=∅, A⊆U, B⊆V }` for disjoint A, B.
    fn separating(&self, a: SubsetId, b: SubsetId) -> Degree {
        let rest = self.tp.carrier().full().minus(a.union(b));
        let mut best = Degree::ZERO;
        for u_extra in rest.submasks() {
            let tu = self.tp.get(a.union(u_extra));
            if tu <= best {
                continue;
            }
            for v_extra in rest.minus(u_extra).submasks() {
                best = best.join(tu.meet(self.tp.get(b.union(v_extra))));
            }
        }
        best
    }

    fn normality_term(&self, a: SubsetId, b: SubsetId) -> Degree {
        let full = self.tp.carrier().full();
        let closed = self.tp.get(full.minus(a)).meet(self.tp.get(full.minus(b)));
        closed.implies(self.separating(a, b))
    }

    fn t4p(&self) -> Degree {
        Degree::inf_over(
            self.tp
                .carrier()
                .disjoint_pairs()
                .map(|(a, b)| self.normality_term(a, b)),
        )
    }

    fn t3p(&self) -> Degree {
        let c = self.tp.carrier();
        let full = c.full();
        Degree::inf_over((0..c.len()).flat_map(|x| {
            let a = SubsetId::singleton(x);
            full.minus(a)
                .submasks()
                .map(move |b| self.normality_term(a, b))
        }))
    }

    fn t3p_nbhd(&self) -> Degree {
        let c = self.tp.carrier();
        let full = c.full();
        let mut acc = Degree::ONE;
        for w in c.subsets() {
            let tw = self.tp.get(w);
            for x in w.points() {
                let best = Degree::sup_over(c.subsets().map(|g| {
                    let outside = Degree::inf_over(
                        full.minus(w).points().map(|y| self.nbhd(y, full.minus(g))),
                    );
                    self.nbhd(x, g).meet(outside)
                }));
                acc = acc.meet(tw.implies(best));
            }
        }
        acc
    }
}

/// Pre-Hausdorff degree: every pair of distinct points has disjoint pre-neighbourhoods.
pub fn t2p(pre: &PreopenStructure) -> Degree {
    View::pre(pre).t2p()
}

/// Pre-normality degree over all disjoint pairs of sets.
pub fn t4p(pre: &PreopenStructure) -> Degree {
    View::pre(pre).t4p()
}

/// Pre-regularity: the normality formula with the first set a singleton.
pub fn t3p(pre: &PreopenStructure) -> Degree {
    View::pre(pre).t3p()
}

/// Neighbourhood form of pre-regularity:
/// `inf_{x∈W} (τ_P(W) → sup_G min(N^P_x(G), inf_{y∉W} N^P_y(X-G)))`.
pub fn t3p_nbhd(pre: &PreopenStructure) -> Degree {
    View::pre(pre).t3p_nbhd()
}

pub fn t2p_of(tp: &FuzzyFamily) -> Degree {
    View::of(tp).t2p()
}

pub fn t3p_of(tp: &FuzzyFamily) -> Degree {
    View::of(tp).t3p()
}

pub fn t4p_of(tp: &FuzzyFamily) -> Degree {
    View::of(tp).t4p()
}

pub fn t3p_nbhd_of(tp: &FuzzyFamily) -> Degree {
    View::of(tp).t3p_nbhd()
}
