//! Fuzzy families over the powerset and fuzzy point sets.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::carrier::{Carrier, SubsetId};
use crate::degree::Degree;
use crate::error::{Error, Result};

/// A total map `P(X) -> [0,1]`, indexed by subset word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FuzzyFamily {
    carrier: Arc<Carrier>,
    deg: Vec<Degree>,
}

impl FuzzyFamily {
    pub fn constant(carrier: Arc<Carrier>, v: Degree) -> Self {
        let deg = vec![v; carrier.powerset_len()];
        FuzzyFamily { carrier, deg }
    }

    pub fn zero(carrier: Arc<Carrier>) -> Self {
        Self::constant(carrier, Degree::ZERO)
    }

    pub fn from_fn(carrier: Arc<Carrier>, mut f: impl FnMut(SubsetId) -> Degree) -> Self {
        let deg = carrier.subsets().map(&mut f).collect();
        FuzzyFamily { carrier, deg }
    }

    pub fn from_vec(carrier: Arc<Carrier>, deg: Vec<Degree>) -> Result<Self> {
        if deg.len() != carrier.powerset_len() {
            return Err(Error::CarrierMismatch);
        }
        Ok(FuzzyFamily { carrier, deg })
    }

    /// Zero everywhere except the listed sets.
    pub fn from_entries(
        carrier: Arc<Carrier>,
        entries: impl IntoIterator<Item = (SubsetId, Degree)>,
    ) -> Result<Self> {
        let mut f = Self::zero(carrier);
        for (a, d) in entries {
            f.set(a, d)?;
        }
        Ok(f)
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn get(&self, a: SubsetId) -> Degree {
        self.deg[a.index()]
    }

    pub fn set(&mut self, a: SubsetId, d: Degree) -> Result<()> {
        self.carrier.check(a)?;
        self.deg[a.index()] = d;
        Ok(())
    }

    pub fn as_slice(&self) -> &[Degree] {
        &self.deg
    }

    pub fn iter(&self) -> impl Iterator<Item = (SubsetId, Degree)> + '_ {
        self.deg
            .iter()
            .enumerate()
            .map(|(i, d)| (SubsetId(i as u32), *d))
    }

    /// Distinct values, ascending.
    pub fn values(&self) -> Vec<Degree> {
        self.deg
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn same_carrier(&self, other: &FuzzyFamily) -> Result<()> {
        if Arc::ptr_eq(&self.carrier, &other.carrier) || self.carrier == other.carrier {
            Ok(())
        } else {
            Err(Error::CarrierMismatch)
        }
    }

    /// Crisp pointwise order.
    pub fn le(&self, other: &FuzzyFamily) -> bool {
        self.deg.iter().zip(&other.deg).all(|(a, b)| a <= b)
    }

    pub fn map(&self, f: impl Fn(Degree) -> Degree) -> FuzzyFamily {
        FuzzyFamily {
            carrier: self.carrier.clone(),
            deg: self.deg.iter().map(|d| f(*d)).collect(),
        }
    }

    /// Trace on `a`: `B ↦ sup { self(V) : V∩a = B }`, over the sub-carrier of `a`.
    pub fn trace(&self, a: SubsetId) -> Result<FuzzyFamily> {
        let sub = Arc::new(self.carrier.restrict(a)?);
        let mut deg = vec![Degree::ZERO; sub.powerset_len()];
        for (v, d) in self.iter() {
            let k = v.intersect(a).compress(a).index();
            if d > deg[k] {
                deg[k] = d;
            }
        }
        Ok(FuzzyFamily { carrier: sub, deg })
    }

    /// Table `t[x][A] = sup { self(B) : x∈B⊆A }`.
    pub fn neighbourhoods(&self) -> Vec<Vec<Degree>> {
        let n = self.carrier.len();
        let size = self.carrier.powerset_len();
        (0..n)
            .map(|x| {
                let mut t = vec![Degree::ZERO; size];
                for m in 0..size as u32 {
                    let a = SubsetId(m);
                    if !a.contains(x) {
                        continue;
                    }
                    let mut best = self.deg[m as usize];
                    for i in a.without(x).points() {
                        let v = t[a.without(i).index()];
                        if v > best {
                            best = v;
                        }
                    }
                    t[m as usize] = best;
                }
                t
            })
            .collect()
    }
}

/// A fuzzy subset of the carrier, `X -> [0,1]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FuzzyPointSet {
    carrier: Arc<Carrier>,
    mu: Vec<Degree>,
}

impl FuzzyPointSet {
    pub fn new(carrier: Arc<Carrier>, mu: Vec<Degree>) -> Result<Self> {
        if mu.len() != carrier.len() {
            return Err(Error::CarrierMismatch);
        }
        Ok(FuzzyPointSet { carrier, mu })
    }

    pub fn constant(carrier: Arc<Carrier>, v: Degree) -> Self {
        let mu = vec![v; carrier.len()];
        FuzzyPointSet { carrier, mu }
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn at(&self, x: usize) -> Degree {
        self.mu[x]
    }

    pub fn values(&self) -> &[Degree] {
        &self.mu
    }

    pub fn le(&self, other: &FuzzyPointSet) -> bool {
        self.mu.iter().zip(&other.mu).all(|(a, b)| a <= b)
    }

    /// Degree to which this fuzzy set is everything: `inf_x mu(x)`.
    pub fn everywhere(&self) -> Degree {
        Degree::inf_over(self.mu.iter().copied())
    }
}
