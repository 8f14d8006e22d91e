//! Maps between finite carriers and their continuity and openness degrees.

use std::sync::Arc;

use crate::carrier::{Carrier, SubsetId};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::family::FuzzyFamily;
use crate::preopen::PreopenStructure;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMap {
    domain: Arc<Carrier>,
    codomain: Arc<Carrier>,
    assign: Vec<usize>,
}

impl PointMap {
    pub fn new(domain: Arc<Carrier>, codomain: Arc<Carrier>, assign: Vec<usize>) -> Result<Self> {
        if assign.len() != domain.len() {
            return Err(Error::Map(format!(
                "map assigns {} points, domain has {}",
                assign.len(),
                domain.len()
            )));
        }
        if let Some(v) = assign.iter().find(|v| **v >= codomain.len()) {
            return Err(Error::Map(format!("image index {v} outside the codomain")));
        }
        Ok(PointMap {
            domain,
            codomain,
            assign,
        })
    }

    pub fn from_labels<S: AsRef<str>>(
        domain: Arc<Carrier>,
        codomain: Arc<Carrier>,
        pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self> {
        let mut assign = vec![None; domain.len()];
        for (x, y) in pairs {
            let i = domain.point(x.as_ref())?;
            assign[i] = Some(codomain.point(y.as_ref())?);
        }
        let assign = assign
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| Error::Map(format!("no image for `{}`", domain.label(i))))
            })
            .collect::<Result<Vec<_>>>()?;
        PointMap::new(domain, codomain, assign)
    }

    pub fn identity(c: Arc<Carrier>) -> Self {
        let assign = (0..c.len()).collect();
        PointMap {
            domain: c.clone(),
            codomain: c,
            assign,
        }
    }

    pub fn domain(&self) -> &Arc<Carrier> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Carrier> {
        &self.codomain
    }

    pub fn at(&self, x: usize) -> usize {
        self.assign[x]
    }

    pub fn image(&self, a: SubsetId) -> SubsetId {
        a.points()
            .fold(SubsetId::EMPTY, |acc, x| acc.with(self.assign[x]))
    }

    pub fn preimage(&self, b: SubsetId) -> SubsetId {
        (0..self.assign.len())
            .filter(|x| b.contains(self.assign[*x]))
            .fold(SubsetId::EMPTY, |acc, x| acc.with(x))
    }

    pub fn is_surjective(&self) -> bool {
        self.image(self.domain.full()) == self.codomain.full()
    }

    /// Every map `domain -> codomain`, in lexicographic order of assignments.
    pub fn all(domain: Arc<Carrier>, codomain: Arc<Carrier>) -> Vec<PointMap> {
        let n = domain.len();
        let m = codomain.len();
        if m == 0 {
            return if n == 0 {
                vec![PointMap::new(domain, codomain, Vec::new()).expect("empty map")]
            } else {
                Vec::new()
            };
        }
        let total = m.pow(n as u32);
        (0..total)
            .map(|mut code| {
                let mut assign = vec![0; n];
                for slot in assign.iter_mut().rev() {
                    *slot = code % m;
                    code /= m;
                }
                PointMap {
                    domain: domain.clone(),
                    codomain: codomain.clone(),
                    assign,
                }
            })
            .collect()
    }

    fn fits(&self, source: &FuzzyFamily, target: &FuzzyFamily) -> Result<()> {
        if **source.carrier() != *self.domain || **target.carrier() != *self.codomain {
            return Err(Error::CarrierMismatch);
        }
        Ok(())
    }
}

/// `inf_{B⊆Y} (target(B) → source(f⁻¹B))`.
pub fn continuity_degree(
    f: &PointMap,
    source: &FuzzyFamily,
    target: &FuzzyFamily,
) -> Result<Degree> {
    f.fits(source, target)?;
    Ok(Degree::inf_over(
        target
            .iter()
            .map(|(b, d)| d.implies(source.get(f.preimage(b)))),
    ))
}

/// `inf_{U⊆X} (source(U) → target(f(U)))`.
pub fn openness_degree(f: &PointMap, source: &FuzzyFamily, target: &FuzzyFamily) -> Result<Degree> {
    f.fits(source, target)?;
    Ok(Degree::inf_over(
        source
            .iter()
            .map(|(u, d)| d.implies(target.get(f.image(u)))),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Continuity {
    /// Open sets pull back to open sets.
    pub c: Degree,
    /// Open sets pull back to pre-open sets.
    pub c_p: Degree,
    /// Pre-open sets pull back to pre-open sets.
    pub i_p: Degree,
}

pub fn continuity_degrees(
    f: &PointMap,
    x: &PreopenStructure,
    y: &PreopenStructure,
) -> Result<Continuity> {
    Ok(Continuity {
        c: continuity_degree(f, x.tau(), y.tau())?,
        c_p: continuity_degree(f, x.tau_p_family(), y.tau())?,
        i_p: continuity_degree(f, x.tau_p_family(), y.tau_p_family())?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Openness {
    pub o: Degree,
    pub o_p: Degree,
}

pub fn openness_degrees(
    f: &PointMap,
    x: &PreopenStructure,
    y: &PreopenStructure,
) -> Result<Openness> {
    Ok(Openness {
        o: openness_degree(f, x.tau(), y.tau())?,
        o_p: openness_degree(f, x.tau_p_family(), y.tau_p_family())?,
    })
}

/// Pre-openness read off a pre-base `beta` of the domain.
///
/// Fails unless `beta` is a pre-base to degree 1.
pub fn openness_via_prebase(
    f: &PointMap,
    beta: &FuzzyFamily,
    x: &PreopenStructure,
    y: &PreopenStructure,
) -> Result<Degree> {
    let d = x.is_prebase_degree(beta)?;
    if !d.is_one() {
        return Err(Error::NotAPrebase(d));
    }
    openness_degree(f, beta, y.tau_p_family())
}

/// A pre-base of `x` that drops every set already generated by its proper subsets.
///
/// `B` keeps `τ_P(B)` unless the proper subsets of B with pre-open degree at least
/// `τ_P(B)` already cover B.
pub fn reduced_prebase(x: &PreopenStructure) -> FuzzyFamily {
    let tp = x.tau_p_family();
    FuzzyFamily::from_fn(x.carrier().clone(), |b| {
        let d = tp.get(b);
        let covered = b
            .submasks()
            .filter(|s| *s != b && tp.get(*s) >= d)
            .fold(SubsetId::EMPTY, SubsetId::union);
        if covered == b && !b.is_empty() {
            Degree::ZERO
        } else {
            d
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_all_maps() {
        let a = Carrier::letters(2).unwrap().shared();
        let b = Carrier::letters(3).unwrap().shared();
        let maps = PointMap::all(a.clone(), b.clone());
        assert_eq!(maps.len(), 9);
        assert_eq!(maps.iter().filter(|m| m.is_surjective()).count(), 0);
        let back = PointMap::all(b, a);
        assert_eq!(back.iter().filter(|m| m.is_surjective()).count(), 6);
    }

    #[test]
    fn image_and_preimage() {
        let a = Carrier::letters(3).unwrap().shared();
        let b = Carrier::letters(2).unwrap().shared();
        let f = PointMap::from_labels(a, b, [("a", "a"), ("b", "b"), ("c", "a")]).unwrap();
        assert_eq!(f.image(SubsetId(0b101)), SubsetId(0b01));
        assert_eq!(f.preimage(SubsetId(0b01)), SubsetId(0b101));
        assert!(f.is_surjective());
    }
}
