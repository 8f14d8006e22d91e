//! Finite products and their pre-open structure.
//!
//! A product point is a tuple of factor points, labelled by joining the factor
//! labels with `|`. The pre-base gives a box `∏ W_s` the least pre-open degree of
//! its proper components, gives ∅ degree 1 and every non-box degree 0; the
//! pre-open structure of the product is the union closure of that pre-base.

use std::sync::Arc;

use crate::carrier::{ensure_cap, subset_cap, Carrier, SubsetId};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::family::FuzzyFamily;
use crate::maps::PointMap;
use crate::preopen::{union_closure, PreopenStructure};
use crate::space::FuzzySpace;

#[derive(Clone, Debug)]
pub struct Product {
    carrier: Arc<Carrier>,
    factors: Vec<PreopenStructure>,
    /// Product point index -> factor point indices.
    coords: Vec<Vec<usize>>,
    prebase: FuzzyFamily,
    preopen: FuzzyFamily,
}

impl Product {
    pub fn new(spaces: &[FuzzySpace]) -> Result<Product> {
        if spaces.len() < 2 {
            return Err(Error::InvalidSpace(
                "a product needs at least two factors".into(),
            ));
        }
        let size: usize = spaces.iter().map(|s| s.carrier().len()).product();
        ensure_cap("product", size, subset_cap())?;
        let factors: Vec<PreopenStructure> = spaces
            .iter()
            .map(|s| PreopenStructure::new(s.clone()))
            .collect();

        let mut coords: Vec<Vec<usize>> = vec![Vec::new()];
        for s in spaces {
            coords = coords
                .into_iter()
                .flat_map(|t| {
                    (0..s.carrier().len()).map(move |i| {
                        let mut t = t.clone();
                        t.push(i);
                        t
                    })
                })
                .collect();
        }
        let labels: Vec<String> = coords
            .iter()
            .map(|t| {
                t.iter()
                    .zip(spaces)
                    .map(|(i, s)| s.carrier().label(*i))
                    .collect::<Vec<_>>()
                    .join("|")
            })
            .collect();
        let carrier = Carrier::new(labels)?.shared();

        let mut prebase = FuzzyFamily::zero(carrier.clone());
        prebase.set(SubsetId::EMPTY, Degree::ONE)?;
        let mut boxes = vec![Vec::<SubsetId>::new()];
        for s in spaces {
            boxes = boxes
                .into_iter()
                .flat_map(|b| {
                    s.carrier()
                        .subsets()
                        .filter(|w| !w.is_empty())
                        .map(move |w| {
                            let mut b = b.clone();
                            b.push(w);
                            b
                        })
                })
                .collect();
        }
        for comps in boxes {
            let mut v = SubsetId::EMPTY;
            for (p, t) in coords.iter().enumerate() {
                if t.iter().zip(&comps).all(|(i, w)| w.contains(*i)) {
                    v = v.with(p);
                }
            }
            let d = Degree::inf_over(comps.iter().zip(&factors).map(|(w, f)| f.tau_p(*w)));
            prebase.set(v, d)?;
        }
        let preopen = union_closure(&prebase);
        Ok(Product {
            carrier,
            factors,
            coords,
            prebase,
            preopen,
        })
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn factors(&self) -> &[PreopenStructure] {
        &self.factors
    }

    /// The pre-base family on boxes.
    pub fn prebase(&self) -> &FuzzyFamily {
        &self.prebase
    }

    /// The generated product pre-open structure.
    pub fn preopen(&self) -> &FuzzyFamily {
        &self.preopen
    }

    pub fn projection(&self, s: usize) -> Result<PointMap> {
        let f = self
            .factors
            .get(s)
            .ok_or_else(|| Error::Map(format!("no factor {s}")))?;
        PointMap::new(
            self.carrier.clone(),
            f.carrier().clone(),
            self.coords.iter().map(|t| t[s]).collect(),
        )
    }

    /// `p_s⁻¹(W)` as a product subset.
    pub fn cylinder(&self, s: usize, w: SubsetId) -> Result<SubsetId> {
        Ok(self.projection(s)?.preimage(w))
    }
}
