//! JSON formats for spaces, families and maps.
//!
//! A space file lists the points and the non-zero degrees:
//!
//! ```json
//! {"points": ["a", "b"], "tau": [{"set": ["a"], "degree": "3/4"}]}
//! ```
//!
//! Omitted subsets get degree 0, except ∅ and the whole carrier which get 1.
//! A family file has the same shape with the entries under `family` (or `tau`);
//! its `points` field is optional and, when present, must match the space.
//! A map file is `{"map": {"a": "x", "b": "y"}}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::carrier::{Carrier, SubsetId};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::family::FuzzyFamily;
use crate::maps::PointMap;
use crate::space::FuzzySpace;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Entry {
    pub set: Vec<String>,
    pub degree: Degree,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpaceFile {
    pub points: Vec<String>,
    pub tau: Vec<Entry>,
}

#[derive(Clone, Debug, Deserialize)]
struct FamilyFile {
    #[serde(default)]
    points: Option<Vec<String>>,
    #[serde(alias = "tau")]
    family: Vec<Entry>,
}

#[derive(Clone, Debug, Deserialize)]
struct MapFile {
    map: BTreeMap<String, String>,
}

fn fill(carrier: Arc<Carrier>, entries: &[Entry], ends: bool) -> Result<FuzzyFamily> {
    let mut deg = vec![None; carrier.powerset_len()];
    for e in entries {
        let s = carrier.subset(&e.set)?;
        if deg[s.index()].replace(e.degree).is_some() {
            return Err(Error::InvalidSpace(format!(
                "duplicate entry for {}",
                carrier.show(s)
            )));
        }
    }
    let full = carrier.full();
    let deg = deg
        .into_iter()
        .enumerate()
        .map(|(i, d)| {
            let endpoint = ends && (i == 0 || i == full.index());
            d.unwrap_or(if endpoint { Degree::ONE } else { Degree::ZERO })
        })
        .collect();
    FuzzyFamily::from_vec(carrier, deg)
}

/// Reads τ without validating it.
pub fn parse_family_table(text: &str) -> Result<FuzzyFamily> {
    let f: SpaceFile = serde_json::from_str(text)?;
    let carrier = Carrier::new(f.points)?.shared();
    fill(carrier, &f.tau, true)
}

/// Reads and validates a space.
pub fn parse_space(text: &str) -> Result<FuzzySpace> {
    FuzzySpace::new(parse_family_table(text)?)
}

/// Reads a family on an existing carrier. Omitted sets, ∅ and X included, get 0.
pub fn parse_family(text: &str, carrier: &Arc<Carrier>) -> Result<FuzzyFamily> {
    let f: FamilyFile = serde_json::from_str(text)?;
    if let Some(points) = &f.points {
        if points.as_slice() != carrier.labels() {
            return Err(Error::CarrierMismatch);
        }
    }
    fill(carrier.clone(), &f.family, false)
}

pub fn parse_map(text: &str, domain: &Arc<Carrier>, codomain: &Arc<Carrier>) -> Result<PointMap> {
    let f: MapFile = serde_json::from_str(text)?;
    PointMap::from_labels(domain.clone(), codomain.clone(), f.map)
}

/// Parses a subset written as a JSON array (`["a","c"]`) or a brace list (`{a,c}`).
pub fn parse_subset(text: &str, carrier: &Carrier) -> Result<SubsetId> {
    let t = text.trim();
    let labels: Vec<String> = if t.starts_with('[') {
        serde_json::from_str(t)?
    } else {
        let inner = t
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .unwrap_or(t);
        inner
            .split(',')
            .map(|s| s.trim().trim_matches('"').to_string())
            .filter(|s| !s.is_empty())
            .collect()
    };
    carrier.subset(&labels)
}

/// Non-zero entries of a family, in subset order, with ∅ and X always listed.
pub fn family_entries(f: &FuzzyFamily) -> Vec<Entry> {
    let c = f.carrier();
    let full = c.full();
    f.iter()
        .filter(|(s, d)| !d.is_zero() || s.is_empty() || *s == full)
        .map(|(s, d)| Entry {
            set: c.subset_labels(s),
            degree: d,
        })
        .collect()
}

pub fn space_file(tau: &FuzzyFamily) -> SpaceFile {
    SpaceFile {
        points: tau.carrier().labels().to_vec(),
        tau: family_entries(tau),
    }
}

pub fn space_to_json(tau: &FuzzyFamily) -> String {
    serde_json::to_string_pretty(&space_file(tau)).expect("space serializes")
}
