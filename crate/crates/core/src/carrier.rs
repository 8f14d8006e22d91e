//! Finite carriers and bitmask subsets.
//!
//! A subset is a word with bit `i` set when point `i` belongs to it, so point 0 is
//! the least significant bit. Enumeration is in numeric order of that word: the
//! empty set comes first and the whole carrier last.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard ceiling imposed by the `u32` representation.
pub const MAX_BITS: usize = 24;
/// Default cap for operations that stream subsets or subset pairs.
pub const DEFAULT_SUBSET_CAP: usize = 12;
/// Cap for operations that quantify over whole fuzzy families.
pub const FAMILY_CAP: usize = 5;

/// Subset-stream cap, overridable through `FUZZITOP_MAX_POINTS`.
pub fn subset_cap() -> usize {
    std::env::var("FUZZITOP_MAX_POINTS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map(|v| v.min(MAX_BITS))
        .unwrap_or(DEFAULT_SUBSET_CAP)
}

pub fn ensure_cap(op: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { op, n, cap })
    } else {
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct SubsetId(pub u32);

impl SubsetId {
    pub const EMPTY: SubsetId = SubsetId(0);

    pub fn singleton(i: usize) -> Self {
        SubsetId(1 << i)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, o: SubsetId) -> SubsetId {
        SubsetId(self.0 | o.0)
    }

    pub fn intersect(self, o: SubsetId) -> SubsetId {
        SubsetId(self.0 & o.0)
    }

    pub fn minus(self, o: SubsetId) -> SubsetId {
        SubsetId(self.0 & !o.0)
    }

    pub fn is_subset(self, o: SubsetId) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_disjoint(self, o: SubsetId) -> bool {
        self.0 & o.0 == 0
    }

    pub fn with(self, i: usize) -> SubsetId {
        SubsetId(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> SubsetId {
        SubsetId(self.0 & !(1 << i))
    }

    /// Member indices in ascending order.
    pub fn points(self) -> impl Iterator<Item = usize> {
        let mut w = self.0;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let i = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, ascending, including `∅` and `self`.
    pub fn submasks(self) -> impl Iterator<Item = SubsetId> {
        let m = self.0;
        let mut cur: Option<u32> = Some(0);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == m {
                None
            } else {
                Some((c.wrapping_sub(m)) & m)
            };
            Some(SubsetId(c))
        })
    }

    /// Keeps the bits of `self` that lie in `within`, renumbered densely.
    pub fn compress(self, within: SubsetId) -> SubsetId {
        let mut out = 0u32;
        for (k, i) in within.points().enumerate() {
            if self.contains(i) {
                out |= 1 << k;
            }
        }
        SubsetId(out)
    }

    /// Inverse of [`SubsetId::compress`].
    pub fn expand(self, within: SubsetId) -> SubsetId {
        let mut out = 0u32;
        for (k, i) in within.points().enumerate() {
            if self.contains(k) {
                out |= 1 << i;
            }
        }
        SubsetId(out)
    }
}

impl fmt::Debug for SubsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{:b}", self.0)
    }
}

/// An ordered list of distinct point labels.
#[derive(Clone, PartialEq, Eq)]
pub struct Carrier {
    points: Vec<String>,
    index: HashMap<String, usize>,
}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.points).finish()
    }
}

impl Carrier {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let points: Vec<String> = labels.into_iter().map(Into::into).collect();
        ensure_cap("carrier", points.len(), MAX_BITS)?;
        let mut index = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(p.clone()));
            }
        }
        Ok(Carrier { points, index })
    }

    /// Carrier with labels `a`, `b`, … (then `p26`, `p27`, …).
    pub fn letters(n: usize) -> Result<Self> {
        Carrier::new((0..n).map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("p{i}")
            }
        }))
    }

    pub fn shared(self) -> Arc<Carrier> {
        Arc::new(self)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.points
    }

    pub fn label(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn point(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    pub fn full(&self) -> SubsetId {
        SubsetId(((1u64 << self.len()) - 1) as u32)
    }

    /// Number of subsets, `2^n`.
    pub fn powerset_len(&self) -> usize {
        1 << self.len()
    }

    pub fn subset<S: AsRef<str>>(&self, labels: impl IntoIterator<Item = S>) -> Result<SubsetId> {
        let mut m = SubsetId::EMPTY;
        for l in labels {
            m = m.with(self.point(l.as_ref())?);
        }
        Ok(m)
    }

    pub fn subset_labels(&self, a: SubsetId) -> Vec<String> {
        a.points().map(|i| self.points[i].clone()).collect()
    }

    /// Renders a subset as `{a,c}`.
    pub fn show(&self, a: SubsetId) -> String {
        format!("{{{}}}", self.subset_labels(a).join(","))
    }

    pub fn check(&self, a: SubsetId) -> Result<SubsetId> {
        if a.is_subset(self.full()) {
            Ok(a)
        } else {
            Err(Error::CarrierMismatch)
        }
    }

    pub fn complement(&self, a: SubsetId) -> Result<SubsetId> {
        Ok(self.full().minus(self.check(a)?))
    }

    pub fn intersect(&self, a: SubsetId, b: SubsetId) -> Result<SubsetId> {
        Ok(self.check(a)?.intersect(self.check(b)?))
    }

    pub fn union(&self, a: SubsetId, b: SubsetId) -> Result<SubsetId> {
        Ok(self.check(a)?.union(self.check(b)?))
    }

    pub fn difference(&self, a: SubsetId, b: SubsetId) -> Result<SubsetId> {
        Ok(self.check(a)?.minus(self.check(b)?))
    }

    pub fn is_subset(&self, a: SubsetId, b: SubsetId) -> Result<bool> {
        Ok(self.check(a)?.is_subset(self.check(b)?))
    }

    pub fn member(&self, i: usize, a: SubsetId) -> Result<bool> {
        if i >= self.len() {
            return Err(Error::CarrierMismatch);
        }
        Ok(self.check(a)?.contains(i))
    }

    /// Every subset once, in numeric order.
    pub fn subsets(&self) -> impl Iterator<Item = SubsetId> {
        (0..self.powerset_len() as u32).map(SubsetId)
    }

    /// Capped variant of [`Carrier::subsets`].
    pub fn subsets_checked(&self) -> Result<impl Iterator<Item = SubsetId>> {
        ensure_cap("subset enumeration", self.len(), subset_cap())?;
        Ok(self.subsets())
    }

    /// All ordered pairs `(A,B)` with `A∩B=∅`; there are `3^n` of them.
    pub fn disjoint_pairs(&self) -> impl Iterator<Item = (SubsetId, SubsetId)> + '_ {
        let full = self.full();
        self.subsets()
            .flat_map(move |a| full.minus(a).submasks().map(move |b| (a, b)))
    }

    /// Sub-carrier holding the points of `a` in their original order.
    pub fn restrict(&self, a: SubsetId) -> Result<Carrier> {
        Carrier::new(self.subset_labels(self.check(a)?))
    }
}
