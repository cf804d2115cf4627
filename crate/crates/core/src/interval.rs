//! Closed rational intervals and finite unions of them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rat::Rat;

/// A closed interval `[lo, hi]`. A point is an interval with `lo == hi`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[Rat; 2]", into = "[Rat; 2]")]
pub struct Interval {
    lo: Rat,
    hi: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("interval endpoints out of order: [{lo}, {hi}]")]
pub struct InvertedInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Interval {
    // the error returns the endpoints it rejected
    #[allow(clippy::result_large_err)]
    pub fn new(lo: Rat, hi: Rat) -> Result<Interval, InvertedInterval> {
        if lo > hi {
            return Err(InvertedInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: Rat) -> Interval {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn length(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_int(2)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// True when the interiors overlap (sharing a single endpoint does not count).
    pub fn interiors_overlap(&self, other: &Interval) -> bool {
        self.lo < other.hi && other.lo < self.hi
    }

    /// Image under `x ↦ slope·x + offset`.
    pub fn image(&self, slope: &Rat, offset: &Rat) -> Interval {
        let a = slope * &self.lo + offset;
        let b = slope * &self.hi + offset;
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    /// Preimage of `self` under `x ↦ slope·x + offset` for nonzero slope.
    pub fn preimage(&self, slope: &Rat, offset: &Rat) -> Interval {
        debug_assert!(!slope.is_zero());
        let a = (&self.lo - offset) / slope;
        let b = (&self.hi - offset) / slope;
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }
}

impl TryFrom<[Rat; 2]> for Interval {
    type Error = InvertedInterval;
    #[allow(clippy::result_large_err)]
    fn try_from([lo, hi]: [Rat; 2]) -> Result<Interval, InvertedInterval> {
        Interval::new(lo, hi)
    }
}

impl From<Interval> for [Rat; 2] {
    fn from(i: Interval) -> [Rat; 2] {
        [i.lo, i.hi]
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{{{}}}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite union of closed intervals, stored sorted with no two members
/// overlapping or touching.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Interval>", into = "Vec<Interval>")]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> IntervalSet {
        IntervalSet { parts: Vec::new() }
    }

    pub fn from_intervals(parts: impl IntoIterator<Item = Interval>) -> IntervalSet {
        let mut parts: Vec<Interval> = parts.into_iter().collect();
        parts.sort();
        let mut out: Vec<Interval> = Vec::with_capacity(parts.len());
        for p in parts {
            match out.last_mut() {
                Some(last) if p.lo <= last.hi => {
                    if p.hi > last.hi {
                        last.hi = p.hi;
                    }
                }
                _ => out.push(p),
            }
        }
        IntervalSet { parts: out }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: &Rat) -> bool {
        // parts are sorted; binary search on lo
        let idx = self.parts.partition_point(|p| &p.lo <= x);
        idx > 0 && self.parts[idx - 1].contains(x)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        IntervalSet::from_intervals(self.parts.iter().chain(other.parts.iter()).cloned())
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let (a, b) = (&self.parts[i], &other.parts[j]);
            if let Some(c) = a.intersect(b) {
                out.push(c);
            }
            if a.hi < b.hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet::from_intervals(out)
    }

    /// Whether every point of `self` lies in `other`.
    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.parts
            .iter()
            .all(|p| other.parts.iter().any(|q| q.contains_interval(p)))
    }

    pub fn endpoints(&self) -> impl Iterator<Item = &Rat> {
        self.parts.iter().flat_map(|p| {
            let hi = (!p.is_point()).then_some(&p.hi);
            std::iter::once(&p.lo).chain(hi)
        })
    }
}

impl From<Vec<Interval>> for IntervalSet {
    fn from(v: Vec<Interval>) -> IntervalSet {
        IntervalSet::from_intervals(v)
    }
}

impl From<IntervalSet> for Vec<Interval> {
    fn from(s: IntervalSet) -> Vec<Interval> {
        s.parts
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
