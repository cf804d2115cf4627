use std::fmt;

use serde::{Deserialize, Serialize};

use crate::interval::{Interval, IntervalSet};
use crate::rat::Rat;

use super::MapError;

/// The underlying one-dimensional space `[0, length]`, optionally with the
/// endpoints identified (`0 ∼ length`).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpace")]
pub struct Space {
    length: Rat,
    circle: bool,
}

#[derive(Deserialize)]
struct RawSpace {
    length: Rat,
    circle: bool,
}

impl TryFrom<RawSpace> for Space {
    type Error = MapError;
    fn try_from(raw: RawSpace) -> Result<Space, MapError> {
        Space::new(raw.length, raw.circle)
    }
}

impl Space {
    pub fn new(length: Rat, circle: bool) -> Result<Space, MapError> {
        if !length.is_positive() {
            return Err(MapError::BadSpace(length));
        }
        Ok(Space { length, circle })
    }

    pub fn unit_circle() -> Space {
        Space {
            length: Rat::one(),
            circle: true,
        }
    }

    pub fn length(&self) -> &Rat {
        &self.length
    }

    pub fn is_circle(&self) -> bool {
        self.circle
    }

    pub fn whole(&self) -> Interval {
        Interval::new(Rat::zero(), self.length.clone()).expect("length > 0")
    }

    /// Largest digit used by the `disc` encoding of points of this space.
    pub fn bit_max(&self) -> u8 {
        let c = self.length.ceil_int();
        u8::try_from(c).expect("space length too large for a digit alphabet")
    }

    /// Canonical representative: on a circle, reduces into `[0, length)`.
    pub fn normalize(&self, x: &Rat) -> Rat {
        if self.circle {
            x.rem_euclid(&self.length)
        } else {
            x.clone()
        }
    }

    /// The `∼` relation: equality, plus `0 ∼ length` on a circle.
    pub fn equiv(&self, x: &Rat, y: &Rat) -> bool {
        x == y || (self.circle && self.normalize(x) == self.normalize(y))
    }
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.circle { "circle" } else { "interval" };
        write!(f, "[0, {}] {kind}", self.length)
    }
}

/// `x ↦ slope·x + offset` on a closed domain.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffinePiece {
    pub dom: Interval,
    #[serde(rename = "a")]
    pub slope: Rat,
    #[serde(rename = "b")]
    pub offset: Rat,
}

impl AffinePiece {
    pub fn new(dom: Interval, slope: Rat, offset: Rat) -> AffinePiece {
        AffinePiece { dom, slope, offset }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        &self.slope * x + &self.offset
    }

    pub fn image(&self) -> Interval {
        self.dom.image(&self.slope, &self.offset)
    }

    fn same_formula(&self, other: &AffinePiece) -> bool {
        self.slope == other.slope && self.offset == other.offset
    }

    fn point(x: Rat, value: Rat) -> AffinePiece {
        let offset = &value - &x;
        AffinePiece {
            dom: Interval::point(x),
            slope: Rat::one(),
            offset,
        }
    }
}

impl fmt::Debug for AffinePiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ↦ {}x + {}", self.dom, self.slope, self.offset)
    }
}

/// A partial piecewise affine map on a [`Space`], always held in canonical form.
///
/// Canonical form: interval pieces sorted, interiors disjoint, maximal (adjacent
/// pieces with the same formula are merged); isolated points are kept only when
/// no interval piece covers them, with their value normalized on circles.
/// Two maps are equal as functions exactly when their canonical forms are equal.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMap")]
pub struct PAMap {
    space: Space,
    pieces: Vec<AffinePiece>,
}

#[derive(Deserialize)]
struct RawMap {
    space: Space,
    pieces: Vec<AffinePiece>,
}

impl TryFrom<RawMap> for PAMap {
    type Error = MapError;
    fn try_from(raw: RawMap) -> Result<PAMap, MapError> {
        PAMap::new(raw.space, raw.pieces)
    }
}

impl PAMap {
    /// Validates and canonicalizes.
    pub fn new(space: Space, pieces: Vec<AffinePiece>) -> Result<PAMap, MapError> {
        let pieces = canonicalize(&space, pieces)?;
        Ok(PAMap { space, pieces })
    }

    pub fn identity(space: &Space) -> PAMap {
        PAMap {
            space: space.clone(),
            pieces: vec![AffinePiece::new(space.whole(), Rat::one(), Rat::zero())],
        }
    }

    pub fn empty(space: &Space) -> PAMap {
        PAMap {
            space: space.clone(),
            pieces: Vec::new(),
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn domain(&self) -> IntervalSet {
        IntervalSet::from_intervals(self.pieces.iter().map(|p| p.dom.clone()))
    }

    pub fn range(&self) -> IntervalSet {
        IntervalSet::from_intervals(self.pieces.iter().map(AffinePiece::image))
    }

    /// Whether the domain is the whole space.
    pub fn is_total(&self) -> bool {
        self.domain().parts() == [self.space.whole()]
    }

    /// Pieces whose closed domain contains `x` (two of them at a shared breakpoint).
    fn pieces_at<'a>(&'a self, x: &'a Rat) -> impl Iterator<Item = &'a AffinePiece> + 'a {
        let m = self.space.length();
        let seam = self.space.is_circle() && x.is_zero();
        self.pieces
            .iter()
            .filter(move |p| p.dom.contains(x) || (seam && p.dom.contains(m)))
    }

    pub fn defined_at(&self, x: &Rat) -> bool {
        let x = self.space.normalize(x);
        let found = self.pieces_at(&x).next().is_some();
        found
    }

    /// Evaluates the map. On a circle both the argument and the result are
    /// normalized into `[0, length)`.
    pub fn apply(&self, x: &Rat) -> Result<Rat, MapError> {
        let x = self.space.normalize(x);
        let piece = self
            .pieces_at(&x)
            .next()
            .ok_or_else(|| MapError::OutOfDomain(x.clone()))?;
        let value = if piece.dom.contains(&x) {
            piece.eval(&x)
        } else {
            piece.eval(self.space.length())
        };
        Ok(self.space.normalize(&value))
    }

    /// `self ∘ inner`: defined on `{x ∈ dom(inner) : inner(x) ∈ dom(self)}`.
    pub fn compose(&self, inner: &PAMap) -> Result<PAMap, MapError> {
        if self.space != inner.space {
            return Err(MapError::SpaceMismatch);
        }
        let m = self.space.length();
        let shifts: Vec<Rat> = if self.space.is_circle() {
            vec![-m.clone(), Rat::zero(), m.clone()]
        } else {
            vec![Rat::zero()]
        };
        let mut out = Vec::new();
        for p in &inner.pieces {
            for q in &self.pieces {
                for s in &shifts {
                    // x ∈ p.dom with p(x) + s ∈ q.dom
                    let shifted = &p.offset + s;
                    if p.slope.is_zero() {
                        if q.dom.contains(&shifted) {
                            out.push(AffinePiece::new(
                                p.dom.clone(),
                                Rat::zero(),
                                q.eval(&shifted),
                            ));
                        }
                        continue;
                    }
                    let pre = q.dom.preimage(&p.slope, &shifted);
                    if let Some(dom) = pre.intersect(&p.dom) {
                        let slope = &q.slope * &p.slope;
                        let offset = &q.slope * &shifted + &q.offset;
                        out.push(AffinePiece::new(dom, slope, offset));
                    }
                }
            }
        }
        PAMap::new(self.space.clone(), out)
    }

    /// Exact inverse, defined on the range.
    pub fn invert(&self) -> Result<PAMap, MapError> {
        let mut out = Vec::with_capacity(self.pieces.len());
        for p in &self.pieces {
            if p.dom.is_point() {
                let v = p.eval(p.dom.lo());
                out.push(AffinePiece::point(v, p.dom.lo().clone()));
                continue;
            }
            if p.slope.is_zero() {
                return Err(MapError::ZeroSlope);
            }
            let slope = p.slope.recip();
            let offset = -(&p.offset / &p.slope);
            out.push(AffinePiece::new(p.image(), slope, offset));
        }
        PAMap::new(self.space.clone(), out).map_err(|e| match e {
            MapError::Overlap { .. } | MapError::Conflict { .. } => MapError::NotInjective,
            other => other,
        })
    }

    /// The partial map defined on `dom(self) ∪ dom(other)`.
    pub fn union(&self, other: &PAMap) -> Result<PAMap, MapError> {
        if self.space != other.space {
            return Err(MapError::SpaceMismatch);
        }
        let pieces = self.pieces.iter().chain(&other.pieces).cloned().collect();
        PAMap::new(self.space.clone(), pieces).map_err(|e| match e {
            MapError::Overlap { at } => MapError::Conflict { at },
            other => other,
        })
    }

    /// Equality as partial functions (canonical forms compared).
    pub fn equals(&self, other: &PAMap) -> bool {
        self == other
    }

    /// Total, boundary-consistent bijection of the circle.
    pub fn is_circle_homeo(&self) -> bool {
        if !self.space.is_circle() || !self.is_total() {
            return false;
        }
        if self
            .pieces
            .iter()
            .any(|p| !p.dom.is_point() && p.slope.is_zero())
        {
            return false;
        }
        match self.invert() {
            Ok(inv) => inv.is_total(),
            Err(_) => false,
        }
    }

    /// Solution set of `f(x) ∼ x`: whole intervals where the map is a
    /// translation by a multiple of the length, isolated points elsewhere.
    pub fn fixed_points(&self) -> IntervalSet {
        let m = self.space.length();
        let shifts: Vec<Rat> = if self.space.is_circle() {
            vec![-m.clone(), Rat::zero(), m.clone()]
        } else {
            vec![Rat::zero()]
        };
        let one = Rat::one();
        let mut found = Vec::new();
        for p in &self.pieces {
            for s in &shifts {
                if p.slope == one {
                    if &p.offset == s {
                        found.push(p.dom.clone());
                    }
                    continue;
                }
                let x = (s - &p.offset) / (&p.slope - &one);
                if p.dom.contains(&x) {
                    found.push(Interval::point(self.space.normalize(&x)));
                }
            }
        }
        IntervalSet::from_intervals(found)
    }

    /// `self` composed with itself `k` times.
    pub fn power(&self, k: usize) -> Result<PAMap, MapError> {
        let mut acc = PAMap::identity(&self.space);
        for _ in 0..k {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// Fixed points of the `k`-th iterate.
    pub fn periodic_points(&self, k: usize) -> Result<IntervalSet, MapError> {
        if k == 0 {
            return Err(MapError::ZeroPeriod);
        }
        Ok(self.power(k)?.fixed_points())
    }
}

impl fmt::Debug for PAMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PAMap")
            .field("space", &self.space)
            .field("pieces", &self.pieces)
            .finish()
    }
}

fn canonicalize(space: &Space, pieces: Vec<AffinePiece>) -> Result<Vec<AffinePiece>, MapError> {
    let whole = space.whole();
    let mut intervals = Vec::new();
    let mut points: Vec<(Rat, Rat)> = Vec::new();
    for p in pieces {
        if !whole.contains_interval(&p.dom) || !whole.contains_interval(&p.image()) {
            return Err(MapError::OutOfSpace(format!("{p:?}")));
        }
        if p.dom.is_point() {
            let x = p.dom.lo().clone();
            let v = space.normalize(&p.eval(&x));
            points.push((space.normalize(&x), v));
        } else {
            intervals.push(p);
        }
    }

    intervals.sort();
    let mut merged: Vec<AffinePiece> = Vec::with_capacity(intervals.len());
    for p in intervals {
        if let Some(last) = merged.last_mut() {
            if p.dom.lo() <= last.dom.hi() && last.same_formula(&p) {
                if p.dom.hi() > last.dom.hi() {
                    last.dom =
                        Interval::new(last.dom.lo().clone(), p.dom.hi().clone()).expect("sorted");
                }
                continue;
            }
            if p.dom.lo() < last.dom.hi() {
                return Err(MapError::Overlap {
                    at: p.dom.lo().clone(),
                });
            }
            if p.dom.lo() == last.dom.hi() {
                let at = p.dom.lo();
                if !space.equiv(&last.eval(at), &p.eval(at)) {
                    return Err(MapError::Conflict { at: at.clone() });
                }
            }
        }
        merged.push(p);
    }

    if space.is_circle() {
        if let (Some(first), Some(last)) = (merged.first(), merged.last()) {
            let m = space.length();
            if first.dom.lo().is_zero()
                && last.dom.hi() == m
                && !space.equiv(&first.eval(&Rat::zero()), &last.eval(m))
            {
                return Err(MapError::Conflict { at: Rat::zero() });
            }
        }
    }

    points.sort();
    let mut kept: Vec<(Rat, Rat)> = Vec::new();
    for (x, v) in points {
        let seam = space.is_circle() && x.is_zero();
        let mut covered = false;
        for p in &merged {
            let hit = if p.dom.contains(&x) {
                Some(p.eval(&x))
            } else if seam && p.dom.contains(space.length()) {
                Some(p.eval(space.length()))
            } else {
                None
            };
            if let Some(w) = hit {
                if !space.equiv(&w, &v) {
                    return Err(MapError::Conflict { at: x });
                }
                covered = true;
            }
        }
        if covered {
            continue;
        }
        match kept.last() {
            Some((y, w)) if *y == x => {
                if !space.equiv(w, &v) {
                    return Err(MapError::Conflict { at: x });
                }
            }
            _ => kept.push((x, v)),
        }
    }

    merged.extend(kept.into_iter().map(|(x, v)| AffinePiece::point(x, v)));
    merged.sort_by(|a, b| a.dom.cmp(&b.dom));
    Ok(merged)
}
