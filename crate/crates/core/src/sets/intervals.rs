use std::fmt;

use crate::numeric::{midpoint, Rational};

use super::{PointClass, SetError};

/// A closed segment `[lo, hi]` with `lo <= hi`; `lo == hi` is a single point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    pub lo: Rational,
    pub hi: Rational,
}

impl Segment {
    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    /// Closure of `[lo, hi] ∩ (a, b)` as a pair of bounds, when non-empty.
    fn clip_open(&self, a: &Rational, b: &Rational) -> Option<(Rational, Rational)> {
        if self.lo >= *b || self.hi <= *a {
            return None;
        }
        Some((self.lo.clone().max(a.clone()), self.hi.clone().min(b.clone())))
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A finite union of disjoint closed segments in `[0, 1]`, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalUnion {
    components: Vec<Segment>,
}

impl IntervalUnion {
    /// Builds the union of the given segments. Overlapping or touching
    /// segments are merged, so the result is always pairwise disjoint.
    pub fn new(items: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self, SetError> {
        let mut segments = Vec::new();
        for (lo, hi) in items {
            if !lo.in_unit_interval() || !hi.in_unit_interval() {
                return Err(SetError::OutsideUnit {
                    value: if lo.in_unit_interval() { hi } else { lo },
                });
            }
            if lo > hi {
                return Err(SetError::InvertedSegment { lo, hi });
            }
            segments.push(Segment { lo, hi });
        }
        segments.sort_by(|x, y| x.lo.cmp(&y.lo).then(x.hi.cmp(&y.hi)));
        let mut components: Vec<Segment> = Vec::with_capacity(segments.len());
        for seg in segments {
            match components.last_mut() {
                Some(last) if seg.lo <= last.hi => {
                    if seg.hi > last.hi {
                        last.hi = seg.hi;
                    }
                }
                _ => components.push(seg),
            }
        }
        Ok(IntervalUnion { components })
    }

    pub fn unit() -> Self {
        IntervalUnion {
            components: vec![Segment {
                lo: Rational::zero(),
                hi: Rational::one(),
            }],
        }
    }

    pub fn points(points: impl IntoIterator<Item = Rational>) -> Result<Self, SetError> {
        Self::new(points.into_iter().map(|p| (p.clone(), p)))
    }

    pub(crate) fn from_sorted_unchecked(components: Vec<Segment>) -> Self {
        IntervalUnion { components }
    }

    pub fn components(&self) -> &[Segment] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn contains(&self, q: &Rational) -> bool {
        // Components are sorted and disjoint, so a binary search suffices.
        let idx = self.components.partition_point(|c| c.hi < *q);
        self.components.get(idx).is_some_and(|c| c.contains(q))
    }

    pub fn inf(&self) -> Result<Rational, SetError> {
        self.components
            .first()
            .map(|c| c.lo.clone())
            .ok_or(SetError::EmptySet)
    }

    pub fn inf_in_interval(&self, x: &Rational, z: &Rational) -> Option<Rational> {
        self.components
            .iter()
            .find_map(|c| c.clip_open(x, z).map(|(lo, _)| lo))
    }

    pub fn classify(&self, q: &Rational) -> PointClass {
        let right = self.components.iter().any(|c| c.lo <= *q && *q < c.hi);
        let left = self.components.iter().any(|c| c.lo < *q && *q <= c.hi);
        PointClass::exact(self.contains(q), right, left)
    }

    /// Midpoint of the leftmost nondegenerate piece of `S ∩ (a, b)`.
    pub fn right_select(&self, a: &Rational, b: &Rational) -> Option<Rational> {
        self.components.iter().find_map(|c| {
            let (lo, hi) = c.clip_open(a, b)?;
            midpoint(&lo, &hi).ok()
        })
    }

    /// Some point of `S ∩ (a, b)`: the right end of the leftmost component
    /// when it falls inside, otherwise the middle of the clipped piece.
    pub fn point_in(&self, a: &Rational, b: &Rational) -> Option<Rational> {
        self.components.iter().find_map(|c| {
            let (lo, hi) = c.clip_open(a, b)?;
            if c.hi < *b {
                Some(c.hi.clone())
            } else {
                midpoint(&lo, &hi).ok()
            }
        })
    }

    /// Non-empty with no isolated point.
    pub fn is_perfect(&self) -> bool {
        !self.components.is_empty() && self.components.iter().all(|c| !c.is_degenerate())
    }

    /// True if the closed interval `[lo, hi]` meets this (closed) set.
    pub fn meets_closed(&self, lo: &Rational, hi: &Rational) -> bool {
        self.components.iter().any(|c| c.lo <= *hi && c.hi >= *lo)
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "∅");
        }
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
