//! The middle-third Cantor set `C = C/3 ∪ (2/3 + C/3)`.
//!
//! All oracles here are exact for rational arguments. The nearest-point
//! queries unfold the self-similarity `x ↦ 3x` / `x ↦ 3x - 2` until the
//! orbit either lands in the first removed gap or revisits a state; a
//! rational orbit always does one of the two.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numeric::Rational;

use super::intervals::{IntervalUnion, Segment};
use super::{PointClass, SetError};

/// Largest depth accepted by [`cantor_cover`] (`2^20` segments).
pub const MAX_COVER_DEPTH: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CantorSet;

/// Which endpoint of a removed gap a search returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum GapEnd {
    Left,
    Right,
}

impl CantorSet {
    /// True iff some base-3 expansion of `q` avoids the digit 1.
    ///
    /// Walks the orbit of `q` under `x ↦ 3x` on `[0, 1/3]` and `x ↦ 3x - 2`
    /// on `[2/3, 1]`. Landing in the open middle third means a forced digit 1;
    /// a repeated point means the orbit never does. Points outside `C` exit at
    /// the depth of their gap, unlike a full expansion whose period can be
    /// exponential in the size of the denominator.
    pub fn contains(&self, q: &Rational) -> bool {
        if !q.in_unit_interval() {
            return false;
        }
        let mut orbit = Orbit::new(q);
        let mut seen = HashSet::new();
        loop {
            if orbit.in_open_middle() {
                return false;
            }
            if !seen.insert(orbit.p.clone()) {
                return true;
            }
            orbit.step();
        }
    }

    /// `inf(C ∩ (x, 1])`, defined for `x < 1`. Equals `x` exactly when `x`
    /// is approachable from the right.
    pub fn next_above(&self, x: &Rational) -> Option<Rational> {
        if *x >= Rational::one() {
            return None;
        }
        if x.is_negative() {
            return Some(Rational::zero());
        }
        // Along the orbit f(x0) = (offset + f(x)) / 3^k, with offset an
        // integer; the map to [0, 1] is kept exact by deferring division.
        let mut offset = BigInt::zero();
        let mut k = 0u32;
        let mut orbit = Orbit::new(x);
        let mut seen: HashMap<BigInt, (BigInt, u32)> = HashMap::new();
        loop {
            if orbit.in_half_open_middle() {
                let numer = &offset * 3u8 + 2u8;
                return Some(Rational::from_big(numer, BigInt::from(3u8).pow(k + 1)));
            }
            if let Some((o0, k0)) = seen.get(&orbit.p) {
                // (o0 + f) / 3^k0 = (offset + f) / 3^k with k > k0, so
                // f = (offset - o0 3^(k-k0)) / (3^(k-k0) - 1).
                let lift = BigInt::from(3u8).pow(k - k0);
                let fixed = Rational::from_big(&offset - o0 * &lift, &lift - 1u8);
                let base = Rational::from_big(o0.clone(), BigInt::one());
                return Some(&(&base + &fixed) / &Rational::from_big(BigInt::from(3u8).pow(*k0), BigInt::one()));
            }
            seen.insert(orbit.p.clone(), (offset.clone(), k));
            offset = if orbit.in_left_third() { &offset * 3u8 } else { &offset * 3u8 + 2u8 };
            orbit.step();
            k += 1;
        }
    }

    /// `sup(C ∩ [0, x))`, defined for `x > 0`, by the symmetry `x ↦ 1 - x`.
    pub fn prev_below(&self, x: &Rational) -> Option<Rational> {
        let mirrored = &Rational::one() - x;
        self.next_above(&mirrored).map(|m| &Rational::one() - &m)
    }

    pub fn inf_in_interval(&self, x: &Rational, z: &Rational) -> Option<Rational> {
        self.next_above(x).filter(|s| s < z)
    }

    pub fn classify(&self, q: &Rational) -> PointClass {
        let right = self.next_above(q).is_some_and(|s| s == *q);
        let left = q.is_positive() && self.prev_below(q).is_some_and(|s| s == *q);
        PointClass::exact(self.contains(q), right, left)
    }

    /// Right endpoint of the shallowest removed gap whose endpoint lies in
    /// `(a, b)`; the leftmost one on ties.
    pub fn right_select(&self, a: &Rational, b: &Rational) -> Option<Rational> {
        shallowest_gap_end(a, b, GapEnd::Right)
    }

    /// Left endpoint of the shallowest removed gap with that endpoint in
    /// `(a, b)`. Such points are in the set but only approachable from the
    /// left.
    pub fn point_in(&self, a: &Rational, b: &Rational) -> Option<Rational> {
        shallowest_gap_end(a, b, GapEnd::Left)
    }

    /// True if the closed interval `[lo, hi]` meets `C`.
    pub fn meets_closed(&self, lo: &Rational, hi: &Rational) -> bool {
        if lo > hi {
            return false;
        }
        self.contains(lo) || self.next_above(lo).is_some_and(|s| s <= *hi)
    }
}

/// A point `p / q` of `[0, 1]` under the Cantor map, with `q` held fixed so
/// each step is integer arithmetic with no reduction.
struct Orbit {
    p: BigInt,
    q: BigInt,
}

impl Orbit {
    fn new(x: &Rational) -> Self {
        Orbit {
            p: x.numer().clone(),
            q: x.denom().clone(),
        }
    }

    fn in_left_third(&self) -> bool {
        &self.p * 3u8 <= self.q
    }

    fn in_open_middle(&self) -> bool {
        let t = &self.p * 3u8;
        t > self.q && t < &self.q * 2u8
    }

    /// `[1/3, 2/3)`.
    fn in_half_open_middle(&self) -> bool {
        let t = &self.p * 3u8;
        t >= self.q && t < &self.q * 2u8
    }

    fn step(&mut self) {
        self.p = if self.in_left_third() {
            &self.p * 3u8
        } else {
            &self.p * 3u8 - &self.q * 2u8
        };
    }
}

/// The depth-by-depth frontier of cover cells meeting `(a, b)`.
///
/// A cell at depth `k` is `[n, n + 1] / 3^k`, stored as `n`; comparisons
/// against `a` and `b` cross-multiply. At any depth where no gap qualifies,
/// every surviving cell straddles `a` or `b`, so the frontier never holds
/// more than a handful of cells.
pub(crate) struct GapFrontier {
    a: (BigInt, BigInt),
    b: (BigInt, BigInt),
    cells: Vec<BigInt>,
    depth: u32,
    pow: BigInt,
}

/// `p / 3^k` strictly between `lo = (n, d)` and `hi`.
fn strictly_between(p: &BigInt, pow: &BigInt, lo: &(BigInt, BigInt), hi: &(BigInt, BigInt)) -> bool {
    p * &lo.1 > &lo.0 * pow && p * &hi.1 < &hi.0 * pow
}

impl GapFrontier {
    pub(crate) fn new(a: &Rational, b: &Rational) -> Self {
        let mut frontier = GapFrontier {
            a: (a.numer().clone(), a.denom().clone()),
            b: (b.numer().clone(), b.denom().clone()),
            cells: vec![BigInt::zero()],
            depth: 0,
            pow: BigInt::one(),
        };
        frontier.retain_meeting();
        frontier
    }

    /// Depth of the gaps carried by the current cells.
    pub(crate) fn gap_depth(&self) -> u32 {
        self.depth + 1
    }

    pub(crate) fn is_exhausted(&self) -> bool {
        self.cells.is_empty()
    }

    /// The open middle thirds of the current cells, left to right.
    pub(crate) fn gaps(&self) -> Vec<(Rational, Rational)> {
        let denom = &self.pow * 3u8;
        self.cells
            .iter()
            .map(|n| {
                let lo = n * 3u8 + 1u8;
                let hi = &lo + 1u8;
                (Rational::from_big(lo, denom.clone()), Rational::from_big(hi, denom.clone()))
            })
            .collect()
    }

    /// The leftmost gap endpoint of the current depth inside `(a, b)`.
    fn endpoint_inside(&self, end: GapEnd) -> Option<Rational> {
        let denom = &self.pow * 3u8;
        self.cells.iter().find_map(|n| {
            let point = n * 3u8
                + match end {
                    GapEnd::Left => 1u8,
                    GapEnd::Right => 2u8,
                };
            strictly_between(&point, &denom, &self.a, &self.b).then(|| Rational::from_big(point, denom.clone()))
        })
    }

    fn retain_meeting(&mut self) {
        let (a, b, pow) = (&self.a, &self.b, &self.pow);
        let (a_scaled, b_scaled) = (&a.0 * pow, &b.0 * pow);
        self.cells
            .retain(|n| n * &b.1 < b_scaled && (n + 1u8) * &a.1 > a_scaled);
    }

    pub(crate) fn descend(&mut self) {
        self.cells = self
            .cells
            .iter()
            .flat_map(|n| {
                let left = n * 3u8;
                let right = &left + 2u8;
                [left, right]
            })
            .collect();
        self.pow *= 3u8;
        self.depth += 1;
        self.retain_meeting();
    }
}

pub(crate) fn shallowest_gap_end(a: &Rational, b: &Rational, end: GapEnd) -> Option<Rational> {
    if a >= b {
        return None;
    }
    let mut frontier = GapFrontier::new(a, b);
    while !frontier.is_exhausted() {
        if let Some(hit) = frontier.endpoint_inside(end) {
            return Some(hit);
        }
        frontier.descend();
    }
    None
}

/// The depth-`k` middle-thirds cover `C_k`: `2^k` closed segments of width
/// `3^-k`.
pub fn cantor_cover(k: u32) -> Result<IntervalUnion, SetError> {
    if k > MAX_COVER_DEPTH {
        return Err(SetError::DepthCap {
            requested: k,
            max: MAX_COVER_DEPTH,
        });
    }
    // Left endpoints as numerators over 3^k.
    let mut starts: Vec<u64> = vec![0];
    for _ in 0..k {
        starts = starts.iter().flat_map(|&n| [3 * n, 3 * n + 2]).collect();
    }
    let denom = BigInt::from(3u8).pow(k);
    let segments = starts
        .into_iter()
        .map(|n| Segment {
            lo: Rational::from_big(BigInt::from(n), denom.clone()),
            hi: Rational::from_big(BigInt::from(n) + BigInt::one(), denom.clone()),
        })
        .collect();
    Ok(IntervalUnion::from_sorted_unchecked(segments))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn membership_examples() {
        let c = CantorSet;
        assert!(c.contains(&r("1/4")));
        assert!(!c.contains(&r("1/2")));
        assert!(c.contains(&r("1/3")));
        assert!(c.contains(&r("0")));
        assert!(c.contains(&r("1")));
        assert!(c.contains(&r("3/4")));
        assert!(!c.contains(&r("5/9")));
        assert!(!c.contains(&r("4/3")));
    }

    #[test]
    fn next_above_values() {
        let c = CantorSet;
        assert_eq!(c.next_above(&r("0")), Some(r("0")));
        assert_eq!(c.next_above(&r("1/3")), Some(r("2/3")));
        assert_eq!(c.next_above(&r("1/2")), Some(r("2/3")));
        assert_eq!(c.next_above(&r("2/3")), Some(r("2/3")));
        assert_eq!(c.next_above(&r("1/9")), Some(r("2/9")));
        assert_eq!(c.next_above(&r("1/4")), Some(r("1/4")));
        assert_eq!(c.next_above(&r("1")), None);
    }

    #[test]
    fn inf_in_interval_examples() {
        let c = CantorSet;
        assert_eq!(c.inf_in_interval(&r("1/3"), &r("1")), Some(r("2/3")));
        assert_eq!(c.inf_in_interval(&r("0"), &r("1")), Some(r("0")));
        assert_eq!(c.inf_in_interval(&r("1/3"), &r("2/3")), None);
    }

    #[test]
    fn classify_examples() {
        let c = CantorSet;
        let third = c.classify(&r("1/3"));
        assert_eq!(
            (third.in_set, third.right_approachable, third.left_approachable),
            (true, Some(false), Some(true))
        );
        let two_thirds = c.classify(&r("2/3"));
        assert_eq!(
            (two_thirds.in_set, two_thirds.right_approachable, two_thirds.left_approachable),
            (true, Some(true), Some(false))
        );
        let half = c.classify(&r("1/2"));
        assert_eq!(
            (half.in_set, half.right_approachable, half.left_approachable),
            (false, Some(false), Some(false))
        );
        let quarter = c.classify(&r("1/4"));
        assert_eq!((quarter.right_approachable, quarter.left_approachable), (Some(true), Some(true)));
        let zero = c.classify(&r("0"));
        assert_eq!((zero.right_approachable, zero.left_approachable), (Some(true), Some(false)));
        let one = c.classify(&r("1"));
        assert_eq!((one.right_approachable, one.left_approachable), (Some(false), Some(true)));
    }

    #[test]
    fn gap_selection() {
        let c = CantorSet;
        assert_eq!(c.right_select(&r("0"), &r("1")), Some(r("2/3")));
        assert_eq!(c.point_in(&r("0"), &r("1")), Some(r("1/3")));
        assert_eq!(c.right_select(&r("2/3"), &r("5/6")), Some(r("20/27")));
        assert_eq!(c.right_select(&r("1/3"), &r("2/3")), None);
        assert_eq!(c.right_select(&r("0"), &r("1/3")), Some(r("2/9")));
    }

    #[test]
    fn covers() {
        assert_eq!(cantor_cover(0).unwrap(), IntervalUnion::unit());
        let one = cantor_cover(1).unwrap();
        assert_eq!(one.components().len(), 2);
        assert_eq!(one.components()[1].lo, r("2/3"));
        let two = cantor_cover(2).unwrap();
        let ends: Vec<String> = two
            .components()
            .iter()
            .map(|s| format!("{}-{}", s.lo, s.hi))
            .collect();
        assert_eq!(ends, ["0-1/9", "2/9-1/3", "2/3-7/9", "8/9-1"]);
        assert!(matches!(cantor_cover(21), Err(SetError::DepthCap { .. })));
    }

    #[test]
    fn closed_interval_meeting() {
        let c = CantorSet;
        assert!(!c.meets_closed(&r("5/12"), &r("7/12")));
        assert!(c.meets_closed(&r("1/2"), &r("2/3")));
        assert!(c.meets_closed(&r("1/3"), &r("1/2")));
    }
}
