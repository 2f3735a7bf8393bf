use crate::numeric::Rational;

use super::cantor::GapFrontier;
use super::{CantorSet, CountableEnumeration, SetDescription, SetError};

/// A closed nowhere-dense set with exactly computable complement: finitely
/// many points, optionally together with the Cantor set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NowhereDense {
    points: Vec<Rational>,
    cantor: bool,
}

impl NowhereDense {
    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn includes_cantor(&self) -> bool {
        self.cantor
    }

    fn absorb(&mut self, set: &SetDescription) -> Result<(), SetError> {
        match set {
            SetDescription::Cantor => self.cantor = true,
            SetDescription::Finite(u) | SetDescription::Intervals(u) => {
                for c in u.components() {
                    if !c.is_degenerate() {
                        return Err(SetError::NotNowhereDense {
                            reason: format!("component {c} has interior"),
                        });
                    }
                    self.points.push(c.lo.clone());
                }
            }
            SetDescription::Countable(CountableEnumeration::Explicit(points)) => {
                self.points.extend(points.iter().cloned());
            }
            SetDescription::Countable(e) => {
                return Err(SetError::NotNowhereDense {
                    reason: format!("the {} enumeration is dense in [0, 1]", e.name()),
                })
            }
            SetDescription::Union(parts) => {
                for part in parts {
                    self.absorb(part)?;
                }
            }
        }
        Ok(())
    }

    /// True if the closed interval `[lo, hi]` meets the set.
    pub fn meets_closed(&self, lo: &Rational, hi: &Rational) -> bool {
        self.points.iter().any(|p| lo <= p && p <= hi) || (self.cantor && CantorSet.meets_closed(lo, hi))
    }

    /// The longest component of `(lo, hi)` minus the set, leftmost on ties.
    pub fn largest_gap(&self, lo: &Rational, hi: &Rational) -> Option<(Rational, Rational)> {
        if lo >= hi {
            return None;
        }
        let mut best: Option<(Rational, Rational)> = None;
        if !self.cantor {
            self.split(lo, hi).into_iter().for_each(|p| keep_longest(&mut best, p));
            return best;
        }
        // Gaps of depth d have length 3^-d; once the best piece beats every
        // deeper gap the search can stop.
        let mut frontier = GapFrontier::new(lo, hi);
        while !frontier.is_exhausted() {
            for (gl, gh) in frontier.gaps() {
                let (cl, ch) = (gl.max(lo.clone()), gh.min(hi.clone()));
                if cl < ch {
                    self.split(&cl, &ch).into_iter().for_each(|p| keep_longest(&mut best, p));
                }
            }
            let deeper = Rational::inv_pow3(frontier.gap_depth() + 1);
            if best.as_ref().is_some_and(|(bl, bh)| &(bh - bl) > &deeper) {
                break;
            }
            frontier.descend();
        }
        best
    }

    /// Pieces of `(lo, hi)` left after removing the finite point set.
    fn split(&self, lo: &Rational, hi: &Rational) -> Vec<(Rational, Rational)> {
        let mut cuts: Vec<&Rational> = self.points.iter().filter(|p| lo < *p && *p < hi).collect();
        cuts.sort();
        cuts.dedup();
        let mut pieces = Vec::with_capacity(cuts.len() + 1);
        let mut start = lo.clone();
        for cut in cuts {
            pieces.push((start, cut.clone()));
            start = cut.clone();
        }
        pieces.push((start, hi.clone()));
        pieces
    }
}

/// Keeps the longer piece, or the left one when lengths tie.
fn keep_longest(best: &mut Option<(Rational, Rational)>, piece: (Rational, Rational)) {
    let better = match best.as_ref() {
        None => true,
        Some((bl, bh)) => {
            let (len, best_len) = (&piece.1 - &piece.0, bh - bl);
            len > best_len || (len == best_len && piece.0 < *bl)
        }
    };
    if better {
        *best = Some(piece);
    }
}

impl TryFrom<&SetDescription> for NowhereDense {
    type Error = SetError;

    fn try_from(set: &SetDescription) -> Result<Self, SetError> {
        let mut out = NowhereDense::default();
        out.absorb(set)?;
        out.points.sort();
        out.points.dedup();
        Ok(out)
    }
}
