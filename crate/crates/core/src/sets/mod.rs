//! Computable subsets of `[0, 1]` with exact oracles for membership,
//! infima over open intervals, and one-sided approachability.

mod cantor;
mod countable;
mod document;
mod intervals;
mod nowhere_dense;

pub use cantor::{cantor_cover, CantorSet, MAX_COVER_DEPTH};
pub use countable::{CountableEnumeration, FareyIter};
pub use document::SetDocument;
pub use intervals::{IntervalUnion, Segment};
pub use nowhere_dense::NowhereDense;

use thiserror::Error;

use crate::numeric::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("the set is empty")]
    EmptySet,
    #[error("{value} lies outside [0, 1]")]
    OutsideUnit { value: Rational },
    #[error("segment [{lo}, {hi}] has lo > hi")]
    InvertedSegment { lo: Rational, hi: Rational },
    #[error("empty open interval ({lo}, {hi})")]
    EmptyInterval { lo: Rational, hi: Rational },
    #[error("enumeration indices start at 1")]
    ZeroIndex,
    #[error("cover depth {requested} exceeds the cap of {max}")]
    DepthCap { requested: u32, max: u32 },
    #[error("{what} is not decidable for a set given by an enumeration")]
    Undecidable { what: &'static str },
    #[error("{point} is not approachable from the right")]
    NotRightApproachable { point: Rational },
    #[error("epsilon must be positive, got {epsilon}")]
    NonPositiveEpsilon { epsilon: Rational },
    #[error("not a nowhere-dense presentation: {reason}")]
    NotNowhereDense { reason: String },
    #[error("invalid set document: {0}")]
    Document(String),
}

/// Membership and one-sided approachability of a point. `None` means the
/// flag is not decidable for the set's presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PointClass {
    pub in_set: bool,
    pub right_approachable: Option<bool>,
    pub left_approachable: Option<bool>,
}

impl PointClass {
    pub fn exact(in_set: bool, right: bool, left: bool) -> Self {
        PointClass {
            in_set,
            right_approachable: Some(right),
            left_approachable: Some(left),
        }
    }

    pub fn membership_only(in_set: bool) -> Self {
        PointClass {
            in_set,
            right_approachable: None,
            left_approachable: None,
        }
    }

    /// A limit point is exactly a point approachable from some side.
    pub fn is_limit_point(&self) -> Option<bool> {
        tri_or(self.right_approachable, self.left_approachable)
    }

    fn union(self, other: PointClass) -> PointClass {
        PointClass {
            in_set: self.in_set || other.in_set,
            right_approachable: tri_or(self.right_approachable, other.right_approachable),
            left_approachable: tri_or(self.left_approachable, other.left_approachable),
        }
    }
}

fn tri_or(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(true), _) | (_, Some(true)) => Some(true),
        (Some(false), Some(false)) => Some(false),
        _ => None,
    }
}

/// The points chosen while running the constructive Lemma-2 argument:
/// `x < y < z` in `S ∩ (a, a + ε)` and `γ = inf((x, z) ∩ S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma2Witness {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
    pub gamma: Rational,
}

/// A subset `S` of `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "SetDocument", into = "SetDocument")]
pub enum SetDescription {
    Intervals(IntervalUnion),
    Cantor,
    /// A finite point set, kept as an interval union of points.
    Finite(IntervalUnion),
    Countable(CountableEnumeration),
    Union(Vec<SetDescription>),
}

impl SetDescription {
    pub fn unit() -> Self {
        SetDescription::Intervals(IntervalUnion::unit())
    }

    pub fn intervals(items: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self, SetError> {
        IntervalUnion::new(items).map(SetDescription::Intervals)
    }

    pub fn finite(points: impl IntoIterator<Item = Rational>) -> Result<Self, SetError> {
        IntervalUnion::points(points).map(SetDescription::Finite)
    }

    /// True iff `q ∈ S`. Points outside `[0, 1]` are never members.
    pub fn contains(&self, q: &Rational) -> bool {
        if !q.in_unit_interval() {
            return false;
        }
        match self {
            SetDescription::Intervals(u) | SetDescription::Finite(u) => u.contains(q),
            SetDescription::Cantor => CantorSet.contains(q),
            SetDescription::Countable(e) => e.contains(q),
            SetDescription::Union(parts) => parts.iter().any(|p| p.contains(q)),
        }
    }

    /// `inf(S)`.
    pub fn inf(&self) -> Result<Rational, SetError> {
        match self {
            SetDescription::Intervals(u) | SetDescription::Finite(u) => u.inf(),
            SetDescription::Cantor => Ok(Rational::zero()),
            SetDescription::Countable(e) => Ok(e.inf()),
            SetDescription::Union(parts) => parts
                .iter()
                .filter_map(|p| p.inf().ok())
                .min()
                .ok_or(SetError::EmptySet),
        }
    }

    /// `inf((x, z) ∩ S)`, or `None` when the intersection is empty. The
    /// infimum need not be attained inside `(x, z)`.
    pub fn inf_in_interval(&self, x: &Rational, z: &Rational) -> Result<Option<Rational>, SetError> {
        check_open(x, z)?;
        Ok(self.inf_in_open(x, z))
    }

    fn inf_in_open(&self, x: &Rational, z: &Rational) -> Option<Rational> {
        match self {
            SetDescription::Intervals(u) | SetDescription::Finite(u) => u.inf_in_interval(x, z),
            SetDescription::Cantor => CantorSet.inf_in_interval(x, z),
            SetDescription::Countable(e) => e.inf_in_interval(x, z),
            SetDescription::Union(parts) => parts.iter().filter_map(|p| p.inf_in_open(x, z)).min(),
        }
    }

    /// Decides `q ∈ S`, `q ∈ S⁺` and `q ∈ S⁻`.
    pub fn classify(&self, q: &Rational) -> PointClass {
        match self {
            SetDescription::Intervals(u) | SetDescription::Finite(u) => u.classify(q),
            SetDescription::Cantor => CantorSet.classify(q),
            SetDescription::Countable(e) => PointClass::membership_only(e.contains(q)),
            SetDescription::Union(parts) => parts
                .iter()
                .map(|p| p.classify(q))
                .reduce(PointClass::union)
                .unwrap_or(PointClass::exact(false, false, false)),
        }
    }

    /// A deterministic point `r ∈ (a, b)` approachable from the right.
    pub fn right_select(&self, a: &Rational, b: &Rational) -> Result<Option<Rational>, SetError> {
        check_open(a, b)?;
        Ok(match self {
            SetDescription::Intervals(u) | SetDescription::Finite(u) => u.right_select(a, b),
            SetDescription::Cantor => CantorSet.right_select(a, b),
            SetDescription::Countable(_) => {
                return Err(SetError::Undecidable {
                    what: "right approachability",
                })
            }
            SetDescription::Union(parts) => {
                let mut best: Option<Rational> = None;
                for part in parts {
                    if let Some(r) = part.right_select(a, b)? {
                        best = Some(best.map_or(r.clone(), |cur| cur.min(r)));
                    }
                }
                best
            }
        })
    }

    /// A deterministic point of `S ∩ (a, b)`, not necessarily approachable
    /// from the right.
    pub fn point_in(&self, a: &Rational, b: &Rational) -> Result<Option<Rational>, SetError> {
        check_open(a, b)?;
        Ok(self.point_in_open(a, b))
    }

    fn point_in_open(&self, a: &Rational, b: &Rational) -> Option<Rational> {
        match self {
            SetDescription::Intervals(u) | SetDescription::Finite(u) => u.point_in(a, b),
            SetDescription::Cantor => CantorSet.point_in(a, b),
            SetDescription::Countable(e) => e.point_in(a, b),
            SetDescription::Union(parts) => parts.iter().filter_map(|p| p.point_in_open(a, b)).min(),
        }
    }

    /// Runs the constructive argument that a right-approachable `a` has a
    /// right-approachable point in `(a, a + ε)`: pick `z`, then `y < z`,
    /// then `x < y`, all in `S`, and return `γ = inf((x, z) ∩ S)`.
    pub fn lemma2_select(&self, a: &Rational, epsilon: &Rational) -> Result<Lemma2Witness, SetError> {
        if !epsilon.is_positive() {
            return Err(SetError::NonPositiveEpsilon {
                epsilon: epsilon.clone(),
            });
        }
        if self.classify(a).right_approachable != Some(true) {
            return Err(SetError::NotRightApproachable { point: a.clone() });
        }
        let missing = || SetError::NotRightApproachable { point: a.clone() };
        let upper = a + epsilon;
        let z = self.point_in(a, &upper)?.ok_or_else(missing)?;
        let y = self.point_in(a, &z)?.ok_or_else(missing)?;
        let x = self.point_in(a, &y)?.ok_or_else(missing)?;
        // y ∈ (x, z) ∩ S, so the infimum exists.
        let gamma = self.inf_in_interval(&x, &z)?.ok_or_else(missing)?;
        Ok(Lemma2Witness { x, y, z, gamma })
    }

    /// Non-empty, closed, and without isolated points.
    pub fn is_perfect(&self) -> Result<bool, SetError> {
        match self {
            SetDescription::Intervals(u) | SetDescription::Finite(u) => Ok(u.is_perfect()),
            SetDescription::Cantor => Ok(true),
            SetDescription::Countable(_) => Err(SetError::Undecidable { what: "perfectness" }),
            SetDescription::Union(parts) => {
                let mut isolated_candidates = Vec::new();
                let mut non_empty = false;
                for part in parts {
                    part.collect_isolated_candidates(&mut isolated_candidates, &mut non_empty)?;
                }
                Ok(non_empty
                    && isolated_candidates
                        .iter()
                        .all(|p| self.classify(p).is_limit_point() == Some(true)))
            }
        }
    }

    /// Degenerate components are the only possible isolated points of a
    /// finite union of interval unions and Cantor sets.
    fn collect_isolated_candidates(&self, out: &mut Vec<Rational>, non_empty: &mut bool) -> Result<(), SetError> {
        match self {
            SetDescription::Intervals(u) | SetDescription::Finite(u) => {
                *non_empty |= !u.is_empty();
                out.extend(u.components().iter().filter(|c| c.is_degenerate()).map(|c| c.lo.clone()));
            }
            SetDescription::Cantor => *non_empty = true,
            SetDescription::Countable(_) => return Err(SetError::Undecidable { what: "perfectness" }),
            SetDescription::Union(parts) => {
                for part in parts {
                    part.collect_isolated_candidates(out, non_empty)?;
                }
            }
        }
        Ok(())
    }

    /// The enumeration behind a countable description, if it is one.
    pub fn enumeration(&self) -> Option<&CountableEnumeration> {
        match self {
            SetDescription::Countable(e) => Some(e),
            _ => None,
        }
    }

    /// Parses either a JSON set document or one of the shorthands `cantor`,
    /// `unit`, `farey` and `dyadic`.
    pub fn parse_spec(text: &str) -> Result<Self, SetError> {
        match text.trim() {
            "cantor" => Ok(SetDescription::Cantor),
            "unit" => Ok(SetDescription::unit()),
            "farey" => Ok(SetDescription::Countable(CountableEnumeration::Farey)),
            "dyadic" => Ok(SetDescription::Countable(CountableEnumeration::Dyadic)),
            json => serde_json::from_str(json).map_err(|e| SetError::Document(e.to_string())),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("set documents always serialize")
    }
}

fn check_open(lo: &Rational, hi: &Rational) -> Result<(), SetError> {
    if lo >= hi {
        return Err(SetError::EmptyInterval {
            lo: lo.clone(),
            hi: hi.clone(),
        });
    }
    Ok(())
}
