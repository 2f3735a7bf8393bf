//! The Banach–Mazur game on `[0, 1]`: Anna and Bartek alternately choose
//! nested nondegenerate closed intervals; Anna wins iff the intersection
//! meets the target set `S`.
//!
//! For a meagre `S = F_1 ∪ F_2 ∪ ...` with each `F_k` nowhere dense, Bartek
//! answers his `n`-th turn with a subinterval missing `closure(F_n)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{midpoint, Rational};
use crate::sets::{CountableEnumeration, NowhereDense, SetDescription, SetError};
use crate::strategy::{random_dyadic_between, StrategyError};
use crate::certificate::{CertificateError, CertificateReport};
use crate::trace::AnyTrace;

use super::{move_rng, IntervalKind};

/// A nondegenerate closed interval `[lo, hi] ⊆ [0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(Rational, Rational)", into = "(Rational, Rational)")]
pub struct ClosedInterval {
    lo: Rational,
    hi: Rational,
}

impl ClosedInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, BmError> {
        if lo >= hi {
            return Err(BmError::Degenerate { lo, hi });
        }
        if !lo.in_unit_interval() || !hi.in_unit_interval() {
            return Err(BmError::OutsideUnit { lo, hi });
        }
        Ok(ClosedInterval { lo, hi })
    }

    pub fn unit() -> Self {
        ClosedInterval {
            lo: Rational::zero(),
            hi: Rational::one(),
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains_interval(&self, inner: &ClosedInterval) -> bool {
        self.lo <= inner.lo && inner.hi <= self.hi
    }
}

impl TryFrom<(Rational, Rational)> for ClosedInterval {
    type Error = BmError;
    fn try_from((lo, hi): (Rational, Rational)) -> Result<Self, BmError> {
        ClosedInterval::new(lo, hi)
    }
}

impl From<ClosedInterval> for (Rational, Rational) {
    fn from(i: ClosedInterval) -> Self {
        (i.lo, i.hi)
    }
}

impl fmt::Display for ClosedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BmError {
    #[error("interval [{lo}, {hi}] is degenerate")]
    Degenerate { lo: Rational, hi: Rational },
    #[error("interval [{lo}, {hi}] leaves [0, 1]")]
    OutsideUnit { lo: Rational, hi: Rational },
    #[error("{inner} is not contained in {outer}")]
    NotContained { inner: ClosedInterval, outer: ClosedInterval },
    #[error("presentation error: {0}")]
    Presentation(#[from] SetError),
    #[error("presentation error: closure of F meets every subinterval of {0}")]
    NoRoom(ClosedInterval),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BmPlayer {
    Anna,
    Bartek,
}

impl fmt::Display for BmPlayer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BmPlayer::Anna => "anna",
            BmPlayer::Bartek => "bartek",
        })
    }
}

/// One source of nowhere-dense pieces in a meagre presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Source {
    /// The same nowhere-dense set every time it comes up.
    Fixed(NowhereDense),
    /// Singletons `{s_1}, {s_2}, ...` of an enumeration, one per visit.
    Singletons(CountableEnumeration),
}

/// `S = F_1 ∪ F_2 ∪ ...`, derived from a set description: an enumeration
/// contributes its singletons, a union interleaves its parts round-robin,
/// anything else is a single nowhere-dense set repeated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeagrePresentation {
    sources: Vec<Source>,
}

impl MeagrePresentation {
    pub fn from_set(set: &SetDescription) -> Result<Self, BmError> {
        let parts: Vec<&SetDescription> = match set {
            SetDescription::Union(parts) => parts.iter().collect(),
            other => vec![other],
        };
        let sources = parts
            .into_iter()
            .map(|part| match part {
                SetDescription::Countable(e) => Ok(Source::Singletons(e.clone())),
                other => NowhereDense::try_from(other).map(Source::Fixed),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if sources.is_empty() {
            return Err(BmError::Presentation(SetError::EmptySet));
        }
        Ok(MeagrePresentation { sources })
    }

    /// `F_k` for `k >= 1`.
    pub fn piece(&self, k: usize) -> Result<NowhereDense, BmError> {
        if k == 0 {
            return Err(BmError::Presentation(SetError::ZeroIndex));
        }
        let m = self.sources.len();
        let visit = (k - 1) / m + 1;
        match &self.sources[(k - 1) % m] {
            Source::Fixed(f) => Ok(f.clone()),
            Source::Singletons(e) => {
                let point = e.enumerate(visit)?;
                Ok(NowhereDense::try_from(&SetDescription::finite([point])?)?)
            }
        }
    }
}

/// The middle half `[c + L/4, c + 3L/4]` of the longest (leftmost on ties)
/// component `(c, c + L)` of `I` minus `closure(F)`.
pub fn avoid_interval(interval: &ClosedInterval, f: &NowhereDense) -> Result<ClosedInterval, BmError> {
    let (c, end) = f
        .largest_gap(interval.lo(), interval.hi())
        .ok_or_else(|| BmError::NoRoom(interval.clone()))?;
    let quarter = &(&end - &c) / &Rational::from_integer(4);
    let lo = &c + &quarter;
    let hi = &end - &quarter;
    ClosedInterval::new(lo, hi)
}

/// Positions of a Banach–Mazur play: `I_1 ⊇ I_2 ⊇ ...`, Anna first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BmState {
    intervals: Vec<ClosedInterval>,
}

impl BmState {
    pub fn new() -> Self {
        BmState::default()
    }

    pub fn intervals(&self) -> &[ClosedInterval] {
        &self.intervals
    }

    pub fn current(&self) -> ClosedInterval {
        self.intervals.last().cloned().unwrap_or_else(ClosedInterval::unit)
    }

    pub fn to_move(&self) -> BmPlayer {
        if self.intervals.len() % 2 == 0 {
            BmPlayer::Anna
        } else {
            BmPlayer::Bartek
        }
    }

    pub fn rounds_completed(&self) -> usize {
        self.intervals.len() / 2
    }

    /// Appends `interval` after checking `interval ⊆ I_last` exactly.
    pub fn apply(&self, interval: ClosedInterval) -> Result<BmState, BmError> {
        let outer = self.current();
        if !outer.contains_interval(&interval) {
            return Err(BmError::NotContained { inner: interval, outer });
        }
        let mut next = self.clone();
        next.intervals.push(interval);
        Ok(next)
    }
}

pub trait IntervalStrategy: Send + Sync {
    fn name(&self) -> String;
    fn propose(&self, state: &BmState) -> Result<ClosedInterval, StrategyError>;
}

/// On his `n`-th move Bartek plays [`avoid_interval`] against `F_n`.
#[derive(Debug, Clone)]
pub struct BartekMeagre {
    presentation: MeagrePresentation,
}

impl BartekMeagre {
    pub fn new(presentation: MeagrePresentation) -> Self {
        BartekMeagre { presentation }
    }
}

impl IntervalStrategy for BartekMeagre {
    fn name(&self) -> String {
        "meagre".to_string()
    }

    fn propose(&self, state: &BmState) -> Result<ClosedInterval, StrategyError> {
        let piece = self
            .presentation
            .piece(state.rounds_completed() + 1)
            .map_err(|e| StrategyError::Unsupported(e.to_string()))?;
        avoid_interval(&state.current(), &piece).map_err(|e| StrategyError::Unsupported(e.to_string()))
    }
}

/// Plays a fixed list of intervals verbatim.
#[derive(Debug, Clone)]
pub struct ScriptedIntervals {
    moves: Vec<ClosedInterval>,
}

impl ScriptedIntervals {
    pub fn new(moves: Vec<ClosedInterval>) -> Self {
        ScriptedIntervals { moves }
    }
}

impl IntervalStrategy for ScriptedIntervals {
    fn name(&self) -> String {
        "script".to_string()
    }

    fn propose(&self, state: &BmState) -> Result<ClosedInterval, StrategyError> {
        self.moves
            .get(state.rounds_completed())
            .cloned()
            .ok_or(StrategyError::ScriptExhausted { len: self.moves.len() })
    }
}

/// The middle half of the current interval.
#[derive(Debug, Clone, Copy, Default)]
pub struct MiddleHalf;

impl IntervalStrategy for MiddleHalf {
    fn name(&self) -> String {
        "midpoint".to_string()
    }

    fn propose(&self, state: &BmState) -> Result<ClosedInterval, StrategyError> {
        let cur = state.current();
        let quarter = &cur.width() / &Rational::from_integer(4);
        ClosedInterval::new(cur.lo() + &quarter, cur.hi() - &quarter)
            .map_err(|e| StrategyError::Unsupported(e.to_string()))
    }
}

/// Two distinct random dyadic points of the current interval, sorted.
#[derive(Debug, Clone, Copy)]
pub struct RandomIntervals {
    seed: u64,
}

impl RandomIntervals {
    pub fn new(seed: u64) -> Self {
        RandomIntervals { seed }
    }
}

impl IntervalStrategy for RandomIntervals {
    fn name(&self) -> String {
        format!("random:{}", self.seed)
    }

    fn propose(&self, state: &BmState) -> Result<ClosedInterval, StrategyError> {
        let cur = state.current();
        let mut rng = move_rng(self.seed, state.intervals().len());
        let first = random_dyadic_between(cur.lo(), cur.hi(), &mut rng);
        let second = loop {
            let candidate = random_dyadic_between(cur.lo(), cur.hi(), &mut rng);
            if candidate != first {
                break candidate;
            }
        };
        let (lo, hi) = if first < second { (first, second) } else { (second, first) };
        ClosedInterval::new(lo, hi).map_err(|e| StrategyError::Unsupported(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BmMove {
    pub player: BmPlayer,
    pub kind: IntervalKind,
    pub interval: ClosedInterval,
}

/// A finished Banach–Mazur play; `set` is the meagre target `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BmTrace {
    pub set: SetDescription,
    pub rounds: usize,
    pub moves: Vec<BmMove>,
    #[serde(rename = "final")]
    pub final_interval: Option<ClosedInterval>,
}

impl BmTrace {
    pub fn from_state(set: SetDescription, state: &BmState) -> Self {
        let moves = state
            .intervals()
            .iter()
            .enumerate()
            .map(|(i, interval)| BmMove {
                player: if i % 2 == 0 { BmPlayer::Anna } else { BmPlayer::Bartek },
                kind: IntervalKind::Closed,
                interval: interval.clone(),
            })
            .collect();
        BmTrace {
            set,
            rounds: state.rounds_completed(),
            moves,
            final_interval: state.intervals().last().cloned(),
        }
    }

    pub fn to_json(&self) -> String {
        AnyTrace::BanachMazur(self.clone()).to_json()
    }
}

#[derive(Debug, Error)]
pub enum BmPlayError {
    #[error("a game needs at least one round")]
    ZeroRounds,
    #[error(transparent)]
    Presentation(#[from] BmError),
    #[error("strategy fault: {player} ({strategy}) in round {round}: {error}")]
    StrategyFault {
        player: BmPlayer,
        strategy: String,
        round: usize,
        error: String,
    },
}

/// Plays `rounds` (Anna, Bartek) rounds against the meagre target `set`.
pub fn bm_play(
    anna: &dyn IntervalStrategy,
    bartek: &dyn IntervalStrategy,
    set: &SetDescription,
    rounds: usize,
) -> Result<BmTrace, BmPlayError> {
    if rounds == 0 {
        return Err(BmPlayError::ZeroRounds);
    }
    let mut state = BmState::new();
    while state.rounds_completed() < rounds {
        let player = state.to_move();
        let strategy = match player {
            BmPlayer::Anna => anna,
            BmPlayer::Bartek => bartek,
        };
        let fault = |error: String| BmPlayError::StrategyFault {
            player,
            strategy: strategy.name(),
            round: state.rounds_completed() + 1,
            error,
        };
        let interval = strategy.propose(&state).map_err(|e| fault(e.to_string()))?;
        state = state.apply(interval).map_err(|e| fault(e.to_string()))?;
    }
    Ok(BmTrace::from_state(set.clone(), &state))
}

/// What a Banach–Mazur certificate establishes: the final interval misses
/// `closure(F_k)` for every `k <= N`. Any point of the (nonempty) nested
/// intersection therefore avoids `F_1, ..., F_N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BmCertificate {
    pub checked: usize,
    pub final_interval: Option<ClosedInterval>,
}

pub const BM_CLAIM: &str =
    "meagre sets: the final interval is disjoint from closure(F_k) for every k <= N, so the intersection avoids F_1..F_N";

/// Re-checks nesting from the raw endpoints, then disjointness of the final
/// interval from `closure(F_1) .. closure(F_n)`. `n = 0` is vacuous.
pub fn bm_certificate(trace: &BmTrace, n: usize) -> Result<BmCertificate, CertificateError> {
    bm_check_legality(trace)?;
    if n > trace.rounds {
        return Err(CertificateError::TooFewRounds { needed: n, got: trace.rounds });
    }
    if n == 0 {
        return Ok(BmCertificate { checked: 0, final_interval: trace.final_interval.clone() });
    }
    let presentation = MeagrePresentation::from_set(&trace.set).map_err(|e| CertificateError::Round {
        round: 0,
        detail: e.to_string(),
    })?;
    let last = trace.final_interval.clone().expect("legal trace with rounds has a final interval");
    for k in 1..=n {
        let piece = presentation.piece(k).map_err(|e| CertificateError::Round {
            round: k,
            detail: e.to_string(),
        })?;
        if piece.meets_closed(last.lo(), last.hi()) {
            return Err(CertificateError::Round {
                round: k,
                detail: format!("final interval {last} meets closure(F_{k})"),
            });
        }
    }
    Ok(BmCertificate { checked: n, final_interval: Some(last) })
}

/// Alternation, nondegeneracy, exact nesting and the recorded final interval.
pub fn bm_check_legality(trace: &BmTrace) -> Result<(), CertificateError> {
    let mut state = BmState::new();
    for (i, m) in trace.moves.iter().enumerate() {
        let round = i / 2 + 1;
        let fail = |detail: String| CertificateError::Round { round, detail };
        if m.player != state.to_move() {
            return Err(fail(format!("expected {} to move, found {}", state.to_move(), m.player)));
        }
        if m.kind != IntervalKind::Closed {
            return Err(fail("Banach–Mazur moves are closed intervals".into()));
        }
        let checked = ClosedInterval::new(m.interval.lo().clone(), m.interval.hi().clone())
            .map_err(|e| fail(e.to_string()))?;
        state = state.apply(checked).map_err(|e| fail(e.to_string()))?;
    }
    let round = trace.moves.len() / 2 + 1;
    if trace.moves.len() != 2 * trace.rounds {
        return Err(CertificateError::Round {
            round,
            detail: format!("{} rounds declared but {} moves recorded", trace.rounds, trace.moves.len()),
        });
    }
    if trace.final_interval.as_ref() != state.intervals().last() {
        return Err(CertificateError::Round {
            round: trace.rounds,
            detail: "recorded final interval differs from the last move".into(),
        });
    }
    Ok(())
}

pub fn bm_report(trace: &BmTrace, n: usize) -> CertificateReport {
    let report = CertificateReport::new("bm", "banach-mazur", trace.rounds, BM_CLAIM);
    match bm_certificate(trace, n) {
        Ok(cert) => {
            let mut report = CertificateReport {
                enclosure: cert.final_interval.clone().map(Into::into),
                ..report
            };
            for k in 1..=cert.checked {
                report = report.item(k, format!("F_{k}"), "disjoint");
            }
            report
        }
        Err(e) => report.fail(&e),
    }
}

/// Centre of a closed interval, used by demos.
pub fn centre(interval: &ClosedInterval) -> Rational {
    midpoint(interval.lo(), interval.hi()).expect("nondegenerate")
}
