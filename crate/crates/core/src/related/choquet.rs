//! The Choquet game on an ambient `X`, either `[0, 1]` or `Q ∩ [0, 1]`.
//!
//! Pierre opens with `U_1`, Paul answers `V_1 ⊆ U_1`, Pierre plays
//! `U_2 ⊆ V_1`, and so on. Pierre wins iff `∩ U_n = ∅`. Moves are single open
//! intervals `(lo, hi)`, read as `(lo, hi) ∩ X`.
//!
//! On the complete ambient Paul keeps a nonempty closed core by shrinking
//! diameters and nesting closures. On the rationals Pierre dodges the
//! `n`-th rational of an enumeration on his `(n+1)`-th move.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificate::{CertificateError, CertificateReport};
use crate::numeric::{midpoint, Rational};
use crate::sets::CountableEnumeration;
use crate::strategy::{random_dyadic_between, StrategyError};
use crate::trace::AnyTrace;

use super::{move_rng, IntervalKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    /// `[0, 1]`, complete.
    #[serde(rename = "unit")]
    UnitInterval,
    /// `Q ∩ [0, 1]`, not complete.
    Rationals,
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ambient::UnitInterval => "unit",
            Ambient::Rationals => "rationals",
        })
    }
}

impl FromStr for Ambient {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "unit" | "[0,1]" | "reals" => Ok(Ambient::UnitInterval),
            "rationals" | "q" | "Q" => Ok(Ambient::Rationals),
            other => Err(format!("unknown ambient {other:?}; expected unit or rationals")),
        }
    }
}

/// `(lo, hi)` with `lo < hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(Rational, Rational)", into = "(Rational, Rational)")]
pub struct OpenInterval {
    lo: Rational,
    hi: Rational,
}

impl OpenInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, ChoquetError> {
        if lo >= hi {
            return Err(ChoquetError::Degenerate { lo, hi });
        }
        Ok(OpenInterval { lo, hi })
    }

    pub fn unit() -> Self {
        OpenInterval {
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

    pub fn centre(&self) -> Rational {
        midpoint(&self.lo, &self.hi).expect("lo < hi")
    }

    pub fn contains_point(&self, q: &Rational) -> bool {
        &self.lo < q && q < &self.hi
    }

    pub fn contains_interval(&self, inner: &OpenInterval) -> bool {
        self.lo <= inner.lo && inner.hi <= self.hi
    }

    /// `closure(inner) ⊆ self`.
    pub fn contains_closure_of(&self, inner: &OpenInterval) -> bool {
        self.lo < inner.lo && inner.hi < self.hi
    }

    /// `(lo, hi) ∩ X` is nonempty. For both ambients this is `hi > 0` and
    /// `lo < 1`: a nondegenerate interval meeting `[0, 1]` meets it in a
    /// nondegenerate interval, which always contains a rational.
    pub fn meets_ambient(&self, _ambient: Ambient) -> bool {
        self.hi.is_positive() && self.lo < Rational::one()
    }

    /// The concentric interval of half the width.
    pub fn middle_half(&self) -> OpenInterval {
        let quarter = &self.width() / &Rational::from_integer(4);
        OpenInterval {
            lo: &self.lo + &quarter,
            hi: &self.hi - &quarter,
        }
    }
}

impl TryFrom<(Rational, Rational)> for OpenInterval {
    type Error = ChoquetError;
    fn try_from((lo, hi): (Rational, Rational)) -> Result<Self, ChoquetError> {
        OpenInterval::new(lo, hi)
    }
}

impl From<OpenInterval> for (Rational, Rational) {
    fn from(i: OpenInterval) -> Self {
        (i.lo, i.hi)
    }
}

impl fmt::Display for OpenInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChoquetError {
    #[error("interval ({lo}, {hi}) is degenerate")]
    Degenerate { lo: Rational, hi: Rational },
    #[error("{inner} is not contained in {outer}")]
    NotContained { inner: OpenInterval, outer: OpenInterval },
    #[error("{interval} does not meet the ambient {ambient}")]
    EmptyInAmbient { interval: OpenInterval, ambient: Ambient },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChoquetPlayer {
    Pierre,
    Paul,
}

impl fmt::Display for ChoquetPlayer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChoquetPlayer::Pierre => "pierre",
            ChoquetPlayer::Paul => "paul",
        })
    }
}

/// `U_1 ⊇ V_1 ⊇ U_2 ⊇ ...` over a fixed ambient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoquetState {
    ambient: Ambient,
    sets: Vec<OpenInterval>,
}

impl ChoquetState {
    pub fn new(ambient: Ambient) -> Self {
        ChoquetState {
            ambient,
            sets: Vec::new(),
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn sets(&self) -> &[OpenInterval] {
        &self.sets
    }

    /// The last set played, or `(0, 1)` before the first move.
    pub fn current(&self) -> OpenInterval {
        self.sets.last().cloned().unwrap_or_else(OpenInterval::unit)
    }

    pub fn to_move(&self) -> ChoquetPlayer {
        if self.sets.len() % 2 == 0 {
            ChoquetPlayer::Pierre
        } else {
            ChoquetPlayer::Paul
        }
    }

    pub fn rounds_completed(&self) -> usize {
        self.sets.len() / 2
    }

    /// `U_n`, 1-based.
    pub fn pierre(&self, n: usize) -> Option<&OpenInterval> {
        self.sets.get(2 * n.checked_sub(1)?)
    }

    /// `V_n`, 1-based.
    pub fn paul(&self, n: usize) -> Option<&OpenInterval> {
        self.sets.get(2 * n.checked_sub(1)? + 1)
    }

    /// Appends `next` after the exact containment and ambient checks.
    pub fn apply(&self, next: OpenInterval) -> Result<ChoquetState, ChoquetError> {
        if !next.meets_ambient(self.ambient) {
            return Err(ChoquetError::EmptyInAmbient {
                interval: next,
                ambient: self.ambient,
            });
        }
        if let Some(outer) = self.sets.last() {
            if !outer.contains_interval(&next) {
                return Err(ChoquetError::NotContained {
                    inner: next,
                    outer: outer.clone(),
                });
            }
        }
        let mut state = self.clone();
        state.sets.push(next);
        Ok(state)
    }
}

pub trait OpenStrategy: Send + Sync {
    fn name(&self) -> String;
    fn propose(&self, state: &ChoquetState) -> Result<OpenInterval, StrategyError>;
}

/// Paul on the complete ambient: on round `n` with `U_n = (l, h)` play
/// `(m - d, m + d)` with `m` the midpoint and `d = min((h - l)/4, 2^-(n+1))`.
/// Then `closure(V_n) ⊆ U_n` and `diameter(V_n) <= 2^-n`.
#[derive(Debug, Clone, Copy, Default)]
pub struct PaulComplete;

impl OpenStrategy for PaulComplete {
    fn name(&self) -> String {
        "complete".to_string()
    }

    fn propose(&self, state: &ChoquetState) -> Result<OpenInterval, StrategyError> {
        if state.ambient() != Ambient::UnitInterval {
            return Err(StrategyError::Unsupported(
                "this strategy needs the complete ambient [0, 1]".into(),
            ));
        }
        let n = state.rounds_completed() + 1;
        let u = state.current();
        let m = u.centre();
        let d = (&u.width() / &Rational::from_integer(4)).min(Rational::inv_pow2(n as u32 + 1));
        Ok(OpenInterval::new(&m - &d, &m + &d).expect("d > 0"))
    }
}

/// Pierre against an enumerated countable ambient. He opens with `(0, 1)`;
/// on move `n + 1`, facing `V_n = (l, h)` and `q_n = enumerate(E, n)`, he
/// plays the wider of `(l, q_n)` and `(q_n, h)` (the left one on ties) when
/// `q_n ∈ V_n`, and the concentric middle half of `V_n` otherwise.
#[derive(Debug, Clone)]
pub struct PierreCountable {
    enumeration: CountableEnumeration,
}

impl PierreCountable {
    pub fn new(enumeration: CountableEnumeration) -> Self {
        PierreCountable { enumeration }
    }
}

impl OpenStrategy for PierreCountable {
    fn name(&self) -> String {
        format!("countable:{}", self.enumeration.name())
    }

    fn propose(&self, state: &ChoquetState) -> Result<OpenInterval, StrategyError> {
        let n = state.rounds_completed();
        if n == 0 {
            return Ok(OpenInterval::unit());
        }
        let v = state.current();
        let q = self.enumeration.enumerate(n)?;
        if !v.contains_point(&q) {
            return Ok(v.middle_half());
        }
        let left = &q - v.lo();
        let right = v.hi() - &q;
        let (lo, hi) = if left >= right {
            (v.lo().clone(), q)
        } else {
            (q, v.hi().clone())
        };
        Ok(OpenInterval::new(lo, hi).expect("q strictly inside V"))
    }
}

/// The concentric middle half of the current set; "midpoint-style" play
/// for either player on either ambient.
#[derive(Debug, Clone, Copy, Default)]
pub struct ConcentricShrink;

impl OpenStrategy for ConcentricShrink {
    fn name(&self) -> String {
        "midpoint".to_string()
    }

    fn propose(&self, state: &ChoquetState) -> Result<OpenInterval, StrategyError> {
        Ok(state.current().middle_half())
    }
}

/// Plays the listed intervals in order, one per round.
#[derive(Debug, Clone)]
pub struct ScriptedOpen {
    moves: Vec<OpenInterval>,
}

impl ScriptedOpen {
    pub fn new(moves: Vec<OpenInterval>) -> Self {
        ScriptedOpen { moves }
    }
}

impl OpenStrategy for ScriptedOpen {
    fn name(&self) -> String {
        "script".to_string()
    }

    fn propose(&self, state: &ChoquetState) -> Result<OpenInterval, StrategyError> {
        self.moves
            .get(state.rounds_completed())
            .cloned()
            .ok_or(StrategyError::ScriptExhausted { len: self.moves.len() })
    }
}

/// Two distinct random dyadic points of the current set, sorted.
#[derive(Debug, Clone, Copy)]
pub struct RandomOpen {
    seed: u64,
}

impl RandomOpen {
    pub fn new(seed: u64) -> Self {
        RandomOpen { seed }
    }
}

impl OpenStrategy for RandomOpen {
    fn name(&self) -> String {
        format!("random:{}", self.seed)
    }

    fn propose(&self, state: &ChoquetState) -> Result<OpenInterval, StrategyError> {
        let cur = state.current();
        let mut rng = move_rng(self.seed, state.sets().len());
        let first = random_dyadic_between(cur.lo(), cur.hi(), &mut rng);
        let second = loop {
            let candidate = random_dyadic_between(cur.lo(), cur.hi(), &mut rng);
            if candidate != first {
                break candidate;
            }
        };
        let (lo, hi) = if first < second { (first, second) } else { (second, first) };
        Ok(OpenInterval::new(lo, hi).expect("distinct"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoquetMove {
    pub player: ChoquetPlayer,
    pub kind: IntervalKind,
    pub interval: OpenInterval,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoquetTrace {
    pub ambient: Ambient,
    pub rounds: usize,
    pub moves: Vec<ChoquetMove>,
    #[serde(rename = "final")]
    pub final_interval: Option<OpenInterval>,
}

impl ChoquetTrace {
    pub fn from_state(state: &ChoquetState) -> Self {
        let moves = state
            .sets()
            .iter()
            .enumerate()
            .map(|(i, interval)| ChoquetMove {
                player: if i % 2 == 0 { ChoquetPlayer::Pierre } else { ChoquetPlayer::Paul },
                kind: IntervalKind::Open,
                interval: interval.clone(),
            })
            .collect();
        ChoquetTrace {
            ambient: state.ambient(),
            rounds: state.rounds_completed(),
            moves,
            final_interval: state.sets().last().cloned(),
        }
    }

    pub fn to_json(&self) -> String {
        AnyTrace::Choquet(self.clone()).to_json()
    }

    /// Rebuilds the state, checking alternation, tags, nesting and the
    /// ambient from the raw endpoints.
    pub fn replay(&self) -> Result<ChoquetState, CertificateError> {
        let mut state = ChoquetState::new(self.ambient);
        for (i, m) in self.moves.iter().enumerate() {
            let round = i / 2 + 1;
            let fail = |detail: String| CertificateError::Round { round, detail };
            if m.player != state.to_move() {
                return Err(fail(format!("expected {} to move, found {}", state.to_move(), m.player)));
            }
            if m.kind != IntervalKind::Open {
                return Err(fail("Choquet moves are open intervals".into()));
            }
            let checked = OpenInterval::new(m.interval.lo().clone(), m.interval.hi().clone())
                .map_err(|e| fail(e.to_string()))?;
            state = state.apply(checked).map_err(|e| fail(e.to_string()))?;
        }
        if self.moves.len() != 2 * self.rounds {
            return Err(CertificateError::Round {
                round: self.moves.len() / 2 + 1,
                detail: format!("{} rounds declared but {} moves recorded", self.rounds, self.moves.len()),
            });
        }
        if self.final_interval.as_ref() != state.sets().last() {
            return Err(CertificateError::Round {
                round: self.rounds,
                detail: "recorded final set differs from the last move".into(),
            });
        }
        Ok(state)
    }
}

#[derive(Debug, Error)]
pub enum ChoquetPlayError {
    #[error("a game needs at least one round")]
    ZeroRounds,
    #[error("strategy fault: {player} ({strategy}) in round {round}: {error}")]
    StrategyFault {
        player: ChoquetPlayer,
        strategy: String,
        round: usize,
        error: String,
    },
}

pub fn choquet_play(
    pierre: &dyn OpenStrategy,
    paul: &dyn OpenStrategy,
    ambient: Ambient,
    rounds: usize,
) -> Result<ChoquetTrace, ChoquetPlayError> {
    if rounds == 0 {
        return Err(ChoquetPlayError::ZeroRounds);
    }
    let mut state = ChoquetState::new(ambient);
    while state.rounds_completed() < rounds {
        let player = state.to_move();
        let strategy = match player {
            ChoquetPlayer::Pierre => pierre,
            ChoquetPlayer::Paul => paul,
        };
        let fault = |error: String| ChoquetPlayError::StrategyFault {
            player,
            strategy: strategy.name(),
            round: state.rounds_completed() + 1,
            error,
        };
        let next = strategy.propose(&state).map_err(|e| fault(e.to_string()))?;
        state = state.apply(next).map_err(|e| fault(e.to_string()))?;
    }
    Ok(ChoquetTrace::from_state(&state))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaulCertificate {
    pub checked: usize,
    /// `[sup of left endpoints, inf of right endpoints]` of `V_1..V_N`.
    pub enclosure: (Rational, Rational),
    pub diameters: Vec<Rational>,
}

pub const PAUL_CLAIM: &str = "complete ambient: closure(V_{n+1}) is inside V_n and diameter(V_n) <= 2^-n, \
so the closures shrink to a point that lies in every U_n";

/// Checks `closure(V_{n+1}) ⊆ V_n` and `diameter(V_n) <= 2^-n` for `n <= N`.
pub fn paul_certificate(trace: &ChoquetTrace, n: usize) -> Result<PaulCertificate, CertificateError> {
    let state = trace.replay()?;
    if trace.ambient != Ambient::UnitInterval {
        return Err(CertificateError::Ambient(format!(
            "the complete-ambient certificate needs unit, trace has {}",
            trace.ambient
        )));
    }
    if n == 0 || n > trace.rounds {
        return Err(CertificateError::TooFewRounds { needed: n.max(1), got: trace.rounds });
    }
    let mut diameters = Vec::with_capacity(n);
    let mut lo = Rational::zero();
    let mut hi = Rational::one();
    for k in 1..=n {
        let v = state.paul(k).expect("round k played");
        let diameter = v.width();
        if diameter > Rational::inv_pow2(k as u32) {
            return Err(CertificateError::Round {
                round: k,
                detail: format!("diameter({v}) = {diameter} exceeds 2^-{k}"),
            });
        }
        if k > 1 {
            let prev = state.paul(k - 1).expect("round k-1 played");
            if !prev.contains_closure_of(v) {
                return Err(CertificateError::Round {
                    round: k,
                    detail: format!("closure of {v} is not inside {prev}"),
                });
            }
        }
        lo = lo.max(v.lo().clone());
        hi = hi.min(v.hi().clone());
        diameters.push(diameter);
    }
    Ok(PaulCertificate {
        checked: n,
        enclosure: (lo, hi),
        diameters,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PierreCertificate {
    pub checked: usize,
    /// `q_k` for `k = 1..=N`, each outside `U_{k+1}`.
    pub excluded: Vec<Rational>,
}

pub const PIERRE_CLAIM: &str = "rational ambient: q_k lies outside U_{k+1} for every k <= N, \
so no enumerated rational survives in the intersection of the U_n";

/// Checks `q_k ∉ U_{k+1}` for `k <= N`; needs `N + 1` rounds.
pub fn pierre_certificate(
    trace: &ChoquetTrace,
    enumeration: &CountableEnumeration,
    n: usize,
) -> Result<PierreCertificate, CertificateError> {
    let state = trace.replay()?;
    if trace.ambient != Ambient::Rationals {
        return Err(CertificateError::Ambient(format!(
            "an empty intersection needs the rational ambient, trace has {}",
            trace.ambient
        )));
    }
    pierre_exclusions(&state, enumeration, n).map(|excluded| PierreCertificate { checked: n, excluded })
}

fn pierre_exclusions(
    state: &ChoquetState,
    enumeration: &CountableEnumeration,
    n: usize,
) -> Result<Vec<Rational>, CertificateError> {
    let rounds = state.rounds_completed();
    if rounds < n + 1 {
        return Err(CertificateError::TooFewRounds { needed: n + 1, got: rounds });
    }
    let mut excluded = Vec::with_capacity(n);
    for (k, q) in (1..=n).zip(enumeration.iter()) {
        let u = state.pierre(k + 1).expect("round k+1 played");
        if u.contains_point(&q) {
            return Err(CertificateError::Round {
                round: k,
                detail: format!("q_{k} = {q} lies in U_{} = {u}", k + 1),
            });
        }
        excluded.push(q);
    }
    Ok(excluded)
}

pub fn paul_report(trace: &ChoquetTrace, n: usize) -> CertificateReport {
    let report = CertificateReport::new("paul", "choquet", trace.rounds, PAUL_CLAIM);
    match paul_certificate(trace, n) {
        Ok(cert) => {
            let report = CertificateReport {
                enclosure: Some(cert.enclosure.clone()),
                ..report
            };
            cert.diameters
                .iter()
                .enumerate()
                .fold(report, |r, (i, d)| r.item(i + 1, d, "diameter_ok"))
        }
        Err(e) => report.fail(&e),
    }
}

pub fn pierre_report(trace: &ChoquetTrace, enumeration: &CountableEnumeration, n: usize) -> CertificateReport {
    let report = CertificateReport::new("pierre", "choquet", trace.rounds, PIERRE_CLAIM);
    match pierre_certificate(trace, enumeration, n) {
        Ok(cert) => cert
            .excluded
            .iter()
            .enumerate()
            .fold(report, |r, (i, q)| r.item(i + 1, q, "excluded")),
        Err(e) => report.fail(&e),
    }
}

/// One presentation run on both ambients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaireRun {
    pub enumeration: String,
    /// Pierre's strategy against Paul on `[0, 1]`: Paul's certificate.
    pub paul_on_unit: CertificateReport,
    /// The same play read as an empty-intersection claim; expected to fail.
    pub pierre_on_unit: CertificateReport,
    /// Pierre against concentric play on `Q ∩ [0, 1]`.
    pub pierre_on_rationals: CertificateReport,
}

impl BaireRun {
    /// Paul certifies on `[0, 1]`, Pierre cannot, Pierre certifies on `Q`.
    pub fn as_expected(&self) -> bool {
        self.paul_on_unit.passed() && !self.pierre_on_unit.passed() && self.pierre_on_rationals.passed()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaireDemo {
    pub rounds: usize,
    pub runs: Vec<BaireRun>,
}

impl BaireDemo {
    pub fn as_expected(&self) -> bool {
        self.runs.iter().all(BaireRun::as_expected)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("Choquet pairs, {} rounds each\n", self.rounds);
        for run in &self.runs {
            out.push_str(&format!("\nPierre presentation: {}\n", run.enumeration));
            let line = |label: &str, r: &CertificateReport| {
                let mut s = format!("  {label:<34} {}", r.status);
                if let Some((lo, hi)) = &r.enclosure {
                    s.push_str(&format!("  enclosure [{lo}, {hi}]"));
                }
                if let Some(f) = &r.failure {
                    s.push_str(&format!("  ({})", f.reason));
                }
                s.push('\n');
                s
            };
            out.push_str(&line("paul certificate on [0,1]", &run.paul_on_unit));
            out.push_str(&line("empty intersection on [0,1]", &run.pierre_on_unit));
            out.push_str(&line("pierre certificate on Q", &run.pierre_on_rationals));
        }
        out.push_str(&format!(
            "\nresult: {}\n",
            if self.as_expected() { "as expected" } else { "UNEXPECTED" }
        ));
        out
    }
}

/// Pierre's claim read on the complete ambient. The enumerated rationals are
/// still dodged, but Paul's certificate exhibits a nonempty closed set inside
/// every `U_n`, so the report fails with that enclosure as the reason.
fn complete_ambient_refutation(
    trace: &ChoquetTrace,
    enumeration: &CountableEnumeration,
    n: usize,
    paul: &CertificateReport,
) -> CertificateReport {
    let report = CertificateReport::new("pierre", "choquet", trace.rounds, PIERRE_CLAIM);
    let dodged = trace
        .replay()
        .and_then(|state| pierre_exclusions(&state, enumeration, n))
        .map_or(0, |q| q.len());
    let reason = match &paul.enclosure {
        Some((lo, hi)) if paul.passed() => format!(
            "ambient [0, 1] is complete: q_1..q_{dodged} are dodged, yet [{lo}, {hi}] lies in every U_n"
        ),
        _ => "ambient [0, 1] is complete; an empty intersection needs the rational ambient".to_string(),
    };
    report.fail(&CertificateError::Ambient(reason))
}

/// Plays each Pierre presentation against Paul on `[0, 1]` and against
/// concentric play on the rationals, and certifies both. On `[0, 1]` the
/// enumerated rationals are still dodged, but Paul's enclosure is a nonempty
/// closed set inside every `U_n`, so no empty-intersection claim holds.
pub fn baire_demo(presentations: &[CountableEnumeration], rounds: usize) -> Result<BaireDemo, ChoquetPlayError> {
    let mut runs = Vec::with_capacity(presentations.len());
    for e in presentations {
        let pierre = PierreCountable::new(e.clone());
        let on_unit = choquet_play(&pierre, &PaulComplete, Ambient::UnitInterval, rounds + 1)?;
        let paul_on_unit = paul_report(&on_unit, rounds);
        let pierre_on_unit = complete_ambient_refutation(&on_unit, e, rounds, &paul_on_unit);
        let on_q = choquet_play(&pierre, &ConcentricShrink, Ambient::Rationals, rounds + 1)?;
        let pierre_on_rationals = pierre_report(&on_q, e, rounds);
        runs.push(BaireRun {
            enumeration: e.name().to_string(),
            paul_on_unit,
            pierre_on_unit,
            pierre_on_rationals,
        });
    }
    Ok(BaireDemo { rounds, runs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn oi(lo: &str, hi: &str) -> OpenInterval {
        OpenInterval::new(r(lo), r(hi)).unwrap()
    }

    #[test]
    fn apply_examples() {
        let s = ChoquetState::new(Ambient::UnitInterval).apply(oi("0", "1")).unwrap();
        let s = s.apply(oi("1/4", "3/4")).unwrap();
        assert!(matches!(s.apply(oi("1/2", "7/8")), Err(ChoquetError::NotContained { .. })));
        assert!(matches!(
            OpenInterval::new(r("1/3"), r("1/3")),
            Err(ChoquetError::Degenerate { .. })
        ));
        let q = ChoquetState::new(Ambient::Rationals);
        assert!(matches!(q.apply(oi("-1", "0")), Err(ChoquetError::EmptyInAmbient { .. })));
    }

    #[test]
    fn paul_examples() {
        let s = ChoquetState::new(Ambient::UnitInterval).apply(oi("0", "1")).unwrap();
        assert_eq!(PaulComplete.propose(&s).unwrap(), oi("1/4", "3/4"));
        let s = s.apply(oi("1/4", "3/4")).unwrap().apply(oi("1/4", "1/2")).unwrap();
        assert_eq!(PaulComplete.propose(&s).unwrap(), oi("5/16", "7/16"));
    }

    #[test]
    fn pierre_examples() {
        let pierre = PierreCountable::new(CountableEnumeration::Farey);
        let s = ChoquetState::new(Ambient::Rationals);
        assert_eq!(pierre.propose(&s).unwrap(), oi("0", "1"));
        let s = s.apply(oi("0", "1")).unwrap().apply(oi("0", "1")).unwrap();
        assert_eq!(pierre.propose(&s).unwrap(), oi("0", "1/2"));
        let s = s.apply(oi("0", "1/2")).unwrap().apply(oi("0", "1/2")).unwrap();
        assert_eq!(pierre.propose(&s).unwrap(), oi("0", "1/3"));
        // q_3 = 2/3 is outside V = (0, 1/3): concentric shrink.
        let s = s.apply(oi("0", "1/3")).unwrap().apply(oi("0", "1/3")).unwrap();
        assert_eq!(pierre.propose(&s).unwrap(), oi("1/12", "1/4"));
    }

    #[test]
    fn paul_certificate_over_scripted_pierre() {
        let script = ScriptedOpen::new((0..8).map(|_| oi("0", "1")).collect());
        // Scripted Pierre is only legal on round 1; use random Pierre instead.
        assert!(choquet_play(&script, &PaulComplete, Ambient::UnitInterval, 2).is_err());
        let trace = choquet_play(&RandomOpen::new(3), &PaulComplete, Ambient::UnitInterval, 8).unwrap();
        let cert = paul_certificate(&trace, 8).unwrap();
        assert!(&cert.enclosure.1 - &cert.enclosure.0 <= Rational::inv_pow2(8));
    }

    #[test]
    fn diameter_violation_at_three() {
        let mut state = ChoquetState::new(Ambient::UnitInterval);
        for (lo, hi) in [
            ("0", "1"),
            ("1/4", "3/4"),
            ("1/4", "3/4"),
            ("5/16", "9/16"),
            ("5/16", "9/16"),
            ("11/32", "17/32"),
        ] {
            state = state.apply(oi(lo, hi)).unwrap();
        }
        let trace = ChoquetTrace::from_state(&state);
        assert_eq!(paul_certificate(&trace, 3).unwrap_err().index(), Some(3));
    }

    #[test]
    fn pierre_certificate_on_rationals() {
        let e = CountableEnumeration::Farey;
        let trace = choquet_play(&PierreCountable::new(e.clone()), &ConcentricShrink, Ambient::Rationals, 11).unwrap();
        assert_eq!(pierre_certificate(&trace, &e, 10).unwrap().excluded.len(), 10);
        assert!(matches!(
            pierre_certificate(&trace, &e, 11),
            Err(CertificateError::TooFewRounds { .. })
        ));
    }

    #[test]
    fn baire_pairs() {
        let demo = baire_demo(&[CountableEnumeration::Farey, CountableEnumeration::Dyadic], 12).unwrap();
        assert!(demo.as_expected(), "{}", demo.to_text());
    }
}
