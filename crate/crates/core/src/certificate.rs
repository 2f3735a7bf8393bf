//! Finite, exactly re-checkable witnesses about truncated plays.
//!
//! A checker sees only the trace (and the set or enumeration it is asked
//! about); it never consults the strategies that produced the moves. Every
//! verdict is one or two exact comparisons of rationals.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{Move, Player, Trace};
use crate::numeric::Rational;
use crate::sets::{CountableEnumeration, PointClass, SetDescription, SetError};

/// The first place a trace breaks the rules of the game.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("illegal at round {round} ({player}): {detail}")]
pub struct LegalityViolation {
    pub round: usize,
    pub player: Player,
    pub detail: String,
}

/// Checks alternation, the move count, the strict chain
/// `a_0 < a_1 < ... < a_N < b_N < ... < b_1 < b_0` and the recorded enclosure.
pub fn check_legality(trace: &Trace) -> Result<(), LegalityViolation> {
    let mut lower = Rational::zero();
    let mut upper = Rational::one();
    for (i, Move { player, value }) in trace.moves.iter().enumerate() {
        let round = i / 2 + 1;
        let expected = if i % 2 == 0 { Player::Alice } else { Player::Bob };
        let violation = |detail: String| LegalityViolation {
            round,
            player: expected,
            detail,
        };
        if *player != expected {
            return Err(violation(format!("expected {expected} to move, found {player}")));
        }
        if *value <= lower {
            return Err(violation(format!("{value} must exceed {lower}")));
        }
        if *value >= upper {
            return Err(violation(format!("{value} must be below {upper}")));
        }
        match player {
            Player::Alice => lower = value.clone(),
            Player::Bob => upper = value.clone(),
        }
    }
    let last_round = trace.moves.len() / 2 + 1;
    if trace.moves.len() % 2 != 0 {
        return Err(LegalityViolation {
            round: last_round,
            player: Player::Bob,
            detail: "trace ends between Alice's and Bob's move".into(),
        });
    }
    if trace.moves.len() != 2 * trace.rounds {
        return Err(LegalityViolation {
            round: last_round,
            player: Player::Alice,
            detail: format!("{} rounds declared but {} moves recorded", trace.rounds, trace.moves.len()),
        });
    }
    if trace.enclosure != (lower.clone(), upper.clone()) {
        return Err(LegalityViolation {
            round: trace.rounds,
            player: Player::Bob,
            detail: format!(
                "recorded enclosure ({}, {}) differs from ({lower}, {upper})",
                trace.enclosure.0, trace.enclosure.1
            ),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error(transparent)]
    Illegal(#[from] LegalityViolation),
    #[error("s_{k} = {value} lies strictly inside the enclosure")]
    InsideEnclosure { k: usize, value: Rational },
    #[error("a_{n} = {value} is not in S+ ({class:?})")]
    NotRightApproachable { n: usize, value: Rational, class: PointClass },
    #[error("the set is not perfect")]
    NotPerfect,
    #[error("needs at least {needed} rounds, trace has {got}")]
    TooFewRounds { needed: usize, got: usize },
    #[error("round {round}: widths must shrink strictly ({detail})")]
    NotShrinking { round: usize, detail: String },
    #[error("round {round}: {detail}")]
    Round { round: usize, detail: String },
    #[error("wrong ambient: {0}")]
    Ambient(String),
    #[error(transparent)]
    Set(#[from] SetError),
}

impl CertificateError {
    /// The round or index the failure points at, when there is one.
    pub fn index(&self) -> Option<usize> {
        match self {
            CertificateError::Illegal(v) => Some(v.round),
            CertificateError::InsideEnclosure { k, .. } => Some(*k),
            CertificateError::NotRightApproachable { n, .. } => Some(*n),
            CertificateError::NotShrinking { round, .. } | CertificateError::Round { round, .. } => Some(*round),
            _ => None,
        }
    }
}

/// Which side of the enclosure an enumerated point falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `s_k <= a_N`.
    Below,
    /// `s_k >= b_N`.
    Above,
}

/// Why `s_k` was already out of play after round `k`; recorded for reports
/// only, the verdict itself is the [`Side`] comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProofCase {
    /// `b_k = s_k`: Bob played the point.
    PlayedByBob,
    /// `s_k <= a_k`.
    AtOrBelowAliceMove,
    /// `s_k >= b_{k-1}`.
    AtOrAbovePreviousBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionVerdict {
    pub k: usize,
    pub value: Rational,
    pub side: Side,
    pub case: Option<ProofCase>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionCertificate {
    pub rounds: usize,
    pub enclosure: (Rational, Rational),
    pub verdicts: Vec<ExclusionVerdict>,
}

/// For every `k <= N`, shows `s_k <= a_N` or `s_k >= b_N`.
pub fn exclusion_certificate(
    trace: &Trace,
    enumeration: &CountableEnumeration,
) -> Result<ExclusionCertificate, CertificateError> {
    check_legality(trace)?;
    let (a_n, b_n) = &trace.enclosure;
    let mut verdicts = Vec::with_capacity(trace.rounds);
    for (k, s_k) in (1..=trace.rounds).zip(enumeration.iter()) {
        let side = if &s_k <= a_n {
            Side::Below
        } else if &s_k >= b_n {
            Side::Above
        } else {
            return Err(CertificateError::InsideEnclosure { k, value: s_k });
        };
        let a_k = trace.alice(k).expect("legal trace has round k");
        let b_k = trace.bob(k).expect("legal trace has round k");
        let b_prev = if k == 1 { Rational::one() } else { trace.bob(k - 1).expect("round k-1").clone() };
        let case = if &s_k == b_k {
            Some(ProofCase::PlayedByBob)
        } else if &s_k <= a_k {
            Some(ProofCase::AtOrBelowAliceMove)
        } else if s_k >= b_prev {
            Some(ProofCase::AtOrAbovePreviousBound)
        } else {
            None
        };
        verdicts.push(ExclusionVerdict { k, value: s_k, side, case });
    }
    Ok(ExclusionCertificate {
        rounds: trace.rounds,
        enclosure: trace.enclosure.clone(),
        verdicts,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipRecord {
    pub n: usize,
    pub value: Rational,
    pub class: PointClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipCertificate {
    pub rounds: usize,
    pub records: Vec<MembershipRecord>,
}

/// Shows every `a_n` is in `S+`. Because the `a_n` increase strictly, any
/// limit of a legal continuation is then a limit point of the closed set `S`
/// and so belongs to it; that step is the argument, not a computation.
pub fn membership_certificate(trace: &Trace, set: &SetDescription) -> Result<MembershipCertificate, CertificateError> {
    check_legality(trace)?;
    if !set.is_perfect()? {
        return Err(CertificateError::NotPerfect);
    }
    let mut records = Vec::with_capacity(trace.rounds);
    for (i, value) in trace.values_of(Player::Alice).enumerate() {
        let n = i + 1;
        let class = set.classify(value);
        if !(class.in_set && class.right_approachable == Some(true)) {
            return Err(CertificateError::NotRightApproachable {
                n,
                value: value.clone(),
                class,
            });
        }
        records.push(MembershipRecord {
            n,
            value: value.clone(),
            class,
        });
    }
    Ok(MembershipCertificate {
        rounds: trace.rounds,
        records,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub rounds: usize,
    /// `b_n - a_n` for `n = 1..=N`.
    pub widths: Vec<Rational>,
}

/// Enclosure widths per round, checked to shrink strictly.
pub fn convergence_report(trace: &Trace) -> Result<ConvergenceReport, CertificateError> {
    check_legality(trace)?;
    if trace.rounds < 2 {
        return Err(CertificateError::TooFewRounds {
            needed: 2,
            got: trace.rounds,
        });
    }
    let widths: Vec<Rational> = (1..=trace.rounds)
        .map(|n| trace.bob(n).expect("round n") - trace.alice(n).expect("round n"))
        .collect();
    for (i, pair) in widths.windows(2).enumerate() {
        if pair[1] >= pair[0] {
            return Err(CertificateError::NotShrinking {
                round: i + 2,
                detail: format!("{} then {}", pair[0], pair[1]),
            });
        }
    }
    Ok(ConvergenceReport {
        rounds: trace.rounds,
        widths,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportItem {
    pub index: usize,
    pub value: String,
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFailure {
    pub index: Option<usize>,
    pub reason: String,
}

/// The printable form of any certificate run, pass or fail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub certificate: String,
    pub game: String,
    pub rounds: usize,
    pub claim: String,
    pub status: Status,
    pub items: Vec<ReportItem>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub enclosure: Option<(Rational, Rational)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub failure: Option<ReportFailure>,
}

impl CertificateReport {
    pub fn new(certificate: &str, game: &str, rounds: usize, claim: &str) -> Self {
        CertificateReport {
            certificate: certificate.to_string(),
            game: game.to_string(),
            rounds,
            claim: claim.to_string(),
            status: Status::Pass,
            items: Vec::new(),
            enclosure: None,
            failure: None,
        }
    }

    pub fn item(mut self, index: usize, value: impl fmt::Display, verdict: impl Into<String>) -> Self {
        self.items.push(ReportItem {
            index,
            value: value.to_string(),
            verdict: verdict.into(),
        });
        self
    }

    pub fn fail(mut self, error: &CertificateError) -> Self {
        self.status = Status::Fail;
        self.failure = Some(ReportFailure {
            index: error.index(),
            reason: error.to_string(),
        });
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string(self).expect("reports always serialize");
        out.push('\n');
        out
    }

    /// One line per item plus a status line.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "certificate {} ({} game, {} rounds)\nclaim: {}\n",
            self.certificate, self.game, self.rounds, self.claim
        );
        for item in &self.items {
            out.push_str(&format!("  {:>4}  {}  {}\n", item.index, item.value, item.verdict));
        }
        if let Some((lo, hi)) = &self.enclosure {
            out.push_str(&format!("enclosure: [{lo}, {hi}]\n"));
        }
        if let Some(f) = &self.failure {
            match f.index {
                Some(i) => out.push_str(&format!("failure at {i}: {}\n", f.reason)),
                None => out.push_str(&format!("failure: {}\n", f.reason)),
            }
        }
        out.push_str(&format!("status: {}\n", self.status));
        out
    }
}

pub const LEGALITY_CLAIM: &str = "every move lies strictly between the previous two choices";
pub const EXCLUSION_CLAIM: &str =
    "countable sets: each s_k with k <= N lies outside (a_N, b_N), so no enumerated point can be the limit";
pub const MEMBERSHIP_CLAIM: &str =
    "perfect sets: each a_n is in S+, so the increasing limit is a limit point of the closed set S";
pub const CONVERGENCE_CLAIM: &str = "the enclosure widths b_n - a_n shrink strictly";

pub fn legality_report(trace: &Trace) -> CertificateReport {
    let report = CertificateReport::new("legality", "baker", trace.rounds, LEGALITY_CLAIM);
    match check_legality(trace) {
        Ok(()) => CertificateReport {
            enclosure: Some(trace.enclosure.clone()),
            ..report
        },
        Err(e) => report.fail(&e.into()),
    }
}

pub fn exclusion_report(trace: &Trace, enumeration: &CountableEnumeration) -> CertificateReport {
    let report = CertificateReport::new("exclusion", "baker", trace.rounds, EXCLUSION_CLAIM);
    match exclusion_certificate(trace, enumeration) {
        Ok(cert) => {
            let mut report = CertificateReport {
                enclosure: Some(cert.enclosure.clone()),
                ..report
            };
            for v in &cert.verdicts {
                let side = match v.side {
                    Side::Below => "below",
                    Side::Above => "above",
                };
                report = report.item(v.k, &v.value, side);
            }
            report
        }
        Err(e) => report.fail(&e),
    }
}

pub fn membership_report(trace: &Trace, set: &SetDescription) -> CertificateReport {
    let report = CertificateReport::new("membership", "baker", trace.rounds, MEMBERSHIP_CLAIM);
    match membership_certificate(trace, set) {
        Ok(cert) => cert
            .records
            .iter()
            .fold(report, |r, rec| r.item(rec.n, &rec.value, "right_approachable")),
        Err(e) => report.fail(&e),
    }
}

pub fn convergence_text_report(trace: &Trace) -> CertificateReport {
    let report = CertificateReport::new("convergence", "baker", trace.rounds, CONVERGENCE_CLAIM);
    match convergence_report(trace) {
        Ok(c) => c
            .widths
            .iter()
            .enumerate()
            .fold(report, |r, (i, w)| r.item(i + 1, w, "width")),
        Err(e) => report.fail(&e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{play, GameState};
    use crate::strategy::MidpointStrategy;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn hand_trace(values: &[&str]) -> Trace {
        let moves: Vec<Rational> = values.iter().map(|v| r(v)).collect();
        let mut state = GameState::default();
        for v in moves {
            state = state.apply_move(v).unwrap();
        }
        Trace::from_state(SetDescription::Countable(CountableEnumeration::Farey), &state)
    }

    #[test]
    fn hand_exclusion_example() {
        let trace = hand_trace(&["1/4", "1/2", "3/8", "7/16"]);
        let cert = exclusion_certificate(&trace, &CountableEnumeration::Farey).unwrap();
        let sides: Vec<Side> = cert.verdicts.iter().map(|v| v.side).collect();
        assert_eq!(sides, [Side::Above, Side::Below]);
        assert_eq!(cert.verdicts[0].case, Some(ProofCase::PlayedByBob));
        assert_eq!(cert.verdicts[1].case, Some(ProofCase::AtOrBelowAliceMove));
    }

    #[test]
    fn corrupted_traces_pinpoint_round() {
        let mut trace = hand_trace(&["1/4", "1/2", "3/8", "7/16"]);
        trace.moves[2].value = r("1/4");
        assert_eq!(check_legality(&trace).unwrap_err().round, 2);

        let mut trace = hand_trace(&["1/4", "1/2"]);
        trace.moves[1].value = r("3/2");
        assert_eq!(check_legality(&trace).unwrap_err().round, 1);
    }

    #[test]
    fn convergence_widths() {
        let trace = play(&MidpointStrategy, &MidpointStrategy, 2, &SetDescription::unit()).unwrap();
        assert_eq!(convergence_report(&trace).unwrap().widths, [r("1/4"), r("1/16")]);
        let one = play(&MidpointStrategy, &MidpointStrategy, 1, &SetDescription::unit()).unwrap();
        assert!(matches!(
            convergence_report(&one),
            Err(CertificateError::TooFewRounds { .. })
        ));
    }

    #[test]
    fn membership_rejects_point_outside_cantor() {
        let mut trace = hand_trace(&["1/2", "3/4"]);
        trace.set = SetDescription::Cantor;
        let err = membership_certificate(&trace, &SetDescription::Cantor).unwrap_err();
        assert_eq!(err.index(), Some(1));
    }

    #[test]
    fn report_text_and_json() {
        let trace = hand_trace(&["1/4", "1/2", "3/8", "7/16"]);
        let report = exclusion_report(&trace, &CountableEnumeration::Farey);
        assert!(report.passed());
        assert!(report.to_text().ends_with("status: pass\n"));
        let json = report.to_json();
        assert!(json.contains(r#""items":[{"index":1,"value":"1/2","verdict":"above"}"#), "{json}");
    }
}
