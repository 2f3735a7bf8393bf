//! Move proposers for the point-picking game.
//!
//! A strategy only reads the game state. Anything that looks like private
//! state (a script position, a random stream) is derived from the move
//! count, so replaying a trace always reproduces the same proposals.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::engine::GameState;
use crate::numeric::{midpoint, Rational};
use crate::sets::{CountableEnumeration, SetDescription, SetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("script exhausted after {len} moves")]
    ScriptExhausted { len: usize },
    #[error("no legal move available")]
    NoLegalMove,
    #[error("the set is not perfect")]
    NotPerfect,
    #[error(transparent)]
    Set(#[from] SetError),
    #[error("bad strategy spec {spec:?}: {reason}")]
    Spec { spec: String, reason: String },
    #[error("{0}")]
    Unsupported(String),
}

pub trait Strategy: Send + Sync {
    fn name(&self) -> String;

    /// The move to play from `state`. Legality is checked by the engine.
    fn propose(&self, state: &GameState, set: &SetDescription) -> Result<Rational, StrategyError>;
}

impl fmt::Debug for dyn Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Strategy({})", self.name())
    }
}

/// What Bob plays when the enumerated point is not a legal move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fallback {
    Midpoint,
    Random { seed: u64 },
}

/// Bob's strategy against a countable set: in round `n` play `s_n` whenever
/// `a_n < s_n < b_{n-1}`, otherwise any legal value.
#[derive(Debug, Clone)]
pub struct BobEnumeration {
    enumeration: CountableEnumeration,
    fallback: Fallback,
}

impl BobEnumeration {
    pub fn new(enumeration: CountableEnumeration) -> Self {
        BobEnumeration {
            enumeration,
            fallback: Fallback::Midpoint,
        }
    }

    pub fn with_fallback(mut self, fallback: Fallback) -> Self {
        self.fallback = fallback;
        self
    }

    pub fn enumeration(&self) -> &CountableEnumeration {
        &self.enumeration
    }
}

impl Strategy for BobEnumeration {
    fn name(&self) -> String {
        format!("enumeration:{}", self.enumeration.name())
    }

    fn propose(&self, state: &GameState, _set: &SetDescription) -> Result<Rational, StrategyError> {
        let s_n = self.enumeration.enumerate(state.current_round())?;
        if state.check_move(&s_n).is_ok() {
            return Ok(s_n);
        }
        match self.fallback {
            Fallback::Midpoint => Ok(midpoint(state.lower(), state.upper()).map_err(|_| StrategyError::NoLegalMove)?),
            Fallback::Random { seed } => Ok(random_dyadic_between(
                state.lower(),
                state.upper(),
                &mut move_rng(seed, state),
            )),
        }
    }
}

/// Alice's strategy for a perfect set: every move is a point of `S`
/// approachable from the right.
///
/// The first move is `inf(S)` when it lies strictly inside `(0, 1)`, and
/// otherwise the deterministic right-approachable point of `S ∩ (0, 1)`.
/// Every later move is the right-approachable selection inside
/// `(a_{n-1}, b_{n-1})`, which exists because `a_{n-1}` is itself
/// approachable from the right.
#[derive(Debug, Clone)]
pub struct AlicePerfect {
    set: SetDescription,
}

impl AlicePerfect {
    pub fn new(set: SetDescription) -> Result<Self, StrategyError> {
        if !set.is_perfect()? {
            return Err(StrategyError::NotPerfect);
        }
        Ok(AlicePerfect { set })
    }

    pub fn set(&self) -> &SetDescription {
        &self.set
    }
}

impl Strategy for AlicePerfect {
    fn name(&self) -> String {
        "perfect".to_string()
    }

    fn propose(&self, state: &GameState, _set: &SetDescription) -> Result<Rational, StrategyError> {
        if state.rounds_completed() == 0 {
            let inf = self.set.inf()?;
            if inf.is_positive() && inf < Rational::one() {
                return Ok(inf);
            }
        }
        self.set
            .right_select(state.lower(), state.upper())?
            .ok_or(StrategyError::NoLegalMove)
    }
}

/// Always the midpoint of the legal interval.
#[derive(Debug, Clone, Copy, Default)]
pub struct MidpointStrategy;

impl Strategy for MidpointStrategy {
    fn name(&self) -> String {
        "midpoint".to_string()
    }

    fn propose(&self, state: &GameState, _set: &SetDescription) -> Result<Rational, StrategyError> {
        midpoint(state.lower(), state.upper()).map_err(|_| StrategyError::NoLegalMove)
    }
}

/// Plays a fixed list verbatim; the `k`-th own move uses entry `k`.
#[derive(Debug, Clone)]
pub struct ScriptedStrategy {
    moves: Vec<Rational>,
}

impl ScriptedStrategy {
    pub fn new(moves: Vec<Rational>) -> Self {
        ScriptedStrategy { moves }
    }

    /// Reads a JSON array of rationals, or whitespace separated values.
    pub fn from_text(text: &str) -> Result<Self, StrategyError> {
        let spec_err = |reason: String| StrategyError::Spec {
            spec: "script".into(),
            reason,
        };
        let trimmed = text.trim();
        let moves = if trimmed.starts_with('[') {
            serde_json::from_str::<Vec<Rational>>(trimmed).map_err(|e| spec_err(e.to_string()))?
        } else {
            trimmed
                .split_whitespace()
                .map(|v| v.parse::<Rational>().map_err(|e| spec_err(e.to_string())))
                .collect::<Result<_, _>>()?
        };
        Ok(ScriptedStrategy::new(moves))
    }
}

impl Strategy for ScriptedStrategy {
    fn name(&self) -> String {
        "script".to_string()
    }

    fn propose(&self, state: &GameState, _set: &SetDescription) -> Result<Rational, StrategyError> {
        self.moves
            .get(state.rounds_completed())
            .cloned()
            .ok_or(StrategyError::ScriptExhausted { len: self.moves.len() })
    }
}

/// Uniformly random dyadic rationals strictly inside the legal interval,
/// drawn from a ChaCha8 stream selected by the move number.
#[derive(Debug, Clone, Copy)]
pub struct SeededRandomStrategy {
    seed: u64,
}

impl SeededRandomStrategy {
    pub fn new(seed: u64) -> Self {
        SeededRandomStrategy { seed }
    }
}

impl Strategy for SeededRandomStrategy {
    fn name(&self) -> String {
        format!("random:{}", self.seed)
    }

    fn propose(&self, state: &GameState, _set: &SetDescription) -> Result<Rational, StrategyError> {
        Ok(random_dyadic_between(
            state.lower(),
            state.upper(),
            &mut move_rng(self.seed, state),
        ))
    }
}

fn move_rng(seed: u64, state: &GameState) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(state.history().len() as u64);
    rng
}

/// Bits of resolution below the interval width used for random picks.
const RANDOM_RESOLUTION_BITS: u64 = 10;

/// A uniformly random `k / 2^m` with `lo < k / 2^m < hi`, where `m` is
/// chosen so that at least `2^10` candidates fit.
pub fn random_dyadic_between(lo: &Rational, hi: &Rational, rng: &mut impl Rng) -> Rational {
    assert!(lo < hi, "empty interval ({lo}, {hi})");
    let width = hi - lo;
    let extra = width.denom().bits() as i64 - width.numer().bits() as i64 + 1;
    let m = (RANDOM_RESOLUTION_BITS as i64 + extra).max(0) as usize;
    let scale = Rational::from_big(BigInt::one() << m, BigInt::one());
    let k_min = (lo * &scale).floor() + BigInt::one();
    let k_max = (hi * &scale).ceil() - BigInt::one();
    let count = (&k_max - &k_min + BigInt::one())
        .to_u64()
        .expect("candidate count fits in u64");
    let k = k_min + BigInt::from(rng.gen_range(0..count));
    Rational::from_big(k, BigInt::one() << m)
}

/// Textual strategy names used by the CLI and the session service:
/// `perfect`, `enumeration:NAME`, `midpoint`, `random:SEED`, `script:PATH`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategySpec {
    Perfect,
    Enumeration(String),
    Midpoint,
    Random(u64),
    Script(PathBuf),
}

impl FromStr for StrategySpec {
    type Err = StrategyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| StrategyError::Spec {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        match (head, arg) {
            ("perfect", None) => Ok(StrategySpec::Perfect),
            ("midpoint", None) => Ok(StrategySpec::Midpoint),
            ("enumeration", Some(name)) => match name {
                "farey" | "dyadic" => Ok(StrategySpec::Enumeration(name.to_string())),
                _ => Err(bad("unknown enumeration (expected farey or dyadic)")),
            },
            ("random", Some(seed)) => seed.parse().map(StrategySpec::Random).map_err(|_| bad("seed must be an unsigned integer")),
            ("script", Some(path)) if !path.is_empty() => Ok(StrategySpec::Script(PathBuf::from(path))),
            _ => Err(bad("expected perfect, enumeration:NAME, midpoint, random:SEED or script:PATH")),
        }
    }
}

impl fmt::Display for StrategySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategySpec::Perfect => write!(f, "perfect"),
            StrategySpec::Enumeration(name) => write!(f, "enumeration:{name}"),
            StrategySpec::Midpoint => write!(f, "midpoint"),
            StrategySpec::Random(seed) => write!(f, "random:{seed}"),
            StrategySpec::Script(path) => write!(f, "script:{}", path.display()),
        }
    }
}

impl StrategySpec {
    pub fn build(&self, set: &SetDescription) -> Result<Box<dyn Strategy>, StrategyError> {
        Ok(match self {
            StrategySpec::Perfect => Box::new(AlicePerfect::new(set.clone())?),
            StrategySpec::Midpoint => Box::new(MidpointStrategy),
            StrategySpec::Random(seed) => Box::new(SeededRandomStrategy::new(*seed)),
            StrategySpec::Enumeration(name) => Box::new(BobEnumeration::new(enumeration_by_name(name)?)),
            StrategySpec::Script(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| StrategyError::Spec {
                    spec: self.to_string(),
                    reason: e.to_string(),
                })?;
                Box::new(ScriptedStrategy::from_text(&text)?)
            }
        })
    }
}

pub fn enumeration_by_name(name: &str) -> Result<CountableEnumeration, StrategyError> {
    match name {
        "farey" => Ok(CountableEnumeration::Farey),
        "dyadic" => Ok(CountableEnumeration::Dyadic),
        other => Err(StrategyError::Spec {
            spec: other.to_string(),
            reason: "unknown enumeration".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{new_game, play};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn state_after(values: &[&str]) -> GameState {
        values
            .iter()
            .fold(new_game(), |s, v| s.apply_move(r(v)).unwrap())
    }

    #[test]
    fn bob_plays_enumerated_point_when_legal() {
        let bob = BobEnumeration::new(CountableEnumeration::Farey);
        let set = SetDescription::Countable(CountableEnumeration::Farey);
        assert_eq!(bob.propose(&state_after(&["1/4"]), &set).unwrap(), r("1/2"));
        // s_2 = 1/3 < a_2 = 3/8, so the midpoint fallback is used.
        let s = state_after(&["1/4", "1/2", "3/8"]);
        assert_eq!(bob.propose(&s, &set).unwrap(), r("7/16"));
        // s_3 = 2/3 >= b_2 = 7/16.
        let s = state_after(&["1/4", "1/2", "3/8", "7/16", "13/32"]);
        assert_eq!(bob.propose(&s, &set).unwrap(), r("27/64"));
    }

    #[test]
    fn bob_random_fallback_is_legal_and_reproducible() {
        let bob = BobEnumeration::new(CountableEnumeration::Farey).with_fallback(Fallback::Random { seed: 3 });
        let s = state_after(&["1/4", "1/2", "3/8"]);
        let set = SetDescription::unit();
        let first = bob.propose(&s, &set).unwrap();
        assert!(s.check_move(&first).is_ok());
        assert_eq!(first, bob.propose(&s, &set).unwrap());
    }

    #[test]
    fn alice_perfect_first_moves() {
        let fresh = new_game();
        let unit = AlicePerfect::new(SetDescription::unit()).unwrap();
        assert_eq!(unit.propose(&fresh, unit.set()).unwrap(), r("1/2"));
        let cantor = AlicePerfect::new(SetDescription::Cantor).unwrap();
        assert_eq!(cantor.propose(&fresh, cantor.set()).unwrap(), r("2/3"));
        let inner = AlicePerfect::new(SetDescription::intervals([(r("1/3"), r("1/2"))]).unwrap()).unwrap();
        assert_eq!(inner.propose(&fresh, inner.set()).unwrap(), r("1/3"));
    }

    #[test]
    fn alice_perfect_rejects_non_perfect_sets() {
        assert_eq!(
            AlicePerfect::new(SetDescription::finite([r("1/2")]).unwrap()).unwrap_err(),
            StrategyError::NotPerfect
        );
        assert!(AlicePerfect::new(SetDescription::Countable(CountableEnumeration::Farey)).is_err());
    }

    #[test]
    fn midpoint_examples() {
        let set = SetDescription::unit();
        assert_eq!(MidpointStrategy.propose(&new_game(), &set).unwrap(), r("1/2"));
        assert_eq!(MidpointStrategy.propose(&state_after(&["1/2"]), &set).unwrap(), r("3/4"));
        assert_eq!(
            MidpointStrategy.propose(&state_after(&["1/2", "3/4", "5/8"]), &set).unwrap(),
            r("11/16")
        );
    }

    #[test]
    fn scripted_moves() {
        let set = SetDescription::unit();
        let one = ScriptedStrategy::new(vec![r("1/4")]);
        assert_eq!(one.propose(&new_game(), &set).unwrap(), r("1/4"));
        assert_eq!(
            one.propose(&state_after(&["1/4", "1/2"]), &set).unwrap_err(),
            StrategyError::ScriptExhausted { len: 1 }
        );
        let two = ScriptedStrategy::new(vec![r("1/4"), r("1/3")]);
        let bob = ScriptedStrategy::new(vec![r("1/2"), r("2/5")]);
        let trace = play(&two, &bob, 2, &set).unwrap();
        assert_eq!(trace.alice(2), Some(&r("1/3")));
    }

    #[test]
    fn script_text_formats() {
        let json = ScriptedStrategy::from_text(r#"["1/4", "1/3"]"#).unwrap();
        let plain = ScriptedStrategy::from_text("1/4\n1/3\n").unwrap();
        assert_eq!(json.moves, plain.moves);
        assert!(ScriptedStrategy::from_text("1/4 x").is_err());
    }

    #[test]
    fn seeded_random_contract() {
        let set = SetDescription::unit();
        let fresh = new_game();
        let a = SeededRandomStrategy::new(7).propose(&fresh, &set).unwrap();
        assert!(fresh.check_move(&a).is_ok());
        assert_eq!(a, SeededRandomStrategy::new(7).propose(&fresh, &set).unwrap());

        let one = play(&SeededRandomStrategy::new(7), &MidpointStrategy, 16, &set).unwrap();
        let two = play(&SeededRandomStrategy::new(8), &MidpointStrategy, 16, &set).unwrap();
        assert_ne!(one.moves, two.moves);
    }

    #[test]
    fn random_dyadic_is_strictly_inside() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (lo, hi) = (r("1/3"), r("1/3") + Rational::inv_pow2(200));
        for _ in 0..50 {
            let v = random_dyadic_between(&lo, &hi, &mut rng);
            assert!(lo < v && v < hi);
            assert!(v.denom().bits() <= 220);
        }
    }

    #[test]
    fn spec_strings() {
        for s in ["perfect", "enumeration:farey", "midpoint", "random:7", "script:moves.json"] {
            assert_eq!(s.parse::<StrategySpec>().unwrap().to_string(), s);
        }
        for s in ["perfect:1", "enumeration:primes", "random:x", "script:", "greedy"] {
            assert!(s.parse::<StrategySpec>().is_err(), "{s}");
        }
    }
}
