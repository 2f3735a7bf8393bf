//! Textual strategy names for the interval games, shared by the CLI and the
//! session service. Baker strategies use [`realgame::StrategySpec`].

use std::path::PathBuf;
use std::str::FromStr;

use realgame::related::banach_mazur::{
    BartekMeagre, ClosedInterval, IntervalStrategy, MeagrePresentation, MiddleHalf, RandomIntervals, ScriptedIntervals,
};
use realgame::related::choquet::{
    ConcentricShrink, OpenInterval, OpenStrategy, PaulComplete, PierreCountable, RandomOpen, ScriptedOpen,
};
use realgame::strategy::enumeration_by_name;
use realgame::{Rational, SetDescription};
use thiserror::Error;

#[derive(Debug, Error)]
#[error("bad strategy {spec:?}: {reason}")]
pub struct SpecError {
    pub spec: String,
    pub reason: String,
}

fn spec_error(spec: &str, reason: impl Into<String>) -> SpecError {
    SpecError {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

/// `meagre`, `countable:NAME`, `complete`, `midpoint`, `random:SEED`,
/// `script:PATH`. Which ones make sense depends on the game and the seat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntervalSpec {
    Meagre,
    Countable(String),
    Complete,
    Midpoint,
    Random(u64),
    Script(PathBuf),
}

impl FromStr for IntervalSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        match (head, arg) {
            ("meagre", None) => Ok(IntervalSpec::Meagre),
            ("complete", None) => Ok(IntervalSpec::Complete),
            ("midpoint", None) => Ok(IntervalSpec::Midpoint),
            ("countable", Some(name)) => {
                enumeration_by_name(name).map_err(|e| spec_error(s, e.to_string()))?;
                Ok(IntervalSpec::Countable(name.to_string()))
            }
            ("random", Some(seed)) => seed
                .parse()
                .map(IntervalSpec::Random)
                .map_err(|_| spec_error(s, "seed must be an unsigned integer")),
            ("script", Some(path)) if !path.is_empty() => Ok(IntervalSpec::Script(PathBuf::from(path))),
            _ => Err(spec_error(
                s,
                "expected meagre, countable:NAME, complete, midpoint, random:SEED or script:PATH",
            )),
        }
    }
}

impl std::fmt::Display for IntervalSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IntervalSpec::Meagre => write!(f, "meagre"),
            IntervalSpec::Countable(name) => write!(f, "countable:{name}"),
            IntervalSpec::Complete => write!(f, "complete"),
            IntervalSpec::Midpoint => write!(f, "midpoint"),
            IntervalSpec::Random(seed) => write!(f, "random:{seed}"),
            IntervalSpec::Script(path) => write!(f, "script:{}", path.display()),
        }
    }
}

fn read_pairs(spec: &IntervalSpec, path: &PathBuf) -> Result<Vec<(Rational, Rational)>, SpecError> {
    let text = std::fs::read_to_string(path).map_err(|e| spec_error(&spec.to_string(), e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| spec_error(&spec.to_string(), format!("expected [[lo, hi], ...]: {e}")))
}

impl IntervalSpec {
    /// A Banach–Mazur player; `meagre` needs the target set.
    pub fn build_bm(&self, set: &SetDescription) -> Result<Box<dyn IntervalStrategy>, SpecError> {
        let me = self.to_string();
        Ok(match self {
            IntervalSpec::Meagre => {
                let presentation = MeagrePresentation::from_set(set).map_err(|e| spec_error(&me, e.to_string()))?;
                Box::new(BartekMeagre::new(presentation))
            }
            IntervalSpec::Midpoint => Box::new(MiddleHalf),
            IntervalSpec::Random(seed) => Box::new(RandomIntervals::new(*seed)),
            IntervalSpec::Script(path) => {
                let moves = read_pairs(self, path)?
                    .into_iter()
                    .map(|(lo, hi)| ClosedInterval::new(lo, hi))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| spec_error(&me, e.to_string()))?;
                Box::new(ScriptedIntervals::new(moves))
            }
            IntervalSpec::Countable(_) | IntervalSpec::Complete => {
                return Err(spec_error(&me, "not a Banach–Mazur strategy"))
            }
        })
    }

    /// A Choquet player.
    pub fn build_choquet(&self) -> Result<Box<dyn OpenStrategy>, SpecError> {
        let me = self.to_string();
        Ok(match self {
            IntervalSpec::Complete => Box::new(PaulComplete),
            IntervalSpec::Countable(name) => Box::new(PierreCountable::new(
                enumeration_by_name(name).map_err(|e| spec_error(&me, e.to_string()))?,
            )),
            IntervalSpec::Midpoint => Box::new(ConcentricShrink),
            IntervalSpec::Random(seed) => Box::new(RandomOpen::new(*seed)),
            IntervalSpec::Script(path) => {
                let moves = read_pairs(self, path)?
                    .into_iter()
                    .map(|(lo, hi)| OpenInterval::new(lo, hi))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| spec_error(&me, e.to_string()))?;
                Box::new(ScriptedOpen::new(moves))
            }
            IntervalSpec::Meagre => return Err(spec_error(&me, "not a Choquet strategy")),
        })
    }
}
