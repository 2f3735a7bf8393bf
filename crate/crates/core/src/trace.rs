//! The on-disk trace format shared by all three games.
//!
//! Every trace is one JSON object whose first field is `"game"`; the
//! remaining fields are those of the game's own trace type, in a fixed order.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::Trace;
use crate::related::banach_mazur::BmTrace;
use crate::related::choquet::ChoquetTrace;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "game")]
pub enum AnyTrace {
    #[serde(rename = "baker")]
    Baker(Trace),
    #[serde(rename = "banach-mazur")]
    BanachMazur(BmTrace),
    #[serde(rename = "choquet")]
    Choquet(ChoquetTrace),
}

#[derive(Debug, Error)]
#[error("malformed trace: {0}")]
pub struct TraceError(#[from] serde_json::Error);

impl AnyTrace {
    pub fn game(&self) -> &'static str {
        match self {
            AnyTrace::Baker(_) => "baker",
            AnyTrace::BanachMazur(_) => "banach-mazur",
            AnyTrace::Choquet(_) => "choquet",
        }
    }

    /// Compact JSON followed by a newline. Byte-identical for equal traces.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string(self).expect("traces always serialize");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<AnyTrace, TraceError> {
        Ok(serde_json::from_str(text)?)
    }
}

impl From<Trace> for AnyTrace {
    fn from(t: Trace) -> Self {
        AnyTrace::Baker(t)
    }
}

impl From<BmTrace> for AnyTrace {
    fn from(t: BmTrace) -> Self {
        AnyTrace::BanachMazur(t)
    }
}

impl From<ChoquetTrace> for AnyTrace {
    fn from(t: ChoquetTrace) -> Self {
        AnyTrace::Choquet(t)
    }
}
