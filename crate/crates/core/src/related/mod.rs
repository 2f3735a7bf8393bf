//! The Banach–Mazur and Choquet games, with the constructive strategy
//! halves and their finite certificates.

pub mod banach_mazur;
pub mod choquet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Tag attached to every serialized interval move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntervalKind {
    Closed,
    Open,
}

/// A ChaCha8 generator for move number `ply` of a seeded random player.
pub(crate) fn move_rng(seed: u64, ply: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(ply as u64);
    rng
}
